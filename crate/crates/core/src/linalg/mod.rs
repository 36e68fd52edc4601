//! Exact linear algebra over the integers, the rationals and prime fields.
//!
//! Everything here is exact: scalars are arbitrary-precision integers,
//! arbitrary-precision rationals, or residues mod a prime. No floating
//! point enters at any stage. Over the integers all kernels are saturated
//! (the quotient of the ambient lattice by the kernel is torsion-free) and
//! solves are lattice solves, which is what the chain-level computations
//! rely on.

mod field;
mod int;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use int::{determinant, smith_normal_form, Snf};

/// A commutative ring with exact element arithmetic.
///
/// The ring is passed around as a value so rings with runtime parameters
/// (prime fields) fit the same interface as `Integers`.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_int(&self, v: &BigInt) -> Self::Elem;
    fn elem_string(&self, a: &Self::Elem) -> String;

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_int(&BigInt::from(v))
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

/// Projection/lift pair describing a free complement of a saturated
/// submodule `S ⊆ R^s`: `proj` kills `S` and identifies the quotient with
/// `R^(s-a)`, `lift` is a section of it.
pub struct QuotientData<R: Ring> {
    pub proj: Matrix<R>,
    pub lift: Matrix<R>,
}

/// The exact operations the chain machinery needs, per ring.
pub trait ExactRing: Ring {
    /// Basis of `ker M` as matrix columns. Over the integers this is a basis
    /// of the full kernel lattice, which is automatically saturated.
    fn kernel_basis(&self, m: &Matrix<Self>) -> Matrix<Self>;

    /// Solve `B · X = Rhs` column by column, where the columns of `B` are
    /// independent. Over the integers a solution must lie in the column
    /// lattice; `None` is a definitive "not in span".
    fn solve_columns(&self, b: &Matrix<Self>, rhs: &Matrix<Self>) -> Option<Matrix<Self>>;

    fn rank(&self, m: &Matrix<Self>) -> usize;

    /// For a saturated basis `S` (full column rank), produce the quotient
    /// projection and a lift. Fails only if `S` is not saturated or not of
    /// full column rank, which callers treat as an internal invariant.
    fn quotient_data(&self, s: &Matrix<Self>) -> Result<QuotientData<Self>>;

    /// Invariant factors `> 1` of `M` (torsion of `coker M` over ℤ); always
    /// empty over a field.
    fn torsion_factors(&self, m: &Matrix<Self>) -> Vec<BigInt>;

    /// Rank and torsion in one pass (a single reduction over ℤ).
    fn rank_and_torsion(&self, m: &Matrix<Self>) -> (usize, Vec<BigInt>) {
        (self.rank(m), self.torsion_factors(m))
    }
}

/// The ring of integers with arbitrary-precision elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn from_int(&self, v: &BigInt) -> BigInt {
        v.clone()
    }
    fn elem_string(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

impl ExactRing for Integers {
    fn kernel_basis(&self, m: &Matrix<Self>) -> Matrix<Self> {
        int::kernel_basis(m)
    }
    fn solve_columns(&self, b: &Matrix<Self>, rhs: &Matrix<Self>) -> Option<Matrix<Self>> {
        int::solve_columns(b, rhs)
    }
    fn rank(&self, m: &Matrix<Self>) -> usize {
        int::rank(m)
    }
    fn quotient_data(&self, s: &Matrix<Self>) -> Result<QuotientData<Self>> {
        int::quotient_data(s)
    }
    fn torsion_factors(&self, m: &Matrix<Self>) -> Vec<BigInt> {
        self.rank_and_torsion(m).1
    }

    fn rank_and_torsion(&self, m: &Matrix<Self>) -> (usize, Vec<BigInt>) {
        let factors = smith_normal_form(m, false).factors;
        let rank = factors.len();
        (
            rank,
            factors
                .into_iter()
                .filter(|d| d.abs() > BigInt::one())
                .collect(),
        )
    }
}

/// The field of rationals with arbitrary-precision elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rationals;

pub type Rational = num_rational::BigRational;

impl Ring for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn from_int(&self, v: &BigInt) -> Rational {
        Rational::from_integer(v.clone())
    }
    fn elem_string(&self, a: &Rational) -> String {
        a.to_string()
    }
}

impl Field for Rationals {
    fn inv(&self, a: &Rational) -> Rational {
        a.recip()
    }
}

impl ExactRing for Rationals {
    fn kernel_basis(&self, m: &Matrix<Self>) -> Matrix<Self> {
        field::kernel_basis(self, m)
    }
    fn solve_columns(&self, b: &Matrix<Self>, rhs: &Matrix<Self>) -> Option<Matrix<Self>> {
        field::solve_columns(self, b, rhs)
    }
    fn rank(&self, m: &Matrix<Self>) -> usize {
        field::rank(self, m)
    }
    fn quotient_data(&self, s: &Matrix<Self>) -> Result<QuotientData<Self>> {
        field::quotient_data(self, s)
    }
    fn torsion_factors(&self, _m: &Matrix<Self>) -> Vec<BigInt> {
        Vec::new()
    }
}

/// The prime field 𝔽_p for a u64 prime p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + (self.p - *b) as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_int(&self, v: &BigInt) -> u64 {
        use num_integer::Integer;
        let m = v.mod_floor(&BigInt::from(self.p));
        let (_, digits) = m.to_u64_digits();
        digits.first().copied().unwrap_or(0)
    }
    fn elem_string(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (*a as i128, self.p as i128);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        s0.rem_euclid(self.p as i128) as u64
    }
}

impl ExactRing for PrimeField {
    fn kernel_basis(&self, m: &Matrix<Self>) -> Matrix<Self> {
        field::kernel_basis(self, m)
    }
    fn solve_columns(&self, b: &Matrix<Self>, rhs: &Matrix<Self>) -> Option<Matrix<Self>> {
        field::solve_columns(self, b, rhs)
    }
    fn rank(&self, m: &Matrix<Self>) -> usize {
        field::rank(self, m)
    }
    fn quotient_data(&self, s: &Matrix<Self>) -> Result<QuotientData<Self>> {
        field::quotient_data(self, s)
    }
    fn torsion_factors(&self, _m: &Matrix<Self>) -> Vec<BigInt> {
        Vec::new()
    }
}

/// Deterministic Miller–Rabin, exact for all u64 inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let pow = |mut b: u128, mut e: u64, m: u128| -> u128 {
        let mut acc = 1u128;
        b %= m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % m;
            }
            b = b * b % m;
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a as u128, d, n as u128);
        if x == 1 || x == (n - 1) as u128 {
            continue;
        }
        for _ in 0..s - 1 {
            x = x * x % n as u128;
            if x == (n - 1) as u128 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Dense matrix with exact entries, row major.
#[derive(Clone, PartialEq)]
pub struct Matrix<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    data: Vec<R::Elem>,
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.ring.elem_string(self.get(i, j)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<R: Ring> Matrix<R> {
    pub fn zero(ring: R, rows: usize, cols: usize) -> Self {
        let data = vec![ring.zero(); rows * cols];
        Matrix {
            ring,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(ring: R, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            let one = m.ring.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_rows(ring: R, rows: Vec<Vec<R::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            ring,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(ring: R, rows: &[Vec<i64>]) -> Self {
        let conv: Vec<Vec<R::Elem>> = rows
            .iter()
            .map(|row| row.iter().map(|v| ring.from_i64(*v)).collect())
            .collect();
        Self::from_rows(ring, conv)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn column(&self, j: usize) -> Vec<R::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = Matrix::zero(self.ring.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if self.ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if self.ring.is_zero(b) {
                        continue;
                    }
                    let prod = self.ring.mul(a, b);
                    let sum = self.ring.add(out.get(i, j), &prod);
                    out.set(i, j, sum);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[R::Elem]) -> Vec<R::Elem> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![self.ring.zero(); self.rows];
        for (j, vj) in v.iter().enumerate() {
            if self.ring.is_zero(vj) {
                continue;
            }
            for (i, acc) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !self.ring.is_zero(a) {
                    *acc = self.ring.add(acc, &self.ring.mul(a, vj));
                }
            }
        }
        out
    }

    /// New matrix keeping the given rows, in order.
    pub fn select_rows(&self, keep: &[usize]) -> Matrix<R> {
        let mut out = Matrix::zero(self.ring.clone(), keep.len(), self.cols);
        for (ni, &i) in keep.iter().enumerate() {
            for j in 0..self.cols {
                out.set(ni, j, self.get(i, j).clone());
            }
        }
        out
    }

    /// New matrix keeping the given columns, in order.
    pub fn select_cols(&self, keep: &[usize]) -> Matrix<R> {
        let mut out = Matrix::zero(self.ring.clone(), self.rows, keep.len());
        for i in 0..self.rows {
            for (nj, &j) in keep.iter().enumerate() {
                out.set(i, nj, self.get(i, j).clone());
            }
        }
        out
    }

    /// Horizontal concatenation.
    pub fn hcat(&self, other: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zero(self.ring.clone(), self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn map_ring<S: Ring>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> Matrix<S> {
        Matrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

pub type IntMatrix = Matrix<Integers>;

impl IntMatrix {
    pub fn to_ring<S: Ring>(&self, ring: &S) -> Matrix<S> {
        self.map_ring(ring.clone(), |v| ring.from_int(v))
    }
}
