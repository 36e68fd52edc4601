//! Integer algorithms: column echelon reduction, saturated kernels, lattice
//! solves and Smith normal form. Entry growth is kept down by always
//! reducing against the smallest nonzero pivot candidate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, Integers, QuotientData};
use crate::error::{Error, Result};

/// Result of a Smith reduction `U · M · V = diag(factors)`.
pub struct Snf {
    pub factors: Vec<BigInt>,
    pub u: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Check `U · M · V = diag(factors)` and the divisibility chain.
    pub fn verify(&self, m: &IntMatrix) -> Result<()> {
        for w in self.factors.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(Error::InternalInvariant(format!(
                    "invariant factor chain broken: {} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        let (u, v) = match (&self.u, &self.v) {
            (Some(u), Some(v)) => (u, v),
            _ => return Ok(()),
        };
        let d = u.mul(m).mul(v);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let expect = if i == j && i < self.factors.len() {
                    self.factors[i].clone()
                } else {
                    BigInt::zero()
                };
                if *d.get(i, j) != expect {
                    return Err(Error::InternalInvariant(format!(
                        "U*M*V is not the Smith diagonal at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Smith normal form with nonnegative invariant factors `d1 | d2 | ...`.
///
/// Pivoting always selects a smallest-magnitude nonzero entry of the
/// remaining submatrix, the usual guard against intermediate entry blowup.
pub fn smith_normal_form(m: &IntMatrix, with_transforms: bool) -> Snf {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut u = with_transforms.then(|| IntMatrix::identity(Integers, rows));
    let mut v = with_transforms.then(|| IntMatrix::identity(Integers, cols));

    let mut k = 0usize;
    while k < rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&a, k) else {
            break;
        };
        swap_rows(&mut a, k, pi);
        if let Some(u) = u.as_mut() {
            swap_rows(u, k, pi);
        }
        swap_cols(&mut a, k, pj);
        if let Some(v) = v.as_mut() {
            swap_cols(v, k, pj);
        }

        loop {
            // clear column k below the pivot
            let mut dirty = false;
            for i in k + 1..rows {
                if a.get(i, k).is_zero() {
                    continue;
                }
                let q = div_nearest(a.get(i, k), a.get(k, k));
                row_sub(&mut a, i, k, &q, k);
                if let Some(u) = u.as_mut() {
                    row_sub(u, i, k, &q, 0);
                }
                if !a.get(i, k).is_zero() {
                    // remainder is strictly smaller; promote it to pivot
                    swap_rows(&mut a, k, i);
                    if let Some(u) = u.as_mut() {
                        swap_rows(u, k, i);
                    }
                    dirty = true;
                }
            }
            // clear row k right of the pivot
            for j in k + 1..cols {
                if a.get(k, j).is_zero() {
                    continue;
                }
                let q = div_nearest(a.get(k, j), a.get(k, k));
                col_sub(&mut a, j, k, &q, k);
                if let Some(v) = v.as_mut() {
                    col_sub(v, j, k, &q, 0);
                }
                if !a.get(k, j).is_zero() {
                    swap_cols(&mut a, k, j);
                    if let Some(v) = v.as_mut() {
                        swap_cols(v, k, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the remaining submatrix for the factor
            // chain; a unit pivot divides everything
            if a.get(k, k).abs().is_one() {
                break;
            }
            let mut fixed = true;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if a.get(i, j).is_zero() {
                        continue;
                    }
                    if !(a.get(i, j) % a.get(k, k)).is_zero() {
                        row_add(&mut a, k, i, k);
                        if let Some(u) = u.as_mut() {
                            row_add(u, k, i, 0);
                        }
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }

        if a.get(k, k).is_negative() {
            negate_row(&mut a, k);
            if let Some(u) = u.as_mut() {
                negate_row(u, k);
            }
        }
        k += 1;
    }

    let factors = (0..k).map(|i| a.get(i, i).clone()).collect();
    Snf { factors, u, v }
}

/// Rank of an integer matrix (pivot count of the column echelon reduction).
pub fn rank(m: &IntMatrix) -> usize {
    let mut a = m.clone();
    column_echelon(&mut a, None).len()
}

/// Basis of the kernel lattice of `m`. Kernels of integer matrices are
/// saturated sublattices, so this basis is automatically pure.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let mut w = IntMatrix::identity(Integers, m.cols());
    let pivots = column_echelon(&mut a, Some(&mut w));
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivot_cols.contains(c)).collect();
    w.select_cols(&free)
}

/// Solve `B · X = Rhs` where the columns of `B` are independent; `None`
/// when some column of `Rhs` is not in the column lattice of `B`.
pub fn solve_columns(b: &IntMatrix, rhs: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(b.rows(), rhs.rows(), "shape mismatch in solve");
    let mut h = b.clone();
    let mut w = IntMatrix::identity(Integers, b.cols());
    let pivots = column_echelon(&mut h, Some(&mut w));
    if pivots.len() != b.cols() {
        // dependent columns; caller promised independence
        return None;
    }
    let mut out = IntMatrix::zero(Integers, b.cols(), rhs.cols());
    for col in 0..rhs.cols() {
        let mut res = rhs.column(col);
        let mut y = vec![BigInt::zero(); b.cols()];
        for &(pr, pc) in &pivots {
            let (q, r) = res[pr].div_rem(h.get(pr, pc));
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for i in 0..h.rows() {
                    if !h.get(i, pc).is_zero() {
                        res[i] = &res[i] - &(&q * h.get(i, pc));
                    }
                }
            }
            y[pc] = q;
        }
        if res.iter().any(|e| !e.is_zero()) {
            return None;
        }
        let x = w.mul_vec(&y);
        for (i, xi) in x.into_iter().enumerate() {
            out.set(i, col, xi);
        }
    }
    Some(out)
}

/// Quotient projection/lift for a saturated full-column-rank basis `S` of a
/// sublattice of Z^s, via a Smith reduction of `S`.
pub fn quotient_data(s: &IntMatrix) -> Result<QuotientData<Integers>> {
    let n = s.rows();
    let a = s.cols();
    if a == 0 {
        return Ok(QuotientData {
            proj: IntMatrix::identity(Integers, n),
            lift: IntMatrix::identity(Integers, n),
        });
    }
    let snf = smith_normal_form(s, true);
    if snf.rank() != a || snf.factors.iter().any(|d| !d.is_one()) {
        return Err(Error::InternalInvariant(
            "quotient basis is not saturated of full column rank".into(),
        ));
    }
    let u = snf.u.unwrap();
    // Lattice(S) = first `a` columns of U^{-1}; the remaining columns of
    // U^{-1} descend to a basis of the quotient, with projection given by
    // the corresponding rows of U.
    let tail: Vec<usize> = (a..n).collect();
    let proj = u.select_rows(&tail);
    let u_inv = invert_unimodular(&u)?;
    let lift = u_inv.select_cols(&tail);
    Ok(QuotientData { proj, lift })
}

/// Inverse of a unimodular matrix (via its Smith transforms).
pub fn invert_unimodular(m: &IntMatrix) -> Result<IntMatrix> {
    let snf = smith_normal_form(m, true);
    if snf.rank() != m.rows() || snf.factors.iter().any(|d| !d.is_one()) {
        return Err(Error::InternalInvariant("matrix is not unimodular".into()));
    }
    // U M V = I  =>  M^{-1} = V U
    Ok(snf.v.unwrap().mul(&snf.u.unwrap()))
}

/// Fraction-free determinant (Bareiss).
pub fn determinant(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| m.row_vec(i)).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

impl IntMatrix {
    fn row_vec(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols()).map(|j| self.get(i, j).clone()).collect()
    }
}

/// Column echelon reduction by unimodular column operations, accumulated
/// into `w` when given. Returns the pivot positions `(row, col)` with
/// strictly increasing rows and contiguous columns starting at 0.
fn column_echelon(a: &mut IntMatrix, mut w: Option<&mut IntMatrix>) -> Vec<(usize, usize)> {
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next = 0usize;
    for row in 0..a.rows() {
        if next == a.cols() {
            break;
        }
        loop {
            // smallest-magnitude nonzero entry of this row among open columns
            let mut best: Option<usize> = None;
            for j in next..a.cols() {
                if a.get(row, j).is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(j),
                    Some(b) if a.get(row, j).abs() < a.get(row, b).abs() => best = Some(j),
                    _ => {}
                }
            }
            let Some(p) = best else {
                break;
            };
            let mut others = false;
            for j in next..a.cols() {
                if j == p || a.get(row, j).is_zero() {
                    continue;
                }
                let q = div_nearest(a.get(row, j), a.get(row, p));
                col_sub(a, j, p, &q, 0);
                if let Some(w) = w.as_deref_mut() {
                    col_sub(w, j, p, &q, 0);
                }
                if !a.get(row, j).is_zero() {
                    others = true;
                }
            }
            if !others {
                swap_cols(a, next, p);
                if let Some(w) = w.as_deref_mut() {
                    swap_cols(w, next, p);
                }
                pivots.push((row, next));
                next += 1;
                break;
            }
        }
    }
    pivots
}

fn smallest_nonzero(a: &IntMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in from..a.rows() {
        for j in from..a.cols() {
            if a.get(i, j).is_zero() {
                continue;
            }
            if a.get(i, j).abs().is_one() {
                return Some((i, j));
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) if a.get(i, j).abs() < a.get(bi, bj).abs() => best = Some((i, j)),
                _ => {}
            }
        }
    }
    best
}

/// Quotient rounded to nearest, so remainders satisfy |r| <= |b|/2.
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    if &r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

fn swap_rows(a: &mut IntMatrix, r: usize, s: usize) {
    if r == s {
        return;
    }
    for j in 0..a.cols() {
        let x = a.get(r, j).clone();
        let y = a.get(s, j).clone();
        a.set(r, j, y);
        a.set(s, j, x);
    }
}

fn swap_cols(a: &mut IntMatrix, c: usize, d: usize) {
    if c == d {
        return;
    }
    for i in 0..a.rows() {
        let x = a.get(i, c).clone();
        let y = a.get(i, d).clone();
        a.set(i, c, y);
        a.set(i, d, x);
    }
}

/// row_i -= q * row_k, starting at column `from`.
fn row_sub(a: &mut IntMatrix, i: usize, k: usize, q: &BigInt, from: usize) {
    if q.is_zero() {
        return;
    }
    for j in from..a.cols() {
        if !a.get(k, j).is_zero() {
            let v = a.get(i, j) - &(q * a.get(k, j));
            a.set(i, j, v);
        }
    }
}

/// col_j -= q * col_k, starting at row `from`.
fn col_sub(a: &mut IntMatrix, j: usize, k: usize, q: &BigInt, from: usize) {
    if q.is_zero() {
        return;
    }
    for i in from..a.rows() {
        if !a.get(i, k).is_zero() {
            let v = a.get(i, j) - &(q * a.get(i, k));
            a.set(i, j, v);
        }
    }
}

/// row_k += row_i, starting at column `from`.
fn row_add(a: &mut IntMatrix, k: usize, i: usize, from: usize) {
    for j in from..a.cols() {
        if !a.get(i, j).is_zero() {
            let v = a.get(k, j) + a.get(i, j);
            a.set(k, j, v);
        }
    }
}

fn negate_row(a: &mut IntMatrix, r: usize) {
    for j in 0..a.cols() {
        let v = -a.get(r, j);
        a.set(r, j, v);
    }
}
