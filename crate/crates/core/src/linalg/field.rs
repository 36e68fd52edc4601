//! Gaussian elimination over an arbitrary exact field, shared by the
//! rational and prime-field backends.

use super::{Field, Matrix, QuotientData};
use crate::error::{Error, Result};

/// Row echelon reduction in place; returns pivot columns in order.
fn row_echelon<F: Field>(ring: &F, a: &mut Matrix<F>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0usize;
    for col in 0..a.cols() {
        if row == a.rows() {
            break;
        }
        let Some(p) = (row..a.rows()).find(|&i| !ring.is_zero(a.get(i, col))) else {
            continue;
        };
        if p != row {
            for j in 0..a.cols() {
                let x = a.get(row, j).clone();
                let y = a.get(p, j).clone();
                a.set(row, j, y);
                a.set(p, j, x);
            }
        }
        let inv = ring.inv(a.get(row, col));
        for j in col..a.cols() {
            let v = ring.mul(a.get(row, j), &inv);
            a.set(row, j, v);
        }
        for i in 0..a.rows() {
            if i == row || ring.is_zero(a.get(i, col)) {
                continue;
            }
            let f = a.get(i, col).clone();
            for j in col..a.cols() {
                let v = ring.sub(a.get(i, j), &ring.mul(&f, a.get(row, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(ring: &F, m: &Matrix<F>) -> usize {
    let mut a = m.clone();
    row_echelon(ring, &mut a).len()
}

pub fn kernel_basis<F: Field>(ring: &F, m: &Matrix<F>) -> Matrix<F> {
    let mut a = m.clone();
    let pivots = row_echelon(ring, &mut a);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    let mut out = Matrix::zero(ring.clone(), m.cols(), free.len());
    for (k, &fc) in free.iter().enumerate() {
        out.set(fc, k, ring.one());
        for (r, &pc) in pivots.iter().enumerate() {
            out.set(pc, k, ring.neg(a.get(r, fc)));
        }
    }
    out
}

pub fn solve_columns<F: Field>(ring: &F, b: &Matrix<F>, rhs: &Matrix<F>) -> Option<Matrix<F>> {
    assert_eq!(b.rows(), rhs.rows(), "shape mismatch in solve");
    let mut aug = b.hcat(rhs);
    let pivots = row_echelon(ring, &mut aug);
    // pivots inside B must cover all its columns (independence)
    let b_pivots: Vec<usize> = pivots.iter().copied().filter(|&c| c < b.cols()).collect();
    if b_pivots.len() != b.cols() {
        return None;
    }
    // consistency: no pivot may fall in the rhs block
    if pivots.iter().any(|&c| c >= b.cols()) {
        return None;
    }
    let mut out = Matrix::zero(ring.clone(), b.cols(), rhs.cols());
    for (r, &pc) in b_pivots.iter().enumerate() {
        for j in 0..rhs.cols() {
            out.set(pc, j, aug.get(r, b.cols() + j).clone());
        }
    }
    Some(out)
}

pub fn quotient_data<F: Field>(ring: &F, s: &Matrix<F>) -> Result<QuotientData<F>> {
    let n = s.rows();
    let a = s.cols();
    if rank(ring, s) != a {
        return Err(Error::InternalInvariant(
            "quotient basis does not have full column rank".into(),
        ));
    }
    // Greedily extend the column space of S by standard basis vectors.
    let mut ext = s.clone();
    let mut chosen = Vec::new();
    for i in 0..n {
        if ext.cols() == n {
            break;
        }
        let mut e = Matrix::zero(ring.clone(), n, 1);
        e.set(i, 0, ring.one());
        let cand = ext.hcat(&e);
        if rank(ring, &cand) == ext.cols() + 1 {
            ext = cand;
            chosen.push(i);
        }
    }
    debug_assert_eq!(ext.cols(), n);
    // In the basis [S | E], coordinates split as (sub, quotient); the
    // projection is the quotient block of the inverse change of basis.
    let inv = solve_columns(ring, &ext, &Matrix::identity(ring.clone(), n))
        .ok_or_else(|| Error::InternalInvariant("basis completion is singular".into()))?;
    let tail: Vec<usize> = (a..n).collect();
    let proj = inv.select_rows(&tail);
    let lift = ext.select_cols(&tail);
    Ok(QuotientData { proj, lift })
}
