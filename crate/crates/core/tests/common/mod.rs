// not every test target uses every oracle entry point
#![allow(dead_code)]

//! Independent plain-homology oracle for the test suites.
//!
//! Deliberately separate from the engine under test: boundary matrices are
//! assembled directly from the simplex lists with the ordinary simplicial
//! boundary, and the Smith reduction below is its own small implementation
//! over checked i128 arithmetic.

use std::collections::HashMap;

use ih_core::complex::{FilteredComplex, Simplex};

/// `(betti, invariant factors > 1)` per degree.
pub type Graded = Vec<(usize, Vec<i128>)>;

/// Ordinary simplicial homology of the underlying complex.
pub fn ordinary_homology(x: &FilteredComplex) -> Graded {
    homology_with_support(x, |_| true)
}

/// Ordinary relative homology of `(X, A)` for a subcomplex given by a
/// membership predicate: generators outside `A`, boundaries truncated.
pub fn ordinary_relative_homology(x: &FilteredComplex, in_a: impl Fn(&Simplex) -> bool) -> Graded {
    homology_with_support(x, |s| !in_a(s))
}

fn homology_with_support(x: &FilteredComplex, keep: impl Fn(&Simplex) -> bool) -> Graded {
    let top = x.top_dimension();
    let gens: Vec<Vec<&Simplex>> = (0..=top)
        .map(|d| {
            x.simplices_of_dim(d)
                .into_iter()
                .filter(|s| keep(s))
                .collect()
        })
        .collect();
    let index: Vec<HashMap<&Simplex, usize>> = gens
        .iter()
        .map(|g| g.iter().enumerate().map(|(i, s)| (*s, i)).collect())
        .collect();

    let mut boundaries: Vec<Vec<Vec<i128>>> = Vec::new();
    for d in 0..=top {
        let rows = if d == 0 { 0 } else { gens[d - 1].len() };
        let mut m = vec![vec![0i128; gens[d].len()]; rows];
        if d > 0 {
            for (c, s) in gens[d].iter().enumerate() {
                for (j, f) in s.facets().enumerate() {
                    if let Some(&r) = index[d - 1].get(&f) {
                        m[r][c] = if j % 2 == 0 { 1 } else { -1 };
                    }
                }
            }
        }
        boundaries.push(m);
    }

    (0..=top)
        .map(|d| {
            let rank_d = smith_factors(boundaries[d].clone()).len();
            let (rank_up, torsion) = if d + 1 <= top {
                let f = smith_factors(boundaries[d + 1].clone());
                let t = f.iter().copied().filter(|&v| v > 1).collect();
                (f.len(), t)
            } else {
                (0, Vec::new())
            };
            (gens[d].len() - rank_d - rank_up, torsion)
        })
        .collect()
}

/// Invariant factors (absolute values, ascending divisibility) of an
/// integer matrix; straightforward Smith reduction.
pub fn smith_factors(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut factors = Vec::new();
    let mut k = 0;
    while k < rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if m[i][j] != 0 && pivot.map_or(true, |(pi, pj)| m[i][j].abs() < m[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        loop {
            let mut clean = true;
            for i in k + 1..rows {
                if m[i][k] == 0 {
                    continue;
                }
                let q = m[i][k] / m[k][k];
                for j in k..cols {
                    m[i][j] = m[i][j]
                        .checked_sub(q.checked_mul(m[k][j]).unwrap())
                        .unwrap();
                }
                if m[i][k] != 0 {
                    m.swap(k, i);
                    clean = false;
                }
            }
            for j in k + 1..cols {
                if m[k][j] == 0 {
                    continue;
                }
                let q = m[k][j] / m[k][k];
                for row in m.iter_mut().skip(k) {
                    row[j] = row[j].checked_sub(q.checked_mul(row[k]).unwrap()).unwrap();
                }
                if m[k][j] != 0 {
                    for row in m.iter_mut() {
                        row.swap(k, j);
                    }
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let mut fixed = true;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if m[i][j] % m[k][k] != 0 {
                        for col in k..cols {
                            m[k][col] = m[k][col].checked_add(m[i][col]).unwrap();
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
        factors.push(m[k][k].abs());
        k += 1;
    }
    factors
}
