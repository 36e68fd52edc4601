//! Named example complexes used by the command line and the test suites.

use std::collections::BTreeMap;

use crate::complex::FilteredComplex;
use crate::error::{Error, Result};

pub const NAMES: [&str; 11] = [
    "sphere1",
    "sphere2",
    "sphere3",
    "torus",
    "rp2",
    "klein",
    "cone-torus",
    "susp-torus",
    "s2-marked-1",
    "s2-marked-2",
    "s2-marked-3",
];

/// Boundary of the (d+1)-simplex: the minimal triangulated d-sphere,
/// trivially filtered.
pub fn sphere(d: usize) -> FilteredComplex {
    let all: Vec<u32> = (0..=(d as u32 + 1)).collect();
    let facets: Vec<Vec<u32>> = (0..all.len())
        .map(|skip| {
            all.iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect();
    FilteredComplex::build(&facets, &BTreeMap::new(), None).expect("sphere is well formed")
}

/// The 7-vertex triangulation of the torus: triangles `{i, i+1, i+3}` and
/// `{i, i+2, i+3}` mod 7.
pub fn torus() -> FilteredComplex {
    let facets: Vec<Vec<u32>> = (0..7u32)
        .flat_map(|i| {
            vec![
                vec![i, (i + 1) % 7, (i + 3) % 7],
                vec![i, (i + 2) % 7, (i + 3) % 7],
            ]
        })
        .collect();
    FilteredComplex::build(&facets, &BTreeMap::new(), None).expect("torus is well formed")
}

/// The 6-vertex triangulation of the projective plane (antipodal quotient
/// of the icosahedron).
pub fn rp2() -> FilteredComplex {
    let facets: Vec<Vec<u32>> = vec![
        vec![0, 1, 3],
        vec![0, 1, 4],
        vec![0, 2, 3],
        vec![0, 2, 5],
        vec![0, 4, 5],
        vec![1, 2, 4],
        vec![1, 2, 5],
        vec![1, 3, 5],
        vec![2, 3, 4],
        vec![3, 4, 5],
    ];
    FilteredComplex::build(&facets, &BTreeMap::new(), None).expect("rp2 is well formed")
}

/// A 9-vertex Klein bottle: a 3×3 grid with one seam glued with a flip.
/// Vertex (i, j) is `3i + j`; columns wrap straight, the last column glues
/// to the first with the vertical direction reversed.
pub fn klein() -> FilteredComplex {
    let v = |i: i64, j: i64| -> u32 {
        let (i, j) = (i.rem_euclid(4), j.rem_euclid(3));
        if i == 3 {
            // seam: (3, y) ~ (0, -y)
            (-j).rem_euclid(3) as u32
        } else {
            (3 * i + j) as u32
        }
    };
    let mut facets = Vec::new();
    for i in 0..3i64 {
        for j in 0..3i64 {
            let (a, b, c, d) = (v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1));
            facets.push(vec![a, b, d]);
            facets.push(vec![a, d, c]);
        }
    }
    FilteredComplex::build(&facets, &BTreeMap::new(), None).expect("klein is well formed")
}

/// Fetch a builtin by name.
pub fn builtin(name: &str) -> Result<FilteredComplex> {
    match name {
        "sphere1" => Ok(sphere(1)),
        "sphere2" => Ok(sphere(2)),
        "sphere3" => Ok(sphere(3)),
        "torus" => Ok(torus()),
        "rp2" => Ok(rp2()),
        "klein" => Ok(klein()),
        "cone-torus" => Ok(torus().cone()),
        "susp-torus" => torus().suspension(),
        "s2-marked-1" => sphere(2).mark_points(&[0]),
        "s2-marked-2" => sphere(2).mark_points(&[0, 1]),
        "s2-marked-3" => sphere(2).mark_points(&[0, 1, 2]),
        other => Err(Error::UnknownBuiltin(other.to_string())),
    }
}
