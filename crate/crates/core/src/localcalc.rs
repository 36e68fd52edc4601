//! Closed-form graded-module transforms for cones, products with lines and
//! distinguished neighborhoods, used as independent oracles against the
//! chain-level computations.
//!
//! Conventions: `ihl` is the graded intersection homology of a compact link
//! `L`, `n` is the filtered dimension of the cone on `L` (one more than the
//! dimension of `L`). Compact supports truncate: degrees at or above
//! `n - 1 - p(n)` vanish. Closed supports shift: degree `i` picks up the
//! link in degree `i - 1` once `i ≥ n - p(n)` and nothing below. Products
//! with lines shift degrees up, one per line factor.

use crate::error::Result;
use crate::homology::{DegreeHomology, HomologyResult};
use crate::perversity::Perversity;

/// Graded module described degreewise by rank and invariant factors; the
/// shape of every closed-form answer in this module.
pub type GradedModule = HomologyResult;

fn shifted(m: &GradedModule, by: usize, len: usize) -> GradedModule {
    let degrees = (0..len)
        .map(|i| {
            if i >= by {
                m.degree(i - by)
            } else {
                DegreeHomology::default()
            }
        })
        .collect();
    GradedModule::from_degrees(degrees)
}

/// Compact-support cone formula: keep the link below the cutoff
/// `n - 1 - p(n)`, kill everything at and above it (for superperversities
/// with `p(n) ≥ n - 1` this kills degree 0 as well: cones on 0-cycles
/// become allowable and cap them off).
pub fn cone_compact(ihl: &GradedModule, n: usize, p: &Perversity) -> Result<GradedModule> {
    if n < 1 {
        return Err(crate::error::Error::PerversityEmptyRange);
    }
    p.ensure_covers(n)?;
    let cutoff = n as i64 - 1 - p.value(n);
    let degrees = (0..=n.max(ihl.top_degree()))
        .map(|i| {
            if (i as i64) < cutoff {
                ihl.degree(i)
            } else {
                DegreeHomology::default()
            }
        })
        .collect();
    Ok(GradedModule::from_degrees(degrees))
}

/// Closed-support cone formula: the link appears shifted up one degree, in
/// degrees `i ≥ n - p(n)` only.
pub fn cone_closed_support(ihl: &GradedModule, n: usize, p: &Perversity) -> Result<GradedModule> {
    if n < 1 {
        return Err(crate::error::Error::PerversityEmptyRange);
    }
    p.ensure_covers(n)?;
    let cutoff = n as i64 - p.value(n);
    let degrees = (0..=(n.max(ihl.top_degree() + 1)))
        .map(|i| {
            if (i as i64) >= cutoff && i >= 1 {
                ihl.degree(i - 1)
            } else {
                DegreeHomology::default()
            }
        })
        .collect();
    Ok(GradedModule::from_degrees(degrees))
}

/// Closed-support homology of `L × ℝ`: pure shift up by one degree.
pub fn times_r(ihl: &GradedModule) -> GradedModule {
    shifted(ihl, 1, ihl.top_degree() + 2)
}

/// Closed-support homology of `cL × ℝ^k` from that of `cL`: shift by `k`.
pub fn dist_neighborhood(ih_cl: &GradedModule, k: usize) -> GradedModule {
    shifted(ih_cl, k, ih_cl.top_degree() + k + 1)
}

/// Closed-support homology of `(cL - x) × ℝ^k` from the link: the deleted
/// cone is `L × ℝ`, so the total shift is `k + 1`.
pub fn deleted_neighborhood(ihl: &GradedModule, k: usize) -> GradedModule {
    shifted(ihl, k + 1, ihl.top_degree() + k + 2)
}

/// One row of the attaching comparison table.
#[derive(Debug, Clone)]
pub struct AttachingRow {
    pub degree: usize,
    pub neighborhood: DegreeHomology,
    pub deleted: DegreeHomology,
    pub iso_expected: bool,
    pub agrees: bool,
}

/// Compare the closed-support homology of a distinguished neighborhood
/// `cL × ℝ^(n-k)` against its deleted counterpart, degree by degree. The
/// restriction map is an isomorphism exactly in degrees `≥ n - p(k)`, so
/// rows flagged `iso_expected` must agree.
pub fn local_attaching_profile(
    ihl: &GradedModule,
    n: usize,
    k_codim: usize,
    p: &Perversity,
) -> Result<Vec<AttachingRow>> {
    if k_codim < 1 {
        return Err(crate::error::Error::PerversityEmptyRange);
    }
    p.ensure_covers(k_codim)?;
    let euclidean = n - k_codim.min(n);
    let neighborhood = dist_neighborhood(&cone_closed_support(ihl, k_codim, p)?, euclidean);
    let deleted = deleted_neighborhood(ihl, euclidean);
    let top = neighborhood.top_degree().max(deleted.top_degree());
    let rows = (0..=top)
        .map(|degree| {
            let nv = neighborhood.degree(degree);
            let dv = deleted.degree(degree);
            AttachingRow {
                degree,
                iso_expected: degree as i64 >= n as i64 - p.value(k_codim),
                agrees: nv == dv,
                neighborhood: nv,
                deleted: dv,
            }
        })
        .collect();
    Ok(rows)
}
