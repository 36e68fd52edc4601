//! JSON wire formats: complexes, coefficient specs, homology reports and
//! the chain-level debug dump.
//!
//! The complex format is `{"formal_dim": n, "facets": [[v,...],...],
//! "skeleta": {"j": [[v,...],...]}}`; skeleta list generators whose closure
//! is `X^j`. Export emits maximal simplices per level, so a round trip
//! reproduces the complex and its filtration exactly.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coefficients::{CoefficientSystem, Mode, RingSpec};
use crate::complex::{FilteredComplex, Simplex};
use crate::error::{Error, Result};
use crate::homology::{DegreeHomology, HomologyResult, LesReport};
use crate::linalg::{IntMatrix, Integers, Matrix};
use crate::localcalc::AttachingRow;
use crate::perversity::Perversity;

#[derive(Debug, Serialize, Deserialize)]
pub struct ComplexJson {
    pub formal_dim: usize,
    pub facets: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub skeleta: BTreeMap<String, Vec<Vec<u32>>>,
}

impl ComplexJson {
    pub fn from_complex(x: &FilteredComplex) -> Self {
        let facets: Vec<Vec<u32>> = x
            .maximal_simplices()
            .into_iter()
            .map(|s| s.vertices().to_vec())
            .collect();
        let mut skeleta = BTreeMap::new();
        for j in 0..x.formal_dim() {
            let level: Vec<&Simplex> = x
                .simplices()
                .filter(|(_, l)| *l <= j)
                .map(|(s, _)| s)
                .collect();
            if level.is_empty() {
                continue;
            }
            let maximal: Vec<Vec<u32>> = level
                .iter()
                .filter(|s| {
                    !level
                        .iter()
                        .any(|t| t.dimension() > s.dimension() && s.is_face_of(t))
                })
                .map(|s| s.vertices().to_vec())
                .collect();
            skeleta.insert(j.to_string(), maximal);
        }
        ComplexJson {
            formal_dim: x.formal_dim(),
            facets,
            skeleta,
        }
    }

    pub fn into_complex(self) -> Result<FilteredComplex> {
        let mut generators: BTreeMap<usize, Vec<Vec<u32>>> = BTreeMap::new();
        for (key, gens) in self.skeleta {
            let level: usize = key
                .parse()
                .map_err(|_| Error::Parse(format!("bad skeleton level {key:?}")))?;
            generators.insert(level, gens);
        }
        FilteredComplex::build(&self.facets, &generators, Some(self.formal_dim))
    }

    pub fn parse(text: &str) -> Result<FilteredComplex> {
        let parsed: ComplexJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        parsed.into_complex()
    }

    pub fn render(x: &FilteredComplex) -> String {
        serde_json::to_string_pretty(&Self::from_complex(x)).expect("serialization")
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TransportJson {
    pub simplex: Vec<u32>,
    pub facet: Vec<u32>,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CoefficientsJson {
    pub ring: String,
    pub mode: String,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub transports: Vec<TransportJson>,
}

impl CoefficientsJson {
    pub fn into_system(self, x: &FilteredComplex) -> Result<CoefficientSystem> {
        let ring = RingSpec::parse(&self.ring)?;
        let mode = Mode::parse(&self.mode)?;
        if self.transports.is_empty() {
            return CoefficientSystem::constant(ring, mode, self.rank);
        }
        if mode == Mode::Full {
            return Err(Error::FullModeLocalSystem);
        }
        let mut transports = BTreeMap::new();
        for t in self.transports {
            let simplex = Simplex::new(t.simplex)?;
            let facet = Simplex::new(t.facet)?;
            let matrix = Matrix::from_i64_rows(Integers, &t.matrix);
            transports.insert((simplex, facet), matrix);
        }
        CoefficientSystem::local_system(x, transports, ring, self.rank)
    }

    pub fn parse(text: &str, x: &FilteredComplex) -> Result<CoefficientSystem> {
        let parsed: CoefficientsJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        parsed.into_system(x)
    }
}

#[derive(Debug, Serialize)]
pub struct DegreeJson {
    pub i: usize,
    pub betti: usize,
    pub torsion: Vec<String>,
}

impl DegreeJson {
    fn new(i: usize, d: &DegreeHomology) -> Self {
        DegreeJson {
            i,
            betti: d.betti,
            torsion: d.torsion.iter().map(|t| t.to_string()).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ComplexStatsJson {
    pub formal_dim: usize,
    pub simplices: usize,
    pub by_dimension: Vec<usize>,
    pub euler_characteristic: i64,
}

impl ComplexStatsJson {
    pub fn new(x: &FilteredComplex) -> Self {
        let by_dimension = (0..=x.top_dimension())
            .map(|d| x.simplices_of_dim(d).len())
            .collect();
        ComplexStatsJson {
            formal_dim: x.formal_dim(),
            simplices: x.len(),
            by_dimension,
            euler_characteristic: x.euler_characteristic(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ProvenanceJson {
    pub complex: ComplexStatsJson,
    pub perversity: Vec<i64>,
    pub perversity_kind: crate::perversity::PerversityKind,
    pub mode: String,
    pub ring: String,
    pub rank: usize,
    pub relative: bool,
}

#[derive(Debug, Serialize)]
pub struct ResultJson {
    pub degrees: Vec<DegreeJson>,
    pub provenance: ProvenanceJson,
}

impl ResultJson {
    pub fn new(
        h: &HomologyResult,
        x: &FilteredComplex,
        p: &Perversity,
        sys: &CoefficientSystem,
        relative: bool,
    ) -> Self {
        ResultJson {
            degrees: h
                .degrees()
                .iter()
                .enumerate()
                .map(|(i, d)| DegreeJson::new(i, d))
                .collect(),
            provenance: ProvenanceJson {
                complex: ComplexStatsJson::new(x),
                perversity: p.values().to_vec(),
                perversity_kind: p.kind(),
                mode: sys.mode().label().to_string(),
                ring: sys.ring().label(),
                rank: sys.rank(),
                relative,
            },
        }
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialization")
    }
}

#[derive(Debug, Serialize)]
pub struct ValidationJson {
    pub no_codim_one_stratum: bool,
    pub dimensionally_homogeneous: bool,
    pub two_sided_facets: bool,
    pub regular_part_dense: bool,
    pub link_recursion: &'static str,
    pub offenders: BTreeMap<String, Vec<String>>,
}

impl ValidationJson {
    pub fn new(report: &crate::complex::ValidationReport) -> Self {
        let mut offenders = BTreeMap::new();
        let fmt = |v: &[Simplex]| -> Vec<String> { v.iter().map(|s| s.to_string()).collect() };
        if !report.codim_one_offenders.is_empty() {
            offenders.insert("codim_one".into(), fmt(&report.codim_one_offenders));
        }
        if !report.homogeneity_offenders.is_empty() {
            offenders.insert("homogeneity".into(), fmt(&report.homogeneity_offenders));
        }
        if !report.branching_offenders.is_empty() {
            offenders.insert(
                "facet_count".into(),
                report
                    .branching_offenders
                    .iter()
                    .map(|(s, c)| format!("{s} in {c} top simplices"))
                    .collect(),
            );
        }
        if !report.density_offenders.is_empty() {
            offenders.insert("density".into(), fmt(&report.density_offenders));
        }
        ValidationJson {
            no_codim_one_stratum: report.no_codim_one_stratum(),
            dimensionally_homogeneous: report.dimensionally_homogeneous(),
            two_sided_facets: report.two_sided_facets(),
            regular_part_dense: report.regular_part_dense(),
            link_recursion: "not checked",
            offenders,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct LesNodeJson {
    pub degree: usize,
    pub place: String,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub composite_zero: bool,
    pub exact: bool,
}

#[derive(Debug, Serialize)]
pub struct LesJson {
    pub ring: String,
    pub rank_only: bool,
    pub all_exact: bool,
    pub nodes: Vec<LesNodeJson>,
}

impl LesJson {
    pub fn new(report: &LesReport) -> Self {
        LesJson {
            ring: report.ring.label(),
            rank_only: report.rank_only,
            all_exact: report.all_exact(),
            nodes: report
                .nodes
                .iter()
                .map(|n| LesNodeJson {
                    degree: n.degree,
                    place: n.place.to_string(),
                    dim: n.dim,
                    rank_in: n.rank_in,
                    rank_out: n.rank_out,
                    composite_zero: n.composite_zero,
                    exact: n.exact,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AttachingRowJson {
    pub degree: usize,
    pub neighborhood: DegreeJson,
    pub deleted: DegreeJson,
    pub iso_expected: bool,
    pub agrees: bool,
}

impl AttachingRowJson {
    pub fn new(row: &AttachingRow) -> Self {
        AttachingRowJson {
            degree: row.degree,
            neighborhood: DegreeJson::new(row.degree, &row.neighborhood),
            deleted: DegreeJson::new(row.degree, &row.deleted),
            iso_expected: row.iso_expected,
            agrees: row.agrees,
        }
    }
}

/// Chain-level audit dump: allowable simplices and the exact matrices per
/// degree, entries rendered as strings.
#[derive(Debug, Serialize)]
pub struct ChainDumpDegreeJson {
    pub degree: usize,
    pub allowable: Vec<Vec<u32>>,
    pub basis: Vec<Vec<String>>,
    pub boundary: Vec<Vec<String>>,
}

pub fn matrix_strings(m: &IntMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    #[test]
    fn complex_round_trip_builtins() {
        for name in builtins::NAMES {
            let x = builtins::builtin(name).unwrap();
            let text = ComplexJson::render(&x);
            let back = ComplexJson::parse(&text).unwrap();
            assert_eq!(back, x, "round trip failed for {name}");
        }
    }

    #[test]
    fn complex_round_trip_after_transforms() {
        let x = builtins::builtin("torus")
            .unwrap()
            .cone()
            .barycentric_subdivide();
        let back = ComplexJson::parse(&ComplexJson::render(&x)).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn coefficient_spec_parses() {
        let x = builtins::builtin("s2-marked-1").unwrap();
        let sys =
            CoefficientsJson::parse(r#"{"ring": "Fp:2", "mode": "g0", "rank": 2}"#, &x).unwrap();
        assert_eq!(sys.ring(), RingSpec::PrimeField(2));
        assert_eq!(sys.rank(), 2);
        let bad = CoefficientsJson::parse(
            r#"{"ring": "Z", "mode": "full", "rank": 1,
                "transports": [{"simplex": [1,2,3], "facet": [1,2], "matrix": [[-1]]}]}"#,
            &x,
        );
        assert!(matches!(bad, Err(Error::FullModeLocalSystem)));
    }

    #[test]
    fn deterministic_result_json() {
        use crate::coefficients::{CoefficientSystem, Mode};
        use crate::homology::intersection_homology;
        use crate::perversity::{Perversity, PerversityFamily};
        let x = builtins::builtin("s2-marked-1").unwrap();
        let p = Perversity::named(PerversityFamily::GmSuper, 2).unwrap();
        let sys = CoefficientSystem::constant(RingSpec::Integers, Mode::G0, 1).unwrap();
        let h = intersection_homology(&x, &p, &sys).unwrap();
        let a = ResultJson::new(&h, &x, &p, &sys, false).render();
        let b = ResultJson::new(&h, &x, &p, &sys, false).render();
        assert_eq!(a, b);
        assert!(a.contains("\"betti\": 0"));
    }
}
