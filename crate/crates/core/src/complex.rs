//! Finite simplicial complexes carrying a filtration by subcomplexes.
//!
//! A complex stores, for every simplex, the smallest filtration level `j`
//! with `σ ⊆ X^j`. Face monotonicity (`skel(τ) ≤ skel(σ)` for `τ ≤ σ`) is
//! enforced on every constructor output, which makes each
//! `X^j = {σ : skel(σ) ≤ j}` a subcomplex.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// A simplex as a strictly increasing list of vertex identifiers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    vertices: Vec<u32>,
}

impl Simplex {
    pub fn new(mut vertices: Vec<u32>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.is_empty() {
            return Err(Error::Parse("a simplex needs at least one vertex".into()));
        }
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse(format!(
                "repeated vertex in simplex {:?}",
                vertices
            )));
        }
        Ok(Simplex { vertices })
    }

    /// Construction from vertices already known to be distinct.
    pub(crate) fn from_sorted(vertices: Vec<u32>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex { vertices }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }

    /// The codimension-1 face dropping the vertex at `position`.
    pub fn facet(&self, position: usize) -> Simplex {
        let mut v = self.vertices.clone();
        v.remove(position);
        Simplex { vertices: v }
    }

    /// All codimension-1 faces, in drop-position order.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.vertices.len()).map(|j| self.facet(j))
    }

    /// All nonempty faces, including the simplex itself.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.vertices.len();
        let mut out = Vec::with_capacity((1usize << n) - 1);
        for mask in 1u32..(1 << n) {
            let v: Vec<u32> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| self.vertices[i])
                .collect();
            out.push(Simplex { vertices: v });
        }
        out
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.vertices
            .iter()
            .all(|v| other.vertices.binary_search(v).is_ok())
    }

    /// Join with a fresh vertex (which must not occur in the simplex).
    pub fn join(&self, vertex: u32) -> Simplex {
        debug_assert!(self.vertices.binary_search(&vertex).is_err());
        let mut v = self.vertices.clone();
        let pos = v.partition_point(|&x| x < vertex);
        v.insert(pos, vertex);
        Simplex { vertices: v }
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A finite simplicial complex together with a filtration
/// `X^0 ⊆ X^1 ⊆ … ⊆ X^n`, encoded by the level function `skel`.
#[derive(Clone, PartialEq, Eq)]
pub struct FilteredComplex {
    formal_dim: usize,
    skel: BTreeMap<Simplex, usize>,
}

impl fmt::Debug for FilteredComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FilteredComplex(n={}, {} simplices)",
            self.formal_dim,
            self.skel.len()
        )
    }
}

impl FilteredComplex {
    /// Validating constructor from an explicit level map.
    pub fn new(skel: BTreeMap<Simplex, usize>, formal_dim: usize) -> Result<Self> {
        let complex = FilteredComplex { formal_dim, skel };
        complex.validate_invariants()?;
        Ok(complex)
    }

    /// The empty complex, useful only as a degenerate input.
    pub fn empty(formal_dim: usize) -> Self {
        FilteredComplex {
            formal_dim,
            skel: BTreeMap::new(),
        }
    }

    /// Build a complex as the closure of `facets`, with the filtration
    /// generated by `skeleton_generators`: a simplex gets level `j` if it is
    /// a face of a generator listed at some level `≤ j`, and `formal_dim`
    /// otherwise. Levels spread to all faces of a generator, so the result
    /// cannot violate face monotonicity (the constructor still checks).
    pub fn build(
        facets: &[Vec<u32>],
        skeleton_generators: &BTreeMap<usize, Vec<Vec<u32>>>,
        formal_dim: Option<usize>,
    ) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let mut simplices: BTreeSet<Simplex> = BTreeSet::new();
        let mut max_dim = 0usize;
        for f in facets {
            let s = Simplex::new(f.clone())?;
            max_dim = max_dim.max(s.dimension());
            for face in s.faces() {
                simplices.insert(face);
            }
        }
        let n = formal_dim.unwrap_or(max_dim);
        let max_gen_level = skeleton_generators
            .iter()
            .filter(|(_, g)| !g.is_empty())
            .map(|(&j, _)| j)
            .max();
        if let Some(level) = max_gen_level {
            if level > n {
                return Err(Error::SkeletonLevelOutOfRange {
                    level,
                    formal_dim: n,
                });
            }
        }

        let mut skel: BTreeMap<Simplex, usize> = simplices.iter().map(|s| (s.clone(), n)).collect();
        for (&level, gens) in skeleton_generators {
            for g in gens {
                let s = Simplex::new(g.clone())?;
                if !simplices.contains(&s) {
                    return Err(Error::NotInComplex(s));
                }
                for face in s.faces() {
                    let e = skel.get_mut(&face).expect("closure contains faces");
                    *e = (*e).min(level);
                }
            }
        }
        FilteredComplex::new(skel, n)
    }

    fn validate_invariants(&self) -> Result<()> {
        for (s, &level) in &self.skel {
            if level > self.formal_dim {
                return Err(Error::SkeletonLevelOutOfRange {
                    level,
                    formal_dim: self.formal_dim,
                });
            }
            if s.dimension() == 0 {
                continue;
            }
            for facet in s.facets() {
                match self.skel.get(&facet) {
                    None => return Err(Error::NotClosed(facet)),
                    Some(&fl) if fl > level => {
                        return Err(Error::MonotonicityViolation {
                            face: facet,
                            face_level: fl,
                            simplex: s.clone(),
                            level,
                        })
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    pub fn formal_dim(&self) -> usize {
        self.formal_dim
    }

    pub fn is_empty(&self) -> bool {
        self.skel.is_empty()
    }

    pub fn len(&self) -> usize {
        self.skel.len()
    }

    /// Largest dimension among the simplices (0 for the empty complex).
    pub fn top_dimension(&self) -> usize {
        self.skel.keys().map(Simplex::dimension).max().unwrap_or(0)
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.skel.contains_key(s)
    }

    pub fn skel(&self, s: &Simplex) -> Option<usize> {
        self.skel.get(s).copied()
    }

    pub fn simplices(&self) -> impl Iterator<Item = (&Simplex, usize)> {
        self.skel.iter().map(|(s, &l)| (s, l))
    }

    /// Simplices of the given dimension, in canonical order.
    pub fn simplices_of_dim(&self, d: usize) -> Vec<&Simplex> {
        self.skel.keys().filter(|s| s.dimension() == d).collect()
    }

    pub fn vertices(&self) -> Vec<u32> {
        self.skel
            .keys()
            .filter(|s| s.dimension() == 0)
            .map(|s| s.vertices()[0])
            .collect()
    }

    fn max_vertex(&self) -> Option<u32> {
        self.skel
            .keys()
            .flat_map(|s| s.vertices().iter().copied())
            .max()
    }

    /// Maximal simplices (not a proper face of anything).
    pub fn maximal_simplices(&self) -> Vec<&Simplex> {
        self.skel
            .keys()
            .filter(|s| {
                !self
                    .skel
                    .keys()
                    .any(|t| t.dimension() > s.dimension() && s.is_face_of(t))
            })
            .collect()
    }

    /// A simplex is regular when it is not contained in `X^(n-1)`.
    pub fn is_regular(&self, s: &Simplex) -> bool {
        self.skel[s] == self.formal_dim
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.skel
            .keys()
            .map(|s| if s.dimension() % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// Euler characteristic of the subcomplex `X^j`.
    pub fn skeleton_euler_characteristic(&self, j: usize) -> i64 {
        self.skel
            .iter()
            .filter(|(_, &l)| l <= j)
            .map(|(s, _)| if s.dimension() % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// Structural pseudomanifold checks. Always returns a report; the
    /// recursive local-structure condition is undecidable combinatorially
    /// and is reported as unchecked.
    pub fn validate_pseudomanifold(&self) -> ValidationReport {
        let n = self.formal_dim;
        let mut report = ValidationReport::default();

        // (a) no codimension-one stratum: nothing sits at level exactly n-1
        if n >= 1 {
            for (s, &l) in &self.skel {
                if l == n - 1 {
                    report.codim_one_offenders.push(s.clone());
                }
            }
        }

        // (b) dimensional homogeneity: every simplex is a face of an n-simplex
        let top: Vec<&Simplex> = self.skel.keys().filter(|s| s.dimension() == n).collect();
        for s in self.skel.keys() {
            if s.dimension() < n && !top.iter().any(|t| s.is_face_of(t)) {
                report.homogeneity_offenders.push(s.clone());
            }
        }

        // (c) each regular (n-1)-simplex is a face of exactly two n-simplices
        if n >= 1 {
            for (s, &l) in &self.skel {
                if s.dimension() + 1 != n || l + 2 <= n {
                    continue;
                }
                let count = top.iter().filter(|t| s.is_face_of(t)).count();
                if count != 2 {
                    report.branching_offenders.push((s.clone(), count));
                }
            }
        }

        // (d) regular part dense: each simplex of X^(n-2) is a proper face of
        // a simplex outside X^(n-2)
        if n >= 2 {
            for (s, &l) in &self.skel {
                if l > n - 2 {
                    continue;
                }
                let ok = self
                    .skel
                    .iter()
                    .any(|(t, &tl)| tl + 2 > n && t.dimension() > s.dimension() && s.is_face_of(t));
                if !ok {
                    report.density_offenders.push(s.clone());
                }
            }
        }

        report
    }

    /// Closed cone with a fresh apex at filtration level 0.
    ///
    /// The apex is the new 0-skeleton; every old simplex and every joined
    /// simplex moves up one filtration level, and the formal dimension grows
    /// by one.
    pub fn cone(&self) -> FilteredComplex {
        let apex = self.max_vertex().map_or(0, |v| v + 1);
        let mut skel = BTreeMap::new();
        skel.insert(Simplex::from_sorted(vec![apex]), 0);
        for (s, l) in self.simplices() {
            skel.insert(s.clone(), l + 1);
            skel.insert(s.join(apex), l + 1);
        }
        FilteredComplex {
            formal_dim: self.formal_dim + 1,
            skel,
        }
    }

    /// Suspension: two fresh apexes, both at filtration level 0.
    pub fn suspension(&self) -> Result<FilteredComplex> {
        if self.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let base = self.max_vertex().unwrap();
        let (north, south) = (base + 1, base + 2);
        let mut skel = BTreeMap::new();
        skel.insert(Simplex::from_sorted(vec![north]), 0);
        skel.insert(Simplex::from_sorted(vec![south]), 0);
        for (s, l) in self.simplices() {
            skel.insert(s.clone(), l + 1);
            skel.insert(s.join(north), l + 1);
            skel.insert(s.join(south), l + 1);
        }
        Ok(FilteredComplex {
            formal_dim: self.formal_dim + 1,
            skel,
        })
    }

    /// Product with a compact oriented 1-complex (path or cycle), using the
    /// monotone staircase triangulation. Each product cell sits one
    /// filtration level above the level of its carrier in the base.
    pub fn product_with_graph(&self, graph: &Graph1) -> Result<FilteredComplex> {
        if self.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let m = graph.vertex_count();
        let vid = |x: u32, t: usize| -> u32 { x * m as u32 + t as u32 };
        let carrier_level = |cell: &[(u32, usize)]| -> usize {
            let mut xs: Vec<u32> = cell.iter().map(|&(x, _)| x).collect();
            xs.sort_unstable();
            xs.dedup();
            let carrier = Simplex::from_sorted(xs);
            self.skel[&carrier] + 1
        };

        let mut skel: BTreeMap<Simplex, usize> = BTreeMap::new();
        let mut insert_cell = |cell: &[(u32, usize)]| {
            let level = carrier_level(cell);
            let mut verts: Vec<u32> = cell.iter().map(|&(x, t)| vid(x, t)).collect();
            verts.sort_unstable();
            let s = Simplex::from_sorted(verts);
            let e = skel.entry(s).or_insert(level);
            *e = (*e).min(level);
        };

        for (s, _) in self.simplices() {
            let d = s.dimension();
            // cylinder slices over the vertices of the graph
            for t in 0..m {
                let cell: Vec<(u32, usize)> = s.vertices().iter().map(|&x| (x, t)).collect();
                insert_cell(&cell);
            }
            // staircase simplices over each oriented edge, with all faces
            for (a, b) in graph.edges() {
                for cut in 0..=d {
                    let mut cell: Vec<(u32, usize)> = Vec::with_capacity(d + 2);
                    for (i, &x) in s.vertices().iter().enumerate() {
                        if i <= cut {
                            cell.push((x, a));
                        }
                        if i >= cut {
                            cell.push((x, b));
                        }
                    }
                    let staircase: Vec<Vec<(u32, usize)>> = subsets_nonempty(&cell);
                    for face in staircase {
                        insert_cell(&face);
                    }
                }
            }
        }
        FilteredComplex::new(skel, self.formal_dim + 1)
    }

    /// First barycentric subdivision. A subdivision simplex given by a chain
    /// of nested faces takes the filtration level of the largest face in the
    /// chain (its interior lies in that face's open cell), so the subdivided
    /// filtration agrees with the original one as a filtered space.
    pub fn barycentric_subdivide(&self) -> FilteredComplex {
        let barycenter: BTreeMap<&Simplex, u32> = self
            .skel
            .keys()
            .enumerate()
            .map(|(i, s)| (s, i as u32))
            .collect();
        let mut skel: BTreeMap<Simplex, usize> = BTreeMap::new();
        // depth-first enumeration of chains of proper faces ending at `top`
        let mut stack: Vec<Vec<&Simplex>> = self.skel.keys().map(|s| vec![s]).collect();
        while let Some(chain) = stack.pop() {
            let verts: Vec<u32> = {
                let mut v: Vec<u32> = chain.iter().map(|s| barycenter[*s]).collect();
                v.sort_unstable();
                v
            };
            let top = chain.last().unwrap();
            skel.insert(Simplex::from_sorted(verts), self.skel[*top]);
            let smallest = chain[0];
            if smallest.dimension() > 0 {
                for face in smallest.faces() {
                    if face.dimension() < smallest.dimension() {
                        let mut longer = Vec::with_capacity(chain.len() + 1);
                        longer.push(&*self.skel.get_key_value(&face).unwrap().0);
                        longer.extend_from_slice(&chain);
                        stack.push(longer);
                    }
                }
            }
        }
        FilteredComplex {
            formal_dim: self.formal_dim,
            skel,
        }
    }

    /// Force the listed vertices onto filtration level 0.
    pub fn mark_points(&self, vs: &[u32]) -> Result<FilteredComplex> {
        let mut skel = self.skel.clone();
        for &v in vs {
            let s = Simplex::from_sorted(vec![v]);
            match skel.get_mut(&s) {
                Some(level) => *level = 0,
                None => return Err(Error::VertexNotInComplex(v)),
            }
        }
        FilteredComplex::new(skel, self.formal_dim)
    }

    /// The full subcomplex on a set of generator simplices (closure), with
    /// the induced filtration. Errors if a generator is absent.
    pub fn subcomplex(&self, generators: &[Simplex]) -> Result<FilteredComplex> {
        let mut skel = BTreeMap::new();
        for g in generators {
            if !self.contains(g) {
                return Err(Error::NotInComplex(g.clone()));
            }
            for face in g.faces() {
                skel.insert(face.clone(), self.skel[&face]);
            }
        }
        Ok(FilteredComplex {
            formal_dim: self.formal_dim,
            skel,
        })
    }

    /// Closed star of a vertex: the subcomplex generated by all simplices
    /// containing it.
    pub fn closed_star(&self, v: u32) -> Result<FilteredComplex> {
        if !self.contains(&Simplex::from_sorted(vec![v])) {
            return Err(Error::VertexNotInComplex(v));
        }
        let gens: Vec<Simplex> = self
            .skel
            .keys()
            .filter(|s| s.vertices().contains(&v))
            .cloned()
            .collect();
        self.subcomplex(&gens)
    }

    /// Complement of the open star of a vertex: all simplices not
    /// containing it, with the induced filtration.
    pub fn delete_vertex_star(&self, v: u32) -> Result<FilteredComplex> {
        if !self.contains(&Simplex::from_sorted(vec![v])) {
            return Err(Error::VertexNotInComplex(v));
        }
        let skel: BTreeMap<Simplex, usize> = self
            .skel
            .iter()
            .filter(|(s, _)| !s.vertices().contains(&v))
            .map(|(s, &l)| (s.clone(), l))
            .collect();
        FilteredComplex::new(skel, self.formal_dim)
    }

    /// Check that `a` is a subcomplex of `self` with the induced filtration.
    pub fn check_subcomplex(&self, a: &FilteredComplex) -> Result<()> {
        for (s, l) in a.simplices() {
            match self.skel.get(s) {
                None => return Err(Error::NotASubcomplex(s.clone())),
                Some(&xl) if xl != l => return Err(Error::NotASubcomplex(s.clone())),
                _ => {}
            }
        }
        Ok(())
    }
}

fn subsets_nonempty<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    let n = items.len();
    (1u32..(1 << n))
        .map(|mask| {
            (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| items[i].clone())
                .collect()
        })
        .collect()
}

/// Structural pseudomanifold report. Empty offender lists mean the check
/// passed; the recursive link condition is never checked.
#[derive(Debug, Default, Clone)]
pub struct ValidationReport {
    pub codim_one_offenders: Vec<Simplex>,
    pub homogeneity_offenders: Vec<Simplex>,
    pub branching_offenders: Vec<(Simplex, usize)>,
    pub density_offenders: Vec<Simplex>,
}

impl ValidationReport {
    pub fn no_codim_one_stratum(&self) -> bool {
        self.codim_one_offenders.is_empty()
    }
    pub fn dimensionally_homogeneous(&self) -> bool {
        self.homogeneity_offenders.is_empty()
    }
    pub fn two_sided_facets(&self) -> bool {
        self.branching_offenders.is_empty()
    }
    pub fn regular_part_dense(&self) -> bool {
        self.density_offenders.is_empty()
    }
    pub fn all_pass(&self) -> bool {
        self.no_codim_one_stratum()
            && self.dimensionally_homogeneous()
            && self.two_sided_facets()
            && self.regular_part_dense()
    }
    /// The recursive distinguished-neighborhood condition.
    pub fn link_recursion_checked(&self) -> bool {
        false
    }
}

/// A compact 1-complex with oriented edges: a path or a cycle on vertices
/// `0..m`, edges oriented along increasing index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Graph1 {
    /// `edges` segments, `edges + 1` vertices.
    Path { edges: usize },
    /// Cycle on `vertices` vertices; needs at least 3 to stay simplicial.
    Cycle { vertices: usize },
}

impl Graph1 {
    pub fn path(edges: usize) -> Result<Self> {
        if edges == 0 {
            return Err(Error::Parse("a path needs at least one edge".into()));
        }
        Ok(Graph1::Path { edges })
    }

    pub fn cycle(vertices: usize) -> Result<Self> {
        if vertices < 3 {
            return Err(Error::CycleTooShort(vertices));
        }
        Ok(Graph1::Cycle { vertices })
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Graph1::Path { edges } => edges + 1,
            Graph1::Cycle { vertices } => *vertices,
        }
    }

    /// Oriented edges as (start, end) vertex indices.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        match self {
            Graph1::Path { edges } => (0..*edges).map(|i| (i, i + 1)).collect(),
            Graph1::Cycle { vertices } => (0..*vertices).map(|i| (i, (i + 1) % vertices)).collect(),
        }
    }
}
