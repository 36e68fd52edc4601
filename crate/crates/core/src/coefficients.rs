//! Coefficient systems on the regular part of a filtered complex.
//!
//! Two modes exist. `G0` is the stratified system: coefficients live on the
//! regular part and the zero system sits on `X^(n-1)`, so boundary faces
//! inside the singular set are discarded. `Full` is the constant-coefficient
//! theory with the ordinary boundary. A local system on the regular part is
//! encoded by invertible stalk transports on regular codimension-1
//! incidences; a transport moves a coefficient lift from a simplex to a
//! facet, and the cocycle condition pins down composites along codim-2
//! corners so that the twisted boundary squares to zero.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::complex::{FilteredComplex, Simplex};
use crate::error::{Error, Result};
use crate::linalg::{determinant, is_prime, IntMatrix, Integers, Matrix, Ring};

/// Ground ring selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingSpec {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl RingSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "Z" | "z" => Ok(RingSpec::Integers),
            "Q" | "q" => Ok(RingSpec::Rationals),
            _ => {
                let rest = t
                    .strip_prefix("Fp:")
                    .or_else(|| t.strip_prefix("fp:"))
                    .or_else(|| t.strip_prefix("F"))
                    .or_else(|| t.strip_prefix("f"))
                    .ok_or_else(|| Error::Parse(format!("unknown ring {s:?}")))?;
                let p: u64 = rest
                    .parse()
                    .map_err(|_| Error::Parse(format!("unknown ring {s:?}")))?;
                if !is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                Ok(RingSpec::PrimeField(p))
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            RingSpec::Integers => "Z".into(),
            RingSpec::Rationals => "Q".into(),
            RingSpec::PrimeField(p) => format!("Fp:{p}"),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Chain-complex mode: stratified coefficients or the constant theory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    G0,
    Full,
}

impl Mode {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "g0" => Ok(Mode::G0),
            "full" => Ok(Mode::Full),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Mode::G0 => "g0",
            Mode::Full => "full",
        }
    }
}

/// A validated coefficient system: ground ring, mode, stalk rank and the
/// transport table (missing incidences are the identity).
#[derive(Clone)]
pub struct CoefficientSystem {
    ring: RingSpec,
    mode: Mode,
    rank: usize,
    transports: BTreeMap<(Simplex, Simplex), IntMatrix>,
}

impl fmt::Debug for CoefficientSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CoefficientSystem({}, {}, rank {}, {} transports)",
            self.ring.label(),
            self.mode.label(),
            self.rank,
            self.transports.len()
        )
    }
}

impl CoefficientSystem {
    /// Constant coefficients of the given stalk rank.
    pub fn constant(ring: RingSpec, mode: Mode, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(CoefficientSystem {
            ring,
            mode,
            rank,
            transports: BTreeMap::new(),
        })
    }

    /// A local system on the regular part of `x`, given by transports on
    /// regular codimension-1 incidences. Forces `G0` mode: the constant
    /// theory has no local-coefficient variant here. Each transport must be
    /// invertible over the ring and the whole table must satisfy the
    /// cocycle condition, checked exhaustively over all regular codim-2
    /// corners.
    pub fn local_system(
        x: &FilteredComplex,
        transports: BTreeMap<(Simplex, Simplex), IntMatrix>,
        ring: RingSpec,
        rank: usize,
    ) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        for ((s, t), m) in &transports {
            if !x.contains(s) || !x.contains(t) {
                return Err(Error::BadTransportIncidence {
                    simplex: s.clone(),
                    facet: t.clone(),
                });
            }
            let facet_ok = s.dimension() == t.dimension() + 1 && t.is_face_of(s);
            if !facet_ok || !x.is_regular(s) || !x.is_regular(t) {
                return Err(Error::BadTransportIncidence {
                    simplex: s.clone(),
                    facet: t.clone(),
                });
            }
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::BadTransportShape {
                    simplex: s.clone(),
                    facet: t.clone(),
                    rank,
                });
            }
            if !invertible_over(m, ring) {
                return Err(Error::NonInvertibleTransport {
                    simplex: s.clone(),
                    facet: t.clone(),
                    ring: ring.label(),
                });
            }
        }
        let sys = CoefficientSystem {
            ring,
            mode: Mode::G0,
            rank,
            transports,
        };
        sys.check_cocycle(x)?;
        Ok(sys)
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }
    pub fn mode(&self) -> Mode {
        self.mode
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn is_constant(&self) -> bool {
        self.transports.is_empty()
    }
    pub fn transports(&self) -> &BTreeMap<(Simplex, Simplex), IntMatrix> {
        &self.transports
    }

    /// Same system over a different ground ring; transports are revalidated.
    pub fn with_ring(&self, x: &FilteredComplex, ring: RingSpec) -> Result<Self> {
        if self.transports.is_empty() {
            return CoefficientSystem::constant(ring, self.mode, self.rank);
        }
        CoefficientSystem::local_system(x, self.transports.clone(), ring, self.rank)
    }

    /// Transport matrix for the incidence `(simplex, facet)` over `ring`,
    /// identity when absent.
    pub fn transport<R: Ring>(&self, ring: &R, simplex: &Simplex, facet: &Simplex) -> Matrix<R> {
        match self.transports.get(&(simplex.clone(), facet.clone())) {
            Some(m) => m.to_ring(ring),
            None => Matrix::identity(ring.clone(), self.rank),
        }
    }

    fn transport_int(&self, simplex: &Simplex, facet: &Simplex) -> IntMatrix {
        self.transports
            .get(&(simplex.clone(), facet.clone()))
            .cloned()
            .unwrap_or_else(|| IntMatrix::identity(Integers, self.rank))
    }

    /// Test-only constructor that skips invertibility and cocycle
    /// validation, for exercising the downstream detection paths.
    #[cfg(test)]
    pub(crate) fn local_system_unchecked(
        transports: BTreeMap<(Simplex, Simplex), IntMatrix>,
        ring: RingSpec,
        rank: usize,
    ) -> Self {
        CoefficientSystem {
            ring,
            mode: Mode::G0,
            rank,
            transports,
        }
    }

    /// Exhaustive cocycle check: for every regular simplex and every regular
    /// codimension-2 face, the two facet routes must transport identically.
    fn check_cocycle(&self, x: &FilteredComplex) -> Result<()> {
        for (s, _) in x.simplices() {
            if s.dimension() < 2 || !x.is_regular(s) {
                continue;
            }
            let k = s.vertices().len();
            for a in 0..k {
                for b in a + 1..k {
                    let rho = {
                        let mut v = s.vertices().to_vec();
                        v.remove(b);
                        v.remove(a);
                        Simplex::from_sorted(v)
                    };
                    if !x.is_regular(&rho) {
                        continue;
                    }
                    let tau_a = s.facet(a);
                    let tau_b = s.facet(b);
                    debug_assert!(x.is_regular(&tau_a) && x.is_regular(&tau_b));
                    let via_a = self
                        .transport_int(&tau_a, &rho)
                        .mul(&self.transport_int(s, &tau_a));
                    let via_b = self
                        .transport_int(&tau_b, &rho)
                        .mul(&self.transport_int(s, &tau_b));
                    if !same_over(&via_a, &via_b, self.ring) {
                        return Err(Error::CocycleViolation {
                            simplex: s.clone(),
                            face: rho,
                            facet_a: tau_a,
                            facet_b: tau_b,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

fn invertible_over(m: &IntMatrix, ring: RingSpec) -> bool {
    let det = determinant(m);
    match ring {
        RingSpec::Integers => det.clone() == BigInt::one() || det == -BigInt::one(),
        RingSpec::Rationals => det != BigInt::from(0),
        RingSpec::PrimeField(p) => {
            use num_integer::Integer;
            !det.mod_floor(&BigInt::from(p)).is_zero()
        }
    }
}

fn same_over(a: &IntMatrix, b: &IntMatrix, ring: RingSpec) -> bool {
    match ring {
        RingSpec::PrimeField(p) => {
            use num_integer::Integer;
            let q = BigInt::from(p);
            (0..a.rows()).all(|i| {
                (0..a.cols()).all(|j| a.get(i, j).mod_floor(&q) == b.get(i, j).mod_floor(&q))
            })
        }
        _ => a == b,
    }
}
