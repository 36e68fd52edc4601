//! Perversity sequences, their classification and complementation.
//!
//! A perversity is an integer sequence indexed from codimension 1. The
//! classical growth condition `p(k) ≤ p(k+1) ≤ p(k) + 1` together with
//! `p(1) = p(2) = 0` marks the traditional ones; a growing sequence with
//! `p(2) > 0` is a superperversity; anything else is loose. The value at
//! codimension 0 is ignored throughout.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PerversityKind {
    Traditional,
    Super,
    Loose,
}

/// Named families, all indexed from k = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerversityFamily {
    /// 0 everywhere.
    Zero,
    /// ⌊(k-2)/2⌋, clipped to 0 at k ≤ 2.
    LowerMiddle,
    /// ⌈(k-2)/2⌉, clipped to 0 at k ≤ 2.
    UpperMiddle,
    /// k-2, clipped to 0 at k ≤ 2.
    Top,
    /// k-1; the smallest superperversity killing intersection 0-cycles.
    GmSuper,
}

impl PerversityFamily {
    pub const ALL: [PerversityFamily; 5] = [
        PerversityFamily::Zero,
        PerversityFamily::LowerMiddle,
        PerversityFamily::UpperMiddle,
        PerversityFamily::Top,
        PerversityFamily::GmSuper,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PerversityFamily::Zero => "zero",
            PerversityFamily::LowerMiddle => "lower-middle",
            PerversityFamily::UpperMiddle => "upper-middle",
            PerversityFamily::Top => "top",
            PerversityFamily::GmSuper => "gm-super",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "zero" => Some(PerversityFamily::Zero),
            "lower-middle" | "lower_middle" => Some(PerversityFamily::LowerMiddle),
            "upper-middle" | "upper_middle" => Some(PerversityFamily::UpperMiddle),
            "top" => Some(PerversityFamily::Top),
            "gm-super" | "gm_super" => Some(PerversityFamily::GmSuper),
            _ => None,
        }
    }

    fn value(&self, k: usize) -> i64 {
        let k = k as i64;
        match self {
            PerversityFamily::Zero => 0,
            PerversityFamily::LowerMiddle => ((k - 2).div_euclid(2)).max(0),
            PerversityFamily::UpperMiddle => ((k - 1).div_euclid(2)).max(0),
            PerversityFamily::Top => (k - 2).max(0),
            PerversityFamily::GmSuper => k - 1,
        }
    }
}

/// A perversity sequence `p(1), …, p(len)` with its computed kind.
#[derive(Clone, PartialEq, Eq)]
pub struct Perversity {
    values: Vec<i64>,
}

impl Perversity {
    pub fn from_values(values: Vec<i64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::PerversityEmptyRange);
        }
        Ok(Perversity { values })
    }

    /// A named perversity materialized for codimensions 1..=n.
    pub fn named(family: PerversityFamily, n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::PerversityEmptyRange);
        }
        Ok(Perversity {
            values: (1..=n).map(|k| family.value(k)).collect(),
        })
    }

    /// Number of codimensions covered.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `p(k)` for `k` in `1..=len`.
    pub fn value(&self, k: usize) -> i64 {
        assert!(
            k >= 1 && k <= self.values.len(),
            "perversity index {k} out of range"
        );
        self.values[k - 1]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn ensure_covers(&self, n: usize) -> Result<()> {
        if self.values.len() < n {
            Err(Error::PerversityTooShort {
                needed: n,
                got: self.values.len(),
            })
        } else {
            Ok(())
        }
    }

    /// Classification per the growth and start conditions.
    pub fn kind(&self) -> PerversityKind {
        let v = &self.values;
        let growth = v.windows(2).all(|w| w[0] <= w[1] && w[1] <= w[0] + 1);
        if !growth {
            return PerversityKind::Loose;
        }
        if v[0] == 0 && v.len() >= 2 && v[1] == 0 {
            return PerversityKind::Traditional;
        }
        if v.len() == 1 && v[0] == 0 {
            // no codimension-2 value to distinguish; degenerate but traditional
            return PerversityKind::Traditional;
        }
        if v.len() >= 2 && v[1] > 0 {
            return PerversityKind::Super;
        }
        PerversityKind::Loose
    }

    /// Complementary perversity under `p(k) + q(k) = k - 2` for `k ≥ 2`,
    /// with `q(1)` pinned to 0 (the duality pairing never sees codimension
    /// one, so no negative value is ever used there).
    pub fn complement(&self, n: usize) -> Result<Perversity> {
        if n < 1 {
            return Err(Error::PerversityEmptyRange);
        }
        self.ensure_covers(n)?;
        let values = (1..=n)
            .map(|k| {
                if k == 1 {
                    0
                } else {
                    k as i64 - 2 - self.value(k)
                }
            })
            .collect();
        Ok(Perversity { values })
    }

    /// Parse either a comma list "0,0,1,2" (k = 1..n) or a family name.
    /// Named families need `n` to materialize.
    pub fn parse(spec: &str, n: usize) -> Result<Perversity> {
        if let Some(family) = PerversityFamily::parse(spec.trim()) {
            return Perversity::named(family, n.max(1));
        }
        let values: std::result::Result<Vec<i64>, _> =
            spec.split(',').map(|t| t.trim().parse::<i64>()).collect();
        match values {
            Ok(v) if !v.is_empty() => Perversity::from_values(v),
            _ => Err(Error::Parse(format!("cannot parse perversity {spec:?}"))),
        }
    }
}

impl fmt::Debug for Perversity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perversity({self})")
    }
}

impl fmt::Display for Perversity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_values() {
        assert_eq!(
            Perversity::named(PerversityFamily::GmSuper, 3)
                .unwrap()
                .values(),
            &[0, 1, 2]
        );
        assert_eq!(
            Perversity::named(PerversityFamily::Zero, 4)
                .unwrap()
                .values(),
            &[0, 0, 0, 0]
        );
        assert_eq!(
            Perversity::named(PerversityFamily::Top, 4)
                .unwrap()
                .values(),
            &[0, 0, 1, 2]
        );
        assert_eq!(
            Perversity::named(PerversityFamily::LowerMiddle, 6)
                .unwrap()
                .values(),
            &[0, 0, 0, 1, 1, 2]
        );
        assert_eq!(
            Perversity::named(PerversityFamily::UpperMiddle, 6)
                .unwrap()
                .values(),
            &[0, 0, 1, 1, 2, 2]
        );
        assert!(Perversity::named(PerversityFamily::Zero, 0).is_err());
    }

    #[test]
    fn classification() {
        let k = |v: &[i64]| Perversity::from_values(v.to_vec()).unwrap().kind();
        assert_eq!(k(&[0, 0, 1, 1]), PerversityKind::Traditional);
        assert_eq!(k(&[0, 1, 2]), PerversityKind::Super);
        assert_eq!(k(&[0, 0, 5, 0]), PerversityKind::Loose);
        // growth holds but starts negative: loose
        assert_eq!(k(&[-1, 0, 0]), PerversityKind::Loose);
        // growth violated with p(2) > 0: loose, not super
        assert_eq!(k(&[0, 3, 0]), PerversityKind::Loose);
    }

    #[test]
    fn named_classification_through_ten() {
        for n in 2..=10 {
            for family in PerversityFamily::ALL {
                let p = Perversity::named(family, n).unwrap();
                let expect = if family == PerversityFamily::GmSuper {
                    PerversityKind::Super
                } else {
                    PerversityKind::Traditional
                };
                assert_eq!(p.kind(), expect, "{} at n={n}", family.name());
            }
        }
    }

    #[test]
    fn complement_pairs() {
        let zero = Perversity::named(PerversityFamily::Zero, 3).unwrap();
        assert_eq!(zero.complement(3).unwrap().values(), &[0, 0, 1]);

        let lm = Perversity::named(PerversityFamily::LowerMiddle, 4).unwrap();
        let um = Perversity::named(PerversityFamily::UpperMiddle, 4).unwrap();
        assert_eq!(lm.complement(4).unwrap(), um);
    }

    #[test]
    fn complement_involution_above_codim_one() {
        for family in PerversityFamily::ALL {
            for n in 2..=8 {
                let p = Perversity::named(family, n).unwrap();
                let pp = p.complement(n).unwrap().complement(n).unwrap();
                assert_eq!(&p.values()[1..], &pp.values()[1..], "{}", family.name());
            }
        }
    }

    #[test]
    fn parse_forms() {
        let p = Perversity::parse("0,0,1,2", 4).unwrap();
        assert_eq!(p.values(), &[0, 0, 1, 2]);
        let q = Perversity::parse("gm-super", 3).unwrap();
        assert_eq!(q.values(), &[0, 1, 2]);
        assert!(Perversity::parse("bogus", 3).is_err());
    }
}
