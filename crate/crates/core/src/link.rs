use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest coordinate magnitude accepted by [`TorusLink::new`].
///
/// Every relation move and the lift map at most triple a coordinate, so all
/// intermediate values derived from a constructed link fit in an `i64`.
pub const MAX_COORDINATE: i64 = 1 << 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AmbientSpace {
    #[serde(rename = "s3")]
    Sphere,
    #[serde(rename = "rp3")]
    Projective,
}

impl AmbientSpace {
    pub const ALL: [AmbientSpace; 2] = [AmbientSpace::Sphere, AmbientSpace::Projective];

    pub fn tag(self) -> &'static str {
        match self {
            AmbientSpace::Sphere => "s3",
            AmbientSpace::Projective => "rp3",
        }
    }
}

impl fmt::Display for AmbientSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AmbientSpace::Sphere => "S3",
            AmbientSpace::Projective => "RP3",
        })
    }
}

impl std::str::FromStr for AmbientSpace {
    type Err = LinkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "s3" | "sphere" => Ok(AmbientSpace::Sphere),
            "rp3" | "projective" => Ok(AmbientSpace::Projective),
            _ => Err(LinkError::UnknownSpace(s.to_string())),
        }
    }
}

/// A homology class `lambda * λ + mu * μ` on the Heegaard torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Slope {
    pub lambda: i64,
    pub mu: i64,
}

impl Slope {
    /// `(0, 0)` marks the empty family.
    pub fn is_empty(&self) -> bool {
        self.lambda == 0 && self.mu == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("INVALID_N: core count must be 0, 1 or 2, got {0}")]
    InvalidN(i64),
    #[error("COORDINATE_RANGE: |p|, |q| must not exceed 2^60, got ({0}, {1})")]
    CoordinateRange(i64, i64),
    #[error("unknown ambient space {0:?} (expected s3 or rp3)")]
    UnknownSpace(String),
    #[error("NOT_APPLICABLE: {relation} {direction} does not apply to {link}")]
    NotApplicable {
        relation: crate::Relation,
        direction: crate::Direction,
        link: TorusLink,
    },
    #[error("SPACE_MISMATCH: cannot compare a link in {0} with a link in {1}")]
    SpaceMismatch(AmbientSpace, AmbientSpace),
    #[error("WRONG_SPACE: lift expects a link in RP3, got {0}")]
    WrongSpace(TorusLink),
    #[error("arithmetic overflow while transforming {0}")]
    Overflow(TorusLink),
}

impl LinkError {
    pub fn code(&self) -> &'static str {
        match self {
            LinkError::InvalidN(_) => "INVALID_N",
            LinkError::CoordinateRange(..) => "COORDINATE_RANGE",
            LinkError::UnknownSpace(_) => "UNKNOWN_SPACE",
            LinkError::NotApplicable { .. } => "NOT_APPLICABLE",
            LinkError::SpaceMismatch(..) => "SPACE_MISMATCH",
            LinkError::WrongSpace(_) => "WRONG_SPACE",
            LinkError::Overflow(_) => "OVERFLOW",
        }
    }
}

/// The link `T_*(p, q; n)`: `gcd(p, q)` parallel copies of the primitive
/// curve `p'λ + q'μ` on the Heegaard torus, plus the cores of the first `n`
/// handlebodies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TorusLink {
    pub space: AmbientSpace,
    pub p: i64,
    pub q: i64,
    pub n: u8,
}

impl TorusLink {
    pub fn new(space: AmbientSpace, p: i64, q: i64, n: i64) -> Result<Self, LinkError> {
        if !(0..=2).contains(&n) {
            return Err(LinkError::InvalidN(n));
        }
        if p.unsigned_abs() > MAX_COORDINATE as u64 || q.unsigned_abs() > MAX_COORDINATE as u64 {
            return Err(LinkError::CoordinateRange(p, q));
        }
        Ok(TorusLink {
            space,
            p,
            q,
            n: n as u8,
        })
    }

    pub fn sphere(p: i64, q: i64, n: i64) -> Result<Self, LinkError> {
        Self::new(AmbientSpace::Sphere, p, q, n)
    }

    pub fn projective(p: i64, q: i64, n: i64) -> Result<Self, LinkError> {
        Self::new(AmbientSpace::Projective, p, q, n)
    }

    /// Same space and core count, new torus coordinates. Range is not
    /// re-checked: callers only produce values reachable by the relations.
    pub(crate) fn with(self, p: i64, q: i64, n: u8) -> Self {
        TorusLink { p, q, n, ..self }
    }

    /// `gcd(|p|, |q|)`, the number of parallel torus components.
    pub fn multiplicity(&self) -> u64 {
        gcd(self.p.unsigned_abs(), self.q.unsigned_abs())
    }

    /// The primitive slope `(p', q')`, or `(0, 0)` for the empty family.
    pub fn slope(&self) -> Slope {
        let d = self.multiplicity() as i64;
        if d == 0 {
            Slope { lambda: 0, mu: 0 }
        } else {
            Slope {
                lambda: self.p / d,
                mu: self.q / d,
            }
        }
    }

    pub fn component_count(&self) -> u64 {
        self.multiplicity() + u64::from(self.n)
    }

    /// Ordering key used for reports and normal forms: `(p, q, n)`.
    pub fn key(&self) -> (i64, i64, u8) {
        (self.p, self.q, self.n)
    }
}

impl fmt::Display for TorusLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T_{}({}, {}; {})", self.space, self.p, self.q, self.n)
    }
}

impl<'de> Deserialize<'de> for TorusLink {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            space: AmbientSpace,
            p: i64,
            q: i64,
            n: i64,
        }
        let raw = Raw::deserialize(deserializer)?;
        TorusLink::new(raw.space, raw.p, raw.q, raw.n).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
