use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Curvature selector. Every kernel operation dispatches on this.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    Euclidean,
    Spherical,
    Hyperbolic,
}

impl SpaceKind {
    pub fn curvature(self) -> i8 {
        match self {
            SpaceKind::Euclidean => 0,
            SpaceKind::Spherical => 1,
            SpaceKind::Hyperbolic => -1,
        }
    }

    pub fn from_curvature(k: i8) -> Option<SpaceKind> {
        match k {
            0 => Some(SpaceKind::Euclidean),
            1 => Some(SpaceKind::Spherical),
            -1 => Some(SpaceKind::Hyperbolic),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SpaceKind::Euclidean => "euclidean",
            SpaceKind::Spherical => "spherical",
            SpaceKind::Hyperbolic => "hyperbolic",
        }
    }

    /// sin_k: sin, identity or sinh.
    #[inline]
    pub(crate) fn sn(self, x: f64) -> f64 {
        match self {
            SpaceKind::Euclidean => x,
            SpaceKind::Spherical => x.sin(),
            SpaceKind::Hyperbolic => x.sinh(),
        }
    }

    /// cos_k: cos, 1 or cosh.
    #[inline]
    pub(crate) fn cs(self, x: f64) -> f64 {
        match self {
            SpaceKind::Euclidean => 1.0,
            SpaceKind::Spherical => x.cos(),
            SpaceKind::Hyperbolic => x.cosh(),
        }
    }

    #[inline]
    pub(crate) fn k(self) -> f64 {
        self.curvature() as f64
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpaceKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "euclidean" | "e" | "0" => Ok(SpaceKind::Euclidean),
            "spherical" | "s" | "1" | "+1" => Ok(SpaceKind::Spherical),
            "hyperbolic" | "h" | "-1" => Ok(SpaceKind::Hyperbolic),
            other => Err(format!("unknown space '{other}'")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curvature_round_trip() {
        for s in [SpaceKind::Euclidean, SpaceKind::Spherical, SpaceKind::Hyperbolic] {
            assert_eq!(SpaceKind::from_curvature(s.curvature()), Some(s));
            assert_eq!(s.name().parse::<SpaceKind>().unwrap(), s);
        }
        assert_eq!(SpaceKind::from_curvature(2), None);
    }
}
