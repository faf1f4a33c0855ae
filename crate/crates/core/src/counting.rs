//! Counting simple closed geodesics by length on regular hyperbolic
//! tetrahedra.

use crate::combinatorics::{gcd, GeodesicType};
use crate::existence::{hyperbolic_length_lower_bound, hyperbolic_length_rate};
use crate::geodesics::{midpoint_geodesic, GeodesicError};
use crate::space::SpaceKind;
use crate::tetra::TetrahedronSpec;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CountingError {
    #[error("planar angle {0} is outside (0, π/3)")]
    BadAlpha(f64),
    #[error("length budget {0} must be positive")]
    BadLength(f64),
    #[error("type {t}: {source}")]
    Construction { t: GeodesicType, source: GeodesicError },
}

/// Totients `φ(0..=n)` by sieve (`φ(0) = 0`).
pub fn totients(n: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for i in 2..=n {
        if phi[i] == i as u64 {
            for j in (i..=n).step_by(i) {
                phi[j] -= phi[j] / i as u64;
            }
        }
    }
    phi
}

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "φ is defined for n ≥ 1");
    let (mut m, mut out) = (n, n);
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

/// `Σ_{y ≤ x} φ(y)`.
pub fn totient_sum(x: u64) -> u64 {
    totients(x as usize).iter().skip(1).sum()
}

/// Coprime pairs `1 ≤ p < q` with `p + q ≤ x`, by enumeration.
pub fn psi_brute(x: u64) -> u64 {
    let mut c = 0;
    for q in 2..x {
        for p in 1..q.min(x - q + 1) {
            if gcd(p, q) == 1 {
                c += 1;
            }
        }
    }
    c
}

/// `psi_brute(x)` for every `x ≤ max` from one pass over the pairs.
pub fn psi_brute_table(max: u64) -> Vec<u64> {
    let mut by_sum = vec![0u64; max as usize + 1];
    for q in 2..max {
        for p in 1..q.min(max - q + 1) {
            if gcd(p, q) == 1 {
                by_sum[(p + q) as usize] += 1;
            }
        }
    }
    let mut acc = 0;
    by_sum
        .into_iter()
        .map(|c| {
            acc += c;
            acc
        })
        .collect()
}

/// `psi_totient(x)` for every `x ≤ max`.
pub fn psi_totient_table(max: u64) -> Vec<u64> {
    let phi = totients(max as usize);
    let mut acc = 0;
    (0..=max as usize)
        .map(|y| {
            if y >= 3 {
                acc += phi[y];
            }
            acc / 2
        })
        .collect()
}

/// The same count as `½ Σ φ(y)`: for `y ≥ 3` the pairs with `p + q = y`
/// are half of the residues prime to `y`; `y = 1, 2` contribute nothing.
pub fn psi_totient(x: u64) -> u64 {
    if x < 3 {
        return 0;
    }
    let phi = totients(x as usize);
    phi[3..].iter().sum::<u64>() / 2
}

pub fn psi(x: u64) -> u64 {
    let v = psi_totient(x);
    debug_assert_eq!(v, psi_brute(x));
    v
}

/// Constant of the quadratic growth `N(L) ~ c L²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticConstant {
    /// Form with the logarithm to the first power, as printed.
    pub printed: f64,
    /// `9 / (8π² ln²(2√3(1 − 3α/π) + 1))`, from `3ψ(L / (2 ln ...))`.
    pub derived: f64,
}

pub fn asymptotic_constant(alpha: f64) -> AsymptoticConstant {
    let r = hyperbolic_length_rate(alpha);
    let k = 9.0 / (8.0 * PI * PI);
    AsymptoticConstant { printed: k / r, derived: k / (r * r) }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TypeLength {
    #[serde(rename = "type")]
    pub t: GeodesicType,
    pub length: f64,
    pub clearance: f64,
    pub lower_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    #[serde(rename = "L")]
    pub budget: f64,
    pub alpha: f64,
    /// Geodesics of length at most `L`, three per type.
    pub exact: u64,
    /// Three per type admitted by the length lower bound.
    pub bound: u64,
    pub c_printed: f64,
    pub c_derived: f64,
    pub asymptotic_printed: f64,
    pub asymptotic_derived: f64,
    /// Every type admitted by the lower bound, sorted.
    pub table: Vec<TypeLength>,
}

impl CountReport {
    /// `p,q,length,clearance` rows for the admitted types.
    pub fn csv(&self) -> String {
        let mut s = String::from("p,q,length,clearance\n");
        for r in &self.table {
            s.push_str(&format!("{},{},{},{}\n", r.t.p, r.t.q, r.length, r.clearance));
        }
        s
    }
}

/// Types admitted by the length lower bound for budget `l`.
pub fn candidate_types(l: f64, alpha: f64) -> Vec<GeodesicType> {
    let max_sum = (l / (2.0 * hyperbolic_length_rate(alpha))).floor();
    if max_sum < 1.0 {
        return Vec::new();
    }
    GeodesicType::up_to(max_sum as u32)
        .into_iter()
        .filter(|&t| hyperbolic_length_lower_bound(alpha, t) <= l)
        .collect()
}

pub fn count_exact(l: f64, alpha: f64) -> Result<CountReport, CountingError> {
    if !(alpha > 0.0 && alpha < PI / 3.0) {
        return Err(CountingError::BadAlpha(alpha));
    }
    if !(l > 0.0) {
        return Err(CountingError::BadLength(l));
    }
    let spec = TetrahedronSpec::new(SpaceKind::Hyperbolic, alpha).map_err(|_| CountingError::BadAlpha(alpha))?;
    let types = candidate_types(l, alpha);
    let table: Vec<TypeLength> = types
        .par_iter()
        .map(|&t| {
            let path = midpoint_geodesic(&spec, t).map_err(|source| CountingError::Construction { t, source })?;
            Ok(TypeLength {
                t,
                length: path.length,
                clearance: path.clearance,
                lower_bound: hyperbolic_length_lower_bound(alpha, t),
            })
        })
        .collect::<Result<_, CountingError>>()?;
    let exact = 3 * table.iter().filter(|r| r.length <= l).count() as u64;
    let c = asymptotic_constant(alpha);
    Ok(CountReport {
        budget: l,
        alpha,
        exact,
        bound: 3 * table.len() as u64,
        c_printed: c.printed,
        c_derived: c.derived,
        asymptotic_printed: c.printed * l * l,
        asymptotic_derived: c.derived * l * l,
        table,
    })
}
