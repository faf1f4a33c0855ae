//! Invariant suite behind `tetrageo verify`. Every check is deterministic,
//! so two runs with the same configuration serialize identically.

use crate::combinatorics::GeodesicType;
use crate::counting::{count_exact, psi_brute_table, psi_totient_table, totient_sum};
use crate::existence::{
    hyperbolic_clearance_bound, hyperbolic_length_lower_bound, necessary_alpha_bound, threshold_beta,
};
use crate::geodesics::{euclid_geodesic, midpoint_geodesic, symmetry_indices, GeodesicPath};
use crate::space::SpaceKind;
use crate::tetra::TetrahedronSpec;
use crate::unfolding::{development_for_type, gluing_residuals, symmetry_check};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyConfig {
    pub euclid_max_sum: u32,
    pub hyperbolic_max_sum: u32,
    pub hyperbolic_alphas: Vec<f64>,
    pub spherical_grid: usize,
    pub threshold_max_sum: u32,
    pub psi_max: u64,
    pub count_budget: f64,
    pub count_alpha: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            euclid_max_sum: 30,
            hyperbolic_max_sum: 12,
            hyperbolic_alphas: vec![0.05, 0.35, 0.65, 0.95],
            spherical_grid: 20,
            threshold_max_sum: 5,
            psi_max: 2000,
            count_budget: 30.0,
            count_alpha: 0.5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
    /// Largest deviation observed, in the check's own units.
    pub worst: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub checks: Vec<Check>,
    pub passed: bool,
}

struct Acc {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
    worst: f64,
}

impl Acc {
    fn new(name: &'static str) -> Acc {
        Acc { name, cases: 0, failures: Vec::new(), worst: 0.0 }
    }

    fn case(&mut self, ok: bool, dev: f64, what: impl FnOnce() -> String) {
        self.cases += 1;
        if dev.is_finite() {
            self.worst = self.worst.max(dev);
        }
        if !ok {
            self.failures.push(what());
        }
    }

    fn done(self) -> Check {
        let passed = self.failures.is_empty() && self.cases > 0;
        Check { name: self.name.into(), cases: self.cases, failures: self.failures, worst: self.worst, passed }
    }
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1).max(1) as f64).collect()
}

fn midpoint_deviation(p: &GeodesicPath) -> f64 {
    symmetry_indices(p.crossings.len())
        .iter()
        .map(|&i| (p.crossings[i].fraction - 0.5).abs())
        .fold(0.0, f64::max)
}

fn euclid(cfg: &VerifyConfig) -> [Check; 2] {
    let types = GeodesicType::up_to(cfg.euclid_max_sum);
    let res: Vec<_> = types.par_iter().map(|&t| (t, euclid_geodesic(t, 0.5))).collect();
    let (mut len, mut clr) = (Acc::new("euclidean_length"), Acc::new("euclidean_clearance"));
    for (t, r) in res {
        match r {
            Ok(p) => {
                let exact = 2.0 * (t.norm() as f64).sqrt();
                let d = (p.length - exact).abs();
                let m = midpoint_deviation(&p);
                len.case(d <= 1e-10 && p.closed && p.simple && m <= 1e-10, d, || {
                    format!("{t}: length error {d:e}, closed {}, simple {}, midpoint error {m:e}", p.closed, p.simple)
                });
                let bound = 3f64.sqrt() / (4.0 * (t.norm() as f64).sqrt());
                clr.case(p.clearance >= bound - 1e-12, (bound - p.clearance).max(0.0), || {
                    format!("{t}: clearance {} below {bound}", p.clearance)
                });
            }
            Err(e) => {
                len.case(false, f64::NAN, || format!("{t}: {e}"));
                clr.case(false, f64::NAN, || format!("{t}: {e}"));
            }
        }
    }
    [len.done(), clr.done()]
}

fn spherical(cfg: &VerifyConfig) -> Check {
    let mut acc = Acc::new("spherical_base_cases");
    let (t01, t11) = (GeodesicType::new(0, 1).unwrap(), GeodesicType::new(1, 1).unwrap());
    let alphas = grid(PI / 3.0 + 1e-3, 2.0 * PI / 3.0 - 1e-3, cfg.spherical_grid);
    let mut cases = Vec::new();
    for &a in &alphas {
        cases.push((t01, a, true));
        if (a - PI / 2.0).abs() > 1e-3 {
            cases.push((t11, a, a < PI / 2.0));
        }
    }
    let res: Vec<_> = cases
        .par_iter()
        .map(|&(t, a, want)| {
            let spec = TetrahedronSpec::new(SpaceKind::Spherical, a).expect("α in range");
            (t, a, want, midpoint_geodesic(&spec, t))
        })
        .collect();
    for (t, a, want, r) in res {
        let got = r.is_ok();
        let slack = r.as_ref().map(|p| p.length - (2.0 * PI - 1e-6)).unwrap_or(0.0).max(0.0);
        let mdev = r.as_ref().map(midpoint_deviation).unwrap_or(0.0);
        acc.case(got == want && slack == 0.0 && mdev <= 1e-8, mdev, || {
            format!("{t} at α = {a}: exists {got}, expected {want}")
        });
    }
    acc.done()
}

fn hyperbolic(cfg: &VerifyConfig) -> [Check; 2] {
    let types = GeodesicType::up_to(cfg.hyperbolic_max_sum);
    let cases: Vec<(GeodesicType, f64)> = cfg.hyperbolic_alphas.iter().flat_map(|&a| types.iter().map(move |&t| (t, a))).collect();
    let res: Vec<_> = cases
        .par_iter()
        .map(|&(t, a)| {
            let spec = TetrahedronSpec::new(SpaceKind::Hyperbolic, a).expect("α in range");
            let dev = development_for_type(&spec, t).ok().map(|d| {
                let (g, i) = gluing_residuals(&d, &spec);
                (symmetry_check(&d), g.max(i), d.faithful())
            });
            (t, a, midpoint_geodesic(&spec, t), dev)
        })
        .collect();
    let (mut geo, mut dev) = (Acc::new("hyperbolic_midpoint_geodesics"), Acc::new("developments"));
    for (t, a, r, d) in res {
        match r {
            Ok(p) => {
                let m = midpoint_deviation(&p);
                let cb = hyperbolic_clearance_bound(a);
                let lb = hyperbolic_length_lower_bound(a, t);
                let ok = p.closed && p.simple && m <= 1e-8 && p.clearance > cb && p.length > lb;
                geo.case(ok, m, || {
                    format!("{t} at α = {a}: midpoint error {m:e}, clearance {} vs {cb}, length {} vs {lb}", p.clearance, p.length)
                });
            }
            Err(e) => geo.case(false, f64::NAN, || format!("{t} at α = {a}: {e}")),
        }
        match d {
            // gluing is only meaningful while the Klein chart is faithful
            Some((sym, resid, faithful)) => {
                let ok = !faithful || (sym && resid < 1e-8);
                dev.case(ok, if faithful { resid } else { 0.0 }, || {
                    format!("{t} at α = {a}: symmetric {sym}, gluing residual {resid:e}")
                })
            }
            None => dev.case(false, f64::NAN, || format!("{t} at α = {a}: development failed")),
        }
    }
    [geo.done(), dev.done()]
}

fn thresholds(cfg: &VerifyConfig) -> Check {
    let mut acc = Acc::new("spherical_thresholds");
    let types: Vec<GeodesicType> = GeodesicType::up_to(cfg.threshold_max_sum).into_iter().filter(|t| t.p + t.q >= 2).collect();
    let res: Vec<_> = types.par_iter().map(|&t| (t, threshold_beta(t, 1e-6))).collect();
    for (t, r) in res {
        match r {
            Ok(b) => {
                let upper = necessary_alpha_bound(t).unwrap_or(2.0 * PI / 3.0);
                let excess = (b.beta - upper).max(0.0);
                let ok = b.beta > PI / 3.0 && excess <= 1e-6;
                let off = if t == GeodesicType::new(1, 1).unwrap() { (b.beta - PI / 2.0).abs() } else { 0.0 };
                acc.case(ok && off <= 1e-5, excess.max(off), || format!("{t}: β = {} against upper bound {upper}", b.beta));
            }
            Err(e) => acc.case(false, f64::NAN, || format!("{t}: {e}")),
        }
    }
    acc.done()
}

fn counting(cfg: &VerifyConfig) -> [Check; 2] {
    let mut psi = Acc::new("totient_identities");
    let (brute, tot) = (psi_brute_table(cfg.psi_max), psi_totient_table(cfg.psi_max));
    for x in 1..=cfg.psi_max {
        let (a, b) = (brute[x as usize], tot[x as usize]);
        psi.case(a == b, (a as f64 - b as f64).abs(), || format!("ψ({x}): {a} by enumeration, {b} by totients"));
    }
    let dens = totient_sum(cfg.psi_max) as f64 / (cfg.psi_max as f64).powi(2);
    let rel = (dens / (3.0 / (PI * PI)) - 1.0).abs();
    psi.case(rel < 0.01, rel, || format!("totient density {dens}"));
    let mut cnt = Acc::new("counting");
    match count_exact(cfg.count_budget, cfg.count_alpha) {
        Ok(r) => cnt.case(r.exact % 3 == 0 && r.exact <= r.bound, 0.0, || format!("exact {} bound {}", r.exact, r.bound)),
        Err(e) => cnt.case(false, f64::NAN, || e.to_string()),
    }
    [psi.done(), cnt.done()]
}

pub fn verify(cfg: &VerifyConfig) -> VerifyReport {
    let mut checks = Vec::new();
    checks.extend(euclid(cfg));
    checks.push(spherical(cfg));
    checks.extend(hyperbolic(cfg));
    checks.push(thresholds(cfg));
    checks.extend(counting(cfg));
    let passed = checks.iter().all(|c| c.passed);
    VerifyReport { config: cfg.clone(), checks, passed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::to_json;

    #[test]
    fn small_suite_passes_and_repeats() {
        let cfg = VerifyConfig {
            euclid_max_sum: 8,
            hyperbolic_max_sum: 5,
            hyperbolic_alphas: vec![0.3, 0.9],
            spherical_grid: 8,
            threshold_max_sum: 3,
            psi_max: 200,
            count_budget: 15.0,
            count_alpha: 0.5,
        };
        let r = verify(&cfg);
        for c in &r.checks {
            assert!(c.passed, "{}: {:?}", c.name, c.failures);
        }
        assert_eq!(to_json(&r), to_json(&verify(&cfg)));
    }
}
