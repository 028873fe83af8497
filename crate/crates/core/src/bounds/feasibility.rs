//! Which plane orders admit a legitimate coloring with a given number of
//! colors, according to the two available routes:
//!
//! * small orders: run entropy compression on the uncolored plane directly.
//!   Each point lies in the symmetric difference of `(n + 1)·n²` line pairs,
//!   so the route works when the color requirement for `a·b = (n + 1)·n²`
//!   is at most `c`.
//! * large orders: a random partial coloring with `d = c` colors followed by
//!   entropy compression, needing `P_a + P_b < 1` and a color requirement
//!   for `a·b` of at most `c`.

use serde::Serialize;

use super::{ec_requirement_for_product, k_factor, p_a_bound_with_k, p_b_bound_with_k, BoundsError, LogReal, Order};
use crate::config::SearchConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Ec,
    Lll,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub a: u64,
    pub b: u64,
    pub m_bar: u32,
    pub d: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibilityVerdict {
    pub ok: bool,
    pub feasible_ec: bool,
    pub feasible_lll: bool,
    /// Witness of the large-order route when it succeeds, else of the small-order one.
    pub route: Option<Route>,
    pub witness: Option<Witness>,
    pub ec_requirement: Option<f64>,
    /// `log10(P_a + P_b)` at the witness, or the smallest value seen when infeasible.
    pub log10_pa_plus_pb: Option<f64>,
}

/// Precomputed color requirements for every `a·b` in the search box.
#[derive(Debug, Clone)]
pub struct FeasibilityChecker {
    cfg: SearchConfig,
    ec_table: Vec<(f64, u32)>,
}

impl FeasibilityChecker {
    pub fn new(cfg: SearchConfig) -> Self {
        let max_ab = cfg.a_max as usize * cfg.b_max as usize;
        let ec_table = (0..=max_ab)
            .map(|ab| if ab == 0 { (f64::INFINITY, 0) } else { ec_requirement_for_product(ab as f64, cfg.m_max) })
            .collect();
        FeasibilityChecker { cfg, ec_table }
    }

    pub fn config(&self) -> &SearchConfig {
        &self.cfg
    }

    fn ec(&self, a: u32, b: u32) -> (f64, u32) {
        self.ec_table[a as usize * b as usize]
    }

    /// Small-order route. Non-integer `n` is rounded down to a plane order.
    pub fn small_order(&self, n: Order, c: u32) -> Option<(Witness, f64)> {
        let value = n.value();
        if !(value.is_finite() && value < 4.0e9) {
            return None;
        }
        let order = value.floor() as u64;
        if order < 2 {
            return None;
        }
        let (a, b) = (order + 1, order * order);
        let (req, m_bar) = ec_requirement_for_product(a as f64 * b as f64, self.cfg.m_max);
        (req <= f64::from(c)).then_some((Witness { a, b, m_bar, d: c }, req))
    }

    /// Large-order route: the first `(a, b)` in `(a + b, a, b)` order meeting both constraints.
    pub fn large_order(&self, n: Order, c: u32) -> (Option<(Witness, f64, f64)>, Option<f64>) {
        let Ok(k) = k_factor(n, c) else {
            return (None, None);
        };
        let pa: Vec<Option<LogReal>> =
            (0..=self.cfg.a_max).map(|a| if a == 0 { None } else { p_a_bound_with_k(n, k, a).ok() }).collect();
        let pb: Vec<Option<LogReal>> =
            (0..=self.cfg.b_max).map(|b| if b == 0 { None } else { p_b_bound_with_k(n, k, b).ok() }).collect();
        let mut best: Option<f64> = None;
        for s in 2..=self.cfg.a_max + self.cfg.b_max {
            for a in 1..=self.cfg.a_max.min(s - 1) {
                let b = s - a;
                if b > self.cfg.b_max {
                    continue;
                }
                let (req, m_bar) = self.ec(a, b);
                if req > f64::from(c) {
                    continue;
                }
                let (Some(x), Some(y)) = (pa[a as usize], pb[b as usize]) else {
                    continue;
                };
                let total = x.add(y);
                let l10 = total.log10mag();
                best = Some(best.map_or(l10, |v: f64| v.min(l10)));
                if total.cmp_f64(1.0).is_lt() {
                    let w = Witness { a: u64::from(a), b: u64::from(b), m_bar, d: c };
                    return (Some((w, req, l10)), Some(l10));
                }
            }
        }
        (None, best)
    }

    pub fn check(&self, n: Order, c: u32) -> FeasibilityVerdict {
        let small = self.small_order(n, c);
        let (large, best) = self.large_order(n, c);
        let feasible_ec = small.is_some();
        let feasible_lll = large.is_some();
        let (route, witness, ec_requirement) = match (large, small) {
            (Some((w, req, _)), _) => (Some(Route::Lll), Some(w), Some(req)),
            (None, Some((w, req))) => (Some(Route::Ec), Some(w), Some(req)),
            (None, None) => (None, None, None),
        };
        FeasibilityVerdict {
            ok: feasible_ec || feasible_lll,
            feasible_ec,
            feasible_lll,
            route,
            witness,
            ec_requirement,
            log10_pa_plus_pb: best,
        }
    }
}

/// Feasibility of `c` colors at order `n` with the default search caps.
pub fn feasible(n: Order, c: u32) -> FeasibilityVerdict {
    FeasibilityChecker::new(SearchConfig::default()).check(n, c)
}

/// Smallest decimal exponent (to the configured resolution) from which the
/// large-order route succeeds for `c` colors, searched on `[lo_exp, hi_exp]`.
///
/// The bracket is first scanned on the configured step; the pattern must be
/// infeasible up to one point and feasible after it.
pub fn min_feasible_exponent(
    checker: &FeasibilityChecker,
    c: u32,
    lo_exp: f64,
    hi_exp: f64,
) -> Result<f64, BoundsError> {
    if !(lo_exp < hi_exp && hi_exp <= 300.0) {
        return Err(BoundsError::Domain(format!("need lo < hi ≤ 300, got [{lo_exp}, {hi_exp}]")));
    }
    let cfg = checker.config();
    let flag = |e: f64| checker.large_order(Order::from_exp10(e), c).0.is_some();
    let steps = ((hi_exp - lo_exp) / cfg.exp_step).ceil() as usize;
    let scan: Vec<(f64, bool)> =
        (0..=steps).map(|i| (lo_exp + i as f64 * cfg.exp_step).min(hi_exp)).map(|e| (e, flag(e))).collect();
    let first = scan.iter().position(|&(_, ok)| ok);
    let monotone = first.is_some_and(|i| i > 0 && scan[i..].iter().all(|&(_, ok)| ok));
    if !monotone {
        return Err(BoundsError::NoTransition { scan });
    }
    let i = first.expect("checked above");
    let (mut lo, mut hi) = (scan[i - 1].0, scan[i].0);
    while hi - lo > cfg.exp_resolution {
        let mid = 0.5 * (lo + hi);
        if flag(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// One cell of the color/order region map.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionPoint {
    pub c: u32,
    pub n_exponent: f64,
    pub feasible: bool,
    pub feasible_ec: bool,
    pub feasible_lll: bool,
    pub a: Option<u64>,
    pub b: Option<u64>,
    pub m_bar: Option<u32>,
    pub d: Option<u32>,
    pub ec_requirement: Option<f64>,
    #[serde(rename = "log10_Pa_plus_Pb")]
    pub log10_pa_plus_pb: Option<f64>,
}

/// Evaluates every `(c, exponent)` cell, rows ordered by `c` then exponent.
pub fn region_scan(checker: &FeasibilityChecker, c_min: u32, c_max: u32, exp_grid: &[f64]) -> Vec<RegionPoint> {
    let mut rows = Vec::with_capacity((c_max.saturating_sub(c_min) as usize + 1) * exp_grid.len());
    for c in c_min..=c_max {
        for &e in exp_grid {
            let v = checker.check(Order::from_exp10(e), c);
            rows.push(RegionPoint {
                c,
                n_exponent: e,
                feasible: v.ok,
                feasible_ec: v.feasible_ec,
                feasible_lll: v.feasible_lll,
                a: v.witness.map(|w| w.a),
                b: v.witness.map(|w| w.b),
                m_bar: v.witness.map(|w| w.m_bar),
                d: v.witness.map(|w| w.d),
                ec_requirement: v.ec_requirement,
                log10_pa_plus_pb: v.log10_pa_plus_pb,
            });
        }
    }
    rows
}

pub fn region_csv(rows: &[RegionPoint]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("in-memory CSV write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8 CSV")
}
