//! Width bounds, evaluated exactly.
//!
//! The polylogarithmic bounds have the form `c (L² + a L + b)` with
//! `L = log₂ q` for a rational `q >= 1`. Deciding `w <= c (L² + a L + b)`
//! exactly only needs rational brackets around `L`: `L >= p/d` holds iff
//! `q^d >= 2^p`, which is an integer comparison. Brackets are refined until
//! they decide the comparison.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::graph::Rational;

fn big(r: Rational) -> BigRational {
    BigRational::new((*r.numer()).into(), (*r.denom()).into())
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// `c (L² + a L + b)` with `L = log₂ q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogBound {
    c: Rational,
    a: u64,
    b: u64,
    q: Rational,
}

impl LogBound {
    /// `q` must be at least 1, so that the bound grows with `q`.
    pub fn new(c: Rational, a: u64, b: u64, q: Rational) -> Self {
        assert!(q >= Rational::from_integer(1), "log argument below 1");
        LogBound { c, a, b, q }
    }

    fn at(&self, l: &BigRational) -> BigRational {
        big(self.c) * (l * l + int(self.a as i64) * l + int(self.b as i64))
    }

    /// Floating-point value, for display only.
    pub fn approx(&self) -> f64 {
        let l = (*self.q.numer() as f64 / *self.q.denom() as f64).log2();
        let c = *self.c.numer() as f64 / *self.c.denom() as f64;
        c * (l * l + self.a as f64 * l + self.b as f64)
    }

    /// Exact test of `w <= self`.
    pub fn admits(&self, w: usize) -> bool {
        let w = int(w as i64);
        let num = BigUint::from(*self.q.numer());
        let den = BigUint::from(*self.q.denom());
        let mut d: u32 = 1;
        loop {
            let (nd, dd) = (num.pow(d), den.pow(d));
            // largest p with nd >= 2^p dd
            let mut p = nd.bits().saturating_sub(dd.bits());
            while p > 0 && nd < (&dd << p) {
                p -= 1;
            }
            while nd >= (&dd << (p + 1)) {
                p += 1;
            }
            let lo = BigRational::new(p.into(), d.into());
            if nd == (&dd << p) {
                return w <= self.at(&lo);
            }
            if w <= self.at(&lo) {
                return true;
            }
            let hi = BigRational::new((p + 1).into(), d.into());
            if w > self.at(&hi) {
                return false;
            }
            if d >= 1 << 12 {
                // log₂ q is transcendental here, so ties cannot occur; this
                // only guards against pathological bracket growth
                return w.to_f64().unwrap_or(f64::INFINITY) <= self.approx();
            }
            d *= 2;
        }
    }
}

fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Bounds for one instance, plus the achieved width.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub max_degree: usize,
    /// Tree runs: diameter in edges.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diam: Option<usize>,
    /// Decomposition runs: relative heaviest-path weight and maximum bag size.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    /// `(k-1)(2 + 16 n/diam) Δ`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_tree: Option<f64>,
    /// `(k-1)(log²(n/diam) + 9 log(n/diam) + 18) Δ / 2`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_tree_improved: Option<f64>,
    /// `(k-1) t Δ (log²(1/r) + 11 log(1/r) + 24) / 2`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_td: Option<f64>,
    pub achieved: usize,
    /// `achieved / (k-1)`; every k-section of a connected graph with at
    /// least k vertices has width at least `k-1`.
    pub approx_ratio: f64,
    /// True iff `achieved` is within every applicable bound, decided exactly.
    pub within_bounds: bool,
}

/// `(k-1)(2 + 16 n/diam) Δ`, or `None` for a tree without edges.
pub fn tree_bound(n: usize, k: usize, diam: usize, delta: usize) -> Option<Rational> {
    if diam == 0 {
        return None;
    }
    let per_cut = Rational::from_integer(2) + Rational::new(16 * n as u64, diam as u64);
    Some(per_cut * Rational::from_integer(((k - 1) * delta) as u64))
}

/// `(k-1)(log²(n/diam) + 9 log(n/diam) + 18) Δ / 2`.
pub fn tree_bound_improved(n: usize, k: usize, diam: usize, delta: usize) -> Option<LogBound> {
    if diam == 0 {
        return None;
    }
    let c = Rational::new(((k - 1) * delta) as u64, 2);
    Some(LogBound::new(c, 9, 18, Rational::new(n as u64, diam as u64)))
}

/// `(k-1) t Δ (log²(1/r) + 11 log(1/r) + 24) / 2`.
pub fn td_bound(k: usize, t: usize, delta: usize, r: Rational) -> LogBound {
    let c = Rational::new(((k - 1) * t * delta) as u64, 2);
    LogBound::new(c, 11, 24, r.recip())
}

/// `(2 + 16/diam*) Δ`: width bound of one diameter-preserving cut.
pub fn diameter_cut_bound(rel_diam: Rational, delta: usize) -> Rational {
    (Rational::from_integer(2) + Rational::from_integer(16) / rel_diam) * Rational::from_integer(delta as u64)
}

/// `(t/2)(log²(1/r) + 11 log(1/r) + 24) Δ`: width bound of one cut that keeps
/// the heaviest-path ratio.
pub fn r_cut_bound(t: usize, delta: usize, r: Rational) -> LogBound {
    td_bound(2, t, delta, r)
}

/// `8 Δ / diam*`: existence bound for a single cut of any size in a forest.
pub fn forest_cut_existence_bound(rel_diam: Rational, delta: usize) -> Rational {
    Rational::from_integer(8 * delta as u64) / rel_diam
}

impl BoundReport {
    pub fn for_tree(n: usize, k: usize, diam: usize, delta: usize, achieved: usize) -> Self {
        let exact = tree_bound(n, k, diam, delta);
        let log = tree_bound_improved(n, k, diam, delta);
        let within = exact.is_none_or(|b| Rational::from_integer(achieved as u64) <= b)
            && log.as_ref().is_none_or(|b| b.admits(achieved));
        BoundReport {
            n,
            k,
            max_degree: delta,
            diam: Some(diam),
            r: None,
            t: None,
            bound_tree: exact.map(to_f64),
            bound_tree_improved: log.map(|b| b.approx()),
            bound_td: None,
            achieved,
            approx_ratio: ratio(achieved, k),
            within_bounds: within,
        }
    }

    pub fn for_td(n: usize, k: usize, t: usize, delta: usize, r: Rational, achieved: usize) -> Self {
        let bound = td_bound(k.max(1), t, delta, r);
        BoundReport {
            n,
            k,
            max_degree: delta,
            diam: None,
            r: Some(r.to_string()),
            t: Some(t),
            bound_tree: None,
            bound_tree_improved: None,
            bound_td: Some(bound.approx()),
            achieved,
            approx_ratio: ratio(achieved, k),
            within_bounds: bound.admits(achieved),
        }
    }

    /// The smallest of the bounds that apply.
    pub fn binding_bound(&self) -> Option<f64> {
        [self.bound_tree, self.bound_tree_improved, self.bound_td].into_iter().flatten().reduce(f64::min)
    }
}

fn ratio(achieved: usize, k: usize) -> f64 {
    if k <= 1 {
        0.0
    } else {
        achieved as f64 / (k - 1) as f64
    }
}

/// Exact `log₂` bracket helper used in tests: true iff `q >= 2^e`.
pub fn at_least_power_of_two(q: Rational, e: u32) -> bool {
    BigUint::from(*q.numer()) >= (BigUint::from(*q.denom()) << e)
}
