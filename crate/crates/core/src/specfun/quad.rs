//! Adaptive Gauss-Kronrod quadrature on finite and semi-infinite intervals.
//!
//! Intervals are refined globally: the subinterval with the largest error estimate
//! is bisected until the summed estimate meets `max(abs_tol, rel_tol * |value|)`.
//! Infinite endpoints are mapped onto `(0, 1]` with `t = a + (1 - u) / u`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{domain, Result};

/// Hard cap on the number of live subintervals for a single integral.
const MAX_INTERVALS: usize = 4000;

/// Number of equal pieces the (possibly mapped) interval is cut into before refining.
const INITIAL_PIECES: usize = 4;

// 15-point Kronrod abscissae on [-1, 1] (positive half; XGK[7] is the centre).
// The odd-indexed entries are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum bisection depth of any subinterval.
    pub max_refinements: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_refinements: 60,
        }
    }
}

impl QuadratureConfig {
    pub fn new(abs_tol: f64, rel_tol: f64, max_refinements: u32) -> Result<Self> {
        if !(abs_tol > 0.0) || !(rel_tol > 0.0) {
            return domain(format!(
                "quadrature tolerances must be positive (abs_tol = {abs_tol}, rel_tol = {rel_tol})"
            ));
        }
        if max_refinements == 0 {
            return domain("max_refinements must be at least 1");
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_refinements,
        })
    }

    /// Purely relative tolerance, for integrals whose magnitude is not known in advance.
    pub fn relative(rel_tol: f64) -> Self {
        Self {
            abs_tol: f64::MIN_POSITIVE,
            rel_tol,
            max_refinements: 60,
        }
    }

    pub fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub converged: bool,
}

impl QuadResult {
    pub(crate) fn exact_zero() -> Self {
        Self {
            value: 0.0,
            error_estimate: 0.0,
            converged: true,
        }
    }

    pub(crate) fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            error_estimate: self.error_estimate * factor.abs(),
            converged: self.converged,
        }
    }
}

/// Integrates `f` over `[lower, upper]`; either bound may be infinite.
///
/// `f` must be finite at every interior point. Integrable endpoint singularities are
/// handled by refinement, although a smoothing substitution at the call site
/// (see [`integrate_log_scale`]) is usually far cheaper.
pub fn integrate<F>(f: F, lower: f64, upper: f64, cfg: &QuadratureConfig) -> QuadResult
where
    F: Fn(f64) -> f64,
{
    if lower.is_nan() || upper.is_nan() {
        return QuadResult {
            value: f64::NAN,
            error_estimate: f64::INFINITY,
            converged: false,
        };
    }
    if lower == upper {
        return QuadResult::exact_zero();
    }
    if lower > upper {
        return integrate(f, upper, lower, cfg).scaled(-1.0);
    }

    match (lower.is_finite(), upper.is_finite()) {
        (true, true) => adaptive(&f, lower, upper, cfg),
        (true, false) => adaptive(
            &|u: f64| {
                let t = lower + (1.0 - u) / u;
                f(t) / (u * u)
            },
            0.0,
            1.0,
            cfg,
        ),
        (false, true) => adaptive(
            &|u: f64| {
                let t = upper - (1.0 - u) / u;
                f(t) / (u * u)
            },
            0.0,
            1.0,
            cfg,
        ),
        (false, false) => adaptive(
            &|u: f64| {
                let t = (1.0 - u) / u;
                (f(t) + f(-t)) / (u * u)
            },
            0.0,
            1.0,
            cfg,
        ),
    }
}

/// Integrates `f` over `(0, upper]` after the substitution `t = e^x`.
///
/// Power-law behaviour `t^(c-1)` at the origin becomes exponential decay `e^(c x)`
/// and doubly-exponential tails stay narrow, so integrands like `t^(a-1) / (e^t - z)`
/// need no special endpoint treatment. Points where `t` under- or overflows contribute
/// zero, which requires `f(t) * t -> 0` at both ends.
pub fn integrate_log_scale<F>(f: F, upper: f64, cfg: &QuadratureConfig) -> QuadResult
where
    F: Fn(f64) -> f64,
{
    if upper <= 0.0 {
        return QuadResult::exact_zero();
    }
    let g = |x: f64| {
        let t = x.exp();
        if t == 0.0 || !t.is_finite() {
            0.0
        } else {
            f(t) * t
        }
    };
    integrate(g, f64::NEG_INFINITY, upper.ln(), cfg)
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn adaptive<F>(f: &F, a: f64, b: f64, cfg: &QuadratureConfig) -> QuadResult
where
    F: Fn(f64) -> f64,
{
    let mut heap = BinaryHeap::with_capacity(64);
    let width = (b - a) / INITIAL_PIECES as f64;
    for i in 0..INITIAL_PIECES {
        let lo = a + width * i as f64;
        let hi = if i + 1 == INITIAL_PIECES {
            b
        } else {
            a + width * (i + 1) as f64
        };
        let (value, error) = kronrod15(f, lo, hi);
        heap.push(Segment {
            a: lo,
            b: hi,
            value,
            error,
            depth: 0,
        });
    }

    // Segments that hit the depth limit or machine resolution; their error is final.
    let mut frozen_value = 0.0;
    let mut frozen_error = 0.0;

    loop {
        let (live_value, live_error) = heap.iter().fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error));
        let value = live_value + frozen_value;
        let error = live_error + frozen_error;

        if !value.is_finite() || !error.is_finite() {
            return QuadResult {
                value,
                error_estimate: f64::INFINITY,
                converged: false,
            };
        }
        if error <= cfg.target(value) {
            return QuadResult {
                value,
                error_estimate: error,
                converged: true,
            };
        }
        if heap.len() >= MAX_INTERVALS {
            return QuadResult {
                value,
                error_estimate: error,
                converged: false,
            };
        }

        let Some(worst) = heap.pop() else {
            return QuadResult {
                value,
                error_estimate: error,
                converged: false,
            };
        };

        let mid = 0.5 * (worst.a + worst.b);
        let too_narrow = mid <= worst.a || mid >= worst.b;
        if worst.depth >= cfg.max_refinements || too_narrow {
            frozen_value += worst.value;
            frozen_error += worst.error;
            continue;
        }

        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (value, error) = kronrod15(f, lo, hi);
            heap.push(Segment {
                a: lo,
                b: hi,
                value,
                error,
                depth: worst.depth + 1,
            });
        }
    }
}

/// 15-point Kronrod estimate with the QUADPACK error heuristic.
fn kronrod15<F>(f: &F, a: f64, b: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(centre);
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];

    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    (value, error)
}
