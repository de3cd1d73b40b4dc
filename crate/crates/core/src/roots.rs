//! Bracketed scalar root finders for monotone equations.

use crate::error::{domain, Error, Result};

const MAX_ITERATIONS: u32 = 500;

/// Stopping rule: the bracket is narrower than `x_tol` (absolute) or `|f| <= f_tol`.
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub x_tol: f64,
    pub f_tol: f64,
}

fn opposite_signs(fa: f64, fb: f64) -> bool {
    (fa <= 0.0 && fb >= 0.0) || (fa >= 0.0 && fb <= 0.0)
}

/// Illinois-modified regula falsi on `[lo, hi]`, which must bracket a sign change.
pub fn regula_falsi<F>(f: F, lo: f64, hi: f64, tol: Tolerance) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !opposite_signs(fa, fb) || fa.is_nan() || fb.is_nan() {
        return domain(format!("root is not bracketed: f({a}) = {fa}, f({b}) = {fb}"));
    }

    // Which endpoint was retained on the previous step: -1 for a, +1 for b.
    let mut side = 0i8;
    for _ in 0..MAX_ITERATIONS {
        let mut c = (a * fb - b * fa) / (fb - fa);
        if !(c > a.min(b) && c < a.max(b)) {
            c = 0.5 * (a + b);
        }
        let fc = f(c);
        if fc.abs() <= tol.f_tol {
            return Ok(c);
        }
        if opposite_signs(fa, fc) {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
        if (b - a).abs() <= tol.x_tol {
            return Ok(if fa.abs() < fb.abs() { a } else { b });
        }
    }
    Err(Error::NonConvergence {
        what: "regula falsi".into(),
        error_estimate: (b - a).abs(),
    })
}

/// Newton iteration safeguarded by bisection inside `[lo, hi]`.
///
/// `f_df` returns the function value and derivative. Converges when the step is
/// below `x_tol` or the residual is below `f_tol`.
pub fn safeguarded_newton<F>(f_df: F, lo: f64, hi: f64, start: f64, tol: Tolerance) -> Result<f64>
where
    F: Fn(f64) -> (f64, f64),
{
    let (mut a, mut b) = (lo, hi);
    let (fa, fb) = (f_df(a).0, f_df(b).0);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !opposite_signs(fa, fb) {
        return domain(format!("root is not bracketed: f({a}) = {fa}, f({b}) = {fb}"));
    }
    let increasing = fb > fa;
    let mut x = start.clamp(a, b);

    for _ in 0..MAX_ITERATIONS {
        let (fx, dfx) = f_df(x);
        if fx.abs() <= tol.f_tol {
            return Ok(x);
        }
        if (fx < 0.0) == increasing {
            a = x;
        } else {
            b = x;
        }
        let newton = x - fx / dfx;
        let next = if dfx != 0.0 && newton > a && newton < b {
            newton
        } else {
            0.5 * (a + b)
        };
        if (next - x).abs() <= tol.x_tol {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::NonConvergence {
        what: "safeguarded Newton".into(),
        error_estimate: (b - a).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TIGHT: Tolerance = Tolerance {
        x_tol: 1e-14,
        f_tol: 0.0,
    };

    #[test]
    fn regula_falsi_finds_cube_root() {
        let r = regula_falsi(|x| x * x * x - 2.0, 0.0, 2.0, TIGHT).unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-13);
    }

    #[test]
    fn regula_falsi_decreasing_function() {
        let r = regula_falsi(|x: f64| (-x).exp() - 0.25, 0.0, 10.0, TIGHT).unwrap();
        assert!((r - 4f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn unbracketed_is_an_error() {
        assert!(regula_falsi(|x| x * x + 1.0, -1.0, 1.0, TIGHT).is_err());
        assert!(safeguarded_newton(|x| (x * x + 1.0, 2.0 * x), -1.0, 1.0, 0.0, TIGHT).is_err());
    }

    #[test]
    fn newton_with_bad_start_still_converges() {
        let r = safeguarded_newton(|x: f64| (x.atan(), 1.0 / (1.0 + x * x)), -20.0, 30.0, 29.0, TIGHT).unwrap();
        assert!(r.abs() < 1e-12);
    }
}
