use crate::error::{bail_arg, Error, Result};

const MAX_ITER: usize = 200;

/// Brent's bracketing root finder for an infallible function.
pub fn brent_root<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    try_brent_root(|x| Ok(f(x)), lo, hi, tol)
}

/// Brent's method (inverse quadratic interpolation guarded by bisection).
///
/// Stops once `|f(x)| <= tol` or the bracket half-width falls below
/// `2ε|x| + ε_min`. Errors from `f` are passed through.
pub fn try_brent_root<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        bail_arg!("bracket must be finite with lo <= hi, got [{lo}, {hi}]");
    }
    if !(tol >= 0.0) {
        bail_arg!("tolerance must be non-negative, got {tol}");
    }
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if !(fa.is_finite() && fb.is_finite()) {
        return Err(Error::NonFinite("root-finder bracket"));
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange {
            lo,
            hi,
            f_lo: fa,
            f_hi: fb,
        });
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let xtol = 2.0 * f64::EPSILON * b.abs() + f64::MIN_POSITIVE;
        let m = 0.5 * (c - b);
        if fb.abs() <= tol || m.abs() <= xtol {
            return Ok(b);
        }
        if e.abs() >= xtol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (xtol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > xtol { d } else { xtol.copysign(m) };
        fb = f(b)?;
        if !fb.is_finite() {
            return Err(Error::NonFinite("root-finder iterate"));
        }
    }
    Err(Error::NotConverged {
        what: "Brent root",
        iterations: MAX_ITER,
        residual: fb.abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_root_of_two() {
        let r = brent_root(|x| x * x - 2.0, 1.0, 2.0, 0.0).unwrap();
        assert!((r - core::f64::consts::SQRT_2).abs() < 1e-10);
    }

    #[test]
    fn identity_root_at_zero() {
        let r = brent_root(|x| x, -1.0, 1.0, 1e-14).unwrap();
        assert!(r.abs() < 1e-14);
    }

    #[test]
    fn no_sign_change_is_an_error() {
        assert!(matches!(
            brent_root(|x| x * x + 1.0, -1.0, 1.0, 1e-12),
            Err(Error::NoSignChange { .. })
        ));
    }

    #[test]
    fn stiff_function_converges() {
        let r = brent_root(|x| (x - 0.3).powi(3) * 1e6 + (x - 0.3), -5.0, 7.0, 0.0).unwrap();
        assert!((r - 0.3).abs() < 1e-12);
    }

    #[test]
    fn errors_pass_through() {
        let out = try_brent_root(
            |x| if x > 0.5 { Err(Error::Domain("boom".into())) } else { Ok(x - 0.75) },
            0.0,
            1.0,
            0.0,
        );
        assert!(matches!(out, Err(Error::Domain(_))));
    }
}
