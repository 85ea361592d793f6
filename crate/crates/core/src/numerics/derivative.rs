use crate::error::{Error, Result};

/// Closed interval on which a function may be evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const REAL_LINE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative {
    pub value: f64,
    /// Difference between the extrapolated and the finer central estimate.
    pub error: f64,
    /// Step actually used (after any shrinking).
    pub step: f64,
}

/// Central difference at steps `h` and `2h` combined by one Richardson level,
/// `(4 D(h) - D(2h)) / 3`. The stencil reaches `x ± 2h`; if that leaves
/// `domain`, `h` is shrunk to fit. Errors if `x` itself is not strictly inside.
pub fn richardson_derivative<F>(mut f: F, x: f64, h0: f64, domain: Interval) -> Result<Derivative>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(h0 > 0.0 && h0.is_finite()) {
        return Err(Error::InvalidArgument(alloc::format!("step must be positive, got {h0}")));
    }
    let room = f64::min(x - domain.lo, domain.hi - x);
    if !(room > 0.0) {
        return Err(Error::Domain(alloc::format!(
            "cannot differentiate at {x}: no room inside [{}, {}]",
            domain.lo,
            domain.hi
        )));
    }
    let h = f64::min(h0, 0.5 * room);
    if h < 1e-10 * x.abs().max(1.0) {
        return Err(Error::Domain(alloc::format!(
            "derivative step at {x} would shrink to {h:e}"
        )));
    }
    let d1 = (f(x + h)? - f(x - h)?) / (2.0 * h);
    let d2 = (f(x + 2.0 * h)? - f(x - 2.0 * h)?) / (4.0 * h);
    let value = (4.0 * d1 - d2) / 3.0;
    if !value.is_finite() {
        return Err(Error::NonFinite("Richardson derivative"));
    }
    Ok(Derivative {
        value,
        error: (value - d1).abs(),
        step: h,
    })
}
