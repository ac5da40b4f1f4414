//! Compensated accumulation for series whose partial sums cancel heavily.

use num_complex::Complex64;

use crate::scalars::two_sum;

/// Running sum carrying the exact rounding error of every addition
/// (Neumaier's variant of Kahan summation, via `two_sum`).
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    err: f64,
}

impl CompensatedSum {
    pub fn new(init: f64) -> Self {
        Self { sum: init, err: 0.0 }
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let (s, e) = two_sum(self.sum, v);
        self.sum = s;
        self.err += e;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.err
    }
}

/// Componentwise [`CompensatedSum`] for complex terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl CompensatedComplexSum {
    pub fn new(init: Complex64) -> Self {
        Self {
            re: CompensatedSum::new(init.re),
            im: CompensatedSum::new(init.im),
        }
    }

    #[inline]
    pub fn add(&mut self, v: Complex64) {
        self.re.add(v.re);
        self.im.add(v.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}
