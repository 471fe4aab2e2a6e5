//! Large magnitudes described through their iterated logarithms.
//!
//! The constant chain is only meaningful for astronomically large `x`
//! (`log log x` in the millions), so scales are stored as `log x` and never
//! as `x` itself.

use crate::error::{domain, Result};
use crate::interval::Interval;

#[derive(Clone, Debug, PartialEq)]
pub struct Scale {
    log: Interval,
}

impl Scale {
    /// Scale of a real `x > 1`.
    pub fn from_x(x: f64) -> Result<Self> {
        if !(x.is_finite() && x > 1.0) {
            return Err(domain("scale", format!("x = {x} must be a finite real > 1")));
        }
        Self::from_log(Interval::from_f64(x).ln().expect("positive"))
    }

    pub fn from_log(log_x: Interval) -> Result<Self> {
        if !log_x.is_positive() {
            return Err(domain("scale", "log x must be positive"));
        }
        Ok(Scale { log: log_x })
    }

    pub fn from_log2(log2_x: Interval) -> Result<Self> {
        Self::from_log(log2_x.exp())
    }

    pub fn from_log3(log3_x: Interval) -> Result<Self> {
        Self::from_log2(log3_x.exp())
    }

    /// `log x`
    pub fn log(&self) -> Interval {
        self.log.clone()
    }

    /// `log log x`; requires `x > e`.
    pub fn log2(&self) -> Result<Interval> {
        self.log
            .ln()
            .filter(Interval::is_positive)
            .ok_or_else(|| domain("scale", "log2 x must be positive (x > e)"))
    }

    /// `log log log x`; requires `x > e^e`.
    pub fn log3(&self) -> Result<Interval> {
        self.log2()?
            .ln()
            .filter(Interval::is_positive)
            .ok_or_else(|| domain("scale", "log3 x must be positive (x > e^e)"))
    }

    /// `log log log log x`; requires `x > e^(e^e)`.
    pub fn log4(&self) -> Result<Interval> {
        self.log3()?
            .ln()
            .filter(Interval::is_positive)
            .ok_or_else(|| domain("scale", "log4 x must be positive (x > e^(e^e))"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tower_of_ten_to_the_hundred() {
        let s = Scale::from_x(1e100).unwrap();
        assert!((s.log().mid() - 230.25850929940458).abs() < 1e-12);
        assert!((s.log2().unwrap().mid() - 5.439_202_631_236_047).abs() < 1e-12);
        assert!((s.log3().unwrap().mid() - 1.6936).abs() < 1e-4);
        assert!((s.log4().unwrap().mid() - 0.52688).abs() < 1e-4);
    }

    #[test]
    fn from_log3_inverts() {
        let e = Interval::one().exp();
        let s = Scale::from_log3(e.clone()).unwrap();
        assert!(s.log3().unwrap().overlaps(&e));
        assert!(s.log4().unwrap().contains_f64(0.0) || (s.log4().unwrap().mid() - 1.0).abs() < 1e-60);
    }

    #[test]
    fn small_x_has_no_tower() {
        let s = Scale::from_x(10.0).unwrap();
        assert!(s.log2().is_ok());
        assert!(s.log3().is_err());
        assert!(Scale::from_x(1.0).is_err());
    }
}
