//! Exact rationals with power-of-two denominators.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `num / 2^exp`, kept normalized (odd numerator unless `exp == 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: i128,
    exp: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };

    pub fn new(num: i128, exp: u32) -> Self {
        let mut d = Dyadic { num, exp };
        d.normalize();
        d
    }

    pub fn from_int(v: i64) -> Self {
        Dyadic { num: v as i128, exp: 0 }
    }

    /// `2^-e`.
    pub fn pow2_neg(e: u32) -> Self {
        Dyadic { num: 1, exp: e }
    }

    fn normalize(&mut self) {
        if self.num == 0 {
            self.exp = 0;
            return;
        }
        let tz = self.num.trailing_zeros().min(self.exp);
        self.num >>= tz;
        self.exp -= tz;
    }

    pub fn numerator(&self) -> i128 {
        self.num
    }

    pub fn denominator_log2(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn abs(self) -> Self {
        Dyadic { num: self.num.abs(), exp: self.exp }
    }

    pub fn pow(self, k: u32) -> Self {
        let mut acc = Dyadic::ONE;
        for _ in 0..k {
            acc = acc * self;
        }
        acc
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / 2f64.powi(self.exp as i32)
    }

    /// log2 of the absolute value; `None` for zero.
    pub fn log2_abs(self) -> Option<f64> {
        if self.num == 0 {
            return None;
        }
        Some((self.num.unsigned_abs() as f64).log2() - self.exp as f64)
    }

    /// Renders as `2^-e` style with three decimals when not an exact power.
    pub fn fmt_log2(self) -> String {
        match self.log2_abs() {
            None => "0".to_string(),
            Some(l) => {
                let sign = if self.num < 0 { "-" } else { "" };
                if self.num.unsigned_abs().is_power_of_two() {
                    format!("{sign}2^{}", l.round() as i64)
                } else {
                    format!("{sign}2^{l:.3}")
                }
            }
        }
    }

    fn align(a: Dyadic, b: Dyadic) -> (i128, i128, u32) {
        let e = a.exp.max(b.exp);
        (a.num << (e - a.exp), b.num << (e - b.exp), e)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        let (a, b, e) = Dyadic::align(self, rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        self + (-rhs)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { num: -self.num, exp: self.exp }
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Dyadic) -> Dyadic {
        Dyadic::new(self.num * rhs.num, self.exp + rhs.exp)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = Dyadic::align(*self, *other);
        a.cmp(&b)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else if self.num.unsigned_abs() == 1 {
            write!(f, "{}2^-{}", if self.num < 0 { "-" } else { "" }, self.exp)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes() {
        assert_eq!(Dyadic::new(40, 10), Dyadic::new(5, 7));
        assert_eq!(Dyadic::new(0, 9), Dyadic::ZERO);
        assert_eq!(Dyadic::new(8, 2), Dyadic::from_int(2));
    }

    #[test]
    fn arithmetic() {
        let half = Dyadic::pow2_neg(1);
        assert_eq!(half + half, Dyadic::ONE);
        assert_eq!(half * half, Dyadic::pow2_neg(2));
        assert_eq!(Dyadic::ONE - half, half);
        assert!(half < Dyadic::ONE);
        assert!(-half < Dyadic::ZERO);
        assert_eq!(Dyadic::pow2_neg(3).pow(10), Dyadic::pow2_neg(30));
    }

    #[test]
    fn log2_formatting() {
        assert_eq!(Dyadic::pow2_neg(3).fmt_log2(), "2^-3");
        assert_eq!(Dyadic::new(5, 7).pow(6).fmt_log2(), "2^-28.068");
        assert_eq!(Dyadic::ZERO.fmt_log2(), "0");
        assert_eq!(Dyadic::pow2_neg(5).to_string(), "2^-5");
        assert_eq!(Dyadic::new(-3, 4).to_string(), "-3/2^4");
    }
}
