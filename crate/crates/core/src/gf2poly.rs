//! Polynomials over GF(2): irreducibility and multiplicative order.

use std::fmt;

/// Coefficient i lives in bit i of the packed words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Poly {
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Gf2Poly::from_exponents(&[0])
    }

    pub fn x() -> Self {
        Gf2Poly::from_exponents(&[1])
    }

    /// Repeated exponents cancel.
    pub fn from_exponents(exps: &[usize]) -> Self {
        let mut p = Gf2Poly::zero();
        for &e in exps {
            p.flip(e);
        }
        p.trim();
        p
    }

    pub fn from_u64(bits: u64) -> Self {
        let mut p = Gf2Poly { words: vec![bits] };
        p.trim();
        p
    }

    fn flip(&mut self, e: usize) {
        if self.words.len() <= e / 64 {
            self.words.resize(e / 64 + 1, 0);
        }
        self.words[e / 64] ^= 1 << (e % 64);
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    pub fn exponents(&self) -> Vec<usize> {
        let d = self.degree().map_or(0, |d| d + 1);
        (0..d).rev().filter(|&i| self.coeff(i)).collect()
    }

    fn add_shifted(&mut self, other: &Gf2Poly, shift: usize) {
        let (ws, bs) = (shift / 64, shift % 64);
        let need = other.words.len() + ws + 1;
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
        for (i, &w) in other.words.iter().enumerate() {
            self.words[i + ws] ^= w << bs;
            if bs != 0 {
                self.words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        self.trim();
    }

    pub fn add(&self, other: &Gf2Poly) -> Gf2Poly {
        let mut r = self.clone();
        r.add_shifted(other, 0);
        r
    }

    pub fn mul(&self, other: &Gf2Poly) -> Gf2Poly {
        let mut r = Gf2Poly::zero();
        if let Some(d) = self.degree() {
            for i in 0..=d {
                if self.coeff(i) {
                    r.add_shifted(other, i);
                }
            }
        }
        r
    }

    pub fn rem(&self, m: &Gf2Poly) -> Gf2Poly {
        let dm = m.degree().expect("division by zero polynomial");
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dm {
                break;
            }
            r.add_shifted(m, dr - dm);
        }
        r
    }

    pub fn mulmod(&self, other: &Gf2Poly, m: &Gf2Poly) -> Gf2Poly {
        self.mul(other).rem(m)
    }

    pub fn gcd(&self, other: &Gf2Poly) -> Gf2Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// self^e mod m by square-and-multiply; `e` as little-endian bits.
    pub fn powmod(&self, e: u128, m: &Gf2Poly) -> Gf2Poly {
        let mut acc = Gf2Poly::one().rem(m);
        let mut base = self.rem(m);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            base = base.mulmod(&base, m);
            e >>= 1;
        }
        acc
    }

    /// x^(2^k) mod m.
    fn x_pow_2k(k: usize, m: &Gf2Poly) -> Gf2Poly {
        let mut r = Gf2Poly::x().rem(m);
        for _ in 0..k {
            r = r.mulmod(&r, m);
        }
        r
    }

    /// Rabin's test: x^(2^n) ≡ x and gcd(x^(2^(n/q)) − x, f) = 1 for each prime q | n.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        if !self.coeff(0) {
            return n == 1;
        }
        let x = Gf2Poly::x();
        if Gf2Poly::x_pow_2k(n, self) != x.rem(self) {
            return false;
        }
        for q in prime_factors(n as u128) {
            let h = Gf2Poly::x_pow_2k(n / q as usize, self).add(&x);
            if !self.gcd(&h).is_one() {
                return false;
            }
        }
        true
    }

    /// Multiplicative order of x modulo self when it divides 2^n − 1 (degree ≤ 64).
    pub fn order_of_x(&self) -> Option<u128> {
        let n = self.degree()?;
        if n == 0 || n > 64 || !self.coeff(0) {
            return None;
        }
        // Only the divisors of 2^n − 1 are searched; None when x^(2^n − 1) ≠ 1.
        let full = (1u128 << n) - 1;
        let x = Gf2Poly::x();
        if x.powmod(full, self).is_one() {
            let mut ord = full;
            for q in prime_factors(full) {
                while ord.is_multiple_of(q) && x.powmod(ord / q, self).is_one() {
                    ord /= q;
                }
            }
            return Some(ord);
        }
        None
    }

    /// Primitive: irreducible of degree n with x of order 2^n − 1.
    pub fn is_primitive(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        (1..=64).contains(&n) && self.is_irreducible() && self.order_of_x() == Some((1u128 << n) - 1)
    }
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut v: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= v {
        if v.is_multiple_of(p) {
            out.push(p);
            while v.is_multiple_of(p) {
                v /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if v > 1 {
        out.push(v);
    }
    out
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.exponents();
        if e.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = e
            .iter()
            .map(|&i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_irreducible(f: u64) -> bool {
        let d = 63 - f.leading_zeros();
        (2u64..(1 << (d / 2 + 1))).all(|g| {
            let dg = 63 - g.leading_zeros();
            dg == 0 || dg > d / 2 || !Gf2Poly::from_u64(f).rem(&Gf2Poly::from_u64(g)).is_zero()
        })
    }

    fn brute_order(f: u64) -> u128 {
        let m = Gf2Poly::from_u64(f);
        let x = Gf2Poly::x();
        let mut acc = x.rem(&m);
        let mut k = 1u128;
        while !acc.is_one() {
            acc = acc.mulmod(&x, &m);
            k += 1;
        }
        k
    }

    #[test]
    fn known_polynomials() {
        assert!(Gf2Poly::from_exponents(&[4, 1, 0]).is_primitive());
        assert!(Gf2Poly::from_exponents(&[4, 3, 2, 1, 0]).is_irreducible());
        assert!(!Gf2Poly::from_exponents(&[4, 3, 2, 1, 0]).is_primitive());
        assert_eq!(Gf2Poly::from_exponents(&[4, 3, 2, 1, 0]).order_of_x(), Some(5));
        assert!(!Gf2Poly::from_exponents(&[4, 2, 0]).is_irreducible());
        assert!(Gf2Poly::from_exponents(&[16, 5, 3, 2, 0]).is_primitive());
        assert!(Gf2Poly::from_exponents(&[80, 67, 57, 42, 29, 18, 0]).is_irreducible());
        assert_eq!(Gf2Poly::from_exponents(&[5, 2, 0]).to_string(), "x^5 + x^2 + 1");
    }

    #[test]
    fn prime_factor_lists() {
        assert_eq!(prime_factors(65535), vec![3, 5, 17, 257]);
        assert_eq!(prime_factors(97), vec![97]);
        assert_eq!(prime_factors(1), Vec::<u128>::new());
    }

    proptest! {
        #[test]
        fn rabin_matches_trial_division(f in 2u64..(1 << 12)) {
            prop_assert_eq!(Gf2Poly::from_u64(f).is_irreducible(), brute_irreducible(f));
        }

        #[test]
        fn order_matches_stepping(f in (1u64 << 3)..(1 << 11)) {
            let p = Gf2Poly::from_u64(f | 1);
            if p.is_irreducible() {
                prop_assert_eq!(p.order_of_x(), Some(brute_order(f | 1)));
            }
        }

        #[test]
        fn ring_laws(a in any::<u64>(), b in any::<u64>(), c in 1u64..) {
            let (a, b, m) = (Gf2Poly::from_u64(a), Gf2Poly::from_u64(b), Gf2Poly::from_u64(c));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&a), Gf2Poly::zero());
            let r = a.rem(&m);
            prop_assert!(r.degree().is_none_or(|d| d < m.degree().unwrap()) || m.degree() == Some(0));
            prop_assert_eq!(a.add(&r).rem(&m), Gf2Poly::zero());
        }
    }
}
