use std::collections::BTreeSet;
use std::fmt;

use super::{BoolFnError, TruthTable, MAX_TABLE_VARS};

/// Algebraic normal form: a set of monomials, each a bitmask of variables
/// (bit `i-1` stands for `x_i`, mask 0 is the constant 1).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AnfPoly {
    n: usize,
    monomials: BTreeSet<u64>,
}

impl AnfPoly {
    pub fn zero(n: usize) -> Self {
        AnfPoly { n, monomials: BTreeSet::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Builds from monomial masks; repeated monomials cancel.
    pub fn from_masks(n: usize, masks: impl IntoIterator<Item = u64>) -> Result<Self, BoolFnError> {
        let mut p = AnfPoly::zero(n);
        for m in masks {
            p.toggle(m)?;
        }
        Ok(p)
    }

    /// Builds from monomials given as lists of 1-based variable indices.
    pub fn from_terms(n: usize, terms: &[&[usize]]) -> Result<Self, BoolFnError> {
        let mut p = AnfPoly::zero(n);
        for t in terms {
            let mut m = 0u64;
            for &v in t.iter() {
                if v == 0 || v > n {
                    return Err(BoolFnError::VarOutOfRange { var: v, n });
                }
                m |= 1 << (v - 1);
            }
            p.toggle(m)?;
        }
        Ok(p)
    }

    /// XORs one monomial into the polynomial.
    pub fn toggle(&mut self, mask: u64) -> Result<(), BoolFnError> {
        if self.n < 64 && mask >> self.n != 0 {
            return Err(BoolFnError::VarOutOfRange { var: 64 - mask.leading_zeros() as usize, n: self.n });
        }
        if !self.monomials.remove(&mask) {
            self.monomials.insert(mask);
        }
        Ok(())
    }

    pub fn monomials(&self) -> impl Iterator<Item = u64> + '_ {
        self.monomials.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, mask: u64) -> bool {
        self.monomials.contains(&mask)
    }

    pub fn xor(&self, other: &AnfPoly) -> AnfPoly {
        let monomials = self.monomials.symmetric_difference(&other.monomials).copied().collect();
        AnfPoly { n: self.n.max(other.n), monomials }
    }

    /// Relabels into a wider variable space, moving variable `i` to `i + offset`.
    pub fn shifted(&self, offset: usize, n: usize) -> AnfPoly {
        AnfPoly { n, monomials: self.monomials.iter().map(|m| m << offset).collect() }
    }

    /// Evaluates directly, without a table.
    pub fn eval(&self, x: u64) -> bool {
        self.monomials.iter().filter(|&&m| m & x == m).count() & 1 == 1
    }

    /// Parses `x1*x2 + x3 + 1`; case-insensitive, whitespace ignored.
    /// `0` and the empty string denote the zero polynomial.
    pub fn parse(n: usize, text: &str) -> Result<Self, BoolFnError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
        let mut p = AnfPoly::zero(n);
        if compact.is_empty() || compact == "0" {
            return Ok(p);
        }
        for term in compact.split('+') {
            let mut mask = 0u64;
            if term.is_empty() {
                return Err(BoolFnError::Parse(format!("empty term in `{text}`")));
            }
            for factor in term.split('*') {
                if factor == "1" {
                    continue;
                }
                let idx = factor
                    .strip_prefix('x')
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(|| BoolFnError::Parse(format!("bad factor `{factor}`")))?;
                if idx == 0 || idx > n {
                    return Err(BoolFnError::VarOutOfRange { var: idx, n });
                }
                mask |= 1 << (idx - 1);
            }
            p.toggle(mask)?;
        }
        Ok(p)
    }

    /// Smallest variable count that the polynomial mentions.
    pub fn support_vars(&self) -> usize {
        let all = self.monomials.iter().fold(0u64, |a, m| a | m);
        64 - all.leading_zeros() as usize
    }
}

impl fmt::Display for AnfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        // Constant last, then by degree and lexicographic variable order.
        let mut terms: Vec<u64> = self.monomials.iter().copied().collect();
        terms.sort_by_key(|&m| (m == 0, m.count_ones(), m.reverse_bits()));
        let mut first = true;
        for m in terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m == 0 {
                write!(f, "1")?;
                continue;
            }
            let vars: Vec<String> = (0..64).filter(|i| m >> i & 1 == 1).map(|i| format!("x{}", i + 1)).collect();
            write!(f, "{}", vars.join("*"))?;
        }
        Ok(())
    }
}

/// In-place binary Möbius transform over a packed table. It is an involution.
pub(crate) fn mobius_words(n: usize, words: &mut [u64]) {
    const LOW: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0F0F_0F0F_0F0F_0F0F,
        0x00FF_00FF_00FF_00FF,
        0x0000_FFFF_0000_FFFF,
        0x0000_0000_FFFF_FFFF,
    ];
    for (i, &low) in LOW.iter().enumerate().take(n.min(6)) {
        let s = 1 << i;
        for w in words.iter_mut() {
            *w ^= (*w & low) << s;
        }
    }
    for i in 6..n {
        let stride = 1usize << (i - 6);
        for block in words.chunks_mut(2 * stride) {
            let (lo, hi) = block.split_at_mut(stride);
            for (h, l) in hi.iter_mut().zip(lo.iter()) {
                *h ^= *l;
            }
        }
    }
}

pub fn anf_to_tt(anf: &AnfPoly) -> Result<TruthTable, BoolFnError> {
    if anf.n > MAX_TABLE_VARS {
        return Err(BoolFnError::TooManyVars { n: anf.n, max: MAX_TABLE_VARS });
    }
    let mut t = TruthTable::zero(anf.n)?;
    for m in anf.monomials() {
        t.set(m, true);
    }
    mobius_words(anf.n, t.words_mut());
    Ok(t)
}

pub fn tt_to_anf(tt: &TruthTable) -> AnfPoly {
    let mut t = tt.clone();
    mobius_words(t.n(), t.words_mut());
    AnfPoly { n: tt.n(), monomials: t.support().collect() }
}

pub fn degree(anf: &AnfPoly) -> u32 {
    anf.monomials().map(|m| m.count_ones()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn and_and_constant() {
        let a = AnfPoly::parse(2, "x1*x2").unwrap();
        assert_eq!(anf_to_tt(&a).unwrap().bits().collect::<Vec<_>>(), vec![false, false, false, true]);
        let one = AnfPoly::parse(1, "1").unwrap();
        assert_eq!(anf_to_tt(&one).unwrap().bits().collect::<Vec<_>>(), vec![true, true]);
    }

    #[test]
    fn xor_table_to_anf() {
        let t = TruthTable::from_bits(&[false, true, true, false]).unwrap();
        assert_eq!(tt_to_anf(&t), AnfPoly::parse(2, "x1 + x2").unwrap());
    }

    #[test]
    fn parser_is_lenient_on_case_and_space() {
        let a = AnfPoly::parse(3, " X1 * x2+x3 +1 ").unwrap();
        assert_eq!(a.to_string(), "x3 + x1*x2 + 1");
        assert_eq!(AnfPoly::parse(3, &a.to_string()).unwrap(), a);
        assert!(AnfPoly::parse(3, "x4").is_err());
        assert!(AnfPoly::parse(3, "x1 + + x2").is_err());
        assert!(AnfPoly::parse(3, "y1").is_err());
        assert_eq!(AnfPoly::parse(3, "x1 + x1").unwrap(), AnfPoly::zero(3));
    }

    #[test]
    fn degree_of_empty_is_zero() {
        assert_eq!(degree(&AnfPoly::zero(4)), 0);
        assert_eq!(degree(&AnfPoly::parse(4, "x1*x2*x4 + x3").unwrap()), 3);
    }

    fn naive_eval(anf: &AnfPoly, x: u64) -> bool {
        anf.monomials().fold(false, |acc, m| acc ^ (m & !x == 0))
    }

    proptest! {
        #[test]
        fn transform_matches_direct_evaluation(n in 0usize..=10, seed in any::<u64>()) {
            let mut s = seed | 1;
            let masks: Vec<u64> = (0..20).map(|_| { s ^= s << 13; s ^= s >> 7; s ^= s << 17; s & ((1u64 << n) - 1) }).collect();
            let anf = AnfPoly::from_masks(n, masks).unwrap();
            let tt = anf_to_tt(&anf).unwrap();
            for x in 0..(1u64 << n) {
                prop_assert_eq!(tt.get(x), naive_eval(&anf, x));
            }
        }

        #[test]
        fn round_trip(n in 1usize..=12, bits in proptest::collection::vec(any::<bool>(), 4096)) {
            let tt = TruthTable::from_fn(n, |x| bits[x as usize]).unwrap();
            let anf = tt_to_anf(&tt);
            prop_assert_eq!(&anf_to_tt(&anf).unwrap(), &tt);
            prop_assert_eq!(tt_to_anf(&anf_to_tt(&anf).unwrap()), anf);
        }
    }
}
