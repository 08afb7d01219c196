use super::{BoolFnError, MAX_TABLE_VARS};

/// Truth table of an n-variable function, packed 64 entries per word.
///
/// Entry `b` is the output on the input with `x_i = (b >> (i-1)) & 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    words: Vec<u64>,
}

pub(crate) fn word_count(n: usize) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

pub(crate) fn tail_mask(n: usize) -> u64 {
    if n >= 6 {
        !0
    } else {
        (1u64 << (1 << n)) - 1
    }
}

impl TruthTable {
    pub fn zero(n: usize) -> Result<Self, BoolFnError> {
        if n > MAX_TABLE_VARS {
            return Err(BoolFnError::TooManyVars { n, max: MAX_TABLE_VARS });
        }
        Ok(TruthTable { n, words: vec![0; word_count(n)] })
    }

    pub fn constant(n: usize, bit: bool) -> Result<Self, BoolFnError> {
        let mut t = Self::zero(n)?;
        if bit {
            t.words.iter_mut().for_each(|w| *w = !0);
            t.clear_tail();
        }
        Ok(t)
    }

    pub fn from_fn(n: usize, f: impl Fn(u64) -> bool) -> Result<Self, BoolFnError> {
        let mut t = Self::zero(n)?;
        for x in 0..t.len() {
            if f(x) {
                t.words[(x >> 6) as usize] |= 1 << (x & 63);
            }
        }
        Ok(t)
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self, BoolFnError> {
        let len = bits.len();
        if !len.is_power_of_two() {
            return Err(BoolFnError::LengthMismatch { expected: len.next_power_of_two(), got: len });
        }
        let n = len.trailing_zeros() as usize;
        Self::from_fn(n, |x| bits[x as usize])
    }

    pub fn from_words(n: usize, words: Vec<u64>) -> Result<Self, BoolFnError> {
        if n > MAX_TABLE_VARS {
            return Err(BoolFnError::TooManyVars { n, max: MAX_TABLE_VARS });
        }
        if words.len() != word_count(n) {
            return Err(BoolFnError::LengthMismatch { expected: word_count(n), got: words.len() });
        }
        let mut t = TruthTable { n, words };
        t.clear_tail();
        Ok(t)
    }

    fn clear_tail(&mut self) {
        self.words[0] &= tail_mask(self.n);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of entries, `2^n`.
    pub fn len(&self) -> u64 {
        1u64 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    pub fn get(&self, x: u64) -> bool {
        (self.words[(x >> 6) as usize] >> (x & 63)) & 1 == 1
    }

    pub fn set(&mut self, x: u64, bit: bool) {
        let w = &mut self.words[(x >> 6) as usize];
        if bit {
            *w |= 1 << (x & 63);
        } else {
            *w &= !(1 << (x & 63));
        }
    }

    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.weight() * 2 == self.len()
    }

    pub fn complement(&self) -> TruthTable {
        let mut t = TruthTable { n: self.n, words: self.words.iter().map(|w| !w).collect() };
        t.clear_tail();
        t
    }

    pub fn xor(&self, other: &TruthTable) -> Result<TruthTable, BoolFnError> {
        if self.n != other.n {
            return Err(BoolFnError::LengthMismatch { expected: 1 << self.n, got: 1 << other.n });
        }
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect();
        Ok(TruthTable { n: self.n, words })
    }

    /// True when `self & other` is the zero function.
    pub fn disjoint(&self, other: &TruthTable) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Inputs where the function is 1, in increasing order.
    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as u64;
                w &= w - 1;
                Some(((i as u64) << 6) | b)
            })
        })
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |x| self.get(x))
    }
}

impl std::fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TruthTable(n={}, ", self.n)?;
        if self.n <= 6 {
            for b in self.bits() {
                write!(f, "{}", b as u8)?;
            }
        } else {
            write!(f, "weight={}", self.weight())?;
        }
        write!(f, ")")
    }
}
