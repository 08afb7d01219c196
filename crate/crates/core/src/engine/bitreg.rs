/// Fixed-length bit register with O(1) shifts: the logical window slides
/// through a larger packed buffer and is copied back to the start when it
/// reaches either end.
#[derive(Clone)]
pub struct BitReg {
    buf: Vec<u64>,
    head: usize,
    len: usize,
}

const MARGIN: usize = 64;

impl BitReg {
    pub fn zeros(len: usize) -> Self {
        let cap_bits = 2 * len + 4 * MARGIN;
        BitReg { buf: vec![0; cap_bits.div_ceil(64)], head: MARGIN, len }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut r = BitReg::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            r.set(i, b);
        }
        r
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        let p = self.head + i;
        self.buf[p >> 6] >> (p & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.len);
        let p = self.head + i;
        let w = &mut self.buf[p >> 6];
        *w = (*w & !(1 << (p & 63))) | ((b as u64) << (p & 63));
    }

    pub fn flip(&mut self, i: usize) {
        let p = self.head + i;
        self.buf[p >> 6] ^= 1 << (p & 63);
    }

    fn capacity(&self) -> usize {
        self.buf.len() * 64
    }

    fn rebase(&mut self) {
        let bits = self.to_bits();
        self.buf.iter_mut().for_each(|w| *w = 0);
        self.head = MARGIN;
        for (i, b) in bits.into_iter().enumerate() {
            self.set(i, b);
        }
    }

    /// Drops bit 0, moves every bit down one place and appends `b` at the top.
    #[inline]
    pub fn shift_in(&mut self, b: bool) {
        if self.head + self.len + 1 > self.capacity() {
            self.rebase();
        }
        let old = self.head;
        self.buf[old >> 6] &= !(1 << (old & 63));
        self.head += 1;
        self.set(self.len - 1, b);
    }

    /// Inverse of `shift_in`: drops the top bit and inserts `b` at position 0.
    pub fn shift_out(&mut self, b: bool) {
        if self.head == 0 {
            self.rebase();
        }
        let top = self.head + self.len - 1;
        self.buf[top >> 6] &= !(1 << (top & 63));
        self.head -= 1;
        self.set(0, b);
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl PartialEq for BitReg {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && (0..self.len).all(|i| self.get(i) == other.get(i))
    }
}

impl Eq for BitReg {}

impl std::fmt::Debug for BitReg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn matches_vec_model(init in proptest::collection::vec(any::<bool>(), 1..200), ops in proptest::collection::vec((any::<bool>(), any::<bool>()), 0..2000)) {
            let mut r = BitReg::from_bits(&init);
            let mut model = init.clone();
            for (fwd, b) in ops {
                if fwd {
                    r.shift_in(b);
                    model.remove(0);
                    model.push(b);
                } else {
                    r.shift_out(b);
                    model.pop();
                    model.insert(0, b);
                }
                prop_assert_eq!(r.get(0), model[0]);
            }
            prop_assert_eq!(r.to_bits(), model);
        }
    }
}
