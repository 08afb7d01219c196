use std::collections::VecDeque;
use std::fmt;

use rayon::prelude::*;

use super::{anf_to_tt, AnfPoly, BoolFnError, TruthTable};

/// Default bound on the elimination matrix, in bytes.
pub const DEFAULT_MEMORY_CEILING: usize = 1 << 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AiResult {
    /// The immunity when `exact`, otherwise `max_deg + 1` as a lower bound.
    pub ai: u32,
    pub exact: bool,
}

impl fmt::Display for AiResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            write!(f, "{}", self.ai)
        } else {
            write!(f, "> {}", self.ai - 1)
        }
    }
}

/// ⌈n/2⌉, the largest immunity an n-variable function can have.
pub fn default_ai_cap(n: usize) -> u32 {
    n.div_ceil(2) as u32
}

/// Monomial masks of degree ≤ d over n variables, by degree then value.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<u64> {
    let mut out = vec![0u64];
    for k in 1..=d.min(n as u32) {
        // Gosper's hack over k-subsets.
        let mut m: u64 = (1u64 << k) - 1;
        while m < (1u64 << n) {
            out.push(m);
            let c = m & m.wrapping_neg();
            let r = m + c;
            m = (((r ^ m) >> 2) / c) | r;
        }
    }
    out
}

pub fn monomial_count(n: usize, d: u32) -> usize {
    let mut total = 1usize;
    let mut binom = 1usize;
    for k in 1..=d.min(n as u32) as usize {
        binom = binom * (n - k + 1) / k;
        total += binom;
    }
    total
}

struct Rref {
    words: usize,
    rows: Vec<u64>,
    pivots: Vec<usize>,
    is_pivot: Vec<bool>,
}

impl Rref {
    fn new(cols: usize) -> Self {
        Rref { words: cols.div_ceil(64), rows: Vec::new(), pivots: Vec::new(), is_pivot: vec![false; cols] }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Inserts a row, keeping the basis fully reduced. Returns whether the rank grew.
    fn insert(&mut self, mut r: Vec<u64>) -> bool {
        let w = self.words;
        for (i, &p) in self.pivots.iter().enumerate() {
            if r[p >> 6] >> (p & 63) & 1 == 1 {
                for (a, b) in r.iter_mut().zip(&self.rows[i * w..(i + 1) * w]) {
                    *a ^= b;
                }
            }
        }
        let Some(q) = r.iter().enumerate().find(|(_, &x)| x != 0).map(|(j, x)| j * 64 + x.trailing_zeros() as usize) else {
            return false;
        };
        let eliminate = |row: &mut [u64]| {
            if row[q >> 6] >> (q & 63) & 1 == 1 {
                for (a, b) in row.iter_mut().zip(&r) {
                    *a ^= b;
                }
            }
        };
        if self.rows.len() > 1 << 16 {
            self.rows.par_chunks_mut(w).for_each(eliminate);
        } else {
            self.rows.chunks_mut(w).for_each(eliminate);
        }
        self.rows.extend_from_slice(&r);
        self.pivots.push(q);
        self.is_pivot[q] = true;
        true
    }

    /// A nonzero kernel vector with the given free column set to 1.
    fn null_vector(&self, free: usize) -> Vec<u64> {
        let w = self.words;
        let mut x = vec![0u64; w];
        x[free >> 6] |= 1 << (free & 63);
        for (i, &p) in self.pivots.iter().enumerate() {
            if self.rows[i * w + (free >> 6)] >> (free & 63) & 1 == 1 {
                x[p >> 6] |= 1 << (p & 63);
            }
        }
        x
    }
}

fn scramble(x: u64) -> u64 {
    x.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(29)
}

/// Searches for a nonzero g of degree ≤ d with g·f = 0.
///
/// Rows of the system are the points of supp(f), fed lazily; whenever the
/// partial system has a kernel, a candidate is checked against the whole table
/// and any violated points are fed next.
pub fn find_annihilator(tt: &TruthTable, d: u32, memory_ceiling: usize) -> Result<Option<AnfPoly>, BoolFnError> {
    let n = tt.n();
    if tt.weight() == 0 {
        return Ok(Some(AnfPoly::from_masks(n, [0]).expect("constant")));
    }
    let cols = monomial_count(n, d);
    let bytes = cols.saturating_mul(cols.div_ceil(64)).saturating_mul(8);
    if bytes > memory_ceiling {
        return Err(BoolFnError::MemoryCeiling { bytes, ceiling: memory_ceiling });
    }
    let monos = monomials_up_to(n, d);
    let mut pending: Vec<u64> = tt.support().collect();
    pending.sort_by_key(|&x| scramble(x));
    let mut queue: VecDeque<u64> = pending.into();
    let mut used = TruthTable::zero(n)?;
    let mut m = Rref::new(cols);
    let mut fed = 0usize;
    let mut next_check = cols + 32;

    let to_anf = |v: &[u64]| {
        AnfPoly::from_masks(n, (0..cols).filter(|&j| v[j >> 6] >> (j & 63) & 1 == 1).map(|j| monos[j])).expect("in range")
    };

    while let Some(x) = queue.pop_front() {
        if used.get(x) {
            continue;
        }
        used.set(x, true);
        fed += 1;
        let mut row = vec![0u64; m.words];
        for (j, &mono) in monos.iter().enumerate() {
            if mono & !x == 0 {
                row[j >> 6] |= 1 << (j & 63);
            }
        }
        m.insert(row);
        if m.rank() == cols {
            return Ok(None);
        }
        if fed >= next_check && !queue.is_empty() {
            let free = (0..cols).rev().find(|&c| !m.is_pivot[c]).expect("rank < cols");
            let g = to_anf(&m.null_vector(free));
            let gt = anf_to_tt(&g)?;
            if gt.disjoint(tt) {
                return Ok(Some(g));
            }
            let mut bad = 0usize;
            for w in gt.support().filter(|&y| tt.get(y) && !used.get(y)).take(64) {
                queue.push_front(w);
                bad += 1;
            }
            next_check = fed + bad.max(1) + (cols - m.rank()).min(256);
        }
    }
    let free = (0..cols).rev().find(|&c| !m.is_pivot[c]).expect("rank < cols");
    Ok(Some(to_anf(&m.null_vector(free))))
}

pub fn algebraic_immunity(tt: &TruthTable, max_deg: u32) -> Result<AiResult, BoolFnError> {
    algebraic_immunity_with(tt, max_deg, DEFAULT_MEMORY_CEILING)
}

pub fn algebraic_immunity_with(tt: &TruthTable, max_deg: u32, memory_ceiling: usize) -> Result<AiResult, BoolFnError> {
    let w = tt.weight();
    if w == 0 || w == tt.len() {
        return Ok(AiResult { ai: 0, exact: true });
    }
    let comp = tt.complement();
    for d in 1..=max_deg {
        if find_annihilator(tt, d, memory_ceiling)?.is_some() || find_annihilator(&comp, d, memory_ceiling)?.is_some() {
            return Ok(AiResult { ai: d, exact: true });
        }
    }
    Ok(AiResult { ai: max_deg + 1, exact: false })
}
