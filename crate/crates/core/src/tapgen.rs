//! Tap-position selection: the fixed P1/S0 construction, the seeded
//! shuffle used for the remaining lists, and the cartesian check.

use std::collections::BTreeSet;

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
pub enum TapError {
    #[error("cannot pick {r1}+{r2} positions from {l} avoiding {avoid}")]
    Infeasible { l: usize, r1: usize, r2: usize, avoid: usize },
    #[error("n0 = {0} must be even and positive")]
    OddN0(usize),
    #[error("1 + n0*p1 = {need} exceeds kappa1 - delta = {limit}")]
    S0TooLong { need: usize, limit: usize },
    #[error("LFSR tap {0} exceeds kappa2 - delta")]
    ATooHigh(usize),
    #[error("register of {0} bits is not longer than delta")]
    Delta(usize),
}

/// xorshift64* with the multiplier 2685821657736338717.
#[derive(Clone, Debug)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    /// A zero seed would stick at zero and is replaced by a fixed constant.
    pub fn new(seed: u64) -> Self {
        XorShift64Star { state: if seed == 0 { 0x9E37_79B9_7F4A_7C15 } else { seed } }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(2_685_821_657_736_338_717)
    }

    /// Uniform in 0..n from the top bits, by rejection.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        if n == 1 {
            return 0;
        }
        let bits = 64 - (n - 1).leading_zeros();
        loop {
            let r = self.next_u64() >> (64 - bits);
            if r < n {
                return r;
            }
        }
    }

    pub fn shuffle<T>(&mut self, a: &mut [T]) {
        for i in (1..a.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            a.swap(i, j);
        }
    }
}

/// P1 = (1..p1); S0 = (1+p1, 1+2p1, .., 1+(n0/2)p1, 1+n0p1, 1+(n0-1)p1, .., 1+(n0/2+1)p1).
pub fn p1_s0_lists(p1: usize, n0: usize) -> (Vec<usize>, Vec<usize>) {
    let p = (1..=p1).collect();
    let half = n0 / 2;
    let s0 = (1..=half).map(|i| 1 + i * p1).chain((half + 1..=n0).rev().map(|i| 1 + i * p1)).collect();
    (p, s0)
}

/// True iff all sums a + b (a in P1, b in S0) are distinct.
pub fn check_cartesian(p1: &[usize], s0: &[usize]) -> bool {
    let sums: BTreeSet<usize> = p1.iter().flat_map(|a| s0.iter().map(move |b| a + b)).collect();
    sums.len() == p1.len() * s0.len()
}

pub fn pick_with(
    rng: &mut XorShift64Star,
    l: usize,
    r1: usize,
    r2: usize,
    avoid: &BTreeSet<usize>,
) -> Result<(Vec<usize>, Vec<usize>), TapError> {
    let avoid: Vec<usize> = avoid.iter().copied().filter(|&x| x < l).collect();
    let err = TapError::Infeasible { l, r1, r2, avoid: avoid.len() };
    let free = l.checked_sub(avoid.len()).ok_or(err.clone())?;
    if r1 + r2 > free {
        return Err(err);
    }
    let mut arr = vec![0u8; free];
    arr[..r1].fill(1);
    arr[r1..r1 + r2].fill(2);
    for _ in 0..4 {
        rng.shuffle(&mut arr);
    }
    for &pos in &avoid {
        arr.insert(pos, 3);
    }
    let set1 = arr.iter().enumerate().filter(|(_, &m)| m == 1).map(|(i, _)| i).collect();
    let set2 = arr.iter().enumerate().filter(|(_, &m)| m == 2).map(|(i, _)| i).collect();
    Ok((set1, set2))
}

/// Two disjoint subsets of {0..l-1} of sizes r1 and r2 avoiding `avoid`,
/// each returned in ascending order.
pub fn shuffled_disjoint_pick(
    l: usize,
    r1: usize,
    r2: usize,
    avoid: &BTreeSet<usize>,
    seed: u64,
) -> Result<(Vec<usize>, Vec<usize>), TapError> {
    pick_with(&mut XorShift64Star::new(seed), l, r1, r2, avoid)
}

#[derive(Clone, Debug)]
pub struct TapRequest {
    pub kappa1: usize,
    pub kappa2: usize,
    pub delta: usize,
    pub n0: usize,
    pub n1: usize,
    pub p0: usize,
    pub p1: usize,
    pub q0: usize,
    pub q1: usize,
    pub a: Vec<usize>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TapLists {
    pub s0: Vec<usize>,
    pub s1: Vec<usize>,
    pub p0: Vec<usize>,
    pub p1: Vec<usize>,
    pub q0: Vec<usize>,
    pub q1: Vec<usize>,
}

impl TapLists {
    /// Config-file lines, as read by the instance parser.
    pub fn to_config(&self) -> String {
        let fmt = |v: &[usize]| format!("[{}]", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
        format!(
            "S0: {}\nS1: {}\nP0: {}\nP1: {}\nQ0: {}\nQ1: {}\n",
            fmt(&self.s0),
            fmt(&self.s1),
            fmt(&self.p0),
            fmt(&self.p1),
            fmt(&self.q0),
            fmt(&self.q1)
        )
    }
}

/// Q0, Q1 from {0..κ2-δ}∖A; P1, S0 by formula; S1 = {0} ∪ pick and P0
/// from {0..κ1-δ}∖(P1∪S0∪{0}).
pub fn generate_taps(req: &TapRequest) -> Result<TapLists, TapError> {
    if req.n0 == 0 || !req.n0.is_multiple_of(2) {
        return Err(TapError::OddN0(req.n0));
    }
    if req.kappa1 <= req.delta {
        return Err(TapError::Delta(req.kappa1));
    }
    if req.kappa2 <= req.delta {
        return Err(TapError::Delta(req.kappa2));
    }
    let n_lim = req.kappa1 - req.delta;
    let l_lim = req.kappa2 - req.delta;
    let need = 1 + req.n0 * req.p1;
    if need > n_lim {
        return Err(TapError::S0TooLong { need, limit: n_lim });
    }
    if let Some(&bad) = req.a.iter().find(|&&x| x > l_lim) {
        return Err(TapError::ATooHigh(bad));
    }
    let mut rng = XorShift64Star::new(req.seed);
    let mut avoid_l: BTreeSet<usize> = req.a.iter().copied().collect();
    avoid_l.insert(0);
    let (q0, q1) = pick_with(&mut rng, l_lim + 1, req.q0, req.q1, &avoid_l)?;
    let (p1, s0) = p1_s0_lists(req.p1, req.n0);
    let mut avoid_n: BTreeSet<usize> = p1.iter().chain(&s0).copied().collect();
    avoid_n.insert(0);
    let (s1_rest, p0) = pick_with(&mut rng, n_lim + 1, req.n1.saturating_sub(1), req.p0, &avoid_n)?;
    let mut s1 = vec![0];
    s1.extend(s1_rest);
    Ok(TapLists { s0, s1, p0, p1, q0, q1 })
}
