use rayon::prelude::*;

use super::{BoolFnError, TruthTable, MAX_TABLE_VARS};
use crate::dyadic::Dyadic;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WalshSpectrum {
    n: usize,
    values: Vec<i32>,
}

impl WalshSpectrum {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    pub fn at(&self, alpha: u64) -> i32 {
        self.values[alpha as usize]
    }

    pub fn max_abs(&self) -> u32 {
        self.values.par_iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)
    }

    /// Σ W(α)², which Parseval pins to 4^n.
    pub fn energy(&self) -> u128 {
        self.values.par_iter().map(|&v| (v as i64 * v as i64) as u128).sum()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SpectralProfile {
    pub nl: u64,
    pub lb: Dyadic,
    pub resiliency: i32,
}

const PAR_CHUNK: usize = 1 << 14;

fn butterflies(v: &mut [i32], from: usize, to: usize) {
    let mut h = from;
    while h < to {
        for block in v.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h <<= 1;
    }
}

/// In-place unnormalized Walsh–Hadamard transform.
pub fn fwht_in_place(v: &mut [i32]) {
    let len = v.len();
    assert!(len.is_power_of_two());
    if len <= PAR_CHUNK {
        butterflies(v, 1, len);
        return;
    }
    v.par_chunks_mut(PAR_CHUNK).for_each(|c| butterflies(c, 1, PAR_CHUNK));
    let mut h = PAR_CHUNK;
    while h < len {
        v.par_chunks_mut(2 * h).for_each(|block| {
            let (lo, hi) = block.split_at_mut(h);
            lo.par_chunks_mut(PAR_CHUNK).zip(hi.par_chunks_mut(PAR_CHUNK)).for_each(|(l, r)| {
                for (a, b) in l.iter_mut().zip(r.iter_mut()) {
                    let (x, y) = (*a, *b);
                    *a = x + y;
                    *b = x - y;
                }
            });
        });
        h <<= 1;
    }
}

pub fn walsh_spectrum(tt: &TruthTable) -> Result<WalshSpectrum, BoolFnError> {
    let n = tt.n();
    if n > MAX_TABLE_VARS {
        return Err(BoolFnError::TooManyVars { n, max: MAX_TABLE_VARS });
    }
    let mut values: Vec<i32> = (0..tt.len()).map(|x| if tt.get(x) { -1 } else { 1 }).collect();
    fwht_in_place(&mut values);
    Ok(WalshSpectrum { n, values })
}

/// Profile read off an already computed spectrum.
pub fn profile_of_spectrum(w: &WalshSpectrum) -> SpectralProfile {
    let n = w.n;
    let max = w.max_abs() as u64;
    let nl = (1u64 << n.saturating_sub(1)) - max / 2;
    let nl = if n == 0 { 0 } else { nl };
    let lb = Dyadic::new(max as i128, n as u32);
    let resiliency = if w.values[0] != 0 {
        -1
    } else {
        let min_wt = w
            .values
            .par_iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(a, _)| (a as u64).count_ones())
            .min()
            .unwrap_or(n as u32 + 1);
        min_wt as i32 - 1
    };
    SpectralProfile { nl, lb, resiliency }
}

pub fn spectral_profile(tt: &TruthTable) -> Result<SpectralProfile, BoolFnError> {
    Ok(profile_of_spectrum(&walsh_spectrum(tt)?))
}

/// Packed table of the linear function ⟨α, x⟩.
fn linear_words(n: usize, alpha: u64) -> Vec<u64> {
    const PAT: [u64; 6] = [
        0xAAAA_AAAA_AAAA_AAAA,
        0xCCCC_CCCC_CCCC_CCCC,
        0xF0F0_F0F0_F0F0_F0F0,
        0xFF00_FF00_FF00_FF00,
        0xFFFF_0000_FFFF_0000,
        0xFFFF_FFFF_0000_0000,
    ];
    let low = (0..6).filter(|&i| alpha >> i & 1 == 1).fold(0u64, |acc, i| acc ^ PAT[i]);
    let high = alpha >> 6;
    (0..super::table::word_count(n))
        .map(|j| if (j as u64 & high).count_ones() & 1 == 1 { !low } else { low })
        .collect()
}

/// W_f(α) computed for a single mask.
pub fn walsh_at(tt: &TruthTable, alpha: u64) -> i64 {
    let n = tt.n();
    let lin = linear_words(n, alpha);
    let mask = super::table::tail_mask(n);
    let dist: u64 = tt
        .words()
        .iter()
        .zip(&lin)
        .enumerate()
        .map(|(j, (a, b))| {
            let x = a ^ b;
            (if j == 0 { x & mask } else { x }).count_ones() as u64
        })
        .sum();
    (1i64 << n) - 2 * dist as i64
}

pub fn correlation_at(tt: &TruthTable, alpha: u64) -> Dyadic {
    Dyadic::new(walsh_at(tt, alpha) as i128, tt.n() as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{anf_to_tt, AnfPoly};
    use proptest::prelude::*;

    #[test]
    fn zero_function() {
        let w = walsh_spectrum(&TruthTable::zero(2).unwrap()).unwrap();
        assert_eq!(w.values(), &[4, 0, 0, 0]);
    }

    #[test]
    fn linear_function() {
        let t = anf_to_tt(&AnfPoly::parse(4, "x1 + x3").unwrap()).unwrap();
        let p = spectral_profile(&t).unwrap();
        assert_eq!(p.nl, 0);
        assert_eq!(p.lb, Dyadic::ONE);
        assert_eq!(p.resiliency, 1);
        assert_eq!(correlation_at(&t, 0b0101), Dyadic::ONE);
        let x1 = anf_to_tt(&AnfPoly::parse(1, "x1").unwrap()).unwrap();
        assert_eq!(correlation_at(&x1, 1), Dyadic::ONE);
    }

    #[test]
    fn parallel_path_matches_small_path() {
        let n = 16;
        let t = TruthTable::from_fn(n, |x| (x.wrapping_mul(0x9E37_79B9) >> 7) & 1 == 1).unwrap();
        let w = walsh_spectrum(&t).unwrap();
        let mut v: Vec<i32> = t.bits().map(|b| if b { -1 } else { 1 }).collect();
        butterflies(&mut v, 1, 1 << n);
        assert_eq!(w.values(), &v[..]);
        assert_eq!(w.energy(), 1u128 << (2 * n));
    }

    fn brute_nl(t: &TruthTable) -> u64 {
        let n = t.n();
        (0..(1u64 << n))
            .flat_map(|a| [false, true].map(move |c| (a, c)))
            .map(|(a, c)| (0..t.len()).filter(|&x| t.get(x) != (((a & x).count_ones() & 1 == 1) ^ c)).count() as u64)
            .min()
            .unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn nl_matches_affine_distance(n in 1usize..=8, bits in proptest::collection::vec(any::<bool>(), 256)) {
            let t = TruthTable::from_fn(n, |x| bits[x as usize]).unwrap();
            prop_assert_eq!(spectral_profile(&t).unwrap().nl, brute_nl(&t));
        }

        #[test]
        fn parseval_and_point_values(n in 1usize..=12, seed in any::<u64>()) {
            let t = TruthTable::from_fn(n, |x| (x ^ seed).wrapping_mul(seed | 1).count_ones() & 1 == 1).unwrap();
            let w = walsh_spectrum(&t).unwrap();
            prop_assert_eq!(w.energy(), 1u128 << (2 * n));
            prop_assert_eq!(w.at(0) as i64, (1i64 << n) - 2 * t.weight() as i64);
            for a in [0u64, 1, seed & ((1 << n) - 1)] {
                prop_assert_eq!(w.at(a) as i64, walsh_at(&t, a));
            }
        }

        #[test]
        fn resiliency_boundary(n in 1usize..=10, seed in any::<u64>()) {
            let t = TruthTable::from_fn(n, |x| (x.wrapping_mul(seed | 1) >> 3) & 1 == 1).unwrap();
            let w = walsh_spectrum(&t).unwrap();
            let m = profile_of_spectrum(&w).resiliency;
            for a in 0..(1u64 << n) {
                if (a.count_ones() as i32) <= m {
                    prop_assert_eq!(w.at(a), 0);
                }
            }
            if m >= 0 {
                let nonzero_next = (0..(1u64 << n)).any(|a| a.count_ones() as i32 == m + 1 && w.at(a) != 0);
                prop_assert!(nonzero_next);
            }
        }
    }
}
