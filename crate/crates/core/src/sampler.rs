//! Deterministic instance selection, bit-exact with CPython's `random.Random`.
//!
//! Evaluation sets are drawn with `Random(seed).sample(range(n), k)` semantics
//! so that published instance selections can be reproduced without a Python
//! runtime. This module reimplements the three layers that sequence the draws:
//! the MT19937 generator (seeded via `init_by_array` over the little-endian
//! 32-bit limbs of the seed), bounded integers by rejection over
//! `getrandbits(bit_length(n))`, and the two-branch selection sampler.
//!
//! Scope is limited to `n`, `k` < 2^32 and bit draws of at most 32 bits, which
//! covers every bundled task population. Fixtures for the expected outputs
//! live in `data/oracles/` and were generated once by
//! `scripts/gen_rng_fixtures.py`; the tests never invoke Python.

use std::collections::HashSet;

use crate::error::{Error, Result};

const N: usize = 624;
const M: usize = 397;
const MATRIX_A: u32 = 0x9908_b0df;
const UPPER_MASK: u32 = 0x8000_0000;
const LOWER_MASK: u32 = 0x7fff_ffff;

/// MT19937 state: 624 words plus a cursor in `[0, 624]`.
///
/// The state only advances; there is no rewind.
pub struct Mt19937 {
    mt: [u32; N],
    index: usize,
}

impl Mt19937 {
    /// Seed exactly as `random.Random(seed)` does for a non-negative integer:
    /// `init_genrand(19650218)` followed by `init_by_array` over the seed's
    /// 32-bit little-endian limbs (zero encodes as the single limb `[0]`).
    pub fn seeded(seed: u64) -> Self {
        let mut key = vec![(seed & 0xffff_ffff) as u32];
        if seed >> 32 != 0 {
            key.push((seed >> 32) as u32);
        }
        Self::from_key(&key)
    }

    /// Seed from an explicit `init_by_array` key.
    pub fn from_key(key: &[u32]) -> Self {
        let mut rng = Mt19937 {
            mt: [0; N],
            index: N,
        };
        rng.init_by_array(key);
        rng
    }

    fn init_genrand(&mut self, seed: u32) {
        self.mt[0] = seed;
        for i in 1..N {
            self.mt[i] = 1_812_433_253u32
                .wrapping_mul(self.mt[i - 1] ^ (self.mt[i - 1] >> 30))
                .wrapping_add(i as u32);
        }
        self.index = N;
    }

    fn init_by_array(&mut self, key: &[u32]) {
        assert!(!key.is_empty(), "seed key must be non-empty");
        self.init_genrand(19_650_218);
        let mut i = 1usize;
        let mut j = 0usize;
        let mut k = N.max(key.len());
        while k > 0 {
            self.mt[i] = (self.mt[i]
                ^ (self.mt[i - 1] ^ (self.mt[i - 1] >> 30)).wrapping_mul(1_664_525))
            .wrapping_add(key[j])
            .wrapping_add(j as u32);
            i += 1;
            j += 1;
            if i >= N {
                self.mt[0] = self.mt[N - 1];
                i = 1;
            }
            if j >= key.len() {
                j = 0;
            }
            k -= 1;
        }
        k = N - 1;
        while k > 0 {
            self.mt[i] = (self.mt[i]
                ^ (self.mt[i - 1] ^ (self.mt[i - 1] >> 30)).wrapping_mul(1_566_083_941))
            .wrapping_sub(i as u32);
            i += 1;
            if i >= N {
                self.mt[0] = self.mt[N - 1];
                i = 1;
            }
            k -= 1;
        }
        self.mt[0] = 0x8000_0000;
        self.index = N;
    }

    fn next_word(&mut self) -> u32 {
        if self.index >= N {
            for kk in 0..N {
                let y = (self.mt[kk] & UPPER_MASK) | (self.mt[(kk + 1) % N] & LOWER_MASK);
                let mut next = self.mt[(kk + M) % N] ^ (y >> 1);
                if y & 1 == 1 {
                    next ^= MATRIX_A;
                }
                self.mt[kk] = next;
            }
            self.index = 0;
        }
        let mut y = self.mt[self.index];
        self.index += 1;
        y ^= y >> 11;
        y ^= (y << 7) & 0x9d2c_5680;
        y ^= (y << 15) & 0xefc6_0000;
        y ^= y >> 18;
        y
    }

    /// Top `k` bits of the next tempered 32-bit word.
    pub fn getrandbits(&mut self, k: u32) -> Result<u32> {
        if k == 0 || k > 32 {
            return Err(Error::InvalidBitCount(k));
        }
        Ok(self.next_word() >> (32 - k))
    }

    /// Uniform integer in `[0, n)` by rejection over
    /// `getrandbits(bit_length(n))`. Consumes a variable number of draws.
    pub fn randbelow(&mut self, n: u32) -> Result<u32> {
        if n == 0 {
            return Err(Error::InvalidBound);
        }
        let k = 32 - n.leading_zeros();
        loop {
            let r = self.getrandbits(k)?;
            if r < n {
                return Ok(r);
            }
        }
    }

    /// `k` distinct indices from `[0, n)` in selection (emission) order.
    ///
    /// Replicates the reference sampler's branch heuristic exactly:
    /// `setsize = 21 (+ 4^ceil(log4(3k)) when k > 5)`. Populations at most
    /// `setsize` use a partial Fisher-Yates pool; larger populations use
    /// rejection against the set of already-selected indices. The two
    /// branches consume different draw sequences and are not interchangeable.
    pub fn sample_indices(&mut self, n: usize, k: usize) -> Result<Vec<usize>> {
        if n > u32::MAX as usize {
            return Err(Error::PopulationTooLarge(n));
        }
        if k > n {
            return Err(Error::SampleTooLarge { n, k });
        }
        let mut result = Vec::with_capacity(k);
        if k == 0 {
            return Ok(result);
        }
        let mut setsize: u64 = 21;
        if k > 5 {
            let exp = ((k as f64 * 3.0).ln() / 4.0f64.ln()).ceil() as u32;
            setsize += 4u64.pow(exp);
        }
        if n as u64 <= setsize {
            let mut pool: Vec<u32> = (0..n as u32).collect();
            for i in 0..k {
                let j = self.randbelow((n - i) as u32)? as usize;
                result.push(pool[j] as usize);
                pool[j] = pool[n - i - 1];
            }
        } else {
            let mut selected: HashSet<u32> = HashSet::with_capacity(k);
            for _ in 0..k {
                let mut j = self.randbelow(n as u32)?;
                while selected.contains(&j) {
                    j = self.randbelow(n as u32)?;
                }
                selected.insert(j);
                result.push(j as usize);
            }
        }
        Ok(result)
    }
}

impl std::fmt::Debug for Mt19937 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Mt19937")
            .field("index", &self.index)
            .finish()
    }
}
