//! Periodic binary sequences.
//!
//! A [`BitVector`] stores bits LSB-first: index `i` carries weight `2^i`, so
//! the vector `(s_0, ..., s_{T-1})` evaluates to `S(2)`. Text form prints
//! index 0 leftmost, e.g. `"000111101011001"`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// Fixed-length vector over {0, 1}, packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            words: vec![0; words_for(len)],
            len,
        }
    }

    /// Builds a vector from packed words, clearing any bits at or above `len`.
    pub fn from_words(mut words: Vec<u64>, len: usize) -> Self {
        words.resize(words_for(len), 0);
        let mut v = BitVector { words, len };
        v.mask_tail();
        v
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % WORD_BITS == 0 {
                words.push(0);
            }
            if b {
                words[len / WORD_BITS] |= 1 << (len % WORD_BITS);
            }
            len += 1;
        }
        BitVector { words, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Number of ones.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Indices of the one bits, ascending.
    pub fn ones(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    /// Entrywise addition mod 2.
    pub fn xor(&self, other: &BitVector) -> Result<BitVector> {
        self.check_len(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(BitVector {
            words,
            len: self.len,
        })
    }

    /// Count of positions where both vectors are 1.
    pub fn overlap(&self, other: &BitVector) -> Result<usize> {
        self.check_len(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum())
    }

    /// Cyclic rotation: bit `i` of the result is bit `(i + tau) mod len` of `self`.
    pub fn rotate(&self, tau: usize) -> BitVector {
        if self.len == 0 {
            return self.clone();
        }
        let tau = tau % self.len;
        if tau == 0 {
            return self.clone();
        }
        let low = shr_words(&self.words, tau);
        let high = shl_words(&self.words, self.len - tau);
        let words = low.iter().zip(&high).map(|(a, b)| a | b).collect();
        BitVector::from_words(words, self.len)
    }

    pub(crate) fn check_len(&self, other: &BitVector) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(())
    }

    fn mask_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

// Logical right shift of a word array by `k` bits (towards index 0).
fn shr_words(words: &[u64], k: usize) -> Vec<u64> {
    let (q, r) = (k / WORD_BITS, k % WORD_BITS);
    let n = words.len();
    (0..n)
        .map(|j| {
            let lo = words.get(j + q).copied().unwrap_or(0);
            let hi = words.get(j + q + 1).copied().unwrap_or(0);
            if r == 0 {
                lo
            } else {
                (lo >> r) | (hi << (WORD_BITS - r))
            }
        })
        .collect()
}

// Left shift by `k` bits, keeping the same number of words.
fn shl_words(words: &[u64], k: usize) -> Vec<u64> {
    let (q, r) = (k / WORD_BITS, k % WORD_BITS);
    (0..words.len())
        .map(|j| {
            if j < q {
                return 0;
            }
            let lo = words[j - q];
            if r == 0 {
                lo
            } else {
                let below = if j > q { words[j - q - 1] } else { 0 };
                (lo << r) | (below >> (WORD_BITS - r))
            }
        })
        .collect()
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Empty);
        }
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidBitChar(other)),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BitVector::from_bools(bits))
    }
}

/// One period of a nonzero binary sequence of period `T >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicSequence {
    first_period: BitVector,
}

/// A run statistic: `count` maximal cyclic runs of `bit` with the given length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RunCount {
    pub bit: bool,
    pub length: usize,
    pub count: usize,
}

impl PeriodicSequence {
    pub fn new(first_period: BitVector) -> Result<Self> {
        if first_period.len() < 2 {
            return Err(Error::PeriodTooShort(first_period.len()));
        }
        if first_period.is_zero() {
            return Err(Error::AllZeroSequence);
        }
        Ok(PeriodicSequence { first_period })
    }

    pub fn period(&self) -> usize {
        self.first_period.len()
    }

    pub fn first_period(&self) -> &BitVector {
        &self.first_period
    }

    /// Canonical representative of `tau` modulo the period.
    pub fn reduce_tau(&self, tau: i64) -> usize {
        tau.rem_euclid(self.period() as i64) as usize
    }

    /// `(s_tau, ..., s_{tau+T-1})`, with `tau` reduced modulo `T`.
    pub fn cyclic_shift(&self, tau: i64) -> BitVector {
        self.first_period.rotate(self.reduce_tau(tau))
    }

    /// The sequence started at phase `tau`.
    pub fn shifted(&self, tau: i64) -> PeriodicSequence {
        PeriodicSequence {
            first_period: self.cyclic_shift(tau),
        }
    }

    pub fn weight(&self) -> usize {
        self.first_period.weight()
    }

    /// `sum_i (-1)^(s_i xor s_{i+tau})` over one period.
    pub fn classical_autocorrelation(&self, tau: i64) -> i64 {
        let shifted = self.cyclic_shift(tau);
        let disagreements = self
            .first_period
            .xor(&shifted)
            .expect("shift preserves length")
            .weight();
        self.period() as i64 - 2 * disagreements as i64
    }

    /// Smallest `d` dividing `T` with `s_{i+d} = s_i` for all `i`.
    pub fn least_period(&self) -> usize {
        let t = self.period();
        (1..=t)
            .filter(|&d| t.is_multiple_of(d))
            .find(|&d| d == t || self.first_period.rotate(d) == self.first_period)
            .unwrap_or(t)
    }

    /// Maximal runs of the cyclic word, sorted by (bit, length).
    pub fn run_lengths(&self) -> Vec<RunCount> {
        let t = self.period();
        let bits = &self.first_period;
        let mut tally: BTreeMap<(bool, usize), usize> = BTreeMap::new();
        // Start just after a value change so no run wraps past the origin.
        let Some(start) = (0..t).find(|&i| bits.get(i) != bits.get((i + t - 1) % t)) else {
            // Constant word: one run spanning the whole period.
            tally.insert((bits.get(0), t), 1);
            return flatten(tally);
        };
        let mut run_bit = bits.get(start);
        let mut run_len = 0;
        for k in 0..t {
            let b = bits.get((start + k) % t);
            if b == run_bit {
                run_len += 1;
            } else {
                *tally.entry((run_bit, run_len)).or_default() += 1;
                run_bit = b;
                run_len = 1;
            }
        }
        *tally.entry((run_bit, run_len)).or_default() += 1;
        flatten(tally)
    }

    /// Compares the cyclic runs with the run postulate for an m-sequence of
    /// degree `n`: `2^(n-k-2)` runs of each value for `1 <= k <= n-2`, one
    /// zero-run of length `n-1` and one one-run of length `n`. Returns the
    /// deviations found; empty means the sequence conforms.
    pub fn golomb_run_deviations(&self, n: u32) -> Vec<String> {
        let expected = expected_m_sequence_runs(n);
        let observed = self.run_lengths();
        let mut deviations = Vec::new();
        for e in &expected {
            let got = observed
                .iter()
                .find(|r| r.bit == e.bit && r.length == e.length)
                .map_or(0, |r| r.count);
            if got != e.count {
                deviations.push(format!(
                    "{}-runs of length {}: expected {}, found {}",
                    u8::from(e.bit),
                    e.length,
                    e.count,
                    got
                ));
            }
        }
        for r in &observed {
            if !expected
                .iter()
                .any(|e| e.bit == r.bit && e.length == r.length)
            {
                deviations.push(format!(
                    "unexpected {}-runs of length {}: {}",
                    u8::from(r.bit),
                    r.length,
                    r.count
                ));
            }
        }
        deviations
    }
}

fn flatten(tally: BTreeMap<(bool, usize), usize>) -> Vec<RunCount> {
    tally
        .into_iter()
        .map(|((bit, length), count)| RunCount { bit, length, count })
        .collect()
}

fn expected_m_sequence_runs(n: u32) -> Vec<RunCount> {
    let n = n as usize;
    let mut runs = Vec::new();
    for k in 1..n.saturating_sub(1) {
        for bit in [false, true] {
            runs.push(RunCount {
                bit,
                length: k,
                count: 1 << (n - k - 2),
            });
        }
    }
    if n >= 2 {
        runs.push(RunCount {
            bit: false,
            length: n - 1,
            count: 1,
        });
    }
    runs.push(RunCount {
        bit: true,
        length: n,
        count: 1,
    });
    runs.sort();
    runs
}

impl FromStr for PeriodicSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PeriodicSequence::new(s.parse()?)
    }
}

impl fmt::Display for PeriodicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.first_period.fmt(f)
    }
}
