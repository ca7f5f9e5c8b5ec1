//! Entrywise subtraction of bit vectors and the three ways of turning
//! `S(2) - S^(tau)(2)` into a binary expansion:
//!
//! 1. [`TernaryVector::normalize_to_binary`]: an LSB-to-MSB borrow pass over
//!    the `{-1, 0, 1}` digits (with [`TernaryVector::transfer_blocks`] as a
//!    literal replay of the `-1 0...0 1 -> 1...1 0` block rewrites).
//! 2. [`bignum_expand_oracle`]: exact big-integer subtraction.
//! 3. [`two_adic_difference_oracle`]: digit-serial subtraction of the two
//!    infinite periodic 2-adic expansions, reading off the periodic tail.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::Serialize;

use crate::bitseq::{BitVector, PeriodicSequence};
use crate::error::{Error, Result};

/// Default oracle horizon as a multiple of the period.
pub const DEFAULT_HORIZON_FACTOR: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Negative => "negative",
            Sign::Zero => "zero",
            Sign::Positive => "positive",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Vector over `{-1, 0, 1}`, index 0 least significant.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TernaryVector {
    entries: Vec<i8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct TernaryCounts {
    pub minus: usize,
    pub zero: usize,
    pub plus: usize,
}

/// Sign plus fixed-width magnitude bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigBinary {
    pub sign: Sign,
    pub magnitude: BitVector,
}

impl BigBinary {
    pub fn magnitude_value(&self) -> BigUint {
        to_biguint(&self.magnitude)
    }

    pub fn value(&self) -> BigInt {
        let m = BigInt::from(self.magnitude_value());
        if self.sign == Sign::Negative { -m } else { m }
    }

    /// `N_1`, the number of ones in the expansion.
    pub fn n_ones(&self) -> usize {
        self.magnitude.weight()
    }
}

/// Output of [`TernaryVector::normalize_to_binary`]; `weight_change` is
/// `wt(delta) - wt(gamma)`, i.e. `sum_j (k_j - 1)` over the rewritten blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub expansion: BigBinary,
    pub weight_change: i64,
}

/// Output of [`TernaryVector::transfer_blocks`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockTransfer {
    pub sign: Sign,
    pub delta: BitVector,
    /// Number of zeros `k_j` inside each rewritten block, in rewrite order.
    pub block_zeros: Vec<usize>,
}

impl TernaryVector {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if let Some(&bad) = entries.iter().find(|e| !(-1..=1).contains(*e)) {
            return Err(Error::InvalidTernaryEntry(bad));
        }
        Ok(TernaryVector { entries })
    }

    pub fn zeros(len: usize) -> Self {
        TernaryVector {
            entries: vec![0; len],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn counts(&self) -> TernaryCounts {
        let mut c = TernaryCounts::default();
        for &e in &self.entries {
            match e {
                -1 => c.minus += 1,
                0 => c.zero += 1,
                _ => c.plus += 1,
            }
        }
        c
    }

    /// Number of nonzero entries.
    pub fn weight(&self) -> usize {
        self.entries.iter().filter(|&&e| e != 0).count()
    }

    pub fn negate(&self) -> TernaryVector {
        TernaryVector {
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    /// `sum_i c_i 2^i` as an exact integer.
    pub fn value(&self) -> BigInt {
        self.entries
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, &e| (acc << 1u32) + BigInt::from(e))
    }

    /// Sign of the value, read from the most significant nonzero entry.
    pub fn sign(&self) -> Sign {
        match self.entries.iter().rev().find(|&&e| e != 0) {
            None => Sign::Zero,
            Some(&1) => Sign::Positive,
            Some(_) => Sign::Negative,
        }
    }

    fn nonnegative(&self) -> (Sign, TernaryVector) {
        let sign = self.sign();
        if sign == Sign::Negative {
            (sign, self.negate())
        } else {
            (sign, self.clone())
        }
    }

    /// Binary expansion of `|value|` at the same width, via one borrow pass
    /// from the least significant digit (negating first if the value is
    /// negative).
    pub fn normalize_to_binary(&self) -> Normalized {
        let (sign, g) = self.nonnegative();
        let mut out = BitVector::zeros(g.len());
        let mut borrow = 0i8;
        for (i, &c) in g.entries.iter().enumerate() {
            let d = c - borrow;
            if d < 0 {
                out.set(i, d == -1);
                borrow = 1;
            } else {
                out.set(i, d == 1);
                borrow = 0;
            }
        }
        debug_assert_eq!(borrow, 0, "nonnegative value leaves no borrow");
        let weight_change = out.weight() as i64 - g.weight() as i64;
        Normalized {
            expansion: BigBinary {
                sign,
                magnitude: out,
            },
            weight_change,
        }
    }

    /// Replays the block rewriting literally: repeatedly take the highest
    /// `-1`, find the next nonzero digit above it (necessarily `+1`), and
    /// replace `-1 0^k 1` by `1^(k+1) 0`.
    pub fn transfer_blocks(&self) -> BlockTransfer {
        let (sign, g) = self.nonnegative();
        let mut c = g.entries;
        let mut block_zeros = Vec::new();
        while let Some(i) = c.iter().rposition(|&e| e == -1) {
            let j = (i + 1..c.len())
                .find(|&j| c[j] != 0)
                .expect("a -1 with nothing above it would make the value negative");
            debug_assert_eq!(c[j], 1);
            c[i..j].fill(1);
            c[j] = 0;
            block_zeros.push(j - i - 1);
        }
        BlockTransfer {
            sign,
            delta: BitVector::from_bools(c.iter().map(|&e| e == 1)),
            block_zeros,
        }
    }
}

/// `a - b` entrywise, without borrow.
pub fn binary_subtract(a: &BitVector, b: &BitVector) -> Result<TernaryVector> {
    a.check_len(b)?;
    Ok(TernaryVector {
        entries: a
            .iter()
            .zip(b.iter())
            .map(|(x, y)| i8::from(x) - i8::from(y))
            .collect(),
    })
}

/// Block-transfer route for a pair of bit vectors.
pub fn block_transfer_expand(a: &BitVector, b: &BitVector) -> Result<BigBinary> {
    Ok(binary_subtract(a, b)?.normalize_to_binary().expansion)
}

pub fn to_biguint(v: &BitVector) -> BigUint {
    let digits: Vec<u32> = v
        .words()
        .iter()
        .flat_map(|&w| [w as u32, (w >> 32) as u32])
        .collect();
    BigUint::new(digits)
}

/// Sign and fixed-width binary expansion of `|A - B|` with `A = sum a_i 2^i`
/// and `B = sum b_i 2^i`, computed with exact big integers.
pub fn bignum_expand_oracle(a: &BitVector, b: &BitVector) -> Result<BigBinary> {
    a.check_len(b)?;
    let (x, y) = (to_biguint(a), to_biguint(b));
    let (sign, diff) = match x.cmp(&y) {
        std::cmp::Ordering::Greater => (Sign::Positive, x - y),
        std::cmp::Ordering::Less => (Sign::Negative, y - x),
        std::cmp::Ordering::Equal => (Sign::Zero, BigUint::zero()),
    };
    Ok(BigBinary {
        sign,
        magnitude: BitVector::from_words(diff.to_u64_digits(), a.len()),
    })
}

/// Eventually periodic part of a 2-adic expansion: strictly periodic from
/// digit `preperiod` on, with one full period in `period_bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoAdicTail {
    pub preperiod: usize,
    pub period_bits: BitVector,
}

impl TwoAdicTail {
    pub fn ones(&self) -> usize {
        self.period_bits.weight()
    }

    /// `sum (-1)^(u_i)` over one period.
    pub fn correlation(&self) -> i64 {
        self.period_bits.len() as i64 - 2 * self.ones() as i64
    }
}

/// Subtracts the 2-adic expansions of `s` and its `tau`-shift digit by digit
/// over `horizon` digits and returns the periodic tail of the difference.
pub fn two_adic_difference_oracle(
    s: &PeriodicSequence,
    tau: i64,
    horizon: usize,
) -> Result<TwoAdicTail> {
    let t = s.period();
    if tau < 1 || tau >= t as i64 {
        return Err(Error::TauOutOfRange { tau, period: t });
    }
    let min = 3 * t;
    if horizon < min {
        return Err(Error::HorizonTooSmall {
            horizon,
            period: t,
            min,
        });
    }
    let tau = tau as usize;
    let bits = s.first_period();
    let mut digits = Vec::with_capacity(horizon);
    // borrows[i] is the borrow into digit i
    let mut borrows = Vec::with_capacity(horizon + 1);
    let mut borrow = 0i8;
    for i in 0..horizon {
        borrows.push(borrow);
        let d = i8::from(bits.get(i % t)) - i8::from(bits.get((i + tau) % t)) - borrow;
        digits.push(d.rem_euclid(2) == 1);
        borrow = i8::from(d < 0);
    }
    borrows.push(borrow);

    // Same (position mod T, borrow) state at j and j + T means the digit
    // stream repeats from j on.
    let mut j = (0..=horizon - t)
        .find(|&j| borrows[j] == borrows[j + t])
        .ok_or(Error::PeriodicityNotDetected(horizon))?;
    while j > 0 && digits[j - 1] == digits[j - 1 + t] {
        j -= 1;
    }
    Ok(TwoAdicTail {
        preperiod: j,
        period_bits: BitVector::from_bools(digits[j..j + t].iter().copied()),
    })
}

impl fmt::Display for TernaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self
            .entries
            .iter()
            .map(|e| match e {
                -1 => 'N',
                0 => '0',
                _ => '1',
            })
            .collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for TernaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TernaryVector({self})")
    }
}

/// Characters `1`, `0`, `N` (for -1), index 0 leftmost.
impl FromStr for TernaryVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Empty);
        }
        let entries = s
            .chars()
            .map(|c| match c {
                '1' => Ok(1),
                '0' => Ok(0),
                'N' | 'n' => Ok(-1),
                other => Err(Error::InvalidTernaryChar(other)),
            })
            .collect::<Result<Vec<i8>>>()?;
        Ok(TernaryVector { entries })
    }
}
