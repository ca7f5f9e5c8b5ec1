//! Fibonacci LFSR generation of m-sequences.
//!
//! For `p = X^n + sum_{j<n} c_j X^j` the output obeys
//! `s_{i+n} = sum_{j<n} c_j s_{i+j} (mod 2)`, so `p` is the characteristic
//! polynomial of the sequence.

use crate::bitseq::{BitVector, PeriodicSequence};
use crate::error::{Error, Result};
use crate::gf2poly::Gf2Poly;

/// A primitive polynomial together with a nonzero initial state
/// `(s_0, ..., s_{n-1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LfsrSpec {
    poly: Gf2Poly,
    init_state: BitVector,
}

impl LfsrSpec {
    pub fn new(poly: Gf2Poly, init_state: BitVector) -> Result<Self> {
        let n = poly.degree().unwrap_or(0) as usize;
        if n < 2 || !poly.is_primitive() {
            return Err(Error::NotPrimitive(poly.to_monomial()));
        }
        if init_state.len() != n {
            return Err(Error::InitStateLength {
                expected: n,
                got: init_state.len(),
            });
        }
        if init_state.is_zero() {
            return Err(Error::AllZeroState);
        }
        Ok(LfsrSpec { poly, init_state })
    }

    /// Initial state `(0, ..., 0, 1)`.
    pub fn canonical(poly: Gf2Poly) -> Result<Self> {
        let n = poly.degree().unwrap_or(0) as usize;
        let mut init = BitVector::zeros(n);
        if n > 0 {
            init.set(n - 1, true);
        }
        LfsrSpec::new(poly, init)
    }

    pub fn poly(&self) -> Gf2Poly {
        self.poly
    }

    pub fn degree(&self) -> u32 {
        self.poly.degree().expect("validated at construction")
    }

    pub fn init_state(&self) -> &BitVector {
        &self.init_state
    }

    pub fn period(&self) -> usize {
        (1usize << self.degree()) - 1
    }
}

/// One period (`2^n - 1` terms) of the m-sequence, checked for exact least
/// period.
pub fn generate_m_sequence(spec: &LfsrSpec) -> Result<PeriodicSequence> {
    let n = spec.degree() as usize;
    let t = spec.period();
    let taps = spec.poly.coeffs() & ((1u64 << n) - 1);
    // window bit j holds s_{i+j}
    let mut window: u64 = spec
        .init_state
        .iter()
        .enumerate()
        .filter(|(_, b)| *b)
        .map(|(j, _)| 1u64 << j)
        .sum();
    let mut out = BitVector::zeros(t);
    for i in 0..t {
        out.set(i, window & 1 == 1);
        let next = (window & taps).count_ones() as u64 & 1;
        window = (window >> 1) | (next << (n - 1));
    }
    let seq = PeriodicSequence::new(out)?;
    let least = seq.least_period();
    if least != t {
        return Err(Error::PeriodNotExact {
            expected: t,
            found: least,
        });
    }
    Ok(seq)
}

/// The unique `tau'` with `s + s^(tau) = s^(tau')` (entrywise mod 2).
pub fn shift_and_add_tau_prime(s: &PeriodicSequence, tau: i64) -> Result<usize> {
    let t = s.period();
    let tau = s.reduce_tau(tau);
    if tau == 0 {
        return Err(Error::TauOutOfRange {
            tau: 0,
            period: t,
        });
    }
    let sum = s.first_period().xor(&s.cyclic_shift(tau as i64))?;
    (0..t)
        .find(|&k| s.first_period().rotate(k) == sum)
        .ok_or(Error::NotShiftAndAdd(tau))
}
