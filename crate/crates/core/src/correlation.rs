//! Arithmetic autocorrelation of periodic sequences and the sweeps over
//! all m-sequences of a degree.
//!
//! For `D = S(2) - S^(tau)(2)` with `N_1` ones in the `T`-bit expansion of
//! `|D|`, the correlation is `T - 2 N_1` when `D > 0` and `2 N_1 - T` when
//! `D < 0`. `D = 0` gives `T`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::bitseq::PeriodicSequence;
use crate::error::{Error, Result};
use crate::gf2poly::{enumerate_primitive, Gf2Poly, MAX_ENUM_DEGREE};
use crate::lfsr::{generate_m_sequence, LfsrSpec};
use crate::ternary::{
    bignum_expand_oracle, block_transfer_expand, two_adic_difference_oracle, BigBinary, Sign,
    DEFAULT_HORIZON_FACTOR,
};

/// Default upper degree for sweeps.
pub const DEFAULT_SWEEP_CAP: u32 = 12;
/// Largest period validated when [`Validation::Auto`] is in effect (degree 10).
pub const AUTO_VALIDATE_MAX_PERIOD: usize = 1023;
/// Largest degree accepted by [`phase_invariance_check`].
pub const PHASE_SWEEP_MAX_DEGREE: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftRecord {
    pub tau: usize,
    pub sign: Sign,
    pub n_ones: usize,
    pub correlation: i64,
}

impl ShiftRecord {
    fn from_expansion(tau: usize, period: usize, e: &BigBinary) -> Self {
        let t = period as i64;
        let n_ones = e.n_ones();
        let correlation = match e.sign {
            Sign::Positive => t - 2 * n_ones as i64,
            Sign::Negative => 2 * n_ones as i64 - t,
            Sign::Zero => t,
        };
        ShiftRecord {
            tau,
            sign: e.sign,
            n_ones,
            correlation,
        }
    }

    /// The sign / `N_1` / correlation relation and `|A| <= T`.
    pub fn is_consistent(&self, period: usize) -> bool {
        let t = period as i64;
        let n1 = self.n_ones as i64;
        let rel = match self.sign {
            Sign::Positive => self.correlation == t - 2 * n1,
            Sign::Negative => self.correlation == 2 * n1 - t,
            Sign::Zero => self.correlation == t && n1 == 0,
        };
        rel && self.correlation.abs() <= t
    }
}

/// Big-integer route; `tau` is reduced modulo `T`.
pub fn arithmetic_autocorrelation(s: &PeriodicSequence, tau: i64) -> ShiftRecord {
    let tau = s.reduce_tau(tau);
    let e = bignum_expand_oracle(s.first_period(), &s.cyclic_shift(tau as i64))
        .expect("shift preserves length");
    ShiftRecord::from_expansion(tau, s.period(), &e)
}

/// Correlation of `(s, tau)` by each of the three routes:
/// `[block transfer, big integer, 2-adic tail]`.
pub fn oracle_triangle(s: &PeriodicSequence, tau: i64) -> Result<[i64; 3]> {
    let t = s.period();
    let tau = s.reduce_tau(tau);
    let shifted = s.cyclic_shift(tau as i64);
    let block = ShiftRecord::from_expansion(tau, t, &block_transfer_expand(s.first_period(), &shifted)?);
    let big = ShiftRecord::from_expansion(tau, t, &bignum_expand_oracle(s.first_period(), &shifted)?);
    let two_adic = if tau == 0 {
        t as i64
    } else {
        two_adic_difference_oracle(s, tau as i64, DEFAULT_HORIZON_FACTOR * t)?.correlation()
    };
    Ok([block.correlation, big.correlation, two_adic])
}

/// [`arithmetic_autocorrelation`] cross-checked against the other two routes.
pub fn validated_autocorrelation(s: &PeriodicSequence, tau: i64) -> Result<ShiftRecord> {
    let rec = arithmetic_autocorrelation(s, tau);
    let [block, big, two_adic] = oracle_triangle(s, tau)?;
    if block != big || big != two_adic || big != rec.correlation {
        return Err(Error::OracleMismatch {
            tau: rec.tau,
            detail: format!("block {block}, bignum {big}, 2-adic {two_adic}"),
        });
    }
    Ok(rec)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Validation {
    /// On for periods up to [`AUTO_VALIDATE_MAX_PERIOD`].
    #[default]
    Auto,
    On,
    Off,
}

impl Validation {
    pub fn enabled_for(self, period: usize) -> bool {
        match self {
            Validation::Auto => period <= AUTO_VALIDATE_MAX_PERIOD,
            Validation::On => true,
            Validation::Off => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub max_degree: u32,
    pub validation: Validation,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_degree: DEFAULT_SWEEP_CAP,
            validation: Validation::Auto,
        }
    }
}

impl SweepConfig {
    fn check_degree(&self, n: u32) -> Result<()> {
        let max = self.max_degree.min(MAX_ENUM_DEGREE);
        if !(2..=max).contains(&n) {
            return Err(Error::DegreeOutOfRange {
                degree: n,
                min: 2,
                max,
            });
        }
        Ok(())
    }
}

/// Records for every `1 <= tau < T`, in tau order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrelationSpectrum {
    pub period: usize,
    pub sequence_id: String,
    pub records: Vec<ShiftRecord>,
}

impl CorrelationSpectrum {
    pub fn values(&self) -> Vec<i64> {
        self.records.iter().map(|r| r.correlation).collect()
    }

    pub fn value_set(&self) -> BTreeSet<i64> {
        self.records.iter().map(|r| r.correlation).collect()
    }

    /// `|A|` -> number of shifts.
    pub fn abs_counts(&self) -> BTreeMap<u64, usize> {
        let mut m = BTreeMap::new();
        for r in &self.records {
            *m.entry(r.correlation.unsigned_abs()).or_default() += 1;
        }
        m
    }

    pub fn max_abs(&self) -> i64 {
        self.records
            .iter()
            .map(|r| r.correlation.abs())
            .max()
            .unwrap_or(0)
    }
}

pub fn spectrum(
    s: &PeriodicSequence,
    sequence_id: impl Into<String>,
    validation: Validation,
) -> Result<CorrelationSpectrum> {
    let t = s.period();
    let validate = validation.enabled_for(t);
    let records = (1..t as i64)
        .into_par_iter()
        .map(|tau| {
            if validate {
                validated_autocorrelation(s, tau)
            } else {
                Ok(arithmetic_autocorrelation(s, tau))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CorrelationSpectrum {
        period: t,
        sequence_id: sequence_id.into(),
        records,
    })
}

/// Spectrum of the canonical-phase m-sequence of `poly`.
pub fn m_sequence_spectrum(poly: Gf2Poly, validation: Validation) -> Result<CorrelationSpectrum> {
    let s = generate_m_sequence(&LfsrSpec::canonical(poly)?)?;
    spectrum(&s, format!("{}@canonical", poly.to_hex()), validation)
}

/// Spectra of all m-sequences of degree `n`, ascending by polynomial.
pub fn degree_sweep(n: u32, config: &SweepConfig) -> Result<Vec<(Gf2Poly, CorrelationSpectrum)>> {
    config.check_degree(n)?;
    enumerate_primitive(n)?
        .into_par_iter()
        .map(|p| Ok((p, m_sequence_spectrum(p, config.validation)?)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MaxAbsCheck {
    pub bound: i64,
    pub max_abs: i64,
    pub holds: bool,
    pub attained: bool,
}

/// `|A(tau)| <= 2^(n-1) - 1` over the spectrum.
pub fn check_max_abs_bound(sp: &CorrelationSpectrum, n: u32) -> MaxAbsCheck {
    let bound = (1i64 << (n - 1)) - 1;
    let max_abs = sp.max_abs();
    MaxAbsCheck {
        bound,
        max_abs,
        holds: max_abs <= bound,
        attained: max_abs == bound,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Violation {
    /// A value outside `{+-(2^k - 1) : 1 <= k < n}`.
    Value { poly: Gf2Poly, tau: usize, value: i64 },
    /// Wrong number of shifts with `|A| = 2^k - 1`.
    Count {
        poly: Gf2Poly,
        magnitude: u64,
        expected: usize,
        observed: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyConjecture {
    pub poly: Gf2Poly,
    pub abs_counts: BTreeMap<u64, usize>,
    pub part1: bool,
    pub part2: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub degree: u32,
    /// `|A|` -> count, summed over all sequences of the degree.
    pub value_counts: BTreeMap<u64, usize>,
    pub polynomials: Vec<PolyConjecture>,
    pub part1_holds: bool,
    pub part2_holds: bool,
    pub violations: Vec<Violation>,
}

impl ConjectureReport {
    pub fn holds(&self) -> bool {
        self.part1_holds && self.part2_holds
    }

    /// Every sequence contributes exactly `2^n - 2` shifts.
    pub fn bookkeeping_ok(&self) -> bool {
        let per = (1usize << self.degree) - 2;
        self.polynomials
            .iter()
            .all(|p| p.abs_counts.values().sum::<usize>() == per)
            && self.value_counts.values().sum::<usize>() == per * self.polynomials.len()
    }
}

fn evaluate_conjecture(n: u32, poly: Gf2Poly, sp: &CorrelationSpectrum) -> (PolyConjecture, Vec<Violation>) {
    let allowed: BTreeSet<u64> = (1..n).map(|k| (1u64 << k) - 1).collect();
    let mut violations = Vec::new();
    for r in &sp.records {
        if !allowed.contains(&r.correlation.unsigned_abs()) {
            violations.push(Violation::Value {
                poly,
                tau: r.tau,
                value: r.correlation,
            });
        }
    }
    let part1 = violations.is_empty();
    let abs_counts = sp.abs_counts();
    let mut part2 = true;
    for k in 1..n {
        let magnitude = (1u64 << k) - 1;
        let expected = 1usize << (n - k);
        let observed = abs_counts.get(&magnitude).copied().unwrap_or(0);
        if observed != expected {
            part2 = false;
            violations.push(Violation::Count {
                poly,
                magnitude,
                expected,
                observed,
            });
        }
    }
    (
        PolyConjecture {
            poly,
            abs_counts,
            part1,
            part2,
        },
        violations,
    )
}

/// Evaluates both parts of the value-distribution conjecture over every
/// m-sequence of degree `n`. Violations are collected, never suppressed.
pub fn conjecture_check(n: u32, config: &SweepConfig) -> Result<ConjectureReport> {
    let sweep = degree_sweep(n, config)?;
    let mut report = ConjectureReport {
        degree: n,
        value_counts: BTreeMap::new(),
        polynomials: Vec::with_capacity(sweep.len()),
        part1_holds: true,
        part2_holds: true,
        violations: Vec::new(),
    };
    for (poly, sp) in &sweep {
        let (pc, v) = evaluate_conjecture(n, *poly, sp);
        for (&m, &c) in &pc.abs_counts {
            *report.value_counts.entry(m).or_default() += c;
        }
        report.part1_holds &= pc.part1;
        report.part2_holds &= pc.part2;
        report.violations.extend(v);
        report.polynomials.push(pc);
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub degree: u32,
    pub primitive_count: usize,
    /// Union over all primitive polynomials of the degree.
    pub value_set: BTreeSet<i64>,
    pub per_polynomial: Vec<(Gf2Poly, BTreeSet<i64>)>,
    pub max_abs: i64,
}

pub fn table1_report(n_min: u32, n_max: u32, config: &SweepConfig) -> Result<Vec<Table1Row>> {
    if n_min > n_max {
        return Err(Error::EmptyDegreeRange {
            min: n_min,
            max: n_max,
        });
    }
    config.check_degree(n_min)?;
    config.check_degree(n_max)?;
    (n_min..=n_max)
        .map(|n| {
            let sweep = degree_sweep(n, config)?;
            let per_polynomial: Vec<_> = sweep.iter().map(|(p, sp)| (*p, sp.value_set())).collect();
            let value_set = per_polynomial.iter().flat_map(|(_, v)| v.iter().copied()).collect();
            Ok(Table1Row {
                degree: n,
                primitive_count: sweep.len(),
                value_set,
                per_polynomial,
                max_abs: sweep.iter().map(|(_, sp)| sp.max_abs()).max().unwrap_or(0),
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityCheck {
    pub tau: usize,
    pub arithmetic: i64,
    pub classical: i64,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

/// `|A^A(tau)| <= (T + A(tau)) / 2` with `A` the classical autocorrelation.
pub fn arith_vs_classical_check(s: &PeriodicSequence, tau: i64) -> InequalityCheck {
    let rec = arithmetic_autocorrelation(s, tau);
    let classical = s.classical_autocorrelation(tau);
    let lhs = rec.correlation.abs();
    // T + A = 2 (T - wt(s xor s^(tau))) is always even
    let rhs = (s.period() as i64 + classical) / 2;
    InequalityCheck {
        tau: rec.tau,
        arithmetic: rec.correlation,
        classical,
        lhs,
        rhs,
        holds: lhs <= rhs,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PhaseCheck {
    pub phases: usize,
    pub holds: bool,
    pub first_differing_phase: Option<usize>,
}

fn sorted_values(s: &PeriodicSequence) -> Vec<i64> {
    let mut v: Vec<i64> = (1..s.period() as i64)
        .map(|tau| arithmetic_autocorrelation(s, tau).correlation)
        .collect();
    v.sort_unstable();
    v
}

/// Compares the correlation multiset of every starting phase with the phase
/// given by `spec`.
pub fn phase_invariance_check(spec: &LfsrSpec) -> Result<PhaseCheck> {
    if spec.degree() > PHASE_SWEEP_MAX_DEGREE {
        return Err(Error::DegreeOutOfRange {
            degree: spec.degree(),
            min: 2,
            max: PHASE_SWEEP_MAX_DEGREE,
        });
    }
    let s = generate_m_sequence(spec)?;
    let reference = sorted_values(&s);
    let t = s.period();
    let first_differing_phase = (1..t)
        .into_par_iter()
        .filter(|&sigma| sorted_values(&s.shifted(sigma as i64)) != reference)
        .min();
    Ok(PhaseCheck {
        phases: t,
        holds: first_differing_phase.is_none(),
        first_differing_phase,
    })
}
