use arithcorr::bitseq::{BitVector, PeriodicSequence};
use arithcorr::correlation::{
    arith_vs_classical_check, arithmetic_autocorrelation, degree_sweep, oracle_triangle, SweepConfig,
    Validation,
};
use arithcorr::lfsr::{generate_m_sequence, shift_and_add_tau_prime, LfsrSpec};
use arithcorr::ternary::{
    binary_subtract, bignum_expand_oracle, two_adic_difference_oracle, Sign, TernaryVector,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn pair(max: usize) -> impl Strategy<Value = (BitVector, BitVector)> {
    (1..=max).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<bool>(), n),
            proptest::collection::vec(any::<bool>(), n),
        )
            .prop_map(|(a, b)| (BitVector::from_bools(a), BitVector::from_bools(b)))
    })
}

fn sequence(max: usize) -> impl Strategy<Value = PeriodicSequence> {
    proptest::collection::vec(any::<bool>(), 2..=max)
        .prop_filter("nonzero", |v| v.iter().any(|&b| b))
        .prop_map(|v| PeriodicSequence::new(BitVector::from_bools(v)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn subtraction_weight_identities((a, b) in pair(512)) {
        let g = binary_subtract(&a, &b).unwrap();
        let c = g.counts();
        prop_assert_eq!(g.weight(), a.xor(&b).unwrap().weight());
        prop_assert_eq!(c.minus + c.zero + c.plus, a.len());
        let (wt, wa, wb) = (g.weight() as i64, a.weight() as i64, b.weight() as i64);
        prop_assert_eq!(2 * c.plus as i64, wt + wa - wb);
        prop_assert_eq!(2 * c.minus as i64, wt + wb - wa);
    }

    #[test]
    fn normalization_weight_bounds(entries in proptest::collection::vec(-1i8..=1, 1..512)) {
        let mut g = TernaryVector::new(entries).unwrap();
        if g.value() < BigInt::from(0) {
            g = g.negate();
        }
        let n = g.normalize_to_binary();
        let wd = n.expansion.n_ones();
        let minus = g.counts().minus;
        prop_assert!(g.weight() - minus <= wd);
        prop_assert!(wd <= g.len() - minus);
        prop_assert_eq!(n.expansion.value(), g.value());
    }

    #[test]
    fn subtraction_value_matches_integer_difference((a, b) in pair(300)) {
        let g = binary_subtract(&a, &b).unwrap();
        let big = bignum_expand_oracle(&a, &b).unwrap();
        prop_assert_eq!(g.value(), big.value());
        prop_assert_eq!(g.normalize_to_binary().expansion, big);
    }

    #[test]
    fn oracles_agree_on_arbitrary_sequences(s in sequence(96), tau in 0i64..96) {
        let [a, b, c] = oracle_triangle(&s, tau).unwrap();
        prop_assert_eq!(a, b);
        prop_assert_eq!(b, c);
        prop_assert!(arithmetic_autocorrelation(&s, tau).is_consistent(s.period()));
    }

    #[test]
    fn two_adic_preperiod_within_period(s in sequence(64), tau in 1i64..64) {
        prop_assume!(tau < s.period() as i64);
        let tail = two_adic_difference_oracle(&s, tau, 4 * s.period()).unwrap();
        prop_assert!(tail.preperiod <= s.period());
        prop_assert_eq!(tail.period_bits.len(), s.period());
    }

    #[test]
    fn inequality_on_random_sequences(s in sequence(64), tau in 0i64..64) {
        prop_assert!(arith_vs_classical_check(&s, tau).holds);
    }

    #[test]
    fn correlation_is_phase_invariant(s in sequence(48), sigma in 0i64..48, tau in 1i64..48) {
        let shifted = s.shifted(sigma);
        prop_assert_eq!(
            arithmetic_autocorrelation(&s, tau).correlation,
            arithmetic_autocorrelation(&shifted, tau).correlation
        );
    }

    #[test]
    fn swapping_roles_negates(s in sequence(64), tau in 1i64..64) {
        let t = s.period() as i64;
        prop_assume!(tau < t);
        let fwd = arithmetic_autocorrelation(&s, tau);
        let back = arithmetic_autocorrelation(&s, t - tau);
        if fwd.sign != Sign::Zero {
            prop_assert_eq!(back.correlation, -fwd.correlation);
        }
    }
}

#[test]
fn m_sequence_difference_counts() {
    for n in 2..=10u32 {
        let quarter = 1usize << (n - 2);
        for (p, sp) in degree_sweep(n, &SweepConfig { max_degree: 12, validation: Validation::Off }).unwrap() {
            let s = generate_m_sequence(&LfsrSpec::canonical(p).unwrap()).unwrap();
            for r in &sp.records {
                assert!(quarter <= r.n_ones && r.n_ones < 3 * quarter);
                let g = binary_subtract(s.first_period(), &s.cyclic_shift(r.tau as i64)).unwrap();
                let c = g.counts();
                assert_eq!((c.minus, c.zero, c.plus), (quarter, 2 * quarter - 1, quarter));
            }
        }
    }
}

#[test]
fn shift_and_add_closure() {
    for n in 2..=8u32 {
        for p in arithcorr::gf2poly::enumerate_primitive(n).unwrap() {
            let s = generate_m_sequence(&LfsrSpec::canonical(p).unwrap()).unwrap();
            for tau in 1..s.period() as i64 {
                let tp = shift_and_add_tau_prime(&s, tau).unwrap();
                assert_ne!(tp, 0);
                assert_eq!(s.cyclic_shift(tp as i64).weight(), 1 << (n - 1));
            }
        }
    }
}
