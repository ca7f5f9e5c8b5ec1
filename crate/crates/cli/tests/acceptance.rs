//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Run with `cargo test -p arithcorr-cli --test acceptance`.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use arithcorr::bitseq::{BitVector, PeriodicSequence};
use arithcorr::correlation::{
    arith_vs_classical_check, check_max_abs_bound, conjecture_check, degree_sweep, m_sequence_spectrum,
    oracle_triangle, phase_invariance_check, spectrum, CorrelationSpectrum, SweepConfig, Validation,
};
use arithcorr::gf2poly::{enumerate_primitive, Gf2Poly};
use arithcorr::lfsr::{generate_m_sequence, LfsrSpec};
use arithcorr::ternary::{binary_subtract, TernaryVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BIN: &str = env!("CARGO_BIN_EXE_arithcorr");

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn cli(args: &[&str]) -> (i32, String, Duration) {
    let start = Instant::now();
    let out = Command::new(BIN).args(args).output().expect("run arithcorr");
    let elapsed = start.elapsed();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 output"),
        elapsed,
    )
}

fn field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines()
        .find_map(|l| l.strip_prefix(key).map(str::trim))
}

fn mersenne_set(n: u32) -> BTreeSet<i64> {
    (1..n).flat_map(|k| [(1i64 << k) - 1, -((1i64 << k) - 1)]).collect()
}

fn csv_correlations(text: &str) -> Vec<i64> {
    text.lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect()
}

type Sweep = Vec<(u32, Vec<(Gf2Poly, CorrelationSpectrum)>)>;

fn c1_worked_example() -> Outcome {
    let (code, out, elapsed) = cli(&["acorr", "--seq", "000111101011001", "--tau", "4", "--validate"]);
    let checks = [
        ("S(2)", "19832"),
        ("S^(4)(2)", "17623"),
        ("difference", "2209"),
        ("one-bits", "{0, 5, 7, 11}"),
        ("N_1", "4"),
        ("A", "7"),
    ];
    for (k, want) in checks {
        if field(&out, k) != Some(want) {
            return fail(format!("{k}: got {:?}, want {want}", field(&out, k)));
        }
    }
    if code != 0 || elapsed >= Duration::from_secs(1) {
        return fail(format!("exit {code}, {elapsed:?}"));
    }
    pass(format!("S(2)-S^(4)(2)=19832-17623=2209, N_1=4, A=7 in {elapsed:?}"))
}

fn c2_degree_three() -> Outcome {
    let (code, out, _) = cli(&["acorr", "--seq", "0011101", "--all", "--format", "csv"]);
    let got = csv_correlations(&out);
    let want = vec![-1, 1, 3, -3, -1, 1];
    let lib = spectrum(&"0011101".parse().unwrap(), "0011101", Validation::On)
        .map(|s| s.values())
        .unwrap_or_default();
    if code == 0 && got == want && lib == want {
        pass(format!("{got:?}"))
    } else {
        fail(format!("cli {got:?}, lib {lib:?}"))
    }
}

fn c3_degree_four() -> Outcome {
    let want = mersenne_set(4);
    for p in ["0x13", "0x19"] {
        let (code, out, _) = cli(&["acorr", "--poly", p, "--all", "--format", "csv"]);
        let got: BTreeSet<i64> = csv_correlations(&out).into_iter().collect();
        if code != 0 || got != want {
            return fail(format!("{p}: {got:?}"));
        }
    }
    let listed = enumerate_primitive(4).unwrap();
    if listed.len() != 2 {
        return fail(format!("expected 2 degree-4 primitive polynomials, got {}", listed.len()));
    }
    pass("x^4+x+1 and x^4+x^3+1 both give {±1, ±3, ±7}")
}

fn c4_table1() -> Outcome {
    let (code, out, elapsed) = cli(&["table1", "--nmin", "5", "--nmax", "9", "--format", "csv"]);
    let counts = [6usize, 6, 18, 16, 48];
    let rows: Vec<&str> = out.lines().skip(1).collect();
    if code != 0 || rows.len() != 5 {
        return fail(format!("exit {code}, {} rows", rows.len()));
    }
    for (row, (n, count)) in rows.iter().zip((5u32..=9).zip(counts)) {
        let cols: Vec<&str> = row.split(',').collect();
        let values: BTreeSet<i64> = cols[3].split(' ').map(|v| v.parse().unwrap()).collect();
        if cols[0] != n.to_string() || cols[1] != count.to_string() || values != mersenne_set(n) {
            return fail(format!("row {row}"));
        }
    }
    if elapsed >= Duration::from_secs(300) {
        return fail(format!("sweep took {elapsed:?}"));
    }
    pass(format!("counts (6, 6, 18, 16, 48), value sets ±(2^k-1), {elapsed:?}"))
}

fn c5_max_abs_bound(sweep: &Sweep) -> Outcome {
    for (n, spectra) in sweep {
        let mut attained = false;
        for (p, sp) in spectra {
            let check = check_max_abs_bound(sp, *n);
            if !check.holds || sp.records.len() != (1 << n) - 2 {
                return fail(format!("{p:?}: max |A| {} > {}", check.max_abs, check.bound));
            }
            attained |= check.attained;
        }
        if *n >= 3 && !attained {
            return fail(format!("bound not attained at degree {n}"));
        }
    }
    let spot = [
        "x^10+x^3+1",
        "x^10+x^4+x^3+x+1",
        "x^11+x^5+x^3+x+1",
        "x^11+x^5+x^3+x^2+1",
        "x^12+x^6+x^4+x+1",
        "x^12+x^6+x^5+x^3+1",
        "x^13+x^5+x^4+x^2+1",
        "x^13+x^6+x^4+x+1",
    ];
    for s in spot {
        let p: Gf2Poly = s.parse().unwrap();
        let n = p.degree().unwrap();
        let Ok(sp) = m_sequence_spectrum(p, Validation::Off) else {
            return fail(format!("{s} rejected"));
        };
        let check = check_max_abs_bound(&sp, n);
        if !check.holds || !check.attained {
            return fail(format!("{s}: {check:?}"));
        }
    }
    let total: usize = sweep.iter().map(|(_, s)| s.len()).sum();
    pass(format!("{total} m-sequences of degree 2..12 plus 8 spot checks at 10..13"))
}

fn c6_n_ones_range(sweep: &Sweep) -> Outcome {
    let mut records = 0;
    for (n, spectra) in sweep {
        let lo = 1usize << (n - 2);
        let hi = 3 * (1usize << (n - 2)) - 1;
        for (p, sp) in spectra {
            for r in &sp.records {
                records += 1;
                if r.n_ones < lo || r.n_ones > hi {
                    return fail(format!("{p:?} tau {}: N_1 = {} outside [{lo}, {hi}]", r.tau, r.n_ones));
                }
            }
        }
    }
    pass(format!("{records} records inside [2^(n-2), 3*2^(n-2)-1]"))
}

fn weight_identities_hold(a: &BitVector, b: &BitVector) -> bool {
    let g = binary_subtract(a, b).unwrap();
    let c = g.counts();
    let wt = g.weight() as i64;
    let (wa, wb) = (a.weight() as i64, b.weight() as i64);
    wt == a.xor(b).unwrap().weight() as i64
        && 2 * c.plus as i64 == wt + wa - wb
        && 2 * c.minus as i64 == wt + wb - wa
}

fn c7_weight_identities(rng: &mut ChaCha8Rng) -> Outcome {
    let mut pairs = 0u64;
    for len in 1..=12usize {
        for x in 0u64..1 << len {
            let a = BitVector::from_words(vec![x], len);
            for y in 0u64..1 << len {
                let b = BitVector::from_words(vec![y], len);
                if !weight_identities_hold(&a, &b) {
                    return fail(format!("{a} / {b}"));
                }
                pairs += 1;
            }
        }
    }
    for _ in 0..10_000 {
        let len = rng.gen_range(1..=512);
        let a = BitVector::from_bools((0..len).map(|_| rng.gen::<bool>()));
        let b = BitVector::from_bools((0..len).map(|_| rng.gen::<bool>()));
        if !weight_identities_hold(&a, &b) {
            return fail(format!("{a} / {b}"));
        }
    }
    pass(format!("{pairs} exhaustive pairs (len <= 12) + 10000 random (len <= 512)"))
}

fn c8_normalization_bounds(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..10_000 {
        let len = rng.gen_range(1..=512);
        let mut g = TernaryVector::new((0..len).map(|_| rng.gen_range(-1i8..=1)).collect()).unwrap();
        if g.value() < 0.into() {
            g = g.negate();
        }
        let n = g.normalize_to_binary();
        let minus = g.counts().minus;
        let wd = n.expansion.n_ones();
        if g.weight() - minus > wd || wd > len - minus || n.expansion.value() != g.value() {
            return fail(format!("{g}: wt(delta) = {wd}"));
        }
    }
    let gamma: TernaryVector = "1N00N0N1N0100".parse().unwrap();
    let delta = gamma.normalize_to_binary().expansion.magnitude;
    let blocks = gamma.transfer_blocks();
    if delta.to_string() != "1111010011000" || delta.weight() != 7 || gamma.weight() != 7 || blocks.delta != delta {
        return fail(format!("gamma transfer gave {delta}"));
    }
    pass("10000 random vectors (len <= 512); 1N00N0N1N0100 -> 1111010011000, wt 7 = 7")
}

fn c9_triple_oracle(rng: &mut ChaCha8Rng) -> Outcome {
    let mut cases = 0;
    for n in 2..=8 {
        for p in enumerate_primitive(n).unwrap() {
            let s = generate_m_sequence(&LfsrSpec::canonical(p).unwrap()).unwrap();
            for tau in 1..s.period() as i64 {
                let [a, b, c] = oracle_triangle(&s, tau).unwrap();
                if a != b || b != c {
                    return fail(format!("{p:?} tau {tau}: {a} {b} {c}"));
                }
                cases += 1;
            }
        }
    }
    let pools: Vec<Vec<Gf2Poly>> = (9..=12).map(|n| enumerate_primitive(n).unwrap()).collect();
    for _ in 0..1000 {
        let pool = &pools[rng.gen_range(0..pools.len())];
        let p = pool[rng.gen_range(0..pool.len())];
        let s = generate_m_sequence(&LfsrSpec::canonical(p).unwrap()).unwrap();
        let tau = rng.gen_range(1..s.period() as i64);
        let [a, b, c] = oracle_triangle(&s, tau).unwrap();
        if a != b || b != c {
            return fail(format!("{p:?} tau {tau}: {a} {b} {c}"));
        }
    }
    pass(format!("{cases} exhaustive cases (n <= 8) + 1000 random (9 <= n <= 12)"))
}

fn c10_conjecture() -> Outcome {
    for n in 2..=10u32 {
        let (code, out, _) = cli(&["conjecture", "--degree", &n.to_string()]);
        if code != 0 || !out.contains("bookkeeping: ok") || !out.contains("violations: none") {
            return fail(format!("degree {n}: exit {code}\n{out}"));
        }
        if n == 10 && !out.contains("0x409") {
            return fail("x^10+x^3+1 missing from the degree-10 report");
        }
        let report = conjecture_check(n, &SweepConfig::default()).unwrap();
        if !report.bookkeeping_ok() {
            return fail(format!("degree {n}: counts do not sum to 2^n - 2"));
        }
    }
    pass("parts (1) and (2) hold for 2 <= n <= 10, counts sum to 2^n - 2")
}

fn c11_inequality(sweep: &Sweep, rng: &mut ChaCha8Rng) -> Outcome {
    let mut checks = 0;
    for (n, spectra) in sweep {
        for (p, _) in spectra {
            let s = generate_m_sequence(&LfsrSpec::canonical(*p).unwrap()).unwrap();
            for tau in 0..s.period() as i64 {
                let c = arith_vs_classical_check(&s, tau);
                if !c.holds || (tau > 0 && c.rhs != (1 << (n - 1)) - 1) {
                    return fail(format!("{p:?}: {c:?}"));
                }
                checks += 1;
            }
        }
    }
    for _ in 0..1000 {
        let period = rng.gen_range(2..=64);
        let bits = loop {
            let v = BitVector::from_bools((0..period).map(|_| rng.gen::<bool>()));
            if !v.is_zero() {
                break v;
            }
        };
        let s = PeriodicSequence::new(bits).unwrap();
        for tau in 0..period as i64 {
            let c = arith_vs_classical_check(&s, tau);
            if !c.holds {
                return fail(format!("{s} {c:?}"));
            }
            checks += 1;
        }
    }
    pass(format!("{checks} (sequence, tau) pairs"))
}

fn c12_phase_invariance() -> Outcome {
    let mut count = 0;
    for n in 2..=8 {
        for p in enumerate_primitive(n).unwrap() {
            let c = phase_invariance_check(&LfsrSpec::canonical(p).unwrap()).unwrap();
            if !c.holds {
                return fail(format!("{p:?} differs at phase {:?}", c.first_differing_phase));
            }
            count += 1;
        }
    }
    pass(format!("{count} m-sequences, every starting phase"))
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_a11c);
    let config = SweepConfig {
        max_degree: 12,
        validation: Validation::Off,
    };
    let sweep: Sweep = (2..=12)
        .map(|n| (n, degree_sweep(n, &config).expect("degree sweep")))
        .collect();

    type Criterion<'a> = (&'a str, Box<dyn FnOnce() -> Outcome + 'a>);
    let mut rng7 = rng.clone();
    let mut rng8 = ChaCha8Rng::seed_from_u64(rng.gen());
    let mut rng9 = ChaCha8Rng::seed_from_u64(rng.gen());
    let mut rng11 = ChaCha8Rng::seed_from_u64(rng.gen());
    let criteria: Vec<Criterion> = vec![
        ("worked example (period 15, tau 4)", Box::new(c1_worked_example)),
        ("degree-3 spectrum", Box::new(c2_degree_three)),
        ("degree-4 value sets", Box::new(c3_degree_four)),
        ("primitive-count and value-set table, n = 5..9", Box::new(c4_table1)),
        ("upper bound 2^(n-1) - 1", Box::new(|| c5_max_abs_bound(&sweep))),
        ("N_1 range", Box::new(|| c6_n_ones_range(&sweep))),
        ("subtraction weight identities", Box::new(move || c7_weight_identities(&mut rng7))),
        ("normalization weight bounds", Box::new(move || c8_normalization_bounds(&mut rng8))),
        ("triple-oracle agreement", Box::new(move || c9_triple_oracle(&mut rng9))),
        ("conjecture report, n = 2..10", Box::new(c10_conjecture)),
        ("arithmetic vs classical inequality", Box::new(|| c11_inequality(&sweep, &mut rng11))),
        ("phase invariance, n <= 8", Box::new(c12_phase_invariance)),
    ];

    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        println!(
            "criterion {:>2} [{}] {name}: {} ({:.2?})",
            i + 1,
            if outcome.ok { "PASS" } else { "FAIL" },
            outcome.detail,
            start.elapsed()
        );
        if !outcome.ok {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 12 acceptance criteria passed");
}
