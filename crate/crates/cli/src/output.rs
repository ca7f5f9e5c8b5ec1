//! Rendering of command results as text, CSV or JSON.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use arithcorr::bitseq::PeriodicSequence;
use arithcorr::correlation::{ConjectureReport, ShiftRecord, Table1Row, Violation};
use arithcorr::gf2poly::Gf2Poly;
use arithcorr::lfsr::LfsrSpec;
use arithcorr::report::{spectra_json, write_csv, LabeledSpectrum};
use arithcorr::ternary::{bignum_expand_oracle, to_biguint};
use serde_json::json;

use crate::Format;

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

/// `{±1, ±3, 5}`: magnitudes ascending, `±` when both signs occur.
pub fn value_set_text(values: &BTreeSet<i64>) -> String {
    let mags: BTreeSet<u64> = values.iter().map(|v| v.unsigned_abs()).collect();
    let parts: Vec<String> = mags
        .iter()
        .map(|&m| {
            let (pos, neg) = (values.contains(&(m as i64)), values.contains(&-(m as i64)));
            match (pos, neg) {
                (true, true) if m != 0 => format!("±{m}"),
                (false, true) => format!("-{m}"),
                _ => m.to_string(),
            }
        })
        .collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn primpolys(degree: u32, polys: &[Gf2Poly], format: Format) -> String {
    match format {
        Format::Text => {
            let mut s = format!("# degree {degree}: {} primitive polynomials\n", polys.len());
            for p in polys {
                let _ = writeln!(s, "{} {}", p.to_hex(), p.to_monomial());
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("degree,poly_hex,poly\n");
            for p in polys {
                let _ = writeln!(s, "{degree},{},{}", p.to_hex(), p.to_monomial());
            }
            s
        }
        Format::Json => json_text(&json!({
            "degree": degree,
            "count": polys.len(),
            "polynomials": polys
                .iter()
                .map(|p| json!({ "poly_hex": p.to_hex(), "poly": p.to_monomial() }))
                .collect::<Vec<_>>(),
        })),
    }
}

pub fn generated(spec: &LfsrSpec, s: &PeriodicSequence, format: Format) -> String {
    match format {
        Format::Text => format!("{s}\n"),
        Format::Csv => format!(
            "poly_hex,init,period,weight,sequence\n{},{},{},{},{}\n",
            spec.poly().to_hex(),
            spec.init_state(),
            s.period(),
            s.weight(),
            s
        ),
        Format::Json => json_text(&json!({
            "poly_hex": spec.poly().to_hex(),
            "poly": spec.poly().to_monomial(),
            "init": spec.init_state().to_string(),
            "period": s.period(),
            "weight": s.weight(),
            "sequence": s.to_string(),
        })),
    }
}

/// Step-by-step text for one shift: both integers, the difference and its
/// expansion, and the resulting correlation.
pub fn single_shift(s: &PeriodicSequence, r: &ShiftRecord) -> String {
    let shifted = s.cyclic_shift(r.tau as i64);
    let diff = bignum_expand_oracle(s.first_period(), &shifted).expect("equal lengths");
    let t = s.period();
    let ones: Vec<String> = diff.magnitude.ones().iter().map(|i| i.to_string()).collect();
    let mut out = String::new();
    let _ = writeln!(out, "sequence     {s}");
    let _ = writeln!(out, "period       {t}");
    let _ = writeln!(out, "tau          {}", r.tau);
    let _ = writeln!(out, "shift        {shifted}");
    let _ = writeln!(out, "S(2)         {}", to_biguint(s.first_period()));
    let _ = writeln!(out, "S^({})(2)     {}", r.tau, to_biguint(&shifted));
    let _ = writeln!(out, "difference   {}", diff.value());
    let _ = writeln!(out, "|difference| {}", diff.magnitude_value());
    let _ = writeln!(out, "expansion    {}", diff.magnitude);
    let _ = writeln!(out, "one-bits     {{{}}}", ones.join(", "));
    let _ = writeln!(out, "sign         {}", r.sign);
    let _ = writeln!(out, "N_1          {}", r.n_ones);
    let _ = writeln!(out, "N_0          {}", t - r.n_ones);
    let _ = writeln!(out, "A            {}", r.correlation);
    out
}

pub fn spectra(items: &[LabeledSpectrum], format: Format) -> anyhow::Result<String> {
    Ok(match format {
        Format::Text => {
            let mut out = String::new();
            for item in items {
                let _ = writeln!(
                    out,
                    "# sequence {} (period {}){}",
                    item.sequence,
                    item.spectrum.period,
                    item.poly.map(|p| format!(", poly {} = {}", p.to_hex(), p)).unwrap_or_default()
                );
                let _ = writeln!(out, "{:>6} {:>9} {:>7} {:>12}", "tau", "sign", "n_ones", "correlation");
                for r in &item.spectrum.records {
                    let _ = writeln!(out, "{:>6} {:>9} {:>7} {:>12}", r.tau, r.sign, r.n_ones, r.correlation);
                }
                let _ = writeln!(out, "# value set {}", value_set_text(&item.spectrum.value_set()));
            }
            out
        }
        Format::Csv => {
            let mut buf = Vec::new();
            write_csv(&mut buf, items)?;
            String::from_utf8(buf)?
        }
        Format::Json => json_text(&spectra_json(items)),
    })
}

pub fn table1(rows: &[Table1Row], format: Format) -> anyhow::Result<String> {
    Ok(match format {
        Format::Text => {
            let mut out = format!("{:<4} {:<28} {}\n", "n", "primitive polynomials", "A(tau) in");
            for r in rows {
                let _ = writeln!(out, "{:<4} {:<28} {}", r.degree, r.primitive_count, value_set_text(&r.value_set));
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("degree,primitive_count,max_abs,value_set\n");
            for r in rows {
                let vals: Vec<String> = r.value_set.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(out, "{},{},{},{}", r.degree, r.primitive_count, r.max_abs, vals.join(" "));
            }
            out
        }
        Format::Json => json_text(&serde_json::to_value(rows)?),
    })
}

pub fn conjecture(report: &ConjectureReport, format: Format) -> anyhow::Result<String> {
    if format == Format::Json {
        return Ok(json_text(&serde_json::to_value(report)?));
    }
    let n = report.degree;
    if format == Format::Csv {
        let mut out = String::from("degree,poly_hex,magnitude,expected,observed\n");
        for pc in &report.polynomials {
            for k in 1..n {
                let m = (1u64 << k) - 1;
                let _ = writeln!(
                    out,
                    "{n},{},{m},{},{}",
                    pc.poly.to_hex(),
                    1u64 << (n - k),
                    pc.abs_counts.get(&m).copied().unwrap_or(0)
                );
            }
        }
        return Ok(out);
    }
    let holds = |b: bool| if b { "holds" } else { "VIOLATED" };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "degree {n}: {} primitive polynomials, {} shifts each",
        report.polynomials.len(),
        (1u64 << n) - 2
    );
    let _ = writeln!(out, "{:>8} {:>14} {:>16}", "|A|", "expected/seq", "observed total");
    for (m, c) in &report.value_counts {
        let expected = (1..n)
            .find(|&k| (1u64 << k) - 1 == *m)
            .map_or("-".to_string(), |k| (1u64 << (n - k)).to_string());
        let _ = writeln!(out, "{m:>8} {expected:>14} {c:>16}");
    }
    let _ = writeln!(out, "part (1): {}", holds(report.part1_holds));
    let _ = writeln!(out, "part (2): {}", holds(report.part2_holds));
    let _ = writeln!(
        out,
        "bookkeeping: {}",
        if report.bookkeeping_ok() { "ok" } else { "MISMATCH" }
    );
    if report.violations.is_empty() {
        let _ = writeln!(out, "violations: none");
    } else {
        let _ = writeln!(out, "violations: {}", report.violations.len());
        for v in &report.violations {
            let _ = match v {
                Violation::Value { poly, tau, value } => {
                    writeln!(out, "  value {} tau={tau} A={value}", poly.to_hex())
                }
                Violation::Count {
                    poly,
                    magnitude,
                    expected,
                    observed,
                } => writeln!(
                    out,
                    "  count {} |A|={magnitude} expected={expected} observed={observed}",
                    poly.to_hex()
                ),
            };
        }
    }
    let polys: Vec<String> = report.polynomials.iter().map(|p| p.poly.to_hex()).collect();
    let _ = writeln!(out, "polynomials: {}", polys.join(" "));
    Ok(out)
}
