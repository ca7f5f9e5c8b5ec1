//! CSV and JSON emission for spectra.
//!
//! CSV columns: `degree,poly_hex,tau,sign,n_ones,correlation`. JSON nests
//! degree -> polynomial -> records plus a summary.

use std::collections::{BTreeMap, BTreeSet};
use std::io;

use serde::Serialize;
use serde_json::{json, Value};

use crate::correlation::CorrelationSpectrum;
use crate::gf2poly::Gf2Poly;

/// A spectrum with the degree / polynomial it came from, when known.
#[derive(Clone, Debug)]
pub struct LabeledSpectrum {
    pub degree: Option<u32>,
    pub poly: Option<Gf2Poly>,
    pub sequence: String,
    pub spectrum: CorrelationSpectrum,
}

impl LabeledSpectrum {
    /// Degree inferred from a period of the form `2^n - 1`.
    pub fn degree_of_period(period: usize) -> Option<u32> {
        let p1 = period.checked_add(1)?;
        p1.is_power_of_two().then(|| p1.trailing_zeros())
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    degree: Option<u32>,
    poly_hex: String,
    tau: usize,
    sign: &'a str,
    n_ones: usize,
    correlation: i64,
}

pub fn write_csv<W: io::Write>(out: W, items: &[LabeledSpectrum]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for item in items {
        for r in &item.spectrum.records {
            w.serialize(CsvRow {
                degree: item.degree,
                poly_hex: item.poly.map(|p| p.to_hex()).unwrap_or_default(),
                tau: r.tau,
                sign: r.sign.as_str(),
                n_ones: r.n_ones,
                correlation: r.correlation,
            })?;
        }
    }
    // header only when there were no rows
    if items.iter().all(|i| i.spectrum.records.is_empty()) {
        w.write_record(["degree", "poly_hex", "tau", "sign", "n_ones", "correlation"])?;
    }
    w.flush()
}

fn summary(sp: &CorrelationSpectrum) -> Value {
    let value_set: BTreeSet<i64> = sp.value_set();
    let abs_counts: BTreeMap<String, usize> = sp
        .abs_counts()
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    json!({
        "shifts": sp.records.len(),
        "value_set": value_set,
        "max_abs": sp.max_abs(),
        "abs_counts": abs_counts,
    })
}

/// `{"degrees": [{"degree": n, "polynomials": [{..., "records": [...], "summary": {...}}]}]}`.
/// Items without a degree are grouped under `"degree": null`.
pub fn spectra_json(items: &[LabeledSpectrum]) -> Value {
    let mut groups: BTreeMap<Option<u32>, Vec<Value>> = BTreeMap::new();
    for item in items {
        groups.entry(item.degree).or_default().push(json!({
            "poly_hex": item.poly.map(|p| p.to_hex()),
            "poly": item.poly.map(|p| p.to_monomial()),
            "sequence_id": item.spectrum.sequence_id,
            "sequence": item.sequence,
            "period": item.spectrum.period,
            "records": item.spectrum.records,
            "summary": summary(&item.spectrum),
        }));
    }
    let degrees: Vec<Value> = groups
        .into_iter()
        .map(|(degree, polynomials)| json!({ "degree": degree, "polynomials": polynomials }))
        .collect();
    json!({ "degrees": degrees })
}
