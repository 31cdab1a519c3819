//! CSV and JSON renderings. Floats in CSV carry 17 significant digits; JSON
//! numbers use the shortest representation that round-trips.
//!
//! Every CSV table starts with a header row; free-form summary lines follow
//! the rows. JSON objects carry the same fields under the same names.

use std::fmt::Write;

use epsmean::measure::{BoundaryRatioBounds, ThinBoundaryResult};
use epsmean::space::ValidationReport;
use epsmean::verify::VerifyReport;
use epsmean::{Lattice, MeanBounds, MeasureResult, SweepResult, Verdict};
use serde::Serialize;
use serde_json::{json, Value};

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn opt_int(x: Option<usize>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serialises");
    s.push('\n');
    s
}

pub fn validation(r: &ValidationReport, json: bool) -> String {
    if json {
        return to_json(&json!({
            "valid": r.is_valid(),
            "violations": r.violations,
            "warnings": r.warnings,
        }));
    }
    let mut s = String::from("kind,i,j,k,detail\n");
    for v in &r.violations {
        writeln!(s, "{v}").unwrap();
    }
    for w in &r.warnings {
        writeln!(s, "warning:{w}").unwrap();
    }
    let verdict = if r.is_valid() { "valid" } else { "invalid" };
    writeln!(
        s,
        "{verdict} violations={} warnings={}",
        r.violations.len(),
        r.warnings.len()
    )
    .unwrap();
    s
}

fn member_list(l: &Lattice) -> String {
    l.members
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn lattices(all: &[Lattice], eps: f64, json: bool) -> String {
    if json {
        let rows: Vec<Value> = all
            .iter()
            .enumerate()
            .map(|(i, l)| json!({"index": i, "size": l.len(), "members": l.members}))
            .collect();
        return to_json(&json!({"eps": eps, "lattices": rows, "count": all.len()}));
    }
    let mut s = String::from("index,size,members\n");
    for (i, l) in all.iter().enumerate() {
        writeln!(s, "{i},{},{}", l.len(), member_list(l)).unwrap();
    }
    writeln!(s, "count={}", all.len()).unwrap();
    s
}

pub fn cap_exceeded(eps: f64, cap: usize, json: bool) -> String {
    if json {
        return to_json(&json!({"eps": eps, "cap_exceeded": true, "partial_count": cap}));
    }
    format!("CapExceeded eps={} partial_count={cap}\n", num(eps))
}

fn bounds_row(b: &MeanBounds) -> Value {
    json!({
        "eps": b.eps,
        "lower": b.lower,
        "upper": b.upper,
        "gap": b.gap(),
        "exact": b.exact,
        "lattice_count": b.lattice_count,
        "min_lattice_size": b.min_lattice_size,
    })
}

fn bounds_csv(s: &mut String, prefix: &str, b: &MeanBounds) {
    writeln!(
        s,
        "{prefix}{},{},{},{},{},{},{}",
        num(b.eps),
        num(b.lower),
        num(b.upper),
        num(b.gap()),
        b.exact as u8,
        opt_int(b.lattice_count),
        opt_int(b.min_lattice_size)
    )
    .unwrap();
}

fn verdict_line(v: Verdict, estimate: Option<f64>, key: &str) -> String {
    match (v, estimate) {
        (Verdict::HasMean, Some(e)) => format!("HasMean {key}={}", num(e)),
        (v, _) => format!("{v:?}"),
    }
}

pub fn sweep(r: &SweepResult, json: bool) -> String {
    if json {
        let rows: Vec<Value> = r.trail.iter().map(bounds_row).collect();
        return to_json(&json!({
            "rows": rows,
            "verdict": r.verdict,
            "estimate": r.mean_estimate,
            "gap_floor": r.gap_floor,
        }));
    }
    let mut s = String::from("eps,lower,upper,gap,exact,lattice_count,min_lattice_size\n");
    for b in &r.trail {
        bounds_csv(&mut s, "", b);
    }
    writeln!(
        s,
        "{}",
        verdict_line(r.verdict, r.mean_estimate, "estimate")
    )
    .unwrap();
    s
}

fn ratio_row(b: &BoundaryRatioBounds) -> Value {
    json!({
        "eps": b.eps,
        "ratio_low": b.ratio_low,
        "ratio_high": b.ratio_high,
        "skipped": b.skipped,
        "exact": b.exact,
        "lattice_count": b.lattice_count,
    })
}

pub fn measure(rel: &MeasureResult, thin: &ThinBoundaryResult, json: bool) -> String {
    if json {
        let supersets: Vec<Value> = thin
            .supersets
            .iter()
            .map(|t| {
                json!({
                    "rows": t.trail.iter().map(ratio_row).collect::<Vec<_>>(),
                    "verdict": t.verdict,
                    "value": t.value,
                })
            })
            .collect();
        return to_json(&json!({
            "relative": {
                "rows": rel.trail.iter().map(bounds_row).collect::<Vec<_>>(),
                "verdict": rel.verdict,
                "value": rel.value,
            },
            "thin": {
                "supersets": supersets,
                "verdict": thin.verdict,
                "value": thin.value,
            },
        }));
    }
    let mut s = String::from("# relative measure of A in B\n");
    s.push_str("eps,lower,upper,gap,exact,lattice_count,min_lattice_size\n");
    for b in &rel.trail {
        bounds_csv(&mut s, "", b);
    }
    s.push_str("# boundary ratio |A∩S|/|B∩S| over lattices S of each superset\n");
    s.push_str("superset,eps,ratio_low,ratio_high,skipped,exact,lattice_count\n");
    for (k, t) in thin.supersets.iter().enumerate() {
        for b in &t.trail {
            writeln!(
                s,
                "{k},{},{},{},{},{},{}",
                num(b.eps),
                opt_num(b.ratio_low),
                opt_num(b.ratio_high),
                opt_int(b.skipped),
                b.exact as u8,
                opt_int(b.lattice_count)
            )
            .unwrap();
        }
    }
    writeln!(
        s,
        "relative {}",
        verdict_line(rel.verdict, rel.value, "value")
    )
    .unwrap();
    match thin.value {
        Some(v) => writeln!(s, "thin {:?} value={}", thin.verdict, num(v)).unwrap(),
        None => writeln!(s, "thin {:?}", thin.verdict).unwrap(),
    }
    s
}

pub fn verify(r: &VerifyReport, json: bool) -> String {
    if json {
        return to_json(r);
    }
    format!("{r}\n")
}
