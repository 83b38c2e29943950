//! CSV serialization of sweep rows, aggregates and bound checks.

use std::fmt::Write;

use super::{Aggregate, Row};
use crate::bounds::BoundCheckResult;

pub const ROW_HEADER: &str =
    "scheme,k,trial,seed,threshold_c,metric,sum_rate_nats,colors_used,max_ind_set,ind_set_exact,runtime_ms";
pub const AGGREGATE_HEADER: &str = "scheme,k,mean_sum_rate,std_err,p05,p95,n";
pub const BOUND_CHECK_HEADER: &str =
    "bound_name,k,s,r,trials,empirical,analytic,std_error,two_sided,passed,applicable,note";

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros removed,
/// exponent notation outside `[1e-4, 1e12)`.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    const PRECISION: i32 = 12;
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= PRECISION {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let fixed = format!("{:.*}", (PRECISION - 1 - exp) as usize, x);
        trim_fraction(&fixed).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn rows_to_csv(rows: &[Row]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(ROW_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.scheme.csv_name(),
            r.k,
            r.trial,
            r.seed,
            format_float(r.threshold_c),
            r.metric.name(),
            format_float(r.sum_rate),
            opt(r.colors_used),
            opt(r.max_ind_set),
            opt(r.ind_set_exact),
            r.runtime_ms.map(format_float).unwrap_or_default(),
        )
        .expect("writing to a String");
    }
    out
}

pub fn aggregates_to_csv(aggregates: &[Aggregate]) -> String {
    let mut out = String::new();
    out.push_str(AGGREGATE_HEADER);
    out.push('\n');
    for a in aggregates {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            a.scheme.csv_name(),
            a.k,
            format_float(a.mean),
            format_float(a.std_err),
            format_float(a.p05),
            format_float(a.p95),
            a.n
        )
        .expect("writing to a String");
    }
    out
}

pub fn bound_checks_to_csv(results: &[BoundCheckResult]) -> String {
    let mut out = String::new();
    out.push_str(BOUND_CHECK_HEADER);
    out.push('\n');
    for b in results {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            quote(&b.bound_name),
            b.k,
            b.s,
            b.r.map(format_float).unwrap_or_default(),
            b.trials,
            format_float(b.empirical),
            format_float(b.analytic),
            format_float(b.std_error),
            b.two_sided,
            b.passed,
            b.applicable,
            quote(&b.note)
        )
        .expect("writing to a String");
    }
    out
}
