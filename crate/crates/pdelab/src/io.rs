//! Deterministic text formatting: printf-style %.17g numbers and CSV tables.
//! 17 significant digits round-trip any f64, so re-running a solve rewrites
//! byte-identical files.

/// Format like C's `%.17g`: 17 significant digits, fixed or scientific
/// notation by exponent, trailing zeros trimmed.
pub fn fmt_g(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.16e}", x);
    let epos = sci.find('e').expect("exponent marker");
    let exp: i32 = sci[epos + 1..].parse().expect("exponent digits");
    if (-4..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        let mant = trim_zeros(sci[..epos].to_string());
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", mant, sign, exp.abs())
    }
}

fn trim_zeros(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// CSV table from named columns of equal length.
pub fn csv_table(headers: &[&str], columns: &[&[f64]]) -> String {
    assert_eq!(headers.len(), columns.len(), "one header per column");
    let n = columns.first().map_or(0, |c| c.len());
    for c in columns {
        assert_eq!(c.len(), n, "ragged columns");
    }
    let mut out = String::with_capacity(32 * (n + 1));
    out.push_str(&headers.join(","));
    out.push('\n');
    for i in 0..n {
        for (j, c) in columns.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&fmt_g(c[i]));
        }
        out.push('\n');
    }
    out
}
