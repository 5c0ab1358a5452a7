//! Fixed-format number rendering for tables.

/// Formats `x` with four significant digits, e.g. `2.900`, `0.3840`,
/// `245.2`, `6228`.
pub fn sig4(x: f64) -> String {
    sig(x, 4)
}

pub fn sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return format!("{:.*}", digits.saturating_sub(1), 0.0);
    }
    let decimals = |v: f64| {
        let magnitude = v.abs().log10().floor() as i64 + 1;
        (digits as i64 - magnitude).max(0) as usize
    };
    let d = decimals(x);
    let text = format!("{x:.d$}");
    // rounding may carry into a new leading digit, e.g. 9.9996 -> 10.000
    let rounded: f64 = text.parse().unwrap_or(x);
    let d2 = decimals(rounded);
    if d2 < d {
        format!("{rounded:.d2$}")
    } else {
        text
    }
}

/// Left-aligns the first column and right-aligns the others.
pub fn aligned_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let render = |cells: Vec<&str>| -> String {
        let mut line = String::new();
        for (i, cell) in cells.iter().enumerate().take(cols) {
            if i > 0 {
                line.push_str("  ");
            }
            let pad = widths[i] - cell.chars().count();
            if i == 0 {
                line.push_str(cell);
                line.push_str(&" ".repeat(pad));
            } else {
                line.push_str(&" ".repeat(pad));
                line.push_str(cell);
            }
        }
        line.trim_end().to_string() + "\n"
    };
    let mut out = render(header.to_vec());
    for row in rows {
        out.push_str(&render(row.iter().map(String::as_str).collect()));
    }
    out
}
