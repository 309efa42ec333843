//! Parsing and printing of complex numbers for `--coeffs` and vector output.

use conepoly::Complex64;

/// Parse `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i` (spaces ignored).
pub fn parse_complex(token: &str) -> Result<Complex64, String> {
    let s: String = token.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("bad complex number `{token}`");
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| bad());
    };
    // Split at the last sign that is not the leading one and not an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

pub fn parse_complex_list(text: &str) -> Result<Vec<Complex64>, String> {
    text.split(',').map(parse_complex).collect()
}

/// Fixed 12-decimal rendering, `-0` normalized.
pub fn format_complex(c: Complex64) -> String {
    format!("{:.12}{:+.12}i", c.re + 0.0, c.im + 0.0)
}
