//! Number formatting for machine-readable output.
//!
//! Every float a command writes goes through [`fmt_f64`], which emits 17
//! significant digits in scientific notation. That is enough to round-trip
//! any `f64` bit pattern, so identical runs produce byte-identical files.

/// Format with 17 significant digits (one integer digit + 16 fractional).
pub fn fmt_f64(x: f64) -> String {
    assert!(x.is_finite(), "refusing to serialize non-finite value");
    // Normalise -0.0 so that equal numbers print identically.
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{:.16e}", x)
}

/// Escape a string for inclusion in a JSON document.
pub fn escape_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(fmt_f64(0.5), "5.0000000000000000e-1");
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_f64(-0.0), "0.0000000000000000e0");
    }

    #[test]
    fn round_trips_exactly() {
        for &x in &[
            std::f64::consts::PI,
            1.0 / 3.0,
            2f64.sqrt(),
            -1.2345678901234567e-300,
            6.02214076e23,
        ] {
            let back: f64 = fmt_f64(x).parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits());
        }
    }

    #[test]
    fn escapes_control_characters() {
        assert_eq!(escape_str("a\"b"), "\"a\\\"b\"");
        assert_eq!(escape_str("x\ny"), "\"x\\ny\"");
    }
}
