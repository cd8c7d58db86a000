//! Deterministic number and JSON formatting shared by every artifact writer.
//!
//! All output files must be byte-identical across runs, so formatting is
//! centralized here: fixed decimal places, no locale, negative zero folded
//! into zero.

/// Length in inches, 6 decimal places.
pub fn inches(v: f64) -> String {
    let s = format!("{:.6}", v);
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

/// Small residuals and deviations, scientific with 3 decimal places.
pub fn sci(v: f64) -> String {
    if v == 0.0 {
        return "0.000e0".to_string();
    }
    format!("{:.3e}", v)
}

/// SVG user units, 3 decimal places.
pub fn svg_units(v: f64) -> String {
    let s = format!("{:.3}", v);
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

pub fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

pub fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_zero_folds() {
        assert_eq!(inches(-0.0000001), "0.000000");
        assert_eq!(inches(-0.0), "0.000000");
        assert_eq!(svg_units(-0.0001), "0.000");
        assert_eq!(sci(-0.0), "0.000e0");
    }

    #[test]
    fn fixed_width() {
        assert_eq!(inches(-2.7071067811865475), "-2.707107");
        assert_eq!(inches(6.0), "6.000000");
        assert_eq!(sci(4.9e-4), "4.900e-4");
    }

    #[test]
    fn escapes() {
        assert_eq!(json_escape("a\"b\\c"), "a\\\"b\\\\c");
        assert_eq!(xml_escape("a<b>&\"c\""), "a&lt;b&gt;&amp;&quot;c&quot;");
    }
}
