//! Number formatting shared by the JSON and CSV writers.

/// Formats `x` with 17 significant digits (C's `%.17g`), enough for any
/// `f64` to round-trip through text bit-for-bit.
pub fn sig17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();

    if !(-5..17).contains(&exp) {
        let frac = digits[1..].trim_end_matches('0');
        return if frac.is_empty() {
            format!("{sign}{}e{exp}", &digits[..1])
        } else {
            format!("{sign}{}.{frac}e{exp}", &digits[..1])
        };
    }

    let body = if exp < 0 {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    } else {
        let split = exp as usize + 1;
        format!("{}.{}", &digits[..split], &digits[split..])
    };
    let body = body.trim_end_matches('0').trim_end_matches('.');
    format!("{sign}{body}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g17() {
        assert_eq!(sig17(0.5), "0.5");
        assert_eq!(sig17(0.45), "0.45000000000000001");
        assert_eq!(sig17(1.0), "1");
        assert_eq!(sig17(-2.5e-7), "-2.4999999999999999e-7");
        assert_eq!(sig17(1.0 / 3.0), "0.33333333333333331");
        assert_eq!(sig17(0.0), "0");
        assert_eq!(sig17(123.0), "123");
        assert_eq!(sig17(1e20), "1e20");
    }

    #[test]
    fn round_trips() {
        for &x in &[0.1, 0.45, 0.33676029181068889, 1e-300, 5e-324, 0.999999999999, 7.0e16] {
            assert_eq!(sig17(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }
}
