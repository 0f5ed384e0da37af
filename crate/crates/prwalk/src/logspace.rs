//! Small log-domain helpers.

/// Numerically stable log(exp(a) + exp(b)).
pub fn log_sum_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    if a >= b {
        a + (b - a).exp().ln_1p()
    } else {
        b + (a - b).exp().ln_1p()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn matches_naive_in_safe_range() {
        let cases = [(0.5, 2.0), (-3.0, -3.0), (10.0, -40.0)];
        for (a, b) in cases {
            let naive = (f64::exp(a) + f64::exp(b)).ln();
            assert_abs_diff_eq!(log_sum_exp(a, b), naive, epsilon = 1e-14);
        }
    }

    #[test]
    fn handles_neg_infinity() {
        assert_eq!(log_sum_exp(f64::NEG_INFINITY, 1.5), 1.5);
        assert_eq!(log_sum_exp(1.5, f64::NEG_INFINITY), 1.5);
        assert_eq!(
            log_sum_exp(f64::NEG_INFINITY, f64::NEG_INFINITY),
            f64::NEG_INFINITY
        );
    }

    #[test]
    fn no_overflow_for_large_inputs() {
        let r = log_sum_exp(-1234.0, -1232.0);
        assert_abs_diff_eq!(r, -1232.0 + 2.0f64.exp().recip().ln_1p(), epsilon = 1e-12);
    }
}
