//! Small numeric utilities: compensated summation, gamma functions, polynomials.

/// Kahan compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function for real arguments (poles return +-inf/NaN naturally).
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection
        let s = (std::f64::consts::PI * x).sin();
        std::f64::consts::PI / (s * gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut acc = LANCZOS[0];
        for (i, c) in LANCZOS.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let t = x + LANCZOS_G + 0.5;
        (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
    }
}

/// Natural log of |Gamma(x)| for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x < 0.5 {
        let s = (std::f64::consts::PI * x).sin();
        std::f64::consts::PI.ln() - s.ln() - ln_gamma(1.0 - x)
    } else {
        let x = x - 1.0;
        let mut acc = LANCZOS[0];
        for (i, c) in LANCZOS.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let t = x + LANCZOS_G + 0.5;
        0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
    }
}

/// 1/Gamma(x), finite everywhere (zero at the poles).
pub fn recip_gamma(x: f64) -> f64 {
    if x > 0.5 {
        return gamma(x).recip();
    }
    // 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi
    (std::f64::consts::PI * x).sin() * gamma(1.0 - x) / std::f64::consts::PI
}

// Taylor coefficients of 1/Gamma(1+x) around x = 0.
const RECIP_GAMMA1P: [f64; 10] = [
    1.0,
    0.577_215_664_901_532_86,
    -0.655_878_071_520_253_88,
    -0.042_002_635_034_095_236,
    0.166_538_611_382_291_49,
    -0.042_197_734_555_544_337,
    -0.009_621_971_527_876_974,
    0.007_218_943_246_663_1,
    -0.001_165_167_591_859_065,
    -0.000_215_241_674_114_950_97,
];

/// 1/Gamma(1+x) for |x| <= 0.5 by Taylor series (cancellation-free near 0).
pub fn recip_gamma_1p_small(x: f64) -> f64 {
    debug_assert!(x.abs() <= 0.5 + 1e-12);
    let mut acc = 0.0;
    for c in RECIP_GAMMA1P.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Plain polynomial with f64 coefficients, ascending powers.
///
/// Used by the transition-region derivative machinery, where products with
/// Airy functions are differentiated symbolically.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly(pub Vec<f64>);

impl Poly {
    pub fn zero() -> Self {
        Poly(vec![])
    }

    pub fn constant(c: f64) -> Self {
        Poly(vec![c])
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly::zero();
        }
        Poly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| k as f64 * c)
                .collect(),
        )
    }

    /// self + other
    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let mut out = vec![0.0; n];
        for (i, c) in self.0.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            out[i] += c;
        }
        Poly(out)
    }

    /// self * scalar
    pub fn scale(&self, s: f64) -> Poly {
        Poly(self.0.iter().map(|c| c * s).collect())
    }

    /// self * x^k
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.0.is_empty() {
            return Poly::zero();
        }
        let mut out = vec![0.0; k];
        out.extend_from_slice(&self.0);
        Poly(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_known_values() {
        assert_relative_eq!(gamma(0.5), std::f64::consts::PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(gamma(1.0), 1.0, max_relative = 1e-14);
        assert_relative_eq!(gamma(5.0), 24.0, max_relative = 1e-14);
        assert_relative_eq!(gamma(1.5), 0.5 * std::f64::consts::PI.sqrt(), max_relative = 1e-14);
        // recurrence on a sample of non-integer points
        for &x in &[0.1, 0.31, 1.7, 3.25, 9.5, 20.25] {
            assert_relative_eq!(gamma(x + 1.0), x * gamma(x), max_relative = 1e-13);
        }
    }

    #[test]
    fn ln_gamma_matches_gamma() {
        for &x in &[0.2, 0.9, 2.5, 7.0, 31.5, 140.25] {
            assert_relative_eq!(ln_gamma(x), gamma(x).ln(), epsilon = 1e-12, max_relative = 1e-12);
        }
    }

    #[test]
    fn recip_gamma_at_poles_is_zero() {
        assert_eq!(recip_gamma(0.0), 0.0);
        assert!(recip_gamma(-1.0).abs() < 1e-15);
        assert!(recip_gamma(-7.0).abs() < 1e-8);
        assert_relative_eq!(recip_gamma(-0.5), 1.0 / gamma(-0.5), max_relative = 1e-13);
    }

    #[test]
    fn recip_gamma_1p_series_matches() {
        for &x in &[-0.5, -0.2, -0.01, 0.0, 0.013, 0.25, 0.5] {
            assert_relative_eq!(
                recip_gamma_1p_small(x),
                recip_gamma(1.0 + x),
                epsilon = 1e-13,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn kahan_beats_naive_on_ill_conditioned_sum() {
        let mut k = KahanSum::new();
        for _ in 0..10_000 {
            k.add(0.1);
        }
        assert_relative_eq!(k.value(), 1000.0, epsilon = 1e-10);
    }

    #[test]
    fn poly_ops() {
        let p = Poly(vec![1.0, -2.0, 3.0]); // 1 - 2x + 3x^2
        assert_eq!(p.eval(2.0), 9.0);
        assert_eq!(p.derivative().0, vec![-2.0, 6.0]);
        assert_eq!(p.shift_up(1).0, vec![0.0, 1.0, -2.0, 3.0]);
        assert_eq!(p.add(&Poly::constant(4.0)).eval(0.0), 5.0);
    }
}
