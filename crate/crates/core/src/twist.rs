//! Twisted FJRW theory: the `s_d` specialization, the logarithm of the
//! symplectomorphism Δ, and the modification factor relating twisted and
//! untwisted I-functions.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::ring::{
    bernoulli_polynomial, factorial, frac, gamma_real, rat, rational_to_f64, Complex, Rational,
    RingError,
};
use crate::series::TruncatedSeries;

/// Highest `d` for which `s_d` is stored.
pub const D_MAX: usize = 24;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TwistError {
    #[error("equivariant parameter λ must be nonzero")]
    ZeroLambda,
    #[error("s_0 = -5 ln λ is not rational")]
    Transcendental,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// `s_0 = -5 ln λ`, `s_d = 5 (d-1)! / λ^d`.
pub fn specialize_s(lambda: Complex, d: usize) -> Result<Complex, TwistError> {
    if lambda.norm() == 0.0 {
        return Err(TwistError::ZeroLambda);
    }
    if d == 0 {
        return Ok(-5.0 * lambda.ln());
    }
    let f = factorial(d as u64 - 1).to_f64().unwrap_or(f64::INFINITY);
    Ok(5.0 * f / lambda.powi(d as i32))
}

/// Exact `s_d` for rational `λ` and `d >= 1`.
pub fn specialize_s_exact(lambda: &Rational, d: usize) -> Result<Rational, TwistError> {
    if lambda.is_zero() {
        return Err(TwistError::ZeroLambda);
    }
    if d == 0 {
        return Err(TwistError::Transcendental);
    }
    let num = Rational::from_integer(factorial(d as u64 - 1) * BigInt::from(5));
    Ok(num / num_traits::Pow::pow(lambda.clone(), d as u64))
}

/// Parameters of the twisted theory, with `s_0 .. s_{D_MAX}` specialized.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistParameters {
    pub lambda: Complex,
    pub s: Vec<Complex>,
}

impl TwistParameters {
    pub fn specialized(lambda: Complex) -> Result<Self, TwistError> {
        let s = (0..=D_MAX).map(|d| specialize_s(lambda, d)).collect::<Result<_, _>>()?;
        Ok(TwistParameters { lambda, s })
    }

    /// `s(x) = sum_{d <= D_MAX} s_d x^d / d!`.
    pub fn s_series_at(&self, x: Complex) -> Complex {
        let mut acc = Complex::zero();
        let mut term = Complex::new(1.0, 0.0);
        for (d, s) in self.s.iter().enumerate() {
            if d > 0 {
                term = term * x / d as f64;
            }
            acc += s * term;
        }
        acc
    }
}

/// Closed form of the specialized generating function: `-5 ln(λ - x)`.
pub fn s_closed_form(lambda: Complex, x: Complex) -> Complex {
    -5.0 * (lambda - x).ln()
}

/// `s_d B_{d+1}((i+1)/5) / (d+1)!`, the `z^d` coefficient of `log Δ` on
/// the sector `φ_i`. Missing `s_d` count as zero.
pub fn delta_log_coefficient<R: crate::ring::Coefficient>(i: usize, d: usize, s: &[R]) -> R {
    let Some(sd) = s.get(d) else {
        return R::zero();
    };
    let x = rat(i as i64 + 1, 5);
    let c = bernoulli_polynomial(d + 1, &x) / Rational::from_integer(factorial(d as u64 + 1));
    sd.mul(&R::from_rational(&c))
}

/// `log Δ_i` as a series in `z` of the given order.
pub fn delta_log_series<R: crate::ring::Coefficient>(i: usize, s: &[R], order: usize) -> TruncatedSeries<R> {
    TruncatedSeries::new("z", order, (0..order).map(|d| delta_log_coefficient(i, d, s)).collect())
}

/// Offsets `b` in the modification factor: `{Σ/5} + m` for `0 <= m < ⌊Σ/5⌋`.
pub fn modification_offsets(sum_ik: u64) -> Vec<Rational> {
    let x = rat(sum_ik as i64, 5);
    let f = frac(&x);
    (0..sum_ik / 5).map(|m| &f + Rational::from_integer(m.into())).collect()
}

/// `prod_b (λ + z/5 + b z)^5`.
pub fn modification_factor(sum_ik: u64, lambda: Complex, z: Complex) -> Result<Complex, TwistError> {
    if lambda.norm() == 0.0 {
        return Err(TwistError::ZeroLambda);
    }
    Ok(modification_offsets(sum_ik)
        .iter()
        .map(|b| (lambda + z * (0.2 + rational_to_f64(b))).powi(5))
        .product())
}

/// The nonequivariant limit `prod_b (-z/5 - b z)^5` written through Γ:
/// `(Γ((k+1)/5) / Γ({k/5} + 1/5))^5 (-z)^{5⌊k/5⌋}`.
pub fn step4_gamma_form(k: u64, z: Complex) -> Result<Complex, TwistError> {
    let top = gamma_real((k as f64 + 1.0) / 5.0)?;
    let f = rational_to_f64(&frac(&rat(k as i64, 5)));
    let bottom = gamma_real(f + 0.2)?;
    Ok((-z).powi(5 * (k / 5) as i32) * (top / bottom).powi(5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn close(a: Complex, b: Complex, rel: f64) -> bool {
        (a - b).norm() <= rel * b.norm().max(1e-300)
    }

    #[test]
    fn specialization_examples() {
        let s0 = specialize_s(c(2.0, 0.0), 0).unwrap();
        assert!((s0.re + 5.0 * 2f64.ln()).abs() < 1e-15 && s0.im == 0.0);
        assert_eq!(specialize_s(c(2.0, 0.0), 1).unwrap(), c(2.5, 0.0));
        assert_eq!(specialize_s(c(1.0, 0.0), 3).unwrap(), c(10.0, 0.0));
        assert_eq!(specialize_s(c(0.0, 0.0), 1), Err(TwistError::ZeroLambda));
        assert_eq!(specialize_s_exact(&int(2), 1).unwrap(), rat(5, 2));
        assert_eq!(specialize_s_exact(&rat(1, 2), 3).unwrap(), int(80));
        assert_eq!(specialize_s_exact(&int(2), 0), Err(TwistError::Transcendental));
    }

    #[test]
    fn delta_examples() {
        let zeros = vec![int(0); 5];
        for i in 0..5 {
            for d in 0..5 {
                assert!(delta_log_coefficient(i, d, &zeros).is_zero());
            }
        }
        assert_eq!(delta_log_coefficient(0, 0, &[int(1)]), rat(-3, 10));
        assert_eq!(delta_log_coefficient(4, 1, &[int(0), int(1)]), rat(1, 12));
        let series = delta_log_series(4, &[int(0), int(1)], 4);
        assert_eq!(series.coeff(1), Some(&rat(1, 12)));
    }

    #[test]
    fn modification_examples() {
        let (l, z) = (c(1.3, -0.2), c(0.1, 0.05));
        assert_eq!(modification_factor(3, l, z).unwrap(), c(1.0, 0.0));
        assert!(close(modification_factor(5, l, z).unwrap(), (l + z / 5.0).powi(5), 1e-14));
        assert!(close(modification_factor(7, l, z).unwrap(), (l + z * 0.6).powi(5), 1e-14));
        assert_eq!(modification_offsets(7), vec![rat(2, 5)]);
        assert_eq!(modification_factor(7, c(0.0, 0.0), z), Err(TwistError::ZeroLambda));
    }

    #[test]
    fn product_matches_exp_of_s() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let lambda = c(rng.gen_range(0.5..3.0), rng.gen_range(-1.0..1.0));
            let r = rng.gen_range(0.0..0.25) * lambda.norm();
            let z = Complex::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU));
            let sum_ik = rng.gen_range(0..=20u64);
            let f = rational_to_f64(&frac(&rat(sum_ik as i64, 5)));
            let exponent: Complex = (0..sum_ik / 5)
                .map(|m| -s_closed_form(lambda, -z / 5.0 - f * z - m as f64 * z))
                .sum();
            let lhs = modification_factor(sum_ik, lambda, z).unwrap();
            assert!(close(lhs, exponent.exp(), 1e-10), "Σ={sum_ik}");
        }
    }

    #[test]
    fn truncated_s_series_matches_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let lambda = c(rng.gen_range(0.5..3.0), rng.gen_range(-1.0..1.0));
            let params = TwistParameters::specialized(lambda).unwrap();
            let x = Complex::from_polar(
                rng.gen_range(0.0..0.25) * lambda.norm(),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            assert!(close(params.s_series_at(x), s_closed_form(lambda, x), 1e-10));
        }
    }

    #[test]
    fn nonequivariant_gamma_form() {
        let z = c(0.7, -0.3);
        for k in 1..=14u64 {
            let product: Complex = modification_offsets(k)
                .iter()
                .map(|b| (-z / 5.0 - z * rational_to_f64(b)).powi(5))
                .product();
            let closed = step4_gamma_form(k, z).unwrap();
            assert!(close(closed, product, 1e-10), "k={k}: {closed} vs {product}");
        }
    }
}
