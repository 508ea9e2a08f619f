//! Exact rationals, the coefficient-ring abstraction used by the series
//! module, and the handful of special functions everything else leans on.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational; always kept in lowest terms with a
/// positive denominator by `num-rational`.
pub type Rational = BigRational;

/// Double-precision complex number.
pub type Complex = Complex64;

/// Apéry's constant ζ(3).
pub const ZETA3: f64 = 1.202_056_903_159_594_285_4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RingError {
    #[error("gamma function has a pole at {0}")]
    Pole(f64),
    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),
}

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num/den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parse `"a"` or `"a/b"` (whitespace tolerated).
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Exact `num/den` rendering; integers render without a denominator.
pub fn fmt_rational(x: &Rational) -> String {
    x.to_string()
}

pub fn rational_to_f64(x: &Rational) -> f64 {
    // to_f64 on BigRational handles huge numerators and denominators
    x.to_f64().unwrap_or(f64::NAN)
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// Commutative ring with identity, as needed by [`crate::series::TruncatedSeries`].
pub trait Coefficient: Clone + Debug + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse when it exists.
    fn inverse(&self) -> Option<Self>;
    fn from_rational(x: &Rational) -> Self;

    fn add_assign(&mut self, rhs: &Self) {
        *self = Coefficient::add(&*self, rhs);
    }

    fn scale(&self, x: &Rational) -> Self {
        Coefficient::mul(self, &Self::from_rational(x))
    }
}

impl Coefficient for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn from_rational(x: &Rational) -> Self {
        x.clone()
    }
    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }
}

impl Coefficient for Complex {
    fn zero() -> Self {
        Complex::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        (self.norm() != 0.0).then(|| self.inv())
    }
    fn from_rational(x: &Rational) -> Self {
        Complex::new(rational_to_f64(x), 0.0)
    }
}

/// Rising factorial `a (a+1) ... (a+n-1)`; `n = 0` gives 1.
pub fn pochhammer(a: &Rational, n: usize) -> Rational {
    let mut acc = <Rational as One>::one();
    let mut x = a.clone();
    for _ in 0..n {
        acc *= &x;
        x += <Rational as One>::one();
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `(a_1 + ... + a_n)! / (a_1! ... a_n!)`.
pub fn multinomial(parts: &[u64]) -> BigInt {
    let mut total = 0u64;
    let mut acc = BigInt::one();
    for &a in parts {
        total += a;
        acc *= binomial(total, a);
    }
    acc
}

thread_local! {
    static BERNOULLI: RefCell<Vec<Rational>> = RefCell::new(vec![<Rational as One>::one()]);
}

/// Bernoulli numbers with `B_1 = -1/2`.
///
/// Computed by the Akiyama–Tanigawa triangle and cached per thread.
pub fn bernoulli_number(n: usize) -> Rational {
    BERNOULLI.with(|cache| {
        let mut cache = cache.borrow_mut();
        if cache.len() <= n {
            *cache = akiyama_tanigawa(n.max(2 * cache.len()));
        }
        cache[n].clone()
    })
}

fn akiyama_tanigawa(max: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(max + 1);
    let mut row: Vec<Rational> = Vec::with_capacity(max + 1);
    for m in 0..=max {
        row.push(rat(1, m as i64 + 1));
        for j in (1..=m).rev() {
            row[j - 1] = int(j as i64) * (&row[j - 1] - &row[j]);
        }
        out.push(row[0].clone());
    }
    // the triangle yields B_1 = +1/2
    if max >= 1 {
        out[1] = rat(-1, 2);
    }
    out
}

/// `B_n(x) = sum_k C(n,k) B_k x^(n-k)`.
pub fn bernoulli_polynomial(n: usize, x: &Rational) -> Rational {
    let mut acc = <Rational as Zero>::zero();
    let mut xp = <Rational as One>::one();
    for k in (0..=n).rev() {
        acc += Rational::from_integer(binomial(n as u64, k as u64)) * bernoulli_number(k) * &xp;
        xp *= x;
    }
    acc
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for complex x via Lanczos (g = 7, nine terms), reflecting for
/// `Re x < 1/2`.
pub fn gamma_complex(x: Complex) -> Result<Complex, RingError> {
    if x.im == 0.0 && x.re <= 0.0 && x.re == x.re.round() {
        return Err(RingError::Pole(x.re));
    }
    let value = if x.re < 0.5 {
        let s = (Complex::new(PI, 0.0) * x).sin();
        Complex::new(PI, 0.0) / (s * lanczos(Complex::new(1.0, 0.0) - x))
    } else {
        lanczos(x)
    };
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(RingError::NonFinite("gamma_complex"))
    }
}

fn lanczos(x: Complex) -> Complex {
    let x = x - 1.0;
    let mut a = Complex::new(LANCZOS_COEFFS[0], 0.0);
    let t = x + LANCZOS_G + 0.5;
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    (2.0 * PI).sqrt() * t.powc(x + 0.5) * (-t).exp() * a
}

/// Γ on the real line.
pub fn gamma_real(x: f64) -> Result<f64, RingError> {
    gamma_complex(Complex::new(x, 0.0)).map(|z| z.re)
}

/// Greatest common divisor of a slice of integers (0 for an empty slice).
pub fn gcd_all(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

pub fn lcm_all(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v))
}

/// `true` when `x` is an integer.
pub fn is_integer(x: &Rational) -> bool {
    x.is_integer()
}

pub fn abs_rational(x: &Rational) -> Rational {
    x.abs()
}
