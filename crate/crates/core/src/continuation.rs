//! The symplectic transformation `U` carrying the FJRW periods to the
//! analytic continuation of the GW periods, evaluated in double precision.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Execution;
use crate::ring::{gamma_complex, Complex, RingError, ZETA3};
use crate::series::TruncatedSeries;

/// `C = c_2(X)[H] / (24 deg)` for the quintic.
pub const C_CONST: f64 = 5.0 / 12.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ContinuationError {
    #[error("Gram matrix is singular")]
    SingularGram,
    #[error("expansion order {0} is below 3")]
    OrderTooSmall(usize),
    #[error(transparent)]
    Ring(#[from] RingError),
}

pub fn two_pi_i() -> Complex {
    Complex::new(0.0, 2.0 * PI)
}

/// `ξ = exp(2πi/5)`.
pub fn xi() -> Complex {
    Complex::from_polar(1.0, 2.0 * PI / 5.0)
}

/// `E = -40 ζ(3) / (2πi)^3`.
pub fn e_const() -> Complex {
    -40.0 * ZETA3 / two_pi_i().powi(3)
}

/// Taylor coefficients `ρ^0..ρ^3` of `g(ρ) = ξ^k/(e^{-2πiρ} - ξ^k)` and
/// `f(ρ) = Γ^5(1+ρ)/Γ(1+5ρ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionPair {
    pub k: u32,
    pub g: [Complex; 4],
    pub f: [Complex; 4],
}

/// Closed-form expansions of `g` and `f`.
pub fn fg_expansion(k: u32) -> ExpansionPair {
    let x = xi().powu(k);
    let w = Complex::new(1.0, 0.0) - x;
    let tpi = two_pi_i();
    let g = [
        x / w,
        x / w.powi(2) * tpi,
        x * (1.0 + x) / (2.0 * w.powi(3)) * tpi.powi(2),
        x * (1.0 + 4.0 * x + x * x) / (6.0 * w.powi(4)) * tpi.powi(3),
    ];
    let f = [
        Complex::new(1.0, 0.0),
        Complex::new(0.0, 0.0),
        C_CONST * tpi.powi(2),
        -e_const() * tpi.powi(3),
    ];
    ExpansionPair { k, g, f }
}

/// One entry of `U`: a complex coefficient times `z^{z_power}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct UEntry {
    pub re: f64,
    pub im: f64,
    pub z_power: i32,
}

impl UEntry {
    pub fn value(&self) -> Complex {
        Complex::new(self.re, self.im)
    }

    fn new(c: Complex, z_power: i32) -> Self {
        UEntry { re: c.re, im: c.im, z_power }
    }
}

/// `entries[r][k]`, row `r` for `H^r`, column `k` for `ω_{k+1}^FJRW`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuationMatrix {
    pub entries: Vec<Vec<UEntry>>,
}

/// `(-1)^k / Γ^5(1 - k/5)`, exactly zero when `5 | k`.
pub fn column_prefactor(k: u32) -> Result<Complex, ContinuationError> {
    if k % 5 == 0 {
        return Ok(Complex::new(0.0, 0.0));
    }
    let gamma = gamma_complex(Complex::new(1.0 - k as f64 / 5.0, 0.0))?;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign / gamma.powi(5))
}

/// Column `k` (`k >= 1`) of `U` with the constants `C`, `E` supplied.
pub fn u_column_with(k: u32, c: Complex, e: Complex) -> Result<[UEntry; 4], ContinuationError> {
    let pre = column_prefactor(k)?;
    let kz = k as i32;
    if pre == Complex::new(0.0, 0.0) {
        return Ok(std::array::from_fn(|r| UEntry::new(pre, kz - r as i32 - 1)));
    }
    let x = xi().powu(k);
    let w = Complex::new(1.0, 0.0) - x;
    let brackets = [
        x / w,
        x / w.powi(2),
        x * (1.0 + x) / (2.0 * w.powi(3)) + c * x / w,
        x * (1.0 + 4.0 * x + x * x) / (6.0 * w.powi(4)) + c * x / w.powi(2) - e * x / w,
    ];
    let tpi = two_pi_i();
    Ok(std::array::from_fn(|r| {
        UEntry::new(pre * tpi.powi(r as i32 + 1) * brackets[r], kz - r as i32 - 1)
    }))
}

pub fn build_u_matrix() -> Result<ContinuationMatrix, ContinuationError> {
    build_u_matrix_with(Complex::new(C_CONST, 0.0), e_const(), Execution::default())
}

pub fn build_u_matrix_with(c: Complex, e: Complex, exec: Execution) -> Result<ContinuationMatrix, ContinuationError> {
    let columns = exec
        .map_range(4, |k| u_column_with(k as u32 + 1, c, e))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let entries = (0..4).map(|r| (0..4).map(|k| columns[k][r]).collect()).collect();
    Ok(ContinuationMatrix { entries })
}

/// Default Gram matrices: `(φ_h, φ_{3-h}) = 1/5` on the FJRW side and
/// `(H^a, H^b) = 5 δ_{a+b,3}` on the GW side, written in the basis
/// `H^a / 5` identified with the FJRW dual basis.
pub fn default_grams() -> ([[Complex; 4]; 4], [[Complex; 4]; 4]) {
    let anti = |v: f64| std::array::from_fn(|i| std::array::from_fn(|j| Complex::new(if i + j == 3 { v } else { 0.0 }, 0.0)));
    let fjrw = anti(0.2);
    // 5 δ / 5^2 in the rescaled basis
    let gw = anti(5.0 / 25.0);
    (fjrw, gw)
}

fn det4(m: &[[Complex; 4]; 4]) -> Complex {
    let mut a = *m;
    let mut det = Complex::new(1.0, 0.0);
    for col in 0..4 {
        let Some(p) = (col..4).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm())) else {
            return Complex::new(0.0, 0.0);
        };
        if a[p][col].norm() < 1e-300 {
            return Complex::new(0.0, 0.0);
        }
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= a[col][col];
        for i in col + 1..4 {
            let f = a[i][col] / a[col][col];
            for j in col..4 {
                let v = a[col][j];
                a[i][j] -= f * v;
            }
        }
    }
    det
}

/// Largest deviation of `U^T(-z) G_GW U(z)` from `G_FJRW`, compared
/// power by power in `z`.
pub fn check_symplectic(
    u: &ContinuationMatrix,
    gram_fjrw: &[[Complex; 4]; 4],
    gram_gw: &[[Complex; 4]; 4],
) -> Result<f64, ContinuationError> {
    for g in [gram_fjrw, gram_gw] {
        if det4(g).norm() < 1e-14 {
            return Err(ContinuationError::SingularGram);
        }
    }
    use std::collections::BTreeMap;
    let mut by_power: BTreeMap<i32, [[Complex; 4]; 4]> = BTreeMap::new();
    for k in 0..4 {
        for j in 0..4 {
            for r in 0..4 {
                for s in 0..4 {
                    let g = gram_gw[r][s];
                    if g == Complex::new(0.0, 0.0) {
                        continue;
                    }
                    let a = u.entries[r][k];
                    let b = u.entries[s][j];
                    let sign = if a.z_power.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                    let slot = by_power.entry(a.z_power + b.z_power).or_insert([[Complex::new(0.0, 0.0); 4]; 4]);
                    slot[k][j] += sign * a.value() * g * b.value();
                }
            }
        }
    }
    let mut worst: f64 = 0.0;
    by_power.entry(0).or_insert([[Complex::new(0.0, 0.0); 4]; 4]);
    for (power, m) in &by_power {
        for k in 0..4 {
            for j in 0..4 {
                let target = if *power == 0 { gram_fjrw[k][j] } else { Complex::new(0.0, 0.0) };
                worst = worst.max((m[k][j] - target).norm());
            }
        }
    }
    Ok(worst)
}

/// `det` of `U` with `z = 1`.
pub fn collapsed_determinant(u: &ContinuationMatrix) -> Complex {
    let m: [[Complex; 4]; 4] = std::array::from_fn(|r| std::array::from_fn(|k| u.entries[r][k].value()));
    det4(&m)
}

/// `ζ(n)` for integer `n >= 2`.
pub fn zeta(n: u32) -> f64 {
    match n {
        2 => PI * PI / 6.0,
        3 => ZETA3,
        _ => {
            let big = 1000.0_f64;
            let s: f64 = (1..1000).map(|m| (m as f64).powi(-(n as i32))).sum();
            // Euler–Maclaurin tail
            s + big.powi(1 - n as i32) / (n as f64 - 1.0) + 0.5 * big.powi(-(n as i32))
        }
    }
}

/// `f(ρ)` to `ρ^order` from `log f = sum_{k>=2} (-1)^k ζ(k) (5 - 5^k) ρ^k / k`.
pub fn f_series(order: usize) -> TruncatedSeries<Complex> {
    let n = order + 1;
    let log_f: Vec<Complex> = (0..n)
        .map(|k| {
            if k < 2 {
                return Complex::new(0.0, 0.0);
            }
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            Complex::new(sign * zeta(k as u32) * (5.0 - 5f64.powi(k as i32)) / k as f64, 0.0)
        })
        .collect();
    TruncatedSeries::new("rho", n, log_f).exp().expect("zero constant term")
}

/// `g(ρ)` to `ρ^order` as `ξ^k` times the reciprocal of the Taylor series
/// of `e^{-2πiρ} - ξ^k`.
pub fn g_series(k: u32, order: usize) -> TruncatedSeries<Complex> {
    let n = order + 1;
    let x = xi().powu(k);
    let mut coeffs = Vec::with_capacity(n);
    let mut term = Complex::new(1.0, 0.0);
    for m in 0..n {
        if m > 0 {
            term = term * (-two_pi_i()) / m as f64;
        }
        coeffs.push(if m == 0 { term - x } else { term });
    }
    TruncatedSeries::new("rho", n, coeffs).reciprocal().expect("1 - ξ^k is nonzero").scale(&x)
}

/// Column `k` of `U` recomputed from `(z/5) f(H/z) (-1)^k (2πi) g_k(H/z) / Γ^5(1-k/5)`
/// in the basis `H^r / 5`, using `f_override` in place of `f` when given.
pub fn continuation_column(
    k: u32,
    order: usize,
    f_override: Option<&TruncatedSeries<Complex>>,
) -> Result<[UEntry; 4], ContinuationError> {
    if order < 3 {
        return Err(ContinuationError::OrderTooSmall(order));
    }
    let f = f_override.cloned().unwrap_or_else(|| f_series(order));
    let fg = f.mul(&g_series(k, order)).expect("same variable");
    let pre = column_prefactor(k)? * two_pi_i();
    let kz = k as i32;
    // H^r carries (1/5) pre (fg)_r z^{1-r}; rewriting in the basis H^r/5
    // multiplies by 5, and ω_k itself carries z^{2-k}
    let identification = 5.0;
    Ok(std::array::from_fn(|r| {
        UEntry::new(identification * pre * fg.coeffs()[r] / 5.0, kz - 1 - r as i32)
    }))
}

/// Largest deviation between the columns of `U` and their re-expansion.
pub fn continuation_consistency(order: usize) -> Result<f64, ContinuationError> {
    let u = build_u_matrix()?;
    let mut worst: f64 = 0.0;
    for k in 1..=4u32 {
        let col = continuation_column(k, order, None)?;
        for (r, e) in col.iter().enumerate() {
            let target = u.entries[r][k as usize - 1];
            if e.z_power != target.z_power {
                return Ok(f64::INFINITY);
            }
            worst = worst.max((e.value() - target.value()).norm());
        }
    }
    Ok(worst)
}
