//! Chern characters of the pushed-forward W-structure and the
//! Euler-characteristic bookkeeping behind virtual codimensions.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{bernoulli_polynomial, factorial, fmt_rational, int, Rational};
use crate::singularity::{sector_data, SectorKind, SingularityProfile};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TautologicalError {
    #[error("marking {index} lies in a Ramond sector")]
    RamondSector { index: usize },
    #[error("phase {theta} is not a multiple of 1/{dbar} in [0, 1)")]
    ThetaOffGrid { theta: String, dbar: u64 },
    #[error("sector exponent {0} out of range")]
    BadSector(u64),
}

/// Coefficients of `ch_h(Rπ_* L_j)` in terms of `κ_h`, `ψ_i^h` and the
/// boundary pushforwards `(j_Θ)_* sum_{a+a'=h-1} ψ^a (-ψ')^{a'}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrrCoefficients {
    pub h: usize,
    pub kappa: Rational,
    pub psi: Vec<Rational>,
    /// `(Θ, coefficient)` over the grid `{0, 1/d̄, ..., (d̄-1)/d̄}`; empty for `h = 0`.
    pub boundary: Vec<(Rational, Rational)>,
}

pub fn grr_coefficients(
    h: usize,
    q: &Rational,
    thetas: &[Rational],
    dbar: u64,
    d: u64,
) -> Result<GrrCoefficients, TautologicalError> {
    let grid = int(dbar as i64);
    for t in thetas {
        let scaled = t * &grid;
        if !scaled.is_integer() || *t < int(0) || *t >= int(1) {
            return Err(TautologicalError::ThetaOffGrid { theta: fmt_rational(t), dbar });
        }
    }
    let fact = Rational::from_integer(factorial(h as u64 + 1));
    let b = |x: &Rational| bernoulli_polynomial(h + 1, x) / &fact;
    let kappa = b(q);
    let psi = thetas.iter().map(|t| -b(t)).collect();
    let boundary = if h == 0 {
        Vec::new()
    } else {
        let half_d = Rational::new(BigInt::from(d), BigInt::from(2));
        (0..dbar)
            .map(|k| {
                let theta = Rational::new(BigInt::from(k), BigInt::from(dbar));
                let c = &half_d * b(&theta);
                (theta, c)
            })
            .collect()
    };
    Ok(GrrCoefficients { h, kappa, psi, boundary })
}

/// `(g-1) ĉ_W + sum ι(J^{m_i})` for narrow markings.
pub fn euler_characteristic_deficit(
    profile: &SingularityProfile,
    g: u64,
    exponents: &[u64],
) -> Result<Rational, TautologicalError> {
    let mut total = (int(g as i64) - int(1)) * &profile.central_charge;
    for (index, &m) in exponents.iter().enumerate() {
        let sector = sector_data(profile, m).map_err(|_| TautologicalError::BadSector(m))?;
        if sector.kind == SectorKind::R {
            return Err(TautologicalError::RamondSector { index });
        }
        total += sector.iota;
    }
    Ok(total)
}

/// One line of a coefficient table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrrRow {
    pub h: usize,
    /// `kappa`, `psi` or `boundary`
    pub class: String,
    pub marking: Option<usize>,
    pub theta: Option<String>,
    pub coefficient: String,
}

pub fn grr_rows(c: &GrrCoefficients) -> Vec<GrrRow> {
    let mut rows = vec![GrrRow {
        h: c.h,
        class: "kappa".into(),
        marking: None,
        theta: None,
        coefficient: fmt_rational(&c.kappa),
    }];
    rows.extend(c.psi.iter().enumerate().map(|(i, v)| GrrRow {
        h: c.h,
        class: "psi".into(),
        marking: Some(i + 1),
        theta: None,
        coefficient: fmt_rational(v),
    }));
    rows.extend(c.boundary.iter().map(|(t, v)| GrrRow {
        h: c.h,
        class: "boundary".into(),
        marking: None,
        theta: Some(fmt_rational(t)),
        coefficient: fmt_rational(v),
    }));
    rows
}

pub fn grr_csv(tables: &[GrrCoefficients]) -> String {
    let mut out = String::from("h,class,marking,theta,coefficient\n");
    for row in tables.iter().flat_map(grr_rows) {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.h,
            row.class,
            row.marking.map(|m| m.to_string()).unwrap_or_default(),
            row.theta.unwrap_or_default(),
            row.coefficient
        ));
    }
    out
}

/// Riemann–Roch multiplicity `(q - 1/2)(2g-2+n) - sum (Θ_i - 1/2)`.
pub fn riemann_roch_multiplicity(g: u64, q: &Rational, thetas: &[Rational]) -> Rational {
    let half = Rational::new(1.into(), 2.into());
    let chi = int(2 * g as i64 - 2 + thetas.len() as i64);
    let s = thetas.iter().fold(Rational::zero(), |acc, t| acc + t - &half);
    (q - &half) * chi - s
}

/// Evaluates the `h = 0` coefficients on `2g-2+n` copies of `κ_0` and unit `ψ^0`.
pub fn degree_zero_total(c: &GrrCoefficients, g: u64) -> Rational {
    let chi = int(2 * g as i64 - 2 + c.psi.len() as i64);
    c.psi.iter().fold(&c.kappa * chi, |acc, p| acc + p)
}
