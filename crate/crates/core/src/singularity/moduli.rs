use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Zero};

use super::{SingularityError, SingularityProfile};
use crate::ring::{frac, int, Rational};

/// Whether the moduli of W-curves of genus `g` with markings of types
/// `sectors` (phase vectors) is nonempty for `ω_log^c`.
pub fn nonempty_check(profile: &SingularityProfile, g: u64, c: i64, sectors: &[Vec<Rational>]) -> bool {
    if !sectors.iter().all(|theta| profile.contains(theta)) {
        return false;
    }
    let n = sectors.len() as i64;
    let chi = int(c * (2 * g as i64 - 2 + n));
    (0..profile.num_vars()).all(|j| {
        let total = sectors.iter().fold(Rational::zero(), |acc, t| acc + &t[j]);
        (&profile.charges[j] * &chi - total).is_integer()
    })
}

/// `nonempty_check` with markings given as powers of `J`.
pub fn nonempty_check_j(profile: &SingularityProfile, g: u64, c: i64, exponents: &[u64]) -> bool {
    let sectors: Vec<Vec<Rational>> = exponents
        .iter()
        .map(|&m| profile.j_phases.iter().map(|p| frac(&(p * int(m as i64)))).collect())
        .collect();
    nonempty_check(profile, g, c, &sectors)
}

/// `|G_W|^{2g-1+n} / d̄^N`, the degree of the moduli of W-curves over the
/// moduli of stable curves.
pub fn moduli_degree(profile: &SingularityProfile, g: u64, n: u64, c: i64) -> Result<Rational, SingularityError> {
    let closed_ok = BigInt::from(c * (2 * g as i64 - 2)).is_multiple_of(&profile.degree);
    if n == 0 && !closed_ok {
        return Err(SingularityError::EmptyModuli { g, n, c: c.unsigned_abs() });
    }
    let e = 2 * g as i64 - 1 + n as i64;
    Ok(power(&profile.group_order, e) / power(&profile.exponent, profile.num_vars() as i64))
}

/// `|G_W|^{2g} / d̄^N`, the degree of each nonempty component with fixed
/// marking types.
pub fn component_degree(profile: &SingularityProfile, g: u64) -> Rational {
    power(&profile.group_order, 2 * g as i64) / power(&profile.exponent, profile.num_vars() as i64)
}

/// `3g - 3 - n + sum m_i` for markings of types `J^{m_i}`.
pub fn virtual_codim(g: u64, ms: &[u64]) -> i64 {
    3 * g as i64 - 3 - ms.len() as i64 + ms.iter().sum::<u64>() as i64
}

fn power(base: &BigInt, e: i64) -> Rational {
    let b = Rational::from_integer(base.clone());
    if e >= 0 {
        Pow::pow(b, e as u64)
    } else {
        Pow::pow(b.recip(), (-e) as u64)
    }
}
