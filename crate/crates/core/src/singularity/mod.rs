//! Quasihomogeneous singularities: charges, the diagonal symmetry group,
//! sectors of the state space and the combinatorics of the moduli of
//! W-curves.

mod moduli;
mod parse;
mod sector;
pub mod snf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{fmt_rational, int, lcm_all, Rational};

pub use moduli::{component_degree, moduli_degree, nonempty_check, nonempty_check_j, virtual_codim};
pub use parse::parse_polynomial;
pub use sector::{sector_data, state_space_dimension, Sector, SectorKind, SectorReport};
pub use snf::{smith_normal_form, IntMatrix, SmithForm};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SingularityError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("polynomial needs at least one variable and one monomial")]
    Empty,
    #[error("charges are not uniquely determined (exponent matrix has rank {rank} < {vars})")]
    NonUniqueCharges { rank: usize, vars: usize },
    #[error("no charges make every monomial have weight 1")]
    NoSolution,
    #[error("charge of {variable} is {charge}, not positive")]
    NonPositiveCharge { variable: String, charge: String },
    #[error("charge of {variable} is {charge}, not below 1")]
    ChargeNotFractional { variable: String, charge: String },
    #[error("sector exponent {m} out of range 0..{d}")]
    SectorOutOfRange { m: u64, d: u64 },
    #[error("moduli space is empty for g={g}, n={n}, c={c}")]
    EmptyModuli { g: u64, n: u64, c: u64 },
}

/// `W = sum_i l_i prod_j x_j^{m_ij}` with pairwise distinct exponent rows.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasihomPolynomial {
    variables: Vec<String>,
    monomials: Vec<(Rational, Vec<u32>)>,
}

impl QuasihomPolynomial {
    pub fn new(
        variables: Vec<String>,
        monomials: Vec<(Rational, Vec<u32>)>,
    ) -> Result<Self, SingularityError> {
        if variables.is_empty() || monomials.is_empty() {
            return Err(SingularityError::Empty);
        }
        for (i, (c, row)) in monomials.iter().enumerate() {
            if c.is_zero() {
                return Err(SingularityError::Parse("zero coefficient".into()));
            }
            if row.len() != variables.len() {
                return Err(SingularityError::Parse("exponent row length mismatch".into()));
            }
            if monomials[..i].iter().any(|(_, r)| r == row) {
                return Err(SingularityError::Parse("repeated monomial".into()));
            }
        }
        Ok(QuasihomPolynomial { variables, monomials })
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn monomials(&self) -> &[(Rational, Vec<u32>)] {
        &self.monomials
    }

    /// The `s x N` matrix of exponents.
    pub fn exponent_matrix(&self) -> IntMatrix {
        self.monomials
            .iter()
            .map(|(_, row)| row.iter().map(|&e| BigInt::from(e)).collect())
            .collect()
    }
}

/// Charges in lowest common form: `q_j = weights_j / degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct Charges {
    pub charges: Vec<Rational>,
    pub weights: Vec<BigInt>,
    pub degree: BigInt,
}

/// Unique rational solution of `M q = (1, ..., 1)`.
pub fn solve_charges(poly: &QuasihomPolynomial) -> Result<Charges, SingularityError> {
    let n = poly.variables.len();
    let mut rows: Vec<Vec<Rational>> = poly
        .monomials
        .iter()
        .map(|(_, r)| {
            let mut v: Vec<Rational> = r.iter().map(|&e| int(e as i64)).collect();
            v.push(int(1));
            v
        })
        .collect();

    // reduced row echelon form of the augmented matrix
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return Err(SingularityError::NoSolution);
    }
    if pivots.len() < n {
        return Err(SingularityError::NonUniqueCharges { rank: pivots.len(), vars: n });
    }
    let charges: Vec<Rational> = (0..n).map(|j| rows[j][n].clone()).collect();
    for (q, name) in charges.iter().zip(&poly.variables) {
        if !q.is_positive() {
            return Err(SingularityError::NonPositiveCharge {
                variable: name.clone(),
                charge: fmt_rational(q),
            });
        }
        if *q >= Rational::one() {
            return Err(SingularityError::ChargeNotFractional {
                variable: name.clone(),
                charge: fmt_rational(q),
            });
        }
    }
    let denoms: Vec<BigInt> = charges.iter().map(|q| q.denom().clone()).collect();
    let degree = lcm_all(&denoms);
    let weights = charges.iter().map(|q| (q * Rational::from_integer(degree.clone())).to_integer()).collect();
    Ok(Charges { charges, weights, degree })
}

/// Everything derived from `W` that the rest of the crate consumes.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularityProfile {
    pub polynomial: QuasihomPolynomial,
    pub charges: Vec<Rational>,
    pub weights: Vec<BigInt>,
    pub degree: BigInt,
    pub smith: SmithForm,
    pub invariant_factors: Vec<BigInt>,
    pub group_order: BigInt,
    /// Exponent `d̄ = d_N` of `G_W`.
    pub exponent: BigInt,
    /// `c̄_j = c_j d̄ / d`.
    pub scaled_weights: Vec<BigInt>,
    pub milnor: Rational,
    pub central_charge: Rational,
    /// Phases `(c_1/d, ..., c_N/d)` of the generator `J`.
    pub j_phases: Vec<Rational>,
    /// `false` when the isolated-critical-point condition could not be
    /// certified (shape not Fermat/chain/loop).
    pub critical_point_verified: bool,
    pub warnings: Vec<String>,
}

/// `|G_W|`, invariant factors, exponent and `J`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupStructure {
    pub order: BigInt,
    pub invariant_factors: Vec<BigInt>,
    pub exponent: BigInt,
    pub j_phases: Vec<Rational>,
}

impl SingularityProfile {
    pub fn from_text(text: &str) -> Result<Self, SingularityError> {
        Self::new(parse_polynomial(text)?)
    }

    pub fn new(polynomial: QuasihomPolynomial) -> Result<Self, SingularityError> {
        let Charges { charges, weights, degree } = solve_charges(&polynomial)?;
        let smith = smith_normal_form(&polynomial.exponent_matrix());
        let invariant_factors = smith.invariant_factors();
        let group_order: BigInt = invariant_factors.iter().product();
        let exponent = invariant_factors.last().cloned().unwrap_or_else(BigInt::one);
        let scaled_weights = weights.iter().map(|c| c * &exponent / &degree).collect();
        let (milnor, central_charge) = numerical_invariants(&charges);
        let d = Rational::from_integer(degree.clone());
        let j_phases = weights.iter().map(|c| Rational::from_integer(c.clone()) / &d).collect();
        let critical_point_verified = is_invertible_shape(&polynomial);

        let mut warnings = Vec::new();
        if !milnor.is_integer() {
            warnings.push(format!(
                "Milnor number {} is not an integer; W cannot have an isolated singularity",
                fmt_rational(&milnor)
            ));
        }
        if !critical_point_verified {
            warnings.push("criticalPointUnverified".to_string());
        }
        Ok(SingularityProfile {
            polynomial,
            charges,
            weights,
            degree,
            smith,
            invariant_factors,
            group_order,
            exponent,
            scaled_weights,
            milnor,
            central_charge,
            j_phases,
            critical_point_verified,
            warnings,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.charges.len()
    }

    pub fn degree_u64(&self) -> u64 {
        self.degree.to_u64().expect("degree fits in u64")
    }

    pub fn group_structure(&self) -> GroupStructure {
        GroupStructure {
            order: self.group_order.clone(),
            invariant_factors: self.invariant_factors.clone(),
            exponent: self.exponent.clone(),
            j_phases: self.j_phases.clone(),
        }
    }

    /// `(μ, ĉ_W)`.
    pub fn numerical_invariants(&self) -> (Rational, Rational) {
        (self.milnor.clone(), self.central_charge.clone())
    }

    /// Whether the phase vector `Θ` defines an element of `G_W`, i.e.
    /// `M Θ` is integral.
    pub fn contains(&self, phases: &[Rational]) -> bool {
        phases.len() == self.num_vars()
            && self.polynomial.monomials.iter().all(|(_, row)| {
                row.iter()
                    .zip(phases)
                    .fold(Rational::zero(), |acc, (&e, th)| acc + int(e as i64) * th)
                    .is_integer()
            })
    }

    pub fn report(&self) -> ProfileReport {
        let d = self.degree_u64();
        let sectors = (0..d)
            .map(|m| sector_data(self, m).expect("m < d").to_report())
            .collect();
        ProfileReport {
            variables: self.polynomial.variables.clone(),
            charges: self.charges.iter().map(fmt_rational).collect(),
            d: d.to_string(),
            weights: self.weights.iter().map(ToString::to_string).collect(),
            invariant_factors: self.invariant_factors.iter().map(ToString::to_string).collect(),
            group_order: self.group_order.to_string(),
            exponent: self.exponent.to_string(),
            milnor: fmt_rational(&self.milnor),
            central_charge: fmt_rational(&self.central_charge),
            critical_point_verified: self.critical_point_verified,
            warnings: self.warnings.clone(),
            sectors,
        }
    }
}

/// `μ = prod (1/q_j - 1)` and `ĉ = sum (1 - 2 q_j)`.
pub fn numerical_invariants(charges: &[Rational]) -> (Rational, Rational) {
    let one = Rational::one();
    let mu = charges.iter().fold(one.clone(), |acc, q| acc * (q.recip() - &one));
    let c = charges.iter().fold(Rational::zero(), |acc, q| acc + &one - q * int(2));
    (mu, c)
}

/// Recognizes Thom–Sebastiani sums of Fermat, chain and loop polynomials,
/// for which the origin is known to be the only critical point.
fn is_invertible_shape(poly: &QuasihomPolynomial) -> bool {
    let n = poly.variables.len();
    if poly.monomials.len() != n {
        return false;
    }
    // each monomial is x_v^a (a >= 2) or x_v^a x_p with p != v
    let mut main = vec![usize::MAX; n];
    let mut pointer: Vec<Option<usize>> = vec![None; n];
    for (_, row) in &poly.monomials {
        let support: Vec<usize> = (0..n).filter(|&j| row[j] > 0).collect();
        let (v, p) = match support.as_slice() {
            [v] if row[*v] >= 2 => (*v, None),
            [a, b] if row[*a] >= 2 && row[*b] == 1 => (*a, Some(*b)),
            [a, b] if row[*b] >= 2 && row[*a] == 1 => (*b, Some(*a)),
            _ => return false,
        };
        if main[v] != usize::MAX {
            return false;
        }
        main[v] = v;
        pointer[v] = p;
    }
    // every variable is pointed at by at most one other
    let mut indegree = vec![0usize; n];
    for p in pointer.iter().flatten() {
        indegree[*p] += 1;
    }
    indegree.iter().all(|&k| k <= 1)
}

/// JSON shape of `analyze` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ProfileReport {
    pub variables: Vec<String>,
    pub charges: Vec<String>,
    pub d: String,
    pub weights: Vec<String>,
    pub invariant_factors: Vec<String>,
    pub group_order: String,
    pub exponent: String,
    pub milnor: String,
    pub central_charge: String,
    pub critical_point_verified: bool,
    pub warnings: Vec<String>,
    pub sectors: Vec<sector::SectorReport>,
}

/// `gcd(c_1, ..., c_N, d)`; equals 1 for a profile.
pub fn weights_gcd(profile: &SingularityProfile) -> BigInt {
    profile.weights.iter().fold(profile.degree.clone(), |acc, c| acc.gcd(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    pub(crate) const TEST_POLYS: [&str; 6] = [
        "x1^5+x2^5+x3^5+x4^5+x5^5",
        "x^3+x*y^2",
        "x^3+y^4",
        "x^3+x*y^3",
        "x^3+y^5",
        "x^3+x*y^2+y*z^2",
    ];

    fn profile(text: &str) -> SingularityProfile {
        SingularityProfile::from_text(text).unwrap()
    }

    #[test]
    fn charges_examples() {
        let e7 = profile("x^3+x*y^3");
        assert_eq!(e7.charges, vec![rat(1, 3), rat(2, 9)]);
        assert_eq!(e7.degree, BigInt::from(9));
        let quintic = profile(TEST_POLYS[0]);
        assert_eq!(quintic.charges, vec![rat(1, 5); 5]);
        assert_eq!(quintic.degree, BigInt::from(5));
        assert!(matches!(
            SingularityProfile::from_text("x*y"),
            Err(SingularityError::NonUniqueCharges { rank: 1, vars: 2 })
        ));
    }

    #[test]
    fn charge_errors() {
        assert_eq!(SingularityProfile::from_text("x^2+x^3").unwrap_err(), SingularityError::NoSolution);
        assert!(matches!(
            SingularityProfile::from_text("x"),
            Err(SingularityError::ChargeNotFractional { .. })
        ));
        assert!(matches!(
            SingularityProfile::from_text("x^2*y^3 + x^3*y^2 + y^5*x^3"),
            Err(SingularityError::NoSolution | SingularityError::NonPositiveCharge { .. })
        ));
        assert!(matches!(
            SingularityProfile::from_text("x^3*y^-1"),
            Err(SingularityError::Parse(_))
        ));
    }

    #[test]
    fn group_structure_examples() {
        let q = profile(TEST_POLYS[0]).group_structure();
        assert_eq!(q.order, BigInt::from(3125));
        assert_eq!(q.exponent, BigInt::from(5));
        let d4 = profile("x^3+x*y^2").group_structure();
        assert_eq!(d4.invariant_factors, vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(d4.order, BigInt::from(6));
        assert_eq!(d4.exponent, BigInt::from(6));
        let a1 = profile("x^2").group_structure();
        assert_eq!(a1.order, BigInt::from(2));
        assert_eq!(a1.j_phases, vec![rat(1, 2)]);
        assert_eq!(profile("x^3+x*y^2+y*z^2").exponent, BigInt::from(12));
    }

    #[test]
    fn numerical_invariant_examples() {
        assert_eq!(profile(TEST_POLYS[0]).numerical_invariants(), (int(1024), int(3)));
        assert_eq!(profile("x^2").numerical_invariants(), (int(1), int(0)));
        assert_eq!(profile("x^3+x*y^3").numerical_invariants(), (int(7), rat(8, 9)));
    }

    #[test]
    fn profile_invariants_hold() {
        for text in TEST_POLYS {
            let p = profile(text);
            // M c = d 1
            for row in p.polynomial.exponent_matrix() {
                let s: BigInt = row.iter().zip(&p.weights).map(|(e, c)| e * c).sum();
                assert_eq!(s, p.degree, "{text}");
            }
            assert_eq!(weights_gcd(&p), BigInt::one());
            assert!(p.exponent.is_multiple_of(&p.degree), "{text}: d | d̄");
            assert!(p.contains(&p.j_phases), "{text}: J in G_W");
            assert!(p.critical_point_verified, "{text}");
            // T^{-1} (d, ..., d)^T lands in (d_1 Z, ..., d_N Z, 0, ...)
            let col: IntMatrix = vec![vec![p.degree.clone()]; p.polynomial.monomials.len()];
            let image = snf::matmul(&p.smith.t_inv, &col);
            for (i, v) in image.iter().enumerate() {
                match p.invariant_factors.get(i) {
                    Some(di) => assert!(v[0].is_multiple_of(di), "{text}"),
                    None => assert!(v[0].is_zero(), "{text}"),
                }
            }
        }
    }

    #[test]
    fn unrecognized_shape_is_flagged() {
        let p = profile("x^3*y^2+x*y^4");
        assert!(!p.critical_point_verified);
        assert!(p.warnings.iter().any(|w| w == "criticalPointUnverified"));
        assert!(profile("x^2*y+y^3*x").critical_point_verified);
    }

    #[test]
    fn report_round_trips() {
        let r = profile(TEST_POLYS[0]).report();
        assert_eq!(r.group_order, "3125");
        assert_eq!(r.central_charge, "3");
        let degrees: Vec<&str> = r.sectors.iter().map(|s| s.degree.as_str()).collect();
        assert_eq!(degrees, ["3", "0", "2", "4", "6"]);
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"invariantFactors\""));
        let back: ProfileReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
