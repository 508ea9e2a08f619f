use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{SingularityError, SingularityProfile};
use crate::ring::{fmt_rational, frac, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SectorKind {
    /// Narrow: no coordinate is fixed.
    NS,
    /// Broad: at least one coordinate is fixed.
    R,
}

/// The sector of `γ = J^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sector {
    pub m: u64,
    pub phases: Vec<Rational>,
    pub fixed_dimension: usize,
    pub iota: Rational,
    pub kind: SectorKind,
    /// `N_γ + 2ι(γ)`
    pub degree: Rational,
    /// Dimension of the `⟨J⟩`-invariant part of the Milnor ring of `W_γ`
    /// (times the volume form). `None` when `W_γ` is not of Fermat shape.
    pub invariant_dimension: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SectorReport {
    pub m: u64,
    pub phases: Vec<String>,
    pub fixed_dimension: usize,
    pub iota: String,
    pub kind: SectorKind,
    pub degree: String,
    pub invariant_dimension: Option<u64>,
}

impl Sector {
    pub fn to_report(&self) -> SectorReport {
        SectorReport {
            m: self.m,
            phases: self.phases.iter().map(fmt_rational).collect(),
            fixed_dimension: self.fixed_dimension,
            iota: fmt_rational(&self.iota),
            kind: self.kind,
            degree: fmt_rational(&self.degree),
            invariant_dimension: self.invariant_dimension,
        }
    }
}

pub fn sector_data(profile: &SingularityProfile, m: u64) -> Result<Sector, SingularityError> {
    let d = profile.degree_u64();
    if m >= d {
        return Err(SingularityError::SectorOutOfRange { m, d });
    }
    let phases: Vec<Rational> = profile.j_phases.iter().map(|p| frac(&(p * int(m as i64)))).collect();
    let fixed: Vec<usize> = (0..phases.len()).filter(|&j| phases[j].is_zero()).collect();
    let iota = phases
        .iter()
        .zip(&profile.charges)
        .fold(Rational::zero(), |acc, (t, q)| acc + t - q);
    let kind = if fixed.is_empty() { SectorKind::NS } else { SectorKind::R };
    let degree = int(fixed.len() as i64) + &iota * int(2);
    let invariant_dimension = if fixed.is_empty() {
        Some(1)
    } else {
        fermat_invariant_count(profile, &fixed)
    };
    Ok(Sector {
        m,
        phases,
        fixed_dimension: fixed.len(),
        iota,
        kind,
        degree,
        invariant_dimension,
    })
}

/// For `W_γ = sum_{j fixed} x_j^{e_j}`, counts `x^a dx` with
/// `a_j <= e_j - 2` invariant under `J`, i.e. `sum (a_j + 1) c_j ≡ 0 mod d`.
fn fermat_invariant_count(profile: &SingularityProfile, fixed: &[usize]) -> Option<u64> {
    let mut exps = Vec::with_capacity(fixed.len());
    for &j in fixed {
        let e = profile.polynomial.monomials().iter().find_map(|(_, row)| {
            let pure = row.iter().enumerate().all(|(i, &x)| i == j || x == 0);
            (pure && row[j] >= 2).then_some(row[j])
        })?;
        exps.push(e);
    }
    // no mixed monomials among the fixed variables
    let mixed = profile.polynomial.monomials().iter().any(|(_, row)| {
        let support: Vec<usize> = (0..row.len()).filter(|&i| row[i] > 0).collect();
        support.len() > 1 && support.iter().all(|i| fixed.contains(i))
    });
    if mixed {
        return None;
    }
    let d = profile.degree_u64();
    let weights: Vec<u64> = fixed.iter().map(|&j| profile.weights[j].to_u64().expect("weight fits")).collect();
    // residue counts mod d, one variable at a time
    let mut counts = vec![0u64; d as usize];
    counts[0] = 1;
    for (e, c) in exps.iter().zip(&weights) {
        let mut next = vec![0u64; d as usize];
        for (r, &n) in counts.iter().enumerate() {
            if n == 0 {
                continue;
            }
            for a in 0..e - 1 {
                let s = (r as u64 + (a as u64 + 1) * c) % d;
                next[s as usize] += n;
            }
        }
        counts = next;
    }
    Some(counts[0])
}

/// Total dimension over all sectors of `⟨J⟩`, when every sector is computable.
pub fn state_space_dimension(profile: &SingularityProfile) -> Option<BigInt> {
    (0..profile.degree_u64())
        .map(|m| sector_data(profile, m).ok()?.invariant_dimension.map(BigInt::from))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn profile(text: &str) -> SingularityProfile {
        SingularityProfile::from_text(text).unwrap()
    }

    const QUINTIC: &str = "x1^5+x2^5+x3^5+x4^5+x5^5";

    #[test]
    fn quintic_sectors() {
        let p = profile(QUINTIC);
        let s2 = sector_data(&p, 2).unwrap();
        assert_eq!(s2.iota, int(1));
        assert_eq!(s2.degree, int(2));
        assert_eq!(s2.kind, SectorKind::NS);
        let s0 = sector_data(&p, 0).unwrap();
        assert_eq!(s0.kind, SectorKind::R);
        assert_eq!(s0.invariant_dimension, Some(204));
        let degrees: Vec<Rational> = (0..5).map(|m| sector_data(&p, m).unwrap().degree).collect();
        assert_eq!(degrees, [3, 0, 2, 4, 6].map(|x| int(x)));
        for m in 1..5 {
            assert_eq!(sector_data(&p, m).unwrap().iota, int(m as i64 - 1));
        }
        assert!(matches!(sector_data(&p, 5), Err(SingularityError::SectorOutOfRange { .. })));
    }

    #[test]
    fn quintic_state_space() {
        let p = profile(QUINTIC);
        assert_eq!(state_space_dimension(&p), Some(BigInt::from(208)));
        let even: u64 = (0..5)
            .map(|m| sector_data(&p, m).unwrap())
            .filter(|s| s.kind == SectorKind::NS)
            .map(|s| s.invariant_dimension.unwrap())
            .sum();
        assert_eq!(even, 4);
    }

    #[test]
    fn invariant_count_matches_brute_force() {
        let mut brute = 0;
        for code in 0..4u32.pow(5) {
            let digits: u32 = (0..5).map(|i| (code / 4u32.pow(i)) % 4).sum();
            if digits % 5 == 0 {
                brute += 1;
            }
        }
        assert_eq!(brute, 204);
    }

    #[test]
    fn iota_pairing() {
        for text in ["x1^5+x2^5+x3^5+x4^5+x5^5", "x^3+x*y^2", "x^3+y^4", "x^3+x*y^3", "x^3+y^5"] {
            let p = profile(text);
            let d = p.degree_u64();
            for m in 0..d {
                let a = sector_data(&p, m).unwrap();
                let b = sector_data(&p, (d - m) % d).unwrap();
                assert_eq!(
                    &a.iota + &b.iota,
                    &p.central_charge - int(a.fixed_dimension as i64),
                    "{text} m={m}"
                );
            }
        }
    }

    #[test]
    fn e7_phases() {
        let p = profile("x^3+x*y^3");
        let s = sector_data(&p, 1).unwrap();
        assert_eq!(s.phases, vec![rat(1, 3), rat(2, 9)]);
        assert_eq!(s.iota, int(0));
    }
}
