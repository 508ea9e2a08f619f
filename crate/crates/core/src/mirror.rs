//! Mirror maps, genus-zero FJRW invariants of the quintic singularity read
//! off the J-function, the untwisted correlators and the GW mirror
//! coordinate.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Execution;
use crate::ifunction::{build_fjrw_omegas, build_gw_omegas, IFunctionError};
use crate::ring::{factorial, fmt_rational, int, multinomial, rat, Rational};
use crate::series::{SeriesError, TruncatedSeries};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MirrorError {
    #[error("order {got} is below the minimum {min}")]
    OrderTooSmall { min: usize, got: usize },
    #[error("need series order {needed} for h_max = {h_max}, have {available}")]
    InsufficientOrder { h_max: usize, needed: usize, available: usize },
    #[error("a-list and h-list must have the same length n >= 3 (got {a} and {h})")]
    BadLengths { a: usize, h: usize },
    #[error("sector label h = {0} is outside 0..=4")]
    BadSector(u32),
    #[error(transparent)]
    IFunction(#[from] IFunctionError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `τ(t) = ω_2/ω_1` and its inverse `t(τ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MirrorMap {
    pub forward: TruncatedSeries<Rational>,
    pub inverse: TruncatedSeries<Rational>,
    pub order: usize,
}

pub fn fjrw_mirror_map(order: usize, exec: Execution) -> Result<MirrorMap, MirrorError> {
    if order < 6 {
        return Err(MirrorError::OrderTooSmall { min: 6, got: order });
    }
    let omegas = build_fjrw_omegas(order, exec)?.omegas;
    let forward = omegas[1].div(&omegas[0])?;
    let inverse = forward.revert_with(exec)?.with_var("tau");
    Ok(MirrorMap { forward, inverse, order })
}

/// Coefficients of `z^{-1}` and `z^{-2}` in `J_FJRW(τ φ_1, z)`, as series
/// in `τ`.
#[derive(Debug, Clone, PartialEq)]
pub struct JSlots {
    pub z_minus_1: TruncatedSeries<Rational>,
    pub z_minus_2: TruncatedSeries<Rational>,
}

pub fn fjrw_j_coefficients(order: usize, exec: Execution) -> Result<JSlots, MirrorError> {
    if order < 6 {
        return Err(MirrorError::OrderTooSmall { min: 6, got: order });
    }
    let map = fjrw_mirror_map(order, exec)?;
    let omegas = build_fjrw_omegas(order, exec)?.omegas;
    let slot = |w: &TruncatedSeries<Rational>| -> Result<TruncatedSeries<Rational>, MirrorError> {
        let ratio = w.div(&omegas[0])?.with_var("tau");
        Ok(ratio.compose(&map.inverse)?)
    };
    let (a, b) = exec.join(|| slot(&omegas[2]), || slot(&omegas[3]));
    Ok(JSlots { z_minus_1: a?, z_minus_2: b? })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InvariantKind {
    /// `⟨τ_0(φ_1)^n⟩`
    Primary,
    /// `⟨τ_0(φ_1)^{n-1} τ_1(φ_0)⟩`
    Descendant,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantRow {
    pub n: usize,
    pub value: Rational,
    pub kind: InvariantKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantTables {
    pub primary: Vec<InvariantRow>,
    pub descendant: Vec<InvariantRow>,
}

/// Reads off `⟨τ_0(φ_1)^{5h+3}⟩` and `⟨τ_0(φ_1)^{5h+3} τ_1(φ_0)⟩` for
/// `h <= h_max`.
pub fn fjrw_invariants(slots: &JSlots, h_max: usize) -> Result<InvariantTables, MirrorError> {
    let needed = 5 * h_max + 4;
    let available = slots.z_minus_1.order().min(slots.z_minus_2.order());
    if needed > available {
        return Err(MirrorError::InsufficientOrder { h_max, needed, available });
    }
    let fifth = rat(1, 5);
    let extract = |s: &TruncatedSeries<Rational>, e: usize| -> Rational {
        Rational::from_integer(factorial(e as u64)) * &fifth * s.coeffs()[e].clone()
    };
    let primary = (0..=h_max)
        .map(|h| InvariantRow {
            n: 5 * h + 3,
            value: extract(&slots.z_minus_1, 5 * h + 2),
            kind: InvariantKind::Primary,
        })
        .collect();
    let descendant = (0..=h_max)
        .map(|h| InvariantRow {
            n: 5 * h + 4,
            value: extract(&slots.z_minus_2, 5 * h + 3),
            kind: InvariantKind::Descendant,
        })
        .collect();
    Ok(InvariantTables { primary, descendant })
}

/// Largest `h_max` supported by a given `t`-order.
pub fn max_h_for_order(order: usize) -> usize {
    order.saturating_sub(5) / 5
}

/// `⟨τ_{a_1}(φ_{h_1}) ... τ_{a_n}(φ_{h_n})⟩^un_{0,n}`.
pub fn untwisted_correlator(a: &[u64], h: &[u32]) -> Result<Rational, MirrorError> {
    if a.len() != h.len() || a.len() < 3 {
        return Err(MirrorError::BadLengths { a: a.len(), h: h.len() });
    }
    if let Some(&bad) = h.iter().find(|&&x| x > 4) {
        return Err(MirrorError::BadSector(bad));
    }
    let n = a.len() as u64;
    let selection = (2 + h.iter().map(|&x| x as u64).sum::<u64>()) % 5 == 0;
    if a.iter().sum::<u64>() != n - 3 || !selection {
        return Ok(Rational::zero());
    }
    Ok(Rational::from_integer(multinomial(a)))
}

/// `q' = q exp(F_1/F_0)` where `ω_2^GW/ω_1^GW = log q + F_1/F_0`.
#[derive(Debug, Clone, PartialEq)]
pub struct GwMirror {
    /// Log-free part of `ω_2^GW / ω_1^GW`.
    pub ratio: TruncatedSeries<Rational>,
    pub q_prime: TruncatedSeries<Rational>,
}

pub fn gw_mirror_map(order: usize, exec: Execution) -> Result<GwMirror, MirrorError> {
    if order < 3 {
        return Err(MirrorError::OrderTooSmall { min: 3, got: order });
    }
    let g = build_gw_omegas(order, exec)?;
    let w1 = g.omegas[0].component(0);
    let ratio = g.omegas[1].div_series(&w1)?;
    let holomorphic = ratio.component(0);
    let q_prime = holomorphic.exp()?.shift_up(1).truncate(order);
    Ok(GwMirror { ratio: holomorphic, q_prime })
}

/// Yukawa coupling `K(Q)` in the mirror coordinate and the instanton
/// numbers `n_d` defined by `K = 5 + sum_d n_d d^3 Q^d / (1 - Q^d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Instantons {
    pub yukawa: TruncatedSeries<Rational>,
    pub numbers: Vec<(usize, Rational)>,
}

pub fn instanton_numbers(order: usize, exec: Execution) -> Result<Instantons, MirrorError> {
    if order < 3 {
        return Err(MirrorError::OrderTooSmall { min: 3, got: order });
    }
    let mirror = gw_mirror_map(order, exec)?;
    let g = build_gw_omegas(order, exec)?;
    let w1 = g.omegas[0].component(0);
    let q = |c: Vec<Rational>| TruncatedSeries::new("q", order, c);

    // q/Q dQ/dq = 1 + q d/dq (F_1/F_0)
    let mut log_deriv = mirror.ratio.coeffs().iter().enumerate().map(|(k, c)| int(k as i64) * c).collect::<Vec<_>>();
    log_deriv[0] += int(1);
    let log_deriv = q(log_deriv);
    let one_minus = q(vec![int(1), int(-3125)]);
    let denom = one_minus.mul(&w1.pow(2)?)?.mul(&log_deriv.pow(3)?)?;
    let k_of_q = q(vec![int(5)]).div(&denom)?;
    let q_of_big_q = mirror.q_prime.revert_with(exec)?;
    let yukawa = k_of_q.compose(&q_of_big_q)?;

    let mut numbers: Vec<(usize, Rational)> = Vec::new();
    for m in 1..yukawa.order() {
        let mut rest = yukawa.coeffs()[m].clone();
        for (d, nd) in &numbers {
            if m % d == 0 {
                rest -= int((d * d * d) as i64) * nd;
            }
        }
        numbers.push((m, rest / int((m * m * m) as i64)));
    }
    Ok(Instantons { yukawa, numbers })
}

/// Table row in wire form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub n: usize,
    pub kind: InvariantKind,
    pub value: String,
}

impl InvariantTables {
    pub fn records(&self) -> Vec<InvariantRecord> {
        self.primary
            .iter()
            .chain(&self.descendant)
            .map(|r| InvariantRecord { n: r.n, kind: r.kind, value: fmt_rational(&r.value) })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,kind,value\n");
        for r in self.records() {
            let kind = match r.kind {
                InvariantKind::Primary => "primary",
                InvariantKind::Descendant => "descendant",
            };
            out.push_str(&format!("{},{},{}\n", r.n, kind, r.value));
        }
        out
    }
}

/// `true` when every `n_d` is an integer.
pub fn all_integral(numbers: &[(usize, Rational)]) -> bool {
    numbers.iter().all(|(_, n)| n.is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::One;
    use crate::ring::parse_rational;

    fn seq() -> Execution {
        Execution::Sequential
    }

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn mirror_map_examples() {
        let m = fjrw_mirror_map(20, seq()).unwrap();
        assert_eq!(m.forward.coeff(1), Some(&int(1)));
        assert_eq!(m.forward.coeff(6), Some(&r("13/1125000")));
        assert_eq!(m.inverse.coeff(6), Some(&r("-13/1125000")));
        assert_eq!(m.inverse.coeff(11), Some(&r("-31991/97453125000000")));
        assert_eq!(m.inverse.coeff(16), Some(&r("-294146129/9976763671875000000000")));
        assert_eq!(m.inverse.coeff(1), Some(&int(1)));
        assert!((2..6).all(|k| m.inverse.coeff(k).unwrap().is_zero()));
    }

    #[test]
    fn round_trip_to_order_40() {
        let m = fjrw_mirror_map(40, seq()).unwrap();
        let id = m.forward.with_var("tau").compose(&m.inverse).unwrap();
        assert!(id.order() >= 39);
        for (k, c) in id.coeffs().iter().enumerate() {
            assert_eq!(c, &if k == 1 { int(1) } else { int(0) });
        }
    }

    #[test]
    fn j_slot_examples() {
        let j = fjrw_j_coefficients(24, seq()).unwrap();
        let one = &j.z_minus_1;
        assert_eq!(one.coeff(2), Some(&rat(1, 2)));
        assert_eq!(one.coeff(7), Some(&r("1/393750")));
        assert_eq!(one.coeff(12), Some(&r("239/1559250000000")));
        assert_eq!(one.coeff(17), Some(&r("6904357/452279953125000000000")));
        let two = &j.z_minus_2;
        assert_eq!(two.coeff(3), Some(&rat(1, 6)));
        assert_eq!(two.coeff(8), Some(&r("1/525000")));
        assert_eq!(two.coeff(13), Some(&r("239/1842750000000")));
        assert_eq!(two.coeff(18), Some(&r("6904357/508814947265625000000")));
    }

    #[test]
    fn j_slot_residue_classes() {
        let j = fjrw_j_coefficients(40, seq()).unwrap();
        assert!(j.z_minus_1.iter_nonzero().all(|(e, _)| e % 5 == 2));
        assert!(j.z_minus_2.iter_nonzero().all(|(e, _)| e % 5 == 3));
    }

    #[test]
    fn invariant_tables() {
        let j = fjrw_j_coefficients(24, seq()).unwrap();
        let t = fjrw_invariants(&j, 3).unwrap();
        let prim: Vec<Rational> = t.primary.iter().map(|r| r.value.clone()).collect();
        assert_eq!(prim, ["1/5", "8/3125", "5736/390625", "1325636544/1220703125"].map(r));
        let desc: Vec<Rational> = t.descendant.iter().map(|r| r.value.clone()).collect();
        assert_eq!(desc, ["1/5", "48/3125", "63096/390625", "21210184704/1220703125"].map(r));
        assert_eq!(t.primary.iter().map(|r| r.n).collect::<Vec<_>>(), [3, 8, 13, 18]);
        assert_eq!(t.descendant.iter().map(|r| r.n).collect::<Vec<_>>(), [4, 9, 14, 19]);
    }

    #[test]
    fn string_equation_across_tables() {
        let order = 60;
        let j = fjrw_j_coefficients(order, seq()).unwrap();
        let h_max = max_h_for_order(order) - 1;
        let t = fjrw_invariants(&j, h_max).unwrap();
        for (p, d) in t.primary.iter().zip(&t.descendant) {
            assert_eq!(d.value, int(p.n as i64 - 2) * &p.value, "n={}", p.n);
        }
    }

    #[test]
    fn insufficient_order() {
        let j = fjrw_j_coefficients(20, seq()).unwrap();
        assert!(matches!(fjrw_invariants(&j, 4), Err(MirrorError::InsufficientOrder { .. })));
        let j = fjrw_j_coefficients(10, seq()).unwrap();
        assert!(matches!(fjrw_invariants(&j, 3), Err(MirrorError::InsufficientOrder { .. })));
        assert!(matches!(fjrw_j_coefficients(5, seq()), Err(MirrorError::OrderTooSmall { .. })));
    }

    #[test]
    fn untwisted_examples() {
        assert_eq!(untwisted_correlator(&[0, 0, 0], &[1, 1, 1]).unwrap(), int(1));
        assert_eq!(untwisted_correlator(&[1, 0, 0, 0], &[1, 1, 1, 3]).unwrap(), int(0));
        assert_eq!(untwisted_correlator(&[1, 0, 0, 0], &[1, 1, 1, 0]).unwrap(), int(1));
        assert_eq!(untwisted_correlator(&[1, 1, 0, 0], &[1, 1, 1, 0]).unwrap(), int(0));
        assert_eq!(untwisted_correlator(&[2, 1, 0, 0, 0, 0], &[1, 1, 1, 1, 1, 3]).unwrap(), int(3));
        assert!(untwisted_correlator(&[0, 0], &[1, 1]).is_err());
        assert!(untwisted_correlator(&[0, 0, 0], &[1, 1, 5]).is_err());
    }

    /// `∫_{M̄_{0,n}} prod ψ_i^{a_i}` by the string equation.
    fn psi_integral(a: &[u64]) -> BigInt {
        let n = a.len() as u64;
        if a.iter().sum::<u64>() != n.saturating_sub(3) || n < 3 {
            return BigInt::zero();
        }
        if n == 3 {
            return BigInt::one();
        }
        let zero = a.iter().position(|&x| x == 0).expect("some a_i vanishes");
        let rest: Vec<u64> = a.iter().enumerate().filter(|&(i, _)| i != zero).map(|(_, &x)| x).collect();
        let mut total = BigInt::zero();
        for j in 0..rest.len() {
            if rest[j] > 0 {
                let mut b = rest.clone();
                b[j] -= 1;
                total += psi_integral(&b);
            }
        }
        total
    }

    #[test]
    fn untwisted_matches_string_recursion() {
        for n in 3..=7usize {
            let dim = (n - 3) as u64;
            // all a with sum n-3 plus some that miss it
            for code in 0..(dim + 2).pow(n as u32) {
                let a: Vec<u64> = (0..n).map(|i| (code / (dim + 2).pow(i as u32)) % (dim + 2)).collect();
                for hcode in [0u64, 1, 7, 31, 77, 123, 600, 3124] {
                    let h: Vec<u32> = (0..n).map(|i| ((hcode / 5u64.pow(i as u32 % 5)) % 5) as u32).collect();
                    let sel = (2 + h.iter().sum::<u32>()) % 5 == 0;
                    // 5 * ∫ over the W-curve space, of degree 1/5 over M̄_{0,n}
                    let expected = if sel {
                        int(5) * rat(1, 5) * Rational::from_integer(psi_integral(&a))
                    } else {
                        int(0)
                    };
                    assert_eq!(untwisted_correlator(&a, &h).unwrap(), expected, "a={a:?} h={h:?}");
                }
            }
        }
    }

    #[test]
    fn gw_mirror_examples() {
        let g = gw_mirror_map(6, seq()).unwrap();
        assert_eq!(g.q_prime.coeff(0), Some(&int(0)));
        assert_eq!(g.q_prime.coeff(1), Some(&int(1)));
        assert_eq!(g.q_prime.coeff(2), Some(&int(770)));

        // direct expansion: [x^1] A_d = (5d)!/(d!)^5 (5 H_{5d} - 5 H_d)
        let harmonic = |m: i64| (1..=m).fold(int(0), |acc, k| acc + rat(1, k));
        let f0 = |d: i64| {
            Rational::from_integer(factorial(5 * d as u64))
                / Rational::from_integer(factorial(d as u64).pow(5))
        };
        let f1 = |d: i64| f0(d) * (int(5) * harmonic(5 * d) - int(5) * harmonic(d));
        // g = F_1/F_0 = g1 q + g2 q^2 + ...
        let g1 = f1(1);
        let g2 = f1(2) - f1(1) * f0(1);
        let q3 = &g2 + &g1 * &g1 / int(2);
        assert_eq!(g.q_prime.coeff(3), Some(&q3));
    }

    #[test]
    fn yukawa_first_instanton() {
        let inst = instanton_numbers(8, seq()).unwrap();
        // K = 5 (1 + 3125 q)(1 - 240 q)(1 - 3 * 770 q) + O(q^2) = 5 + 2875 q + ...
        assert_eq!(inst.yukawa.coeff(0), Some(&int(5)));
        assert_eq!(inst.yukawa.coeff(1), Some(&int(2875)));
        assert_eq!(inst.numbers[0], (1, int(2875)));
        assert!(all_integral(&inst.numbers));
        assert!(inst.numbers.iter().all(|(_, n)| *n > int(0)));
    }

    #[test]
    fn parallel_matches_sequential() {
        assert_eq!(fjrw_j_coefficients(30, seq()), fjrw_j_coefficients(30, Execution::Parallel));
    }
}
