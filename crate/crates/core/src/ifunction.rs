//! Periods of the FJRW and GW I-functions and their Picard–Fuchs
//! equations.
//!
//! `I_FJRW = sum_k ω_k(t) z^{2-k} φ_{k-1}` and
//! `I_GW = sum_k ω_k^GW(q) z^{2-k} H^{k-1}`, where the GW periods carry
//! powers of `log q`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Execution;
use crate::ring::{factorial, fmt_rational, int, pochhammer, rat, Rational};
use crate::series::{LogSeries, PolyInZ, SeriesError, TruncatedSeries};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IFunctionError {
    #[error("order {got} is below the minimum {min}")]
    OrderTooSmall { min: usize, got: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Fjrw,
    Gw,
}

/// `ω_1, ..., ω_4` in the variable `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct IFunctionFjrw {
    pub omegas: Vec<TruncatedSeries<Rational>>,
}

/// `ω_1^GW, ..., ω_4^GW` in the variable `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct IFunctionGw {
    pub omegas: Vec<LogSeries<Rational>>,
}

/// `ω_k = sum_l ([k/5]_l)^5 / ((k-1)! [k]_{5l}) t^{k+5l}`.
pub fn fjrw_omega(k: usize, order: usize) -> TruncatedSeries<Rational> {
    let a = rat(k as i64, 5);
    let gamma_k = Rational::from_integer(factorial(k as u64 - 1));
    let mut terms = Vec::new();
    let mut l = 0;
    while k + 5 * l < order {
        let num: Rational = Pow::pow(pochhammer(&a, l), 5u32);
        let den = &gamma_k * pochhammer(&int(k as i64), 5 * l);
        terms.push((k + 5 * l, num / den));
        l += 1;
    }
    TruncatedSeries::from_sparse("t", order, terms)
}

pub fn build_fjrw_omegas(order: usize, exec: Execution) -> Result<IFunctionFjrw, IFunctionError> {
    if order < 5 {
        return Err(IFunctionError::OrderTooSmall { min: 5, got: order });
    }
    Ok(IFunctionFjrw { omegas: exec.map_range(4, |i| fjrw_omega(i + 1, order)) })
}

/// `F_b(q) = sum_d [x^b] A_d(x) q^d` for `b = 0..3`, where
/// `A_d(x) = prod_{k<=5d} (5x + k) / prod_{k<=d} (x + k)^5`.
pub fn gw_hypergeometric_parts(order: usize) -> Vec<TruncatedSeries<Rational>> {
    let mut parts = vec![vec![Rational::zero(); order]; 4];
    let mut a = TruncatedSeries::<Rational>::one("x", 4);
    for d in 0..order {
        if d > 0 {
            for j in 5 * (d - 1) + 1..=5 * d {
                let lin = TruncatedSeries::new("x", 4, vec![int(j as i64), int(5)]);
                a = a.mul(&lin).expect("same variable");
            }
            let lin = TruncatedSeries::new("x", 4, vec![int(d as i64), int(1)]);
            let den = lin.pow(5).expect("same variable");
            a = a.div(&den).expect("invertible");
        }
        for (b, part) in parts.iter_mut().enumerate() {
            part[d] = a.coeffs()[b].clone();
        }
    }
    parts.into_iter().map(|c| TruncatedSeries::new("q", order, c)).collect()
}

pub fn build_gw_omegas(order: usize, exec: Execution) -> Result<IFunctionGw, IFunctionError> {
    if order < 2 {
        return Err(IFunctionError::OrderTooSmall { min: 2, got: order });
    }
    let parts = gw_hypergeometric_parts(order);
    // ω_k = sum_a (L^a / a!) F_{k-1-a}
    let omegas = exec.map_range(4, |i| {
        let comps = (0..=i).map(|j| parts[i - j].clone()).collect();
        LogSeries::new(comps).expect("at most four components")
    });
    Ok(IFunctionGw { omegas })
}

/// `t^5 [D_t^4 - 5^5 t^{-5} prod_{m=1}^4 (D_t - m z)] f` with `D_t = z t d/dt`.
///
/// The coefficient of `t^e` is `z^4 ((e-5)^4 c_{e-5} - 5^5 prod_m (e-m) c_e)`.
pub fn pf_residual_fjrw(f: &TruncatedSeries<Rational>) -> TruncatedSeries<PolyInZ> {
    let n = f.order();
    let c = f.coeffs();
    let k55 = int(3125);
    let coeffs = (0..n)
        .map(|e| {
            let mut v = Rational::zero();
            if e >= 5 {
                let a = int(e as i64 - 5);
                v += &a * &a * &a * &a * &c[e - 5];
            }
            let prod = (1..=4).fold(Rational::one(), |acc, m| acc * int(e as i64 - m));
            v -= &k55 * prod * &c[e];
            PolyInZ::monomial(4, v)
        })
        .collect();
    TruncatedSeries::new(f.var(), n, coeffs)
}

/// `[D_q^4 - 5 q prod_{m=1}^4 (5 D_q + m z)] f` with `D_q = z q d/dq`, `D_q L = z`.
pub fn pf_residual_gw(f: &LogSeries<Rational>) -> LogSeries<PolyInZ> {
    let lifted = f.map(|c| PolyInZ::constant(c.clone()));
    let order = lifted.order();
    let mut d4 = lifted.clone();
    for _ in 0..4 {
        d4 = d4.apply_dq();
    }
    let mut p = lifted;
    for m in 1..=4 {
        let zm = PolyInZ::monomial(1, int(m));
        p = p.apply_dq().scale(&PolyInZ::constant(int(5))).add(&p.scale(&zm)).expect("same variable");
    }
    let q_term = p.shift_up(1).scale(&PolyInZ::constant(int(5)));
    let q_term = LogSeries::new(q_term.components().iter().map(|c| c.truncate(order)).collect())
        .expect("same shape");
    d4.sub(&q_term).expect("same variable")
}

/// Sparse expression `sum c t^a z^b` with rational `a`.
type Terms = BTreeMap<(Rational, usize), Rational>;

fn push(terms: &mut Terms, a: Rational, b: usize, c: Rational) {
    let key = (a, b);
    let v = terms.get(&key).cloned().unwrap_or_else(Rational::zero) + c;
    if v.is_zero() {
        terms.remove(&key);
    } else {
        terms.insert(key, v);
    }
}

fn apply_dt_terms(f: &Terms) -> Terms {
    let mut out = Terms::new();
    for ((a, b), c) in f {
        push(&mut out, a.clone(), b + 1, c * a);
    }
    out
}

/// `D_q` computed in the variable `q = t^{-5}`: the monomial `t^a` is
/// `q^{-a/5}`.
fn apply_dq_terms(f: &Terms) -> Terms {
    let mut out = Terms::new();
    for ((a, b), c) in f {
        let e = -a / int(5);
        push(&mut out, a.clone(), b + 1, c * e);
    }
    out
}

fn scale_terms(f: &Terms, c: &Rational) -> Terms {
    let mut out = Terms::new();
    for ((a, b), v) in f {
        push(&mut out, a.clone(), *b, v * c);
    }
    out
}

fn add_terms(f: &Terms, g: &Terms) -> Terms {
    let mut out = f.clone();
    for ((a, b), v) in g {
        push(&mut out, a.clone(), *b, v.clone());
    }
    out
}

fn shift_t(f: &Terms, da: i64) -> Terms {
    f.iter().map(|((a, b), c)| ((a + int(da), *b), c.clone())).collect()
}

fn mul_z(f: &Terms, m: i64) -> Terms {
    let mut out = Terms::new();
    for ((a, b), c) in f {
        push(&mut out, a.clone(), b + 1, c * int(m));
    }
    out
}

fn pf_fjrw_terms(f: &Terms) -> Terms {
    let mut d4 = f.clone();
    for _ in 0..4 {
        d4 = apply_dt_terms(&d4);
    }
    let mut p = f.clone();
    for m in 1..=4 {
        p = add_terms(&apply_dt_terms(&p), &mul_z(&p, -m));
    }
    add_terms(&d4, &scale_terms(&shift_t(&p, -5), &int(-3125)))
}

fn pf_gw_terms(f: &Terms) -> Terms {
    let mut d4 = f.clone();
    for _ in 0..4 {
        d4 = apply_dq_terms(&d4);
    }
    let mut p = f.clone();
    for m in 1..=4 {
        p = add_terms(&scale_terms(&apply_dq_terms(&p), &int(5)), &mul_z(&p, m));
    }
    // q = t^{-5}
    add_terms(&d4, &scale_terms(&shift_t(&p, -5), &int(-5)))
}

fn max_abs(f: &Terms) -> Rational {
    f.values().map(|v| if *v < Rational::zero() { -v } else { v.clone() }).max().unwrap_or_else(Rational::zero)
}

/// Checks `D_q = -D_t / 5` and `PF_GW = 5^{-4} PF_FJRW` on the monomials
/// `t^a z^b` (`a` in `a_range`, `b <= 4`); returns the largest coefficient
/// of either difference.
pub fn operator_transform_check(a_range: impl IntoIterator<Item = i64>) -> Rational {
    let inv625 = rat(1, 625);
    let mut worst = Rational::zero();
    for a in a_range {
        for b in 0..=4 {
            let mut mono = Terms::new();
            push(&mut mono, int(a), b, int(1));
            let d_diff = add_terms(&apply_dq_terms(&mono), &scale_terms(&apply_dt_terms(&mono), &rat(1, 5)));
            let pf_diff = add_terms(&pf_gw_terms(&mono), &scale_terms(&pf_fjrw_terms(&mono), &-&inv625));
            worst = worst.max(max_abs(&d_diff)).max(max_abs(&pf_diff));
        }
    }
    worst
}

/// One coefficient of a period, keyed for JSON output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OmegaEntry {
    pub k: usize,
    pub exponent: usize,
    pub log_degree: usize,
    pub value: String,
}

impl IFunctionFjrw {
    pub fn entries(&self) -> Vec<OmegaEntry> {
        self.omegas
            .iter()
            .enumerate()
            .flat_map(|(i, s)| {
                s.iter_nonzero()
                    .map(move |(e, c)| OmegaEntry { k: i + 1, exponent: e, log_degree: 0, value: fmt_rational(c) })
            })
            .collect()
    }
}

impl IFunctionGw {
    pub fn entries(&self) -> Vec<OmegaEntry> {
        let mut out = Vec::new();
        for (i, s) in self.omegas.iter().enumerate() {
            for (j, comp) in s.components().iter().enumerate() {
                out.extend(comp.iter_nonzero().map(|(e, c)| OmegaEntry {
                    k: i + 1,
                    exponent: e,
                    log_degree: j,
                    value: fmt_rational(c),
                }));
            }
        }
        out
    }
}

/// `(5d)! / (d!)^5`.
pub fn quintic_period_coefficient(d: u64) -> BigInt {
    factorial(5 * d) / Pow::pow(factorial(d), 5u32)
}
