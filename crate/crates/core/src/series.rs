//! Truncated univariate power series over a pluggable coefficient ring.
//!
//! A [`TruncatedSeries`] stores one coefficient per exponent below its
//! `order`; every exponent at or above `order` is unknown. Operations never
//! claim more precision than their inputs carry: the result order of a
//! product is `min(a.order + val(b), b.order + val(a))`, and composition and
//! reversion propagate orders the same way.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Execution;
use crate::ring::{fmt_rational, int, parse_rational, rat, Coefficient, Rational};

/// Default truncation order for series in the Gepner coordinate `t`.
pub const DEFAULT_T_ORDER: usize = 60;
/// Default truncation order for series in the large-radius coordinate `q`.
pub const DEFAULT_Q_ORDER: usize = 12;

/// Products with fewer scalar multiplications than this stay on one thread.
const PARALLEL_MUL_THRESHOLD: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("series variables differ: {left} vs {right}")]
    VariableMismatch { left: String, right: String },
    #[error("constant term is not invertible")]
    NonUnitLeadingTerm,
    #[error("inner series of a composition must have zero constant term")]
    NonzeroConstantInner,
    #[error("reversion needs valuation exactly 1 with invertible linear coefficient")]
    BadValuation,
    #[error("division by a series of valuation {divisor} exceeds dividend valuation {dividend}")]
    ValuationTooLow { dividend: usize, divisor: usize },
    #[error("log-degree {0} exceeds the cap of 3")]
    LogDegreeTooHigh(usize),
    #[error("malformed series JSON: {0}")]
    Json(String),
}

#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<R> {
    var: String,
    order: usize,
    coeffs: Vec<R>,
}

impl<R: Coefficient> fmt::Debug for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries[{}; O({}^{})](", self.var, self.var, self.order)?;
        let mut first = true;
        for (k, c) in self.iter_nonzero() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c:?}*{}^{k}", self.var)?;
        }
        write!(f, ")")
    }
}

impl<R: Coefficient> TruncatedSeries<R> {
    /// Build from dense coefficients; extra entries are dropped and missing
    /// ones below `order` are zero.
    pub fn new(var: impl Into<String>, order: usize, mut coeffs: Vec<R>) -> Self {
        coeffs.truncate(order);
        coeffs.resize(order, R::zero());
        TruncatedSeries { var: var.into(), order, coeffs }
    }

    pub fn zero(var: impl Into<String>, order: usize) -> Self {
        Self::new(var, order, Vec::new())
    }

    pub fn one(var: impl Into<String>, order: usize) -> Self {
        Self::monomial(var, order, 0, R::one())
    }

    pub fn monomial(var: impl Into<String>, order: usize, exponent: usize, c: R) -> Self {
        let mut s = Self::zero(var, order);
        if exponent < order {
            s.coeffs[exponent] = c;
        }
        s
    }

    /// The series `var` itself.
    pub fn variable(var: impl Into<String>, order: usize) -> Self {
        Self::monomial(var, order, 1, R::one())
    }

    pub fn from_sparse(
        var: impl Into<String>,
        order: usize,
        terms: impl IntoIterator<Item = (usize, R)>,
    ) -> Self {
        let mut s = Self::zero(var, order);
        for (k, c) in terms {
            if k < order {
                s.coeffs[k].add_assign(&c);
            }
        }
        s
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `var^k`, or `None` when `k` is at or beyond the order.
    pub fn coeff(&self, k: usize) -> Option<&R> {
        self.coeffs.get(k)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn iter_nonzero(&self) -> impl Iterator<Item = (usize, &R)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Lowest exponent with a nonzero coefficient; `None` if every known
    /// coefficient vanishes.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn valuation_or_order(&self) -> usize {
        self.valuation().unwrap_or(self.order)
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn with_var(mut self, var: impl Into<String>) -> Self {
        self.var = var.into();
        self
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.var.clone(), order.min(self.order), self.coeffs.clone())
    }

    fn check_var(&self, other: &Self) -> Result<(), SeriesError> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(SeriesError::VariableMismatch { left: self.var.clone(), right: other.var.clone() })
        }
    }

    pub fn map<S: Coefficient>(&self, f: impl Fn(&R) -> S) -> TruncatedSeries<S> {
        TruncatedSeries {
            var: self.var.clone(),
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_var(other)?;
        let order = self.order.min(other.order);
        let coeffs = (0..order).map(|k| self.coeffs[k].add(&other.coeffs[k])).collect();
        Ok(Self::new(self.var.clone(), order, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_var(other)?;
        let order = self.order.min(other.order);
        let coeffs = (0..order).map(|k| self.coeffs[k].sub(&other.coeffs[k])).collect();
        Ok(Self::new(self.var.clone(), order, coeffs))
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.mul(c))
    }

    /// Cauchy product, going parallel only for large operands.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        let work = self.iter_nonzero().count() * other.iter_nonzero().count();
        let exec = if work >= PARALLEL_MUL_THRESHOLD {
            Execution::Parallel
        } else {
            Execution::Sequential
        };
        self.mul_with(other, exec)
    }

    pub fn mul_with(&self, other: &Self, exec: Execution) -> Result<Self, SeriesError> {
        self.check_var(other)?;
        let order = (self.order + other.valuation_or_order())
            .min(other.order + self.valuation_or_order());
        let coeffs = mul_dense(&self.coeffs, &other.coeffs, order, exec);
        Ok(Self::new(self.var.clone(), order, coeffs))
    }

    pub fn pow(&self, n: usize) -> Result<Self, SeriesError> {
        let mut acc = Self::one(self.var.clone(), self.order);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Multiply by `var^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(self.var.clone(), self.order + k, coeffs)
    }

    /// Divide by `var^k`; the first `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self, SeriesError> {
        let val = self.valuation_or_order();
        if val < k {
            return Err(SeriesError::ValuationTooLow { dividend: val, divisor: k });
        }
        Ok(Self::new(self.var.clone(), self.order - k, self.coeffs[k..].to_vec()))
    }

    /// Multiplicative inverse of a series with invertible constant term.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let inv0 = self
            .coeffs
            .first()
            .and_then(|c| c.inverse())
            .ok_or(SeriesError::NonUnitLeadingTerm)?;
        let n = self.order;
        let mut out: Vec<R> = Vec::with_capacity(n);
        out.push(inv0.clone());
        let nz: Vec<usize> = (1..n).filter(|&i| !self.coeffs[i].is_zero()).collect();
        for m in 1..n {
            let mut acc = R::zero();
            for &i in nz.iter().take_while(|&&i| i <= m) {
                let b = &out[m - i];
                if !b.is_zero() {
                    acc.add_assign(&self.coeffs[i].mul(b));
                }
            }
            out.push(acc.mul(&inv0).neg());
        }
        Ok(Self::new(self.var.clone(), n, out))
    }

    /// `self / divisor`, cancelling the divisor's valuation first.
    pub fn div(&self, divisor: &Self) -> Result<Self, SeriesError> {
        self.check_var(divisor)?;
        let v = divisor.valuation().ok_or(SeriesError::NonUnitLeadingTerm)?;
        let num = self.shift_down(v)?;
        let den = divisor.shift_down(v)?;
        num.mul(&den.reciprocal()?)
    }

    /// `self(inner(var))`. The inner series must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        self.check_var(inner)?;
        if inner.coeffs.first().is_some_and(|c| !c.is_zero()) {
            return Err(SeriesError::NonzeroConstantInner);
        }
        let v = inner.valuation_or_order().max(1);
        let outer_val = self.valuation_or_order().max(1);
        let order = (v * self.order).min(inner.order + (outer_val - 1) * v);
        if order == 0 {
            return Ok(Self::zero(self.var.clone(), 0));
        }
        // Horner: acc = (((a_{n-1}) x + a_{n-2}) x + ...) + a_0
        let mut acc: Vec<R> = vec![R::zero(); order];
        for k in (0..self.order).rev() {
            if acc.iter().any(|c| !c.is_zero()) {
                acc = mul_dense(&acc, &inner.coeffs, order, Execution::Sequential);
            }
            acc[0].add_assign(&self.coeffs[k]);
        }
        Ok(Self::new(self.var.clone(), order, acc))
    }

    /// Compositional inverse by Lagrange inversion:
    /// `[x^n] rev(a) = (1/n) [t^(n-1)] (t / a(t))^n`.
    pub fn revert(&self) -> Result<Self, SeriesError> {
        self.revert_with(Execution::Sequential)
    }

    pub fn revert_with(&self, exec: Execution) -> Result<Self, SeriesError> {
        if self.valuation() != Some(1) || self.coeffs[1].inverse().is_none() {
            return Err(SeriesError::BadValuation);
        }
        let n = self.order;
        let phi = self.shift_down(1)?.reciprocal()?;
        let mut out = vec![R::zero(); n];
        let mut power = phi.clone();
        for (m, slot) in out.iter_mut().enumerate().skip(1) {
            if m > 1 {
                power = power.mul_with(&phi, exec)?;
            }
            if let Some(c) = power.coeff(m - 1) {
                *slot = c.scale(&rat(1, m as i64));
            }
        }
        Ok(Self::new(self.var.clone(), n, out))
    }

    /// `exp(self)` for a series with zero constant term.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if self.coeffs.first().is_some_and(|c| !c.is_zero()) {
            return Err(SeriesError::NonzeroConstantInner);
        }
        let n = self.order;
        let mut out: Vec<R> = Vec::with_capacity(n);
        if n > 0 {
            out.push(R::one());
        }
        // n b_n = sum_k k a_k b_{n-k}
        for m in 1..n {
            let mut acc = R::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc.add_assign(&self.coeffs[k].scale(&int(k as i64)).mul(&out[m - k]));
                }
            }
            out.push(acc.scale(&rat(1, m as i64)));
        }
        Ok(Self::new(self.var.clone(), n, out))
    }
}

fn mul_dense<R: Coefficient>(a: &[R], b: &[R], len: usize, exec: Execution) -> Vec<R> {
    let nz_a: Vec<usize> = (0..a.len().min(len)).filter(|&i| !a[i].is_zero()).collect();
    exec.map_range(len, |j| {
        let mut acc = R::zero();
        for &i in nz_a.iter().take_while(|&&i| i <= j) {
            if let Some(bj) = b.get(j - i) {
                if !bj.is_zero() {
                    acc.add_assign(&a[i].mul(bj));
                }
            }
        }
        acc
    })
}

/// Polynomial in the formal variable `z` with exact coefficients.
#[derive(Clone, PartialEq, Default)]
pub struct PolyInZ {
    coeffs: Vec<Rational>,
}

impl fmt::Debug for PolyInZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PolyInZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !Zero::is_zero(*c))
            .map(|(k, c)| match k {
                0 => fmt_rational(c),
                1 => format!("{}*z", fmt_rational(c)),
                _ => format!("{}*z^{k}", fmt_rational(c)),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl PolyInZ {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyInZ { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c z^k`.
    pub fn monomial(k: usize, c: Rational) -> Self {
        let mut coeffs = vec![<Rational as Zero>::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn z() -> Self {
        Self::monomial(1, int(1))
    }

    /// Highest power of `z` present; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(<Rational as Zero>::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut coeffs = vec![<Rational as Zero>::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }
}

impl Coefficient for PolyInZ {
    fn zero() -> Self {
        PolyInZ::default()
    }
    fn one() -> Self {
        PolyInZ::constant(int(1))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
    fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![<Rational as Zero>::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }
    fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }
    fn inverse(&self) -> Option<Self> {
        match self.coeffs.as_slice() {
            [c] if !Zero::is_zero(c) => Some(Self::constant(c.recip())),
            _ => None,
        }
    }
    fn from_rational(x: &Rational) -> Self {
        Self::constant(x.clone())
    }
}

impl TruncatedSeries<PolyInZ> {
    /// The operator `D = z var d/dvar`: the coefficient of `var^j` is
    /// multiplied by `j z`.
    pub fn apply_dt(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c.shift(1).scale(&int(j as i64)))
            .collect();
        Self::new(self.var.clone(), self.order, coeffs)
    }
}

impl TruncatedSeries<Rational> {
    /// Lift to coefficients in `Q[z]`.
    pub fn to_poly_in_z(&self) -> TruncatedSeries<PolyInZ> {
        self.map(|c| PolyInZ::constant(c.clone()))
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            var: self.var.clone(),
            order: self.order,
            coeffs: self.iter_nonzero().map(|(k, c)| (k.to_string(), fmt_rational(c))).collect(),
        }
    }

    pub fn from_json(json: &SeriesJson) -> Result<Self, SeriesError> {
        let mut s = Self::zero(json.var.clone(), json.order);
        for (k, v) in &json.coeffs {
            let k: usize = k.parse().map_err(|_| SeriesError::Json(format!("bad exponent {k:?}")))?;
            if k >= json.order {
                return Err(SeriesError::Json(format!("exponent {k} at or beyond order")));
            }
            s.coeffs[k] =
                parse_rational(v).ok_or_else(|| SeriesError::Json(format!("bad rational {v:?}")))?;
        }
        Ok(s)
    }
}

/// Wire form `{"var": "t", "order": N, "coeffs": {"k": "num/den"}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub var: String,
    pub order: usize,
    pub coeffs: BTreeMap<String, String>,
}

/// `sum_j (L^j / j!) f_j(q)` with `L = log q` and `j <= 3`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogSeries<R: Coefficient> {
    components: Vec<TruncatedSeries<R>>,
}

pub const MAX_LOG_DEGREE: usize = 3;

impl<R: Coefficient> LogSeries<R> {
    pub fn new(components: Vec<TruncatedSeries<R>>) -> Result<Self, SeriesError> {
        if components.is_empty() {
            return Err(SeriesError::Json("log series needs at least one component".into()));
        }
        if components.len() > MAX_LOG_DEGREE + 1 {
            return Err(SeriesError::LogDegreeTooHigh(components.len() - 1));
        }
        for c in &components[1..] {
            components[0].check_var(c)?;
        }
        Ok(LogSeries { components })
    }

    pub fn from_series(s: TruncatedSeries<R>) -> Self {
        LogSeries { components: vec![s] }
    }

    /// Coefficient series of `L^j / j!`; zero beyond the stored components.
    pub fn component(&self, j: usize) -> TruncatedSeries<R> {
        self.components
            .get(j)
            .cloned()
            .unwrap_or_else(|| TruncatedSeries::zero(self.var().to_string(), self.order()))
    }

    pub fn components(&self) -> &[TruncatedSeries<R>] {
        &self.components
    }

    pub fn var(&self) -> &str {
        self.components[0].var()
    }

    pub fn order(&self) -> usize {
        self.components.iter().map(|c| c.order()).min().unwrap_or(0)
    }

    /// Highest `j` whose component is not identically zero.
    pub fn log_degree(&self) -> Option<usize> {
        self.components.iter().rposition(|c| !c.is_zero())
    }

    pub fn map<S: Coefficient>(&self, f: impl Fn(&R) -> S + Copy) -> LogSeries<S> {
        LogSeries { components: self.components.iter().map(|c| c.map(f)).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        let n = self.components.len().max(other.components.len());
        let comps = (0..n)
            .map(|j| self.component(j).add(&other.component(j)))
            .collect::<Result<Vec<_>, _>>()?;
        LogSeries::new(comps)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        let n = self.components.len().max(other.components.len());
        let comps = (0..n)
            .map(|j| self.component(j).sub(&other.component(j)))
            .collect::<Result<Vec<_>, _>>()?;
        LogSeries::new(comps)
    }

    /// Divide every component by a log-free series.
    pub fn div_series(&self, divisor: &TruncatedSeries<R>) -> Result<Self, SeriesError> {
        let comps =
            self.components.iter().map(|c| c.div(divisor)).collect::<Result<Vec<_>, _>>()?;
        LogSeries::new(comps)
    }

    pub fn shift_up(&self, k: usize) -> Self {
        LogSeries { components: self.components.iter().map(|c| c.shift_up(k)).collect() }
    }

    pub fn scale(&self, c: &R) -> Self {
        LogSeries { components: self.components.iter().map(|s| s.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.log_degree().is_none()
    }
}

impl LogSeries<PolyInZ> {
    /// `D = z q d/dq` with `D(L) = z`: component `j` becomes
    /// `D f_j + z f_{j+1}`.
    pub fn apply_dq(&self) -> Self {
        let n = self.components.len();
        let components = (0..n)
            .map(|j| {
                let d = self.components[j].apply_dt();
                match self.components.get(j + 1) {
                    Some(next) => d.add(&next.map(|c| c.shift(1))).expect("same variable"),
                    None => d,
                }
            })
            .collect();
        LogSeries { components }
    }
}
