//! Truncated series in a grading variable `q` with polynomial coefficients,
//! plus one term linear in a logarithmic variable.
//!
//! A [`GradedSeries`] stands for `c·x^ℓ + Σ_{d ≤ order} q^d P_d(x)`, where
//! `x^ℓ` is the logarithmic variable (so `q = e^{x^ℓ}`) and the `P_d` never
//! involve it.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::poly::Poly;
use super::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("product of series with logarithmic terms")]
    LogarithmicProduct,
    #[error("exp needs a series without constant or logarithmic term")]
    ExpConstantTerm,
    #[error("log needs leading term 1 and no logarithmic term")]
    LogLeadingTerm,
    #[error("substitution for the logarithmic variable must be that variable plus O(q)")]
    BadLogSubstitution,
    #[error("substitution for variable {0} has a logarithmic term")]
    LogarithmicImage(usize),
    #[error("coefficient involves the logarithmic variable")]
    LogVariableInCoefficient,
    #[error("substitution list has {found} entries, need {needed}")]
    SubstitutionArity { needed: usize, found: usize },
}

#[derive(Clone, PartialEq, Eq)]
pub struct GradedSeries {
    order: usize,
    log_coeff: Rational,
    coeffs: Vec<Poly<Rational>>,
}

impl GradedSeries {
    pub fn zero(order: usize) -> Self {
        GradedSeries {
            order,
            log_coeff: Rational::zero(),
            coeffs: vec![Poly::zero(); order + 1],
        }
    }

    pub fn constant(order: usize, p: Poly<Rational>) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = p;
        s
    }

    /// The logarithmic variable itself, `x^ℓ`.
    pub fn log_var(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.log_coeff = Rational::one();
        s
    }

    /// `log_coeff·x^ℓ + Σ q^d coeffs[d]`, padded or truncated to `order`.
    pub fn from_parts(order: usize, log_coeff: Rational, mut coeffs: Vec<Poly<Rational>>) -> Self {
        coeffs.resize(order + 1, Poly::zero());
        GradedSeries {
            order,
            log_coeff,
            coeffs,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn log_coeff(&self) -> &Rational {
        &self.log_coeff
    }

    pub fn coeff(&self, d: usize) -> &Poly<Rational> {
        &self.coeffs[d]
    }

    pub fn coeffs(&self) -> &[Poly<Rational>] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, d: usize, p: Poly<Rational>) {
        self.coeffs[d] = p;
    }

    pub fn set_log_coeff(&mut self, c: Rational) {
        self.log_coeff = c;
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Self::from_parts(
            order,
            self.log_coeff.clone(),
            self.coeffs[..=order].to_vec(),
        )
    }

    /// The part without the logarithmic term.
    pub fn power_part(&self) -> Self {
        GradedSeries {
            log_coeff: Rational::zero(),
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.log_coeff.is_zero() && self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let coeffs = (0..=order)
            .map(|d| self.coeffs[d].add(&other.coeffs[d]))
            .collect();
        GradedSeries {
            order,
            log_coeff: &self.log_coeff + &other.log_coeff,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        GradedSeries {
            order: self.order,
            log_coeff: &self.log_coeff * k,
            coeffs: self.coeffs.iter().map(|p| p.scale(k)).collect(),
        }
    }

    /// Multiplies by `q^d`, dropping what falls past the order.
    pub fn shift(&self, d: usize) -> Self {
        let mut s = Self::zero(self.order);
        for k in 0..=self.order.saturating_sub(d) {
            if k + d <= self.order {
                s.coeffs[k + d] = self.coeffs[k].clone();
            }
        }
        s
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        if !self.log_coeff.is_zero() || !other.log_coeff.is_zero() {
            return Err(SeriesError::LogarithmicProduct);
        }
        let order = self.order.min(other.order);
        let mut out = Self::zero(order);
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if !other.coeffs[j].is_zero() {
                    let p = self.coeffs[i].mul(&other.coeffs[j]);
                    out.coeffs[i + j].add_assign(&p);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_poly(&self, p: &Poly<Rational>) -> Result<Self, SeriesError> {
        if !self.log_coeff.is_zero() {
            return Err(SeriesError::LogarithmicProduct);
        }
        Ok(GradedSeries {
            order: self.order,
            log_coeff: Rational::zero(),
            coeffs: self.coeffs.iter().map(|c| c.mul(p)).collect(),
        })
    }

    /// `exp(s)` for `s = O(q)`, via `E_k = (1/k) Σ_j j s_j E_{k-j}`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.log_coeff.is_zero() || !self.coeffs[0].is_zero() {
            return Err(SeriesError::ExpConstantTerm);
        }
        let mut e = Self::zero(self.order);
        e.coeffs[0] = Poly::one();
        for k in 1..=self.order {
            let mut acc = Poly::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() && !e.coeffs[k - j].is_zero() {
                    let t = self.coeffs[j].mul(&e.coeffs[k - j]);
                    acc.add_scaled(&t, &Rational::from_integer(j.into()));
                }
            }
            e.coeffs[k] = acc.scale(&Rational::new(1.into(), k.into()));
        }
        Ok(e)
    }

    /// `log(s)` for `s = 1 + O(q)`, via `L_k = s_k - (1/k) Σ_{j<k} j L_j s_{k-j}`.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.log_coeff.is_zero() || self.coeffs[0] != Poly::one() {
            return Err(SeriesError::LogLeadingTerm);
        }
        let mut l = Self::zero(self.order);
        for k in 1..=self.order {
            let mut acc = Poly::zero();
            for j in 1..k {
                if !l.coeffs[j].is_zero() && !self.coeffs[k - j].is_zero() {
                    let t = l.coeffs[j].mul(&self.coeffs[k - j]);
                    acc.add_scaled(&t, &Rational::from_integer(j.into()));
                }
            }
            let mut c = self.coeffs[k].clone();
            c.add_scaled(&acc, &-Rational::new(1.into(), k.into()));
            l.coeffs[k] = c;
        }
        Ok(l)
    }

    /// Substitutes `x^p ↦ subs[p]` for every variable and reexpands in the new
    /// grading: `q^d ↦ Q^d·exp(d·δ)` where `subs[log_var] = x^ℓ + δ`.
    pub fn compose(&self, subs: &[GradedSeries], log_var: usize) -> Result<Self, SeriesError> {
        let nvars = subs.len();
        if log_var >= nvars {
            return Err(SeriesError::SubstitutionArity {
                needed: log_var + 1,
                found: nvars,
            });
        }
        let lsub = &subs[log_var];
        if !lsub.log_coeff.is_one() || !lsub.coeffs[0].is_zero() {
            return Err(SeriesError::BadLogSubstitution);
        }
        for (p, s) in subs.iter().enumerate() {
            if p != log_var && !s.log_coeff.is_zero() {
                return Err(SeriesError::LogarithmicImage(p));
            }
        }
        let order = subs
            .iter()
            .map(|s| s.order)
            .min()
            .unwrap_or(0)
            .min(self.order);
        let delta = lsub.power_part().truncate(order);
        let mut out = delta.scale(&self.log_coeff);
        out.log_coeff = self.log_coeff.clone();

        let mut powers = PowerCache::new(subs, order);
        for d in 0..=order {
            let c = &self.coeffs[d];
            if c.is_zero() {
                continue;
            }
            let mut value = Self::zero(order);
            for (m, k) in c.terms() {
                if m.exponent(log_var) > 0 {
                    return Err(SeriesError::LogVariableInCoefficient);
                }
                let mono = powers.monomial(*m, nvars)?;
                value = value.add(&mono.scale(k));
            }
            if d > 0 {
                let e = delta.scale(&Rational::from_integer(d.into())).exp()?;
                value = value.mul(&e)?.shift(d);
            }
            out = out.add(&value);
        }
        out.log_coeff = self.log_coeff.clone();
        Ok(out)
    }

    /// Coefficient of `q^d · m`.
    pub fn term(&self, d: usize, m: Monomial) -> Rational {
        self.coeffs
            .get(d)
            .map_or_else(Rational::zero, |p| p.coeff(m))
    }
}

struct PowerCache<'a> {
    subs: &'a [GradedSeries],
    order: usize,
    cache: HashMap<(usize, u32), GradedSeries>,
}

impl<'a> PowerCache<'a> {
    fn new(subs: &'a [GradedSeries], order: usize) -> Self {
        PowerCache {
            subs,
            order,
            cache: HashMap::new(),
        }
    }

    fn power(&mut self, v: usize, e: u32) -> Result<GradedSeries, SeriesError> {
        if e == 0 {
            return Ok(GradedSeries::constant(self.order, Poly::one()));
        }
        if let Some(s) = self.cache.get(&(v, e)) {
            return Ok(s.clone());
        }
        let base = self.subs[v].truncate(self.order);
        let s = if e == 1 {
            base
        } else {
            self.power(v, e - 1)?.mul(&base)?
        };
        self.cache.insert((v, e), s.clone());
        Ok(s)
    }

    fn monomial(&mut self, m: Monomial, nvars: usize) -> Result<GradedSeries, SeriesError> {
        let mut acc = GradedSeries::constant(self.order, Poly::one());
        for v in 0..nvars {
            let e = m.exponent(v);
            if e > 0 {
                acc = acc.mul(&self.power(v, e)?)?;
            }
        }
        Ok(acc)
    }
}

impl std::fmt::Debug for GradedSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}·xℓ", self.log_coeff)?;
        for (d, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                write!(f, " + q^{d}({c})")?;
            }
        }
        Ok(())
    }
}
