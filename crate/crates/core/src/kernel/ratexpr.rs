//! Rational functions whose denominators are products of linear forms.

use std::fmt;

use num_traits::{One, Zero};

use super::linear::LinearForm;
use super::monomial::MAX_VARS;
use super::poly::Poly;
use super::rational::{pow_int, Integer, Rational};
use super::KernelError;

/// `scale · num / Π L_i^{e_i}` with canonical, pairwise distinct `L_i`.
#[derive(Clone)]
pub struct RatExpr {
    nvars: usize,
    scale: Rational,
    num: Poly<Integer>,
    den: Vec<(LinearForm, u32)>,
}

impl RatExpr {
    /// Builds an expression from a numerator and raw (not necessarily
    /// canonical) denominator factors.
    pub fn new(
        nvars: usize,
        scale: Rational,
        num: Poly<Integer>,
        den: impl IntoIterator<Item = (Vec<Integer>, u32)>,
    ) -> Result<Self, KernelError> {
        if nvars > MAX_VARS {
            return Err(KernelError::TooManyVariables {
                requested: nvars,
                max: MAX_VARS,
            });
        }
        let mut scale = scale;
        let mut factors = Vec::new();
        for (coeffs, e) in den {
            if coeffs.len() != nvars {
                return Err(KernelError::ArityMismatch {
                    expected: nvars,
                    found: coeffs.len(),
                });
            }
            let (s, form) =
                LinearForm::canonical(coeffs).map_err(|_| KernelError::ZeroDenominator)?;
            if e > 0 {
                scale /= Rational::from_integer(pow_int(&s, e));
                factors.push((form, e));
            }
        }
        Ok(Self::from_parts(nvars, scale, num, factors))
    }

    /// Assembles from canonical factors, merging repeats and normalising content.
    pub fn from_parts(
        nvars: usize,
        scale: Rational,
        num: Poly<Integer>,
        den: Vec<(LinearForm, u32)>,
    ) -> Self {
        if scale.is_zero() || num.is_zero() {
            return Self::zero(nvars);
        }
        let mut den: Vec<(LinearForm, u32)> = den.into_iter().filter(|(_, e)| *e > 0).collect();
        den.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(LinearForm, u32)> = Vec::with_capacity(den.len());
        for (f, e) in den {
            match merged.last_mut() {
                Some((g, k)) if *g == f => *k += e,
                _ => merged.push((f, e)),
            }
        }
        let g = num.content();
        let (scale, num) = if g.is_one() {
            (scale, num)
        } else {
            (
                scale * Rational::from_integer(g.clone()),
                num.div_exact_scalar(&g),
            )
        };
        RatExpr {
            nvars,
            scale,
            num,
            den: merged,
        }
    }

    pub fn zero(nvars: usize) -> Self {
        RatExpr {
            nvars,
            scale: Rational::zero(),
            num: Poly::zero(),
            den: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_parts(nvars, c, Poly::one(), Vec::new())
    }

    pub fn polynomial(nvars: usize, p: &Poly<Rational>) -> Self {
        let (s, q) = p.to_integer();
        Self::from_parts(nvars, s, q, Vec::new())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn numerator_int(&self) -> &Poly<Integer> {
        &self.num
    }

    /// The full numerator `scale · num` over the rationals.
    pub fn numerator(&self) -> Poly<Rational> {
        self.num.to_rational().scale(&self.scale)
    }

    pub fn denominator(&self) -> &[(LinearForm, u32)] {
        &self.den
    }

    pub fn multiplicity(&self, form: &LinearForm) -> u32 {
        self.den
            .iter()
            .find(|(f, _)| f == form)
            .map_or(0, |(_, e)| *e)
    }

    pub fn involves(&self, v: usize) -> bool {
        self.num.involves(v) || self.den.iter().any(|(f, _)| f.involves(v))
    }

    /// The value when no variable remains.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if !self.den.is_empty() || !self.num.is_constant() {
            return None;
        }
        Some(&self.scale * Rational::from_integer(self.num.constant_term()))
    }

    pub fn scaled(&self, k: &Rational) -> Self {
        Self::from_parts(
            self.nvars,
            &self.scale * k,
            self.num.clone(),
            self.den.clone(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut den = self.den.clone();
        den.extend(other.den.iter().cloned());
        Self::from_parts(
            self.nvars,
            &self.scale * &other.scale,
            self.num.mul(&other.num),
            den,
        )
    }

    pub fn mul_poly(&self, p: &Poly<Integer>) -> Self {
        Self::from_parts(
            self.nvars,
            self.scale.clone(),
            self.num.mul(p),
            self.den.clone(),
        )
    }

    /// Multiplies by `Π L^e`.
    pub fn with_denominator(&self, extra: &[(LinearForm, u32)]) -> Self {
        let mut den = self.den.clone();
        den.extend(extra.iter().cloned());
        Self::from_parts(self.nvars, self.scale.clone(), self.num.clone(), den)
    }

    /// Sum over the least common denominator.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut lcd: Vec<(LinearForm, u32)> = self.den.clone();
        for (f, e) in &other.den {
            match lcd.iter_mut().find(|(g, _)| g == f) {
                Some((_, k)) => *k = (*k).max(*e),
                None => lcd.push((f.clone(), *e)),
            }
        }
        let lift = |x: &RatExpr| -> Poly<Rational> {
            let mut p = x.num.clone();
            for (f, e) in &lcd {
                let missing = e - x.multiplicity(f);
                if missing > 0 {
                    p = p.mul(&f.to_poly().pow(missing));
                }
            }
            p.to_rational().scale(&x.scale)
        };
        let sum = lift(self).add(&lift(other));
        let (s, q) = sum.to_integer();
        Self::from_parts(self.nvars, s, q, lcd)
    }

    pub fn neg(&self) -> Self {
        RatExpr {
            scale: -&self.scale,
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Equality as rational functions.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    /// Removes linear factors shared by numerator and denominator.
    pub fn cancel(&self) -> Self {
        let mut num = self.num.clone();
        let mut den = Vec::with_capacity(self.den.len());
        for (f, e) in &self.den {
            let v = f.support().last().expect("nonzero form");
            let rest = Poly::linear(&f.without(v));
            let mut e = *e;
            while e > 0 {
                match num.div_linear(v, f.coeff(v), &rest) {
                    Some(q) => {
                        num = q;
                        e -= 1;
                    }
                    None => break,
                }
            }
            den.push((f.clone(), e));
        }
        Self::from_parts(self.nvars, self.scale.clone(), num, den)
    }

    /// Evaluates at a rational point; `None` at a pole.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let mut d = Rational::one();
        for (f, e) in &self.den {
            let mut val = Rational::zero();
            for (c, x) in f.coeffs().iter().zip(point) {
                val += Rational::from_integer(c.clone()) * x;
            }
            if val.is_zero() {
                return None;
            }
            d *= super::rational::pow_rat(&val, *e as i32);
        }
        Some(self.num.to_rational().eval(point) * &self.scale / d)
    }
}

impl fmt::Debug for RatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * [{}]", self.scale, self.num)?;
        if !self.den.is_empty() {
            write!(f, " / ")?;
            for (form, e) in &self.den {
                write!(f, "{form:?}^{e}")?;
            }
        }
        Ok(())
    }
}
