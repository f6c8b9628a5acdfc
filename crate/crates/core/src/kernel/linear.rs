//! Homogeneous linear forms.
//!
//! [`LinearForm`] is the canonical denominator factor: integer coefficients with
//! gcd one and first nonzero coefficient positive. [`LinearCombination`] is an
//! unnormalised rational form used for substitution images.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::rational::{Integer, Rational};
use super::KernelError;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: Vec<Integer>,
}

impl LinearForm {
    /// Canonicalises `coeffs`, returning `(s, L)` with `coeffs = s·L`.
    pub fn canonical(coeffs: Vec<Integer>) -> Result<(Integer, LinearForm), KernelError> {
        let mut g = Integer::zero();
        let mut lead_negative = None;
        for c in &coeffs {
            if !c.is_zero() {
                g = g.gcd(c);
                lead_negative.get_or_insert(c.is_negative());
            }
        }
        let Some(neg) = lead_negative else {
            return Err(KernelError::ZeroForm);
        };
        if neg {
            g = -g;
        }
        let coeffs = coeffs.into_iter().map(|c| c / &g).collect();
        Ok((g, LinearForm { coeffs }))
    }

    /// As [`canonical`](Self::canonical) for small integer coefficients.
    pub fn from_i64(coeffs: &[i64]) -> Result<(Integer, LinearForm), KernelError> {
        Self::canonical(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    /// Canonicalises a rational form: `coeffs = s·L` with `s` rational.
    pub fn from_rational(coeffs: &[Rational]) -> Result<(Rational, LinearForm), KernelError> {
        let den = coeffs
            .iter()
            .fold(Integer::one(), |acc, c| acc.lcm(c.denom()));
        let ints = coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let (s, l) = Self::canonical(ints)?;
        Ok((Rational::new(s, den), l))
    }

    pub fn var(nvars: usize, v: usize) -> LinearForm {
        let mut coeffs = vec![Integer::zero(); nvars];
        coeffs[v] = Integer::one();
        LinearForm { coeffs }
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, v: usize) -> &Integer {
        &self.coeffs[v]
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn involves(&self, v: usize) -> bool {
        !self.coeffs[v].is_zero()
    }

    /// True when the form is (a multiple of) the single variable `v`.
    pub fn is_var(&self, v: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(u, c)| if u == v { c.is_one() } else { c.is_zero() })
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(v, _)| v)
    }

    pub fn to_poly(&self) -> Poly<Integer> {
        Poly::linear(&self.coeffs)
    }

    /// The form with the `v` slot cleared.
    pub fn without(&self, v: usize) -> Vec<Integer> {
        let mut c = self.coeffs.clone();
        c[v] = Integer::zero();
        c
    }

    pub fn to_combination(&self) -> LinearCombination {
        LinearCombination(
            self.coeffs
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut first = true;
        for (v, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if c.is_negative() {
                write!(f, "-")?;
            } else if v > 0 && !first {
                write!(f, "+")?;
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "x{v}")?;
            } else {
                write!(f, "{a}x{v}")?;
            }
        }
        write!(f, ")")
    }
}

/// Rational linear combination `Σ c_v x_v`, not normalised.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearCombination(pub Vec<Rational>);

impl LinearCombination {
    pub fn zero(nvars: usize) -> Self {
        LinearCombination(vec![Rational::zero(); nvars])
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut c = Self::zero(nvars);
        c.0[v] = Rational::one();
        c
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        LinearCombination(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeff(&self, v: usize) -> &Rational {
        &self.0[v]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Replaces `x_v` by `image` (which must not involve `x_v`).
    pub fn substitute(&mut self, v: usize, image: &LinearCombination) {
        let c = std::mem::replace(&mut self.0[v], Rational::zero());
        if c.is_zero() {
            return;
        }
        for (u, d) in image.0.iter().enumerate() {
            if !d.is_zero() {
                self.0[u] += &c * d;
            }
        }
    }

    pub fn canonical(&self) -> Result<(Rational, LinearForm), KernelError> {
        LinearForm::from_rational(&self.0)
    }
}

/// Solves `form = 0` for `x_v`: returns `(r, c0)` with `x_v = r / c0`,
/// `r` free of `x_v` and `c0` the coefficient of `x_v` in `form`.
pub fn root_of(form: &LinearForm, v: usize) -> Result<(Vec<Integer>, Integer), KernelError> {
    let c0 = form.coeff(v).clone();
    if c0.is_zero() {
        return Err(KernelError::PoleMissingVariable { var: v });
    }
    let r = form.without(v).into_iter().map(|c| -c).collect();
    Ok((r, c0))
}

/// The root of `form` in `x_v` as a rational combination.
pub fn root_combination(form: &LinearForm, v: usize) -> Result<LinearCombination, KernelError> {
    let (r, c0) = root_of(form, v)?;
    let c0 = Rational::from_integer(c0);
    Ok(LinearCombination(
        r.into_iter()
            .map(|c| Rational::from_integer(c) / &c0)
            .collect(),
    ))
}
