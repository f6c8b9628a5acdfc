//! Assembly of residue integrands from linear factors.
//!
//! Factors are collected with signed exponents before anything is expanded,
//! so a numerator factor of `e_k` cancels the matching `q` factor (or a
//! monomial) exactly instead of surviving as a removable pole.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::geometry::{build_w, e_factors, q_factors, InsertionIndex, SpaceSpec};
use crate::kernel::rational::{pow_rat, Integer, Rational};
use crate::kernel::{KernelError, LinearForm, Poly, RatExpr};

pub struct FactorBag {
    nvars: usize,
    scale: Rational,
    forms: BTreeMap<LinearForm, i64>,
    poly: Poly<Integer>,
}

impl FactorBag {
    pub fn new(nvars: usize) -> Self {
        FactorBag {
            nvars,
            scale: Rational::one(),
            forms: BTreeMap::new(),
            poly: Poly::one(),
        }
    }

    pub fn scale(&mut self, k: &Rational) {
        self.scale *= k;
    }

    /// Multiplies by `(Σ c·x_v)^exp`; `exp` may be negative.
    pub fn form(&mut self, terms: &[(usize, i64)], exp: i64) -> Result<(), KernelError> {
        if exp == 0 {
            return Ok(());
        }
        let mut coeffs = vec![Integer::zero(); self.nvars];
        for &(v, c) in terms {
            coeffs[v] += c;
        }
        let (s, form) = LinearForm::canonical(coeffs)?;
        self.scale *= pow_rat(&Rational::from_integer(s), exp as i32);
        *self.forms.entry(form).or_insert(0) += exp;
        Ok(())
    }

    pub fn var(&mut self, v: usize, exp: i64) {
        if exp != 0 {
            *self
                .forms
                .entry(LinearForm::var(self.nvars, v))
                .or_insert(0) += exp;
        }
    }

    pub fn poly(&mut self, p: &Poly<Integer>) {
        self.poly = self.poly.mul(p);
    }

    /// `E(x, y) = Π_p e_{k_p}(x, y)` raised to `exp`.
    pub fn e_product(
        &mut self,
        space: &SpaceSpec,
        x: usize,
        y: usize,
        exp: i64,
    ) -> Result<(), KernelError> {
        for &k in space.degrees() {
            for (i, j) in e_factors(k) {
                self.form(&[(x, i), (y, j)], exp)?;
            }
        }
        Ok(())
    }

    /// `q(x, y)` raised to `exp`.
    pub fn q_product(
        &mut self,
        space: &SpaceSpec,
        x: usize,
        y: usize,
        exp: i64,
    ) -> Result<(), KernelError> {
        for (i, j) in q_factors(space.weights()) {
            self.form(&[(x, i), (y, j)], exp)?;
        }
        Ok(())
    }

    pub fn build(self) -> Result<RatExpr, KernelError> {
        if self.poly.is_zero() || self.scale.is_zero() {
            return Ok(RatExpr::zero(self.nvars));
        }
        let mut num = Poly::one();
        let mut den = Vec::new();
        for (form, e) in self.forms {
            if e > 0 {
                num = num.mul(&form.to_poly().pow(e as u32));
            } else if e < 0 {
                den.push((form, (-e) as u32));
            }
        }
        num = num.mul(&self.poly);
        Ok(RatExpr::from_parts(self.nvars, self.scale, num, den))
    }
}

/// `Π_p (Σ_{(x,y) ∈ edges} w_p(x, y))^{n_p}` over every class in `ins`.
pub fn insertion_poly(ins: &InsertionIndex, edges: &[(usize, usize)]) -> Poly<Integer> {
    let weighted: Vec<(usize, usize, i64)> = edges.iter().map(|&(x, y)| (x, y, 1)).collect();
    insertion_poly_weighted(ins, &weighted)
}

/// As [`insertion_poly`], with an integer multiplicity on each edge.
pub fn insertion_poly_weighted(
    ins: &InsertionIndex,
    edges: &[(usize, usize, i64)],
) -> Poly<Integer> {
    let mut out = Poly::one();
    for (p, n) in ins.pairs() {
        let mut s = Poly::zero();
        for &(x, y, k) in edges {
            if k != 0 {
                s.add_scaled(&build_w::<Integer>(p, x, y), &Integer::from(k));
            }
        }
        out = out.mul(&s.pow(n));
    }
    out
}
