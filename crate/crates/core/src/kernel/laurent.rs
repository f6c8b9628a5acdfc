//! Reference residue by direct Laurent expansion.
//!
//! Independent of [`residue`](super::residue::residue): it substitutes
//! `v = v* + ε` with `ε` as an extra polynomial variable, works over the
//! rationals throughout, and inverts each remaining factor by raising a
//! truncated geometric series to its multiplicity. Slow; meant for tests.

use num_traits::Zero;

use super::linear::{root_combination, LinearForm};
use super::monomial::MAX_VARS;
use super::poly::Poly;
use super::ratexpr::RatExpr;
use super::rational::{pow_rat, Rational};
use super::KernelError;

/// Residue of `f` in `var` at the zero of `pole`, expanding every series to
/// `order` terms in `ε`. `order` must reach the pole multiplicity.
pub fn laurent_residue(
    f: &RatExpr,
    var: usize,
    pole: &LinearForm,
    order: usize,
) -> Result<RatExpr, KernelError> {
    let nvars = f.nvars();
    let eps = nvars;
    if eps >= MAX_VARS {
        return Err(KernelError::TooManyVariables {
            requested: nvars + 1,
            max: MAX_VARS,
        });
    }
    let (_, pole) = LinearForm::canonical(pole.coeffs().to_vec())?;
    let m = f.multiplicity(&pole) as usize;
    if m == 0 || f.is_zero() {
        return Ok(RatExpr::zero(nvars));
    }
    if order < m {
        return Err(KernelError::InsufficientOrder { order, needed: m });
    }
    let root = root_combination(&pole, var)?;
    let shifted: Poly<Rational> = Poly::linear(&root.0).add(&Poly::var(eps));

    // numerator(v = root + ε), sliced by powers of ε
    let num = f.numerator().compose_var(var, &shifted);
    let mut total: Vec<Poly<Rational>> = num.coefficients_in(eps);
    total.resize(order, Poly::zero());
    total.truncate(order);

    let c0 = Rational::from_integer(pole.coeff(var).clone());
    let mut scale = pow_rat(&c0, -(m as i32));
    let mut den: Vec<(LinearForm, u32)> = Vec::new();

    for (form, e) in f.denominator() {
        if *form == pole {
            continue;
        }
        let b = Rational::from_integer(form.coeff(var).clone());
        if b.is_zero() {
            den.push((form.clone(), *e));
            continue;
        }
        // form(root + ε) = a + b ε with a = form(root)
        let mut a = form.to_combination();
        a.substitute(var, &root);
        if a.is_zero() {
            return Err(KernelError::DegenerateCollision {
                pole: format!("{pole:?}"),
                factor: format!("{form:?}"),
            });
        }
        let (s, aform) = a.canonical()?;
        // 1/(sA + bε) = G / (sA)^order with
        // G = Σ_{n<order} (-b)^n s^{order-1-n} A^{order-1-n} ε^n
        let apoly = aform.to_poly().to_rational();
        let geometric: Vec<Poly<Rational>> = (0..order)
            .map(|n| {
                let k = pow_rat(&-b.clone(), n as i32) * pow_rat(&s, (order - 1 - n) as i32);
                apoly.pow((order - 1 - n) as u32).scale(&k)
            })
            .collect();
        let mut power = geometric.clone();
        for _ in 1..*e {
            power = truncated_product(&power, &geometric, order);
        }
        total = truncated_product(&total, &power, order);
        scale /= pow_rat(&s, (order * *e as usize) as i32);
        den.push((aform, order as u32 * *e));
    }

    // the pole contributes (c0 ε)^{-m}; the residue is the ε^{m-1} coefficient
    let top = total.swap_remove(m - 1);
    let (s, q) = top.to_integer();
    Ok(RatExpr::from_parts(nvars, scale * s, q, den))
}

fn truncated_product(
    a: &[Poly<Rational>],
    b: &[Poly<Rational>],
    order: usize,
) -> Vec<Poly<Rational>> {
    let mut out = vec![Poly::zero(); order];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j < order {
                out[i + j].add_assign(&x.mul(y));
            }
        }
    }
    out
}
