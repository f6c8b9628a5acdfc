//! Residues at linear poles by the derivative formula
//! `Res = 1/(m-1)! · ∂^{m-1}[(v - v*)^m f] |_{v = v*}`.
//!
//! The derivative of the product is expanded with the Leibniz rule: the
//! numerator is differentiated symbolically and each remaining factor
//! `L^{-e}` contributes `(-e)_k c^k L^{-e-k}`.

use num_traits::Zero;

use super::linear::{root_of, LinearForm};
use super::poly::Poly;
use super::ratexpr::RatExpr;
use super::rational::{binomial, factorial, pow_int, Integer, Rational};
use super::KernelError;

/// Residue of `f` in the variable `var` at the zero of `pole`.
///
/// The pole need not be canonical; a pole absent from the denominator gives zero.
pub fn residue(f: &RatExpr, var: usize, pole: &LinearForm) -> Result<RatExpr, KernelError> {
    let (_, pole) = LinearForm::canonical(pole.coeffs().to_vec())?;
    let (r, c0) = root_of(&pole, var)?;
    let nvars = f.nvars();
    let m = f.multiplicity(&pole);
    if m == 0 || f.is_zero() {
        return Ok(RatExpr::zero(nvars));
    }
    let m1 = (m - 1) as usize;

    // Numerator Taylor data: N_k = c0^D · (1/k!) ∂^k num |_{root}.
    let num = f.numerator_int();
    let d = num.degree_in(var);
    let r_poly = Poly::linear(&r);
    let mut series: Vec<Poly<Integer>> = Vec::with_capacity(m1 + 1);
    let mut deriv = num.clone();
    for k in 0..=m1 {
        if k > 0 {
            deriv = deriv.derivative(var);
        }
        if deriv.is_zero() {
            series.push(Poly::zero());
            continue;
        }
        let taylor = if k > 1 {
            deriv.div_exact_scalar(&factorial(k as u32))
        } else {
            deriv.clone()
        };
        // c0^{D-k} taylor(root), lifted to c0^D
        let sub = taylor.substitute_cleared(var, &r_poly, &c0, d - k as u32);
        series.push(if k > 0 {
            sub.scale(&pow_int(&c0, k as u32))
        } else {
            sub
        });
    }

    let mut scale = f.scale() / Rational::from_integer(pow_int(&c0, m + d));
    let mut den: Vec<(LinearForm, u32)> = Vec::new();

    for (form, e) in f.denominator() {
        if *form == pole {
            continue;
        }
        let cj = form.coeff(var);
        if cj.is_zero() {
            den.push((form.clone(), *e));
            continue;
        }
        // L(root) = M' / c0 with M' = c0·L - cj·P, then M' = s·M canonical
        let mprime: Vec<Integer> = form
            .coeffs()
            .iter()
            .zip(pole.coeffs())
            .map(|(l, p)| &c0 * l - cj * p)
            .collect();
        let (s, mform) =
            LinearForm::canonical(mprime).map_err(|_| KernelError::DegenerateCollision {
                pole: format!("{pole:?}"),
                factor: format!("{form:?}"),
            })?;
        let e = *e;
        scale *= Rational::new(pow_int(&c0, e), pow_int(&s, e + m - 1));
        series = convolve_factor(&series, m1, e, cj, &c0, &s, &mform);
        den.push((mform, e + m - 1));
    }

    let top = series.pop().unwrap_or_else(Poly::zero);
    Ok(RatExpr::from_parts(nvars, scale, top, den))
}

/// Multiplies the truncated series by `U(ε) = Σ_k (-1)^k C(e+k-1,k) (cj c0)^k s^{m1-k} M^{m1-k} ε^k`.
fn convolve_factor(
    series: &[Poly<Integer>],
    m1: usize,
    e: u32,
    cj: &Integer,
    c0: &Integer,
    s: &Integer,
    mform: &LinearForm,
) -> Vec<Poly<Integer>> {
    let mpoly = mform.to_poly();
    let mut mpows = vec![Poly::one()];
    for i in 1..=m1 {
        let next = mpows[i - 1].mul(&mpoly);
        mpows.push(next);
    }
    let cc = cj * c0;
    let u: Vec<Poly<Integer>> = (0..=m1)
        .map(|k| {
            let mut coef = binomial(e as u64 + k as u64 - 1, k as u64)
                * pow_int(&cc, k as u32)
                * pow_int(s, (m1 - k) as u32);
            if k % 2 == 1 {
                coef = -coef;
            }
            mpows[m1 - k].scale(&coef)
        })
        .collect();
    let mut out = vec![Poly::zero(); m1 + 1];
    for (i, a) in series.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (k, b) in u.iter().enumerate().take(m1 + 1 - i) {
            out[i + k].add_assign(&a.mul(b));
        }
    }
    out
}

/// Residue at `var = 0`.
pub fn residue_at_zero(f: &RatExpr, var: usize) -> Result<RatExpr, KernelError> {
    residue(f, var, &LinearForm::var(f.nvars(), var))
}
