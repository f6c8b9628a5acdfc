//! Rational and elliptic curve counts on Calabi-Yau threefolds.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::InsertionIndex;
use crate::kernel::rational::{is_integral, Rational};
use crate::session::Session;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveCounts {
    /// `n[d-1]` is the degree-`d` rational count.
    pub n: Vec<Rational>,
    /// `m[d-1]` is the degree-`d` elliptic count.
    pub m: Vec<Rational>,
}

impl CurveCounts {
    pub fn max_degree(&self) -> usize {
        self.n.len()
    }
}

fn r(n: usize) -> Rational {
    Rational::from_integer(n.into())
}

fn warn_non_integral(kind: &str, values: &[Rational]) {
    for (i, v) in values.iter().enumerate() {
        if !is_integral(v) {
            log::warn!("{kind}_{} = {v} is not an integer", i + 1);
        }
    }
}

/// Solves `e · N_e = Σ_{d|e} n_d d³` for `n_1..n_D`, where `N_e` is the
/// degree-`e` two-point invariant `⟨O_h O_h⟩_{0,e}`.
pub fn solve_rational(two_point: &[Rational]) -> Vec<Rational> {
    let mut n: Vec<Rational> = Vec::with_capacity(two_point.len());
    for e in 1..=two_point.len() {
        let mut acc = &two_point[e - 1] * r(e);
        for d in (1..e).filter(|d| e % d == 0) {
            acc -= &n[d - 1] * r(d * d * d);
        }
        n.push(acc / r(e * e * e));
    }
    n
}

/// `Σ_{p,j : p d j = e} 1/j`, the `Q^e` coefficient of `-log Π_p (1 - Q^{pd})`.
fn multi_log_coeff(d: usize, e: usize) -> Rational {
    if !e.is_multiple_of(d) {
        return Rational::zero();
    }
    let k = e / d;
    (1..=k)
        .filter(|&j| k.is_multiple_of(j))
        .map(|j| Rational::new(1.into(), j.into()))
        .sum()
}

/// Solves `[Q^e] F₁ᴬ = Σ_d m_d Σ_{pdj=e} 1/j + (1/12) Σ_{d|e} n_d d/e` for `m_1..m_D`.
pub fn solve_elliptic(f1a: &[Rational], n: &[Rational]) -> Vec<Rational> {
    let twelfth = Rational::new(1.into(), 12.into());
    let mut m: Vec<Rational> = Vec::with_capacity(f1a.len());
    for e in 1..=f1a.len() {
        let mut acc = f1a[e - 1].clone();
        for d in (1..=e).filter(|d| e % d == 0) {
            acc -= &twelfth * &n[d - 1] * Rational::new(d.into(), e.into());
        }
        for d in 1..e {
            acc -= &m[d - 1] * multi_log_coeff(d, e);
        }
        m.push(acc);
    }
    m
}

impl Session {
    fn require_cy3(&self) -> Result<()> {
        let s = self.space();
        if !s.is_calabi_yau() || s.dim() != 3 {
            return Err(Error::NotCalabiYauThreefold(s.to_string()));
        }
        Ok(())
    }

    /// `n_1..n_D`.
    pub fn rational_counts(&self, max_d: u32) -> Result<Vec<Rational>> {
        self.require_cy3()?;
        let series = self.two_point_gw_series(1, 1, max_d as usize)?;
        let coeffs: Vec<Rational> = (1..=max_d as usize)
            .map(|e| series.term(e, InsertionIndex::empty().monomial()))
            .collect();
        let n = solve_rational(&coeffs);
        warn_non_integral("n", &n);
        Ok(n)
    }

    /// `m_1..m_D`, given `n_1..n_D`.
    pub fn elliptic_counts(&self, max_d: u32, n: &[Rational]) -> Result<Vec<Rational>> {
        self.require_cy3()?;
        if n.len() < max_d as usize {
            return Err(Error::Inconsistent(format!(
                "need {max_d} rational counts, got {}",
                n.len()
            )));
        }
        let f1a = self.f1a_series(max_d as usize)?;
        let (_, classical) = self.space().classical_constants();
        if f1a.log_coeff() != &classical {
            return Err(Error::Inconsistent(format!(
                "linear coefficient {} differs from the classical constant {classical}",
                f1a.log_coeff()
            )));
        }
        let coeffs: Vec<Rational> = (1..=max_d as usize)
            .map(|e| f1a.term(e, InsertionIndex::empty().monomial()))
            .collect();
        let m = solve_elliptic(&coeffs, n);
        warn_non_integral("m", &m);
        Ok(m)
    }

    pub fn curve_counts(&self, max_d: u32) -> Result<CurveCounts> {
        let n = self.rational_counts(max_d)?;
        let m = self.elliptic_counts(max_d, &n)?;
        Ok(CurveCounts { n, m })
    }
}

/// Rebuilds `⟨O_h O_h⟩_{0,e}` for `e = 1..=D` from `n`.
pub fn two_point_from_counts(n: &[Rational]) -> Vec<Rational> {
    (1..=n.len())
        .map(|e| {
            let mut acc = Rational::zero();
            for d in (1..=e).filter(|d| e % d == 0) {
                acc += &n[d - 1] * r(d * d * d);
            }
            acc / r(e)
        })
        .collect()
}

/// Rebuilds the `Q^e` coefficients of `F₁ᴬ` from `n` and `m`.
pub fn f1a_from_counts(n: &[Rational], m: &[Rational]) -> Vec<Rational> {
    let twelfth = Rational::new(1.into(), 12.into());
    (1..=n.len())
        .map(|e| {
            let mut acc = Rational::zero();
            for d in 1..=e {
                acc += &m[d - 1] * multi_log_coeff(d, e);
                if e % d == 0 {
                    acc += &twelfth * &n[d - 1] * Rational::new(d.into(), e.into());
                }
            }
            acc
        })
        .collect()
}
