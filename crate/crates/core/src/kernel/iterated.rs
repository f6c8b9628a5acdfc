//! Iterated residues with per-branch tracking of pole images.
//!
//! Each step eliminates one variable. A pole given as
//! [`PoleSpec::Image`] is a linear form in the original variables; on every
//! branch it is pushed through the substitutions made so far, so the pole
//! moves with the variables it depends on.

use num_traits::Zero;

use super::laurent::laurent_residue;
use super::linear::{root_combination, LinearCombination, LinearForm};
use super::ratexpr::RatExpr;
use super::rational::Rational;
use super::residue::residue;
use super::KernelError;
use crate::par;

#[derive(Clone, Debug)]
pub enum PoleSpec {
    /// The variable itself vanishes.
    Zero,
    /// The image of an original-variable form vanishes.
    Image(LinearCombination),
}

#[derive(Clone, Debug)]
pub struct ResidueStep {
    pub var: usize,
    pub poles: Vec<PoleSpec>,
}

impl ResidueStep {
    pub fn at_zero(var: usize) -> Self {
        ResidueStep {
            var,
            poles: vec![PoleSpec::Zero],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ResidueMethod {
    #[default]
    Derivative,
    Laurent,
}

#[derive(Clone)]
struct Branch {
    expr: RatExpr,
    // images[u] = value of eliminated original variable u, in live variables
    images: Vec<Option<LinearCombination>>,
}

/// Takes the residues in `steps` order and sums all branches.
///
/// Every variable must be eliminated by the end; a leftover variable is an error.
pub fn iterated_residue(
    f: &RatExpr,
    steps: &[ResidueStep],
    method: ResidueMethod,
) -> Result<Rational, KernelError> {
    let nvars = f.nvars();
    let mut branches = vec![Branch {
        expr: f.clone(),
        images: vec![None; nvars],
    }];
    for step in steps {
        let expanded: Vec<Result<Vec<Branch>, KernelError>> =
            par::map(&branches, |b| expand_branch(b, step, method));
        let mut next = Vec::new();
        for r in expanded {
            next.extend(r?);
        }
        branches = next;
        if branches.is_empty() {
            return Ok(Rational::zero());
        }
    }
    let mut total = Rational::zero();
    for b in &branches {
        total += b
            .expr
            .constant_value()
            .ok_or_else(|| KernelError::NotFullyReduced {
                expr: format!("{:?}", b.expr),
            })?;
    }
    Ok(total)
}

fn expand_branch(
    branch: &Branch,
    step: &ResidueStep,
    method: ResidueMethod,
) -> Result<Vec<Branch>, KernelError> {
    let v = step.var;
    let nvars = branch.expr.nvars();
    let mut seen: Vec<LinearForm> = Vec::new();
    for spec in &step.poles {
        let form = match spec {
            PoleSpec::Zero => LinearForm::var(nvars, v),
            PoleSpec::Image(lc) => {
                let mut image = lc.clone();
                for (u, img) in branch.images.iter().enumerate() {
                    if let Some(img) = img {
                        image.substitute(u, img);
                    }
                }
                if image.is_zero() || image.coeff(v).is_zero() {
                    continue;
                }
                image.canonical()?.1
            }
        };
        if !seen.contains(&form) {
            seen.push(form);
        }
    }
    let mut out = Vec::new();
    for form in seen {
        let res = match method {
            ResidueMethod::Derivative => residue(&branch.expr, v, &form)?,
            ResidueMethod::Laurent => {
                let order = branch.expr.multiplicity(&form).max(1) as usize;
                laurent_residue(&branch.expr, v, &form, order)?
            }
        };
        if res.is_zero() {
            continue;
        }
        let root = root_combination(&form, v)?;
        let mut images = branch.images.clone();
        for img in images.iter_mut().flatten() {
            img.substitute(v, &root);
        }
        images[v] = Some(root);
        out.push(Branch { expr: res, images });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::poly::Poly;
    use crate::kernel::rational::{int, rat, rat_int, Integer};

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&c| int(c)).collect()
    }

    #[test]
    fn two_step_residue_follows_moving_pole() {
        let f = RatExpr::new(
            2,
            rat_int(1),
            Poly::var(0).mul(&Poly::var(1)).pow(1),
            vec![(ints(&[1, 0]), 2), (ints(&[0, 1]), 3), (ints(&[2, -1]), 1)],
        )
        .unwrap();
        let steps = vec![
            ResidueStep {
                var: 0,
                poles: vec![
                    PoleSpec::Zero,
                    PoleSpec::Image(LinearCombination::from_i64(&[2, -1])),
                ],
            },
            ResidueStep::at_zero(1),
        ];
        let a = iterated_residue(&f, &steps, ResidueMethod::Derivative).unwrap();
        let b = iterated_residue(&f, &steps, ResidueMethod::Laurent).unwrap();
        assert_eq!(a, b);
        // x y/(x^2 y^3 (2x - y)) = 1/(x y^2 (2x - y)); the x-residues sum to zero
        // (total residue in x vanishes at infinity), so the result is 0
        assert_eq!(a, rat(0, 1));
    }

    #[test]
    fn single_pole_choice() {
        // Res_y Res_{x=0} y/(x^2 (2x - y)) = -2; adding the pole x = y/2 gives 0
        let f = RatExpr::new(
            2,
            rat_int(1),
            Poly::var(1),
            vec![(ints(&[1, 0]), 2), (ints(&[2, -1]), 1)],
        )
        .unwrap();
        let zero_only = vec![ResidueStep::at_zero(0), ResidueStep::at_zero(1)];
        assert_eq!(
            iterated_residue(&f, &zero_only, ResidueMethod::Derivative).unwrap(),
            rat_int(-2)
        );
        let both = vec![
            ResidueStep {
                var: 0,
                poles: vec![
                    PoleSpec::Zero,
                    PoleSpec::Image(LinearCombination::from_i64(&[2, -1])),
                ],
            },
            ResidueStep::at_zero(1),
        ];
        assert_eq!(
            iterated_residue(&f, &both, ResidueMethod::Derivative).unwrap(),
            rat_int(0)
        );
    }

    #[test]
    fn leftover_variable_is_reported() {
        let f = RatExpr::new(2, rat_int(1), Poly::var(1), vec![(ints(&[1, 0]), 1)]).unwrap();
        let steps = vec![ResidueStep::at_zero(0)];
        assert!(matches!(
            iterated_residue(&f, &steps, ResidueMethod::Derivative),
            Err(KernelError::NotFullyReduced { .. })
        ));
    }
}
