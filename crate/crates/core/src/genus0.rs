//! Genus-0 virtual structure constants, two-point functions, mirror maps and
//! the genus-0 invariants extracted from them.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::{
    gw_selection_rule, insertions_of_weight, selection_rule, Genus, InsertionIndex, SpaceSpec,
};
use crate::integrand::{insertion_poly, FactorBag};
use crate::kernel::rational::{Integer, Rational};
use crate::kernel::{
    iterated_residue, GradedSeries, LinearCombination, PoleSpec, Poly, RatExpr, ResidueMethod,
    ResidueStep, MAX_VARS,
};
use crate::session::Session;

/// `w(O_{h^a} O_{h^b} | Π O_{h^p}^{n_p})_{0,d}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VscKey {
    pub d: u32,
    pub a: u32,
    pub b: u32,
    pub ins: InsertionIndex,
}

impl VscKey {
    pub fn new(d: u32, a: u32, b: u32, ins: InsertionIndex) -> Self {
        VscKey { d, a, b, ins }
    }

    pub fn cache_key(&self, space: &SpaceSpec) -> String {
        format!(
            "g0|{}|d={}|a={}|b={}|{}",
            space.id(),
            self.d,
            self.a,
            self.b,
            self.ins.key()
        )
    }
}

/// A rational integrand together with its residue prescription.
pub struct Integrand {
    pub expr: RatExpr,
    pub steps: Vec<ResidueStep>,
}

impl Integrand {
    pub fn evaluate(&self, method: ResidueMethod) -> Result<Rational> {
        Ok(iterated_residue(&self.expr, &self.steps, method)?)
    }
}

/// Midpoint form `2 z_i - z_{i-1} - z_{i+1}` as a combination.
pub(crate) fn midpoint(nvars: usize, prev: usize, mid: usize, next: usize) -> LinearCombination {
    let mut c = LinearCombination::zero(nvars);
    c.0[mid] += Rational::from_integer(2.into());
    c.0[prev] -= Rational::one();
    c.0[next] -= Rational::one();
    c
}

/// The chain integrand in `z_0..z_d`, with every insertion (including classes
/// 0 and 1) represented literally.
pub fn integrand(space: &SpaceSpec, key: &VscKey) -> Result<Integrand> {
    let d = key.d as usize;
    if d == 0 {
        return Err(Error::Degree(0));
    }
    let nvars = d + 1;
    if nvars > MAX_VARS {
        return Err(Error::DegreeTooLarge {
            d: key.d,
            needed: nvars,
            max: MAX_VARS,
        });
    }
    let n_coords = space.n_coords() as i64;
    let m = space.codim() as i64;
    let a_prod = Rational::from_integer(Integer::from(space.weight_product()));
    let k_prod = Rational::from_integer(Integer::from(space.degree_product()));

    let mut bag = FactorBag::new(nvars);
    bag.scale(&crate::kernel::rational::pow_rat(&a_prod, -(nvars as i32)));
    bag.var(0, key.a as i64);
    bag.var(d, key.b as i64);
    for i in 0..nvars {
        bag.var(i, -n_coords);
    }
    for j in 1..=d {
        bag.e_product(space, j - 1, j, 1)?;
        bag.q_product(space, j - 1, j, -1)?;
    }
    for j in 1..d {
        bag.scale(&k_prod.recip());
        bag.var(j, -m);
        bag.form(&[(j, 2), (j - 1, -1), (j + 1, -1)], -1)?;
    }
    let edges: Vec<(usize, usize)> = (1..=d).map(|j| (j - 1, j)).collect();
    bag.poly(&insertion_poly(&key.ins, &edges));

    let mut steps = vec![ResidueStep::at_zero(0)];
    for j in 1..d {
        steps.push(ResidueStep {
            var: j,
            poles: vec![
                PoleSpec::Zero,
                PoleSpec::Image(midpoint(nvars, j - 1, j, j + 1)),
            ],
        });
    }
    steps.push(ResidueStep::at_zero(d));
    Ok(Integrand {
        expr: bag.build()?,
        steps,
    })
}

/// Evaluates the integrand as written, with no shortcuts.
pub fn vsc_direct(space: &SpaceSpec, key: &VscKey, method: ResidueMethod) -> Result<Rational> {
    integrand(space, key)?.evaluate(method)
}

/// Production evaluation: off-shell keys and class-0 insertions give zero
/// without residue work, and class-1 insertions factor out as `d^{n_1}`.
pub fn vsc(space: &SpaceSpec, key: &VscKey, method: ResidueMethod) -> Result<Rational> {
    if key.d == 0 {
        return Err(Error::Degree(0));
    }
    if key.ins.count(0) > 0 || !selection_rule(space, Genus::Zero, key.d, key.a, key.b, &key.ins) {
        return Ok(Rational::zero());
    }
    let n1 = key.ins.count(1);
    if n1 > 0 {
        let mut reduced = key.clone();
        reduced.ins.set(1, 0);
        let v = vsc(space, &reduced, method)?;
        return Ok(v * crate::kernel::rational::pow_rat(
            &Rational::from_integer(key.d.into()),
            n1 as i32,
        ));
    }
    vsc_direct(space, key, method)
}

/// Every on-shell key `(d, a, b, ins)` with `ins` over classes `2..=n`.
pub fn keys_for(space: &SpaceSpec, d: u32, a: u32, b: u32) -> Vec<VscKey> {
    let target = space.fano_index() * d as i64 + space.n_coords() as i64
        - space.codim() as i64
        - 2
        - a as i64
        - b as i64;
    insertions_of_weight(space.dim(), target)
        .into_iter()
        .map(|ins| VscKey::new(d, a, b, ins))
        .collect()
}

/// Mirror map `t^p(x)` and its inverse `x^p(t)` for `p = 0..=n`, truncated at
/// `order`. Variable `p` of every coefficient polynomial stands for `x^p`
/// (resp. `t^p`); variable 1 is logarithmic and never appears explicitly.
#[derive(Clone, Debug)]
pub struct MirrorMaps {
    pub order: usize,
    pub t: Vec<GradedSeries>,
    pub x: Vec<GradedSeries>,
}

impl MirrorMaps {
    /// Inverts `t` by the fixed point `x_{k+1}^p = t^p - Δ^p(x_k(t))`, where
    /// `Δ^p = t^p - x^p` is the instanton part of `t^p`.
    pub fn invert(t: &[GradedSeries], order: usize) -> Result<Vec<GradedSeries>> {
        let identity: Vec<GradedSeries> = (0..t.len()).map(|p| identity_series(p, order)).collect();
        let deltas: Vec<GradedSeries> =
            t.iter().zip(&identity).map(|(tp, id)| tp.sub(id)).collect();
        let mut x = identity.clone();
        for _ in 0..order {
            let mut next = Vec::with_capacity(t.len());
            for (p, delta) in deltas.iter().enumerate() {
                next.push(identity[p].sub(&delta.compose(&x, 1)?));
            }
            x = next;
        }
        Ok(x)
    }
}

/// `x^p` as a series: the logarithmic variable for `p = 1`, a constant otherwise.
pub fn identity_series(p: usize, order: usize) -> GradedSeries {
    if p == 1 {
        GradedSeries::log_var(order)
    } else {
        GradedSeries::constant(order, Poly::var(p))
    }
}

/// The `n + 1` deformation-variable substitution `x^p ↦ x^p`.
pub fn identity_substitution(n: u32, order: usize) -> Vec<GradedSeries> {
    (0..=n as usize)
        .map(|p| identity_series(p, order))
        .collect()
}

impl Session {
    pub fn vsc_genus0(&self, key: &VscKey) -> Result<Rational> {
        let cache_key = key.cache_key(self.space());
        if let Some(v) = self.store().get(&cache_key) {
            return Ok(v);
        }
        let v = vsc(self.space(), key, self.method())?;
        self.store().put(&cache_key, &v);
        Ok(v)
    }

    /// Evaluates many keys, in parallel where enabled; results follow input order.
    pub fn vsc_genus0_batch(&self, keys: &[VscKey]) -> Result<Vec<Rational>> {
        crate::par::map(keys, |k| self.vsc_genus0(k))
            .into_iter()
            .collect()
    }

    /// `w(O_{h^a} O_{h^b})_0(x)` through `q^order`, classical term included.
    pub fn two_point_series(&self, a: u32, b: u32, order: usize) -> Result<GradedSeries> {
        let space = self.space();
        let n = space.dim();
        let keys: Vec<VscKey> = (1..=order as u32)
            .flat_map(|d| keys_for(space, d, a, b))
            .collect();
        let values = self.vsc_genus0_batch(&keys)?;

        let mut s = GradedSeries::zero(order);
        let (ka, _) = space.classical_constants();
        if a + b <= n {
            let p = (n - a - b) as usize;
            if p == 1 {
                s.set_log_coeff(ka);
            } else {
                s.set_coeff(0, Poly::var(p).scale(&ka));
            }
        }
        let mut coeffs: Vec<Poly<Rational>> = s.coeffs().to_vec();
        for (key, v) in keys.iter().zip(values) {
            if v.is_zero() {
                continue;
            }
            let c = v / Rational::from_integer(key.ins.factorial_product());
            coeffs[key.d as usize].add_term(key.ins.monomial(), &c);
        }
        Ok(GradedSeries::from_parts(
            order,
            s.log_coeff().clone(),
            coeffs,
        ))
    }

    /// Mirror maps and their inverse through `q^order`, memoised per session.
    pub fn mirror_maps(&self, order: usize) -> Result<Arc<MirrorMaps>> {
        if let Some(m) = self.cached_mirror(order) {
            return Ok(m);
        }
        let space = self.space();
        let n = space.dim();
        let (ka, _) = space.classical_constants();
        let ak = ka.recip();
        let mut t = Vec::with_capacity(n as usize + 1);
        for p in 0..=n {
            t.push(self.two_point_series(n - p, 0, order)?.scale(&ak));
        }
        let x = MirrorMaps::invert(&t, order)?;
        let maps = Arc::new(MirrorMaps { order, t, x });
        self.store_mirror(maps.clone());
        Ok(maps)
    }

    /// `⟨O_{h^a} O_{h^b}⟩_0(t)`: the two-point function after the mirror map.
    pub fn two_point_gw_series(&self, a: u32, b: u32, order: usize) -> Result<Arc<GradedSeries>> {
        self.cached_series(format!("gw0|{a}|{b}|{order}"), || {
            let w = self.two_point_series(a, b, order)?;
            let maps = self.mirror_maps(order)?;
            Ok(w.compose(&maps.x, 1)?)
        })
    }

    /// `⟨O_{h^a} O_{h^b} Π O_{h^p}^{n_p}⟩_{0,d}`.
    pub fn genus0_gw(&self, a: u32, b: u32, ins: &InsertionIndex, d: u32) -> Result<Rational> {
        if d == 0 {
            return Err(Error::Degree(0));
        }
        let series = self.two_point_gw_series(a, b, d as usize)?;
        let c = series.term(d as usize, ins.monomial());
        Ok(c * Rational::from_integer(ins.factorial_product()))
    }

    /// `⟨Π O_{h^p}^{n_p}⟩_{0,d}`. Two insertions of the highest classes play
    /// the distinguished roles; with fewer than two, divisor insertions `O_h`
    /// are added and divided out (each contributes a factor `d`).
    pub fn genus0_gw_insertions(&self, ins: &InsertionIndex, d: u32) -> Result<Rational> {
        if d == 0 {
            return Err(Error::Degree(0));
        }
        if !gw_selection_rule(self.space(), d, ins) {
            return Ok(Rational::zero());
        }
        let mut rest = ins.clone();
        let mut picked = Vec::new();
        while picked.len() < 2 {
            let top = rest.max_class();
            if rest.count(top) == 0 {
                break;
            }
            rest.set(top, rest.count(top) - 1);
            picked.push(top);
        }
        let divisor = Rational::from_integer(d.into());
        match picked.as_slice() {
            [a, b] => self.genus0_gw(*a, *b, &rest, d),
            [a] => Ok(self.genus0_gw(*a, 1, &rest, d)? / divisor),
            _ => Ok(self.genus0_gw(1, 1, &rest, d)? / (&divisor * &divisor)),
        }
    }
}
