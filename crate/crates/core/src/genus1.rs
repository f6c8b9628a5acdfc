//! Elliptic virtual structure constants and the genus-1 potentials.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::genus0::{midpoint, Integrand};
use crate::geometry::{insertions_of_weight, selection_rule, Genus, InsertionIndex, SpaceSpec};
use crate::graphs::{enumerate_graphs, sym, GraphSpec};
use crate::integrand::{insertion_poly_weighted, FactorBag};
use crate::kernel::rational::{pow_rat, Integer, Rational};
use crate::kernel::{
    GradedSeries, LinearCombination, PoleSpec, Poly, ResidueMethod, ResidueStep, MAX_VARS,
};
use crate::session::{ClusterPolicy, Session};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvscKey {
    pub d: u32,
    pub ins: InsertionIndex,
}

impl EvscKey {
    pub fn new(d: u32, ins: InsertionIndex) -> Self {
        EvscKey { d, ins }
    }

    pub fn cache_key(&self, space: &SpaceSpec) -> String {
        format!("g1|{}|d={}|{}", space.id(), self.d, self.ins.key())
    }
}

struct Consts {
    n: i64,
    m: i64,
    a: Rational,
    k: Rational,
}

impl Consts {
    fn of(space: &SpaceSpec) -> Self {
        Consts {
            n: space.n_coords() as i64,
            m: space.codim() as i64,
            a: Rational::from_integer(Integer::from(space.weight_product())),
            k: Rational::from_integer(Integer::from(space.degree_product())),
        }
    }
}

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Weighted insertion edges and residue steps of the legs.
type Legs = (Vec<(usize, usize, i64)>, Vec<ResidueStep>);

/// Chains hanging off `center`; leg `i` occupies consecutive variables from
/// `first` on. Returns the leg edges and the residue steps for the legs.
fn add_legs(
    bag: &mut FactorBag,
    space: &SpaceSpec,
    c: &Consts,
    nvars: usize,
    center: usize,
    first: usize,
    sigma: &[u32],
) -> Result<Legs> {
    let mut edges = Vec::new();
    let mut steps = Vec::new();
    let mut next = first;
    for &len in sigma {
        let vars: Vec<usize> = (next..next + len as usize).collect();
        next += len as usize;
        for &v in &vars {
            bag.var(v, -c.n);
        }
        bag.e_product(space, center, vars[0], 1)?;
        bag.q_product(space, center, vars[0], -1)?;
        bag.form(&[(vars[0], 1), (center, -1)], -1)?;
        edges.push((center, vars[0], 1));
        for j in 0..vars.len() - 1 {
            let (cur, nxt) = (vars[j], vars[j + 1]);
            let prev = if j == 0 { center } else { vars[j - 1] };
            bag.e_product(space, cur, nxt, 1)?;
            bag.q_product(space, cur, nxt, -1)?;
            bag.form(&[(cur, 2), (prev, -1), (nxt, -1)], -1)?;
            bag.scale(&c.k.recip());
            bag.var(cur, -c.m);
            edges.push((cur, nxt, 1));
            steps.push(ResidueStep {
                var: cur,
                poles: vec![
                    PoleSpec::Zero,
                    PoleSpec::Image(midpoint(nvars, prev, cur, nxt)),
                ],
            });
        }
        steps.push(ResidueStep::at_zero(
            *vars.last().expect("legs are non-empty"),
        ));
    }
    Ok((edges, steps))
}

fn check_vars(d: u32, nvars: usize) -> Result<()> {
    if nvars > MAX_VARS {
        return Err(Error::DegreeTooLarge {
            d,
            needed: nvars,
            max: MAX_VARS,
        });
    }
    Ok(())
}

/// The integrand of `graph` with insertions `ins`, and its residue plan.
pub fn graph_integrand(
    space: &SpaceSpec,
    graph: &GraphSpec,
    ins: &InsertionIndex,
) -> Result<Integrand> {
    graph.validate()?;
    let c = Consts::of(space);
    let d = graph.degree();
    let chern_top = space.chern_coeffs()[space.dim() as usize].clone();
    match graph {
        GraphSpec::Star(sigma) => {
            let nvars = d as usize + 1;
            check_vars(d, nvars)?;
            let l = sigma.len() as i64;
            let mut bag = FactorBag::new(nvars);
            bag.scale(&(sym(sigma) / (r(24) * pow_rat(&c.a, d as i32 + 1))));
            bag.scale(&chern_top);
            bag.scale(&pow_rat(&c.k, -(l as i32 - 1)));
            // c_T(z0) = c_top z0^{dim}
            bag.var(0, -c.n + space.dim() as i64 - c.m * (l - 1));
            let (edges, leg_steps) = add_legs(&mut bag, space, &c, nvars, 0, 1, sigma)?;
            bag.poly(&insertion_poly_weighted(ins, &edges));
            let mut steps = vec![ResidueStep::at_zero(0)];
            steps.extend(leg_steps);
            Ok(Integrand {
                expr: bag.build()?,
                steps,
            })
        }
        GraphSpec::Loop(_) => {
            let n = d as usize;
            check_vars(d, n)?;
            let mut bag = FactorBag::new(n);
            bag.scale(&(r(2 * d as i64) * pow_rat(&c.a, d as i32)).recip());
            let mut edges = Vec::new();
            let mut steps = Vec::new();
            for i in 0..n {
                let (prev, next) = ((i + n - 1) % n, (i + 1) % n);
                bag.e_product(space, i, next, 1)?;
                bag.q_product(space, i, next, -1)?;
                bag.form(&[(i, 2), (prev, -1), (next, -1)], -1)?;
                bag.scale(&c.k.recip());
                bag.var(i, -c.m - c.n);
                edges.push((i, next, 1));
                steps.push(ResidueStep {
                    var: i,
                    poles: vec![PoleSpec::Zero, PoleSpec::Image(midpoint(n, prev, i, next))],
                });
            }
            bag.poly(&insertion_poly_weighted(ins, &edges));
            Ok(Integrand {
                expr: bag.build()?,
                steps,
            })
        }
        GraphSpec::ClusterStar { f, sigma } => {
            // w = 0, z0 = 1, legs from 2
            let f = *f as i64;
            let nvars = 2 + (d as usize - f as usize);
            check_vars(d, nvars)?;
            let l = sigma.len() as i64;
            let mut bag = FactorBag::new(nvars);
            bag.scale(&(sym(sigma) / (r(24) * pow_rat(&c.a, d as i32))));
            bag.var(1, -c.n * (f - 1));
            // -(N-m)/N w^{-N} - (N+m)/N z0^{-N}
            let mut bracket = Poly::zero();
            bracket.add_term(
                crate::kernel::Monomial::var_pow(1, c.n as u32),
                &Integer::from(c.n - c.m),
            );
            bracket.add_term(
                crate::kernel::Monomial::var_pow(0, c.n as u32),
                &Integer::from(c.n + c.m),
            );
            bag.poly(&bracket);
            bag.scale(&Rational::new((-1).into(), c.n.into()));
            bag.var(0, -c.n);
            bag.var(1, -c.n);
            bag.form(&[(0, 1), (1, -1)], -2)?;
            bag.q_product(space, 0, 1, -1)?;
            bag.q_product(space, 1, 1, -(f - 1))?;
            bag.scale(&pow_rat(&c.k, -(l as i32 - 1) - 1 - f as i32));
            bag.var(1, -c.m * (l - 1 + f));
            bag.var(0, -c.m);
            bag.e_product(space, 0, 1, 1)?;
            bag.e_product(space, 1, 1, f - 1)?;
            let (mut edges, leg_steps) = add_legs(&mut bag, space, &c, nvars, 1, 2, sigma)?;
            edges.push((0, 1, 1));
            edges.push((1, 1, f - 1));
            bag.poly(&insertion_poly_weighted(ins, &edges));
            let mut w_minus_z0 = LinearCombination::zero(nvars);
            w_minus_z0.0[0] = r(1);
            w_minus_z0.0[1] = r(-1);
            let mut steps = vec![
                ResidueStep {
                    var: 0,
                    poles: vec![PoleSpec::Image(w_minus_z0)],
                },
                ResidueStep::at_zero(1),
            ];
            steps.extend(leg_steps);
            Ok(Integrand {
                expr: bag.build()?,
                steps,
            })
        }
        GraphSpec::Point(_) => {
            let dd = d as i64;
            let inv_a: Rational = space
                .weights()
                .iter()
                .map(|&a| Rational::new(1.into(), a.into()))
                .sum();
            let inv_k: Rational = space
                .degrees()
                .iter()
                .map(|&k| Rational::new(1.into(), k.into()))
                .sum();
            let rd = &c.a
                * (Rational::new((c.n - c.m).into(), (2 * dd).into())
                    - (inv_a - inv_k) / r(dd * dd));
            let mut bag = FactorBag::new(1);
            bag.scale(&(rd / (r(24) * pow_rat(&c.a, d as i32 + 1))));
            bag.var(0, -(c.n * dd + 1) - c.m * dd);
            bag.q_product(space, 0, 0, -dd)?;
            bag.e_product(space, 0, 0, dd)?;
            bag.scale(&pow_rat(&c.k, -(d as i32)));
            bag.poly(&insertion_poly_weighted(ins, &[(0, 0, dd)]));
            Ok(Integrand {
                expr: bag.build()?,
                steps: vec![ResidueStep::at_zero(0)],
            })
        }
    }
}

/// `Res(f_Γ)` for one graph.
pub fn res_graph(
    space: &SpaceSpec,
    graph: &GraphSpec,
    ins: &InsertionIndex,
    method: ResidueMethod,
) -> Result<Rational> {
    graph_integrand(space, graph, ins)?.evaluate(method)
}

fn graphs_for(space: &SpaceSpec, d: u32, cluster: ClusterPolicy) -> Vec<GraphSpec> {
    let skip = cluster == ClusterPolicy::SkipWhenCalabiYau && space.is_calabi_yau();
    enumerate_graphs(d)
        .into_iter()
        .filter(|g| !(skip && g.is_cluster_star()))
        .collect()
}

/// Sum over every graph of degree `key.d`, evaluated literally.
pub fn evsc_direct(space: &SpaceSpec, key: &EvscKey, method: ResidueMethod) -> Result<Rational> {
    if key.d == 0 {
        return Err(Error::Degree(0));
    }
    let graphs = enumerate_graphs(key.d);
    sum_graphs(space, &graphs, &key.ins, method)
}

fn sum_graphs(
    space: &SpaceSpec,
    graphs: &[GraphSpec],
    ins: &InsertionIndex,
    method: ResidueMethod,
) -> Result<Rational> {
    let parts = crate::par::map(graphs, |g| res_graph(space, g, ins, method));
    let mut total = Rational::zero();
    for p in parts {
        total += p?;
    }
    Ok(total)
}

/// Production evaluation: off-shell keys and class-0 insertions vanish,
/// class-1 insertions factor out as `d^{n_1}`, and cluster stars are skipped
/// on Calabi-Yau targets unless the policy says otherwise.
pub fn evsc(
    space: &SpaceSpec,
    key: &EvscKey,
    method: ResidueMethod,
    cluster: ClusterPolicy,
) -> Result<Rational> {
    if key.d == 0 {
        return Err(Error::Degree(0));
    }
    if key.ins.count(0) > 0 || !selection_rule(space, Genus::One, key.d, 0, 0, &key.ins) {
        return Ok(Rational::zero());
    }
    let n1 = key.ins.count(1);
    if n1 > 0 {
        let mut reduced = key.clone();
        reduced.ins.set(1, 0);
        let v = evsc(space, &reduced, method, cluster)?;
        return Ok(v * pow_rat(&r(key.d as i64), n1 as i32));
    }
    sum_graphs(space, &graphs_for(space, key.d, cluster), &key.ins, method)
}

/// On-shell insertions of degree `d` over classes `2..=n`.
pub fn keys_for(space: &SpaceSpec, d: u32) -> Vec<EvscKey> {
    insertions_of_weight(space.dim(), space.fano_index() * d as i64)
        .into_iter()
        .map(|ins| EvscKey::new(d, ins))
        .collect()
}

impl Session {
    pub fn evsc(&self, key: &EvscKey) -> Result<Rational> {
        let cache_key = key.cache_key(self.space());
        if let Some(v) = self.store().get(&cache_key) {
            return Ok(v);
        }
        let v = evsc(self.space(), key, self.method(), self.cluster_policy())?;
        self.store().put(&cache_key, &v);
        Ok(v)
    }

    /// The B-model potential in the `x` variables through `q^order`.
    pub fn f1b_series(&self, order: usize) -> Result<GradedSeries> {
        let space = self.space();
        let keys: Vec<EvscKey> = (1..=order as u32)
            .flat_map(|d| keys_for(space, d))
            .collect();
        let values: Vec<Result<Rational>> = crate::par::map(&keys, |k| self.evsc(k));
        let (_, log) = space.classical_constants();
        let mut coeffs = vec![Poly::zero(); order + 1];
        for (key, v) in keys.iter().zip(values) {
            let v = v?;
            if v.is_zero() {
                continue;
            }
            let c = v / Rational::from_integer(key.ins.factorial_product());
            coeffs[key.d as usize].add_term(key.ins.monomial(), &c);
        }
        Ok(GradedSeries::from_parts(order, log, coeffs))
    }

    /// The genus-1 potential in the flat variables `t`.
    pub fn f1a_series(&self, order: usize) -> Result<Arc<GradedSeries>> {
        self.cached_series(format!("f1a|{order}"), || {
            let b = self.f1b_series(order)?;
            let maps = self.mirror_maps(order)?;
            Ok(b.compose(&maps.x, 1)?)
        })
    }

    /// `⟨Π O_{h^p}^{n_p}⟩_{1,d}`.
    pub fn genus1_gw(&self, ins: &InsertionIndex, d: u32) -> Result<Rational> {
        if d == 0 {
            return Err(Error::Degree(0));
        }
        if !selection_rule(self.space(), Genus::One, d, 0, 0, ins) {
            return Ok(Rational::zero());
        }
        let n1 = ins.count(1);
        let mut rest = ins.clone();
        rest.set(1, 0);
        if rest.count(0) > 0 {
            return Ok(Rational::zero());
        }
        let series = self.f1a_series(d as usize)?;
        let c = series.term(d as usize, rest.monomial())
            * Rational::from_integer(rest.factorial_product());
        Ok(c * pow_rat(&r(d as i64), n1 as i32))
    }
}
