//! Checks shared by the property tests and the acceptance harness.
#![allow(dead_code)]

use std::path::PathBuf;

use evsc_core::fixtures::{load_dir, verify_table, Report};
use evsc_core::genus0::{self, identity_series, VscKey};
use evsc_core::genus1::{self, graph_integrand, res_graph, EvscKey};
use evsc_core::geometry::{selection_rule, Genus};
use evsc_core::graphs::{enumerate_graphs, GraphSpec};
use evsc_core::kernel::rational::rat_int;
use evsc_core::kernel::{laurent_residue, residue, LinearForm, Poly, RatExpr, ResidueMethod};
use evsc_core::{InsertionIndex, Integer, Rational, Session, SpaceSpec};
use proptest::prelude::*;

pub type Check = Result<(), String>;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn tables() -> Vec<(PathBuf, Report)> {
    load_dir(&fixture_dir()).expect("fixtures load")
}

/// Distinct target spaces appearing in the stored tables.
pub fn fixture_spaces() -> Vec<SpaceSpec> {
    let mut ids: Vec<String> = tables().into_iter().map(|(_, t)| t.space).collect();
    ids.sort();
    ids.dedup();
    ids.iter()
        .map(|s| SpaceSpec::parse(s).expect("fixture space parses"))
        .collect()
}

pub fn calabi_yau_spaces() -> Vec<SpaceSpec> {
    fixture_spaces()
        .into_iter()
        .filter(|s| s.is_calabi_yau())
        .collect()
}

/// Checks every stored table for `space` up to degree `max_d`, slow rows included.
pub fn table_matches(space: &str, max_d: u32) -> Check {
    let session = Session::new(SpaceSpec::parse(space).map_err(|e| e.to_string())?);
    let mut cells = 0;
    for (path, table) in tables() {
        if table.space != space {
            continue;
        }
        let checks = verify_table(&session, &table, max_d, true).map_err(|e| e.to_string())?;
        for c in &checks {
            if !c.matches() {
                return Err(format!(
                    "{}: d={} ins={} kind={} expected {} computed {}",
                    path.display(),
                    c.row.d,
                    c.row.insertions.key(),
                    c.row.kind,
                    c.expected,
                    c.computed
                ));
            }
        }
        cells += checks.len();
    }
    if cells == 0 {
        return Err(format!("no stored cells for {space}"));
    }
    Ok(())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---- residue oracle ----

/// A random rational function: numerator terms, denominator forms, the
/// variable to take the residue in and the index of the pole factor.
#[derive(Clone, Debug)]
pub struct RandomFunction {
    pub nvars: usize,
    pub num: Vec<(Vec<u32>, i64)>,
    pub den: Vec<(Vec<i64>, u32)>,
    pub var: usize,
    pub pole: usize,
}

pub fn random_function() -> impl Strategy<Value = RandomFunction> {
    (1usize..=3).prop_flat_map(|nvars| {
        let term = (prop::collection::vec(0u32..=3, nvars), -5i64..=5);
        let form = (prop::collection::vec(-3i64..=3, nvars), 1u32..=3)
            .prop_filter("non-zero form", |(c, _)| c.iter().any(|&x| x != 0));
        (
            Just(nvars),
            prop::collection::vec(term, 1..=4),
            prop::collection::vec(form, 1..=4),
            0..nvars,
            0usize..4,
        )
            .prop_map(|(nvars, num, den, var, pole)| RandomFunction {
                nvars,
                num,
                den,
                var,
                pole,
            })
    })
}

pub fn residue_oracle_agrees(rf: &RandomFunction) -> Check {
    let mut num: Poly<Integer> = Poly::zero();
    for (exps, c) in &rf.num {
        num.add_term(
            evsc_core::kernel::Monomial::from_exponents(exps),
            &Integer::from(*c),
        );
    }
    // make sure some factor involves the residue variable
    let mut den = rf.den.clone();
    if !den.iter().any(|(c, _)| c[rf.var] != 0) {
        let mut c = vec![0; rf.nvars];
        c[rf.var] = 1;
        den.push((c, 2));
    }
    let with_var: Vec<&(Vec<i64>, u32)> = den.iter().filter(|(c, _)| c[rf.var] != 0).collect();
    let pole_coeffs = &with_var[rf.pole % with_var.len()].0;
    let f = RatExpr::new(
        rf.nvars,
        rat_int(1),
        num,
        den.iter()
            .map(|(c, e)| (c.iter().map(|&x| Integer::from(x)).collect(), *e)),
    )
    .map_err(|e| e.to_string())?;
    let (_, pole) = LinearForm::from_i64(pole_coeffs).map_err(|e| e.to_string())?;
    let order = f.multiplicity(&pole).max(1) as usize;
    let a = residue(&f, rf.var, &pole).map_err(|e| e.to_string())?;
    let b = laurent_residue(&f, rf.var, &pole, order).map_err(|e| e.to_string())?;
    ensure(a.equivalent(&b), || {
        format!("{f:?}: derivative {a:?} vs Laurent {b:?}")
    })
}

/// Every genus-0 and genus-1 integrand up to degree `max_d` on `space`,
/// evaluated by both residue methods.
pub fn pipeline_oracle_agrees(space: &SpaceSpec, max_d: u32) -> Check {
    let n = space.dim();
    for d in 1..=max_d {
        for a in 0..=n {
            for b in 0..=n {
                for key in genus0::keys_for(space, d, a, b) {
                    let it = genus0::integrand(space, &key).map_err(|e| e.to_string())?;
                    let x = it
                        .evaluate(ResidueMethod::Derivative)
                        .map_err(|e| e.to_string())?;
                    let y = it
                        .evaluate(ResidueMethod::Laurent)
                        .map_err(|e| e.to_string())?;
                    ensure(x == y, || format!("{space} genus 0 {key:?}: {x} vs {y}"))?;
                }
            }
        }
        for key in genus1::keys_for(space, d) {
            for g in enumerate_graphs(d) {
                let x = res_graph(space, &g, &key.ins, ResidueMethod::Derivative)
                    .map_err(|e| e.to_string())?;
                let y = res_graph(space, &g, &key.ins, ResidueMethod::Laurent)
                    .map_err(|e| e.to_string())?;
                ensure(x == y, || {
                    format!("{space} graph {g} {}: {x} vs {y}", key.ins.key())
                })?;
            }
        }
    }
    Ok(())
}

// ---- selection rules ----

#[derive(Clone, Debug)]
pub struct RawKey {
    pub d: u32,
    pub a: u32,
    pub b: u32,
    pub counts: Vec<u32>,
}

/// Keys with classes `0..=n`, small counts, arbitrary distinguished classes.
pub fn raw_key(n: u32) -> impl Strategy<Value = RawKey> {
    (
        1u32..=2,
        0..=n,
        0..=n,
        prop::collection::vec(0u32..=2, n as usize + 1),
    )
        .prop_map(|(d, a, b, counts)| RawKey { d, a, b, counts })
}

fn index_of(counts: &[u32]) -> InsertionIndex {
    let mut ins = InsertionIndex::empty();
    for (p, &c) in counts.iter().enumerate() {
        ins.add(p as u32, c);
    }
    ins
}

/// Nudges the key off-shell for the given genus by one extra class-2 insertion
/// when needed, then checks the literal residue sum vanishes.
pub fn off_shell_vanishes(space: &SpaceSpec, key: &RawKey) -> Check {
    let mut ins = index_of(&key.counts);
    if selection_rule(space, Genus::Zero, key.d, key.a, key.b, &ins) {
        ins.add(2, 1);
    }
    let k0 = VscKey::new(key.d, key.a, key.b, ins);
    let v = genus0::vsc_direct(space, &k0, ResidueMethod::Derivative).map_err(|e| e.to_string())?;
    ensure(v == rat_int(0), || {
        format!("{space} genus 0 off-shell {k0:?} gives {v}")
    })?;

    let mut ins = index_of(&key.counts);
    if selection_rule(space, Genus::One, key.d, 0, 0, &ins) {
        ins.add(2, 1);
    }
    let k1 = EvscKey::new(key.d, ins);
    let v =
        genus1::evsc_direct(space, &k1, ResidueMethod::Derivative).map_err(|e| e.to_string())?;
    ensure(v == rat_int(0), || {
        format!("{space} genus 1 off-shell {k1:?} gives {v}")
    })
}

// ---- factorization ----

fn with(ins: &InsertionIndex, extra: &[(u32, u32)]) -> InsertionIndex {
    let mut out = ins.clone();
    for &(p, c) in extra {
        out.add(p, c);
    }
    out
}

fn pow_d(d: u32, e: u32) -> Rational {
    rat_int((d as i64).pow(e))
}

/// Class-1 insertions multiply by `d` each; a class-0 insertion kills the value.
pub fn factorization_holds(space: &SpaceSpec, max_d: u32) -> Check {
    let m = ResidueMethod::Derivative;
    let n = space.dim();
    for d in 1..=max_d {
        for a in 0..=n {
            for b in 0..=n {
                for key in genus0::keys_for(space, d, a, b) {
                    let base = genus0::vsc_direct(space, &key, m).map_err(|e| e.to_string())?;
                    for n1 in 1..=2 {
                        let k = VscKey::new(d, a, b, with(&key.ins, &[(1, n1)]));
                        let v = genus0::vsc_direct(space, &k, m).map_err(|e| e.to_string())?;
                        let want = &base * pow_d(d, n1);
                        ensure(v == want, || {
                            format!("{space} genus 0 {k:?}: {v} != {want}")
                        })?;
                    }
                    let k = VscKey::new(d, a, b, with(&key.ins, &[(0, 1), (2, 1)]));
                    let v = genus0::vsc_direct(space, &k, m).map_err(|e| e.to_string())?;
                    ensure(v == rat_int(0), || {
                        format!("{space} genus 0 {k:?}: {v} != 0")
                    })?;
                }
            }
        }
        for key in genus1::keys_for(space, d) {
            let base = genus1::evsc_direct(space, &key, m).map_err(|e| e.to_string())?;
            for n1 in 1..=2 {
                let k = EvscKey::new(d, with(&key.ins, &[(1, n1)]));
                let v = genus1::evsc_direct(space, &k, m).map_err(|e| e.to_string())?;
                let want = &base * pow_d(d, n1);
                ensure(v == want, || {
                    format!("{space} genus 1 {k:?}: {v} != {want}")
                })?;
            }
            let k = EvscKey::new(d, with(&key.ins, &[(0, 1), (2, 1)]));
            let v = genus1::evsc_direct(space, &k, m).map_err(|e| e.to_string())?;
            ensure(v == rat_int(0), || {
                format!("{space} genus 1 {k:?}: {v} != 0")
            })?;
        }
    }
    Ok(())
}

// ---- graph-level identities ----

/// Every cluster-star graph contributes zero on a Calabi-Yau target.
pub fn cluster_stars_vanish(space: &SpaceSpec, max_d: u32) -> Check {
    for d in 1..=max_d {
        for key in genus1::keys_for(space, d) {
            for g in enumerate_graphs(d)
                .into_iter()
                .filter(GraphSpec::is_cluster_star)
            {
                let v = res_graph(space, &g, &key.ins, ResidueMethod::Derivative)
                    .map_err(|e| e.to_string())?;
                ensure(v == rat_int(0), || {
                    format!("{space} {g} {}: {v}", key.ins.key())
                })?;
            }
        }
    }
    Ok(())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Taking the leg residues of a star in any leg order gives the same value.
pub fn leg_order_independent(space: &SpaceSpec, max_d: u32) -> Check {
    for d in 2..=max_d {
        for key in genus1::keys_for(space, d) {
            for g in enumerate_graphs(d) {
                let GraphSpec::Star(sigma) = &g else { continue };
                if sigma.len() < 2 {
                    continue;
                }
                let it = graph_integrand(space, &g, &key.ins).map_err(|e| e.to_string())?;
                let reference = it
                    .evaluate(ResidueMethod::Derivative)
                    .map_err(|e| e.to_string())?;
                // the centre comes first, then one block of steps per leg
                let mut blocks = Vec::new();
                let mut at = 1;
                for &len in sigma {
                    blocks.push(it.steps[at..at + len as usize].to_vec());
                    at += len as usize;
                }
                for perm in permutations(blocks.len()) {
                    let mut steps = vec![it.steps[0].clone()];
                    for &i in &perm {
                        steps.extend(blocks[i].iter().cloned());
                    }
                    let v = evsc_core::kernel::iterated_residue(
                        &it.expr,
                        &steps,
                        ResidueMethod::Derivative,
                    )
                    .map_err(|e| e.to_string())?;
                    ensure(v == reference, || {
                        format!("{space} {g} order {perm:?}: {v} != {reference}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

// ---- series identities ----

/// `t(x(t)) = t` and `x(t(x)) = x` through `order`.
pub fn mirror_round_trip(space: &SpaceSpec, order: usize) -> Check {
    let s = Session::new(space.clone());
    let maps = s.mirror_maps(order).map_err(|e| e.to_string())?;
    for p in 0..maps.t.len() {
        let id = identity_series(p, order);
        let tx = maps.t[p].compose(&maps.x, 1).map_err(|e| e.to_string())?;
        let xt = maps.x[p].compose(&maps.t, 1).map_err(|e| e.to_string())?;
        ensure(tx == id, || format!("{space}: t^{p}(x(t)) = {tx:?}"))?;
        ensure(xt == id, || format!("{space}: x^{p}(t(x)) = {xt:?}"))?;
    }
    Ok(())
}

/// Chern coefficient `c_j` of `Π(1 + a h) / Π(1 + k h)`, expanded directly.
fn chern(space: &SpaceSpec, j: usize) -> Rational {
    let mut num = vec![rat_int(0); j + 1];
    num[0] = rat_int(1);
    for &a in space.weights() {
        for i in (1..=j).rev() {
            num[i] = &num[i] + &num[i - 1] * rat_int(a as i64);
        }
    }
    let mut inv = vec![rat_int(0); j + 1];
    inv[0] = rat_int(1);
    for &k in space.degrees() {
        let mut next = vec![rat_int(0); j + 1];
        for i in 0..=j {
            let mut pow = rat_int(1);
            for s in 0..=i {
                next[i] = &next[i] + &inv[i - s] * &pow;
                pow *= rat_int(-(k as i64));
            }
        }
        inv = next;
    }
    (0..=j).map(|i| &num[i] * &inv[j - i]).sum()
}

/// The coefficient of `t^1` in the genus-one potential.
pub fn f1a_linear_coefficient(space: &SpaceSpec) -> Check {
    let s = Session::new(space.clone());
    let f = s.f1a_series(1).map_err(|e| e.to_string())?;
    let k: i64 = space.degrees().iter().map(|&k| k as i64).product();
    let a: i64 = space.weights().iter().map(|&a| a as i64).product();
    let want = -rat_int(k) * chern(space, space.dim() as usize - 1) / rat_int(24 * a);
    ensure(*f.log_coeff() == want, || {
        format!("{space}: {} != {want}", f.log_coeff())
    })
}
