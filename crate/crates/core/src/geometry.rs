//! Complete intersections `X ⊂ P(a_1,...,a_N)` cut out by degrees `k_1,...,k_m`:
//! parsing, validation and the per-space polynomial building blocks.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::kernel::poly::{Coeff, Poly};
use crate::kernel::rational::{Integer, Rational};
use crate::kernel::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("cannot parse space `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("weights and degrees must be positive")]
    NonPositive,
    #[error("no weight equals 1")]
    NoUnitWeight,
    #[error("weights other than one unit weight have gcd {0}, need 1")]
    WeightGcd(u32),
    #[error("weight {weight} does not divide degree {degree}")]
    Divisibility { weight: u32, degree: u32 },
    #[error("dimension N - m - 1 = {0} is below 1")]
    Dimension(i64),
}

/// A weighted projective complete intersection. Weights and degrees keep the
/// order they were given in; [`SpaceSpec::id`] sorts them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpaceSpec {
    weights: Vec<u32>,
    degrees: Vec<u32>,
}

impl SpaceSpec {
    pub fn new(weights: Vec<u32>, degrees: Vec<u32>) -> Result<Self, SpaceError> {
        if weights.is_empty() || degrees.is_empty() {
            return Err(SpaceError::Parse {
                input: format!("{weights:?}|{degrees:?}"),
                reason: "weights and degrees must be non-empty".into(),
            });
        }
        if weights.iter().chain(&degrees).any(|&x| x == 0) {
            return Err(SpaceError::NonPositive);
        }
        let mut sorted = weights.clone();
        sorted.sort_unstable();
        if sorted[0] != 1 {
            return Err(SpaceError::NoUnitWeight);
        }
        let g = sorted[1..].iter().fold(0u32, |g, &a| g.gcd(&a));
        if sorted.len() > 1 && g != 1 {
            return Err(SpaceError::WeightGcd(g));
        }
        for &a in &weights {
            for &k in &degrees {
                if k % a != 0 {
                    return Err(SpaceError::Divisibility {
                        weight: a,
                        degree: k,
                    });
                }
            }
        }
        let dim = weights.len() as i64 - degrees.len() as i64 - 1;
        if dim < 1 {
            return Err(SpaceError::Dimension(dim));
        }
        Ok(SpaceSpec { weights, degrees })
    }

    /// Parses `"a1,a2,...|k1,k2,..."`.
    pub fn parse(input: &str) -> Result<Self, SpaceError> {
        let err = |reason: &str| SpaceError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let (w, k) = input
            .split_once('|')
            .ok_or_else(|| err("expected `weights|degrees`"))?;
        let list = |s: &str, what: &str| -> Result<Vec<u32>, SpaceError> {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| err(&format!("bad {what} entry `{}`", t.trim())))
                })
                .collect()
        };
        Self::new(list(w, "weight")?, list(k, "degree")?)
    }

    /// Canonical identifier with weights and degrees sorted ascending.
    pub fn id(&self) -> String {
        let mut w = self.weights.clone();
        w.sort_unstable();
        let mut k = self.degrees.clone();
        k.sort_unstable();
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        format!("{}|{}", join(&w), join(&k))
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Number of homogeneous coordinates `N`.
    pub fn n_coords(&self) -> u32 {
        self.weights.len() as u32
    }

    /// Number of equations `m`.
    pub fn codim(&self) -> u32 {
        self.degrees.len() as u32
    }

    /// Complex dimension `n = N - m - 1`.
    pub fn dim(&self) -> u32 {
        self.n_coords() - self.codim() - 1
    }

    /// `A = Π a_i`.
    pub fn weight_product(&self) -> u64 {
        self.weights.iter().map(|&a| a as u64).product()
    }

    /// `K = Π k_j`.
    pub fn degree_product(&self) -> u64 {
        self.degrees.iter().map(|&k| k as u64).product()
    }

    /// First Chern class index `Σ a_i - Σ k_j`.
    pub fn fano_index(&self) -> i64 {
        self.weights.iter().map(|&a| a as i64).sum::<i64>()
            - self.degrees.iter().map(|&k| k as i64).sum::<i64>()
    }

    pub fn is_calabi_yau(&self) -> bool {
        self.fano_index() == 0
    }

    /// Insertion classes `2..=n` that carry a deformation variable.
    pub fn insertion_classes(&self) -> std::ops::RangeInclusive<u32> {
        2..=self.dim()
    }

    /// Coefficients `c_0..c_n` of `Π(1 + a h)/Π(1 + k h)`.
    pub fn chern_coeffs(&self) -> Vec<Rational> {
        let n = self.dim() as usize;
        let mut c = vec![Rational::zero(); n + 1];
        c[0] = Rational::one();
        for &a in &self.weights {
            for j in (1..=n).rev() {
                let prev = c[j - 1].clone();
                c[j] += prev * Rational::from_integer(a.into());
            }
        }
        for &k in &self.degrees {
            // divide by (1 + k h)
            let k = Rational::from_integer(k.into());
            for j in 1..=n {
                let prev = c[j - 1].clone();
                c[j] -= prev * &k;
            }
        }
        c
    }

    /// `(K/A, -K c_{n-1} / (24 A))`: the classical two-point coefficient and
    /// the classical genus-one constant.
    pub fn classical_constants(&self) -> (Rational, Rational) {
        let ka = Rational::new(
            Integer::from(self.degree_product()),
            Integer::from(self.weight_product()),
        );
        let c = self.chern_coeffs();
        let g1 = -&ka * &c[self.dim() as usize - 1] / Rational::from_integer(24.into());
        (ka, g1)
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

/// Multi-index of insertion classes: `counts[p]` copies of `O_{h^p}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct InsertionIndex {
    counts: Vec<u32>,
}

impl InsertionIndex {
    pub fn empty() -> Self {
        InsertionIndex { counts: Vec::new() }
    }

    /// From `(class, count)` pairs.
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Self {
        let mut ins = Self::empty();
        for &(p, c) in pairs {
            ins.add(p, c);
        }
        ins
    }

    /// From counts for classes `2, 3, ...` in order.
    pub fn from_counts(counts_from_2: &[u32]) -> Self {
        let mut ins = Self::empty();
        for (i, &c) in counts_from_2.iter().enumerate() {
            ins.add(i as u32 + 2, c);
        }
        ins
    }

    pub fn count(&self, p: u32) -> u32 {
        self.counts.get(p as usize).copied().unwrap_or(0)
    }

    pub fn add(&mut self, p: u32, c: u32) {
        let p = p as usize;
        if self.counts.len() <= p {
            self.counts.resize(p + 1, 0);
        }
        self.counts[p] += c;
        self.trim();
    }

    pub fn set(&mut self, p: u32, c: u32) {
        let pu = p as usize;
        if self.counts.len() <= pu {
            self.counts.resize(pu + 1, 0);
        }
        self.counts[pu] = c;
        self.trim();
    }

    fn trim(&mut self) {
        while self.counts.last() == Some(&0) {
            self.counts.pop();
        }
    }

    /// Nonzero `(class, count)` pairs, ascending by class.
    pub fn pairs(&self) -> Vec<(u32, u32)> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(p, &c)| (p as u32, c))
            .collect()
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// `Σ n_p (p - 1)`, counting class 0 as `-1`.
    pub fn weight(&self) -> i64 {
        self.pairs()
            .iter()
            .map(|&(p, c)| c as i64 * (p as i64 - 1))
            .sum()
    }

    pub fn max_class(&self) -> u32 {
        self.counts.len().saturating_sub(1) as u32
    }

    /// `Π n_p!`.
    pub fn factorial_product(&self) -> Integer {
        self.pairs()
            .iter()
            .map(|&(_, c)| crate::kernel::rational::factorial(c))
            .fold(Integer::one(), |a, b| a * b)
    }

    /// Monomial `Π (x^p)^{n_p}` in the deformation variables.
    pub fn monomial(&self) -> Monomial {
        let exps: Vec<u32> = self.counts.clone();
        Monomial::from_exponents(&exps)
    }

    pub fn from_monomial(m: Monomial, nvars: usize) -> Self {
        let mut ins = Self::empty();
        for (p, e) in m.exponents(nvars).into_iter().enumerate() {
            ins.add(p as u32, e);
        }
        ins
    }

    /// Canonical text form, e.g. `2^3.3^1`; empty index is `-`.
    pub fn key(&self) -> String {
        let pairs = self.pairs();
        if pairs.is_empty() {
            return "-".into();
        }
        pairs
            .iter()
            .map(|(p, c)| format!("{p}^{c}"))
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Counts for classes `2..=n`, in order.
    pub fn counts_from_2(&self, n: u32) -> Vec<u32> {
        (2..=n).map(|p| self.count(p)).collect()
    }
}

/// All multi-indices over classes `2..=n` with `Σ n_p (p - 1) = target`,
/// ordered by `(n_2, n_3, ...)` ascending.
pub fn insertions_of_weight(n: u32, target: i64) -> Vec<InsertionIndex> {
    if target < 0 {
        return Vec::new();
    }
    let classes: Vec<u32> = (2..=n).collect();
    let mut out = Vec::new();
    let mut counts = vec![0u32; classes.len()];
    fn rec(classes: &[u32], i: usize, rest: i64, counts: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == classes.len() {
            if rest == 0 {
                out.push(counts.clone());
            }
            return;
        }
        let w = classes[i] as i64 - 1;
        let mut c = 0;
        while c as i64 * w <= rest {
            counts[i] = c;
            rec(classes, i + 1, rest - c as i64 * w, counts, out);
            c += 1;
        }
        counts[i] = 0;
    }
    let mut raw = Vec::new();
    if classes.is_empty() {
        if target == 0 {
            raw.push(Vec::new());
        }
    } else {
        rec(&classes, 0, target, &mut counts, &mut raw);
    }
    raw.sort();
    for r in raw {
        out.push(InsertionIndex::from_counts(&r));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Genus {
    Zero,
    One,
}

/// Degree constraint for virtual structure constants: genus 0 uses the
/// two-point form `F d + N - m - 2 = a + b + Σ n_j (j-1)`, genus 1 uses
/// `F d = Σ n_j (j-1)` (the `a`, `b` arguments are ignored there).
pub fn selection_rule(
    space: &SpaceSpec,
    genus: Genus,
    d: u32,
    a: u32,
    b: u32,
    ins: &InsertionIndex,
) -> bool {
    let f = space.fano_index() * d as i64;
    match genus {
        Genus::Zero => {
            let lhs = f + space.n_coords() as i64 - space.codim() as i64 - 2;
            lhs == a as i64 + b as i64 + ins.weight()
        }
        Genus::One => f == ins.weight(),
    }
}

/// Degree constraint for genus-0 invariants `⟨Π O_{h^p}⟩_{0,d}` without
/// distinguished insertions: `F d + N - m - 4 = Σ n_j (j-1)`.
pub fn gw_selection_rule(space: &SpaceSpec, d: u32, ins: &InsertionIndex) -> bool {
    space.fano_index() * d as i64 + space.dim() as i64 - 3 == ins.weight()
}

/// `(i, k-i)` for `i = 0..=k`: the factors `i x + (k-i) y` of `e_k(x, y)`.
pub fn e_factors(k: u32) -> Vec<(i64, i64)> {
    (0..=k as i64).map(|i| (i, k as i64 - i)).collect()
}

/// `(j, a-j)` for each weight `a` and `1 ≤ j < a`: the factors of `q(x, y)`.
pub fn q_factors(weights: &[u32]) -> Vec<(i64, i64)> {
    weights
        .iter()
        .flat_map(|&a| (1..a as i64).map(move |j| (j, a as i64 - j)))
        .collect()
}

fn product_of_factors<C: Coeff>(factors: &[(i64, i64)], x: usize, y: usize) -> Poly<C> {
    factors.iter().fold(Poly::one(), |acc, &(i, j)| {
        let mut l = Poly::zero();
        l.add_term(Monomial::var(x), &C::from_i64(i));
        l.add_term(Monomial::var(y), &C::from_i64(j));
        acc.mul(&l)
    })
}

/// `e_k(x, y) = Π_{i=0}^{k} (i x + (k-i) y)`.
pub fn build_e<C: Coeff>(k: u32, x: usize, y: usize) -> Poly<C> {
    product_of_factors(&e_factors(k), x, y)
}

/// `q(x, y) = Π_a Π_{j=1}^{a-1} (j x + (a-j) y)`.
pub fn build_q<C: Coeff>(weights: &[u32], x: usize, y: usize) -> Poly<C> {
    product_of_factors(&q_factors(weights), x, y)
}

/// `w_a(x, y) = Σ_{i=0}^{a-1} x^i y^{a-1-i}`, i.e. `(x^a - y^a)/(x - y)`.
pub fn build_w<C: Coeff>(a: u32, x: usize, y: usize) -> Poly<C> {
    let mut p = Poly::zero();
    for i in 0..a {
        p.add_term(
            Monomial::var_pow(x, i).mul(Monomial::var_pow(y, a - 1 - i)),
            &C::one(),
        );
    }
    p
}
