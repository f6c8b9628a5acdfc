//! Partitions and the four families of graphs that index genus-1 residues.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::kernel::rational::{factorial, Integer, Rational};

/// Non-decreasing parts summing to the degree.
pub type Partition = Vec<u32>;

/// Partitions of `d` with non-decreasing parts, in lexicographic order.
pub fn partitions(d: u32) -> Vec<Partition> {
    fn rec(rest: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in min..=rest {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        rec(d, 1, &mut Vec::new(), &mut out);
    }
    out
}

/// `(l - 1)! / Π_i mul(σ, i)!` where `l` is the number of parts.
pub fn sym(sigma: &[u32]) -> Rational {
    let l = sigma.len() as u32;
    let mut den = Integer::one();
    let mut i = 0;
    while i < sigma.len() {
        let mut j = i;
        while j < sigma.len() && sigma[j] == sigma[i] {
            j += 1;
        }
        den *= factorial((j - i) as u32);
        i = j;
    }
    Rational::new(factorial(l.saturating_sub(1)), den)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GraphSpec {
    /// Elliptic vertex with one chain per part of the partition.
    Star(Partition),
    /// Cycle of `d ≥ 2` edges.
    Loop(u32),
    /// Cluster vertex of degree `f` with chains given by a partition of `d - f`.
    ClusterStar { f: u32, sigma: Partition },
    /// A lone cluster vertex of degree `d`.
    Point(u32),
}

impl GraphSpec {
    pub fn degree(&self) -> u32 {
        match self {
            GraphSpec::Star(s) => s.iter().sum(),
            GraphSpec::Loop(d) | GraphSpec::Point(d) => *d,
            GraphSpec::ClusterStar { f, sigma } => f + sigma.iter().sum::<u32>(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let sorted = |s: &[u32]| s.windows(2).all(|w| w[0] <= w[1]) && s.iter().all(|&p| p > 0);
        match self {
            GraphSpec::Star(s) if s.is_empty() || !sorted(s) => Err(Error::Graph(format!(
                "star needs a non-empty partition, got {s:?}"
            ))),
            GraphSpec::Loop(d) if *d < 2 => Err(Error::Graph(format!(
                "loop needs at least 2 edges, got {d}"
            ))),
            GraphSpec::Point(0) => Err(Error::Graph("point graph of degree 0".into())),
            GraphSpec::ClusterStar { f, sigma }
                if *f == 0 || sigma.is_empty() || !sorted(sigma) =>
            {
                Err(Error::Graph(format!(
                    "cluster star needs f ≥ 1 and a non-empty partition, got f={f}, {sigma:?}"
                )))
            }
            _ => Ok(()),
        }
    }

    pub fn is_cluster_star(&self) -> bool {
        matches!(self, GraphSpec::ClusterStar { .. })
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Star(s) => write!(f, "star{s:?}"),
            GraphSpec::Loop(d) => write!(f, "loop({d})"),
            GraphSpec::ClusterStar { f: c, sigma } => write!(f, "cluster({c}){sigma:?}"),
            GraphSpec::Point(d) => write!(f, "point({d})"),
        }
    }
}

/// Every graph of degree `d`: stars, the loop (when `d ≥ 2`), cluster stars
/// for `1 ≤ f ≤ d-1`, and the point graph.
pub fn enumerate_graphs(d: u32) -> Vec<GraphSpec> {
    let mut out: Vec<GraphSpec> = partitions(d).into_iter().map(GraphSpec::Star).collect();
    if d >= 2 {
        out.push(GraphSpec::Loop(d));
    }
    for f in 1..d {
        for sigma in partitions(d - f) {
            out.push(GraphSpec::ClusterStar { f, sigma });
        }
    }
    if d >= 1 {
        out.push(GraphSpec::Point(d));
    }
    out
}
