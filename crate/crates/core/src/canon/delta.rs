use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Map, Value};

use super::inventory::{Inventory, Label};
use crate::error::{usage, Result};
use crate::quiver::{classify_graph, minimal_imaginary_root, positive_real_roots_below, DimVector, Quiver};
use crate::tubes::segment_dims;

/// A pair `(σ, λ)`: multiplicities on inventory labels and a partition
/// (empty for "(0)") counting copies of `δ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalParam {
    pub sigma: BTreeMap<Label, usize>,
    pub lambda: Vec<usize>,
}

impl CanonicalParam {
    /// `q = Σ λ_m`, the number of homogeneous simples.
    pub fn q(&self) -> usize {
        self.lambda.iter().sum()
    }

    pub fn to_json(&self, stratum_dim: Option<usize>) -> Value {
        let sigma: Map<String, Value> = self
            .sigma
            .iter()
            .map(|(l, m)| (l.to_string(), Value::from(*m)))
            .collect();
        let mut v = json!({"sigma": sigma, "lambda": self.lambda});
        if let Some(d) = stratum_dim {
            v["stratum_dim"] = Value::from(d);
        }
        v
    }

    pub fn lambda_string(&self) -> String {
        if self.lambda.is_empty() {
            "(0)".into()
        } else {
            let parts: Vec<String> = self.lambda.iter().map(|x| x.to_string()).collect();
            format!("({})", parts.join(","))
        }
    }
}

/// Partitions of `n` as weakly decreasing lists, in lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in 1..=max.min(n) {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Condition (a): inside each tube, for each length, some socle class is
/// missing from the support of σ.
pub fn is_aperiodic_sigma(sigma: &BTreeMap<Label, usize>, inv: &Inventory) -> bool {
    let mut present: BTreeMap<(usize, usize), BTreeSet<usize>> = BTreeMap::new();
    for (label, &m) in sigma {
        if let (Label::Regular { tube, z, l }, true) = (label, m > 0) {
            present.entry((*tube, *l)).or_default().insert(*z);
        }
    }
    present
        .iter()
        .all(|(&(tube, _), zs)| inv.tube_period(tube).is_some_and(|p| zs.len() < p))
}

fn knapsack(
    items: &[(Label, DimVector)],
    idx: usize,
    rest: &DimVector,
    cur: &mut Vec<(Label, usize)>,
    out: &mut Vec<BTreeMap<Label, usize>>,
) {
    if rest.is_zero() {
        out.push(cur.iter().cloned().collect());
        return;
    }
    if idx == items.len() {
        return;
    }
    let (label, d) = &items[idx];
    knapsack(items, idx + 1, rest, cur, out);
    let mut r = rest.clone();
    let mut m = 0;
    loop {
        r = r.sub(d);
        if !r.is_nonnegative() {
            break;
        }
        m += 1;
        cur.push((*label, m));
        knapsack(items, idx + 1, &r, cur, out);
        cur.pop();
    }
}

/// All `(σ, λ)` with `Σ σ(M)|M| + (Σλ)δ = ν` and σ aperiodic, ordered by
/// `q = Σλ`, then `λ`, then σ by label.
pub fn enumerate_delta(nu: &DimVector, inv: &Inventory) -> Result<Vec<CanonicalParam>> {
    let q = inv.quiver_arc();
    if nu.len() != q.vertex_count() || !nu.is_nonnegative() {
        return usage(format!("dimension vector {nu} does not fit the quiver"));
    }
    if !nu.le(inv.bound()) {
        return usage(format!("inventory bound {} does not cover {nu}", inv.bound()));
    }
    let delta = minimal_imaginary_root(q)?;
    let mut out = Vec::new();
    let mut k = 0;
    loop {
        let rest = nu.sub(&delta.scale(k as i64));
        if !rest.is_nonnegative() {
            break;
        }
        let items: Vec<(Label, DimVector)> = inv
            .items()
            .iter()
            .filter(|it| it.dim.le(&rest))
            .map(|it| (it.label, it.dim.clone()))
            .collect();
        let mut sigmas = Vec::new();
        knapsack(&items, 0, &rest, &mut Vec::new(), &mut sigmas);
        let mut sigmas: Vec<Vec<(Label, usize)>> = sigmas
            .into_iter()
            .filter(|s| is_aperiodic_sigma(s, inv))
            .map(|s| s.into_iter().collect())
            .collect();
        sigmas.sort();
        for lambda in partitions(k) {
            for s in &sigmas {
                out.push(CanonicalParam {
                    sigma: s.iter().cloned().collect(),
                    lambda: lambda.clone(),
                });
            }
        }
        k += 1;
    }
    Ok(out)
}

/// Mixed-radix index of vectors `0 ≤ v ≤ ν`.
struct Grid {
    nu: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
}

impl Grid {
    fn new(nu: &[usize]) -> Grid {
        let mut strides = Vec::with_capacity(nu.len());
        let mut size = 1;
        for &n in nu {
            strides.push(size);
            size *= n + 1;
        }
        Grid {
            nu: nu.to_vec(),
            strides,
            size,
        }
    }

    fn coords(&self, mut idx: usize) -> Vec<usize> {
        self.nu
            .iter()
            .map(|&n| {
                let c = idx % (n + 1);
                idx /= n + 1;
                c
            })
            .collect()
    }

    fn offset(&self, v: &[usize]) -> usize {
        v.iter().zip(&self.strides).map(|(a, s)| a * s).sum()
    }

    /// Counts multisets of parts (each part type usable any number of times)
    /// summing to every vector of the grid.
    fn multiset_counts(&self, parts: &[Vec<usize>]) -> Vec<u128> {
        let mut dp = vec![0u128; self.size];
        dp[0] = 1;
        for part in parts {
            let off = self.offset(part);
            for idx in 0..self.size {
                let c = self.coords(idx);
                if c.iter().zip(part).all(|(a, b)| a >= b) {
                    dp[idx] += dp[idx - off];
                }
            }
        }
        dp
    }
}

/// Coefficient of `x^ν` in `∏_{α real > 0}(1 − x^α)^{−1} ∏_{n ≥ 1}(1 − x^{nδ})^{−(|I|−1)}`.
pub fn weight_dim_oracle(q: &Quiver, nu: &DimVector) -> Result<u128> {
    classify_graph(q)?;
    if nu.len() != q.vertex_count() || !nu.is_nonnegative() {
        return usage(format!("dimension vector {nu} does not fit the quiver"));
    }
    let delta = minimal_imaginary_root(q)?;
    let mut parts: Vec<Vec<usize>> = positive_real_roots_below(q, nu)?.iter().map(|a| a.as_usize()).collect();
    let mut m = 1;
    while delta.scale(m).le(nu) {
        for _ in 0..q.vertex_count() - 1 {
            parts.push(delta.scale(m).as_usize());
        }
        m += 1;
    }
    let grid = Grid::new(&nu.as_usize());
    let dp = grid.multiset_counts(&parts);
    Ok(dp[grid.size - 1])
}

/// Number of aperiodic multisets of segments `s_{z,l}` of the cyclic quiver
/// `C_p` with graded dimension `ν`.
pub fn count_aperiodic_cyclic(p: usize, nu: &[usize]) -> Result<u128> {
    if p < 2 || nu.len() != p {
        return usage(format!("need {p} ≥ 2 graded dimensions, got {}", nu.len()));
    }
    let total: usize = nu.iter().sum();
    // segments grouped by length; within a length, not every socle may occur
    let by_len: Vec<Vec<Vec<usize>>> = (1..=total)
        .map(|l| (0..p).map(|z| segment_dims(p, z, l)).collect())
        .collect();
    fn fits(a: &[usize], b: &[usize]) -> bool {
        a.iter().zip(b).all(|(x, y)| x <= y)
    }
    fn go(by_len: &[Vec<Vec<usize>>], li: usize, zi: usize, used: usize, rest: &mut Vec<usize>, p: usize) -> u128 {
        if rest.iter().all(|&x| x == 0) {
            return 1;
        }
        if li == by_len.len() {
            return 0;
        }
        if zi == p {
            return go(by_len, li + 1, 0, 0, rest, p);
        }
        let seg = &by_len[li][zi];
        let mut count = go(by_len, li, zi + 1, used, rest, p);
        if used + 1 == p {
            // this would complete the length-(li+1) orbit
            return count;
        }
        let mut taken = 0;
        while fits(seg, rest) {
            for (r, s) in rest.iter_mut().zip(seg) {
                *r -= s;
            }
            taken += 1;
            count += go(by_len, li, zi + 1, used + 1, rest, p);
        }
        for (r, s) in rest.iter_mut().zip(seg) {
            *r += s * taken;
        }
        count
    }
    Ok(go(&by_len, 0, 0, 0, &mut nu.to_vec(), p))
}
