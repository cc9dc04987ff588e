//! Quivers, recognition of extended Dynkin graphs, orientation surgery, and
//! the root-theoretic data attached to the underlying graph.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::exactfield::{Field, Matrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

/// A finite quiver without loops. Vertices are addressed by their position
/// in `vertices`; that order is also the coordinate order of dimension
/// vectors and the tie-break order wherever a choice among vertices is made.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    vertices: Vec<String>,
    arrows: Vec<ArrowJson>,
}

#[derive(Serialize, Deserialize)]
struct ArrowJson {
    id: String,
    tail: String,
    head: String,
}

impl Quiver {
    /// Build from vertex names and `(id, tail, head)` triples.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Quiver> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return usage(format!("duplicate vertex id `{v}`"));
            }
        }
        let index = |name: &str| {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::UnknownVertex(name.to_string()))
        };
        let mut ids = HashSet::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (id, t, h) in arrows {
            let (id, t, h) = (id.as_ref(), t.as_ref(), h.as_ref());
            if !ids.insert(id.to_string()) {
                return usage(format!("duplicate arrow id `{id}`"));
            }
            let (tail, head) = (index(t)?, index(h)?);
            if tail == head {
                return usage(format!("arrow `{id}` is a loop at `{t}`"));
            }
            out.push(Arrow {
                id: id.to_string(),
                tail,
                head,
            });
        }
        Ok(Quiver {
            vertices,
            arrows: out,
        })
    }

    pub fn from_json_str(s: &str) -> Result<Quiver> {
        let raw: QuiverJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Quiver::from_json_value_inner(raw)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Quiver> {
        let raw: QuiverJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Quiver::from_json_value_inner(raw)
    }

    fn from_json_value_inner(raw: QuiverJson) -> Result<Quiver> {
        let arrows: Vec<(String, String, String)> = raw
            .arrows
            .into_iter()
            .map(|a| (a.id, a.tail, a.head))
            .collect();
        Quiver::new(&raw.vertices, &arrows)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(QuiverJson {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowJson {
                    id: a.id.clone(),
                    tail: self.vertices[a.tail].clone(),
                    head: self.vertices[a.head].clone(),
                })
                .collect(),
        })
        .expect("quiver serializes")
    }

    /// Two vertices `1`, `2` and two arrows `1 → 2`.
    pub fn kronecker() -> Quiver {
        Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap()
    }

    /// The cyclic quiver `C_p` on vertices `0..p` with arrows `w{z}: z → z−1`.
    pub fn cyclic(p: usize) -> Result<Quiver> {
        if p < 2 {
            return usage("cyclic quiver needs at least two vertices");
        }
        let verts: Vec<String> = (0..p).map(|z| z.to_string()).collect();
        let arrows: Vec<(String, String, String)> = (0..p)
            .map(|z| {
                (
                    format!("w{z}"),
                    z.to_string(),
                    ((z + p - 1) % p).to_string(),
                )
            })
            .collect();
        Quiver::new(&verts, &arrows)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    pub fn is_sink(&self, i: usize) -> bool {
        self.arrows.iter().all(|a| a.tail != i)
    }

    pub fn is_source(&self, i: usize) -> bool {
        self.arrows.iter().all(|a| a.head != i)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_sinks().is_some()
    }

    fn topological_sinks(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut out_deg = vec![0usize; n];
        for a in &self.arrows {
            out_deg[a.tail] += 1;
        }
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n).find(|&v| !removed[v] && out_deg[v] == 0)?;
            removed[v] = true;
            order.push(v);
            for a in &self.arrows {
                if a.head == v {
                    out_deg[a.tail] -= 1;
                }
            }
        }
        Some(order)
    }

    pub fn zero_dim(&self) -> DimVector {
        DimVector::zero(self.vertex_count())
    }

    pub fn simple_root(&self, i: usize) -> DimVector {
        DimVector::unit(self.vertex_count(), i)
    }

    fn check_dim(&self, a: &DimVector) -> Result<()> {
        if a.len() != self.vertex_count() {
            return usage(format!(
                "dimension vector has {} entries, quiver has {} vertices",
                a.len(),
                self.vertex_count()
            ));
        }
        Ok(())
    }

    /// Parse a comma list such as `"1,2,0"` in vertex order.
    pub fn parse_dim(&self, s: &str) -> Result<DimVector> {
        let v: DimVector = s.parse()?;
        self.check_dim(&v)?;
        if !v.is_nonnegative() {
            return Err(Error::Parse(format!("negative entry in `{s}`")));
        }
        Ok(v)
    }

    /// Number of arrows between `i` and `j` in either direction.
    pub fn edge_multiplicity(&self, i: usize, j: usize) -> usize {
        self.arrows
            .iter()
            .filter(|a| (a.tail == i && a.head == j) || (a.tail == j && a.head == i))
            .count()
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(")?;
        for (k, a) in self.arrows.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(
                f,
                "{}: {}→{}",
                a.id, self.vertices[a.tail], self.vertices[a.head]
            )?;
        }
        write!(f, ")")
    }
}

/// Integer vector indexed by vertices. Dimension vectors are nonnegative;
/// negative entries appear only transiently (Weyl reflections).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn zero(n: usize) -> DimVector {
        DimVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> DimVector {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Coordinatewise `≤`.
    pub fn le(&self, o: &DimVector) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, o: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> DimVector {
        DimVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn as_usize(&self) -> Vec<usize> {
        self.0
            .iter()
            .map(|&x| usize::try_from(x).expect("negative dimension"))
            .collect()
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl std::str::FromStr for DimVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<DimVector> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(DimVector(vec![]));
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad dimension entry `{t}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(DimVector)
    }
}

impl From<Vec<i64>> for DimVector {
    fn from(v: Vec<i64>) -> DimVector {
        DimVector(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AffineFamily {
    /// `Ã_n`, with `n + 1` vertices.
    A(usize),
    /// `D̃_n`, with `n + 1` vertices, `n ≥ 4`.
    D(usize),
    /// `Ẽ_6`, `Ẽ_7`, `Ẽ_8`.
    E(usize),
    /// Oriented cycle `C_p`.
    Cyclic(usize),
}

impl fmt::Display for AffineFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineFamily::A(n) => write!(f, "A~({n})"),
            AffineFamily::D(n) => write!(f, "D~({n})"),
            AffineFamily::E(n) => write!(f, "E~({n})"),
            AffineFamily::Cyclic(p) => write!(f, "cyclic({p})"),
        }
    }
}

/// The affine family together with a vertex ordering that realizes the
/// standard diagram: for `Ã` the cyclic order; for `D̃` leaf, leaf, the
/// spine between the branch points, leaf, leaf; for `Ẽ` the branch vertex
/// followed by its three arms (shortest first), each listed outward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineClass {
    pub family: AffineFamily,
    pub certificate: Vec<usize>,
}

fn neighbors(q: &Quiver) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); q.vertex_count()];
    for a in q.arrows() {
        adj[a.tail].push(a.head);
        adj[a.head].push(a.tail);
    }
    adj
}

fn is_connected(adj: &[Vec<usize>]) -> bool {
    if adj.is_empty() {
        return false;
    }
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Walk from `start` away from `from` until a vertex of degree ≠ 2; returns
/// the visited vertices (excluding `from`).
fn walk_arm(adj: &[Vec<usize>], from: usize, start: usize) -> Vec<usize> {
    let mut path = vec![start];
    let (mut prev, mut cur) = (from, start);
    while adj[cur].len() == 2 {
        let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
        prev = cur;
        cur = next;
        path.push(cur);
    }
    path
}

/// Recognize the underlying graph of `q` as an extended Dynkin diagram, or
/// `q` itself as an oriented cycle.
pub fn classify_graph(q: &Quiver) -> Result<AffineClass> {
    let n = q.vertex_count();
    let not_affine = |why: &str| Err(Error::NotAffine(why.to_string()));
    let adj = neighbors(q);
    if !is_connected(&adj) {
        return not_affine("graph is empty or disconnected");
    }
    let mut indeg = vec![0; n];
    let mut outdeg = vec![0; n];
    for a in q.arrows() {
        outdeg[a.tail] += 1;
        indeg[a.head] += 1;
    }
    if (0..n).all(|v| indeg[v] == 1 && outdeg[v] == 1) {
        let mut order = vec![0];
        let mut cur = 0;
        for _ in 1..n {
            cur = q.arrows().iter().find(|a| a.tail == cur).unwrap().head;
            order.push(cur);
        }
        return Ok(AffineClass {
            family: AffineFamily::Cyclic(n),
            certificate: order,
        });
    }
    let edges = q.arrows().len();
    let multi = (0..n).any(|i| (i + 1..n).any(|j| q.edge_multiplicity(i, j) > 1));
    if multi {
        if n == 2 && edges == 2 {
            return Ok(AffineClass {
                family: AffineFamily::A(1),
                certificate: vec![0, 1],
            });
        }
        return not_affine("multiple edges outside the Kronecker diagram");
    }
    let deg: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    if edges == n {
        if n >= 3 && deg.iter().all(|&d| d == 2) {
            let mut order = vec![0];
            let (mut prev, mut cur) = (0, adj[0][0]);
            while cur != 0 {
                order.push(cur);
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                prev = cur;
                cur = next;
            }
            return Ok(AffineClass {
                family: AffineFamily::A(n - 1),
                certificate: order,
            });
        }
        return not_affine("graph with a cycle that is not a simple cycle");
    }
    if edges + 1 != n {
        return not_affine("wrong number of edges for an extended Dynkin diagram");
    }
    // Trees: D̃_n and Ẽ_n.
    let branch: Vec<usize> = (0..n).filter(|&v| deg[v] >= 3).collect();
    if branch.len() == 1 && deg[branch[0]] == 4 {
        let c = branch[0];
        if n == 5 && adj[c].iter().all(|&l| deg[l] == 1) {
            let mut cert: Vec<usize> = adj[c].clone();
            cert.sort();
            cert.push(c);
            return Ok(AffineClass {
                family: AffineFamily::D(4),
                certificate: cert,
            });
        }
        return not_affine("degree-4 vertex outside D~4");
    }
    if deg.iter().any(|&d| d > 3) {
        return not_affine("vertex of degree > 3");
    }
    if branch.len() == 2 {
        let (b1, b2) = (branch[0], branch[1]);
        let leaves_of = |b: usize| -> Vec<usize> {
            let mut l: Vec<usize> = adj[b].iter().copied().filter(|&w| deg[w] == 1).collect();
            l.sort();
            l
        };
        let (l1, l2) = (leaves_of(b1), leaves_of(b2));
        if l1.len() == 2 && l2.len() == 2 {
            // spine from b1 to b2
            let start = *adj[b1].iter().find(|w| !l1.contains(w)).unwrap();
            let spine = if start == b2 { vec![b2] } else { walk_arm(&adj, b1, start) };
            if spine.last() == Some(&b2) {
                let mut cert = l1.clone();
                cert.push(b1);
                cert.extend(spine);
                cert.extend(l2);
                return Ok(AffineClass {
                    family: AffineFamily::D(n - 1),
                    certificate: cert,
                });
            }
        }
        return not_affine("two branch points not in D~ shape");
    }
    if branch.len() == 1 {
        let c = branch[0];
        let mut arms: Vec<Vec<usize>> = adj[c].iter().map(|&w| walk_arm(&adj, c, w)).collect();
        arms.sort_by_key(|a| (a.len(), a[0]));
        let lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
        let family = match lens.as_slice() {
            [2, 2, 2] => AffineFamily::E(6),
            [1, 3, 3] => AffineFamily::E(7),
            [1, 2, 5] => AffineFamily::E(8),
            _ => return not_affine("arm lengths do not match E~6, E~7 or E~8"),
        };
        let mut cert = vec![c];
        for a in arms {
            cert.extend(a);
        }
        return Ok(AffineClass {
            family,
            certificate: cert,
        });
    }
    not_affine("tree of finite Dynkin type")
}

/// `⟨a, b⟩ = Σ a_i b_i − Σ_ω a_{t(ω)} b_{h(ω)}`.
pub fn euler_form(q: &Quiver, a: &DimVector, b: &DimVector) -> Result<i64> {
    q.check_dim(a)?;
    q.check_dim(b)?;
    Ok(euler_unchecked(q, a, b))
}

pub(crate) fn euler_unchecked(q: &Quiver, a: &DimVector, b: &DimVector) -> i64 {
    let diag: i64 = a.0.iter().zip(&b.0).map(|(x, y)| x * y).sum();
    let off: i64 = q.arrows().iter().map(|w| a.0[w.tail] * b.0[w.head]).sum();
    diag - off
}

/// The symmetrization `(a, b) = ⟨a, b⟩ + ⟨b, a⟩`.
pub fn symmetric_form(q: &Quiver, a: &DimVector, b: &DimVector) -> i64 {
    euler_unchecked(q, a, b) + euler_unchecked(q, b, a)
}

/// Symmetric generalized Cartan matrix: 2 on the diagonal, minus the number
/// of edges between `i` and `j` off it.
pub fn cartan_matrix(q: &Quiver) -> Vec<Vec<i64>> {
    let n = q.vertex_count();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        2
                    } else {
                        -(q.edge_multiplicity(i, j) as i64)
                    }
                })
                .collect()
        })
        .collect()
}

/// The primitive positive generator δ of the radical of the symmetric form.
pub fn minimal_imaginary_root(q: &Quiver) -> Result<DimVector> {
    classify_graph(q)?;
    let c = cartan_matrix(q);
    let m = Matrix::from_i64_rows(Field::Rational, &c);
    let k = m.kernel_basis();
    if k.cols() != 1 {
        return Err(Error::Internal(format!(
            "radical of an affine form has dimension {}",
            k.cols()
        )));
    }
    let rats: Vec<num_rational::BigRational> = k
        .column(0)
        .into_iter()
        .map(|s| match s {
            Scalar::Q(r) => r,
            Scalar::Fp(_) => unreachable!(),
        })
        .collect();
    let lcm = rats
        .iter()
        .fold(num_bigint::BigInt::from(1), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<num_bigint::BigInt> = rats.iter().map(|r| (r * &lcm).to_integer()).collect();
    let g = ints
        .iter()
        .fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = if ints.iter().any(|x| x.is_negative()) { -1 } else { 1 };
    let v: Vec<i64> = ints
        .iter()
        .map(|x| (x / &g).to_i64().unwrap() * sign)
        .collect();
    Ok(DimVector(v))
}

/// `defect(a) = ⟨δ, a⟩`: negative on preprojectives, zero on regulars,
/// positive on preinjectives.
pub fn defect(q: &Quiver, a: &DimVector) -> Result<i64> {
    let class = classify_graph(q)?;
    if let AffineFamily::Cyclic(_) = class.family {
        return usage("defect is defined for acyclic affine quivers only");
    }
    let delta = minimal_imaginary_root(q)?;
    euler_form(q, &delta, a)
}

/// Reverse every arrow incident to `i`.
pub fn reflect_quiver(q: &Quiver, i: usize) -> Result<Quiver> {
    if i >= q.vertex_count() {
        return Err(Error::UnknownVertex(i.to_string()));
    }
    let mut out = q.clone();
    for a in &mut out.arrows {
        if a.tail == i || a.head == i {
            std::mem::swap(&mut a.tail, &mut a.head);
        }
    }
    Ok(out)
}

/// `s_i(a) = a − (a, α_i) α_i`.
pub fn weyl_reflect(q: &Quiver, i: usize, a: &DimVector) -> DimVector {
    let ai = q.simple_root(i);
    let c = symmetric_form(q, a, &ai);
    let mut out = a.clone();
    out.0[i] -= c;
    out
}

/// Sinks `i_1, …, i_n` with each `i_r` a sink of `σ_{i_{r−1}} ⋯ σ_{i_1} q`;
/// ties resolved by smallest vertex index.
pub fn admissible_sink_sequence(q: &Quiver) -> Result<Vec<usize>> {
    let mut cur = q.clone();
    let n = q.vertex_count();
    let mut used = vec![false; n];
    let mut seq = Vec::with_capacity(n);
    for _ in 0..n {
        let i = (0..n)
            .find(|&i| !used[i] && cur.is_sink(i))
            .ok_or(Error::NoAdmissibleOrder)?;
        used[i] = true;
        seq.push(i);
        cur = reflect_quiver(&cur, i)?;
    }
    debug_assert_eq!(&cur, q);
    Ok(seq)
}

/// Dimension-level Coxeter transformation `c = s_{i_n} ⋯ s_{i_1}` along the
/// admissible sink sequence.
pub fn coxeter_transform(q: &Quiver, a: &DimVector) -> Result<DimVector> {
    let seq = admissible_sink_sequence(q)?;
    let mut cur = q.clone();
    let mut v = a.clone();
    for i in seq {
        v = weyl_reflect(&cur, i, &v);
        cur = reflect_quiver(&cur, i)?;
    }
    Ok(v)
}

/// Inverse of [`coxeter_transform`].
pub fn coxeter_transform_inverse(q: &Quiver, a: &DimVector) -> Result<DimVector> {
    let seq = admissible_sink_sequence(q)?;
    let mut v = a.clone();
    for &i in seq.iter().rev() {
        v = weyl_reflect(q, i, &v);
    }
    Ok(v)
}

/// All positive real roots `α ≤ bound`, sorted lexicographically. Every
/// positive real root is reached from a simple root by reflections that
/// increase it, so a bounded breadth-first closure is complete.
pub fn positive_real_roots_below(q: &Quiver, bound: &DimVector) -> Result<Vec<DimVector>> {
    classify_graph(q)?;
    q.check_dim(bound)?;
    let n = q.vertex_count();
    let mut found: BTreeSet<DimVector> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let a = q.simple_root(i);
        if a.le(bound) && found.insert(a.clone()) {
            queue.push_back(a);
        }
    }
    while let Some(a) = queue.pop_front() {
        for i in 0..n {
            let b = weyl_reflect(q, i, &a);
            if b.get(i) > a.get(i) && b.le(bound) && found.insert(b.clone()) {
                queue.push_back(b);
            }
        }
    }
    Ok(found.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d4_sink_center() -> Quiver {
        Quiver::new(
            &["a", "b", "c", "d", "o"],
            &[
                ("x", "a", "o"),
                ("y", "b", "o"),
                ("z", "c", "o"),
                ("w", "d", "o"),
            ],
        )
        .unwrap()
    }

    fn a3_path() -> Quiver {
        Quiver::new(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap()
    }

    fn e6() -> Quiver {
        let v = ["c", "a1", "a2", "b1", "b2", "d1", "d2"];
        let e = [
            ("1", "a1", "c"),
            ("2", "a2", "a1"),
            ("3", "b1", "c"),
            ("4", "b2", "b1"),
            ("5", "d1", "c"),
            ("6", "d2", "d1"),
        ];
        Quiver::new(&v, &e).unwrap()
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify_graph(&Quiver::kronecker()).unwrap().family,
            AffineFamily::A(1)
        );
        assert_eq!(
            classify_graph(&Quiver::cyclic(3).unwrap()).unwrap().family,
            AffineFamily::Cyclic(3)
        );
        assert!(matches!(
            classify_graph(&a3_path()),
            Err(Error::NotAffine(_))
        ));
        assert_eq!(
            classify_graph(&d4_sink_center()).unwrap().family,
            AffineFamily::D(4)
        );
        assert_eq!(classify_graph(&e6()).unwrap().family, AffineFamily::E(6));
        let d5 = Quiver::new(
            &["1", "2", "3", "4", "5", "6"],
            &[
                ("a", "1", "3"),
                ("b", "2", "3"),
                ("c", "3", "4"),
                ("d", "5", "4"),
                ("e", "6", "4"),
            ],
        )
        .unwrap();
        let cls = classify_graph(&d5).unwrap();
        assert_eq!(cls.family, AffineFamily::D(5));
        assert_eq!(cls.certificate, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn loops_rejected() {
        assert!(Quiver::new(&["1"], &[("a", "1", "1")]).is_err());
    }

    #[test]
    fn euler_examples() {
        let k = Quiver::kronecker();
        let e = |a: Vec<i64>, b: Vec<i64>| euler_form(&k, &a.into(), &b.into()).unwrap();
        assert_eq!(e(vec![1, 0], vec![0, 1]), -2);
        assert_eq!(e(vec![0, 0], vec![0, 0]), 0);
        assert_eq!(e(vec![1, 1], vec![1, 1]), 0);
        assert!(euler_form(&k, &vec![1].into(), &vec![1, 1].into()).is_err());
    }

    #[test]
    fn cartan_examples() {
        assert_eq!(
            cartan_matrix(&Quiver::kronecker()),
            vec![vec![2, -2], vec![-2, 2]]
        );
        let c3 = cartan_matrix(&Quiver::cyclic(3).unwrap());
        assert_eq!(c3, vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
        let single = Quiver::new::<&str>(&["x"], &[]).unwrap();
        assert_eq!(cartan_matrix(&single), vec![vec![2]]);
    }

    #[test]
    fn delta_examples() {
        assert_eq!(
            minimal_imaginary_root(&Quiver::kronecker()).unwrap(),
            DimVector(vec![1, 1])
        );
        assert_eq!(
            minimal_imaginary_root(&d4_sink_center()).unwrap(),
            DimVector(vec![1, 1, 1, 1, 2])
        );
        assert_eq!(
            minimal_imaginary_root(&Quiver::cyclic(4).unwrap()).unwrap(),
            DimVector(vec![1, 1, 1, 1])
        );
        assert_eq!(
            minimal_imaginary_root(&e6()).unwrap(),
            DimVector(vec![3, 2, 1, 2, 1, 2, 1])
        );
    }

    #[test]
    fn defect_examples() {
        let k = Quiver::kronecker();
        assert_eq!(defect(&k, &vec![0, 1].into()).unwrap(), -1);
        assert_eq!(defect(&k, &vec![1, 1].into()).unwrap(), 0);
        assert_eq!(defect(&k, &vec![1, 0].into()).unwrap(), 1);
        assert!(defect(&Quiver::cyclic(2).unwrap(), &vec![1, 0].into()).is_err());
    }

    #[test]
    fn reflect_examples() {
        let k = Quiver::kronecker();
        let r = reflect_quiver(&k, 1).unwrap();
        assert!(r.arrows().iter().all(|a| a.tail == 1 && a.head == 0));
        assert_eq!(reflect_quiver(&r, 1).unwrap(), k);
        let c3 = Quiver::cyclic(3).unwrap();
        let r = reflect_quiver(&c3, 0).unwrap();
        // one arrow untouched, the two incident ones reversed: no longer a cycle
        assert!(r.is_acyclic());
        assert!(reflect_quiver(&k, 5).is_err());
    }

    #[test]
    fn weyl_examples() {
        let k = Quiver::kronecker();
        assert_eq!(
            weyl_reflect(&k, 1, &vec![1, 0].into()),
            DimVector(vec![1, 2])
        );
        assert_eq!(
            weyl_reflect(&k, 0, &vec![1, 0].into()),
            DimVector(vec![-1, 0])
        );
        assert_eq!(
            weyl_reflect(&k, 0, &vec![1, 1].into()),
            DimVector(vec![1, 1])
        );
    }

    #[test]
    fn sink_sequences() {
        assert_eq!(admissible_sink_sequence(&Quiver::kronecker()).unwrap(), vec![1, 0]);
        assert_eq!(
            admissible_sink_sequence(&Quiver::cyclic(3).unwrap()),
            Err(Error::NoAdmissibleOrder)
        );
        assert_eq!(
            admissible_sink_sequence(&d4_sink_center()).unwrap(),
            vec![4, 0, 1, 2, 3]
        );
    }

    #[test]
    fn real_roots_examples() {
        let k = Quiver::kronecker();
        let r = positive_real_roots_below(&k, &vec![2, 2].into()).unwrap();
        let want: Vec<DimVector> = vec![vec![0, 1], vec![1, 0], vec![1, 2], vec![2, 1]]
            .into_iter()
            .map(DimVector)
            .collect();
        assert_eq!(r, want);
        assert!(positive_real_roots_below(&k, &vec![0, 0].into())
            .unwrap()
            .is_empty());
        assert_eq!(
            positive_real_roots_below(&k, &vec![1, 1].into()).unwrap().len(),
            2
        );
        // D~4 real roots below δ: 5 simples, 4 + 6 + 4 + 1 with centre
        // coordinate 1, and 4 with centre coordinate 2.
        let d4 = d4_sink_center();
        let delta = minimal_imaginary_root(&d4).unwrap();
        let roots = positive_real_roots_below(&d4, &delta).unwrap();
        assert_eq!(roots.len(), 24);
        assert!(!roots.contains(&delta));
        assert!(roots.iter().all(|r| symmetric_form(&d4, r, r) == 2));
    }

    #[test]
    fn coxeter_transform_inverts() {
        let q = d4_sink_center();
        let a: DimVector = vec![1, 0, 2, 1, 3].into();
        let c = coxeter_transform(&q, &a).unwrap();
        assert_eq!(coxeter_transform_inverse(&q, &c).unwrap(), a);
    }

    fn quivers() -> Vec<Quiver> {
        vec![
            Quiver::kronecker(),
            d4_sink_center(),
            Quiver::new(
                &["1", "2", "3"],
                &[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")],
            )
            .unwrap(),
            Quiver::cyclic(3).unwrap(),
            e6(),
        ]
    }

    proptest! {
        #[test]
        fn symmetrized_euler_is_cartan(qi in 0usize..5, a in prop::collection::vec(-4i64..5, 7), b in prop::collection::vec(-4i64..5, 7)) {
            let q = &quivers()[qi];
            let n = q.vertex_count();
            let a = DimVector(a[..n].to_vec());
            let b = DimVector(b[..n].to_vec());
            let c = cartan_matrix(q);
            let mut quad = 0;
            for i in 0..n { for j in 0..n { quad += a.get(i) * c[i][j] * b.get(j); } }
            prop_assert_eq!(symmetric_form(q, &a, &b), quad);
            for i in 0..n {
                prop_assert_eq!(cartan_matrix(&reflect_quiver(q, i).unwrap()), c.clone());
                prop_assert_eq!(weyl_reflect(q, i, &weyl_reflect(q, i, &a)), a.clone());
            }
        }

        #[test]
        fn delta_is_radical(qi in 0usize..5) {
            let q = &quivers()[qi];
            let d = minimal_imaginary_root(q).unwrap();
            prop_assert_eq!(euler_form(q, &d, &d).unwrap(), 0);
            for i in 0..q.vertex_count() {
                prop_assert_eq!(weyl_reflect(q, i, &d), d.clone());
            }
        }
    }
}
