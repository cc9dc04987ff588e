use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{usage, Error, Result};
use crate::exactfield::{Field, Matrix};
use crate::quiver::Quiver;
use crate::rep::Representation;

/// A representation `(𝕍, θ)` of the cyclic quiver `C_p`; `θ_z` is the map on
/// the arrow `z → z−1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicRep {
    rep: Representation,
}

fn cyclic_quiver(p: usize) -> Result<Arc<Quiver>> {
    Ok(Arc::new(Quiver::cyclic(p)?))
}

impl CyclicRep {
    pub fn new(p: usize, f: Field, dims: Vec<usize>, thetas: Vec<Matrix>) -> Result<CyclicRep> {
        Ok(CyclicRep {
            rep: Representation::new(cyclic_quiver(p)?, f, dims, thetas)?,
        })
    }

    pub fn zero(p: usize, f: Field) -> Result<CyclicRep> {
        Ok(CyclicRep {
            rep: Representation::zero(cyclic_quiver(p)?, f),
        })
    }

    pub fn from_rep(rep: Representation) -> Result<CyclicRep> {
        let p = rep.quiver().vertex_count();
        if p < 2 || *rep.quiver() != Quiver::cyclic(p)? {
            return usage("representation is not over the standard cyclic quiver");
        }
        Ok(CyclicRep { rep })
    }

    pub fn period(&self) -> usize {
        self.rep.quiver().vertex_count()
    }

    pub fn field(&self) -> Field {
        self.rep.field()
    }

    pub fn dims(&self) -> &[usize] {
        self.rep.dims()
    }

    pub fn theta(&self, z: usize) -> &Matrix {
        self.rep.map(z)
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn is_nilpotent(&self) -> bool {
        self.rep.is_nilpotent()
    }

    pub fn direct_sum(&self, o: &CyclicRep) -> Result<CyclicRep> {
        Ok(CyclicRep {
            rep: self.rep.direct_sum(&o.rep)?,
        })
    }

    /// Composite of `m` consecutive maps starting at vertex `j`:
    /// `V_j → V_{j−1} → ⋯ → V_{j−m}`.
    fn path(&self, j: usize, m: usize) -> Matrix {
        let p = self.period();
        let f = self.field();
        let mut acc = Matrix::identity(f, self.dims()[j]);
        let mut v = j;
        for _ in 0..m {
            acc = self.theta(v).mul(&acc);
            v = (v + p - 1) % p;
        }
        acc
    }

    /// Multiplicity of each `s_{z,l}` in the Krull–Schmidt decomposition,
    /// read off the ranks of path composites.
    pub fn segment_multiplicities(&self) -> Result<BTreeMap<(usize, usize), usize>> {
        if !self.is_nilpotent() {
            return usage("segment decomposition needs a nilpotent representation");
        }
        let p = self.period();
        let n = self.rep.total_dim();
        // c[j][m] = #summands with socle j − m and length ≥ m + 1
        let mut rank = vec![vec![0usize; n + 2]; p];
        for (j, row) in rank.iter_mut().enumerate() {
            for (m, r) in row.iter_mut().enumerate() {
                *r = self.path(j, m).rank();
            }
        }
        let c = |j: usize, m: usize| -> usize { rank[j % p][m] - rank[j % p][m + 1] };
        let mut out = BTreeMap::new();
        for z in 0..p {
            for l in 1..=n {
                let k = c(z + l - 1, l - 1) - c(z + l, l);
                if k > 0 {
                    out.insert((z, l), k);
                }
            }
        }
        Ok(out)
    }
}

/// Dimension vector of `s_{z,l}`: one for each of `z, z+1, …, z+l−1` mod `p`.
pub fn segment_dims(p: usize, z: usize, l: usize) -> Vec<usize> {
    let mut d = vec![0; p];
    for k in 0..l {
        d[(z + k) % p] += 1;
    }
    d
}

pub fn cyclic_simple(p: usize, z: usize, f: Field) -> Result<CyclicRep> {
    cyclic_indec(p, z, 1, f)
}

/// `t_λ`: every space one-dimensional, every map the identity except `λ` on
/// the arrow `0 → p−1`.
pub fn cyclic_t_lambda(p: usize, lambda: &crate::exactfield::Scalar, f: Field) -> Result<CyclicRep> {
    if f.is_zero(lambda) {
        return usage("t_λ needs λ ≠ 0");
    }
    let mut thetas: Vec<Matrix> = (0..p).map(|_| Matrix::identity(f, 1)).collect();
    thetas[0] = Matrix::scalar(f, 1, lambda);
    CyclicRep::new(p, f, vec![1; p], thetas)
}

/// `s_{z,l}`: basis `b_0, …, b_{l−1}` with `b_k` at vertex `z+k` and
/// `b_k ↦ b_{k−1}`, `b_0 ↦ 0`; socle `s_z`, length `l`.
pub fn cyclic_indec(p: usize, z: usize, l: usize, f: Field) -> Result<CyclicRep> {
    if l == 0 {
        return usage("segment length must be positive");
    }
    if z >= p {
        return Err(Error::UnknownVertex(z.to_string()));
    }
    let dims = segment_dims(p, z, l);
    // position of b_k inside its vertex space
    let mut seen = vec![0usize; p];
    let pos: Vec<usize> = (0..l)
        .map(|k| {
            let v = (z + k) % p;
            seen[v] += 1;
            seen[v] - 1
        })
        .collect();
    let mut thetas: Vec<Matrix> = (0..p)
        .map(|v| Matrix::zeros(f, dims[(v + p - 1) % p], dims[v]))
        .collect();
    for k in 1..l {
        let v = (z + k) % p;
        thetas[v].set(pos[k - 1], pos[k], f.one());
    }
    CyclicRep::new(p, f, dims, thetas)
}

/// Aperiodicity of a nilpotent cyclic representation: for every length
/// `l`, some socle class `z` has no `s_{z,l}` summand.
pub fn is_aperiodic_cyclic(m: &CyclicRep) -> Result<bool> {
    let mult = m.segment_multiplicities()?;
    let p = m.period();
    let mut per_len: BTreeMap<usize, usize> = BTreeMap::new();
    for &(_, l) in mult.keys() {
        *per_len.entry(l).or_default() += 1;
    }
    Ok(per_len.values().all(|&k| k < p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{hom_dim, is_indecomposable};

    fn f() -> Field {
        Field::prime(7).unwrap()
    }

    #[test]
    fn segments() {
        let s = cyclic_simple(3, 1, f()).unwrap();
        assert_eq!(s.dims(), &[0, 1, 0]);
        assert_eq!(cyclic_indec(3, 1, 1, f()).unwrap(), s);
        let m = cyclic_indec(2, 0, 5, f()).unwrap();
        assert_eq!(m.dims(), &[3, 2]);
        assert!(m.is_nilpotent());
        assert!(is_indecomposable(m.rep(), 0).unwrap());
        let soc = cyclic_simple(2, 0, f()).unwrap();
        assert_eq!(hom_dim(soc.rep(), m.rep()).unwrap(), 1);
        let top = cyclic_simple(2, 1, f()).unwrap();
        assert_eq!(hom_dim(soc.rep(), top.rep()).unwrap(), 0);
        let t = cyclic_t_lambda(3, &f().from_i64(2), f()).unwrap();
        assert!(!t.is_nilpotent());
        assert!(cyclic_t_lambda(3, &f().zero(), f()).is_err());
    }

    #[test]
    fn multiplicities_from_ranks() {
        let p = 3;
        let parts = [(0, 2), (0, 2), (1, 4), (2, 1), (2, 3)];
        let mut m = CyclicRep::zero(p, f()).unwrap();
        for &(z, l) in &parts {
            m = m.direct_sum(&cyclic_indec(p, z, l, f()).unwrap()).unwrap();
        }
        let mult = m.segment_multiplicities().unwrap();
        let expect: BTreeMap<(usize, usize), usize> =
            [((0, 2), 2), ((1, 4), 1), ((2, 1), 1), ((2, 3), 1)].into_iter().collect();
        assert_eq!(mult, expect);
    }

    #[test]
    fn aperiodicity_examples() {
        let s0 = cyclic_simple(2, 0, f()).unwrap();
        let s1 = cyclic_simple(2, 1, f()).unwrap();
        assert!(is_aperiodic_cyclic(&s0).unwrap());
        assert!(!is_aperiodic_cyclic(&s0.direct_sum(&s1).unwrap()).unwrap());
        let s02 = cyclic_indec(2, 0, 2, f()).unwrap();
        assert!(is_aperiodic_cyclic(&s02.direct_sum(&s0).unwrap()).unwrap());
    }
}
