//! Tubes of an acyclic affine quiver, the cyclic quiver categories they are
//! modelled on, and the Hall functor between them.

mod cyclic;

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::error::{usage, Error, Result};
use crate::exactfield::{Field, Matrix};
use crate::functors::{coxeter_minus, coxeter_plus};
use crate::quiver::{defect, minimal_imaginary_root, positive_real_roots_below, DimVector, Quiver};
use crate::rep::{
    end_dim, ext1_basis, ext1_dim, extension, hom_dim, indecompose, is_isomorphic, Representation,
};

pub use cyclic::{
    cyclic_indec, cyclic_simple, cyclic_t_lambda, is_aperiodic_cyclic, segment_dims, CyclicRep,
};

const SAMPLE_BUDGET: usize = 200;

/// An inhomogeneous tube: regular simples `R_0, …, R_{p−1}` with
/// `R_{z+1} = Φ⁻ R_z` (so `Φ⁺ R_z ≅ R_{z−1}` and `Ext¹(R_z, R_{z−1}) = K`),
/// and the extension data `l_{z,ω}: R_{z,t(ω)} → R_{z−1,h(ω)}`.
#[derive(Clone, Debug)]
pub struct Tube {
    quiver: Arc<Quiver>,
    field: Field,
    simples: Vec<Representation>,
    ext_maps: Vec<Vec<Matrix>>,
}

impl Tube {
    pub fn period(&self) -> usize {
        self.simples.len()
    }

    pub fn quiver_arc(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn simples(&self) -> &[Representation] {
        &self.simples
    }

    pub fn simple(&self, z: usize) -> &Representation {
        &self.simples[z % self.period()]
    }

    /// `l_{z,ω}` indexed `[z][arrow]`; empty until [`extension_maps`] ran.
    pub fn ext_maps(&self) -> &[Vec<Matrix>] {
        &self.ext_maps
    }

    /// Dimension vector of the tube module with socle `R_z` and length `l`.
    pub fn module_dim(&self, z: usize, l: usize) -> DimVector {
        let n = self.quiver.vertex_count();
        (0..l).fold(DimVector::zero(n), |acc, k| acc.add(&self.simple(z + k).dim_vector()))
    }

    /// `F(s_{z,l})`.
    pub fn module(&self, z: usize, l: usize) -> Result<Representation> {
        hall_apply(self, &cyclic_indec(self.period(), z % self.period(), l, self.field)?)
    }

    pub fn to_json(&self) -> Value {
        let ext: Map<String, Value> = self
            .ext_maps
            .iter()
            .enumerate()
            .map(|(z, maps)| {
                let per: Map<String, Value> = self
                    .quiver
                    .arrows()
                    .iter()
                    .zip(maps)
                    .map(|(a, m)| (a.id.clone(), m.to_json()))
                    .collect();
                (z.to_string(), Value::Object(per))
            })
            .collect();
        json!({
            "period": self.period(),
            "simples": self.simples.iter().map(Representation::to_json).collect::<Vec<_>>(),
            "ext_maps": ext,
        })
    }

    pub fn from_json(v: &Value) -> Result<Tube> {
        let bad = |m: &str| Error::Parse(format!("tube: {m}"));
        let period = v.get("period").and_then(Value::as_u64).ok_or_else(|| bad("missing `period`"))? as usize;
        let raw = v.get("simples").and_then(Value::as_array).ok_or_else(|| bad("missing `simples`"))?;
        if raw.len() != period || period < 2 {
            return Err(bad("`simples` must list `period` ≥ 2 representations"));
        }
        let first = Representation::from_json(&raw[0])?;
        let quiver = first.quiver_arc().clone();
        let field = first.field();
        let mut simples = vec![first];
        for r in &raw[1..] {
            let m = Representation::from_json(r)?;
            simples.push(m.with_quiver(quiver.clone())?);
        }
        let mut ext_maps = Vec::new();
        if let Some(e) = v.get("ext_maps").and_then(Value::as_object) {
            if !e.is_empty() {
                for z in 0..period {
                    let per = e.get(&z.to_string()).ok_or_else(|| bad("incomplete `ext_maps`"))?;
                    let zm1 = (z + period - 1) % period;
                    let mut maps = Vec::new();
                    for a in quiver.arrows() {
                        let rows = simples[zm1].dims()[a.head];
                        let cols = simples[z].dims()[a.tail];
                        let m = per.get(&a.id).ok_or_else(|| bad("missing extension map"))?;
                        maps.push(parse_block(field, m, rows, cols)?);
                    }
                    ext_maps.push(maps);
                }
            }
        }
        Ok(Tube {
            quiver,
            field,
            simples,
            ext_maps,
        })
    }
}

fn parse_block(f: Field, v: &Value, rows: usize, cols: usize) -> Result<Matrix> {
    let rs = v.as_array().ok_or_else(|| Error::Parse("matrix must be an array".into()))?;
    if rows == 0 {
        return Ok(Matrix::zeros(f, 0, cols));
    }
    if rs.len() != rows {
        return Err(Error::Parse(format!("expected {rows} rows")));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for r in rs {
        let r = r.as_array().ok_or_else(|| Error::Parse("row must be an array".into()))?;
        if r.len() != cols {
            return Err(Error::Parse(format!("expected {cols} columns")));
        }
        for e in r {
            data.push(f.parse_entry(e)?);
        }
    }
    Matrix::from_vec(f, rows, cols, data)
}

fn sample_rigid_brick(
    q: &Arc<Quiver>,
    f: Field,
    dims: &DimVector,
    rng: &mut ChaCha8Rng,
) -> Result<Representation> {
    for _ in 0..SAMPLE_BUDGET {
        let m = Representation::random(q.clone(), f, dims.as_usize(), rng);
        if end_dim(&m)? == 1 && ext1_dim(&m, &m)? == 0 {
            return Ok(m);
        }
    }
    Err(Error::NeedsLargerField(format!(
        "no rigid brick of dimension {dims} found in {SAMPLE_BUDGET} samples over {f}"
    )))
}

/// All inhomogeneous tubes, with extension data filled in, sorted by the
/// dimension vector of `R_0` (the lexicographically least in its orbit).
pub fn find_tubes(q: &Arc<Quiver>, f: Field, seed: u64) -> Result<Vec<Tube>> {
    let delta = minimal_imaginary_root(q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates = Vec::new();
    for a in positive_real_roots_below(q, &delta)? {
        if a != delta && defect(q, &a)? == 0 {
            candidates.push(sample_rigid_brick(q, f, &a, &mut rng)?);
        }
    }
    let mut simples = Vec::new();
    for r in &candidates {
        let rd = r.dim_vector();
        let mut simple = true;
        for n in &candidates {
            let nd = n.dim_vector();
            if nd != rd && nd.le(&rd) && hom_dim(n, r)? > 0 {
                simple = false;
                break;
            }
        }
        if simple {
            simples.push(r.clone());
        }
    }
    simples.sort_by_key(|r| r.dim_vector());
    let mut used = vec![false; simples.len()];
    let mut tubes = Vec::new();
    for s in 0..simples.len() {
        if used[s] {
            continue;
        }
        used[s] = true;
        let r0 = simples[s].clone();
        let mut orbit = vec![r0.clone()];
        loop {
            let next = coxeter_minus(orbit.last().unwrap())?;
            if next.dim_vector() == r0.dim_vector() && is_isomorphic(&next, &r0, rng_seed(&mut rng))? {
                break;
            }
            let k = (0..simples.len())
                .find(|&k| !used[k] && simples[k].dim_vector() == next.dim_vector())
                .ok_or_else(|| {
                    Error::Internal(format!("Φ⁻ image {} is not a regular simple", next.dim_vector()))
                })?;
            used[k] = true;
            orbit.push(next);
            if orbit.len() > simples.len() {
                return Err(Error::Internal("regular simple orbit does not close".into()));
            }
        }
        let total = orbit
            .iter()
            .fold(DimVector::zero(q.vertex_count()), |acc, r| acc.add(&r.dim_vector()));
        if orbit.len() < 2 || total != delta {
            return Err(Error::Internal(format!(
                "orbit of {} has period {} and total dimension {total}",
                r0.dim_vector(),
                orbit.len()
            )));
        }
        let t = Tube {
            quiver: q.clone(),
            field: f,
            simples: orbit,
            ext_maps: Vec::new(),
        };
        tubes.push(extension_maps(&t)?);
    }
    Ok(tubes)
}

fn rng_seed(rng: &mut ChaCha8Rng) -> u64 {
    use rand::Rng;
    rng.gen()
}

/// Fills `l_{z,ω}` from the first basis cocycle of `Ext¹(R_z, R_{z−1})`.
pub fn extension_maps(t: &Tube) -> Result<Tube> {
    let p = t.period();
    let mut ext = Vec::with_capacity(p);
    for z in 0..p {
        let (rz, rzm1) = (t.simple(z), t.simple(z + p - 1));
        let basis = ext1_basis(rz, rzm1)?;
        if basis.len() != 1 {
            return Err(Error::Internal(format!(
                "Ext¹(R_{z}, R_{}) has dimension {}",
                (z + p - 1) % p,
                basis.len()
            )));
        }
        let e = extension(rz, rzm1, &basis[0])?;
        if end_dim(&e)? != 1 {
            return Err(Error::Internal(format!("extension E_{z} splits")));
        }
        ext.push(basis.into_iter().next().unwrap());
    }
    Ok(Tube {
        ext_maps: ext,
        ..t.clone()
    })
}

/// `F(𝕍, θ)_i = ⊕_z 𝕍_z ⊗ R_{z,i}` with arrow maps
/// `I_{𝕍_z} ⊗ r_{z,ω}` on the diagonal and `θ_z ⊗ l_{z,ω}` from the `z`
/// block to the `z−1` block.
pub fn hall_apply(t: &Tube, m: &CyclicRep) -> Result<Representation> {
    let p = t.period();
    if m.period() != p {
        return usage(format!("cyclic representation has period {}, tube has {p}", m.period()));
    }
    if m.field() != t.field {
        return usage("cyclic representation and tube are over different fields");
    }
    if t.ext_maps.len() != p {
        return usage("tube has no extension maps");
    }
    let f = t.field;
    let q = &t.quiver;
    let n = q.vertex_count();
    // offsets[i][z]: start of the 𝕍_z ⊗ R_{z,i} block in F(𝕍)_i
    let mut offsets = vec![vec![0usize; p]; n];
    let mut dims = vec![0usize; n];
    for i in 0..n {
        for z in 0..p {
            offsets[i][z] = dims[i];
            dims[i] += m.dims()[z] * t.simples[z].dims()[i];
        }
    }
    let mut maps = Vec::with_capacity(q.arrows().len());
    for (k, a) in q.arrows().iter().enumerate() {
        let mut x = Matrix::zeros(f, dims[a.head], dims[a.tail]);
        for z in 0..p {
            let vz = m.dims()[z];
            let diag = Matrix::identity(f, vz).kron(t.simples[z].map(k));
            x.paste(offsets[a.head][z], offsets[a.tail][z], &diag);
            let zm1 = (z + p - 1) % p;
            let off = m.theta(z).kron(&t.ext_maps[z][k]);
            let cur = x.submatrix(offsets[a.head][zm1], off.rows(), offsets[a.tail][z], off.cols());
            x.paste(offsets[a.head][zm1], offsets[a.tail][z], &cur.add(&off));
        }
        maps.push(x);
    }
    Representation::new(q.clone(), f, dims, maps)
}

/// `F(g)` for a morphism `g = (g_z)` of cyclic representations:
/// `⊕_z g_z ⊗ I_{R_{z,i}}` at each vertex `i`.
pub fn hall_apply_morphism(t: &Tube, g: &[Matrix]) -> Vec<Matrix> {
    let f = t.field;
    (0..t.quiver.vertex_count())
        .map(|i| {
            let blocks: Vec<Matrix> = g
                .iter()
                .zip(&t.simples)
                .map(|(gz, r)| gz.kron(&Matrix::identity(f, r.dims()[i])))
                .collect();
            let refs: Vec<&Matrix> = blocks.iter().collect();
            Matrix::block_diag(f, &refs)
        })
        .collect()
}

fn tube_label(t: &Tube, n: &Representation, seed: u64) -> Result<Option<(usize, usize)>> {
    let d = n.dim_vector();
    let p = t.period();
    for z in 0..p {
        let mut l = 1;
        loop {
            let md = t.module_dim(z, l);
            if !md.le(&d) {
                break;
            }
            if md == d && is_isomorphic(&t.module(z, l)?, n, seed)? {
                return Ok(Some((z, l)));
            }
            l += 1;
        }
    }
    Ok(None)
}

/// Aperiodicity of a representation whose summands all lie in `t`: no
/// summand `N` has its whole `Φ⁺`-orbit `N, Φ⁺N, …, (Φ⁺)^{p−1}N` among the
/// summands.
pub fn is_aperiodic_tube(t: &Tube, m: &Representation, seed: u64) -> Result<bool> {
    let summands: Vec<Representation> = indecompose(m, seed)?.into_iter().map(|(r, _)| r).collect();
    for n in &summands {
        if tube_label(t, n, seed)?.is_none() {
            return usage(format!("summand of dimension {} is not in the tube", n.dim_vector()));
        }
    }
    for n in &summands {
        let mut cur = n.clone();
        let mut all = true;
        for _ in 1..t.period() {
            cur = coxeter_plus(&cur)?;
            let mut present = false;
            for s in &summands {
                if s.dims() == cur.dims() && is_isomorphic(s, &cur, seed)? {
                    present = true;
                    break;
                }
            }
            if !present {
                all = false;
                break;
            }
        }
        if all {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `dim Hom_{C_p}(m1, m2) = dim Hom_Q(F m1, F m2)`.
pub fn hom_transport_check(t: &Tube, m1: &CyclicRep, m2: &CyclicRep) -> Result<bool> {
    let lhs = hom_dim(m1.rep(), m2.rep())?;
    let rhs = hom_dim(&hall_apply(t, m1)?, &hall_apply(t, m2)?)?;
    Ok(lhs == rhs)
}

/// Dimension `δ`, `End = K`, and `Φ⁺`-fixed up to isomorphism.
pub fn is_homogeneous_simple(m: &Representation, seed: u64) -> Result<bool> {
    let delta = minimal_imaginary_root(m.quiver())?;
    if m.dim_vector() != delta || end_dim(m)? != 1 {
        return Ok(false);
    }
    is_isomorphic(&coxeter_plus(m)?, m, seed)
}

/// `count` pairwise nonisomorphic certified homogeneous regular simples,
/// found by sampling `δ`-dimensional representations.
pub fn sample_homogeneous_simples(
    q: &Arc<Quiver>,
    f: Field,
    count: usize,
    seed: u64,
) -> Result<Vec<Representation>> {
    let delta = minimal_imaginary_root(q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Representation> = Vec::with_capacity(count);
    let budget = SAMPLE_BUDGET * (count + 1);
    for _ in 0..budget {
        if out.len() == count {
            break;
        }
        let m = Representation::random(q.clone(), f, delta.as_usize(), &mut rng);
        let s = rng_seed(&mut rng);
        if !is_homogeneous_simple(&m, s)? {
            continue;
        }
        let mut fresh = true;
        for o in &out {
            if is_isomorphic(o, &m, s)? {
                fresh = false;
                break;
            }
        }
        if fresh {
            out.push(m);
        }
    }
    if out.len() < count {
        return Err(Error::NeedsLargerField(format!(
            "found only {} of {count} pairwise nonisomorphic homogeneous simples over {f}",
            out.len()
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f17() -> Field {
        Field::prime(17).unwrap()
    }

    fn a2_tilde() -> Arc<Quiver> {
        Arc::new(Quiver::new(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")]).unwrap())
    }

    #[test]
    fn kronecker_has_no_tubes() {
        let q = Arc::new(Quiver::kronecker());
        assert!(find_tubes(&q, f17(), 1).unwrap().is_empty());
    }

    #[test]
    fn a2_tilde_tube() {
        let q = a2_tilde();
        let tubes = find_tubes(&q, f17(), 1).unwrap();
        assert_eq!(tubes.len(), 1);
        let t = &tubes[0];
        assert_eq!(t.period(), 2);
        for z in 0..2 {
            let r = t.simple(z);
            assert_eq!(hom_dim(r, r).unwrap(), 1);
            assert_eq!(hom_dim(r, t.simple(z + 1)).unwrap(), 0);
            assert_eq!(ext1_dim(r, t.simple(z + 1)).unwrap(), 1);
            let s = cyclic_simple(2, z, f17()).unwrap();
            assert_eq!(&hall_apply(t, &s).unwrap(), r);
        }
    }

    #[test]
    fn period_three_tube_indexing() {
        // Ã₃ with three arrows one way and one the other: tubes of periods 3 and 1
        let q = Arc::new(
            Quiver::new(
                &["1", "2", "3", "4"],
                &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4"), ("d", "1", "4")],
            )
            .unwrap(),
        );
        let tubes = find_tubes(&q, f17(), 2).unwrap();
        assert_eq!(tubes.len(), 1);
        let t = &tubes[0];
        assert_eq!(t.period(), 3);
        for z in 0..3 {
            for w in 0..3 {
                let e = ext1_dim(t.simple(z), t.simple(w)).unwrap();
                assert_eq!(e, usize::from((z + 3 - 1) % 3 == w), "Ext¹(R_{z}, R_{w})");
            }
            assert!(is_isomorphic(&coxeter_plus(t.simple(z)).unwrap(), t.simple(z + 2), 0).unwrap());
        }
        for z in 0..3 {
            for l in 1..=4 {
                let m = t.module(z, l).unwrap();
                assert_eq!(m.dim_vector(), t.module_dim(z, l));
                assert_eq!(end_dim(&m).unwrap(), 1 + (l - 1) / 3);
            }
        }
    }

    #[test]
    fn homogeneous_sampling() {
        let q = Arc::new(Quiver::kronecker());
        let hs = sample_homogeneous_simples(&q, Field::prime(5).unwrap(), 3, 0).unwrap();
        assert_eq!(hs.len(), 3);
        // only 6 points of P¹(F₅) exist
        assert!(matches!(
            sample_homogeneous_simples(&q, Field::prime(5).unwrap(), 7, 0),
            Err(Error::NeedsLargerField(_))
        ));
    }

    #[test]
    fn json_roundtrip() {
        let t = &find_tubes(&a2_tilde(), f17(), 1).unwrap()[0];
        let back = Tube::from_json(&t.to_json()).unwrap();
        assert_eq!(back.simples(), t.simples());
        assert_eq!(back.ext_maps(), t.ext_maps());
    }
}
