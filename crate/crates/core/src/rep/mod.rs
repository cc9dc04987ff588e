//! Representations of quivers over exact fields.

mod decompose;
mod hom;
mod iso;
mod json;

use std::sync::Arc;

use rand::Rng;

use crate::error::{usage, Error, Result};
use crate::exactfield::{Field, Matrix};
use crate::quiver::{DimVector, Quiver};

pub use decompose::{indecompose, is_indecomposable};
pub use hom::{
    end_dim, ext1_basis, ext1_dim, extension, hom_basis, hom_dim, is_morphism, HomBasis,
    Morphism,
};
pub use iso::is_isomorphic;
pub use json::{field_from_json, field_to_json};

/// A representation `(V, x)`: a space `V_i` per vertex (recorded by its
/// dimension) and a matrix `x_ω: V_{t(ω)} → V_{h(ω)}` per arrow, of shape
/// `dims[h] × dims[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    quiver: Arc<Quiver>,
    field: Field,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Representation {
    pub fn new(
        quiver: Arc<Quiver>,
        field: Field,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Representation> {
        if dims.len() != quiver.vertex_count() {
            return usage(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                quiver.vertex_count()
            ));
        }
        if maps.len() != quiver.arrows().len() {
            return usage(format!(
                "{} maps for {} arrows",
                maps.len(),
                quiver.arrows().len()
            ));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            if m.shape() != (dims[a.head], dims[a.tail]) {
                return usage(format!(
                    "map for arrow `{}` has shape {:?}, expected {:?}",
                    a.id,
                    m.shape(),
                    (dims[a.head], dims[a.tail])
                ));
            }
            if m.field() != field {
                return usage(format!("map for arrow `{}` is over {}", a.id, m.field()));
            }
        }
        Ok(Representation {
            quiver,
            field,
            dims,
            maps,
        })
    }

    pub fn zero(quiver: Arc<Quiver>, field: Field) -> Representation {
        let dims = vec![0; quiver.vertex_count()];
        Representation::with_dims_zero_maps(quiver, field, dims)
    }

    pub fn with_dims_zero_maps(quiver: Arc<Quiver>, field: Field, dims: Vec<usize>) -> Representation {
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(field, dims[a.head], dims[a.tail]))
            .collect();
        Representation {
            quiver,
            field,
            dims,
            maps,
        }
    }

    /// The simple `S_i`.
    pub fn simple(quiver: Arc<Quiver>, i: usize, field: Field) -> Result<Representation> {
        if i >= quiver.vertex_count() {
            return Err(Error::UnknownVertex(i.to_string()));
        }
        let mut dims = vec![0; quiver.vertex_count()];
        dims[i] = 1;
        Ok(Representation::with_dims_zero_maps(quiver, field, dims))
    }

    /// Uniformly random maps of the given dimension vector.
    pub fn random<R: Rng + ?Sized>(
        quiver: Arc<Quiver>,
        field: Field,
        dims: Vec<usize>,
        rng: &mut R,
    ) -> Representation {
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::random(field, dims[a.head], dims[a.tail], rng))
            .collect();
        Representation {
            quiver,
            field,
            dims,
            maps,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn quiver_arc(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector(self.dims.iter().map(|&d| d as i64).collect())
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    /// The same data over another quiver with identical arrow ids, tails and
    /// heads (used to land back on the original `Arc` after reflections).
    pub fn with_quiver(&self, quiver: Arc<Quiver>) -> Result<Representation> {
        if *quiver != *self.quiver {
            return usage("replacement quiver differs");
        }
        Ok(Representation {
            quiver,
            ..self.clone()
        })
    }

    pub(crate) fn check_compatible(&self, other: &Representation) -> Result<()> {
        if self.quiver != other.quiver && *self.quiver != *other.quiver {
            return usage("representations live on different quivers");
        }
        if self.field != other.field {
            return usage(format!(
                "representations over different fields: {} vs {}",
                self.field, other.field
            ));
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        self.check_compatible(other)?;
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| Matrix::block_diag(self.field, &[a, b]))
            .collect();
        Ok(Representation {
            quiver: self.quiver.clone(),
            field: self.field,
            dims,
            maps,
        })
    }

    /// Direct sum of `reps[k]` repeated `mult[k]` times.
    pub fn direct_sum_all(
        quiver: Arc<Quiver>,
        field: Field,
        parts: &[(&Representation, usize)],
    ) -> Result<Representation> {
        let mut acc = Representation::zero(quiver, field);
        for (r, m) in parts {
            for _ in 0..*m {
                acc = acc.direct_sum(r)?;
            }
        }
        Ok(acc)
    }

    /// Block-diagonal matrix of a vertex-indexed family acting on `⊕ V_i`.
    pub fn total_matrix(&self, comps: &[Matrix]) -> Matrix {
        let refs: Vec<&Matrix> = comps.iter().collect();
        Matrix::block_diag(self.field, &refs)
    }

    /// The subrepresentation spanned at each vertex by the columns of
    /// `bases[i]` (which must be linearly independent).
    pub fn subrep(&self, bases: &[Matrix]) -> Result<Representation> {
        let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
        let mut maps = Vec::with_capacity(self.maps.len());
        for (a, x) in self.quiver.arrows().iter().zip(&self.maps) {
            let image = x.mul(&bases[a.tail]);
            let y = bases[a.head].solve(&image)?.ok_or_else(|| {
                Error::Usage(format!("subspace not stable under arrow `{}`", a.id))
            })?;
            maps.push(y);
        }
        Representation::new(self.quiver.clone(), self.field, dims, maps)
    }

    /// Whether the graded subspace spanned by `bases` is stable under every map.
    pub fn is_stable(&self, bases: &[Matrix]) -> bool {
        self.quiver.arrows().iter().zip(&self.maps).all(|(a, x)| {
            let image = x.mul(&bases[a.tail]);
            let h = &bases[a.head];
            let joined = Matrix::hstack(self.field, h.rows(), &[h, &image]);
            joined.rank() == h.rank()
        })
    }

    /// Quotient by the stable graded subspace spanned by `bases`, together
    /// with the projections `V_i → V_i / U_i` realizing it.
    pub fn quotient(&self, bases: &[Matrix]) -> Result<(Representation, Vec<Matrix>)> {
        if !self.is_stable(bases) {
            return usage("quotient by a non-stable subspace");
        }
        let mut projs = Vec::with_capacity(bases.len());
        let mut sections = Vec::with_capacity(bases.len());
        for b in bases {
            let comp = complement(b);
            let full = Matrix::hstack(self.field, b.rows(), &[b, &comp]);
            let inv = full
                .inverse()
                .ok_or_else(|| Error::Usage("subspace basis is not independent".into()))?;
            projs.push(inv.submatrix(b.cols(), comp.cols(), 0, b.rows()));
            sections.push(comp);
        }
        let mut maps = Vec::with_capacity(self.maps.len());
        for (a, x) in self.quiver.arrows().iter().zip(&self.maps) {
            maps.push(projs[a.head].mul(x).mul(&sections[a.tail]));
        }
        let dims = projs.iter().map(|p| p.rows()).collect();
        Ok((
            Representation::new(self.quiver.clone(), self.field, dims, maps)?,
            projs,
        ))
    }

    /// Every long enough path composite vanishes. Computed through the
    /// increasing chain `W_{k+1} = {v : x_ω v ∈ W_k for all ω}` starting at 0,
    /// which exhausts `V` exactly when the representation is nilpotent.
    pub fn is_nilpotent(&self) -> bool {
        let f = self.field;
        let n = self.quiver.vertex_count();
        let mut w: Vec<Matrix> = (0..n).map(|i| Matrix::zeros(f, self.dims[i], 0)).collect();
        loop {
            let proj: Vec<Matrix> = w.iter().map(|b| b.cokernel_projection()).collect();
            let mut next = Vec::with_capacity(n);
            for i in 0..n {
                let blocks: Vec<Matrix> = self
                    .quiver
                    .arrows()
                    .iter()
                    .zip(&self.maps)
                    .filter(|(a, _)| a.tail == i)
                    .map(|(a, x)| proj[a.head].mul(x))
                    .collect();
                let refs: Vec<&Matrix> = blocks.iter().collect();
                let stacked = Matrix::vstack(f, self.dims[i], &refs);
                next.push(stacked.kernel_basis());
            }
            let grew = next.iter().zip(&w).any(|(a, b)| a.cols() > b.cols());
            w = next;
            if !grew {
                break;
            }
        }
        w.iter().zip(&self.dims).all(|(b, &d)| b.cols() == d)
    }
}

/// Standard basis vectors completing the columns of `b` to a basis: those
/// outside the pivot positions of the echelonized column span.
pub(crate) fn complement(b: &Matrix) -> Matrix {
    let f = b.field();
    let (_, pivots) = b.transpose().rref();
    let cols: Vec<Vec<crate::exactfield::Scalar>> = (0..b.rows())
        .filter(|k| !pivots.contains(k))
        .map(|k| {
            (0..b.rows())
                .map(|r| if r == k { f.one() } else { f.zero() })
                .collect()
        })
        .collect();
    Matrix::from_columns(f, b.rows(), &cols)
}

/// `|V|`.
pub fn dim_vector(m: &Representation) -> DimVector {
    m.dim_vector()
}

/// `dim G_V − dim End(V, x)`: the dimension of the orbit of `x` in `E_{V,Ω}`.
pub fn orbit_dim(m: &Representation) -> Result<usize> {
    let g: usize = m.dims().iter().map(|d| d * d).sum();
    Ok(g - end_dim(m)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kron() -> Arc<Quiver> {
        Arc::new(Quiver::kronecker())
    }

    #[test]
    fn dim_vectors() {
        let f = Field::prime(5).unwrap();
        let s = Representation::simple(kron(), 0, f).unwrap();
        assert_eq!(s.dim_vector(), DimVector(vec![1, 0]));
        let t = Representation::simple(kron(), 1, f).unwrap();
        assert_eq!(s.direct_sum(&t).unwrap().dim_vector(), DimVector(vec![1, 1]));
        let r = Representation::with_dims_zero_maps(kron(), f, vec![2, 3]);
        assert_eq!(dim_vector(&r), DimVector(vec![2, 3]));
    }

    #[test]
    fn shape_checked() {
        let f = Field::prime(5).unwrap();
        let bad = Representation::new(
            kron(),
            f,
            vec![1, 1],
            vec![Matrix::zeros(f, 1, 1), Matrix::zeros(f, 2, 1)],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn nilpotency() {
        let f = Field::prime(5).unwrap();
        let mut rng = rand::thread_rng();
        let r = Representation::random(kron(), f, vec![2, 2], &mut rng);
        assert!(r.is_nilpotent());
        let c2 = Arc::new(Quiver::cyclic(2).unwrap());
        let id = Matrix::identity(f, 1);
        let cyc = Representation::new(c2.clone(), f, vec![1, 1], vec![id.clone(), id]).unwrap();
        assert!(!cyc.is_nilpotent());
        let s0 = Representation::simple(c2.clone(), 0, f).unwrap();
        assert!(s0.is_nilpotent());
        // one nonzero arrow only: nilpotent
        let half = Representation::new(
            c2,
            f,
            vec![1, 1],
            vec![Matrix::identity(f, 1), Matrix::zeros(f, 1, 1)],
        )
        .unwrap();
        assert!(half.is_nilpotent());
    }

    #[test]
    fn orbit_dims() {
        let f = Field::prime(5).unwrap();
        assert_eq!(orbit_dim(&Representation::zero(kron(), f)).unwrap(), 0);
        let one = Matrix::identity(f, 1);
        let pencil = Representation::new(
            kron(),
            f,
            vec![1, 1],
            vec![one.clone(), one.scale(&f.from_i64(3))],
        )
        .unwrap();
        assert_eq!(orbit_dim(&pencil).unwrap(), 1);
        let s = Representation::simple(kron(), 0, f).unwrap();
        let t = Representation::simple(kron(), 1, f).unwrap();
        assert_eq!(orbit_dim(&s.direct_sum(&t).unwrap()).unwrap(), 0);
    }

    #[test]
    fn quotient_and_sub() {
        let f = Field::Rational;
        let q = Arc::new(Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap());
        let p = Representation::new(q.clone(), f, vec![1, 1], vec![Matrix::identity(f, 1)]).unwrap();
        let bases = vec![Matrix::zeros(f, 1, 0), Matrix::identity(f, 1)];
        let sub = p.subrep(&bases).unwrap();
        assert_eq!(sub.dims(), &[0, 1]);
        let (quo, _) = p.quotient(&bases).unwrap();
        assert_eq!(quo.dims(), &[1, 0]);
        let bad = vec![Matrix::identity(f, 1), Matrix::zeros(f, 1, 0)];
        assert!(p.subrep(&bad).is_err());
    }
}
