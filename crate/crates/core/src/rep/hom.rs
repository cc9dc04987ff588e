use super::Representation;
use crate::error::Result;
use crate::exactfield::{Field, Matrix};

/// A vertex-indexed family of linear maps `f_i: M_i → N_i`.
pub type Morphism = Vec<Matrix>;

/// A basis of `Hom_Q(M, N)`.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub basis: Vec<Morphism>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `Σ c_k · basis[k]`.
    pub fn combine(&self, field: Field, coeffs: &[crate::exactfield::Scalar], shapes: &[(usize, usize)]) -> Morphism {
        let mut out: Morphism = shapes
            .iter()
            .map(|&(r, c)| Matrix::zeros(field, r, c))
            .collect();
        for (b, c) in self.basis.iter().zip(coeffs) {
            if field.is_zero(c) {
                continue;
            }
            for (o, m) in out.iter_mut().zip(b) {
                *o = o.add(&m.scale(c));
            }
        }
        out
    }
}

/// Matrix of `(f_i) ↦ (f_{h(ω)} x_ω − y_ω f_{t(ω)})_ω`, from
/// `⊕_i Hom(M_i, N_i)` to `⊕_ω Hom(M_{t(ω)}, N_{h(ω)})`. Unknowns are the
/// entries of each `f_i` in row-major order, vertex by vertex; equations are
/// the entries of each arrow's target block, arrow by arrow.
pub(crate) fn standard_complex(m: &Representation, n: &Representation) -> Matrix {
    let f = m.field();
    let q = m.quiver();
    let md = m.dims();
    let nd = n.dims();
    let mut var_off = Vec::with_capacity(md.len());
    let mut acc = 0;
    for i in 0..md.len() {
        var_off.push(acc);
        acc += nd[i] * md[i];
    }
    let nvars = acc;
    let neqs: usize = q.arrows().iter().map(|a| nd[a.head] * md[a.tail]).sum();
    let mut c = Matrix::zeros(f, neqs, nvars);
    let mut row = 0;
    for (k, a) in q.arrows().iter().enumerate() {
        let (t, h) = (a.tail, a.head);
        let x = m.map(k);
        let y = n.map(k);
        for r in 0..nd[h] {
            for col in 0..md[t] {
                let eq = row + r * md[t] + col;
                // f_h x: Σ_j f_h[r][j] x[j][col]
                for j in 0..md[h] {
                    let var = var_off[h] + r * md[h] + j;
                    let v = f.add(c.get(eq, var), x.get(j, col));
                    c.set(eq, var, v);
                }
                // − y f_t: Σ_j y[r][j] f_t[j][col]
                for j in 0..nd[t] {
                    let var = var_off[t] + j * md[t] + col;
                    let v = f.sub(c.get(eq, var), y.get(r, j));
                    c.set(eq, var, v);
                }
            }
        }
        row += nd[h] * md[t];
    }
    c
}

fn unflatten_vertices(f: Field, v: &[crate::exactfield::Scalar], m: &[usize], n: &[usize]) -> Morphism {
    let mut off = 0;
    let mut out = Vec::with_capacity(m.len());
    for i in 0..m.len() {
        let len = n[i] * m[i];
        out.push(Matrix::from_vec(f, n[i], m[i], v[off..off + len].to_vec()).unwrap());
        off += len;
    }
    out
}

/// A basis of the space of intertwiners `f` with `f_{h(ω)} x_ω = y_ω f_{t(ω)}`.
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<HomBasis> {
    m.check_compatible(n)?;
    let c = standard_complex(m, n);
    let k = c.kernel_basis();
    let basis = (0..k.cols())
        .map(|j| unflatten_vertices(m.field(), &k.column(j), m.dims(), n.dims()))
        .collect();
    Ok(HomBasis { basis })
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    m.check_compatible(n)?;
    Ok(standard_complex(m, n).nullity())
}

pub fn end_dim(m: &Representation) -> Result<usize> {
    hom_dim(m, m)
}

/// `dim Ext¹(M, N)` as the cokernel dimension of the standard two-term complex.
pub fn ext1_dim(m: &Representation, n: &Representation) -> Result<usize> {
    m.check_compatible(n)?;
    let c = standard_complex(m, n);
    Ok(c.rows() - c.rank())
}

/// Cocycles `(d_ω: M_{t(ω)} → N_{h(ω)})_ω` whose classes form a basis of
/// `Ext¹(M, N)`: the standard basis vectors of the target space that are not
/// pivot positions of the echelonized image, in increasing order.
pub fn ext1_basis(m: &Representation, n: &Representation) -> Result<Vec<Morphism>> {
    m.check_compatible(n)?;
    let f = m.field();
    let c = standard_complex(m, n);
    let (_, pivots) = c.transpose().rref();
    let q = m.quiver();
    let mut out = Vec::new();
    for k in (0..c.rows()).filter(|k| !pivots.contains(k)) {
        let mut off = 0;
        let mut cocycle = Vec::with_capacity(q.arrows().len());
        for a in q.arrows() {
            let (r, cc) = (n.dims()[a.head], m.dims()[a.tail]);
            let mut d = Matrix::zeros(f, r, cc);
            if k >= off && k < off + r * cc {
                let local = k - off;
                d.set(local / cc, local % cc, f.one());
            }
            off += r * cc;
            cocycle.push(d);
        }
        out.push(cocycle);
    }
    Ok(out)
}

/// The extension `0 → sub → E → quot → 0` with `E_i = sub_i ⊕ quot_i` and
/// arrow matrices `[[y_ω, d_ω], [0, x_ω]]`.
pub fn extension(
    quot: &Representation,
    sub: &Representation,
    cocycle: &[Matrix],
) -> Result<Representation> {
    quot.check_compatible(sub)?;
    let f = quot.field();
    let q = quot.quiver();
    let dims: Vec<usize> = quot.dims().iter().zip(sub.dims()).map(|(a, b)| a + b).collect();
    let mut maps = Vec::with_capacity(q.arrows().len());
    for (k, a) in q.arrows().iter().enumerate() {
        let (sh, st) = (sub.dims()[a.head], sub.dims()[a.tail]);
        let mut e = Matrix::zeros(f, dims[a.head], dims[a.tail]);
        e.paste(0, 0, sub.map(k));
        e.paste(0, st, &cocycle[k]);
        e.paste(sh, st, quot.map(k));
        maps.push(e);
    }
    Representation::new(quot.quiver_arc().clone(), f, dims, maps)
}

/// Whether `f` intertwines `m` and `n`.
pub fn is_morphism(m: &Representation, n: &Representation, f: &[Matrix]) -> bool {
    m.quiver().arrows().iter().enumerate().all(|(k, a)| {
        f[a.head].mul(m.map(k)) == n.map(k).mul(&f[a.tail])
    })
}
