//! BGP reflection functors, Coxeter functors, standard modules and the
//! classification of indecomposables of an acyclic affine quiver.

use std::fmt;
use std::sync::Arc;

use crate::error::{usage, Error, Result};
use crate::exactfield::{Field, Matrix};
use crate::quiver::{admissible_sink_sequence, defect, reflect_quiver, Quiver};
use crate::rep::{is_indecomposable, is_isomorphic, Representation};

pub fn simple_rep(q: &Arc<Quiver>, i: usize, f: Field) -> Result<Representation> {
    Representation::simple(q.clone(), i, f)
}

/// `Φ_i^+` at a sink `i`: the new space at `i` is the kernel of
/// `⊕_{h(ω)=i} V_{t(ω)} → V_i`, and each reversed arrow carries the
/// corresponding coordinate projection. The result lives on `σ_i q`.
pub fn reflection_plus(i: usize, m: &Representation) -> Result<Representation> {
    let q = m.quiver();
    if i >= q.vertex_count() {
        return Err(Error::UnknownVertex(i.to_string()));
    }
    if !q.is_sink(i) {
        return Err(Error::NotSink(q.vertex_name(i).to_string()));
    }
    let f = m.field();
    let incoming: Vec<usize> = (0..q.arrows().len()).filter(|&k| q.arrows()[k].head == i).collect();
    let blocks: Vec<&Matrix> = incoming.iter().map(|&k| m.map(k)).collect();
    let sum = Matrix::hstack(f, m.dims()[i], &blocks);
    let kernel = sum.kernel_basis();
    let mut dims = m.dims().to_vec();
    dims[i] = kernel.cols();
    let mut maps = m.maps().to_vec();
    let mut off = 0;
    for &k in &incoming {
        let t = q.arrows()[k].tail;
        maps[k] = kernel.submatrix(off, m.dims()[t], 0, kernel.cols());
        off += m.dims()[t];
    }
    Representation::new(Arc::new(reflect_quiver(q, i)?), f, dims, maps)
}

/// `Φ_i^-` at a source `i`: the new space at `i` is the cokernel of
/// `V_i → ⊕_{t(ω)=i} V_{h(ω)}`, and each reversed arrow carries the
/// restriction of the cokernel projection. The result lives on `σ_i q`.
pub fn reflection_minus(i: usize, m: &Representation) -> Result<Representation> {
    let q = m.quiver();
    if i >= q.vertex_count() {
        return Err(Error::UnknownVertex(i.to_string()));
    }
    if !q.is_source(i) {
        return Err(Error::NotSource(q.vertex_name(i).to_string()));
    }
    let f = m.field();
    let outgoing: Vec<usize> = (0..q.arrows().len()).filter(|&k| q.arrows()[k].tail == i).collect();
    let blocks: Vec<&Matrix> = outgoing.iter().map(|&k| m.map(k)).collect();
    let stacked = Matrix::vstack(f, m.dims()[i], &blocks);
    let proj = stacked.cokernel_projection();
    let mut dims = m.dims().to_vec();
    dims[i] = proj.rows();
    let mut maps = m.maps().to_vec();
    let mut off = 0;
    for &k in &outgoing {
        let h = q.arrows()[k].head;
        maps[k] = proj.submatrix(0, proj.rows(), off, m.dims()[h]);
        off += m.dims()[h];
    }
    Representation::new(Arc::new(reflect_quiver(q, i)?), f, dims, maps)
}

/// `Φ^+ = Φ_{i_n}^+ ∘ ⋯ ∘ Φ_{i_1}^+` along the admissible sink sequence.
pub fn coxeter_plus(m: &Representation) -> Result<Representation> {
    let seq = admissible_sink_sequence(m.quiver())?;
    let mut cur = m.clone();
    for i in seq {
        cur = reflection_plus(i, &cur)?;
    }
    cur.with_quiver(m.quiver_arc().clone())
}

/// `Φ^- = Φ_{i_1}^- ∘ ⋯ ∘ Φ_{i_n}^-`.
pub fn coxeter_minus(m: &Representation) -> Result<Representation> {
    let seq = admissible_sink_sequence(m.quiver())?;
    let mut cur = m.clone();
    for &i in seq.iter().rev() {
        cur = reflection_minus(i, &cur)?;
    }
    cur.with_quiver(m.quiver_arc().clone())
}

pub fn coxeter_plus_pow(m: &Representation, r: usize) -> Result<Representation> {
    (0..r).try_fold(m.clone(), |acc, _| coxeter_plus(&acc))
}

pub fn coxeter_minus_pow(m: &Representation, r: usize) -> Result<Representation> {
    (0..r).try_fold(m.clone(), |acc, _| coxeter_minus(&acc))
}

fn quiver_after(q: &Quiver, seq: &[usize]) -> Result<Quiver> {
    seq.iter().try_fold(q.clone(), |acc, &i| reflect_quiver(&acc, i))
}

/// The indecomposable projective `P(i_r) = Φ_{i_1}^- ⋯ Φ_{i_{r-1}}^- S_{i_r}`,
/// with `r` the 0-based position in the admissible sink sequence.
pub fn projective_rep(q: &Arc<Quiver>, r: usize, f: Field) -> Result<Representation> {
    let seq = admissible_sink_sequence(q)?;
    if r >= seq.len() {
        return usage(format!("position {r} outside the admissible sequence"));
    }
    let start = Arc::new(quiver_after(q, &seq[..r])?);
    let mut cur = Representation::simple(start, seq[r], f)?;
    for &i in seq[..r].iter().rev() {
        cur = reflection_minus(i, &cur)?;
    }
    cur.with_quiver(q.clone())
}

/// The indecomposable injective `I(i_r) = Φ_{i_n}^+ ⋯ Φ_{i_{r+1}}^+ S_{i_r}`,
/// with `r` the 0-based position in the admissible sink sequence.
pub fn injective_rep(q: &Arc<Quiver>, r: usize, f: Field) -> Result<Representation> {
    let seq = admissible_sink_sequence(q)?;
    if r >= seq.len() {
        return usage(format!("position {r} outside the admissible sequence"));
    }
    let start = Arc::new(quiver_after(q, &seq[..=r])?);
    let mut cur = Representation::simple(start, seq[r], f)?;
    for &i in &seq[r + 1..] {
        cur = reflection_plus(i, &cur)?;
    }
    cur.with_quiver(q.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleClass {
    Preprojective,
    Preinjective,
    RegularInhomogeneous { period: usize },
    RegularHomogeneous,
}

impl ModuleClass {
    pub fn is_regular(&self) -> bool {
        matches!(
            self,
            ModuleClass::RegularHomogeneous | ModuleClass::RegularInhomogeneous { .. }
        )
    }

    pub fn period(&self) -> Option<usize> {
        match self {
            ModuleClass::RegularHomogeneous => Some(1),
            ModuleClass::RegularInhomogeneous { period } => Some(*period),
            _ => None,
        }
    }
}

impl fmt::Display for ModuleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleClass::Preprojective => write!(f, "preprojective"),
            ModuleClass::Preinjective => write!(f, "preinjective"),
            ModuleClass::RegularInhomogeneous { period } => {
                write!(f, "regular inhomogeneous (period {period})")
            }
            ModuleClass::RegularHomogeneous => write!(f, "regular homogeneous"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassifiedModule {
    pub rep: Representation,
    pub class: ModuleClass,
    pub defect: i64,
}

fn iteration_cap(m: &Representation) -> usize {
    m.total_dim() + m.quiver().vertex_count() + 2
}

/// Least `r ≥ 1` with `(Φ⁺)^r m ≅ m`.
pub fn regular_period(m: &Representation, seed: u64) -> Result<usize> {
    let cap = iteration_cap(m);
    let mut cur = m.clone();
    for r in 1..=cap {
        cur = coxeter_plus(&cur)?;
        if is_isomorphic(&cur, m, seed)? {
            return Ok(r);
        }
    }
    Err(Error::Internal(format!(
        "no Coxeter period found within {cap} steps for {}",
        m.dim_vector()
    )))
}

fn class_from_period(period: usize) -> ModuleClass {
    if period == 1 {
        ModuleClass::RegularHomogeneous
    } else {
        ModuleClass::RegularInhomogeneous { period }
    }
}

/// Classification of an indecomposable by the sign of its defect, with the
/// Coxeter period computed for regular modules.
pub fn classify(m: &Representation, seed: u64) -> Result<ClassifiedModule> {
    if !is_indecomposable(m, seed)? {
        return usage("classify needs an indecomposable representation");
    }
    let d = defect(m.quiver(), &m.dim_vector())?;
    let class = match d.signum() {
        -1 => ModuleClass::Preprojective,
        1 => ModuleClass::Preinjective,
        _ => class_from_period(regular_period(m, seed)?),
    };
    Ok(ClassifiedModule {
        rep: m.clone(),
        class,
        defect: d,
    })
}

/// Classification of an indecomposable by iterating `Φ^±` until the module
/// vanishes or returns to itself, without consulting the defect.
pub fn classify_by_coxeter(m: &Representation, seed: u64) -> Result<ModuleClass> {
    let cap = iteration_cap(m);
    let mut cur = m.clone();
    for _ in 0..cap {
        cur = coxeter_plus(&cur)?;
        if cur.is_zero() {
            return Ok(ModuleClass::Preprojective);
        }
    }
    let mut cur = m.clone();
    for _ in 0..cap {
        cur = coxeter_minus(&cur)?;
        if cur.is_zero() {
            return Ok(ModuleClass::Preinjective);
        }
    }
    Ok(class_from_period(regular_period(m, seed)?))
}
