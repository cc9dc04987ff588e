use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hom::{hom_basis, HomBasis, Morphism};
use super::iso::is_isomorphic;
use super::Representation;
use crate::error::{Error, Result};
use crate::exactfield::poly::distinct_factors;
use crate::exactfield::{charpoly, Field, Matrix, Scalar};

const RANDOM_TRIALS: usize = 48;
const EXHAUSTIVE_LIMIT: u128 = 1 << 12;

/// Splits `m` along a coprime factorization of the characteristic polynomial
/// of `phi`, returning the generalized eigen-subrepresentations when there
/// are at least two.
fn split_by<R: Rng + ?Sized>(m: &Representation, phi: &Morphism, rng: &mut R) -> Result<Option<Vec<Representation>>> {
    let f = m.field();
    let total = m.total_matrix(phi);
    let fac = distinct_factors(&charpoly(&total), rng);
    if fac.factors.len() < 2 {
        return Ok(None);
    }
    let mut pieces = Vec::with_capacity(fac.factors.len());
    for g in &fac.factors {
        let bases: Vec<Matrix> = phi
            .iter()
            .zip(m.dims())
            .map(|(p, &d)| {
                if d == 0 {
                    return Matrix::zeros(f, 0, 0);
                }
                g.eval_matrix(p).pow(d as u64).kernel_basis()
            })
            .collect();
        pieces.push(m.subrep(&bases)?);
    }
    Ok(Some(pieces))
}

fn shapes(m: &Representation) -> Vec<(usize, usize)> {
    m.dims().iter().map(|&d| (d, d)).collect()
}

/// Rank of the trace form `(a, b) ↦ tr(ab)` on `End(m)`. In characteristic
/// zero its kernel is the radical, so the rank is `dim End/rad End`.
fn trace_form_rank(m: &Representation, hb: &HomBasis) -> usize {
    let f = m.field();
    let totals: Vec<Matrix> = hb.basis.iter().map(|b| m.total_matrix(b)).collect();
    let n = totals.len();
    let gram = Matrix::from_fn(f, n, n, |i, j| {
        let p = totals[i].mul(&totals[j]);
        (0..p.rows()).fold(f.zero(), |acc, k| f.add(&acc, p.get(k, k)))
    });
    gram.rank()
}

enum Verdict {
    Split(Vec<Representation>),
    Indecomposable,
}

fn examine(m: &Representation, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let f = m.field();
    let hb = hom_basis(m, m)?;
    let d = hb.dim();
    if d == 1 {
        return Ok(Verdict::Indecomposable);
    }
    let sh = shapes(m);
    for b in &hb.basis {
        if let Some(p) = split_by(m, b, rng)? {
            return Ok(Verdict::Split(p));
        }
    }
    if let Some(p) = f.order() {
        if (p as u128).checked_pow(d as u32).is_some_and(|c| c <= EXHAUSTIVE_LIMIT) {
            let mut digits = vec![0u64; d];
            loop {
                let coeffs: Vec<Scalar> = digits.iter().map(|&x| Scalar::Fp(x)).collect();
                if let Some(p) = split_by(m, &hb.combine(f, &coeffs, &sh), rng)? {
                    return Ok(Verdict::Split(p));
                }
                let mut k = 0;
                loop {
                    if k == d {
                        return Ok(Verdict::Indecomposable);
                    }
                    digits[k] += 1;
                    if digits[k] < p {
                        break;
                    }
                    digits[k] = 0;
                    k += 1;
                }
            }
        }
    }
    for _ in 0..RANDOM_TRIALS {
        let coeffs: Vec<Scalar> = (0..d).map(|_| f.random(rng)).collect();
        if let Some(p) = split_by(m, &hb.combine(f, &coeffs, &sh), rng)? {
            return Ok(Verdict::Split(p));
        }
    }
    match f {
        Field::Prime(_) => Ok(Verdict::Indecomposable),
        Field::Rational => {
            if trace_form_rank(m, &hb) == 1 {
                Ok(Verdict::Indecomposable)
            } else {
                Err(Error::NeedsLargerField(format!(
                    "could not split or certify a representation of dimension {} over Q",
                    m.dim_vector()
                )))
            }
        }
    }
}

fn split_fully(m: &Representation, rng: &mut ChaCha8Rng, out: &mut Vec<Representation>) -> Result<()> {
    if m.is_zero() {
        return Ok(());
    }
    match examine(m, rng)? {
        Verdict::Indecomposable => out.push(m.clone()),
        Verdict::Split(pieces) => {
            for p in &pieces {
                split_fully(p, rng, out)?;
            }
        }
    }
    Ok(())
}

/// Krull–Schmidt decomposition of `m` into indecomposables with
/// multiplicities, isomorphic summands grouped together.
///
/// Over `F_p` with `p^{dim End} > 2¹²` a summand is accepted as indecomposable
/// after a fixed budget of random endomorphisms fails to split it.
pub fn indecompose(m: &Representation, seed: u64) -> Result<Vec<(Representation, usize)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pieces = Vec::new();
    split_fully(m, &mut rng, &mut pieces)?;
    pieces.sort_by_key(|p| p.dim_vector());
    let mut groups: Vec<(Representation, usize)> = Vec::new();
    for p in pieces {
        let mut found = false;
        for (g, k) in groups.iter_mut() {
            if g.dims() == p.dims() && is_isomorphic(g, &p, rng.gen())? {
                *k += 1;
                found = true;
                break;
            }
        }
        if !found {
            groups.push((p, 1));
        }
    }
    Ok(groups)
}

pub fn is_indecomposable(m: &Representation, seed: u64) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(matches!(examine(m, &mut rng)?, Verdict::Indecomposable))
}
