use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::hom::{hom_basis, hom_dim, HomBasis, Morphism};
use super::Representation;
use crate::error::{Error, Result};
use crate::exactfield::Scalar;

const RANDOM_TRIALS: usize = 64;
const EXHAUSTIVE_LIMIT: u128 = 1 << 16;

fn invertible(f: &Morphism) -> bool {
    f.iter().all(|m| m.is_invertible())
}

/// Whether an invertible intertwiner `m → n` exists.
///
/// Dimension vectors and the four Hom dimensions between `m` and `n` are
/// compared first. Then random elements of `Hom(m, n)` are tried; failing
/// that, all of `Hom(m, n)` is enumerated when it has at most 2¹⁶ elements,
/// and otherwise the answer is `NeedsLargerField`.
pub fn is_isomorphic(m: &Representation, n: &Representation, seed: u64) -> Result<bool> {
    m.check_compatible(n)?;
    if m.dims() != n.dims() {
        return Ok(false);
    }
    if m.is_zero() {
        return Ok(true);
    }
    if m == n {
        return Ok(true);
    }
    let d = hom_dim(m, n)?;
    if d == 0 || hom_dim(n, m)? != d || hom_dim(m, m)? != d || hom_dim(n, n)? != d {
        return Ok(false);
    }
    let hb = hom_basis(m, n)?;
    let f = m.field();
    let shapes: Vec<(usize, usize)> = m.dims().iter().zip(n.dims()).map(|(&a, &b)| (b, a)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIALS {
        let coeffs: Vec<Scalar> = (0..d).map(|_| f.random_wide(&mut rng)).collect();
        if invertible(&hb.combine(f, &coeffs, &shapes)) {
            return Ok(true);
        }
    }
    match f.order() {
        Some(p) if (p as u128).checked_pow(d as u32).is_some_and(|c| c <= EXHAUSTIVE_LIMIT) => {
            Ok(exhaustive(&hb, m, &shapes, p))
        }
        _ => Err(Error::NeedsLargerField(format!(
            "no invertible element found among {RANDOM_TRIALS} samples of a {d}-dimensional Hom space over {f}"
        ))),
    }
}

fn exhaustive(hb: &HomBasis, m: &Representation, shapes: &[(usize, usize)], p: u64) -> bool {
    let f = m.field();
    let d = hb.dim();
    let mut digits = vec![0u64; d];
    loop {
        let coeffs: Vec<Scalar> = digits.iter().map(|&x| Scalar::Fp(x)).collect();
        if invertible(&hb.combine(f, &coeffs, shapes)) {
            return true;
        }
        let mut k = 0;
        loop {
            if k == d {
                return false;
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{Field, Matrix};
    use crate::quiver::Quiver;
    use std::sync::Arc;

    fn pencil(f: Field, a: i64, b: i64) -> Representation {
        Representation::new(
            Arc::new(Quiver::kronecker()),
            f,
            vec![1, 1],
            vec![
                Matrix::from_i64_rows(f, &[vec![a]]),
                Matrix::from_i64_rows(f, &[vec![b]]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn examples() {
        let f = Field::prime(5).unwrap();
        let m = pencil(f, 1, 2);
        assert!(is_isomorphic(&m, &m, 0).unwrap());
        let q = m.quiver_arc().clone();
        let s1 = Representation::simple(q.clone(), 0, f).unwrap();
        let s2 = Representation::simple(q, 1, f).unwrap();
        assert!(!is_isomorphic(&s1, &s2, 0).unwrap());
        assert!(!is_isomorphic(&pencil(f, 1, 2), &pencil(f, 1, 3), 0).unwrap());
        // (1,2) and (2,4) are the same point of P^1
        assert!(is_isomorphic(&pencil(f, 1, 2), &pencil(f, 2, 4), 0).unwrap());
    }

    #[test]
    fn small_field_uses_exact_fallback() {
        // Over F_2, S ⊕ S has End = M_2(F_2); random elements are often
        // singular, yet the answer must be exact.
        let f = Field::prime(2).unwrap();
        let q = Arc::new(Quiver::kronecker());
        let s = Representation::simple(q.clone(), 0, f).unwrap();
        let ss = s.direct_sum(&s).unwrap();
        for seed in 0..8 {
            assert!(is_isomorphic(&ss, &ss.clone(), seed).unwrap());
        }
    }

    #[test]
    fn mismatched_fields_rejected() {
        let a = pencil(Field::prime(5).unwrap(), 1, 1);
        let b = pencil(Field::prime(7).unwrap(), 1, 1);
        assert!(is_isomorphic(&a, &b, 0).is_err());
    }
}
