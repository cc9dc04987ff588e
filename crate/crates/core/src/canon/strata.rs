use std::collections::BTreeMap;

use super::delta::{is_aperiodic_sigma, CanonicalParam};
use super::inventory::{Inventory, Label};
use crate::error::{usage, Error, Result};
use crate::exactfield::Field;
use crate::quiver::{minimal_imaginary_root, DimVector};
use crate::rep::{hom_dim, indecompose, is_isomorphic, Representation};
use crate::tubes::{is_homogeneous_simple, sample_homogeneous_simples};

fn check_param(param: &CanonicalParam, inv: &Inventory) -> Result<DimVector> {
    let q = inv.quiver_arc();
    let delta = minimal_imaginary_root(q)?;
    let mut nu = delta.scale(param.q() as i64);
    for (label, &m) in &param.sigma {
        let it = inv
            .get(label)
            .ok_or_else(|| Error::Usage(format!("label {label} is not in the inventory")))?;
        nu = nu.add(&it.dim.scale(m as i64));
    }
    if param.lambda.windows(2).any(|w| w[0] < w[1]) || param.lambda.contains(&0) {
        return usage("λ must be a weakly decreasing list of positive integers");
    }
    if !is_aperiodic_sigma(&param.sigma, inv) {
        return usage("σ violates aperiodicity");
    }
    Ok(nu)
}

/// Dimension of the stratum `X(σ, λ)`: the orbit of
/// `⊕ M^{σ(M)} ⊕ R_1 ⊕ ⋯ ⊕ R_q` plus `q` parameters for the homogeneous
/// simples. Besides `End(⊕ M^{σ(M)})` and the `q` scalars, the stabilizer
/// sees `Hom(M, R_k)` for preprojective and `Hom(R_k, M)` for preinjective
/// `M`, each of dimension `|defect(M)|`.
pub fn stratum_dim(param: &CanonicalParam, inv: &Inventory) -> Result<usize> {
    let nu = check_param(param, inv)?;
    let g: i64 = nu.0.iter().map(|x| x * x).sum();
    let mut end = 0i64;
    let mut cross = 0i64;
    for (a, &ma) in &param.sigma {
        let ia = inv.get(a).unwrap();
        cross += ma as i64 * ia.defect.abs();
        for (b, &mb) in &param.sigma {
            let ib = inv.get(b).unwrap();
            end += (ma * mb) as i64 * hom_dim(&ia.rep, &ib.rep)? as i64;
        }
    }
    let d = g - end - param.q() as i64 * cross;
    usize::try_from(d).map_err(|_| Error::Internal(format!("negative stratum dimension {d}")))
}

/// `⊕ M^{σ(M)}` plus `q` pairwise nonisomorphic certified homogeneous simples.
pub fn generic_rep_of_stratum(
    param: &CanonicalParam,
    inv: &Inventory,
    f: Field,
    seed: u64,
) -> Result<Representation> {
    check_param(param, inv)?;
    if f != inv.field() {
        return usage("inventory was built over another field");
    }
    let q = inv.quiver_arc();
    let parts: Vec<(&Representation, usize)> = param
        .sigma
        .iter()
        .map(|(l, &m)| (&inv.get(l).unwrap().rep, m))
        .collect();
    let mut out = Representation::direct_sum_all(q.clone(), f, &parts)?;
    if param.q() > 0 {
        for h in sample_homogeneous_simples(q, f, param.q(), seed)? {
            out = out.direct_sum(&h)?;
        }
    }
    Ok(out)
}

/// Where a representation sits relative to the strata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StratumPoint {
    /// `σ` and the number `q` of homogeneous simple summands; `λ` itself is
    /// not visible on a single point.
    Stratum { sigma: BTreeMap<Label, usize>, q: usize },
    /// Repeated or non-simple homogeneous summands, or periodic `σ`.
    Boundary(String),
}

/// Reads `(σ, q)` off a Krull–Schmidt decomposition.
pub fn locate(m: &Representation, inv: &Inventory, seed: u64) -> Result<StratumPoint> {
    let mut sigma = BTreeMap::new();
    let mut q = 0;
    for (summand, mult) in indecompose(m, seed)? {
        let d = summand.dim_vector();
        if !d.le(inv.bound()) {
            return usage(format!("summand {d} exceeds the inventory bound"));
        }
        let mut found = None;
        for it in inv.items().iter().filter(|it| it.dim == d) {
            if is_isomorphic(&it.rep, &summand, seed)? {
                found = Some(it.label);
                break;
            }
        }
        match found {
            Some(l) => {
                sigma.insert(l, mult);
            }
            None if is_homogeneous_simple(&summand, seed)? => {
                if mult > 1 {
                    return Ok(StratumPoint::Boundary(format!(
                        "homogeneous simple of dimension {d} repeated {mult} times"
                    )));
                }
                q += 1;
            }
            None => {
                return Ok(StratumPoint::Boundary(format!(
                    "homogeneous summand of dimension {d} is not simple"
                )))
            }
        }
    }
    if !is_aperiodic_sigma(&sigma, inv) {
        return Ok(StratumPoint::Boundary("σ is periodic".into()));
    }
    Ok(StratumPoint::Stratum { sigma, q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{build_inventory, enumerate_delta};
    use crate::quiver::Quiver;
    use std::sync::Arc;

    #[test]
    fn kronecker_dense_strata() {
        let q = Arc::new(Quiver::kronecker());
        let f = Field::prime(17).unwrap();
        let inv = build_inventory(&q, f, &DimVector(vec![3, 3]), 0).unwrap();
        for k in 1..=3usize {
            let p = CanonicalParam {
                sigma: BTreeMap::new(),
                lambda: vec![1; k],
            };
            assert_eq!(stratum_dim(&p, &inv).unwrap(), 2 * k * k);
        }
    }

    #[test]
    fn single_module_stratum_is_its_orbit() {
        let q = Arc::new(Quiver::kronecker());
        let f = Field::prime(17).unwrap();
        let inv = build_inventory(&q, f, &DimVector(vec![2, 2]), 0).unwrap();
        for it in inv.items() {
            let p = CanonicalParam {
                sigma: [(it.label, 1)].into_iter().collect(),
                lambda: vec![],
            };
            assert_eq!(stratum_dim(&p, &inv).unwrap(), crate::rep::orbit_dim(&it.rep).unwrap());
        }
    }

    #[test]
    fn generic_points_round_trip() {
        let q = Arc::new(Quiver::kronecker());
        let f = Field::prime(17).unwrap();
        let nu = DimVector(vec![2, 2]);
        let inv = build_inventory(&q, f, &nu, 0).unwrap();
        for (i, p) in enumerate_delta(&nu, &inv).unwrap().iter().enumerate() {
            let m = generic_rep_of_stratum(p, &inv, f, i as u64).unwrap();
            assert_eq!(m.dim_vector(), nu);
            assert_eq!(
                locate(&m, &inv, 0).unwrap(),
                StratumPoint::Stratum {
                    sigma: p.sigma.clone(),
                    q: p.q()
                }
            );
        }
    }
}
