use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{usage, Error, Result};
use crate::exactfield::Field;
use crate::functors::{coxeter_minus, coxeter_plus, injective_rep, projective_rep, ModuleClass};
use crate::quiver::{
    admissible_sink_sequence, coxeter_transform, coxeter_transform_inverse, defect,
    minimal_imaginary_root, positive_real_roots_below, DimVector, Quiver,
};
use crate::rep::{field_from_json, field_to_json, Representation};
use crate::tubes::{find_tubes, Tube};

/// Stable name of an indecomposable: `(Φ⁻)^k P(i_r)`, `(Φ⁺)^k I(i_r)`, or the
/// tube module `F(s_{z,l})` of tube number `tube`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Preprojective { r: usize, k: usize },
    Regular { tube: usize, z: usize, l: usize },
    Preinjective { r: usize, k: usize },
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Preprojective { r, k } => write!(f, "P{r}.{k}"),
            Label::Preinjective { r, k } => write!(f, "I{r}.{k}"),
            Label::Regular { tube, z, l } => write!(f, "T{tube}.{z}.{l}"),
        }
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Label> {
        let bad = || Error::Parse(format!("bad label `{s}`"));
        let (head, rest) = s.split_at(s.chars().next().ok_or_else(bad)?.len_utf8());
        let nums: Vec<usize> = rest
            .split('.')
            .map(|x| x.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match (head, nums.as_slice()) {
            ("P", &[r, k]) => Ok(Label::Preprojective { r, k }),
            ("I", &[r, k]) => Ok(Label::Preinjective { r, k }),
            ("T", &[tube, z, l]) => Ok(Label::Regular { tube, z, l }),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct InventoryItem {
    pub label: Label,
    pub dim: DimVector,
    pub class: ModuleClass,
    pub defect: i64,
    pub rep: Representation,
}

/// The preprojective, preinjective and inhomogeneous regular
/// indecomposables of dimension at most `bound`, one per isomorphism class.
#[derive(Clone, Debug)]
pub struct Inventory {
    quiver: Arc<Quiver>,
    field: Field,
    bound: DimVector,
    items: Vec<InventoryItem>,
    tubes: Vec<Tube>,
}

fn chain_dims(
    start: &DimVector,
    step: impl Fn(&DimVector) -> Result<DimVector>,
    bound: &DimVector,
    cap: usize,
) -> Result<Vec<usize>> {
    let mut ks = Vec::new();
    let mut d = start.clone();
    for k in 0..=cap {
        if d.is_nonnegative() && d.le(bound) {
            ks.push(k);
        }
        d = step(&d)?;
    }
    Ok(ks)
}

impl Inventory {
    pub fn quiver_arc(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn bound(&self) -> &DimVector {
        &self.bound
    }

    pub fn items(&self) -> &[InventoryItem] {
        &self.items
    }

    pub fn tubes(&self) -> &[Tube] {
        &self.tubes
    }

    pub fn get(&self, label: &Label) -> Option<&InventoryItem> {
        self.items.iter().find(|it| &it.label == label)
    }

    /// Period of the tube holding a regular label.
    pub fn tube_period(&self, tube: usize) -> Option<usize> {
        self.tubes.get(tube).map(Tube::period)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "quiver": self.quiver.to_json(),
            "field": field_to_json(self.field),
            "bound": self.bound.0,
            "tubes": self.tubes.iter().map(Tube::to_json).collect::<Vec<_>>(),
            "items": self.items.iter().map(|it| json!({
                "label": it.label.to_string(),
                "maps": it.rep.to_json()["maps"],
                "dims": it.rep.to_json()["dims"],
            })).collect::<Vec<_>>(),
        })
    }

    /// Rebuilds an inventory from [`Inventory::to_json`] output, recomputing
    /// classes and defects from the stored data.
    pub fn from_json(v: &Value) -> Result<Inventory> {
        let bad = |m: &str| Error::Parse(format!("inventory: {m}"));
        let quiver = Arc::new(Quiver::from_json(v.get("quiver").ok_or_else(|| bad("missing quiver"))?)?);
        let field = field_from_json(v.get("field").ok_or_else(|| bad("missing field"))?)?;
        let bound: Vec<i64> = serde_json::from_value(v.get("bound").cloned().ok_or_else(|| bad("missing bound"))?)
            .map_err(|e| bad(&e.to_string()))?;
        let bound = DimVector(bound);
        let mut tubes = Vec::new();
        for t in v.get("tubes").and_then(Value::as_array).ok_or_else(|| bad("missing tubes"))? {
            let t = Tube::from_json(t)?;
            if **t.quiver_arc() != *quiver {
                return Err(bad("tube over another quiver"));
            }
            tubes.push(t);
        }
        let mut items = Vec::new();
        for it in v.get("items").and_then(Value::as_array).ok_or_else(|| bad("missing items"))? {
            let label: Label = it
                .get("label")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("item without label"))?
                .parse()?;
            let rep = Representation::from_json_on(quiver.clone(), field, it)?;
            let dim = rep.dim_vector();
            let defect = defect(&quiver, &dim)?;
            let class = match label {
                Label::Preprojective { .. } => ModuleClass::Preprojective,
                Label::Preinjective { .. } => ModuleClass::Preinjective,
                Label::Regular { tube, .. } => ModuleClass::RegularInhomogeneous {
                    period: tubes.get(tube).ok_or_else(|| bad("unknown tube"))?.period(),
                },
            };
            items.push(InventoryItem {
                label,
                dim,
                class,
                defect,
                rep,
            });
        }
        let inv = Inventory {
            quiver,
            field,
            bound,
            items,
            tubes,
        };
        inv.check_complete()?;
        Ok(inv)
    }

    /// Root-count cross-check: every real root `≤ bound` occurs exactly once
    /// among the items, and the remaining items are the tube modules whose
    /// dimension is a multiple of `δ` (`period` of them per tube and multiple).
    pub fn check_complete(&self) -> Result<()> {
        let q = &self.quiver;
        let roots: BTreeSet<DimVector> = positive_real_roots_below(q, &self.bound)?.into_iter().collect();
        let delta = minimal_imaginary_root(q)?;
        let mut seen = BTreeSet::new();
        let mut imaginary = 0usize;
        for it in &self.items {
            if roots.contains(&it.dim) {
                if !seen.insert(it.dim.clone()) {
                    return Err(Error::Internal(format!("real root {} listed twice", it.dim)));
                }
            } else if matches!(it.label, Label::Regular { .. }) && is_multiple_of(&it.dim, &delta) {
                imaginary += 1;
            } else {
                return Err(Error::Internal(format!("item {} has dimension {} outside the root list", it.label, it.dim)));
            }
        }
        if seen.len() != roots.len() {
            let missing: Vec<String> = roots.difference(&seen).map(|d| d.to_string()).collect();
            return Err(Error::Internal(format!("inventory misses real roots {}", missing.join(" "))));
        }
        let mut m = 1;
        let mut expect = 0;
        while delta.scale(m).le(&self.bound) {
            expect += self.tubes.iter().map(Tube::period).sum::<usize>();
            m += 1;
        }
        if imaginary != expect {
            return Err(Error::Internal(format!(
                "inventory has {imaginary} tube modules of imaginary dimension, expected {expect}"
            )));
        }
        Ok(())
    }
}

fn is_multiple_of(a: &DimVector, delta: &DimVector) -> bool {
    let m = a.get(0) / delta.get(0).max(1);
    m > 0 && delta.scale(m) == *a
}

/// Builds the inventory below `bound` from the projective and injective
/// chains and the tube modules of every inhomogeneous tube.
pub fn build_inventory(q: &Arc<Quiver>, f: Field, bound: &DimVector, seed: u64) -> Result<Inventory> {
    if bound.len() != q.vertex_count() || !bound.is_nonnegative() {
        return usage(format!("bound {bound} does not fit the quiver"));
    }
    let n = q.vertex_count();
    let seq = admissible_sink_sequence(q)?;
    let delta = minimal_imaginary_root(q)?;
    let cap = (bound.total() as usize + 2) * (n + 2);
    let mut items = Vec::new();
    for r in 0..seq.len() {
        let p = projective_rep(q, r, f)?;
        let ks = chain_dims(&p.dim_vector(), |d| coxeter_transform_inverse(q, d), bound, cap)?;
        let mut cur = p;
        let mut at = 0;
        for k in ks {
            while at < k {
                cur = coxeter_minus(&cur)?;
                at += 1;
            }
            items.push(InventoryItem {
                label: Label::Preprojective { r, k },
                dim: cur.dim_vector(),
                class: ModuleClass::Preprojective,
                defect: defect(q, &cur.dim_vector())?,
                rep: cur.clone(),
            });
        }
        let i = injective_rep(q, r, f)?;
        let ks = chain_dims(&i.dim_vector(), |d| coxeter_transform(q, d), bound, cap)?;
        let mut cur = i;
        let mut at = 0;
        for k in ks {
            while at < k {
                cur = coxeter_plus(&cur)?;
                at += 1;
            }
            items.push(InventoryItem {
                label: Label::Preinjective { r, k },
                dim: cur.dim_vector(),
                class: ModuleClass::Preinjective,
                defect: defect(q, &cur.dim_vector())?,
                rep: cur.clone(),
            });
        }
    }
    let needs_tubes = delta.le(bound)
        || positive_real_roots_below(q, bound)?
            .iter()
            .any(|a| defect(q, a).map(|d| d == 0).unwrap_or(false));
    let tubes = if needs_tubes && !bound.is_zero() {
        find_tubes(q, f, seed)?
    } else {
        Vec::new()
    };
    for (ti, t) in tubes.iter().enumerate() {
        for z in 0..t.period() {
            let mut l = 1;
            while t.module_dim(z, l).le(bound) {
                let rep = t.module(z, l)?;
                items.push(InventoryItem {
                    label: Label::Regular { tube: ti, z, l },
                    dim: rep.dim_vector(),
                    class: ModuleClass::RegularInhomogeneous { period: t.period() },
                    defect: 0,
                    rep,
                });
                l += 1;
            }
        }
    }
    items.sort_by_key(|it| it.label);
    let inv = Inventory {
        quiver: q.clone(),
        field: f,
        bound: bound.clone(),
        items,
        tubes,
    };
    inv.check_complete()?;
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::classify_by_coxeter;
    use crate::rep::is_isomorphic;

    #[test]
    fn kronecker_22() {
        let q = Arc::new(Quiver::kronecker());
        let inv = build_inventory(&q, Field::prime(17).unwrap(), &DimVector(vec![2, 2]), 0).unwrap();
        let dims: BTreeSet<String> = inv.items().iter().map(|it| it.dim.to_string()).collect();
        let expect: BTreeSet<String> = ["(0,1)", "(1,0)", "(1,2)", "(2,1)"].iter().map(|s| s.to_string()).collect();
        assert_eq!(dims, expect);
        let empty = build_inventory(&q, Field::prime(17).unwrap(), &DimVector(vec![0, 0]), 0).unwrap();
        assert!(empty.items().is_empty());
    }

    #[test]
    fn labels_roundtrip() {
        for l in [
            Label::Preprojective { r: 1, k: 3 },
            Label::Preinjective { r: 0, k: 0 },
            Label::Regular { tube: 2, z: 1, l: 4 },
        ] {
            assert_eq!(l.to_string().parse::<Label>().unwrap(), l);
        }
        assert!("Q1.2".parse::<Label>().is_err());
    }

    #[test]
    fn d4_inventory_to_delta() {
        let q = Arc::new(
            Quiver::new(
                &["a", "b", "c", "d", "o"],
                &[("x", "a", "o"), ("y", "b", "o"), ("z", "c", "o"), ("w", "d", "o")],
            )
            .unwrap(),
        );
        let f = Field::prime(17).unwrap();
        let delta = minimal_imaginary_root(&q).unwrap();
        let inv = build_inventory(&q, f, &delta, 0).unwrap();
        let real = inv.items().iter().filter(|it| it.dim != delta).count();
        assert_eq!(real, 24);
        let regular = inv.items().iter().filter(|it| it.class.is_regular()).count();
        // 6 regular simples below δ plus 3 tubes × 2 length-2 modules of dim δ
        assert_eq!(regular, 12);
        for it in inv.items() {
            assert_eq!(classify_by_coxeter(&it.rep, 0).unwrap(), it.class, "{}", it.label);
        }
        let back = Inventory::from_json(&inv.to_json()).unwrap();
        for (a, b) in inv.items().iter().zip(back.items()) {
            assert_eq!(a.label, b.label);
            assert!(is_isomorphic(&a.rep, &b.rep, 0).unwrap());
        }
    }
}
