use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::laurent::gaussian;
use super::scalar::QuadraticScalar;
use crate::error::{usage, Error, Result};
use crate::exactfield::{is_prime, Field, Matrix, Scalar};
use crate::quiver::{DimVector, Quiver};
use crate::rep::{ext1_basis, ext1_dim, extension, hom_dim, is_isomorphic, Representation};

/// Default bound on the number of enumerated subspaces or cocycles.
pub const DEFAULT_CAP: u128 = 10_000_000;

/// `m(α, β) = Σ α_i β_i + Σ_ω α_{t(ω)} β_{h(ω)}`.
pub fn twist_exponent(q: &Quiver, a: &DimVector, b: &DimVector) -> i64 {
    let diag: i64 = a.0.iter().zip(&b.0).map(|(x, y)| x * y).sum();
    let arrows: i64 = q.arrows().iter().map(|w| a.0[w.tail] * b.0[w.head]).sum();
    diag + arrows
}

fn prime_order(f: Field) -> Result<u64> {
    f.order()
        .ok_or_else(|| Error::Usage("Hall numbers need a finite field".into()))
}

fn checked_pow(q: u64, e: usize, cap: u128) -> Result<u128> {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.saturating_mul(q as u128);
        if acc > cap {
            return Err(Error::CombinatorialExplosion { count: acc, cap });
        }
    }
    Ok(acc)
}

/// Every `k`-dimensional subspace of `F_q^n`, as `n × k` column bases in
/// reduced echelon form, listed by pivot set and then by free entries.
fn subspaces(f: Field, n: usize, k: usize) -> Vec<Matrix> {
    let q = f.order().unwrap();
    let mut out = Vec::new();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pv = pivots.clone();
                ((pivots[r] + 1)..n)
                    .filter(move |c| !pv.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let mut digits = vec![0u64; free.len()];
        loop {
            let mut m = Matrix::zeros(f, n, k);
            for (r, &c) in pivots.iter().enumerate() {
                m.set(c, r, f.one());
            }
            for (&(r, c), &d) in free.iter().zip(&digits) {
                m.set(c, r, Scalar::Fp(d));
            }
            out.push(m);
            let mut i = 0;
            while i < digits.len() && digits[i] + 1 == q {
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                break;
            }
            digits[i] += 1;
        }
        // next pivot set in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pivots[i] < n - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn subspace_count(q: u64, n: usize, k: usize, cap: u128) -> Result<u128> {
    let g = gaussian(n, k)?;
    // [n choose k]_q = v^{k(n−k)} bin(n,k) evaluated at v² = q
    let mut total: u128 = 0;
    for (e, c) in g.terms() {
        let pow = (e + (k * (n - k)) as i64) / 2;
        let c: u128 = c.try_into().map_err(|_| Error::Internal("negative Gaussian coefficient".into()))?;
        total = total.saturating_add(c.saturating_mul(checked_pow(q, pow as usize, u128::MAX)?));
    }
    if total > cap {
        return Err(Error::CombinatorialExplosion { count: total, cap });
    }
    Ok(total)
}

fn arrow_stable(x: &Matrix, tail: &Matrix, head: &Matrix) -> bool {
    let image = x.mul(tail);
    Matrix::hstack(x.field(), head.rows(), &[head, &image]).rank() == head.cols()
}

/// `g^{total}_{top,sub}`: the number of subrepresentations `W′ ≤ total` with
/// `W′ ≅ sub` and `total/W′ ≅ top`.
pub fn hall_number(
    top: &Representation,
    sub: &Representation,
    total: &Representation,
    cap: u128,
    seed: u64,
) -> Result<u128> {
    top.check_compatible(sub)?;
    top.check_compatible(total)?;
    let q = prime_order(total.field())?;
    if top.dim_vector().add(&sub.dim_vector()) != total.dim_vector() {
        return Ok(0);
    }
    let n = total.quiver().vertex_count();
    let mut count: u128 = 1;
    for i in 0..n {
        count = count.saturating_mul(subspace_count(q, total.dims()[i], sub.dims()[i], cap)?);
        if count > cap {
            return Err(Error::CombinatorialExplosion { count, cap });
        }
    }
    let cells: Vec<Vec<Matrix>> = (0..n)
        .map(|i| subspaces(total.field(), total.dims()[i], sub.dims()[i]))
        .collect();
    // arrows checked as soon as both endpoints are chosen
    let arrows = total.quiver().arrows();
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, a) in arrows.iter().enumerate() {
        ready[a.tail.max(a.head)].push(k);
    }
    let mut chosen: Vec<Matrix> = Vec::with_capacity(n);
    let mut hits = 0u128;
    search(total, top, sub, &cells, &ready, &mut chosen, &mut hits, seed)?;
    Ok(hits)
}

#[allow(clippy::too_many_arguments)]
fn search(
    total: &Representation,
    top: &Representation,
    sub: &Representation,
    cells: &[Vec<Matrix>],
    ready: &[Vec<usize>],
    chosen: &mut Vec<Matrix>,
    hits: &mut u128,
    seed: u64,
) -> Result<()> {
    let v = chosen.len();
    if v == cells.len() {
        let w = total.subrep(chosen)?;
        if is_isomorphic(&w, sub, seed)? {
            let (t, _) = total.quotient(chosen)?;
            if is_isomorphic(&t, top, seed)? {
                *hits += 1;
            }
        }
        return Ok(());
    }
    let arrows = total.quiver().arrows();
    for u in &cells[v] {
        chosen.push(u.clone());
        let ok = ready[v]
            .iter()
            .all(|&k| arrow_stable(total.map(k), &chosen[arrows[k].tail], &chosen[arrows[k].head]));
        if ok {
            search(total, top, sub, cells, ready, chosen, hits, seed)?;
        }
        chosen.pop();
    }
    Ok(())
}

/// Isomorphism classes of extensions `0 → sub → M → top → 0`, one
/// representative each, in order of first appearance.
pub fn extension_classes(
    top: &Representation,
    sub: &Representation,
    cap: u128,
    seed: u64,
) -> Result<Vec<Representation>> {
    let q = prime_order(top.field())?;
    let basis = ext1_basis(top, sub)?;
    let count = checked_pow(q, basis.len(), cap)?;
    let f = top.field();
    let mut out: Vec<Representation> = Vec::new();
    for idx in 0..count {
        let mut rest = idx;
        let mut cocycle: Vec<Matrix> = top
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(f, sub.dims()[a.head], top.dims()[a.tail]))
            .collect();
        for b in &basis {
            let c = Scalar::Fp((rest % q as u128) as u64);
            rest /= q as u128;
            for (acc, d) in cocycle.iter_mut().zip(b) {
                *acc = acc.add(&d.scale(&c));
            }
        }
        let m = extension(top, sub, &cocycle)?;
        let mut seen = false;
        for o in &out {
            if is_isomorphic(o, &m, seed)? {
                seen = true;
                break;
            }
        }
        if !seen {
            out.push(m);
        }
    }
    Ok(out)
}

/// A finite combination of isomorphism classes with coefficients in `ℚ(√q)`.
#[derive(Clone, Debug)]
pub struct HallElement {
    quiver: Arc<Quiver>,
    field: Field,
    terms: Vec<(Representation, QuadraticScalar)>,
}

impl HallElement {
    pub fn zero(quiver: Arc<Quiver>, field: Field) -> Result<HallElement> {
        prime_order(field)?;
        Ok(HallElement {
            quiver,
            field,
            terms: Vec::new(),
        })
    }

    /// The unit `u_0`.
    pub fn one(quiver: Arc<Quiver>, field: Field) -> Result<HallElement> {
        let z = Representation::zero(quiver.clone(), field);
        HallElement::basis(&z)
    }

    /// `u_M`.
    pub fn basis(m: &Representation) -> Result<HallElement> {
        let mut e = HallElement::zero(m.quiver_arc().clone(), m.field())?;
        e.terms.push((m.clone(), QuadraticScalar::one(e.q())));
        Ok(e)
    }

    /// `u_{S_i}`.
    pub fn simple(quiver: Arc<Quiver>, field: Field, i: usize) -> Result<HallElement> {
        let s = Representation::simple(quiver, i, field)?;
        HallElement::basis(&s)
    }

    pub fn q(&self) -> u64 {
        self.field.order().unwrap()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver_arc(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn terms(&self) -> &[(Representation, QuadraticScalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `u_M`.
    pub fn coeff(&self, m: &Representation, seed: u64) -> Result<QuadraticScalar> {
        for (r, c) in &self.terms {
            if is_isomorphic(r, m, seed)? {
                return Ok(c.clone());
            }
        }
        Ok(QuadraticScalar::zero(self.q()))
    }

    /// Adds `c·u_M`, merging with an isomorphic term when there is one.
    pub fn add_term(&mut self, m: &Representation, c: &QuadraticScalar, seed: u64) -> Result<()> {
        if m.field() != self.field {
            return usage("term over another field");
        }
        if c.is_zero() {
            return Ok(());
        }
        for k in 0..self.terms.len() {
            if is_isomorphic(&self.terms[k].0, m, seed)? {
                let sum = self.terms[k].1.add(c);
                if sum.is_zero() {
                    self.terms.remove(k);
                } else {
                    self.terms[k].1 = sum;
                }
                return Ok(());
            }
        }
        let m = m.with_quiver(self.quiver.clone())?;
        let pos = self
            .terms
            .iter()
            .position(|(r, _)| r.dims() > m.dims())
            .unwrap_or(self.terms.len());
        self.terms.insert(pos, (m, c.clone()));
        Ok(())
    }

    pub fn add(&self, o: &HallElement, seed: u64) -> Result<HallElement> {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m, c, seed)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &QuadraticScalar) -> HallElement {
        let mut out = self.clone();
        out.terms = self
            .terms
            .iter()
            .map(|(m, x)| (m.clone(), x.mul(c)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| json!({"rep": m.to_json(), "coeff": c.to_json()}))
            .collect();
        json!({"q": self.q(), "terms": terms})
    }

    pub fn from_json(quiver: Arc<Quiver>, v: &Value, seed: u64) -> Result<HallElement> {
        let q = v
            .get("q")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("Hall element needs an integer `q`".into()))?;
        let field = Field::prime(q)?;
        let mut out = HallElement::zero(quiver.clone(), field)?;
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("Hall element needs `terms`".into()))?;
        for t in terms {
            let rep = t
                .get("rep")
                .ok_or_else(|| Error::Parse("term needs `rep`".into()))?;
            let m = Representation::from_json_on(quiver.clone(), field, rep)?;
            let c = QuadraticScalar::from_json(q, t.get("coeff").unwrap_or(&json!({"a": "1"})))?;
            out.add_term(&m, &c, seed)?;
        }
        Ok(out)
    }
}

/// `x ∘ y`, extending `u_T ∘ u_W = v^{m(|W|,|T|)} Σ_M g^M_{T,W} u_M`
/// bilinearly, with `v = √q`: the left factor is the quotient and the twist
/// is evaluated with the sub's dimension first.
pub fn hall_product(x: &HallElement, y: &HallElement, cap: u128, seed: u64) -> Result<HallElement> {
    if x.field != y.field {
        return usage("Hall elements over different fields");
    }
    let qn = x.q();
    let mut out = HallElement::zero(x.quiver.clone(), x.field)?;
    for (t, a) in &x.terms {
        for (w, b) in &y.terms {
            let w = w.with_quiver(t.quiver_arc().clone())?;
            let e = twist_exponent(t.quiver(), &w.dim_vector(), &t.dim_vector());
            let ab = a.mul(b).mul(&QuadraticScalar::v_pow(qn, e));
            for m in extension_classes(t, &w, cap, seed)? {
                let g = hall_number(t, &w, &m, cap, seed)?;
                out.add_term(&m, &ab.scale_int(&BigInt::from(g)), seed)?;
            }
        }
    }
    Ok(out)
}

/// `Σ_{p=0}^{N} (−1)^p bin(N,p) F_i^p F_j F_i^{N−p}` with `N = 1 − c_{ij}`
/// and `F_i = u_{S_i}` over `F_q`.
pub fn serre_element(q: &Arc<Quiver>, i: usize, j: usize, prime: u64, cap: u128, seed: u64) -> Result<HallElement> {
    if i == j {
        return usage("Serre relation needs two distinct vertices");
    }
    if i >= q.vertex_count() || j >= q.vertex_count() {
        return usage("vertex out of range");
    }
    if !is_prime(prime) {
        return usage(format!("q = {prime} is not a prime; only prime fields are supported"));
    }
    let f = Field::prime(prime)?;
    let n = q.edge_multiplicity(i, j) + 1;
    let fi = HallElement::simple(q.clone(), f, i)?;
    let fj = HallElement::simple(q.clone(), f, j)?;
    let mut powers = vec![HallElement::one(q.clone(), f)?];
    for k in 1..=n {
        powers.push(hall_product(&powers[k - 1], &fi, cap, seed)?);
    }
    let mut out = HallElement::zero(q.clone(), f)?;
    for p in 0..=n {
        let left = hall_product(&powers[p], &fj, cap, seed)?;
        let mono = hall_product(&left, &powers[n - p], cap, seed)?;
        let mut c = gaussian(n, p)?.eval_sqrt(prime);
        if p % 2 == 1 {
            c = c.neg();
        }
        out = out.add(&mono.scale(&c), seed)?;
    }
    Ok(out)
}

/// Whether the quantum Serre relation for `(i, j)` vanishes exactly.
pub fn serre_check(q: &Arc<Quiver>, i: usize, j: usize, prime: u64, cap: u128, seed: u64) -> Result<bool> {
    Ok(serre_element(q, i, j, prime, cap, seed)?.is_zero())
}

const POLY_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Coefficients (constant term first) of the polynomial `P` with
/// `P(q) = g^M_{T,W}` over `F_q`, where `build(F_q)` returns `(T, W, M)`.
/// The degree bound is `dim Ext¹(T,W) + dim Hom(T,W)`; the fit uses the
/// smallest primes and is checked on further primes up to at least 11.
pub fn hall_polynomial(
    build: &dyn Fn(Field) -> Result<(Representation, Representation, Representation)>,
    cap: u128,
    seed: u64,
) -> Result<Vec<BigRational>> {
    let (t, w, _) = build(Field::prime(2)?)?;
    let d = ext1_dim(&t, &w)? + hom_dim(&t, &w)?;
    let fit = d + 1;
    let checks = (fit + 1).max(5);
    if checks > POLY_PRIMES.len() {
        return Err(Error::DegreeBoundExceeded(format!("degree bound {d} needs too many primes")));
    }
    let mut points = Vec::with_capacity(checks);
    for &p in &POLY_PRIMES[..checks] {
        let (t, w, m) = build(Field::prime(p)?)?;
        let g = hall_number(&t, &w, &m, cap, seed)?;
        points.push((BigRational::from_integer(BigInt::from(p)), BigRational::from_integer(BigInt::from(g))));
    }
    let coeffs = lagrange(&points[..fit]);
    for (x, y) in &points[fit..] {
        let val = coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c);
        if &val != y {
            return Err(Error::DegreeBoundExceeded(format!(
                "value {y} at q = {x} disagrees with the degree-{d} fit {val}"
            )));
        }
    }
    Ok(coeffs)
}

fn lagrange(points: &[(BigRational, BigRational)]) -> Vec<BigRational> {
    let n = points.len();
    let mut out = vec![BigRational::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * xj;
            }
            basis = next;
            denom *= xi - xj;
        }
        for (k, c) in basis.iter().enumerate() {
            out[k] += c * yi / &denom;
        }
    }
    while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}
