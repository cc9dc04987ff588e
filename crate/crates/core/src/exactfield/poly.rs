//! Univariate polynomials over an exact field, characteristic polynomials,
//! and the factorization needed for Fitting-style splitting of modules.
//!
//! Over `F_p` factorization into distinct irreducible factors is complete
//! (distinct-degree followed by Cantor–Zassenhaus equal-degree splitting).
//! Over ℚ only coprime pieces reachable through square-free decomposition and
//! rational roots are found.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::field::{Field, Scalar};
use super::matrix::Matrix;

/// Coefficients stored low degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: Field) -> Poly {
        Poly::new(field, vec![])
    }

    pub fn one(field: Field) -> Poly {
        Poly::new(field, vec![field.one()])
    }

    pub fn x(field: Field) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    /// `x − c`
    pub fn linear(field: Field, c: &Scalar) -> Poly {
        Poly::new(field, vec![field.neg(c), field.one()])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let f = self.field;
        let inv = f.inv(&self.lead()).expect("nonzero lead");
        Poly::new(f, self.coeffs.iter().map(|c| f.mul(c, &inv)).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = f.zero();
        Poly::new(
            f,
            (0..n)
                .map(|i| {
                    f.add(
                        self.coeffs.get(i).unwrap_or(&z),
                        o.coeffs.get(i).unwrap_or(&z),
                    )
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = f.zero();
        Poly::new(
            f,
            (0..n)
                .map(|i| {
                    f.sub(
                        self.coeffs.get(i).unwrap_or(&z),
                        o.coeffs.get(i).unwrap_or(&z),
                    )
                })
                .collect(),
        )
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let f = self.field;
        if self.is_zero() || o.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let f = self.field;
        let mut rem = self.coeffs.clone();
        let dd = d.deg();
        if self.coeffs.len() < d.coeffs.len() {
            return (Poly::zero(f), self.clone());
        }
        let inv = f.inv(&d.lead()).unwrap();
        let mut quot = vec![f.zero(); self.coeffs.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(&rem[k + dd], &inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(&rem[k + j], &f.mul(&c, dj));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(f, quot), Poly::new(f, rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        Poly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn mulmod(&self, o: &Poly, m: &Poly) -> Poly {
        self.mul(o).rem(m)
    }

    pub fn powmod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, m);
            }
        }
        acc
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `p(A)` by Horner's rule.
    pub fn eval_matrix(&self, a: &Matrix) -> Matrix {
        let f = self.field;
        let n = a.rows();
        let mut acc = Matrix::zeros(f, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a).add(&Matrix::scalar(f, n, c));
        }
        acc
    }
}

/// Characteristic polynomial `det(x·I − A)` via reduction to upper Hessenberg
/// form by similarity transforms.
pub fn charpoly(a: &Matrix) -> Poly {
    assert!(a.is_square());
    let f = a.field();
    let n = a.rows();
    let mut h = a.clone();
    for m in 1..n.saturating_sub(1) {
        let Some(piv) = (m..n).find(|&i| !f.is_zero(h.get(i, m - 1))) else {
            continue;
        };
        if piv != m {
            for j in 0..n {
                let t = h.get(piv, j).clone();
                h.set(piv, j, h.get(m, j).clone());
                h.set(m, j, t);
            }
            for i in 0..n {
                let t = h.get(i, piv).clone();
                h.set(i, piv, h.get(i, m).clone());
                h.set(i, m, t);
            }
        }
        let inv = f.inv(h.get(m, m - 1)).unwrap();
        for i in m + 1..n {
            let u = f.mul(h.get(i, m - 1), &inv);
            if f.is_zero(&u) {
                continue;
            }
            for j in 0..n {
                let v = f.sub(h.get(i, j), &f.mul(&u, h.get(m, j)));
                h.set(i, j, v);
            }
            for r in 0..n {
                let v = f.add(h.get(r, m), &f.mul(&u, h.get(r, i)));
                h.set(r, m, v);
            }
        }
    }
    // p_k = charpoly of the leading k×k block of the Hessenberg matrix.
    let mut ps: Vec<Poly> = vec![Poly::one(f)];
    for k in 1..=n {
        let x_minus = Poly::new(f, vec![f.neg(h.get(k - 1, k - 1)), f.one()]);
        let mut pk = x_minus.mul(&ps[k - 1]);
        let mut prod = f.one();
        for i in 1..k {
            prod = f.mul(&prod, h.get(k - i, k - i - 1));
            let t = f.mul(&prod, h.get(k - i - 1, k - 1));
            let term = Poly::new(f, vec![t]).mul(&ps[k - i - 1]);
            pk = pk.sub(&term);
        }
        ps.push(pk);
    }
    ps.pop().unwrap()
}

/// Result of factoring: distinct monic factors, pairwise coprime. `complete`
/// is true when every returned factor is known to be irreducible.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub factors: Vec<Poly>,
    pub complete: bool,
}

/// Distinct irreducible factors of a nonzero polynomial over `F_p`, or a
/// coprime splitting over ℚ.
pub fn distinct_factors<R: Rng + ?Sized>(poly: &Poly, rng: &mut R) -> Factorization {
    assert!(!poly.is_zero());
    match poly.field() {
        Field::Prime(p) => Factorization {
            factors: factor_fp(&poly.monic(), p, rng),
            complete: true,
        },
        Field::Rational => factor_rational(&poly.monic()),
    }
}

fn factor_fp<R: Rng + ?Sized>(f: &Poly, p: u64, rng: &mut R) -> Vec<Poly> {
    let field = f.field();
    let mut out = Vec::new();
    let mut g = f.clone();
    let x = Poly::x(field);
    let mut xp = x.clone();
    let mut d = 0usize;
    while g.deg() > 0 {
        d += 1;
        if 2 * d > g.deg() {
            // What remains is a power of a single irreducible: extract its radical.
            let h = radical_single_fp(&g, p);
            let mut eq = Vec::new();
            edf(&h, h.deg(), p, rng, &mut eq);
            out.extend(eq);
            break;
        }
        xp = xp.powmod(p, &g);
        let h = xp.sub(&x).gcd(&g);
        if h.deg() > 0 {
            let mut eq = Vec::new();
            edf(&h, d, p, rng, &mut eq);
            out.extend(eq);
            loop {
                let c = g.gcd(&h);
                if c.deg() == 0 {
                    break;
                }
                g = g.divrem(&c).0;
            }
            xp = xp.rem(&g);
        }
    }
    out.sort_by(|a, b| {
        a.deg()
            .cmp(&b.deg())
            .then_with(|| fp_key(a).cmp(&fp_key(b)))
    });
    out
}

fn fp_key(p: &Poly) -> Vec<u64> {
    p.coeffs().iter().map(|c| c.as_u64().unwrap()).collect()
}

/// `g` has no irreducible factor of degree ≤ deg(g)/2 other than through
/// repetition, so it is `r^k` for an irreducible `r`; return `r`.
fn radical_single_fp(g: &Poly, p: u64) -> Poly {
    let mut h = g.clone();
    loop {
        let d = h.derivative();
        if d.is_zero() {
            // h(x) = s(x^p); over F_p, s(x^p) = s(x)^p.
            let f = h.field();
            let coeffs: Vec<Scalar> = h.coeffs().iter().step_by(p as usize).cloned().collect();
            h = Poly::new(f, coeffs);
            continue;
        }
        let c = h.gcd(&d);
        if c.deg() == 0 {
            return h;
        }
        h = h.divrem(&c).0;
    }
}

/// Cantor–Zassenhaus equal-degree splitting of a square-free product of
/// degree-`d` irreducibles.
fn edf<R: Rng + ?Sized>(h: &Poly, d: usize, p: u64, rng: &mut R, out: &mut Vec<Poly>) {
    let n = h.deg();
    if n == 0 {
        return;
    }
    if n == d {
        out.push(h.monic());
        return;
    }
    let field = h.field();
    loop {
        let a = Poly::new(field, (0..n).map(|_| field.random(rng)).collect());
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // Trace map a + a^2 + … + a^(2^(d−1)).
            let mut t = a.rem(h);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mulmod(&t, h);
                acc = acc.add(&t);
            }
            acc
        } else {
            // a^((p^d − 1)/2) = ∏_{i<d} (a^((p−1)/2))^(p^i)
            let c = a.powmod((p - 1) / 2, h);
            let mut frob = c.clone();
            let mut acc = c;
            for _ in 1..d {
                frob = frob.powmod(p, h);
                acc = acc.mulmod(&frob, h);
            }
            acc.sub(&Poly::one(field))
        };
        let g = b.gcd(h);
        if g.deg() > 0 && g.deg() < n {
            let q = h.divrem(&g).0;
            edf(&g, d, p, rng, out);
            edf(&q, d, p, rng, out);
            return;
        }
    }
}

fn factor_rational(f: &Poly) -> Factorization {
    // Square-free decomposition (Yun) gives pairwise coprime pieces.
    let field = f.field();
    let mut pieces = Vec::new();
    let d = f.derivative();
    let mut a = f.gcd(&d);
    let mut b = f.divrem(&a).0;
    let mut c = d.divrem(&a).0.sub(&b.derivative());
    while b.deg() > 0 {
        let g = b.gcd(&c);
        if g.deg() > 0 {
            pieces.push(g.clone());
        }
        b = b.divrem(&g).0;
        c = c.divrem(&g).0.sub(&b.derivative());
        a = a.divrem(&g).0;
    }
    let _ = a;
    // Peel rational roots off each piece.
    let mut factors = Vec::new();
    let mut complete = true;
    for piece in pieces {
        let mut rest = piece;
        for r in rational_roots(&rest) {
            let lin = Poly::linear(field, &r);
            rest = rest.divrem(&lin).0;
            factors.push(lin);
        }
        match rest.deg() {
            0 => {}
            1 => factors.push(rest.monic()),
            _ => {
                complete = false;
                factors.push(rest.monic());
            }
        }
    }
    Factorization { factors, complete }
}

/// Rational roots by the rational root theorem, attempted only when the
/// cleared-denominator coefficients are small enough to factor by trial
/// division.
fn rational_roots(f: &Poly) -> Vec<Scalar> {
    const LIMIT: u64 = 1_000_000;
    let field = f.field();
    if f.deg() == 0 {
        return vec![];
    }
    let rats: Vec<BigRational> = f
        .coeffs()
        .iter()
        .map(|c| match c {
            Scalar::Q(q) => q.clone(),
            Scalar::Fp(_) => unreachable!(),
        })
        .collect();
    let lcm = rats
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * &lcm).to_integer()).collect();
    let mut roots = Vec::new();
    // Zero root.
    let mut low = 0;
    while ints[low].is_zero() {
        low += 1;
    }
    if low > 0 {
        roots.push(field.zero());
    }
    let c0 = ints[low].abs().to_u64();
    let cn = ints.last().unwrap().abs().to_u64();
    let (Some(c0), Some(cn)) = (c0, cn) else {
        return roots;
    };
    if c0 > LIMIT || cn > LIMIT {
        return roots;
    }
    let divs = |n: u64| (1..=n).filter(move |d| n.is_multiple_of(*d));
    let mut seen = std::collections::HashSet::new();
    for num in divs(c0) {
        for den in divs(cn) {
            for sign in [1i64, -1] {
                let cand = BigRational::new(BigInt::from(sign * num as i64), BigInt::from(den));
                if !seen.insert(cand.clone()) {
                    continue;
                }
                let s = Scalar::Q(cand);
                if field.is_zero(&f.eval(&s)) {
                    roots.push(s);
                }
            }
        }
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn poly(field: Field, c: &[i64]) -> Poly {
        Poly::new(field, c.iter().map(|&v| field.from_i64(v)).collect())
    }

    #[test]
    fn charpoly_of_companion_matrix() {
        // companion of x^3 − 2x + 5
        let f = Field::Rational;
        let m = Matrix::from_i64_rows(f, &[vec![0, 0, -5], vec![1, 0, 2], vec![0, 1, 0]]);
        assert_eq!(charpoly(&m), poly(f, &[5, -2, 0, 1]));
    }

    #[test]
    fn charpoly_matches_determinant_expansion_fp() {
        let f = Field::prime(7).unwrap();
        let m = Matrix::from_i64_rows(f, &[vec![1, 2], vec![3, 4]]);
        // x^2 − 5x − 2
        assert_eq!(charpoly(&m), poly(f, &[-2, -5, 1]));
    }

    #[test]
    fn fp_factorization_recovers_product() {
        let f = Field::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // (x − 1)^2 (x^2 + 2) (x + 3); x^2 + 2 is irreducible mod 5
        let g = poly(f, &[-1, 1])
            .mul(&poly(f, &[-1, 1]))
            .mul(&poly(f, &[2, 0, 1]))
            .mul(&poly(f, &[3, 1]));
        let fac = distinct_factors(&g, &mut rng);
        assert!(fac.complete);
        assert_eq!(
            fac.factors,
            vec![poly(f, &[3, 1]), poly(f, &[4, 1]), poly(f, &[2, 0, 1])]
        );
    }

    #[test]
    fn fp2_factorization() {
        let f = Field::prime(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // (x^2 + x + 1)(x^3 + x + 1)(x^3 + x^2 + 1)
        let g = poly(f, &[1, 1, 1])
            .mul(&poly(f, &[1, 1, 0, 1]))
            .mul(&poly(f, &[1, 0, 1, 1]));
        let fac = distinct_factors(&g, &mut rng);
        assert_eq!(fac.factors.len(), 3);
        let prod = fac.factors.iter().fold(Poly::one(f), |a, b| a.mul(b));
        assert_eq!(prod, g);
    }

    #[test]
    fn pure_power_of_irreducible() {
        let f = Field::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let r = poly(f, &[1, 0, 1]); // x^2 + 1 irreducible mod 3
        let g = r.mul(&r).mul(&r);
        let fac = distinct_factors(&g, &mut rng);
        assert_eq!(fac.factors, vec![r]);
    }

    #[test]
    fn rational_roots_and_squarefree_pieces() {
        let f = Field::Rational;
        // (x − 1/2)^2 (x + 3)
        let half = Poly::new(f, vec![f.from_ratio(-1, 2).unwrap(), f.one()]);
        let g = half.mul(&half).mul(&poly(f, &[3, 1]));
        let fac = distinct_factors(&g, &mut ChaCha8Rng::seed_from_u64(0));
        assert!(fac.complete);
        assert_eq!(fac.factors.len(), 2);
        // x^2 − 2 stays whole
        let fac = distinct_factors(&poly(f, &[-2, 0, 1]), &mut ChaCha8Rng::seed_from_u64(0));
        assert!(!fac.complete);
        assert_eq!(fac.factors.len(), 1);
    }
}
