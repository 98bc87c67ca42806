//! Finite fields F_{p^n} with deterministic moduli, embeddings between them,
//! trace-one normal elements and Artin–Schreier roots.
//!
//! Elements are indexed by Σ c_i p^i over their power-basis coordinates; every
//! "first" choice below means smallest index.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::{self, prime_factors};
use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq)]
pub struct FField {
    p: u64,
    n: usize,
    /// Monic modulus, lowest degree first, length n + 1.
    modulus: Vec<u64>,
}

impl FField {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Number of elements, `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.n as u32)
    }
}

impl fmt::Display for FField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p, self.n, self.modulus)
    }
}

pub type FieldRef = Arc<FField>;

#[derive(Clone, PartialEq, Eq)]
pub struct FFElem {
    field: FieldRef,
    coeffs: Vec<u64>,
}

impl fmt::Debug for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

impl Serialize for FFElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

impl FFElem {
    pub fn zero(field: &FieldRef) -> Self {
        FFElem {
            field: field.clone(),
            coeffs: vec![0; field.n],
        }
    }

    pub fn one(field: &FieldRef) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &FieldRef, c: i64) -> Self {
        let mut e = Self::zero(field);
        e.coeffs[0] = arith::modulo(c, field.p);
        e
    }

    /// The class of x, i.e. the generator of the power basis.
    pub fn generator(field: &FieldRef) -> Self {
        Self::from_coeffs(field, &[0, 1])
    }

    /// Coefficients lowest degree first; reduced modulo p and the modulus.
    pub fn from_coeffs(field: &FieldRef, c: &[u64]) -> Self {
        let p = field.p;
        let mut v: Vec<u64> = c.iter().map(|x| x % p).collect();
        reduce(field, &mut v);
        FFElem {
            field: field.clone(),
            coeffs: v,
        }
    }

    /// Element with scan index `idx` = Σ c_i p^i.
    pub fn from_index(field: &FieldRef, mut idx: u128) -> Self {
        let mut c = vec![0; field.n];
        for slot in c.iter_mut() {
            *slot = (idx % field.p as u128) as u64;
            idx /= field.p as u128;
        }
        FFElem {
            field: field.clone(),
            coeffs: c,
        }
    }

    pub fn index(&self) -> u128 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * self.field.p as u128 + c as u128)
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// `Some(c)` when the element lies in the prime field.
    pub fn as_prime(&self) -> Option<u64> {
        self.coeffs[1..].iter().all(|&c| c == 0).then(|| self.coeffs[0])
    }

    fn same(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field == other.field,
            "finite field mismatch"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same(other);
        let p = self.field.p;
        FFElem {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| (a + b) % p)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        let p = self.field.p;
        FFElem {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&a| (p - a) % p).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same(other);
        let p = self.field.p;
        let n = self.field.n;
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        reduce(&self.field, &mut prod);
        FFElem {
            field: self.field.clone(),
            coeffs: prod,
        }
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.field.p;
        FFElem {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&a| mul_mod(a, c % p, p)).collect(),
        }
    }

    pub fn pow(&self, mut e: u128) -> Self {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// x^{p^k}.
    pub fn frobenius(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |x, _| x.pow(self.field.p as u128))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let q = self
            .field
            .order()
            .ok_or_else(|| Error::FiniteField("field order overflows".into()))?;
        Ok(self.pow(q - 2))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Trace down to the subfield of degree `sub` (which must divide the degree):
    /// Σ_{i < n/sub} x^{p^{sub·i}}.
    pub fn trace_to(&self, sub: usize) -> Self {
        self.relative_trace(self.field.n, sub)
    }

    /// Trace from the subfield of degree `from` (which must contain the element)
    /// down to the subfield of degree `to`.
    pub fn relative_trace(&self, from: usize, to: usize) -> Self {
        assert!(self.field.n % from == 0 && from % to == 0, "not a subfield tower");
        let steps = from / to;
        let mut acc = Self::zero(&self.field);
        let mut x = self.clone();
        for _ in 0..steps {
            acc = acc.add(&x);
            x = x.frobenius(to);
        }
        acc
    }

    /// Absolute trace to F_p.
    pub fn trace(&self) -> u64 {
        self.trace_to(1).as_prime().expect("trace lies in the prime field")
    }
}

fn reduce(field: &FField, v: &mut Vec<u64>) {
    let n = field.n;
    let p = field.p;
    for i in (n..v.len()).rev() {
        let c = v[i];
        if c == 0 {
            continue;
        }
        v[i] = 0;
        for (j, &m) in field.modulus[..n].iter().enumerate() {
            if m != 0 {
                v[i - n + j] = (v[i - n + j] + p - mul_mod(c, m, p)) % p;
            }
        }
    }
    v.resize(n, 0);
}

/// Polynomial over a finite field, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FFPoly {
    field: FieldRef,
    coeffs: Vec<FFElem>,
}

impl FFPoly {
    pub fn new(field: &FieldRef, mut coeffs: Vec<FFElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FFPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn x(field: &FieldRef) -> Self {
        Self::new(field, vec![FFElem::zero(field), FFElem::one(field)])
    }

    pub fn constant(c: FFElem) -> Self {
        let f = c.field.clone();
        Self::new(&f, vec![c])
    }

    /// Polynomial with prime-field coefficients.
    pub fn from_prime(field: &FieldRef, c: &[u64]) -> Self {
        Self::new(field, c.iter().map(|&x| FFElem::from_int(field, x as i64)).collect())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[FFElem] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = FFElem::zero(&self.field);
        let c = (0..n)
            .map(|i| {
                self.coeffs
                    .get(i)
                    .unwrap_or(&z)
                    .add(other.coeffs.get(i).unwrap_or(&z))
            })
            .collect();
        Self::new(&self.field, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(FFElem::neg).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(&self.field, Vec::new());
        }
        let mut c = vec![FFElem::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Self::new(&self.field, c)
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.coeffs[dd].inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::new(&self.field, Vec::new()), self.clone());
        }
        let mut quot = vec![FFElem::zero(&self.field); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, dj) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].sub(&c.mul(dj));
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(&self.field, quot), Self::new(&self.field, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().expect("nonzero");
                Self::new(&self.field, self.coeffs.iter().map(|c| c.mul(&inv)).collect())
            }
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// self^e mod `modulus`.
    pub fn pow_mod(&self, mut e: u128, modulus: &Self) -> Self {
        let mut acc = Self::constant(FFElem::one(&self.field)).rem(modulus);
        let mut base = self.rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(modulus);
            }
        }
        acc
    }

    pub fn eval(&self, x: &FFElem) -> FFElem {
        self.coeffs
            .iter()
            .rev()
            .fold(FFElem::zero(&self.field), |acc, c| acc.mul(x).add(c))
    }
}

/// Rabin's irreducibility test for a monic polynomial over F_p.
fn is_irreducible(p: u64, poly: &[u64]) -> bool {
    let prime = prime_field(p);
    let f = FFPoly::from_prime(&prime, poly);
    let n = poly.len() - 1;
    let x = FFPoly::x(&prime);
    // x^{p^k} mod f
    let frob = |k: usize| (0..k).fold(x.clone(), |y, _| y.pow_mod(p as u128, &f));
    if frob(n).sub(&x).rem(&f) != FFPoly::new(&prime, Vec::new()) {
        return false;
    }
    prime_factors(n as u64).into_iter().all(|r| {
        let g = frob(n / r as usize).sub(&x).gcd(&f);
        g.degree() == Some(0)
    })
}

fn prime_field(p: u64) -> FieldRef {
    Arc::new(FField {
        p,
        n: 1,
        modulus: vec![0, 1],
    })
}

/// F_{p^n} with the first monic irreducible modulus in the scan over
/// (c_{n−1}, …, c_0), constant term last.
pub fn ff_field(p: u64, n: usize) -> Result<FieldRef> {
    if !arith::is_prime(p) || n == 0 {
        return Err(Error::FiniteField(format!("invalid field size {p}^{n}")));
    }
    if n == 1 {
        return Ok(prime_field(p));
    }
    let total = (p as u128)
        .checked_pow(n as u32)
        .ok_or_else(|| Error::FiniteField("field too large".into()))?;
    for idx in 0..total {
        let mut c = Vec::with_capacity(n + 1);
        let mut k = idx;
        for _ in 0..n {
            c.push((k % p as u128) as u64);
            k /= p as u128;
        }
        c.push(1);
        if c[0] != 0 && is_irreducible(p, &c) {
            return Ok(Arc::new(FField { p, n, modulus: c }));
        }
    }
    Err(Error::FiniteField(format!("no irreducible of degree {n} over F_{p}")))
}

/// All roots of a squarefree polynomial that splits into linear factors,
/// sorted by scan index.
pub fn split_roots(f: &FFPoly) -> Result<Vec<FFElem>> {
    let field = f.field.clone();
    let q = field
        .order()
        .ok_or_else(|| Error::FiniteField("field order overflows".into()))?;
    let mut out = Vec::new();
    let mut stack = vec![f.monic()];
    while let Some(g) = stack.pop() {
        match g.degree() {
            None => return Err(Error::FiniteField("zero polynomial".into())),
            Some(0) => {}
            Some(1) => out.push(g.coeffs[0].neg()),
            Some(_) => {
                let mut split = None;
                for delta in 0..q {
                    let shift = FFPoly::x(&field).add(&FFPoly::constant(FFElem::from_index(&field, delta)));
                    let h = shift
                        .pow_mod((q - 1) / 2, &g)
                        .sub(&FFPoly::constant(FFElem::one(&field)))
                        .gcd(&g);
                    if h.degree().is_some_and(|d| d > 0 && Some(d) < g.degree()) {
                        split = Some(h);
                        break;
                    }
                }
                let h = split.ok_or_else(|| {
                    Error::FiniteField("polynomial does not split into distinct linear factors".into())
                })?;
                let (rest, r) = g.div_rem(&h);
                debug_assert!(r.is_zero());
                stack.push(h);
                stack.push(rest);
            }
        }
    }
    for r in &out {
        if !f.eval(r).is_zero() {
            return Err(Error::FiniteField("polynomial does not split".into()));
        }
    }
    out.sort_by_key(FFElem::index);
    Ok(out)
}

/// A field embedding F_{p^e} → F_{p^n} sending the generator to a root of the
/// smaller modulus.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub src: FieldRef,
    pub dst: FieldRef,
    image: FFElem,
}

impl Embedding {
    /// Uses the first root (scan order) of the source modulus in the target field.
    pub fn first_root(src: &FieldRef, dst: &FieldRef) -> Result<Self> {
        if src.p != dst.p || dst.n % src.n != 0 {
            return Err(Error::FiniteField(format!("no embedding of {src} into {dst}")));
        }
        let f = FFPoly::from_prime(dst, &src.modulus);
        let image = split_roots(&f)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::FiniteField("modulus has no root".into()))?;
        Ok(Embedding {
            src: src.clone(),
            dst: dst.clone(),
            image,
        })
    }

    pub fn apply(&self, x: &FFElem) -> FFElem {
        assert!(*x.field == *self.src, "element is not in the source field");
        x.coeffs
            .iter()
            .rev()
            .fold(FFElem::zero(&self.dst), |acc, &c| {
                acc.mul(&self.image).add(&FFElem::from_int(&self.dst, c as i64))
            })
    }

    pub fn compose(&self, next: &Embedding) -> Embedding {
        assert!(*self.dst == *next.src, "embeddings do not compose");
        Embedding {
            src: self.src.clone(),
            dst: next.dst.clone(),
            image: next.apply(&self.image),
        }
    }
}

/// F_p-rank of a list of elements of one field.
pub fn prime_rank(elems: &[FFElem]) -> usize {
    let Some(first) = elems.first() else { return 0 };
    let p = first.field.p;
    let mut rows: Vec<Vec<u64>> = elems.iter().map(|e| e.coeffs.clone()).collect();
    let cols = first.field.n;
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = arith::inv_mod(rows[rank][c] as i64, p).expect("prime modulus");
        for i in 0..rows.len() {
            if i != rank && rows[i][c] != 0 {
                let f = mul_mod(rows[i][c], inv, p);
                for j in 0..cols {
                    let sub = mul_mod(f, rows[rank][j], p);
                    rows[i][j] = (rows[i][j] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The first element (scan order) of F_{p^n} with trace 1 whose Frobenius orbit
/// is an F_p-basis.
pub fn trace_one_normal_basis(p: u64, n: usize) -> Result<FFElem> {
    let field = ff_field(p, n)?;
    let q = field.order().ok_or_else(|| Error::FiniteField("field too large".into()))?;
    for idx in 1..q {
        let x = FFElem::from_index(&field, idx);
        if x.trace() != 1 {
            continue;
        }
        let orbit: Vec<FFElem> = (0..n).map(|k| x.frobenius(k)).collect();
        if prime_rank(&orbit) == n {
            return Ok(x);
        }
    }
    Err(Error::FiniteField(format!("no trace-one normal element in F_{p}^{n}")))
}

/// The fields F_q ⊆ F_{q^d} with F_{p^d} ⊆ F_{q^d}, and the embeddings between
/// them, together with A and θ₂ placed in F_{q^d}. F_{q^{dp}} is built on demand.
#[derive(Debug, Clone)]
pub struct Tower {
    pub p: u64,
    pub m: usize,
    pub d: usize,
    pub fq: FieldRef,
    pub fqd: FieldRef,
    pub q_to_qd: Embedding,
    /// Trace-one normal element of F_q.
    pub a: FFElem,
    /// Trace-one normal element of F_{p^d}, embedded in F_{q^d}.
    pub theta2: FFElem,
}

impl Tower {
    pub fn new(p: u64, m: usize, d: usize) -> Result<Self> {
        if arith::gcd(m as u64, d as u64) != 1 {
            return Err(Error::InvalidParams(format!("gcd(m, d) = gcd({m}, {d}) != 1")));
        }
        let fq = ff_field(p, m)?;
        let fqd = ff_field(p, m * d)?;
        let q_to_qd = Embedding::first_root(&fq, &fqd)?;
        let a = trace_one_normal_basis(p, m)?;
        let theta_small = trace_one_normal_basis(p, d)?;
        let pd_to_qd = Embedding::first_root(theta_small.field(), &fqd)?;
        Ok(Tower {
            p,
            m,
            d,
            theta2: pd_to_qd.apply(&theta_small),
            a,
            fq,
            fqd,
            q_to_qd,
        })
    }

    /// Embedding of F_{q^d} into F_{q^{dp}}; refused when q^{dp} does not fit in 64 bits.
    pub fn extension(&self) -> Result<Embedding> {
        let n = self.m * self.d * self.p as usize;
        if self.p.checked_pow(n as u32).is_none() {
            return Err(Error::SizeLimit(format!("F_{}^{n} exceeds 64 bits", self.p)));
        }
        let top = ff_field(self.p, n)?;
        Embedding::first_root(&self.fqd, &top)
    }

    /// Aθ₂ in F_{q^d}.
    pub fn constant(&self) -> FFElem {
        self.q_to_qd.apply(&self.a).mul(&self.theta2)
    }

    /// q^d as an exponent.
    pub fn qd(&self) -> u128 {
        (self.p as u128).pow((self.m * self.d) as u32)
    }

    /// Nonzero element of F_q with the given scan index.
    pub fn alpha1(&self, index: u128) -> Result<FFElem> {
        let q = self.fq.order().expect("small field");
        if index == 0 || index >= q {
            return Err(Error::InvalidParams(format!(
                "alpha1 index {index} outside 1..{q}"
            )));
        }
        Ok(FFElem::from_index(&self.fq, index))
    }
}

/// X^p − X + c as a polynomial over the field of `c`.
fn artin_schreier_poly(c: &FFElem) -> FFPoly {
    let field = c.field.clone();
    let p = field.p as usize;
    let mut coeffs = vec![FFElem::zero(&field); p + 1];
    coeffs[0] = c.clone();
    coeffs[1] = FFElem::from_int(&field, -1);
    coeffs[p] = FFElem::one(&field);
    FFPoly::new(&field, coeffs)
}

/// Divides X^{q^d} − X + 1 by X^p − X + Aθ₂ over F_{q^d}, never expanding the
/// dividend: X^{q^d} is reduced by md successive p-th powers in the quotient.
pub fn artin_schreier_divisibility_check(p: u64, m: usize, d: usize) -> Result<bool> {
    let t = Tower::new(p, m, d)?;
    let g = artin_schreier_poly(&t.constant());
    let x = FFPoly::x(&t.fqd);
    let xq = (0..m * d).fold(x.clone(), |y, _| y.pow_mod(p as u128, &g));
    let rem = xq
        .sub(&x)
        .add(&FFPoly::constant(FFElem::one(&t.fqd)))
        .rem(&g);
    Ok(rem.is_zero())
}

/// The same divisibility read through the roots: every root r of X^p − X + Aθ₂
/// (in F_{q^{dp}}) satisfies r^{q^d} − r + 1 = 0.
pub fn artin_schreier_roots_check(p: u64, m: usize, d: usize) -> Result<bool> {
    let t = Tower::new(p, m, d)?;
    let up = t.extension()?;
    let c = up.apply(&t.constant());
    let roots = split_roots(&artin_schreier_poly(&c))?;
    let one = FFElem::one(&up.dst);
    Ok(roots.len() == p as usize
        && roots
            .iter()
            .all(|r| r.pow(t.qd()).sub(r).add(&one).is_zero()))
}

/// A root of X^p − X + c: inside the field of `c` when one exists there,
/// otherwise in the degree-p extension (first root in scan order either way).
pub fn artin_schreier_root(c: &FFElem) -> Result<FFElem> {
    if c.is_zero() {
        return Err(Error::FiniteField("Artin–Schreier constant must be nonzero".into()));
    }
    let field = c.field.clone();
    let p = field.p;
    let f = artin_schreier_poly(c);
    if c.trace() == 0 {
        return Ok(split_roots(&f)?.remove(0));
    }
    let big = ff_field(p, field.n * p as usize)?;
    let emb = Embedding::first_root(&field, &big)?;
    artin_schreier_root_in(&emb.apply(c))
}

/// First root (scan order) of X^p − X + c in the field of `c`.
pub fn artin_schreier_root_in(c: &FFElem) -> Result<FFElem> {
    let roots = split_roots(&artin_schreier_poly(c))?;
    roots
        .into_iter()
        .next()
        .ok_or_else(|| Error::FiniteField("no root".into()))
}

/// With x₂ = α₁·r for the Artin–Schreier root r of Aθ₂, checks x₂^{q^d} − x₂ = −α₁.
pub fn frobenius_shift_check(p: u64, m: usize, d: usize, alpha1_index: u128) -> Result<bool> {
    let t = Tower::new(p, m, d)?;
    t.alpha1(alpha1_index)?;
    Ok(frobenius_shift_failures(&t, &[alpha1_index])?.is_empty())
}

/// The α₁ indices among `indices` for which the identity fails, with the tower,
/// extension and root computed once.
pub fn frobenius_shift_failures(t: &Tower, indices: &[u128]) -> Result<Vec<u128>> {
    let up = t.extension()?;
    let to_big = t.q_to_qd.compose(&up);
    let r = artin_schreier_root_in(&up.apply(&t.constant()))?;
    let mut bad = Vec::new();
    for &idx in indices {
        let alpha_big = to_big.apply(&t.alpha1(idx)?);
        let x2 = alpha_big.mul(&r);
        if x2.pow(t.qd()).sub(&x2) != alpha_big.neg() {
            bad.push(idx);
        }
    }
    Ok(bad)
}

/// α₁, α₁A, α₁A^f, …, α₁A^{f^{m−2}} are F_p-independent, and
/// A^{f^{m−1}} = 1 − Σ_{i ≤ m−2} A^{f^i}.
pub fn residue_basis_check(p: u64, m: usize, alpha1_index: u128) -> Result<bool> {
    let field = ff_field(p, m)?;
    let q = field.order().expect("small field");
    if alpha1_index == 0 || alpha1_index >= q {
        return Err(Error::InvalidParams(format!("alpha1 index {alpha1_index} outside 1..{q}")));
    }
    let alpha = FFElem::from_index(&field, alpha1_index);
    let a = trace_one_normal_basis(p, m)?;
    let mut elems = vec![alpha.clone()];
    let mut partial = FFElem::zero(&field);
    for i in 0..m.saturating_sub(1) {
        let conj = a.frobenius(i);
        elems.push(alpha.mul(&conj));
        partial = partial.add(&conj);
    }
    elems.truncate(m);
    let relation = m == 1 || a.frobenius(m - 1) == FFElem::one(&field).sub(&partial);
    Ok(relation && prime_rank(&elems) == m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn field_moduli() {
        assert_eq!(ff_field(3, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(ff_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(ff_field(5, 2).unwrap().modulus(), &[2, 0, 1]);
        // x³ + 2x + 1 is the first irreducible cubic over F₃ in this scan
        assert_eq!(ff_field(3, 3).unwrap().modulus(), &[1, 2, 0, 1]);
    }

    #[test]
    fn index_round_trip() {
        let f = ff_field(3, 3).unwrap();
        for i in 0..27 {
            assert_eq!(FFElem::from_index(&f, i).index(), i);
        }
    }

    #[test]
    fn normal_basis_examples() {
        let t = trace_one_normal_basis(3, 1).unwrap();
        assert!(t.is_one());
        let t = trace_one_normal_basis(3, 2).unwrap();
        assert_eq!(t.coeffs(), &[2, 1]);
        for (p, n) in [(3, 3), (3, 4), (5, 2), (5, 3), (7, 2)] {
            let t = trace_one_normal_basis(p, n).unwrap();
            assert_eq!(t.trace(), 1);
            let orbit: Vec<_> = (0..n).map(|k| t.frobenius(k)).collect();
            assert_eq!(prime_rank(&orbit), n);
        }
    }

    #[test]
    fn embeddings_are_homomorphisms() {
        let small = ff_field(3, 2).unwrap();
        let big = ff_field(3, 6).unwrap();
        let e = Embedding::first_root(&small, &big).unwrap();
        for i in 0..9 {
            for j in 0..9 {
                let (x, y) = (FFElem::from_index(&small, i), FFElem::from_index(&small, j));
                assert_eq!(e.apply(&x.mul(&y)), e.apply(&x).mul(&e.apply(&y)));
                assert_eq!(e.apply(&x.add(&y)), e.apply(&x).add(&e.apply(&y)));
            }
        }
    }

    #[test]
    fn divisibility_examples() {
        for (p, m, d) in [(3, 1, 2), (3, 2, 1), (5, 2, 3), (3, 1, 4)] {
            assert!(artin_schreier_divisibility_check(p, m, d).unwrap(), "({p},{m},{d})");
        }
        for (p, m, d) in [(3, 1, 2), (3, 2, 1), (5, 1, 2)] {
            assert!(artin_schreier_roots_check(p, m, d).unwrap(), "({p},{m},{d})");
        }
    }

    #[test]
    fn artin_schreier_examples() {
        let f3 = ff_field(3, 1).unwrap();
        let c = FFElem::one(&f3);
        let r = artin_schreier_root(&c).unwrap();
        assert_eq!(r.field().degree(), 3);
        let emb = Embedding::first_root(&f3, r.field()).unwrap();
        let c_big = emb.apply(&c);
        assert!(r.pow(3).sub(&r).add(&c_big).is_zero());
        // trace-zero constant: root stays in the field
        let f9 = ff_field(3, 2).unwrap();
        let c = (1..9)
            .map(|i| FFElem::from_index(&f9, i))
            .find(|x| x.trace() == 0)
            .unwrap();
        let r = artin_schreier_root(&c).unwrap();
        assert_eq!(r.field().degree(), 2);
        assert!(r.pow(3).sub(&r).add(&c).is_zero());
    }

    #[test]
    fn frobenius_shift_examples() {
        assert!(frobenius_shift_check(3, 1, 2, 1).unwrap());
        for a in 1..9 {
            assert!(frobenius_shift_check(3, 2, 1, a).unwrap());
        }
        assert!(frobenius_shift_check(5, 1, 2, 1).unwrap());
        assert!(frobenius_shift_check(3, 2, 1, 9).is_err());
        assert!(matches!(frobenius_shift_check(5, 3, 4, 1), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn residue_basis_examples() {
        assert!(residue_basis_check(3, 1, 1).unwrap());
        assert!(residue_basis_check(3, 2, 1).unwrap());
        assert!(residue_basis_check(3, 4, 5).unwrap());
    }

    #[test]
    fn product_trace_is_one() {
        for (p, m, d) in [(3, 1, 2), (3, 2, 1), (5, 1, 2), (3, 3, 2)] {
            let t = Tower::new(p, m, d).unwrap();
            assert_eq!(t.constant().trace(), 1);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn frobenius_linear_and_multiplicative(i in 0u128..729, j in 0u128..729, k in 0usize..6) {
            let f = ff_field(3, 6).unwrap();
            let (x, y) = (FFElem::from_index(&f, i), FFElem::from_index(&f, j));
            prop_assert_eq!(x.add(&y).frobenius(k), x.frobenius(k).add(&y.frobenius(k)));
            prop_assert_eq!(x.mul(&y).frobenius(k), x.frobenius(k).mul(&y.frobenius(k)));
            prop_assert_eq!(x.scale(2).frobenius(k), x.frobenius(k).scale(2));
        }

        #[test]
        fn trace_tower(i in 0u128..15625) {
            // F_{5^6} over F_{5^2} over F_5
            let f = ff_field(5, 6).unwrap();
            let x = FFElem::from_index(&f, i);
            prop_assert_eq!(x.trace_to(2).relative_trace(2, 1), x.trace_to(1));
            prop_assert_eq!(x.trace_to(3).relative_trace(3, 1), x.trace_to(1));
        }

        #[test]
        fn inverse_law(i in 1u128..729) {
            let f = ff_field(3, 6).unwrap();
            let x = FFElem::from_index(&f, i);
            prop_assert!(x.mul(&x.inv().unwrap()).is_one());
        }
    }
}
