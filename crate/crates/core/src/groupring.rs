//! The group ring of G = ⟨a⟩ × ⟨b⟩ with ord(a) = p and ord(b) = d.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::{Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};
use crate::{CycloElem, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GroupParams {
    pub p: u64,
    pub d: u64,
    pub m: u64,
    /// Inverse of `m` modulo `d`, taken in `1..=d`.
    pub mtilde: u64,
}

impl GroupParams {
    pub fn new(p: u64, d: u64, m: u64) -> Result<Self> {
        if p < 3 || !arith::is_prime(p) {
            return Err(Error::InvalidParams(format!("p = {p} is not an odd prime")));
        }
        if d == 0 || m == 0 {
            return Err(Error::InvalidParams("d and m must be positive".into()));
        }
        if arith::gcd(m, d) != 1 {
            return Err(Error::InvalidParams(format!("gcd(m, d) = gcd({m}, {d}) != 1")));
        }
        let mtilde = (1..=d).find(|t| (m * t) % d == 1 % d).expect("m is a unit mod d");
        Ok(GroupParams { p, d, m, mtilde })
    }

    /// q = p^m.
    pub fn q(&self) -> BigInt {
        BigInt::from(self.p).pow(self.m as u32)
    }

    pub fn order(&self) -> u64 {
        self.p * self.d
    }

    /// Level of the field holding all character values.
    pub fn char_level(&self) -> u64 {
        arith::lcm(self.p, self.d)
    }

    pub fn characters(&self) -> Vec<Character> {
        (0..self.p)
            .flat_map(|u| (0..self.d).map(move |v| Character { u, v }))
            .collect()
    }

    pub fn elements(&self) -> Vec<GroupElem> {
        (0..self.p)
            .flat_map(|i| (0..self.d).map(move |j| GroupElem { i, j }))
            .collect()
    }

    pub fn elem(&self, i: i64, j: i64) -> GroupElem {
        GroupElem {
            i: arith::modulo(i, self.p),
            j: arith::modulo(j, self.d),
        }
    }
}

/// a^i b^j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GroupElem {
    pub i: u64,
    pub j: u64,
}

/// The character χφ with χ(a) = ζ_p^u and φ(b) = ζ_d^v. Serialized as "(u,v)".
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character {
    pub u: u64,
    pub v: u64,
}

impl Character {
    pub const TRIVIAL: Character = Character { u: 0, v: 0 };

    pub fn is_trivial(&self) -> bool {
        *self == Self::TRIVIAL
    }

    /// Value at a^i b^j as an exact root of unity.
    pub fn value(&self, params: &GroupParams, g: GroupElem) -> CycloElem {
        CycloElem::root_of_unity(params.char_level(), self.exponent(params, g))
            .expect("character level within limit")
    }

    /// k with χφ(a^i b^j) = ζ_L^k, L the character level.
    pub fn exponent(&self, params: &GroupParams, g: GroupElem) -> i64 {
        let l = params.char_level();
        ((self.u * g.i % params.p) * (l / params.p) + (self.v * g.j % params.d) * (l / params.d))
            as i64
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

pub type CharValues = BTreeMap<Character, CycloElem>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subgroup {
    A,
    B,
    G,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupRingElem {
    params: GroupParams,
    coeffs: BTreeMap<GroupElem, CycloElem>,
}

impl GroupRingElem {
    pub fn zero(params: &GroupParams) -> Self {
        GroupRingElem {
            params: *params,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(params: &GroupParams) -> Self {
        Self::monomial(params, 0, 0)
    }

    /// a^i b^j with exponents reduced.
    pub fn monomial(params: &GroupParams, i: i64, j: i64) -> Self {
        Self::from_terms(params, [(params.elem(i, j), CycloElem::one())])
    }

    pub fn a(params: &GroupParams) -> Self {
        Self::monomial(params, 1, 0)
    }

    pub fn b(params: &GroupParams) -> Self {
        Self::monomial(params, 0, 1)
    }

    pub fn scalar(params: &GroupParams, c: CycloElem) -> Self {
        Self::from_terms(params, [(GroupElem { i: 0, j: 0 }, c)])
    }

    pub fn int(params: &GroupParams, c: i64) -> Self {
        Self::scalar(params, CycloElem::from_int(c))
    }

    /// Sum of the given terms; repeated group elements accumulate.
    pub fn from_terms(
        params: &GroupParams,
        terms: impl IntoIterator<Item = (GroupElem, CycloElem)>,
    ) -> Self {
        let mut out = Self::zero(params);
        for (g, c) in terms {
            out.add_term(params.elem(g.i as i64, g.j as i64), c);
        }
        out
    }

    fn add_term(&mut self, g: GroupElem, c: CycloElem) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&g) {
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.coeffs.insert(g, s);
                }
            }
            None => {
                self.coeffs.insert(g, c);
            }
        }
    }

    pub fn params(&self) -> &GroupParams {
        &self.params
    }

    pub fn coeff(&self, g: GroupElem) -> CycloElem {
        self.coeffs.get(&g).cloned().unwrap_or_else(CycloElem::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElem, &CycloElem)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.params == other.params {
            Ok(())
        } else {
            Err(Error::ParamsMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (g, c) in &other.coeffs {
            out.add_term(*g, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other.clone())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let (p, d) = (self.params.p, self.params.d);
        let mut out = Self::zero(&self.params);
        for (g, x) in &self.coeffs {
            for (h, y) in &other.coeffs {
                let gh = GroupElem {
                    i: (g.i + h.i) % p,
                    j: (g.j + h.j) % d,
                };
                out.add_term(gh, x * y);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycloElem) -> Self {
        Self::from_terms(
            &self.params,
            self.coeffs.iter().map(|(g, x)| (*g, x * c)),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(&self.params), |acc, _| &acc * self)
    }

    /// Sum of coefficients.
    pub fn augmentation(&self) -> CycloElem {
        self.coeffs
            .values()
            .fold(CycloElem::zero(), |acc, c| &acc + c)
    }

    /// Image under g ↦ g^{-1}.
    pub fn involution(&self) -> Self {
        Self::from_terms(
            &self.params,
            self.coeffs
                .iter()
                .map(|(g, c)| (self.params.elem(-(g.i as i64), -(g.j as i64)), c.clone())),
        )
    }

    /// Σ c·χφ(g), always returned at the character level lcm(p, d).
    pub fn char_eval(&self, ch: &Character) -> CycloElem {
        let level = self.params.char_level();
        let mut rational_terms = Vec::new();
        let mut acc = CycloElem::zero().embed(level).expect("level within limit");
        for (g, c) in &self.coeffs {
            let k = ch.exponent(&self.params, *g);
            match c.as_rational() {
                Some(r) if c.level() == 1 => rational_terms.push((k, r)),
                _ => {
                    let z = CycloElem::root_of_unity(level, k).expect("level within limit");
                    acc = &acc + &(&z * c);
                }
            }
        }
        let r = CycloElem::from_exponents(level, &rational_terms).expect("level within limit");
        &acc + &r
    }

    pub fn char_values(&self) -> CharValues {
        self.params
            .characters()
            .into_iter()
            .map(|ch| (ch, self.char_eval(&ch)))
            .collect()
    }

    /// Fourier inversion: the element whose character values are `values`.
    ///
    /// Missing characters are read as zero.
    pub fn from_char_values(params: &GroupParams, values: &CharValues) -> Self {
        let level = params.char_level();
        let inv_order = CycloElem::from_rational(Rational::new(
            BigInt::one(),
            BigInt::from(params.order()),
        ));
        let terms = params.elements().into_iter().map(|g| {
            let mut c = CycloElem::zero();
            for (ch, x) in values {
                let k = -ch.exponent(params, g);
                let z = CycloElem::root_of_unity(level, k).expect("level within limit");
                c = &c + &(&z * x);
            }
            (g, &c * &inv_order)
        });
        Self::from_terms(params, terms.collect::<Vec<_>>())
    }

    /// Rational coefficients, `None` if some coefficient is irrational.
    pub fn rational_coeffs(&self) -> Option<BTreeMap<GroupElem, Rational>> {
        self.coeffs
            .iter()
            .map(|(g, c)| c.as_rational().map(|r| (*g, r)))
            .collect()
    }

    /// True iff every coefficient is p-integral.
    pub fn p_integral(&self, p: u64) -> bool {
        self.coeffs.values().all(|c| c.p_integral(p))
    }

    /// Report form: `(i, j, serialized coefficient)` triples.
    pub fn to_triples(&self) -> Vec<(u64, u64, String)> {
        self.coeffs
            .iter()
            .map(|(g, c)| (g.i, g.j, c.to_string()))
            .collect()
    }
}

impl Serialize for Character {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for GroupRingElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_triples().serialize(s)
    }
}

impl Serialize for CycloElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Neg for GroupRingElem {
    type Output = Self;

    fn neg(mut self) -> Self {
        for c in self.coeffs.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

macro_rules! gr_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for GroupRingElem {
            type Output = GroupRingElem;

            fn $method(self, rhs: GroupRingElem) -> GroupRingElem {
                self.$checked(&rhs).expect("group ring parameters differ")
            }
        }

        impl<'a> $tr<&'a GroupRingElem> for &'a GroupRingElem {
            type Output = GroupRingElem;

            fn $method(self, rhs: &'a GroupRingElem) -> GroupRingElem {
                self.$checked(rhs).expect("group ring parameters differ")
            }
        }
    };
}

gr_binop!(Add, add, checked_add);
gr_binop!(Sub, sub, checked_sub);
gr_binop!(Mul, mul, checked_mul);

fn subgroup_members(params: &GroupParams, h: Subgroup) -> Vec<GroupElem> {
    match h {
        Subgroup::A => (0..params.p).map(|i| GroupElem { i, j: 0 }).collect(),
        Subgroup::B => (0..params.d).map(|j| GroupElem { i: 0, j }).collect(),
        Subgroup::G => params.elements(),
    }
}

/// T_H, the sum of the elements of H.
pub fn trace_elem(params: &GroupParams, h: Subgroup) -> GroupRingElem {
    GroupRingElem::from_terms(
        params,
        subgroup_members(params, h)
            .into_iter()
            .map(|g| (g, CycloElem::one())),
    )
}

/// e_H = T_H / |H|.
pub fn idempotent(params: &GroupParams, h: Subgroup) -> GroupRingElem {
    let members = subgroup_members(params, h);
    let c = CycloElem::from_rational(Rational::new(
        BigInt::one(),
        BigInt::from(members.len()),
    ));
    GroupRingElem::from_terms(params, members.into_iter().map(|g| (g, c.clone())))
}

/// Replace zero components by 1.
pub fn star(values: &CharValues) -> CharValues {
    values
        .iter()
        .map(|(ch, x)| {
            let y = if x.is_zero() {
                CycloElem::one().embed(x.level()).expect("level within limit")
            } else {
                x.clone()
            };
            (*ch, y)
        })
        .collect()
}

/// The inverse of `x` on the (1 − e)-component, zero on the e-component.
pub fn partial_inverse(x: &GroupRingElem, e: &GroupRingElem) -> Result<GroupRingElem> {
    x.check(e)?;
    if &(e * e) != e {
        return Err(Error::NotIdempotent);
    }
    let params = *x.params();
    let mut values = CharValues::new();
    for ch in params.characters() {
        let ev = e.char_eval(&ch);
        if !ev.is_zero() {
            continue;
        }
        let xv = x.char_eval(&ch);
        let inv = xv.inv().map_err(|_| Error::NotInvertible { u: ch.u, v: ch.v })?;
        values.insert(ch, inv);
    }
    Ok(GroupRingElem::from_char_values(&params, &values))
}

/// Builds u = ∏_{i=1}^{p−1} (1 + a + … + a^{i−1}) in Z[a]/(a^p − 1) and checks
/// p − T_a = (a − 1)^{p−1}u, ε(u) = (p − 1)! and that u is a unit at every character.
pub fn trace_factorization_check(p: u64) -> Result<(GroupRingElem, bool)> {
    let params = GroupParams::new(p, 1, 1)?;
    let a = GroupRingElem::a(&params);
    let one = GroupRingElem::one(&params);
    let mut u = one.clone();
    for i in 1..p {
        let factor = GroupRingElem::from_terms(
            &params,
            (0..i).map(|k| (params.elem(k as i64, 0), CycloElem::one())),
        );
        u = &u * &factor;
    }
    let lhs = &GroupRingElem::int(&params, p as i64) - &trace_elem(&params, Subgroup::A);
    let rhs = &(&a - &one).pow((p - 1) as u32) * &u;
    let product_ok = lhs == rhs;
    let aug_ok = u.augmentation() == CycloElem::from_int(arith::factorial(p - 1) as i64);
    let unit_ok = params
        .characters()
        .iter()
        .all(|ch| u.char_eval(ch).is_p_unit(p).unwrap_or(false));
    Ok((u, product_ok && aug_ok && unit_ok))
}

/// True iff every coefficient of (a − 1)^{p−1} − T_a is divisible by p.
pub fn trace_congruence_check(p: u64) -> Result<bool> {
    let params = GroupParams::new(p, 1, 1)?;
    let one = GroupRingElem::one(&params);
    let x = &(&GroupRingElem::a(&params) - &one).pow((p - 1) as u32)
        - &trace_elem(&params, Subgroup::A);
    let pz = BigInt::from(p);
    let ok = x.terms().all(|(_, c)| {
        c.as_rational()
            .is_some_and(|r| r.is_integer() && (r.numer() % &pz).is_zero())
    });
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(p: u64, d: u64) -> GroupParams {
        GroupParams::new(p, d, 1).unwrap()
    }

    fn q(a: i64, b: i64) -> CycloElem {
        CycloElem::from_rational(Rational::new(a.into(), b.into()))
    }

    #[test]
    fn params_validation() {
        assert!(GroupParams::new(4, 1, 1).is_err());
        assert!(GroupParams::new(2, 1, 1).is_err());
        assert!(GroupParams::new(3, 4, 2).is_err());
        let gp = GroupParams::new(5, 3, 2).unwrap();
        assert_eq!(gp.mtilde, 2);
        assert_eq!(gp.q(), BigInt::from(25));
        assert_eq!(GroupParams::new(3, 1, 4).unwrap().mtilde, 1);
        assert_eq!(GroupParams::new(3, 5, 4).unwrap().mtilde, 4);
    }

    #[test]
    fn arithmetic_examples() {
        let gp = params(5, 1);
        let a = GroupRingElem::a(&gp);
        assert_eq!(&a * &GroupRingElem::monomial(&gp, 4, 0), GroupRingElem::one(&gp));
        let t = trace_elem(&gp, Subgroup::A);
        assert!((&(&a - &GroupRingElem::one(&gp)) * &t).is_zero());

        let gp = params(3, 1);
        let am1 = &GroupRingElem::a(&gp) - &GroupRingElem::one(&gp);
        let expect = GroupRingElem::from_terms(
            &gp,
            [
                (gp.elem(2, 0), CycloElem::one()),
                (gp.elem(1, 0), CycloElem::from_int(-2)),
                (gp.elem(0, 0), CycloElem::one()),
            ],
        );
        assert_eq!(am1.pow(2), expect);
    }

    #[test]
    fn params_mismatch() {
        let x = GroupRingElem::one(&params(3, 1));
        let y = GroupRingElem::one(&params(3, 2));
        assert_eq!(x.checked_add(&y), Err(Error::ParamsMismatch));
    }

    #[test]
    fn char_eval_examples() {
        for d in [1, 2, 4] {
            let gp = params(5, d);
            let t = trace_elem(&gp, Subgroup::A);
            assert_eq!(t.char_eval(&Character::TRIVIAL), CycloElem::from_int(5));
            let e = idempotent(&gp, Subgroup::A);
            assert!(e.char_eval(&Character { u: 2, v: 0 }).is_zero());
            let am1 = &GroupRingElem::a(&gp) - &GroupRingElem::one(&gp);
            for v in 0..d {
                let z = CycloElem::root_of_unity(5, 1).unwrap();
                assert_eq!(am1.char_eval(&Character { u: 1, v }), &z - &CycloElem::one());
            }
        }
    }

    #[test]
    fn idempotent_examples() {
        let gp = params(3, 4);
        let eg = idempotent(&gp, Subgroup::G);
        for ch in gp.characters() {
            let expect = if ch.is_trivial() { 1 } else { 0 };
            assert_eq!(eg.char_eval(&ch), CycloElem::from_int(expect));
        }
        let t = trace_elem(&gp, Subgroup::A);
        for i in 0..3 {
            assert_eq!(t.coeff(GroupElem { i, j: 0 }), CycloElem::one());
        }
        let ea = idempotent(&gp, Subgroup::A);
        assert_eq!(&ea * &ea, ea);
        for h in [Subgroup::A, Subgroup::B, Subgroup::G] {
            let (e, t) = (idempotent(&gp, h), trace_elem(&gp, h));
            assert_eq!(&e * &t, t);
        }
    }

    #[test]
    fn star_examples() {
        let gp = params(3, 1);
        let ea = idempotent(&gp, Subgroup::A).char_values();
        let s = star(&ea);
        assert!(s.values().all(|x| *x == CycloElem::one()));
        assert_eq!(s, GroupRingElem::one(&gp).char_values());
        let nz = GroupRingElem::a(&gp).char_values();
        assert_eq!(star(&nz), nz);
        let zero = GroupRingElem::zero(&gp).char_values();
        assert!(star(&zero).values().all(|x| *x == CycloElem::one()));
    }

    #[test]
    fn partial_inverse_examples() {
        let gp = params(3, 2);
        let bm1 = &GroupRingElem::b(&gp) - &GroupRingElem::one(&gp);
        let eb = idempotent(&gp, Subgroup::B);
        let y = partial_inverse(&bm1, &eb).unwrap();
        let expect = GroupRingElem::from_terms(
            &gp,
            [(gp.elem(0, 0), q(-1, 4)), (gp.elem(0, 1), q(1, 4))],
        );
        assert_eq!(y, expect);
        assert_eq!(&y * &bm1, &GroupRingElem::one(&gp) - &eb);

        let gp = params(5, 3);
        let am1 = &GroupRingElem::a(&gp) - &GroupRingElem::one(&gp);
        let ea = idempotent(&gp, Subgroup::A);
        let y = partial_inverse(&am1, &ea).unwrap();
        for u in 1..5 {
            let z = CycloElem::root_of_unity(5, u as i64).unwrap();
            let expect = (&z - &CycloElem::one()).inv().unwrap();
            assert_eq!(y.char_eval(&Character { u, v: 1 }), expect);
        }
        assert_eq!(&y * &am1, &GroupRingElem::one(&gp) - &ea);
        assert_eq!(
            partial_inverse(&am1, &GroupRingElem::zero(&gp)),
            Err(Error::NotInvertible { u: 0, v: 0 })
        );
        assert_eq!(partial_inverse(&am1, &am1), Err(Error::NotIdempotent));
    }

    #[test]
    fn trace_factorization_examples() {
        let (u, ok) = trace_factorization_check(3).unwrap();
        let gp = params(3, 1);
        assert_eq!(u, &GroupRingElem::one(&gp) + &GroupRingElem::a(&gp));
        assert_eq!(u.augmentation(), CycloElem::from_int(2));
        assert!(ok);
        for p in [5, 7, 11, 13] {
            assert!(trace_factorization_check(p).unwrap().1, "p = {p}");
        }
    }

    #[test]
    fn trace_congruence_examples() {
        let gp = params(3, 1);
        let x = &(&GroupRingElem::a(&gp) - &GroupRingElem::one(&gp)).pow(2)
            - &trace_elem(&gp, Subgroup::A);
        assert_eq!(x, GroupRingElem::monomial(&gp, 1, 0).scale(&CycloElem::from_int(-3)));
        for p in [3, 5, 7, 13] {
            assert!(trace_congruence_check(p).unwrap());
        }
    }

    #[test]
    fn serialization() {
        let gp = params(3, 2);
        let x = &GroupRingElem::b(&gp) - &GroupRingElem::int(&gp, 2);
        assert_eq!(
            serde_json::to_string(&x).unwrap(),
            r#"[[0,0,"level:1;num:[-2];den:1"],[0,1,"level:1;num:[1];den:1"]]"#
        );
    }

    fn arb_gr(gp: GroupParams, cyclo: bool) -> impl Strategy<Value = GroupRingElem> {
        let n = gp.order() as usize;
        let lvl = gp.char_level();
        prop::collection::vec((-3i64..=3, 0i64..3), n).prop_map(move |cs| {
            GroupRingElem::from_terms(
                &gp,
                gp.elements().into_iter().zip(cs).map(|(g, (c, k))| {
                    let mut x = CycloElem::from_int(c);
                    if cyclo {
                        x = &x * &CycloElem::root_of_unity(lvl, k).unwrap();
                    }
                    (g, x)
                }),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn char_eval_is_homomorphism(
            (x, y) in (arb_gr(params(3, 4), false), arb_gr(params(3, 4), false)),
            u in 0u64..3, v in 0u64..4,
        ) {
            let ch = Character { u, v };
            prop_assert_eq!((&x * &y).char_eval(&ch), &x.char_eval(&ch) * &y.char_eval(&ch));
            prop_assert_eq!((&x + &y).char_eval(&ch), &x.char_eval(&ch) + &y.char_eval(&ch));
            prop_assert_eq!(x.augmentation(), x.char_eval(&Character::TRIVIAL));
        }

        #[test]
        fn fourier_round_trip(x in arb_gr(params(5, 2), true)) {
            let gp = *x.params();
            prop_assert_eq!(GroupRingElem::from_char_values(&gp, &x.char_values()), x);
        }

        #[test]
        fn star_keeps_nonzero(x in arb_gr(params(3, 2), false)) {
            let v = x.char_values();
            let s = star(&v);
            for (ch, val) in &v {
                prop_assert!(!s[ch].is_zero());
                if !val.is_zero() {
                    prop_assert_eq!(&s[ch], val);
                }
            }
        }

        #[test]
        fn partial_inverse_property(x in arb_gr(params(3, 2), false)) {
            let gp = *x.params();
            let e = idempotent(&gp, Subgroup::B);
            if let Ok(y) = partial_inverse(&x, &e) {
                prop_assert_eq!(&y * &x, &GroupRingElem::one(&gp) - &e);
            }
        }
    }
}
