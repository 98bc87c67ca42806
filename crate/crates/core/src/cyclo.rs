//! Exact arithmetic in cyclotomic fields Q(ζ_n).
//!
//! Elements are stored in the power basis 1, ζ, …, ζ^{φ(n)−1} reduced modulo Φ_n,
//! as an integer numerator vector over one positive common denominator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, euler_phi};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Field;
use crate::Rational;

/// Largest level accepted by the constructors.
pub const LEVEL_LIMIT: u64 = 1176;

#[derive(Debug)]
struct CycloField {
    level: u64,
    phi: usize,
    /// Φ_n lowest degree first, monic of degree `phi`.
    modulus: Vec<BigInt>,
    /// Nonzero entries of `modulus` below the leading term.
    tail: Vec<(usize, BigInt)>,
}

fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    // Φ_n = ∏_{d|n} (x^d − 1)^{μ(n/d)}: multiply the positive factors, then divide out the rest.
    let mut num = vec![BigInt::one()];
    let mut den = vec![BigInt::one()];
    for d in (1..=n).filter(|d| n % d == 0) {
        let mu = arith::mobius(n / d);
        if mu == 0 {
            continue;
        }
        let target = if mu > 0 { &mut num } else { &mut den };
        let mut next = vec![BigInt::zero(); target.len() + d as usize];
        for (i, c) in target.iter().enumerate() {
            next[i + d as usize] += c;
            next[i] -= c;
        }
        *target = next;
    }
    // exact division by the monic `den`
    let dl = den.len() - 1;
    let mut rem = num;
    let mut quot = vec![BigInt::zero(); rem.len() - dl];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dl].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    quot
}

impl CycloField {
    fn new(level: u64) -> Result<Arc<Self>> {
        if level == 0 || level > LEVEL_LIMIT {
            return Err(Error::LevelTooLarge {
                level,
                limit: LEVEL_LIMIT,
            });
        }
        let modulus = cyclotomic_poly(level);
        let phi = euler_phi(level) as usize;
        debug_assert_eq!(modulus.len(), phi + 1);
        let tail = modulus[..phi]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        Ok(Arc::new(CycloField {
            level,
            phi,
            modulus,
            tail,
        }))
    }

    /// Reduce an arbitrary-length coefficient vector modulo Φ_n.
    fn reduce(&self, mut c: Vec<BigInt>) -> Vec<BigInt> {
        for i in (self.phi..c.len()).rev() {
            if c[i].is_zero() {
                continue;
            }
            let top = std::mem::take(&mut c[i]);
            let shift = i - self.phi;
            for (j, mj) in &self.tail {
                c[shift + j] -= &top * mj;
            }
        }
        c.resize(self.phi, BigInt::zero());
        c
    }
}

/// An exact element of Q(ζ_n).
#[derive(Clone)]
pub struct CycloElem {
    field: Arc<CycloField>,
    num: Vec<BigInt>,
    den: BigInt,
}

fn rational_field() -> Arc<CycloField> {
    CycloField::new(1).expect("level 1")
}

impl CycloElem {
    fn from_parts(field: Arc<CycloField>, num: Vec<BigInt>, den: BigInt) -> Self {
        let num = field.reduce(num);
        let mut e = CycloElem { field, num, den };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        assert!(!self.den.is_zero(), "zero denominator");
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    /// The element with power-basis coordinates `coeffs` (any length; reduced mod Φ_n).
    pub fn from_coeffs(level: u64, coeffs: &[Rational]) -> Result<Self> {
        let field = CycloField::new(level)?;
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(Self::from_parts(field, num, den))
    }

    /// The element Σ c·ζ_n^k over the given `(k, c)` terms; exponents may be any integers.
    pub fn from_exponents(level: u64, terms: &[(i64, Rational)]) -> Result<Self> {
        let mut coeffs = vec![Rational::zero(); level as usize];
        for (k, c) in terms {
            coeffs[arith::modulo(*k, level) as usize] += c;
        }
        Self::from_coeffs(level, &coeffs)
    }

    /// ζ_n^k.
    pub fn root_of_unity(level: u64, k: i64) -> Result<Self> {
        Self::from_exponents(level, &[(k, Rational::one())])
    }

    pub fn from_rational(r: Rational) -> Self {
        let (n, d) = r.into_raw();
        Self::from_parts(rational_field(), vec![n], d)
    }

    pub fn from_int(i: i64) -> Self {
        Self::from_rational(Rational::from_integer(i.into()))
    }

    pub fn level(&self) -> u64 {
        self.field.level
    }

    /// Power-basis coordinates, length φ(level).
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// Integral numerators over [`Self::denominator`].
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// `Some(r)` when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num.iter().skip(1).all(Zero::is_zero) {
            Some(Rational::new(
                self.num.first().cloned().unwrap_or_default(),
                self.den.clone(),
            ))
        } else {
            None
        }
    }

    /// Image in Q(ζ_m) for a multiple `m` of the level.
    pub fn embed(&self, m: u64) -> Result<Self> {
        if m == self.level() {
            return Ok(self.clone());
        }
        if m % self.level() != 0 {
            return Err(Error::InvalidParams(format!(
                "level {} does not divide {m}",
                self.level()
            )));
        }
        let field = CycloField::new(m)?;
        let step = (m / self.level()) as usize;
        let mut num = vec![BigInt::zero(); self.num.len().saturating_sub(1) * step + 1];
        for (i, c) in self.num.iter().enumerate() {
            num[i * step] = c.clone();
        }
        Ok(Self::from_parts(field, num, self.den.clone()))
    }

    fn aligned(&self, other: &Self) -> Result<(Self, Self)> {
        let l = arith::lcm(self.level(), other.level());
        Ok((self.embed(l)?, other.embed(l)?))
    }

    fn scale(&self, r: &Rational) -> Self {
        Self::from_parts(
            self.field.clone(),
            self.num.iter().map(|c| c * r.numer()).collect(),
            &self.den * r.denom(),
        )
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other)?;
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| x * &b.den + y * &a.den)
            .collect();
        Ok(Self::from_parts(a.field, num, a.den * b.den))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other.clone())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if other.level() == 1 {
            return Ok(self.scale(&other.as_rational().expect("level 1 is rational")));
        }
        if self.level() == 1 {
            return Ok(other.scale(&self.as_rational().expect("level 1 is rational")));
        }
        let (a, b) = self.aligned(other)?;
        let mut prod = vec![BigInt::zero(); 2 * a.num.len() - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Ok(Self::from_parts(a.field, prod, a.den * b.den))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_parts(
                self.field.clone(),
                vec![r.denom().clone()],
                r.numer().clone(),
            ));
        }
        let to_q = |v: &[BigInt]| Poly::new(v.iter().map(|c| Rational::from(c.clone())).collect());
        let a = to_q(&self.num);
        let m = to_q(&self.field.modulus);
        let (g, s, _) = a.ext_gcd(&m);
        debug_assert_eq!(g.degree(), Some(0));
        let g0 = g.coeffs()[0].clone();
        let coeffs: Vec<Rational> = s
            .coeffs()
            .iter()
            .map(|c| c / &g0 * Rational::from(self.den.clone()))
            .collect();
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(Self::from_parts(self.field.clone(), num, den))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one().embed(self.level())?;
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.checked_mul(&sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = sq.checked_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// The automorphism ζ_n ↦ ζ_n^k.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let n = self.level();
        if arith::gcd(arith::modulo(k, n), n) != 1 {
            return Err(Error::NotCoprime { k, level: n });
        }
        let kk = arith::modulo(k, n) as usize;
        let mut num = vec![BigInt::zero(); n as usize];
        for (i, c) in self.num.iter().enumerate() {
            num[(i * kk) % n as usize] += c;
        }
        Ok(Self::from_parts(self.field.clone(), num, self.den.clone()))
    }

    /// Product of all Galois conjugates.
    pub fn norm(&self) -> Rational {
        let n = self.level();
        let mut acc = self.clone();
        for k in 2..n {
            if arith::gcd(k, n) == 1 {
                acc = acc
                    .checked_mul(&self.galois(k as i64).expect("coprime"))
                    .expect("same level");
            }
        }
        acc.as_rational().expect("norm lies in Q")
    }

    /// True iff the common denominator is prime to `p`.
    pub fn p_integral(&self, p: u64) -> bool {
        !(&self.den % BigInt::from(p)).is_zero()
    }

    /// True iff the element is p-integral and its norm has p-adic valuation zero.
    pub fn is_p_unit(&self, p: u64) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.p_integral(p) && p_valuation(&self.norm(), p) == 0)
    }
}

/// p-adic valuation of a nonzero rational.
pub fn p_valuation(r: &Rational, p: u64) -> i64 {
    let p = BigInt::from(p);
    let val = |x: &BigInt| {
        let mut x = x.clone();
        let mut v = 0;
        while !x.is_zero() && (&x % &p).is_zero() {
            x /= &p;
            v += 1;
        }
        v
    };
    val(r.numer()) - val(r.denom())
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        if self.level() == other.level() {
            return self.den == other.den && self.num == other.num;
        }
        match self.aligned(other) {
            Ok((a, b)) => a.den == b.den && a.num == b.num,
            Err(_) => self.checked_sub(other).map(|d| d.is_zero()).unwrap_or(false),
        }
    }
}

impl Eq for CycloElem {}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nums: Vec<String> = self.num.iter().map(|c| c.to_string()).collect();
        write!(
            f,
            "level:{};num:[{}];den:{}",
            self.level(),
            nums.join(","),
            self.den
        )
    }
}

impl FromStr for CycloElem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParams(format!("malformed cyclotomic element {s:?}"));
        let mut parts = s.trim().split(';');
        let level = parts
            .next()
            .and_then(|p| p.strip_prefix("level:"))
            .and_then(|v| v.parse::<u64>().ok())
            .ok_or_else(bad)?;
        let num = parts
            .next()
            .and_then(|p| p.strip_prefix("num:["))
            .and_then(|p| p.strip_suffix(']'))
            .ok_or_else(bad)?;
        let den = parts
            .next()
            .and_then(|p| p.strip_prefix("den:"))
            .and_then(|v| v.parse::<BigInt>().ok())
            .ok_or_else(bad)?;
        if parts.next().is_some() || den.is_zero() {
            return Err(bad());
        }
        let num = if num.is_empty() {
            Vec::new()
        } else {
            num.split(',')
                .map(|c| c.trim().parse::<BigInt>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        };
        let field = CycloField::new(level)?;
        if num.len() != field.phi {
            return Err(bad());
        }
        Ok(Self::from_parts(field, num, den))
    }
}

impl Zero for CycloElem {
    fn zero() -> Self {
        Self::from_int(0)
    }

    fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }
}

impl One for CycloElem {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl Neg for CycloElem {
    type Output = Self;

    fn neg(mut self) -> Self {
        for c in &mut self.num {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for CycloElem {
            type Output = CycloElem;

            fn $method(self, rhs: CycloElem) -> CycloElem {
                self.$checked(&rhs).expect("cyclotomic operation failed")
            }
        }

        impl<'a> $tr<&'a CycloElem> for &'a CycloElem {
            type Output = CycloElem;

            fn $method(self, rhs: &'a CycloElem) -> CycloElem {
                self.$checked(rhs).expect("cyclotomic operation failed")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl From<Rational> for CycloElem {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for CycloElem {
    fn from(i: i64) -> Self {
        Self::from_int(i)
    }
}

impl Field for CycloElem {
    fn checked_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: u64, k: i64) -> CycloElem {
        CycloElem::root_of_unity(n, k).unwrap()
    }

    fn q(a: i64, b: i64) -> CycloElem {
        CycloElem::from_rational(Rational::new(a.into(), b.into()))
    }

    #[test]
    fn cyclotomic_polys() {
        let as_i = |n| -> Vec<i64> {
            cyclotomic_poly(n)
                .iter()
                .map(|c| i64::try_from(c).unwrap())
                .collect()
        };
        assert_eq!(as_i(1), vec![-1, 1]);
        assert_eq!(as_i(3), vec![1, 1, 1]);
        assert_eq!(as_i(4), vec![1, 0, 1]);
        assert_eq!(as_i(6), vec![1, -1, 1]);
        assert_eq!(as_i(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(as_i(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn arithmetic_examples() {
        let one = CycloElem::one();
        let a = &one - &z(3, 1);
        let b = &one - &z(3, 2);
        assert_eq!(&a * &b, CycloElem::from_int(3));
        assert_eq!(&(&a * &a) / &CycloElem::from_int(3), -z(3, 1));
        let x = &z(12, 5) + &q(2, 7);
        assert_eq!(&x * &one, x);
        assert_eq!(z(3, 2), &q(-1, 1) - &z(3, 1));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(
            CycloElem::one().checked_div(&CycloElem::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn galois_examples() {
        assert_eq!(z(9, 1).galois(1).unwrap(), z(9, 1));
        assert_eq!(z(3, 1).galois(2).unwrap(), &q(-1, 1) - &z(3, 1));
        assert_eq!(
            z(9, 2).galois(3),
            Err(Error::NotCoprime { k: 3, level: 9 })
        );
    }

    #[test]
    fn norm_examples() {
        for p in [3u64, 5, 7, 11] {
            let x = &CycloElem::one() - &z(p, 1);
            assert_eq!(x.norm(), Rational::from_integer(p.into()));
        }
        assert_eq!(CycloElem::one().norm(), Rational::one());
        // orbit product of ζ_n is ζ_n^{Σ k}; n = 2 gives −1
        assert_eq!(z(2, 1).norm(), -Rational::one());
        for n in [3u64, 4, 5, 9, 12, 15] {
            assert_eq!(z(n, 1).norm(), Rational::one());
        }
    }

    #[test]
    fn unit_examples() {
        let one = CycloElem::one();
        let x = &(&one - &z(3, 1)) * &(&one - &z(3, 1));
        let x = &x / &CycloElem::from_int(3);
        assert!(x.is_p_unit(3).unwrap());
        assert!(!CycloElem::from_int(3).embed(9).unwrap().is_p_unit(3).unwrap());
        assert!(!q(1, 3).is_p_unit(3).unwrap());
        assert_eq!(CycloElem::zero().is_p_unit(3), Err(Error::ZeroElement));
    }

    #[test]
    fn serialization_round_trip() {
        let x = &z(5, 2) + &q(3, 4);
        let s = x.to_string();
        assert_eq!(s, "level:5;num:[3,0,4,0];den:4");
        assert_eq!(s.parse::<CycloElem>().unwrap(), x);
        assert!("level:5;num:[1];den:1".parse::<CycloElem>().is_err());
    }

    #[test]
    fn level_limit() {
        assert!(matches!(
            CycloElem::root_of_unity(LEVEL_LIMIT + 1, 1),
            Err(Error::LevelTooLarge { .. })
        ));
    }

    fn arb_elem(levels: &'static [u64]) -> impl Strategy<Value = CycloElem> {
        (
            prop::sample::select(levels),
            prop::collection::vec((-4i64..=4, 1i64..=3), 1..8),
        )
            .prop_map(|(n, cs)| {
                let coeffs: Vec<Rational> = cs
                    .into_iter()
                    .map(|(a, b)| Rational::new(a.into(), b.into()))
                    .collect();
                CycloElem::from_coeffs(n, &coeffs).unwrap()
            })
    }

    const LEVELS: &[u64] = &[1, 3, 4, 7, 9, 12, 21, 28, 63];

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn field_laws(x in arb_elem(LEVELS), y in arb_elem(LEVELS), w in arb_elem(LEVELS)) {
            prop_assert_eq!(&(&x * &y) * &w, &x * &(&y * &w));
            prop_assert_eq!(&x * &(&y + &w), &(&x * &y) + &(&x * &w));
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            if !x.is_zero() {
                let l = x.level();
                prop_assert_eq!(&x * &x.inv().unwrap(), CycloElem::one().embed(l).unwrap());
            }
        }

        #[test]
        fn galois_is_homomorphism(x in arb_elem(&[7, 9, 12, 15]), y in arb_elem(&[7, 9, 12, 15]), k in 1i64..60) {
            let l = arith::lcm(x.level(), y.level()) as i64;
            prop_assume!(arith::gcd(k as u64, l as u64) == 1);
            let (x, y) = x.aligned(&y).unwrap();
            prop_assert_eq!((&x * &y).galois(k).unwrap(), &x.galois(k).unwrap() * &y.galois(k).unwrap());
            prop_assert_eq!((&x + &y).galois(k).unwrap(), &x.galois(k).unwrap() + &y.galois(k).unwrap());
            prop_assert_eq!(x.galois(-1).unwrap().galois(-1).unwrap(), x);
        }

        #[test]
        fn norm_is_multiplicative(x in arb_elem(&[3, 5, 7, 9]), y in arb_elem(&[3, 5, 7, 9])) {
            let (x, y) = x.aligned(&y).unwrap();
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        }

        #[test]
        fn embedding_commutes(x in arb_elem(&[3, 5]), y in arb_elem(&[3, 5]), k in 1i64..15) {
            prop_assume!(arith::gcd(k as u64, 15) == 1);
            let e = |v: &CycloElem| v.embed(15).unwrap();
            prop_assert_eq!(e(&(&x * &y)), &e(&x) * &e(&y));
            prop_assert_eq!(e(&(&x + &y)), &e(&x) + &e(&y));
            let lx = x.level() as i64;
            prop_assert_eq!(e(&x.galois(k % lx).unwrap()), e(&x).galois(k).unwrap());
        }

        #[test]
        fn unit_closure(x in arb_elem(&[3, 9]), y in arb_elem(&[3, 9])) {
            prop_assume!(!x.is_zero() && !y.is_zero());
            if x.is_p_unit(3).unwrap() && y.is_p_unit(3).unwrap() {
                prop_assert!((&x * &y).is_p_unit(3).unwrap());
            }
            if x.is_p_unit(3).unwrap() {
                prop_assert!(x.inv().unwrap().p_integral(3));
            }
        }
    }
}
