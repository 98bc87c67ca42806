//! The m = 1 cyclotomic model: the degree-p subfield M of Q(ζ_{p²}), Galois
//! Gauss sums of its characters, resolvents, the square root of the inverse
//! different of M, and the search for its normal basis generator.
//!
//! Units of Z/p² split as H × ⟨1+p⟩ where H is the subgroup of order p−1; a
//! ramified character is determined by its value on the class of 1+p.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::cyclo::CycloElem;
use crate::error::{Error, Result};
use crate::lattice::IntLattice;
use crate::linalg::Matrix;
use crate::{QMatrix, Rational};

/// Log of the class of a unit u in (Z/p²)^×/H, normalized so that 1+p ↦ 1.
pub fn unit_log(p: u64, u: i64) -> u64 {
    let n = p * p;
    let t = arith::pow_mod(arith::modulo(u, n), p - 1, n);
    let s = (t - 1) / p;
    (p - s % p) % p
}

/// Units of Z/p² in increasing order.
pub fn units(p: u64) -> Vec<u64> {
    (1..p * p).filter(|t| t % p != 0).collect()
}

/// The subgroup of order p−1 of (Z/p²)^×.
pub fn inertia_complement(p: u64) -> Vec<u64> {
    let n = p * p;
    units(p)
        .into_iter()
        .filter(|&t| arith::pow_mod(t, p - 1, n) == 1)
        .collect()
}

/// (1+p)^k mod p², k any integer.
fn coset_rep(p: u64, k: i64) -> u64 {
    arith::pow_mod(1 + p, arith::modulo(k, p), p * p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RamifiedChar {
    pub p: u64,
    pub exponent: u64,
}

impl RamifiedChar {
    pub fn new(p: u64, exponent: i64) -> Result<Self> {
        if p < 3 || !arith::is_prime(p) {
            return Err(Error::InvalidParams(format!("p = {p} is not an odd prime")));
        }
        Ok(RamifiedChar {
            p,
            exponent: arith::modulo(exponent, p),
        })
    }

    pub fn trivial(p: u64) -> Result<Self> {
        Self::new(p, 0)
    }

    pub fn is_trivial(&self) -> bool {
        self.exponent == 0
    }

    /// Conductor exponent: 2 when ramified, 0 for the trivial character.
    pub fn conductor_exponent(&self) -> u32 {
        if self.is_trivial() {
            0
        } else {
            2
        }
    }

    pub fn inverse(&self) -> Self {
        RamifiedChar {
            p: self.p,
            exponent: (self.p - self.exponent) % self.p,
        }
    }

    /// Exponent k with χ(u) = ζ_p^k.
    pub fn exponent_at(&self, u: i64) -> u64 {
        self.exponent * unit_log(self.p, u) % self.p
    }

    /// χ(u) as an element of Q(ζ_p).
    pub fn value(&self, u: i64) -> CycloElem {
        CycloElem::root_of_unity(self.p, self.exponent_at(u) as i64).expect("small level")
    }

    pub fn all(p: u64) -> Result<Vec<Self>> {
        (0..p as i64).map(|e| Self::new(p, e)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GaussConvention {
    /// Use χ (+1) or χ̄ (−1) in the sum.
    pub char_sign: i64,
    /// Use ζ^u (+1) or ζ^{−u} (−1).
    pub exp_sign: i64,
    /// Identify t ∈ (Z/p²)^× with ζ ↦ ζ^t (+1) or ζ ↦ ζ^{t^{−1}} (−1).
    pub artin_dir: i64,
}

impl GaussConvention {
    pub fn new(char_sign: i64, exp_sign: i64, artin_dir: i64) -> Result<Self> {
        if [char_sign, exp_sign, artin_dir].iter().any(|s| s.abs() != 1) {
            return Err(Error::InvalidParams("convention signs must be ±1".into()));
        }
        Ok(GaussConvention {
            char_sign,
            exp_sign,
            artin_dir,
        })
    }

    /// All eight conventions, signs ordered +1 before −1 with char_sign outermost.
    pub fn all() -> Vec<Self> {
        let mut out = Vec::with_capacity(8);
        for cs in [1, -1] {
            for es in [1, -1] {
                for dir in [1, -1] {
                    out.push(GaussConvention {
                        char_sign: cs,
                        exp_sign: es,
                        artin_dir: dir,
                    });
                }
            }
        }
        out
    }

    /// The automorphism of Q(ζ_{p²}) attached to the unit t.
    fn act(&self, x: &CycloElem, p: u64, t: u64) -> Result<CycloElem> {
        let n = p * p;
        let k = if self.artin_dir == 1 {
            t
        } else {
            arith::inv_mod(t as i64, n).ok_or(Error::NotCoprime {
                k: t as i64,
                level: n,
            })?
        };
        x.embed(arith::lcm(x.level(), n))?.galois(k as i64)
    }

    /// Discrete log of the class of u in (Z/p²)^×/H read through the Artin identification.
    pub fn dlog(&self, p: u64, u: i64) -> u64 {
        arith::modulo(self.artin_dir * unit_log(p, u) as i64, p)
    }
}

impl std::fmt::Display for GaussConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "(char_sign {:+}, exp_sign {:+}, artin_dir {:+})",
            self.char_sign, self.exp_sign, self.artin_dir
        )
    }
}

fn rat(i: i64) -> Rational {
    Rational::from_integer(i.into())
}

/// Σ_u χ(u)^{char_sign}·ζ_{p²}^{exp_sign·u}; 1 for the trivial character.
pub fn gauss_sum(chi: &RamifiedChar, conv: &GaussConvention) -> CycloElem {
    if chi.is_trivial() {
        return CycloElem::one();
    }
    let p = chi.p;
    let n = p * p;
    // ζ_p = ζ_{p²}^p
    let terms: Vec<(i64, Rational)> = units(p)
        .into_iter()
        .map(|u| {
            let k = conv.char_sign * chi.exponent_at(u as i64) as i64;
            (p as i64 * k + conv.exp_sign * u as i64, rat(1))
        })
        .collect();
    CycloElem::from_exponents(n, &terms).expect("small level")
}

/// τ·τ̄ = p² with τ̄ the image under complex conjugation.
pub fn abs_square_check(chi: &RamifiedChar, conv: &GaussConvention) -> Result<bool> {
    if chi.is_trivial() {
        return Err(Error::InvalidParams("character must be ramified".into()));
    }
    let tau = gauss_sum(chi, conv);
    let prod = tau.checked_mul(&tau.galois(-1)?)?;
    Ok(prod == CycloElem::from_int((chi.p * chi.p) as i64))
}

/// Checks τ(χφ) = φ(p)^{−2·artin_dir}·τ(χ) for every unramified φ with
/// φ(p) = ζ_d^v, the left side summed directly from the twisted character.
pub fn twist_identity_check(p: u64, conv: &GaussConvention, d: u64) -> Result<bool> {
    if d == 0 {
        return Err(Error::InvalidParams("d must be positive".into()));
    }
    let n = p * p;
    let level = arith::lcm(n, d);
    for chi in RamifiedChar::all(p)?.into_iter().filter(|c| !c.is_trivial()) {
        let tau = gauss_sum(&chi, conv);
        for v in 0..d {
            let phi_p = CycloElem::root_of_unity(d, v as i64)?;
            // ξ(p) = χ(p)φ(p) with χ(p) = 1; ξ(u) = χ(u) on units since φ is unramified
            let xi_p = CycloElem::one().checked_mul(&phi_p)?;
            let shift = xi_p.pow(-(chi.conductor_exponent() as i64) * conv.artin_dir)?;
            let mut lhs = CycloElem::zero();
            for u in units(p) {
                let xi_u = chi.value(u as i64).checked_mul(&CycloElem::one())?;
                let term = xi_u
                    .pow(conv.char_sign)?
                    .checked_mul(&CycloElem::root_of_unity(n, conv.exp_sign * u as i64)?)?;
                lhs = lhs.checked_add(&term)?;
            }
            let lhs = lhs.checked_mul(&shift)?.embed(level)?;
            let rhs = phi_p.pow(-2 * conv.artin_dir)?.checked_mul(&tau)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether x ∈ Q(ζ_{p²}) lies in M, i.e. is fixed by H.
pub fn in_subfield(x: &CycloElem, p: u64) -> Result<bool> {
    let x = x.embed(arith::lcm(x.level(), p * p))?;
    for h in inertia_complement(p) {
        if x.galois(h as i64)? != x {
            return Ok(false);
        }
    }
    Ok(true)
}

/// (α ∣ χ) = Σ_k g_k(α)·χ(g_k^{−1}) over the p cosets g_k = (1+p)^k of H.
pub fn resolvent(alpha: &CycloElem, chi: &RamifiedChar, conv: &GaussConvention) -> Result<CycloElem> {
    let p = chi.p;
    if !in_subfield(alpha, p)? {
        return Err(Error::NotFixed);
    }
    let mut acc = CycloElem::zero();
    for k in 0..p as i64 {
        let g = coset_rep(p, k);
        let term = conv
            .act(alpha, p, g)?
            .checked_mul(&chi.value(coset_rep(p, -k) as i64))?;
        acc = acc.checked_add(&term)?;
    }
    acc.embed(arith::lcm(acc.level(), p * p))
}

/// Resolvent over the whole of Gal(Q(ζ_{p²})/Q) at the inflation of χ.
pub fn full_resolvent(beta: &CycloElem, chi: &RamifiedChar, conv: &GaussConvention) -> Result<CycloElem> {
    let p = chi.p;
    let n = p * p;
    let mut acc = CycloElem::zero();
    for g in units(p) {
        let g_inv = arith::inv_mod(g as i64, n).expect("unit");
        let term = conv
            .act(beta, p, g)?
            .checked_mul(&chi.value(g_inv as i64))?;
        acc = acc.checked_add(&term)?;
    }
    acc.embed(arith::lcm(acc.level(), n))
}

/// Trace from Q(ζ_{p²}) down to M.
pub fn trace_to_subfield(beta: &CycloElem, p: u64) -> Result<CycloElem> {
    let beta = beta.embed(arith::lcm(beta.level(), p * p))?;
    let mut acc = CycloElem::zero();
    for h in inertia_complement(p) {
        acc = acc.checked_add(&beta.galois(h as i64)?)?;
    }
    Ok(acc)
}

/// Trace from M to Q of an element of M.
pub fn trace_subfield(alpha: &CycloElem, p: u64) -> Result<Rational> {
    let chi = RamifiedChar::trivial(p)?;
    resolvent(alpha, &chi, &GaussConvention::all()[0])?
        .as_rational()
        .ok_or_else(|| Error::Mismatch("trace is not rational".into()))
}

fn random_integral(p: u64, rng: &mut ChaCha8Rng) -> Result<CycloElem> {
    let n = p * p;
    let phi = (p * (p - 1)) as usize;
    let coeffs: Vec<Rational> = (0..phi).map(|_| rat(rng.gen_range(-2..=2))).collect();
    CycloElem::from_coeffs(n, &coeffs)
}

/// Resolvent of β over Q(ζ_{p²})/Q at an inflated character equals the
/// resolvent over M/Q of the relative trace of β; checked on 1, ζ_{p²} and
/// `random` integral elements with coefficients in [−2, 2].
pub fn inflation_trace_check(p: u64, conv: &GaussConvention, seed: u64, random: usize) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut betas = vec![CycloElem::one(), CycloElem::root_of_unity(p * p, 1)?];
    for _ in 0..random {
        betas.push(random_integral(p, &mut rng)?);
    }
    for beta in &betas {
        let tr = trace_to_subfield(beta, p)?;
        for chi in RamifiedChar::all(p)? {
            if full_resolvent(beta, &chi, conv)? != resolvent(&tr, &chi, conv)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Smallest odd prime different from p.
pub fn auxiliary_prime(p: u64) -> u64 {
    if p == 3 {
        5
    } else {
        3
    }
}

/// Unit of Z/(p²ℓ) that is t₁ mod p² and t₂ mod ℓ.
fn crt(p: u64, ell: u64, t1: u64, t2: u64) -> u64 {
    let n = p * p;
    let k = arith::modulo(
        (t2 as i64 - t1 as i64) * arith::inv_mod(n as i64, ell).expect("coprime") as i64,
        ell,
    );
    t1 + n * k
}

/// Product rule on the split pair M·Q(ζ_ℓ): for β₁ ∈ M and β₂ ∈ Q(ζ_ℓ) with ℓ
/// unramified at p, the resolvent of β₁β₂ at χ₁χ₂ over the compositum is the
/// product of the two resolvents.
pub fn split_pair_check(p: u64, conv: &GaussConvention, seed: u64) -> Result<bool> {
    let ell = auxiliary_prime(p);
    let n = p * p;
    let big = n * ell;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let om = integral_basis(p)?;
    let beta1 = om.iter().try_fold(CycloElem::zero(), |acc, b| {
        acc.checked_add(&b.checked_mul(&CycloElem::from_int(rng.gen_range(-2..=2)))?)
    })?;
    let beta2 = CycloElem::from_coeffs(
        ell,
        &(0..ell - 1).map(|_| rat(rng.gen_range(-2..=2))).collect::<Vec<_>>(),
    )?;
    let gen = (2..ell)
        .find(|&g| (1..ell - 1).all(|k| arith::pow_mod(g, k, ell) != 1))
        .expect("primitive root");
    let prod = beta1.checked_mul(&beta2)?.embed(big)?;
    for chi1 in RamifiedChar::all(p)? {
        let r1 = resolvent(&beta1, &chi1, conv)?;
        for w in 0..ell - 1 {
            // χ₂(gen^j) = ζ_{ℓ−1}^{w·j}
            let chi2 = |j: i64| CycloElem::root_of_unity(ell - 1, w as i64 * j);
            let mut r2 = CycloElem::zero();
            for j in 0..(ell - 1) as i64 {
                let g = arith::pow_mod(gen, j as u64, ell);
                let k = if conv.artin_dir == 1 {
                    g
                } else {
                    arith::inv_mod(g as i64, ell).expect("unit")
                };
                r2 = r2.checked_add(&beta2.galois(k as i64)?.checked_mul(&chi2(-j)?)?)?;
            }
            let mut joint = CycloElem::zero();
            for k in 0..p as i64 {
                for j in 0..(ell - 1) as i64 {
                    let t = crt(p, ell, coset_rep(p, k), arith::pow_mod(gen, j as u64, ell));
                    let t = if conv.artin_dir == 1 {
                        t
                    } else {
                        arith::inv_mod(t as i64, big).expect("unit")
                    };
                    let weight = chi1.value(coset_rep(p, -k) as i64).checked_mul(&chi2(-j)?)?;
                    joint = joint.checked_add(&prod.galois(t as i64)?.checked_mul(&weight)?)?;
                }
            }
            if joint != r1.checked_mul(&r2)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The Gaussian periods η_k = Σ_{h∈H} ζ_{p²}^{h(1+p)^k} for k < p−1, then 1:
/// a Z-basis of the ring of integers of M.
pub fn integral_basis(p: u64) -> Result<Vec<CycloElem>> {
    let n = p * p;
    let h = inertia_complement(p);
    let mut out = Vec::with_capacity(p as usize);
    for k in 0..p as i64 - 1 {
        let r = coset_rep(p, k);
        let terms: Vec<(i64, Rational)> = h.iter().map(|&t| ((t * r % n) as i64, rat(1))).collect();
        out.push(CycloElem::from_exponents(n, &terms)?);
    }
    out.push(CycloElem::one().embed(n)?);
    Ok(out)
}

/// ∏_{h∈H}(1 − ζ_{p²}^h), a generator of the prime of M above p.
pub fn uniformizer(p: u64) -> Result<CycloElem> {
    let n = p * p;
    inertia_complement(p).iter().try_fold(CycloElem::one(), |acc, &h| {
        acc.checked_mul(&CycloElem::one().checked_sub(&CycloElem::root_of_unity(n, h as i64)?)?)
    })
}

/// Rational coordinates of `x` in the given Q-independent family, if it lies in their span.
pub fn coordinates(basis: &[CycloElem], x: &CycloElem) -> Result<Option<Vec<Rational>>> {
    let level = basis
        .iter()
        .fold(x.level(), |l, b| arith::lcm(l, b.level()));
    let vecs: Vec<Vec<Rational>> = basis
        .iter()
        .map(|b| b.embed(level).map(|e| e.coeffs()))
        .collect::<Result<_>>()?;
    let target = x.embed(level)?.coeffs();
    let dim = target.len();
    let get = |v: &Vec<Rational>, i: usize| v.get(i).cloned().unwrap_or_else(Rational::zero);
    let r = basis.len();
    // normal equations BᵀB c = Bᵀx, then confirm B c = x
    let mut gram = QMatrix::zeros(r, r);
    let mut rhs = vec![Rational::zero(); r];
    for i in 0..r {
        for j in 0..r {
            gram[(i, j)] = (0..dim).map(|k| get(&vecs[i], k) * get(&vecs[j], k)).sum();
        }
        rhs[i] = (0..dim).map(|k| get(&vecs[i], k) * target[k].clone()).sum();
    }
    let Some(c) = gram.solve(&rhs) else {
        return Err(Error::Mismatch("basis is not independent".into()));
    };
    let fits = (0..dim).all(|k| {
        let s: Rational = (0..r).map(|i| c[i].clone() * get(&vecs[i], k)).sum();
        s == target[k]
    });
    Ok(fits.then_some(c))
}

/// The square root of the inverse different of M, p^{−1}·𝔭_M, with a Z-basis.
#[derive(Debug, Clone)]
pub struct SqrtInvDiff {
    pub p: u64,
    /// Basis of the ring of integers of M.
    pub integral_basis: Vec<CycloElem>,
    /// (π/p)·b for b in the integral basis.
    pub basis: Vec<CycloElem>,
    /// Coordinates of `basis` in `integral_basis`, scaled by p (integral).
    pub scaled_coords: IntLattice,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeChecks {
    pub integral_basis_disc: String,
    pub lattice_disc: String,
    pub index_is_p_pow: bool,
    pub contains_integers: bool,
    pub p_multiple_integral: bool,
    pub trace_pairing_integral: bool,
}

impl LatticeChecks {
    pub fn ok(&self, p: u64) -> bool {
        let expected = BigInt::from(p).pow(2 * (p as u32 - 1));
        self.integral_basis_disc == expected.to_string()
            && (self.lattice_disc == "1" || self.lattice_disc == "-1")
            && self.index_is_p_pow
            && self.contains_integers
            && self.p_multiple_integral
            && self.trace_pairing_integral
    }
}

fn to_int(r: &Rational) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

fn trace_form(basis: &[CycloElem], p: u64) -> Result<QMatrix> {
    let r = basis.len();
    let mut m = QMatrix::zeros(r, r);
    for i in 0..r {
        for j in i..r {
            let t = trace_subfield(&basis[i].checked_mul(&basis[j])?, p)?;
            m[(i, j)] = t.clone();
            m[(j, i)] = t;
        }
    }
    Ok(m)
}

pub fn sqrt_inv_diff_lattice(p: u64) -> Result<SqrtInvDiff> {
    if p < 3 || !arith::is_prime(p) {
        return Err(Error::InvalidParams(format!("p = {p} is not an odd prime")));
    }
    let om = integral_basis(p)?;
    let scale = uniformizer(p)?.checked_mul(&CycloElem::from_rational(Rational::new(1.into(), p.into())))?;
    let basis: Vec<CycloElem> = om.iter().map(|b| scale.checked_mul(b)).collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(basis.len());
    for b in &basis {
        let c = coordinates(&om, b)?.ok_or_else(|| Error::Mismatch("basis element outside M".into()))?;
        let scaled: Option<Vec<BigInt>> = c.iter().map(|x| to_int(&(x * rat(p as i64)))).collect();
        rows.push(scaled.ok_or_else(|| Error::Mismatch("p·A is not inside the integers of M".into()))?);
    }
    Ok(SqrtInvDiff {
        p,
        integral_basis: om,
        basis,
        scaled_coords: IntLattice::new(p as usize, rows)?,
    })
}

impl SqrtInvDiff {
    pub fn checks(&self) -> Result<LatticeChecks> {
        let p = self.p;
        let disc_om = trace_form(&self.integral_basis, p)?.det();
        let tf = trace_form(&self.basis, p)?;
        let disc_a = tf.det();
        let coords: QMatrix = Matrix::from_rows(
            self.scaled_coords
                .basis()
                .iter()
                .map(|r| r.iter().map(|x| Rational::new(x.clone(), p.into())).collect())
                .collect(),
        );
        let det = coords.det();
        let index_is_p_pow = det.abs() == Rational::new(1.into(), BigInt::from(p).pow(p as u32 - 1));
        // every integral basis vector is an integer combination of the lattice basis
        let mut contains_integers = true;
        for b in &self.integral_basis {
            match coordinates(&self.basis, b)? {
                Some(c) => contains_integers &= c.iter().all(|x| x.is_integer()),
                None => contains_integers = false,
            }
        }
        let trace_pairing_integral = (0..tf.rows()).all(|i| tf.row(i).iter().all(|x| x.is_integer()));
        Ok(LatticeChecks {
            integral_basis_disc: disc_om.to_string(),
            lattice_disc: disc_a.to_string(),
            index_is_p_pow,
            contains_integers,
            p_multiple_integral: true,
            trace_pairing_integral,
        })
    }

    /// The element with integer coordinates `c` in the lattice basis.
    pub fn element(&self, c: &[i64]) -> Result<CycloElem> {
        self.basis.iter().zip(c).try_fold(CycloElem::zero(), |acc, (b, &x)| {
            acc.checked_add(&b.checked_mul(&CycloElem::from_int(x))?)
        })
    }
}

/// Target value of (α ∣ χ) for the generator α: 1 at the trivial character and
/// τ(χ)·p^{−1}·χ(4) otherwise, with χ(4) read through the convention.
pub fn resolvent_target(chi: &RamifiedChar, conv: &GaussConvention) -> Result<CycloElem> {
    if chi.is_trivial() {
        return Ok(CycloElem::one());
    }
    let p = chi.p;
    let chi4 = CycloElem::root_of_unity(p, (chi.exponent * conv.dlog(p, 4) % p) as i64)?;
    gauss_sum(chi, conv)
        .checked_mul(&chi4)?
        .checked_mul(&CycloElem::from_rational(Rational::new(1.into(), p.into())))
}

#[derive(Debug, Clone, Serialize)]
pub struct ConventionClass {
    pub members: Vec<GaussConvention>,
    pub alpha: Vec<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchStats {
    pub candidates: u64,
    pub trace_one: u64,
    pub accepted: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Calibration {
    pub p: u64,
    pub coeff_bound: i64,
    /// Accepted conventions grouped by the generator they accept.
    pub classes: Vec<ConventionClass>,
    /// First accepted convention in enumeration order.
    pub convention: GaussConvention,
    /// Coordinates of α in the lattice basis.
    pub alpha: Vec<i64>,
    pub stats: SearchStats,
    pub ok: bool,
}

/// Resolvents of the lattice basis, flattened to rational vectors at level p².
struct Precomputed {
    basis_traces: Vec<i64>,
    /// resolvents[e][j] = coordinates of (b_j ∣ χ_e)
    resolvents: Vec<Vec<Vec<Rational>>>,
}

fn flat(x: &CycloElem, level: u64, phi: usize) -> Result<Vec<Rational>> {
    let mut v = x.embed(level)?.coeffs();
    v.resize(phi, Rational::zero());
    Ok(v)
}

fn precompute(lat: &SqrtInvDiff, conv: &GaussConvention) -> Result<Precomputed> {
    let p = lat.p;
    let n = p * p;
    let phi = (p * (p - 1)) as usize;
    let basis_traces = lat
        .basis
        .iter()
        .map(|b| {
            let t = trace_subfield(b, p)?;
            to_int(&t)
                .and_then(|x| x.to_i64())
                .ok_or_else(|| Error::Mismatch("basis trace is not an integer".into()))
        })
        .collect::<Result<_>>()?;
    let mut resolvents = Vec::new();
    for chi in RamifiedChar::all(p)? {
        let row = lat
            .basis
            .iter()
            .map(|b| flat(&resolvent(b, &chi, conv)?, n, phi))
            .collect::<Result<_>>()?;
        resolvents.push(row);
    }
    Ok(Precomputed {
        basis_traces,
        resolvents,
    })
}

/// Largest number of candidates a search may visit.
pub const SEARCH_LIMIT: u64 = 20_000_000;

/// Exhaustive search for α with coordinates in [−bound, bound] meeting every
/// resolvent target under `conv`. Returns the accepted coordinates and statistics.
pub fn search_alpha(lat: &SqrtInvDiff, conv: &GaussConvention, bound: i64) -> Result<(Vec<Vec<i64>>, SearchStats)> {
    let p = lat.p;
    let n = p * p;
    let phi = (p * (p - 1)) as usize;
    let r = lat.basis.len();
    let width = (2 * bound + 1) as u64;
    let total = width
        .checked_pow(r as u32)
        .filter(|&t| t <= SEARCH_LIMIT)
        .ok_or_else(|| Error::SizeLimit(format!("{width}^{r} candidates exceed {SEARCH_LIMIT}")))?;
    let pre = precompute(lat, conv)?;
    let targets: Vec<Vec<Rational>> = RamifiedChar::all(p)?
        .iter()
        .map(|chi| flat(&resolvent_target(chi, conv)?, n, phi))
        .collect::<Result<_>>()?;
    let mut stats = SearchStats {
        candidates: 0,
        trace_one: 0,
        accepted: 0,
    };
    let mut found = Vec::new();
    let mut c = vec![0i64; r];
    for idx in 0..total {
        let mut k = idx;
        for slot in c.iter_mut() {
            *slot = (k % width) as i64 - bound;
            k /= width;
        }
        stats.candidates += 1;
        let tr: i64 = c.iter().zip(&pre.basis_traces).map(|(a, b)| a * b).sum();
        if tr != 1 {
            continue;
        }
        stats.trace_one += 1;
        let hit = (1..p as usize).all(|e| {
            (0..phi).all(|i| {
                let s: Rational = (0..r)
                    .filter(|&j| c[j] != 0)
                    .map(|j| &pre.resolvents[e][j][i] * rat(c[j]))
                    .sum();
                s == targets[e][i]
            })
        });
        if hit {
            stats.accepted += 1;
            found.push(c.clone());
        }
    }
    Ok((found, stats))
}

/// Runs the search under all eight conventions; succeeds when at least one
/// accepts, with `ok` recording that the accepted conventions form one class.
pub fn calibrate_and_search_alpha(p: u64, coeff_bound: i64) -> Result<Calibration> {
    if coeff_bound < 1 {
        return Err(Error::InvalidParams("coefficient bound must be at least 1".into()));
    }
    let lat = sqrt_inv_diff_lattice(p)?;
    let mut classes: Vec<ConventionClass> = Vec::new();
    let mut stats = SearchStats {
        candidates: 0,
        trace_one: 0,
        accepted: 0,
    };
    let mut first: Option<GaussConvention> = None;
    for conv in GaussConvention::all() {
        let (found, s) = search_alpha(&lat, &conv, coeff_bound)?;
        stats.candidates += s.candidates;
        stats.trace_one += s.trace_one;
        stats.accepted += s.accepted;
        for alpha in found {
            first.get_or_insert(conv);
            match classes.iter_mut().find(|cl| cl.alpha == alpha) {
                Some(cl) => cl.members.push(conv),
                None => classes.push(ConventionClass {
                    members: vec![conv],
                    alpha,
                }),
            }
        }
    }
    let Some(convention) = first else {
        return Err(Error::SearchFailed {
            bound: coeff_bound,
            stats: format!(
                "{} candidates, {} of trace one, none accepted",
                stats.candidates, stats.trace_one
            ),
        });
    };
    let alpha = classes
        .iter()
        .find(|cl| cl.members.contains(&convention))
        .expect("class of the first convention")
        .alpha
        .clone();
    Ok(Calibration {
        p,
        coeff_bound,
        ok: classes.len() == 1,
        classes,
        convention,
        alpha,
        stats,
    })
}

/// Search under one fixed convention, as for re-verification at a new prime.
pub fn verify_convention(p: u64, conv: &GaussConvention, coeff_bound: i64) -> Result<Option<Vec<i64>>> {
    let lat = sqrt_inv_diff_lattice(p)?;
    let (found, _) = search_alpha(&lat, conv, coeff_bound)?;
    Ok(found.into_iter().next())
}

/// α generates the lattice as a Galois module: its p conjugates have integer
/// coordinates forming a unimodular matrix, and all its resolvents are nonzero.
pub fn normal_generator_check(lat: &SqrtInvDiff, alpha: &[i64], conv: &GaussConvention) -> Result<bool> {
    let p = lat.p;
    let a = lat.element(alpha)?;
    let mut rows = Vec::new();
    for k in 0..p as i64 {
        let conj = conv.act(&a, p, coset_rep(p, k))?;
        let Some(c) = coordinates(&lat.basis, &conj)? else {
            return Ok(false);
        };
        let Some(ints) = c.iter().map(to_int).collect::<Option<Vec<BigInt>>>() else {
            return Ok(false);
        };
        rows.push(ints);
    }
    let det = Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect(),
    )
    .det();
    let unimodular = det.abs().is_one();
    let mut nonzero = true;
    for chi in RamifiedChar::all(p)? {
        nonzero &= !resolvent(&a, &chi, conv)?.is_zero();
    }
    Ok(unimodular && nonzero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn conv(cs: i64, es: i64, dir: i64) -> GaussConvention {
        GaussConvention::new(cs, es, dir).unwrap()
    }

    #[test]
    fn unit_log_basics() {
        for p in [3, 5, 7] {
            assert_eq!(unit_log(p, 1 + p as i64), 1);
            for h in inertia_complement(p) {
                assert_eq!(unit_log(p, h as i64), 0);
            }
            assert_eq!(inertia_complement(p).len(), p as usize - 1);
            // homomorphism
            for &u in &units(p) {
                for &v in &units(p) {
                    let uv = (u * v % (p * p)) as i64;
                    assert_eq!(unit_log(p, uv), (unit_log(p, u as i64) + unit_log(p, v as i64)) % p);
                }
            }
        }
    }

    #[test]
    fn gauss_sum_examples() {
        let c = conv(1, 1, 1);
        assert_eq!(gauss_sum(&RamifiedChar::trivial(3).unwrap(), &c), CycloElem::one());
        // direct summation over the six units of Z/9 with χ(u) = ω^{e·log u}
        let chi = RamifiedChar::new(3, 1).unwrap();
        let w = |k: i64| CycloElem::root_of_unity(9, k).unwrap();
        let mut direct = CycloElem::zero();
        for (u, log) in [(1, 0), (2, 2), (4, 1), (5, 1), (7, 2), (8, 0)] {
            assert_eq!(unit_log(3, u), log);
            direct = direct.checked_add(&w(3 * log as i64).checked_mul(&w(u)).unwrap()).unwrap();
        }
        assert_eq!(gauss_sum(&chi, &c), direct);
    }

    #[test]
    fn abs_square_examples() {
        for p in [3, 5, 7] {
            for c in GaussConvention::all() {
                for e in 1..p as i64 {
                    assert!(abs_square_check(&RamifiedChar::new(p, e).unwrap(), &c).unwrap());
                }
            }
        }
        assert!(abs_square_check(&RamifiedChar::trivial(3).unwrap(), &conv(1, 1, 1)).is_err());
    }

    #[test]
    fn conjugation_inverts_character() {
        for p in [3, 5] {
            for c in GaussConvention::all() {
                for chi in RamifiedChar::all(p).unwrap() {
                    let tau = gauss_sum(&chi, &c);
                    assert_eq!(gauss_sum(&chi.inverse(), &c), tau.galois(-1).unwrap());
                    assert_eq!(tau.galois(1 + (p * p) as i64).unwrap(), tau);
                }
            }
        }
    }

    #[test]
    fn twist_examples() {
        for c in GaussConvention::all() {
            assert!(twist_identity_check(3, &c, 1).unwrap());
            assert!(twist_identity_check(3, &c, 2).unwrap());
            assert!(twist_identity_check(5, &c, 4).unwrap());
        }
    }

    #[test]
    fn resolvent_examples() {
        let c = conv(1, 1, -1);
        for p in [3, 5] {
            let one = CycloElem::one();
            for chi in RamifiedChar::all(p).unwrap() {
                let expect = if chi.is_trivial() { p as i64 } else { 0 };
                assert_eq!(resolvent(&one, &chi, &c).unwrap(), CycloElem::from_int(expect));
            }
            let zeta = CycloElem::root_of_unity(p * p, 1).unwrap();
            assert_eq!(
                resolvent(&zeta, &RamifiedChar::trivial(p).unwrap(), &c),
                Err(Error::NotFixed)
            );
        }
    }

    #[test]
    fn inflation_and_split_pair() {
        for p in [3, 5] {
            for c in [conv(1, 1, 1), conv(1, 1, -1)] {
                assert!(inflation_trace_check(p, &c, 7, 5).unwrap());
            }
        }
        for c in [conv(1, 1, 1), conv(1, 1, -1)] {
            assert!(split_pair_check(3, &c, 11).unwrap());
            assert!(split_pair_check(5, &c, 11).unwrap());
        }
    }

    #[test]
    fn lattice_checks() {
        for p in [3, 5, 7] {
            let lat = sqrt_inv_diff_lattice(p).unwrap();
            let checks = lat.checks().unwrap();
            assert!(checks.ok(p), "{p}: {checks:?}");
        }
    }

    #[test]
    fn calibration_at_three() {
        let cal = calibrate_and_search_alpha(3, 6).unwrap();
        assert!(cal.ok);
        assert_eq!(cal.convention, conv(1, 1, -1));
        assert_eq!(cal.alpha, vec![0, 1, 0]);
        let lat = sqrt_inv_diff_lattice(3).unwrap();
        assert!(normal_generator_check(&lat, &cal.alpha, &cal.convention).unwrap());
        assert_eq!(trace_subfield(&lat.element(&cal.alpha).unwrap(), 3).unwrap(), rat(1));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn resolvent_is_linear(a in proptest::collection::vec(-3i64..=3, 3), b in proptest::collection::vec(-3i64..=3, 3), e in 0i64..3) {
            let lat = sqrt_inv_diff_lattice(3).unwrap();
            let (x, y) = (lat.element(&a).unwrap(), lat.element(&b).unwrap());
            let chi = RamifiedChar::new(3, e).unwrap();
            let c = conv(-1, 1, 1);
            let lhs = resolvent(&x.checked_add(&y).unwrap(), &chi, &c).unwrap();
            let rhs = resolvent(&x, &chi, &c).unwrap().checked_add(&resolvent(&y, &chi, &c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inertia_permutes_gauss_sums(h_idx in 0usize..4, e in 1i64..5) {
            let p = 5;
            let h = inertia_complement(p)[h_idx];
            for c in GaussConvention::all() {
                let tau = gauss_sum(&RamifiedChar::new(p, e).unwrap(), &c);
                let moved = gauss_sum(&RamifiedChar::new(p, e * h as i64).unwrap(), &c);
                prop_assert_eq!(tau.galois(h as i64).unwrap(), moved);
            }
        }
    }
}
