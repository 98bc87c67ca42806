//! The kernel-generator matrix and the full splitting matrix (w | kernel generators),
//! with seeded fillings of the unconstrained entries and character-wise determinants.
//!
//! Row layout: z₁, z₂, then for each block j = 0..p the rows α₁w_j, …, α_mw_j.
//! Column layout: w, t₁, t₂, r₂..r_m, then s_{j,1..m} for j = 0..p−1.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupring::{
    idempotent, partial_inverse, trace_elem, CharValues, Character, GroupParams, GroupRingElem,
    Subgroup,
};
use crate::kgroup::epsilon_closed;
use crate::{CycloElem, CycloMatrix};

/// Bound on the integer coefficients of random slot fillings.
pub const SLOT_COEFF_BOUND: i64 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct GRMatrix {
    params: GroupParams,
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), GroupRingElem>,
}

impl GRMatrix {
    pub fn zeros(params: &GroupParams, rows: usize, cols: usize) -> Self {
        GRMatrix {
            params: *params,
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn params(&self) -> &GroupParams {
        &self.params
    }

    pub fn get(&self, r: usize, c: usize) -> GroupRingElem {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(|| GroupRingElem::zero(&self.params))
    }

    pub fn set(&mut self, r: usize, c: usize, x: GroupRingElem) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if x.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), x);
        }
    }

    /// Add `x` to the entry at (r, c).
    pub fn add_to(&mut self, r: usize, c: usize, x: &GroupRingElem) {
        let v = &self.get(r, c) + x;
        self.set(r, c, v);
    }

    pub fn is_zero_at(&self, r: usize, c: usize) -> bool {
        !self.entries.contains_key(&(r, c))
    }

    /// Entry-wise character evaluation.
    pub fn char_eval(&self, ch: &Character) -> CycloMatrix {
        let level = self.params.char_level();
        let zero = CycloElem::zero().embed(level).expect("level within limit");
        let mut out = CycloMatrix::from_rows(vec![vec![zero; self.cols]; self.rows]);
        for ((r, c), x) in &self.entries {
            out[(*r, *c)] = x.char_eval(ch);
        }
        out
    }

    /// det of the character-evaluated matrix at every character.
    pub fn char_dets(&self) -> CharValues {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        self.params
            .characters()
            .into_iter()
            .map(|ch| (ch, self.char_eval(&ch).det()))
            .collect()
    }

    /// Submatrix on the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> GRMatrix {
        let mut out = GRMatrix::zeros(&self.params, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                if let Some(x) = self.entries.get(&(r, c)) {
                    out.set(i, j, x.clone());
                }
            }
        }
        out
    }
}

impl Serialize for GRMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<(usize, usize, &GroupRingElem)> =
            self.entries.iter().map(|((r, c), x)| (*r, *c, x)).collect();
        (self.rows, self.cols, entries).serialize(s)
    }
}

/// Index helpers for the (pm + 2)-square layout.
#[derive(Debug, Clone, Copy)]
pub struct Layout {
    pub p: usize,
    pub m: usize,
}

impl Layout {
    pub fn new(params: &GroupParams) -> Self {
        Layout {
            p: params.p as usize,
            m: params.m as usize,
        }
    }

    pub fn size(&self) -> usize {
        self.p * self.m + 2
    }

    pub const Z1: usize = 0;
    pub const Z2: usize = 1;
    pub const W: usize = 0;
    pub const T1: usize = 1;
    pub const T2: usize = 2;

    /// Row of α_k w_j, k in 1..=m.
    pub fn row(&self, j: usize, k: usize) -> usize {
        2 + j * self.m + (k - 1)
    }

    /// Column of r_k, k in 2..=m.
    pub fn r_col(&self, k: usize) -> usize {
        3 + (k - 2)
    }

    /// Column of s_{j,k}, j in 0..p−1, k in 1..=m.
    pub fn s_col(&self, j: usize, k: usize) -> usize {
        2 + self.m + j * self.m + (k - 1)
    }

    /// Block index of a row, `None` for the z rows.
    pub fn block_of(&self, row: usize) -> Option<usize> {
        (row >= 2).then(|| (row - 2) / self.m)
    }
}

/// Position of an unconstrained entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SlotId {
    pub row: usize,
    pub col: usize,
}

/// All unconstrained entries: the t₁ column on blocks j ≥ 1, and each s_{j,k}
/// column on blocks ≥ j + 2.
pub fn free_slots(params: &GroupParams) -> Vec<SlotId> {
    let l = Layout::new(params);
    let mut out = Vec::new();
    for j in 1..l.p {
        for k in 1..=l.m {
            out.push(SlotId {
                row: l.row(j, k),
                col: Layout::T1,
            });
        }
    }
    for j in 0..l.p - 1 {
        for k in 1..=l.m {
            for jj in j + 2..l.p {
                for kk in 1..=l.m {
                    out.push(SlotId {
                        row: l.row(jj, kk),
                        col: l.s_col(j, k),
                    });
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct FreeSlotFilling {
    pub seed: u64,
    pub entries: BTreeMap<SlotId, GroupRingElem>,
}

impl FreeSlotFilling {
    pub fn empty(seed: u64) -> Self {
        FreeSlotFilling {
            seed,
            entries: BTreeMap::new(),
        }
    }

    /// Every free slot gets integer coefficients drawn uniformly from
    /// `[−SLOT_COEFF_BOUND, SLOT_COEFF_BOUND]`.
    pub fn random(params: &GroupParams, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let elems = params.elements();
        let entries = free_slots(params)
            .into_iter()
            .map(|slot| {
                let x = GroupRingElem::from_terms(
                    params,
                    elems.iter().map(|&g| {
                        let c = rng.gen_range(-SLOT_COEFF_BOUND..=SLOT_COEFF_BOUND);
                        (g, CycloElem::from_int(c))
                    }),
                );
                (slot, x)
            })
            .collect();
        FreeSlotFilling { seed, entries }
    }

    pub fn validate(&self, params: &GroupParams) -> Result<()> {
        let allowed = free_slots(params);
        for slot in self.entries.keys() {
            if !allowed.contains(slot) {
                return Err(Error::SlotSupport(format!(
                    "row {} column {}",
                    slot.row, slot.col
                )));
            }
        }
        Ok(())
    }
}

/// The α_k-decomposition of the w₀ coefficient of t̃₁:
/// v₁ = b^{m̃}, v_i = b^{1−(i−2)m̃} − b^{m̃}.
pub fn build_v(params: &GroupParams) -> Vec<GroupRingElem> {
    let mt = params.mtilde as i64;
    let b_mt = GroupRingElem::monomial(params, 0, mt);
    let mut v = vec![b_mt.clone()];
    for i in 2..=params.m as i64 {
        v.push(&GroupRingElem::monomial(params, 0, 1 - (i - 2) * mt) - &b_mt);
    }
    v
}

/// The m × m block (w_{p−1}-rows of the t₂, r₂..r_m columns).
pub fn build_m(params: &GroupParams) -> GRMatrix {
    let full = build_a_theta(params, &FreeSlotFilling::empty(0)).expect("empty filling is valid");
    let l = Layout::new(params);
    let rows: Vec<usize> = (1..=l.m).map(|k| l.row(l.p - 1, k)).collect();
    let mut cols = vec![Layout::T2];
    cols.extend((2..=l.m).map(|k| l.r_col(k)));
    full.select(&rows, &cols)
}

/// The (pm + 2)-square matrix (w | t₁, t₂, r₂..r_m, s_{j,k}).
pub fn build_a_theta(params: &GroupParams, filling: &FreeSlotFilling) -> Result<GRMatrix> {
    filling.validate(params)?;
    let l = Layout::new(params);
    let (p, m) = (l.p, l.m);
    let mt = params.mtilde as i64;
    let mut a = GRMatrix::zeros(params, l.size(), l.size());
    let one = GroupRingElem::one(params);
    let ga = GroupRingElem::a(params);
    let gb = GroupRingElem::b(params);
    let am1 = &ga - &one;
    let bm1 = &gb - &one;
    let ea = idempotent(params, Subgroup::A);
    let eb = idempotent(params, Subgroup::B);
    let ta = trace_elem(params, Subgroup::A);
    let tb = trace_elem(params, Subgroup::B);
    let neg_one = GroupRingElem::int(params, -1);
    let b_neg = GroupRingElem::monomial(params, 0, -mt);

    // w
    let inv_b = partial_inverse(&bm1, &eb)?;
    let inv_a = partial_inverse(&am1, &ea)?;
    a.set(Layout::Z1, Layout::W, &ea * &(&inv_b - &tb));
    a.set(Layout::Z2, Layout::W, inv_a);

    // t₁
    a.set(Layout::Z1, Layout::T1, am1.clone());
    a.set(Layout::Z2, Layout::T1, -bm1.clone());
    for (k, vk) in build_v(params).into_iter().enumerate() {
        a.set(l.row(0, k + 1), Layout::T1, vk);
    }

    // t₂
    a.set(Layout::Z2, Layout::T2, ta.clone());
    let beta_row = if m == 1 { 1 } else { 2 };
    a.set(l.row(p - 1, beta_row), Layout::T2, neg_one.clone());

    // r_k
    for k in 2..=m {
        let c = l.r_col(k);
        a.set(l.row(0, k), c, ta.clone());
        if k < m {
            a.set(l.row(p - 1, k + 1), c, b_neg.clone());
            a.set(l.row(p - 1, k), c, neg_one.clone());
        } else {
            a.set(l.row(p - 1, 1), c, b_neg.clone());
            for i in 2..=m {
                a.set(l.row(p - 1, i), c, -b_neg.clone());
            }
            a.add_to(l.row(p - 1, m), c, &neg_one);
        }
    }

    // s_{j,k}
    for j in 0..p - 1 {
        for k in 1..=m {
            let c = l.s_col(j, k);
            a.set(l.row(j, k), c, am1.clone());
            a.set(l.row(j + 1, k), c, neg_one.clone());
        }
    }

    for (slot, x) in &filling.entries {
        a.add_to(slot.row, slot.col, x);
    }
    Ok(a)
}

/// det 𝓜 = (−1)^m b^{m̃−1} at every character.
pub fn kernel_block_det_check(params: &GroupParams) -> bool {
    let expected = GroupRingElem::monomial(params, 0, params.mtilde as i64 - 1)
        .scale(&CycloElem::from_int(if params.m % 2 == 0 { 1 } else { -1 }));
    let mm = build_m(params);
    mm.char_dets()
        .iter()
        .all(|(ch, det)| *det == expected.char_eval(ch))
}

#[derive(Debug, Clone, Serialize)]
pub struct SeedDeterminants {
    pub seed: u64,
    pub dets: CharValues,
    /// The common value of det/ε if it is ±1 at every character.
    pub delta: Option<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DeterminantReport {
    pub per_seed: Vec<SeedDeterminants>,
    pub seed_independent: bool,
    pub delta: Option<i64>,
}

impl DeterminantReport {
    pub fn ok(&self) -> bool {
        self.seed_independent && self.delta.is_some()
    }

    /// Determinants of the first seed multiplied by δ, i.e. ε as recovered
    /// from the matrix.
    pub fn epsilon(&self) -> Option<CharValues> {
        let delta = CycloElem::from_int(self.delta?);
        Some(
            self.per_seed
                .first()?
                .dets
                .iter()
                .map(|(ch, x)| (*ch, x * &delta))
                .collect(),
        )
    }
}

/// δ with values = δ·closed at every character, if δ ∈ {±1} exists.
pub fn global_sign(values: &CharValues, closed: &CharValues) -> Option<i64> {
    let mut delta = None;
    for (ch, x) in values {
        let c = closed.get(ch)?;
        let s = if x == c {
            1
        } else if *x == -c.clone() {
            -1
        } else {
            return None;
        };
        if *delta.get_or_insert(s) != s {
            return None;
        }
    }
    delta
}

/// Character-wise determinants of the full matrix for each seeded filling,
/// compared with the closed form of ε.
pub fn epsilon_determinant_check(params: &GroupParams, seeds: &[u64]) -> Result<DeterminantReport> {
    if seeds.is_empty() {
        return Err(Error::InvalidParams("at least one seed is required".into()));
    }
    let closed = epsilon_closed(params).scalars();
    let mut per_seed = Vec::new();
    for &seed in seeds {
        let a = build_a_theta(params, &FreeSlotFilling::random(params, seed))?;
        let dets = a.char_dets();
        let delta = global_sign(&dets, &closed);
        per_seed.push(SeedDeterminants { seed, dets, delta });
    }
    let seed_independent = per_seed.windows(2).all(|w| w[0].dets == w[1].dets);
    let delta = per_seed[0].delta.filter(|_| {
        per_seed
            .iter()
            .all(|s| s.delta == per_seed[0].delta)
    });
    Ok(DeterminantReport {
        per_seed,
        seed_independent,
        delta,
    })
}

/// Checks the displayed zero pattern of the kernel-generator columns.
pub fn zero_pattern_ok(a: &GRMatrix) -> bool {
    let params = a.params();
    let l = Layout::new(params);
    let n = l.size();
    // z₁ row only in w and t₁; z₂ row only in w, t₁, t₂
    let z1_ok = (2..n).all(|c| a.is_zero_at(Layout::Z1, c));
    let z2_ok = (3..n).all(|c| a.is_zero_at(Layout::Z2, c));
    let ta = trace_elem(params, Subgroup::A);
    let r_ok = (2..=l.m).all(|k| a.get(l.row(0, k), l.r_col(k)) == ta);
    let one = GroupRingElem::one(params);
    let am1 = &GroupRingElem::a(params) - &one;
    let s_ok = (0..l.p - 1).all(|j| {
        (1..=l.m).all(|k| {
            let c = l.s_col(j, k);
            let rows_ok = (0..n).all(|r| {
                let blk = l.block_of(r);
                match blk {
                    None => a.is_zero_at(r, c),
                    Some(b) if b < j => a.is_zero_at(r, c),
                    Some(b) if b == j => {
                        let want = if r == l.row(j, k) { am1.clone() } else { GroupRingElem::zero(params) };
                        a.get(r, c) == want
                    }
                    Some(b) if b == j + 1 => {
                        let want = if r == l.row(j + 1, k) { -one.clone() } else { GroupRingElem::zero(params) };
                        a.get(r, c) == want
                    }
                    _ => true,
                }
            });
            rows_ok
        })
    });
    z1_ok && z2_ok && r_ok && s_ok
}

/// A copy of `a` with one kernel-generator entry altered (z₁ entry of t₁ becomes a + 1).
pub fn flip_entry(a: &GRMatrix) -> GRMatrix {
    let params = *a.params();
    let mut out = a.clone();
    out.set(
        Layout::Z1,
        Layout::T1,
        &GroupRingElem::a(&params) + &GroupRingElem::one(&params),
    );
    out
}

/// Character-wise comparison helper: true iff every value equals 1.
pub fn all_one(values: &CharValues) -> bool {
    values.values().all(|x| x.is_one())
}
