//! Integer lattices: Hermite normal form, integer kernels and lattice equality.
//!
//! Canonical form is row-style HNF: nonzero rows only, pivots positive with
//! strictly increasing pivot columns, and entries above each pivot reduced into
//! `[0, pivot)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupring::{GroupElem, GroupParams};

pub const DEFAULT_PD_LIMIT: u64 = 35;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntLattice {
    ambient_rank: usize,
    basis: Vec<Vec<BigInt>>,
}

impl IntLattice {
    /// Lattice spanned by `rows`; every row must have length `ambient_rank`.
    pub fn new(ambient_rank: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != ambient_rank) {
            return Err(Error::RankMismatch(r.len(), ambient_rank));
        }
        Ok(IntLattice {
            ambient_rank,
            basis: rows,
        })
    }

    pub fn from_i64(ambient_rank: usize, rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            ambient_rank,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn zero(ambient_rank: usize) -> Self {
        IntLattice {
            ambient_rank,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_rank: usize) -> Self {
        let basis = (0..ambient_rank)
            .map(|i| {
                (0..ambient_rank)
                    .map(|j| BigInt::from((i == j) as i64))
                    .collect()
            })
            .collect();
        IntLattice {
            ambient_rank,
            basis,
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Rank of the lattice (number of canonical basis rows).
    pub fn rank(&self) -> usize {
        hnf_rows(self.basis.clone(), self.ambient_rank).len()
    }

    pub fn hnf(&self) -> IntLattice {
        IntLattice {
            ambient_rank: self.ambient_rank,
            basis: hnf_rows(self.basis.clone(), self.ambient_rank),
        }
    }

    /// True iff `v` lies in the lattice.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        let h = self.hnf();
        let mut rest = v.to_vec();
        for row in &h.basis {
            let piv = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
            let (q, r) = rest[piv].div_mod_floor(&row[piv]);
            if !r.is_zero() {
                return false;
            }
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        rest.iter().all(Zero::is_zero)
    }
}

impl Serialize for IntLattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .basis
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        rows.serialize(s)
    }
}

fn hnf_rows(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        // gcd elimination on column c among rows r..
        loop {
            let pivot = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&i, &j| rows[i][c].abs().cmp(&rows[j][c].abs()));
            let Some(pi) = pivot else { break };
            rows.swap(r, pi);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let (head, tail) = rows.split_at_mut(i);
                for (x, y) in tail[0].iter_mut().zip(&head[r]) {
                    *x -= &q * y;
                }
                if !tail[0][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < rows.len() && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
            for i in 0..r {
                let q = rows[i][c].div_floor(&rows[r][c]);
                if q.is_zero() {
                    continue;
                }
                let (head, tail) = rows.split_at_mut(r);
                for (x, y) in head[i].iter_mut().zip(&tail[0]) {
                    *x -= &q * y;
                }
            }
            r += 1;
        }
    }
    rows.truncate(r);
    rows
}

/// Basis of {v : v·mat = 0} for an integer matrix with `mat.len()` rows and `cols` columns.
pub fn int_kernel(mat: &[Vec<BigInt>], cols: usize) -> Result<IntLattice> {
    let n = mat.len();
    if let Some(r) = mat.iter().find(|r| r.len() != cols) {
        return Err(Error::RankMismatch(r.len(), cols));
    }
    let aug: Vec<Vec<BigInt>> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = row.clone();
            v.extend((0..n).map(|j| BigInt::from((i == j) as i64)));
            v
        })
        .collect();
    let h = hnf_rows(aug, cols + n);
    let kernel = h
        .into_iter()
        .filter(|row| row[..cols].iter().all(Zero::is_zero))
        .map(|row| row[cols..].to_vec())
        .collect();
    Ok(IntLattice::new(n, kernel)?.hnf())
}

pub fn hnf(lattice: &IntLattice) -> IntLattice {
    lattice.hnf()
}

/// Equality of the spanned lattices, decided on canonical forms.
pub fn lattice_equal(a: &IntLattice, b: &IntLattice) -> Result<bool> {
    if a.ambient_rank != b.ambient_rank {
        return Err(Error::RankMismatch(a.ambient_rank, b.ambient_rank));
    }
    Ok(a.hnf().basis == b.hnf().basis)
}

/// Outcome of the kernel-generator comparison for the two-generator complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelGeneratorReport {
    pub generators_in_kernel: bool,
    pub rank_consistent: bool,
    pub kernel_rank: usize,
    pub lattices_equal: bool,
}

impl KernelGeneratorReport {
    pub fn ok(&self) -> bool {
        self.generators_in_kernel && self.rank_consistent && self.lattices_equal
    }
}

/// Models Z[G]z₁ ⊕ Z[G]z₂ → Z[G]z₀, z₁ ↦ (b − 1)z₀, z₂ ↦ (a − 1)z₀, as an
/// integer matrix and compares its kernel with the Z-span of all G-translates of
/// (a − 1)z₁ − (b − 1)z₂, T_b z₁ and T_a z₂.
pub fn kernel_generators_report(p: u64, d: u64, pd_limit: u64) -> Result<KernelGeneratorReport> {
    let params = GroupParams::new(p, d, 1)?;
    let n = params.order();
    if n > pd_limit {
        return Err(Error::SizeLimit(format!("pd = {n} exceeds {pd_limit}")));
    }
    let n = n as usize;
    let idx = |g: GroupElem| (g.i * d + g.j) as usize;
    let elems = params.elements();

    // row for g·z₁ is g(b − 1); row for g·z₂ is g(a − 1)
    let mut mat = vec![vec![BigInt::zero(); n]; 2 * n];
    for &g in &elems {
        let r1 = &mut mat[idx(g)];
        r1[idx(params.elem(g.i as i64, g.j as i64 + 1))] += 1;
        r1[idx(g)] -= 1;
        let r2 = &mut mat[n + idx(g)];
        r2[idx(params.elem(g.i as i64 + 1, g.j as i64))] += 1;
        r2[idx(g)] -= 1;
    }

    let mut gens = Vec::new();
    for &g in &elems {
        let (gi, gj) = (g.i as i64, g.j as i64);
        let mut v = vec![BigInt::zero(); 2 * n];
        v[idx(params.elem(gi + 1, gj))] += 1;
        v[idx(g)] -= 1;
        v[n + idx(params.elem(gi, gj + 1))] -= 1;
        v[n + idx(g)] += 1;
        gens.push(v);
        let mut tb = vec![BigInt::zero(); 2 * n];
        for j in 0..d as i64 {
            tb[idx(params.elem(gi, gj + j))] += 1;
        }
        gens.push(tb);
        let mut ta = vec![BigInt::zero(); 2 * n];
        for i in 0..p as i64 {
            ta[n + idx(params.elem(gi + i, gj))] += 1;
        }
        gens.push(ta);
    }

    let generators_in_kernel = gens.iter().all(|v| {
        (0..n).all(|c| {
            v.iter()
                .zip(&mat)
                .fold(BigInt::zero(), |acc, (x, row)| acc + x * &row[c])
                .is_zero()
        })
    });
    let kernel = int_kernel(&mat, n)?;
    let image_rank = IntLattice::new(n, mat.clone())?.rank();
    let kernel_rank = kernel.basis().len();
    let rank_consistent = kernel_rank + image_rank == 2 * n && kernel_rank == n + 1;
    let spanned = IntLattice::new(2 * n, gens)?;
    let lattices_equal = lattice_equal(&kernel, &spanned)?;
    Ok(KernelGeneratorReport {
        generators_in_kernel,
        rank_consistent,
        kernel_rank,
        lattices_equal,
    })
}

pub fn kernel_generators_check(p: u64, d: u64, pd_limit: u64) -> Result<bool> {
    Ok(kernel_generators_report(p, d, pd_limit)?.ok())
}
