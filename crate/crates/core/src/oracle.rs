//! Brute-force ground truth for tiny instances.
//!
//! Every `d`-dimensional subspace of `F_q^n` has exactly one `d x n` reduced
//! row echelon basis. The enumerator walks pivot profiles in lexicographic
//! order and, for each, the free entries as an odometer, so nothing needs to
//! be deduplicated.

use crate::altspace::{binomial2, AltSpace};
use crate::error::{Error, Result};
use crate::field::{Felt, FieldCtx};
use crate::matrix::{Mat, Subspace};

pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Gaussian binomial `[n choose d]_q`; saturates at `u128::MAX`.
pub fn count_subspaces(q: u64, n: usize, d: usize) -> u128 {
    if d > n {
        return 0;
    }
    let q = q as u128;
    let pow = |e: usize| -> Option<u128> { q.checked_pow(e as u32) };
    let mut acc: u128 = 1;
    for i in 0..d {
        // acc = [n choose i]_q here; multiplying then dividing stays exact
        let (Some(num), Some(den)) = (pow(n - i), pow(i + 1)) else {
            return u128::MAX;
        };
        let Some(prod) = acc.checked_mul(num - 1) else {
            return u128::MAX;
        };
        acc = prod / (den - 1);
    }
    acc
}

/// Total number of subspaces of `F_q^n` over the listed dimensions.
pub fn count_subspaces_upto(q: u64, n: usize, dims: impl IntoIterator<Item = usize>) -> u128 {
    dims.into_iter().fold(0u128, |s, d| s.saturating_add(count_subspaces(q, n, d)))
}

fn check_budget(needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// Iterates over all `d`-dimensional subspaces of `F_q^n`, each exactly once.
pub struct SubspaceEnumerator {
    field: FieldCtx,
    n: usize,
    d: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    digits: Vec<u32>,
    done: bool,
}

impl SubspaceEnumerator {
    pub fn new(field: FieldCtx, n: usize, d: usize) -> Self {
        let mut e = SubspaceEnumerator {
            field,
            n,
            d,
            pivots: (0..d).collect(),
            free: Vec::new(),
            digits: Vec::new(),
            done: d > n,
        };
        e.reset_free();
        e
    }

    fn reset_free(&mut self) {
        self.free.clear();
        for (r, &pc) in self.pivots.iter().enumerate() {
            for c in pc + 1..self.n {
                if !self.pivots.contains(&c) {
                    self.free.push((r, c));
                }
            }
        }
        self.digits = vec![0; self.free.len()];
    }

    fn next_pivots(&mut self) -> bool {
        let (n, d) = (self.n, self.d);
        let Some(i) = (0..d).rev().find(|&i| self.pivots[i] < n - d + i) else {
            return false;
        };
        self.pivots[i] += 1;
        for j in i + 1..d {
            self.pivots[j] = self.pivots[j - 1] + 1;
        }
        true
    }

    fn current(&self) -> Mat {
        let mut m = Mat::zeros(self.field, self.d, self.n);
        for (r, &pc) in self.pivots.iter().enumerate() {
            m.set(r, pc, Felt::ONE);
        }
        for (&(r, c), &x) in self.free.iter().zip(&self.digits) {
            m.set(r, c, Felt(x));
        }
        m
    }

    fn advance(&mut self) {
        let q = self.field.p();
        for x in self.digits.iter_mut() {
            *x += 1;
            if *x < q {
                return;
            }
            *x = 0;
        }
        if self.next_pivots() {
            self.reset_free();
        } else {
            self.done = true;
        }
    }
}

impl Iterator for SubspaceEnumerator {
    /// The subspace, with basis the transposed echelon matrix.
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let m = self.current();
        self.advance();
        Some(Subspace::from_basis_unchecked(m.transpose()))
    }
}

/// Largest `d` for which `pred` holds on some `d`-dimensional subspace,
/// searching `d` from `hi` down to `lo`.
fn max_dim_with(
    field: FieldCtx,
    n: usize,
    lo: usize,
    hi: usize,
    mut pred: impl FnMut(&Subspace) -> Result<bool>,
) -> Result<Option<usize>> {
    for d in (lo..=hi).rev() {
        for w in SubspaceEnumerator::new(field, n, d) {
            if pred(&w)? {
                return Ok(Some(d));
            }
        }
    }
    Ok(None)
}

/// Isotropic number of `a`, by exhaustion with early exit from the top.
pub fn isotropic_number_exact(a: &AltSpace, budget: u128) -> Result<usize> {
    let n = a.n();
    check_budget(count_subspaces_upto(a.field().order(), n, 0..=n), budget)?;
    Ok(max_dim_with(a.field(), n, 0, n, |w| a.is_isotropic(w))?.unwrap_or(0))
}

/// Largest complete subspace of dimension at least 2, or 0 if there is none.
pub fn complete_number_exact(a: &AltSpace, budget: u128) -> Result<usize> {
    let n = a.n();
    let dim = a.space_dim();
    let hi = (0..=n).rev().find(|&d| binomial2(d) <= dim).unwrap_or(0);
    if hi < 2 {
        return Ok(0);
    }
    check_budget(count_subspaces_upto(a.field().order(), n, 2..=hi), budget)?;
    Ok(max_dim_with(a.field(), n, 2, hi, |w| a.is_complete(w))?.unwrap_or(0))
}

/// All complete subspaces of the given dimension.
pub fn complete_subspaces(a: &AltSpace, d: usize, budget: u128) -> Result<Vec<Subspace>> {
    check_budget(count_subspaces(a.field().order(), a.n(), d), budget)?;
    let mut out = Vec::new();
    for w in SubspaceEnumerator::new(a.field(), a.n(), d) {
        if a.is_complete(&w)? {
            out.push(w);
        }
    }
    Ok(out)
}

/// Minimum degree over nonzero vectors, sweeping one representative per
/// projective point. Returns the first minimiser in enumeration order.
pub fn min_degree_exact(a: &AltSpace, budget: u128) -> Result<(usize, Vec<Felt>)> {
    let n = a.n();
    if n == 0 {
        return Err(Error::PreconditionFailed("no nonzero vectors in F^0".into()));
    }
    check_budget(count_subspaces(a.field().order(), n, 1), budget)?;
    let mut best: Option<(usize, Vec<Felt>)> = None;
    for w in SubspaceEnumerator::new(a.field(), n, 1) {
        let v = w.basis().column(0);
        let d = a.degree(&v)?;
        if best.as_ref().is_none_or(|(b, _)| d < *b) {
            best = Some((d, v));
            if d == 0 {
                break;
            }
        }
    }
    Ok(best.expect("F^n has a projective point for n >= 1"))
}
