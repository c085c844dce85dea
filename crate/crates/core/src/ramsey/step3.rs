//! Normal form for the pivot matrices.
//!
//! For `i = C(t,2), ..., 1` the matrix `C_{t+2i}` is cleared so that its rows
//! and columns `t+2i`, `t+2i+1` (1-based) carry only the `±1` pair. Going from
//! the top down means the operations of round `i` only add multiples of basis
//! vectors `t+2i`, `t+2i+1` to earlier ones, which leaves every already
//! cleared `C_{t+2j}` (`j > i`) and every smaller `C_{t+2j}` (`j < i`) alone.

use crate::altspace::binomial2;
use crate::error::{invariant, Error, Result};
use crate::field::Felt;
use crate::matrix::Mat;
use crate::ramsey::step2::is_staircase;
use crate::tensor3::ThreeWay;

/// 0-based `(row, row+1)` for the pivot pair of `D_{t+i}`, `i` 1-based.
pub(crate) fn pivot_pair(t: usize, i: usize) -> (usize, usize) {
    (t + 2 * i - 1, t + 2 * i)
}

/// Whether `m` has the block form
/// `diag(*, [[0, 1], [-1, 0]], 0)` with the unit pair at 1-based rows
/// `t+2i`, `t+2i+1`.
pub fn is_normal_form(m: &Mat, t: usize, i: usize) -> bool {
    let (a, b) = pivot_pair(t, i);
    let n = m.rows();
    if m.cols() != n || b >= n || m.check_alternating().is_err() {
        return false;
    }
    let field = m.field();
    for x in 0..n {
        for &r in &[a, b] {
            let expect = match (r == a, x) {
                (true, x) if x == b => Felt::ONE,
                (false, x) if x == a => field.neg(Felt::ONE),
                _ => Felt::ZERO,
            };
            if m.get(r, x) != expect {
                return false;
            }
        }
        for y in b + 1..n {
            if !m.get(x, y).is_zero() {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug)]
pub struct Step3Result {
    /// `D_1..D_t` followed by `D_{t+1}..D_{t+C(t,2)}`.
    pub d_mats: Vec<Mat>,
    /// Accumulated congruence: every `C_k` became `transform^T C_k transform`.
    pub transform: Mat,
}

pub fn step3_normalize(c_mats: &[Mat], t: usize) -> Result<Step3Result> {
    let t_prime = t * t;
    if c_mats.len() != t_prime {
        return Err(Error::ShapeViolation(format!("expected {t_prime} staircase matrices, got {}", c_mats.len())));
    }
    if !is_staircase(c_mats) || c_mats[0].rows() != t_prime + 1 {
        return Err(Error::ShapeViolation("input is not a staircase of size t^2 + 1".into()));
    }
    let field = c_mats[0].field();
    let mut x = ThreeWay::from_slices(field, t_prime + 1, c_mats.to_vec())?;
    let pairs = binomial2(t);

    for i in (1..=pairs).rev() {
        let slice = t + 2 * i - 1;
        let (a, b) = pivot_pair(t, i);
        invariant(x.get(a, b, slice) == Felt::ONE, || format!("pivot of C_{} was disturbed", t + 2 * i))?;
        for k in 0..a {
            let above = x.get(k, b, slice);
            x.apply_paired_rowcol(a, k, field.neg(above))?;
            let left = x.get(k, a, slice);
            x.apply_paired_rowcol(b, k, left)?;
        }
    }

    let transform = x.transform().clone();
    let slices = x.into_slices();
    let mut d_mats: Vec<Mat> = slices[..t].to_vec();
    d_mats.extend((1..=pairs).map(|i| slices[t + 2 * i - 1].clone()));

    invariant(is_staircase(&d_mats[..t]), || "D_1..D_t lost their staircase pivots".into())?;
    for i in 1..=pairs {
        invariant(is_normal_form(&d_mats[t + i - 1], t, i), || format!("D_{} is not in normal form", t + i))?;
    }
    Ok(Step3Result { d_mats, transform })
}

/// Random alternating `C_c`, supported on the leading `c+2` block, with
/// the staircase pivot at `(c, c+1)`.
#[cfg(test)]
pub(crate) fn random_staircase(f: crate::field::FieldCtx, t: usize, seed: u64) -> Vec<Mat> {
    let size = t * t + 1;
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        f.elem(state >> 33)
    };
    (0..t * t)
        .map(|c| {
            let mut m = Mat::zeros(f, size, size);
            for i in 0..c + 2 {
                for j in i + 1..c + 2 {
                    let x = if (i, j) == (c, c + 1) { f.one() } else { next() };
                    m.set(i, j, x);
                    m.set(j, i, f.neg(x));
                }
            }
            m
        })
        .collect()
}
