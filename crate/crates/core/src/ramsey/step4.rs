//! Fibre exchange.
//!
//! After normalisation the tube fibres at the consecutive positions
//! `(c, c+1)`, `c < t`, and at the pivot positions are independent. One by one
//! each pivot fibre is traded for a fibre inside the leading `(t+1)`-block,
//! taken in the order returned by [`tilde_positions`]. When plain exchange
//! would lose rank, adding the pivot basis vectors to the two coordinates of
//! the target position splices the pivot fibre into it.

use crate::altspace::binomial2;
use crate::error::{invariant, Error, Result};
use crate::field::Felt;
use crate::matrix::{independent, Mat};
use crate::ramsey::step3::{is_normal_form, pivot_pair};
use crate::tensor3::ThreeWay;

/// Non-consecutive positions `(j, k)` of the leading `(t+1)`-block, 0-based,
/// ordered by `k` first and then `j`: `(0,2), (0,3), (1,3), (0,4), ...`.
pub fn tilde_positions(t: usize) -> Vec<(usize, usize)> {
    (2..=t).flat_map(|k| (0..k - 1).map(move |j| (j, k))).collect()
}

fn consecutive_positions(t: usize) -> Vec<(usize, usize)> {
    (0..t).map(|c| (c, c + 1)).collect()
}

fn pivot_positions(t: usize) -> Vec<(usize, usize)> {
    (1..=binomial2(t)).map(|i| pivot_pair(t, i)).collect()
}

#[derive(Clone, Debug)]
pub struct Step4Result {
    /// Accumulated congruence applied to the normalised matrices.
    pub transform: Mat,
    /// 0-based rounds in which the pivot fibre had to be spliced in.
    pub injections: Vec<usize>,
    pub slices: Vec<Mat>,
}

fn fibres(x: &ThreeWay, pos: &[(usize, usize)]) -> Vec<Vec<Felt>> {
    pos.iter().map(|&(i, j)| x.tube_fibre(i, j)).collect()
}

pub fn step4_fixup(d_mats: &[Mat], t: usize) -> Result<Step4Result> {
    let pairs = binomial2(t);
    if t < 2 || d_mats.len() != t + pairs {
        return Err(Error::ShapeViolation(format!("expected {} normalised matrices, got {}", t + pairs, d_mats.len())));
    }
    let size = t * t + 1;
    if d_mats.iter().any(|m| m.shape() != (size, size)) {
        return Err(Error::ShapeViolation(format!("normalised matrices must be {size} x {size}")));
    }
    for i in 1..=pairs {
        if !is_normal_form(&d_mats[t + i - 1], t, i) {
            return Err(Error::ShapeViolation(format!("D_{} is not in normal form", t + i)));
        }
    }
    let field = d_mats[0].field();
    let mut x = ThreeWay::from_slices(field, size, d_mats.to_vec())?;
    let m = d_mats.len();

    let consecutive = consecutive_positions(t);
    let pivots = pivot_positions(t);
    let tilde = tilde_positions(t);
    let start: Vec<_> = consecutive.iter().chain(&pivots).copied().collect();
    invariant(independent(field, m, &fibres(&x, &start)), || "consecutive and pivot fibres are dependent".into())?;

    let mut injections = Vec::new();
    for i in 0..pairs {
        let positions: Vec<_> = consecutive.iter().chain(&tilde[..=i]).chain(&pivots[i + 1..]).copied().collect();
        if independent(field, m, &fibres(&x, &positions)) {
            continue;
        }
        let (j, k) = tilde[i];
        let (a, b) = pivots[i];
        x.apply_paired_rowcol(a, j, Felt::ONE)?;
        x.apply_paired_rowcol(b, k, Felt::ONE)?;
        injections.push(i);
        invariant(independent(field, m, &fibres(&x, &positions)), || {
            format!("fibre exchange in round {} lost rank after injection", i + 1)
        })?;
    }

    invariant(x.leading_block_complete(t + 1)?, || "leading block is not complete after fibre exchange".into())?;
    let transform = x.transform().clone();
    Ok(Step4Result { transform, injections, slices: x.into_slices() })
}
