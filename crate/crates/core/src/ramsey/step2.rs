//! Staircase construction.
//!
//! Builds `w_1, ..., w_{t'+1}` and generators `B_1, ..., B_{t'}` such that
//! `w_j^T B_j w_{j+1} != 0` and `w_k^T B_j w_l = 0` whenever `l > j + 1`.
//! Each new `w_{i+1}` is taken from `T_i = <B_j w_k : j < i, k <= i>^⊥`,
//! which meets `W_i = <w_1..w_i>` trivially.
//!
//! Round `i` can only get stuck if `T_i ⊆ rad(w_i)`. Since
//! `dim T_i >= n' - (i-1)i`, that forces `deg(w_i) <= (i-1)i`, and the stuck
//! round hands back `w_i` as a certified low-degree vector instead.

use crate::altspace::AltSpace;
use crate::error::{invariant, Error, Result};
use crate::field::{Felt, FieldCtx};
use crate::matrix::{Echelon, Mat, Subspace};

#[derive(Clone, Debug)]
pub struct StaircaseData {
    /// `n' x (t'+1)`, columns `w_1..w_{t'+1}`.
    pub q: Mat,
    /// `C_i = Q^T (B_i / alpha_i) Q`, each `(t'+1) x (t'+1)`.
    pub c_mats: Vec<Mat>,
    pub w_vectors: Vec<Vec<Felt>>,
    /// `alpha_i = w_i^T B_i w_{i+1}`.
    pub alphas: Vec<Felt>,
    /// Generator index used as `B_i`.
    pub gen_indices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowDegreeVector {
    pub w: Vec<Felt>,
    pub degree: usize,
    /// 1-based round in which the construction stopped.
    pub round: usize,
    /// `(round - 1) * round`.
    pub bound: usize,
}

#[derive(Clone, Debug)]
pub enum Step2Outcome {
    Staircase(StaircaseData),
    LowDegree(LowDegreeVector),
}

/// `C_i(i, i+1) = 1` (1-based) and `C_i` vanishes outside its leading
/// `(i+1) x (i+1)` block.
pub fn is_staircase(c_mats: &[Mat]) -> bool {
    let Some(first) = c_mats.first() else {
        return true;
    };
    let size = first.rows();
    c_mats.iter().enumerate().all(|(c, m)| {
        m.shape() == (size, size)
            && c + 1 < size
            && m.check_alternating().is_ok()
            && m.get(c, c + 1) == Felt::ONE
            && (0..size).all(|k| (c + 2..size).all(|l| m.get(k, l).is_zero() && m.get(l, k).is_zero()))
    })
}

fn first_standard(field: FieldCtx, n: usize) -> Vec<Felt> {
    let mut v = vec![Felt::ZERO; n];
    if n > 0 {
        v[0] = field.one();
    }
    v
}

/// Runs up to `t_prime` rounds on `b`. `d` must exceed `(t'-1) t'` so that a
/// stuck round always yields a vector of degree below `d`.
pub fn step2_build(b: &AltSpace, t_prime: usize, d: usize) -> Result<Step2Outcome> {
    let field = b.field();
    let n = b.n();
    if n == 0 {
        return Err(Error::PreconditionFailed("staircase construction needs a nonzero ambient space".into()));
    }
    if d <= t_prime.saturating_sub(1) * t_prime {
        return Err(Error::PreconditionFailed(format!(
            "degree threshold {d} must exceed (t'-1)t' = {}",
            t_prime.saturating_sub(1) * t_prime
        )));
    }
    let gens = b.gens();
    let mut ws: Vec<Vec<Felt>> = vec![first_standard(field, n)];
    let mut sel: Vec<usize> = Vec::new();
    let mut alphas: Vec<Felt> = Vec::new();
    // B_j w_k for j < i, k <= i
    let mut perp_vectors: Vec<Vec<Felt>> = Vec::new();
    let mut sel_span = Echelon::new(field, crate::altspace::binomial2(n));

    for round in 1..=t_prime {
        let t_i = if perp_vectors.is_empty() {
            Subspace::full(field, n)
        } else {
            Subspace::span_of(field, n, &perp_vectors)?.orthogonal_complement()
        };
        let bound = (round - 1) * round;
        invariant(t_i.dim() + bound >= n, || format!("dim T_{round} = {} below n' - {bound}", t_i.dim()))?;

        let w_i = ws[round - 1].clone();
        let images: Vec<Vec<Felt>> = gens.iter().map(|g| g.mul_vec(&w_i)).collect::<Result<_>>()?;
        // first basis vector u of T_i, then first generator, with w_i^T B u != 0
        let choice = t_i
            .basis_vectors()
            .into_iter()
            .find_map(|u| images.iter().position(|img| !field.dot(img, &u).is_zero()).map(|g| (u, g)));
        let Some((w_next, g)) = choice else {
            let degree = b.degree(&w_i)?;
            invariant(degree <= bound && degree < d, || {
                format!("stuck in round {round} with deg(w) = {degree}, bound {bound}, threshold {d}")
            })?;
            return Ok(Step2Outcome::LowDegree(LowDegreeVector { w: w_i, degree, round, bound }));
        };

        let alpha = field.dot(&w_i, &gens[g].mul_vec(&w_next)?);
        invariant(!alpha.is_zero(), || "pairing scalar vanished".into())?;
        let flat: Vec<Felt> = (0..n).flat_map(|r| gens[g].row(r)[r + 1..].to_vec()).collect();
        invariant(sel_span.insert(&flat), || format!("B_{round} lies in the span of earlier B_j"))?;

        ws.push(w_next);
        sel.push(g);
        alphas.push(alpha);

        // T_{i+1}: add B_i w_k for all k <= i+1, and B_j w_{i+1} for j < i
        for w in &ws {
            perp_vectors.push(gens[g].mul_vec(w)?);
        }
        let last = ws.last().expect("nonempty");
        for &j in &sel[..sel.len() - 1] {
            perp_vectors.push(gens[j].mul_vec(last)?);
        }
        let w_span = Mat::from_columns(field, n, &ws)?;
        let t_next = if perp_vectors.is_empty() {
            Subspace::full(field, n)
        } else {
            Subspace::span_of(field, n, &perp_vectors)?.orthogonal_complement()
        };
        let joint = t_next.basis().hstack(&w_span)?.rank();
        invariant(joint == t_next.dim() + ws.len(), || format!("T_{} meets W_{}", round + 1, round + 1))?;
    }

    let q = Mat::from_columns(field, n, &ws)?;
    invariant(q.rank() == t_prime + 1, || "Q does not have full column rank".into())?;
    let mut c_mats = Vec::with_capacity(t_prime);
    for (&g, &alpha) in sel.iter().zip(&alphas) {
        let scaled = gens[g].scale(field.inv(alpha)?);
        c_mats.push(scaled.congruence(&q)?);
    }
    invariant(is_staircase(&c_mats), || "C matrices are not in staircase form".into())?;
    Ok(Step2Outcome::Staircase(StaircaseData { q, c_mats, w_vectors: ws, alphas, gen_indices: sel }))
}
