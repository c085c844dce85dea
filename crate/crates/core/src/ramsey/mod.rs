//! The constructive Ramsey solver for alternating matrix spaces.
//!
//! Given `n >= s t^4`, either `s` isotropic vectors are accumulated (step 1)
//! or a staircase is built, normalised and exchanged into a complete space of
//! dimension `t + 1` (steps 2 to 4). Step 1 is driven lazily: a blocked
//! staircase round always hands back a vector of degree below `t^4`, which is
//! exactly what step 1 consumes.

pub mod step1;
pub mod step2;
pub mod step3;
pub mod step4;

pub use step1::{step1_advance, Step1State};
pub use step2::{is_staircase, step2_build, LowDegreeVector, StaircaseData, Step2Outcome};
pub use step3::{is_normal_form, step3_normalize, Step3Result};
pub use step4::{step4_fixup, tilde_positions, Step4Result};

use crate::altspace::{verify_witness, AltSpace, Witness, WitnessKind};
use crate::error::{invariant, Error, Result};
use crate::matrix::{Mat, Subspace};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveOptions {
    /// Return a complete witness of dimension exactly `t` instead of `t + 1`.
    pub truncate_to_t: bool,
}

/// One blocked staircase run that fed a vector back into step 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restart {
    pub step2_round: usize,
    pub degree: usize,
    pub bound: usize,
}

#[derive(Clone, Debug, Default)]
pub struct SolveTrace {
    pub step1_rounds: usize,
    pub step2_restarts: usize,
    pub step4_injections: usize,
    pub restarts: Vec<Restart>,
    /// Degree threshold `t^4`.
    pub threshold: usize,
    /// Number of leading coordinates the solver worked in.
    pub used_dim: usize,
    pub staircase: Option<StaircaseData>,
    pub normalized: Option<Vec<Mat>>,
    pub fixed: Option<Vec<Mat>>,
    /// Basis changes whose product maps witness coordinates to the original
    /// space.
    pub transform_trail: Vec<Mat>,
}

pub fn solve(a: &AltSpace, s: usize, t: usize) -> Result<(Witness, SolveTrace)> {
    solve_with(a, s, t, &SolveOptions::default())
}

pub fn solve_with(a: &AltSpace, s: usize, t: usize, opts: &SolveOptions) -> Result<(Witness, SolveTrace)> {
    if s < 2 || t < 2 {
        return Err(Error::PreconditionFailed(format!("need s, t >= 2, got s = {s}, t = {t}")));
    }
    let d = t.checked_pow(4).ok_or_else(|| Error::TooLarge(format!("t = {t}")))?;
    let n_used = s.checked_mul(d).ok_or_else(|| Error::TooLarge(format!("s t^4 for s = {s}, t = {t}")))?;
    if a.n() < n_used {
        return Err(Error::PreconditionFailed(format!("need n >= s t^4 = {n_used}, got n = {}", a.n())));
    }
    let t_prime = t * t;
    let mut trace = SolveTrace { threshold: d, used_dim: n_used, ..SolveTrace::default() };
    let mut st = Step1State::initial(a, n_used)?;

    loop {
        if st.iso_vectors().len() + 1 == s {
            invariant(st.r_embed().cols() > 0, || "complement R is empty in the final isotropic round".into())?;
            let mut iso = st.iso_vectors().to_vec();
            iso.push(st.r_embed().column(0));
            trace.transform_trail = vec![Mat::from_columns(a.field(), a.n(), &iso)?];
            let w = extract_witness(&trace, WitnessKind::Isotropic, s)?;
            return finish(a, w, s, t, trace);
        }

        let b = a.restrict_by(st.r_embed())?;
        match step2_build(&b, t_prime, d)? {
            Step2Outcome::LowDegree(lv) => {
                invariant(lv.degree <= lv.bound && lv.bound < d, || {
                    format!("restart vector has degree {} against bound {} and threshold {d}", lv.degree, lv.bound)
                })?;
                let v = st.r_embed().mul_vec(&lv.w)?;
                trace.restarts.push(Restart { step2_round: lv.round, degree: lv.degree, bound: lv.bound });
                trace.step2_restarts += 1;
                st = step1_advance(st, &v, d)?;
                trace.step1_rounds = st.round();
            }
            Step2Outcome::Staircase(sd) => {
                let n3 = step3_normalize(&sd.c_mats, t)?;
                let n4 = step4_fixup(&n3.d_mats, t)?;
                trace.step4_injections = n4.injections.len();
                trace.transform_trail = vec![st.r_embed().clone(), sd.q.clone(), n3.transform, n4.transform];
                trace.staircase = Some(sd);
                trace.normalized = Some(n3.d_mats);
                trace.fixed = Some(n4.slices);
                let dim = if opts.truncate_to_t { t } else { t + 1 };
                let w = extract_witness(&trace, WitnessKind::Complete, dim)?;
                return finish(a, w, s, t, trace);
            }
        }
    }
}

fn finish(a: &AltSpace, w: Witness, s: usize, t: usize, trace: SolveTrace) -> Result<(Witness, SolveTrace)> {
    let report = verify_witness(a, &w, s, t);
    invariant(report.ok, || {
        format!(
            "{} witness of dim {} failed verification (measured {})",
            w.kind.as_str(),
            report.dim,
            report.measured_dim
        )
    })?;
    Ok((w, trace))
}

/// Composes the trail and keeps the leading `dim` columns.
pub fn extract_witness(trace: &SolveTrace, kind: WitnessKind, dim: usize) -> Result<Witness> {
    let (first, rest) = trace
        .transform_trail
        .split_first()
        .ok_or_else(|| Error::InternalInvariantViolation("empty transform trail".into()))?;
    let mut m = first.clone();
    for t in rest {
        m = m.mul(t)?;
    }
    if dim > m.cols() {
        return Err(Error::RankLoss { rank: m.cols(), expected: dim });
    }
    let basis = m.leading_columns(dim);
    let rank = basis.rank();
    if rank != dim {
        return Err(Error::RankLoss { rank, expected: dim });
    }
    Ok(Witness { kind, basis: Subspace::span(&basis) })
}
