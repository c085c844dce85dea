//! Seeded instance generation.
//!
//! Every matrix draws from its own ChaCha stream keyed by `(seed, index)`, so
//! an instance does not depend on how many matrices were generated before it
//! or on which thread did the work.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::altspace::{binomial2, AltSpace};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::hypergraph::{ell_subsets, Hypergraph};
use crate::matrix::Mat;
use crate::oracle::{complete_number_exact, isotropic_number_exact};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenMode {
    Uniform,
    /// Sizes are derived from `(s, t)`; see [`bgh_params`].
    BghLower {
        s: usize,
        t: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub p: u64,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub mode: GenMode,
}

impl GenSpec {
    pub fn uniform(p: u64, n: usize, m: usize, seed: u64) -> Self {
        GenSpec { p, n, m, seed, mode: GenMode::Uniform }
    }
}

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A uniform alternating matrix: the strict upper triangle is i.i.d. uniform
/// in row-major order.
pub fn uniform_alternating(field: FieldCtx, n: usize, rng: &mut impl Rng) -> Mat {
    let mut m = Mat::zeros(field, n, n);
    for i in 0..n {
        for j in i + 1..n {
            let x = field.elem(rng.random_range(0..field.order()));
            m.set(i, j, x);
            m.set(j, i, field.neg(x));
        }
    }
    m
}

/// Sizes come from `spec.n`, `spec.m` for [`GenMode::Uniform`] and from
/// [`bgh_params`] otherwise.
pub fn gen_uniform(spec: &GenSpec) -> Result<AltSpace> {
    let field = FieldCtx::new(spec.p)?;
    let (n, m) = match spec.mode {
        GenMode::Uniform => (spec.n, spec.m),
        GenMode::BghLower { s, t } => bgh_params(s, t)?,
    };
    let gens = (0..m).map(|k| uniform_alternating(field, n, &mut stream(spec.seed, k as u64))).collect();
    AltSpace::new(field, n, gens)
}

/// `(n, m)` with `m = C(t-1, 2)` and `n = floor((m + 2)(s - 2) / 2) + 1`.
pub fn bgh_params(s: usize, t: usize) -> Result<(usize, usize)> {
    if s < 2 || t < 2 {
        return Err(Error::PreconditionFailed(format!("need s, t >= 2, got s = {s}, t = {t}")));
    }
    let m = binomial2(t - 1);
    Ok(((m + 2) * (s - 2) / 2 + 1, m))
}

/// `floor((m + 2n) / (m + 2)) <= s - 1` at the derived sizes.
pub fn bgh_bound_holds(s: usize, t: usize) -> Result<bool> {
    let (n, m) = bgh_params(s, t)?;
    Ok((m + 2 * n) / (m + 2) < s)
}

pub fn gen_bgh_lower(s: usize, t: usize, p: u64, seed: u64) -> Result<(AltSpace, (usize, usize))> {
    let params = bgh_params(s, t)?;
    let a = gen_uniform(&GenSpec { p, n: params.0, m: params.1, seed, mode: GenMode::BghLower { s, t } })?;
    Ok((a, params))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialRow {
    pub trial: usize,
    pub seed: u64,
    pub alpha_isotropic: usize,
    pub alpha_complete: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BghReport {
    pub s: usize,
    pub t: usize,
    pub p: u64,
    pub n: usize,
    pub m: usize,
    pub rows: Vec<TrialRow>,
}

impl BghReport {
    /// Share of trials with isotropic number at most `s - 1`; `None` with no
    /// trials.
    pub fn fraction_isotropic_below_s(&self) -> Option<f64> {
        if self.rows.is_empty() {
            return None;
        }
        let hits = self.rows.iter().filter(|r| r.alpha_isotropic < self.s).count();
        Some(hits as f64 / self.rows.len() as f64)
    }

    pub fn no_complete_of_dim_t(&self) -> bool {
        self.rows.iter().all(|r| r.alpha_complete < self.t)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("trial,alpha_isotropic,alpha_complete\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", r.trial, r.alpha_isotropic, r.alpha_complete));
        }
        out
    }
}

/// Each `ell`-subset of `[n]` becomes an edge with probability 1/2.
pub fn gen_hypergraph(n: usize, ell: usize, seed: u64) -> Result<Hypergraph> {
    let mut rng = stream(seed, 0);
    let edges = ell_subsets(n, ell).into_iter().filter(|_| rng.random_bool(0.5)).collect();
    Hypergraph::new(n, ell, edges)
}

/// Seed of trial `i`: the first word of stream `i` under the master seed.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    stream(seed, trial as u64).next_u64()
}

/// Exhaustive isotropic and complete numbers per trial. Trials are spread
/// over the available threads; results do not depend on the split.
pub fn bgh_experiment(s: usize, t: usize, p: u64, trials: usize, seed: u64, budget: u128) -> Result<BghReport> {
    let (n, m) = bgh_params(s, t)?;
    FieldCtx::new(p)?;
    let run = |trial: usize| -> Result<TrialRow> {
        let ts = trial_seed(seed, trial);
        let (a, _) = gen_bgh_lower(s, t, p, ts)?;
        Ok(TrialRow {
            trial,
            seed: ts,
            alpha_isotropic: isotropic_number_exact(&a, budget)?,
            alpha_complete: complete_number_exact(&a, budget)?,
        })
    };
    let workers = std::thread::available_parallelism().map_or(1, |x| x.get()).min(trials.max(1));
    let mut rows: Vec<TrialRow> = std::thread::scope(|sc| {
        let handles: Vec<_> = (0..workers)
            .map(|w| sc.spawn(move || (w..trials).step_by(workers).map(run).collect::<Result<Vec<_>>>()))
            .collect();
        handles.into_iter().map(|h| h.join().expect("trial worker panicked")).collect::<Result<Vec<_>>>()
    })?
    .into_iter()
    .flatten()
    .collect();
    rows.sort_by_key(|r| r.trial);
    Ok(BghReport { s, t, p, n, m, rows })
}
