use std::io::Write;
use std::path::PathBuf;

use altramsey::baer::{build_group, check_laws, corollary1_check, FreeGroupTarget, DEFAULT_GROUP_BUDGET};
use altramsey::hypergraph::check_prop_alpha;
use altramsey::oracle::{complete_subspaces, DEFAULT_BUDGET};
use altramsey::randgen::{bgh_bound_holds, bgh_experiment, gen_hypergraph};
use altramsey::{AltSpace, FieldCtx, Hypergraph, Subspace, Witness, WitnessKind};
use clap::Subcommand;

use crate::{report, write, CliError};

/// Exhaustive enumeration is refused past this many candidate edges.
const MAX_EXHAUSTIVE_EDGES: usize = 16;

#[derive(Debug, Clone, Subcommand)]
pub enum CheckCommand {
    /// Independence number against isotropic number of the Lovász map.
    PropAlpha {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        q: u64,
        /// Check this many random hypergraphs on exactly max-n vertices
        /// instead of all of them.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Group laws and subgroup orders for the Heisenberg map over GF(p).
    Baer {
        #[arg(long)]
        p: u64,
    },
    /// Exhaustive isotropic and complete numbers at the lower-bound sizes.
    BghExperiment {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the CSV here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn cmd_check(cmd: &CheckCommand, out: &mut dyn Write) -> i32 {
    report(match cmd {
        CheckCommand::PropAlpha { max_n, ell, q, random, seed } => prop_alpha(*max_n, *ell, *q, *random, *seed, out),
        CheckCommand::Baer { p } => baer(*p, out),
        CheckCommand::BghExperiment { s, t, p, trials, seed, out: dest } => {
            bgh(*s, *t, *p, *trials, *seed, dest.as_ref(), out)
        }
    })
}

fn all_hypergraphs(n: usize, ell: usize) -> Result<Vec<Hypergraph>, CliError> {
    let pool = Hypergraph::complete(n, ell).edges().to_vec();
    if pool.len() > MAX_EXHAUSTIVE_EDGES {
        return Err(CliError::Precondition(format!(
            "{} candidate edges on {n} vertices; use --random for sampling",
            pool.len()
        )));
    }
    (0u32..1 << pool.len())
        .map(|mask| {
            let edges = pool.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, e)| e.clone()).collect();
            Hypergraph::new(n, ell, edges).map_err(CliError::from)
        })
        .collect()
}

fn prop_alpha(
    max_n: usize,
    ell: usize,
    q: u64,
    random: Option<usize>,
    seed: u64,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if ell == 0 {
        return Err(CliError::Precondition("ell must be positive".into()));
    }
    let field = FieldCtx::new(q)?;
    let batches: Vec<(usize, Vec<Hypergraph>)> = match random {
        Some(k) => {
            let hs =
                (0..k).map(|i| gen_hypergraph(max_n, ell, seed.wrapping_add(i as u64))).collect::<Result<_, _>>()?;
            vec![(max_n, hs)]
        }
        None => (1..=max_n).map(|n| all_hypergraphs(n, ell).map(|hs| (n, hs))).collect::<Result<_, _>>()?,
    };
    let _ = writeln!(out, "{:>3} {:>12} {:>8}", "n", "hypergraphs", "agree");
    let (mut total, mut agree) = (0, 0);
    for (n, hs) in &batches {
        let mut ok = 0;
        for h in hs {
            let r = check_prop_alpha(h, field, DEFAULT_BUDGET)?;
            if r.equal {
                ok += 1;
            } else {
                let _ =
                    writeln!(out, "mismatch: alpha(H) = {}, alpha(phi) = {}\n{}", r.alpha_h, r.alpha_phi, h.to_text());
            }
        }
        let _ = writeln!(out, "{n:>3} {:>12} {ok:>8}", hs.len());
        total += hs.len();
        agree += ok;
    }
    let _ = writeln!(out, "prop-alpha ell={ell} q={q}: {agree}/{total} agree");
    if agree == total {
        Ok(())
    } else {
        Err(CliError::Verification(format!("{} hypergraphs disagree", total - agree)))
    }
}

fn line(out: &mut dyn Write, name: &str, ok: bool, detail: String) -> bool {
    let _ = writeln!(out, "{:<28} {:<4} {detail}", name, if ok { "ok" } else { "FAIL" });
    ok
}

fn baer(p: u64, out: &mut dyn Write) -> Result<(), CliError> {
    let f = FieldCtx::new(p)?;
    let phi = AltSpace::new(f, 2, vec![AltSpace::elementary(f, 2, 0, 1)])?;
    let g = build_group(&phi, DEFAULT_GROUP_BUDGET)?;
    let laws = check_laws(&g);
    let order = p as u128 * p as u128 * p as u128;

    let mut ok = true;
    ok &= line(out, "order", g.order() == order, format!("{} = {p}^3", g.order()));
    ok &=
        line(out, "group axioms", laws.associative && laws.identity_and_inverses, format!("{} elements", laws.checked));
    ok &= line(out, "class 2", laws.class_two, String::new());
    ok &= line(out, "exponent p", laws.exponent_p, String::new());
    ok &= line(out, "commutator map equals phi", laws.commutator_matches_phi, String::new());
    ok &= line(out, "derived subgroup", laws.derived_subgroup_ok, String::new());

    let target = FreeGroupTarget { p, t: 2 };
    let forms = target.count_normal_forms(DEFAULT_GROUP_BUDGET)?;
    ok &= line(out, "free group normal forms", forms == target.expected_order(), format!("{forms}"));

    let complete = complete_subspaces(&phi, 2, DEFAULT_BUDGET)?;
    let cw = Witness { kind: WitnessKind::Complete, basis: complete[0].clone() };
    let cr = corollary1_check(&g, &cw, 2, 2, DEFAULT_GROUP_BUDGET)?;
    ok &= line(out, "complete lift order", cr.ok, format!("{:?} of {:?}", cr.subgroup_order, cr.expected_order));

    let zero = build_group(&AltSpace::zero(f, 2), DEFAULT_GROUP_BUDGET)?;
    let iw = Witness { kind: WitnessKind::Isotropic, basis: Subspace::full(f, 2) };
    let ir = corollary1_check(&zero, &iw, 2, 2, DEFAULT_GROUP_BUDGET)?;
    ok &= line(out, "isotropic lifts commute", ir.ok && ir.lifts_commute, String::new());

    if ok {
        Ok(())
    } else {
        Err(CliError::Verification("Baer correspondence checks failed".into()))
    }
}

fn bgh(
    s: usize,
    t: usize,
    p: u64,
    trials: usize,
    seed: u64,
    dest: Option<&PathBuf>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let rep = bgh_experiment(s, t, p, trials, seed, DEFAULT_BUDGET)?;
    let bound = bgh_bound_holds(s, t)?;
    let no_complete = rep.no_complete_of_dim_t();
    let summary = format!(
        "n={} m={} trials={} isotropic_below_s={} bound_holds={bound} no_complete_dim_t={no_complete}",
        rep.n,
        rep.m,
        rep.rows.len(),
        rep.fraction_isotropic_below_s().map_or("n/a".to_string(), |x| format!("{x:.3}")),
    );
    match dest {
        Some(path) => {
            write(path, &rep.to_csv())?;
            let _ = writeln!(out, "{summary}");
        }
        None => {
            let _ = write!(out, "{}", rep.to_csv());
            eprintln!("{summary}");
        }
    }
    if bound && no_complete {
        Ok(())
    } else {
        Err(CliError::Verification(summary))
    }
}
