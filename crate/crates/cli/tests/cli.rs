use std::path::{Path, PathBuf};
use std::process::Command;

use altramsey::randgen::{gen_uniform, GenSpec};
use altramsey::{AltSpace, FieldCtx};
use altramsey_cli::check::CheckCommand;
use altramsey_cli::format::parse_json;
use altramsey_cli::{
    cmd_check, cmd_gen, cmd_solve, cmd_verify, GenCommand, InstanceFile, SolveArgs, VerifyArgs, WitnessFile,
    EXIT_MALFORMED, EXIT_OK, EXIT_PRECONDITION, EXIT_VERIFY,
};
use proptest::prelude::*;
use tempfile::TempDir;

fn save(dir: &TempDir, name: &str, a: &AltSpace) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string(&InstanceFile::from_altspace(a)).unwrap()).unwrap();
    path
}

fn solve_args(instance: &Path, out: &Path, s: usize, t: usize) -> SolveArgs {
    SolveArgs { instance: instance.to_path_buf(), s, t, truncate_to_t: false, out: out.to_path_buf() }
}

fn verify_args(instance: &Path, witness: &Path, s: usize, t: usize) -> VerifyArgs {
    VerifyArgs { instance: instance.to_path_buf(), witness: witness.to_path_buf(), s, t }
}

fn sink() -> Vec<u8> {
    Vec::new()
}

fn read_witness(path: &Path) -> WitnessFile {
    parse_json(&std::fs::read_to_string(path).unwrap(), "witness").unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn instance_round_trip(p in prop::sample::select(vec![2u64, 3, 5, 7]), n in 0usize..9, m in 0usize..5, seed: u64) {
        let a = gen_uniform(&GenSpec::uniform(p, n, m, seed)).unwrap();
        let file = InstanceFile::from_altspace(&a);
        let text = serde_json::to_string(&file).unwrap();
        let back: InstanceFile = parse_json(&text, "instance").unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(back.to_altspace().unwrap(), a);
    }
}

#[test]
fn zero_map_gives_isotropic_witness() {
    let dir = TempDir::new().unwrap();
    let f = FieldCtx::new(3).unwrap();
    let inst = save(&dir, "zero.json", &AltSpace::zero(f, 32));
    let out = dir.path().join("w.json");
    assert_eq!(cmd_solve(&solve_args(&inst, &out, 2, 2), &mut sink()), EXIT_OK);
    let w = read_witness(&out);
    assert_eq!((w.kind.as_str(), w.dim, w.verified, w.measured_dim), ("isotropic", 2, true, 0));
    assert_eq!(cmd_verify(&verify_args(&inst, &out, 2, 2), &mut sink()), EXIT_OK);
}

#[test]
fn solve_then_verify_and_tamper() {
    let dir = TempDir::new().unwrap();
    let inst = save(&dir, "u.json", &gen_uniform(&GenSpec::uniform(3, 32, 5, 7)).unwrap());
    let out = dir.path().join("w.json");
    assert_eq!(cmd_solve(&solve_args(&inst, &out, 2, 2), &mut sink()), EXIT_OK);
    let mut log = sink();
    assert_eq!(cmd_verify(&verify_args(&inst, &out, 2, 2), &mut log), EXIT_OK);
    assert!(String::from_utf8(log).unwrap().contains("ok=true"));

    // flip entries until the witness breaks; every single flip must either
    // keep it valid or be rejected
    let w = read_witness(&out);
    let mut rejected = 0;
    for c in 0..w.dim {
        for r in 0..w.basis[c].len() {
            let mut bad = w.clone();
            bad.basis[c][r] = (bad.basis[c][r] + 1) % 3;
            let path = dir.path().join("bad.json");
            std::fs::write(&path, serde_json::to_string(&bad).unwrap()).unwrap();
            let code = cmd_verify(&verify_args(&inst, &path, 2, 2), &mut sink());
            assert!(code == EXIT_OK || code == EXIT_VERIFY);
            rejected += (code == EXIT_VERIFY) as usize;
        }
    }
    assert!(rejected > 0);
}

#[test]
fn short_isotropic_witness_fails() {
    let dir = TempDir::new().unwrap();
    let f = FieldCtx::new(2).unwrap();
    let inst = save(&dir, "zero.json", &AltSpace::zero(f, 32));
    let mut v = vec![0u64; 32];
    v[0] = 1;
    let w = WitnessFile { kind: "isotropic".into(), dim: 1, basis: vec![v], verified: true, measured_dim: 0 };
    let path = dir.path().join("w.json");
    std::fs::write(&path, serde_json::to_string(&w).unwrap()).unwrap();
    assert_eq!(cmd_verify(&verify_args(&inst, &path, 2, 2), &mut sink()), EXIT_VERIFY);
}

#[test]
fn small_ambient_is_a_precondition_failure() {
    let dir = TempDir::new().unwrap();
    let inst = save(&dir, "small.json", &AltSpace::zero(FieldCtx::new(3).unwrap(), 10));
    let out = dir.path().join("w.json");
    assert_eq!(cmd_solve(&solve_args(&inst, &out, 2, 2), &mut sink()), EXIT_PRECONDITION);
}

#[test]
fn malformed_inputs() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("w.json");
    for (name, text) in [
        ("syntax.json", "{\"p\": 3,"),
        ("range.json", "{\"p\":3,\"n\":32,\"m\":1,\"matrices\":[[[3,2,1]]]}"),
        ("count.json", "{\"p\":3,\"n\":32,\"m\":2,\"matrices\":[[]]}"),
        ("prime.json", "{\"p\":9,\"n\":32,\"m\":0,\"matrices\":[]}"),
    ] {
        let path = dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        assert_eq!(cmd_solve(&solve_args(&path, &out, 2, 2), &mut sink()), EXIT_MALFORMED, "{name}");
    }
    let missing = dir.path().join("missing.json");
    assert_eq!(cmd_solve(&solve_args(&missing, &out, 2, 2), &mut sink()), EXIT_MALFORMED);

    let inst = save(&dir, "zero.json", &AltSpace::zero(FieldCtx::new(3).unwrap(), 32));
    let w = dir.path().join("badw.json");
    std::fs::write(&w, "{\"kind\":\"clique\",\"dim\":0,\"basis\":[],\"verified\":true,\"measured_dim\":0}").unwrap();
    assert_eq!(cmd_verify(&verify_args(&inst, &w, 2, 2), &mut sink()), EXIT_MALFORMED);
}

#[test]
fn gen_commands() {
    let dir = TempDir::new().unwrap();
    let edges = dir.path().join("p3.txt");
    std::fs::write(&edges, "3 2\n1 2\n2 3\n").unwrap();
    let out = dir.path().join("p3.json");
    let cmd = GenCommand::Hypergraph { input: edges, p: 2, out: Some(out.clone()) };
    assert_eq!(cmd_gen(&cmd, &mut sink()), EXIT_OK);
    let file: InstanceFile = parse_json(&std::fs::read_to_string(&out).unwrap(), "p3").unwrap();
    assert_eq!(file.matrices, vec![vec![[1, 2, 1]], vec![[2, 3, 1]]]);

    let out = dir.path().join("bgh.json");
    let cmd = GenCommand::Bgh { s: 4, t: 4, p: 2, seed: 0, out: Some(out.clone()) };
    assert_eq!(cmd_gen(&cmd, &mut sink()), EXIT_OK);
    let file: InstanceFile = parse_json(&std::fs::read_to_string(&out).unwrap(), "bgh").unwrap();
    assert_eq!((file.n, file.m), (6, 3));

    let uniform = || {
        let mut buf = sink();
        let cmd = GenCommand::Uniform { p: 3, n: 32, m: 5, seed: 7, out: None };
        assert_eq!(cmd_gen(&cmd, &mut buf), EXIT_OK);
        buf
    };
    assert_eq!(uniform(), uniform());
}

#[test]
fn check_commands() {
    let pa = CheckCommand::PropAlpha { max_n: 4, ell: 2, q: 2, random: None, seed: 0 };
    let mut log = sink();
    assert_eq!(cmd_check(&pa, &mut log), EXIT_OK);
    assert!(String::from_utf8(log).unwrap().contains("75/75 agree"));
    assert_eq!(cmd_check(&CheckCommand::Baer { p: 3 }, &mut sink()), EXIT_OK);
    assert_eq!(cmd_check(&CheckCommand::Baer { p: 2 }, &mut sink()), EXIT_PRECONDITION);
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("bgh.csv");
    let bgh = CheckCommand::BghExperiment { s: 4, t: 4, p: 2, trials: 5, seed: 1, out: Some(csv.clone()) };
    assert_eq!(cmd_check(&bgh, &mut sink()), EXIT_OK);
    assert_eq!(std::fs::read_to_string(csv).unwrap().lines().count(), 6);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_altramsey");
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("u.json");
    let status = Command::new(bin)
        .args(["gen", "uniform", "--p", "5", "--n", "32", "--m", "3", "--seed", "2", "--out"])
        .arg(&inst)
        .status()
        .unwrap();
    assert!(status.success());
    let w = dir.path().join("w.json");
    let status = Command::new(bin)
        .args(["solve", "--s", "2", "--t", "2", "--instance"])
        .arg(&inst)
        .arg("--out")
        .arg(&w)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(EXIT_OK));
    let status = Command::new(bin)
        .args(["verify", "--s", "2", "--t", "2", "--instance"])
        .arg(&inst)
        .arg("--witness")
        .arg(&w)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(EXIT_OK));
    let status = Command::new(bin)
        .args(["solve", "--s", "3", "--t", "2", "--instance"])
        .arg(&inst)
        .arg("--out")
        .arg(&w)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(EXIT_PRECONDITION));
}
