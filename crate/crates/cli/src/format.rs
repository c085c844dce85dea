//! JSON instance and witness files.
//!
//! Instances store each slice as sparse `[i, j, val]` triples with `1 <= i < j
//! <= n`; the lower triangle is implied.

use std::collections::HashSet;

use altramsey::{AltSpace, Felt, FieldCtx, Mat, Subspace, Witness, WitnessKind};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub p: u64,
    pub n: usize,
    pub m: usize,
    pub matrices: Vec<Vec<[u64; 3]>>,
}

impl InstanceFile {
    pub fn from_altspace(a: &AltSpace) -> Self {
        let n = a.n();
        let matrices = a
            .gens()
            .iter()
            .map(|g| {
                let mut entries = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        let x = g.get(i, j);
                        if !x.is_zero() {
                            entries.push([i as u64 + 1, j as u64 + 1, x.value() as u64]);
                        }
                    }
                }
                entries
            })
            .collect();
        InstanceFile { p: a.field().order(), n, m: a.m(), matrices }
    }

    pub fn to_altspace(&self) -> Result<AltSpace, CliError> {
        let field = FieldCtx::new(self.p)
            .map_err(|_| CliError::Malformed(format!("p: {} is not a prime below 2^31", self.p)))?;
        if self.matrices.len() != self.m {
            return Err(CliError::Malformed(format!("matrices: {} slices given, m = {}", self.matrices.len(), self.m)));
        }
        let n = self.n;
        let mut gens = Vec::with_capacity(self.m);
        for (k, entries) in self.matrices.iter().enumerate() {
            let mut g = Mat::zeros(field, n, n);
            let mut seen = HashSet::new();
            for (e, &[i, j, val]) in entries.iter().enumerate() {
                let at = || format!("matrices[{k}][{e}]");
                if !(1 <= i && i < j && j <= n as u64) {
                    return Err(CliError::Malformed(format!("{}: need 1 <= i < j <= {n}, got i = {i}, j = {j}", at())));
                }
                if val >= self.p {
                    return Err(CliError::Malformed(format!("{}: value {val} not below p = {}", at(), self.p)));
                }
                if !seen.insert((i, j)) {
                    return Err(CliError::Malformed(format!("{}: duplicate entry ({i}, {j})", at())));
                }
                let x = field.elem(val);
                g.set(i as usize - 1, j as usize - 1, x);
                g.set(j as usize - 1, i as usize - 1, field.neg(x));
            }
            gens.push(g);
        }
        AltSpace::new(field, n, gens).map_err(|e| CliError::Malformed(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub kind: String,
    pub dim: usize,
    /// Column vectors of length `n`.
    pub basis: Vec<Vec<u64>>,
    pub verified: bool,
    pub measured_dim: usize,
}

impl WitnessFile {
    pub fn new(w: &Witness, verified: bool, measured_dim: usize) -> Self {
        let basis = w.basis.basis_vectors().iter().map(|v| v.iter().map(|x| x.value() as u64).collect()).collect();
        WitnessFile { kind: w.kind.as_str().to_string(), dim: w.dim(), basis, verified, measured_dim }
    }

    pub fn kind(&self) -> Result<WitnessKind, CliError> {
        match self.kind.as_str() {
            "isotropic" => Ok(WitnessKind::Isotropic),
            "complete" => Ok(WitnessKind::Complete),
            other => Err(CliError::Malformed(format!("kind: expected \"isotropic\" or \"complete\", got {other:?}"))),
        }
    }

    /// Malformed shapes or values are input errors; a rank-deficient basis is
    /// a verification failure.
    pub fn to_witness(&self, field: FieldCtx, n: usize) -> Result<Witness, CliError> {
        let kind = self.kind()?;
        if self.dim != self.basis.len() {
            return Err(CliError::Malformed(format!("dim: {} but {} basis vectors", self.dim, self.basis.len())));
        }
        let mut cols: Vec<Vec<Felt>> = Vec::with_capacity(self.basis.len());
        for (c, v) in self.basis.iter().enumerate() {
            if v.len() != n {
                return Err(CliError::Malformed(format!("basis[{c}]: length {}, instance has n = {n}", v.len())));
            }
            if let Some(x) = v.iter().find(|&&x| x >= field.order()) {
                return Err(CliError::Malformed(format!("basis[{c}]: value {x} not below p = {}", field.order())));
            }
            cols.push(v.iter().map(|&x| field.elem(x)).collect());
        }
        let m = Mat::from_columns(field, n, &cols).map_err(|e| CliError::Malformed(e.to_string()))?;
        let basis = Subspace::from_basis(m).map_err(|e| CliError::Verification(format!("basis: {e}")))?;
        Ok(Witness { kind, basis })
    }
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text)
        .map_err(|e| CliError::Malformed(format!("{what}: line {}, column {}: {e}", e.line(), e.column())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_instance_text() {
        let f = FieldCtx::new(2).unwrap();
        let a = AltSpace::new(f, 3, vec![AltSpace::elementary(f, 3, 0, 1), AltSpace::elementary(f, 3, 1, 2)]).unwrap();
        let file = InstanceFile::from_altspace(&a);
        assert_eq!(file.matrices, vec![vec![[1, 2, 1]], vec![[2, 3, 1]]]);
        assert_eq!(file.to_altspace().unwrap(), a);
    }

    #[test]
    fn rejects_bad_entries() {
        let base = InstanceFile { p: 3, n: 3, m: 1, matrices: vec![vec![[1, 2, 1]]] };
        assert!(base.to_altspace().is_ok());
        for bad in [
            InstanceFile { matrices: vec![vec![[2, 1, 1]]], ..base.clone() },
            InstanceFile { matrices: vec![vec![[1, 4, 1]]], ..base.clone() },
            InstanceFile { matrices: vec![vec![[1, 2, 3]]], ..base.clone() },
            InstanceFile { matrices: vec![vec![[1, 2, 1], [1, 2, 2]]], ..base.clone() },
            InstanceFile { m: 2, ..base.clone() },
            InstanceFile { p: 4, ..base.clone() },
        ] {
            assert!(matches!(bad.to_altspace(), Err(CliError::Malformed(_))), "{bad:?}");
        }
    }

    #[test]
    fn json_errors_carry_position() {
        let err = parse_json::<InstanceFile>("{\n \"p\": 3,\n \"n\": \"x\" }", "instance").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        assert!(parse_json::<InstanceFile>("{\"p\":3,\"n\":1,\"m\":0,\"matrices\":[],\"q\":1}", "instance").is_err());
    }
}
