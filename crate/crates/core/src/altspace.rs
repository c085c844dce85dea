//! Alternating matrix spaces and the alternating bilinear maps they encode.
//!
//! A list of alternating `n x n` matrices `(A_1, ..., A_m)` is the bilinear
//! map `phi(u, v) = (u^T A_1 v, ..., u^T A_m v)`; its span is the matrix space.
//! Restriction to a subspace `W` with basis matrix `T` is congruence by `T`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::{Felt, FieldCtx};
use crate::matrix::{Echelon, Mat, Subspace};

#[derive(Clone, Debug)]
pub struct AltSpace {
    field: FieldCtx,
    n: usize,
    gens: Vec<Mat>,
    basis: OnceLock<Vec<usize>>,
}

impl PartialEq for AltSpace {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.n == other.n && self.gens == other.gens
    }
}

impl Eq for AltSpace {}

pub fn binomial2(d: usize) -> usize {
    d * d.saturating_sub(1) / 2
}

impl AltSpace {
    /// Validates every generator; the error names the first offender.
    pub fn new(field: FieldCtx, n: usize, gens: Vec<Mat>) -> Result<Self> {
        for (index, g) in gens.iter().enumerate() {
            if g.shape() != (n, n) {
                return Err(Error::ShapeMismatch(format!("generator {index} is {:?}, expected {n}x{n}", g.shape())));
            }
            if g.field() != field {
                return Err(Error::ShapeMismatch(format!("generator {index} is over a different field")));
            }
            g.check_alternating().map_err(|violation| Error::NotAlternating { index, violation })?;
        }
        Ok(AltSpace { field, n, gens, basis: OnceLock::new() })
    }

    pub fn from_bilinear_map(field: FieldCtx, n: usize, m: usize, frontal_slices: Vec<Mat>) -> Result<Self> {
        if frontal_slices.len() != m {
            return Err(Error::ShapeMismatch(format!("{} slices given, {m} declared", frontal_slices.len())));
        }
        AltSpace::new(field, n, frontal_slices)
    }

    pub fn zero(field: FieldCtx, n: usize) -> Self {
        AltSpace { field, n, gens: Vec::new(), basis: OnceLock::new() }
    }

    /// Elementary alternating matrix with `+1` at `(i, j)` and `-1` at `(j, i)`.
    pub fn elementary(field: FieldCtx, n: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        m.set(i, j, field.one());
        m.set(j, i, field.neg(field.one()));
        m
    }

    /// All `C(n, 2)` elementary matrices, i.e. the whole of `Λ(n)`.
    pub fn full_elementary(field: FieldCtx, n: usize) -> Self {
        let mut gens = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                gens.push(AltSpace::elementary(field, n, i, j));
            }
        }
        AltSpace { field, n, gens, basis: OnceLock::new() }
    }

    pub fn field(&self) -> FieldCtx {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of generators (the codomain dimension of the bilinear map).
    pub fn m(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> &[Mat] {
        &self.gens
    }

    fn flatten(g: &Mat) -> Vec<Felt> {
        let n = g.rows();
        let mut v = Vec::with_capacity(binomial2(n));
        for i in 0..n {
            v.extend_from_slice(&g.row(i)[i + 1..]);
        }
        v
    }

    /// Indices of an independent spanning subset of the generators, chosen
    /// greedily in input order.
    pub fn independent_gens(&self) -> &[usize] {
        self.basis.get_or_init(|| {
            let mut e = Echelon::new(self.field, binomial2(self.n));
            (0..self.gens.len()).filter(|&k| e.insert(&Self::flatten(&self.gens[k]))).collect()
        })
    }

    pub fn space_dim(&self) -> usize {
        self.independent_gens().len()
    }

    /// `phi(u, v)`.
    pub fn eval(&self, u: &[Felt], v: &[Felt]) -> Vec<Felt> {
        self.gens
            .iter()
            .map(|g| self.field.dot(u, &g.mul_vec(v).expect("vector length matches ambient dimension")))
            .collect()
    }

    /// Restriction via an arbitrary `n x d` matrix, i.e. congruence of every
    /// generator by `t`.
    pub fn restrict_by(&self, t: &Mat) -> Result<AltSpace> {
        if t.rows() != self.n {
            return Err(Error::ShapeMismatch(format!(
                "restriction matrix has {} rows, ambient is {}",
                t.rows(),
                self.n
            )));
        }
        let gens = self.gens.iter().map(|g| g.congruence(t)).collect::<Result<Vec<_>>>()?;
        Ok(AltSpace { field: self.field, n: t.cols(), gens, basis: OnceLock::new() })
    }

    pub fn restrict(&self, w: &Subspace) -> Result<AltSpace> {
        self.restrict_by(w.basis())
    }

    /// `dim <A v : A in space>`.
    pub fn degree(&self, v: &[Felt]) -> Result<usize> {
        if v.len() != self.n {
            return Err(Error::ShapeMismatch(format!("vector of length {} in ambient {}", v.len(), self.n)));
        }
        let mut e = Echelon::new(self.field, self.n);
        for g in &self.gens {
            e.insert(&g.mul_vec(v)?);
        }
        Ok(e.rank())
    }

    /// `{u : u^T A v = 0 for all generators A and all v in s}`.
    pub fn radical_of_set(&self, s: &Subspace) -> Result<Subspace> {
        if s.ambient_dim() != self.n {
            return Err(Error::ShapeMismatch(format!("subspace of F^{} in ambient {}", s.ambient_dim(), self.n)));
        }
        let mut rows = Vec::new();
        for v in s.basis_vectors() {
            for g in &self.gens {
                rows.push(g.mul_vec(&v)?);
            }
        }
        if rows.is_empty() {
            return Ok(Subspace::full(self.field, self.n));
        }
        Ok(Mat::from_row_vecs(self.field, self.n, &rows)?.kernel())
    }

    /// `rad(A) = rad_A(F^n)`.
    pub fn radical(&self) -> Subspace {
        self.radical_of_set(&Subspace::full(self.field, self.n)).expect("full space has matching dimension")
    }

    pub fn is_isotropic(&self, w: &Subspace) -> Result<bool> {
        Ok(self.restrict(w)?.space_dim() == 0)
    }

    pub fn is_complete(&self, w: &Subspace) -> Result<bool> {
        Ok(self.restrict(w)?.space_dim() == binomial2(w.dim()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    Isotropic,
    Complete,
}

impl WitnessKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessKind::Isotropic => "isotropic",
            WitnessKind::Complete => "complete",
        }
    }
}

/// A totally-isotropic or complete subspace of the original ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub kind: WitnessKind,
    pub basis: Subspace,
}

impl Witness {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Keeps the first `k` basis vectors. Sub-witnesses stay valid: subspaces
    /// of isotropic spaces are isotropic and subspaces of complete spaces are
    /// complete.
    pub fn truncate(&self, k: usize) -> Witness {
        let b = self.basis.basis().leading_columns(k);
        Witness { kind: self.kind, basis: Subspace::span(&b) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub ok: bool,
    pub kind: WitnessKind,
    pub dim: usize,
    /// `dim(A|_W)`.
    pub measured_dim: usize,
}

/// Independent check of a witness: only restriction and span dimension are
/// used.
pub fn verify_witness(a: &AltSpace, w: &Witness, s: usize, t: usize) -> WitnessReport {
    let dim = w.dim();
    let measured_dim =
        if w.basis.ambient_dim() == a.n() { a.restrict(&w.basis).map(|r| r.space_dim()).ok() } else { None };
    let ok = match (measured_dim, w.kind) {
        (Some(md), WitnessKind::Isotropic) => dim >= s && md == 0,
        (Some(md), WitnessKind::Complete) => dim >= t && md == binomial2(dim),
        (None, _) => false,
    };
    WitnessReport { ok, kind: w.kind, dim, measured_dim: measured_dim.unwrap_or(0) }
}
