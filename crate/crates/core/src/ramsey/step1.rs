//! Isotropic accumulation: each low-degree vector `v` shrinks the working
//! space `T` to `T ∩ rad(v)` and joins the isotropic set `S`, which stays
//! inside the radical of the restricted space. `R` is a complement of `S` in
//! `T`, and is where the next vector is looked for.
//!
//! All subspaces are kept as basis matrices in original coordinates.

use crate::altspace::AltSpace;
use crate::error::{invariant, Error, Result};
use crate::field::Felt;
use crate::matrix::{complement_basis, Echelon, Mat, Subspace};

#[derive(Clone, Debug)]
pub struct Step1State<'a> {
    original: &'a AltSpace,
    iso_vectors: Vec<Vec<Felt>>,
    t_embed: Mat,
    r_embed: Mat,
    round: usize,
}

impl<'a> Step1State<'a> {
    /// Starts on the span of the first `coords` standard basis vectors.
    pub fn initial(original: &'a AltSpace, coords: usize) -> Result<Self> {
        if coords > original.n() {
            return Err(Error::IndexOutOfRange { index: coords, dim: original.n() });
        }
        let idx: Vec<usize> = (0..coords).collect();
        let t = Mat::coordinate_columns(original.field(), original.n(), &idx);
        Ok(Step1State { original, iso_vectors: Vec::new(), t_embed: t.clone(), r_embed: t, round: 0 })
    }

    pub fn original(&self) -> &AltSpace {
        self.original
    }

    pub fn iso_vectors(&self) -> &[Vec<Felt>] {
        &self.iso_vectors
    }

    pub fn round(&self) -> usize {
        self.round
    }

    /// Basis of `T` (columns, original coordinates).
    pub fn t_embed(&self) -> &Mat {
        &self.t_embed
    }

    /// Basis of `R` (columns, original coordinates).
    pub fn r_embed(&self) -> &Mat {
        &self.r_embed
    }

    pub fn iso_basis(&self) -> Result<Mat> {
        Mat::from_columns(self.original.field(), self.original.n(), &self.iso_vectors)
    }

    pub fn iso_space(&self) -> Result<Subspace> {
        Subspace::from_basis(self.iso_basis()?)
    }

    /// The space restricted to `T`.
    pub fn current_space(&self) -> Result<AltSpace> {
        self.original.restrict_by(&self.t_embed)
    }

    /// The space restricted to `R`.
    pub fn complement_space(&self) -> Result<AltSpace> {
        self.original.restrict_by(&self.r_embed)
    }

    /// `T^T A_k v` for each generator, i.e. the images of `v` under the
    /// restricted space expressed in `T` coordinates.
    fn images_in_t(&self, v: &[Felt]) -> Result<Vec<Vec<Felt>>> {
        let tt = self.t_embed.transpose();
        self.original.gens().iter().map(|g| tt.mul_vec(&g.mul_vec(v)?)).collect()
    }

    /// Degree of `v ∈ T` in the space restricted to `T`.
    pub fn degree_in_current(&self, v: &[Felt]) -> Result<usize> {
        let mut e = Echelon::new(self.original.field(), self.t_embed.cols());
        for img in self.images_in_t(v)? {
            e.insert(&img);
        }
        Ok(e.rank())
    }
}

/// One round of isotropic accumulation with the nonzero vector `v ∈ R`
/// (original coordinates) of degree below `d`.
pub fn step1_advance<'a>(st: Step1State<'a>, v: &[Felt], d: usize) -> Result<Step1State<'a>> {
    let a = st.original;
    let field = a.field();
    if v.len() != a.n() {
        return Err(Error::ShapeMismatch(format!("vector of length {} in ambient {}", v.len(), a.n())));
    }
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::PreconditionFailed("isotropic vector must be nonzero".into()));
    }
    let r_space = Subspace::from_basis(st.r_embed.clone())?;
    if !r_space.contains_vector(v) {
        return Err(Error::PreconditionFailed("vector does not lie in the current complement R".into()));
    }
    let degree = st.degree_in_current(v)?;
    if degree >= d {
        return Err(Error::DegreeTooHigh { degree, bound: d });
    }

    // coordinates c with T c ∈ rad(v): kernel of the rows (T^T A_k v)^T
    let dim_t = st.t_embed.cols();
    let images = st.images_in_t(v)?;
    let k = if images.is_empty() {
        Mat::identity(field, dim_t)
    } else {
        Mat::from_row_vecs(field, dim_t, &images)?.kernel().into_basis()
    };
    let t_new = st.t_embed.mul(&k)?;
    invariant(t_new.cols() == dim_t - degree, || {
        format!("rad(v) has dimension {} in T of dimension {dim_t} with deg(v) = {degree}", t_new.cols())
    })?;

    let mut iso = st.iso_vectors.clone();
    iso.push(v.to_vec());
    let s_mat = Mat::from_columns(field, a.n(), &iso)?;
    invariant(s_mat.rank() == iso.len(), || "isotropic vectors became dependent".into())?;
    let s_space = Subspace::from_basis(s_mat)?;
    let t_space = Subspace::from_basis(t_new.clone())?;
    invariant(t_space.contains(&s_space), || "S is not contained in T".into())?;

    // S must lie in the radical of A|_T: (A s)^T T = 0 for every s and A
    let tt = t_new.transpose();
    for s in &iso {
        for g in a.gens() {
            let row = tt.mul_vec(&g.mul_vec(s)?)?;
            invariant(row.iter().all(|x| x.is_zero()), || "S left the radical of the restricted space".into())?;
        }
    }

    let r_new = complement_basis(&s_space, &t_space)?;
    invariant(r_new.dim() + iso.len() == t_new.cols(), || "complement has the wrong dimension".into())?;

    Ok(Step1State { original: a, iso_vectors: iso, t_embed: t_new, r_embed: r_new.into_basis(), round: st.round + 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    fn ev(n: usize, i: usize) -> Vec<Felt> {
        let mut v = vec![Felt::ZERO; n];
        v[i] = Felt::ONE;
        v
    }

    #[test]
    fn advance_on_single_edge() {
        let f = FieldCtx::new(3).unwrap();
        let a = AltSpace::new(f, 3, vec![AltSpace::elementary(f, 3, 0, 1)]).unwrap();
        let st = Step1State::initial(&a, 3).unwrap();
        assert!(matches!(step1_advance(st.clone(), &ev(3, 0), 1), Err(Error::DegreeTooHigh { degree: 1, bound: 1 })));
        let st = step1_advance(st, &ev(3, 0), 2).unwrap();
        let t = Subspace::from_basis(st.t_embed().clone()).unwrap();
        let r = Subspace::from_basis(st.r_embed().clone()).unwrap();
        assert!(t.same_space(&Subspace::coordinate(f, 3, &[0, 2]).unwrap()));
        assert!(st.iso_space().unwrap().same_space(&Subspace::coordinate(f, 3, &[0]).unwrap()));
        assert!(r.same_space(&Subspace::coordinate(f, 3, &[2]).unwrap()));
        assert_eq!(st.round(), 1);
    }

    #[test]
    fn radical_vector_keeps_t() {
        let f = FieldCtx::new(5).unwrap();
        let a = AltSpace::new(f, 4, vec![AltSpace::elementary(f, 4, 0, 1)]).unwrap();
        let st = Step1State::initial(&a, 4).unwrap();
        let st = step1_advance(st, &ev(4, 3), 1).unwrap();
        assert_eq!(st.t_embed().cols(), 4);
        assert_eq!(st.r_embed().cols(), 3);
        let st = step1_advance(st, &ev(4, 2), 1).unwrap();
        assert_eq!(st.t_embed().cols(), 4);
        assert_eq!(st.r_embed().cols(), 2);
        assert!(a.is_isotropic(&st.iso_space().unwrap()).unwrap());
    }

    #[test]
    fn rejects_vectors_outside_r_and_zero() {
        let f = FieldCtx::new(3).unwrap();
        let a = AltSpace::zero(f, 3);
        let st = Step1State::initial(&a, 3).unwrap();
        let st = step1_advance(st, &ev(3, 0), 1).unwrap();
        assert!(matches!(step1_advance(st.clone(), &ev(3, 0), 1), Err(Error::PreconditionFailed(_))));
        assert!(step1_advance(st, &[Felt::ZERO; 3], 1).is_err());
    }

    #[test]
    fn final_vector_completes_isotropic_space() {
        let f = FieldCtx::new(2).unwrap();
        // star K_{1,3}: centre 0
        let gens = (1..4).map(|j| AltSpace::elementary(f, 4, 0, j)).collect();
        let a = AltSpace::new(f, 4, gens).unwrap();
        let st = Step1State::initial(&a, 4).unwrap();
        let st = step1_advance(st, &ev(4, 1), 2).unwrap();
        let v = st.r_embed().column(0);
        let mut iso = st.iso_vectors().to_vec();
        iso.push(v);
        let w = Subspace::span_of(f, 4, &iso).unwrap();
        assert_eq!(w.dim(), 2);
        assert!(a.is_isotropic(&w).unwrap());
    }
}
