//! 3-way arrays `X(i, j, k)`: frontal slices `X(., ., k)` and tube fibres
//! `X(i, j, .)`.
//!
//! The array is the one mutable object in the crate. Simultaneous congruence
//! of all slices by elementary transvections is applied in place and the
//! product of those transvections is kept, so the current slices always equal
//! `T^T S_k T` for the slices `S_k` the array was built from.

use crate::altspace::AltSpace;
use crate::error::{Error, Result};
use crate::field::{Felt, FieldCtx};
use crate::matrix::{independent, Mat};

#[derive(Clone, Debug)]
pub struct ThreeWay {
    field: FieldCtx,
    n: usize,
    slices: Vec<Mat>,
    transform: Mat,
}

impl ThreeWay {
    /// Square slices only; the action used here is on the first two indices.
    pub fn from_slices(field: FieldCtx, n: usize, slices: Vec<Mat>) -> Result<Self> {
        if let Some(s) = slices.iter().find(|s| s.shape() != (n, n)) {
            return Err(Error::ShapeMismatch(format!("slice {:?} in a {n}x{n} array", s.shape())));
        }
        Ok(ThreeWay { field, n, slices, transform: Mat::identity(field, n) })
    }

    pub fn from_altspace(a: &AltSpace) -> Self {
        ThreeWay { field: a.field(), n: a.n(), slices: a.gens().to_vec(), transform: Mat::identity(a.field(), a.n()) }
    }

    pub fn field(&self) -> FieldCtx {
        self.field
    }

    /// `(n1, n2, n3)`.
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.n, self.n, self.slices.len())
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Felt {
        self.slices[k].get(i, j)
    }

    pub fn frontal_slice(&self, k: usize) -> &Mat {
        &self.slices[k]
    }

    pub fn slices(&self) -> &[Mat] {
        &self.slices
    }

    pub fn into_slices(self) -> Vec<Mat> {
        self.slices
    }

    pub fn tube_fibre(&self, i: usize, j: usize) -> Vec<Felt> {
        self.slices.iter().map(|s| s.get(i, j)).collect()
    }

    /// Accumulated basis change since construction.
    pub fn transform(&self) -> &Mat {
        &self.transform
    }

    /// Replaces every slice `A` by `T^T A T` with `T = I + scalar * E_{src,dst}`:
    /// row and column `dst` each receive `scalar` times row and column `src`.
    pub fn apply_paired_rowcol(&mut self, src: usize, dst: usize, scalar: Felt) -> Result<()> {
        for idx in [src, dst] {
            if idx >= self.n {
                return Err(Error::IndexOutOfRange { index: idx, dim: self.n });
            }
        }
        if src == dst {
            return Err(Error::PreconditionFailed("paired row/column operation needs src != dst".into()));
        }
        if scalar.is_zero() {
            return Ok(());
        }
        for s in &mut self.slices {
            s.paired_rowcol(src, dst, scalar);
        }
        self.transform.add_column_multiple(src, dst, scalar);
        Ok(())
    }

    /// Whether the fibres at the given positions are linearly independent.
    pub fn fibres_independent(&self, positions: &[(usize, usize)]) -> bool {
        let fibres: Vec<Vec<Felt>> = positions.iter().map(|&(i, j)| self.tube_fibre(i, j)).collect();
        independent(self.field, self.slices.len(), &fibres)
    }

    /// The fibres `f_{i,j}`, `0 <= i < j < t`, are independent exactly when
    /// the span of the first `t` coordinate vectors is a complete space for
    /// the span of the slices.
    pub fn leading_block_complete(&self, t: usize) -> Result<bool> {
        if t > self.n {
            return Err(Error::IndexOutOfRange { index: t, dim: self.n });
        }
        let mut pos = Vec::new();
        for i in 0..t {
            for j in i + 1..t {
                pos.push((i, j));
            }
        }
        Ok(self.fibres_independent(&pos))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Subspace;
    use proptest::prelude::*;

    fn k(p: u64) -> FieldCtx {
        FieldCtx::new(p).unwrap()
    }

    #[test]
    fn fibres_of_single_elementary_slice() {
        let f = k(3);
        let a = AltSpace::new(f, 3, vec![AltSpace::elementary(f, 3, 0, 1)]).unwrap();
        let x = ThreeWay::from_altspace(&a);
        assert_eq!(x.dims(), (3, 3, 1));
        assert_eq!(x.tube_fibre(0, 1), vec![Felt(1)]);
        assert_eq!(x.tube_fibre(2, 0), vec![Felt(0)]);
        assert_eq!(x.get(1, 0, 0), f.neg(f.one()));
    }

    #[test]
    fn leading_block_examples() {
        let f = k(5);
        let full = ThreeWay::from_altspace(&AltSpace::full_elementary(f, 5));
        for t in 0..=5 {
            assert!(full.leading_block_complete(t).unwrap());
        }
        let zero = ThreeWay::from_slices(f, 3, vec![Mat::zeros(f, 3, 3)]).unwrap();
        assert!(!zero.leading_block_complete(2).unwrap());
        assert!(zero.leading_block_complete(6).is_err());
    }

    #[test]
    fn paired_rowcol_examples() {
        let f = k(3);
        let a = AltSpace::new(f, 3, vec![AltSpace::elementary(f, 3, 0, 1)]).unwrap();
        let mut x = ThreeWay::from_altspace(&a);
        x.apply_paired_rowcol(2, 0, Felt::ZERO).unwrap();
        assert_eq!(x.frontal_slice(0), &a.gens()[0]);
        x.apply_paired_rowcol(2, 0, Felt::ONE).unwrap();
        assert_eq!(x.frontal_slice(0), &a.gens()[0]);
        assert!(matches!(x.apply_paired_rowcol(3, 0, Felt::ONE), Err(Error::IndexOutOfRange { .. })));
        assert!(x.apply_paired_rowcol(1, 1, Felt::ONE).is_err());
    }

    fn arb_space() -> impl Strategy<Value = AltSpace> {
        (0usize..2, 2usize..7, 1usize..6).prop_flat_map(|(pi, n, m)| {
            let p = [2u64, 3][pi];
            proptest::collection::vec(0..p, m * n * n).prop_map(move |v| {
                let f = k(p);
                let gens = (0..m)
                    .map(|g| {
                        Mat::from_fn(f, n, n, |i, j| match i.cmp(&j) {
                            std::cmp::Ordering::Less => Felt(v[(g * n + i) * n + j] as u32),
                            std::cmp::Ordering::Greater => f.neg(Felt(v[(g * n + j) * n + i] as u32)),
                            std::cmp::Ordering::Equal => Felt::ZERO,
                        })
                    })
                    .collect();
                AltSpace::new(f, n, gens).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn ops_are_congruences(a in arb_space(), ops in proptest::collection::vec((0usize..7, 0usize..7, 0u64..3), 0..8)) {
            let f = a.field();
            let n = a.n();
            let mut x = ThreeWay::from_altspace(&a);
            let mut applied = Vec::new();
            for (src, dst, s) in ops {
                let (src, dst) = (src % n, dst % n);
                if src == dst { continue; }
                x.apply_paired_rowcol(src, dst, f.elem(s)).unwrap();
                applied.push((src, dst, f.elem(s)));
            }
            for (g, s) in a.gens().iter().zip(x.slices()) {
                prop_assert!(s.check_alternating().is_ok());
                prop_assert_eq!(&g.congruence(x.transform()).unwrap(), s);
            }
            let flat = AltSpace::new(f, n, x.slices().to_vec()).unwrap();
            prop_assert_eq!(flat.space_dim(), a.space_dim());
            // undo in reverse order
            for &(src, dst, s) in applied.iter().rev() {
                x.apply_paired_rowcol(src, dst, f.neg(s)).unwrap();
            }
            prop_assert_eq!(x.slices(), a.gens());
            prop_assert_eq!(x.transform(), &Mat::identity(f, n));
        }

        #[test]
        fn leading_block_matches_restriction(a in arb_space(), t in 2usize..4) {
            let t = t.min(a.n());
            let x = ThreeWay::from_altspace(&a);
            let idx: Vec<usize> = (0..t).collect();
            let w = Subspace::coordinate(a.field(), a.n(), &idx).unwrap();
            prop_assert_eq!(x.leading_block_complete(t).unwrap(), a.is_complete(&w).unwrap());
        }
    }
}
