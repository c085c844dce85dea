//! Class-2 groups of exponent `p` from alternating bilinear maps, `p` odd.
//!
//! Elements are pairs `(v, u)` in `F^n x F^m` with
//! `(v, u)(v', u') = (v + v', u + u' + phi(v, v') / 2)`. The commutator
//! `x^-1 y^-1 x y` of `(v, 0)` and `(v', 0)` is `(0, phi(v, v'))`, so abelian
//! subgroups generated by lifts correspond to totally-isotropic subspaces.

use std::collections::HashSet;

use crate::altspace::{binomial2, AltSpace, Witness, WitnessKind};
use crate::error::{Error, Result};
use crate::field::{Felt, FieldCtx};
use crate::matrix::Subspace;

pub const DEFAULT_GROUP_BUDGET: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem {
    pub v: Vec<Felt>,
    pub u: Vec<Felt>,
}

#[derive(Clone, Debug)]
pub struct BaerGroup {
    field: FieldCtx,
    phi: AltSpace,
    half: Felt,
}

fn pow_u128(base: u64, e: usize) -> Option<u128> {
    (base as u128).checked_pow(u32::try_from(e).ok()?)
}

pub fn build_group(phi: &AltSpace, budget: u128) -> Result<BaerGroup> {
    let field = phi.field();
    if field.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let needed = pow_u128(field.order(), phi.n() + phi.m()).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let half = field.inv(field.elem(2))?;
    let g = BaerGroup { field, phi: phi.clone(), half };
    for x in g.generators() {
        let inv = g.inv(&x);
        crate::error::invariant(g.mul(&x, &inv) == g.identity() && g.mul(&inv, &x) == g.identity(), || {
            "generator inverse is not two-sided".into()
        })?;
    }
    Ok(g)
}

impl BaerGroup {
    pub fn field(&self) -> FieldCtx {
        self.field
    }

    pub fn phi(&self) -> &AltSpace {
        &self.phi
    }

    pub fn order(&self) -> u128 {
        pow_u128(self.field.order(), self.phi.n() + self.phi.m()).unwrap_or(u128::MAX)
    }

    pub fn identity(&self) -> GroupElem {
        GroupElem { v: vec![Felt::ZERO; self.phi.n()], u: vec![Felt::ZERO; self.phi.m()] }
    }

    /// `(v, 0)`.
    pub fn lift(&self, v: &[Felt]) -> GroupElem {
        GroupElem { v: v.to_vec(), u: vec![Felt::ZERO; self.phi.m()] }
    }

    /// Lifts of the standard basis of `F^n` followed by `(0, e_k)`.
    pub fn generators(&self) -> Vec<GroupElem> {
        let (n, m) = (self.phi.n(), self.phi.m());
        let mut out = Vec::with_capacity(n + m);
        for i in 0..n {
            let mut x = self.identity();
            x.v[i] = Felt::ONE;
            out.push(x);
        }
        for k in 0..m {
            let mut x = self.identity();
            x.u[k] = Felt::ONE;
            out.push(x);
        }
        out
    }

    pub fn mul(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        let f = self.field;
        let pair = self.phi.eval(&a.v, &b.v);
        let v = a.v.iter().zip(&b.v).map(|(&x, &y)| f.add(x, y)).collect();
        let u = a.u.iter().zip(&b.u).zip(&pair).map(|((&x, &y), &z)| f.mul_add(f.add(x, y), self.half, z)).collect();
        GroupElem { v, u }
    }

    /// `(-v, -u)`: the correction term vanishes because `phi(v, v) = 0`.
    pub fn inv(&self, a: &GroupElem) -> GroupElem {
        let f = self.field;
        GroupElem { v: a.v.iter().map(|&x| f.neg(x)).collect(), u: a.u.iter().map(|&x| f.neg(x)).collect() }
    }

    pub fn pow(&self, a: &GroupElem, e: u64) -> GroupElem {
        let mut acc = self.identity();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        let ab = self.mul(a, b);
        self.mul(&self.mul(&self.inv(a), &self.inv(b)), &ab)
    }

    /// All elements, `v` digits varying fastest.
    pub fn elements(&self) -> impl Iterator<Item = GroupElem> + '_ {
        let (n, m) = (self.phi.n(), self.phi.m());
        let p = self.field.p();
        let total = self.order();
        (0..total).map(move |mut idx| {
            let mut digits = Vec::with_capacity(n + m);
            for _ in 0..n + m {
                digits.push(Felt((idx % p as u128) as u32));
                idx /= p as u128;
            }
            let u = digits.split_off(n);
            GroupElem { v: digits, u }
        })
    }

    /// Closure of `gens` under multiplication, which for a finite group is
    /// the generated subgroup.
    pub fn generated_subgroup(&self, gens: &[GroupElem], budget: u128) -> Result<HashSet<GroupElem>> {
        let mut seen: HashSet<GroupElem> = HashSet::from([self.identity()]);
        let mut frontier = vec![self.identity()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.mul(&x, g);
                if seen.insert(y.clone()) {
                    if seen.len() as u128 > budget {
                        return Err(Error::BudgetExceeded { needed: seen.len() as u128, budget });
                    }
                    frontier.push(y);
                }
            }
        }
        Ok(seen)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawsReport {
    /// Number of elements the laws were checked on.
    pub checked: usize,
    pub exhaustive: bool,
    pub associative: bool,
    pub identity_and_inverses: bool,
    pub class_two: bool,
    pub exponent_p: bool,
    pub commutator_matches_phi: bool,
    /// `[G, G]` is `{0} x span(phi)` and cosets of it depend only on `v`.
    pub derived_subgroup_ok: bool,
}

impl LawsReport {
    pub fn all_ok(&self) -> bool {
        self.associative
            && self.identity_and_inverses
            && self.class_two
            && self.exponent_p
            && self.commutator_matches_phi
            && self.derived_subgroup_ok
    }
}

const EXHAUSTIVE_LAWS_CAP: u128 = 243;

/// Checks the laws on every element when the group has at most 243 elements
/// and on the generators otherwise.
pub fn check_laws(g: &BaerGroup) -> LawsReport {
    let exhaustive = g.order() <= EXHAUSTIVE_LAWS_CAP;
    let sample: Vec<GroupElem> = if exhaustive { g.elements().collect() } else { g.generators() };
    let id = g.identity();
    let p = g.field.order();

    let associative = sample
        .iter()
        .all(|x| sample.iter().all(|y| sample.iter().all(|z| g.mul(&g.mul(x, y), z) == g.mul(x, &g.mul(y, z)))));
    let identity_and_inverses =
        sample.iter().all(|x| g.mul(x, &id) == *x && g.mul(&id, x) == *x && g.mul(x, &g.inv(x)) == id);
    let class_two =
        sample.iter().all(|x| sample.iter().all(|y| sample.iter().all(|z| g.commutator(&g.commutator(x, y), z) == id)));
    let exponent_p = sample.iter().all(|x| g.pow(x, p) == id);

    let n = g.phi.n();
    let basis: Vec<Vec<Felt>> = (0..n)
        .map(|i| {
            let mut e = vec![Felt::ZERO; n];
            e[i] = Felt::ONE;
            e
        })
        .collect();
    let commutator_matches_phi = basis.iter().all(|a| {
        basis.iter().all(|b| {
            let c = g.commutator(&g.lift(a), &g.lift(b));
            c.v.iter().all(|x| x.is_zero()) && c.u == g.phi.eval(a, b)
        })
    });

    // the derived subgroup is generated by commutators of generators since
    // they are central
    let gens = g.generators();
    let comms: Vec<GroupElem> = gens.iter().flat_map(|x| gens.iter().map(|y| g.commutator(x, y))).collect();
    let derived_subgroup_ok = g
        .generated_subgroup(&comms, g.order())
        .map(|derived| {
            let m = g.phi.m();
            let images: Vec<Vec<Felt>> = comms.iter().map(|c| c.u.clone()).collect();
            let span_dim =
                if m == 0 { 0 } else { Subspace::span_of(g.field, m, &images).map_or(usize::MAX, |s| s.dim()) };
            let expected = pow_u128(p, span_dim).unwrap_or(u128::MAX);
            derived.len() as u128 == expected
                && derived.iter().all(|d| d.v.iter().all(|x| x.is_zero()))
                && sample.iter().all(|x| derived.iter().all(|d| g.mul(x, d).v == x.v))
        })
        .unwrap_or(false);

    LawsReport {
        checked: sample.len(),
        exhaustive,
        associative,
        identity_and_inverses,
        class_two,
        exponent_p,
        commutator_matches_phi,
        derived_subgroup_ok,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryReport {
    pub kind: WitnessKind,
    pub dim: usize,
    pub ok: bool,
    /// Isotropic witnesses: the lifts pairwise commute.
    pub lifts_commute: bool,
    /// Complete witnesses: order of the subgroup generated by the lifts.
    pub subgroup_order: Option<u128>,
    pub expected_order: Option<u128>,
}

/// Lifts the witness basis `b_i` to `(b_i, 0)`. An isotropic witness must give
/// pairwise commuting lifts; a complete witness of dimension `k` must
/// generate a subgroup of order `p^(k + C(k, 2))`.
pub fn corollary1_check(g: &BaerGroup, w: &Witness, s: usize, t: usize, budget: u128) -> Result<CorollaryReport> {
    if w.basis.ambient_dim() != g.phi.n() {
        return Err(Error::ShapeMismatch(format!(
            "witness in F^{}, group over F^{}",
            w.basis.ambient_dim(),
            g.phi.n()
        )));
    }
    let lifts: Vec<GroupElem> = w.basis.basis_vectors().iter().map(|b| g.lift(b)).collect();
    let id = g.identity();
    let lifts_commute = lifts.iter().all(|x| lifts.iter().all(|y| g.commutator(x, y) == id));
    let dim = w.dim();
    let (ok, subgroup_order, expected_order) = match w.kind {
        WitnessKind::Isotropic => (dim >= s && lifts_commute, None, None),
        WitnessKind::Complete => {
            let expected = FreeGroupTarget { p: g.field.order(), t: dim }.expected_order();
            let h = g.generated_subgroup(&lifts, budget)?;
            let order = h.len() as u128;
            (dim >= t && order == expected, Some(order), Some(expected))
        }
    };
    Ok(CorollaryReport { kind: w.kind, dim, ok, lifts_commute, subgroup_order, expected_order })
}

/// The relatively free group of class 2 and exponent `p` on `t` generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeGroupTarget {
    pub p: u64,
    pub t: usize,
}

impl FreeGroupTarget {
    pub fn expected_order(&self) -> u128 {
        pow_u128(self.p, self.t + binomial2(self.t)).unwrap_or(u128::MAX)
    }

    /// Counts the distinct values of the normal-form words
    /// `x_1^a_1 ... x_t^a_t prod_{i<j} [x_i, x_j]^c_ij` evaluated in the
    /// group of the full alternating map on `F^t`.
    pub fn count_normal_forms(&self, budget: u128) -> Result<u128> {
        let field = FieldCtx::new(self.p)?;
        let g = build_group(&AltSpace::full_elementary(field, self.t), budget)?;
        let xs: Vec<GroupElem> = g.generators().into_iter().take(self.t).collect();
        let mut comms = Vec::new();
        for i in 0..self.t {
            for j in i + 1..self.t {
                comms.push(g.commutator(&xs[i], &xs[j]));
            }
        }
        let letters: Vec<GroupElem> = xs.into_iter().chain(comms).collect();
        let mut seen = HashSet::new();
        for exps in g.elements() {
            // reuse the element iterator purely as an exponent odometer
            let mut word = g.identity();
            for (letter, e) in letters.iter().zip(exps.v.iter().chain(&exps.u)) {
                word = g.mul(&word, &g.pow(letter, e.value() as u64));
            }
            seen.insert(word);
        }
        Ok(seen.len() as u128)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::complete_subspaces;

    fn k(p: u64) -> FieldCtx {
        FieldCtx::new(p).unwrap()
    }

    fn heisenberg(p: u64) -> BaerGroup {
        let f = k(p);
        build_group(&AltSpace::new(f, 2, vec![AltSpace::elementary(f, 2, 0, 1)]).unwrap(), DEFAULT_GROUP_BUDGET)
            .unwrap()
    }

    #[test]
    fn heisenberg_laws() {
        let g = heisenberg(3);
        assert_eq!(g.order(), 27);
        assert_eq!(g.elements().collect::<HashSet<_>>().len(), 27);
        let r = check_laws(&g);
        assert!(r.exhaustive && r.all_ok(), "{r:?}");
        let c = g.commutator(&g.lift(&[Felt(1), Felt(0)]), &g.lift(&[Felt(0), Felt(1)]));
        assert_eq!(c, GroupElem { v: vec![Felt(0), Felt(0)], u: vec![Felt(1)] });
        // nonabelian
        let (x, y) = (&g.generators()[0], &g.generators()[1]);
        assert_ne!(g.mul(x, y), g.mul(y, x));
    }

    #[test]
    fn abelian_case() {
        let g = build_group(&AltSpace::zero(k(3), 2), DEFAULT_GROUP_BUDGET).unwrap();
        assert_eq!(g.order(), 9);
        let r = check_laws(&g);
        assert!(r.all_ok());
        let all: Vec<_> = g.elements().collect();
        assert!(all.iter().all(|x| all.iter().all(|y| g.commutator(x, y) == g.identity())));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(build_group(&AltSpace::zero(k(2), 2), DEFAULT_GROUP_BUDGET), Err(Error::EvenCharacteristic)));
        assert!(matches!(
            build_group(&AltSpace::zero(k(3), 20), DEFAULT_GROUP_BUDGET),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn larger_group_checks_on_generators() {
        let g = build_group(&AltSpace::full_elementary(k(5), 3), DEFAULT_GROUP_BUDGET).unwrap();
        let r = check_laws(&g);
        assert!(!r.exhaustive);
        assert!(r.all_ok(), "{r:?}");
    }

    #[test]
    fn free_group_orders() {
        let target = FreeGroupTarget { p: 3, t: 2 };
        assert_eq!(target.expected_order(), 27);
        assert_eq!(target.count_normal_forms(DEFAULT_GROUP_BUDGET).unwrap(), 27);
        let t3 = FreeGroupTarget { p: 3, t: 3 };
        assert_eq!(t3.count_normal_forms(DEFAULT_GROUP_BUDGET).unwrap(), t3.expected_order());
    }

    #[test]
    fn witness_lifts_on_tiny_groups() {
        let f = k(3);
        let phi = AltSpace::new(f, 2, vec![AltSpace::elementary(f, 2, 0, 1)]).unwrap();
        let g = build_group(&phi, DEFAULT_GROUP_BUDGET).unwrap();
        let complete = complete_subspaces(&phi, 2, 1000).unwrap();
        assert_eq!(complete.len(), 1);
        let w = Witness { kind: WitnessKind::Complete, basis: complete[0].clone() };
        let r = corollary1_check(&g, &w, 2, 2, DEFAULT_GROUP_BUDGET).unwrap();
        assert!(r.ok);
        assert_eq!(r.subgroup_order, Some(27));

        let zero = build_group(&AltSpace::zero(f, 2), DEFAULT_GROUP_BUDGET).unwrap();
        let w = Witness { kind: WitnessKind::Isotropic, basis: Subspace::full(f, 2) };
        let r = corollary1_check(&zero, &w, 2, 2, DEFAULT_GROUP_BUDGET).unwrap();
        assert!(r.ok && r.lifts_commute);
        // the same basis is not isotropic for the Heisenberg map
        let r = corollary1_check(&g, &w, 2, 2, DEFAULT_GROUP_BUDGET).unwrap();
        assert!(!r.ok);
    }
}
