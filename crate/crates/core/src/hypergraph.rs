//! `ℓ`-uniform hypergraphs and the alternating `ℓ`-linear map built from
//! them: one wedge form `e*_{i1} ∧ ... ∧ e*_{iℓ}` per edge, with edges in
//! lexicographic order.
//!
//! Text format: a header line `n ell`, then one edge per line as
//! space-separated 1-based vertex indices. Blank lines and `#` comments are
//! skipped.

use crate::altspace::AltSpace;
use crate::error::{Error, Result};
use crate::field::{Felt, FieldCtx};
use crate::matrix::{Mat, Subspace};
use crate::oracle::{count_subspaces_upto, SubspaceEnumerator};

pub const DEFAULT_VERTEX_CAP: usize = 20;

/// Vertices are `0..n`; each edge is a strictly increasing `ell`-subset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    ell: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Sorts each edge and the edge list, and drops duplicates.
    pub fn new(n: usize, ell: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if ell < 2 {
            return Err(Error::InvalidHypergraph(format!("uniformity {ell} < 2")));
        }
        let mut out = Vec::with_capacity(edges.len());
        for mut e in edges {
            e.sort_unstable();
            if e.len() != ell {
                return Err(Error::InvalidHypergraph(format!("edge {e:?} does not have {ell} vertices")));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidHypergraph(format!("edge {e:?} repeats a vertex")));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidHypergraph(format!("vertex {} out of range 1..={n}", v + 1)));
            }
            out.push(e);
        }
        out.sort();
        out.dedup();
        Ok(Hypergraph { n, ell, edges: out })
    }

    pub fn edgeless(n: usize, ell: usize) -> Self {
        Hypergraph { n, ell, edges: Vec::new() }
    }

    /// All `ell`-subsets of `0..n`.
    pub fn complete(n: usize, ell: usize) -> Self {
        Hypergraph { n, ell, edges: ell_subsets(n, ell) }
    }

    pub fn path(n: usize) -> Self {
        Hypergraph { n, ell: 2, edges: (1..n).map(|i| vec![i - 1, i]).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or_else(|| Error::InvalidHypergraph("empty input".into()))?;
        let nums = |ln: usize, l: &str| -> Result<Vec<usize>> {
            l.split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| Error::InvalidHypergraph(format!("line {ln}: bad integer {t:?}")))
                })
                .collect()
        };
        let h = nums(hl, header)?;
        let [n, ell] = h[..] else {
            return Err(Error::InvalidHypergraph(format!("line {hl}: header must be \"n ell\"")));
        };
        let mut edges = Vec::new();
        for (ln, l) in lines {
            let e = nums(ln, l)?;
            if e.iter().any(|&v| v == 0 || v > n) {
                return Err(Error::InvalidHypergraph(format!("line {ln}: vertices must lie in 1..={n}")));
            }
            edges.push(e.into_iter().map(|v| v - 1).collect());
        }
        Hypergraph::new(n, ell, edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.ell);
        for e in &self.edges {
            let vs: Vec<String> = e.iter().map(|v| (v + 1).to_string()).collect();
            s.push_str(&vs.join(" "));
            s.push('\n');
        }
        s
    }

    /// Vertex set given as a bitmask.
    pub fn is_independent(&self, mask: u64) -> bool {
        self.edges.iter().all(|e| e.iter().any(|&v| mask >> v & 1 == 0))
    }

    /// Exact independence number by branch and bound over vertices.
    pub fn independence_number(&self, cap: usize) -> Result<usize> {
        if self.n > cap || self.n > 63 {
            return Err(Error::TooLarge(format!("{} vertices exceeds the cap of {}", self.n, cap.min(63))));
        }
        let edge_masks: Vec<u64> = self.edges.iter().map(|e| e.iter().fold(0u64, |m, &v| m | 1 << v)).collect();
        let mut best = 0;
        self.branch(0, 0, 0, &edge_masks, &mut best);
        Ok(best)
    }

    fn branch(&self, v: usize, chosen: u64, size: usize, edges: &[u64], best: &mut usize) {
        if size + (self.n - v) <= *best {
            return;
        }
        if v == self.n {
            *best = size;
            return;
        }
        let with = chosen | 1 << v;
        if edges.iter().all(|&e| e & with != e) {
            self.branch(v + 1, with, size + 1, edges, best);
        }
        self.branch(v + 1, chosen, size, edges, best);
    }

    pub fn lovasz_map(&self) -> MultilinearMap {
        MultilinearMap { graph: self.clone() }
    }

    /// Elementary alternating matrix `A_{i,j}` per edge.
    pub fn to_altspace(&self, field: FieldCtx) -> Result<AltSpace> {
        if self.ell != 2 {
            return Err(Error::NotGraph(self.ell));
        }
        let gens = self.edges.iter().map(|e| AltSpace::elementary(field, self.n, e[0], e[1])).collect();
        AltSpace::new(field, self.n, gens)
    }
}

pub(crate) fn ell_subsets(n: usize, ell: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < left {
                break;
            }
            cur.push(v);
            rec(v + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, ell, &mut Vec::new(), &mut out);
    out
}

/// The alternating `ℓ`-linear map of a hypergraph, evaluated implicitly:
/// coordinate `k` of `phi(v_1, ..., v_ℓ)` is the determinant of the rows of
/// `[v_1 ... v_ℓ]` indexed by edge `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearMap {
    graph: Hypergraph,
}

impl MultilinearMap {
    pub fn hypergraph(&self) -> &Hypergraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n
    }

    pub fn ell(&self) -> usize {
        self.graph.ell
    }

    pub fn m(&self) -> usize {
        self.graph.edges.len()
    }

    fn minor(field: FieldCtx, cols: &[&[Felt]], rows: &[usize]) -> Felt {
        let l = rows.len();
        let m = Mat::from_fn(field, l, l, |i, j| cols[j][rows[i]]);
        m.determinant().expect("square minor")
    }

    pub fn eval(&self, field: FieldCtx, args: &[&[Felt]]) -> Result<Vec<Felt>> {
        if args.len() != self.graph.ell || args.iter().any(|a| a.len() != self.graph.n) {
            return Err(Error::ShapeMismatch(format!(
                "expected {} vectors of length {}",
                self.graph.ell, self.graph.n
            )));
        }
        Ok(self.graph.edges.iter().map(|e| Self::minor(field, args, e)).collect())
    }

    /// Whether the map vanishes on `W = span(basis columns)`. Checking
    /// `ℓ`-subsets of the basis suffices by multilinearity and alternation.
    pub fn vanishes_on(&self, w: &Subspace) -> bool {
        let field = w.field();
        let b = w.basis_vectors();
        let d = b.len();
        if d < self.graph.ell {
            return true;
        }
        ell_subsets(d, self.graph.ell).iter().all(|sub| {
            let cols: Vec<&[Felt]> = sub.iter().map(|&i| b[i].as_slice()).collect();
            self.graph.edges.iter().all(|e| Self::minor(field, &cols, e).is_zero())
        })
    }
}

/// Largest totally-isotropic subspace by descending subspace enumeration.
pub fn isotropic_number_multilinear(map: &MultilinearMap, field: FieldCtx, budget: u128) -> Result<usize> {
    let n = map.n();
    let needed = count_subspaces_upto(field.order(), n, 0..=n);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    for d in (0..=n).rev() {
        if SubspaceEnumerator::new(field, n, d).any(|w| map.vanishes_on(&w)) {
            return Ok(d);
        }
    }
    Ok(0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropAlphaReport {
    pub alpha_h: usize,
    pub alpha_phi: usize,
    pub equal: bool,
}

/// Compares the independence number with the isotropic number of the
/// Lovász map, both by exhaustion.
pub fn check_prop_alpha(h: &Hypergraph, field: FieldCtx, budget: u128) -> Result<PropAlphaReport> {
    let alpha_h = h.independence_number(DEFAULT_VERTEX_CAP)?;
    let alpha_phi = isotropic_number_multilinear(&h.lovasz_map(), field, budget)?;
    Ok(PropAlphaReport { alpha_h, alpha_phi, equal: alpha_h == alpha_phi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::DEFAULT_BUDGET;

    fn k(p: u64) -> FieldCtx {
        FieldCtx::new(p).unwrap()
    }

    fn ev(f: FieldCtx, n: usize, i: usize) -> Vec<Felt> {
        let mut v = vec![Felt::ZERO; n];
        v[i] = f.one();
        v
    }

    fn brute_alpha(h: &Hypergraph) -> usize {
        (0u64..1 << h.n()).filter(|&m| h.is_independent(m)).map(|m| m.count_ones() as usize).max().unwrap()
    }

    #[test]
    fn construction_normalizes_edges() {
        let h = Hypergraph::new(4, 2, vec![vec![3, 1], vec![0, 1], vec![1, 3]]).unwrap();
        assert_eq!(h.edges(), &[vec![0, 1], vec![1, 3]]);
        assert!(Hypergraph::new(3, 2, vec![vec![0, 3]]).is_err());
        assert!(Hypergraph::new(3, 2, vec![vec![1, 1]]).is_err());
        assert!(Hypergraph::new(3, 3, vec![vec![0, 1]]).is_err());
    }

    #[test]
    fn text_format() {
        let h = Hypergraph::parse("3 2\n1 2\n# middle\n2 3\n").unwrap();
        assert_eq!(h, Hypergraph::path(3));
        assert_eq!(Hypergraph::parse(&h.to_text()).unwrap(), h);
        assert!(Hypergraph::parse("3 2\n1 4\n").is_err());
        assert!(Hypergraph::parse("3\n").is_err());
        assert!(Hypergraph::parse("").is_err());
    }

    #[test]
    fn lovasz_map_examples() {
        let f = k(5);
        let g = Hypergraph::new(2, 2, vec![vec![0, 1]]).unwrap();
        let e1 = ev(f, 2, 0);
        let e2 = ev(f, 2, 1);
        assert_eq!(g.lovasz_map().eval(f, &[&e1, &e2]).unwrap(), vec![Felt(1)]);

        let h3 = Hypergraph::complete(3, 3);
        let vs: Vec<Vec<Felt>> =
            vec![vec![Felt(1), Felt(2), Felt(3)], vec![Felt(0), Felt(1), Felt(4)], vec![Felt(2), Felt(2), Felt(1)]];
        let refs: Vec<&[Felt]> = vs.iter().map(|v| v.as_slice()).collect();
        let det = Mat::from_fn(f, 3, 3, |i, j| vs[j][i]).determinant().unwrap();
        assert_eq!(h3.lovasz_map().eval(f, &refs).unwrap(), vec![det]);

        let p3 = Hypergraph::path(3).to_altspace(f).unwrap();
        assert_eq!(p3.gens(), &[AltSpace::elementary(f, 3, 0, 1), AltSpace::elementary(f, 3, 1, 2)]);
        assert!(matches!(h3.to_altspace(f), Err(Error::NotGraph(3))));
    }

    #[test]
    fn lovasz_map_agrees_with_matrices_for_graphs() {
        let f = k(3);
        let g = Hypergraph::new(4, 2, vec![vec![0, 2], vec![1, 3], vec![0, 1]]).unwrap();
        let a = g.to_altspace(f).unwrap();
        let u = vec![Felt(1), Felt(2), Felt(0), Felt(1)];
        let v = vec![Felt(2), Felt(2), Felt(1), Felt(0)];
        assert_eq!(g.lovasz_map().eval(f, &[&u, &v]).unwrap(), a.eval(&u, &v));
    }

    #[test]
    fn standard_basis_tuples_pick_out_edges() {
        let f = k(3);
        let h = Hypergraph::new(5, 3, vec![vec![0, 1, 2], vec![1, 3, 4], vec![0, 2, 4]]).unwrap();
        let map = h.lovasz_map();
        for s in ell_subsets(5, 3) {
            let vs: Vec<Vec<Felt>> = s.iter().map(|&i| ev(f, 5, i)).collect();
            let refs: Vec<&[Felt]> = vs.iter().map(|v| v.as_slice()).collect();
            let out = map.eval(f, &refs).unwrap();
            for (e, x) in h.edges().iter().zip(out) {
                if *e == s {
                    assert!(x == f.one() || x == f.neg(f.one()));
                } else {
                    assert!(x.is_zero());
                }
            }
        }
    }

    #[test]
    fn independence_examples() {
        assert_eq!(Hypergraph::path(3).independence_number(20).unwrap(), 2);
        assert_eq!(Hypergraph::complete(3, 2).independence_number(20).unwrap(), 1);
        assert_eq!(Hypergraph::edgeless(4, 2).independence_number(20).unwrap(), 4);
        assert!(matches!(Hypergraph::edgeless(21, 2).independence_number(20), Err(Error::TooLarge(_))));
        let h = Hypergraph::new(7, 3, vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 6], vec![0, 3, 6]]).unwrap();
        assert_eq!(h.independence_number(20).unwrap(), brute_alpha(&h));
    }

    #[test]
    fn independent_sets_give_isotropic_coordinate_spaces() {
        let f = k(2);
        let h = Hypergraph::new(6, 3, vec![vec![0, 1, 2], vec![2, 3, 4], vec![1, 4, 5]]).unwrap();
        let map = h.lovasz_map();
        for mask in 0u64..1 << 6 {
            if h.is_independent(mask) {
                let idx: Vec<usize> = (0..6).filter(|&i| mask >> i & 1 == 1).collect();
                assert!(map.vanishes_on(&Subspace::coordinate(f, 6, &idx).unwrap()));
            }
        }
    }

    #[test]
    fn isotropic_number_examples() {
        let f2 = k(2);
        assert_eq!(
            isotropic_number_multilinear(&Hypergraph::complete(3, 3).lovasz_map(), f2, DEFAULT_BUDGET).unwrap(),
            2
        );
        assert_eq!(
            isotropic_number_multilinear(&Hypergraph::complete(3, 2).lovasz_map(), f2, DEFAULT_BUDGET).unwrap(),
            1
        );
        assert_eq!(
            isotropic_number_multilinear(&Hypergraph::edgeless(3, 2).lovasz_map(), f2, DEFAULT_BUDGET).unwrap(),
            3
        );
    }

    #[test]
    fn prop_alpha_examples() {
        let r = check_prop_alpha(&Hypergraph::path(3), k(2), DEFAULT_BUDGET).unwrap();
        assert_eq!(r, PropAlphaReport { alpha_h: 2, alpha_phi: 2, equal: true });
        let r = check_prop_alpha(&Hypergraph::complete(3, 2), k(3), DEFAULT_BUDGET).unwrap();
        assert_eq!(r, PropAlphaReport { alpha_h: 1, alpha_phi: 1, equal: true });
        let r = check_prop_alpha(&Hypergraph::complete(3, 3), k(2), DEFAULT_BUDGET).unwrap();
        assert_eq!(r, PropAlphaReport { alpha_h: 2, alpha_phi: 2, equal: true });
    }
}
