//! Finite unions of closed rational cones, compared with set semantics.

use num_traits::Zero;

use super::cone::Cone;
use crate::arith::{dot_z, Q, Z};

/// A finite union of closed cones in `R^n`. Kept in a normal form: no piece is contained
/// in another and pieces are sorted. Two sets with different pieces may still be equal as
/// sets; use [`PlSet::set_eq`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlSet {
    n: usize,
    pieces: Vec<Cone>,
}

impl PlSet {
    pub fn empty(n: usize) -> PlSet {
        PlSet { n, pieces: vec![] }
    }

    pub fn from_pieces(n: usize, pieces: Vec<Cone>) -> PlSet {
        let mut ps = pieces;
        ps.sort();
        ps.dedup();
        let keep: Vec<Cone> = ps
            .iter()
            .enumerate()
            .filter(|(i, p)| {
                !ps.iter()
                    .enumerate()
                    .any(|(j, q)| j != *i && q.contains(p) && (q != *p))
            })
            .map(|(_, p)| p.clone())
            .collect();
        PlSet { n, pieces: keep }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn pieces(&self) -> &[Cone] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Largest dimension of a piece, `None` for the empty set.
    pub fn dim(&self) -> Option<usize> {
        self.pieces.iter().map(|p| p.dim()).max()
    }

    /// `Some(d)` when every piece has dimension `d`.
    pub fn pure_dim(&self) -> Option<usize> {
        let d = self.dim()?;
        self.pieces.iter().all(|p| p.dim() == d).then_some(d)
    }

    pub fn contains_point_q(&self, x: &[Q]) -> bool {
        self.pieces.iter().any(|p| p.contains_point_q(x))
    }

    pub fn contains_point(&self, x: &[Z]) -> bool {
        self.pieces.iter().any(|p| p.contains_point(x))
    }

    pub fn union(&self, other: &PlSet) -> PlSet {
        let mut v = self.pieces.clone();
        v.extend(other.pieces.iter().cloned());
        PlSet::from_pieces(self.n, v)
    }

    pub fn intersect(&self, other: &PlSet) -> PlSet {
        let mut v = Vec::new();
        for a in &self.pieces {
            for b in &other.pieces {
                v.push(a.intersect(b));
            }
        }
        PlSet::from_pieces(self.n, v)
    }

    pub fn intersect_cone(&self, c: &Cone) -> PlSet {
        PlSet::from_pieces(self.n, self.pieces.iter().map(|p| p.intersect(c)).collect())
    }

    pub fn is_subset(&self, other: &PlSet) -> bool {
        self.pieces.iter().all(|p| covered(p, &other.pieces))
    }

    pub fn set_eq(&self, other: &PlSet) -> bool {
        self.is_subset(other) && other.is_subset(self)
    }
}

/// Decides `p ⊆ ∪ qs` by cutting `p` along the hyperplanes of the relevant `qs` until every
/// cell lies on one side of each of them, then testing one relative-interior point per cell.
pub fn covered(p: &Cone, qs: &[Cone]) -> bool {
    if qs.iter().any(|q| q.contains(p)) {
        return true;
    }
    let d = p.dim();
    let relevant: Vec<&Cone> = qs.iter().filter(|q| p.intersect(q).dim() == d).collect();
    if relevant.is_empty() {
        return false;
    }
    let mut hyper: Vec<Vec<Z>> = Vec::new();
    for q in &relevant {
        hyper.extend(q.facets().iter().cloned());
        hyper.extend(q.equations().iter().cloned());
    }
    hyper.sort();
    hyper.dedup();
    cover_rec(p, &relevant, &hyper)
}

fn cover_rec(cell: &Cone, qs: &[&Cone], hyper: &[Vec<Z>]) -> bool {
    if qs.iter().any(|q| q.contains(cell)) {
        return true;
    }
    let d = cell.dim();
    for h in hyper {
        let vals: Vec<Z> = cell.rays().iter().map(|r| dot_z(h, r)).collect();
        let lin_hit = cell.lineality().iter().any(|l| !dot_z(h, l).is_zero());
        let pos = vals.iter().any(|v| v > &Z::zero());
        let negv = vals.iter().any(|v| v < &Z::zero());
        if lin_hit || (pos && negv) {
            let hn: Vec<Z> = h.iter().map(|x| -x).collect();
            let a = cell.restrict(std::slice::from_ref(h), &[]);
            let b = cell.restrict(&[hn], &[]);
            if a.dim() == d && b.dim() == d {
                return cover_rec(&a, qs, hyper) && cover_rec(&b, qs, hyper);
            }
        }
    }
    let pt = cell.relint_point();
    qs.iter().any(|q| q.contains_point(&pt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::zvec;

    fn c(rays: &[&[i64]]) -> Cone {
        let r: Vec<_> = rays.iter().map(|x| zvec(x)).collect();
        Cone::from_generators(rays[0].len(), &r, &[])
    }

    #[test]
    fn union_of_two_halves_equals_orthant() {
        let halves = PlSet::from_pieces(2, vec![c(&[&[1, 0], &[1, 1]]), c(&[&[0, 1], &[1, 1]])]);
        let whole = PlSet::from_pieces(2, vec![Cone::orthant(2)]);
        assert!(halves.set_eq(&whole));
        let one = PlSet::from_pieces(2, vec![c(&[&[1, 0], &[1, 1]])]);
        assert!(one.is_subset(&whole));
        assert!(!whole.is_subset(&one));
    }

    #[test]
    fn normal_form_drops_contained_pieces() {
        let s = PlSet::from_pieces(2, vec![Cone::orthant(2), c(&[&[1, 1]]), Cone::zero(2)]);
        assert_eq!(s.pieces().len(), 1);
        assert_eq!(s.pure_dim(), Some(2));
    }

    #[test]
    fn rays_and_points() {
        let r = PlSet::from_pieces(2, vec![c(&[&[1, 1]]), c(&[&[2, 1]])]);
        assert!(r.contains_point(&zvec(&[4, 2])));
        assert!(!r.contains_point(&zvec(&[3, 2])));
        assert!(PlSet::from_pieces(2, vec![Cone::zero(2)]).is_subset(&r));
        assert!(!r.is_subset(&PlSet::from_pieces(2, vec![c(&[&[1, 1]])])));
        let i = r.intersect(&PlSet::from_pieces(2, vec![c(&[&[1, 0], &[1, 1]])]));
        assert!(i.set_eq(&r));
    }
}
