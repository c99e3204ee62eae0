//! Rational polyhedral cones with both descriptions kept in canonical form.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::arith::{
    canonical_span, clear_denoms, dot_qz, dot_z, primitive, rank_z, reduce_mod_span, rref, to_q, Q,
    Z,
};

/// A closed convex polyhedral cone in `R^n`.
///
/// Generators: `rays` (extreme rays modulo the lineality space) and a basis of the
/// lineality space. Inequalities: `facets` (one primitive normal per facet) and a basis
/// of `equations` (the orthogonal complement of the linear span). All four lists are
/// canonical, so structural equality is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    n: usize,
    rays: Vec<Vec<Z>>,
    lineality: Vec<Vec<Z>>,
    facets: Vec<Vec<Z>>,
    equations: Vec<Vec<Z>>,
}

impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cone {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.dim(), &self.lineality, &self.rays, self.n).cmp(&(
            other.dim(),
            &other.lineality,
            &other.rays,
            other.n,
        ))
    }
}

fn neg(v: &[Z]) -> Vec<Z> {
    v.iter().map(|x| -x).collect()
}

fn combine(a: &Z, x: &[Z], b: &Z, y: &[Z]) -> Vec<Z> {
    let v: Vec<Z> = x.iter().zip(y).map(|(p, q)| a * p - b * q).collect();
    primitive(&v)
}

/// Double description: generators of `{x : a.x >= 0 (a in ineqs), e.x = 0 (e in eqs)}`.
/// Returns `(rays, lineality)`; rays are extreme modulo lineality but not yet canonical.
fn double_description(n: usize, ineqs: &[Vec<Z>], eqs: &[Vec<Z>]) -> (Vec<Vec<Z>>, Vec<Vec<Z>>) {
    let mut lin: Vec<Vec<Z>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Z::from(1) } else { Z::zero() })
                .collect()
        })
        .collect();
    let mut rays: Vec<Vec<Z>> = Vec::new();
    let mut processed: Vec<Vec<Z>> = Vec::new();
    let constraints = eqs
        .iter()
        .map(|e| (e, true))
        .chain(ineqs.iter().map(|a| (a, false)));
    for (h, is_eq) in constraints {
        if h.iter().all(|x| x.is_zero()) {
            continue;
        }
        if let Some(i) = lin.iter().position(|l| !dot_z(h, l).is_zero()) {
            let mut l0 = lin.remove(i);
            let mut s = dot_z(h, &l0);
            if s.is_negative() {
                l0 = neg(&l0);
                s = -s;
            }
            lin = lin
                .iter()
                .map(|l| combine(&s, l, &dot_z(h, l), &l0))
                .collect();
            rays = rays
                .iter()
                .map(|r| combine(&s, r, &dot_z(h, r), &l0))
                .collect();
            if !is_eq {
                rays.push(primitive(&l0));
            }
            sort_desc(&mut rays);
            processed.push(h.clone());
            continue;
        }
        let vals: Vec<Z> = rays.iter().map(|r| dot_z(h, r)).collect();
        let d = n - lin.len();
        let tight: Vec<Vec<bool>> = rays
            .iter()
            .map(|r| processed.iter().map(|c| dot_z(c, r).is_zero()).collect())
            .collect();
        let mut next: Vec<Vec<Z>> = Vec::new();
        for (r, v) in rays.iter().zip(&vals) {
            if v.is_zero() || (!is_eq && v.is_positive()) {
                next.push(r.clone());
            }
        }
        for (i, vi) in vals.iter().enumerate() {
            if !vi.is_positive() {
                continue;
            }
            for (j, vj) in vals.iter().enumerate() {
                if !vj.is_negative() {
                    continue;
                }
                let common: Vec<usize> = (0..processed.len())
                    .filter(|&k| tight[i][k] && tight[j][k])
                    .collect();
                if d >= 2 && common.len() + 2 < d {
                    continue;
                }
                // combinatorial test, then the algebraic one
                let dominated = (0..rays.len())
                    .any(|k| k != i && k != j && common.iter().all(|&c| tight[k][c]));
                if dominated {
                    continue;
                }
                let rows: Vec<Vec<Z>> = common.iter().map(|&k| processed[k].clone()).collect();
                if d >= 2 && rank_z(&rows, n) + 2 != d {
                    continue;
                }
                next.push(combine(vi, &rays[j], vj, &rays[i]));
            }
        }
        rays = next;
        sort_desc(&mut rays);
        processed.push(h.clone());
    }
    (rays, lin)
}

fn sort_desc(v: &mut Vec<Vec<Z>>) {
    v.sort_by(|a, b| b.cmp(a));
    v.dedup();
}

/// Reduces vectors modulo a subspace, makes them primitive and drops zeros and duplicates.
fn canonical_mod(vs: &[Vec<Z>], span: &[Vec<Z>], n: usize) -> Vec<Vec<Z>> {
    let qs: Vec<Vec<Q>> = span.iter().map(|r| to_q(r)).collect();
    let (r, piv) = rref(&qs, n);
    let mut out: Vec<Vec<Z>> = vs
        .iter()
        .map(|v| clear_denoms(&reduce_mod_span(&to_q(v), &r, &piv)))
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    sort_desc(&mut out);
    out
}

impl Cone {
    /// Cone generated by `rays` plus the linear span of `lineality`.
    pub fn from_generators(n: usize, rays: &[Vec<Z>], lineality: &[Vec<Z>]) -> Cone {
        let (f, e) = double_description(n, rays, lineality);
        let equations = canonical_span(&e, n);
        let facets = canonical_mod(&f, &equations, n);
        Cone::from_h_canonical(n, facets, equations)
    }

    /// Cone `{x : a.x >= 0, e.x = 0}`.
    pub fn from_inequalities(n: usize, ineqs: &[Vec<Z>], eqs: &[Vec<Z>]) -> Cone {
        let (r, l) = double_description(n, ineqs, eqs);
        let lineality = canonical_span(&l, n);
        let rays = canonical_mod(&r, &lineality, n);
        let (f, e) = double_description(n, &rays, &lineality);
        let equations = canonical_span(&e, n);
        let facets = canonical_mod(&f, &equations, n);
        Cone {
            n,
            rays,
            lineality,
            facets,
            equations,
        }
    }

    fn from_h_canonical(n: usize, facets: Vec<Vec<Z>>, equations: Vec<Vec<Z>>) -> Cone {
        let (r, l) = double_description(n, &facets, &equations);
        let lineality = canonical_span(&l, n);
        let rays = canonical_mod(&r, &lineality, n);
        Cone {
            n,
            rays,
            lineality,
            facets,
            equations,
        }
    }

    pub fn full(n: usize) -> Cone {
        let id: Vec<Vec<Z>> = (0..n)
            .map(|i| (0..n).map(|j| Z::from((i == j) as i64)).collect())
            .collect();
        Cone::from_generators(n, &[], &id)
    }

    pub fn zero(n: usize) -> Cone {
        Cone::from_generators(n, &[], &[])
    }

    /// The nonnegative orthant `R^n_{>=0}`.
    pub fn orthant(n: usize) -> Cone {
        let id: Vec<Vec<Z>> = (0..n)
            .map(|i| (0..n).map(|j| Z::from((i == j) as i64)).collect())
            .collect();
        Cone::from_generators(n, &id, &[])
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn rays(&self) -> &[Vec<Z>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<Z>] {
        &self.lineality
    }

    pub fn facets(&self) -> &[Vec<Z>] {
        &self.facets
    }

    pub fn equations(&self) -> &[Vec<Z>] {
        &self.equations
    }

    pub fn dim(&self) -> usize {
        self.n - self.equations.len()
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dim(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn contains_point_q(&self, x: &[Q]) -> bool {
        self.equations.iter().all(|e| dot_qz(x, e).is_zero())
            && self.facets.iter().all(|f| !dot_qz(x, f).is_negative())
    }

    pub fn contains_point(&self, x: &[Z]) -> bool {
        self.equations.iter().all(|e| dot_z(x, e).is_zero())
            && self.facets.iter().all(|f| !dot_z(x, f).is_negative())
    }

    /// True when `x` lies in the relative interior.
    pub fn relint_contains_q(&self, x: &[Q]) -> bool {
        self.equations.iter().all(|e| dot_qz(x, e).is_zero())
            && self.facets.iter().all(|f| dot_qz(x, f).is_positive())
    }

    pub fn relint_contains(&self, x: &[Z]) -> bool {
        self.equations.iter().all(|e| dot_z(x, e).is_zero())
            && self.facets.iter().all(|f| dot_z(x, f).is_positive())
    }

    pub fn contains(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains_point(r))
            && other
                .lineality
                .iter()
                .all(|l| self.contains_point(l) && self.contains_point(&neg(l)))
    }

    /// A point of the relative interior: the sum of the rays.
    pub fn relint_point(&self) -> Vec<Z> {
        let mut s = vec![Z::zero(); self.n];
        for r in &self.rays {
            for (a, b) in s.iter_mut().zip(r) {
                *a += b;
            }
        }
        s
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Cone::from_inequalities(self.n, &ineqs, &eqs)
    }

    /// Intersection with additional linear constraints.
    pub fn restrict(&self, ineqs: &[Vec<Z>], eqs: &[Vec<Z>]) -> Cone {
        let mut i2 = self.facets.clone();
        i2.extend(ineqs.iter().cloned());
        let mut e2 = self.equations.clone();
        e2.extend(eqs.iter().cloned());
        Cone::from_inequalities(self.n, &i2, &e2)
    }

    /// The dual cone `{y : y.x >= 0 for all x in C}`.
    pub fn dual(&self) -> Cone {
        Cone {
            n: self.n,
            rays: self.facets.clone(),
            lineality: self.equations.clone(),
            facets: self.rays.clone(),
            equations: self.lineality.clone(),
        }
    }

    /// The face cut out by the valid inequality `u >= 0`.
    pub fn face_for(&self, u: &[Z]) -> Cone {
        self.restrict(&[], &[u.to_vec()])
    }

    /// All faces, ordered by dimension then canonically. Includes the cone itself and the
    /// minimal face (the lineality space).
    pub fn faces(&self) -> Vec<Cone> {
        let mut seen: std::collections::BTreeSet<Cone> = std::collections::BTreeSet::new();
        let mut stack = vec![self.clone()];
        seen.insert(self.clone());
        while let Some(f) = stack.pop() {
            for nrm in &self.facets {
                if f.rays.iter().all(|r| dot_z(nrm, r).is_zero()) {
                    continue;
                }
                let g = f.face_for(nrm);
                if seen.insert(g.clone()) {
                    stack.push(g);
                }
            }
        }
        let mut v: Vec<Cone> = seen.into_iter().collect();
        v.sort();
        v
    }

    /// Faces of codimension one.
    pub fn facet_cones(&self) -> Vec<Cone> {
        let mut v: Vec<Cone> = self.facets.iter().map(|f| self.face_for(f)).collect();
        v.sort();
        v.dedup();
        v
    }

    /// True when `self` is a face of `other`.
    pub fn is_face_of(&self, other: &Cone) -> bool {
        if !other.contains(self) {
            return false;
        }
        let p = self.relint_point();
        let tight: Vec<Vec<Z>> = other
            .facets
            .iter()
            .filter(|f| dot_z(f, &p).is_zero())
            .cloned()
            .collect();
        let smallest = other.restrict(&[], &tight);
        &smallest == self
    }

    /// Preimage `{w : A w in C}` under the linear map with matrix rows `a` (`C` lives in
    /// `R^{a.len()}`, the preimage in `R^m`).
    pub fn preimage(&self, a: &[Vec<Z>], m: usize) -> Cone {
        let pull = |v: &Vec<Z>| -> Vec<Z> {
            (0..m)
                .map(|j| v.iter().zip(a).map(|(vi, row)| vi * &row[j]).sum())
                .collect()
        };
        let ineqs: Vec<Vec<Z>> = self.facets.iter().map(pull).collect();
        let eqs: Vec<Vec<Z>> = self.equations.iter().map(pull).collect();
        Cone::from_inequalities(m, &ineqs, &eqs)
    }

    /// Image under the linear map `x ↦ M x` with `M` given by rows.
    pub fn image(&self, mrows: &[Vec<Z>]) -> Cone {
        let apply = |v: &Vec<Z>| -> Vec<Z> { mrows.iter().map(|row| dot_z(row, v)).collect() };
        let rays: Vec<Vec<Z>> = self.rays.iter().map(apply).collect();
        let lin: Vec<Vec<Z>> = self.lineality.iter().map(apply).collect();
        Cone::from_generators(mrows.len(), &rays, &lin)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::zvec;

    fn c(rays: &[&[i64]]) -> Cone {
        let r: Vec<Vec<Z>> = rays.iter().map(|x| zvec(x)).collect();
        Cone::from_generators(rays[0].len(), &r, &[])
    }

    #[test]
    fn dual_of_planar_cone() {
        let k = c(&[&[1, 0], &[1, 2]]);
        let d = k.dual();
        assert_eq!(d, c(&[&[0, 1], &[2, -1]]));
        assert_eq!(d.dual(), k);
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let k = c(&[&[1, 0], &[1, 1], &[0, 1], &[2, 3]]);
        assert_eq!(k.rays(), &[zvec(&[1, 0]), zvec(&[0, 1])]);
        assert_eq!(k, Cone::orthant(2));
    }

    #[test]
    fn face_counts() {
        let square = c(&[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]);
        assert_eq!(square.faces().len(), 10);
        // a half-plane has exactly two faces: itself and its boundary line
        let half = Cone::from_inequalities(2, &[zvec(&[1, 0])], &[]);
        assert_eq!(half.faces().len(), 2);
        assert_eq!(half.lineality_dim(), 1);
        assert_eq!(Cone::orthant(3).faces().len(), 8);
    }

    #[test]
    fn intersections_and_faces() {
        let a = Cone::orthant(2);
        let b = c(&[&[1, 1], &[-1, 1]]);
        let i = a.intersect(&b);
        assert_eq!(i, c(&[&[1, 1], &[0, 1]]));
        let ray = c(&[&[0, 1]]);
        assert!(ray.is_face_of(&i));
        assert!(!c(&[&[1, 2]]).is_face_of(&i));
        assert_eq!(i.relint_point(), zvec(&[1, 2]));
        assert!(i.relint_contains(&zvec(&[1, 2])));
        assert!(!i.relint_contains(&zvec(&[0, 1])));
    }

    #[test]
    fn lower_dimensional_cone() {
        let r = c(&[&[1, 1, 0]]);
        assert_eq!(r.dim(), 1);
        assert_eq!(r.equations().len(), 2);
        assert!(r.contains_point(&zvec(&[2, 2, 0])));
        assert!(!r.contains_point(&zvec(&[2, 1, 0])));
        let full = Cone::full(3);
        assert_eq!(full.dim(), 3);
        assert!(full.rays().is_empty());
    }

    #[test]
    fn preimage_and_image() {
        let k = c(&[&[3, 4, 5]]);
        let pre = k.preimage(&[zvec(&[3]), zvec(&[4]), zvec(&[5])], 1);
        assert_eq!(pre, c(&[&[1]]));
        let img = Cone::orthant(2).image(&[zvec(&[1, 1])]);
        assert_eq!(img, c(&[&[1]]));
    }
}
