//! The partial compactification of `N_R` by strata `(N/N_tau)_R`, one for each face `tau`
//! of a pointed cone `sigma`, with extended points and their pairing with monomials.

use num_traits::{Signed, Zero};

use crate::arith::{dot_z, qz, solve_q, to_q, ExtReal, Q, Z};
use crate::error::{precondition, schema, Result};
use crate::lattice::{saturate_sublattice, QuotientMap};
use crate::polyhedral::{Cone, PlSet};
use crate::semigroup::AffineSemigroup;

/// A stratum `(N/N_tau)_R` with fixed integer coordinates.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub face: Cone,
    /// Indices into the rays of `sigma` of the rays spanning `face`.
    pub face_rays: Vec<usize>,
    /// Rows of the projection `N -> N/N_tau` in the chosen coordinates.
    pub proj: Vec<Vec<Z>>,
    /// Rows `l_i` with `proj(sum c_i l_i) = c`.
    pub lift: Vec<Vec<Z>>,
    /// `pi_tau(sigma)` in stratum coordinates.
    pub projected: Cone,
}

impl Stratum {
    pub fn dim(&self) -> usize {
        self.proj.len()
    }

    pub fn lift_q(&self, c: &[Q]) -> Vec<Q> {
        let n = self.face.ambient_dim();
        let mut x = vec![Q::zero(); n];
        for (ci, row) in c.iter().zip(&self.lift) {
            for (xi, r) in x.iter_mut().zip(row) {
                *xi += ci * qz(r);
            }
        }
        x
    }

    pub fn project_q(&self, x: &[Q]) -> Vec<Q> {
        self.proj
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| qz(a) * b).sum())
            .collect()
    }
}

/// A point of the extended cone: a stratum index and coordinates in that stratum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtendedPoint {
    pub stratum: usize,
    pub coords: Vec<Q>,
}

/// The extended cone `sigma-bar` with its strata, sorted by face dimension and then by the
/// ray indices of the face. Stratum `0` is the finite part.
#[derive(Clone, Debug)]
pub struct ExtendedCone {
    sigma: Cone,
    strata: Vec<Stratum>,
}

impl ExtendedCone {
    pub fn new(sigma: &Cone) -> Result<ExtendedCone> {
        if !sigma.is_pointed() {
            return precondition("strata at infinity need a pointed cone");
        }
        let n = sigma.ambient_dim();
        let rays = sigma.rays();
        let mut strata = Vec::new();
        for face in sigma.faces() {
            let face_rays: Vec<usize> = (0..rays.len())
                .filter(|&i| face.contains_point(&rays[i]))
                .collect();
            let (proj, lift) = if let Some(cols) = coordinate_span(&face) {
                let keep: Vec<usize> = (0..n).filter(|i| !cols.contains(i)).collect();
                let unit = |i: usize| -> Vec<Z> {
                    (0..n)
                        .map(|j| if i == j { Z::from(1) } else { Z::zero() })
                        .collect()
                };
                let p: Vec<Vec<Z>> = keep.iter().map(|&i| unit(i)).collect();
                (p.clone(), p)
            } else {
                let sub = saturate_sublattice(face.rays(), n);
                let q = QuotientMap::new(&sub, n);
                let p = q.projection_rows().to_vec();
                let l: Vec<Vec<Z>> = (0..q.quotient_rank())
                    .map(|i| {
                        let e: Vec<Z> = (0..q.quotient_rank())
                            .map(|j| if i == j { Z::from(1) } else { Z::zero() })
                            .collect();
                        q.lift(&e)
                    })
                    .collect();
                (p, l)
            };
            let projected = sigma.image(&proj);
            strata.push(Stratum {
                face,
                face_rays,
                proj,
                lift,
                projected,
            });
        }
        strata.sort_by(|a, b| {
            a.face_rays
                .len()
                .cmp(&b.face_rays.len())
                .then(a.face_rays.cmp(&b.face_rays))
        });
        Ok(ExtendedCone {
            sigma: sigma.clone(),
            strata,
        })
    }

    /// Strata of the nonnegative orthant, indexed by the subsets of coordinates sent to infinity.
    pub fn orthant(n: usize) -> ExtendedCone {
        ExtendedCone::new(&Cone::orthant(n)).expect("the orthant is pointed")
    }

    pub fn sigma(&self) -> &Cone {
        &self.sigma
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn stratum(&self, i: usize) -> &Stratum {
        &self.strata[i]
    }

    pub fn stratum_index(&self, face_rays: &[usize]) -> Option<usize> {
        let mut f = face_rays.to_vec();
        f.sort();
        f.dedup();
        self.strata.iter().position(|s| s.face_rays == f)
    }

    /// Whether the face of stratum `a` is a face of that of stratum `b`.
    pub fn is_below(&self, a: usize, b: usize) -> bool {
        self.strata[a]
            .face_rays
            .iter()
            .all(|r| self.strata[b].face_rays.contains(r))
    }

    pub fn finite_point(&self, w: &[Q]) -> ExtendedPoint {
        ExtendedPoint {
            stratum: 0,
            coords: w.to_vec(),
        }
    }

    fn check(&self, p: &ExtendedPoint) -> Result<&Stratum> {
        let Some(s) = self.strata.get(p.stratum) else {
            return schema("unknown stratum");
        };
        if s.dim() != p.coords.len() {
            return schema("coordinates do not match the stratum dimension");
        }
        Ok(s)
    }

    /// The image of `p` in the stratum `to`, whose face must contain that of `p`.
    pub fn project(&self, p: &ExtendedPoint, to: usize) -> Result<ExtendedPoint> {
        let s = self.check(p)?;
        if to >= self.strata.len() || !self.is_below(p.stratum, to) {
            return precondition("target face does not contain the source face");
        }
        let x = s.lift_q(&p.coords);
        Ok(ExtendedPoint {
            stratum: to,
            coords: self.strata[to].project_q(&x),
        })
    }

    /// The pairing with an exponent of `sigma-dual`, infinite off `tau^perp`.
    pub fn evaluate(&self, p: &ExtendedPoint, m: &[Z]) -> Result<ExtReal> {
        let s = self.check(p)?;
        if m.len() != self.sigma.ambient_dim() {
            return schema("exponent has the wrong length");
        }
        if !self.sigma.facets().is_empty() || !self.sigma.equations().is_empty() {
            let dual = self.sigma.dual();
            if !dual.contains_point(m) {
                return precondition("exponent is outside the dual cone");
            }
        }
        if s.face.rays().iter().any(|r| !dot_z(r, m).is_zero()) {
            return Ok(ExtReal::Infinity);
        }
        let x = s.lift_q(&p.coords);
        Ok(ExtReal::Finite(
            x.iter().zip(m).map(|(a, b)| a * qz(b)).sum(),
        ))
    }

    pub fn contains(&self, p: &ExtendedPoint) -> Result<bool> {
        let s = self.check(p)?;
        Ok(s.projected.contains_point_q(&p.coords))
    }

    /// Positive on every non-invertible monomial: the coordinates lie in the relative
    /// interior of the projected cone.
    pub fn in_interior(&self, p: &ExtendedPoint) -> Result<bool> {
        if !self.contains(p)? {
            return precondition("point is outside the extended cone");
        }
        let s = &self.strata[p.stratum];
        Ok(s.projected.relint_contains_q(&p.coords))
    }

    /// Matrix taking coordinates of stratum `from` to those of stratum `to`.
    pub fn transition(&self, from: usize, to: usize) -> Vec<Vec<Z>> {
        let a = &self.strata[from];
        let b = &self.strata[to];
        b.proj
            .iter()
            .map(|row| a.lift.iter().map(|l| dot_z(row, l)).collect())
            .collect()
    }

    /// The cone `tau'` of stratum `to`'s face, seen in the coordinates of stratum `from`.
    pub fn face_in(&self, from: usize, to: usize) -> Cone {
        self.strata[to].face.image(&self.strata[from].proj)
    }

    /// If the piece (in stratum `from`) meets the relative interior of the face of stratum
    /// `to`, its closure reaches that stratum in the projected piece.
    pub fn closure_image(&self, from: usize, piece: &Cone, to: usize) -> Option<Cone> {
        if from == to || !self.is_below(from, to) {
            return None;
        }
        let tau = self.face_in(from, to);
        let k = piece.intersect(&tau);
        if !tau.relint_contains(&k.relint_point()) {
            return None;
        }
        Some(piece.image(&self.transition(from, to)))
    }
}

/// The coordinate indices spanning `face` when it is spanned by unit vectors.
fn coordinate_span(face: &Cone) -> Option<Vec<usize>> {
    let mut cols = Vec::new();
    for r in face.rays().iter().chain(face.lineality()) {
        let nz: Vec<usize> = (0..r.len()).filter(|&i| !r[i].is_zero()).collect();
        if nz.len() != 1 {
            return None;
        }
        cols.push(nz[0]);
    }
    cols.sort();
    Some(cols)
}

/// One PL set per stratum of an extended cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedPlSet {
    pub strata: Vec<PlSet>,
}

impl ExtendedPlSet {
    pub fn empty(ec: &ExtendedCone) -> ExtendedPlSet {
        ExtendedPlSet {
            strata: ec.strata().iter().map(|s| PlSet::empty(s.dim())).collect(),
        }
    }

    pub fn set_eq(&self, other: &ExtendedPlSet) -> bool {
        self.strata.len() == other.strata.len()
            && self
                .strata
                .iter()
                .zip(&other.strata)
                .all(|(a, b)| a.set_eq(b))
    }

    pub fn contains(&self, p: &ExtendedPoint) -> bool {
        self.strata
            .get(p.stratum)
            .map(|s| s.contains_point_q(&p.coords))
            .unwrap_or(false)
    }

    pub fn is_empty(&self) -> bool {
        self.strata.iter().all(|s| s.is_empty())
    }
}

/// The extended point of `sigma-bar(Gamma)` defined by values on the generators of a
/// pointed, full-rank semigroup.
pub fn tropicalize_weights(
    gamma: &AffineSemigroup,
    values: &[ExtReal],
) -> Result<(ExtendedCone, ExtendedPoint)> {
    let gens = gamma.generators();
    if values.len() != gens.len() {
        return schema("one value per generator is required");
    }
    if values
        .iter()
        .any(|v| matches!(v, ExtReal::Finite(x) if x.is_negative()))
    {
        return precondition("values must be nonnegative");
    }
    let r = gamma.rank();
    let dual = gamma.cone();
    if !dual.is_full_dim() {
        return precondition("the semigroup must have full rank");
    }
    let ec = ExtendedCone::new(&gamma.sigma())?;
    let finite: Vec<usize> = (0..gens.len())
        .filter(|&i| !values[i].is_infinite())
        .collect();
    let mut p = vec![Z::zero(); r];
    for &i in &finite {
        for (a, b) in p.iter_mut().zip(&gens[i]) {
            *a += b;
        }
    }
    let face_d = smallest_face_containing(&dual, &p);
    for (i, g) in gens.iter().enumerate() {
        if values[i].is_infinite() && face_d.contains_point(g) {
            return precondition("infinite values do not form the complement of a face");
        }
    }
    let tau = ec.sigma().face_for(&p);
    let rays = ec.sigma().rays();
    let face_rays: Vec<usize> = (0..rays.len())
        .filter(|&i| tau.contains_point(&rays[i]))
        .collect();
    let idx = ec.stratum_index(&face_rays).expect("face of sigma");
    let rows: Vec<Vec<Q>> = finite.iter().map(|&i| to_q(&gens[i])).collect();
    let rhs: Vec<Q> = finite
        .iter()
        .map(|&i| values[i].finite().cloned().unwrap_or_default())
        .collect();
    let w = if rows.is_empty() {
        vec![Q::zero(); r]
    } else {
        match solve_q(&rows, &rhs, r) {
            Some(w) => w,
            None => return precondition("values violate a relation among the generators"),
        }
    };
    let pt = ExtendedPoint {
        stratum: idx,
        coords: ec.stratum(idx).project_q(&w),
    };
    Ok((ec, pt))
}

fn smallest_face_containing(c: &Cone, p: &[Z]) -> Cone {
    let tight: Vec<Vec<Z>> = c
        .facets()
        .iter()
        .filter(|f| dot_z(f, p).is_zero())
        .cloned()
        .collect();
    c.restrict(&[], &tight)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qvec, zvec};

    fn c(rays: &[&[i64]]) -> Cone {
        let r: Vec<_> = rays.iter().map(|x| zvec(x)).collect();
        Cone::from_generators(rays[0].len(), &r, &[])
    }

    #[test]
    fn strata_counts() {
        let e = ExtendedCone::new(&c(&[&[1, 0], &[1, 2]])).unwrap();
        assert_eq!(e.strata().len(), 4);
        assert_eq!(e.stratum(0).dim(), 2);
        assert_eq!(e.stratum(3).dim(), 0);
        assert_eq!(ExtendedCone::new(&c(&[&[1]])).unwrap().strata().len(), 2);
        let sq = c(&[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]);
        assert_eq!(ExtendedCone::new(&sq).unwrap().strata().len(), 10);
        assert!(ExtendedCone::new(&Cone::full(2)).is_err());
    }

    #[test]
    fn projection_and_evaluation() {
        let o = ExtendedCone::orthant(2);
        let x_axis = o.stratum_index(&[0]).unwrap();
        let p = o.project(&o.finite_point(&qvec(&[3, 4])), x_axis).unwrap();
        assert_eq!(p.coords, qvec(&[4]));
        assert_eq!(o.evaluate(&p, &zvec(&[1, 2])).unwrap(), ExtReal::Infinity);
        assert_eq!(
            o.evaluate(&p, &zvec(&[0, 2])).unwrap(),
            ExtReal::Finite(q(8))
        );
        let f = o.finite_point(&qvec(&[1, 1]));
        assert_eq!(
            o.evaluate(&f, &zvec(&[2, 1])).unwrap(),
            ExtReal::Finite(q(3))
        );
        assert!(o.in_interior(&f).unwrap());
        assert!(!o.in_interior(&o.finite_point(&qvec(&[1, 0]))).unwrap());
        let corner = ExtendedPoint {
            stratum: 3,
            coords: vec![],
        };
        assert!(o.in_interior(&corner).unwrap());
        let k = ExtendedCone::new(&c(&[&[1, 0], &[1, 2]])).unwrap();
        let ray = k.stratum_index(&[0]).unwrap();
        assert_eq!(k.stratum(ray).face, c(&[&[1, 2]]));
        let pr = k.project(&k.finite_point(&qvec(&[1, 2])), ray).unwrap();
        assert!(pr.coords.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn closure_of_a_diagonal_ray() {
        let o = ExtendedCone::orthant(2);
        let diag = c(&[&[1, 1]]);
        let corner = o.stratum_index(&[0, 1]).unwrap();
        assert!(o.closure_image(0, &diag, corner).is_some());
        assert!(o
            .closure_image(0, &diag, o.stratum_index(&[0]).unwrap())
            .is_none());
        let half = c(&[&[1, 0], &[1, 1]]);
        let img = o
            .closure_image(0, &half, o.stratum_index(&[0]).unwrap())
            .unwrap();
        assert_eq!(img, c(&[&[1]]));
    }

    #[test]
    fn weights_to_points() {
        let n2 = AffineSemigroup::orthant(2);
        let (_, p) =
            tropicalize_weights(&n2, &[ExtReal::Finite(q(2)), ExtReal::Finite(q(5))]).unwrap();
        assert_eq!((p.stratum, p.coords), (0, qvec(&[2, 5])));
        let (e, p) = tropicalize_weights(&n2, &[ExtReal::Infinity, ExtReal::Finite(q(1))]).unwrap();
        assert_eq!(e.stratum(p.stratum).face_rays, vec![0]);
        assert_eq!(p.coords, qvec(&[1]));
        let g = AffineSemigroup::from_i64(1, &[&[3], &[4], &[5]]).unwrap();
        let t = q(7);
        let vals: Vec<ExtReal> = [3, 4, 5]
            .iter()
            .map(|k| ExtReal::Finite(q(*k) * &t))
            .collect();
        let (_, p) = tropicalize_weights(&g, &vals).unwrap();
        assert_eq!(p.coords, vec![t]);
        let bad = [
            ExtReal::Finite(q(3)),
            ExtReal::Finite(q(3)),
            ExtReal::Finite(q(5)),
        ];
        assert!(tropicalize_weights(&g, &bad).is_err());
        let half = [
            ExtReal::Infinity,
            ExtReal::Finite(q(3)),
            ExtReal::Finite(q(5)),
        ];
        assert!(tropicalize_weights(&g, &half).is_err());
    }
}
