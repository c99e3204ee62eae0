//! Affine semigroups `Γ ⊂ Z^r` given by finite generating sets.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{dot_z, solve_q, to_q, Q, Z};
use crate::error::{schema, Error, Result};
use crate::lattice::{
    hnf_basis, in_lattice, reduce_mod_lattice, saturate_sublattice, smith_invariants, QuotientMap,
};
use crate::polyhedral::Cone;

/// Upper bound on lattice points scanned while enumerating a Hilbert basis.
const HILBERT_SCAN_LIMIT: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSemigroup {
    rank: usize,
    generators: Vec<Vec<Z>>,
}

/// A face `Γ ∩ τ^⊥` of the semigroup together with the face `τ` of `σ(Γ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupFace {
    pub tau: Cone,
    /// Indices of the generators lying on the face.
    pub generators: Vec<usize>,
}

/// The image of `Γ` in `M(Γ)/Γ*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitQuotient {
    /// Rank of the free part of `M(Γ)/Γ*`.
    pub free_rank: usize,
    /// Indices of the generators that are not units.
    pub kept: Vec<usize>,
    /// Free coordinates of the images of the kept generators.
    pub images: Vec<Vec<Z>>,
    /// Torsion residues of the images (canonical representatives in `sat(Γ*)/Γ*`).
    pub torsion_images: Vec<Vec<Z>>,
    /// Invariant factors greater than one of the torsion subgroup.
    pub torsion: Vec<Z>,
    pub has_torsion: bool,
}

fn coords_in(basis: &[Vec<Z>], x: &[Z], r: usize) -> Option<Vec<Z>> {
    let k = basis.len();
    let rows: Vec<Vec<Q>> = (0..r)
        .map(|j| {
            (0..k)
                .map(|i| Q::from_integer(basis[i][j].clone()))
                .collect()
        })
        .collect();
    let sol = solve_q(&rows, &to_q(x), k)?;
    if sol.iter().all(|c| c.is_integer()) {
        Some(sol.into_iter().map(|c| c.to_integer()).collect())
    } else {
        None
    }
}

fn from_coords(basis: &[Vec<Z>], c: &[Z], r: usize) -> Vec<Z> {
    let mut x = vec![Z::zero(); r];
    for (ci, b) in c.iter().zip(basis) {
        for (xi, bi) in x.iter_mut().zip(b) {
            *xi += ci * bi;
        }
    }
    x
}

impl AffineSemigroup {
    pub fn new(rank: usize, generators: Vec<Vec<Z>>) -> Result<AffineSemigroup> {
        if let Some(g) = generators.iter().find(|g| g.len() != rank) {
            return schema(format!(
                "generator of length {} in a semigroup of rank {rank}",
                g.len()
            ));
        }
        Ok(AffineSemigroup { rank, generators })
    }

    pub fn from_i64(rank: usize, gens: &[&[i64]]) -> Result<AffineSemigroup> {
        AffineSemigroup::new(
            rank,
            gens.iter()
                .map(|g| g.iter().map(|&x| Z::from(x)).collect())
                .collect(),
        )
    }

    /// `N^n` with its standard generators.
    pub fn orthant(n: usize) -> AffineSemigroup {
        let gens = (0..n)
            .map(|i| (0..n).map(|j| Z::from((i == j) as i64)).collect())
            .collect();
        AffineSemigroup {
            rank: n,
            generators: gens,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Vec<Z>] {
        &self.generators
    }

    /// Hermite basis of the group `M(Γ)` generated by `Γ`.
    pub fn generated_group(&self) -> Vec<Vec<Z>> {
        hnf_basis(&self.generators, self.rank)
    }

    /// The cone `σ̌(Γ)` spanned by the generators.
    pub fn cone(&self) -> Cone {
        Cone::from_generators(self.rank, &self.generators, &[])
    }

    /// The weight cone `σ(Γ)`, dual of `σ̌(Γ)`.
    pub fn sigma(&self) -> Cone {
        self.cone().dual()
    }

    fn unit_generator_indices(&self, cone: &Cone) -> Vec<usize> {
        // a generator is a unit iff it lies in the lineality space of the cone
        (0..self.generators.len())
            .filter(|&i| {
                let g = &self.generators[i];
                cone.facets().iter().all(|f| dot_z(f, g).is_zero())
            })
            .filter(|&i| self.generators[i].iter().any(|x| !x.is_zero()))
            .collect()
    }

    /// Hermite basis of the unit group `Γ*`.
    pub fn units(&self) -> Vec<Vec<Z>> {
        let c = self.cone();
        let u: Vec<Vec<Z>> = self
            .unit_generator_indices(&c)
            .into_iter()
            .map(|i| self.generators[i].clone())
            .collect();
        if u.is_empty() {
            return vec![];
        }
        hnf_basis(&u, self.rank)
    }

    pub fn is_pointed(&self) -> bool {
        self.units().is_empty()
    }

    /// Membership `x ∈ Γ`, by a depth-first search over coefficient vectors of the non-unit
    /// generators bounded through a strictly positive grading, then a lattice test for the
    /// remaining unit part.
    pub fn contains(&self, x: &[Z]) -> Result<bool> {
        if x.len() != self.rank {
            return schema("point has the wrong length");
        }
        let m = self.generated_group();
        if !in_lattice(x, &m) {
            return Ok(false);
        }
        let cone = self.cone();
        if !cone.contains_point(x) {
            return Ok(false);
        }
        let units = self.units();
        let unit_idx = self.unit_generator_indices(&cone);
        let grading = cone.dual().relint_point();
        let others: Vec<(Vec<Z>, Z)> = (0..self.generators.len())
            .filter(|i| !unit_idx.contains(i))
            .map(|i| {
                let g = self.generators[i].clone();
                let d = dot_z(&grading, &g);
                (g, d)
            })
            .filter(|(_, d)| d.is_positive())
            .collect();
        let target = dot_z(&grading, x);
        let mut budget: u64 = 5_000_000;
        let found = dfs_member(x, &others, 0, &target, &units, &mut budget);
        if budget == 0 && !found {
            return Err(Error::Limit("semigroup membership search exhausted".into()));
        }
        Ok(found)
    }

    /// Hilbert basis of the saturation `σ̌(Γ) ∩ M(Γ)`. For non-pointed saturations the basis
    /// consists of a lattice basis of the units, its negatives, and canonical lifts of the
    /// Hilbert basis of the pointed quotient.
    pub fn saturation(&self) -> Result<Vec<Vec<Z>>> {
        let r = self.rank;
        let mb = self.generated_group();
        let k = mb.len();
        if k == 0 {
            return Ok(vec![]);
        }
        let gc: Vec<Vec<Z>> = self
            .generators
            .iter()
            .map(|g| coords_in(&mb, g, r).expect("generator lies in M(Γ)"))
            .collect();
        let cone = Cone::from_generators(k, &gc, &[]);
        let lin = if cone.lineality().is_empty() {
            vec![]
        } else {
            saturate_sublattice(cone.lineality(), k)
        };
        let qm = QuotientMap::new(&lin, k);
        let qgens: Vec<Vec<Z>> = gc.iter().map(|g| qm.project(g)).collect();
        let qcone = Cone::from_generators(qm.quotient_rank(), &qgens, &[]);
        let hb_q = hilbert_basis_pointed(&qcone)?;
        let mut out: Vec<Vec<Z>> = Vec::new();
        for h in &hb_q {
            out.push(from_coords(&mb, &qm.lift(h), r));
        }
        for l in &lin {
            let v = from_coords(&mb, l, r);
            out.push(v.iter().map(|x| -x).collect());
            out.push(v);
        }
        out.sort_by(|a, b| b.cmp(a));
        out.dedup();
        Ok(out)
    }

    pub fn is_saturated(&self) -> Result<bool> {
        for h in self.saturation()? {
            if !self.contains(&h)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The semigroup `Γ/Γ*` inside `M(Γ)/Γ*`.
    pub fn quotient_by_units(&self) -> Result<UnitQuotient> {
        let r = self.rank;
        let mb = self.generated_group();
        let k = mb.len();
        let cone = self.cone();
        let unit_idx = self.unit_generator_indices(&cone);
        let units = self.units();
        let uc: Vec<Vec<Z>> = units
            .iter()
            .map(|u| coords_in(&mb, u, r).expect("unit lies in M(Γ)"))
            .collect();
        let sat = if uc.is_empty() {
            vec![]
        } else {
            saturate_sublattice(&uc, k)
        };
        let qm = QuotientMap::new(&sat, k);
        // Γ* expressed in the adapted basis of its saturation
        let rel: Vec<Vec<Z>> = uc.iter().map(|u| qm.sub_coords(u)).collect();
        let rel_h = if rel.is_empty() {
            vec![]
        } else {
            hnf_basis(&rel, sat.len())
        };
        let torsion: Vec<Z> = if rel.is_empty() {
            vec![]
        } else {
            smith_invariants(&rel, sat.len())
                .into_iter()
                .filter(|d| !d.is_one())
                .collect()
        };
        let kept: Vec<usize> = (0..self.generators.len())
            .filter(|i| !unit_idx.contains(i) && self.generators[*i].iter().any(|x| !x.is_zero()))
            .collect();
        let mut images = Vec::new();
        let mut torsion_images = Vec::new();
        for &i in &kept {
            let c = coords_in(&mb, &self.generators[i], r).expect("generator lies in M(Γ)");
            images.push(qm.project(&c));
            let s = qm.sub_coords(&c);
            torsion_images.push(if rel_h.is_empty() {
                s
            } else {
                reduce_mod_lattice(&s, &rel_h)
            });
        }
        Ok(UnitQuotient {
            free_rank: qm.quotient_rank(),
            kept,
            images,
            torsion_images,
            has_torsion: !torsion.is_empty(),
            torsion,
        })
    }

    /// Faces of `Γ`, one per face `τ` of `σ(Γ)`, ordered by the dimension of `τ`.
    pub fn faces(&self) -> Vec<SemigroupFace> {
        let sigma = self.sigma();
        sigma
            .faces()
            .into_iter()
            .map(|tau| {
                let generators = (0..self.generators.len())
                    .filter(|&i| {
                        let g = &self.generators[i];
                        tau.rays().iter().all(|t| dot_z(t, g).is_zero())
                            && tau.lineality().iter().all(|t| dot_z(t, g).is_zero())
                    })
                    .collect();
                SemigroupFace { tau, generators }
            })
            .collect()
    }

    /// A representation `x = Σ c_i γ_i` with `c_i ∈ N`, if one exists.
    pub fn decompose(&self, x: &[Z]) -> Result<Option<Vec<u32>>> {
        if !self.is_pointed() {
            return Err(Error::Precondition(
                "decomposition requires a pointed semigroup".into(),
            ));
        }
        let grading = self.sigma().relint_point();
        let degs: Vec<Z> = self.generators.iter().map(|g| dot_z(&grading, g)).collect();
        if degs.iter().any(|d| !d.is_positive()) {
            return Err(Error::Precondition(
                "zero generator in a pointed semigroup".into(),
            ));
        }
        let mut coeffs = vec![0u32; self.generators.len()];
        let mut budget: u64 = 5_000_000;
        let ok = dfs_decompose(
            x,
            &self.generators,
            &degs,
            &grading,
            0,
            &mut coeffs,
            &mut budget,
        );
        Ok(ok.then_some(coeffs))
    }
}

fn dfs_member(
    rest: &[Z],
    gens: &[(Vec<Z>, Z)],
    i: usize,
    target: &Z,
    units: &[Vec<Z>],
    budget: &mut u64,
) -> bool {
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    if i == gens.len() {
        return target.is_zero()
            && if units.is_empty() {
                rest.iter().all(|x| x.is_zero())
            } else {
                in_lattice(rest, units)
            };
    }
    let (g, d) = &gens[i];
    let maxc = (target / d).to_i64().unwrap_or(i64::MAX);
    let mut cur = rest.to_vec();
    let mut t = target.clone();
    for c in 0..=maxc {
        if c > 0 {
            for (a, b) in cur.iter_mut().zip(g) {
                *a -= b;
            }
            t -= d;
        }
        if dfs_member(&cur, gens, i + 1, &t, units, budget) {
            return true;
        }
        if *budget == 0 {
            return false;
        }
    }
    false
}

fn dfs_decompose(
    rest: &[Z],
    gens: &[Vec<Z>],
    degs: &[Z],
    grading: &[Z],
    i: usize,
    coeffs: &mut [u32],
    budget: &mut u64,
) -> bool {
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    if i == gens.len() {
        return rest.iter().all(|x| x.is_zero());
    }
    let mut cur = rest.to_vec();
    let mut t = dot_z(grading, rest);
    let mut c = 0u32;
    while !t.is_negative() {
        coeffs[i] = c;
        if dfs_decompose(&cur, gens, degs, grading, i + 1, coeffs, budget) {
            return true;
        }
        for (a, b) in cur.iter_mut().zip(&gens[i]) {
            *a -= b;
        }
        t -= &degs[i];
        c += 1;
    }
    coeffs[i] = 0;
    false
}

/// Hilbert basis of `C ∩ Z^d` for a pointed cone `C` spanning `R^d`: lattice points of the
/// half-open parallelepipeds over linearly independent subsets of rays, reduced to the
/// irreducible ones.
fn hilbert_basis_pointed(cone: &Cone) -> Result<Vec<Vec<Z>>> {
    let d = cone.ambient_dim();
    let rays = cone.rays().to_vec();
    if rays.is_empty() {
        return Ok(vec![]);
    }
    let mut cand: std::collections::BTreeSet<Vec<Z>> = rays.iter().cloned().collect();
    let mut scanned: u64 = 0;
    for subset in combinations(rays.len(), d) {
        let sub: Vec<&Vec<Z>> = subset.iter().map(|&i| &rays[i]).collect();
        let rows: Vec<Vec<Q>> = (0..d)
            .map(|j| sub.iter().map(|r| Q::from_integer(r[j].clone())).collect())
            .collect();
        if crate::arith::rank_q(&rows, d) < d {
            continue;
        }
        let lo: Vec<Z> = (0..d)
            .map(|j| sub.iter().map(|r| r[j].clone().min(Z::zero())).sum())
            .collect();
        let hi: Vec<Z> = (0..d)
            .map(|j| sub.iter().map(|r| r[j].clone().max(Z::zero())).sum())
            .collect();
        let mut size: u64 = 1;
        for (a, b) in lo.iter().zip(&hi) {
            size = size.saturating_mul((b - a + Z::one()).to_u64().unwrap_or(u64::MAX));
        }
        scanned = scanned.saturating_add(size);
        if scanned > HILBERT_SCAN_LIMIT {
            return Err(Error::Limit("Hilbert basis enumeration too large".into()));
        }
        let mut x = lo.clone();
        loop {
            if x.iter().any(|v| !v.is_zero()) {
                if let Some(l) = solve_q(&rows, &to_q(&x), d) {
                    if l.iter().all(|c| !c.is_negative() && c < &Q::one()) {
                        cand.insert(x.clone());
                    }
                }
            }
            let mut j = 0;
            while j < d {
                if x[j] < hi[j] {
                    x[j] += 1;
                    break;
                }
                x[j] = lo[j].clone();
                j += 1;
            }
            if j == d {
                break;
            }
        }
    }
    let cand: Vec<Vec<Z>> = cand.into_iter().collect();
    let mut hb: Vec<Vec<Z>> = cand
        .iter()
        .filter(|x| {
            !cand.iter().any(|y| {
                y != *x && {
                    let diff: Vec<Z> = x.iter().zip(y).map(|(a, b)| a - b).collect();
                    diff.iter().any(|v| !v.is_zero()) && cone.contains_point(&diff)
                }
            })
        })
        .cloned()
        .collect();
    hb.sort_by(|a, b| b.cmp(a));
    Ok(hb)
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::zvec;

    fn sg(gens: &[&[i64]]) -> AffineSemigroup {
        AffineSemigroup::from_i64(gens[0].len(), gens).unwrap()
    }

    #[test]
    fn numerical_semigroup_two_three() {
        let g = sg(&[&[2], &[3]]);
        assert_eq!(g.generated_group(), vec![zvec(&[1])]);
        assert_eq!(g.saturation().unwrap(), vec![zvec(&[1])]);
        assert!(g.is_pointed());
        assert!(!g.is_saturated().unwrap());
        assert!(!g.contains(&zvec(&[1])).unwrap());
        assert!(g.contains(&zvec(&[7])).unwrap());
    }

    #[test]
    fn membership_with_units() {
        let g = sg(&[&[2, 1], &[5, 2], &[0, 3], &[0, -3]]);
        assert!(g.contains(&zvec(&[10, 4])).unwrap());
        assert!(g.contains(&zvec(&[10, -2])).unwrap());
        assert!(!g.contains(&zvec(&[0, 1])).unwrap());
        assert!(!g.contains(&zvec(&[-1, 0])).unwrap());
    }

    #[test]
    fn hilbert_basis_of_planar_cone() {
        // M(Γ) has index two here, so (1,1) is not in the saturation
        let g = sg(&[&[1, 0], &[1, 2]]);
        assert_eq!(g.saturation().unwrap(), vec![zvec(&[1, 2]), zvec(&[1, 0])]);
        assert!(g.is_saturated().unwrap());
        let h = sg(&[&[1, 0], &[1, 2], &[3, 5]]);
        let hb = h.saturation().unwrap();
        assert_eq!(hb, vec![zvec(&[1, 2]), zvec(&[1, 1]), zvec(&[1, 0])]);
        assert!(!h.is_saturated().unwrap());
        let g2 = sg(&[&[1, 0], &[1, 1], &[1, 2]]);
        assert!(g2.is_saturated().unwrap());
        assert_eq!(g2.faces().len(), 4);
    }

    #[test]
    fn decompose_pointed() {
        let g = sg(&[&[3], &[4], &[5]]);
        let c = g.decompose(&zvec(&[11])).unwrap().unwrap();
        let s: u32 = c[0] * 3 + c[1] * 4 + c[2] * 5;
        assert_eq!(s, 11);
        assert!(g.decompose(&zvec(&[2])).unwrap().is_none());
    }
}
