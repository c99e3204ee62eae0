//! Local tropicalizations over the extended nonnegative orthant.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{Q, Z};
use crate::error::{precondition, Result};
use crate::extended::{ExtendedCone, ExtendedPlSet};
use crate::ideal::{global_membership, truncate_ideal};
use crate::order::MonomialOrder;
use crate::poly::Poly;
use crate::polyhedral::{Cone, PlSet};
use crate::standard::lift;

use super::basis::{newton_perp_all, tropical_basis_of_fan};
use super::fan::{groebner_fan, GroebnerFan};

/// What the truncated ideal looks like on one stratum.
#[derive(Clone, Debug)]
pub enum StratumKind {
    /// `I_tau = 0`: the whole stratum belongs to the tropicalization.
    Zero,
    /// `I_tau` contains a unit: nothing does.
    Unit,
    /// Gröbner fan of `I_tau` with a monomial-freeness flag per cone.
    Fan { fan: GroebnerFan, free: Vec<bool> },
}

#[derive(Clone, Debug)]
pub struct StratumData {
    /// Coordinates sent to infinity.
    pub face: Vec<usize>,
    /// Surviving coordinates, which are the stratum coordinates.
    pub kept: Vec<usize>,
    /// Generators of `I_tau` in the surviving variables.
    pub ideal: Vec<Poly>,
    pub kind: StratumKind,
}

/// Per-stratum data for an ideal of `K[[x_1, ..., x_n]]`.
#[derive(Clone, Debug)]
pub struct Engine {
    nvars: usize,
    gens: Vec<Poly>,
    ambient: ExtendedCone,
    strata: Vec<StratumData>,
}

impl Engine {
    pub fn new(gens: &[Poly], n: usize, seed: u64) -> Result<Engine> {
        if gens.iter().any(|g| g.nvars() != n) {
            return precondition("generators live in different rings");
        }
        let ambient = ExtendedCone::orthant(n);
        let strata = ambient
            .strata()
            .par_iter()
            .map(|s| {
                let (ideal, kept) = truncate_ideal(gens, n, &s.face_rays);
                let kind = if ideal.is_empty() {
                    StratumKind::Zero
                } else if ideal.iter().any(|g| !g.constant_term().is_zero()) {
                    StratumKind::Unit
                } else {
                    let fan = groebner_fan(&ideal, kept.len(), seed)?;
                    let free = fan.cones().par_iter().map(|c| c.monomial_free()).collect();
                    StratumKind::Fan { fan, free }
                };
                Ok(StratumData {
                    face: s.face_rays.clone(),
                    kept,
                    ideal,
                    kind,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Engine {
            nvars: n,
            gens: gens.to_vec(),
            ambient,
            strata,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn ambient(&self) -> &ExtendedCone {
        &self.ambient
    }

    /// Aligned with `ambient().strata()`.
    pub fn strata(&self) -> &[StratumData] {
        &self.strata
    }

    /// The Gröbner fan of the finite stratum, if the ideal is proper and nonzero.
    pub fn finite_fan(&self) -> Option<&GroebnerFan> {
        match &self.strata[0].kind {
            StratumKind::Fan { fan, .. } => Some(fan),
            _ => None,
        }
    }

    fn stratum_nntrop(&self, i: usize) -> PlSet {
        let d = &self.strata[i];
        let k = d.kept.len();
        match &d.kind {
            StratumKind::Zero => PlSet::from_pieces(k, vec![Cone::orthant(k)]),
            StratumKind::Unit => PlSet::empty(k),
            StratumKind::Fan { fan, free } => {
                let pieces = fan
                    .cones()
                    .iter()
                    .zip(free)
                    .filter(|(_, f)| **f)
                    .map(|(c, _)| c.cone.clone())
                    .collect();
                PlSet::from_pieces(k, pieces)
            }
        }
    }

    pub fn nntrop(&self) -> LocalTrop {
        let sets = (0..self.strata.len())
            .map(|i| self.stratum_nntrop(i))
            .collect();
        LocalTrop::from_nntrop(&self.ambient, ExtendedPlSet { strata: sets })
    }

    /// Tropical basis of the truncated ideal on stratum `i`, in its variables.
    pub fn stratum_tropical_basis(&self, i: usize) -> Result<Vec<Poly>> {
        let d = &self.strata[i];
        match &d.kind {
            StratumKind::Zero => Ok(vec![]),
            StratumKind::Unit => Ok(vec![d
                .ideal
                .iter()
                .find(|g| !g.constant_term().is_zero())
                .expect("unit stratum has a generator with a constant term")
                .clone()]),
            StratumKind::Fan { fan, free } => tropical_basis_of_fan(fan, free),
        }
    }

    pub fn tropical_basis(&self) -> Result<Vec<Poly>> {
        self.stratum_tropical_basis(0)
    }

    /// Elements of the ideal whose truncations to every stratum contain a tropical basis of
    /// the truncated ideal.
    pub fn extended_tropical_basis(&self) -> Result<Vec<Poly>> {
        let n = self.nvars;
        let grevlex_cache: Vec<MonomialOrder> =
            (0..=n).map(MonomialOrder::global_grevlex).collect();
        let mut out: Vec<Poly> = Vec::new();
        for (i, d) in self.strata.iter().enumerate() {
            let tb = self.stratum_tropical_basis(i)?;
            let slots = &d.kept;
            let trunc: Vec<Poly> = self
                .gens
                .iter()
                .map(|g| g.truncate(&d.face).drop_vars(&d.face))
                .collect();
            for t in tb {
                if d.kept.is_empty() {
                    let g = self
                        .gens
                        .iter()
                        .find(|g| !g.constant_term().is_zero())
                        .expect("a nonzero constant truncation comes from a generator");
                    out.push(g.clone());
                    continue;
                }
                let Some(cof) = lift(&t, &trunc, &grevlex_cache[slots.len()])? else {
                    return Err(crate::Error::Limit(
                        "stratum basis element not in the truncated ideal".into(),
                    ));
                };
                let mut f = Poly::zero(n);
                for (c, g) in cof.iter().zip(&self.gens) {
                    if !c.is_zero() {
                        f = f.add(&c.embed(n, slots).mul(g));
                    }
                }
                out.push(f);
            }
        }
        out.extend(self.gens.iter().filter(|g| !g.is_zero()).cloned());
        Ok(super::fan::sorted_polys(out))
    }
}

/// One entry of the closure incidence: piece `piece` of stratum `from` reaches stratum `to`
/// in the cone `image`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub from: usize,
    pub piece: usize,
    pub to: usize,
    pub image: Cone,
}

#[derive(Clone, Debug)]
pub struct LocalTrop {
    pub ambient: ExtendedCone,
    pub nntrop: ExtendedPlSet,
    /// Closures of the parts of each stratum lying in the interior of the extended cone.
    pub ptrop: ExtendedPlSet,
    pub closure_incidence: Vec<Incidence>,
}

impl LocalTrop {
    pub fn from_nntrop(ambient: &ExtendedCone, nntrop: ExtendedPlSet) -> LocalTrop {
        let ptrop = interior_part(ambient, &nntrop);
        let closure_incidence = incidence(ambient, &nntrop);
        LocalTrop {
            ambient: ambient.clone(),
            nntrop,
            ptrop,
            closure_incidence,
        }
    }

    pub fn finite_part(&self) -> &PlSet {
        &self.ptrop.strata[0]
    }

    /// Whether the strictly positive weight lies in the positive tropicalization.
    pub fn ptrop_contains(&self, w: &[Q]) -> bool {
        self.ptrop.strata[0].contains_point_q(w)
    }
}

/// Pieces meeting the interior: their relative-interior points lie in the relative interior
/// of the projected cone of their stratum.
pub fn interior_part(ec: &ExtendedCone, set: &ExtendedPlSet) -> ExtendedPlSet {
    let strata = set
        .strata
        .iter()
        .zip(ec.strata())
        .map(|(ps, s)| {
            let keep = ps
                .pieces()
                .iter()
                .filter(|p| s.projected.relint_contains(&p.relint_point()))
                .cloned()
                .collect();
            PlSet::from_pieces(ps.ambient_dim(), keep)
        })
        .collect();
    ExtendedPlSet { strata }
}

fn incidence(ec: &ExtendedCone, set: &ExtendedPlSet) -> Vec<Incidence> {
    let mut out = Vec::new();
    for (from, ps) in set.strata.iter().enumerate() {
        for (k, piece) in ps.pieces().iter().enumerate() {
            for to in 0..ec.strata().len() {
                if let Some(image) = ec.closure_image(from, piece, to) {
                    out.push(Incidence {
                        from,
                        piece: k,
                        to,
                        image,
                    });
                }
            }
        }
    }
    out
}

/// Nonnegative and positive local tropicalization through Gröbner fans of the truncations.
pub fn nntrop(gens: &[Poly], n: usize, seed: u64) -> Result<LocalTrop> {
    Ok(Engine::new(gens, n, seed)?.nntrop())
}

pub fn tropical_basis(gens: &[Poly], n: usize, seed: u64) -> Result<Vec<Poly>> {
    Engine::new(gens, n, seed)?.tropical_basis()
}

pub fn extended_tropical_basis(gens: &[Poly], n: usize, seed: u64) -> Result<Vec<Poly>> {
    Engine::new(gens, n, seed)?.extended_tropical_basis()
}

/// Per-stratum intersection of the Newton cones of the truncations of `fs`.
pub fn extended_newton_intersection(fs: &[Poly], n: usize) -> ExtendedPlSet {
    let ec = ExtendedCone::orthant(n);
    let strata = ec
        .strata()
        .iter()
        .map(|s| {
            let k = n - s.face_rays.len();
            let t: Vec<Poly> = fs
                .iter()
                .map(|f| f.truncate(&s.face_rays).drop_vars(&s.face_rays))
                .collect();
            if k == 0 {
                if t.iter().all(|c| c.is_zero()) {
                    PlSet::from_pieces(0, vec![Cone::orthant(0)])
                } else {
                    PlSet::empty(0)
                }
            } else {
                newton_perp_all(&t, k)
            }
        })
        .collect();
    ExtendedPlSet { strata }
}

/// The same sets computed as the intersection of the extended Newton cones of an extended
/// tropical basis.
pub fn nntrop_via_basis(gens: &[Poly], n: usize, seed: u64) -> Result<LocalTrop> {
    let eng = Engine::new(gens, n, seed)?;
    via_basis(&eng)
}

pub(crate) fn via_basis(eng: &Engine) -> Result<LocalTrop> {
    let b = eng.extended_tropical_basis()?;
    let set = extended_newton_intersection(&b, eng.nvars());
    Ok(LocalTrop::from_nntrop(eng.ambient(), set))
}

/// The extended Newton cone of a non-invertible series.
pub fn hypersurface_trop(f: &Poly) -> Result<LocalTrop> {
    if !f.constant_term().is_zero() {
        return precondition("the series is invertible");
    }
    let n = f.nvars();
    let ec = ExtendedCone::orthant(n);
    let set = extended_newton_intersection(std::slice::from_ref(f), n);
    Ok(LocalTrop::from_nntrop(&ec, set))
}

/// Outcome of comparing the positive tropicalization with the tropical variety of the
/// polynomial ideal on sampled positive weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalComparison {
    pub samples: usize,
    pub agreements: usize,
    pub in_both: usize,
    pub disagreements: Vec<Vec<Q>>,
}

impl GlobalComparison {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Strictly positive rational weights, alternating between random points and positive
/// combinations of the rays of the pieces of `set`.
pub fn sample_interior_weights(set: &PlSet, n: usize, count: usize, seed: u64) -> Vec<Vec<Q>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inner: Vec<&Cone> = set
        .pieces()
        .iter()
        .filter(|p| p.relint_point().iter().all(|x| *x > Z::zero()))
        .collect();
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        if k % 2 == 1 && !inner.is_empty() {
            let c = inner[rng.gen_range(0..inner.len())];
            let mut w = vec![Q::zero(); n];
            for r in c.rays() {
                let a = Q::from_integer(rng.gen_range(1i64..8).into());
                for (x, y) in w.iter_mut().zip(r) {
                    *x += &a * Q::from_integer(y.clone());
                }
            }
            out.push(w);
        } else {
            out.push(
                (0..n)
                    .map(|_| {
                        Q::new(
                            rng.gen_range(1i64..40).into(),
                            rng.gen_range(1i64..6).into(),
                        )
                    })
                    .collect(),
            );
        }
    }
    out
}

/// Checks `w ∈ ptrop` against membership in the tropical variety of the polynomial ideal.
pub fn compare_local_global(
    gens: &[Poly],
    trop: &LocalTrop,
    samples: usize,
    seed: u64,
) -> Result<GlobalComparison> {
    let n = trop.ambient.sigma().ambient_dim();
    let ws = sample_interior_weights(trop.finite_part(), n, samples, seed);
    let res: Vec<(bool, bool)> = ws
        .par_iter()
        .map(|w| Ok((trop.ptrop_contains(w), global_membership(gens, w)?)))
        .collect::<Result<_>>()?;
    let mut cmp = GlobalComparison {
        samples: ws.len(),
        agreements: 0,
        in_both: 0,
        disagreements: vec![],
    };
    for (w, (a, b)) in ws.into_iter().zip(res) {
        if a == b {
            cmp.agreements += 1;
            if a {
                cmp.in_both += 1;
            }
        } else {
            cmp.disagreements.push(w);
        }
    }
    Ok(cmp)
}

/// Every maximal piece of the finite part of the positive tropicalization has dimension `d`.
pub fn pure_dimension_check(trop: &LocalTrop, d: usize) -> bool {
    trop.finite_part().pure_dim() == Some(d)
}

/// Generators of `K[[Γ]]` elements given by exponents in `M ≅ Z^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaPoly {
    pub terms: Vec<(Vec<Z>, Q)>,
}

/// Finite part of the positive tropicalization of an ideal of `K[[Γ]]` for a pointed
/// semigroup, through a presentation by the toric ideal. Experimental.
pub fn gamma_ptrop_finite(
    gamma: &crate::semigroup::AffineSemigroup,
    gens: &[GammaPoly],
    seed: u64,
) -> Result<PlSet> {
    let s = gamma.generators().len();
    let r = gamma.rank();
    let mut lifted = crate::ideal::toric_ideal(gamma)?;
    for g in gens {
        let mut p = Poly::zero(s);
        for (e, c) in &g.terms {
            if e.len() != r {
                return crate::error::schema("exponent has the wrong length");
            }
            let Some(d) = gamma.decompose(e)? else {
                return precondition("exponent is not in the semigroup");
            };
            p.add_term(d, c.clone());
        }
        lifted.push(p);
    }
    let trop = nntrop(&lifted, s, seed)?;
    let a: Vec<Vec<Z>> = gamma.generators().to_vec();
    let sigma = gamma.sigma();
    let pieces = trop
        .finite_part()
        .pieces()
        .iter()
        .map(|c| c.preimage(&a, r).intersect(&sigma))
        .filter(|c| sigma.relint_contains(&c.relint_point()))
        .collect();
    Ok(PlSet::from_pieces(r, pieces))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ExtReal;
    use crate::arith::{q, qvec, zvec};
    use crate::ideal::extended_membership;
    use crate::order::initial_form;
    use crate::tropical::basis::is_unit_monomial;

    fn p(s: &str, n: usize) -> Poly {
        Poly::parse(s, n).unwrap()
    }

    fn ray(v: &[i64]) -> Cone {
        Cone::from_generators(v.len(), &[zvec(v)], &[])
    }

    fn bjsst() -> Vec<Poly> {
        [
            "x + y + z",
            "x^2*y + x*y^2",
            "x^2*z + x*z^2",
            "y^2*z + y*z^2",
        ]
        .iter()
        .map(|s| p(s, 3))
        .collect()
    }

    #[test]
    fn line_in_the_plane() {
        let t = nntrop(&[p("x + y", 2)], 2, 7).unwrap();
        let ec = &t.ambient;
        assert!(t.nntrop.strata[0].set_eq(&PlSet::from_pieces(2, vec![ray(&[1, 1])])));
        let e1 = ec.stratum_index(&[0]).unwrap();
        let e2 = ec.stratum_index(&[1]).unwrap();
        let corner = ec.stratum_index(&[0, 1]).unwrap();
        assert!(t.nntrop.strata[e1].is_empty());
        assert!(t.nntrop.strata[e2].is_empty());
        assert!(!t.nntrop.strata[corner].is_empty());
        assert!(t.ptrop.strata[corner].set_eq(&t.nntrop.strata[corner]));
        let v = nntrop_via_basis(&[p("x + y", 2)], 2, 7).unwrap();
        assert!(v.nntrop.set_eq(&t.nntrop));
        assert!(pure_dimension_check(&t, 1));
    }

    #[test]
    fn extnorm_hypersurface() {
        let f = p("x^3 + x^2*y + x^2*y^2 + x*y^3", 2);
        let h = hypersurface_trop(&f).unwrap();
        let ec = &h.ambient;
        let fin = PlSet::from_pieces(2, vec![ray(&[1, 1]), ray(&[2, 1])]);
        assert!(h.nntrop.strata[0].set_eq(&fin));
        let l1 = ec.stratum_index(&[0]).unwrap();
        let l2 = ec.stratum_index(&[1]).unwrap();
        let corner = ec.stratum_index(&[0, 1]).unwrap();
        assert!(h.nntrop.strata[l1].set_eq(&PlSet::from_pieces(1, vec![Cone::orthant(1)])));
        assert!(h.nntrop.strata[l2].is_empty());
        assert!(!h.nntrop.strata[corner].is_empty());
        let t = nntrop(&[f], 2, 3).unwrap();
        assert!(t.nntrop.set_eq(&h.nntrop));
        assert!(hypersurface_trop(&p("1 + x", 2)).is_err());
    }

    #[test]
    fn unit_ideal_is_empty() {
        let t = nntrop(&[p("1 + x", 2)], 2, 1).unwrap();
        assert!(t.nntrop.is_empty());
    }

    #[test]
    fn bjsst_basis_repairs_the_diagonal() {
        let tb = tropical_basis(&bjsst(), 3, 11).unwrap();
        let w = qvec(&[1, 1, 1]);
        assert!(tb.iter().any(|f| is_unit_monomial(&initial_form(f, &w))));
        let t = nntrop(&bjsst(), 3, 11).unwrap();
        assert!(!t.ptrop_contains(&w));
        let v = nntrop_via_basis(&bjsst(), 3, 11).unwrap();
        assert!(v.nntrop.set_eq(&t.nntrop));
        let c = compare_local_global(&bjsst(), &t, 20, 5).unwrap();
        assert!(c.agrees(), "{:?}", c.disagreements);
    }

    #[test]
    fn monomial_curve() {
        let gens = vec![p("x^3 - y*z", 3), p("y^2 - x*z", 3), p("z^2 - x^2*y", 3)];
        let t = nntrop(&gens, 3, 2).unwrap();
        assert!(t
            .finite_part()
            .set_eq(&PlSet::from_pieces(3, vec![ray(&[3, 4, 5])])));
        assert!(pure_dimension_check(&t, 1));
    }

    #[test]
    fn direct_membership_matches() {
        let gens = vec![p("x + y", 2)];
        let t = nntrop(&gens, 2, 1).unwrap();
        let fin = |a: i64, b: i64| vec![ExtReal::Finite(q(a)), ExtReal::Finite(q(b))];
        assert!(extended_membership(&gens, &fin(2, 2)).unwrap());
        assert!(!extended_membership(&gens, &fin(1, 2)).unwrap());
        assert!(!extended_membership(&gens, &[ExtReal::Infinity, ExtReal::Finite(q(1))]).unwrap());
        assert!(extended_membership(&gens, &[ExtReal::Infinity, ExtReal::Infinity]).unwrap());
        assert!(t.ptrop_contains(&qvec(&[2, 2])));
    }
}
