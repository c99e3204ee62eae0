//! Local Gröbner fans inside the nonnegative orthant.
//!
//! The fan is built from a growing set `U` of ideal elements: the common refinement of the
//! normal fans of their Newton polyhedra is computed, a standard basis is taken at an interior
//! weight of each maximal cone, and any element whose leading monomial is missing from the
//! leading ideal of `U` is added. At the fixed point `U` is a standard basis for the orders of
//! every maximal cone, and initial forms of `U` generate the initial ideal on every cone.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{to_i64, to_q, Z};
use crate::error::{precondition, Result};
use crate::ideal::monomial_free;
use crate::order::{initial_form, MonomialOrder};
use crate::poly::{exp_divides, exp_to_z, Poly};
use crate::polyhedral::{Cone, Fan, NewtonPolyhedron};
use crate::standard::{minimal_monomials, standard_basis, MarkedPoly};

const MAX_ROUNDS: usize = 32;

/// A cone of a local Gröbner fan with the data that is constant on its relative interior.
#[derive(Clone, Debug)]
pub struct GroebnerCone {
    pub cone: Cone,
    /// The relative-interior point used for the computations.
    pub weight: Vec<Z>,
    /// Elements of the fan's basis forming a minimal standard basis for an order refining
    /// `weight`, marked at their leading terms.
    pub basis: Vec<MarkedPoly>,
    /// Generators of the initial ideal at every relative-interior weight.
    pub initial_forms: Vec<Poly>,
    /// True when some marked initial form has more than one term.
    pub perturbed: bool,
}

impl GroebnerCone {
    pub fn monomial_free(&self) -> bool {
        monomial_free(&self.initial_forms, self.cone.ambient_dim())
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerFan {
    nvars: usize,
    fan: Fan,
    cones: Vec<GroebnerCone>,
    elements: Vec<Poly>,
}

impl GroebnerFan {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    /// Aligned with `fan().cones()`.
    pub fn cones(&self) -> &[GroebnerCone] {
        &self.cones
    }

    /// The set `U` at the fixed point.
    pub fn elements(&self) -> &[Poly] {
        &self.elements
    }

    pub fn maximal_indices(&self) -> Vec<usize> {
        let max: BTreeSet<Cone> = self.fan.maximal_cones().into_iter().collect();
        (0..self.cones.len())
            .filter(|&i| max.contains(&self.cones[i].cone))
            .collect()
    }

    /// Union of the minimal standard bases of the maximal cones, in a fixed order.
    pub fn universal_basis(&self) -> Vec<Poly> {
        let mut set: BTreeSet<Poly> = BTreeSet::new();
        for i in self.maximal_indices() {
            for m in &self.cones[i].basis {
                set.insert(m.poly.clone());
            }
        }
        sorted_polys(set.into_iter().collect())
    }

    /// Index of the cone whose relative interior contains `w`.
    pub fn locate(&self, w: &[Z]) -> Option<usize> {
        self.cones.iter().position(|c| c.cone.relint_contains(w))
    }
}

pub(crate) fn sorted_polys(mut v: Vec<Poly>) -> Vec<Poly> {
    v.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then(a.len().cmp(&b.len()))
            .then(a.cmp(b))
    });
    v.dedup();
    v
}

/// A fixed pseudo-random interior weight.
pub fn generic_weight(n: usize, seed: u64) -> Vec<Z> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| Z::from(rng.gen_range(1000i64..2000)))
        .collect()
}

/// The local order comparing by each weight in turn, then by the tie-break.
pub fn order_from_weights(ws: &[&[Z]]) -> Result<MonomialOrder> {
    let n = ws.first().map(|w| w.len()).unwrap_or(0);
    let rows: Vec<Vec<i64>> = ws
        .iter()
        .map(|w| w.iter().map(to_i64).collect::<Result<Vec<i64>>>())
        .collect::<Result<_>>()?;
    Ok(MonomialOrder::from_int_rows(n, rows))
}

fn newton_fan(p: &Poly, n: usize) -> Result<Fan> {
    let pts: Vec<Vec<Z>> = p.support().iter().map(|e| exp_to_z(e)).collect();
    Ok(NewtonPolyhedron::new(&pts, &Cone::orthant(n))?.normal_fan())
}

fn missing_elements(gens: &[Poly], u: &[Poly], w: &[Z]) -> Result<Vec<Poly>> {
    let ord = order_from_weights(&[w])?;
    let lm_u: Vec<_> = u.iter().filter_map(|p| ord.leading_exp(p)).collect();
    let b = standard_basis(gens, &ord)?;
    Ok(b.elements
        .into_iter()
        .filter(|m| !lm_u.iter().any(|l| exp_divides(l, &m.marked)))
        .map(|m| m.poly)
        .collect())
}

/// Minimal subset of `u` whose leading monomials generate the leading ideal of `u`.
fn minimal_subset(u: &[Poly], ord: &MonomialOrder) -> Vec<MarkedPoly> {
    let lms: Vec<_> = u
        .iter()
        .map(|p| ord.leading_exp(p).expect("nonzero"))
        .collect();
    let mins = minimal_monomials(&lms);
    let mut out = Vec::new();
    for m in mins {
        let i = (0..u.len())
            .find(|&i| lms[i] == m)
            .expect("minimal monomial comes from u");
        out.push(MarkedPoly {
            poly: u[i].monic_at(&lms[i]),
            marked: lms[i].clone(),
        });
    }
    out.sort_by(|a, b| ord.cmp(&a.marked, &b.marked));
    out
}

/// The local Gröbner fan of the ideal generated by `gens` in `n` variables.
pub fn groebner_fan(gens: &[Poly], n: usize, seed: u64) -> Result<GroebnerFan> {
    if gens.iter().any(|g| g.nvars() != n) {
        return precondition("generators live in different rings");
    }
    let gens: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let orth = Cone::orthant(n);
    if gens.is_empty() {
        let fan = Fan::from_maximal(n, &[orth]);
        let cones = fan
            .cones()
            .iter()
            .map(|c| GroebnerCone {
                cone: c.clone(),
                weight: c.relint_point(),
                basis: vec![],
                initial_forms: vec![],
                perturbed: false,
            })
            .collect();
        return Ok(GroebnerFan {
            nvars: n,
            fan,
            cones,
            elements: vec![],
        });
    }
    let w0 = generic_weight(n, seed);
    let mut u: Vec<Poly> = standard_basis(&gens, &order_from_weights(&[&w0])?)?.polys();
    let mut rounds = 0;
    let sigma = loop {
        rounds += 1;
        let fans: Vec<Fan> = u
            .par_iter()
            .map(|p| newton_fan(p, n))
            .collect::<Result<_>>()?;
        let sigma = Fan::common_refinement(&fans, &orth)?;
        let maximal = sigma.maximal_cones();
        let adds: Vec<Vec<Poly>> = maximal
            .par_iter()
            .map(|c| missing_elements(&gens, &u, &c.relint_point()))
            .collect::<Result<_>>()?;
        let mut new: BTreeSet<Poly> = BTreeSet::new();
        for a in adds.into_iter().flatten() {
            if !u.contains(&a) {
                new.insert(a);
            }
        }
        if new.is_empty() {
            break sigma;
        }
        if rounds >= MAX_ROUNDS {
            return Err(crate::Error::Limit(
                "Gröbner fan refinement did not stabilize".into(),
            ));
        }
        u.extend(new);
    };
    let maximal = sigma.maximal_cones();
    let cones: Vec<GroebnerCone> = sigma
        .cones()
        .par_iter()
        .map(|c| {
            let w = c.relint_point();
            let outer = maximal
                .iter()
                .find(|m| m.contains(c))
                .expect("fan cone lies in a maximal cone");
            let wc = outer.relint_point();
            let ord = order_from_weights(&[&w, &wc])?;
            let wq = to_q(&w);
            let mut inits: Vec<Poly> = u.iter().map(|p| initial_form(p, &wq)).collect();
            inits.sort();
            inits.dedup();
            let basis = minimal_subset(&u, &ord);
            let perturbed = basis.iter().any(|m| initial_form(&m.poly, &wq).len() > 1);
            Ok(GroebnerCone {
                cone: c.clone(),
                weight: w,
                basis,
                initial_forms: inits,
                perturbed,
            })
        })
        .collect::<Result<_>>()?;
    Ok(GroebnerFan {
        nvars: n,
        fan: sigma,
        cones,
        elements: sorted_polys(u),
    })
}

/// The closed cone of weights sharing the marked initial terms of the standard basis at `w`.
pub fn groebner_cone(gens: &[Poly], w: &[Z]) -> Result<GroebnerCone> {
    let n = w.len();
    if w.iter().any(|x| x.sign() != num_bigint::Sign::Plus) {
        return precondition("weight must be strictly positive");
    }
    let ord = order_from_weights(&[w])?;
    let nz: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let b = standard_basis(&nz, &ord)?;
    let mut ineqs: Vec<Vec<Z>> = Vec::new();
    for m in &b.elements {
        for e in m.poly.support() {
            if e != m.marked {
                ineqs.push(
                    e.iter()
                        .zip(&m.marked)
                        .map(|(a, b)| Z::from(*a as i64 - *b as i64))
                        .collect(),
                );
            }
        }
    }
    let cone = Cone::orthant(n).restrict(&ineqs, &[]);
    let wq = to_q(w);
    let initial_forms: Vec<Poly> = b
        .elements
        .iter()
        .map(|m| initial_form(&m.poly, &wq))
        .collect();
    let perturbed = initial_forms.iter().any(|p| p.len() > 1);
    Ok(GroebnerCone {
        cone,
        weight: w.to_vec(),
        basis: b.elements,
        initial_forms,
        perturbed,
    })
}
