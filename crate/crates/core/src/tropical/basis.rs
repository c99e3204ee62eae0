//! Tropical bases: the universal standard basis of a Gröbner fan, completed by elements whose
//! initial forms are monomials times units wherever the initial ideal contains a monomial.

use num_traits::{One, Zero};

use crate::arith::{to_q, Q, Z};
use crate::error::{precondition, Error, Result};
use crate::ideal::{gb_grevlex, saturate};
use crate::order::{initial_form, MonomialOrder};
use crate::poly::{exp_to_z, Exp, Poly};
use crate::polyhedral::{Cone, NewtonPolyhedron, PlSet};
use crate::standard::{lift, normal_form_global};

use super::fan::GroebnerFan;

const MAX_WITNESSES: usize = 64;

/// `Newton⊥(f)` inside the orthant: weights whose minimum on the Newton polyhedron is
/// attained at two or more vertices. The whole orthant for `f = 0`.
pub fn newton_perp(f: &Poly, n: usize) -> PlSet {
    if f.is_zero() {
        return PlSet::from_pieces(n, vec![Cone::orthant(n)]);
    }
    let pts: Vec<Vec<Z>> = f.support().iter().map(|e| exp_to_z(e)).collect();
    NewtonPolyhedron::new(&pts, &Cone::orthant(n))
        .expect("the orthant is a valid recession cone")
        .newton_cone()
}

/// Intersection of the Newton cones of all members.
pub fn newton_perp_all(fs: &[Poly], n: usize) -> PlSet {
    fs.iter()
        .fold(PlSet::from_pieces(n, vec![Cone::orthant(n)]), |acc, f| {
            if acc.is_empty() {
                acc
            } else {
                acc.intersect(&newton_perp(f, n))
            }
        })
}

/// Whether `f = unit * monomial` in the power series ring.
pub fn is_unit_monomial(f: &Poly) -> bool {
    !f.is_zero() && !f.remove_content_monomial().constant_term().is_zero()
}

fn wdeg(e: &[u32], w: &[Z]) -> Z {
    e.iter().zip(w).map(|(a, b)| b * Z::from(*a)).sum()
}

/// An element of the ideal whose `w`-initial form is a unit times a monomial, built from an
/// initial ideal that contains a monomial. `fan.elements()` must be a standard basis for an
/// order refining `w`.
pub(crate) fn witness(fan: &GroebnerFan, w: &[Z]) -> Result<Poly> {
    let n = fan.nvars();
    let wq = to_q(w);
    let u = fan.elements();
    let jgens: Vec<Poly> = u.iter().map(|p| initial_form(p, &wq)).collect();
    let all: Vec<usize> = (0..n).collect();
    let sat = saturate(&jgens, n, &all);
    let Some(s) = sat.iter().find(|p| !p.constant_term().is_zero()) else {
        return precondition("the initial ideal contains no monomial");
    };
    let s0 = s.filter_terms(|e| wdeg(e, w).is_zero());
    let grevlex = MonomialOrder::global_grevlex(n);
    let gb = gb_grevlex(&jgens, n);
    let member = |p: &Poly| normal_form_global(p, &gb, &grevlex).is_zero();
    let one = Q::one();
    let mut k = 0u32;
    let mut m: Exp = vec![0; n];
    while !member(&s0.mul_term(&m, &one)) {
        k += 1;
        if k > 256 {
            return Err(Error::Limit(
                "no monomial multiple found in the initial ideal".into(),
            ));
        }
        m = vec![k; n];
    }
    for i in 0..n {
        while m[i] > 0 {
            m[i] -= 1;
            if !member(&s0.mul_term(&m, &one)) {
                m[i] += 1;
                break;
            }
        }
    }
    let g = s0.mul_term(&m, &one);
    let Some(h) = lift(&g, &jgens, &grevlex)? else {
        return precondition("monomial multiple is not in the initial ideal");
    };
    let dg = wdeg(&m, w);
    let mut f = Poly::zero(n);
    for (j, hj) in h.iter().enumerate() {
        let Some((e, _)) = jgens[j].terms().next() else {
            continue;
        };
        let dj = wdeg(e, w);
        let comp = hj.filter_terms(|t| wdeg(t, w) + &dj == dg);
        if !comp.is_zero() {
            f = f.add(&comp.mul(&u[j]));
        }
    }
    if initial_form(&f, &wq) != g {
        return Err(Error::Limit(
            "lifted witness has the wrong initial form".into(),
        ));
    }
    Ok(f.monic_at(&m))
}

/// A tropical basis: the universal basis of the fan plus witnesses for every cone whose
/// initial ideal contains a monomial that no member certifies.
pub fn tropical_basis_of_fan(fan: &GroebnerFan, free: &[bool]) -> Result<Vec<Poly>> {
    let n = fan.nvars();
    let mut members = fan.universal_basis();
    let bad: Vec<usize> = (0..free.len()).filter(|&i| !free[i]).collect();
    for _ in 0..MAX_WITNESSES {
        let t = newton_perp_all(&members, n);
        let hit = bad.iter().find_map(|&i| {
            let rho = &fan.cones()[i].cone;
            t.pieces().iter().find_map(|piece| {
                let k = piece.intersect(rho);
                let p = k.relint_point();
                rho.relint_contains(&p).then_some(p)
            })
        });
        let Some(w) = hit else {
            return Ok(members);
        };
        members.push(witness(fan, &w)?);
    }
    Err(Error::Limit("too many tropical witnesses".into()))
}
