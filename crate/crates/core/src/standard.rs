//! Normal forms and standard bases: Mora's tangent cone algorithm for local (and mixed)
//! orders, Buchberger's algorithm for global ones. Both can carry representations of every
//! element in terms of the input.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::arith::Q;
use crate::error::{precondition, Result};
use crate::order::MonomialOrder;
use crate::poly::{exp_deg, exp_divides, exp_lcm, exp_sub, Exp, Poly};

/// Steps spent on paper-style divisor selection before switching to the ecart rule.
const LIST_ORDER_STEPS: usize = 64;
/// Budget for reducing non-leading terms, which need not terminate for local orders.
const TAIL_STEPS: usize = 400;

#[derive(Clone, Debug)]
struct Elem {
    poly: Poly,
    lm: Exp,
    lc: Q,
    ecart: u32,
    rep: Vec<Poly>,
}

impl Elem {
    fn new(poly: Poly, rep: Vec<Poly>, ord: &MonomialOrder) -> Elem {
        let mut e = Elem {
            poly,
            lm: vec![],
            lc: Q::zero(),
            ecart: 0,
            rep,
        };
        e.refresh(ord);
        e
    }

    fn refresh(&mut self, ord: &MonomialOrder) {
        match ord.leading(&self.poly) {
            Some((lm, lc)) => {
                self.ecart = self.poly.degree().unwrap_or(0) - exp_deg(&lm);
                self.lm = lm;
                self.lc = lc;
            }
            None => {
                self.lm = vec![];
                self.lc = Q::zero();
                self.ecart = 0;
            }
        }
    }

    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// `self -= c * x^a * other`, on the polynomial and on its representation.
    fn sub_mul(&mut self, other: &Elem, a: &[u32], c: &Q, ord: &MonomialOrder) {
        self.poly.sub_mul_term(&other.poly, a, c);
        for (r, s) in self.rep.iter_mut().zip(&other.rep) {
            r.sub_mul_term(s, a, c);
        }
        self.refresh(ord);
    }

    /// Cancels the leading term against `other`, whose leading monomial divides it.
    fn reduce_by(&mut self, other: &Elem, ord: &MonomialOrder) {
        let a = exp_sub(&self.lm, &other.lm);
        let c = &self.lc / &other.lc;
        self.sub_mul(other, &a, &c, ord);
    }

    fn scale(&mut self, c: &Q) {
        self.poly = self.poly.scale(c);
        self.lc *= c;
        for r in &mut self.rep {
            *r = r.scale(c);
        }
    }

    fn make_monic(&mut self) {
        if !self.lc.is_zero() && !self.lc.is_one() {
            let c = self.lc.recip();
            self.scale(&c);
        }
    }
}

fn unit_rep(len: usize, i: usize, n: usize, track: bool) -> Vec<Poly> {
    if !track {
        return vec![];
    }
    (0..len)
        .map(|j| if j == i { Poly::one(n) } else { Poly::zero(n) })
        .collect()
}

/// Mora's normal form. With `list_order`, earlier remainders of small ecart are used first
/// and otherwise the first divisor in list order, which matches the textbook division on
/// small inputs. That rule can wander for a long time, so it gets a fixed number of steps;
/// past that the division restarts with the plain ecart rule.
fn nf_mora(h: Elem, basis: &[Elem], ord: &MonomialOrder, list_order: bool) -> Elem {
    if list_order {
        if let Some(r) = nf_mora_steps(h.clone(), basis, ord, true, Some(LIST_ORDER_STEPS)) {
            return r;
        }
    }
    nf_mora_steps(h, basis, ord, false, None).expect("unbounded Mora reduction")
}

fn nf_mora_steps(
    mut h: Elem,
    basis: &[Elem],
    ord: &MonomialOrder,
    list_order: bool,
    max_steps: Option<usize>,
) -> Option<Elem> {
    let mut extra: Vec<Elem> = Vec::new();
    let mut steps = 0usize;
    while !h.is_zero() {
        if max_steps.is_some_and(|m| steps >= m) {
            return None;
        }
        steps += 1;
        let divides = |g: &&Elem| exp_divides(&g.lm, &h.lm);
        let t = if list_order {
            extra
                .iter()
                .filter(divides)
                .filter(|g| g.ecart <= h.ecart)
                .min_by_key(|g| g.ecart)
                .or_else(|| basis.iter().find(divides))
                .or_else(|| extra.iter().filter(divides).min_by_key(|g| g.ecart))
        } else {
            basis
                .iter()
                .chain(extra.iter())
                .filter(divides)
                .min_by_key(|g| g.ecart)
        };
        let Some(t) = t else { break };
        let t = t.clone();
        if t.ecart > h.ecart {
            extra.push(h.clone());
        }
        h.reduce_by(&t, ord);
    }
    Some(h)
}

/// Plain top reduction, which terminates for global orders.
fn nf_global(mut h: Elem, basis: &[Elem], ord: &MonomialOrder) -> Elem {
    while !h.is_zero() {
        let Some(t) = basis.iter().find(|g| exp_divides(&g.lm, &h.lm)) else {
            break;
        };
        h.reduce_by(t, ord);
    }
    h
}

/// Reduces terms below the leading one, smallest first, within a step budget. Returns
/// whether no term divisible by a basis leading monomial remains.
fn tail_reduce(h: &mut Elem, basis: &[Elem], ord: &MonomialOrder, budget: usize) -> bool {
    for _ in 0..budget {
        let mut terms: Vec<(Exp, Q)> = h
            .poly
            .terms()
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        terms.sort_by(|a, b| ord.cmp(&a.0, &b.0));
        let mut hit = None;
        for (e, c) in &terms {
            if let Some(g) = basis.iter().find(|g| exp_divides(&g.lm, e)) {
                hit = Some((e.clone(), c.clone(), g));
                break;
            }
        }
        let Some((e, c, g)) = hit else { return true };
        let a = exp_sub(&e, &g.lm);
        let k = &c / &g.lc;
        h.sub_mul(g, &a, &k, ord);
    }
    false
}

/// Result of [`mora_divide`]: `unit * f = sum quotients[i] * divisors[i] + remainder`.
#[derive(Clone, Debug, PartialEq)]
pub struct Division {
    pub unit: Poly,
    pub quotients: Vec<Poly>,
    pub remainder: Poly,
    /// False when the tail reduction of the remainder hit its step budget.
    pub complete: bool,
}

/// Division with a unit multiplier. The unit has constant term one (it is 1 for global
/// orders); no monomial of a complete remainder is divisible by a divisor's leading monomial.
pub fn mora_divide(f: &Poly, divisors: &[Poly], ord: &MonomialOrder) -> Result<Division> {
    let n = f.nvars();
    if divisors.iter().any(|d| d.is_zero()) {
        return precondition("divisors must be nonzero");
    }
    if divisors.iter().any(|d| d.nvars() != n) || ord.nvars() != n {
        return precondition("ring mismatch between dividend, divisors and order");
    }
    let len = divisors.len() + 1;
    let ds: Vec<Elem> = divisors
        .iter()
        .enumerate()
        .map(|(i, d)| Elem::new(d.clone(), unit_rep(len, i + 1, n, true), ord))
        .collect();
    let h = Elem::new(f.clone(), unit_rep(len, 0, n, true), ord);
    let mut h = if ord.is_global() {
        nf_global(h, &ds, ord)
    } else {
        nf_mora(h, &ds, ord, true)
    };
    let complete = tail_reduce(&mut h, &ds, ord, TAIL_STEPS);
    let mut rep = h.rep;
    let unit = rep.remove(0);
    Ok(Division {
        unit,
        quotients: rep.iter().map(|p| p.neg()).collect(),
        remainder: h.poly,
        complete,
    })
}

/// A polynomial together with its marked initial exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedPoly {
    pub poly: Poly,
    pub marked: Exp,
}

/// A minimal standard basis: monic at the marked terms, no marked exponent divides another,
/// sorted increasingly by marked exponent.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkedBasis {
    pub order: MonomialOrder,
    pub elements: Vec<MarkedPoly>,
    /// When requested, `cofactors[k][j]` expresses element `k` as `sum_j c_j * gens[j]`.
    pub cofactors: Option<Vec<Vec<Poly>>>,
}

impl MarkedBasis {
    pub fn marked(&self) -> Vec<Exp> {
        self.elements.iter().map(|m| m.marked.clone()).collect()
    }

    pub fn polys(&self) -> Vec<Poly> {
        self.elements.iter().map(|m| m.poly.clone()).collect()
    }

    /// Whether the monomial `e` lies in the ideal generated by the marked exponents.
    pub fn marked_ideal_contains(&self, e: &[u32]) -> bool {
        self.elements.iter().any(|m| exp_divides(&m.marked, e))
    }
}

fn select_pair(pending: &BTreeSet<(usize, usize)>, s: &[Elem]) -> Option<(usize, usize)> {
    pending
        .iter()
        .min_by_key(|&&(i, j)| (exp_deg(&exp_lcm(&s[i].lm, &s[j].lm)), j, i))
        .cloned()
}

fn spoly(a: &Elem, b: &Elem, ord: &MonomialOrder) -> Elem {
    let l = exp_lcm(&a.lm, &b.lm);
    let ma = exp_sub(&l, &a.lm);
    let mb = exp_sub(&l, &b.lm);
    let n = a.poly.nvars();
    let mut h = Elem::new(
        Poly::zero(n),
        a.rep.iter().map(|_| Poly::zero(n)).collect(),
        ord,
    );
    h.sub_mul(a, &ma, &(-b.lc.clone()), ord);
    h.sub_mul(b, &mb, &a.lc, ord);
    h
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn chain_skip(i: usize, j: usize, s: &[Elem], pending: &BTreeSet<(usize, usize)>) -> bool {
    let l = exp_lcm(&s[i].lm, &s[j].lm);
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    (0..s.len()).any(|k| {
        k != i
            && k != j
            && exp_divides(&s[k].lm, &l)
            && !pending.contains(&key(i, k))
            && !pending.contains(&key(j, k))
    })
}

fn buchberger_mora(gens: &[Poly], ord: &MonomialOrder, track: bool) -> Vec<Elem> {
    let n = ord.nvars();
    let global = ord.is_global();
    let mut s: Vec<Elem> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let mut e = Elem::new(g.clone(), unit_rep(gens.len(), i, n, track), ord);
        e.make_monic();
        s.push(e);
    }
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..s.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    while let Some((i, j)) = select_pair(&pending, &s) {
        pending.remove(&(i, j));
        if coprime(&s[i].lm, &s[j].lm) || chain_skip(i, j, &s, &pending) {
            continue;
        }
        let sp = spoly(&s[i], &s[j], ord);
        let mut h = if global {
            nf_global(sp, &s, ord)
        } else {
            nf_mora(sp, &s, ord, false)
        };
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        let k = s.len();
        s.push(h);
        for i in 0..k {
            pending.insert((i, k));
        }
    }
    s
}

fn minimize(s: Vec<Elem>, ord: &MonomialOrder) -> Vec<Elem> {
    let mut s = s;
    s.sort_by(|a, b| {
        ord.cmp(&a.lm, &b.lm)
            .then(exp_deg(&a.lm).cmp(&exp_deg(&b.lm)))
    });
    let mut out: Vec<Elem> = Vec::new();
    for e in s {
        if out.iter().any(|g| exp_divides(&g.lm, &e.lm)) {
            continue;
        }
        out.retain(|g| !exp_divides(&e.lm, &g.lm));
        out.push(e);
    }
    out.sort_by(|a, b| ord.cmp(&a.lm, &b.lm));
    out
}

fn finish(elems: Vec<Elem>, ord: &MonomialOrder, track: bool) -> MarkedBasis {
    let cofactors = track.then(|| elems.iter().map(|e| e.rep.clone()).collect());
    MarkedBasis {
        order: ord.clone(),
        elements: elems
            .into_iter()
            .map(|e| MarkedPoly {
                poly: e.poly,
                marked: e.lm,
            })
            .collect(),
        cofactors,
    }
}

/// Minimal standard basis of the ideal generated by `gens` in the localization (local
/// orders) or polynomial ring (global orders) at the origin.
pub fn standard_basis(gens: &[Poly], ord: &MonomialOrder) -> Result<MarkedBasis> {
    standard_basis_impl(gens, ord, false)
}

/// As [`standard_basis`], recording how each element is a polynomial combination of `gens`.
pub fn standard_basis_with_cofactors(gens: &[Poly], ord: &MonomialOrder) -> Result<MarkedBasis> {
    standard_basis_impl(gens, ord, true)
}

fn standard_basis_impl(gens: &[Poly], ord: &MonomialOrder, track: bool) -> Result<MarkedBasis> {
    check_ring(gens, ord)?;
    if ord.is_global() {
        let mut m = minimize(buchberger_mora(gens, ord, track), ord);
        interreduce(&mut m, ord);
        return Ok(finish(m, ord, track));
    }
    Ok(finish(minimize(lazard(gens, ord, track), ord), ord, track))
}

/// The global order on `x` and a last homogenizing variable `t`: total degree first, then
/// `ord` on the `x`-part. On homogeneous polynomials it restricts to `ord`.
fn homogenized_order(ord: &MonomialOrder) -> MonomialOrder {
    let n = ord.nvars();
    let mut rows = vec![vec![-1; n + 1]];
    for r in ord.rows() {
        let mut h = r.clone();
        h.push(0);
        rows.push(h);
    }
    for i in (0..n).rev() {
        let mut h = vec![0; n + 1];
        h[i] = 1;
        rows.push(h);
    }
    MonomialOrder::from_int_rows(n + 1, rows)
}

/// Standard basis for a non-global order through a homogeneous Gröbner basis of the
/// homogenized generators, set back to `t = 1`. Every element is a polynomial combination of
/// `gens` and the cofactors are exact.
fn lazard(gens: &[Poly], ord: &MonomialOrder, track: bool) -> Vec<Elem> {
    let hord = homogenized_order(ord);
    let hgens: Vec<Poly> = gens.iter().map(|g| g.homogenize()).collect();
    buchberger_mora(&hgens, &hord, track)
        .into_iter()
        .map(|e| {
            let rep = e.rep.iter().map(|r| r.dehomogenize()).collect();
            let mut d = Elem::new(e.poly.dehomogenize(), rep, ord);
            d.make_monic();
            d
        })
        .collect()
}

fn check_ring(gens: &[Poly], ord: &MonomialOrder) -> Result<()> {
    if gens.iter().any(|g| g.nvars() != ord.nvars()) {
        return precondition("generators and order live in different rings");
    }
    Ok(())
}

fn interreduce(m: &mut [Elem], ord: &MonomialOrder) {
    for k in 0..m.len() {
        let others: Vec<Elem> = m
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, e)| e.clone())
            .collect();
        tail_reduce(&mut m[k], &others, ord, usize::MAX);
    }
}

/// Reduced Gröbner basis for a global order.
pub fn groebner_basis(gens: &[Poly], ord: &MonomialOrder) -> Result<Vec<Poly>> {
    if !ord.is_global() {
        return precondition("a global order is required");
    }
    Ok(standard_basis(gens, ord)?.polys())
}

/// Expresses `f` as a polynomial combination of `gens`, or `None` if it is not in the ideal.
/// Requires a global order.
pub fn lift(f: &Poly, gens: &[Poly], ord: &MonomialOrder) -> Result<Option<Vec<Poly>>> {
    if !ord.is_global() {
        return precondition("a global order is required");
    }
    check_ring(gens, ord)?;
    let n = ord.nvars();
    let s = minimize(buchberger_mora(gens, ord, true), ord);
    let h = Elem::new(f.clone(), gens.iter().map(|_| Poly::zero(n)).collect(), ord);
    let h = nf_global(h, &s, ord);
    if !h.is_zero() {
        return Ok(None);
    }
    Ok(Some(h.rep.iter().map(|p| p.neg()).collect()))
}

/// Full normal form modulo a Gröbner basis for a global order.
pub fn normal_form_global(f: &Poly, gb: &[Poly], ord: &MonomialOrder) -> Poly {
    let basis: Vec<Elem> = gb
        .iter()
        .map(|g| Elem::new(g.clone(), vec![], ord))
        .collect();
    let mut h = nf_global(Elem::new(f.clone(), vec![], ord), &basis, ord);
    tail_reduce(&mut h, &basis, ord, usize::MAX);
    h.poly
}

/// Weak normal form with respect to a standard basis (Mora's algorithm); zero exactly for
/// members of the ideal in the local ring when `basis` is a standard basis.
pub fn weak_normal_form(f: &Poly, basis: &[Poly], ord: &MonomialOrder) -> Poly {
    let b: Vec<Elem> = basis
        .iter()
        .map(|g| Elem::new(g.clone(), vec![], ord))
        .collect();
    let h = Elem::new(f.clone(), vec![], ord);
    if ord.is_global() {
        nf_global(h, &b, ord).poly
    } else {
        nf_mora(h, &b, ord, false).poly
    }
}

/// Whether the leading monomials of `basis` generate the leading ideal of the ideal it
/// generates. Global orders use the S-polynomial criterion.
pub fn is_standard_basis(basis: &[Poly], ord: &MonomialOrder) -> bool {
    let b: Vec<Elem> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| Elem::new(g.clone(), vec![], ord))
        .collect();
    if !ord.is_global() {
        let lms: Vec<Exp> = b.iter().map(|e| e.lm.clone()).collect();
        let full: Vec<Exp> = lazard(basis, ord, false).into_iter().map(|e| e.lm).collect();
        return same_monomial_ideal(&minimal_monomials(&lms), &minimal_monomials(&full));
    }
    for j in 0..b.len() {
        for i in 0..j {
            let sp = spoly(&b[i], &b[j], ord);
            if !nf_global(sp, &b, ord).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Compares the monomial ideals generated by two exponent lists.
pub fn same_monomial_ideal(a: &[Exp], b: &[Exp]) -> bool {
    let inc = |x: &[Exp], y: &[Exp]| x.iter().all(|e| y.iter().any(|f| exp_divides(f, e)));
    inc(a, b) && inc(b, a)
}

/// Minimal generators of a monomial ideal, sorted.
pub fn minimal_monomials(es: &[Exp]) -> Vec<Exp> {
    let mut v: Vec<Exp> = es.to_vec();
    v.sort_by(|a, b| exp_deg(a).cmp(&exp_deg(b)).then(a.cmp(b)));
    v.dedup();
    let mut out: Vec<Exp> = Vec::new();
    for e in v {
        if !out.iter().any(|f| exp_divides(f, &e)) {
            out.push(e);
        }
    }
    out.sort();
    out
}
