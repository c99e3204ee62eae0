//! Ideal-level operations: saturation, membership, dimension, monomial containment, initial
//! ideals (local and global) and toric ideals of affine semigroups.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::{Signed, Zero};

use crate::arith::{ExtReal, Q};
use crate::error::{precondition, schema, Result};
use crate::lattice::left_kernel;
use crate::order::{initial_form, is_nonneg, MonomialOrder};
use crate::poly::{exp_divides, Exp, Poly};
use crate::semigroup::AffineSemigroup;
use crate::standard::{
    groebner_basis, minimal_monomials, normal_form_global, standard_basis, MarkedBasis,
};

fn nonzero(gens: &[Poly]) -> Vec<Poly> {
    gens.iter().filter(|g| !g.is_zero()).cloned().collect()
}

/// Reduced Gröbner basis under the degree reverse lexicographic order.
pub fn gb_grevlex(gens: &[Poly], n: usize) -> Vec<Poly> {
    groebner_basis(&nonzero(gens), &MonomialOrder::global_grevlex(n)).expect("grevlex is global")
}

pub fn is_unit_ideal(gens: &[Poly], n: usize) -> bool {
    if gens.iter().any(|g| !g.is_zero() && g.is_constant()) {
        return true;
    }
    gb_grevlex(gens, n).iter().any(|g| g.is_constant())
}

/// Membership in the polynomial ideal.
pub fn contains(gens: &[Poly], f: &Poly) -> bool {
    let n = f.nvars();
    let o = MonomialOrder::global_grevlex(n);
    let gb = gb_grevlex(gens, n);
    normal_form_global(f, &gb, &o).is_zero()
}

/// Generators of `J : (prod_{i in vars} x_i)^infinity`, not reduced.
fn saturate_raw(gens: &[Poly], n: usize, vars: &[usize]) -> Vec<Poly> {
    let gens = nonzero(gens);
    if vars.is_empty() || gens.is_empty() {
        return gens;
    }
    let slots: Vec<usize> = (0..n).collect();
    let mut ext: Vec<Poly> = gens.iter().map(|g| g.embed(n + 1, &slots)).collect();
    let mut e = vec![0u32; n + 1];
    for &i in vars {
        e[i] += 1;
    }
    e[n] = 1;
    let mut t = Poly::one(n + 1);
    t.add_term(e, -Q::from_integer(1.into()));
    ext.push(t);
    let o = MonomialOrder::global_elimination(n + 1, &[n]);
    let gb = groebner_basis(&ext, &o).expect("elimination order is global");
    gb.into_iter()
        .filter(|g| g.terms().all(|(e, _)| e[n] == 0))
        .map(|g| g.drop_vars(&[n]))
        .collect()
}

/// `J : (prod_{i in vars} x_i)^infinity` as a reduced grevlex Gröbner basis.
pub fn saturate(gens: &[Poly], n: usize, vars: &[usize]) -> Vec<Poly> {
    gb_grevlex(&saturate_raw(gens, n, vars), n)
}

/// Whether the polynomial ideal contains no monomial.
pub fn torus_monomial_free(gens: &[Poly], n: usize) -> bool {
    let g = nonzero(gens);
    if g.is_empty() {
        return true;
    }
    if g.iter().any(|p| p.len() == 1) {
        return false;
    }
    let all: Vec<usize> = (0..n).collect();
    !saturate_raw(&g, n, &all).iter().any(|p| p.is_constant())
}

fn cache() -> &'static Mutex<HashMap<Vec<Poly>, bool>> {
    static C: OnceLock<Mutex<HashMap<Vec<Poly>, bool>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Whether the ideal generated by `gens` in the power series ring contains no monomial.
///
/// A monomial lies in `J K[[x]]` exactly when some `s` with `s(0) != 0` multiplies a
/// monomial into `J`, i.e. when `J : (prod x_i)^infinity` has a generator with a nonzero
/// constant term. No homogeneity is needed.
pub fn monomial_free(gens: &[Poly], n: usize) -> bool {
    let mut g = nonzero(gens);
    if g.is_empty() {
        return true;
    }
    if g.iter().any(is_unit_times_monomial) {
        return false;
    }
    if g.len() == 1 {
        return true;
    }
    g.sort();
    if let Some(&v) = cache().lock().expect("cache lock").get(&g) {
        return v;
    }
    let all: Vec<usize> = (0..n).collect();
    let v = !saturate_raw(&g, n, &all)
        .iter()
        .any(|p| !p.constant_term().is_zero());
    let mut c = cache().lock().expect("cache lock");
    if c.len() > 200_000 {
        c.clear();
    }
    c.insert(g, v);
    v
}

/// `f = u * x^m` with `u(0) != 0`: the gcd monomial of the support is itself in the support.
fn is_unit_times_monomial(f: &Poly) -> bool {
    let r = f.remove_content_monomial();
    !r.constant_term().is_zero()
}

/// Dimension of `K[x]/I`, or `-1` for the unit ideal.
pub fn krull_dimension(gens: &[Poly], n: usize) -> i64 {
    let gb = gb_grevlex(gens, n);
    if gb.iter().any(|g| g.is_constant()) {
        return -1;
    }
    let o = MonomialOrder::global_grevlex(n);
    let lms: Vec<Exp> = minimal_monomials(
        &gb.iter()
            .map(|g| o.leading_exp(g).expect("nonzero"))
            .collect::<Vec<_>>(),
    );
    let mut best = 0;
    for mask in 0u64..(1u64 << n) {
        let size = mask.count_ones() as i64;
        if size <= best {
            continue;
        }
        let free = lms.iter().all(|m| {
            m.iter()
                .enumerate()
                .any(|(i, &k)| k > 0 && mask & (1 << i) == 0)
        });
        if free {
            best = size;
        }
    }
    best
}

/// Binomial generators of the kernel of `K[x_1..x_s] -> K[Gamma]`, `x_i -> chi^{gamma_i}`,
/// as a reduced lex Gröbner basis with `x_1 > x_2 > ...`.
pub fn toric_ideal(g: &AffineSemigroup) -> Result<Vec<Poly>> {
    let s = g.generators().len();
    let ker = left_kernel(g.generators(), g.rank());
    let mut bins = Vec::new();
    for u in &ker {
        let mut p = Poly::zero(s);
        let pos: Exp = u
            .iter()
            .map(|x| if x.is_positive() { to_u32(x) } else { Ok(0) })
            .collect::<Result<_>>()?;
        let neg: Exp = u
            .iter()
            .map(|x| if x.is_negative() { to_u32(&-x) } else { Ok(0) })
            .collect::<Result<_>>()?;
        p.add_term(pos, Q::from_integer(1.into()));
        p.add_term(neg, Q::from_integer((-1).into()));
        bins.push(p);
    }
    if bins.is_empty() {
        return Ok(vec![]);
    }
    let all: Vec<usize> = (0..s).collect();
    let sat = saturate_raw(&bins, s, &all);
    let gb = groebner_basis(&sat, &MonomialOrder::global_lex(s))?;
    Ok(gb)
}

fn to_u32(x: &crate::arith::Z) -> Result<u32> {
    u32::try_from(x).or_else(|_| precondition("exponent does not fit in 32 bits"))
}

/// Standard basis for an order refining `w`, with the initial forms of its elements, which
/// generate the initial ideal of the generated ideal in the power series ring.
#[derive(Clone, Debug)]
pub struct InitialIdeal {
    pub basis: MarkedBasis,
    pub generators: Vec<Poly>,
}

/// The order comparing by `w` first and then by the built-in tie-break.
pub fn weight_order(w: &[Q]) -> Result<MonomialOrder> {
    MonomialOrder::new(w.len(), &[w.to_vec()])
}

pub fn initial_ideal(gens: &[Poly], w: &[Q]) -> Result<InitialIdeal> {
    let n = w.len();
    if gens.iter().any(|g| g.nvars() != n) {
        return schema("weight length differs from the number of variables");
    }
    if !is_nonneg(w) {
        return precondition("weight has a negative entry");
    }
    let ord = weight_order(w)?;
    let basis = standard_basis(&nonzero(gens), &ord)?;
    let generators = basis
        .elements
        .iter()
        .map(|m| initial_form(&m.poly, w))
        .collect();
    Ok(InitialIdeal { basis, generators })
}

/// Generators of `I_tau` for the face spanned by the coordinates in `vars`, as polynomials in
/// the remaining variables (returned in increasing order).
pub fn truncate_ideal(gens: &[Poly], n: usize, vars: &[usize]) -> (Vec<Poly>, Vec<usize>) {
    let kept: Vec<usize> = (0..n).filter(|i| !vars.contains(i)).collect();
    let out = gens
        .iter()
        .map(|g| g.truncate(vars).drop_vars(vars))
        .filter(|g| !g.is_zero())
        .collect();
    (out, kept)
}

/// Initial ideal at an extended weight: coordinates equal to infinity truncate the ideal,
/// the rest weight the surviving variables. Generators live in the surviving variables.
pub fn initial_ideal_ext(gens: &[Poly], w: &[ExtReal]) -> Result<(Vec<Poly>, Vec<usize>)> {
    let n = w.len();
    if gens.iter().any(|g| g.nvars() != n) {
        return schema("weight length differs from the number of variables");
    }
    let inf: Vec<usize> = (0..n).filter(|&i| w[i].is_infinite()).collect();
    let (t, kept) = truncate_ideal(gens, n, &inf);
    let wf: Vec<Q> = kept
        .iter()
        .map(|&i| w[i].finite().expect("finite").clone())
        .collect();
    if kept.is_empty() {
        return Ok((t, kept));
    }
    Ok((initial_ideal(&t, &wf)?.generators, kept))
}

/// Whether the extended weight lies in the nonnegative local tropicalization, decided
/// directly from the initial ideal.
pub fn extended_membership(gens: &[Poly], w: &[ExtReal]) -> Result<bool> {
    let (j, kept) = initial_ideal_ext(gens, w)?;
    if kept.is_empty() {
        return Ok(j.iter().all(|g| g.is_zero()));
    }
    Ok(monomial_free(&j, kept.len()))
}

/// Generators of the homogenization `I^h` (homogenizing variable last).
pub fn homogenized_ideal(gens: &[Poly], n: usize) -> Vec<Poly> {
    let h: Vec<Poly> = nonzero(gens).iter().map(|g| g.homogenize()).collect();
    gb_grevlex(&h, n + 1)
        .into_iter()
        .map(|g| {
            let k = g.terms().map(|(e, _)| e[n]).min().unwrap_or(0);
            let mut d = vec![0; n + 1];
            d[n] = k;
            let mut r = Poly::zero(n + 1);
            for (e, c) in g.terms() {
                let f: Exp = e.iter().zip(&d).map(|(a, b)| a - b).collect();
                r.add_term(f, c.clone());
            }
            r
        })
        .collect()
}

/// Initial ideal of a polynomial ideal for an arbitrary rational weight (min convention).
pub fn global_initial_ideal(gens: &[Poly], w: &[Q]) -> Result<Vec<Poly>> {
    let n = w.len();
    let hom = homogenized_ideal(gens, n);
    if hom.is_empty() {
        return Ok(vec![]);
    }
    let one = Q::from_integer(1.into());
    let mut rows = vec![vec![-one.clone(); n + 1]];
    let mut wr = w.to_vec();
    wr.push(Q::zero());
    rows.push(wr.clone());
    rows.extend(
        MonomialOrder::global_grevlex(n + 1)
            .rows_q()
            .into_iter()
            .skip(1),
    );
    let ord = MonomialOrder::new(n + 1, &rows)?;
    let gb = groebner_basis(&hom, &ord)?;
    Ok(gb
        .iter()
        .map(|g| initial_form(g, &wr).dehomogenize())
        .collect())
}

/// Whether `w` lies in the tropical variety of the polynomial ideal.
pub fn global_membership(gens: &[Poly], w: &[Q]) -> Result<bool> {
    Ok(torus_monomial_free(
        &global_initial_ideal(gens, w)?,
        w.len(),
    ))
}

/// Monomials of the marked exponents' ideal, minimal and sorted.
pub fn marked_monomial_ideal(b: &MarkedBasis) -> Vec<Exp> {
    minimal_monomials(&b.marked())
}

/// Whether the monomial ideal generated by `gens` contains `x^e`.
pub fn monomial_ideal_contains(gens: &[Exp], e: &[u32]) -> bool {
    gens.iter().any(|g| exp_divides(g, e))
}
