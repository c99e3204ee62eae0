//! Integer lattices: Hermite and Smith normal forms, kernels, membership.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{qz, rref, to_q, Q, Z};

pub type ZMat = Vec<Vec<Z>>;

fn identity(n: usize) -> ZMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Z::one() } else { Z::zero() })
                .collect()
        })
        .collect()
}

pub fn transpose(m: &[Vec<Z>], ncols: usize) -> ZMat {
    (0..ncols)
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

fn row_sub(m: &mut ZMat, target: usize, src: usize, f: &Z) {
    if f.is_zero() {
        return;
    }
    let s = m[src].clone();
    for (t, x) in m[target].iter_mut().zip(&s) {
        *t -= f * x;
    }
}

fn row_neg(m: &mut ZMat, r: usize) {
    for x in m[r].iter_mut() {
        *x = -x.clone();
    }
}

/// Row-style Hermite normal form with transform: returns `(H, U)` with `H = U * A`,
/// `U` unimodular, `H` in echelon form with positive pivots and reduced entries above
/// each pivot. Zero rows of `H` come last.
pub fn hnf_with_transform(a: &[Vec<Z>], ncols: usize) -> (ZMat, ZMat) {
    let m = a.len();
    let mut h: ZMat = a.to_vec();
    let mut u = identity(m);
    let mut r = 0;
    for c in 0..ncols {
        if r >= m {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..m {
                if !h[i][c].is_zero() && best.is_none_or(|b| h[i][c].abs() < h[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            h.swap(r, b);
            u.swap(r, b);
            let mut done = true;
            for i in (r + 1)..m {
                if !h[i][c].is_zero() {
                    let f = h[i][c].div_floor(&h[r][c]);
                    row_sub(&mut h, i, r, &f);
                    row_sub(&mut u, i, r, &f);
                    if !h[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            row_neg(&mut h, r);
            row_neg(&mut u, r);
        }
        for i in 0..r {
            let f = h[i][c].div_floor(&h[r][c]);
            row_sub(&mut h, i, r, &f);
            row_sub(&mut u, i, r, &f);
        }
        r += 1;
    }
    (h, u)
}

/// Nonzero rows of the Hermite normal form: a canonical basis of the lattice spanned by `a`.
pub fn hnf_basis(a: &[Vec<Z>], ncols: usize) -> ZMat {
    let (h, _) = hnf_with_transform(a, ncols);
    h.into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Basis of `{y in Z^m : y A = 0}` where `A` has `m` rows.
pub fn left_kernel(a: &[Vec<Z>], ncols: usize) -> ZMat {
    let (h, u) = hnf_with_transform(a, ncols);
    let k: ZMat = h
        .iter()
        .zip(u)
        .filter(|(hr, _)| hr.iter().all(|x| x.is_zero()))
        .map(|(_, ur)| ur)
        .collect();
    if k.is_empty() {
        return k;
    }
    hnf_basis(&k, a.len())
}

/// Basis of `{x in Z^n : A x = 0}`.
pub fn right_kernel(a: &[Vec<Z>], ncols: usize) -> ZMat {
    if a.is_empty() {
        return identity(ncols);
    }
    left_kernel(&transpose(a, ncols), a.len())
}

/// Reduces `v` modulo the lattice with Hermite basis `h`. Returns the canonical residue.
pub fn reduce_mod_lattice(v: &[Z], h: &[Vec<Z>]) -> Vec<Z> {
    let mut out = v.to_vec();
    for row in h {
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        let f = out[p].div_floor(&row[p]);
        if !f.is_zero() {
            for (o, x) in out.iter_mut().zip(row) {
                *o -= &f * x;
            }
        }
    }
    out
}

pub fn in_lattice(v: &[Z], h: &[Vec<Z>]) -> bool {
    reduce_mod_lattice(v, h).iter().all(|x| x.is_zero())
}

/// Diagonal of the Smith normal form (nonzero invariant factors, each dividing the next).
pub fn smith_invariants(a: &[Vec<Z>], ncols: usize) -> Vec<Z> {
    let mut m: ZMat = a.to_vec();
    let mut cols = ncols;
    loop {
        let h = hnf_basis(&m, cols);
        let rows = h.len();
        let t = hnf_basis(&transpose(&h, cols), rows);
        let diag = t
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, x)| i == j || x.is_zero()));
        cols = rows;
        m = t;
        if diag {
            break;
        }
    }
    let mut d: Vec<Z> = m
        .iter()
        .enumerate()
        .map(|(i, r)| r[i].abs())
        .filter(|x| !x.is_zero())
        .collect();
    // enforce the divisibility chain
    let n = d.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// The saturation `span_Q(L) ∩ Z^n` of the lattice spanned by the rows of `a`.
pub fn saturate_sublattice(a: &[Vec<Z>], ncols: usize) -> ZMat {
    if a.iter().all(|r| r.iter().all(|x| x.is_zero())) {
        return Vec::new();
    }
    let perp = right_kernel(a, ncols);
    let k = right_kernel(&perp, ncols);
    hnf_basis(&k, ncols)
}

/// A splitting `Z^n = L ⊕ C` for a saturated sublattice `L`, with coordinates on the quotient.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    pub n: usize,
    pub sub_rank: usize,
    /// Hermite basis of `L`.
    pub sub_basis: ZMat,
    /// Columns of a unimodular `V`: `x ↦ x^T V` gives coordinates in the adapted basis.
    coord_cols: ZMat,
    /// Rows `l..n` of `V^{-1}`: lifts of the quotient unit vectors.
    lift_rows: ZMat,
    /// Rows `0..l` of `V^{-1}`: a basis of `L` adapted to the splitting.
    sub_rows: ZMat,
}

impl QuotientMap {
    /// `sub` must span a saturated sublattice (or be empty).
    pub fn new(sub: &[Vec<Z>], n: usize) -> QuotientMap {
        let sub_basis = if sub.is_empty() {
            Vec::new()
        } else {
            hnf_basis(sub, n)
        };
        let l = sub_basis.len();
        if l == 0 {
            return QuotientMap {
                n,
                sub_rank: 0,
                sub_basis,
                coord_cols: identity(n),
                lift_rows: identity(n),
                sub_rows: Vec::new(),
            };
        }
        let bt = transpose(&sub_basis, n);
        let (_, u) = hnf_with_transform(&bt, l);
        // V = U^T, so column j of V is row j of U.
        let v_cols: ZMat = u.clone();
        let w = inverse_unimodular(&transpose(&u, n), n);
        QuotientMap {
            n,
            sub_rank: l,
            sub_basis,
            coord_cols: v_cols,
            lift_rows: w[l..].to_vec(),
            sub_rows: w[..l].to_vec(),
        }
    }

    pub fn quotient_rank(&self) -> usize {
        self.n - self.sub_rank
    }

    /// Rows of the projection onto quotient coordinates.
    pub fn projection_rows(&self) -> &[Vec<Z>] {
        &self.coord_cols[self.sub_rank..]
    }

    pub fn project(&self, x: &[Z]) -> Vec<Z> {
        self.coord_cols[self.sub_rank..]
            .iter()
            .map(|c| c.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Coordinates of the `L`-component of `x` with respect to [`QuotientMap::sub_adapted_basis`].
    pub fn sub_coords(&self, x: &[Z]) -> Vec<Z> {
        self.coord_cols[..self.sub_rank]
            .iter()
            .map(|c| c.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn sub_adapted_basis(&self) -> &[Vec<Z>] {
        &self.sub_rows
    }

    /// Canonical lift: a preimage reduced modulo the sublattice.
    pub fn lift(&self, y: &[Z]) -> Vec<Z> {
        let mut x = vec![Z::zero(); self.n];
        for (c, row) in y.iter().zip(&self.lift_rows) {
            for (xi, r) in x.iter_mut().zip(row) {
                *xi += c * r;
            }
        }
        reduce_mod_lattice(&x, &self.sub_basis)
    }
}

fn inverse_unimodular(m: &[Vec<Z>], n: usize) -> ZMat {
    let aug: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = to_q(r);
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    let (r, _) = rref(&aug, 2 * n);
    r.iter()
        .map(|row| row[n..].iter().map(|x| x.to_integer()).collect())
        .collect()
}

/// Determinant-free check that `v` is an integer combination of the rows of `a`.
pub fn in_span_z(v: &[Z], a: &[Vec<Z>], ncols: usize) -> bool {
    if a.is_empty() {
        return v.iter().all(|x| x.is_zero());
    }
    in_lattice(v, &hnf_basis(a, ncols))
}

pub fn qrow(v: &[Z]) -> Vec<Q> {
    v.iter().map(qz).collect()
}
