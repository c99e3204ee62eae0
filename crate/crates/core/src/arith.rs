//! Exact scalar types and small dense linear algebra over Z and Q.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Z = BigInt;
pub type Q = BigRational;

pub fn z(v: i64) -> Z {
    Z::from(v)
}

pub fn q(v: i64) -> Q {
    Q::from_integer(Z::from(v))
}

pub fn qz(v: &Z) -> Q {
    Q::from_integer(v.clone())
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(Z::from(n), Z::from(d))
}

/// Parses `"p/q"`, `"p"` or a bare JSON integer rendered as text.
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    let bad = || Error::Schema(format!("not a rational number: {s:?}"));
    if let Some((a, b)) = t.split_once('/') {
        let n: Z = a.trim().parse().map_err(|_| bad())?;
        let d: Z = b.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Schema(format!("zero denominator in {s:?}")));
        }
        Ok(Q::new(n, d))
    } else {
        let n: Z = t.parse().map_err(|_| bad())?;
        Ok(Q::from_integer(n))
    }
}

/// Integers print as `"p"`, everything else as `"p/q"` in lowest terms.
pub fn fmt_q(v: &Q) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// An element of `[0, +inf]` or more generally of `Q ∪ {+inf}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtReal {
    Finite(Q),
    Infinity,
}

impl ExtReal {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtReal::Infinity)
    }

    pub fn finite(&self) -> Option<&Q> {
        match self {
            ExtReal::Finite(v) => Some(v),
            ExtReal::Infinity => None,
        }
    }

    pub fn parse(s: &str) -> Result<ExtReal> {
        match s.trim() {
            "inf" | "+inf" | "infinity" | "oo" | "∞" => Ok(ExtReal::Infinity),
            t => parse_q(t).map(ExtReal::Finite),
        }
    }

    pub fn add(&self, other: &ExtReal) -> ExtReal {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a + b),
            _ => ExtReal::Infinity,
        }
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a.cmp(b),
            (ExtReal::Finite(_), ExtReal::Infinity) => Ordering::Less,
            (ExtReal::Infinity, ExtReal::Finite(_)) => Ordering::Greater,
            (ExtReal::Infinity, ExtReal::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(v) => write!(f, "{}", fmt_q(v)),
            ExtReal::Infinity => write!(f, "inf"),
        }
    }
}

pub fn zvec(v: &[i64]) -> Vec<Z> {
    v.iter().map(|&x| Z::from(x)).collect()
}

pub fn qvec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

pub fn to_q(v: &[Z]) -> Vec<Q> {
    v.iter().map(qz).collect()
}

pub fn dot_z(a: &[Z], b: &[Z]) -> Z {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_q(a: &[Q], b: &[Q]) -> Q {
    let mut s = Q::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

pub fn dot_qz(a: &[Q], b: &[Z]) -> Q {
    let mut s = Q::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * qz(y);
        }
    }
    s
}

pub fn is_zero_vec<T: Zero>(v: &[T]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn gcd_vec(v: &[Z]) -> Z {
    v.iter().fold(Z::zero(), |g, x| g.gcd(x))
}

/// Divides by the gcd of the entries, keeping the direction.
pub fn primitive(v: &[Z]) -> Vec<Z> {
    let g = gcd_vec(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Primitive with first nonzero entry positive.
pub fn primitive_signed(v: &[Z]) -> Vec<Z> {
    let mut p = primitive(v);
    if let Some(x) = p.iter().find(|x| !x.is_zero()) {
        if x.is_negative() {
            for y in p.iter_mut() {
                *y = -y.clone();
            }
        }
    }
    p
}

/// Clears denominators of a rational vector and makes it primitive.
pub fn clear_denoms(v: &[Q]) -> Vec<Z> {
    let l = v.iter().fold(Z::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Z> = v.iter().map(|x| (x * qz(&l)).to_integer()).collect();
    primitive(&ints)
}

pub fn to_i64(v: &Z) -> Result<i64> {
    v.to_i64()
        .ok_or_else(|| Error::Precondition(format!("integer {v} does not fit in 64 bits")))
}

/// Reduced row echelon form of a rational matrix. Returns the nonzero rows and pivot columns.
pub fn rref(rows: &[Vec<Q>], ncols: usize) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r >= m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    if !m[r][j].is_zero() {
                        let t = &f * &m[r][j];
                        m[i][j] -= t;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank_q(rows: &[Vec<Q>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

pub fn rank_z(rows: &[Vec<Z>], ncols: usize) -> usize {
    let qs: Vec<Vec<Q>> = rows.iter().map(|r| to_q(r)).collect();
    rank_q(&qs, ncols)
}

/// Basis of the right nullspace `{x : A x = 0}` as primitive integer vectors.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Z>> {
    let (r, piv) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !piv.contains(c)).collect();
    let mut out = Vec::new();
    for &f in &free {
        let mut v = vec![Q::zero(); ncols];
        v[f] = Q::one();
        for (i, &p) in piv.iter().enumerate() {
            v[p] = -r[i][f].clone();
        }
        out.push(clear_denoms(&v));
    }
    out
}

/// Solves `A x = b` over Q; `None` when inconsistent. Free variables are set to zero.
pub fn solve_q(a: &[Vec<Q>], b: &[Q], ncols: usize) -> Option<Vec<Q>> {
    let aug: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, piv) = rref(&aug, ncols + 1);
    if piv.contains(&ncols) {
        return None;
    }
    let mut x = vec![Q::zero(); ncols];
    for (i, &p) in piv.iter().enumerate() {
        x[p] = r[i][ncols].clone();
    }
    Some(x)
}

/// Canonical integer basis of the row space: reduced echelon rows scaled to primitive integers.
pub fn canonical_span(rows: &[Vec<Z>], ncols: usize) -> Vec<Vec<Z>> {
    let qs: Vec<Vec<Q>> = rows.iter().map(|r| to_q(r)).collect();
    let (r, _) = rref(&qs, ncols);
    r.iter().map(|row| clear_denoms(row)).collect()
}

/// Reduces `v` modulo the span given in reduced echelon form so that it vanishes on the pivots.
pub fn reduce_mod_span(v: &[Q], basis_rref: &[Vec<Q>], pivots: &[usize]) -> Vec<Q> {
    let mut out = v.to_vec();
    for (row, &p) in basis_rref.iter().zip(pivots) {
        if !out[p].is_zero() {
            let f = out[p].clone() / &row[p];
            for (o, x) in out.iter_mut().zip(row) {
                if !x.is_zero() {
                    *o -= &f * x;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("3/6").unwrap(), qr(1, 2));
        assert_eq!(parse_q("-4").unwrap(), q(-4));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("abc").is_err());
        assert_eq!(fmt_q(&qr(-2, 4)), "-1/2");
        assert_eq!(fmt_q(&q(7)), "7");
        assert_eq!(ExtReal::parse("inf").unwrap(), ExtReal::Infinity);
        assert!(ExtReal::Finite(q(100)) < ExtReal::Infinity);
    }

    #[test]
    fn nullspace_and_solve() {
        let a = vec![qvec(&[1, 1, 0]), qvec(&[0, 1, 1])];
        let ns = nullspace(&a, 3);
        assert_eq!(ns, vec![zvec(&[1, -1, 1])]);
        let x = solve_q(&a, &qvec(&[2, 3]), 3).unwrap();
        assert_eq!(dot_q(&a[0], &x), q(2));
        assert_eq!(dot_q(&a[1], &x), q(3));
        let inconsistent = vec![qvec(&[1, 1]), qvec(&[2, 2])];
        assert!(solve_q(&inconsistent, &qvec(&[1, 3]), 2).is_none());
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(primitive(&zvec(&[-4, 6])), zvec(&[-2, 3]));
        assert_eq!(primitive_signed(&zvec(&[0, -4, 6])), zvec(&[0, 2, -3]));
        assert_eq!(clear_denoms(&[qr(1, 2), qr(1, 3)]), zvec(&[3, 2]));
    }
}
