//! Monomial orders given by weight matrices, in the min convention: the initial term of a
//! polynomial is its least term.

use std::cmp::Ordering;

use num_traits::Signed;

use crate::arith::{clear_denoms, to_i64, Q};
use crate::error::{precondition, schema, Result};
use crate::poly::{Exp, Poly};

/// Compares exponents by the rows in order (smaller weight is smaller), then by the
/// terminal tie-break: scanning from the last variable, the smaller exponent is smaller.
/// With no rows this makes `x < y < z` and every power of `x` smaller than `y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    n: usize,
    rows: Vec<Vec<i64>>,
}

impl MonomialOrder {
    /// Rows are scaled to integers; each must fit in `i64`.
    pub fn new(n: usize, rows: &[Vec<Q>]) -> Result<MonomialOrder> {
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != n {
                return schema(format!("order row of length {} for {n} variables", r.len()));
            }
            let zr = clear_denoms(r);
            let ir: Vec<i64> = zr.iter().map(to_i64).collect::<Result<_>>()?;
            if ir.iter().any(|x| x.unsigned_abs() > (1u64 << 40)) {
                return precondition("order row entries are too large");
            }
            out.push(ir);
        }
        Ok(MonomialOrder { n, rows: out })
    }

    pub fn from_int_rows(n: usize, rows: Vec<Vec<i64>>) -> MonomialOrder {
        assert!(rows.iter().all(|r| r.len() == n));
        MonomialOrder { n, rows }
    }

    /// The pure tie-break order.
    pub fn lex(n: usize) -> MonomialOrder {
        MonomialOrder { n, rows: vec![] }
    }

    /// Lex order in which `perm[0] < perm[1] < ...` and every power of a smaller variable is
    /// below any larger one.
    pub fn lex_by(perm: &[usize]) -> MonomialOrder {
        let n = perm.len();
        let rows = perm
            .iter()
            .rev()
            .map(|&v| {
                let mut r = vec![0; n];
                r[v] = 1;
                r
            })
            .collect();
        MonomialOrder { n, rows }
    }

    /// Degree-refined order for polynomial-ring computations where the leading term is the
    /// largest: rows `-(1,...,1)` then reverse lex.
    pub fn global_grevlex(n: usize) -> MonomialOrder {
        let mut rows = vec![vec![-1; n]];
        for i in (1..n).rev() {
            let mut r = vec![0; n];
            r[i] = 1;
            rows.push(r);
        }
        MonomialOrder { n, rows }
    }

    /// Global lex with `x_0 > x_1 > ... > x_{n-1}`.
    pub fn global_lex(n: usize) -> MonomialOrder {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = -1;
                r
            })
            .collect();
        MonomialOrder { n, rows }
    }

    /// Global order eliminating the variables in `elim`: any monomial involving them is
    /// larger than every monomial that does not.
    pub fn global_elimination(n: usize, elim: &[usize]) -> MonomialOrder {
        let mut first = vec![0; n];
        for &i in elim {
            first[i] = -1;
        }
        let mut rows = vec![first];
        rows.extend(MonomialOrder::global_grevlex(n).rows);
        MonomialOrder { n, rows }
    }

    /// Prepends rows to an existing order.
    pub fn refine(front: &[Vec<i64>], base: &MonomialOrder) -> MonomialOrder {
        let mut rows = front.to_vec();
        rows.extend(base.rows.iter().cloned());
        MonomialOrder { n: base.n, rows }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn rows_q(&self) -> Vec<Vec<Q>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect())
            .collect()
    }

    /// `0` is the least monomial: the first row nonzero on each unit vector is positive there.
    pub fn is_local(&self) -> bool {
        (0..self.n).all(|i| {
            self.rows
                .iter()
                .find(|r| r[i] != 0)
                .map(|r| r[i] > 0)
                .unwrap_or(true)
        })
    }

    /// `0` is the largest monomial.
    pub fn is_global(&self) -> bool {
        (0..self.n).all(|i| {
            self.rows
                .iter()
                .find(|r| r[i] != 0)
                .map(|r| r[i] < 0)
                .unwrap_or(false)
        })
    }

    pub fn require_local(&self) -> Result<()> {
        if self.is_local() {
            Ok(())
        } else {
            precondition("the order is not local: some variable is smaller than 1")
        }
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        for r in &self.rows {
            let mut s: i128 = 0;
            for i in 0..self.n {
                s += r[i] as i128 * (a[i] as i128 - b[i] as i128);
            }
            match s.cmp(&0) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        for i in (0..self.n).rev() {
            match a[i].cmp(&b[i]) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// The least exponent in the support together with its coefficient.
    pub fn leading(&self, f: &Poly) -> Option<(Exp, Q)> {
        let mut best: Option<(&Exp, &Q)> = None;
        for (e, c) in f.terms() {
            best = match best {
                None => Some((e, c)),
                Some((b, d)) => {
                    if self.cmp(e, b) == Ordering::Less {
                        Some((e, c))
                    } else {
                        Some((b, d))
                    }
                }
            };
        }
        best.map(|(e, c)| (e.clone(), c.clone()))
    }

    pub fn leading_exp(&self, f: &Poly) -> Option<Exp> {
        self.leading(f).map(|(e, _)| e)
    }
}

/// Minimum of `<w, m>` over the support; `None` for the zero polynomial.
pub fn w_order(f: &Poly, w: &[Q]) -> Option<Q> {
    f.terms()
        .map(|(e, _)| {
            e.iter()
                .zip(w)
                .map(|(a, b)| b * Q::from_integer((*a).into()))
                .sum::<Q>()
        })
        .min()
}

/// Sum of the terms of minimal `w`-weight.
pub fn initial_form(f: &Poly, w: &[Q]) -> Poly {
    let Some(m) = w_order(f, w) else {
        return f.clone();
    };
    f.filter_terms(|e| {
        let v: Q = e
            .iter()
            .zip(w)
            .map(|(a, b)| b * Q::from_integer((*a).into()))
            .sum();
        v == m
    })
}

/// True when `w` has no negative entries.
pub fn is_nonneg(w: &[Q]) -> bool {
    w.iter().all(|x| !x.is_negative())
}

pub fn is_positive(w: &[Q]) -> bool {
    w.iter().all(|x| x.is_positive())
}
