//! Sparse multivariate polynomials over Q with exponents in N^n.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{fmt_q, parse_q, Q, Z};
use crate::error::{schema, Result};

pub type Exp = Vec<u32>;

/// A polynomial in `n` variables. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Exp, Q>,
}

pub fn exp_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn exp_sub(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn exp_add(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn exp_lcm(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn exp_deg(a: &[u32]) -> u32 {
    a.iter().sum()
}

pub fn exp_to_z(a: &[u32]) -> Vec<Z> {
    a.iter().map(|&x| Z::from(x)).collect()
}

/// Default variable names: `x, y, z` up to three variables, `x1, x2, ...` beyond.
pub fn default_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

impl Poly {
    pub fn zero(n: usize) -> Poly {
        Poly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Q) -> Poly {
        Poly::monomial(n, vec![0; n], c)
    }

    pub fn one(n: usize) -> Poly {
        Poly::constant(n, Q::one())
    }

    pub fn monomial(n: usize, e: Exp, c: Q) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Poly { n, terms }
    }

    pub fn var(n: usize, i: usize) -> Poly {
        let mut e = vec![0; n];
        e[i] = 1;
        Poly::monomial(n, e, Q::one())
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Exp, Q)>) -> Result<Poly> {
        let mut p = Poly::zero(n);
        for (e, c) in terms {
            if e.len() != n {
                return schema(format!(
                    "exponent of length {} in a ring with {n} variables",
                    e.len()
                ));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Q)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Exp> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, e: &[u32]) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&vec![0; self.n])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| exp_deg(e)).max()
    }

    pub fn add_term(&mut self, e: Exp, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self -= c * x^a * other`.
    pub fn sub_mul_term(&mut self, other: &Poly, a: &[u32], c: &Q) {
        for (e, d) in &other.terms {
            self.add_term(exp_add(e, a), -(c * d));
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(e, d)| (e.clone(), d * c)).collect(),
        }
    }

    pub fn mul_term(&self, a: &[u32], c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, d)| (exp_add(e, a), d * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut r = Poly::zero(self.n);
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                r.add_term(exp_add(e, f), c * d);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::one(self.n);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Keeps the terms satisfying the predicate.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Exp) -> bool) -> Poly {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sets the variables in `vars` to zero (keeps terms not involving them).
    pub fn truncate(&self, vars: &[usize]) -> Poly {
        self.filter_terms(|e| vars.iter().all(|&i| e[i] == 0))
    }

    /// Drops the variables in `vars` from the ring; terms involving them must be absent.
    pub fn drop_vars(&self, vars: &[usize]) -> Poly {
        let keep: Vec<usize> = (0..self.n).filter(|i| !vars.contains(i)).collect();
        let mut r = Poly::zero(keep.len());
        for (e, c) in &self.terms {
            if vars.iter().any(|&i| e[i] != 0) {
                continue;
            }
            r.add_term(keep.iter().map(|&i| e[i]).collect(), c.clone());
        }
        r
    }

    /// Embeds into a ring with `n` variables, sending variable `j` to variable `slots[j]`.
    pub fn embed(&self, n: usize, slots: &[usize]) -> Poly {
        let mut r = Poly::zero(n);
        for (e, c) in &self.terms {
            let mut f = vec![0; n];
            for (j, &s) in slots.iter().enumerate() {
                f[s] += e[j];
            }
            r.add_term(f, c.clone());
        }
        r
    }

    /// Adds a homogenizing variable at the end: `x^e h^{d - |e|}`.
    pub fn homogenize(&self) -> Poly {
        let d = self.degree().unwrap_or(0);
        let mut r = Poly::zero(self.n + 1);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f.push(d - exp_deg(e));
            r.add_term(f, c.clone());
        }
        r
    }

    /// Sets the last variable to one.
    pub fn dehomogenize(&self) -> Poly {
        let mut r = Poly::zero(self.n - 1);
        for (e, c) in &self.terms {
            r.add_term(e[..self.n - 1].to_vec(), c.clone());
        }
        r
    }

    /// Divides by the largest monomial dividing every term.
    pub fn remove_content_monomial(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let g: Exp = (0..self.n)
            .map(|i| self.terms.keys().map(|e| e[i]).min().unwrap_or(0))
            .collect();
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (exp_sub(e, &g), c.clone()))
                .collect(),
        }
    }

    /// Scales so that the given monomial has coefficient one.
    pub fn monic_at(&self, e: &[u32]) -> Poly {
        let c = self.coeff(e);
        if c.is_zero() {
            return self.clone();
        }
        self.scale(&c.recip())
    }

    /// Substitutes `x_i ↦ x_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> Poly {
        self.embed(self.n, perm)
    }

    pub fn parse(s: &str, n: usize) -> Result<Poly> {
        Poly::parse_with(s, &default_names(n))
    }

    /// Parses expressions such as `x^3 + 2*x^2*y - 3/2 x y^3 + 1`.
    pub fn parse_with(s: &str, names: &[String]) -> Result<Poly> {
        let n = names.len();
        let toks = tokenize(s)?;
        let mut p = Poly::zero(n);
        let mut i = 0;
        if toks.is_empty() {
            return schema("empty polynomial");
        }
        while i < toks.len() {
            let mut sign = Q::one();
            while i < toks.len() && (toks[i] == Tok::Plus || toks[i] == Tok::Minus) {
                if toks[i] == Tok::Minus {
                    sign = -sign;
                }
                i += 1;
            }
            let mut coef = Q::one();
            let mut e = vec![0u32; n];
            let mut any = false;
            while i < toks.len() && toks[i] != Tok::Plus && toks[i] != Tok::Minus {
                match &toks[i] {
                    Tok::Num(q) => {
                        coef *= q;
                        i += 1;
                    }
                    Tok::Ident(name) => {
                        let Some(v) = names.iter().position(|x| x == name) else {
                            return schema(format!("unknown variable {name:?}"));
                        };
                        i += 1;
                        let mut k = 1u32;
                        if i < toks.len() && toks[i] == Tok::Caret {
                            i += 1;
                            match toks.get(i) {
                                Some(Tok::Num(q)) if q.is_integer() && !q.is_negative() => {
                                    k = q.to_integer().try_into().map_err(|_| {
                                        crate::Error::Schema("exponent too large".into())
                                    })?;
                                    i += 1;
                                }
                                _ => return schema("expected a nonnegative integer exponent"),
                            }
                        }
                        e[v] += k;
                    }
                    Tok::Star => i += 1,
                    Tok::Caret => return schema("unexpected '^'"),
                    Tok::Plus | Tok::Minus => unreachable!(),
                }
                any = true;
            }
            if !any {
                return schema(format!("malformed polynomial {s:?}"));
            }
            p.add_term(e, sign * coef);
        }
        Ok(p)
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut ts: Vec<(&Exp, &Q)> = self.terms.iter().collect();
        ts.sort_by(|a, b| exp_deg(b.0).cmp(&exp_deg(a.0)).then(b.0.cmp(a.0)));
        let mut out = String::new();
        for (k, (e, c)) in ts.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], x)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&fmt_q(&a));
            } else {
                if !a.is_one() {
                    out.push_str(&fmt_q(&a));
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(&default_names(self.n)))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Q),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_digit() || cs[i] == '/') {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Num(parse_q(&t)?));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else {
            out.push(match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                _ => return schema(format!("unexpected character {c:?}")),
            });
            i += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qr};

    #[test]
    fn parse_roundtrip() {
        let p = Poly::parse("x^3 + x^2*y + x^2 y^2 - 3/2*x*y^3", 2).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.coeff(&[1, 3]), qr(-3, 2));
        assert_eq!(p.to_string(), "x^2*y^2 - 3/2*x*y^3 + x^3 + x^2*y");
        assert_eq!(Poly::parse(&p.to_string(), 2).unwrap(), p);
        assert!(Poly::parse("x + w", 2).is_err());
        assert!(Poly::parse("x^", 2).is_err());
    }

    #[test]
    fn arithmetic() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let f = x.add(&y).mul(&x.sub(&y));
        assert_eq!(f, Poly::parse("x^2 - y^2", 2).unwrap());
        assert_eq!(f.degree(), Some(2));
        assert_eq!(x.add(&y).pow(2).coeff(&[1, 1]), q(2));
        let g = Poly::parse("x*y + x^2*y", 2).unwrap();
        assert_eq!(
            g.remove_content_monomial(),
            Poly::parse("1 + x", 2).unwrap()
        );
    }

    #[test]
    fn truncation_and_embedding() {
        let f = Poly::parse("x^3 + x^2*y + y^2 + 1", 2).unwrap();
        assert_eq!(f.truncate(&[0]), Poly::parse("y^2 + 1", 2).unwrap());
        assert_eq!(
            f.truncate(&[0]).drop_vars(&[0]),
            Poly::parse("x^2 + 1", 1).unwrap()
        );
        let g = Poly::parse("x + 2", 1).unwrap().embed(3, &[2]);
        assert_eq!(g, Poly::parse("z + 2", 3).unwrap());
        let h = Poly::parse("x^2 + y + 1", 2).unwrap().homogenize();
        assert_eq!(h, Poly::parse("x^2 + y*z + z^2", 3).unwrap());
        assert_eq!(h.dehomogenize(), Poly::parse("x^2 + y + 1", 2).unwrap());
    }
}
