//! JSON documents for the command line tool. Rationals are strings `"p/q"` (or `"p"`),
//! integers are JSON numbers when they fit in 64 bits and decimal strings otherwise.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::{fmt_q, parse_q, ExtReal, Q, Z};
use crate::error::{schema, Result};
use crate::extended::ExtendedPlSet;
use crate::order::MonomialOrder;
use crate::poly::Poly;
use crate::polyhedral::{Cone, PlSet};
use crate::semigroup::AffineSemigroup;
use crate::standard::MarkedPoly;
use crate::tropical::LocalTrop;

pub fn int_value(z: &Z) -> Value {
    match i64::try_from(z) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(z.to_string()),
    }
}

pub fn int_vec(v: &[Z]) -> Vec<Value> {
    v.iter().map(int_value).collect()
}

pub fn int_rows(v: &[Vec<Z>]) -> Vec<Vec<Value>> {
    v.iter().map(|r| int_vec(r)).collect()
}

pub fn parse_int(v: &Value) -> Result<Z> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Z::from(i)),
            None => schema(format!("not an integer: {n}")),
        },
        Value::String(s) => s
            .trim()
            .parse::<Z>()
            .or_else(|_| schema(format!("not an integer: {s}"))),
        other => schema(format!("not an integer: {other}")),
    }
}

pub fn parse_rational(v: &Value) -> Result<Q> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Q::from_integer(Z::from(i))),
            None => schema(format!(
                "rationals must be integers or \"p/q\" strings: {n}"
            )),
        },
        Value::String(s) => parse_q(s),
        other => schema(format!("not a rational: {other}")),
    }
}

pub fn parse_ext(v: &Value) -> Result<ExtReal> {
    match v {
        Value::String(s) => ExtReal::parse(s),
        other => Ok(ExtReal::Finite(parse_rational(other)?)),
    }
}

/// `{"rank": r, "generators": [[...], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupDoc {
    pub rank: usize,
    pub generators: Vec<Vec<Value>>,
}

impl SemigroupDoc {
    pub fn from_semigroup(g: &AffineSemigroup) -> SemigroupDoc {
        SemigroupDoc {
            rank: g.rank(),
            generators: int_rows(g.generators()),
        }
    }

    pub fn to_semigroup(&self) -> Result<AffineSemigroup> {
        let gens = self
            .generators
            .iter()
            .map(|r| r.iter().map(parse_int).collect::<Result<Vec<Z>>>())
            .collect::<Result<Vec<_>>>()?;
        AffineSemigroup::new(self.rank, gens)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub e: Vec<u32>,
    pub c: Value,
}

/// `{"n": n, "terms": [{"e": [...], "c": "p/q"}]}`; on input `"expr"` may replace `"terms"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyDoc {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
}

impl PolyDoc {
    pub fn from_poly(p: &Poly) -> PolyDoc {
        PolyDoc {
            n: p.nvars(),
            terms: Some(
                p.terms()
                    .map(|(e, c)| TermDoc {
                        e: e.clone(),
                        c: Value::String(fmt_q(c)),
                    })
                    .collect(),
            ),
            expr: None,
        }
    }

    pub fn to_poly(&self) -> Result<Poly> {
        match (&self.terms, &self.expr) {
            (Some(ts), None) => {
                let mut terms = Vec::with_capacity(ts.len());
                for t in ts {
                    if t.e.len() != self.n {
                        return schema(format!(
                            "exponent of length {} in {} variables",
                            t.e.len(),
                            self.n
                        ));
                    }
                    terms.push((t.e.clone(), parse_rational(&t.c)?));
                }
                Poly::from_terms(self.n, terms)
            }
            (None, Some(s)) => Poly::parse(s, self.n),
            _ => schema("a polynomial needs exactly one of \"terms\" and \"expr\""),
        }
    }
}

pub fn polys_doc(ps: &[Poly]) -> Vec<PolyDoc> {
    ps.iter().map(PolyDoc::from_poly).collect()
}

/// `{"rows": [[rationals]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderDoc {
    pub rows: Vec<Vec<Value>>,
}

impl OrderDoc {
    pub fn from_order(o: &MonomialOrder) -> OrderDoc {
        OrderDoc {
            rows: o
                .rows()
                .iter()
                .map(|r| r.iter().map(|&x| Value::from(x)).collect())
                .collect(),
        }
    }

    pub fn to_order(&self, n: usize) -> Result<MonomialOrder> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(parse_rational).collect::<Result<Vec<Q>>>())
            .collect::<Result<Vec<_>>>()?;
        MonomialOrder::new(n, &rows)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeDoc {
    pub rays: Vec<Vec<Value>>,
    pub normals: Vec<Vec<Value>>,
    pub lineality: Vec<Vec<Value>>,
    pub equations: Vec<Vec<Value>>,
}

impl ConeDoc {
    pub fn from_cone(c: &Cone) -> ConeDoc {
        ConeDoc {
            rays: int_rows(c.rays()),
            normals: int_rows(c.facets()),
            lineality: int_rows(c.lineality()),
            equations: int_rows(c.equations()),
        }
    }
}

pub fn plset_doc(s: &PlSet) -> Vec<ConeDoc> {
    s.pieces().iter().map(ConeDoc::from_cone).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct MarkedDoc {
    pub poly: PolyDoc,
    pub marked: Vec<u32>,
}

pub fn marked_doc(ms: &[MarkedPoly]) -> Vec<MarkedDoc> {
    ms.iter()
        .map(|m| MarkedDoc {
            poly: PolyDoc::from_poly(&m.poly),
            marked: m.marked.clone(),
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct StratumDoc {
    pub face: Vec<usize>,
    pub dim: usize,
    pub pieces: Vec<ConeDoc>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IncidenceDoc {
    pub from: Vec<usize>,
    pub piece: usize,
    pub to: Vec<usize>,
    pub image: ConeDoc,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalTropDoc {
    pub strata: Vec<StratumDoc>,
    pub closure_incidence: Vec<IncidenceDoc>,
}

impl LocalTropDoc {
    /// The nonnegative part (`positive = false`) or the positive part of `t`.
    pub fn from_trop(t: &LocalTrop, positive: bool) -> LocalTropDoc {
        let set: &ExtendedPlSet = if positive { &t.ptrop } else { &t.nntrop };
        let strata = t
            .ambient
            .strata()
            .iter()
            .zip(&set.strata)
            .map(|(s, ps)| StratumDoc {
                face: s.face_rays.clone(),
                dim: s.dim(),
                pieces: plset_doc(ps),
            })
            .collect();
        let closure_incidence = t
            .closure_incidence
            .iter()
            .filter(|inc| {
                !positive
                    || set.strata[inc.from]
                        .pieces()
                        .contains(&t.nntrop.strata[inc.from].pieces()[inc.piece])
            })
            .map(|inc| IncidenceDoc {
                from: t.ambient.stratum(inc.from).face_rays.clone(),
                piece: inc.piece,
                to: t.ambient.stratum(inc.to).face_rays.clone(),
                image: ConeDoc::from_cone(&inc.image),
            })
            .collect();
        LocalTropDoc {
            strata,
            closure_incidence,
        }
    }
}

pub fn q_strings(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}
