use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use troplocal::arith::{ExtReal, Q};
use troplocal::error::Error;
use troplocal::ideal::{
    initial_ideal, initial_ideal_ext, krull_dimension, monomial_free, toric_ideal,
};
use troplocal::json::{
    int_rows, marked_doc, parse_ext, plset_doc, polys_doc, q_strings, ConeDoc, LocalTropDoc,
    OrderDoc, PolyDoc, SemigroupDoc,
};
use troplocal::order::MonomialOrder;
use troplocal::poly::{exp_to_z, Poly};
use troplocal::polyhedral::{Cone, NewtonPolyhedron};
use troplocal::semigroup::AffineSemigroup;
use troplocal::standard::{mora_divide, standard_basis};
use troplocal::tropical::{
    compare_local_global, gamma_ptrop_finite, hypersurface_trop, interior_part,
    pure_dimension_check, Engine, GammaPoly,
};
use troplocal::Result;

use crate::{render, Command, Options};

/// The input document. Each command reads the fields it needs.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Job {
    #[serde(default)]
    semigroup: Option<SemigroupDoc>,
    #[serde(default)]
    ideal: Option<Vec<PolyDoc>>,
    #[serde(default)]
    poly: Option<PolyDoc>,
    #[serde(default)]
    divisors: Option<Vec<PolyDoc>>,
    #[serde(default)]
    order: Option<OrderDoc>,
    #[serde(default)]
    weight: Option<Vec<Value>>,
    #[serde(default)]
    dimension: Option<i64>,
}

fn schema<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Schema(msg.into()))
}

fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}

impl Job {
    fn semigroup(&self) -> Result<AffineSemigroup> {
        match &self.semigroup {
            Some(s) => s.to_semigroup(),
            None => schema("missing field \"semigroup\""),
        }
    }

    fn ideal(&self) -> Result<(Vec<Poly>, usize)> {
        let Some(docs) = &self.ideal else {
            return schema("missing field \"ideal\"");
        };
        let ps: Vec<Poly> = docs.iter().map(|d| d.to_poly()).collect::<Result<_>>()?;
        let Some(first) = ps.first() else {
            return schema("the ideal needs at least one generator");
        };
        let n = first.nvars();
        if ps.iter().any(|p| p.nvars() != n) {
            return schema("generators have different numbers of variables");
        }
        Ok((ps, n))
    }

    fn poly(&self) -> Result<Poly> {
        match &self.poly {
            Some(p) => p.to_poly(),
            None => schema("missing field \"poly\""),
        }
    }

    fn order(&self, n: usize) -> Result<MonomialOrder> {
        match &self.order {
            Some(o) => o.to_order(n),
            None => Ok(MonomialOrder::lex(n)),
        }
    }

    fn weight(&self, n: usize) -> Result<Option<Vec<ExtReal>>> {
        let Some(w) = &self.weight else {
            return Ok(None);
        };
        if w.len() != n {
            return schema(format!("weight of length {} for {n} variables", w.len()));
        }
        Ok(Some(w.iter().map(parse_ext).collect::<Result<_>>()?))
    }

    /// A nontrivial semigroup other than a standard orthant.
    fn general_gamma(&self) -> Result<Option<AffineSemigroup>> {
        let Some(_) = &self.semigroup else {
            return Ok(None);
        };
        let g = self.semigroup()?;
        let orth = AffineSemigroup::orthant(g.rank());
        let mut a: Vec<_> = g.generators().to_vec();
        let mut b: Vec<_> = orth.generators().to_vec();
        a.sort();
        b.sort();
        Ok((a != b).then_some(g))
    }
}

fn check_dim(n: usize, opts: &Options) -> Result<()> {
    if n > opts.max_dim {
        return precondition(format!(
            "ambient rank {n} exceeds TROPLOCAL_MAX_DIM = {}",
            opts.max_dim
        ));
    }
    Ok(())
}

fn emit<T: Serialize>(v: &T, opts: &Options) -> Result<String> {
    let s = if opts.pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    };
    s.map_err(|e| Error::Schema(e.to_string()))
}

fn finite_weight(w: &[ExtReal]) -> Option<Vec<Q>> {
    w.iter().map(|x| x.finite().cloned()).collect()
}

fn cone_list(cs: &[Cone]) -> Vec<ConeDoc> {
    cs.iter().map(ConeDoc::from_cone).collect()
}

pub fn run(cmd: Command, text: &str, opts: &Options) -> Result<String> {
    let job: Job = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    match cmd {
        Command::Saturate => {
            let g = job.semigroup()?;
            check_dim(g.rank(), opts)?;
            let hb = g.saturation()?;
            emit(
                &json!({
                    "saturated": g.is_saturated()?,
                    "hilbert_basis": int_rows(&hb),
                }),
                opts,
            )
        }
        Command::Units => {
            let g = job.semigroup()?;
            check_dim(g.rank(), opts)?;
            emit(
                &json!({ "units": int_rows(&g.units()), "pointed": g.is_pointed() }),
                opts,
            )
        }
        Command::Quotient => {
            let g = job.semigroup()?;
            check_dim(g.rank(), opts)?;
            let q = g.quotient_by_units()?;
            emit(
                &json!({
                    "free_rank": q.free_rank,
                    "kept": q.kept,
                    "images": int_rows(&q.images),
                    "torsion_images": int_rows(&q.torsion_images),
                    "torsion": q.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                    "has_torsion": q.has_torsion,
                }),
                opts,
            )
        }
        Command::Faces => {
            let g = job.semigroup()?;
            check_dim(g.rank(), opts)?;
            let faces: Vec<Value> = g
                .faces()
                .iter()
                .map(|f| {
                    json!({
                        "tau": ConeDoc::from_cone(&f.tau),
                        "dim": f.tau.dim(),
                        "generators": f.generators,
                    })
                })
                .collect();
            emit(&json!({ "faces": faces }), opts)
        }
        Command::ToricIdeal => {
            let g = job.semigroup()?;
            check_dim(g.rank(), opts)?;
            let t = toric_ideal(&g)?;
            emit(
                &json!({ "n": g.generators().len(), "ideal": polys_doc(&t) }),
                opts,
            )
        }
        Command::Newton | Command::NewtonCone => {
            let f = job.poly()?;
            let n = f.nvars();
            check_dim(n, opts)?;
            if f.is_zero() {
                return precondition("the zero polynomial has no Newton polyhedron");
            }
            let recession = match job.general_gamma()? {
                Some(g) if g.rank() == n => g.cone(),
                Some(_) => return schema("semigroup rank differs from the number of variables"),
                None => Cone::orthant(n),
            };
            let pts: Vec<_> = f.support().iter().map(|e| exp_to_z(e)).collect();
            let np = NewtonPolyhedron::new(&pts, &recession)?;
            if cmd == Command::NewtonCone {
                return emit(&json!({ "pieces": plset_doc(&np.newton_cone()) }), opts);
            }
            let faces: Vec<Value> = np
                .compact_faces()
                .iter()
                .map(|fc| json!({ "vertices": int_rows(&fc.vertices), "dim": fc.dim() }))
                .collect();
            emit(
                &json!({
                    "vertices": int_rows(np.vertices()),
                    "compact_faces": faces,
                    "normal_fan": cone_list(&np.normal_fan().maximal_cones()),
                }),
                opts,
            )
        }
        Command::StdBasis => {
            let (gens, n) = job.ideal()?;
            check_dim(n, opts)?;
            let ord = job.order(n)?;
            ord.require_local()?;
            let b = standard_basis(&gens, &ord)?;
            emit(
                &json!({
                    "order": OrderDoc::from_order(&ord),
                    "basis": marked_doc(&b.elements),
                    "initial_ideal": b.marked(),
                }),
                opts,
            )
        }
        Command::Divide => {
            let f = job.poly()?;
            let n = f.nvars();
            check_dim(n, opts)?;
            let Some(ds) = &job.divisors else {
                return schema("missing field \"divisors\"");
            };
            let ds: Vec<Poly> = ds.iter().map(|d| d.to_poly()).collect::<Result<_>>()?;
            if ds.iter().any(|d| d.nvars() != n) {
                return schema("divisors have a different number of variables");
            }
            let ord = job.order(n)?;
            ord.require_local()?;
            let d = mora_divide(&f, &ds, &ord)?;
            emit(
                &json!({
                    "unit": PolyDoc::from_poly(&d.unit),
                    "quotients": polys_doc(&d.quotients),
                    "remainder": PolyDoc::from_poly(&d.remainder),
                    "complete": d.complete,
                }),
                opts,
            )
        }
        Command::Init => {
            let (gens, n) = job.ideal()?;
            check_dim(n, opts)?;
            let Some(w) = job.weight(n)? else {
                return schema("missing field \"weight\"");
            };
            if let Some(wf) = finite_weight(&w) {
                let ii = initial_ideal(&gens, &wf)?;
                return emit(
                    &json!({
                        "variables": (0..n).collect::<Vec<_>>(),
                        "generators": polys_doc(&ii.generators),
                        "basis": marked_doc(&ii.basis.elements),
                    }),
                    opts,
                );
            }
            let (j, kept) = initial_ideal_ext(&gens, &w)?;
            emit(
                &json!({ "variables": kept, "generators": polys_doc(&j) }),
                opts,
            )
        }
        Command::MonomialFree => {
            let (gens, n) = job.ideal()?;
            check_dim(n, opts)?;
            let free = match job.weight(n)? {
                None => monomial_free(&gens, n),
                Some(w) => troplocal::ideal::extended_membership(&gens, &w)?,
            };
            emit(&json!({ "monomial_free": free }), opts)
        }
        Command::GroebnerFan => {
            let (gens, n) = job.ideal()?;
            check_dim(n, opts)?;
            let f = troplocal::tropical::groebner_fan(&gens, n, opts.seed)?;
            let max = f.maximal_indices();
            let cones: Vec<Value> = f
                .cones()
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    json!({
                        "cone": ConeDoc::from_cone(&c.cone),
                        "dim": c.cone.dim(),
                        "maximal": max.contains(&i),
                        "facets": f.fan().facet_indices(i),
                        "weight": troplocal::json::int_vec(&c.weight),
                        "basis": marked_doc(&c.basis),
                        "initial_forms": polys_doc(&c.initial_forms),
                        "perturbed": c.perturbed,
                        "monomial_free": c.monomial_free(),
                    })
                })
                .collect();
            emit(&json!({ "n": n, "cones": cones }), opts)
        }
        Command::UniversalBasis => {
            let (gens, n) = job.ideal()?;
            check_dim(n, opts)?;
            let f = troplocal::tropical::groebner_fan(&gens, n, opts.seed)?;
            emit(&json!({ "basis": polys_doc(&f.universal_basis()) }), opts)
        }
        Command::TropicalBasis => {
            let (gens, n) = job.ideal()?;
            check_dim(n, opts)?;
            let eng = Engine::new(&gens, n, opts.seed)?;
            emit(
                &json!({
                    "basis": polys_doc(&eng.tropical_basis()?),
                    "extended_basis": polys_doc(&eng.extended_tropical_basis()?),
                }),
                opts,
            )
        }
        Command::Nntrop | Command::Ptrop => {
            let (gens, n) = job.ideal()?;
            check_dim(n, opts)?;
            if let Some(g) = job.general_gamma()? {
                if cmd == Command::Nntrop {
                    return precondition(
                        "only the finite part of the positive tropicalization is available over a general semigroup",
                    );
                }
                return gamma_ptrop(&g, &gens, n, opts);
            }
            let t = Engine::new(&gens, n, opts.seed)?.nntrop();
            if cmd == Command::Ptrop && !interior_part(&t.ambient, &t.nntrop).set_eq(&t.ptrop) {
                return Err(Error::Limit(
                    "positive part differs from the interior of the nonnegative part".into(),
                ));
            }
            emit(&LocalTropDoc::from_trop(&t, cmd == Command::Ptrop), opts)
        }
        Command::HypersurfaceTrop => {
            let f = job.poly()?;
            check_dim(f.nvars(), opts)?;
            let t = hypersurface_trop(&f)?;
            emit(&LocalTropDoc::from_trop(&t, false), opts)
        }
        Command::CompareGlobal => {
            let (gens, n) = job.ideal()?;
            check_dim(n, opts)?;
            let t = Engine::new(&gens, n, opts.seed)?.nntrop();
            let c = compare_local_global(&gens, &t, opts.samples, opts.seed)?;
            emit(
                &json!({
                    "samples": c.samples,
                    "agreements": c.agreements,
                    "in_both": c.in_both,
                    "disagreements": c.disagreements.iter().map(|w| q_strings(w)).collect::<Vec<_>>(),
                    "agrees": c.agrees(),
                }),
                opts,
            )
        }
        Command::Dimension => {
            let (gens, n) = job.ideal()?;
            check_dim(n, opts)?;
            let k = krull_dimension(&gens, n);
            let d = job.dimension.unwrap_or(k);
            let t = Engine::new(&gens, n, opts.seed)?.nntrop();
            let fin = t.finite_part();
            let pure = d >= 0 && pure_dimension_check(&t, d as usize);
            emit(
                &json!({
                    "krull_dimension": k,
                    "expected": d,
                    "finite_dim": fin.dim(),
                    "pure_dim": fin.pure_dim(),
                    "pure": pure,
                }),
                opts,
            )
        }
        Command::Render => {
            if let Some(p) = &job.poly {
                let f = p.to_poly()?;
                if f.nvars() != 2 {
                    return precondition("rendering needs two variables");
                }
                let t = if f.constant_term() == Q::from_integer(0.into()) {
                    Some(hypersurface_trop(&f)?)
                } else {
                    None
                };
                return Ok(render::svg(Some(&f), t.as_ref()));
            }
            let (gens, n) = job.ideal()?;
            if n != 2 {
                return precondition("rendering needs two variables");
            }
            let t = Engine::new(&gens, n, opts.seed)?.nntrop();
            Ok(render::svg(None, Some(&t)))
        }
    }
}

fn gamma_ptrop(g: &AffineSemigroup, gens: &[Poly], n: usize, opts: &Options) -> Result<String> {
    if g.rank() != n {
        return schema("semigroup rank differs from the number of variables");
    }
    check_dim(g.generators().len(), opts)?;
    let gp: Vec<GammaPoly> = gens
        .iter()
        .map(|p| GammaPoly {
            terms: p.terms().map(|(e, c)| (exp_to_z(e), c.clone())).collect(),
        })
        .collect();
    let fin = gamma_ptrop_finite(g, &gp, opts.seed)?;
    emit(
        &json!({
            "experimental": true,
            "strata": [{ "face": Vec::<usize>::new(), "dim": n, "pieces": plset_doc(&fin) }],
            "closure_incidence": [],
        }),
        opts,
    )
}
