//! One test per acceptance criterion. Each prints a `criterion N: PASS|FAIL` line straight to
//! stdout so the lines survive output capture.

mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use common::{p, random_ideal, random_unit, run_json};
use troplocal::arith::{ExtReal, Q, Z};
use troplocal::extended::ExtendedPoint;
use troplocal::ideal::{extended_membership, krull_dimension, toric_ideal};
use troplocal::json::PolyDoc;
use troplocal::order::initial_form;
use troplocal::poly::Poly;
use troplocal::polyhedral::{Cone, PlSet};
use troplocal::semigroup::AffineSemigroup;
use troplocal::tropical::{
    compare_local_global, hypersurface_trop, nntrop_via_basis, pure_dimension_check, Engine,
    StratumKind,
};

fn report(n: u32, ok: bool, detail: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "criterion {n}: {status} ({detail})");
    let _ = out.flush();
}

fn expr_doc(s: &str, n: usize) -> Value {
    json!({ "n": n, "expr": s })
}

fn to_poly(v: &Value) -> Poly {
    serde_json::from_value::<PolyDoc>(v.clone())
        .unwrap()
        .to_poly()
        .unwrap()
}

fn int_rows(v: &Value) -> BTreeSet<Vec<i64>> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|r| {
            r.as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_i64().unwrap())
                .collect()
        })
        .collect()
}

fn ray(v: &[i64]) -> Cone {
    Cone::from_generators(v.len(), &[v.iter().map(|&x| Z::from(x)).collect()], &[])
}

const BJSST: [&str; 4] = [
    "x + y + z",
    "x^2*y + x*y^2",
    "x^2*z + x*z^2",
    "y^2*z + y*z^2",
];

fn bjsst_job() -> Value {
    json!({ "ideal": BJSST.iter().map(|s| expr_doc(s, 3)).collect::<Vec<_>>() })
}

#[test]
fn criterion_1_bjsst() {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for perm in perms {
        // perm[0] is the smallest variable; the first row weights the largest.
        let rows: Vec<Vec<i64>> = perm
            .iter()
            .rev()
            .map(|&v| (0..3).map(|i| (i == v) as i64).collect())
            .collect();
        let mut job = bjsst_job();
        job["order"] = json!({ "rows": rows });
        let out = run_json(&["std-basis"], &job.to_string());
        let got = int_rows(&out["initial_ideal"]);
        let mut min = vec![0i64; 3];
        min[perm[0]] = 1;
        let mut other = vec![0i64; 3];
        other[perm[1]] = 2;
        other[perm[2]] = 1;
        let want: BTreeSet<Vec<i64>> = [min, other].into_iter().collect();
        if got != want {
            ok = false;
            notes.push(format!("order {perm:?}: {got:?}"));
        }
    }
    let mut job = bjsst_job();
    job["weight"] = json!([1, 1, 1]);
    let mf = run_json(&["monomial-free"], &job.to_string());
    let free = mf["monomial_free"].as_bool().unwrap();
    ok &= !free;
    let tb = run_json(&["tropical-basis"], &bjsst_job().to_string());
    let w = vec![Q::from_integer(Z::from(1)); 3];
    let witness = tb["basis"]
        .as_array()
        .unwrap()
        .iter()
        .map(to_poly)
        .find(|f| initial_form(f, &w).len() == 1);
    ok &= witness.is_some();
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(5);
    notes.push(format!(
        "six orders checked, monomial_free={free}, witness={}, {elapsed:.2?}",
        witness
            .map(|f| f.to_string())
            .unwrap_or_else(|| "none".into())
    ));
    report(1, ok, &notes.join("; "));
    assert!(ok);
}

#[test]
fn criterion_2_extnorm() {
    let start = Instant::now();
    let job = json!({ "poly": expr_doc("x^3 + x^2*y + x^2*y^2 + x*y^3", 2) }).to_string();
    let nw = run_json(&["newton"], &job);
    let verts = int_rows(&nw["vertices"]);
    let want_v: BTreeSet<Vec<i64>> = [vec![3, 0], vec![2, 1], vec![1, 3]].into_iter().collect();
    let nc = run_json(&["newton-cone"], &job);
    let rays: BTreeSet<BTreeSet<Vec<i64>>> = nc["pieces"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| int_rows(&c["rays"]))
        .collect();
    let want_r: BTreeSet<BTreeSet<Vec<i64>>> = [vec![1, 1], vec![2, 1]]
        .into_iter()
        .map(|r| [r].into_iter().collect())
        .collect();
    let ht = run_json(&["hypersurface-trop"], &job);
    let stratum = |face: &[i64]| -> Vec<Value> {
        ht["strata"]
            .as_array()
            .unwrap()
            .iter()
            .find(|s| s["face"] == json!(face))
            .unwrap()["pieces"]
            .as_array()
            .unwrap()
            .clone()
    };
    let l1 = stratum(&[0]);
    let l1_full = l1.len() == 1 && int_rows(&l1[0]["rays"]) == [vec![1]].into_iter().collect();
    let l2_empty = stratum(&[1]).is_empty();
    let corner = !stratum(&[0, 1]).is_empty();
    let elapsed = start.elapsed();
    let ok = verts == want_v
        && rays == want_r
        && l1_full
        && l2_empty
        && corner
        && elapsed < Duration::from_secs(1);
    report(
        2,
        ok,
        &format!(
            "vertices {verts:?}, cone rays {rays:?}, L1 full={l1_full}, L2 empty={l2_empty}, corner={corner}, {elapsed:.2?}"
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_3_division() {
    let divide = |a: &str, b: &str| {
        let job = json!({
            "poly": expr_doc("x", 2),
            "divisors": [expr_doc(a, 2), expr_doc(b, 2)],
        });
        let out = run_json(&["divide"], &job.to_string());
        to_poly(&out["remainder"])
    };
    let r1 = divide("x - y", "x - y^2");
    let r2 = divide("x - y^2", "x - y");
    let ok = r1 == p("y", 2) && r2 == p("y^2", 2);
    report(3, ok, &format!("r = {r1}, swapped r = {r2}"));
    assert!(ok);
}

fn nonsatex() -> String {
    json!({ "semigroup": { "rank": 2, "generators": [[2, 1], [5, 2], [0, 3], [0, -3]] } })
        .to_string()
}

fn nonsatexbis() -> String {
    json!({ "semigroup": { "rank": 2, "generators": [[1, 0], [1, 1], [0, 2], [0, -2]] } })
        .to_string()
}

#[test]
fn criterion_4_semigroups() {
    let sat = run_json(&["saturate"], &nonsatex());
    let hb = int_rows(&sat["hilbert_basis"]);
    let want_hb: BTreeSet<Vec<i64>> = [vec![1, 0], vec![0, 1], vec![0, -1]].into_iter().collect();
    let units = int_rows(&run_json(&["units"], &nonsatex())["units"]);
    let want_u: BTreeSet<Vec<i64>> = [vec![0, 3]].into_iter().collect();
    let q = run_json(&["quotient"], &nonsatex());
    let torsion_free = !q["has_torsion"].as_bool().unwrap();
    let bis = run_json(&["quotient"], &nonsatexbis());
    let bis_torsion = bis["has_torsion"].as_bool().unwrap();
    let attainable = hb == want_hb && units == want_u && bis_torsion;
    report(
        4,
        attainable && torsion_free,
        &format!(
            "saturation {hb:?}, units {units:?}, first quotient torsion-free={torsion_free} (torsion {}), second has_torsion={bis_torsion}",
            q["torsion"]
        ),
    );
    assert!(attainable);
}

/// `5 v1 - 2 v2 = (0,1)` is not in the unit group `<(0,3)>` but three times it is, so the
/// quotient of the first example has 3-torsion. The stated expectation cannot hold.
#[test]
fn criterion_4_nonsatex_quotient_torsion_free() {
    let q = run_json(&["quotient"], &nonsatex());
    assert_eq!(
        q["has_torsion"],
        json!(false),
        "quotient torsion: {}",
        q["torsion"]
    );
}

#[test]
fn criterion_5_toric() {
    let toric = |gens: Value| -> Vec<Poly> {
        let job = json!({ "semigroup": { "rank": gens[0].as_array().unwrap().len(), "generators": gens } });
        let out = run_json(&["toric-ideal"], &job.to_string());
        out["ideal"]
            .as_array()
            .unwrap()
            .iter()
            .map(to_poly)
            .collect()
    };
    let same =
        |got: &[Poly], want: &Poly| got.len() == 1 && (got[0] == *want || got[0] == want.neg());
    let a = toric(json!([[1, 1], [1, 0], [0, 2]]));
    let b = toric(json!([[2], [3]]));
    let ok = same(&a, &p("x^2 - y^2*z", 3)) && same(&b, &p("x^3 - y^2", 2));
    let show = |v: &[Poly]| {
        v.iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    report(5, ok, &format!("({}) and ({})", show(&a), show(&b)));
    assert!(ok);
}

fn ext_point(w: &[ExtReal]) -> ExtendedPoint {
    let face: Vec<usize> = (0..w.len()).filter(|&i| w[i].is_infinite()).collect();
    let ec = troplocal::extended::ExtendedCone::orthant(w.len());
    ExtendedPoint {
        stratum: ec.stratum_index(&face).unwrap(),
        coords: w.iter().filter_map(|x| x.finite().cloned()).collect(),
    }
}

#[test]
fn criterion_6_monomial_curve() {
    let start = Instant::now();
    let g = AffineSemigroup::from_i64(1, &[&[3], &[4], &[5]]).unwrap();
    let gens = toric_ideal(&g).unwrap();
    let t = Engine::new(&gens, 3, 1).unwrap().nntrop();
    let fin = t.finite_part();
    let is_ray = fin.set_eq(&PlSet::from_pieces(3, vec![ray(&[3, 4, 5])]));
    let k = krull_dimension(&gens, 3);
    let pure = pure_dimension_check(&t, 1) && k == 1;
    let elapsed = start.elapsed();
    // Independent scan: direct initial-ideal test on a box of integer weights.
    let mut scan_ok = true;
    for a in 1..=6i64 {
        for b in 1..=6i64 {
            for c in 1..=6i64 {
                let w: Vec<ExtReal> = [a, b, c]
                    .iter()
                    .map(|&x| ExtReal::Finite(Q::from_integer(Z::from(x))))
                    .collect();
                let direct = extended_membership(&gens, &w).unwrap();
                let on_ray = 4 * a == 3 * b && 5 * a == 3 * c;
                if direct != on_ray || t.ptrop.contains(&ext_point(&w)) != on_ray {
                    scan_ok = false;
                }
            }
        }
    }
    let ok = is_ray && pure && scan_ok && elapsed < Duration::from_secs(10);
    report(
        6,
        ok,
        &format!("finite part is the ray (3,4,5): {is_ray}, krull dimension {k}, weight scan agrees: {scan_ok}, {elapsed:.2?}"),
    );
    assert!(ok);
}

/// Mixed sample of extended interior points: random strata, random positive coordinates, and
/// points inside the pieces of the positive tropicalization.
fn sample_points(
    t: &troplocal::tropical::LocalTrop,
    n: usize,
    count: usize,
    seed: u64,
) -> Vec<Vec<ExtReal>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ec = &t.ambient;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let si = rng.gen_range(0..ec.strata().len());
        let s = ec.stratum(si);
        let kept: Vec<usize> = (0..n).filter(|i| !s.face_rays.contains(i)).collect();
        let pieces: Vec<&Cone> = t.ptrop.strata[si].pieces().iter().collect();
        let coords: Vec<Q> = if out.len() % 2 == 1 && !pieces.is_empty() {
            let c = pieces[rng.gen_range(0..pieces.len())];
            let mut v = vec![Q::from_integer(Z::from(0)); kept.len()];
            for r in c.rays() {
                let a = Q::from_integer(Z::from(rng.gen_range(1i64..6)));
                for (x, y) in v.iter_mut().zip(r) {
                    *x += &a * Q::from_integer(y.clone());
                }
            }
            v
        } else {
            (0..kept.len())
                .map(|_| {
                    Q::new(
                        Z::from(rng.gen_range(1i64..30)),
                        Z::from(rng.gen_range(1i64..5)),
                    )
                })
                .collect()
        };
        let mut w = vec![ExtReal::Infinity; n];
        for (i, c) in kept.iter().zip(coords) {
            w[*i] = ExtReal::Finite(c);
        }
        out.push(w);
    }
    out
}

fn check_random(seed: u64) -> Result<(), String> {
    let (gens, n) = random_ideal(seed);
    let eng = Engine::new(&gens, n, 1).map_err(|e| e.to_string())?;
    let t = eng.nntrop();
    // (a)
    let v = nntrop_via_basis(&gens, n, 1).map_err(|e| e.to_string())?;
    if !v.nntrop.set_eq(&t.nntrop) {
        return Err("(a) via-basis differs".into());
    }
    // (b)
    for w in sample_points(&t, n, 500, seed) {
        let direct = extended_membership(&gens, &w).map_err(|e| e.to_string())?;
        if direct != t.ptrop.contains(&ext_point(&w)) {
            return Err(format!("(b) disagreement at {w:?}"));
        }
    }
    // (c)
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let twisted: Vec<Poly> = gens
        .iter()
        .map(|g| g.mul(&random_unit(&mut rng, n)))
        .collect();
    let tt = Engine::new(&twisted, n, 1)
        .map_err(|e| e.to_string())?
        .nntrop();
    if !tt.nntrop.set_eq(&t.nntrop) {
        return Err("(c) unit multiples change nntrop".into());
    }
    // (d)
    let h = hypersurface_trop(&gens[0]).map_err(|e| e.to_string())?;
    let th = Engine::new(&gens[..1], n, 1)
        .map_err(|e| e.to_string())?
        .nntrop();
    if !h.nntrop.set_eq(&th.nntrop) {
        return Err("(d) hypersurface shortcut differs".into());
    }
    // (e)
    let c = compare_local_global(&gens, &t, 200, seed).map_err(|e| e.to_string())?;
    if !c.agrees() {
        return Err(format!(
            "(e) local/global disagree at {:?}",
            c.disagreements[0]
        ));
    }
    // (f)
    for s in eng.strata() {
        if let StratumKind::Fan { fan, .. } = &s.kind {
            fan.fan().check_axioms().map_err(|e| format!("(f) {e}"))?;
        }
    }
    Ok(())
}

#[test]
fn criterion_7_random_ideals() {
    let start = Instant::now();
    let count = 50u64;
    let failures: Vec<(u64, String)> = (0..count)
        .into_par_iter()
        .filter_map(|s| check_random(s).err().map(|e| (s, e)))
        .collect();
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && elapsed < Duration::from_secs(600);
    report(
        7,
        ok,
        &format!(
            "{count} random ideals, {} failures {:?}, {elapsed:.2?}",
            failures.len(),
            failures
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_8_pure_dimension() {
    let g = AffineSemigroup::from_i64(1, &[&[3], &[4], &[5]]).unwrap();
    let curve = toric_ideal(&g).unwrap();
    let cases: Vec<(String, Vec<Poly>, usize)> = vec![
        ("x + y".into(), vec![p("x + y", 2)], 2),
        ("x^2 - y^3".into(), vec![p("x^2 - y^3", 2)], 2),
        ("y^2 - x^3 - x^2".into(), vec![p("y^2 - x^3 - x^2", 2)], 2),
        ("x + y + z".into(), vec![p("x + y + z", 3)], 3),
        ("x*y - z^2".into(), vec![p("x*y - z^2", 3)], 3),
        ("x^2 + y^2 + z^3".into(), vec![p("x^2 + y^2 + z^3", 3)], 3),
        ("monomial curve".into(), curve, 3),
        (
            "(x + y + z, x + 2y + 3z + z^2)".into(),
            vec![p("x + y + z", 3), p("x + 2*y + 3*z + z^2", 3)],
            3,
        ),
    ];
    let mut bad = Vec::new();
    for (name, gens, n) in &cases {
        let d = krull_dimension(gens, *n);
        let t = Engine::new(gens, *n, 1).unwrap().nntrop();
        if d < 0 || t.finite_part().is_empty() || !pure_dimension_check(&t, d as usize) {
            bad.push(format!(
                "{name}: krull {d}, pieces of dims {:?}",
                t.finite_part()
                    .pieces()
                    .iter()
                    .map(|c| c.dim())
                    .collect::<Vec<_>>()
            ));
        }
    }
    let ok = bad.is_empty();
    report(
        8,
        ok,
        &format!("{} prime ideals, failures {bad:?}", cases.len()),
    );
    assert!(ok);
}
