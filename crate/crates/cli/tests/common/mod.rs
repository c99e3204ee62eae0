#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use troplocal::arith::{Q, Z};
use troplocal::poly::Poly;

pub fn p(s: &str, n: usize) -> Poly {
    Poly::parse(s, n).unwrap()
}

/// A random polynomial without constant term: up to four terms of degree 1..=deg with
/// small integer coefficients.
pub fn random_poly(rng: &mut ChaCha8Rng, n: usize, deg: u32) -> Poly {
    loop {
        let mut f = Poly::zero(n);
        let k = rng.gen_range(1..=4);
        for _ in 0..k {
            let d = rng.gen_range(1..=deg);
            let mut e = vec![0u32; n];
            for _ in 0..d {
                e[rng.gen_range(0..n)] += 1;
            }
            let c: i64 = rng.gen_range(-3..=3);
            if c != 0 {
                f.add_term(e, Q::from_integer(Z::from(c)));
            }
        }
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random ideals in at most 3 variables with at most 3 generators of degree at most 3.
pub fn random_ideal(seed: u64) -> (Vec<Poly>, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=3);
    let m = rng.gen_range(1..=3);
    let gens = (0..m).map(|_| random_poly(&mut rng, n, 3)).collect();
    (gens, n)
}

/// A unit `1 + (small terms)`.
pub fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> Poly {
    let mut u = Poly::one(n);
    for _ in 0..rng.gen_range(0..3) {
        let mut e = vec![0u32; n];
        e[rng.gen_range(0..n)] += rng.gen_range(1..3);
        let c: i64 = rng.gen_range(-2..=2);
        u.add_term(e, Q::from_integer(Z::from(c)));
    }
    u
}

/// Runs the binary on a JSON document, returning the exit code and standard output.
pub fn run_cli(args: &[&str], input: &str) -> (i32, String) {
    use std::io::Write;
    use std::process::{Command, Stdio};
    let mut child = Command::new(env!("CARGO_BIN_EXE_troplocal"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    // The binary may exit before reading its input.
    let _ = child
        .stdin
        .take()
        .expect("stdin")
        .write_all(input.as_bytes());
    let out = child.wait_with_output().expect("binary finishes");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

pub fn run_json(args: &[&str], input: &str) -> serde_json::Value {
    let (code, out) = run_cli(args, input);
    assert_eq!(code, 0, "{args:?} failed on {input}");
    serde_json::from_str(&out).expect("output is JSON")
}
