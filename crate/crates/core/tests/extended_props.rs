use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use troplocal::arith::{dot_z, qz, ExtReal, Q, Z};
use troplocal::extended::{ExtendedCone, ExtendedPoint};
use troplocal::polyhedral::Cone;

/// A pointed full-dimensional cone in the positive orthant of `R^n`.
fn random_sigma(rng: &mut ChaCha8Rng, n: usize) -> Cone {
    let mut rays: Vec<Vec<Z>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Z::from((i == j) as i64 * rng.gen_range(1i64..3)))
                .collect()
        })
        .collect();
    for _ in 0..rng.gen_range(0..3) {
        rays.push((0..n).map(|_| Z::from(rng.gen_range(0i64..4))).collect());
    }
    let c = Cone::from_generators(n, &rays, &[]);
    let tilt: Vec<Z> = (0..n)
        .map(|j| Z::from((j == 0) as i64 * rng.gen_range(0i64..2)))
        .collect();
    if tilt.iter().all(|x| *x == Z::from(0)) {
        return c;
    }
    let mut r2 = c.rays().to_vec();
    r2.push((0..n).map(|j| Z::from(1) + &tilt[j]).collect());
    Cone::from_generators(n, &r2, &[])
}

fn random_point_in(rng: &mut ChaCha8Rng, c: &Cone) -> Vec<Q> {
    let n = c.ambient_dim();
    let mut w = vec![Q::from_integer(Z::from(0)); n];
    for r in c.rays() {
        let a = Q::new(
            Z::from(rng.gen_range(0i64..7)),
            Z::from(rng.gen_range(1i64..4)),
        );
        for (x, y) in w.iter_mut().zip(r) {
            *x += &a * qz(y);
        }
    }
    w
}

fn random_dual_lattice_point(rng: &mut ChaCha8Rng, c: &Cone) -> Vec<Z> {
    let d = c.dual();
    let n = c.ambient_dim();
    let mut m = vec![Z::from(0); n];
    for r in d.rays() {
        let a = Z::from(rng.gen_range(0i64..3));
        for (x, y) in m.iter_mut().zip(r) {
            *x += &a * y;
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn evaluation_is_additive(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=3);
        let sigma = random_sigma(&mut rng, n);
        let ec = ExtendedCone::new(&sigma).unwrap();
        let x = random_point_in(&mut rng, &sigma);
        for i in 0..ec.strata().len() {
            let p = ExtendedPoint { stratum: i, coords: ec.stratum(i).project_q(&x) };
            let m1 = random_dual_lattice_point(&mut rng, &sigma);
            let m2 = random_dual_lattice_point(&mut rng, &sigma);
            let sum: Vec<Z> = m1.iter().zip(&m2).map(|(a, b)| a + b).collect();
            let lhs = ec.evaluate(&p, &sum).unwrap();
            let rhs = ec.evaluate(&p, &m1).unwrap().add(&ec.evaluate(&p, &m2).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn projections_compose(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=3);
        let sigma = random_sigma(&mut rng, n);
        let ec = ExtendedCone::new(&sigma).unwrap();
        let x = random_point_in(&mut rng, &sigma);
        let k = ec.strata().len();
        for a in 0..k {
            for b in 0..k {
                if !ec.is_below(a, b) {
                    continue;
                }
                for c in 0..k {
                    if !ec.is_below(b, c) {
                        continue;
                    }
                    let p = ExtendedPoint { stratum: a, coords: ec.stratum(a).project_q(&x) };
                    let two = ec.project(&ec.project(&p, b).unwrap(), c).unwrap();
                    prop_assert_eq!(two, ec.project(&p, c).unwrap());
                }
            }
        }
    }

    #[test]
    fn infinite_values_leave_the_face_perp(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=3);
        let sigma = random_sigma(&mut rng, n);
        let ec = ExtendedCone::new(&sigma).unwrap();
        let x = random_point_in(&mut rng, &sigma);
        let dual_rays = sigma.dual().rays().to_vec();
        let mut ms = dual_rays.clone();
        for a in &dual_rays {
            for b in &dual_rays {
                ms.push(a.iter().zip(b).map(|(p, q)| p + q).collect());
            }
        }
        for (i, s) in ec.strata().iter().enumerate() {
            let p = ExtendedPoint { stratum: i, coords: s.project_q(&x) };
            for m in &ms {
                let perp = s.face.rays().iter().all(|r| dot_z(r, m) == Z::from(0));
                prop_assert_eq!(ec.evaluate(&p, m).unwrap() == ExtReal::Infinity, !perp);
            }
        }
    }
}
