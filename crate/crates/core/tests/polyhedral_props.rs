mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use troplocal::arith::{Q, Z};
use troplocal::order::initial_form;
use troplocal::poly::exp_to_z;
use troplocal::polyhedral::{Cone, Fan, NewtonPolyhedron};

fn zrows(v: &[Vec<i64>]) -> Vec<Vec<Z>> {
    v.iter()
        .map(|r| r.iter().map(|&x| Z::from(x)).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn duality_is_an_involution(rays in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..=5)) {
        let c = Cone::from_generators(3, &zrows(&rays), &[]);
        prop_assert_eq!(c.dual().dual(), c);
    }

    #[test]
    fn newton_cone_matches_initial_forms(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=3);
        let f = common::random_poly(&mut rng, n, 4);
        let pts: Vec<Vec<Z>> = f.support().iter().map(|e| exp_to_z(e)).collect();
        let np = NewtonPolyhedron::new(&pts, &Cone::orthant(n)).unwrap();
        let nc = np.newton_cone();
        for _ in 0..60 {
            let w: Vec<Q> = (0..n)
                .map(|_| Q::new(Z::from(rng.gen_range(1i64..12)), Z::from(rng.gen_range(1i64..4))))
                .collect();
            prop_assert_eq!(nc.contains_point_q(&w), initial_form(&f, &w).len() >= 2);
        }
    }

    #[test]
    fn faces_are_constant_on_normal_cones(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=3);
        let f = common::random_poly(&mut rng, n, 4);
        let pts: Vec<Vec<Z>> = f.support().iter().map(|e| exp_to_z(e)).collect();
        let np = NewtonPolyhedron::new(&pts, &Cone::orthant(n)).unwrap();
        let fan = np.normal_fan();
        prop_assert!(fan.check_axioms().is_ok());
        for c in fan.cones() {
            let base = np.face_cut_by(&troplocal::arith::to_q(&c.relint_point())).unwrap();
            for _ in 0..5 {
                let mut w = vec![Q::from_integer(Z::from(0)); n];
                for r in c.rays() {
                    let a = Q::from_integer(Z::from(rng.gen_range(1i64..9)));
                    for (x, y) in w.iter_mut().zip(r) {
                        *x += &a * Q::from_integer(y.clone());
                    }
                }
                prop_assert_eq!(np.face_cut_by(&w).unwrap(), base.clone());
            }
        }
    }

    #[test]
    fn common_refinements_are_fans(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fans: Vec<Fan> = (0..2)
            .map(|_| {
                let f = common::random_poly(&mut rng, 3, 3);
                let pts: Vec<Vec<Z>> = f.support().iter().map(|e| exp_to_z(e)).collect();
                NewtonPolyhedron::new(&pts, &Cone::orthant(3)).unwrap().normal_fan()
            })
            .collect();
        let r = Fan::common_refinement(&fans, &Cone::orthant(3)).unwrap();
        prop_assert!(r.check_axioms().is_ok());
    }
}
