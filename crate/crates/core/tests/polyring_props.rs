mod common;

use brieskorn::polyring::{parse_poly, Polynomial, Rational};
use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn triple(seed: u64) -> (Polynomial, Polynomial, Polynomial) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = xyz(rng.gen_range(1..=4));
    let next = |rng: &mut ChaCha8Rng| {
        let d = rng.gen_range(0..=3);
        random_homogeneous(rng, &ring, d, 0.4)
    };
    (next(&mut rng), next(&mut rng), next(&mut rng))
}

proptest! {
    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let (a, b, c) = triple(seed);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn euler_identity(seed in any::<u64>()) {
        // sum x_j df/dx_j = d f for homogeneous f
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = xyz(rng.gen_range(1..=4));
        let d = rng.gen_range(1..=5u32);
        let f = random_homogeneous(&mut rng, &ring, d, 0.5);
        let mut sum = Polynomial::zero(&ring);
        for (j, fj) in f.gradient().iter().enumerate() {
            sum = &sum + &(&Polynomial::var(&ring, j).unwrap() * fj);
        }
        prop_assert_eq!(sum, f.scale(&Rational::from_integer(d.into())));
    }

    #[test]
    fn leibniz_rule(seed in any::<u64>()) {
        let (a, b, _) = triple(seed);
        let n = a.ring().nvars();
        for j in 0..n {
            let lhs = (&a * &b).partial(j).unwrap();
            let rhs = &(&a.partial(j).unwrap() * &b) + &(&a * &b.partial(j).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn display_parses_back(seed in any::<u64>()) {
        let (a, b, _) = triple(seed);
        let p = &a * &b;
        prop_assert_eq!(parse_poly(&p.to_string(), p.ring()).unwrap(), p);
    }
}
