use std::collections::{HashSet, VecDeque};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use curve_dlp::arith::{crt, inv_mod};
use curve_dlp::curve::samples;
use curve_dlp::heuristics::wilson;
use curve_dlp::io::{class_to_text, matrix_to_text, parse_class, parse_matrix};
use curve_dlp::jacobian::{Ideal, Jacobian};
use curve_dlp::linalg::{kernel_vector, snf_mod, SparseMatrix};

fn class(jac: &Jacobian, seed: u64) -> Ideal {
    jac.random_class(&mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

/// Size of `(Z/n)^c / rowspan(rows)` by breadth-first closure of the row span.
fn quotient_size(rows: &[Vec<u64>], c: usize, n: u64) -> u64 {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([vec![0u64; c]]);
    seen.insert(vec![0u64; c]);
    while let Some(v) = queue.pop_front() {
        for r in rows {
            let w: Vec<u64> = v.iter().zip(r).map(|(a, b)| (a + b) % n).collect();
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    n.pow(c as u32) / seen.len() as u64
}

fn sparse_strategy() -> impl Strategy<Value = SparseMatrix> {
    (1usize..12, 2u64..60).prop_flat_map(|(ncols, n)| {
        prop::collection::vec(prop::collection::vec((0..ncols, 0..n), 0..5), 0..10)
            .prop_map(move |rows| SparseMatrix::new(ncols, rows, n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn jacobian_is_an_abelian_group(s1: u64, s2: u64, s3: u64) {
        let jac = Jacobian::new(&samples::c5_g2());
        let (a, b, c) = (class(&jac, s1), class(&jac, s2), class(&jac, s3));
        prop_assert_eq!(jac.add(&a, &b).unwrap(), jac.add(&b, &a).unwrap());
        let left = jac.add(&jac.add(&a, &b).unwrap(), &c).unwrap();
        let right = jac.add(&a, &jac.add(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(jac.add(&a, &jac.neg(&a).unwrap()).unwrap().is_unit());
        prop_assert_eq!(jac.add(&a, &jac.identity()).unwrap(), a);
    }

    #[test]
    fn scalar_multiplication_is_a_homomorphism(s: u64, x in -200i128..200, y in -200i128..200) {
        let jac = Jacobian::new(&samples::c5_g2());
        let a = class(&jac, s);
        let lhs = jac.scalar(&a, x + y).unwrap();
        let rhs = jac.add(&jac.scalar(&a, x).unwrap(), &jac.scalar(&a, y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(jac.scalar(&a, 36).unwrap().is_unit());
    }

    #[test]
    fn bsgs_recovers_small_multiples(s: u64, x in 0u64..36) {
        let jac = Jacobian::new(&samples::c5_g2());
        let a = class(&jac, s);
        let ord = jac.order(&a, 36).unwrap();
        prop_assert_eq!(36 % ord, 0);
        let t = jac.scalar(&a, x as i128).unwrap();
        prop_assert_eq!(jac.bsgs_dlog(&a, &t, ord).unwrap(), Some(x % ord));
    }

    #[test]
    fn class_text_round_trips(s: u64) {
        let jac = Jacobian::new(&samples::c31_g3());
        let a = class(&jac, s);
        prop_assert_eq!(parse_class(&jac, &class_to_text(&jac, &a)).unwrap(), a);
    }

    #[test]
    fn matrix_text_round_trips(m in sparse_strategy()) {
        prop_assert_eq!(parse_matrix(&matrix_to_text(&m)).unwrap(), m);
    }

    #[test]
    fn kernel_vectors_annihilate(m in sparse_strategy(), seed: u64) {
        if let Some(v) = kernel_vector(&m, seed).unwrap() {
            prop_assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
            prop_assert!(v.iter().any(|&x| x != 0));
        }
    }

    #[test]
    fn snf_mod_matches_quotient_size(
        (c, n, rows) in (1usize..4, 2u64..13).prop_flat_map(|(c, n)| {
            (Just(c), Just(n), prop::collection::vec(prop::collection::vec(0..n, c), 0..4))
        })
    ) {
        let inv = snf_mod(&rows, c, n);
        prop_assert!(inv.windows(2).all(|w| w[1] % w[0] == 0));
        prop_assert!(inv.len() <= c);
        prop_assert_eq!(inv.iter().product::<u64>(), quotient_size(&rows, c, n));
    }

    #[test]
    fn wilson_interval_brackets_the_estimate(trials in 1u64..100_000, frac in 0.0f64..=1.0) {
        let hits = ((trials as f64) * frac) as u64;
        let (lo, hi) = wilson(hits, trials, 1.96);
        let p = hits as f64 / trials as f64;
        prop_assert!(0.0 <= lo && lo <= p + 1e-12 && p <= hi + 1e-12 && hi <= 1.0);
    }

    #[test]
    fn crt_satisfies_each_congruence(a in 0u64..1000, b in 0u64..1000, m1 in 2u64..500, m2 in 2u64..500) {
        prop_assume!(curve_dlp::arith::gcd(m1, m2) == 1);
        let (x, m) = crt(&[(a % m1, m1), (b % m2, m2)]);
        prop_assert_eq!(m, m1 * m2);
        prop_assert_eq!(x % m1, a % m1);
        prop_assert_eq!(x % m2, b % m2);
        if let Some(i) = inv_mod(a, m1) {
            prop_assert_eq!((a % m1) * i % m1, 1 % m1);
        }
    }
}
