//! Randomized invariants across the modules: field and polynomial
//! arithmetic, the quadratic space, the Clifford action, Cantor's group law,
//! the Kummer embedding, duplication and heights.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spinor_kummer::field::{q, qi, Field};
use spinor_kummer::heights::{canonical_height, compare_dagger_naive, random_curve_with_divisor, split_curve};
use spinor_kummer::jacobian::{random_divisor, two_torsion_divisor};
use spinor_kummer::kummer::{degree_subset_mask, membership_and_lift, psi_embed, KummerVerdict};
use spinor_kummer::spinor::{beta_form, clifford_act};
use spinor_kummer::theta::duplication_polys_fp;
use spinor_kummer::verify::suite_curve;
use spinor_kummer::{Fp, HyperellipticCurve, MumfordDivisor, Poly, QuadraticSpace, SpinVector, Q};

const PRIMES: [u64; 6] = [5, 7, 11, 13, 17, 19];

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

/// A curve over `F_p` with a small splitting field, and a seeded rng.
fn fp_setup(g: usize, pi: usize, seed: u64) -> (HyperellipticCurve<Fp>, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (curve, _) = suite_curve(g, PRIMES[pi], &mut rng).expect("suitable curve");
    (curve, rng)
}

fn small_rational() -> impl Strategy<Value = Q> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| q(n, d))
}

fn rational_poly(max_len: usize) -> impl Strategy<Value = Poly<Q>> {
    prop::collection::vec(small_rational(), 0..=max_len).prop_map(Poly::new)
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn prime_field_axioms(pi in 0..PRIMES.len(), a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
        let p = PRIMES[pi];
        let (a, b, c) = (Fp::new(a, p), Fp::new(b, p), Fp::new(c, p));
        prop_assert_eq!((a + b) + c, a + (b + c));
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        if !a.is_zero() {
            prop_assert!((a * a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn rational_field_axioms(a in small_rational(), b in small_rational(), c in small_rational()) {
        prop_assert_eq!((a.clone() + &b) * &c, a.clone() * &c + b.clone() * &c);
        prop_assert!(a.denom() > &0.into());
        if !a.is_zero() {
            prop_assert!((a.clone() * a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn division_round_trip(a in rational_poly(8), b in rational_poly(5)) {
        prop_assume!(!b.is_zero());
        let (quot, rem) = a.divmod_field(&b);
        prop_assert_eq!(&(&quot * &b) + &rem, a);
        prop_assert!(rem.deg_i() < b.deg_i());
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn quadratic_space_gram_and_self_adjointness(g in 1usize..=3, pi in 0..PRIMES.len(), seed in any::<u64>()) {
        let (curve, mut rng) = fp_setup(g, pi, seed);
        let space = QuadraticSpace::new(&curve);
        let n = 2 * g + 1;
        for i in 0..n {
            for j in 0..n {
                let want = if i + j == 2 * g { 1 } else { 0 };
                prop_assert_eq!(space.psi_p(&space.p_unit(i), &space.p_unit(j)), Fp::new(want, PRIMES[pi]));
            }
        }
        let one = curve.one();
        let a: Vec<Fp> = (0..n).map(|_| one.random_like(&mut rng)).collect();
        let b: Vec<Fp> = (0..n).map(|_| one.random_like(&mut rng)).collect();
        prop_assert_eq!(space.psi_p(&space.mul_x_p(&a), &b), space.psi_p(&a, &space.mul_x_p(&b)));
    }

    #[test]
    fn clifford_relation_and_beta_symmetry(g in 1usize..=3, pi in 0..PRIMES.len(), seed in any::<u64>()) {
        let (curve, mut rng) = fp_setup(g, pi, seed);
        let space = QuadraticSpace::new(&curve);
        let one = curve.one();
        let v: Vec<Fp> = (0..2 * g + 1).map(|_| one.random_like(&mut rng)).collect();
        let random_spinor = |rng: &mut ChaCha8Rng| {
            SpinVector::new(g, (0..1 << g).map(|_| one.random_like(rng)).collect()).unwrap()
        };
        let (s1, s2) = (random_spinor(&mut rng), random_spinor(&mut rng));
        let twice = clifford_act(&space, &v, &clifford_act(&space, &v, &s1));
        prop_assert_eq!(twice, s1.scale(&space.psi_p(&v, &v)));
        let sign = if (g * (g + 1) / 2) % 2 == 0 { one } else { -one };
        prop_assert_eq!(beta_form(&s2, &s1), sign * beta_form(&s1, &s2));
    }

    #[test]
    fn cantor_group_axioms(g in 1usize..=3, pi in 0..PRIMES.len(), seed in any::<u64>()) {
        let (curve, mut rng) = fp_setup(g, pi, seed);
        let (a, b, c) = (random_divisor(&curve, &mut rng), random_divisor(&curve, &mut rng), random_divisor(&curve, &mut rng));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert!(a.add(&a.negate()).is_identity());
        prop_assert_eq!(a.add(&MumfordDivisor::identity(&curve)), a.clone());
        prop_assert_eq!(a.mul(3), a.double().add(&a));
        let s = a.add(&b);
        let revalidated = MumfordDivisor::new(&curve, s.u().clone(), s.v().clone(), s.r().clone()).unwrap();
        prop_assert_eq!(revalidated, s);
    }

    #[test]
    fn kummer_embedding_invariants(g in 1usize..=3, pi in 0..PRIMES.len(), seed in any::<u64>()) {
        let (curve, mut rng) = fp_setup(g, pi, seed);
        let space = QuadraticSpace::new(&curve);
        let d = random_divisor(&curve, &mut rng);
        let psi = psi_embed(&space, &d).unwrap();
        prop_assert_eq!(&psi_embed(&space, &d.negate()).unwrap(), &psi);
        let m = d.degree();
        let layout = psi.layout();
        prop_assert!(psi.at_mask(degree_subset_mask(g, m)).is_one());
        for (k, c) in psi.coords().iter().enumerate() {
            if layout.mask(k).count_ones() as usize > m {
                prop_assert!(c.is_zero());
            }
        }
        match membership_and_lift(&space, &psi).unwrap() {
            KummerVerdict::OnKummer { rank, lifts, .. } => {
                prop_assert!(rank <= 1);
                prop_assert!(lifts);
            }
            KummerVerdict::NotOnKummer => prop_assert!(false, "Ψ-image off the Kummer"),
        }
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn duplication_matches_doubling(g in 1usize..=2, pi in 0..PRIMES.len(), seed in any::<u64>()) {
        let (curve, mut rng) = fp_setup(g, pi, seed);
        let space = QuadraticSpace::new(&curve);
        let delta = duplication_polys_fp(&curve, None).unwrap();
        let inf = SpinVector::infinity(g, &curve.one());
        prop_assert!(delta.apply(&inf).projectively_equal(&inf));
        for _ in 0..4 {
            let d = random_divisor(&curve, &mut rng);
            let doubled = delta.apply(&psi_embed(&space, &d).unwrap());
            prop_assert!(doubled.projectively_equal(&psi_embed(&space, &d.double()).unwrap()));
        }
    }

    #[test]
    fn integral_triples_have_integral_images_and_dagger_below_naive(g in 1usize..=2, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (curve, d) = random_curve_with_divisor(g, 3, &mut rng);
        let space = QuadraticSpace::new(&curve);
        let psi = psi_embed(&space, &d).unwrap();
        prop_assert!(psi.coords().iter().all(|c| c.is_integer()));
        prop_assert!(compare_dagger_naive(&space, &d).unwrap().dagger_le_naive());
    }
}

#[test]
fn canonical_height_vanishes_on_two_torsion() {
    let roots = [-3i64, -1, 0, 1, 3];
    let curve = split_curve(&roots).unwrap();
    let space = QuadraticSpace::new(&curve);
    let qroots: Vec<Q> = roots.iter().map(|&r| qi(r)).collect();
    for mask in 1u32..32 {
        let t = two_torsion_divisor(&curve, &qroots, mask);
        let h = canonical_height(&space, &t, 6).unwrap();
        assert_eq!(h.iterations, 6);
        assert!(h.estimate.abs() < 1e-3 && h.tail_bound < 1e-3, "mask {mask}: {h:?}");
    }
}
