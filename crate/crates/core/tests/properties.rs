use cubeperm::cubicperm::{canonicalize, quadratic_resolvent, table_representatives, Classifier, Mode};
use cubeperm::gf::{Elem, Field};
use cubeperm::polyring::{cubic_discriminant, Poly, PolyRing};
use cubeperm::projfunc::{format_ratfunc, parse_ratfunc, proj_points, Mobius, RatFunc, Side};
use proptest::prelude::*;

const SPECS: [&str; 12] = ["2", "3", "4", "5", "7", "8", "9", "11", "13", "16", "25", "27"];

fn field(i: usize) -> Field {
    SPECS[i % SPECS.len()].parse().unwrap()
}

fn elem(f: &Field, seed: u32) -> Elem {
    f.elem(seed % f.order())
}

fn poly(f: &Field, seeds: &[u32]) -> Poly {
    Poly::from_coeffs(seeds.iter().map(|&s| elem(f, s)).collect())
}

fn mobius(f: &Field, s: [u32; 4]) -> Option<Mobius> {
    Mobius::new(f, elem(f, s[0]), elem(f, s[1]), elem(f, s[2]), elem(f, s[3])).ok()
}

fn seeds(n: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(any::<u32>(), 0..=n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn quadratic_character_is_multiplicative(i in 0usize..12, a in any::<u32>(), b in any::<u32>()) {
        let f = field(i);
        prop_assume!(f.is_odd());
        let (a, b) = (elem(&f, a), elem(&f, b));
        prop_assert_eq!(f.chi(f.mul(a, b)), f.chi(a) * f.chi(b));
        prop_assert_eq!(f.is_square(a), f.chi(a) >= 0);
    }

    #[test]
    fn half_of_an_even_field_has_trace_zero(k in 1u32..=10) {
        let f = Field::new(2, k, None).unwrap();
        let zero = f.elements().filter(|&a| f.abs_trace2(a) == Ok(0)).count() as u32;
        prop_assert_eq!(2 * zero, f.order());
    }

    #[test]
    fn resolvent_discriminant_matches_cubic(i in 0usize..12, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = field(i);
        let (a, b, c) = (elem(&f, a), elem(&f, b), elem(&f, c));
        let (bb, cc) = quadratic_resolvent(&f, &a, &b, &c);
        let disc_r2 = f.sub(f.mul(bb, bb), f.mul(f.from_int(4), cc));
        prop_assert_eq!(disc_r2, cubic_discriminant(&f, &f.one(), &a, &b, &c));
    }

    #[test]
    fn resolvent_discriminant_matches_over_polynomials(i in 0usize..12, a in seeds(3), b in seeds(3), c in seeds(3)) {
        let f = field(i);
        let r = PolyRing::new(&f);
        let (a, b, c) = (poly(&f, &a), poly(&f, &b), poly(&f, &c));
        let (bb, cc) = quadratic_resolvent(&r, &a, &b, &c);
        let disc_r2 = r.sub(&r.mul(&bb, &bb), &r.scale(f.from_int(4), &cc));
        prop_assert_eq!(disc_r2, cubic_discriminant(&r, &r.one(), &a, &b, &c));
    }

    #[test]
    fn mobius_action_preserves_permutations(i in 0usize..12, m1 in any::<[u32; 4]>(), m2 in any::<[u32; 4]>(), which in any::<usize>()) {
        let f = field(i);
        let (Some(m1), Some(m2)) = (mobius(&f, m1), mobius(&f, m2)) else { return Ok(()) };
        let reps = table_representatives(&f);
        let phi = reps[which % reps.len()].representative(&f);
        let moved = phi.compose(&m1, Side::Left).compose(&m2, Side::Right);
        prop_assert!(moved.is_permutation_bruteforce());
        prop_assert_eq!(moved.degree(), 3);
        for p in proj_points(&f) {
            prop_assert_eq!(moved.eval_point(p), m1.apply(phi.eval_point(m2.apply(p))));
        }
    }

    #[test]
    fn mobius_action_preserves_status_and_separability(i in 0usize..12, num in seeds(4), den in seeds(4), m in any::<[u32; 4]>(), left in any::<bool>()) {
        let f = field(i);
        let Some(m) = mobius(&f, m) else { return Ok(()) };
        let Ok(phi) = RatFunc::new(&f, poly(&f, &num), poly(&f, &den)) else { return Ok(()) };
        prop_assume!(phi.degree() >= 1);
        let moved = phi.compose(&m, if left { Side::Left } else { Side::Right });
        prop_assert_eq!(moved.degree(), phi.degree());
        prop_assert_eq!(moved.is_separable(), phi.is_separable());
        prop_assert_eq!(moved.is_permutation_bruteforce(), phi.is_permutation_bruteforce());
    }

    #[test]
    fn criterion_agrees_with_brute_force(i in 0usize..12, num in prop::collection::vec(any::<u32>(), 4), den in seeds(4)) {
        let f = field(i);
        let Ok(phi) = RatFunc::new(&f, poly(&f, &num), poly(&f, &den)) else { return Ok(()) };
        prop_assume!(phi.degree() == 3 && phi.is_separable());
        let cls = Classifier::new(&f).unwrap();
        let (crit, _, _) = cls.decide(&phi, Mode::Criterion).unwrap();
        prop_assert_eq!(crit, phi.is_permutation_bruteforce());
    }

    #[test]
    fn canonical_witnesses_hold(i in 0usize..12, m1 in any::<[u32; 4]>(), m2 in any::<[u32; 4]>(), which in any::<usize>()) {
        let f = field(i);
        let (Some(m1), Some(m2)) = (mobius(&f, m1), mobius(&f, m2)) else { return Ok(()) };
        let reps = table_representatives(&f);
        let source = &reps[which % reps.len()];
        let phi = source.representative(&f).compose(&m1, Side::Left).compose(&m2, Side::Right);
        let report = canonicalize(&phi).unwrap();
        prop_assert_eq!(report.canon.as_ref(), Some(source));
        let (w1, w2) = report.witnesses.unwrap();
        prop_assert_eq!(phi.compose(&w1, Side::Left).compose(&w2, Side::Right), source.representative(&f));
    }

    #[test]
    fn parser_round_trips(i in 0usize..12, num in seeds(5), den in seeds(5)) {
        let f = field(i);
        let Ok(phi) = RatFunc::new(&f, poly(&f, &num), poly(&f, &den)) else { return Ok(()) };
        let text = format_ratfunc(&phi);
        prop_assert_eq!(parse_ratfunc(&text, &f).unwrap(), phi);
    }
}
