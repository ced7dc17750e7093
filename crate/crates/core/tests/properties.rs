use num_bigint::BigInt;
use proptest::prelude::*;
use zipcone::catalog;
use zipcone::cone::{monoid_membership, saturated_membership, GeneratedCone, Weight};
use zipcone::fpoly::{a, FpPoly, Mono};
use zipcone::rootdata::h_map;
use zipcone::sections::{catalog_section, check_equivariance, SectionName};

fn weight(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-30i64..=30, n)
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

/// Polynomials in the entries of a generic 2×2 matrix with small exponents.
fn poly(p: u64) -> impl Strategy<Value = FpPoly> {
    let term = (prop::collection::vec(0u32..3, 4), 1..p);
    prop::collection::vec(term, 0..5).prop_map(move |terms| {
        FpPoly::from_terms(
            p,
            terms.into_iter().map(|(e, c)| {
                let vars = [a(1, 1), a(1, 2), a(2, 1), a(2, 2)];
                (Mono::from_pairs(vars.into_iter().zip(e).filter(|&(_, k)| k > 0).collect()), c)
            }),
        )
    })
}

fn sp6_sections(p: u64) -> GeneratedCone {
    GeneratedCone::new(3, catalog::zip_sp6_generators(p)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn h_map_is_injective_and_additive(x in weight(3), y in weight(3), p in prime()) {
        let (x, y) = (Weight::new(x), Weight::new(y));
        prop_assert_eq!(h_map(&x.add(&y), p), h_map(&x, p).add(&h_map(&y, p)));
        prop_assert_eq!(h_map(&x, p) == h_map(&y, p), x == y);
    }

    #[test]
    fn monoid_is_closed_under_addition(c in prop::collection::vec(0u32..4, 8), p in prop::sample::select(vec![2u64, 3])) {
        let cone = sp6_sections(p);
        let gens = catalog::zip_sp6_generators(p);
        let combo = |cs: &[u32]| gens.iter().zip(cs).fold(Weight::zero(3), |acc, (g, &k)| acc.add(&g.scale(k)));
        let (x, y) = (combo(&c[..4]), combo(&c[4..]));
        for lam in [&x, &y, &x.add(&y)] {
            let coeffs = monoid_membership(&cone, lam).unwrap();
            let coeffs = coeffs.expect("a sum of generators lies in the monoid");
            let back = gens.iter().zip(&coeffs).fold(Weight::zero(3), |acc, (g, k)| acc.add(&g.scale(k.clone())));
            prop_assert_eq!(&back, lam);
            prop_assert!(coeffs.iter().all(|k| *k >= BigInt::from(0)));
        }
    }

    #[test]
    fn saturated_membership_is_scale_invariant(x in weight(3), k in 1i64..6, p in prop::sample::select(vec![2u64, 3])) {
        let cone = sp6_sections(p);
        let x = Weight::new(x);
        prop_assert_eq!(saturated_membership(&cone, &x).unwrap(), saturated_membership(&cone, &x.scale(k)).unwrap());
    }
}
proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_division_inverts_multiplication((f, g) in prime().prop_flat_map(|p| (poly(p), poly(p)))) {
        prop_assume!(!g.is_zero());
        prop_assert_eq!((&f * &g).exact_divide(&g).unwrap(), Some(f));
    }

    #[test]
    fn frobenius_twist_is_the_pth_power((f, g) in prime().prop_flat_map(|p| (poly(p), poly(p)))) {
        let p = f.p() as u32;
        prop_assert_eq!(f.frobenius_twist(), f.pow(p));
        prop_assert_eq!((&f * &g).frobenius_twist(), &f.frobenius_twist() * &g.frobenius_twist());
    }

    #[test]
    fn products_of_sections_are_sections(i in 0usize..4, j in 0usize..4, p in prop::sample::select(vec![2u64, 3])) {
        let names = [SectionName::Delta(1), SectionName::Delta(2), SectionName::EpsilonSp6, SectionName::F1Sp6];
        let x = catalog_section(names[i], 3, p).unwrap();
        let y = catalog_section(names[j], 3, p).unwrap();
        let prod = x.mul(&y).unwrap();
        prop_assert_eq!(&prod.weight, &x.weight.add(&y.weight));
        prop_assert!(check_equivariance(&prod.body, &prod.weight, 3).is_ok());
    }
}
