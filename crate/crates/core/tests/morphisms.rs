use std::sync::Arc;

use hcfam::arith::{GaussianRational, LaurentPoly, Poly};
use hcfam::catalog::{make_g, make_g_localized, H, X, Y};
use hcfam::classify::classify_extension;
use hcfam::error::Error;
use hcfam::liefam::FamilyElement;
use hcfam::morphisms::{
    compose, embed_in_constant, fit_generator, hom_space, pullback, verify_linear_map, verify_morphism, HomSpace,
    KRange, Morphism, PairMorphism, Sign,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn nonzero_scalar(rng: &mut ChaCha8Rng) -> GaussianRational {
    loop {
        let c = GaussianRational::complex((rng.gen_range(-4..=4), rng.gen_range(1..=3)), (rng.gen_range(-4..=4), 1));
        if !c.is_zero() {
            return c;
        }
    }
}

fn sign(rng: &mut ChaCha8Rng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn family(n: u32, localized: bool) -> Arc<hcfam::GradedFamily> {
    Arc::new(if localized { make_g_localized(n) } else { make_g(n) })
}

/// A random composable pair `g(m) → g(n) → g(p)`.
fn composable_pair(rng: &mut ChaCha8Rng) -> (PairMorphism, PairMorphism) {
    let localized = rng.gen_bool(0.3);
    let (m, n, p, k1, k2) = if localized {
        (
            rng.gen_range(0..6),
            rng.gen_range(0..6),
            rng.gen_range(0..6),
            rng.gen_range(-4..=4),
            rng.gen_range(-4..=4),
        )
    } else {
        let p = rng.gen_range(0..4);
        let n = p + rng.gen_range(0..4);
        let m = n + rng.gen_range(0..4);
        (m, n, p, rng.gen_range(0..=(m - n) as i64), rng.gen_range(0..=(n - p) as i64))
    };
    let a = PairMorphism::new(m, n, nonzero_scalar(rng), k1, sign(rng), localized).unwrap();
    let b = PairMorphism::new(n, p, nonzero_scalar(rng), k2, sign(rng), localized).unwrap();
    (a, b)
}

#[test]
fn hom_dichotomy_and_generators_verify() {
    for m in 0..=8u32 {
        for n in 0..=8u32 {
            let hom = hom_space(m, n, false);
            assert_eq!(hom.is_zero(), m < n, "Hom({m}, {n})");
            if let HomSpace::Generators { k_range, .. } = &hom {
                assert_eq!(k_range, &KRange::Bounded { min: 0, max: (m - n) as i64 });
            }
            let cs = [GaussianRational::from(1), GaussianRational::complex((1, 2), (-1, 1))];
            for p in hom.generators(m, n, false, &cs, 0..=0) {
                let report = verify_morphism(&p);
                assert!(report.ok(), "{p}: {:?}", report.violations);
            }
            assert!(!hom_space(m, n, true).is_zero());
        }
    }
}

#[test]
fn composition_is_extensional() {
    let mut rng = ChaCha8Rng::seed_from_u64(300);
    for _ in 0..300 {
        let (a, b) = composable_pair(&mut rng);
        let Morphism::Pair(ab) = compose(&a.clone().into(), &b.clone().into()).unwrap() else {
            unreachable!()
        };
        let src = family(a.m(), a.localized());
        for i in [Y, H, X] {
            let e = FamilyElement::basis(&src, i);
            assert_eq!(ab.apply(&e).unwrap(), b.apply(&a.apply(&e).unwrap()).unwrap(), "{a} then {b}");
        }
        assert!(verify_morphism(&ab).ok());
        if a.s() == Sign::Plus {
            assert_eq!(ab.c(), &(a.c() * b.c()));
            assert_eq!(ab.k(), a.k() + b.k());
        }
        assert_eq!(ab.s(), a.s().times(b.s()));
    }
}

#[test]
fn composition_edge_cases() {
    let a = PairMorphism::new(3, 1, 2.into(), 1, Sign::Plus, false).unwrap();
    let b = PairMorphism::new(2, 0, 1.into(), 0, Sign::Plus, false).unwrap();
    assert!(matches!(compose(&a.clone().into(), &b.into()), Err(Error::ChainMismatch(_))));
    let z = Morphism::Zero { m: 1, n: 0, localized: false };
    assert_eq!(
        compose(&a.clone().into(), &z).unwrap(),
        Morphism::Zero { m: 3, n: 0, localized: false }
    );
    let loc = a.localize();
    assert!(matches!(
        compose(&a.into(), &PairMorphism::identity(1, true).into()),
        Err(Error::ChainMismatch(_))
    ));
    assert_eq!(
        compose(&loc.clone().into(), &PairMorphism::identity(1, true).into()).unwrap(),
        Morphism::Pair(loc)
    );
}

#[test]
fn fitting_recovers_generators() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let (a, _) = composable_pair(&mut rng);
        let fitted = fit_generator(&a.to_linear_map(), a.m(), a.n(), a.localized());
        assert_eq!(fitted, Some(Morphism::Pair(a)));
    }
}

#[test]
fn non_morphisms_are_caught() {
    // X ↦ X, Y ↦ Y, H ↦ H from g(2) to g(1) breaks [X, Y] = x² H
    let mut map = PairMorphism::new(2, 1, 1.into(), 0, Sign::Plus, false).unwrap().to_linear_map();
    map.images[Y][Y] = LaurentPoly::from(1);
    assert!(!verify_linear_map(&map).ok());
    // sending H to 2H breaks the embedding of Lie(K)
    let mut map = PairMorphism::identity(1, false).to_linear_map();
    map.images[H][H] = LaurentPoly::from(2);
    assert!(!verify_linear_map(&map).ok());
}

#[test]
fn pullbacks_multiply_the_invariant() {
    let g1 = make_g(1);
    for n in 0..=10usize {
        let f = pullback(&g1, &Poly::x_pow(n)).unwrap();
        assert_eq!(classify_extension(&f).unwrap().n, n as u32);
    }
    for a in 0..=4usize {
        for b in 0..=4usize {
            for base in [1u32, 3] {
                let f = pullback(&pullback(&make_g(base), &Poly::x_pow(a)).unwrap(), &Poly::x_pow(b)).unwrap();
                assert_eq!(classify_extension(&f).unwrap().n, base * (a * b) as u32);
            }
        }
    }
    // a non-monomial base map leaves the class of extensions
    let f = pullback(&g1, &Poly::from_ints(&[1, 1])).unwrap();
    assert!(classify_extension(&f).is_err());
}

#[test]
fn embedding_into_the_constant_family() {
    for n in 0..6 {
        let e = embed_in_constant(n);
        assert!(verify_morphism(&e).ok());
        let src = Arc::new(make_g(n));
        let y = e.apply(&FamilyElement::basis(&src, Y)).unwrap();
        assert_eq!(y.coord(Y), &LaurentPoly::x_pow(n as i64));
    }
}
