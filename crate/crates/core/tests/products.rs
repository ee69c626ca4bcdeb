mod common;

use common::{naive_code_m, naive_n, random_code, random_pair, RATIO_GROUPS};
use frcodes::catalog::trivial_code;
use frcodes::products::{
    gfr, gfr_hierarchy, repeat_blocks, stretch_chain, tensor, tensor_hierarchy, ProductSpec,
};
use frcodes::{Error, FrCode, Params};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn max_convolution_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..25 {
        let (c1, c2) = random_pair(&mut rng);
        let product = tensor(&c1, &c2).unwrap();
        let predicted = tensor_hierarchy(&naive_n(&c1), &naive_n(&c2)).unwrap();
        assert_eq!(naive_n(&product), predicted, "{} x {}", c1.params(), c2.params());
        let spec = ProductSpec::new(vec![(c1.clone(), 1), (c2.clone(), 1)]).unwrap();
        assert_eq!(spec.n_chain().unwrap(), predicted);
        assert_eq!(spec.params().unwrap(), product.params());
    }
}

#[test]
fn product_parameters() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..25 {
        let (c1, c2) = random_pair(&mut rng);
        let p = tensor(&c1, &c2).unwrap().params();
        let expected = Params::new(
            c1.n() + c2.n(),
            c1.alpha() * c2.theta(),
            c1.theta() * c2.theta(),
            c1.rho() + c2.rho(),
        )
        .unwrap();
        assert_eq!(p, expected);
    }
}

#[test]
fn commutative_up_to_relabeling() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..10 {
        let (c1, c2) = random_pair(&mut rng);
        let ab = tensor(&c1, &c2).unwrap();
        let ba = tensor(&c2, &c1).unwrap();
        assert_eq!(ab.params(), ba.params());
        assert_eq!(naive_code_m(&ab), naive_code_m(&ba));
    }
}

#[test]
fn associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let group = RATIO_GROUPS[0];
    for _ in 0..10 {
        let c: Vec<FrCode> = (0..3)
            .map(|_| {
                let &(n, a, t, r) = group[..4].choose(&mut rng).unwrap();
                random_code(&mut rng, n, a, t, r)
            })
            .collect();
        let left = tensor(&tensor(&c[0], &c[1]).unwrap(), &c[2]).unwrap();
        let right = tensor(&c[0], &tensor(&c[1], &c[2]).unwrap()).unwrap();
        assert_eq!(left, right);
    }
}

#[test]
fn folded_products_match_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for _ in 0..15 {
        let (c1, c2) = random_pair(&mut rng);
        let e1 = rng.gen_range(1..=2);
        let e2 = rng.gen_range(1..=2);
        if e1 * c1.n() + e2 * c2.n() > 16 {
            continue;
        }
        let spec = ProductSpec::new(vec![(c1.clone(), e1), (c2.clone(), e2)]).unwrap();
        let built = spec.build().unwrap();
        let direct = tensor(&repeat_blocks(&c1, e1).unwrap(), &repeat_blocks(&c2, e2).unwrap()).unwrap();
        assert_eq!(built, direct);
        assert_eq!(spec.n_chain().unwrap(), naive_n(&built));
    }
}

#[test]
fn stretched_chain_is_repetition_hierarchy() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for &(n, a, t, r) in &[(4, 2, 4, 2), (6, 2, 4, 3), (3, 2, 6, 1)] {
        let c = random_code(&mut rng, n, a, t, r);
        for e in 1..=3 {
            let folded = repeat_blocks(&c, e).unwrap();
            assert_eq!(stretch_chain(&naive_n(&c), e), naive_n(&folded));
        }
    }
}

#[test]
fn gfr_closed_form_matches_enumeration() {
    for (g, alphas) in [
        (2, vec![1, 1]),
        (3, vec![1, 1]),
        (3, vec![2, 1]),
        (2, vec![1, 1, 1]),
        (2, vec![2, 1, 1]),
        (4, vec![1, 2]),
        (3, vec![3, 3]),
    ] {
        let code = gfr(g, &alphas).unwrap();
        let h = gfr_hierarchy(g, &alphas).unwrap();
        assert_eq!(h.m, naive_code_m(&code), "gfr({g}, {alphas:?})");
        let s: usize = alphas.iter().sum();
        assert_eq!(code.theta(), g * s);
        assert_eq!(code.n(), g.pow(alphas.len() as u32));
    }
}

#[test]
fn trivial_grid_is_transpose_of_gfr() {
    let t = trivial_code(4).unwrap();
    assert_eq!(gfr(4, &[1, 1]).unwrap(), tensor(&t, &t).unwrap().dual());
}

#[test]
fn mismatched_ratio_rejected() {
    let a = trivial_code(3).unwrap();
    let b = trivial_code(4).unwrap();
    assert!(matches!(tensor(&a, &b), Err(Error::RatioMismatch { .. })));
    assert!(ProductSpec::new(vec![(a, 1), (b, 1)]).is_err());
    assert!(tensor_hierarchy(&[3, 1, 2, 0], &[2, 1, 0]).is_err());
}
