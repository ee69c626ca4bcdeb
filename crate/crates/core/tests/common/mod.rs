#![allow(dead_code)]

use std::collections::BTreeSet;

use frcodes::FrCode;
use rand::seq::SliceRandom;
use rand::Rng;

/// Calls `f` on every k-subset of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::new(), f);
}

fn union_size(blocks: &[Vec<usize>], pick: &[usize]) -> usize {
    pick.iter()
        .flat_map(|&i| blocks[i].iter().copied())
        .collect::<BTreeSet<_>>()
        .len()
}

/// M_0..M_n by plain enumeration.
pub fn naive_m(blocks: &[Vec<usize>]) -> Vec<usize> {
    let n = blocks.len();
    let mut m = vec![0];
    for k in 1..=n {
        let mut best = usize::MAX;
        combinations(n, k, &mut |s| best = best.min(union_size(blocks, s)));
        m.push(best);
    }
    m
}

/// Lexicographically first k-subset attaining M_k.
pub fn naive_witness(blocks: &[Vec<usize>], k: usize) -> (usize, Vec<usize>) {
    let mut best: Option<(usize, Vec<usize>)> = None;
    combinations(blocks.len(), k, &mut |s| {
        let u = union_size(blocks, s);
        if best.as_ref().is_none_or(|(b, _)| u < *b) {
            best = Some((u, s.to_vec()));
        }
    });
    best.unwrap()
}

pub fn naive_code_m(code: &FrCode) -> Vec<usize> {
    naive_m(code.blocks())
}

/// N_0..N_n by plain enumeration.
pub fn naive_n(code: &FrCode) -> Vec<usize> {
    naive_code_m(code).iter().map(|m| code.theta() - m).collect()
}

/// A random (n, alpha, theta, rho) code: rho shuffled copies of the point
/// set are concatenated and cut into blocks, retrying on repeated points.
pub fn random_code<R: Rng>(rng: &mut R, n: usize, alpha: usize, theta: usize, rho: usize) -> FrCode {
    assert_eq!(n * alpha, theta * rho);
    loop {
        let mut cells: Vec<usize> = (0..rho).flat_map(|_| 0..theta).collect();
        cells.shuffle(rng);
        let blocks: Vec<Vec<usize>> = cells.chunks(alpha).map(<[usize]>::to_vec).collect();
        let ok = blocks
            .iter()
            .all(|b| b.iter().collect::<BTreeSet<_>>().len() == b.len());
        if ok {
            return FrCode::from_blocks(theta, blocks).expect("tactical by construction");
        }
    }
}

/// Small valid parameter tuples for random codes.
pub const SMALL_PARAMS: &[(usize, usize, usize, usize)] = &[
    (4, 2, 4, 2),
    (5, 2, 5, 2),
    (6, 2, 4, 3),
    (6, 2, 6, 2),
    (6, 3, 6, 3),
    (6, 2, 3, 4),
    (8, 3, 6, 4),
    (8, 3, 8, 3),
    (9, 2, 6, 3),
    (9, 4, 12, 3),
    (10, 3, 6, 5),
    (4, 3, 6, 2),
    (3, 4, 6, 2),
    (6, 4, 8, 3),
    (7, 3, 7, 3),
];

type P = (usize, usize, usize, usize);

/// Parameter tuples grouped by storage ratio alpha/theta.
pub const RATIO_GROUPS: &[&[P]] = &[
    &[(2, 1, 2, 1), (4, 1, 2, 2), (2, 2, 4, 1), (4, 2, 4, 2), (6, 2, 4, 3), (4, 3, 6, 2), (6, 3, 6, 3), (8, 2, 4, 4)],
    &[(3, 1, 3, 1), (6, 1, 3, 2), (3, 2, 6, 1), (6, 2, 6, 2), (9, 2, 6, 3), (9, 1, 3, 3)],
    &[(3, 2, 3, 2), (6, 2, 3, 4), (6, 4, 6, 4), (9, 2, 3, 6)],
    &[(4, 1, 4, 1), (8, 1, 4, 2), (4, 2, 8, 1), (8, 2, 8, 2)],
];

/// Two random codes with equal storage ratio, `n1 + n2 <= 14` and
/// `theta1 * theta2 <= 40`.
pub fn random_pair<R: Rng>(rng: &mut R) -> (FrCode, FrCode) {
    loop {
        let group = RATIO_GROUPS.choose(rng).unwrap();
        let a = *group.choose(rng).unwrap();
        let b = *group.choose(rng).unwrap();
        if a.0 + b.0 <= 14 && a.2 * b.2 <= 40 {
            return (random_code(rng, a.0, a.1, a.2, a.3), random_code(rng, b.0, b.1, b.2, b.3));
        }
    }
}
