//! t-designs and the FR codes built from them.
//!
//! For a t-(v, m, lambda) design, `lambda_i_j(.., i, j)` is the number of
//! blocks containing `i` given points and avoiding `j` other given points
//! (`i + j <= t`):
//!
//! ```text
//! lambda * C(v-i-j, m-i) / C(v-t, m-t)
//! ```
//!
//! Taking the design's blocks as storage nodes gives an FR code with
//! `(n, alpha, theta, rho) = (b, m, v, lambda_i_j(1, 0))`, and its hierarchy
//! is known in closed form for `k > lambda_i_j(0, t)`.

use num::{BigUint, ToPrimitive, Zero};
use serde::Serialize;

use crate::bounds::{binomial, min_reconstruction_degree};
use crate::error::{Error, Result};
use crate::hierarchy::{direct_hierarchy, SearchLimit};
use crate::incidence::{FrCode, IncidenceStructure};

pub const MAX_DESIGN_POINTS: usize = 64;
pub const MAX_STRENGTH: usize = 4;

fn design_err(msg: impl Into<String>) -> Error {
    Error::Design(msg.into())
}

fn check_shape(t: usize, v: usize, m: usize) -> Result<()> {
    if t == 0 || t > m || m >= v {
        return Err(design_err(format!(
            "need 1 <= t <= m < v, got t={t}, m={m}, v={v}"
        )));
    }
    Ok(())
}

/// Blocks of a t-(v, m, lambda) design containing `i` fixed points and
/// avoiding `j` others.
pub fn lambda_i_j(t: usize, v: usize, m: usize, lambda: u64, i: usize, j: usize) -> Result<u64> {
    check_shape(t, v, m)?;
    if i + j > t {
        return Err(design_err(format!("i + j = {} exceeds t = {t}", i + j)));
    }
    let num = binomial((v - i - j) as u64, (m - i) as u64) * BigUint::from(lambda);
    let den = binomial((v - t) as u64, (m - t) as u64);
    if !(&num % &den).is_zero() {
        return Err(design_err(format!(
            "lambda^{j}_{i} = {num}/{den} is not an integer; no {t}-({v},{m},{lambda}) design exists"
        )));
    }
    (num / den)
        .to_u64()
        .ok_or_else(|| design_err("block count overflows u64"))
}

/// Number of blocks `b = lambda * C(v,t) / C(m,t)`.
pub fn block_count(t: usize, v: usize, m: usize, lambda: u64) -> Result<u64> {
    lambda_i_j(t, v, m, lambda, 0, 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TDesign {
    v: usize,
    m: usize,
    t: usize,
    lambda: u64,
    structure: IncidenceStructure,
}

fn mask(block: &[usize]) -> u64 {
    block.iter().fold(0u64, |acc, &p| acc | (1 << p))
}

/// Calls `f` with the bitmask of every `size`-subset of `0..v`, in
/// lexicographic order.
pub(crate) fn for_each_subset(v: usize, size: usize, mut f: impl FnMut(u64)) {
    if size > v {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        f(mask(&idx));
        let Some(pos) = (0..size).rev().find(|&p| idx[p] < v - size + p) else {
            return;
        };
        idx[pos] += 1;
        for q in pos + 1..size {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// Checks exhaustively that `structure` is a t-design and discovers lambda.
pub fn verify_t_design(structure: &IncidenceStructure, t: usize) -> Result<TDesign> {
    let v = structure.theta();
    if v > MAX_DESIGN_POINTS {
        return Err(Error::TooLarge {
            what: "v",
            value: v,
            max: MAX_DESIGN_POINTS,
        });
    }
    if t > MAX_STRENGTH {
        return Err(Error::TooLarge {
            what: "t",
            value: t,
            max: MAX_STRENGTH,
        });
    }
    if !structure.is_simple() {
        return Err(design_err("structure has repeated blocks"));
    }
    let m = structure.block(0).len();
    if let Some(b) = structure.blocks().iter().position(|b| b.len() != m) {
        return Err(Error::NonConstantBlockSize {
            block: b,
            expected: m,
            found: structure.block(b).len(),
        });
    }
    check_shape(t, v, m)?;

    let masks: Vec<u64> = structure.blocks().iter().map(|b| mask(b)).collect();
    let mut lambda = None;
    let mut mismatch = None;
    for_each_subset(v, t, |s| {
        if mismatch.is_some() {
            return;
        }
        let c = masks.iter().filter(|&&b| b & s == s).count() as u64;
        match lambda {
            None => lambda = Some(c),
            Some(l) if l != c => mismatch = Some((s, l, c)),
            _ => {}
        }
    });
    if let Some((s, l, c)) = mismatch {
        let pts: Vec<usize> = (0..v).filter(|&p| s >> p & 1 == 1).collect();
        return Err(design_err(format!(
            "{t}-subset {pts:?} lies in {c} blocks, earlier subsets in {l}"
        )));
    }
    let lambda = lambda.expect("at least one t-subset");
    if lambda == 0 {
        return Err(design_err("no t-subset lies in any block"));
    }
    let b = block_count(t, v, m, lambda)?;
    assert_eq!(b as usize, structure.num_blocks());
    Ok(TDesign {
        v,
        m,
        t,
        lambda,
        structure: structure.clone(),
    })
}

impl TDesign {
    pub fn v(&self) -> usize {
        self.v
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    pub fn structure(&self) -> &IncidenceStructure {
        &self.structure
    }

    pub fn b(&self) -> u64 {
        self.lambda_i_j(0, 0)
    }

    /// `lambda^j_i`: blocks containing `i` fixed points and avoiding `j`.
    pub fn lambda_i_j(&self, i: usize, j: usize) -> u64 {
        lambda_i_j(self.t, self.v, self.m, self.lambda, i, j)
            .expect("verified designs have integral counts")
    }

    /// Rows `i = 0..=t`, row `i` holding `lambda^j_i` for `j = 0..=t-i`.
    pub fn lambda_triangle(&self) -> Vec<Vec<u64>> {
        (0..=self.t)
            .map(|i| (0..=self.t - i).map(|j| self.lambda_i_j(i, j)).collect())
            .collect()
    }

    /// The FR code `(b, m, v, lambda^0_1)` on the design's blocks.
    pub fn to_fr(&self) -> FrCode {
        let code = FrCode::new(self.structure.clone()).expect("a t-design is a tactical configuration");
        assert_eq!(code.rho() as u64, self.lambda_i_j(1, 0));
        code
    }

    /// Predicted `M_k` for `k = 1..=b` (entry `k - 1`). `None` marks
    /// `k <= lambda^t_0`, where no closed form is claimed.
    ///
    /// `M_k = v - l + 1` on `lambda^l_0 < k <= lambda^(l-1)_0`, `l = 1..=t`.
    pub fn predicted_hierarchy(&self) -> Vec<Option<usize>> {
        let b = self.b() as usize;
        let mut out = vec![None; b];
        for l in 1..=self.t {
            let lo = self.lambda_i_j(0, l) as usize;
            let hi = self.lambda_i_j(0, l - 1) as usize;
            for k in lo + 1..=hi {
                out[k - 1] = Some(self.v - l + 1);
            }
        }
        out
    }
}

pub fn design_to_fr(design: &TDesign) -> FrCode {
    design.to_fr()
}

pub fn design_hierarchy(design: &TDesign) -> Vec<Option<usize>> {
    design.predicted_hierarchy()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OptimalityRow {
    pub file_size: usize,
    /// Smallest `k` with `M_k >= file_size`, by enumeration.
    pub smallest_k: usize,
    /// The reconstruction-degree lower bound at `file_size`.
    pub lower_bound: usize,
    /// `lambda^(v - M + 1)_0 + 1`.
    pub predicted: usize,
    pub attained: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OptimalityReport {
    pub v: usize,
    pub m: usize,
    pub t: usize,
    pub lambda: u64,
    pub b: u64,
    pub rows: Vec<OptimalityRow>,
}

impl OptimalityReport {
    pub fn all_attained(&self) -> bool {
        self.rows.iter().all(|r| r.attained)
    }
}

/// Compares, for every file size `v-t+1..=v`, the smallest reconstruction
/// degree found by enumeration against the lower bound.
pub fn check_design_optimality(design: &TDesign, limit: SearchLimit) -> Result<OptimalityReport> {
    let code = design.to_fr();
    let h = direct_hierarchy(&code, limit)?;
    let (v, t) = (design.v, design.t);
    let rows = (v - t + 1..=v)
        .map(|file_size| {
            let smallest_k = (1..=code.n())
                .find(|&k| h.m[k] >= file_size)
                .expect("M_n = theta");
            let lower_bound = min_reconstruction_degree(code.n(), code.alpha(), v, file_size)?;
            let predicted = design.lambda_i_j(0, v - file_size + 1) as usize + 1;
            Ok(OptimalityRow {
                file_size,
                smallest_k,
                lower_bound,
                predicted,
                attained: smallest_k == lower_bound && lower_bound == predicted,
            })
        })
        .collect::<Result<_>>()?;
    Ok(OptimalityReport {
        v,
        m: design.m,
        t,
        lambda: design.lambda,
        b: design.b(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn design_2_7_4_2() -> IncidenceStructure {
        IncidenceStructure::from_blocks(
            7,
            vec![
                vec![0, 1, 2, 5],
                vec![0, 1, 4, 6],
                vec![0, 2, 3, 4],
                vec![0, 3, 5, 6],
                vec![1, 2, 3, 6],
                vec![1, 3, 4, 5],
                vec![2, 4, 5, 6],
            ],
        )
        .unwrap()
    }

    fn fano() -> IncidenceStructure {
        IncidenceStructure::from_blocks(
            7,
            vec![
                vec![0, 1, 2],
                vec![0, 3, 4],
                vec![0, 5, 6],
                vec![1, 3, 5],
                vec![1, 4, 6],
                vec![2, 3, 6],
                vec![2, 4, 5],
            ],
        )
        .unwrap()
    }

    // blocks containing all of `x` and none of `y`
    fn count(s: &IncidenceStructure, x: u64, y: u64) -> u64 {
        s.blocks()
            .iter()
            .map(|b| mask(b))
            .filter(|&b| b & x == x && b & y == 0)
            .count() as u64
    }

    #[test]
    fn lambda_values() {
        assert_eq!(lambda_i_j(2, 7, 4, 2, 1, 0).unwrap(), 4);
        assert_eq!(lambda_i_j(2, 7, 4, 2, 2, 0).unwrap(), 2);
        assert_eq!(lambda_i_j(2, 7, 3, 1, 0, 1).unwrap(), 4);
        assert_eq!(block_count(2, 7, 4, 2).unwrap(), 7);
        assert_eq!(block_count(2, 7, 3, 1).unwrap(), 7);
        // t = 1: b = lambda * v / m
        assert_eq!(block_count(1, 6, 2, 1).unwrap(), 3);
        assert!(lambda_i_j(2, 7, 4, 2, 2, 1).is_err());
        // a 2-(8,3,1) design cannot exist: r = 7/2
        assert!(lambda_i_j(2, 8, 3, 1, 1, 0).is_err());
        assert!(lambda_i_j(3, 7, 2, 1, 0, 0).is_err());
    }

    #[test]
    fn verify_examples() {
        let d = verify_t_design(&design_2_7_4_2(), 2).unwrap();
        assert_eq!((d.v(), d.m(), d.lambda(), d.b()), (7, 4, 2, 7));
        let f = verify_t_design(&fano(), 2).unwrap();
        assert_eq!((f.v(), f.m(), f.lambda(), f.b()), (7, 3, 1, 7));
        // every design is also a 1-design
        assert_eq!(verify_t_design(&fano(), 1).unwrap().lambda(), 3);
    }

    #[test]
    fn verify_rejects() {
        let rep = IncidenceStructure::from_blocks(3, vec![vec![0, 1], vec![0, 1]]).unwrap();
        assert!(verify_t_design(&rep, 1).is_err());
        let ragged = IncidenceStructure::from_blocks(3, vec![vec![0, 1], vec![2]]).unwrap();
        assert!(matches!(
            verify_t_design(&ragged, 1),
            Err(Error::NonConstantBlockSize { .. })
        ));
        // path 0-1-2: pair {0,2} is never covered
        let path = IncidenceStructure::from_blocks(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert!(verify_t_design(&path, 2).is_err());
        assert!(verify_t_design(&fano(), 5).is_err());
    }

    #[test]
    fn block_counts_match_brute_force() {
        for s in [design_2_7_4_2(), fano()] {
            let d = verify_t_design(&s, 2).unwrap();
            for i in 0..=2usize {
                for j in 0..=2 - i {
                    for_each_subset(7, i + j, |xy| {
                        let pts: Vec<usize> = (0..7).filter(|&p| xy >> p & 1 == 1).collect();
                        let x = mask(&pts[..i]);
                        let y = mask(&pts[i..]);
                        assert_eq!(count(&s, x, y), d.lambda_i_j(i, j), "i={i} j={j}");
                    });
                }
            }
        }
    }

    #[test]
    fn pascal_identity() {
        for s in [design_2_7_4_2(), fano()] {
            let d = verify_t_design(&s, 2).unwrap();
            for i in 0..2usize {
                for j in 0..2 - i {
                    assert_eq!(
                        d.lambda_i_j(i, j),
                        d.lambda_i_j(i + 1, j) + d.lambda_i_j(i, j + 1)
                    );
                }
            }
        }
    }

    #[test]
    fn to_fr_parameters() {
        let c = verify_t_design(&design_2_7_4_2(), 2).unwrap().to_fr();
        assert_eq!((c.n(), c.alpha(), c.theta(), c.rho()), (7, 4, 7, 4));
        let c = verify_t_design(&fano(), 2).unwrap().to_fr();
        assert_eq!((c.n(), c.alpha(), c.theta(), c.rho()), (7, 3, 7, 3));
        let one = IncidenceStructure::from_blocks(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let d = verify_t_design(&one, 1).unwrap();
        assert_eq!(d.to_fr().rho() as u64, d.lambda());
    }

    #[test]
    fn predictions() {
        let d = verify_t_design(&design_2_7_4_2(), 2).unwrap();
        assert_eq!(
            d.predicted_hierarchy(),
            vec![None, Some(6), Some(6), Some(7), Some(7), Some(7), Some(7)]
        );
        let f = verify_t_design(&fano(), 2).unwrap();
        assert_eq!(
            f.predicted_hierarchy(),
            vec![None, None, Some(6), Some(6), Some(7), Some(7), Some(7)]
        );
    }

    #[test]
    fn optimality() {
        for s in [design_2_7_4_2(), fano()] {
            let d = verify_t_design(&s, 2).unwrap();
            let r = check_design_optimality(&d, SearchLimit::default()).unwrap();
            assert!(r.all_attained(), "{r:?}");
            let full = r.rows.iter().find(|r| r.file_size == 7).unwrap();
            assert_eq!(full.smallest_k as u64, d.lambda_i_j(0, 1) + 1);
        }
        let d = verify_t_design(&fano(), 2).unwrap();
        assert!(matches!(
            check_design_optimality(&d, SearchLimit::new(3)),
            Err(Error::EnumerationCap { .. })
        ));
    }

    #[test]
    fn subsets_enumerated_in_order() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, |m| seen.push(m));
        assert_eq!(seen, vec![0b11, 0b101, 0b1001, 0b110, 0b1010, 0b1100]);
        let mut all = 0;
        for_each_subset(5, 0, |_| all += 1);
        assert_eq!(all, 1);
    }
}
