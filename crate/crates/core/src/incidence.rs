//! Incidence structures and fractional repetition codes.
//!
//! An [`IncidenceStructure`] is a list of blocks over the points `0..theta`.
//! Blocks are positional: two blocks with the same point set are distinct
//! blocks (repeated blocks), which the e-fold product construction relies on.
//! Points are 0-indexed everywhere; printed literature usually labels them
//! from 1.
//!
//! An [`FrCode`] is a structure whose incidence matrix has constant row sum
//! `alpha` and constant column sum `rho`, i.e. a tactical configuration.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest point count accepted by any constructor.
pub const MAX_POINTS: usize = 4096;
/// Largest block count accepted by any constructor.
pub const MAX_BLOCKS: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IncidenceStructure {
    theta: usize,
    blocks: Vec<Vec<usize>>,
}

impl IncidenceStructure {
    /// Builds a structure from explicit point lists. Each block is stored
    /// sorted; block order and repeated blocks are kept.
    pub fn from_blocks<I, B>(theta: usize, blocks: I) -> Result<Self>
    where
        I: IntoIterator<Item = B>,
        B: IntoIterator<Item = usize>,
    {
        if theta == 0 {
            return Err(Error::Empty);
        }
        if theta > MAX_POINTS {
            return Err(Error::TooLarge {
                what: "theta",
                value: theta,
                max: MAX_POINTS,
            });
        }
        let mut out = Vec::new();
        for (b, block) in blocks.into_iter().enumerate() {
            let mut seen = vec![false; theta];
            let mut pts: Vec<usize> = Vec::new();
            for p in block {
                if p >= theta {
                    return Err(Error::PointOutOfRange {
                        block: b,
                        point: p,
                        theta,
                    });
                }
                if seen[p] {
                    return Err(Error::DuplicatePoint { block: b, point: p });
                }
                seen[p] = true;
                pts.push(p);
            }
            pts.sort_unstable();
            out.push(pts);
            if out.len() > MAX_BLOCKS {
                return Err(Error::TooLarge {
                    what: "n",
                    value: out.len(),
                    max: MAX_BLOCKS,
                });
            }
        }
        if out.is_empty() {
            return Err(Error::Empty);
        }
        Ok(Self { theta, blocks: out })
    }

    /// Row `i` of the matrix becomes block `i`; column `j` is point `j`.
    pub fn from_matrix<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let first = rows.first().ok_or(Error::Empty)?;
        let width = first.as_ref().len();
        if width == 0 {
            return Err(Error::Empty);
        }
        let mut blocks = Vec::with_capacity(rows.len());
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != width {
                return Err(Error::RaggedRow {
                    row: r,
                    len: row.len(),
                    expected: width,
                });
            }
            let mut block = Vec::new();
            for (c, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => block.push(c),
                    _ => {
                        return Err(Error::NonBinaryEntry {
                            row: r,
                            col: c,
                            value: v,
                        })
                    }
                }
            }
            blocks.push(block);
        }
        Self::from_blocks(width, blocks)
    }

    pub fn theta(&self) -> usize {
        self.theta
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    /// The `|blocks| x theta` zero-one incidence matrix.
    pub fn to_matrix(&self) -> Vec<Vec<u8>> {
        self.blocks
            .iter()
            .map(|b| {
                let mut row = vec![0u8; self.theta];
                for &p in b {
                    row[p] = 1;
                }
                row
            })
            .collect()
    }

    /// True iff no two blocks have the same point set.
    pub fn is_simple(&self) -> bool {
        let mut sorted: Vec<&Vec<usize>> = self.blocks.iter().collect();
        sorted.sort();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    /// The transposed structure: block `p` of the result lists the blocks
    /// of `self` containing point `p`.
    pub fn transpose(&self) -> Self {
        let mut cols = vec![Vec::new(); self.theta];
        for (b, block) in self.blocks.iter().enumerate() {
            for &p in block {
                cols[p].push(b);
            }
        }
        Self {
            theta: self.blocks.len(),
            blocks: cols,
        }
    }
}

/// The four parameters `(n, alpha, theta, rho)` of an FR code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub n: usize,
    pub alpha: usize,
    pub theta: usize,
    pub rho: usize,
}

impl Params {
    /// Checks positivity, `alpha <= theta`, `rho <= n` and `n*alpha = theta*rho`.
    /// No claim is made that a code with these parameters exists.
    pub fn new(n: usize, alpha: usize, theta: usize, rho: usize) -> Result<Self> {
        let bad = |reason| Error::InvalidParams {
            n,
            alpha,
            theta,
            rho,
            reason,
        };
        if n == 0 || alpha == 0 || theta == 0 || rho == 0 {
            return Err(bad("all parameters must be positive"));
        }
        if alpha > theta {
            return Err(bad("alpha exceeds theta"));
        }
        if rho > n {
            return Err(bad("rho exceeds n"));
        }
        if n * alpha != theta * rho {
            return Err(bad("n*alpha != theta*rho"));
        }
        Ok(Self {
            n,
            alpha,
            theta,
            rho,
        })
    }

    pub fn dual(self) -> Self {
        Self {
            n: self.theta,
            alpha: self.rho,
            theta: self.n,
            rho: self.alpha,
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.n, self.alpha, self.theta, self.rho)
    }
}

/// A validated `(n, alpha, theta, rho)`-FR code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrCode {
    structure: IncidenceStructure,
    params: Params,
    // point -> blocks containing it, ascending
    holders: Vec<Vec<usize>>,
}

impl FrCode {
    /// Accepts `structure` iff every block has the same size and every
    /// point lies in the same positive number of blocks.
    pub fn new(structure: IncidenceStructure) -> Result<Self> {
        let alpha = structure.blocks[0].len();
        for (b, block) in structure.blocks.iter().enumerate() {
            if block.len() != alpha {
                return Err(Error::NonConstantBlockSize {
                    block: b,
                    expected: alpha,
                    found: block.len(),
                });
            }
        }
        let holders = structure.transpose().blocks;
        let rho = holders[0].len();
        for (p, h) in holders.iter().enumerate() {
            if h.is_empty() {
                return Err(Error::UncoveredPoint { point: p });
            }
            if h.len() != rho {
                return Err(Error::NonConstantPointDegree {
                    point: p,
                    expected: rho,
                    found: h.len(),
                });
            }
        }
        let n = structure.num_blocks();
        let params = Params::new(n, alpha, structure.theta, rho)?;
        assert_eq!(n * alpha, structure.theta * rho);
        Ok(Self {
            structure,
            params,
            holders,
        })
    }

    pub fn from_blocks<I, B>(theta: usize, blocks: I) -> Result<Self>
    where
        I: IntoIterator<Item = B>,
        B: IntoIterator<Item = usize>,
    {
        Self::new(IncidenceStructure::from_blocks(theta, blocks)?)
    }

    pub fn from_matrix<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        Self::new(IncidenceStructure::from_matrix(rows)?)
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn alpha(&self) -> usize {
        self.params.alpha
    }

    pub fn theta(&self) -> usize {
        self.params.theta
    }

    pub fn rho(&self) -> usize {
        self.params.rho
    }

    pub fn structure(&self) -> &IncidenceStructure {
        &self.structure
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        self.structure.blocks()
    }

    pub fn block(&self, i: usize) -> &[usize] {
        self.structure.block(i)
    }

    /// Blocks containing point `p`, in ascending order.
    pub fn holders(&self, p: usize) -> &[usize] {
        &self.holders[p]
    }

    pub fn to_matrix(&self) -> Vec<Vec<u8>> {
        self.structure.to_matrix()
    }

    pub fn is_simple(&self) -> bool {
        self.structure.is_simple()
    }

    /// The transpose code: a `(theta, rho, n, alpha)`-FR code whose block
    /// `p` lists the nodes storing point `p`.
    pub fn dual(&self) -> FrCode {
        FrCode {
            structure: IncidenceStructure {
                theta: self.params.n,
                blocks: self.holders.clone(),
            },
            params: self.params.dual(),
            holders: self.structure.blocks.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn design_blocks() -> Vec<Vec<usize>> {
        vec![
            vec![0, 1, 2, 5],
            vec![0, 1, 4, 6],
            vec![0, 2, 3, 4],
            vec![0, 3, 5, 6],
            vec![1, 2, 3, 6],
            vec![1, 3, 4, 5],
            vec![2, 4, 5, 6],
        ]
    }

    #[test]
    fn from_blocks_keeps_order_and_repeats() {
        let s = IncidenceStructure::from_blocks(7, design_blocks()).unwrap();
        assert_eq!(s.blocks(), design_blocks().as_slice());
        assert!(s.is_simple());

        let rep = IncidenceStructure::from_blocks(1, vec![vec![0], vec![0]]).unwrap();
        assert_eq!(rep.num_blocks(), 2);
        assert!(!rep.is_simple());
    }

    #[test]
    fn from_blocks_sorts_within_block() {
        let s = IncidenceStructure::from_blocks(4, vec![vec![3, 0, 2]]).unwrap();
        assert_eq!(s.block(0), &[0, 2, 3]);
    }

    #[test]
    fn from_blocks_errors() {
        assert_eq!(
            IncidenceStructure::from_blocks(3, vec![vec![0, 3]]),
            Err(Error::PointOutOfRange {
                block: 0,
                point: 3,
                theta: 3
            })
        );
        assert_eq!(
            IncidenceStructure::from_blocks(3, vec![vec![1, 1]]),
            Err(Error::DuplicatePoint { block: 0, point: 1 })
        );
        assert_eq!(
            IncidenceStructure::from_blocks(3, Vec::<Vec<usize>>::new()),
            Err(Error::Empty)
        );
        assert_eq!(
            IncidenceStructure::from_blocks(0, vec![vec![]]),
            Err(Error::Empty)
        );
        assert!(matches!(
            IncidenceStructure::from_blocks(MAX_POINTS + 1, vec![vec![0]]),
            Err(Error::TooLarge { .. })
        ));
        assert!(matches!(
            IncidenceStructure::from_blocks(1, vec![vec![0]; MAX_BLOCKS + 1]),
            Err(Error::TooLarge { what: "n", .. })
        ));
    }

    #[test]
    fn from_matrix_views() {
        let id: Vec<Vec<u8>> = (0..3)
            .map(|i| (0..3).map(|j| u8::from(i == j)).collect())
            .collect();
        let s = IncidenceStructure::from_matrix(&id).unwrap();
        assert_eq!(s.blocks(), &[vec![0], vec![1], vec![2]]);

        let ones = vec![vec![1u8]; 4];
        let s = IncidenceStructure::from_matrix(&ones).unwrap();
        assert_eq!(s.blocks(), vec![vec![0]; 4].as_slice());

        assert!(matches!(
            IncidenceStructure::from_matrix(&[vec![1u8, 0], vec![1]]),
            Err(Error::RaggedRow { row: 1, .. })
        ));
        assert!(matches!(
            IncidenceStructure::from_matrix(&[vec![1u8, 2]]),
            Err(Error::NonBinaryEntry { value: 2, .. })
        ));
    }

    #[test]
    fn validate_rejects_irregular() {
        assert!(matches!(
            FrCode::from_blocks(2, vec![vec![0, 1], vec![0]]),
            Err(Error::NonConstantBlockSize { block: 1, .. })
        ));
        assert!(matches!(
            FrCode::from_blocks(3, vec![vec![0, 1], vec![0, 2], vec![0, 1]]),
            Err(Error::NonConstantPointDegree { .. })
        ));
        assert!(matches!(
            FrCode::from_blocks(3, vec![vec![0, 1], vec![0, 1]]),
            Err(Error::UncoveredPoint { point: 2 })
        ));
    }

    #[test]
    fn repetition_code_dual() {
        let rep = FrCode::from_matrix(&vec![vec![1u8]; 4]).unwrap();
        assert_eq!(rep.params(), Params::new(4, 1, 1, 4).unwrap());
        let d = rep.dual();
        assert_eq!(d.params(), Params::new(1, 4, 4, 1).unwrap());
        assert_eq!(d.blocks(), &[vec![0, 1, 2, 3]]);
    }

    #[test]
    fn dual_is_transpose_and_involution() {
        let c = FrCode::from_blocks(7, design_blocks()).unwrap();
        let d = c.dual();
        let m = c.to_matrix();
        let dm = d.to_matrix();
        for (i, row) in m.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(dm[j][i], v);
            }
        }
        assert_eq!(d.dual(), c);
        assert_eq!(FrCode::new(d.structure().clone()).unwrap(), d);
    }

    #[test]
    fn params_checks() {
        assert!(Params::new(9, 2, 6, 3).is_ok());
        assert!(Params::new(9, 2, 6, 4).is_err());
        assert!(Params::new(0, 2, 6, 3).is_err());
        assert!(Params::new(2, 3, 2, 3).is_err());
        assert_eq!(
            Params::new(6, 4, 12, 2).unwrap().dual(),
            Params::new(12, 2, 6, 4).unwrap()
        );
    }
}
