//! DRESS storage: an outer `[theta, M]` MDS code over GF(256) whose coded
//! symbols are placed on nodes by an FR code.
//!
//! The outer code is systematic Reed-Solomon by evaluation: the file is the
//! values of a polynomial of degree `< M` at `x = 0..M`, and coded symbol
//! `p` is its value at `x = p` for `p = 0..theta`. Any `M` symbols determine
//! the polynomial.
//!
//! Repair copies each lost symbol from the lowest-indexed surviving node
//! storing it; helpers never combine symbols.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf256::Gf256;
use crate::hierarchy::full_hierarchy;
use crate::incidence::FrCode;

/// Largest outer code length: one evaluation point per field element.
pub const MAX_CODE_LENGTH: usize = 256;

fn check_lengths(m: usize, theta: usize) -> Result<()> {
    if theta > MAX_CODE_LENGTH {
        return Err(Error::Mds(format!(
            "code length {theta} exceeds the field size {MAX_CODE_LENGTH}"
        )));
    }
    if m == 0 || m > theta {
        return Err(Error::Mds(format!(
            "file size {m} must lie in 1..={theta}"
        )));
    }
    Ok(())
}

/// Evaluates the polynomial through `(xs[j], ys[j])` at `x`.
fn interpolate(xs: &[Gf256], ys: &[Gf256], weights: &[Gf256], x: Gf256) -> Gf256 {
    if let Some(j) = xs.iter().position(|&xj| xj == x) {
        return ys[j];
    }
    // barycentric form: l(x) * sum w_j y_j / (x - x_j)
    let mut l = Gf256::ONE;
    let mut acc = Gf256::ZERO;
    for ((&xj, &yj), &wj) in xs.iter().zip(ys).zip(weights) {
        l *= x - xj;
        acc += wj * yj / (x - xj);
    }
    l * acc
}

fn barycentric_weights(xs: &[Gf256]) -> Vec<Gf256> {
    xs.iter()
        .enumerate()
        .map(|(j, &xj)| {
            let prod = xs
                .iter()
                .enumerate()
                .filter(|&(m, _)| m != j)
                .fold(Gf256::ONE, |acc, (_, &xm)| acc * (xj - xm));
            prod.inv().expect("distinct evaluation points")
        })
        .collect()
}

/// Encodes `file` (`M` symbols) into `theta` symbols; the first `M` are the
/// file itself.
pub fn mds_encode(file: &[Gf256], theta: usize) -> Result<Vec<Gf256>> {
    check_lengths(file.len(), theta)?;
    let xs: Vec<Gf256> = (0..file.len()).map(|i| Gf256(i as u8)).collect();
    let w = barycentric_weights(&xs);
    let mut out = file.to_vec();
    out.extend((file.len()..theta).map(|p| interpolate(&xs, file, &w, Gf256(p as u8))));
    Ok(out)
}

/// Recovers the `m`-symbol file from any `m` coded symbols `(point, value)`
/// of a length-`theta` codeword. Extra shares beyond the first `m` are
/// ignored.
pub fn mds_decode(shares: &[(usize, Gf256)], m: usize, theta: usize) -> Result<Vec<Gf256>> {
    check_lengths(m, theta)?;
    if shares.len() < m {
        return Err(Error::InsufficientSymbols {
            need: m,
            have: shares.len(),
            deficit: m - shares.len(),
        });
    }
    let shares = &shares[..m];
    let mut seen = vec![false; theta];
    for &(p, _) in shares {
        if p >= theta || seen[p] {
            return Err(Error::Mds(format!("share index {p} is out of range or repeated")));
        }
        seen[p] = true;
    }
    let xs: Vec<Gf256> = shares.iter().map(|&(p, _)| Gf256(p as u8)).collect();
    let ys: Vec<Gf256> = shares.iter().map(|&(_, y)| y).collect();
    let w = barycentric_weights(&xs);
    Ok((0..m).map(|i| interpolate(&xs, &ys, &w, Gf256(i as u8))).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub helper: usize,
    pub point: usize,
    pub symbol: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepairReport {
    pub failed: usize,
    pub transfers: Vec<Transfer>,
    /// Every transferred symbol is a verbatim copy of the helper's stored symbol.
    pub uncoded: bool,
}

impl RepairReport {
    pub fn symbols_transferred(&self) -> usize {
        self.transfers.len()
    }

    pub fn helpers(&self) -> Vec<usize> {
        let mut h: Vec<usize> = self.transfers.iter().map(|t| t.helper).collect();
        h.sort_unstable();
        h.dedup();
        h
    }
}

/// Node contents for one stored file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DressSystem {
    code: FrCode,
    file_size: usize,
    // None while a node is down
    nodes: Vec<Option<Vec<(usize, Gf256)>>>,
}

/// Places `symbols[p]` on every node whose block contains `p`.
pub fn distribute(code: &FrCode, symbols: &[Gf256], file_size: usize) -> Result<DressSystem> {
    if symbols.len() != code.theta() {
        return Err(Error::Mds(format!(
            "{} symbols for a code with theta = {}",
            symbols.len(),
            code.theta()
        )));
    }
    check_lengths(file_size, code.theta())?;
    let nodes = code
        .blocks()
        .iter()
        .map(|b| Some(b.iter().map(|&p| (p, symbols[p])).collect()))
        .collect();
    Ok(DressSystem {
        code: code.clone(),
        file_size,
        nodes,
    })
}

impl DressSystem {
    /// Encodes `file` with the outer code and distributes it.
    pub fn store(code: &FrCode, file: &[Gf256]) -> Result<Self> {
        let symbols = mds_encode(file, code.theta())?;
        distribute(code, &symbols, file.len())
    }

    pub fn code(&self) -> &FrCode {
        &self.code
    }

    pub fn file_size(&self) -> usize {
        self.file_size
    }

    /// Contents of node `i`, or `None` while it is down.
    pub fn node(&self, i: usize) -> Option<&[(usize, Gf256)]> {
        self.nodes.get(i).and_then(|n| n.as_deref())
    }

    fn check_node(&self, i: usize) -> Result<()> {
        if i >= self.nodes.len() {
            return Err(Error::OutOfRange {
                what: "node",
                value: i,
                lo: 0,
                hi: self.nodes.len() - 1,
            });
        }
        Ok(())
    }

    /// The smallest `k` such that any `k` nodes carry the file.
    pub fn reconstruction_degree(&self) -> Result<usize> {
        let h = full_hierarchy(&self.code)?;
        Ok((1..=self.code.n())
            .find(|&k| h.m[k] >= self.file_size)
            .expect("M_n = theta >= file size"))
    }

    /// Erases node `i`.
    pub fn fail(&mut self, i: usize) -> Result<()> {
        self.check_node(i)?;
        self.nodes[i] = None;
        Ok(())
    }

    /// Erases node `failed` and rebuilds it by copying each of its symbols
    /// from the lowest-indexed live node holding the same point.
    pub fn repair(&mut self, failed: usize) -> Result<RepairReport> {
        self.check_node(failed)?;
        self.nodes[failed] = None;
        let mut transfers = Vec::with_capacity(self.code.alpha());
        let mut uncoded = true;
        let mut content = Vec::with_capacity(self.code.alpha());
        for &p in self.code.block(failed) {
            let (helper, symbol) = self
                .code
                .holders(p)
                .iter()
                .find_map(|&h| {
                    let node = self.nodes[h].as_ref()?;
                    let &(_, s) = node.iter().find(|&&(q, _)| q == p)?;
                    Some((h, s))
                })
                .ok_or(Error::Unrepairable {
                    node: failed,
                    point: p,
                })?;
            uncoded &= self.nodes[helper]
                .as_ref()
                .is_some_and(|n| n.contains(&(p, symbol)));
            transfers.push(Transfer {
                helper,
                point: p,
                symbol: symbol.0,
            });
            content.push((p, symbol));
        }
        self.nodes[failed] = Some(content);
        Ok(RepairReport {
            failed,
            transfers,
            uncoded,
        })
    }

    /// Distinct points held by the given live nodes, ascending.
    pub fn distinct_points(&self, nodes: &[usize]) -> Result<Vec<(usize, Gf256)>> {
        let mut have: Vec<Option<Gf256>> = vec![None; self.code.theta()];
        for &i in nodes {
            self.check_node(i)?;
            for &(p, s) in self.nodes[i].iter().flatten() {
                have[p] = Some(s);
            }
        }
        Ok(have
            .into_iter()
            .enumerate()
            .filter_map(|(p, s)| s.map(|s| (p, s)))
            .collect())
    }

    /// Decodes the file from `nodes`. Succeeds whenever the chosen live
    /// nodes hold at least `M` distinct symbols, whatever their number.
    pub fn reconstruct(&self, nodes: &[usize]) -> Result<Vec<Gf256>> {
        let shares = self.distinct_points(nodes)?;
        if shares.len() < self.file_size {
            return Err(Error::InsufficientSymbols {
                need: self.file_size,
                have: shares.len(),
                deficit: self.file_size - shares.len(),
            });
        }
        mds_decode(&shares, self.file_size, self.code.theta())
    }
}
