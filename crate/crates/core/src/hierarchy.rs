//! Supported file size hierarchies.
//!
//! `M_k` is the fewest distinct points covered by any `k` blocks and
//! `N_k = theta - M_k` the most points missed by some `k` blocks, i.e. the
//! widest all-zero `k x l` submatrix. The two chains of a code and of its
//! transpose determine each other:
//!
//! ```text
//! M_k(C) = #{ i in 1..=theta : k > N_i(C^t) }
//! ```
//!
//! so only one orientation ever has to be enumerated.

use std::env;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::incidence::FrCode;

/// Environment variable overriding [`SearchLimit::default`].
pub const MAX_ENUM_VAR: &str = "FRC_MAX_ENUM";

/// Upper bound on the number of partial selections a subset search may
/// visit before giving up with [`Error::EnumerationCap`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimit {
    pub max_states: u64,
}

impl Default for SearchLimit {
    fn default() -> Self {
        Self {
            max_states: 100_000_000,
        }
    }
}

impl SearchLimit {
    pub fn new(max_states: u64) -> Self {
        Self { max_states }
    }

    /// Reads `FRC_MAX_ENUM`, falling back to the default when unset.
    pub fn from_env() -> Result<Self> {
        match env::var(MAX_ENUM_VAR) {
            Ok(v) => v
                .trim()
                .parse::<u64>()
                .map(Self::new)
                .map_err(|e| Error::Parse(format!("{MAX_ENUM_VAR}={v:?}: {e}"))),
            Err(env::VarError::NotPresent) => Ok(Self::default()),
            Err(e) => Err(Error::Parse(format!("{MAX_ENUM_VAR}: {e}"))),
        }
    }
}

/// A `k`-subset of blocks attaining `M_k`. `blocks` is the
/// lexicographically smallest minimizing subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minimizer {
    pub size: usize,
    pub blocks: Vec<usize>,
}

/// Block rows packed into 64-bit words.
struct BitRows {
    words: usize,
    bits: Vec<u64>,
    n: usize,
}

impl BitRows {
    fn new(code: &FrCode) -> Self {
        let words = code.theta().div_ceil(64);
        let mut bits = vec![0u64; words * code.n()];
        for (b, block) in code.blocks().iter().enumerate() {
            for &p in block {
                bits[b * words + p / 64] |= 1 << (p % 64);
            }
        }
        Self {
            words,
            bits,
            n: code.n(),
        }
    }

    fn row(&self, b: usize) -> &[u64] {
        &self.bits[b * self.words..(b + 1) * self.words]
    }
}

fn count_new(row: &[u64], union: &[u64]) -> usize {
    row.iter()
        .zip(union)
        .map(|(r, u)| (r & !u).count_ones() as usize)
        .sum()
}

struct Search<'a> {
    rows: &'a BitRows,
    k: usize,
    floor: usize,
    limit: u64,
    states: u64,
    // unions[d] is the union after d picks
    unions: Vec<u64>,
    chosen: Vec<usize>,
    best: usize,
    witness: Option<Vec<usize>>,
    done: bool,
}

impl Search<'_> {
    fn union(&self, depth: usize) -> &[u64] {
        let w = self.rows.words;
        &self.unions[depth * w..(depth + 1) * w]
    }

    fn dfs(&mut self, depth: usize, start: usize, size: usize) -> Result<()> {
        self.states += 1;
        if self.states > self.limit {
            return Err(Error::EnumerationCap { cap: self.limit });
        }
        if depth == self.k {
            if size < self.best {
                self.best = size;
                self.witness = Some(self.chosen.clone());
                self.done = size <= self.floor;
            }
            return Ok(());
        }
        let remaining = self.k - depth;
        let last = self.rows.n - remaining;
        // The next pick is one of start..=last, and the final union
        // contains the union so far plus that block.
        let gains: Vec<usize> = (start..=last)
            .map(|c| count_new(self.rows.row(c), self.union(depth)))
            .collect();
        let min_gain = gains.iter().copied().min().unwrap_or(0);
        if size + min_gain >= self.best {
            return Ok(());
        }
        let w = self.rows.words;
        for (c, gain) in (start..=last).zip(gains) {
            if size + gain >= self.best {
                continue;
            }
            let (lo, hi) = self.unions.split_at_mut((depth + 1) * w);
            let cur = &lo[depth * w..];
            for ((dst, &u), &r) in hi[..w].iter_mut().zip(cur).zip(self.rows.row(c)) {
                *dst = u | r;
            }
            self.chosen.push(c);
            self.dfs(depth + 1, c + 1, size + gain, )?;
            self.chosen.pop();
            if self.done {
                break;
            }
        }
        Ok(())
    }
}

/// Branch-and-bound search for the minimum union of `k` blocks.
///
/// `floor` is a known lower bound on the answer (search stops once it is
/// met) and `seed` a known `k`-subset whose union bounds the answer from
/// above.
fn min_union(
    rows: &BitRows,
    k: usize,
    floor: usize,
    seed: (usize, Vec<usize>),
    limit: SearchLimit,
) -> Result<Minimizer> {
    let w = rows.words;
    let mut search = Search {
        rows,
        k,
        floor,
        limit: limit.max_states,
        states: 0,
        unions: vec![0u64; (k + 1) * w],
        chosen: Vec::with_capacity(k),
        // one above the seed so an equal-size, lexicographically earlier
        // subset still replaces it
        best: seed.0 + 1,
        witness: None,
        done: false,
    };
    search.dfs(0, 0, 0)?;
    let blocks = search
        .witness
        .expect("the seed subset is always reachable by the search");
    Ok(Minimizer {
        size: search.best,
        blocks,
    })
}

/// Greedy extension of a `(k-1)`-subset by the block adding fewest points.
fn extend_greedy(rows: &BitRows, prev: &[usize]) -> (usize, Vec<usize>) {
    let mut union = vec![0u64; rows.words];
    for &b in prev {
        for (u, r) in union.iter_mut().zip(rows.row(b)) {
            *u |= r;
        }
    }
    let base: usize = union.iter().map(|u| u.count_ones() as usize).sum();
    let (gain, pick) = (0..rows.n)
        .filter(|b| !prev.contains(b))
        .map(|b| (count_new(rows.row(b), &union), b))
        .min()
        .expect("k <= n leaves an unused block");
    let mut blocks = prev.to_vec();
    blocks.push(pick);
    blocks.sort_unstable();
    (base + gain, blocks)
}

fn check_k(code: &FrCode, k: usize) -> Result<()> {
    if k == 0 || k > code.n() {
        return Err(Error::OutOfRange {
            what: "k",
            value: k,
            lo: 1,
            hi: code.n(),
        });
    }
    Ok(())
}

/// `M_k` together with the lexicographically smallest minimizing subset.
pub fn min_union_witness_with(code: &FrCode, k: usize, limit: SearchLimit) -> Result<Minimizer> {
    check_k(code, k)?;
    let rows = BitRows::new(code);
    let mut seed = (code.alpha(), vec![0]);
    for _ in 1..k {
        seed = extend_greedy(&rows, &seed.1);
    }
    min_union(&rows, k, code.alpha(), seed, limit)
}

pub fn min_union_witness(code: &FrCode, k: usize) -> Result<Minimizer> {
    min_union_witness_with(code, k, SearchLimit::default())
}

/// `M_k(C)`, the number of distinct points guaranteed from any `k` blocks.
pub fn supported_file_size(code: &FrCode, k: usize) -> Result<usize> {
    Ok(min_union_witness(code, k)?.size)
}

/// `N_k(C) = theta - M_k(C)` for `1 <= k <= n`, and `N_0 = theta`.
pub fn complementary_size(code: &FrCode, k: usize) -> Result<usize> {
    if k == 0 {
        return Ok(code.theta());
    }
    Ok(code.theta() - supported_file_size(code, k)?)
}

/// Both chains of a code: `m[k] = M_k` and `n_values[k] = N_k` for
/// `k = 0..=n`, with `M_0 = 0` and `N_0 = theta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hierarchy {
    pub n: usize,
    pub theta: usize,
    #[serde(rename = "M")]
    pub m: Vec<usize>,
    #[serde(rename = "N")]
    pub n_values: Vec<usize>,
}

impl Hierarchy {
    /// Builds a hierarchy from `M_1..M_n`.
    pub fn from_m(theta: usize, m_tail: &[usize]) -> Self {
        let mut m = Vec::with_capacity(m_tail.len() + 1);
        m.push(0);
        m.extend_from_slice(m_tail);
        let n_values = m.iter().map(|&x| theta - x).collect();
        Self {
            n: m_tail.len(),
            theta,
            m,
            n_values,
        }
    }

    /// The hierarchy of the transpose code, via the duality relation.
    pub fn transposed(&self) -> Self {
        let m = hierarchy_from_dual(&self.n_values, self.n, self.theta)
            .expect("a computed chain is well formed");
        Self::from_m(self.n, &m)
    }

    /// `M_1..M_n`.
    pub fn m_tail(&self) -> &[usize] {
        &self.m[1..]
    }

    /// `(k, N_k)` for `k = 0..=n`, the stair-case vertices, as CSV.
    pub fn staircase_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["k", "N_k"]).expect("in-memory write");
        for (k, nk) in self.n_values.iter().enumerate() {
            w.write_record([k.to_string(), nk.to_string()])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii csv")
    }

    pub fn is_monotone(&self) -> bool {
        self.m.first() == Some(&0)
            && self.m.last() == Some(&self.theta)
            && self.m.windows(2).all(|w| w[0] <= w[1])
            && self.n_values.windows(2).all(|w| w[0] >= w[1])
            && self.n_values.len() == self.n + 1
    }
}

/// Validates an `N`-chain `N_0..=N_len` with `N_0 = top`, ending at 0.
pub(crate) fn check_chain(chain: &[usize], top: usize) -> Result<()> {
    let bad = |msg: String| Err(Error::MalformedChain(msg));
    if chain.len() < 2 {
        return bad(format!("chain needs at least 2 entries, got {}", chain.len()));
    }
    if chain[0] != top {
        return bad(format!("N_0 = {} but expected {top}", chain[0]));
    }
    if *chain.last().unwrap() != 0 {
        return bad(format!("last entry is {}, expected 0", chain.last().unwrap()));
    }
    if let Some(i) = chain.windows(2).position(|w| w[0] < w[1]) {
        return bad(format!("chain increases at index {}", i + 1));
    }
    Ok(())
}

/// `M_1..M_n` of a code from the `N`-chain `N_0..=N_theta` of its transpose.
pub fn hierarchy_from_dual(dual_n_values: &[usize], theta: usize, n: usize) -> Result<Vec<usize>> {
    if dual_n_values.len() != theta + 1 {
        return Err(Error::MalformedChain(format!(
            "expected {} entries (N_0..N_theta), got {}",
            theta + 1,
            dual_n_values.len()
        )));
    }
    check_chain(dual_n_values, n)?;
    Ok((1..=n)
        .map(|k| dual_n_values[1..].iter().filter(|&&x| k > x).count())
        .collect())
}

/// Enumerates every `M_k` on this orientation of the code.
pub fn direct_hierarchy(code: &FrCode, limit: SearchLimit) -> Result<Hierarchy> {
    let rows = BitRows::new(code);
    let mut m = Vec::with_capacity(code.n());
    let mut prev = Minimizer {
        size: code.alpha(),
        blocks: vec![0],
    };
    m.push(prev.size);
    for k in 2..=code.n() {
        if prev.size == code.theta() {
            m.push(code.theta());
            continue;
        }
        let seed = extend_greedy(&rows, &prev.blocks);
        prev = min_union(&rows, k, prev.size, seed, limit)?;
        m.push(prev.size);
    }
    Ok(Hierarchy::from_m(code.theta(), &m))
}

/// The full hierarchy of `code`. Enumeration runs on whichever of the code
/// and its transpose has fewer blocks; the other side follows by duality.
pub fn full_hierarchy_with(code: &FrCode, limit: SearchLimit) -> Result<Hierarchy> {
    if code.theta() < code.n() {
        Ok(direct_hierarchy(&code.dual(), limit)?.transposed())
    } else {
        direct_hierarchy(code, limit)
    }
}

pub fn full_hierarchy(code: &FrCode) -> Result<Hierarchy> {
    full_hierarchy_with(code, SearchLimit::default())
}

/// A vertex `(k0, l0)` of the stair-case shared by `C` and `C^t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParetoPoint {
    pub k0: usize,
    pub l0: usize,
}

/// Pareto points from the `N`-chains of a code and of its transpose.
pub fn pareto_points_from_chains(code_n: &[usize], dual_n: &[usize]) -> Vec<ParetoPoint> {
    (0..code_n.len())
        .filter_map(|k0| {
            let l0 = code_n[k0];
            let fixed = dual_n.get(l0) == Some(&k0);
            let strict_code = code_n[k0 + 1..].iter().all(|&x| x < l0);
            let strict_dual = dual_n[l0 + 1..].iter().all(|&x| x < k0);
            (fixed && strict_code && strict_dual).then_some(ParetoPoint { k0, l0 })
        })
        .collect()
}

/// All Pareto points of `code`, sorted by `k0`. Both endpoints `(0, theta)`
/// and `(n, 0)` are always included.
pub fn pareto_points(code: &FrCode) -> Result<Vec<ParetoPoint>> {
    let h = full_hierarchy(code)?;
    let t = h.transposed();
    Ok(pareto_points_from_chains(&h.n_values, &t.n_values))
}
