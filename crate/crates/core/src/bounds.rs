//! Upper bounds on the supported file size and a lower bound on the
//! reconstruction degree.
//!
//! All binomials are exact big integers and ratios exact rationals; floors
//! and ceilings are applied once, at the end.

use num::integer::Integer;
use num::{BigInt, BigRational, BigUint, One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hierarchy::Hierarchy;
use crate::incidence::Params;

/// `C(a, b)`, zero when `b > a`.
pub fn binomial(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::OutOfRange {
            what: "k",
            value: k,
            lo: 1,
            hi: n,
        });
    }
    Ok(())
}

/// `g(1..=n)`: `g(1) = alpha`,
/// `g(k+1) = g(k) + alpha - ceil((rho*g(k) - k*alpha) / (n - k))`.
///
/// The ceiling rounds toward +infinity, also for negative numerators.
pub fn recursive_g_sequence(p: Params) -> Vec<i64> {
    let (n, alpha, rho) = (p.n as i64, p.alpha as i64, p.rho as i64);
    let mut g = Vec::with_capacity(p.n);
    g.push(alpha);
    for k in 1..n {
        let prev = g[g.len() - 1];
        g.push(prev + alpha - Integer::div_ceil(&(rho * prev - k * alpha), &(n - k)));
    }
    g
}

pub fn recursive_bound(p: Params, k: usize) -> Result<i64> {
    check_k(k, p.n)?;
    Ok(recursive_g_sequence(p)[k - 1])
}

/// `g'(1..=theta)`: `g'(1) = rho`,
/// `g'(l+1) = g'(l) + rho - ceil((alpha*g'(l) - l*rho) / (theta - l))`.
pub fn dual_g_sequence(p: Params) -> Vec<i64> {
    let (theta, alpha, rho) = (p.theta as i64, p.alpha as i64, p.rho as i64);
    let mut gp = Vec::with_capacity(p.theta);
    gp.push(rho);
    for l in 1..theta {
        let prev = gp[gp.len() - 1];
        gp.push(prev + rho - Integer::div_ceil(&(alpha * prev - l * rho), &(theta - l)));
    }
    gp
}

fn dual_bound_from(gp: &[i64], n: usize, k: usize) -> usize {
    gp.iter().filter(|&&g| k as i64 > n as i64 - g).count()
}

/// The dual bound `sum_{l=1..theta} [k > n - g'(l)]`.
pub fn dual_bound(p: Params, k: usize) -> Result<usize> {
    check_k(k, p.n)?;
    Ok(dual_bound_from(&dual_g_sequence(p), p.n, k))
}

/// `floor(theta * (1 - C(n-rho, k) / C(n, k)))`.
pub fn floor_bound(n: usize, theta: usize, rho: usize, k: usize) -> Result<usize> {
    check_k(k, n)?;
    if rho == 0 || rho > n || theta == 0 {
        return Err(Error::OutOfRange {
            what: "rho",
            value: rho,
            lo: 1,
            hi: n,
        });
    }
    let missed = BigRational::new(
        BigInt::from(binomial((n - rho) as u64, k as u64)),
        BigInt::from(binomial(n as u64, k as u64)),
    );
    let v = (BigRational::one() - missed) * BigInt::from(theta);
    Ok(v.floor().to_integer().to_usize().expect("bounded by theta"))
}

/// The smallest reconstruction degree able to carry a file of `file_size`
/// packets: `ceil(n * C(M-1, alpha) / C(theta, alpha)) + 1`.
pub fn min_reconstruction_degree(
    n: usize,
    alpha: usize,
    theta: usize,
    file_size: usize,
) -> Result<usize> {
    if file_size == 0 || file_size > theta {
        return Err(Error::OutOfRange {
            what: "M",
            value: file_size,
            lo: 1,
            hi: theta,
        });
    }
    if alpha == 0 || alpha > theta {
        return Err(Error::OutOfRange {
            what: "alpha",
            value: alpha,
            lo: 1,
            hi: theta,
        });
    }
    let r = BigRational::new(
        BigInt::from(binomial((file_size - 1) as u64, alpha as u64) * BigUint::from(n)),
        BigInt::from(binomial(theta as u64, alpha as u64)),
    );
    Ok(r.ceil().to_integer().to_usize().expect("bounded by n") + 1)
}

/// Storage capacity `(k*d - C(k,2)) * beta` of a minimum-bandwidth
/// regenerating code.
pub fn mbr_capacity(k: u64, d: u64, beta: u64) -> Result<u64> {
    if k > d {
        return Err(Error::OutOfRange {
            what: "k",
            value: k as usize,
            lo: 0,
            hi: d as usize,
        });
    }
    Ok((k * d - k * k.saturating_sub(1) / 2) * beta)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub k: usize,
    pub recursive: i64,
    pub dual: usize,
    pub floor: usize,
    pub tightest: usize,
}

/// Every bound for every `k = 1..=n` at one parameter tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundProfile {
    pub params: Params,
    pub g: Vec<i64>,
    pub g_prime: Vec<i64>,
    pub rows: Vec<BoundRow>,
}

impl BoundProfile {
    pub fn new(p: Params) -> Result<Self> {
        let g = recursive_g_sequence(p);
        let g_prime = dual_g_sequence(p);
        let rows = (1..=p.n)
            .map(|k| {
                let recursive = g[k - 1];
                let dual = dual_bound_from(&g_prime, p.n, k);
                let floor = floor_bound(p.n, p.theta, p.rho, k)?;
                let tightest = (recursive.max(0) as usize).min(dual).min(floor);
                Ok(BoundRow {
                    k,
                    recursive,
                    dual,
                    floor,
                    tightest,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            params: p,
            g,
            g_prime,
            rows,
        })
    }

    pub fn row(&self, k: usize) -> &BoundRow {
        &self.rows[k - 1]
    }

    /// Which bounds a code with hierarchy `h` meets with equality.
    pub fn tightness(&self, h: &Hierarchy) -> Vec<Tightness> {
        self.rows
            .iter()
            .map(|r| {
                let m = h.m[r.k];
                Tightness {
                    k: r.k,
                    m,
                    recursive: r.recursive == m as i64,
                    dual: r.dual == m,
                    floor: r.floor == m,
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tightness {
    pub k: usize,
    pub m: usize,
    pub recursive: bool,
    pub dual: bool,
    pub floor: bool,
}

impl Tightness {
    pub fn optimal(&self) -> bool {
        self.recursive || self.dual || self.floor
    }
}
