//! Tensor products of FR codes, block repetition and GFR codes.
//!
//! For codes `C1` on points `P1` and `C2` on points `P2` with equal storage
//! ratio `alpha/theta`, `C1 (x) C2` lives on `P1 x P2` (point `(p, q)` has
//! index `p * theta2 + q`) and has blocks `B x P2` for every block `B` of
//! `C1`, followed by `P1 x B'` for every block `B'` of `C2`. Its `N`-chain
//! is the max-product convolution of the factors' chains.

use num::rational::Ratio;

use crate::error::{Error, Result};
use crate::hierarchy::{check_chain, full_hierarchy, hierarchy_from_dual, Hierarchy};
use crate::incidence::{FrCode, Params};

fn check_ratio(c1: &FrCode, c2: &FrCode) -> Result<()> {
    if c1.alpha() * c2.theta() != c2.alpha() * c1.theta() {
        return Err(Error::RatioMismatch {
            alpha1: c1.alpha(),
            theta1: c1.theta(),
            alpha2: c2.alpha(),
            theta2: c2.theta(),
        });
    }
    Ok(())
}

/// The tensor product, a `(n1+n2, alpha1*theta2, theta1*theta2, rho1+rho2)`-FR code.
pub fn tensor(c1: &FrCode, c2: &FrCode) -> Result<FrCode> {
    check_ratio(c1, c2)?;
    let (t1, t2) = (c1.theta(), c2.theta());
    let rows = c1
        .blocks()
        .iter()
        .map(|b| b.iter().flat_map(|&p| (0..t2).map(move |q| p * t2 + q)).collect::<Vec<_>>());
    let cols = c2
        .blocks()
        .iter()
        .map(|b| (0..t1).flat_map(|p| b.iter().map(move |&q| p * t2 + q)).collect::<Vec<_>>());
    let code = FrCode::from_blocks(t1 * t2, rows.chain(cols))?;
    debug_assert_eq!(
        code.params(),
        Params {
            n: c1.n() + c2.n(),
            alpha: c1.alpha() * t2,
            theta: t1 * t2,
            rho: c1.rho() + c2.rho(),
        }
    );
    Ok(code)
}

/// Each block repeated `e` times consecutively: an `(e*n, alpha, theta, e*rho)` code.
pub fn repeat_blocks(code: &FrCode, e: usize) -> Result<FrCode> {
    if e == 0 {
        return Err(Error::OutOfRange {
            what: "e",
            value: 0,
            lo: 1,
            hi: usize::MAX,
        });
    }
    FrCode::from_blocks(
        code.theta(),
        code.blocks()
            .iter()
            .flat_map(|b| std::iter::repeat_n(b.clone(), e)),
    )
}

/// `N`-chain of the `e`-fold repetition of a code with chain `chain`:
/// `N_k(C^e) = N_ceil(k/e)(C)`.
pub fn stretch_chain(chain: &[usize], e: usize) -> Vec<usize> {
    let n = chain.len() - 1;
    (0..=e * n).map(|k| chain[k.div_ceil(e)]).collect()
}

fn check_n_chain(chain: &[usize]) -> Result<()> {
    match chain.first() {
        Some(&top) if top > 0 => check_chain(chain, top),
        _ => Err(Error::MalformedChain("N_0 must be positive".into())),
    }
}

/// `N_k(C1 (x) C2) = max_{x+y=k} N_x(C1) * N_y(C2)` for `k = 0..=n1+n2`.
pub fn tensor_hierarchy(n1_values: &[usize], n2_values: &[usize]) -> Result<Vec<usize>> {
    check_n_chain(n1_values)?;
    check_n_chain(n2_values)?;
    Ok(max_convolve(n1_values, n2_values))
}

fn max_convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize; a.len() + b.len() - 1];
    for (x, &ax) in a.iter().enumerate() {
        for (y, &by) in b.iter().enumerate() {
            out[x + y] = out[x + y].max(ax * by);
        }
    }
    out
}

/// Product `C1^e1 (x) ... (x) Cs^es` of folded factors sharing one storage ratio.
#[derive(Clone, Debug)]
pub struct ProductSpec {
    factors: Vec<(FrCode, usize)>,
    ratio: Ratio<usize>,
}

impl ProductSpec {
    pub fn new(factors: Vec<(FrCode, usize)>) -> Result<Self> {
        let first = factors
            .first()
            .ok_or_else(|| Error::Parse("a product needs at least one factor".into()))?;
        let ratio = Ratio::new(first.0.alpha(), first.0.theta());
        for (code, e) in &factors {
            if *e == 0 {
                return Err(Error::OutOfRange {
                    what: "e",
                    value: 0,
                    lo: 1,
                    hi: usize::MAX,
                });
            }
            check_ratio(&first.0, code)?;
        }
        Ok(Self { factors, ratio })
    }

    pub fn factors(&self) -> &[(FrCode, usize)] {
        &self.factors
    }

    /// The common storage ratio `alpha_i / theta_i`.
    pub fn ratio(&self) -> Ratio<usize> {
        self.ratio
    }

    /// `(sum e_i n_i, c * prod theta_i, prod theta_i, sum e_i rho_i)`.
    pub fn params(&self) -> Result<Params> {
        let theta: usize = self.factors.iter().map(|(c, _)| c.theta()).product();
        let alpha = self.ratio * theta;
        assert!(alpha.is_integer());
        Params::new(
            self.factors.iter().map(|(c, e)| e * c.n()).sum(),
            alpha.to_integer(),
            theta,
            self.factors.iter().map(|(c, e)| e * c.rho()).sum(),
        )
    }

    /// Builds the product code, folding left to right.
    pub fn build(&self) -> Result<FrCode> {
        let mut iter = self.factors.iter();
        let (c, e) = iter.next().expect("non-empty");
        let mut acc = repeat_blocks(c, *e)?;
        for (c, e) in iter {
            acc = tensor(&acc, &repeat_blocks(c, *e)?)?;
        }
        Ok(acc)
    }

    /// The product's `N`-chain from the factors' `N`-chains (one per factor,
    /// unfolded), without touching the product code.
    pub fn n_chain_from(&self, factor_chains: &[Vec<usize>]) -> Result<Vec<usize>> {
        if factor_chains.len() != self.factors.len() {
            return Err(Error::MalformedChain(format!(
                "{} chains for {} factors",
                factor_chains.len(),
                self.factors.len()
            )));
        }
        let mut acc = vec![1usize];
        for ((code, e), chain) in self.factors.iter().zip(factor_chains) {
            if chain.len() != code.n() + 1 {
                return Err(Error::MalformedChain(format!(
                    "chain of length {} for a factor with n = {}",
                    chain.len(),
                    code.n()
                )));
            }
            check_chain(chain, code.theta())?;
            acc = max_convolve(&acc, &stretch_chain(chain, *e));
        }
        Ok(acc)
    }

    /// The product's `N`-chain, computing each factor's hierarchy first.
    pub fn n_chain(&self) -> Result<Vec<usize>> {
        let chains = self
            .factors
            .iter()
            .map(|(c, _)| Ok(full_hierarchy(c)?.n_values))
            .collect::<Result<Vec<_>>>()?;
        self.n_chain_from(&chains)
    }
}

/// The trivial `(g, 1, g, 1)` code: node `i` stores packet `i`.
pub fn trivial(g: usize) -> Result<FrCode> {
    FrCode::from_blocks(g, (0..g).map(|i| vec![i]))
}

fn gfr_spec(g: usize, alphas: &[usize]) -> Result<ProductSpec> {
    if g < 2 {
        return Err(Error::OutOfRange {
            what: "g",
            value: g,
            lo: 2,
            hi: usize::MAX,
        });
    }
    if alphas.is_empty() {
        return Err(Error::Parse("GFR code needs at least one alpha".into()));
    }
    let base = trivial(g)?;
    ProductSpec::new(alphas.iter().map(|&a| (base.clone(), a)).collect())
}

/// The `(g, alpha_1, .., alpha_s)`-GFR code: the transpose of the product of
/// `alpha_i`-fold trivial codes. Parameters
/// `(g^s, sum alpha_i, g * sum alpha_i, g^(s-1))`.
pub fn gfr(g: usize, alphas: &[usize]) -> Result<FrCode> {
    Ok(gfr_spec(g, alphas)?.build()?.dual())
}

/// Hierarchy of the GFR code from the closed-form chains of the trivial
/// code, without enumerating subsets.
pub fn gfr_hierarchy(g: usize, alphas: &[usize]) -> Result<Hierarchy> {
    let spec = gfr_spec(g, alphas)?;
    let trivial_chain: Vec<usize> = (0..=g).rev().collect();
    let chains = vec![trivial_chain; alphas.len()];
    let product_chain = spec.n_chain_from(&chains)?;
    let p = spec.params()?;
    // the GFR code is the product's transpose
    let m = hierarchy_from_dual(&product_chain, p.n, p.theta)?;
    Ok(Hierarchy::from_m(p.n, &m))
}
