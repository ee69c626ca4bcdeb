//! Fractional repetition (FR) codes for distributed storage.
//!
//! An FR code places `theta` coded packets on `n` storage nodes so that
//! every node stores `alpha` packets and every packet is replicated on
//! `rho` nodes. A failed node is rebuilt by copying its packets from
//! surviving replicas, and a data collector reading any `k` nodes obtains
//! at least `M_k` distinct packets, enough to decode a file of that size
//! through an outer MDS code.
//!
//! Modules:
//! - [`incidence`]: incidence structures, FR codes, transposes.
//! - [`hierarchy`]: exact `M_k` / `N_k` hierarchies and the duality transfer.
//! - [`bounds`]: upper bounds on `M_k` and the lower bound on `k`.
//! - [`designs`]: t-design verification and design-based codes.
//! - [`products`]: tensor products, block repetition and GFR codes.
//! - [`catalog`]: named constructions.
//! - [`dress`]: outer MDS encoding over GF(256), repair and reconstruction.
//! - [`cli`]: the `frc` command-line front end.

pub mod bounds;
pub mod catalog;
pub mod cli;
pub mod designs;
pub mod dress;
pub mod error;
pub mod format;
pub mod gf256;
pub mod hierarchy;
pub mod incidence;
pub mod products;

pub use error::{Error, Result};
pub use hierarchy::{full_hierarchy, Hierarchy, ParetoPoint, SearchLimit};
pub use incidence::{FrCode, IncidenceStructure, Params};
