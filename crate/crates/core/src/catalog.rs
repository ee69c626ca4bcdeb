//! Named constructions.
//!
//! Graph codes index edges lexicographically over vertex pairs `(a, b)`,
//! `a < b`, so their matrices are stable across releases.

use crate::designs::{verify_t_design, TDesign};
use crate::error::{Error, Result};
use crate::incidence::{FrCode, IncidenceStructure};
use crate::products;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub code: FrCode,
    pub provenance: &'static str,
}

/// The `(g, 1, g, 1)` code with the identity incidence matrix.
pub fn trivial_code(g: usize) -> Result<FrCode> {
    products::trivial(g)
}

/// The `(n, 1, 1, n)` code: every node stores the single packet.
pub fn repetition_code(n: usize) -> Result<FrCode> {
    FrCode::from_blocks(1, vec![vec![0]; n])
}

/// Nodes are graph vertices, packets are edges, each node stores its
/// incident edges. Edges are numbered in the order given.
fn graph_code(vertices: usize, edges: &[(usize, usize)]) -> Result<FrCode> {
    FrCode::from_blocks(
        edges.len(),
        (0..vertices).map(|v| {
            edges
                .iter()
                .enumerate()
                .filter(|&(_, &(a, b))| a == v || b == v)
                .map(|(i, _)| i)
                .collect::<Vec<_>>()
        }),
    )
}

/// The code of the complete graph `K_m`: an `(m, m-1, m(m-1)/2, 2)` code.
pub fn complete_graph_code(m: usize) -> Result<FrCode> {
    if m < 3 {
        return Err(Error::OutOfRange {
            what: "m",
            value: m,
            lo: 3,
            hi: usize::MAX,
        });
    }
    let edges: Vec<(usize, usize)> = (0..m)
        .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
        .collect();
    graph_code(m, &edges)
}

/// The octahedron `K_{2,2,2}` (parts `{0,1}`, `{2,3}`, `{4,5}`) as a
/// `(6, 4, 12, 2)` code.
pub fn octahedron_code() -> FrCode {
    let edges: Vec<(usize, usize)> = (0..6)
        .flat_map(|a| (a + 1..6).map(move |b| (a, b)))
        .filter(|&(a, b)| a / 2 != b / 2)
        .collect();
    graph_code(6, &edges).expect("octahedron is 4-regular")
}

/// The 2-(7,4,2) design: complements of the Fano lines.
pub fn design_2_7_4_2() -> TDesign {
    let s = IncidenceStructure::from_blocks(
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
    .expect("valid blocks");
    verify_t_design(&s, 2).expect("2-(7,4,2) design")
}

/// The Fano plane, the 2-(7,3,1) design.
pub fn fano_plane() -> TDesign {
    let s = IncidenceStructure::from_blocks(
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
    .expect("valid blocks");
    verify_t_design(&s, 2).expect("Fano plane")
}

/// A `(9, 2, 6, 3)` code meeting the dual bound at `k = 4`.
pub fn example3_code() -> FrCode {
    let rows: [[u8; 6]; 9] = [
        [1, 1, 0, 0, 0, 0],
        [1, 0, 1, 0, 0, 0],
        [1, 0, 0, 1, 0, 0],
        [0, 1, 0, 0, 1, 0],
        [0, 1, 0, 0, 0, 1],
        [0, 0, 1, 1, 0, 0],
        [0, 0, 1, 0, 1, 0],
        [0, 0, 0, 1, 0, 1],
        [0, 0, 0, 0, 1, 1],
    ];
    FrCode::from_matrix(&rows).expect("tactical configuration")
}

/// Names accepted by [`lookup`] without parameters.
pub const FIXED_NAMES: &[&str] = &[
    "trivial-5",
    "repetition-3",
    "complete-graph-4",
    "complete-graph-5",
    "octahedron",
    "design-2-7-4-2",
    "fano",
    "example3",
    "grid-3",
    "gfr-5-3-1",
];

fn entry(name: &str, code: FrCode, provenance: &'static str) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        code,
        provenance,
    }
}

fn parse_suffix(name: &str, prefix: &str) -> Option<Vec<usize>> {
    let rest = name.strip_prefix(prefix)?;
    rest.split('-').map(|s| s.parse().ok()).collect()
}

/// Resolves a catalog name. Parametric families: `trivial-<g>`,
/// `repetition-<n>`, `complete-graph-<m>`, `grid-<g>` (the trivial code
/// tensored with itself) and `gfr-<g>-<a1>-<a2>...`.
pub fn lookup(name: &str) -> Result<CatalogEntry> {
    let unknown = || Error::UnknownCatalogEntry(name.to_string());
    let one = |v: Option<Vec<usize>>| match v.as_deref() {
        Some(&[x]) => Some(x),
        _ => None,
    };
    match name {
        "octahedron" => {
            return Ok(entry(
                name,
                octahedron_code(),
                "octahedron K_{2,2,2}; stands in for a (6,4,12,2) code whose explicit layout is not available",
            ))
        }
        "design-2-7-4-2" => {
            return Ok(entry(name, design_2_7_4_2().to_fr(), "2-(7,4,2) design"))
        }
        "fano" => return Ok(entry(name, fano_plane().to_fr(), "Fano plane 2-(7,3,1)")),
        "example3" => {
            return Ok(entry(
                name,
                example3_code(),
                "(9,2,6,3) code from an FR code enumeration database",
            ))
        }
        _ => {}
    }
    if let Some(g) = one(parse_suffix(name, "trivial-")) {
        return Ok(entry(name, trivial_code(g)?, "trivial (g,1,g,1) code"));
    }
    if let Some(n) = one(parse_suffix(name, "repetition-")) {
        return Ok(entry(name, repetition_code(n)?, "repetition (n,1,1,n) code"));
    }
    if let Some(m) = one(parse_suffix(name, "complete-graph-")) {
        return Ok(entry(name, complete_graph_code(m)?, "complete graph K_m"));
    }
    if let Some(g) = one(parse_suffix(name, "grid-")) {
        let t = trivial_code(g)?;
        return Ok(entry(name, products::tensor(&t, &t)?, "g x g grid code"));
    }
    if let Some(v) = parse_suffix(name, "gfr-") {
        let (g, alphas) = v.split_first().ok_or_else(unknown)?;
        return Ok(entry(name, products::gfr(*g, alphas)?, "GFR code"));
    }
    Err(unknown())
}

pub fn lookup_design(name: &str) -> Result<TDesign> {
    match name {
        "design-2-7-4-2" => Ok(design_2_7_4_2()),
        "fano" => Ok(fano_plane()),
        _ => Err(Error::UnknownCatalogEntry(name.to_string())),
    }
}

/// Every fixed-name entry.
pub fn entries() -> Vec<CatalogEntry> {
    FIXED_NAMES
        .iter()
        .map(|n| lookup(n).expect("fixed names resolve"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::{full_hierarchy, supported_file_size};
    use crate::incidence::Params;

    fn params(c: &FrCode) -> (usize, usize, usize, usize) {
        let p = c.params();
        (p.n, p.alpha, p.theta, p.rho)
    }

    #[test]
    fn trivial_and_repetition() {
        let t = trivial_code(5).unwrap();
        assert_eq!(params(&t), (5, 1, 5, 1));
        assert_eq!(full_hierarchy(&t).unwrap().m_tail(), &[1, 2, 3, 4, 5]);
        assert_eq!(t.dual(), t);
        assert_eq!(params(&trivial_code(1).unwrap()), (1, 1, 1, 1));

        let r = repetition_code(3).unwrap();
        assert_eq!(params(&r), (3, 1, 1, 3));
        assert_eq!(full_hierarchy(&r).unwrap().m_tail(), &[1, 1, 1]);
        assert_eq!(r.dual().params(), Params::new(1, 3, 3, 1).unwrap());
    }

    #[test]
    fn complete_graph_matrix() {
        let expected: Vec<Vec<u8>> = [
            "1111000000",
            "1000111000",
            "0100100110",
            "0010010101",
            "0001001011",
        ]
        .iter()
        .map(|r| r.bytes().map(|b| b - b'0').collect())
        .collect();
        let c = complete_graph_code(5).unwrap();
        assert_eq!(c.to_matrix(), expected);
        assert_eq!(
            c.blocks(),
            &[
                vec![0, 1, 2, 3],
                vec![0, 4, 5, 6],
                vec![1, 4, 7, 8],
                vec![2, 5, 7, 9],
                vec![3, 6, 8, 9]
            ]
        );
        let k4 = complete_graph_code(4).unwrap();
        assert_eq!(params(&k4), (4, 3, 6, 2));
        assert_eq!(supported_file_size(&k4, 2).unwrap(), 5);
        assert!(complete_graph_code(2).is_err());
    }

    #[test]
    fn octahedron() {
        let c = octahedron_code();
        assert_eq!(params(&c), (6, 4, 12, 2));
        assert_eq!(supported_file_size(&c, 3).unwrap(), 9);
    }

    #[test]
    fn example3() {
        let c = example3_code();
        assert_eq!(params(&c), (9, 2, 6, 3));
        let w = crate::hierarchy::min_union_witness(&c, 4).unwrap();
        assert_eq!(w.size, 4);
        // rows 1, 2, 3 and 6 in 1-based numbering
        assert_eq!(w.blocks, vec![0, 1, 2, 5]);
    }

    #[test]
    fn lookups() {
        for e in entries() {
            assert!(!e.provenance.is_empty());
        }
        assert_eq!(params(&lookup("grid-3").unwrap().code), (6, 3, 9, 2));
        assert_eq!(params(&lookup("gfr-5-3-1").unwrap().code), (25, 4, 20, 5));
        assert_eq!(params(&lookup("repetition-7").unwrap().code), (7, 1, 1, 7));
        assert!(lookup("nope").is_err());
        assert!(lookup("trivial-x").is_err());
        assert!(lookup("gfr-").is_err());
        assert_eq!(lookup_design("fano").unwrap().b(), 7);
    }
}
