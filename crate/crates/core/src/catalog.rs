//! Group builders, the text group format, and the bundled corpus.
//!
//! Group file format (line oriented, `#` starts a comment):
//!
//! ```text
//! degree: 4
//! gen: (1 2)(3 4)
//! gen: (1 3)(2 4)
//! ```

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{direct_product, semidirect_product_from_generators, FiniteGroup, DEFAULT_ORDER_CAP};
use crate::perm::Perm;
use crate::sigma::SigmaPartition;

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub key: String,
    pub group: Arc<FiniteGroup>,
    pub provenance: String,
}

/// σ-specs swept by the default verification campaign.
pub const DEFAULT_SIGMA_SPECS: &[&str] = &["*", "2|*", "3,5|*", "2,3|*", "2|3|*", "2|3|5|*", "2,5|3|*"];

pub fn default_sigma_specs() -> Vec<SigmaPartition> {
    DEFAULT_SIGMA_SPECS
        .iter()
        .map(|s| s.parse().expect("bundled spec parses"))
        .collect()
}

pub fn parse_sigma_spec(text: &str) -> Result<SigmaPartition> {
    text.parse()
}

/// Parses a group file and generates the group, refusing orders above `cap`.
pub fn parse_group_file(text: &str, cap: usize) -> Result<FiniteGroup> {
    let mut degree: Option<usize> = None;
    let mut gens: Vec<Perm> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |message: String| Error::Syntax {
            line: line_no,
            message,
        };
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| syntax(format!("expected `key: value`, found {line:?}")))?;
        match key.trim() {
            "degree" => {
                if degree.is_some() {
                    return Err(syntax("duplicate degree header".into()));
                }
                let d: usize = value
                    .trim()
                    .parse()
                    .map_err(|_| syntax(format!("bad degree {:?}", value.trim())))?;
                if d == 0 {
                    return Err(syntax("degree must be positive".into()));
                }
                degree = Some(d);
            }
            "gen" => {
                let d = degree.ok_or_else(|| syntax("`gen` before `degree` header".into()))?;
                let p = Perm::parse_cycles(value, d).map_err(|e| match e {
                    Error::MalformedPermutation(m) if m.contains("outside") => {
                        syntax(format!("degree mismatch: {m}"))
                    }
                    other => syntax(other.to_string()),
                })?;
                gens.push(p);
            }
            other => return Err(syntax(format!("unknown key {other:?}"))),
        }
    }
    let degree = degree.ok_or(Error::Syntax {
        line: last_line.max(1),
        message: "missing `degree` header".into(),
    })?;
    FiniteGroup::from_permutations(degree, &gens, cap)
}

fn perm_group(degree: usize, cycles: &[String]) -> Result<FiniteGroup> {
    let gens = cycles
        .iter()
        .map(|c| Perm::parse_cycles(c, degree))
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::from_permutations(degree, &gens, DEFAULT_ORDER_CAP)
}

fn cycle_text(points: impl IntoIterator<Item = usize>) -> String {
    let pts: Vec<String> = points.into_iter().map(|p| p.to_string()).collect();
    format!("({})", pts.join(" "))
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::UnknownBuilder("cyclic(0)".into()));
    }
    if n == 1 {
        return perm_group(1, &[]);
    }
    perm_group(n, &[cycle_text(1..=n)])
}

/// Dihedral group of order `order` (even), the symmetries of a regular
/// `order/2`-gon. Orders 2 and 4 give `C₂` and `C₂ × C₂`.
pub fn dihedral(order: usize) -> Result<FiniteGroup> {
    if order < 2 || order % 2 != 0 {
        return Err(Error::UnknownBuilder(format!("dihedral({order})")));
    }
    let n = order / 2;
    if n <= 2 {
        // rotation on 1..n and a disjoint reflection
        let mut gens = vec![cycle_text([n + 1, n + 2])];
        if n == 2 {
            gens.insert(0, cycle_text([1, 2]));
        }
        return perm_group(n + 2, &gens);
    }
    let reflection: String = (1..=n / 2)
        .map(|i| cycle_text([i, n + 1 - i]))
        .collect();
    perm_group(n, &[cycle_text(1..=n), reflection])
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    match n {
        0 => Err(Error::UnknownBuilder("symmetric(0)".into())),
        1 => perm_group(1, &[]),
        2 => perm_group(2, &["(1 2)".into()]),
        _ => perm_group(n, &[cycle_text(1..=n), "(1 2)".into()]),
    }
}

pub fn alternating(n: usize) -> Result<FiniteGroup> {
    match n {
        0 => Err(Error::UnknownBuilder("alternating(0)".into())),
        1 | 2 => perm_group(n, &[]),
        _ => perm_group(n, &(3..=n).map(|k| cycle_text([1, 2, k])).collect::<Vec<_>>()),
    }
}

pub fn quaternion8() -> FiniteGroup {
    perm_group(8, &["(1 2 3 4)(5 6 7 8)".into(), "(1 5 3 7)(2 8 4 6)".into()])
        .expect("Q8 generators")
}

/// `C₃ ⋊ C₂` with the involution acting by inversion.
pub fn s3_as_semidirect() -> Result<FiniteGroup> {
    let c3 = cyclic(3)?;
    let c2 = cyclic(2)?;
    let inversion: Vec<usize> = c3.elements().map(|x| c3.inv(x)).collect();
    semidirect_product_from_generators(&c3, &c2, &[inversion], DEFAULT_ORDER_CAP)
}

/// `C₅ × (C₃ ⋊ C₂)`, order 30.
pub fn paper_example() -> Result<FiniteGroup> {
    direct_product(&cyclic(5)?, &s3_as_semidirect()?, DEFAULT_ORDER_CAP)
}

/// `C₅ ⋊ C₄` with a faithful action, order 20.
pub fn frobenius20() -> Result<FiniteGroup> {
    let c5 = cyclic(5)?;
    let c4 = cyclic(4)?;
    let square: Vec<usize> = c5.elements().map(|x| c5.pow(x, 2)).collect();
    semidirect_product_from_generators(&c5, &c4, &[square], DEFAULT_ORDER_CAP)
}

/// `Q₈ ⋊ C₃` with `C₃` cycling `i → j → k`, order 24.
pub fn q8_by_c3() -> Result<FiniteGroup> {
    let q8 = quaternion8();
    let (i, j) = (q8.generators()[0], q8.generators()[1]);
    let rotate = q8.homomorphism_from_generators(&q8, &[j, q8.mul(i, j)])?;
    semidirect_product_from_generators(&q8, &cyclic(3)?, &[rotate], DEFAULT_ORDER_CAP)
}

/// Resolves a builder name: a corpus key (`S4`, `C12`, `C5xS3`, ...),
/// `paper_example`, or a call form such as `cyclic(12)` or `dihedral(8)`.
pub fn build(name: &str) -> Result<FiniteGroup> {
    let name = name.trim();
    if let Some((func, arg)) = name.strip_suffix(')').and_then(|s| s.split_once('(')) {
        let n: usize = arg
            .trim()
            .parse()
            .map_err(|_| Error::UnknownBuilder(name.into()))?;
        return match func.trim() {
            "cyclic" => cyclic(n),
            "dihedral" => dihedral(n),
            "symmetric" => symmetric(n),
            "alternating" => alternating(n),
            _ => Err(Error::UnknownBuilder(name.into())),
        };
    }
    match name {
        "paper_example" | "C5xS3" => paper_example(),
        "quaternion8" | "Q8" => Ok(quaternion8()),
        "S3" => symmetric(3),
        "S4" => symmetric(4),
        "S5" => symmetric(5),
        "A4" => alternating(4),
        "A5" => alternating(5),
        "D8xC3" => direct_product(&dihedral(8)?, &cyclic(3)?, DEFAULT_ORDER_CAP),
        "C5:C4" => frobenius20(),
        "A4xC5" => direct_product(&alternating(4)?, &cyclic(5)?, DEFAULT_ORDER_CAP),
        "Q8:C3" => q8_by_c3(),
        _ => {
            let numeric = |prefix: &str| {
                name.strip_prefix(prefix)
                    .and_then(|rest| rest.parse::<usize>().ok())
            };
            if let Some(n) = numeric("C") {
                cyclic(n)
            } else if let Some(n) = numeric("D") {
                dihedral(n)
            } else {
                Err(Error::UnknownBuilder(name.into()))
            }
        }
    }
}

/// Keys of the bundled corpus, in canonical order.
pub fn corpus_keys() -> Vec<String> {
    let mut keys: Vec<String> = (1..=24).map(|n| format!("C{n}")).collect();
    keys.extend((4..=24).step_by(2).map(|n| format!("D{n}")));
    keys.extend(
        ["S3", "S4", "A4", "A5", "Q8", "C5xS3", "D8xC3", "C5:C4", "A4xC5", "Q8:C3"]
            .iter()
            .map(|s| s.to_string()),
    );
    keys
}

pub fn entry(key: &str) -> Result<CatalogEntry> {
    let group = build(key)?;
    Ok(CatalogEntry {
        key: key.to_string(),
        group: Arc::new(group),
        provenance: format!("builder:{key}"),
    })
}

pub fn bundled_corpus() -> Result<Vec<CatalogEntry>> {
    corpus_keys().iter().map(|k| entry(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;
    use crate::residuals::is_hall_subgroup;

    #[test]
    fn group_file_examples() {
        let s3 = parse_group_file("degree: 3\ngen: (1 2 3)\ngen: (1 2)\n", 200).unwrap();
        assert_eq!(s3.order(), 6);
        let v4 = parse_group_file("# Klein\ndegree: 4\ngen: (1 2)(3 4)\ngen: (1 3)(2 4) # second\n", 200).unwrap();
        assert_eq!(v4.order(), 4);
        assert_eq!(parse_group_file("degree: 5\n", 200).unwrap().order(), 1);
    }

    #[test]
    fn group_file_errors_carry_lines() {
        let cases = [
            ("degree: 3\ngen: (1 2 4)\n", 2),
            ("gen: (1 2)\n", 1),
            ("degree: 3\ndegree: 3\n", 2),
            ("degree: x\n", 1),
            ("degree: 3\n\nfoo: 1\n", 3),
            ("degree: 3\ngen (1 2)\n", 2),
        ];
        for (text, line) in cases {
            match parse_group_file(text, 200) {
                Err(Error::Syntax { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
        assert!(matches!(parse_group_file("", 200), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_group_file("degree: 5\ngen: (1 2 3 4 5)\ngen: (1 2)\n", 100),
            Err(Error::OrderCapExceeded { .. })
        ));
        let mismatch = parse_group_file("degree: 3\ngen: (1 5)\n", 200).unwrap_err();
        assert!(mismatch.to_string().contains("degree mismatch"), "{mismatch}");
    }

    #[test]
    fn builder_orders() {
        assert_eq!(cyclic(1).unwrap().order(), 1);
        for m in (2..=24).step_by(2) {
            assert_eq!(dihedral(m).unwrap().order(), m, "D{m}");
        }
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(alternating(4).unwrap().order(), 12);
        assert_eq!(quaternion8().order(), 8);
        assert_eq!(frobenius20().unwrap().order(), 20);
        assert_eq!(q8_by_c3().unwrap().order(), 24);
        assert!(dihedral(7).is_err());
        assert!(build("nonsense").is_err());
        assert!(build("cyclic(x)").is_err());
        assert_eq!(build("dihedral(10)").unwrap().order(), 10);
    }

    #[test]
    fn quaternion_structure() {
        let q8 = Lattice::new(Arc::new(quaternion8()));
        assert_eq!(q8.len(), 6);
        assert_eq!(q8.group().order_signature().get(&2), Some(&1));
        assert!(q8.ids().all(|a| q8.is_normal(a)));
    }

    #[test]
    fn q8_by_c3_is_sl23_shaped() {
        let g = Lattice::new(Arc::new(q8_by_c3().unwrap()));
        // SL(2,3): 15 subgroups, unique involution, no subgroup of order 12
        assert_eq!(g.len(), 15);
        assert_eq!(g.group().order_signature().get(&2), Some(&1));
        assert!(g.ids().all(|h| g.order_of(h) != 12));
    }

    #[test]
    fn paper_example_structure() {
        let g = Lattice::new(Arc::new(paper_example().unwrap()));
        assert_eq!(g.group().order(), 30);
        let c15: Vec<_> = g.ids().filter(|&h| g.order_of(h) == 15).collect();
        assert_eq!(c15.len(), 1);
        assert!(g.is_normal(c15[0]));
        assert!(is_hall_subgroup(&g, c15[0], g.whole()));
        assert_eq!(g.ids().filter(|&h| g.order_of(h) == 2).count(), 3);
    }

    #[test]
    fn symmetric_four_lattice_fixture() {
        assert_eq!(Lattice::new(Arc::new(symmetric(4).unwrap())).len(), 30);
    }

    #[test]
    fn corpus_builds_and_validates() {
        let corpus = bundled_corpus().unwrap();
        assert_eq!(corpus.len(), 45);
        let mut keys: Vec<&str> = corpus.iter().map(|e| e.key.as_str()).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 45);
        for e in &corpus {
            assert!(e.group.check_associativity(), "{}", e.key);
            assert_eq!(e.group.generate(e.group.generators()).len(), e.group.order());
        }
    }

    #[test]
    fn sigma_spec_list() {
        let specs = default_sigma_specs();
        assert_eq!(specs.len(), 7);
        assert!(parse_sigma_spec("2,3|3|*").is_err());
    }
}
