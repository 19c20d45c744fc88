use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Identifies one block of a [`SigmaPartition`].
///
/// Ordering puts explicit blocks first (in declaration order), then the
/// implicit singleton blocks by prime, then the co-finite rest block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockId {
    Explicit(usize),
    /// `{p}` for a prime not listed in any explicit block, when the
    /// partition has no rest block.
    Prime(u64),
    Rest,
}

/// A partition of all primes: finitely many explicit blocks plus either one
/// co-finite rest block or, without it, a singleton block per unlisted prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SigmaPartition {
    blocks: Vec<BTreeSet<u64>>,
    has_rest_block: bool,
}

impl SigmaPartition {
    pub fn new(blocks: Vec<BTreeSet<u64>>, has_rest_block: bool) -> Result<Self, String> {
        let mut seen = BTreeSet::new();
        for b in &blocks {
            if b.is_empty() {
                return Err("empty block".into());
            }
            for &p in b {
                if !is_prime(p) {
                    return Err(format!("{p} is not prime"));
                }
                if !seen.insert(p) {
                    return Err(format!("prime {p} appears in more than one block"));
                }
            }
        }
        if blocks.is_empty() && !has_rest_block {
            return Err("no blocks".into());
        }
        Ok(SigmaPartition {
            blocks,
            has_rest_block,
        })
    }

    /// `σ⁰ = {{2}, {3}, {5}, …}`.
    pub fn classical() -> Self {
        SigmaPartition {
            blocks: Vec::new(),
            has_rest_block: false,
        }
    }

    /// The one-block partition `{ℙ}`.
    pub fn trivial() -> Self {
        SigmaPartition {
            blocks: Vec::new(),
            has_rest_block: true,
        }
    }

    pub fn blocks(&self) -> &[BTreeSet<u64>] {
        &self.blocks
    }

    pub fn has_rest_block(&self) -> bool {
        self.has_rest_block
    }

    pub fn block_of(&self, p: u64) -> BlockId {
        match self.blocks.iter().position(|b| b.contains(&p)) {
            Some(i) => BlockId::Explicit(i),
            None if self.has_rest_block => BlockId::Rest,
            None => BlockId::Prime(p),
        }
    }

    pub fn contains(&self, block: BlockId, p: u64) -> bool {
        self.block_of(p) == block
    }

    /// `σ(n)`: blocks meeting `π(n)`.
    pub fn sigma_of(&self, n: u64) -> BTreeSet<BlockId> {
        prime_divisors(n).into_iter().map(|p| self.block_of(p)).collect()
    }

    /// `σ(n) ⊆ Π`.
    pub fn is_pi_number(&self, n: u64, pi: &BTreeSet<BlockId>) -> bool {
        self.sigma_of(n).is_subset(pi)
    }

    /// `n` is a `σᵢ`-number.
    pub fn is_block_number(&self, n: u64, block: BlockId) -> bool {
        prime_divisors(n).into_iter().all(|p| self.block_of(p) == block)
    }

    /// `|σ(n)| ≤ 1`.
    pub fn is_primary_number(&self, n: u64) -> bool {
        self.sigma_of(n).len() <= 1
    }

    /// Some block disjoint from `π(n)`.
    pub fn block_outside(&self, n: u64) -> BlockId {
        let hit = self.sigma_of(n);
        (2..)
            .filter(|&p| is_prime(p))
            .map(|p| self.block_of(p))
            .find(|b| !hit.contains(b))
            .expect("infinitely many primes")
    }

    /// Human-readable block, e.g. `{3,5}` or `{3,5}'` for the rest block.
    pub fn block_label(&self, block: BlockId) -> String {
        let join = |s: &BTreeSet<u64>| {
            s.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        };
        match block {
            BlockId::Explicit(i) => format!("{{{}}}", join(&self.blocks[i])),
            BlockId::Prime(p) => format!("{{{p}}}"),
            BlockId::Rest => {
                let listed: BTreeSet<u64> = self.blocks.iter().flatten().copied().collect();
                if listed.is_empty() {
                    "P".into()
                } else {
                    format!("{{{}}}'", join(&listed))
                }
            }
        }
    }
}

impl fmt::Display for SigmaPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        if self.has_rest_block {
            parts.push("*".into());
        }
        if parts.is_empty() {
            return f.write_str("sigma0");
        }
        f.write_str(&parts.join("|"))
    }
}

impl FromStr for SigmaPartition {
    type Err = Error;

    /// `spec := block ('|' block)*`, `block := prime (',' prime)* | '*'`.
    /// Without `*`, every unlisted prime is its own block. The literal
    /// `sigma0` denotes the classical partition.
    fn from_str(spec: &str) -> Result<Self, Error> {
        let err = |message: String| Error::SigmaSpec {
            spec: spec.to_string(),
            message,
        };
        let text = spec.trim();
        if text == "sigma0" {
            return Ok(SigmaPartition::classical());
        }
        if text.is_empty() {
            return Err(err("missing blocks".into()));
        }
        let mut blocks = Vec::new();
        let mut rest = false;
        for raw in text.split('|') {
            let raw = raw.trim();
            if raw == "*" {
                if rest {
                    return Err(err("more than one '*' block".into()));
                }
                rest = true;
                continue;
            }
            if raw.is_empty() {
                return Err(err("empty block".into()));
            }
            let mut block = BTreeSet::new();
            for tok in raw.split(',') {
                let tok = tok.trim();
                let p: u64 = tok
                    .parse()
                    .map_err(|_| err(format!("{tok:?} is not a prime")))?;
                if !block.insert(p) {
                    return Err(err(format!("prime {p} repeated")));
                }
            }
            blocks.push(block);
        }
        SigmaPartition::new(blocks, rest).map_err(err)
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Distinct prime divisors, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn parse(s: &str) -> SigmaPartition {
        s.parse().unwrap()
    }

    #[test]
    fn sigma_of_examples() {
        let s = parse("3,5|*");
        assert_eq!(
            s.sigma_of(30),
            BTreeSet::from([BlockId::Explicit(0), BlockId::Rest])
        );
        assert!(s.sigma_of(1).is_empty());
        let s0 = SigmaPartition::classical();
        assert_eq!(
            s0.sigma_of(12),
            BTreeSet::from([BlockId::Prime(2), BlockId::Prime(3)])
        );
    }

    #[test]
    fn pi_numbers() {
        let s = parse("3,5|*");
        let pi = BTreeSet::from([BlockId::Explicit(0)]);
        assert!(s.is_pi_number(15, &pi));
        assert!(s.is_pi_number(1, &pi));
        assert!(!s.is_pi_number(30, &pi));
        let s0 = SigmaPartition::classical();
        assert!(!s0.is_pi_number(6, &BTreeSet::from([BlockId::Prime(2)])));
    }

    #[test]
    fn parse_errors() {
        for bad in ["2,3|3|*", "4|*", "", "2||3", "*|*", "x"] {
            assert!(bad.parse::<SigmaPartition>().is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn labels_and_display() {
        let s = parse("3,5|*");
        assert_eq!(s.block_label(BlockId::Explicit(0)), "{3,5}");
        assert_eq!(s.block_label(BlockId::Rest), "{3,5}'");
        assert_eq!(s.to_string(), "3,5|*");
        assert_eq!(parse("2|3").block_of(7), BlockId::Prime(7));
        assert_eq!(SigmaPartition::classical().to_string(), "sigma0");
        assert_eq!(parse("sigma0"), SigmaPartition::classical());
    }

    #[test]
    fn block_outside_avoids_order() {
        let s = parse("2|3|*");
        assert_eq!(s.block_outside(6), BlockId::Rest);
        assert_eq!(parse("*").block_outside(1), BlockId::Rest);
        assert_eq!(SigmaPartition::classical().block_outside(30), BlockId::Prime(7));
    }

    fn arb_partition() -> impl Strategy<Value = SigmaPartition> {
        let primes = vec![2u64, 3, 5, 7, 11, 13];
        (
            Just(primes).prop_shuffle(),
            proptest::collection::vec(0usize..4, 6),
            any::<bool>(),
        )
            .prop_map(|(primes, slots, rest)| {
                let mut blocks: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); 3];
                for (p, s) in primes.into_iter().zip(slots) {
                    if s < 3 {
                        blocks[s].insert(p);
                    }
                }
                let blocks: Vec<_> = blocks.into_iter().filter(|b| !b.is_empty()).collect();
                let rest = rest || blocks.is_empty();
                SigmaPartition::new(blocks, rest).unwrap()
            })
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(s in arb_partition()) {
            let back: SigmaPartition = s.to_string().parse().unwrap();
            prop_assert_eq!(back, s);
        }

        #[test]
        fn every_prime_in_exactly_one_block(s in arb_partition()) {
            for p in (2..200u64).filter(|&p| is_prime(p)) {
                let b = s.block_of(p);
                let owners = s.blocks().iter().filter(|blk| blk.contains(&p)).count();
                match b {
                    BlockId::Explicit(i) => prop_assert!(owners == 1 && s.blocks()[i].contains(&p)),
                    _ => prop_assert_eq!(owners, 0),
                }
            }
        }
    }
}
