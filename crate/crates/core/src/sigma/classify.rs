use std::collections::{BTreeMap, BTreeSet};

use crate::elemset::ElemSet;
use crate::group::FiniteGroup;
use crate::lattice::{Lattice, SubId};
use crate::residuals::sigma_nilpotent_residual;

use super::partition::{prime_divisors, BlockId, SigmaPartition};

/// One Hall `σᵢ`-subgroup for every block `σᵢ ∈ σ(G)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HallSigmaSet {
    pub entries: BTreeMap<BlockId, SubId>,
}

impl HallSigmaSet {
    pub fn members(&self) -> impl Iterator<Item = SubId> + '_ {
        self.entries.values().copied()
    }
}

/// How to read "π-supersoluble", which has more than one reading in use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SupersolubleReading {
    /// Every chief factor whose order meets `π` has prime order.
    #[default]
    ChiefFactorsMeetingPi,
    /// Supersoluble outright, and `π(G) ⊆ π`.
    SupersolubleWithinPi,
}

pub fn is_sigma_primary(order: usize, sigma: &SigmaPartition) -> bool {
    sigma.is_primary_number(order as u64)
}

/// Elements of `set` whose order is a `σᵢ`-number.
pub fn block_elements(g: &FiniteGroup, set: &ElemSet, sigma: &SigmaPartition, block: BlockId) -> ElemSet {
    ElemSet::from_iter_with(
        g.order(),
        set.iter()
            .filter(|&x| sigma.is_block_number(g.element_order(x) as u64, block)),
    )
}

/// σ-nilpotency of the subgroup `set` of `g`: for every block in `σ(set)`
/// the block elements form a subgroup, and their orders multiply to `|set|`.
pub fn is_sigma_nilpotent_set(g: &FiniteGroup, set: &ElemSet, sigma: &SigmaPartition) -> bool {
    let n = set.len();
    let mut product = 1usize;
    for block in sigma.sigma_of(n as u64) {
        let part = block_elements(g, set, sigma, block);
        let members = part.to_vec();
        let closed = members
            .iter()
            .all(|&a| members.iter().all(|&b| part.contains(g.mul(a, b))));
        if !closed {
            return false;
        }
        product *= members.len();
    }
    product == n
}

pub fn is_sigma_nilpotent(g: &FiniteGroup, sigma: &SigmaPartition) -> bool {
    is_sigma_nilpotent_set(g, &ElemSet::full(g.order()), sigma)
}

/// Every chief factor is σ-primary.
pub fn is_sigma_soluble(lat: &Lattice, sigma: &SigmaPartition) -> bool {
    lat.chief_series()
        .factors
        .iter()
        .all(|f| is_sigma_primary(f.order, sigma))
}

/// Hall `Π`-subgroups of `ambient`.
pub fn hall_pi_subgroups(
    lat: &Lattice,
    ambient: SubId,
    sigma: &SigmaPartition,
    pi: &BTreeSet<BlockId>,
) -> Vec<SubId> {
    let total = lat.order_of(ambient) as u64;
    let complement: BTreeSet<BlockId> = sigma.sigma_of(total).difference(pi).copied().collect();
    lat.subgroups_of(ambient)
        .filter(|&a| {
            let n = lat.order_of(a) as u64;
            sigma.is_pi_number(n, pi) && sigma.is_pi_number(total / n, &complement)
        })
        .collect()
}

/// Hall `σᵢ`-subgroups of `ambient`.
pub fn hall_block_subgroups(lat: &Lattice, ambient: SubId, sigma: &SigmaPartition, block: BlockId) -> Vec<SubId> {
    hall_pi_subgroups(lat, ambient, sigma, &BTreeSet::from([block]))
}

/// All complete Hall σ-sets of `ambient`, in lexicographic order of choices.
/// Empty when some block of `σ(ambient)` has no Hall subgroup.
pub fn complete_hall_sigma_sets(lat: &Lattice, ambient: SubId, sigma: &SigmaPartition) -> Vec<HallSigmaSet> {
    let blocks: Vec<BlockId> = sigma.sigma_of(lat.order_of(ambient) as u64).into_iter().collect();
    let choices: Vec<Vec<SubId>> = blocks
        .iter()
        .map(|&b| hall_block_subgroups(lat, ambient, sigma, b))
        .collect();
    let mut out = vec![HallSigmaSet::default()];
    for (&b, opts) in blocks.iter().zip(&choices) {
        out = out
            .into_iter()
            .flat_map(|partial| {
                opts.iter().map(move |&h| {
                    let mut next = partial.clone();
                    next.entries.insert(b, h);
                    next
                })
            })
            .collect();
    }
    out
}

/// `E` is a `D_{σᵢ}`-group: it has a Hall `σᵢ`-subgroup containing a
/// conjugate of every `σᵢ`-subgroup of `E`.
pub fn is_d_block_group(lat: &Lattice, e: SubId, sigma: &SigmaPartition, block: BlockId) -> bool {
    let halls = hall_block_subgroups(lat, e, sigma, block);
    let Some(&hall) = halls.first() else {
        return false;
    };
    let conjugates = lat.conjugates_within(hall, e);
    lat.subgroups_of(e)
        .filter(|&a| sigma.is_block_number(lat.order_of(a) as u64, block))
        .all(|a| conjugates.iter().any(|&c| lat.is_sub(a, c)))
}

/// Every subgroup `E` is a `D_{σᵢ}`-group for each `σᵢ ∈ σ(E)`.
pub fn is_sigma_full_sylow_type(lat: &Lattice, sigma: &SigmaPartition) -> bool {
    lat.ids().all(|e| {
        sigma
            .sigma_of(lat.order_of(e) as u64)
            .into_iter()
            .all(|b| is_d_block_group(lat, e, sigma, b))
    })
}

pub fn is_pi_supersoluble(lat: &Lattice, pi: &BTreeSet<u64>, reading: SupersolubleReading) -> bool {
    let series = lat.chief_series();
    let prime_order = |n: usize| prime_divisors(n as u64) == [n as u64];
    match reading {
        SupersolubleReading::ChiefFactorsMeetingPi => series.factors.iter().all(|f| {
            let meets = prime_divisors(f.order as u64).iter().any(|p| pi.contains(p));
            !meets || prime_order(f.order)
        }),
        SupersolubleReading::SupersolubleWithinPi => {
            series.factors.iter().all(|f| prime_order(f.order))
                && prime_divisors(lat.group().order() as u64)
                    .iter()
                    .all(|p| pi.contains(p))
        }
    }
}

/// First complete Hall σ-set whose members are all `π(G^{𝔑_σ})`-supersoluble.
pub fn find_generalized_wielandt_set(
    lat: &Lattice,
    sigma: &SigmaPartition,
    reading: SupersolubleReading,
) -> Option<HallSigmaSet> {
    let residual = sigma_nilpotent_residual(lat, sigma);
    let pi: BTreeSet<u64> = prime_divisors(lat.order_of(residual) as u64).into_iter().collect();
    let whole = lat.whole();
    let blocks = sigma.sigma_of(lat.order_of(whole) as u64);
    let mut set = HallSigmaSet::default();
    // the condition is per member, so choose per block
    for b in blocks {
        let h = hall_block_subgroups(lat, whole, sigma, b)
            .into_iter()
            .find(|&h| is_pi_supersoluble(&lat.standalone(h).lattice, &pi, reading))?;
        set.entries.insert(b, h);
    }
    Some(set)
}
