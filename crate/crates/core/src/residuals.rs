//! Residuals, block cores and the Hall / power-automorphism predicates.
//!
//! Residuals are computed by intersecting the enumerated normal subgroups
//! whose quotient lies in the class, then re-checked on the result.

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, SubId};
use crate::sigma::{is_sigma_nilpotent, BlockId, SigmaPartition};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `G^{𝔑_σ}`: intersection of all normal `N` with `G/N` σ-nilpotent.
pub fn sigma_nilpotent_residual(lat: &Lattice, sigma: &SigmaPartition) -> SubId {
    let g = lat.group();
    let mut set = ElemSet::full(g.order());
    for n in lat.normal_subgroups() {
        let q = lat.quotient_group(n).expect("normal");
        if is_sigma_nilpotent(&q.group, sigma) {
            set.intersect_with(lat.set(n));
        }
    }
    let id = lat.id_of(&set).expect("intersection of subgroups");
    debug_assert!(is_sigma_nilpotent(&lat.quotient_group(id).expect("normal").group, sigma));
    id
}

/// `G^𝔑`, the σ⁰ case.
pub fn nilpotent_residual(lat: &Lattice) -> SubId {
    sigma_nilpotent_residual(lat, &SigmaPartition::classical())
}

/// `O^{σᵢ}(B)`: the smallest normal subgroup of `ambient` with `σᵢ` quotient.
pub fn o_upper(lat: &Lattice, ambient: SubId, sigma: &SigmaPartition, block: BlockId) -> SubId {
    let total = lat.order_of(ambient);
    let mut set = lat.set(ambient).clone();
    for n in lat.normal_subgroups_of(ambient) {
        if sigma.is_block_number((total / lat.order_of(n)) as u64, block) {
            set.intersect_with(lat.set(n));
        }
    }
    lat.id_of(&set).expect("intersection of subgroups")
}

/// `O_{σᵢ}(B)`: the largest normal `σᵢ`-subgroup of `ambient`.
pub fn o_lower(lat: &Lattice, ambient: SubId, sigma: &SigmaPartition, block: BlockId) -> SubId {
    let mut acc = lat.trivial();
    for n in lat.normal_subgroups_of(ambient) {
        if sigma.is_block_number(lat.order_of(n) as u64, block) {
            acc = lat.join(acc, n);
        }
    }
    debug_assert!(sigma.is_block_number(lat.order_of(acc) as u64, block));
    debug_assert!(lat.is_normal_in(acc, ambient));
    acc
}

/// `|A|` and `|B:A|` are coprime.
pub fn is_hall_subgroup(lat: &Lattice, a: SubId, ambient: SubId) -> bool {
    let (na, nb) = (lat.order_of(a), lat.order_of(ambient));
    lat.is_sub(a, ambient) && gcd(na, nb / na) == 1
}

/// Every element of `ambient` acts on `d` by a power automorphism:
/// `xᵍ ∈ ⟨x⟩` for all `x ∈ D`, `g ∈ B`.
pub fn induces_power_automorphisms(lat: &Lattice, ambient: SubId, d: SubId) -> Result<bool> {
    if !lat.is_normal_in(d, ambient) {
        return Err(Error::NotNormal);
    }
    let g = lat.group();
    let cyclic: Vec<ElemSet> = lat.set(d).iter().map(|x| g.generate(&[x])).collect();
    Ok(lat.set(ambient).iter().all(|y| {
        lat.set(d)
            .iter()
            .zip(&cyclic)
            .all(|(x, cx)| cx.contains(g.conj(x, y)))
    }))
}

/// The same predicate via subgroups: every subgroup of `d` is normal in `ambient`.
pub fn induces_power_automorphisms_via_subgroups(lat: &Lattice, ambient: SubId, d: SubId) -> Result<bool> {
    if !lat.is_normal_in(d, ambient) {
        return Err(Error::NotNormal);
    }
    Ok(lat.subgroups_of(d).all(|a| lat.is_normal_in(a, ambient)))
}
