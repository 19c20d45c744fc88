//! Premise evaluators for the structural PσT criteria.
//!
//! Each evaluator records every premise separately so a campaign can tell
//! "premises failed" apart from "conclusion failed".

use std::collections::BTreeSet;

use serde::Serialize;

use crate::lattice::{Lattice, SubId};
use crate::psigmat::Analysis;
use crate::residuals::{induces_power_automorphisms, is_hall_subgroup, nilpotent_residual, o_upper};
use crate::sigma::{find_generalized_wielandt_set, is_sigma_nilpotent, is_sigma_nilpotent_set, is_sigma_soluble, BlockId, HallSigmaSet, SigmaPartition};

/// `G/O^{σᵢ}(D)` for one block of `σ(D)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockQuotient {
    #[serde(skip)]
    pub block: BlockId,
    pub block_label: String,
    #[serde(skip)]
    pub o_upper: SubId,
    pub o_upper_order: usize,
    pub special: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremCRecord {
    pub soluble: bool,
    pub wielandt_set: Option<HallSigmaSet>,
    /// σ-soluble and a generalized Wielandt σ-set exists.
    pub applicable: bool,
    pub residual: SubId,
    pub residual_abelian: bool,
    pub residual_hall: bool,
    pub residual_odd: bool,
    pub power_automorphisms: bool,
    pub condition_i: bool,
    pub quotients: Vec<BlockQuotient>,
    pub condition_ii: bool,
    /// Conditions (i) and (ii); only meaningful when `applicable`.
    pub verdict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremAPremises {
    pub d: SubId,
    pub normal: bool,
    pub sigma_hall: bool,
    pub quotient_psigmat: bool,
    pub subnormals_normal: bool,
    pub full_sylow_type: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremBPremises {
    pub d: SubId,
    pub normal: bool,
    pub hall: bool,
    pub d_sigma_nilpotent: bool,
    pub quotient_sigma_nilpotent: bool,
    pub quotients: Vec<BlockQuotient>,
    pub holds: bool,
}

fn is_abelian(lat: &Lattice, d: SubId) -> bool {
    let g = lat.group();
    let members = lat.set(d).to_vec();
    members
        .iter()
        .all(|&a| members.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

/// `D` is a Hall `Π`-subgroup for `Π = σ(D)`: `σ(D)` and `σ(|G:D|)` are disjoint.
pub fn is_sigma_hall(lat: &Lattice, sigma: &SigmaPartition, d: SubId) -> bool {
    let (nd, ng) = (lat.order_of(d) as u64, lat.order_of(lat.whole()) as u64);
    sigma.sigma_of(nd).is_disjoint(&sigma.sigma_of(ng / nd))
}

/// Normal σ-Hall subgroups of `G`, the candidates for `D` in the theorems.
pub fn normal_sigma_hall_subgroups(lat: &Lattice, sigma: &SigmaPartition) -> Vec<SubId> {
    lat.normal_subgroups()
        .into_iter()
        .filter(|&d| is_sigma_hall(lat, sigma, d))
        .collect()
}

/// `G/O^{σᵢ}(D)` special PσT for each `σᵢ ∈ σ(D)`.
fn block_quotients(an: &Analysis<'_>, d: SubId) -> Vec<BlockQuotient> {
    let lat = an.lattice();
    an.sigma_of(d)
        .into_iter()
        .map(|block| {
            let o = o_upper(lat, d, an.sigma(), block);
            assert!(lat.is_normal(o), "O^σi(D) is characteristic in a normal D");
            BlockQuotient {
                block,
                block_label: an.sigma().block_label(block),
                o_upper: o,
                o_upper_order: lat.order_of(o),
                special: an.quotient_is_special(o),
            }
        })
        .collect()
}

/// The structural criterion for σ-soluble groups with a generalized
/// Wielandt σ-set, with `D = G^{𝔑_σ}`.
pub fn theorem_c(an: &Analysis<'_>) -> TheoremCRecord {
    let lat = an.lattice();
    let g = lat.whole();
    let soluble = an.is_soluble();
    let wielandt_set = if soluble {
        find_generalized_wielandt_set(lat, an.sigma(), an.reading())
    } else {
        None
    };
    let applicable = soluble && wielandt_set.is_some();
    let d = an.residual();
    let residual_abelian = is_abelian(lat, d);
    let residual_hall = is_hall_subgroup(lat, d, g);
    let residual_odd = lat.order_of(d) % 2 == 1;
    let power_automorphisms = induces_power_automorphisms(lat, g, d).expect("residual is normal");
    let condition_i = residual_abelian && residual_hall && residual_odd && power_automorphisms;
    let quotients = block_quotients(an, d);
    let condition_ii = quotients.iter().all(|q| q.special);
    TheoremCRecord {
        soluble,
        wielandt_set,
        applicable,
        residual: d,
        residual_abelian,
        residual_hall,
        residual_odd,
        power_automorphisms,
        condition_i,
        quotients,
        condition_ii,
        verdict: condition_i && condition_ii,
    }
}

/// Premises for "`G` is PσT": `D` a normal σ-Hall subgroup, `G/D` PσT,
/// σ-subnormal subgroups of `D` normal in `G`, `G` σ-full of Sylow type.
pub fn theorem_a_premises(an: &Analysis<'_>, d: SubId) -> TheoremAPremises {
    let lat = an.lattice();
    let normal = lat.is_normal(d);
    let sigma_hall = is_sigma_hall(lat, an.sigma(), d);
    let quotient_psigmat = normal && an.quotient_is_psigmat(d);
    let subnormals_normal = lat
        .subgroups_of(d)
        .collect::<Vec<_>>()
        .into_iter()
        .filter(|&a| an.is_sigma_subnormal(a, d).is_some())
        .all(|a| lat.is_normal(a));
    let full_sylow_type = an.is_full_sylow_type();
    TheoremAPremises {
        d,
        normal,
        sigma_hall,
        quotient_psigmat,
        subnormals_normal,
        full_sylow_type,
        holds: normal && sigma_hall && quotient_psigmat && subnormals_normal && full_sylow_type,
    }
}

/// Premises for "`G` is PσT": `D` a σ-nilpotent normal Hall subgroup with
/// σ-nilpotent quotient and `G/O^{σᵢ}(D)` special PσT for `σᵢ ∈ σ(D)`.
pub fn theorem_b_premises(an: &Analysis<'_>, d: SubId) -> TheoremBPremises {
    let lat = an.lattice();
    let normal = lat.is_normal(d);
    let hall = is_hall_subgroup(lat, d, lat.whole());
    let d_sigma_nilpotent = is_sigma_nilpotent_set(lat.group(), lat.set(d), an.sigma());
    let quotient_sigma_nilpotent =
        normal && is_sigma_nilpotent(&lat.quotient_group(d).expect("normal").group, an.sigma());
    let quotients = if normal { block_quotients(an, d) } else { Vec::new() };
    let holds = normal
        && hall
        && d_sigma_nilpotent
        && quotient_sigma_nilpotent
        && quotients.iter().all(|q| q.special);
    TheoremBPremises {
        d,
        normal,
        hall,
        d_sigma_nilpotent,
        quotient_sigma_nilpotent,
        quotients,
        holds,
    }
}

/// Premises of the σ-nilpotent-quotient special case: `D` a normal σ-Hall
/// subgroup, `G/D` σ-nilpotent, every subgroup of `D` normal in `G`.
pub fn nilpotent_quotient_premises(lat: &Lattice, sigma: &SigmaPartition, d: SubId) -> bool {
    lat.is_normal(d)
        && is_sigma_hall(lat, sigma, d)
        && is_sigma_nilpotent(&lat.quotient_group(d).expect("normal").group, sigma)
        && lat.subgroups_of(d).all(|a| lat.is_normal(a))
}

/// For soluble `G` under σ⁰: whether `G^𝔑` is an abelian Hall subgroup of
/// odd order on which `G` acts by power automorphisms. `None` if `G` is
/// not soluble.
pub fn classical_residual_shape(lat: &Lattice) -> Option<bool> {
    let s0 = SigmaPartition::classical();
    if !is_sigma_soluble(lat, &s0) {
        return None;
    }
    let d = nilpotent_residual(lat);
    Some(
        is_abelian(lat, d)
            && is_hall_subgroup(lat, d, lat.whole())
            && lat.order_of(d) % 2 == 1
            && induces_power_automorphisms(lat, lat.whole(), d).expect("normal"),
    )
}

/// Primes dividing the residual, the `π` of the Wielandt condition.
pub fn residual_primes(lat: &Lattice, d: SubId) -> BTreeSet<u64> {
    crate::sigma::prime_divisors(lat.order_of(d) as u64).into_iter().collect()
}
