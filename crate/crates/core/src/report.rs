//! Serializable per-(group, σ) analysis reports.
//!
//! Subgroups are reported as sorted member lists (element indices in the
//! group's canonical numbering) plus generator labels.

use std::fmt::Write as _;

use serde::Serialize;

use crate::lattice::{Lattice, SubId};
use crate::psigmat::{replay_witness, Analysis, PsigmaTVerdict, PsigmaTWitness, Route};
use crate::sigma::{is_sigma_nilpotent, is_sigma_primary, HallSigmaSet, SigmaPartition, SupersolubleReading};
use crate::theorems::{
    normal_sigma_hall_subgroups, theorem_a_premises, theorem_b_premises, theorem_c, BlockQuotient,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupRef {
    pub order: usize,
    pub generators: Vec<String>,
    pub members: Vec<usize>,
}

impl SubgroupRef {
    pub fn new(lat: &Lattice, id: SubId) -> Self {
        let g = lat.group();
        SubgroupRef {
            order: lat.order_of(id),
            generators: lat
                .minimal_generators(id)
                .into_iter()
                .map(|x| g.label(x).to_string())
                .collect(),
            members: lat.set(id).to_vec(),
        }
    }

    fn short(&self) -> String {
        if self.generators.is_empty() {
            format!("1 (order {})", self.order)
        } else {
            format!("<{}> (order {})", self.generators.join(", "), self.order)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HallEntry {
    pub block: String,
    pub subgroup: SubgroupRef,
}

fn hall_entries(lat: &Lattice, sigma: &SigmaPartition, set: &HallSigmaSet) -> Vec<HallEntry> {
    set.entries
        .iter()
        .map(|(&b, &h)| HallEntry {
            block: sigma.block_label(b),
            subgroup: SubgroupRef::new(lat, h),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessReport {
    Pair {
        k: SubgroupRef,
        h: SubgroupRef,
        k_in_h: Vec<HallEntry>,
        h_in_g: Vec<HallEntry>,
    },
    Subgroup {
        a: SubgroupRef,
        chain: Vec<SubgroupRef>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub value: bool,
    pub route: &'static str,
    pub witness: Option<WitnessReport>,
    pub witness_replays: bool,
}

impl VerdictReport {
    pub fn new(lat: &Lattice, sigma: &SigmaPartition, v: &PsigmaTVerdict) -> Self {
        let witness = v.witness.as_ref().map(|w| match w {
            PsigmaTWitness::Pair { k, h, k_in_h, h_in_g } => WitnessReport::Pair {
                k: SubgroupRef::new(lat, *k),
                h: SubgroupRef::new(lat, *h),
                k_in_h: hall_entries(lat, sigma, k_in_h),
                h_in_g: hall_entries(lat, sigma, h_in_g),
            },
            PsigmaTWitness::Subgroup { a, chain } => WitnessReport::Subgroup {
                a: SubgroupRef::new(lat, *a),
                chain: chain.iter().map(|&c| SubgroupRef::new(lat, c)).collect(),
            },
        });
        VerdictReport {
            value: v.value,
            route: match v.route {
                Route::BruteForce => "bruteforce",
                Route::SubnormalCriterion => "subnormal_criterion",
            },
            witness,
            witness_replays: replay_witness(lat, sigma, v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classifiers {
    pub sigma_primary: bool,
    pub sigma_nilpotent: bool,
    pub sigma_soluble: bool,
    pub full_sylow_type: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialReport {
    pub block: String,
    pub residual: SubgroupRef,
    pub hall: SubgroupRef,
    pub complement: SubgroupRef,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremAReport {
    pub d: SubgroupRef,
    pub normal: bool,
    pub sigma_hall: bool,
    pub quotient_psigmat: bool,
    pub subnormals_normal: bool,
    pub full_sylow_type: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremBReport {
    pub d: SubgroupRef,
    pub normal: bool,
    pub hall: bool,
    pub d_sigma_nilpotent: bool,
    pub quotient_sigma_nilpotent: bool,
    pub block_quotients: Vec<BlockQuotient>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremCReport {
    pub soluble: bool,
    pub wielandt_set: Option<Vec<HallEntry>>,
    pub applicable: bool,
    pub residual_abelian: bool,
    pub residual_hall: bool,
    pub residual_odd: bool,
    pub power_automorphisms: bool,
    pub condition_i: bool,
    pub block_quotients: Vec<BlockQuotient>,
    pub condition_ii: bool,
    pub verdict: bool,
    /// `applicable` and `verdict` equals the brute-force PσT value.
    pub agrees: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub group: String,
    pub order: usize,
    pub sigma: String,
    pub supersoluble_reading: &'static str,
    pub sigma_of_group: Vec<String>,
    pub classifiers: Classifiers,
    pub residual: SubgroupRef,
    pub hall_set_count: u64,
    pub psigmat_bruteforce: VerdictReport,
    pub psigmat_subnormal_criterion: VerdictReport,
    pub falsification: bool,
    pub special_psigmat: Option<SpecialReport>,
    pub theorem_a: Vec<TheoremAReport>,
    pub theorem_b: Vec<TheoremBReport>,
    pub theorem_c: TheoremCReport,
}

impl AnalysisReport {
    pub fn build(key: &str, an: &Analysis<'_>) -> Self {
        let lat = an.lattice();
        let sigma = an.sigma();
        let g = lat.whole();
        let group = lat.group();
        let brute = an.psigmat_bruteforce();
        let crit = an.psigmat_subnormal_criterion();
        let brute_r = VerdictReport::new(lat, sigma, &brute);
        let crit_r = VerdictReport::new(lat, sigma, &crit);
        let falsification = brute.value != crit.value || !brute_r.witness_replays || !crit_r.witness_replays;

        let candidates = normal_sigma_hall_subgroups(lat, sigma);
        let theorem_a = candidates
            .iter()
            .map(|&d| {
                let p = theorem_a_premises(an, d);
                TheoremAReport {
                    d: SubgroupRef::new(lat, d),
                    normal: p.normal,
                    sigma_hall: p.sigma_hall,
                    quotient_psigmat: p.quotient_psigmat,
                    subnormals_normal: p.subnormals_normal,
                    full_sylow_type: p.full_sylow_type,
                    holds: p.holds,
                }
            })
            .collect();
        let theorem_b = candidates
            .iter()
            .map(|&d| {
                let p = theorem_b_premises(an, d);
                TheoremBReport {
                    d: SubgroupRef::new(lat, d),
                    normal: p.normal,
                    hall: p.hall,
                    d_sigma_nilpotent: p.d_sigma_nilpotent,
                    quotient_sigma_nilpotent: p.quotient_sigma_nilpotent,
                    block_quotients: p.quotients,
                    holds: p.holds,
                }
            })
            .collect();
        let c = theorem_c(an);
        let theorem_c = TheoremCReport {
            soluble: c.soluble,
            wielandt_set: c.wielandt_set.as_ref().map(|w| hall_entries(lat, sigma, w)),
            applicable: c.applicable,
            residual_abelian: c.residual_abelian,
            residual_hall: c.residual_hall,
            residual_odd: c.residual_odd,
            power_automorphisms: c.power_automorphisms,
            condition_i: c.condition_i,
            block_quotients: c.quotients,
            condition_ii: c.condition_ii,
            verdict: c.verdict,
            agrees: c.applicable.then_some(c.verdict == brute.value),
        };

        AnalysisReport {
            schema_version: SCHEMA_VERSION,
            group: key.to_string(),
            order: group.order(),
            sigma: sigma.to_string(),
            supersoluble_reading: match an.reading() {
                SupersolubleReading::ChiefFactorsMeetingPi => "chief_factors_meeting_pi",
                SupersolubleReading::SupersolubleWithinPi => "supersoluble_within_pi",
            },
            sigma_of_group: an.sigma_of(g).into_iter().map(|b| sigma.block_label(b)).collect(),
            classifiers: Classifiers {
                sigma_primary: is_sigma_primary(group.order(), sigma),
                sigma_nilpotent: is_sigma_nilpotent(group, sigma),
                sigma_soluble: an.is_soluble(),
                full_sylow_type: an.is_full_sylow_type(),
            },
            residual: SubgroupRef::new(lat, an.residual()),
            hall_set_count: an
                .sigma_of(g)
                .into_iter()
                .map(|b| an.halls(g, b).len() as u64)
                .product(),
            psigmat_bruteforce: brute_r,
            psigmat_subnormal_criterion: crit_r,
            falsification,
            special_psigmat: an.special_psigmat().map(|s| SpecialReport {
                block: sigma.block_label(s.block),
                residual: SubgroupRef::new(lat, s.residual),
                hall: SubgroupRef::new(lat, s.hall),
                complement: SubgroupRef::new(lat, s.complement),
            }),
            theorem_a,
            theorem_b,
            theorem_c,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let mut s = String::new();
        let _ = writeln!(s, "group: {} (order {})", self.group, self.order);
        let _ = writeln!(s, "sigma: {}", self.sigma);
        let _ = writeln!(s, "sigma(G): {}", self.sigma_of_group.join(" "));
        let c = &self.classifiers;
        let _ = writeln!(s, "sigma-primary: {}", yn(c.sigma_primary));
        let _ = writeln!(s, "sigma-nilpotent: {}", yn(c.sigma_nilpotent));
        let _ = writeln!(s, "sigma-soluble: {}", yn(c.sigma_soluble));
        let _ = writeln!(s, "sigma-full of Sylow type: {}", yn(c.full_sylow_type));
        let _ = writeln!(s, "residual: {}", self.residual.short());
        let _ = writeln!(s, "complete Hall sigma-sets: {}", self.hall_set_count);
        for v in [&self.psigmat_bruteforce, &self.psigmat_subnormal_criterion] {
            let _ = writeln!(s, "PsigmaT ({}): {}", v.route, yn(v.value));
            match &v.witness {
                Some(WitnessReport::Pair { k, h, .. }) => {
                    let _ = writeln!(s, "  witness: K = {} in H = {}", k.short(), h.short());
                }
                Some(WitnessReport::Subgroup { a, chain }) => {
                    let chain: Vec<String> = chain.iter().map(|c| c.order.to_string()).collect();
                    let _ = writeln!(s, "  witness: A = {} via chain of orders {}", a.short(), chain.join(" < "));
                }
                None => {}
            }
            if v.witness.is_some() {
                let _ = writeln!(s, "  witness replays: {}", yn(v.witness_replays));
            }
        }
        if self.falsification {
            let _ = writeln!(s, "FALSIFICATION: PsigmaT routes disagree or a witness does not replay");
        }
        match &self.special_psigmat {
            Some(sp) => {
                let _ = writeln!(
                    s,
                    "special PsigmaT: yes (block {}, D = {}, E = {}, S = {})",
                    sp.block,
                    sp.residual.short(),
                    sp.hall.short(),
                    sp.complement.short()
                );
            }
            None => {
                let _ = writeln!(s, "special PsigmaT: no");
            }
        }
        for a in &self.theorem_a {
            let _ = writeln!(
                s,
                "normal sigma-Hall D = {}: quotient PsigmaT {}, sigma-subnormals normal {}, premises A {}",
                a.d.short(),
                yn(a.quotient_psigmat),
                yn(a.subnormals_normal),
                yn(a.holds)
            );
        }
        for b in &self.theorem_b {
            let _ = writeln!(
                s,
                "normal sigma-Hall D = {}: Hall {}, D sigma-nilpotent {}, G/D sigma-nilpotent {}, premises B {}",
                b.d.short(),
                yn(b.hall),
                yn(b.d_sigma_nilpotent),
                yn(b.quotient_sigma_nilpotent),
                yn(b.holds)
            );
        }
        let t = &self.theorem_c;
        let applicable = if t.applicable {
            "applicable".to_string()
        } else if !t.soluble {
            "inapplicable (not sigma-soluble)".to_string()
        } else {
            "inapplicable (no generalized Wielandt sigma-set)".to_string()
        };
        let _ = writeln!(s, "residual criterion: {applicable}");
        let _ = writeln!(
            s,
            "  (i) abelian {}, Hall {}, odd {}, power automorphisms {} -> {}",
            yn(t.residual_abelian),
            yn(t.residual_hall),
            yn(t.residual_odd),
            yn(t.power_automorphisms),
            yn(t.condition_i)
        );
        for q in &t.block_quotients {
            let _ = writeln!(
                s,
                "  G/O^{}(D) with |O^{}(D)| = {}: special {}",
                q.block_label,
                q.block_label,
                q.o_upper_order,
                yn(q.special)
            );
        }
        let _ = writeln!(s, "  (ii) {}", yn(t.condition_ii));
        let _ = writeln!(s, "  verdict: {}", yn(t.verdict));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use std::sync::Arc;

    fn report(key: &str, spec: &str) -> AnalysisReport {
        let lat = Lattice::new(Arc::new(catalog::build(key).unwrap()));
        let s: SigmaPartition = spec.parse().unwrap();
        AnalysisReport::build(key, &Analysis::new(&lat, &s))
    }

    #[test]
    fn example_report_fields() {
        let r = report("C5xS3", "3,5|*");
        assert_eq!(r.order, 30);
        assert_eq!(r.residual.order, 3);
        assert!(r.special_psigmat.is_some());
        assert!(r.psigmat_bruteforce.value && r.psigmat_subnormal_criterion.value);
        assert!(!r.falsification);
        assert_eq!(r.theorem_c.agrees, Some(true));
        assert_eq!(r.hall_set_count, 3);
    }

    #[test]
    fn s4_report_has_replayable_witnesses() {
        let r = report("S4", "2|3|*");
        assert!(!r.psigmat_bruteforce.value);
        assert!(matches!(r.psigmat_bruteforce.witness, Some(WitnessReport::Pair { .. })));
        assert!(r.psigmat_bruteforce.witness_replays && r.psigmat_subnormal_criterion.witness_replays);
        assert!(!r.falsification);
    }

    #[test]
    fn rendering_is_deterministic() {
        let a = report("D12", "2|*");
        let b = report("D12", "2|*");
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_text(), b.to_text());
        let v: serde_json::Value = serde_json::from_str(&a.to_json()).unwrap();
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
    }
}
