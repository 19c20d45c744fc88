//! Corpus × σ verification campaign.
//!
//! Cells run in parallel; results are reassembled in (group, σ) input order,
//! so the summary is deterministic regardless of scheduling.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::CatalogEntry;
use crate::elemset::ElemSet;
use crate::error::Result;
use crate::lattice::{Lattice, SubId};
use crate::psigmat::{replay_witness, Analysis};
use crate::residuals::{is_hall_subgroup, sigma_nilpotent_residual};
use crate::sigma::{is_sigma_nilpotent, is_sigma_nilpotent_set, SigmaPartition, SupersolubleReading};
use crate::theorems::{
    classical_residual_shape, nilpotent_quotient_premises, normal_sigma_hall_subgroups,
    theorem_a_premises, theorem_b_premises, theorem_c,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Check names, in reporting order.
pub const CELL_CHECKS: &[&str] = &[
    "routes_agree",
    "witness_replay",
    "residual_criterion",
    "hall_quotient_premises",
    "nilpotent_hall_premises",
    "nilpotent_quotient_premises",
    "soluble_full_sylow",
    "nilpotent_closure",
    "residual_quotient",
    "quotient_closure",
    "special_implies_psigmat",
    "quasinormal_subnormal",
];

pub const GROUP_CHECKS: &[&str] = &["hall_intersection", "classical_residual_shape"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Falsification {
    pub group: String,
    pub sigma: String,
    pub check: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    /// Instances where the premise held and the conclusion was tested.
    pub tested: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellResult {
    pub group: String,
    pub order: usize,
    pub sigma: String,
    pub psigmat: bool,
    pub routes_agree: bool,
    pub special: bool,
    /// `None` when the residual criterion is inapplicable.
    pub residual_criterion: Option<bool>,
    /// `D` with `1 < D < G` satisfying the respective premises.
    pub hall_quotient_nontrivial: Vec<usize>,
    pub nilpotent_hall_nontrivial: Vec<usize>,
    pub checks: BTreeMap<&'static str, CheckTally>,
    pub falsifications: Vec<Falsification>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupResult {
    pub group: String,
    pub checks: BTreeMap<&'static str, CheckTally>,
    pub falsifications: Vec<Falsification>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Counts {
    pub groups: usize,
    pub cells: usize,
    pub psigmat_true: usize,
    pub routes_agree: usize,
    pub criterion_applicable: usize,
    pub criterion_applicable_true: usize,
    pub criterion_applicable_false: usize,
    pub criterion_agree: usize,
    /// Percentage of applicable cells where the criterion matches; 100 when none.
    pub criterion_agreement_rate: f64,
    pub hall_quotient_nontrivial: usize,
    pub nilpotent_hall_nontrivial: usize,
    pub falsifications: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignSummary {
    pub schema_version: u32,
    pub sigma_specs: Vec<String>,
    pub cells: Vec<CellResult>,
    pub groups: Vec<GroupResult>,
    pub checks: BTreeMap<&'static str, CheckTally>,
    pub counts: Counts,
}

impl CampaignSummary {
    pub fn falsifications(&self) -> impl Iterator<Item = &Falsification> {
        self.cells
            .iter()
            .flat_map(|c| &c.falsifications)
            .chain(self.groups.iter().flat_map(|g| &g.falsifications))
    }

    pub fn is_clean(&self) -> bool {
        self.counts.falsifications == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }

    pub fn to_text(&self) -> String {
        use std::fmt::Write as _;
        let mut s = String::new();
        for c in &self.cells {
            let crit = match c.residual_criterion {
                None => "n/a",
                Some(true) => "yes",
                Some(false) => "no",
            };
            let _ = writeln!(
                s,
                "{} {:<8} {:<10} PsigmaT={:<5} special={:<5} criterion={:<3} {}",
                if c.passed { "ok  " } else { "FAIL" },
                c.group,
                c.sigma,
                c.psigmat,
                c.special,
                crit,
                if c.routes_agree { "" } else { "routes disagree" }
            );
        }
        for g in &self.groups {
            if !g.falsifications.is_empty() {
                let _ = writeln!(s, "FAIL {} group-level checks", g.group);
            }
        }
        let _ = writeln!(s, "checks:");
        for (name, t) in &self.checks {
            let _ = writeln!(s, "  {name:<28} tested {:>6}  failed {}", t.tested, t.failed);
        }
        let n = &self.counts;
        let _ = writeln!(s, "groups: {}  cells: {}  PsigmaT: {}", n.groups, n.cells, n.psigmat_true);
        let _ = writeln!(s, "route agreement: {}/{}", n.routes_agree, n.cells);
        let _ = writeln!(
            s,
            "residual criterion applicable: {} (true {}, false {}), agreement {}/{} = {:.1}%",
            n.criterion_applicable,
            n.criterion_applicable_true,
            n.criterion_applicable_false,
            n.criterion_agree,
            n.criterion_applicable,
            n.criterion_agreement_rate
        );
        let _ = writeln!(
            s,
            "nontrivial premise-true D: hall-quotient {}, nilpotent-hall {}",
            n.hall_quotient_nontrivial, n.nilpotent_hall_nontrivial
        );
        let _ = writeln!(s, "falsifications: {}", n.falsifications);
        for f in self.falsifications() {
            let _ = writeln!(s, "  {} {} [{}]: {}", f.group, f.sigma, f.check, f.detail);
        }
        s
    }
}

#[derive(Debug, Clone)]
pub struct CampaignOptions {
    pub jobs: Option<usize>,
    pub reading: SupersolubleReading,
    pub cap: usize,
}

impl Default for CampaignOptions {
    fn default() -> Self {
        CampaignOptions {
            jobs: None,
            reading: SupersolubleReading::default(),
            cap: crate::group::DEFAULT_ORDER_CAP,
        }
    }
}

struct Recorder<'a> {
    group: &'a str,
    sigma: String,
    checks: BTreeMap<&'static str, CheckTally>,
    falsifications: Vec<Falsification>,
}

impl<'a> Recorder<'a> {
    fn new(group: &'a str, sigma: String, names: &[&'static str]) -> Self {
        Recorder {
            group,
            sigma,
            checks: names.iter().map(|&n| (n, CheckTally::default())).collect(),
            falsifications: Vec::new(),
        }
    }

    fn check(&mut self, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let t = self.checks.get_mut(name).expect("registered check");
        t.tested += 1;
        if !ok {
            t.failed += 1;
            self.falsifications.push(Falsification {
                group: self.group.to_string(),
                sigma: self.sigma.clone(),
                check: name,
                detail: detail(),
            });
        }
    }
}

fn members(lat: &Lattice, id: SubId) -> String {
    format!("{:?}", lat.set(id).to_vec())
}

/// Runs every per-cell check for one (group, σ) pair.
pub fn verify_cell(key: &str, lat: &Lattice, sigma: &SigmaPartition, reading: SupersolubleReading) -> CellResult {
    let an = Analysis::with_reading(lat, sigma, reading);
    let mut rec = Recorder::new(key, sigma.to_string(), CELL_CHECKS);
    let g = lat.whole();
    let group = lat.group();

    let brute = an.psigmat_bruteforce();
    let crit = an.psigmat_subnormal_criterion();
    let psigmat = brute.value;
    let routes_agree = brute.value == crit.value;
    rec.check("routes_agree", routes_agree, || {
        let hall_sets: usize = an.sigma_of(g).into_iter().map(|b| an.halls(g, b).len()).product();
        format!(
            "bruteforce {} vs subnormal criterion {} (complete Hall sigma-sets: {hall_sets}): {:?} / {:?}",
            brute.value, crit.value, brute.witness, crit.witness
        )
    });
    for v in [&brute, &crit] {
        rec.check("witness_replay", replay_witness(lat, sigma, v), || format!("{v:?}"));
    }

    let c = theorem_c(&an);
    let residual_criterion = c.applicable.then_some(c.verdict);
    if c.applicable {
        rec.check("residual_criterion", c.verdict == psigmat, || {
            format!("criterion {} vs PsigmaT {psigmat}; residual {}", c.verdict, members(lat, c.residual))
        });
    }

    let nontrivial = |d: SubId| d != lat.trivial() && d != g;
    let mut hall_quotient_nontrivial = Vec::new();
    let mut nilpotent_hall_nontrivial = Vec::new();
    for d in normal_sigma_hall_subgroups(lat, sigma) {
        if theorem_a_premises(&an, d).holds {
            rec.check("hall_quotient_premises", psigmat, || format!("premises hold for D = {}", members(lat, d)));
            if nontrivial(d) {
                hall_quotient_nontrivial.push(lat.order_of(d));
            }
        }
        if theorem_b_premises(&an, d).holds {
            rec.check("nilpotent_hall_premises", psigmat, || format!("premises hold for D = {}", members(lat, d)));
            if nontrivial(d) {
                nilpotent_hall_nontrivial.push(lat.order_of(d));
            }
        }
        if nilpotent_quotient_premises(lat, sigma, d) {
            rec.check("nilpotent_quotient_premises", psigmat, || format!("premises hold for D = {}", members(lat, d)));
        }
    }

    if an.is_soluble() {
        rec.check("soluble_full_sylow", an.is_full_sylow_type(), || "sigma-soluble but not sigma-full of Sylow type".into());
    }

    // closure of the σ-nilpotent class
    let nilpotent = is_sigma_nilpotent(group, sigma);
    let normals = lat.normal_subgroups();
    if nilpotent {
        for a in lat.ids() {
            rec.check("nilpotent_closure", is_sigma_nilpotent_set(group, lat.set(a), sigma), || {
                format!("subgroup {} not sigma-nilpotent", members(lat, a))
            });
        }
        for &n in &normals {
            let q = lat.quotient_group(n).expect("normal");
            rec.check("nilpotent_closure", is_sigma_nilpotent(&q.group, sigma), || {
                format!("quotient by {} not sigma-nilpotent", members(lat, n))
            });
        }
    }
    let nil_normals: Vec<SubId> = normals
        .iter()
        .copied()
        .filter(|&n| is_sigma_nilpotent_set(group, lat.set(n), sigma))
        .collect();
    for (i, &a) in nil_normals.iter().enumerate() {
        for &b in &nil_normals[i + 1..] {
            let j = lat.join(a, b);
            rec.check("nilpotent_closure", is_sigma_nilpotent_set(group, lat.set(j), sigma), || {
                format!("product of {} and {} not sigma-nilpotent", members(lat, a), members(lat, b))
            });
        }
    }
    let phi = lat.frattini();
    for &e in &normals {
        let m = lat.meet(e, phi);
        let q = lat.quotient(m).expect("intersection of normal subgroups");
        let img = q.image(lat.set(e));
        if is_sigma_nilpotent_set(q.lattice.group(), q.lattice.set(img), sigma) {
            rec.check("nilpotent_closure", is_sigma_nilpotent_set(group, lat.set(e), sigma), || {
                format!("E = {} with E/(E∩Φ) sigma-nilpotent", members(lat, e))
            });
        }
    }

    let d = an.residual();
    for &n in &normals {
        let q = lat.quotient(n).expect("normal");
        let lhs = sigma_nilpotent_residual(&q.lattice, sigma);
        let rhs = q.image(lat.set(d));
        rec.check("residual_quotient", lhs == rhs, || format!("N = {}", members(lat, n)));
    }

    let special = an.special_psigmat().is_some();
    for &n in &normals {
        if psigmat {
            rec.check("quotient_closure", an.quotient_is_psigmat(n), || {
                format!("G/N not PsigmaT for N = {}", members(lat, n))
            });
        }
        if special {
            rec.check("quotient_closure", an.quotient_is_special(n), || {
                format!("G/N not special for N = {}", members(lat, n))
            });
        }
    }
    if special {
        rec.check("special_implies_psigmat", psigmat, || "special but not PsigmaT".into());
    }

    for a in lat.ids() {
        if an.is_sigma_quasinormal(a, g).is_some() {
            rec.check("quasinormal_subnormal", an.is_sigma_subnormal(a, g).is_some(), || {
                format!("A = {} sigma-quasinormal but not sigma-subnormal", members(lat, a))
            });
        }
    }

    let passed = rec.falsifications.is_empty();
    CellResult {
        group: key.to_string(),
        order: group.order(),
        sigma: rec.sigma,
        psigmat,
        routes_agree,
        special,
        residual_criterion,
        hall_quotient_nontrivial,
        nilpotent_hall_nontrivial,
        checks: rec.checks,
        falsifications: rec.falsifications,
        passed,
    }
}

/// `N ∩ HK = (N∩H)(N∩K)` for Hall `H` and pairwise permutable `H, K, N`.
fn check_hall_intersection(lat: &Lattice, rec: &mut Recorder<'_>) {
    let g = lat.whole();
    let order = lat.group().order();
    let halls: Vec<SubId> = lat.ids().filter(|&h| is_hall_subgroup(lat, h, g)).collect();
    for &h in &halls {
        let partners: Vec<SubId> = lat.ids().filter(|&k| lat.permutes(h, k)).collect();
        for &k in &partners {
            let hk = lat.product_set(h, k);
            for &n in &partners {
                if !lat.permutes(k, n) {
                    continue;
                }
                let mut lhs: ElemSet = lat.set(n).clone();
                lhs.intersect_with(&hk);
                let rhs = lat.product_set(lat.meet(n, h), lat.meet(n, k));
                debug_assert_eq!(rhs.capacity(), order);
                rec.check("hall_intersection", lhs == rhs, || {
                    format!("H = {}, K = {}, N = {}", members(lat, h), members(lat, k), members(lat, n))
                });
            }
        }
    }
}

/// σ-independent checks, run once per group.
pub fn verify_group(key: &str, lat: &Lattice, reading: SupersolubleReading) -> GroupResult {
    let mut rec = Recorder::new(key, "-".into(), GROUP_CHECKS);
    check_hall_intersection(lat, &mut rec);
    if let Some(shape) = classical_residual_shape(lat) {
        let s0 = SigmaPartition::classical();
        let pst = Analysis::with_reading(lat, &s0, reading).is_psigmat();
        rec.check("classical_residual_shape", shape == pst, || {
            format!("soluble; residual shape {shape} but PST {pst}")
        });
    }
    GroupResult {
        group: key.to_string(),
        checks: rec.checks,
        falsifications: rec.falsifications,
    }
}

/// Runs the campaign over `entries × sigmas`.
pub fn verify(entries: &[CatalogEntry], sigmas: &[SigmaPartition], opts: &CampaignOptions) -> Result<CampaignSummary> {
    let lattices: Vec<Arc<Lattice>> = entries
        .iter()
        .map(|e| Lattice::with_cap(e.group.clone(), opts.cap).map(Arc::new))
        .collect::<Result<_>>()?;

    let run = || {
        let cells: Vec<CellResult> = (0..entries.len() * sigmas.len())
            .into_par_iter()
            .map(|i| {
                let (gi, si) = (i / sigmas.len(), i % sigmas.len());
                verify_cell(&entries[gi].key, &lattices[gi], &sigmas[si], opts.reading)
            })
            .collect();
        let groups: Vec<GroupResult> = (0..entries.len())
            .into_par_iter()
            .map(|gi| verify_group(&entries[gi].key, &lattices[gi], opts.reading))
            .collect();
        (cells, groups)
    };
    let (cells, groups) = match opts.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    };

    let mut checks: BTreeMap<&'static str, CheckTally> = BTreeMap::new();
    for tallies in cells.iter().map(|c| &c.checks).chain(groups.iter().map(|g| &g.checks)) {
        for (&name, t) in tallies {
            let e = checks.entry(name).or_default();
            e.tested += t.tested;
            e.failed += t.failed;
        }
    }
    let mut counts = Counts {
        groups: entries.len(),
        cells: cells.len(),
        ..Counts::default()
    };
    for c in &cells {
        counts.psigmat_true += c.psigmat as usize;
        counts.routes_agree += c.routes_agree as usize;
        if let Some(v) = c.residual_criterion {
            counts.criterion_applicable += 1;
            if v {
                counts.criterion_applicable_true += 1;
            } else {
                counts.criterion_applicable_false += 1;
            }
            counts.criterion_agree += (v == c.psigmat) as usize;
        }
        counts.hall_quotient_nontrivial += c.hall_quotient_nontrivial.len();
        counts.nilpotent_hall_nontrivial += c.nilpotent_hall_nontrivial.len();
        counts.falsifications += c.falsifications.len();
    }
    counts.falsifications += groups.iter().map(|g| g.falsifications.len()).sum::<usize>();
    counts.criterion_agreement_rate = if counts.criterion_applicable == 0 {
        100.0
    } else {
        100.0 * counts.criterion_agree as f64 / counts.criterion_applicable as f64
    };

    Ok(CampaignSummary {
        schema_version: SCHEMA_VERSION,
        sigma_specs: sigmas.iter().map(|s| s.to_string()).collect(),
        cells,
        groups,
        checks,
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn empty_selection() {
        let s = verify(&[], &catalog::default_sigma_specs(), &CampaignOptions::default()).unwrap();
        assert!(s.cells.is_empty() && s.is_clean());
        assert_eq!(s.counts.criterion_agreement_rate, 100.0);
    }

    #[test]
    fn a5_criterion_inapplicable() {
        let e = catalog::entry("A5").unwrap();
        let s = verify(&[e], &["2,3|5|*".parse().unwrap()], &CampaignOptions::default()).unwrap();
        assert_eq!(s.cells[0].residual_criterion, None);
        assert_eq!(s.counts.criterion_applicable, 0);
        assert!(s.is_clean(), "{}", s.to_text());
    }

    #[test]
    fn small_campaign_clean_and_deterministic() {
        let entries: Vec<_> = ["S3", "S4", "C5xS3"].iter().map(|k| catalog::entry(k).unwrap()).collect();
        let sigmas = catalog::default_sigma_specs();
        let a = verify(&entries, &sigmas, &CampaignOptions { jobs: Some(2), ..Default::default() }).unwrap();
        let b = verify(&entries, &sigmas, &CampaignOptions { jobs: Some(1), ..Default::default() }).unwrap();
        assert!(a.is_clean(), "{}", a.to_text());
        assert_eq!(a.to_json(), b.to_json());
        let example = a.cells.iter().find(|c| c.group == "C5xS3" && c.sigma == "3,5|*").unwrap();
        assert!(example.hall_quotient_nontrivial.contains(&15));
        assert!(example.nilpotent_hall_nontrivial.contains(&15));
    }

    #[test]
    fn cap_is_enforced() {
        let e = catalog::entry("A5").unwrap();
        let opts = CampaignOptions { cap: 30, ..Default::default() };
        assert!(verify(&[e], &[SigmaPartition::classical()], &opts).is_err());
    }
}
