//! σ-quasinormality, σ-subnormality, and the PσT deciders.
//!
//! An [`Analysis`] binds one lattice to one σ-partition and memoizes the
//! expensive relations. It is single-threaded; run independent analyses in
//! parallel instead.

use std::cell::{OnceCell, RefCell};
use std::collections::{HashMap, VecDeque};
use std::rc::Rc;

use crate::lattice::{Lattice, SubId};
use crate::residuals::{induces_power_automorphisms, is_hall_subgroup, sigma_nilpotent_residual};
use crate::sigma::{
    hall_block_subgroups, is_sigma_full_sylow_type, is_sigma_soluble, BlockId, HallSigmaSet,
    SigmaPartition, SupersolubleReading,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Transitivity checked over every pair `K ≤ H ≤ G`.
    BruteForce,
    /// Every σ-subnormal subgroup is σ-quasinormal.
    SubnormalCriterion,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsigmaTWitness {
    /// `K` is σ-quasinormal in `H`, `H` in `G`, but `K` is not in `G`.
    Pair {
        k: SubId,
        h: SubId,
        k_in_h: HallSigmaSet,
        h_in_g: HallSigmaSet,
    },
    /// `A` is σ-subnormal via `chain` but not σ-quasinormal.
    Subgroup { a: SubId, chain: Vec<SubId> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsigmaTVerdict {
    pub value: bool,
    pub route: Route,
    /// Present exactly when `value` is false.
    pub witness: Option<PsigmaTWitness>,
}

/// Why a group is a special PσT-group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialCertificate {
    pub block: BlockId,
    /// `D`, the σ-nilpotent residual.
    pub residual: SubId,
    /// `E`, a Hall `σᵢ`-subgroup containing `D`.
    pub hall: SubId,
    /// `S`, a normal complement to `D` in `E`.
    pub complement: SubId,
}

pub struct Analysis<'a> {
    lat: &'a Lattice,
    sigma: &'a SigmaPartition,
    reading: SupersolubleReading,
    hall: RefCell<HashMap<(SubId, BlockId), Rc<Vec<SubId>>>>,
    quasinormal: RefCell<HashMap<(SubId, SubId), Option<HallSigmaSet>>>,
    step: RefCell<HashMap<(SubId, SubId), bool>>,
    reach: RefCell<HashMap<SubId, Rc<Vec<Option<SubId>>>>>,
    residual: OnceCell<SubId>,
    soluble: OnceCell<bool>,
    full_sylow: OnceCell<bool>,
    bruteforce: OnceCell<PsigmaTVerdict>,
    criterion: OnceCell<PsigmaTVerdict>,
    special: OnceCell<Option<SpecialCertificate>>,
    quotient_psigmat: RefCell<HashMap<SubId, bool>>,
    quotient_special: RefCell<HashMap<SubId, bool>>,
}

impl<'a> Analysis<'a> {
    pub fn new(lat: &'a Lattice, sigma: &'a SigmaPartition) -> Self {
        Self::with_reading(lat, sigma, SupersolubleReading::default())
    }

    pub fn with_reading(lat: &'a Lattice, sigma: &'a SigmaPartition, reading: SupersolubleReading) -> Self {
        Analysis {
            lat,
            sigma,
            reading,
            hall: RefCell::default(),
            quasinormal: RefCell::default(),
            step: RefCell::default(),
            reach: RefCell::default(),
            residual: OnceCell::new(),
            soluble: OnceCell::new(),
            full_sylow: OnceCell::new(),
            bruteforce: OnceCell::new(),
            criterion: OnceCell::new(),
            special: OnceCell::new(),
            quotient_psigmat: RefCell::default(),
            quotient_special: RefCell::default(),
        }
    }

    pub fn lattice(&self) -> &'a Lattice {
        self.lat
    }

    pub fn sigma(&self) -> &'a SigmaPartition {
        self.sigma
    }

    pub fn reading(&self) -> SupersolubleReading {
        self.reading
    }

    /// `σ(B)` for a subgroup `B`.
    pub fn sigma_of(&self, b: SubId) -> Vec<BlockId> {
        self.sigma.sigma_of(self.lat.order_of(b) as u64).into_iter().collect()
    }

    pub fn halls(&self, ambient: SubId, block: BlockId) -> Rc<Vec<SubId>> {
        self.hall
            .borrow_mut()
            .entry((ambient, block))
            .or_insert_with(|| Rc::new(hall_block_subgroups(self.lat, ambient, self.sigma, block)))
            .clone()
    }

    pub fn residual(&self) -> SubId {
        *self.residual.get_or_init(|| sigma_nilpotent_residual(self.lat, self.sigma))
    }

    pub fn is_soluble(&self) -> bool {
        *self.soluble.get_or_init(|| is_sigma_soluble(self.lat, self.sigma))
    }

    pub fn is_full_sylow_type(&self) -> bool {
        *self.full_sylow.get_or_init(|| is_sigma_full_sylow_type(self.lat, self.sigma))
    }

    /// Some complete Hall σ-set `ℋ` of `ambient` with `A Hˣ = Hˣ A` for all
    /// `H ∈ ℋ` and `x ∈ ambient`, or `None`.
    ///
    /// The condition is independent per block, so the first qualifying Hall
    /// subgroup is taken for each block; this is the lexicographically first
    /// witnessing set.
    pub fn is_sigma_quasinormal(&self, a: SubId, ambient: SubId) -> Option<HallSigmaSet> {
        if let Some(hit) = self.quasinormal.borrow().get(&(a, ambient)) {
            return hit.clone();
        }
        let result = self.compute_quasinormal(a, ambient);
        self.quasinormal
            .borrow_mut()
            .insert((a, ambient), result.clone());
        result
    }

    fn compute_quasinormal(&self, a: SubId, ambient: SubId) -> Option<HallSigmaSet> {
        if !self.lat.is_sub(a, ambient) {
            return None;
        }
        let mut set = HallSigmaSet::default();
        for block in self.sigma_of(ambient) {
            let halls = self.halls(ambient, block);
            let h = halls.iter().copied().find(|&h| {
                self.lat
                    .conjugates_within(h, ambient)
                    .into_iter()
                    .all(|c| self.lat.permutes(a, c))
            })?;
            set.entries.insert(block, h);
        }
        Some(set)
    }

    /// One link of a σ-subnormal chain: `M < B` with `M ⊴ B` or
    /// `B/(M)_B` σ-primary.
    pub fn is_subnormal_step(&self, m: SubId, b: SubId) -> bool {
        if m == b || !self.lat.is_sub(m, b) {
            return false;
        }
        if let Some(&hit) = self.step.borrow().get(&(m, b)) {
            return hit;
        }
        let ok = self.lat.is_normal_in(m, b) || {
            let core = self.lat.core_in(m, b);
            self.sigma
                .is_primary_number((self.lat.order_of(b) / self.lat.order_of(core)) as u64)
        };
        self.step.borrow_mut().insert((m, b), ok);
        ok
    }

    /// Breadth-first search upward from `a`; entry `b` holds the previous
    /// chain member when `a` is σ-subnormal in `b`.
    fn reach_from(&self, a: SubId) -> Rc<Vec<Option<SubId>>> {
        if let Some(r) = self.reach.borrow().get(&a) {
            return r.clone();
        }
        let mut pred: Vec<Option<SubId>> = vec![None; self.lat.len()];
        pred[a] = Some(a);
        let mut queue = VecDeque::from([a]);
        while let Some(m) = queue.pop_front() {
            let ups: Vec<SubId> = self.lat.supergroups_of(m).collect();
            for b in ups {
                if pred[b].is_none() && self.is_subnormal_step(m, b) {
                    pred[b] = Some(m);
                    queue.push_back(b);
                }
            }
        }
        let r = Rc::new(pred);
        self.reach.borrow_mut().insert(a, r.clone());
        r
    }

    /// A chain `A = A₀ ≤ … ≤ Aₜ = ambient` witnessing σ-subnormality, if any.
    pub fn is_sigma_subnormal(&self, a: SubId, ambient: SubId) -> Option<Vec<SubId>> {
        if !self.lat.is_sub(a, ambient) {
            return None;
        }
        let pred = self.reach_from(a);
        pred[ambient]?;
        let mut chain = vec![ambient];
        let mut cur = ambient;
        while cur != a {
            cur = pred[cur].expect("on the search tree");
            chain.push(cur);
        }
        chain.reverse();
        Some(chain)
    }

    /// Transitivity of σ-quasinormality over all `K ≤ H ≤ G`; the witness is
    /// the first failing pair ordered by `H`, then `K`.
    pub fn psigmat_bruteforce(&self) -> PsigmaTVerdict {
        self.bruteforce
            .get_or_init(|| {
                let g = self.lat.whole();
                for h in self.lat.ids() {
                    let Some(h_in_g) = self.is_sigma_quasinormal(h, g) else {
                        continue;
                    };
                    for k in self.lat.subgroups_of(h).collect::<Vec<_>>() {
                        let Some(k_in_h) = self.is_sigma_quasinormal(k, h) else {
                            continue;
                        };
                        if self.is_sigma_quasinormal(k, g).is_none() {
                            return PsigmaTVerdict {
                                value: false,
                                route: Route::BruteForce,
                                witness: Some(PsigmaTWitness::Pair { k, h, k_in_h, h_in_g }),
                            };
                        }
                    }
                }
                PsigmaTVerdict {
                    value: true,
                    route: Route::BruteForce,
                    witness: None,
                }
            })
            .clone()
    }

    /// Every σ-subnormal subgroup is σ-quasinormal; the witness is the first
    /// offending subgroup.
    pub fn psigmat_subnormal_criterion(&self) -> PsigmaTVerdict {
        self.criterion
            .get_or_init(|| {
                let g = self.lat.whole();
                for a in self.lat.ids() {
                    if let Some(chain) = self.is_sigma_subnormal(a, g) {
                        if self.is_sigma_quasinormal(a, g).is_none() {
                            return PsigmaTVerdict {
                                value: false,
                                route: Route::SubnormalCriterion,
                                witness: Some(PsigmaTWitness::Subgroup { a, chain }),
                            };
                        }
                    }
                }
                PsigmaTVerdict {
                    value: true,
                    route: Route::SubnormalCriterion,
                    witness: None,
                }
            })
            .clone()
    }

    pub fn is_psigmat(&self) -> bool {
        self.psigmat_bruteforce().value
    }

    /// The residual `D` lies in a Hall `σᵢ`-subgroup `E`, is a Hall subgroup
    /// on which `G` acts by power automorphisms, and has a normal complement
    /// in `E`.
    pub fn special_psigmat(&self) -> Option<SpecialCertificate> {
        self.special.get_or_init(|| self.compute_special()).clone()
    }

    fn compute_special(&self) -> Option<SpecialCertificate> {
        let lat = self.lat;
        let g = lat.whole();
        let d = self.residual();
        if !is_hall_subgroup(lat, d, g) || !induces_power_automorphisms(lat, g, d).expect("residual is normal") {
            return None;
        }
        for block in self.sigma_of(g) {
            for &e in self.halls(g, block).iter() {
                if !lat.is_sub(d, e) {
                    continue;
                }
                let complement = lat.normal_subgroups_of(e).into_iter().find(|&s| {
                    lat.meet(s, d) == lat.trivial()
                        && lat.order_of(s) * lat.order_of(d) == lat.order_of(e)
                });
                if let Some(s) = complement {
                    return Some(SpecialCertificate {
                        block,
                        residual: d,
                        hall: e,
                        complement: s,
                    });
                }
            }
        }
        // for i ∉ σ(G) the Hall σᵢ-subgroup is trivial
        (d == lat.trivial()).then(|| SpecialCertificate {
            block: self.sigma.block_outside(lat.order_of(g) as u64),
            residual: d,
            hall: lat.trivial(),
            complement: lat.trivial(),
        })
    }

    /// Brute-force PσT verdict for `G/N`, cached per `N`.
    pub fn quotient_is_psigmat(&self, n: SubId) -> bool {
        if let Some(&v) = self.quotient_psigmat.borrow().get(&n) {
            return v;
        }
        let q = self.lat.quotient(n).expect("normal subgroup");
        let v = Analysis::with_reading(&q.lattice, self.sigma, self.reading).is_psigmat();
        self.quotient_psigmat.borrow_mut().insert(n, v);
        v
    }

    /// Special-PσT verdict for `G/N`, cached per `N`.
    pub fn quotient_is_special(&self, n: SubId) -> bool {
        if let Some(&v) = self.quotient_special.borrow().get(&n) {
            return v;
        }
        let q = self.lat.quotient(n).expect("normal subgroup");
        let v = Analysis::with_reading(&q.lattice, self.sigma, self.reading)
            .special_psigmat()
            .is_some();
        self.quotient_special.borrow_mut().insert(n, v);
        v
    }
}

/// Re-checks a verdict's witness from scratch, without shared caches.
pub fn replay_witness(lat: &Lattice, sigma: &SigmaPartition, verdict: &PsigmaTVerdict) -> bool {
    let fresh = Analysis::new(lat, sigma);
    let g = lat.whole();
    match (&verdict.witness, verdict.value) {
        (None, value) => value,
        (Some(_), true) => false,
        (Some(PsigmaTWitness::Pair { k, h, k_in_h, h_in_g }), false) => {
            let holds_for = |a: SubId, amb: SubId, set: &HallSigmaSet| {
                set.entries.keys().copied().collect::<Vec<_>>() == fresh.sigma_of(amb)
                    && set.entries.iter().all(|(&b, &hall)| {
                        fresh.halls(amb, b).contains(&hall)
                            && lat
                                .conjugates_within(hall, amb)
                                .into_iter()
                                .all(|c| lat.subgroup(a).permutes(&lat.subgroup(c)))
                    })
            };
            lat.is_sub(*k, *h)
                && holds_for(*k, *h, k_in_h)
                && holds_for(*h, g, h_in_g)
                && fresh.is_sigma_quasinormal(*k, g).is_none()
        }
        (Some(PsigmaTWitness::Subgroup { a, chain }), false) => {
            chain.first() == Some(a)
                && chain.last() == Some(&g)
                && chain.windows(2).all(|w| fresh.is_subnormal_step(w[0], w[1]))
                && fresh.is_sigma_quasinormal(*a, g).is_none()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use std::sync::Arc;

    fn lat(g: crate::group::FiniteGroup) -> Lattice {
        Lattice::new(Arc::new(g))
    }

    fn sig(s: &str) -> SigmaPartition {
        s.parse().unwrap()
    }

    fn find(l: &Lattice, labels: &[&str]) -> SubId {
        let g = l.group();
        let gens: Vec<usize> = labels
            .iter()
            .map(|t| g.elements().find(|&x| g.label(x) == *t).unwrap())
            .collect();
        l.id_of(&g.generate(&gens)).unwrap()
    }

    /// An order-2 subgroup of the S₃ factor of `C₅ × S₃`.
    fn s3_involution(l: &Lattice) -> SubId {
        l.ids().find(|&h| l.order_of(h) == 2).unwrap()
    }

    #[test]
    fn quasinormal_examples() {
        let s4 = lat(catalog::symmetric(4).unwrap());
        let s0 = SigmaPartition::classical();
        let an = Analysis::new(&s4, &s0);
        for n in s4.normal_subgroups() {
            assert!(an.is_sigma_quasinormal(n, s4.whole()).is_some());
        }
        let s3 = lat(catalog::symmetric(3).unwrap());
        let primary = sig("2,3|*");
        let an = Analysis::new(&s3, &primary);
        for a in s3.ids() {
            let w = an.is_sigma_quasinormal(a, s3.whole()).unwrap();
            assert_eq!(w.members().collect::<Vec<_>>(), vec![s3.whole()]);
        }
        let g = lat(catalog::paper_example().unwrap());
        let s = sig("3,5|*");
        let an = Analysis::new(&g, &s);
        assert!(an.is_sigma_quasinormal(s3_involution(&g), g.whole()).is_none());
    }

    #[test]
    fn subnormal_examples() {
        let s4 = lat(catalog::symmetric(4).unwrap());
        let s0 = SigmaPartition::classical();
        let an = Analysis::new(&s4, &s0);
        assert_eq!(an.is_sigma_subnormal(s4.whole(), s4.whole()), Some(vec![s4.whole()]));
        let k = find(&s4, &["(1 2)(3 4)"]);
        let chain = an.is_sigma_subnormal(k, s4.whole()).unwrap();
        // shortest chain: V₄ is already normal in S₄
        let orders: Vec<usize> = chain.iter().map(|&c| s4.order_of(c)).collect();
        assert_eq!(orders, vec![2, 4, 24]);
        assert!(chain.windows(2).all(|w| s4.is_normal_in(w[0], w[1])));
        let t = find(&s4, &["(1 2)"]);
        assert!(an.is_sigma_subnormal(t, s4.whole()).is_none());

        let s3 = lat(catalog::symmetric(3).unwrap());
        let primary = sig("2,3|*");
        let an = Analysis::new(&s3, &primary);
        assert!(s3.ids().all(|a| an.is_sigma_subnormal(a, s3.whole()).is_some()));

        let g = lat(catalog::paper_example().unwrap());
        let s = sig("3,5|*");
        let an = Analysis::new(&g, &s);
        assert!(an.is_sigma_subnormal(s3_involution(&g), g.whole()).is_none());
    }

    #[test]
    fn psigmat_examples() {
        let g = lat(catalog::paper_example().unwrap());
        let s = sig("3,5|*");
        let an = Analysis::new(&g, &s);
        assert!(an.psigmat_bruteforce().value);
        assert!(an.psigmat_subnormal_criterion().value);

        let s4 = lat(catalog::symmetric(4).unwrap());
        let s0 = SigmaPartition::classical();
        let an = Analysis::new(&s4, &s0);
        let v = an.psigmat_bruteforce();
        assert!(!v.value);
        match v.witness.clone().unwrap() {
            PsigmaTWitness::Pair { k, h, .. } => {
                assert_eq!(s4.order_of(k), 2);
                assert_eq!(s4.order_of(h), 4);
                assert!(s4.is_normal(h));
                assert!(s4.set(k).iter().all(|x| s4.group().element_order(x) <= 2));
            }
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(replay_witness(&s4, &s0, &v));
        let c = an.psigmat_subnormal_criterion();
        assert!(!c.value);
        assert!(replay_witness(&s4, &s0, &c));

        let t = lat(catalog::cyclic(1).unwrap());
        let an = Analysis::new(&t, &s0);
        assert!(an.psigmat_subnormal_criterion().value);
        assert!(an.psigmat_bruteforce().value);
    }

    #[test]
    fn routes_agree_on_a4() {
        let a4 = lat(catalog::alternating(4).unwrap());
        let s = sig("2|3");
        let an = Analysis::new(&a4, &s);
        assert_eq!(an.psigmat_bruteforce().value, an.psigmat_subnormal_criterion().value);
        assert!(!an.psigmat_bruteforce().value);
    }

    #[test]
    fn special_examples() {
        let g = lat(catalog::paper_example().unwrap());
        let s = sig("3,5|*");
        let cert = Analysis::new(&g, &s).special_psigmat().unwrap();
        assert_eq!(cert.block, BlockId::Explicit(0));
        assert_eq!(g.order_of(cert.residual), 3);
        assert_eq!(g.order_of(cert.hall), 15);
        assert_eq!(g.order_of(cert.complement), 5);

        let d8 = lat(catalog::dihedral(8).unwrap());
        let s0 = SigmaPartition::classical();
        let cert = Analysis::new(&d8, &s0).special_psigmat().unwrap();
        assert_eq!(cert.residual, d8.trivial());
        assert_eq!(cert.complement, cert.hall);

        let s4 = lat(catalog::symmetric(4).unwrap());
        assert!(Analysis::new(&s4, &s0).special_psigmat().is_none());

        let t = lat(catalog::cyclic(1).unwrap());
        assert!(Analysis::new(&t, &s0).special_psigmat().is_some());
    }

    #[test]
    fn tampered_witness_does_not_replay() {
        let s4 = lat(catalog::symmetric(4).unwrap());
        let s0 = SigmaPartition::classical();
        let mut v = Analysis::new(&s4, &s0).psigmat_subnormal_criterion();
        if let Some(PsigmaTWitness::Subgroup { a, .. }) = &mut v.witness {
            *a = s4.whole();
        }
        assert!(!replay_witness(&s4, &s0, &v));
        let honest_true = PsigmaTVerdict {
            value: true,
            route: Route::BruteForce,
            witness: None,
        };
        assert!(replay_witness(&s4, &s0, &honest_true));
    }
}
