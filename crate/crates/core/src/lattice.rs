//! Exhaustive subgroup lattices.
//!
//! A [`Lattice`] enumerates every subgroup of a group once and then answers
//! structural questions (normality, cores, permutability, chief series) by
//! subgroup id. Ids index the canonical order: by size, then by member list,
//! so id `0` is the trivial subgroup and the last id is the whole group.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{self, FiniteGroup};
use crate::subgroup::{small_generating_set, Subgroup};

/// Index of a subgroup within its [`Lattice`].
pub type SubId = usize;

pub struct Lattice {
    group: Arc<FiniteGroup>,
    sets: Vec<ElemSet>,
    gens: Vec<Vec<usize>>,
    index: HashMap<ElemSet, SubId>,
    normal: Vec<bool>,
    conj: OnceLock<Vec<Vec<u32>>>,
    permutes: Vec<OnceLock<bool>>,
    quotient_groups: Vec<OnceLock<Arc<group::Quotient>>>,
    quotients: Vec<OnceLock<Arc<QuotientLattice>>>,
    standalone: Vec<OnceLock<Arc<SubgroupLattice>>>,
}

/// `G/N` with its own lattice and the projection from `G`.
pub struct QuotientLattice {
    pub lattice: Lattice,
    pub projection: Vec<usize>,
}

/// A subgroup of `G` re-materialized as a group in its own right.
pub struct SubgroupLattice {
    pub lattice: Lattice,
    /// Local element index to element of the parent group.
    pub embedding: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChiefFactor {
    pub order: usize,
    pub cyclic: bool,
}

#[derive(Debug, Clone)]
pub struct ChiefSeries {
    /// Ascending normal series `1 = K₀ < K₁ < … < G`.
    pub chain: Vec<Subgroup>,
    pub factors: Vec<ChiefFactor>,
}

impl Lattice {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        let g = &group;
        let mut sets: Vec<ElemSet> = Vec::new();
        let mut gens: Vec<Vec<usize>> = Vec::new();
        let mut index: HashMap<ElemSet, SubId> = HashMap::new();

        // cyclic seeds, one generator per cyclic subgroup
        let mut cyclic_gens = Vec::new();
        for x in g.elements() {
            let s = g.generate(&[x]);
            if !index.contains_key(&s) {
                index.insert(s.clone(), sets.len());
                sets.push(s);
                gens.push(if x == 0 { vec![] } else { vec![x] });
                cyclic_gens.push(x);
            }
        }
        // every subgroup is a join of cyclic subgroups
        let mut cursor = 0;
        while cursor < sets.len() {
            for &x in &cyclic_gens {
                if sets[cursor].contains(x) {
                    continue;
                }
                let mut new_gens = gens[cursor].clone();
                new_gens.push(x);
                let s = g.generate(&new_gens);
                if !index.contains_key(&s) {
                    index.insert(s.clone(), sets.len());
                    sets.push(s);
                    gens.push(new_gens);
                }
            }
            cursor += 1;
        }

        let mut order: Vec<usize> = (0..sets.len()).collect();
        order.sort_by(|&a, &b| sets[a].canonical_cmp(&sets[b]));
        let sets: Vec<ElemSet> = order.iter().map(|&i| sets[i].clone()).collect();
        let gens: Vec<Vec<usize>> = order.iter().map(|&i| gens[i].clone()).collect();
        let index = sets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let n = sets.len();

        let normal = sets
            .iter()
            .map(|s| {
                g.generators()
                    .iter()
                    .all(|&y| s.iter().all(|x| s.contains(g.conj(x, y))))
            })
            .collect();

        Lattice {
            group,
            sets,
            gens,
            index,
            normal,
            conj: OnceLock::new(),
            permutes: (0..n * n).map(|_| OnceLock::new()).collect(),
            quotient_groups: (0..n).map(|_| OnceLock::new()).collect(),
            quotients: (0..n).map(|_| OnceLock::new()).collect(),
            standalone: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }

    /// As [`Lattice::new`], refusing groups above `cap`.
    pub fn with_cap(group: Arc<FiniteGroup>, cap: usize) -> Result<Self> {
        if group.order() > cap {
            return Err(Error::OrderCapExceeded {
                reached: group.order(),
                cap,
            });
        }
        Ok(Lattice::new(group))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn ids(&self) -> std::ops::Range<SubId> {
        0..self.sets.len()
    }

    pub fn trivial(&self) -> SubId {
        0
    }

    pub fn whole(&self) -> SubId {
        self.sets.len() - 1
    }

    pub fn set(&self, id: SubId) -> &ElemSet {
        &self.sets[id]
    }

    pub fn order_of(&self, id: SubId) -> usize {
        self.sets[id].len()
    }

    pub fn generators(&self, id: SubId) -> &[usize] {
        &self.gens[id]
    }

    pub fn subgroup(&self, id: SubId) -> Subgroup {
        Subgroup::from_set_unchecked(self.group.clone(), self.sets[id].clone())
    }

    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        self.ids().map(|i| self.subgroup(i)).collect()
    }

    pub fn id_of(&self, set: &ElemSet) -> Option<SubId> {
        self.index.get(set).copied()
    }

    pub fn id_of_subgroup(&self, s: &Subgroup) -> Option<SubId> {
        self.id_of(s.set())
    }

    /// `a ≤ b`.
    pub fn is_sub(&self, a: SubId, b: SubId) -> bool {
        a == b || (self.order_of(b) % self.order_of(a) == 0 && self.sets[a].is_subset(&self.sets[b]))
    }

    pub fn subgroups_of(&self, b: SubId) -> impl Iterator<Item = SubId> + '_ {
        (0..=b).filter(move |&a| self.is_sub(a, b))
    }

    pub fn supergroups_of(&self, a: SubId) -> impl Iterator<Item = SubId> + '_ {
        (a..self.len()).filter(move |&b| self.is_sub(a, b))
    }

    fn conj_table(&self) -> &Vec<Vec<u32>> {
        self.conj.get_or_init(|| {
            let g = &self.group;
            self.sets
                .iter()
                .map(|s| {
                    g.elements()
                        .map(|y| {
                            let c = ElemSet::from_iter_with(g.order(), s.iter().map(|x| g.conj(x, y)));
                            self.index[&c] as u32
                        })
                        .collect()
                })
                .collect()
        })
    }

    /// `aᵍ`.
    pub fn conjugate(&self, a: SubId, g: usize) -> SubId {
        self.conj_table()[a][g] as usize
    }

    /// Distinct conjugates of `a` under elements of `b`, ascending.
    pub fn conjugates_within(&self, a: SubId, b: SubId) -> Vec<SubId> {
        let row = &self.conj_table()[a];
        let mut out: Vec<SubId> = self.sets[b].iter().map(|x| row[x] as usize).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Normal in the whole group.
    pub fn is_normal(&self, a: SubId) -> bool {
        self.normal[a]
    }

    /// `a ⊴ b`; false when `a ⊄ b`.
    pub fn is_normal_in(&self, a: SubId, b: SubId) -> bool {
        if !self.is_sub(a, b) {
            return false;
        }
        if b == self.whole() {
            return self.normal[a];
        }
        let row = &self.conj_table()[a];
        self.gens[b].iter().all(|&y| row[y] as usize == a)
    }

    /// Core of `a` in `b`: the intersection of all `b`-conjugates of `a`.
    pub fn core_in(&self, a: SubId, b: SubId) -> SubId {
        let mut core = self.sets[a].clone();
        for c in self.conjugates_within(a, b) {
            core.intersect_with(&self.sets[c]);
        }
        self.index[&core]
    }

    pub fn meet(&self, a: SubId, b: SubId) -> SubId {
        self.index[&self.sets[a].intersection(&self.sets[b])]
    }

    pub fn join(&self, a: SubId, b: SubId) -> SubId {
        let mut gens = self.gens[a].clone();
        gens.extend_from_slice(&self.gens[b]);
        self.index[&self.group.generate(&gens)]
    }

    /// The element set `AB`.
    pub fn product_set(&self, a: SubId, b: SubId) -> ElemSet {
        let g = &self.group;
        let mut out = ElemSet::empty(g.order());
        for x in self.sets[a].iter() {
            for y in self.sets[b].iter() {
                out.insert(g.mul(x, y));
            }
        }
        out
    }

    /// `AB = BA`, memoized.
    pub fn permutes(&self, a: SubId, b: SubId) -> bool {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        *self.permutes[lo * self.len() + hi].get_or_init(|| {
            if self.normal[lo] || self.normal[hi] || self.is_sub(lo, hi) {
                return true;
            }
            // |AB| = |A||B|/|A∩B| always; AB is a subgroup iff it fills ⟨A, B⟩
            let size = self.order_of(lo) * self.order_of(hi) / self.order_of(self.meet(lo, hi));
            size == self.order_of(self.join(lo, hi))
        })
    }

    pub fn normal_subgroups(&self) -> Vec<SubId> {
        self.ids().filter(|&a| self.normal[a]).collect()
    }

    /// Subgroups of `b` that are normal in `b`.
    pub fn normal_subgroups_of(&self, b: SubId) -> Vec<SubId> {
        self.subgroups_of(b).filter(|&a| self.is_normal_in(a, b)).collect()
    }

    pub fn minimal_normal_subgroups(&self) -> Vec<SubId> {
        let normals = self.normal_subgroups();
        normals
            .iter()
            .copied()
            .filter(|&m| {
                m != self.trivial()
                    && !normals
                        .iter()
                        .any(|&n| n != self.trivial() && n != m && self.is_sub(n, m))
            })
            .collect()
    }

    /// Maximal subgroups of `b`.
    pub fn maximal_subgroups_of(&self, b: SubId) -> Vec<SubId> {
        let proper: Vec<SubId> = self.subgroups_of(b).filter(|&a| a != b).collect();
        proper
            .iter()
            .copied()
            .filter(|&m| !proper.iter().any(|&n| n != m && self.is_sub(m, n)))
            .collect()
    }

    pub fn maximal_subgroups(&self) -> Vec<SubId> {
        self.maximal_subgroups_of(self.whole())
    }

    /// Intersection of the maximal subgroups; the whole group when there are none.
    pub fn frattini(&self) -> SubId {
        let mut set = ElemSet::full(self.group.order());
        for m in self.maximal_subgroups() {
            set.intersect_with(&self.sets[m]);
        }
        self.index[&set]
    }

    /// Chief series built bottom-up, at each step taking the least normal
    /// subgroup minimal over the previous term.
    pub fn chief_series(&self) -> ChiefSeries {
        let normals = self.normal_subgroups();
        let mut chain = vec![self.trivial()];
        let mut k = self.trivial();
        while k != self.whole() {
            k = normals
                .iter()
                .copied()
                .find(|&n| n != k && self.is_sub(k, n))
                .expect("whole group is normal");
            chain.push(k);
        }
        self.series_from_chain(&chain)
    }

    /// Every chief series of the group.
    pub fn all_chief_series(&self) -> Vec<ChiefSeries> {
        let normals = self.normal_subgroups();
        let mut out = Vec::new();
        let mut stack = vec![vec![self.trivial()]];
        while let Some(chain) = stack.pop() {
            let k = *chain.last().expect("nonempty");
            if k == self.whole() {
                out.push(self.series_from_chain(&chain));
                continue;
            }
            let above: Vec<SubId> = normals
                .iter()
                .copied()
                .filter(|&n| n != k && self.is_sub(k, n))
                .collect();
            for &n in &above {
                let minimal = !above.iter().any(|&m| m != n && self.is_sub(m, n));
                if minimal {
                    let mut next = chain.clone();
                    next.push(n);
                    stack.push(next);
                }
            }
        }
        out
    }

    fn series_from_chain(&self, chain: &[SubId]) -> ChiefSeries {
        let factors = chain
            .windows(2)
            .map(|w| self.factor(w[1], w[0]))
            .collect();
        ChiefSeries {
            chain: chain.iter().map(|&c| self.subgroup(c)).collect(),
            factors,
        }
    }

    /// Order and cyclicity of `h/k` for `k ⊴ h`.
    pub fn factor(&self, h: SubId, k: SubId) -> ChiefFactor {
        let g = &self.group;
        let order = self.order_of(h) / self.order_of(k);
        let ks = &self.sets[k];
        let cyclic = self.sets[h].iter().any(|x| {
            let mut y = x;
            let mut steps = 1;
            while !ks.contains(y) {
                y = g.mul(y, x);
                steps += 1;
            }
            steps == order
        });
        ChiefFactor { order, cyclic }
    }

    /// The group `G/N` and projection, without a lattice; cached per `n`.
    pub fn quotient_group(&self, n: SubId) -> Result<Arc<group::Quotient>> {
        if !self.normal[n] {
            return Err(Error::NotNormal);
        }
        Ok(self.quotient_groups[n]
            .get_or_init(|| {
                Arc::new(group::quotient(&self.group, &self.sets[n]).expect("normal subgroup"))
            })
            .clone())
    }

    /// `G/N` with its own lattice, cached per `n`.
    pub fn quotient(&self, n: SubId) -> Result<Arc<QuotientLattice>> {
        let q = self.quotient_group(n)?;
        Ok(self.quotients[n]
            .get_or_init(|| {
                Arc::new(QuotientLattice {
                    lattice: Lattice::new(q.group.clone()),
                    projection: q.projection.clone(),
                })
            })
            .clone())
    }

    /// Subgroup `a` as a standalone group with its own lattice, cached per `a`.
    pub fn standalone(&self, a: SubId) -> Arc<SubgroupLattice> {
        self.standalone[a]
            .get_or_init(|| {
                let (g, embedding) = self.subgroup(a).to_group();
                Arc::new(SubgroupLattice {
                    lattice: Lattice::new(Arc::new(g)),
                    embedding,
                })
            })
            .clone()
    }

    /// A small generating set of the subgroup `a`.
    pub fn minimal_generators(&self, a: SubId) -> Vec<usize> {
        small_generating_set(&self.group, &self.sets[a])
    }
}

impl QuotientLattice {
    /// Image of a subgroup of `G` in `G/N`.
    pub fn image(&self, set: &ElemSet) -> SubId {
        let img = ElemSet::from_iter_with(
            self.lattice.group().order(),
            set.iter().map(|x| self.projection[x]),
        );
        self.lattice.id_of(&img).expect("image of a subgroup is a subgroup")
    }

    /// Full preimage in `G` of a subgroup of `G/N`.
    pub fn preimage(&self, id: SubId) -> ElemSet {
        let target = self.lattice.set(id);
        ElemSet::from_iter_with(
            self.projection.len(),
            (0..self.projection.len()).filter(|&x| target.contains(self.projection[x])),
        )
    }
}

impl SubgroupLattice {
    /// Set in the parent group corresponding to a local subgroup.
    pub fn lift(&self, id: SubId) -> Vec<usize> {
        self.lattice.set(id).iter().map(|x| self.embedding[x]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::direct_product;
    use crate::perm::Perm;

    fn perm_group(degree: usize, gens: &[&str]) -> Arc<FiniteGroup> {
        let gens: Vec<Perm> = gens
            .iter()
            .map(|c| Perm::parse_cycles(c, degree).unwrap())
            .collect();
        Arc::new(FiniteGroup::from_permutations(degree, &gens, 200).unwrap())
    }

    fn cyclic(n: usize) -> Arc<FiniteGroup> {
        let images: Vec<usize> = (1..n).chain([0]).collect();
        Arc::new(
            FiniteGroup::from_permutations(n, &[Perm::from_images(images).unwrap()], 200).unwrap(),
        )
    }

    fn s4() -> Lattice {
        Lattice::new(perm_group(4, &["(1 2 3 4)", "(1 2)"]))
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(Lattice::new(perm_group(3, &["(1 2 3)", "(1 2)"])).len(), 6);
        assert_eq!(Lattice::new(cyclic(7)).len(), 2);
        assert_eq!(s4().len(), 30);
        let a5 = Lattice::new(perm_group(5, &["(1 2 3 4 5)", "(1 2 3)"]));
        assert_eq!(a5.len(), 59);
    }

    #[test]
    fn elementary_abelian_counts_match_gaussian_binomials() {
        // C_p² has p + 3 subgroups: 1, p + 1 lines, the whole group
        for p in [2usize, 3, 5] {
            let cp = cyclic(p);
            let g = direct_product(&cp, &cp, 200).unwrap();
            assert_eq!(Lattice::new(Arc::new(g)).len(), p + 3);
        }
    }

    #[test]
    fn canonical_order() {
        let l = s4();
        assert_eq!(l.order_of(l.trivial()), 1);
        assert_eq!(l.order_of(l.whole()), 24);
        for w in l.ids().collect::<Vec<_>>().windows(2) {
            assert!(l.set(w[0]).canonical_cmp(l.set(w[1])).is_lt());
        }
    }

    #[test]
    fn normal_structure_of_s4() {
        let l = s4();
        let normal_orders: Vec<usize> = l.normal_subgroups().iter().map(|&n| l.order_of(n)).collect();
        assert_eq!(normal_orders, vec![1, 4, 12, 24]);
        let minimal = l.minimal_normal_subgroups();
        assert_eq!(minimal.len(), 1);
        assert_eq!(l.order_of(minimal[0]), 4);
        assert_eq!(l.frattini(), l.trivial());
    }

    #[test]
    fn frattini_of_cyclic_four() {
        let l = Lattice::new(cyclic(4));
        assert_eq!(l.order_of(l.frattini()), 2);
        let t = Lattice::new(Arc::new(FiniteGroup::trivial()));
        assert_eq!(t.frattini(), t.whole());
    }

    #[test]
    fn chief_series_examples() {
        let l = s4();
        let cs = l.chief_series();
        let orders: Vec<usize> = cs.factors.iter().map(|f| f.order).collect();
        assert_eq!(orders, vec![4, 3, 2]);
        assert!(!cs.factors[0].cyclic);

        let c6 = Lattice::new(cyclic(6));
        let mut orders: Vec<usize> = c6.chief_series().factors.iter().map(|f| f.order).collect();
        orders.sort();
        assert_eq!(orders, vec![2, 3]);

        let a5 = Lattice::new(perm_group(5, &["(1 2 3 4 5)", "(1 2 3)"]));
        let f = a5.chief_series().factors;
        assert_eq!(f, vec![ChiefFactor { order: 60, cyclic: false }]);
    }

    #[test]
    fn chief_factors_are_minimal_normal_in_quotients() {
        let l = s4();
        let cs = l.chief_series();
        for w in cs.chain.windows(2) {
            let k = l.id_of_subgroup(&w[0]).unwrap();
            let h = l.id_of_subgroup(&w[1]).unwrap();
            let q = l.quotient(k).unwrap();
            let image = q.image(l.set(h));
            assert!(q.lattice.minimal_normal_subgroups().contains(&image));
        }
    }

    #[test]
    fn permutability_and_conjugation() {
        let l = s4();
        for a in l.ids() {
            for b in l.ids() {
                let ab = l.product_set(a, b);
                let ba = l.product_set(b, a);
                assert_eq!(l.permutes(a, b), ab == ba);
                assert_eq!(l.permutes(a, b), l.subgroup(a).permutes(&l.subgroup(b)));
            }
            for g in l.group().elements() {
                assert_eq!(l.order_of(l.conjugate(a, g)), l.order_of(a));
            }
        }
    }

    #[test]
    fn cores_and_normality_agree_with_handles() {
        let l = s4();
        for b in l.ids() {
            for a in l.subgroups_of(b).collect::<Vec<_>>() {
                let (sa, sb) = (l.subgroup(a), l.subgroup(b));
                assert_eq!(l.is_normal_in(a, b), sa.is_normal_in(&sb).unwrap());
                assert_eq!(l.subgroup(l.core_in(a, b)), sa.core_in(&sb).unwrap());
            }
        }
    }

    #[test]
    fn quotient_images_round_trip() {
        let l = s4();
        let v4 = l.minimal_normal_subgroups()[0];
        let q = l.quotient(v4).unwrap();
        assert_eq!(q.lattice.group().order(), 6);
        let sig: Vec<(usize, usize)> = q.lattice.group().order_signature().into_iter().collect();
        assert_eq!(sig, vec![(1, 1), (2, 3), (3, 2)]);
        for id in q.lattice.ids() {
            let pre = q.preimage(id);
            let pre_id = l.id_of(&pre).unwrap();
            assert_eq!(q.image(l.set(pre_id)), id);
        }
        assert!(l.quotient(1).is_err() || l.is_normal(1));
    }
}
