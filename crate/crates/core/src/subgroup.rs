use std::fmt;
use std::sync::Arc;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{self, FiniteGroup, Quotient};

/// A subgroup of a parent [`FiniteGroup`], held as an element set.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    set: ElemSet,
}

impl Subgroup {
    /// Validates closure under products and inverses before wrapping `set`.
    pub fn new(parent: Arc<FiniteGroup>, set: ElemSet) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidTable(format!("not a subgroup: {m}")));
        if set.capacity() != parent.order() {
            return bad("set width differs from parent order");
        }
        if !set.contains(0) {
            return bad("missing identity");
        }
        let members = set.to_vec();
        for &a in &members {
            if !set.contains(parent.inv(a)) {
                return bad("not closed under inverses");
            }
            for &b in &members {
                if !set.contains(parent.mul(a, b)) {
                    return bad("not closed under products");
                }
            }
        }
        if parent.order() % members.len() != 0 {
            return bad("size does not divide the parent order");
        }
        Ok(Subgroup { parent, set })
    }

    pub(crate) fn from_set_unchecked(parent: Arc<FiniteGroup>, set: ElemSet) -> Self {
        debug_assert!(set.contains(0));
        Subgroup { parent, set }
    }

    pub fn generated_by(parent: Arc<FiniteGroup>, gens: &[usize]) -> Self {
        let set = parent.generate(gens);
        Subgroup { parent, set }
    }

    pub fn whole(parent: Arc<FiniteGroup>) -> Self {
        let set = ElemSet::full(parent.order());
        Subgroup { parent, set }
    }

    pub fn trivial(parent: Arc<FiniteGroup>) -> Self {
        let set = ElemSet::from_iter_with(parent.order(), [0]);
        Subgroup { parent, set }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn set(&self) -> &ElemSet {
        &self.set
    }

    pub fn order(&self) -> usize {
        self.set.len()
    }

    pub fn members(&self) -> Vec<usize> {
        self.set.to_vec()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.set.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.set.is_subset(&other.set)
    }

    /// `{g⁻¹ a g : a ∈ A}`.
    pub fn conjugate(&self, g: usize) -> Subgroup {
        let set = ElemSet::from_iter_with(
            self.parent.order(),
            self.set.iter().map(|a| self.parent.conj(a, g)),
        );
        Subgroup::from_set_unchecked(self.parent.clone(), set)
    }

    /// Whether `self` is normalized by every element of `within`.
    pub fn is_normal_in(&self, within: &Subgroup) -> Result<bool> {
        if !self.is_subgroup_of(within) {
            return Err(Error::NotContained);
        }
        Ok(within
            .set
            .iter()
            .all(|b| self.set.iter().all(|a| self.set.contains(self.parent.conj(a, b)))))
    }

    /// The core `∩_{b ∈ B} Aᵇ`, the largest subgroup of `A` normal in `B`.
    pub fn core_in(&self, within: &Subgroup) -> Result<Subgroup> {
        if !self.is_subgroup_of(within) {
            return Err(Error::NotContained);
        }
        let mut core = self.set.clone();
        for b in within.set.iter() {
            core.intersect_with(&self.conjugate(b).set);
        }
        Ok(Subgroup::from_set_unchecked(self.parent.clone(), core))
    }

    /// The element set `AB`.
    pub fn product_set(&self, other: &Subgroup) -> ElemSet {
        let mut out = ElemSet::empty(self.parent.order());
        for a in self.set.iter() {
            for b in other.set.iter() {
                out.insert(self.parent.mul(a, b));
            }
        }
        out
    }

    /// `AB = BA`, equivalently `AB` is a subgroup.
    pub fn permutes(&self, other: &Subgroup) -> bool {
        if self.is_subgroup_of(other) || other.is_subgroup_of(self) {
            return true;
        }
        self.product_set(other) == other.product_set(self)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup::from_set_unchecked(self.parent.clone(), self.set.intersection(&other.set))
    }

    /// `⟨A, B⟩`.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = self.set.union(&other.set).iter().collect();
        Subgroup::generated_by(self.parent.clone(), &gens)
    }

    /// `G/N` for this subgroup `N`, which must be normal in its parent.
    pub fn quotient(&self) -> Result<Quotient> {
        group::quotient(&self.parent, &self.set)
    }

    /// This subgroup as a standalone group; element `k` is the `k`-th
    /// member in ascending order, which is returned as the embedding.
    pub fn to_group(&self) -> (FiniteGroup, Vec<usize>) {
        let members = self.members();
        let mut local = vec![usize::MAX; self.parent.order()];
        for (k, &m) in members.iter().enumerate() {
            local[m] = k;
        }
        let n = members.len();
        let mut mult = vec![0u32; n * n];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                mult[i * n + j] = local[self.parent.mul(a, b)] as u32;
            }
        }
        let labels = members
            .iter()
            .map(|&m| self.parent.label(m).to_string())
            .collect();
        let generators = small_generating_set(&self.parent, &self.set)
            .into_iter()
            .map(|g| local[g])
            .collect();
        let g = FiniteGroup::from_table(n, mult, labels, generators)
            .expect("subgroup table is a group");
        (g, members)
    }
}

/// Greedy generating set: repeatedly add the least member not yet generated.
pub(crate) fn small_generating_set(g: &FiniteGroup, set: &ElemSet) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = ElemSet::from_iter_with(g.order(), [0]);
    for x in set.iter() {
        if !span.contains(x) {
            gens.push(x);
            span = g.generate(&gens);
        }
    }
    gens
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.parent, &other.parent) || self.parent == other.parent)
            && self.set == other.set
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, {:?})", self.order(), self.set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn group(degree: usize, gens: &[&str]) -> Arc<FiniteGroup> {
        let gens: Vec<Perm> = gens
            .iter()
            .map(|c| Perm::parse_cycles(c, degree).unwrap())
            .collect();
        Arc::new(FiniteGroup::from_permutations(degree, &gens, 200).unwrap())
    }

    fn elem(g: &FiniteGroup, cycles: &str, degree: usize) -> usize {
        let label = Perm::parse_cycles(cycles, degree).unwrap().to_string();
        g.elements().find(|&x| g.label(x) == label).unwrap()
    }

    fn sub(g: &Arc<FiniteGroup>, degree: usize, gens: &[&str]) -> Subgroup {
        let gens: Vec<usize> = gens.iter().map(|c| elem(g, c, degree)).collect();
        Subgroup::generated_by(g.clone(), &gens)
    }

    #[test]
    fn conjugation_in_s3() {
        let g = group(3, &["(1 2 3)", "(1 2)"]);
        let a = sub(&g, 3, &["(1 2)"]);
        let c = a.conjugate(elem(&g, "(1 2 3)", 3));
        assert_eq!(c, sub(&g, 3, &["(2 3)"]));
        assert_eq!(a.conjugate(0), a);
        let c3 = sub(&g, 3, &["(1 2 3)"]);
        for x in g.elements() {
            assert_eq!(c3.conjugate(x), c3);
        }
    }

    #[test]
    fn normality_and_cores() {
        let g = group(3, &["(1 2 3)", "(1 2)"]);
        let whole = Subgroup::whole(g.clone());
        let c3 = sub(&g, 3, &["(1 2 3)"]);
        let t = sub(&g, 3, &["(1 2)"]);
        assert!(c3.is_normal_in(&whole).unwrap());
        assert!(!t.is_normal_in(&whole).unwrap());
        assert!(t.is_normal_in(&t).unwrap());
        assert!(t.core_in(&whole).unwrap().is_trivial());
        assert_eq!(c3.core_in(&whole).unwrap(), c3);
        assert_eq!(whole.is_normal_in(&t), Err(Error::NotContained));

        let s4 = group(4, &["(1 2 3 4)", "(1 2)"]);
        let v4 = sub(&s4, 4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert_eq!(v4.core_in(&Subgroup::whole(s4.clone())).unwrap(), v4);
    }

    #[test]
    fn products_and_permutability() {
        let g = group(3, &["(1 2 3)", "(1 2)"]);
        let t12 = sub(&g, 3, &["(1 2)"]);
        let t13 = sub(&g, 3, &["(1 3)"]);
        let c3 = sub(&g, 3, &["(1 2 3)"]);
        assert_eq!(t12.product_set(&c3).len(), 6);
        assert!(t12.permutes(&c3));
        assert_eq!(t12.product_set(&t13).len(), 4);
        assert!(!t12.permutes(&t13));
        assert!(t12.permutes(&Subgroup::whole(g.clone())));
    }

    #[test]
    fn validation_rejects_non_subgroups() {
        let g = group(3, &["(1 2 3)", "(1 2)"]);
        assert!(Subgroup::new(g.clone(), ElemSet::from_iter_with(6, [1])).is_err());
        assert!(Subgroup::new(g.clone(), ElemSet::from_iter_with(6, [0, 1])).is_err());
        let c3 = g.generate(&[1]);
        assert!(Subgroup::new(g.clone(), c3).is_ok());
    }

    #[test]
    fn standalone_copy_keeps_structure() {
        let s4 = group(4, &["(1 2 3 4)", "(1 2)"]);
        let a4 = sub(&s4, 4, &["(1 2 3)", "(2 3 4)"]);
        let (g, emb) = a4.to_group();
        assert_eq!(g.order(), 12);
        assert_eq!(emb.len(), 12);
        assert!(g.check_associativity());
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(emb[g.mul(a, b)], s4.mul(emb[a], emb[b]));
            }
        }
    }
}
