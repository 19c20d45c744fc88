//! Finite groups as full multiplication tables.
//!
//! Element `0` is always the identity. Every constructor produces a
//! deterministic numbering so that reports and fixtures are reproducible.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::perm::Perm;

pub const DEFAULT_ORDER_CAP: usize = 200;

/// Orders up to this bound get an exhaustive associativity check.
const FULL_ASSOCIATIVITY_LIMIT: usize = 64;
const SAMPLED_TRIPLES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    labels: Vec<String>,
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a row-major table, checking identity, inverses,
    /// closure and that the generators generate.
    pub fn from_table(
        order: usize,
        mult: Vec<u32>,
        labels: Vec<String>,
        generators: Vec<usize>,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidTable("empty group".into()));
        }
        if mult.len() != order * order || labels.len() != order {
            return Err(Error::InvalidTable("table dimensions do not match order".into()));
        }
        if mult.iter().any(|&m| m as usize >= order) {
            return Err(Error::InvalidTable("entry out of range".into()));
        }
        for x in 0..order {
            if mult[x] as usize != x || mult[x * order] as usize != x {
                return Err(Error::InvalidTable("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![u32::MAX; order];
        for x in 0..order {
            match (0..order).find(|&y| mult[x * order + y] == 0) {
                Some(y) if mult[y * order + x] == 0 => inv[x] = y as u32,
                _ => return Err(Error::InvalidTable(format!("element {x} has no inverse"))),
            }
        }
        if generators.iter().any(|&g| g >= order) {
            return Err(Error::InvalidTable("generator out of range".into()));
        }
        let g = FiniteGroup {
            order,
            mult,
            inv,
            labels,
            generators,
        };
        if g.generate(&g.generators).len() != order {
            return Err(Error::InvalidTable("generators do not generate the group".into()));
        }
        Ok(g)
    }

    /// Closure of `gens` under composition, numbered breadth-first from the
    /// identity applying generators in input order.
    pub fn from_permutations(degree: usize, gens: &[Perm], cap: usize) -> Result<Self> {
        for p in gens {
            if p.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: p.degree(),
                });
            }
        }
        let mut elems = vec![Perm::identity(degree)];
        let mut index: HashMap<Perm, usize> = HashMap::new();
        index.insert(elems[0].clone(), 0);
        let mut cursor = 0;
        while cursor < elems.len() {
            for g in gens {
                let next = elems[cursor].then(g);
                if !index.contains_key(&next) {
                    if elems.len() >= cap {
                        return Err(Error::OrderCapExceeded {
                            reached: elems.len() + 1,
                            cap,
                        });
                    }
                    index.insert(next.clone(), elems.len());
                    elems.push(next);
                }
            }
            cursor += 1;
        }
        let order = elems.len();
        let mut mult = vec![0u32; order * order];
        for (a, pa) in elems.iter().enumerate() {
            for (b, pb) in elems.iter().enumerate() {
                mult[a * order + b] = index[&pa.then(pb)] as u32;
            }
        }
        let generators = gens.iter().map(|p| index[p]).collect();
        let labels = elems.iter().map(|p| p.to_string()).collect();
        FiniteGroup::from_table(order, mult, labels, generators)
    }

    pub fn trivial() -> Self {
        FiniteGroup::from_table(1, vec![0], vec!["e".into()], vec![]).expect("trivial group")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, x))
    }

    /// Least `k ≥ 1` with `xᵏ = 1`.
    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Multiset of element orders as `order -> count`.
    pub fn order_signature(&self) -> BTreeMap<usize, usize> {
        let mut sig = BTreeMap::new();
        for x in self.elements() {
            *sig.entry(self.element_order(x)).or_insert(0) += 1;
        }
        sig
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, &a)| {
            self.generators[i + 1..]
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    pub fn center(&self) -> ElemSet {
        ElemSet::from_iter_with(
            self.order,
            self.elements().filter(|&z| {
                self.generators
                    .iter()
                    .all(|&g| self.mul(z, g) == self.mul(g, z))
            }),
        )
    }

    /// The subgroup generated by `gens`, as an element set.
    pub fn generate(&self, gens: &[usize]) -> ElemSet {
        let mut set = ElemSet::empty(self.order);
        set.insert(0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    /// Exhaustive check for small orders, 10⁴ seeded random triples beyond.
    pub fn check_associativity(&self) -> bool {
        let n = self.order;
        let assoc = |a, b, c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if n <= FULL_ASSOCIATIVITY_LIMIT {
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| assoc(a, b, c))))
        } else {
            let mut rng = StdRng::seed_from_u64(0x5167_a7);
            (0..SAMPLED_TRIPLES).all(|_| {
                assoc(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))
            })
        }
    }

    /// Extends generator images to a homomorphism `self -> target`,
    /// failing if the assignment is inconsistent.
    pub fn homomorphism_from_generators(
        &self,
        target: &FiniteGroup,
        images: &[usize],
    ) -> Result<Vec<usize>> {
        if images.len() != self.generators.len() {
            return Err(Error::InvalidAction("one image per generator required".into()));
        }
        let mut map = vec![usize::MAX; self.order];
        map[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&g, &img) in self.generators.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = target.mul(map[x], img);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return Err(Error::InvalidAction(
                        "generator images do not extend to a homomorphism".into(),
                    ));
                }
            }
        }
        for a in self.elements() {
            for b in self.elements() {
                if map[self.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::InvalidAction("map is not multiplicative".into()));
                }
            }
        }
        Ok(map)
    }

    fn is_automorphism(&self, map: &[usize]) -> bool {
        if map.len() != self.order {
            return false;
        }
        let mut seen = vec![false; self.order];
        for &m in map {
            if m >= self.order || seen[m] {
                return false;
            }
            seen[m] = true;
        }
        self.elements()
            .all(|a| self.elements().all(|b| map[self.mul(a, b)] == self.mul(map[a], map[b])))
    }
}

/// `G × H` with element `(g, h)` numbered `g·|H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup, cap: usize) -> Result<FiniteGroup> {
    let (ng, nh) = (g.order(), h.order());
    let order = ng * nh;
    if order > cap {
        return Err(Error::OrderCapExceeded { reached: order, cap });
    }
    let mut mult = vec![0u32; order * order];
    for a in 0..order {
        let (ag, ah) = (a / nh, a % nh);
        for b in 0..order {
            let (bg, bh) = (b / nh, b % nh);
            mult[a * order + b] = (g.mul(ag, bg) * nh + h.mul(ah, bh)) as u32;
        }
    }
    let labels = (0..order)
        .map(|a| format!("[{}, {}]", g.label(a / nh), h.label(a % nh)))
        .collect();
    let generators = g
        .generators()
        .iter()
        .map(|&x| x * nh)
        .chain(h.generators().iter().copied())
        .collect();
    FiniteGroup::from_table(order, mult, labels, generators)
}

/// `N ⋊ H` where `action[h]` is the automorphism of `N` induced by `h`.
///
/// Elements are pairs `(n, h)` numbered `h·|N| + n`, multiplied as
/// `(n₁, h₁)(n₂, h₂) = (n₁·φ_{h₁}(n₂), h₁h₂)`, so `action` must satisfy
/// `φ_{h₁h₂} = φ_{h₁} ∘ φ_{h₂}`.
pub fn semidirect_product(
    n: &FiniteGroup,
    h: &FiniteGroup,
    action: &[Vec<usize>],
    cap: usize,
) -> Result<FiniteGroup> {
    if action.len() != h.order() {
        return Err(Error::InvalidAction("one automorphism per element of H".into()));
    }
    for (x, phi) in action.iter().enumerate() {
        if !n.is_automorphism(phi) {
            return Err(Error::InvalidAction(format!(
                "image of element {x} is not an automorphism"
            )));
        }
    }
    for a in h.elements() {
        for b in h.elements() {
            let ab = &action[h.mul(a, b)];
            if n.elements().any(|x| ab[x] != action[a][action[b][x]]) {
                return Err(Error::InvalidAction(format!(
                    "action of {a}·{b} differs from the composite"
                )));
            }
        }
    }
    let (nn, nh) = (n.order(), h.order());
    let order = nn * nh;
    if order > cap {
        return Err(Error::OrderCapExceeded { reached: order, cap });
    }
    let mut mult = vec![0u32; order * order];
    for a in 0..order {
        let (an, ah) = (a % nn, a / nn);
        for b in 0..order {
            let (bn, bh) = (b % nn, b / nn);
            let prod_n = n.mul(an, action[ah][bn]);
            mult[a * order + b] = (h.mul(ah, bh) * nn + prod_n) as u32;
        }
    }
    let labels = (0..order)
        .map(|a| format!("[{}; {}]", n.label(a % nn), h.label(a / nn)))
        .collect();
    let generators = n
        .generators()
        .iter()
        .copied()
        .chain(h.generators().iter().map(|&y| y * nn))
        .collect();
    FiniteGroup::from_table(order, mult, labels, generators)
}

/// `N ⋊ H` with the action given by automorphisms of `N` for each generator of `H`.
pub fn semidirect_product_from_generators(
    n: &FiniteGroup,
    h: &FiniteGroup,
    generator_actions: &[Vec<usize>],
    cap: usize,
) -> Result<FiniteGroup> {
    if generator_actions.len() != h.generators().len() {
        return Err(Error::InvalidAction("one automorphism per generator of H".into()));
    }
    for phi in generator_actions {
        if !n.is_automorphism(phi) {
            return Err(Error::InvalidAction("generator image is not an automorphism".into()));
        }
    }
    let identity: Vec<usize> = n.elements().collect();
    let mut action: Vec<Option<Vec<usize>>> = vec![None; h.order()];
    action[0] = Some(identity);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&g, phi_g) in h.generators().iter().zip(generator_actions) {
            let y = h.mul(x, g);
            let phi_x = action[x].as_ref().expect("visited");
            let phi_y: Vec<usize> = n.elements().map(|e| phi_x[phi_g[e]]).collect();
            match &action[y] {
                None => {
                    action[y] = Some(phi_y);
                    queue.push_back(y);
                }
                Some(existing) if *existing != phi_y => {
                    return Err(Error::InvalidAction(
                        "generator actions do not define a homomorphism".into(),
                    ))
                }
                Some(_) => {}
            }
        }
    }
    let action: Vec<Vec<usize>> = action.into_iter().map(|a| a.expect("H generated")).collect();
    semidirect_product(n, h, &action, cap)
}

/// A quotient group together with its projection map.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: Arc<FiniteGroup>,
    /// `projection[g]` is the coset containing `g`.
    pub projection: Vec<usize>,
}

/// `G/N`; cosets are numbered by their least element, so `N` itself is `0`.
pub fn quotient(g: &FiniteGroup, normal: &ElemSet) -> Result<Quotient> {
    if !normal.contains(0) {
        return Err(Error::NotNormal);
    }
    let members = normal.to_vec();
    for &x in &members {
        for &s in g.generators() {
            if !normal.contains(g.conj(x, s)) {
                return Err(Error::NotNormal);
            }
        }
    }
    let mut projection = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if projection[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &m in &members {
            projection[g.mul(x, m)] = c;
        }
    }
    let order = reps.len();
    let mut mult = vec![0u32; order * order];
    for (a, &ra) in reps.iter().enumerate() {
        for (b, &rb) in reps.iter().enumerate() {
            mult[a * order + b] = projection[g.mul(ra, rb)] as u32;
        }
    }
    let labels = reps.iter().map(|&r| format!("{}N", g.label(r))).collect();
    let mut generators: Vec<usize> = g
        .generators()
        .iter()
        .map(|&s| projection[s])
        .filter(|&c| c != 0)
        .collect();
    generators.dedup();
    let group = FiniteGroup::from_table(order, mult, labels, generators)?;
    Ok(Quotient {
        group: Arc::new(group),
        projection,
    })
}
