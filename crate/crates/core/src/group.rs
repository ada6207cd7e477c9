//! Fully enumerated permutation groups, their subgroups and quotients.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{GroupError, Result};
use crate::numbers::{is_power_of, prime_divisors};
use crate::perm::Permutation;

/// Default cap on the order of any group built by the library.
pub const DEFAULT_MAX_ORDER: usize = 20_000;
/// Cap for lattice-based oracles (`all_subgroups`, `frattini`).
pub const ORACLE_CAP: usize = 300;
/// Environment variable overriding [`DEFAULT_MAX_ORDER`].
pub const MAX_ORDER_ENV: &str = "PRIMEGRAPH_MAX_ORDER";

/// Groups up to this order keep a full multiplication table.
const TABLE_LIMIT: usize = 2048;

/// Order cap taken from `PRIMEGRAPH_MAX_ORDER`, falling back to the default.
pub fn max_order_from_env() -> usize {
    std::env::var(MAX_ORDER_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
}

/// A finite permutation group with every element enumerated.
///
/// Elements are stored sorted by image sequence and addressed by index; index
/// 0 is always the identity. Conjugacy classes, element orders and inverses
/// are computed on construction, so the value is immutable afterwards.
pub struct FiniteGroup {
    degree: usize,
    cap: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    generators: Vec<usize>,
    table: Option<Vec<u16>>,
    inverses: Vec<u32>,
    orders: Vec<u32>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<u32>,
    primes: Vec<u64>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generator_perms())
            .finish()
    }
}

/// Closure of `gens` under composition. Errors once more than `cap` elements appear.
pub fn generate_group(degree: usize, gens: &[Permutation], cap: usize) -> Result<Arc<FiniteGroup>> {
    if degree == 0 {
        return Err(GroupError::InvalidPermutation("degree must be positive".into()));
    }
    for g in gens {
        if g.degree() != degree {
            return Err(GroupError::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
    }
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(GroupError::CapExceeded { cap });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort();
    Ok(Arc::new(FiniteGroup::build(degree, elements, gens, cap, None)))
}

impl FiniteGroup {
    /// `elements` must be sorted, closed, and contain `gens`.
    fn build(
        degree: usize,
        elements: Vec<Permutation>,
        gens: &[Permutation],
        cap: usize,
        mul: Option<&dyn Fn(usize, usize) -> usize>,
    ) -> FiniteGroup {
        let n = elements.len();
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = vec![0u16; n * n];
            for a in 0..n {
                for b in 0..n {
                    let c = match mul {
                        Some(f) => f(a, b),
                        None => index[&elements[a].then(&elements[b])] as usize,
                    };
                    t[a * n + b] = c as u16;
                }
            }
            t
        });
        let inverses = elements
            .iter()
            .map(|p| index[&p.inverse()])
            .collect();
        let orders = elements.iter().map(|p| p.order() as u32).collect();
        let mut generators: Vec<usize> = gens
            .iter()
            .map(|g| index[g] as usize)
            .filter(|&i| i != 0)
            .collect();
        generators.sort_unstable();
        generators.dedup();
        let primes = prime_divisors(n as u64);
        let mut group = FiniteGroup {
            degree,
            cap,
            elements,
            index,
            generators,
            table,
            inverses,
            orders,
            classes: Vec::new(),
            class_of: Vec::new(),
            primes,
        };
        group.compute_classes();
        group
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            let mut orbit = vec![start];
            class_of[start] = id;
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for &g in &self.generators {
                    let y = self.conj(x, g);
                    if class_of[y] == u32::MAX {
                        class_of[y] = id;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// π(G), ascending.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    /// Indices of a (deduplicated, identity-free) generating set.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_perms(&self) -> Vec<Permutation> {
        self.generators.iter().map(|&g| self.elements[g].clone()).collect()
    }

    pub const IDENTITY: usize = 0;

    /// Product `a` then `b`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index[&self.elements[a].then(&self.elements[b])] as usize,
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// `x^g = g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    #[inline]
    pub fn comm(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    #[inline]
    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    #[inline]
    pub fn elem_order(&self, a: usize) -> u64 {
        self.orders[a] as u64
    }

    /// True when the order of `a` is a power of `p` (the identity counts).
    #[inline]
    pub fn is_p_element(&self, a: usize, p: u64) -> bool {
        is_power_of(self.orders[a] as u64, p)
    }

    /// True when the order of `a` is coprime to `p`.
    #[inline]
    pub fn is_p_prime_element(&self, a: usize, p: u64) -> bool {
        self.orders[a] as u64 % p != 0
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a] as usize
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Indices of the elements of `⟨gens⟩`, in discovery order.
    pub(crate) fn closure(&self, gens: &[usize]) -> (FixedBitSet, Vec<usize>) {
        let mut set = FixedBitSet::with_capacity(self.order());
        let mut list = vec![Self::IDENTITY];
        set.insert(Self::IDENTITY);
        let gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            head += 1;
            for &g in &gens {
                let y = self.mul(x, g);
                if !set.put(y) {
                    list.push(y);
                }
            }
        }
        (set, list)
    }

    /// Like [`closure`](Self::closure) but gives up as soon as an element
    /// failing `allow` is produced.
    pub(crate) fn closure_while(
        &self,
        gens: &[usize],
        allow: impl Fn(usize) -> bool,
    ) -> Option<(FixedBitSet, Vec<usize>)> {
        let mut set = FixedBitSet::with_capacity(self.order());
        let mut list = vec![Self::IDENTITY];
        set.insert(Self::IDENTITY);
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !set.put(y) {
                    if !allow(y) {
                        return None;
                    }
                    list.push(y);
                }
            }
        }
        Some((set, list))
    }

    /// Adds `extra` to the subgroup with elements `list`/`set` generated by `gens`.
    pub(crate) fn extend_closure(
        &self,
        set: &mut FixedBitSet,
        list: &mut Vec<usize>,
        gens: &[usize],
        extra: usize,
    ) {
        if set.contains(extra) {
            return;
        }
        let old = list.len();
        for i in 0..old {
            let y = self.mul(list[i], extra);
            if !set.put(y) {
                list.push(y);
            }
        }
        let mut head = old;
        while head < list.len() {
            let x = list[head];
            head += 1;
            for &g in gens.iter().chain(std::iter::once(&extra)) {
                let y = self.mul(x, g);
                if !set.put(y) {
                    list.push(y);
                }
            }
        }
    }

    /// Greedy generating set of the subgroup with element set `set`.
    pub(crate) fn generating_set(&self, set: &FixedBitSet) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut cur = FixedBitSet::with_capacity(self.order());
        cur.insert(Self::IDENTITY);
        let mut list = vec![Self::IDENTITY];
        let target = set.count_ones(..);
        // Prefer elements of large order: fewer generators, fewer passes.
        let mut candidates: Vec<usize> = set.ones().filter(|&i| i != 0).collect();
        candidates.sort_by_key(|&i| (std::cmp::Reverse(self.orders[i]), i));
        for c in candidates {
            if list.len() == target {
                break;
            }
            if !cur.contains(c) {
                self.extend_closure(&mut cur, &mut list, &gens, c);
                gens.push(c);
            }
        }
        gens
    }

    pub fn trivial_subgroup(self: &Arc<Self>) -> Subgroup {
        let mut set = FixedBitSet::with_capacity(self.order());
        set.insert(Self::IDENTITY);
        Subgroup {
            parent: self.clone(),
            set,
            gens: Vec::new(),
            order: 1,
        }
    }

    pub fn whole(self: &Arc<Self>) -> Subgroup {
        let mut set = FixedBitSet::with_capacity(self.order());
        set.insert_range(..);
        Subgroup {
            parent: self.clone(),
            set,
            gens: self.generators.clone(),
            order: self.order(),
        }
    }

    /// Subgroup generated by the given element indices.
    pub fn generated_by(self: &Arc<Self>, gens: &[usize]) -> Subgroup {
        let (set, list) = self.closure(gens);
        let mut gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        gens.sort_unstable();
        gens.dedup();
        Subgroup {
            parent: self.clone(),
            order: list.len(),
            set,
            gens,
        }
    }
}

/// Smallest subgroup of `group` containing `elems`.
pub fn subgroup_generated(group: &Arc<FiniteGroup>, elems: &[Permutation]) -> Result<Subgroup> {
    let idx = elems
        .iter()
        .map(|p| group.index_of(p).ok_or(GroupError::NotInParent))
        .collect::<Result<Vec<_>>>()?;
    Ok(group.generated_by(&idx))
}

/// An element subset of a parent group that is closed under the group operation.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    set: FixedBitSet,
    gens: Vec<usize>,
    order: usize,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.set == other.set
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.set.hash(state);
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, gens [", self.order)?;
        for (i, &g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.parent.element(g))?;
        }
        write!(f, "])")
    }
}

impl Subgroup {
    /// Wraps an element set already known to be a subgroup.
    pub(crate) fn from_set(parent: &Arc<FiniteGroup>, set: FixedBitSet) -> Subgroup {
        let gens = parent.generating_set(&set);
        let order = set.count_ones(..);
        Subgroup {
            parent: parent.clone(),
            set,
            gens,
            order,
        }
    }

    pub(crate) fn from_parts(parent: &Arc<FiniteGroup>, set: FixedBitSet, gens: Vec<usize>) -> Subgroup {
        let order = set.count_ones(..);
        Subgroup {
            parent: parent.clone(),
            set,
            gens,
            order,
        }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn primes(&self) -> Vec<u64> {
        prime_divisors(self.order as u64)
    }

    pub fn set(&self) -> &FixedBitSet {
        &self.set
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn generator_perms(&self) -> Vec<Permutation> {
        self.gens.iter().map(|&g| self.parent.element(g).clone()).collect()
    }

    pub fn contains(&self, elem: usize) -> bool {
        self.set.contains(elem)
    }

    pub fn contains_perm(&self, p: &Permutation) -> bool {
        self.parent.index_of(p).is_some_and(|i| self.contains(i))
    }

    /// Element indices in ascending order.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.set.ones()
    }

    pub fn permutations(&self) -> Vec<Permutation> {
        self.elements().map(|i| self.parent.element(i).clone()).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order == self.parent.order()
    }

    pub fn same_parent(&self, other: &Subgroup) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent)
    }

    pub(crate) fn check_parent(&self, other: &Subgroup) -> Result<()> {
        if self.same_parent(other) {
            Ok(())
        } else {
            Err(GroupError::NotInParent)
        }
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.set.is_subset(&other.set)
    }

    /// True iff the subgroup is normalised by every element of its parent.
    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        g.generators()
            .iter()
            .all(|&x| self.gens.iter().all(|&h| self.contains(g.conj(h, x))))
    }

    /// Conjugate `H^x`.
    pub fn conjugate(&self, x: usize) -> Subgroup {
        let g = &self.parent;
        let mut set = FixedBitSet::with_capacity(g.order());
        for h in self.elements() {
            set.insert(g.conj(h, x));
        }
        let gens = self.gens.iter().map(|&h| g.conj(h, x)).collect();
        Subgroup::from_parts(g, set, gens)
    }

    /// The subgroup as a group in its own right, on the same points.
    ///
    /// Element `i` of the result is the `i`-th element of this subgroup in
    /// ascending parent order, so `elements().nth(i)` is the embedding.
    pub fn to_group(&self) -> Arc<FiniteGroup> {
        let g = &self.parent;
        let emb: Vec<usize> = self.elements().collect();
        let mut rank = vec![u32::MAX; g.order()];
        for (i, &e) in emb.iter().enumerate() {
            rank[e] = i as u32;
        }
        let elements: Vec<Permutation> = emb.iter().map(|&e| g.element(e).clone()).collect();
        let gens = self.generator_perms();
        let mul = |a: usize, b: usize| rank[g.mul(emb[a], emb[b])] as usize;
        Arc::new(FiniteGroup::build(g.degree(), elements, &gens, g.cap(), Some(&mul)))
    }

    /// Maps a subgroup of `self.to_group()` back into the parent.
    pub fn lift_from_group(&self, sub: &Subgroup) -> Subgroup {
        let emb: Vec<usize> = self.elements().collect();
        let mut set = FixedBitSet::with_capacity(self.parent.order());
        for e in sub.elements() {
            set.insert(emb[e]);
        }
        let gens = sub.generators().iter().map(|&x| emb[x]).collect();
        Subgroup::from_parts(&self.parent, set, gens)
    }

    /// Index-based view of a parent subgroup contained in `self`, inside `self.to_group()`.
    pub fn restrict_to_group(&self, group: &Arc<FiniteGroup>, sub: &Subgroup) -> Subgroup {
        let mut rank = vec![u32::MAX; self.parent.order()];
        for (i, e) in self.elements().enumerate() {
            rank[e] = i as u32;
        }
        let mut set = FixedBitSet::with_capacity(group.order());
        for e in sub.elements() {
            debug_assert!(rank[e] != u32::MAX);
            set.insert(rank[e] as usize);
        }
        let gens = sub.generators().iter().map(|&x| rank[x] as usize).collect();
        Subgroup::from_parts(group, set, gens)
    }
}

/// `G/N` realised as a permutation group, with the projection map.
#[derive(Clone)]
pub struct Quotient {
    group: Arc<FiniteGroup>,
    map: Vec<u32>,
    section: Vec<u32>,
    kernel: Subgroup,
}

impl fmt::Debug for Quotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Quotient")
            .field("order", &self.group.order())
            .field("kernel_order", &self.kernel.order())
            .finish()
    }
}

impl Quotient {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// Image of the parent element `g`.
    pub fn image(&self, g: usize) -> usize {
        self.map[g] as usize
    }

    /// Smallest parent element mapping to `q`.
    pub fn lift(&self, q: usize) -> usize {
        self.section[q] as usize
    }

    pub fn image_subgroup(&self, h: &Subgroup) -> Subgroup {
        let mut set = FixedBitSet::with_capacity(self.group.order());
        for e in h.elements() {
            set.insert(self.image(e));
        }
        let mut gens: Vec<usize> = h
            .generators()
            .iter()
            .map(|&x| self.image(x))
            .filter(|&x| x != 0)
            .collect();
        gens.sort_unstable();
        gens.dedup();
        Subgroup::from_parts(&self.group, set, gens)
    }

    pub fn preimage_subgroup(&self, q: &Subgroup) -> Subgroup {
        let parent = self.kernel.parent();
        let mut set = FixedBitSet::with_capacity(parent.order());
        for g in 0..parent.order() {
            if q.contains(self.image(g)) {
                set.insert(g);
            }
        }
        let mut gens: Vec<usize> = self.kernel.generators().to_vec();
        gens.extend(q.generators().iter().map(|&x| self.lift(x)));
        Subgroup::from_parts(parent, set, gens)
    }
}

fn check_normal(n: &Subgroup) -> Result<()> {
    if n.is_normal() {
        Ok(())
    } else {
        Err(GroupError::NotNormal)
    }
}

/// Right cosets `Ng`, indexed by ascending minimal element, and the minimal
/// representative of each.
fn right_cosets(n: &Subgroup) -> (Vec<u32>, Vec<usize>) {
    let g = n.parent();
    let mut coset_of = vec![u32::MAX; g.order()];
    let mut reps = Vec::new();
    let kernel: Vec<usize> = n.elements().collect();
    for x in 0..g.order() {
        if coset_of[x] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for &k in &kernel {
            coset_of[g.mul(k, x)] = id;
        }
    }
    (coset_of, reps)
}

/// The action of `G` on the right cosets of the normal subgroup `N`.
///
/// The result has degree `[G:N]`; its kernel is exactly `N`.
pub fn coset_action(n: &Subgroup) -> Result<Quotient> {
    check_normal(n)?;
    let g = n.parent();
    let index = g.order() / n.order();
    if index > g.cap() {
        return Err(GroupError::CapExceeded { cap: g.cap() });
    }
    let (coset_of, reps) = right_cosets(n);
    let act = |x: usize| -> Permutation {
        Permutation::from_raw(reps.iter().map(|&r| coset_of[g.mul(r, x)]).collect())
    };
    let mut images: Vec<(Permutation, usize)> = reps.iter().map(|&r| (act(r), r)).collect();
    images.sort();
    // image index of a coset id
    let mut coset_rank = vec![0u32; index];
    for (i, (_, r)) in images.iter().enumerate() {
        coset_rank[coset_of[*r] as usize] = i as u32;
    }
    let map: Vec<u32> = (0..g.order()).map(|x| coset_rank[coset_of[x] as usize]).collect();
    let section: Vec<u32> = images.iter().map(|(_, r)| *r as u32).collect();
    let gens: Vec<Permutation> = g
        .generators()
        .iter()
        .map(|&x| images[map[x] as usize].0.clone())
        .collect();
    let elements: Vec<Permutation> = images.into_iter().map(|(p, _)| p).collect();
    let degree = index.max(1);
    let mul = |a: usize, b: usize| map[g.mul(section[a] as usize, section[b] as usize)] as usize;
    let group = Arc::new(FiniteGroup::build(degree, elements, &gens, g.cap(), Some(&mul)));
    Ok(Quotient {
        group,
        map,
        section,
        kernel: n.clone(),
    })
}

/// `G/N` with the trivial kernel short-circuited to `G` itself.
///
/// Identical to [`coset_action`] up to isomorphism; avoids the regular
/// representation when nothing is factored out.
pub fn quotient(n: &Subgroup) -> Result<Quotient> {
    if n.is_trivial() {
        let g = n.parent();
        return Ok(Quotient {
            group: g.clone(),
            map: (0..g.order() as u32).collect(),
            section: (0..g.order() as u32).collect(),
            kernel: n.clone(),
        });
    }
    coset_action(n)
}
