//! Subgroup operators: centralizers, normalizers, products, closures,
//! Sylow subgroups and the `O_p`, `O_{p'}`, `O_{p',p}` operators.

use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{GroupError, Result};
use crate::group::{quotient, FiniteGroup, Subgroup};
use crate::numbers::{p_part, prime_divisors};
use crate::perm::Permutation;

/// Resolve permutations to element indices of `g`.
pub fn indices_of(g: &FiniteGroup, elems: &[Permutation]) -> Result<Vec<usize>> {
    elems
        .iter()
        .map(|p| g.index_of(p).ok_or(GroupError::NotInParent))
        .collect()
}

/// `C_G(S)` for a set of element indices.
pub fn centralizer(g: &Arc<FiniteGroup>, elems: &[usize]) -> Subgroup {
    // centralizing ⟨S⟩ is the same as centralizing a generating set of it
    let gens = g.generated_by(elems).generators().to_vec();
    let mut set = FixedBitSet::with_capacity(g.order());
    for x in 0..g.order() {
        if gens.iter().all(|&s| g.commute(x, s)) {
            set.insert(x);
        }
    }
    Subgroup::from_set(g, set)
}

/// `C_G(S)` for permutations that must lie in `g`.
pub fn centralizer_of(g: &Arc<FiniteGroup>, elems: &[Permutation]) -> Result<Subgroup> {
    Ok(centralizer(g, &indices_of(g, elems)?))
}

/// `N_G(H)`.
pub fn normalizer(h: &Subgroup) -> Subgroup {
    let g = h.parent();
    let mut set = FixedBitSet::with_capacity(g.order());
    for x in 0..g.order() {
        if h.generators().iter().all(|&y| h.contains(g.conj(y, x))) {
            set.insert(x);
        }
    }
    Subgroup::from_set(g, set)
}

/// The literal product set `AB = {ab}`.
pub fn product_set(a: &Subgroup, b: &Subgroup) -> FixedBitSet {
    let g = a.parent();
    let mut set = FixedBitSet::with_capacity(g.order());
    let bs: Vec<usize> = b.elements().collect();
    for x in a.elements() {
        for &y in &bs {
            set.insert(g.mul(x, y));
        }
    }
    set
}

/// `AB` if it is a subgroup (equivalently `AB = BA`), otherwise `None`.
pub fn permutes(a: &Subgroup, b: &Subgroup) -> Result<Option<Subgroup>> {
    a.check_parent(b)?;
    Ok(permutes_unchecked(a, b))
}

pub(crate) fn permutes_unchecked(a: &Subgroup, b: &Subgroup) -> Option<Subgroup> {
    if a.is_subset_of(b) {
        return Some(b.clone());
    }
    if b.is_subset_of(a) {
        return Some(a.clone());
    }
    let ab = product_set(a, b);
    if !product_is_closed(a, &ab) {
        return None;
    }
    let mut gens = a.generators().to_vec();
    gens.extend_from_slice(b.generators());
    Some(Subgroup::from_parts(a.parent(), ab, gens))
}

/// True iff `AB = BA`, without building the subgroup.
pub(crate) fn permutes_fast(a: &Subgroup, b: &Subgroup) -> bool {
    if a.is_subset_of(b) || b.is_subset_of(a) {
        return true;
    }
    product_is_closed(a, &product_set(a, b))
}

/// `AB` is a subgroup iff `AB·a ⊆ AB` for each generator `a` of `A`: that
/// gives `BA ⊆ AB`, and both sets have the same size.
fn product_is_closed(a: &Subgroup, ab: &FixedBitSet) -> bool {
    let g = a.parent();
    ab.ones()
        .all(|z| a.generators().iter().all(|&x| ab.contains(g.mul(z, x))))
}

pub fn intersect(a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    a.check_parent(b)?;
    let mut set = a.set().clone();
    set.intersect_with(b.set());
    Ok(Subgroup::from_set(a.parent(), set))
}

/// `⟨A, B⟩`.
pub fn join(a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    a.check_parent(b)?;
    let mut gens = a.generators().to_vec();
    gens.extend_from_slice(b.generators());
    Ok(a.parent().generated_by(&gens))
}

/// Join of any number of subgroups of one parent.
pub fn join_all(g: &Arc<FiniteGroup>, subs: &[&Subgroup]) -> Result<Subgroup> {
    let mut gens = Vec::new();
    for s in subs {
        if !Arc::ptr_eq(s.parent(), g) {
            return Err(GroupError::NotInParent);
        }
        gens.extend_from_slice(s.generators());
    }
    Ok(g.generated_by(&gens))
}

/// Smallest subgroup containing `elems` and normalised by `conjugators`.
fn closure_under_conjugation(g: &Arc<FiniteGroup>, elems: &[usize], conjugators: &[usize]) -> Subgroup {
    let mut gens: Vec<usize> = Vec::new();
    let (mut set, mut list) = g.closure(&[]);
    for &e in elems {
        if !set.contains(e) {
            g.extend_closure(&mut set, &mut list, &gens, e);
            gens.push(e);
        }
    }
    let mut i = 0;
    while i < gens.len() {
        let h = gens[i];
        for &x in conjugators {
            let c = g.conj(h, x);
            if !set.contains(c) {
                g.extend_closure(&mut set, &mut list, &gens, c);
                gens.push(c);
            }
        }
        i += 1;
    }
    Subgroup::from_parts(g, set, gens)
}

/// Normal closure of a set of element indices in `g`.
pub fn normal_closure(g: &Arc<FiniteGroup>, elems: &[usize]) -> Subgroup {
    closure_under_conjugation(g, elems, g.generators())
}

pub fn normal_closure_of(g: &Arc<FiniteGroup>, elems: &[Permutation]) -> Result<Subgroup> {
    Ok(normal_closure(g, &indices_of(g, elems)?))
}

/// `H_G`, the largest normal subgroup of `G` inside `H`: the union of the
/// conjugacy classes of `G` contained in `H`.
pub fn core(h: &Subgroup) -> Subgroup {
    let g = h.parent();
    let mut set = FixedBitSet::with_capacity(g.order());
    for class in g.classes() {
        if class.iter().all(|&x| h.contains(x)) {
            for &x in class {
                set.insert(x);
            }
        }
    }
    Subgroup::from_set(g, set)
}

/// `[A, B]`, computed as the normal closure in `⟨A, B⟩` of the commutators
/// of generators.
pub fn commutator_subgroup(a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    a.check_parent(b)?;
    let g = a.parent();
    let mut comms = Vec::new();
    for &x in a.generators() {
        for &y in b.generators() {
            comms.push(g.comm(x, y));
        }
    }
    let mut conj = a.generators().to_vec();
    conj.extend_from_slice(b.generators());
    Ok(closure_under_conjugation(g, &comms, &conj))
}

/// A Sylow `p`-subgroup, by normalizer ascent from a `p`-element of maximal
/// order. Deterministic: candidates are scanned in element order.
pub fn sylow(g: &Arc<FiniteGroup>, p: u64) -> Subgroup {
    let target = p_part(g.order() as u64, p) as usize;
    if target == 1 {
        return g.trivial_subgroup();
    }
    let start = (0..g.order())
        .filter(|&x| x != 0 && g.is_p_element(x, p))
        .max_by_key(|&x| (g.elem_order(x), std::cmp::Reverse(x)))
        .expect("p divides |G| so a p-element exists");
    let mut sub = g.generated_by(&[start]);
    while sub.order() < target {
        let n = normalizer(&sub);
        let x = n
            .elements()
            .find(|&x| !sub.contains(x) && g.is_p_element(x, p))
            .expect("a non-Sylow p-subgroup is properly contained in the p-part of its normalizer");
        let mut gens = sub.generators().to_vec();
        gens.push(x);
        sub = g.generated_by(&gens);
    }
    sub
}

/// `O_p(G)`, the largest normal `p`-subgroup.
pub fn o_p(g: &Arc<FiniteGroup>, p: u64) -> Subgroup {
    core(&sylow(g, p))
}

/// `O_{p'}(G)`, the largest normal `p'`-subgroup, by greedy absorption of
/// conjugacy classes of `p'`-elements.
pub fn o_p_prime(g: &Arc<FiniteGroup>, p: u64) -> Subgroup {
    let mut n = g.trivial_subgroup();
    for class in g.classes() {
        let rep = class[0];
        if rep == 0 || !g.is_p_prime_element(rep, p) || n.contains(rep) {
            continue;
        }
        let mut elems = n.generators().to_vec();
        elems.push(rep);
        let m = normal_closure(g, &elems);
        if m.order() as u64 % p != 0 {
            n = m;
        }
    }
    n
}

/// `O_{p',p}(G)`, the preimage of `O_p(G/O_{p'}(G))`.
pub fn o_p_prime_p(g: &Arc<FiniteGroup>, p: u64) -> Result<Subgroup> {
    let n = o_p_prime(g, p);
    let q = quotient(&n)?;
    let op = o_p(q.group(), p);
    Ok(q.preimage_subgroup(&op))
}

/// Nilpotency of the subgroup with element set `set`: every Sylow subgroup is
/// normal, i.e. the `p`-elements number exactly the `p`-part of the order.
pub(crate) fn set_is_nilpotent(g: &FiniteGroup, set: &FixedBitSet, order: usize) -> bool {
    for p in prime_divisors(order as u64) {
        let count = set.ones().filter(|&x| g.is_p_element(x, p)).count();
        if count as u64 != p_part(order as u64, p) {
            return false;
        }
    }
    true
}

pub fn subgroup_is_nilpotent(h: &Subgroup) -> bool {
    set_is_nilpotent(h.parent(), h.set(), h.order())
}
