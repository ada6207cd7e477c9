//! Exhaustive subgroup enumeration for small groups. These are oracles: slow,
//! literal, and capped at [`ORACLE_CAP`].

use std::collections::HashSet;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{GroupError, Result};
use crate::group::{FiniteGroup, Subgroup, ORACLE_CAP};
use crate::ops::normal_closure;

fn check_cap(g: &FiniteGroup) -> Result<()> {
    if g.order() > ORACLE_CAP {
        Err(GroupError::CapExceeded { cap: ORACLE_CAP })
    } else {
        Ok(())
    }
}

fn sort_subgroups(subs: &mut [Subgroup]) {
    subs.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.elements().cmp(b.elements()))
    });
}

/// The full subgroup lattice: cyclic subgroups closed under joins.
///
/// Sorted by order, then by element sequence.
pub fn all_subgroups(g: &Arc<FiniteGroup>) -> Result<Vec<Subgroup>> {
    check_cap(g)?;
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut cyclic: Vec<usize> = Vec::new();
    let mut subs: Vec<Subgroup> = Vec::new();
    for x in 0..g.order() {
        let c = g.generated_by(&[x]);
        if seen.insert(c.set().clone()) {
            if x != 0 {
                cyclic.push(x);
            }
            subs.push(c);
        }
    }
    // every subgroup is a join of cyclic subgroups
    let mut i = 0;
    while i < subs.len() {
        let h = subs[i].clone();
        for &c in &cyclic {
            if h.contains(c) {
                continue;
            }
            let mut set = h.set().clone();
            let mut list: Vec<usize> = h.elements().collect();
            g.extend_closure(&mut set, &mut list, h.generators(), c);
            if seen.insert(set.clone()) {
                let mut gens = h.generators().to_vec();
                gens.push(c);
                subs.push(Subgroup::from_parts(g, set, gens));
            }
        }
        i += 1;
    }
    sort_subgroups(&mut subs);
    Ok(subs)
}

/// All normal subgroups: normal closures of single classes, closed under join.
pub fn normal_subgroups(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut subs: Vec<Subgroup> = Vec::new();
    for class in g.classes() {
        let n = normal_closure(g, &[class[0]]);
        if seen.insert(n.set().clone()) {
            subs.push(n);
        }
    }
    let base = subs.clone();
    let mut i = 0;
    while i < subs.len() {
        let h = subs[i].clone();
        for b in &base {
            if b.is_subset_of(&h) {
                continue;
            }
            let mut gens = h.generators().to_vec();
            gens.extend_from_slice(b.generators());
            let j = g.generated_by(&gens);
            if seen.insert(j.set().clone()) {
                subs.push(j);
            }
        }
        i += 1;
    }
    sort_subgroups(&mut subs);
    subs
}

/// Inclusion-maximal proper subgroups.
pub fn maximal_subgroups(g: &Arc<FiniteGroup>) -> Result<Vec<Subgroup>> {
    let subs = all_subgroups(g)?;
    let proper: Vec<&Subgroup> = subs.iter().filter(|s| !s.is_whole()).collect();
    Ok(proper
        .iter()
        .filter(|h| {
            !proper
                .iter()
                .any(|k| k.order() > h.order() && h.is_subset_of(k))
        })
        .map(|h| (*h).clone())
        .collect())
}

/// `Φ(G)`, the intersection of the maximal subgroups.
pub fn frattini(g: &Arc<FiniteGroup>) -> Result<Subgroup> {
    let maximal = maximal_subgroups(g)?;
    let mut set = FixedBitSet::with_capacity(g.order());
    set.insert_range(..);
    for m in &maximal {
        set.intersect_with(m.set());
    }
    Ok(Subgroup::from_set(g, set))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{generate_group, DEFAULT_MAX_ORDER};
    use crate::perm::{parse_cycles, Permutation};

    fn group(deg: usize, gens: &[&str]) -> Arc<FiniteGroup> {
        let gens: Vec<_> = gens
            .iter()
            .map(|s| Permutation::from_cycles(deg, &parse_cycles(s).unwrap()).unwrap())
            .collect();
        generate_group(deg, &gens, DEFAULT_MAX_ORDER).unwrap()
    }

    #[test]
    fn lattice_sizes() {
        assert_eq!(all_subgroups(&group(3, &["(1 2 3)", "(1 2)"])).unwrap().len(), 6);
        assert_eq!(all_subgroups(&group(7, &["(1 2 3 4 5 6 7)"])).unwrap().len(), 2);
        assert_eq!(all_subgroups(&group(4, &["(1 2)", "(3 4)"])).unwrap().len(), 5);
        assert_eq!(all_subgroups(&group(4, &["(1 2 3 4)", "(1 2)"])).unwrap().len(), 30);
        assert_eq!(all_subgroups(&group(5, &["(1 2 3 4 5)", "(1 2)"])).unwrap().len(), 156);
        let big = group(6, &["(1 2 3 4 5 6)", "(1 2)"]);
        assert_eq!(all_subgroups(&big).unwrap_err(), GroupError::CapExceeded { cap: ORACLE_CAP });
    }

    #[test]
    fn lattice_members_are_closed_and_lagrange() {
        let g = group(4, &["(1 2 3 4)", "(1 2)"]);
        for h in all_subgroups(&g).unwrap() {
            assert_eq!(g.order() % h.order(), 0);
            for a in h.elements() {
                assert!(h.contains(g.inv(a)));
                for b in h.elements() {
                    assert!(h.contains(g.mul(a, b)));
                }
            }
        }
    }

    #[test]
    fn normal_subgroup_orders() {
        let orders: Vec<usize> = normal_subgroups(&group(4, &["(1 2 3 4)", "(1 2)"]))
            .iter()
            .map(Subgroup::order)
            .collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        // abelian: every subgroup is normal
        let v = group(6, &["(1 2)", "(3 4)", "(5 6)"]);
        assert_eq!(normal_subgroups(&v).len(), all_subgroups(&v).unwrap().len());
    }

    #[test]
    fn frattini_examples() {
        assert!(frattini(&group(3, &["(1 2 3)", "(1 2)"])).unwrap().is_trivial());
        assert_eq!(frattini(&group(4, &["(1 2 3 4)"])).unwrap().order(), 2);
        let q8 = group(8, &["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"]);
        assert_eq!(frattini(&q8).unwrap().order(), 2);
    }
}
