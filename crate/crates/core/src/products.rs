//! Permutability predicates for pairs of subgroups and product
//! decompositions `G = G_1 ⋯ G_n`.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{GroupError, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::ops::{commutator_subgroup, join_all, permutes_fast, permutes_unchecked, set_is_nilpotent};
use crate::arith::hypercenter;
use crate::series::FormationTag;

/// The distinct cyclic subgroups of `H`, in order of first generator.
pub fn cyclic_subgroups(h: &Subgroup) -> Vec<Subgroup> {
    let g = h.parent();
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut out = Vec::new();
    for x in h.elements() {
        let c = g.generated_by(&[x]);
        if seen.insert(c.set().clone()) {
            out.push(c);
        }
    }
    out
}

/// `A` permutes with every subgroup of `B` and `B` with every subgroup of `A`.
///
/// Checked on cyclic subgroups: if `A⟨b⟩ = ⟨b⟩A` for all `b ∈ H` then
/// `AH = HA`.
pub fn is_mutually_permutable(a: &Subgroup, b: &Subgroup) -> Result<bool> {
    a.check_parent(b)?;
    Ok(cyclic_subgroups(b).iter().all(|c| permutes_fast(a, c))
        && cyclic_subgroups(a).iter().all(|c| permutes_fast(b, c)))
}

/// Every subgroup of `A` permutes with every subgroup of `B`, checked on
/// cyclic pairs.
pub fn is_totally_permutable(a: &Subgroup, b: &Subgroup) -> Result<bool> {
    a.check_parent(b)?;
    let cb = cyclic_subgroups(b);
    Ok(cyclic_subgroups(a)
        .iter()
        .all(|x| cb.iter().all(|y| permutes_fast(x, y))))
}

/// `⟨x, y⟩` is nilpotent for all `x ∈ A`, `y ∈ B`.
pub fn is_n_connected(a: &Subgroup, b: &Subgroup) -> Result<bool> {
    a.check_parent(b)?;
    let g = a.parent();
    let mut memo: HashMap<(usize, usize), bool> = HashMap::new();
    for x in a.elements() {
        for y in b.elements() {
            if g.commute(x, y) {
                continue;
            }
            let key = (x.min(y), x.max(y));
            let ok = *memo.entry(key).or_insert_with(|| {
                let (set, list) = g.closure(&[x, y]);
                set_is_nilpotent(g, &set, list.len())
            });
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `G = G_1 ⋯ G_n` with `n ≥ 2`.
#[derive(Debug, Clone)]
pub struct ProductDecomposition {
    parent: Arc<FiniteGroup>,
    factors: Vec<Subgroup>,
}

impl ProductDecomposition {
    /// Checks that the iterated product set `G_1 G_2 ⋯ G_n` is the parent.
    pub fn new(factors: Vec<Subgroup>) -> Result<ProductDecomposition> {
        if factors.len() < 2 {
            return Err(GroupError::NotADecomposition("need at least two factors".into()));
        }
        let parent = factors[0].parent().clone();
        for f in &factors[1..] {
            factors[0].check_parent(f)?;
        }
        let mut set = FixedBitSet::with_capacity(parent.order());
        set.insert(0);
        for f in &factors {
            let elems: Vec<usize> = f.elements().collect();
            let mut next = FixedBitSet::with_capacity(parent.order());
            for x in set.ones() {
                for &y in &elems {
                    next.insert(parent.mul(x, y));
                }
            }
            set = next;
        }
        if set.count_ones(..) != parent.order() {
            return Err(GroupError::NotADecomposition(format!(
                "product of factors has {} of {} elements",
                set.count_ones(..),
                parent.order()
            )));
        }
        Ok(ProductDecomposition { parent, factors })
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn factors(&self) -> &[Subgroup] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Index pairs `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.factors.len();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }

    /// First pair `(i, j)` failing the predicate.
    pub fn first_bad_pair(
        &self,
        mut pred: impl FnMut(&Subgroup, &Subgroup) -> bool,
    ) -> Option<(usize, usize)> {
        self.pairs()
            .find(|&(i, j)| !pred(&self.factors[i], &self.factors[j]))
    }

    /// `G_i G_j` if it is a subgroup.
    pub fn pair_product(&self, i: usize, j: usize) -> Option<Subgroup> {
        permutes_unchecked(&self.factors[i], &self.factors[j])
    }

    /// `⟨G_j : j ≠ i⟩`, which is the product of the others when the factors
    /// permute pairwise.
    pub fn others(&self, i: usize) -> Subgroup {
        let rest: Vec<&Subgroup> = self
            .factors
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, f)| f)
            .collect();
        join_all(&self.parent, &rest).expect("factors share the parent")
    }
}

/// `[G_i, ∏_{j≠i} G_j] ≤ Z_𝔉(G)` for every `i`, with the factors pairwise
/// permutable.
pub fn hypercentral_commutator_condition(d: &ProductDecomposition, formation: FormationTag) -> Result<bool> {
    if let Some((i, j)) = d.first_bad_pair(permutes_fast) {
        return Err(GroupError::NotADecomposition(format!(
            "factors {} and {} do not permute",
            i + 1,
            j + 1
        )));
    }
    let z = hypercenter(d.parent(), formation)?;
    for (i, f) in d.factors().iter().enumerate() {
        let c = commutator_subgroup(f, &d.others(i))?;
        if !c.is_subset_of(&z) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{generate_group, subgroup_generated, DEFAULT_MAX_ORDER};
    use crate::lattice::all_subgroups;
    use crate::ops::{permutes, sylow};
    use crate::perm::{parse_cycles, Permutation};

    fn perm(deg: usize, s: &str) -> Permutation {
        Permutation::from_cycles(deg, &parse_cycles(s).unwrap()).unwrap()
    }

    fn group(deg: usize, gens: &[&str]) -> Arc<FiniteGroup> {
        let gens: Vec<_> = gens.iter().map(|s| perm(deg, s)).collect();
        generate_group(deg, &gens, DEFAULT_MAX_ORDER).unwrap()
    }

    fn sub(g: &Arc<FiniteGroup>, gens: &[&str]) -> Subgroup {
        let gens: Vec<_> = gens.iter().map(|s| perm(g.degree(), s)).collect();
        subgroup_generated(g, &gens).unwrap()
    }

    fn brute_mutual(a: &Subgroup, b: &Subgroup, subs: &[Subgroup]) -> bool {
        subs.iter().all(|h| {
            (!h.is_subset_of(b) || permutes(a, h).unwrap().is_some())
                && (!h.is_subset_of(a) || permutes(b, h).unwrap().is_some())
        })
    }

    fn brute_total(a: &Subgroup, b: &Subgroup, subs: &[Subgroup]) -> bool {
        let sa: Vec<_> = subs.iter().filter(|h| h.is_subset_of(a)).collect();
        let sb: Vec<_> = subs.iter().filter(|h| h.is_subset_of(b)).collect();
        sa.iter().all(|x| sb.iter().all(|y| permutes(x, y).unwrap().is_some()))
    }

    #[test]
    fn small_examples() {
        let s4 = group(4, &["(1 2 3 4)", "(1 2)"]);
        let p = sylow(&s4, 2);
        let a4 = sub(&s4, &["(1 2 3)", "(2 3 4)"]);
        assert!(is_mutually_permutable(&p, &a4).unwrap());
        assert!(!is_totally_permutable(&p, &a4).unwrap());
        let s3 = group(3, &["(1 2 3)", "(1 2)"]);
        let z3 = sub(&s3, &["(1 2 3)"]);
        let z2 = sub(&s3, &["(1 2)"]);
        assert!(is_totally_permutable(&z3, &z2).unwrap());
        assert!(!is_n_connected(&z3, &z2).unwrap());
        let t = sub(&s3, &["(1 3)"]);
        assert!(!is_mutually_permutable(&z2, &t).unwrap());
        // G with itself: every pair of subgroups of G would have to permute
        assert!(!is_totally_permutable(&s3.whole(), &s3.whole()).unwrap());
        assert!(is_totally_permutable(&s3.whole(), &s3.trivial_subgroup()).unwrap());
        let q8 = group(8, &["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"]);
        assert!(is_totally_permutable(&q8.whole(), &q8.whole()).unwrap());
    }

    #[test]
    fn cyclic_reductions_match_lattice() {
        let groups = [
            group(4, &["(1 2 3 4)", "(1 2)"]),
            group(4, &["(1 2 3 4)", "(1 3)"]),
            group(5, &["(1 2 3)", "(1 2)", "(4 5)"]),
            group(7, &["(1 2 3)", "(2 3)(4 5 6 7)"]),
        ];
        for g in &groups {
            let subs = all_subgroups(g).unwrap();
            for a in &subs {
                for b in &subs {
                    assert_eq!(is_mutually_permutable(a, b).unwrap(), brute_mutual(a, b, &subs));
                    let total = is_totally_permutable(a, b).unwrap();
                    assert_eq!(total, brute_total(a, b, &subs));
                    if total {
                        assert!(is_mutually_permutable(a, b).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn n_connected_direct_factors() {
        let g = group(8, &["(1 2 3)", "(1 2)", "(4 5 6 7 8)"]);
        let a = sub(&g, &["(1 2 3)", "(1 2)"]);
        let b = sub(&g, &["(4 5 6 7 8)"]);
        assert!(is_n_connected(&a, &b).unwrap());
        let d = ProductDecomposition::new(vec![a, b]).unwrap();
        assert!(hypercentral_commutator_condition(&d, FormationTag::Nilpotent).unwrap());
    }

    #[test]
    fn decomposition_checks() {
        let s3 = group(3, &["(1 2 3)", "(1 2)"]);
        let z3 = sub(&s3, &["(1 2 3)"]);
        let z2 = sub(&s3, &["(1 2)"]);
        let t = sub(&s3, &["(1 3)"]);
        assert!(ProductDecomposition::new(vec![z2.clone(), t.clone()]).is_err());
        assert!(ProductDecomposition::new(vec![z3.clone()]).is_err());
        let d = ProductDecomposition::new(vec![z3, z2]).unwrap();
        assert!(hypercentral_commutator_condition(&d, FormationTag::Supersoluble).unwrap());
        assert!(!hypercentral_commutator_condition(&d, FormationTag::Nilpotent).unwrap());
    }
}
