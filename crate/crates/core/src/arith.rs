//! The Hawkes, Sylow and N-critical graphs, Schmidt subgroups, and
//! hypercenters for the nilpotent and supersoluble formations.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{GroupError, Result};
use crate::graph::PrimeDigraph;
use crate::group::{quotient, FiniteGroup, Subgroup};
use crate::numbers::{is_prime, p_part, prime_divisors};
use crate::ops::{centralizer, normal_closure, normalizer, o_p_prime_p, permutes_unchecked, set_is_nilpotent, sylow};
use crate::series::{is_nilpotent, is_supersoluble, minimal_normal_subgroups, FormationTag};

/// Which arithmetic graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GraphKind {
    Sylow,
    NCritical,
    Hawkes,
}

impl GraphKind {
    pub const ALL: [GraphKind; 3] = [GraphKind::Sylow, GraphKind::NCritical, GraphKind::Hawkes];

    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Sylow => "sylow",
            GraphKind::NCritical => "ncrit",
            GraphKind::Hawkes => "hawkes",
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn vertex_set(g: &FiniteGroup) -> BTreeSet<u64> {
    g.primes().iter().copied().collect()
}

/// `Γ_H(G)`: `(p, q)` whenever `q` divides `|G : O_{p',p}(G)|`.
pub fn hawkes_graph(g: &Arc<FiniteGroup>) -> Result<PrimeDigraph> {
    let mut graph = PrimeDigraph::edgeless(vertex_set(g));
    for &p in g.primes() {
        let n = o_p_prime_p(g, p)?;
        for q in prime_divisors((g.order() / n.order()) as u64) {
            graph.add_edge(p, q);
        }
    }
    Ok(graph)
}

/// Primes dividing `|N_G(P) : P C_G(P)|` for the given Sylow `p`-subgroup.
pub fn sylow_edge_targets(syl: &Subgroup) -> Vec<u64> {
    let g = syl.parent();
    let n = normalizer(syl);
    let c = centralizer(g, syl.generators());
    let pc = permutes_unchecked(syl, &c).expect("C_G(P) is normal in N_G(P)");
    prime_divisors((n.order() / pc.order()) as u64)
}

/// `Γ_s(G)`: `(p, q)` whenever `q` divides `|N_G(P) : P C_G(P)|`.
pub fn sylow_graph(g: &Arc<FiniteGroup>) -> PrimeDigraph {
    let mut graph = PrimeDigraph::edgeless(vertex_set(g));
    for &p in g.primes() {
        for q in sylow_edge_targets(&sylow(g, p)) {
            graph.add_edge(p, q);
        }
    }
    graph
}

/// A Schmidt `(p, q)`-subgroup: `P ⋊ Q` with every proper subgroup nilpotent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchmidtWitness {
    pub p: u64,
    pub q: u64,
    pub subgroup: Subgroup,
}

fn is_pq_number(n: u64, p: u64, q: u64) -> bool {
    let mut n = n;
    while n % p == 0 {
        n /= p;
    }
    while n % q == 0 {
        n /= q;
    }
    n == 1
}

fn p_elements(g: &FiniteGroup, set: &FixedBitSet, p: u64) -> Vec<usize> {
    set.ones().filter(|&x| x != 0 && g.is_p_element(x, p)).collect()
}

fn is_p_closed(g: &FiniteGroup, set: &FixedBitSet, order: usize, p: u64) -> bool {
    let count = set.ones().filter(|&x| g.is_p_element(x, p)).count();
    count as u64 == p_part(order as u64, p)
}

/// Inside a `p`-closed `{p, q}`-subgroup `H`, the first proper non-nilpotent
/// `⟨x, y⟩` with `x` a `p`-element and `y` a `q`-element.
///
/// Every non-nilpotent subgroup of `H` is again `p`-closed and so contains a
/// Schmidt `(p, q)`-subgroup generated this way; `None` means `H` is itself
/// minimal non-nilpotent.
fn proper_non_nilpotent_pq(
    g: &FiniteGroup,
    h: &FixedBitSet,
    order: usize,
    p: u64,
    q: u64,
) -> Option<(FixedBitSet, usize, [usize; 2])> {
    let xs = p_elements(g, h, p);
    let ys = p_elements(g, h, q);
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    for &y in &ys {
        for &x in &xs {
            if g.commute(x, y) {
                continue;
            }
            let (set, list) = g.closure(&[x, y]);
            if list.len() == order || !seen.insert(set.clone()) {
                continue;
            }
            if !set_is_nilpotent(g, &set, list.len()) {
                return Some((set, list.len(), [x, y]));
            }
        }
    }
    None
}

/// A Schmidt `(p, q)`-subgroup of `G`, if one exists.
///
/// Scans `y` over representatives of classes of `q`-elements and `x` over all
/// `p`-elements. Up to conjugacy every Schmidt `(p, q)`-subgroup is
/// `⟨x, y⟩` for such a pair, so an empty result is conclusive.
pub fn has_schmidt_pq(g: &Arc<FiniteGroup>, p: u64, q: u64) -> Option<SchmidtWitness> {
    if p == q || g.order() as u64 % p != 0 || g.order() as u64 % q != 0 {
        return None;
    }
    let q_reps: Vec<usize> = g
        .classes()
        .iter()
        .map(|c| c[0])
        .filter(|&y| y != 0 && g.is_p_element(y, q))
        .collect();
    let xs: Vec<usize> = (1..g.order()).filter(|&x| g.is_p_element(x, p)).collect();
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    for &y in &q_reps {
        for &x in &xs {
            if g.commute(x, y) {
                continue;
            }
            let Some((set, list)) =
                g.closure_while(&[x, y], |z| is_pq_number(g.elem_order(z), p, q))
            else {
                continue;
            };
            if !seen.insert(set.clone()) {
                continue;
            }
            let order = list.len();
            if !is_p_closed(g, &set, order, p) || set_is_nilpotent(g, &set, order) {
                continue;
            }
            let (mut set, mut order, mut gens) = (set, order, [x, y]);
            while let Some((s, o, gs)) = proper_non_nilpotent_pq(g, &set, order, p, q) {
                set = s;
                order = o;
                gens = gs;
            }
            return Some(SchmidtWitness {
                p,
                q,
                subgroup: Subgroup::from_parts(g, set, gens.to_vec()),
            });
        }
    }
    None
}

/// `Γ_Nc(G)`: `(p, q)` whenever `G` has a Schmidt `(p, q)`-subgroup. Never has loops.
pub fn n_critical_graph(g: &Arc<FiniteGroup>) -> PrimeDigraph {
    let mut graph = PrimeDigraph::edgeless(vertex_set(g));
    if is_nilpotent(g) {
        return graph;
    }
    for &p in g.primes() {
        for &q in g.primes() {
            if p != q && has_schmidt_pq(g, p, q).is_some() {
                graph.add_edge(p, q);
            }
        }
    }
    graph
}

pub fn graph_of(kind: GraphKind, g: &Arc<FiniteGroup>) -> Result<PrimeDigraph> {
    Ok(match kind {
        GraphKind::Sylow => sylow_graph(g),
        GraphKind::NCritical => n_critical_graph(g),
        GraphKind::Hawkes => hawkes_graph(g)?,
    })
}

/// The three graphs of one group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphTriple {
    pub sylow: PrimeDigraph,
    pub ncrit: PrimeDigraph,
    pub hawkes: PrimeDigraph,
}

impl GraphTriple {
    pub fn of(g: &Arc<FiniteGroup>) -> Result<GraphTriple> {
        Ok(GraphTriple {
            sylow: sylow_graph(g),
            ncrit: n_critical_graph(g),
            hawkes: hawkes_graph(g)?,
        })
    }

    pub fn get(&self, kind: GraphKind) -> &PrimeDigraph {
        match kind {
            GraphKind::Sylow => &self.sylow,
            GraphKind::NCritical => &self.ncrit,
            GraphKind::Hawkes => &self.hawkes,
        }
    }
}

/// `(p, q)` if `G` is a Schmidt `(p, q)`-group.
///
/// Minimality is checked on two-generated proper subgroups only: a
/// non-nilpotent group always contains a minimal non-nilpotent subgroup, and
/// those are two-generated.
pub fn is_schmidt(g: &Arc<FiniteGroup>) -> Option<(u64, u64)> {
    let primes = g.primes();
    if primes.len() != 2 || is_nilpotent(g) {
        return None;
    }
    let reps: Vec<usize> = g.classes().iter().map(|c| c[0]).skip(1).collect();
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    for &a in &reps {
        for b in 1..g.order() {
            if g.commute(a, b) {
                continue;
            }
            let (set, list) = g.closure(&[a, b]);
            if list.len() == g.order() || !seen.insert(set.clone()) {
                continue;
            }
            if !set_is_nilpotent(g, &set, list.len()) {
                return None;
            }
        }
    }
    let (p, q) = (primes[0], primes[1]);
    if sylow(g, p).is_normal() {
        Some((p, q))
    } else if sylow(g, q).is_normal() {
        Some((q, p))
    } else {
        None
    }
}

pub fn is_schmidt_subgroup(h: &Subgroup) -> Option<(u64, u64)> {
    is_schmidt(&h.to_group())
}

/// Every Schmidt subgroup of `G` is supersoluble.
pub fn schmidt_all_supersoluble(g: &Arc<FiniteGroup>) -> bool {
    first_non_supersoluble_schmidt(g).is_none()
}

/// A Schmidt subgroup of `G` that is not supersoluble, if any.
pub fn first_non_supersoluble_schmidt(g: &Arc<FiniteGroup>) -> Option<SchmidtWitness> {
    for &p in g.primes() {
        for &q in g.primes() {
            if p == q {
                continue;
            }
            for w in schmidt_subgroups_pq(g, p, q) {
                if !is_supersoluble(&w.subgroup.to_group()) {
                    return Some(w);
                }
            }
        }
    }
    None
}

/// Schmidt `(p, q)`-subgroups of `G`, one or more per conjugacy class.
pub fn schmidt_subgroups_pq(g: &Arc<FiniteGroup>, p: u64, q: u64) -> Vec<SchmidtWitness> {
    let mut out = Vec::new();
    let q_reps: Vec<usize> = g
        .classes()
        .iter()
        .map(|c| c[0])
        .filter(|&y| y != 0 && g.is_p_element(y, q))
        .collect();
    let xs: Vec<usize> = (1..g.order()).filter(|&x| g.is_p_element(x, p)).collect();
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    for &y in &q_reps {
        for &x in &xs {
            if g.commute(x, y) {
                continue;
            }
            let Some((set, list)) =
                g.closure_while(&[x, y], |z| is_pq_number(g.elem_order(z), p, q))
            else {
                continue;
            };
            if !seen.insert(set.clone()) {
                continue;
            }
            let order = list.len();
            if !is_p_closed(g, &set, order, p) || set_is_nilpotent(g, &set, order) {
                continue;
            }
            if proper_non_nilpotent_pq(g, &set, order, p, q).is_none() {
                out.push(SchmidtWitness {
                    p,
                    q,
                    subgroup: Subgroup::from_parts(g, set, vec![x, y]),
                });
            }
        }
    }
    out
}

fn check_chief_factor(h: &Subgroup, k: &Subgroup) -> Result<()> {
    h.check_parent(k)?;
    let g = h.parent();
    if !k.is_subset_of(h) || k.order() == h.order() || !h.is_normal() || !k.is_normal() {
        return Err(GroupError::NotChiefFactor);
    }
    // minimal: the normal closure of K with any class inside H \ K is H
    for class in g.classes() {
        let x = class[0];
        if h.contains(x) && !k.contains(x) {
            let mut elems = k.generators().to_vec();
            elems.push(x);
            if normal_closure(g, &elems).order() != h.order() {
                return Err(GroupError::NotChiefFactor);
            }
        }
    }
    Ok(())
}

fn f_central_unchecked(h: &Subgroup, k: &Subgroup, formation: FormationTag) -> bool {
    match formation {
        FormationTag::Nilpotent => {
            let g = h.parent();
            g.generators()
                .iter()
                .all(|&x| h.generators().iter().all(|&y| k.contains(g.comm(y, x))))
        }
        FormationTag::Supersoluble => is_prime((h.order() / k.order()) as u64),
    }
}

/// Whether the chief factor `H/K` of `G` is central for the formation.
///
/// Nilpotent: `G` acts trivially on `H/K`. Supersoluble: `|H/K|` is prime
/// (its automorphism group is then cyclic of order dividing `p − 1`).
pub fn f_central(h: &Subgroup, k: &Subgroup, formation: FormationTag) -> Result<bool> {
    check_chief_factor(h, k)?;
    Ok(f_central_unchecked(h, k, formation))
}

/// `Z_𝔉(G)` by greedy ascent through central chief factors.
pub fn hypercenter(g: &Arc<FiniteGroup>, formation: FormationTag) -> Result<Subgroup> {
    let mut z = g.trivial_subgroup();
    'grow: while !z.is_whole() {
        let q = quotient(&z)?;
        for m in minimal_normal_subgroups(q.group())? {
            let lifted = q.preimage_subgroup(&m);
            if f_central_unchecked(&lifted, &z, formation) {
                z = lifted;
                continue 'grow;
            }
        }
        break;
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{generate_group, subgroup_generated, DEFAULT_MAX_ORDER};
    use crate::perm::{parse_cycles, Permutation};
    use crate::series::upper_central_series;

    fn perm(deg: usize, s: &str) -> Permutation {
        Permutation::from_cycles(deg, &parse_cycles(s).unwrap()).unwrap()
    }

    fn group(deg: usize, gens: &[&str]) -> Arc<FiniteGroup> {
        let gens: Vec<_> = gens.iter().map(|s| perm(deg, s)).collect();
        generate_group(deg, &gens, DEFAULT_MAX_ORDER).unwrap()
    }

    fn s3() -> Arc<FiniteGroup> {
        group(3, &["(1 2 3)", "(1 2)"])
    }
    fn s4() -> Arc<FiniteGroup> {
        group(4, &["(1 2 3 4)", "(1 2)"])
    }
    fn a4() -> Arc<FiniteGroup> {
        group(4, &["(1 2 3)", "(2 3 4)"])
    }
    fn d8() -> Arc<FiniteGroup> {
        group(4, &["(1 2 3 4)", "(1 3)"])
    }

    fn edges(g: &PrimeDigraph) -> Vec<(u64, u64)> {
        g.edges().iter().copied().collect()
    }

    #[test]
    fn hawkes_examples() {
        assert_eq!(edges(&hawkes_graph(&s3()).unwrap()), vec![(3, 2)]);
        assert_eq!(edges(&hawkes_graph(&s4()).unwrap()), vec![(2, 2), (2, 3), (3, 2)]);
        assert_eq!(edges(&hawkes_graph(&a4()).unwrap()), vec![(2, 3)]);
    }

    #[test]
    fn sylow_graph_examples() {
        assert_eq!(edges(&sylow_graph(&s3())), vec![(3, 2)]);
        assert_eq!(edges(&sylow_graph(&a4())), vec![(2, 3)]);
        assert_eq!(edges(&sylow_graph(&s4())), vec![(3, 2)]);
    }

    #[test]
    fn sylow_graph_is_conjugation_invariant() {
        let g = group(5, &["(1 2 3 4 5)", "(1 2)"]);
        for &p in g.primes() {
            let syl = sylow(&g, p);
            let base = sylow_edge_targets(&syl);
            for x in (0..g.order()).step_by(7) {
                assert_eq!(sylow_edge_targets(&syl.conjugate(x)), base);
            }
        }
    }

    #[test]
    fn schmidt_recognition() {
        assert_eq!(is_schmidt(&s3()), Some((3, 2)));
        assert_eq!(is_schmidt(&a4()), Some((2, 3)));
        assert_eq!(is_schmidt(&d8()), None);
        assert_eq!(is_schmidt(&s4()), None);
        // Z3 ⋊ Z4
        let dic = group(7, &["(1 2 3)", "(2 3)(4 5 6 7)"]);
        assert_eq!(dic.order(), 12);
        assert_eq!(is_schmidt(&dic), Some((3, 2)));
    }

    #[test]
    fn schmidt_witnesses() {
        let g = s4();
        let w = has_schmidt_pq(&g, 2, 3).unwrap();
        assert_eq!(w.subgroup.order(), 12);
        assert_eq!(is_schmidt_subgroup(&w.subgroup), Some((2, 3)));
        let w = has_schmidt_pq(&g, 3, 2).unwrap();
        assert_eq!(w.subgroup.order(), 6);
        assert_eq!(is_schmidt_subgroup(&w.subgroup), Some((3, 2)));
        assert!(has_schmidt_pq(&d8(), 2, 3).is_none());
        assert!(has_schmidt_pq(&d8(), 2, 2).is_none());
    }

    #[test]
    fn n_critical_examples() {
        assert_eq!(edges(&n_critical_graph(&s3())), vec![(3, 2)]);
        assert_eq!(edges(&n_critical_graph(&s4())), vec![(2, 3), (3, 2)]);
        assert!(n_critical_graph(&d8()).edges().is_empty());
    }

    #[test]
    fn central_factors() {
        let g = s3();
        let z3 = subgroup_generated(&g, &[perm(3, "(1 2 3)")]).unwrap();
        let one = g.trivial_subgroup();
        assert!(f_central(&z3, &one, FormationTag::Supersoluble).unwrap());
        assert!(!f_central(&z3, &one, FormationTag::Nilpotent).unwrap());
        let a = a4();
        let v4 = subgroup_generated(&a, &[perm(4, "(1 2)(3 4)"), perm(4, "(1 3)(2 4)")]).unwrap();
        assert!(!f_central(&v4, &a.trivial_subgroup(), FormationTag::Supersoluble).unwrap());
        // A4/1 is not a chief factor
        assert_eq!(
            f_central(&a.whole(), &a.trivial_subgroup(), FormationTag::Nilpotent).unwrap_err(),
            GroupError::NotChiefFactor
        );
    }

    #[test]
    fn hypercenter_examples() {
        assert!(hypercenter(&s3(), FormationTag::Supersoluble).unwrap().is_whole());
        assert!(hypercenter(&a4(), FormationTag::Supersoluble).unwrap().is_trivial());
        assert!(hypercenter(&s4(), FormationTag::Nilpotent).unwrap().is_trivial());
        let d = d8();
        assert!(hypercenter(&d, FormationTag::Nilpotent).unwrap().is_whole());
        let z6xs3 = group(6, &["(1 2 3)", "(1 2)", "(4 5)"]);
        let z = hypercenter(&z6xs3, FormationTag::Nilpotent).unwrap();
        assert_eq!(z, upper_central_series(&z6xs3).unwrap().pop().unwrap());
        assert_eq!(z.order(), 2);
    }

    #[test]
    fn schmidt_supersolubility() {
        assert!(!schmidt_all_supersoluble(&s4()));
        assert!(schmidt_all_supersoluble(&s3()));
        assert!(schmidt_all_supersoluble(&d8()));
        let w = first_non_supersoluble_schmidt(&s4()).unwrap();
        assert_eq!(w.subgroup.order(), 12);
    }

    fn oracle_groups() -> Vec<Arc<FiniteGroup>> {
        vec![
            s3(),
            s4(),
            a4(),
            d8(),
            group(7, &["(1 2 3)", "(2 3)(4 5 6 7)"]),
            group(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]),
            group(5, &["(1 2 3)", "(1 2)", "(4 5)"]),
            group(5, &["(1 2 3 4 5)", "(2 3 5 4)"]),
            group(6, &["(1 2 3)", "(1 2)", "(4 5 6)", "(4 5)"]),
            group(5, &["(1 2 3)", "(3 4 5)"]),
        ]
    }

    fn schmidt_by_lattice(h: &Arc<FiniteGroup>) -> Option<(u64, u64)> {
        if h.primes().len() != 2 || is_nilpotent(h) {
            return None;
        }
        let subs = crate::lattice::all_subgroups(h).unwrap();
        if subs.iter().any(|s| !s.is_whole() && !crate::ops::subgroup_is_nilpotent(s)) {
            return None;
        }
        let (p, q) = (h.primes()[0], h.primes()[1]);
        if sylow(h, p).is_normal() {
            Some((p, q))
        } else if sylow(h, q).is_normal() {
            Some((q, p))
        } else {
            None
        }
    }

    #[test]
    fn schmidt_scan_matches_lattice() {
        for g in oracle_groups() {
            assert_eq!(is_schmidt(&g), schmidt_by_lattice(&g));
            let mut expected = PrimeDigraph::edgeless(vertex_set(&g));
            for s in crate::lattice::all_subgroups(&g).unwrap() {
                if let Some((p, q)) = schmidt_by_lattice(&s.to_group()) {
                    expected.add_edge(p, q);
                }
            }
            assert_eq!(n_critical_graph(&g), expected, "order {}", g.order());
            for &p in g.primes() {
                for &q in g.primes() {
                    if let Some(w) = has_schmidt_pq(&g, p, q) {
                        assert_eq!(schmidt_by_lattice(&w.subgroup.to_group()), Some((p, q)));
                    }
                }
            }
        }
    }

    fn is_p_nilpotent(n: &Subgroup, p: u64) -> bool {
        let g = n.parent();
        let comp: Vec<usize> = n.elements().filter(|&x| g.is_p_prime_element(x, p)).collect();
        let target = n.order() as u64 / p_part(n.order() as u64, p);
        comp.len() as u64 == target
            && comp.iter().all(|&a| comp.iter().all(|&b| g.is_p_prime_element(g.mul(a, b), p)))
    }

    #[test]
    fn hawkes_matches_normal_subgroup_oracle() {
        for g in oracle_groups() {
            let mut expected = PrimeDigraph::edgeless(vertex_set(&g));
            for &p in g.primes() {
                let best = crate::lattice::normal_subgroups(&g)
                    .into_iter()
                    .filter(|n| is_p_nilpotent(n, p))
                    .map(|n| n.order())
                    .max()
                    .unwrap();
                for q in prime_divisors((g.order() / best) as u64) {
                    expected.add_edge(p, q);
                }
            }
            assert_eq!(hawkes_graph(&g).unwrap(), expected);
        }
    }

    /// `(H/K) ⋊ (G/C_G(H/K))` as a permutation group on the cosets of `K` in `H`.
    fn semidirect_on_factor(h: &Subgroup, k: &Subgroup) -> Arc<FiniteGroup> {
        let g = h.parent();
        let coset_min = |x: usize| k.elements().map(|y| g.mul(y, x)).min().unwrap();
        let reps: Vec<usize> = {
            let mut r: Vec<usize> = h.elements().map(coset_min).collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        let pos = |x: usize| reps.binary_search(&coset_min(x)).unwrap() + 1;
        let mut gens = Vec::new();
        for &t in h.generators() {
            gens.push(reps.iter().map(|&r| pos(g.mul(r, t))).collect::<Vec<_>>());
        }
        for &c in g.generators() {
            gens.push(reps.iter().map(|&r| pos(g.conj(r, c))).collect::<Vec<_>>());
        }
        let gens: Vec<Permutation> =
            gens.into_iter().map(|im| Permutation::from_images(&im).unwrap()).collect();
        generate_group(reps.len(), &gens, DEFAULT_MAX_ORDER).unwrap()
    }

    #[test]
    fn f_central_matches_semidirect_oracle() {
        for g in oracle_groups() {
            let series = crate::series::chief_series(&g).unwrap();
            for w in series.terms().windows(2) {
                let (k, h) = (&w[0], &w[1]);
                let sd = semidirect_on_factor(h, k);
                assert_eq!(f_central(h, k, FormationTag::Supersoluble).unwrap(), is_supersoluble(&sd));
                assert_eq!(f_central(h, k, FormationTag::Nilpotent).unwrap(), is_nilpotent(&sd));
            }
        }
    }
}
