//! Exhaustive factorization scans over the corpus for the open questions.
//!
//! Scanners report and never assert. Factorizations are enumerated up to
//! simultaneous conjugation: the first factor runs over representatives of
//! subgroup classes. Unordered duplicates are removed by element-set digest.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::arith::GraphKind;
use crate::corpus::NamedGroup;
use crate::error::{GroupError, Result};
use crate::graph::{gamma_mut, PrimeDigraph};
use crate::group::{FiniteGroup, Subgroup, ORACLE_CAP};
use crate::lattice::{all_subgroups, normal_subgroups};
use crate::ops::{permutes_fast, permutes_unchecked};
use crate::products::is_mutually_permutable;
use crate::verify::GraphCache;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Question {
    Q1,
    Q2,
    Q3,
    Q4,
    Q5,
}

impl Question {
    pub const ALL: [Question; 5] = [Question::Q1, Question::Q2, Question::Q3, Question::Q4, Question::Q5];

    pub fn name(self) -> &'static str {
        match self {
            Question::Q1 => "q1",
            Question::Q2 => "q2",
            Question::Q3 => "q3",
            Question::Q4 => "q4",
            Question::Q5 => "q5",
        }
    }

    fn needs_lattice(self) -> bool {
        !matches!(self, Question::Q1 | Question::Q2)
    }
}

impl fmt::Display for Question {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Question {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Question> {
        Question::ALL
            .into_iter()
            .find(|q| q.name() == s.to_ascii_lowercase())
            .ok_or_else(|| GroupError::Unknown(format!("question '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Violation(Option<(u64, u64)>),
    /// Group too large for subgroup enumeration.
    Skipped,
}

/// One scanned decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRecord {
    pub question: Question,
    pub group: String,
    pub factor_orders: Vec<usize>,
    pub digest: String,
    pub outcome: Outcome,
}

impl fmt::Display for ScanRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orders: Vec<String> = self.factor_orders.iter().map(|o| o.to_string()).collect();
        write!(f, "SCAN {} group={}", self.question, self.group)?;
        match &self.outcome {
            Outcome::Skipped => write!(f, " SKIPPED order exceeds {ORACLE_CAP}"),
            Outcome::Holds => write!(f, " factors={} digest={} HOLDS", orders.join(","), self.digest),
            Outcome::Violation(w) => {
                write!(f, " factors={} digest={} VIOLATION", orders.join(","), self.digest)?;
                if let Some((p, q)) = w {
                    write!(f, " witness=({p},{q})")?;
                }
                Ok(())
            }
        }
    }
}

pub fn count_violations(records: &[ScanRecord]) -> usize {
    records.iter().filter(|r| matches!(r.outcome, Outcome::Violation(_))).count()
}

/// Digest of an unordered family of subgroups: SHA-256 of the sorted element
/// sets, first 16 hex digits.
pub fn factor_digest(factors: &[&Subgroup]) -> String {
    let mut sets: Vec<Vec<usize>> = factors.iter().map(|f| f.elements().collect()).collect();
    sets.sort();
    let mut h = Sha256::new();
    for s in &sets {
        for &e in s {
            h.update((e as u64).to_le_bytes());
        }
        h.update(b"|");
    }
    hex::encode(h.finalize())[..16].to_string()
}

fn product_order(a: &Subgroup, b: &Subgroup) -> usize {
    a.order() * b.order() / a.set().intersection_count(b.set())
}

/// Conjugacy class id of each subgroup in a list closed under conjugation.
pub fn subgroup_classes(g: &FiniteGroup, subs: &[Subgroup]) -> Vec<usize> {
    let index: HashMap<&FixedBitSet, usize> = subs.iter().enumerate().map(|(i, s)| (s.set(), i)).collect();
    let mut class = vec![usize::MAX; subs.len()];
    let mut next = 0;
    for i in 0..subs.len() {
        if class[i] != usize::MAX {
            continue;
        }
        class[i] = next;
        let mut stack = vec![i];
        while let Some(k) = stack.pop() {
            for &x in g.generators() {
                let c = subs[k].conjugate(x);
                let j = *index.get(c.set()).expect("list closed under conjugation");
                if class[j] == usize::MAX {
                    class[j] = next;
                    stack.push(j);
                }
            }
        }
        next += 1;
    }
    class
}

fn class_reps(class: &[usize]) -> Vec<usize> {
    let mut seen = HashSet::new();
    (0..class.len()).filter(|&i| seen.insert(class[i])).collect()
}

/// Unordered pairs of normal subgroups `{A, B}` with `AB = G`.
pub fn normal_factor_pairs(g: &Arc<FiniteGroup>) -> Vec<[Subgroup; 2]> {
    let normals = normal_subgroups(g);
    let mut out = Vec::new();
    for i in 0..normals.len() {
        for j in i..normals.len() {
            if product_order(&normals[i], &normals[j]) == g.order() {
                out.push([normals[i].clone(), normals[j].clone()]);
            }
        }
    }
    out
}

/// Pairs `G = AB` of proper subgroups satisfying `pred`, up to conjugacy.
pub fn factor_pairs(
    g: &Arc<FiniteGroup>,
    pred: impl Fn(&Subgroup, &Subgroup) -> bool,
) -> Result<Vec<[Subgroup; 2]>> {
    let subs: Vec<Subgroup> = all_subgroups(g)?.into_iter().filter(|s| !s.is_whole() && !s.is_trivial()).collect();
    let class = subgroup_classes(g, &subs);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for i in class_reps(&class) {
        for j in 0..subs.len() {
            let (a, b) = (&subs[i], &subs[j]);
            if product_order(a, b) != g.order() {
                continue;
            }
            let key = if i <= j { (i, j) } else { (j, i) };
            if seen.contains(&key) || !permutes_fast(a, b) || !pred(a, b) {
                continue;
            }
            seen.insert(key);
            out.push([a.clone(), b.clone()]);
        }
    }
    Ok(out)
}

/// Triples `G = G_1 G_2 G_3` of proper nontrivial subgroups, pairwise
/// permutable and satisfying `pred` pairwise, up to conjugacy.
///
/// With `proper_pairs`, only triples whose pairwise products are all proper
/// subgroups not containing each other; otherwise the two-factor results
/// already decide the open questions.
pub fn factor_triples(
    g: &Arc<FiniteGroup>,
    pred: impl Fn(&Subgroup, &Subgroup) -> bool,
    proper_pairs: bool,
) -> Result<Vec<[Subgroup; 3]>> {
    let subs: Vec<Subgroup> = all_subgroups(g)?.into_iter().filter(|s| !s.is_whole() && !s.is_trivial()).collect();
    let n = subs.len();
    let class = subgroup_classes(g, &subs);
    // adjacency: permutable with a proper product, and pred
    let mut memo: HashMap<(usize, usize), Option<Subgroup>> = HashMap::new();
    let mut edge = |i: usize, j: usize| -> Option<Subgroup> {
        let key = (i.min(j), i.max(j));
        memo.entry(key)
            .or_insert_with(|| {
                let (a, b) = (&subs[key.0], &subs[key.1]);
                if proper_pairs
                    && (a.is_subset_of(b) || b.is_subset_of(a) || product_order(a, b) == g.order())
                {
                    return None;
                }
                permutes_unchecked(a, b).filter(|_| pred(a, b))
            })
            .clone()
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for i in class_reps(&class) {
        for j in 0..n {
            let Some(ij) = edge(i, j) else { continue };
            for k in j + 1..n {
                if k == i || product_order(&ij, &subs[k]) != g.order() {
                    continue;
                }
                let mut key = [i, j, k];
                key.sort_unstable();
                if seen.contains(&key) || edge(i, k).is_none() || edge(j, k).is_none() {
                    continue;
                }
                seen.insert(key);
                out.push([subs[i].clone(), subs[j].clone(), subs[k].clone()]);
            }
        }
    }
    Ok(out)
}

fn pi(h: &Subgroup) -> BTreeSet<u64> {
    h.primes().into_iter().collect()
}

fn inclusion(lhs: &PrimeDigraph, rhs: &PrimeDigraph) -> Outcome {
    match lhs.edges_missing_from(rhs).first() {
        None if lhs.vertices_missing_from(rhs).is_empty() => Outcome::Holds,
        first => Outcome::Violation(first.copied()),
    }
}

fn equality(lhs: &PrimeDigraph, rhs: &PrimeDigraph) -> Outcome {
    match (inclusion(lhs, rhs), inclusion(rhs, lhs)) {
        (Outcome::Holds, Outcome::Holds) => Outcome::Holds,
        (Outcome::Violation(a), Outcome::Violation(b)) => Outcome::Violation(a.min(b).or(a).or(b)),
        (Outcome::Violation(a), _) | (_, Outcome::Violation(a)) => Outcome::Violation(a),
        _ => unreachable!("inclusion never skips"),
    }
}

/// All records for one group.
pub fn scan_group(g: &NamedGroup, question: Question) -> Result<Vec<ScanRecord>> {
    let group = &g.group;
    if question.needs_lattice() && group.order() > ORACLE_CAP {
        return Ok(vec![ScanRecord {
            question,
            group: g.name.clone(),
            factor_orders: Vec::new(),
            digest: String::new(),
            outcome: Outcome::Skipped,
        }]);
    }
    let cache = GraphCache::new(group);
    let whole = cache.graphs(&group.whole())?;
    let graph = |kind: GraphKind, h: &Subgroup| cache.graph(kind, h);
    let mut records = Vec::new();
    let mut emit = |factors: &[&Subgroup], outcome: Outcome| {
        records.push(ScanRecord {
            question,
            group: g.name.clone(),
            factor_orders: factors.iter().map(|f| f.order()).collect(),
            digest: factor_digest(factors),
            outcome,
        });
    };
    match question {
        Question::Q1 | Question::Q2 => {
            for [a, b] in normal_factor_pairs(group) {
                let union = graph(GraphKind::Sylow, &a)?.union(&graph(GraphKind::Sylow, &b)?);
                let outcome = if question == Question::Q1 {
                    inclusion(&whole.sylow, &union)
                } else {
                    equality(&whole.sylow.undirected(), &union.undirected())
                };
                emit(&[&a, &b], outcome);
            }
        }
        Question::Q3 => {
            for [a, b] in factor_pairs(group, |a, b| is_mutually_permutable(a, b).unwrap_or(false))? {
                let rhs = graph(GraphKind::Sylow, &a)?
                    .union(&graph(GraphKind::Sylow, &b)?)
                    .union(&gamma_mut(&pi(&a), &pi(&b)));
                emit(&[&a, &b], inclusion(&whole.sylow, &rhs));
            }
        }
        Question::Q4 => {
            for t in factor_triples(group, |a, b| is_mutually_permutable(a, b).unwrap_or(false), true)? {
                let mut gm = PrimeDigraph::edgeless([]);
                let mut hawkes = PrimeDigraph::loops(group.primes().iter().copied());
                let mut ncrit = PrimeDigraph::edgeless([]);
                for (i, f) in t.iter().enumerate() {
                    hawkes = hawkes.union(&graph(GraphKind::Hawkes, f)?);
                    ncrit = ncrit.union(&graph(GraphKind::NCritical, f)?);
                    for h in &t[i + 1..] {
                        gm = gm.union(&gamma_mut(&pi(f), &pi(h)));
                    }
                }
                let outcome = match inclusion(&whole.hawkes, &hawkes.union(&gm)) {
                    Outcome::Holds => inclusion(&whole.ncrit, &ncrit.union(&gm)),
                    v => v,
                };
                emit(&[&t[0], &t[1], &t[2]], outcome);
            }
        }
        Question::Q5 => {
            for t in factor_triples(group, |_, _| true, true)? {
                let mut union = PrimeDigraph::edgeless([]);
                for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                    let p = permutes_unchecked(&t[i], &t[j]).expect("pairwise permutable");
                    union = union.union(&graph(GraphKind::NCritical, &p)?);
                }
                emit(&[&t[0], &t[1], &t[2]], equality(&whole.ncrit, &union));
            }
        }
    }
    Ok(records)
}

/// Scans every corpus group with `jobs` worker threads; records keep corpus order.
pub fn scan_questions(corpus: &[NamedGroup], question: Question, jobs: usize) -> Result<Vec<ScanRecord>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| GroupError::Unknown(e.to_string()))?;
    let per_group: Vec<Result<Vec<ScanRecord>>> =
        pool.install(|| corpus.par_iter().map(|g| scan_group(g, question)).collect());
    let mut out = Vec::new();
    for r in per_group {
        out.extend(r?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builtin;
    use crate::group::DEFAULT_MAX_ORDER;

    #[test]
    fn s4_normal_pairs_record_the_inequality() {
        let s4 = builtin("s4", DEFAULT_MAX_ORDER).unwrap();
        let recs = scan_group(&s4, Question::Q1).unwrap();
        // every pair contains S4 itself: {1, V4, A4, S4} x {S4}
        assert_eq!(recs.len(), 4);
        assert!(recs.iter().all(|r| r.factor_orders[1] == 24));
        assert!(recs.iter().all(|r| r.outcome == Outcome::Holds));
        let q2 = scan_group(&s4, Question::Q2).unwrap();
        assert!(q2.iter().all(|r| r.outcome == Outcome::Holds));
    }

    #[test]
    fn class_ids_are_conjugation_classes() {
        let s4 = builtin("s4", DEFAULT_MAX_ORDER).unwrap();
        let subs = all_subgroups(&s4.group).unwrap();
        let class = subgroup_classes(&s4.group, &subs);
        assert_eq!(class.iter().collect::<HashSet<_>>().len(), 11);
    }

    #[test]
    fn s4_factorizations() {
        let g = builtin("s4", DEFAULT_MAX_ORDER).unwrap().group;
        let pairs = factor_pairs(&g, |a, b| is_mutually_permutable(a, b).unwrap()).unwrap();
        assert!(pairs.iter().any(|[a, b]| a.order() * b.order() == 96));
        for [a, b] in &pairs {
            assert_eq!(product_order(a, b), 24);
        }
        let triples = factor_triples(&g, |_, _| true, true).unwrap();
        for [a, b, c] in &triples {
            assert!(product_order(a, b) < 24 && product_order(a, c) < 24 && product_order(b, c) < 24);
        }
    }

    #[test]
    fn text_records() {
        let s4 = builtin("s4", DEFAULT_MAX_ORDER).unwrap();
        let recs = scan_group(&s4, Question::Q1).unwrap();
        let line = recs[0].to_string();
        assert!(line.starts_with("SCAN q1 group=s4 factors="));
        assert!(line.ends_with(" HOLDS"));
        assert_eq!("Q3".parse::<Question>().unwrap(), Question::Q3);
    }
}
