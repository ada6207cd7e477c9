//! Normal structure: minimal normal subgroups, chief and central series,
//! and the class predicates built on them.

use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{GroupError, Result};
use crate::group::{quotient, FiniteGroup, Subgroup};
use crate::numbers::is_prime;
use crate::ops::{commutator_subgroup, normal_closure, o_p, o_p_prime, sylow};

/// Formations for which hypercenters and central chief factors are realised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormationTag {
    Nilpotent,
    Supersoluble,
}

impl FormationTag {
    pub fn name(self) -> &'static str {
        match self {
            FormationTag::Nilpotent => "nilpotent",
            FormationTag::Supersoluble => "supersoluble",
        }
    }
}

impl std::str::FromStr for FormationTag {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nilpotent" | "N" => Ok(FormationTag::Nilpotent),
            "supersoluble" | "U" => Ok(FormationTag::Supersoluble),
            other => Err(GroupError::Unknown(format!("formation '{other}'"))),
        }
    }
}

/// `1 = N_0 < N_1 < … < N_k = G` with every `N_i` normal and every factor a
/// chief factor.
#[derive(Debug, Clone)]
pub struct ChiefSeries {
    terms: Vec<Subgroup>,
}

impl ChiefSeries {
    pub fn terms(&self) -> &[Subgroup] {
        &self.terms
    }

    /// Orders `|N_i / N_{i-1}|`, bottom up.
    pub fn factor_orders(&self) -> Vec<usize> {
        self.terms
            .windows(2)
            .map(|w| w[1].order() / w[0].order())
            .collect()
    }
}

/// `Z(G)`: the union of the singleton conjugacy classes.
pub fn center(g: &Arc<FiniteGroup>) -> Subgroup {
    let mut set = FixedBitSet::with_capacity(g.order());
    for class in g.classes() {
        if class.len() == 1 {
            set.insert(class[0]);
        }
    }
    Subgroup::from_set(g, set)
}

/// All inclusion-minimal nontrivial normal subgroups, in the order of the
/// first conjugacy class producing each.
pub fn minimal_normal_subgroups(g: &Arc<FiniteGroup>) -> Result<Vec<Subgroup>> {
    if g.is_trivial() {
        return Err(GroupError::TrivialGroup);
    }
    let mut candidates: Vec<Subgroup> = Vec::new();
    for class in g.classes().iter().skip(1) {
        let n = normal_closure(g, &[class[0]]);
        if !candidates.contains(&n) {
            candidates.push(n);
        }
    }
    let minimal = candidates
        .iter()
        .filter(|n| {
            !candidates
                .iter()
                .any(|m| m.order() < n.order() && m.is_subset_of(n))
        })
        .cloned()
        .collect();
    Ok(minimal)
}

/// Chief series built bottom up: each step lifts the first minimal normal
/// subgroup of the current quotient.
pub fn chief_series(g: &Arc<FiniteGroup>) -> Result<ChiefSeries> {
    let mut terms = vec![g.trivial_subgroup()];
    let mut current = g.trivial_subgroup();
    while !current.is_whole() {
        let q = quotient(&current)?;
        let m = minimal_normal_subgroups(q.group())?
            .into_iter()
            .next()
            .expect("nontrivial group has a minimal normal subgroup");
        current = q.preimage_subgroup(&m);
        terms.push(current.clone());
    }
    Ok(ChiefSeries { terms })
}

/// `G ≥ G' ≥ G'' ≥ …` down to the first repeated term.
pub fn derived_series(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut series = vec![g.whole()];
    loop {
        let last = series.last().unwrap();
        let next = commutator_subgroup(last, last).expect("same parent");
        if next.order() == last.order() {
            break;
        }
        series.push(next);
    }
    series
}

/// `1 = Z_0 ≤ Z_1 ≤ …` up to the hypercenter; the last term is `Z_∞(G)`.
pub fn upper_central_series(g: &Arc<FiniteGroup>) -> Result<Vec<Subgroup>> {
    let mut series = vec![g.trivial_subgroup()];
    loop {
        let last = series.last().unwrap();
        let q = quotient(last)?;
        let z = center(q.group());
        if z.is_trivial() {
            break;
        }
        let next = q.preimage_subgroup(&z);
        series.push(next);
    }
    Ok(series)
}

/// Every Sylow subgroup is normal.
pub fn is_nilpotent(g: &Arc<FiniteGroup>) -> bool {
    g.primes().iter().all(|&p| sylow(g, p).is_normal())
}

pub fn is_soluble(g: &Arc<FiniteGroup>) -> bool {
    derived_series(g).last().unwrap().is_trivial()
}

/// Every chief factor has prime order.
pub fn is_supersoluble(g: &Arc<FiniteGroup>) -> bool {
    let series = chief_series(g).expect("quotients of G never exceed its order");
    series
        .factor_orders()
        .into_iter()
        .all(|o| is_prime(o as u64))
}

/// True iff some prime ordering gives a normal series with Sylow factors.
///
/// A quotient of a Sylow tower group has a Sylow tower, so factoring out any
/// normal Sylow subgroup loses nothing and no backtracking is needed.
pub fn has_sylow_tower(g: &Arc<FiniteGroup>) -> Result<bool> {
    let mut g = g.clone();
    'outer: while !g.is_trivial() {
        for &p in g.primes() {
            let s = sylow(&g, p);
            if s.is_normal() {
                let q = quotient(&s)?;
                g = q.group().clone();
                continue 'outer;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// Upper `p`-series `1 ≤ O_{p'} ≤ O_{p',p} ≤ O_{p',p,p'} ≤ … ≤ G` of a soluble group.
pub fn upper_p_series(g: &Arc<FiniteGroup>, p: u64) -> Result<Vec<Subgroup>> {
    if !is_soluble(g) {
        return Err(GroupError::NotSoluble);
    }
    let mut series = vec![g.trivial_subgroup()];
    let mut current = o_p_prime(g, p);
    series.push(current.clone());
    let mut want_p = true;
    let mut stalled = 0;
    while !current.is_whole() {
        let q = quotient(&current)?;
        let next = if want_p {
            o_p(q.group(), p)
        } else {
            o_p_prime(q.group(), p)
        };
        if next.is_trivial() {
            stalled += 1;
            assert!(stalled < 2, "soluble group: the upper p-series must grow");
        } else {
            stalled = 0;
        }
        current = q.preimage_subgroup(&next);
        series.push(current.clone());
        want_p = !want_p;
    }
    Ok(series)
}

/// Number of nontrivial `p`-factors in the upper `p`-series.
pub fn p_length(g: &Arc<FiniteGroup>, p: u64) -> Result<usize> {
    let series = upper_p_series(g, p)?;
    // series[0] = 1, series[1] = O_{p'}; p-factors are series[2k]/series[2k-1]
    Ok((2..series.len())
        .step_by(2)
        .filter(|&i| series[i].order() > series[i - 1].order())
        .count())
}
