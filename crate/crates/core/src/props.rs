//! Invariant suites over groups: structural facts about the three graphs.
//!
//! Each check returns `Ok(None)` when the property holds and `Ok(Some(detail))`
//! describing the first violation otherwise.

use std::fmt;
use std::str::FromStr;

use crate::arith::{hypercenter, GraphKind, GraphTriple};
use crate::corpus::NamedGroup;
use crate::error::{GroupError, Result};
use crate::group::{quotient, ORACLE_CAP};
use crate::lattice::{frattini, maximal_subgroups, normal_subgroups};
use crate::numbers::p_part;
use crate::series::{has_sylow_tower, is_nilpotent, is_soluble, is_supersoluble, p_length, upper_central_series, FormationTag};
use crate::verify::{verify_lemma2, GraphCache};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    Chain,
    LemmaEqual,
    QuotientMonotone,
    SubgroupMonotone,
    DirectProduct,
    Frattini,
    HawkesPLength,
    SylowComponents,
    Hypercenter,
    Lemma2,
}

impl Property {
    pub const ALL: [Property; 10] = [
        Property::Chain,
        Property::LemmaEqual,
        Property::QuotientMonotone,
        Property::SubgroupMonotone,
        Property::DirectProduct,
        Property::Frattini,
        Property::HawkesPLength,
        Property::SylowComponents,
        Property::Hypercenter,
        Property::Lemma2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Chain => "chain",
            Property::LemmaEqual => "lemma-equal",
            Property::QuotientMonotone => "quotient-monotone",
            Property::SubgroupMonotone => "subgroup-monotone",
            Property::DirectProduct => "direct-product",
            Property::Frattini => "frattini",
            Property::HawkesPLength => "hawkes-p-length",
            Property::SylowComponents => "sylow-components",
            Property::Hypercenter => "hypercenter",
            Property::Lemma2 => "lemma2",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Property> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| GroupError::Unknown(format!("property '{s}'")))
    }
}

/// A group with its graphs computed once.
pub struct Subject<'a> {
    pub named: &'a NamedGroup,
    pub graphs: GraphTriple,
    cache: GraphCache,
}

impl<'a> Subject<'a> {
    pub fn new(named: &'a NamedGroup) -> Result<Subject<'a>> {
        let cache = GraphCache::new(&named.group);
        let graphs = (*cache.graphs(&named.group.whole())?).clone();
        Ok(Subject { named, graphs, cache })
    }

    pub fn cache(&self) -> &GraphCache {
        &self.cache
    }
}

fn fail(s: String) -> Result<Option<String>> {
    Ok(Some(s))
}

pub fn check(prop: Property, s: &Subject) -> Result<Option<String>> {
    let g = &s.named.group;
    let t = &s.graphs;
    match prop {
        Property::Chain => {
            if !t.sylow.is_subgraph(&t.ncrit) {
                return fail(format!("sylow not in ncrit: {:?}", t.sylow.edges_missing_from(&t.ncrit)));
            }
            if !t.ncrit.is_subgraph(&t.hawkes) {
                return fail(format!("ncrit not in hawkes: {:?}", t.ncrit.edges_missing_from(&t.hawkes)));
            }
        }
        Property::LemmaEqual => {
            if has_sylow_tower(g)? && !(t.sylow == t.ncrit && t.ncrit == t.hawkes) {
                return fail("Sylow tower group with distinct graphs".into());
            }
        }
        Property::QuotientMonotone => {
            for n in normal_subgroups(g) {
                if n.is_trivial() || n.is_whole() {
                    continue;
                }
                let q = GraphTriple::of(quotient(&n)?.group())?;
                for kind in GraphKind::ALL {
                    if !q.get(kind).is_subgraph(t.get(kind)) {
                        return fail(format!("{kind} of quotient by normal subgroup of order {}", n.order()));
                    }
                }
            }
        }
        Property::SubgroupMonotone => {
            if g.order() <= ORACLE_CAP {
                for m in maximal_subgroups(g)? {
                    for kind in [GraphKind::Hawkes, GraphKind::NCritical] {
                        if !s.cache.graph(kind, &m)?.is_subgraph(t.get(kind)) {
                            return fail(format!("{kind} of maximal subgroup of order {}", m.order()));
                        }
                    }
                }
            }
        }
        Property::DirectProduct => {
            let factors: Vec<_> = s.named.subgroups.iter().filter(|(n, _)| n.starts_with('F')).collect();
            if factors.len() >= 2 {
                for kind in GraphKind::ALL {
                    let mut union = crate::graph::PrimeDigraph::edgeless([]);
                    for (_, f) in &factors {
                        union = union.union(&s.cache.graph(kind, f)?);
                    }
                    if &union != t.get(kind) {
                        return fail(format!("{kind} is not the union over direct factors"));
                    }
                }
            }
        }
        Property::Frattini => {
            if g.order() <= ORACLE_CAP {
                let phi = frattini(g)?;
                let top = crate::arith::hawkes_graph(quotient(&phi)?.group())?;
                if top != t.hawkes {
                    return fail(format!("hawkes changes modulo Frattini subgroup of order {}", phi.order()));
                }
            }
        }
        Property::HawkesPLength => {
            if is_soluble(g) {
                for &p in g.primes() {
                    if !t.hawkes.has_edge(p, p) && p_length(g, p)? > 1 {
                        return fail(format!("no loop at {p} but p-length above 1"));
                    }
                }
            }
        }
        Property::SylowComponents => {
            if is_soluble(g) {
                let orders: Vec<usize> = normal_subgroups(g).iter().map(|n| n.order()).collect();
                for comp in t.sylow.weak_components() {
                    let part: u64 = comp.iter().map(|&p| p_part(g.order() as u64, p)).product();
                    if !orders.contains(&(part as usize)) {
                        return fail(format!("no normal Hall subgroup for component {comp:?}"));
                    }
                }
            }
        }
        Property::Hypercenter => {
            let zn = hypercenter(g, FormationTag::Nilpotent)?;
            let last = upper_central_series(g)?.pop().expect("series starts at 1");
            if zn != last {
                return fail("nilpotent hypercenter differs from upper central series".into());
            }
            if zn.is_whole() != is_nilpotent(g) {
                return fail("nilpotent hypercenter disagrees with nilpotency".into());
            }
            let zu = hypercenter(g, FormationTag::Supersoluble)?;
            if zu.is_whole() != is_supersoluble(g) {
                return fail("supersoluble hypercenter disagrees with supersolubility".into());
            }
        }
        Property::Lemma2 => {
            for f in [FormationTag::Nilpotent, FormationTag::Supersoluble] {
                let r = verify_lemma2(g, f)?;
                if let Some(c) = r.claims.iter().find(|c| !c.holds) {
                    return fail(format!("{} {}", f.name(), c.id));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builtin;
    use crate::group::DEFAULT_MAX_ORDER;

    #[test]
    fn small_groups_satisfy_everything() {
        for spec in ["s3", "s4", "a4", "d8", "q8", "s3*zn(5)", "sd(5,4,2)", "a5"] {
            let g = builtin(spec, DEFAULT_MAX_ORDER).unwrap();
            let s = Subject::new(&g).unwrap();
            for p in Property::ALL {
                assert_eq!(check(p, &s).unwrap(), None, "{spec} {p}");
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>().unwrap(), p);
        }
    }
}
