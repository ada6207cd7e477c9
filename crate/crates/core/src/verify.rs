//! Instance-level checks of the graph identities for product decompositions.
//!
//! Each checker verifies its own hypotheses first and returns
//! [`GroupError::PreconditionFailed`] naming the offending factors when they
//! do not hold.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};
use std::sync::{Arc, Mutex};

use fixedbitset::FixedBitSet;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::arith::{has_schmidt_pq, hypercenter, GraphKind, GraphTriple, SchmidtWitness};
use crate::error::{GroupError, Result};
use crate::graph::{gamma_mut, gamma_supersoluble, PrimeDigraph};
use crate::group::{coset_action, quotient, FiniteGroup, Subgroup};
use crate::ops::{centralizer, intersect, join_all, permutes_fast, product_set, sylow};
use crate::products::{
    is_mutually_permutable, is_n_connected, is_totally_permutable, ProductDecomposition,
};
use crate::series::{has_sylow_tower, is_soluble, FormationTag};

/// Evidence attached to a claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Edge(u64, u64),
    Vertex(u64),
    Subgroup { order: usize, generators: Vec<String> },
}

impl Witness {
    pub fn subgroup(h: &Subgroup) -> Witness {
        Witness::Subgroup {
            order: h.order(),
            generators: h.generator_perms().iter().map(|p| p.to_string()).collect(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Witness::Edge(p, q) => json!([p, q]),
            Witness::Vertex(p) => json!({ "vertex": p }),
            Witness::Subgroup { order, generators } => {
                json!({ "subgroup": { "order": order, "generators": generators } })
            }
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Edge(p, q) => write!(f, "({p},{q})"),
            Witness::Vertex(p) => write!(f, "vertex:{p}"),
            Witness::Subgroup { order, generators } => {
                write!(f, "subgroup(order {order}; {})", generators.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub id: String,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Claim {
    pub fn new(id: impl Into<String>, holds: bool, witness: Option<Witness>) -> Claim {
        Claim { id: id.into(), holds, witness }
    }

    /// `lhs ⊆ rhs`, witnessed by the first missing edge (or vertex).
    pub fn subgraph(id: impl Into<String>, lhs: &PrimeDigraph, rhs: &PrimeDigraph) -> Claim {
        let witness = first_missing(lhs, rhs);
        Claim::new(id, witness.is_none(), witness)
    }

    /// `lhs = rhs`, witnessed by the first edge (or vertex) in the symmetric difference.
    pub fn equal(id: impl Into<String>, lhs: &PrimeDigraph, rhs: &PrimeDigraph) -> Claim {
        let witness = match (first_missing(lhs, rhs), first_missing(rhs, lhs)) {
            (None, None) => None,
            (Some(a), None) | (None, Some(a)) => Some(a),
            (Some(a), Some(b)) => Some(witness_min(a, b)),
        };
        Claim::new(id, witness.is_none(), witness)
    }

    fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "holds": self.holds,
            "witness": self.witness.as_ref().map_or(Value::Null, Witness::to_json),
        })
    }
}

fn witness_min(a: Witness, b: Witness) -> Witness {
    match (&a, &b) {
        (Witness::Edge(p, q), Witness::Edge(r, s)) if (r, s) < (p, q) => b,
        (Witness::Edge(..), Witness::Vertex(_)) => b,
        _ => a,
    }
}

fn first_missing(lhs: &PrimeDigraph, rhs: &PrimeDigraph) -> Option<Witness> {
    if let Some(&v) = lhs.vertices_missing_from(rhs).first() {
        return Some(Witness::Vertex(v));
    }
    lhs.edges_missing_from(rhs)
        .first()
        .map(|&(p, q)| Witness::Edge(p, q))
}

/// Outcome of one checker on one input.
///
/// `claims` are the statements of the theorem; `observations` record instance
/// facts that are not expected to hold in general (the non-inclusions the
/// theorems are sharp against) and never count as failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub theorem: String,
    pub claims: Vec<Claim>,
    pub observations: Vec<Claim>,
    pub group: String,
    pub factors: Vec<String>,
    pub digest: String,
}

impl VerificationReport {
    fn new(theorem: &str, group: &Arc<FiniteGroup>, factors: &[&Subgroup]) -> VerificationReport {
        VerificationReport {
            theorem: theorem.to_string(),
            claims: Vec::new(),
            observations: Vec::new(),
            group: "G".to_string(),
            factors: (1..=factors.len()).map(|i| format!("G{i}")).collect(),
            digest: inputs_digest(group, factors),
        }
    }

    /// Replaces the default labels `G`, `G1`, `G2`, ….
    pub fn with_labels(mut self, group: &str, factors: &[String]) -> VerificationReport {
        self.group = group.to_string();
        if factors.len() == self.factors.len() {
            self.factors = factors.to_vec();
        }
        self
    }

    pub fn holds(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn observation(&self, id: &str) -> Option<&Claim> {
        self.observations.iter().find(|c| c.id == id)
    }

    fn push(&mut self, claim: Claim) {
        self.claims.push(claim);
    }

    fn note(&mut self, claim: Claim) {
        self.observations.push(claim);
    }

    /// One line per claim, then one per observation.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            let status = if c.holds { "HOLDS" } else { "FAILS" };
            let _ = write!(out, "THM {} CLAIM {} {}", self.theorem, c.id, status);
            if let Some(w) = &c.witness {
                let _ = write!(out, " witness={w}");
            }
            out.push('\n');
        }
        for c in &self.observations {
            let status = if c.holds { "YES" } else { "NO" };
            let _ = write!(out, "THM {} NOTE {} {}", self.theorem, c.id, status);
            if let Some(w) = &c.witness {
                let _ = write!(out, " witness={w}");
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "theorem": self.theorem,
            "claims": self.claims.iter().map(Claim::to_json).collect::<Vec<_>>(),
            "group": self.group,
            "factors": self.factors,
            "observations": self.observations.iter().map(Claim::to_json).collect::<Vec<_>>(),
            "digest": self.digest,
        })
    }
}

/// SHA-256 over the group generators and the factor element sets.
pub fn inputs_digest(group: &FiniteGroup, factors: &[&Subgroup]) -> String {
    let mut h = Sha256::new();
    h.update(group.degree().to_le_bytes());
    for p in group.generator_perms() {
        h.update(p.to_string().as_bytes());
        h.update(b";");
    }
    for f in factors {
        h.update(b"|");
        for e in f.elements() {
            h.update((e as u64).to_le_bytes());
        }
    }
    hex::encode(h.finalize())
}

fn precondition(msg: String) -> GroupError {
    GroupError::PreconditionFailed(msg)
}

/// The three graphs of subgroups of one parent, memoized by element set.
pub struct GraphCache {
    parent: Arc<FiniteGroup>,
    graphs: Mutex<HashMap<FixedBitSet, Arc<GraphTriple>>>,
}

impl GraphCache {
    pub fn new(parent: &Arc<FiniteGroup>) -> GraphCache {
        GraphCache { parent: parent.clone(), graphs: Mutex::new(HashMap::new()) }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn graphs(&self, h: &Subgroup) -> Result<Arc<GraphTriple>> {
        if !Arc::ptr_eq(h.parent(), &self.parent) {
            return Err(GroupError::NotInParent);
        }
        if let Some(t) = self.graphs.lock().expect("cache lock").get(h.set()) {
            return Ok(t.clone());
        }
        let group = if h.is_whole() { self.parent.clone() } else { h.to_group() };
        let t = Arc::new(GraphTriple::of(&group)?);
        self.graphs
            .lock()
            .expect("cache lock")
            .insert(h.set().clone(), t.clone());
        Ok(t)
    }

    pub fn graph(&self, kind: GraphKind, h: &Subgroup) -> Result<PrimeDigraph> {
        Ok(self.graphs(h)?.get(kind).clone())
    }

    fn union(&self, kind: GraphKind, subs: &[&Subgroup]) -> Result<PrimeDigraph> {
        let mut out = PrimeDigraph::edgeless([]);
        for s in subs {
            out = out.union(self.graphs(s)?.get(kind));
        }
        Ok(out)
    }
}

fn pi(h: &Subgroup) -> BTreeSet<u64> {
    h.primes().into_iter().collect()
}

fn pi_group(g: &FiniteGroup) -> BTreeSet<u64> {
    g.primes().iter().copied().collect()
}

fn factor_refs(d: &ProductDecomposition) -> Vec<&Subgroup> {
    d.factors().iter().collect()
}

/// `⋃_{i≠j} Γ(G_i, G_j)`.
fn gamma_mut_all(d: &ProductDecomposition) -> PrimeDigraph {
    let mut out = PrimeDigraph::edgeless([]);
    for (i, j) in d.pairs() {
        out = out.union(&gamma_mut(&pi(&d.factors()[i]), &pi(&d.factors()[j])));
    }
    out
}

fn require_pairs(
    d: &ProductDecomposition,
    what: &str,
    mut pred: impl FnMut(&Subgroup, &Subgroup) -> Result<bool>,
) -> Result<()> {
    for (i, j) in d.pairs() {
        if !pred(&d.factors()[i], &d.factors()[j])? {
            return Err(precondition(format!("factors {} and {} are not {what}", i + 1, j + 1)));
        }
    }
    Ok(())
}

/// Runs the checkers with a shared graph cache for one parent group.
pub struct Verifier {
    cache: GraphCache,
}

impl Verifier {
    pub fn new(parent: &Arc<FiniteGroup>) -> Verifier {
        Verifier { cache: GraphCache::new(parent) }
    }

    pub fn cache(&self) -> &GraphCache {
        &self.cache
    }

    fn check_parent(&self, g: &Arc<FiniteGroup>) -> Result<()> {
        if Arc::ptr_eq(g, &self.cache.parent) {
            Ok(())
        } else {
            Err(GroupError::NotInParent)
        }
    }

    /// G/Z_𝔉(G) is the direct product of the images of the factors, and
    /// `G_i ∩ Z_𝔉(G) = Z_𝔉(G_i)`.
    pub fn lemma1(&self, d: &ProductDecomposition, formation: FormationTag) -> Result<VerificationReport> {
        self.check_parent(d.parent())?;
        let g = d.parent();
        let hyper_ok = crate::products::hypercentral_commutator_condition(d, formation)
            .map_err(|e| precondition(e.to_string()))?;
        if !hyper_ok {
            return Err(precondition(format!(
                "commutators of the factors are not in the {} hypercenter",
                formation.name()
            )));
        }
        let mut report = VerificationReport::new("lemma1", g, &factor_refs(d));
        let z = hypercenter(g, formation)?;
        let q = coset_action(&z)?;
        let images: Vec<Subgroup> = d.factors().iter().map(|f| q.image_subgroup(f)).collect();
        for (i, img) in images.iter().enumerate() {
            let bad = (!img.is_normal()).then(|| Witness::subgroup(&d.factors()[i]));
            report.push(Claim::new(format!("a.{}", i + 1), bad.is_none(), bad));
        }
        for (i, img) in images.iter().enumerate() {
            let rest: Vec<&Subgroup> = images
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, s)| s)
                .collect();
            let others = join_all(q.group(), &rest)?;
            let meet = intersect(img, &others)?;
            let bad = (!meet.is_trivial()).then(|| Witness::subgroup(&q.preimage_subgroup(&meet)));
            report.push(Claim::new(format!("b.{}", i + 1), bad.is_none(), bad));
        }
        let all: Vec<&Subgroup> = images.iter().collect();
        let generated = join_all(q.group(), &all)?;
        report.push(Claim::new(
            "c",
            generated.is_whole(),
            (!generated.is_whole()).then(|| Witness::subgroup(&q.preimage_subgroup(&generated))),
        ));
        for (i, f) in d.factors().iter().enumerate() {
            let meet = intersect(f, &z)?;
            let own = f.lift_from_group(&hypercenter(&f.to_group(), formation)?);
            let bad = (meet != own).then(|| Witness::subgroup(&meet));
            report.push(Claim::new(format!("d.{}", i + 1), bad.is_none(), bad));
        }
        Ok(report)
    }

    /// `Γ(G/Z_𝔉(G)) ⊆ Γ(G) ⊆ Γ(G/Z_𝔉(G)) ∪ Γ(𝔉)|_G` for all three graphs.
    pub fn lemma2(&self, formation: FormationTag) -> Result<VerificationReport> {
        let g = self.cache.parent.clone();
        let mut report = VerificationReport::new("lemma2", &g, &[]);
        let z = hypercenter(&g, formation)?;
        let top = quotient(&z)?;
        let quot = GraphTriple::of(top.group())?;
        let own = self.cache.graphs(&g.whole())?;
        let vs = pi_group(&g);
        let gamma_f = match formation {
            FormationTag::Nilpotent => PrimeDigraph::edgeless(vs.iter().copied()),
            FormationTag::Supersoluble => gamma_supersoluble(&vs),
        };
        for kind in GraphKind::ALL {
            report.push(Claim::subgraph(format!("{kind}-lower"), quot.get(kind), own.get(kind)));
            report.push(Claim::subgraph(
                format!("{kind}-upper"),
                own.get(kind),
                &quot.get(kind).union(&gamma_f),
            ));
        }
        Ok(report)
    }

    /// Pairwise permutable, 𝔑-connected factors: each graph of `G` is the
    /// union of the graphs of the factors.
    pub fn thm1(&self, d: &ProductDecomposition) -> Result<VerificationReport> {
        self.check_parent(d.parent())?;
        require_pairs(d, "permutable", |a, b| Ok(permutes_fast(a, b)))?;
        require_pairs(d, "N-connected", is_n_connected)?;
        let fs = factor_refs(d);
        let mut report = VerificationReport::new("thm1", d.parent(), &fs);
        let whole = self.cache.graphs(&d.parent().whole())?;
        for kind in GraphKind::ALL {
            let union = self.cache.union(kind, &fs)?;
            report.push(Claim::equal(format!("{kind}-eq"), whole.get(kind), &union));
        }
        Ok(report)
    }

    /// Pairwise totally permutable factors: `Γ(G) ⊆ ⋃ Γ(G_i) ∪ Γ(𝔘)|_G`.
    pub fn thm2(&self, d: &ProductDecomposition) -> Result<VerificationReport> {
        self.check_parent(d.parent())?;
        require_pairs(d, "totally permutable", is_totally_permutable)?;
        let fs = factor_refs(d);
        let mut report = VerificationReport::new("thm2", d.parent(), &fs);
        let whole = self.cache.graphs(&d.parent().whole())?;
        let gamma = gamma_supersoluble(&pi_group(d.parent()));
        for kind in GraphKind::ALL {
            let union = self.cache.union(kind, &fs)?;
            report.push(Claim::subgraph(format!("{kind}-sub"), whole.get(kind), &union.union(&gamma)));
            report.note(Claim::subgraph(format!("{kind}-in-factors"), whole.get(kind), &union));
        }
        Ok(report)
    }

    /// Mutually permutable `G = AB`: the sandwiches for `Γ_Nc` and `Γ_H`.
    pub fn mutual(&self, d: &ProductDecomposition) -> Result<VerificationReport> {
        self.check_parent(d.parent())?;
        if d.len() != 2 {
            return Err(precondition(format!("expected two factors, found {}", d.len())));
        }
        require_pairs(d, "mutually permutable", is_mutually_permutable)?;
        let (a, b) = (&d.factors()[0], &d.factors()[1]);
        let mut report = VerificationReport::new("mut", d.parent(), &[a, b]);
        let whole = self.cache.graphs(&d.parent().whole())?;
        let gm = gamma_mut(&pi(a), &pi(b));
        let loops = PrimeDigraph::loops(pi_group(d.parent()));
        for kind in [GraphKind::NCritical, GraphKind::Hawkes] {
            let lower = self.cache.union(kind, &[a, b])?;
            report.push(Claim::subgraph(format!("{kind}-lower"), &lower, whole.get(kind)));
            let mut upper = lower.union(&gm);
            if kind == GraphKind::Hawkes {
                report.note(Claim::subgraph("hawkes-upper-without-loops", whole.get(kind), &upper));
                upper = upper.union(&loops);
            }
            report.push(Claim::subgraph(format!("{kind}-upper"), whole.get(kind), &upper));
        }
        Ok(report)
    }

    /// Pairwise mutually permutable soluble factors.
    pub fn thm4(&self, d: &ProductDecomposition) -> Result<VerificationReport> {
        self.check_parent(d.parent())?;
        require_pairs(d, "mutually permutable", is_mutually_permutable)?;
        if let Some(i) = d.factors().iter().position(|f| !is_soluble(&f.to_group())) {
            return Err(precondition(format!("factor {} is not soluble", i + 1)));
        }
        let fs = factor_refs(d);
        let mut report = VerificationReport::new("thm4", d.parent(), &fs);
        let whole = self.cache.graphs(&d.parent().whole())?;
        let gm = gamma_mut_all(d);
        let loops = PrimeDigraph::loops(pi_group(d.parent()));
        let hawkes = self.cache.union(GraphKind::Hawkes, &fs)?.union(&gm).union(&loops);
        report.push(Claim::subgraph("hawkes-sub", &whole.hawkes, &hawkes));
        let ncrit = self.cache.union(GraphKind::NCritical, &fs)?.union(&gm);
        report.push(Claim::subgraph("ncrit-sub", &whole.ncrit, &ncrit));
        Ok(report)
    }

    /// Soluble `G`, at least three pairwise permutable factors:
    /// `Γ_Nc(G) = ⋃_{i<j} Γ_Nc(G_i G_j)`.
    pub fn ro2(&self, d: &ProductDecomposition) -> Result<VerificationReport> {
        self.check_parent(d.parent())?;
        if !is_soluble(d.parent()) {
            return Err(precondition("G is not soluble".into()));
        }
        if d.len() < 3 {
            return Err(precondition(format!("expected at least three factors, found {}", d.len())));
        }
        require_pairs(d, "permutable", |a, b| Ok(permutes_fast(a, b)))?;
        let fs = factor_refs(d);
        let mut report = VerificationReport::new("ro2", d.parent(), &fs);
        let products: Vec<Subgroup> = d
            .pairs()
            .map(|(i, j)| d.pair_product(i, j).expect("checked permutable"))
            .collect();
        let refs: Vec<&Subgroup> = products.iter().collect();
        let union = self.cache.union(GraphKind::NCritical, &refs)?;
        let whole = self.cache.graphs(&d.parent().whole())?;
        report.push(Claim::equal("ncrit-eq", &whole.ncrit, &union));
        Ok(report)
    }

    /// A Sylow tower group has `Γ_s = Γ_Nc = Γ_H`.
    pub fn equal(&self) -> Result<VerificationReport> {
        let g = self.cache.parent.clone();
        if !has_sylow_tower(&g)? {
            return Err(precondition("G has no Sylow tower".into()));
        }
        let mut report = VerificationReport::new("equal", &g, &[]);
        let t = self.cache.graphs(&g.whole())?;
        report.push(Claim::equal("sylow-eq-ncrit", &t.sylow, &t.ncrit));
        report.push(Claim::equal("ncrit-eq-hawkes", &t.ncrit, &t.hawkes));
        Ok(report)
    }

    /// `P ≤ A` and `G = A C_G(P)` for the Sylow `p`-subgroup `P` of a Schmidt
    /// `(p, q)`-subgroup: `A` contains a Schmidt `(p, q)`-subgroup.
    pub fn centralizer_lemma(&self, a: &Subgroup, s: &SchmidtWitness) -> Result<VerificationReport> {
        let g = self.cache.parent.clone();
        self.check_parent(a.parent())?;
        self.check_parent(s.subgroup.parent())?;
        let p = s.subgroup.lift_from_group(&sylow(&s.subgroup.to_group(), s.p));
        if !p.is_subset_of(a) {
            return Err(precondition("the Sylow subgroup of S is not contained in A".into()));
        }
        let c = centralizer(&g, p.generators());
        if product_set(a, &c).count_ones(..) != g.order() {
            return Err(precondition("A C_G(P) is not G".into()));
        }
        let mut report = VerificationReport::new("centralizer", &g, &[a, &s.subgroup]);
        let found = has_schmidt_pq(&a.to_group(), s.p, s.q);
        let witness = found.as_ref().map(|w| Witness::subgroup(&a.lift_from_group(&w.subgroup)));
        report.push(Claim::new(format!("schmidt-{}-{}", s.p, s.q), found.is_some(), witness));
        Ok(report)
    }

    /// Soluble `G = AB` with `A, B` normal: the undirected Sylow graphs satisfy
    /// `Γ̄_s(G) = Γ̄_s(A) ∪ Γ̄_s(B)`.
    pub fn undirected(&self, d: &ProductDecomposition) -> Result<VerificationReport> {
        self.check_parent(d.parent())?;
        if d.len() != 2 {
            return Err(precondition(format!("expected two factors, found {}", d.len())));
        }
        if let Some(i) = d.factors().iter().position(|f| !f.is_normal()) {
            return Err(precondition(format!("factor {} is not normal", i + 1)));
        }
        if !is_soluble(d.parent()) {
            return Err(precondition("G is not soluble".into()));
        }
        let fs = factor_refs(d);
        let mut report = VerificationReport::new("undirected", d.parent(), &fs);
        let whole = self.cache.graph(GraphKind::Sylow, &d.parent().whole())?;
        let union = self.cache.union(GraphKind::Sylow, &fs)?;
        report.push(Claim::equal("sylow-undirected-eq", &whole.undirected(), &union.undirected()));
        report.note(Claim::equal("sylow-directed-eq", &whole, &union));
        Ok(report)
    }
}

pub fn verify_lemma1(d: &ProductDecomposition, formation: FormationTag) -> Result<VerificationReport> {
    Verifier::new(d.parent()).lemma1(d, formation)
}

pub fn verify_lemma2(g: &Arc<FiniteGroup>, formation: FormationTag) -> Result<VerificationReport> {
    Verifier::new(g).lemma2(formation)
}

pub fn verify_thm1(d: &ProductDecomposition) -> Result<VerificationReport> {
    Verifier::new(d.parent()).thm1(d)
}

pub fn verify_thm2(d: &ProductDecomposition) -> Result<VerificationReport> {
    Verifier::new(d.parent()).thm2(d)
}

pub fn verify_mut(d: &ProductDecomposition) -> Result<VerificationReport> {
    Verifier::new(d.parent()).mutual(d)
}

pub fn verify_thm4(d: &ProductDecomposition) -> Result<VerificationReport> {
    Verifier::new(d.parent()).thm4(d)
}

pub fn verify_ro2(d: &ProductDecomposition) -> Result<VerificationReport> {
    Verifier::new(d.parent()).ro2(d)
}

pub fn verify_equal(g: &Arc<FiniteGroup>) -> Result<VerificationReport> {
    Verifier::new(g).equal()
}

pub fn verify_centralizer_lemma(a: &Subgroup, s: &SchmidtWitness) -> Result<VerificationReport> {
    Verifier::new(a.parent()).centralizer_lemma(a, s)
}

pub fn verify_undirected_prop(d: &ProductDecomposition) -> Result<VerificationReport> {
    Verifier::new(d.parent()).undirected(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_schmidt_subgroup;
    use crate::group::{generate_group, subgroup_generated, DEFAULT_MAX_ORDER};
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

    fn decomp(factors: Vec<Subgroup>) -> ProductDecomposition {
        ProductDecomposition::new(factors).unwrap()
    }

    fn s3_pair() -> ProductDecomposition {
        let s3 = group(3, &["(1 2 3)", "(1 2)"]);
        decomp(vec![sub(&s3, &["(1 2 3)"]), sub(&s3, &["(1 2)"])])
    }

    #[test]
    fn thm2_on_s3() {
        let r = verify_thm2(&s3_pair()).unwrap();
        assert!(r.holds());
        for kind in GraphKind::ALL {
            let note = r.observation(&format!("{kind}-in-factors")).unwrap();
            assert!(!note.holds);
            assert_eq!(note.witness, Some(Witness::Edge(3, 2)));
        }
        let text = r.to_text();
        assert!(text.starts_with("THM thm2 CLAIM sylow-sub HOLDS\n"));
        assert!(text.contains("THM thm2 NOTE hawkes-in-factors NO witness=(3,2)\n"));
    }

    #[test]
    fn thm1_rejects_s3() {
        let err = verify_thm1(&s3_pair()).unwrap_err();
        assert!(matches!(err, GroupError::PreconditionFailed(m) if m.contains("factors 1 and 2")));
    }

    #[test]
    fn mut_on_s4() {
        let s4 = group(4, &["(1 2 3 4)", "(1 2)"]);
        let p = sylow(&s4, 2);
        let a4 = sub(&s4, &["(1 2 3)", "(2 3 4)"]);
        let r = verify_mut(&decomp(vec![p, a4])).unwrap();
        assert!(r.holds(), "{}", r.to_text());
        assert_eq!(r.claims.len(), 4);
        let note = r.observation("hawkes-upper-without-loops").unwrap();
        assert!(!note.holds);
        assert_eq!(note.witness, Some(Witness::Edge(2, 2)));
        let json = r.to_json();
        assert_eq!(json["theorem"], "mut");
        assert_eq!(json["claims"][0]["id"], "ncrit-lower");
        assert_eq!(json["claims"][0]["witness"], Value::Null);
    }

    #[test]
    fn thm1_on_direct_product() {
        // S3 x Q8 on 3 + 8 points
        let g = group(11, &["(1 2 3)", "(1 2)", "(4 5 7 10)(6 9 11 8)", "(4 6 7 11)(5 8 10 9)"]);
        assert_eq!(g.order(), 48);
        let a = sub(&g, &["(1 2 3)", "(1 2)"]);
        let b = sub(&g, &["(4 5 7 10)(6 9 11 8)", "(4 6 7 11)(5 8 10 9)"]);
        let d = decomp(vec![a, b]);
        let r = verify_thm1(&d).unwrap();
        assert!(r.holds(), "{}", r.to_text());
        let r = verify_lemma1(&d, FormationTag::Nilpotent).unwrap();
        assert!(r.holds(), "{}", r.to_text());
        assert_eq!(r.claims.len(), 7);
    }

    #[test]
    fn lemma1_trivial_quotient() {
        let r = verify_lemma1(&s3_pair(), FormationTag::Supersoluble).unwrap();
        assert!(r.holds());
        assert!(verify_lemma1(&s3_pair(), FormationTag::Nilpotent).is_err());
    }

    #[test]
    fn lemma2_examples() {
        for g in [
            group(3, &["(1 2 3)", "(1 2)"]),
            group(4, &["(1 2 3 4)", "(1 2)"]),
            group(4, &["(1 2 3 4)", "(1 3)"]),
            group(5, &["(1 2 3 4 5)", "(1 2)"]),
        ] {
            for f in [FormationTag::Nilpotent, FormationTag::Supersoluble] {
                let r = verify_lemma2(&g, f).unwrap();
                assert!(r.holds(), "{}", r.to_text());
            }
        }
    }

    #[test]
    fn equal_and_tower() {
        assert!(verify_equal(&group(4, &["(1 2 3)", "(2 3 4)"])).unwrap().holds());
        assert!(verify_equal(&group(4, &["(1 2 3 4)", "(1 2)"])).is_err());
    }

    #[test]
    fn ro2_triple() {
        // Z2 x Z2 x S3: three factors
        let g = group(7, &["(1 2 3)", "(1 2)", "(4 5)", "(6 7)"]);
        let d = decomp(vec![
            sub(&g, &["(1 2 3)", "(1 2)"]),
            sub(&g, &["(4 5)"]),
            sub(&g, &["(6 7)"]),
        ]);
        let r = verify_ro2(&d).unwrap();
        assert!(r.holds());
        assert!(verify_thm4(&d).unwrap().holds());
    }

    #[test]
    fn centralizer_lemma_example() {
        let g = group(5, &["(1 2 3)", "(1 2)", "(4 5)"]);
        let a = sub(&g, &["(1 2 3)", "(1 2)"]);
        let s = SchmidtWitness { p: 3, q: 2, subgroup: a.clone() };
        assert_eq!(is_schmidt_subgroup(&s.subgroup), Some((3, 2)));
        let r = verify_centralizer_lemma(&a, &s).unwrap();
        assert!(r.holds());
        assert!(r.claims[0].witness.is_some());
        let r = verify_centralizer_lemma(&g.whole(), &s).unwrap();
        assert!(r.holds());
    }

    #[test]
    fn undirected_on_s4() {
        let s4 = group(4, &["(1 2 3 4)", "(1 2)"]);
        let a4 = sub(&s4, &["(1 2 3)", "(2 3 4)"]);
        let r = verify_undirected_prop(&decomp(vec![s4.whole(), a4])).unwrap();
        assert!(r.holds());
        assert!(!r.observation("sylow-directed-eq").unwrap().holds);
    }
}
