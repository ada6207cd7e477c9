//! Group files, the `builtin:` registry, and the test corpus.
//!
//! File grammar, one statement per line:
//!
//! ```text
//! # comment
//! name S3            (optional)
//! degree 3
//! gen (1 2 3)
//! gen (1 2)
//! sub A:
//!   gen (1 2 3)
//! ```
//!
//! `gen` lines indented under `sub <name>:` belong to that subgroup.

use std::sync::Arc;

use crate::build::{alternating, cyclic, dihedral, direct_product, psl27, quaternion, semidirect_cyclic, symmetric};
use crate::error::{GroupError, Result};
use crate::group::{generate_group, subgroup_generated, FiniteGroup, Subgroup};
use crate::ops::{commutator_subgroup, sylow};
use crate::perm::{parse_cycles, Permutation};
use crate::series::center;

/// A parsed group file, before any group is generated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<String>,
    pub subgroups: Vec<(String, Vec<String>)>,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> GroupError {
    GroupError::Parse { line, column, message: message.into() }
}

/// Parses cycle notation on a given line, reporting columns relative to the line.
fn parse_gen(text: &str, line: usize, offset: usize, degree: usize) -> Result<Permutation> {
    let cycles = parse_cycles(text).map_err(|(col, msg)| parse_error(line, offset + col, msg))?;
    Permutation::from_cycles(degree, &cycles)
}

pub fn parse_group_file(text: &str) -> Result<GroupFile> {
    let mut file = GroupFile { name: String::new(), degree: 0, generators: Vec::new(), subgroups: Vec::new() };
    let mut in_sub = false;
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indented = content.starts_with(char::is_whitespace);
        let lead = content.chars().take_while(|c| c.is_whitespace()).count();
        let body = content.trim();
        let (keyword, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let rest_col = lead + keyword.chars().count() + 1 + (rest.chars().count() - rest.trim_start().chars().count());
        let rest = rest.trim();
        match keyword {
            "name" => {
                file.name = rest.to_string();
                in_sub = false;
            }
            "degree" => {
                if file.degree != 0 {
                    return Err(parse_error(line_no, lead + 1, "degree given twice"));
                }
                file.degree = rest
                    .parse::<usize>()
                    .ok()
                    .filter(|&d| d > 0)
                    .ok_or_else(|| parse_error(line_no, rest_col + 1, format!("bad degree '{rest}'")))?;
                in_sub = false;
            }
            "gen" => {
                if file.degree == 0 {
                    return Err(parse_error(line_no, lead + 1, "gen before degree"));
                }
                parse_gen(rest, line_no, rest_col, file.degree)?;
                if indented && in_sub {
                    file.subgroups.last_mut().expect("in a sub block").1.push(rest.to_string());
                } else {
                    in_sub = false;
                    file.generators.push(rest.to_string());
                }
            }
            "sub" => {
                let name = rest
                    .strip_suffix(':')
                    .map(str::trim)
                    .filter(|s| !s.is_empty() && !s.contains(char::is_whitespace))
                    .ok_or_else(|| parse_error(line_no, rest_col + 1, "expected 'sub <name>:'"))?;
                file.subgroups.push((name.to_string(), Vec::new()));
                in_sub = true;
            }
            other => {
                return Err(parse_error(line_no, lead + 1, format!("unknown keyword '{other}'")));
            }
        }
    }
    if file.degree == 0 {
        return Err(parse_error(1, 1, "missing degree line"));
    }
    Ok(file)
}

impl GroupFile {
    /// Generates the group and resolves the subgroup blocks against it.
    pub fn build(&self, cap: usize) -> Result<NamedGroup> {
        let to_perm = |s: &String| -> Result<Permutation> {
            let cycles = parse_cycles(s).map_err(|(col, msg)| parse_error(0, col, msg))?;
            Permutation::from_cycles(self.degree, &cycles)
        };
        let gens = self.generators.iter().map(to_perm).collect::<Result<Vec<_>>>()?;
        let group = generate_group(self.degree, &gens, cap)?;
        let mut subgroups = Vec::new();
        for (name, sgens) in &self.subgroups {
            let perms = sgens.iter().map(to_perm).collect::<Result<Vec<_>>>()?;
            subgroups.push((name.clone(), subgroup_generated(&group, &perms)?));
        }
        let name = if self.name.is_empty() { "G".to_string() } else { self.name.clone() };
        Ok(NamedGroup { name, group, subgroups })
    }

    pub fn from_group(g: &NamedGroup) -> GroupFile {
        let perms = |ps: Vec<Permutation>| -> Vec<String> {
            ps.iter().filter(|p| !p.is_identity()).map(|p| p.to_string()).collect()
        };
        GroupFile {
            name: g.name.clone(),
            degree: g.group.degree(),
            generators: perms(g.group.generator_perms()),
            subgroups: g.subgroups.iter().map(|(n, s)| (n.clone(), perms(s.generator_perms()))).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.name.is_empty() {
            out.push_str(&format!("name {}\n", self.name));
        }
        out.push_str(&format!("degree {}\n", self.degree));
        for g in &self.generators {
            out.push_str(&format!("gen {g}\n"));
        }
        for (name, gens) in &self.subgroups {
            out.push_str(&format!("sub {name}:\n"));
            for g in gens {
                out.push_str(&format!("  gen {g}\n"));
            }
        }
        out
    }
}

/// A group with named subgroups.
#[derive(Debug, Clone)]
pub struct NamedGroup {
    pub name: String,
    pub group: Arc<FiniteGroup>,
    pub subgroups: Vec<(String, Subgroup)>,
}

impl NamedGroup {
    fn new(name: &str, group: Arc<FiniteGroup>) -> NamedGroup {
        NamedGroup { name: name.to_string(), group, subgroups: Vec::new() }
    }

    fn with(mut self, name: &str, gens: &[&str]) -> NamedGroup {
        let perms: Vec<Permutation> = gens
            .iter()
            .map(|s| Permutation::from_cycles(self.group.degree(), &parse_cycles(s).expect("valid cycles")).expect("valid"))
            .collect();
        let sub = subgroup_generated(&self.group, &perms).expect("generators lie in the group");
        self.subgroups.push((name.to_string(), sub));
        self
    }

    /// Looks up a subgroup by name.
    ///
    /// Besides the declared names: `G`, `1`, `syl<p>`, `derived`, `center`, and
    /// an inline generator list `[(1 2 3);(1 2)]`.
    pub fn subgroup(&self, name: &str) -> Result<Subgroup> {
        if let Some((_, s)) = self.subgroups.iter().find(|(n, _)| n == name) {
            return Ok(s.clone());
        }
        let g = &self.group;
        match name {
            "G" => return Ok(g.whole()),
            "1" => return Ok(g.trivial_subgroup()),
            "derived" => return commutator_subgroup(&g.whole(), &g.whole()),
            "center" => return Ok(center(g)),
            _ => {}
        }
        if let Some(p) = name.strip_prefix("syl").and_then(|s| s.parse::<u64>().ok()) {
            if crate::numbers::is_prime(p) {
                return Ok(sylow(g, p));
            }
        }
        if let Some(inner) = name.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let perms = inner
                .split(';')
                .map(|s| {
                    let cycles = parse_cycles(s).map_err(|(col, msg)| parse_error(1, col + 1, msg))?;
                    Permutation::from_cycles(g.degree(), &cycles)
                })
                .collect::<Result<Vec<_>>>()?;
            return subgroup_generated(g, &perms);
        }
        Err(GroupError::Unknown(format!("subgroup '{name}' of {}", self.name)))
    }
}

fn parse_args(s: &str, name: &str, arity: usize) -> Option<Vec<usize>> {
    let inner = s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
    let args: Vec<usize> = inner.split(',').map(|a| a.trim().parse().ok()).collect::<Option<_>>()?;
    (args.len() == arity).then_some(args)
}

fn numeric_suffix(s: &str, prefix: &str) -> Option<usize> {
    s.strip_prefix(prefix).filter(|r| !r.is_empty()).and_then(|r| r.parse().ok())
}

fn builtin_item(item: &str, cap: usize) -> Result<NamedGroup> {
    let g = match item {
        "s3" => NamedGroup::new(item, symmetric(3, cap)?).with("Z3", &["(1 2 3)"]).with("Z2", &["(1 2)"]),
        "s4" => {
            let g = NamedGroup::new(item, symmetric(4, cap)?);
            let p = sylow(&g.group, 2);
            let mut g = g
                .with("A4", &["(1 2 3)", "(2 3 4)"])
                .with("V4", &["(1 2)(3 4)", "(1 3)(2 4)"])
                .with("S3", &["(1 2 3)", "(1 2)"])
                .with("Z3", &["(1 2 3)"]);
            g.subgroups.insert(0, ("P".to_string(), p));
            g
        }
        "a4" => NamedGroup::new(item, alternating(4, cap)?)
            .with("V4", &["(1 2)(3 4)", "(1 3)(2 4)"])
            .with("Z3", &["(1 2 3)"]),
        "d8" => NamedGroup::new(item, dihedral(8, cap)?).with("Z4", &["(1 2 3 4)"]),
        "q8" => NamedGroup::new(item, quaternion(cap)?),
        "psl27" => NamedGroup::new(item, psl27(cap)?),
        _ => {
            if let Some([n]) = parse_args(item, "zn", 1).as_deref() {
                NamedGroup::new(item, cyclic(*n, cap)?)
            } else if let Some([n, m, k]) = parse_args(item, "sd", 3).as_deref() {
                let g = NamedGroup::new(item, semidirect_cyclic(*n, *m, *k, cap)?);
                let gens = g.group.generator_perms();
                let sub = |x: &Permutation| subgroup_generated(&g.group, std::slice::from_ref(x)).expect("generator");
                let (a, b) = (sub(&gens[0]), sub(&gens[1]));
                let mut g = g;
                g.subgroups.push(("N".to_string(), a));
                g.subgroups.push(("H".to_string(), b));
                g
            } else if let Some(n) = numeric_suffix(item, "s") {
                NamedGroup::new(item, symmetric(n, cap)?)
            } else if let Some(n) = numeric_suffix(item, "a") {
                NamedGroup::new(item, alternating(n, cap)?)
            } else if let Some(n) = numeric_suffix(item, "d") {
                NamedGroup::new(item, dihedral(n, cap)?)
            } else if let Some(n) = numeric_suffix(item, "z") {
                NamedGroup::new(item, cyclic(n, cap)?)
            } else {
                return Err(GroupError::Unknown(format!("builtin group '{item}'")));
            }
        }
    };
    Ok(g)
}

/// Resolves `s3`, `s4`, `a4`, `d8`, `q8`, `psl27`, `zn(n)`, `sd(n,m,k)`,
/// `s<n>`, `a<n>`, `d<2n>`, `z<n>`, and direct products joined by `*`.
/// Products name their embedded factors `F1`, `F2`, ….
pub fn builtin(spec: &str, cap: usize) -> Result<NamedGroup> {
    let spec = spec.trim();
    let items: Vec<&str> = spec.split('*').map(str::trim).collect();
    if items.len() == 1 {
        return builtin_item(items[0], cap);
    }
    let parts = items.iter().map(|i| builtin_item(i, cap)).collect::<Result<Vec<_>>>()?;
    let mut group = parts[0].group.clone();
    for p in &parts[1..] {
        group = direct_product(&group, &p.group, cap)?;
    }
    let mut out = NamedGroup::new(spec, group.clone());
    let mut offset = 0;
    for (i, p) in parts.iter().enumerate() {
        let gens: Vec<Permutation> =
            p.group.generator_perms().iter().map(|x| x.embed(offset, group.degree())).collect();
        out.subgroups.push((format!("F{}", i + 1), subgroup_generated(&group, &gens)?));
        offset += p.group.degree();
    }
    Ok(out)
}

/// `builtin:<spec>` or a path to a group file.
pub fn load_group(spec: &str, cap: usize) -> Result<NamedGroup> {
    if let Some(rest) = spec.strip_prefix("builtin:") {
        return builtin(rest, cap);
    }
    let text = std::fs::read_to_string(spec).map_err(|e| GroupError::Unknown(format!("{spec}: {e}")))?;
    let mut g = parse_group_file(&text)?.build(cap)?;
    if g.name == "G" {
        g.name = spec.to_string();
    }
    Ok(g)
}

/// The corpus: builtin specs with their orders.
pub const CORPUS: &[(&str, usize)] = &[
    ("zn(2)", 2),
    ("zn(6)", 6),
    ("zn(12)", 12),
    ("zn(30)", 30),
    ("q8", 8),
    ("d8", 8),
    ("s3", 6),
    ("d10", 10),
    ("sd(3,4,2)", 12),
    ("d12", 12),
    ("a4", 12),
    ("sd(8,2,3)", 16),
    ("d18", 18),
    ("sd(5,4,2)", 20),
    ("sd(7,3,2)", 21),
    ("s4", 24),
    ("a4*zn(2)", 24),
    ("d8*zn(3)", 24),
    ("sd(3,8,2)", 24),
    ("sd(9,3,4)", 27),
    ("s3*zn(5)", 30),
    ("d30", 30),
    ("s3*s3", 36),
    ("sd(13,3,3)", 39),
    ("sd(7,6,3)", 42),
    ("q8*s3", 48),
    ("sd(9,6,2)", 54),
    ("sd(11,5,3)", 55),
    ("a5", 60),
    ("a4*zn(5)", 60),
    ("s3*d10", 60),
    ("s4*zn(3)", 72),
    ("a4*s3", 72),
    ("sd(25,4,7)", 100),
    ("s5", 120),
    ("a5*zn(2)", 120),
    ("sd(7,3,2)*s3", 126),
    ("s4*s3", 144),
    ("a4*a4", 144),
    ("psl27", 168),
    ("sd(5,4,2)*sd(3,4,2)", 240),
    ("a5*s3", 360),
    ("s4*sd(5,4,2)", 480),
];

/// Corpus groups of order at most `max_order`, in corpus order.
pub fn corpus(max_order: usize, cap: usize) -> Result<Vec<NamedGroup>> {
    CORPUS
        .iter()
        .filter(|&&(_, order)| order <= max_order)
        .map(|&(spec, _)| builtin(spec, cap))
        .collect()
}
