//! Permutations of `{1..n}` stored as image sequences.
//!
//! Composition is left to right: `a.then(&b)` applies `a` first, so points
//! are acted on from the right and conjugation is `x^g = g⁻¹xg`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{GroupError, Result};

/// A bijection of `{1..degree}`. Internally 0-based.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 1-based images (`images[i-1]` is the image of `i`).
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(GroupError::InvalidPermutation("degree must be positive".into()));
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n || seen[img - 1] {
                return Err(GroupError::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 1..{n}"
                )));
            }
            seen[img - 1] = true;
            out.push((img - 1) as u32);
        }
        Ok(Permutation {
            images: out.into_boxed_slice(),
        })
    }

    /// Builds a permutation from 0-based images without validation.
    pub(crate) fn from_raw(images: Vec<u32>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| i as u32 == v)
        });
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// Builds a permutation of the given degree from 1-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if degree == 0 {
            return Err(GroupError::InvalidPermutation("degree must be positive".into()));
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &pt in cycle {
                if pt == 0 || pt > degree {
                    return Err(GroupError::DegreeMismatch {
                        expected: degree,
                        found: pt,
                    });
                }
                if used[pt - 1] {
                    return Err(GroupError::InvalidPermutation(format!(
                        "point {pt} occurs twice in cycles"
                    )));
                }
                used[pt - 1] = true;
            }
            for (i, &pt) in cycle.iter().enumerate() {
                let next = cycle[(i + 1) % cycle.len()];
                images[pt - 1] = (next - 1) as u32;
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `pt`.
    pub fn image(&self, pt: usize) -> usize {
        self.images[pt - 1] as usize + 1
    }

    /// 1-based image sequence.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in composition");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&v| other.images[v as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// Disjoint cycles of length at least two, 1-based, each starting at its
    /// smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut cur = self.images[start] as usize;
            while cur != start {
                seen[cur] = true;
                cycle.push(cur + 1);
                cur = self.images[cur] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Least `k ≥ 1` with `self^k` the identity: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// Extends to a larger degree by fixing the new points, after shifting
    /// this permutation's support by `offset`.
    pub fn embed(&self, offset: usize, degree: usize) -> Permutation {
        assert!(offset + self.degree() <= degree);
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &v) in self.images.iter().enumerate() {
            images[offset + i] = v + offset as u32;
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.images
            .len()
            .cmp(&other.images.len())
            .then_with(|| self.images.cmp(&other.images))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, pt) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{pt}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses whitespace-separated parenthesized cycles such as `(1 2 3)(4 5)`.
///
/// Returns the column (1-based, in chars) of the offending token on error.
pub fn parse_cycles(text: &str) -> std::result::Result<Vec<Vec<usize>>, (usize, String)> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut cycles = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c != '(' {
            return Err((i + 1, format!("expected '(' but found '{c}'")));
        }
        let open = i;
        i += 1;
        let mut cycle = Vec::new();
        loop {
            while i < chars.len() && chars[i].is_whitespace() {
                i += 1;
            }
            if i >= chars.len() {
                return Err((open + 1, "unterminated cycle".into()));
            }
            if chars[i] == ')' {
                i += 1;
                break;
            }
            if !chars[i].is_ascii_digit() {
                return Err((i + 1, format!("unexpected character '{}'", chars[i])));
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: String = chars[start..i].iter().collect();
            let value = num
                .parse::<usize>()
                .map_err(|_| (start + 1, format!("bad point '{num}'")))?;
            if value == 0 {
                return Err((start + 1, "points are numbered from 1".into()));
            }
            cycle.push(value);
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
    }
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(deg: usize, s: &str) -> Permutation {
        Permutation::from_cycles(deg, &parse_cycles(s).unwrap()).unwrap()
    }

    #[test]
    fn element_orders() {
        assert_eq!(Permutation::identity(4).order(), 1);
        assert_eq!(p(3, "(1 2 3)").order(), 3);
        assert_eq!(p(5, "(1 2)(3 4 5)").order(), 6);
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = p(3, "(1 2)");
        let b = p(3, "(2 3)");
        // 1 -a-> 2 -b-> 3
        assert_eq!(a.then(&b).image(1), 3);
        assert_eq!(a.then(&b), p(3, "(1 3 2)"));
    }

    #[test]
    fn display_round_trip() {
        let x = p(6, "(4 5)(1 3 2)");
        assert_eq!(x.to_string(), "(1 3 2)(4 5)");
        assert_eq!(p(6, &x.to_string()), x);
        assert_eq!(Permutation::identity(2).to_string(), "()");
    }

    #[test]
    fn invalid_inputs() {
        assert!(Permutation::from_images(&[1, 1, 2]).is_err());
        assert!(Permutation::from_images(&[]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![1, 4]]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![1, 2], vec![2, 3]]).is_err());
        assert_eq!(parse_cycles("(1 2").unwrap_err().0, 1);
        assert_eq!(parse_cycles("(1 2) x").unwrap_err().0, 7);
        assert_eq!(parse_cycles("(1 a)").unwrap_err().0, 4);
    }

    #[test]
    fn embedding_shifts_support() {
        let x = p(3, "(1 2 3)").embed(2, 5);
        assert_eq!(x.to_string(), "(3 4 5)");
    }
}
