//! Standard permutation groups.

use std::sync::Arc;

use num_integer::Integer;

use crate::error::{GroupError, Result};
use crate::group::{generate_group, FiniteGroup};
use crate::perm::Permutation;

fn cycle(degree: usize, points: impl IntoIterator<Item = usize>) -> Permutation {
    let pts: Vec<usize> = points.into_iter().collect();
    Permutation::from_cycles(degree, &[pts]).expect("points within degree")
}

/// `Z_n`, regular on `n` points.
pub fn cyclic(n: usize, cap: usize) -> Result<Arc<FiniteGroup>> {
    if n == 0 {
        return Err(GroupError::InvalidPermutation("cyclic group of order 0".into()));
    }
    generate_group(n, &[cycle(n, 1..=n)], cap)
}

/// The dihedral group of the given order `2n`, acting on `n` points for `n ≥ 3`.
pub fn dihedral(order: usize, cap: usize) -> Result<Arc<FiniteGroup>> {
    if order < 2 || order % 2 != 0 {
        return Err(GroupError::InvalidPermutation(format!("no dihedral group of order {order}")));
    }
    let n = order / 2;
    match n {
        1 => cyclic(2, cap),
        2 => generate_group(4, &[cycle(4, [1, 2]), cycle(4, [3, 4])], cap),
        _ => {
            let rot = cycle(n, 1..=n);
            let pairs: Vec<Vec<usize>> = (2..=n).map(|i| (i, n + 2 - i)).filter(|&(i, j)| i < j).map(|(i, j)| vec![i, j]).collect();
            let refl = Permutation::from_cycles(n, &pairs).expect("points within degree");
            generate_group(n, &[rot, refl], cap)
        }
    }
}

pub fn symmetric(n: usize, cap: usize) -> Result<Arc<FiniteGroup>> {
    if n == 0 {
        return Err(GroupError::InvalidPermutation("degree must be positive".into()));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(cycle(n, 1..=n));
        gens.push(cycle(n, [1, 2]));
    }
    generate_group(n, &gens, cap)
}

/// `A_n`, generated by the 3-cycles `(1 2 k)`.
pub fn alternating(n: usize, cap: usize) -> Result<Arc<FiniteGroup>> {
    if n == 0 {
        return Err(GroupError::InvalidPermutation("degree must be positive".into()));
    }
    let gens: Vec<Permutation> = (3..=n).map(|k| cycle(n, [1, 2, k])).collect();
    generate_group(n, &gens, cap)
}

/// The quaternion group `Q_8`, regular on 8 points.
pub fn quaternion(cap: usize) -> Result<Arc<FiniteGroup>> {
    let i = Permutation::from_cycles(8, &[vec![1, 2, 4, 7], vec![3, 6, 8, 5]]).expect("valid");
    let j = Permutation::from_cycles(8, &[vec![1, 3, 4, 8], vec![2, 5, 7, 6]]).expect("valid");
    generate_group(8, &[i, j], cap)
}

/// `PSL(2, 7)` acting on the 7 points of the Fano plane.
pub fn psl27(cap: usize) -> Result<Arc<FiniteGroup>> {
    let a = cycle(7, 1..=7);
    let b = Permutation::from_cycles(7, &[vec![1, 2], vec![3, 6]]).expect("valid");
    generate_group(7, &[a, b], cap)
}

/// `G × H` on disjoint point sets, `G` first.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup, cap: usize) -> Result<Arc<FiniteGroup>> {
    let degree = g.degree() + h.degree();
    let mut gens: Vec<Permutation> = g.generator_perms().iter().map(|x| x.embed(0, degree)).collect();
    gens.extend(h.generator_perms().iter().map(|x| x.embed(g.degree(), degree)));
    generate_group(degree, &gens, cap)
}

fn pow_mod(base: u64, exp: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    for _ in 0..exp {
        r = r * base % m;
    }
    r
}

/// `Z_n ⋊ Z_m` with the generator of `Z_m` acting as `a ↦ a^k`.
///
/// `Z_n` acts regularly on points `1..n` and the complement acts as
/// `x ↦ kx`. When `k` has order less than `m` modulo `n`, an extra `m`-cycle on
/// new points makes the complement faithful.
pub fn semidirect_cyclic(n: usize, m: usize, k: usize, cap: usize) -> Result<Arc<FiniteGroup>> {
    if n == 0 || m == 0 {
        return Err(GroupError::BadAction("orders must be positive".into()));
    }
    let (nn, kk) = (n as u64, k as u64);
    if kk.gcd(&nn) != 1 || pow_mod(kk % nn, m as u64, nn) != 1 % nn {
        return Err(GroupError::BadAction(format!("{k}^{m} is not 1 modulo {n}, or gcd({k}, {n}) > 1")));
    }
    let ord = (1..=m as u64).find(|&e| pow_mod(kk % nn, e, nn) == 1 % nn).expect("k^m = 1") as usize;
    let degree = if ord == m { n } else { n + m };
    let shift: Vec<usize> = (0..degree).map(|x| if x < n { (x + 1) % n + 1 } else { x + 1 }).collect();
    let mult: Vec<usize> = (0..degree)
        .map(|x| {
            if x < n {
                x * k % n + 1
            } else {
                n + (x - n + 1) % m + 1
            }
        })
        .collect();
    let a = Permutation::from_images(&shift)?;
    let b = Permutation::from_images(&mult)?;
    generate_group(degree, &[a, b], cap)
}
