//! Oracles and property checks shared by the integration targets. Nothing
//! here calls into the code it is used to check, beyond building inputs.
#![allow(dead_code)]

pub mod props;

use coxquot::exactla::IntMat;
use coxquot::gb::Ideal;
use coxquot::num::BigRational;
use coxquot::poly::{Poly, Ring};

/// Splits of `[n]` as bitmasks of the side holding 1 (bit 0).
pub fn splits(n: usize) -> Vec<u64> {
    (0u64..1 << n)
        .filter(|m| m & 1 == 1)
        .filter(|m| {
            let k = m.count_ones() as usize;
            k >= 2 && n - k >= 2
        })
        .collect()
}

pub fn full(n: usize) -> u64 {
    (1u64 << n) - 1
}

pub fn bit(i: usize) -> u64 {
    1 << (i - 1)
}

/// Two splits are compatible when one of the four corner intersections is empty.
pub fn compatible(n: usize, a: u64, b: u64) -> bool {
    let (ac, bc) = (full(n) & !a, full(n) & !b);
    a & b == 0 || a & bc == 0 || ac & b == 0 || ac & bc == 0
}

/// Sets of `n − 3` pairwise compatible splits, found by plain backtracking.
pub fn maximal_compatible_sets(n: usize) -> Vec<Vec<u64>> {
    fn go(n: usize, all: &[u64], start: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == n - 3 {
            out.push(cur.clone());
            return;
        }
        for k in start..all.len() {
            if cur.iter().all(|&c| compatible(n, c, all[k])) {
                cur.push(all[k]);
                go(n, all, k + 1, cur, out);
                cur.pop();
            }
        }
    }
    let all = splits(n);
    let mut out = Vec::new();
    go(n, &all, 0, &mut Vec::new(), &mut out);
    out
}

pub fn double_factorial(k: usize) -> usize {
    (1..=k).rev().step_by(2).product()
}

pub fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn elements(mask: u64) -> Vec<usize> {
    (1..=64).filter(|&i| mask & bit(i) != 0).collect()
}

/// Variable name of a split: edges by their pair, everything else by the
/// side holding 1.
pub fn var_name(n: usize, side: &[usize]) -> String {
    let mask: u64 = side.iter().map(|&i| bit(i)).sum();
    let mask = if mask & 1 == 1 { mask } else { full(n) & !mask };
    let e = elements(mask);
    let digits = |v: &[usize]| v.iter().map(ToString::to_string).collect::<String>();
    if e.len() == 2 {
        return format!("x{}", digits(&e));
    }
    let rest = elements(full(n) & !mask);
    if rest.len() == 2 {
        return format!("x{}", digits(&rest));
    }
    format!("x{}", digits(&e))
}

/// Incidence matrix of `K_n` with columns `12, 13, …, (n−1)n`.
pub fn incidence(n: usize) -> IntMat {
    let pairs = pairs(n);
    let rows: Vec<Vec<i64>> =
        (1..=n).map(|v| pairs.iter().map(|&(i, j)| (i == v || j == v) as i64).collect()).collect();
    IntMat::from_rows(&rows)
}

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
}

/// Whether the split `mask` puts `a, b` on one side and `c, d` on the other.
pub fn separates(mask: u64, a: usize, b: usize, c: usize, d: usize) -> bool {
    let on = |x| mask & bit(x) != 0;
    (on(a) && on(b) && !on(c) && !on(d)) || (!on(a) && !on(b) && on(c) && on(d))
}

pub fn poly(ring: &Ring, s: &str) -> Poly {
    Poly::parse(ring, s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn one() -> BigRational {
    BigRational::from_integer(1.into())
}

/// Membership in the Laurent extension of `i`: clear denominators and test
/// against the polynomial part.
pub fn laurent_contains(i: &Ideal, f: &Poly) -> bool {
    let part = i.polynomial_part().unwrap();
    let f = f.clear_denominators().in_ring(part.ring()).unwrap();
    part.contains(&f).unwrap()
}

/// Mutual membership of generators.
pub fn laurent_equal(a: &Ideal, b: &Ideal) -> bool {
    a.gens().iter().all(|g| laurent_contains(b, &g.embed_by_name(b.ring()).unwrap()))
        && b.gens().iter().all(|g| laurent_contains(a, &g.embed_by_name(a.ring()).unwrap()))
}
