//! Test-only oracles, kept independent of the library's algorithms.
#![allow(dead_code)]

use std::collections::BTreeSet;

use fwps_core::{extremal_weights, IntMatrix, LatticeSimplex, WeightSystem};
use num_bigint::BigInt;
use num_rational::Ratio;
use rand::Rng;

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        _ => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * cofactor_det(&minor)
            })
            .sum(),
    }
}

pub fn to_matrix(m: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap()
}

type R = Ratio<i128>;

fn unit(a: i128) -> R {
    R::new(1, a)
}

/// Unpruned reference search with explicit nested loops: each part scans
/// upward from the previous one, skipping values whose reciprocal is too
/// large and stopping once the remaining slots cannot reach the target. The
/// last part is solved directly.
pub fn unpruned_partitions(iota: i128, n: usize) -> BTreeSet<Vec<u64>> {
    let target = R::new(1, iota);
    let mut out = BTreeSet::new();
    let mut accept = |parts: &[i128], rest: R, lo: i128| {
        if *rest.numer() == 1 && *rest.denom() >= lo {
            let mut v: Vec<u64> = parts.iter().map(|&a| a as u64).collect();
            v.push(*rest.denom() as u64);
            out.insert(v);
        }
    };
    // the stop condition (slots)/a < rest is the only cut-off
    let fits = |a: i128, slots: i128, rest: R| R::from_integer(slots) * unit(a) >= rest;
    match n {
        2 => {
            let mut a1 = 1;
            while fits(a1, 2, target) {
                if unit(a1) < target {
                    accept(&[a1], target - unit(a1), a1);
                }
                a1 += 1;
            }
        }
        3 => {
            let mut a1 = 1;
            while fits(a1, 3, target) {
                if unit(a1) < target {
                    let r1 = target - unit(a1);
                    let mut a2 = a1;
                    while fits(a2, 2, r1) {
                        if unit(a2) < r1 {
                            accept(&[a1, a2], r1 - unit(a2), a2);
                        }
                        a2 += 1;
                    }
                }
                a1 += 1;
            }
        }
        4 => {
            let mut a1 = 1;
            while fits(a1, 4, target) {
                if unit(a1) < target {
                    let r1 = target - unit(a1);
                    let mut a2 = a1;
                    while fits(a2, 3, r1) {
                        if unit(a2) < r1 {
                            let r2 = r1 - unit(a2);
                            let mut a3 = a2;
                            while fits(a3, 2, r2) {
                                if unit(a3) < r2 {
                                    accept(&[a1, a2, a3], r2 - unit(a3), a3);
                                }
                                a3 += 1;
                            }
                        }
                        a2 += 1;
                    }
                }
                a1 += 1;
            }
        }
        5 => {
            let mut a1 = 1;
            while fits(a1, 5, target) {
                if unit(a1) < target {
                    let r1 = target - unit(a1);
                    let mut a2 = a1;
                    while fits(a2, 4, r1) {
                        if unit(a2) < r1 {
                            let r2 = r1 - unit(a2);
                            let mut a3 = a2;
                            while fits(a3, 3, r2) {
                                if unit(a3) < r2 {
                                    let r3 = r2 - unit(a3);
                                    let mut a4 = a3;
                                    while fits(a4, 2, r3) {
                                        if unit(a4) < r3 {
                                            accept(&[a1, a2, a3, a4], r3 - unit(a4), a4);
                                        }
                                        a4 += 1;
                                    }
                                }
                                a3 += 1;
                            }
                        }
                        a2 += 1;
                    }
                }
                a1 += 1;
            }
        }
        _ => panic!("reference search supports 2 <= n <= 5"),
    }
    out
}

/// Random unimodular `d × d` matrix as a product of elementary operations.
pub fn random_unimodular<G: Rng>(rng: &mut G, d: usize) -> IntMatrix {
    let mut m: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
    if d == 1 {
        if rng.gen_bool(0.5) {
            m[0][0] = -1;
        }
        return to_matrix(&m);
    }
    for _ in 0..3 * d {
        let i = rng.gen_range(0..d);
        let mut j = rng.gen_range(0..d);
        while j == i {
            j = rng.gen_range(0..d);
        }
        match rng.gen_range(0..4) {
            0 => m.swap(i, j),
            1 => m[i].iter_mut().for_each(|x| *x = -*x),
            _ => {
                let f = rng.gen_range(-2..=2);
                let src = m[j].clone();
                for (x, s) in m[i].iter_mut().zip(src) {
                    *x += f * s;
                }
            }
        }
    }
    to_matrix(&m)
}

/// `U · diag(k, 1, …, 1) · V` with random unimodular `U`, `V`: a map onto a
/// sublattice of index `k`.
pub fn random_sublattice_map<G: Rng>(rng: &mut G, d: usize, k: i64) -> IntMatrix {
    let u = random_unimodular(rng, d);
    let v = random_unimodular(rng, d);
    let diag: Vec<Vec<i64>> = (0..d)
        .map(|i| (0..d).map(|j| if i != j { 0 } else if i == 0 { k } else { 1 }).collect())
        .collect();
    u.mul(&to_matrix(&diag)).unwrap().mul(&v).unwrap()
}

/// Reduced well-formed weight systems used throughout the checks.
pub fn catalog_weights() -> Vec<WeightSystem> {
    let mut out: Vec<WeightSystem> = [&[1u64, 1, 1][..], &[2, 1, 1], &[3, 1, 1, 1], &[6, 4, 1, 1], &[4, 1, 1], &[28, 12, 1, 1]]
        .iter()
        .map(|w| WeightSystem::from_u64(w).unwrap())
        .collect();
    for iota in 1..=4 {
        for d in 2..=5 {
            let q = extremal_weights(iota, d).unwrap();
            if !out.contains(&q) {
                out.push(q);
            }
        }
    }
    out
}

/// Catalog simplices: one per catalog weight system plus the fake plane
/// with weights (4,2,2).
pub fn catalog_simplices() -> Vec<LatticeSimplex> {
    let mut out: Vec<LatticeSimplex> =
        catalog_weights().iter().map(|q| LatticeSimplex::from_weights(q).unwrap()).collect();
    out.push(LatticeSimplex::from_i64(&[&[1, 0], &[-1, 2], &[-1, -2]]).unwrap());
    out
}

/// A sublattice image of `p` with primitive vertices, if one is found in a
/// few tries; otherwise the last (non-primitive) attempt.
pub fn random_fake<G: Rng>(rng: &mut G, p: &LatticeSimplex) -> LatticeSimplex {
    let d = p.dim();
    let mut last = None;
    for _ in 0..20 {
        let k = rng.gen_range(2..=3);
        let image = p.transform(&random_sublattice_map(rng, d, k)).unwrap();
        if image.has_primitive_vertices() {
            return image;
        }
        last = Some(image);
    }
    last.unwrap()
}
