#![allow(dead_code)]

use rand::Rng;
use toraut_core::{Fan, LatticeMatrix, LatticeVector};

fn cross(u: (i64, i64), v: (i64, i64)) -> i64 {
    u.0 * v.1 - u.1 * v.0
}

fn half(v: (i64, i64)) -> u8 {
    if v.1 > 0 || (v.1 == 0 && v.0 > 0) {
        0
    } else {
        1
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Complete rank-2 fan whose rays are the primitive directions of `vectors`
/// plus whatever is needed to close every angular gap of at least π.
pub fn complete_fan_2d(vectors: &[(i64, i64)]) -> Fan {
    let mut rays: Vec<(i64, i64)> = vectors
        .iter()
        .filter(|v| **v != (0, 0))
        .map(|&(x, y)| {
            let g = gcd(x, y);
            (x / g, y / g)
        })
        .collect();
    if rays.is_empty() {
        rays.push((1, 0));
    }
    loop {
        rays.sort_by(|&a, &b| half(a).cmp(&half(b)).then(0.cmp(&cross(a, b))));
        rays.dedup();
        let k = rays.len();
        let gap = (0..k).find(|&i| {
            let (u, v) = (rays[i], rays[(i + 1) % k]);
            k == 1 || cross(u, v) <= 0
        });
        match gap {
            // rotate by a quarter turn into the gap
            Some(i) => {
                let u = rays[i];
                rays.push((-u.1, u.0));
            }
            None => break,
        }
    }
    let k = rays.len();
    let lv: Vec<LatticeVector> = rays.iter().map(|&(x, y)| LatticeVector::from([x, y])).collect();
    let cones = (0..k).map(|i| vec![i, (i + 1) % k]).collect();
    Fan::new(2, lv, cones).expect("angularly sorted rays with gaps below π")
}

pub fn random_complete_fan_2d(rng: &mut impl Rng) -> Fan {
    let count = rng.gen_range(1..=5);
    let vectors: Vec<(i64, i64)> = (0..count)
        .map(|_| (rng.gen_range(-3..=3), rng.gen_range(-3..=3)))
        .collect();
    complete_fan_2d(&vectors)
}

/// Product of elementary row operations with small multipliers.
pub fn unimodular_from_ops(n: usize, ops: &[(usize, usize, i64)]) -> LatticeMatrix {
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for &(a, b, k) in ops {
        let (a, b) = (a % n, b % n);
        if a == b {
            if k < 0 {
                for x in m[a].iter_mut() {
                    *x = -*x;
                }
            } else {
                m.swap(a, (a + 1) % n);
            }
        } else {
            for j in 0..n {
                m[a][j] += k * m[b][j];
            }
        }
    }
    let rows: Vec<LatticeVector> = m.into_iter().map(LatticeVector::from).collect();
    let out = LatticeMatrix::from_rows(n, &rows).unwrap();
    debug_assert!(out.is_unimodular().unwrap());
    out
}

pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> LatticeMatrix {
    let ops: Vec<(usize, usize, i64)> = (0..3 * n)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(-2..=2)))
        .collect();
    unimodular_from_ops(n, &ops)
}
pub mod props;
