//! Named fans used throughout the tests, benches and bundled corpus.

use crate::fan::{product_fan, Fan};
use crate::lattice::LatticeVector;

/// `ℙⁿ`: rays `e₁, …, eₙ, −(e₁+…+eₙ)`, every proper subset spanning a cone.
pub fn projective_space(n: usize) -> Fan {
    let mut rays: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::unit(n, i)).collect();
    rays.push(LatticeVector::from(vec![-1; n]));
    let max_cones = (0..=n)
        .map(|skip| (0..=n).filter(|&i| i != skip).collect())
        .collect();
    Fan::new(n, rays, max_cones).expect("projective space fan")
}

/// Hirzebruch surface `F_a`: rays `(1,0), (0,1), (−1,a), (0,−1)` in cyclic order.
pub fn hirzebruch(a: i64) -> Fan {
    let rays = vec![
        LatticeVector::from([1, 0]),
        LatticeVector::from([0, 1]),
        LatticeVector::from([-1, a]),
        LatticeVector::from([0, -1]),
    ];
    Fan::new(2, rays, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]])
        .expect("Hirzebruch fan")
}

/// Weighted projective plane `ℙ(1,1,2)`: rays `(1,0), (0,1), (−1,−2)`.
pub fn weighted_p112() -> Fan {
    let rays = vec![
        LatticeVector::from([1, 0]),
        LatticeVector::from([0, 1]),
        LatticeVector::from([-1, -2]),
    ];
    Fan::new(2, rays, vec![vec![0, 1], vec![1, 2], vec![2, 0]]).expect("P(1,1,2) fan")
}

/// `𝔸²`: the positive quadrant and its faces. Not complete.
pub fn affine_plane() -> Fan {
    let rays = vec![LatticeVector::from([1, 0]), LatticeVector::from([0, 1])];
    Fan::new(2, rays, vec![vec![0, 1]]).expect("A^2 fan")
}

/// `Σ₁ × … × Σₖ`; the trivial rank-0 fan for an empty list.
pub fn product(factors: &[&Fan]) -> Fan {
    factors
        .iter()
        .fold(Fan::trivial(0), |acc, f| product_fan(&acc, f))
}

/// The named complete fans of the bundled corpus, as `(name, fan)`.
pub fn corpus() -> Vec<(&'static str, Fan)> {
    let p1 = projective_space(1);
    let p2 = projective_space(2);
    vec![
        ("P1", p1.clone()),
        ("P2", p2.clone()),
        ("P3", projective_space(3)),
        ("P1xP1", product(&[&p1, &p1])),
        ("F0", hirzebruch(0)),
        ("F1", hirzebruch(1)),
        ("F2", hirzebruch(2)),
        ("F3", hirzebruch(3)),
        ("P112", weighted_p112()),
        ("P1xP2", product(&[&p1, &p2])),
        ("P1xP1xP1", product(&[&p1, &p1, &p1])),
        ("P2xP2", product(&[&p2, &p2])),
        ("P1xF1", product(&[&p1, &hirzebruch(1)])),
    ]
}
