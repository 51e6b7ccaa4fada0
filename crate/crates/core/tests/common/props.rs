//! Property bodies shared by the proptest suite and the acceptance runner.

use std::collections::BTreeSet;

use num::{BigInt, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use toraut_core::fan::dual_cone;
use toraut_core::roots::{root_coordinate_bound, roots_oracle};
use toraut_core::{catalog, demazure_roots, fan_automorphisms, product_fan, Cone, Error, LatticeMatrix, LatticeVector};

use super::{complete_fan_2d, unimodular_from_ops};

pub type Ops = Vec<(usize, usize, i64)>;

pub fn fan_vectors() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-3i64..=3, -3i64..=3), 1..=5)
}

pub fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

pub fn cone_generators() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2usize..=3).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-3i64..=3, n), 1..=5))
}

pub fn unimodular_ops() -> impl Strategy<Value = Ops> {
    prop::collection::vec((0usize..4, 0usize..4, -2i64..=2), 0..8)
}

/// `Aut(Σ)` contains the identity and is closed under products and inverses.
pub fn group_closure(vectors: &[(i64, i64)]) -> Result<(), TestCaseError> {
    let fan = complete_fan_2d(vectors);
    let autos = fan_automorphisms(&fan).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let set: BTreeSet<Vec<Vec<BigInt>>> = autos.iter().map(|a| a.matrix.entries().to_vec()).collect();
    prop_assert_eq!(set.len(), autos.len());
    prop_assert!(set.contains(LatticeMatrix::identity(2).entries()));
    for a in &autos {
        let inv = a.matrix.inverse_unimodular().unwrap().expect("unimodular");
        prop_assert!(set.contains(inv.entries()));
        for b in &autos {
            let ab = &a.matrix * &b.matrix;
            prop_assert!(set.contains(ab.entries()));
        }
        let image = fan.transform(&a.matrix).unwrap();
        prop_assert_eq!(&image, &fan);
    }
    Ok(())
}

/// `(σ^∨)^∨ = σ`; for lower-dimensional cones the double dual is compared
/// through membership of a box of lattice points.
pub fn dual_dual(generators: &[Vec<i64>]) -> Result<(), TestCaseError> {
    let n = generators[0].len();
    let gens: Vec<LatticeVector> = generators
        .iter()
        .filter(|g| g.iter().any(|&x| x != 0))
        .map(|g| LatticeVector::from_i64s(g))
        .collect();
    let cone = match Cone::from_rays(n, &gens) {
        Ok(c) => c,
        Err(Error::NotStrictlyConvex) => return Ok(()),
        Err(e) => return Err(TestCaseError::fail(e.to_string())),
    };
    let dual = dual_cone(&cone);
    if let Some(d) = dual.as_cone() {
        let dd = dual_cone(&d);
        prop_assert!(dd.lineality.is_empty());
        let back = Cone::from_rays(n, &dd.rays).unwrap();
        prop_assert_eq!(&back, &cone);
    }
    // x ∈ σ iff x pairs non-negatively with the dual rays and trivially
    // with the lineality space
    let r = 2i64;
    let mut x = vec![-r; n];
    loop {
        let v = LatticeVector::from_i64s(&x);
        let in_dd = dual.rays.iter().all(|u| !u.pairing(&v).unwrap().is_negative())
            && dual.lineality.iter().all(|w| w.pairing(&v).unwrap().is_zero());
        prop_assert_eq!(in_dd, cone.contains(&v), "point {}", v);
        let Some(k) = (0..n).rev().find(|&k| x[k] < r) else { break };
        x[k] += 1;
        for c in x.iter_mut().skip(k + 1) {
            *c = -r;
        }
    }
    Ok(())
}

/// `H = U·A`, `U` unimodular, `H` in Hermite normal form.
pub fn hnf_identity(rows: &[Vec<i64>]) -> Result<(), TestCaseError> {
    let c = rows[0].len();
    let vecs: Vec<LatticeVector> = rows.iter().map(|r| LatticeVector::from_i64s(r)).collect();
    let a = LatticeMatrix::from_rows(c, &vecs).unwrap();
    let (h, u) = a.hermite_normal_form();
    prop_assert_eq!(&(&u * &a), &h);
    prop_assert!(u.is_unimodular().unwrap());
    let mut last_pivot: Option<usize> = None;
    let mut zero_seen = false;
    for i in 0..h.nrows() {
        let row = h.row(i);
        match (0..c).find(|&j| !row[j].is_zero()) {
            None => zero_seen = true,
            Some(p) => {
                prop_assert!(!zero_seen, "nonzero row below a zero row");
                prop_assert!(last_pivot.is_none_or(|q| p > q));
                prop_assert!(row[p].is_positive());
                for k in 0..i {
                    let above = h.get(k, p);
                    prop_assert!(!above.is_negative() && above < &row[p]);
                }
                for k in i + 1..h.nrows() {
                    prop_assert!(h.get(k, p).is_zero());
                }
                last_pivot = Some(p);
            }
        }
    }
    Ok(())
}

/// `demazure_roots` agrees with box enumeration two units beyond its own
/// coordinate bound, on a random rank-2 fan and on a random conjugate of
/// its product with `ℙ¹`.
pub fn oracle_equivalence(vectors: &[(i64, i64)], ops: &Ops) -> Result<(), TestCaseError> {
    let fan = complete_fan_2d(vectors);
    let product = product_fan(&fan, &catalog::projective_space(1));
    let conjugate = product.transform(&unimodular_from_ops(3, ops)).unwrap();
    for f in [&fan, &conjugate] {
        let roots = demazure_roots(f).unwrap();
        let bound = root_coordinate_bound(f).unwrap();
        let radius: u32 = (bound + BigInt::from(2)).try_into().unwrap();
        prop_assert_eq!(roots, roots_oracle(f, radius));
    }
    Ok(())
}
