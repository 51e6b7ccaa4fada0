//! Double description method for `{x ∈ ℝⁿ : aᵢ·x ≥ 0}`.

use std::collections::BTreeSet;

use num::{Signed, Zero};

use crate::lattice::{span_rank, LatticeVector};

/// Generators of a polyhedral cone: a basis of its lineality space and one
/// primitive representative per extreme ray of the pointed part.
#[derive(Clone, Debug)]
pub(crate) struct Generators {
    pub lines: Vec<LatticeVector>,
    pub rays: Vec<LatticeVector>,
}

/// Run the incremental double description method over the given constraints.
pub(crate) fn double_description(rank: usize, constraints: &[LatticeVector]) -> Generators {
    let mut lines: Vec<LatticeVector> = (0..rank).map(|i| LatticeVector::unit(rank, i)).collect();
    let mut rays: Vec<LatticeVector> = Vec::new();
    let mut processed: Vec<&LatticeVector> = Vec::new();

    for a in constraints {
        if let Some(pos) = lines.iter().position(|l| !a.dot(l).is_zero()) {
            let mut l = lines.remove(pos);
            let mut al = a.dot(&l);
            if al.is_negative() {
                l = -l;
                al = -al;
            }
            for other in lines.iter_mut() {
                let ao = a.dot(other);
                if !ao.is_zero() {
                    *other = (&other.scaled(&al) - &l.scaled(&ao))
                        .primitive()
                        .expect("independent lines");
                }
            }
            for r in rays.iter_mut() {
                let ar = a.dot(r);
                if !ar.is_zero() {
                    *r = (&r.scaled(&al) - &l.scaled(&ar))
                        .primitive()
                        .expect("ray independent of line");
                }
            }
            rays.push(l.primitive().expect("nonzero line"));
        } else {
            let values: Vec<_> = rays.iter().map(|r| a.dot(r)).collect();
            let mut next: Vec<LatticeVector> = Vec::new();
            for (r, v) in rays.iter().zip(&values) {
                if !v.is_negative() {
                    next.push(r.clone());
                }
            }
            let target = rank as isize - lines.len() as isize - 2;
            for (i, p) in rays.iter().enumerate() {
                if !values[i].is_positive() {
                    continue;
                }
                for (j, q) in rays.iter().enumerate() {
                    if !values[j].is_negative() {
                        continue;
                    }
                    if adjacent(rank, &processed, p, q, target) {
                        let combo = &q.scaled(&values[i]) - &p.scaled(&values[j]);
                        next.push(combo.primitive().expect("adjacent rays are independent"));
                    }
                }
            }
            rays = next;
        }
        processed.push(a);
    }

    let rays: BTreeSet<LatticeVector> = rays.into_iter().collect();
    Generators {
        lines,
        rays: rays.into_iter().collect(),
    }
}

fn adjacent(
    rank: usize,
    processed: &[&LatticeVector],
    p: &LatticeVector,
    q: &LatticeVector,
    target: isize,
) -> bool {
    let common: Vec<LatticeVector> = processed
        .iter()
        .filter(|a| a.dot(p).is_zero() && a.dot(q).is_zero())
        .map(|a| (*a).clone())
        .collect();
    if target < 0 {
        return false;
    }
    span_rank(rank, &common) as isize == target
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(c)
    }

    #[test]
    fn orthant() {
        let g = double_description(2, &[v(&[1, 0]), v(&[0, 1])]);
        assert!(g.lines.is_empty());
        assert_eq!(g.rays, vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn half_plane_keeps_a_line() {
        let g = double_description(2, &[v(&[1, 1])]);
        assert_eq!(g.lines.len(), 1);
        assert!(g.lines[0].dot(&v(&[1, 1])).is_zero());
        assert_eq!(g.rays.len(), 1);
        assert!(g.rays[0].dot(&v(&[1, 1])).is_positive());
    }

    #[test]
    fn cube_cone_in_three_space() {
        // dual of the cone over a square has four extreme rays
        let gens = [v(&[1, 1, 1]), v(&[-1, 1, 1]), v(&[1, -1, 1]), v(&[-1, -1, 1])];
        let g = double_description(3, &gens);
        assert!(g.lines.is_empty());
        assert_eq!(g.rays.len(), 4);
        for r in &g.rays {
            assert!(gens.iter().all(|x| !x.dot(r).is_negative()));
            assert_eq!(gens.iter().filter(|x| x.dot(r).is_zero()).count(), 2);
        }
    }

    #[test]
    fn equality_pair_cuts_dimension() {
        let g = double_description(2, &[v(&[1, 0]), v(&[-1, 0]), v(&[0, 1])]);
        assert!(g.lines.is_empty());
        assert_eq!(g.rays, vec![v(&[0, 1])]);
    }
}
