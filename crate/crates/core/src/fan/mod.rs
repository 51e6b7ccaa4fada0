//! Cones and fans in `N_ℝ`.
//!
//! A [`Fan`] is always valid and stored in canonical form: rays sorted
//! lexicographically, each cone given by its sorted ray indices, cone lists
//! sorted lexicographically by those index tuples. Raw, possibly invalid input
//! lives in [`FanData`] and is checked by [`validate_fan`].

mod cone;
mod dd;
mod validate;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use num::{One, Zero};

pub use cone::{dual_cone, Cone, DualCone};
pub use validate::{validate_fan, ValidationReport, Violation};

use crate::error::{Error, Result};
use crate::lattice::{maximal_minor_gcd, span_rank, LatticeMatrix, LatticeVector};

/// Unvalidated fan description: ambient rank, a ray list, and cones given by
/// ray indices (only the maximal ones need to be listed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanData {
    pub rank: usize,
    pub rays: Vec<LatticeVector>,
    pub max_cones: Vec<Vec<usize>>,
}

/// A cone of a fan, identified by the sorted indices of its rays.
#[derive(Clone, Debug)]
pub struct FanCone {
    pub rays: Vec<usize>,
    dim: usize,
    ambient: usize,
    generators: Vec<LatticeVector>,
    cone: OnceLock<Cone>,
}

impl PartialEq for FanCone {
    fn eq(&self, other: &Self) -> bool {
        self.rays == other.rays && self.generators == other.generators
    }
}

impl Eq for FanCone {}

impl FanCone {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Facet and equation description, computed on first use.
    pub fn cone(&self) -> &Cone {
        self.cone
            .get_or_init(|| Cone::from_rays(self.ambient, &self.generators).expect("cone of a valid fan"))
    }
}

/// A finite rational polyhedral fan.
#[derive(Clone, Debug)]
pub struct Fan {
    rank: usize,
    rays: Vec<LatticeVector>,
    max_cones: Vec<Vec<usize>>,
    max_cone_data: Vec<Cone>,
    cones: Vec<FanCone>,
    index: BTreeMap<Vec<usize>, usize>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.rays == other.rays && self.max_cones == other.max_cones
    }
}

impl Eq for Fan {}

impl Fan {
    /// Validate and canonicalize.
    pub fn new(rank: usize, rays: Vec<LatticeVector>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        let data = FanData {
            rank,
            rays,
            max_cones,
        };
        let report = validate_fan(&data);
        if !report.is_valid() {
            return Err(Error::InvalidFan(report));
        }
        Ok(Fan::from_valid(data))
    }

    pub fn from_data(data: FanData) -> Result<Fan> {
        Fan::new(data.rank, data.rays, data.max_cones)
    }

    /// The fan `{0}` in `ℝ^rank`.
    pub fn trivial(rank: usize) -> Fan {
        Fan::from_valid(FanData {
            rank,
            rays: Vec::new(),
            max_cones: vec![Vec::new()],
        })
    }

    fn from_valid(data: FanData) -> Fan {
        let rank = data.rank;
        let mut order: Vec<usize> = (0..data.rays.len()).collect();
        order.sort_by(|&a, &b| data.rays[a].cmp(&data.rays[b]));
        let mut new_index = vec![0; data.rays.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let rays: Vec<LatticeVector> = order.iter().map(|&i| data.rays[i].clone()).collect();

        let mut listed: BTreeSet<Vec<usize>> = data
            .max_cones
            .iter()
            .map(|c| {
                let mut idx: Vec<usize> = c.iter().map(|&i| new_index[i]).collect();
                idx.sort_unstable();
                idx.dedup();
                idx
            })
            .collect();
        if listed.is_empty() {
            listed.insert(Vec::new());
        }
        let listed: Vec<Vec<usize>> = listed.into_iter().collect();
        let max_cones: Vec<Vec<usize>> = listed
            .iter()
            .filter(|c| !listed.iter().any(|d| d.len() > c.len() && is_subset(c, d)))
            .cloned()
            .collect();

        let cone_of = |idx: &[usize]| {
            let gens: Vec<LatticeVector> = idx.iter().map(|&i| rays[i].clone()).collect();
            Cone::from_rays(rank, &gens).expect("validated cone")
        };
        let max_cone_data: Vec<Cone> = max_cones.iter().map(|c| cone_of(c)).collect();

        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for (idx, cone) in max_cones.iter().zip(&max_cone_data) {
            faces.extend(face_index_sets(idx, cone, &rays));
        }
        let cones: Vec<FanCone> = faces
            .into_iter()
            .map(|idx| {
                let generators: Vec<LatticeVector> = idx.iter().map(|&i| rays[i].clone()).collect();
                let cone = OnceLock::new();
                if let Ok(k) = max_cones.binary_search(&idx) {
                    let _ = cone.set(max_cone_data[k].clone());
                }
                FanCone {
                    dim: span_rank(rank, &generators),
                    ambient: rank,
                    rays: idx,
                    generators,
                    cone,
                }
            })
            .collect();
        let index = cones
            .iter()
            .enumerate()
            .map(|(i, c)| (c.rays.clone(), i))
            .collect();

        Fan {
            rank,
            rays,
            max_cones,
            max_cone_data,
            cones,
            index,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &LatticeVector {
        &self.rays[i]
    }

    pub fn ray_index(&self, v: &LatticeVector) -> Option<usize> {
        self.rays.binary_search(v).ok()
    }

    /// Maximal cones as sorted ray-index lists.
    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn max_cone(&self, i: usize) -> &Cone {
        &self.max_cone_data[i]
    }

    /// Every cone of the fan, the zero cone included.
    pub fn cones(&self) -> &[FanCone] {
        &self.cones
    }

    /// Look up a cone of the fan by its ray indices.
    pub fn cone_by_rays(&self, rays: &[usize]) -> Option<&FanCone> {
        let mut key = rays.to_vec();
        key.sort_unstable();
        key.dedup();
        self.index.get(&key).map(|&i| &self.cones[i])
    }

    pub fn to_data(&self) -> FanData {
        FanData {
            rank: self.rank,
            rays: self.rays.clone(),
            max_cones: self.max_cones.clone(),
        }
    }

    /// `Σ(i)`: the `i`-dimensional cones.
    pub fn skeleton(&self, i: usize) -> Result<Vec<&FanCone>> {
        if i > self.rank {
            return Err(Error::SkeletonOutOfRange {
                dim: i,
                rank: self.rank,
            });
        }
        Ok(self.cones.iter().filter(|c| c.dim() == i).collect())
    }

    /// Number of cones in each dimension `0..=rank`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.rank + 1];
        for c in &self.cones {
            f[c.dim()] += 1;
        }
        f
    }

    /// Indices of maximal cones containing the given ray.
    pub fn max_cones_with_ray(&self, ray: usize) -> impl Iterator<Item = usize> + '_ {
        self.max_cones
            .iter()
            .enumerate()
            .filter(move |(_, c)| c.binary_search(&ray).is_ok())
            .map(|(i, _)| i)
    }

    /// Whether `x` lies in some maximal cone.
    pub fn covers(&self, x: &LatticeVector) -> bool {
        self.max_cone_data.iter().any(|c| c.contains(x))
    }

    /// Support equals `N_ℝ`.
    ///
    /// Tested combinatorially: every maximal cone is full-dimensional, every
    /// codimension-one face of a maximal cone lies in exactly two maximal
    /// cones, and the resulting adjacency graph on maximal cones is connected.
    pub fn is_complete(&self) -> bool {
        if self.max_cone_data.iter().any(|c| !c.is_full_dimensional()) {
            return false;
        }
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); self.max_cones.len()];
        for (i, idx) in self.max_cones.iter().enumerate() {
            for facet in self.facets_of_max_cone(i) {
                let holders: Vec<usize> = self
                    .max_cones
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| is_subset(&facet, c))
                    .map(|(j, _)| j)
                    .collect();
                if holders.len() != 2 {
                    return false;
                }
                adjacency[i].extend(holders.into_iter().filter(|&j| j != i));
            }
            debug_assert!(!idx.is_empty() || self.rank == 0);
        }
        let mut seen = vec![false; self.max_cones.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &j in &adjacency[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Ray-index sets of the codimension-one faces of maximal cone `i`.
    pub fn facets_of_max_cone(&self, i: usize) -> Vec<Vec<usize>> {
        let idx = &self.max_cones[i];
        self.max_cone_data[i]
            .facet_normals()
            .iter()
            .map(|u| {
                idx.iter()
                    .copied()
                    .filter(|&r| u.dot(&self.rays[r]).is_zero())
                    .collect()
            })
            .collect()
    }

    /// Each cone's rays extend to a basis of `N`.
    pub fn is_smooth(&self) -> bool {
        self.max_cones.iter().all(|c| {
            let gens: Vec<LatticeVector> = c.iter().map(|&i| self.rays[i].clone()).collect();
            maximal_minor_gcd(self.rank, &gens).is_one()
        })
    }

    /// Each cone's rays are linearly independent.
    pub fn is_simplicial(&self) -> bool {
        self.max_cones.iter().all(|c| {
            let gens: Vec<LatticeVector> = c.iter().map(|&i| self.rays[i].clone()).collect();
            span_rank(self.rank, &gens) == gens.len()
        })
    }

    /// Image of the fan under a unimodular change of coordinates.
    pub fn transform(&self, matrix: &LatticeMatrix) -> Result<Fan> {
        if matrix.nrows() != self.rank || matrix.ncols() != self.rank {
            return Err(Error::Dimension(format!(
                "expected a {0}x{0} matrix",
                self.rank
            )));
        }
        if !matrix.is_unimodular()? {
            return Err(Error::Dimension("transform must be unimodular".into()));
        }
        let rays = self.rays.iter().map(|r| matrix.apply(r)).collect();
        Ok(Fan::from_valid(FanData {
            rank: self.rank,
            rays,
            max_cones: self.max_cones.clone(),
        }))
    }
}

/// `Σ₁ × Σ₂ = {σ₁ × σ₂}` in `N₁ ⊕ N₂`.
pub fn product_fan(f1: &Fan, f2: &Fan) -> Fan {
    let (n1, n2) = (f1.rank, f2.rank);
    let mut rays: Vec<LatticeVector> = f1
        .rays
        .iter()
        .map(|r| r.concat(&LatticeVector::zero(n2)))
        .collect();
    rays.extend(f2.rays.iter().map(|r| LatticeVector::zero(n1).concat(r)));
    let k1 = f1.rays.len();
    let mut max_cones = Vec::new();
    for a in &f1.max_cones {
        for b in &f2.max_cones {
            let mut c = a.clone();
            c.extend(b.iter().map(|&j| j + k1));
            max_cones.push(c);
        }
    }
    Fan::from_valid(FanData {
        rank: n1 + n2,
        rays,
        max_cones,
    })
}

pub fn is_complete(f: &Fan) -> bool {
    f.is_complete()
}

pub fn skeleton(f: &Fan, i: usize) -> Result<Vec<&FanCone>> {
    f.skeleton(i)
}

pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Ray-index sets of all faces of a cone with the given (extremal) rays.
fn face_index_sets(idx: &[usize], cone: &Cone, rays: &[LatticeVector]) -> BTreeSet<Vec<usize>> {
    let facets: Vec<Vec<usize>> = cone
        .facet_normals()
        .iter()
        .map(|u| idx.iter().copied().filter(|&r| u.dot(&rays[r]).is_zero()).collect())
        .collect();
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    faces.insert(idx.to_vec());
    faces.insert(Vec::new());
    let mut frontier: Vec<Vec<usize>> = vec![idx.to_vec()];
    while let Some(face) = frontier.pop() {
        for f in &facets {
            let meet: Vec<usize> = face.iter().copied().filter(|r| f.contains(r)).collect();
            if faces.insert(meet.clone()) {
                frontier.push(meet);
            }
        }
    }
    faces
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(c)
    }

    #[test]
    fn canonical_order() {
        let f = Fan::new(
            2,
            vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])],
            vec![vec![1, 0], vec![2, 1], vec![0, 2]],
        )
        .unwrap();
        assert_eq!(f.rays(), &[v(&[-1, -1]), v(&[0, 1]), v(&[1, 0])]);
        assert_eq!(f.max_cones(), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(f, catalog::projective_space(2));
    }

    #[test]
    fn completeness_examples() {
        assert!(catalog::projective_space(1).is_complete());
        assert!(!catalog::affine_plane().is_complete());
        assert!(catalog::hirzebruch(1).is_complete());
        assert!(Fan::trivial(0).is_complete());
        assert!(!Fan::trivial(2).is_complete());
        // three quadrants of the plane
        let l = Fan::new(
            2,
            vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, 0]), v(&[0, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 3]],
        )
        .unwrap();
        assert!(!l.is_complete());
    }

    #[test]
    fn smoothness_examples() {
        let p2 = catalog::projective_space(2);
        assert!(p2.is_smooth() && p2.is_simplicial());
        let p112 = catalog::weighted_p112();
        assert!(p112.is_simplicial());
        assert!(!p112.is_smooth());
        assert!(Fan::trivial(0).is_smooth());
        assert!(Fan::trivial(3).is_smooth());
    }

    #[test]
    fn product_examples() {
        let p1 = catalog::projective_space(1);
        let p2 = catalog::projective_space(2);
        let q = product_fan(&p1, &p1);
        assert_eq!(q.rays().len(), 4);
        assert_eq!(q.max_cones().len(), 4);
        assert_eq!(q, catalog::hirzebruch(0));

        let e = product_fan(&p1, &Fan::trivial(1));
        assert_eq!(e.rank(), 2);
        assert_eq!(e.max_cones().len(), 2);
        assert!(e.max_cones().iter().all(|c| c.len() == 1));
        assert!(!e.is_complete());

        let r = product_fan(&p1, &p2);
        assert_eq!(r.rays().len(), 5);
        assert_eq!(r.max_cones().len(), 6);
        assert!(r.max_cones().iter().all(|c| c.len() == 3));
    }

    #[test]
    fn skeleton_examples() {
        let p2 = catalog::projective_space(2);
        assert_eq!(p2.skeleton(1).unwrap().len(), 3);
        assert_eq!(p2.skeleton(2).unwrap().len(), 3);
        assert_eq!(p2.skeleton(0).unwrap().len(), 1);
        assert!(matches!(p2.skeleton(3), Err(Error::SkeletonOutOfRange { .. })));
        let rays: Vec<_> = p2.skeleton(1).unwrap().iter().map(|c| c.rays.clone()).collect();
        assert_eq!(rays, vec![vec![0], vec![1], vec![2]]);

        let q = product_fan(&catalog::projective_space(1), &catalog::projective_space(1));
        let s1 = q.skeleton(1).unwrap();
        assert_eq!(s1.len(), 4);
        for c in s1 {
            let r = &c.cone().rays()[0];
            // exactly one of the two factor coordinates is nonzero
            assert_eq!(r.iter().filter(|x| !x.is_zero()).count(), 1);
        }
    }

    #[test]
    fn face_lookup() {
        let p2 = catalog::projective_space(2);
        assert!(p2.cone_by_rays(&[1, 0]).is_some());
        assert!(p2.cone_by_rays(&[]).is_some());
        assert!(p2.cone_by_rays(&[0, 1, 2]).is_none());
        assert_eq!(p2.f_vector(), vec![1, 3, 3]);
    }

    #[test]
    fn transform_preserves_structure() {
        let q = catalog::hirzebruch(0);
        let u = LatticeMatrix::from_i64_rows(&[[1, 1], [0, 1]]);
        let t = q.transform(&u).unwrap();
        assert!(t.is_complete());
        assert!(t.ray_index(&v(&[1, 1])).is_some());
        assert!(q.transform(&LatticeMatrix::from_i64_rows(&[[2, 0], [0, 1]])).is_err());
    }
}
