use std::collections::BTreeSet;

use num::{BigInt, BigRational, Zero};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{adapted_basis, solve_in_basis, span_rank, LatticeMatrix, LatticeVector};
use crate::roots::demazure_roots;

/// A unimodular map `N → N` carrying one fan onto another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanIsomorphism {
    /// Acts on column vectors: ray `i` of the source goes to
    /// `matrix · ρ_i = ρ′_{ray_permutation[i]}`.
    pub matrix: LatticeMatrix,
    pub ray_permutation: Vec<usize>,
}

impl FanIsomorphism {
    pub fn identity(f: &Fan) -> FanIsomorphism {
        FanIsomorphism {
            matrix: LatticeMatrix::identity(f.rank()),
            ray_permutation: (0..f.rays().len()).collect(),
        }
    }
}

/// Quantities preserved by every fan isomorphism, used to rule out
/// candidates before searching.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FanInvariants {
    pub rank: usize,
    pub ray_count: usize,
    pub f_vector: Vec<usize>,
    pub smooth: bool,
    pub complete: bool,
    pub root_count: Option<usize>,
    pub ray_profiles: Vec<RayProfile>,
}

/// Per ray: for every maximal cone containing it, the cone's dimension, its
/// ray count, and (for full-dimensional cones) the sorted pairings of the
/// ray with the cone's facet normals.
pub type RayProfile = Vec<(usize, usize, Vec<BigInt>)>;

fn ray_profiles(f: &Fan) -> Vec<RayProfile> {
    (0..f.rays().len())
        .map(|i| {
            let mut profile: RayProfile = f
                .max_cones_with_ray(i)
                .map(|c| {
                    let cone = f.max_cone(c);
                    let mut pairings: Vec<BigInt> = if cone.is_full_dimensional() {
                        cone.facet_normals().iter().map(|u| u.dot(f.ray(i))).collect()
                    } else {
                        Vec::new()
                    };
                    pairings.sort();
                    (cone.dim(), f.max_cones()[c].len(), pairings)
                })
                .collect();
            profile.sort();
            profile
        })
        .collect()
}

pub fn fan_invariants(f: &Fan) -> FanInvariants {
    let complete = f.is_complete();
    let mut ray_profiles = ray_profiles(f);
    ray_profiles.sort();
    FanInvariants {
        rank: f.rank(),
        ray_count: f.rays().len(),
        f_vector: f.f_vector(),
        smooth: f.is_smooth(),
        complete,
        root_count: complete.then(|| demazure_roots(f).map(|r| r.len()).ok()).flatten(),
        ray_profiles,
    }
}

/// Backtracking search over images of a basis of rays.
struct Search<'a> {
    source: &'a Fan,
    target: &'a Fan,
    /// Indices of source rays forming a basis of their span.
    basis: Vec<usize>,
    /// Every source ray in terms of `basis`.
    ray_coords: Vec<Vec<BigRational>>,
    /// Saturated span basis of the source in terms of `basis`.
    span_coords: Vec<Vec<BigRational>>,
    /// `span ++ complement` for source and target.
    source_lattice: Vec<LatticeVector>,
    target_complement: Vec<LatticeVector>,
    source_profiles: Vec<RayProfile>,
    target_profiles: Vec<RayProfile>,
    target_cones: BTreeSet<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(source: &'a Fan, target: &'a Fan) -> Search<'a> {
        let n = source.rank();
        let basis = choose_basis(source);
        let basis_vecs: Vec<LatticeVector> = basis.iter().map(|&i| source.ray(i).clone()).collect();
        let ray_coords = source
            .rays()
            .iter()
            .map(|r| solve_in_basis(&basis_vecs, r).expect("ray lies in the span"))
            .collect();
        let (span, complement) = adapted_basis(n, source.rays());
        let span_coords = span
            .iter()
            .map(|s| solve_in_basis(&basis_vecs, s).expect("span vector"))
            .collect();
        let (_, target_complement) = adapted_basis(n, target.rays());
        let mut source_lattice = span;
        source_lattice.extend(complement);
        Search {
            source,
            target,
            basis,
            ray_coords,
            span_coords,
            source_lattice,
            target_complement,
            source_profiles: ray_profiles(source),
            target_profiles: ray_profiles(target),
            target_cones: target.max_cones().iter().cloned().collect(),
        }
    }

    fn candidates(&self, depth: usize, assigned: &[usize]) -> Vec<usize> {
        let s = self.basis[depth];
        (0..self.target.rays().len())
            .filter(|t| !assigned.contains(t))
            .filter(|&t| self.source_profiles[s] == self.target_profiles[t])
            .filter(|&t| {
                assigned.iter().zip(&self.basis).all(|(&t2, &s2)| {
                    self.source.cone_by_rays(&[s, s2]).is_some()
                        == self.target.cone_by_rays(&[t, t2]).is_some()
                })
            })
            .collect()
    }

    fn combine(&self, coords: &[BigRational], images: &[usize]) -> Option<LatticeVector> {
        let n = self.source.rank();
        let mut acc = vec![BigRational::zero(); n];
        for (c, &t) in coords.iter().zip(images) {
            if c.is_zero() {
                continue;
            }
            for (a, x) in acc.iter_mut().zip(self.target.ray(t).iter()) {
                *a += c * BigRational::from_integer(x.clone());
            }
        }
        acc.iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(LatticeVector::new)
    }

    /// Complete a full basis assignment to an isomorphism, if possible.
    fn finish(&self, images: &[usize]) -> Option<FanIsomorphism> {
        let mut perm = Vec::with_capacity(self.source.rays().len());
        let mut used = vec![false; self.target.rays().len()];
        for (i, coords) in self.ray_coords.iter().enumerate() {
            let image = self.combine(coords, images)?;
            let t = self.target.ray_index(&image)?;
            if used[t] || self.source_profiles[i] != self.target_profiles[t] {
                return None;
            }
            used[t] = true;
            perm.push(t);
        }
        for cone in self.source.max_cones() {
            let mut mapped: Vec<usize> = cone.iter().map(|&i| perm[i]).collect();
            mapped.sort_unstable();
            if !self.target_cones.contains(&mapped) {
                return None;
            }
        }
        let n = self.source.rank();
        let mut columns = Vec::with_capacity(n);
        for coords in &self.span_coords {
            columns.push(self.combine(coords, images)?);
        }
        columns.extend(self.target_complement.iter().cloned());
        let q = LatticeMatrix::from_columns(n, &columns).ok()?;
        let p = LatticeMatrix::from_columns(n, &self.source_lattice).ok()?;
        let p_inv = p.inverse_unimodular().ok()??;
        let matrix = q.checked_mul(&p_inv).ok()?;
        if !matrix.is_unimodular().ok()? {
            return None;
        }
        Some(FanIsomorphism {
            matrix,
            ray_permutation: perm,
        })
    }

    /// Visit every isomorphism in search order; stop when `visit` returns false.
    fn run(&self, visit: &mut dyn FnMut(FanIsomorphism) -> bool) {
        let mut assigned = Vec::with_capacity(self.basis.len());
        self.step(&mut assigned, visit);
    }

    fn step(&self, assigned: &mut Vec<usize>, visit: &mut dyn FnMut(FanIsomorphism) -> bool) -> bool {
        if assigned.len() == self.basis.len() {
            return match self.finish(assigned) {
                Some(iso) => visit(iso),
                None => true,
            };
        }
        for t in self.candidates(assigned.len(), assigned) {
            assigned.push(t);
            let go_on = self.step(assigned, visit);
            assigned.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Basis rays taken from a maximal cone of largest dimension where
/// possible, so that their images are constrained to form a cone as well.
fn choose_basis(f: &Fan) -> Vec<usize> {
    let n = f.rank();
    let target = span_rank(n, f.rays());
    let mut order: Vec<usize> = Vec::new();
    let best = (0..f.max_cones().len()).max_by_key(|&i| (f.max_cone(i).dim(), std::cmp::Reverse(i)));
    if let Some(best) = best {
        order.extend(f.max_cones()[best].iter().copied());
    }
    let rest: Vec<usize> = (0..f.rays().len()).filter(|i| !order.contains(i)).collect();
    order.extend(rest);
    let mut basis: Vec<usize> = Vec::new();
    let mut vecs: Vec<LatticeVector> = Vec::new();
    for i in order {
        if basis.len() == target {
            break;
        }
        vecs.push(f.ray(i).clone());
        if span_rank(n, &vecs) == vecs.len() {
            basis.push(i);
        } else {
            vecs.pop();
        }
    }
    basis
}

/// A fan isomorphism `f1 → f2`, or `None` if the fans are not isomorphic
/// (including when their ranks differ).
pub fn fan_isomorphism(f1: &Fan, f2: &Fan) -> Option<FanIsomorphism> {
    if f1.rank() != f2.rank() || fan_invariants(f1) != fan_invariants(f2) {
        return None;
    }
    let search = Search::new(f1, f2);
    let mut found = None;
    search.run(&mut |iso| {
        found = Some(iso);
        false
    });
    found
}

/// `Aut(Σ) ⊂ GL(n, ℤ)`, sorted by matrix entries.
pub fn fan_automorphisms(f: &Fan) -> Result<Vec<FanIsomorphism>> {
    if !f.is_complete() {
        return Err(Error::NotComplete);
    }
    let search = Search::new(f, f);
    let mut all = Vec::new();
    search.run(&mut |iso| {
        all.push(iso);
        true
    });
    all.sort_by(|a, b| a.matrix.entries().cmp(b.matrix.entries()));
    all.dedup_by(|a, b| a.matrix == b.matrix);
    Ok(all)
}

/// Whether `matrix` maps `source` onto `target` as fans.
pub fn is_fan_isomorphism(matrix: &LatticeMatrix, source: &Fan, target: &Fan) -> bool {
    if matrix.nrows() != target.rank()
        || matrix.ncols() != source.rank()
        || source.rank() != target.rank()
        || source.rays().len() != target.rays().len()
        || source.max_cones().len() != target.max_cones().len()
        || !matrix.is_unimodular().unwrap_or(false)
    {
        return false;
    }
    let mut perm = Vec::with_capacity(source.rays().len());
    for r in source.rays() {
        match target.ray_index(&matrix.apply(r)) {
            Some(t) => perm.push(t),
            None => return false,
        }
    }
    let cones: BTreeSet<&Vec<usize>> = target.max_cones().iter().collect();
    source.max_cones().iter().all(|c| {
        let mut m: Vec<usize> = c.iter().map(|&i| perm[i]).collect();
        m.sort_unstable();
        cones.contains(&m)
    })
}

/// A smallest-first generating set: walk the sorted group and keep each
/// element not already in the subgroup generated so far.
pub fn generating_set(group: &[FanIsomorphism]) -> Vec<FanIsomorphism> {
    let Some(first) = group.first() else {
        return Vec::new();
    };
    let n = first.matrix.nrows();
    let identity = LatticeMatrix::identity(n);
    let mut generated: BTreeSet<Vec<Vec<BigInt>>> = BTreeSet::new();
    generated.insert(identity.entries().to_vec());
    let mut gens: Vec<FanIsomorphism> = Vec::new();
    for g in group {
        if generated.contains(g.matrix.entries()) {
            continue;
        }
        gens.push(g.clone());
        // closure under right multiplication by generators
        let mut elements: Vec<LatticeMatrix> = vec![identity.clone()];
        let mut seen: BTreeSet<Vec<Vec<BigInt>>> = BTreeSet::new();
        seen.insert(identity.entries().to_vec());
        let mut i = 0;
        while i < elements.len() {
            for h in &gens {
                let prod = &elements[i] * &h.matrix;
                if seen.insert(prod.entries().to_vec()) {
                    elements.push(prod);
                }
            }
            i += 1;
        }
        generated = seen;
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn m(rows: &[[i64; 2]]) -> LatticeMatrix {
        LatticeMatrix::from_i64_rows(rows)
    }

    #[test]
    fn basis_change_is_recovered() {
        let f = catalog::product(&[&catalog::projective_space(1), &catalog::projective_space(1)]);
        let g = f.transform(&m(&[[1, 1], [0, 1]])).unwrap();
        let iso = fan_isomorphism(&f, &g).expect("isomorphic");
        assert!(is_fan_isomorphism(&iso.matrix, &f, &g));
        for (i, &t) in iso.ray_permutation.iter().enumerate() {
            assert_eq!(&iso.matrix.apply(f.ray(i)), g.ray(t));
        }
    }

    #[test]
    fn non_isomorphic_fans() {
        let p2 = catalog::projective_space(2);
        assert!(fan_isomorphism(&p2, &catalog::weighted_p112()).is_none());
        assert!(fan_isomorphism(&p2, &catalog::projective_space(1)).is_none());
        assert!(fan_isomorphism(&catalog::hirzebruch(1), &catalog::hirzebruch(2)).is_none());
        assert!(fan_isomorphism(&catalog::hirzebruch(0), &catalog::hirzebruch(2)).is_none());
    }

    #[test]
    fn self_isomorphism_exists() {
        for (_, f) in catalog::corpus() {
            let iso = fan_isomorphism(&f, &f).expect("self");
            assert!(is_fan_isomorphism(&iso.matrix, &f, &f));
        }
        let a2 = catalog::affine_plane();
        assert!(fan_isomorphism(&a2, &a2).is_some());
    }

    #[test]
    fn non_spanning_fans() {
        let ray = Fan::new(2, vec![LatticeVector::from([1, 2])], vec![vec![0]]).unwrap();
        let other = Fan::new(2, vec![LatticeVector::from([0, -1])], vec![vec![0]]).unwrap();
        let iso = fan_isomorphism(&ray, &other).expect("any primitive ray is equivalent");
        assert!(is_fan_isomorphism(&iso.matrix, &ray, &other));
    }

    #[test]
    fn small_automorphism_groups() {
        let p1 = catalog::projective_space(1);
        assert_eq!(fan_automorphisms(&p1).unwrap().len(), 2);

        let p2 = catalog::projective_space(2);
        let autos = fan_automorphisms(&p2).unwrap();
        assert_eq!(autos.len(), 6);
        let mats: Vec<&LatticeMatrix> = autos.iter().map(|a| &a.matrix).collect();
        assert!(mats.contains(&&m(&[[0, 1], [1, 0]])));
        assert!(mats.contains(&&m(&[[0, -1], [1, -1]])));

        let f1 = catalog::hirzebruch(1);
        let autos = fan_automorphisms(&f1).unwrap();
        assert_eq!(autos.len(), 2);
        assert!(autos.iter().any(|a| a.matrix == m(&[[-1, 0], [1, 1]])));

        let sq = catalog::product(&[&p1, &p1]);
        assert_eq!(fan_automorphisms(&sq).unwrap().len(), 8);
        assert_eq!(
            fan_automorphisms(&catalog::affine_plane()),
            Err(Error::NotComplete)
        );
    }

    #[test]
    fn generators_generate() {
        let p2 = catalog::projective_space(2);
        let autos = fan_automorphisms(&p2).unwrap();
        let gens = generating_set(&autos);
        assert!(!gens.is_empty() && gens.len() <= 2);
        assert!(gens.iter().all(|g| g.matrix != LatticeMatrix::identity(2)));
    }
}
