use std::collections::BTreeSet;

use num::{Signed, Zero};

use super::dd::double_description;
use crate::error::{Error, Result};
use crate::lattice::{adapted_basis, span_rank, LatticeMatrix, LatticeVector};

/// A strictly convex rational polyhedral cone in `N_ℝ`.
///
/// Both descriptions are stored: the primitive extremal rays, and the
/// inequalities `⟨x, u⟩ ≥ 0` for each facet normal `u` together with the
/// equations `⟨x, w⟩ = 0` cutting out the linear span. Facet normals of a
/// cone that is not full-dimensional are taken inside its span, which makes
/// them unique up to scaling.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    rank: usize,
    rays: Vec<LatticeVector>,
    facet_normals: Vec<LatticeVector>,
    equations: Vec<LatticeVector>,
}

impl Cone {
    /// The zero cone `{0}` in `ℝ^rank`.
    pub fn zero(rank: usize) -> Cone {
        Cone {
            rank,
            rays: Vec::new(),
            facet_normals: Vec::new(),
            equations: hnf_rows(rank, (0..rank).map(|i| LatticeVector::unit(rank, i)).collect()),
        }
    }

    /// The cone spanned by the given lattice vectors.
    pub fn from_rays(rank: usize, generators: &[LatticeVector]) -> Result<Cone> {
        let mut gens = BTreeSet::new();
        for g in generators {
            if g.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: g.rank(),
                });
            }
            if !g.is_zero() {
                gens.insert(g.primitive()?);
            }
        }
        if gens.is_empty() {
            return Ok(Cone::zero(rank));
        }
        let gens: Vec<LatticeVector> = gens.into_iter().collect();
        let dual = double_description(rank, &gens);
        if span_rank(rank, &[dual.lines.clone(), dual.rays.clone()].concat()) < rank {
            return Err(Error::NotStrictlyConvex);
        }

        let (span, _) = adapted_basis(rank, &gens);
        let dim = span.len();
        let mut normals = BTreeSet::new();
        for r in &dual.rays {
            let tight: Vec<&LatticeVector> = gens.iter().filter(|g| g.dot(r).is_zero()).collect();
            normals.insert(normal_within_span(rank, &span, &tight, &gens));
        }
        let facet_normals: Vec<LatticeVector> = normals.into_iter().collect();

        let rays: Vec<LatticeVector> = gens
            .iter()
            .filter(|g| {
                let tight: Vec<LatticeVector> = facet_normals
                    .iter()
                    .filter(|u| u.dot(g).is_zero())
                    .cloned()
                    .collect();
                span_rank(rank, &tight) + 1 == dim
            })
            .cloned()
            .collect();

        Ok(Cone {
            rank,
            rays,
            facet_normals,
            equations: hnf_rows(rank, dual.lines),
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.rank - self.equations.len()
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn facet_normals(&self) -> &[LatticeVector] {
        &self.facet_normals
    }

    /// Basis of the annihilator of the linear span, in HNF.
    pub fn equations(&self) -> &[LatticeVector] {
        &self.equations
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn contains(&self, x: &LatticeVector) -> bool {
        self.equations.iter().all(|w| w.dot(x).is_zero())
            && self.facet_normals.iter().all(|u| !u.dot(x).is_negative())
    }

    /// Whether `x` lies in the relative interior.
    pub fn contains_in_relative_interior(&self, x: &LatticeVector) -> bool {
        self.equations.iter().all(|w| w.dot(x).is_zero())
            && self.facet_normals.iter().all(|u| u.dot(x).is_positive())
    }

    /// `σ ∩ τ`, computed from the combined inequality descriptions.
    pub fn intersection(&self, other: &Cone) -> Result<Cone> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let mut constraints = Vec::new();
        for c in [self, other] {
            constraints.extend(c.facet_normals.iter().cloned());
            for w in &c.equations {
                constraints.push(w.clone());
                constraints.push(-w);
            }
        }
        let g = double_description(self.rank, &constraints);
        debug_assert!(g.lines.is_empty(), "intersection of pointed cones is pointed");
        Cone::from_rays(self.rank, &g.rays)
    }

    /// Whether `face` is a face of `self`.
    pub fn has_face(&self, face: &Cone) -> bool {
        if !face.rays.iter().all(|r| self.contains(r)) {
            return false;
        }
        let inside: Vec<&LatticeVector> = self.rays.iter().filter(|r| face.contains(r)).collect();
        if !face.rays.iter().all(|r| inside.contains(&r)) {
            return false;
        }
        // closure of the ray subset under "rays on every facet through it"
        let through: Vec<&LatticeVector> = self
            .facet_normals
            .iter()
            .filter(|u| inside.iter().all(|r| u.dot(r).is_zero()))
            .collect();
        let closure = self
            .rays
            .iter()
            .filter(|r| through.iter().all(|u| u.dot(r).is_zero()))
            .count();
        closure == inside.len()
    }
}

/// Dual cone `σ^∨ ⊂ M_ℝ`, which contains the lineality space `σ^⊥` unless
/// `σ` is full-dimensional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCone {
    pub rays: Vec<LatticeVector>,
    pub lineality: Vec<LatticeVector>,
}

impl DualCone {
    /// The dual as a strictly convex cone, when it is one.
    pub fn as_cone(&self) -> Option<Cone> {
        if !self.lineality.is_empty() {
            return None;
        }
        let rank = self.rays.first().map_or(0, |r| r.rank());
        Cone::from_rays(rank, &self.rays).ok()
    }

    /// True for the dual of the zero cone, which is all of `M_ℝ`.
    pub fn is_whole_space(&self) -> bool {
        self.rays.is_empty() && !self.lineality.is_empty()
    }
}

/// `σ^∨ = {m : ⟨p, m⟩ ≥ 0 for all p ∈ σ}`.
pub fn dual_cone(cone: &Cone) -> DualCone {
    DualCone {
        rays: cone.facet_normals.clone(),
        lineality: cone.equations.clone(),
    }
}

fn normal_within_span(
    rank: usize,
    span: &[LatticeVector],
    tight: &[&LatticeVector],
    gens: &[LatticeVector],
) -> LatticeVector {
    let d = span.len();
    // x = Bᵀy with T·Bᵀ·y = 0
    let rows: Vec<LatticeVector> = tight
        .iter()
        .map(|t| LatticeVector::new(span.iter().map(|b| t.dot(b)).collect()))
        .collect();
    let kernel = if rows.is_empty() {
        (0..d).map(|i| LatticeVector::unit(d, i)).collect()
    } else {
        LatticeMatrix::from_rows(d, &rows).expect("rank d").kernel()
    };
    debug_assert_eq!(kernel.len(), 1, "facet normal is unique up to scale");
    let y = &kernel[0];
    let mut x = LatticeVector::zero(rank);
    for (yi, b) in y.iter().zip(span) {
        x = &x + &b.scaled(yi);
    }
    let x = x.primitive().expect("nonzero facet normal");
    if gens.iter().any(|g| g.dot(&x).is_negative()) {
        -x
    } else {
        x
    }
}

fn hnf_rows(rank: usize, rows: Vec<LatticeVector>) -> Vec<LatticeVector> {
    if rows.is_empty() {
        return rows;
    }
    let (h, _) = LatticeMatrix::from_rows(rank, &rows)
        .expect("rows of equal rank")
        .hermite_normal_form();
    h.row_vectors().into_iter().filter(|r| !r.is_zero()).collect()
}
