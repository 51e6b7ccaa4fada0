//! Root subgroups at the level of characters.
//!
//! For a root `e` with ray `ρ_e`, the additive group acts on the torus by
//! `(s, t) ↦ t·λ_{ρ_e}(1 + s χ^e(t))`, whose comorphism sends
//! `χ^m ↦ χ^m (1 + s χ^e)^{⟨ρ_e, m⟩}`. This module expands that formula over
//! the integers and checks, cone by cone, the facts that make it an action on
//! the whole variety: regularity on every affine chart, the additive action
//! law, faithfulness, the infinitesimal generator, and the classification of
//! homogeneous derivations `∂_{p,e}`.

mod poly;

use num::{BigInt, One, Signed, ToPrimitive, Zero};

pub use poly::{GradedLaurentPoly, Monomial, Param};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::LatticeVector;
use crate::roots::{demazure_roots, DemazureRoot};

/// Default coordinate height for sampled lattice points of dual cones.
pub const SAMPLE_HEIGHT: i64 = 4;

fn binomial(k: u64, i: u64) -> BigInt {
    let mut c = BigInt::one();
    for j in 0..i {
        c = c * BigInt::from(k - j) / BigInt::from(j + 1);
    }
    c
}

fn pairing_exponent(root: &DemazureRoot, m: &LatticeVector) -> Result<u32> {
    let k = root.rho.pairing(m)?;
    if k.is_negative() {
        return Err(Error::RequiresLocalization(k));
    }
    k.to_u32()
        .ok_or_else(|| Error::Dimension(format!("exponent {k} too large")))
}

/// `α_e^*(χ^m) = Σ_{i=0}^{k} C(k,i) s^i χ^{m+ie}` with `k = ⟨ρ_e, m⟩`.
pub fn comorphism_apply(root: &DemazureRoot, m: &LatticeVector) -> Result<GradedLaurentPoly> {
    comorphism_apply_in(root, m, Param::S)
}

/// [`comorphism_apply`] with the group coordinate named by `param`.
pub fn comorphism_apply_in(
    root: &DemazureRoot,
    m: &LatticeVector,
    param: Param,
) -> Result<GradedLaurentPoly> {
    let k = pairing_exponent(root, m)?;
    let mut out = GradedLaurentPoly::zero();
    let mut character = m.clone();
    for i in 0..=k {
        let mut s = [0, 0];
        s[match param {
            Param::S => 0,
            Param::SPrime => 1,
        }] = i;
        out = &out
            + &GradedLaurentPoly::monomial(binomial(k as u64, i as u64), s, character.clone());
        character = &character + &root.e;
    }
    Ok(out)
}

/// Action law `α_s ∘ α_{s′} = α_{s+s′}` on `χ^m`.
///
/// The left side applies the comorphism in `s′` and re-expands every
/// resulting character in `s`; the right side multiplies out
/// `χ^m (1 + (s+s′) χ^e)^k` directly.
pub fn action_additivity_check(root: &DemazureRoot, m: &LatticeVector) -> Result<bool> {
    let rank = m.rank();
    let two_step = comorphism_apply_in(root, m, Param::SPrime)?
        .substitute_characters(|c| comorphism_apply_in(root, c, Param::S))?;
    let k = pairing_exponent(root, m)?;
    let chi_e = GradedLaurentPoly::character(root.e.clone());
    let sum = &GradedLaurentPoly::parameter(Param::S, rank)
        + &GradedLaurentPoly::parameter(Param::SPrime, rank);
    let base = &GradedLaurentPoly::one(rank) + &(&sum * &chi_e);
    let direct = &GradedLaurentPoly::character(m.clone()) * &base.pow(k, rank);
    Ok(two_step == direct)
}

/// Homogeneous derivation `∂_{p,e}: χ^m ↦ ⟨p, m⟩ χ^{m+e}` of degree `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousDerivation {
    p: LatticeVector,
    e: LatticeVector,
}

impl HomogeneousDerivation {
    pub fn new(p: LatticeVector, e: LatticeVector) -> Result<Self> {
        if p.rank() != e.rank() {
            return Err(Error::RankMismatch {
                left: p.rank(),
                right: e.rank(),
            });
        }
        if !p.is_primitive() {
            return Err(Error::NotPrimitive(p.to_string()));
        }
        Ok(HomogeneousDerivation { p, e })
    }

    pub fn direction(&self) -> &LatticeVector {
        &self.p
    }

    pub fn degree(&self) -> &LatticeVector {
        &self.e
    }
}

/// Apply `∂_{p,e}` term by term; the parameters are constants.
pub fn derivation_apply(d: &HomogeneousDerivation, poly: &GradedLaurentPoly) -> GradedLaurentPoly {
    let mut out = GradedLaurentPoly::zero();
    for (key, c) in poly.terms() {
        let w = d.p.dot(&key.m);
        if w.is_zero() {
            continue;
        }
        out = &out + &GradedLaurentPoly::monomial(c * w, key.s, &key.m + &d.e);
    }
    out
}

/// The `s¹` coefficient of `α_e^*(χ^m)` equals `∂_{ρ_e,e}(χ^m)`.
pub fn infinitesimal_check(root: &DemazureRoot, m: &LatticeVector) -> Result<bool> {
    let linear = comorphism_apply(root, m)?.param_coefficient(Param::S, 1);
    let d = HomogeneousDerivation::new(root.rho.clone(), root.e.clone())?;
    Ok(linear == derivation_apply(&d, &GradedLaurentPoly::character(m.clone())))
}

/// Lattice points `m` with `|mᵢ| ≤ height` and `⟨ρ, m⟩ ≥ 0` for every
/// given ray, i.e. a bounded sample of `σ^∨ ∩ M`.
pub fn dual_lattice_points(rank: usize, rays: &[&LatticeVector], height: i64) -> Vec<LatticeVector> {
    let small: Vec<Vec<i64>> = rays.iter().map(|r| r.to_i64s().unwrap_or_default()).collect();
    let fits = small.iter().all(|r| r.len() == rank);
    let mut out = Vec::new();
    let mut current = vec![-height; rank];
    loop {
        let ok = if fits {
            small
                .iter()
                .all(|r| r.iter().zip(&current).map(|(a, b)| *a as i128 * *b as i128).sum::<i128>() >= 0)
        } else {
            let m = LatticeVector::from_i64s(&current);
            rays.iter().all(|r| !r.dot(&m).is_negative())
        };
        if ok {
            out.push(LatticeVector::from_i64s(&current));
        }
        let mut k = rank;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if current[k] < height {
                current[k] += 1;
                for c in current.iter_mut().skip(k + 1) {
                    *c = -height;
                }
                break;
            }
        }
    }
}

/// Outcome on one maximal cone `σ` of [`regularity_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChartCertificate {
    /// `ρ_e ∈ σ(1)`: the action maps the chart `X_σ` to itself. Every other
    /// ray of `σ` pairs non-negatively with `e`, and `⟨ρ_e, m + ie⟩ =
    /// ⟨ρ_e, m⟩ − i` stays non-negative for `i ≤ ⟨ρ_e, m⟩`.
    Invariant {
        cone: usize,
        ok: bool,
        samples: usize,
    },
    /// `ρ_e ∉ σ(1)`: where `χ^e` is invertible the chart maps into
    /// `X_{σ′}` with `σ′ = cone(ρ_e, σ ∩ e^⊥)`; `σ′` must be a cone of the
    /// fan, and `m + ℓe ∈ σ^∨` for `ℓ ≥ max(0, −⟨m, ρ⟩)` over the rays
    /// `ρ` of `σ` with `⟨ρ, e⟩ > 0`.
    Shifted {
        cone: usize,
        orthogonal_rays: Vec<usize>,
        positive_rays: Vec<usize>,
        sigma_prime: Option<Vec<usize>>,
        ok: bool,
        samples: usize,
    },
}

impl ChartCertificate {
    pub fn ok(&self) -> bool {
        match self {
            ChartCertificate::Invariant { ok, .. } | ChartCertificate::Shifted { ok, .. } => *ok,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityCertificate {
    pub root: DemazureRoot,
    pub charts: Vec<ChartCertificate>,
}

impl RegularityCertificate {
    pub fn passed(&self) -> bool {
        self.charts.iter().all(ChartCertificate::ok)
    }
}

pub fn regularity_check(fan: &Fan, root: &DemazureRoot) -> Result<RegularityCertificate> {
    regularity_check_with_height(fan, root, SAMPLE_HEIGHT)
}

/// Certify that the root subgroup extends to every affine chart.
///
/// The combinatorial conditions are checked exactly; in addition every
/// lattice point of height at most `height` in the relevant dual cone is
/// pushed through the comorphism (or the shift) and tested for membership.
pub fn regularity_check_with_height(
    fan: &Fan,
    root: &DemazureRoot,
    height: i64,
) -> Result<RegularityCertificate> {
    if !fan.is_complete() {
        return Err(Error::NotComplete);
    }
    if DemazureRoot::distinguished_ray(fan, &root.e) != Some(root.ray) {
        return Err(Error::Certificate(format!("{root} is not a root of the fan")));
    }
    let rank = fan.rank();
    let minus_one = -BigInt::one();
    let mut charts = Vec::new();
    for (c, idx) in fan.max_cones().iter().enumerate() {
        let rays: Vec<&LatticeVector> = idx.iter().map(|&i| fan.ray(i)).collect();
        if idx.binary_search(&root.ray).is_ok() {
            let mut ok = idx.iter().all(|&i| {
                let p = fan.ray(i).dot(&root.e);
                if i == root.ray {
                    p == minus_one
                } else {
                    !p.is_negative()
                }
            });
            let sample = dual_lattice_points(rank, &rays, height);
            for m in &sample {
                let image = comorphism_apply(root, m)?;
                ok &= image
                    .support()
                    .all(|m2| rays.iter().all(|r| !r.dot(m2).is_negative()));
            }
            charts.push(ChartCertificate::Invariant {
                cone: c,
                ok,
                samples: sample.len(),
            });
        } else {
            let mut orthogonal = Vec::new();
            let mut positive = Vec::new();
            let mut ok = true;
            for &i in idx {
                let p = fan.ray(i).dot(&root.e);
                if p.is_zero() {
                    orthogonal.push(i);
                } else if p.is_positive() {
                    positive.push(i);
                } else {
                    ok = false;
                }
            }
            let mut prime = orthogonal.clone();
            prime.push(root.ray);
            prime.sort_unstable();
            let sigma_prime = fan.cone_by_rays(&prime).map(|fc| fc.rays.clone());
            ok &= sigma_prime.as_deref() == Some(prime.as_slice());
            let mut samples = 0;
            if ok {
                let prime_rays: Vec<&LatticeVector> = prime.iter().map(|&i| fan.ray(i)).collect();
                for m in dual_lattice_points(rank, &prime_rays, height) {
                    samples += 1;
                    let shift = positive
                        .iter()
                        .map(|&i| -fan.ray(i).dot(&m))
                        .fold(BigInt::zero(), |a, b| a.max(b));
                    let shifted = &m + &root.e.scaled(&shift);
                    ok &= rays.iter().all(|r| !r.dot(&shifted).is_negative());
                }
            }
            charts.push(ChartCertificate::Shifted {
                cone: c,
                orthogonal_rays: orthogonal,
                positive_rays: positive,
                sigma_prime,
                ok,
                samples,
            });
        }
    }
    Ok(RegularityCertificate {
        root: root.clone(),
        charts,
    })
}

/// A character `m₀ ∈ σ^∨` with `⟨ρ_e, m₀⟩ = 1` for a maximal cone `σ ∋ ρ_e`.
/// The comorphism then produces the term `s·χ^{m₀+e}`, so an `s` acting
/// trivially must vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessMonomial {
    pub cone: usize,
    pub m0: LatticeVector,
    pub coefficient: BigInt,
    pub character: LatticeVector,
}

pub fn faithfulness_check(fan: &Fan, root: &DemazureRoot) -> Result<WitnessMonomial> {
    let rank = fan.rank();
    let one = BigInt::one();
    let mut best: Option<(BigInt, usize, LatticeVector)> = None;
    for (c, idx) in fan.max_cones().iter().enumerate() {
        if idx.binary_search(&root.ray).is_err() {
            continue;
        }
        let rays: Vec<&LatticeVector> = idx.iter().map(|&i| fan.ray(i)).collect();
        let mut candidates: Vec<LatticeVector> = dual_lattice_points(rank, &rays, 2)
            .into_iter()
            .filter(|m| root.rho.dot(m) == one)
            .collect();
        if candidates.is_empty() {
            candidates.extend(constructed_witness(fan, c, root));
        }
        for m in candidates {
            let norm = m.iter().fold(BigInt::zero(), |a, x| a + x.abs());
            let better = match &best {
                None => true,
                Some((n, bc, bm)) => (&norm, c, &m) < (n, *bc, bm),
            };
            if better {
                best = Some((norm, c, m));
            }
        }
    }
    let Some((_, cone, m0)) = best else {
        return Err(Error::Certificate(format!("no faithfulness witness for {root}")));
    };
    let image = comorphism_apply(root, &m0)?;
    let character = &m0 + &root.e;
    let coefficient = image.coefficient([1, 0], &character);
    if coefficient.is_zero() {
        return Err(Error::Certificate(format!("witness term vanishes for {root}")));
    }
    Ok(WitnessMonomial {
        cone,
        m0,
        coefficient,
        character,
    })
}

/// `m_p + K·u` where `⟨ρ_e, m_p⟩ = 1` and `u` (the sum of the facet normals
/// through `ρ_e`) vanishes on `ρ_e` and is positive on the other rays.
fn constructed_witness(fan: &Fan, cone: usize, root: &DemazureRoot) -> Option<LatticeVector> {
    let rank = fan.rank();
    let (_, u) = crate::lattice::LatticeMatrix::from_columns(rank, std::slice::from_ref(&root.rho))
        .ok()?
        .hermite_normal_form();
    let particular = u.row(0);
    let through: Vec<&LatticeVector> = fan
        .max_cone(cone)
        .facet_normals()
        .iter()
        .filter(|n| n.dot(&root.rho).is_zero())
        .collect();
    let dir = through
        .iter()
        .fold(LatticeVector::zero(rank), |acc, n| &acc + n);
    let mut k = BigInt::zero();
    for &i in &fan.max_cones()[cone] {
        if i == root.ray {
            continue;
        }
        let r = fan.ray(i);
        let a = r.dot(&particular);
        let b = r.dot(&dir);
        if a.is_negative() && b.is_positive() {
            let need = num::Integer::div_ceil(&-a, &b);
            k = k.max(need);
        }
    }
    let m = &particular + &dir.scaled(&k);
    let rays: Vec<&LatticeVector> = fan.max_cones()[cone].iter().map(|&i| fan.ray(i)).collect();
    (root.rho.dot(&m).is_one() && rays.iter().all(|r| !r.dot(&m).is_negative())).then_some(m)
}

/// Comparison of the closed-form preservation criterion for `∂_{p,e}` with
/// a sampled check of the membership condition on every maximal cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationResult {
    /// `e = 0`, or `e` is a root and `p = ±ρ_e`.
    pub closed_form: bool,
    /// No sampled `m ∈ σ^∨ ∩ M` with `⟨p, m⟩ ≠ 0` has `m + e ∉ σ^∨`.
    pub sampled: bool,
    /// First violating `(maximal cone, m)` found by the sampler.
    pub witness: Option<(usize, LatticeVector)>,
}

impl ClassificationResult {
    pub fn agrees(&self) -> bool {
        self.closed_form == self.sampled
    }
}

/// Caches the roots and dual-cone samples of a fan for repeated
/// classification queries.
pub struct DerivationClassifier<'a> {
    fan: &'a Fan,
    roots: Vec<DemazureRoot>,
    samples: Vec<Vec<LatticeVector>>,
}

impl<'a> DerivationClassifier<'a> {
    pub fn new(fan: &'a Fan, height: i64) -> Result<Self> {
        let roots = demazure_roots(fan)?;
        let samples = fan
            .max_cones()
            .iter()
            .map(|idx| {
                let rays: Vec<&LatticeVector> = idx.iter().map(|&i| fan.ray(i)).collect();
                dual_lattice_points(fan.rank(), &rays, height)
            })
            .collect();
        Ok(DerivationClassifier {
            fan,
            roots,
            samples,
        })
    }

    pub fn classify(&self, p: &LatticeVector, e: &LatticeVector) -> Result<ClassificationResult> {
        let d = HomogeneousDerivation::new(p.clone(), e.clone())?;
        if p.rank() != self.fan.rank() {
            return Err(Error::RankMismatch {
                left: self.fan.rank(),
                right: p.rank(),
            });
        }
        let neg_p = -p;
        let closed_form = e.is_zero()
            || self
                .roots
                .iter()
                .any(|r| &r.e == e && (&r.rho == p || r.rho == neg_p));

        let mut witness = None;
        'cones: for (c, idx) in self.fan.max_cones().iter().enumerate() {
            for m in &self.samples[c] {
                let image = derivation_apply(&d, &GradedLaurentPoly::character(m.clone()));
                let escapes = image
                    .support()
                    .any(|m2| idx.iter().any(|&i| self.fan.ray(i).dot(m2).is_negative()));
                if escapes {
                    witness = Some((c, m.clone()));
                    break 'cones;
                }
            }
        }
        Ok(ClassificationResult {
            closed_form,
            sampled: witness.is_none(),
            witness,
        })
    }
}

pub fn derivation_classification_check(
    fan: &Fan,
    p: &LatticeVector,
    e: &LatticeVector,
) -> Result<ClassificationResult> {
    DerivationClassifier::new(fan, SAMPLE_HEIGHT)?.classify(p, e)
}

/// `dim Aut⁰ = rank N + |RT(Σ)|`: the torus directions plus one root
/// derivation per root, all of pairwise distinct degree.
pub fn lie_dimension(fan: &Fan) -> Result<usize> {
    Ok(fan.rank() + demazure_roots(fan)?.len())
}
