//! Demazure roots of a complete fan.
//!
//! A root is a character `e ∈ M` with a distinguished ray `ρ_e` such that
//! `⟨ρ_e, e⟩ = −1` and `⟨ρ, e⟩ ≥ 0` for every other ray. For each ray the
//! candidates form a rational polytope (bounded when the fan is complete);
//! its coordinate bounds come from Fourier–Motzkin elimination, and the
//! integer points of the bounding box are filtered against the definition.

use std::collections::BTreeSet;
use std::fmt;

use num::{BigInt, Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::LatticeVector;

/// A Demazure root `e` together with its distinguished ray.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DemazureRoot {
    /// Index of `ρ_e` in the fan's ray list. Listed first so that the derived
    /// order is the canonical `(ρ_e index, e)` order.
    pub ray: usize,
    pub e: LatticeVector,
    /// The primitive vector `ρ_e` itself.
    pub rho: LatticeVector,
}

impl DemazureRoot {
    /// Check the defining inequalities against `fan`, returning the unique
    /// ray pairing to `−1` if `e` is a root.
    pub fn distinguished_ray(fan: &Fan, e: &LatticeVector) -> Option<usize> {
        let mut found = None;
        for (i, rho) in fan.rays().iter().enumerate() {
            let p = rho.dot(e);
            if p == -BigInt::one() {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            } else if p.is_negative() {
                return None;
            }
        }
        found
    }

    pub fn new(fan: &Fan, e: LatticeVector) -> Option<DemazureRoot> {
        let ray = Self::distinguished_ray(fan, &e)?;
        Some(DemazureRoot {
            ray,
            e,
            rho: fan.ray(ray).clone(),
        })
    }
}

impl fmt::Display for DemazureRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e={} ρ_e={}", self.e, self.rho)
    }
}

/// Linear constraint `⟨a, x⟩ + b ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Constraint {
    a: Vec<BigInt>,
    b: BigInt,
}

impl Constraint {
    fn normalized(mut self) -> Constraint {
        let g = self.a.iter().fold(self.b.abs(), |g, x| g.gcd(x));
        if !g.is_zero() && !g.is_one() {
            for x in self.a.iter_mut() {
                *x /= &g;
            }
            self.b /= &g;
        }
        self
    }
}

/// The candidate set for roots with a fixed distinguished ray `ρ₀`:
/// `{e : ⟨ρ₀, e⟩ = −1, ⟨ρ, e⟩ ≥ 0 for ρ ≠ ρ₀}`.
#[derive(Clone, Debug)]
pub struct RootPolytope {
    pub ray: usize,
    rank: usize,
    constraints: Vec<Constraint>,
}

impl RootPolytope {
    pub fn new(fan: &Fan, ray: usize) -> Result<RootPolytope> {
        if ray >= fan.rays().len() {
            return Err(Error::RayIndex {
                index: ray,
                len: fan.rays().len(),
            });
        }
        let rho0 = fan.ray(ray);
        let mut constraints = vec![
            Constraint {
                a: rho0.coords().to_vec(),
                b: BigInt::one(),
            },
            Constraint {
                a: rho0.iter().map(|x| -x).collect(),
                b: -BigInt::one(),
            },
        ];
        for (i, rho) in fan.rays().iter().enumerate() {
            if i != ray {
                constraints.push(Constraint {
                    a: rho.coords().to_vec(),
                    b: BigInt::zero(),
                });
            }
        }
        Ok(RootPolytope {
            ray,
            rank: fan.rank(),
            constraints,
        })
    }

    pub fn contains(&self, e: &LatticeVector) -> bool {
        self.constraints.iter().all(|c| {
            let v = c.a.iter().zip(e.iter()).fold(c.b.clone(), |acc, (a, x)| acc + a * x);
            !v.is_negative()
        })
    }

    /// Integer bounds `[lo, hi]` on each coordinate over the polytope, via
    /// Fourier–Motzkin projection onto that coordinate. `Ok(None)` if the
    /// polytope has no integer points in some coordinate range.
    pub fn coordinate_bounds(&self) -> Result<Option<Vec<(BigInt, BigInt)>>> {
        let mut bounds = Vec::with_capacity(self.rank);
        for j in 0..self.rank {
            let mut system: Vec<Constraint> = self.constraints.clone();
            for k in 0..self.rank {
                if k != j {
                    system = eliminate(system, k);
                }
            }
            let mut lo: Option<BigInt> = None;
            let mut hi: Option<BigInt> = None;
            for c in &system {
                let coef = &c.a[j];
                if coef.is_zero() {
                    if c.b.is_negative() {
                        return Ok(None);
                    }
                } else if coef.is_positive() {
                    // coef·x ≥ −b
                    let l = Integer::div_ceil(&-&c.b, coef);
                    lo = Some(lo.map_or(l.clone(), |x: BigInt| x.max(l)));
                } else {
                    // −coef·x ≤ b
                    let h = Integer::div_floor(&c.b, &-coef);
                    hi = Some(hi.map_or(h.clone(), |x: BigInt| x.min(h)));
                }
            }
            match (lo, hi) {
                (Some(l), Some(h)) => {
                    if l > h {
                        return Ok(None);
                    }
                    bounds.push((l, h));
                }
                _ => return Err(Error::UnboundedPolytope(self.ray)),
            }
        }
        Ok(Some(bounds))
    }

    /// All lattice points of the polytope.
    pub fn lattice_points(&self) -> Result<Vec<LatticeVector>> {
        let Some(bounds) = self.coordinate_bounds()? else {
            return Ok(Vec::new());
        };
        let mut out = Vec::new();
        let mut current: Vec<BigInt> = bounds.iter().map(|(l, _)| l.clone()).collect();
        if self.rank == 0 {
            return Ok(out);
        }
        'outer: loop {
            let e = LatticeVector::new(current.clone());
            if self.contains(&e) {
                out.push(e);
            }
            for k in (0..self.rank).rev() {
                if current[k] < bounds[k].1 {
                    current[k] += 1;
                    for (c, b) in current.iter_mut().zip(&bounds).skip(k + 1) {
                        *c = b.0.clone();
                    }
                    continue 'outer;
                }
            }
            break;
        }
        Ok(out)
    }
}

fn eliminate(system: Vec<Constraint>, k: usize) -> Vec<Constraint> {
    let mut out: BTreeSet<Constraint> = BTreeSet::new();
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for c in system {
        if c.a[k].is_positive() {
            pos.push(c);
        } else if c.a[k].is_negative() {
            neg.push(c);
        } else {
            out.insert(c);
        }
    }
    for p in &pos {
        for q in &neg {
            let (cp, cq) = (&p.a[k], -&q.a[k]);
            let a = p.a.iter().zip(&q.a).map(|(x, y)| x * &cq + y * cp).collect();
            let b = &p.b * &cq + &q.b * cp;
            out.insert(Constraint { a, b }.normalized());
        }
    }
    // drop trivially satisfied rows
    out.into_iter()
        .filter(|c| !(c.a.iter().all(Zero::is_zero) && !c.b.is_negative()))
        .collect()
}

/// `RT(Σ)`, sorted by `(ρ_e index, e)`.
pub fn demazure_roots(fan: &Fan) -> Result<Vec<DemazureRoot>> {
    if !fan.is_complete() {
        return Err(Error::NotComplete);
    }
    let mut roots = Vec::new();
    for ray in 0..fan.rays().len() {
        let polytope = RootPolytope::new(fan, ray)?;
        for e in polytope.lattice_points()? {
            roots.push(DemazureRoot {
                ray,
                e,
                rho: fan.ray(ray).clone(),
            });
        }
    }
    roots.sort();
    Ok(roots)
}

/// Brute-force root enumeration over the box `|eᵢ| ≤ radius`, filtering by
/// the definition alone. Independent of the polytope machinery.
pub fn roots_oracle(fan: &Fan, radius: u32) -> Vec<DemazureRoot> {
    let n = fan.rank();
    let r = radius as i64;
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut current = vec![-r; n];
    loop {
        let e = LatticeVector::from_i64s(&current);
        if let Some(root) = DemazureRoot::new(fan, e) {
            out.push(root);
        }
        let mut k = n;
        loop {
            if k == 0 {
                out.sort();
                return out;
            }
            k -= 1;
            if current[k] < r {
                current[k] += 1;
                for c in current.iter_mut().skip(k + 1) {
                    *c = -r;
                }
                break;
            }
        }
    }
}

/// Largest absolute coordinate over all root polytopes' bounding boxes.
pub fn root_coordinate_bound(fan: &Fan) -> Result<BigInt> {
    let mut bound = BigInt::zero();
    for ray in 0..fan.rays().len() {
        if let Some(b) = RootPolytope::new(fan, ray)?.coordinate_bounds()? {
            for (l, h) in b {
                bound = bound.max(l.abs()).max(h.abs());
            }
        }
    }
    Ok(bound)
}

/// Roots split into pairs `{e, −e}` with both signs roots, and the rest.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootClassification {
    /// Each pair lists the lexicographically larger vector first.
    pub semisimple_pairs: Vec<(DemazureRoot, DemazureRoot)>,
    pub unipotent: Vec<DemazureRoot>,
}

pub fn classify_roots(roots: &[DemazureRoot]) -> RootClassification {
    let mut out = RootClassification::default();
    for r in roots {
        let neg = -&r.e;
        match roots.iter().find(|s| s.e == neg) {
            Some(s) if r.e > neg => out.semisimple_pairs.push((r.clone(), s.clone())),
            Some(_) => {}
            None => out.unipotent.push(r.clone()),
        }
    }
    out.semisimple_pairs.sort_by(|a, b| a.0.e.cmp(&b.0.e));
    out
}

/// `RT(Σ₁) × {0} ⊔ {0} × RT(Σ₂)`, indexed into the rays of `Σ₁ × Σ₂`.
pub fn product_roots(f1: &Fan, f2: &Fan) -> Result<Vec<DemazureRoot>> {
    let product = crate::fan::product_fan(f1, f2);
    let (z1, z2) = (LatticeVector::zero(f1.rank()), LatticeVector::zero(f2.rank()));
    let mut out = Vec::new();
    for r in demazure_roots(f1)? {
        let rho = r.rho.concat(&z2);
        out.push(DemazureRoot {
            ray: product.ray_index(&rho).expect("factor ray is a product ray"),
            e: r.e.concat(&z2),
            rho,
        });
    }
    for r in demazure_roots(f2)? {
        let rho = z1.concat(&r.rho);
        out.push(DemazureRoot {
            ray: product.ray_index(&rho).expect("factor ray is a product ray"),
            e: z1.concat(&r.e),
            rho,
        });
    }
    out.sort();
    Ok(out)
}
