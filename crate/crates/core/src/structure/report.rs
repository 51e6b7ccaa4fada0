use std::fmt;

use num::{BigInt, One, Zero};

use super::decompose::{decompose, Decomposition};
use super::iso::{fan_automorphisms, fan_isomorphism, generating_set, is_fan_isomorphism, FanIsomorphism};
use crate::error::Result;
use crate::fan::Fan;
use crate::lattice::{LatticeMatrix, LatticeVector};
use crate::roots::{demazure_roots, DemazureRoot};

/// Isomorphism class of factors `X_i` with multiplicity `r_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorClass {
    /// Indices into the decomposition's factor list.
    pub members: Vec<usize>,
    pub fan: Fan,
    pub root_count: usize,
    pub dim_aut0: usize,
    pub fan_automorphism_order: usize,
}

impl FactorClass {
    pub fn multiplicity(&self) -> usize {
        self.members.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutStructureReport {
    pub torus_rank: usize,
    pub roots: Vec<DemazureRoot>,
    pub dim_aut0: usize,
    pub fan_automorphism_order: usize,
    pub fan_automorphism_generators: Vec<FanIsomorphism>,
    pub decomposition: Decomposition,
    pub classes: Vec<FactorClass>,
    pub structure: String,
}

impl AutStructureReport {
    pub fn root_count(&self) -> usize {
        self.roots.len()
    }
}

fn subscript(n: usize) -> String {
    n.to_string()
        .chars()
        .map(|c| char::from_u32('₀' as u32 + c.to_digit(10).unwrap()).unwrap())
        .collect()
}

fn superscript(n: usize) -> String {
    n.to_string()
        .chars()
        .map(|c| match c {
            '1' => '¹',
            '2' => '²',
            '3' => '³',
            d => char::from_u32('⁰' as u32 + d.to_digit(10).unwrap()).unwrap(),
        })
        .collect()
}

/// `∏ (Aut_{X_i}^{r_i} ⋊ S_{r_i})` with trivial pieces dropped.
pub fn structure_string(multiplicities: &[usize]) -> String {
    if multiplicities.is_empty() {
        return "1".to_string();
    }
    let several = multiplicities.len() > 1;
    multiplicities
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let base = format!("Aut_{{X{}}}", subscript(i + 1));
            if r == 1 {
                base
            } else if several {
                format!("({base}{} ⋊ S{})", superscript(r), subscript(r))
            } else {
                format!("{base}{} ⋊ S{}", superscript(r), subscript(r))
            }
        })
        .collect::<Vec<_>>()
        .join(" × ")
}

fn group_factors(d: &Decomposition) -> Result<Vec<FactorClass>> {
    let mut classes: Vec<FactorClass> = Vec::new();
    for (i, factor) in d.factors.iter().enumerate() {
        if let Some(class) = classes
            .iter_mut()
            .find(|c| fan_isomorphism(&c.fan, &factor.fan).is_some())
        {
            class.members.push(i);
            continue;
        }
        let root_count = demazure_roots(&factor.fan)?.len();
        classes.push(FactorClass {
            members: vec![i],
            fan: factor.fan.clone(),
            root_count,
            dim_aut0: factor.fan.rank() + root_count,
            fan_automorphism_order: fan_automorphisms(&factor.fan)?.len(),
        });
    }
    Ok(classes)
}

/// Decompose, group isomorphic factors, and summarize the automorphism group.
pub fn aut_structure_report(f: &Fan) -> Result<AutStructureReport> {
    let roots = demazure_roots(f)?;
    let autos = fan_automorphisms(f)?;
    let decomposition = decompose(f)?;
    let classes = group_factors(&decomposition)?;
    let multiplicities: Vec<usize> = classes.iter().map(FactorClass::multiplicity).collect();
    Ok(AutStructureReport {
        torus_rank: f.rank(),
        dim_aut0: f.rank() + roots.len(),
        roots,
        fan_automorphism_order: autos.len(),
        fan_automorphism_generators: generating_set(&autos),
        decomposition,
        structure: structure_string(&multiplicities),
        classes,
    })
}

impl fmt::Display for AutStructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "structure: {}", self.structure)?;
        writeln!(f, "torus rank: {}", self.torus_rank)?;
        writeln!(f, "roots: {}", self.roots.len())?;
        writeln!(f, "dim Aut⁰: {}", self.dim_aut0)?;
        writeln!(f, "fan automorphisms: {}", self.fan_automorphism_order)?;
        for (i, class) in self.classes.iter().enumerate() {
            writeln!(
                f,
                "X{}: rank {}, {} rays, multiplicity {}, dim Aut⁰ {}, fan automorphisms {}",
                subscript(i + 1),
                class.fan.rank(),
                class.fan.rays().len(),
                class.multiplicity(),
                class.dim_aut0,
                class.fan_automorphism_order
            )?;
        }
        write!(f, "generators:")?;
        for g in &self.fan_automorphism_generators {
            write!(f, " {}", g.matrix)?;
        }
        Ok(())
    }
}

/// Outcome of comparing `Aut(Σ)` with the product structure of its factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathOrderCheck {
    pub order: usize,
    /// `∏ |Aut(Σ_i)|^{r_i} · r_i!`.
    pub expected: BigInt,
    /// Every automorphism, written in the decomposition basis, permutes
    /// isomorphic factor blocks and acts on each block by a factor
    /// isomorphism.
    pub elementwise: bool,
}

impl WreathOrderCheck {
    pub fn holds(&self) -> bool {
        self.elementwise && self.expected == BigInt::from(self.order)
    }
}

pub fn wreath_order_check(f: &Fan) -> Result<WreathOrderCheck> {
    let autos = fan_automorphisms(f)?;
    let d = decompose(f)?;
    let classes = group_factors(&d)?;
    let mut expected = BigInt::one();
    for class in &classes {
        let r = class.multiplicity();
        expected *= BigInt::from(class.fan_automorphism_order).pow(r as u32);
        expected *= (1..=r).fold(BigInt::one(), |a, k| a * BigInt::from(k));
    }
    let class_of: Vec<usize> = (0..d.factors.len())
        .map(|i| classes.iter().position(|c| c.members.contains(&i)).expect("grouped"))
        .collect();
    let p = d.basis_matrix();
    let p_inv = p.inverse_unimodular()?.expect("decomposition basis is unimodular");
    let elementwise = autos
        .iter()
        .all(|a| block_structured(&d, &class_of, &(&p_inv * &(&a.matrix * &p))));
    Ok(WreathOrderCheck {
        order: autos.len(),
        expected,
        elementwise,
    })
}

fn block_structured(d: &Decomposition, class_of: &[usize], b: &LatticeMatrix) -> bool {
    let mut offsets = vec![0];
    for f in &d.factors {
        offsets.push(offsets.last().unwrap() + f.basis.len());
    }
    let k = d.factors.len();
    let mut target_used = vec![false; k];
    for j in 0..k {
        let cols = offsets[j]..offsets[j + 1];
        let nonzero_blocks: Vec<usize> = (0..k)
            .filter(|&i| {
                (offsets[i]..offsets[i + 1]).any(|r| cols.clone().any(|c| !b.get(r, c).is_zero()))
            })
            .collect();
        let [i] = nonzero_blocks[..] else {
            return false;
        };
        if target_used[i] || class_of[i] != class_of[j] {
            return false;
        }
        target_used[i] = true;
        let block: Vec<Vec<BigInt>> = (offsets[i]..offsets[i + 1])
            .map(|r| cols.clone().map(|c| b.get(r, c).clone()).collect())
            .collect();
        let n = block.len();
        let Ok(block) = LatticeMatrix::new(n, n, block) else {
            return false;
        };
        if !is_fan_isomorphism(&block, &d.factors[j].fan, &d.factors[i].fan) {
            return false;
        }
    }
    true
}

/// The roots of `f`, recomputed as the disjoint union of its factors' roots
/// embedded through the decomposition basis, agree with `demazure_roots(f)`.
pub fn product_roots_certificate(f: &Fan) -> Result<bool> {
    let d = decompose(f)?;
    let n = f.rank();
    let p = d.basis_matrix();
    let p_inv_t = p.inverse_unimodular()?.expect("decomposition basis is unimodular").transpose();
    let mut embedded = Vec::new();
    let mut offset = 0;
    for factor in &d.factors {
        let k = factor.fan.rank();
        for r in demazure_roots(&factor.fan)? {
            let mut coords = vec![BigInt::zero(); n];
            for (t, x) in r.e.iter().enumerate() {
                coords[offset + t] = x.clone();
            }
            let ray = factor.rays[r.ray];
            embedded.push(DemazureRoot {
                ray,
                e: p_inv_t.apply(&LatticeVector::new(coords)),
                rho: f.ray(ray).clone(),
            });
        }
        offset += k;
    }
    embedded.sort();
    Ok(embedded == demazure_roots(f)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn strings() {
        assert_eq!(structure_string(&[1]), "Aut_{X₁}");
        assert_eq!(structure_string(&[3]), "Aut_{X₁}³ ⋊ S₃");
        assert_eq!(structure_string(&[1, 1]), "Aut_{X₁} × Aut_{X₂}");
        assert_eq!(structure_string(&[2, 1]), "(Aut_{X₁}² ⋊ S₂) × Aut_{X₂}");
        assert_eq!(structure_string(&[12]), "Aut_{X₁}¹² ⋊ S₁₂");
    }

    #[test]
    fn reports() {
        let p1 = catalog::projective_space(1);
        let p2 = catalog::projective_space(2);

        let r = aut_structure_report(&p2).unwrap();
        assert_eq!(r.dim_aut0, 8);
        assert_eq!(r.structure, "Aut_{X₁}");
        assert_eq!(r.classes.len(), 1);
        assert_eq!(r.fan_automorphism_order, 6);

        let r = aut_structure_report(&catalog::product(&[&p1, &p1, &p1])).unwrap();
        assert_eq!(r.structure, "Aut_{X₁}³ ⋊ S₃");
        assert_eq!(r.fan_automorphism_order, 48);
        assert_eq!(r.classes[0].multiplicity(), 3);

        let r = aut_structure_report(&catalog::product(&[&p1, &p2])).unwrap();
        assert_eq!(r.structure, "Aut_{X₁} × Aut_{X₂}");
        assert_eq!(r.fan_automorphism_order, 12);
    }

    #[test]
    fn wreath_order_on_products() {
        let p1 = catalog::projective_space(1);
        let p2 = catalog::projective_space(2);
        for (f, order) in [
            (catalog::product(&[&p1, &p1]), 8),
            (catalog::product(&[&p1, &p2]), 12),
            (catalog::hirzebruch(1), 2),
        ] {
            let c = wreath_order_check(&f).unwrap();
            assert_eq!(c.order, order);
            assert!(c.holds(), "{c:?}");
        }
    }

    #[test]
    fn product_roots_through_decomposition() {
        let p1 = catalog::projective_space(1);
        let f = catalog::product(&[&p1, &catalog::hirzebruch(1)]);
        assert!(product_roots_certificate(&f).unwrap());
        let g = f
            .transform(&LatticeMatrix::from_i64_rows(&[[1, 0, 1], [0, 1, 0], [0, 0, 1]]))
            .unwrap();
        assert!(product_roots_certificate(&g).unwrap());
    }
}
