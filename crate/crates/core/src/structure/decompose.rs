use std::collections::BTreeSet;
use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::fan::{is_subset, product_fan, Fan};
use crate::lattice::{
    integer_coordinates, maximal_minor_gcd, saturation_basis, solve_in_basis, span_rank,
    LatticeMatrix, LatticeVector,
};

/// Which of the three product conditions a bipartition of ray blocks fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SplitFailure {
    /// The saturated spans of the two halves do not form a direct sum equal
    /// to the ambient lattice.
    DirectSum,
    /// Some maximal cone restricted to one half is not a cone of the fan.
    ConeSplitting,
    /// The maximal cones are not exactly the products of the restricted
    /// maximal cones.
    ProductEquality,
}

impl fmt::Display for SplitFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitFailure::DirectSum => "direct-sum",
            SplitFailure::ConeSplitting => "cone-splitting",
            SplitFailure::ProductEquality => "product-equality",
        })
    }
}

/// Why a factor admits no further splitting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndecomposabilityCertificate {
    /// The rays form a single block under the circuit relation, so no
    /// bipartition is possible.
    SingleBlock,
    /// Every bipartition of the blocks, listed as the ray indices of the
    /// half containing the first block, together with a failed condition.
    Exhausted(Vec<(Vec<usize>, SplitFailure)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    /// The factor in coordinates of `basis`.
    pub fan: Fan,
    /// Basis of the direct summand `N_i ⊂ N`, in the coordinates of `N`.
    pub basis: Vec<LatticeVector>,
    /// `rays[j]` is the index in the input fan of ray `j` of `fan`.
    pub rays: Vec<usize>,
    pub certificate: IndecomposabilityCertificate,
}

impl Factor {
    pub fn certified_indecomposable(&self) -> bool {
        match &self.certificate {
            IndecomposabilityCertificate::SingleBlock => true,
            IndecomposabilityCertificate::Exhausted(list) => !list.is_empty(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub rank: usize,
    /// Ordered by smallest input ray index.
    pub factors: Vec<Factor>,
}

impl Decomposition {
    /// Columns are the concatenated factor bases.
    pub fn basis_matrix(&self) -> LatticeMatrix {
        let cols: Vec<LatticeVector> = self.factors.iter().flat_map(|f| f.basis.clone()).collect();
        if cols.is_empty() {
            return LatticeMatrix::identity(self.rank);
        }
        LatticeMatrix::from_columns(self.rank, &cols).expect("basis vectors of rank n")
    }

    /// Rebuild the fan from its factors through the recorded basis.
    pub fn reconstruct(&self) -> Result<Fan> {
        let product = self
            .factors
            .iter()
            .fold(Fan::trivial(0), |acc, f| product_fan(&acc, &f.fan));
        if self.factors.is_empty() {
            return Ok(Fan::trivial(self.rank));
        }
        product.transform(&self.basis_matrix())
    }
}

/// Union-find over rays: two rays are linked when they lie on a common
/// circuit. Fundamental circuits with respect to one basis suffice.
fn circuit_blocks(f: &Fan, rays: &[usize]) -> Vec<Vec<usize>> {
    let n = f.rank();
    let mut basis: Vec<usize> = Vec::new();
    let mut vecs: Vec<LatticeVector> = Vec::new();
    for &i in rays {
        vecs.push(f.ray(i).clone());
        if span_rank(n, &vecs) == vecs.len() {
            basis.push(i);
        } else {
            vecs.pop();
        }
    }
    let mut parent: Vec<usize> = (0..f.rays().len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for &i in rays {
        if basis.contains(&i) {
            continue;
        }
        let coords = solve_in_basis(&vecs, f.ray(i)).expect("ray lies in the span");
        for (c, &b) in coords.iter().zip(&basis) {
            if !c.is_zero() {
                let (x, y) = (find(&mut parent, i), find(&mut parent, b));
                parent[x] = y;
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for &i in rays {
        let r = find(&mut parent, i);
        match roots.iter().position(|&x| x == r) {
            Some(k) => blocks[k].push(i),
            None => {
                roots.push(r);
                blocks.push(vec![i]);
            }
        }
    }
    blocks
}

/// Maximal elements of `{σ(1) ∩ part}` over the given cones.
fn restricted_max_cones(cones: &[Vec<usize>], part: &[usize]) -> BTreeSet<Vec<usize>> {
    let all: BTreeSet<Vec<usize>> = cones
        .iter()
        .map(|c| c.iter().copied().filter(|i| part.binary_search(i).is_ok()).collect())
        .collect();
    all.iter()
        .filter(|c| !all.iter().any(|d| d.len() > c.len() && is_subset(c, d)))
        .cloned()
        .collect()
}

/// Test a bipartition of the rays of a sub-fan with the given maximal cones.
fn check_split(
    f: &Fan,
    span_dim: usize,
    cones: &[Vec<usize>],
    a: &[usize],
    b: &[usize],
) -> std::result::Result<(), SplitFailure> {
    let n = f.rank();
    let va: Vec<LatticeVector> = a.iter().map(|&i| f.ray(i).clone()).collect();
    let vb: Vec<LatticeVector> = b.iter().map(|&i| f.ray(i).clone()).collect();
    let mut both = saturation_basis(n, &va);
    both.extend(saturation_basis(n, &vb));
    if both.len() != span_dim || !maximal_minor_gcd(n, &both).is_one() {
        return Err(SplitFailure::DirectSum);
    }
    for c in cones {
        for part in [a, b] {
            let sub: Vec<usize> = c.iter().copied().filter(|i| part.binary_search(i).is_ok()).collect();
            if f.cone_by_rays(&sub).is_none() {
                return Err(SplitFailure::ConeSplitting);
            }
        }
    }
    let ma = restricted_max_cones(cones, a);
    let mb = restricted_max_cones(cones, b);
    let mut products: BTreeSet<Vec<usize>> = BTreeSet::new();
    for x in &ma {
        for y in &mb {
            let mut c: Vec<usize> = x.iter().chain(y).copied().collect();
            c.sort_unstable();
            products.insert(c);
        }
    }
    let given: BTreeSet<Vec<usize>> = cones.iter().cloned().collect();
    if products != given {
        return Err(SplitFailure::ProductEquality);
    }
    Ok(())
}

struct Leaf {
    rays: Vec<usize>,
    certificate: IndecomposabilityCertificate,
}

fn split_recursive(f: &Fan, rays: Vec<usize>, cones: Vec<Vec<usize>>, out: &mut Vec<Leaf>) {
    let n = f.rank();
    let vecs: Vec<LatticeVector> = rays.iter().map(|&i| f.ray(i).clone()).collect();
    let span_dim = span_rank(n, &vecs);
    let blocks = circuit_blocks(f, &rays);
    if blocks.len() <= 1 {
        out.push(Leaf {
            rays,
            certificate: IndecomposabilityCertificate::SingleBlock,
        });
        return;
    }
    let k = blocks.len();
    let mut failures = Vec::new();
    // the first block always sits in half `a`
    for mask in 0..(1u64 << (k - 1)) - 1 {
        let in_a = |j: usize| j == 0 || mask >> (j - 1) & 1 == 1;
        let mut a: Vec<usize> = Vec::new();
        let mut b: Vec<usize> = Vec::new();
        for (j, block) in blocks.iter().enumerate() {
            if in_a(j) {
                a.extend(block);
            } else {
                b.extend(block);
            }
        }
        a.sort_unstable();
        b.sort_unstable();
        match check_split(f, span_dim, &cones, &a, &b) {
            Ok(()) => {
                let ca = restricted_max_cones(&cones, &a).into_iter().collect();
                let cb = restricted_max_cones(&cones, &b).into_iter().collect();
                split_recursive(f, a, ca, out);
                split_recursive(f, b, cb, out);
                return;
            }
            Err(why) => failures.push((a, why)),
        }
    }
    out.push(Leaf {
        rays,
        certificate: IndecomposabilityCertificate::Exhausted(failures),
    });
}

/// Finest product decomposition `Σ ≅ Σ₁ × … × Σₖ` of a complete fan.
pub fn decompose(f: &Fan) -> Result<Decomposition> {
    if !f.is_complete() {
        return Err(Error::NotComplete);
    }
    let n = f.rank();
    let mut leaves = Vec::new();
    if n > 0 {
        split_recursive(f, (0..f.rays().len()).collect(), f.max_cones().to_vec(), &mut leaves);
    }
    leaves.sort_by_key(|l| l.rays[0]);
    let mut factors = Vec::with_capacity(leaves.len());
    for leaf in leaves {
        let vecs: Vec<LatticeVector> = leaf.rays.iter().map(|&i| f.ray(i).clone()).collect();
        let basis = saturation_basis(n, &vecs);
        let coords: Vec<LatticeVector> = vecs
            .iter()
            .map(|v| integer_coordinates(&basis, v).expect("ray in saturated span"))
            .collect();
        let local = |i: usize| leaf.rays.binary_search(&i).expect("ray of leaf");
        let cones: Vec<Vec<usize>> = restricted_max_cones(f.max_cones(), &leaf.rays)
            .into_iter()
            .map(|c| c.into_iter().map(local).collect())
            .collect();
        let fan = Fan::new(basis.len(), coords.clone(), cones)?;
        let rays = fan
            .rays()
            .iter()
            .map(|r| leaf.rays[coords.iter().position(|c| c == r).expect("factor ray")])
            .collect();
        factors.push(Factor {
            fan,
            basis,
            rays,
            certificate: leaf.certificate,
        });
    }
    Ok(Decomposition { rank: n, factors })
}
