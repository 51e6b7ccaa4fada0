//! Report records shared by the human and JSON outputs.

use std::fmt::{self, Write as _};

use serde::Serialize;
use toraut_core::roots::classify_roots;
use toraut_core::structure::{
    fan_automorphisms, product_roots_certificate, wreath_order_check, AutStructureReport,
    Decomposition, FanIsomorphism, IndecomposabilityCertificate,
};
use toraut_core::symbolic::{
    action_additivity_check, dual_lattice_points, faithfulness_check, infinitesimal_check,
    regularity_check, SAMPLE_HEIGHT,
};
use toraut_core::{demazure_roots, DemazureRoot, Fan, LatticeMatrix, LatticeVector, ValidationReport};

use crate::document::{ints, to_document, FanDocument, Int};

fn vector(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.0.to_string()).collect();
    format!("({})", parts.join(","))
}

fn subscript(n: usize) -> String {
    n.to_string()
        .chars()
        .map(|c| char::from_u32('₀' as u32 + c.to_digit(10).unwrap()).unwrap())
        .collect()
}

fn matrix_rows(m: &LatticeMatrix) -> Vec<Vec<Int>> {
    m.row_vectors().iter().map(ints).collect()
}

fn matrix(rows: &[Vec<Int>]) -> String {
    let parts: Vec<String> = rows
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|x| x.0.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", parts.join(","))
}

#[derive(Debug, Serialize)]
pub struct ValidateReport {
    pub valid: bool,
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<FanSummary>,
}

#[derive(Debug, Serialize)]
pub struct FanSummary {
    pub rank: usize,
    pub rays: usize,
    pub max_cones: usize,
    pub f_vector: Vec<usize>,
    pub complete: bool,
    pub smooth: bool,
    pub simplicial: bool,
}

impl ValidateReport {
    pub fn valid(fan: &Fan) -> ValidateReport {
        ValidateReport {
            valid: true,
            violations: Vec::new(),
            summary: Some(FanSummary {
                rank: fan.rank(),
                rays: fan.rays().len(),
                max_cones: fan.max_cones().len(),
                f_vector: fan.f_vector(),
                complete: fan.is_complete(),
                smooth: fan.is_smooth(),
                simplicial: fan.is_simplicial(),
            }),
        }
    }

    pub fn invalid(report: &ValidationReport) -> ValidateReport {
        ValidateReport {
            valid: false,
            violations: report.violations.iter().map(ToString::to_string).collect(),
            summary: None,
        }
    }
}

impl fmt::Display for ValidateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.summary {
            Some(s) if self.valid => {
                writeln!(f, "valid fan")?;
                writeln!(f, "rank: {}", s.rank)?;
                writeln!(f, "rays: {}", s.rays)?;
                writeln!(f, "maximal cones: {}", s.max_cones)?;
                writeln!(f, "f-vector: {:?}", s.f_vector)?;
                writeln!(f, "complete: {}", s.complete)?;
                writeln!(f, "smooth: {}", s.smooth)?;
                writeln!(f, "simplicial: {}", s.simplicial)
            }
            _ => {
                writeln!(f, "invalid fan")?;
                for v in &self.violations {
                    writeln!(f, "  - {v}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RootRecord {
    pub ray: usize,
    pub rho: Vec<Int>,
    pub e: Vec<Int>,
    pub kind: &'static str,
}

#[derive(Debug, Serialize)]
pub struct RootsReport {
    pub count: usize,
    pub roots: Vec<RootRecord>,
    pub semisimple_pairs: Vec<[Vec<Int>; 2]>,
    pub unipotent: Vec<Vec<Int>>,
}

impl RootsReport {
    pub fn new(roots: &[DemazureRoot]) -> RootsReport {
        let classes = classify_roots(roots);
        let semisimple: Vec<&LatticeVector> = classes
            .semisimple_pairs
            .iter()
            .flat_map(|(a, b)| [&a.e, &b.e])
            .collect();
        RootsReport {
            count: roots.len(),
            roots: roots
                .iter()
                .map(|r| RootRecord {
                    ray: r.ray,
                    rho: ints(&r.rho),
                    e: ints(&r.e),
                    kind: if semisimple.contains(&&r.e) {
                        "semisimple"
                    } else {
                        "unipotent"
                    },
                })
                .collect(),
            semisimple_pairs: classes
                .semisimple_pairs
                .iter()
                .map(|(a, b)| [ints(&a.e), ints(&b.e)])
                .collect(),
            unipotent: classes.unipotent.iter().map(|r| ints(&r.e)).collect(),
        }
    }
}

impl fmt::Display for RootsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} roots", self.count)?;
        for r in &self.roots {
            writeln!(
                f,
                "  ray {} ρ={}: e={} {}",
                r.ray,
                vector(&r.rho),
                vector(&r.e),
                r.kind
            )?;
        }
        writeln!(f, "semisimple pairs: {}", self.semisimple_pairs.len())?;
        for [a, b] in &self.semisimple_pairs {
            writeln!(f, "  {} / {}", vector(a), vector(b))?;
        }
        writeln!(f, "unipotent: {}", self.unipotent.len())?;
        for u in &self.unipotent {
            writeln!(f, "  {}", vector(u))?;
        }
        Ok(())
    }
}

#[derive(Debug, Serialize)]
pub struct AutomorphismRecord {
    pub matrix: Vec<Vec<Int>>,
    pub ray_permutation: Vec<usize>,
}

impl AutomorphismRecord {
    fn new(iso: &FanIsomorphism) -> AutomorphismRecord {
        AutomorphismRecord {
            matrix: matrix_rows(&iso.matrix),
            ray_permutation: iso.ray_permutation.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AutosReport {
    pub order: usize,
    pub automorphisms: Vec<AutomorphismRecord>,
}

impl AutosReport {
    pub fn new(fan: &Fan) -> toraut_core::Result<AutosReport> {
        let autos = fan_automorphisms(fan)?;
        Ok(AutosReport {
            order: autos.len(),
            automorphisms: autos.iter().map(AutomorphismRecord::new).collect(),
        })
    }
}

impl fmt::Display for AutosReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order: {}", self.order)?;
        for a in &self.automorphisms {
            writeln!(f, "  {} rays {:?}", matrix(&a.matrix), a.ray_permutation)?;
        }
        Ok(())
    }
}

#[derive(Debug, Serialize)]
pub struct FactorRecord {
    pub rank: usize,
    pub basis: Vec<Vec<Int>>,
    pub rays: Vec<usize>,
    pub certified_indecomposable: bool,
    pub certificate: String,
    pub fan: FanDocument,
}

#[derive(Debug, Serialize)]
pub struct DecomposeReport {
    pub factors: Vec<FactorRecord>,
}

fn certificate_text(c: &IndecomposabilityCertificate) -> String {
    match c {
        IndecomposabilityCertificate::SingleBlock => "single circuit block".to_string(),
        IndecomposabilityCertificate::Exhausted(list) => {
            let parts: Vec<String> = list
                .iter()
                .map(|(half, why)| format!("{half:?}: {why}"))
                .collect();
            format!("all bipartitions fail ({})", parts.join("; "))
        }
    }
}

impl DecomposeReport {
    pub fn new(d: &Decomposition) -> DecomposeReport {
        DecomposeReport {
            factors: d
                .factors
                .iter()
                .map(|f| FactorRecord {
                    rank: f.fan.rank(),
                    basis: f.basis.iter().map(ints).collect(),
                    rays: f.rays.clone(),
                    certified_indecomposable: f.certified_indecomposable(),
                    certificate: certificate_text(&f.certificate),
                    fan: to_document(&f.fan, None),
                })
                .collect(),
        }
    }
}

impl fmt::Display for DecomposeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} factors", self.factors.len())?;
        for (i, x) in self.factors.iter().enumerate() {
            let basis: Vec<String> = x.basis.iter().map(|b| vector(b)).collect();
            let rays: Vec<String> = x.fan.rays.iter().map(|r| vector(r)).collect();
            writeln!(f, "factor {}: rank {}", i + 1, x.rank)?;
            writeln!(f, "  basis: {}", basis.join(" "))?;
            writeln!(f, "  rays: {} (input rays {:?})", rays.join(" "), x.rays)?;
            writeln!(f, "  max cones: {:?}", x.fan.max_cones)?;
            writeln!(f, "  indecomposable: {} ({})", x.certified_indecomposable, x.certificate)?;
        }
        Ok(())
    }
}

#[derive(Debug, Serialize)]
pub struct ClassRecord {
    pub factor: String,
    pub multiplicity: usize,
    pub members: Vec<usize>,
    pub rank: usize,
    pub roots: usize,
    pub dim_aut0: usize,
    pub fan_automorphism_order: usize,
    pub fan: FanDocument,
}

#[derive(Debug, Serialize)]
pub struct StructureReport {
    pub structure: String,
    pub torus_rank: usize,
    pub root_count: usize,
    pub roots: Vec<Vec<Int>>,
    pub dim_aut0: usize,
    pub fan_automorphism_order: usize,
    pub fan_automorphism_generators: Vec<AutomorphismRecord>,
    pub factors: Vec<ClassRecord>,
}

impl StructureReport {
    pub fn new(r: &AutStructureReport) -> StructureReport {
        StructureReport {
            structure: r.structure.clone(),
            torus_rank: r.torus_rank,
            root_count: r.root_count(),
            roots: r.roots.iter().map(|x| ints(&x.e)).collect(),
            dim_aut0: r.dim_aut0,
            fan_automorphism_order: r.fan_automorphism_order,
            fan_automorphism_generators: r
                .fan_automorphism_generators
                .iter()
                .map(AutomorphismRecord::new)
                .collect(),
            factors: r
                .classes
                .iter()
                .enumerate()
                .map(|(i, c)| ClassRecord {
                    factor: format!("X{}", subscript(i + 1)),
                    multiplicity: c.multiplicity(),
                    members: c.members.clone(),
                    rank: c.fan.rank(),
                    roots: c.root_count,
                    dim_aut0: c.dim_aut0,
                    fan_automorphism_order: c.fan_automorphism_order,
                    fan: to_document(&c.fan, None),
                })
                .collect(),
        }
    }
}

impl fmt::Display for StructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "structure: {}", self.structure)?;
        writeln!(f, "torus rank: {}", self.torus_rank)?;
        let roots: Vec<String> = self.roots.iter().map(|r| vector(r)).collect();
        writeln!(f, "roots: {} {}", self.root_count, roots.join(" "))?;
        writeln!(f, "dim Aut⁰: {}", self.dim_aut0)?;
        writeln!(f, "fan automorphism order: {}", self.fan_automorphism_order)?;
        let gens: Vec<String> = self
            .fan_automorphism_generators
            .iter()
            .map(|g| matrix(&g.matrix))
            .collect();
        writeln!(f, "fan automorphism generators: {}", gens.join(" "))?;
        for c in &self.factors {
            let rays: Vec<String> = c.fan.rays.iter().map(|r| vector(r)).collect();
            writeln!(
                f,
                "{}: multiplicity {}, rank {}, rays {}, roots {}, dim Aut⁰ {}, fan automorphisms {}",
                c.factor,
                c.multiplicity,
                c.rank,
                rays.join(" "),
                c.roots,
                c.dim_aut0,
                c.fan_automorphism_order
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Serialize)]
pub struct CertificateRecord {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub passed: bool,
    pub certificates: Vec<CertificateRecord>,
}

impl CheckReport {
    /// Run every certificate on every root, sampling characters of height at
    /// most [`SAMPLE_HEIGHT`] in the dual cones of maximal cones through `ρ_e`.
    pub fn new(fan: &Fan) -> toraut_core::Result<CheckReport> {
        let roots = demazure_roots(fan)?;
        let mut regularity = (0, Vec::new());
        let mut additivity = (0, Vec::new());
        let mut faithfulness = (0, Vec::new());
        let mut infinitesimal = (0, Vec::new());
        for root in &roots {
            match regularity_check(fan, root) {
                Ok(c) if c.passed() => regularity.0 += 1,
                _ => regularity.1.push(root.to_string()),
            }
            match faithfulness_check(fan, root) {
                Ok(_) => faithfulness.0 += 1,
                Err(_) => faithfulness.1.push(root.to_string()),
            }
            let mut samples: Vec<LatticeVector> = Vec::new();
            for c in fan.max_cones_with_ray(root.ray) {
                let rays: Vec<&LatticeVector> = fan.max_cones()[c].iter().map(|&i| fan.ray(i)).collect();
                samples.extend(dual_lattice_points(fan.rank(), &rays, SAMPLE_HEIGHT));
            }
            samples.sort();
            samples.dedup();
            for m in &samples {
                match action_additivity_check(root, m) {
                    Ok(true) => additivity.0 += 1,
                    _ => additivity.1.push(format!("{root} m={m}")),
                }
                match infinitesimal_check(root, m) {
                    Ok(true) => infinitesimal.0 += 1,
                    _ => infinitesimal.1.push(format!("{root} m={m}")),
                }
            }
        }
        let summarize = |name: &'static str, (ok, failed): (usize, Vec<String>), unit: &str| {
            let mut detail = format!("{ok} {unit} passed");
            if !failed.is_empty() {
                let _ = write!(detail, ", {} failed: {}", failed.len(), failed.join("; "));
            }
            CertificateRecord {
                name,
                passed: failed.is_empty(),
                detail,
            }
        };
        let mut certificates = vec![
            summarize("regularity", regularity, "roots"),
            summarize("additivity", additivity, "samples"),
            summarize("faithfulness", faithfulness, "roots"),
            summarize("infinitesimal", infinitesimal, "samples"),
        ];
        let product = product_roots_certificate(fan)?;
        certificates.push(CertificateRecord {
            name: "product-roots",
            passed: product,
            detail: format!("{} roots from factors", roots.len()),
        });
        let t = wreath_order_check(fan)?;
        certificates.push(CertificateRecord {
            name: "wreath-order",
            passed: t.holds(),
            detail: format!(
                "|Aut(Σ)| = {}, ∏|Aut(Σᵢ)|^rᵢ·rᵢ! = {}, blockwise {}",
                t.order, t.expected, t.elementwise
            ),
        });
        Ok(CheckReport {
            passed: certificates.iter().all(|c| c.passed),
            certificates,
        })
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.certificates {
            let status = if c.passed { "pass" } else { "FAIL" };
            writeln!(f, "{status} {}: {}", c.name, c.detail)?;
        }
        writeln!(f, "{}", if self.passed { "all certificates passed" } else { "certificate failure" })
    }
}
