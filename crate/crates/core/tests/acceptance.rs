//! Acceptance criteria, one line per criterion. Exits non-zero on any failure.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num::BigInt;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::rngs::StdRng;
use rand::SeedableRng;
use toraut_core::lattice::{solve_in_basis, span_rank};
use toraut_core::roots::{product_roots, root_coordinate_bound, roots_oracle};
use toraut_core::structure::{decompose, fan_isomorphism, wreath_order_check};
use toraut_core::symbolic::{
    action_additivity_check, dual_lattice_points, faithfulness_check, infinitesimal_check,
    lie_dimension, regularity_check, DerivationClassifier, SAMPLE_HEIGHT,
};
use toraut_core::{catalog, demazure_roots, fan_automorphisms, product_fan, Fan, LatticeVector};

use common::props;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn FnOnce() -> Outcome + 'a>);

fn corpus_fan(name: &str) -> Fan {
    catalog::corpus()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, f)| f)
        .expect("corpus name")
}

fn secs(d: Duration) -> String {
    format!("{:.3}s", d.as_secs_f64())
}

fn criterion_1() -> Outcome {
    let cases = [
        ("P1", 2),
        ("P2", 6),
        ("P3", 12),
        ("P1xP1", 4),
        ("F1", 4),
        ("F2", 5),
        ("P112", 5),
    ];
    let mut slowest = Duration::ZERO;
    for (name, expected) in cases {
        let fan = corpus_fan(name);
        let start = Instant::now();
        let roots = demazure_roots(&fan).map_err(|e| format!("{name}: {e}"))?;
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        let bound = root_coordinate_bound(&fan).map_err(|e| e.to_string())?;
        let radius = u32::try_from(bound + BigInt::from(2)).map_err(|e| e.to_string())?;
        let oracle = roots_oracle(&fan, radius);
        if roots.len() != expected || oracle.len() != expected || roots != oracle {
            return Err(format!(
                "{name}: {} roots, oracle {}, expected {expected}",
                roots.len(),
                oracle.len()
            ));
        }
        if elapsed >= Duration::from_secs(1) {
            return Err(format!("{name}: took {}", secs(elapsed)));
        }
    }
    Ok(format!("7 fans exact, slowest {}", secs(slowest)))
}

fn criterion_2() -> Outcome {
    // dim PGL_{n+1} = (n+1)² − 1 and dim PGL₂ × PGL₂ = 3 + 3. For weights
    // (1,1,2): GL₂ on x, y (4), w ↦ a·w + q(x, y) (1 + 3), minus the
    // weighted scaling (1).
    let cases = [
        ("P1", 2 * 2 - 1),
        ("P2", 3 * 3 - 1),
        ("P3", 4 * 4 - 1),
        ("P1xP1", 3 + 3),
        ("P112", 4 + 1 + 3 - 1),
    ];
    let mut parts = Vec::new();
    for (name, expected) in cases {
        let d = lie_dimension(&corpus_fan(name)).map_err(|e| e.to_string())?;
        if d != expected {
            return Err(format!("{name}: {d} != {expected}"));
        }
        parts.push(format!("{name}={d}"));
    }
    Ok(parts.join(" "))
}

fn criterion_3(random: &[Fan]) -> Outcome {
    let mut pool: Vec<(String, Fan)> = catalog::corpus()
        .into_iter()
        .map(|(n, f)| (n.to_string(), f))
        .collect();
    pool.extend(random.iter().enumerate().map(|(i, f)| (format!("R{i}"), f.clone())));
    let mut pairs = 0;
    for (n1, f1) in &pool {
        for (n2, f2) in &pool {
            let direct = demazure_roots(&product_fan(f1, f2)).map_err(|e| e.to_string())?;
            let embedded = product_roots(f1, f2).map_err(|e| e.to_string())?;
            if direct != embedded {
                return Err(format!("{n1} x {n2}: {} vs {}", direct.len(), embedded.len()));
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} ordered pairs (13 corpus + 10 random fans), exact"))
}

fn criterion_4() -> Outcome {
    let mut roots_checked = 0;
    let mut samples = 0;
    for (name, fan) in catalog::corpus() {
        for root in demazure_roots(&fan).map_err(|e| e.to_string())? {
            let cert = regularity_check(&fan, &root).map_err(|e| format!("{name} {root}: {e}"))?;
            if !cert.passed() {
                return Err(format!("{name} {root}: regularity failed"));
            }
            faithfulness_check(&fan, &root).map_err(|e| format!("{name} {root}: {e}"))?;
            let mut ms: BTreeSet<LatticeVector> = BTreeSet::new();
            for c in fan.max_cones_with_ray(root.ray) {
                let rays: Vec<&LatticeVector> = fan.max_cones()[c].iter().map(|&i| fan.ray(i)).collect();
                ms.extend(dual_lattice_points(fan.rank(), &rays, SAMPLE_HEIGHT));
            }
            for m in &ms {
                let add = action_additivity_check(&root, m).map_err(|e| e.to_string())?;
                let inf = infinitesimal_check(&root, m).map_err(|e| e.to_string())?;
                if !(add && inf) {
                    return Err(format!("{name} {root} m={m}: additivity {add}, infinitesimal {inf}"));
                }
            }
            samples += ms.len();
            roots_checked += 1;
        }
    }
    Ok(format!("{roots_checked} roots, {samples} sampled characters, zero failures"))
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    for name in ["P2", "F1", "P112"] {
        let fan = corpus_fan(name);
        let classifier = DerivationClassifier::new(&fan, SAMPLE_HEIGHT).map_err(|e| e.to_string())?;
        for p in dual_lattice_points(2, &[], 2) {
            if !p.is_primitive() {
                continue;
            }
            for e in dual_lattice_points(2, &[], 2) {
                let r = classifier.classify(&p, &e).map_err(|e| e.to_string())?;
                if !r.agrees() {
                    return Err(format!(
                        "{name} p={p} e={e}: closed form {}, sampler {}",
                        r.closed_form, r.sampled
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (p, e) pairs agree"))
}

/// Brute force over all ray permutations: solve for the linear map on a
/// basis of rays and keep those that are integral, unimodular and carry
/// the cone set onto itself.
fn automorphism_order_oracle(fan: &Fan) -> usize {
    let n = fan.rank();
    let k = fan.rays().len();
    let mut basis = Vec::new();
    for i in 0..k {
        basis.push(fan.ray(i).clone());
        if span_rank(n, &basis) < basis.len() {
            basis.pop();
        } else if basis.len() == n {
            break;
        }
    }
    let basis_idx: Vec<usize> = basis.iter().map(|b| fan.ray_index(b).unwrap()).collect();
    let coords: Vec<Vec<num::BigRational>> =
        fan.rays().iter().map(|r| solve_in_basis(&basis, r).unwrap()).collect();
    let cones: BTreeSet<Vec<usize>> = fan.max_cones().iter().cloned().collect();
    let mut count = 0;
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        let images: Vec<&LatticeVector> = basis_idx.iter().map(|&b| fan.ray(perm[b])).collect();
        let consistent = (0..k).all(|i| {
            (0..n).all(|t| {
                let x: num::BigRational = coords[i]
                    .iter()
                    .zip(&images)
                    .map(|(c, v)| c * num::BigRational::from_integer(v.coords()[t].clone()))
                    .sum();
                x == num::BigRational::from_integer(fan.ray(perm[i]).coords()[t].clone())
            })
        });
        let cones_ok = consistent
            && fan.max_cones().iter().all(|c| {
                let mut m: Vec<usize> = c.iter().map(|&i| perm[i]).collect();
                m.sort_unstable();
                cones.contains(&m)
            });
        if cones_ok {
            // the rays of these fans generate N, so the map is integral; it
            // is unimodular iff the basis images have the same determinant
            let img: Vec<LatticeVector> = images.into_iter().cloned().collect();
            if toraut_core::lattice::maximal_minor_gcd(n, &img)
                == toraut_core::lattice::maximal_minor_gcd(n, &basis)
            {
                count += 1;
            }
        }
        // next permutation
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            return count;
        };
        let j = (i + 1..k).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

fn criterion_6() -> Outcome {
    let cases = [
        ("P1", 2),
        ("P2", 6),
        ("F1", 2),
        ("P1xP1", 8),
        ("P1xP1xP1", 48),
        ("P1xP2", 12),
        ("P2xP2", 72),
    ];
    let mut slowest = Duration::ZERO;
    let mut parts = Vec::new();
    for (name, expected) in cases {
        let fan = corpus_fan(name);
        let start = Instant::now();
        let order = fan_automorphisms(&fan).map_err(|e| e.to_string())?.len();
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        let oracle = automorphism_order_oracle(&fan);
        if order != expected || oracle != expected {
            return Err(format!("{name}: {order}, oracle {oracle}, expected {expected}"));
        }
        if elapsed >= Duration::from_secs(10) {
            return Err(format!("{name}: took {}", secs(elapsed)));
        }
        parts.push(format!("{name}={order}"));
    }
    Ok(format!("{} (slowest {})", parts.join(" "), secs(slowest)))
}

fn criterion_7() -> Outcome {
    let mut parts = Vec::new();
    for (name, fan) in catalog::corpus() {
        let c = wreath_order_check(&fan).map_err(|e| e.to_string())?;
        if !c.holds() {
            return Err(format!(
                "{name}: |Aut| = {}, product formula {}, blockwise {}",
                c.order, c.expected, c.elementwise
            ));
        }
        if decompose(&fan).map_err(|e| e.to_string())?.factors.len() > 1 {
            parts.push(format!("{name}: {} = {}", c.order, c.expected));
        }
    }
    Ok(parts.join(", "))
}

fn criterion_8(rng: &mut StdRng) -> Outcome {
    let p1 = catalog::projective_space(1);
    let p2 = catalog::projective_space(2);
    let mut slowest = Duration::ZERO;
    for (base, expected) in [
        (product_fan(&p1, &p2), vec![(&p1, 1), (&p2, 1)]),
        (product_fan(&p2, &p2), vec![(&p2, 2)]),
    ] {
        for trial in 0..10 {
            let u = common::random_unimodular(rng, base.rank());
            let conj = base.transform(&u).map_err(|e| e.to_string())?;
            let start = Instant::now();
            let d = decompose(&conj).map_err(|e| e.to_string())?;
            let mut counts: Vec<usize> = vec![0; expected.len()];
            for f in &d.factors {
                let class = expected
                    .iter()
                    .position(|(r, _)| fan_isomorphism(&f.fan, r).is_some())
                    .ok_or_else(|| format!("trial {trial}: unrecognized factor"))?;
                counts[class] += 1;
            }
            let elapsed = start.elapsed();
            slowest = slowest.max(elapsed);
            let want: Vec<usize> = expected.iter().map(|(_, m)| *m).collect();
            if counts != want {
                return Err(format!("trial {trial} with {u}: multiplicities {counts:?}"));
            }
            if d.reconstruct().map_err(|e| e.to_string())? != conj {
                return Err(format!("trial {trial}: reconstruction differs"));
            }
            if elapsed >= Duration::from_secs(10) {
                return Err(format!("trial {trial}: took {}", secs(elapsed)));
            }
        }
    }
    Ok(format!("20 conjugates, slowest {}", secs(slowest)))
}

fn runner(config: &Config) -> TestRunner {
    TestRunner::new_with_rng(config.clone(), TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn criterion_9() -> Outcome {
    let cases = 256;
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let run = |name: &str, result: Result<(), String>| result.map_err(|e| format!("{name}: {e}"));
    run(
        "group closure",
        runner(&config)
            .run(&props::fan_vectors(), |v| props::group_closure(&v))
            .map_err(|e| e.to_string()),
    )?;
    run(
        "dual-dual",
        runner(&config)
            .run(&props::cone_generators(), |g| props::dual_dual(&g))
            .map_err(|e| e.to_string()),
    )?;
    run(
        "HNF",
        runner(&config)
            .run(&props::small_matrix(), |m| props::hnf_identity(&m))
            .map_err(|e| e.to_string()),
    )?;
    run(
        "oracle equivalence",
        runner(&config)
            .run(&(props::fan_vectors(), props::unimodular_ops()), |(v, o)| {
                props::oracle_equivalence(&v, &o)
            })
            .map_err(|e| e.to_string()),
    )?;
    Ok(format!(
        "group closure, dual-dual, HNF H=UA, roots vs oracle: {cases} cases each"
    ))
}

fn main() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let random: Vec<Fan> = (0..10).map(|_| common::random_complete_fan_2d(&mut rng)).collect();

    let criteria: Vec<Criterion> = vec![
        ("root counts", Box::new(criterion_1)),
        ("Lie algebra dimensions", Box::new(criterion_2)),
        ("product roots", Box::new(move || criterion_3(&random))),
        ("root subgroup certificates", Box::new(criterion_4)),
        ("derivation classification", Box::new(criterion_5)),
        ("fan automorphism orders", Box::new(criterion_6)),
        ("automorphism order product formula", Box::new(criterion_7)),
        ("decomposition invariance", Box::new(move || criterion_8(&mut rng))),
        ("property suites", Box::new(criterion_9)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = secs(start.elapsed());
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} [{elapsed}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail} [{elapsed}]", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
