use std::fmt;

use super::cone::Cone;
use super::FanData;
use crate::error::Error;
use crate::lattice::LatticeVector;

/// One violated fan axiom, with the offending indices as witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    RayRank { ray: usize, expected: usize, found: usize },
    ZeroRay { ray: usize },
    ImprimitiveRay { ray: usize, vector: LatticeVector },
    DuplicateRay { first: usize, second: usize },
    UnusedRay { ray: usize },
    RayIndex { cone: usize, index: usize },
    NotStrictlyConvex { cone: usize },
    /// A listed ray is not extremal, so `cone{ray}` is not a face and the
    /// fan is not closed under faces.
    NonExtremalRay { cone: usize, ray: usize },
    IntersectionNotFace {
        first: usize,
        second: usize,
        intersection: Vec<LatticeVector>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RayRank { ray, expected, found } => {
                write!(f, "ray {ray}: expected {expected} coordinates, found {found}")
            }
            Violation::ZeroRay { ray } => write!(f, "ray {ray} is zero"),
            Violation::ImprimitiveRay { ray, vector } => {
                write!(f, "ray {ray} = {vector} is not primitive")
            }
            Violation::DuplicateRay { first, second } => {
                write!(f, "rays {first} and {second} coincide")
            }
            Violation::UnusedRay { ray } => write!(f, "ray {ray} belongs to no cone"),
            Violation::RayIndex { cone, index } => {
                write!(f, "cone {cone}: ray index {index} out of range")
            }
            Violation::NotStrictlyConvex { cone } => {
                write!(f, "cone {cone} is not strictly convex")
            }
            Violation::NonExtremalRay { cone, ray } => write!(
                f,
                "face closure: ray {ray} is not an extremal ray of cone {cone}"
            ),
            Violation::IntersectionNotFace {
                first,
                second,
                intersection,
            } => {
                write!(f, "cones {first} and {second} meet in cone{{")?;
                for (i, r) in intersection.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{r}")?;
                }
                write!(f, "}}, which is not a face of both")
            }
        }
    }
}

/// Result of [`validate_fan`]; an empty report means a valid fan.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid fan");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "  - {v}")?;
        }
        Ok(())
    }
}

/// Check the fan axioms on raw data.
///
/// Cone indices in the report refer to positions in `data.max_cones`, ray
/// indices to positions in `data.rays`.
pub fn validate_fan(data: &FanData) -> ValidationReport {
    let mut violations = Vec::new();
    let rank = data.rank;

    let mut rays_ok = true;
    for (i, r) in data.rays.iter().enumerate() {
        if r.rank() != rank {
            violations.push(Violation::RayRank {
                ray: i,
                expected: rank,
                found: r.rank(),
            });
            rays_ok = false;
        } else if r.is_zero() {
            violations.push(Violation::ZeroRay { ray: i });
            rays_ok = false;
        } else if !r.is_primitive() {
            violations.push(Violation::ImprimitiveRay {
                ray: i,
                vector: r.clone(),
            });
        }
    }
    for i in 0..data.rays.len() {
        for j in i + 1..data.rays.len() {
            if data.rays[i] == data.rays[j] {
                violations.push(Violation::DuplicateRay { first: i, second: j });
            }
        }
    }
    let mut used = vec![false; data.rays.len()];
    let mut indices_ok = true;
    for (c, cone) in data.max_cones.iter().enumerate() {
        for &i in cone {
            if i >= data.rays.len() {
                violations.push(Violation::RayIndex { cone: c, index: i });
                indices_ok = false;
            } else {
                used[i] = true;
            }
        }
    }
    for (i, u) in used.iter().enumerate() {
        if !u {
            violations.push(Violation::UnusedRay { ray: i });
        }
    }
    if !(rays_ok && indices_ok) {
        return ValidationReport { violations };
    }

    let mut cones: Vec<Option<Cone>> = Vec::with_capacity(data.max_cones.len());
    for (c, idx) in data.max_cones.iter().enumerate() {
        let gens: Vec<LatticeVector> = idx.iter().map(|&i| data.rays[i].clone()).collect();
        match Cone::from_rays(rank, &gens) {
            Ok(cone) => {
                for &i in idx {
                    let prim = data.rays[i].primitive().expect("nonzero ray");
                    if !cone.rays().contains(&prim) {
                        violations.push(Violation::NonExtremalRay { cone: c, ray: i });
                    }
                }
                cones.push(Some(cone));
            }
            Err(Error::NotStrictlyConvex) => {
                violations.push(Violation::NotStrictlyConvex { cone: c });
                cones.push(None);
            }
            Err(e) => unreachable!("ray ranks were checked: {e}"),
        }
    }

    for i in 0..cones.len() {
        for j in i + 1..cones.len() {
            let (Some(a), Some(b)) = (&cones[i], &cones[j]) else {
                continue;
            };
            let meet = a.intersection(b).expect("equal ranks");
            if !(a.has_face(&meet) && b.has_face(&meet)) {
                violations.push(Violation::IntersectionNotFace {
                    first: i,
                    second: j,
                    intersection: meet.rays().to_vec(),
                });
            }
        }
    }

    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(c)
    }

    #[test]
    fn p2_is_valid() {
        let data = FanData {
            rank: 2,
            rays: vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])],
            max_cones: vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        };
        assert!(validate_fan(&data).is_valid());
    }

    #[test]
    fn overlapping_cones_are_reported() {
        let data = FanData {
            rank: 2,
            rays: vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1]), v(&[-1, 2])],
            max_cones: vec![vec![0, 1], vec![2, 3]],
        };
        let report = validate_fan(&data);
        assert_eq!(
            report.violations,
            vec![Violation::IntersectionNotFace {
                first: 0,
                second: 1,
                intersection: vec![v(&[0, 1]), v(&[1, 1])],
            }]
        );
    }

    #[test]
    fn zero_cone_alone_is_valid() {
        let data = FanData {
            rank: 2,
            rays: vec![],
            max_cones: vec![vec![]],
        };
        assert!(validate_fan(&data).is_valid());
    }

    #[test]
    fn structural_violations() {
        let data = FanData {
            rank: 2,
            rays: vec![v(&[2, 0]), v(&[0, 1]), v(&[0, 1]), v(&[1])],
            max_cones: vec![vec![0, 1, 7]],
        };
        let report = validate_fan(&data);
        assert!(report.violations.contains(&Violation::RayRank {
            ray: 3,
            expected: 2,
            found: 1
        }));
        assert!(report.violations.contains(&Violation::ImprimitiveRay {
            ray: 0,
            vector: v(&[2, 0])
        }));
        assert!(report
            .violations
            .contains(&Violation::DuplicateRay { first: 1, second: 2 }));
        assert!(report
            .violations
            .contains(&Violation::RayIndex { cone: 0, index: 7 }));
    }

    #[test]
    fn non_convex_and_non_extremal() {
        let data = FanData {
            rank: 2,
            rays: vec![v(&[1, 0]), v(&[-1, 0]), v(&[1, 1]), v(&[0, 1])],
            max_cones: vec![vec![0, 1], vec![0, 2, 3]],
        };
        let report = validate_fan(&data);
        assert!(report
            .violations
            .contains(&Violation::NotStrictlyConvex { cone: 0 }));
        assert!(report
            .violations
            .contains(&Violation::NonExtremalRay { cone: 1, ray: 2 }));
    }
}
