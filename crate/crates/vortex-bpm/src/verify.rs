//! Verification of invariant-set certificates: obstacle avoidance on
//! samples, structural connectivity with infinity, exact and sampled
//! complete invariance, and the boundary witness.

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use vortex_core::{EuclideanIsometry, FiniteBaseVortex, Result, VortexError};

use crate::construct::BpmCertificate;
use crate::region::{regions_close, BoundedRegion, SymbolicRegion};

/// What the certificate is checked against.
pub enum VerifyTarget<'a> {
    Isometry(&'a EuclideanIsometry),
    Vortex(&'a FiniteBaseVortex),
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct BpmChecks {
    pub avoidance: bool,
    pub avoidance_samples: usize,
    pub connectivity: bool,
    pub invariance: bool,
    pub invariance_samples: usize,
    /// Parameter-level identity `I(K_j) = K_{j+1}` after simplification.
    pub exact_invariance: bool,
    pub witness_on_boundary: bool,
}

pub const WITNESS_TOL: f64 = 1e-9;
const PARAM_TOL: f64 = 1e-9;

fn fiber_region<'a>(tube: &'a [BoundedRegion], j: usize) -> &'a BoundedRegion {
    if tube.len() == 1 {
        &tube[0]
    } else {
        &tube[j]
    }
}

/// Sample points deep inside a symbolic region, spread over shells around
/// the obstacle scale.
fn sample_region<R: Rng>(
    region: &SymbolicRegion,
    scale: f64,
    count: usize,
    rng: &mut R,
) -> Vec<DVector<f64>> {
    let dim = region.dim();
    let margin = 1e-6 * scale.max(1.0);
    let mut out = Vec::new();
    let mut attempts = 0usize;
    while out.len() < count && attempts < count * 200 {
        attempts += 1;
        let mut dir = DVector::from_iterator(dim, (0..dim).map(|_| rng.gen_range(-1.0..1.0f64)));
        let n = dir.norm();
        if n < 1e-9 {
            continue;
        }
        dir /= n;
        let radius = scale * (0.2 + rng.gen_range(0.0..1.0f64).powi(2) * 30.0);
        let v = dir * radius;
        if region.depth(&v) >= margin {
            out.push(v);
        }
    }
    out
}

/// Run all four defining checks. Any failure is a named property violation.
pub fn verify_bpm(
    cert: &BpmCertificate,
    target: &VerifyTarget<'_>,
    tube: &[BoundedRegion],
    samples: usize,
) -> Result<BpmChecks> {
    let fibers = match target {
        VerifyTarget::Isometry(_) => 1,
        VerifyTarget::Vortex(v) => v.p(),
    };
    if cert.regions.len() != fibers {
        return Err(VortexError::input(format!(
            "certificate carries {} regions for {} fibers",
            cert.regions.len(),
            fibers
        )));
    }
    if tube.is_empty() || (tube.len() != 1 && tube.len() != fibers) {
        return Err(VortexError::input(
            "tube must provide one obstacle region, or one per fiber",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let scale = (0..fibers)
        .map(|j| fiber_region(tube, j).bounding_radius())
        .fold(1.0f64, f64::max);

    // 1. avoidance: sampled points of U never land in K
    for j in 0..fibers {
        let u = fiber_region(tube, j);
        for pt in u.sample(&mut rng, samples) {
            if cert.regions[j].contains(&pt) {
                return Err(VortexError::violation(
                    "avoidance",
                    format!("obstacle sample on fiber {j} lies in the invariant set"),
                ));
            }
        }
    }

    // 2. connectivity with infinity, structural
    if !cert.regions.iter().all(|r| r.connected_at_infinity()) {
        return Err(VortexError::violation(
            "connectivity",
            "a fiber region is not connected together with infinity",
        ));
    }

    // 3. invariance, exact parameters then samples
    let iso_at = |j: usize| -> EuclideanIsometry {
        match target {
            VerifyTarget::Isometry(i) => (*i).clone(),
            VerifyTarget::Vortex(v) => v.isometries[j].clone(),
        }
    };
    let mut exact = true;
    for j in 0..fibers {
        let iso = iso_at(j);
        let next = (j + 1) % fibers;
        let forward = SymbolicRegion::Image {
            iso: iso.clone(),
            inner: Box::new(cert.regions[j].clone()),
        }
        .simplify();
        let backward = SymbolicRegion::Image {
            iso: iso.inverse(),
            inner: Box::new(cert.regions[next].clone()),
        }
        .simplify();
        if !regions_close(&forward, &cert.regions[next].simplify(), PARAM_TOL)
            || !regions_close(&backward, &cert.regions[j].simplify(), PARAM_TOL)
        {
            exact = false;
        }
    }
    let mut sampled_count = 0usize;
    for j in 0..fibers {
        let iso = iso_at(j);
        let next = (j + 1) % fibers;
        for v in sample_region(&cert.regions[j], scale, samples.min(256), &mut rng) {
            sampled_count += 1;
            if cert.regions[next].depth(&iso.apply(&v)) < -1e-9 {
                return Err(VortexError::violation(
                    "invariance",
                    format!("forward image of a fiber-{j} point left the set"),
                ));
            }
        }
        for v in sample_region(&cert.regions[next], scale, samples.min(256), &mut rng) {
            sampled_count += 1;
            if cert.regions[j].depth(&iso.apply_inverse(&v)) < -1e-9 {
                return Err(VortexError::violation(
                    "invariance",
                    format!("backward image of a fiber-{next} point left the set"),
                ));
            }
        }
    }
    if !exact {
        return Err(VortexError::violation(
            "invariance",
            "parameter identity I(K_j) = K_{j+1} failed after simplification",
        ));
    }

    // 4. witness on the obstacle boundary and inside the closed set
    let w = DVector::from_column_slice(&cert.witness.point);
    let j = cert.witness.fiber;
    if j >= fibers {
        return Err(VortexError::violation(
            "witness",
            "witness fiber index out of range",
        ));
    }
    let gap = fiber_region(tube, j).interior_depth(&w).abs();
    if gap > WITNESS_TOL {
        return Err(VortexError::violation(
            "witness",
            format!("witness is {gap:.3e} away from the obstacle boundary"),
        ));
    }
    if cert.regions[j].depth(&w) < -WITNESS_TOL {
        return Err(VortexError::violation(
            "witness",
            "witness does not lie in the closed invariant set",
        ));
    }

    Ok(BpmChecks {
        avoidance: true,
        avoidance_samples: samples * fibers,
        connectivity: true,
        invariance: true,
        invariance_samples: sampled_count,
        exact_invariance: true,
        witness_on_boundary: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{bpm_periodic, bpm_planar};

    fn disk(c: [f64; 2], r: f64) -> BoundedRegion {
        BoundedRegion::disk(&c, r).unwrap()
    }

    #[test]
    fn translation_certificate_verifies() {
        let iso = EuclideanIsometry::translation_by(DVector::from_column_slice(&[1.0, 0.0]));
        let u = disk([0.0, 0.0], 1.0);
        let cert = bpm_planar(&iso, &u).unwrap();
        let checks = verify_bpm(&cert, &VerifyTarget::Isometry(&iso), &[u], 1000).unwrap();
        assert!(checks.exact_invariance && checks.avoidance && checks.witness_on_boundary);
    }

    #[test]
    fn shrunken_ball_fails_avoidance() {
        let iso = EuclideanIsometry::planar_rotation(1.0 / 6.0, [0.0, 0.0]);
        let u = disk([3.0, 0.0], 2.0);
        let mut cert = bpm_planar(&iso, &u).unwrap();
        if let SymbolicRegion::BallComplement { radius, .. } = &mut cert.regions[0] {
            *radius -= 1.0; // sabotage: the set now eats into the obstacle
        }
        match verify_bpm(&cert, &VerifyTarget::Isometry(&iso), &[u], 1000) {
            Err(VortexError::PropertyViolation { property, .. }) => {
                assert_eq!(property, "avoidance");
            }
            other => panic!("expected avoidance violation, got {other:?}"),
        }
    }

    #[test]
    fn perturbed_witness_fails() {
        let iso = EuclideanIsometry::translation_by(DVector::from_column_slice(&[1.0, 0.0]));
        let u = disk([0.0, 0.0], 1.0);
        let mut cert = bpm_planar(&iso, &u).unwrap();
        cert.witness.point[1] += 1e-3;
        match verify_bpm(&cert, &VerifyTarget::Isometry(&iso), &[u], 200) {
            Err(VortexError::PropertyViolation { property, .. }) => {
                assert_eq!(property, "witness");
            }
            other => panic!("expected witness violation, got {other:?}"),
        }
    }

    #[test]
    fn wrong_center_fails_invariance() {
        let iso = EuclideanIsometry::planar_rotation(0.25, [0.0, 0.0]);
        let u = disk([2.0, 0.0], 0.5);
        let mut cert = bpm_planar(&iso, &u).unwrap();
        if let SymbolicRegion::BallComplement { center, radius } = &mut cert.regions[0] {
            center[0] += 0.75;
            *radius += 0.75; // keep avoidance plausible, break equivariance
        }
        match verify_bpm(&cert, &VerifyTarget::Isometry(&iso), &[u], 400) {
            Err(VortexError::PropertyViolation { property, .. }) => {
                assert_eq!(property, "invariance");
            }
            other => panic!("expected invariance violation, got {other:?}"),
        }
    }

    #[test]
    fn periodic_certificates_verify() {
        for p in [2usize, 3, 5] {
            let isometries: Vec<EuclideanIsometry> = (0..p)
                .map(|j| match j % 3 {
                    0 => EuclideanIsometry::translation_by(DVector::from_column_slice(&[
                        1.0, 0.25,
                    ])),
                    1 => EuclideanIsometry::planar_rotation(0.5, [0.0, 0.0]),
                    _ => EuclideanIsometry::planar_rotation(0.2, [1.0, -0.5]),
                })
                .collect();
            let v = FiniteBaseVortex::new(isometries).unwrap();
            let u = disk([0.0, 0.0], 1.0);
            let cert = bpm_periodic(&v, &[u.clone()]).unwrap();
            let checks = verify_bpm(&cert, &VerifyTarget::Vortex(&v), &[u], 500)
                .unwrap_or_else(|e| panic!("p = {p}: {e}"));
            assert!(checks.exact_invariance, "p = {p}");
        }
    }
}
