//! Periodic-approximation experiment: sample a vortex along the periodic
//! orbits of rational base angles, build the invariant set for each induced
//! finite-base vortex, and measure how the fiber-0 sets move in a bounded
//! window as the rational angle sweeps a convergent list.
//!
//! The Hausdorff distances reported here are convergence evidence only; no
//! limit object is certified.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use vortex_core::{Angle, EuclideanIsometry, FiniteBaseVortex, Result, VortexError, VortexSpec};

use crate::construct::{bpm_periodic, BpmCertificate};
use crate::region::{BoundedRegion, SymbolicRegion};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentRow {
    /// The rational approximant, as `(numerator, denominator)` reduced.
    pub num: u64,
    pub den: u64,
    /// Invariant-set fiber over the base point 0.
    pub region0: SymbolicRegion,
    pub witness_fiber: usize,
    pub witness: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentTable {
    pub rows: Vec<ExperimentRow>,
    /// Pairwise Hausdorff distances of the fiber-0 sets clipped to the
    /// window, estimated on the grid.
    pub hausdorff: Vec<Vec<f64>>,
    pub window_halfwidth: f64,
    pub grid: usize,
}

/// Build the finite-base vortex sampling `v` along the period-`q` orbit
/// of 0 under the rotation by `num/den`.
pub fn sample_periodic(v: &VortexSpec, approx: &Angle) -> Result<FiniteBaseVortex> {
    let rational = approx
        .rational()
        .ok_or_else(|| VortexError::input("periodic approximants must be exact rationals"))?;
    use num_traits::ToPrimitive;
    let q = rational
        .denom()
        .to_u64()
        .ok_or_else(|| VortexError::input("approximant denominator too large"))?;
    let linear = v.fiber.to_matrix();
    let mut isometries = Vec::with_capacity(q as usize);
    let mut x = Angle::zero();
    for _ in 0..q {
        let rho: Complex64 = v.rho.eval_angle(&x);
        isometries.push(EuclideanIsometry::new(
            linear.clone(),
            DVector::from_column_slice(&[rho.re, rho.im]),
        )?);
        x = x.add(approx);
    }
    FiniteBaseVortex::new(isometries)
}

/// Run the experiment for a list of rational angles against one obstacle.
pub fn periodic_approx_experiment(
    v: &VortexSpec,
    convergents: &[Angle],
    u: &BoundedRegion,
    grid: usize,
) -> Result<ExperimentTable> {
    let mut rows = Vec::new();
    let mut certs: Vec<BpmCertificate> = Vec::new();
    for approx in convergents {
        let fbv = sample_periodic(v, approx)?;
        let cert = bpm_periodic(&fbv, std::slice::from_ref(u))?;
        let rational = approx.rational().unwrap();
        use num_traits::ToPrimitive;
        rows.push(ExperimentRow {
            num: rational.numer().to_u64().unwrap_or(0),
            den: rational.denom().to_u64().unwrap_or(0),
            region0: cert.regions[0].clone(),
            witness_fiber: cert.witness.fiber,
            witness: cert.witness.point.clone(),
        });
        certs.push(cert);
    }
    let window_halfwidth = 2.0 * u.bounding_radius() + 4.0;
    let grid = grid.max(2);
    let masks: Vec<Vec<(f64, f64)>> = certs
        .iter()
        .map(|c| rasterize(&c.regions[0], window_halfwidth, grid))
        .collect();
    let n = masks.len();
    let mut hausdorff = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = hausdorff_distance(&masks[i], &masks[j]);
            hausdorff[i][j] = d;
            hausdorff[j][i] = d;
        }
    }
    Ok(ExperimentTable {
        rows,
        hausdorff,
        window_halfwidth,
        grid,
    })
}

fn rasterize(region: &SymbolicRegion, half: f64, grid: usize) -> Vec<(f64, f64)> {
    let mut pts = Vec::new();
    for i in 0..grid {
        for j in 0..grid {
            let x = -half + 2.0 * half * i as f64 / (grid - 1) as f64;
            let y = -half + 2.0 * half * j as f64 / (grid - 1) as f64;
            if region.contains(&DVector::from_column_slice(&[x, y])) {
                pts.push((x, y));
            }
        }
    }
    pts
}

fn hausdorff_distance(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    if a.is_empty() || b.is_empty() {
        return f64::INFINITY;
    }
    let one_sided = |from: &[(f64, f64)], to: &[(f64, f64)]| {
        from.iter()
            .map(|&(x, y)| {
                to.iter()
                    .map(|&(u, v)| ((x - u).powi(2) + (y - v).powi(2)).sqrt())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    one_sided(a, b).max(one_sided(b, a))
}

/// Continued-fraction convergents `p/q` of a float angle, up to a
/// denominator cap, as exact rational angles.
pub fn convergents_of(alpha: f64, q_max: u64) -> Vec<Angle> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (1i64, 0i64); // numerators
    let (mut k0, mut k1) = (0i64, 1i64); // denominators
    let mut x = alpha.rem_euclid(1.0);
    for _ in 0..40 {
        let a = x.floor();
        let ai = a as i64;
        let h = ai * h0 + h1;
        let k = ai * k0 + k1;
        if k <= 0 || k as u64 > q_max {
            break;
        }
        h1 = h0;
        h0 = h;
        k1 = k0;
        k0 = k;
        if k0 > 0 {
            if let Ok(angle) = Angle::from_ratio(h0, k0) {
                out.push(angle);
            }
        }
        let frac = x - a;
        if frac.abs() < 1e-15 {
            break;
        }
        x = 1.0 / frac;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use vortex_core::{O2Map, TrigPoly};

    fn family(alpha: Angle, beta: Angle, rho: TrigPoly) -> VortexSpec {
        VortexSpec::new(alpha, O2Map::rotation(beta), rho)
    }

    #[test]
    fn constant_rho_gives_identical_regions() {
        // base-independent fiber map: every approximant yields the same set
        let v = family(
            Angle::from_f64(0.618),
            Angle::from_f64(0.2137),
            TrigPoly::constant(Complex64::new(1.0, 0.0)),
        );
        let u = BoundedRegion::disk(&[0.0, 0.0], 1.0).unwrap();
        let convergents = vec![
            Angle::from_ratio(1, 2).unwrap(),
            Angle::from_ratio(2, 3).unwrap(),
            Angle::from_ratio(3, 5).unwrap(),
        ];
        let table = periodic_approx_experiment(&v, &convergents, &u, 48).unwrap();
        assert_eq!(table.rows.len(), 3);
        for i in 0..3 {
            for j in 0..3 {
                assert!(
                    table.hausdorff[i][j] < 1e-9,
                    "K_{i} and K_{j} differ: {}",
                    table.hausdorff[i][j]
                );
            }
        }
    }

    #[test]
    fn golden_convergents_table() {
        let v = family(
            Angle::from_f64(0.618_033_988_749_894_8),
            Angle::from_f64(0.414_213_562_373_095_1),
            TrigPoly::single(1, Complex64::new(1.0, 0.0)),
        );
        let u = BoundedRegion::disk(&[0.0, 0.0], 1.0).unwrap();
        let convergents = convergents_of(0.618_033_988_749_894_8, 50);
        assert!(convergents.len() >= 4);
        let table = periodic_approx_experiment(&v, &convergents, &u, 32).unwrap();
        assert_eq!(table.rows.len(), convergents.len());
        // distances are finite and symmetric
        for i in 0..table.rows.len() {
            for j in 0..table.rows.len() {
                assert!(table.hausdorff[i][j].is_finite());
                assert_eq!(table.hausdorff[i][j], table.hausdorff[j][i]);
            }
        }
    }

    #[test]
    fn empty_list_is_empty_table() {
        let v = family(
            Angle::from_f64(0.5),
            Angle::zero(),
            TrigPoly::constant(Complex64::new(1.0, 0.0)),
        );
        let u = BoundedRegion::disk(&[0.0, 0.0], 1.0).unwrap();
        let table = periodic_approx_experiment(&v, &[], &u, 16).unwrap();
        assert!(table.rows.is_empty());
        assert!(table.hausdorff.is_empty());
    }

    #[test]
    fn golden_ratio_convergents() {
        let c = convergents_of(0.618_033_988_749_894_8, 100);
        // ... 1/2, 2/3, 3/5, 5/8, 8/13 appear in order
        let expect = [(1i64, 2i64), (2, 3), (3, 5), (5, 8), (8, 13)];
        let start = c
            .iter()
            .position(|a| *a == Angle::from_ratio(1, 2).unwrap())
            .expect("1/2 missing");
        for (i, (p, q)) in expect.iter().enumerate() {
            assert_eq!(c[start + i], Angle::from_ratio(*p, *q).unwrap());
        }
    }
}
