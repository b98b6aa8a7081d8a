//! The lift of a vortex with constant fiber rotation to a cylindrical
//! cascade over the 2-torus, the proper factor map back down, Birkhoff
//! sums, and the one-dimensional projections of the lifted cocycle.
//!
//! For `F(x, z) = (x + alpha, e^{2 pi i beta} z + rho(x))` the lift is
//! `G((x, y), z) = ((x + alpha, y - beta), z + chi(x, y))` with
//! `chi(x, y) = e^{2 pi i (y - beta)} rho(x)`, and the iterates satisfy
//! `rho_n(x) = e^{2 pi i n beta} S_n(chi)(x, 0)` where `S_n` is the Birkhoff
//! sum along the torus rotation by `(alpha, -beta)`.

use num_complex::Complex64;

use crate::angle::Angle;
use crate::error::{Result, VortexError};
use crate::trig::TrigPoly2;
use crate::vortex::VortexSpec;
use crate::unit_angle;

/// A point of the 2-torus with exact coordinates.
pub type TorusPoint = (Angle, Angle);

/// The cascade `G` on `T^2 x C` attached to a vortex of the rotation family.
#[derive(Clone, Debug)]
pub struct LiftedCascade {
    /// Torus rotation vector `(alpha, -beta)`.
    pub rotation: (Angle, Angle),
    /// The cocycle function `chi(x, y) = e^{2 pi i (y - beta)} rho(x)`.
    pub chi: TrigPoly2,
    /// Fiber rotation angle of the vortex downstairs.
    pub beta: Angle,
}

/// Build the lift. Requires the fiber linear part to be a constant rotation.
pub fn lift_cascade(v: &VortexSpec) -> Result<LiftedCascade> {
    if v.fiber.flip {
        return Err(VortexError::Unsupported(
            "lift requires a constant fiber rotation (orientation-reversing fiber map)".into(),
        ));
    }
    let beta = v.fiber.angle.clone();
    let mut chi = TrigPoly2::new();
    let twist = unit_angle(&beta.neg());
    for (n, c) in v.rho.terms() {
        chi.add_term(n, 1, c * twist);
    }
    Ok(LiftedCascade {
        rotation: (v.alpha.clone(), beta.neg()),
        chi,
        beta,
    })
}

impl LiftedCascade {
    /// One step of `G`.
    pub fn step(&self, p: &TorusPoint, z: Complex64) -> (TorusPoint, Complex64) {
        let (x, y) = p;
        let chi = self.chi.eval(x.to_f64(), y.to_f64());
        (
            (x.add(&self.rotation.0), y.add(&self.rotation.1)),
            z + chi,
        )
    }

    /// Birkhoff sum `S_n(chi)(x, y)` along the torus rotation.
    pub fn birkhoff_chi(&self, n: u64, p: &TorusPoint) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let (mut x, mut y) = p.clone();
        for _ in 0..n {
            acc += self.chi.eval(x.to_f64(), y.to_f64());
            x = x.add(&self.rotation.0);
            y = y.add(&self.rotation.1);
        }
        acc
    }

    /// Residual of the identity `rho_n(x) = e^{2 pi i n beta} S_n(chi)(x, 0)`
    /// for a vortex `v` this cascade was lifted from.
    pub fn lift_identity_residual(&self, v: &VortexSpec, n: u64, x: &Angle) -> f64 {
        let rho_n = v.cocycle(n as i64).rho_n.eval_angle(x);
        let sum = self.birkhoff_chi(n, &(x.clone(), Angle::zero()));
        let twist = unit_angle(&self.beta.mul_int(n as i64));
        (rho_n - twist * sum).norm()
    }
}

/// The proper factor map `Pi((x, y), z) = (x, e^{-2 pi i y} z)` with
/// `F ∘ Pi = Pi ∘ G`.
pub fn factor_project(p: &TorusPoint, z: Complex64) -> (Angle, Complex64) {
    let (x, y) = p;
    (x.clone(), unit_angle(&y.neg()) * z)
}

/// The real-valued cocycle `(x, y) -> <e^{2 pi i theta}, e^{2 pi i (y - beta)} rho(x)>`
/// over the torus rotation by `(alpha, -beta)`, as a bivariate carrier.
///
/// With the real inner product of `R^2 ≅ C`, this is
/// `Re(e^{-2 pi i theta} chi(x, y))`.
pub fn project_cocycle(v: &VortexSpec, theta: &Angle) -> Result<TrigPoly2> {
    let lift = lift_cascade(v)?;
    let rotated = lift.chi.scale(unit_angle(&theta.neg()));
    let half = Complex64::new(0.5, 0.0);
    Ok(rotated.scale(half).add(&rotated.conj().scale(half)))
}

/// Birkhoff sum of a function along the circle rotation by `alpha`:
/// `sum_{j=0}^{n-1} f(x + j alpha)`.
pub fn birkhoff_sum<F: FnMut(&Angle) -> Complex64>(
    mut f: F,
    alpha: &Angle,
    n: u64,
    x: &Angle,
) -> Result<Complex64> {
    if n < 1 {
        return Err(VortexError::input("Birkhoff sum requires n >= 1"));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut pt = x.clone();
    for _ in 0..n {
        acc += f(&pt);
        pt = pt.add(alpha);
    }
    Ok(acc)
}

/// Birkhoff sum along a torus rotation.
pub fn birkhoff_sum_torus<F: FnMut(&Angle, &Angle) -> Complex64>(
    mut f: F,
    rotation: &(Angle, Angle),
    n: u64,
    p: &TorusPoint,
) -> Result<Complex64> {
    if n < 1 {
        return Err(VortexError::input("Birkhoff sum requires n >= 1"));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let (mut x, mut y) = p.clone();
    for _ in 0..n {
        acc += f(&x, &y);
        x = x.add(&rotation.0);
        y = y.add(&rotation.1);
    }
    Ok(acc)
}

/// Closed-form bound `1/|sin(pi alpha)|` for `|sum e^{2 pi i (x + j alpha)}|`.
pub fn geometric_birkhoff_bound(alpha: f64) -> f64 {
    1.0 / (std::f64::consts::PI * alpha).sin().abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isometry::O2Map;
    use crate::trig::TrigPoly;
    use crate::vortex::State;

    fn family_vortex(alpha: Angle, beta: Angle, rho: TrigPoly) -> VortexSpec {
        VortexSpec::new(alpha, O2Map::rotation(beta), rho)
    }

    #[test]
    fn birkhoff_constant_and_cancellation() {
        let alpha = Angle::from_ratio(1, 2).unwrap();
        let c = Complex64::new(0.7, -0.1);
        let sum = birkhoff_sum(|_| c, &alpha, 5, &Angle::zero()).unwrap();
        assert!((sum - c * 5.0).norm() < 1e-14);
        // f(x) = e^{2 pi i x}, alpha = 1/2, n = 2, x = 0: 1 + e^{i pi} = 0
        let f = TrigPoly::single(1, Complex64::new(1.0, 0.0));
        let sum = birkhoff_sum(|x| f.eval_angle(x), &alpha, 2, &Angle::zero()).unwrap();
        assert!(sum.norm() < 1e-15);
        assert!(birkhoff_sum(|_| c, &alpha, 0, &Angle::zero()).is_err());
    }

    #[test]
    fn birkhoff_geometric_bound() {
        let alpha = Angle::from_f64(0.618_033_988_749_894_8);
        let f = TrigPoly::single(1, Complex64::new(1.0, 0.0));
        let bound = geometric_birkhoff_bound(alpha.to_f64());
        for n in [10u64, 100, 1000] {
            let s = birkhoff_sum(|x| f.eval_angle(x), &alpha, n, &Angle::zero()).unwrap();
            assert!(s.norm() <= bound + 1e-9, "n = {n}");
        }
    }

    #[test]
    fn lift_of_zero_rho_is_pure_rotation() {
        let v = family_vortex(
            Angle::from_f64(0.32),
            Angle::from_f64(0.11),
            TrigPoly::new(),
        );
        let lift = lift_cascade(&v).unwrap();
        assert!(lift.chi.is_zero());
    }

    #[test]
    fn lift_identity_for_constant_rho() {
        // rho = 1: chi(x, y) = e^{2 pi i (y - beta)}; rho_1(0) = e^{2 pi i beta} chi(0,0) = 1
        let beta = Angle::from_ratio(1, 3).unwrap();
        let v = family_vortex(
            Angle::from_ratio(1, 7).unwrap(),
            beta.clone(),
            TrigPoly::constant(Complex64::new(1.0, 0.0)),
        );
        let lift = lift_cascade(&v).unwrap();
        let chi00 = lift.chi.eval(0.0, 0.0);
        assert!((chi00 - unit_angle(&beta.neg())).norm() < 1e-14);
        assert!(lift.lift_identity_residual(&v, 1, &Angle::zero()) < 1e-13);
    }

    #[test]
    fn lift_identity_residual_degree_five() {
        let rho = TrigPoly::from_terms([
            (1, Complex64::new(0.4, -0.3)),
            (2, Complex64::new(-0.1, 0.2)),
            (3, Complex64::new(0.05, 0.0)),
            (-4, Complex64::new(0.0, 0.15)),
            (5, Complex64::new(0.2, 0.1)),
        ]);
        let v = family_vortex(
            Angle::from_f64(0.539_344_622_109_1),
            Angle::from_f64(0.270_190_112_345_6),
            rho,
        );
        let lift = lift_cascade(&v).unwrap();
        for x in [Angle::zero(), Angle::from_f64(0.37), Angle::from_f64(0.81)] {
            assert!(lift.lift_identity_residual(&v, 100, &x) < 1e-10);
        }
    }

    #[test]
    fn lift_rejects_reflection() {
        let v = VortexSpec::new(
            Angle::from_f64(0.3),
            O2Map::reflection(Angle::zero()),
            TrigPoly::new(),
        );
        assert!(lift_cascade(&v).is_err());
    }

    #[test]
    fn factor_map_basics() {
        let z = Complex64::new(0.6, -1.2);
        // y = 0 leaves the fiber unchanged
        let (_, w) = factor_project(&(Angle::from_f64(0.2), Angle::zero()), z);
        assert!((w - z).norm() < 1e-15);
        // y = 1/2 negates
        let (_, w) = factor_project(
            &(Angle::from_f64(0.2), Angle::from_ratio(1, 2).unwrap()),
            z,
        );
        assert!((w + z).norm() < 1e-13);
    }

    #[test]
    fn semiconjugacy_one_step() {
        let v = family_vortex(
            Angle::from_f64(0.437_216_98),
            Angle::from_f64(0.186_902_34),
            TrigPoly::from_terms([(1, Complex64::new(0.8, 0.0)), (-2, Complex64::new(0.1, 0.3))]),
        );
        let lift = lift_cascade(&v).unwrap();
        let p = (Angle::from_f64(0.91), Angle::from_f64(0.44));
        let z = Complex64::new(-0.3, 0.25);
        // F(Pi(q)) vs Pi(G(q))
        let (x0, w0) = factor_project(&p, z);
        let fs = v.step(&State::new(x0, w0));
        let (p1, z1) = lift.step(&p, z);
        let (x1, w1) = factor_project(&p1, z1);
        assert!(fs.x.rep_dist(&x1) < 1e-12);
        assert!((fs.z - w1).norm() < 1e-12);
    }

    #[test]
    fn projection_extracts_re_and_im() {
        let v = family_vortex(
            Angle::from_f64(0.3),
            Angle::from_ratio(1, 6).unwrap(),
            TrigPoly::from_terms([(1, Complex64::new(0.7, -0.2)), (0, Complex64::new(0.1, 0.4))]),
        );
        let lift = lift_cascade(&v).unwrap();
        let re = project_cocycle(&v, &Angle::zero()).unwrap();
        let im = project_cocycle(&v, &Angle::from_ratio(1, 4).unwrap()).unwrap();
        for (x, y) in [(0.0, 0.0), (0.3, 0.7), (0.95, 0.21)] {
            let chi = lift.chi.eval(x, y);
            let re_v = re.eval(x, y);
            let im_v = im.eval(x, y);
            assert!(re_v.im.abs() < 1e-13 && im_v.im.abs() < 1e-13);
            assert!((re_v.re - chi.re).abs() < 1e-12);
            assert!((im_v.re - chi.im).abs() < 1e-12);
        }
        // rho = 1, theta = 0, (x, y) = (0, beta): <1, 1> = 1
        let vc = family_vortex(
            Angle::from_f64(0.3),
            Angle::from_ratio(1, 6).unwrap(),
            TrigPoly::constant(Complex64::new(1.0, 0.0)),
        );
        let pr = project_cocycle(&vc, &Angle::zero()).unwrap();
        let at = pr.eval(0.0, 1.0 / 6.0);
        assert!((at.re - 1.0).abs() < 1e-12);
    }
}
