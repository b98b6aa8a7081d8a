//! Cylindrical vortices over circle rotations and over finite cyclic bases,
//! with cocycle composition, squaring, first-return induction and a
//! heuristic escape scan.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::error::{Result, VortexError};
use crate::isometry::{EuclideanIsometry, O2Map};
use crate::trig::TrigPoly;

/// A vortex `(x, z) -> (x + alpha, Psi z + rho(x))` on `T^1 x C` with a
/// constant fiber linear part `Psi` in `O(2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct VortexSpec {
    pub alpha: Angle,
    pub fiber: O2Map,
    pub rho: TrigPoly,
}

#[derive(Serialize, Deserialize)]
struct VortexSpecJson {
    alpha: Angle,
    beta: Angle,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    reflect: bool,
    rho: TrigPoly,
    fiber_dim: usize,
}

impl Serialize for VortexSpec {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        VortexSpecJson {
            alpha: self.alpha.clone(),
            beta: self.fiber.angle.clone(),
            reflect: self.fiber.flip,
            rho: self.rho.clone(),
            fiber_dim: 2,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for VortexSpec {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = VortexSpecJson::deserialize(de)?;
        if raw.fiber_dim != 2 {
            return Err(D::Error::custom(format!(
                "fiber_dim must be 2 (the fiber is R^2 ≅ C); got {}",
                raw.fiber_dim
            )));
        }
        let fiber = if raw.reflect {
            O2Map::reflection(raw.beta)
        } else {
            O2Map::rotation(raw.beta)
        };
        Ok(VortexSpec::new(raw.alpha, fiber, raw.rho))
    }
}

/// A point of the phase space `T^1 x C`.
#[derive(Clone, Debug, PartialEq)]
pub struct State {
    pub x: Angle,
    pub z: Complex64,
}

impl State {
    pub fn new(x: Angle, z: Complex64) -> Self {
        Self { x, z }
    }

    pub fn origin() -> Self {
        Self::new(Angle::zero(), Complex64::new(0.0, 0.0))
    }
}

/// The `n`-step cocycle data of a `VortexSpec`: `F^n(x, z) =
/// (x + n alpha, linear(z) + rho_n(x))` with `rho_n` carried symbolically.
/// The base angle travels along so `apply` is self-contained.
#[derive(Clone, Debug)]
pub struct SpecCocycle {
    pub n: i64,
    pub linear: O2Map,
    pub rho_n: TrigPoly,
    base_alpha: Angle,
}

impl VortexSpec {
    pub fn new(alpha: Angle, fiber: O2Map, rho: TrigPoly) -> Self {
        Self { alpha, fiber, rho }
    }

    /// One forward step.
    pub fn step(&self, state: &State) -> State {
        State::new(
            state.x.add(&self.alpha),
            self.fiber.apply(state.z) + self.rho.eval_angle(&state.x),
        )
    }

    /// One backward step.
    pub fn step_back(&self, state: &State) -> State {
        let x_prev = state.x.sub(&self.alpha);
        let z = self
            .fiber
            .inverse()
            .apply(state.z - self.rho.eval_angle(&x_prev));
        State::new(x_prev, z)
    }

    /// `n`-fold step by repeated application (n may be negative).
    pub fn step_n(&self, state: &State, n: i64) -> State {
        let mut s = state.clone();
        if n >= 0 {
            for _ in 0..n {
                s = self.step(&s);
            }
        } else {
            for _ in 0..(-n) {
                s = self.step_back(&s);
            }
        }
        s
    }

    /// The inverse vortex `F^{-1}` as a spec of the same kind.
    pub fn inverse_spec(&self) -> VortexSpec {
        let inv = self.fiber.inverse();
        let shifted = self.rho.shift(&self.alpha.neg());
        let rho = apply_o2_to_poly(&inv, &shifted).scale(Complex64::new(-1.0, 0.0));
        VortexSpec::new(self.alpha.neg(), inv, rho)
    }

    /// Cocycle data for any `n`, by binary doubling on the identity
    /// `rho_{m+n}(x) = Psi_n rho_m(x) + rho_n(x + m alpha)`.
    pub fn cocycle(&self, n: i64) -> SpecCocycle {
        if n < 0 {
            let mut d = self.inverse_spec().cocycle(-n);
            d.n = n;
            d.base_alpha = self.alpha.clone();
            return d;
        }
        let mut result = SpecCocycle {
            n: 0,
            linear: O2Map::identity(),
            rho_n: TrigPoly::new(),
            base_alpha: self.alpha.clone(),
        };
        // square-and-multiply over the cocycle composition law
        let mut base_pow = SpecCocycle {
            n: 1,
            linear: self.fiber.clone(),
            rho_n: self.rho.clone(),
            base_alpha: self.alpha.clone(),
        };
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                result = compose_cocycles(self, &result, &base_pow);
            }
            k >>= 1;
            if k > 0 {
                base_pow = compose_cocycles(self, &base_pow, &base_pow);
            }
        }
        result.n = n;
        result
    }

    /// `F^2` as a spec of the same kind.
    pub fn square(&self) -> VortexSpec {
        let two = self.cocycle(2);
        VortexSpec::new(self.alpha.mul_int(2), two.linear, two.rho_n)
    }

    /// First exit times from the fiber ball of `radius`, scanning both time
    /// directions up to `n_max`. Reports `None` (recurrent within horizon)
    /// when the orbit never leaves the ball; this is a heuristic, not a
    /// properness certificate.
    pub fn escape_scan(&self, start: &State, n_max: u64, radius: f64) -> Result<EscapeReport> {
        if n_max < 1 {
            return Err(VortexError::input("escape scan requires n_max >= 1"));
        }
        let scan = |backward: bool| -> Option<u64> {
            let mut s = start.clone();
            for n in 1..=n_max {
                s = if backward {
                    self.step_back(&s)
                } else {
                    self.step(&s)
                };
                if s.z.norm() > radius {
                    return Some(n);
                }
            }
            None
        };
        Ok(EscapeReport {
            radius,
            horizon: n_max,
            forward_exit: scan(false),
            backward_exit: scan(true),
        })
    }
}

fn apply_o2_to_poly(map: &O2Map, p: &TrigPoly) -> TrigPoly {
    let q = if map.flip { p.conj() } else { p.clone() };
    q.scale(crate::unit_angle(&map.angle))
}

/// `outer after inner`: the `(m + n)`-cocycle from the `m`- and `n`-cocycles.
fn compose_cocycles(
    v: &VortexSpec,
    inner: &SpecCocycle,
    outer: &SpecCocycle,
) -> SpecCocycle {
    let m = inner.n;
    let rho = apply_o2_to_poly(&outer.linear, &inner.rho_n)
        .add(&outer.rho_n.shift(&v.alpha.mul_int(m)));
    SpecCocycle {
        n: inner.n + outer.n,
        linear: outer.linear.compose(&inner.linear),
        rho_n: rho,
        base_alpha: v.alpha.clone(),
    }
}

impl SpecCocycle {
    /// Apply the cocycle to a state: equals `n`-fold stepping.
    pub fn apply(&self, state: &State) -> State {
        State::new(
            state.x.add(&self.base_alpha.mul_int(self.n)),
            self.linear.apply(state.z) + self.rho_n.eval_angle(&state.x),
        )
    }
}

/// Exit-time report of `escape_scan`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EscapeReport {
    pub radius: f64,
    pub horizon: u64,
    /// First `n >= 1` with `|z_n| > radius`, or `None` if recurrent within
    /// the horizon.
    pub forward_exit: Option<u64>,
    pub backward_exit: Option<u64>,
}

impl EscapeReport {
    pub fn recurrent_within_horizon(&self) -> bool {
        self.forward_exit.is_none() && self.backward_exit.is_none()
    }
}

/// A vortex over the finite cyclic base `Z_p` with base map `j -> j + 1`:
/// one affine isometry of `R^l` per base point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiniteBaseVortex {
    pub isometries: Vec<EuclideanIsometry>,
}

impl FiniteBaseVortex {
    pub fn new(isometries: Vec<EuclideanIsometry>) -> Result<Self> {
        if isometries.is_empty() {
            return Err(VortexError::input("base must contain at least one point"));
        }
        let dim = isometries[0].dim();
        if isometries.iter().any(|i| i.dim() != dim) {
            return Err(VortexError::input(
                "all fiber isometries must share one dimension",
            ));
        }
        Ok(Self { isometries })
    }

    pub fn p(&self) -> usize {
        self.isometries.len()
    }

    pub fn dim(&self) -> usize {
        self.isometries[0].dim()
    }

    pub fn step(&self, j: usize, v: &DVector<f64>) -> (usize, DVector<f64>) {
        let p = self.p();
        ((j + 1) % p, self.isometries[j % p].apply(v))
    }

    /// The composed isometry moving the fiber over `j` to the fiber over
    /// `j + n`; `n` may be negative (inverses applied in reverse order).
    pub fn cocycle(&self, n: i64, j: usize) -> EuclideanIsometry {
        let p = self.p() as i64;
        let mut acc = EuclideanIsometry::identity(self.dim());
        if n >= 0 {
            for k in 0..n {
                let idx = (j as i64 + k).rem_euclid(p) as usize;
                acc = self.isometries[idx].compose(&acc);
            }
        } else {
            for k in 1..=(-n) {
                let idx = (j as i64 - k).rem_euclid(p) as usize;
                acc = self.isometries[idx].inverse().compose(&acc);
            }
        }
        acc
    }

    /// `F^2` over the odd cycle, with the base relabeled along the orbit of
    /// `0` under `j -> j + 2`. An even base splits into two cycles under
    /// squaring and cannot be expressed in this type.
    pub fn square(&self) -> Result<FiniteBaseVortex> {
        let p = self.p();
        if p % 2 == 0 && p > 1 {
            return Err(VortexError::input(
                "squaring an even cyclic base splits it into two cycles",
            ));
        }
        let mut isometries = Vec::with_capacity(p);
        let mut j = 0usize;
        for _ in 0..p {
            isometries.push(self.isometries[(j + 1) % p].compose(&self.isometries[j]));
            j = (j + 2) % p;
        }
        FiniteBaseVortex::new(isometries)
    }

    /// The first-return vortex on a subset `Y` of the base, in first-return
    /// cyclic order starting from the smallest element of `Y`.
    pub fn induced_first_return(&self, y: &[usize]) -> Result<InducedVortex> {
        if y.is_empty() {
            return Err(VortexError::input("first-return subset must be nonempty"));
        }
        let p = self.p();
        let mut in_y = vec![false; p];
        for &j in y {
            if j >= p {
                return Err(VortexError::input(format!(
                    "subset element {j} outside base Z_{p}"
                )));
            }
            in_y[j] = true;
        }
        let start = *y.iter().min().unwrap();
        let mut order = Vec::new();
        let mut return_times = Vec::new();
        let mut isometries = Vec::new();
        let mut j = start;
        loop {
            order.push(j);
            let mut acc = self.isometries[j].clone();
            let mut k = (j + 1) % p;
            let mut time = 1usize;
            while !in_y[k] {
                acc = self.isometries[k].compose(&acc);
                k = (k + 1) % p;
                time += 1;
            }
            return_times.push(time);
            isometries.push(acc);
            j = k;
            if j == start {
                break;
            }
        }
        Ok(InducedVortex {
            vortex: FiniteBaseVortex::new(isometries)?,
            base_points: order,
            return_times,
        })
    }
}

/// Result of first-return induction: the induced vortex plus the visited
/// base points (in induced order) and their return times.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InducedVortex {
    pub vortex: FiniteBaseVortex,
    pub base_points: Vec<usize>,
    pub return_times: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn cascade(alpha: Angle, c: f64) -> VortexSpec {
        VortexSpec::new(
            alpha,
            O2Map::identity(),
            TrigPoly::constant(Complex64::new(c, 0.0)),
        )
    }

    #[test]
    fn pure_translation_cascade() {
        // alpha = 1/4, beta = 0, rho = 1: four steps from the origin land on (0, 4)
        let v = cascade(Angle::from_ratio(1, 4).unwrap(), 1.0);
        let s = v.step_n(&State::origin(), 4);
        assert_eq!(s.x, Angle::zero());
        assert!((s.z - Complex64::new(4.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn involution_orbit() {
        // beta = 1/2: the fiber map z -> -z + 1 alternates 0, 1, 0, 1, ...
        let v = VortexSpec::new(
            Angle::from_ratio(1, 4).unwrap(),
            O2Map::rotation(Angle::from_ratio(1, 2).unwrap()),
            TrigPoly::constant(Complex64::new(1.0, 0.0)),
        );
        let mut s = State::origin();
        for k in 0..8 {
            let expect = if k % 2 == 0 { 0.0 } else { 1.0 };
            assert!((s.z - Complex64::new(expect, 0.0)).norm() < 1e-12);
            s = v.step(&s);
        }
    }

    #[test]
    fn step_evaluates_rho_at_current_point() {
        // alpha = 1/5, beta = 2/5, rho(x) = e^{2 pi i x}: step(0,0) = (1/5, 1)
        let v = VortexSpec::new(
            Angle::from_ratio(1, 5).unwrap(),
            O2Map::rotation(Angle::from_ratio(2, 5).unwrap()),
            TrigPoly::single(1, Complex64::new(1.0, 0.0)),
        );
        let s = v.step(&State::origin());
        assert_eq!(s.x, Angle::from_ratio(1, 5).unwrap());
        assert!((s.z - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn cocycle_unit_cases() {
        let v = VortexSpec::new(
            Angle::from_ratio(1, 7).unwrap(),
            O2Map::rotation(Angle::from_ratio(1, 3).unwrap()),
            TrigPoly::single(2, Complex64::new(0.5, -0.25)),
        );
        let c0 = v.cocycle(0);
        assert!(c0.linear.is_identity() && c0.rho_n.is_zero());
        let c1 = v.cocycle(1);
        assert_eq!(c1.rho_n, v.rho);
        assert_eq!(c1.linear, v.fiber);
    }

    #[test]
    fn two_step_cocycle_formula() {
        // rho_2(x) = e^{2 pi i beta} rho(x) + rho(x + alpha)
        let alpha = Angle::from_ratio(2, 9).unwrap();
        let beta = Angle::from_ratio(1, 3).unwrap();
        let rho = TrigPoly::from_terms([
            (1, Complex64::new(1.0, 0.0)),
            (-3, Complex64::new(0.0, 0.7)),
        ]);
        let v = VortexSpec::new(alpha.clone(), O2Map::rotation(beta.clone()), rho.clone());
        let c2 = v.cocycle(2);
        let expected = rho
            .scale(crate::unit_angle(&beta))
            .add(&rho.shift(&alpha));
        for i in 0..33 {
            let x = i as f64 / 33.0;
            assert!((c2.rho_n.eval(x) - expected.eval(x)).norm() < 1e-12);
        }
    }

    #[test]
    fn cocycle_matches_iteration_including_negative() {
        let v = VortexSpec::new(
            Angle::from_f64(0.381_966_011_250_105),
            O2Map::rotation(Angle::from_f64(0.267_949_192_431_123)),
            TrigPoly::from_terms([
                (1, Complex64::new(0.4, 0.1)),
                (2, Complex64::new(-0.3, 0.2)),
                (-1, Complex64::new(0.05, -0.6)),
            ]),
        );
        let start = State::new(Angle::from_f64(0.1234), Complex64::new(0.3, -0.9));
        for n in [-17i64, -3, 5, 23] {
            let direct = v.step_n(&start, n);
            let via = v.cocycle(n).apply(&start);
            assert!(direct.x.rep_dist(&via.x) < 1e-12);
            assert!((direct.z - via.z).norm() < 1e-10, "n = {n}");
        }
    }

    #[test]
    fn square_matches_double_step() {
        let v = VortexSpec::new(
            Angle::from_ratio(1, 3).unwrap(),
            O2Map::reflection(Angle::from_ratio(1, 5).unwrap()),
            TrigPoly::from_terms([(0, Complex64::new(0.3, 0.4)), (2, Complex64::new(-0.5, 0.1))]),
        );
        let sq = v.square();
        assert_eq!(sq.alpha, Angle::from_ratio(2, 3).unwrap());
        let s = State::new(Angle::from_ratio(1, 8).unwrap(), Complex64::new(-0.2, 0.7));
        let lhs = sq.step(&s);
        let rhs = v.step(&v.step(&s));
        assert!(lhs.x.rep_dist(&rhs.x) < 1e-15);
        assert!((lhs.z - rhs.z).norm() < 1e-12);
    }

    #[test]
    fn half_turn_square_is_identity_translation() {
        // beta = 1/2, rho = 1: z -> -(-z + 1) + 1 = z
        let v = VortexSpec::new(
            Angle::from_ratio(1, 4).unwrap(),
            O2Map::rotation(Angle::from_ratio(1, 2).unwrap()),
            TrigPoly::constant(Complex64::new(1.0, 0.0)),
        );
        let sq = v.square();
        assert!(sq.fiber.is_identity());
        assert!(sq.rho_n_is_zero());
    }

    impl VortexSpec {
        fn rho_n_is_zero(&self) -> bool {
            self.rho.prune(1e-15).is_zero()
        }
    }

    #[test]
    fn escape_for_constant_cascade() {
        let v = cascade(Angle::from_f64(0.318), 0.5);
        let report = v
            .escape_scan(&State::origin(), 1000, 10.0)
            .unwrap();
        // exit time ~ radius / |c| in both directions
        assert_eq!(report.forward_exit, Some(21));
        assert_eq!(report.backward_exit, Some(21));
        let still = cascade(Angle::from_f64(0.318), 0.0)
            .escape_scan(&State::origin(), 1000, 10.0)
            .unwrap();
        assert!(still.recurrent_within_horizon());
    }

    #[test]
    fn finite_base_cocycle_and_square() {
        let r = |angle: f64, c: [f64; 2]| EuclideanIsometry::planar_rotation(angle, c);
        let v = FiniteBaseVortex::new(vec![
            r(0.25, [0.0, 0.0]),
            r(0.5, [1.0, 0.0]),
            r(0.1, [0.0, 2.0]),
        ])
        .unwrap();
        // cocycle composition along the cycle agrees with stepping
        let x0 = DVector::from_column_slice(&[0.3, -0.7]);
        let mut j = 1usize;
        let mut v_now = x0.clone();
        for _ in 0..5 {
            let (jn, vn) = v.step(j, &v_now);
            j = jn;
            v_now = vn;
        }
        let direct = v.cocycle(5, 1).apply(&x0);
        assert!((direct - v_now).abs().max() < 1e-12);
        // negative time returns
        let back = v.cocycle(-5, (1 + 5) % 3);
        let again = back.apply(&v.cocycle(5, 1).apply(&x0));
        assert!((again.clone() - &x0).abs().max() < 1e-12);

        let sq = v.square().unwrap();
        let lhs = sq.isometries[0].apply(&x0);
        let rhs = v.isometries[1].apply(&v.isometries[0].apply(&x0));
        assert!((lhs - rhs).abs().max() < 1e-12);
        // even base refuses
        let even = FiniteBaseVortex::new(vec![r(0.25, [0.0, 0.0]), r(0.5, [0.0, 0.0])]).unwrap();
        assert!(even.square().is_err());
    }

    #[test]
    fn induced_first_return_full_base_is_identity() {
        let v = FiniteBaseVortex::new(vec![
            EuclideanIsometry::planar_rotation(0.2, [0.0, 0.0]),
            EuclideanIsometry::planar_rotation(0.3, [1.0, 1.0]),
        ])
        .unwrap();
        let ind = v.induced_first_return(&[0, 1]).unwrap();
        assert_eq!(ind.vortex, v);
        assert_eq!(ind.base_points, vec![0, 1]);
        assert_eq!(ind.return_times, vec![1, 1]);
    }

    #[test]
    fn induced_first_return_single_point() {
        // p = 3, Y = {0}: the induced isometry is I2 ∘ I1 ∘ I0
        let isos = vec![
            EuclideanIsometry::planar_rotation(0.15, [0.0, 0.0]),
            EuclideanIsometry::planar_rotation(0.4, [2.0, 0.0]),
            EuclideanIsometry::translation_by(DVector::from_column_slice(&[0.0, 1.0])),
        ];
        let v = FiniteBaseVortex::new(isos.clone()).unwrap();
        let ind = v.induced_first_return(&[0]).unwrap();
        let expect = isos[2].compose(&isos[1]).compose(&isos[0]);
        let probe = DVector::from_column_slice(&[0.9, -0.4]);
        assert!((ind.vortex.isometries[0].apply(&probe) - expect.apply(&probe))
            .abs()
            .max()
            < 1e-12);
        assert_eq!(ind.return_times, vec![3]);
    }

    #[test]
    fn induced_first_return_one_dimensional_signs() {
        // p = 3, linear parts (-1, 1, -1), Y = {0, 2}
        let mk = |s: f64, t: f64| {
            EuclideanIsometry::new(
                DMatrix::from_row_slice(1, 1, &[s]),
                DVector::from_column_slice(&[t]),
            )
            .unwrap()
        };
        let v = FiniteBaseVortex::new(vec![mk(-1.0, 0.3), mk(1.0, 0.5), mk(-1.0, 0.7)]).unwrap();
        let ind = v.induced_first_return(&[0, 2]).unwrap();
        assert_eq!(ind.base_points, vec![0, 2]);
        // at 0: I1 ∘ I0 = v -> (-v + 0.3) + 0.5, linear -1, translation rho(0)+rho(1)
        let at0 = &ind.vortex.isometries[0];
        assert!((at0.linear()[(0, 0)] + 1.0).abs() < 1e-15);
        assert!((at0.translation()[0] - 0.8).abs() < 1e-15);
        // at 2: I2 alone
        let at2 = &ind.vortex.isometries[1];
        assert!((at2.linear()[(0, 0)] + 1.0).abs() < 1e-15);
        assert!((at2.translation()[0] - 0.7).abs() < 1e-15);
    }

    #[test]
    fn empty_subset_rejected() {
        let v = FiniteBaseVortex::new(vec![EuclideanIsometry::identity(2)]).unwrap();
        assert!(v.induced_first_return(&[]).is_err());
    }
}
