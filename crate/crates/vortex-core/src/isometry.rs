//! Affine Euclidean isometries `v -> Psi v + rho` and the constant
//! orthogonal maps of the plane used as fiber linear parts.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::error::{Result, VortexError};
use crate::unit_angle;

pub const ORTHOGONALITY_TOL: f64 = 1e-12;

/// `v -> linear * v + translation` with `linear` orthogonal.
#[derive(Clone, Debug, PartialEq)]
pub struct EuclideanIsometry {
    linear: DMatrix<f64>,
    translation: DVector<f64>,
}

impl EuclideanIsometry {
    pub fn new(linear: DMatrix<f64>, translation: DVector<f64>) -> Result<Self> {
        if !linear.is_square() || linear.nrows() != translation.len() {
            return Err(VortexError::input(
                "isometry dimensions inconsistent between linear part and translation",
            ));
        }
        let n = linear.nrows();
        if n == 0 {
            return Err(VortexError::input("isometry dimension must be positive"));
        }
        let gram = linear.transpose() * &linear;
        let id = DMatrix::<f64>::identity(n, n);
        let err = (gram - id).abs().max();
        if err > ORTHOGONALITY_TOL {
            return Err(VortexError::input(format!(
                "linear part is not orthogonal (deviation {err:.3e} > {ORTHOGONALITY_TOL:.0e})"
            )));
        }
        Ok(Self {
            linear,
            translation,
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            linear: DMatrix::identity(dim, dim),
            translation: DVector::zeros(dim),
        }
    }

    pub fn translation_by(t: DVector<f64>) -> Self {
        let n = t.len();
        Self {
            linear: DMatrix::identity(n, n),
            translation: t,
        }
    }

    /// Planar rotation by `angle` (turns) about `center`.
    pub fn planar_rotation(angle: f64, center: [f64; 2]) -> Self {
        let a = 2.0 * std::f64::consts::PI * angle;
        let (s, c) = a.sin_cos();
        let r = DMatrix::from_row_slice(2, 2, &[c, -s, s, c]);
        let ctr = DVector::from_column_slice(&center);
        let t = &ctr - &r * &ctr;
        Self {
            linear: r,
            translation: t,
        }
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn linear(&self) -> &DMatrix<f64> {
        &self.linear
    }

    pub fn translation(&self) -> &DVector<f64> {
        &self.translation
    }

    pub fn apply(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.linear * v + &self.translation
    }

    pub fn apply_inverse(&self, v: &DVector<f64>) -> DVector<f64> {
        self.linear.transpose() * (v - &self.translation)
    }

    pub fn inverse(&self) -> Self {
        let lt = self.linear.transpose();
        let t = -(&lt * &self.translation);
        Self {
            linear: lt,
            translation: t,
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            linear: &self.linear * &other.linear,
            translation: &self.linear * &other.translation + &self.translation,
        }
    }

    /// +1 for orientation-preserving, -1 for reversing.
    pub fn det_sign(&self) -> f64 {
        if self.linear.determinant() >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        let n = self.dim();
        (self.linear.clone() - DMatrix::<f64>::identity(n, n)).abs().max() <= tol
            && self.translation.abs().max() <= tol
    }

    pub fn is_linear_identity(&self, tol: f64) -> bool {
        let n = self.dim();
        (self.linear.clone() - DMatrix::<f64>::identity(n, n)).abs().max() <= tol
    }
}

#[derive(Serialize, Deserialize)]
struct IsometryJson {
    linear: Vec<Vec<f64>>,
    translation: Vec<f64>,
}

impl Serialize for EuclideanIsometry {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.dim();
        let linear = (0..n)
            .map(|i| (0..n).map(|j| self.linear[(i, j)]).collect())
            .collect();
        IsometryJson {
            linear,
            translation: self.translation.iter().copied().collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for EuclideanIsometry {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = IsometryJson::deserialize(de)?;
        let n = raw.linear.len();
        if raw.linear.iter().any(|row| row.len() != n) {
            return Err(D::Error::custom("linear part must be a square matrix"));
        }
        let flat: Vec<f64> = raw.linear.iter().flatten().copied().collect();
        let linear = DMatrix::from_row_slice(n, n, &flat);
        let translation = DVector::from_vec(raw.translation);
        EuclideanIsometry::new(linear, translation).map_err(D::Error::custom)
    }
}

/// A constant orthogonal map of the plane `R^2 ≅ C`:
/// `z -> e^{2 pi i angle} z` or, with `flip`, `z -> e^{2 pi i angle} conj(z)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct O2Map {
    pub angle: Angle,
    pub flip: bool,
}

impl O2Map {
    pub fn rotation(angle: Angle) -> Self {
        Self { angle, flip: false }
    }

    pub fn reflection(angle: Angle) -> Self {
        Self { angle, flip: true }
    }

    pub fn identity() -> Self {
        Self::rotation(Angle::zero())
    }

    pub fn is_identity(&self) -> bool {
        !self.flip && self.angle.is_zero()
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        let w = if self.flip { z.conj() } else { z };
        unit_angle(&self.angle) * w
    }

    /// `self ∘ other` in the group `O(2)`.
    pub fn compose(&self, other: &O2Map) -> O2Map {
        let other_angle = if self.flip {
            other.angle.neg()
        } else {
            other.angle.clone()
        };
        O2Map {
            angle: self.angle.add(&other_angle),
            flip: self.flip != other.flip,
        }
    }

    pub fn inverse(&self) -> O2Map {
        if self.flip {
            // reflections are involutions
            self.clone()
        } else {
            O2Map::rotation(self.angle.neg())
        }
    }

    pub fn pow(&self, n: i64) -> O2Map {
        if self.flip {
            if n.rem_euclid(2) == 0 {
                O2Map::identity()
            } else {
                self.clone()
            }
        } else {
            O2Map::rotation(self.angle.mul_int(n))
        }
    }

    /// The same map as a planar `EuclideanIsometry` with zero translation.
    pub fn to_matrix(&self) -> DMatrix<f64> {
        let a = 2.0 * std::f64::consts::PI * self.angle.to_f64();
        let (s, c) = a.sin_cos();
        if self.flip {
            // rotation composed with conjugation (reflection)
            DMatrix::from_row_slice(2, 2, &[c, s, s, -c])
        } else {
            DMatrix::from_row_slice(2, 2, &[c, -s, s, c])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{DMatrix, DVector};

    #[test]
    fn rejects_non_orthogonal() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, 1.0]);
        assert!(EuclideanIsometry::new(m, DVector::zeros(2)).is_err());
    }

    #[test]
    fn inverse_composes_to_identity() {
        let i = EuclideanIsometry::planar_rotation(1.0 / 6.0, [2.0, -1.0]);
        let id = i.compose(&i.inverse());
        assert!(id.is_identity(1e-12));
    }

    #[test]
    fn o2_composition_law() {
        let a = O2Map::reflection(Angle::from_ratio(1, 3).unwrap());
        let b = O2Map::rotation(Angle::from_ratio(1, 5).unwrap());
        let z = Complex64::new(0.3, -0.8);
        let lhs = a.compose(&b).apply(z);
        let rhs = a.apply(b.apply(z));
        assert!((lhs - rhs).norm() < 1e-12);
        // squared reflection is the identity
        assert!(a.pow(2).is_identity());
        // matrix form agrees with complex form
        let m = a.to_matrix();
        let mv = &m * DVector::from_column_slice(&[z.re, z.im]);
        let av = a.apply(z);
        assert!((mv[0] - av.re).abs() < 1e-12 && (mv[1] - av.im).abs() < 1e-12);
    }
}
