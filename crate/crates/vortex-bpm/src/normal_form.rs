//! Classification of affine Euclidean isometries into the normal forms the
//! constructions branch on.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use vortex_core::{EuclideanIsometry, Result, VortexError};

/// Identity deviation below this means "linear part is the identity".
pub const IDENTITY_TOL: f64 = 1e-10;
/// Distance to a classification branch cut below this is ambiguous.
pub const BRANCH_TOL: f64 = 1e-10;
/// Spectral blocks are accepted when within this of a clean rotation or
/// reflection block.
const BLOCK_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub enum NormalForm {
    Translation {
        vector: DVector<f64>,
    },
    /// Planar rotation, `angle` in turns, fixing `center`.
    RotationAboutPoint {
        center: DVector<f64>,
        angle: f64,
    },
    /// Orientation-reversing planar isometry together with the normal form
    /// of its square (a translation; zero for a pure reflection).
    GlideOrReversing {
        square: Box<NormalForm>,
    },
    /// Dimension >= 3: an orthonormal basis splitting the linear part into
    /// rotation blocks and fixed/reversed eigendirections, with the
    /// translation expressed in that basis.
    BlockDecomposition {
        basis: DMatrix<f64>,
        blocks: Vec<SpectralBlock>,
        translation: DVector<f64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum SpectralBlock {
    /// 2x2 rotation on basis columns `(col, col+1)`, angle in turns.
    Rotation { col: usize, angle: f64 },
    /// Eigendirection with eigenvalue +1.
    Fixed { col: usize },
    /// Eigendirection with eigenvalue -1.
    Reversed { col: usize },
}

/// Classify a planar or higher-dimensional isometry.
pub fn normal_form(iso: &EuclideanIsometry) -> Result<NormalForm> {
    let l = iso.dim();
    if l < 2 {
        return Err(VortexError::input("normal form requires dimension >= 2"));
    }
    if l == 2 {
        return planar_form(iso);
    }
    block_form(iso)
}

fn planar_form(iso: &EuclideanIsometry) -> Result<NormalForm> {
    let r = iso.linear();
    let id_dev = (r - DMatrix::<f64>::identity(2, 2)).abs().max();
    if id_dev <= IDENTITY_TOL {
        return Ok(NormalForm::Translation {
            vector: iso.translation().clone(),
        });
    }
    if iso.det_sign() > 0.0 {
        let angle = r[(1, 0)].atan2(r[(0, 0)]) / (2.0 * std::f64::consts::PI);
        if angle.abs() < BRANCH_TOL {
            return Err(VortexError::Ambiguous(format!(
                "rotation angle {angle:.3e} turns is within {BRANCH_TOL:.0e} of the identity \
                 branch cut while the linear part deviates by {id_dev:.3e}"
            )));
        }
        // fixed point: (I - R) v = t, well conditioned away from angle 0
        let m = DMatrix::<f64>::identity(2, 2) - r;
        let center = m
            .lu()
            .solve(iso.translation())
            .ok_or_else(|| VortexError::Ambiguous("near-singular rotation center".into()))?;
        Ok(NormalForm::RotationAboutPoint { center, angle })
    } else {
        let square = iso.compose(iso);
        // the square of a planar reflection or glide is a translation
        let dev = (square.linear() - DMatrix::<f64>::identity(2, 2)).abs().max();
        if dev > BLOCK_TOL {
            return Err(VortexError::Ambiguous(format!(
                "square of an orientation-reversing planar isometry deviates from a \
                 translation by {dev:.3e}"
            )));
        }
        Ok(NormalForm::GlideOrReversing {
            square: Box::new(NormalForm::Translation {
                vector: square.translation().clone(),
            }),
        })
    }
}

fn block_form(iso: &EuclideanIsometry) -> Result<NormalForm> {
    let l = iso.dim();
    let schur = iso.linear().clone().schur();
    let (q, t) = schur.unpack();
    let mut blocks = Vec::new();
    let mut i = 0usize;
    while i < l {
        let off = if i + 1 < l { t[(i + 1, i)].abs() } else { 0.0 };
        if i + 1 < l && off > BLOCK_TOL {
            let angle = t[(i + 1, i)].atan2(t[(i, i)]) / (2.0 * std::f64::consts::PI);
            blocks.push(SpectralBlock::Rotation { col: i, angle });
            i += 2;
        } else {
            let v = t[(i, i)];
            if (v - 1.0).abs() <= BLOCK_TOL {
                blocks.push(SpectralBlock::Fixed { col: i });
            } else if (v + 1.0).abs() <= BLOCK_TOL {
                blocks.push(SpectralBlock::Reversed { col: i });
            } else {
                return Err(VortexError::Ambiguous(format!(
                    "eigenvalue {v:.12} of an orthogonal matrix is not within {BLOCK_TOL:.0e} \
                     of ±1"
                )));
            }
            i += 1;
        }
    }
    let translation = q.transpose() * iso.translation();
    Ok(NormalForm::BlockDecomposition {
        basis: q,
        blocks,
        translation,
    })
}
