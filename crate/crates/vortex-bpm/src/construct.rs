//! Construction of the invariant sets: band complements for translations,
//! smallest-enclosing-ball complements for rotations, the squaring trick
//! for orientation-reversing maps, product regions for higher dimension,
//! and the cyclic-composition construction over finite bases.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use vortex_core::{EuclideanIsometry, FiniteBaseVortex, Result, VortexError};

use crate::normal_form::{normal_form, NormalForm, SpectralBlock};
use crate::region::{BoundedRegion, Projection, SymbolicRegion};
use crate::verify::BpmChecks;

/// A boundary contact point of the invariant set with the obstacle.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub fiber: usize,
    pub point: Vec<f64>,
}

/// The invariant set, per base fiber, together with its contact witness.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BpmCertificate {
    pub regions: Vec<SymbolicRegion>,
    pub witness: Witness,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<BpmChecks>,
}

const ZERO_TOL: f64 = 1e-12;

fn perp2(v: &DVector<f64>) -> DVector<f64> {
    DVector::from_column_slice(&[-v[1], v[0]])
}

struct Construction {
    region: SymbolicRegion,
    witness_point: DVector<f64>,
    witness_piece: usize,
}

/// Tangent band complement for a translation acting inside the projected
/// plane; `dir_w` is the translation direction in subspace coordinates.
fn band_for_translation(
    u: &BoundedRegion,
    proj: &Projection,
    dir_w: &DVector<f64>,
) -> Construction {
    let n_hat = perp2(dir_w);
    let (high, wit, piece) = u.support(proj, &n_hat);
    let neg = n_hat.clone() * -1.0;
    let (neg_low, _, _) = u.support(proj, &neg);
    Construction {
        region: SymbolicRegion::BandComplement {
            normal: n_hat.iter().copied().collect(),
            low: -neg_low,
            high,
        },
        witness_point: wit,
        witness_piece: piece,
    }
}

/// Smallest enclosing ball about a fixed center, complemented.
fn ball_for_rotation(
    u: &BoundedRegion,
    proj: &Projection,
    center_w: &DVector<f64>,
) -> Construction {
    let (radius, wit, piece) = u.farthest(proj, center_w);
    Construction {
        region: SymbolicRegion::BallComplement {
            center: center_w.iter().copied().collect(),
            radius,
        },
        witness_point: wit,
        witness_piece: piece,
    }
}

/// Symmetric band complement about the axis of a pure planar reflection.
fn band_for_reflection(
    u: &BoundedRegion,
    iso: &EuclideanIsometry,
) -> Result<Construction> {
    let r = iso.linear();
    // -1 eigendirection of [[c, s], [s, -c]]
    let (c, s) = (r[(0, 0)], r[(1, 0)]);
    let v1 = DVector::from_column_slice(&[s, -(1.0 + c)]);
    let v2 = DVector::from_column_slice(&[1.0 - c, -s]);
    let n_raw = if v1.norm() >= v2.norm() { v1 } else { v2 };
    let n = n_raw.norm();
    if n <= ZERO_TOL {
        return Err(VortexError::Ambiguous(
            "reflection axis normal degenerated".into(),
        ));
    }
    let n_hat = n_raw / n;
    let axis_offset = iso.translation().dot(&n_hat) / 2.0;
    let proj = Projection::identity(2);
    let (s_hi, wit_hi, piece_hi) = u.support(&proj, &n_hat);
    let neg = n_hat.clone() * -1.0;
    let (neg_lo, wit_lo, piece_lo) = u.support(&proj, &neg);
    let s_lo = -neg_lo;
    let h = (s_hi - axis_offset).max(axis_offset - s_lo);
    let (wit, piece) = if s_hi - axis_offset >= axis_offset - s_lo {
        (wit_hi, piece_hi)
    } else {
        (wit_lo, piece_lo)
    };
    Ok(Construction {
        region: SymbolicRegion::BandComplement {
            normal: n_hat.iter().copied().collect(),
            low: axis_offset - h,
            high: axis_offset + h,
        },
        witness_point: wit,
        witness_piece: piece,
    })
}

/// The squaring construction shared by planar glides and higher-dimensional
/// orientation-reversing isometries: build a set for `I^2` avoiding
/// `U ∪ I(U)` and return its union with the `I^{-1}` image.
fn square_trick(
    iso: &EuclideanIsometry,
    u: &BoundedRegion,
    build_inner: impl Fn(&EuclideanIsometry, &BoundedRegion) -> Result<Construction>,
) -> Result<Construction> {
    let n_pieces = u.pieces().len();
    let u2 = u.union(&u.transform(iso));
    let square = iso.compose(iso);
    let inner = build_inner(&square, &u2)?;
    let region = SymbolicRegion::Union {
        parts: vec![
            inner.region.clone(),
            SymbolicRegion::Image {
                iso: iso.inverse(),
                inner: Box::new(inner.region),
            },
        ],
    }
    .simplify();
    // a witness on the boundary of I(U) descends through I^{-1}
    let (witness_point, witness_piece) = if inner.witness_piece < n_pieces {
        (inner.witness_point, inner.witness_piece)
    } else {
        (
            iso.apply_inverse(&inner.witness_point),
            inner.witness_piece - n_pieces,
        )
    };
    Ok(Construction {
        region,
        witness_point,
        witness_piece,
    })
}

fn planar_construction(iso: &EuclideanIsometry, u: &BoundedRegion) -> Result<Construction> {
    match normal_form(iso)? {
        NormalForm::Translation { vector } => {
            let n = vector.norm();
            if n <= ZERO_TOL {
                return Err(VortexError::Degenerate(
                    "identity has no translation direction and no rotation center".into(),
                ));
            }
            Ok(band_for_translation(
                u,
                &Projection::identity(2),
                &(vector / n),
            ))
        }
        NormalForm::RotationAboutPoint { center, .. } => {
            Ok(ball_for_rotation(u, &Projection::identity(2), &center))
        }
        NormalForm::GlideOrReversing { square } => match *square {
            NormalForm::Translation { vector } if vector.norm() > ZERO_TOL => {
                square_trick(iso, u, planar_construction)
            }
            _ => band_for_reflection(u, iso),
        },
        NormalForm::BlockDecomposition { .. } => unreachable!("planar input"),
    }
}

/// Invariant planes of an orientation-preserving linear part: rotation
/// blocks plus reversed eigendirections paired into half-turn planes; the
/// leftover fixed directions span the factor that gets appended whole.
struct SplitPlan {
    /// Columns of an orthonormal basis; first two span the working plane.
    basis: DMatrix<f64>,
    /// 2x2 linear action on the working plane (in its own coordinates).
    working_linear: DMatrix<f64>,
}

fn orientation_preserving_split(iso: &EuclideanIsometry) -> Result<Option<SplitPlan>> {
    let l = iso.dim();
    let nf = normal_form(iso)?;
    let (basis_q, blocks) = match nf {
        NormalForm::BlockDecomposition { basis, blocks, .. } => (basis, blocks),
        _ => return Err(VortexError::input("expected dimension >= 3")),
    };
    let mut rotation_cols: Option<(usize, usize, DMatrix<f64>)> = None;
    let mut reversed: Vec<usize> = Vec::new();
    let schur_t = basis_q.transpose() * iso.linear() * &basis_q;
    for b in &blocks {
        match *b {
            SpectralBlock::Rotation { col, .. } => {
                if rotation_cols.is_none() {
                    let block = schur_t.view((col, col), (2, 2)).into_owned();
                    rotation_cols = Some((col, col + 1, block));
                }
            }
            SpectralBlock::Reversed { col } => reversed.push(col),
            SpectralBlock::Fixed { .. } => {}
        }
    }
    let (c0, c1, working_linear) = if let Some(r) = rotation_cols {
        r
    } else if reversed.len() >= 2 {
        (
            reversed[0],
            reversed[1],
            DMatrix::from_row_slice(2, 2, &[-1.0, 0.0, 0.0, -1.0]),
        )
    } else {
        return Ok(None); // linear part is (numerically) the identity
    };
    // reorder the basis so the working plane comes first
    let mut cols: Vec<usize> = vec![c0, c1];
    cols.extend((0..l).filter(|&j| j != c0 && j != c1));
    let mut basis = DMatrix::zeros(l, l);
    for (new_j, &old_j) in cols.iter().enumerate() {
        basis.set_column(new_j, &basis_q.column(old_j));
    }
    Ok(Some(SplitPlan {
        basis,
        working_linear,
    }))
}

fn highdim_construction(iso: &EuclideanIsometry, u: &BoundedRegion) -> Result<Construction> {
    let l = iso.dim();
    if l == 2 {
        return planar_construction(iso, u);
    }
    if iso.det_sign() < 0.0 {
        return square_trick(iso, u, highdim_construction);
    }
    let plan = orientation_preserving_split(iso)?;
    let (basis, working_linear) = match plan {
        Some(p) => (p.basis, p.working_linear),
        None => {
            // pure translation: put the translation inside the working plane
            let t = iso.translation().clone();
            let n = t.norm();
            if n <= ZERO_TOL {
                return Err(VortexError::Degenerate(
                    "identity has no translation direction and no rotation center".into(),
                ));
            }
            let t_hat = t / n;
            let mut cols: Vec<DVector<f64>> = vec![t_hat.clone()];
            // complete to an orthonormal basis, translation direction first
            for i in 0..l {
                let mut e = DVector::zeros(l);
                e[i] = 1.0;
                for c in &cols {
                    let d = e.dot(c);
                    e -= c * d;
                }
                let en = e.norm();
                if en > 1e-8 {
                    cols.push(e / en);
                }
                if cols.len() == l {
                    break;
                }
            }
            let mut basis = DMatrix::zeros(l, l);
            for (j, c) in cols.iter().enumerate() {
                basis.set_column(j, c);
            }
            (basis, DMatrix::identity(2, 2))
        }
    };
    let w_basis = basis.columns(0, 2).into_owned();
    let proj = Projection::onto_columns(&w_basis);
    let t_w = proj.project(iso.translation());
    let working = EuclideanIsometry::new(working_linear, t_w)?;
    let inner = match normal_form(&working)? {
        NormalForm::Translation { vector } => {
            let n = vector.norm();
            if n <= ZERO_TOL {
                return Err(VortexError::Degenerate(
                    "projected isometry is the identity on the working plane".into(),
                ));
            }
            band_for_translation(u, &proj, &(vector / n))
        }
        NormalForm::RotationAboutPoint { center, .. } => ball_for_rotation(u, &proj, &center),
        other => {
            return Err(VortexError::Ambiguous(format!(
                "working plane isometry did not classify as translation or rotation: {other:?}"
            )))
        }
    };
    let frame = EuclideanIsometry::new(basis, DVector::zeros(l))?;
    Ok(Construction {
        region: SymbolicRegion::Image {
            iso: frame,
            inner: Box::new(SymbolicRegion::ProductWithFullFactor {
                base: Box::new(inner.region),
                appended: l - 2,
            }),
        },
        witness_point: inner.witness_point,
        witness_piece: inner.witness_piece,
    })
}

fn dispatch(iso: &EuclideanIsometry, u: &BoundedRegion) -> Result<Construction> {
    if iso.dim() != u.dim() {
        return Err(VortexError::input(
            "isometry and obstacle dimensions differ",
        ));
    }
    if iso.dim() == 2 {
        planar_construction(iso, u)
    } else {
        highdim_construction(iso, u)
    }
}

/// Invariant set for a planar isometry avoiding `u`.
pub fn bpm_planar(iso: &EuclideanIsometry, u: &BoundedRegion) -> Result<BpmCertificate> {
    if iso.dim() != 2 {
        return Err(VortexError::input("bpm_planar requires dimension 2"));
    }
    let c = dispatch(iso, u)?;
    Ok(BpmCertificate {
        regions: vec![c.region],
        witness: Witness {
            fiber: 0,
            point: c.witness_point.iter().copied().collect(),
        },
        checks: None,
    })
}

/// Invariant set for an isometry of `R^l`, `l >= 3`, via projection onto an
/// invariant working plane and a full appended factor.
pub fn bpm_highdim(iso: &EuclideanIsometry, u: &BoundedRegion) -> Result<BpmCertificate> {
    if iso.dim() < 3 {
        return Err(VortexError::input("bpm_highdim requires dimension >= 3"));
    }
    let c = dispatch(iso, u)?;
    Ok(BpmCertificate {
        regions: vec![c.region],
        witness: Witness {
            fiber: 0,
            point: c.witness_point.iter().copied().collect(),
        },
        checks: None,
    })
}

/// Invariant set for a vortex over `Z_p` avoiding a tube: pull every fiber
/// obstacle back to fiber 0, build one set for the full cycle, and push it
/// around the base.
pub fn bpm_periodic(v: &FiniteBaseVortex, tube: &[BoundedRegion]) -> Result<BpmCertificate> {
    let p = v.p();
    if tube.is_empty() || (tube.len() != 1 && tube.len() != p) {
        return Err(VortexError::input(
            "tube must provide one obstacle region, or one per fiber",
        ));
    }
    let fiber_region = |j: usize| -> &BoundedRegion {
        if tube.len() == 1 {
            &tube[0]
        } else {
            &tube[j]
        }
    };
    if (0..p).any(|j| fiber_region(j).dim() != v.dim()) {
        return Err(VortexError::input("tube dimension differs from the fiber"));
    }

    // pulled-back obstacle: U_0 ∪ I_0^{-1}(U_1) ∪ (I_1 I_0)^{-1}(U_2) ∪ ...
    let mut prefix = EuclideanIsometry::identity(v.dim());
    let mut prefixes = Vec::with_capacity(p);
    let mut pieces = Vec::new();
    let mut piece_fibers = Vec::new();
    for j in 0..p {
        prefixes.push(prefix.clone());
        let pulled = fiber_region(j).transform(&prefix.inverse());
        for piece in pulled.pieces() {
            pieces.push(piece.clone());
            piece_fibers.push(j);
        }
        prefix = v.isometries[j].compose(&prefix);
    }
    let full_cycle = prefix;
    let pulled_union = BoundedRegion::new(pieces)?;

    let c = dispatch(&full_cycle, &pulled_union)?;
    let regions: Vec<SymbolicRegion> = prefixes
        .iter()
        .map(|pre| {
            SymbolicRegion::Image {
                iso: pre.clone(),
                inner: Box::new(c.region.clone()),
            }
            .simplify()
        })
        .collect();
    let fiber = piece_fibers[c.witness_piece];
    let witness_point = prefixes[fiber].apply(&c.witness_point);
    Ok(BpmCertificate {
        regions,
        witness: Witness {
            fiber,
            point: witness_point.iter().copied().collect(),
        },
        checks: None,
    })
}
