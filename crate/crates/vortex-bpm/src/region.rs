//! Bounded obstacle regions (finite unions of disks and boxes) and the
//! symbolic unbounded regions the constructions return.
//!
//! Obstacles stay closed under isometries by carrying oriented boxes
//! internally. Symbolic regions make membership exactly decidable from the
//! stored parameters, which is what turns invariance into an algebraic
//! identity.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};
use vortex_core::{EuclideanIsometry, Result, VortexError};

/// One bounded convex obstacle piece.
#[derive(Clone, Debug, PartialEq)]
pub enum Piece {
    Disk {
        center: DVector<f64>,
        radius: f64,
    },
    /// Oriented box: `center + axes * diag(half) * [-1,1]^l`, axes
    /// orthonormal columns.
    OrientedBox {
        center: DVector<f64>,
        axes: DMatrix<f64>,
        half: DVector<f64>,
    },
}

impl Piece {
    pub fn dim(&self) -> usize {
        match self {
            Piece::Disk { center, .. } => center.len(),
            Piece::OrientedBox { center, .. } => center.len(),
        }
    }

    pub fn axis_box(lo: &[f64], hi: &[f64]) -> Result<Piece> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(VortexError::input("box corners must share a dimension"));
        }
        if lo.iter().zip(hi).any(|(a, b)| a >= b) {
            return Err(VortexError::input("box must satisfy lo < hi per axis"));
        }
        let n = lo.len();
        let center = DVector::from_iterator(n, lo.iter().zip(hi).map(|(a, b)| (a + b) / 2.0));
        let half = DVector::from_iterator(n, lo.iter().zip(hi).map(|(a, b)| (b - a) / 2.0));
        Ok(Piece::OrientedBox {
            center,
            axes: DMatrix::identity(n, n),
            half,
        })
    }

    pub fn transform(&self, iso: &EuclideanIsometry) -> Piece {
        match self {
            Piece::Disk { center, radius } => Piece::Disk {
                center: iso.apply(center),
                radius: *radius,
            },
            Piece::OrientedBox { center, axes, half } => Piece::OrientedBox {
                center: iso.apply(center),
                axes: iso.linear() * axes,
                half: half.clone(),
            },
        }
    }

    /// Strict interior membership.
    pub fn contains(&self, v: &DVector<f64>) -> bool {
        self.interior_depth(v) > 0.0
    }

    /// Positive inside, negative outside; magnitude is the distance to the
    /// piece boundary.
    pub fn interior_depth(&self, v: &DVector<f64>) -> f64 {
        match self {
            Piece::Disk { center, radius } => radius - (v - center).norm(),
            Piece::OrientedBox { center, axes, half } => {
                let local = axes.transpose() * (v - center);
                let mut outside2 = 0.0;
                let mut min_inside = f64::INFINITY;
                for i in 0..local.len() {
                    let over = local[i].abs() - half[i];
                    if over > 0.0 {
                        outside2 += over * over;
                    } else {
                        min_inside = min_inside.min(-over);
                    }
                }
                if outside2 > 0.0 {
                    -outside2.sqrt()
                } else {
                    min_inside
                }
            }
        }
    }

    /// `(max <p(v), dir>, achieving original point)` for a unit `dir` in the
    /// projected space.
    pub fn support(&self, proj: &Projection, dir: &DVector<f64>) -> (f64, DVector<f64>) {
        match self {
            Piece::Disk { center, radius } => {
                let c = proj.project(center);
                (c.dot(dir) + radius, center + proj.embed(dir) * *radius)
            }
            Piece::OrientedBox { center, axes, half } => {
                let mut value = proj.project(center).dot(dir);
                let mut point = center.clone();
                for i in 0..half.len() {
                    let axis = axes.column(i).into_owned();
                    let a = proj.project(&axis).dot(dir);
                    value += a.abs() * half[i];
                    let sign = if a >= 0.0 { 1.0 } else { -1.0 };
                    point += axis * (sign * half[i]);
                }
                (value, point)
            }
        }
    }

    /// `(max |p(v) - from|, achieving original point)` over the piece.
    pub fn farthest(&self, proj: &Projection, from: &DVector<f64>) -> (f64, DVector<f64>) {
        match self {
            Piece::Disk { center, radius } => {
                let c = proj.project(center);
                let d = &c - from;
                let n = d.norm();
                let dir = if n > 0.0 {
                    d / n
                } else {
                    let mut e = DVector::zeros(from.len());
                    e[0] = 1.0;
                    e
                };
                (n + radius, center + proj.embed(&dir) * *radius)
            }
            Piece::OrientedBox { center, axes, half } => {
                // farthest projected point of a box is a projected corner
                let n = half.len();
                let mut best = (-1.0, center.clone());
                for mask in 0..(1u32 << n) {
                    let mut corner = center.clone();
                    for i in 0..n {
                        let sign = if mask & (1 << i) != 0 { 1.0 } else { -1.0 };
                        corner += axes.column(i) * (sign * half[i]);
                    }
                    let d = (proj.project(&corner) - from).norm();
                    if d > best.0 {
                        best = (d, corner);
                    }
                }
                best
            }
        }
    }

    /// Uniform point of the piece.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> DVector<f64> {
        match self {
            Piece::Disk { center, radius } => loop {
                let n = center.len();
                let v = DVector::from_iterator(n, (0..n).map(|_| rng.gen_range(-1.0..1.0)));
                if v.norm_squared() <= 1.0 {
                    return center + v * *radius;
                }
            },
            Piece::OrientedBox { center, axes, half } => {
                let n = half.len();
                let local =
                    DVector::from_iterator(n, (0..n).map(|i| rng.gen_range(-half[i]..half[i])));
                center + axes * local
            }
        }
    }

    /// Radius of a ball about the origin containing the piece.
    pub fn bounding_radius(&self) -> f64 {
        match self {
            Piece::Disk { center, radius } => center.norm() + radius,
            Piece::OrientedBox { center, half, .. } => center.norm() + half.norm(),
        }
    }
}

/// Orthogonal projection onto a subspace spanned by orthonormal rows.
#[derive(Clone, Debug)]
pub struct Projection {
    /// `m x l` matrix with orthonormal rows.
    rows: DMatrix<f64>,
}

impl Projection {
    pub fn identity(l: usize) -> Self {
        Projection {
            rows: DMatrix::identity(l, l),
        }
    }

    /// Projection onto the span of the given orthonormal columns.
    pub fn onto_columns(basis: &DMatrix<f64>) -> Self {
        Projection {
            rows: basis.transpose(),
        }
    }

    pub fn project(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.rows * v
    }

    pub fn embed(&self, w: &DVector<f64>) -> DVector<f64> {
        self.rows.transpose() * w
    }

    pub fn subspace_dim(&self) -> usize {
        self.rows.nrows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.rows.ncols()
    }
}

/// A nonempty finite union of bounded pieces.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundedRegion {
    pieces: Vec<Piece>,
}

impl BoundedRegion {
    pub fn new(pieces: Vec<Piece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(VortexError::input("region must contain at least one piece"));
        }
        let dim = pieces[0].dim();
        if pieces.iter().any(|p| p.dim() != dim) {
            return Err(VortexError::input("region pieces must share a dimension"));
        }
        Ok(BoundedRegion { pieces })
    }

    pub fn disk(center: &[f64], radius: f64) -> Result<Self> {
        if radius <= 0.0 {
            return Err(VortexError::input("disk radius must be positive"));
        }
        Self::new(vec![Piece::Disk {
            center: DVector::from_column_slice(center),
            radius,
        }])
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn dim(&self) -> usize {
        self.pieces[0].dim()
    }

    pub fn transform(&self, iso: &EuclideanIsometry) -> BoundedRegion {
        BoundedRegion {
            pieces: self.pieces.iter().map(|p| p.transform(iso)).collect(),
        }
    }

    /// Union of two regions (pieces concatenated).
    pub fn union(&self, other: &BoundedRegion) -> BoundedRegion {
        let mut pieces = self.pieces.clone();
        pieces.extend(other.pieces.iter().cloned());
        BoundedRegion { pieces }
    }

    pub fn contains(&self, v: &DVector<f64>) -> bool {
        self.pieces.iter().any(|p| p.contains(v))
    }

    /// Depth into the open region (max over pieces).
    pub fn interior_depth(&self, v: &DVector<f64>) -> f64 {
        self.pieces
            .iter()
            .map(|p| p.interior_depth(v))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Distance from `v` to the boundary of the union, as seen through the
    /// piece boundaries (exact on the boundary itself).
    pub fn boundary_gap(&self, v: &DVector<f64>) -> f64 {
        self.interior_depth(v).abs()
    }

    pub fn bounding_radius(&self) -> f64 {
        self.pieces
            .iter()
            .map(|p| p.bounding_radius())
            .fold(0.0, f64::max)
    }

    pub fn sample<R: Rng>(&self, rng: &mut R, k: usize) -> Vec<DVector<f64>> {
        (0..k)
            .map(|i| self.pieces[i % self.pieces.len()].sample(rng))
            .collect()
    }

    /// Support of the whole region with the achieving point and piece.
    pub fn support(&self, proj: &Projection, dir: &DVector<f64>) -> (f64, DVector<f64>, usize) {
        let mut best = (f64::NEG_INFINITY, DVector::zeros(self.dim()), 0);
        for (i, p) in self.pieces.iter().enumerate() {
            let (v, pt) = p.support(proj, dir);
            if v > best.0 {
                best = (v, pt, i);
            }
        }
        best
    }

    pub fn farthest(&self, proj: &Projection, from: &DVector<f64>) -> (f64, DVector<f64>, usize) {
        let mut best = (f64::NEG_INFINITY, DVector::zeros(self.dim()), 0);
        for (i, p) in self.pieces.iter().enumerate() {
            let (v, pt) = p.farthest(proj, from);
            if v > best.0 {
                best = (v, pt, i);
            }
        }
        best
    }
}

#[derive(Serialize, Deserialize, Default)]
struct RegionJson {
    #[serde(default)]
    disks: Vec<DiskJson>,
    #[serde(default)]
    boxes: Vec<BoxJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    oriented_boxes: Vec<OrientedBoxJson>,
}

#[derive(Serialize, Deserialize)]
struct DiskJson {
    c: Vec<f64>,
    r: f64,
}

#[derive(Serialize, Deserialize)]
struct BoxJson {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct OrientedBoxJson {
    center: Vec<f64>,
    axes: Vec<Vec<f64>>,
    half: Vec<f64>,
}

fn is_axis_aligned(axes: &DMatrix<f64>) -> bool {
    let n = axes.nrows();
    (axes - DMatrix::<f64>::identity(n, n)).abs().max() < 1e-12
}

impl Serialize for BoundedRegion {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut out = RegionJson::default();
        for p in &self.pieces {
            match p {
                Piece::Disk { center, radius } => out.disks.push(DiskJson {
                    c: center.iter().copied().collect(),
                    r: *radius,
                }),
                Piece::OrientedBox { center, axes, half } => {
                    if is_axis_aligned(axes) {
                        out.boxes.push(BoxJson {
                            lo: center.iter().zip(half.iter()).map(|(c, h)| c - h).collect(),
                            hi: center.iter().zip(half.iter()).map(|(c, h)| c + h).collect(),
                        });
                    } else {
                        out.oriented_boxes.push(OrientedBoxJson {
                            center: center.iter().copied().collect(),
                            axes: (0..axes.nrows())
                                .map(|i| (0..axes.ncols()).map(|j| axes[(i, j)]).collect())
                                .collect(),
                            half: half.iter().copied().collect(),
                        });
                    }
                }
            }
        }
        out.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for BoundedRegion {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RegionJson::deserialize(de)?;
        let mut pieces = Vec::new();
        for d in raw.disks {
            if d.r <= 0.0 {
                return Err(D::Error::custom("disk radius must be positive"));
            }
            pieces.push(Piece::Disk {
                center: DVector::from_vec(d.c),
                radius: d.r,
            });
        }
        for b in raw.boxes {
            pieces.push(Piece::axis_box(&b.lo, &b.hi).map_err(D::Error::custom)?);
        }
        for ob in raw.oriented_boxes {
            let n = ob.center.len();
            let flat: Vec<f64> = ob.axes.iter().flatten().copied().collect();
            pieces.push(Piece::OrientedBox {
                center: DVector::from_vec(ob.center),
                axes: DMatrix::from_row_slice(n, n, &flat),
                half: DVector::from_vec(ob.half),
            });
        }
        BoundedRegion::new(pieces).map_err(D::Error::custom)
    }
}

/// Closed unbounded region described symbolically.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SymbolicRegion {
    /// `{ <v, normal> <= low } ∪ { <v, normal> >= high }`
    BandComplement {
        normal: Vec<f64>,
        low: f64,
        high: f64,
    },
    /// `{ |v - center| >= radius }`
    BallComplement { center: Vec<f64>, radius: f64 },
    /// Base region on the first `m` coordinates, `appended` free dimensions.
    ProductWithFullFactor {
        base: Box<SymbolicRegion>,
        appended: usize,
    },
    /// `iso(inner)`.
    Image {
        iso: EuclideanIsometry,
        inner: Box<SymbolicRegion>,
    },
    Union { parts: Vec<SymbolicRegion> },
}

impl SymbolicRegion {
    pub fn dim(&self) -> usize {
        match self {
            SymbolicRegion::BandComplement { normal, .. } => normal.len(),
            SymbolicRegion::BallComplement { center, .. } => center.len(),
            SymbolicRegion::ProductWithFullFactor { base, appended } => base.dim() + appended,
            SymbolicRegion::Image { iso, .. } => iso.dim(),
            SymbolicRegion::Union { parts } => parts.first().map_or(0, |p| p.dim()),
        }
    }

    pub fn contains(&self, v: &DVector<f64>) -> bool {
        self.depth(v) >= 0.0
    }

    /// Signed distance into the closed region: nonnegative inside,
    /// negative outside. Isometries preserve it exactly.
    pub fn depth(&self, v: &DVector<f64>) -> f64 {
        match self {
            SymbolicRegion::BandComplement { normal, low, high } => {
                let s = v
                    .iter()
                    .zip(normal.iter())
                    .map(|(a, b)| a * b)
                    .sum::<f64>();
                (low - s).max(s - high)
            }
            SymbolicRegion::BallComplement { center, radius } => {
                let c = DVector::from_column_slice(center);
                (v - c).norm() - radius
            }
            SymbolicRegion::ProductWithFullFactor { base, appended } => {
                let m = v.len() - appended;
                base.depth(&v.rows(0, m).into_owned())
            }
            SymbolicRegion::Image { iso, inner } => inner.depth(&iso.apply_inverse(v)),
            SymbolicRegion::Union { parts } => parts
                .iter()
                .map(|p| p.depth(v))
                .fold(f64::NEG_INFINITY, f64::max),
        }
    }

    /// Every variant here is connected together with the point at infinity:
    /// half-space pairs and ball complements reach infinity, products and
    /// images preserve that, and a union of sets each containing infinity
    /// in its closure stays connected through it.
    pub fn connected_at_infinity(&self) -> bool {
        match self {
            SymbolicRegion::BandComplement { normal, low, high } => {
                !normal.is_empty() && low.is_finite() && high.is_finite()
            }
            SymbolicRegion::BallComplement { center, radius } => {
                !center.is_empty() && radius.is_finite()
            }
            SymbolicRegion::ProductWithFullFactor { base, .. } => base.connected_at_infinity(),
            SymbolicRegion::Image { inner, .. } => inner.connected_at_infinity(),
            SymbolicRegion::Union { parts } => {
                !parts.is_empty() && parts.iter().all(|p| p.connected_at_infinity())
            }
        }
    }

    /// Canonical form: images pushed onto primitives, band normals
    /// sign-normalized, unions deduplicated.
    pub fn simplify(&self) -> SymbolicRegion {
        match self {
            SymbolicRegion::BandComplement { normal, low, high } => {
                canonical_band(normal.clone(), *low, *high)
            }
            SymbolicRegion::BallComplement { .. } => self.clone(),
            SymbolicRegion::ProductWithFullFactor { base, appended } => {
                SymbolicRegion::ProductWithFullFactor {
                    base: Box::new(base.simplify()),
                    appended: *appended,
                }
            }
            SymbolicRegion::Union { parts } => {
                let mut simplified: Vec<SymbolicRegion> =
                    parts.iter().map(|p| p.simplify()).collect();
                let mut unique: Vec<SymbolicRegion> = Vec::new();
                for s in simplified.drain(..) {
                    if !unique.iter().any(|u| regions_close(u, &s, 1e-12)) {
                        unique.push(s);
                    }
                }
                if unique.len() == 1 {
                    unique.pop().unwrap()
                } else {
                    SymbolicRegion::Union { parts: unique }
                }
            }
            SymbolicRegion::Image { iso, inner } => {
                let inner = inner.simplify();
                push_image(iso, &inner)
            }
        }
    }
}

fn canonical_band(normal: Vec<f64>, low: f64, high: f64) -> SymbolicRegion {
    // flip the normal so its first significant component is positive
    let flip = normal
        .iter()
        .find(|x| x.abs() > 1e-12)
        .map_or(false, |&x| x < 0.0);
    if flip {
        SymbolicRegion::BandComplement {
            normal: normal.iter().map(|x| -x).collect(),
            low: -high,
            high: -low,
        }
    } else {
        SymbolicRegion::BandComplement { normal, low, high }
    }
}

fn push_image(iso: &EuclideanIsometry, inner: &SymbolicRegion) -> SymbolicRegion {
    match inner {
        SymbolicRegion::BandComplement { normal, low, high } => {
            // v in iso(band) <=> <iso^{-1} v, n> outside (low, high)
            // <iso^{-1} v, n> = <v, R n> - <t, R n>
            let n = DVector::from_column_slice(normal);
            let rn = iso.linear() * n;
            let shift = iso.translation().dot(&rn);
            canonical_band(rn.iter().copied().collect(), low + shift, high + shift)
        }
        SymbolicRegion::BallComplement { center, radius } => SymbolicRegion::BallComplement {
            center: iso
                .apply(&DVector::from_column_slice(center))
                .iter()
                .copied()
                .collect(),
            radius: *radius,
        },
        SymbolicRegion::Union { parts } => SymbolicRegion::Union {
            parts: parts.iter().map(|p| push_image(iso, p)).collect(),
        }
        .simplify(),
        SymbolicRegion::Image { iso: inner_iso, inner } => {
            push_image(&iso.compose(inner_iso), inner)
        }
        SymbolicRegion::ProductWithFullFactor { base, appended } => {
            // push through when the isometry respects the (m | appended) split
            let m = base.dim();
            let l = iso.dim();
            let lin = iso.linear();
            let mut split = true;
            for i in 0..l {
                for j in 0..l {
                    let cross = (i < m) != (j < m);
                    if cross && lin[(i, j)].abs() > 1e-12 {
                        split = false;
                    }
                }
            }
            if split {
                let lin_m = lin.view((0, 0), (m, m)).into_owned();
                let t_m = iso.translation().rows(0, m).into_owned();
                match EuclideanIsometry::new(lin_m, t_m) {
                    Ok(iso_m) => SymbolicRegion::ProductWithFullFactor {
                        base: Box::new(push_image(&iso_m, base)),
                        appended: *appended,
                    },
                    Err(_) => SymbolicRegion::Image {
                        iso: iso.clone(),
                        inner: Box::new(inner.clone()),
                    },
                }
            } else {
                SymbolicRegion::Image {
                    iso: iso.clone(),
                    inner: Box::new(inner.clone()),
                }
            }
        }
    }
}

/// Structural closeness of two simplified regions.
pub fn regions_close(a: &SymbolicRegion, b: &SymbolicRegion, tol: f64) -> bool {
    match (a, b) {
        (
            SymbolicRegion::BandComplement {
                normal: na,
                low: la,
                high: ha,
            },
            SymbolicRegion::BandComplement {
                normal: nb,
                low: lb,
                high: hb,
            },
        ) => {
            na.len() == nb.len()
                && na
                    .iter()
                    .zip(nb)
                    .all(|(x, y)| (x - y).abs() <= tol)
                && (la - lb).abs() <= tol.max(tol * la.abs())
                && (ha - hb).abs() <= tol.max(tol * ha.abs())
        }
        (
            SymbolicRegion::BallComplement {
                center: ca,
                radius: ra,
            },
            SymbolicRegion::BallComplement {
                center: cb,
                radius: rb,
            },
        ) => {
            ca.len() == cb.len()
                && ca.iter().zip(cb).all(|(x, y)| (x - y).abs() <= tol.max(tol * x.abs()))
                && (ra - rb).abs() <= tol.max(tol * ra.abs())
        }
        (
            SymbolicRegion::ProductWithFullFactor {
                base: ba,
                appended: pa,
            },
            SymbolicRegion::ProductWithFullFactor {
                base: bb,
                appended: pb,
            },
        ) => pa == pb && regions_close(ba, bb, tol),
        (SymbolicRegion::Union { parts: pa }, SymbolicRegion::Union { parts: pb }) => {
            pa.len() == pb.len()
                && pa.iter().all(|x| pb.iter().any(|y| regions_close(x, y, tol)))
        }
        (SymbolicRegion::Image { iso: ia, inner: inn_a }, SymbolicRegion::Image { iso: ib, inner: inn_b }) => {
            (ia.linear() - ib.linear()).abs().max() <= tol
                && (ia.translation() - ib.translation()).abs().max() <= tol
                && regions_close(inn_a, inn_b, tol)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn band_membership_and_depth() {
        let k = SymbolicRegion::BandComplement {
            normal: vec![0.0, 1.0],
            low: -1.0,
            high: 1.0,
        };
        assert!(k.contains(&DVector::from_column_slice(&[5.0, 1.0])));
        assert!(k.contains(&DVector::from_column_slice(&[5.0, -2.0])));
        assert!(!k.contains(&DVector::from_column_slice(&[0.0, 0.5])));
        assert!((k.depth(&DVector::from_column_slice(&[0.0, 3.0])) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn image_of_ball_simplifies() {
        let iso = EuclideanIsometry::planar_rotation(0.25, [1.0, 0.0]);
        let k = SymbolicRegion::Image {
            iso: iso.clone(),
            inner: Box::new(SymbolicRegion::BallComplement {
                center: vec![0.0, 0.0],
                radius: 2.0,
            }),
        };
        let s = k.simplify();
        match &s {
            SymbolicRegion::BallComplement { center, radius } => {
                let expect = iso.apply(&DVector::from_column_slice(&[0.0, 0.0]));
                assert!((center[0] - expect[0]).abs() < 1e-12);
                assert!((center[1] - expect[1]).abs() < 1e-12);
                assert_eq!(*radius, 2.0);
            }
            other => panic!("expected ball complement, got {other:?}"),
        }
        // membership agrees before and after simplification
        for p in [[3.0, 3.0], [1.0, 1.0], [0.9, -0.3], [-2.0, 0.4]] {
            let v = DVector::from_column_slice(&p);
            assert_eq!(k.contains(&v), s.contains(&v));
        }
    }

    #[test]
    fn region_json_round_trip() {
        let r = BoundedRegion::new(vec![
            Piece::Disk {
                center: DVector::from_column_slice(&[0.0, 1.0]),
                radius: 0.5,
            },
            Piece::axis_box(&[-1.0, -1.0], &[1.0, 2.0]).unwrap(),
        ])
        .unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("disks") && s.contains("boxes"));
        let back: BoundedRegion = serde_json::from_str(&s).unwrap();
        assert_eq!(r, back);
    }

    #[test]
    fn support_and_farthest_on_identity_projection() {
        let r = BoundedRegion::disk(&[3.0, 0.0], 2.0).unwrap();
        let proj = Projection::identity(2);
        let dir = DVector::from_column_slice(&[1.0, 0.0]);
        let (v, pt, _) = r.support(&proj, &dir);
        assert!((v - 5.0).abs() < 1e-12);
        assert!((pt[0] - 5.0).abs() < 1e-12 && pt[1].abs() < 1e-12);
        let (d, far, _) = r.farthest(&proj, &DVector::zeros(2));
        assert!((d - 5.0).abs() < 1e-12);
        assert!((far[0] - 5.0).abs() < 1e-12);
    }

    #[test]
    fn box_farthest_is_a_corner() {
        let b = Piece::axis_box(&[0.0, 0.0], &[2.0, 1.0]).unwrap();
        let proj = Projection::identity(2);
        let (d, pt) = b.farthest(&proj, &DVector::zeros(2));
        assert!((d - (4.0f64 + 1.0).sqrt()).abs() < 1e-12);
        assert!((pt[0] - 2.0).abs() < 1e-12 && (pt[1] - 1.0).abs() < 1e-12);
    }
}
