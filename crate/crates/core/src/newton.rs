//! Newton polyhedra `Γ₊(A) = conv(⋃_{a∈A} a + ℝⁿ≥0)` of finite supports
//! `A ⊂ ℕ₀ⁿ`, the region `Γ₋` between the coordinate hyperplanes and the
//! Newton boundary, and the Newton number
//!
//! ```text
//! ν = n!·Vₙ − (n−1)!·Vₙ₋₁ + … + (−1)ⁿ⁻¹·1!·V₁ + (−1)ⁿ·V₀
//! ```
//!
//! where `Vᵢ` sums the i-volumes of `Γ₋ ∩ ℝᴵ≥0` over all `#I = i` and
//! `V₀ ∈ {0, 1}` records whether `Γ₋` is nonempty.

use std::collections::BTreeSet;

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactgeom::{
    cross_i64, det3, int, oriented_cycle, polygon_area, ConvexPolytope3, Halfspace, LatticePoint,
    Rational, RationalPoint,
};

/// A finite nonempty set of lattice points in ℕ₀ⁿ that is minimal: every
/// point is a vertex of the Newton polyhedron it generates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SupportSet {
    dim: usize,
    points: Vec<LatticePoint>,
}

impl SupportSet {
    /// Builds the minimal support generating the same polyhedron as
    /// `points`: duplicates, dominated points and non-extreme points are
    /// dropped.
    pub fn new(dim: usize, points: impl IntoIterator<Item = LatticePoint>) -> Result<Self> {
        Ok(NewtonPolyhedron::from_points(dim, points.into_iter().collect())?.support)
    }

    /// Convenience constructor from coordinate rows; the dimension is taken
    /// from the first row.
    pub fn from_coords<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let first = rows.first().ok_or(Error::EmptySupport)?;
        let dim = first.as_ref().len();
        let points = rows.iter().map(|r| LatticePoint::new(r.as_ref())).collect::<Result<Vec<_>>>()?;
        Self::new(dim, points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Points in lexicographic order.
    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Image under the coordinate permutation sending axis `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> SupportSet {
        let mut points: Vec<LatticePoint> = self.points.iter().map(|p| p.permuted(perm)).collect();
        points.sort();
        SupportSet { dim: self.dim, points }
    }

    pub fn to_coords(&self) -> Vec<Vec<i64>> {
        self.points.iter().map(|p| p.coords().to_vec()).collect()
    }
}

/// A bounded facet of `Γ₊`: its supporting halfspace (strictly positive
/// normal) and the support points lying on it.
///
/// In dimension 3 the vertices form a cycle whose right-hand normal points
/// away from `Γ₊` (towards the origin); in dimension 2 they are the two
/// endpoints ordered by first coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompactFacet {
    pub halfspace: Halfspace,
    pub vertices: Vec<LatticePoint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    support: SupportSet,
    compact_facets: Vec<CompactFacet>,
    // Facets with a zero normal entry. Only needed for membership tests on
    // polyhedra that are not convenient.
    unbounded_facets: Vec<Halfspace>,
    axis_intercepts: Vec<Option<i64>>,
}

impl NewtonPolyhedron {
    fn from_points(dim: usize, mut points: Vec<LatticePoint>) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::UnsupportedDimension(dim));
        }
        if points.is_empty() {
            return Err(Error::EmptySupport);
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
        }
        points.sort();
        points.dedup();
        let undominated: Vec<LatticePoint> = points
            .iter()
            .filter(|p| !points.iter().any(|q| q != *p && p.dominates(q)))
            .copied()
            .collect();

        let facets = enumerate_facets(dim, &undominated);
        let vertices: Vec<LatticePoint> = undominated
            .iter()
            .filter(|p| {
                let tight: Vec<[i64; 3]> =
                    facets.iter().filter(|h| h.slack(p) == 0).map(|h| h.padded_normal()).collect();
                has_full_rank(dim, &tight)
            })
            .copied()
            .collect();

        let mut compact_facets = Vec::new();
        let mut unbounded_facets = Vec::new();
        for h in facets {
            if !h.is_positive() {
                unbounded_facets.push(h);
                continue;
            }
            let on: Vec<LatticePoint> = vertices.iter().filter(|v| h.slack(v) == 0).copied().collect();
            let vertices = if dim == 3 { facet_cycle(&h, &on) } else { on };
            compact_facets.push(CompactFacet { halfspace: h, vertices });
        }

        let axis_intercepts = (0..dim)
            .map(|axis| {
                vertices
                    .iter()
                    .filter(|v| (0..dim).all(|j| j == axis || v.coord(j) == 0))
                    .map(|v| v.coord(axis))
                    .min()
            })
            .collect();

        Ok(Self {
            support: SupportSet { dim, points: vertices },
            compact_facets,
            unbounded_facets,
            axis_intercepts,
        })
    }

    pub fn dim(&self) -> usize {
        self.support.dim
    }

    pub fn support(&self) -> &SupportSet {
        &self.support
    }

    /// Vertices of `Γ₊`; identical to the support points.
    pub fn vertices(&self) -> &[LatticePoint] {
        &self.support.points
    }

    pub fn compact_facets(&self) -> &[CompactFacet] {
        &self.compact_facets
    }

    /// Per axis, the smallest coordinate at which `Γ₊` meets that axis.
    pub fn axis_intercepts(&self) -> &[Option<i64>] {
        &self.axis_intercepts
    }

    /// `Γ₊` meets every coordinate axis.
    pub fn is_convenient(&self) -> bool {
        self.axis_intercepts.iter().all(Option::is_some)
    }

    /// Exact membership `p ∈ Γ₊`.
    pub fn contains(&self, p: &LatticePoint) -> bool {
        assert_eq!(p.dim(), self.dim(), "point dimension");
        self.compact_facets.iter().all(|f| f.halfspace.contains(p))
            && self.unbounded_facets.iter().all(|h| h.contains(p))
    }

    pub(crate) fn intercepts_or_err(&self) -> Result<Vec<i64>> {
        self.axis_intercepts.iter().map(|m| m.ok_or(Error::NotConvenient)).collect()
    }
}

/// Every facet of `Γ₊` is spanned by some of its vertices together with the
/// recession directions eᵢ lying in it, and contains at least one vertex.
/// Enumerating all such spanning choices and keeping the planes with a
/// nonnegative normal that leave every point on the upper side therefore
/// finds the complete H-representation.
fn enumerate_facets(dim: usize, pts: &[LatticePoint]) -> Vec<Halfspace> {
    let unit = |i: usize| {
        let mut e = [0i64; 3];
        e[i] = 1;
        e
    };
    let sub = |a: [i64; 3], b: [i64; 3]| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    // (normal direction, a point on the plane)
    let mut candidates: Vec<([i64; 3], LatticePoint)> = Vec::new();
    match dim {
        1 => candidates.extend(pts.iter().map(|p| ([1, 0, 0], *p))),
        2 => {
            let perp = |d: [i64; 3]| [-d[1], d[0], 0];
            for (i, a) in pts.iter().enumerate() {
                for b in &pts[i + 1..] {
                    candidates.push((perp(sub(b.padded(), a.padded())), *a));
                }
                for t in 0..2 {
                    candidates.push((perp(unit(t)), *a));
                }
            }
        }
        3 => {
            for (i, a) in pts.iter().enumerate() {
                for (j, b) in pts.iter().enumerate().skip(i + 1) {
                    let ab = sub(b.padded(), a.padded());
                    for c in &pts[j + 1..] {
                        candidates.push((cross_i64(ab, sub(c.padded(), a.padded())), *a));
                    }
                    for t in 0..3 {
                        candidates.push((cross_i64(ab, unit(t)), *a));
                    }
                }
                for s in 0..3 {
                    for t in s + 1..3 {
                        candidates.push((cross_i64(unit(s), unit(t)), *a));
                    }
                }
            }
        }
        _ => unreachable!("dimension checked by caller"),
    }

    let mut out: BTreeSet<Halfspace> = BTreeSet::new();
    for (mut normal, anchor) in candidates {
        let normal = &mut normal[..dim];
        if normal.iter().all(|&w| w == 0) || (normal.iter().any(|&w| w > 0) && normal.iter().any(|&w| w < 0)) {
            continue;
        }
        if normal.iter().all(|&w| w <= 0) {
            normal.iter_mut().for_each(|w| *w = -*w);
        }
        let Some(h) = Halfspace::through(normal, &anchor) else { continue };
        if pts.iter().all(|p| h.contains(p)) {
            out.insert(h);
        }
    }
    out.into_iter().collect()
}

fn has_full_rank(dim: usize, normals: &[[i64; 3]]) -> bool {
    match dim {
        1 => !normals.is_empty(),
        2 => normals
            .iter()
            .enumerate()
            .any(|(i, a)| normals[i + 1..].iter().any(|b| a[0] * b[1] - a[1] * b[0] != 0)),
        _ => {
            let n = normals.len();
            (0..n).any(|i| {
                (i + 1..n).any(|j| (j + 1..n).any(|k| det3(normals[i], normals[j], normals[k]) != 0))
            })
        }
    }
}

/// Cyclic order of a 3D compact facet, right-hand normal along `−w`.
fn facet_cycle(h: &Halfspace, on: &[LatticePoint]) -> Vec<LatticePoint> {
    let pts: Vec<RationalPoint> = on.iter().map(LatticePoint::to_rational).collect();
    let idx: Vec<usize> = (0..on.len()).collect();
    let outward = h.padded_normal().map(|w| int(-w));
    oriented_cycle(&pts, &idx, &outward)
        .expect("a facet of a 3D polyhedron has three non-collinear vertices")
        .into_iter()
        .map(|i| on[i])
        .collect()
}

/// Builds `Γ₊(support)` with its compact facets, axis intercepts and
/// convenience flag.
pub fn build_polyhedron(support: &SupportSet) -> NewtonPolyhedron {
    NewtonPolyhedron::from_points(support.dim, support.points.clone())
        .expect("a support set is nonempty and dimensionally consistent")
}

/// The points of `support` lying in the coordinate subspace `ℝᴵ≥0`, written
/// in the coordinates `axes` (which must be strictly increasing). They
/// generate `Γ₊ ∩ ℝᴵ≥0`. Returns `None` when no point survives.
pub fn restrict(support: &SupportSet, axes: &[usize]) -> Option<SupportSet> {
    assert!(!axes.is_empty(), "restriction to the empty axis set");
    assert!(axes.windows(2).all(|w| w[0] < w[1]), "axes must be strictly increasing");
    assert!(axes.iter().all(|&a| a < support.dim), "axis out of range");
    let points: Vec<LatticePoint> = support
        .points
        .iter()
        .filter(|p| (0..support.dim).all(|i| axes.contains(&i) || p.coord(i) == 0))
        .map(|p| {
            let local: Vec<i64> = axes.iter().map(|&a| p.coord(a)).collect();
            LatticePoint::new(&local).expect("restriction keeps coordinates valid")
        })
        .collect();
    if points.is_empty() {
        None
    } else {
        Some(SupportSet::new(axes.len(), points).expect("nonempty restriction"))
    }
}

/// `Γ₋ ∩ ℝᴵ≥0` for one nonempty axis set `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    /// The axis set `I`, increasing.
    pub axes: Vec<usize>,
    /// Its `#I`-dimensional volume.
    pub measure: Rational,
    /// Boundary in ambient coordinates: the polygon cycle (counterclockwise
    /// in the local coordinates of `I`) for `#I = 2`, the segment endpoints
    /// for `#I = 1`, empty for the full 3D region or when `Γ₋` is empty.
    pub outline: Vec<RationalPoint>,
}

/// `Γ₋ = ℝⁿ≥0 − Γ₊` for a convenient `Γ₊`, with all its coordinate
/// restrictions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaMinusRegion {
    support: SupportSet,
    bounds: Vec<i64>,
    clipped: Option<ConvexPolytope3>,
    pieces: Vec<Piece>,
    nonempty: bool,
}

impl GammaMinusRegion {
    pub fn dim(&self) -> usize {
        self.support.dim
    }

    pub fn support(&self) -> &SupportSet {
        &self.support
    }

    /// Side lengths of the bounding box `Π [0, mᵢ]`, i.e. the axis intercepts.
    pub fn bounds(&self) -> &[i64] {
        &self.bounds
    }

    /// `Γ₊ ∩ box` as a convex polytope (dimension 3 with `Γ₋ ≠ ∅` only).
    pub fn clipped(&self) -> Option<&ConvexPolytope3> {
        self.clipped.as_ref()
    }

    /// Every restriction, larger axis sets first, then lexicographically.
    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn piece(&self, axes: &[usize]) -> Option<&Piece> {
        self.pieces.iter().find(|p| p.axes == axes)
    }

    /// Volume of `Γ₋` itself.
    pub fn volume(&self) -> &Rational {
        &self.pieces[0].measure
    }

    pub fn is_empty(&self) -> bool {
        !self.nonempty
    }

    pub fn v0(&self) -> Rational {
        if self.nonempty {
            Rational::one()
        } else {
            Rational::zero()
        }
    }

    /// `Vᵢ`: the sum of the i-volumes of all i-dimensional restrictions.
    pub fn volume_sum(&self, i: usize) -> Rational {
        if i == 0 {
            return self.v0();
        }
        self.pieces.iter().filter(|p| p.axes.len() == i).map(|p| p.measure.clone()).sum()
    }

    /// The Newton number as an exact alternating sum.
    pub fn newton_number(&self) -> i64 {
        let n = self.dim();
        let mut total = Rational::zero();
        let mut factorial = 1i64;
        for i in 0..=n {
            if i > 0 {
                factorial *= i as i64;
            }
            let term = self.volume_sum(i) * int(factorial);
            if (n - i) % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        assert!(total.is_integer(), "non-integral Newton number {total}");
        total.to_integer().to_i64().expect("Newton number fits in i64")
    }
}

fn axis_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = (1u32..(1 << n))
        .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect())
        .collect();
    subsets.sort_by(|a: &Vec<usize>, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    subsets
}

/// The full-dimensional piece of `Γ₋` for a convenient support with `Γ₋ ≠ ∅`:
/// volume, outline in local coordinates, and for n = 3 the clipped polytope.
fn full_piece(poly: &NewtonPolyhedron, bounds: &[i64]) -> Result<(Rational, Vec<RationalPoint>, Option<ConvexPolytope3>)> {
    match poly.dim() {
        1 => {
            let m = bounds[0];
            Ok((int(m), vec![RationalPoint::from_ints(&[0]), RationalPoint::from_ints(&[m])]))
                .map(|(a, b)| (a, b, None))
        }
        2 => {
            // Γ₋ is star-shaped from the origin: origin, (m₁, 0), the Newton
            // boundary vertices by decreasing first coordinate, (0, m₂).
            let mut chain: Vec<LatticePoint> = poly.vertices().to_vec();
            chain.sort_by_key(|v| std::cmp::Reverse(v.coord(0)));
            let mut outline = vec![RationalPoint::from_ints(&[0, 0])];
            outline.extend(chain.iter().map(LatticePoint::to_rational));
            Ok((polygon_area(&outline), outline, None))
        }
        _ => {
            // For xᵢ ≥ mᵢ a point dominates the axis vertex mᵢ·eᵢ, so it lies
            // in Γ₊; hence Γ₋ ⊆ box and V₃ = vol(box) − vol(Γ₊ ∩ box).
            let mut halfspaces: Vec<Halfspace> =
                poly.compact_facets().iter().map(|f| f.halfspace).collect();
            for (axis, &m) in bounds.iter().enumerate() {
                let mut e = [0i64; 3];
                e[axis] = 1;
                halfspaces.push(Halfspace::new(&e, 0).unwrap());
                e[axis] = -1;
                halfspaces.push(Halfspace::new(&e, -m).unwrap());
            }
            let clipped = ConvexPolytope3::from_halfspaces(&halfspaces)?;
            let box_volume = int(bounds.iter().product());
            Ok((box_volume - clipped.volume(), Vec::new(), Some(clipped)))
        }
    }
}

/// Computes `Γ₋` together with the volumes of all its coordinate
/// restrictions. Fails with [`Error::NotConvenient`] if some axis intercept
/// is missing, since `Γ₋` would then be unbounded.
pub fn gamma_minus(poly: &NewtonPolyhedron) -> Result<GammaMinusRegion> {
    let bounds = poly.intercepts_or_err()?;
    let n = poly.dim();
    // Γ₋ = ∅ iff the origin is in A, iff some intercept is zero.
    let nonempty = bounds.iter().all(|&m| m > 0);
    let mut clipped = None;
    let mut pieces = Vec::new();
    for axes in axis_subsets(n) {
        if !nonempty {
            pieces.push(Piece { axes, measure: Rational::zero(), outline: Vec::new() });
            continue;
        }
        let (measure, local_outline, c) = if axes.len() == n {
            full_piece(poly, &bounds)?
        } else {
            let sub = restrict(poly.support(), &axes).ok_or(Error::NotConvenient)?;
            let sub_bounds: Vec<i64> = axes.iter().map(|&a| bounds[a]).collect();
            full_piece(&build_polyhedron(&sub), &sub_bounds)?
        };
        if c.is_some() {
            clipped = c;
        }
        let outline = local_outline
            .iter()
            .map(|q| {
                let mut coords = vec![Rational::zero(); n];
                for (k, &a) in axes.iter().enumerate() {
                    coords[a] = q.coord(k).clone();
                }
                RationalPoint::new(coords)
            })
            .collect();
        pieces.push(Piece { axes, measure, outline });
    }
    Ok(GammaMinusRegion { support: poly.support().clone(), bounds, clipped, pieces, nonempty })
}

/// `ν(Γ₊(support))`. Fails with [`Error::NotConvenient`] unless every axis
/// is met.
pub fn newton_number(support: &SupportSet) -> Result<i64> {
    Ok(gamma_minus(&build_polyhedron(support))?.newton_number())
}
