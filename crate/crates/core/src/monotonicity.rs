//! Adding a lattice point `P` under a convenient `Γ₊ ⊂ ℝ³` and deciding
//! whether the Newton number survives.
//!
//! `Γ₊^P = conv(Γ₊ ∪ {P})` never has a larger Newton number, and it has the
//! same one exactly when `Γ₊^P − Γ₊` is a pyramid of height 1 over its base
//! in a coordinate plane `H ∋ P`. The difference is the union of the cones
//! from `P` over the compact facets visible from `P` (those whose inequality
//! `P` violates), so its vertices are `P` and the vertices of the visible
//! facets. It is never built as a solid; only that skeleton is inspected.
//!
//! The test for a given `H` reduces to counting skeleton vertices off `H`.
//! No compact facet lies in a coordinate plane, so every visible facet has a
//! vertex off `H`. If there is only one such vertex `Q`, every visible facet
//! contains `Q`, every cone from `P` over a visible facet lies in
//! `cone(D ∩ H, Q)`, and the difference `D` is that pyramid with height `Q`'s
//! distance from `H`. With two or more off-plane vertices `D` is not a
//! pyramid over `D ∩ H`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactgeom::LatticePoint;
use crate::newton::{build_polyhedron, newton_number, CompactFacet, NewtonPolyhedron, SupportSet};

/// Axis order in which coordinate planes are tried: z, y, x.
const PLANE_ORDER: [usize; 3] = [2, 1, 0];

/// The coordinate plane `{x_axis = 0}` in ℝ³.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoordinatePlane(pub usize);

impl CoordinatePlane {
    pub fn axis(self) -> usize {
        self.0
    }

    pub fn contains(self, p: &LatticePoint) -> bool {
        p.coord(self.0) == 0
    }

    /// Image under the coordinate permutation sending axis `i` to `perm[i]`.
    pub fn permuted(self, perm: &[usize]) -> Self {
        CoordinatePlane(perm[self.0])
    }
}

impl fmt::Display for CoordinatePlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}=0", ["x", "y", "z"][self.0])
    }
}

/// Witness that `Γ₊^P − Γ₊` is a pyramid over its trace on `plane` with
/// apex `apex` at height 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UnitPyramid {
    pub plane: CoordinatePlane,
    pub apex: LatticePoint,
}

/// Why a coordinate plane through `P` fails the unit-pyramid test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PlaneFailure {
    /// A pyramid with its single apex at height ≥ 2.
    TallPyramid { height: i64 },
    /// Two or more vertices off the plane.
    MultiApex { count: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StrictReason {
    /// `P` has no zero coordinate, so it lies in the interior of `Γ₋`.
    InteriorPoint,
    /// One entry per coordinate plane containing `P`, in z, y, x order.
    PerPlane(Vec<(CoordinatePlane, PlaneFailure)>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    /// `ν(Γ₊^P) = ν(Γ₊)`.
    Equal(UnitPyramid),
    /// `ν(Γ₊^P) < ν(Γ₊)`.
    Strict(StrictReason),
}

impl Classification {
    pub fn is_equal(&self) -> bool {
        matches!(self, Classification::Equal(_))
    }
}

/// Skeleton vertices of the difference lying off one coordinate plane
/// through `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OffPlane {
    pub plane: CoordinatePlane,
    /// Sorted, without repetition.
    pub vertices: Vec<LatticePoint>,
}

impl OffPlane {
    /// Height over the plane when there is a single off-plane vertex.
    pub fn height(&self) -> Option<i64> {
        match self.vertices.as_slice() {
            [q] => Some(q.coord(self.plane.0)),
            _ => None,
        }
    }

    fn failure(&self) -> Option<PlaneFailure> {
        match self.height() {
            Some(1) => None,
            Some(height) => Some(PlaneFailure::TallPyramid { height }),
            None => Some(PlaneFailure::MultiApex { count: self.vertices.len() }),
        }
    }
}

/// Vertex data of `Γ₊^P − Γ₊`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceSkeleton {
    pub point: LatticePoint,
    /// Compact facets of `Γ₊` whose inequality `P` strictly violates.
    pub visible_facets: Vec<CompactFacet>,
    /// `P` together with all vertices of visible facets, sorted.
    pub vertices: Vec<LatticePoint>,
    /// Every coordinate plane containing `P`, in z, y, x order.
    pub planes: Vec<OffPlane>,
}

fn check_host(poly: &NewtonPolyhedron, p: &LatticePoint) -> Result<()> {
    if poly.dim() != 3 {
        return Err(Error::UnsupportedDimension(poly.dim()));
    }
    if p.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: p.dim() });
    }
    if !poly.is_convenient() {
        return Err(Error::NotConvenient);
    }
    if poly.contains(p) {
        return Err(Error::PointInPolyhedron(p.coords().to_vec()));
    }
    Ok(())
}

/// Support of `Γ₊^P`, with vertices absorbed by the new point removed.
pub fn add_point(support: &SupportSet, p: &LatticePoint) -> Result<SupportSet> {
    if p.dim() != support.dim() {
        return Err(Error::DimensionMismatch { expected: support.dim(), found: p.dim() });
    }
    if build_polyhedron(support).contains(p) {
        return Err(Error::PointInPolyhedron(p.coords().to_vec()));
    }
    SupportSet::new(support.dim(), support.points().iter().copied().chain([*p]))
}

pub fn difference_skeleton(poly: &NewtonPolyhedron, p: &LatticePoint) -> Result<DifferenceSkeleton> {
    check_host(poly, p)?;
    let visible_facets: Vec<CompactFacet> =
        poly.compact_facets().iter().filter(|f| f.halfspace.slack(p) < 0).cloned().collect();
    let mut facet_vertices: Vec<LatticePoint> =
        visible_facets.iter().flat_map(|f| f.vertices.iter().copied()).collect();
    facet_vertices.sort();
    facet_vertices.dedup();

    let planes = PLANE_ORDER
        .iter()
        .map(|&axis| CoordinatePlane(axis))
        .filter(|h| h.contains(p))
        .map(|plane| OffPlane {
            plane,
            vertices: facet_vertices.iter().filter(|v| !plane.contains(v)).copied().collect(),
        })
        .collect();

    let mut vertices = facet_vertices;
    vertices.push(*p);
    vertices.sort();
    Ok(DifferenceSkeleton { point: *p, visible_facets, vertices, planes })
}

/// The first coordinate plane (z, y, x order) through `P` over which the
/// difference is a pyramid of height 1, with its apex.
pub fn is_unit_pyramid(poly: &NewtonPolyhedron, p: &LatticePoint) -> Result<Option<UnitPyramid>> {
    let skeleton = difference_skeleton(poly, p)?;
    Ok(skeleton
        .planes
        .iter()
        .find(|o| o.height() == Some(1))
        .map(|o| UnitPyramid { plane: o.plane, apex: o.vertices[0] }))
}

pub fn classify(poly: &NewtonPolyhedron, p: &LatticePoint) -> Result<Classification> {
    let skeleton = difference_skeleton(poly, p)?;
    if let Some(o) = skeleton.planes.iter().find(|o| o.height() == Some(1)) {
        return Ok(Classification::Equal(UnitPyramid { plane: o.plane, apex: o.vertices[0] }));
    }
    if skeleton.planes.is_empty() {
        return Ok(Classification::Strict(StrictReason::InteriorPoint));
    }
    let reasons = skeleton
        .planes
        .iter()
        .map(|o| (o.plane, o.failure().expect("unit planes handled above")))
        .collect();
    Ok(Classification::Strict(StrictReason::PerPlane(reasons)))
}

/// Result of adding a sequence of points one at a time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuDrop {
    /// `ν` before minus `ν` after all points.
    pub total: i64,
    /// Drop caused by each point; 0 for skipped points.
    pub steps: Vec<i64>,
    /// Points that already lay in the polyhedron when their turn came.
    pub skipped: Vec<bool>,
    /// Support after all additions.
    pub support: SupportSet,
}

pub fn nu_drop(support: &SupportSet, points: &[LatticePoint]) -> Result<NuDrop> {
    let mut current = support.clone();
    let mut nu = newton_number(&current)?;
    let mut steps = Vec::with_capacity(points.len());
    let mut skipped = Vec::with_capacity(points.len());
    for p in points {
        match add_point(&current, p) {
            Ok(next) => {
                let after = newton_number(&next)?;
                steps.push(nu - after);
                skipped.push(false);
                nu = after;
                current = next;
            }
            Err(Error::PointInPolyhedron(_)) => {
                steps.push(0);
                skipped.push(true);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(NuDrop { total: steps.iter().sum(), steps, skipped, support: current })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EqualPoint {
    pub point: LatticePoint,
    pub witness: UnitPyramid,
}

/// All lattice points under `Γ₊` whose addition preserves `ν`, in
/// lexicographic order. Every hit is confirmed by recomputing both Newton
/// numbers; a disagreement is reported as [`Error::PredicateMismatch`].
pub fn enumerate_equal(support: &SupportSet) -> Result<Vec<EqualPoint>> {
    let poly = build_polyhedron(support);
    if poly.dim() != 3 {
        return Err(Error::UnsupportedDimension(poly.dim()));
    }
    let m = poly.intercepts_or_err()?;
    let before = newton_number(support)?;
    let mut out = Vec::new();
    // Points with some coordinate ≥ mᵢ dominate an axis vertex.
    for x in 0..m[0] {
        for y in 0..m[1] {
            for z in 0..m[2] {
                let p = LatticePoint::new(&[x, y, z])?;
                if poly.contains(&p) {
                    continue;
                }
                let Some(witness) = is_unit_pyramid(&poly, &p)? else { continue };
                let after = newton_number(&add_point(support, &p)?)?;
                if after != before {
                    return Err(Error::PredicateMismatch { point: p.coords().to_vec(), before, after });
                }
                out.push(EqualPoint { point: p, witness });
            }
        }
    }
    Ok(out)
}

/// Why `ν` vanishes, or that it does not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NuZeroWitness {
    /// `Γ₊` is the whole orthant.
    Empty,
    /// `Γ₊` meets this axis at coordinate 1 (first such axis).
    AxisIntercept(usize),
    Positive,
}

pub fn nu_zero_witness(support: &SupportSet) -> Result<NuZeroWitness> {
    let m = build_polyhedron(support).intercepts_or_err()?;
    Ok(if m.contains(&0) {
        NuZeroWitness::Empty
    } else if let Some(axis) = m.iter().position(|&mi| mi == 1) {
        NuZeroWitness::AxisIntercept(axis)
    } else {
        NuZeroWitness::Positive
    })
}
