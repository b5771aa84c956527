//! Exact kernels for low-dimensional convex geometry.
//!
//! Everything here is exact. Integer predicates run in `i128` and are kept in
//! range by the coordinate bounds [`MAX_COORD`], [`MAX_NORMAL`] and
//! [`MAX_OFFSET`]; areas and volumes are [`Rational`]s over big integers.
//! The algorithms are deliberately brute force (plane triples, monotone
//! chains) since inputs are a few dozen points at most.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact fraction of big integers, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Largest accepted lattice coordinate.
///
/// With coordinates bounded by 2^12 every facet normal built from three
/// lattice points stays below [`MAX_NORMAL`] and every offset below
/// [`MAX_OFFSET`], which in turn keeps Cramer's rule inside `i128`.
pub const MAX_COORD: i64 = 1 << 12;

/// Largest absolute value of a halfspace normal entry.
pub const MAX_NORMAL: i64 = 1 << 26;

/// Largest absolute value of a halfspace offset.
pub const MAX_OFFSET: i64 = 1 << 40;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// A point of ℕ₀ⁿ, n ∈ {1, 2, 3}.
///
/// Unused trailing coordinates are kept at zero so the derived ordering is
/// lexicographic within a dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    dim: u8,
    coords: [i64; 3],
}

impl LatticePoint {
    pub fn new(coords: &[i64]) -> Result<Self> {
        if coords.is_empty() || coords.len() > 3 {
            return Err(Error::UnsupportedDimension(coords.len()));
        }
        if coords.iter().any(|&c| c < 0) {
            return Err(Error::NotLattice(coords.to_vec()));
        }
        if let Some(&value) = coords.iter().find(|&&c| c > MAX_COORD) {
            return Err(Error::CoordinateTooLarge { value, max: MAX_COORD });
        }
        let mut padded = [0; 3];
        padded[..coords.len()].copy_from_slice(coords);
        Ok(Self { dim: coords.len() as u8, coords: padded })
    }

    /// The origin of ℕ₀ⁿ.
    pub fn origin(dim: usize) -> Self {
        assert!((1..=3).contains(&dim), "dimension {dim} out of range");
        Self { dim: dim as u8, coords: [0; 3] }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords[..self.dim()]
    }

    pub fn coord(&self, axis: usize) -> i64 {
        self.coords()[axis]
    }

    /// Zero-padded coordinates.
    pub(crate) fn padded(&self) -> [i64; 3] {
        self.coords
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// `true` when `self ≥ other` coordinatewise, i.e. `self ∈ other + ℝⁿ≥0`.
    pub fn dominates(&self, other: &LatticePoint) -> bool {
        self.dim == other.dim && self.coords.iter().zip(&other.coords).all(|(a, b)| a >= b)
    }

    /// Axes on which the point has a zero coordinate.
    pub fn zero_axes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(move |&i| self.coords[i] == 0)
    }

    /// Applies the coordinate permutation that sends axis `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.dim(), "permutation length");
        let mut coords = [0; 3];
        for (i, &target) in perm.iter().enumerate() {
            coords[target] = self.coords[i];
        }
        Self { dim: self.dim, coords }
    }

    pub fn to_rational(&self) -> RationalPoint {
        RationalPoint::from_ints(self.coords())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    coords: Vec<Rational>,
}

impl RationalPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self { coords: coords.iter().map(|&c| int(c)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coord(&self, axis: usize) -> &Rational {
        &self.coords[axis]
    }

    pub fn sub(&self, other: &RationalPoint) -> RationalPoint {
        RationalPoint { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The closed halfspace `{x : ⟨normal, x⟩ ≥ offset}` bounded by a plane that
/// contains lattice points.
///
/// The normal is stored primitive (gcd of its entries is 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    dim: u8,
    normal: [i64; 3],
    offset: i64,
}

impl Halfspace {
    /// Returns `None` for a zero normal, for entries beyond [`MAX_NORMAL`] /
    /// [`MAX_OFFSET`], or when the bounding plane carries no lattice point
    /// (the gcd of the normal does not divide the offset).
    pub fn new(normal: &[i64], offset: i64) -> Option<Self> {
        if normal.is_empty() || normal.len() > 3 || normal.iter().all(|&w| w == 0) {
            return None;
        }
        let g = normal.iter().fold(0i64, |g, &w| g.gcd(&w));
        if offset % g != 0 {
            return None;
        }
        let mut padded = [0; 3];
        for (slot, &w) in padded.iter_mut().zip(normal) {
            *slot = w / g;
        }
        let offset = offset / g;
        if padded.iter().any(|w| w.abs() > MAX_NORMAL) || offset.abs() > MAX_OFFSET {
            return None;
        }
        Some(Self { dim: normal.len() as u8, normal: padded, offset })
    }

    /// The halfspace with (reduced) normal direction `normal` whose boundary
    /// passes through `point`.
    pub fn through(normal: &[i64], point: &LatticePoint) -> Option<Self> {
        let offset: i64 = normal.iter().zip(point.coords()).map(|(w, x)| w * x).sum();
        Self::new(normal, offset)
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn normal(&self) -> &[i64] {
        &self.normal[..self.dim()]
    }

    pub(crate) fn padded_normal(&self) -> [i64; 3] {
        self.normal
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// `⟨normal, p⟩ − offset`; negative exactly when `p` violates the halfspace.
    pub fn slack(&self, p: &LatticePoint) -> i64 {
        debug_assert_eq!(self.dim, p.dim);
        let x = p.padded();
        self.normal[0] * x[0] + self.normal[1] * x[1] + self.normal[2] * x[2] - self.offset
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.slack(p) >= 0
    }

    pub fn slack_rational(&self, p: &RationalPoint) -> Rational {
        let dot: Rational = self.normal().iter().zip(p.coords()).map(|(&w, x)| x * int(w)).sum();
        dot - int(self.offset)
    }

    pub fn contains_rational(&self, p: &RationalPoint) -> bool {
        !self.slack_rational(p).is_negative()
    }

    /// `true` for normals with every entry strictly positive.
    pub fn is_positive(&self) -> bool {
        self.normal().iter().all(|&w| w > 0)
    }
}

impl fmt::Display for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 3] = ["x", "y", "z"];
        let mut first = true;
        for (i, &w) in self.normal().iter().enumerate() {
            if w == 0 {
                continue;
            }
            let sign = if w < 0 { "-" } else if first { "" } else { "+" };
            let mag = w.abs();
            if mag == 1 {
                write!(f, "{sign}{}", NAMES[i])?;
            } else {
                write!(f, "{sign}{mag}{}", NAMES[i])?;
            }
            first = false;
        }
        write!(f, " >= {}", self.offset)
    }
}

/// 3×3 determinant with rows `a`, `b`, `c`.
pub fn det3(a: [i64; 3], b: [i64; 3], c: [i64; 3]) -> i128 {
    let w = |v: [i64; 3]| v.map(i128::from);
    dot_i128(w(a), cross_i128(w(b), w(c)))
}

fn cross_i128(a: [i128; 3], b: [i128; 3]) -> [i128; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot_i128(a: [i128; 3], b: [i128; 3]) -> i128 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross_i64(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn cross_rational(a: &[Rational], b: &[Rational]) -> [Rational; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot_rational(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Exact 3×3 determinant of rational row vectors.
pub fn det3_rational(a: &RationalPoint, b: &RationalPoint, c: &RationalPoint) -> Rational {
    dot_rational(a.coords(), &cross_rational(b.coords(), c.coords()))
}

/// Twice the signed area of triangle `(o, a, b)`; positive for a
/// counterclockwise turn.
fn orient2(o: &(Rational, Rational), a: &(Rational, Rational), b: &(Rational, Rational)) -> Rational {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

/// Andrew's monotone chain. Returns indices of the hull vertices in
/// counterclockwise order starting at the lexicographically smallest point;
/// duplicates and points in the relative interior of hull edges are dropped.
fn hull_order(xy: &[(Rational, Rational)]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..xy.len()).collect();
    idx.sort_by(|&a, &b| xy[a].cmp(&xy[b]));
    idx.dedup_by(|a, b| xy[*a] == xy[*b]);
    if idx.len() < 3 {
        return idx;
    }
    let chain = |order: &mut dyn Iterator<Item = usize>| {
        let mut out: Vec<usize> = Vec::new();
        for i in order {
            while out.len() >= 2
                && !orient2(&xy[out[out.len() - 2]], &xy[out[out.len() - 1]], &xy[i]).is_positive()
            {
                out.pop();
            }
            out.push(i);
        }
        out.pop();
        out
    };
    let mut lower = chain(&mut idx.iter().copied());
    let upper = chain(&mut idx.iter().rev().copied());
    lower.extend(upper);
    lower
}

/// Planar convex hull together with its affine dimension (0, 1 or 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hull2 {
    pub vertices: Vec<RationalPoint>,
    pub dimension: usize,
}

/// Counterclockwise convex hull of planar points.
///
/// Panics on empty input or on points that are not two-dimensional.
pub fn convex_hull_2d(points: &[RationalPoint]) -> Hull2 {
    assert!(!points.is_empty(), "convex hull of an empty point set");
    assert!(points.iter().all(|p| p.dim() == 2), "convex_hull_2d needs planar points");
    let xy: Vec<(Rational, Rational)> =
        points.iter().map(|p| (p.coords[0].clone(), p.coords[1].clone())).collect();
    let order = hull_order(&xy);
    let dimension = order.len().min(3) - 1;
    Hull2 { vertices: order.into_iter().map(|i| points[i].clone()).collect(), dimension }
}

/// Shoelace area of a simple polygon given as a vertex cycle. Fewer than
/// three vertices give zero.
pub fn polygon_area(vertices: &[RationalPoint]) -> Rational {
    if vertices.len() < 3 {
        return Rational::zero();
    }
    let mut twice = Rational::zero();
    for (i, p) in vertices.iter().enumerate() {
        let q = &vertices[(i + 1) % vertices.len()];
        twice += &p.coords[0] * &q.coords[1] - &p.coords[1] * &q.coords[0];
    }
    twice.abs() / int(2)
}

/// Volume of a convex 3-polytope from its vertices and facet cycles.
///
/// Every facet cycle is fanned from its first vertex and each triangle is
/// coned to vertex 0, so the result is `|Σ det3|/6` over those tetrahedra.
/// Cycles must all be oriented the same way (all outward or all inward).
pub fn polytope_volume_3d(vertices: &[RationalPoint], facets: &[Vec<usize>]) -> Rational {
    let Some(apex) = vertices.first() else {
        return Rational::zero();
    };
    let rel: Vec<RationalPoint> = vertices.iter().map(|v| v.sub(apex)).collect();
    let mut six = Rational::zero();
    for cycle in facets {
        for k in 1..cycle.len().saturating_sub(1) {
            six += det3_rational(&rel[cycle[0]], &rel[cycle[k]], &rel[cycle[k + 1]]);
        }
    }
    six.abs() / int(6)
}

/// Orders coplanar points (given by index) into a cycle whose right-hand
/// normal points along `outward`. Returns `None` if they are collinear.
pub(crate) fn oriented_cycle(points: &[RationalPoint], idx: &[usize], outward: &[Rational; 3]) -> Option<Vec<usize>> {
    let drop = (0..3).max_by(|&a, &b| outward[a].abs().cmp(&outward[b].abs())).unwrap();
    let (u, v) = ((drop + 1) % 3, (drop + 2) % 3);
    let xy: Vec<(Rational, Rational)> =
        idx.iter().map(|&i| (points[i].coords[u].clone(), points[i].coords[v].clone())).collect();
    let order = hull_order(&xy);
    if order.len() < 3 {
        return None;
    }
    let mut cycle: Vec<usize> = order.into_iter().map(|k| idx[k]).collect();
    if outward[drop].is_negative() {
        cycle.reverse();
    }
    Some(cycle)
}

/// Convex 3-polytope in vertex/facet form; facet cycles are oriented with
/// outward right-hand normals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexPolytope3 {
    pub vertices: Vec<RationalPoint>,
    pub facets: Vec<Vec<usize>>,
}

impl ConvexPolytope3 {
    /// Builds the polytope `⋂ halfspaces`, which must be bounded and
    /// nonempty.
    pub fn from_halfspaces(halfspaces: &[Halfspace]) -> Result<Self> {
        let vertices = vertex_enumeration(halfspaces)?;
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut facets = Vec::new();
        for h in halfspaces {
            let tight: Vec<usize> =
                (0..vertices.len()).filter(|&i| h.slack_rational(&vertices[i]).is_zero()).collect();
            if tight.len() < 3 || !seen.insert(tight.clone()) {
                continue;
            }
            // Interior lies on ⟨w,x⟩ ≥ c, so the outward direction is −w.
            let outward = h.padded_normal().map(|w| int(-w));
            if let Some(cycle) = oriented_cycle(&vertices, &tight, &outward) {
                facets.push(cycle);
            }
        }
        Ok(Self { vertices, facets })
    }

    pub fn volume(&self) -> Rational {
        polytope_volume_3d(&self.vertices, &self.facets)
    }
}

/// Brute-force convex hull of 3D points: every plane through three points
/// with all points on one side bounds a facet.
///
/// Flat or lower-dimensional input yields a polytope without facets (volume
/// zero).
pub fn convex_hull_3d(points: &[RationalPoint]) -> ConvexPolytope3 {
    assert!(points.iter().all(|p| p.dim() == 3), "convex_hull_3d needs 3D points");
    let pts: Vec<RationalPoint> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let n = pts.len();
    let mut planes: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut raw_facets: Vec<(Vec<usize>, [Rational; 3])> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let normal = cross_rational(pts[j].sub(&pts[i]).coords(), pts[k].sub(&pts[i]).coords());
                if normal.iter().all(Zero::is_zero) {
                    continue;
                }
                let side: Vec<Rational> =
                    pts.iter().map(|p| dot_rational(&normal, p.sub(&pts[i]).coords())).collect();
                let above = side.iter().any(Signed::is_positive);
                let below = side.iter().any(Signed::is_negative);
                if above && below {
                    continue;
                }
                let tight: Vec<usize> = (0..n).filter(|&t| side[t].is_zero()).collect();
                if !planes.insert(tight.clone()) || !(above || below) {
                    continue;
                }
                let outward = if above { normal.map(|c| -c) } else { normal };
                raw_facets.push((tight, outward));
            }
        }
    }
    let mut facets_global = Vec::new();
    for (tight, outward) in &raw_facets {
        if let Some(cycle) = oriented_cycle(&pts, tight, outward) {
            facets_global.push(cycle);
        }
    }
    // Keep only points that are corners of some facet polygon.
    let used: BTreeSet<usize> = facets_global.iter().flatten().copied().collect();
    let remap: Vec<Option<usize>> = {
        let mut next = 0;
        (0..n)
            .map(|i| {
                used.contains(&i).then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    };
    let vertices = used.iter().map(|&i| pts[i].clone()).collect();
    let facets = facets_global
        .into_iter()
        .map(|cycle| cycle.into_iter().map(|i| remap[i].unwrap()).collect())
        .collect();
    ConvexPolytope3 { vertices, facets }
}

/// All vertices of the 3D polytope `⋂ halfspaces`, sorted and without
/// duplicates.
///
/// Each candidate is the unique solution of three of the boundary planes
/// (Cramer's rule in `i128`), kept if it satisfies every halfspace exactly.
/// Errors with [`Error::EmptyIntersection`] when the intersection is empty and
/// [`Error::UnboundedIntersection`] when it has a recession direction or the
/// normals do not span ℝ³.
pub fn vertex_enumeration(halfspaces: &[Halfspace]) -> Result<Vec<RationalPoint>> {
    if let Some(h) = halfspaces.iter().find(|h| h.dim() != 3) {
        return Err(Error::DimensionMismatch { expected: 3, found: h.dim() });
    }
    let rows: Vec<([i128; 3], i128)> =
        halfspaces.iter().map(|h| (h.normal.map(i128::from), i128::from(h.offset))).collect();
    let m = rows.len();
    let mut full_rank = false;
    let mut found: BTreeSet<([i128; 3], i128)> = BTreeSet::new();
    for i in 0..m {
        for j in i + 1..m {
            let cij = cross_i128(rows[i].0, rows[j].0);
            for k in j + 1..m {
                let cjk = cross_i128(rows[j].0, rows[k].0);
                let mut den = dot_i128(rows[i].0, cjk);
                if den == 0 {
                    continue;
                }
                full_rank = true;
                let cki = cross_i128(rows[k].0, rows[i].0);
                let mut num = [0i128; 3];
                for t in 0..3 {
                    num[t] = rows[i].1 * cjk[t] + rows[j].1 * cki[t] + rows[k].1 * cij[t];
                }
                if den < 0 {
                    den = -den;
                    num = num.map(|x| -x);
                }
                if rows.iter().all(|(w, c)| dot_i128(*w, num) >= c * den) {
                    let g = num.iter().fold(den, |g, x| g.gcd(x));
                    found.insert((num.map(|x| x / g), den / g));
                }
            }
        }
    }
    if found.is_empty() {
        return Err(if full_rank { Error::EmptyIntersection } else { Error::UnboundedIntersection });
    }
    // A pointed nonempty polyhedron is unbounded iff it has an extreme
    // recession ray, and every such ray is ±(w_i × w_j).
    for i in 0..m {
        for j in i + 1..m {
            let dir = cross_i128(rows[i].0, rows[j].0);
            if dir == [0; 3] {
                continue;
            }
            let dots: Vec<i128> = rows.iter().map(|(w, _)| dot_i128(*w, dir)).collect();
            if dots.iter().all(|&d| d >= 0) || dots.iter().all(|&d| d <= 0) {
                return Err(Error::UnboundedIntersection);
            }
        }
    }
    let mut out: Vec<RationalPoint> = found
        .into_iter()
        .map(|(num, den)| {
            RationalPoint::new(
                num.iter().map(|&x| Rational::new(BigInt::from(x), BigInt::from(den))).collect(),
            )
        })
        .collect();
    out.sort();
    Ok(out)
}
