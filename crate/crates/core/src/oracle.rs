//! A second, independent route to the Newton number, and a seeded random
//! driver that checks the main implementation against it and against the
//! monotonicity theorem.
//!
//! Volumes here are integrated slab by slab. Between consecutive breakpoint
//! heights the cross-section of `Γ₋` is bounded by fixed planes, so its area
//! is quadratic in the height and Simpson's rule is exact. Planar areas are
//! integrated the same way with the trapezoid rule, which is exact for the
//! piecewise linear width of `Γ₋ᴵ`. Nothing here touches the facet
//! enumeration or the fan volume of the main path.
//!
//! Random supports use SplitMix64 (`state += 0x9E3779B97F4A7C15`, then the
//! two xor-shift-multiply rounds with `0xBF58476D1CE4E5B9`,
//! `0x94D049BB133111EB`) seeded with the raw seed; bounded draws reject
//! outputs at or above the largest multiple of the bound.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactgeom::{convex_hull_2d, int, polygon_area, LatticePoint, Rational, RationalPoint};
use crate::monotonicity::{
    add_point, classify, is_unit_pyramid, nu_zero_witness, Classification, NuZeroWitness, PlaneFailure,
    StrictReason,
};
use crate::newton::{build_polyhedron, gamma_minus, newton_number, GammaMinusRegion, NewtonPolyhedron, SupportSet};

/// Integrates a cross-section area over `[breaks[0], breaks.last()]` with
/// Simpson's rule on each interval. Exact when `area` is a polynomial of
/// degree ≤ 3 on every interval.
fn simpson(breaks: &[Rational], area: impl Fn(&Rational) -> Rational) -> Rational {
    let mut total = Rational::zero();
    for w in breaks.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let mid = (a + b) / int(2);
        total += (b - a) / int(6) * (area(a) + area(&mid) * int(4) + area(b));
    }
    total
}

fn sorted_breaks(mut breaks: Vec<Rational>) -> Vec<Rational> {
    breaks.sort();
    breaks.dedup();
    breaks
}

/// Where segment `ab` crosses height `t` in coordinate `axis`, projected to
/// the remaining coordinates `keep`. Requires `a[axis] < t < b[axis]` or the
/// reverse.
fn crossing(a: &[Rational], b: &[Rational], axis: usize, t: &Rational, keep: &[usize]) -> RationalPoint {
    let s = (t - &a[axis]) / (&b[axis] - &a[axis]);
    RationalPoint::new(keep.iter().map(|&k| &a[k] + &s * (&b[k] - &a[k])).collect())
}

/// `conv(points) ∩ {z ≤ t}` projected to the xy-plane is the hull of the
/// projections of points with `z ≤ t` and of the crossings of all segments
/// straddling `t`.
fn section_points(points: &[Vec<Rational>], t: &Rational, at_most: bool) -> Vec<RationalPoint> {
    let mut out = Vec::new();
    for (i, a) in points.iter().enumerate() {
        if &a[2] == t || (at_most && &a[2] < t) {
            out.push(RationalPoint::new(vec![a[0].clone(), a[1].clone()]));
        }
        for b in &points[i + 1..] {
            if (&a[2] < t && t < &b[2]) || (&b[2] < t && t < &a[2]) {
                out.push(crossing(a, b, 2, t, &[0, 1]));
            }
        }
    }
    out
}

fn hull_area(points: &[RationalPoint]) -> Rational {
    if points.is_empty() {
        return Rational::zero();
    }
    polygon_area(&convex_hull_2d(points).vertices)
}

/// Volume of the convex hull of 3D points by slab integration.
pub fn hull_volume_slab(points: &[RationalPoint]) -> Rational {
    let rows: Vec<Vec<Rational>> = points.iter().map(|p| p.coords().to_vec()).collect();
    let breaks = sorted_breaks(rows.iter().map(|r| r[2].clone()).collect());
    simpson(&breaks, |t| hull_area(&section_points(&rows, t, false)))
}

/// Volume of `Γ₋` for a convenient 3D support with intercepts `bounds`.
///
/// The slice of `Γ₊ ∩ box` at height `t` is `conv(S(t) ∪ {(m₁, m₂)})`, where
/// `S(t)` holds the projections of `conv(A) ∩ {z ≤ t}`: the point `(m₁, m₂)`
/// together with the axis points `(m₁, 0)`, `(0, m₂)` in `S(t)` covers
/// everything that upward closure adds inside the box.
fn gamma_minus_volume(points: &[LatticePoint], bounds: &[i64], extra_breaks: &[Rational]) -> Rational {
    if bounds.contains(&0) {
        return Rational::zero();
    }
    let rows: Vec<Vec<Rational>> =
        points.iter().map(|p| p.coords().iter().map(|&c| int(c)).collect()).collect();
    let (m1, m2, m3) = (bounds[0], bounds[1], bounds[2]);
    let mut breaks: Vec<Rational> = rows.iter().map(|r| r[2].clone()).filter(|z| z <= &int(m3)).collect();
    breaks.extend([int(0), int(m3)]);
    breaks.extend(extra_breaks.iter().cloned());
    let breaks = sorted_breaks(breaks);
    let corner = RationalPoint::from_ints(&[m1, m2]);
    simpson(&breaks, |t| {
        let mut section = section_points(&rows, t, true);
        section.push(corner.clone());
        int(m1 * m2) - hull_area(&section)
    })
}

/// `V₃` of a 3D region by slab integration, with breakpoints at all support
/// heights and all heights of the clipped polytope's vertices.
pub fn volume_slab(region: &GammaMinusRegion) -> Result<Rational> {
    if region.dim() != 3 {
        return Err(Error::UnsupportedDimension(region.dim()));
    }
    let extra: Vec<Rational> = region
        .clipped()
        .map(|c| c.vertices.iter().map(|v| v.coord(2).clone()).collect())
        .unwrap_or_default();
    Ok(gamma_minus_volume(region.support().points(), region.bounds(), &extra))
}

/// Area of `Γ₋` for a 2D support with intercepts `(m_x, m_y)`, as the
/// integral over `y ∈ [0, m_y]` of the smallest `x` in `Γ₊` at height `y`.
fn gamma_minus_area(points: &[[i64; 2]], m_y: i64) -> Rational {
    let rows: Vec<[Rational; 2]> = points.iter().map(|p| [int(p[0]), int(p[1])]).collect();
    let mut breaks: Vec<Rational> = rows.iter().map(|r| r[1].clone()).filter(|y| y <= &int(m_y)).collect();
    breaks.extend([int(0), int(m_y)]);
    let breaks = sorted_breaks(breaks);
    let width = |t: &Rational| -> Rational {
        let mut best: Option<Rational> = None;
        let mut offer = |x: Rational| {
            if best.as_ref().is_none_or(|b| &x < b) {
                best = Some(x);
            }
        };
        for (i, a) in rows.iter().enumerate() {
            if &a[1] <= t {
                offer(a[0].clone());
            }
            for b in &rows[i + 1..] {
                if (&a[1] < t && t < &b[1]) || (&b[1] < t && t < &a[1]) {
                    offer(crossing(a, b, 1, t, &[0]).coord(0).clone());
                }
            }
        }
        best.expect("the x-axis point lies at height 0")
    };
    breaks.windows(2).map(|w| (&w[1] - &w[0]) * (width(&w[0]) + width(&w[1])) / int(2)).sum()
}

fn intercepts(points: &[LatticePoint], dim: usize) -> Result<Vec<i64>> {
    (0..dim)
        .map(|axis| {
            points
                .iter()
                .filter(|p| (0..dim).all(|j| j == axis || p.coord(j) == 0))
                .map(|p| p.coord(axis))
                .min()
                .ok_or(Error::NotConvenient)
        })
        .collect()
}

fn on_subspace(points: &[LatticePoint], axes: &[usize]) -> Vec<LatticePoint> {
    points.iter().filter(|p| (0..p.dim()).all(|i| axes.contains(&i) || p.coord(i) == 0)).copied().collect()
}

/// Area of `Γ₋` for a convenient 2D support.
pub fn area_slab_2d(support: &SupportSet) -> Result<Rational> {
    if support.dim() != 2 {
        return Err(Error::UnsupportedDimension(support.dim()));
    }
    let m = intercepts(support.points(), 2)?;
    if m.contains(&0) {
        return Ok(Rational::zero());
    }
    let rows: Vec<[i64; 2]> = support.points().iter().map(|p| [p.coord(0), p.coord(1)]).collect();
    Ok(gamma_minus_area(&rows, m[1]))
}

/// Volumes `V₀ … Vₙ` through the slab path.
pub fn volumes_oracle(support: &SupportSet) -> Result<Vec<Rational>> {
    let n = support.dim();
    let pts = support.points();
    let m = intercepts(pts, n)?;
    let nonempty = !m.contains(&0);
    let mut v = vec![Rational::zero(); n + 1];
    if !nonempty {
        return Ok(v);
    }
    v[0] = int(1);
    v[1] = int(m.iter().sum());
    for i in 0..n {
        for j in i + 1..n {
            let rows: Vec<[i64; 2]> =
                on_subspace(pts, &[i, j]).iter().map(|p| [p.coord(i), p.coord(j)]).collect();
            v[2] += gamma_minus_area(&rows, m[j]);
        }
    }
    if n == 3 {
        v[3] = gamma_minus_volume(pts, &m, &[]);
    }
    Ok(v)
}

/// `ν` from [`volumes_oracle`].
pub fn nu_oracle(support: &SupportSet) -> Result<i64> {
    let v = volumes_oracle(support)?;
    let n = v.len() - 1;
    let mut total = Rational::zero();
    let mut factorial = 1i64;
    for (i, vi) in v.iter().enumerate() {
        if i > 0 {
            factorial *= i as i64;
        }
        let term = vi * int(factorial);
        total = if (n - i) % 2 == 0 { total + term } else { total - term };
    }
    assert!(total.is_integer(), "non-integral oracle value {total}");
    Ok(total.to_integer().to_i64().expect("ν fits in i64"))
}

/// Parameters of [`random_convenient_support`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorConfig {
    pub seed: u64,
    /// Axis intercepts are drawn from `1..=max_intercept`.
    pub max_intercept: i64,
    /// Number of extra points attempted after the axis points.
    pub extra_points: usize,
    pub dimension: usize,
}

impl GeneratorConfig {
    pub fn new(seed: u64, max_intercept: i64, extra_points: usize) -> Self {
        Self { seed, max_intercept, extra_points, dimension: 3 }
    }

    fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.dimension) {
            return Err(Error::InvalidConfig(format!("dimension {} not in 1..=3", self.dimension)));
        }
        if !(1..=crate::exactgeom::MAX_COORD).contains(&self.max_intercept) {
            return Err(Error::InvalidConfig(format!("max_intercept {} out of range", self.max_intercept)));
        }
        Ok(())
    }
}

struct Draw(SplitMix64);

impl Draw {
    fn new(seed: u64) -> Self {
        Draw(SplitMix64::seed_from_u64(seed))
    }

    /// Uniform on `0..n`.
    fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let limit = u64::MAX - u64::MAX % n;
        loop {
            let x = self.0.next_u64();
            if x < limit {
                return x % n;
            }
        }
    }
}

/// A convenient support: intercepts uniform in `[1, M]`, then up to `k`
/// points uniform in `Π [0, mᵢ)`, each kept only if it lies outside the
/// polyhedron built so far.
pub fn random_convenient_support(config: &GeneratorConfig) -> Result<SupportSet> {
    config.validate()?;
    let n = config.dimension;
    let mut rng = Draw::new(config.seed);
    let m: Vec<i64> = (0..n).map(|_| 1 + rng.below(config.max_intercept as u64) as i64).collect();
    let mut points: Vec<LatticePoint> = (0..n)
        .map(|axis| {
            let mut c = vec![0; n];
            c[axis] = m[axis];
            LatticePoint::new(&c)
        })
        .collect::<Result<_>>()?;
    let mut support = SupportSet::new(n, points.clone())?;
    for _ in 0..config.extra_points {
        let c: Vec<i64> = m.iter().map(|&mi| rng.below(mi as u64) as i64).collect();
        let p = LatticePoint::new(&c)?;
        if build_polyhedron(&support).contains(&p) {
            continue;
        }
        points.push(p);
        support = SupportSet::new(n, points.iter().copied())?;
    }
    Ok(support)
}

/// Property checked by [`cross_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// Slab volumes and `ν` agree with the main path.
    Oracle,
    /// `ν(Γ₊^P) ≤ ν(Γ₊)`.
    Monotonicity,
    /// Unit-pyramid predicate holds iff `ν` is preserved.
    Equivalence,
    /// Strict reasons are consistent with the position of `P`.
    Classification,
    /// `ν ≥ 0`.
    Nonnegative,
    /// `nu_zero_witness` is not `Positive` iff `ν = 0`.
    ZeroWitness,
}

const ALL_CHECKS: [Check; 6] = [
    Check::Oracle,
    Check::Monotonicity,
    Check::Equivalence,
    Check::Classification,
    Check::Nonnegative,
    Check::ZeroWitness,
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub seed: u64,
    pub support: Vec<Vec<i64>>,
    pub point: Option<Vec<i64>>,
    pub check: Check,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub config: GeneratorConfig,
    pub iterations: u64,
    pub points_checked: u64,
    pub equal_points: u64,
    pub strict_points: u64,
    pub zero_nu_supports: u64,
    pub violations: BTreeMap<Check, u64>,
    pub failures: Vec<Failure>,
}

impl CrossCheckReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn violations_of(&self, check: Check) -> u64 {
        self.violations[&check]
    }
}

type Predicate = Box<dyn Fn(&NewtonPolyhedron, &LatticePoint) -> bool + Send + Sync>;

/// Configurable driver behind [`cross_check`].
pub struct CrossCheck {
    config: GeneratorConfig,
    points_per_support: usize,
    predicate: Predicate,
}

impl CrossCheck {
    pub fn new(config: GeneratorConfig) -> Self {
        Self {
            config,
            points_per_support: 20,
            predicate: Box::new(|poly, p| matches!(is_unit_pyramid(poly, p), Ok(Some(_)))),
        }
    }

    pub fn points_per_support(mut self, n: usize) -> Self {
        self.points_per_support = n;
        self
    }

    /// Replaces the unit-pyramid predicate under test.
    pub fn predicate(mut self, f: impl Fn(&NewtonPolyhedron, &LatticePoint) -> bool + Send + Sync + 'static) -> Self {
        self.predicate = Box::new(f);
        self
    }

    pub fn run(&self, iterations: u64) -> Result<CrossCheckReport> {
        if iterations == 0 {
            return Err(Error::InvalidConfig("iterations must be at least 1".into()));
        }
        if self.config.dimension != 3 {
            return Err(Error::InvalidConfig("cross-check runs in dimension 3".into()));
        }
        let mut report = CrossCheckReport {
            config: self.config,
            iterations,
            points_checked: 0,
            equal_points: 0,
            strict_points: 0,
            zero_nu_supports: 0,
            violations: ALL_CHECKS.iter().map(|&c| (c, 0)).collect(),
            failures: Vec::new(),
        };
        for i in 0..iterations {
            let seed = self.config.seed.wrapping_add(i);
            self.one(seed, &mut report)?;
        }
        Ok(report)
    }

    fn one(&self, seed: u64, report: &mut CrossCheckReport) -> Result<()> {
        let support = random_convenient_support(&GeneratorConfig { seed, ..self.config })?;
        let coords = support.to_coords();
        let fail = |report: &mut CrossCheckReport, point: Option<&LatticePoint>, check: Check, detail: String| {
            *report.violations.get_mut(&check).unwrap() += 1;
            report.failures.push(Failure {
                seed,
                support: coords.clone(),
                point: point.map(|p| p.coords().to_vec()),
                check,
                detail,
            });
        };

        let poly = build_polyhedron(&support);
        let region = gamma_minus(&poly)?;
        let nu = region.newton_number();
        let slab = volumes_oracle(&support)?;
        let fan: Vec<Rational> = (0..=3).map(|i| region.volume_sum(i)).collect();
        if slab != fan {
            fail(report, None, Check::Oracle, format!("volumes: fan {fan:?}, slab {slab:?}"));
        }
        let oracle_nu = nu_oracle(&support)?;
        if oracle_nu != nu {
            fail(report, None, Check::Oracle, format!("nu: main {nu}, oracle {oracle_nu}"));
        }
        if nu < 0 {
            fail(report, None, Check::Nonnegative, format!("nu = {nu}"));
        }
        if nu == 0 {
            report.zero_nu_supports += 1;
        }
        let witness = nu_zero_witness(&support)?;
        if (witness != NuZeroWitness::Positive) != (nu == 0) {
            fail(report, None, Check::ZeroWitness, format!("witness {witness:?}, nu = {nu}"));
        }

        for p in self.sample_points_under(&poly, seed) {
            report.points_checked += 1;
            let after = newton_number(&add_point(&support, &p)?)?;
            if after > nu {
                fail(report, Some(&p), Check::Monotonicity, format!("nu {nu} -> {after}"));
            }
            let predicted = (self.predicate)(&poly, &p);
            if predicted != (after == nu) {
                fail(report, Some(&p), Check::Equivalence, format!("predicate {predicted}, nu {nu} -> {after}"));
            }
            let class = classify(&poly, &p)?;
            if class.is_equal() {
                report.equal_points += 1;
            } else {
                report.strict_points += 1;
            }
            if let Some(detail) = classification_problem(&class, &p) {
                fail(report, Some(&p), Check::Classification, detail);
            }
        }
        Ok(())
    }

    /// Up to `points_per_support` distinct lattice points under `Γ₊`, drawn
    /// uniformly without replacement from a stream separate from the
    /// support's.
    fn sample_points_under(&self, poly: &NewtonPolyhedron, seed: u64) -> Vec<LatticePoint> {
        let m = poly.intercepts_or_err().expect("generated supports are convenient");
        let mut under = Vec::new();
        for x in 0..m[0] {
            for y in 0..m[1] {
                for z in 0..m[2] {
                    let p = LatticePoint::new(&[x, y, z]).expect("box points are valid");
                    if !poly.contains(&p) {
                        under.push(p);
                    }
                }
            }
        }
        let mut rng = Draw::new(seed ^ 0xD1B5_4A32_D192_ED03);
        let take = self.points_per_support.min(under.len());
        for i in 0..take {
            let j = i + rng.below((under.len() - i) as u64) as usize;
            under.swap(i, j);
        }
        under.truncate(take);
        under
    }
}

fn classification_problem(class: &Classification, p: &LatticePoint) -> Option<String> {
    let zero: Vec<usize> = [2, 1, 0].into_iter().filter(|&a| p.coord(a) == 0).collect();
    match class {
        Classification::Equal(w) if w.apex.coord(w.plane.axis()) != 1 || p.coord(w.plane.axis()) != 0 => {
            Some(format!("bad unit-pyramid witness {w:?}"))
        }
        Classification::Equal(_) => None,
        Classification::Strict(StrictReason::InteriorPoint) if !zero.is_empty() => {
            Some("interior verdict for a point on a coordinate plane".into())
        }
        Classification::Strict(StrictReason::InteriorPoint) => None,
        Classification::Strict(StrictReason::PerPlane(list)) => {
            let planes: Vec<usize> = list.iter().map(|(h, _)| h.axis()).collect();
            if planes != zero {
                return Some(format!("planes {planes:?}, expected {zero:?}"));
            }
            list.iter().find_map(|(h, f)| match f {
                PlaneFailure::TallPyramid { height } if *height < 2 => Some(format!("{h}: height {height}")),
                PlaneFailure::MultiApex { count } if *count < 2 => Some(format!("{h}: {count} apices")),
                _ => None,
            })
        }
    }
}

/// Runs [`CrossCheck`] with the default predicate and 20 points per support.
pub fn cross_check(config: GeneratorConfig, iterations: u64) -> Result<CrossCheckReport> {
    CrossCheck::new(config).run(iterations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::{det3, frac};
    use crate::monotonicity::difference_skeleton;
    use proptest::prelude::*;
    use rand_core::RngCore;

    fn support(rows: &[[i64; 3]]) -> SupportSet {
        SupportSet::from_coords(rows).unwrap()
    }

    fn region(rows: &[[i64; 3]]) -> GammaMinusRegion {
        gamma_minus(&build_polyhedron(&support(rows))).unwrap()
    }

    #[test]
    fn splitmix_reference_values() {
        // First outputs for seed 0 as published with the algorithm.
        let mut r = SplitMix64::seed_from_u64(0);
        assert_eq!(r.next_u64(), 0xE220A8397B1DCDAF);
        assert_eq!(r.next_u64(), 0x6E789E6AA1B965F4);
    }

    #[test]
    fn volume_slab_examples() {
        assert_eq!(volume_slab(&region(&[[2, 0, 0], [0, 2, 0], [0, 0, 2]])).unwrap(), frac(4, 3));
        assert_eq!(volume_slab(&region(&[[2, 0, 0], [0, 2, 0], [0, 0, 1]])).unwrap(), frac(2, 3));
        assert_eq!(volume_slab(&region(&[[0, 0, 0]])).unwrap(), int(0));
    }

    #[test]
    fn area_slab_examples() {
        let s = SupportSet::from_coords(&[[4, 0], [1, 1], [0, 4]]).unwrap();
        // Two triangles from the origin: 4·1/2 + 4·1/2.
        assert_eq!(area_slab_2d(&s).unwrap(), int(4));
        let s = SupportSet::from_coords(&[[6, 0], [2, 1], [0, 4]]).unwrap();
        assert_eq!(area_slab_2d(&s).unwrap(), int(7));
    }

    #[test]
    fn nu_oracle_examples() {
        assert_eq!(nu_oracle(&support(&[[6, 0, 0], [0, 6, 0], [2, 0, 1], [0, 2, 1], [0, 0, 4]])).unwrap(), 15);
        assert_eq!(nu_oracle(&support(&[[2, 0, 0], [0, 3, 0], [0, 0, 4]])).unwrap(), 6);
        assert_eq!(nu_oracle(&support(&[[0, 0, 0]])).unwrap(), 0);
        assert_eq!(nu_oracle(&SupportSet::from_coords(&[[5]]).unwrap()).unwrap(), 4);
        assert_eq!(nu_oracle(&support(&[[1, 1, 0], [0, 0, 2]])), Err(Error::NotConvenient));
    }

    #[test]
    fn generator_examples() {
        let forced = random_convenient_support(&GeneratorConfig::new(7, 1, 0)).unwrap();
        assert_eq!(forced, support(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]));
        let config = GeneratorConfig::new(42, 12, 6);
        let a = random_convenient_support(&config).unwrap();
        assert_eq!(a, random_convenient_support(&config).unwrap());
        assert!(a.len() <= 9);
        assert!(build_polyhedron(&a).is_convenient());
        assert_eq!(a, support(&[[0, 0, 7], [0, 2, 4], [0, 7, 0], [2, 0, 0]]));
        assert_eq!(newton_number(&a).unwrap(), 29);
        assert!(random_convenient_support(&GeneratorConfig::new(1, 0, 0)).is_err());
        let config = GeneratorConfig { dimension: 4, ..config };
        assert!(matches!(random_convenient_support(&config), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn trivial_population_is_all_zero() {
        let report = cross_check(GeneratorConfig::new(3, 1, 0), 20).unwrap();
        assert!(report.is_ok(), "{:?}", report.failures);
        assert_eq!(report.zero_nu_supports, 20);
    }

    #[test]
    fn small_cross_check_passes() {
        let report = cross_check(GeneratorConfig::new(42, 12, 6), 25).unwrap();
        assert!(report.is_ok(), "{:?}", report.failures);
        assert!(report.points_checked > 0);
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["violations"]["equivalence"], 0);
    }

    #[test]
    fn mutant_predicate_is_caught() {
        let report = CrossCheck::new(GeneratorConfig::new(42, 12, 6))
            .predicate(|poly, p| {
                difference_skeleton(poly, p)
                    .map(|sk| sk.planes.iter().any(|o| matches!(o.height(), Some(h) if h <= 2)))
                    .unwrap_or(false)
            })
            .run(50)
            .unwrap();
        assert!(report.violations_of(Check::Equivalence) > 0);
        assert!(!report.is_ok());
    }

    #[test]
    fn cross_check_rejects_bad_arguments() {
        assert!(cross_check(GeneratorConfig::new(1, 5, 2), 0).is_err());
        let config = GeneratorConfig { dimension: 2, ..GeneratorConfig::new(1, 5, 2) };
        assert!(cross_check(config, 1).is_err());
    }

    fn q(c: [i64; 3]) -> RationalPoint {
        RationalPoint::from_ints(&c)
    }

    proptest! {
        #[test]
        fn simpson_is_exact_on_tetrahedra(pts in prop::array::uniform4(prop::array::uniform3(0i64..20))) {
            let rel = |a: [i64; 3]| [a[0] - pts[0][0], a[1] - pts[0][1], a[2] - pts[0][2]];
            let six = det3(rel(pts[1]), rel(pts[2]), rel(pts[3])).abs() as i64;
            let vol = hull_volume_slab(&pts.map(q));
            prop_assert_eq!(vol, frac(six, 6));
        }

        #[test]
        fn slab_matches_fan_on_random_supports(seed in any::<u64>()) {
            let s = random_convenient_support(&GeneratorConfig::new(seed, 8, 5)).unwrap();
            let r = gamma_minus(&build_polyhedron(&s)).unwrap();
            prop_assert_eq!(&volume_slab(&r).unwrap(), r.volume());
            prop_assert_eq!(nu_oracle(&s).unwrap(), r.newton_number());
        }

        #[test]
        fn generator_is_sound(seed in any::<u64>(), m in 1i64..12, k in 0usize..8) {
            let s = random_convenient_support(&GeneratorConfig::new(seed, m, k)).unwrap();
            let poly = build_polyhedron(&s);
            prop_assert!(poly.is_convenient());
            prop_assert!(s.len() <= 3 + k);
            for a in s.points() {
                for b in s.points() {
                    prop_assert!(a == b || !a.dominates(b));
                }
            }
        }
    }
}
