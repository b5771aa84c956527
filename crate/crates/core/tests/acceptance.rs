//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use newton_number::exactgeom::{convex_hull_2d, convex_hull_3d, int, polygon_area};
use newton_number::oracle::Check;
use newton_number::{
    add_point, build_polyhedron, classify, cross_check, newton_number, Classification, CoordinatePlane,
    GeneratorConfig, LatticePoint, PlaneFailure, RationalPoint, StrictReason, SupportSet,
};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

type Outcome = Result<String, String>;

fn support(rows: &[[i64; 3]]) -> SupportSet {
    SupportSet::from_coords(rows).unwrap()
}

fn pt(c: [i64; 3]) -> LatticePoint {
    LatticePoint::new(&c).unwrap()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, format!("took {elapsed:?}, limit {limit:?}"))
}

fn example_singularity() -> Outcome {
    let start = Instant::now();
    let a = support(&[[6, 0, 0], [0, 6, 0], [2, 0, 1], [0, 2, 1], [0, 0, 4]]);
    let p = pt([3, 2, 0]);
    let before = newton_number(&a).map_err(|e| e.to_string())?;
    let after = newton_number(&add_point(&a, &p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(before == 15, format!("nu = {before}, expected 15"))?;
    ensure(after == 13, format!("nu after = {after}, expected 13"))?;
    let class = classify(&build_polyhedron(&a), &p).map_err(|e| e.to_string())?;
    let expected = Classification::Strict(StrictReason::PerPlane(vec![(
        CoordinatePlane(2),
        PlaneFailure::MultiApex { count: 2 },
    )]));
    ensure(class == expected, format!("classification {class:?}"))?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("nu 15 -> 13, z=0 multi_apex(2), {:?}", start.elapsed()))
}

fn fermat_grid() -> Outcome {
    let start = Instant::now();
    for a in 1..=8 {
        for b in 1..=8 {
            for c in 1..=8 {
                let nu = newton_number(&support(&[[a, 0, 0], [0, b, 0], [0, 0, c]])).map_err(|e| e.to_string())?;
                ensure(nu == (a - 1) * (b - 1) * (c - 1), format!("({a},{b},{c}): nu = {nu}"))?;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(5))?;
    Ok(format!("512 cases, {:?}", start.elapsed()))
}

struct Population {
    report: newton_number::CrossCheckReport,
    elapsed: Duration,
}

fn population() -> Result<Population, String> {
    let start = Instant::now();
    let report = cross_check(GeneratorConfig::new(42, 12, 6), 1000).map_err(|e| e.to_string())?;
    Ok(Population { report, elapsed: start.elapsed() })
}

fn violations(pop: &Population, checks: &[Check]) -> Result<(), String> {
    for &c in checks {
        let n = pop.report.violations_of(c);
        if n > 0 {
            let first = pop.report.failures.iter().find(|f| f.check == c);
            return Err(format!("{n} {c:?} violations, first {first:?}"));
        }
    }
    Ok(())
}

fn theorem_suite(pop: &Population) -> Outcome {
    violations(pop, &[Check::Monotonicity, Check::Equivalence, Check::Classification])?;
    within(pop.elapsed, Duration::from_secs(120))?;
    let r = &pop.report;
    ensure(r.points_checked > 0 && r.equal_points > 0 && r.strict_points > 0, "degenerate population")?;
    Ok(format!(
        "{} supports, {} points ({} equal, {} strict), {:?}",
        r.iterations, r.points_checked, r.equal_points, r.strict_points, pop.elapsed
    ))
}

fn corollary_suite(pop: &Population) -> Outcome {
    violations(pop, &[Check::Nonnegative, Check::ZeroWitness])?;
    Ok(format!("{} supports with nu = 0", pop.report.zero_nu_supports))
}

fn oracle_suite(pop: &Population) -> Outcome {
    violations(pop, &[Check::Oracle])?;
    Ok(format!("{} supports agree on V0..V3 and nu", pop.report.iterations))
}

fn pyramid_formula() -> Outcome {
    let mut rng = SplitMix64::seed_from_u64(2024);
    let mut draw = |n: u64| (rng.next_u64() % n) as i64;
    let mut done = 0;
    while done < 200 {
        let axis = draw(3) as usize;
        let (u, v) = ((axis + 1) % 3, (axis + 2) % 3);
        let count = 3 + draw(6);
        let base: Vec<[i64; 3]> = (0..count)
            .map(|_| {
                let mut c = [0; 3];
                c[u] = draw(15);
                c[v] = draw(15);
                c
            })
            .collect();
        let planar: Vec<RationalPoint> =
            base.iter().map(|c| RationalPoint::from_ints(&[c[u], c[v]])).collect();
        let hull = convex_hull_2d(&planar);
        if hull.dimension < 2 {
            continue;
        }
        let area = polygon_area(&hull.vertices);
        let height = 1 + draw(12);
        let mut apex = [0; 3];
        apex[axis] = height;
        apex[u] = draw(15);
        apex[v] = draw(15);
        let mut pts: Vec<RationalPoint> = base.iter().map(|c| RationalPoint::from_ints(c)).collect();
        pts.push(RationalPoint::from_ints(&apex));
        let vol = convex_hull_3d(&pts).volume();
        let expected = &area * int(height) / int(3);
        ensure(vol == expected, format!("base {base:?} apex {apex:?}: {vol} vs {expected}"))?;
        done += 1;
    }
    Ok("200 pyramids".into())
}

fn sufficiency_cases() -> Outcome {
    let cases: [(&str, &[[i64; 3]], [i64; 3]); 4] = [
        ("plane", &[[3, 0, 0], [0, 3, 0], [0, 0, 1]], [1, 1, 0]),
        ("axis", &[[2, 0, 0], [0, 2, 0], [0, 0, 1]], [1, 0, 0]),
        ("axis", &[[1, 0, 0], [0, 1, 0], [0, 0, 2]], [0, 0, 1]),
        ("origin", &[[1, 0, 0], [0, 1, 0], [0, 0, 1]], [0, 0, 0]),
    ];
    for (kind, rows, p) in cases {
        let a = support(rows);
        let p = pt(p);
        let class = classify(&build_polyhedron(&a), &p).map_err(|e| e.to_string())?;
        let Classification::Equal(w) = class else {
            return Err(format!("{kind} {rows:?} {p}: {class:?}"));
        };
        let before = newton_number(&a).map_err(|e| e.to_string())?;
        let after = newton_number(&add_point(&a, &p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(before == after, format!("{kind} {p}: nu {before} -> {after}"))?;
        ensure(w.apex.coord(w.plane.axis()) == 1, format!("{kind} {p}: apex {}", w.apex))?;
        match kind {
            "origin" => ensure(
                w.apex.coords().iter().sum::<i64>() == 1,
                format!("apex {} is not a unit vector", w.apex),
            )?,
            "axis" => {
                let zeros: Vec<usize> = p.zero_axes().collect();
                ensure(
                    zeros.iter().any(|&i| w.apex.coord(i) == 0),
                    format!("apex {} not in a plane through the axis of {p}", w.apex),
                )?
            }
            _ => {}
        }
    }
    Ok("plane, axis and origin cases preserve nu".into())
}

fn main() -> ExitCode {
    let mut results: Vec<(&str, Outcome)> = vec![
        ("1 example singularity", example_singularity()),
        ("2 Fermat family", fermat_grid()),
    ];
    match population() {
        Ok(pop) => {
            results.push(("3 theorem equivalence", theorem_suite(&pop)));
            results.push(("4 corollary", corollary_suite(&pop)));
            results.push(("5 oracle agreement", oracle_suite(&pop)));
        }
        Err(e) => {
            for name in ["3 theorem equivalence", "4 corollary", "5 oracle agreement"] {
                results.push((name, Err(e.clone())));
            }
        }
    }
    results.push(("6 pyramid volume", pyramid_formula()));
    results.push(("7 sufficiency cases", sufficiency_cases()));

    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(msg) => println!("PASS  {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name}: {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
