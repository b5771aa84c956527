//! Triangulated boundary of `Γ₋` as an ASCII OBJ mesh.
//!
//! The surface consists of the compact facets of `Γ₊` and the pieces of `Γ₋`
//! in the three coordinate planes. All triangles are oriented with normals
//! pointing out of `Γ₋`.

use std::collections::BTreeMap;
use std::fmt::Write;

use newton_number::{GammaMinusRegion, NewtonPolyhedron, Rational, RationalPoint};
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Debug, Default)]
pub struct Mesh {
    pub vertices: Vec<RationalPoint>,
    pub triangles: Vec<[usize; 3]>,
    index: BTreeMap<RationalPoint, usize>,
}

fn sub(a: &RationalPoint, b: &RationalPoint) -> [Rational; 3] {
    [0, 1, 2].map(|i| a.coord(i) - b.coord(i))
}

fn cross(a: &[Rational; 3], b: &[Rational; 3]) -> [Rational; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot(a: &[Rational; 3], b: &[Rational; 3]) -> Rational {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

impl Mesh {
    fn vertex(&mut self, p: &RationalPoint) -> usize {
        if let Some(&i) = self.index.get(p) {
            return i;
        }
        self.vertices.push(p.clone());
        self.index.insert(p.clone(), self.vertices.len() - 1);
        self.vertices.len() - 1
    }

    /// Fans a polygon from its first vertex, which must see every edge.
    /// Triangles are flipped so that their normals point along `outward`;
    /// degenerate ones are dropped.
    fn add_fan(&mut self, cycle: &[RationalPoint], outward: &[Rational; 3]) {
        for k in 1..cycle.len().saturating_sub(1) {
            let (a, b, c) = (&cycle[0], &cycle[k], &cycle[k + 1]);
            let side = dot(&cross(&sub(b, a), &sub(c, a)), outward);
            if side.is_zero() {
                continue;
            }
            let tri = [self.vertex(a), self.vertex(b), self.vertex(c)];
            self.triangles.push(if side.is_positive() { tri } else { [tri[0], tri[2], tri[1]] });
        }
    }

    pub fn to_obj(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            let c: Vec<f64> = v.coords().iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
            writeln!(out, "v {} {} {}", c[0], c[1], c[2]).unwrap();
        }
        for t in &self.triangles {
            writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1).unwrap();
        }
        out
    }
}

pub fn build(poly: &NewtonPolyhedron, region: &GammaMinusRegion) -> Mesh {
    let mut mesh = Mesh::default();
    if region.is_empty() {
        return mesh;
    }
    for facet in poly.compact_facets() {
        let cycle: Vec<RationalPoint> = facet.vertices.iter().map(|v| v.to_rational()).collect();
        // Γ₋ lies on the side ⟨w,x⟩ < c, so its outward normal is +w.
        let w: Vec<Rational> = facet.halfspace.normal().iter().map(|&x| Rational::from_integer(x.into())).collect();
        mesh.add_fan(&cycle, &[w[0].clone(), w[1].clone(), w[2].clone()]);
    }
    for piece in region.pieces().iter().filter(|p| p.axes.len() == 2) {
        let axis = (0..3).find(|a| !piece.axes.contains(a)).unwrap();
        let mut outward = [Rational::zero(), Rational::zero(), Rational::zero()];
        outward[axis] = Rational::from_integer((-1).into());
        // The outline starts at the origin, from which the piece is
        // star-shaped.
        mesh.add_fan(&piece.outline, &outward);
    }
    mesh
}

#[cfg(test)]
mod tests {
    use super::*;
    use newton_number::{build_polyhedron, gamma_minus, SupportSet};

    fn mesh_of(rows: &[[i64; 3]]) -> Mesh {
        let poly = build_polyhedron(&SupportSet::from_coords(rows).unwrap());
        let region = gamma_minus(&poly).unwrap();
        build(&poly, &region)
    }

    /// Signed volume from the divergence theorem; positive iff outward.
    fn enclosed_volume(mesh: &Mesh) -> Rational {
        let origin = RationalPoint::from_ints(&[0, 0, 0]);
        let mut six = Rational::zero();
        for t in &mesh.triangles {
            let [a, b, c] = t.map(|i| sub(&mesh.vertices[i], &origin));
            six += dot(&a, &cross(&b, &c));
        }
        six / Rational::from_integer(6.into())
    }

    #[test]
    fn simplex_mesh_is_closed_and_outward() {
        let mesh = mesh_of(&[[2, 0, 0], [0, 2, 0], [0, 0, 2]]);
        assert_eq!(mesh.vertices.len(), 4);
        assert_eq!(mesh.triangles.len(), 4);
        assert_eq!(enclosed_volume(&mesh), Rational::new(4.into(), 3.into()));
    }

    #[test]
    fn example_mesh_encloses_the_region() {
        let rows = [[6, 0, 0], [0, 6, 0], [2, 0, 1], [0, 2, 1], [0, 0, 4]];
        let mesh = mesh_of(&rows);
        let region = gamma_minus(&build_polyhedron(&SupportSet::from_coords(&rows).unwrap())).unwrap();
        assert_eq!(&enclosed_volume(&mesh), region.volume());
        // Every edge is shared by exactly two triangles, once in each direction.
        let mut edges = BTreeMap::new();
        for t in &mesh.triangles {
            for k in 0..3 {
                *edges.entry((t[k], t[(k + 1) % 3])).or_insert(0) += 1;
            }
        }
        for (&(a, b), &n) in &edges {
            assert_eq!(n, 1);
            assert_eq!(edges.get(&(b, a)), Some(&1), "edge {a}-{b}");
        }
    }

    #[test]
    fn empty_region_has_empty_mesh() {
        let mesh = mesh_of(&[[0, 0, 0]]);
        assert!(mesh.vertices.is_empty());
        assert_eq!(mesh.to_obj(), "");
    }

    #[test]
    fn obj_text() {
        let text = mesh_of(&[[2, 0, 0], [0, 2, 0], [0, 0, 1]]).to_obj();
        assert!(text.lines().any(|l| l == "v 2 0 0"));
        assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 4);
    }
}
