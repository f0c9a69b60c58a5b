//! Small standard triangulations used by the fixture library and tests.

use crate::complex::SimplicialComplex;

fn named(facets: &[&[&str]]) -> SimplicialComplex {
    let lists: Vec<Vec<String>> = facets
        .iter()
        .map(|f| f.iter().map(|v| v.to_string()).collect())
        .collect();
    SimplicialComplex::build(&lists).unwrap()
}

/// Circle with three vertices.
pub fn circle3() -> SimplicialComplex {
    named(&[&["a", "b"], &["b", "c"], &["a", "c"]])
}

/// Boundary of the tetrahedron: the minimal 2-sphere.
pub fn sphere4() -> SimplicialComplex {
    named(&[
        &["a", "b", "c"],
        &["a", "b", "d"],
        &["a", "c", "d"],
        &["b", "c", "d"],
    ])
}

/// The 7-vertex torus: vertices Z/7, facets {i, i+1, i+3} and {i, i+2, i+3}.
pub fn torus7() -> SimplicialComplex {
    let v = |i: u32| format!("t{}", i % 7);
    let mut facets = Vec::new();
    for i in 0..7 {
        facets.push(vec![v(i), v(i + 1), v(i + 3)]);
        facets.push(vec![v(i), v(i + 2), v(i + 3)]);
    }
    SimplicialComplex::build(&facets).unwrap()
}

/// The 6-vertex projective plane (icosahedron modulo the antipode).
pub fn rp2_6() -> SimplicialComplex {
    named(&[
        &["p1", "p2", "p3"],
        &["p1", "p2", "p4"],
        &["p1", "p3", "p5"],
        &["p1", "p4", "p6"],
        &["p1", "p5", "p6"],
        &["p2", "p3", "p6"],
        &["p2", "p4", "p5"],
        &["p2", "p5", "p6"],
        &["p3", "p4", "p5"],
        &["p3", "p4", "p6"],
    ])
}

/// Octahedron boundary: vertices x±, y±, z±, one facet per sign choice.
pub fn octahedron() -> SimplicialComplex {
    let mut facets = Vec::new();
    for sx in ["x+", "x-"] {
        for sy in ["y+", "y-"] {
            for sz in ["z+", "z-"] {
                facets.push(vec![sx.to_string(), sy.to_string(), sz.to_string()]);
            }
        }
    }
    SimplicialComplex::build(&facets).unwrap()
}

/// Wedge of two triangles along a shared vertex.
pub fn wedge_triangles() -> SimplicialComplex {
    named(&[&["v", "a", "b"], &["v", "c", "d"]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_vectors() {
        assert_eq!(circle3().f_vector(), vec![3, 3]);
        assert_eq!(sphere4().f_vector(), vec![4, 6, 4]);
        assert_eq!(torus7().f_vector(), vec![7, 21, 14]);
        assert_eq!(torus7().euler_characteristic(), 0);
        assert_eq!(rp2_6().f_vector(), vec![6, 15, 10]);
        assert_eq!(rp2_6().euler_characteristic(), 1);
        assert_eq!(octahedron().f_vector(), vec![6, 12, 8]);
    }

    #[test]
    fn closed_surfaces_have_two_cofaces_per_edge() {
        for x in [sphere4(), torus7(), rp2_6(), octahedron()] {
            let mut counts = vec![0usize; x.count(1)];
            for idx in 0..x.count(2) as u32 {
                for (f, _) in x.boundary_of(2, idx) {
                    counts[f as usize] += 1;
                }
            }
            assert!(counts.iter().all(|c| *c == 2));
        }
    }
}
