//! Built-in stratified fixtures and group-action fixtures used by the
//! verification harness and the CLI.

use crate::action::SimplicialAction;
use crate::error::{Error, Result};
use crate::filtration::{derive_strata, Filtration, Stratification};
use crate::simplex::Simplex;
use crate::triangulations;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug)]
pub struct FixtureInfo {
    pub name: &'static str,
    pub description: &'static str,
    /// deliberately fails pseudomanifold validation
    pub counterexample: bool,
}

pub const FIXTURES: &[FixtureInfo] = &[
    FixtureInfo {
        name: "point",
        description: "a single vertex",
        counterexample: false,
    },
    FixtureInfo {
        name: "circle",
        description: "S^1 with three vertices",
        counterexample: false,
    },
    FixtureInfo {
        name: "sphere",
        description: "boundary of the tetrahedron",
        counterexample: false,
    },
    FixtureInfo {
        name: "torus",
        description: "the 7-vertex torus",
        counterexample: false,
    },
    FixtureInfo {
        name: "rp2",
        description: "the 6-vertex projective plane",
        counterexample: false,
    },
    FixtureInfo {
        name: "octahedron",
        description: "octahedron 2-sphere (carries the antipodal action)",
        counterexample: false,
    },
    FixtureInfo {
        name: "wedge",
        description: "two triangles glued at a vertex, that vertex singular",
        counterexample: false,
    },
    FixtureInfo {
        name: "cone-s1",
        description: "cone on the circle, apex singular",
        counterexample: false,
    },
    FixtureInfo {
        name: "cone-sphere",
        description: "cone on the 2-sphere, apex singular",
        counterexample: false,
    },
    FixtureInfo {
        name: "cone-t2",
        description: "cone on the torus, apex singular",
        counterexample: false,
    },
    FixtureInfo {
        name: "cone-rp2",
        description: "cone on the projective plane, apex singular",
        counterexample: false,
    },
    FixtureInfo {
        name: "sigma-s1",
        description: "suspension of the circle, poles singular",
        counterexample: false,
    },
    FixtureInfo {
        name: "sigma-sphere",
        description: "suspension of the 2-sphere, poles singular",
        counterexample: false,
    },
    FixtureInfo {
        name: "sigma-t2",
        description: "suspension of the torus, two codimension-3 points",
        counterexample: false,
    },
    FixtureInfo {
        name: "sigma-rp2",
        description: "suspension of the projective plane, poles singular",
        counterexample: false,
    },
    FixtureInfo {
        name: "cc-s1",
        description: "double cone on the circle: depth-two stratification",
        counterexample: false,
    },
    FixtureInfo {
        name: "bad-codim1",
        description: "cone on the circle with a codimension-one stratum (invalid on purpose)",
        counterexample: true,
    },
];

pub const ACTIONS: &[(&str, &str)] = &[
    ("antipodal", "antipodal map on the octahedron"),
    ("rotation-circle", "one-step rotation of the 3-vertex circle"),
    ("rotation-torus", "order-7 shift of the 7-vertex torus"),
    ("pole-swap", "swap of the two suspension points of sigma-t2"),
];

pub fn fixture(name: &str) -> Result<Stratification> {
    let strat = match name {
        "point" => Stratification::trivial(
            crate::complex::SimplicialComplex::build(&[vec!["pt".into()]]).unwrap(),
        ),
        "circle" => Stratification::trivial(triangulations::circle3()),
        "sphere" => Stratification::trivial(triangulations::sphere4()),
        "torus" => Stratification::trivial(triangulations::torus7()),
        "rp2" => Stratification::trivial(triangulations::rp2_6()),
        "octahedron" => Stratification::trivial(triangulations::octahedron()),
        "wedge" => {
            let complex = triangulations::wedge_triangles();
            let v = complex.vertex_by_label("v").unwrap();
            let mut skeleta = BTreeMap::new();
            skeleta.insert(0usize, vec![Simplex::vertex(v)]);
            derive_strata(Filtration::from_skeleta(complex, &skeleta)?)
        }
        "cone-s1" => cone_of(triangulations::circle3())?,
        "cone-sphere" => cone_of(triangulations::sphere4())?,
        "cone-t2" => cone_of(triangulations::torus7())?,
        "cone-rp2" => cone_of(triangulations::rp2_6())?,
        "sigma-s1" => suspension_of(triangulations::circle3())?,
        "sigma-sphere" => suspension_of(triangulations::sphere4())?,
        "sigma-t2" => suspension_of(triangulations::torus7())?,
        "sigma-rp2" => suspension_of(triangulations::rp2_6())?,
        "cc-s1" => {
            let inner = Stratification::trivial(triangulations::circle3()).cone("p")?;
            inner.stratification.cone("q")?.stratification
        }
        "bad-codim1" => {
            let complex = triangulations::circle3().cone("v")?;
            let apex = complex.vertex_by_label("v").unwrap();
            let a = complex.vertex_by_label("a").unwrap();
            let b = complex.vertex_by_label("b").unwrap();
            let mut skeleta = BTreeMap::new();
            skeleta.insert(0usize, vec![Simplex::vertex(apex)]);
            skeleta.insert(
                1usize,
                vec![Simplex::vertex(apex), Simplex::new(vec![a, b]).unwrap()],
            );
            derive_strata(Filtration::from_skeleta(complex, &skeleta)?)
        }
        _ => return Err(Error::UnknownFixture(name.to_string())),
    };
    Ok(strat)
}

fn cone_of(base: crate::complex::SimplicialComplex) -> Result<Stratification> {
    Ok(Stratification::trivial(base).cone("v")?.stratification)
}

fn suspension_of(base: crate::complex::SimplicialComplex) -> Result<Stratification> {
    Ok(Stratification::trivial(base)
        .suspension("n", "s")?
        .stratification)
}

pub fn action(name: &str) -> Result<SimplicialAction> {
    match name {
        "antipodal" => {
            let strat = fixture("octahedron")?;
            let mut m = BTreeMap::new();
            for (a, b) in [("x+", "x-"), ("y+", "y-"), ("z+", "z-")] {
                m.insert(a.to_string(), b.to_string());
                m.insert(b.to_string(), a.to_string());
            }
            SimplicialAction::from_label_maps(strat, &[m])
        }
        "rotation-circle" => {
            let strat = fixture("circle")?;
            let mut m = BTreeMap::new();
            m.insert("a".into(), "b".into());
            m.insert("b".into(), "c".into());
            m.insert("c".into(), "a".into());
            SimplicialAction::from_label_maps(strat, &[m])
        }
        "rotation-torus" => {
            let strat = fixture("torus")?;
            let mut m = BTreeMap::new();
            for i in 0..7u32 {
                m.insert(format!("t{i}"), format!("t{}", (i + 1) % 7));
            }
            SimplicialAction::from_label_maps(strat, &[m])
        }
        "pole-swap" => {
            let strat = fixture("sigma-t2")?;
            let mut m = BTreeMap::new();
            m.insert("n".to_string(), "s".to_string());
            m.insert("s".to_string(), "n".to_string());
            SimplicialAction::from_label_maps(strat, &[m])
        }
        _ => Err(Error::UnknownAction(name.to_string())),
    }
}

/// Non-counterexample fixtures with at least one singular stratum.
pub fn stratified_fixture_names() -> Vec<&'static str> {
    FIXTURES
        .iter()
        .filter(|f| !f.counterexample)
        .map(|f| f.name)
        .filter(|n| {
            fixture(n)
                .map(|s| s.singular_strata().count() > 0)
                .unwrap_or(false)
        })
        .collect()
}

/// Every non-counterexample fixture, including the unstratified ones.
pub fn standard_fixture_names() -> Vec<&'static str> {
    FIXTURES
        .iter()
        .filter(|f| !f.counterexample)
        .map(|f| f.name)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_fixtures_validate_or_are_flagged() {
        for info in FIXTURES {
            let s = fixture(info.name).unwrap();
            let report = s.validate();
            if info.counterexample {
                assert!(!report.all_pass(), "{} should fail", info.name);
            } else {
                assert!(report.all_pass(), "{} should validate", info.name);
            }
        }
    }

    #[test]
    fn depths() {
        assert_eq!(fixture("circle").unwrap().depth(), 0);
        assert_eq!(fixture("cone-s1").unwrap().depth(), 1);
        assert_eq!(fixture("sigma-t2").unwrap().depth(), 1);
        assert_eq!(fixture("cc-s1").unwrap().depth(), 2);
    }

    #[test]
    fn sigma_t2_shape() {
        let s = fixture("sigma-t2").unwrap();
        assert_eq!(s.complex().f_vector(), vec![9, 35, 56, 28]);
        assert_eq!(s.complex().euler_characteristic(), 2);
        assert_eq!(s.strata().len(), 3);
        assert_eq!(s.singular_strata().count(), 2);
        for st in s.singular_strata() {
            assert_eq!(s.codim(st), 3);
        }
    }

    #[test]
    fn restrict_suspension_to_one_cone() {
        let s = fixture("sigma-t2").unwrap();
        let north = s.complex().vertex_by_label("n").unwrap();
        let gens: Vec<Simplex> = s
            .complex()
            .facets()
            .iter()
            .filter(|f| f.contains(north))
            .cloned()
            .collect();
        let r = s.restrict(&gens).unwrap();
        // the north cone over the torus: one singular point, depth one
        assert_eq!(r.stratification.depth(), 1);
        assert_eq!(r.stratification.strata().len(), 2);
        assert_eq!(r.stratification.singular_strata().count(), 1);
        assert_eq!(r.stratification.complex().count(3), 14);
    }

    #[test]
    fn link_of_suspension_pole_is_base() {
        let s = fixture("sigma-t2").unwrap();
        let n = s.complex().vertex_by_label("n").unwrap();
        let link = s.stratum_link(&Simplex::vertex(n)).unwrap();
        assert_eq!(link.complex().f_vector(), vec![7, 21, 14]);
        assert_eq!(link.depth(), 0);
    }

    #[test]
    fn actions_build() {
        for (name, _) in ACTIONS {
            let a = action(name).unwrap();
            assert!(a.order() >= 1);
            assert!(a.validate().simplicial);
        }
        // the pole swap is regular as given
        assert!(action("pole-swap").unwrap().validate().all_pass());
    }

    #[test]
    fn unknown_names_error() {
        assert!(matches!(fixture("nope"), Err(Error::UnknownFixture(_))));
        assert!(matches!(action("nope"), Err(Error::UnknownAction(_))));
    }
}
