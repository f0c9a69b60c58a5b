#![allow(clippy::needless_range_loop)]

//! Property tests over randomized complexes, chains, and perversities.

use proptest::prelude::*;
use std::collections::BTreeSet;
use strathom::chain::Chain;
use strathom::coeff::Int;
use strathom::complex::SimplicialComplex;
use strathom::filtration::Stratification;
use strathom::ih::ordinary_homology;
use strathom::perversity::Perversity;

fn arb_complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0u32..8, 1..=4usize), 1..8).prop_map(
        |facets| {
            let lists: Vec<Vec<String>> = facets
                .into_iter()
                .map(|f: BTreeSet<u32>| f.into_iter().map(|v| format!("v{v}")).collect())
                .collect();
            SimplicialComplex::build(&lists).expect("sets have no duplicates")
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// ∂∂ = 0 for arbitrary chains.
    #[test]
    fn boundary_squares_to_zero(
        complex in arb_complex(),
        picks in prop::collection::vec((0usize..64, -9i64..=9), 1..12),
        degree_seed in 0usize..4,
    ) {
        let d = degree_seed.min(complex.dim());
        let mut chain = Chain::zero(d);
        let count = complex.count(d);
        for (pick, coeff) in picks {
            chain.add_term(complex.simplex(d, (pick % count) as u32).clone(), Int::from(coeff));
        }
        prop_assert!(chain.boundary().boundary().is_zero());
    }

    /// Coning adds the apex to every face: f_i(cX) = f_i(X) + f_{i-1}(X).
    #[test]
    fn cone_f_vector_identity(complex in arb_complex()) {
        let cone = complex.cone("apexlabel").unwrap();
        let f = complex.f_vector();
        let g = cone.f_vector();
        prop_assert_eq!(g.len(), f.len() + 1);
        for d in 0..g.len() {
            let expect = f.get(d).copied().unwrap_or(0)
                + if d == 0 { 1 } else { f.get(d - 1).copied().unwrap_or(0) };
            prop_assert_eq!(g[d], expect);
        }
    }

    /// Barycentric subdivision preserves the Euler characteristic and all
    /// Betti numbers of ordinary homology.
    #[test]
    fn subdivision_preserves_homology(complex in arb_complex()) {
        let sd = complex.barycentric_subdivision().complex;
        prop_assert_eq!(sd.euler_characteristic(), complex.euler_characteristic());
        let a = ordinary_homology(&complex, false);
        let b = ordinary_homology(&sd, false);
        prop_assert_eq!(a, b);
    }

    /// Duality of perversities is an involution for arbitrary values.
    #[test]
    fn dual_is_involution(values in prop::collection::vec(-10i64..=10, 1..6)) {
        let s = strathom::fixtures::fixture("cc-s1").unwrap();
        let p = {
            let mut k = 0;
            Perversity::new(&s, |_| {
                let v = values[k % values.len()];
                k += 1;
                v
            })
        };
        prop_assert_eq!(p.dual(&s).dual(&s), p);
    }

    /// The interval product triangulates X × I: Euler characteristic 0 for
    /// X without boundary effects... χ(X × I) = χ(X), and both end
    /// inclusions compose with the projection to the identity.
    #[test]
    fn interval_product_shape(complex in arb_complex()) {
        let prod = complex.interval_product();
        prop_assert_eq!(prod.complex.euler_characteristic(), complex.euler_characteristic());
        for v in 0..complex.vertex_count() {
            prop_assert_eq!(prod.projection[prod.bottom[v] as usize] as usize, v);
            prop_assert_eq!(prod.projection[prod.top[v] as usize] as usize, v);
        }
    }

    /// Restriction never increases depth.
    #[test]
    fn restriction_depth_monotone(keep in prop::collection::vec(any::<bool>(), 28)) {
        let s = strathom::fixtures::fixture("sigma-t2").unwrap();
        let facets: Vec<_> = s
            .complex()
            .facets()
            .iter()
            .enumerate()
            .filter(|(i, _)| keep[*i % keep.len()])
            .map(|(_, f)| f.clone())
            .collect();
        prop_assume!(!facets.is_empty());
        let r = s.restrict(&facets).unwrap();
        prop_assert!(r.stratification.depth() <= s.depth());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Unit-pivot reduction preserves homology: the residual complex gives
    /// the same Betti numbers and torsion as plain dense Smith normal form
    /// on the unreduced boundary matrices.
    #[test]
    fn reduction_matches_plain_smith_form(complex in arb_complex()) {
        use strathom::matrix::{smith_normal_form, SparseVec};
        use strathom::reduce::Reducer;

        let top = complex.dim();
        let sizes: Vec<usize> = (0..=top).map(|d| complex.count(d)).collect();
        let mut sparse: Vec<Vec<SparseVec>> = vec![Vec::new()];
        let mut dense: Vec<Vec<Vec<Int>>> = vec![Vec::new()];
        for d in 1..=top {
            let mut cols = Vec::new();
            let mut m = vec![vec![Int::ZERO; complex.count(d)]; complex.count(d - 1)];
            for idx in 0..complex.count(d) as u32 {
                let mut col: SparseVec = complex
                    .boundary_of(d, idx)
                    .iter()
                    .map(|(f, s)| (*f, Int::from(*s)))
                    .collect();
                col.sort_by_key(|e| e.0);
                for (f, v) in &col {
                    m[*f as usize][idx as usize] = v.clone();
                }
                cols.push(col);
            }
            sparse.push(cols);
            dense.push(m);
        }

        let mut reducer = Reducer::new(sizes.clone(), sparse, false);
        reducer.reduce();
        let res = reducer.residual();
        for d in 0..=top {
            let direct_rank_d = if d == 0 { 0 } else { smith_normal_form(dense[d].clone()).rank };
            let direct_up = if d + 1 <= top {
                smith_normal_form(dense[d + 1].clone())
            } else {
                smith_normal_form(Vec::new())
            };
            let direct_betti = sizes[d] - direct_rank_d - direct_up.rank;

            let res_rank_d = if d == 0 { 0 } else { smith_normal_form(res.mats[d].clone()).rank };
            let res_up = if d + 1 <= top {
                smith_normal_form(res.mats[d + 1].clone())
            } else {
                smith_normal_form(Vec::new())
            };
            let res_betti = res.gens[d].len() - res_rank_d - res_up.rank;
            prop_assert_eq!(direct_betti, res_betti, "betti in degree {}", d);
            prop_assert_eq!(direct_up.torsion(), res_up.torsion(), "torsion in degree {}", d);
        }
    }

    /// Tracing round trip: lifting a residual generator and projecting it
    /// back is the identity.
    #[test]
    fn trace_round_trip_on_random_complexes(complex in arb_complex()) {
        use strathom::matrix::SparseVec;
        use strathom::reduce::Reducer;

        let top = complex.dim();
        let sizes: Vec<usize> = (0..=top).map(|d| complex.count(d)).collect();
        let mut mats: Vec<Vec<SparseVec>> = vec![Vec::new()];
        for d in 1..=top {
            let cols = (0..complex.count(d) as u32)
                .map(|idx| {
                    let mut col: SparseVec = complex
                        .boundary_of(d, idx)
                        .iter()
                        .map(|(f, s)| (*f, Int::from(*s)))
                        .collect();
                    col.sort_by_key(|e| e.0);
                    col
                })
                .collect();
            mats.push(cols);
        }
        let mut reducer = Reducer::new(sizes, mats, true);
        reducer.reduce();
        let res = reducer.residual();
        for d in 0..=top {
            for g in &res.gens[d] {
                let unit: SparseVec = vec![(*g, Int::ONE)];
                let lifted = reducer.include(d, &unit);
                let back = reducer.project(d, &lifted);
                prop_assert_eq!(back, unit);
            }
        }
    }
}

/// Reassembling skeleta from derived strata reproduces the filtration.
#[test]
fn strata_reassemble_filtration() {
    for name in ["cone-s1", "sigma-t2", "cc-s1", "wedge"] {
        let s = strathom::fixtures::fixture(name).unwrap();
        let complex = s.complex();
        for d in 0..=complex.dim() {
            for idx in 0..complex.count(d) as u32 {
                let level_direct = s.filtration().level(d, idx);
                // the reassembled level is the level of the stratum holding
                // the simplex
                let stratum = s.stratum_of(d, idx);
                assert_eq!(s.strata()[stratum].level, level_direct, "{name}");
            }
        }
        // strata partition the simplices
        let total: usize = s.strata().iter().map(|st| st.simplices.len()).sum();
        assert_eq!(total, complex.total_simplices(), "{name}");
    }
}

/// Depth grows by exactly one when coning with a fresh minimal stratum.
#[test]
fn cone_depth_increment() {
    for name in ["circle", "cone-s1", "sigma-t2", "cc-s1"] {
        let s = strathom::fixtures::fixture(name).unwrap();
        let cone = s.cone("freshapex").unwrap().stratification;
        assert_eq!(cone.depth(), s.depth() + 1, "{name}");
    }
}

/// On validated inputs every singular stratum has codimension at least two,
/// so the zero perversity sits below the top one.
#[test]
fn zero_below_top_on_all_fixtures() {
    for name in strathom::fixtures::standard_fixture_names() {
        let s = strathom::fixtures::fixture(name).unwrap();
        let zero = Perversity::zero(&s);
        let top = Perversity::top(&s);
        assert!(zero.le(&top), "{name}");
        assert!(zero.in_gm_range(&s) && top.in_gm_range(&s), "{name}");
    }
}

/// Frontier condition is checked on every fixture, not assumed.
#[test]
fn frontier_checked_everywhere() {
    for info in strathom::fixtures::FIXTURES {
        let s = strathom::fixtures::fixture(info.name).unwrap();
        let frontier = s
            .validate()
            .checks
            .into_iter()
            .find(|c| c.axiom == "frontier")
            .unwrap();
        assert!(frontier.pass, "{}", info.name);
    }
}

/// IH with rational coefficients has the same Betti numbers as over the
/// integers, on every stratified fixture with both extreme perversities.
#[test]
fn rational_betti_match_integer() {
    for name in strathom::fixtures::stratified_fixture_names() {
        let s = strathom::fixtures::fixture(name).unwrap();
        for p in [Perversity::zero(&s), Perversity::top(&s)] {
            let hz = strathom::ih::intersection_homology(&s, &p, 0, false);
            let hq = strathom::ih::intersection_homology(&s, &p, 0, true);
            assert_eq!(hz.betti(), hq.betti(), "{name}");
        }
    }
}

/// Very negative perversities reduce IH to the homology of the part of the
/// complex missing the singular set entirely.
#[test]
fn very_negative_perversity_gives_regular_part() {
    for name in ["cone-s1", "sigma-s1", "cone-rp2"] {
        let s = strathom::fixtures::fixture(name).unwrap();
        let p = Perversity::new(&s, |i| -s.codim(i) - 1);
        let h = strathom::ih::intersection_homology(&s, &p, 0, false);
        // the subcomplex of simplices disjoint from the singular set
        let away: Vec<_> = (0..=s.complex().dim())
            .flat_map(|d| {
                let s = &s;
                s.complex().simplices(d).iter().enumerate().filter_map(move |(idx, simplex)| {
                    let touches = simplex.vertices().iter().any(|v| {
                        let vs = strathom::Simplex::vertex(*v);
                        s.filtration().level_of(&vs).unwrap() < s.n()
                    });
                    (!touches && s.filtration().level(d, idx as u32) == s.n())
                        .then(|| simplex.clone())
                })
            })
            .collect();
        let sub = Stratification::trivial(
            strathom::complex::SimplicialComplex::from_facet_simplices(
                s.complex().labels().to_vec(),
                away,
            ),
        );
        let expect = ordinary_homology(sub.complex(), false);
        for d in 0..=sub.complex().dim() {
            assert_eq!(h.degrees[d], expect.degrees[d], "{name} degree {d}");
        }
    }
}
