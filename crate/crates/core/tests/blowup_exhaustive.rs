//! Exhaustive blow-up checks on low-dimensional simplices: every ordered
//! block decomposition against every cell of the barycentric subdivision.

use strathom::blowup::{
    enumerate_decompositions, subdivision_compatibility, verify_boundary_formula, BlowupCell,
    DecomposedSimplex, Prism, SubdivisionCell,
};

/// All strictly increasing chains of nonempty faces of the m-simplex.
fn all_chains(dim: usize) -> Vec<Vec<Vec<usize>>> {
    let faces: Vec<Vec<usize>> = (1u32..(1 << (dim + 1)))
        .map(|mask| (0..=dim).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    let is_face_of = |a: &Vec<usize>, b: &Vec<usize>| a.iter().all(|v| b.contains(v));
    let mut chains: Vec<Vec<Vec<usize>>> = faces.iter().map(|f| vec![f.clone()]).collect();
    let mut out = chains.clone();
    while !chains.is_empty() {
        let mut next = Vec::new();
        for c in &chains {
            let top = c.last().unwrap();
            for f in &faces {
                if f.len() > top.len() && is_face_of(top, f) {
                    let mut longer = c.clone();
                    longer.push(f.clone());
                    next.push(longer);
                }
            }
        }
        out.extend(next.iter().cloned());
        chains = next;
    }
    out
}

#[test]
fn boundary_formula_with_prism_factors() {
    // decompositions of the square and triangle with a nontrivial prism
    for dim in 1..=2 {
        for blocks in enumerate_decompositions(dim) {
            if blocks.len() < 2 {
                continue;
            }
            let names: Vec<String> = (0..=dim).map(|i| format!("u{i}")).collect();
            let d = DecomposedSimplex::new(names, blocks).unwrap();
            for prism in [
                Prism { factor_dims: vec![1] },
                Prism { factor_dims: vec![2] },
                Prism { factor_dims: vec![1, 1] },
            ] {
                let cell = BlowupCell::new(d.clone(), prism).unwrap();
                let report = verify_boundary_formula(&cell, 4, 21);
                assert!(report.pass(), "{report:?}");
            }
        }
    }
}

#[test]
fn subdivision_cells_commute_everywhere() {
    // every decomposition of the simplices up to dimension 3, against every
    // barycentric cell whose levels are monotone (equivalently, every cell)
    for dim in 1..=3 {
        let chains = all_chains(dim);
        for blocks in enumerate_decompositions(dim) {
            if blocks.len() < 2 {
                continue;
            }
            let names: Vec<String> = (0..=dim).map(|i| format!("u{i}")).collect();
            let d = DecomposedSimplex::new(names, blocks).unwrap();
            let whole = subdivision_compatibility(&d, &SubdivisionCell::Whole, 0, 1).unwrap();
            assert!(whole.identity);
            for chain in &chains {
                let w = subdivision_compatibility(
                    &d,
                    &SubdivisionCell::Chain(chain.clone()),
                    3,
                    31,
                )
                .unwrap();
                assert!(w.commutation_ok, "{blocks:?} vs {chain:?}: {w:?}",
                    blocks = d.blocks);
                assert!(w.regular_parts_match, "{:?} vs {chain:?}", d.blocks);
            }
        }
    }
}

#[test]
fn chain_count_is_subdivision_size() {
    // the chains of the face poset are exactly the simplices of the
    // barycentric subdivision
    let tetra = strathom::SimplicialComplex::build(&[vec![
        "a".into(),
        "b".into(),
        "c".into(),
        "d".into(),
    ]])
    .unwrap();
    let sd = tetra.barycentric_subdivision();
    assert_eq!(all_chains(3).len(), sd.complex.total_simplices());
}
