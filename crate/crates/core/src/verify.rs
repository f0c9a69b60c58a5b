//! Machine checks of the structural identities on the fixture library:
//! cone truncation, interval-product invariance, Mayer-Vietoris bookkeeping,
//! dual-perversity rank symmetry, finite-quotient invariants, blow-up
//! boundary counts, monotonicity, and subdivision stability.
//!
//! Every check runs two independent computations and compares them exactly;
//! all verdicts are integer equalities, never tolerances.


use crate::blowup::{
    enumerate_decompositions, subdivision_compatibility, verify_boundary_formula, BlowupCell,
    DecomposedSimplex, Prism, SubdivisionCell,
};
use crate::chain::Chain;
use crate::coeff::Int;
use crate::error::{Error, Result};
use crate::filtration::Stratification;
use crate::fixtures;
use crate::ih::{
    homology, induced_matrix, intersection_homology, ordinary_homology, subdivide_pair,
    DegreeHomology, IcPresentation, IhComputation, SimplicialMap, SubdivisionTower,
};
use crate::matrix::{QMat, SparseVec};
use crate::perversity::Perversity;
use crate::reduce::{sparse_matrix_rank, Reducer};
use crate::simplex::{Simplex, Vertex};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

/// The homological cone truncation degree. This is the single owning
/// definition used by every check and document: for an apex value a on the
/// cone over an n-dimensional base X,
///
///   IH_i(cX) = IH_i(X)  for i < cone_cut(n, a),   and 0 otherwise.
pub fn cone_cut(base_dim: usize, apex_value: i64) -> i64 {
    base_dim as i64 - apex_value
}

#[derive(Clone, Debug)]
pub struct ReportRow {
    pub label: String,
    pub expected: String,
    pub computed: String,
    pub ok: bool,
}

impl ReportRow {
    fn new(label: impl Into<String>, expected: impl ToString, computed: impl ToString) -> ReportRow {
        let expected = expected.to_string();
        let computed = computed.to_string();
        ReportRow {
            label: label.into(),
            ok: expected == computed,
            expected,
            computed,
        }
    }

    fn info(label: impl Into<String>, expected: impl ToString, computed: impl ToString) -> ReportRow {
        ReportRow {
            label: label.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            ok: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub theorem: String,
    pub fixture: String,
    pub perversity: String,
    pub rows: Vec<ReportRow>,
    pub pass: bool,
    pub notes: Vec<String>,
    pub runtime: Duration,
}

impl TheoremReport {
    fn finish(
        theorem: &str,
        fixture: &str,
        perversity: String,
        rows: Vec<ReportRow>,
        notes: Vec<String>,
        started: Instant,
    ) -> TheoremReport {
        TheoremReport {
            theorem: theorem.to_string(),
            fixture: fixture.to_string(),
            perversity,
            pass: rows.iter().all(|r| r.ok),
            rows,
            notes,
            runtime: started.elapsed(),
        }
    }
}

fn degree_text(d: &DegreeHomology) -> String {
    if d.torsion.is_empty() {
        format!("{}", d.betti)
    } else {
        let t: Vec<String> = d.torsion.iter().map(|x| format!("Z/{x}")).collect();
        format!("{}+{}", d.betti, t.join("+"))
    }
}

fn fresh_label(complex: &crate::complex::SimplicialComplex, base: &str) -> String {
    let mut label = base.to_string();
    while complex.vertex_by_label(&label).is_some() {
        label.push('*');
    }
    label
}

// ---------------------------------------------------------------------------
// cone formula

/// Compares IH of the cone against the truncation of IH of the base at
/// cone_cut(dim X, apex value): both sides computed independently.
pub fn check_cone_formula(
    fixture: &str,
    s: &Stratification,
    p: &Perversity,
    p_name: &str,
    apex_value: i64,
    subdivisions: usize,
) -> Result<TheoremReport> {
    let started = Instant::now();
    let apex_codim = s.n() as i64 + 1;
    if apex_value < 0 || apex_value > apex_codim - 2 {
        return Err(Error::OutOfGmRange {
            value: apex_value,
            codim: apex_codim,
        });
    }
    if !p.in_gm_range(s) {
        return Err(Error::OutOfGmRange {
            value: i64::MIN,
            codim: 0,
        });
    }
    // side A: the cone, built and computed on its own
    let apex = fresh_label(s.complex(), "apex");
    let cone = s.cone(&apex)?;
    let pc = p.transport_cone(&cone, Some(apex_value))?;
    let cone_side = intersection_homology(&cone.stratification, &pc, subdivisions, false);
    // side B: the base, truncated
    let base_side = intersection_homology(s, p, subdivisions, false);
    let cut = cone_cut(s.n(), apex_value);
    let zero = DegreeHomology {
        betti: 0,
        torsion: Vec::new(),
    };
    let rows = (0..=s.n() + 1)
        .map(|i| {
            let expected = if (i as i64) < cut {
                base_side.degrees.get(i).cloned().unwrap_or(zero.clone())
            } else {
                zero.clone()
            };
            let computed = cone_side.degrees.get(i).cloned().unwrap_or(zero.clone());
            ReportRow::new(
                format!("IH_{i}"),
                degree_text(&expected),
                degree_text(&computed),
            )
        })
        .collect();
    Ok(TheoremReport::finish(
        "cone-formula",
        fixture,
        format!("{p_name}, apex={apex_value}"),
        rows,
        vec![format!("cut = dim X - apex value = {cut}")],
        started,
    ))
}

// ---------------------------------------------------------------------------
// product invariance

/// The projection X × I → X must induce an isomorphism on IH in every degree.
pub fn check_product_invariance(
    fixture: &str,
    s: &Stratification,
    p: &Perversity,
    p_name: &str,
    subdivisions: usize,
) -> Result<TheoremReport> {
    let started = Instant::now();
    let (s, p) = subdivide_pair(s, p, subdivisions);
    let prod = s.interval_product();
    let pp = p.transport_product(&prod);
    let projection = SimplicialMap {
        vertex_map: prod.projection.clone(),
    };
    projection.check_filtered(&prod.stratification, &s)?;
    // end inclusion composed with the projection is the identity vertex map
    for (v, b) in prod.bottom.iter().enumerate() {
        assert_eq!(prod.projection[*b as usize] as usize, v);
    }
    let src = IhComputation::new(prod.stratification.clone(), pp);
    let dst = IhComputation::new(s.clone(), p);
    let inclusion = SimplicialMap {
        vertex_map: prod.bottom.clone(),
    };
    let mut rows = Vec::new();
    for d in 0..=s.n() + 1 {
        let a = if d <= prod.stratification.n() {
            src.homology.degrees[d].clone()
        } else {
            DegreeHomology {
                betti: 0,
                torsion: Vec::new(),
            }
        };
        let b = if d <= s.n() {
            dst.homology.degrees[d].clone()
        } else {
            DegreeHomology {
                betti: 0,
                torsion: Vec::new(),
            }
        };
        rows.push(ReportRow::new(
            format!("IH_{d} groups"),
            degree_text(&b),
            degree_text(&a),
        ));
        if d <= s.n() {
            let m = induced_matrix(&projection, &src, &dst, d)?;
            let iso = m.rows == m.cols && m.rank() == m.rows;
            rows.push(ReportRow::new(
                format!("IH_{d} projection iso"),
                "iso",
                if iso { "iso".to_string() } else { format!("rank {} of {}x{}", m.rank(), m.rows, m.cols) },
            ));
            // the end inclusion realizes the inverse on homology
            let inc = induced_matrix(&inclusion, &dst, &src, d)?;
            let both = m.mul(&inc);
            rows.push(ReportRow::new(
                format!("IH_{d} projection ∘ inclusion"),
                "identity",
                if both.rows == 0 || both.is_identity() {
                    "identity".to_string()
                } else {
                    "other".to_string()
                },
            ));
            let other = inc.mul(&m);
            rows.push(ReportRow::new(
                format!("IH_{d} inclusion ∘ projection"),
                "identity",
                if other.rows == 0 || other.is_identity() {
                    "identity".to_string()
                } else {
                    "other".to_string()
                },
            ));
        }
    }
    Ok(TheoremReport::finish(
        "product-invariance",
        fixture,
        p_name.to_string(),
        rows,
        Vec::new(),
        started,
    ))
}

// ---------------------------------------------------------------------------
// duality

/// rank IH_i^p(Q) = rank IH_{n−i}^q(Q) for q the dual perversity, on closed
/// orientable fixtures.
pub fn check_duality(
    fixture: &str,
    s: &Stratification,
    p: &Perversity,
    p_name: &str,
    subdivisions: usize,
) -> Result<TheoremReport> {
    let started = Instant::now();
    let n = s.n();
    // orientability gate: branch condition plus free top homology of rank 1
    let report = s.validate();
    if !report.all_pass() {
        return Err(Error::NotOrientable(
            "stratification fails pseudomanifold validation".into(),
        ));
    }
    let top = ordinary_homology(s.complex(), false);
    let top_group = &top.degrees[n];
    if top_group.betti != 1 || !top_group.torsion.is_empty() {
        return Err(Error::NotOrientable(format!(
            "H_{n} = {}",
            degree_text(top_group)
        )));
    }
    if !p.in_gm_range(s) {
        return Err(Error::OutOfGmRange {
            value: i64::MIN,
            codim: 0,
        });
    }
    let q = p.dual(s);
    let hp = intersection_homology(s, p, subdivisions, true);
    let hq = intersection_homology(s, &q, subdivisions, true);
    let rows = (0..=n)
        .map(|i| {
            ReportRow::new(
                format!("rank IH_{i}^p vs rank IH_{}^q", n - i),
                hq.degrees[n - i].betti,
                hp.degrees[i].betti,
            )
        })
        .collect();
    Ok(TheoremReport::finish(
        "duality",
        fixture,
        format!("{p_name} against its dual"),
        rows,
        vec![format!("dual values: {}", q.describe(s))],
        started,
    ))
}

// ---------------------------------------------------------------------------
// Mayer-Vietoris

/// Chain-level exactness of 0 → IC(U∩V) → IC(U)⊕IC(V) → IC-small → 0 by rank
/// bookkeeping, homology of the small complex through the mapping cone, and
/// consistency of the induced long exact sequence.
pub fn check_mayer_vietoris(
    fixture: &str,
    s: &Stratification,
    p: &Perversity,
    p_name: &str,
    u_gens: &[Simplex],
    v_gens: &[Simplex],
) -> Result<TheoremReport> {
    let started = Instant::now();
    let complex = s.complex();
    let tu = complex.subcomplex_table(u_gens)?;
    let tv = complex.subcomplex_table(v_gens)?;
    for d in 0..=complex.dim() {
        for idx in 0..complex.count(d) {
            if !tu[d][idx] && !tv[d][idx] {
                return Err(Error::NotACover(format!(
                    "{:?} lies in neither piece",
                    complex.simplex(d, idx as u32)
                )));
            }
        }
    }
    let mut w_gens = Vec::new();
    for d in 0..=complex.dim() {
        for idx in 0..complex.count(d) {
            if tu[d][idx] && tv[d][idx] {
                w_gens.push(complex.simplex(d, idx as u32).clone());
            }
        }
    }
    let u = s.restrict(u_gens)?;
    let v = s.restrict(v_gens)?;
    let w = s.restrict(&w_gens)?;
    let pu = p.transport_restrict(&u);
    let pv = p.transport_restrict(&v);
    let pw = p.transport_restrict(&w);

    let cu = IhComputation::new(u.stratification, pu);
    let cv = IhComputation::new(v.stratification, pv);
    let cw = IhComputation::new(w.stratification, pw);
    let n = s.n();

    // IC bases as chains over the ambient complex
    let ambient_cols = |c: &IhComputation, d: usize| -> Vec<SparseVec> {
        (0..c.presentation.gen_count(d))
            .map(|j| {
                let local = c
                    .presentation
                    .to_simplex_coords(d, &vec![(j as u32, Int::ONE)]);
                let mut out: SparseVec = local
                    .into_iter()
                    .map(|(idx, coeff)| {
                        let simplex = c.strat.complex().simplex(d, idx);
                        (complex.index_of(simplex).expect("subcomplex"), coeff)
                    })
                    .collect();
                out.sort_by_key(|e| e.0);
                out
            })
            .collect()
    };

    let mut rows = Vec::new();
    let mut notes = Vec::new();
    // chain-level exactness bookkeeping and the small complex, per degree
    for d in 0..=n {
        let bu = ambient_cols(&cu, d);
        let bv = ambient_cols(&cv, d);
        let dim_w = cw.presentation.gen_count(d);
        let all: Vec<SparseVec> = bu.iter().chain(bv.iter()).cloned().collect();
        let rank_sum = sparse_matrix_rank(complex.count(d), &all);
        rows.push(ReportRow::new(
            format!("IC_{d}: dim ker(sum) = dim IC(U∩V)"),
            dim_w,
            bu.len() + bv.len() - rank_sum,
        ));
    }

    // the mapping cone of IC(W) → IC(U)⊕IC(V) computes the small homology
    let express_in = |c: &IhComputation, d: usize, chain: &SparseVec| -> Result<SparseVec> {
        let local: SparseVec = chain
            .iter()
            .map(|(idx, coeff)| {
                let simplex = complex.simplex(d, *idx);
                c.strat
                    .complex()
                    .index_of(simplex)
                    .map(|i| (i, coeff.clone()))
                    .ok_or_else(|| Error::NotAllowable(format!("{simplex:?} outside piece")))
            })
            .collect::<Result<_>>()?;
        c.presentation
            .express_chain(d, &local)
            .ok_or_else(|| Error::NotAllowable(format!("degree {d} chain outside IC")))
    };
    let sizes: Vec<usize> = (0..=n + 1)
        .map(|d| {
            let wpart = if d >= 1 {
                cw.presentation.gen_count(d - 1)
            } else {
                0
            };
            wpart + cu.presentation.gen_count(d) + cv.presentation.gen_count(d)
        })
        .collect();
    let mut cone_mats: Vec<Vec<SparseVec>> = vec![Vec::new()];
    for d in 1..=n + 1 {
        let w_lower = if d >= 2 {
            cw.presentation.gen_count(d - 2)
        } else {
            0
        };
        let u_lower = cu.presentation.gen_count(d - 1);
        let mut cols: Vec<SparseVec> = Vec::with_capacity(sizes[d]);
        // W part in degree d-1: D(a) = (-∂a, a_U, -a_V)
        for j in 0..cw.presentation.gen_count(d - 1) {
            let mut col: SparseVec = Vec::new();
            if d >= 2 {
                for (r, c) in &cw.presentation.boundaries[d - 1][j] {
                    col.push((*r, -c));
                }
            }
            let wchain = ambient_cols(&cw, d - 1)[j].clone();
            let ju = express_in(&cu, d - 1, &wchain)?;
            for (r, c) in ju {
                col.push((w_lower as u32 + r, c));
            }
            let jv = express_in(&cv, d - 1, &wchain)?;
            for (r, c) in jv {
                col.push((w_lower as u32 + u_lower as u32 + r, -&c));
            }
            col.sort_by_key(|e| e.0);
            cols.push(col);
        }
        // U and V parts in degree d: plain boundaries shifted
        if d <= n {
            for j in 0..cu.presentation.gen_count(d) {
                let col: SparseVec = cu.presentation.boundaries[d][j]
                    .iter()
                    .map(|(r, c)| (w_lower as u32 + r, c.clone()))
                    .collect();
                cols.push(col);
            }
            for j in 0..cv.presentation.gen_count(d) {
                let col: SparseVec = cv.presentation.boundaries[d][j]
                    .iter()
                    .map(|(r, c)| (w_lower as u32 + u_lower as u32 + r, c.clone()))
                    .collect();
                cols.push(col);
            }
        }
        cone_mats.push(cols);
    }
    // the assembled blocks must form a chain complex
    for d in 2..cone_mats.len() {
        for col in &cone_mats[d] {
            let mut acc: SparseVec = Vec::new();
            for (g, c) in col {
                acc = crate::matrix::add_scaled(&acc, &cone_mats[d - 1][*g as usize], c);
            }
            assert!(acc.is_empty(), "mapping cone is not a complex");
        }
    }
    let mut reducer = Reducer::new(sizes, cone_mats, false);
    reducer.reduce();
    let residual = reducer.residual();
    let small_h: Vec<usize> = {
        let snfs: Vec<crate::matrix::Snf> = residual
            .mats
            .iter()
            .map(|m| crate::matrix::smith_normal_form(m.clone()))
            .collect();
        (0..=n + 1)
            .map(|d| {
                let count = residual.gens.get(d).map_or(0, |g| g.len());
                let r_d = if d == 0 { 0 } else { snfs.get(d).map_or(0, |s| s.rank) };
                let r_up = snfs.get(d + 1).map_or(0, |s| s.rank);
                count - r_d - r_up
            })
            .collect()
    };

    // α: IH(W) → IH(U) ⊕ IH(V), stacked
    let iu = SimplicialMap::identity(complex);
    let mut alpha_rank = vec![0usize; n + 2];
    for d in 0..=n {
        let a = induced_matrix(&iu, &cw, &cu, d)?;
        let b = induced_matrix(&iu, &cw, &cv, d)?;
        let mut stacked = QMat::zero(a.rows + b.rows, cw.betti(d));
        for j in 0..cw.betti(d) {
            for i in 0..a.rows {
                stacked.set(i, j, a.get(i, j).clone());
            }
            for i in 0..b.rows {
                stacked.set(a.rows + i, j, -b.get(i, j).clone());
            }
        }
        alpha_rank[d] = stacked.rank();
    }

    // long exact sequence bookkeeping:
    //   rank β_d = dim(IH_d U ⊕ IH_d V) − rank α_d
    //   rank δ_d = dim IH^sm_d − rank β_d
    //   exactness at W: dim IH_d(W) = rank α_d + rank δ_{d+1}
    let mut delta = vec![0usize; n + 3];
    for d in (0..=n + 1).rev() {
        let mid = if d <= n {
            cu.betti(d) + cv.betti(d)
        } else {
            0
        };
        let beta = mid.saturating_sub(alpha_rank[d]);
        delta[d] = small_h[d].saturating_sub(beta);
        rows.push(ReportRow::new(
            format!("LES at degree {d}: rank β + rank δ = dim IH(small)"),
            small_h[d],
            beta + delta[d],
        ));
    }
    for d in 0..=n {
        rows.push(ReportRow::new(
            format!("LES exact at IH_{d}(U∩V)"),
            cw.betti(d),
            alpha_rank[d] + delta[d + 1],
        ));
    }

    // informational: small homology against the whole complex
    let pres = IcPresentation::build(s, p);
    let full = homology(&pres, true);
    for d in 0..=n {
        rows.push(ReportRow::info(
            format!("small vs full rank in degree {d} (reported, not asserted)"),
            full.degrees[d].betti,
            small_h[d],
        ));
        if full.degrees[d].betti != small_h[d] {
            notes.push(format!(
                "small-chain inclusion is not rank-equal in degree {d}"
            ));
        }
    }

    Ok(TheoremReport::finish(
        "mayer-vietoris",
        fixture,
        p_name.to_string(),
        rows,
        notes,
        started,
    ))
}

// ---------------------------------------------------------------------------
// subdivision stability

pub fn check_subdivision_stability(
    fixture: &str,
    s: &Stratification,
    p: &Perversity,
    p_name: &str,
    base_level: usize,
) -> Result<TheoremReport> {
    let tower = SubdivisionTower::build(s, base_level + 1);
    check_subdivision_stability_on(fixture, &tower, p, p_name, base_level)
}

/// Tower-sharing variant: the subdivided complexes are built once and
/// reused across perversities.
pub fn check_subdivision_stability_on(
    fixture: &str,
    tower: &SubdivisionTower,
    p: &Perversity,
    p_name: &str,
    base_level: usize,
) -> Result<TheoremReport> {
    let started = Instant::now();
    let s = tower.stratification(0);
    let coarse = {
        let pres = IcPresentation::build(
            tower.stratification(base_level),
            &tower.transport(p, base_level),
        );
        homology(&pres, false)
    };
    let fine = {
        let pres = IcPresentation::build(
            tower.stratification(base_level + 1),
            &tower.transport(p, base_level + 1),
        );
        homology(&pres, false)
    };
    let rows = (0..=s.n())
        .map(|d| {
            ReportRow::new(
                format!("IH_{d} at {} vs {} subdivisions", base_level, base_level + 1),
                degree_text(&coarse.degrees[d]),
                degree_text(&fine.degrees[d]),
            )
        })
        .collect();
    Ok(TheoremReport::finish(
        "subdivision-stability",
        fixture,
        p_name.to_string(),
        rows,
        Vec::new(),
        started,
    ))
}

// ---------------------------------------------------------------------------
// monotonicity and extreme perversities

pub fn check_monotonicity_extremes(fixture: &str, s: &Stratification) -> Result<TheoremReport> {
    let started = Instant::now();
    let mut rows = Vec::new();
    let ladder = [
        ("zero", Perversity::zero(s)),
        ("lower-middle", Perversity::lower_middle(s)),
        ("upper-middle", Perversity::upper_middle(s)),
        ("top", Perversity::top(s)),
        ("large", Perversity::new(s, |i| s.codim(i) + s.n() as i64)),
    ];
    let presentations: Vec<IcPresentation> =
        ladder.iter().map(|(_, p)| IcPresentation::build(s, p)).collect();
    for k in 0..ladder.len() - 1 {
        let (lo_name, lo) = &ladder[k];
        let (hi_name, hi) = &ladder[k + 1];
        assert!(lo.le(hi), "perversity ladder must ascend");
        let mut included = true;
        for d in 0..=s.n() {
            for idx in 0..s.complex().count(d) {
                if presentations[k].allowable[d][idx] && !presentations[k + 1].allowable[d][idx] {
                    included = false;
                }
            }
            for j in 0..presentations[k].gen_count(d) {
                let chain = presentations[k].to_simplex_coords(d, &vec![(j as u32, Int::ONE)]);
                if presentations[k + 1].express_chain(d, &chain).is_none() {
                    included = false;
                }
            }
        }
        rows.push(ReportRow::new(
            format!("IC^{lo_name} ⊆ IC^{hi_name}"),
            "contained",
            if included { "contained" } else { "violated" },
        ));
    }
    // a very large perversity makes everything allowable
    let big = homology(&presentations[ladder.len() - 1], false);
    let ordinary = ordinary_homology(s.complex(), false);
    for d in 0..=s.n() {
        let o = ordinary
            .degrees
            .get(d)
            .cloned()
            .unwrap_or(DegreeHomology { betti: 0, torsion: Vec::new() });
        rows.push(ReportRow::new(
            format!("IH_{d}^large = H_{d}"),
            degree_text(&o),
            degree_text(&big.degrees[d]),
        ));
    }
    Ok(TheoremReport::finish(
        "monotonicity-extremes",
        fixture,
        "zero .. large ladder".into(),
        rows,
        Vec::new(),
        started,
    ))
}

// ---------------------------------------------------------------------------
// finite quotients

pub fn check_quotient_invariants(
    action_name: &str,
    p_kind: &str,
) -> Result<TheoremReport> {
    let started = Instant::now();
    let action = fixtures::action(action_name)?.regularize()?;
    let s = action.stratification().clone();
    let p = match p_kind {
        "zero" => Perversity::zero(&s),
        "top" => Perversity::top(&s),
        other => return Err(Error::Invalid(format!("unknown perversity kind {other}"))),
    };
    let inv = action.invariant_ih(&p)?;
    let q = action.quotient()?;
    let pq = p.transport_quotient(&s, &q)?;
    let hq = intersection_homology(&q.stratification, &pq, 0, true);
    let mut rows: Vec<ReportRow> = (0..=s.n())
        .map(|d| {
            ReportRow::new(
                format!("rank IH_{d}(X/G) = invariant rank"),
                inv.ranks[d],
                hq.degrees[d].betti,
            )
        })
        .collect();
    rows.push(ReportRow::new(
        "averaging projector idempotent",
        "yes",
        if inv.idempotent { "yes" } else { "no" },
    ));
    Ok(TheoremReport::finish(
        "quotient-invariants",
        action_name,
        p_kind.to_string(),
        rows,
        vec![format!("group order {}", action.order())],
        started,
    ))
}

// ---------------------------------------------------------------------------
// blow-up boundary formula

pub fn check_blowup_formula(max_dim: usize, samples: usize, seed: u64) -> Result<TheoremReport> {
    let started = Instant::now();
    let mut rows = Vec::new();
    let mut detail_rows = Vec::new();
    let mut cells = 0usize;
    let mut failures = 0usize;
    let mut bijective = 0usize;
    for dim in 1..=max_dim {
        for blocks in enumerate_decompositions(dim) {
            if blocks.len() < 2 {
                continue;
            }
            let names: Vec<String> = (0..=dim).map(|i| format!("u{i}")).collect();
            let d = DecomposedSimplex::new(names, blocks)?;
            let cell = BlowupCell::new(d, Prism::trivial())?;
            let report = verify_boundary_formula(&cell, samples, seed);
            cells += 1;
            if report.bijective_case {
                bijective += 1;
            }
            let ok = report.pass() && report.depth_out + 1 == report.depth_in;
            if !ok {
                failures += 1;
            }
            let expected_faces = if report.bijective_case {
                report.base_facet_count
            } else {
                report.base_facet_count + 1
            };
            detail_rows.push(ReportRow::new(
                format!(
                    "Δ^{dim} blocks {:?} depth {}→{}",
                    report.blocks, report.depth_in, report.depth_out
                ),
                format!("{expected_faces} faces, maps commute"),
                if ok {
                    format!("{} faces, maps commute", report.blowup_facet_count)
                } else {
                    format!("{} faces of {} expected", report.blowup_facet_count, expected_faces)
                },
            ));
        }
    }
    rows.push(ReportRow::new(
        format!("all decompositions of simplices up to dimension {max_dim}"),
        format!("{cells} cells pass"),
        format!("{} cells pass", cells - failures),
    ));
    rows.extend(detail_rows);
    // barycentric compatibility witnesses on the depth-positive cells of a
    // small decomposition, including the whole-simplex identity witness
    let names: Vec<String> = (0..=2).map(|i| format!("u{i}")).collect();
    let d = DecomposedSimplex::new(names, vec![vec![0], vec![1, 2]])?;
    let whole = subdivision_compatibility(&d, &SubdivisionCell::Whole, 0, seed)?;
    rows.push(ReportRow::new(
        "identity witness on the whole simplex",
        "identity",
        if whole.identity { "identity" } else { "other" },
    ));
    let chains = [
        vec![vec![0], vec![0, 1], vec![0, 1, 2]],
        vec![vec![0], vec![0, 2], vec![0, 1, 2]],
        vec![vec![1], vec![1, 2]],
        vec![vec![0], vec![0, 1, 2]],
    ];
    for chain in chains {
        let w = subdivision_compatibility(&d, &SubdivisionCell::Chain(chain.clone()), samples, seed)?;
        rows.push(ReportRow::new(
            format!("subdivision cell {chain:?} commutes"),
            "yes",
            if w.commutation_ok && w.regular_parts_match {
                "yes"
            } else {
                "no"
            },
        ));
    }
    Ok(TheoremReport::finish(
        "blowup-boundary",
        "simplices to dimension 5",
        format!("{bijective} bijective cells"),
        rows,
        Vec::new(),
        started,
    ))
}

// ---------------------------------------------------------------------------
// well-formedness

pub fn check_wellformedness(fixture: &str, s: &Stratification, seed: u64) -> Result<TheoremReport> {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let complex = s.complex();
    let mut rows = Vec::new();
    // randomized ∂∂ = 0
    let mut all_zero = true;
    for d in 1..=complex.dim() {
        for _ in 0..5 {
            let mut chain = Chain::zero(d);
            let count = complex.count(d);
            for _ in 0..count.min(6) {
                let idx = rng.random_range(0..count);
                let coeff = rng.random_range(-9i64..=9);
                chain.add_term(complex.simplex(d, idx as u32).clone(), Int::from(coeff));
            }
            if !chain.boundary().boundary().is_zero() {
                all_zero = false;
            }
        }
    }
    rows.push(ReportRow::new(
        "boundary of boundary vanishes on random chains",
        "yes",
        if all_zero { "yes" } else { "no" },
    ));
    // integer betti equal rational ranks
    let p = Perversity::zero(s);
    let hz = intersection_homology(s, &p, 0, false);
    let hq = intersection_homology(s, &p, 0, true);
    for d in 0..=s.n() {
        rows.push(ReportRow::new(
            format!("betti_{d} over Z equals rank over Q"),
            hq.degrees[d].betti,
            hz.degrees[d].betti,
        ));
    }
    Ok(TheoremReport::finish(
        "well-formedness",
        fixture,
        "zero".into(),
        rows,
        Vec::new(),
        started,
    ))
}

// ---------------------------------------------------------------------------
// suites

#[derive(Clone, Copy, Debug)]
pub struct HarnessConfig {
    pub cone_subdivisions: usize,
    pub product_subdivisions: usize,
    pub duality_subdivisions: usize,
    pub mv_subdivisions: usize,
    pub stability_base: usize,
    pub blowup_max_dim: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for HarnessConfig {
    fn default() -> HarnessConfig {
        HarnessConfig {
            cone_subdivisions: 2,
            product_subdivisions: 0,
            duality_subdivisions: 2,
            mv_subdivisions: 1,
            stability_base: 2,
            blowup_max_dim: 5,
            samples: 10,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Cone,
    Product,
    Mv,
    Duality,
    Blowup,
    Quotient,
    Subdivision,
    Extremes,
    Wellformed,
    All,
}

impl Suite {
    pub fn parse(name: &str) -> Result<Suite> {
        Ok(match name {
            "cone" => Suite::Cone,
            "product" => Suite::Product,
            "mv" => Suite::Mv,
            "duality" => Suite::Duality,
            "blowup" => Suite::Blowup,
            "quotient" => Suite::Quotient,
            "subdivision" => Suite::Subdivision,
            "extremes" => Suite::Extremes,
            "wellformed" => Suite::Wellformed,
            "all" => Suite::All,
            other => return Err(Error::Parse(format!("unknown suite {other:?}"))),
        })
    }
}

fn perversity_set(s: &Stratification) -> Vec<(String, Perversity)> {
    if s.singular_strata().count() == 0 {
        vec![("zero".into(), Perversity::zero(s))]
    } else {
        vec![
            ("zero".into(), Perversity::zero(s)),
            ("top".into(), Perversity::top(s)),
        ]
    }
}

/// Closed-star covers around the singular vertices; used by the
/// Mayer-Vietoris suite.
fn split_cover(s: &Stratification) -> (Vec<Simplex>, Vec<Simplex>) {
    let complex = s.complex();
    // singular strata that are single vertices
    let singular_vertices: Vec<Vertex> = s
        .singular_strata()
        .filter_map(|st| {
            let sims = &s.strata()[st].simplices;
            if sims.len() == 1 && sims[0].0 == 0 {
                Some(complex.simplices(0)[sims[0].1 as usize].vertices()[0])
            } else {
                None
            }
        })
        .collect();
    match singular_vertices.len() {
        2 => {
            // avoid one pole on each side
            let (a, b) = (singular_vertices[0], singular_vertices[1]);
            let u: Vec<Simplex> = complex
                .facets()
                .iter()
                .filter(|f| !f.contains(b))
                .cloned()
                .collect();
            let v: Vec<Simplex> = complex
                .facets()
                .iter()
                .filter(|f| !f.contains(a))
                .cloned()
                .collect();
            (u, v)
        }
        1 => {
            // closed star of the singular vertex against its complement
            let a = singular_vertices[0];
            let u: Vec<Simplex> = complex
                .facets()
                .iter()
                .filter(|f| f.contains(a))
                .cloned()
                .collect();
            let v: Vec<Simplex> = complex
                .facets()
                .iter()
                .filter(|f| !f.contains(a))
                .cloned()
                .collect();
            (u, v)
        }
        _ => {
            // no singular vertices: split around the first vertex
            let a = complex.simplices(0)[0].vertices()[0];
            let u: Vec<Simplex> = complex
                .facets()
                .iter()
                .filter(|f| f.contains(a))
                .cloned()
                .collect();
            let v: Vec<Simplex> = complex
                .facets()
                .iter()
                .filter(|f| !f.contains(a))
                .cloned()
                .collect();
            (u, v)
        }
    }
}

/// Runs one suite; `only` restricts fixture-driven suites to one fixture.
pub fn run_suite(
    suite: Suite,
    config: &HarnessConfig,
    only: Option<&str>,
) -> Result<Vec<TheoremReport>> {
    let keep = |name: &str| only.is_none_or(|o| o == name);
    let mut reports = Vec::new();
    match suite {
        Suite::Cone => {
            for name in ["circle", "sphere", "torus", "rp2", "cone-s1"] {
                if !keep(name) {
                    continue;
                }
                let s = fixtures::fixture(name)?;
                let apex_codim = s.n() as i64 + 1;
                for (p_name, p) in perversity_set(&s) {
                    for a in 0..=apex_codim - 2 {
                        reports.push(check_cone_formula(
                            name,
                            &s,
                            &p,
                            &p_name,
                            a,
                            config.cone_subdivisions,
                        )?);
                    }
                }
            }
        }
        Suite::Product => {
            for name in fixtures::standard_fixture_names() {
                if !keep(name) {
                    continue;
                }
                let s = fixtures::fixture(name)?;
                for (p_name, p) in perversity_set(&s) {
                    reports.push(check_product_invariance(
                        name,
                        &s,
                        &p,
                        &p_name,
                        config.product_subdivisions,
                    )?);
                }
            }
        }
        Suite::Duality => {
            for name in ["sphere", "sigma-s1", "sigma-sphere", "sigma-t2"] {
                if !keep(name) {
                    continue;
                }
                let s = fixtures::fixture(name)?;
                let mut set = perversity_set(&s);
                if name == "sigma-t2" {
                    set.push(("lower-middle".into(), Perversity::lower_middle(&s)));
                }
                for (p_name, p) in set {
                    reports.push(check_duality(
                        name,
                        &s,
                        &p,
                        &p_name,
                        config.duality_subdivisions,
                    )?);
                }
            }
        }
        Suite::Mv => {
            for name in ["circle", "cone-s1", "sigma-s1", "sigma-sphere", "sigma-rp2", "sigma-t2"] {
                if !keep(name) {
                    continue;
                }
                let s = fixtures::fixture(name)?;
                let level = if name == "sigma-t2" {
                    config.mv_subdivisions
                } else {
                    1
                };
                let p = Perversity::zero(&s);
                let (s, p) = subdivide_pair(&s, &p, level);
                let (u, v) = split_cover(&s);
                for (p_name, p) in [("zero".to_string(), p.clone()), ("top".to_string(), {
                    // rebuild top on the subdivided stratification
                    Perversity::top(&s)
                })] {
                    if s.singular_strata().count() == 0 && p_name == "top" {
                        continue;
                    }
                    reports.push(check_mayer_vietoris(name, &s, &p, &p_name, &u, &v)?);
                }
            }
        }
        Suite::Blowup => {
            reports.push(check_blowup_formula(
                config.blowup_max_dim,
                config.samples,
                config.seed,
            )?);
        }
        Suite::Quotient => {
            for (name, kinds) in [
                ("antipodal", &["zero"][..]),
                ("rotation-circle", &["zero"][..]),
                ("rotation-torus", &["zero"][..]),
                ("pole-swap", &["zero", "top"][..]),
            ] {
                if !keep(name) {
                    continue;
                }
                for kind in kinds {
                    reports.push(check_quotient_invariants(name, kind)?);
                }
            }
        }
        Suite::Subdivision => {
            for name in fixtures::standard_fixture_names() {
                if !keep(name) {
                    continue;
                }
                let s = fixtures::fixture(name)?;
                let tower = SubdivisionTower::build(&s, config.stability_base + 1);
                for (p_name, p) in perversity_set(&s) {
                    reports.push(check_subdivision_stability_on(
                        name,
                        &tower,
                        &p,
                        &p_name,
                        config.stability_base,
                    )?);
                }
            }
        }
        Suite::Extremes => {
            for name in fixtures::standard_fixture_names() {
                if !keep(name) {
                    continue;
                }
                let s = fixtures::fixture(name)?;
                reports.push(check_monotonicity_extremes(name, &s)?);
            }
        }
        Suite::Wellformed => {
            for name in fixtures::standard_fixture_names() {
                if !keep(name) {
                    continue;
                }
                let s = fixtures::fixture(name)?;
                reports.push(check_wellformedness(name, &s, config.seed)?);
            }
        }
        Suite::All => {
            for suite in [
                Suite::Cone,
                Suite::Product,
                Suite::Mv,
                Suite::Duality,
                Suite::Blowup,
                Suite::Quotient,
                Suite::Subdivision,
                Suite::Extremes,
                Suite::Wellformed,
            ] {
                reports.extend(run_suite(suite, config, only)?);
            }
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cone_cut_is_the_single_owner() {
        assert_eq!(cone_cut(1, 0), 1);
        assert_eq!(cone_cut(2, 0), 2);
        assert_eq!(cone_cut(2, 1), 1);
    }

    #[test]
    fn cone_formula_on_circle() {
        let s = fixtures::fixture("circle").unwrap();
        let p = Perversity::zero(&s);
        let r = check_cone_formula("circle", &s, &p, "zero", 0, 0).unwrap();
        assert!(r.pass, "{r:?}");
        // expected truncation: (1, 0, 0)
        assert_eq!(r.rows[0].expected, "1");
        assert_eq!(r.rows[1].expected, "0");
    }

    #[test]
    fn cone_formula_out_of_range() {
        let s = fixtures::fixture("circle").unwrap();
        let p = Perversity::zero(&s);
        assert!(matches!(
            check_cone_formula("circle", &s, &p, "zero", 1, 0),
            Err(Error::OutOfGmRange { .. })
        ));
    }

    #[test]
    fn duality_on_sphere_is_poincare() {
        let s = fixtures::fixture("sphere").unwrap();
        let p = Perversity::zero(&s);
        let r = check_duality("sphere", &s, &p, "zero", 0).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn duality_rejects_nonorientable() {
        let s = fixtures::fixture("rp2").unwrap();
        let p = Perversity::zero(&s);
        assert!(matches!(
            check_duality("rp2", &s, &p, "zero", 0),
            Err(Error::NotOrientable(_))
        ));
        let s = fixtures::fixture("sigma-rp2").unwrap();
        let p = Perversity::zero(&s);
        assert!(matches!(
            check_duality("sigma-rp2", &s, &p, "zero", 0),
            Err(Error::NotOrientable(_))
        ));
    }

    #[test]
    fn product_on_cone() {
        let s = fixtures::fixture("cone-s1").unwrap();
        let p = Perversity::zero(&s);
        let r = check_product_invariance("cone-s1", &s, &p, "zero", 0).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn mv_on_circle() {
        let s = fixtures::fixture("circle").unwrap();
        let p = Perversity::zero(&s);
        let (s, p) = subdivide_pair(&s, &p, 1);
        let (u, v) = split_cover(&s);
        let r = check_mayer_vietoris("circle", &s, &p, "zero", &u, &v).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn mv_rejects_non_cover() {
        let s = fixtures::fixture("circle").unwrap();
        let p = Perversity::zero(&s);
        let one_edge = vec![s.complex().simplices(1)[0].clone()];
        assert!(matches!(
            check_mayer_vietoris("circle", &s, &p, "zero", &one_edge, &one_edge),
            Err(Error::NotACover(_))
        ));
    }

    #[test]
    fn stability_on_small_fixtures() {
        for name in ["circle", "cone-s1", "wedge"] {
            let s = fixtures::fixture(name).unwrap();
            let p = Perversity::zero(&s);
            let r = check_subdivision_stability(name, &s, &p, "zero", 1).unwrap();
            assert!(r.pass, "{name}: {r:?}");
        }
    }

    #[test]
    fn extremes_on_cone() {
        let s = fixtures::fixture("cone-s1").unwrap();
        let r = check_monotonicity_extremes("cone-s1", &s).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn wellformed_on_rp2() {
        let s = fixtures::fixture("rp2").unwrap();
        let r = check_wellformedness("rp2", &s, 5).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn blowup_suite_small() {
        let r = check_blowup_formula(3, 4, 9).unwrap();
        assert!(r.pass, "{r:?}");
    }
}
