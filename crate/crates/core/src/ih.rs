//! The intersection-homology engine: allowability of simplices against a
//! perversity, the intersection chain complex as a saturated integer
//! sublattice, homology via reduction plus Smith normal form, and matrices
//! induced on homology by filtered simplicial maps.

use crate::coeff::Int;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::filtration::Stratification;
use crate::matrix::{
    add_scaled, int_to_rational, smith_normal_form, sparse_kernel, QMat, SparseLattice, SparseVec,
};
use crate::perversity::Perversity;
use crate::reduce::{Reducer, Residual};
use crate::simplex::{Simplex, Vertex};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use smallvec::SmallVec;

// ---------------------------------------------------------------------------
// allowability

/// One row of an allowability verdict: the test against a single singular
/// stratum.
#[derive(Clone, Debug)]
pub struct AllowabilityRecord {
    pub stratum: usize,
    pub codim: i64,
    /// dimension of the maximal face of σ inside B_{level(S)}; -1 when empty
    pub face_dim: i64,
    /// dim σ − face_dim (dim σ + 1 for the empty face)
    pub face_codim: i64,
    pub perversity: i64,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct AllowabilityVerdict {
    pub simplex: Simplex,
    pub records: Vec<AllowabilityRecord>,
    pub allowable: bool,
}

/// Tests `codim(S) ≤ codim_Δ(F_{level S}) + p̄(S)` against every singular
/// stratum. A simplex missing the skeleton entirely passes that stratum's
/// test vacuously (the empty face imposes no condition).
pub fn is_allowable(s: &Stratification, p: &Perversity, simplex: &Simplex) -> AllowabilityVerdict {
    let dim = simplex.dim() as i64;
    let mut records = Vec::new();
    let mut allowable = true;
    for st in s.singular_strata() {
        let level = s.strata()[st].level;
        let face_dim = s.filtration().max_face_dim_in_skeleton(simplex, level);
        let face_codim = dim - face_dim;
        let codim = s.codim(st);
        let perversity = p.value(st).expect("perversity total on singular strata");
        let pass = face_dim < 0 || codim <= face_codim + perversity;
        if !pass {
            allowable = false;
        }
        records.push(AllowabilityRecord {
            stratum: st,
            codim,
            face_dim,
            face_codim,
            perversity,
            pass,
        });
    }
    AllowabilityVerdict {
        simplex: simplex.clone(),
        records,
        allowable,
    }
}

/// Bulk allowability tables, one `bool` per simplex per degree.
fn allowable_tables(s: &Stratification, p: &Perversity) -> Vec<Vec<bool>> {
    let complex = s.complex();
    let n = s.n();
    // vertex id -> filtration level (vertices absent from the complex keep n)
    let mut vertex_level = vec![n as u16; complex.vertex_count()];
    for (idx, v) in complex.simplices(0).iter().enumerate() {
        vertex_level[v.vertices()[0] as usize] = s.filtration().level(0, idx as u32) as u16;
    }
    // singular levels with the strata sitting there
    let mut level_tests: Vec<(usize, Vec<(i64, i64)>)> = Vec::new(); // (level, [(codim, p)])
    for st in s.singular_strata() {
        let level = s.strata()[st].level;
        let entry = level_tests.iter_mut().find(|(l, _)| *l == level);
        let test = (s.codim(st), p.value(st).expect("total perversity"));
        match entry {
            Some((_, v)) => v.push(test),
            None => level_tests.push((level, vec![test])),
        }
    }
    (0..=complex.dim())
        .map(|d| {
            (0..complex.count(d) as u32)
                .map(|idx| {
                    let simplex = complex.simplex(d, idx);
                    level_tests.iter().all(|(level, tests)| {
                        let touches = simplex
                            .vertices()
                            .iter()
                            .any(|v| (vertex_level[*v as usize] as usize) <= *level);
                        if !touches {
                            return true;
                        }
                        let face_dim = s.filtration().max_face_dim_in_skeleton(simplex, *level);
                        if face_dim < 0 {
                            return true;
                        }
                        let face_codim = d as i64 - face_dim;
                        tests.iter().all(|(codim, pv)| *codim <= face_codim + pv)
                    })
                })
                .collect()
        })
        .collect()
}

// ---------------------------------------------------------------------------
// the intersection chain complex

/// A basis element of IC in one degree.
#[derive(Clone, Debug)]
pub enum Gen {
    /// Unit vector on an allowable simplex all of whose facets are allowable.
    Simplex(u32),
    /// Integer combination of boundary-sensitive allowable simplices,
    /// stored over positions in the degree's zone list.
    Combo(SparseVec),
}

/// Presentation of IC^p̄: per-degree bases (sub-lattices of the simplicial
/// chain groups, saturated) and the boundary matrices between them.
pub struct IcPresentation {
    pub n: usize,
    pub gens: Vec<Vec<Gen>>,
    /// `boundaries[d][j]` = column of D_d over degree-(d−1) generator indices
    pub boundaries: Vec<Vec<SparseVec>>,
    pub allowable: Vec<Vec<bool>>,
    /// per degree: generator position of a plain-simplex generator
    free_pos: Vec<Vec<Option<u32>>>,
    /// per degree: simplex indices of the zone (allowable, bad facet), sorted
    zone: Vec<Vec<u32>>,
    zone_lattice: Vec<Option<SparseLattice>>,
    combo_start: Vec<u32>,
}

impl IcPresentation {
    pub fn build(s: &Stratification, p: &Perversity) -> IcPresentation {
        let complex = s.complex();
        let n = s.n();
        let top = complex.dim();
        let allowable = allowable_tables(s, p);

        let mut gens: Vec<Vec<Gen>> = Vec::with_capacity(top + 1);
        let mut free_pos: Vec<Vec<Option<u32>>> = Vec::with_capacity(top + 1);
        let mut zone: Vec<Vec<u32>> = Vec::with_capacity(top + 1);
        let mut zone_lattice: Vec<Option<SparseLattice>> = Vec::with_capacity(top + 1);
        let mut combo_start: Vec<u32> = Vec::with_capacity(top + 1);

        for d in 0..=top {
            let mut frees: Vec<u32> = Vec::new();
            let mut zoned: Vec<u32> = Vec::new();
            for idx in 0..complex.count(d) as u32 {
                if !allowable[d][idx as usize] {
                    continue;
                }
                let boundary_ok = d == 0
                    || complex
                        .boundary_of(d, idx)
                        .iter()
                        .all(|(f, _)| allowable[d - 1][*f as usize]);
                if boundary_ok {
                    frees.push(idx);
                } else {
                    zoned.push(idx);
                }
            }
            // kernel of (projection to non-allowable facets) ∘ ∂ on the zone
            let cols: Vec<SparseVec> = zoned
                .iter()
                .map(|idx| {
                    let mut col: SparseVec = complex
                        .boundary_of(d, *idx)
                        .iter()
                        .filter(|(f, _)| !allowable[d - 1][*f as usize])
                        .map(|(f, sign)| (*f, Int::from(*sign)))
                        .collect();
                    col.sort_by_key(|e| e.0);
                    col
                })
                .collect();
            let kernels = if zoned.is_empty() {
                Vec::new()
            } else {
                sparse_kernel(&cols)
            };
            let lattice = (!kernels.is_empty()).then(|| SparseLattice::new(&kernels));

            let mut fp = vec![None; complex.count(d)];
            let mut dgens: Vec<Gen> = Vec::with_capacity(frees.len() + kernels.len());
            for (pos, idx) in frees.iter().enumerate() {
                fp[*idx as usize] = Some(pos as u32);
                dgens.push(Gen::Simplex(*idx));
            }
            combo_start.push(frees.len() as u32);
            for k in kernels {
                dgens.push(Gen::Combo(k));
            }
            gens.push(dgens);
            free_pos.push(fp);
            zone.push(zoned);
            zone_lattice.push(lattice);
        }
        for _ in top + 1..=n {
            gens.push(Vec::new());
            free_pos.push(Vec::new());
            zone.push(Vec::new());
            zone_lattice.push(None);
            combo_start.push(0);
        }

        let mut pres = IcPresentation {
            n,
            gens,
            boundaries: Vec::new(),
            allowable,
            free_pos,
            zone,
            zone_lattice,
            combo_start,
        };
        let mut boundaries: Vec<Vec<SparseVec>> = Vec::with_capacity(n + 1);
        boundaries.push(vec![Vec::new(); pres.gens[0].len()]);
        for d in 1..=n {
            let cols: Vec<SparseVec> = (0..pres.gens[d].len())
                .map(|j| {
                    let chain = pres.gen_boundary_simplex_coords(complex, d, j);
                    pres.express_chain(d - 1, &chain)
                        .expect("boundary of an intersection chain is an intersection chain")
                })
                .collect();
            boundaries.push(cols);
        }
        pres.boundaries = boundaries;
        pres.check_square_zero();
        pres
    }

    fn check_square_zero(&self) {
        for d in 2..self.boundaries.len() {
            for col in &self.boundaries[d] {
                let mut acc: SparseVec = Vec::new();
                for (g, c) in col {
                    acc = add_scaled(&acc, &self.boundaries[d - 1][*g as usize], c);
                }
                assert!(acc.is_empty(), "boundary composed with boundary is nonzero");
            }
        }
    }

    pub fn gen_count(&self, d: usize) -> usize {
        self.gens.get(d).map_or(0, |g| g.len())
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.gens.iter().map(|g| g.len()).collect()
    }

    /// ∂ of one generator, in simplex coordinates of degree d−1.
    fn gen_boundary_simplex_coords(
        &self,
        complex: &SimplicialComplex,
        d: usize,
        j: usize,
    ) -> SparseVec {
        match &self.gens[d][j] {
            Gen::Simplex(idx) => {
                let mut v: SparseVec = complex
                    .boundary_of(d, *idx)
                    .iter()
                    .map(|(f, sign)| (*f, Int::from(*sign)))
                    .collect();
                v.sort_by_key(|e| e.0);
                v
            }
            Gen::Combo(combo) => {
                let mut acc: SparseVec = Vec::new();
                for (pos, c) in combo {
                    let idx = self.zone[d][*pos as usize];
                    let mut v: SparseVec = complex
                        .boundary_of(d, idx)
                        .iter()
                        .map(|(f, sign)| (*f, Int::from(*sign)))
                        .collect();
                    v.sort_by_key(|e| e.0);
                    acc = add_scaled(&acc, &v, c);
                }
                acc
            }
        }
    }

    /// Converts generator coordinates to simplex coordinates.
    pub fn to_simplex_coords(&self, d: usize, gens: &SparseVec) -> SparseVec {
        let mut acc: SparseVec = Vec::new();
        for (g, c) in gens {
            match &self.gens[d][*g as usize] {
                Gen::Simplex(idx) => {
                    acc = add_scaled(&acc, &vec![(*idx, Int::ONE)], c);
                }
                Gen::Combo(combo) => {
                    let lifted: SparseVec = combo
                        .iter()
                        .map(|(pos, v)| (self.zone[d][*pos as usize], v.clone()))
                        .collect();
                    acc = add_scaled(&acc, &lifted, c);
                }
            }
        }
        acc
    }

    /// Expresses a simplex-coordinate chain over the IC basis; `None` when
    /// the chain is not in the sublattice.
    pub fn express_chain(&self, d: usize, chain: &SparseVec) -> Option<SparseVec> {
        let mut out: SparseVec = Vec::new();
        let mut zone_part: SparseVec = Vec::new();
        for (idx, c) in chain {
            if !self.allowable[d][*idx as usize] {
                return None;
            }
            if let Some(g) = self.free_pos[d][*idx as usize] {
                out.push((g, c.clone()));
            } else {
                let pos = self.zone[d].binary_search(idx).ok()? as u32;
                zone_part.push((pos, c.clone()));
            }
        }
        if !zone_part.is_empty() {
            zone_part.sort_by_key(|e| e.0);
            let lattice = self.zone_lattice[d].as_ref()?;
            let coords = lattice.express(&zone_part)?;
            for (k, c) in coords {
                out.push((self.combo_start[d] + k, c));
            }
        }
        out.sort_by_key(|e| e.0);
        Some(out)
    }
}

// ---------------------------------------------------------------------------
// homology

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHomology {
    pub betti: usize,
    /// elementary divisors > 1, each dividing the next
    pub torsion: Vec<Int>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    /// indexed by degree 0..=n
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyResult {
    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    pub fn rational(&self) -> HomologyResult {
        HomologyResult {
            degrees: self
                .degrees
                .iter()
                .map(|d| DegreeHomology {
                    betti: d.betti,
                    torsion: Vec::new(),
                })
                .collect(),
        }
    }
}

fn homology_from_residual(res: &Residual, n: usize, rational: bool) -> HomologyResult {
    let snfs: Vec<crate::matrix::Snf> = res
        .mats
        .iter()
        .map(|m| smith_normal_form(m.clone()))
        .collect();
    let degrees = (0..=n)
        .map(|d| {
            let count = res.gens.get(d).map_or(0, |g| g.len());
            let r_d = if d == 0 {
                0
            } else {
                snfs.get(d).map_or(0, |s| s.rank)
            };
            let r_up = snfs.get(d + 1).map_or(0, |s| s.rank);
            let betti = count - r_d - r_up;
            let torsion = if rational {
                Vec::new()
            } else {
                snfs.get(d + 1).map_or(Vec::new(), |s| s.torsion())
            };
            DegreeHomology { betti, torsion }
        })
        .collect();
    HomologyResult { degrees }
}

/// Homology of an IC presentation: Betti numbers and (over the integers)
/// torsion coefficients from Smith normal form.
pub fn homology(pres: &IcPresentation, rational: bool) -> HomologyResult {
    let mut reducer = Reducer::new(pres.sizes(), pres.boundaries.clone(), false);
    reducer.reduce();
    homology_from_residual(&reducer.residual(), pres.n, rational)
}

/// Subdivides `times` and transports the stratification and perversity.
pub fn subdivide_pair(
    s: &Stratification,
    p: &Perversity,
    times: usize,
) -> (Stratification, Perversity) {
    let mut s = s.clone();
    let mut p = p.clone();
    for _ in 0..times {
        let sd = s.subdivide();
        p = p.transport_subdivision(&sd);
        s = sd.stratification;
    }
    (s, p)
}

/// A chain of barycentric subdivisions of one stratification, kept so that
/// several perversities can be transported along it without rebuilding the
/// subdivided complexes.
pub struct SubdivisionTower {
    base: Stratification,
    steps: Vec<crate::filtration::SubdividedStratified>,
}

impl SubdivisionTower {
    pub fn build(base: &Stratification, levels: usize) -> SubdivisionTower {
        let mut steps = Vec::with_capacity(levels);
        let mut current = base.clone();
        for _ in 0..levels {
            let sd = current.subdivide();
            current = sd.stratification.clone();
            steps.push(sd);
        }
        SubdivisionTower {
            base: base.clone(),
            steps,
        }
    }

    pub fn stratification(&self, level: usize) -> &Stratification {
        if level == 0 {
            &self.base
        } else {
            &self.steps[level - 1].stratification
        }
    }

    pub fn transport(&self, p: &Perversity, level: usize) -> Perversity {
        let mut p = p.clone();
        for step in &self.steps[..level] {
            p = p.transport_subdivision(step);
        }
        p
    }
}

/// IH^p̄ after the requested number of barycentric subdivisions.
pub fn intersection_homology(
    s: &Stratification,
    p: &Perversity,
    subdivisions: usize,
    rational: bool,
) -> HomologyResult {
    let (s, p) = subdivide_pair(s, p, subdivisions);
    let pres = IcPresentation::build(&s, &p);
    homology(&pres, rational)
}

/// Ordinary simplicial homology (trivial filtration).
pub fn ordinary_homology(complex: &SimplicialComplex, rational: bool) -> HomologyResult {
    let s = Stratification::trivial(complex.clone());
    let p = Perversity::zero(&s);
    let pres = IcPresentation::build(&s, &p);
    homology(&pres, rational)
}

// ---------------------------------------------------------------------------
// homology with generators, and induced maps

/// A full computation retaining the reduction trace and a rational homology
/// basis per degree, so maps can be pushed through.
pub struct IhComputation {
    pub strat: Stratification,
    pub perversity: Perversity,
    pub presentation: IcPresentation,
    pub homology: HomologyResult,
    reducer: Reducer,
    residual: Residual,
    bases: Vec<HomologyBasis>,
}

struct HomologyBasis {
    /// integer cycle representatives over residual positions
    reps: Vec<SparseVec>,
    /// columns: reps then boundary image columns; used to express classes
    solver: QMat,
}

impl HomologyBasis {
    fn express(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        let x = self.solver.solve(v)?;
        Some(x[..self.reps.len()].to_vec())
    }
}

fn primitive_integer(v: &[BigRational]) -> SparseVec {
    let mut denom_lcm = BigInt::one();
    for x in v {
        if !x.is_zero() {
            denom_lcm = num_integer::lcm(denom_lcm, x.denom().clone());
        }
    }
    let scaled: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from_integer(denom_lcm.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for x in &scaled {
        g = num_integer::gcd(g, x.clone());
    }
    scaled
        .into_iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i as u32, Int::from_big(x / &g)))
        .collect()
}

impl IhComputation {
    pub fn new(strat: Stratification, perversity: Perversity) -> IhComputation {
        let presentation = IcPresentation::build(&strat, &perversity);
        let mut reducer = Reducer::new(presentation.sizes(), presentation.boundaries.clone(), true);
        reducer.reduce();
        let residual = reducer.residual();
        let homology = homology_from_residual(&residual, presentation.n, false);

        let mut bases = Vec::with_capacity(presentation.n + 1);
        for d in 0..=presentation.n {
            let count = residual.gens.get(d).map_or(0, |g| g.len());
            let rows_up = count;
            // kernel of residual D_d over Q
            let d_mat = if d == 0 || residual.mats.get(d).is_none() {
                QMat::zero(0, count)
            } else {
                let rows_down = residual.gens.get(d - 1).map_or(0, |g| g.len());
                dense_to_q(&residual.mats[d], rows_down, count)
            };
            let mut kernel_cols: Vec<Vec<BigRational>> = Vec::new();
            {
                let mut work = d_mat.clone();
                let pivots = work.rref();
                let pivot_set: std::collections::BTreeSet<usize> =
                    pivots.iter().copied().collect();
                for free in (0..count).filter(|c| !pivot_set.contains(c)) {
                    let mut v = vec![BigRational::zero(); count];
                    v[free] = BigRational::one();
                    for (r, pc) in pivots.iter().enumerate() {
                        v[*pc] = -work.get(r, free).clone();
                    }
                    kernel_cols.push(v);
                }
            }
            // image columns of residual D_{d+1}
            let image_cols: Vec<Vec<BigRational>> = match residual.mats.get(d + 1) {
                Some(m) if !m.is_empty() && !m[0].is_empty() => {
                    let up_count = residual.gens.get(d + 1).map_or(0, |g| g.len());
                    let q = dense_to_q(m, rows_up, up_count);
                    (0..q.cols).map(|j| q.column(j)).collect()
                }
                _ => Vec::new(),
            };
            // pick kernel vectors spanning homology: pivots beyond the image block
            let mut sel = QMat::from_columns(
                count,
                &image_cols
                    .iter()
                    .chain(kernel_cols.iter())
                    .cloned()
                    .collect::<Vec<_>>(),
            );
            let pivots = sel.rref();
            let reps: Vec<SparseVec> = pivots
                .iter()
                .filter(|c| **c >= image_cols.len())
                .map(|c| primitive_integer(&kernel_cols[*c - image_cols.len()]))
                .collect();
            let rep_cols: Vec<Vec<BigRational>> = reps
                .iter()
                .map(|r| {
                    let mut v = vec![BigRational::zero(); count];
                    for (i, x) in r {
                        v[*i as usize] = int_to_rational(x);
                    }
                    v
                })
                .collect();
            let solver = QMat::from_columns(
                count,
                &rep_cols
                    .iter()
                    .chain(image_cols.iter())
                    .cloned()
                    .collect::<Vec<_>>(),
            );
            debug_assert_eq!(reps.len(), homology.degrees[d].betti);
            bases.push(HomologyBasis { reps, solver });
        }
        IhComputation {
            strat,
            perversity,
            presentation,
            homology,
            reducer,
            residual,
            bases,
        }
    }

    pub fn betti(&self, d: usize) -> usize {
        self.homology.degrees.get(d).map_or(0, |x| x.betti)
    }

    /// Representative cycles in simplex coordinates for degree d.
    pub fn class_representatives(&self, d: usize) -> Vec<SparseVec> {
        self.bases[d]
            .reps
            .iter()
            .map(|rep| {
                // residual positions -> original generator indices
                let orig: SparseVec = rep
                    .iter()
                    .map(|(pos, c)| (self.residual.gens[d][*pos as usize], c.clone()))
                    .collect();
                let lifted = self.reducer.include(d, &orig);
                self.presentation.to_simplex_coords(d, &lifted)
            })
            .collect()
    }

    /// Expresses a cycle given in simplex coordinates as rational coordinates
    /// over the degree-d homology basis.
    pub fn class_of(&self, d: usize, chain: &SparseVec) -> Result<Vec<BigRational>> {
        let gen_coords = self
            .presentation
            .express_chain(d, chain)
            .ok_or_else(|| Error::NotAllowable(format!("degree {d} chain")))?;
        let projected = self.reducer.project(d, &gen_coords);
        let count = self.residual.gens.get(d).map_or(0, |g| g.len());
        let mut dense = vec![BigRational::zero(); count];
        for (orig, c) in &projected {
            let pos = self
                .residual
                .position(d, *orig)
                .expect("projected chain lives on surviving generators");
            dense[pos] = int_to_rational(c);
        }
        self.bases[d]
            .express(&dense)
            .ok_or_else(|| Error::Invalid("chain is not a cycle".into()))
    }
}

fn dense_to_q(m: &[Vec<Int>], rows: usize, cols: usize) -> QMat {
    debug_assert_eq!(m.len(), rows);
    debug_assert!(m.first().is_none_or(|r| r.len() == cols));
    let mut q = QMat::zero(rows, cols);
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !v.is_zero() {
                q.set(i, j, int_to_rational(v));
            }
        }
    }
    q
}

// ---------------------------------------------------------------------------
// simplicial maps

/// A simplicial map given on vertices.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    pub vertex_map: Vec<Vertex>,
}

impl SimplicialMap {
    pub fn identity(complex: &SimplicialComplex) -> SimplicialMap {
        SimplicialMap {
            vertex_map: (0..complex.vertex_count() as Vertex).collect(),
        }
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.vertex_map[v as usize]
    }

    /// Image simplex with orientation sign; `None` when degenerate.
    pub fn chain_image(&self, s: &Simplex) -> Option<(Simplex, i64)> {
        let mut imgs: SmallVec<[Vertex; 6]> =
            s.vertices().iter().map(|v| self.apply(*v)).collect();
        // insertion sort counting transpositions
        let mut sign = 1i64;
        for i in 1..imgs.len() {
            let mut j = i;
            while j > 0 && imgs[j - 1] > imgs[j] {
                imgs.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        for w in imgs.windows(2) {
            if w[0] == w[1] {
                return None;
            }
        }
        Some((Simplex::from_sorted(imgs), sign))
    }

    /// Every simplex must map to a simplex of the target.
    pub fn validate(&self, src: &SimplicialComplex, dst: &SimplicialComplex) -> Result<()> {
        for d in 0..=src.dim() {
            for s in src.simplices(d) {
                if let Some((img, _)) = self.chain_image(s) {
                    if !dst.contains_simplex(&img) {
                        return Err(Error::Invalid(format!(
                            "image of {s:?} is not a simplex of the target"
                        )));
                    }
                }
                // degenerate images are fine: they map to zero chains
            }
        }
        Ok(())
    }

    /// f(B_i) ⊆ B_i: the image of a level-ℓ simplex has level ≤ ℓ.
    pub fn check_filtered(&self, src: &Stratification, dst: &Stratification) -> Result<()> {
        for d in 0..=src.complex().dim() {
            for (idx, s) in src.complex().simplices(d).iter().enumerate() {
                if let Some((img, _)) = self.chain_image(s) {
                    let src_level = src.filtration().level(d, idx as u32);
                    let dst_level = dst
                        .filtration()
                        .level_of(&img)
                        .ok_or_else(|| Error::NotFilteredMap(format!("{s:?}")))?;
                    if dst_level > src_level {
                        return Err(Error::NotFilteredMap(format!(
                            "{s:?} at level {src_level} maps into level {dst_level}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Transport through one barycentric subdivision on both sides:
    /// barycenter of σ goes to the barycenter of f(σ).
    pub fn subdivide(
        &self,
        src: &crate::filtration::SubdividedStratified,
        src_base: &SimplicialComplex,
        _dst: &crate::filtration::SubdividedStratified,
        dst_base: &SimplicialComplex,
    ) -> SimplicialMap {
        let mut dst_offsets = vec![0u32; dst_base.dim() + 2];
        for d in 0..=dst_base.dim() {
            dst_offsets[d + 1] = dst_offsets[d] + dst_base.count(d) as u32;
        }
        let vertex_map = src
            .carrier
            .iter()
            .map(|(d, idx)| {
                let s = src_base.simplex(*d, *idx);
                let mut imgs: Vec<Vertex> = s.vertices().iter().map(|v| self.apply(*v)).collect();
                imgs.sort_unstable();
                imgs.dedup();
                let img = Simplex::new(imgs).expect("nonempty image");
                let di = dst_base
                    .index_of(&img)
                    .expect("simplicial map image exists");
                dst_offsets[img.dim()] + di
            })
            .collect();
        SimplicialMap { vertex_map }
    }
}

/// Matrix of f_* on IH in degree `d`, over the homology bases of `src` and
/// `dst`. Columns are indexed by the source basis.
pub fn induced_matrix(
    map: &SimplicialMap,
    src: &IhComputation,
    dst: &IhComputation,
    d: usize,
) -> Result<QMat> {
    let src_reps = src.class_representatives(d);
    let rows = dst.betti(d);
    let mut out = QMat::zero(rows, src_reps.len());
    for (j, rep) in src_reps.iter().enumerate() {
        // push the cycle through f in simplex coordinates
        let mut image: SparseVec = Vec::new();
        for (idx, c) in rep {
            let s = src.strat.complex().simplex(d, *idx);
            if let Some((img, sign)) = map.chain_image(s) {
                let target = dst
                    .strat
                    .complex()
                    .index_of(&img)
                    .ok_or_else(|| Error::Invalid(format!("image {img:?} missing")))?;
                let coeff = if sign >= 0 { c.clone() } else { -c };
                image = add_scaled(&image, &vec![(target, coeff)], &Int::ONE);
            }
        }
        let class = dst.class_of(d, &image)?;
        for (i, v) in class.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    
    
    

    fn circle() -> SimplicialComplex {
        SimplicialComplex::build(&[
            vec!["a".into(), "b".into()],
            vec!["b".into(), "c".into()],
            vec!["a".into(), "c".into()],
        ])
        .unwrap()
    }

    fn cone_s1() -> (Stratification, usize) {
        let c = Stratification::trivial(circle()).cone("v").unwrap();
        (c.stratification, c.apex_stratum)
    }

    #[test]
    fn allowability_examples() {
        let (s, apex_stratum) = cone_s1();
        let complex = s.complex();
        let apex = complex.vertex_by_label("v").unwrap();
        let a = complex.vertex_by_label("a").unwrap();
        let edge = Simplex::new(vec![apex, a]).unwrap();

        let p0 = Perversity::zero(&s);
        let v = is_allowable(&s, &p0, &edge);
        assert!(!v.allowable);
        let rec = &v.records[0];
        assert_eq!((rec.codim, rec.face_dim, rec.face_codim), (2, 0, 1));
        assert_eq!(rec.stratum, apex_stratum);

        let p1 = Perversity::new(&s, |_| 1);
        assert!(is_allowable(&s, &p1, &edge).allowable);

        // disjoint from the singular set: vacuous pass
        let b = complex.vertex_by_label("b").unwrap();
        let rim = Simplex::new(vec![a, b]).unwrap();
        let v = is_allowable(&s, &p0, &rim);
        assert!(v.allowable);
        assert_eq!(v.records[0].face_dim, -1);
    }

    #[test]
    fn ic_of_trivial_filtration_is_full_complex() {
        let x = circle();
        let s = Stratification::trivial(x.clone());
        let pres = IcPresentation::build(&s, &Perversity::zero(&s));
        assert_eq!(pres.gen_count(0), x.count(0));
        assert_eq!(pres.gen_count(1), x.count(1));
    }

    #[test]
    fn ic_of_cone_zero_perversity() {
        let (s, _) = cone_s1();
        let p = Perversity::zero(&s);
        let pres = IcPresentation::build(&s, &p);
        // IC_0: the three rim vertices, apex excluded
        assert_eq!(pres.gen_count(0), 3);
        // IC_1: the three rim edges (spokes fail allowability)
        assert_eq!(pres.gen_count(1), 3);
        // IC_2: one generator, the full cone chain
        assert_eq!(pres.gen_count(2), 1);
        match &pres.gens[2][0] {
            Gen::Combo(c) => assert_eq!(c.len(), 3),
            Gen::Simplex(_) => panic!("cone chain must be a combination"),
        }
    }

    #[test]
    fn ic_vanishes_below_gm_range() {
        let (s, _) = cone_s1();
        let p = Perversity::new(&s, |_| -1);
        let pres = IcPresentation::build(&s, &p);
        assert_eq!(pres.gen_count(2), 0);
    }

    #[test]
    fn homology_of_sphere() {
        let sphere = SimplicialComplex::build(&[
            vec!["a".into(), "b".into(), "c".into()],
            vec!["a".into(), "b".into(), "d".into()],
            vec!["a".into(), "c".into(), "d".into()],
            vec!["b".into(), "c".into(), "d".into()],
        ])
        .unwrap();
        let h = ordinary_homology(&sphere, false);
        assert_eq!(h.betti(), vec![1, 0, 1]);
        assert!(h.degrees.iter().all(|d| d.torsion.is_empty()));
    }

    #[test]
    fn homology_of_torus_and_rp2() {
        let torus = crate::triangulations::torus7();
        let h = ordinary_homology(&torus, false);
        assert_eq!(h.betti(), vec![1, 2, 1]);

        let rp2 = crate::triangulations::rp2_6();
        let h = ordinary_homology(&rp2, false);
        assert_eq!(h.betti(), vec![1, 0, 0]);
        assert_eq!(h.degrees[1].torsion, vec![Int::from(2)]);
        // over the rationals the torsion disappears and betti agree
        let hq = ordinary_homology(&rp2, true);
        assert_eq!(hq.betti(), h.betti());
    }

    #[test]
    fn ih_of_cone_s1() {
        let (s, _) = cone_s1();
        let p = Perversity::zero(&s);
        let h = intersection_homology(&s, &p, 0, false);
        assert_eq!(h.betti(), vec![1, 0, 0]);
    }

    #[test]
    fn ih_of_cone_rp2_with_torsion() {
        let rp2 = crate::triangulations::rp2_6();
        let cone = Stratification::trivial(rp2).cone("v").unwrap();
        let s = cone.stratification;
        // apex has codimension 3: values 0 and 1 are in range
        let p0 = Perversity::zero(&s);
        let h0 = intersection_homology(&s, &p0, 0, false);
        assert_eq!(h0.betti(), vec![1, 0, 0, 0]);
        assert_eq!(h0.degrees[1].torsion, vec![Int::from(2)]);
        let p1 = Perversity::top(&s);
        let h1 = intersection_homology(&s, &p1, 0, false);
        assert_eq!(h1.betti(), vec![1, 0, 0, 0]);
        assert!(h1.degrees[1].torsion.is_empty());
    }

    /// The suspension of the projective plane: the 2-torsion class sits in
    /// degree 1 at the zero perversity and in degree 2 at the top one.
    #[test]
    fn ih_of_suspended_rp2() {
        let s = crate::fixtures::fixture("sigma-rp2").unwrap();
        let h0 = intersection_homology(&s, &Perversity::zero(&s), 1, false);
        assert_eq!(h0.betti(), vec![1, 0, 0, 0]);
        assert_eq!(h0.degrees[1].torsion, vec![Int::from(2)]);
        assert!(h0.degrees[2].torsion.is_empty());
        let ht = intersection_homology(&s, &Perversity::top(&s), 1, false);
        assert_eq!(ht.betti(), vec![1, 0, 0, 0]);
        assert!(ht.degrees[1].torsion.is_empty());
        assert_eq!(ht.degrees[2].torsion, vec![Int::from(2)]);
    }

    #[test]
    fn very_large_perversity_gives_ordinary_homology() {
        let (s, _) = cone_s1();
        let big = Perversity::new(&s, |i| s.codim(i) + s.n() as i64);
        let h = intersection_homology(&s, &big, 0, false);
        let o = ordinary_homology(s.complex(), false);
        assert_eq!(h, o);
    }

    #[test]
    fn monotone_in_perversity() {
        let (s, _) = cone_s1();
        let p0 = Perversity::zero(&s);
        let p1 = Perversity::top(&s).dual(&s); // = zero here; use explicit larger
        let p2 = Perversity::new(&s, |_| 1);
        assert!(p0.le(&p2));
        let pres0 = IcPresentation::build(&s, &p0);
        let pres2 = IcPresentation::build(&s, &p2);
        let _ = p1;
        // every p0-allowable simplex is p2-allowable
        for d in 0..=s.complex().dim() {
            for idx in 0..s.complex().count(d) {
                if pres0.allowable[d][idx] {
                    assert!(pres2.allowable[d][idx]);
                }
            }
        }
        // and every IC^p0 generator lies in IC^p2
        for d in 0..=s.n() {
            for j in 0..pres0.gen_count(d) {
                let chain = pres0.to_simplex_coords(d, &vec![(j as u32, Int::ONE)]);
                assert!(pres2.express_chain(d, &chain).is_some());
            }
        }
    }

    #[test]
    fn identity_induces_identity() {
        let (s, _) = cone_s1();
        let p = Perversity::zero(&s);
        let a = IhComputation::new(s.clone(), p.clone());
        let b = IhComputation::new(s.clone(), p);
        let f = SimplicialMap::identity(s.complex());
        for d in 0..=s.n() {
            let m = induced_matrix(&f, &a, &b, d).unwrap();
            assert!(m.rows == m.cols);
            if m.rows > 0 {
                assert!(m.is_identity());
            }
        }
    }

    #[test]
    fn projection_induces_isomorphism_on_product() {
        let (s, _) = cone_s1();
        let p = Perversity::zero(&s);
        let prod = s.interval_product();
        let pp = p.transport_product(&prod);
        let src = IhComputation::new(prod.stratification.clone(), pp);
        let dst = IhComputation::new(s.clone(), p);
        let f = SimplicialMap {
            vertex_map: prod.projection.clone(),
        };
        f.validate(prod.stratification.complex(), s.complex())
            .unwrap();
        f.check_filtered(&prod.stratification, &s).unwrap();
        for d in 0..=s.n() {
            let m = induced_matrix(&f, &src, &dst, d).unwrap();
            assert_eq!(m.rows, m.cols, "degree {d}");
            assert_eq!(m.rank(), m.rows, "degree {d}");
        }
    }

    /// Composition check: end inclusion into X × I followed by the
    /// projection induces the identity matrix on IH.
    #[test]
    fn inclusion_then_projection_is_identity() {
        let (s, _) = cone_s1();
        let p = Perversity::zero(&s);
        let prod = s.interval_product();
        let pp = p.transport_product(&prod);
        let base = IhComputation::new(s.clone(), p);
        let product = IhComputation::new(prod.stratification.clone(), pp);
        let incl = SimplicialMap {
            vertex_map: prod.bottom.clone(),
        };
        let proj = SimplicialMap {
            vertex_map: prod.projection.clone(),
        };
        for d in 0..=s.n() {
            let a = induced_matrix(&incl, &base, &product, d).unwrap();
            let b = induced_matrix(&proj, &product, &base, d).unwrap();
            let composed = b.mul(&a);
            if composed.rows > 0 {
                assert!(composed.is_identity(), "degree {d}");
            }
        }
    }

    /// A cycle pushed through the singular set fails allowability and the
    /// induced map reports it instead of silently computing.
    #[test]
    fn induced_map_rejects_non_allowable_images() {
        let circle = Stratification::trivial(crate::triangulations::circle3());
        let (cone, _) = cone_s1();
        let p_cone = Perversity::zero(&cone);
        let src = IhComputation::new(circle.clone(), Perversity::zero(&circle));
        let dst = IhComputation::new(cone.clone(), p_cone);
        // fold the circle onto a path through the apex: b goes to the apex
        let apex = cone.complex().vertex_by_label("v").unwrap();
        let a = cone.complex().vertex_by_label("a").unwrap();
        let c = cone.complex().vertex_by_label("c").unwrap();
        let fold = SimplicialMap {
            vertex_map: vec![a, apex, c],
        };
        fold.validate(circle.complex(), cone.complex()).unwrap();
        // degree 1: the fundamental cycle maps through two spokes, which are
        // not allowable at the zero perversity
        assert!(matches!(
            induced_matrix(&fold, &src, &dst, 1),
            Err(Error::NotAllowable(_))
        ));
    }

    /// Everything is immutable after construction and freely shareable
    /// between threads.
    #[test]
    fn values_are_send_and_sync() {
        fn check<T: Send + Sync>() {}
        check::<crate::complex::SimplicialComplex>();
        check::<crate::filtration::Stratification>();
        check::<crate::perversity::Perversity>();
        check::<crate::chain::Chain>();
        check::<crate::coeff::Int>();
        check::<IcPresentation>();
        check::<HomologyResult>();
    }

    #[test]
    fn subdivision_stability_small() {
        let (s, _) = cone_s1();
        let p = Perversity::zero(&s);
        let h0 = intersection_homology(&s, &p, 0, false);
        let h1 = intersection_homology(&s, &p, 1, false);
        let h2 = intersection_homology(&s, &p, 2, false);
        assert_eq!(h0, h1);
        assert_eq!(h1, h2);
    }

    #[test]
    fn filtered_map_check() {
        let (s, _) = cone_s1();
        // collapse everything to the apex: not filtration-preserving as a map
        // from the trivial stratification to the cone (regular -> singular OK,
        // but cone -> cone sending rim to apex lowers level: still filtered).
        let apex = s.complex().vertex_by_label("v").unwrap();
        let collapse = SimplicialMap {
            vertex_map: vec![apex; s.complex().vertex_count()],
        };
        assert!(collapse.check_filtered(&s, &s).is_ok());
        // the reverse direction: apex to a rim vertex breaks the filtration
        let a = s.complex().vertex_by_label("a").unwrap();
        let mut vm: Vec<Vertex> = (0..s.complex().vertex_count() as Vertex).collect();
        vm[apex as usize] = a;
        let bad = SimplicialMap { vertex_map: vm };
        assert!(bad.check_filtered(&s, &s).is_err());
    }
}

