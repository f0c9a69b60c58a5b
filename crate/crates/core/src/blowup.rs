//! Linear blow-up of decomposed simplices and prisms, with exact rational
//! evaluation, boundary-face bookkeeping, and barycentric-subdivision
//! compatibility witnesses.
//!
//! A decomposition Δ = Δ_0 * … * Δ_k turns P × Δ into a stratified prism of
//! depth k. Its blow-up is (P × c̄Δ_0) × (Δ_1 * … * Δ_k) with evaluation
//! L(x, [x_0, t_0], y) = (x, t_0·x_0 + (1−t_0)·y), which resolves the deepest
//! block and lowers the depth by one.

use crate::error::{Error, Result};
use crate::filtration::Stratification;
use crate::matrix::rational_of;
use crate::simplex::Simplex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// An ambient simplex with an ordered partition of its vertex positions
/// into nonempty blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecomposedSimplex {
    pub vertex_names: Vec<String>,
    pub blocks: Vec<Vec<usize>>,
}

impl DecomposedSimplex {
    pub fn new(vertex_names: Vec<String>, blocks: Vec<Vec<usize>>) -> Result<DecomposedSimplex> {
        let m = vertex_names.len();
        if m == 0 {
            return Err(Error::EmptyInput("simplex with no vertices".into()));
        }
        let mut seen = vec![false; m];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::Invalid("empty block in decomposition".into()));
            }
            for v in b {
                if *v >= m || seen[*v] {
                    return Err(Error::Invalid("blocks must partition the vertices".into()));
                }
                seen[*v] = true;
            }
        }
        if !seen.iter().all(|s| *s) {
            return Err(Error::Invalid("blocks must cover all vertices".into()));
        }
        Ok(DecomposedSimplex {
            vertex_names,
            blocks,
        })
    }

    pub fn dim(&self) -> usize {
        self.vertex_names.len() - 1
    }

    pub fn depth(&self) -> usize {
        self.blocks.len() - 1
    }

    /// Union of the first `j+1` blocks.
    pub fn prefix(&self, j: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.blocks[..=j].iter().flatten().copied().collect();
        out.sort_unstable();
        out
    }

    /// The facet dropping one vertex, with the jump-rule decomposition
    /// (the block shrinks; empty blocks disappear). `None` for a 0-simplex.
    pub fn facet(&self, drop: usize) -> Option<DecomposedSimplex> {
        if self.vertex_names.len() == 1 {
            return None;
        }
        // renumber positions after removing `drop`
        let renum = |v: usize| if v > drop { v - 1 } else { v };
        let mut names = self.vertex_names.clone();
        names.remove(drop);
        let blocks: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .filter(|v| **v != drop)
                    .map(|v| renum(*v))
                    .collect::<Vec<usize>>()
            })
            .filter(|b: &Vec<usize>| !b.is_empty())
            .collect();
        Some(DecomposedSimplex {
            vertex_names: names,
            blocks,
        })
    }
}

/// Reads the decomposition of a simplex off a stratification: blocks sit at
/// the indices where the trace of the skeleton filtration jumps.
pub fn decompose_from_filtration(
    s: &Stratification,
    simplex: &Simplex,
) -> Result<DecomposedSimplex> {
    let complex = s.complex();
    let idx = complex
        .index_of(simplex)
        .ok_or_else(|| Error::NotInComplex(format!("{simplex:?}")))?;
    if s.filtration().level(simplex.dim(), idx) < s.n() {
        return Err(Error::Invalid(format!(
            "{simplex:?} lies in the singular part; its regular part is empty"
        )));
    }
    let names: Vec<String> = simplex
        .vertices()
        .iter()
        .map(|v| complex.label(*v).render())
        .collect();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut previous: Vec<usize> = Vec::new();
    for j in 0..=s.n() {
        if !s.filtration().trace_is_single_face(simplex, j) {
            return Err(Error::NotFiltered(format!(
                "trace of skeleton {j} on {simplex:?} is not a single face"
            )));
        }
        let face = s.filtration().max_face_in_skeleton(simplex, j);
        let current: Vec<usize> = match face {
            Some(f) => simplex
                .vertices()
                .iter()
                .enumerate()
                .filter(|(_, v)| f.contains(**v))
                .map(|(i, _)| i)
                .collect(),
            None => Vec::new(),
        };
        if current.len() > previous.len() {
            let block: Vec<usize> = current
                .iter()
                .copied()
                .filter(|p| !previous.contains(p))
                .collect();
            blocks.push(block);
            previous = current;
        }
    }
    DecomposedSimplex::new(names, blocks)
}

/// A prism factor: a product of simplices given by their dimensions.
/// The empty product is the trivial prism (a point).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Prism {
    pub factor_dims: Vec<usize>,
}

impl Prism {
    pub fn trivial() -> Prism {
        Prism::default()
    }

    pub fn facet_count(&self) -> usize {
        self.factor_dims
            .iter()
            .map(|d| if *d == 0 { 0 } else { d + 1 })
            .sum()
    }
}

/// The blow-up cell (P × c̄Δ_0) × (Δ_1 * … * Δ_k).
#[derive(Clone, Debug)]
pub struct BlowupCell {
    pub prism: Prism,
    pub decomposition: DecomposedSimplex,
}

/// A point of the blow-up cell in exact rational coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct CellPoint {
    /// barycentric coordinates per prism factor
    pub prism: Vec<Vec<BigRational>>,
    pub t0: BigRational,
    /// barycentric over the Δ_0 positions
    pub x0: Vec<BigRational>,
    /// barycentric over the join positions (blocks 1..k in order)
    pub y: Vec<BigRational>,
}

/// A point of P × Δ.
#[derive(Clone, Debug, PartialEq)]
pub struct AmbientPoint {
    pub prism: Vec<Vec<BigRational>>,
    /// barycentric over all ambient positions
    pub z: Vec<BigRational>,
}

impl BlowupCell {
    pub fn new(decomposition: DecomposedSimplex, prism: Prism) -> Result<BlowupCell> {
        if decomposition.depth() == 0 {
            return Err(Error::ZeroDepth);
        }
        Ok(BlowupCell {
            prism,
            decomposition,
        })
    }

    pub fn delta0(&self) -> &[usize] {
        &self.decomposition.blocks[0]
    }

    /// Ambient positions of the join part, in block order.
    pub fn join_positions(&self) -> Vec<usize> {
        self.decomposition.blocks[1..]
            .iter()
            .flatten()
            .copied()
            .collect()
    }

    /// Depth drops by exactly one under the blow-up.
    pub fn depth(&self) -> usize {
        self.decomposition.depth() - 1
    }

    /// L(x, [x_0, t_0], y) = (x, t_0·x_0 + (1−t_0)·y).
    pub fn evaluate(&self, p: &CellPoint) -> AmbientPoint {
        let m = self.decomposition.vertex_names.len();
        let mut z = vec![BigRational::zero(); m];
        for (i, pos) in self.delta0().iter().enumerate() {
            z[*pos] = &p.t0 * &p.x0[i];
        }
        let one_minus = BigRational::one() - &p.t0;
        for (i, pos) in self.join_positions().iter().enumerate() {
            z[*pos] = &one_minus * &p.y[i];
        }
        AmbientPoint {
            prism: p.prism.clone(),
            z,
        }
    }

    /// Inverse of L where it is defined: splits z by its Δ_0 weight. `None`
    /// when the point lies in the image of the collapsed face (weight 1).
    pub fn lift(&self, a: &AmbientPoint) -> Option<CellPoint> {
        let s: BigRational = self
            .delta0()
            .iter()
            .map(|pos| a.z[*pos].clone())
            .fold(BigRational::zero(), |acc, v| acc + v);
        if s == BigRational::one() {
            return None;
        }
        let one_minus = BigRational::one() - &s;
        let x0 = if s.is_zero() {
            // cone point: x0 is immaterial; use the uniform representative
            let k = self.delta0().len() as i64;
            vec![rational_of(1, k); self.delta0().len()]
        } else {
            self.delta0().iter().map(|pos| &a.z[*pos] / &s).collect()
        };
        let y = self
            .join_positions()
            .iter()
            .map(|pos| &a.z[*pos] / &one_minus)
            .collect();
        Some(CellPoint {
            prism: a.prism.clone(),
            t0: s,
            x0,
            y,
        })
    }
}

// ---------------------------------------------------------------------------
// sampling

fn sample_barycentric(rng: &mut ChaCha8Rng, len: usize) -> Vec<BigRational> {
    let nums: Vec<i64> = (0..len).map(|_| rng.random_range(1..=9)).collect();
    let total: i64 = nums.iter().sum();
    nums.into_iter().map(|n| rational_of(n, total)).collect()
}

fn sample_prism(rng: &mut ChaCha8Rng, prism: &Prism) -> Vec<Vec<BigRational>> {
    prism
        .factor_dims
        .iter()
        .map(|d| sample_barycentric(rng, d + 1))
        .collect()
}

fn sample_cell_point(rng: &mut ChaCha8Rng, cell: &BlowupCell) -> CellPoint {
    CellPoint {
        prism: sample_prism(rng, &cell.prism),
        t0: rational_of(rng.random_range(1..=8), 9),
        x0: sample_barycentric(rng, cell.delta0().len()),
        y: sample_barycentric(rng, cell.join_positions().len()),
    }
}

// ---------------------------------------------------------------------------
// boundary faces

/// How a codimension-one face of the blow-up cell corresponds to a facet of
/// P × Δ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FaceKind {
    /// Facet of a prism factor: the restriction of L is the blow-up of Q × Δ.
    PrismSide { factor: usize, vertex: usize },
    /// Coordinate face of c̄Δ_0 or of the join: the restriction of L is the
    /// blow-up of the facet with its induced decomposition.
    Direct { dropped: usize },
    /// Δ_0 was a single vertex and it was dropped: the face is {ϑ} × J and L
    /// restricts to the identity onto the facet, which still carries depth
    /// `residual_depth` and resolves by its own blow-up.
    ConePoint { dropped: usize, residual_depth: usize },
}

#[derive(Clone, Debug)]
pub struct T1Face {
    pub kind: FaceKind,
    /// induced decomposition of the underlying facet (for Δ-side faces)
    pub facet: Option<DecomposedSimplex>,
}

#[derive(Clone, Debug)]
pub struct BoundaryFaces {
    pub t1: Vec<T1Face>,
    /// the extra face (P × Δ_0 × {1}) × (Δ_1 * … * Δ_k); in the bijective
    /// case (k = 1, dim Δ_1 = 0) it doubles as the cover of the Δ_0 facet
    pub t2_is_extra: bool,
    pub blowup_facet_count: usize,
    pub base_facet_count: usize,
}

/// Enumerates the codimension-one faces of the blow-up cell and pairs each
/// non-collapsed one with a facet of P × Δ.
pub fn boundary_faces(cell: &BlowupCell) -> BoundaryFaces {
    let d = &cell.decomposition;
    let delta0 = cell.delta0();
    let join = cell.join_positions();
    let m = d.dim();
    let join_dim = join.len() - 1;

    let mut t1 = Vec::new();
    for (factor, fd) in cell.prism.factor_dims.iter().enumerate() {
        if *fd >= 1 {
            for vertex in 0..=*fd {
                t1.push(T1Face {
                    kind: FaceKind::PrismSide { factor, vertex },
                    facet: None,
                });
            }
        }
    }
    // sides of the closed cone over Δ_0
    for v in delta0 {
        let facet = d.facet(*v).expect("dim ≥ 1");
        if delta0.len() == 1 {
            t1.push(T1Face {
                kind: FaceKind::ConePoint {
                    dropped: *v,
                    residual_depth: facet.depth(),
                },
                facet: Some(facet),
            });
        } else {
            t1.push(T1Face {
                kind: FaceKind::Direct { dropped: *v },
                facet: Some(facet),
            });
        }
    }
    // facets of the join (absent when the join is a point)
    if join_dim >= 1 {
        for w in &join {
            let facet = d.facet(*w).expect("dim ≥ 1");
            t1.push(T1Face {
                kind: FaceKind::Direct { dropped: *w },
                facet: Some(facet),
            });
        }
    }

    let blowup_facet_count = cell.prism.facet_count() + (delta0.len() + 1) + if join_dim >= 1 {
        join.len()
    } else {
        0
    };
    let base_facet_count = cell.prism.facet_count() + if m >= 1 { m + 1 } else { 0 };
    BoundaryFaces {
        t1,
        t2_is_extra: join_dim >= 1,
        blowup_facet_count,
        base_facet_count,
    }
}

/// Exhaustively checkable form of the boundary formula for one cell.
#[derive(Clone, Debug)]
pub struct BoundaryReport {
    pub blocks: Vec<Vec<usize>>,
    pub depth_in: usize,
    pub depth_out: usize,
    pub t1_count: usize,
    pub base_facet_count: usize,
    pub blowup_facet_count: usize,
    pub count_identity: bool,
    pub commutation_ok: bool,
    pub lift_round_trip_ok: bool,
    pub surjectivity_ok: bool,
    pub bijective_case: bool,
}

impl BoundaryReport {
    pub fn pass(&self) -> bool {
        self.count_identity && self.commutation_ok && self.lift_round_trip_ok && self.surjectivity_ok
    }
}

/// Verifies, with exact arithmetic on deterministic samples:
///  * the face-count identity |∂(P×Δ)^blu| = |∂(P×Δ)| + 1 (the bijective
///    case k = 1, dim Δ_1 = 0 has equality without the +1),
///  * commutation of each T1 restriction with the facet's own blow-up,
///  * L is injective on the open cell (lift ∘ L = id) and surjective onto
///    the closed cell (round trips through lift).
pub fn verify_boundary_formula(cell: &BlowupCell, samples: usize, seed: u64) -> BoundaryReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let faces = boundary_faces(cell);
    let bijective_case = cell.decomposition.depth() == 1 && cell.join_positions().len() == 1;
    let expected = if faces.t2_is_extra {
        faces.base_facet_count + 1
    } else {
        faces.base_facet_count
    };
    let count_identity = faces.blowup_facet_count == expected
        && faces.t1_count_vs_base(bijective_case);

    let mut commutation_ok = true;
    for face in &faces.t1 {
        for _ in 0..samples {
            if !check_face_commutation(cell, face, &mut rng) {
                commutation_ok = false;
            }
        }
    }

    let mut lift_round_trip_ok = true;
    let mut surjectivity_ok = true;
    for _ in 0..samples {
        // interior round trip: lift(L(u)) = u, so L is injective on the
        // open cell and interiors correspond
        let u = sample_cell_point(&mut rng, cell);
        let a = cell.evaluate(&u);
        match cell.lift(&a) {
            Some(back) => {
                if back != u {
                    lift_round_trip_ok = false;
                }
            }
            None => lift_round_trip_ok = false,
        }
        // surjectivity: any ambient sample is hit
        let z = AmbientPoint {
            prism: sample_prism(&mut rng, &cell.prism),
            z: sample_barycentric(&mut rng, cell.decomposition.vertex_names.len()),
        };
        match cell.lift(&z) {
            Some(u) => {
                if cell.evaluate(&u).z != z.z {
                    surjectivity_ok = false;
                }
            }
            None => surjectivity_ok = false,
        }
        // the collapsed face covers the Δ_0 weight-1 points
        let mut z1 = vec![BigRational::zero(); cell.decomposition.vertex_names.len()];
        let x0 = sample_barycentric(&mut rng, cell.delta0().len());
        for (i, pos) in cell.delta0().iter().enumerate() {
            z1[*pos] = x0[i].clone();
        }
        let u1 = CellPoint {
            prism: sample_prism(&mut rng, &cell.prism),
            t0: BigRational::one(),
            x0,
            y: sample_barycentric(&mut rng, cell.join_positions().len()),
        };
        if cell.evaluate(&u1).z != z1 {
            surjectivity_ok = false;
        }
    }

    BoundaryReport {
        blocks: cell.decomposition.blocks.clone(),
        depth_in: cell.decomposition.depth(),
        depth_out: cell.depth(),
        t1_count: faces.t1.len(),
        base_facet_count: faces.base_facet_count,
        blowup_facet_count: faces.blowup_facet_count,
        count_identity,
        commutation_ok,
        lift_round_trip_ok,
        surjectivity_ok,
        bijective_case,
    }
}

impl BoundaryFaces {
    fn t1_count_vs_base(&self, bijective_case: bool) -> bool {
        if self.t2_is_extra {
            self.t1.len() == self.base_facet_count
        } else {
            // the Δ_0 facet is covered by the collapsed face instead
            bijective_case && self.t1.len() + 1 == self.base_facet_count
        }
    }
}

fn check_face_commutation(cell: &BlowupCell, face: &T1Face, rng: &mut ChaCha8Rng) -> bool {
    match &face.kind {
        FaceKind::PrismSide { factor, vertex } => {
            // set the factor coordinate to a facet point; L only forwards it
            let mut u = sample_cell_point(rng, cell);
            let dim = cell.prism.factor_dims[*factor];
            let mut coords = sample_barycentric(rng, dim);
            coords.insert(*vertex, BigRational::zero());
            u.prism[*factor] = coords.clone();
            let a = cell.evaluate(&u);
            a.prism[*factor] == coords
        }
        FaceKind::Direct { dropped } => {
            let facet = face.facet.as_ref().expect("Δ-side face");
            let facet_cell = BlowupCell::new(facet.clone(), cell.prism.clone())
                .expect("direct facets keep positive depth");
            let u = sample_cell_point(rng, &facet_cell);
            let a_small = facet_cell.evaluate(&u);
            // embed: same coordinates with 0 at the dropped ambient position
            let mut z_expected = vec![BigRational::zero(); cell.decomposition.vertex_names.len()];
            for (i, v) in a_small.z.iter().enumerate() {
                let amb = if i >= *dropped { i + 1 } else { i };
                z_expected[amb] = v.clone();
            }
            // the same cell point read inside the big cell
            let big_u = embed_cell_point(cell, facet_cell.delta0(), &facet_cell.join_positions(), *dropped, &u);
            cell.evaluate(&big_u).z == z_expected
        }
        FaceKind::ConePoint { dropped, .. } => {
            // the face {ϑ} × J maps identically onto the facet Δ ∖ Δ_0
            let y = sample_barycentric(rng, cell.join_positions().len());
            let u = CellPoint {
                prism: sample_prism(rng, &cell.prism),
                t0: BigRational::zero(),
                x0: vec![BigRational::one()],
                y: y.clone(),
            };
            let a = cell.evaluate(&u);
            if !a.z[*dropped].is_zero() {
                return false;
            }
            cell.join_positions()
                .iter()
                .enumerate()
                .all(|(i, pos)| a.z[*pos] == y[i])
        }
    }
}

/// Reinterprets a facet-cell point inside the big cell: coordinates agree,
/// the dropped position carries weight zero.
fn embed_cell_point(
    cell: &BlowupCell,
    facet_delta0: &[usize],
    facet_join: &[usize],
    dropped: usize,
    u: &CellPoint,
) -> CellPoint {
    let to_ambient = |p: usize| if p >= dropped { p + 1 } else { p };
    let mut x0 = vec![BigRational::zero(); cell.delta0().len()];
    for (i, pos) in facet_delta0.iter().enumerate() {
        let amb = to_ambient(*pos);
        let slot = cell
            .delta0()
            .iter()
            .position(|q| *q == amb)
            .expect("Δ0 position survives");
        x0[slot] = u.x0[i].clone();
    }
    let mut y = vec![BigRational::zero(); cell.join_positions().len()];
    let big_join = cell.join_positions();
    for (i, pos) in facet_join.iter().enumerate() {
        let amb = to_ambient(*pos);
        let slot = big_join
            .iter()
            .position(|q| *q == amb)
            .expect("join position survives");
        y[slot] = u.y[i].clone();
    }
    CellPoint {
        prism: u.prism.clone(),
        t0: u.t0.clone(),
        x0,
        y,
    }
}

// ---------------------------------------------------------------------------
// barycentric subdivision compatibility

/// A cell of the barycentric subdivision of Δ: a strictly increasing chain
/// of faces, each given by ambient positions. `Whole` stands for Δ itself
/// with its original decomposition.
#[derive(Clone, Debug)]
pub enum SubdivisionCell {
    Whole,
    Chain(Vec<Vec<usize>>),
}

#[derive(Clone, Debug)]
pub struct SubdivisionWitness {
    /// induced decomposition blocks of ∇ (indices into the chain)
    pub induced_blocks: Vec<Vec<usize>>,
    /// R_∇ = R_Δ ∩ ∇: the last induced block is exactly the set of
    /// barycenters of faces not inside the singular prefix
    pub regular_parts_match: bool,
    /// identity witness (∇ = Δ)
    pub identity: bool,
    pub samples_checked: usize,
    pub commutation_ok: bool,
}

/// Builds the induced decomposition of a subdivision cell and verifies the
/// interchange L_{P×Δ} ∘ I = I ∘ L_{P×∇} at deterministic rational samples,
/// where I lifts a point of ∇ ⊆ Δ through the big blow-up.
pub fn subdivision_compatibility(
    d: &DecomposedSimplex,
    cell: &SubdivisionCell,
    samples: usize,
    seed: u64,
) -> Result<SubdivisionWitness> {
    let chain: Vec<Vec<usize>> = match cell {
        SubdivisionCell::Whole => {
            return Ok(SubdivisionWitness {
                induced_blocks: d
                    .blocks
                    .iter()
                    .enumerate()
                    .map(|(j, _)| vec![j])
                    .collect(),
                regular_parts_match: true,
                identity: true,
                samples_checked: 0,
                commutation_ok: true,
            });
        }
        SubdivisionCell::Chain(c) => c.clone(),
    };
    // validate the chain
    for w in chain.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if a.len() >= b.len() || !a.iter().all(|v| b.contains(v)) {
            return Err(Error::Invalid("not a strictly increasing face chain".into()));
        }
    }
    let m = d.dim() + 1;
    if chain.iter().flatten().any(|v| *v >= m) {
        return Err(Error::Invalid("chain position out of range".into()));
    }

    // level of a barycenter = least prefix containing its face
    let level_of = |face: &Vec<usize>| -> usize {
        (0..d.blocks.len())
            .find(|j| {
                let prefix = d.prefix(*j);
                face.iter().all(|v| prefix.contains(v))
            })
            .expect("the whole simplex is the last prefix")
    };
    let levels: Vec<usize> = chain.iter().map(level_of).collect();
    if levels.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Invalid("chain levels must be monotone".into()));
    }
    let mut induced_blocks: Vec<Vec<usize>> = Vec::new();
    for (i, lvl) in levels.iter().enumerate() {
        match induced_blocks.last_mut() {
            Some(last) if levels[*last.last().unwrap()] == *lvl => last.push(i),
            _ => induced_blocks.push(vec![i]),
        }
    }

    // R_∇ = R_Δ ∩ ∇: a barycenter lies in the regular part exactly when its
    // carrier leaves the singular prefix, which happens only at the top
    // level. A cell entirely inside the singular part has no regular block.
    let last_block = induced_blocks.last().unwrap();
    let top_is_regular = levels.last().is_some_and(|l| *l == d.depth());
    let regular_parts_match = chain.iter().enumerate().all(|(i, _)| {
        let in_regular = levels[i] == d.depth();
        let in_regular_block = top_is_regular && last_block.contains(&i);
        in_regular == in_regular_block
    });

    // barycenter of a face, as ambient barycentric coordinates
    let bary = |face: &Vec<usize>| -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); m];
        let w = rational_of(1, face.len() as i64);
        for p in face {
            v[*p] = w.clone();
        }
        v
    };

    let big = BlowupCell::new(d.clone(), Prism::trivial())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut commutation_ok = true;
    let mut checked = 0;
    if induced_blocks.len() >= 2 {
        let first: Vec<usize> = induced_blocks[0].clone();
        let rest: Vec<usize> = induced_blocks[1..].iter().flatten().copied().collect();
        for sample in 0..samples {
            // point of (P×∇)^blu: cone coordinate over the first block,
            // join coordinate over the rest
            let t = if sample % 3 == 0 {
                BigRational::one()
            } else {
                rational_of(rng.random_range(1..=8), 9)
            };
            let x1w = sample_barycentric(&mut rng, first.len());
            let yw = sample_barycentric(&mut rng, rest.len());
            // ambient coordinates of the two legs
            let mut x1 = vec![BigRational::zero(); m];
            for (i, ci) in first.iter().enumerate() {
                let b = bary(&chain[*ci]);
                for p in 0..m {
                    x1[p] += &x1w[i] * &b[p];
                }
            }
            let mut y = vec![BigRational::zero(); m];
            for (i, ci) in rest.iter().enumerate() {
                let b = bary(&chain[*ci]);
                for p in 0..m {
                    y[p] += &yw[i] * &b[p];
                }
            }
            // downstairs: z = L_{P×∇}(x1, t, y) inside ∇ ⊆ Δ
            let one_minus = BigRational::one() - &t;
            let z: Vec<BigRational> = (0..m).map(|p| &t * &x1[p] + &one_minus * &y[p]).collect();
            // upstairs: I of the cell point, built from z (and from y when z
            // sits entirely inside Δ_0)
            let s: BigRational = big
                .delta0()
                .iter()
                .map(|p| z[*p].clone())
                .fold(BigRational::zero(), |acc, v| acc + v);
            let lifted = if s == BigRational::one() {
                // only reachable at t = 1 with x1 inside Δ_0; the join leg of
                // the lift is the renormalized non-Δ_0 part of y
                let wy: BigRational = big
                    .delta0()
                    .iter()
                    .map(|p| y[*p].clone())
                    .fold(BigRational::zero(), |acc, v| acc + v);
                let denom = BigRational::one() - &wy;
                CellPoint {
                    prism: Vec::new(),
                    t0: BigRational::one(),
                    x0: big.delta0().iter().map(|p| z[*p].clone()).collect(),
                    y: big
                        .join_positions()
                        .iter()
                        .map(|p| &y[*p] / &denom)
                        .collect(),
                }
            } else {
                big.lift(&AmbientPoint {
                    prism: Vec::new(),
                    z: z.clone(),
                })
                .expect("s < 1")
            };
            // interchange: evaluating the lift downstairs returns z
            let back = big.evaluate(&lifted);
            checked += 1;
            if back.z != z {
                commutation_ok = false;
            }
        }
    }

    Ok(SubdivisionWitness {
        induced_blocks,
        regular_parts_match,
        identity: false,
        samples_checked: checked,
        commutation_ok,
    })
}

/// All ordered partitions of {0, …, m} into nonempty blocks (decompositions
/// of Δ^m), in a deterministic order.
pub fn enumerate_decompositions(dim: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(remaining: &[usize], current: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if remaining.is_empty() {
            out.push(current.clone());
            return;
        }
        // next block = any nonempty subset of what is left
        let subsets = 1usize << remaining.len();
        for mask in 1..subsets {
            let mut block = Vec::new();
            let mut next: Vec<usize> = Vec::new();
            for (i, v) in remaining.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    block.push(*v);
                } else {
                    next.push(*v);
                }
            }
            current.push(block);
            go(&next, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    let all: Vec<usize> = (0..=dim).collect();
    go(&all, &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtration::Stratification;
    use crate::triangulations::circle3;

    fn decomp(names: &[&str], blocks: &[&[usize]]) -> DecomposedSimplex {
        DecomposedSimplex::new(
            names.iter().map(|s| s.to_string()).collect(),
            blocks.iter().map(|b| b.to_vec()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn decompose_cone_triangle() {
        let cone = Stratification::trivial(circle3()).cone("v").unwrap();
        let s = cone.stratification;
        let complex = s.complex();
        let apex = complex.vertex_by_label("v").unwrap();
        let a = complex.vertex_by_label("a").unwrap();
        let b = complex.vertex_by_label("b").unwrap();
        let tri = Simplex::new(vec![apex, a, b]).unwrap();
        let d = decompose_from_filtration(&s, &tri).unwrap();
        assert_eq!(d.depth(), 1);
        assert_eq!(d.blocks.len(), 2);
        assert_eq!(d.blocks[0].len(), 1);
        assert_eq!(d.blocks[1].len(), 2);
        // the Δ0 position names the apex
        assert_eq!(d.vertex_names[d.blocks[0][0]], "v");

        // a rim edge misses the singular set: k = 0
        let rim = Simplex::new(vec![a, b]).unwrap();
        let d = decompose_from_filtration(&s, &rim).unwrap();
        assert_eq!(d.depth(), 0);
        assert!(BlowupCell::new(d, Prism::trivial()).is_err());
    }

    #[test]
    fn decompose_depth_two() {
        let cone = Stratification::trivial(circle3()).cone("v").unwrap();
        let cc = cone.stratification.cone("w").unwrap();
        let s = cc.stratification;
        let complex = s.complex();
        let w = complex.vertex_by_label("w").unwrap();
        let v = complex.vertex_by_label("v").unwrap();
        let a = complex.vertex_by_label("a").unwrap();
        let tri = Simplex::new(vec![w, v, a]).unwrap();
        let d = decompose_from_filtration(&s, &tri).unwrap();
        assert_eq!(d.depth(), 2);
        assert_eq!(
            d.blocks.iter().map(|b| b.len()).collect::<Vec<_>>(),
            vec![1, 1, 1]
        );
        assert_eq!(d.vertex_names[d.blocks[0][0]], "w");
        assert_eq!(d.vertex_names[d.blocks[1][0]], "v");
    }

    #[test]
    fn blow_up_square_example() {
        // cone over an edge: Δ_0 a point, Δ_1 an edge; the blow-up is a square
        let d = decomp(&["v", "b", "c"], &[&[0], &[1, 2]]);
        let cell = BlowupCell::new(d, Prism::trivial()).unwrap();
        assert_eq!(cell.depth(), 0);
        let faces = boundary_faces(&cell);
        assert_eq!(faces.t1.len(), 3);
        assert!(faces.t2_is_extra);
        assert_eq!(faces.blowup_facet_count, 4);
        assert_eq!(faces.base_facet_count, 3);
        let report = verify_boundary_formula(&cell, 10, 7);
        assert!(report.pass(), "{report:?}");
    }

    #[test]
    fn bijective_case() {
        // k = 1, dim Δ_1 = 0: L is a bijection of closed cells
        let d = decomp(&["v", "w"], &[&[0], &[1]]);
        let cell = BlowupCell::new(d, Prism::trivial()).unwrap();
        let report = verify_boundary_formula(&cell, 10, 3);
        assert!(report.bijective_case);
        assert!(report.pass(), "{report:?}");
        assert_eq!(report.blowup_facet_count, report.base_facet_count);
    }

    #[test]
    fn collapsed_face_is_constant_in_y() {
        let d = decomp(&["v", "b", "c"], &[&[0], &[1, 2]]);
        let cell = BlowupCell::new(d, Prism::trivial()).unwrap();
        let mk = |y0: i64, y1: i64| CellPoint {
            prism: Vec::new(),
            t0: BigRational::one(),
            x0: vec![BigRational::one()],
            y: vec![rational_of(y0, y0 + y1), rational_of(y1, y0 + y1)],
        };
        let a = cell.evaluate(&mk(1, 2));
        let b = cell.evaluate(&mk(5, 1));
        assert_eq!(a.z, b.z);
        assert!(a.z[0].is_one());
    }

    #[test]
    fn exhaustive_small_dimensions() {
        for dim in 1..=3 {
            for blocks in enumerate_decompositions(dim) {
                if blocks.len() < 2 {
                    continue;
                }
                let names: Vec<String> = (0..=dim).map(|i| format!("u{i}")).collect();
                let d = DecomposedSimplex::new(names, blocks).unwrap();
                let cell = BlowupCell::new(d, Prism::trivial()).unwrap();
                let report = verify_boundary_formula(&cell, 4, 11);
                assert!(report.pass(), "{report:?}");
                assert_eq!(report.depth_out + 1, report.depth_in);
            }
        }
    }

    #[test]
    fn decomposition_count() {
        // ordered set partitions of a 3-set: 13
        assert_eq!(enumerate_decompositions(2).len(), 13);
    }

    #[test]
    fn prism_factor_faces() {
        let d = decomp(&["v", "b"], &[&[0], &[1]]);
        let cell = BlowupCell::new(
            d,
            Prism {
                factor_dims: vec![2],
            },
        )
        .unwrap();
        let report = verify_boundary_formula(&cell, 6, 5);
        assert!(report.pass(), "{report:?}");
        assert_eq!(report.base_facet_count, 3 + 2);
    }

    #[test]
    fn subdivision_witness_whole_and_cells() {
        let d = decomp(&["v", "b", "c"], &[&[0], &[1, 2]]);
        let w = subdivision_compatibility(&d, &SubdivisionCell::Whole, 0, 0).unwrap();
        assert!(w.identity && w.commutation_ok);

        // cell of the barycentric subdivision containing the barycenter:
        // chain {v} ⊂ {v,b} ⊂ {v,b,c}
        let chain = SubdivisionCell::Chain(vec![vec![0], vec![0, 1], vec![0, 1, 2]]);
        let w = subdivision_compatibility(&d, &chain, 10, 13).unwrap();
        assert!(w.commutation_ok, "{w:?}");
        assert!(w.regular_parts_match);
        assert_eq!(w.induced_blocks.len(), 2);

        // a cell missing Δ_0: chain {b} ⊂ {b,c}
        let chain = SubdivisionCell::Chain(vec![vec![1], vec![1, 2]]);
        let w = subdivision_compatibility(&d, &chain, 10, 17).unwrap();
        assert!(w.commutation_ok);
        // both barycenters live beyond the singular prefix: one block
        assert_eq!(w.induced_blocks.len(), 1);

        // a straddling cell: {b} ⊂ {v,b} has a level drop: invalid as a chain
        // ordered by level? levels are 1 then 0 → rejected
        let bad = SubdivisionCell::Chain(vec![vec![1], vec![0]]);
        assert!(subdivision_compatibility(&d, &bad, 2, 0).is_err());
    }

    #[test]
    fn straddling_subdivision_cell() {
        // chain {v,b} ⊂ {v,b,c}: the first barycenter straddles Δ_0 and the
        // join; its level is 1, so a single induced block of depth 0, but
        // {v} ⊂ {v,b,c} gives blocks ({v}), ({v,b,c}-barycenter)
        let d = decomp(&["v", "b", "c"], &[&[0], &[1, 2]]);
        let chain = SubdivisionCell::Chain(vec![vec![0, 1], vec![0, 1, 2]]);
        let w = subdivision_compatibility(&d, &chain, 8, 19).unwrap();
        assert_eq!(w.induced_blocks.len(), 1);
        let chain = SubdivisionCell::Chain(vec![vec![0], vec![0, 1, 2]]);
        let w = subdivision_compatibility(&d, &chain, 8, 23).unwrap();
        assert_eq!(w.induced_blocks.len(), 2);
        assert!(w.commutation_ok);
    }
}
