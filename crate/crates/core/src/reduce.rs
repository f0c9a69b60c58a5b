//! Homology-preserving reduction of sparse integer chain complexes.
//!
//! Repeatedly cancels a pair of generators (σ in degree d, τ in degree d−1)
//! joined by a unit boundary coefficient. One cancellation is the Gaussian
//! elimination lemma: the remaining boundary in degree d picks up a Schur
//! correction, the σ-row of D_{d+1} and the τ-column of D_{d−1} are dropped,
//! and the result is chain homotopy equivalent to the input: Betti numbers
//! and torsion are both preserved. Pairs whose row or column has a single
//! entry cause no fill and are taken first; the rest are chosen by a
//! Markowitz fill score. What survives is handed to dense Smith normal form.
//!
//! When tracing is enabled every cancellation is recorded, so chains can be
//! pushed forward (`project`) or lifted back (`include`) through the
//! equivalence; both directions are chain maps and induce inverse
//! isomorphisms on homology.

use crate::coeff::Int;
use crate::matrix::SparseVec;
use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, VecDeque};

#[derive(Debug)]
pub struct Step {
    /// matrix degree: σ lives in `degree`, τ in `degree - 1`
    pub degree: usize,
    pub sigma: u32,
    pub tau: u32,
    /// ±1
    pub lambda: Int,
    /// columns other than σ with an entry in row τ, with that entry
    pub gamma: Vec<(u32, Int)>,
    /// rows other than τ of column σ
    pub delta: SparseVec,
}

pub struct Reducer {
    /// per degree: generator count
    sizes: Vec<usize>,
    alive: Vec<Vec<bool>>,
    /// cols[d][c]: column c of D_d (d ≥ 1); None when dead
    cols: Vec<Vec<Option<SparseVec>>>,
    /// rows[d][r]: columns of D_d with an entry in row r
    rows: Vec<Vec<Option<BTreeSet<u32>>>>,
    single_cols: VecDeque<(usize, u32)>,
    single_rows: VecDeque<(usize, u32)>,
    heap: BinaryHeap<Reverse<(u64, usize, u32)>>,
    steps: Option<Vec<Step>>,
}

impl Reducer {
    /// `matrices[d]` holds the columns of D_d for d in 1..sizes.len();
    /// `matrices[0]` is ignored (degree 0 has zero boundary).
    pub fn new(sizes: Vec<usize>, matrices: Vec<Vec<SparseVec>>, trace: bool) -> Reducer {
        let top = sizes.len().saturating_sub(1);
        let alive: Vec<Vec<bool>> = sizes.iter().map(|n| vec![true; *n]).collect();
        let mut cols: Vec<Vec<Option<SparseVec>>> = Vec::with_capacity(top + 1);
        let mut rows: Vec<Vec<Option<BTreeSet<u32>>>> = Vec::with_capacity(top + 1);
        cols.push(Vec::new());
        rows.push(Vec::new());
        for d in 1..=top {
            let mut row_sets: Vec<Option<BTreeSet<u32>>> =
                vec![Some(BTreeSet::new()); sizes[d - 1]];
            let mut col_vecs: Vec<Option<SparseVec>> = Vec::with_capacity(sizes[d]);
            for (c, col) in matrices[d].iter().enumerate() {
                for (r, _) in col {
                    row_sets[*r as usize].as_mut().unwrap().insert(c as u32);
                }
                col_vecs.push(Some(col.clone()));
            }
            cols.push(col_vecs);
            rows.push(row_sets);
        }
        let mut r = Reducer {
            sizes,
            alive,
            cols,
            rows,
            single_cols: VecDeque::new(),
            single_rows: VecDeque::new(),
            heap: BinaryHeap::new(),
            steps: trace.then(Vec::new),
        };
        for d in 1..r.cols.len() {
            for c in 0..r.cols[d].len() {
                r.enqueue_col(d, c as u32);
            }
            for row in 0..r.rows[d].len() {
                r.enqueue_row(d, row as u32);
            }
        }
        r
    }

    fn col_nnz(&self, d: usize, c: u32) -> usize {
        self.cols[d][c as usize].as_ref().map_or(0, |v| v.len())
    }

    fn row_nnz(&self, d: usize, r: u32) -> usize {
        self.rows[d][r as usize].as_ref().map_or(0, |s| s.len())
    }

    fn enqueue_col(&mut self, d: usize, c: u32) {
        match self.col_nnz(d, c) {
            0 => {}
            1 => self.single_cols.push_back((d, c)),
            _ => {
                if let Some(score) = self.best_score_in_col(d, c) {
                    self.heap.push(Reverse((score, d, c)));
                }
            }
        }
    }

    fn enqueue_row(&mut self, d: usize, r: u32) {
        if self.row_nnz(d, r) == 1 {
            self.single_rows.push_back((d, r));
        }
    }

    /// Best Markowitz score over the unit entries of a column.
    fn best_score_in_col(&self, d: usize, c: u32) -> Option<u64> {
        let col = self.cols[d][c as usize].as_ref()?;
        let cn = col.len() as u64;
        col.iter()
            .filter(|(_, v)| v.is_unit())
            .map(|(r, _)| (self.row_nnz(d, *r) as u64 - 1) * (cn - 1))
            .min()
    }

    /// Runs until no unit entry remains anywhere.
    pub fn reduce(&mut self) {
        loop {
            if let Some((d, c)) = self.single_cols.pop_front() {
                if self.col_nnz(d, c) == 1 {
                    let (r, v) = self.cols[d][c as usize].as_ref().unwrap()[0].clone();
                    if v.is_unit() {
                        self.cancel(d, r, c);
                    }
                }
                continue;
            }
            if let Some((d, r)) = self.single_rows.pop_front() {
                if self.row_nnz(d, r) == 1 {
                    let c = *self.rows[d][r as usize]
                        .as_ref()
                        .unwrap()
                        .iter()
                        .next()
                        .unwrap();
                    let v = crate::matrix::sparse_get(
                        self.cols[d][c as usize].as_ref().unwrap(),
                        r,
                    )
                    .unwrap();
                    if v.is_unit() {
                        self.cancel(d, r, c);
                    }
                }
                continue;
            }
            let Some(Reverse((score, d, c))) = self.heap.pop() else {
                break;
            };
            if self.col_nnz(d, c) == 0 {
                continue;
            }
            let Some(now) = self.best_score_in_col(d, c) else {
                continue;
            };
            if now > score {
                self.heap.push(Reverse((now, d, c)));
                continue;
            }
            // choose the unit entry realizing the score, smallest row first
            let col = self.cols[d][c as usize].as_ref().unwrap();
            let cn = col.len() as u64;
            let r = col
                .iter()
                .filter(|(_, v)| v.is_unit())
                .filter(|(r, _)| (self.row_nnz(d, *r) as u64 - 1) * (cn - 1) == now)
                .map(|(r, _)| *r)
                .next()
                .unwrap();
            self.cancel(d, r, c);
        }
    }

    /// Cancels the pair (σ = column `c` of D_d, τ = row `r`).
    fn cancel(&mut self, d: usize, tau: u32, sigma: u32) {
        let col_sigma = self.cols[d][sigma as usize].take().unwrap();
        let lambda = crate::matrix::sparse_get(&col_sigma, tau)
            .expect("pivot entry")
            .clone();
        debug_assert!(lambda.is_unit());
        let delta: SparseVec = col_sigma.iter().filter(|(r, _)| *r != tau).cloned().collect();
        let row_tau = self.rows[d][tau as usize].take().unwrap();
        let gamma: Vec<(u32, Int)> = row_tau
            .iter()
            .filter(|b| **b != sigma)
            .map(|b| {
                let v = crate::matrix::sparse_get(
                    self.cols[d][*b as usize].as_ref().unwrap(),
                    tau,
                )
                .unwrap()
                .clone();
                (*b, v)
            })
            .collect();

        // detach σ's remaining entries from the row index
        for (r, _) in &delta {
            if let Some(set) = self.rows[d][*r as usize].as_mut() {
                set.remove(&sigma);
            }
        }

        // Schur update: col_b := (col_b − τ entry) − γ_b λ⁻¹ δ
        for (b, gb) in &gamma {
            let col_b = self.cols[d][*b as usize].take().unwrap();
            let stripped: SparseVec = col_b.into_iter().filter(|(r, _)| *r != tau).collect();
            // λ is ±1 so λ⁻¹ = λ
            let factor = -&(gb * &lambda);
            let merged = crate::matrix::add_scaled(&stripped, &delta, &factor);
            // update row incidence for changed support
            let old: BTreeSet<u32> = stripped.iter().map(|e| e.0).collect();
            let new: BTreeSet<u32> = merged.iter().map(|e| e.0).collect();
            for r in old.difference(&new) {
                if let Some(set) = self.rows[d][*r as usize].as_mut() {
                    set.remove(b);
                    let nn = set.len();
                    if nn == 1 {
                        self.single_rows.push_back((d, *r));
                    }
                }
            }
            for r in new.difference(&old) {
                if let Some(set) = self.rows[d][*r as usize].as_mut() {
                    set.insert(*b);
                }
            }
            self.cols[d][*b as usize] = Some(merged);
            self.enqueue_col(d, *b);
        }
        // rows touched by delta may have shrunk to singletons via other paths
        for (r, _) in &delta {
            self.enqueue_row(d, *r);
        }

        // drop the σ-row of D_{d+1}
        if d + 1 < self.cols.len() {
            if let Some(set) = self.rows[d + 1][sigma as usize].take() {
                for y in set {
                    let col = self.cols[d + 1][y as usize].take().unwrap();
                    let stripped: SparseVec =
                        col.into_iter().filter(|(r, _)| *r != sigma).collect();
                    self.cols[d + 1][y as usize] = Some(stripped);
                    self.enqueue_col(d + 1, y);
                }
            }
        }
        // drop the τ-column of D_{d−1}
        if d >= 2 {
            if let Some(col) = self.cols[d - 1][tau as usize].take() {
                for (r, _) in col {
                    if let Some(set) = self.rows[d - 1][r as usize].as_mut() {
                        set.remove(&tau);
                        self.enqueue_row(d - 1, r);
                    }
                }
            }
        }

        self.alive[d][sigma as usize] = false;
        self.alive[d - 1][tau as usize] = false;

        if let Some(steps) = self.steps.as_mut() {
            steps.push(Step {
                degree: d,
                sigma,
                tau,
                lambda,
                gamma,
                delta,
            });
        }
    }

    /// Surviving generators and their dense boundary matrices.
    pub fn residual(&self) -> Residual {
        let gens: Vec<Vec<u32>> = self
            .alive
            .iter()
            .map(|flags| {
                flags
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| **a)
                    .map(|(i, _)| i as u32)
                    .collect()
            })
            .collect();
        let mut mats = Vec::with_capacity(self.cols.len());
        mats.push(Vec::new());
        for d in 1..self.cols.len() {
            let rows = &gens[d - 1];
            let mut m: Vec<Vec<Int>> = vec![vec![Int::ZERO; gens[d].len()]; rows.len()];
            for (j, c) in gens[d].iter().enumerate() {
                if let Some(col) = self.cols[d][*c as usize].as_ref() {
                    for (r, v) in col {
                        let i = rows.binary_search(r).expect("row alive");
                        m[i][j] = v.clone();
                    }
                }
            }
            mats.push(m);
        }
        Residual { gens, mats }
    }

    pub fn original_sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Pushes a chain forward through the equivalence (original → residual
    /// coordinates). Requires tracing.
    pub fn project(&self, degree: usize, chain: &SparseVec) -> SparseVec {
        let steps = self.steps.as_ref().expect("tracing enabled");
        let mut v = chain.clone();
        for s in steps {
            if s.degree == degree {
                // drop the σ coordinate
                if let Ok(p) = v.binary_search_by_key(&s.sigma, |e| e.0) {
                    v.remove(p);
                }
            } else if s.degree == degree + 1 {
                // w ↦ (w − tτ) − t λ⁻¹ δ
                if let Ok(p) = v.binary_search_by_key(&s.tau, |e| e.0) {
                    let t = v.remove(p).1;
                    let factor = -&(&t * &s.lambda);
                    v = crate::matrix::add_scaled(&v, &s.delta, &factor);
                }
            }
        }
        v
    }

    /// Lifts a residual chain back to original coordinates. Requires tracing.
    pub fn include(&self, degree: usize, chain: &SparseVec) -> SparseVec {
        let steps = self.steps.as_ref().expect("tracing enabled");
        let mut v = chain.clone();
        for s in steps.iter().rev() {
            if s.degree == degree {
                // b ↦ b − λ⁻¹ γ(b) σ
                let mut dot = Int::ZERO;
                for (b, gb) in &s.gamma {
                    if let Some(x) = crate::matrix::sparse_get(&v, *b) {
                        dot += &(gb * x);
                    }
                }
                if !dot.is_zero() {
                    let coeff = -&(&dot * &s.lambda);
                    v = crate::matrix::add_scaled(&v, &vec![(s.sigma, Int::ONE)], &coeff);
                }
            }
        }
        v
    }
}

/// Rank of a sparse integer matrix, by reducing the two-term complex
/// 0 → Z^cols → Z^rows and finishing densely.
pub fn sparse_matrix_rank(nrows: usize, columns: &[SparseVec]) -> usize {
    let mut r = Reducer::new(
        vec![nrows, columns.len()],
        vec![Vec::new(), columns.to_vec()],
        false,
    );
    r.reduce();
    let res = r.residual();
    let residual_rank = crate::matrix::smith_normal_form(res.mats[1].clone()).rank;
    // every cancelled pair consumed one unit of rank
    let cancelled = columns.len() - res.gens[1].len();
    cancelled + residual_rank
}

pub struct Residual {
    /// per degree: original indices of surviving generators (sorted)
    pub gens: Vec<Vec<u32>>,
    /// dense boundary matrices over the surviving generators
    pub mats: Vec<Vec<Vec<Int>>>,
}

impl Residual {
    pub fn position(&self, degree: usize, original: u32) -> Option<usize> {
        self.gens.get(degree)?.binary_search(&original).ok()
    }
}
