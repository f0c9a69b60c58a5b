//! Exact linear algebra: Smith normal form over the integers, sparse integer
//! kernels (saturated by construction: a kernel of an integer matrix contains
//! every integer solution), lattice membership, and small rational matrices.

use crate::coeff::Int;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Sparse integer vector: sorted by index, no zero entries.
pub type SparseVec = Vec<(u32, Int)>;

pub fn sparse_get(v: &SparseVec, i: u32) -> Option<&Int> {
    v.binary_search_by_key(&i, |e| e.0).ok().map(|p| &v[p].1)
}

/// `a + c * b` as a sorted merge, dropping zeros.
pub fn add_scaled(a: &SparseVec, b: &SparseVec, c: &Int) -> SparseVec {
    if c.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ia, va)), Some((ib, vb))) if ia == ib => {
                let s = va + &(c * vb);
                if !s.is_zero() {
                    out.push((*ia, s));
                }
                i += 1;
                j += 1;
            }
            (Some((ia, va)), Some((ib, _))) if ia < ib => {
                out.push((*ia, va.clone()));
                i += 1;
            }
            (Some(_), Some((ib, vb))) => {
                out.push((*ib, c * vb));
                j += 1;
            }
            (Some((ia, va)), None) => {
                out.push((*ia, va.clone()));
                i += 1;
            }
            (None, Some((ib, vb))) => {
                out.push((*ib, c * vb));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Smith normal form (dense; used on the small residue left by reduction)

pub struct Snf {
    pub rank: usize,
    /// All nonzero diagonal entries, positive, with d1 | d2 | ...
    pub divisors: Vec<Int>,
}

impl Snf {
    pub fn torsion(&self) -> Vec<Int> {
        self.divisors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

/// Diagonalizes by unimodular row/column operations.
pub fn smith_normal_form(mut m: Vec<Vec<Int>>) -> Snf {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut divisors = Vec::new();
    let bound = rows.min(cols);
    let mut k = 0;
    'outer: while k < bound {
        // locate a minimal-magnitude nonzero pivot in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if !m[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break 'outer;
        };
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        // clear column and row k; restart when a remainder undercuts the pivot
        let mut clean = true;
        for i in (k + 1)..rows {
            if !m[i][k].is_zero() {
                let (q, r) = m[i][k].div_rem(&m[k][k]);
                for j in k..cols {
                    let delta = &q * &m[k][j];
                    m[i][j] = &m[i][j] - &delta;
                }
                if !r.is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue 'outer;
        }
        for j in (k + 1)..cols {
            if !m[k][j].is_zero() {
                let (q, r) = m[k][j].div_rem(&m[k][k]);
                for i in k..rows {
                    let delta = &q * &m[i][k];
                    m[i][j] = &m[i][j] - &delta;
                }
                if !r.is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue 'outer;
        }
        // divisibility: every remaining entry must be a multiple of the pivot
        for i in (k + 1)..rows {
            for j in (k + 1)..cols {
                if !m[k][k].divides(&m[i][j]) {
                    let addend: Vec<Int> = m[i].clone();
                    for (jj, cell) in addend.into_iter().enumerate() {
                        m[k][jj] = &m[k][jj] + &cell;
                    }
                    continue 'outer;
                }
            }
        }
        divisors.push(m[k][k].abs());
        k += 1;
    }
    Snf {
        rank: divisors.len(),
        divisors,
    }
}

// ---------------------------------------------------------------------------
// sparse integer kernel

/// Basis of `{ x : M x = 0 }` for the matrix whose j-th column is `cols[j]`.
/// Row-by-row euclidean sweep; the result generates all integer solutions,
/// so the basis is saturated.
pub fn sparse_kernel(cols: &[SparseVec]) -> Vec<SparseVec> {
    // generator = (combination over column indices, current image vector)
    let mut combos: Vec<SparseVec> = (0..cols.len())
        .map(|j| vec![(j as u32, Int::ONE)])
        .collect();
    let mut values: Vec<SparseVec> = cols.to_vec();
    let mut alive: Vec<bool> = vec![true; cols.len()];
    // row -> generators with a nonzero value there
    let mut incidence: BTreeMap<u32, BTreeSet<usize>> = BTreeMap::new();
    for (j, col) in cols.iter().enumerate() {
        for (r, _) in col {
            incidence.entry(*r).or_default().insert(j);
        }
    }
    let rows: Vec<u32> = incidence.keys().copied().collect();
    for r in rows {
        loop {
            let touched: Vec<usize> = incidence
                .get(&r)
                .map(|s| s.iter().copied().filter(|j| alive[*j]).collect())
                .unwrap_or_default();
            match touched.len() {
                0 => break,
                1 => {
                    // this generator cannot be completed to a kernel element
                    alive[touched[0]] = false;
                    break;
                }
                _ => {
                    let a = *touched
                        .iter()
                        .min_by(|x, y| {
                            let vx = sparse_get(&values[**x], r).unwrap().abs();
                            let vy = sparse_get(&values[**y], r).unwrap().abs();
                            vx.cmp(&vy).then(x.cmp(y))
                        })
                        .unwrap();
                    let va = sparse_get(&values[a], r).unwrap().clone();
                    for b in touched {
                        if b == a {
                            continue;
                        }
                        let vb = sparse_get(&values[b], r).unwrap().clone();
                        let (q, _) = vb.div_rem(&va);
                        if q.is_zero() {
                            continue;
                        }
                        let neg_q = -&q;
                        combos[b] = add_scaled(&combos[b], &combos[a], &neg_q);
                        let old_support: Vec<u32> = values[b].iter().map(|e| e.0).collect();
                        values[b] = add_scaled(&values[b], &values[a], &neg_q);
                        let new_support: BTreeSet<u32> =
                            values[b].iter().map(|e| e.0).collect();
                        for row in old_support {
                            if !new_support.contains(&row) {
                                if let Some(s) = incidence.get_mut(&row) {
                                    s.remove(&b);
                                }
                            }
                        }
                        for row in &new_support {
                            incidence.entry(*row).or_default().insert(b);
                        }
                    }
                }
            }
        }
    }
    (0..cols.len())
        .filter(|j| alive[*j])
        .map(|j| {
            debug_assert!(values[j].is_empty());
            combos[j].clone()
        })
        .collect()
}

// ---------------------------------------------------------------------------
// lattice membership with coordinates

/// A sublattice of Z^ambient spanned by an explicit basis, pivotized so that
/// membership and coordinates can be computed by back-substitution.
pub struct SparseLattice {
    /// (combination over original basis indices, pivotized vector)
    gens: Vec<(SparseVec, SparseVec)>,
    pivots: Vec<u32>,
    original_len: usize,
}

impl SparseLattice {
    pub fn new(basis: &[SparseVec]) -> SparseLattice {
        let mut gens: Vec<(SparseVec, SparseVec)> = Vec::new();
        let mut pivots: Vec<u32> = Vec::new();
        for (i, b) in basis.iter().enumerate() {
            let mut combo: SparseVec = vec![(i as u32, Int::ONE)];
            let mut value = b.clone();
            for k in 0..pivots.len() {
                let p = pivots[k];
                while let Some(r) = sparse_get(&value, p).cloned() {
                    let pv = sparse_get(&gens[k].1, p).unwrap().clone();
                    let (q, rem) = r.div_rem(&pv);
                    if !q.is_zero() {
                        let neg_q = -&q;
                        combo = add_scaled(&combo, &gens[k].0, &neg_q);
                        value = add_scaled(&value, &gens[k].1, &neg_q);
                    }
                    if rem.is_zero() {
                        break;
                    }
                    // remainder beats the pivot: swap roles and continue
                    std::mem::swap(&mut gens[k].0, &mut combo);
                    std::mem::swap(&mut gens[k].1, &mut value);
                }
            }
            if !value.is_empty() {
                pivots.push(value[0].0);
                gens.push((combo, value));
            }
        }
        SparseLattice {
            gens,
            pivots,
            original_len: basis.len(),
        }
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    /// Coordinates of `w` over the original basis, or `None` when `w` is not
    /// in the lattice.
    pub fn express(&self, w: &SparseVec) -> Option<SparseVec> {
        let mut rem = w.clone();
        let mut combo: SparseVec = Vec::new();
        for k in 0..self.gens.len() {
            let p = self.pivots[k];
            if let Some(r) = sparse_get(&rem, p).cloned() {
                let pv = sparse_get(&self.gens[k].1, p).unwrap();
                let (q, residue) = r.div_rem(pv);
                if !residue.is_zero() {
                    return None;
                }
                let neg_q = -&q;
                rem = add_scaled(&rem, &self.gens[k].1, &neg_q);
                combo = add_scaled(&combo, &self.gens[k].0, &q);
            }
        }
        if rem.is_empty() {
            debug_assert!(combo.iter().all(|(i, _)| (*i as usize) < self.original_len));
            Some(combo)
        } else {
            None
        }
    }

    pub fn contains(&self, w: &SparseVec) -> bool {
        self.express(w).is_some()
    }
}

// ---------------------------------------------------------------------------
// rational matrices (small, dense)

#[derive(Clone)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigRational>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> QMat {
        QMat {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> QMat {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_columns(rows: usize, cols: &[Vec<BigRational>]) -> QMat {
        let mut m = QMat::zero(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows);
        let mut out = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.get(k, j);
                    let v = out.get(i, j) + add;
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add_scaled_mat(&self, other: &QMat, c: &BigRational) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = out.get(i, j) + c * other.get(i, j);
                out.set(i, j, v);
            }
        }
        out
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|i| !self.get(*i, col).is_zero()) else {
                continue;
            };
            for j in 0..self.cols {
                let tmp = self.get(row, j).clone();
                self.set(row, j, self.get(p, j).clone());
                self.set(p, j, tmp);
            }
            let inv = self.get(row, col).clone();
            for j in 0..self.cols {
                let v = self.get(row, j) / &inv;
                self.set(row, j, v);
            }
            for i in 0..self.rows {
                if i != row && !self.get(i, col).is_zero() {
                    let f = self.get(i, col).clone();
                    for j in 0..self.cols {
                        let v = self.get(i, j) - &f * self.get(row, j);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// One solution of `self * x = b`, if consistent.
    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = QMat::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (r, c) in pivots.iter().enumerate() {
            x[*c] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want_one = i == j;
                let v = self.get(i, j);
                if want_one != v.is_one() || (!want_one && !v.is_zero()) {
                    return false;
                }
            }
        }
        true
    }
}

pub fn int_to_rational(v: &Int) -> BigRational {
    BigRational::from_integer(v.to_big())
}

pub fn rational_of(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
