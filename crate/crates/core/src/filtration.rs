//! Filtrations B_0 ⊆ … ⊆ B_n, derived strata, pseudomanifold validation,
//! depth, combinatorial links, and filtration transport along constructions.

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::simplex::{Simplex, Vertex};
use std::collections::BTreeMap;

/// A filtration of a complex by nested subcomplexes of formal dimension
/// 0..=n. Stored as the minimal skeleton index containing each simplex;
/// regular simplices carry level n.
#[derive(Clone)]
pub struct Filtration {
    complex: SimplicialComplex,
    n: usize,
    /// levels[d][idx] = min i with the simplex in B_i
    levels: Vec<Vec<u16>>,
}

impl Filtration {
    /// The trivial filtration: everything regular.
    pub fn trivial(complex: SimplicialComplex) -> Filtration {
        let n = complex.dim();
        let levels = (0..=n)
            .map(|d| vec![n as u16; complex.count(d)])
            .collect();
        Filtration { complex, n, levels }
    }

    /// Builds from explicit skeleta, each given by generating simplices.
    /// Omitted indices inherit the previous skeleton; index n is the base.
    pub fn from_skeleta(
        complex: SimplicialComplex,
        skeleta: &BTreeMap<usize, Vec<Simplex>>,
    ) -> Result<Filtration> {
        let n = complex.dim();
        let mut levels: Vec<Vec<u16>> = (0..=n)
            .map(|d| vec![n as u16; complex.count(d)])
            .collect();
        let mut previous: Option<(usize, Vec<Vec<bool>>)> = None;
        for (&i, gens) in skeleta {
            if i > n {
                return Err(Error::InvalidFiltration(format!(
                    "skeleton index {i} exceeds the formal dimension {n}"
                )));
            }
            let table = complex
                .subcomplex_table(gens)
                .map_err(|e| Error::InvalidFiltration(e.to_string()))?;
            for (d, level) in table.iter().enumerate() {
                for (idx, present) in level.iter().enumerate() {
                    if *present {
                        if d > i {
                            return Err(Error::InvalidFiltration(format!(
                                "simplex {:?} of dimension {d} listed in skeleton {i}",
                                complex.simplex(d, idx as u32)
                            )));
                        }
                        levels[d][idx] = levels[d][idx].min(i as u16);
                    }
                }
            }
            if let Some((pi, ptable)) = &previous {
                for (d, level) in ptable.iter().enumerate() {
                    for (idx, present) in level.iter().enumerate() {
                        if *present && !table[d][idx] {
                            return Err(Error::InvalidFiltration(format!(
                                "skeleton {pi} is not contained in skeleton {i}: {:?}",
                                complex.simplex(d, idx as u32)
                            )));
                        }
                    }
                }
            }
            previous = Some((i, table));
        }
        Ok(Filtration { complex, n, levels })
    }

    /// Wraps precomputed levels (transport along constructions).
    pub(crate) fn from_levels(
        complex: SimplicialComplex,
        n: usize,
        levels: Vec<Vec<u16>>,
    ) -> Filtration {
        debug_assert_eq!(levels.len(), complex.dim() + 1);
        Filtration { complex, n, levels }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn level(&self, d: usize, idx: u32) -> usize {
        self.levels[d][idx as usize] as usize
    }

    pub fn level_of(&self, s: &Simplex) -> Option<usize> {
        self.complex.index_of(s).map(|i| self.level(s.dim(), i))
    }

    /// Dimension of the maximal face of `s` inside B_j; -1 for the empty face.
    /// When several maximal faces exist the largest dimension is returned.
    pub fn max_face_dim_in_skeleton(&self, s: &Simplex, j: usize) -> i64 {
        match self.max_face_in_skeleton(s, j) {
            Some(f) => f.dim() as i64,
            None => -1,
        }
    }

    /// The maximal face itself when it is unique; when the trace of B_j on
    /// `s` has several maximal faces, one of largest dimension is returned.
    pub fn max_face_in_skeleton(&self, s: &Simplex, j: usize) -> Option<Simplex> {
        let candidate = s.restrict_to(|v| self.level(0, self.vertex_index(v)) <= j)?;
        if self
            .level_of(&candidate)
            .is_some_and(|level| level <= j)
        {
            return Some(candidate);
        }
        // rare: the vertex span is not itself inside B_j; search subsets
        let mut best: Option<Simplex> = None;
        for face in candidate.proper_faces() {
            if self.level_of(&face).is_some_and(|l| l <= j)
                && best.as_ref().is_none_or(|b| face.dim() > b.dim())
            {
                best = Some(face);
            }
        }
        best
    }

    /// Whether the trace of B_j on `s` is a single face (used by blow-up
    /// decompositions).
    pub fn trace_is_single_face(&self, s: &Simplex, j: usize) -> bool {
        match s.restrict_to(|v| self.level(0, self.vertex_index(v)) <= j) {
            None => true,
            Some(candidate) => self.level_of(&candidate).is_some_and(|l| l <= j),
        }
    }

    fn vertex_index(&self, v: Vertex) -> u32 {
        self.complex
            .index_of(&Simplex::vertex(v))
            .expect("vertex in complex")
    }

    /// Maximal simplices of B_i, in canonical order.
    pub fn skeleton_facets(&self, i: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for d in (0..=self.complex.dim().min(i)).rev() {
            for (idx, s) in self.complex.simplices(d).iter().enumerate() {
                if self.level(d, idx as u32) <= i {
                    let covered = (d < self.complex.dim())
                        && out.iter().any(|f: &Simplex| s.is_face_of(f));
                    if !covered {
                        out.push(s.clone());
                    }
                }
            }
        }
        out.sort();
        out
    }
}

/// One stratum: a connected family of open simplices at a fixed level.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub level: usize,
    /// members as (dim, index), sorted
    pub simplices: Vec<(usize, u32)>,
}

/// Strata of a filtration together with the closure partial order.
#[derive(Clone)]
pub struct Stratification {
    filtration: Filtration,
    strata: Vec<Stratum>,
    /// per dim, per simplex index: stratum index
    stratum_of: Vec<Vec<u32>>,
    /// strictly_below[i] contains j when strata[i] ⊆ closure(strata[j]), i ≠ j
    strictly_below: Vec<Vec<usize>>,
}

/// Per-axiom outcome of pseudomanifold validation.
#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub pass: bool,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Derives strata as connected components of B_i \ B_{i-1} under face
/// incidence at equal level.
pub fn derive_strata(filtration: Filtration) -> Stratification {
    let complex = filtration.complex().clone();
    // union-find over (dim, idx) pairs, flattened
    let mut offsets = Vec::with_capacity(complex.dim() + 1);
    let mut total = 0usize;
    for d in 0..=complex.dim() {
        offsets.push(total);
        total += complex.count(d);
    }
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for d in 1..=complex.dim() {
        for idx in 0..complex.count(d) as u32 {
            let level = filtration.level(d, idx);
            for (f, _) in complex.boundary_of(d, idx) {
                if filtration.level(d - 1, f) == level {
                    let a = find(&mut parent, offsets[d] + idx as usize);
                    let b = find(&mut parent, offsets[d - 1] + f as usize);
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<(usize, u32)>> = BTreeMap::new();
    for d in 0..=complex.dim() {
        for idx in 0..complex.count(d) {
            let root = find(&mut parent, offsets[d] + idx);
            groups.entry(root).or_default().push((d, idx as u32));
        }
    }
    let mut strata: Vec<Stratum> = groups
        .into_values()
        .map(|mut simplices| {
            simplices.sort();
            let level = filtration.level(simplices[0].0, simplices[0].1);
            debug_assert!(simplices
                .iter()
                .all(|(d, i)| filtration.level(*d, *i) == level));
            Stratum { level, simplices }
        })
        .collect();
    strata.sort_by(|a, b| (a.level, &a.simplices[0]).cmp(&(b.level, &b.simplices[0])));

    let mut stratum_of: Vec<Vec<u32>> = (0..=complex.dim())
        .map(|d| vec![0; complex.count(d)])
        .collect();
    for (si, stratum) in strata.iter().enumerate() {
        for (d, idx) in &stratum.simplices {
            stratum_of[*d][*idx as usize] = si as u32;
        }
    }

    // closure order: stratum i lies below j when some simplex of i is a face
    // of some simplex of j
    let mut below: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); strata.len()];
    for d in 1..=complex.dim() {
        for idx in 0..complex.count(d) as u32 {
            let sj = stratum_of[d][idx as usize] as usize;
            for (f, _) in complex.boundary_of(d, idx) {
                let si = stratum_of[d - 1][f as usize] as usize;
                if si != sj {
                    below[si].insert(sj);
                }
            }
        }
    }
    // transitive closure (strata counts are small)
    let nstrata = strata.len();
    let mut strictly_below: Vec<Vec<usize>> = vec![Vec::new(); nstrata];
    for i in 0..nstrata {
        let mut seen = vec![false; nstrata];
        let mut stack: Vec<usize> = below[i].iter().copied().collect();
        while let Some(j) = stack.pop() {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            stack.extend(below[j].iter().copied());
        }
        strictly_below[i] = (0..nstrata).filter(|j| seen[*j]).collect();
    }

    Stratification {
        filtration,
        strata,
        stratum_of,
        strictly_below,
    }
}

impl Stratification {
    pub fn trivial(complex: SimplicialComplex) -> Stratification {
        derive_strata(Filtration::trivial(complex))
    }

    pub fn filtration(&self) -> &Filtration {
        &self.filtration
    }

    pub fn complex(&self) -> &SimplicialComplex {
        self.filtration.complex()
    }

    pub fn n(&self) -> usize {
        self.filtration.n()
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn stratum_of(&self, d: usize, idx: u32) -> usize {
        self.stratum_of[d][idx as usize] as usize
    }

    pub fn is_singular(&self, stratum: usize) -> bool {
        self.strata[stratum].level < self.n()
    }

    pub fn codim(&self, stratum: usize) -> i64 {
        self.n() as i64 - self.strata[stratum].level as i64
    }

    pub fn singular_strata(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.strata.len()).filter(|i| self.is_singular(*i))
    }

    /// Stable printable id: `s<level>.<k>` with k counting strata at the
    /// same level in canonical order.
    pub fn stratum_id(&self, stratum: usize) -> String {
        let level = self.strata[stratum].level;
        let k = self.strata[..stratum]
            .iter()
            .filter(|s| s.level == level)
            .count();
        format!("s{level}.{k}")
    }

    pub fn stratum_by_id(&self, id: &str) -> Option<usize> {
        (0..self.strata.len()).find(|i| self.stratum_id(*i) == id)
    }

    /// Longest chain length in the closure order.
    pub fn depth(&self) -> usize {
        let n = self.strata.len();
        // order strata by level; chains ascend strictly in level
        let mut best = vec![0usize; n];
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|i| self.strata[*i].level);
        for &i in &order {
            for &j in &self.strictly_below[i] {
                // i ⊆ closure(j): i ≺ j
                best[j] = best[j].max(best[i] + 1);
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// Pseudomanifold axioms; failures are report rows, not errors.
    pub fn validate(&self) -> ValidationReport {
        let complex = self.complex();
        let n = self.n();
        let witness = |d: usize, idx: u32| -> String {
            let s = complex.simplex(d, idx);
            let names: Vec<String> = s
                .vertices()
                .iter()
                .map(|v| complex.label(*v).render())
                .collect();
            format!("[{}]", names.join(" "))
        };
        let mut checks = Vec::new();

        // purity: every maximal simplex has dimension n
        let mut wit: Vec<String> = complex
            .facets()
            .iter()
            .filter(|f| f.dim() != n)
            .take(5)
            .map(|f| {
                let idx = complex.index_of(f).unwrap();
                witness(f.dim(), idx)
            })
            .collect();
        checks.push(AxiomCheck {
            axiom: "purity",
            pass: wit.is_empty(),
            witnesses: std::mem::take(&mut wit),
        });

        // density: every simplex is a face of a regular n-simplex
        let mut covered: Vec<Vec<bool>> = (0..=complex.dim())
            .map(|d| vec![false; complex.count(d)])
            .collect();
        if complex.dim() == n {
            for idx in 0..complex.count(n) as u32 {
                if self.filtration.level(n, idx) == n {
                    let mut stack = vec![(n, idx)];
                    while let Some((d, i)) = stack.pop() {
                        if covered[d][i as usize] {
                            continue;
                        }
                        covered[d][i as usize] = true;
                        if d > 0 {
                            for (f, _) in complex.boundary_of(d, i) {
                                stack.push((d - 1, f));
                            }
                        }
                    }
                }
            }
        }
        let mut wit = Vec::new();
        'density: for d in 0..=complex.dim() {
            for idx in 0..complex.count(d) {
                if !covered[d][idx] {
                    wit.push(witness(d, idx as u32));
                    if wit.len() >= 5 {
                        break 'density;
                    }
                }
            }
        }
        checks.push(AxiomCheck {
            axiom: "density",
            pass: wit.is_empty(),
            witnesses: wit,
        });

        // codimension: no stratum at level n-1 (B_{n-1} = B_{n-2})
        let mut wit = Vec::new();
        if n >= 1 {
            'codim: for d in 0..=complex.dim() {
                for idx in 0..complex.count(d) as u32 {
                    if self.filtration.level(d, idx) == n - 1 {
                        wit.push(witness(d, idx));
                        if wit.len() >= 5 {
                            break 'codim;
                        }
                    }
                }
            }
        }
        checks.push(AxiomCheck {
            axiom: "codimension",
            pass: wit.is_empty(),
            witnesses: wit,
        });

        // frontier: closure of each stratum is a union of strata
        let mut wit = Vec::new();
        for j in 0..self.strata.len() {
            // closure members of stratum j
            let mut in_closure: Vec<Vec<bool>> = (0..=complex.dim())
                .map(|d| vec![false; complex.count(d)])
                .collect();
            let mut stack: Vec<(usize, u32)> = self.strata[j].simplices.clone();
            while let Some((d, i)) = stack.pop() {
                if in_closure[d][i as usize] {
                    continue;
                }
                in_closure[d][i as usize] = true;
                if d > 0 {
                    for (f, _) in complex.boundary_of(d, i) {
                        stack.push((d - 1, f));
                    }
                }
            }
            for i in 0..self.strata.len() {
                if i == j {
                    continue;
                }
                let members = &self.strata[i].simplices;
                let hits = members
                    .iter()
                    .filter(|(d, idx)| in_closure[*d][*idx as usize])
                    .count();
                if hits != 0 && hits != members.len() {
                    wit.push(format!(
                        "stratum {} meets the closure of stratum {} without being contained",
                        self.stratum_id(i),
                        self.stratum_id(j)
                    ));
                }
            }
        }
        checks.push(AxiomCheck {
            axiom: "frontier",
            pass: wit.is_empty(),
            witnesses: wit,
        });

        // branch: a regular (n-1)-simplex lies in at most two n-simplices
        let mut wit = Vec::new();
        if n >= 1 && complex.dim() == n {
            let mut cofaces = vec![0usize; complex.count(n - 1)];
            for idx in 0..complex.count(n) as u32 {
                for (f, _) in complex.boundary_of(n, idx) {
                    cofaces[f as usize] += 1;
                }
            }
            for idx in 0..complex.count(n - 1) as u32 {
                if self.filtration.level(n - 1, idx) == n && cofaces[idx as usize] > 2 {
                    wit.push(format!(
                        "{} has {} cofaces",
                        witness(n - 1, idx),
                        cofaces[idx as usize]
                    ));
                    if wit.len() >= 5 {
                        break;
                    }
                }
            }
        }
        checks.push(AxiomCheck {
            axiom: "branch",
            pass: wit.is_empty(),
            witnesses: wit,
        });

        // link heuristic (warn-only): the link of a top-dimensional simplex
        // of a singular stratum should have the Euler characteristic of a
        // sphere of dimension codim − 1
        let mut wit = Vec::new();
        for st in self.singular_strata() {
            let level = self.strata[st].level;
            let Some((d, idx)) = self.strata[st]
                .simplices
                .iter()
                .rev()
                .find(|(d, _)| *d == level)
                .copied()
            else {
                wit.push(format!(
                    "stratum {} has no simplex of its own dimension",
                    self.stratum_id(st)
                ));
                continue;
            };
            let rep = complex.simplex(d, idx).clone();
            match self.stratum_link(&rep) {
                Ok(link) => {
                    let codim = self.codim(st);
                    let expected = 1 + if (codim - 1) % 2 == 0 { 1 } else { -1 };
                    let got = link.complex().euler_characteristic();
                    if got != expected {
                        wit.push(format!(
                            "warning: link of {} has Euler characteristic {got}, a {}-sphere has {expected}",
                            witness(d, idx),
                            codim - 1
                        ));
                    }
                }
                Err(_) => {
                    wit.push(format!("warning: link of {} is empty", witness(d, idx)))
                }
            }
        }
        checks.push(AxiomCheck {
            axiom: "links",
            pass: true,
            witnesses: wit,
        });

        ValidationReport { checks }
    }

    /// Combinatorial link Lk(σ) = { τ : τ ∩ σ = ∅, τ ∪ σ ∈ X } with the
    /// filtration inherited by intersecting skeleta; indices shift by the
    /// drop in formal dimension so stratum codimensions carry over.
    pub fn stratum_link(&self, s: &Simplex) -> Result<Stratification> {
        let complex = self.complex();
        if !complex.contains_simplex(s) {
            return Err(Error::NotInComplex(format!("{s:?}")));
        }
        let mut members: Vec<Simplex> = Vec::new();
        for d in 0..=complex.dim() {
            for t in complex.simplices(d) {
                if t.is_disjoint(s) && complex.contains_simplex(&t.union(s)) {
                    members.push(t.clone());
                }
            }
        }
        if members.is_empty() {
            return Err(Error::EmptyInput(format!("link of {s:?} is empty")));
        }
        let link = SimplicialComplex::from_facet_simplices(complex.labels().to_vec(), members);
        let n_link = link.dim();
        let shift = self.n().saturating_sub(n_link);
        let levels: Vec<Vec<u16>> = (0..=link.dim())
            .map(|d| {
                link.simplices(d)
                    .iter()
                    .map(|t| {
                        let ambient = self.filtration.level_of(t).expect("link member");
                        (ambient.saturating_sub(shift)).min(n_link) as u16
                    })
                    .collect()
            })
            .collect();
        Ok(derive_strata(Filtration::from_levels(link, n_link, levels)))
    }

    /// Restriction to a subcomplex given by generating simplices. The
    /// ambient formal dimension is kept, so codimensions are unchanged.
    pub fn restrict(&self, generators: &[Simplex]) -> Result<Restricted> {
        let complex = self.complex();
        let table = complex.subcomplex_table(generators)?;
        let mut members = Vec::new();
        for (d, level) in table.iter().enumerate() {
            for (idx, present) in level.iter().enumerate() {
                if *present {
                    members.push(complex.simplex(d, idx as u32).clone());
                }
            }
        }
        if members.is_empty() {
            return Err(Error::EmptyInput("empty restriction".into()));
        }
        let sub = SimplicialComplex::from_facet_simplices(complex.labels().to_vec(), members);
        let levels: Vec<Vec<u16>> = (0..=sub.dim())
            .map(|d| {
                sub.simplices(d)
                    .iter()
                    .map(|t| self.filtration.level_of(t).expect("subcomplex member") as u16)
                    .collect()
            })
            .collect();
        let strat = derive_strata(Filtration::from_levels(sub, self.n(), levels));
        let origin = strat
            .strata
            .iter()
            .map(|st| {
                let (d, idx) = st.simplices[0];
                let ambient_idx = complex
                    .index_of(strat.complex().simplex(d, idx))
                    .expect("subcomplex member");
                Some(self.stratum_of(d, ambient_idx))
            })
            .collect();
        Ok(Restricted {
            stratification: strat,
            origin,
        })
    }

    /// Cone with the filtration B_0 = {apex}, B_{i+1} = cone(B_i).
    pub fn cone(&self, apex_label: &str) -> Result<ConeStratified> {
        let base = self.complex();
        let coned = base.cone(apex_label)?;
        let apex = coned
            .vertex_by_label(apex_label)
            .expect("apex vertex exists");
        let n = self.n() + 1;
        let levels: Vec<Vec<u16>> = (0..=coned.dim())
            .map(|d| {
                coned
                    .simplices(d)
                    .iter()
                    .map(|t| {
                        if d == 0 && t.vertices()[0] == apex {
                            0
                        } else {
                            let stripped = t.restrict_to(|v| v != apex).expect("nonempty");
                            (self.filtration.level_of(&stripped).expect("base simplex")
                                + 1) as u16
                        }
                    })
                    .collect()
            })
            .collect();
        let strat = derive_strata(Filtration::from_levels(coned, n, levels));
        let apex_stratum = strat.stratum_of(0, strat.complex().index_of(&Simplex::vertex(apex)).unwrap());
        let origin = self.match_strata_via(&strat, |s| Some(s.clone()), apex_stratum);
        Ok(ConeStratified {
            stratification: strat,
            origin,
            apex_stratum,
        })
    }

    /// Suspension with both poles at level 0.
    pub fn suspension(&self, north_label: &str, south_label: &str) -> Result<SuspensionStratified> {
        let base = self.complex();
        let sus = base.suspension(north_label, south_label)?;
        let north = sus.vertex_by_label(north_label).unwrap();
        let south = sus.vertex_by_label(south_label).unwrap();
        let n = self.n() + 1;
        let levels: Vec<Vec<u16>> = (0..=sus.dim())
            .map(|d| {
                sus.simplices(d)
                    .iter()
                    .map(|t| {
                        if d == 0 && (t.vertices()[0] == north || t.vertices()[0] == south) {
                            0
                        } else {
                            let stripped = t
                                .restrict_to(|v| v != north && v != south)
                                .expect("nonempty");
                            (self.filtration.level_of(&stripped).expect("base simplex")
                                + 1) as u16
                        }
                    })
                    .collect()
            })
            .collect();
        let strat = derive_strata(Filtration::from_levels(sus, n, levels));
        let north_stratum = strat.stratum_of(0, strat.complex().index_of(&Simplex::vertex(north)).unwrap());
        let south_stratum = strat.stratum_of(0, strat.complex().index_of(&Simplex::vertex(south)).unwrap());
        let origin = self.match_strata_via(
            &strat,
            |s| Some(s.clone()),
            usize::MAX, // sentinel unused; poles handled below
        );
        let mut origin = origin;
        origin[north_stratum] = None;
        origin[south_stratum] = None;
        Ok(SuspensionStratified {
            stratification: strat,
            origin,
            north_stratum,
            south_stratum,
        })
    }

    /// Staircase product with `[0,1]`; stratum S becomes S × I one level up.
    pub fn interval_product(&self) -> ProductStratified {
        let base = self.complex();
        let prod = base.interval_product();
        let nv = base.vertex_count() as Vertex;
        let n = self.n() + 1;
        let levels: Vec<Vec<u16>> = (0..=prod.complex.dim())
            .map(|d| {
                prod.complex
                    .simplices(d)
                    .iter()
                    .map(|t| {
                        let mut verts: Vec<Vertex> =
                            t.vertices().iter().map(|v| v % nv).collect();
                        verts.sort_unstable();
                        verts.dedup();
                        let proj = Simplex::new(verts).expect("projection");
                        (self.filtration.level_of(&proj).expect("base simplex") + 1) as u16
                    })
                    .collect()
            })
            .collect();
        let strat = derive_strata(Filtration::from_levels(prod.complex.clone(), n, levels));
        // representative of S maps to its bottom copy
        let origin = strat
            .strata
            .iter()
            .map(|st| {
                let (d, idx) = st.simplices[0];
                let t = strat.complex().simplex(d, idx);
                let mut verts: Vec<Vertex> = t.vertices().iter().map(|v| v % nv).collect();
                verts.sort_unstable();
                verts.dedup();
                let proj = Simplex::new(verts).expect("projection");
                let pidx = base.index_of(&proj).expect("projection in base");
                Some(self.stratum_of(proj.dim(), pidx))
            })
            .collect();
        ProductStratified {
            stratification: strat,
            origin,
            bottom: prod.bottom,
            top: prod.top,
            projection: prod.projection,
        }
    }

    /// Barycentric subdivision with the filtration transported by carriers:
    /// a subdivision simplex lies in B_i exactly when its top carrier does.
    pub fn subdivide(&self) -> SubdividedStratified {
        let base = self.complex();
        let sd = base.barycentric_subdivision();
        let n = self.n();
        let carrier = &sd.carrier;
        let levels: Vec<Vec<u16>> = (0..=sd.complex.dim())
            .map(|d| {
                sd.complex
                    .simplices(d)
                    .iter()
                    .map(|t| {
                        // chain vertices are ordered by carrier dimension;
                        // the last one is the top carrier
                        let top = *t.vertices().last().unwrap();
                        let (cd, ci) = carrier[top as usize];
                        self.filtration.level(cd, ci) as u16
                    })
                    .collect()
            })
            .collect();
        let strat = derive_strata(Filtration::from_levels(sd.complex.clone(), n, levels));
        let origin = strat
            .strata
            .iter()
            .map(|st| {
                let (d, idx) = st.simplices[0];
                let top = *strat.complex().simplex(d, idx).vertices().last().unwrap();
                let (cd, ci) = carrier[top as usize];
                Some(self.stratum_of(cd, ci))
            })
            .collect();
        SubdividedStratified {
            stratification: strat,
            origin,
            carrier: sd.carrier,
        }
    }

    fn match_strata_via(
        &self,
        derived: &Stratification,
        embed: impl Fn(&Simplex) -> Option<Simplex>,
        skip: usize,
    ) -> Vec<Option<usize>> {
        // locate each old stratum's representative inside the derived complex
        let mut origin: Vec<Option<usize>> = vec![None; derived.strata.len()];
        for (old_idx, old) in self.strata.iter().enumerate() {
            let (d, idx) = old.simplices[0];
            let rep = self.complex().simplex(d, idx);
            if let Some(img) = embed(rep) {
                if let Some(new_simplex_idx) = derived.complex().index_of(&img) {
                    let target = derived.stratum_of(img.dim(), new_simplex_idx);
                    if target != skip {
                        origin[target] = Some(old_idx);
                    }
                }
            }
        }
        origin
    }
}

pub struct Restricted {
    pub stratification: Stratification,
    /// new stratum -> originating stratum
    pub origin: Vec<Option<usize>>,
}

pub struct ConeStratified {
    pub stratification: Stratification,
    pub origin: Vec<Option<usize>>,
    pub apex_stratum: usize,
}

pub struct SuspensionStratified {
    pub stratification: Stratification,
    pub origin: Vec<Option<usize>>,
    pub north_stratum: usize,
    pub south_stratum: usize,
}

pub struct ProductStratified {
    pub stratification: Stratification,
    pub origin: Vec<Option<usize>>,
    pub bottom: Vec<Vertex>,
    pub top: Vec<Vertex>,
    pub projection: Vec<Vertex>,
}

pub struct SubdividedStratified {
    pub stratification: Stratification,
    pub origin: Vec<Option<usize>>,
    pub carrier: Vec<(usize, u32)>,
}
