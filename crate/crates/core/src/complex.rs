//! Finite abstract simplicial complexes and the constructions used by the
//! fixtures: cone, suspension, join, staircase interval product, and
//! barycentric subdivision with carrier maps.

use crate::error::{Error, Result};
use crate::simplex::{Label, Simplex, Vertex};
use smallvec::SmallVec;
use std::collections::{BTreeMap, BTreeSet};

/// A finite simplicial complex: full face lattice indexed per dimension,
/// with the maximal simplices recorded. Immutable after construction.
#[derive(Clone)]
pub struct SimplicialComplex {
    labels: Vec<Label>,
    /// `sims[d]` is the sorted list of all d-simplices.
    sims: Vec<Vec<Simplex>>,
    facets: Vec<Simplex>,
}

impl std::fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SimplicialComplex(f = {:?})", self.f_vector())
    }
}

impl SimplicialComplex {
    // ------------------------------------------------------------------
    // construction

    /// Builds the closure of a facet list given by vertex labels.
    /// Facets are deduplicated and non-maximal entries dropped.
    pub fn build(facets: &[Vec<String>]) -> Result<SimplicialComplex> {
        if facets.is_empty() {
            return Err(Error::EmptyInput("facet list is empty".into()));
        }
        let mut label_set: BTreeSet<&str> = BTreeSet::new();
        for f in facets {
            if f.is_empty() {
                return Err(Error::EmptyInput("facet with no vertices".into()));
            }
            let mut seen = BTreeSet::new();
            for l in f {
                if !seen.insert(l.as_str()) {
                    return Err(Error::DuplicateVertexInFacet(l.clone()));
                }
                label_set.insert(l);
            }
        }
        let ids: BTreeMap<&str, Vertex> = label_set
            .iter()
            .enumerate()
            .map(|(i, l)| (*l, i as Vertex))
            .collect();
        let labels: Vec<Label> = label_set.iter().map(|l| Label::atom(*l)).collect();
        let facet_simplices: Vec<Simplex> = facets
            .iter()
            .map(|f| Simplex::new(f.iter().map(|l| ids[l.as_str()]).collect()))
            .collect::<Result<_>>()?;
        Ok(Self::from_facet_simplices(labels, facet_simplices))
    }

    /// Closure of an explicit facet list over existing labels.
    pub fn from_facet_simplices(labels: Vec<Label>, mut facets: Vec<Simplex>) -> SimplicialComplex {
        facets.sort();
        facets.dedup();
        let maximal: Vec<Simplex> = facets
            .iter()
            .filter(|f| !facets.iter().any(|g| g.dim() > f.dim() && f.is_face_of(g)))
            .cloned()
            .collect();
        let dim = maximal.iter().map(|f| f.dim()).max().unwrap_or(0);
        let mut sets: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); dim + 1];
        for f in &maximal {
            sets[f.dim()].insert(f.clone());
            for face in f.proper_faces() {
                sets[face.dim()].insert(face);
            }
        }
        let sims: Vec<Vec<Simplex>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        SimplicialComplex {
            labels,
            sims,
            facets: maximal,
        }
    }

    /// Wraps pre-enumerated simplex lists (used by constructions that already
    /// generate the whole face lattice). Lists are sorted here.
    fn from_parts(
        labels: Vec<Label>,
        mut sims: Vec<Vec<Simplex>>,
        mut facets: Vec<Simplex>,
    ) -> SimplicialComplex {
        for level in sims.iter_mut() {
            level.sort();
            level.dedup();
        }
        while sims.last().is_some_and(|l| l.is_empty()) {
            sims.pop();
        }
        facets.sort();
        debug_assert!(
            sims.iter().enumerate().all(|(d, level)| level
                .iter()
                .all(|s| s.dim() == d && s.vertices().iter().all(|v| (*v as usize) < labels.len()))),
            "simplex lists out of shape"
        );
        SimplicialComplex {
            labels,
            sims,
            facets,
        }
    }

    // ------------------------------------------------------------------
    // queries

    pub fn dim(&self) -> usize {
        self.sims.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, v: Vertex) -> &Label {
        &self.labels[v as usize]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn rendered_labels(&self) -> Vec<String> {
        self.labels.iter().map(|l| l.render()).collect()
    }

    pub fn vertex_by_label(&self, rendered: &str) -> Option<Vertex> {
        self.labels
            .iter()
            .position(|l| l.render() == rendered)
            .map(|i| i as Vertex)
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.sims.get(d).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.sims.iter().map(|l| l.len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, c)| if d % 2 == 0 { *c as i64 } else { -(*c as i64) })
            .sum()
    }

    pub fn total_simplices(&self) -> usize {
        self.sims.iter().map(|l| l.len()).sum()
    }

    pub fn index_of(&self, s: &Simplex) -> Option<u32> {
        self.sims
            .get(s.dim())?
            .binary_search(s)
            .ok()
            .map(|i| i as u32)
    }

    pub fn contains_simplex(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    pub fn simplex(&self, d: usize, idx: u32) -> &Simplex {
        &self.sims[d][idx as usize]
    }

    /// Face indices with boundary signs: position `p` carries `(-1)^p`.
    pub fn boundary_of(&self, d: usize, idx: u32) -> SmallVec<[(u32, i64); 6]> {
        let s = self.simplex(d, idx);
        let mut out = SmallVec::new();
        if d == 0 {
            return out;
        }
        for p in 0..=d {
            let face = s.facet(p);
            let fi = self
                .index_of(&face)
                .expect("complex closed under faces");
            out.push((fi, if p % 2 == 0 { 1 } else { -1 }));
        }
        out
    }

    /// Checks that every listed simplex exists here, and returns the closure
    /// membership table (per dimension, per index) of the generated subcomplex.
    pub fn subcomplex_table(&self, generators: &[Simplex]) -> Result<Vec<Vec<bool>>> {
        let mut table: Vec<Vec<bool>> = self.sims.iter().map(|l| vec![false; l.len()]).collect();
        let mut stack: Vec<(usize, u32)> = Vec::new();
        for g in generators {
            match self.index_of(g) {
                Some(i) => stack.push((g.dim(), i)),
                None => return Err(Error::NotSubcomplex(format!("{g:?} is not a simplex"))),
            }
        }
        while let Some((d, i)) = stack.pop() {
            if table[d][i as usize] {
                continue;
            }
            table[d][i as usize] = true;
            if d > 0 {
                for (fi, _) in self.boundary_of(d, i) {
                    stack.push((d - 1, fi));
                }
            }
        }
        Ok(table)
    }

    // ------------------------------------------------------------------
    // constructions

    /// Cone with a fresh apex: facets are `f ∪ {apex}`.
    pub fn cone(&self, apex_label: &str) -> Result<SimplicialComplex> {
        if self.labels.iter().any(|l| l.render() == apex_label) {
            return Err(Error::ApexCollision(apex_label.to_string()));
        }
        let apex: Vertex = self.labels.len() as Vertex;
        let mut labels = self.labels.clone();
        labels.push(Label::atom(apex_label));
        let mut sims: Vec<Vec<Simplex>> = vec![Vec::new(); self.dim() + 2];
        sims[0].push(Simplex::vertex(apex));
        for (d, level) in self.sims.iter().enumerate() {
            for s in level {
                sims[d].push(s.clone());
                let mut v: SmallVec<[Vertex; 6]> = SmallVec::from_slice(s.vertices());
                v.push(apex);
                sims[d + 1].push(Simplex::from_sorted(v));
            }
        }
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let mut v: SmallVec<[Vertex; 6]> = SmallVec::from_slice(f.vertices());
                v.push(apex);
                Simplex::from_sorted(v)
            })
            .collect();
        Ok(SimplicialComplex::from_parts(labels, sims, facets))
    }

    /// Two cones glued along the base: facets are `f ∪ {north}` and `f ∪ {south}`.
    pub fn suspension(&self, north_label: &str, south_label: &str) -> Result<SimplicialComplex> {
        if north_label == south_label {
            return Err(Error::ApexCollision(north_label.to_string()));
        }
        for l in [north_label, south_label] {
            if self.labels.iter().any(|x| x.render() == l) {
                return Err(Error::ApexCollision(l.to_string()));
            }
        }
        let n = self.labels.len() as Vertex;
        let (north, south) = (n, n + 1);
        let mut labels = self.labels.clone();
        labels.push(Label::atom(north_label));
        labels.push(Label::atom(south_label));
        let mut sims: Vec<Vec<Simplex>> = vec![Vec::new(); self.dim() + 2];
        sims[0].push(Simplex::vertex(north));
        sims[0].push(Simplex::vertex(south));
        for (d, level) in self.sims.iter().enumerate() {
            for s in level {
                sims[d].push(s.clone());
                for pole in [north, south] {
                    let mut v: SmallVec<[Vertex; 6]> = SmallVec::from_slice(s.vertices());
                    v.push(pole);
                    sims[d + 1].push(Simplex::from_sorted(v));
                }
            }
        }
        let mut facets = Vec::with_capacity(self.facets.len() * 2);
        for f in &self.facets {
            for pole in [north, south] {
                let mut v: SmallVec<[Vertex; 6]> = SmallVec::from_slice(f.vertices());
                v.push(pole);
                facets.push(Simplex::from_sorted(v));
            }
        }
        Ok(SimplicialComplex::from_parts(labels, sims, facets))
    }

    /// Join: facets are `σ ∪ τ` over disjoint label sets.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        let mine: BTreeSet<String> = self.labels.iter().map(|l| l.render()).collect();
        for l in &other.labels {
            let r = l.render();
            if mine.contains(&r) {
                return Err(Error::LabelCollision(r));
            }
        }
        let shift = self.labels.len() as Vertex;
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let lift = |s: &Simplex| -> Simplex {
            Simplex::from_sorted(
                s.vertices()
                    .iter()
                    .map(|v| v + shift)
                    .collect::<SmallVec<[Vertex; 6]>>(),
            )
        };
        let dim = self.dim() + other.dim() + 1;
        let mut sims: Vec<Vec<Simplex>> = vec![Vec::new(); dim + 1];
        for level in &self.sims {
            for s in level {
                sims[s.dim()].push(s.clone());
            }
        }
        for level in &other.sims {
            for t in level {
                let t = lift(t);
                sims[t.dim()].push(t);
            }
        }
        for level in &self.sims {
            for s in level {
                for olevel in &other.sims {
                    for t in olevel {
                        let u = s.union(&lift(t));
                        sims[u.dim()].push(u);
                    }
                }
            }
        }
        let mut facets = Vec::new();
        for f in &self.facets {
            for g in &other.facets {
                facets.push(f.union(&lift(g)));
            }
        }
        Ok(SimplicialComplex::from_parts(labels, sims, facets))
    }

    /// Staircase (prism) triangulation of `X × [0,1]`.
    pub fn interval_product(&self) -> IntervalProduct {
        let n = self.labels.len() as Vertex;
        let mut labels = Vec::with_capacity(2 * n as usize);
        for l in &self.labels {
            labels.push(Label::end(l, 0));
        }
        for l in &self.labels {
            labels.push(Label::end(l, 1));
        }
        let mut sims: Vec<Vec<Simplex>> = vec![Vec::new(); self.dim() + 2];
        let mut facets = Vec::new();
        for level in &self.sims {
            for u in level {
                let vs = u.vertices();
                let k = u.dim();
                // overlap pieces [u_0..u_i, u_i..u_k×{1}] of dimension k+1
                for i in 0..=k {
                    let mut v: SmallVec<[Vertex; 6]> = SmallVec::new();
                    v.extend(vs[..=i].iter().copied());
                    v.extend(vs[i..].iter().map(|w| w + n));
                    let s = Simplex::from_sorted(v);
                    if self.facets.binary_search(u).is_ok() {
                        facets.push(s.clone());
                    }
                    sims[k + 1].push(s);
                }
                // disjoint prefix/suffix simplices of dimension k
                for i in 0..=(k + 1) {
                    let mut v: SmallVec<[Vertex; 6]> = SmallVec::new();
                    v.extend(vs[..i].iter().copied());
                    v.extend(vs[i..].iter().map(|w| w + n));
                    sims[k].push(Simplex::from_sorted(v));
                }
            }
        }
        let complex = SimplicialComplex::from_parts(labels, sims, facets);
        IntervalProduct {
            bottom: (0..n).collect(),
            top: (0..n).map(|v| v + n).collect(),
            projection: (0..2 * n).map(|v| v % n).collect(),
            complex,
        }
    }

    /// Barycentric subdivision: one vertex per simplex, simplices are chains
    /// in the face order. The carrier map records each new vertex's simplex.
    pub fn barycentric_subdivision(&self) -> Subdivision {
        let mut offsets = Vec::with_capacity(self.sims.len());
        let mut total = 0u32;
        for level in &self.sims {
            offsets.push(total);
            total += level.len() as u32;
        }
        let new_id = |d: usize, idx: u32| -> Vertex { offsets[d] + idx };

        let mut labels = Vec::with_capacity(total as usize);
        let mut carrier = Vec::with_capacity(total as usize);
        for (d, level) in self.sims.iter().enumerate() {
            for (idx, s) in level.iter().enumerate() {
                labels.push(Label::barycenter(
                    s.vertices()
                        .iter()
                        .map(|v| self.labels[*v as usize].clone())
                        .collect(),
                ));
                carrier.push((d, idx as u32));
            }
        }

        // chains_at[d][idx] = all chains of distinct faces ending at (d, idx)
        let mut chains_at: Vec<Vec<Vec<Simplex>>> = self
            .sims
            .iter()
            .map(|level| vec![Vec::new(); level.len()])
            .collect();
        let mut sims: Vec<Vec<Simplex>> = vec![Vec::new(); self.dim() + 1];
        let mut facets = Vec::new();
        for (d, level) in self.sims.iter().enumerate() {
            for (idx, s) in level.iter().enumerate() {
                let me = new_id(d, idx as u32);
                let mut chains: Vec<Simplex> = vec![Simplex::vertex(me)];
                for face in s.proper_faces() {
                    let fd = face.dim();
                    let fi = self.index_of(&face).expect("closed under faces");
                    for c in &chains_at[fd][fi as usize] {
                        let mut v: SmallVec<[Vertex; 6]> = SmallVec::from_slice(c.vertices());
                        v.push(me);
                        chains.push(Simplex::from_sorted(v));
                    }
                }
                let is_facet = self.facets.binary_search(s).is_ok();
                for c in &chains {
                    sims[c.dim()].push(c.clone());
                    if is_facet && c.dim() == d {
                        facets.push(c.clone());
                    }
                }
                chains_at[d][idx] = chains;
            }
        }
        let complex = SimplicialComplex::from_parts(labels, sims, facets);
        Subdivision { complex, carrier }
    }
}

/// Staircase product together with its end inclusions and projection,
/// all as vertex maps.
pub struct IntervalProduct {
    pub complex: SimplicialComplex,
    /// vertex v of X ↦ product vertex (v, 0)
    pub bottom: Vec<Vertex>,
    /// vertex v of X ↦ product vertex (v, 1)
    pub top: Vec<Vertex>,
    /// product vertex ↦ vertex of X
    pub projection: Vec<Vertex>,
}

/// Barycentric subdivision together with its carrier map.
pub struct Subdivision {
    pub complex: SimplicialComplex,
    /// carrier[new vertex] = (dim, index) of the original simplex
    pub carrier: Vec<(usize, u32)>,
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

    fn tetra_boundary() -> SimplicialComplex {
        SimplicialComplex::build(&[
            vec!["a".into(), "b".into(), "c".into()],
            vec!["a".into(), "b".into(), "d".into()],
            vec!["a".into(), "c".into(), "d".into()],
            vec!["b".into(), "c".into(), "d".into()],
        ])
        .unwrap()
    }

    #[test]
    fn build_circle() {
        let c = circle();
        assert_eq!(c.f_vector(), vec![3, 3]);
        assert_eq!(c.dim(), 1);
        assert_eq!(c.facets().len(), 3);
    }

    #[test]
    fn build_point() {
        let p = SimplicialComplex::build(&[vec!["a".into()]]).unwrap();
        assert_eq!(p.f_vector(), vec![1]);
        assert_eq!(p.dim(), 0);
    }

    #[test]
    fn build_tetra_boundary() {
        let c = tetra_boundary();
        assert_eq!(c.f_vector(), vec![4, 6, 4]);
        assert_eq!(c.euler_characteristic(), 2);
    }

    #[test]
    fn build_rejects_bad_input() {
        assert!(matches!(
            SimplicialComplex::build(&[]),
            Err(Error::EmptyInput(_))
        ));
        assert!(matches!(
            SimplicialComplex::build(&[vec!["a".into(), "a".into()]]),
            Err(Error::DuplicateVertexInFacet(_))
        ));
    }

    #[test]
    fn build_maximalizes() {
        let c = SimplicialComplex::build(&[
            vec!["a".into(), "b".into()],
            vec!["a".into(), "b".into(), "c".into()],
        ])
        .unwrap();
        assert_eq!(c.facets().len(), 1);
    }

    #[test]
    fn cone_counts() {
        let c = circle().cone("v").unwrap();
        assert_eq!(c.f_vector(), vec![4, 6, 3]);
        assert_eq!(c.dim(), 2);
        assert!(circle().cone("a").is_err());

        // cone over a point is an edge
        let p = SimplicialComplex::build(&[vec!["a".into()]]).unwrap();
        assert_eq!(p.cone("v").unwrap().f_vector(), vec![2, 1]);

        // f-vector of the cone over the tetrahedron boundary
        let c = tetra_boundary().cone("v").unwrap();
        assert_eq!(c.f_vector(), vec![5, 10, 10, 4]);
    }

    /// f_i(cX) = f_i(X) + f_{i-1}(X), with f_{-1} = 1.
    #[test]
    fn cone_f_vector_identity() {
        for x in [circle(), tetra_boundary()] {
            let c = x.cone("apex").unwrap();
            let f = x.f_vector();
            let g = c.f_vector();
            for d in 0..=c.dim() {
                let expect =
                    f.get(d).copied().unwrap_or(0) + if d == 0 { 1 } else { f[d - 1] };
                assert_eq!(g[d], expect);
            }
        }
    }

    #[test]
    fn suspension_counts() {
        // ΣS⁰ is a 4-cycle
        let s0 = SimplicialComplex::build(&[vec!["a".into()], vec!["b".into()]]).unwrap();
        let s1 = s0.suspension("n", "s").unwrap();
        assert_eq!(s1.f_vector(), vec![4, 4]);
        assert_eq!(s1.euler_characteristic(), 0);

        // ΣS¹ is a 2-sphere with 5 vertices
        let s2 = circle().suspension("n", "s").unwrap();
        assert_eq!(s2.f_vector(), vec![5, 9, 6]);
        assert_eq!(s2.euler_characteristic(), 2);
    }

    #[test]
    fn join_counts() {
        let p = SimplicialComplex::build(&[vec!["p".into()]]).unwrap();
        let q = SimplicialComplex::build(&[vec!["q".into()]]).unwrap();
        let edge = p.join(&q).unwrap();
        assert_eq!(edge.f_vector(), vec![2, 1]);

        let r = SimplicialComplex::build(&[vec!["r".into()]]).unwrap();
        let triangle = edge.join(&r).unwrap();
        assert_eq!(triangle.f_vector(), vec![3, 3, 1]);

        let s0a = SimplicialComplex::build(&[vec!["a".into()], vec!["b".into()]]).unwrap();
        let s0b = SimplicialComplex::build(&[vec!["c".into()], vec!["d".into()]]).unwrap();
        let s1 = s0a.join(&s0b).unwrap();
        assert_eq!(s1.f_vector(), vec![4, 4]);
        assert!(s0a.join(&s0a).is_err());
    }

    #[test]
    fn interval_product_counts() {
        let p = SimplicialComplex::build(&[vec!["a".into()]]).unwrap();
        assert_eq!(p.interval_product().complex.f_vector(), vec![2, 1]);

        let edge = SimplicialComplex::build(&[vec!["a".into(), "b".into()]]).unwrap();
        let sq = edge.interval_product();
        assert_eq!(sq.complex.f_vector(), vec![4, 5, 2]);

        let ann = circle().interval_product();
        assert_eq!(ann.complex.f_vector(), vec![6, 12, 6]);
        assert_eq!(ann.complex.euler_characteristic(), 0);
    }

    #[test]
    fn interval_product_maps_compose_to_identity() {
        let x = tetra_boundary();
        let prod = x.interval_product();
        for v in 0..x.vertex_count() as Vertex {
            assert_eq!(prod.projection[prod.bottom[v as usize] as usize], v);
            assert_eq!(prod.projection[prod.top[v as usize] as usize], v);
        }
        // end inclusions are simplicial
        for level in 0..=x.dim() {
            for s in x.simplices(level) {
                for ends in [&prod.bottom, &prod.top] {
                    let img = Simplex::new(
                        s.vertices().iter().map(|v| ends[*v as usize]).collect(),
                    )
                    .unwrap();
                    assert!(prod.complex.contains_simplex(&img));
                }
            }
        }
    }

    #[test]
    fn subdivision_counts() {
        let edge = SimplicialComplex::build(&[vec!["a".into(), "b".into()]]).unwrap();
        let sd = edge.barycentric_subdivision();
        assert_eq!(sd.complex.f_vector(), vec![3, 2]);

        let tri = SimplicialComplex::build(&[vec!["a".into(), "b".into(), "c".into()]]).unwrap();
        let sd = tri.barycentric_subdivision();
        assert_eq!(sd.complex.count(2), 6);
        assert_eq!(sd.complex.euler_characteristic(), tri.euler_characteristic());
    }

    #[test]
    fn subdivision_preserves_euler() {
        for x in [circle(), tetra_boundary(), circle().cone("v").unwrap()] {
            let sd = x.barycentric_subdivision();
            assert_eq!(sd.complex.euler_characteristic(), x.euler_characteristic());
            let sd2 = sd.complex.barycentric_subdivision();
            assert_eq!(sd2.complex.euler_characteristic(), x.euler_characteristic());
        }
    }

    #[test]
    fn subdivision_carrier_shape() {
        let x = circle();
        let sd = x.barycentric_subdivision();
        // one new vertex per old simplex
        assert_eq!(sd.carrier.len(), x.total_simplices());
        // chains respect carrier dimensions
        for e in sd.complex.simplices(1) {
            let dims: Vec<usize> = e
                .vertices()
                .iter()
                .map(|v| sd.carrier[*v as usize].0)
                .collect();
            assert!(dims[0] < dims[1]);
        }
    }
}
