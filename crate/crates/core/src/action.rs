//! Finite simplicial group actions: validation, regularization through
//! barycentric subdivision, quotient complexes with induced filtrations, and
//! invariant intersection homology via the averaging projector.

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::filtration::{derive_strata, Filtration, Stratification};
use crate::ih::{induced_matrix, IhComputation, SimplicialMap};
use crate::matrix::{rational_of, QMat};
use crate::perversity::Perversity;
use crate::simplex::{Label, Simplex, Vertex};
use std::collections::{BTreeMap, BTreeSet};

pub const MAX_GROUP_ORDER: usize = 10_000;

/// A finite group acting simplicially, given by vertex permutations.
/// Generators must preserve the complex and the filtration; the whole group
/// is enumerated at construction (capped at [`MAX_GROUP_ORDER`]).
#[derive(Clone)]
pub struct SimplicialAction {
    strat: Stratification,
    generators: Vec<Vec<Vertex>>,
    elements: Vec<Vec<Vertex>>,
}

/// Outcome of the regularity and preservation checks.
#[derive(Clone, Debug)]
pub struct ActionReport {
    pub order: usize,
    pub simplicial: bool,
    pub filtration_preserved: bool,
    /// no simplex contains two distinct vertices of one orbit
    pub orbit_separation: bool,
    /// simplices with equal vertex-orbit signatures form single group orbits
    pub orbit_transitivity: bool,
    pub witnesses: Vec<String>,
}

impl ActionReport {
    pub fn regular(&self) -> bool {
        self.orbit_separation && self.orbit_transitivity
    }

    pub fn all_pass(&self) -> bool {
        self.simplicial && self.filtration_preserved && self.regular()
    }
}

impl SimplicialAction {
    pub fn new(strat: Stratification, generators: Vec<Vec<Vertex>>) -> Result<SimplicialAction> {
        let complex = strat.complex();
        let nv = complex.vertex_count();
        for g in &generators {
            if g.len() != nv {
                return Err(Error::Invalid(format!(
                    "generator permutes {} vertices, complex has {nv}",
                    g.len()
                )));
            }
            let mut seen = vec![false; nv];
            for v in g {
                if (*v as usize) >= nv || seen[*v as usize] {
                    return Err(Error::Invalid("generator is not a permutation".into()));
                }
                seen[*v as usize] = true;
            }
        }
        // close under composition
        let identity: Vec<Vertex> = (0..nv as Vertex).collect();
        let mut elements: Vec<Vec<Vertex>> = vec![identity];
        let mut known: BTreeSet<Vec<Vertex>> = elements.iter().cloned().collect();
        let mut frontier = elements.clone();
        while let Some(e) = frontier.pop() {
            for g in &generators {
                let composed: Vec<Vertex> = e.iter().map(|v| g[*v as usize]).collect();
                if known.insert(composed.clone()) {
                    if known.len() > MAX_GROUP_ORDER {
                        return Err(Error::GroupTooLarge(MAX_GROUP_ORDER));
                    }
                    elements.push(composed.clone());
                    frontier.push(composed);
                }
            }
        }
        elements.sort();
        let action = SimplicialAction {
            strat,
            generators,
            elements,
        };
        Ok(action)
    }

    /// Convenience: generators given by label → label maps; unlisted labels
    /// stay fixed.
    pub fn from_label_maps(
        strat: Stratification,
        maps: &[BTreeMap<String, String>],
    ) -> Result<SimplicialAction> {
        let complex = strat.complex();
        let mut generators = Vec::with_capacity(maps.len());
        for m in maps {
            let mut g: Vec<Vertex> = (0..complex.vertex_count() as Vertex).collect();
            for (from, to) in m {
                let f = complex
                    .vertex_by_label(from)
                    .ok_or_else(|| Error::Invalid(format!("unknown vertex label {from:?}")))?;
                let t = complex
                    .vertex_by_label(to)
                    .ok_or_else(|| Error::Invalid(format!("unknown vertex label {to:?}")))?;
                g[f as usize] = t;
            }
            generators.push(g);
        }
        SimplicialAction::new(strat, generators)
    }

    pub fn stratification(&self) -> &Stratification {
        &self.strat
    }

    pub fn complex(&self) -> &SimplicialComplex {
        self.strat.complex()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Vec<Vertex>] {
        &self.elements
    }

    /// Orbit index per vertex id (vertices outside the complex keep their
    /// own singleton orbit).
    pub fn vertex_orbits(&self) -> Vec<u32> {
        let nv = self.complex().vertex_count();
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for g in &self.generators {
            for v in 0..nv {
                let a = find(&mut parent, v);
                let b = find(&mut parent, g[v] as usize);
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut roots: Vec<usize> = (0..nv).map(|v| find(&mut parent, v)).collect();
        let mut distinct: Vec<usize> = roots.clone();
        distinct.sort_unstable();
        distinct.dedup();
        for r in roots.iter_mut() {
            *r = distinct.binary_search(r).unwrap();
        }
        roots.into_iter().map(|r| r as u32).collect()
    }

    fn image_simplex(&self, element: &[Vertex], s: &Simplex) -> Simplex {
        Simplex::new(s.vertices().iter().map(|v| element[*v as usize]).collect())
            .expect("permutations keep vertices distinct")
    }

    /// Checks simpliciality, filtration preservation, and the two regularity
    /// conditions that make the quotient of the complex the complex of the
    /// quotient.
    pub fn validate(&self) -> ActionReport {
        let complex = self.complex();
        let mut witnesses = Vec::new();
        let mut simplicial = true;
        let mut filtration_preserved = true;
        for g in &self.generators {
            for d in 0..=complex.dim() {
                for (idx, s) in complex.simplices(d).iter().enumerate() {
                    let img = self.image_simplex(g, s);
                    match complex.index_of(&img) {
                        None => {
                            simplicial = false;
                            if witnesses.len() < 5 {
                                witnesses.push(format!("image of {s:?} is not a simplex"));
                            }
                        }
                        Some(i) => {
                            if self.strat.filtration().level(d, i)
                                != self.strat.filtration().level(d, idx as u32)
                            {
                                filtration_preserved = false;
                                if witnesses.len() < 5 {
                                    witnesses.push(format!("{s:?} changes filtration level"));
                                }
                            }
                        }
                    }
                }
            }
        }

        let orbits = self.vertex_orbits();
        let mut orbit_separation = true;
        'sep: for d in 1..=complex.dim() {
            for s in complex.simplices(d) {
                let mut seen: Vec<u32> = s.vertices().iter().map(|v| orbits[*v as usize]).collect();
                seen.sort_unstable();
                if seen.windows(2).any(|w| w[0] == w[1]) {
                    orbit_separation = false;
                    witnesses.push(format!("{s:?} holds two vertices of one orbit"));
                    break 'sep;
                }
            }
        }

        let mut orbit_transitivity = true;
        if orbit_separation && simplicial {
            'trans: for d in 0..=complex.dim() {
                let mut by_signature: BTreeMap<Vec<u32>, Vec<u32>> = BTreeMap::new();
                for (idx, s) in complex.simplices(d).iter().enumerate() {
                    let mut sig: Vec<u32> =
                        s.vertices().iter().map(|v| orbits[*v as usize]).collect();
                    sig.sort_unstable();
                    by_signature.entry(sig).or_default().push(idx as u32);
                }
                for (_, members) in by_signature {
                    if members.len() == 1 {
                        continue;
                    }
                    let first = complex.simplex(d, members[0]);
                    let orbit: BTreeSet<u32> = self
                        .elements
                        .iter()
                        .map(|e| {
                            complex
                                .index_of(&self.image_simplex(e, first))
                                .expect("simplicial")
                        })
                        .collect();
                    if members.iter().any(|m| !orbit.contains(m)) {
                        orbit_transitivity = false;
                        witnesses.push(format!(
                            "simplices with the signature of {first:?} split into several orbits"
                        ));
                        break 'trans;
                    }
                }
            }
        }

        ActionReport {
            order: self.elements.len(),
            simplicial,
            filtration_preserved,
            orbit_separation,
            orbit_transitivity,
            witnesses,
        }
    }

    /// Transports the action through one barycentric subdivision.
    pub fn subdivide(&self) -> SimplicialAction {
        let base = self.complex().clone();
        let sd = self.strat.subdivide();
        let mut offsets = vec![0u32; base.dim() + 2];
        for d in 0..=base.dim() {
            offsets[d + 1] = offsets[d] + base.count(d) as u32;
        }
        let generators: Vec<Vec<Vertex>> = self
            .generators
            .iter()
            .map(|g| {
                sd.carrier
                    .iter()
                    .map(|(d, idx)| {
                        let s = base.simplex(*d, *idx);
                        let img = Simplex::new(
                            s.vertices().iter().map(|v| g[*v as usize]).collect(),
                        )
                        .expect("permutation");
                        offsets[*d] + base.index_of(&img).expect("simplicial")
                    })
                    .collect()
            })
            .collect();
        SimplicialAction::new(sd.stratification, generators)
            .expect("transported action stays simplicial")
    }

    /// Subdivides until the action is regular (at most twice).
    pub fn regularize(self) -> Result<SimplicialAction> {
        let mut action = self;
        for _ in 0..=2 {
            let report = action.validate();
            if !report.simplicial || !report.filtration_preserved {
                return Err(Error::NotRegular(report.witnesses.join("; ")));
            }
            if report.regular() {
                return Ok(action);
            }
            action = action.subdivide();
        }
        let report = action.validate();
        if report.regular() {
            Ok(action)
        } else {
            Err(Error::NotRegularAfterTwoSubdivisions(
                report.witnesses.join("; "),
            ))
        }
    }

    /// Quotient complex: vertices are orbits, simplices are orbit-wise
    /// images, skeleta are images of skeleta.
    pub fn quotient(&self) -> Result<Quotient> {
        let report = self.validate();
        if !report.all_pass() {
            return Err(Error::NotRegular(report.witnesses.join("; ")));
        }
        let complex = self.complex();
        let orbits = self.vertex_orbits();
        let orbit_count = orbits.iter().map(|o| o + 1).max().unwrap_or(0) as usize;
        let mut members: Vec<Vec<Vertex>> = vec![Vec::new(); orbit_count];
        for v in 0..complex.vertex_count() {
            members[orbits[v] as usize].push(v as Vertex);
        }
        let labels: Vec<Label> = members
            .iter()
            .map(|m| Label::orbit(m.iter().map(|v| complex.label(*v).clone()).collect()))
            .collect();
        let projection = SimplicialMap {
            vertex_map: orbits.clone(),
        };
        let mut images: Vec<Simplex> = Vec::new();
        for d in 0..=complex.dim() {
            for s in complex.simplices(d) {
                let (img, _) = projection
                    .chain_image(s)
                    .expect("orbit separation prevents collapses");
                images.push(img);
            }
        }
        let quotient_complex = SimplicialComplex::from_facet_simplices(labels, images);
        // induced levels: minimum over preimages
        let mut levels: Vec<Vec<u16>> = (0..=quotient_complex.dim())
            .map(|d| vec![self.strat.n() as u16; quotient_complex.count(d)])
            .collect();
        for d in 0..=complex.dim() {
            for (idx, s) in complex.simplices(d).iter().enumerate() {
                let (img, _) = projection.chain_image(s).expect("no collapses");
                let qi = quotient_complex.index_of(&img).expect("image recorded");
                let lvl = self.strat.filtration().level(d, idx as u32) as u16;
                levels[d][qi as usize] = levels[d][qi as usize].min(lvl);
            }
        }
        let strat = derive_strata(Filtration::from_levels(
            quotient_complex,
            self.strat.n(),
            levels,
        ));
        // stratum correspondence by representatives
        let origin = strat
            .strata()
            .iter()
            .map(|st| {
                let (d, idx) = st.simplices[0];
                let img = strat.complex().simplex(d, idx);
                // find a preimage simplex
                for (pd, ps) in (0..=complex.dim())
                    .flat_map(|pd| complex.simplices(pd).iter().map(move |ps| (pd, ps)))
                {
                    if pd == d {
                        if let Some((i2, _)) = projection.chain_image(ps) {
                            if &i2 == img
                                && self
                                    .strat
                                    .filtration()
                                    .level(pd, complex.index_of(ps).unwrap())
                                    == st.level
                            {
                                return Some(
                                    self.strat.stratum_of(pd, complex.index_of(ps).unwrap()),
                                );
                            }
                        }
                    }
                }
                None
            })
            .collect();
        Ok(Quotient {
            stratification: strat,
            projection,
            origin,
        })
    }

    /// Per-degree rank of the G-invariant subspace of IH^p̄(X; Q), via the
    /// averaging projector (1/|G|) Σ g_*.
    pub fn invariant_ih(&self, p: &Perversity) -> Result<InvariantIh> {
        // the perversity must be constant on orbit-related strata
        for g in &self.generators {
            let map = SimplicialMap {
                vertex_map: g.clone(),
            };
            for st in self.strat.singular_strata() {
                let (d, idx) = self.strat.strata()[st].simplices[0];
                let s = self.strat.complex().simplex(d, idx);
                let (img, _) = map.chain_image(s).expect("permutation");
                let target = self
                    .strat
                    .stratum_of(d, self.strat.complex().index_of(&img).expect("simplicial"));
                if p.value(st) != p.value(target) {
                    return Err(Error::PerversityNotInvariant(format!(
                        "stratum {} maps to {} with a different value",
                        self.strat.stratum_id(st),
                        self.strat.stratum_id(target)
                    )));
                }
            }
        }
        let computation = IhComputation::new(self.strat.clone(), p.clone());
        let order = rational_of(self.elements.len() as i64, 1);
        let mut ranks = Vec::new();
        let mut idempotent = true;
        for d in 0..=self.strat.n() {
            let b = computation.betti(d);
            if b == 0 {
                ranks.push(0);
                continue;
            }
            let mut avg = QMat::zero(b, b);
            let one = rational_of(1, 1);
            for e in &self.elements {
                let map = SimplicialMap {
                    vertex_map: e.clone(),
                };
                let m = induced_matrix(&map, &computation, &computation, d)?;
                avg = avg.add_scaled_mat(&m, &one);
            }
            let scale = rational_of(1, 1) / &order;
            let mut projector = QMat::zero(b, b);
            for i in 0..b {
                for j in 0..b {
                    projector.set(i, j, avg.get(i, j) * &scale);
                }
            }
            let square = projector.mul(&projector);
            for i in 0..b {
                for j in 0..b {
                    if square.get(i, j) != projector.get(i, j) {
                        idempotent = false;
                    }
                }
            }
            ranks.push(projector.rank());
        }
        Ok(InvariantIh { ranks, idempotent })
    }
}

pub struct Quotient {
    pub stratification: Stratification,
    pub projection: SimplicialMap,
    /// quotient stratum -> a source stratum above it
    pub origin: Vec<Option<usize>>,
}

#[derive(Clone, Debug)]
pub struct InvariantIh {
    pub ranks: Vec<usize>,
    pub idempotent: bool,
}
