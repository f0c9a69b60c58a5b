//! Simplices as canonical sorted vertex-id lists, and vertex labels.

use crate::error::{Error, Result};
use smallvec::SmallVec;
use std::fmt;
use std::sync::Arc;

/// Internal vertex identifier within one complex.
pub type Vertex = u32;

type VertexVec = SmallVec<[Vertex; 6]>;

/// A simplex stored with strictly increasing vertex ids.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(VertexVec);

impl Simplex {
    /// Canonicalizes (sorts) the vertex list; rejects duplicates.
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Simplex> {
        if vertices.is_empty() {
            return Err(Error::EmptyInput("simplex needs at least one vertex".into()));
        }
        vertices.sort_unstable();
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateVertexInFacet(format!("vertex id {}", w[0])));
            }
        }
        Ok(Simplex(VertexVec::from_vec(vertices)))
    }

    /// Wraps a list already known to be strictly increasing.
    pub fn from_sorted(vertices: impl Into<VertexVec>) -> Simplex {
        let v: VertexVec = vertices.into();
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(!v.is_empty());
        Simplex(v)
    }

    pub fn vertex(v: Vertex) -> Simplex {
        Simplex(SmallVec::from_slice(&[v]))
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    /// The facet obtained by dropping the vertex at `position`.
    pub fn facet(&self, position: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(position);
        Simplex(v)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| !other.contains(*v))
    }

    /// Union of disjoint vertex sets.
    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut v: Vec<Vertex> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Simplex(VertexVec::from_vec(v))
    }

    /// All nonempty proper subsets, as simplices.
    pub fn proper_faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        let mut out = Vec::with_capacity((1usize << n) - 2);
        for mask in 1..((1u32 << n) - 1) {
            let mut v = VertexVec::new();
            for (i, vert) in self.0.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    v.push(*vert);
                }
            }
            out.push(Simplex(v));
        }
        out
    }

    /// Vertices of `self` that lie in the sorted set `keep`.
    pub fn restrict_to(&self, keep: impl Fn(Vertex) -> bool) -> Option<Simplex> {
        let v: VertexVec = self.0.iter().copied().filter(|v| keep(*v)).collect();
        if v.is_empty() {
            None
        } else {
            Some(Simplex(v))
        }
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Vertex labels form a DAG so that constructions (cones, products,
/// subdivisions) can share structure instead of growing strings.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Label(Arc<LabelNode>);

#[derive(PartialEq, Eq, Hash)]
enum LabelNode {
    Atom(String),
    /// Product vertex: base label at interval end 0 or 1.
    End(Label, u8),
    /// Barycenter of the simplex spanned by the child labels.
    Bary(Vec<Label>),
    /// Orbit of vertices under a group action; rendered by its minimal member.
    Orbit(Vec<Label>),
}

impl Label {
    pub fn atom(s: impl Into<String>) -> Label {
        Label(Arc::new(LabelNode::Atom(s.into())))
    }

    pub fn end(base: &Label, end: u8) -> Label {
        Label(Arc::new(LabelNode::End(base.clone(), end)))
    }

    pub fn barycenter(children: Vec<Label>) -> Label {
        Label(Arc::new(LabelNode::Bary(children)))
    }

    pub fn orbit(members: Vec<Label>) -> Label {
        Label(Arc::new(LabelNode::Orbit(members)))
    }

    /// Deterministic string form used for I/O and canonical sorting.
    pub fn render(&self) -> String {
        match &*self.0 {
            LabelNode::Atom(s) => s.clone(),
            LabelNode::End(base, e) => format!("{}:{}", base.render(), e),
            LabelNode::Bary(children) => {
                let parts: Vec<String> = children.iter().map(|c| c.render()).collect();
                format!("({})", parts.join("."))
            }
            LabelNode::Orbit(members) => members
                .iter()
                .map(|m| m.render())
                .min()
                .expect("orbit has at least one member"),
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_and_faces() {
        let s = Simplex::new(vec![3, 1, 2]).unwrap();
        assert_eq!(s.vertices(), &[1, 2, 3]);
        assert_eq!(s.dim(), 2);
        assert!(Simplex::new(vec![1, 1]).is_err());
        assert_eq!(s.proper_faces().len(), 6);
        assert!(Simplex::from_sorted(vec![1, 3]).is_face_of(&s));
        assert!(!Simplex::from_sorted(vec![1, 4]).is_face_of(&s));
    }

    #[test]
    fn label_rendering() {
        let a = Label::atom("a");
        let b = Label::atom("b");
        let bary = Label::barycenter(vec![a.clone(), b.clone()]);
        assert_eq!(bary.render(), "(a.b)");
        assert_eq!(Label::end(&a, 1).render(), "a:1");
        assert_eq!(Label::orbit(vec![b, a]).render(), "a");
    }
}
