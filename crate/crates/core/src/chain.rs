//! Integer chains over the oriented simplices of a complex.
//!
//! Simplices are stored with sorted vertices; the boundary sign of the face
//! dropping position `p` is `(-1)^p`.

use crate::coeff::Int;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::simplex::Simplex;
use std::collections::BTreeMap;

/// A chain of fixed degree: finite map simplex → nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub degree: usize,
    coeffs: BTreeMap<Simplex, Int>,
}

impl Chain {
    pub fn zero(degree: usize) -> Chain {
        Chain {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// Validates that every keyed simplex has the right dimension and lives
    /// in `complex`.
    pub fn new(
        complex: &SimplicialComplex,
        degree: usize,
        terms: impl IntoIterator<Item = (Simplex, Int)>,
    ) -> Result<Chain> {
        let mut chain = Chain::zero(degree);
        for (s, c) in terms {
            if s.dim() != degree {
                return Err(Error::Invalid(format!(
                    "simplex {s:?} has dimension {}, chain has degree {degree}",
                    s.dim()
                )));
            }
            if !complex.contains_simplex(&s) {
                return Err(Error::NotInComplex(format!("{s:?}")));
            }
            chain.add_term(s, c);
        }
        Ok(chain)
    }

    pub fn add_term(&mut self, s: Simplex, c: Int) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(s) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn coefficient(&self, s: &Simplex) -> Int {
        self.coeffs.get(s).cloned().unwrap_or(Int::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &Simplex> {
        self.coeffs.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Simplex, &Int)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Simplicial boundary extended linearly; degree drops by one.
    pub fn boundary(&self) -> Chain {
        let mut out = Chain::zero(self.degree.saturating_sub(1));
        if self.degree == 0 {
            return out;
        }
        for (s, c) in &self.coeffs {
            for p in 0..=s.dim() {
                let sign = if p % 2 == 0 { c.clone() } else { -c };
                out.add_term(s.facet(p), sign);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex() -> SimplicialComplex {
        SimplicialComplex::build(&[vec!["a".into(), "b".into(), "c".into()]]).unwrap()
    }

    #[test]
    fn boundary_of_triangle() {
        let x = complex();
        let t = Simplex::from_sorted(vec![0, 1, 2]);
        let chain = Chain::new(&x, 2, [(t, Int::ONE)]).unwrap();
        let b = chain.boundary();
        assert_eq!(b.coefficient(&Simplex::from_sorted(vec![1, 2])), Int::ONE);
        assert_eq!(
            b.coefficient(&Simplex::from_sorted(vec![0, 2])),
            Int::from(-1)
        );
        assert_eq!(b.coefficient(&Simplex::from_sorted(vec![0, 1])), Int::ONE);
        assert!(b.boundary().is_zero());
    }

    #[test]
    fn validation() {
        let x = complex();
        assert!(Chain::new(&x, 1, [(Simplex::from_sorted(vec![0, 1, 2]), Int::ONE)]).is_err());
        assert!(Chain::new(&x, 0, [(Simplex::vertex(7), Int::ONE)]).is_err());
    }

    /// Summing the cone triangles of cS¹ with matching orientation leaves
    /// exactly the rim cycle; interior (spoke) edges cancel.
    #[test]
    fn cone_boundary_is_rim_cycle() {
        let circle = SimplicialComplex::build(&[
            vec!["a".into(), "b".into()],
            vec!["b".into(), "c".into()],
            vec!["a".into(), "c".into()],
        ])
        .unwrap();
        let cone = circle.cone("v").unwrap();
        // orient each triangle so the rim edge keeps its boundary sign:
        // triangle [r0, r1, apex] gets the sign of [r0, r1] in the rim cycle.
        // rim cycle: [b,c] - [a,c] + [a,b] (boundary of [a,b,c])
        let a = cone.vertex_by_label("a").unwrap();
        let b = cone.vertex_by_label("b").unwrap();
        let c = cone.vertex_by_label("c").unwrap();
        let v = cone.vertex_by_label("v").unwrap();
        let mut chain = Chain::zero(2);
        // ∂[x,y,v] = [y,v] - [x,v] + [x,y] for x<y<v (apex v is the largest id)
        chain.add_term(Simplex::new(vec![b, c, v]).unwrap(), Int::ONE);
        chain.add_term(Simplex::new(vec![a, c, v]).unwrap(), Int::from(-1));
        chain.add_term(Simplex::new(vec![a, b, v]).unwrap(), Int::ONE);
        let boundary = chain.boundary();
        let mut expected = Chain::zero(1);
        expected.add_term(Simplex::new(vec![b, c]).unwrap(), Int::ONE);
        expected.add_term(Simplex::new(vec![a, c]).unwrap(), Int::from(-1));
        expected.add_term(Simplex::new(vec![a, b]).unwrap(), Int::ONE);
        assert_eq!(boundary, expected);
    }
}
