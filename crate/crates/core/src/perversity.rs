//! Perversities: integer values on the singular strata of a stratification,
//! the distinguished zero/top/middle perversities, duality, and transport
//! along constructions.

use crate::error::{Error, Result};
use crate::filtration::{
    ConeStratified, ProductStratified, Restricted, Stratification, SubdividedStratified,
    SuspensionStratified,
};

/// Values indexed by stratum position; `None` on regular strata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perversity {
    values: Vec<Option<i64>>,
}

impl Perversity {
    /// Total map on the singular strata of `s`.
    pub fn new(s: &Stratification, mut value: impl FnMut(usize) -> i64) -> Perversity {
        let values = (0..s.strata().len())
            .map(|i| s.is_singular(i).then(|| value(i)))
            .collect();
        Perversity { values }
    }

    pub fn zero(s: &Stratification) -> Perversity {
        Perversity::new(s, |_| 0)
    }

    /// t̄(S) = codim S − 2.
    pub fn top(s: &Stratification) -> Perversity {
        Perversity::new(s, |i| s.codim(i) - 2)
    }

    /// m̄(S) = ⌊(codim S − 2)/2⌋.
    pub fn lower_middle(s: &Stratification) -> Perversity {
        Perversity::new(s, |i| (s.codim(i) - 2).div_euclid(2))
    }

    /// ⌈(codim S − 2)/2⌉.
    pub fn upper_middle(s: &Stratification) -> Perversity {
        Perversity::new(s, |i| {
            let t = s.codim(i) - 2;
            t - t.div_euclid(2)
        })
    }

    /// From explicit per-stratum values keyed by stratum index.
    pub fn from_values(s: &Stratification, values: &[(usize, i64)]) -> Result<Perversity> {
        let mut out: Vec<Option<i64>> = vec![None; s.strata().len()];
        for (idx, v) in values {
            if *idx >= s.strata().len() {
                return Err(Error::Invalid(format!("no stratum with index {idx}")));
            }
            if !s.is_singular(*idx) {
                return Err(Error::Invalid(format!(
                    "stratum {} is regular; perversities are defined on singular strata",
                    s.stratum_id(*idx)
                )));
            }
            out[*idx] = Some(*v);
        }
        for i in s.singular_strata() {
            if out[i].is_none() {
                return Err(Error::Invalid(format!(
                    "missing value for singular stratum {}",
                    s.stratum_id(i)
                )));
            }
        }
        Ok(Perversity { values: out })
    }

    pub fn value(&self, stratum: usize) -> Option<i64> {
        self.values.get(stratum).copied().flatten()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// q̄(S) = codim S − 2 − p̄(S); an involution.
    pub fn dual(&self, s: &Stratification) -> Perversity {
        assert_eq!(self.values.len(), s.strata().len());
        Perversity::new(s, |i| s.codim(i) - 2 - self.value(i).unwrap())
    }

    /// 0 ≤ p̄(S) ≤ t̄(S) on every singular stratum.
    pub fn in_gm_range(&self, s: &Stratification) -> bool {
        s.singular_strata().all(|i| {
            let v = self.value(i).unwrap();
            0 <= v && v <= s.codim(i) - 2
        })
    }

    /// Pointwise order on singular strata.
    pub fn le(&self, other: &Perversity) -> bool {
        assert_eq!(self.values.len(), other.values.len());
        self.values
            .iter()
            .zip(&other.values)
            .all(|(a, b)| match (a, b) {
                (Some(x), Some(y)) => x <= y,
                (None, None) => true,
                _ => false,
            })
    }

    /// Transport along a restriction: surviving strata keep their values.
    pub fn transport_restrict(&self, restricted: &Restricted) -> Perversity {
        Perversity::new(&restricted.stratification, |i| {
            let origin = restricted.origin[i].expect("restricted stratum has an origin");
            self.value(origin).expect("origin is singular")
        })
    }

    /// Transport along a cone; the apex value must be supplied.
    pub fn transport_cone(&self, cone: &ConeStratified, apex_value: Option<i64>) -> Result<Perversity> {
        let apex = apex_value.ok_or(Error::MissingApexValue)?;
        Ok(Perversity::new(&cone.stratification, |i| {
            if i == cone.apex_stratum {
                apex
            } else {
                let origin = cone.origin[i].expect("cone stratum has an origin");
                self.value(origin).expect("origin is singular")
            }
        }))
    }

    /// Transport along a suspension; both pole values must be supplied.
    pub fn transport_suspension(
        &self,
        sus: &SuspensionStratified,
        north: i64,
        south: i64,
    ) -> Perversity {
        Perversity::new(&sus.stratification, |i| {
            if i == sus.north_stratum {
                north
            } else if i == sus.south_stratum {
                south
            } else {
                let origin = sus.origin[i].expect("suspension stratum has an origin");
                self.value(origin).expect("origin is singular")
            }
        })
    }

    /// Transport along the interval product: S × I keeps p̄(S).
    pub fn transport_product(&self, product: &ProductStratified) -> Perversity {
        Perversity::new(&product.stratification, |i| {
            let origin = product.origin[i].expect("product stratum has an origin");
            self.value(origin).expect("origin is singular")
        })
    }

    /// Transport along a quotient by a group action: π(S) takes the value of
    /// any stratum above it, which is well defined exactly when the values
    /// are invariant.
    pub fn transport_quotient(
        &self,
        source: &Stratification,
        quotient: &crate::action::Quotient,
    ) -> Result<Perversity> {
        let mut out: Vec<Option<i64>> = vec![None; quotient.stratification.strata().len()];
        for i in quotient.stratification.singular_strata() {
            let origin = quotient.origin[i].ok_or_else(|| {
                Error::Invalid(format!(
                    "quotient stratum {} has no recorded source",
                    quotient.stratification.stratum_id(i)
                ))
            })?;
            out[i] = Some(self.value(origin).ok_or_else(|| {
                Error::PerversityNotInvariant(format!(
                    "source stratum {} is regular",
                    source.stratum_id(origin)
                ))
            })?);
        }
        Ok(Perversity { values: out })
    }

    /// Transport along barycentric subdivision via carriers.
    pub fn transport_subdivision(&self, sd: &SubdividedStratified) -> Perversity {
        Perversity::new(&sd.stratification, |i| {
            let origin = sd.origin[i].expect("subdivision stratum has an origin");
            self.value(origin).expect("origin is singular")
        })
    }

    /// Human-readable form keyed by stratum ids.
    pub fn describe(&self, s: &Stratification) -> String {
        let parts: Vec<String> = s
            .singular_strata()
            .map(|i| format!("{}={}", s.stratum_id(i), self.value(i).unwrap()))
            .collect();
        if parts.is_empty() {
            "(no singular strata)".to_string()
        } else {
            parts.join(", ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;

    fn circle() -> SimplicialComplex {
        SimplicialComplex::build(&[
            vec!["a".into(), "b".into()],
            vec!["b".into(), "c".into()],
            vec!["a".into(), "c".into()],
        ])
        .unwrap()
    }

    fn sigma_circle() -> Stratification {
        Stratification::trivial(circle())
            .suspension("n", "s")
            .unwrap()
            .stratification
    }

    #[test]
    fn zero_and_top() {
        let s = sigma_circle();
        let zero = Perversity::zero(&s);
        let top = Perversity::top(&s);
        for i in s.singular_strata() {
            assert_eq!(zero.value(i), Some(0));
            // poles of ΣS¹ have codimension 2
            assert_eq!(top.value(i), Some(0));
        }
        let cone = Stratification::trivial(circle()).cone("v").unwrap();
        let t = Perversity::top(&cone.stratification);
        assert_eq!(t.value(cone.apex_stratum), Some(0));
    }

    #[test]
    fn dual_is_involution_and_swaps_zero_top() {
        let s = sigma_circle();
        let zero = Perversity::zero(&s);
        let top = Perversity::top(&s);
        assert_eq!(zero.dual(&s), top);
        assert_eq!(top.dual(&s), zero);
        for vals in [[-3i64, 5], [0, 1], [7, -2]] {
            let p = {
                let mut k = 0;
                Perversity::new(&s, |_| {
                    let v = vals[k % 2];
                    k += 1;
                    v
                })
            };
            assert_eq!(p.dual(&s).dual(&s), p);
        }
    }

    #[test]
    fn gm_range_and_order() {
        let s = sigma_circle();
        let zero = Perversity::zero(&s);
        let top = Perversity::top(&s);
        assert!(zero.in_gm_range(&s));
        assert!(top.in_gm_range(&s));
        assert!(zero.le(&top));
        let below = Perversity::new(&s, |_| -1);
        assert!(!below.in_gm_range(&s));
        assert!(below.le(&zero));
        assert!(!zero.le(&below));
    }

    #[test]
    fn middle_perversities() {
        // codim-4 stratum: t̄ = 2, lower middle 1, upper middle 1;
        // codim-5: t̄ = 3, lower 1, upper 2
        let s3 = Stratification::trivial(
            SimplicialComplex::build(&[vec![
                "a".into(),
                "b".into(),
                "c".into(),
                "d".into(),
            ]])
            .unwrap(),
        );
        let c4 = s3.cone("v").unwrap(); // apex codim 4
        let lm = Perversity::lower_middle(&c4.stratification);
        let um = Perversity::upper_middle(&c4.stratification);
        assert_eq!(lm.value(c4.apex_stratum), Some(1));
        assert_eq!(um.value(c4.apex_stratum), Some(1));
        let c5 = c4.stratification.cone("w").unwrap();
        let lm = Perversity::lower_middle(&c5.stratification);
        let um = Perversity::upper_middle(&c5.stratification);
        assert_eq!(lm.value(c5.apex_stratum), Some(1));
        assert_eq!(um.value(c5.apex_stratum), Some(2));
    }

    #[test]
    fn transports() {
        let s = sigma_circle();
        let p = Perversity::new(&s, |i| if i == 0 { 0 } else { 1 });
        // restrict to the north cone keeps the north value
        let north = s.complex().vertex_by_label("n").unwrap();
        let gens: Vec<_> = s
            .complex()
            .facets()
            .iter()
            .filter(|f| f.contains(north))
            .cloned()
            .collect();
        let r = s.restrict(&gens).unwrap();
        let pr = p.transport_restrict(&r);
        for i in r.stratification.singular_strata() {
            assert_eq!(pr.value(i), p.value(r.origin[i].unwrap()));
        }
        // product keeps values
        let prod = s.interval_product();
        let pp = p.transport_product(&prod);
        for i in prod.stratification.singular_strata() {
            assert_eq!(pp.value(i), p.value(prod.origin[i].unwrap()));
        }
        // cone requires the apex value
        let cone = s.cone("apex").unwrap();
        assert!(matches!(
            p.transport_cone(&cone, None),
            Err(Error::MissingApexValue)
        ));
        let pc = p.transport_cone(&cone, Some(2)).unwrap();
        assert_eq!(pc.value(cone.apex_stratum), Some(2));
        // subdivision keeps values
        let sd = s.subdivide();
        let psd = p.transport_subdivision(&sd);
        for i in sd.stratification.singular_strata() {
            assert_eq!(psd.value(i), p.value(sd.origin[i].unwrap()));
        }
    }
}
