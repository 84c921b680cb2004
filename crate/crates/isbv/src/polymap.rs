//! Ring homomorphisms given by polynomial images of variables.
//!
//! A `PolyMap` sends each source variable to a polynomial over the target
//! variable set. Substitution extends multiplicatively, so it is a ring
//! homomorphism by construction; the parametrizations of the local models
//! and all chart manipulations are expressed this way.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coeff::Domain;
use crate::error::AlgebraError;
use crate::poly::Polynomial;
use crate::vars::VariableSet;

#[derive(Clone, Debug)]
pub struct PolyMap {
    source: Arc<VariableSet>,
    target: Arc<VariableSet>,
    domain: Domain,
    /// Image of each source variable; `None` means the variable has no
    /// assigned image and substituting a polynomial that uses it fails.
    images: Vec<Option<Polynomial>>,
}

impl PolyMap {
    pub fn new(
        source: &Arc<VariableSet>,
        target: &Arc<VariableSet>,
        domain: Domain,
        assignments: &[(&str, Polynomial)],
    ) -> Result<PolyMap, AlgebraError> {
        let mut images: Vec<Option<Polynomial>> = vec![None; source.len()];
        for (name, img) in assignments {
            let idx = source
                .index_of(name)
                .ok_or_else(|| AlgebraError::MissingFromMap {
                    name: (*name).to_string(),
                })?;
            if img.domain() != domain {
                return Err(AlgebraError::DomainMismatch {
                    left: img.domain().to_string(),
                    right: domain.to_string(),
                });
            }
            if img.vars() != target {
                return Err(AlgebraError::VariableSetMismatch);
            }
            images[idx] = Some(img.clone());
        }
        Ok(PolyMap {
            source: Arc::clone(source),
            target: Arc::clone(target),
            domain,
            images,
        })
    }

    /// The identity map on a variable set.
    pub fn identity(vars: &Arc<VariableSet>, domain: Domain) -> PolyMap {
        let images = (0..vars.len())
            .map(|i| Some(Polynomial::var(vars, i, domain)))
            .collect();
        PolyMap {
            source: Arc::clone(vars),
            target: Arc::clone(vars),
            domain,
            images,
        }
    }

    pub fn source(&self) -> &Arc<VariableSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<VariableSet> {
        &self.target
    }

    pub fn image(&self, i: usize) -> Option<&Polynomial> {
        self.images[i].as_ref()
    }

    /// Applies the map to a polynomial over the source variable set.
    pub fn substitute(&self, f: &Polynomial) -> Result<Polynomial, AlgebraError> {
        if f.vars() != &self.source {
            return Err(AlgebraError::VariableSetMismatch);
        }
        if f.domain() != self.domain {
            return Err(AlgebraError::DomainMismatch {
                left: f.domain().to_string(),
                right: self.domain.to_string(),
            });
        }
        // memoize powers of each image across terms
        let mut powers: BTreeMap<(usize, u32), Polynomial> = BTreeMap::new();
        let mut acc = Polynomial::zero(&self.target, self.domain);
        for (m, c) in f.terms() {
            let mut term = Polynomial::constant(&self.target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = self.images[i]
                    .as_ref()
                    .ok_or_else(|| AlgebraError::MissingFromMap {
                        name: self.source.name(i).to_string(),
                    })?;
                let pow = powers.entry((i, e)).or_insert_with(|| img.pow(e)).clone();
                term = term.mul(&pow)?;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Composes with `inner`: the result sends `v` to
    /// `inner.substitute(self.image(v))`.
    pub fn compose(&self, inner: &PolyMap) -> Result<PolyMap, AlgebraError> {
        let mut images = Vec::with_capacity(self.images.len());
        for img in &self.images {
            match img {
                None => images.push(None),
                Some(p) => images.push(Some(inner.substitute(p)?)),
            }
        }
        Ok(PolyMap {
            source: Arc::clone(&self.source),
            target: Arc::clone(inner.target()),
            domain: self.domain,
            images,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    #[test]
    fn substitution_is_a_homomorphism() {
        let src = VariableSet::simple(&["x", "y"]);
        let tgt = VariableSet::simple(&["u", "v"]);
        let d = Domain::Rational;
        let map = PolyMap::new(
            &src,
            &tgt,
            d,
            &[
                ("x", parse_poly("u^2 + v", &tgt, d).unwrap()),
                ("y", parse_poly("u - v", &tgt, d).unwrap()),
            ],
        )
        .unwrap();
        let f = parse_poly("x*y + y^2", &src, d).unwrap();
        let g = parse_poly("x - 2*y", &src, d).unwrap();
        let lhs = map.substitute(&f.mul(&g).unwrap()).unwrap();
        let rhs = map
            .substitute(&f)
            .unwrap()
            .mul(&map.substitute(&g).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn identity_map_fixes_variables() {
        let vs = VariableSet::simple(&["x0", "x1"]);
        let map = PolyMap::identity(&vs, Domain::Rational);
        let f = parse_poly("x0^2 - x1", &vs, Domain::Rational).unwrap();
        assert_eq!(map.substitute(&f).unwrap(), f);
    }

    #[test]
    fn missing_variable_is_an_error() {
        let src = VariableSet::simple(&["x", "y"]);
        let tgt = VariableSet::simple(&["u"]);
        let d = Domain::Rational;
        let map = PolyMap::new(&src, &tgt, d, &[("x", parse_poly("u", &tgt, d).unwrap())]).unwrap();
        let f = parse_poly("y", &src, d).unwrap();
        assert!(matches!(
            map.substitute(&f),
            Err(AlgebraError::MissingFromMap { .. })
        ));
        let g = parse_poly("x^2", &src, d).unwrap();
        assert!(map.substitute(&g).is_ok());
    }

    #[test]
    fn conic_pullback_vanishes() {
        // z0*z2 - f*z1^2 pulls back to 0 under z |-> (t*u^2, u*v, t*v^2), f |-> t^2
        let src = VariableSet::simple(&["z0", "z1", "z2", "f"]);
        let tgt = VariableSet::simple(&["t", "u", "v"]);
        let d = Domain::Rational;
        let map = PolyMap::new(
            &src,
            &tgt,
            d,
            &[
                ("z0", parse_poly("t*u^2", &tgt, d).unwrap()),
                ("z1", parse_poly("u*v", &tgt, d).unwrap()),
                ("z2", parse_poly("t*v^2", &tgt, d).unwrap()),
                ("f", parse_poly("t^2", &tgt, d).unwrap()),
            ],
        )
        .unwrap();
        let conic = parse_poly("z0*z2 - f*z1^2", &src, d).unwrap();
        assert!(map.substitute(&conic).unwrap().is_zero());
    }
}
