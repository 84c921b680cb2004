//! Sparse exact multivariate polynomials.
//!
//! A polynomial is a map from monomials to nonzero coefficients, tied to one
//! `VariableSet` and one coefficient domain. The zero polynomial is the empty
//! map. Storage order is structural; monomial orders are applied lazily by
//! the operations that need them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coeff::{Coefficient, Domain};
use crate::error::AlgebraError;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::vars::VariableSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    vars: Arc<VariableSet>,
    domain: Domain,
    terms: BTreeMap<Monomial, Coefficient>,
}

impl Polynomial {
    pub fn zero(vars: &Arc<VariableSet>, domain: Domain) -> Polynomial {
        Polynomial {
            vars: Arc::clone(vars),
            domain,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VariableSet>, c: Coefficient) -> Polynomial {
        let domain = c.domain();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(vars.len()), c);
        }
        Polynomial {
            vars: Arc::clone(vars),
            domain,
            terms,
        }
    }

    pub fn one(vars: &Arc<VariableSet>, domain: Domain) -> Polynomial {
        Polynomial::constant(vars, domain.one())
    }

    pub fn var(vars: &Arc<VariableSet>, i: usize, domain: Domain) -> Polynomial {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(i, vars.len()), domain.one());
        Polynomial {
            vars: Arc::clone(vars),
            domain,
            terms,
        }
    }

    /// Builds from raw terms, combining duplicates and dropping zeros.
    pub fn from_terms(
        vars: &Arc<VariableSet>,
        domain: Domain,
        terms: impl IntoIterator<Item = (Monomial, Coefficient)>,
    ) -> Polynomial {
        let mut p = Polynomial::zero(vars, domain);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Coefficient {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.domain.zero())
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.len(), self.vars.len());
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<(), AlgebraError> {
        if self.domain != other.domain {
            return Err(AlgebraError::DomainMismatch {
                left: self.domain.to_string(),
                right: other.domain.to_string(),
            });
        }
        if !Arc::ptr_eq(&self.vars, &other.vars) && self.vars != other.vars {
            return Err(AlgebraError::VariableSetMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = Polynomial::zero(&self.vars, self.domain);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.neg()))
            .collect();
        Polynomial {
            vars: Arc::clone(&self.vars),
            domain: self.domain,
            terms,
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars, self.domain);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, k)| (m.clone(), k.mul(c)))
            .collect();
        Polynomial {
            vars: Arc::clone(&self.vars),
            domain: self.domain,
            terms,
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.mul(m), c.clone()))
            .collect();
        Polynomial {
            vars: Arc::clone(&self.vars),
            domain: self.domain,
            terms,
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coefficient) -> Polynomial {
        self.mul_monomial(m).scale(c)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::one(&self.vars, self.domain);
        for _ in 0..k {
            out = out.mul(self).expect("same ring");
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Leading term with respect to a monomial order.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Coefficient)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))
            .map(|(m, c)| (m, c))
    }

    /// The common degree of all terms in the given variable indices, or
    /// `None` when the polynomial is not homogeneous there. The zero
    /// polynomial counts as homogeneous of degree 0.
    pub fn multidegree_in(&self, indices: &[usize]) -> Option<u32> {
        let mut degree = None;
        for m in self.terms.keys() {
            let d = m.degree_in(indices);
            match degree {
                None => degree = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        Some(degree.unwrap_or(0))
    }

    /// Multidegree in a named block of the variable set.
    pub fn multidegree(&self, block: &str) -> Result<Option<u32>, AlgebraError> {
        let blk = self.vars.block(block)?;
        Ok(self.multidegree_in(&blk.indices))
    }

    /// The homogeneous part of the given total degree in the given indices.
    pub fn graded_part(&self, indices: &[usize], degree: u32) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree_in(indices) == degree)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Polynomial {
            vars: Arc::clone(&self.vars),
            domain: self.domain,
            terms,
        }
    }

    /// Minimal total degree in the given indices over all terms.
    pub fn min_degree_in(&self, indices: &[usize]) -> Option<u32> {
        self.terms.keys().map(|m| m.degree_in(indices)).min()
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.vars, self.domain);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] = e - 1;
            let factor = self.domain.from_i64(e as i64);
            out.add_term(Monomial::from_exps(exps), c.mul(&factor));
        }
        out
    }

    /// Full evaluation at a point (one value per variable).
    pub fn eval(&self, values: &[Coefficient]) -> Coefficient {
        assert_eq!(values.len(), self.vars.len());
        let mut acc = self.domain.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&values[i]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitutes constant values for a subset of variables, staying in the
    /// same variable set.
    pub fn substitute_values(&self, assignments: &[(usize, Coefficient)]) -> Polynomial {
        let mut out = Polynomial::zero(&self.vars, self.domain);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = m.exps().to_vec();
            for (i, v) in assignments {
                let e = exps[*i];
                if e > 0 {
                    exps[*i] = 0;
                    for _ in 0..e {
                        coeff = coeff.mul(v);
                    }
                }
            }
            out.add_term(Monomial::from_exps(exps), coeff);
        }
        out
    }

    /// Reduces all coefficients mod `p`. Fails when a denominator is
    /// divisible by `p`.
    pub fn reduce_mod(&self, p: u64) -> Result<Polynomial, AlgebraError> {
        let domain = Domain::fp(p)?;
        let mut out = Polynomial::zero(&self.vars, domain);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.reduce_mod(p)?);
        }
        Ok(out)
    }

    /// Scales so the leading coefficient (w.r.t. `order`) is 1.
    pub fn make_monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => {
                if c.is_one() {
                    self.clone()
                } else {
                    let inv = c.inv();
                    self.scale(&inv)
                }
            }
        }
    }

    /// Over `Q`: clears denominators and divides by the integer content,
    /// normalizing the sign of the leading coefficient (w.r.t. the storage
    /// order) to be positive. Identity over `F_p`.
    pub fn primitive_part(&self) -> Polynomial {
        if self.domain != Domain::Rational || self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            let r = c.as_rational().unwrap();
            den_lcm = den_lcm.lcm(r.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let r = c.as_rational().unwrap();
            let scaled = r.numer() * (&den_lcm / r.denom());
            num_gcd = num_gcd.gcd(&scaled);
        }
        if num_gcd.is_zero() {
            return self.clone();
        }
        let mut factor = BigRational::new(den_lcm, num_gcd);
        // sign normalization: largest stored monomial gets positive sign
        if let Some((_, c)) = self.terms.iter().next_back() {
            let lead = c.as_rational().unwrap() * &factor;
            if lead.is_negative() {
                factor = -factor;
            }
        }
        self.scale(&Coefficient::Rational(factor))
    }

    /// Exact division by `g`: returns `Some(q)` with `self = q * g`, or
    /// `None` when `g` does not divide exactly.
    pub fn try_div_exact(&self, g: &Polynomial) -> Option<Polynomial> {
        if g.is_zero() {
            return None;
        }
        let order = MonomialOrder::GrevLex;
        let (glm, glc) = g
            .leading_term(&order)
            .map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quo = Polynomial::zero(&self.vars, self.domain);
        while !rem.is_zero() {
            let (rlm, rlc) = {
                let (m, c) = rem.leading_term(&order).unwrap();
                (m.clone(), c.clone())
            };
            if !glm.divides(&rlm) {
                return None;
            }
            let qm = glm.div_into(&rlm);
            let qc = rlc.div(&glc);
            quo.add_term(qm.clone(), qc.clone());
            rem = rem.sub(&g.mul_term(&qm, &qc)).expect("same ring");
        }
        Some(quo)
    }

    /// Rebuilds the polynomial over a different variable set. `index_map[i]`
    /// is the index in `new_vars` of old variable `i`; variables without a
    /// mapping must not occur.
    pub fn relabel(
        &self,
        new_vars: &Arc<VariableSet>,
        index_map: &[Option<usize>],
    ) -> Result<Polynomial, AlgebraError> {
        let mut out = Polynomial::zero(new_vars, self.domain);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; new_vars.len()];
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match index_map[i] {
                    Some(j) => exps[j] += e,
                    None => {
                        return Err(AlgebraError::MissingFromMap {
                            name: self.vars.name(i).to_string(),
                        })
                    }
                }
            }
            out.add_term(Monomial::from_exps(exps), c.clone());
        }
        Ok(out)
    }

    /// Groups terms by their monomial part in `indices`, returning for each
    /// such monomial the cofactor polynomial in the remaining variables.
    pub fn collect_by(&self, indices: &[usize]) -> BTreeMap<Monomial, Polynomial> {
        let mut out: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut main = vec![0u32; self.vars.len()];
            let mut rest = m.exps().to_vec();
            for &i in indices {
                main[i] = rest[i];
                rest[i] = 0;
            }
            let key = Monomial::from_exps(main);
            out.entry(key)
                .or_insert_with(|| Polynomial::zero(&self.vars, self.domain))
                .add_term(Monomial::from_exps(rest), c.clone());
        }
        out
    }

    /// The set of variable indices that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut seen = vec![false; self.vars.len()];
        for m in self.terms.keys() {
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    seen[i] = true;
                }
            }
        }
        seen.iter()
            .enumerate()
            .filter(|(_, s)| **s)
            .map(|(i, _)| i)
            .collect()
    }

    /// Renders in the input grammar, terms in descending `order`.
    /// Fails when a coefficient is not an integer (the grammar has no
    /// rational literals).
    pub fn grammar_text(&self, order: &MonomialOrder) -> Result<String, AlgebraError> {
        if self.is_zero() {
            return Ok("0".to_string());
        }
        let mut monomials: Vec<&Monomial> = self.terms.keys().collect();
        monomials.sort_by(|a, b| order.cmp(b, a));
        let mut out = String::new();
        for (k, m) in monomials.iter().enumerate() {
            let c = &self.terms[*m];
            let (neg, mag) = match c {
                Coefficient::Rational(r) => {
                    if !r.is_integer() {
                        return Err(AlgebraError::NonIntegerCoefficient);
                    }
                    (r.is_negative(), r.numer().abs().to_string())
                }
                Coefficient::Fp { val, .. } => (false, val.to_string()),
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.render(&self.vars);
            if mono == "1" {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&mag);
                out.push('*');
                out.push_str(&mono);
            }
        }
        Ok(out)
    }

    /// Human-readable rendering (allows rational coefficients; not part of
    /// the input grammar).
    pub fn display_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let order = MonomialOrder::GrevLex;
        let mut monomials: Vec<&Monomial> = self.terms.keys().collect();
        monomials.sort_by(|a, b| order.cmp(b, a));
        let minus_one = self.domain.one().neg();
        let mut parts = Vec::new();
        for m in monomials {
            let c = &self.terms[m];
            let mono = m.render(&self.vars);
            let piece = if mono == "1" {
                format!("{}", c)
            } else if c.is_one() {
                mono
            } else if *c == minus_one {
                format!("-{}", mono)
            } else {
                format!("{}*{}", c, mono)
            };
            parts.push(piece);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn ring() -> Arc<VariableSet> {
        VariableSet::simple(&["x", "y", "z"])
    }

    #[test]
    fn difference_of_squares() {
        let vs = ring();
        let f = parse_poly("x + y", &vs, Domain::Rational).unwrap();
        let g = parse_poly("x - y", &vs, Domain::Rational).unwrap();
        let expect = parse_poly("x^2 - y^2", &vs, Domain::Rational).unwrap();
        assert_eq!(f.mul(&g).unwrap(), expect);
    }

    #[test]
    fn add_zero_is_identity() {
        let vs = ring();
        let f = parse_poly("3*x*y - z^2 + 7", &vs, Domain::Rational).unwrap();
        let zero = Polynomial::zero(&vs, Domain::Rational);
        assert_eq!(f.add(&zero).unwrap(), f);
    }

    #[test]
    fn domain_mismatch_is_an_error() {
        let vs = ring();
        let f = parse_poly("x", &vs, Domain::Rational).unwrap();
        let g = parse_poly("x", &vs, Domain::fp(3).unwrap()).unwrap();
        assert!(f.add(&g).is_err());
    }

    #[test]
    fn multidegree_and_graded_part() {
        let vs = ring();
        let f = parse_poly("x^2*y - x*y^2", &vs, Domain::Rational).unwrap();
        assert_eq!(f.multidegree_in(&[0, 1, 2]), Some(3));
        let g = parse_poly("x + 1", &vs, Domain::Rational).unwrap();
        assert_eq!(g.multidegree_in(&[0]), None);
        assert_eq!(
            g.graded_part(&[0, 1, 2], 1),
            parse_poly("x", &vs, Domain::Rational).unwrap()
        );
    }

    #[test]
    fn exact_division() {
        let vs = ring();
        let f = parse_poly("x^2 - y^2", &vs, Domain::Rational).unwrap();
        let g = parse_poly("x - y", &vs, Domain::Rational).unwrap();
        let q = f.try_div_exact(&g).unwrap();
        assert_eq!(q, parse_poly("x + y", &vs, Domain::Rational).unwrap());
        let h = parse_poly("x + z", &vs, Domain::Rational).unwrap();
        assert!(f.try_div_exact(&h).is_none());
    }

    #[test]
    fn derivative_basic() {
        let vs = ring();
        let f = parse_poly("x^3*y + z", &vs, Domain::Rational).unwrap();
        assert_eq!(
            f.derivative(0),
            parse_poly("3*x^2*y", &vs, Domain::Rational).unwrap()
        );
    }
}
