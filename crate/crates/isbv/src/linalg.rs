//! Exact linear algebra: rank and nullspace over `Q` and `F_p`, fraction-free
//! rank over polynomial rings (for function-field coefficients realized with
//! cleared denominators), quadratic-form ranks, and graded-piece dimensions
//! of homogeneous ideals (fiber Hilbert function values).

use std::sync::Arc;

use crate::coeff::{Coefficient, Domain};
use crate::error::AlgebraError;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::vars::VariableSet;

/// Dense matrix of exact field scalars.
#[derive(Clone, Debug)]
pub struct ExactMatrix {
    pub rows: usize,
    pub cols: usize,
    pub domain: Domain,
    entries: Vec<Coefficient>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize, domain: Domain) -> ExactMatrix {
        ExactMatrix {
            rows,
            cols,
            domain,
            entries: vec![domain.zero(); rows * cols],
        }
    }

    pub fn from_rows(domain: Domain, rows: Vec<Vec<Coefficient>>) -> ExactMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            entries.extend(row);
        }
        ExactMatrix {
            rows: r,
            cols: c,
            domain,
            entries,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Coefficient {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Coefficient) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zero(self.cols, self.rows, self.domain);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Row-echelon elimination; returns (rank, echelon form, pivot columns).
    fn echelon(&self) -> (usize, ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            // find a pivot in this column
            let mut pivot = None;
            for r in row..m.rows {
                if !m.get(r, col).is_zero() {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            // swap into place
            if p != row {
                for j in 0..m.cols {
                    let a = m.get(row, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(row, j, b);
                    m.set(p, j, a);
                }
            }
            // normalize pivot row
            let inv = m.get(row, col).inv();
            for j in col..m.cols {
                let v = m.get(row, j).mul(&inv);
                m.set(row, j, v);
            }
            // clear the column everywhere else (full reduction)
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in col..m.cols {
                    let v = m.get(r, j).sub(&m.get(row, j).mul(&factor));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (pivots.len(), m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().0
    }

    /// Basis of the right kernel, one vector per non-pivot column, in
    /// ascending column order.
    pub fn nullspace(&self) -> Vec<Vec<Coefficient>> {
        let (_, ech, pivots) = self.echelon();
        let mut basis = Vec::new();
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut vec = vec![self.domain.zero(); self.cols];
            vec[free] = self.domain.one();
            for (r, &pc) in pivots.iter().enumerate() {
                // pivot row r: x_pc + sum_{j>pc} e[r][j] x_j = 0
                let e = ech.get(r, free).clone();
                if !e.is_zero() {
                    vec[pc] = e.neg();
                }
            }
            basis.push(vec);
        }
        basis
    }

    /// Solves `M x = rhs` exactly; `None` when inconsistent. When the system
    /// is underdetermined, free variables are set to zero.
    pub fn solve(&self, rhs: &[Coefficient]) -> Option<Vec<Coefficient>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = ExactMatrix::zero(self.rows, self.cols + 1, self.domain);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let (_, ech, pivots) = aug.echelon();
        // inconsistent iff a pivot lands in the augmented column
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![self.domain.zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = ech.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn mul_vec(&self, v: &[Coefficient]) -> Vec<Coefficient> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.domain.zero();
                for j in 0..self.cols {
                    acc = acc.add(&self.get(i, j).mul(&v[j]));
                }
                acc
            })
            .collect()
    }
}

/// Dense matrix with polynomial entries; rank and determinant are computed
/// fraction-free (Bareiss), so everything stays in the polynomial ring.
#[derive(Clone, Debug)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    vars: Arc<VariableSet>,
    domain: Domain,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn from_rows(
        vars: &Arc<VariableSet>,
        domain: Domain,
        rows: Vec<Vec<Polynomial>>,
    ) -> PolyMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            entries.extend(row);
        }
        PolyMatrix {
            rows: r,
            cols: c,
            vars: Arc::clone(vars),
            domain,
            entries,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: Polynomial) {
        self.entries[i * self.cols + j] = v;
    }

    /// Rank over the fraction field of the polynomial ring, by fraction-free
    /// Gaussian elimination with exact divisions.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut prev = Polynomial::one(&self.vars, self.domain);
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let mut pivot = None;
            for r in row..m.rows {
                if !m.get(r, col).is_zero() {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            if p != row {
                for j in 0..m.cols {
                    let a = m.get(row, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(row, j, b);
                    m.set(p, j, a);
                }
            }
            let pivot_entry = m.get(row, col).clone();
            for r in (row + 1)..m.rows {
                for j in (col + 1)..m.cols {
                    // Bareiss update: (pivot*a - lead*b) / prev, exact
                    let a = m.get(r, j);
                    let lead = m.get(r, col);
                    let num = pivot_entry
                        .mul(a)
                        .expect("ring")
                        .sub(&lead.mul(m.get(row, j)).expect("ring"))
                        .expect("ring");
                    let q = num.try_div_exact(&prev).expect("Bareiss division is exact");
                    m.set(r, j, q);
                }
                m.set(r, col, Polynomial::zero(&self.vars, self.domain));
            }
            prev = pivot_entry;
            rank += 1;
            row += 1;
        }
        rank
    }

    /// Determinant of a square matrix, fraction-free.
    pub fn det(&self) -> Polynomial {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Polynomial::one(&self.vars, self.domain);
        }
        let mut m = self.clone();
        let mut prev = Polynomial::one(&self.vars, self.domain);
        let mut sign = false;
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let swap = ((k + 1)..n).find(|&r| !m.get(r, k).is_zero());
                match swap {
                    None => return Polynomial::zero(&self.vars, self.domain),
                    Some(r) => {
                        for j in 0..n {
                            let a = m.get(k, j).clone();
                            let b = m.get(r, j).clone();
                            m.set(k, j, b);
                            m.set(r, j, a);
                        }
                        sign = !sign;
                    }
                }
            }
            let pivot = m.get(k, k).clone();
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let num = pivot
                        .mul(m.get(i, j))
                        .expect("ring")
                        .sub(&m.get(i, k).mul(m.get(k, j)).expect("ring"))
                        .expect("ring");
                    let q = num.try_div_exact(&prev).expect("Bareiss division is exact");
                    m.set(i, j, q);
                }
                m.set(i, k, Polynomial::zero(&self.vars, self.domain));
            }
            prev = pivot;
        }
        let d = m.get(n - 1, n - 1).clone();
        if sign {
            d.neg()
        } else {
            d
        }
    }
}

/// Symmetric Gram matrix of the degree-2 part of a polynomial in the given
/// variables; entries are polynomials in the remaining variables
/// (parameters), so the rank is taken over their fraction field.
#[derive(Clone, Debug)]
pub struct QuadraticForm {
    pub gram: PolyMatrix,
    pub var_indices: Vec<usize>,
}

impl QuadraticForm {
    /// Builds the Gram matrix of the degree-2 part of `f` in `var_indices`.
    ///
    /// Requires characteristic different from 2 (the off-diagonal entries
    /// are half the mixed coefficients).
    pub fn from_poly(f: &Polynomial, var_indices: &[usize]) -> Result<QuadraticForm, AlgebraError> {
        let domain = f.domain();
        if domain == Domain::Fp(2) {
            return Err(AlgebraError::CharacteristicTwo);
        }
        let vars = f.vars();
        let quad = f.graded_part(var_indices, 2);
        let n = var_indices.len();
        let half = match domain {
            Domain::Rational => Coefficient::Rational(num_rational::BigRational::new(
                num_bigint::BigInt::from(1),
                num_bigint::BigInt::from(2),
            )),
            Domain::Fp(p) => domain.from_i64(((p + 1) / 2) as i64),
        };
        let mut rows = vec![vec![Polynomial::zero(vars, domain); n]; n];
        let by = quad.collect_by(var_indices);
        for (mono, cofactor) in by {
            let support: Vec<(usize, u32)> = var_indices
                .iter()
                .enumerate()
                .filter(|(_, &v)| mono.exp(v) > 0)
                .map(|(k, &v)| (k, mono.exp(v)))
                .collect();
            match support.as_slice() {
                [(k, 2)] => {
                    rows[*k][*k] = rows[*k][*k].add(&cofactor).expect("ring");
                }
                [(k, 1), (l, 1)] => {
                    let h = cofactor.scale(&half);
                    rows[*k][*l] = rows[*k][*l].add(&h).expect("ring");
                    rows[*l][*k] = rows[*l][*k].add(&h).expect("ring");
                }
                [] => {}
                _ => unreachable!("degree-2 part has only squares and products"),
            }
        }
        Ok(QuadraticForm {
            gram: PolyMatrix::from_rows(vars, domain, rows),
            var_indices: var_indices.to_vec(),
        })
    }

    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    /// Basis of the kernel directions of the Gram matrix, as variable-index
    /// combinations: each kernel vector is a list of (index into
    /// `var_indices`, coefficient polynomial). Only valid when the Gram
    /// entries are constants.
    pub fn constant_kernel(&self) -> Option<Vec<Vec<Coefficient>>> {
        let n = self.var_indices.len();
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let e = self.gram.get(i, j);
                if e.is_zero() {
                    row.push(e.domain().zero());
                } else if e.num_terms() == 1 && e.terms().next().unwrap().0.is_one() {
                    row.push(e.terms().next().unwrap().1.clone());
                } else {
                    return None;
                }
            }
            rows.push(row);
        }
        let m = ExactMatrix::from_rows(self.gram.domain, rows);
        Some(m.nullspace())
    }
}

/// Rank of the degree-2 part of `f` in the given variables; fails when the
/// polynomial has a constant or linear part there (the caller is expected to
/// have translated the point of interest to the origin).
pub fn quadratic_rank(f: &Polynomial, var_indices: &[usize]) -> Result<usize, AlgebraError> {
    let min_deg = f.min_degree_in(var_indices);
    if let Some(d) = min_deg {
        if d < 2 && !f.is_zero() {
            return Err(AlgebraError::InvalidVariableSet(format!(
                "polynomial has a degree-{} part in the quadratic-form variables",
                d
            )));
        }
    }
    Ok(QuadraticForm::from_poly(f, var_indices)?.rank())
}

/// All monomials of total degree `d` in the given variable indices, in a
/// stable (descending lex on the index list) order.
pub fn monomials_of_degree(indices: &[usize], d: u32, nvars: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let k = indices.len();
    if k == 0 {
        if d == 0 {
            out.push(Monomial::one(nvars));
        }
        return out;
    }
    let mut exps = vec![0u32; k];
    fn rec(
        pos: usize,
        remaining: u32,
        exps: &mut Vec<u32>,
        k: usize,
        indices: &[usize],
        nvars: usize,
        out: &mut Vec<Monomial>,
    ) {
        if pos == k - 1 {
            exps[pos] = remaining;
            let mut full = vec![0u32; nvars];
            for (i, &v) in indices.iter().enumerate() {
                full[v] = exps[i];
            }
            out.push(Monomial::from_exps(full));
            return;
        }
        for e in (0..=remaining).rev() {
            exps[pos] = e;
            rec(pos + 1, remaining - e, exps, k, indices, nvars, out);
        }
    }
    rec(0, d, &mut exps, k, indices, nvars, &mut out);
    out
}

/// Dimension of the degree-`d` graded piece of the quotient by the ideal
/// generated by `gens`, graded by the variables in `block_indices`.
///
/// Every generator must be homogeneous in the block; the coefficient field
/// is the generators' domain (base variables must already be specialized).
/// The value is `#(degree-d monomials) - rank(generators x complementary
/// monomials)`, the fiber Hilbert function value h(d).
pub fn graded_piece_dim(
    gens: &[Polynomial],
    block_indices: &[usize],
    d: u32,
) -> Result<usize, AlgebraError> {
    if gens.is_empty() {
        return Ok(num_monomials(block_indices.len(), d));
    }
    let vars = gens[0].vars();
    let domain = gens[0].domain();
    let nvars = vars.len();
    let target = monomials_of_degree(block_indices, d, nvars);
    let index_of: std::collections::BTreeMap<&Monomial, usize> =
        target.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let mut rows: Vec<Vec<Coefficient>> = Vec::new();
    for g in gens {
        let deg = g.multidegree_in(block_indices).ok_or_else(|| {
            AlgebraError::InvalidVariableSet("generator not homogeneous in block".into())
        })?;
        if deg > d {
            continue;
        }
        for m in monomials_of_degree(block_indices, d - deg, nvars) {
            let prod = g.mul_monomial(&m);
            let mut row = vec![domain.zero(); target.len()];
            let mut ok = true;
            for (mono, c) in prod.terms() {
                match index_of.get(mono) {
                    Some(&j) => row[j] = c.clone(),
                    None => {
                        // generator involves non-block variables: reject
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                return Err(AlgebraError::InvalidVariableSet(
                    "generator involves variables outside the graded block".into(),
                ));
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Ok(target.len());
    }
    let m = ExactMatrix::from_rows(domain, rows);
    Ok(target.len() - m.rank())
}

/// Number of monomials of degree `d` in `n` variables.
pub fn num_monomials(n: usize, d: u32) -> usize {
    // binomial(n - 1 + d, d)
    let n = n as u64;
    let d = d as u64;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..d {
        num *= (n - 1 + d - i) as u128;
        den *= (i + 1) as u128;
    }
    (num / den) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn q() -> Domain {
        Domain::Rational
    }

    #[test]
    fn identity_rank() {
        let mut m = ExactMatrix::zero(3, 3, q());
        for i in 0..3 {
            m.set(i, i, q().one());
        }
        assert_eq!(m.rank(), 3);
        assert_eq!(m.transpose().rank(), 3);
    }

    #[test]
    fn zero_matrix_nullspace() {
        let m = ExactMatrix::zero(2, 2, q());
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn nullspace_vectors_satisfy_system() {
        let rows = vec![
            vec![q().from_i64(1), q().from_i64(2), q().from_i64(3)],
            vec![q().from_i64(2), q().from_i64(4), q().from_i64(6)],
        ];
        let m = ExactMatrix::from_rows(q(), rows);
        assert_eq!(m.rank(), 1);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn poly_rank_over_function_field() {
        // [[a, 1], [a^2, a]] has rank 1 over Q(a)
        let vs = VariableSet::simple(&["a"]);
        let a = parse_poly("a", &vs, q()).unwrap();
        let a2 = parse_poly("a^2", &vs, q()).unwrap();
        let one = Polynomial::one(&vs, q());
        let m = PolyMatrix::from_rows(&vs, q(), vec![vec![a.clone(), one], vec![a2, a]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn poly_det_bareiss() {
        let vs = VariableSet::simple(&["a", "b"]);
        let a = parse_poly("a", &vs, q()).unwrap();
        let b = parse_poly("b", &vs, q()).unwrap();
        let one = Polynomial::one(&vs, q());
        // det [[a, b], [1, a]] = a^2 - b
        let m = PolyMatrix::from_rows(&vs, q(), vec![vec![a.clone(), b], vec![one, a]]);
        assert_eq!(m.det(), parse_poly("a^2 - b", &vs, q()).unwrap());
    }

    #[test]
    fn quadratic_rank_examples() {
        let vs = VariableSet::simple(&["x", "y", "z", "w"]);
        let f = parse_poly("x^2 + y^2 + z^2 + w^2", &vs, q()).unwrap();
        assert_eq!(quadratic_rank(&f, &[0, 1, 2, 3]).unwrap(), 4);
        // cross terms: xy has rank 2
        let g = parse_poly("x*y", &vs, q()).unwrap();
        assert_eq!(quadratic_rank(&g, &[0, 1, 2, 3]).unwrap(), 2);
        // the isolated-line local form has quadratic rank 3 in 5 variables
        let vs5 = VariableSet::simple(&["x", "z0", "z2", "z0'", "z2'"]);
        let h = parse_poly("z0'^2 + z2^2 - x*z0^2 - z2'^2", &vs5, q()).unwrap();
        assert_eq!(quadratic_rank(&h, &[0, 1, 2, 3, 4]).unwrap(), 3);
        // linear part is rejected
        let bad = parse_poly("x + y^2", &vs, q()).unwrap();
        assert!(quadratic_rank(&bad, &[0, 1, 2, 3]).is_err());
    }

    #[test]
    fn graded_piece_of_a_quadric() {
        // single smooth quadric in P^3: h(d) of the quotient
        let vs = VariableSet::simple(&["z0", "z1", "z2", "z3"]);
        let f = parse_poly("z0*z3 - z1*z2", &vs, q()).unwrap();
        let idx = [0, 1, 2, 3];
        assert_eq!(graded_piece_dim(&[f.clone()], &idx, 1).unwrap(), 4);
        assert_eq!(graded_piece_dim(&[f.clone()], &idx, 2).unwrap(), 9);
        assert_eq!(graded_piece_dim(&[f], &idx, 3).unwrap(), 16);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(num_monomials(9, 2), 45);
        assert_eq!(num_monomials(9, 3), 165);
        assert_eq!(monomials_of_degree(&[0, 1, 2], 2, 3).len(), 6);
    }
}
