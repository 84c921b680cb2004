//! Normal forms, Buchberger's algorithm, elimination, saturation, tangent
//! cones, and local substitution-elimination.
//!
//! The engine is a plain Buchberger loop with the sugar selection strategy,
//! the product and chain criteria, and a configurable cap on S-pair
//! reductions. Exceeding the cap is an explicit error, never a silent
//! fallback; callers route such checks to the finite-field enumeration
//! oracle instead.
//!
//! Parameter fields (rational function fields in the base coordinates) are
//! realized by block orders: a basis of an ideal in the full polynomial ring
//! with respect to an order whose x-block dominates is a Groebner basis of
//! the extended ideal over k(params), so all arithmetic stays polynomial.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::coeff::{Coefficient, Domain};
use crate::error::GroebnerError;
use crate::monomial::Monomial;
use crate::order::{MonomialOrder, SimpleOrder};
use crate::poly::Polynomial;
use crate::vars::{BlockKind, VariableSet};

/// Cap on S-pair reductions for one Buchberger run.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub limit: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { limit: 1_000_000 }
    }
}

// ---------------------------------------------------------------------------
// sorted-vector polynomials (internal working representation)
// ---------------------------------------------------------------------------

/// Terms sorted descending with respect to the active order.
#[derive(Clone, Debug)]
struct VPoly {
    terms: Vec<(Monomial, Coefficient)>,
}

impl VPoly {
    fn from_poly(p: &Polynomial, order: &MonomialOrder) -> VPoly {
        let mut terms: Vec<(Monomial, Coefficient)> =
            p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|(a, _), (b, _)| order.cmp(b, a));
        VPoly { terms }
    }

    fn to_poly(&self, vars: &Arc<VariableSet>, domain: Domain) -> Polynomial {
        Polynomial::from_terms(vars, domain, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &(Monomial, Coefficient) {
        &self.terms[0]
    }

    /// `self - c * m * g`, merged in descending order.
    fn sub_scaled(&self, c: &Coefficient, m: &Monomial, g: &VPoly, order: &MonomialOrder) -> VPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() && j < g.terms.len() {
            let gm = g.terms[j].0.mul(m);
            match order.cmp(&self.terms[i].0, &gm) {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((gm, g.terms[j].1.mul(c).neg()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let coeff = self.terms[i].1.sub(&g.terms[j].1.mul(c));
                    if !coeff.is_zero() {
                        out.push((gm, coeff));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        while i < self.terms.len() {
            out.push(self.terms[i].clone());
            i += 1;
        }
        while j < g.terms.len() {
            let gm = g.terms[j].0.mul(m);
            out.push((gm, g.terms[j].1.mul(c).neg()));
            j += 1;
        }
        VPoly { terms: out }
    }

    fn make_monic(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let lc = self.terms[0].1.clone();
        if lc.is_one() {
            return;
        }
        let inv = lc.inv();
        for (_, c) in &mut self.terms {
            *c = c.mul(&inv);
        }
    }

    fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.total_degree())
            .max()
            .unwrap_or(0)
    }
}

/// Full normal form on the working representation. Returns the remainder.
fn nf_vpoly(f: &VPoly, basis: &[VPoly], order: &MonomialOrder) -> VPoly {
    let mut p = f.clone();
    let mut r: Vec<(Monomial, Coefficient)> = Vec::new();
    'outer: while !p.is_zero() {
        let (pm, pc) = p.lead().clone();
        for g in basis {
            if g.is_zero() {
                continue;
            }
            let (gm, gc) = g.lead();
            if gm.divides(&pm) {
                let m = gm.div_into(&pm);
                let c = pc.div(gc);
                p = p.sub_scaled(&c, &m, g, order);
                continue 'outer;
            }
        }
        r.push((pm, pc));
        p.terms.remove(0);
    }
    VPoly { terms: r }
}

// ---------------------------------------------------------------------------
// public operations
// ---------------------------------------------------------------------------

/// Multivariate division: the remainder of `f` on division by `basis`.
///
/// No term of the result is divisible by any basis leading term, and
/// `f - result` lies in the ideal generated by the basis.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let vbasis: Vec<VPoly> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| VPoly::from_poly(g, order))
        .collect();
    let vf = VPoly::from_poly(f, order);
    nf_vpoly(&vf, &vbasis, order).to_poly(f.vars(), f.domain())
}

/// Buchberger's algorithm with sugar selection and the product and chain
/// criteria. Returns the unique reduced Groebner basis (monic leading
/// coefficients, sorted by ascending leading monomial).
pub fn buchberger(
    gens: &[Polynomial],
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<Vec<Polynomial>, GroebnerError> {
    let nonzero: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(Vec::new());
    }
    let vars = Arc::clone(nonzero[0].vars());
    let domain = nonzero[0].domain();
    order.validate(vars.len())?;

    let mut basis: Vec<VPoly> = Vec::new();
    let mut sugars: Vec<u32> = Vec::new();
    for g in &nonzero {
        let mut v = VPoly::from_poly(g, order);
        v.make_monic();
        sugars.push(v.total_degree());
        basis.push(v);
    }

    // pending S-pairs (i < j) plus the set of pairs already treated,
    // for the chain criterion
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut treated: std::collections::BTreeSet<(usize, usize)> = Default::default();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push((i, j));
        }
    }

    let mut steps: u64 = 0;
    while !pairs.is_empty() {
        // sugar selection: minimal (sugar, lcm, i, j)
        let mut best = 0;
        let mut best_key: Option<(u32, Monomial, usize, usize)> = None;
        for (k, &(i, j)) in pairs.iter().enumerate() {
            let lcm = basis[i].lead().0.lcm(&basis[j].lead().0);
            let sugar = (sugars[i] + lcm.total_degree() - basis[i].lead().0.total_degree())
                .max(sugars[j] + lcm.total_degree() - basis[j].lead().0.total_degree());
            let key = (sugar, lcm, i, j);
            let better = match &best_key {
                None => true,
                Some(bk) => {
                    key.0 < bk.0
                        || (key.0 == bk.0 && order.cmp(&key.1, &bk.1).is_lt())
                        || (key.0 == bk.0
                            && order.cmp(&key.1, &bk.1).is_eq()
                            && (key.2, key.3) < (bk.2, bk.3))
                }
            };
            if better {
                best = k;
                best_key = Some(key);
            }
        }
        let (i, j) = pairs.swap_remove(best);
        treated.insert((i, j));

        let (lmi, lmj) = (basis[i].lead().0.clone(), basis[j].lead().0.clone());
        // product criterion
        if lmi.coprime(&lmj) {
            continue;
        }
        let lcm = lmi.lcm(&lmj);
        // chain criterion: some k with lm_k | lcm and both (i,k), (j,k) treated
        let mut skip = false;
        for k in 0..basis.len() {
            if k == i || k == j || basis[k].is_zero() {
                continue;
            }
            if basis[k].lead().0.divides(&lcm) {
                let a = (i.min(k), i.max(k));
                let b = (j.min(k), j.max(k));
                if treated.contains(&a) && treated.contains(&b) {
                    skip = true;
                    break;
                }
            }
        }
        if skip {
            continue;
        }

        steps += 1;
        if steps > budget.limit {
            return Err(GroebnerError::BudgetExceeded {
                steps,
                limit: budget.limit,
            });
        }

        // S-polynomial of two monic elements
        let mi = lmi.div_into(&lcm);
        let mj = lmj.div_into(&lcm);
        let fi = VPoly {
            terms: basis[i]
                .terms
                .iter()
                .map(|(m, c)| (m.mul(&mi), c.clone()))
                .collect(),
        };
        let s = fi.sub_scaled(&domain.one(), &mj, &basis[j], order);
        let sugar_s = (sugars[i] + mi.total_degree()).max(sugars[j] + mj.total_degree());

        let mut red = nf_vpoly(&s, &basis, order);
        if !red.is_zero() {
            red.make_monic();
            let new_idx = basis.len();
            sugars.push(sugar_s.max(red.total_degree()));
            basis.push(red);
            for k in 0..new_idx {
                if !basis[k].is_zero() {
                    pairs.push((k, new_idx));
                }
            }
        }
    }

    // minimalize: drop elements whose leading monomial is divisible by
    // another's
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for a in 0..basis.len() {
        if basis[a].is_zero() {
            keep[a] = false;
            continue;
        }
        for b in 0..basis.len() {
            if a == b || !keep[a] || !keep[b] || basis[b].is_zero() {
                continue;
            }
            if basis[b].lead().0.divides(&basis[a].lead().0)
                && (basis[a].lead().0 != basis[b].lead().0 || b < a)
            {
                keep[a] = false;
                break;
            }
        }
    }
    let minimal: Vec<VPoly> = basis
        .into_iter()
        .zip(&keep)
        .filter(|(_, k)| **k)
        .map(|(g, _)| g)
        .collect();

    // tail-reduce each element against the others
    let mut reduced: Vec<VPoly> = Vec::with_capacity(minimal.len());
    for a in 0..minimal.len() {
        let others: Vec<VPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(b, _)| *b != a)
            .map(|(_, g)| g.clone())
            .collect();
        let mut r = nf_vpoly(&minimal[a], &others, order);
        r.make_monic();
        if !r.is_zero() {
            reduced.push(r);
        }
    }
    reduced.sort_by(|a, b| order.cmp(&a.lead().0, &b.lead().0));
    Ok(reduced
        .into_iter()
        .map(|g| g.to_poly(&vars, domain))
        .collect())
}

// ---------------------------------------------------------------------------
// ideals with cached bases
// ---------------------------------------------------------------------------

/// Hook for an external (on-disk) basis store. Implemented by the CLI cache.
pub trait BasisStore: Send + Sync {
    /// `preimage` is a canonical text describing (generators, order, domain).
    fn load(&self, preimage: &str) -> Option<String>;
    fn store(&self, preimage: &str, encoded: &str);
}

struct DiskCacheConfig {
    store: Arc<dyn BasisStore>,
    audit: bool,
}

static DISK_CACHE: OnceLock<RwLock<Option<DiskCacheConfig>>> = OnceLock::new();

fn disk_cache() -> &'static RwLock<Option<DiskCacheConfig>> {
    DISK_CACHE.get_or_init(|| RwLock::new(None))
}

/// Installs (or clears) the process-wide basis store.
pub fn set_basis_store(store: Option<Arc<dyn BasisStore>>, audit: bool) {
    let mut guard = disk_cache().write().unwrap();
    *guard = store.map(|s| DiskCacheConfig { store: s, audit });
}

/// A generator list with cached reduced Groebner bases keyed by order.
#[derive(Clone, Debug)]
pub struct Ideal {
    vars: Arc<VariableSet>,
    domain: Domain,
    gens: Vec<Polynomial>,
    cache: Arc<RwLock<BTreeMap<String, Arc<Vec<Polynomial>>>>>,
}

impl Ideal {
    pub fn new(vars: &Arc<VariableSet>, domain: Domain, gens: Vec<Polynomial>) -> Ideal {
        Ideal {
            vars: Arc::clone(vars),
            domain,
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: Arc::new(RwLock::new(BTreeMap::new())),
        }
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Canonical text for cache keys: generators in a stable form plus the
    /// ambient data.
    fn cache_preimage(&self, order: &MonomialOrder) -> String {
        let mut lines: Vec<String> = self
            .gens
            .iter()
            .map(|g| g.primitive_part().display_text())
            .collect();
        lines.sort();
        format!(
            "vars={}\ndomain={}\norder={}\n{}",
            self.vars,
            self.domain,
            order.key(),
            lines.join("\n")
        )
    }

    /// The reduced Groebner basis for `order`, from cache or computed.
    pub fn groebner_basis(
        &self,
        order: &MonomialOrder,
        budget: &Budget,
    ) -> Result<Arc<Vec<Polynomial>>, GroebnerError> {
        let key = order.key();
        if let Some(hit) = self.cache.read().unwrap().get(&key) {
            return Ok(Arc::clone(hit));
        }
        // external store
        let preimage = self.cache_preimage(order);
        {
            let guard = disk_cache().read().unwrap();
            if let Some(cfg) = guard.as_ref() {
                if let Some(encoded) = cfg.store.load(&preimage) {
                    if let Some(basis) = decode_basis(&encoded, &self.vars, self.domain) {
                        if cfg.audit {
                            let fresh = buchberger(&self.gens, order, budget)?;
                            assert_eq!(
                                fresh, basis,
                                "cache audit mismatch: stored basis differs from fresh computation"
                            );
                        }
                        let arc = Arc::new(basis);
                        self.cache.write().unwrap().insert(key, Arc::clone(&arc));
                        return Ok(arc);
                    }
                    eprintln!("warning: corrupt basis cache entry ignored; recomputing");
                }
            }
        }
        let basis = Arc::new(buchberger(&self.gens, order, budget)?);
        {
            let guard = disk_cache().read().unwrap();
            if let Some(cfg) = guard.as_ref() {
                cfg.store.store(&preimage, &encode_basis(&basis));
            }
        }
        self.cache.write().unwrap().insert(key, Arc::clone(&basis));
        Ok(basis)
    }

    /// Ideal membership: true iff the normal form against the reduced basis
    /// vanishes.
    pub fn member(
        &self,
        f: &Polynomial,
        order: &MonomialOrder,
        budget: &Budget,
    ) -> Result<bool, GroebnerError> {
        let basis = self.groebner_basis(order, budget)?;
        Ok(normal_form(f, &basis, order).is_zero())
    }

    /// Elimination ideal: generators of `I` intersected with the subring in
    /// the complement of `drop`, via a block order with the dropped block
    /// dominant.
    pub fn eliminate(&self, drop: &[usize], budget: &Budget) -> Result<Ideal, GroebnerError> {
        let keep: Vec<usize> = (0..self.vars.len()).filter(|i| !drop.contains(i)).collect();
        let order = MonomialOrder::elimination(drop.to_vec(), keep);
        let basis = self.groebner_basis(&order, budget)?;
        let kept: Vec<Polynomial> = basis
            .iter()
            .filter(|g| g.support_vars().iter().all(|v| !drop.contains(v)))
            .cloned()
            .collect();
        Ok(Ideal::new(&self.vars, self.domain, kept))
    }

    /// Saturation `(I : f^inf)` by the extra-variable trick: adjoin `w`, add
    /// `w*f - 1`, eliminate `w`.
    pub fn saturate(&self, f: &Polynomial, budget: &Budget) -> Result<Ideal, GroebnerError> {
        assert!(!f.is_zero(), "saturation by zero");
        let (ext, embed) = extend_vars(&self.vars, &["w#sat"]);
        let w = ext.index_of("w#sat").unwrap();
        let mut gens: Vec<Polynomial> = Vec::new();
        for g in &self.gens {
            gens.push(g.relabel(&ext, &embed).expect("embed"));
        }
        let fe = f.relabel(&ext, &embed).expect("embed");
        let wf = fe
            .mul(&Polynomial::var(&ext, w, self.domain))
            .expect("ring");
        let one = Polynomial::one(&ext, self.domain);
        gens.push(wf.sub(&one).expect("ring"));
        let big = Ideal::new(&ext, self.domain, gens);
        let elim = big.eliminate(&[w], budget)?;
        // project back
        let mut back: Vec<Option<usize>> = vec![None; ext.len()];
        for (i, slot) in embed.iter().enumerate() {
            if let Some(j) = slot {
                back[*j] = Some(i);
            }
        }
        let gens: Vec<Polynomial> = elim
            .generators()
            .iter()
            .map(|g| g.relabel(&self.vars, &back).expect("no w left"))
            .collect();
        Ok(Ideal::new(&self.vars, self.domain, gens))
    }
}

/// Extends a variable set by auxiliary base variables; returns the new set
/// and the embedding index map (old index -> new index).
pub fn extend_vars(
    vars: &Arc<VariableSet>,
    extra: &[&str],
) -> (Arc<VariableSet>, Vec<Option<usize>>) {
    let mut groups: Vec<(String, BlockKind, Vec<String>)> = Vec::new();
    for b in vars.blocks() {
        groups.push((
            b.name.clone(),
            b.kind,
            b.indices
                .iter()
                .map(|&i| vars.name(i).to_string())
                .collect(),
        ));
    }
    groups.push((
        "aux".to_string(),
        BlockKind::Base,
        extra.iter().map(|s| s.to_string()).collect(),
    ));
    let refs: Vec<(&str, BlockKind, Vec<&str>)> = groups
        .iter()
        .map(|(n, k, v)| (n.as_str(), *k, v.iter().map(|s| s.as_str()).collect()))
        .collect();
    let slices: Vec<(&str, BlockKind, &[&str])> = refs
        .iter()
        .map(|(n, k, v)| (*n, *k, v.as_slice()))
        .collect();
    let ext = VariableSet::new(&slices).expect("extension is valid");
    let embed: Vec<Option<usize>> = (0..vars.len())
        .map(|i| ext.index_of(vars.name(i)))
        .collect();
    (ext, embed)
}

// basis encode/decode for the external store (internal format: exponent
// vectors with rational coefficients; richer than the input grammar)

fn encode_basis(basis: &[Polynomial]) -> String {
    let mut out = String::new();
    for g in basis {
        let mut first = true;
        for (m, c) in g.terms() {
            if !first {
                out.push(';');
            }
            first = false;
            let exps: Vec<String> = m.exps().iter().map(|e| e.to_string()).collect();
            out.push_str(&format!("{}:{}", exps.join(","), c));
        }
        out.push('\n');
    }
    out
}

fn decode_basis(text: &str, vars: &Arc<VariableSet>, domain: Domain) -> Option<Vec<Polynomial>> {
    let mut basis = Vec::new();
    for line in text.lines() {
        if line.is_empty() {
            continue;
        }
        let mut terms = Vec::new();
        for item in line.split(';') {
            let (epart, cpart) = item.split_once(':')?;
            let exps: Option<Vec<u32>> = epart.split(',').map(|e| e.parse().ok()).collect();
            let exps = exps?;
            if exps.len() != vars.len() {
                return None;
            }
            let coeff = match domain {
                Domain::Rational => {
                    let r: num_rational::BigRational = cpart.parse().ok()?;
                    Coefficient::Rational(r)
                }
                Domain::Fp(p) => {
                    let v: u64 = cpart.parse().ok()?;
                    if v >= p {
                        return None;
                    }
                    Coefficient::Fp { p, val: v }
                }
            };
            terms.push((Monomial::from_exps(exps), coeff));
        }
        basis.push(Polynomial::from_terms(vars, domain, terms));
    }
    Some(basis)
}

// ---------------------------------------------------------------------------
// staircases
// ---------------------------------------------------------------------------

/// Leading monomials of a basis restricted to the given variable indices
/// (the x-part of each block-order leading monomial).
pub fn leading_x_monomials(
    basis: &[Polynomial],
    x_indices: &[usize],
    x_order: &SimpleOrder,
) -> Vec<Monomial> {
    let mut out = Vec::new();
    for g in basis {
        if g.is_zero() {
            continue;
        }
        let by_x = g.collect_by(x_indices);
        let lead = by_x
            .keys()
            .max_by(|a, b| match x_order {
                SimpleOrder::GrevLex => MonomialOrder::GrevLex.cmp(a, b),
                SimpleOrder::Lex => MonomialOrder::Lex.cmp(a, b),
            })
            .expect("nonzero");
        out.push(lead.clone());
    }
    out.sort();
    out.dedup();
    out
}

/// Enumerates the finite staircase (monomials not divisible by any leading
/// monomial) of a zero-dimensional leading-term ideal in the given
/// variables. Returns `None` when the staircase is infinite.
pub fn finite_staircase(
    leads: &[Monomial],
    x_indices: &[usize],
    nvars: usize,
) -> Option<Vec<Monomial>> {
    // bound per variable: a pure power of each variable must appear
    let mut bounds = Vec::new();
    for &v in x_indices {
        let bound = leads
            .iter()
            .filter(|m| m.exp(v) > 0 && x_indices.iter().all(|&u| u == v || m.exp(u) == 0))
            .map(|m| m.exp(v))
            .min()?;
        bounds.push(bound);
    }
    let mut stairs = Vec::new();
    let mut current = vec![0u32; x_indices.len()];
    loop {
        let mut exps = vec![0u32; nvars];
        for (k, &v) in x_indices.iter().enumerate() {
            exps[v] = current[k];
        }
        let mono = Monomial::from_exps(exps);
        if !leads.iter().any(|l| l.divides(&mono)) {
            stairs.push(mono);
        }
        // odometer
        let mut k = 0;
        loop {
            if k == current.len() {
                stairs.sort();
                return Some(stairs);
            }
            current[k] += 1;
            if current[k] < bounds[k] {
                break;
            }
            current[k] = 0;
            k += 1;
        }
    }
}

/// Number of degree-`d` monomials in the given variables outside the
/// leading-term ideal (the Hilbert function value of the quotient).
pub fn staircase_count_in_degree(
    leads: &[Monomial],
    x_indices: &[usize],
    d: u32,
    nvars: usize,
) -> usize {
    let mut count = 0;
    let k = x_indices.len();
    // enumerate degree-d exponent vectors over x_indices
    let mut exps = vec![0u32; k];
    fn rec(
        pos: usize,
        remaining: u32,
        exps: &mut Vec<u32>,
        k: usize,
        x_indices: &[usize],
        leads: &[Monomial],
        nvars: usize,
        count: &mut usize,
    ) {
        if pos == k - 1 {
            exps[pos] = remaining;
            let mut full = vec![0u32; nvars];
            for (i, &v) in x_indices.iter().enumerate() {
                full[v] = exps[i];
            }
            let mono = Monomial::from_exps(full);
            if !leads.iter().any(|l| l.divides(&mono)) {
                *count += 1;
            }
            return;
        }
        for e in 0..=remaining {
            exps[pos] = e;
            rec(
                pos + 1,
                remaining - e,
                exps,
                k,
                x_indices,
                leads,
                nvars,
                count,
            );
        }
    }
    if k == 0 {
        return if d == 0 { 1 } else { 0 };
    }
    rec(0, d, &mut exps, k, x_indices, leads, nvars, &mut count);
    count
}

// ---------------------------------------------------------------------------
// pseudo-division over a parameter field
// ---------------------------------------------------------------------------

/// Normal form of `f` over the fraction field of the parameter subring,
/// with cleared denominators: returns `(r, d)` where `d` is a polynomial in
/// the parameters only, `d*f - r` lies in the ideal generated by `basis`,
/// and no x-monomial of `r` is divisible by a leading x-monomial of the
/// basis. `basis` must be a Groebner basis for a block order dominated by
/// the x-block (grevlex inside).
pub fn pseudo_normal_form(
    f: &Polynomial,
    basis: &[Polynomial],
    x_indices: &[usize],
) -> (Polynomial, Polynomial) {
    let vars = f.vars();
    let domain = f.domain();
    let x_order = MonomialOrder::GrevLex;
    // precompute per-basis-element: leading x-monomial and its parameter
    // coefficient
    struct Reducer {
        lead_x: Monomial,
        lead_coeff: Polynomial,
        poly: Polynomial,
    }
    let reducers: Vec<Reducer> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let by_x = g.collect_by(x_indices);
            let lead_x = by_x
                .keys()
                .max_by(|a, b| x_order.cmp(a, b))
                .unwrap()
                .clone();
            let lead_coeff = by_x[&lead_x].clone();
            Reducer {
                lead_x,
                lead_coeff,
                poly: g.clone(),
            }
        })
        .collect();

    let mut p = f.clone();
    let mut r = Polynomial::zero(vars, domain);
    let mut d = Polynomial::one(vars, domain);
    loop {
        if p.is_zero() {
            break;
        }
        let by_x = p.collect_by(x_indices);
        let mu = by_x
            .keys()
            .max_by(|a, b| x_order.cmp(a, b))
            .unwrap()
            .clone();
        let cofactor = by_x[&mu].clone();
        let hit = reducers.iter().find(|red| red.lead_x.divides(&mu));
        match hit {
            None => {
                // move the mu-part to the remainder
                let part = cofactor.mul_monomial(&mu);
                r = r.add(&part).expect("ring");
                p = p.sub(&part).expect("ring");
            }
            Some(red) => {
                let shift = red.lead_x.div_into(&mu);
                // p := c_g * p - cofactor * shift * g
                let scaled_p = mulp(&p, &red.lead_coeff);
                let sub = mulp(&red.poly.mul_monomial(&shift), &cofactor);
                p = scaled_p.sub(&sub).expect("ring");
                r = mulp(&r, &red.lead_coeff);
                d = mulp(&d, &red.lead_coeff);
                // keep integer content under control
                let joint = normalize_triple(p, r, d);
                p = joint.0;
                r = joint.1;
                d = joint.2;
            }
        }
    }
    (r, d)
}

fn mulp(a: &Polynomial, b: &Polynomial) -> Polynomial {
    a.mul(b).expect("ring")
}

/// Divides p, r, d jointly by the gcd of their integer contents (over Q).
fn normalize_triple(
    p: Polynomial,
    r: Polynomial,
    d: Polynomial,
) -> (Polynomial, Polynomial, Polynomial) {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::Zero;
    if p.domain() != Domain::Rational {
        return (p, r, d);
    }
    let mut den_lcm = BigInt::from(1);
    let mut num_gcd = BigInt::zero();
    for poly in [&p, &r, &d] {
        for (_, c) in poly.terms() {
            let rat = c.as_rational().unwrap();
            den_lcm = den_lcm.lcm(rat.denom());
        }
    }
    for poly in [&p, &r, &d] {
        for (_, c) in poly.terms() {
            let rat = c.as_rational().unwrap();
            num_gcd = num_gcd.gcd(&(rat.numer() * (&den_lcm / rat.denom())));
        }
    }
    if num_gcd.is_zero() {
        return (p, r, d);
    }
    let factor = Coefficient::Rational(num_rational::BigRational::new(den_lcm, num_gcd));
    (p.scale(&factor), r.scale(&factor), d.scale(&factor))
}

// ---------------------------------------------------------------------------
// tangent cones
// ---------------------------------------------------------------------------

/// The ideal of lowest-degree forms at the origin (degrees taken in the
/// non-parameter variables), by Macaulay's homogenization construction.
///
/// `gens` must already be translated so the point of interest is the origin;
/// `params` are indices adjoined to the coefficient field.
pub fn tangent_cone(
    gens: &[Polynomial],
    params: &[usize],
    budget: &Budget,
) -> Result<Vec<Polynomial>, GroebnerError> {
    let nonzero: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(Vec::new());
    }
    let vars = Arc::clone(nonzero[0].vars());
    let domain = nonzero[0].domain();
    let x_indices: Vec<usize> = (0..vars.len()).filter(|i| !params.contains(i)).collect();

    // step 1: basis with respect to an x-graded order, so homogenizing it
    // generates the homogenized ideal
    let graded = MonomialOrder::blocks(vec![
        (x_indices.clone(), SimpleOrder::GrevLex),
        (params.to_vec(), SimpleOrder::GrevLex),
    ]);
    let g1 = buchberger(gens, &graded, budget)?;
    if g1
        .iter()
        .any(|g| g.support_vars().iter().all(|v| params.contains(v)) && !g.is_zero())
    {
        // a unit (or pure parameter element): empty variety at the origin
        return Err(GroebnerError::PointNotOnVariety { index: 0 });
    }

    // step 2: homogenize with an auxiliary variable
    let (ext, embed) = extend_vars(&vars, &["h#cone"]);
    let h = ext.index_of("h#cone").unwrap();
    let x_ext: Vec<usize> = x_indices.iter().map(|&i| embed[i].unwrap()).collect();
    let params_ext: Vec<usize> = params.iter().map(|&i| embed[i].unwrap()).collect();
    let mut homogenized = Vec::new();
    for g in &g1 {
        let ge = g.relabel(&ext, &embed).expect("embed");
        let degs: Vec<u32> = ge.terms().map(|(m, _)| m.degree_in(&x_ext)).collect();
        let top = *degs.iter().max().unwrap();
        let terms: Vec<(Monomial, Coefficient)> = ge
            .terms()
            .map(|(m, c)| {
                let d = m.degree_in(&x_ext);
                let mut exps = m.exps().to_vec();
                exps[h] += top - d;
                (Monomial::from_exps(exps), c.clone())
            })
            .collect();
        homogenized.push(Polynomial::from_terms(&ext, domain, terms));
    }

    // step 3: basis with the homogenization variable dominant
    let order = MonomialOrder::blocks(vec![
        (vec![h], SimpleOrder::Lex),
        (x_ext.clone(), SimpleOrder::GrevLex),
        (params_ext.clone(), SimpleOrder::GrevLex),
    ]);
    let g2 = buchberger(&homogenized, &order, budget)?;

    // step 4: dehomogenize and take lowest x-degree forms
    let mut back: Vec<Option<usize>> = vec![None; ext.len()];
    for (i, slot) in embed.iter().enumerate() {
        if let Some(j) = slot {
            back[*j] = Some(i);
        }
    }
    let mut cone = Vec::new();
    for g in &g2 {
        let deh = g.substitute_values(&[(h, domain.one())]);
        let deh = deh.relabel(&vars, &back).expect("no h left");
        if deh.is_zero() {
            continue;
        }
        let min_d = deh.min_degree_in(&x_indices).unwrap();
        let lowest = deh.graded_part(&x_indices, min_d);
        if !cone.contains(&lowest) {
            cone.push(lowest);
        }
    }
    Ok(cone)
}

// ---------------------------------------------------------------------------
// local substitution-elimination
// ---------------------------------------------------------------------------

/// Result of repeatedly solving `v = g` (variable with a constant unit
/// coefficient, absent from the rest of its equation) and substituting.
#[derive(Clone, Debug)]
pub struct LocalPresentation {
    pub vars: Arc<VariableSet>,
    pub params: Vec<usize>,
    /// Remaining equations after all substitutions, zeros dropped.
    pub equations: Vec<Polynomial>,
    /// Substitution trail `v := g`, fully expanded (images contain no
    /// solved variable).
    pub trail: Vec<(usize, Polynomial)>,
}

/// Repeatedly eliminates variables that occur linearly with a constant unit
/// coefficient and nowhere else in their equation. Always terminates,
/// possibly with zero substitutions.
pub fn local_eliminate(gens: &[Polynomial], params: &[usize]) -> LocalPresentation {
    if gens.is_empty() {
        return LocalPresentation {
            vars: VariableSet::simple(&["_"]),
            params: params.to_vec(),
            equations: Vec::new(),
            trail: Vec::new(),
        };
    }
    let vars = Arc::clone(gens[0].vars());
    let domain = gens[0].domain();
    let mut eqs: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut trail: Vec<(usize, Polynomial)> = Vec::new();

    'restart: loop {
        for k in 0..eqs.len() {
            let eq = &eqs[k];
            for v in 0..vars.len() {
                if params.contains(&v) {
                    continue;
                }
                let vmono = Monomial::var(v, vars.len());
                let c = eq.coeff(&vmono);
                if c.is_zero() {
                    continue;
                }
                // v must not occur in any other term
                let occurs_elsewhere = eq.terms().any(|(m, _)| m.exp(v) > 0 && *m != vmono);
                if occurs_elsewhere {
                    continue;
                }
                // solve v = -(eq - c*v)/c
                let rest = eq
                    .sub(&Polynomial::var(&vars, v, domain).scale(&c))
                    .expect("ring");
                let image = rest.scale(&c.inv()).neg();
                let mut next = Vec::with_capacity(eqs.len() - 1);
                for (j, other) in eqs.iter().enumerate() {
                    if j == k {
                        continue;
                    }
                    let substituted = substitute_var(other, v, &image);
                    if !substituted.is_zero() {
                        next.push(substituted);
                    }
                }
                // expand the new image into the existing trail entries
                for (_, g) in trail.iter_mut() {
                    *g = substitute_var(g, v, &image);
                }
                trail.push((v, image));
                eqs = next;
                continue 'restart;
            }
        }
        break;
    }

    LocalPresentation {
        vars,
        params: params.to_vec(),
        equations: eqs,
        trail,
    }
}

/// Substitutes a polynomial for a single variable.
pub fn substitute_var(f: &Polynomial, v: usize, image: &Polynomial) -> Polynomial {
    let vars = f.vars();
    let domain = f.domain();
    let mut out = Polynomial::zero(vars, domain);
    let mut powers: BTreeMap<u32, Polynomial> = BTreeMap::new();
    for (m, c) in f.terms() {
        let e = m.exp(v);
        if e == 0 {
            out.add_term(m.clone(), c.clone());
            continue;
        }
        let mut exps = m.exps().to_vec();
        exps[v] = 0;
        let base = Polynomial::from_terms(vars, domain, [(Monomial::from_exps(exps), c.clone())]);
        let powed = powers.entry(e).or_insert_with(|| image.pow(e)).clone();
        out = out.add(&base.mul(&powed).expect("ring")).expect("ring");
    }
    out
}
