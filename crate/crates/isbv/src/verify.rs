//! The check suite: every claim of a local model becomes one operation
//! returning a structured pass/fail result with a witness.
//!
//! Every pass is certificate-backed: relation checks by exact zero
//! remainders, rank and dimension checks by exact elimination, singular-type
//! checks by exact Gram ranks, enumeration checks by exhaustive counts.
//! Sampled sub-checks label themselves in the witness; nothing probabilistic
//! is reported as a plain pass.

use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Value};

use crate::coeff::{Coefficient, Domain};
use crate::error::GroebnerError;
use crate::ffenum::{self, Ambient, BaseMode, SpecMode, SpecializationTask};
use crate::groebner::{
    extend_vars, finite_staircase, leading_x_monomials, local_eliminate, pseudo_normal_form,
    substitute_var, tangent_cone, Budget,
};
use crate::linalg::{
    graded_piece_dim, monomials_of_degree, ExactMatrix, PolyMatrix, QuadraticForm,
};
use crate::models::{FreenessSetup, LocalModel, SingularityClaim, SingularityKind};
use crate::monomial::Monomial;
use crate::order::{MonomialOrder, SimpleOrder};
use crate::parse::parse_poly;
use crate::poly::Polynomial;
use crate::polymap::PolyMap;
use crate::vars::VariableSet;

/// Fixed order in which checks appear in reports.
pub const CHECK_NAMES: &[&str] = &[
    "relations",
    "span",
    "freeness",
    "flatness",
    "singular",
    "identities",
    "counts",
];

/// Shared configuration for a verification run.
#[derive(Clone, Debug)]
pub struct CheckConfig {
    /// Domain for the symbolic certificates (`Q` by default).
    pub domain: Domain,
    /// Primes for the enumeration oracles.
    pub primes: Vec<u64>,
    pub budget: Budget,
    /// Highest degree for fiber Hilbert values.
    pub dmax: u32,
    pub seed: u64,
    /// Random off-axis base points per prime when a scan is too large to be
    /// exhaustive.
    pub scan_samples: usize,
    /// Sample size for freeness specialization scans at primes above 3.
    pub spec_samples: usize,
    /// Point budget above which smoothness scans restrict the base.
    pub scan_exhaustive_limit: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            domain: Domain::Rational,
            primes: vec![3, 5, 7],
            budget: Budget::default(),
            dmax: 3,
            seed: 1,
            scan_samples: 6,
            spec_samples: 500,
            scan_exhaustive_limit: 3_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl CheckStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
        }
    }
}

/// One check outcome with its witness payload.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub check: String,
    pub model: String,
    pub status: CheckStatus,
    pub witness: Value,
    pub millis: u128,
}

impl CheckResult {
    fn finish(
        check: &str,
        model: &str,
        started: Instant,
        status: CheckStatus,
        witness: Value,
    ) -> CheckResult {
        CheckResult {
            check: check.to_string(),
            model: model.to_string(),
            status,
            witness,
            millis: started.elapsed().as_millis(),
        }
    }
}

/// Runs one named check against a model.
pub fn run_check(model: &LocalModel, check: &str, config: &CheckConfig) -> CheckResult {
    match check {
        "relations" => check_relations(model, config),
        "span" => check_relation_space(model, config),
        "freeness" => check_freeness(model, config),
        "flatness" => check_flatness(model, config),
        "singular" => check_singularities(model, config),
        "identities" => check_identities(model, config),
        "counts" => check_fiber_counts(model, config),
        other => CheckResult {
            check: other.to_string(),
            model: model.name.clone(),
            status: CheckStatus::Fail,
            witness: json!({ "error": format!("unknown check `{}`", other) }),
            millis: 0,
        },
    }
}

fn to_domain(p: &Polynomial, domain: Domain) -> Result<Polynomial, crate::error::AlgebraError> {
    match domain {
        Domain::Rational => Ok(p.clone()),
        Domain::Fp(q) => p.reduce_mod(q),
    }
}

/// Outcome of a verification run: results in registry order (models) and
/// declaration order (checks), plus the overall conjunction.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub results: Vec<CheckResult>,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl VerificationReport {
    pub fn overall_pass(&self, allow_skip: bool) -> bool {
        self.fail == 0 && (allow_skip || self.skipped == 0)
    }
}

/// Runs the selected checks over the selected models on a worker pool.
/// Results are folded back in declaration order, so the report is
/// deterministic regardless of scheduling.
pub fn run_suite(
    models: &[Arc<LocalModel>],
    checks: &[String],
    config: &CheckConfig,
    jobs: usize,
) -> VerificationReport {
    let mut tasks: Vec<(Arc<LocalModel>, String)> = Vec::new();
    for model in models {
        let applicable = model.applicable_checks();
        for &check in CHECK_NAMES {
            if !applicable.contains(&check) {
                continue;
            }
            if !checks.is_empty() && !checks.iter().any(|c| c == check) {
                continue;
            }
            tasks.push((Arc::clone(model), check.to_string()));
        }
    }
    let run_all = |tasks: &[(Arc<LocalModel>, String)]| -> Vec<CheckResult> {
        use rayon::prelude::*;
        tasks
            .par_iter()
            .map(|(model, check)| run_check(model, check, config))
            .collect()
    };
    let results: Vec<CheckResult> = if jobs > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| run_all(&tasks))
    } else {
        run_all(&tasks)
    };
    let pass = results
        .iter()
        .filter(|r| r.status == CheckStatus::Pass)
        .count();
    let fail = results
        .iter()
        .filter(|r| r.status == CheckStatus::Fail)
        .count();
    let skipped = results
        .iter()
        .filter(|r| r.status == CheckStatus::Skipped)
        .count();
    VerificationReport {
        results,
        pass,
        fail,
        skipped,
    }
}

// ---------------------------------------------------------------------------
// relations
// ---------------------------------------------------------------------------

/// Every defining equation must map to exactly zero under the sections.
pub fn check_relations(model: &LocalModel, config: &CheckConfig) -> CheckResult {
    let started = Instant::now();
    let name = "relations";
    let Some(sections) = &model.sections else {
        return CheckResult::finish(
            name,
            &model.name,
            started,
            CheckStatus::Fail,
            json!({ "error": "model has no parametrization" }),
        );
    };
    let mut checked = 0;
    for (i, eq) in model.equations.iter().enumerate() {
        let image = match sections.substitute(eq) {
            Ok(v) => v,
            Err(e) => {
                return CheckResult::finish(
                    name,
                    &model.name,
                    started,
                    CheckStatus::Fail,
                    json!({ "row": i + 1, "error": e.to_string() }),
                );
            }
        };
        let image = match to_domain(&image, config.domain) {
            Ok(v) => v,
            Err(e) => {
                return CheckResult::finish(
                    name,
                    &model.name,
                    started,
                    CheckStatus::Fail,
                    json!({ "row": i + 1, "error": e.to_string() }),
                );
            }
        };
        if !image.is_zero() {
            return CheckResult::finish(
                name,
                &model.name,
                started,
                CheckStatus::Fail,
                json!({ "row": i + 1, "remainder": image.display_text() }),
            );
        }
        checked += 1;
    }
    CheckResult::finish(
        name,
        &model.name,
        started,
        CheckStatus::Pass,
        json!({ "rows": checked, "domain": config.domain.to_string() }),
    )
}

// ---------------------------------------------------------------------------
// relation space
// ---------------------------------------------------------------------------

/// Result of assembling the constrained relation space in one degree.
pub struct RelationSpace {
    /// Dimension of the constrained nullspace over the scalar field (before
    /// localizing the base).
    pub constrained_dim: usize,
    /// Rank of the nullspace viewed over the function field of the base.
    pub generic_dim: usize,
    /// A basis of the constrained nullspace, as polynomials in the model
    /// variables.
    pub basis: Vec<Polynomial>,
    /// Change of basis expressing each stored table row in the computed
    /// basis, when the rows decompose into the constrained shape.
    pub table_coordinates: Option<Vec<Vec<Coefficient>>>,
    pub table_rank: Option<usize>,
    pub table_contained: Option<bool>,
}

/// Builds the space of degree-`d` forms in the projective coordinates with
/// coefficients in the span of the model's base coefficient monomials that
/// vanish on the parametrization.
pub fn relation_space(
    model: &LocalModel,
    degree: u32,
    domain: Domain,
) -> Result<RelationSpace, crate::error::ModelError> {
    use crate::error::ModelError;
    let spec = model
        .relation_space
        .as_ref()
        .ok_or_else(|| ModelError::Schema("model has no relation-space data".into()))?;
    let sections = model
        .sections
        .as_ref()
        .ok_or_else(|| ModelError::Schema("model has no parametrization".into()))?;
    let proj = model.projective_indices();
    let base = model.base_indices();
    let nvars = model.vars.len();

    let betas: Vec<Polynomial> = spec
        .coefficient_monomials
        .iter()
        .map(|m| parse_poly(m, &model.vars, Domain::Rational).map_err(ModelError::Algebra))
        .collect::<Result<_, _>>()?;
    let x_monomials = monomials_of_degree(&proj, degree, nvars);
    // columns: (beta, x-monomial) pairs
    let mut col_polys: Vec<Polynomial> = Vec::new();
    for beta in &betas {
        for m in &x_monomials {
            col_polys.push(beta.mul_monomial(m));
        }
    }
    // substitute each column through the sections and expand over the target
    // monomials
    let images: Vec<Polynomial> = col_polys
        .iter()
        .map(|c| {
            let img = sections.substitute(c).expect("validated sections");
            to_domain(&img, domain).expect("domain reduction")
        })
        .collect();
    let mut row_index: std::collections::BTreeMap<Monomial, usize> = Default::default();
    for img in &images {
        for (m, _) in img.terms() {
            let next = row_index.len();
            row_index.entry(m.clone()).or_insert(next);
        }
    }
    let nrows = row_index.len();
    let mut matrix = ExactMatrix::zero(nrows, images.len(), domain);
    for (j, img) in images.iter().enumerate() {
        for (m, c) in img.terms() {
            matrix.set(row_index[m], j, c.clone());
        }
    }
    let nullspace = matrix.nullspace();
    let constrained_dim = nullspace.len();

    // generic rank: each nullspace vector as a row of base-coefficient
    // polynomials per x-monomial
    let poly_rows: Vec<Vec<Polynomial>> = nullspace
        .iter()
        .map(|v| {
            x_monomials
                .iter()
                .enumerate()
                .map(|(jm, _)| {
                    let mut acc = Polynomial::zero(&model.vars, domain);
                    for (jb, beta) in betas.iter().enumerate() {
                        let c = &v[jb * x_monomials.len() + jm];
                        if !c.is_zero() {
                            let b = to_domain(beta, domain).expect("beta");
                            acc = acc.add(&b.scale(c)).expect("ring");
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let generic_dim = if poly_rows.is_empty() {
        0
    } else {
        PolyMatrix::from_rows(&model.vars, domain, poly_rows).rank()
    };

    // basis polynomials in the model variables
    let basis: Vec<Polynomial> = nullspace
        .iter()
        .map(|v| {
            let mut acc = Polynomial::zero(&model.vars, domain);
            for (jb, beta) in betas.iter().enumerate() {
                for (jm, m) in x_monomials.iter().enumerate() {
                    let c = &v[jb * x_monomials.len() + jm];
                    if !c.is_zero() {
                        let b = to_domain(beta, domain).expect("beta");
                        acc = acc.add(&b.mul_monomial(m).scale(c)).expect("ring");
                    }
                }
            }
            acc
        })
        .collect();

    // decompose table rows (only meaningful in the table's own degree)
    let mut table_coordinates = None;
    let mut table_rank = None;
    let mut table_contained = None;
    if degree == 2 && !model.equations.is_empty() {
        let mut vectors: Vec<Vec<Coefficient>> = Vec::new();
        let mut decomposed = true;
        'rows: for eq in &model.equations {
            let eq = to_domain(eq, domain).expect("domain");
            let mut v = vec![domain.zero(); col_polys.len()];
            for (m, c) in eq.terms() {
                // split into base part and x part
                let mut base_exps = vec![0u32; nvars];
                let mut x_exps = vec![0u32; nvars];
                for (i, &e) in m.exps().iter().enumerate() {
                    if base.contains(&i) {
                        base_exps[i] = e;
                    } else {
                        x_exps[i] = e;
                    }
                }
                let base_mono = Monomial::from_exps(base_exps);
                let x_mono = Monomial::from_exps(x_exps);
                let jb = betas
                    .iter()
                    .position(|b| b.num_terms() == 1 && b.terms().next().unwrap().0 == &base_mono);
                let jm = x_monomials.iter().position(|m2| m2 == &x_mono);
                match (jb, jm) {
                    (Some(jb), Some(jm)) => {
                        v[jb * x_monomials.len() + jm] = c.clone();
                    }
                    _ => {
                        decomposed = false;
                        break 'rows;
                    }
                }
            }
            vectors.push(v);
        }
        if decomposed {
            // containment: M * v = 0 for each row vector
            let contained = vectors
                .iter()
                .all(|v| matrix.mul_vec(v).iter().all(|c| c.is_zero()));
            table_contained = Some(contained);
            let rank = ExactMatrix::from_rows(domain, vectors.clone()).rank();
            table_rank = Some(rank);
            // change of basis: solve (nullspace columns) * a = row
            if !nullspace.is_empty() {
                let cols = ExactMatrix::from_rows(domain, nullspace.clone()).transpose();
                let mut coords = Vec::new();
                let mut ok = true;
                for v in &vectors {
                    match cols.solve(v) {
                        Some(a) => coords.push(a),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    table_coordinates = Some(coords);
                }
            }
        } else {
            table_contained = Some(false);
        }
    }

    Ok(RelationSpace {
        constrained_dim,
        generic_dim,
        basis,
        table_coordinates,
        table_rank,
        table_contained,
    })
}

/// The constrained degree-2 relation space has the expected generic
/// dimension, contains the table rows, and the table rows span it.
pub fn check_relation_space(model: &LocalModel, config: &CheckConfig) -> CheckResult {
    let started = Instant::now();
    let name = "span";
    let spec = match &model.relation_space {
        Some(s) => s,
        None => {
            return CheckResult::finish(
                name,
                &model.name,
                started,
                CheckStatus::Fail,
                json!({ "error": "model has no relation-space data" }),
            );
        }
    };
    let space = match relation_space(model, 2, config.domain) {
        Ok(s) => s,
        Err(e) => {
            return CheckResult::finish(
                name,
                &model.name,
                started,
                CheckStatus::Fail,
                json!({ "error": e.to_string() }),
            );
        }
    };
    let expected = spec.expected_dim;
    let contained = space.table_contained == Some(true);
    let table_rank = space.table_rank.unwrap_or(0);
    let pass = contained && table_rank == expected && space.generic_dim == expected;
    let witness = json!({
        "expected_dim": expected,
        "constrained_dim": space.constrained_dim,
        "generic_dim": space.generic_dim,
        "table_rank": table_rank,
        "table_contained": contained,
        "domain": config.domain.to_string(),
    });
    CheckResult::finish(
        name,
        &model.name,
        started,
        if pass {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        witness,
    )
}

// ---------------------------------------------------------------------------
// freeness
// ---------------------------------------------------------------------------

/// Closure sub-check outcome.
struct ClosureOutcome {
    status: CheckStatus,
    detail: Value,
}

fn freeness_closure(setup: &FreenessSetup, config: &CheckConfig) -> ClosureOutcome {
    let domain = config.domain;
    let vars = &setup.vars;
    let gens: Vec<Polynomial> = match setup.gens.iter().map(|g| to_domain(g, domain)).collect() {
        Ok(v) => v,
        Err(e) => {
            return ClosureOutcome {
                status: CheckStatus::Fail,
                detail: json!({ "error": e.to_string() }),
            }
        }
    };
    let order = MonomialOrder::blocks(vec![
        (setup.mains.clone(), SimpleOrder::GrevLex),
        (setup.params.clone(), SimpleOrder::GrevLex),
    ]);
    // the basis is the expensive object here; go through the cached path
    let ideal = crate::groebner::Ideal::new(vars, domain, gens.clone());
    let gb = match ideal.groebner_basis(&order, &config.budget) {
        Ok(b) => b,
        Err(GroebnerError::BudgetExceeded { steps, limit }) => {
            return ClosureOutcome {
                status: CheckStatus::Skipped,
                detail: json!({ "budget": { "steps": steps, "limit": limit } }),
            }
        }
        Err(e) => {
            return ClosureOutcome {
                status: CheckStatus::Fail,
                detail: json!({ "error": e.to_string() }),
            }
        }
    };
    let gb_prim: Vec<Polynomial> = gb.iter().map(|g| g.primitive_part()).collect();
    let leads = leading_x_monomials(&gb_prim, &setup.mains, &SimpleOrder::GrevLex);
    let stairs = match finite_staircase(&leads, &setup.mains, vars.len()) {
        Some(s) => s,
        None => {
            return ClosureOutcome {
                status: CheckStatus::Fail,
                detail: json!({ "error": "quotient is not finite over the subring fraction field" }),
            }
        }
    };
    if stairs.len() != setup.expected {
        return ClosureOutcome {
            status: CheckStatus::Fail,
            detail: json!({
                "error": "function-field dimension differs from the expected rank",
                "dimension": stairs.len(),
                "expected": setup.expected,
            }),
        };
    }
    // normal forms of the claimed basis
    let mut basis_nf: Vec<(Polynomial, Polynomial)> = Vec::new();
    for b in &setup.basis {
        let b = to_domain(b, domain).expect("basis");
        basis_nf.push(pseudo_normal_form(&b, &gb_prim, &setup.mains));
    }
    let stair_index: std::collections::BTreeMap<&Monomial, usize> =
        stairs.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let coeff_vector = |r: &Polynomial| -> Option<Vec<Polynomial>> {
        let mut v = vec![Polynomial::zero(vars, domain); stairs.len()];
        for (mono, cofactor) in r.collect_by(&setup.mains) {
            match stair_index.get(&mono) {
                Some(&i) => v[i] = cofactor,
                None => return None,
            }
        }
        Some(v)
    };
    let r_cols: Vec<Vec<Polynomial>> = match basis_nf
        .iter()
        .map(|(r, _)| coeff_vector(r))
        .collect::<Option<Vec<_>>>()
    {
        Some(v) => v,
        None => {
            return ClosureOutcome {
                status: CheckStatus::Fail,
                detail: json!({ "error": "basis normal form leaves the staircase span" }),
            }
        }
    };
    let n = stairs.len();
    let r_matrix = PolyMatrix::from_rows(
        vars,
        domain,
        (0..n)
            .map(|i| (0..n).map(|j| r_cols[j][i].clone()).collect())
            .collect(),
    );
    let delta = r_matrix.det();
    if delta.is_zero() {
        return ClosureOutcome {
            status: CheckStatus::Fail,
            detail: json!({ "error": "claimed basis is linearly dependent over the fraction field" }),
        };
    }

    // closure: v * b lies in the subring span of the basis
    let mut products_checked = 0;
    for &v in &setup.mains {
        for (bi, b) in setup.basis.iter().enumerate() {
            let b = to_domain(b, domain).expect("basis");
            let product = Polynomial::var(vars, v, domain).mul(&b).expect("ring");
            let (r, d) = pseudo_normal_form(&product, &gb_prim, &setup.mains);
            let y = match coeff_vector(&r) {
                Some(y) => y,
                None => {
                    return ClosureOutcome {
                        status: CheckStatus::Fail,
                        detail: json!({
                            "error": "product normal form leaves the staircase span",
                            "variable": vars.name(v),
                            "basis_element": setup.basis[bi].display_text(),
                        }),
                    }
                }
            };
            // Cramer: a_j = d_bj * det(R with column j replaced by y) / (d * delta)
            let denominator = d.mul(&delta).expect("ring");
            for j in 0..n {
                let mut rows = Vec::with_capacity(n);
                for i in 0..n {
                    let mut row = Vec::with_capacity(n);
                    for jj in 0..n {
                        row.push(if jj == j {
                            y[i].clone()
                        } else {
                            r_cols[jj][i].clone()
                        });
                    }
                    rows.push(row);
                }
                let det_j = PolyMatrix::from_rows(vars, domain, rows).det();
                let numerator = basis_nf[j].1.mul(&det_j).expect("ring");
                if numerator.is_zero() {
                    continue;
                }
                match numerator.try_div_exact(&denominator) {
                    Some(a) => {
                        // the coefficient must live in the subring
                        if a.multidegree_in(&setup.mains) != Some(0) {
                            return ClosureOutcome {
                                status: CheckStatus::Fail,
                                detail: json!({
                                    "error": "closure coefficient involves main variables",
                                    "variable": vars.name(v),
                                    "basis_element": setup.basis[bi].display_text(),
                                }),
                            };
                        }
                    }
                    None => {
                        return ClosureOutcome {
                            status: CheckStatus::Fail,
                            detail: json!({
                                "error": "closure coefficient has a genuine denominator",
                                "variable": vars.name(v),
                                "basis_element": setup.basis[bi].display_text(),
                                "column": j,
                            }),
                        }
                    }
                }
            }
            products_checked += 1;
        }
    }
    ClosureOutcome {
        status: CheckStatus::Pass,
        detail: json!({
            "staircase": stairs.iter().map(|m| m.render(vars)).collect::<Vec<_>>(),
            "products_checked": products_checked,
            "domain": domain.to_string(),
        }),
    }
}

/// Freeness of the coordinate ring over the claimed subring: symbolic
/// closure over the subring fraction field plus exhaustive / sampled
/// specialization ranks over the scan primes.
pub fn check_freeness(model: &LocalModel, config: &CheckConfig) -> CheckResult {
    let started = Instant::now();
    let name = "freeness";
    let setup = match crate::models::freeness_setup(model) {
        Ok(s) => s,
        Err(e) => {
            return CheckResult::finish(
                name,
                &model.name,
                started,
                CheckStatus::Fail,
                json!({ "error": e.to_string() }),
            );
        }
    };
    let closure = freeness_closure(&setup, config);

    // rank sub-check over every scan prime
    let task = SpecializationTask {
        vars: Arc::clone(&setup.vars),
        gens: setup.gens.clone(),
        mains: setup.mains.clone(),
        params: setup.params.clone(),
        expected: setup.expected,
    };
    let mut rank_reports = Vec::new();
    let mut rank_ok = true;
    for &p in &config.primes {
        let mode = if p == 3 {
            SpecMode::Exhaustive
        } else {
            SpecMode::Sampled {
                n: config.spec_samples,
                seed: config.seed,
            }
        };
        let scan = match ffenum::specialization_scan(&task, p, mode, &config.budget) {
            Ok(s) => s,
            Err(e) => {
                rank_ok = false;
                rank_reports.push(json!({ "prime": p, "error": e.to_string() }));
                continue;
            }
        };
        let total = scan.len();
        let mismatches: Vec<Value> = scan
            .iter()
            .filter(|(_, dim)| *dim != Some(setup.expected))
            .take(8)
            .map(|(pt, dim)| json!({ "point": pt, "dimension": dim }))
            .collect();
        let bad = scan
            .iter()
            .filter(|(_, dim)| *dim != Some(setup.expected))
            .count();
        if bad > 0 {
            rank_ok = false;
        }
        rank_reports.push(json!({
            "prime": p,
            "mode": match mode { SpecMode::Exhaustive => "exhaustive".to_string(), SpecMode::Sampled { n, seed } => format!("sampled({},seed={})", n, seed) },
            "points": total,
            "expected_dimension": setup.expected,
            "mismatches": mismatches,
            "mismatch_count": bad,
        }));
    }

    let status = match (closure.status, rank_ok) {
        (CheckStatus::Pass, true) => CheckStatus::Pass,
        (CheckStatus::Skipped, true) => CheckStatus::Skipped,
        _ => CheckStatus::Fail,
    };
    let witness = json!({
        "closure": closure.detail,
        "closure_status": closure.status.as_str(),
        "specializations": rank_reports,
    });
    CheckResult::finish(name, &model.name, started, status, witness)
}

// ---------------------------------------------------------------------------
// flatness
// ---------------------------------------------------------------------------

/// Generic fiber Hilbert values h(1..dmax) over the function field of the
/// base, via the staircase of a block-order basis.
pub fn generic_hilbert(
    model: &LocalModel,
    dmax: u32,
    domain: Domain,
    budget: &Budget,
) -> Result<Vec<usize>, GroebnerError> {
    let geometry = model.geometry();
    let proj = geometry.projective_indices();
    let base = geometry.base_indices();
    let gens: Vec<Polynomial> = geometry
        .equations
        .iter()
        .map(|e| to_domain(e, domain))
        .collect::<Result<_, _>>()
        .map_err(GroebnerError::Algebra)?;
    let order = MonomialOrder::blocks(vec![
        (proj.clone(), SimpleOrder::GrevLex),
        (base.clone(), SimpleOrder::GrevLex),
    ]);
    let ideal = crate::groebner::Ideal::new(&geometry.vars, domain, gens);
    let gb = ideal.groebner_basis(&order, budget)?;
    let leads = leading_x_monomials(&gb, &proj, &SimpleOrder::GrevLex);
    Ok((1..=dmax)
        .map(|d| crate::groebner::staircase_count_in_degree(&leads, &proj, d, geometry.vars.len()))
        .collect())
}

/// Fiber Hilbert values at a specialized base point.
pub fn fiber_hilbert(
    model: &LocalModel,
    point: &[Coefficient],
    dmax: u32,
) -> Result<Vec<usize>, crate::error::AlgebraError> {
    let geometry = model.geometry();
    let base = geometry.base_indices();
    assert_eq!(point.len(), base.len());
    let domain = if point.is_empty() {
        Domain::Rational
    } else {
        point[0].domain()
    };
    let proj = geometry.projective_indices();
    let assignments: Vec<(usize, Coefficient)> = base
        .iter()
        .zip(point.iter())
        .map(|(&i, c)| (i, c.clone()))
        .collect();
    let gens: Vec<Polynomial> = geometry
        .equations
        .iter()
        .map(|e| Ok(to_domain(e, domain)?.substitute_values(&assignments)))
        .collect::<Result<_, crate::error::AlgebraError>>()?;
    (1..=dmax)
        .map(|d| graded_piece_dim(&gens, &proj, d))
        .collect()
}

/// Enumeration-side survey used when the symbolic generic value is out of
/// budget: Hilbert values at every F_p base point, with a mutual-constancy
/// verdict per prime.
fn flatness_point_survey(model: &LocalModel, config: &CheckConfig) -> Value {
    let geometry = model.geometry();
    let base = geometry.base_indices();
    let mut per_prime = Vec::new();
    for &p in &config.primes {
        let Ok(domain) = Domain::fp(p) else { continue };
        let mut values_seen: Vec<Vec<usize>> = Vec::new();
        let mut count = 0u64;
        let mut current = vec![0u64; base.len()];
        loop {
            let point: Vec<Coefficient> =
                current.iter().map(|&v| domain.from_i64(v as i64)).collect();
            if let Ok(values) = fiber_hilbert(model, &point, config.dmax) {
                count += 1;
                if !values_seen.contains(&values) {
                    values_seen.push(values);
                }
            }
            let mut k = 0;
            loop {
                if k == base.len() {
                    break;
                }
                current[k] += 1;
                if current[k] < p {
                    break;
                }
                current[k] = 0;
                k += 1;
            }
            if k == base.len() {
                break;
            }
        }
        per_prime.push(json!({
            "prime": p,
            "points": count,
            "distinct_value_vectors": values_seen,
            "constant": values_seen.len() == 1,
        }));
    }
    json!(per_prime)
}

/// Fiber Hilbert values are constant: equal to the generic values at every
/// F_p base point for every scan prime, and at every claimed point over the
/// symbolic domain.
pub fn check_flatness(model: &LocalModel, config: &CheckConfig) -> CheckResult {
    let started = Instant::now();
    let name = "flatness";
    let geometry = model.geometry();
    // Hilbert values are graded by a single projective block; component
    // containment claims work for any ambient
    let single_block = geometry.vars.projective_blocks().count() == 1;
    if !single_block && geometry.fibers.iter().any(|f| !f.hilbert.is_empty()) {
        return CheckResult::finish(
            name,
            &model.name,
            started,
            CheckStatus::Fail,
            json!({ "error": "Hilbert value claims need a single projective block" }),
        );
    }
    let generic = if single_block {
        match generic_hilbert(model, config.dmax, config.domain, &config.budget) {
            Ok(v) => v,
            Err(GroebnerError::BudgetExceeded { steps, limit }) => {
                // no silent fallback: the symbolic value is out of reach, so
                // steer to the enumeration oracle and report mutual
                // constancy of the specialized values under a skip
                let oracle = flatness_point_survey(model, config);
                return CheckResult::finish(
                    name,
                    &model.name,
                    started,
                    CheckStatus::Skipped,
                    json!({
                        "budget": { "steps": steps, "limit": limit },
                        "oracle_survey": oracle,
                    }),
                );
            }
            Err(e) => {
                return CheckResult::finish(
                    name,
                    &model.name,
                    started,
                    CheckStatus::Fail,
                    json!({ "error": e.to_string() }),
                );
            }
        }
    } else {
        Vec::new()
    };

    let base = geometry.base_indices();
    let mut mismatches: Vec<Value> = Vec::new();
    let mut points_checked = 0u64;
    let scan_primes: &[u64] = if single_block { &config.primes } else { &[] };
    for &p in scan_primes {
        let domain = match Domain::fp(p) {
            Ok(d) => d,
            Err(e) => {
                return CheckResult::finish(
                    name,
                    &model.name,
                    started,
                    CheckStatus::Fail,
                    json!({ "error": e.to_string() }),
                );
            }
        };
        let mut current = vec![0u64; base.len()];
        loop {
            let point: Vec<Coefficient> =
                current.iter().map(|&v| domain.from_i64(v as i64)).collect();
            match fiber_hilbert(model, &point, config.dmax) {
                Ok(values) => {
                    points_checked += 1;
                    if values != generic {
                        if mismatches.len() < 16 {
                            mismatches.push(json!({
                                "prime": p,
                                "point": current.clone(),
                                "values": values,
                            }));
                        } else {
                            mismatches.push(json!("..."));
                        }
                    }
                }
                Err(e) => {
                    mismatches.push(
                        json!({ "prime": p, "point": current.clone(), "error": e.to_string() }),
                    );
                }
            }
            // odometer
            let mut k = 0;
            loop {
                if k == base.len() {
                    break;
                }
                current[k] += 1;
                if current[k] < p {
                    break;
                }
                current[k] = 0;
                k += 1;
            }
            if k == base.len() {
                break;
            }
        }
    }

    // claimed fibers over the symbolic domain
    let mut claim_reports = Vec::new();
    let mut claims_ok = true;
    for claim in &geometry.fibers {
        if claim.hilbert.is_empty() && claim.components.is_empty() {
            continue;
        }
        let point: Vec<Coefficient> = claim
            .point
            .iter()
            .map(|t| {
                let c = parse_poly(t, &geometry.vars, Domain::Rational).expect("validated");
                c.coeff(&Monomial::one(geometry.vars.len()))
            })
            .collect();
        if !claim.hilbert.is_empty() {
            let dmax = claim.hilbert.len() as u32;
            match fiber_hilbert(model, &point, dmax) {
                Ok(values) => {
                    let ok = values == claim.hilbert;
                    if !ok {
                        claims_ok = false;
                    }
                    claim_reports.push(json!({
                        "point": claim.point,
                        "expected": claim.hilbert,
                        "computed": values,
                        "ok": ok,
                    }));
                }
                Err(e) => {
                    claims_ok = false;
                    claim_reports.push(json!({ "point": claim.point, "error": e.to_string() }));
                }
            }
        }
        // user-supplied candidate components: the fiber ideal must be
        // contained in each candidate
        if !claim.components.is_empty() {
            let assignments: Vec<(usize, Coefficient)> = geometry
                .base_indices()
                .iter()
                .zip(point.iter())
                .map(|(&i, c)| (i, c.clone()))
                .collect();
            let fiber_gens: Vec<Polynomial> = geometry
                .equations
                .iter()
                .map(|e| e.substitute_values(&assignments))
                .collect();
            for comp in &claim.components {
                let gens: Vec<Polynomial> = comp
                    .iter()
                    .map(|g| parse_poly(g, &geometry.vars, Domain::Rational).expect("validated"))
                    .collect();
                let ideal = crate::groebner::Ideal::new(&geometry.vars, Domain::Rational, gens);
                let mut contained = true;
                for f in &fiber_gens {
                    match ideal.member(f, &MonomialOrder::GrevLex, &config.budget) {
                        Ok(true) => {}
                        Ok(false) => {
                            contained = false;
                            break;
                        }
                        Err(e) => {
                            claims_ok = false;
                            claim_reports.push(json!({ "component_error": e.to_string() }));
                            contained = false;
                            break;
                        }
                    }
                }
                if !contained {
                    claims_ok = false;
                }
                claim_reports.push(json!({
                    "point": claim.point,
                    "component": comp,
                    "fiber_ideal_contained": contained,
                }));
            }
        }
    }

    let pass = mismatches.is_empty() && claims_ok;
    let witness = json!({
        "generic": generic,
        "dmax": config.dmax,
        "primes": config.primes,
        "points_checked": points_checked,
        "mismatches": mismatches,
        "claims": claim_reports,
    });
    CheckResult::finish(
        name,
        &model.name,
        started,
        if pass {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        witness,
    )
}

// ---------------------------------------------------------------------------
// singularities
// ---------------------------------------------------------------------------

/// Chart data for one singularity claim: the model equations restricted to
/// the chart, with claim parameters adjoined to the variable set and the
/// claimed point translated to the origin.
struct ChartContext {
    vars: Arc<VariableSet>,
    /// chart equations before translation
    chart_equations: Vec<Polynomial>,
    /// chart equations with the point at the origin
    translated: Vec<Polynomial>,
    params: Vec<usize>,
    /// indices set to one (per projective block)
    ones: Vec<usize>,
    /// point coordinates (index, value polynomial in the parameters)
    point: Vec<(usize, Polynomial)>,
    domain: Domain,
}

fn chart_context(
    geometry: &LocalModel,
    claim: &SingularityClaim,
    domain: Domain,
) -> Result<ChartContext, crate::error::AlgebraError> {
    let params: Vec<&str> = claim.parameters.iter().map(|s| s.as_str()).collect();
    let (ext, embed) = if params.is_empty() {
        (
            Arc::clone(&geometry.vars),
            (0..geometry.vars.len()).map(Some).collect::<Vec<_>>(),
        )
    } else {
        extend_vars(&geometry.vars, &params)
    };
    let param_idx: Vec<usize> = claim
        .parameters
        .iter()
        .map(|p| ext.index_of(p).expect("adjoined"))
        .collect();
    let ones: Vec<usize> = claim
        .chart
        .values()
        .map(|coord| ext.index_of(coord).expect("validated chart"))
        .collect();
    let one = domain.one();
    let mut chart_equations = Vec::new();
    for eq in &geometry.equations {
        let eq = to_domain(eq, domain)?;
        let eq = eq.relabel(&ext, &embed)?;
        let assignments: Vec<(usize, Coefficient)> =
            ones.iter().map(|&i| (i, one.clone())).collect();
        chart_equations.push(eq.substitute_values(&assignments));
    }
    // parse the point and translate it to the origin
    let pvars = if params.is_empty() {
        VariableSet::simple(&["w"])
    } else {
        VariableSet::simple(&params)
    };
    let mut point = Vec::new();
    for (var, expr) in &claim.point {
        let idx = ext.index_of(var).expect("validated point variable");
        let val = parse_poly(expr, &pvars, domain)?;
        // transport into ext
        let map: Vec<Option<usize>> = (0..pvars.len())
            .map(|i| ext.index_of(pvars.name(i)))
            .collect();
        let val = val.relabel(&ext, &map)?;
        point.push((idx, val));
    }
    let mut translated = chart_equations.clone();
    for (idx, val) in &point {
        let shifted = Polynomial::var(&ext, *idx, domain).add(val)?;
        translated = translated
            .iter()
            .map(|e| substitute_var(e, *idx, &shifted))
            .collect();
    }
    Ok(ChartContext {
        vars: ext,
        chart_equations,
        translated,
        params: param_idx,
        ones,
        point,
        domain,
    })
}

impl ChartContext {
    /// The point as a substitution map into the parameter subring.
    fn point_map(&self) -> PolyMap {
        let d = self.domain;
        let mut assignments: Vec<(&str, Polynomial)> = Vec::new();
        for i in 0..self.vars.len() {
            let img = if self.params.contains(&i) {
                Polynomial::var(&self.vars, i, d)
            } else if self.ones.contains(&i) {
                Polynomial::one(&self.vars, d)
            } else if let Some((_, val)) = self.point.iter().find(|(idx, _)| *idx == i) {
                val.clone()
            } else {
                Polynomial::zero(&self.vars, d)
            };
            assignments.push((self.vars.name(i), img));
        }
        PolyMap::new(&self.vars, &self.vars, d, &assignments).expect("point map")
    }

    /// Checks the claimed point lies on the variety.
    fn point_on_variety(&self) -> bool {
        let map = self.point_map();
        self.chart_equations
            .iter()
            .all(|e| map.substitute(e).expect("ring").is_zero())
    }

    /// Jacobian rank of the chart equations at the claimed point, with
    /// respect to the chart variables (everything except the dehomogenized
    /// ones and the parameters).
    fn jacobian_rank_at_point(&self) -> usize {
        let map = self.point_map();
        let cols: Vec<usize> = (0..self.vars.len())
            .filter(|i| !self.ones.contains(i) && !self.params.contains(i))
            .collect();
        let rows: Vec<Vec<Polynomial>> = self
            .chart_equations
            .iter()
            .map(|e| {
                cols.iter()
                    .map(|&v| map.substitute(&e.derivative(v)).expect("ring"))
                    .collect()
            })
            .collect();
        PolyMatrix::from_rows(&self.vars, self.domain, rows).rank()
    }

    fn active_indices(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|i| !self.ones.contains(i) && !self.params.contains(i))
            .collect()
    }
}

fn certify_a1_transverse(
    geometry: &LocalModel,
    claim: &SingularityClaim,
    config: &CheckConfig,
) -> (CheckStatus, Value) {
    let ctx = match chart_context(geometry, claim, config.domain) {
        Ok(c) => c,
        Err(e) => return (CheckStatus::Fail, json!({ "error": e.to_string() })),
    };
    if !ctx.point_on_variety() {
        return (
            CheckStatus::Fail,
            json!({ "error": "claimed point is not on the variety" }),
        );
    }
    let jrank = ctx.jacobian_rank_at_point();
    if jrank != geometry.smooth_rank - 1 {
        return (
            CheckStatus::Fail,
            json!({
                "error": "Jacobian corank at the generic curve point is not 1",
                "rank": jrank,
                "smooth_rank": geometry.smooth_rank,
            }),
        );
    }
    let pres = local_eliminate(&ctx.translated, &ctx.params);
    let cone = match tangent_cone(&pres.equations, &ctx.params, &config.budget) {
        Ok(c) => c,
        Err(GroebnerError::BudgetExceeded { steps, limit }) => {
            return (
                CheckStatus::Skipped,
                json!({ "budget": { "steps": steps, "limit": limit } }),
            );
        }
        Err(e) => return (CheckStatus::Fail, json!({ "error": e.to_string() })),
    };
    let active = ctx.active_indices();
    // the cone must be principal, generated by one quadric of the expected
    // rank
    let quadric = cone
        .iter()
        .find(|c| c.multidegree_in(&active) == Some(2))
        .cloned();
    let Some(q) = quadric else {
        return (
            CheckStatus::Fail,
            json!({
                "error": "tangent cone has no quadric generator",
                "cone": cone.iter().map(|c| c.display_text()).collect::<Vec<_>>(),
            }),
        );
    };
    for c in &cone {
        if c.try_div_exact(&q).is_none() {
            return (
                CheckStatus::Fail,
                json!({
                    "error": "tangent cone is not principal over the curve function field",
                    "cone": cone.iter().map(|c| c.display_text()).collect::<Vec<_>>(),
                }),
            );
        }
    }
    let qrank = match crate::linalg::quadratic_rank(&q, &active) {
        Ok(r) => r,
        Err(e) => return (CheckStatus::Fail, json!({ "error": e.to_string() })),
    };
    let expected = claim.expected_rank.unwrap_or(4);
    if qrank != expected {
        return (
            CheckStatus::Fail,
            json!({
                "error": "transverse quadric rank mismatch",
                "rank": qrank,
                "expected": expected,
                "quadric": q.display_text(),
            }),
        );
    }
    (
        CheckStatus::Pass,
        json!({
            "jacobian_rank": jrank,
            "quadric": q.display_text(),
            "quadratic_rank": qrank,
            "eliminated": pres.trail.len(),
        }),
    )
}

fn certify_d_infinity(
    geometry: &LocalModel,
    claim: &SingularityClaim,
    config: &CheckConfig,
) -> (CheckStatus, Value) {
    let ctx = match chart_context(geometry, claim, config.domain) {
        Ok(c) => c,
        Err(e) => return (CheckStatus::Fail, json!({ "error": e.to_string() })),
    };
    if !ctx.point_on_variety() {
        return (
            CheckStatus::Fail,
            json!({ "error": "claimed point is not on the variety" }),
        );
    }
    let pres = local_eliminate(&ctx.translated, &ctx.params);
    // the presentation must be principal: one equation dividing all others
    let mut candidates: Vec<&Polynomial> = pres.equations.iter().collect();
    candidates.sort_by_key(|e| (e.total_degree().unwrap_or(0), e.num_terms()));
    let generator = candidates
        .iter()
        .find(|e| pres.equations.iter().all(|f| f.try_div_exact(e).is_some()))
        .map(|e| (*e).clone());
    let Some(g) = generator else {
        return (
            CheckStatus::Fail,
            json!({
                "error": "local presentation is not principal",
                "equations": pres.equations.len(),
            }),
        );
    };
    let active = ctx.active_indices();
    let qrank = match crate::linalg::quadratic_rank(&g, &active) {
        Ok(r) => r,
        Err(e) => return (CheckStatus::Fail, json!({ "error": e.to_string() })),
    };
    let expected = claim.expected_rank.unwrap_or(3);
    if qrank != expected {
        return (
            CheckStatus::Fail,
            json!({ "error": "quadratic rank mismatch", "rank": qrank, "expected": expected }),
        );
    }
    // the line coordinate must be a kernel direction of the Gram matrix
    let line = claim.line_coordinate.as_ref().expect("validated");
    let line_idx = ctx.vars.index_of(line).expect("validated");
    let qf = match QuadraticForm::from_poly(&g, &active) {
        Ok(q) => q,
        Err(e) => return (CheckStatus::Fail, json!({ "error": e.to_string() })),
    };
    let line_pos = active
        .iter()
        .position(|&i| i == line_idx)
        .expect("line is active");
    for j in 0..active.len() {
        if !qf.gram.get(line_pos, j).is_zero() {
            return (
                CheckStatus::Fail,
                json!({ "error": "line coordinate is not in the Gram kernel" }),
            );
        }
    }
    // the mixed correction: line coordinate times the square of a defect
    // direction must appear with a nonzero coefficient
    let mut mixed_report = json!(null);
    if let Some(mono_text) = &claim.mixed_monomial {
        let mono = match parse_poly(mono_text, &ctx.vars, ctx.domain) {
            Ok(m) => m,
            Err(e) => return (CheckStatus::Fail, json!({ "error": e.to_string() })),
        };
        let (mexp, _) = mono.terms().next().expect("monomial");
        // structural shape: line^a * defect^2 with the defect in the kernel
        let mut defect = None;
        let mut shape_ok = mexp.exp(line_idx) >= 1;
        for (i, &e) in mexp.exps().iter().enumerate() {
            if i == line_idx || e == 0 {
                continue;
            }
            if e == 2 && defect.is_none() {
                defect = Some(i);
            } else {
                shape_ok = false;
            }
        }
        let Some(defect_idx) = defect else {
            return (
                CheckStatus::Fail,
                json!({ "error": "mixed monomial is not line * defect^2", "monomial": mono_text }),
            );
        };
        if !shape_ok {
            return (
                CheckStatus::Fail,
                json!({ "error": "mixed monomial is not line * defect^2", "monomial": mono_text }),
            );
        }
        let defect_pos = active
            .iter()
            .position(|&i| i == defect_idx)
            .expect("active");
        for j in 0..active.len() {
            if !qf.gram.get(defect_pos, j).is_zero() {
                return (
                    CheckStatus::Fail,
                    json!({ "error": "defect direction is not in the Gram kernel" }),
                );
            }
        }
        let coeff = g.coeff(mexp);
        if coeff.is_zero() {
            return (
                CheckStatus::Fail,
                json!({
                    "error": "mixed correction term missing from the local equation",
                    "monomial": mono_text,
                    "equation": g.display_text(),
                }),
            );
        }
        mixed_report = json!({ "monomial": mono_text, "coefficient": coeff.to_string() });
    }
    // Jacobian corank 1 along the line: adjoin a parameter for the line
    // coordinate
    let line_claim = SingularityClaim {
        kind: claim.kind,
        label: claim.label.clone(),
        chart: claim.chart.clone(),
        parameters: vec!["wline0".to_string()],
        point: {
            let mut p = claim.point.clone();
            p.insert(line.clone(), "wline0".to_string());
            p
        },
        locus: claim.locus.clone(),
        expected_rank: claim.expected_rank,
        line_coordinate: None,
        mixed_monomial: None,
        chart_equation: None,
    };
    let line_ctx = match chart_context(geometry, &line_claim, config.domain) {
        Ok(c) => c,
        Err(e) => return (CheckStatus::Fail, json!({ "error": e.to_string() })),
    };
    if !line_ctx.point_on_variety() {
        return (
            CheckStatus::Fail,
            json!({ "error": "claimed line is not on the variety" }),
        );
    }
    let line_rank = line_ctx.jacobian_rank_at_point();
    if line_rank != geometry.smooth_rank - 1 {
        return (
            CheckStatus::Fail,
            json!({
                "error": "Jacobian rank along the line is not deficient by exactly 1",
                "rank": line_rank,
                "smooth_rank": geometry.smooth_rank,
            }),
        );
    }
    (
        CheckStatus::Pass,
        json!({
            "local_equation": g.display_text(),
            "quadratic_rank": qrank,
            "mixed": mixed_report,
            "line_jacobian_rank": line_rank,
        }),
    )
}

fn certify_toric_chart(
    geometry: &LocalModel,
    claim: &SingularityClaim,
    config: &CheckConfig,
) -> (CheckStatus, Value) {
    let ctx = match chart_context(geometry, claim, config.domain) {
        Ok(c) => c,
        Err(e) => return (CheckStatus::Fail, json!({ "error": e.to_string() })),
    };
    let pres = local_eliminate(&ctx.translated, &ctx.params);
    if pres.equations.len() != 1 {
        return (
            CheckStatus::Fail,
            json!({
                "error": "chart elimination did not produce a single equation",
                "count": pres.equations.len(),
            }),
        );
    }
    let eliminated = &pres.equations[0];
    let expected_text = claim.chart_equation.as_ref().expect("validated");
    let expected = match parse_poly(expected_text, &ctx.vars, ctx.domain) {
        Ok(p) => p,
        Err(e) => return (CheckStatus::Fail, json!({ "error": e.to_string() })),
    };
    // principal ideal equality both ways: each divides the other, and the
    // quotients are units (constants)
    let q1 = eliminated.try_div_exact(&expected);
    let q2 = expected.try_div_exact(eliminated);
    let scale_ok = match (&q1, &q2) {
        (Some(a), Some(b)) => a.total_degree() == Some(0) && b.total_degree() == Some(0),
        _ => false,
    };
    if !scale_ok {
        return (
            CheckStatus::Fail,
            json!({
                "error": "eliminated equation does not match the expected chart equation",
                "eliminated": eliminated.display_text(),
                "expected": expected_text,
            }),
        );
    }
    (
        CheckStatus::Pass,
        json!({
            "eliminated": eliminated.display_text(),
            "scale": q1.unwrap().display_text(),
        }),
    )
}

fn certify_smooth_total_space(geometry: &LocalModel, config: &CheckConfig) -> (CheckStatus, Value) {
    // symbolic generic smoothness: some codim-size minor of the Jacobian is
    // nonzero modulo the ideal
    let codim = geometry.equations.len();
    let gens: Vec<Polynomial> = match geometry
        .equations
        .iter()
        .map(|e| to_domain(e, config.domain))
        .collect::<Result<_, _>>()
    {
        Ok(v) => v,
        Err(e) => return (CheckStatus::Fail, json!({ "error": e.to_string() })),
    };
    let vars = &geometry.vars;
    let nvars = vars.len();
    let jac: Vec<Vec<Polynomial>> = gens
        .iter()
        .map(|e| (0..nvars).map(|v| e.derivative(v)).collect())
        .collect();
    let ideal = crate::groebner::Ideal::new(vars, config.domain, gens.clone());
    // search minors in deterministic column order
    let cols: Vec<usize> = (0..nvars).collect();
    let mut found: Option<Vec<usize>> = None;
    let mut chosen = vec![0usize; codim];
    fn search(
        start: usize,
        depth: usize,
        codim: usize,
        cols: &[usize],
        chosen: &mut Vec<usize>,
        jac: &[Vec<Polynomial>],
        vars: &Arc<VariableSet>,
        domain: Domain,
        ideal: &crate::groebner::Ideal,
        budget: &Budget,
        found: &mut Option<Vec<usize>>,
    ) {
        if found.is_some() {
            return;
        }
        if depth == codim {
            let rows: Vec<Vec<Polynomial>> = (0..codim)
                .map(|r| chosen.iter().map(|&c| jac[r][c].clone()).collect())
                .collect();
            let det = PolyMatrix::from_rows(vars, domain, rows).det();
            if det.is_zero() {
                return;
            }
            if let Ok(false) = ideal.member(&det, &MonomialOrder::GrevLex, budget) {
                *found = Some(chosen.clone());
            }
            return;
        }
        for k in start..cols.len() {
            chosen[depth] = cols[k];
            search(
                k + 1,
                depth + 1,
                codim,
                cols,
                chosen,
                jac,
                vars,
                domain,
                ideal,
                budget,
                found,
            );
            if found.is_some() {
                return;
            }
        }
    }
    search(
        0,
        0,
        codim,
        &cols,
        &mut chosen,
        &jac,
        vars,
        config.domain,
        &ideal,
        &config.budget,
        &mut found,
    );
    match found {
        Some(minor_cols) => (
            CheckStatus::Pass,
            json!({
                "codim": codim,
                "witness_minor_columns": minor_cols
                    .iter()
                    .map(|&c| vars.name(c).to_string())
                    .collect::<Vec<_>>(),
            }),
        ),
        None => (
            CheckStatus::Fail,
            json!({ "error": "no Jacobian minor certifies generic smoothness" }),
        ),
    }
}

/// Scan mode for a smoothness scan at one prime, sized by the configured
/// exhaustiveness limit.
fn scan_mode(geometry: &LocalModel, p: u64, config: &CheckConfig) -> BaseMode {
    let ambient = Ambient::of_model(geometry);
    let base_count = (p as u128).pow(ambient.base.len() as u32);
    let total = base_count.saturating_mul(ambient.fiber_count(p) as u128);
    if total > config.scan_exhaustive_limit as u128 {
        BaseMode::DivisorAxesPlusSample {
            samples: config.scan_samples,
            seed: config.seed,
        }
    } else {
        BaseMode::Exhaustive
    }
}

/// All singularity claims hold and the enumeration scans find the singular
/// set equal to the union of the claimed loci.
pub fn check_singularities(model: &LocalModel, config: &CheckConfig) -> CheckResult {
    let started = Instant::now();
    let name = "singular";
    let geometry = model.geometry();
    if geometry.singularities.is_empty() {
        return CheckResult::finish(
            name,
            &model.name,
            started,
            CheckStatus::Fail,
            json!({ "error": "model carries no singularity claims" }),
        );
    }
    let mut claims = Vec::new();
    let mut any_fail = false;
    let mut any_skip = false;
    for claim in &geometry.singularities {
        let (status, detail) = match claim.kind {
            SingularityKind::A1Transverse => certify_a1_transverse(geometry, claim, config),
            SingularityKind::DInfinity => certify_d_infinity(geometry, claim, config),
            SingularityKind::ToricChartIdentity => certify_toric_chart(geometry, claim, config),
            SingularityKind::SmoothTotalSpace => certify_smooth_total_space(geometry, config),
        };
        match status {
            CheckStatus::Fail => any_fail = true,
            CheckStatus::Skipped => any_skip = true,
            CheckStatus::Pass => {}
        }
        claims.push(json!({
            "label": claim.label,
            "kind": claim.kind.as_str(),
            "status": status.as_str(),
            "detail": detail,
        }));
    }

    // enumeration scans: singular set must equal the union of claimed loci
    let smooth_expected = geometry
        .singularities
        .iter()
        .all(|c| c.kind == SingularityKind::SmoothTotalSpace);
    let mut scans = Vec::new();
    for &p in &config.primes {
        let mode = scan_mode(geometry, p, config);
        match ffenum::smoothness_scan(geometry, p, mode) {
            Ok(scan) => {
                let off_locus: Vec<&ffenum::SingularPoint> = scan
                    .singular_points
                    .iter()
                    .filter(|sp| !sp.on_claimed_locus)
                    .collect();
                let ok = if smooth_expected {
                    scan.singular_count == 0
                } else {
                    off_locus.is_empty() && scan.on_locus_smooth_count == 0
                };
                if !ok {
                    any_fail = true;
                }
                scans.push(json!({
                    "prime": p,
                    "mode": scan.base_mode,
                    "points_examined": scan.points_examined,
                    "points_on_variety": scan.points_on_variety,
                    "singular_count": scan.singular_count,
                    "off_locus_singular": off_locus.len(),
                    "on_locus_smooth": scan.on_locus_smooth_count,
                    "ok": ok,
                    "sample_off_locus": off_locus
                        .iter()
                        .take(4)
                        .map(|sp| json!({ "coords": sp.coords, "rank": sp.jacobian_rank }))
                        .collect::<Vec<_>>(),
                }));
            }
            Err(e) => {
                any_fail = true;
                scans.push(json!({ "prime": p, "error": e.to_string() }));
            }
        }
    }

    let status = if any_fail {
        CheckStatus::Fail
    } else if any_skip {
        CheckStatus::Skipped
    } else {
        CheckStatus::Pass
    };
    CheckResult::finish(
        name,
        &model.name,
        started,
        status,
        json!({ "claims": claims, "scans": scans }),
    )
}

// ---------------------------------------------------------------------------
// identities
// ---------------------------------------------------------------------------

/// Componentwise equality of the two map compositions up to the declared
/// scaling, plus the declared pullback vanishings.
pub fn check_identities(model: &LocalModel, config: &CheckConfig) -> CheckResult {
    let started = Instant::now();
    let name = "identities";
    if model.identities.is_empty() {
        return CheckResult::finish(
            name,
            &model.name,
            started,
            CheckStatus::Fail,
            json!({ "error": "model carries no identity claims" }),
        );
    }
    let domain = config.domain;
    let mut reports = Vec::new();
    let mut all_ok = true;
    for claim in &model.identities {
        let ivars_refs: Vec<&str> = claim.inner_vars.iter().map(|s| s.as_str()).collect();
        let ivars = VariableSet::simple(&ivars_refs);
        let inner_images: Vec<Polynomial> = claim
            .inner
            .iter()
            .map(|t| {
                to_domain(
                    &parse_poly(t, &model.vars, Domain::Rational).expect("validated"),
                    domain,
                )
                .expect("domain")
            })
            .collect();
        let assignments: Vec<(&str, Polynomial)> = claim
            .inner_vars
            .iter()
            .map(|s| s.as_str())
            .zip(inner_images.iter().cloned())
            .collect();
        let inner_map = PolyMap::new(&ivars, &model.vars, domain, &assignments).expect("validated");
        let scale = to_domain(
            &parse_poly(&claim.scale, &model.vars, Domain::Rational).expect("validated"),
            domain,
        )
        .expect("domain");
        let mut components = Vec::new();
        let mut claim_ok = true;
        for (j, (outer_t, rhs_t)) in claim.outer.iter().zip(claim.rhs.iter()).enumerate() {
            let outer = parse_poly(outer_t, &ivars, domain).expect("validated");
            let lhs = inner_map.substitute(&outer).expect("ring");
            let rhs = to_domain(
                &parse_poly(rhs_t, &model.vars, Domain::Rational).expect("validated"),
                domain,
            )
            .expect("domain");
            let scaled = rhs.mul(&scale).expect("ring");
            let diff = lhs.sub(&scaled).expect("ring");
            if !diff.is_zero() {
                claim_ok = false;
                components.push(json!({
                    "component": j,
                    "residual": diff.display_text(),
                }));
            }
        }
        let mut pullbacks = Vec::new();
        for pb in &claim.pullbacks {
            let evars_refs: Vec<&str> = pb.equation_vars.iter().map(|s| s.as_str()).collect();
            let evars = VariableSet::simple(&evars_refs);
            let eq = parse_poly(&pb.equation, &evars, domain).expect("validated");
            let images: Vec<(&str, Polynomial)> = pb
                .equation_vars
                .iter()
                .map(|s| s.as_str())
                .zip(pb.images.iter().map(|t| {
                    to_domain(
                        &parse_poly(t, &model.vars, Domain::Rational).expect("validated"),
                        domain,
                    )
                    .expect("domain")
                }))
                .collect();
            let map = PolyMap::new(&evars, &model.vars, domain, &images).expect("validated");
            let image = map.substitute(&eq).expect("ring");
            let ok = image.is_zero();
            if !ok {
                claim_ok = false;
            }
            pullbacks.push(json!({
                "equation": pb.equation,
                "vanishes": ok,
                "residual": if ok { json!(null) } else { json!(image.display_text()) },
            }));
        }
        if !claim_ok {
            all_ok = false;
        }
        reports.push(json!({
            "label": claim.label,
            "components": claim.outer.len(),
            "failures": components,
            "pullbacks": pullbacks,
            "ok": claim_ok,
        }));
    }
    CheckResult::finish(
        name,
        &model.name,
        started,
        if all_ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        json!({ "identities": reports, "domain": domain.to_string() }),
    )
}

// ---------------------------------------------------------------------------
// fiber counts
// ---------------------------------------------------------------------------

/// Exhaustive fiber point counts equal the claimed closed forms in p.
pub fn check_fiber_counts(model: &LocalModel, config: &CheckConfig) -> CheckResult {
    let started = Instant::now();
    let name = "counts";
    let geometry = model.geometry();
    let claims: Vec<&crate::models::FiberClaim> = geometry
        .fibers
        .iter()
        .filter(|f| f.counts.is_some())
        .collect();
    if claims.is_empty() {
        return CheckResult::finish(
            name,
            &model.name,
            started,
            CheckStatus::Fail,
            json!({ "error": "model carries no fiber count claims" }),
        );
    }
    let ambient = Ambient::of_model(geometry);
    let pvars = VariableSet::simple(&["p"]);
    let mut reports = Vec::new();
    let mut all_ok = true;
    for claim in &claims {
        let counts_poly = parse_poly(claim.counts.as_ref().unwrap(), &pvars, Domain::Rational)
            .expect("validated");
        for &p in &config.primes {
            let domain = Domain::Rational;
            let point_vals: Vec<u64> = claim
                .point
                .iter()
                .map(|t| {
                    let c = parse_poly(t, &geometry.vars, domain).expect("validated");
                    let r = c.coeff(&Monomial::one(geometry.vars.len()));
                    match r.reduce_mod(p).expect("integer point") {
                        Coefficient::Fp { val, .. } => val,
                        _ => unreachable!(),
                    }
                })
                .collect();
            let scan =
                match ffenum::enumerate_points(&geometry.equations, &ambient, p, Some(&point_vals))
                {
                    Ok(s) => s,
                    Err(e) => {
                        all_ok = false;
                        reports.push(
                            json!({ "point": claim.point, "prime": p, "error": e.to_string() }),
                        );
                        continue;
                    }
                };
            let expected_val = counts_poly.eval(&[Coefficient::Rational(
                num_rational::BigRational::from(num_bigint::BigInt::from(p)),
            )]);
            let expected: u64 = match &expected_val {
                Coefficient::Rational(r) if r.is_integer() => {
                    let digits = r.numer().to_u64_digits().1;
                    if digits.is_empty() {
                        0
                    } else {
                        digits[0]
                    }
                }
                _ => {
                    all_ok = false;
                    reports.push(json!({ "point": claim.point, "prime": p, "error": "count form not integral" }));
                    continue;
                }
            };
            let ok = scan.points_on_variety == expected;
            if !ok {
                all_ok = false;
            }
            reports.push(json!({
                "point": claim.point,
                "prime": p,
                "count": scan.points_on_variety,
                "expected": expected,
                "ok": ok,
            }));
        }
    }
    CheckResult::finish(
        name,
        &model.name,
        started,
        if all_ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        json!({ "claims": reports }),
    )
}
