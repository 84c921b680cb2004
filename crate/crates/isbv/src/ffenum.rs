//! Finite-field brute-force oracle: exhaustive point enumeration over `F_p`
//! for smoothness scans, fiber counts, and freeness specialization scans.
//!
//! Every symbolic certificate in the crate has one of these scans as its
//! independent cross-check. Points of a product of projective blocks are
//! enumerated through normalized representatives (first nonzero coordinate
//! of each block equal to 1), so each rational point is visited exactly
//! once. Jacobian ranks come from precompiled symbolic partial derivatives,
//! never finite differences.

use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::coeff::{mulmod, Domain};
use crate::error::{AlgebraError, GroebnerError};
use crate::groebner::{buchberger, finite_staircase, leading_x_monomials, Budget};
use crate::models::LocalModel;
use crate::order::{MonomialOrder, SimpleOrder};
use crate::poly::Polynomial;
use crate::vars::VariableSet;

/// Number of rational points of projective space of the given dimension.
pub fn projective_count(dim: usize, p: u64) -> u64 {
    let mut total = 0u64;
    let mut power = 1u64;
    for _ in 0..=dim {
        total += power;
        power *= p;
    }
    total
}

/// The product structure of a model's ambient space.
#[derive(Clone, Debug)]
pub struct Ambient {
    pub nvars: usize,
    pub base: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
}

impl Ambient {
    pub fn of_model(m: &LocalModel) -> Ambient {
        Ambient {
            nvars: m.vars.len(),
            base: m.base_indices(),
            blocks: m
                .vars
                .projective_blocks()
                .map(|b| b.indices.clone())
                .collect(),
        }
    }

    /// Rational points of one fiber (product of the projective blocks).
    pub fn fiber_count(&self, p: u64) -> u64 {
        self.blocks
            .iter()
            .map(|b| projective_count(b.len() - 1, p))
            .product()
    }
}

/// A polynomial compiled to flat terms for fast evaluation mod p.
struct Compiled {
    terms: Vec<(u64, Vec<(usize, u32)>)>,
}

impl Compiled {
    fn new(f: &Polynomial, p: u64) -> Result<Compiled, AlgebraError> {
        let reduced = f.reduce_mod(p)?;
        let mut terms = Vec::new();
        for (m, c) in reduced.terms() {
            let coeff = match c {
                crate::coeff::Coefficient::Fp { val, .. } => *val,
                _ => unreachable!("reduced mod p"),
            };
            let factors: Vec<(usize, u32)> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (i, e))
                .collect();
            terms.push((coeff, factors));
        }
        Ok(Compiled { terms })
    }

    #[inline]
    fn eval(&self, point: &[u64], p: u64) -> u64 {
        let mut acc = 0u64;
        for (c, factors) in &self.terms {
            let mut t = *c;
            for &(v, e) in factors {
                let mut b = point[v];
                if e > 1 {
                    let mut out = b;
                    for _ in 1..e {
                        out = mulmod(out, b, p);
                    }
                    b = out;
                }
                t = mulmod(t, b, p);
                if t == 0 {
                    break;
                }
            }
            acc = (acc + t) % p;
        }
        acc
    }
}

/// Writes the `k`-th normalized representative of a projective block with
/// `ncoords` coordinates into `out` (first nonzero coordinate is 1).
fn decode_rep(mut k: u64, ncoords: usize, p: u64, out: &mut [u64]) {
    // leading-one position l contributes p^(ncoords-1-l) representatives
    let mut l = 0;
    loop {
        let chunk = p.pow((ncoords - 1 - l) as u32);
        if k < chunk {
            break;
        }
        k -= chunk;
        l += 1;
    }
    for slot in out.iter_mut().take(l) {
        *slot = 0;
    }
    out[l] = 1;
    for i in (l + 1)..ncoords {
        out[i] = k % p;
        k /= p;
    }
}

/// Rank of a small matrix over `F_p` (consumes the rows).
fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let pivot = (row..nrows).find(|&r| rows[r][col] % p != 0);
        let Some(pr) = pivot else { continue };
        rows.swap(row, pr);
        let inv = crate::coeff::invmod(rows[row][col] % p, p);
        for r in (row + 1)..nrows {
            let factor = mulmod(rows[r][col] % p, inv, p);
            if factor != 0 {
                for c in col..ncols {
                    let sub = mulmod(factor, rows[row][c] % p, p);
                    rows[r][c] = (rows[r][c] + p - sub) % p;
                }
            }
        }
        rank += 1;
        row += 1;
    }
    rank
}

/// How base points are chosen for a scan.
#[derive(Clone, Copy, Debug)]
pub enum BaseMode {
    /// All of F_p^(base dimension).
    Exhaustive,
    /// All base points on a divisor axis (some coordinate zero), plus a
    /// seeded random sample of the rest.
    DivisorAxesPlusSample { samples: usize, seed: u64 },
}

/// One singular rational point found by a scan.
#[derive(Clone, Debug)]
pub struct SingularPoint {
    pub coords: Vec<u64>,
    pub jacobian_rank: usize,
    pub on_claimed_locus: bool,
}

/// Outcome of one enumeration or smoothness scan.
#[derive(Clone, Debug)]
pub struct ScanResult {
    pub prime: u64,
    pub base_points: u64,
    pub points_examined: u64,
    pub points_on_variety: u64,
    /// Singular points found (Jacobian rank below the model's smooth rank);
    /// truncated to a bounded list, with the full count alongside.
    pub singular_points: Vec<SingularPoint>,
    pub singular_count: u64,
    /// Points on a claimed singular locus (and on the variety) that the
    /// Jacobian criterion nevertheless reports as smooth.
    pub on_locus_smooth_count: u64,
    pub base_mode: String,
    pub millis: u128,
}

const MAX_STORED_POINTS: usize = 256;

fn base_point_list(
    base_dim: usize,
    p: u64,
    mode: BaseMode,
    fixed: Option<&[u64]>,
) -> (Vec<Vec<u64>>, String) {
    if let Some(fix) = fixed {
        assert_eq!(fix.len(), base_dim);
        return (vec![fix.to_vec()], format!("fixed({:?})", fix));
    }
    let mut all: Vec<Vec<u64>> = Vec::new();
    let mut current = vec![0u64; base_dim];
    loop {
        all.push(current.clone());
        let mut k = 0;
        loop {
            if k == base_dim {
                break;
            }
            current[k] += 1;
            if current[k] < p {
                break;
            }
            current[k] = 0;
            k += 1;
        }
        if k == base_dim {
            break;
        }
    }
    match mode {
        BaseMode::Exhaustive => (all, "exhaustive".to_string()),
        BaseMode::DivisorAxesPlusSample { samples, seed } => {
            let (axes, interior): (Vec<Vec<u64>>, Vec<Vec<u64>>) =
                all.into_iter().partition(|pt| pt.iter().any(|&c| c == 0));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut sample: Vec<Vec<u64>> = interior
                .choose_multiple(&mut rng, samples)
                .cloned()
                .collect();
            sample.sort();
            let mut out = axes;
            let desc = format!("axes+sample({},seed={})", sample.len(), seed);
            out.extend(sample);
            (out, desc)
        }
    }
}

/// Exhaustively counts rational points of the equation system over the given
/// ambient, optionally with the base coordinates fixed.
pub fn enumerate_points(
    equations: &[Polynomial],
    ambient: &Ambient,
    p: u64,
    base_fix: Option<&[u64]>,
) -> Result<ScanResult, AlgebraError> {
    Domain::fp(p)?;
    let start = Instant::now();
    let compiled: Vec<Compiled> = equations
        .iter()
        .map(|e| Compiled::new(e, p))
        .collect::<Result<_, _>>()?;
    let (bases, mode_desc) = base_point_list(ambient.base.len(), p, BaseMode::Exhaustive, base_fix);
    let fiber = ambient.fiber_count(p);

    let per_base: Vec<(u64, u64)> = bases
        .par_iter()
        .map(|base| {
            let mut point = vec![0u64; ambient.nvars];
            for (k, &i) in ambient.base.iter().enumerate() {
                point[i] = base[k];
            }
            let mut examined = 0u64;
            let mut on_variety = 0u64;
            scan_fibers(&compiled, ambient, p, &mut point, &mut |pt, compiled| {
                examined += 1;
                if compiled.iter().all(|c| c.eval(pt, p) == 0) {
                    on_variety += 1;
                }
            });
            debug_assert_eq!(examined, fiber);
            (examined, on_variety)
        })
        .collect();

    let points_examined: u64 = per_base.iter().map(|(e, _)| e).sum();
    let points_on_variety: u64 = per_base.iter().map(|(_, v)| v).sum();
    Ok(ScanResult {
        prime: p,
        base_points: bases.len() as u64,
        points_examined,
        points_on_variety,
        singular_points: Vec::new(),
        singular_count: 0,
        on_locus_smooth_count: 0,
        base_mode: mode_desc,
        millis: start.elapsed().as_millis(),
    })
}

/// Iterates all normalized fiber points over a fixed base, invoking the
/// callback with the full coordinate vector.
fn scan_fibers(
    compiled: &[Compiled],
    ambient: &Ambient,
    p: u64,
    point: &mut [u64],
    visit: &mut impl FnMut(&[u64], &[Compiled]),
) {
    fn rec(
        blocks: &[Vec<usize>],
        depth: usize,
        p: u64,
        point: &mut [u64],
        compiled: &[Compiled],
        visit: &mut impl FnMut(&[u64], &[Compiled]),
    ) {
        if depth == blocks.len() {
            visit(point, compiled);
            return;
        }
        let idxs = &blocks[depth];
        let n = idxs.len();
        let count = projective_count(n - 1, p);
        let mut rep = vec![0u64; n];
        for k in 0..count {
            decode_rep(k, n, p, &mut rep);
            for (slot, &i) in rep.iter().zip(idxs.iter()) {
                point[i] = *slot;
            }
            rec(blocks, depth + 1, p, point, compiled, visit);
        }
    }
    rec(&ambient.blocks, 0, p, point, compiled, visit);
}

/// Exhaustive smoothness scan of a model over `F_p`.
///
/// For every rational point on the variety the Jacobian rank (with respect
/// to the base coordinates and the dehomogenized chart coordinates of each
/// block) is compared against the model's smooth rank. Points below it are
/// returned, each tagged with membership in the union of the claimed
/// singular loci; points on a claimed locus that are *not* singular are
/// counted as well, so scan consumers can certify set equality.
pub fn smoothness_scan(
    model: &LocalModel,
    p: u64,
    mode: BaseMode,
) -> Result<ScanResult, AlgebraError> {
    Domain::fp(p)?;
    let start = Instant::now();
    let ambient = Ambient::of_model(model);
    let compiled: Vec<Compiled> = model
        .equations
        .iter()
        .map(|e| Compiled::new(e, p))
        .collect::<Result<_, _>>()?;
    // symbolic partials, compiled once per model
    let jacobian: Vec<Vec<Compiled>> = model
        .equations
        .iter()
        .map(|e| {
            (0..ambient.nvars)
                .map(|v| Compiled::new(&e.derivative(v), p))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    // claimed singular loci (union over claims)
    let locus_sets: Vec<Vec<Compiled>> = model
        .singularities
        .iter()
        .filter(|c| !c.locus.is_empty())
        .map(|c| {
            c.locus
                .iter()
                .map(|g| {
                    let poly = crate::parse::parse_poly(g, &model.vars, Domain::Rational)
                        .expect("locus validated at load");
                    Compiled::new(&poly, p)
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;

    let (bases, mode_desc) = base_point_list(ambient.base.len(), p, mode, None);
    let smooth_rank = model.smooth_rank;

    struct Partial {
        examined: u64,
        on_variety: u64,
        singular: Vec<SingularPoint>,
        singular_count: u64,
        on_locus_smooth: u64,
    }

    let per_base: Vec<Partial> = bases
        .par_iter()
        .map(|base| {
            let mut point = vec![0u64; ambient.nvars];
            for (k, &i) in ambient.base.iter().enumerate() {
                point[i] = base[k];
            }
            let mut out = Partial {
                examined: 0,
                on_variety: 0,
                singular: Vec::new(),
                singular_count: 0,
                on_locus_smooth: 0,
            };
            scan_fibers(&compiled, &ambient, p, &mut point, &mut |pt, compiled| {
                out.examined += 1;
                if !compiled.iter().all(|c| c.eval(pt, p) == 0) {
                    return;
                }
                out.on_variety += 1;
                // chart columns: base coordinates plus non-pivot block
                // coordinates (pivot = leading 1 of the normalized rep)
                let mut cols: Vec<usize> = ambient.base.clone();
                for blk in &ambient.blocks {
                    let pivot = blk
                        .iter()
                        .position(|&i| pt[i] != 0)
                        .expect("projective point");
                    for (j, &i) in blk.iter().enumerate() {
                        if j != pivot {
                            cols.push(i);
                        }
                    }
                }
                let rows: Vec<Vec<u64>> = jacobian
                    .iter()
                    .map(|drow| cols.iter().map(|&v| drow[v].eval(pt, p)).collect())
                    .collect();
                let rank = rank_mod_p(rows, p);
                let on_locus = locus_sets
                    .iter()
                    .any(|gens| gens.iter().all(|g| g.eval(pt, p) == 0));
                if rank < smooth_rank {
                    out.singular_count += 1;
                    if out.singular.len() < MAX_STORED_POINTS {
                        out.singular.push(SingularPoint {
                            coords: pt.to_vec(),
                            jacobian_rank: rank,
                            on_claimed_locus: on_locus,
                        });
                    }
                } else if on_locus {
                    out.on_locus_smooth += 1;
                }
            });
            out
        })
        .collect();

    let mut result = ScanResult {
        prime: p,
        base_points: bases.len() as u64,
        points_examined: 0,
        points_on_variety: 0,
        singular_points: Vec::new(),
        singular_count: 0,
        on_locus_smooth_count: 0,
        base_mode: mode_desc,
        millis: 0,
    };
    for part in per_base {
        result.points_examined += part.examined;
        result.points_on_variety += part.on_variety;
        result.singular_count += part.singular_count;
        result.on_locus_smooth_count += part.on_locus_smooth;
        for sp in part.singular {
            if result.singular_points.len() < MAX_STORED_POINTS {
                result.singular_points.push(sp);
            }
        }
    }
    result.millis = start.elapsed().as_millis();
    Ok(result)
}

/// Specialization task for the freeness rank sub-check: generators over `Q`
/// in coordinates where the subring variables are honest variables.
#[derive(Clone, Debug)]
pub struct SpecializationTask {
    pub vars: Arc<VariableSet>,
    pub gens: Vec<Polynomial>,
    pub mains: Vec<usize>,
    pub params: Vec<usize>,
    pub expected: usize,
}

#[derive(Clone, Copy, Debug)]
pub enum SpecMode {
    Exhaustive,
    Sampled { n: usize, seed: u64 },
}

/// For each specialization of the parameter variables over `F_p`, the
/// vector-space dimension of the specialized quotient (zero-dimensional
/// Groebner staircase count). `None` marks a point whose basis computation
/// exceeded the budget or whose staircase is not finite.
pub fn specialization_scan(
    task: &SpecializationTask,
    p: u64,
    mode: SpecMode,
    budget: &Budget,
) -> Result<Vec<(Vec<u64>, Option<usize>)>, GroebnerError> {
    let domain = Domain::fp(p)?;
    let gens_p: Vec<Polynomial> = task
        .gens
        .iter()
        .map(|g| g.reduce_mod(p))
        .collect::<Result<_, _>>()
        .map_err(GroebnerError::Algebra)?;

    let k = task.params.len();
    let mut points: Vec<Vec<u64>> = Vec::new();
    match mode {
        SpecMode::Exhaustive => {
            let mut current = vec![0u64; k];
            loop {
                points.push(current.clone());
                let mut i = 0;
                loop {
                    if i == k {
                        break;
                    }
                    current[i] += 1;
                    if current[i] < p {
                        break;
                    }
                    current[i] = 0;
                    i += 1;
                }
                if i == k {
                    break;
                }
            }
        }
        SpecMode::Sampled { n, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut seen = std::collections::BTreeSet::new();
            while points.len() < n {
                let pt: Vec<u64> = (0..k)
                    .map(|_| rand::Rng::gen_range(&mut rng, 0..p))
                    .collect();
                if seen.insert(pt.clone()) {
                    points.push(pt);
                }
                if seen.len() as u64 >= p.pow(k as u32) {
                    break;
                }
            }
        }
    }

    let order = MonomialOrder::blocks(vec![
        (task.mains.clone(), SimpleOrder::GrevLex),
        (task.params.clone(), SimpleOrder::GrevLex),
    ]);
    let results: Vec<(Vec<u64>, Option<usize>)> = points
        .par_iter()
        .map(|pt| {
            let assignments: Vec<(usize, crate::coeff::Coefficient)> = task
                .params
                .iter()
                .zip(pt.iter())
                .map(|(&v, &val)| (v, domain.from_i64(val as i64)))
                .collect();
            let specialized: Vec<Polynomial> = gens_p
                .iter()
                .map(|g| g.substitute_values(&assignments))
                .collect();
            let dim = match buchberger(&specialized, &order, budget) {
                Err(_) => None,
                Ok(gb) => {
                    let leads = leading_x_monomials(&gb, &task.mains, &SimpleOrder::GrevLex);
                    finite_staircase(&leads, &task.mains, task.vars.len()).map(|s| s.len())
                }
            };
            (pt.clone(), dim)
        })
        .collect();
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::builtin_models;
    use crate::parse::parse_poly;

    #[test]
    fn projective_counts() {
        assert_eq!(projective_count(2, 5), 31);
        assert_eq!(projective_count(8, 3), 9841);
    }

    #[test]
    fn decode_rep_visits_each_point_once() {
        let p = 3;
        let n = 3;
        let total = projective_count(n - 1, p);
        let mut seen = std::collections::BTreeSet::new();
        let mut rep = vec![0u64; n];
        for k in 0..total {
            decode_rep(k, n, p, &mut rep);
            assert!(seen.insert(rep.clone()), "duplicate rep {:?}", rep);
            let first = rep.iter().position(|&c| c != 0).unwrap();
            assert_eq!(rep[first], 1);
        }
        assert_eq!(seen.len() as u64, total);
    }

    #[test]
    fn smooth_conic_has_p_plus_one_points() {
        let vs = VariableSet::new(&[
            ("base", crate::vars::BlockKind::Base, &["x"]),
            ("z", crate::vars::BlockKind::Projective, &["z0", "z1", "z2"]),
        ])
        .unwrap();
        let conic = parse_poly("z0^2 + z1^2 - z2^2", &vs, Domain::Rational).unwrap();
        let ambient = Ambient {
            nvars: 4,
            base: vec![0],
            blocks: vec![vec![1, 2, 3]],
        };
        let scan = enumerate_points(&[conic], &ambient, 5, Some(&[0])).unwrap();
        assert_eq!(scan.points_examined, 31);
        assert_eq!(scan.points_on_variety, 6);
    }

    #[test]
    fn full_projective_plane_count() {
        let vs = VariableSet::new(&[
            ("base", crate::vars::BlockKind::Base, &["x"]),
            ("z", crate::vars::BlockKind::Projective, &["z0", "z1", "z2"]),
        ])
        .unwrap();
        let _ = vs;
        let ambient = Ambient {
            nvars: 4,
            base: vec![0],
            blocks: vec![vec![1, 2, 3]],
        };
        let scan = enumerate_points(&[], &ambient, 5, Some(&[0])).unwrap();
        assert_eq!(scan.points_on_variety, 31);
    }

    #[test]
    fn prime_two_is_rejected() {
        let ambient = Ambient {
            nvars: 1,
            base: vec![0],
            blocks: vec![],
        };
        assert!(enumerate_points(&[], &ambient, 2, Some(&[0])).is_err());
    }

    #[test]
    fn iv_iv_meet_is_smooth_over_f3() {
        let reg = builtin_models();
        let m = reg.get("iv-iv-meet").unwrap().geometry();
        let scan = smoothness_scan(m, 3, BaseMode::Exhaustive).unwrap();
        assert_eq!(scan.singular_count, 0);
        // ambient sanity: |base|^2 * |P^1 x P^2|
        assert_eq!(scan.points_examined, 9 * 4 * 13);
        assert!(scan.points_on_variety > 0);
    }

    #[test]
    fn ii_ii_singular_points_lie_on_the_four_curves_over_f3() {
        let reg = builtin_models();
        let m = reg.get("ii-ii").unwrap().geometry();
        let scan = smoothness_scan(m, 3, BaseMode::Exhaustive).unwrap();
        assert!(scan.singular_count > 0);
        assert!(scan.singular_points.iter().all(|sp| sp.on_claimed_locus));
        assert_eq!(scan.on_locus_smooth_count, 0);
    }
}
