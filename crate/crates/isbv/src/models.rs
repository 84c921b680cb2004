//! The registry of explicit local models and their claim records.
//!
//! Each model carries an ambient description (affine base times a product of
//! projective blocks), a list of defining equations, optionally a
//! parametrization by sections, and machine-checkable claim records. The
//! builtin registry is loaded from embedded model files through the same
//! loader that handles user files, so the documented schema is exercised on
//! every run and load-time validation (homogeneity per block, vanishing of
//! every equation on the parametrization) always applies.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coeff::Domain;
use crate::error::{AlgebraError, ModelError};
use crate::parse::parse_poly;
use crate::poly::Polynomial;
use crate::polymap::PolyMap;
use crate::vars::{BlockKind, VariableSet};

/// The four mild degeneration types of fibers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DegenerationType {
    I,
    II,
    III,
    IV,
}

impl DegenerationType {
    /// Short description of the singular fiber this type denotes.
    pub fn description(&self) -> &'static str {
        match self {
            DegenerationType::I => "quadric surface with an ordinary double point",
            DegenerationType::II => "product of a reduced singular conic with itself",
            DegenerationType::III => {
                "two Hirzebruch F2 surfaces, each glued along its (-2)-curve to a fiber of the other"
            }
            DegenerationType::IV => "product of P^1 with a reduced singular conic",
        }
    }

    pub fn parse(text: &str) -> Result<DegenerationType, ModelError> {
        match text {
            "I" => Ok(DegenerationType::I),
            "II" => Ok(DegenerationType::II),
            "III" => Ok(DegenerationType::III),
            "IV" => Ok(DegenerationType::IV),
            other => Err(ModelError::Schema(format!(
                "unknown degeneration type `{}`",
                other
            ))),
        }
    }
}

impl fmt::Display for DegenerationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegenerationType::I => write!(f, "I"),
            DegenerationType::II => write!(f, "II"),
            DegenerationType::III => write!(f, "III"),
            DegenerationType::IV => write!(f, "IV"),
        }
    }
}

/// Degeneration divisor metadata: which base coordinate cuts which divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    pub label: String,
    pub dtype: DegenerationType,
    /// Index of the defining base coordinate in the model variable set.
    pub coordinate: usize,
}

/// Metadata for the constrained degree-2 relation space check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSpaceSpec {
    /// Allowed base-coefficient monomials, e.g. `1, s^2, t^2, s^2*t^2`.
    pub coefficient_monomials: Vec<String>,
    pub expected_dim: usize,
}

/// Claim that the model's coordinate ring is a free module over a polynomial
/// subring, with an explicit monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessClaim {
    /// Names of the subring variables (base coordinates plus fiber
    /// coordinates, possibly defined ones).
    pub subring: Vec<String>,
    /// Definitions of non-coordinate subring variables, e.g. `xt1 = x1 + x2`.
    pub defined: Vec<(String, String)>,
    /// Monomial basis of the module, as grammar text.
    pub basis: Vec<String>,
    pub expected_rank: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingularityKind {
    A1Transverse,
    DInfinity,
    ToricChartIdentity,
    SmoothTotalSpace,
}

impl SingularityKind {
    pub fn parse(text: &str) -> Result<SingularityKind, ModelError> {
        match text {
            "a1-transverse" => Ok(SingularityKind::A1Transverse),
            "d-infinity" => Ok(SingularityKind::DInfinity),
            "toric-chart-identity" => Ok(SingularityKind::ToricChartIdentity),
            "smooth-total-space" => Ok(SingularityKind::SmoothTotalSpace),
            other => Err(ModelError::Schema(format!(
                "unknown singularity kind `{}`",
                other
            ))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            SingularityKind::A1Transverse => "a1-transverse",
            SingularityKind::DInfinity => "d-infinity",
            SingularityKind::ToricChartIdentity => "toric-chart-identity",
            SingularityKind::SmoothTotalSpace => "smooth-total-space",
        }
    }
}

/// One singular-locus claim. The fields carry exactly the data the check for
/// the claim's kind needs; unused fields stay empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityClaim {
    pub kind: SingularityKind,
    pub label: String,
    /// Per projective block, the coordinate set to 1 (block name -> coord).
    pub chart: BTreeMap<String, String>,
    /// Adjoined curve parameters for generic-point claims.
    pub parameters: Vec<String>,
    /// Nonzero point coordinates as grammar text in the parameters;
    /// unlisted chart coordinates sit at 0.
    pub point: BTreeMap<String, String>,
    /// Generators (grammar text over the model variables) of the claimed
    /// locus, used for membership tests in enumeration scans.
    pub locus: Vec<String>,
    /// Expected quadratic rank of the tangent-cone quadric.
    pub expected_rank: Option<usize>,
    /// For isolated-line claims: the coordinate running along the line.
    pub line_coordinate: Option<String>,
    /// For isolated-line claims: a higher-order monomial (line coordinate
    /// times the square of the rank-defect direction) that must appear.
    pub mixed_monomial: Option<String>,
    /// For toric-chart claims: the expected local equation.
    pub chart_equation: Option<String>,
}

/// Expected invariants of the fiber over one base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberClaim {
    /// Base point, one grammar constant per base coordinate.
    pub point: Vec<String>,
    /// Expected Hilbert function values h(1), h(2), ... (consecutive
    /// degrees starting at 1).
    pub hilbert: Vec<usize>,
    /// Expected rational point count over F_p, as a polynomial in `p`.
    pub counts: Option<String>,
    /// Optional user-supplied candidate component ideals (each a generator
    /// list); checked for containment of the fiber ideal only.
    pub components: Vec<Vec<String>>,
}

/// Componentwise equality of two map compositions up to a scaling monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityClaim {
    pub label: String,
    /// Intermediate coordinates (e.g. the two P^2 factors fed to a Segre map).
    pub inner_vars: Vec<String>,
    /// Images of the intermediate coordinates in the model variables.
    pub inner: Vec<String>,
    /// The outer map, written in the intermediate coordinates.
    pub outer: Vec<String>,
    /// The direct map in the model variables; the claim is
    /// `outer o inner = scale * rhs` componentwise.
    pub rhs: Vec<String>,
    pub scale: String,
    pub pullbacks: Vec<PullbackClaim>,
}

/// A polynomial that must pull back to zero under a map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackClaim {
    pub equation_vars: Vec<String>,
    pub equation: String,
    pub images: Vec<String>,
}

/// One step of the descent from the printed cover coordinates to the true
/// base: the cover coordinate's `power`-th power is the base coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentStep {
    pub cover: String,
    pub power: u32,
    pub base: String,
}

/// One explicit local model with its claim records.
#[derive(Clone, Debug)]
pub struct LocalModel {
    pub name: String,
    pub description: String,
    /// Base block first, then the projective blocks.
    pub vars: Arc<VariableSet>,
    pub divisors: Vec<Divisor>,
    pub equations: Vec<Polynomial>,
    /// Parametrization: model variables -> polynomials in base coordinates
    /// and fiber parameters; base coordinates map to themselves.
    pub sections: Option<PolyMap>,
    pub section_target: Option<Arc<VariableSet>>,
    /// Jacobian rank at a smooth point of the total space (ambient chart
    /// dimension minus variety dimension); stored, not inferred.
    pub smooth_rank: usize,
    /// Descent of the printed cover coordinates to the true base (the
    /// equations only involve the listed powers).
    pub descent: Vec<DescentStep>,
    /// The model over the true base, derived from `descent` at load time.
    /// Geometric checks (singular loci, flatness, point counts) run here;
    /// relation and freeness checks run on the printed coordinates.
    pub descended: Option<Box<LocalModel>>,
    pub relation_space: Option<RelationSpaceSpec>,
    pub freeness: Option<FreenessClaim>,
    pub singularities: Vec<SingularityClaim>,
    pub fibers: Vec<FiberClaim>,
    pub identities: Vec<IdentityClaim>,
}

impl PartialEq for LocalModel {
    fn eq(&self, other: &Self) -> bool {
        // `descended` is derived from `descent` at load time, so it does not
        // participate in equality
        self.name == other.name
            && self.description == other.description
            && self.vars == other.vars
            && self.divisors == other.divisors
            && self.equations == other.equations
            && self.section_images() == other.section_images()
            && self.smooth_rank == other.smooth_rank
            && self.descent == other.descent
            && self.relation_space == other.relation_space
            && self.freeness == other.freeness
            && self.singularities == other.singularities
            && self.fibers == other.fibers
            && self.identities == other.identities
    }
}

impl LocalModel {
    /// The model the geometric checks run on: the descended model when a
    /// descent is declared, the model itself otherwise.
    pub fn geometry(&self) -> &LocalModel {
        self.descended.as_deref().unwrap_or(self)
    }

    fn section_images(&self) -> Option<Vec<Polynomial>> {
        let map = self.sections.as_ref()?;
        Some(
            (0..self.vars.len())
                .filter_map(|i| map.image(i).cloned())
                .collect(),
        )
    }

    pub fn base_indices(&self) -> Vec<usize> {
        self.vars.base_indices()
    }

    /// Coordinate indices of all projective blocks, flattened.
    pub fn projective_indices(&self) -> Vec<usize> {
        self.vars
            .projective_blocks()
            .flat_map(|b| b.indices.iter().copied())
            .collect()
    }

    /// Parses a claim text over the model variables.
    pub fn parse_over_model(&self, text: &str) -> Result<Polynomial, AlgebraError> {
        parse_poly(text, &self.vars, Domain::Rational)
    }

    /// Checks which named checks are applicable to this model.
    pub fn applicable_checks(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.sections.is_some() {
            out.push("relations");
        }
        if self.relation_space.is_some() {
            out.push("span");
        }
        if self.freeness.is_some() {
            out.push("freeness");
        }
        if !self.singularities.is_empty() {
            out.push("singular");
        }
        if self
            .fibers
            .iter()
            .any(|f| !f.hilbert.is_empty() || !f.components.is_empty())
        {
            out.push("flatness");
        }
        if self.fibers.iter().any(|f| f.counts.is_some()) {
            out.push("counts");
        }
        if !self.identities.is_empty() {
            out.push("identities");
        }
        out
    }

    /// Serializes back to the model-file format.
    pub fn to_document(&self) -> ModelDoc {
        let order = crate::order::MonomialOrder::GrevLex;
        let grammar = |p: &Polynomial| p.grammar_text(&order).expect("model data is integral");
        ModelDoc {
            name: self.name.clone(),
            description: self.description.clone(),
            smooth_rank: self.smooth_rank,
            equations: self.equations.iter().map(&grammar).collect(),
            sections: self.sections.as_ref().map(|map| {
                self.projective_indices()
                    .iter()
                    .map(|&i| grammar(map.image(i).expect("section present")))
                    .collect()
            }),
            section_blocks: self.section_target.as_ref().map(|vs| {
                vs.projective_blocks()
                    .map(|b| b.indices.iter().map(|&i| vs.name(i).to_string()).collect())
                    .collect()
            }),
            base_vars: self
                .base_indices()
                .iter()
                .map(|&i| self.vars.name(i).to_string())
                .collect(),
            blocks: self
                .vars
                .projective_blocks()
                .map(|b| BlockDoc {
                    name: b.name.clone(),
                    vars: b
                        .indices
                        .iter()
                        .map(|&i| self.vars.name(i).to_string())
                        .collect(),
                })
                .collect(),
            divisors: self
                .divisors
                .iter()
                .map(|d| DivisorDoc {
                    name: d.label.clone(),
                    dtype: d.dtype.to_string(),
                    coordinate: self.vars.name(d.coordinate).to_string(),
                })
                .collect(),
            descent: self
                .descent
                .iter()
                .map(|s| DescentDoc {
                    cover: s.cover.clone(),
                    power: s.power,
                    base: s.base.clone(),
                })
                .collect(),
            claims: ClaimsDoc {
                relation_space: self.relation_space.as_ref().map(|r| RelationSpaceDoc {
                    coefficient_monomials: r.coefficient_monomials.clone(),
                    expected_dim: r.expected_dim,
                }),
                freeness: self.freeness.as_ref().map(|f| FreenessDoc {
                    subring: f.subring.clone(),
                    defined_vars: f
                        .defined
                        .iter()
                        .map(|(a, b)| vec![a.clone(), b.clone()])
                        .collect(),
                    basis: f.basis.clone(),
                }),
                singularities: self
                    .singularities
                    .iter()
                    .map(|s| SingularityDoc {
                        kind: s.kind.as_str().to_string(),
                        label: s.label.clone(),
                        chart: s.chart.clone(),
                        parameters: s.parameters.clone(),
                        point: s.point.clone(),
                        locus: s.locus.clone(),
                        expected_rank: s.expected_rank,
                        line_coordinate: s.line_coordinate.clone(),
                        mixed_monomial: s.mixed_monomial.clone(),
                        chart_equation: s.chart_equation.clone(),
                    })
                    .collect(),
                fibers: self
                    .fibers
                    .iter()
                    .map(|f| FiberDoc {
                        point: f.point.clone(),
                        hilbert: f.hilbert.clone(),
                        counts: f.counts.clone(),
                        components: f.components.clone(),
                    })
                    .collect(),
                identities: self
                    .identities
                    .iter()
                    .map(|id| IdentityDoc {
                        label: id.label.clone(),
                        lhs_vars: id.inner_vars.clone(),
                        lhs_images: id.inner.clone(),
                        lhs_outer: id.outer.clone(),
                        rhs: id.rhs.clone(),
                        scale: id.scale.clone(),
                        pullbacks: id
                            .pullbacks
                            .iter()
                            .map(|pb| PullbackDoc {
                                equation_vars: pb.equation_vars.clone(),
                                equation: pb.equation.clone(),
                                images: pb.images.clone(),
                            })
                            .collect(),
                    })
                    .collect(),
            },
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(&self.to_document()).expect("model serializes")
    }
}

// ---------------------------------------------------------------------------
// model-file schema (serde documents)
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelDoc {
    pub name: String,
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub smooth_rank: usize,
    pub base_vars: Vec<String>,
    #[serde(default)]
    pub blocks: Vec<BlockDoc>,
    #[serde(default)]
    pub equations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sections: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section_blocks: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub divisors: Vec<DivisorDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub descent: Vec<DescentDoc>,
    #[serde(default)]
    pub claims: ClaimsDoc,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ClaimsDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation_space: Option<RelationSpaceDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub freeness: Option<FreenessDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub singularities: Vec<SingularityDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fibers: Vec<FiberDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub identities: Vec<IdentityDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockDoc {
    pub name: String,
    pub vars: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DivisorDoc {
    pub name: String,
    #[serde(rename = "type")]
    pub dtype: String,
    pub coordinate: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DescentDoc {
    pub cover: String,
    pub power: u32,
    pub base: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationSpaceDoc {
    pub coefficient_monomials: Vec<String>,
    pub expected_dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FreenessDoc {
    pub subring: Vec<String>,
    #[serde(default)]
    pub defined_vars: Vec<Vec<String>>,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SingularityDoc {
    pub kind: String,
    pub label: String,
    #[serde(default)]
    pub chart: BTreeMap<String, String>,
    #[serde(default)]
    pub parameters: Vec<String>,
    #[serde(default)]
    pub point: BTreeMap<String, String>,
    #[serde(default)]
    pub locus: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line_coordinate: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mixed_monomial: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chart_equation: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiberDoc {
    pub point: Vec<String>,
    #[serde(default)]
    pub hilbert: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdentityDoc {
    pub label: String,
    pub lhs_vars: Vec<String>,
    pub lhs_images: Vec<String>,
    pub lhs_outer: Vec<String>,
    pub rhs: Vec<String>,
    pub scale: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pullbacks: Vec<PullbackDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PullbackDoc {
    pub equation_vars: Vec<String>,
    pub equation: String,
    pub images: Vec<String>,
}

// ---------------------------------------------------------------------------
// loading and validation
// ---------------------------------------------------------------------------

/// Allowed divisor-type pairings for two-divisor models.
const ALLOWED_PAIRS: &[(DegenerationType, DegenerationType)] = &[
    (DegenerationType::I, DegenerationType::II),
    (DegenerationType::II, DegenerationType::II),
    (DegenerationType::III, DegenerationType::II),
    (DegenerationType::IV, DegenerationType::II),
    (DegenerationType::IV, DegenerationType::IV),
];

pub fn load_model_str(text: &str) -> Result<LocalModel, ModelError> {
    let doc: ModelDoc =
        toml::from_str(text).map_err(|e| ModelError::Schema(format!("toml: {}", e)))?;
    model_from_doc(&doc)
}

pub fn load_model_file(path: &std::path::Path) -> Result<LocalModel, ModelError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ModelError::Schema(format!("read {}: {}", path.display(), e)))?;
    load_model_str(&text)
}

pub fn model_from_doc(doc: &ModelDoc) -> Result<LocalModel, ModelError> {
    model_from_doc_impl(doc, true)
}

/// Loader variant that skips the parametrization-vanishing invariant.
/// Exists solely so the test-only mutation hooks can build deliberately
/// broken models; everything else must go through `model_from_doc`.
pub fn model_from_doc_lenient(doc: &ModelDoc) -> Result<LocalModel, ModelError> {
    model_from_doc_impl(doc, false)
}

fn model_from_doc_impl(doc: &ModelDoc, check_vanishing: bool) -> Result<LocalModel, ModelError> {
    if doc.name.is_empty() {
        return Err(ModelError::Schema("model name is empty".into()));
    }
    // ambient variable set: base block, then projective blocks
    let mut groups: Vec<(&str, BlockKind, Vec<&str>)> = Vec::new();
    groups.push((
        "base",
        BlockKind::Base,
        doc.base_vars.iter().map(|s| s.as_str()).collect(),
    ));
    for b in &doc.blocks {
        groups.push((
            b.name.as_str(),
            BlockKind::Projective,
            b.vars.iter().map(|s| s.as_str()).collect(),
        ));
    }
    let group_refs: Vec<(&str, BlockKind, &[&str])> = groups
        .iter()
        .map(|(n, k, v)| (*n, *k, v.as_slice()))
        .collect();
    let vars =
        VariableSet::new(&group_refs).map_err(|e| ModelError::Schema(format!("ambient: {}", e)))?;

    // equations, with per-block homogeneity validation
    let mut equations = Vec::new();
    for (i, text) in doc.equations.iter().enumerate() {
        let p = parse_poly(text, &vars, Domain::Rational)
            .map_err(|e| ModelError::Schema(format!("equation {}: {}", i + 1, e)))?;
        for block in vars.projective_blocks() {
            if p.multidegree_in(&block.indices).is_none() {
                return Err(ModelError::NotHomogeneous {
                    index: i + 1,
                    text: text.clone(),
                    block: block.name.clone(),
                });
            }
        }
        equations.push(p);
    }

    // divisors
    let mut divisors = Vec::new();
    for d in &doc.divisors {
        let idx = vars.index_of(&d.coordinate).ok_or_else(|| {
            ModelError::Schema(format!("divisor coordinate `{}` unknown", d.coordinate))
        })?;
        divisors.push(Divisor {
            label: d.name.clone(),
            dtype: DegenerationType::parse(&d.dtype)?,
            coordinate: idx,
        });
    }
    {
        let mut coords: Vec<usize> = divisors.iter().map(|d| d.coordinate).collect();
        coords.sort_unstable();
        coords.dedup();
        if coords.len() != divisors.len() {
            return Err(ModelError::Schema(
                "divisors share a defining coordinate".into(),
            ));
        }
        if divisors.len() == 2 {
            let mut pair = (divisors[0].dtype, divisors[1].dtype);
            if pair.0 > pair.1 {
                pair = (pair.1, pair.0);
            }
            let normalized = if pair.0 > pair.1 {
                (pair.1, pair.0)
            } else {
                pair
            };
            if !ALLOWED_PAIRS.contains(&normalized)
                && !ALLOWED_PAIRS.contains(&(normalized.1, normalized.0))
            {
                return Err(ModelError::Schema(format!(
                    "divisor types {}-{} do not pair in any local model",
                    pair.0, pair.1
                )));
            }
        }
    }

    // descent of the cover coordinates to the true base
    let mut descent: Vec<DescentStep> = Vec::new();
    for d in &doc.descent {
        let idx = vars
            .index_of(&d.cover)
            .ok_or_else(|| ModelError::Schema(format!("descent cover `{}` unknown", d.cover)))?;
        if !doc.base_vars.iter().any(|b| b == &d.cover) {
            return Err(ModelError::Schema(format!(
                "descent cover `{}` is not a base coordinate",
                d.cover
            )));
        }
        if d.power == 0 {
            return Err(ModelError::Schema("descent power must be positive".into()));
        }
        let _ = idx;
        descent.push(DescentStep {
            cover: d.cover.clone(),
            power: d.power,
            base: d.base.clone(),
        });
    }
    let (claims_vars, descended_equations, descended_divisors) = if descent.is_empty() {
        (Arc::clone(&vars), None, None)
    } else {
        // descended base names (unlisted base coordinates keep their name)
        let base_names: Vec<String> = doc
            .base_vars
            .iter()
            .map(|b| {
                descent
                    .iter()
                    .find(|s| &s.cover == b)
                    .map(|s| s.base.clone())
                    .unwrap_or_else(|| b.clone())
            })
            .collect();
        let mut groups: Vec<(String, BlockKind, Vec<String>)> = Vec::new();
        groups.push(("base".to_string(), BlockKind::Base, base_names.clone()));
        for b in &doc.blocks {
            groups.push((b.name.clone(), BlockKind::Projective, b.vars.clone()));
        }
        let refs: Vec<(&str, BlockKind, Vec<&str>)> = groups
            .iter()
            .map(|(n, k, v)| (n.as_str(), *k, v.iter().map(|s| s.as_str()).collect()))
            .collect();
        let slices: Vec<(&str, BlockKind, &[&str])> = refs
            .iter()
            .map(|(n, k, v)| (*n, *k, v.as_slice()))
            .collect();
        let dvars = VariableSet::new(&slices)
            .map_err(|e| ModelError::Schema(format!("descended base: {}", e)))?;
        // descend each equation: the exponent of each cover coordinate must
        // be divisible by its power
        let mut deqs = Vec::new();
        for (i, eq) in equations.iter().enumerate() {
            let mut terms = Vec::new();
            for (m, c) in eq.terms() {
                let mut exps = vec![0u32; dvars.len()];
                for (v, &e) in m.exps().iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let vname = vars.name(v);
                    let (target_name, target_exp) = match descent.iter().find(|s| s.cover == vname)
                    {
                        Some(step) => {
                            if e % step.power != 0 {
                                return Err(ModelError::Schema(format!(
                                        "equation {} does not descend: exponent {} of `{}` not divisible by {}",
                                        i + 1,
                                        e,
                                        vname,
                                        step.power
                                    )));
                            }
                            (step.base.as_str(), e / step.power)
                        }
                        None => (vname, e),
                    };
                    let j = dvars.index_of(target_name).expect("descended variable");
                    exps[j] += target_exp;
                }
                terms.push((crate::monomial::Monomial::from_exps(exps), c.clone()));
            }
            deqs.push(Polynomial::from_terms(&dvars, Domain::Rational, terms));
        }
        let ddivs: Vec<Divisor> = divisors
            .iter()
            .map(|d| {
                let cname = vars.name(d.coordinate);
                let dname = descent
                    .iter()
                    .find(|s| s.cover == cname)
                    .map(|s| s.base.as_str())
                    .unwrap_or(cname);
                Divisor {
                    label: d.label.clone(),
                    dtype: d.dtype,
                    coordinate: dvars.index_of(dname).expect("descended divisor"),
                }
            })
            .collect();
        (dvars, Some(deqs), Some(ddivs))
    };

    // sections: validate count, build the substitution map, check vanishing
    let mut sections = None;
    let mut section_target = None;
    if let Some(texts) = &doc.sections {
        let proj_count: usize = vars.projective_blocks().map(|b| b.indices.len()).sum();
        if texts.len() != proj_count {
            return Err(ModelError::SectionCount {
                got: texts.len(),
                expected: proj_count,
            });
        }
        let fiber_blocks = doc
            .section_blocks
            .clone()
            .ok_or_else(|| ModelError::Schema("sections require section_blocks".into()))?;
        let mut tgroups: Vec<(String, BlockKind, Vec<String>)> = Vec::new();
        tgroups.push(("base".to_string(), BlockKind::Base, doc.base_vars.clone()));
        for (k, blk) in fiber_blocks.iter().enumerate() {
            tgroups.push((format!("fiber{}", k), BlockKind::Projective, blk.clone()));
        }
        let tg_refs: Vec<(&str, BlockKind, Vec<&str>)> = tgroups
            .iter()
            .map(|(n, k, v)| (n.as_str(), *k, v.iter().map(|s| s.as_str()).collect()))
            .collect();
        let tg_slices: Vec<(&str, BlockKind, &[&str])> = tg_refs
            .iter()
            .map(|(n, k, v)| (*n, *k, v.as_slice()))
            .collect();
        let target = VariableSet::new(&tg_slices)
            .map_err(|e| ModelError::Schema(format!("section_blocks: {}", e)))?;

        let mut assignments: Vec<(&str, Polynomial)> = Vec::new();
        for name in &doc.base_vars {
            let idx = target.index_of(name).expect("base var in target");
            assignments.push((
                name.as_str(),
                Polynomial::var(&target, idx, Domain::Rational),
            ));
        }
        let proj_names: Vec<&String> = vars
            .projective_blocks()
            .flat_map(|b| b.indices.iter())
            .map(|&i| &vars.names()[i])
            .collect();
        let mut parsed_sections = Vec::new();
        for (k, text) in texts.iter().enumerate() {
            let p = parse_poly(text, &target, Domain::Rational)
                .map_err(|e| ModelError::Schema(format!("section {}: {}", k + 1, e)))?;
            parsed_sections.push(p);
        }
        for (name, p) in proj_names.iter().zip(&parsed_sections) {
            assignments.push((name.as_str(), p.clone()));
        }
        let map = PolyMap::new(&vars, &target, Domain::Rational, &assignments)
            .map_err(ModelError::Algebra)?;
        if check_vanishing {
            for (i, eq) in equations.iter().enumerate() {
                let image = map.substitute(eq).map_err(ModelError::Algebra)?;
                if !image.is_zero() {
                    return Err(ModelError::VanishingFailure {
                        index: i + 1,
                        remainder: image.display_text(),
                    });
                }
            }
        }
        sections = Some(map);
        section_target = Some(target);
    }

    // claims: parse-validate the pieces against the model variables
    let relation_space = doc
        .claims
        .relation_space
        .as_ref()
        .map(|r| RelationSpaceSpec {
            coefficient_monomials: r.coefficient_monomials.clone(),
            expected_dim: r.expected_dim,
        });
    if let Some(rs) = &relation_space {
        for m in &rs.coefficient_monomials {
            parse_poly(m, &vars, Domain::Rational)
                .map_err(|e| ModelError::Schema(format!("coefficient monomial `{}`: {}", m, e)))?;
        }
    }

    let freeness = match &doc.claims.freeness {
        None => None,
        Some(f) => {
            let mut defined = Vec::new();
            for pair in &f.defined_vars {
                if pair.len() != 2 {
                    return Err(ModelError::Schema(
                        "freeness.defined_vars entries are [name, expr] pairs".into(),
                    ));
                }
                parse_poly(&pair[1], &vars, Domain::Rational)
                    .map_err(|e| ModelError::Schema(format!("defined `{}`: {}", pair[0], e)))?;
                defined.push((pair[0].clone(), pair[1].clone()));
            }
            for name in &f.subring {
                let known = vars.index_of(name).is_some() || defined.iter().any(|(n, _)| n == name);
                if !known {
                    return Err(ModelError::Schema(format!(
                        "subring variable `{}` unknown",
                        name
                    )));
                }
            }
            for b in &f.basis {
                parse_poly(b, &vars, Domain::Rational)
                    .map_err(|e| ModelError::Schema(format!("basis `{}`: {}", b, e)))?;
            }
            Some(FreenessClaim {
                subring: f.subring.clone(),
                defined,
                expected_rank: f.basis.len(),
                basis: f.basis.clone(),
            })
        }
    };

    let mut singularities = Vec::new();
    for s in &doc.claims.singularities {
        let kind = SingularityKind::parse(&s.kind)?;
        for (block, coord) in &s.chart {
            let blk = claims_vars
                .block(block)
                .map_err(|_| ModelError::Schema(format!("chart block `{}` unknown", block)))?;
            let idx = claims_vars.index_of(coord).ok_or_else(|| {
                ModelError::Schema(format!("chart coordinate `{}` unknown", coord))
            })?;
            if !blk.indices.contains(&idx) {
                return Err(ModelError::Schema(format!(
                    "chart coordinate `{}` not in block `{}`",
                    coord, block
                )));
            }
        }
        if !s.point.is_empty() {
            let params: Vec<&str> = s.parameters.iter().map(|p| p.as_str()).collect();
            let pvars = if params.is_empty() {
                VariableSet::simple(&["w"])
            } else {
                VariableSet::simple(&params)
            };
            for (var, expr) in &s.point {
                if claims_vars.index_of(var).is_none() {
                    return Err(ModelError::Schema(format!(
                        "point variable `{}` unknown",
                        var
                    )));
                }
                parse_poly(expr, &pvars, Domain::Rational)
                    .map_err(|e| ModelError::Schema(format!("point `{}`: {}", var, e)))?;
            }
        }
        for g in &s.locus {
            parse_poly(g, &claims_vars, Domain::Rational)
                .map_err(|e| ModelError::Schema(format!("locus `{}`: {}", g, e)))?;
        }
        if let Some(lc) = &s.line_coordinate {
            if claims_vars.index_of(lc).is_none() {
                return Err(ModelError::Schema(format!(
                    "line coordinate `{}` unknown",
                    lc
                )));
            }
        }
        singularities.push(SingularityClaim {
            kind,
            label: s.label.clone(),
            chart: s.chart.clone(),
            parameters: s.parameters.clone(),
            point: s.point.clone(),
            locus: s.locus.clone(),
            expected_rank: s.expected_rank,
            line_coordinate: s.line_coordinate.clone(),
            mixed_monomial: s.mixed_monomial.clone(),
            chart_equation: s.chart_equation.clone(),
        });
    }

    let mut fibers = Vec::new();
    for f in &doc.claims.fibers {
        if f.point.len() != doc.base_vars.len() {
            return Err(ModelError::Schema(
                "fiber point length != base dimension".into(),
            ));
        }
        if let Some(c) = &f.counts {
            let pv = VariableSet::simple(&["p"]);
            parse_poly(c, &pv, Domain::Rational)
                .map_err(|e| ModelError::Schema(format!("counts `{}`: {}", c, e)))?;
        }
        for comp in &f.components {
            for g in comp {
                parse_poly(g, &claims_vars, Domain::Rational)
                    .map_err(|e| ModelError::Schema(format!("component `{}`: {}", g, e)))?;
            }
        }
        fibers.push(FiberClaim {
            point: f.point.clone(),
            hilbert: f.hilbert.clone(),
            counts: f.counts.clone(),
            components: f.components.clone(),
        });
    }

    let mut identities = Vec::new();
    for id in &doc.claims.identities {
        if id.lhs_vars.len() != id.lhs_images.len() {
            return Err(ModelError::Schema(
                "identity: lhs_vars and lhs_images lengths differ".into(),
            ));
        }
        if id.lhs_outer.len() != id.rhs.len() {
            return Err(ModelError::Schema(
                "identity: lhs_outer and rhs lengths differ".into(),
            ));
        }
        let ivars_refs: Vec<&str> = id.lhs_vars.iter().map(|s| s.as_str()).collect();
        let ivars = VariableSet::simple(&ivars_refs);
        for o in &id.lhs_outer {
            parse_poly(o, &ivars, Domain::Rational)
                .map_err(|e| ModelError::Schema(format!("lhs_outer `{}`: {}", o, e)))?;
        }
        for text in id
            .lhs_images
            .iter()
            .chain(id.rhs.iter())
            .chain(std::iter::once(&id.scale))
        {
            parse_poly(text, &vars, Domain::Rational)
                .map_err(|e| ModelError::Schema(format!("identity `{}`: {}", text, e)))?;
        }
        let mut pullbacks = Vec::new();
        for pb in &id.pullbacks {
            if pb.equation_vars.len() != pb.images.len() {
                return Err(ModelError::Schema(
                    "pullback: vars and images lengths differ".into(),
                ));
            }
            let evars_refs: Vec<&str> = pb.equation_vars.iter().map(|s| s.as_str()).collect();
            let evars = VariableSet::simple(&evars_refs);
            parse_poly(&pb.equation, &evars, Domain::Rational)
                .map_err(|e| ModelError::Schema(format!("pullback equation: {}", e)))?;
            for img in &pb.images {
                parse_poly(img, &vars, Domain::Rational)
                    .map_err(|e| ModelError::Schema(format!("pullback image `{}`: {}", img, e)))?;
            }
            pullbacks.push(PullbackClaim {
                equation_vars: pb.equation_vars.clone(),
                equation: pb.equation.clone(),
                images: pb.images.clone(),
            });
        }
        identities.push(IdentityClaim {
            label: id.label.clone(),
            inner_vars: id.lhs_vars.clone(),
            inner: id.lhs_images.clone(),
            outer: id.lhs_outer.clone(),
            rhs: id.rhs.clone(),
            scale: id.scale.clone(),
            pullbacks,
        });
    }

    let descended = match (descended_equations, descended_divisors) {
        (Some(deqs), Some(ddivs)) => Some(Box::new(LocalModel {
            name: doc.name.clone(),
            description: doc.description.clone(),
            vars: claims_vars,
            divisors: ddivs,
            equations: deqs,
            sections: None,
            section_target: None,
            smooth_rank: doc.smooth_rank,
            descent: Vec::new(),
            descended: None,
            relation_space: None,
            freeness: None,
            singularities: singularities.clone(),
            fibers: fibers.clone(),
            identities: Vec::new(),
        })),
        _ => None,
    };

    Ok(LocalModel {
        name: doc.name.clone(),
        description: doc.description.clone(),
        vars,
        divisors,
        equations,
        sections,
        section_target,
        smooth_rank: doc.smooth_rank,
        descent,
        descended,
        relation_space,
        freeness,
        singularities,
        fibers,
        identities,
    })
}

// ---------------------------------------------------------------------------
// freeness setup
// ---------------------------------------------------------------------------

/// The freeness claim transported to coordinates where the subring
/// variables are honest variables: defined variables (like `xt1 = x1 + x2`)
/// replace one original coordinate each, the remaining fiber coordinates
/// become the `main` block, and the subring variables become the `param`
/// block.
#[derive(Clone, Debug)]
pub struct FreenessSetup {
    pub vars: Arc<VariableSet>,
    pub gens: Vec<Polynomial>,
    pub mains: Vec<usize>,
    pub params: Vec<usize>,
    pub basis: Vec<Polynomial>,
    pub expected: usize,
}

pub fn freeness_setup(model: &LocalModel) -> Result<FreenessSetup, ModelError> {
    let claim = model
        .freeness
        .as_ref()
        .ok_or_else(|| ModelError::Schema("model carries no freeness claim".into()))?;
    let vars = &model.vars;
    // variables the claimed basis mentions must survive the coordinate
    // change, so a defined variable may only replace a variable outside the
    // basis support
    let mut basis_support: Vec<usize> = Vec::new();
    for b in &claim.basis {
        let poly = parse_poly(b, vars, Domain::Rational).map_err(ModelError::Algebra)?;
        basis_support.extend(poly.support_vars());
    }
    // each defined variable replaces a unit-coefficient variable of its
    // defining expression
    let mut replaced: Vec<(usize, String, Polynomial)> = Vec::new(); // (orig idx, new name, expr)
    for (name, expr_text) in &claim.defined {
        let expr = parse_poly(expr_text, vars, Domain::Rational).map_err(ModelError::Algebra)?;
        let solved = expr
            .terms()
            .filter(|(m, c)| m.total_degree() == 1 && (c.is_one() || c.neg().is_one()))
            .map(|(m, _)| m.exps().iter().position(|&e| e == 1).unwrap())
            .find(|idx| {
                !basis_support.contains(idx)
                    && !claim.subring.iter().any(|s| s == vars.name(*idx))
                    && !replaced.iter().any(|(r, _, _)| r == idx)
            })
            .ok_or_else(|| {
                ModelError::Schema(format!(
                    "defined variable `{}` has no replaceable unit linear term",
                    name
                ))
            })?;
        replaced.push((solved, name.clone(), expr));
    }
    // main variables: not subring, not base, not replaced
    let subring_set: Vec<&str> = claim.subring.iter().map(|s| s.as_str()).collect();
    let mut main_names: Vec<String> = Vec::new();
    for i in 0..vars.len() {
        let n = vars.name(i);
        if subring_set.contains(&n) {
            continue;
        }
        if replaced.iter().any(|(idx, _, _)| *idx == i) {
            continue;
        }
        main_names.push(n.to_string());
    }
    let param_names: Vec<String> = claim.subring.clone();
    let mut groups: Vec<(String, BlockKind, Vec<String>)> = Vec::new();
    groups.push((
        "main".to_string(),
        BlockKind::Projective,
        main_names.clone(),
    ));
    groups.push(("param".to_string(), BlockKind::Base, param_names.clone()));
    let refs: Vec<(&str, BlockKind, Vec<&str>)> = groups
        .iter()
        .map(|(n, k, v)| (n.as_str(), *k, v.iter().map(|s| s.as_str()).collect()))
        .collect();
    let slices: Vec<(&str, BlockKind, &[&str])> = refs
        .iter()
        .map(|(n, k, v)| (*n, *k, v.as_slice()))
        .collect();
    let new_vars = VariableSet::new(&slices)
        .map_err(|e| ModelError::Schema(format!("freeness coordinates: {}", e)))?;

    // original -> new substitution: replaced variable v with definition
    // `name = expr` maps to (name - (expr - v)) rescaled by the unit
    // coefficient of v in expr
    let mut assignments: Vec<(&str, Polynomial)> = Vec::new();
    for i in 0..vars.len() {
        let n = vars.name(i);
        let image = match replaced.iter().find(|(idx, _, _)| *idx == i) {
            None => parse_poly(n, &new_vars, Domain::Rational).map_err(ModelError::Algebra)?,
            Some((_, new_name, expr)) => {
                // expr = c*v + rest  =>  v = (new_name - rest) / c
                let c = expr.coeff(&crate::monomial::Monomial::var(i, vars.len()));
                let rest = expr
                    .sub(&Polynomial::var(vars, i, Domain::Rational).scale(&c))
                    .expect("ring");
                // transport rest into the new coordinates (it contains no
                // replaced variables for the claims in scope; reject others)
                let mut rest_map: Vec<Option<usize>> = vec![None; vars.len()];
                for j in 0..vars.len() {
                    rest_map[j] = new_vars.index_of(vars.name(j));
                }
                let rest_new = rest.relabel(&new_vars, &rest_map).map_err(|_| {
                    ModelError::Schema("defined variables may not reference each other".into())
                })?;
                let name_poly = parse_poly(new_name, &new_vars, Domain::Rational)
                    .map_err(ModelError::Algebra)?;
                name_poly.sub(&rest_new).expect("ring").scale(&c.inv())
            }
        };
        assignments.push((vars.name(i), image));
    }
    let map = PolyMap::new(vars, &new_vars, Domain::Rational, &assignments)
        .map_err(ModelError::Algebra)?;
    let gens: Vec<Polynomial> = model
        .equations
        .iter()
        .map(|e| map.substitute(e))
        .collect::<Result<_, _>>()
        .map_err(ModelError::Algebra)?;

    let mains: Vec<usize> = new_vars.block("main").unwrap().indices.clone();
    let params: Vec<usize> = new_vars.block("param").unwrap().indices.clone();
    let mut basis = Vec::new();
    for b in &claim.basis {
        let poly = parse_poly(b, &new_vars, Domain::Rational)
            .map_err(|e| ModelError::Schema(format!("basis `{}`: {}", b, e)))?;
        if poly.num_terms() != 1 || !poly.terms().next().unwrap().1.is_one() {
            return Err(ModelError::Schema(format!(
                "basis element `{}` is not a monomial",
                b
            )));
        }
        if poly.multidegree_in(&params) != Some(0) {
            return Err(ModelError::Schema(format!(
                "basis element `{}` involves subring variables",
                b
            )));
        }
        basis.push(poly);
    }
    Ok(FreenessSetup {
        vars: new_vars,
        gens,
        mains,
        params,
        expected: claim.expected_rank,
        basis,
    })
}

// ---------------------------------------------------------------------------
// builtin registry
// ---------------------------------------------------------------------------

const BUILTIN_SOURCES: &[(&str, &str)] = &[
    ("i-ii", include_str!("models/data/i_ii.toml")),
    ("ii-ii", include_str!("models/data/ii_ii.toml")),
    ("iii-ii", include_str!("models/data/iii_ii.toml")),
    ("iv-ii", include_str!("models/data/iv_ii.toml")),
    ("iv-iv-meet", include_str!("models/data/iv_iv_meet.toml")),
    (
        "iv-iv-disjoint",
        include_str!("models/data/iv_iv_disjoint.toml"),
    ),
    ("segre-d2", include_str!("models/data/segre_d2.toml")),
];

/// An ordered, immutable collection of models.
#[derive(Clone)]
pub struct Registry {
    models: Vec<Arc<LocalModel>>,
}

impl Registry {
    pub fn new(models: Vec<Arc<LocalModel>>) -> Registry {
        Registry { models }
    }

    pub fn get(&self, name: &str) -> Option<&Arc<LocalModel>> {
        self.models.iter().find(|m| m.name == name)
    }

    pub fn names(&self) -> Vec<&str> {
        self.models.iter().map(|m| m.name.as_str()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<LocalModel>> {
        self.models.iter()
    }

    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    pub fn push(&mut self, model: LocalModel) {
        self.models.push(Arc::new(model));
    }
}

/// Loads the builtin registry. Every model goes through full load-time
/// validation; a transcription error in the embedded data aborts with the
/// offending row.
pub fn builtin_models() -> Registry {
    let mut models = Vec::new();
    for (name, source) in BUILTIN_SOURCES {
        let model = load_model_str(source)
            .unwrap_or_else(|e| panic!("builtin model `{}` failed validation: {}", name, e));
        assert_eq!(&model.name, name, "registry name mismatch");
        models.push(Arc::new(model));
    }
    Registry::new(models)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_registry_loads_and_validates() {
        let reg = builtin_models();
        assert_eq!(
            reg.names(),
            vec![
                "i-ii",
                "ii-ii",
                "iii-ii",
                "iv-ii",
                "iv-iv-meet",
                "iv-iv-disjoint",
                "segre-d2"
            ]
        );
        let i_ii = reg.get("i-ii").unwrap();
        assert_eq!(i_ii.equations.len(), 20);
        assert!(i_ii.sections.is_some());
        let iii_ii = reg.get("iii-ii").unwrap();
        assert_eq!(iii_ii.equations.len(), 20);
        assert!(iii_ii.sections.is_some());
        let ii_ii = reg.get("ii-ii").unwrap();
        assert_eq!(ii_ii.equations.len(), 2);
        assert_eq!(ii_ii.singularities.len(), 6);
        let meet = reg.get("iv-iv-meet").unwrap();
        assert_eq!(meet.equations.len(), 1);
        let segre = reg.get("segre-d2").unwrap();
        assert_eq!(segre.identities.len(), 1);
    }

    #[test]
    fn duplicate_table_rows_are_kept_distinct() {
        let reg = builtin_models();
        let i_ii = reg.get("i-ii").unwrap();
        let vs = &i_ii.vars;
        let a = parse_poly("x0*x6 - x1*x4", vs, Domain::Rational).unwrap();
        let b = parse_poly("x0*x6 - x2*x3", vs, Domain::Rational).unwrap();
        assert!(i_ii.equations.contains(&a));
        assert!(i_ii.equations.contains(&b));
    }

    #[test]
    fn roundtrip_through_model_file() {
        let reg = builtin_models();
        for model in reg.iter() {
            let text = model.to_toml();
            let reloaded = load_model_str(&text).expect("reload");
            assert_eq!(**model, reloaded, "round trip failed for {}", model.name);
        }
    }

    #[test]
    fn broken_section_fails_with_row_index() {
        let mut doc: ModelDoc = toml::from_str(BUILTIN_SOURCES[0].1).expect("builtin parses");
        // corrupt one equation: x0*x5 - x1*x3 does not vanish on the sections
        doc.equations[0] = "x0*x5 - x1*x3".to_string();
        match model_from_doc(&doc) {
            Err(ModelError::VanishingFailure { index, .. }) => assert_eq!(index, 1),
            other => panic!("expected vanishing failure, got {:?}", other),
        }
    }

    #[test]
    fn model_without_claims_loads() {
        let text = r#"
name = "bare"
base_vars = ["x"]
equations = ["z0^2 + z1^2 - z2^2"]

[[blocks]]
name = "z"
vars = ["z0", "z1", "z2"]
"#;
        let m = load_model_str(text).unwrap();
        assert!(m.applicable_checks().is_empty());
    }

    #[test]
    fn inhomogeneous_equation_is_rejected() {
        let text = r#"
name = "bad"
base_vars = ["x"]
equations = ["z0^2 + z1"]

[[blocks]]
name = "z"
vars = ["z0", "z1"]
"#;
        assert!(matches!(
            load_model_str(text),
            Err(ModelError::NotHomogeneous { index: 1, .. })
        ));
    }

    #[test]
    fn forbidden_divisor_pair_is_rejected() {
        let text = r#"
name = "bad-pair"
base_vars = ["s", "r"]
equations = []

[[blocks]]
name = "z"
vars = ["z0", "z1"]

[[divisors]]
name = "D1"
type = "I"
coordinate = "s"

[[divisors]]
name = "D3"
type = "III"
coordinate = "r"
"#;
        assert!(load_model_str(text).is_err());
    }
}
