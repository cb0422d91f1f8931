//! The problem file: a TOML document describing f₀, its weights and the
//! optional data (points, germs, symmetries) the commands work on.

use serde::{Deserialize, Serialize};
use sqh::algebra::{parse_poly, parse_scalar, Monomial, Poly, Scalar, Vars, WeightSystem};
use sqh::{Result, SqhError};

pub const FORMAT_VERSION: u32 = 1;

/// A polynomial either as text (`x^3+y^3+z^7`) or as a list of terms.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolyInput {
    Text(String),
    Terms(Vec<TermInput>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermInput {
    pub coefficient: String,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorInput {
    pub name: String,
    pub images: Vec<PolyInput>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EquivalenceKind {
    Right,
    Contact,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EquivalenceInput {
    pub kind: EquivalenceKind,
    pub t: Vec<String>,
    pub t_prime: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemInput {
    pub format_version: u32,
    pub variables: Vec<String>,
    pub weights: Vec<i64>,
    pub degree: i64,
    pub f0: PolyInput,
    pub conductor: Option<u32>,
    pub seed: Option<u64>,
    pub truncation: Option<i64>,
    pub max_orbit: Option<usize>,
    pub invariant_bound: Option<i64>,
    #[serde(default)]
    pub generators: Vec<GeneratorInput>,
    pub dual_generators: Option<Vec<PolyInput>>,
    #[serde(default)]
    pub points: Vec<Vec<String>>,
    #[serde(default)]
    pub reduce: Vec<PolyInput>,
    #[serde(default)]
    pub equivalence: Vec<EquivalenceInput>,
}

/// The validated problem.
pub struct Problem {
    pub raw: ProblemInput,
    pub vars: Vars,
    pub weights: WeightSystem,
    pub f0: Poly,
}

pub fn poly_from_input(p: &PolyInput, vars: &Vars) -> Result<Poly> {
    match p {
        PolyInput::Text(s) => parse_poly(s, vars),
        PolyInput::Terms(terms) => {
            let mut out = Poly::zero(vars);
            for t in terms {
                if t.exponents.len() != vars.len() {
                    return Err(SqhError::Parse(format!(
                        "term {} has {} exponents, expected {}",
                        t.coefficient,
                        t.exponents.len(),
                        vars.len()
                    )));
                }
                out.add_term(Monomial::new(t.exponents.clone()), &parse_scalar(&t.coefficient)?);
            }
            Ok(out)
        }
    }
}

pub fn point_from_input(p: &[String]) -> Result<Vec<Scalar>> {
    p.iter().map(|s| parse_scalar(s)).collect()
}

impl Problem {
    pub fn from_toml(text: &str) -> Result<Problem> {
        let raw: ProblemInput = toml::from_str(text).map_err(|e| SqhError::Parse(e.to_string()))?;
        if raw.format_version != FORMAT_VERSION {
            return Err(SqhError::Parse(format!(
                "unsupported format_version {}, expected {FORMAT_VERSION}",
                raw.format_version
            )));
        }
        if raw.variables.len() != raw.weights.len() {
            return Err(SqhError::ArityMismatch {
                expected: raw.variables.len(),
                found: raw.weights.len(),
            });
        }
        let vars = Vars::new(raw.variables.clone());
        let weights = WeightSystem::new(raw.weights.clone(), raw.degree)?;
        let f0 = poly_from_input(&raw.f0, &vars)?;
        weights.require_quasihomogeneous(&f0)?;
        Ok(Problem { raw, vars, weights, f0 })
    }
}
