//! Instance descriptions: a TOML document with `[ring]`, `[module]`,
//! `[ideal]` and `[params]` sections, and their construction.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::asymptotics::{EquivalenceOptions, Windows};
use crate::ci_ring::{CIRing, Ideal};
use crate::operators::VarietyWindow;
use crate::poly::{parse_poly, Field, ModOrder, MonoOrder, Poly, PolyRing, Vector};
use crate::resolve::{syzygy, Module};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub ring: RingSpec,
    pub module: ModuleSpec,
    pub ideal: IdealSpec,
    #[serde(default)]
    pub params: Params,
}

fn default_characteristic() -> u32 {
    101
}

/// Either explicit variables and relations, or the family
/// `k[x_1..x_d, z_1..z_c]/(z_1^{a_1}, ..., z_c^{a_c})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    #[serde(default = "default_characteristic")]
    pub characteristic: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub variables: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub degrees: Vec<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Family {
    pub d: usize,
    pub c: usize,
    pub exponents: Vec<u32>,
}

impl Family {
    /// `x` or `x1..xd`, then `z` or `z1..zc`.
    pub fn variables(&self) -> (Vec<String>, Vec<String>) {
        let names = |base: &str, k: usize| -> Vec<String> {
            if k == 1 {
                vec![base.to_string()]
            } else {
                (1..=k).map(|i| format!("{}{}", base, i)).collect()
            }
        };
        (names("x", self.d), names("z", self.c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModuleSpec {
    /// `A(-d_1) ⊕ ... ⊕ A(-d_r)`.
    Free {
        #[serde(default = "zero_degree")]
        degrees: Vec<i32>,
    },
    /// `A/(gens)`.
    Quotient { gens: Vec<String> },
    /// Cokernel of a matrix given by its columns.
    Presentation { degrees: Vec<i32>, columns: Vec<Vec<String>> },
    ResidueField,
    /// `Ω^index` of another construction.
    Syzygy { index: usize, of: Box<ModuleSpec> },
}

fn zero_degree() -> Vec<i32> {
    vec![0]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum IdealSpec {
    Maximal,
    /// The given elements, or the `x` variables of a family ring.
    Parameter {
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        gens: Vec<String>,
    },
    /// `m` times a parameter ideal.
    MaximalTimesParameter {
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        gens: Vec<String>,
    },
    Generators { gens: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Params {
    pub i_max: usize,
    pub n_max: usize,
    pub burn_n: usize,
    pub burn_i: usize,
    /// Resolution length for operators and varieties.
    pub cutoff: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Degree-1 element for `approx` (default: the first variable).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<String>,
    /// Largest syzygy index in the regularity sweep.
    pub sweep_max: usize,
    /// Levels and powers for the Artin–Rees exponent.
    pub ar_levels: usize,
    pub ar_n_max: usize,
    /// Vanishing degrees required past each cohomology end.
    pub margin: usize,
    /// Powers of `I` examined for the stable variety.
    pub power_max: usize,
    /// Powers examined by the Ratliff–Rush closure bound.
    pub h0_n_max: usize,
}

impl Default for Params {
    fn default() -> Self {
        let w = Windows::default();
        Params {
            i_max: w.i_max,
            n_max: w.n_max,
            burn_n: w.burn_n,
            burn_i: w.burn_i,
            cutoff: VarietyWindow::default().cutoff,
            seed: None,
            element: None,
            sweep_max: 6,
            ar_levels: 4,
            ar_n_max: 8,
            margin: 4,
            power_max: 4,
            h0_n_max: 4,
        }
    }
}

impl Params {
    pub fn windows(&self) -> Windows {
        Windows {
            i_max: self.i_max,
            n_max: self.n_max,
            burn_n: self.burn_n,
            burn_i: self.burn_i,
        }
    }

    pub fn equivalence_options(&self) -> EquivalenceOptions {
        EquivalenceOptions {
            windows: self.windows(),
            variety: self.variety(),
            power_max: self.power_max,
            ..EquivalenceOptions::default()
        }
    }

    pub fn variety(&self) -> VarietyWindow {
        VarietyWindow {
            cutoff: self.cutoff,
            ..VarietyWindow::default()
        }
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(before.len(), |p| before.len() - p - 1) + 1;
    (line, col)
}

pub fn parse_instance(text: &str) -> Result<InstanceSpec, CliError> {
    toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((0, 0), |s| line_col(text, s.start));
        CliError::Parse {
            line,
            column,
            message: e.message().to_string(),
        }
    })
}

pub fn emit_instance(spec: &InstanceSpec) -> String {
    toml::to_string(spec).expect("instance specs serialize")
}

/// A constructed instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub spec: InstanceSpec,
    pub ring: Arc<CIRing>,
    pub module: Module,
    pub ideal: Arc<Ideal>,
    /// Variables of a family ring playing the role of parameters.
    pub parameters: Vec<Poly>,
}

fn semantic(msg: impl std::fmt::Display) -> CliError {
    CliError::Semantic(msg.to_string())
}

fn build_ring(spec: &RingSpec) -> Result<(Arc<CIRing>, Vec<Poly>), CiOrCli> {
    let field = Field::new(spec.characteristic).map_err(semantic)?;
    let (names, relations, params) = match &spec.family {
        Some(fam) => {
            if !spec.variables.is_empty() || !spec.relations.is_empty() {
                return Err(semantic("give either a family or explicit variables and relations"));
            }
            if fam.exponents.len() != fam.c || fam.d == 0 {
                return Err(semantic("family needs d >= 1 and one exponent per z variable"));
            }
            let (xs, zs) = fam.variables();
            let rels: Vec<String> = zs.iter().zip(&fam.exponents).map(|(z, a)| format!("{}^{}", z, a)).collect();
            let mut names = xs.clone();
            names.extend(zs);
            (names, rels, xs)
        }
        None => (spec.variables.clone(), spec.relations.clone(), Vec::new()),
    };
    let weights = if spec.degrees.is_empty() {
        vec![1; names.len()]
    } else {
        spec.degrees.clone()
    };
    let ring = Arc::new(PolyRing::new(field, names, weights, MonoOrder::DegRevLex).map_err(semantic)?);
    let rels = relations.iter().map(|s| parse_poly(&ring, s)).collect::<Result<Vec<_>, _>>().map_err(semantic)?;
    let params = params.iter().map(|s| parse_poly(&ring, s).unwrap()).collect();
    let ci = CIRing::new(ring, rels).map_err(semantic)?;
    Ok((ci, params))
}

type CiOrCli = CliError;

fn polys(ring: &PolyRing, gens: &[String]) -> Result<Vec<Poly>, CliError> {
    gens.iter().map(|s| parse_poly(ring, s).map_err(semantic)).collect()
}

fn build_module(ring: &Arc<CIRing>, spec: &ModuleSpec) -> Result<Module, CliError> {
    let r = ring.ring();
    Ok(match spec {
        ModuleSpec::Free { degrees } => Module::free(ring.clone(), degrees.clone()),
        ModuleSpec::Quotient { gens } => Module::cyclic(ring.clone(), &polys(r, gens)?).map_err(semantic)?,
        ModuleSpec::Presentation { degrees, columns } => {
            let cols = columns
                .iter()
                .map(|c| {
                    if c.len() != degrees.len() {
                        return Err(semantic(format!("column of length {} for {} generators", c.len(), degrees.len())));
                    }
                    Ok(Vector::from_polys(r, ModOrder::POT, &polys(r, c)?))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Module::new(ring.clone(), degrees.clone(), cols).map_err(semantic)?
        }
        ModuleSpec::ResidueField => Module::residue_field(ring.clone()),
        ModuleSpec::Syzygy { index, of } => syzygy(&build_module(ring, of)?, *index),
    })
}

fn build_ideal(ring: &Arc<CIRing>, spec: &IdealSpec, params: &[Poly]) -> Result<Arc<Ideal>, CliError> {
    let r = ring.ring();
    let parameters = |gens: &[String]| -> Result<Vec<Poly>, CliError> {
        if gens.is_empty() {
            if params.is_empty() {
                return Err(semantic("parameter ideals need explicit generators outside a family ring"));
            }
            Ok(params.to_vec())
        } else {
            polys(r, gens)
        }
    };
    let gens = match spec {
        IdealSpec::Maximal => return Ok(Ideal::maximal(ring.clone())),
        IdealSpec::Parameter { gens } => parameters(gens)?,
        IdealSpec::MaximalTimesParameter { gens } => {
            let q = parameters(gens)?;
            let mut out = Vec::new();
            for g in &q {
                for v in 0..r.nvars() {
                    out.push(g.mul(r, &Poly::var(r, v)));
                }
            }
            out
        }
        IdealSpec::Generators { gens } => polys(r, gens)?,
    };
    let ideal = Ideal::new(ring.clone(), gens).map_err(semantic)?;
    if !ideal.is_m_primary() {
        return Err(semantic("the ideal must be primary to the maximal ideal"));
    }
    Ok(ideal)
}

impl Instance {
    pub fn build(spec: &InstanceSpec) -> Result<Instance, CliError> {
        let (ring, parameters) = build_ring(&spec.ring)?;
        let module = build_module(&ring, &spec.module)?;
        let ideal = build_ideal(&ring, &spec.ideal, &parameters)?;
        Ok(Instance {
            spec: spec.clone(),
            ring,
            module,
            ideal,
            parameters,
        })
    }

    /// The element used by `approx`: the configured one or the first
    /// variable.
    pub fn element(&self) -> Result<Poly, CliError> {
        match &self.spec.params.element {
            Some(s) => parse_poly(self.ring.ring(), s).map_err(semantic),
            None => Ok(Poly::var(self.ring.ring(), 0)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A1: &str = r#"
[ring]
variables = ["x", "z"]
relations = ["z^2"]

[module]
kind = "quotient"
gens = ["z"]

[ideal]
kind = "generators"
gens = ["x", "z"]
"#;

    #[test]
    fn parse_and_build() {
        let spec = parse_instance(A1).unwrap();
        assert_eq!(spec.ring.characteristic, 101);
        assert_eq!(spec.params, Params::default());
        let inst = Instance::build(&spec).unwrap();
        assert_eq!(inst.module.rank(), 1);
        assert_eq!(parse_instance(&emit_instance(&spec)).unwrap(), spec);
    }

    #[test]
    fn family_ring_with_parameter_ideal() {
        let text = r#"
[ring]
family = { d = 1, c = 2, exponents = [2, 2] }
[module]
kind = "syzygy"
index = 2
of = { kind = "residue-field" }
[ideal]
kind = "maximal-times-parameter"
"#;
        let inst = Instance::build(&parse_instance(text).unwrap()).unwrap();
        assert_eq!(inst.ring.ring().names(), &["x", "z1", "z2"]);
        assert_eq!(inst.module.rank(), 5);
        assert_eq!(inst.ideal.gens().len(), 3);
    }

    #[test]
    fn errors_carry_locations() {
        let bad = A1.replace("[ideal]", "[ideal]\ncolour = 3");
        match parse_instance(&bad) {
            Err(CliError::Parse { line, column, message }) => assert!((10..=12).contains(&line) && message.contains("colour"), "{} {} {}", line, column, message),
            other => panic!("{:?}", other),
        }
        let bad = A1.replace("[module]", "[modul]");
        assert!(matches!(parse_instance(&bad), Err(CliError::Parse { .. })));
        let bad = A1.replace("gens = [\"x\", \"z\"]", "gens = [\"z\"]");
        assert!(matches!(Instance::build(&parse_instance(&bad).unwrap()), Err(CliError::Semantic(_))));
    }
}
