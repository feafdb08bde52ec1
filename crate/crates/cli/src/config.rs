//! Shift-family configuration files.
//!
//! JSON with every number written as an exact fraction string (`"p/q"` or
//! `"p"`); decimal floats are rejected at parse time. A family is a base
//! sequence plus an ordered list of transforms. The `power` transform
//! expands a family into all pieces of the operator power, so building a
//! config yields a *list* of labeled sequences.

use serde::Deserialize;

use wshift::exactmath::{parse_rat, Rat, UniPoly};
use wshift::measures::{Atom, DensityTerm, Measure};
use wshift::weights::{TailRule, WeightSequenceSq};

use crate::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyConfig {
    pub base: BaseConfig,
    #[serde(default)]
    pub transforms: Vec<TransformConfig>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BaseConfig {
    /// Squared weights `numerator(n)/denominator(n)` at absolute index `n`
    /// past the prefix; coefficients ascending by degree.
    RationalTail {
        numerator: Vec<String>,
        denominator: Vec<String>,
        #[serde(default)]
        prefix: Vec<String>,
    },
    /// A probability measure: the sequence of its moment ratios.
    Measure {
        #[serde(default)]
        atoms: Vec<AtomConfig>,
        #[serde(default)]
        density_terms: Vec<DensityConfig>,
    },
    /// Constant squared weight.
    Constant { c: String },
    /// Explicit squared weights, then a constant tail.
    Explicit { prefix: Vec<String>, then_constant: String },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomConfig {
    pub at: String,
    pub mass: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityConfig {
    pub coeff: String,
    pub exponent: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TransformConfig {
    /// Prepend a squared weight.
    Backstep { s: String },
    /// Expand into all pieces of the l-th power.
    Power { l: usize },
    /// Select one packet sequence.
    Packet { l: usize, i: usize },
    /// Entrywise product with another (single-piece) family.
    Schur { other: Box<FamilyConfig> },
}

/// One labeled sequence produced by a config.
pub struct Piece {
    pub label: String,
    pub seq: WeightSequenceSq,
}

fn parse_field(s: &str, field: &str) -> Result<Rat, CliError> {
    parse_rat(s).map_err(|e| CliError::Parse(format!("{field}: {e}")))
}

fn parse_list(xs: &[String], field: &str) -> Result<Vec<Rat>, CliError> {
    xs.iter()
        .enumerate()
        .map(|(i, s)| parse_field(s, &format!("{field}[{i}]")))
        .collect()
}

impl BaseConfig {
    pub fn build(&self) -> Result<WeightSequenceSq, CliError> {
        match self {
            BaseConfig::RationalTail { numerator, denominator, prefix } => {
                let num = UniPoly::with_var("n", parse_list(numerator, "base.numerator")?);
                let den = UniPoly::with_var("n", parse_list(denominator, "base.denominator")?);
                let prefix = parse_list(prefix, "base.prefix")?;
                let offset = prefix.len();
                WeightSequenceSq::base(prefix, TailRule::RationalFunction { num, den, offset })
                    .map_err(CliError::Family)
            }
            BaseConfig::Measure { .. } => {
                let mu = self.build_measure()?.expect("measure base");
                mu.shift().map_err(CliError::Family)
            }
            BaseConfig::Constant { c } => {
                WeightSequenceSq::constant(parse_field(c, "base.c")?).map_err(CliError::Family)
            }
            BaseConfig::Explicit { prefix, then_constant } => {
                let prefix = parse_list(prefix, "base.prefix")?;
                let c = parse_field(then_constant, "base.then_constant")?;
                WeightSequenceSq::base(prefix, TailRule::Constant(c)).map_err(CliError::Family)
            }
        }
    }

    /// The measure representing this base, when one is known: an explicit
    /// measure, a constant `c` (point mass at `c`), or a rational tail
    /// recognized as the `2t dt` or `dt` moment-ratio family.
    pub fn build_measure(&self) -> Result<Option<Measure>, CliError> {
        match self {
            BaseConfig::Measure { atoms, density_terms } => {
                let atoms = atoms
                    .iter()
                    .map(|a| {
                        Ok(Atom {
                            location: parse_field(&a.at, "atom.at")?,
                            mass: parse_field(&a.mass, "atom.mass")?,
                        })
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                let densities = density_terms
                    .iter()
                    .map(|d| {
                        Ok(DensityTerm {
                            coeff: parse_field(&d.coeff, "density.coeff")?,
                            exponent: parse_field(&d.exponent, "density.exponent")?,
                        })
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                let mu = Measure::new(atoms, densities).map_err(CliError::Family)?;
                Ok(Some(mu))
            }
            BaseConfig::Constant { c } => {
                let c = parse_field(c, "base.c")?;
                // point mass at c, representable only inside [0, 1]
                if c > Rat::from_integer(1.into()) {
                    return Ok(None);
                }
                Measure::point_mass(c).map(Some).map_err(CliError::Family)
            }
            BaseConfig::RationalTail { numerator, denominator, prefix } if prefix.is_empty() => {
                let num = UniPoly::with_var("n", parse_list(numerator, "base.numerator")?);
                let den = UniPoly::with_var("n", parse_list(denominator, "base.denominator")?);
                // (n+2)/(n+3) <=> 2t dt; (n+1)/(n+2) <=> dt — up to a common
                // scalar, compared as cross-multiplied polynomials.
                let lin = |a: i64| UniPoly::new(vec![wshift::exactmath::rat_int(a), Rat::from_integer(1.into())]);
                if &num * &lin(3) == &den * &lin(2) {
                    Ok(Some(Measure::bergman()))
                } else if &num * &lin(2) == &den * &lin(1) {
                    Ok(Some(Measure::lebesgue()))
                } else {
                    Ok(None)
                }
            }
            _ => Ok(None),
        }
    }
}

impl FamilyConfig {
    /// Parse a config from JSON text.
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    /// Build the labeled sequences this config denotes.
    pub fn build(&self) -> Result<Vec<Piece>, CliError> {
        let mut pieces = vec![Piece { label: String::new(), seq: self.base.build()? }];
        for t in &self.transforms {
            pieces = apply_transform(pieces, t)?;
        }
        if pieces.len() == 1 && pieces[0].label.is_empty() {
            pieces[0].label = "sequence".into();
        }
        Ok(pieces)
    }

    /// Build, insisting on a single sequence.
    pub fn build_single(&self) -> Result<WeightSequenceSq, CliError> {
        let mut pieces = self.build()?;
        if pieces.len() != 1 {
            return Err(CliError::Usage(format!(
                "expected a single sequence but the config expands to {} pieces",
                pieces.len()
            )));
        }
        Ok(pieces.remove(0).seq)
    }
}

fn apply_transform(pieces: Vec<Piece>, t: &TransformConfig) -> Result<Vec<Piece>, CliError> {
    let mut out = Vec::new();
    match t {
        TransformConfig::Backstep { s } => {
            let s = parse_field(s, "backstep.s")?;
            for p in pieces {
                out.push(Piece {
                    label: p.label,
                    seq: p.seq.backstep(&s).map_err(CliError::Family)?,
                });
            }
        }
        TransformConfig::Power { l } => {
            if *l == 0 {
                return Err(CliError::Usage("power l must be >= 1".into()));
            }
            for p in pieces {
                for (i, seq) in p.seq.power_decompose(*l).into_iter().enumerate() {
                    let label = if p.label.is_empty() {
                        format!("piece{i}")
                    } else {
                        format!("{}.piece{i}", p.label)
                    };
                    out.push(Piece { label, seq });
                }
            }
        }
        TransformConfig::Packet { l, i } => {
            if *l == 0 {
                return Err(CliError::Usage("packet l must be >= 1".into()));
            }
            for p in pieces {
                out.push(Piece {
                    label: p.label,
                    seq: p.seq.packet(*l, *i).map_err(CliError::Family)?,
                });
            }
        }
        TransformConfig::Schur { other } => {
            let factor = other.build_single()?;
            for p in pieces {
                out.push(Piece { label: p.label, seq: p.seq.schur(&factor) });
            }
        }
    }
    Ok(out)
}

/// Is this config the back-step power family base (the `2t dt` shift),
/// possibly under a `power` transform? Needed by the `pqh` threshold mode,
/// which is exact only for that family.
pub fn bergman_power_base(config: &FamilyConfig) -> Result<Option<usize>, CliError> {
    let is_bergman = matches!(config.base.build_measure()?, Some(mu) if mu == Measure::bergman());
    if !is_bergman {
        return Ok(None);
    }
    match config.transforms.as_slice() {
        [] => Ok(Some(1)),
        [TransformConfig::Power { l }] => Ok(Some(*l)),
        _ => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use wshift::exactmath::rat;

    const BERGMAN: &str = r#"{
        "base": {"kind": "rational_tail", "numerator": ["2", "1"], "denominator": ["3", "1"]}
    }"#;

    #[test]
    fn bergman_rational_tail_roundtrip() {
        let cfg = FamilyConfig::from_json(BERGMAN).unwrap();
        let w = cfg.build_single().unwrap();
        assert_eq!(w.weight_sq(0), rat(2, 3));
        assert_eq!(w.moment(3), rat(2, 5));
        assert_eq!(bergman_power_base(&cfg).unwrap(), Some(1));
    }

    #[test]
    fn measure_base_and_transforms() {
        let cfg = FamilyConfig::from_json(
            r#"{
                "base": {"kind": "measure", "density_terms": [{"coeff": "2", "exponent": "1"}]},
                "transforms": [{"kind": "backstep", "s": "9/16"}, {"kind": "power", "l": 2}]
            }"#,
        )
        .unwrap();
        let pieces = cfg.build().unwrap();
        assert_eq!(pieces.len(), 2);
        assert_eq!(pieces[0].label, "piece0");
        assert_eq!(pieces[0].seq.weight_sq(0), rat(9, 16) * rat(2, 3));
    }

    #[test]
    fn floats_rejected() {
        let cfg = FamilyConfig::from_json(
            r#"{"base": {"kind": "constant", "c": "0.5"}}"#,
        )
        .unwrap();
        assert!(matches!(cfg.build(), Err(CliError::Parse(_))));
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(FamilyConfig::from_json(
            r#"{"base": {"kind": "constant", "c": "1", "extra": 3}}"#
        )
        .is_err());
    }

    #[test]
    fn schur_transform_builds() {
        let cfg = FamilyConfig::from_json(
            r#"{
                "base": {"kind": "constant", "c": "1"},
                "transforms": [{"kind": "schur", "other": {
                    "base": {"kind": "rational_tail", "numerator": ["2","1"], "denominator": ["3","1"]}
                }}]
            }"#,
        )
        .unwrap();
        let w = cfg.build_single().unwrap();
        assert_eq!(w.weight_sq(1), rat(3, 4));
    }

    #[test]
    fn lebesgue_tail_recognized() {
        let cfg = FamilyConfig::from_json(
            r#"{"base": {"kind": "rational_tail", "numerator": ["1", "1"], "denominator": ["2", "1"]}}"#,
        )
        .unwrap();
        let mu = cfg.base.build_measure().unwrap().unwrap();
        assert_eq!(mu, Measure::lebesgue());
    }

    #[test]
    fn constant_measure_only_inside_unit_interval() {
        let inside = FamilyConfig::from_json(r#"{"base": {"kind": "constant", "c": "1/2"}}"#).unwrap();
        assert!(inside.base.build_measure().unwrap().is_some());
        let outside = FamilyConfig::from_json(r#"{"base": {"kind": "constant", "c": "3/2"}}"#).unwrap();
        assert!(outside.base.build_measure().unwrap().is_none());
    }
}
