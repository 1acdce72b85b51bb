//! System definition files.
//!
//! ```json
//! { "backend": "rational", "measures": [ { "atoms": [["0","1"],["1","1"]], "sign": 1 } ],
//!   "touch_points": [] }
//! ```
//!
//! An optional `"second"` block lists the followers of a second system that
//! shares the first measure as its root.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{parse_rational, BigFloat, Rational, Scalar};
use crate::exactnum::bigfloat::{DEFAULT_PRECISION, MIN_PRECISION};

use super::atomic::AtomicMeasure;
use super::discretize::{discretize_weight, Preset};
use super::system::GeneratorChain;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Rational,
    Bigfloat,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomsSpec {
    pub atoms: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<i32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresetSpec {
    pub preset: String,
    #[serde(rename = "N")]
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MeasureSpec {
    Atoms(AtomsSpec),
    Preset(PresetSpec),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SecondSpec {
    pub measures: Vec<MeasureSpec>,
    /// Slots between σ_0 and the first follower, then between followers.
    #[serde(default)]
    pub touch_points: Vec<Option<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    #[serde(default = "default_backend")]
    pub backend: Backend,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision_bits: Option<usize>,
    #[serde(default)]
    pub first_label: usize,
    pub measures: Vec<MeasureSpec>,
    #[serde(default)]
    pub touch_points: Vec<Option<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second: Option<SecondSpec>,
}

fn default_backend() -> Backend {
    Backend::Rational
}

/// Chains read from a file. `second`, when present, starts with the shared root.
#[derive(Clone, Debug)]
pub struct SystemDef<S> {
    pub chain: GeneratorChain<S>,
    pub second: Option<GeneratorChain<S>>,
}

#[derive(Clone, Debug)]
pub enum LoadedSystem {
    Rational(SystemDef<Rational>),
    BigFloat(SystemDef<BigFloat>, usize),
}

impl SystemFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Builds the chains; `precision_override` wins over the file's `precision_bits`.
    pub fn load(&self, precision_override: Option<usize>) -> Result<LoadedSystem> {
        if self.measures.is_empty() {
            return Err(Error::Parse("no measures".into()));
        }
        match self.backend {
            Backend::Rational => {
                let build = |specs: &[MeasureSpec]| -> Result<Vec<AtomicMeasure<Rational>>> {
                    specs.iter().map(|s| rational_measure(s)).collect()
                };
                Ok(LoadedSystem::Rational(self.assemble(build)?))
            }
            Backend::Bigfloat => {
                let prec = precision_override.or(self.precision_bits).unwrap_or(DEFAULT_PRECISION);
                if prec < MIN_PRECISION {
                    return Err(Error::Parse(format!("precision {prec} below {MIN_PRECISION} bits")));
                }
                let build = |specs: &[MeasureSpec]| -> Result<Vec<AtomicMeasure<BigFloat>>> {
                    specs.iter().map(|s| float_measure(s, prec)).collect()
                };
                Ok(LoadedSystem::BigFloat(self.assemble(build)?, prec))
            }
        }
    }

    fn assemble<S: Scalar>(
        &self,
        build: impl Fn(&[MeasureSpec]) -> Result<Vec<AtomicMeasure<S>>>,
    ) -> Result<SystemDef<S>> {
        let measures = build(&self.measures)?;
        let touch = touch_slots(&self.touch_points, measures.len())?;
        let chain = GeneratorChain::new(measures, self.first_label).with_touch_points(touch);
        let second = match &self.second {
            None => None,
            Some(sec) => {
                let mut ms = vec![chain.measures[0].clone()];
                ms.extend(build(&sec.measures)?);
                let touch = touch_slots(&sec.touch_points, ms.len())?;
                Some(GeneratorChain::new(ms, self.first_label).with_touch_points(touch))
            }
        };
        Ok(SystemDef { chain, second })
    }
}

fn touch_slots(raw: &[Option<String>], measures: usize) -> Result<Vec<Option<Rational>>> {
    let slots = measures.saturating_sub(1);
    if raw.len() > slots {
        return Err(Error::Parse(format!("{} touch points for {measures} measures", raw.len())));
    }
    let mut out: Vec<Option<Rational>> =
        raw.iter().map(|t| t.as_deref().map(parse_rational).transpose()).collect::<Result<_>>()?;
    out.resize(slots, None);
    Ok(out)
}

fn parse_atoms(spec: &AtomsSpec) -> Result<Vec<(Rational, Rational)>> {
    spec.atoms
        .iter()
        .map(|[x, w]| Ok((parse_rational(x)?, parse_rational(w)?)))
        .collect()
}

fn check_sign<S: Scalar>(m: AtomicMeasure<S>, sign: Option<i32>) -> Result<AtomicMeasure<S>> {
    match sign {
        Some(s) if s != 1 && s != -1 => Err(Error::Parse(format!("sign must be 1 or -1, got {s}"))),
        Some(s) if s != m.sign() => Err(Error::SignViolation(format!("declared sign {s}, weights have sign {}", m.sign()))),
        _ => Ok(m),
    }
}

fn rational_measure(spec: &MeasureSpec) -> Result<AtomicMeasure<Rational>> {
    match spec {
        MeasureSpec::Atoms(a) => check_sign(AtomicMeasure::new(parse_atoms(a)?)?, a.sign),
        MeasureSpec::Preset(p) => Err(Error::Parse(format!(
            "preset {:?} needs the bigfloat backend",
            p.preset
        ))),
    }
}

fn float_measure(spec: &MeasureSpec, prec: usize) -> Result<AtomicMeasure<BigFloat>> {
    match spec {
        MeasureSpec::Atoms(a) => {
            let atoms = parse_atoms(a)?
                .into_iter()
                .map(|(x, w)| (BigFloat::from_rational(&x, prec), BigFloat::from_rational(&w, prec)))
                .collect();
            check_sign(AtomicMeasure::new(atoms)?, a.sign)
        }
        MeasureSpec::Preset(p) => discretize_weight(Preset::from_name(&p.preset)?, p.n, prec),
    }
}

impl AtomsSpec {
    pub fn from_measure<S: Scalar>(m: &AtomicMeasure<S>) -> Self {
        AtomsSpec {
            atoms: m.atoms().map(|(x, w)| [x.to_string_repr(), w.to_string_repr()]).collect(),
            sign: Some(m.sign()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_file_round_trip() {
        let text = r#"{ "backend": "rational",
            "measures": [ { "atoms": [["1/4","1"],["1/2","1"],["3/4","1"]], "sign": 1 },
                          { "atoms": [["-3/4","1"],["-1/2","1"],["-1/4","1"]] } ],
            "touch_points": ["0"] }"#;
        let f = SystemFile::parse(text).unwrap();
        let LoadedSystem::Rational(def) = f.load(None).unwrap() else { panic!("backend") };
        assert_eq!(def.chain.touch_points, vec![Some(Rational::from_i64(0))]);
        assert_eq!(def.chain.measures[1].positions()[0], parse_rational("-3/4").unwrap());
        let again = SystemFile::parse(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn schema_violations() {
        assert!(matches!(SystemFile::parse(r#"{ "measures": [], "bogus": 1 }"#), Err(Error::Parse(_))));
        assert!(matches!(SystemFile::parse(r#"{ "backend": "decimal", "measures": [] }"#), Err(Error::Parse(_))));
        let f = SystemFile::parse(r#"{ "measures": [ { "atoms": [["0","1"],["1","-1"]] } ] }"#).unwrap();
        assert!(matches!(f.load(None), Err(Error::SignViolation(_))));
        let f = SystemFile::parse(r#"{ "measures": [ { "atoms": [["0","1"]], "sign": -1 } ] }"#).unwrap();
        assert!(matches!(f.load(None), Err(Error::SignViolation(_))));
        let f = SystemFile::parse(r#"{ "measures": [ { "preset": "laguerre", "N": 4 } ] }"#).unwrap();
        assert!(matches!(f.load(None), Err(Error::Parse(_))));
    }

    #[test]
    fn bigfloat_presets_and_second_chain() {
        let text = r#"{ "backend": "bigfloat", "precision_bits": 128,
            "measures": [ { "preset": "arcsine", "N": 4 }, { "preset": "lebesgue", "N": 4 } ],
            "touch_points": ["0"],
            "second": { "measures": [ { "atoms": [["-2.5","0.5"],["-2","1"]] } ] } }"#;
        let f = SystemFile::parse(text).unwrap();
        let LoadedSystem::BigFloat(def, prec) = f.load(None).unwrap() else { panic!("backend") };
        assert_eq!(prec, 128);
        let second = def.second.unwrap();
        assert_eq!(second.measures.len(), 2);
        assert_eq!(second.measures[0], def.chain.measures[0]);
        assert_eq!(second.touch_points, vec![None]);
        let LoadedSystem::BigFloat(_, prec) = f.load(Some(200)).unwrap() else { panic!("backend") };
        assert_eq!(prec, 200);
        assert!(f.load(Some(32)).is_err());
    }
}
