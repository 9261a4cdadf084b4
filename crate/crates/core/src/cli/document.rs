//! The JSON configuration document.
//!
//! ```json
//! {
//!   "dimension": 2,
//!   "denominator": 2,
//!   "components": [{"id": "C1", "alpha": "-1/2"}],
//!   "strata": [
//!     {"subset": [], "class": {"L": "L^2", "hodge": "u^2*v^2"}},
//!     {"subset": ["C1"], "class": {"L": "L + 1"}}
//!   ]
//! }
//! ```
//!
//! Fractions are strings. A component carries either `alpha` or both `nu`
//! and `N`. Surfaces may name blow-up centers under `points`, and
//! `closed_strata` (with dimensions) may be given for the duality check.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::expr::{parse_class, ExprError, Symbols};
use crate::exactring::{format_rational, parse_rational, Rational};
use crate::stratconfig::{
    format_subset, l_to_hodge, ClosedStrataInput, ClosedStratum, ComponentData, MotClass, Multiplicity,
    StratifiedConfig, Subset,
};
use crate::surfblow::{BlowupCenter, SurfaceConfig};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDoc {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<String>,
    #[serde(default, rename = "N", skip_serializing_if = "Option::is_none")]
    pub big_n: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ClassDoc {
    #[serde(default, rename = "L", skip_serializing_if = "Option::is_none")]
    pub l: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hodge: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumDoc {
    pub subset: Vec<String>,
    pub class: ClassDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosedStratumDoc {
    pub subset: Vec<String>,
    pub class: ClassDoc,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub dimension: usize,
    pub denominator: i64,
    pub components: Vec<ComponentDoc>,
    #[serde(default)]
    pub strata: Vec<StratumDoc>,
    /// Named centers, e.g. `"P": "point:C2,C3"`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub points: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_strata: Option<Vec<ClosedStratumDoc>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocError {
    #[error("JSON syntax error at line {line}, column {column}: {msg}")]
    Json { line: usize, column: usize, msg: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{context}: {source}")]
    Expr {
        context: String,
        #[source]
        source: ExprError,
    },
}

impl DocError {
    pub fn is_scaling(&self) -> bool {
        matches!(
            self,
            DocError::Expr {
                source: ExprError::Scaling { .. },
                ..
            }
        )
    }
}

/// A parsed document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedConfig {
    pub config: StratifiedConfig,
    pub points: BTreeMap<String, BlowupCenter>,
    pub closed: Option<ClosedStrataInput>,
}

impl ParsedConfig {
    pub fn surface(&self) -> Result<SurfaceConfig, crate::surfblow::BlowupError> {
        let mut s = SurfaceConfig::new(self.config.clone())?;
        s.points = self.points.clone();
        Ok(s)
    }
}

fn fraction(field: &str, id: &str, text: &str, m: i64) -> Result<Rational, DocError> {
    let q =
        parse_rational(text).ok_or_else(|| DocError::Schema(format!("{field} of {id}: {text:?} is not a fraction")))?;
    if crate::exactring::scaled(&q, m).is_none() {
        return Err(DocError::Expr {
            context: format!("{field} of {id}"),
            source: ExprError::Scaling {
                pos: 0,
                msg: format!("{text} is not a multiple of 1/{m}"),
            },
        });
    }
    Ok(q)
}

fn class_from_doc(doc: &ClassDoc, m: i64, what: &str) -> Result<MotClass, DocError> {
    let parse = |text: &str, symbols, field: &str| {
        parse_class(text, m, symbols).map_err(|source| DocError::Expr {
            context: format!("{field} class of {what}"),
            source,
        })
    };
    let lpoly = doc.l.as_deref().map(|t| parse(t, Symbols::Motivic, "L")).transpose()?;
    let hodge = doc
        .hodge
        .as_deref()
        .map(|t| parse(t, Symbols::Hodge, "hodge"))
        .transpose()?;
    if lpoly.is_none() && hodge.is_none() {
        return Err(DocError::Schema(format!("{what} has neither an L nor a hodge class")));
    }
    Ok(MotClass { lpoly, hodge })
}

fn subset_from(ids: &[String], what: &str) -> Result<Subset, DocError> {
    let s: Subset = ids.iter().cloned().collect();
    if s.len() != ids.len() {
        return Err(DocError::Schema(format!("{what} lists a component twice")));
    }
    Ok(s)
}

impl ConfigDocument {
    pub fn from_json(text: &str) -> Result<ConfigDocument, DocError> {
        serde_json::from_str(text).map_err(|e| {
            let msg = e.to_string();
            match e.classify() {
                serde_json::error::Category::Data => DocError::Schema(msg),
                _ => DocError::Json {
                    line: e.line(),
                    column: e.column(),
                    msg,
                },
            }
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Builds and validates the configuration.
    pub fn to_config(&self) -> Result<ParsedConfig, DocError> {
        let m = self.denominator;
        if m <= 0 {
            return Err(DocError::Schema(format!("denominator {m} must be positive")));
        }
        let mut c = StratifiedConfig::new(self.dimension, m);
        for comp in &self.components {
            let mult = match (&comp.alpha, &comp.nu, &comp.big_n) {
                (Some(a), None, None) => Multiplicity::Alpha(fraction("alpha", &comp.id, a, m)?),
                (None, Some(nu), Some(n)) => Multiplicity::Resolution {
                    nu: fraction("nu", &comp.id, nu, m)?,
                    big_n: fraction("N", &comp.id, n, m)?,
                },
                _ => {
                    return Err(DocError::Schema(format!(
                        "component {} needs exactly one of alpha or (nu, N)",
                        comp.id
                    )))
                }
            };
            c.components.push(ComponentData {
                id: comp.id.clone(),
                mult,
            });
        }
        for stratum in &self.strata {
            let key = subset_from(&stratum.subset, "stratum")?;
            if c.open_strata.contains_key(&key) {
                return Err(DocError::Schema(format!(
                    "stratum {} listed twice",
                    format_subset(&key)
                )));
            }
            let class = class_from_doc(&stratum.class, m, &format!("stratum {}", format_subset(&key)))?;
            c.open_strata.insert(key, class);
        }
        let mut points = BTreeMap::new();
        for (name, spec) in &self.points {
            let center: BlowupCenter = spec
                .parse()
                .map_err(|e| DocError::Schema(format!("point {name}: {e}")))?;
            points.insert(name.clone(), center);
        }
        let closed = match &self.closed_strata {
            None => None,
            Some(list) => {
                let mut closed = BTreeMap::new();
                for s in list {
                    let key = subset_from(&s.subset, "closed stratum")?;
                    let class = class_from_doc(&s.class, m, &format!("closed stratum {}", format_subset(&key)))?;
                    closed.insert(key, ClosedStratum { class, dim: s.dim });
                }
                let input = ClosedStrataInput {
                    n: self.dimension,
                    m,
                    closed,
                };
                let problems = input.validate();
                if !problems.is_empty() {
                    return Err(DocError::Schema(problems.join("; ")));
                }
                let open = input.open_from_closed();
                if self.strata.is_empty() {
                    c.open_strata = open;
                } else if open != c.open_strata {
                    return Err(DocError::Schema("closed strata disagree with the open strata".into()));
                }
                Some(input)
            }
        };
        let report = c.validate();
        if !report.is_valid() {
            return Err(DocError::Schema(report.to_string()));
        }
        Ok(ParsedConfig {
            config: c,
            points,
            closed,
        })
    }

    pub fn from_config(c: &StratifiedConfig) -> ConfigDocument {
        let components = c
            .components
            .iter()
            .map(|comp| match &comp.mult {
                Multiplicity::Alpha(a) => ComponentDoc {
                    id: comp.id.clone(),
                    alpha: Some(format_rational(a)),
                    nu: None,
                    big_n: None,
                },
                Multiplicity::Resolution { nu, big_n } => ComponentDoc {
                    id: comp.id.clone(),
                    alpha: None,
                    nu: Some(format_rational(nu)),
                    big_n: Some(format_rational(big_n)),
                },
            })
            .collect();
        let mut keys: Vec<&Subset> = c.open_strata.keys().collect();
        keys.sort_by_key(|k| k.len());
        let strata = keys
            .into_iter()
            .map(|key| (key, &c.open_strata[key]))
            .map(|(key, class)| StratumDoc {
                subset: key.iter().cloned().collect(),
                class: class_doc(class, c.m),
            })
            .collect();
        ConfigDocument {
            dimension: c.n,
            denominator: c.m,
            components,
            strata,
            points: BTreeMap::new(),
            closed_strata: None,
        }
    }

    pub fn from_parsed(p: &ParsedConfig) -> ConfigDocument {
        let mut doc = ConfigDocument::from_config(&p.config);
        doc.points = p.points.iter().map(|(k, v)| (k.clone(), v.to_string())).collect();
        doc.closed_strata = p.closed.as_ref().map(|cs| {
            cs.closed
                .iter()
                .map(|(key, s)| ClosedStratumDoc {
                    subset: key.iter().cloned().collect(),
                    class: class_doc(&s.class, cs.m),
                    dim: s.dim,
                })
                .collect()
        });
        doc
    }
}

fn class_doc(class: &MotClass, m: i64) -> ClassDoc {
    ClassDoc {
        l: class.lpoly.as_ref().map(|p| p.render(m)),
        hodge: class.hodge.as_ref().map(|p| p.render(m)),
    }
}

/// Parses a document into a validated configuration.
pub fn parse_config(text: &str) -> Result<ParsedConfig, DocError> {
    ConfigDocument::from_json(text)?.to_config()
}

/// Fills in the Hodge class `L -> uv` where only `L` is given.
pub fn with_hodge_classes(c: &StratifiedConfig) -> StratifiedConfig {
    let mut out = c.clone();
    for class in out.open_strata.values_mut() {
        if class.hodge.is_none() {
            class.hodge = class.lpoly.as_ref().map(l_to_hodge);
        }
    }
    out
}
