//! JSON documents: spaces, causal models, latent-variable models and target
//! families. Writers sort every list and key so output is byte-stable.

use std::collections::BTreeMap;

use finspace::causal::{Cpt, DiscreteCausalModel};
use finspace::graphs::{Dag, HyperModel};
use finspace::FiniteSpace;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// A space as minimal open sets, or as a subbasis of open sets.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_open: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub open_sets: Option<Vec<Vec<String>>>,
}

impl SpaceDoc {
    pub fn from_space(space: &FiniteSpace) -> Self {
        let mut elements: Vec<String> = space.labels().to_vec();
        elements.sort();
        let min_open = (0..space.len())
            .map(|x| {
                let mut m: Vec<String> = space.labels_of(space.min_open(x)).into_iter().map(str::to_owned).collect();
                m.sort();
                (space.label(x).to_owned(), m)
            })
            .collect();
        Self {
            elements,
            min_open: Some(min_open),
            open_sets: None,
        }
    }

    pub fn to_space(&self) -> Result<FiniteSpace, CliError> {
        match (&self.min_open, &self.open_sets) {
            (Some(m), None) => {
                let pairs: Vec<(String, Vec<String>)> = m.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
                Ok(FiniteSpace::from_min_open(&self.elements, &pairs)?)
            }
            (None, Some(o)) => Ok(FiniteSpace::from_open_sets(&self.elements, o)?),
            (None, None) => Ok(FiniteSpace::from_open_sets::<String, Vec<String>>(&self.elements, &[])?),
            (Some(_), Some(_)) => Err(CliError::Invalid(
                "give either `min_open` or `open_sets`, not both".to_owned(),
            )),
        }
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn space_to_json(space: &FiniteSpace) -> String {
    pretty(&SpaceDoc::from_space(space))
}

/// One line, for streams.
pub fn space_to_json_line(space: &FiniteSpace) -> String {
    serde_json::to_string(&SpaceDoc::from_space(space)).expect("serializable")
}

pub fn parse_space(text: &str, origin: &str) -> Result<FiniteSpace, CliError> {
    let doc: SpaceDoc = serde_json::from_str(text).map_err(|e| CliError::from_json(origin, e))?;
    doc.to_space()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CptDoc {
    pub parents: Vec<String>,
    /// Keyed by the parent values joined with commas; `""` for roots.
    pub table: BTreeMap<String, Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDoc {
    pub space: SpaceDoc,
    pub domains: BTreeMap<String, Vec<String>>,
    pub cpts: BTreeMap<String, CptDoc>,
}

/// Every assignment of the given domains, first position most significant.
fn assignments(domains: &[&[String]]) -> Vec<String> {
    let mut out = vec![String::new()];
    for (i, d) in domains.iter().enumerate() {
        out = out
            .iter()
            .flat_map(|prefix| {
                d.iter().map(move |v| if i == 0 { v.clone() } else { format!("{prefix},{v}") })
            })
            .collect();
    }
    out
}

pub fn parse_model(text: &str, origin: &str) -> Result<DiscreteCausalModel, CliError> {
    let doc: ModelDoc = serde_json::from_str(text).map_err(|e| CliError::from_json(origin, e))?;
    let space = doc.space.to_space()?;
    let missing = |what: &str, x: &str| CliError::parse(origin, format!("no {what} for `{x}`"));
    for key in doc.domains.keys().chain(doc.cpts.keys()) {
        space.require(key)?;
    }
    let domains: Vec<Vec<String>> = space
        .labels()
        .iter()
        .map(|x| doc.domains.get(x).cloned().ok_or_else(|| missing("domain", x)))
        .collect::<Result<_, _>>()?;
    let mut cpts = Vec::with_capacity(space.len());
    for x in space.labels() {
        let c = doc.cpts.get(x).ok_or_else(|| missing("cpt", x))?;
        let parents: Vec<usize> = c.parents.iter().map(|p| space.require(p)).collect::<Result<_, _>>()?;
        let doms: Vec<&[String]> = parents.iter().map(|&p| domains[p].as_slice()).collect();
        let keys = assignments(&doms);
        if keys.len() != c.table.len() {
            return Err(CliError::parse(
                origin,
                format!("cpt of `{x}` has {} rows, expected {}", c.table.len(), keys.len()),
            ));
        }
        let table = keys
            .iter()
            .map(|k| {
                c.table
                    .get(k)
                    .cloned()
                    .ok_or_else(|| CliError::parse(origin, format!("cpt of `{x}` has no row `{k}`")))
            })
            .collect::<Result<_, _>>()?;
        cpts.push(Cpt { parents, table });
    }
    Ok(DiscreteCausalModel::new(space, domains, cpts)?)
}

pub fn model_to_json(model: &DiscreteCausalModel) -> String {
    let space = model.space();
    let label = |i: usize| space.label(i).to_owned();
    let domains = (0..space.len()).map(|x| (label(x), model.domains()[x].clone())).collect();
    let cpts = (0..space.len())
        .map(|x| {
            let c = &model.cpts()[x];
            let doms: Vec<&[String]> = c.parents.iter().map(|&p| model.domains()[p].as_slice()).collect();
            let table = assignments(&doms).into_iter().zip(c.table.iter().cloned()).collect();
            (
                label(x),
                CptDoc {
                    parents: c.parents.iter().map(|&p| label(p)).collect(),
                    table,
                },
            )
        })
        .collect();
    pretty(&ModelDoc {
        space: SpaceDoc::from_space(space),
        domains,
        cpts,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperDoc {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
    #[serde(default)]
    pub hyperedges: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub latents: Option<Vec<String>>,
}

pub fn parse_hyper(text: &str, origin: &str) -> Result<HyperModel, CliError> {
    let doc: HyperDoc = serde_json::from_str(text).map_err(|e| CliError::from_json(origin, e))?;
    let base = Dag::new(&doc.vertices, &doc.edges)?;
    Ok(HyperModel::new(base, &doc.hyperedges, doc.latents.as_deref())?)
}

/// Target sets, either bare or with the universe they live in.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum FamilyDoc {
    Sets(Vec<Vec<String>>),
    WithUniverse {
        #[serde(default)]
        universe: Option<Vec<String>>,
        sets: Vec<Vec<String>>,
    },
}

impl FamilyDoc {
    pub fn sets(&self) -> &[Vec<String>] {
        match self {
            FamilyDoc::Sets(s) | FamilyDoc::WithUniverse { sets: s, .. } => s,
        }
    }

    pub fn universe(&self) -> Option<&[String]> {
        match self {
            FamilyDoc::WithUniverse { universe: Some(u), .. } => Some(u),
            _ => None,
        }
    }
}

pub fn parse_family(text: &str, origin: &str) -> Result<FamilyDoc, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::from_json(origin, e))
}

pub fn value_to_json(value: &serde_json::Value) -> String {
    pretty(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assignment_keys_are_lexicographic() {
        let d = vec!["0".to_owned(), "1".to_owned()];
        let e = vec!["a".to_owned(), "b".to_owned(), "c".to_owned()];
        assert_eq!(assignments(&[]), vec![""]);
        assert_eq!(assignments(&[&d, &e]), vec!["0,a", "0,b", "0,c", "1,a", "1,b", "1,c"]);
    }
}
