//! JSON forms of quivers, paths and multidegrees.
//!
//! ```json
//! {"vertices": ["u", "v"], "arrows": [{"id": "x", "tail": "u", "head": "v"}]}
//! {"anchor": "u", "word": ["x", "y"]}
//! {"x": 2, "y": 1}
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quiver::{MultiDegree, Path, Quiver, QuiverError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub id: String,
    pub tail: String,
    pub head: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<String>,
    pub word: Vec<String>,
}

impl QuiverSpec {
    pub fn build(&self) -> Result<Quiver, QuiverError> {
        Quiver::new(
            self.vertices.iter().map(String::as_str),
            self.arrows
                .iter()
                .map(|a| (a.id.as_str(), a.tail.as_str(), a.head.as_str())),
        )
    }
}

impl From<&Quiver> for QuiverSpec {
    fn from(q: &Quiver) -> Self {
        QuiverSpec {
            vertices: q.vertices().map(|v| q.vertex_name(v).to_string()).collect(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowSpec {
                    id: a.id.clone(),
                    tail: q.vertex_name(a.tail).to_string(),
                    head: q.vertex_name(a.head).to_string(),
                })
                .collect(),
        }
    }
}

impl PathSpec {
    pub fn build(&self, q: &Quiver) -> Result<Path, QuiverError> {
        let anchor = self.anchor.as_deref().map(|a| q.vertex_id(a)).transpose()?;
        let word = self
            .word
            .iter()
            .map(|a| q.arrow_id(a))
            .collect::<Result<Vec<_>, _>>()?;
        Path::new(q, anchor, word)
    }

    pub fn of(q: &Quiver, p: &Path) -> Self {
        PathSpec {
            anchor: Some(q.vertex_name(p.tail()).to_string()),
            word: q.word_names(p.word()),
        }
    }
}

pub fn quiver_from_json(text: &str) -> Result<Quiver, IoError> {
    let spec: QuiverSpec = serde_json::from_str(text)?;
    Ok(spec.build()?)
}

pub fn quiver_to_json(q: &Quiver) -> String {
    serde_json::to_string_pretty(&QuiverSpec::from(q)).expect("quiver serializes")
}

pub fn path_from_json(q: &Quiver, text: &str) -> Result<Path, IoError> {
    let spec: PathSpec = serde_json::from_str(text)?;
    Ok(spec.build(q)?)
}

/// Arrows left out count zero.
pub fn multidegree_from_json(q: &Quiver, text: &str) -> Result<MultiDegree, IoError> {
    let map: BTreeMap<String, u32> = serde_json::from_str(text)?;
    multidegree_from_map(q, &map)
}

pub fn multidegree_from_map(q: &Quiver, map: &BTreeMap<String, u32>) -> Result<MultiDegree, IoError> {
    let mut d = MultiDegree::zero(q.arrow_count());
    for (name, &count) in map {
        d.set(q.arrow_id(name)?, count);
    }
    Ok(d)
}

/// Non-zero entries only.
pub fn multidegree_to_map(q: &Quiver, d: &MultiDegree) -> BTreeMap<String, u32> {
    d.support()
        .into_iter()
        .map(|a| (q.arrow_name(a).to_string(), d.get(a)))
        .collect()
}
