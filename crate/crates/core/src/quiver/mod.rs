//! Directed multigraphs (quivers), paths in them and multidegrees.
//!
//! Vertex and arrow ids are opaque strings at the boundary and dense
//! indices ([`VertexId`], [`ArrowId`]) everywhere else. A [`Quiver`] is
//! immutable once built.

mod cycles;
mod degrees;
pub(crate) mod euler;
mod multidegree;
mod path;
mod restriction;
mod scc;

pub use cycles::{max_primitive_cycle, primitive_cycles, PrimitiveCycle, DEFAULT_VERTEX_CEILING};
pub use degrees::{path_degrees, PathDegrees};
pub use euler::{closed_paths_with_multidegree, realize_multidegree};
pub use multidegree::MultiDegree;
pub use path::{classify_sd, is_primitive, Path, SdClass};
pub use restriction::{h_restriction, HRestriction};
pub use scc::{scc_decompose, Component};

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow id `{0}`")]
    DuplicateArrow(String),
    #[error("arrow `{arrow}` refers to unknown vertex `{vertex}`")]
    DanglingArrow { arrow: String, vertex: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("arrow `{next}` does not start where `{prev}` ends (position {position})")]
    Incidence {
        position: usize,
        prev: String,
        next: String,
    },
    #[error("empty path needs an anchor vertex")]
    MissingAnchor,
    #[error("anchor `{anchor}` is not the tail of the first arrow `{arrow}`")]
    AnchorMismatch { anchor: String, arrow: String },
    #[error("path is not closed")]
    NotClosed,
    #[error("closed path is not primitive")]
    NotPrimitive,
    #[error("path endpoint `{0}` is outside the restriction vertex set")]
    EndpointOutsideRestriction(String),
    #[error("quiver has {vertices} vertices, above the exhaustive-search ceiling {ceiling}")]
    TooManyVertices { vertices: usize, ceiling: usize },
    #[error("multidegree has {got} entries, quiver has {expected} arrows")]
    MultiDegreeLength { got: usize, expected: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArrowId(pub u16);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl ArrowId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An arrow `tail -> head`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub tail: VertexId,
    pub head: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, VertexId>,
    arrow_index: HashMap<String, ArrowId>,
}

impl Quiver {
    /// Builds a quiver from vertex ids and `(arrow id, tail, head)` triples.
    pub fn new<V, A, S>(vertices: V, arrows: A) -> Result<Self, QuiverError>
    where
        V: IntoIterator<Item = S>,
        A: IntoIterator<Item = (S, S, S)>,
        S: AsRef<str>,
    {
        let mut q = Quiver {
            vertices: Vec::new(),
            arrows: Vec::new(),
            vertex_index: HashMap::new(),
            arrow_index: HashMap::new(),
        };
        for v in vertices {
            let v = v.as_ref();
            if q.vertex_index.contains_key(v) {
                return Err(QuiverError::DuplicateVertex(v.to_string()));
            }
            q.vertex_index
                .insert(v.to_string(), VertexId(q.vertices.len() as u32));
            q.vertices.push(v.to_string());
        }
        for (id, tail, head) in arrows {
            let id = id.as_ref();
            if q.arrow_index.contains_key(id) {
                return Err(QuiverError::DuplicateArrow(id.to_string()));
            }
            let lookup = |name: &str| {
                q.vertex_index
                    .get(name)
                    .copied()
                    .ok_or_else(|| QuiverError::DanglingArrow {
                        arrow: id.to_string(),
                        vertex: name.to_string(),
                    })
            };
            let tail = lookup(tail.as_ref())?;
            let head = lookup(head.as_ref())?;
            assert!(q.arrows.len() < u16::MAX as usize, "too many arrows");
            q.arrow_index
                .insert(id.to_string(), ArrowId(q.arrows.len() as u16));
            q.arrows.push(Arrow {
                id: id.to_string(),
                tail,
                head,
            });
        }
        Ok(q)
    }

    /// One vertex `v` carrying `d` loops named `x1..xd`.
    pub fn bouquet(d: usize) -> Self {
        let names: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
        Quiver::new(
            ["v".to_string()],
            names
                .iter()
                .map(|n| (n.clone(), "v".to_string(), "v".to_string())),
        )
        .expect("bouquet is well formed")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl ExactSizeIterator<Item = ArrowId> {
        (0..self.arrows.len() as u16).map(ArrowId)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.index()]
    }

    pub fn tail(&self, a: ArrowId) -> VertexId {
        self.arrows[a.index()].tail
    }

    pub fn head(&self, a: ArrowId) -> VertexId {
        self.arrows[a.index()].head
    }

    pub fn is_loop(&self, a: ArrowId) -> bool {
        let arrow = self.arrow(a);
        arrow.tail == arrow.head
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.index()]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a.index()].id
    }

    pub fn vertex_id(&self, name: &str) -> Result<VertexId, QuiverError> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| QuiverError::UnknownVertex(name.to_string()))
    }

    pub fn arrow_id(&self, name: &str) -> Result<ArrowId, QuiverError> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| QuiverError::UnknownArrow(name.to_string()))
    }

    /// Arrows leaving `v`, in id order.
    pub fn arrows_from(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrow_ids().filter(move |&a| self.tail(a) == v)
    }

    /// Arrows from `u` to `v`, in id order.
    pub fn arrows_between(&self, u: VertexId, v: VertexId) -> Vec<ArrowId> {
        self.arrow_ids()
            .filter(|&a| self.tail(a) == u && self.head(a) == v)
            .collect()
    }

    pub fn loops_at(&self, v: VertexId) -> Vec<ArrowId> {
        self.arrows_between(v, v)
    }

    /// Parses a comma separated list of arrow ids into a path.
    pub fn parse_path(&self, text: &str) -> Result<Path, QuiverError> {
        let names: Vec<&str> = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        self.path(&names)
    }

    /// A non-empty path from arrow names.
    pub fn path<S: AsRef<str>>(&self, names: &[S]) -> Result<Path, QuiverError> {
        let word = names
            .iter()
            .map(|n| self.arrow_id(n.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Path::new(self, None, word)
    }

    pub fn word_names(&self, word: &[ArrowId]) -> Vec<String> {
        word.iter().map(|&a| self.arrow_name(a).to_string()).collect()
    }

    /// Subquiver on the given vertices and arrows; ids are kept, indices are
    /// renumbered in the given order.
    pub fn subquiver(&self, vertices: &[VertexId], arrows: &[ArrowId]) -> Quiver {
        Quiver::new(
            vertices.iter().map(|&v| self.vertex_name(v).to_string()),
            arrows.iter().map(|&a| {
                let arrow = self.arrow(a);
                (
                    arrow.id.clone(),
                    self.vertex_name(arrow.tail).to_string(),
                    self.vertex_name(arrow.head).to_string(),
                )
            }),
        )
        .expect("subquiver of a well-formed quiver")
    }

    /// Strongly connected in the sense that one closed path visits every
    /// vertex; a single vertex without arrows counts.
    pub fn is_strongly_connected(&self) -> bool {
        let comps = scc_decompose(self);
        comps.len() == 1
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} vertices:", self.vertices.len())?;
        for a in &self.arrows {
            write!(
                f,
                " {}:{}->{}",
                a.id,
                self.vertex_name(a.tail),
                self.vertex_name(a.head)
            )?;
        }
        Ok(())
    }
}
