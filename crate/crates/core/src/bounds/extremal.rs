use serde::Serialize;
use thiserror::Error;

use crate::engine::CharMode;
use crate::quiver::{realize_multidegree, MultiDegree, Path, Quiver};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtremalError {
    #[error("m >= 2 violated (m = {0})")]
    CycleTooShort(usize),
    #[error("n >= m violated (n = {n}, m = {m})")]
    TooFewVertices { n: usize, m: usize },
    #[error("d >= {needed} violated (d = {d})")]
    TooFewArrows { d: usize, needed: usize },
}

/// A quiver in which a long closed path stays nonzero.
#[derive(Clone, Debug)]
pub struct ExtremalExample {
    pub quiver: Quiver,
    pub path: Path,
    pub expected_degree: usize,
    pub n: usize,
    pub d: usize,
    pub m: usize,
    pub mode: CharMode,
    /// Parallel arrows in the fan.
    pub fan: usize,
    /// Rungs of the ladder.
    pub rungs: usize,
}

impl ExtremalExample {
    /// `deg(h) / (m·d)`.
    pub fn ratio(&self) -> f64 {
        self.path.degree() as f64 / (self.m * self.d) as f64
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtremalSummary {
    pub n: usize,
    pub d: usize,
    pub m: usize,
    pub mode: CharMode,
    pub degree: usize,
    pub expected_degree: usize,
    pub ratio: f64,
    pub path: Vec<String>,
}

impl From<&ExtremalExample> for ExtremalSummary {
    fn from(e: &ExtremalExample) -> Self {
        ExtremalSummary {
            n: e.n,
            d: e.d,
            m: e.m,
            mode: e.mode,
            degree: e.path.degree(),
            expected_degree: e.expected_degree,
            ratio: e.ratio(),
            path: e.quiver.word_names(e.path.word()),
        }
    }
}

fn spine_names(m: usize) -> Vec<String> {
    (1..m).map(|i| format!("b{i}")).collect()
}

/// A cycle `s0 → s1 → ⋯ → s0` closed by a fan of parallel arrows `a_i` from
/// `s0` to `s1`, with a ladder of 2-cycles `c_j`, `e_j` hanging off `s1`.
fn skeleton(m: usize, k: usize, fan: usize) -> (Vec<String>, Vec<(String, String, String)>) {
    let s = |i: usize| format!("s{}", i % m);
    let w = |j: usize| if j == 0 { s(1) } else { format!("w{j}") };
    let mut vertices: Vec<String> = (0..m).map(s).collect();
    vertices.extend((1..=k).map(w));
    let mut arrows = Vec::new();
    for i in 1..=fan {
        arrows.push((format!("a{i}"), s(0), s(1)));
    }
    for (i, name) in spine_names(m).into_iter().enumerate() {
        arrows.push((name, s(i + 1), s(i + 2)));
    }
    for j in 1..=k {
        arrows.push((format!("c{j}"), w(j - 1), w(j)));
        arrows.push((format!("e{j}"), w(j), w(j - 1)));
    }
    (vertices, arrows)
}

/// Builds the extremal quiver for `(n, d, m)` with its long nonzero path.
///
/// In characteristic 2 the path is `b a_1 b a_2 ⋯ b a_t` with
/// `b = b_1 ⋯ b_{m-1}` and `t = d + m + 1 - 2n`. Otherwise only `a_1` is kept,
/// every vertex is topped up with loops to in-degree three, the remaining
/// `d - 3n` arrows are loops at `s0`, and the path uses each non-extra arrow
/// once.
pub fn build_extremal_example(
    n: usize,
    d: usize,
    m: usize,
    mode: CharMode,
) -> Result<ExtremalExample, ExtremalError> {
    if m < 2 {
        return Err(ExtremalError::CycleTooShort(m));
    }
    if n < m {
        return Err(ExtremalError::TooFewVertices { n, m });
    }
    let k = n - m;
    match mode {
        CharMode::Char2 => {
            let needed = 2 * n - m;
            if d < needed {
                return Err(ExtremalError::TooFewArrows { d, needed });
            }
            let fan = d + m + 1 - 2 * n;
            let (vertices, arrows) = skeleton(m, k, fan);
            let quiver = Quiver::new(vertices, arrows).expect("well-formed extremal quiver");
            let mut names = Vec::new();
            for i in 1..=fan {
                names.extend(spine_names(m));
                names.push(format!("a{i}"));
            }
            let path = quiver.path(&names).expect("closed fan path");
            Ok(ExtremalExample {
                quiver,
                path,
                expected_degree: m * d + m * m + m - 2 * n * m,
                n,
                d,
                m,
                mode,
                fan,
                rungs: k,
            })
        }
        CharMode::CharNot2 => {
            let needed = 3 * n;
            if d < needed {
                return Err(ExtremalError::TooFewArrows { d, needed });
            }
            let (vertices, mut arrows) = skeleton(m, k, 1);
            let mut indegree = vec![0usize; vertices.len()];
            for (_, _, head) in &arrows {
                indegree[vertices.iter().position(|v| v == head).unwrap()] += 1;
            }
            let mut loops = 0;
            for (v, &deg) in vertices.iter().zip(&indegree) {
                for _ in deg..3 {
                    loops += 1;
                    arrows.push((format!("l{loops}"), v.clone(), v.clone()));
                }
            }
            let core = arrows.len();
            debug_assert_eq!(core, 3 * n);
            for i in 1..=d - core {
                arrows.push((format!("f{i}"), "s0".to_string(), "s0".to_string()));
            }
            let quiver = Quiver::new(vertices, arrows).expect("well-formed extremal quiver");
            let mut counts = vec![0u32; d];
            counts[..core].fill(1);
            let path = realize_multidegree(&quiver, &MultiDegree::from_counts(counts))
                .expect("balanced connected core");
            Ok(ExtremalExample {
                quiver,
                path,
                expected_degree: 3 * n,
                n,
                d,
                m,
                mode,
                fan: 1,
                rungs: k,
            })
        }
    }
}

/// The fan path continued through the ladder and back:
/// `b a_1 ⋯ b a_t · c e c · c_k e_k · e` with `c = c_1 ⋯ c_{k-1}` and
/// `e = e_{k-1} ⋯ e_1`. Needs a characteristic-2 example with a ladder.
pub fn ladder_path(example: &ExtremalExample) -> Option<Path> {
    let k = example.rungs;
    if example.mode != CharMode::Char2 || k == 0 {
        return None;
    }
    let c: Vec<String> = (1..k).map(|j| format!("c{j}")).collect();
    let e: Vec<String> = (1..k).rev().map(|j| format!("e{j}")).collect();
    let mut names = example.quiver.word_names(example.path.word());
    names.extend(c.iter().cloned());
    names.extend(e.iter().cloned());
    names.extend(c);
    names.push(format!("c{k}"));
    names.push(format!("e{k}"));
    names.extend(e);
    example.quiver.path(&names).ok()
}
