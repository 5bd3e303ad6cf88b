use super::{ArrowId, MultiDegree, Path, Quiver, QuiverError};

/// Longest-cycle search refuses quivers with more vertices than this.
pub const DEFAULT_VERTEX_CEILING: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveCycle {
    /// Rotated to start at its least vertex.
    pub path: Path,
    pub multidegree: MultiDegree,
}

impl PrimitiveCycle {
    pub fn degree(&self) -> usize {
        self.path.degree()
    }

    pub fn arrows(&self) -> &[ArrowId] {
        self.path.word()
    }
}

/// Every primitive closed path up to rotation. Parallel arrows give
/// distinct cycles. Ordered by length, then by word.
pub fn primitive_cycles(q: &Quiver) -> Vec<PrimitiveCycle> {
    let mut out = Vec::new();
    let mut on_path = vec![false; q.vertex_count()];
    let mut word = Vec::new();
    for start in q.vertices() {
        collect_from(q, start.index(), start.index(), &mut on_path, &mut word, &mut out);
    }
    out.sort_by(|a: &PrimitiveCycle, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.path.word().cmp(b.path.word()))
    });
    out
}

fn collect_from(
    q: &Quiver,
    start: usize,
    at: usize,
    on_path: &mut [bool],
    word: &mut Vec<ArrowId>,
    out: &mut Vec<PrimitiveCycle>,
) {
    for a in q.arrows_from(super::VertexId(at as u32)) {
        let h = q.head(a).index();
        if h == start {
            word.push(a);
            let path = Path::from_closed_word(q, word.clone());
            let multidegree = path.multidegree(q);
            out.push(PrimitiveCycle { path, multidegree });
            word.pop();
        } else if h > start && !on_path[h] {
            on_path[h] = true;
            word.push(a);
            collect_from(q, start, h, on_path, word, out);
            word.pop();
            on_path[h] = false;
        }
    }
}

/// `m(Q)`: the length of a longest primitive closed path, with a witness.
///
/// Exact branch-and-bound search over simple cycles; refuses quivers above
/// `ceiling` vertices instead of approximating.
pub fn max_primitive_cycle(q: &Quiver) -> Result<(usize, Option<Path>), QuiverError> {
    max_primitive_cycle_with_ceiling(q, DEFAULT_VERTEX_CEILING)
}

pub fn max_primitive_cycle_with_ceiling(
    q: &Quiver,
    ceiling: usize,
) -> Result<(usize, Option<Path>), QuiverError> {
    let n = q.vertex_count();
    if n > ceiling.min(63) {
        return Err(QuiverError::TooManyVertices {
            vertices: n,
            ceiling: ceiling.min(63),
        });
    }
    // one representative arrow per ordered vertex pair
    let mut adj: Vec<Vec<(usize, ArrowId)>> = vec![Vec::new(); n];
    for a in q.arrow_ids() {
        let (t, h) = (q.tail(a).index(), q.head(a).index());
        if !adj[t].iter().any(|&(w, _)| w == h) {
            adj[t].push((h, a));
        }
    }

    struct Search<'a> {
        adj: &'a [Vec<(usize, ArrowId)>],
        n: usize,
        best: Vec<ArrowId>,
        word: Vec<ArrowId>,
    }

    impl Search<'_> {
        fn dfs(&mut self, start: usize, at: usize, visited: u64) {
            if self.best.len() == self.n {
                return;
            }
            let remaining = (start + 1..self.n)
                .filter(|&w| visited & (1 << w) == 0)
                .count();
            if self.word.len() + 1 + remaining <= self.best.len() {
                return;
            }
            for &(h, a) in &self.adj[at] {
                if h == start {
                    if self.word.len() + 1 > self.best.len() {
                        self.best = self.word.clone();
                        self.best.push(a);
                    }
                } else if h > start && visited & (1 << h) == 0 {
                    self.word.push(a);
                    self.dfs(start, h, visited | (1 << h));
                    self.word.pop();
                }
            }
        }
    }

    let mut search = Search {
        adj: &adj,
        n,
        best: Vec::new(),
        word: Vec::new(),
    };
    for start in 0..n {
        search.dfs(start, start, 1 << start);
    }
    if search.best.is_empty() {
        return Ok((0, None));
    }
    let len = search.best.len();
    Ok((len, Some(Path::from_closed_word(q, search.best))))
}
