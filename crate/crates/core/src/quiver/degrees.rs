use super::{MultiDegree, Path, Quiver};

/// All degree statistics of a path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathDegrees {
    /// `deg(a)`, the number of arrows.
    pub degree: usize,
    /// `deg_v(a)` per vertex, including the tail correction for open paths.
    pub vertex: Vec<usize>,
    /// `deg°_v(a)`: visits to `v` strictly inside the path.
    pub interior: Vec<usize>,
    /// `deg_b(a)` per arrow.
    pub multidegree: MultiDegree,
}

pub fn path_degrees(q: &Quiver, p: &Path) -> PathDegrees {
    let n = q.vertex_count();
    let word = p.word();
    let mut vertex = vec![0usize; n];
    let mut interior = vec![0usize; n];
    if word.is_empty() {
        vertex[p.tail().index()] = 1;
        return PathDegrees {
            degree: 0,
            vertex,
            interior,
            multidegree: MultiDegree::zero(q.arrow_count()),
        };
    }
    for (i, &a) in word.iter().enumerate() {
        let h = q.head(a).index();
        vertex[h] += 1;
        if i + 1 < word.len() {
            interior[h] += 1;
        }
    }
    // An open path also touches its tail once.
    if p.tail() != p.head() {
        vertex[p.tail().index()] += 1;
    }
    PathDegrees {
        degree: word.len(),
        vertex,
        interior,
        multidegree: p.multidegree(q),
    }
}
