use super::{ArrowId, Quiver, VertexId};

/// A strongly connected component: its vertices and every arrow with both
/// ends inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<VertexId>,
    pub arrows: Vec<ArrowId>,
}

impl Component {
    pub fn subquiver(&self, q: &Quiver) -> Quiver {
        q.subquiver(&self.vertices, &self.arrows)
    }
}

/// Tarjan's algorithm, iterative. Components come out sorted by their least
/// vertex; vertices and arrows inside a component are ascending.
pub fn scc_decompose(q: &Quiver) -> Vec<Component> {
    let n = q.vertex_count();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in q.arrow_ids() {
        succ[q.tail(a).index()].push(q.head(a).index());
    }

    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp_of = vec![UNSEEN; n];
    let mut n_comps = 0;
    let mut counter = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        // (vertex, next successor position)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < succ[v].len() {
                let w = succ[v][*pos];
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp_of[w] = n_comps;
                    if w == v {
                        break;
                    }
                }
                n_comps += 1;
            }
        }
    }

    let mut comps: Vec<Component> = (0..n_comps)
        .map(|_| Component {
            vertices: Vec::new(),
            arrows: Vec::new(),
        })
        .collect();
    for v in 0..n {
        comps[comp_of[v]].vertices.push(VertexId(v as u32));
    }
    for a in q.arrow_ids() {
        let (t, h) = (q.tail(a).index(), q.head(a).index());
        if comp_of[t] == comp_of[h] {
            comps[comp_of[t]].arrows.push(a);
        }
    }
    comps.sort_by_key(|c| c.vertices[0]);
    comps
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lone_vertex() {
        let q = Quiver::new(["v"], Vec::<(&str, &str, &str)>::new()).unwrap();
        let comps = scc_decompose(&q);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].vertices.len(), 1);
        assert!(q.is_strongly_connected());
    }

    #[test]
    fn two_cycle_is_one_component() {
        let q = Quiver::new(["u", "v"], [("x", "u", "v"), ("y", "v", "u")]).unwrap();
        let comps = scc_decompose(&q);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].vertices.len(), 2);
        assert_eq!(comps[0].arrows.len(), 2);
    }

    #[test]
    fn one_way_arrow_splits() {
        let q = Quiver::new(["u", "v"], [("x", "u", "v")]).unwrap();
        let comps = scc_decompose(&q);
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.arrows.is_empty()));
        assert!(!q.is_strongly_connected());
    }

    #[test]
    fn bridge_arrows_belong_to_no_component() {
        let q = Quiver::new(
            ["a", "b", "c", "d"],
            [
                ("ab", "a", "b"),
                ("ba", "b", "a"),
                ("bc", "b", "c"),
                ("cd", "c", "d"),
                ("dc", "d", "c"),
                ("dd", "d", "d"),
            ],
        )
        .unwrap();
        let comps = scc_decompose(&q);
        assert_eq!(comps.len(), 2);
        let total: usize = comps.iter().map(|c| c.arrows.len()).sum();
        assert_eq!(total, 5);
        assert_eq!(comps[1].subquiver(&q).arrow_count(), 3);
    }
}
