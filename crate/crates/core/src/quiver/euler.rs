use std::collections::VecDeque;
use std::ops::ControlFlow;

use super::{ArrowId, MultiDegree, Path, Quiver};
use crate::words::is_canonical_rotation;

/// A closed path with multidegree exactly `delta`, if one exists.
///
/// Feasible iff `delta` is non-zero, balanced at every vertex, and its support
/// is strongly connected. The circuit is built with Hierholzer's algorithm
/// starting from the least support vertex and consuming arrows in id order,
/// so the answer is deterministic.
pub fn realize_multidegree(q: &Quiver, delta: &MultiDegree) -> Option<Path> {
    if delta.len() != q.arrow_count()
        || delta.is_zero()
        || !delta.is_balanced(q)
        || !delta.support_is_strongly_connected(q)
    {
        return None;
    }
    let mut out: Vec<VecDeque<ArrowId>> = vec![VecDeque::new(); q.vertex_count()];
    for a in delta.support() {
        for _ in 0..delta.get(a) {
            out[q.tail(a).index()].push_back(a);
        }
    }
    let start = delta.support_vertices(q)[0];
    let mut stack: Vec<(usize, Option<ArrowId>)> = vec![(start.index(), None)];
    let mut circuit = Vec::with_capacity(delta.total());
    while let Some(&(v, _)) = stack.last() {
        if let Some(a) = out[v].pop_front() {
            stack.push((q.head(a).index(), Some(a)));
        } else {
            let (_, via) = stack.pop().unwrap();
            if let Some(a) = via {
                circuit.push(a);
            }
        }
    }
    circuit.reverse();
    debug_assert_eq!(circuit.len(), delta.total());
    Some(Path::from_closed_word(q, circuit))
}

/// Every closed path with multidegree `delta`, one per rotation class, each
/// given as its least rotation, in lexicographic order.
pub fn closed_paths_with_multidegree(q: &Quiver, delta: &MultiDegree) -> Vec<Path> {
    let mut out = Vec::new();
    let _ = for_each_closed_word(q, delta, |w| {
        out.push(Path::from_closed_word(q, w.to_vec()));
        ControlFlow::<()>::Continue(())
    });
    out
}

/// Visits the least rotation of every closed walk with multidegree `delta`.
pub(crate) fn for_each_closed_word<B>(
    q: &Quiver,
    delta: &MultiDegree,
    mut visit: impl FnMut(&[ArrowId]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if delta.is_zero() || !delta.is_balanced(q) || !delta.support_is_strongly_connected(q) {
        return ControlFlow::Continue(());
    }
    let support = delta.support();
    // the least rotation starts with the smallest letter present
    let first = support[0];
    let mut remaining = delta.counts().to_vec();
    remaining[first.index()] -= 1;
    let mut word = vec![first];
    let total = delta.total();
    walk(
        q,
        &support,
        q.tail(first).index(),
        q.head(first).index(),
        total - 1,
        &mut remaining,
        &mut word,
        &mut visit,
    )
}

#[allow(clippy::too_many_arguments)]
fn walk<B>(
    q: &Quiver,
    support: &[ArrowId],
    start: usize,
    at: usize,
    left: usize,
    remaining: &mut [u32],
    word: &mut Vec<ArrowId>,
    visit: &mut impl FnMut(&[ArrowId]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if left == 0 {
        if at == start && is_canonical_rotation(word) {
            return visit(word);
        }
        return ControlFlow::Continue(());
    }
    for &a in support {
        if remaining[a.index()] == 0 || q.tail(a).index() != at {
            continue;
        }
        remaining[a.index()] -= 1;
        word.push(a);
        let flow = walk(q, support, start, q.head(a).index(), left - 1, remaining, word, visit);
        word.pop();
        remaining[a.index()] += 1;
        flow?;
    }
    ControlFlow::Continue(())
}
