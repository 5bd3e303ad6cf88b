use std::fmt;

use super::{ArrowId, Quiver, VertexId};

/// Arrow-indexed occurrence counts `δ = (δ_a)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiDegree(Vec<u32>);

impl MultiDegree {
    pub fn zero(arrows: usize) -> Self {
        MultiDegree(vec![0; arrows])
    }

    pub fn from_counts(counts: Vec<u32>) -> Self {
        MultiDegree(counts)
    }

    pub fn of_word(arrows: usize, word: &[ArrowId]) -> Self {
        let mut d = MultiDegree::zero(arrows);
        for &a in word {
            d.0[a.index()] += 1;
        }
        d
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, a: ArrowId) -> u32 {
        self.0[a.index()]
    }

    pub fn set(&mut self, a: ArrowId, value: u32) {
        self.0[a.index()] = value;
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&c| c as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Arrows with `δ_a >= 1`.
    pub fn support(&self) -> Vec<ArrowId> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| ArrowId(i as u16))
            .collect()
    }

    /// Vertices touched by the support, ascending.
    pub fn support_vertices(&self, q: &Quiver) -> Vec<VertexId> {
        let mut seen = vec![false; q.vertex_count()];
        for a in self.support() {
            seen[q.tail(a).index()] = true;
            seen[q.head(a).index()] = true;
        }
        seen.iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| VertexId(i as u32))
            .collect()
    }

    /// Incoming count equals outgoing count at every vertex.
    pub fn is_balanced(&self, q: &Quiver) -> bool {
        let mut flow = vec![0i64; q.vertex_count()];
        for a in q.arrow_ids() {
            let c = self.get(a) as i64;
            flow[q.head(a).index()] += c;
            flow[q.tail(a).index()] -= c;
        }
        flow.iter().all(|&f| f == 0)
    }

    /// Sum of counts over arrows ending at `v`: the vertex degree of any
    /// closed path with this multidegree.
    pub fn in_degree(&self, q: &Quiver, v: VertexId) -> u32 {
        q.arrow_ids()
            .filter(|&a| q.head(a) == v)
            .map(|a| self.get(a))
            .sum()
    }

    /// The support is a strongly connected subquiver (and non-empty).
    pub fn support_is_strongly_connected(&self, q: &Quiver) -> bool {
        let arrows = self.support();
        if arrows.is_empty() {
            return false;
        }
        let vertices = self.support_vertices(q);
        q.subquiver(&vertices, &arrows).is_strongly_connected()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &MultiDegree) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &MultiDegree) -> Option<MultiDegree> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(MultiDegree)
    }

    pub fn add(&self, other: &MultiDegree) -> MultiDegree {
        MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: u32) -> MultiDegree {
        MultiDegree(self.0.iter().map(|a| a * k).collect())
    }

    /// Every vector of the given length with entries summing to `total`,
    /// in lexicographic order.
    pub fn all_of_total(arrows: usize, total: u32) -> Vec<MultiDegree> {
        fn go(rest: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<MultiDegree>) {
            if slots == 1 {
                cur.push(rest);
                out.push(MultiDegree(cur.clone()));
                cur.pop();
                return;
            }
            for c in 0..=rest {
                cur.push(c);
                go(rest - c, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if arrows == 0 {
            if total == 0 {
                out.push(MultiDegree(Vec::new()));
            }
            return out;
        }
        go(total, arrows, &mut Vec::with_capacity(arrows), &mut out);
        out
    }

    /// Every vector `μ <= self`, zero and `self` included, in lexicographic
    /// order.
    pub fn sub_degrees(&self) -> Vec<MultiDegree> {
        let mut out = vec![MultiDegree(Vec::with_capacity(self.0.len()))];
        for &bound in &self.0 {
            out = out
                .into_iter()
                .flat_map(|m| {
                    (0..=bound).map(move |c| {
                        let mut next = m.0.clone();
                        next.push(c);
                        MultiDegree(next)
                    })
                })
                .collect();
        }
        out
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> MultiDegreeDisplay<'a> {
        MultiDegreeDisplay { q, d: self }
    }
}

pub struct MultiDegreeDisplay<'a> {
    q: &'a Quiver,
    d: &'a MultiDegree,
}

impl fmt::Display for MultiDegreeDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .d
            .support()
            .into_iter()
            .map(|a| format!("{}:{}", self.q.arrow_name(a), self.d.get(a)))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balance_and_support() {
        let q = Quiver::new(["u", "v"], [("x", "u", "v"), ("y", "v", "u"), ("p", "u", "u")])
            .unwrap();
        let ok = MultiDegree::from_counts(vec![2, 2, 5]);
        assert!(ok.is_balanced(&q));
        assert!(ok.support_is_strongly_connected(&q));
        let bad = MultiDegree::from_counts(vec![1, 2, 0]);
        assert!(!bad.is_balanced(&q));
        let loop_only = MultiDegree::from_counts(vec![0, 0, 3]);
        assert!(loop_only.support_is_strongly_connected(&q));
        assert_eq!(loop_only.support_vertices(&q), vec![VertexId(0)]);
        assert_eq!(ok.in_degree(&q, VertexId(0)), 7);
    }

    #[test]
    fn arithmetic() {
        let a = MultiDegree::from_counts(vec![3, 1]);
        let b = MultiDegree::from_counts(vec![1, 1]);
        assert_eq!(a.checked_sub(&b), Some(MultiDegree::from_counts(vec![2, 0])));
        assert_eq!(b.checked_sub(&a), None);
        assert!(b.le(&a));
        assert_eq!(b.scale(2).add(&b).total(), 6);
    }

    #[test]
    fn enumerations() {
        let all = MultiDegree::all_of_total(3, 4);
        assert_eq!(all.len(), 15);
        assert!(all.iter().all(|m| m.total() == 4));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let subs = MultiDegree::from_counts(vec![2, 0, 1]).sub_degrees();
        assert_eq!(subs.len(), 6);
        assert_eq!(subs[0], MultiDegree::zero(3));
        assert_eq!(subs[5], MultiDegree::from_counts(vec![2, 0, 1]));
    }
}
