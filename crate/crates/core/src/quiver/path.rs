use std::fmt;

use super::{ArrowId, MultiDegree, Quiver, QuiverError, VertexId};

/// A path `a_1 ... a_s` read left to right: `a_1` is traversed first.
///
/// The anchor is the tail of the path; for the empty path `1_v` it is the
/// only information carried.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    anchor: VertexId,
    end: VertexId,
    word: Vec<ArrowId>,
}

impl Path {
    /// Checks consecutive incidence. `anchor` is required for an empty word
    /// and must match the tail of the first arrow otherwise.
    pub fn new(q: &Quiver, anchor: Option<VertexId>, word: Vec<ArrowId>) -> Result<Self, QuiverError> {
        let Some(&first) = word.first() else {
            let anchor = anchor.ok_or(QuiverError::MissingAnchor)?;
            return Ok(Path::empty(anchor));
        };
        if let Some(anchor) = anchor {
            if anchor != q.tail(first) {
                return Err(QuiverError::AnchorMismatch {
                    anchor: q.vertex_name(anchor).to_string(),
                    arrow: q.arrow_name(first).to_string(),
                });
            }
        }
        for (i, pair) in word.windows(2).enumerate() {
            if q.head(pair[0]) != q.tail(pair[1]) {
                return Err(QuiverError::Incidence {
                    position: i + 1,
                    prev: q.arrow_name(pair[0]).to_string(),
                    next: q.arrow_name(pair[1]).to_string(),
                });
            }
        }
        Ok(Path {
            anchor: q.tail(first),
            end: q.head(*word.last().unwrap()),
            word,
        })
    }

    /// The empty path `1_v`.
    pub fn empty(v: VertexId) -> Self {
        Path {
            anchor: v,
            end: v,
            word: Vec::new(),
        }
    }

    /// Builds a closed path from a word already known to be a closed walk.
    pub(crate) fn from_closed_word(q: &Quiver, word: Vec<ArrowId>) -> Self {
        debug_assert!(!word.is_empty());
        let anchor = q.tail(word[0]);
        debug_assert_eq!(q.head(*word.last().unwrap()), anchor);
        Path {
            anchor,
            end: anchor,
            word,
        }
    }

    pub fn word(&self) -> &[ArrowId] {
        &self.word
    }

    pub fn into_word(self) -> Vec<ArrowId> {
        self.word
    }

    /// `deg(a) = s`.
    pub fn degree(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// `a''`, the tail of the first arrow.
    pub fn tail(&self) -> VertexId {
        self.anchor
    }

    /// `a'`, the head of the last arrow.
    pub fn head(&self) -> VertexId {
        self.end
    }

    pub fn is_closed(&self) -> bool {
        self.anchor == self.end
    }

    /// Concatenation `self · other`; `None` when `self' != other''`.
    /// Empty paths act as identities.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.end != other.anchor {
            return None;
        }
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Some(Path {
            anchor: self.anchor,
            end: other.end,
            word,
        })
    }

    /// Cyclic rotation of a closed path so that it starts at position `k`.
    pub fn rotate(&self, q: &Quiver, k: usize) -> Path {
        assert!(self.is_closed(), "only closed paths rotate");
        if self.word.is_empty() {
            return self.clone();
        }
        let k = k % self.word.len();
        let mut word = self.word[k..].to_vec();
        word.extend_from_slice(&self.word[..k]);
        Path::from_closed_word(q, word)
    }

    /// The vertices `a_1'', a_1', ..., a_s'` as a set, in first-visit order.
    pub fn vertex_set(&self, q: &Quiver) -> Vec<VertexId> {
        let mut out = vec![self.anchor];
        for &a in &self.word {
            let h = q.head(a);
            if !out.contains(&h) {
                out.push(h);
            }
        }
        out
    }

    pub fn multidegree(&self, q: &Quiver) -> MultiDegree {
        MultiDegree::of_word(q.arrow_count(), &self.word)
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> PathDisplay<'a> {
        PathDisplay { q, path: self }
    }
}

pub struct PathDisplay<'a> {
    q: &'a Quiver,
    path: &'a Path,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.word.is_empty() {
            return write!(f, "1_{}", self.q.vertex_name(self.path.anchor));
        }
        let names = self.q.word_names(&self.path.word);
        write!(f, "{}", names.join(","))
    }
}

/// A closed path is primitive when it visits each of its vertices once.
pub fn is_primitive(q: &Quiver, p: &Path) -> bool {
    if !p.is_closed() || p.is_empty() {
        return false;
    }
    let mut seen = vec![false; q.vertex_count()];
    for &a in p.word() {
        let h = q.head(a).index();
        if seen[h] {
            return false;
        }
        seen[h] = true;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SdClass {
    /// Every arrow has count at least 1 and some arrow has count exactly 1.
    Single,
    /// Every arrow has count at least 2.
    Double,
    Neither,
}

/// Classifies a primitive closed path against a multidegree.
pub fn classify_sd(q: &Quiver, p: &Path, delta: &MultiDegree) -> Result<SdClass, QuiverError> {
    if !is_primitive(q, p) {
        return Err(QuiverError::NotPrimitive);
    }
    let counts: Vec<u32> = p.word().iter().map(|&a| delta.get(a)).collect();
    let min = counts.iter().copied().min().unwrap_or(0);
    Ok(match min {
        0 => SdClass::Neither,
        1 => SdClass::Single,
        _ => SdClass::Double,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Quiver {
        Quiver::new(
            ["u", "v", "w"],
            [("a", "u", "v"), ("b", "v", "w"), ("c", "w", "u"), ("p", "u", "u")],
        )
        .unwrap()
    }

    #[test]
    fn incidence_error_names_arrows() {
        let q = triangle();
        let err = q.parse_path("a,c").unwrap_err();
        assert_eq!(
            err,
            QuiverError::Incidence {
                position: 1,
                prev: "a".into(),
                next: "c".into()
            }
        );
    }

    #[test]
    fn empty_path_is_identity_for_concat() {
        let q = triangle();
        let ab = q.parse_path("a,b").unwrap();
        let u = q.vertex_id("u").unwrap();
        let w = q.vertex_id("w").unwrap();
        assert_eq!(Path::empty(u).concat(&ab).unwrap(), ab);
        assert_eq!(ab.concat(&Path::empty(w)).unwrap(), ab);
        assert!(ab.concat(&Path::empty(u)).is_none());
        assert_eq!(Path::empty(u).degree(), 0);
        assert!(Path::empty(u).is_closed());
    }

    #[test]
    fn loop_and_its_square() {
        let q = triangle();
        assert!(is_primitive(&q, &q.parse_path("p").unwrap()));
        assert!(!is_primitive(&q, &q.parse_path("p,p").unwrap()));
        assert!(is_primitive(&q, &q.parse_path("a,b,c").unwrap()));
        assert!(!is_primitive(&q, &q.parse_path("a,b,c,p").unwrap()));
    }

    #[test]
    fn single_and_double() {
        let q = triangle();
        let abc = q.parse_path("a,b,c").unwrap();
        let d = |v: [u32; 4]| MultiDegree::from_counts(v.to_vec());
        assert_eq!(classify_sd(&q, &abc, &d([2, 2, 2, 0])).unwrap(), SdClass::Double);
        assert_eq!(classify_sd(&q, &abc, &d([1, 2, 2, 0])).unwrap(), SdClass::Single);
        assert_eq!(classify_sd(&q, &abc, &d([0, 2, 2, 0])).unwrap(), SdClass::Neither);
        let pp = q.parse_path("p,p").unwrap();
        assert_eq!(
            classify_sd(&q, &pp, &d([0, 0, 0, 2])),
            Err(QuiverError::NotPrimitive)
        );
    }

    #[test]
    fn rotation_keeps_closedness() {
        let q = triangle();
        let h = q.parse_path("a,b,c,p").unwrap();
        let r = h.rotate(&q, 1);
        assert_eq!(r.display(&q).to_string(), "b,c,p,a");
        assert!(r.is_closed());
        assert_eq!(r.tail(), q.vertex_id("v").unwrap());
    }
}
