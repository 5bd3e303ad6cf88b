use std::collections::HashMap;

use super::{ArrowId, Path, Quiver, QuiverError, VertexId};

/// The contraction of `q` to a vertex subset along a path `h`.
#[derive(Clone, Debug)]
pub struct HRestriction {
    /// Vertices are the kept set, in the given order; arrows are the distinct
    /// segments of `h`, named by joining the original ids with `.`.
    pub quiver: Quiver,
    pub image: Path,
    /// Original word of each restricted arrow.
    pub back_map: Vec<Vec<ArrowId>>,
}

impl HRestriction {
    /// Expands the image back into a word of the original quiver.
    pub fn expand(&self, word: &[ArrowId]) -> Vec<ArrowId> {
        word.iter()
            .flat_map(|a| self.back_map[a.index()].iter().copied())
            .collect()
    }
}

/// Cuts `h` at every visit to `keep`. Each piece runs between kept vertices
/// without touching them inside and becomes one arrow.
pub fn h_restriction(q: &Quiver, h: &Path, keep: &[VertexId]) -> Result<HRestriction, QuiverError> {
    let mut inside = vec![false; q.vertex_count()];
    for &v in keep {
        inside[v.index()] = true;
    }
    for end in [h.tail(), h.head()] {
        if !inside[end.index()] {
            return Err(QuiverError::EndpointOutsideRestriction(
                q.vertex_name(end).to_string(),
            ));
        }
    }

    let mut segments: Vec<Vec<ArrowId>> = Vec::new();
    let mut index: HashMap<Vec<ArrowId>, usize> = HashMap::new();
    let mut image_ids = Vec::new();
    let mut current = Vec::new();
    for &a in h.word() {
        current.push(a);
        if inside[q.head(a).index()] {
            let seg = std::mem::take(&mut current);
            let id = *index.entry(seg.clone()).or_insert_with(|| {
                segments.push(seg);
                segments.len() - 1
            });
            image_ids.push(id);
        }
    }
    debug_assert!(current.is_empty());

    let local = |v: VertexId| keep.iter().position(|&k| k == v).expect("kept vertex");
    let names: Vec<String> = keep.iter().map(|&v| q.vertex_name(v).to_string()).collect();
    let quiver = Quiver::new(
        names.clone(),
        segments.iter().map(|seg| {
            (
                q.word_names(seg).join("."),
                names[local(q.tail(seg[0]))].clone(),
                names[local(q.head(*seg.last().unwrap()))].clone(),
            )
        }),
    )
    .map_err(|_| QuiverError::DuplicateVertex("restriction vertex set".to_string()))?;
    let word: Vec<ArrowId> = image_ids.into_iter().map(|i| ArrowId(i as u16)).collect();
    let image = Path::new(&quiver, Some(VertexId(local(h.tail()) as u32)), word)?;
    Ok(HRestriction {
        quiver,
        image,
        back_map: segments,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The three-vertex quiver without loops.
    fn triangle_pairs() -> Quiver {
        Quiver::new(
            ["u", "v", "w"],
            [
                ("x", "u", "v"),
                ("a", "v", "u"),
                ("y", "v", "w"),
                ("b", "w", "v"),
                ("c", "u", "w"),
                ("z", "w", "u"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn contracts_through_w() {
        let q = triangle_pairs();
        let h = q.parse_path("x,y,z,c,b,a,x,y,b,a").unwrap();
        let keep = [q.vertex_id("u").unwrap(), q.vertex_id("v").unwrap()];
        let r = h_restriction(&q, &h, &keep).unwrap();
        let allowed = ["x", "c.b", "a", "y.z", "c.z", "y.b"];
        for arrow in r.quiver.arrows() {
            assert!(allowed.contains(&arrow.id.as_str()), "{}", arrow.id);
        }
        assert_eq!(r.expand(r.image.word()), h.word());
    }

    #[test]
    fn full_vertex_set_is_identity() {
        let q = triangle_pairs();
        let h = q.parse_path("x,y,z").unwrap();
        let all: Vec<VertexId> = q.vertices().collect();
        let r = h_restriction(&q, &h, &all).unwrap();
        assert_eq!(r.quiver.arrow_count(), 3);
        assert_eq!(r.image.degree(), 3);
    }

    #[test]
    fn two_visits_give_two_arrows() {
        let q = triangle_pairs();
        let h = q.parse_path("x,y,z,c,b,a").unwrap();
        let keep = [q.vertex_id("u").unwrap()];
        let r = h_restriction(&q, &h, &keep).unwrap();
        assert_eq!(r.quiver.arrow_count(), 2);
        assert_eq!(r.image.degree(), 2);
    }

    #[test]
    fn endpoint_outside_is_rejected() {
        let q = triangle_pairs();
        let h = q.parse_path("y,z,x").unwrap();
        let keep = [q.vertex_id("u").unwrap()];
        assert!(matches!(
            h_restriction(&q, &h, &keep),
            Err(QuiverError::EndpointOutsideRestriction(_))
        ));
    }
}
