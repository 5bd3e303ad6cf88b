//! Rewriting statements checked by exhaustive class search in characteristic 2.
//!
//! Each statement names a target shape; the class of `h` is enumerated with
//! the zero rules switched off and every member is matched against the shape.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{rotate_left, CharMode, Engine, EngineError, DEFAULT_BUDGET};
use crate::quiver::{is_primitive, ArrowId, Path, Quiver, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LemmaName {
    #[serde(rename = "L0")]
    L0,
    #[serde(rename = "star1")]
    Star1,
    #[serde(rename = "star2a")]
    Star2a,
    #[serde(rename = "star2b")]
    Star2b,
    #[serde(rename = "star2c")]
    Star2c,
    #[serde(rename = "2ver-a")]
    TwoVerA,
    #[serde(rename = "2ver-b")]
    TwoVerB,
    #[serde(rename = "3ver-a")]
    ThreeVerA,
    #[serde(rename = "3ver-b")]
    ThreeVerB,
    #[serde(rename = "aaa")]
    Aaa,
    #[serde(rename = "L4")]
    L4,
}

impl LemmaName {
    pub const ALL: [LemmaName; 11] = [
        LemmaName::L0,
        LemmaName::Star1,
        LemmaName::Star2a,
        LemmaName::Star2b,
        LemmaName::Star2c,
        LemmaName::TwoVerA,
        LemmaName::TwoVerB,
        LemmaName::ThreeVerA,
        LemmaName::ThreeVerB,
        LemmaName::Aaa,
        LemmaName::L4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LemmaName::L0 => "L0",
            LemmaName::Star1 => "star1",
            LemmaName::Star2a => "star2a",
            LemmaName::Star2b => "star2b",
            LemmaName::Star2c => "star2c",
            LemmaName::TwoVerA => "2ver-a",
            LemmaName::TwoVerB => "2ver-b",
            LemmaName::ThreeVerA => "3ver-a",
            LemmaName::ThreeVerB => "3ver-b",
            LemmaName::Aaa => "aaa",
            LemmaName::L4 => "L4",
        }
    }
}

impl fmt::Display for LemmaName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LemmaName::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| format!("unknown lemma `{s}`"))
    }
}

/// Named arrows or arrow paths an instance refers to, e.g. `x1`, `a`.
pub type LemmaRoles = BTreeMap<String, Vec<ArrowId>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: LemmaName,
    pub found: bool,
    /// A class member in the target shape, rotated to show it.
    pub witness: Option<Vec<ArrowId>>,
    pub class_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("{lemma}: missing role `{role}`")]
    MissingRole { lemma: LemmaName, role: String },
    #[error("{lemma}: hypothesis failed: {failed}")]
    Hypothesis { lemma: LemmaName, failed: String },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// A target shape for a class member, read on some rotation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `P^k b`: `k` arrows of `family`, then none of them.
    PowerThenFree { family: Vec<ArrowId>, count: usize },
    /// This word up to rotation.
    Word(Vec<ArrowId>),
    /// `s_1 a_1 s_2 a_2 ... s_r a_r` with `s_i` in `family`, the given
    /// segments `a_i`, and some slots pinned to given arrows.
    Slots {
        family: Vec<ArrowId>,
        segments: Vec<Vec<ArrowId>>,
        fixed: Vec<(usize, ArrowId)>,
    },
    /// `P* X Q* Y (X Y)*` for four arrow families.
    TwoVertex {
        p: Vec<ArrowId>,
        x: Vec<ArrowId>,
        q: Vec<ArrowId>,
        y: Vec<ArrowId>,
    },
    /// Starts with the given arrows.
    Prefix(Vec<ArrowId>),
    /// `f g_1 f g_2`: two disjoint occurrences of `f`.
    TwiceDisjoint(Vec<ArrowId>),
    AnyOf(Vec<Shape>),
}

impl Shape {
    /// The rotation of `word` showing this shape, if any.
    pub fn find_rotation(&self, word: &[ArrowId]) -> Option<usize> {
        (0..word.len()).find(|&r| self.matches(&rotate_left(word, r)))
    }

    fn matches(&self, w: &[ArrowId]) -> bool {
        match self {
            Shape::PowerThenFree { family, count } => {
                *count <= w.len()
                    && w[..*count].iter().all(|a| family.contains(a))
                    && !w[*count..].iter().any(|a| family.contains(a))
            }
            Shape::Word(target) => w == target.as_slice(),
            Shape::Slots {
                family,
                segments,
                fixed,
            } => {
                let mut pos = 0;
                for (i, seg) in segments.iter().enumerate() {
                    let Some(&slot) = w.get(pos) else { return false };
                    if !family.contains(&slot) {
                        return false;
                    }
                    if fixed.iter().any(|&(k, a)| k == i && a != slot) {
                        return false;
                    }
                    pos += 1;
                    if w.len() < pos + seg.len() || w[pos..pos + seg.len()] != seg[..] {
                        return false;
                    }
                    pos += seg.len();
                }
                pos == w.len()
            }
            Shape::TwoVertex { p, x, q, y } => {
                let mut i = 0;
                let eat = |i: &mut usize, fam: &[ArrowId]| {
                    let start = *i;
                    while *i < w.len() && fam.contains(&w[*i]) {
                        *i += 1;
                    }
                    *i - start
                };
                let one = |i: &mut usize, fam: &[ArrowId]| {
                    if *i < w.len() && fam.contains(&w[*i]) {
                        *i += 1;
                        true
                    } else {
                        false
                    }
                };
                eat(&mut i, p);
                if !one(&mut i, x) {
                    return false;
                }
                eat(&mut i, q);
                if !one(&mut i, y) {
                    return false;
                }
                while i < w.len() {
                    if !(one(&mut i, x) && one(&mut i, y)) {
                        return false;
                    }
                }
                true
            }
            Shape::Prefix(f) => w.starts_with(f),
            Shape::TwiceDisjoint(f) => {
                let n = w.len();
                let l = f.len();
                if !w.starts_with(f) || 2 * l > n {
                    return false;
                }
                (l..=n - l).any(|j| w[j..j + l] == f[..])
            }
            Shape::AnyOf(shapes) => shapes.iter().any(|s| s.matches(w)),
        }
    }
}

impl Engine<'_> {
    /// A member of the class of `h` (zero rules off) in the given shape.
    pub fn find_shape(&self, h: &Path, shape: &Shape) -> Result<(Option<Vec<ArrowId>>, usize), EngineError> {
        let word = self.check_closed(h)?;
        let class = super::search::class_of(self, word)?;
        let size = class.len();
        for w in class.words() {
            if let Some(r) = shape.find_rotation(w) {
                return Ok((Some(rotate_left(w, r)), size));
            }
        }
        Ok((None, size))
    }
}

struct Ctx<'a> {
    lemma: LemmaName,
    q: &'a Quiver,
    h: &'a Path,
    roles: &'a LemmaRoles,
}

impl Ctx<'_> {
    fn role(&self, name: &str) -> Result<Vec<ArrowId>, LemmaError> {
        self.roles
            .get(name)
            .cloned()
            .filter(|v| !v.is_empty())
            .ok_or_else(|| LemmaError::MissingRole {
                lemma: self.lemma,
                role: name.to_string(),
            })
    }

    fn arrow(&self, name: &str) -> Result<ArrowId, LemmaError> {
        let path = self.role(name)?;
        if path.len() != 1 {
            return Err(self.fail(format!("role `{name}` must be a single arrow")));
        }
        Ok(path[0])
    }

    fn fail(&self, failed: String) -> LemmaError {
        LemmaError::Hypothesis {
            lemma: self.lemma,
            failed,
        }
    }

    fn require(&self, ok: bool, what: impl FnOnce() -> String) -> Result<(), LemmaError> {
        if ok {
            Ok(())
        } else {
            Err(self.fail(what()))
        }
    }

    fn deg(&self, a: ArrowId) -> usize {
        self.h.word().iter().filter(|&&b| b == a).count()
    }

    fn deg_family(&self, fam: &[ArrowId]) -> usize {
        self.h.word().iter().filter(|b| fam.contains(b)).count()
    }

    fn name(&self, a: ArrowId) -> &str {
        self.q.arrow_name(a)
    }

    fn between(&self, u: VertexId, v: VertexId) -> Vec<ArrowId> {
        self.q.arrows_between(u, v)
    }
}

/// Checks the hypotheses of `lemma` on `(q, h, roles)` and searches the
/// class of `h` for the asserted shape.
///
/// Roles: `L0` takes `p` (loops at one vertex); `star1` takes paths `x1 x2
/// x3 a1 a2 a3`; `star2*` take `x1` (and `x2`); `2ver-*` take `x1` (and
/// `y1`); `3ver-*` take `x1 y1`; `aaa` takes the path `a` and optionally
/// `b`; `L4` takes the closed path `a` and the arrow `b`.
pub fn verify_rewrite_lemma(
    q: &Quiver,
    lemma: LemmaName,
    h: &Path,
    roles: &LemmaRoles,
) -> Result<LemmaReport, LemmaError> {
    verify_rewrite_lemma_with_budget(q, lemma, h, roles, DEFAULT_BUDGET)
}

pub fn verify_rewrite_lemma_with_budget(
    q: &Quiver,
    lemma: LemmaName,
    h: &Path,
    roles: &LemmaRoles,
    budget: usize,
) -> Result<LemmaReport, LemmaError> {
    let cx = Ctx { lemma, q, h, roles };
    if h.is_empty() || !h.is_closed() {
        return Err(cx.fail("h must be a non-empty closed path".into()));
    }
    let shape = match lemma {
        LemmaName::L0 => l0_shape(&cx)?,
        LemmaName::Star1 => star1_shape(&cx)?,
        LemmaName::Star2a | LemmaName::Star2b | LemmaName::Star2c => star2_shape(&cx)?,
        LemmaName::TwoVerA | LemmaName::TwoVerB => two_ver_shape(&cx)?,
        LemmaName::ThreeVerA | LemmaName::ThreeVerB => three_ver_shape(&cx)?,
        LemmaName::Aaa => aaa_shape(&cx)?,
        LemmaName::L4 => l4_shape(&cx)?,
    };
    let engine = Engine::new(q, CharMode::Char2).with_budget(budget);
    let (witness, class_size) = engine.find_shape(h, &shape)?;
    Ok(LemmaReport {
        lemma,
        found: witness.is_some(),
        witness,
        class_size,
    })
}

fn l0_shape(cx: &Ctx) -> Result<Shape, LemmaError> {
    let family = cx.role("p")?;
    let v = cx.q.tail(family[0]);
    for &p in &family {
        cx.require(cx.q.tail(p) == v && cx.q.head(p) == v, || {
            format!("`{}` is not a loop at `{}`", cx.name(p), cx.q.vertex_name(v))
        })?;
    }
    Ok(Shape::PowerThenFree {
        count: cx.deg_family(&family),
        family,
    })
}

fn star1_shape(cx: &Ctx) -> Result<Shape, LemmaError> {
    let parts: Vec<Vec<ArrowId>> = ["x1", "a1", "x2", "a2", "x3", "a3"]
        .iter()
        .map(|r| cx.role(r))
        .collect::<Result<_, _>>()?;
    let (u, v) = (cx.q.tail(parts[0][0]), cx.q.head(*parts[0].last().unwrap()));
    for (i, part) in parts.iter().enumerate() {
        let (from, to) = if i % 2 == 0 { (u, v) } else { (v, u) };
        let ok = Path::new(cx.q, None, part.clone()).is_ok()
            && cx.q.tail(part[0]) == from
            && cx.q.head(*part.last().unwrap()) == to;
        cx.require(ok, || {
            let role = ["x1", "a1", "x2", "a2", "x3", "a3"][i];
            format!(
                "`{role}` is not a path from `{}` to `{}`",
                cx.q.vertex_name(from),
                cx.q.vertex_name(to)
            )
        })?;
    }
    cx.require(parts.concat() == cx.h.word(), || "h is not x1 a1 x2 a2 x3 a3".into())?;
    let target = [&parts[4], &parts[1], &parts[0], &parts[3], &parts[2], &parts[5]]
        .into_iter()
        .flatten()
        .copied()
        .collect::<Vec<_>>();
    Ok(Shape::Word(target))
}

fn star2_shape(cx: &Ctx) -> Result<Shape, LemmaError> {
    let x1 = cx.arrow("x1")?;
    let (u, v) = (cx.q.tail(x1), cx.q.head(x1));
    cx.require(u != v, || format!("`{}` is a loop", cx.name(x1)))?;
    let family = cx.between(u, v);
    let w = cx.h.word();
    cx.require(family.contains(&w[0]), || "h does not start with an arrow parallel to x1".into())?;
    let mut segments: Vec<Vec<ArrowId>> = Vec::new();
    for &a in w {
        if family.contains(&a) {
            segments.push(Vec::new());
        } else {
            segments.last_mut().unwrap().push(a);
        }
    }
    let s = segments.len();
    let fixed = match cx.lemma {
        LemmaName::Star2a => {
            cx.require(s >= 3, || format!("only {s} arrows parallel to x1 in h (need 3)"))?;
            cx.require(cx.deg(x1) >= 1, || format!("`{}` does not occur in h", cx.name(x1)))?;
            vec![vec![(0, x1)]]
        }
        LemmaName::Star2b => {
            cx.require(cx.deg(x1) >= 2, || format!("`{}` occurs fewer than twice", cx.name(x1)))?;
            vec![vec![(0, x1), (1, x1)]]
        }
        _ => {
            let x2 = cx.arrow("x2")?;
            cx.require(family.contains(&x2) && x2 != x1, || {
                format!("`{}` is not a second arrow parallel to x1", cx.name(x2))
            })?;
            cx.require(cx.deg(x1) >= 1 && cx.deg(x2) >= 1, || "x1 or x2 does not occur in h".into())?;
            vec![vec![(0, x1), (1, x2)], vec![(0, x2), (1, x1)]]
        }
    };
    Ok(Shape::AnyOf(
        fixed
            .into_iter()
            .map(|fixed| Shape::Slots {
                family: family.clone(),
                segments: segments.clone(),
                fixed,
            })
            .collect(),
    ))
}

fn two_ver_shape(cx: &Ctx) -> Result<Shape, LemmaError> {
    cx.require(cx.q.vertex_count() == 2, || "quiver must have exactly two vertices".into())?;
    let x1 = cx.arrow("x1")?;
    let (u, v) = (cx.q.tail(x1), cx.q.head(x1));
    cx.require(u != v, || format!("`{}` is a loop", cx.name(x1)))?;
    let (p, x, q, y) = (cx.between(u, u), cx.between(u, v), cx.between(v, v), cx.between(v, u));
    let across = cx.deg_family(&x) + cx.deg_family(&y);
    if cx.lemma == LemmaName::TwoVerA {
        cx.require(across >= 1, || "h never crosses between the two vertices".into())?;
        return Ok(Shape::TwoVertex { p, x, q, y });
    }
    let y1 = cx.arrow("y1")?;
    cx.require(y.contains(&y1), || format!("`{}` does not run back along x1", cx.name(y1)))?;
    cx.require(cx.deg(x1) >= 2, || format!("deg of `{}` is below 2", cx.name(x1)))?;
    cx.require(cx.deg(y1) >= 2, || format!("deg of `{}` is below 2", cx.name(y1)))?;
    cx.require(across > 4, || format!("crossing degree {across} is not above 4"))?;
    Ok(Shape::Prefix(vec![x1, y1, x1, y1]))
}

fn three_ver_shape(cx: &Ctx) -> Result<Shape, LemmaError> {
    cx.require(cx.q.vertex_count() == 3, || "quiver must have exactly three vertices".into())?;
    let x1 = cx.arrow("x1")?;
    let y1 = cx.arrow("y1")?;
    let (u, v, w) = (cx.q.tail(x1), cx.q.head(x1), cx.q.head(y1));
    cx.require(cx.q.tail(y1) == v && u != v && v != w && u != w, || {
        "x1 and y1 must run u -> v -> w through three distinct vertices".into()
    })?;
    cx.require(cx.deg(x1) >= 2, || format!("deg of `{}` is below 2", cx.name(x1)))?;
    cx.require(cx.deg(y1) >= 2, || format!("deg of `{}` is below 2", cx.name(y1)))?;
    if cx.lemma == LemmaName::ThreeVerA {
        let g = cx.deg_family(&cx.between(v, v));
        cx.require(g == 0, || format!("h uses loops at the middle vertex {g} times"))?;
    } else {
        let spokes: Vec<ArrowId> = [(u, v), (v, w), (v, u), (w, v)]
            .into_iter()
            .flat_map(|(s, t)| cx.between(s, t))
            .collect();
        let total = cx.deg_family(&spokes);
        cx.require(total > 4, || format!("degree {total} through the middle vertex is not above 4"))?;
    }
    Ok(Shape::TwiceDisjoint(vec![x1, y1]))
}

fn check_distinct_path(cx: &Ctx, a: &[ArrowId]) -> Result<(), LemmaError> {
    cx.require(Path::new(cx.q, None, a.to_vec()).is_ok(), || "`a` is not a path".into())?;
    for (i, x) in a.iter().enumerate() {
        cx.require(!a[..i].contains(x), || format!("`{}` repeats in `a`", cx.name(*x)))?;
        cx.require(cx.deg(*x) >= 2, || format!("deg of `{}` is below 2", cx.name(*x)))?;
    }
    Ok(())
}

fn aaa_shape(cx: &Ctx) -> Result<Shape, LemmaError> {
    let a = cx.role("a")?;
    check_distinct_path(cx, &a)?;
    let outside = cx.h.word().iter().any(|x| !a.contains(x));
    cx.require(outside, || "every arrow of h lies on `a`".into())?;
    if !cx.roles.contains_key("b") {
        return Ok(Shape::Prefix(a));
    }
    let b = cx.arrow("b")?;
    cx.require(cx.deg(b) >= 1 && !a.contains(&b), || "`b` must occur in h and avoid `a`".into())?;
    let prefix = if cx.q.head(b) == cx.q.tail(a[0]) {
        [vec![b], a].concat()
    } else if cx.q.tail(b) == cx.q.head(*a.last().unwrap()) {
        [a, vec![b]].concat()
    } else {
        a
    };
    Ok(Shape::Prefix(prefix))
}

fn l4_shape(cx: &Ctx) -> Result<Shape, LemmaError> {
    let a = cx.role("a")?;
    let b = cx.arrow("b")?;
    check_distinct_path(cx, &a)?;
    let s = a.len();
    cx.require(s >= 2, || "`a` needs at least two arrows".into())?;
    let path = Path::new(cx.q, None, a.clone()).expect("checked path");
    cx.require(path.is_closed() && is_primitive(cx.q, &path), || "`a` is not a primitive cycle".into())?;
    cx.require(cx.deg(b) >= 1 && !a.contains(&b), || "`b` must occur in h and avoid `a`".into())?;
    let (bt, bh) = (cx.q.tail(b), cx.q.head(b));
    cx.require(bt != bh, || "`b` is a loop".into())?;
    // v_i is the tail of a_i
    let v: Vec<VertexId> = a.iter().map(|&x| cx.q.tail(x)).collect();
    let ends_ok = [(bt, bh), (bh, bt)]
        .into_iter()
        .any(|(e, f)| e == v[1] && v.iter().enumerate().any(|(k, &vk)| k != 1 && vk == f));
    cx.require(ends_ok, || "`b` must join v2 to another vertex of `a`".into())?;
    Ok(Shape::TwiceDisjoint(vec![a[0], a[1]]))
}
