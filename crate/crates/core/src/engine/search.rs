use std::collections::VecDeque;

use indexmap::IndexMap;

use super::{
    factor_starts, find_four_factor, find_square, rotate_left, CharMode, Engine, EngineError, Move,
    Sign, SignedWord, Trigger, ZeroCertificate, ZeroDecision, ZeroKind,
};
use crate::quiver::ArrowId;
use crate::words::least_rotation;

struct Node {
    word: u32,
    sign: Sign,
    parent: Option<(u32, Move, Option<Move>)>,
}

/// The explored part of one class: least rotations with the signs reached.
pub(crate) struct Class {
    words: IndexMap<Vec<ArrowId>, [Option<u32>; 2]>,
    nodes: Vec<Node>,
    root_rotation: usize,
}

enum Stop {
    Hit(u32, Trigger),
    Conflict {
        existing: u32,
        parent: u32,
        swap: Move,
        rotate: Option<Move>,
    },
}

impl Class {
    fn trace(&self, mut node: u32) -> Vec<Move> {
        let mut rev = Vec::new();
        while let Some((parent, swap, rotate)) = self.nodes[node as usize].parent {
            if let Some(r) = rotate {
                rev.push(r);
            }
            rev.push(swap);
            node = parent;
        }
        if self.root_rotation != 0 {
            rev.push(Move::Rotate {
                by: self.root_rotation,
            });
        }
        rev.reverse();
        rev
    }

    fn word(&self, node: u32) -> &[ArrowId] {
        let (w, _) = self
            .words
            .get_index(self.nodes[node as usize].word as usize)
            .expect("node word");
        w
    }

    pub(crate) fn sign_of(&self, canonical: &[ArrowId]) -> Option<Sign> {
        let slots = self.words.get(canonical)?;
        if slots[0].is_some() {
            Some(Sign::Plus)
        } else if slots[1].is_some() {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    /// Sorted signed members.
    pub(crate) fn members(&self) -> Vec<SignedWord> {
        let mut out: Vec<SignedWord> = self
            .nodes
            .iter()
            .map(|n| {
                let (w, _) = self.words.get_index(n.word as usize).unwrap();
                SignedWord::new(n.sign, w.clone())
            })
            .collect();
        out.sort();
        out
    }

    pub(crate) fn words(&self) -> impl Iterator<Item = &[ArrowId]> {
        self.words.keys().map(Vec::as_slice)
    }

    pub(crate) fn len(&self) -> usize {
        self.nodes.len()
    }
}

/// Breadth-first search over least rotations. `check` runs on every dequeued
/// word and ends the search when it fires.
fn explore(
    engine: &Engine<'_>,
    start: &[ArrowId],
    stop_on_conflict: bool,
    mut check: impl FnMut(&[ArrowId]) -> Option<Trigger>,
) -> Result<(Class, Option<Stop>), EngineError> {
    let q = engine.quiver;
    let flips = engine.mode == CharMode::CharNot2;
    let r0 = least_rotation(start);
    let mut class = Class {
        words: IndexMap::new(),
        nodes: Vec::new(),
        root_rotation: r0,
    };
    class.words.insert(rotate_left(start, r0), [Some(0), None]);
    class.nodes.push(Node {
        word: 0,
        sign: Sign::Plus,
        parent: None,
    });
    let mut queue = VecDeque::from([0u32]);

    while let Some(id) = queue.pop_front() {
        let word = class.word(id).to_vec();
        if let Some(trigger) = check(&word) {
            return Ok((class, Some(Stop::Hit(id, trigger))));
        }
        let sign = class.nodes[id as usize].sign;
        let n = word.len();
        for v in q.vertices() {
            let starts = factor_starts(q, &word, v);
            let t = starts.len();
            // with two factors an exchange is only a rotation
            if t < 3 {
                continue;
            }
            for i in 0..t {
                let offset = starts[i];
                let mid = starts[(i + 1) % t];
                let end = starts[(i + 2) % t];
                let first = (mid + n - offset) % n;
                let second = (end + n - mid) % n;
                let rotated = rotate_left(&word, offset);
                let mut swapped = rotated[first..first + second].to_vec();
                swapped.extend_from_slice(&rotated[..first]);
                swapped.extend_from_slice(&rotated[first + second..]);
                let raw = rotate_left(&swapped, n - offset);
                let r = least_rotation(&raw);
                let canonical = rotate_left(&raw, r);
                let child_sign = if flips { sign.flip() } else { sign };
                let swap = Move::Swap {
                    offset,
                    first,
                    second,
                };
                let rotate = (r != 0).then_some(Move::Rotate { by: r });

                let entry = class.words.entry(canonical);
                let word_ix = entry.index() as u32;
                let slots = entry.or_insert([None, None]);
                if slots[child_sign.slot()].is_some() {
                    continue;
                }
                if let Some(existing) = slots[child_sign.flip().slot()] {
                    if stop_on_conflict {
                        return Ok((
                            class,
                            Some(Stop::Conflict {
                                existing,
                                parent: id,
                                swap,
                                rotate,
                            }),
                        ));
                    }
                }
                let node = class.nodes.len() as u32;
                slots[child_sign.slot()] = Some(node);
                class.nodes.push(Node {
                    word: word_ix,
                    sign: child_sign,
                    parent: Some((id, swap, rotate)),
                });
                if class.nodes.len() > engine.budget {
                    return Err(EngineError::BudgetExhausted(engine.budget));
                }
                queue.push_back(node);
            }
        }
    }
    Ok((class, None))
}

pub(crate) fn decide_zero(engine: &Engine<'_>, start: &[ArrowId]) -> Result<ZeroDecision, EngineError> {
    let q = engine.quiver;
    if let Some(trigger) = find_four_factor(q, engine.mode, start) {
        return Ok(ZeroDecision {
            zero: true,
            certificate: ZeroCertificate {
                kind: ZeroKind::FourFactor,
                trace: Vec::new(),
                witness: start.to_vec(),
                sign: Sign::Plus,
                trigger: Some(trigger),
            },
            explored: 0,
        });
    }
    let mode = engine.mode;
    let (class, stop) = explore(engine, start, true, |w| find_square(q, mode, w))?;
    let explored = class.len();
    let certificate = match stop {
        None => ZeroCertificate {
            kind: ZeroKind::Nonzero,
            trace: Vec::new(),
            witness: start.to_vec(),
            sign: Sign::Plus,
            trigger: None,
        },
        Some(Stop::Hit(node, trigger)) => ZeroCertificate {
            kind: ZeroKind::SquareFactor,
            trace: class.trace(node),
            witness: class.word(node).to_vec(),
            sign: class.nodes[node as usize].sign,
            trigger: Some(trigger),
        },
        Some(Stop::Conflict {
            existing,
            parent,
            swap,
            rotate,
        }) => {
            let mut other = class.trace(parent);
            other.push(swap);
            other.extend(rotate);
            ZeroCertificate {
                kind: ZeroKind::SignConflict,
                trace: class.trace(existing),
                witness: class.word(existing).to_vec(),
                sign: class.nodes[existing as usize].sign,
                trigger: Some(Trigger::SignConflict { other }),
            }
        }
    };
    Ok(ZeroDecision {
        zero: certificate.kind != ZeroKind::Nonzero,
        certificate,
        explored,
    })
}

/// The whole class, zero rules switched off.
pub(crate) fn class_of(engine: &Engine<'_>, start: &[ArrowId]) -> Result<Class, EngineError> {
    Ok(explore(engine, start, false, |_| None)?.0)
}
