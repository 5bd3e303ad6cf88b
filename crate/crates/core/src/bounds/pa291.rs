use serde::Serialize;
use thiserror::Error;

use crate::quiver::{primitive_cycles, ArrowId, MultiDegree, Path, PrimitiveCycle, Quiver};

/// Search nodes allowed by default.
pub const DEFAULT_DECOMPOSITION_BUDGET: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Pa291Error {
    #[error("path is not closed")]
    NotClosed,
    #[error("no decomposition exists; the path is equivalent to zero")]
    NoDecomposition,
    #[error("decomposition search budget of {0} nodes exhausted")]
    BudgetExhausted(usize),
}

/// A primitive closed path used once, with an arrow of remaining count one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingleTerm {
    pub path: Vec<String>,
    pub arrow: String,
}

/// A primitive closed path used twice, with two arrows of count two in `h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleTerm {
    pub path: Vec<String>,
    pub arrows: [String; 2],
}

/// `mdeg(h) = Σ mdeg(b_i) + 2·Σ mdeg(c_k)` with pairwise different marked
/// arrows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pa291Decomposition {
    pub singles: Vec<SingleTerm>,
    pub doubles: Vec<DoubleTerm>,
    pub r: usize,
    pub t: usize,
    pub d: usize,
}

impl Pa291Decomposition {
    /// Recomputes both sums and the arrow conditions from scratch.
    pub fn verify(&self, q: &Quiver, h: &Path) -> bool {
        let arrows = q.arrow_count();
        let ids = |names: &[String]| -> Option<Vec<ArrowId>> {
            names.iter().map(|s| q.arrow_id(s).ok()).collect()
        };
        let orig = h.multidegree(q);
        let mut sum = MultiDegree::zero(arrows);
        let mut doubled = MultiDegree::zero(arrows);
        let mut marked = Vec::new();
        for c in &self.doubles {
            let Some(word) = ids(&c.path) else { return false };
            let Some(yz) = ids(&c.arrows) else { return false };
            let mu = MultiDegree::of_word(arrows, &word);
            if yz[0] == yz[1] || yz.iter().any(|&a| mu.get(a) == 0 || orig.get(a) != 2) {
                return false;
            }
            doubled = doubled.add(&mu);
            sum = sum.add(&mu.scale(2));
            marked.extend(yz);
        }
        for b in &self.singles {
            let Some(word) = ids(&b.path) else { return false };
            let Ok(x) = q.arrow_id(&b.arrow) else { return false };
            let mu = MultiDegree::of_word(arrows, &word);
            if mu.get(x) == 0 || orig.get(x) as i64 - 2 * doubled.get(x) as i64 != 1 {
                return false;
            }
            sum = sum.add(&mu);
            marked.push(x);
        }
        let distinct = {
            let mut m = marked.clone();
            m.sort();
            m.dedup();
            m.len() == marked.len()
        };
        sum == orig
            && distinct
            && self.r == self.singles.len()
            && self.t == self.doubles.len()
            && self.r + 2 * self.t <= self.d
    }
}

struct Search<'a> {
    q: &'a Quiver,
    cycles: Vec<PrimitiveCycle>,
    orig: MultiDegree,
    budget: usize,
    nodes: usize,
    doubles: Vec<(usize, ArrowId, ArrowId)>,
    singles: Vec<(usize, ArrowId)>,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<(), Pa291Error> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(Pa291Error::BudgetExhausted(self.budget))
        } else {
            Ok(())
        }
    }

    fn take_doubles(&mut self, delta: &MultiDegree) -> Result<bool, Pa291Error> {
        self.tick()?;
        let candidates: Vec<usize> = (0..self.cycles.len())
            .filter(|&i| self.cycles[i].arrows().iter().all(|&a| delta.get(a) >= 2))
            .collect();
        if candidates.is_empty() {
            let base = delta.clone();
            return self.take_singles(delta, &base);
        }
        for i in candidates {
            let word = self.cycles[i].arrows().to_vec();
            let rest = delta
                .checked_sub(&self.cycles[i].multidegree.scale(2))
                .expect("double fits");
            for (p, &y) in word.iter().enumerate() {
                for &z in &word[p + 1..] {
                    if self.orig.get(y) != 2 || self.orig.get(z) != 2 {
                        continue;
                    }
                    self.doubles.push((i, y, z));
                    if self.take_doubles(&rest)? {
                        return Ok(true);
                    }
                    self.doubles.pop();
                }
            }
        }
        Ok(false)
    }

    fn take_singles(&mut self, delta: &MultiDegree, base: &MultiDegree) -> Result<bool, Pa291Error> {
        self.tick()?;
        if delta.is_zero() {
            return Ok(true);
        }
        for i in 0..self.cycles.len() {
            let word = self.cycles[i].arrows().to_vec();
            if word.iter().any(|&a| delta.get(a) == 0) {
                continue;
            }
            let rest = delta.checked_sub(&self.cycles[i].multidegree).expect("single fits");
            for &x in &word {
                if delta.get(x) != 1 || base.get(x) != 1 {
                    continue;
                }
                self.singles.push((i, x));
                if self.take_singles(&rest, base)? {
                    return Ok(true);
                }
                self.singles.pop();
            }
        }
        Ok(false)
    }
}

/// Splits `mdeg(h)` into primitive closed paths taken once or twice: doubles
/// first, by increasing length, then singles, backtracking on dead ends.
pub fn pa291_decompose(q: &Quiver, h: &Path) -> Result<Pa291Decomposition, Pa291Error> {
    pa291_decompose_with_budget(q, h, DEFAULT_DECOMPOSITION_BUDGET)
}

pub fn pa291_decompose_with_budget(
    q: &Quiver,
    h: &Path,
    budget: usize,
) -> Result<Pa291Decomposition, Pa291Error> {
    if !h.is_closed() || h.is_empty() {
        return Err(Pa291Error::NotClosed);
    }
    let orig = h.multidegree(q);
    let mut search = Search {
        q,
        cycles: primitive_cycles(q),
        orig: orig.clone(),
        budget,
        nodes: 0,
        doubles: Vec::new(),
        singles: Vec::new(),
    };
    if !search.take_doubles(&orig)? {
        return Err(Pa291Error::NoDecomposition);
    }
    let names = |w: &[ArrowId]| search.q.word_names(w);
    let doubles: Vec<DoubleTerm> = search
        .doubles
        .iter()
        .map(|&(i, y, z)| DoubleTerm {
            path: names(search.cycles[i].arrows()),
            arrows: [q.arrow_name(y).to_string(), q.arrow_name(z).to_string()],
        })
        .collect();
    let singles: Vec<SingleTerm> = search
        .singles
        .iter()
        .map(|&(i, x)| SingleTerm {
            path: names(search.cycles[i].arrows()),
            arrow: q.arrow_name(x).to_string(),
        })
        .collect();
    Ok(Pa291Decomposition {
        r: singles.len(),
        t: doubles.len(),
        d: q.arrow_count(),
        singles,
        doubles,
    })
}
