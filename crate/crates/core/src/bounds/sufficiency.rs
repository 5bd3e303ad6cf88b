use serde::Serialize;

use crate::quiver::{classify_sd, primitive_cycles, Path, Quiver, SdClass};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Sufficiency {
    /// Every double primitive path leaves a non-empty, not strongly
    /// connected remainder, so `h ≢ 0` in characteristic 2.
    SufficientNonzero { doubles: usize },
    /// Some double primitive path leaves an empty or strongly connected
    /// remainder.
    Inconclusive { double: Vec<String> },
}

impl Sufficiency {
    pub fn is_sufficient(&self) -> bool {
        matches!(self, Sufficiency::SufficientNonzero { .. })
    }
}

/// A characteristic-2 nonzero certificate that needs no class search.
pub fn sufficiency_nonzero(q: &Quiver, h: &Path) -> Sufficiency {
    let delta = h.multidegree(q);
    let mut doubles = 0;
    for a in primitive_cycles(q) {
        if classify_sd(q, &a.path, &delta) != Ok(SdClass::Double) {
            continue;
        }
        doubles += 1;
        let rest = delta
            .checked_sub(&a.multidegree.scale(2))
            .expect("double path fits twice");
        if rest.is_zero() || rest.support_is_strongly_connected(q) {
            return Sufficiency::Inconclusive {
                double: q.word_names(a.arrows()),
            };
        }
    }
    Sufficiency::SufficientNonzero { doubles }
}
