use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::echelon::Echelon;
use super::field::{Field, FieldKind, Gf2, Gf3, Rational};
use super::matrix::{path_product, GMat};
use super::poly::Poly;
use crate::quiver::{closed_paths_with_multidegree, ArrowId, MultiDegree, Quiver};

/// `σ_k(c)` for a closed word `c`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Generator {
    pub k: usize,
    pub word: Vec<ArrowId>,
}

/// Products of at least two generators of one multidegree, with the
/// coefficients of any solved combination kept.
pub struct Ansatz<F: Field> {
    pub tuples: Vec<Vec<Generator>>,
    products: Vec<Poly<F>>,
    echelon: Echelon<F>,
}

fn is_periodic(w: &[ArrowId]) -> bool {
    let n = w.len();
    (1..n).any(|d| n % d == 0 && w.iter().zip(w.iter().skip(d)).all(|(a, b)| a == b))
}

/// `σ_k(c)` over aperiodic closed words: powers add nothing, since `tr(u^r)`
/// and `det(u^r)` are polynomials in `tr(u)` and `det(u)`.
fn generators(q: &Quiver, target: &MultiDegree) -> Vec<(Generator, MultiDegree)> {
    let mut out = Vec::new();
    for mu in target.sub_degrees() {
        if mu.is_zero() || !mu.is_balanced(q) {
            continue;
        }
        for k in 1..=2 {
            let weighted = mu.scale(k as u32);
            if !weighted.le(target) {
                continue;
            }
            for c in closed_paths_with_multidegree(q, &mu) {
                if is_periodic(c.word()) {
                    continue;
                }
                out.push((
                    Generator {
                        k,
                        word: c.into_word(),
                    },
                    weighted.clone(),
                ));
            }
        }
    }
    out.sort();
    out
}

fn tuples(
    gens: &[(Generator, MultiDegree)],
    from: usize,
    rest: &MultiDegree,
    chosen: &mut Vec<Generator>,
    out: &mut Vec<Vec<Generator>>,
) {
    if rest.is_zero() {
        if chosen.len() >= 2 {
            out.push(chosen.clone());
        }
        return;
    }
    for (i, (g, d)) in gens.iter().enumerate().skip(from) {
        if let Some(next) = rest.checked_sub(d) {
            chosen.push(g.clone());
            tuples(gens, i, &next, chosen, out);
            chosen.pop();
        }
    }
}

impl<F: Field> Ansatz<F> {
    /// Enumerates every factor tuple of total multidegree `target`.
    pub fn new(q: &Quiver, target: &MultiDegree) -> Self {
        let gens = generators(q, target);
        let mut all = Vec::new();
        tuples(&gens, 0, target, &mut Vec::new(), &mut all);
        let mut echelon = Echelon::tracking();
        let mut products = Vec::with_capacity(all.len());
        for t in &all {
            let mut p = Poly::one(4 * q.arrow_count());
            for g in t {
                p = &p * &path_product::<F>(q, &g.word).sigma(g.k);
            }
            echelon.insert(p.clone());
            products.push(p);
        }
        Ansatz {
            tuples: all,
            products,
            echelon,
        }
    }

    /// Coefficients `c_i` with `value = Σ c_i · tuple_i`, checked by
    /// recombining the products from scratch.
    pub fn solve(&self, value: &Poly<F>) -> Option<Vec<(usize, F)>> {
        let combo = self.echelon.solve(value)?;
        let mut rebuilt = Poly::zero(value.nvars());
        for (&i, c) in &combo {
            rebuilt.add_scaled(c, &self.products[i]);
        }
        assert_eq!(&rebuilt, value, "ansatz recombination differs from the target");
        Some(combo.into_iter().collect())
    }

    /// The solved combination written with `tr` and `det`.
    pub fn render(&self, q: &Quiver, combo: &[(usize, F)]) -> String {
        if combo.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = combo
            .iter()
            .map(|(i, c)| {
                let factors: Vec<String> = self.tuples[*i]
                    .iter()
                    .map(|g| {
                        let name = if g.k == 1 { "tr" } else { "det" };
                        format!("{name}({})", q.word_names(&g.word).concat())
                    })
                    .collect();
                format!("({c})·{}", factors.join("·"))
            })
            .collect();
        parts.join(" + ")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    /// An exact polynomial identity.
    Identity,
    /// Membership in the span of products of lower-degree invariants.
    Membership,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub name: &'static str,
    pub statement: &'static str,
    pub kind: RelationKind,
    pub expected: bool,
    pub holds: bool,
    /// The solved right-hand side, for memberships that hold.
    pub expression: Option<String>,
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.holds
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub field: FieldKind,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(RelationCheck::passed)
    }
}

/// Four loops `A, B, C, D` at one vertex.
pub fn letter_bouquet() -> Quiver {
    Quiver::new(
        ["v"],
        [("A", "v", "v"), ("B", "v", "v"), ("C", "v", "v"), ("D", "v", "v")],
    )
    .expect("static quiver")
}

fn relations<F: Field>(field: FieldKind) -> RelationReport {
    let q = letter_bouquet();
    let w = |s: &str| q.parse_path(s).expect("static word").into_word();
    let tr = |s: &str| path_product::<F>(&q, &w(s)).trace();
    let det = |s: &str| path_product::<F>(&q, &w(s)).det();
    let two = F::from_i64(2);
    let char2 = F::CHARACTERISTIC == 2;

    let mut checks = Vec::new();
    let eq4 = &(&tr("A,A") - &tr("A").pow(2)) + &det("A").scale(&two);
    checks.push(RelationCheck {
        name: "square-trace",
        statement: "tr(A²) - tr(A)² + 2det(A) = 0",
        kind: RelationKind::Identity,
        expected: true,
        holds: eq4.is_zero(),
        expression: None,
    });
    checks.push(RelationCheck {
        name: "det-multiplicative",
        statement: "det(AB) - det(A)det(B) = 0",
        kind: RelationKind::Identity,
        expected: true,
        holds: (&det("A,B") - &(&det("A") * &det("B"))).is_zero(),
        expression: None,
    });

    let memberships: Vec<(&'static str, &'static str, Poly<F>, bool)> = vec![
        ("square", "tr(A²) + 2det(A)", &tr("A,A") + &det("A").scale(&two), true),
        ("square-times", "tr(A²B)", tr("A,A,B"), true),
        ("swap-three", "tr(ABC) + tr(BAC)", &tr("A,B,C") + &tr("B,A,C"), true),
        ("det-product", "det(AB)", det("A,B"), true),
        ("interleaved", "tr(ABAC)", tr("A,B,A,C"), true),
        ("four-distinct", "tr(ABCD)", tr("A,B,C,D"), !char2),
        ("control-two", "tr(AB)", tr("A,B"), false),
        ("control-three", "tr(ABC)", tr("A,B,C"), false),
        ("control-square", "tr(A²)", tr("A,A"), char2),
    ];
    for (name, statement, value, expected) in memberships {
        let degree = value
            .block_degrees(4)
            .expect("homogeneous relation");
        let ansatz = Ansatz::<F>::new(&q, &MultiDegree::from_counts(degree));
        let solution = ansatz.solve(&value);
        checks.push(RelationCheck {
            name,
            statement,
            kind: RelationKind::Membership,
            expected,
            holds: solution.is_some(),
            expression: solution.map(|c| ansatz.render(&q, &c)),
        });
    }
    RelationReport { field, checks }
}

/// Verifies the low-degree relations on generic matrices by solving for
/// their lower-degree expressions.
pub fn check_relation_identities(field: FieldKind) -> RelationReport {
    match field {
        FieldKind::Gf2 => relations::<Gf2>(field),
        FieldKind::Gf3 => relations::<Gf3>(field),
        FieldKind::Q => relations::<Rational>(field),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RandomIdentityReport {
    pub field: FieldKind,
    pub seed: u64,
    pub products: usize,
    pub cayley_hamilton_failures: usize,
    pub det_multiplicative_failures: usize,
    pub trace_cyclic_failures: usize,
}

impl RandomIdentityReport {
    pub fn all_passed(&self) -> bool {
        self.cayley_hamilton_failures == 0
            && self.det_multiplicative_failures == 0
            && self.trace_cyclic_failures == 0
    }
}

fn random_word(rng: &mut ChaCha8Rng, letters: usize, max_len: usize) -> Vec<ArrowId> {
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| ArrowId(rng.gen_range(0..letters) as u16)).collect()
}

fn random_identities<F: Field>(count: usize, seed: u64, field: FieldKind) -> RandomIdentityReport {
    let q = Quiver::bouquet(3);
    let nvars = 4 * q.arrow_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = RandomIdentityReport {
        field,
        seed,
        products: count,
        cayley_hamilton_failures: 0,
        det_multiplicative_failures: 0,
        trace_cyclic_failures: 0,
    };
    for _ in 0..count {
        let u = random_word(&mut rng, 3, 5);
        let v = random_word(&mut rng, 3, 3);
        let m = path_product::<F>(&q, &u);
        let n = path_product::<F>(&q, &v);
        let id = GMat::identity(nvars);
        let ch = m
            .mul(&m)
            .sub(&m.scale(&m.trace()))
            .add(&id.scale(&m.det()));
        report.cayley_hamilton_failures += !ch.is_zero() as usize;
        let mn = m.mul(&n);
        report.det_multiplicative_failures += (mn.det() != &m.det() * &n.det()) as usize;
        report.trace_cyclic_failures += (mn.trace() != n.mul(&m).trace()) as usize;
    }
    report
}

/// Cayley–Hamilton, multiplicativity of `det` and cyclicity of `tr` on
/// seeded random path products.
pub fn check_random_identities(count: usize, seed: u64, field: FieldKind) -> RandomIdentityReport {
    match field {
        FieldKind::Gf2 => random_identities::<Gf2>(count, seed, field),
        FieldKind::Gf3 => random_identities::<Gf3>(count, seed, field),
        FieldKind::Q => random_identities::<Rational>(count, seed, field),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::crossval::closed_paths_up_to;
    use crate::symbolic::oracle::DecomposabilityOracle;
    use crate::symbolic::sigma_of_word;

    #[test]
    fn relation_suite_per_field() {
        for field in [FieldKind::Gf2, FieldKind::Gf3, FieldKind::Q] {
            let r = check_relation_identities(field);
            for c in &r.checks {
                assert!(c.passed(), "{field} {} expected {} got {}", c.name, c.expected, c.holds);
            }
        }
    }

    #[test]
    fn square_times_expression_is_recovered() {
        let r = check_relation_identities(FieldKind::Q);
        let c = r.checks.iter().find(|c| c.name == "square-times").unwrap();
        let e = c.expression.as_ref().unwrap();
        assert!(e.contains("tr(AB)") && e.contains("det(A)"), "{e}");
    }

    #[test]
    fn ansatz_counts_tuples() {
        let q = letter_bouquet();
        // tr(A)tr(B), and nothing else of multidegree (1,1,0,0)
        let a = Ansatz::<Rational>::new(&q, &MultiDegree::from_counts(vec![1, 1, 0, 0]));
        assert_eq!(a.tuples.len(), 1);
        // tr(A)²; det(A) alone has one factor
        let a = Ansatz::<Rational>::new(&q, &MultiDegree::from_counts(vec![2, 0, 0, 0]));
        assert_eq!(a.tuples.len(), 1);
    }

    fn ansatz_matches_oracle<F: Field>(q: &Quiver, cap: usize) {
        let mut oracle = DecomposabilityOracle::<F>::new(q);
        for h in closed_paths_up_to(q, cap) {
            for k in 1..=2 {
                let value = sigma_of_word::<F>(q, k, h.word());
                let target = h.multidegree(q).scale(k as u32);
                let by_ansatz = Ansatz::<F>::new(q, &target).solve(&value).is_some();
                let by_oracle = oracle.is_decomposable(h.word(), k).unwrap();
                assert_eq!(by_ansatz, by_oracle, "{} k={k} {:?}", F::NAME, q.word_names(h.word()));
            }
        }
    }

    #[test]
    fn two_routes_agree() {
        let bouquet = Quiver::bouquet(2);
        let cycle = Quiver::new(["u", "v"], [("x", "u", "v"), ("y", "v", "u"), ("p", "u", "u")]).unwrap();
        for q in [&bouquet, &cycle] {
            ansatz_matches_oracle::<Gf2>(q, 4);
            ansatz_matches_oracle::<Gf3>(q, 4);
            ansatz_matches_oracle::<Rational>(q, 3);
        }
    }

    #[test]
    fn random_identities_hold() {
        for field in [FieldKind::Gf2, FieldKind::Gf3, FieldKind::Q] {
            let r = check_random_identities(20, 7, field);
            assert!(r.all_passed(), "{r:?}");
        }
    }
}
