//! Quadratic dual, idempotent cut and corner algebra.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::iso::{graded_iso, GradedIso};
use crate::quiver::{
    require_gentle, ArrowId, GradedQuiver, Idempotent, QuadraticMonomialAlgebra, VertexId,
};

const OP_SUFFIX: &str = "^op";

/// `α ↦ α^op`, and back: a name already ending in `^op` loses the suffix,
/// so the transform is an involution.
pub fn dual_name(name: &str) -> String {
    match name.strip_suffix(OP_SUFFIX) {
        Some(base) => base.to_string(),
        None => format!("{name}{OP_SUFFIX}"),
    }
}

/// The quadratic dual `A^!`: opposite arrows of degree `1 - |α|`, with
/// relations the reversed composable pairs that are not relations of `A`.
pub fn quadratic_dual(a: &QuadraticMonomialAlgebra) -> QuadraticMonomialAlgebra {
    let q = a.quiver();
    let mut d = GradedQuiver::new();
    for v in q.vertex_names() {
        d.add_vertex(v.clone()).expect("vertex names are unique");
    }
    for arr in q.arrows() {
        d.push_arrow(dual_name(&arr.name), arr.target, arr.source, 1 - arr.degree)
            .expect("the name transform is injective");
    }
    let rels: Vec<(ArrowId, ArrowId)> = q
        .composable_pairs()
        .filter(|&(x, y)| !a.is_relation(x, y))
        .map(|(x, y)| (y, x))
        .collect();
    QuadraticMonomialAlgebra::new(d, rels).expect("reversed pairs compose")
}

/// Output of a construction whose arrows are words in the input arrows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordAlgebra {
    pub algebra: QuadraticMonomialAlgebra,
    /// Underlying arrow word of each new arrow, in the input algebra.
    pub words: Vec<Vec<ArrowId>>,
    /// False when the full arrow set is infinite and was truncated.
    pub finite: bool,
    /// The word-length bound applied when `finite` is false.
    pub truncation_bound: Option<usize>,
}

struct WordRules<'a> {
    start: &'a dyn Fn(ArrowId) -> bool,
    end: &'a dyn Fn(ArrowId) -> bool,
    step: &'a dyn Fn(ArrowId, ArrowId) -> bool,
}

/// Finite-or-truncated enumeration of words `x₁⋯x_s` with `start(x₁)`,
/// `end(x_s)` and `step(xᵢ, xᵢ₊₁)`. Only letters on some start-to-end walk are
/// used, so the set is infinite exactly when such letters carry a cycle.
fn word_family(
    a: &QuadraticMonomialAlgebra,
    rules: &WordRules<'_>,
    bound: Option<usize>,
    what: &str,
) -> Result<(Vec<Vec<ArrowId>>, bool)> {
    let q = a.quiver();
    let g = a.letter_graph(|x, y| (rules.step)(x, y));
    let starts: Vec<usize> = q
        .arrow_ids()
        .filter(|&x| (rules.start)(x))
        .map(|x| x.0)
        .collect();
    let ends: Vec<usize> = q
        .arrow_ids()
        .filter(|&x| (rules.end)(x))
        .map(|x| x.0)
        .collect();
    let useful = g.useful(starts.iter().copied(), ends.iter().copied());
    let cycle = g.find_cycle(&useful);
    let finite = cycle.is_none();
    if let (Some(c), None) = (&cycle, bound) {
        let names: Vec<&str> = c
            .iter()
            .map(|&i| q.arrow(ArrowId(i)).name.as_str())
            .collect();
        return Err(Error::Infinite(format!(
            "{what} (cycle {})",
            names.join(".")
        )));
    }
    let limit = if finite {
        usize::MAX
    } else {
        bound.unwrap_or(usize::MAX)
    };
    let mut words = Vec::new();
    let mut stack: Vec<Vec<usize>> = starts
        .iter()
        .filter(|&&s| useful[s])
        .map(|&s| vec![s])
        .collect();
    while let Some(w) = stack.pop() {
        let last = *w.last().expect("words are non-empty");
        if (rules.end)(ArrowId(last)) {
            words.push(w.iter().map(|&i| ArrowId(i)).collect::<Vec<_>>());
        }
        if w.len() < limit {
            for &n in g.successors(last) {
                if useful[n] {
                    let mut longer = w.clone();
                    longer.push(n);
                    stack.push(longer);
                }
            }
        }
    }
    words.sort_by(|x: &Vec<ArrowId>, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    Ok((words, finite))
}

/// Bracketed name for a word of length ≥ 2; single letters keep their name.
fn word_name(q: &GradedQuiver, w: &[ArrowId], bracket_singletons: bool) -> String {
    if w.len() == 1 && !bracket_singletons {
        return q.arrow(w[0]).name.clone();
    }
    let names: Vec<&str> = w.iter().map(|&x| q.arrow(x).name.as_str()).collect();
    format!("[{}]", names.join("."))
}

pub(crate) fn unique_name(taken: &mut HashSet<String>, base: String) -> String {
    if taken.insert(base.clone()) {
        return base;
    }
    (2..)
        .map(|i| format!("{base}#{i}"))
        .find(|n| taken.insert(n.clone()))
        .expect("some suffix is free")
}

/// Assembles the quiver on `keep` whose arrows are `words`, with degree
/// `degree(word)` and relation `[p][q]` whenever `(last p, first q) ∈ I`.
fn word_quiver(
    a: &QuadraticMonomialAlgebra,
    keep: &[VertexId],
    words: &[Vec<ArrowId>],
    degree: impl Fn(&[ArrowId]) -> i64,
) -> QuadraticMonomialAlgebra {
    let q = a.quiver();
    let mut out = GradedQuiver::new();
    for &v in keep {
        out.add_vertex(q.vertex_name(v)).expect("names are unique");
    }
    let mut taken = HashSet::new();
    for w in words {
        let name = unique_name(&mut taken, word_name(q, w, false));
        let s = q.vertex_name(q.source(w[0]));
        let t = q.vertex_name(q.target(*w.last().unwrap()));
        out.add_arrow(name, s, t, degree(w))
            .expect("endpoints are kept");
    }
    let mut rels = Vec::new();
    for (i, p) in words.iter().enumerate() {
        for (j, r) in words.iter().enumerate() {
            let (x, y) = (*p.last().unwrap(), r[0]);
            if q.composable(x, y) && a.is_relation(x, y) {
                rels.push((ArrowId(i), ArrowId(j)));
            }
        }
    }
    QuadraticMonomialAlgebra::new(out, rels).expect("junctions compose")
}

/// Degree of an arrow `[α₁⋯α_s]` of a cut: `Σ|αᵢ| − s + 1`.
pub fn cut_word_degree(q: &GradedQuiver, w: &[ArrowId]) -> i64 {
    w.iter().map(|&x| q.degree(x)).sum::<i64>() - w.len() as i64 + 1
}

/// The idempotent cut `A_e`; `removed` lists the vertices cut away.
///
/// Arrows are the words all of whose consecutive pairs are relations through
/// a removed vertex, starting and ending at kept vertices.
pub fn idempotent_cut(
    a: &QuadraticMonomialAlgebra,
    removed: &Idempotent,
    max_arrow_length: Option<usize>,
) -> Result<WordAlgebra> {
    let q = a.quiver();
    let start = |x: ArrowId| !removed.contains(q.source(x));
    let end = |x: ArrowId| !removed.contains(q.target(x));
    let step = |x: ArrowId, y: ArrowId| a.is_relation(x, y) && removed.contains(q.target(x));
    let (words, finite) = word_family(
        a,
        &WordRules {
            start: &start,
            end: &end,
            step: &step,
        },
        max_arrow_length,
        "the arrow set of the cut algebra",
    )?;
    let keep: Vec<VertexId> = q.vertex_ids().filter(|&v| !removed.contains(v)).collect();
    let algebra = word_quiver(a, &keep, &words, |w| cut_word_degree(q, w));
    Ok(WordAlgebra {
        algebra,
        words,
        finite,
        truncation_bound: if finite { None } else { max_arrow_length },
    })
}

/// The corner algebra `eAe` of a gentle algebra; `kept` lists the vertices
/// of `e`. Generators are the nonzero paths between kept vertices with no
/// kept interior vertex.
pub fn corner_algebra(
    a: &QuadraticMonomialAlgebra,
    kept: &Idempotent,
    max_arrow_length: Option<usize>,
) -> Result<WordAlgebra> {
    require_gentle(a)?;
    let q = a.quiver();
    let start = |x: ArrowId| kept.contains(q.source(x));
    let end = |x: ArrowId| kept.contains(q.target(x));
    let step = |x: ArrowId, y: ArrowId| !a.is_relation(x, y) && !kept.contains(q.target(x));
    let (words, finite) = word_family(
        a,
        &WordRules {
            start: &start,
            end: &end,
            step: &step,
        },
        max_arrow_length,
        "the generator set of the corner algebra",
    )?;
    let keep: Vec<VertexId> = kept.0.iter().copied().collect();
    let algebra = word_quiver(a, &keep, &words, |w| w.iter().map(|&x| q.degree(x)).sum());
    Ok(WordAlgebra {
        algebra,
        words,
        finite,
        truncation_bound: if finite { None } else { max_arrow_length },
    })
}

/// `eAe` computed as `((A^!)_{1−e})^!`.
pub fn corner_via_dual(
    a: &QuadraticMonomialAlgebra,
    kept: &Idempotent,
    max_arrow_length: Option<usize>,
) -> Result<WordAlgebra> {
    require_gentle(a)?;
    let dual = quadratic_dual(a);
    let removed = kept.complement(a.quiver());
    let cut = idempotent_cut(&dual, &removed, max_arrow_length)?;
    Ok(WordAlgebra {
        algebra: quadratic_dual(&cut.algebra),
        ..cut
    })
}

/// Witnesses for `(A_{e'})_{e''} ≅ A_{e'∪e''} ≅ (A_{e''})_{e'}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IteratedCut {
    pub left: QuadraticMonomialAlgebra,
    pub middle: QuadraticMonomialAlgebra,
    pub right: QuadraticMonomialAlgebra,
    pub left_to_middle: Option<GradedIso>,
    pub right_to_middle: Option<GradedIso>,
}

impl IteratedCut {
    pub fn holds(&self) -> bool {
        self.left_to_middle.is_some() && self.right_to_middle.is_some()
    }
}

pub fn check_iterated_cut(
    a: &QuadraticMonomialAlgebra,
    e1: &Idempotent,
    e2: &Idempotent,
) -> Result<IteratedCut> {
    if e1.0.intersection(&e2.0).next().is_some() {
        return Err(Error::Precondition(
            "the two removed sets must be disjoint".into(),
        ));
    }
    let twice = |first: &Idempotent, second: &Idempotent| -> Result<QuadraticMonomialAlgebra> {
        let once = idempotent_cut(a, first, None)?.algebra;
        let second = second.transport(a.quiver(), once.quiver());
        Ok(idempotent_cut(&once, &second, None)?.algebra)
    };
    let left = twice(e1, e2)?;
    let right = twice(e2, e1)?;
    let middle = idempotent_cut(a, &e1.union(e2), None)?.algebra;
    Ok(IteratedCut {
        left_to_middle: graded_iso(&left, &middle),
        right_to_middle: graded_iso(&right, &middle),
        left,
        middle,
        right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::validate_gentle;

    fn linear(d: [i64; 4]) -> QuadraticMonomialAlgebra {
        QuadraticMonomialAlgebra::from_parts(
            &["1", "2", "3", "4", "5"],
            &[
                ("α", "1", "2", d[0]),
                ("β", "2", "3", d[1]),
                ("γ", "3", "4", d[2]),
                ("δ", "4", "5", d[3]),
            ],
            &[("α", "β"), ("γ", "δ")],
        )
        .unwrap()
    }

    fn summary(a: &QuadraticMonomialAlgebra) -> Vec<String> {
        let q = a.quiver();
        q.arrows()
            .iter()
            .map(|x| {
                format!(
                    "{}:{}->{}:{}",
                    x.name,
                    q.vertex_name(x.source),
                    q.vertex_name(x.target),
                    x.degree
                )
            })
            .collect()
    }

    #[test]
    fn dual_of_single_arrow() {
        let a =
            QuadraticMonomialAlgebra::from_parts(&["1", "2"], &[("α", "1", "2", 0)], &[]).unwrap();
        let d = quadratic_dual(&a);
        assert_eq!(summary(&d), vec!["α^op:2->1:1"]);
        assert!(d.relations().is_empty());
        assert_eq!(quadratic_dual(&d), a);
    }

    #[test]
    fn cut_of_linear_example() {
        let a = linear([1, 2, 3, 4]);
        let cut = idempotent_cut(&a, &a.idempotent(&["2", "4"]).unwrap(), None).unwrap();
        assert!(cut.finite);
        assert_eq!(summary(&cut.algebra), vec!["[α.β]:1->3:2", "[γ.δ]:3->5:6"]);
        assert!(cut.algebra.relations().is_empty());
    }

    #[test]
    fn corner_of_linear_example() {
        let a = linear([1, 2, 3, 4]);
        let e = a.idempotent(&["2", "4"]).unwrap();
        let c = corner_algebra(&a, &e, None).unwrap();
        assert_eq!(summary(&c.algebra), vec!["[β.γ]:2->4:5"]);
        let v = corner_via_dual(&a, &e, None).unwrap();
        assert!(graded_iso(&c.algebra, &v.algebra).is_some());
    }

    #[test]
    fn empty_cut_and_full_corner_are_identities() {
        let a = linear([0, -1, 2, 0]);
        assert_eq!(
            idempotent_cut(&a, &Idempotent::empty(), None)
                .unwrap()
                .algebra,
            a
        );
        let all = Idempotent::all(a.quiver());
        assert_eq!(corner_algebra(&a, &all, None).unwrap().algebra, a);
        assert!(validate_gentle(&corner_via_dual(&a, &all, None).unwrap().algebra).is_gentle);
    }

    #[test]
    fn kronecker_cut_is_infinite() {
        let a = QuadraticMonomialAlgebra::from_parts(
            &["1", "2", "3"],
            &[("α", "1", "2", 0), ("β", "2", "2", 0), ("γ", "2", "3", 0)],
            &[("α", "β"), ("β", "β"), ("β", "γ")],
        )
        .unwrap();
        let e = a.idempotent(&["2"]).unwrap();
        assert!(matches!(
            idempotent_cut(&a, &e, None),
            Err(Error::Infinite(_))
        ));
        let cut = idempotent_cut(&a, &e, Some(5)).unwrap();
        assert!(!cut.finite);
        assert_eq!(cut.truncation_bound, Some(5));
        let lens: Vec<usize> = cut.words.iter().map(Vec::len).collect();
        assert_eq!(lens, vec![3, 4, 5]);
    }

    #[test]
    fn iterated_cut_on_linear_example() {
        let a = linear([0, 1, 0, 2]);
        let r = check_iterated_cut(
            &a,
            &a.idempotent(&["2"]).unwrap(),
            &a.idempotent(&["4"]).unwrap(),
        )
        .unwrap();
        assert!(r.holds());
    }
}
