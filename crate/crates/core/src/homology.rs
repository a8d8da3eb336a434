//! Smoothness, properness, Ext between simples, and the pre-silting and
//! pre-simple-minded predicates.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{max_weight_walk, MaxWalk};
use crate::quiver::{
    mode_cycle, walk_paths, ArrowId, Idempotent, Path, PathMode, QuadraticMonomialAlgebra, VertexId,
};

/// Outcome of a cycle criterion: `holds`, or a cyclic arrow word showing it
/// fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCheck {
    pub holds: bool,
    pub witness: Option<Vec<ArrowId>>,
}

/// Homologically smooth: no cyclic word all of whose consecutive pairs
/// (cyclically) are relations.
pub fn is_smooth(a: &QuadraticMonomialAlgebra) -> CycleCheck {
    let witness = mode_cycle(a, PathMode::Critical);
    CycleCheck {
        holds: witness.is_none(),
        witness,
    }
}

/// Proper: no cyclic word avoiding the relations, i.e. finite dimensional.
pub fn is_proper(a: &QuadraticMonomialAlgebra) -> CycleCheck {
    let witness = mode_cycle(a, PathMode::Nonzero);
    CycleCheck {
        holds: witness.is_none(),
        witness,
    }
}

/// Graded dimensions of `Hom(S_i, S_j[l])`, with critical paths as bases.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExtTable {
    pub entries: BTreeMap<(VertexId, VertexId, i64), Vec<Path>>,
    /// Set when critical paths were cut off at this length.
    pub truncation_bound: Option<usize>,
}

impl ExtTable {
    pub fn dim(&self, i: VertexId, j: VertexId, l: i64) -> usize {
        self.entries.get(&(i, j, l)).map_or(0, Vec::len)
    }

    pub fn to_json(&self, a: &QuadraticMonomialAlgebra) -> Value {
        let q = a.quiver();
        let rows: Vec<Value> = self
            .entries
            .iter()
            .map(|(&(i, j, l), basis)| {
                let paths: Vec<Vec<&str>> = basis.iter().map(|p| p.names(q)).collect();
                json!({
                    "i": q.vertex_name(i),
                    "j": q.vertex_name(j),
                    "l": l,
                    "dim": basis.len(),
                    "basis": paths,
                })
            })
            .collect();
        match self.truncation_bound {
            None => Value::Array(rows),
            Some(b) => json!({"entries": rows, "truncated": true, "truncation_bound": b}),
        }
    }
}

/// Buckets the critical paths of `A` by `(source, target, length − degree)`.
///
/// Non-smooth algebras have infinitely many critical paths; they need
/// `max_len`, and the table is then marked as truncated.
pub fn ext_table(
    a: &QuadraticMonomialAlgebra,
    shift_range: Option<RangeInclusive<i64>>,
    max_len: Option<usize>,
) -> Result<ExtTable> {
    let smooth = is_smooth(a);
    let bound = match (smooth.holds, max_len) {
        (true, _) => None,
        (false, Some(m)) => Some(m),
        (false, None) => {
            return Err(Error::Infinite(
                "the Ext table of a non-smooth algebra".to_string(),
            ))
        }
    };
    let mut table = ExtTable {
        entries: BTreeMap::new(),
        truncation_bound: bound,
    };
    for i in a.quiver().vertex_ids() {
        walk_paths(a, i, PathMode::Critical, bound, &mut |p| {
            let l = p.len() as i64 - p.degree;
            if shift_range.as_ref().is_none_or(|r| r.contains(&l)) {
                table
                    .entries
                    .entry((i, p.target, l))
                    .or_default()
                    .push(p.clone());
            }
        });
    }
    for basis in table.entries.values_mut() {
        basis.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.arrows.cmp(&y.arrows)));
    }
    Ok(table)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresiltingCheck {
    pub holds: bool,
    /// A nonzero path between kept vertices of positive degree.
    pub offending: Option<Path>,
}

/// `eA` is pre-silting iff `eAe` has no nonzero path of positive degree.
///
/// Decided exactly: the maximum degree of a nonzero path between kept
/// vertices is computed by a longest-walk search that also detects
/// positive-degree cycles, so no enumeration bound is needed.
pub fn is_presilting_projective(
    a: &QuadraticMonomialAlgebra,
    kept: &Idempotent,
) -> PresiltingCheck {
    let q = a.quiver();
    let g = a.letter_graph(|x, y| !a.is_relation(x, y));
    let weight: Vec<i64> = q.arrows().iter().map(|x| x.degree).collect();
    let starts: Vec<usize> = q
        .arrow_ids()
        .filter(|&x| kept.contains(q.source(x)))
        .map(|x| x.0)
        .collect();
    let is_end = |x: usize| kept.contains(q.target(ArrowId(x)));
    let ends: Vec<usize> = (0..q.arrow_count()).filter(|&x| is_end(x)).collect();
    let to_path = |walk: Vec<usize>| {
        Path::from_arrows(q, walk.into_iter().map(ArrowId).collect()).expect("walks compose")
    };
    match max_weight_walk(&g, &weight, &starts, &ends) {
        MaxWalk::Empty => PresiltingCheck {
            holds: true,
            offending: None,
        },
        MaxWalk::Bounded(w, walk) => PresiltingCheck {
            holds: w <= 0,
            offending: (w > 0).then(|| to_path(walk)),
        },
        MaxWalk::PositiveCycle(cycle) => {
            let c0 = cycle[0];
            let prefix = g
                .shortest_walk(starts.iter().copied(), |v| v == c0)
                .expect("cycle lies on a start-to-end walk");
            let suffix = g
                .shortest_walk([c0], is_end)
                .expect("cycle lies on a start-to-end walk");
            let sum = |w: &[usize]| w.iter().map(|&x| weight[x]).sum::<i64>();
            let cycle_weight = sum(&cycle);
            let mut walk = prefix;
            let mut total = sum(&walk) + sum(&suffix[1..]);
            while total <= 0 {
                walk.extend(cycle[1..].iter().copied());
                walk.push(c0);
                total += cycle_weight;
            }
            walk.extend_from_slice(&suffix[1..]);
            PresiltingCheck {
                holds: false,
                offending: Some(to_path(walk)),
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreSmcCheck {
    pub holds: bool,
    /// An entry `(i, j, l)` breaking the pattern, with its dimension.
    pub offending: Option<((VertexId, VertexId, i64), usize)>,
}

/// The simples `S_i`, `i ∈ e`, form a pre-simple-minded collection iff
/// `Hom(S_i, S_j)` is `k` on the diagonal and zero off it, and every
/// negative shift vanishes.
pub fn is_presmc_simples(a: &QuadraticMonomialAlgebra, kept: &Idempotent) -> Result<PreSmcCheck> {
    if !is_smooth(a).holds {
        return Err(Error::Precondition(
            "the pre-simple-minded check needs a smooth algebra".into(),
        ));
    }
    let table = ext_table(a, Some(i64::MIN..=0), None)?;
    for i in kept.0.iter().copied() {
        for j in kept.0.iter().copied() {
            let expect = usize::from(i == j);
            let d0 = table.dim(i, j, 0);
            if d0 != expect {
                return Ok(PreSmcCheck {
                    holds: false,
                    offending: Some(((i, j, 0), d0)),
                });
            }
        }
    }
    let negative = table
        .entries
        .iter()
        .find(|((i, j, l), _)| *l < 0 && kept.contains(*i) && kept.contains(*j));
    Ok(match negative {
        Some((&key, basis)) => PreSmcCheck {
            holds: false,
            offending: Some((key, basis.len())),
        },
        None => PreSmcCheck {
            holds: true,
            offending: None,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1(d: [i64; 3]) -> QuadraticMonomialAlgebra {
        QuadraticMonomialAlgebra::from_parts(
            &["1", "2"],
            &[
                ("α1", "1", "2", d[0]),
                ("β1", "2", "1", d[1]),
                ("γ1", "1", "2", d[2]),
            ],
            &[("α1", "β1"), ("β1", "γ1")],
        )
        .unwrap()
    }

    fn a2(deg: i64) -> QuadraticMonomialAlgebra {
        QuadraticMonomialAlgebra::from_parts(&["1", "2"], &[("α", "1", "2", deg)], &[]).unwrap()
    }

    fn loop_alg(rel: bool) -> QuadraticMonomialAlgebra {
        let rels: &[(&str, &str)] = if rel { &[("X", "X")] } else { &[] };
        QuadraticMonomialAlgebra::from_parts(&["1"], &[("X", "1", "1", 0)], rels).unwrap()
    }

    #[test]
    fn smooth_and_proper_examples() {
        assert!(is_smooth(&a1([0, 0, 0])).holds);
        assert!(is_proper(&a1([0, 0, 0])).holds);
        let dual_numbers = loop_alg(true);
        assert_eq!(is_smooth(&dual_numbers).witness, Some(vec![ArrowId(0)]));
        assert!(is_proper(&dual_numbers).holds);
        let poly = loop_alg(false);
        assert!(is_smooth(&poly).holds);
        assert_eq!(is_proper(&poly).witness, Some(vec![ArrowId(0)]));
    }

    #[test]
    fn ext_of_a1() {
        let a = a1([0, 0, 0]);
        let t = ext_table(&a, None, None).unwrap();
        let (v1, v2) = (VertexId(0), VertexId(1));
        assert_eq!(t.dim(v1, v2, 1), 2);
        assert_eq!(t.dim(v1, v1, 2), 1);
        assert_eq!(t.dim(v1, v2, 3), 1);
        assert_eq!(t.dim(v1, v1, 0), 1);
        assert_eq!(t.dim(v2, v2, 0), 1);
    }

    #[test]
    fn ext_of_a2() {
        let t = ext_table(&a2(0), None, None).unwrap();
        assert_eq!(t.dim(VertexId(0), VertexId(1), 1), 1);
        assert_eq!(t.entries.len(), 3);
    }

    #[test]
    fn presilting_examples() {
        let e2 = Idempotent([VertexId(1)].into_iter().collect());
        assert!(is_presilting_projective(&a1([0, 0, 0]), &e2).holds);
        assert!(is_presilting_projective(&a1([-1, 0, 0]), &e2).holds);
        let r = is_presilting_projective(&a1([1, 1, 0]), &e2);
        assert!(!r.holds);
        let p = r.offending.unwrap();
        assert_eq!(p.degree, 2);
        assert_eq!((p.source, p.target), (VertexId(1), VertexId(1)));
        assert!(is_presilting_projective(&a1([5, 5, 5]), &Idempotent::empty()).holds);
    }

    #[test]
    fn presilting_with_positive_cycle() {
        let poly =
            QuadraticMonomialAlgebra::from_parts(&["1"], &[("Y", "1", "1", 1)], &[]).unwrap();
        let e = Idempotent::all(poly.quiver());
        let r = is_presilting_projective(&poly, &e);
        assert!(!r.holds);
        assert_eq!(r.offending.unwrap().degree, 1);
        let neg =
            QuadraticMonomialAlgebra::from_parts(&["1"], &[("Y", "1", "1", -1)], &[]).unwrap();
        assert!(is_presilting_projective(&neg, &e).holds);
    }

    #[test]
    fn presmc_examples() {
        let both = Idempotent([VertexId(0), VertexId(1)].into_iter().collect());
        assert!(is_presmc_simples(&a2(0), &both).unwrap().holds);
        let r = is_presmc_simples(&a2(2), &both).unwrap();
        assert!(!r.holds);
        assert_eq!(r.offending, Some(((VertexId(0), VertexId(1), -1), 1)));
        assert!(
            is_presmc_simples(&a2(2), &Idempotent::empty())
                .unwrap()
                .holds
        );
    }
}
