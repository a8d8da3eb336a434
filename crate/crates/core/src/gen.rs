//! Seeded random gentle algebras for property tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::quiver::{ArrowId, GradedQuiver, Idempotent, QuadraticMonomialAlgebra, VertexId};

/// A random gentle algebra with `1..=max_vertices` vertices and arrow
/// degrees in `-2..=2`.
///
/// Arrows are added while every vertex has at most two incoming and two
/// outgoing arrows; the relations at each vertex are then drawn uniformly
/// among the subsets satisfying the gentle conditions there.
pub fn random_gentle<R: Rng>(rng: &mut R, max_vertices: usize) -> QuadraticMonomialAlgebra {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let mut q = GradedQuiver::new();
    for v in 1..=n {
        q.add_vertex(v.to_string()).expect("fresh names");
    }
    let mut out_deg = vec![0; n];
    let mut in_deg = vec![0; n];
    let attempts = rng.gen_range(0..=2 * n + 1);
    for _ in 0..attempts {
        let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if out_deg[s] < 2 && in_deg[t] < 2 {
            out_deg[s] += 1;
            in_deg[t] += 1;
            let name = format!("a{}", q.arrow_count() + 1);
            q.push_arrow(name, VertexId(s), VertexId(t), rng.gen_range(-2..=2))
                .expect("fresh names");
        }
    }
    let mut rels = Vec::new();
    for v in q.vertex_ids() {
        let ins: Vec<ArrowId> = q.incoming(v).collect();
        let outs: Vec<ArrowId> = q.outgoing(v).collect();
        let pairs: Vec<(ArrowId, ArrowId)> = ins
            .iter()
            .flat_map(|&x| outs.iter().map(move |&y| (x, y)))
            .collect();
        let valid: Vec<u32> = (0..1u32 << pairs.len())
            .filter(|&mask| {
                let chosen = |i: usize| mask >> i & 1 == 1;
                let ok_for = |pick: &dyn Fn(&(ArrowId, ArrowId)) -> bool| {
                    let inside = pairs
                        .iter()
                        .enumerate()
                        .filter(|(i, p)| pick(p) && chosen(*i))
                        .count();
                    let outside = pairs
                        .iter()
                        .enumerate()
                        .filter(|(i, p)| pick(p) && !chosen(*i))
                        .count();
                    inside <= 1 && outside <= 1
                };
                ins.iter().all(|&x| ok_for(&|p| p.0 == x))
                    && outs.iter().all(|&y| ok_for(&|p| p.1 == y))
            })
            .collect();
        let mask = *valid.choose(rng).expect("some subset is gentle");
        rels.extend(
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, p)| *p),
        );
    }
    QuadraticMonomialAlgebra::new(q, rels).expect("pairs compose at their vertex")
}

/// `count` algebras from one seed.
pub fn suite(seed: u64, count: usize, max_vertices: usize) -> Vec<QuadraticMonomialAlgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_gentle(&mut rng, max_vertices))
        .collect()
}

/// A uniformly random vertex subset.
pub fn random_idempotent<R: Rng>(rng: &mut R, a: &QuadraticMonomialAlgebra) -> Idempotent {
    Idempotent(
        a.quiver()
            .vertex_ids()
            .filter(|_| rng.gen_bool(0.5))
            .collect(),
    )
}

/// Two disjoint random vertex subsets.
pub fn random_disjoint_pair<R: Rng>(
    rng: &mut R,
    a: &QuadraticMonomialAlgebra,
) -> (Idempotent, Idempotent) {
    let mut first = Idempotent::empty();
    let mut second = Idempotent::empty();
    for v in a.quiver().vertex_ids() {
        match rng.gen_range(0..3) {
            0 => {
                first.0.insert(v);
            }
            1 => {
                second.0.insert(v);
            }
            _ => {}
        }
    }
    (first, second)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::validate_gentle;

    #[test]
    fn generated_algebras_are_gentle() {
        for a in suite(7, 300, 6) {
            assert!(validate_gentle(&a).is_gentle);
            assert!(a.quiver().vertex_count() <= 6);
        }
    }

    #[test]
    fn generation_is_reproducible() {
        assert_eq!(suite(11, 20, 6), suite(11, 20, 6));
    }
}
