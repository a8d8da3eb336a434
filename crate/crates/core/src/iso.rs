//! Graded isomorphism of quivers with quadratic monomial relations.

use std::collections::BTreeSet;

use crate::quiver::{ArrowId, QuadraticMonomialAlgebra, VertexId};

/// An isomorphism `A -> B`, indexed by the ids of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedIso {
    pub vertex_map: Vec<VertexId>,
    pub arrow_map: Vec<ArrowId>,
}

impl GradedIso {
    pub fn identity(a: &QuadraticMonomialAlgebra) -> Self {
        GradedIso {
            vertex_map: a.quiver().vertex_ids().collect(),
            arrow_map: a.quiver().arrow_ids().collect(),
        }
    }

    /// Re-checks every defining property of an isomorphism.
    pub fn verify(
        &self,
        a: &QuadraticMonomialAlgebra,
        b: &QuadraticMonomialAlgebra,
        degrees: bool,
    ) -> bool {
        let (qa, qb) = (a.quiver(), b.quiver());
        if self.vertex_map.len() != qa.vertex_count()
            || self.arrow_map.len() != qa.arrow_count()
            || qa.vertex_count() != qb.vertex_count()
            || qa.arrow_count() != qb.arrow_count()
        {
            return false;
        }
        let vs: BTreeSet<_> = self.vertex_map.iter().collect();
        let arrs: BTreeSet<_> = self.arrow_map.iter().collect();
        if vs.len() != qb.vertex_count() || arrs.len() != qb.arrow_count() {
            return false;
        }
        let arrows_ok = qa.arrow_ids().all(|x| {
            let y = self.arrow_map[x.0];
            qb.source(y) == self.vertex_map[qa.source(x).0]
                && qb.target(y) == self.vertex_map[qa.target(x).0]
                && (!degrees || qb.degree(y) == qa.degree(x))
        });
        let image: BTreeSet<(ArrowId, ArrowId)> = a
            .relations()
            .iter()
            .map(|(x, y)| (self.arrow_map[x.0], self.arrow_map[y.0]))
            .collect();
        arrows_ok && &image == b.relations()
    }
}

/// Finds a graded isomorphism `A -> B`, the first one in search order.
pub fn graded_iso(a: &QuadraticMonomialAlgebra, b: &QuadraticMonomialAlgebra) -> Option<GradedIso> {
    find_iso(a, b, true)
}

/// Isomorphism search; with `degrees = false` arrow degrees are ignored,
/// which matches the underlying ungraded quivers with relations.
pub fn find_iso(
    a: &QuadraticMonomialAlgebra,
    b: &QuadraticMonomialAlgebra,
    degrees: bool,
) -> Option<GradedIso> {
    let (qa, qb) = (a.quiver(), b.quiver());
    if qa.vertex_count() != qb.vertex_count()
        || qa.arrow_count() != qb.arrow_count()
        || a.relations().len() != b.relations().len()
    {
        return None;
    }
    if degrees {
        let mut da: Vec<i64> = qa.arrows().iter().map(|x| x.degree).collect();
        let mut db: Vec<i64> = qb.arrows().iter().map(|x| x.degree).collect();
        da.sort_unstable();
        db.sort_unstable();
        if da != db {
            return None;
        }
    }
    let sig = |alg: &QuadraticMonomialAlgebra, v: VertexId| {
        let q = alg.quiver();
        (q.incoming(v).count(), q.outgoing(v).count())
    };
    let sig_a: Vec<_> = qa.vertex_ids().map(|v| sig(a, v)).collect();
    let sig_b: Vec<_> = qb.vertex_ids().map(|v| sig(b, v)).collect();
    let mut sa = sig_a.clone();
    let mut sb = sig_b.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }

    let mut search = Search {
        a,
        b,
        degrees,
        order: connected_order(a),
        sig_a,
        sig_b,
        vmap: vec![None; qa.vertex_count()],
        vinv: vec![None; qb.vertex_count()],
        amap: vec![None; qa.arrow_count()],
        aused: vec![false; qb.arrow_count()],
    };
    if !search.assign(0) {
        return None;
    }
    // isolated vertices pair up in declaration order
    let mut free_b = qb.vertex_ids().filter(|v| search.vinv[v.0].is_none());
    let vertex_map = (0..qa.vertex_count())
        .map(|i| search.vmap[i].unwrap_or_else(|| free_b.next().expect("counts agree")))
        .collect();
    let iso = GradedIso {
        vertex_map,
        arrow_map: search
            .amap
            .into_iter()
            .map(|x| x.expect("all arrows mapped"))
            .collect(),
    };
    debug_assert!(iso.verify(a, b, degrees));
    Some(iso)
}

// Arrows ordered so that each one touches a vertex already seen, when
// possible; this lets the vertex map constrain the search early.
fn connected_order(a: &QuadraticMonomialAlgebra) -> Vec<ArrowId> {
    let q = a.quiver();
    let mut seen_v = vec![false; q.vertex_count()];
    let mut placed = vec![false; q.arrow_count()];
    let mut order = Vec::with_capacity(q.arrow_count());
    while order.len() < q.arrow_count() {
        let next = q
            .arrow_ids()
            .find(|&x| !placed[x.0] && (seen_v[q.source(x).0] || seen_v[q.target(x).0]))
            .or_else(|| q.arrow_ids().find(|&x| !placed[x.0]))
            .expect("an unplaced arrow remains");
        placed[next.0] = true;
        seen_v[q.source(next).0] = true;
        seen_v[q.target(next).0] = true;
        order.push(next);
    }
    order
}

struct Search<'a> {
    a: &'a QuadraticMonomialAlgebra,
    b: &'a QuadraticMonomialAlgebra,
    degrees: bool,
    order: Vec<ArrowId>,
    sig_a: Vec<(usize, usize)>,
    sig_b: Vec<(usize, usize)>,
    vmap: Vec<Option<VertexId>>,
    vinv: Vec<Option<VertexId>>,
    amap: Vec<Option<ArrowId>>,
    aused: Vec<bool>,
}

impl Search<'_> {
    fn assign(&mut self, k: usize) -> bool {
        let Some(&x) = self.order.get(k) else {
            return true;
        };
        let (qa, qb) = (self.a.quiver(), self.b.quiver());
        for y in qb.arrow_ids() {
            if self.aused[y.0] || (self.degrees && qa.degree(x) != qb.degree(y)) {
                continue;
            }
            let mut bound = Vec::new();
            let ok = self.bind(qa.source(x), qb.source(y), &mut bound)
                && self.bind(qa.target(x), qb.target(y), &mut bound);
            if ok {
                self.amap[x.0] = Some(y);
                self.aused[y.0] = true;
                if self.relations_consistent(x) && self.assign(k + 1) {
                    return true;
                }
                self.amap[x.0] = None;
                self.aused[y.0] = false;
            }
            for v in bound {
                let w = self.vmap[v.0].take().expect("bound vertex");
                self.vinv[w.0] = None;
            }
        }
        false
    }

    fn bind(&mut self, v: VertexId, w: VertexId, bound: &mut Vec<VertexId>) -> bool {
        match (self.vmap[v.0], self.vinv[w.0]) {
            (Some(m), _) => m == w,
            (None, Some(_)) => false,
            (None, None) => {
                if self.sig_a[v.0] != self.sig_b[w.0] {
                    return false;
                }
                self.vmap[v.0] = Some(w);
                self.vinv[w.0] = Some(v);
                bound.push(v);
                true
            }
        }
    }

    fn relations_consistent(&self, x: ArrowId) -> bool {
        let fx = self.amap[x.0].expect("just assigned");
        self.order.iter().all(|&z| match self.amap[z.0] {
            None => true,
            Some(fz) => {
                self.a.is_relation(x, z) == self.b.is_relation(fx, fz)
                    && self.a.is_relation(z, x) == self.b.is_relation(fz, fx)
            }
        })
    }
}
