//! The marked surface of a gentle algebra.
//!
//! Vertices are arcs with two ends each. An arrow `α: i → j` leaves an end
//! of arc `i` and arrives at an end of arc `j`; an arriving `α` and a leaving
//! `β` share an end of `j` exactly when `αβ` is not a relation. Following
//! arrows from end to end strings the ends into chains: a linear chain is a
//! ∘-point on the boundary, a cyclic chain is a ∘-puncture. The faces of the
//! resulting ribbon graph carry the •-points: faces touching the boundary
//! hold a boundary •, closed faces are •-punctures.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::constructions::{corner_algebra, idempotent_cut};
use crate::error::{Error, Result};
use crate::homology::{is_proper, is_smooth};
use crate::quiver::{require_gentle, ArrowId, Idempotent, QuadraticMonomialAlgebra, VertexId};

/// One end of an arc: `(vertex, 0 | 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct End {
    pub arc: VertexId,
    pub side: u8,
}

impl End {
    fn index(self) -> usize {
        2 * self.arc.0 + self.side as usize
    }

    fn from_index(i: usize) -> End {
        End {
            arc: VertexId(i / 2),
            side: (i % 2) as u8,
        }
    }

    fn other(self) -> End {
        End {
            arc: self.arc,
            side: 1 - self.side,
        }
    }
}

/// Ends around one ∘-point, in the order the arrows run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub ends: Vec<End>,
    /// Cyclic chains are ∘-punctures; linear ones sit on the boundary.
    pub cyclic: bool,
}

/// A corner of a face, named by its first element at a ∘-point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corner {
    End(End),
    /// The boundary gap at the given (linear) chain.
    Gap(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub corners: Vec<Corner>,
    /// Boundary faces run from one gap to another; the rest are •-punctures.
    pub boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonModel {
    /// `(end left, end arrived at)` for each arrow.
    pub gluing: Vec<(End, End)>,
    pub chains: Vec<Chain>,
    pub faces: Vec<Face>,
    /// Boundary components as cycles of boundary chains.
    pub boundary_cycles: Vec<Vec<usize>>,
    pub components: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Role {
    Arrive,
    Leave,
}

/// Places the arrows at each vertex on the two ends of its arc. The first
/// incoming arrow (or, failing that, the first outgoing one) in declaration
/// order sits at end 0.
fn assign_ends(a: &QuadraticMonomialAlgebra) -> Vec<(u8, u8)> {
    let q = a.quiver();
    let mut leave = vec![0u8; q.arrow_count()];
    let mut arrive = vec![0u8; q.arrow_count()];
    for v in q.vertex_ids() {
        let mut slots: Vec<(ArrowId, Role)> = q.incoming(v).map(|x| (x, Role::Arrive)).collect();
        slots.extend(q.outgoing(v).map(|x| (x, Role::Leave)));
        let k = slots.len();
        let valid = |mask: usize| {
            let side = |i: usize| mask >> i & 1;
            for i in 0..k {
                for j in i + 1..k {
                    let same = side(i) == side(j);
                    let (x, rx) = slots[i];
                    let (y, ry) = slots[j];
                    if rx == ry && same {
                        return false;
                    }
                    if rx == Role::Arrive && ry == Role::Leave && same == a.is_relation(x, y) {
                        return false;
                    }
                    if rx == Role::Leave && ry == Role::Arrive && same == a.is_relation(y, x) {
                        return false;
                    }
                }
            }
            true
        };
        // masks with the anchor (slot 0) at end 0 come first
        let mask = (0..1usize << k)
            .filter(|m| m & 1 == 0)
            .find(|&m| valid(m))
            .expect("gentle vertices admit an end assignment");
        for (i, &(x, role)) in slots.iter().enumerate() {
            let s = (mask >> i & 1) as u8;
            match role {
                Role::Arrive => arrive[x.0] = s,
                Role::Leave => leave[x.0] = s,
            }
        }
    }
    leave.into_iter().zip(arrive).collect()
}

pub fn assemble_ribbon(a: &QuadraticMonomialAlgebra) -> Result<RibbonModel> {
    require_gentle(a)?;
    let q = a.quiver();
    let n_ends = 2 * q.vertex_count();
    let sides = assign_ends(a);
    let gluing: Vec<(End, End)> = q
        .arrow_ids()
        .map(|x| {
            let (l, r) = sides[x.0];
            (
                End {
                    arc: q.source(x),
                    side: l,
                },
                End {
                    arc: q.target(x),
                    side: r,
                },
            )
        })
        .collect();
    let mut succ: Vec<Option<usize>> = vec![None; n_ends];
    let mut pred: Vec<Option<usize>> = vec![None; n_ends];
    for &(from, to) in &gluing {
        let (f, t) = (from.index(), to.index());
        if succ[f].is_some() || pred[t].is_some() {
            return Err(Error::NotGentle("two arrows share an arc end".into()));
        }
        succ[f] = Some(t);
        pred[t] = Some(f);
    }

    // chains: linear ones from their heads, then the remaining cycles
    let mut chain_of = vec![usize::MAX; n_ends];
    let mut chains: Vec<Chain> = Vec::new();
    for (start, p) in pred.iter().enumerate() {
        if p.is_none() {
            let mut ends = Vec::new();
            let mut cur = Some(start);
            while let Some(c) = cur {
                chain_of[c] = chains.len();
                ends.push(End::from_index(c));
                cur = succ[c];
            }
            chains.push(Chain {
                ends,
                cyclic: false,
            });
        }
    }
    for start in 0..n_ends {
        if chain_of[start] == usize::MAX {
            let mut ends = Vec::new();
            let mut c = start;
            loop {
                chain_of[c] = chains.len();
                ends.push(End::from_index(c));
                c = succ[c].expect("ends off linear chains lie on cycles");
                if c == start {
                    break;
                }
            }
            chains.push(Chain { ends, cyclic: true });
        }
    }

    // σ: the next element around a ∘-point, a gap closing each linear chain
    let sigma = |c: Corner| -> Corner {
        match c {
            Corner::Gap(k) => Corner::End(chains[k].ends[0]),
            Corner::End(e) => match succ[e.index()] {
                Some(t) => Corner::End(End::from_index(t)),
                None => Corner::Gap(chain_of[e.index()]),
            },
        }
    };
    // the corner after (x, σx): cross the arc of σx to its other end
    let next = |c: Corner| -> Option<Corner> {
        match sigma(c) {
            Corner::End(e) => Some(Corner::End(e.other())),
            Corner::Gap(_) => None,
        }
    };

    let mut faces = Vec::new();
    let mut seen = vec![false; n_ends];
    let mut boundary_next = vec![usize::MAX; chains.len()];
    for (k, chain) in chains.iter().enumerate() {
        if chain.cyclic {
            continue;
        }
        let mut corners = vec![Corner::Gap(k)];
        let mut cur = Corner::Gap(k);
        while let Some(n) = next(cur) {
            if let Corner::End(e) = n {
                seen[e.index()] = true;
            }
            corners.push(n);
            cur = n;
        }
        let Corner::Gap(closing) = sigma(cur) else {
            unreachable!("walks stop only at gaps")
        };
        boundary_next[closing] = k;
        faces.push(Face {
            corners,
            boundary: true,
        });
    }
    for start in 0..n_ends {
        if seen[start] {
            continue;
        }
        let mut corners = Vec::new();
        let mut cur = Corner::End(End::from_index(start));
        loop {
            let Corner::End(e) = cur else { unreachable!() };
            seen[e.index()] = true;
            corners.push(cur);
            cur = next(cur).expect("ends off boundary walks lie on closed walks");
            if cur == Corner::End(End::from_index(start)) {
                break;
            }
        }
        faces.push(Face {
            corners,
            boundary: false,
        });
    }

    let mut boundary_cycles = Vec::new();
    let mut visited = vec![false; chains.len()];
    for k in 0..chains.len() {
        if chains[k].cyclic || visited[k] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut c = k;
        while !visited[c] {
            visited[c] = true;
            cycle.push(c);
            c = boundary_next[c];
        }
        boundary_cycles.push(cycle);
    }

    Ok(RibbonModel {
        gluing,
        chains,
        faces,
        boundary_cycles,
        components: a.components().len(),
    })
}

/// Topological data of the marked surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SurfaceInvariants {
    pub genus: i64,
    pub boundary_components: usize,
    pub boundary_circ: usize,
    pub boundary_bullet: usize,
    pub punctures_circ: usize,
    pub punctures_bullet: usize,
    pub euler_characteristic: i64,
    /// Connected components of the surface (of the quiver).
    pub components: usize,
}

impl SurfaceInvariants {
    /// `Σ (2 − 2gᵢ − bᵢ)` over components, from the genus and boundary count.
    pub fn euler_from_topology(&self) -> i64 {
        2 * self.components as i64 - 2 * self.genus - self.boundary_components as i64
    }

    /// The same surface with ∘ and • exchanged.
    pub fn colours_swapped(&self) -> SurfaceInvariants {
        SurfaceInvariants {
            boundary_circ: self.boundary_bullet,
            boundary_bullet: self.boundary_circ,
            punctures_circ: self.punctures_bullet,
            punctures_bullet: self.punctures_circ,
            ..*self
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "genus": self.genus,
            "boundary_components": self.boundary_components,
            "boundary_circ": self.boundary_circ,
            "boundary_bullet": self.boundary_bullet,
            "punctures_circ": self.punctures_circ,
            "punctures_bullet": self.punctures_bullet,
            "euler_characteristic": self.euler_characteristic,
            "components": self.components,
        })
    }
}

impl RibbonModel {
    pub fn invariants(&self, arcs: usize) -> SurfaceInvariants {
        let circ = self.chains.len() as i64;
        let bullet_punctures = self.faces.iter().filter(|f| !f.boundary).count();
        let chi = circ - arcs as i64 + bullet_punctures as i64;
        let b = self.boundary_cycles.len();
        let twice_genus = 2 * self.components as i64 - b as i64 - chi;
        debug_assert!(twice_genus >= 0 && twice_genus % 2 == 0);
        SurfaceInvariants {
            genus: twice_genus / 2,
            boundary_components: b,
            boundary_circ: self.chains.iter().filter(|c| !c.cyclic).count(),
            boundary_bullet: self.faces.iter().filter(|f| f.boundary).count(),
            punctures_circ: self.chains.iter().filter(|c| c.cyclic).count(),
            punctures_bullet: bullet_punctures,
            euler_characteristic: chi,
            components: self.components,
        }
    }

    /// True when both ends of every arc lie in one ∘-chain.
    pub fn all_arcs_are_loops(&self, arcs: usize) -> bool {
        let mut chain_of = vec![usize::MAX; 2 * arcs];
        for (k, c) in self.chains.iter().enumerate() {
            for e in &c.ends {
                chain_of[e.index()] = k;
            }
        }
        (0..arcs).all(|v| chain_of[2 * v] == chain_of[2 * v + 1])
    }

    /// Graphviz rendering: ∘-points as nodes listing their ordered ends,
    /// arcs as edges, faces as annotation nodes.
    pub fn to_dot(&self, a: &QuadraticMonomialAlgebra) -> String {
        let q = a.quiver();
        let end_name = |e: &End| format!("{}:{}", q.vertex_name(e.arc), e.side);
        let mut chain_of = vec![0; 2 * q.vertex_count()];
        let mut out = String::from("graph ribbon {\n  node [shape=circle];\n");
        for (k, c) in self.chains.iter().enumerate() {
            for e in &c.ends {
                chain_of[e.index()] = k;
            }
            let ends: Vec<String> = c.ends.iter().map(end_name).collect();
            let kind = if c.cyclic { "puncture" } else { "boundary" };
            let _ = writeln!(
                out,
                "  c{k} [label={}];",
                crate::document::json_str(&format!("∘{k} {kind}: {}", ends.join(" < ")))
            );
        }
        for v in q.vertex_ids() {
            let _ = writeln!(
                out,
                "  c{} -- c{} [label={}];",
                chain_of[2 * v.0],
                chain_of[2 * v.0 + 1],
                crate::document::json_str(q.vertex_name(v))
            );
        }
        for (k, f) in self.faces.iter().enumerate() {
            let corners: Vec<String> = f
                .corners
                .iter()
                .map(|c| match c {
                    Corner::End(e) => end_name(e),
                    Corner::Gap(g) => format!("gap{g}"),
                })
                .collect();
            let kind = if f.boundary { "boundary" } else { "puncture" };
            let _ = writeln!(
                out,
                "  f{k} [shape=plaintext, label={}];",
                crate::document::json_str(&format!("•{k} {kind}: {}", corners.join(" ")))
            );
        }
        out.push_str("}\n");
        out
    }
}

pub fn surface_invariants(a: &QuadraticMonomialAlgebra) -> Result<SurfaceInvariants> {
    Ok(assemble_ribbon(a)?.invariants(a.quiver().vertex_count()))
}

/// Invariants of the cut surface (`A_e`, the arcs of `e` removed) and of
/// the subsurface of the arcs of `e` (the corner algebra `eAe`).
pub fn cut_invariants(
    a: &QuadraticMonomialAlgebra,
    e: &Idempotent,
) -> Result<(SurfaceInvariants, SurfaceInvariants)> {
    let cut = idempotent_cut(a, e, None)?;
    let corner = corner_algebra(a, e, None)?;
    Ok((
        surface_invariants(&cut.algebra)?,
        surface_invariants(&corner.algebra)?,
    ))
}

/// Smooth/proper flags of one algebra, computed algebraically and from its
/// surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Regularity {
    pub finite: bool,
    pub smooth: bool,
    pub proper: bool,
    pub bullet_punctures: usize,
    pub circ_punctures: usize,
}

impl Regularity {
    pub fn of(a: &QuadraticMonomialAlgebra, finite: bool) -> Result<Regularity> {
        let s = surface_invariants(a)?;
        Ok(Regularity {
            finite,
            smooth: is_smooth(a).holds,
            proper: is_proper(a).holds,
            bullet_punctures: s.punctures_bullet,
            circ_punctures: s.punctures_circ,
        })
    }

    pub fn puncture_free(&self) -> bool {
        self.bullet_punctures == 0 && self.circ_punctures == 0
    }

    /// The algebraic flags agree with the puncture counts.
    pub fn dictionary_agrees(&self) -> bool {
        self.smooth == (self.bullet_punctures == 0) && self.proper == (self.circ_punctures == 0)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "finite": self.finite,
            "smooth": self.smooth,
            "proper": self.proper,
            "bullet_punctures": self.bullet_punctures,
            "circ_punctures": self.circ_punctures,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoOutOfThree {
    pub whole: Regularity,
    pub cut: Regularity,
    pub corner: Regularity,
    /// `Some(true)` when consistent, `Some(false)` on a violation, `None`
    /// when some algebra had to be truncated.
    pub consistent: Option<bool>,
}

/// Evaluates smooth/proper for `A`, `A_e` and `eAe` and checks that no two
/// of them are puncture-free while the third is not.
pub fn two_out_of_three(
    a: &QuadraticMonomialAlgebra,
    e: &Idempotent,
    bound: usize,
) -> Result<TwoOutOfThree> {
    let cut = idempotent_cut(a, e, Some(bound))?;
    let corner = corner_algebra(a, e, Some(bound))?;
    let whole = Regularity::of(a, true)?;
    let cut_r = Regularity::of(&cut.algebra, cut.finite)?;
    let corner_r = Regularity::of(&corner.algebra, corner.finite)?;
    let all = [whole, cut_r, corner_r];
    let consistent = all.iter().all(|r| r.finite).then(|| {
        let good = all.iter().filter(|r| r.puncture_free()).count();
        good != 2 && all.iter().all(Regularity::dictionary_agrees)
    });
    Ok(TwoOutOfThree {
        whole,
        cut: cut_r,
        corner: corner_r,
        consistent,
    })
}
