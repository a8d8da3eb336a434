//! Existence of full exceptional sequences and silting objects.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::homology::{is_proper, is_smooth};
use crate::iso::find_iso;
use crate::quiver::{
    require_gentle, walk_paths, ArrowId, PathMode, QuadraticMonomialAlgebra, VertexId,
};
use crate::surface::{assemble_ribbon, SurfaceInvariants};

/// Arrow names of `A^(n)` in canonical order: `α1, β1, γ1, δ1, α2, …, γn`.
pub fn an_arrow_names(n: usize) -> Vec<String> {
    let mut names = Vec::new();
    for i in 1..=n {
        names.push(format!("α{i}"));
        names.push(format!("β{i}"));
        names.push(format!("γ{i}"));
        if i < n {
            names.push(format!("δ{i}"));
        }
    }
    names
}

/// The algebra `A^(n)`: vertices `1..2n`, arrows `αᵢ, γᵢ: 2i−1 → 2i`,
/// `βᵢ: 2i → 2i−1`, `δⱼ: 2j → 2j+1`, relations `αᵢβᵢ, βᵢγᵢ, γⱼδⱼ, δⱼαⱼ₊₁`.
/// `degrees` follows [`an_arrow_names`].
pub fn an_algebra(n: usize, degrees: &[i64]) -> Result<QuadraticMonomialAlgebra> {
    let names = an_arrow_names(n);
    if n == 0 || degrees.len() != names.len() {
        return Err(Error::Precondition(format!(
            "A^(n) with n = {n} needs {} degrees",
            names.len()
        )));
    }
    let verts: Vec<String> = (1..=2 * n).map(|v| v.to_string()).collect();
    let vref: Vec<&str> = verts.iter().map(String::as_str).collect();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    for i in 1..=n {
        let (odd, even) = ((2 * i - 1).to_string(), (2 * i).to_string());
        arrows.push((format!("α{i}"), odd.clone(), even.clone()));
        arrows.push((format!("β{i}"), even.clone(), odd.clone()));
        arrows.push((format!("γ{i}"), odd, even.clone()));
        if i < n {
            arrows.push((format!("δ{i}"), even, (2 * i + 1).to_string()));
        }
    }
    let arrow_refs: Vec<(&str, &str, &str, i64)> = arrows
        .iter()
        .zip(degrees)
        .map(|((a, s, t), &d)| (a.as_str(), s.as_str(), t.as_str(), d))
        .collect();
    let mut rels: Vec<(String, String)> = Vec::new();
    for i in 1..=n {
        rels.push((format!("α{i}"), format!("β{i}")));
        rels.push((format!("β{i}"), format!("γ{i}")));
        if i < n {
            rels.push((format!("γ{i}"), format!("δ{i}")));
            rels.push((format!("δ{i}"), format!("α{}", i + 1)));
        }
    }
    let rel_refs: Vec<(&str, &str)> = rels.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    QuadraticMonomialAlgebra::from_parts(&vref, &arrow_refs, &rel_refs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnShape {
    pub n: usize,
    /// `(aᵢ, bᵢ)` with `aᵢ = |αᵢ| + |βᵢ|`, `bᵢ = |βᵢ| + |γᵢ|`.
    pub params: Vec<(i64, i64)>,
    /// Vertex of the input matched to canonical vertex `k + 1`.
    pub vertex_map: Vec<VertexId>,
    /// Arrow of the input matched to each canonical arrow.
    pub arrow_map: Vec<ArrowId>,
}

/// Matches `A` against the quiver with relations of `A^(n)`, `n = |Q₀|/2`,
/// ignoring degrees, and reads off `(aᵢ, bᵢ)`.
pub fn detect_an_shape(a: &QuadraticMonomialAlgebra) -> Option<AnShape> {
    let q = a.quiver();
    let v = q.vertex_count();
    if v == 0 || v % 2 == 1 {
        return None;
    }
    let n = v / 2;
    if q.arrow_count() != 4 * n - 1 {
        return None;
    }
    let canon = an_algebra(n, &vec![0; 4 * n - 1]).expect("degree count matches");
    let iso = find_iso(&canon, a, false)?;
    let cq = canon.quiver();
    let deg = |name: &str| q.degree(iso.arrow_map[cq.arrow_id(name).expect("canonical name").0]);
    let params = (1..=n)
        .map(|i| {
            let (al, be, ga) = (
                deg(&format!("α{i}")),
                deg(&format!("β{i}")),
                deg(&format!("γ{i}")),
            );
            (al + be, be + ga)
        })
        .collect();
    Some(AnShape {
        n,
        params,
        vertex_map: iso.vertex_map,
        arrow_map: iso.arrow_map,
    })
}

fn require_smooth_proper(a: &QuadraticMonomialAlgebra) -> Result<()> {
    require_gentle(a)?;
    if !is_smooth(a).holds || !is_proper(a).holds {
        return Err(Error::Precondition(
            "the algebra must be smooth and proper".into(),
        ));
    }
    Ok(())
}

fn component_invariants(
    a: &QuadraticMonomialAlgebra,
) -> Result<Vec<(QuadraticMonomialAlgebra, SurfaceInvariants)>> {
    a.components()
        .into_iter()
        .map(|c| {
            let s = assemble_ribbon(&c)?.invariants(c.quiver().vertex_count());
            Ok((c, s))
        })
        .collect()
}

/// Genus at least one, one boundary component, one ∘ on it: the only
/// surfaces without a full exceptional sequence.
fn is_an_surface(s: &SurfaceInvariants) -> bool {
    s.genus >= 1 && s.boundary_components == 1 && s.boundary_circ == 1
}

/// A full exceptional sequence exists unless some component is an
/// `A^(n)`-type surface.
pub fn has_full_exceptional_sequence(a: &QuadraticMonomialAlgebra) -> Result<bool> {
    require_smooth_proper(a)?;
    Ok(!component_invariants(a)?
        .iter()
        .any(|(_, s)| is_an_surface(s)))
}

/// Source-peeling order of an acyclic quiver (ties broken by declaration
/// order), or `None` if the quiver has an oriented cycle.
pub fn exceptional_sequence_acyclic(a: &QuadraticMonomialAlgebra) -> Option<Vec<VertexId>> {
    let q = a.quiver();
    let mut indeg: Vec<usize> = q.vertex_ids().map(|v| q.incoming(v).count()).collect();
    let mut done = vec![false; q.vertex_count()];
    let mut order = Vec::with_capacity(q.vertex_count());
    while order.len() < q.vertex_count() {
        let v = q.vertex_ids().find(|v| !done[v.0] && indeg[v.0] == 0)?;
        done[v.0] = true;
        order.push(v);
        for x in q.outgoing(v) {
            indeg[q.target(x).0] -= 1;
        }
    }
    Some(order)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Existence {
    Exists,
    NotExists,
    Unknown,
}

impl fmt::Display for Existence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Existence::Exists => "Exists",
            Existence::NotExists => "NotExists",
            Existence::Unknown => "Unknown",
        })
    }
}

/// Which rule decided a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rule {
    /// A full exceptional sequence exists.
    FullExceptional,
    /// Literal `A^(n)` shape with `aᵢ ≠ 1` or `bᵢ ≠ 1` for every `i`.
    AnParametersAvoidOne,
    /// Literal `A^(1)` with `a₁ = b₁ = 1`.
    A1WithOnes,
    /// None of the above applies.
    Undecided,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::FullExceptional => "R1",
            Rule::AnParametersAvoidOne => "R2",
            Rule::A1WithOnes => "R3",
            Rule::Undecided => "R4",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub value: Existence,
    /// Deciding rule of each connected component, in component order.
    pub rules: Vec<Rule>,
    pub evidence: Vec<String>,
}

impl Verdict {
    pub fn to_json(&self, question: &str) -> Value {
        let rules: Vec<&str> = self.rules.iter().map(|r| r.id()).collect();
        json!({
            "question": question,
            "value": self.value.to_string(),
            "rule": rules.join(","),
            "evidence": self.evidence,
        })
    }
}

fn component_verdict(
    c: &QuadraticMonomialAlgebra,
    s: &SurfaceInvariants,
) -> (Existence, Rule, String) {
    let surface = format!(
        "g={} b={} boundary∘={}",
        s.genus, s.boundary_components, s.boundary_circ
    );
    if !is_an_surface(s) {
        return (Existence::Exists, Rule::FullExceptional, surface);
    }
    match detect_an_shape(c) {
        Some(shape) => {
            let params: Vec<String> = shape
                .params
                .iter()
                .map(|(x, y)| format!("({x},{y})"))
                .collect();
            let ev = format!(
                "{surface}; A^({}) with (a,b) = {}",
                shape.n,
                params.join(" ")
            );
            if shape.params.iter().all(|&(x, y)| x != 1 || y != 1) {
                (Existence::Exists, Rule::AnParametersAvoidOne, ev)
            } else if shape.n == 1 {
                (Existence::NotExists, Rule::A1WithOnes, ev)
            } else {
                (Existence::Unknown, Rule::Undecided, ev)
            }
        }
        None => (
            Existence::Unknown,
            Rule::Undecided,
            format!("{surface}; quiver is not literally A^(n)"),
        ),
    }
}

/// Existence of silting objects (equivalently of simple-minded
/// collections) in the perfect derived category.
pub fn silting_existence(a: &QuadraticMonomialAlgebra) -> Result<Verdict> {
    require_smooth_proper(a)?;
    let mut rules = Vec::new();
    let mut evidence = Vec::new();
    let mut values = Vec::new();
    for (c, s) in component_invariants(a)? {
        let (v, r, e) = component_verdict(&c, &s);
        values.push(v);
        rules.push(r);
        evidence.push(e);
    }
    let value = if values.contains(&Existence::NotExists) {
        Existence::NotExists
    } else if values.iter().all(|&v| v == Existence::Exists) {
        Existence::Exists
    } else {
        Existence::Unknown
    };
    Ok(Verdict {
        value,
        rules,
        evidence,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct G11Report {
    /// Every `eᵢAeᵢ` is larger than `k`.
    pub all_corners_nontrivial: bool,
    /// Both ends of every arc lie at one ∘-point.
    pub all_arcs_loops: bool,
    /// Every component has one boundary component carrying one ∘.
    pub one_boundary_one_circ: bool,
}

impl G11Report {
    pub fn agree(&self) -> bool {
        self.all_corners_nontrivial == self.all_arcs_loops
            && self.all_arcs_loops == self.one_boundary_one_circ
    }
}

pub fn g11_equivalences(a: &QuadraticMonomialAlgebra) -> Result<G11Report> {
    require_smooth_proper(a)?;
    let q = a.quiver();
    let all_corners_nontrivial = q.vertex_ids().all(|v| {
        let mut found = false;
        walk_paths(a, v, PathMode::Nonzero, None, &mut |p| {
            found |= !p.is_empty() && p.target == v;
        });
        found
    });
    let ribbon = assemble_ribbon(a)?;
    let one_boundary_one_circ = component_invariants(a)?
        .iter()
        .all(|(_, s)| s.boundary_components == 1 && s.boundary_circ == 1);
    Ok(G11Report {
        all_corners_nontrivial,
        all_arcs_loops: ribbon.all_arcs_are_loops(q.vertex_count()),
        one_boundary_one_circ,
    })
}
