//! Graded quivers, paths and quadratic monomial algebras.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::LetterGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
    pub degree: i64,
}

/// A finite quiver whose arrows carry integer degrees.
///
/// Vertices and arrows keep their declaration order; ids are positions in
/// that order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedQuiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, VertexId>,
    arrow_index: HashMap<String, ArrowId>,
}

impl GradedQuiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<VertexId> {
        let name = name.into();
        if self.vertex_index.contains_key(&name) {
            return Err(Error::Duplicate {
                kind: "vertex",
                name,
            });
        }
        let id = VertexId(self.vertices.len());
        self.vertex_index.insert(name.clone(), id);
        self.vertices.push(name);
        Ok(id)
    }

    pub fn add_arrow(
        &mut self,
        name: impl Into<String>,
        source: &str,
        target: &str,
        degree: i64,
    ) -> Result<ArrowId> {
        let name = name.into();
        let lookup = |v: &str| {
            self.vertex_id(v).ok_or_else(|| Error::UnknownVertex {
                arrow: name.clone(),
                vertex: v.to_string(),
            })
        };
        let (s, t) = (lookup(source)?, lookup(target)?);
        self.push_arrow(name, s, t, degree)
    }

    pub(crate) fn push_arrow(
        &mut self,
        name: String,
        source: VertexId,
        target: VertexId,
        degree: i64,
    ) -> Result<ArrowId> {
        if self.arrow_index.contains_key(&name) {
            return Err(Error::Duplicate {
                kind: "arrow",
                name,
            });
        }
        let id = ArrowId(self.arrows.len());
        self.arrow_index.insert(name.clone(), id);
        self.arrows.push(Arrow {
            name,
            source,
            target,
            degree,
        });
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_id(&self, name: &str) -> Option<ArrowId> {
        self.arrow_index.get(name).copied()
    }

    pub fn source(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].source
    }

    pub fn target(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].target
    }

    pub fn degree(&self, a: ArrowId) -> i64 {
        self.arrows[a.0].degree
    }

    pub fn outgoing(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrow_ids().filter(move |&a| self.source(a) == v)
    }

    pub fn incoming(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrow_ids().filter(move |&a| self.target(a) == v)
    }

    pub fn composable(&self, a: ArrowId, b: ArrowId) -> bool {
        self.target(a) == self.source(b)
    }

    /// All composable arrow pairs `(a, b)` with `target(a) = source(b)`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (ArrowId, ArrowId)> + '_ {
        self.arrow_ids().flat_map(move |a| {
            self.arrow_ids()
                .filter(move |&b| self.composable(a, b))
                .map(move |b| (a, b))
        })
    }
}

/// A path in a quiver. Length-zero paths are vertex idempotents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: VertexId,
    pub target: VertexId,
    pub arrows: Vec<ArrowId>,
    pub degree: i64,
}

impl Path {
    pub fn idempotent(v: VertexId) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
            degree: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Builds a path from a non-empty composable arrow word.
    pub fn from_arrows(q: &GradedQuiver, arrows: Vec<ArrowId>) -> Option<Path> {
        let first = *arrows.first()?;
        if arrows.windows(2).any(|w| !q.composable(w[0], w[1])) {
            return None;
        }
        Some(Path {
            source: q.source(first),
            target: q.target(*arrows.last().unwrap()),
            degree: arrows.iter().map(|&a| q.degree(a)).sum(),
            arrows,
        })
    }

    pub fn names<'q>(&self, q: &'q GradedQuiver) -> Vec<&'q str> {
        self.arrows
            .iter()
            .map(|&a| q.arrow(a).name.as_str())
            .collect()
    }

    pub fn display<'a>(&'a self, q: &'a GradedQuiver) -> impl fmt::Display + 'a {
        PathDisplay { path: self, q }
    }
}

struct PathDisplay<'a> {
    path: &'a Path,
    q: &'a GradedQuiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.arrows.is_empty() {
            write!(f, "e_{}", self.q.vertex_name(self.path.source))
        } else {
            write!(f, "{}", self.path.names(self.q).join("."))
        }
    }
}

/// `kQ / <I>` with `I` a set of length-two monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QuadraticMonomialAlgebra {
    quiver: GradedQuiver,
    relations: BTreeSet<(ArrowId, ArrowId)>,
}

impl QuadraticMonomialAlgebra {
    pub fn new(
        quiver: GradedQuiver,
        relations: impl IntoIterator<Item = (ArrowId, ArrowId)>,
    ) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in relations {
            if a.0 >= quiver.arrow_count() || b.0 >= quiver.arrow_count() {
                return Err(Error::UnknownArrow(format!("#{}", a.0.max(b.0))));
            }
            if !quiver.composable(a, b) {
                return Err(Error::NonComposable(
                    quiver.arrow(a).name.clone(),
                    quiver.arrow(b).name.clone(),
                ));
            }
            if !set.insert((a, b)) {
                return Err(Error::Duplicate {
                    kind: "relation",
                    name: format!("{}.{}", quiver.arrow(a).name, quiver.arrow(b).name),
                });
            }
        }
        Ok(QuadraticMonomialAlgebra {
            quiver,
            relations: set,
        })
    }

    /// Builds an algebra from names; convenient for tests and examples.
    pub fn from_parts(
        vertices: &[&str],
        arrows: &[(&str, &str, &str, i64)],
        relations: &[(&str, &str)],
    ) -> Result<Self> {
        let mut q = GradedQuiver::new();
        for v in vertices {
            q.add_vertex(*v)?;
        }
        for &(name, s, t, d) in arrows {
            q.add_arrow(name, s, t, d)?;
        }
        let mut rels = Vec::new();
        for &(a, b) in relations {
            let ia = q
                .arrow_id(a)
                .ok_or_else(|| Error::UnknownArrow(a.to_string()))?;
            let ib = q
                .arrow_id(b)
                .ok_or_else(|| Error::UnknownArrow(b.to_string()))?;
            rels.push((ia, ib));
        }
        Self::new(q, rels)
    }

    pub fn quiver(&self) -> &GradedQuiver {
        &self.quiver
    }

    pub fn relations(&self) -> &BTreeSet<(ArrowId, ArrowId)> {
        &self.relations
    }

    pub fn is_relation(&self, a: ArrowId, b: ArrowId) -> bool {
        self.relations.contains(&(a, b))
    }

    /// Resolves a list of vertex names into an idempotent.
    pub fn idempotent<S: AsRef<str>>(&self, names: &[S]) -> Result<Idempotent> {
        let mut set = BTreeSet::new();
        for n in names {
            let v = self
                .quiver
                .vertex_id(n.as_ref())
                .ok_or_else(|| Error::NoSuchVertex(n.as_ref().to_string()))?;
            set.insert(v);
        }
        Ok(Idempotent(set))
    }

    /// Resolves `(a, b)` arrow-name pairs into relations of this algebra.
    pub fn relation_subset<S: AsRef<str>>(
        &self,
        pairs: &[(S, S)],
    ) -> Result<BTreeSet<(ArrowId, ArrowId)>> {
        let mut out = BTreeSet::new();
        for (a, b) in pairs {
            let ia = self
                .quiver
                .arrow_id(a.as_ref())
                .ok_or_else(|| Error::UnknownArrow(a.as_ref().to_string()))?;
            let ib = self
                .quiver
                .arrow_id(b.as_ref())
                .ok_or_else(|| Error::UnknownArrow(b.as_ref().to_string()))?;
            out.insert((ia, ib));
        }
        Ok(out)
    }

    /// Letter graph on arrows: `a -> b` for composable pairs accepted by `keep`.
    pub(crate) fn letter_graph(&self, keep: impl Fn(ArrowId, ArrowId) -> bool) -> LetterGraph {
        let q = &self.quiver;
        let mut g = LetterGraph::new(q.arrow_count());
        for (a, b) in q.composable_pairs() {
            if keep(a, b) {
                g.add_edge(a.0, b.0);
            }
        }
        g
    }

    /// Splits the algebra into the sub-algebras on the connected components
    /// of its underlying quiver, in order of first vertex.
    pub fn components(&self) -> Vec<QuadraticMonomialAlgebra> {
        let q = &self.quiver;
        let n = q.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let next = p[c];
                p[c] = r;
                c = next;
            }
            r
        }
        for a in q.arrow_ids() {
            let (s, t) = (
                find(&mut parent, q.source(a).0),
                find(&mut parent, q.target(a).0),
            );
            if s != t {
                parent[s.max(t)] = s.min(t);
            }
        }
        let mut roots: Vec<usize> = Vec::new();
        let mut comp_of = vec![0; n];
        for (v, slot) in comp_of.iter_mut().enumerate() {
            let r = find(&mut parent, v);
            let idx = match roots.iter().position(|&x| x == r) {
                Some(i) => i,
                None => {
                    roots.push(r);
                    roots.len() - 1
                }
            };
            *slot = idx;
        }
        (0..roots.len())
            .map(|c| {
                let keep: BTreeSet<VertexId> =
                    (0..n).filter(|&v| comp_of[v] == c).map(VertexId).collect();
                self.full_subalgebra(&keep)
            })
            .collect()
    }

    /// Restriction to a vertex subset: arrows with both ends kept and the
    /// relations among them.
    pub fn full_subalgebra(&self, keep: &BTreeSet<VertexId>) -> QuadraticMonomialAlgebra {
        let q = &self.quiver;
        let mut sub = GradedQuiver::new();
        for &v in keep {
            sub.add_vertex(q.vertex_name(v)).expect("names are unique");
        }
        let mut map = HashMap::new();
        for a in q.arrow_ids() {
            if keep.contains(&q.source(a)) && keep.contains(&q.target(a)) {
                let arr = q.arrow(a);
                let id = sub
                    .add_arrow(
                        arr.name.clone(),
                        q.vertex_name(arr.source),
                        q.vertex_name(arr.target),
                        arr.degree,
                    )
                    .expect("names are unique");
                map.insert(a, id);
            }
        }
        let rels = self
            .relations
            .iter()
            .filter_map(|(a, b)| Some((*map.get(a)?, *map.get(b)?)));
        QuadraticMonomialAlgebra::new(sub, rels).expect("restriction preserves relations")
    }
}

/// A set of vertices standing for the idempotent `e = sum e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Idempotent(pub BTreeSet<VertexId>);

impl Idempotent {
    pub fn empty() -> Self {
        Idempotent(BTreeSet::new())
    }

    pub fn all(q: &GradedQuiver) -> Self {
        Idempotent(q.vertex_ids().collect())
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    pub fn complement(&self, q: &GradedQuiver) -> Idempotent {
        Idempotent(q.vertex_ids().filter(|v| !self.0.contains(v)).collect())
    }

    pub fn union(&self, other: &Idempotent) -> Idempotent {
        Idempotent(self.0.union(&other.0).copied().collect())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names<'q>(&self, q: &'q GradedQuiver) -> Vec<&'q str> {
        self.0.iter().map(|&v| q.vertex_name(v)).collect()
    }

    /// Re-resolves the same vertex names in another quiver; names missing
    /// there are dropped.
    pub fn transport(&self, from: &GradedQuiver, to: &GradedQuiver) -> Idempotent {
        Idempotent(
            self.0
                .iter()
                .filter_map(|&v| to.vertex_id(from.vertex_name(v)))
                .collect(),
        )
    }
}

/// Which defining condition of gentleness a violation breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum GentleCondition {
    /// More than two arrows start or end at a vertex.
    V1,
    /// An arrow has two continuations (on one side) inside the relation set.
    V2,
    /// An arrow has two right continuations outside the relation set.
    V3,
    /// An arrow has two left continuations outside the relation set.
    V4,
}

impl fmt::Display for GentleCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GentleCondition::V1 => "V1",
            GentleCondition::V2 => "V2",
            GentleCondition::V3 => "V3",
            GentleCondition::V4 => "V4",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Vertex(VertexId),
    Arrows(Vec<ArrowId>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub condition: GentleCondition,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GentleReport {
    pub is_gentle: bool,
    pub violations: Vec<Violation>,
}

pub fn validate_gentle(a: &QuadraticMonomialAlgebra) -> GentleReport {
    let q = a.quiver();
    let mut violations = Vec::new();
    for v in q.vertex_ids() {
        if q.outgoing(v).count() > 2 || q.incoming(v).count() > 2 {
            violations.push(Violation {
                condition: GentleCondition::V1,
                witness: Witness::Vertex(v),
            });
        }
    }
    for x in q.arrow_ids() {
        let right: Vec<ArrowId> = q.arrow_ids().filter(|&y| q.composable(x, y)).collect();
        let left: Vec<ArrowId> = q.arrow_ids().filter(|&y| q.composable(y, x)).collect();
        let (right_in, right_out): (Vec<ArrowId>, Vec<ArrowId>) =
            right.iter().partition(|&&y| a.is_relation(x, y));
        let (left_in, left_out): (Vec<ArrowId>, Vec<ArrowId>) =
            left.iter().partition(|&&y| a.is_relation(y, x));
        let mut push = |cond, others: &[ArrowId]| {
            let mut w = vec![x];
            w.extend_from_slice(others);
            violations.push(Violation {
                condition: cond,
                witness: Witness::Arrows(w),
            });
        };
        if right_in.len() > 1 {
            push(GentleCondition::V2, &right_in);
        }
        if left_in.len() > 1 {
            push(GentleCondition::V2, &left_in);
        }
        if right_out.len() > 1 {
            push(GentleCondition::V3, &right_out);
        }
        if left_out.len() > 1 {
            push(GentleCondition::V4, &left_out);
        }
    }
    GentleReport {
        is_gentle: violations.is_empty(),
        violations,
    }
}

pub(crate) fn require_gentle(a: &QuadraticMonomialAlgebra) -> Result<()> {
    let report = validate_gentle(a);
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(Error::NotGentle(format!(
            "condition {} fails ({} violation(s))",
            v.condition,
            report.violations.len()
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathMode {
    /// Paths with no consecutive pair in the relation set.
    Nonzero,
    /// Paths with every consecutive pair in the relation set.
    Critical,
}

impl PathMode {
    pub(crate) fn allows(self, a: &QuadraticMonomialAlgebra, x: ArrowId, y: ArrowId) -> bool {
        match self {
            PathMode::Nonzero => !a.is_relation(x, y),
            PathMode::Critical => a.is_relation(x, y),
        }
    }
}

/// A cyclic arrow word whose consecutive pairs (cyclically) all satisfy a
/// mode, or `None` when no such word exists.
pub(crate) fn mode_cycle(a: &QuadraticMonomialAlgebra, mode: PathMode) -> Option<Vec<ArrowId>> {
    let g = a.letter_graph(|x, y| mode.allows(a, x, y));
    g.find_cycle(&vec![true; g.len()])
        .map(|c| c.into_iter().map(ArrowId).collect())
}

/// All paths of the given mode from `from` to `to`, ordered by length and
/// then lexicographically by arrow declaration order.
///
/// With `max_length = None` the path space must be finite: critical
/// enumeration requires no all-relation cycle, nonzero enumeration requires
/// no relation-free cycle.
pub fn enumerate_paths(
    a: &QuadraticMonomialAlgebra,
    from: VertexId,
    to: VertexId,
    mode: PathMode,
    max_length: Option<usize>,
) -> Result<Vec<Path>> {
    if max_length.is_none() {
        if let Some(cycle) = mode_cycle(a, mode) {
            let names: Vec<&str> = cycle
                .iter()
                .map(|&x| a.quiver().arrow(x).name.as_str())
                .collect();
            let what = match mode {
                PathMode::Nonzero => "nonzero path space",
                PathMode::Critical => "critical path space",
            };
            return Err(Error::Infinite(format!(
                "{what} (cycle {})",
                names.join(".")
            )));
        }
    }
    let mut out = Vec::new();
    walk_paths(a, from, mode, max_length, &mut |p| {
        if p.target == to {
            out.push(p.clone());
        }
    });
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.arrows.cmp(&y.arrows)));
    Ok(out)
}

/// Visits every path of the mode starting at `from` (including the
/// idempotent), up to the bound. Caller guarantees finiteness when unbounded.
pub(crate) fn walk_paths(
    a: &QuadraticMonomialAlgebra,
    from: VertexId,
    mode: PathMode,
    max_length: Option<usize>,
    visit: &mut dyn FnMut(&Path),
) {
    let q = a.quiver();
    let mut path = Path::idempotent(from);
    visit(&path);
    fn extend(
        a: &QuadraticMonomialAlgebra,
        q: &GradedQuiver,
        mode: PathMode,
        max_length: Option<usize>,
        path: &mut Path,
        visit: &mut dyn FnMut(&Path),
    ) {
        if max_length.is_some_and(|m| path.len() >= m) {
            return;
        }
        let candidates: Vec<ArrowId> = match path.arrows.last() {
            None => q.outgoing(path.source).collect(),
            Some(&last) => q
                .outgoing(q.target(last))
                .filter(|&y| mode.allows(a, last, y))
                .collect(),
        };
        for y in candidates {
            let saved_target = path.target;
            path.arrows.push(y);
            path.degree += q.degree(y);
            path.target = q.target(y);
            visit(path);
            extend(a, q, mode, max_length, path, visit);
            path.arrows.pop();
            path.degree -= q.degree(y);
            path.target = saved_target;
        }
    }
    extend(a, q, mode, max_length, &mut path, visit);
}
