//! Partial cofibrant dg resolutions `A_J` and exact checks of their
//! differential and contracting homotopy.
//!
//! Generators of `A_J` are the words `[α₁⋯αₙ]` whose consecutive pairs all
//! lie in `J`, of degree `Σ|αᵢ| − n + 1`. Two generators multiply to zero when
//! their junction pair lies in `I ∖ J`. The differential splits a word at
//! each interior position `i` with sign `(−1)^{|[α₁⋯αᵢ]|}` and extends to
//! products by the graded Leibniz rule.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::document::{json_str, write_structure, write_truncation};
use crate::error::{Error, Result};
use crate::quiver::{ArrowId, GradedQuiver, QuadraticMonomialAlgebra};

/// A finite rational combination of paths, keyed by the path's letters.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FormalCombination<K: Ord> {
    terms: BTreeMap<K, Rational64>,
}

impl<K: Ord + Clone> FormalCombination<K> {
    pub fn new() -> Self {
        FormalCombination {
            terms: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, key: K, coeff: Rational64) {
        if coeff.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(key.clone())
            .or_insert_with(Rational64::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_all(&mut self, other: &FormalCombination<K>, scale: Rational64) {
        for (k, c) in &other.terms {
            self.add(k.clone(), *c * scale);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &Rational64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Paths in `Q'` as sequences of generator ids.
pub type GeneratorPath = Vec<ArrowId>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DgQuiverAlgebra {
    /// `Q'` with the relations `I'`.
    pub algebra: QuadraticMonomialAlgebra,
    /// Underlying word in the base algebra of each generator.
    pub words: Vec<Vec<ArrowId>>,
    /// `d'` of each generator, as a combination of length-two paths of `Q'`.
    pub differential: Vec<FormalCombination<GeneratorPath>>,
    /// Set when some `J`-word exceeds the bound and was left out.
    pub truncation_bound: Option<usize>,
}

impl DgQuiverAlgebra {
    pub fn generator_count(&self) -> usize {
        self.words.len()
    }

    pub fn is_truncated(&self) -> bool {
        self.truncation_bound.is_some()
    }

    fn degree_of_path(&self, p: &[ArrowId]) -> i64 {
        p.iter().map(|&g| self.algebra.quiver().degree(g)).sum()
    }

    fn vanishes(&self, p: &[ArrowId]) -> bool {
        p.windows(2).any(|w| self.algebra.is_relation(w[0], w[1]))
    }

    /// Applies `d'` to a path of generators, reducing modulo `I'`.
    pub fn apply(&self, p: &[ArrowId]) -> FormalCombination<GeneratorPath> {
        let mut out = FormalCombination::new();
        let mut prefix_degree = 0;
        for (j, &g) in p.iter().enumerate() {
            let sign = sign_of(prefix_degree);
            for (term, c) in self.differential[g.0].terms() {
                let mut path = p[..j].to_vec();
                path.extend_from_slice(term);
                path.extend_from_slice(&p[j + 1..]);
                if !self.vanishes(&path) {
                    out.add(path, *c * sign);
                }
            }
            prefix_degree += self.algebra.quiver().degree(g);
        }
        out
    }

    /// Canonical document: the graded quiver with relations, followed by the
    /// truncation marker and the differential.
    pub fn to_document(&self) -> String {
        let q = self.algebra.quiver();
        let mut out = String::new();
        write_structure(&mut out, &self.algebra);
        write_truncation(&mut out, self.truncation_bound);
        out.push_str(",\n  \"differential\": [");
        let mut first = true;
        for g in q.arrow_ids() {
            let d = &self.differential[g.0];
            if d.is_zero() {
                continue;
            }
            out.push_str(if first { "\n    " } else { ",\n    " });
            first = false;
            let terms: Vec<String> = d
                .terms()
                .map(|(path, c)| {
                    let names: Vec<String> =
                        path.iter().map(|&x| json_str(&q.arrow(x).name)).collect();
                    format!(
                        "{{\"path\": [{}], \"coeff\": \"{}/{}\"}}",
                        names.join(", "),
                        c.numer(),
                        c.denom()
                    )
                })
                .collect();
            let _ = write!(
                out,
                "{{\"generator\": {}, \"terms\": [{}]}}",
                json_str(&q.arrow(g).name),
                terms.join(", ")
            );
        }
        if !first {
            out.push_str("\n  ");
        }
        out.push_str("]\n}\n");
        out
    }
}

fn sign_of(exponent: i64) -> Rational64 {
    if exponent.rem_euclid(2) == 0 {
        Rational64::one()
    } else {
        -Rational64::one()
    }
}

fn check_subset(a: &QuadraticMonomialAlgebra, j: &BTreeSet<(ArrowId, ArrowId)>) -> Result<()> {
    match j.iter().find(|p| !a.is_relation(p.0, p.1)) {
        None => Ok(()),
        Some(&(x, y)) => Err(Error::Precondition(format!(
            "`{}.{}` is in J but not a relation",
            a.quiver().arrow(x).name,
            a.quiver().arrow(y).name
        ))),
    }
}

fn j_cycle(a: &QuadraticMonomialAlgebra, j: &BTreeSet<(ArrowId, ArrowId)>) -> Option<Vec<usize>> {
    let g = a.letter_graph(|x, y| j.contains(&(x, y)));
    g.find_cycle(&vec![true; g.len()])
}

/// True iff `J_n` is empty for large `n`, i.e. the letter graph of `J` has
/// no directed cycle.
pub fn is_aj_finite(a: &QuadraticMonomialAlgebra, j: &BTreeSet<(ArrowId, ArrowId)>) -> bool {
    j_cycle(a, j).is_none()
}

fn word_degree(q: &GradedQuiver, w: &[ArrowId]) -> i64 {
    w.iter().map(|&x| q.degree(x)).sum::<i64>() - w.len() as i64 + 1
}

/// Builds `A_J`. With `max_word_length = None` the generator set must be
/// finite.
pub fn build_aj(
    a: &QuadraticMonomialAlgebra,
    j: &BTreeSet<(ArrowId, ArrowId)>,
    max_word_length: Option<usize>,
) -> Result<DgQuiverAlgebra> {
    check_subset(a, j)?;
    let q = a.quiver();
    let finite = match (j_cycle(a, j), max_word_length) {
        (Some(c), None) => {
            let names: Vec<&str> = c
                .iter()
                .map(|&i| q.arrow(ArrowId(i)).name.as_str())
                .collect();
            return Err(Error::Infinite(format!(
                "the generator set of A_J (cycle {})",
                names.join(".")
            )));
        }
        (c, _) => c.is_none(),
    };
    let limit = if finite {
        usize::MAX
    } else {
        max_word_length.unwrap_or(usize::MAX)
    };

    let mut words: Vec<Vec<ArrowId>> = Vec::new();
    let mut stack: Vec<Vec<ArrowId>> = q.arrow_ids().map(|x| vec![x]).collect();
    while let Some(w) = stack.pop() {
        let last = *w.last().unwrap();
        if w.len() < limit {
            for y in q.outgoing(q.target(last)) {
                if j.contains(&(last, y)) {
                    let mut longer = w.clone();
                    longer.push(y);
                    stack.push(longer);
                }
            }
        }
        words.push(w);
    }
    words.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    let index: BTreeMap<Vec<ArrowId>, ArrowId> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), ArrowId(i)))
        .collect();

    let mut qp = GradedQuiver::new();
    for v in q.vertex_names() {
        qp.add_vertex(v.clone()).expect("names are unique");
    }
    let mut taken = std::collections::HashSet::new();
    for w in &words {
        let names: Vec<&str> = w.iter().map(|&x| q.arrow(x).name.as_str()).collect();
        let name = crate::constructions::unique_name(&mut taken, format!("[{}]", names.join(".")));
        qp.push_arrow(
            name,
            q.source(w[0]),
            q.target(*w.last().unwrap()),
            word_degree(q, w),
        )
        .expect("names are unique");
    }
    let mut rels = Vec::new();
    for (i, p) in words.iter().enumerate() {
        for (k, r) in words.iter().enumerate() {
            let pair = (*p.last().unwrap(), r[0]);
            if a.is_relation(pair.0, pair.1) && !j.contains(&pair) {
                rels.push((ArrowId(i), ArrowId(k)));
            }
        }
    }
    let algebra = QuadraticMonomialAlgebra::new(qp, rels).expect("junctions compose");

    let differential = words
        .iter()
        .map(|w| {
            let mut d = FormalCombination::new();
            for i in 1..w.len() {
                let (left, right) = (&w[..i], &w[i..]);
                d.add(
                    vec![index[left], index[right]],
                    sign_of(word_degree(q, left)),
                );
            }
            d
        })
        .collect();

    Ok(DgQuiverAlgebra {
        algebra,
        words,
        differential,
        truncation_bound: if finite { None } else { max_word_length },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialCheck {
    pub checked: usize,
    /// First generator (in generator order) with `d'²(g) ≠ 0`.
    pub first_failure: Option<ArrowId>,
    /// Generators whose stored terms break the degree law (term degree =
    /// generator degree + 1).
    pub degree_failures: Vec<ArrowId>,
}

impl DifferentialCheck {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none() && self.degree_failures.is_empty()
    }
}

/// Expands `d'(d'(g))` for every generator, modulo `I'` and by the graded
/// Leibniz rule, and checks each stored term's degree.
pub fn check_differential(b: &DgQuiverAlgebra) -> DifferentialCheck {
    let q = b.algebra.quiver();
    let mut first_failure = None;
    let mut degree_failures = Vec::new();
    for g in q.arrow_ids() {
        let d = &b.differential[g.0];
        if d.terms()
            .any(|(p, _)| b.degree_of_path(p) != q.degree(g) + 1)
        {
            degree_failures.push(g);
        }
        let mut dd = FormalCombination::new();
        for (p, c) in d.terms() {
            dd.add_all(&b.apply(p), *c);
        }
        if !dd.is_zero() && first_failure.is_none() {
            first_failure = Some(g);
        }
    }
    DifferentialCheck {
        checked: q.arrow_count(),
        first_failure,
        degree_failures,
    }
}

/// Checks that `φ: A_J → A` (keep length-one generators, kill the rest)
/// sends `I'` into `I` and every `d'(g)` to zero in `A`.
pub fn check_phi(base: &QuadraticMonomialAlgebra, b: &DgQuiverAlgebra) -> bool {
    let phi_zero = |p: &[ArrowId]| -> bool {
        if p.iter().any(|g| b.words[g.0].len() > 1) {
            return true;
        }
        let letters: Vec<ArrowId> = p.iter().map(|g| b.words[g.0][0]).collect();
        letters.windows(2).any(|w| base.is_relation(w[0], w[1]))
    };
    let relations_ok = b
        .algebra
        .relations()
        .iter()
        .all(|&(x, y)| phi_zero(&[x, y]));
    let images_ok = b.differential.iter().all(|d| {
        let mut image: FormalCombination<Vec<ArrowId>> = FormalCombination::new();
        for (p, c) in d.terms() {
            if !phi_zero(p) {
                image.add(p.iter().map(|g| b.words[g.0][0]).collect(), *c);
            }
        }
        image.is_zero()
    });
    relations_ok && images_ok
}

/// A monomial of `A_J` written as a letter path with a cut flag at each of
/// its interior positions; blocks between cuts are generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Monomial {
    letters: Vec<ArrowId>,
    cuts: Vec<bool>,
}

impl Monomial {
    fn blocks(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut start = 0;
        for (i, &c) in self.cuts.iter().enumerate() {
            if c {
                out.push((start, i + 1));
                start = i + 1;
            }
        }
        out.push((start, self.letters.len()));
        out
    }
}

struct Homotopy<'a> {
    a: &'a QuadraticMonomialAlgebra,
    j: &'a BTreeSet<(ArrowId, ArrowId)>,
}

impl Homotopy<'_> {
    fn degree(&self, letters: &[ArrowId]) -> i64 {
        word_degree(self.a.quiver(), letters)
    }

    fn in_j(&self, m: &Monomial, pos: usize) -> bool {
        self.j.contains(&(m.letters[pos], m.letters[pos + 1]))
    }

    /// `d'` on a monomial: split one block at one interior position.
    fn d(&self, m: &Monomial) -> FormalCombination<Monomial> {
        let mut out = FormalCombination::new();
        let mut prefix = 0;
        for (s, e) in m.blocks() {
            for i in s..e - 1 {
                let sign = sign_of(prefix + self.degree(&m.letters[s..=i]));
                let mut split = m.clone();
                split.cuts[i] = true;
                out.add(split, sign);
            }
            prefix += self.degree(&m.letters[s..e]);
        }
        out
    }

    /// The contracting homotopy: merge one `J`-junction, with sign given by
    /// the degrees of the blocks up to that junction, scaled by `1/m`.
    fn psi(&self, m: &Monomial) -> (FormalCombination<Monomial>, i64) {
        let n = m.letters.len() as i64;
        let s = m.cuts.iter().filter(|&&c| c).count() as i64;
        let j_junctions = (0..m.cuts.len())
            .filter(|&i| m.cuts[i] && self.in_j(m, i))
            .count() as i64;
        let denom = n - s - 1 + j_junctions;
        let mut out = FormalCombination::new();
        if denom == 0 {
            return (out, denom);
        }
        let scale = Rational64::new(1, denom);
        let mut prefix = 0;
        for (s, e) in m.blocks() {
            prefix += self.degree(&m.letters[s..e]);
            if e == m.letters.len() {
                break;
            }
            // junction between position e-1 and e
            if self.in_j(m, e - 1) {
                let mut merged = m.clone();
                merged.cuts[e - 1] = false;
                out.add(merged, sign_of(prefix) * scale);
            }
        }
        (out, denom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyReport {
    /// Number of basis monomials of `ker φ` checked.
    pub checked: usize,
    /// Monomials (as `[a.b][c]` strings) where `d'ψ + ψd' ≠ Id`.
    pub failures: Vec<String>,
    /// Monomials where `ψ` met a non-positive coefficient denominator.
    pub bad_denominators: Vec<String>,
    /// Letter-length bound actually used.
    pub bound: usize,
    /// Set when the bound produced nothing to check.
    pub note: Option<String>,
}

impl HomotopyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.bad_denominators.is_empty()
    }
}

/// Verifies `d'ψ + ψd' = Id` on the monomial basis of `ker φ` up to
/// `max_path_length` letters, in exact rational arithmetic.
///
/// A monomial of `A_J` lies in `ker φ` exactly when its letter path has at
/// least one consecutive pair in `J` (either inside a generator or at a
/// junction); every such monomial with at most `max_path_length` letters is
/// checked.
pub fn check_homotopy(
    a: &QuadraticMonomialAlgebra,
    j: &BTreeSet<(ArrowId, ArrowId)>,
    max_path_length: usize,
) -> Result<HomotopyReport> {
    check_subset(a, j)?;
    let q = a.quiver();
    let h = Homotopy { a, j };
    let mut report = HomotopyReport {
        checked: 0,
        failures: Vec::new(),
        bad_denominators: Vec::new(),
        bound: max_path_length,
        note: None,
    };
    // letter paths avoiding I \ J at every position
    let mut stack: Vec<Vec<ArrowId>> = if max_path_length == 0 {
        Vec::new()
    } else {
        q.arrow_ids().map(|x| vec![x]).collect()
    };
    let mut paths = Vec::new();
    while let Some(p) = stack.pop() {
        let last = *p.last().unwrap();
        if p.len() < max_path_length {
            for y in q.outgoing(q.target(last)) {
                if !a.is_relation(last, y) || j.contains(&(last, y)) {
                    let mut longer = p.clone();
                    longer.push(y);
                    stack.push(longer);
                }
            }
        }
        paths.push(p);
    }
    paths.sort();
    for letters in paths {
        let j_positions: Vec<usize> = (0..letters.len().saturating_sub(1))
            .filter(|&i| j.contains(&(letters[i], letters[i + 1])))
            .collect();
        if j_positions.is_empty() {
            continue;
        }
        for mask in 0u64..(1u64 << j_positions.len()) {
            let mut cuts = vec![true; letters.len() - 1];
            for (bit, &pos) in j_positions.iter().enumerate() {
                cuts[pos] = mask >> bit & 1 == 1;
            }
            let m = Monomial {
                letters: letters.clone(),
                cuts,
            };
            report.checked += 1;
            let (psi_m, denom) = h.psi(&m);
            if denom <= 0 {
                report.bad_denominators.push(show(q, &m));
                continue;
            }
            let mut total = FormalCombination::new();
            for (t, c) in psi_m.terms() {
                total.add_all(&h.d(t), *c);
            }
            for (t, c) in h.d(&m).terms() {
                let (psi_t, dt) = h.psi(t);
                if dt <= 0 {
                    report.bad_denominators.push(show(q, t));
                }
                total.add_all(&psi_t, *c);
            }
            total.add(m.clone(), -Rational64::one());
            if !total.is_zero() {
                report.failures.push(show(q, &m));
            }
        }
    }
    if report.checked == 0 {
        report.note = Some(if j.is_empty() {
            "J is empty, so ker φ is zero".to_string()
        } else {
            format!("no monomial of ker φ has at most {max_path_length} letters")
        });
    }
    Ok(report)
}

fn show(q: &GradedQuiver, m: &Monomial) -> String {
    m.blocks()
        .iter()
        .map(|&(s, e)| {
            let names: Vec<&str> = m.letters[s..e]
                .iter()
                .map(|&x| q.arrow(x).name.as_str())
                .collect();
            format!("[{}]", names.join("."))
        })
        .collect()
}
