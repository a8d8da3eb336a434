//! One function per verb; each turns a parsed document into a report.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use qga_core::document::{parse_relation_list, parse_vertex_list};
use qga_core::quiver::{Path, Witness};
use qga_core::surface::{Corner, End, Regularity};
use qga_core::{
    assemble_ribbon, build_aj, check_differential, check_homotopy, check_phi, corner_algebra,
    corner_via_dual, detect_an_shape, exceptional_sequence_acyclic, ext_table, graded_iso,
    has_full_exceptional_sequence, idempotent_cut, is_presilting_projective, is_presmc_simples,
    is_proper, is_smooth, parse_document, quadratic_dual, serialize_document, silting_existence,
    surface_invariants, two_out_of_three, validate_gentle, ArrowId, Error, GradedQuiver,
    Idempotent, QuadraticMonomialAlgebra, Verdict, WordAlgebra,
};
use serde_json::{json, Value};

use crate::{Command, Settings};

/// What a verb prints and how the process exits.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }

    pub fn io_error(message: String) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
            code: 1,
        }
    }

    fn from_error(e: Error) -> Self {
        let code = if matches!(e, Error::Infinite(_)) {
            2
        } else {
            1
        };
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code,
        }
    }
}

type Report = Result<Outcome, Error>;

pub fn run(cmd: &Command, s: &Settings, text: &str) -> Outcome {
    let doc = match parse_document(text) {
        Ok(d) => d,
        Err(e) => return Outcome::from_error(e),
    };
    let a = &doc.algebra;
    let result = match cmd {
        Command::Validate(_) => validate(s, a),
        Command::Dual(_) => Ok(Outcome::ok(serialize_document(
            &quadratic_dual(a),
            doc.truncation_bound,
        ))),
        Command::Cut { remove, .. } => cut(s, a, remove),
        Command::Corner { keep, via_dual, .. } => corner(s, a, keep, *via_dual),
        Command::Resolve { j, .. } => resolve(s, a, j.as_deref()),
        Command::CheckResolution { j, depth, .. } => check_resolution(s, a, j.as_deref(), *depth),
        Command::Invariants(_) => invariants(s, a),
        Command::Surface { emit, .. } => surface(s, a, emit.is_some()),
        Command::Ext {
            min_shift,
            max_shift,
            ..
        } => ext(s, a, *min_shift, *max_shift),
        Command::Presilting { keep, .. } => presilting(s, a, keep),
        Command::Presmc { keep, .. } => presmc(s, a, keep),
        Command::Classify(_) => classify(s, a),
        Command::Recollement { remove, .. } => recollement(s, a, remove),
        Command::Iso { .. } => unreachable!("iso reads two documents"),
    };
    result.unwrap_or_else(Outcome::from_error)
}

pub fn iso(s: &Settings, left: &str, right: &str) -> Outcome {
    let (a, b) = match (parse_document(left), parse_document(right)) {
        (Ok(a), Ok(b)) => (a.algebra, b.algebra),
        (Err(e), _) | (_, Err(e)) => return Outcome::from_error(e),
    };
    let (qa, qb) = (a.quiver(), b.quiver());
    let found = graded_iso(&a, &b);
    if s.json {
        let body = match &found {
            None => json!({"isomorphic": false}),
            Some(f) => {
                let vertices: Vec<Value> = qa
                    .vertex_ids()
                    .map(|v| json!([qa.vertex_name(v), qb.vertex_name(f.vertex_map[v.0])]))
                    .collect();
                let arrows: Vec<Value> = qa
                    .arrow_ids()
                    .map(|x| json!([qa.arrow(x).name, qb.arrow(f.arrow_map[x.0]).name]))
                    .collect();
                json!({"isomorphic": true, "vertices": vertices, "arrows": arrows})
            }
        };
        return Outcome::ok(pretty(&body));
    }
    let mut out = String::new();
    match &found {
        None => out.push_str("isomorphic: no\n"),
        Some(f) => {
            out.push_str("isomorphic: yes\n");
            for v in qa.vertex_ids() {
                let w = f.vertex_map[v.0];
                let _ = writeln!(
                    out,
                    "  vertex {} -> {}",
                    qa.vertex_name(v),
                    qb.vertex_name(w)
                );
            }
            for x in qa.arrow_ids() {
                let y = f.arrow_map[x.0];
                let _ = writeln!(out, "  arrow {} -> {}", qa.arrow(x).name, qb.arrow(y).name);
            }
        }
    }
    Outcome::ok(out)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn idempotent(a: &QuadraticMonomialAlgebra, list: &str) -> Result<Idempotent, Error> {
    a.idempotent(&parse_vertex_list(list)?)
}

fn relation_set(
    a: &QuadraticMonomialAlgebra,
    list: Option<&str>,
) -> Result<BTreeSet<(ArrowId, ArrowId)>, Error> {
    match list {
        None => Ok(a.relations().clone()),
        Some(text) => Ok(parse_relation_list(a, text)?.into_iter().collect()),
    }
}

fn path_text(q: &GradedQuiver, p: &Path) -> String {
    p.display(q).to_string()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn validate(s: &Settings, a: &QuadraticMonomialAlgebra) -> Report {
    let q = a.quiver();
    let report = validate_gentle(a);
    let witness = |w: &Witness| -> (String, Value) {
        match w {
            Witness::Vertex(v) => (
                format!("vertex {}", q.vertex_name(*v)),
                json!({"vertex": q.vertex_name(*v)}),
            ),
            Witness::Arrows(xs) => {
                let names: Vec<&str> = xs.iter().map(|&x| q.arrow(x).name.as_str()).collect();
                (
                    format!("arrows {}", names.join(", ")),
                    json!({"arrows": names}),
                )
            }
        }
    };
    let stdout = if s.json {
        let violations: Vec<Value> = report
            .violations
            .iter()
            .map(|v| {
                let mut w = witness(&v.witness).1;
                w["condition"] = json!(v.condition.to_string());
                w
            })
            .collect();
        pretty(&json!({"gentle": report.is_gentle, "violations": violations}))
    } else {
        let mut out = format!("gentle: {}\n", yes_no(report.is_gentle));
        for v in &report.violations {
            let _ = writeln!(
                out,
                "  {} violated at {}",
                v.condition,
                witness(&v.witness).0
            );
        }
        out
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code: if report.is_gentle { 0 } else { 1 },
    })
}

fn word_document(w: &WordAlgebra) -> Outcome {
    Outcome::ok(serialize_document(&w.algebra, w.truncation_bound))
}

fn cut(s: &Settings, a: &QuadraticMonomialAlgebra, remove: &str) -> Report {
    let e = idempotent(a, remove)?;
    Ok(word_document(&idempotent_cut(a, &e, s.bound)?))
}

fn corner(s: &Settings, a: &QuadraticMonomialAlgebra, keep: &str, via_dual: bool) -> Report {
    let e = idempotent(a, keep)?;
    let w = if via_dual {
        corner_via_dual(a, &e, s.bound)?
    } else {
        corner_algebra(a, &e, s.bound)?
    };
    Ok(word_document(&w))
}

fn resolve(s: &Settings, a: &QuadraticMonomialAlgebra, j: Option<&str>) -> Report {
    let j = relation_set(a, j)?;
    Ok(Outcome::ok(build_aj(a, &j, s.bound)?.to_document()))
}

fn check_resolution(
    s: &Settings,
    a: &QuadraticMonomialAlgebra,
    j: Option<&str>,
    depth: usize,
) -> Report {
    let jset = relation_set(a, j)?;
    let b = build_aj(a, &jset, s.bound)?;
    let d = check_differential(&b);
    let phi = check_phi(a, &b);
    let h = check_homotopy(a, &jset, depth)?;
    let bq = b.algebra.quiver();
    let passed = d.passed() && phi && h.passed();
    let stdout = if s.json {
        pretty(&json!({
            "generators": b.generator_count(),
            "truncation_bound": b.truncation_bound,
            "differential_squares_to_zero": d.first_failure.is_none(),
            "differential_checked": d.checked,
            "degree_failures": d.degree_failures.iter().map(|&x| bq.arrow(x).name.as_str()).collect::<Vec<_>>(),
            "projection_is_chain_map": phi,
            "homotopy_checked": h.checked,
            "homotopy_bound": h.bound,
            "homotopy_failures": h.failures,
            "bad_denominators": h.bad_denominators,
            "passed": passed,
        }))
    } else {
        let mut out = String::new();
        let _ = write!(out, "generators: {}", b.generator_count());
        match b.truncation_bound {
            Some(n) => {
                let _ = writeln!(out, " (truncated at word length {n})");
            }
            None => out.push('\n'),
        }
        let first = d.first_failure.map_or(String::new(), |x| {
            format!(", fails at {}", bq.arrow(x).name)
        });
        let _ = writeln!(
            out,
            "d'^2 = 0: {} ({} generators{first})",
            pass(d.first_failure.is_none()),
            d.checked
        );
        let _ = writeln!(out, "degree +1: {}", pass(d.degree_failures.is_empty()));
        let _ = writeln!(out, "projection to A: {}", pass(phi));
        let _ = writeln!(
            out,
            "homotopy: {} ({} elements up to length {})",
            pass(h.passed()),
            h.checked,
            h.bound
        );
        for f in h.failures.iter().chain(&h.bad_denominators) {
            let _ = writeln!(out, "  {f}");
        }
        if let Some(note) = &h.note {
            let _ = writeln!(out, "  {note}");
        }
        out
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code: if passed { 0 } else { 1 },
    })
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn invariants(s: &Settings, a: &QuadraticMonomialAlgebra) -> Report {
    let inv = surface_invariants(a)?;
    let smooth = is_smooth(a).holds;
    let proper = is_proper(a).holds;
    if s.json {
        let mut v = inv.to_json();
        v["smooth"] = json!(smooth);
        v["proper"] = json!(proper);
        return Ok(Outcome::ok(pretty(&v)));
    }
    let rows = [
        ("genus", inv.genus.to_string()),
        ("boundary_components", inv.boundary_components.to_string()),
        ("boundary_circ", inv.boundary_circ.to_string()),
        ("boundary_bullet", inv.boundary_bullet.to_string()),
        ("punctures_circ", inv.punctures_circ.to_string()),
        ("punctures_bullet", inv.punctures_bullet.to_string()),
        ("euler_characteristic", inv.euler_characteristic.to_string()),
        ("components", inv.components.to_string()),
        ("smooth", smooth.to_string()),
        ("proper", proper.to_string()),
    ];
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k}: {v}");
    }
    Ok(Outcome::ok(out))
}

fn surface(s: &Settings, a: &QuadraticMonomialAlgebra, dot: bool) -> Report {
    let r = assemble_ribbon(a)?;
    if dot {
        return Ok(Outcome::ok(r.to_dot(a)));
    }
    let q = a.quiver();
    let end = |e: &End| format!("{}:{}", q.vertex_name(e.arc), e.side);
    let corner = |c: &Corner| match c {
        Corner::End(e) => end(e),
        Corner::Gap(k) => format!("gap{k}"),
    };
    let inv = r.invariants(q.vertex_count());
    if s.json {
        let chains: Vec<Value> = r
            .chains
            .iter()
            .map(
                |c| json!({"ends": c.ends.iter().map(end).collect::<Vec<_>>(), "cyclic": c.cyclic}),
            )
            .collect();
        let faces: Vec<Value> = r
            .faces
            .iter()
            .map(|f| json!({"corners": f.corners.iter().map(corner).collect::<Vec<_>>(), "boundary": f.boundary}))
            .collect();
        return Ok(Outcome::ok(pretty(&json!({
            "chains": chains,
            "faces": faces,
            "invariants": inv.to_json(),
        }))));
    }
    let mut out = String::new();
    for (k, c) in r.chains.iter().enumerate() {
        let kind = if c.cyclic { "puncture" } else { "boundary" };
        let ends: Vec<String> = c.ends.iter().map(end).collect();
        let _ = writeln!(out, "circ point c{k} ({kind}): {}", ends.join(" "));
    }
    for (k, f) in r.faces.iter().enumerate() {
        let kind = if f.boundary {
            "boundary"
        } else {
            "bullet puncture"
        };
        let corners: Vec<String> = f.corners.iter().map(corner).collect();
        let _ = writeln!(out, "face f{k} ({kind}): {}", corners.join(" "));
    }
    let _ = writeln!(
        out,
        "genus {}, {} boundary components, euler characteristic {}",
        inv.genus, inv.boundary_components, inv.euler_characteristic
    );
    Ok(Outcome::ok(out))
}

fn ext(s: &Settings, a: &QuadraticMonomialAlgebra, min: Option<i64>, max: Option<i64>) -> Report {
    let range =
        (min.is_some() || max.is_some()).then(|| min.unwrap_or(i64::MIN)..=max.unwrap_or(i64::MAX));
    let table = ext_table(a, range, s.bound)?;
    if s.json {
        return Ok(Outcome::ok(pretty(&table.to_json(a))));
    }
    let q = a.quiver();
    let mut out = String::new();
    for (&(i, j, l), basis) in &table.entries {
        let paths: Vec<String> = basis.iter().map(|p| path_text(q, p)).collect();
        let _ = writeln!(
            out,
            "{} -> {} shift {l}: dim {} [{}]",
            q.vertex_name(i),
            q.vertex_name(j),
            basis.len(),
            paths.join(", ")
        );
    }
    if let Some(b) = table.truncation_bound {
        let _ = writeln!(out, "(truncated at path length {b})");
    }
    Ok(Outcome::ok(out))
}

fn presilting(s: &Settings, a: &QuadraticMonomialAlgebra, keep: &str) -> Report {
    let e = idempotent(a, keep)?;
    let r = is_presilting_projective(a, &e);
    let q = a.quiver();
    if s.json {
        let offending = r
            .offending
            .as_ref()
            .map(|p| json!({"path": p.names(q), "degree": p.degree}));
        return Ok(Outcome::ok(pretty(
            &json!({"presilting": r.holds, "offending": offending}),
        )));
    }
    let mut out = format!("pre-silting: {}\n", yes_no(r.holds));
    if let Some(p) = &r.offending {
        let _ = writeln!(out, "  path {} has degree {}", path_text(q, p), p.degree);
    }
    Ok(Outcome::ok(out))
}

fn presmc(s: &Settings, a: &QuadraticMonomialAlgebra, keep: &str) -> Report {
    let e = idempotent(a, keep)?;
    let r = is_presmc_simples(a, &e)?;
    let q = a.quiver();
    if s.json {
        let offending = r.offending.map(|((i, j, l), dim)| {
            json!({"i": q.vertex_name(i), "j": q.vertex_name(j), "l": l, "dim": dim})
        });
        return Ok(Outcome::ok(pretty(
            &json!({"presmc": r.holds, "offending": offending}),
        )));
    }
    let mut out = format!("pre-simple-minded: {}\n", yes_no(r.holds));
    if let Some(((i, j, l), dim)) = r.offending {
        let _ = writeln!(
            out,
            "  Hom(S_{}, S_{}[{l}]) has dimension {dim}",
            q.vertex_name(i),
            q.vertex_name(j)
        );
    }
    Ok(Outcome::ok(out))
}

fn classify(s: &Settings, a: &QuadraticMonomialAlgebra) -> Report {
    let q = a.quiver();
    let inv = surface_invariants(a)?;
    let exceptional = has_full_exceptional_sequence(a)?;
    let silting = silting_existence(a)?;
    let shape = detect_an_shape(a);
    let sequence = exceptional_sequence_acyclic(a);
    let seq_names: Option<Vec<&str>> =
        sequence.map(|vs| vs.iter().map(|&v| q.vertex_name(v)).collect());
    if s.json {
        let shape = shape.as_ref().map(|sh| {
            json!({"n": sh.n, "params": sh.params.iter().map(|&(x, y)| json!([x, y])).collect::<Vec<_>>()})
        });
        return Ok(Outcome::ok(pretty(&json!({
            "an_shape": shape,
            "surface": inv.to_json(),
            "exceptional": exceptional,
            "exceptional_sequence": seq_names,
            "silting": silting.to_json("silting"),
            "smc": silting.to_json("smc"),
        }))));
    }
    let mut out = String::new();
    match &shape {
        Some(sh) => {
            let params: Vec<String> = sh
                .params
                .iter()
                .map(|(x, y)| format!("({x},{y})"))
                .collect();
            let _ = writeln!(out, "shape: A^({}) with (a,b) = {}", sh.n, params.join(" "));
        }
        None => out.push_str("shape: not A^(n)\n"),
    }
    let _ = writeln!(
        out,
        "surface: g={} b={} boundary_circ={} components={}",
        inv.genus, inv.boundary_components, inv.boundary_circ, inv.components
    );
    let _ = writeln!(out, "exceptional: {exceptional}");
    match &seq_names {
        Some(names) => {
            let _ = writeln!(out, "exceptional sequence: {}", names.join(", "));
        }
        None => out.push_str("exceptional sequence: (quiver has oriented cycles)\n"),
    }
    verdict_line(&mut out, "silting", &silting);
    verdict_line(&mut out, "smc", &silting);
    Ok(Outcome::ok(out))
}

fn verdict_line(out: &mut String, question: &str, v: &Verdict) {
    let rules: Vec<&str> = v.rules.iter().map(|r| r.id()).collect();
    let _ = writeln!(out, "{question}: {} [{}]", v.value, rules.join(","));
    for e in &v.evidence {
        let _ = writeln!(out, "  {e}");
    }
}

fn recollement(s: &Settings, a: &QuadraticMonomialAlgebra, remove: &str) -> Report {
    let e = idempotent(a, remove)?;
    let cut = idempotent_cut(a, &e, s.bound)?;
    let corner = corner_algebra(a, &e, s.bound)?;
    // finite pieces ignore the bound
    let r = two_out_of_three(a, &e, s.bound.unwrap_or(usize::MAX))?;
    let verdict = match r.consistent {
        Some(true) => "consistent",
        Some(false) => "VIOLATED",
        None => "undecided (truncated)",
    };
    let pieces: [(&str, String, &Regularity); 3] = [
        (
            "cut",
            serialize_document(&cut.algebra, cut.truncation_bound),
            &r.cut,
        ),
        ("whole", serialize_document(a, None), &r.whole),
        (
            "corner",
            serialize_document(&corner.algebra, corner.truncation_bound),
            &r.corner,
        ),
    ];
    if s.json {
        let mut body = serde_json::Map::new();
        body.insert("removed".into(), json!(e.names(a.quiver())));
        for (key, doc, reg) in &pieces {
            let algebra: Value = serde_json::from_str(doc).expect("canonical documents are json");
            body.insert(
                (*key).into(),
                json!({"algebra": algebra, "regularity": reg.to_json()}),
            );
        }
        body.insert("two_out_of_three".into(), json!(r.consistent));
        return Ok(Outcome::ok(pretty(&Value::Object(body))));
    }
    let titles = ["A_e (cut)", "A", "eAe (corner)"];
    let mut out = format!("removed: {}\n", e.names(a.quiver()).join(", "));
    for (title, (_, doc, reg)) in titles.iter().zip(&pieces) {
        let _ = writeln!(
            out,
            "== {title}: smooth {}, proper {}, finite {} ==",
            reg.smooth, reg.proper, reg.finite
        );
        out.push_str(doc);
    }
    let _ = writeln!(out, "two-out-of-three: {verdict}");
    Ok(Outcome::ok(out))
}
