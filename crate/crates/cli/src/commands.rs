use crate::report::{Input, Report};
use crate::Failure;
use serde_json::{json, Map, Value};
use std::time::Instant;
use tempoclass::bandwidth::{bandwidth_curve, fit_class};
use tempoclass::classify::{classify_rsta, ClassifyError, Mode, Options};
use tempoclass::orbit::{export_dot, orbit_dump, path_orbit, Abstraction, Freedom, Kind, OrbitElement, Speed};
use tempoclass::rational::{format_rational, parse_rational};
use tempoclass::region::SplitError;
use tempoclass::ta::check_deterministic;
use tempoclass::words::{directed_distance, distance, Distance};
use tempoclass::{parse_automaton, region_split, Class, Rational, Rsta, TimedAutomaton, TimedWord};

pub struct Outcome {
    pub report: Report,
    pub summary: String,
    pub exit: i32,
}

fn read(path: &str) -> Result<(String, Input), Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::io(format!("cannot read {path}: {e}")))?;
    let input = Input::new(path, &bytes);
    let text = String::from_utf8(bytes).map_err(|_| Failure::parse(format!("{path} is not UTF-8")))?;
    Ok((text, input))
}

fn load_automaton(path: &str) -> Result<(TimedAutomaton, Input), Failure> {
    let (text, input) = read(path)?;
    let a = parse_automaton(&text).map_err(|e| Failure::parse(format!("{path}: {e}")))?;
    Ok((a, input))
}

fn split(a: &TimedAutomaton) -> Result<Rsta, Failure> {
    region_split(a).map_err(|e| match e {
        SplitError::NotDeterministic => Failure::nondeterministic(e.to_string()),
        other => Failure::analysis(other.to_string()),
    })
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn args(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

pub fn validate(file: &str) -> Result<Outcome, Failure> {
    let start = Instant::now();
    let (a, input) = load_automaton(file)?;
    let det = check_deterministic(&a);
    let mut report = Report::new("validate", args(&[("file", json!(file))]));
    report.inputs.push(input);
    let violations: Vec<Value> = det
        .violations
        .iter()
        .map(|v| {
            json!({
                "edges": [a.edge_id(v.first), a.edge_id(v.second)],
                "witness": v.witness.iter().map(format_rational).collect::<Vec<_>>(),
            })
        })
        .collect();
    report.result = json!({
        "name": a.name,
        "clocks": a.clocks,
        "alphabet": a.alphabet,
        "locations": a.locations.len(),
        "edges": a.edges.len(),
        "maxConstant": a.max_constant,
        "uniqueInitial": det.unique_initial,
        "deterministic": det.is_deterministic(),
        "violations": violations,
    });
    if !det.unique_initial {
        report.warnings.push("automaton needs exactly one initial location".into());
    }
    for v in &det.violations {
        report.warnings.push(format!("{} and {} are enabled together", a.edge_id(v.first), a.edge_id(v.second)));
    }
    report.stats = json!({ "wallTimeMs": elapsed_ms(start) });
    let summary = format!(
        "{}: {} locations, {} edges, {} clocks, M = {}, {}",
        file,
        a.locations.len(),
        a.edges.len(),
        a.clocks.len(),
        a.max_constant,
        if det.is_deterministic() { "deterministic" } else { "NOT deterministic" }
    );
    let exit = if det.is_deterministic() { 0 } else { crate::EXIT_NONDETERMINISTIC };
    Ok(Outcome { report, summary, exit })
}

pub fn regionize(file: &str, out: Option<&str>) -> Result<Outcome, Failure> {
    let start = Instant::now();
    let (a, input) = load_automaton(file)?;
    let r = split(&a)?;
    let text = r.serialize(&a.name);
    if let Some(path) = out {
        std::fs::write(path, &text).map_err(|e| Failure::io(format!("cannot write {path}: {e}")))?;
    }
    let mut report = Report::new("regionize", args(&[("file", json!(file)), ("out", json!(out))]));
    report.inputs.push(input);
    let locations: Vec<String> = (0..r.locations.len()).map(|l| r.location_label(l)).collect();
    report.result = json!({
        "locations": locations,
        "edges": r.edges.len(),
        "regions": r.region_count(),
        "automaton": if out.is_none() { Value::String(text.clone()) } else { Value::Null },
    });
    report.stats = json!({ "wallTimeMs": elapsed_ms(start) });
    let summary = match out {
        Some(p) => format!("{} split locations, {} edges written to {p}", r.locations.len(), r.edges.len()),
        None => text,
    };
    Ok(Outcome { report, summary, exit: 0 })
}

/// Maps ids to split edges. `e<k>` ids name split edges directly. `d<k>` ids name original
/// edges; they are matched to a split path following them in order, preferring paths through
/// time-open guards and, when the original path is a cycle, split paths closing up.
pub fn resolve_path(a: &TimedAutomaton, r: &Rsta, ids: &[String]) -> Result<Vec<usize>, Failure> {
    let parse_id = |id: &str, prefix: char, count: usize| -> Option<usize> {
        let k: usize = id.strip_prefix(prefix)?.parse().ok()?;
        (1..=count).contains(&k).then(|| k - 1)
    };
    if ids.iter().all(|id| id.starts_with('e')) {
        let path: Option<Vec<usize>> = ids.iter().map(|id| parse_id(id, 'e', r.edges.len())).collect();
        let path = path.ok_or_else(|| Failure::usage(format!("unknown split edge in {}", ids.join(","))))?;
        if !r.is_path(&path) {
            return Err(Failure::usage("edges do not form a path".into()));
        }
        return Ok(path);
    }
    let originals: Option<Vec<usize>> = ids.iter().map(|id| parse_id(id, 'd', a.edges.len())).collect();
    let originals = originals.ok_or_else(|| Failure::usage(format!("unknown edge in {}", ids.join(","))))?;
    let cyclic = match (originals.first(), originals.last()) {
        (Some(&f), Some(&l)) => a.edges[l].dst == a.edges[f].src,
        _ => return Err(Failure::usage("empty path".into())),
    };
    let mut best: Option<(usize, Vec<usize>)> = None;
    for start in 0..r.locations.len() {
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(start, Vec::new())];
        while let Some((loc, path)) = stack.pop() {
            if path.len() == originals.len() {
                if cyclic && loc != start {
                    continue;
                }
                let open = path.iter().filter(|&&e| r.edges[e].guard.is_open_in_time()).count();
                if best.as_ref().is_none_or(|(b, _)| open > *b) {
                    best = Some((open, path));
                }
                continue;
            }
            for &e in r.outgoing(loc).iter().rev() {
                if r.edges[e].original == originals[path.len()] {
                    let mut next = path.clone();
                    next.push(e);
                    stack.push((r.edges[e].dst, next));
                }
            }
        }
    }
    best.map(|(_, p)| p).ok_or_else(|| Failure::usage(format!("no split path follows {}", ids.join(","))))
}

fn orbit_of<S: Abstraction>(r: &Rsta, path: &[usize], dot: Option<&str>, kind: &str) -> Result<(Value, String), Failure> {
    let e: OrbitElement<S> = path_orbit(r, path);
    if let Some(p) = dot {
        std::fs::write(p, export_dot(r, &e, kind)).map_err(|err| Failure::io(format!("cannot write {p}: {err}")))?;
    }
    let dump = orbit_dump(r, &e, kind);
    let rows: Vec<String> = dump.rows.iter().map(|row| format!("({})", row.join(","))).collect();
    let text = format!("({})", rows.join(","));
    Ok((serde_json::to_value(&dump).expect("dump serializes"), text))
}

pub fn orbit(file: &str, ids: &[String], kind: Kind, dot: Option<&str>) -> Result<Outcome, Failure> {
    let start = Instant::now();
    let (a, input) = load_automaton(file)?;
    let r = split(&a)?;
    let path = resolve_path(&a, &r, ids)?;
    let (dump, text) = match kind {
        Kind::P => orbit_of::<bool>(&r, &path, dot, kind.name())?,
        Kind::F => orbit_of::<Freedom>(&r, &path, dot, kind.name())?,
        Kind::D => orbit_of::<Speed>(&r, &path, dot, kind.name())?,
    };
    let split_ids: Vec<String> = path.iter().map(|&e| r.edge_id(e)).collect();
    let mut report = Report::new(
        "orbit",
        args(&[("file", json!(file)), ("path", json!(ids)), ("kind", json!(kind.name())), ("dot", json!(dot))]),
    );
    report.inputs.push(input);
    report.result = json!({ "splitPath": split_ids, "orbit": dump, "matrix": text });
    report.stats = json!({ "wallTimeMs": elapsed_ms(start) });
    let summary = format!("{}-orbit of {} (split path {}): {}", kind.name(), ids.join(","), split_ids.join(","), text);
    Ok(Outcome { report, summary, exit: 0 })
}

pub fn classify(file: &str, cap: usize, mode: Mode) -> Result<Outcome, Failure> {
    let (a, input) = load_automaton(file)?;
    let r = split(&a)?;
    let verdict = classify_rsta(&r, &Options { cap, mode }).map_err(|e| match e {
        ClassifyError::Cap { .. } => Failure::cap(e.to_string()),
        ClassifyError::Split(SplitError::NotDeterministic) => Failure::nondeterministic(e.to_string()),
        other => Failure::analysis(other.to_string()),
    })?;
    let mode_name = match mode {
        Mode::Bfs => "bfs",
        Mode::Savitch => "savitch",
    };
    let mut report = Report::new("classify", args(&[("file", json!(file)), ("cap", json!(cap)), ("mode", json!(mode_name))]));
    report.inputs.push(input);
    let mut result = serde_json::to_value(&verdict).expect("verdict serializes");
    let stats = result.as_object_mut().and_then(|o| o.remove("stats")).unwrap_or(Value::Null);
    report.result = result;
    report.stats = stats;
    let exit = match verdict.class {
        Class::Meager => 0,
        Class::Normal => 1,
        Class::Obese => 2,
    };
    let class = serde_json::to_value(verdict.class).unwrap();
    let fatness = serde_json::to_value(verdict.fatness).unwrap();
    let obesity = serde_json::to_value(verdict.obesity_type).unwrap();
    let mut summary = format!("{file}: {} ({}), obesity type {}", class.as_str().unwrap(), fatness.as_str().unwrap(), obesity.as_str().unwrap());
    for w in &verdict.witnesses {
        summary.push_str(&format!("\n  {} [{}-orbit] cycle {}", w.role, w.kind, w.cycle.join(",")));
        if let Some([u, v]) = w.position {
            summary.push_str(&format!(" at ({u},{v})"));
        }
    }
    Ok(Outcome { report, summary, exit })
}

fn distance_json(d: &Distance) -> Value {
    match d.finite() {
        Some(x) => json!(format_rational(x)),
        None => json!("inf"),
    }
}

pub fn distance_cmd(first: &str, second: &str) -> Result<Outcome, Failure> {
    let start = Instant::now();
    let load = |p: &str| -> Result<(TimedWord, Input), Failure> {
        let (text, input) = read(p)?;
        let w = TimedWord::parse(&text).map_err(|e| Failure::parse(format!("{p}: {e}")))?;
        Ok((w, input))
    };
    let (u, iu) = load(first)?;
    let (v, iv) = load(second)?;
    let (fw, bw, d) = (directed_distance(&u, &v), directed_distance(&v, &u), distance(&u, &v));
    let mut report = Report::new("distance", args(&[("first", json!(first)), ("second", json!(second))]));
    report.inputs = vec![iu, iv];
    report.result = json!({ "forward": distance_json(&fw), "backward": distance_json(&bw), "distance": distance_json(&d) });
    report.stats = json!({ "wallTimeMs": elapsed_ms(start) });
    let summary = d.finite().map_or_else(|| "inf".to_string(), format_rational);
    Ok(Outcome { report, summary, exit: 0 })
}

pub fn parse_list(text: &str, what: &str) -> Result<Vec<Rational>, Failure> {
    text.split(',')
        .map(|s| {
            parse_rational(s.trim())
                .filter(|r| *r > Rational::from_integer(0.into()))
                .ok_or_else(|| Failure::usage(format!("bad {what} `{s}`")))
        })
        .collect()
}

pub fn bandwidth(file: &str, ts: &[Rational], eps: &[Rational], grid: Option<&Rational>, entropy: bool, csv: Option<&str>) -> Result<Outcome, Failure> {
    let start = Instant::now();
    let (a, input) = load_automaton(file)?;
    let curve = bandwidth_curve(&a, ts, eps, grid, entropy).map_err(|e| Failure::analysis(e.to_string()))?;
    if let Some(p) = csv {
        std::fs::write(p, curve.to_csv()).map_err(|e| Failure::io(format!("cannot write {p}: {e}")))?;
    }
    let show = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
    let mut report = Report::new(
        "bandwidth",
        args(&[
            ("file", json!(file)),
            ("T", json!(show(ts))),
            ("epsilon", json!(show(eps))),
            ("grid", json!(grid.map(format_rational))),
            ("entropy", json!(entropy)),
        ]),
    );
    report.inputs.push(input);
    let fit = fit_class(&curve);
    let mut summary = curve.to_csv();
    let fit_json = match &fit {
        Ok(f) => {
            if f.inconclusive {
                report.warnings.push(format!("fit inconclusive: residual ratio {:.3} < 2", f.residual_ratio));
            }
            let model = serde_json::to_value(f.model).unwrap();
            summary.push_str(&format!(
                "fit: {} (class {}), constant {:.4}, residual ratio {:.3}{}",
                model.as_str().unwrap(),
                serde_json::to_value(f.model.class()).unwrap().as_str().unwrap(),
                f.constant,
                f.residual_ratio,
                if f.inconclusive { ", inconclusive" } else { "" }
            ));
            let mut v = serde_json::to_value(f).unwrap();
            v["class"] = serde_json::to_value(f.model.class()).unwrap();
            v
        }
        Err(e) => {
            report.warnings.push(e.to_string());
            summary.push_str(&format!("fit: {e}"));
            Value::Null
        }
    };
    report.result = json!({ "rows": curve.rows, "fit": fit_json });
    report.stats = json!({
        "rows": curve.rows.len(),
        "maxBitsPerSecond": curve.rows.iter().map(|r| r.bits_per_second).fold(0.0, f64::max),
        "wallTimeMs": elapsed_ms(start),
    });
    Ok(Outcome { report, summary, exit: 0 })
}
