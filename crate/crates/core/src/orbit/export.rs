use super::{OrbitElement, Semiring};
use crate::region::Rsta;
use serde::Serialize;
use std::fmt::Write as _;

fn vertex_name(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

fn style(label: &str) -> &'static str {
    match label {
        "wide" | "fast" => "color=red, penwidth=3",
        "slow" => "color=blue, style=dashed",
        _ => "color=black",
    }
}

/// DOT rendering: a bipartite graph from source to destination vertices, or a single vertex
/// set with loops for cyclic elements. Zero and One render as annotated empty graphs.
pub fn export_dot<S: Semiring>(a: &Rsta, e: &OrbitElement<S>, kind: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph orbit {{");
    let _ = writeln!(out, "  rankdir=LR;");
    let _ = writeln!(out, "  label=\"{kind}-orbit\";");
    match e {
        OrbitElement::Zero => {
            let _ = writeln!(out, "  // zero element: no reachability");
            let _ = writeln!(out, "  label=\"{kind}-orbit: 0\";");
        }
        OrbitElement::One => {
            let _ = writeln!(out, "  // unit element: empty path");
            let _ = writeln!(out, "  label=\"{kind}-orbit: 1\";");
        }
        OrbitElement::Triple { src, matrix, dst } => {
            let cyclic = src == dst;
            let (vs, ws) = (a.vertices(*src), a.vertices(*dst));
            for (i, v) in vs.iter().enumerate() {
                let _ = writeln!(out, "  s{i} [label=\"{}\"];", vertex_name(v));
            }
            if !cyclic {
                for (j, w) in ws.iter().enumerate() {
                    let _ = writeln!(out, "  t{j} [label=\"{}\"];", vertex_name(w));
                }
            }
            for i in 0..matrix.rows() {
                for j in 0..matrix.cols() {
                    let x = matrix.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    let target = if cyclic { format!("s{j}") } else { format!("t{j}") };
                    let label = x.label();
                    let _ = writeln!(out, "  s{i} -> {target} [label=\"{label}\", {}];", style(label));
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

/// JSON form `{src, dst, kind, rows}` with entry labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitDump {
    pub src: Option<String>,
    pub dst: Option<String>,
    pub kind: String,
    pub rows: Vec<Vec<String>>,
}

pub fn orbit_dump<S: Semiring>(a: &Rsta, e: &OrbitElement<S>, kind: &str) -> OrbitDump {
    match e {
        OrbitElement::Zero => OrbitDump { src: None, dst: None, kind: kind.into(), rows: vec![vec!["0".into()]] },
        OrbitElement::One => OrbitDump { src: None, dst: None, kind: kind.into(), rows: vec![vec!["1".into()]] },
        OrbitElement::Triple { src, matrix, dst } => OrbitDump {
            src: Some(a.location_label(*src)),
            dst: Some(a.location_label(*dst)),
            kind: kind.into(),
            rows: matrix.to_rows().iter().map(|r| r.iter().map(|x| x.label().to_string()).collect()).collect(),
        },
    }
}
