//! Text formats: datum JSON, grid and table CSVs, edge lists, DOT, SVG line
//! plots and homotopy-trace JSON. Every writer is deterministic.

use std::fmt::Write as _;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::classical::{torus_coords, BipartiteMultigraph};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pi1::HomotopyTrace;
use crate::surface::{validate_datum, Surface, SurfacePoint};
use crate::warpgraph::{EdgeKind, LevelGraph};

#[derive(Deserialize)]
struct DatumFile {
    m: usize,
    sigma: Vec<usize>,
    tau: Vec<usize>,
}

/// Parse `{"m": .., "sigma": [..], "tau": [..]}` (0-based images) into a
/// validated surface. Extra keys are ignored.
pub fn parse_datum_json(text: &str) -> Result<Surface> {
    let d: DatumFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    validate_datum(d.m, d.sigma, d.tau)
}

pub fn datum_json(surface: &Surface) -> Value {
    let d = surface.datum();
    json!({
        "m": d.m,
        "sigma": d.sigma.images(),
        "tau": d.tau.images(),
        "genus": surface.genus(),
        "corner_classes": surface.corner_classes(),
    })
}

pub const GRID_HEADER: &str = "square,xnum,xden,ynum,yden";

fn point_row(p: &SurfacePoint) -> String {
    format!("{},{},{},{},{}", p.square, p.x.numer(), p.x.denom(), p.y.numer(), p.y.denom())
}

/// One row per point, in the given order.
pub fn points_csv<'a>(points: impl IntoIterator<Item = &'a SurfacePoint>) -> String {
    let mut out = format!("{GRID_HEADER}\n");
    for p in points {
        out.push_str(&point_row(p));
        out.push('\n');
    }
    out
}

pub fn grid_csv(surface: &Surface, n: u64) -> String {
    points_csv(&surface.grid_points(n))
}

/// Vertex table of a level: `id,square,xnum,xden,ynum,yden`.
pub fn vertices_csv(level: &LevelGraph) -> String {
    let mut out = format!("id,{GRID_HEADER}\n");
    for (i, p) in level.vertices().iter().enumerate() {
        let _ = writeln!(out, "{i},{}", point_row(p));
    }
    out
}

/// `u v KIND` per edge, preceded by a `#` header naming the level.
pub fn level_edge_list(level: &LevelGraph) -> String {
    let mut out = format!(
        "# k={} t={} vertices={} edges={}\n",
        level.k(),
        level.level(),
        level.vertices().len(),
        level.graph().num_edges()
    );
    for (&(u, v), kind) in level.graph().edges().iter().zip(level.kinds()) {
        let _ = writeln!(out, "{u} {v} {}", kind.label());
    }
    out
}

pub fn parse_level_edge_list(text: &str) -> Result<Vec<(u32, u32, EdgeKind)>> {
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Error::Parse(format!("edge list line {}: `{line}`", lineno + 1));
        let mut it = line.split_whitespace();
        let u = it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        let v = it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        let kind = EdgeKind::parse(it.next().ok_or_else(bad)?)?;
        if it.next().is_some() {
            return Err(bad());
        }
        edges.push((u, v, kind));
    }
    Ok(edges)
}

/// Plain `u v` edge list with a vertex-count header.
pub fn graph_edge_list(graph: &Graph) -> String {
    let mut out = format!("# vertices={} edges={}\n", graph.num_vertices(), graph.num_edges());
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_graph_edge_list(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix('#') {
            for tok in rest.split_whitespace() {
                if let Some(v) = tok.strip_prefix("vertices=") {
                    n = Some(v.parse().map_err(|_| Error::Parse(format!("header `{line}`")))?);
                }
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let bad = || Error::Parse(format!("edge list line {}: `{line}`", lineno + 1));
        let mut it = line.split_whitespace();
        let u: u32 = it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        let v: u32 = it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        edges.push((u, v));
    }
    let max = edges.iter().map(|e| e.0.max(e.1) as usize + 1).max().unwrap_or(0);
    let n = n.unwrap_or(max);
    if max > n {
        return Err(Error::Parse(format!("edge endpoint {} beyond {n} vertices", max - 1)));
    }
    Ok(Graph::new(n, edges))
}

fn kind_colour(kind: &EdgeKind) -> &'static str {
    match kind {
        EdgeKind::Metric => "black",
        EdgeKind::Warp(l) => match l.as_char() {
            'a' => "red",
            'A' => "orange",
            'b' => "blue",
            _ => "cyan",
        },
    }
}

pub fn level_dot(level: &LevelGraph) -> String {
    let mut out = format!("graph level_{} {{\n  node [shape=point];\n", level.level());
    for (i, p) in level.vertices().iter().enumerate() {
        let _ = writeln!(out, "  {i} [label=\"{p}\"];");
    }
    for (&(u, v), kind) in level.graph().edges().iter().zip(level.kinds()) {
        let _ = writeln!(out, "  {u} -- {v} [kind=\"{}\", color={}];", kind.label(), kind_colour(kind));
    }
    out.push_str("}\n");
    out
}

/// `L:x,y R:x,y transform` per edge, multiplicities kept.
pub fn bipartite_edge_list(g: &BipartiteMultigraph) -> String {
    let mut out = format!("# n={} transforms={}\n", g.n, g.transforms.len());
    for &(l, r, t) in &g.edges {
        let (lx, ly) = torus_coords(l, g.n);
        let (rx, ry) = torus_coords(r, g.n);
        let _ = writeln!(out, "L:{lx},{ly} R:{rx},{ry} {}", g.transforms[t].0);
    }
    out
}

pub fn distances_csv(rows: &[(String, String, u32)]) -> String {
    let mut out = String::from("u,v,distance\n");
    for (u, v, d) in rows {
        let _ = writeln!(out, "{u},{v},{d}");
    }
    out
}

pub fn trace_json(level: &LevelGraph, trace: &HomotopyTrace) -> Value {
    let name = |v: &u32| level.vertices()[*v as usize].to_string();
    json!({
        "base": name(&trace.base),
        "r": trace.r,
        "moves": trace.moves.iter().map(|m| json!({
            "index": m.index,
            "old": m.old.iter().map(name).collect::<Vec<_>>(),
            "new": m.new.iter().map(name).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

/// A small line chart. Each series is drawn as a polyline with markers;
/// the x axis is logarithmic when `log_x` is set.
pub fn svg_line_plot(title: &str, x_label: &str, y_label: &str, series: &[(&str, Vec<(f64, f64)>)], log_x: bool) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const M: f64 = 60.0;
    const COLOURS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
    let fx = |x: f64| if log_x { x.max(f64::MIN_POSITIVE).log2() } else { x };
    let pts: Vec<(f64, f64)> = series.iter().flat_map(|s| s.1.iter().map(|&(x, y)| (fx(x), y))).collect();
    let (mut x0, mut x1) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |a, p| (a.0.min(p.0), a.1.max(p.0)));
    let (mut y0, mut y1) = pts.iter().fold((0.0f64, f64::NEG_INFINITY), |a, p| (a.0.min(p.1), a.1.max(p.1)));
    if !x0.is_finite() || x1 <= x0 {
        x0 = if x0.is_finite() { x0 - 1.0 } else { 0.0 };
        x1 = x0 + 2.0;
    }
    if !y1.is_finite() || y1 <= y0 {
        y1 = y0 + 1.0;
    }
    y1 *= 1.05;
    y0 = y0.min(0.0);
    let px = |x: f64| M + (fx(x) - x0) / (x1 - x0) * (W - 2.0 * M);
    let py = |y: f64| H - M - (y - y0) / (y1 - y0) * (H - 2.0 * M);

    let mut out = String::new();
    let _ = writeln!(out, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" font-family=\"sans-serif\" font-size=\"12\">");
    let _ = writeln!(out, "<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>");
    let _ = writeln!(out, "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>", W / 2.0, escape(title));
    let _ = writeln!(out, "<line x1=\"{M}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>", H - M, W - M, H - M);
    let _ = writeln!(out, "<line x1=\"{M}\" y1=\"{M}\" x2=\"{M}\" y2=\"{}\" stroke=\"black\"/>", H - M);
    let _ = writeln!(out, "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>", W / 2.0, H - 15.0, escape(x_label));
    let _ = writeln!(out, "<text x=\"15\" y=\"{}\" transform=\"rotate(-90 15 {})\" text-anchor=\"middle\">{}</text>", H / 2.0, H / 2.0, escape(y_label));
    for i in 0..=4 {
        let y = y0 + (y1 - y0) * i as f64 / 4.0;
        let _ = writeln!(out, "<text x=\"{}\" y=\"{:.1}\" text-anchor=\"end\">{:.3}</text>", M - 6.0, py(y) + 4.0, y);
    }
    let mut xs: Vec<f64> = series.iter().flat_map(|s| s.1.iter().map(|p| p.0)).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    for x in xs {
        let _ = writeln!(out, "<text x=\"{:.1}\" y=\"{}\" text-anchor=\"middle\">{}</text>", px(x), H - M + 16.0, x);
    }
    for (i, (name, data)) in series.iter().enumerate() {
        let c = COLOURS[i % COLOURS.len()];
        let path: Vec<String> = data.iter().map(|&(x, y)| format!("{:.1},{:.1}", px(x), py(y))).collect();
        let _ = writeln!(out, "<polyline fill=\"none\" stroke=\"{c}\" stroke-width=\"2\" points=\"{}\"/>", path.join(" "));
        for &(x, y) in data {
            let _ = writeln!(out, "<circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"3\" fill=\"{c}\"/>", px(x), py(y));
        }
        let ly = M + 16.0 * i as f64;
        let _ = writeln!(out, "<text x=\"{}\" y=\"{ly}\" fill=\"{c}\">{}</text>", W - M - 120.0, escape(name));
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
