use std::fmt::Write as _;

use origami_lab::dynamics::{fixed_points, orbit, Generator, Letter};
use origami_lab::exec;
use origami_lab::io::{
    bipartite_edge_list, datum_json, distances_csv, grid_csv, graph_edge_list, level_dot, level_edge_list,
    points_csv, svg_line_plot, trace_json, vertices_csv,
};
use origami_lab::pi1::{
    build_level_complex, check_certificate, contract_loop, h1, pi1_presentation, replay_trace, try_trivialize,
    Contraction, Trivialization,
};
use origami_lab::spectral::{
    cheeger_sandwich, expansion_scan, lambda2, random_z2_set, scan_csv, z2_expansion_check, ScanFamily,
};
use origami_lab::classical::{gabber_galil_l, margulis_m, margulis_mbar, schreier_mcirc, selberg_cayley};
use origami_lab::surface::{parse_ratio, rat, Surface, SurfacePoint, TorusPoint};
use origami_lab::warpgraph::{fiber_divergence, warped_distance, LevelGraph};
use origami_lab::Error;

use crate::args::*;
use crate::sources::{parse_point, parse_points, Inputs};

pub enum Failure {
    Domain(Error),
    Usage(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

pub type Outcome<T> = std::result::Result<T, Failure>;

/// What a command produced: text for stdout and named files.
#[derive(Default)]
pub struct Output {
    pub summary: String,
    pub artifacts: Vec<(String, String)>,
}

impl Output {
    fn text(summary: String) -> Self {
        Output { summary, artifacts: Vec::new() }
    }

    fn with(mut self, name: &str, content: String) -> Self {
        self.artifacts.push((name.to_string(), content));
        self
    }
}

/// The requested format, or the first allowed one.
fn format(requested: Option<Format>, allowed: &[Format], command: &str) -> Outcome<Format> {
    match requested {
        None => allowed.first().copied().ok_or_else(|| Failure::Usage(format!("{command} takes no --format"))),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(f) => Err(Failure::Usage(format!("{command} does not support --format {f:?}").to_lowercase())),
    }
}

fn no_format(requested: Option<Format>, command: &str) -> Outcome<()> {
    match requested {
        None => Ok(()),
        Some(_) => Err(Failure::Usage(format!("{command} takes no --format"))),
    }
}

fn json(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}

pub struct Context {
    pub seed: u64,
    pub format: Option<Format>,
    pub inputs: Inputs,
}

impl Context {
    pub fn run(&mut self, command: &Command) -> Outcome<Output> {
        match command {
            Command::Origami(c) => self.origami(c),
            Command::Dynamics(c) => self.dynamics(c),
            Command::Level(c) => self.level(c),
            Command::Classical(c) => self.classical(c),
            Command::Spectral(c) => self.spectral(c),
            Command::Pi1(c) => self.pi1(c),
            Command::Export(a) => self.export(a),
            Command::Rerun(_) => Err(Failure::Usage("rerun cannot be nested".into())),
        }
    }

    fn origami(&mut self, c: &OrigamiCmd) -> Outcome<Output> {
        match c {
            OrigamiCmd::Validate(a) => {
                format(self.format, &[Format::Json], "origami validate")?;
                let s = self.inputs.surface(a)?;
                let summary = format!(
                    "valid origami: m={} genus={} corner classes={}",
                    s.m(),
                    s.genus(),
                    s.corner_classes().len()
                );
                Ok(Output::text(summary).with("datum.json", json(&datum_json(&s))))
            }
            OrigamiCmd::Genus(a) => {
                no_format(self.format, "origami genus")?;
                let g = self.inputs.surface(a)?.genus();
                Ok(Output::text(g.to_string()).with("genus.txt", format!("{g}\n")))
            }
            OrigamiCmd::Grid { surface, n } => {
                format(self.format, &[Format::Csv], "origami grid")?;
                if *n == 0 {
                    return Err(Failure::Usage("--n must be positive".into()));
                }
                let csv = grid_csv(&self.inputs.surface(surface)?, *n);
                Ok(Output::text(csv.clone()).with("grid.csv", csv))
            }
        }
    }

    fn dynamics(&mut self, c: &DynamicsCmd) -> Outcome<Output> {
        format(self.format, &[Format::Csv], "dynamics")?;
        match c {
            DynamicsCmd::Orbit { surface, k, point, max_len } => {
                let s = self.inputs.surface(surface)?;
                let k = k.unwrap_or_else(|| s.shear_modulus());
                let p = parse_point(&s, point)?;
                let o = orbit(&s, k, &p, *max_len)?;
                let csv = points_csv(&o);
                Ok(Output::text(csv.clone()).with("orbit.csv", csv))
            }
            DynamicsCmd::Fixed { surface, k, generator, n } => {
                if *n == 0 {
                    return Err(Failure::Usage("--n must be positive".into()));
                }
                let s = self.inputs.surface(surface)?;
                let k = k.unwrap_or_else(|| s.shear_modulus());
                let gen = Generator::new(Letter::from_char(*generator)?, k);
                let csv = points_csv(&fixed_points(&s, gen, *n)?);
                Ok(Output::text(csv.clone()).with("fixed.csv", csv))
            }
        }
    }

    fn level(&mut self, c: &LevelCmd) -> Outcome<Output> {
        match c {
            LevelCmd::Build(a) => {
                let f = format(self.format, &[Format::Csv, Format::Dot], "level build")?;
                let level = self.inputs.level(a)?;
                if f == Format::Dot {
                    let dot = level_dot(&level);
                    return Ok(Output::text(dot.clone()).with("level.dot", dot));
                }
                let edges = level_edge_list(&level);
                Ok(Output::text(edges.clone()).with("level.edges", edges).with("vertices.csv", vertices_csv(&level)))
            }
            LevelCmd::Dist { level, from, to } => {
                format(self.format, &[Format::Csv], "level dist")?;
                let lg = self.inputs.level(level)?;
                let u = parse_point(lg.surface(), from)?;
                let mut rows = Vec::with_capacity(to.len());
                for t in to {
                    let v = parse_point(lg.surface(), t)?;
                    rows.push((u.to_string(), v.to_string(), warped_distance(&lg, &u, &v)?));
                }
                let csv = distances_csv(&rows);
                Ok(Output::text(csv.clone()).with("distances.csv", csv))
            }
            LevelCmd::Fibers { surface, k, levels, x, y, points } => {
                let f = format(self.format, &[Format::Csv, Format::Svg], "level fibers")?;
                let s = self.inputs.surface(surface)?;
                let k = k.unwrap_or_else(|| s.shear_modulus());
                check_levels(levels)?;
                let pts = if points.is_empty() {
                    s.fibre(&TorusPoint::new(parse_ratio(x)?, parse_ratio(y)?))
                } else {
                    points.iter().map(|p| parse_point(&s, p)).collect::<Result<Vec<_>, _>>()?
                };
                let table = fiber_divergence(&s, k, &pts, levels)?;
                let mut csv = String::from("level,i,j,distance\n");
                for (t, i, j, d) in &table.rows {
                    let _ = writeln!(csv, "{t},{i},{j},{d}");
                }
                let mut out = Output::text(csv.clone()).with("fibers.csv", csv).with("fiber_points.csv", points_csv(&pts));
                if f == Format::Svg {
                    let names: Vec<String> = table.pairs().iter().map(|(i, j)| format!("d({i},{j})")).collect();
                    let series: Vec<(&str, Vec<(f64, f64)>)> = table
                        .pairs()
                        .iter()
                        .zip(&names)
                        .map(|(&(i, j), name)| {
                            let pts = levels.iter().zip(table.series(i, j)).map(|(&t, d)| (t as f64, d as f64)).collect();
                            (name.as_str(), pts)
                        })
                        .collect();
                    out = out.with("fibers.svg", svg_line_plot("Warped distance within a fibre", "level t", "distance", &series, true));
                }
                Ok(out)
            }
        }
    }

    fn classical(&mut self, c: &ClassicalCmd) -> Outcome<Output> {
        no_format(self.format, "classical")?;
        let (name, text) = match c {
            ClassicalCmd::Margulis { n } => ("margulis.edges", bipartite_edge_list(&margulis_m(*n))),
            ClassicalCmd::Mbar { n } => ("mbar.edges", bipartite_edge_list(&margulis_mbar(*n))),
            ClassicalCmd::Gg { n } => ("gabber_galil.edges", bipartite_edge_list(&gabber_galil_l(*n))),
            ClassicalCmd::Schreier { n } => ("schreier.edges", graph_edge_list(&schreier_mcirc(*n))),
            ClassicalCmd::Selberg { n, k } => {
                if *n < 2 {
                    return Err(Failure::Usage("--n must be at least 2".into()));
                }
                ("selberg.edges", graph_edge_list(&selberg_cayley(*n, *k).graph))
            }
        };
        Ok(Output::text(text.clone()).with(name, text))
    }

    fn spectral(&mut self, c: &SpectralCmd) -> Outcome<Output> {
        match c {
            SpectralCmd::Cheeger(source) => {
                let f = format(self.format, &[Format::Csv, Format::Json], "spectral cheeger")?;
                let g = self.inputs.graph(source)?;
                let r = cheeger_sandwich(&g)?;
                let witness: Vec<String> = r.cheeger.witness.iter().map(|v| v.to_string()).collect();
                let summary = format!(
                    "h = {} (boundary {}, size {}, witness {})\nsandwich holds: {}",
                    r.cheeger.h(),
                    r.cheeger.boundary,
                    r.cheeger.size,
                    witness.join(" "),
                    r.holds
                );
                let body = if f == Format::Json {
                    ("cheeger.json", json(&r))
                } else {
                    let mut csv = String::from(
                        "vertices,maxdeg,boundary,size,h,lambda2,mu2,normalized_lower,normalized_upper,combinatorial_lower,combinatorial_upper,holds,witness\n",
                    );
                    let _ = writeln!(
                        csv,
                        "{},{},{},{},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{},{}",
                        g.num_vertices(),
                        r.degree_bound,
                        r.cheeger.boundary,
                        r.cheeger.size,
                        r.h,
                        r.lambda2,
                        r.mu2,
                        r.normalized_lower,
                        r.normalized_upper,
                        r.combinatorial_lower,
                        r.combinatorial_upper,
                        r.holds,
                        witness.join(" ")
                    );
                    ("cheeger.csv", csv)
                };
                Ok(Output::text(summary).with(body.0, body.1))
            }
            SpectralCmd::Lambda2 { source, tol } => {
                let f = format(self.format, &[Format::Csv, Format::Json], "spectral lambda2")?;
                if tol.is_nan() || *tol <= 0.0 {
                    return Err(Failure::Usage("--tol must be positive".into()));
                }
                let g = self.inputs.graph(source)?;
                let r = lambda2(&g, *tol)?;
                if f == Format::Json {
                    let text = json(&r);
                    return Ok(Output::text(text.clone()).with("lambda2.json", text));
                }
                let mut csv = String::from("vertices,maxdeg,lambda2,residual,iterations,cheeger_lower,cheeger_upper\n");
                let _ = writeln!(
                    csv,
                    "{},{},{:.12e},{:.3e},{},{:.12e},{:.12e}",
                    g.num_vertices(),
                    r.degree_bound,
                    r.lambda2,
                    r.residual,
                    r.iterations,
                    r.cheeger_lower,
                    r.cheeger_upper
                );
                Ok(Output::text(csv.clone()).with("lambda2.csv", csv))
            }
            SpectralCmd::Scan { source, k, levels, tol } => {
                let f = format(self.format, &[Format::Csv, Format::Svg, Format::Json], "spectral scan")?;
                let family = if source.schreier {
                    ScanFamily::Schreier
                } else {
                    let surface = self.inputs.surface(&SurfaceArgs {
                        staircase: source.staircase,
                        torus: source.torus,
                        datum: source.datum.clone(),
                    })?;
                    let k = k.unwrap_or_else(|| surface.shear_modulus());
                    ScanFamily::Origami { surface, k }
                };
                check_levels(levels)?;
                let rows = expansion_scan(&family, levels, *tol)?;
                let csv = scan_csv(&rows);
                let mut out = Output::text(csv.clone()).with("scan.csv", csv);
                match f {
                    Format::Svg => {
                        let warped = rows.iter().map(|r| (r.level as f64, r.report.lambda2)).collect();
                        let control = rows.iter().map(|r| (r.level as f64, r.control_lambda2)).collect();
                        let svg = svg_line_plot(
                            "Normalized Laplacian gap by level",
                            "level",
                            "lambda2",
                            &[("warped", warped), ("control", control)],
                            true,
                        );
                        out = out.with("scan.svg", svg);
                    }
                    Format::Json => out = out.with("scan.json", json(&rows)),
                    _ => {}
                }
                Ok(out)
            }
            SpectralCmd::Z2check { random, set, k, max_size, bound } => {
                format(self.format, &[Format::Csv], "spectral z2check")?;
                if *k == 0 {
                    return Err(Failure::Usage("--k must be nonzero".into()));
                }
                let sets: Vec<Vec<(i64, i64)>> = match (random, set) {
                    (Some(count), None) => {
                        if *max_size == 0 || *bound <= 0 {
                            return Err(Failure::Usage("--max-size and --bound must be positive".into()));
                        }
                        let seed = self.seed;
                        exec::map_range(*count as usize, |i| random_z2_set(seed, i as u64, *max_size, *bound))
                    }
                    (None, Some(s)) => vec![parse_z2_set(s)?],
                    _ => return Err(Failure::Usage("give exactly one of --random and --set".into())),
                };
                let checks = exec::map_slice(&sets, |a| z2_expansion_check(a, *k));
                let mut csv = String::from("index,size,image_size,pass\n");
                let mut passed = 0;
                for (i, c) in checks.into_iter().enumerate() {
                    let c = c?;
                    passed += c.passes as usize;
                    let _ = writeln!(csv, "{i},{},{},{}", c.size, c.image_size, c.passes);
                }
                Ok(Output::text(format!("{passed}/{} pass", sets.len())).with("z2check.csv", csv))
            }
        }
    }

    fn pi1(&mut self, c: &Pi1Cmd) -> Outcome<Output> {
        match c {
            Pi1Cmd::Complex { level, r } => {
                let f = format(self.format, &[Format::Csv, Format::Json], "pi1 complex")?;
                let lg = self.inputs.level(level)?;
                let cx = build_level_complex(&lg, positive_scale(*r)?);
                let row = serde_json::json!({
                    "t": lg.level(),
                    "r": r,
                    "vertices": cx.num_vertices(),
                    "edges": cx.edges().len(),
                    "triangles": cx.triangles().len(),
                    "squares": cx.squares().len(),
                    "connected": cx.is_connected(),
                });
                let text = if f == Format::Json {
                    json(&row)
                } else {
                    format!(
                        "t,r,vertices,edges,triangles,squares,connected\n{},{},{},{},{},{},{}\n",
                        lg.level(),
                        r,
                        cx.num_vertices(),
                        cx.edges().len(),
                        cx.triangles().len(),
                        cx.squares().len(),
                        cx.is_connected()
                    )
                };
                let name = if f == Format::Json { "complex.json" } else { "complex.csv" };
                Ok(Output::text(text.clone()).with(name, text))
            }
            Pi1Cmd::H1 { level, r } => {
                let f = format(self.format, &[Format::Csv, Format::Json], "pi1 h1")?;
                let lg = self.inputs.level(level)?;
                let h = h1(&build_level_complex(&lg, positive_scale(*r)?))?;
                let summary = format!("H1 = {}", h.describe());
                if f == Format::Json {
                    return Ok(Output::text(summary).with("h1.json", json(&h)));
                }
                let torsion: Vec<String> = h.torsion.iter().map(|t| t.to_string()).collect();
                let csv = format!("t,r,betti1,torsion\n{},{},{},{}\n", lg.level(), r, h.betti1, torsion.join(" "));
                Ok(Output::text(summary).with("h1.csv", csv))
            }
            Pi1Cmd::Trivialize { level, r, budget } => {
                format(self.format, &[Format::Json], "pi1 trivialize")?;
                let lg = self.inputs.level(level)?;
                let p = pi1_presentation(&build_level_complex(&lg, positive_scale(*r)?))?;
                let result = try_trivialize(&p, *budget);
                let summary = match &result {
                    Trivialization::Trivial(cert) => match check_certificate(&p, cert) {
                        Ok(()) => format!(
                            "Trivial: {} generators eliminated, certificate verified",
                            cert.steps.len()
                        ),
                        Err(e) => return Err(Failure::Mismatch(format!("certificate rejected: {e}"))),
                    },
                    Trivialization::Unknown { remaining_generators, steps } => {
                        format!("Unknown: {remaining_generators} generators remain after {steps} eliminations")
                    }
                };
                Ok(Output::text(summary).with("certificate.json", json(&result)))
            }
            Pi1Cmd::Contract { level, r, path, side, budget } => {
                format(self.format, &[Format::Json], "pi1 contract")?;
                let lg = self.inputs.level(level)?;
                let points = match (path, side) {
                    (Some(p), None) => parse_points(lg.surface(), p)?,
                    (None, Some(s)) => side_loop(&lg, s)?,
                    _ => return Err(Failure::Usage("give exactly one of --path and --side".into())),
                };
                let ids = points.iter().map(|p| lg.id(p)).collect::<Result<Vec<u32>, _>>()?;
                let base = *ids.first().ok_or_else(|| Failure::Usage("empty loop".into()))?;
                let summary;
                let artifact = match contract_loop(lg.graph(), base, positive_scale(*r)?, &ids, *budget)? {
                    Contraction::Contracted(trace) => {
                        replay_trace(lg.graph(), &ids, &trace)
                            .map_err(|e| Failure::Mismatch(format!("trace rejected: {e}")))?;
                        summary = format!("Contracted: {} moves, trace verified", trace.moves.len());
                        json(&serde_json::json!({"result": "contracted", "loop": points.iter().map(|p| p.to_string()).collect::<Vec<_>>(), "trace": trace_json(&lg, &trace)}))
                    }
                    Contraction::Unknown { expanded } => {
                        summary = format!("Unknown: no contraction found after {expanded} expansions");
                        json(&serde_json::json!({"result": "unknown", "expanded": expanded}))
                    }
                };
                Ok(Output::text(summary).with("contraction.json", artifact))
            }
        }
    }

    fn export(&mut self, a: &LevelArgs) -> Outcome<Output> {
        no_format(self.format, "export")?;
        let lg = self.inputs.level(a)?;
        let summary = format!(
            "level t={} k={}: {} vertices, {} edges",
            lg.level(),
            lg.k(),
            lg.vertices().len(),
            lg.graph().num_edges()
        );
        Ok(Output::text(summary)
            .with("datum.json", json(&datum_json(lg.surface())))
            .with("grid.csv", grid_csv(lg.surface(), lg.level()))
            .with("level.edges", level_edge_list(&lg))
            .with("vertices.csv", vertices_csv(&lg))
            .with("level.dot", level_dot(&lg)))
    }
}

fn positive_scale(r: u32) -> Outcome<u32> {
    if r == 0 {
        return Err(Failure::Usage("--r must be positive".into()));
    }
    Ok(r)
}

fn check_levels(levels: &[u64]) -> Outcome<()> {
    if levels.first() == Some(&0) || levels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Failure::Usage("levels must be positive and strictly increasing".into()));
    }
    Ok(())
}

fn parse_z2_set(s: &str) -> Outcome<Vec<(i64, i64)>> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (x, y) = p.split_once(',').ok_or_else(|| Failure::Usage(format!("point `{p}`: expected x,y")))?;
            let x = x.trim().parse().map_err(|_| Failure::Usage(format!("point `{p}`")))?;
            let y = y.trim().parse().map_err(|_| Failure::Usage(format!("point `{p}`")))?;
            Ok((x, y))
        })
        .collect()
}

/// The closed loop along the bottom or left side of a square, through
/// every grid point of the level.
fn side_loop(lg: &LevelGraph, spec: &str) -> Outcome<Vec<SurfacePoint>> {
    let bad = || Failure::Usage(format!("side `{spec}`: expected SQ:bottom or SQ:left"));
    let (sq, which) = spec.split_once(':').ok_or_else(bad)?;
    let sq: usize = sq.parse().map_err(|_| bad())?;
    let s: &Surface = lg.surface();
    if sq >= s.m() {
        return Err(Error::VertexNotFound(format!("square {sq}")).into());
    }
    let t = lg.level() as i64;
    let zero = rat(0, 1);
    match which {
        "bottom" => Ok((0..=t).map(|j| s.point_unrolled(sq, &rat(j, t), &zero)).collect()),
        "left" => Ok((0..=t).map(|j| s.point_unrolled(sq, &zero, &rat(j, t))).collect()),
        _ => Err(bad()),
    }
}
