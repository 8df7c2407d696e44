//! Turning command-line arguments into surfaces, level graphs and graphs.
//! File inputs are hashed as they are read so the manifest can list them.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use origami_lab::classical::{gabber_galil_l, margulis_m, margulis_mbar, schreier_mcirc, selberg_cayley};
use origami_lab::graph::Graph;
use origami_lab::io::{datum_json, level_edge_list, parse_datum_json, parse_graph_edge_list, parse_level_edge_list};
use origami_lab::surface::{staircase, Surface, SurfacePoint};
use origami_lab::warpgraph::{build_control, build_level, LevelGraph};
use origami_lab::{Error, Result};

use crate::args::{GraphSource, LevelArgs, SurfaceArgs};
use crate::manifest::sha256_hex;

pub const CACHE_ENV: &str = "ORIGAMI_LAB_CACHE";

#[derive(Default)]
pub struct Inputs {
    pub hashes: BTreeMap<String, String>,
}

impl Inputs {
    pub fn read(&mut self, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        self.hashes.insert(path.display().to_string(), sha256_hex(text.as_bytes()));
        Ok(text)
    }

    pub fn surface(&mut self, a: &SurfaceArgs) -> Result<Surface> {
        if let Some(g) = a.staircase {
            Surface::new(staircase(g)?)
        } else if a.torus {
            Ok(Surface::torus())
        } else if let Some(p) = &a.datum {
            parse_datum_json(&self.read(p)?)
        } else {
            Err(Error::Parse("no surface given".into()))
        }
    }

    pub fn level(&mut self, a: &LevelArgs) -> Result<LevelGraph> {
        let surface = self.surface(&a.surface)?;
        let k = a.k.unwrap_or_else(|| surface.shear_modulus());
        level_cached(&surface, k, a.t, a.control)
    }

    pub fn graph(&mut self, g: &GraphSource) -> Result<Graph> {
        if let Some(p) = &g.graph {
            return parse_graph_edge_list(&self.read(p)?);
        }
        let spec = g.family.as_deref().unwrap_or_default();
        named_graph(spec)
    }
}

fn num<T: std::str::FromStr>(spec: &str, s: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Parse(format!("family `{spec}`: `{s}` is not a number")))
}

pub fn named_graph(spec: &str) -> Result<Graph> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::Parse(format!("unknown graph family `{spec}`"));
    match parts.as_slice() {
        ["cycle", n] => Ok(Graph::cycle(num(spec, n)?)),
        ["path", n] => Ok(Graph::path(num(spec, n)?)),
        ["complete", n] => Ok(Graph::complete(num(spec, n)?)),
        ["schreier", n] => Ok(schreier_mcirc(num(spec, n)?)),
        ["margulis", n] => Ok(margulis_m(num(spec, n)?).to_graph()),
        ["mbar", n] => Ok(margulis_mbar(num(spec, n)?).to_graph()),
        ["gg", n] => Ok(gabber_galil_l(num(spec, n)?).to_graph()),
        ["selberg", n, k] => {
            let n: u64 = num(spec, n)?;
            if n < 2 {
                return Err(Error::Parse(format!("family `{spec}`: modulus must be at least 2")));
            }
            Ok(selberg_cayley(n, num(spec, k)?).graph)
        }
        ["staircase", g, k, t] => {
            let s = Surface::new(staircase(num(spec, g)?)?)?;
            Ok(level_cached(&s, num(spec, k)?, positive(spec, t)?, false)?.graph().clone())
        }
        ["torus", t] => Ok(build_control(&Surface::torus(), positive(spec, t)?).graph().clone()),
        _ => Err(bad()),
    }
}

fn positive(spec: &str, s: &str) -> Result<u64> {
    let t: u64 = num(spec, s)?;
    if t == 0 {
        return Err(Error::Parse(format!("family `{spec}`: level must be positive")));
    }
    Ok(t)
}

fn cache_path(surface: &Surface, k: u64, t: u64, control: bool) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    let key = format!("{}|k={k}|t={t}|control={control}", datum_json(surface));
    let hash = sha256_hex(key.as_bytes());
    Some(PathBuf::from(dir).join(format!("level-{}.edges", &hash[..24])))
}

/// Build a level, memoized on disk when `ORIGAMI_LAB_CACHE` names a directory.
pub fn level_cached(surface: &Surface, k: u64, t: u64, control: bool) -> Result<LevelGraph> {
    if t == 0 {
        return Err(Error::Parse("level t must be positive".into()));
    }
    let path = cache_path(surface, k, t, control);
    if let Some(p) = &path {
        if let Ok(text) = std::fs::read_to_string(p) {
            let kk = if control { surface.shear_modulus() } else { k };
            return LevelGraph::from_edges(surface, kk, t, parse_level_edge_list(&text)?);
        }
    }
    let level = if control { build_control(surface, t) } else { build_level(surface, k, t)? };
    if let Some(p) = &path {
        if let Some(dir) = p.parent() {
            std::fs::create_dir_all(dir)?;
        }
        let tmp = p.with_extension(format!("tmp{}", std::process::id()));
        std::fs::write(&tmp, level_edge_list(&level))?;
        std::fs::rename(&tmp, p)?;
    }
    Ok(level)
}

/// `sq:x:y` with arbitrary rational coordinates, reduced to canonical form.
pub fn parse_point(surface: &Surface, s: &str) -> Result<SurfacePoint> {
    let raw: SurfacePoint = s.trim().parse()?;
    if raw.square >= surface.m() {
        return Err(Error::VertexNotFound(s.to_string()));
    }
    Ok(surface.point_unrolled(raw.square, &raw.x, &raw.y))
}

pub fn parse_points(surface: &Surface, s: &str) -> Result<Vec<SurfacePoint>> {
    s.split(';').filter(|p| !p.trim().is_empty()).map(|p| parse_point(surface, p)).collect()
}
