//! Contour ingestion and the mesh / CSV / SVG writers.
//!
//! Every writer produces byte-identical output for identical inputs: fixed
//! column order, fixed float formatting and no timestamps.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use log::info;

use crate::classify::{NodeClass, NodeClassification};
use crate::error::{GeometryError, IoError};
use crate::geometry::{normalize_points, Contour, Point};
use crate::grid::Grid;
use crate::metrics::{DistanceProfile, StudyRow};
use crate::tracer::ApproxContour;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContourFormat {
    /// One `x,y` record per line, optional single header line.
    CsvPoints,
    /// `[[x, y], ...]`
    JsonPoints,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContourFile {
    pub path: PathBuf,
    pub format: ContourFormat,
}

impl ContourFile {
    /// Picks the format from the extension: `.json` is JSON, anything else
    /// CSV.
    pub fn from_path(path: impl Into<PathBuf>) -> Self {
        let path = path.into();
        let format = match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => ContourFormat::JsonPoints,
            _ => ContourFormat::CsvPoints,
        };
        Self { path, format }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> IoError + '_ {
    move |source| IoError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn load_contour(file: &ContourFile) -> Result<Contour, IoError> {
    let text = std::fs::read_to_string(&file.path).map_err(io_err(&file.path))?;
    let contour = match file.format {
        ContourFormat::CsvPoints => parse_contour_csv(&text)?,
        ContourFormat::JsonPoints => parse_contour_json(&text)?,
    };
    info!(
        "{}: {} points, {}",
        file.path.display(),
        contour.len(),
        contour.orientation()
    );
    Ok(contour)
}

pub fn parse_contour_csv(text: &str) -> Result<Contour, IoError> {
    let mut points = Vec::new();
    let mut seen_record = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if fields.len() != 2 {
            return Err(IoError::Parse {
                line,
                message: format!("expected 2 comma-separated fields, found {}", fields.len()),
            });
        }
        let parsed: Vec<Result<f64, _>> = fields.iter().map(|f| f.parse::<f64>()).collect();
        if !seen_record && parsed.iter().all(|r| r.is_err()) {
            seen_record = true;
            continue; // header
        }
        seen_record = true;
        let mut xy = [0.0; 2];
        for (k, (field, value)) in fields.iter().zip(parsed).enumerate() {
            xy[k] = value.map_err(|_| IoError::Parse {
                line,
                message: format!("'{field}' is not a number"),
            })?;
        }
        if !(xy[0].is_finite() && xy[1].is_finite()) {
            return Err(IoError::NonFiniteAt { line });
        }
        points.push(Point::new(xy[0], xy[1]));
    }
    contour_from_records(points)
}

pub fn parse_contour_json(text: &str) -> Result<Contour, IoError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| IoError::JsonSyntax(e.to_string()))?;
    let items = value
        .as_array()
        .ok_or_else(|| IoError::JsonSyntax("top-level value must be an array".into()))?;
    let mut points = Vec::with_capacity(items.len());
    for (element, item) in items.iter().enumerate() {
        let pair = item
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| IoError::Json {
                element,
                message: "expected a two-element array [x, y]".into(),
            })?;
        let mut xy = [0.0; 2];
        for (k, v) in pair.iter().enumerate() {
            xy[k] = v.as_f64().ok_or_else(|| IoError::Json {
                element,
                message: format!("{v} is not a number"),
            })?;
        }
        if !(xy[0].is_finite() && xy[1].is_finite()) {
            return Err(IoError::Json {
                element,
                message: "non-finite coordinate".into(),
            });
        }
        points.push(Point::new(xy[0], xy[1]));
    }
    contour_from_records(points)
}

fn contour_from_records(points: Vec<Point>) -> Result<Contour, IoError> {
    let points = normalize_points(points);
    if points.len() < 3 {
        return Err(IoError::TooFewPoints(points.len()));
    }
    Contour::new(points).map_err(|e| match e {
        GeometryError::DegenerateContour => IoError::ZeroArea,
        other => IoError::Parse {
            line: 0,
            message: other.to_string(),
        },
    })
}

/// Writes `x,y` records with shortest round-trip float formatting.
pub fn write_contour_csv<W: Write>(mut out: W, contour: &Contour) -> std::io::Result<()> {
    writeln!(out, "x,y")?;
    for p in contour.points() {
        writeln!(out, "{},{}", p.x, p.y)?;
    }
    Ok(())
}

/// 17 significant digits.
fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_mesh_to<W: Write>(
    mut out: W,
    classification: &NodeClassification,
    approx: &ApproxContour,
) -> std::io::Result<()> {
    let g = classification.grid();
    writeln!(out, "# stairmesh mesh v1")?;
    writeln!(
        out,
        "# x0={} y0={} xf={} yf={} nx={} ny={} dx={} dy={}",
        fmt17(g.x0()),
        fmt17(g.y0()),
        fmt17(g.xf()),
        fmt17(g.yf()),
        g.nx(),
        g.ny(),
        fmt17(g.dx()),
        fmt17(g.dy())
    )?;
    writeln!(
        out,
        "# boundary={} interior={} exterior={} chain_length={}",
        classification.boundary_count(),
        classification.interior_count(),
        classification.exterior_count(),
        approx.len()
    )?;
    writeln!(out, "i,j,x,y,class")?;
    for (n, class) in g.nodes().zip(classification.labels()) {
        let p = g.world(n);
        writeln!(
            out,
            "{},{},{},{},{}",
            n.i,
            n.j,
            fmt17(p.x),
            fmt17(p.y),
            class.code()
        )?;
    }
    Ok(())
}

pub fn write_mesh(
    classification: &NodeClassification,
    approx: &ApproxContour,
    path: &Path,
) -> Result<(), IoError> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut out = BufWriter::new(file);
    write_mesh_to(&mut out, classification, approx).map_err(io_err(path))?;
    out.flush().map_err(io_err(path))
}

/// A mesh file read back: header grid plus one record per node.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshFile {
    pub grid: Grid,
    pub records: Vec<MeshRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshRecord {
    pub i: i64,
    pub j: i64,
    pub x: f64,
    pub y: f64,
    pub class: NodeClass,
}

pub fn parse_mesh(text: &str) -> Result<MeshFile, IoError> {
    let mut header: Option<Grid> = None;
    let mut records = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let bad = |message: String| IoError::Parse { line, message };
        if let Some(rest) = raw.strip_prefix("# x0=") {
            let mut kv = std::collections::HashMap::new();
            for part in format!("x0={rest}").split_whitespace() {
                if let Some((k, v)) = part.split_once('=') {
                    kv.insert(k.to_string(), v.to_string());
                }
            }
            let num = |k: &str| -> Result<f64, IoError> {
                kv.get(k)
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| bad(format!("header field {k} missing or invalid")))
            };
            let int = |k: &str| -> Result<usize, IoError> {
                kv.get(k)
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| bad(format!("header field {k} missing or invalid")))
            };
            let grid = Grid::new(
                num("x0")?,
                num("y0")?,
                num("xf")?,
                num("yf")?,
                int("nx")?,
                int("ny")?,
            )
            .map_err(|e| bad(e.to_string()))?;
            header = Some(grid);
            continue;
        }
        if raw.starts_with('#') || raw.starts_with("i,j") || raw.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = raw.split(',').collect();
        if f.len() != 5 {
            return Err(bad(format!("expected 5 fields, found {}", f.len())));
        }
        let class = match f[4] {
            "B" => NodeClass::Boundary,
            "I" => NodeClass::Interior,
            "E" => NodeClass::Exterior,
            other => return Err(bad(format!("unknown class '{other}'"))),
        };
        let int = |s: &str| {
            s.parse::<i64>()
                .map_err(|_| bad(format!("'{s}' is not an integer")))
        };
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| bad(format!("'{s}' is not a number")))
        };
        records.push(MeshRecord {
            i: int(f[0])?,
            j: int(f[1])?,
            x: num(f[2])?,
            y: num(f[3])?,
            class,
        });
    }
    let grid = header.ok_or(IoError::Parse {
        line: 0,
        message: "missing grid header".into(),
    })?;
    Ok(MeshFile { grid, records })
}

/// Table-1 layout: `n,area_diff_pct,boundary_nodes,interior_nodes`.
pub fn write_study_csv<W: Write>(mut out: W, rows: &[StudyRow]) -> std::io::Result<()> {
    writeln!(out, "n,area_diff_pct,boundary_nodes,interior_nodes")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{}",
            r.n, r.area_diff_pct, r.boundary_nodes, r.interior_nodes
        )?;
    }
    Ok(())
}

/// `chain_position,i,j,distance`, one row per chain node.
pub fn write_distances_csv<W: Write>(mut out: W, profile: &DistanceProfile) -> std::io::Result<()> {
    writeln!(out, "chain_position,i,j,distance")?;
    for (pos, (n, d)) in profile.entries().iter().enumerate() {
        writeln!(out, "{},{},{},{}", pos, n.i, n.j, d)?;
    }
    Ok(())
}

/// Writes `bytes` to `path`, wrapping failures with the path.
pub fn write_file(path: &Path, bytes: &[u8]) -> Result<(), IoError> {
    std::fs::write(path, bytes).map_err(io_err(path))
}

/// SVG with four layers: given contour, approximate chain, interior nodes
/// and boundary nodes. The viewport is the grid domain plus a 5% margin.
pub fn svg_string(
    given: &Contour,
    approx: &ApproxContour,
    classification: &NodeClassification,
) -> String {
    let g = classification.grid();
    let (w, h) = (g.xf() - g.x0(), g.yf() - g.y0());
    let (mx, my) = (0.05 * w, 0.05 * h);
    let top = g.yf() + my;
    let to_svg = |p: Point| (p.x, top - p.y);
    let r = 0.15 * g.dx().min(g.dy());
    let stroke = 0.1 * g.dx().min(g.dy());

    let points_attr = |pts: &mut dyn Iterator<Item = Point>| {
        let mut s = String::new();
        for (k, p) in pts.enumerate() {
            let (x, y) = to_svg(p);
            if k > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{x},{y}");
        }
        s
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        g.x0() - mx,
        0.0,
        w + 2.0 * mx,
        h + 2.0 * my
    );
    let _ = writeln!(
        s,
        r##"<g id="given-contour" fill="none" stroke="#1f77b4" stroke-width="{stroke}"><polygon points="{}"/></g>"##,
        points_attr(&mut given.points().iter().copied())
    );
    let _ = writeln!(
        s,
        r##"<g id="approximate-contour" fill="none" stroke="#d62728" stroke-width="{stroke}"><polygon points="{}"/></g>"##,
        points_attr(&mut approx.world_points().into_iter())
    );
    for (id, class, color) in [
        ("interior-nodes", NodeClass::Interior, "#2ca02c"),
        ("boundary-nodes", NodeClass::Boundary, "#d62728"),
    ] {
        let _ = writeln!(s, r#"<g id="{id}" fill="{color}">"#);
        for n in classification.nodes_with(class) {
            let (x, y) = to_svg(g.world(n));
            let _ = writeln!(s, r#"<circle cx="{x}" cy="{y}" r="{r}"/>"#);
        }
        let _ = writeln!(s, "</g>");
    }
    s.push_str("</svg>\n");
    s
}

pub fn write_svg(
    given: &Contour,
    approx: &ApproxContour,
    classification: &NodeClassification,
    path: &Path,
) -> Result<(), IoError> {
    write_file(path, svg_string(given, approx, classification).as_bytes())
}
