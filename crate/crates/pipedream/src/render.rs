//! Renderers for RC-graphs: ASCII grids, TikZ pictures, SVG strand
//! diagrams, and a JSON interchange form with a strict parser.
//!
//! All renderers draw a square `g × g` grid with row 1 at the top and
//! column 1 at the left; `g` is at least the owner's size, so padding a
//! permutation with fixed points only widens the picture.  Crossings are
//! drawn as `+`, empty staircase cells as elbows (`.` in ASCII, paired
//! quarter-arcs in strand pictures).

use crate::perm::Permutation;
use crate::rcgraph::{self, RCGraph};
use crate::{Diagram, Error, Result};
use serde::Deserialize;
use std::fmt::Write as _;

/// Output format of a renderer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Tikz,
    Svg,
    Json,
}

/// How to draw a graph.
#[derive(Debug, Clone)]
pub struct RenderSpec {
    pub format: Format,
    /// Draw the strand wiring (TikZ/SVG): elbows become quarter-arcs and
    /// crossings straight overpasses.  Ignored by ASCII and JSON.
    pub show_strands: bool,
    /// Side length of one grid cell in SVG pixels / TikZ points.
    pub cell_size: f64,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec { format: Format::Ascii, show_strands: false, cell_size: 24.0 }
    }
}

/// The grid side used to draw `graph` when the caller asked for `requested`
/// columns: never smaller than the owner's size.
fn side(graph: &RCGraph, requested: usize) -> usize {
    requested.max(graph.size())
}

/// Renders in the requested format; `grid_size` requests a minimum grid side.
pub fn render(graph: &RCGraph, spec: &RenderSpec, grid_size: usize) -> String {
    match spec.format {
        Format::Ascii => ascii(graph, grid_size),
        Format::Tikz => tikz(graph, spec, grid_size),
        Format::Svg => svg(graph, spec, grid_size),
        Format::Json => json(graph),
    }
}

/// ASCII grid: one line per row, `+` for a crossing, `.` otherwise; every
/// line newline-terminated.
pub fn ascii(graph: &RCGraph, grid_size: usize) -> String {
    let g = side(graph, grid_size);
    let mut out = String::with_capacity(g * (g + 1));
    for row in 1..=g {
        for col in 1..=g {
            out.push(if graph.contains((row, col)) { '+' } else { '.' });
        }
        out.push('\n');
    }
    out
}

/// Cell-edge midpoints of cell `(row, col)` at scale `s`, in screen
/// coordinates (y grows downward): west, east, north, south.
fn ports(row: usize, col: usize, s: f64) -> [(f64, f64); 4] {
    let (x0, y0) = ((col - 1) as f64 * s, (row - 1) as f64 * s);
    [
        (x0, y0 + s / 2.0),         // west
        (x0 + s, y0 + s / 2.0),     // east
        (x0 + s / 2.0, y0),         // north
        (x0 + s / 2.0, y0 + s),     // south
    ]
}

/// TikZ picture.  Glyph mode places `+` and `\cdot` nodes; strand mode
/// draws the wiring instead (quarter-arcs at elbows, two straight segments
/// at crossings).  Coordinates put row 1 at the top by negating y.
pub fn tikz(graph: &RCGraph, spec: &RenderSpec, grid_size: usize) -> String {
    let g = side(graph, grid_size);
    let s = spec.cell_size;
    let r = s / 2.0;
    let mut out = String::new();
    out.push_str("\\begin{tikzpicture}[line cap=round]\n");
    for row in 1..=g {
        for col in 1..=g {
            let on_staircase = row + col <= g;
            let crossing = graph.contains((row, col));
            if !spec.show_strands {
                let (cx, cy) = ((col as f64 - 0.5) * s, -((row as f64 - 0.5) * s));
                let glyph = if crossing { "$+$" } else { "$\\cdot$" };
                writeln!(out, "  \\node at ({cx:.1}pt, {cy:.1}pt) {{{glyph}}};").unwrap();
                continue;
            }
            let [w, e, n, sp] = ports(row, col, s).map(|(x, y)| (x, -y));
            if crossing {
                writeln!(
                    out,
                    "  \\draw ({:.1}pt, {:.1}pt) -- ({:.1}pt, {:.1}pt);",
                    w.0, w.1, e.0, e.1
                )
                .unwrap();
                writeln!(
                    out,
                    "  \\draw ({:.1}pt, {:.1}pt) -- ({:.1}pt, {:.1}pt);",
                    sp.0, sp.1, n.0, n.1
                )
                .unwrap();
            } else if on_staircase {
                writeln!(
                    out,
                    "  \\draw ({:.1}pt, {:.1}pt) arc[start angle=-90, end angle=0, radius={r:.1}pt];",
                    w.0, w.1
                )
                .unwrap();
                writeln!(
                    out,
                    "  \\draw ({:.1}pt, {:.1}pt) arc[start angle=180, end angle=90, radius={r:.1}pt];",
                    sp.0, sp.1
                )
                .unwrap();
            } else if row + col == g + 1 {
                writeln!(
                    out,
                    "  \\draw ({:.1}pt, {:.1}pt) arc[start angle=-90, end angle=0, radius={r:.1}pt];",
                    w.0, w.1
                )
                .unwrap();
            }
        }
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

/// SVG picture.  Glyph mode draws a light grid with plus marks and dots;
/// strand mode draws the wiring, crossing the horizontal strand over the
/// vertical one.
pub fn svg(graph: &RCGraph, spec: &RenderSpec, grid_size: usize) -> String {
    let g = side(graph, grid_size);
    let s = spec.cell_size;
    let r = s / 2.0;
    let total = g as f64 * s;
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{total}\" height=\"{total}\" \
         viewBox=\"0 0 {total} {total}\">"
    )
    .unwrap();
    writeln!(
        out,
        "  <rect width=\"{total}\" height=\"{total}\" fill=\"white\" stroke=\"none\"/>"
    )
    .unwrap();
    if !spec.show_strands {
        for k in 0..=g {
            let t = k as f64 * s;
            writeln!(
                out,
                "  <path d=\"M 0 {t} H {total} M {t} 0 V {total}\" \
                 stroke=\"#ccc\" stroke-width=\"0.5\" fill=\"none\"/>"
            )
            .unwrap();
        }
    }
    for row in 1..=g {
        for col in 1..=g {
            let on_staircase = row + col <= g;
            let crossing = graph.contains((row, col));
            let [w, e, n, sp] = ports(row, col, s);
            let (cx, cy) = ((col as f64 - 0.5) * s, (row as f64 - 0.5) * s);
            if !spec.show_strands {
                if crossing {
                    writeln!(
                        out,
                        "  <path d=\"M {} {cy} H {} M {cx} {} V {}\" class=\"crossing\" \
                         stroke=\"black\" stroke-width=\"2\" fill=\"none\"/>",
                        cx - r * 0.8,
                        cx + r * 0.8,
                        cy - r * 0.8,
                        cy + r * 0.8
                    )
                    .unwrap();
                } else {
                    writeln!(
                        out,
                        "  <circle cx=\"{cx}\" cy=\"{cy}\" r=\"1.5\" class=\"elbow\" \
                         fill=\"#888\"/>"
                    )
                    .unwrap();
                }
                continue;
            }
            if crossing {
                // Vertical strand first, then a small white patch, then the
                // horizontal strand: the horizontal pipe reads as passing
                // over the vertical one.
                writeln!(
                    out,
                    "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" class=\"strand\" \
                     stroke=\"black\" stroke-width=\"2\"/>",
                    sp.0, sp.1, n.0, n.1
                )
                .unwrap();
                writeln!(
                    out,
                    "  <circle cx=\"{cx}\" cy=\"{cy}\" r=\"{}\" fill=\"white\"/>",
                    s * 0.09
                )
                .unwrap();
                writeln!(
                    out,
                    "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" class=\"strand\" \
                     stroke=\"black\" stroke-width=\"2\"/>",
                    w.0, w.1, e.0, e.1
                )
                .unwrap();
            } else if on_staircase {
                writeln!(
                    out,
                    "  <path d=\"M {} {} A {r} {r} 0 0 0 {} {}\" class=\"strand\" \
                     stroke=\"black\" stroke-width=\"2\" fill=\"none\"/>",
                    w.0, w.1, n.0, n.1
                )
                .unwrap();
                writeln!(
                    out,
                    "  <path d=\"M {} {} A {r} {r} 0 0 1 {} {}\" class=\"strand\" \
                     stroke=\"black\" stroke-width=\"2\" fill=\"none\"/>",
                    sp.0, sp.1, e.0, e.1
                )
                .unwrap();
            } else if row + col == g + 1 {
                writeln!(
                    out,
                    "  <path d=\"M {} {} A {r} {r} 0 0 0 {} {}\" class=\"strand\" \
                     stroke=\"black\" stroke-width=\"2\" fill=\"none\"/>",
                    w.0, w.1, n.0, n.1
                )
                .unwrap();
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

/// JSON interchange form:
/// `{"w": [..], "crossings": [[row, col], ..], "label": [..]}`.
pub fn json(graph: &RCGraph) -> String {
    let value = serde_json::json!({
        "w": graph.owner().window(),
        "crossings": graph.crossings(),
        "label": graph.label(),
    });
    let mut text = serde_json::to_string_pretty(&value).expect("static shape");
    text.push('\n');
    text
}

#[derive(Deserialize)]
struct JsonGraph {
    w: Vec<usize>,
    crossings: Vec<(usize, usize)>,
    #[serde(default)]
    label: Option<Vec<usize>>,
}

/// Parses the JSON interchange form back into a validated RC-graph.
///
/// The crossing set is fully re-validated against `w`; a `label` field, if
/// present, must match the recomputed one.
pub fn parse_json(text: &str) -> Result<RCGraph> {
    let raw: JsonGraph =
        serde_json::from_str(text).map_err(|err| Error::BadJson(err.to_string()))?;
    let w = Permutation::from_window(raw.w)?;
    let graph = rcgraph::validate(&Diagram::from_cells(raw.crossings), &w)?;
    if let Some(label) = raw.label {
        if label != graph.label() {
            return Err(Error::BadJson(format!(
                "label {:?} does not match the crossing set's label {:?}",
                label,
                graph.label()
            )));
        }
    }
    Ok(graph)
}
