//! Static SVG rendering of cost curves.
//!
//! The canvas is 640×480 with 10% margins, so the plot area spans
//! x ∈ [64, 576] and y ∈ [48, 432]. PC(+) maps left to right and NE bottom
//! to top, both over [0, 1]. Coordinates are written with two decimals and
//! elements are emitted in a fixed order, so equal inputs give equal bytes.

use std::fmt::Write as _;

use crate::costcurves::{ConfidenceBand, DominanceRegions, OperatingPoint, RegionLabel};
use crate::error::{Error, Result};

pub const WIDTH: f64 = 640.0;
pub const HEIGHT: f64 = 480.0;
const MARGIN_X: f64 = WIDTH * 0.1;
const MARGIN_Y: f64 = HEIGHT * 0.1;
const PLOT_W: f64 = WIDTH - 2.0 * MARGIN_X;
const PLOT_H: f64 = HEIGHT - 2.0 * MARGIN_Y;

const COLOURS: [&str; 6] = ["#1f4e79", "#b03a2e", "#1e8449", "#7d3c98", "#b9770e", "#2e4053"];
const DASHES: [&str; 4] = ["", "8 5", "2 4", "10 4 2 4"];

/// Canvas position of the point `(x, ne)`.
pub fn to_canvas(x: f64, ne: f64) -> (f64, f64) {
    (MARGIN_X + x * PLOT_W, HEIGHT - MARGIN_Y - ne * PLOT_H)
}

fn coord(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotLine {
    pub name: String,
    pub point: OperatingPoint,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Styling {
    pub title: Option<String>,
}

/// Renders classifier lines (solid, then dashed, in order), their bands as
/// translucent polygons, both trivial-classifier diagonals, and dominance
/// regions as a strip above the x axis. Region labels name the first two
/// lines as A and B.
pub fn emit_svg(
    grid: &[f64],
    lines: &[PlotLine],
    bands: &[ConfidenceBand],
    regions: Option<&DominanceRegions>,
    styling: &Styling,
) -> Result<String> {
    if grid.len() < 2 {
        return Err(Error::arg("plot grid needs at least 2 samples"));
    }
    if let Some(b) = bands.iter().find(|b| b.grid != grid) {
        return Err(Error::arg(format!(
            "band grid ({} samples) does not match the plot grid ({} samples)",
            b.grid.len(),
            grid.len()
        )));
    }
    if let Some(r) = regions {
        if r.per_sample.len() != grid.len() {
            return Err(Error::arg("region labels do not match the plot grid"));
        }
    }

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#,
        w = WIDTH,
        h = HEIGHT
    )
    .unwrap();
    writeln!(out, r##"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>"##).unwrap();
    if let Some(title) = &styling.title {
        writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle" font-size="14">{}</text>"#,
            coord(WIDTH / 2.0),
            coord(MARGIN_Y / 2.0),
            escape(title)
        )
        .unwrap();
    }

    // frame and ticks
    let (x0, y0) = to_canvas(0.0, 0.0);
    let (x1, y1) = to_canvas(1.0, 1.0);
    writeln!(
        out,
        r##"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#000000"/>"##,
        coord(x0),
        coord(y1),
        coord(x1 - x0),
        coord(y0 - y1)
    )
    .unwrap();
    for i in 0..=5 {
        let v = i as f64 / 5.0;
        let (tx, _) = to_canvas(v, 0.0);
        let (_, ty) = to_canvas(0.0, v);
        writeln!(
            out,
            r##"<line x1="{tx}" y1="{y0}" x2="{tx}" y2="{y0b}" stroke="#000000"/><text x="{tx}" y="{ly}" text-anchor="middle">{v:.1}</text>"##,
            tx = coord(tx),
            y0 = coord(y0),
            y0b = coord(y0 + 5.0),
            ly = coord(y0 + 18.0),
        )
        .unwrap();
        writeln!(
            out,
            r##"<line x1="{x0a}" y1="{ty}" x2="{x0}" y2="{ty}" stroke="#000000"/><text x="{lx}" y="{tyl}" text-anchor="end">{v:.1}</text>"##,
            x0a = coord(x0 - 5.0),
            x0 = coord(x0),
            ty = coord(ty),
            lx = coord(x0 - 8.0),
            tyl = coord(ty + 4.0),
        )
        .unwrap();
    }
    writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">PC(+)</text>"#,
        coord((x0 + x1) / 2.0),
        coord(HEIGHT - MARGIN_Y / 4.0)
    )
    .unwrap();
    let (lx, ly) = (MARGIN_X / 3.0, (y0 + y1) / 2.0);
    writeln!(
        out,
        r#"<text x="{x}" y="{y}" text-anchor="middle" transform="rotate(-90 {x} {y})">Normalized expected cost</text>"#,
        x = coord(lx),
        y = coord(ly)
    )
    .unwrap();

    // trivial classifiers
    for (name, p) in [
        ("always-negative", OperatingPoint::ALWAYS_NEGATIVE),
        ("always-positive", OperatingPoint::ALWAYS_POSITIVE),
    ] {
        let (ax, ay) = to_canvas(0.0, p.line().at(0.0));
        let (bx, by) = to_canvas(1.0, p.line().at(1.0));
        writeln!(
            out,
            r##"<line class="diagonal" data-name="{name}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#999999" stroke-width="1"/>"##,
            coord(ax),
            coord(ay),
            coord(bx),
            coord(by)
        )
        .unwrap();
    }

    for (i, band) in bands.iter().enumerate() {
        let colour = COLOURS[i % COLOURS.len()];
        let mut points: Vec<String> = Vec::with_capacity(2 * grid.len());
        for (k, &x) in grid.iter().enumerate() {
            let (px, py) = to_canvas(x, band.upper[k]);
            points.push(format!("{},{}", coord(px), coord(py)));
        }
        for (k, &x) in grid.iter().enumerate().rev() {
            let (px, py) = to_canvas(x, band.lower[k]);
            points.push(format!("{},{}", coord(px), coord(py)));
        }
        writeln!(
            out,
            r#"<polygon class="band" points="{}" fill="{colour}" fill-opacity="0.15" stroke="none"/>"#,
            points.join(" ")
        )
        .unwrap();
    }

    for (i, line) in lines.iter().enumerate() {
        let colour = COLOURS[i % COLOURS.len()];
        let dash = DASHES[i % DASHES.len()];
        let points: Vec<String> = grid
            .iter()
            .map(|&x| {
                let (px, py) = to_canvas(x, line.point.line().at(x));
                format!("{},{}", coord(px), coord(py))
            })
            .collect();
        let dash_attr = if dash.is_empty() {
            String::new()
        } else {
            format!(r#" stroke-dasharray="{dash}""#)
        };
        writeln!(
            out,
            r#"<polyline class="classifier" data-name="{}" points="{}" fill="none" stroke="{colour}" stroke-width="2"{dash_attr}/>"#,
            escape(&line.name),
            points.join(" ")
        )
        .unwrap();
    }

    if let Some(regions) = regions {
        let name = |k: usize| lines.get(k).map_or(if k == 0 { "A" } else { "B" }, |l| l.name.as_str());
        for r in &regions.regions {
            let (sx, _) = to_canvas(r.start, 0.0);
            let (ex, _) = to_canvas(r.end, 0.0);
            let (fill, text) = match r.label {
                RegionLabel::ABetter => (COLOURS[0], format!("{} better", name(0))),
                RegionLabel::BBetter => (COLOURS[1], format!("{} better", name(1))),
                RegionLabel::NotSignificant => ("#cccccc", "n.s.".to_string()),
            };
            writeln!(
                out,
                r#"<rect class="region" data-label="{}" x="{}" y="{}" width="{}" height="6" fill="{fill}" fill-opacity="0.6"/><text x="{}" y="{}" text-anchor="middle" font-size="10">{}</text>"#,
                r.label,
                coord(sx),
                coord(y0 - 6.0),
                coord(ex - sx),
                coord((sx + ex) / 2.0),
                coord(y0 - 9.0),
                escape(&text)
            )
            .unwrap();
        }
    }

    // legend
    for (i, line) in lines.iter().enumerate() {
        let colour = COLOURS[i % COLOURS.len()];
        let dash = DASHES[i % DASHES.len()];
        let ly = y1 + 14.0 + 16.0 * i as f64;
        let lx = x1 - 150.0;
        let dash_attr = if dash.is_empty() {
            String::new()
        } else {
            format!(r#" stroke-dasharray="{dash}""#)
        };
        writeln!(
            out,
            r#"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="{colour}" stroke-width="2"{dash_attr}/><text x="{}" y="{}">{}</text>"#,
            coord(lx),
            coord(lx + 30.0),
            coord(lx + 36.0),
            coord(ly + 4.0),
            escape(&line.name),
            y = coord(ly)
        )
        .unwrap();
    }

    out.push_str("</svg>\n");
    Ok(out)
}
