//! CSV and SVG rendering of an embedding.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::Embedding;
use crate::error::{Error, Result};

/// Points in this class are drawn as labelled squares.
pub const COMPASS_CLASS: &str = "compass";

pub const PALETTE: [&str; 16] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
    "#aec7e8", "#ffbb78", "#98df8a", "#ff9896", "#c5b0d5", "#c49c94",
];

const SIZE: f64 = 1000.0;
const MARGIN: f64 = 40.0;
const PLOT: f64 = 700.0;
const LEGEND_X: f64 = 780.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapFormat {
    Csv,
    Svg,
}

fn check_classes(e: &Embedding, classes: &[String]) -> Result<()> {
    if classes.len() != e.points.len() {
        return Err(Error::DimensionMismatch { what: "class count", left: classes.len(), right: e.points.len() });
    }
    Ok(())
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
        .replace('\'', "&apos;")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render_csv(e: &Embedding, classes: &[String]) -> Result<String> {
    check_classes(e, classes)?;
    let mut out = String::from("id,x,y,class\n");
    for ((label, p), class) in e.labels.iter().zip(&e.points).zip(classes) {
        writeln!(out, "{},{:.6},{:.6},{}", csv_field(label), p[0], p[1], csv_field(class)).unwrap();
    }
    Ok(out)
}

/// Classes in order of first appearance, compass excluded.
fn class_order(classes: &[String]) -> Vec<&str> {
    let mut order: Vec<&str> = Vec::new();
    for c in classes {
        if c != COMPASS_CLASS && !order.contains(&c.as_str()) {
            order.push(c);
        }
    }
    order
}

pub fn render_svg(e: &Embedding, classes: &[String]) -> Result<String> {
    check_classes(e, classes)?;
    let order = class_order(classes);
    let color = |c: &str| PALETTE[order.iter().position(|x| *x == c).unwrap_or(0) % PALETTE.len()];
    let px = |p: [f64; 2]| (MARGIN + p[0] * PLOT, MARGIN + (1.0 - p[1]) * PLOT);

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" width="{SIZE}" height="{SIZE}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>"#).unwrap();
    writeln!(out, r#"<g id="points">"#).unwrap();
    for ((label, &p), class) in e.labels.iter().zip(&e.points).zip(classes) {
        if class == COMPASS_CLASS {
            continue;
        }
        let (x, y) = px(p);
        writeln!(
            out,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="6" fill="{}" fill-opacity="0.85"><title>{}</title></circle>"#,
            color(class),
            escape(label)
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, r#"<g id="compass">"#).unwrap();
    for (label, &p) in e.labels.iter().zip(&e.points).zip(classes).filter(|(_, c)| *c == COMPASS_CLASS).map(|(x, _)| x) {
        let (x, y) = px(p);
        writeln!(
            out,
            r#"<rect x="{:.2}" y="{:.2}" width="14" height="14" fill="black" stroke="white" stroke-width="2"/>"#,
            x - 7.0,
            y - 7.0
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="18" font-weight="bold">{}</text>"#,
            x + 10.0,
            y - 10.0,
            escape(label)
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, r#"<g id="legend" font-family="sans-serif" font-size="16">"#).unwrap();
    let mut y = MARGIN + 10.0;
    for c in &order {
        writeln!(out, r#"<circle cx="{LEGEND_X}" cy="{y:.2}" r="6" fill="{}"/>"#, color(c)).unwrap();
        writeln!(out, r#"<text x="{:.2}" y="{:.2}">{}</text>"#, LEGEND_X + 14.0, y + 5.0, escape(c)).unwrap();
        y += 24.0;
    }
    if classes.iter().any(|c| c == COMPASS_CLASS) {
        writeln!(out, r#"<rect x="{:.2}" y="{:.2}" width="12" height="12" fill="black"/>"#, LEGEND_X - 6.0, y - 6.0)
            .unwrap();
        writeln!(out, r#"<text x="{:.2}" y="{:.2}">{COMPASS_CLASS}</text>"#, LEGEND_X + 14.0, y + 5.0).unwrap();
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}

pub fn export_map(e: &Embedding, classes: &[String], format: MapFormat, path: &Path) -> Result<()> {
    let text = match format {
        MapFormat::Csv => render_csv(e, classes)?,
        MapFormat::Svg => render_svg(e, classes)?,
    };
    std::fs::write(path, text)?;
    Ok(())
}
