//! SVG and DOT drawings of a network and an optional solved path.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use manet_core::geometry::Level;
use manet_core::maned::build_edges;
use manet_core::{DeviceId, Network, PathResult};

const MARGIN: u32 = 20;
const DEVICE_RADIUS: u32 = 4;
const CONNECTOR_LENGTH: f64 = 9.0;

/// Stroke colour for `level` out of `levels`.
///
/// Three or fewer levels use green, blue and red. Above that the hue moves
/// from green (120) through blue (240) to red (360) in equal steps, which
/// gives the same three colours at the ends and the midpoint.
pub fn level_color(level: Level, levels: Level) -> String {
    if levels <= 3 {
        return match level {
            1 => "green",
            2 => "blue",
            _ => "red",
        }
        .to_string();
    }
    let t = f64::from(level.saturating_sub(1)) / f64::from(levels - 1);
    let hue = (120.0 + 240.0 * t).round() as u32 % 360;
    format!("hsl({hue},100%,40%)")
}

fn path_links(path: Option<&PathResult>) -> Vec<(DeviceId, DeviceId, Level)> {
    path.map(|p| p.breakdown.iter().map(|h| (h.from, h.to, h.level)).collect())
        .unwrap_or_default()
}

pub fn svg(net: &Network, path: Option<&PathResult>) -> String {
    let space = net.space();
    let (w, h) = (space.x + 2 * MARGIN, space.y + 2 * MARGIN);
    let levels = net.level_count();
    let pos = |id: DeviceId| {
        let p = net.device(id).expect("device on path").position;
        (p.x + MARGIN, p.y + MARGIN)
    };
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);

    let grid = net.grid();
    let size = grid.sector_size();
    let _ = writeln!(s, r##"<g class="grid" stroke="#dddddd" stroke-width="0.5">"##);
    for c in 0..=grid.columns() {
        let x = (c * size).min(space.x) + MARGIN;
        let _ = writeln!(s, r#"<line x1="{x}" y1="{MARGIN}" x2="{x}" y2="{}"/>"#, space.y + MARGIN);
    }
    for r in 0..=grid.rows() {
        let y = (r * size).min(space.y) + MARGIN;
        let _ = writeln!(s, r#"<line x1="{MARGIN}" y1="{y}" x2="{}" y2="{y}"/>"#, space.x + MARGIN);
    }
    s.push_str("</g>\n");

    s.push_str("<g class=\"edges\" stroke-width=\"0.6\" stroke-opacity=\"0.5\">\n");
    for e in build_edges(net) {
        let ((x1, y1), (x2, y2)) = (pos(e.from), pos(e.to));
        let _ = writeln!(
            s,
            r#"<line class="edge level-{}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{}"/>"#,
            e.level,
            level_color(e.level, levels)
        );
    }
    s.push_str("</g>\n");

    let links = path_links(path);
    if let Some(p) = path {
        s.push_str("<g class=\"solution\" stroke-width=\"3.5\" stroke-linecap=\"round\">\n");
        for &(from, to, level) in &links {
            let ((x1, y1), (x2, y2)) = (pos(from), pos(to));
            let _ = writeln!(
                s,
                r#"<line class="path level-{level}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{}"/>"#,
                level_color(level, levels)
            );
        }
        for id in p.swing_devices() {
            let (x, y) = pos(id);
            let _ = writeln!(
                s,
                r#"<circle class="swing" cx="{x}" cy="{y}" r="9" fill="none" stroke="black" stroke-width="2"/>"#
            );
        }
        s.push_str("</g>\n");
    }

    let on_path: BTreeSet<DeviceId> = path.map(|p| p.devices().into_iter().collect()).unwrap_or_default();
    for d in net.devices() {
        let (x, y) = pos(d.id);
        let weight = if on_path.contains(&d.id) { "bold" } else { "normal" };
        let _ = writeln!(s, r#"<g class="device" id="device-{}" transform="translate({x},{y})">"#, d.id);
        for l in d.supported_levels() {
            let angle = (-90.0 + 40.0 * f64::from(l - 1)).to_radians();
            let _ = writeln!(
                s,
                r#"<line class="connector" x1="0" y1="0" x2="{:.2}" y2="{:.2}" stroke="{}" stroke-width="1.5"/>"#,
                CONNECTOR_LENGTH * angle.cos(),
                CONNECTOR_LENGTH * angle.sin(),
                level_color(l, levels)
            );
        }
        let _ = writeln!(s, r#"<circle r="{DEVICE_RADIUS}" fill="black"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="6" y="12" font-family="monospace" font-size="9" font-weight="{weight}">{}</text>"#,
            d.id
        );
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    s
}

pub fn dot(net: &Network, path: Option<&PathResult>) -> String {
    let levels = net.level_count();
    let links: BTreeSet<(DeviceId, DeviceId)> = path_links(path).into_iter().map(|(a, b, _)| (a, b)).collect();
    let swings: BTreeSet<DeviceId> = path.map(|p| p.swing_devices().into_iter().collect()).unwrap_or_default();
    let mut s = String::from("digraph manet {\n  node [shape=circle, fontsize=9];\n");
    for d in net.devices() {
        let shape = if swings.contains(&d.id) { ", shape=doublecircle" } else { "" };
        let _ = writeln!(
            s,
            "  d{} [label=\"{}\", pos=\"{},{}!\"{shape}];",
            d.id, d.id, d.position.x, net.space().y - d.position.y
        );
    }
    for e in build_edges(net) {
        let width = if links.contains(&(e.from, e.to)) { ", penwidth=3" } else { "" };
        let _ = writeln!(
            s,
            "  d{} -> d{} [color=\"{}\", label=\"C{}\"{width}];",
            e.from,
            e.to,
            level_color(e.level, levels),
            e.level
        );
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn palette() {
        assert_eq!(level_color(1, 3), "green");
        assert_eq!(level_color(2, 3), "blue");
        assert_eq!(level_color(3, 3), "red");
        assert_eq!(level_color(1, 5), "hsl(120,100%,40%)");
        assert_eq!(level_color(3, 5), "hsl(240,100%,40%)");
        assert_eq!(level_color(5, 5), "hsl(0,100%,40%)");
    }
}
