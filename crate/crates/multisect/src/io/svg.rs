//! Static SVG pictures: scheme grids and panel strips.

use std::fmt::Write as _;

use crate::bundle::{format_perm, Scheme};
use crate::diagram::MultisectionDiagram;

/// Family colours: green, blue, purple, orange, then the rest.
const PALETTE: [&str; 8] = ["#2e8b57", "#1f6fd1", "#8a3fb8", "#e07b1a", "#c0392b", "#16a085", "#7f6a00", "#555555"];

fn colour(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

fn header(out: &mut String, w: usize, h: usize) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// The scheme table as drawn, one `cell` group per entry, with the piece each real
/// column misses along the top. A dashed line marks where the wrap column is cut.
pub fn render_scheme(s: &Scheme) -> String {
    const CW: usize = 40;
    const CH: usize = 28;
    const LEFT: usize = 44;
    const TOP: usize = 56;
    let cols = s.columns();
    let (w, h) = (LEFT + (cols + 1) * CW + 16, TOP + s.rows() * CH + 16);
    let mut out = String::new();
    header(&mut out, w, h);
    let _ = writeln!(out, r#"<text x="{LEFT}" y="16">scheme n={} N={cols} sigma={}</text>"#, s.n, escape(&format_perm(&s.sigma)));
    for c in 0..=cols {
        let x = LEFT + c * CW + CW / 2;
        let name = if c == cols { "*".to_string() } else { c.to_string() };
        let _ = writeln!(out, r#"<text x="{x}" y="34" text-anchor="middle">{name}</text>"#);
        if c < cols {
            let _ = writeln!(
                out,
                r##"<text class="missing" x="{x}" y="50" text-anchor="middle" fill="#888">-{}</text>"##,
                s.missing(c)
            );
        }
    }
    for (k, row) in s.table.iter().enumerate() {
        let y = TOP + k * CH;
        let _ = writeln!(out, r#"<text x="8" y="{}">X{}</text>"#, y + CH / 2 + 4, k + 1);
        for (c, &piece) in row.iter().enumerate() {
            let x = LEFT + c * CW;
            let _ = writeln!(
                out,
                r#"<g class="cell" data-row="{}" data-col="{c}"><rect x="{x}" y="{y}" width="{CW}" height="{CH}" fill="{}" fill-opacity="0.25" stroke="black"/><text x="{}" y="{}" text-anchor="middle">{piece}</text></g>"#,
                k + 1,
                colour(piece - 1),
                x + CW / 2,
                y + CH / 2 + 4
            );
        }
    }
    let xw = LEFT + cols * CW;
    let _ = writeln!(
        out,
        r#"<line x1="{xw}" y1="{}" x2="{xw}" y2="{}" stroke="black" stroke-width="2" stroke-dasharray="4 3"/>"#,
        TOP - 4,
        TOP + s.rows() * CH + 4
    );
    out.push_str("</svg>\n");
    out
}

enum Place {
    /// Copy of a fiber curve on panel `q`.
    Panel(usize),
    /// Arc through the tube entering panel `l` from its left neighbour.
    Tube(usize),
    Elsewhere,
}

fn place(label: &str, panels: usize) -> Place {
    let index = |s: &str| s.split('.').next().and_then(|v| v.parse::<usize>().ok());
    if let Some(q) = label.strip_prefix('p').and_then(index).filter(|&q| q >= 1 && q <= panels) {
        return Place::Panel(q - 1);
    }
    if let Some(l) = label.strip_prefix('c').and_then(index).filter(|&l| l < panels) {
        return Place::Tube(l);
    }
    Place::Elsewhere
}

/// A schematic strip of the central surface: one `panel` group per panel with the fiber
/// copies drawn on it, span arcs drawn across the tubes joining neighbours, and the
/// remaining curves listed underneath by family. Panels come from the `N` or `panels`
/// metadata; without either the whole surface is one panel.
pub fn render_diagram(d: &MultisectionDiagram) -> String {
    const PW: usize = 150;
    const PH: usize = 150;
    const GAP: usize = 50;
    const LEFT: usize = 30;
    const TOP: usize = 40;
    let panels = d.meta.get("N").or_else(|| d.meta.get("panels")).and_then(|v| v.parse().ok()).filter(|&p| p > 0).unwrap_or(1);
    let mut inside: Vec<Vec<(usize, &str)>> = vec![Vec::new(); panels];
    let mut tubes: Vec<Vec<(usize, &str)>> = vec![Vec::new(); panels];
    let mut rest: Vec<Vec<&str>> = vec![Vec::new(); d.n()];
    for (f, ls) in d.labels.iter().enumerate() {
        for l in ls {
            match place(l, panels) {
                Place::Panel(q) => inside[q].push((f, l)),
                Place::Tube(t) if panels > 1 => tubes[t].push((f, l)),
                _ if l.is_empty() => rest[f].push("?"),
                _ => rest[f].push(l),
            }
        }
    }
    let strip_w = panels * PW + (panels - 1) * GAP;
    let legend_h = 20 * (d.n() + 1);
    let (w, h) = (LEFT * 2 + strip_w + if panels > 1 { GAP } else { 0 }, TOP + PH + 40 + legend_h);
    let mut out = String::new();
    header(&mut out, w, h);
    let title: Vec<String> = d.meta.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let _ = writeln!(
        out,
        r#"<text x="{LEFT}" y="20">genus {} with {} families {}</text>"#,
        d.genus(),
        d.n(),
        escape(&title.join(" "))
    );
    let px = |q: usize| LEFT + q * (PW + GAP);
    for q in 0..panels {
        let x = px(q);
        let _ = writeln!(out, r#"<g class="panel" data-panel="{}">"#, q + 1);
        let _ = writeln!(out, r#"<rect x="{x}" y="{TOP}" width="{PW}" height="{PH}" rx="24" fill="none" stroke="black"/>"#);
        let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">S{}</text>"#, x + PW / 2, TOP + PH + 16, q + 1);
        for (k, &(f, l)) in inside[q].iter().enumerate() {
            let r = 16 + 12 * k;
            let _ = writeln!(
                out,
                r#"<ellipse cx="{}" cy="{}" rx="{}" ry="{}" fill="none" stroke="{}" stroke-width="2"><title>{}</title></ellipse>"#,
                x + PW / 2,
                TOP + PH / 2,
                r.min(PW / 2 - 6),
                (r / 2).min(PH / 2 - 6),
                colour(f),
                escape(l)
            );
        }
        out.push_str("</g>\n");
    }
    if panels > 1 {
        for (t, arcs) in tubes.iter().enumerate() {
            // tube t joins panel t - 1 to panel t; tube 0 wraps around from the last panel
            let x0 = if t == 0 { px(panels - 1) + PW } else { px(t - 1) + PW };
            let x1 = x0 + GAP;
            let _ = writeln!(out, r#"<g class="tube" data-tube="{t}">"#);
            let _ = writeln!(out, r#"<rect x="{x0}" y="{}" width="{GAP}" height="40" fill="none" stroke="black" stroke-dasharray="3 2"/>"#, TOP + PH / 2 - 20);
            for (k, &(f, l)) in arcs.iter().enumerate() {
                let y = TOP + PH / 2 - 14 + 6 * (k % 5);
                let _ = writeln!(
                    out,
                    r#"<line x1="{x0}" y1="{y}" x2="{x1}" y2="{y}" stroke="{}" stroke-width="2"><title>{}</title></line>"#,
                    colour(f),
                    escape(l)
                );
            }
            out.push_str("</g>\n");
        }
    }
    for (f, ls) in rest.iter().enumerate() {
        let y = TOP + PH + 40 + 20 * f;
        let _ = writeln!(
            out,
            r#"<text x="{LEFT}" y="{y}" fill="{}">family {}: {} curves{}{}</text>"#,
            colour(f),
            f + 1,
            d.families[f].len(),
            if ls.is_empty() { "" } else { "; also " },
            escape(&ls.join(" "))
        );
    }
    out.push_str("</svg>\n");
    out
}
