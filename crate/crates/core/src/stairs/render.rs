use std::fmt::Write as _;

use super::Region;
use crate::registry::{Named, Registry};

/// Draws a region on the (p, q) grid turned by 45°: weight p+q grows
/// upwards and p−q to the right.
pub trait RegionRenderer: Named {
    fn render(&self, rg: &Region) -> String;
}

struct Ascii;
struct Svg;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Cell {
    Admissible,
    Roof,
    Excluded,
    Outside,
}

fn cell(rg: &Region, p: usize, q: usize) -> Cell {
    let side = rg.side();
    if p > side || q > side {
        Cell::Outside
    } else if rg.admissible.contains(&(p, q)) {
        Cell::Admissible
    } else if p == side || q == side {
        Cell::Roof
    } else {
        Cell::Excluded
    }
}

/// Pairs (p, q) with p + q = w and p − q = x − side.
fn at(rg: &Region, w: usize, x: usize) -> Option<(usize, usize)> {
    let side = rg.side() as i64;
    let diff = x as i64 - side;
    let w = w as i64;
    if (w + diff) % 2 != 0 || w + diff < 0 || w - diff < 0 {
        return None;
    }
    Some(((w + diff) as usize / 2, (w - diff) as usize / 2))
}

impl Named for Ascii {
    fn name(&self) -> &'static str {
        "ascii"
    }
}

impl RegionRenderer for Ascii {
    fn render(&self, rg: &Region) -> String {
        let side = rg.side();
        let width = 2 * side + 1;
        let mut out = String::new();
        let _ = writeln!(out, "k={} n={}  o not excluded, . excluded, : roof", rg.k, rg.n);
        let frame = format!("     +{}+", "-".repeat(2 * width + 1));
        let _ = writeln!(out, "{frame}");
        for w in (rg.k..=2 * side).rev() {
            let mut row = String::with_capacity(2 * width + 1);
            for x in 0..width {
                let c = match at(rg, w, x).map(|(p, q)| cell(rg, p, q)) {
                    Some(Cell::Admissible) => 'o',
                    Some(Cell::Roof) => ':',
                    Some(Cell::Excluded) => '.',
                    Some(Cell::Outside) | None => ' ',
                };
                row.push(' ');
                row.push(c);
            }
            let _ = writeln!(out, "{w:>4} |{row} |");
        }
        let _ = writeln!(out, "{frame}");
        let _ = writeln!(out, "      bottom p+q={}, roof p={side} and q={side}", rg.k);
        out
    }
}

impl Named for Svg {
    fn name(&self) -> &'static str {
        "svg"
    }
}

const STEP: i64 = 40;
const MARGIN: i64 = 40;

impl Svg {
    fn point(rg: &Region, p: usize, q: usize) -> (i64, i64) {
        let side = rg.side() as i64;
        let x = MARGIN + STEP * (p as i64 - q as i64 + side);
        let y = MARGIN + STEP * (2 * side - (p + q) as i64);
        (x, y)
    }
}

impl RegionRenderer for Svg {
    fn render(&self, rg: &Region) -> String {
        let side = rg.side();
        let width = 2 * MARGIN + STEP * 2 * side as i64;
        let rows = (2 * side).saturating_sub(rg.k) as i64;
        let height = 2 * MARGIN + STEP * rows + 20;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
        );
        let _ = writeln!(out, r#"  <rect x="0" y="0" width="{width}" height="{height}" fill="white" stroke="black"/>"#);
        let mut line = |a: (usize, usize), b: (usize, usize), dashed: bool| {
            let (x1, y1) = Self::point(rg, a.0, a.1);
            let (x2, y2) = Self::point(rg, b.0, b.1);
            let dash = if dashed { r#" stroke-dasharray="4 4""# } else { "" };
            let _ = writeln!(out, r#"  <line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black"{dash}/>"#);
        };
        if rg.k <= 2 * side {
            let low = rg.k.saturating_sub(side);
            let top = rg.k.min(side);
            line((top, rg.k - top), (rg.k - top, top), false);
            line((side, low), (side, side), true);
            line((low, side), (side, side), true);
        }
        for p in 0..=side {
            for q in 0..=side {
                if p + q < rg.k {
                    continue;
                }
                let (cx, cy) = Self::point(rg, p, q);
                let (r, fill) = match cell(rg, p, q) {
                    Cell::Admissible => (8, "black"),
                    _ => (3, "#999999"),
                };
                let _ = writeln!(
                    out,
                    r#"  <circle cx="{cx}" cy="{cy}" r="{r}" fill="{fill}"><title>({p},{q})</title></circle>"#
                );
            }
        }
        let _ = writeln!(
            out,
            r#"  <text x="{MARGIN}" y="{}" font-family="monospace" font-size="12">k={} n={}</text>"#,
            height - 10,
            rg.k,
            rg.n
        );
        out.push_str("</svg>\n");
        out
    }
}

pub fn renderers() -> Registry<dyn RegionRenderer> {
    let mut r: Registry<dyn RegionRenderer> = Registry::new("renderer");
    r.register(Box::new(Ascii)).register(Box::new(Svg));
    r
}

pub fn render_region(rg: &Region, format: &str) -> Result<String, crate::registry::UnknownEntry> {
    Ok(renderers().get(format)?.render(rg))
}
