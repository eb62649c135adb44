//! SVG and pstricks output for full and partial tilings.
//!
//! Exact coordinates are converted to floats here and nowhere else.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tiling::{components, two_color, ComponentType, Tiling};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColorMode {
    /// One palette entry per connected component.
    ByComponent,
    /// Two colors from the black/white assignment.
    BySign,
    Uniform,
    /// One palette entry per component type (I, II, III, other).
    ByRegion,
}

impl ColorMode {
    pub fn name(self) -> &'static str {
        match self {
            ColorMode::ByComponent => "by_component",
            ColorMode::BySign => "by_sign",
            ColorMode::Uniform => "uniform",
            ColorMode::ByRegion => "by_region",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderStyle {
    pub color_mode: ColorMode,
    /// Output units per K-scaled length unit.
    pub scale: f64,
    pub stroke_width: f64,
    pub palette: Vec<String>,
}

pub const DEFAULT_PALETTE: [&str; 4] = ["lightblue", "lightgreen", "pink", "lightyellow"];

/// Fill of partial tilings drawn in one color, as in failure galleries.
pub const PARTIAL_FILL: &str = "lightgray";

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            color_mode: ColorMode::ByComponent,
            scale: 1.0,
            stroke_width: 0.25,
            palette: DEFAULT_PALETTE.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum RenderError {
    #[error("palette has {have} colors but {need} classes are rendered")]
    PaletteTooSmall { have: usize, need: usize },
    #[error("scale must be positive, got {0}")]
    BadScale(f64),
}

/// Fill per tile (by position) and an optional note for the output comment.
fn fills(t: &Tiling, style: &RenderStyle) -> Result<(Vec<String>, Option<String>), RenderError> {
    if style.scale.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) || !style.scale.is_finite() {
        return Err(RenderError::BadScale(style.scale));
    }
    let n = t.tiles.len();
    let uniform = |note: Option<String>| -> Result<(Vec<String>, Option<String>), RenderError> {
        let c = if t.partial {
            PARTIAL_FILL.to_string()
        } else {
            style.palette.first().cloned().ok_or(RenderError::PaletteTooSmall { have: 0, need: 1 })?
        };
        Ok((vec![c; n], note))
    };
    let need = |k: usize| {
        if style.palette.len() < k {
            Err(RenderError::PaletteTooSmall { have: style.palette.len(), need: k })
        } else {
            Ok(())
        }
    };
    match style.color_mode {
        ColorMode::Uniform => uniform(None),
        ColorMode::BySign => {
            if t.partial {
                return uniform(Some("warning: by_sign needs a complete tiling; drawn uniform".into()));
            }
            match two_color(t) {
                Ok(signs) => {
                    need(2)?;
                    let f = t
                        .tiles
                        .iter()
                        .map(|tile| {
                            let s = signs.signs.get(&tile.id).copied().unwrap_or(1);
                            style.palette[if s > 0 { 0 } else { 1 }].clone()
                        })
                        .collect();
                    Ok((f, None))
                }
                Err(e) => uniform(Some(format!("warning: two-coloring failed ({e}); drawn uniform"))),
            }
        }
        ColorMode::ByComponent | ColorMode::ByRegion => match components(t) {
            Ok(dec) => {
                if style.color_mode == ColorMode::ByComponent {
                    need(dec.components.len())?;
                    Ok(((0..n).map(|p| style.palette[dec.membership[p]].clone()).collect(), None))
                } else {
                    let idx = |k: ComponentType| match k {
                        ComponentType::I => 0,
                        ComponentType::II => 1,
                        ComponentType::III => 2,
                        ComponentType::Other => 3,
                    };
                    let used = (0..n).map(|p| idx(dec.type_of_tile(p))).max().map_or(0, |m| m + 1);
                    need(used)?;
                    Ok(((0..n).map(|p| style.palette[idx(dec.type_of_tile(p))].clone()).collect(), None))
                }
            }
            Err(e) => uniform(Some(format!("warning: components unavailable ({e}); drawn uniform"))),
        },
    }
}

/// `v` with 10 significant digits, trailing zeros removed.
pub fn sig10(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return "0".into();
    }
    let mag = v.abs().log10().floor() as i32;
    let decimals = (9 - mag).max(0) as usize;
    let mut s = format!("{v:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

fn header(t: &Tiling) -> String {
    format!(
        "N={} M={} K={} tiles={}{}",
        t.spec.n(),
        t.spec.m(),
        t.spec.k(),
        t.tiles.len(),
        if t.partial { " partial" } else { "" }
    )
}

/// Well-formed SVG with one polygon per tile plus the outline of `ABC`.
pub fn to_svg(t: &Tiling, style: &RenderStyle) -> Result<String, RenderError> {
    let (fill, note) = fills(t, style)?;
    let s = style.scale;
    let corners = t.frame.corners().map(|p| p.to_f64());
    let xmin = corners.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let xmax = corners.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let ymin = corners.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let ymax = corners.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let margin = 2.0 * style.stroke_width.max(0.0) + 1.0;
    let (w, h) = ((xmax - xmin) * s + 2.0 * margin, (ymax - ymin) * s + 2.0 * margin);
    // y grows downward in SVG
    let pt = |(x, y): (f64, f64)| format!("{},{}", sig10((x - xmin) * s + margin), sig10((ymax - y) * s + margin));

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        sig10(w),
        sig10(h),
        sig10(w),
        sig10(h)
    );
    let _ = writeln!(out, "<!-- {} color={} -->", header(t), style.color_mode.name());
    if let Some(n) = &note {
        let _ = writeln!(out, "<!-- {} -->", n.replace("--", "-"));
    }
    let sw = sig10(style.stroke_width);
    for (i, tile) in t.tiles.iter().enumerate() {
        let pts = [&tile.v_alpha, &tile.v_beta, &tile.v_gamma].map(|p| pt(p.to_f64())).join(" ");
        let _ = writeln!(
            out,
            "<polygon id=\"t{}\" points=\"{}\" fill=\"{}\" stroke=\"black\" stroke-width=\"{}\"/>",
            tile.id, pts, fill[i], sw
        );
    }
    let outline = corners.map(pt).join(" ");
    let _ = writeln!(out, "<polygon id=\"ABC\" points=\"{outline}\" fill=\"none\" stroke=\"black\" stroke-width=\"{sw}\"/>");
    out.push_str("</svg>\n");
    Ok(out)
}

fn ps_pt((x, y): (f64, f64), s: f64) -> String {
    format!("({:.2},{:.2})", x * s, y * s)
}

/// A pspicture with the outline of `ABC` and one filled pspolygon per tile.
pub fn to_pstricks(t: &Tiling, style: &RenderStyle) -> Result<String, RenderError> {
    let (fill, note) = fills(t, style)?;
    let s = style.scale;
    let corners = t.frame.corners().map(|p| p.to_f64());
    let xmin = corners.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let xmax = corners.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let ymin = corners.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let ymax = corners.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);

    let mut out = String::new();
    let _ = writeln!(out, "% {} color={}", header(t), style.color_mode.name());
    if let Some(n) = &note {
        let _ = writeln!(out, "% {n}");
    }
    let _ = writeln!(out, "\\begin{{pspicture}}{}{}", ps_pt((xmin, ymin), s), ps_pt((xmax, ymax), s));
    let _ = writeln!(out, "\\pspolygon{}", [corners[0], corners[1], corners[2]].map(|p| ps_pt(p, s)).concat());
    for (i, tile) in t.tiles.iter().enumerate() {
        let pts = [&tile.v_alpha, &tile.v_beta, &tile.v_gamma].map(|p| ps_pt(p.to_f64(), s)).concat();
        let _ = writeln!(out, "\\pspolygon[fillcolor={},fillstyle=solid]{}", fill[i], pts);
    }
    out.push_str("\\end{pspicture}\n");
    Ok(out)
}
