//! Scenes of panels and marks, rendered to standalone SVG 1.1.
//!
//! Output is a pure function of the scene. Every numeric attribute is written
//! with exactly three decimals, marks are painted in list order, and marks are
//! clipped geometrically to their panel's plot rectangle.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::ladder::{ColorRole, PlotSpace, RANGE_TOLERANCE};

pub const DEFAULT_WIDTH: f64 = 600.0;
pub const DEFAULT_HEIGHT: f64 = 450.0;

/// Space reserved around each panel's plot rectangle, in pixels.
pub const MARGIN_LEFT: f64 = 64.0;
pub const MARGIN_RIGHT: f64 = 16.0;
pub const MARGIN_TOP: f64 = 32.0;
pub const MARGIN_BOTTOM: f64 = 48.0;

/// Stroke patterns, in pixels.
pub const DASHED_PATTERN: [f64; 2] = [6.0, 4.0];
pub const DOTTED_PATTERN: [f64; 2] = [2.0, 3.0];

pub const FONT_FAMILY: &str = "sans-serif";
pub const FONT_SIZE: f64 = 12.0;
pub const TITLE_FONT_SIZE: f64 = 13.0;
pub const TICK_LENGTH: f64 = 5.0;
pub const BACKGROUND: &str = "#FFFFFF";

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("layout error: {0}")]
    Layout(String),
    #[error("panel {panel}, mark {mark}: {reason}")]
    InvalidMark {
        panel: usize,
        mark: usize,
        reason: String,
    },
    #[error("invalid scale: {0}")]
    InvalidScale(String),
    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

/// Affine map from a data interval onto a pixel interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearScale {
    domain: (f64, f64),
    range: (f64, f64),
}

impl LinearScale {
    pub fn new(domain: (f64, f64), range: (f64, f64)) -> Result<Self, RenderError> {
        if !(domain.0.is_finite() && domain.1.is_finite() && domain.0 < domain.1) {
            return Err(RenderError::InvalidScale(format!(
                "domain needs lo < hi, got [{}, {}]",
                domain.0, domain.1
            )));
        }
        if !(range.0.is_finite() && range.1.is_finite() && range.0 != range.1) {
            return Err(RenderError::InvalidScale(format!(
                "range endpoints must differ, got [{}, {}]",
                range.0, range.1
            )));
        }
        Ok(Self { domain, range })
    }

    pub fn map(&self, x: f64) -> f64 {
        self.range.0
            + (x - self.domain.0) * (self.range.1 - self.range.0) / (self.domain.1 - self.domain.0)
    }

    pub fn invert(&self, px: f64) -> f64 {
        self.domain.0
            + (px - self.range.0) * (self.domain.1 - self.domain.0) / (self.range.1 - self.range.0)
    }
}

/// Free-function form of [`LinearScale::map`].
pub fn scale_map(scale: &LinearScale, x: f64) -> f64 {
    scale.map(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dash {
    Solid,
    Dashed,
    Dotted,
}

impl Dash {
    pub fn pattern(self) -> Option<[f64; 2]> {
        match self {
            Dash::Solid => None,
            Dash::Dashed => Some(DASHED_PATTERN),
            Dash::Dotted => Some(DOTTED_PATTERN),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Style {
    pub role: ColorRole,
    pub dash: Dash,
    pub width: f64,
}

impl Style {
    pub const fn solid(role: ColorRole, width: f64) -> Self {
        Self {
            role,
            dash: Dash::Solid,
            width,
        }
    }

    pub const fn with_dash(self, dash: Dash) -> Self {
        Self { dash, ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    Start,
    Middle,
    End,
}

impl Anchor {
    fn as_str(self) -> &'static str {
        match self {
            Anchor::Start => "start",
            Anchor::Middle => "middle",
            Anchor::End => "end",
        }
    }
}

/// Drawable element in data coordinates. Text offsets are in pixels,
/// positive `dy` pointing down.
#[derive(Debug, Clone, PartialEq)]
pub enum Mark {
    Polyline {
        points: Vec<(f64, f64)>,
        style: Style,
    },
    Point {
        x: f64,
        y: f64,
        radius: f64,
        style: Style,
    },
    Text {
        x: f64,
        y: f64,
        text: String,
        offset: (f64, f64),
        anchor: Anchor,
        style: Style,
    },
    VLine {
        x: f64,
        style: Style,
    },
    HLine {
        y: f64,
        style: Style,
    },
}

impl Mark {
    pub fn style(&self) -> &Style {
        match self {
            Mark::Polyline { style, .. }
            | Mark::Point { style, .. }
            | Mark::Text { style, .. }
            | Mark::VLine { style, .. }
            | Mark::HLine { style, .. } => style,
        }
    }

    fn check(&self) -> Result<(), String> {
        let width = self.style().width;
        if !(width.is_finite() && width > 0.0) {
            return Err(format!("stroke width must be > 0, got {width}"));
        }
        match self {
            Mark::Polyline { points, .. } if points.len() < 2 => Err(format!(
                "polyline needs at least 2 vertices, got {}",
                points.len()
            )),
            Mark::Point { radius, .. } if !(radius.is_finite() && *radius > 0.0) => {
                Err(format!("point radius must be > 0, got {radius}"))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub space: PlotSpace,
    pub marks: Vec<Mark>,
    pub axis_labels: (String, String),
    pub title: String,
}

impl Panel {
    /// Panel with axis labels taken from the space's variables.
    pub fn new(space: PlotSpace, title: impl Into<String>) -> Self {
        let axis_labels = (space.x_var.label(), space.y_var.label());
        Self {
            space,
            marks: Vec::new(),
            axis_labels,
            title: title.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    Single,
    SideBySide,
    StackedSharedX,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    /// Written to the document's `<title>`.
    pub caption: String,
    pub panels: Vec<Panel>,
    pub layout: Layout,
    pub width: f64,
    pub height: f64,
}

impl Scene {
    pub fn new(caption: impl Into<String>, layout: Layout, panels: Vec<Panel>) -> Self {
        Self {
            caption: caption.into(),
            panels,
            layout,
            width: DEFAULT_WIDTH,
            height: DEFAULT_HEIGHT,
        }
    }

    pub fn roles(&self) -> std::collections::BTreeSet<ColorRole> {
        self.panels
            .iter()
            .flat_map(|p| p.marks.iter().map(|m| m.style().role))
            .collect()
    }
}

/// Pixel rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x: f64,
    pub y: f64,
    pub width: f64,
    pub height: f64,
}

impl Rect {
    pub fn right(&self) -> f64 {
        self.x + self.width
    }

    pub fn bottom(&self) -> f64 {
        self.y + self.height
    }

    pub fn contains(&self, px: f64, py: f64) -> bool {
        px >= self.x && px <= self.right() && py >= self.y && py <= self.bottom()
    }
}

/// Room left for one plot rectangle once margins are removed.
pub fn available_plot_size(layout: Layout, panels: usize, width: f64, height: f64) -> (f64, f64) {
    let n = panels.max(1) as f64;
    let (vw, vh) = match layout {
        Layout::Single => (width, height),
        Layout::SideBySide => (width / n, height),
        Layout::StackedSharedX => (width, height / n),
    };
    (
        vw - MARGIN_LEFT - MARGIN_RIGHT,
        vh - MARGIN_TOP - MARGIN_BOTTOM,
    )
}

/// Aspect ratio at which a space exactly fills a `width` × `height` plot rectangle.
pub fn filling_aspect(space_x: f64, space_y: f64, width: f64, height: f64) -> f64 {
    (space_y / height) / (space_x / width)
}

fn viewports(scene: &Scene) -> Vec<Rect> {
    let n = scene.panels.len();
    (0..n)
        .map(|i| match scene.layout {
            Layout::Single => Rect {
                x: 0.0,
                y: 0.0,
                width: scene.width,
                height: scene.height,
            },
            Layout::SideBySide => {
                let w = scene.width / n as f64;
                Rect {
                    x: w * i as f64,
                    y: 0.0,
                    width: w,
                    height: scene.height,
                }
            }
            Layout::StackedSharedX => {
                let h = scene.height / n as f64;
                Rect {
                    x: 0.0,
                    y: h * i as f64,
                    width: scene.width,
                    height: h,
                }
            }
        })
        .collect()
}

/// Width a plot must have, given its height, to honour the space's aspect.
fn width_for_height(space: &PlotSpace, height: f64) -> f64 {
    height * space.x_range.span() * space.aspect / space.y_range.span()
}

fn height_for_width(space: &PlotSpace, width: f64) -> f64 {
    width * space.y_range.span() / (space.x_range.span() * space.aspect)
}

/// Plot rectangles that honour each panel's aspect ratio, centred in the area
/// left by the margins. Stacked panels share one width so their x axes line up.
pub fn plot_rects(scene: &Scene) -> Vec<Rect> {
    let ports = viewports(scene);
    let (aw, ah) = available_plot_size(scene.layout, scene.panels.len(), scene.width, scene.height);
    let shared_width = (scene.layout == Layout::StackedSharedX).then(|| {
        scene
            .panels
            .iter()
            .map(|p| width_for_height(&p.space, ah))
            .fold(aw, f64::min)
    });
    scene
        .panels
        .iter()
        .zip(ports)
        .map(|(panel, port)| {
            let (pw, ph) = match shared_width {
                Some(w) => (w, height_for_width(&panel.space, w)),
                None => {
                    let w = width_for_height(&panel.space, ah);
                    if w <= aw {
                        (w, ah)
                    } else {
                        (aw, height_for_width(&panel.space, aw))
                    }
                }
            };
            Rect {
                x: port.x + MARGIN_LEFT + 0.5 * (aw - pw),
                y: port.y + MARGIN_TOP + 0.5 * (ah - ph),
                width: pw,
                height: ph,
            }
        })
        .collect()
}

fn check_scene(scene: &Scene) -> Result<(), RenderError> {
    if !(scene.width.is_finite()
        && scene.height.is_finite()
        && scene.width > 0.0
        && scene.height > 0.0)
    {
        return Err(RenderError::Layout(format!(
            "scene size must be positive, got {}x{}",
            scene.width, scene.height
        )));
    }
    let (aw, ah) = available_plot_size(scene.layout, scene.panels.len(), scene.width, scene.height);
    if !scene.panels.is_empty() && (aw <= 0.0 || ah <= 0.0) {
        return Err(RenderError::Layout(format!(
            "{}x{} px leaves no room for {} panel(s) after margins",
            scene.width,
            scene.height,
            scene.panels.len()
        )));
    }
    if scene.layout == Layout::Single && scene.panels.len() > 1 {
        return Err(RenderError::Layout(format!(
            "single layout holds one panel, got {}",
            scene.panels.len()
        )));
    }
    for (i, panel) in scene.panels.iter().enumerate() {
        panel
            .space
            .check()
            .map_err(|reason| RenderError::Layout(format!("panel {i}: {reason}")))?;
        for (j, mark) in panel.marks.iter().enumerate() {
            mark.check().map_err(|reason| RenderError::InvalidMark {
                panel: i,
                mark: j,
                reason,
            })?;
        }
    }
    if scene.layout == Layout::StackedSharedX {
        if let Some(first) = scene.panels.first() {
            for (i, panel) in scene.panels.iter().enumerate().skip(1) {
                if panel.space.x_var != first.space.x_var {
                    return Err(RenderError::Layout(format!(
                        "stacked panel {i} has x variable `{}`, panel 0 has `{}`",
                        panel.space.x_var.label(),
                        first.space.x_var.label()
                    )));
                }
                let (a, b) = (panel.space.x_range, first.space.x_range);
                if (a.lo - b.lo).abs() > RANGE_TOLERANCE || (a.hi - b.hi).abs() > RANGE_TOLERANCE {
                    return Err(RenderError::Layout(format!(
                        "stacked panel {i} has x range [{}, {}], panel 0 has [{}, {}]",
                        a.lo, a.hi, b.lo, b.hi
                    )));
                }
            }
        }
    }
    Ok(())
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn stroke_attrs(style: &Style) -> String {
    let mut s = format!(
        "stroke=\"{}\" stroke-width=\"{}\"",
        style.role.hex(),
        num(style.width)
    );
    if let Some([on, off]) = style.dash.pattern() {
        let _ = write!(s, " stroke-dasharray=\"{},{}\"", num(on), num(off));
    }
    s
}

/// Round tick positions covering `[lo, hi]`, about five per axis.
pub fn ticks(lo: f64, hi: f64) -> (Vec<f64>, usize) {
    let raw = (hi - lo) / 5.0;
    let magnitude = 10f64.powf(raw.log10().floor());
    let error = raw / magnitude;
    let step = magnitude
        * if error >= 50f64.sqrt() {
            10.0
        } else if error >= 10f64.sqrt() {
            5.0
        } else if error >= 2f64.sqrt() {
            2.0
        } else {
            1.0
        };
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    let first = (lo / step - 1e-9).ceil() as i64;
    let last = (hi / step + 1e-9).floor() as i64;
    ((first..=last).map(|k| k as f64 * step).collect(), decimals)
}

// Liang-Barsky clipping of a pixel-space segment to `rect`.
fn clip_segment(rect: &Rect, a: (f64, f64), b: (f64, f64)) -> Option<((f64, f64), (f64, f64))> {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let mut t0: f64 = 0.0;
    let mut t1: f64 = 1.0;
    let checks = [
        (-dx, a.0 - rect.x),
        (dx, rect.right() - a.0),
        (-dy, a.1 - rect.y),
        (dy, rect.bottom() - a.1),
    ];
    for (p, q) in checks {
        if p == 0.0 {
            if q < 0.0 {
                return None;
            }
        } else {
            let r = q / p;
            if p < 0.0 {
                t0 = t0.max(r);
            } else {
                t1 = t1.min(r);
            }
        }
    }
    if t0 > t1 {
        return None;
    }
    let at = |t: f64| {
        (
            (a.0 + t * dx).clamp(rect.x, rect.right()),
            (a.1 + t * dy).clamp(rect.y, rect.bottom()),
        )
    };
    Some((at(t0), at(t1)))
}

/// Splits a pixel polyline into the visible pieces inside `rect`.
fn clip_polyline(rect: &Rect, points: &[(f64, f64)]) -> Vec<Vec<(f64, f64)>> {
    let mut pieces = Vec::new();
    let mut current: Vec<(f64, f64)> = Vec::new();
    for pair in points.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let finite = a.0.is_finite() && a.1.is_finite() && b.0.is_finite() && b.1.is_finite();
        match finite.then(|| clip_segment(rect, a, b)).flatten() {
            Some((s, e)) => {
                if current.last() != Some(&s) {
                    if current.len() >= 2 {
                        pieces.push(std::mem::take(&mut current));
                    }
                    current.clear();
                    current.push(s);
                }
                current.push(e);
                if e != b {
                    pieces.push(std::mem::take(&mut current));
                }
            }
            None => {
                if current.len() >= 2 {
                    pieces.push(std::mem::take(&mut current));
                }
                current.clear();
            }
        }
    }
    if current.len() >= 2 {
        pieces.push(current);
    }
    pieces.retain(|p| p.len() >= 2);
    pieces
}

struct PanelFrame {
    rect: Rect,
    sx: LinearScale,
    sy: LinearScale,
}

impl PanelFrame {
    fn new(space: &PlotSpace, rect: Rect) -> Result<Self, RenderError> {
        Ok(Self {
            rect,
            sx: LinearScale::new((space.x_range.lo, space.x_range.hi), (rect.x, rect.right()))?,
            sy: LinearScale::new(
                (space.y_range.lo, space.y_range.hi),
                (rect.bottom(), rect.y),
            )?,
        })
    }

    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        (self.sx.map(x), self.sy.map(y))
    }
}

fn render_text(
    out: &mut String,
    x: f64,
    y: f64,
    anchor: Anchor,
    size: f64,
    fill: &str,
    text: &str,
) {
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" font-family=\"{FONT_FAMILY}\" font-size=\"{}\" text-anchor=\"{}\" fill=\"{fill}\">{}</text>",
        num(x),
        num(y),
        num(size),
        anchor.as_str(),
        escape(text)
    );
}

fn render_axes(out: &mut String, panel: &Panel, frame: &PanelFrame, show_x_labels: bool) {
    let r = frame.rect;
    let black = ColorRole::Baseline.hex();
    let _ = writeln!(
        out,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"{black}\" stroke-width=\"{}\"/>",
        num(r.x),
        num(r.y),
        num(r.width),
        num(r.height),
        num(1.0)
    );
    let space = &panel.space;
    let (xt, xd) = ticks(space.x_range.lo, space.x_range.hi);
    for v in xt {
        let px = frame.sx.map(v);
        let _ = writeln!(
            out,
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"{black}\" stroke-width=\"{3}\"/>",
            num(px),
            num(r.bottom()),
            num(r.bottom() + TICK_LENGTH),
            num(1.0)
        );
        if show_x_labels {
            render_text(
                out,
                px,
                r.bottom() + TICK_LENGTH + FONT_SIZE + 2.0,
                Anchor::Middle,
                FONT_SIZE,
                black,
                &format!("{v:.xd$}"),
            );
        }
    }
    let (yt, yd) = ticks(space.y_range.lo, space.y_range.hi);
    for v in yt {
        let py = frame.sy.map(v);
        let _ = writeln!(
            out,
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{black}\" stroke-width=\"{3}\"/>",
            num(r.x - TICK_LENGTH),
            num(py),
            num(r.x),
            num(1.0)
        );
        render_text(
            out,
            r.x - TICK_LENGTH - 3.0,
            py + 4.0,
            Anchor::End,
            FONT_SIZE,
            black,
            &format!("{v:.yd$}"),
        );
    }
    if show_x_labels {
        render_text(
            out,
            r.x + 0.5 * r.width,
            r.bottom() + TICK_LENGTH + 2.0 * FONT_SIZE + 8.0,
            Anchor::Middle,
            FONT_SIZE,
            black,
            &panel.axis_labels.0,
        );
    }
    let (lx, ly) = (r.x - MARGIN_LEFT + FONT_SIZE + 2.0, r.y + 0.5 * r.height);
    let _ = writeln!(
        out,
        "<text x=\"{0}\" y=\"{1}\" font-family=\"{FONT_FAMILY}\" font-size=\"{2}\" text-anchor=\"middle\" fill=\"{black}\" transform=\"rotate({3} {0} {1})\">{4}</text>",
        num(lx),
        num(ly),
        num(FONT_SIZE),
        num(-90.0),
        escape(&panel.axis_labels.1)
    );
    if !panel.title.is_empty() {
        render_text(
            out,
            r.x + 0.5 * r.width,
            r.y - 10.0,
            Anchor::Middle,
            TITLE_FONT_SIZE,
            black,
            &panel.title,
        );
    }
}

fn render_mark(out: &mut String, mark: &Mark, frame: &PanelFrame) {
    let r = frame.rect;
    match mark {
        Mark::Polyline { points, style } => {
            let pixels: Vec<(f64, f64)> = points.iter().map(|&(x, y)| frame.px(x, y)).collect();
            for piece in clip_polyline(&r, &pixels) {
                let coords: Vec<String> = piece
                    .iter()
                    .map(|&(x, y)| format!("{},{}", num(x), num(y)))
                    .collect();
                let _ = writeln!(
                    out,
                    "<polyline points=\"{}\" fill=\"none\" {} stroke-linejoin=\"round\"/>",
                    coords.join(" "),
                    stroke_attrs(style)
                );
            }
        }
        Mark::Point {
            x,
            y,
            radius,
            style,
        } => {
            let (cx, cy) = frame.px(*x, *y);
            if cx.is_finite() && cy.is_finite() && r.contains(cx, cy) {
                let _ = writeln!(
                    out,
                    "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>",
                    num(cx),
                    num(cy),
                    num(*radius),
                    style.role.hex()
                );
            }
        }
        Mark::Text {
            x,
            y,
            text,
            offset,
            anchor,
            style,
        } => {
            let (px, py) = frame.px(*x, *y);
            if px.is_finite() && py.is_finite() {
                let tx = (px + offset.0).clamp(r.x, r.right());
                let ty = (py + offset.1).clamp(r.y, r.bottom());
                render_text(out, tx, ty, *anchor, FONT_SIZE, style.role.hex(), text);
            }
        }
        Mark::VLine { x, style } => {
            let px = frame.sx.map(*x);
            if px.is_finite() && px >= r.x && px <= r.right() {
                let _ = writeln!(
                    out,
                    "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" {3}/>",
                    num(px),
                    num(r.y),
                    num(r.bottom()),
                    stroke_attrs(style)
                );
            }
        }
        Mark::HLine { y, style } => {
            let py = frame.sy.map(*y);
            if py.is_finite() && py >= r.y && py <= r.bottom() {
                let _ = writeln!(
                    out,
                    "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" {3}/>",
                    num(r.x),
                    num(py),
                    num(r.right()),
                    stroke_attrs(style)
                );
            }
        }
    }
}

/// Renders a scene to a standalone SVG document.
pub fn render_svg(scene: &Scene) -> Result<Vec<u8>, RenderError> {
    check_scene(scene)?;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" viewBox=\"{2} {2} {0} {1}\">",
        num(scene.width),
        num(scene.height),
        num(0.0)
    );
    if !scene.caption.is_empty() {
        let _ = writeln!(out, "<title>{}</title>", escape(&scene.caption));
    }
    let _ = writeln!(
        out,
        "<rect x=\"{0}\" y=\"{0}\" width=\"{1}\" height=\"{2}\" fill=\"{BACKGROUND}\"/>",
        num(0.0),
        num(scene.width),
        num(scene.height)
    );
    let rects = plot_rects(scene);
    let last = scene.panels.len().saturating_sub(1);
    for (i, (panel, rect)) in scene.panels.iter().zip(rects).enumerate() {
        let frame = PanelFrame::new(&panel.space, rect)?;
        let _ = writeln!(out, "<g id=\"panel-{}\">", i + 1);
        let show_x = scene.layout != Layout::StackedSharedX || i == last;
        render_axes(&mut out, panel, &frame, show_x);
        for mark in &panel.marks {
            render_mark(&mut out, mark, &frame);
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out.into_bytes())
}

/// File name for the `index`-th figure (zero-based): `figure_01.svg`, ...
pub fn figure_file_name(index: usize) -> String {
    format!("figure_{:02}.svg", index + 1)
}

/// Renders every scene, then writes them in order as `figure_NN.svg` under `dir`.
pub fn export_figures(scenes: &[Scene], dir: &Path) -> Result<Vec<PathBuf>, RenderError> {
    if scenes.is_empty() {
        return Ok(Vec::new());
    }
    if !dir.is_dir() {
        return Err(RenderError::Io {
            path: dir.to_path_buf(),
            source: io::Error::new(io::ErrorKind::NotFound, "not a writable directory"),
        });
    }
    let documents = scenes
        .iter()
        .map(render_svg)
        .collect::<Result<Vec<_>, _>>()?;
    documents
        .into_iter()
        .enumerate()
        .map(|(i, bytes)| {
            let path = dir.join(figure_file_name(i));
            fs::write(&path, bytes).map_err(|source| RenderError::Io {
                path: path.clone(),
                source,
            })?;
            Ok(path)
        })
        .collect()
}
