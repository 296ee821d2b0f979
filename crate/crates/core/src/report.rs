//! Table and chart rendering. Nothing here computes: values arrive final and
//! are only formatted.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    /// Formatted in scientific notation with three significant digits.
    Num(f64),
    /// Decimal calendar year, two decimals.
    Year(f64),
    Count(usize),
    Missing,
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Num(v) => format!("{v:.2e}"),
            Cell::Year(y) => format!("{y:.2}"),
            Cell::Count(n) => n.to_string(),
            Cell::Missing => "NA".into(),
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Self {
            name: name.to_string(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        self.rows.push(row);
    }

    fn check(&self) -> Result<()> {
        if self.rows.is_empty() {
            return Err(Error::EmptyInput("table rows"));
        }
        if let Some(r) = self.rows.iter().find(|r| r.len() != self.header.len()) {
            return Err(Error::InvalidArgument(format!(
                "{}: row has {} cells, header has {}",
                self.name,
                r.len(),
                self.header.len()
            )));
        }
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        self.check()?;
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let io = |e: csv::Error| Error::InvalidArgument(e.to_string());
        w.write_record(&self.header).map_err(io)?;
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::render)).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_markdown(&self) -> Result<String> {
        self.check()?;
        let line = |cells: Vec<String>| format!("| {} |\n", cells.join(" | "));
        let mut s = line(self.header.clone());
        s += &line(self.header.iter().map(|_| "---".to_string()).collect());
        for r in &self.rows {
            s += &line(r.iter().map(|c| c.render().replace('|', "\\|")).collect());
        }
        Ok(s)
    }
}

/// Writes `<dir>/<name>.csv` and `<dir>/<name>.md`.
pub fn emit_table(dir: &Path, table: &Table) -> Result<[PathBuf; 2]> {
    let csv = table.to_csv()?;
    let md = table.to_markdown()?;
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let paths = [dir.join(format!("{}.csv", table.name)), dir.join(format!("{}.md", table.name))];
    std::fs::write(&paths[0], csv).map_err(|e| Error::io(&paths[0], e))?;
    std::fs::write(&paths[1], md).map_err(|e| Error::io(&paths[1], e))?;
    Ok(paths)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

/// A median line with a shaded 5-95% band.
#[derive(Debug, Clone, PartialEq)]
pub struct Band {
    pub label: String,
    /// `(x, [q05, q50, q95])`.
    pub points: Vec<(f64, [f64; 3])>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub scale: Scale,
    pub bands: Vec<Band>,
    pub lines: Vec<Series>,
    /// Drawn as dots.
    pub points: Vec<Series>,
}

impl Chart {
    pub fn new(title: &str, x_label: &str, y_label: &str, scale: Scale) -> Self {
        Self {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            scale,
            bands: vec![],
            lines: vec![],
            points: vec![],
        }
    }
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];
const W: f64 = 720.0;
const H: f64 = 440.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 210.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 56.0;

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn t(&self, v: f64) -> f64 {
        let v = if self.log { v.log10() } else { v };
        if self.hi > self.lo {
            (v - self.lo) / (self.hi - self.lo)
        } else {
            0.5
        }
    }

    fn ticks(&self) -> Vec<(f64, String)> {
        if self.log {
            let (a, b) = (self.lo.floor() as i32, self.hi.ceil() as i32);
            let step = ((b - a) / 8).max(1);
            let mantissas: &[f64] = if b - a <= 3 { &[1.0, 2.0, 5.0] } else { &[1.0] };
            (a..=b)
                .step_by(step as usize)
                .flat_map(|e| mantissas.iter().map(move |m| (e, *m)))
                .filter(|(e, m)| {
                    let v = f64::from(*e) + m.log10();
                    v >= self.lo && v <= self.hi
                })
                .map(|(e, m)| (m * 10f64.powi(e), format!("{m}e{e}")))
                .collect()
        } else {
            let span = self.hi - self.lo;
            if span <= 0.0 {
                return vec![(self.lo, fmt_tick(self.lo))];
            }
            let raw = span / 6.0;
            let mag = 10f64.powf(raw.log10().floor());
            let step = [1.0, 2.0, 5.0, 10.0]
                .iter()
                .map(|m| m * mag)
                .find(|s| *s >= raw)
                .unwrap_or(10.0 * mag);
            let mut v = (self.lo / step).ceil() * step;
            let mut out = Vec::new();
            while v <= self.hi + 1e-9 * span {
                out.push((v, fmt_tick(v)));
                v += step;
            }
            out
        }
    }
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.abs() >= 1e4 || v.abs() < 1e-2 {
        format!("{v:.1e}")
    } else if v.fract() == 0.0 {
        format!("{v:.0}")
    } else {
        format!("{v:.2}")
    }
}

/// Renders a standalone SVG document.
pub fn render_svg(chart: &Chart) -> Result<String> {
    if chart.bands.is_empty() && chart.lines.is_empty() && chart.points.is_empty() {
        return Err(Error::Chart(format!("{}: no series", chart.title)));
    }
    if let Some(b) = chart.bands.iter().find(|b| b.points.is_empty()) {
        return Err(Error::Chart(format!("{}: band {} is empty", chart.title, b.label)));
    }
    if let Some(first) = chart.bands.first() {
        let xs: Vec<f64> = first.points.iter().map(|p| p.0).collect();
        if let Some(b) = chart.bands.iter().find(|b| b.points.iter().map(|p| p.0).ne(xs.iter().copied())) {
            return Err(Error::Chart(format!("band {} does not share the year axis", b.label)));
        }
    }
    let log = chart.scale == Scale::Log;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for b in &chart.bands {
        for (x, q) in &b.points {
            xs.push(*x);
            ys.extend_from_slice(q);
        }
    }
    for s in chart.lines.iter().chain(&chart.points) {
        for (x, y) in &s.points {
            xs.push(*x);
            ys.push(*y);
        }
    }
    let ys: Vec<f64> = ys
        .into_iter()
        .filter(|y| y.is_finite() && (!log || *y > 0.0))
        .map(|y| if log { y.log10() } else { y })
        .collect();
    if ys.is_empty() || xs.is_empty() {
        return Err(Error::Chart(format!("{}: nothing to plot", chart.title)));
    }
    let fold = |v: &[f64]| {
        v.iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |a, &x| (a.0.min(x), a.1.max(x)))
    };
    let (x0, x1) = fold(&xs);
    let (mut y0, mut y1) = fold(&ys);
    if !log && y0 > 0.0 {
        y0 = 0.0;
    }
    if y1 == y0 {
        y1 = y0 + 1.0;
        y0 -= 1.0;
    }
    let xa = Axis { lo: x0, hi: x1, log: false };
    let ya = Axis { lo: y0, hi: y1, log };
    let (pw, ph) = (W - LEFT - RIGHT, H - TOP - BOTTOM);
    let px = |x: f64| LEFT + xa.t(x) * pw;
    let py = |y: f64| TOP + (1.0 - ya.t(y)) * ph;
    let ok = |y: f64| y.is_finite() && (!log || y > 0.0);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        LEFT + pw / 2.0,
        esc(&chart.title)
    );
    let _ = writeln!(s, r#"<g class="axes" stroke="black" fill="none">"#);
    let _ = writeln!(s, r#"<line x1="{LEFT}" y1="{:.1}" x2="{:.1}" y2="{:.1}"/>"#, TOP + ph, LEFT + pw, TOP + ph);
    let _ = writeln!(s, r#"<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{:.1}"/>"#, TOP + ph);
    let _ = writeln!(s, "</g>");
    for (v, label) in xa.ticks() {
        let x = px(v);
        let _ = writeln!(
            s,
            r#"<line x1="{x:.1}" y1="{:.1}" x2="{x:.1}" y2="{:.1}" stroke="black"/><text x="{x:.1}" y="{:.1}" text-anchor="middle">{label}</text>"#,
            TOP + ph,
            TOP + ph + 5.0,
            TOP + ph + 18.0
        );
    }
    for (v, label) in ya.ticks() {
        let y = py(v);
        let _ = writeln!(
            s,
            r##"<line x1="{:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="#ddd"/><text x="{:.1}" y="{:.1}" text-anchor="end">{label}</text>"##,
            LEFT,
            LEFT + pw,
            LEFT - 6.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        H - 14.0,
        esc(&chart.x_label)
    );
    let _ = writeln!(
        s,
        r#"<text transform="translate(18 {:.1}) rotate(-90)" text-anchor="middle">{}</text>"#,
        TOP + ph / 2.0,
        esc(&chart.y_label)
    );

    let path = |pts: &mut dyn Iterator<Item = (f64, f64)>| {
        let mut d = String::new();
        for (k, (x, y)) in pts.enumerate() {
            let _ = write!(d, "{}{:.1},{:.1}", if k == 0 { "M" } else { " L" }, px(x), py(y));
        }
        d
    };
    let mut legend = Vec::new();
    let mut colour = 0usize;
    for b in &chart.bands {
        let c = PALETTE[colour % PALETTE.len()];
        colour += 1;
        let pts: Vec<_> = b.points.iter().filter(|(_, q)| q.iter().all(|v| ok(*v))).collect();
        if !pts.is_empty() {
            let mut area = path(&mut pts.iter().map(|(x, q)| (*x, q[2])));
            for (x, q) in pts.iter().rev() {
                let _ = write!(area, " L{:.1},{:.1}", px(*x), py(q[0]));
            }
            let _ = writeln!(
                s,
                r#"<path class="band" d="{area} Z" fill="{c}" fill-opacity="0.2" stroke="none"/>"#
            );
            let _ = writeln!(
                s,
                r#"<path class="median" d="{}" fill="none" stroke="{c}" stroke-width="2"/>"#,
                path(&mut pts.iter().map(|(x, q)| (*x, q[1])))
            );
        }
        legend.push((c, b.label.clone(), true));
    }
    for l in &chart.lines {
        let c = PALETTE[colour % PALETTE.len()];
        colour += 1;
        let d = path(&mut l.points.iter().copied().filter(|p| ok(p.1)));
        let _ = writeln!(s, r#"<path class="line" d="{d}" fill="none" stroke="{c}" stroke-width="1.5"/>"#);
        legend.push((c, l.label.clone(), false));
    }
    for p in &chart.points {
        let c = PALETTE[colour % PALETTE.len()];
        colour += 1;
        let _ = writeln!(s, r#"<g class="points" fill="{c}">"#);
        for (x, y) in p.points.iter().filter(|p| ok(p.1)) {
            let _ = writeln!(s, r#"<circle cx="{:.1}" cy="{:.1}" r="1.8"/>"#, px(*x), py(*y));
        }
        let _ = writeln!(s, "</g>");
        legend.push((c, p.label.clone(), false));
    }
    let _ = writeln!(s, r#"<g class="legend">"#);
    for (k, (c, label, band)) in legend.iter().enumerate() {
        let (x, y) = (W - RIGHT + 14.0, TOP + 8.0 + 18.0 * k as f64);
        if *band {
            let _ = writeln!(
                s,
                r#"<rect x="{x:.1}" y="{:.1}" width="18" height="10" fill="{c}" fill-opacity="0.2"/>"#,
                y - 5.0
            );
        }
        let _ = writeln!(
            s,
            r#"<line x1="{x:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="{c}" stroke-width="2"/><text x="{:.1}" y="{:.1}">{}</text>"#,
            x + 18.0,
            x + 24.0,
            y + 4.0,
            esc(label)
        );
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    Ok(s)
}

/// Writes `<dir>/<name>.svg`.
pub fn emit_chart(dir: &Path, name: &str, chart: &Chart) -> Result<PathBuf> {
    let svg = render_svg(chart)?;
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let path = dir.join(format!("{name}.svg"));
    std::fs::write(&path, svg).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}
