//! Standalone SVG scatter plots of degree distributions.
//!
//! The renderer emits plain SVG text with fixed-precision coordinates,
//! so the same spec always produces the same bytes; plots can be diffed
//! and golden-tested like any other output file. Log-log mode draws
//! decade ticks and requires strictly positive coordinates.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PlotError {
    #[error("plot has no points to draw")]
    EmptySeries,
    #[error("series {series:?} has non-positive point ({x}, {y}) under log-log scale")]
    NonpositiveValue { series: String, x: f64, y: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotScale {
    LogLog,
    Linear,
}

/// One scatter series: a label for the legend plus its points.
#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// A fitted curve drawn as a line over the scatter, e.g. a power law
/// with its parameters in the label.
#[derive(Debug, Clone)]
pub struct FitOverlay {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone)]
pub struct PlotSpec {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub scale: PlotScale,
    pub series: Vec<Series>,
    pub overlays: Vec<FitOverlay>,
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 560.0;
const MARGIN_LEFT: f64 = 72.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 44.0;
const MARGIN_BOTTOM: f64 = 56.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn to_unit(&self, v: f64) -> f64 {
        let (v, lo, hi) = if self.log {
            (v.log10(), self.lo.log10(), self.hi.log10())
        } else {
            (v, self.lo, self.hi)
        };
        if hi > lo {
            (v - lo) / (hi - lo)
        } else {
            0.5
        }
    }
}

fn decade_ticks(lo: f64, hi: f64) -> Vec<f64> {
    let first = lo.log10().floor() as i32;
    let last = hi.log10().ceil() as i32;
    (first..=last).map(|e| 10f64.powi(e)).collect()
}

fn linear_ticks(lo: f64, hi: f64) -> Vec<f64> {
    (0..=4).map(|i| lo + (hi - lo) * i as f64 / 4.0).collect()
}

fn tick_label(v: f64, log: bool) -> String {
    if log {
        format!("1e{}", v.log10().round() as i32)
    } else {
        format!("{v:.3}")
    }
}

fn marker(style: usize, x: f64, y: f64, color: &str) -> String {
    match style % 4 {
        0 => format!(r#"<circle cx="{x:.2}" cy="{y:.2}" r="3.5" fill="{color}"/>"#),
        1 => format!(
            r#"<rect x="{:.2}" y="{:.2}" width="6" height="6" fill="{color}"/>"#,
            x - 3.0,
            y - 3.0
        ),
        2 => format!(
            r#"<path d="M {:.2} {:.2} L {:.2} {:.2} L {:.2} {:.2} Z" fill="{color}"/>"#,
            x,
            y - 4.0,
            x - 4.0,
            y + 3.5,
            x + 4.0,
            y + 3.5
        ),
        _ => format!(
            r#"<path d="M {:.2} {:.2} L {:.2} {:.2} L {:.2} {:.2} L {:.2} {:.2} Z" fill="{color}"/>"#,
            x,
            y - 4.5,
            x + 4.5,
            y,
            x,
            y + 4.5,
            x - 4.5,
            y
        ),
    }
}

/// Renders the plot to SVG text.
pub fn render_svg(spec: &PlotSpec) -> Result<String, PlotError> {
    let total_points: usize = spec.series.iter().map(|s| s.points.len()).sum();
    if spec.series.is_empty() || total_points == 0 {
        return Err(PlotError::EmptySeries);
    }
    let log = spec.scale == PlotScale::LogLog;
    if log {
        for s in spec.series.iter() {
            if let Some(&(x, y)) = s.points.iter().find(|&&(x, y)| x <= 0.0 || y <= 0.0) {
                return Err(PlotError::NonpositiveValue {
                    series: s.label.clone(),
                    x,
                    y,
                });
            }
        }
    }

    let all_points = spec
        .series
        .iter()
        .map(|s| &s.points)
        .chain(spec.overlays.iter().map(|o| &o.points))
        .flatten()
        .filter(|&&(x, y)| !log || (x > 0.0 && y > 0.0));
    let (mut x_lo, mut x_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y_lo, mut y_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all_points {
        x_lo = x_lo.min(x);
        x_hi = x_hi.max(x);
        y_lo = y_lo.min(y);
        y_hi = y_hi.max(y);
    }
    if log {
        // widen to full decades so tick marks frame the data
        x_lo = 10f64.powf(x_lo.log10().floor());
        x_hi = 10f64.powf(x_hi.log10().ceil());
        y_lo = 10f64.powf(y_lo.log10().floor());
        y_hi = 10f64.powf(y_hi.log10().ceil());
        if x_lo == x_hi {
            x_hi *= 10.0;
        }
        if y_lo == y_hi {
            y_hi *= 10.0;
        }
    } else {
        if x_lo == x_hi {
            x_hi = x_lo + 1.0;
        }
        if y_lo == y_hi {
            y_hi = y_lo + 1.0;
        }
    }
    let x_axis = Axis {
        lo: x_lo,
        hi: x_hi,
        log,
    };
    let y_axis = Axis {
        lo: y_lo,
        hi: y_hi,
        log,
    };
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let px = |x: f64| MARGIN_LEFT + x_axis.to_unit(x) * plot_w;
    let py = |y: f64| MARGIN_TOP + (1.0 - y_axis.to_unit(y)) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str(&format!(
        "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">{}</text>\n",
        MARGIN_LEFT + plot_w / 2.0,
        xml_escape(&spec.title)
    ));

    // frame
    svg.push_str(&format!(
        "<rect x=\"{MARGIN_LEFT:.2}\" y=\"{MARGIN_TOP:.2}\" width=\"{plot_w:.2}\" height=\"{plot_h:.2}\" fill=\"none\" stroke=\"black\"/>\n"
    ));

    // ticks
    let x_ticks = if log {
        decade_ticks(x_lo, x_hi)
    } else {
        linear_ticks(x_lo, x_hi)
    };
    let y_ticks = if log {
        decade_ticks(y_lo, y_hi)
    } else {
        linear_ticks(y_lo, y_hi)
    };
    for t in &x_ticks {
        let x = px(*t);
        if !(MARGIN_LEFT - 0.5..=WIDTH - MARGIN_RIGHT + 0.5).contains(&x) {
            continue;
        }
        let base = MARGIN_TOP + plot_h;
        svg.push_str(&format!(
            "<line x1=\"{x:.2}\" y1=\"{base:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
            base + 6.0
        ));
        svg.push_str(&format!(
            "<line x1=\"{x:.2}\" y1=\"{MARGIN_TOP:.2}\" x2=\"{x:.2}\" y2=\"{base:.2}\" stroke=\"#dddddd\"/>\n"
        ));
        svg.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
            base + 20.0,
            tick_label(*t, log)
        ));
    }
    for t in &y_ticks {
        let y = py(*t);
        if !(MARGIN_TOP - 0.5..=HEIGHT - MARGIN_BOTTOM + 0.5).contains(&y) {
            continue;
        }
        svg.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{MARGIN_LEFT:.2}\" y2=\"{y:.2}\" stroke=\"black\"/>\n",
            MARGIN_LEFT - 6.0
        ));
        svg.push_str(&format!(
            "<line x1=\"{MARGIN_LEFT:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#dddddd\"/>\n",
            MARGIN_LEFT + plot_w
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">{}</text>\n",
            MARGIN_LEFT - 10.0,
            y + 4.0,
            tick_label(*t, log)
        ));
    }

    // axis labels
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 12.0,
        xml_escape(&spec.x_label)
    ));
    svg.push_str(&format!(
        "<text x=\"18\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.2})\">{}</text>\n",
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0,
        xml_escape(&spec.y_label)
    ));

    // fit overlays as dashed lines underneath the markers
    for (i, overlay) in spec.overlays.iter().enumerate() {
        let color = PALETTE[(spec.series.len() + i) % PALETTE.len()];
        let pts: Vec<String> = overlay
            .points
            .iter()
            .filter(|&&(x, y)| !log || (x > 0.0 && y > 0.0))
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        if pts.len() >= 2 {
            svg.push_str(&format!(
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" stroke-dasharray=\"6,3\"/>\n",
                pts.join(" ")
            ));
        }
    }

    // scatter markers
    for (i, series) in spec.series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        for &(x, y) in &series.points {
            svg.push_str(&marker(i, px(x), py(y), color));
            svg.push('\n');
        }
    }

    // legend
    let mut legend_y = MARGIN_TOP + 16.0;
    let legend_x = MARGIN_LEFT + plot_w - 220.0;
    for (i, label) in spec
        .series
        .iter()
        .map(|s| s.label.as_str())
        .chain(spec.overlays.iter().map(|o| o.label.as_str()))
        .enumerate()
    {
        let color = PALETTE[i % PALETTE.len()];
        if i < spec.series.len() {
            svg.push_str(&marker(i, legend_x, legend_y - 4.0, color));
            svg.push('\n');
        } else {
            svg.push_str(&format!(
                "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{color}\" stroke-width=\"1.5\" stroke-dasharray=\"6,3\"/>\n",
                legend_x - 6.0,
                legend_y - 4.0,
                legend_x + 6.0,
                legend_y - 4.0
            ));
        }
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
            legend_x + 12.0,
            legend_y,
            xml_escape(label)
        ));
        legend_y += 18.0;
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}
