//! Minimal deterministic SVG line charts.
//!
//! Hand-emitted markup (polylines, axes, ticks, legend) so the binary stays
//! free of plotting dependencies and identical invocations produce
//! byte-identical files. Non-finite points split a series into separate
//! polyline segments, which is how row-level failure markers in sweep data
//! show up as gaps instead of poisoning a whole curve.

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 540.0;
const MARGIN_LEFT: f64 = 62.0;
const MARGIN_RIGHT: f64 = 16.0;
const MARGIN_TOP: f64 = 36.0;
const MARGIN_BOTTOM: f64 = 48.0;

/// One polyline with a stroke color and an optional legend label.
#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub color: String,
    pub points: Vec<(f64, f64)>,
    pub dashed: bool,
}

impl Series {
    pub fn line(label: &str, color: &str, points: Vec<(f64, f64)>) -> Self {
        Series {
            label: label.to_string(),
            color: color.to_string(),
            points,
            dashed: false,
        }
    }

    pub fn dashed(label: &str, color: &str, points: Vec<(f64, f64)>) -> Self {
        Series {
            dashed: true,
            ..Series::line(label, color, points)
        }
    }
}

#[derive(Debug, Clone)]
pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
    /// Force equal data units per pixel on both axes (profile curves should
    /// not be anisotropically stretched).
    pub equal_aspect: bool,
}

impl Chart {
    pub fn new(title: &str, x_label: &str, y_label: &str) -> Self {
        Chart {
            title: title.to_string(),
            x_label: x_label.to_string(),
            y_label: y_label.to_string(),
            series: Vec::new(),
            equal_aspect: false,
        }
    }

    pub fn render(&self) -> String {
        let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
        let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;

        let ((x0, x1), (y0, y1)) = self.data_ranges(plot_w, plot_h);
        let sx = plot_w / (x1 - x0);
        let sy = plot_h / (y1 - y0);
        let px = |x: f64| MARGIN_LEFT + (x - x0) * sx;
        let py = |y: f64| HEIGHT - MARGIN_BOTTOM - (y - y0) * sy;

        let mut out = String::with_capacity(4096);
        out.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
        ));
        out.push_str(&format!(
            "<rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"#ffffff\"/>\n"
        ));

        // Grid and tick labels.
        let x_ticks = ticks(x0, x1);
        let y_ticks = ticks(y0, y1);
        for &(t, ref label) in &x_ticks {
            let x = quant(px(t));
            out.push_str(&format!(
                "<line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n",
                quant(MARGIN_TOP),
                quant(HEIGHT - MARGIN_BOTTOM)
            ));
            out.push_str(&format!(
                "<text x=\"{x}\" y=\"{}\" font-family=\"Helvetica, Arial, sans-serif\" font-size=\"11\" fill=\"#444444\" text-anchor=\"middle\">{}</text>\n",
                quant(HEIGHT - MARGIN_BOTTOM + 16.0),
                escape(label)
            ));
        }
        for &(t, ref label) in &y_ticks {
            let y = quant(py(t));
            out.push_str(&format!(
                "<line x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n",
                quant(MARGIN_LEFT),
                quant(WIDTH - MARGIN_RIGHT)
            ));
            out.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" font-family=\"Helvetica, Arial, sans-serif\" font-size=\"11\" fill=\"#444444\" text-anchor=\"end\">{}</text>\n",
                quant(MARGIN_LEFT - 6.0),
                quant(py(t) + 4.0),
                escape(label)
            ));
        }

        // Axes frame.
        out.push_str(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n",
            quant(MARGIN_LEFT),
            quant(MARGIN_TOP),
            quant(plot_w),
            quant(plot_h)
        ));

        // Series polylines, split at non-finite points.
        for s in &self.series {
            let dash = if s.dashed {
                " stroke-dasharray=\"6 4\""
            } else {
                ""
            };
            let mut segment: Vec<String> = Vec::new();
            let flush = |seg: &mut Vec<String>, out: &mut String| {
                if seg.len() >= 2 {
                    out.push_str(&format!(
                        "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"{} points=\"{}\"/>\n",
                        s.color,
                        dash,
                        seg.join(" ")
                    ));
                }
                seg.clear();
            };
            for &(x, y) in &s.points {
                if x.is_finite() && y.is_finite() {
                    segment.push(format!("{},{}", quant(px(x)), quant(py(y))));
                } else {
                    flush(&mut segment, &mut out);
                }
            }
            flush(&mut segment, &mut out);
        }

        // Titles.
        out.push_str(&format!(
            "<text x=\"{}\" y=\"22\" font-family=\"Helvetica, Arial, sans-serif\" font-size=\"14\" fill=\"#111111\" text-anchor=\"middle\">{}</text>\n",
            quant(WIDTH / 2.0),
            escape(&self.title)
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"Helvetica, Arial, sans-serif\" font-size=\"12\" fill=\"#111111\" text-anchor=\"middle\">{}</text>\n",
            quant(MARGIN_LEFT + plot_w / 2.0),
            quant(HEIGHT - 12.0),
            escape(&self.x_label)
        ));
        out.push_str(&format!(
            "<text x=\"16\" y=\"{}\" font-family=\"Helvetica, Arial, sans-serif\" font-size=\"12\" fill=\"#111111\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">{}</text>\n",
            quant(MARGIN_TOP + plot_h / 2.0),
            quant(MARGIN_TOP + plot_h / 2.0),
            escape(&self.y_label)
        ));

        // Legend (only labeled series).
        let labeled: Vec<&Series> = self.series.iter().filter(|s| !s.label.is_empty()).collect();
        for (i, s) in labeled.iter().enumerate() {
            let y = MARGIN_TOP + 14.0 + 16.0 * i as f64;
            let x = WIDTH - MARGIN_RIGHT - 150.0;
            let dash = if s.dashed {
                " stroke-dasharray=\"6 4\""
            } else {
                ""
            };
            out.push_str(&format!(
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"1.5\"{}/>\n",
                quant(x),
                quant(y - 4.0),
                quant(x + 22.0),
                quant(y - 4.0),
                s.color,
                dash
            ));
            out.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" font-family=\"Helvetica, Arial, sans-serif\" font-size=\"11\" fill=\"#111111\">{}</text>\n",
                quant(x + 28.0),
                quant(y),
                escape(&s.label)
            ));
        }

        out.push_str("</svg>\n");
        out
    }

    /// Padded data bounding box; degenerate or empty data falls back to the
    /// unit square so an empty chart still renders.
    fn data_ranges(&self, plot_w: f64, plot_h: f64) -> ((f64, f64), (f64, f64)) {
        let mut xs = (f64::INFINITY, f64::NEG_INFINITY);
        let mut ys = (f64::INFINITY, f64::NEG_INFINITY);
        for s in &self.series {
            for &(x, y) in &s.points {
                if x.is_finite() && y.is_finite() {
                    xs = (xs.0.min(x), xs.1.max(x));
                    ys = (ys.0.min(y), ys.1.max(y));
                }
            }
        }
        let fix = |(lo, hi): (f64, f64)| -> (f64, f64) {
            if lo > hi {
                (0.0, 1.0)
            } else if lo == hi {
                (lo - 0.5, hi + 0.5)
            } else {
                let pad = 0.04 * (hi - lo);
                (lo - pad, hi + pad)
            }
        };
        let (mut x_range, mut y_range) = (fix(xs), fix(ys));
        if self.equal_aspect {
            // Grow the range that is too small so both axes share one scale.
            let unit_x = (x_range.1 - x_range.0) / plot_w;
            let unit_y = (y_range.1 - y_range.0) / plot_h;
            let unit = unit_x.max(unit_y);
            let grow = |r: (f64, f64), extent: f64| {
                let mid = 0.5 * (r.0 + r.1);
                (mid - 0.5 * extent, mid + 0.5 * extent)
            };
            x_range = grow(x_range, unit * plot_w);
            y_range = grow(y_range, unit * plot_h);
        }
        (x_range, y_range)
    }
}

/// Pixel coordinates quantized to 1/100 so the markup stays compact while
/// `{}` still prints the shortest decimal that round-trips.
fn quant(v: f64) -> f64 {
    (v * 100.0).round() / 100.0
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Round tick positions with short labels: step 1, 2, 2.5 or 5 times a power
/// of ten, aiming for about five ticks.
fn ticks(lo: f64, hi: f64) -> Vec<(f64, String)> {
    let span = hi - lo;
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let (mult, extra_digit) = if norm <= 1.0 {
        (1.0, false)
    } else if norm <= 2.0 {
        (2.0, false)
    } else if norm <= 2.5 {
        (2.5, true)
    } else if norm <= 5.0 {
        (5.0, false)
    } else {
        (10.0, false)
    };
    let step = mult * mag;
    let decimals = {
        let base = -mag.log10().round() as i32 + if extra_digit { 1 } else { 0 };
        base.max(0).min(12) as usize
    };
    let mut out = Vec::new();
    let mut i = (lo / step).ceil() as i64;
    while (i as f64) * step <= hi + 1e-12 * span {
        let t = i as f64 * step;
        let mut label = format!("{t:.decimals$}");
        if label.contains('.') {
            label = label.trim_end_matches('0').trim_end_matches('.').to_string();
        }
        if label == "-0" {
            label = "0".to_string();
        }
        out.push((t, label));
        i += 1;
    }
    out
}
