use std::fmt::Write;

use knotcalc::exactalg::s_to_turn_fraction;
use knotcalc::seifert::SignatureStepFunction;

/// The signature function in the turn parameter `t`, with `ω = e^{2πit}`.
pub struct Steps {
    /// `(t_lo, t_hi, value)` on open intervals between jumps.
    pub pieces: Vec<(f64, f64, i64)>,
    /// `(t, averaged value)` at each jump.
    pub jumps: Vec<(f64, i64)>,
    pub at_half: i64,
}

pub fn steps(sf: &SignatureStepFunction) -> Steps {
    let ts: Vec<f64> = sf
        .jump_points_approx()
        .into_iter()
        .map(s_to_turn_fraction)
        .collect();
    let mut bounds = vec![0.0];
    bounds.extend(&ts);
    bounds.push(0.5);
    let pieces = sf
        .segments
        .iter()
        .enumerate()
        .map(|(i, seg)| (bounds[i], bounds[i + 1], seg.value))
        .collect();
    let jumps = ts
        .iter()
        .zip(&sf.jumps)
        .map(|(t, j)| (*t, j.average))
        .collect();
    Steps {
        pieces,
        jumps,
        at_half: sf.value_at_minus_one,
    }
}

pub fn csv(steps: &Steps) -> String {
    let mut out = String::from("t_lo,t_hi,value\n");
    for (lo, hi, v) in &steps.pieces {
        writeln!(out, "{lo:.12},{hi:.12},{v}").unwrap();
    }
    writeln!(out, "{:.12},{:.12},{}", 0.5, 0.5, steps.at_half).unwrap();
    out
}

const W: f64 = 640.0;
const H: f64 = 360.0;
const MARGIN: f64 = 48.0;

pub fn svg(title: &str, steps: &Steps) -> String {
    let peak = steps
        .pieces
        .iter()
        .map(|p| p.2.abs())
        .chain([steps.at_half.abs()])
        .max()
        .unwrap_or(0)
        + 1;
    let x = |t: f64| MARGIN + t / 0.5 * (W - 2.0 * MARGIN);
    let y = |v: i64| H / 2.0 - v as f64 / peak as f64 * (H / 2.0 - MARGIN);

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<text x="{}" y="20" text-anchor="middle">{}</text>"#,
        W / 2.0,
        escape(title)
    )
    .unwrap();
    writeln!(
        s,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        x(0.0),
        y(0),
        x(0.5),
        y(0)
    )
    .unwrap();
    writeln!(
        s,
        r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="black"/>"#,
        x(0.0),
        y(peak),
        y(-peak)
    )
    .unwrap();
    for k in 0..=5 {
        let t = k as f64 / 10.0;
        writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">{t:.1}</text>"#,
            x(t),
            H - MARGIN / 2.0
        )
        .unwrap();
    }
    for v in (-peak..=peak).filter(|v| v % 2 == 0) {
        writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="end">{v}</text>"#,
            x(0.0) - 6.0,
            y(v) + 4.0
        )
        .unwrap();
    }
    for (lo, hi, v) in &steps.pieces {
        writeln!(
            s,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="steelblue" stroke-width="2.5"/>"#,
            x(*lo),
            y(*v),
            x(*hi),
            y(*v)
        )
        .unwrap();
    }
    for (i, (t, avg)) in steps.jumps.iter().enumerate() {
        for v in [steps.pieces[i].2, steps.pieces[i + 1].2] {
            marker(&mut s, x(*t), y(v), false);
        }
        marker(&mut s, x(*t), y(*avg), true);
    }
    marker(&mut s, x(0.0), y(0), true);
    let last = steps.pieces.last().map_or(0, |p| p.2);
    if last != steps.at_half {
        marker(&mut s, x(0.5), y(last), false);
    }
    marker(&mut s, x(0.5), y(steps.at_half), true);
    s.push_str("</svg>\n");
    s
}

fn marker(s: &mut String, cx: f64, cy: f64, closed: bool) {
    let fill = if closed { "steelblue" } else { "white" };
    writeln!(
        s,
        r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="4" fill="{fill}" stroke="steelblue" stroke-width="1.5"/>"#
    )
    .unwrap();
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
