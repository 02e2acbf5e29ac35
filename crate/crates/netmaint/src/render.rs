//! Human-readable views of a schedule: a text Gantt chart and an SVG timeline.
//!
//! Both show one row per edge plus a connectivity band. Columns and pixel
//! positions are approximations for display; the exact values live in the
//! JSON report.

use std::fmt::Write;

use netmaint_core::eval::ConnectivityProfile;
use netmaint_core::{Instance, Rational, Schedule};

/// Default number of character cells spanning `[0, T]`.
pub const DEFAULT_WIDTH: usize = 48;

/// Cells per unit when the horizon is a small integer, else `width` cells.
fn columns(horizon: &Rational, width: usize) -> usize {
    match horizon.to_i64() {
        Some(t) if t > 0 && (t as usize) <= width => (width / t as usize) * t as usize,
        _ => width,
    }
}

/// Midpoint of cell `c` out of `cols` over `[0, T]`.
fn cell_midpoint(horizon: &Rational, c: usize, cols: usize) -> Rational {
    let num = Rational::from_integer(2 * c as i64 + 1);
    let den = Rational::from_integer(2 * cols as i64);
    &(horizon * &num) / &den
}

fn maintained(schedule: &Schedule, edge: &str, t: &Rational) -> bool {
    schedule
        .get(edge)
        .is_some_and(|set| set.intervals().iter().any(|i| &i.start <= t && t < &i.end))
}

/// Plain-text Gantt chart: `#` marks maintenance, `.` the job window,
/// blanks the rest; the last row marks connected time with `=`.
pub fn text_gantt(instance: &Instance, schedule: &Schedule, profile: &ConnectivityProfile, width: usize) -> String {
    let cols = columns(&instance.horizon, width.max(1));
    let label = instance
        .edges
        .iter()
        .map(|e| e.id.chars().count())
        .max()
        .unwrap_or(0)
        .max("connected".len());
    let mut out = String::new();
    let _ = writeln!(out, "{:label$} 0{:>w$}", "", instance.horizon.to_string(), w = cols + 1);
    for e in &instance.edges {
        let mut row = String::with_capacity(cols);
        for c in 0..cols {
            let t = cell_midpoint(&instance.horizon, c, cols);
            row.push(if maintained(schedule, &e.id, &t) {
                '#'
            } else if e.release <= t && t < e.deadline {
                '.'
            } else {
                ' '
            });
        }
        let _ = writeln!(out, "{:label$} |{row}|", e.id);
    }
    let mut band = String::with_capacity(cols);
    for c in 0..cols {
        let t = cell_midpoint(&instance.horizon, c, cols);
        let up = profile.atoms.iter().any(|a| a.connected && a.start <= t && t < a.end);
        band.push(if up { '=' } else { ' ' });
    }
    let _ = writeln!(out, "{:label$} |{band}|", "connected");
    let _ = writeln!(
        out,
        "connected {} / disconnected {} / horizon {}",
        profile.connected_time, profile.disconnected_time, instance.horizon
    );
    out
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Static SVG timeline with one row per edge and a connectivity band.
pub fn svg_timeline(instance: &Instance, schedule: &Schedule, profile: &ConnectivityProfile) -> String {
    const ROW: f64 = 22.0;
    const LABEL: f64 = 110.0;
    const PLOT: f64 = 640.0;
    let horizon = instance.horizon.to_f64();
    let x = |t: &Rational| {
        if horizon > 0.0 {
            LABEL + PLOT * t.to_f64() / horizon
        } else {
            LABEL
        }
    };
    let rows = instance.edges.len() + 1;
    let height = ROW * (rows as f64 + 1.5);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{height:.0}" font-family="monospace" font-size="12">"#,
        LABEL + PLOT + 20.0
    );
    for (r, e) in instance.edges.iter().enumerate() {
        let y = ROW * r as f64 + 4.0;
        let _ = writeln!(out, r#"  <text x="4" y="{:.1}">{}</text>"#, y + 13.0, escape(&e.id));
        let _ = writeln!(
            out,
            r##"  <rect x="{:.2}" y="{y:.1}" width="{:.2}" height="16" fill="#eeeeee"/>"##,
            x(&e.release),
            x(&e.deadline) - x(&e.release)
        );
        if let Some(set) = schedule.get(&e.id) {
            for i in set.intervals() {
                let _ = writeln!(
                    out,
                    r##"  <rect x="{:.2}" y="{y:.1}" width="{:.2}" height="16" fill="#c0392b"><title>{} [{}, {}]</title></rect>"##,
                    x(&i.start),
                    x(&i.end) - x(&i.start),
                    escape(&e.id),
                    i.start,
                    i.end
                );
            }
        }
    }
    let y = ROW * instance.edges.len() as f64 + 4.0;
    let _ = writeln!(out, r#"  <text x="4" y="{:.1}">connected</text>"#, y + 13.0);
    for a in &profile.atoms {
        let fill = if a.connected { "#27ae60" } else { "#7f8c8d" };
        let _ = writeln!(
            out,
            r#"  <rect x="{:.2}" y="{y:.1}" width="{:.2}" height="16" fill="{fill}"/>"#,
            x(&a.start),
            x(&a.end) - x(&a.start)
        );
    }
    let axis = ROW * rows as f64 + 14.0;
    let _ = writeln!(out, r#"  <text x="{LABEL:.0}" y="{axis:.1}">0</text>"#);
    let _ = writeln!(
        out,
        r#"  <text x="{:.0}" y="{axis:.1}" text-anchor="end">{}</text>"#,
        LABEL + PLOT,
        instance.horizon
    );
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use netmaint_core::eval::connectivity_profile;
    use netmaint_core::gen::gen_unbounded_pop;
    use netmaint_core::preemptive::solve_preemptive;
    use netmaint_core::rational::qi;
    use netmaint_core::{Interval, IntervalSet, Objective, Preemption};

    use super::*;

    #[test]
    fn gantt_rows_and_band() {
        let inst = gen_unbounded_pop(Preemption::Arbitrary);
        let mut s = Schedule::new();
        s.set("e1", IntervalSet::single(qi(0), qi(1)));
        s.set(
            "e2",
            IntervalSet::new(vec![Interval::new(qi(0), qi(1)), Interval::new(qi(2), qi(3))]).unwrap(),
        );
        s.set("e3", IntervalSet::single(qi(2), qi(4)));
        s.set("e4", IntervalSet::single(qi(3), qi(4)));
        let profile = connectivity_profile(&inst, &s).unwrap();
        let chart = text_gantt(&inst, &s, &profile, 8);
        let lines: Vec<&str> = chart.lines().collect();
        assert_eq!(lines.len(), inst.edges.len() + 3);
        // Eight cells, two per unit.
        assert_eq!(lines[1], "e1        |##      |");
        assert_eq!(lines[2], "e1        |##..##  |".replace("e1", "e2"));
        assert_eq!(lines[3], "e3        |  ..####|");
        assert_eq!(lines[5], "connected |  ==    |");
        assert_eq!(lines[6], "connected 1 / disconnected 3 / horizon 4");
    }

    #[test]
    fn svg_has_a_row_per_edge() {
        let inst = gen_unbounded_pop(Preemption::Arbitrary);
        let sol = solve_preemptive(&inst, Objective::MaxConnectivity).unwrap();
        let profile = connectivity_profile(&inst, &sol.schedule).unwrap();
        let svg = svg_timeline(&inst, &sol.schedule, &profile);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<title>").count(), sol.schedule.assignment.values().map(|s| s.len()).sum::<usize>());
        assert_eq!(svg.matches("fill=\"#27ae60\"").count(), profile.atoms.iter().filter(|a| a.connected).count());
    }
}
