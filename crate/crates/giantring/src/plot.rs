//! Gnuplot scripts for sweep tables.
//!
//! The script reads the comma-separated table (header skipped) and writes
//! one PNG per figure through the `pngcairo` terminal. Two-axis sweeps
//! become heatmaps of the second axis (x) against the first (y) unless the
//! config asks for profiles, which draw one curve per value of the first
//! axis.

use std::fmt::Write as _;

use crate::config::{PlotStyle, SweepConfig};
use crate::sweep::{format_number, Table};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn preamble(out: &mut String, csv: &str) {
    out.push_str("# gnuplot script\n");
    out.push_str("set datafile separator \",\"\n");
    out.push_str("set datafile missing \"\"\n");
    out.push_str("set terminal pngcairo enhanced size 900,650 font \",11\"\n");
    let _ = writeln!(out, "data = {}", quote(csv));
}

/// Script for `table`; `csv` is the path of the table relative to the
/// script and `stem` prefixes the image names.
pub fn emit_plot_script(cfg: &SweepConfig, table: &Table, csv: &str, stem: &str) -> String {
    let mut out = String::new();
    preamble(&mut out, csv);
    let n_axes = cfg.axes.len();
    let output_column = |k: usize| n_axes + k + 1;

    if n_axes == 1 {
        let axis = &cfg.axes[0];
        let _ = writeln!(out, "\nset output {}", quote(&format!("{stem}.png")));
        let _ = writeln!(out, "set xlabel {}", quote(axis.param.label()));
        let labels: Vec<&str> = cfg.outputs.iter().map(|o| o.label()).collect();
        let _ = writeln!(out, "set ylabel {}", quote(&labels.join(", ")));
        out.push_str("set key outside right\nset grid\n");
        let curves: Vec<String> = cfg
            .outputs
            .iter()
            .enumerate()
            .map(|(k, o)| format!("data skip 1 using 1:{} with lines lw 2 title {}", output_column(k), quote(o.label())))
            .collect();
        let _ = writeln!(out, "plot {}", curves.join(", \\\n     "));
        out.push_str("unset output\n");
        return out;
    }

    let (outer, inner) = (&cfg.axes[0], &cfg.axes[1]);
    match cfg.plot {
        PlotStyle::Auto => {
            out.push_str("set view map\nunset key\n");
            let _ = writeln!(out, "set xlabel {}", quote(inner.param.label()));
            let _ = writeln!(out, "set ylabel {}", quote(outer.param.label()));
            let _ = writeln!(out, "set xrange [{}:{}]", format_number(inner.start), format_number(inner.stop));
            let _ = writeln!(out, "set yrange [{}:{}]", format_number(outer.start), format_number(outer.stop));
            for (k, o) in cfg.outputs.iter().enumerate() {
                let _ = writeln!(out, "\nset output {}", quote(&format!("{stem}_{}.png", o.name())));
                let _ = writeln!(out, "set cblabel {}", quote(o.label()));
                let _ = writeln!(out, "plot data skip 1 using 2:1:{} with image", output_column(k));
                out.push_str("unset output\n");
            }
        }
        PlotStyle::Profiles => {
            out.push_str("set key outside right\nset grid\n");
            let _ = writeln!(out, "set xlabel {}", quote(inner.param.label()));
            let values = outer.values();
            let block = inner.count;
            for (k, o) in cfg.outputs.iter().enumerate() {
                let _ = writeln!(out, "\nset output {}", quote(&format!("{stem}_{}.png", o.name())));
                let _ = writeln!(out, "set ylabel {}", quote(o.label()));
                let curves: Vec<String> = values
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        format!(
                            "data skip 1 every ::{}::{} using 2:{} with lines lw 2 title {}",
                            i * block,
                            (i + 1) * block - 1,
                            output_column(k),
                            quote(&format!("{} = {}", outer.param.label(), trim(*v)))
                        )
                    })
                    .collect();
                let _ = writeln!(out, "plot {}", curves.join(", \\\n     "));
                out.push_str("unset output\n");
            }
        }
    }
    debug_assert_eq!(table.columns.len(), n_axes + cfg.outputs.len());
    out
}

/// Short rendering for curve titles.
fn trim(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}
