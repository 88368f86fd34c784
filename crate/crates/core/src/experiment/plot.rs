//! Companion gnuplot scripts. They read the CSV as written and only
//! select rows by the `series`, `method` and `n_max` columns.

use super::config::ExperimentId;
use super::output::SweepResult;

fn col(result: &SweepResult, name: &str) -> usize {
    let fixed = ["series", "method", "n_max", "value"];
    let n = result.coord_names.len();
    result
        .coord_names
        .iter()
        .position(|c| c == name)
        .or_else(|| fixed.iter().position(|c| *c == name).map(|i| n + i))
        .expect("known column")
        + 1
}

fn preamble(csv_path: &str, title: &str) -> String {
    format!(
        "# gnuplot script\nset datafile separator ','\nset datafile commentschars '#'\nset key autotitle columnhead\nset title '{title}'\nfile = '{csv_path}'\n"
    )
}

/// Filter expression: value column if the row matches, else NaN (skipped).
fn pick(result: &SweepResult, series: &str, method: &str, n_max: Option<usize>) -> String {
    let (s, m, n, v) = (
        col(result, "series"),
        col(result, "method"),
        col(result, "n_max"),
        col(result, "value"),
    );
    let mut cond = format!("strcol({s}) eq '{series}' && strcol({m}) eq '{method}'");
    if let Some(n_max) = n_max {
        cond.push_str(&format!(" && strcol({n}) eq '{n_max}'"));
    }
    format!("(({cond}) ? ${v} : NaN)")
}

fn line_plot(result: &SweepResult, csv_path: &str, title: &str, x: &str, curves: &[(String, String, Option<usize>)]) -> String {
    let mut s = preamble(csv_path, title);
    s.push_str(&format!("set xlabel '{x}'\nset ylabel 'value'\n"));
    let xc = col(result, x);
    let parts: Vec<String> = curves
        .iter()
        .map(|(series, method, n_max)| {
            let label = match n_max {
                Some(n) => format!("{series} {method} n_max={n}"),
                None => format!("{series} {method}"),
            };
            format!(
                "file using {xc}:{} with linespoints title '{label}'",
                pick(result, series, method, *n_max)
            )
        })
        .collect();
    s.push_str(&format!("plot {}\n", parts.join(", \\\n     ")));
    s
}

fn contour(result: &SweepResult, csv_path: &str, title: &str, x: &str, y: &str) -> String {
    let mut s = preamble(csv_path, title);
    s.push_str(&format!(
        "set xlabel '{x}'\nset ylabel '{y}'\nset dgrid3d 60,60\nset contour base\nset cntrparam levels discrete 0.25,0.5,0.75,1.0,1.25\nunset surface\nset view map\n"
    ));
    s.push_str(&format!(
        "splot file using {}:{}:{} with lines title 'xi'\n",
        col(result, x),
        col(result, y),
        pick(result, "xi", "analytic", None)
    ));
    s
}

/// gnuplot source for `result`, reading from `csv_path`.
pub fn plot_script(experiment: ExperimentId, result: &SweepResult, csv_path: &str) -> String {
    let mut series: Vec<(String, String, Option<usize>)> = Vec::new();
    for r in &result.rows {
        if r.method == super::output::Method::EdDelta {
            continue;
        }
        let key = (r.series.clone(), r.method.as_str().to_string(), r.n_max);
        if !series.contains(&key) {
            series.push(key);
        }
    }
    match experiment {
        ExperimentId::Fig4 => contour(result, csv_path, "fig4", "g_c_minus_g", "temperature"),
        ExperimentId::Fig5 => contour(result, csv_path, "fig5", "omega0_over_omega", "temperature"),
        _ => {
            let x = result.coord_names.last().cloned().unwrap_or_default();
            let x = if experiment == ExperimentId::Fig6 { "fraction".to_string() } else { x };
            line_plot(result, csv_path, experiment.as_str(), &x, &series)
        }
    }
}
