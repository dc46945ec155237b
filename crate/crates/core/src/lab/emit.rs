use std::path::Path;
use std::str::FromStr;

use super::{ExperimentReport, Verdict};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    JsonLines,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(Format::Table),
            "jsonlines" => Ok(Format::JsonLines),
            other => Err(Error::Plan(format!("unknown format `{other}`, expected table or jsonlines"))),
        }
    }
}

fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::Exploratory => "exploratory",
        Verdict::Error => "ERROR",
    }
}

/// Renders reports; identical reports give identical bytes.
pub fn emit(reports: &[ExperimentReport], format: Format) -> String {
    match format {
        Format::JsonLines => {
            let mut out = String::new();
            for r in reports {
                out.push_str(&serde_json::to_string(r).expect("reports serialize"));
                out.push('\n');
            }
            out
        }
        Format::Table => {
            let header = ["id", "kind", "mode", "verdict", "summary"];
            let rows: Vec<[String; 5]> = reports
                .iter()
                .map(|r| {
                    let mode = match r.mode {
                        super::Mode::Assert => "assert",
                        super::Mode::Exploratory => "exploratory",
                    };
                    let verdict = match &r.error {
                        Some(e) => format!("{} ({})", verdict_label(r.verdict), e.kind),
                        None => verdict_label(r.verdict).to_string(),
                    };
                    [r.id.clone(), r.kind.clone(), mode.into(), verdict, r.summary.clone()]
                })
                .collect();
            let mut widths = header.map(str::len);
            for row in &rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let line = |cells: &[&str]| {
                let mut s = String::new();
                for (i, c) in cells.iter().enumerate() {
                    if i + 1 == cells.len() {
                        s.push_str(c);
                    } else {
                        s.push_str(&format!("{c:<w$}  ", w = widths[i]));
                    }
                }
                s.trim_end().to_string() + "\n"
            };
            let mut out = line(&header);
            for row in &rows {
                out.push_str(&line(&row.each_ref().map(String::as_str)));
            }
            let failed = reports.iter().filter(|r| r.is_assert_failure()).count();
            out.push_str(&format!("{} experiments, {} assert failures\n", reports.len(), failed));
            out
        }
    }
}

/// Writes to `out`, or to stdout when `None`.
pub fn write_reports(reports: &[ExperimentReport], format: Format, out: Option<&Path>) -> Result<()> {
    let text = emit(reports, format);
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source }),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|source| Error::Io { path: "<stdout>".into(), source })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_plan, run_plan, RunOptions};
    use super::*;

    #[test]
    fn one_pass_report() {
        let plan = parse_plan("{prime: 3, experiments: [{kind: cartier, n: 1}]}").unwrap();
        let reports = run_plan(&plan, &RunOptions::default()).unwrap();
        let table = emit(&reports, Format::Table);
        assert_eq!(table.lines().count(), 3);
        assert!(table.lines().nth(1).unwrap().contains("PASS"));
        let lines = emit(&reports, Format::JsonLines);
        assert_eq!(lines.lines().count(), 1);
        let v: serde_json::Value = serde_json::from_str(lines.trim()).unwrap();
        assert_eq!(v["verdict"], "pass");
        assert_eq!(v["engine_version"], crate::ENGINE_VERSION);
    }

    #[test]
    fn io_errors_carry_the_path() {
        let err = write_reports(&[], Format::Table, Some(Path::new("/nonexistent/dir/out.txt"))).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/dir/out.txt"));
    }
}
