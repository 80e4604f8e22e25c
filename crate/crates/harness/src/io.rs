//! Population CSV files and JSON result manifests.
//!
//! A population file is a CSV table with a header of `x1..xn` decision
//! columns (optional) and `f1..fm` objective columns (required), one row
//! per individual. Lines starting with `#` are comments; a leading
//! `# problem: <name>` comment tags the benchmark the rows belong to.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use moind_core::{
    DecisionPoint, Individual, ObjectivePoint, ObjectiveSet, Population, Problem, ReferenceFront,
};
use serde::Serialize;

use crate::error::{usage, HarnessError, Result};

/// Contents of a parsed population file.
#[derive(Debug, Clone, PartialEq)]
pub struct PopulationFile {
    pub population: Population<f64>,
    /// Problem named by the `# problem:` comment, if any.
    pub problem_tag: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Column {
    X(usize),
    F(usize),
}

fn parse_header(name: &str) -> Option<Column> {
    let (kind, idx) = name.trim().split_at_checked(1)?;
    let idx: usize = idx.parse().ok().filter(|&i| i >= 1)?;
    match kind {
        "x" | "X" => Some(Column::X(idx - 1)),
        "f" | "F" => Some(Column::F(idx - 1)),
        _ => None,
    }
}

fn data_err(path: &str, line: u64, message: impl Into<String>) -> HarnessError {
    HarnessError::Data { path: path.to_string(), line, message: message.into() }
}

fn find_tag(text: &str) -> Option<String> {
    text.lines()
        .map(str::trim)
        .take_while(|l| l.is_empty() || l.starts_with('#'))
        .filter_map(|l| l.trim_start_matches('#').trim().strip_prefix("problem:"))
        .map(|t| t.trim().to_ascii_lowercase())
        .find(|t| !t.is_empty())
}

/// Parses population CSV text. `origin` labels diagnostics.
///
/// `problem` overrides the file's tag. When a problem is known the decision
/// columns are checked against its bounds and the population is tagged with
/// it; otherwise decision vectors get a box spanning `[0, 1]` and the data.
pub fn parse_population(text: &str, origin: &str, problem: Option<&str>) -> Result<PopulationFile> {
    let problem_tag = find_tag(text);
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let headers = reader
        .headers()
        .map_err(|e| data_err(origin, 1, format!("unreadable header: {e}")))?
        .clone();
    let header_line = reader.position().line().max(1);
    let mut columns = Vec::with_capacity(headers.len());
    for name in headers.iter() {
        let col = parse_header(name).ok_or_else(|| {
            data_err(origin, header_line, format!("unexpected column `{name}`; expected x1..xn and f1..fm"))
        })?;
        if columns.contains(&col) {
            return Err(data_err(origin, header_line, format!("duplicate column `{name}`")));
        }
        columns.push(col);
    }
    let n = columns.iter().filter(|c| matches!(c, Column::X(_))).count();
    let m = columns.iter().filter(|c| matches!(c, Column::F(_))).count();
    let contiguous = |count: usize, make: fn(usize) -> Column| (0..count).all(|i| columns.contains(&make(i)));
    if m == 0 {
        return Err(data_err(origin, header_line, "no objective columns f1..fm"));
    }
    if m < 2 {
        return Err(data_err(origin, header_line, "at least two objective columns are required"));
    }
    if !contiguous(n, Column::X) || !contiguous(m, Column::F) {
        return Err(data_err(origin, header_line, "column indices must run 1..n and 1..m without gaps"));
    }

    let mut xs = Vec::new();
    let mut fs_ = Vec::new();
    let mut lines = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            data_err(origin, line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != columns.len() {
            return Err(data_err(
                origin,
                line,
                format!("expected {} fields, found {}", columns.len(), record.len()),
            ));
        }
        let mut x = vec![0.0; n];
        let mut f = vec![0.0; m];
        for (cell, col) in record.iter().zip(&columns) {
            let v: f64 = cell
                .parse()
                .map_err(|_| data_err(origin, line, format!("non-numeric cell `{cell}`")))?;
            if !v.is_finite() {
                return Err(data_err(origin, line, format!("non-finite cell `{cell}`")));
            }
            match *col {
                Column::X(i) => x[i] = v,
                Column::F(i) => f[i] = v,
            }
        }
        xs.push(x);
        fs_.push(f);
        lines.push(line);
    }
    if fs_.is_empty() {
        return Err(data_err(origin, header_line, "no data rows"));
    }

    let name = problem.map(str::to_ascii_lowercase).or_else(|| problem_tag.clone());
    let resolved = match &name {
        Some(name) if n > 0 => Some(Problem::from_name(name, m, Some(n)).map_err(|e| {
            data_err(origin, header_line, format!("problem `{name}`: {e}"))
        })?),
        Some(name) => {
            Problem::from_name(name, m, None)
                .map_err(|e| data_err(origin, header_line, format!("problem `{name}`: {e}")))?;
            None
        }
        None => None,
    };
    let bounds: Vec<(f64, f64)> = match &resolved {
        Some(p) => p.bounds(),
        None => (0..n)
            .map(|j| {
                let lo = xs.iter().map(|x| x[j]).fold(0.0, f64::min);
                let hi = xs.iter().map(|x| x[j]).fold(1.0, f64::max);
                (lo, hi)
            })
            .collect(),
    };

    let mut members = Vec::with_capacity(fs_.len());
    for ((x, f), line) in xs.into_iter().zip(fs_).zip(lines) {
        let objectives = ObjectivePoint::new(f).map_err(|e| data_err(origin, line, e.to_string()))?;
        let member = if n == 0 {
            Individual::objective_only(objectives)
        } else {
            let d = DecisionPoint::new(x, bounds.clone()).map_err(|e| data_err(origin, line, e.to_string()))?;
            Individual::new(d, objectives)
        };
        members.push(member);
    }
    let mut population = Population::new(members)?;
    if let Some(name) = name {
        population.set_problem(Some(name));
    }
    Ok(PopulationFile { population, problem_tag })
}

pub fn read_population(path: &Path, problem: Option<&str>) -> Result<PopulationFile> {
    let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    parse_population(&text, &path.display().to_string(), problem)
}

/// Objective rows of a CSV file, ignoring any decision columns.
pub fn read_reference(path: &Path) -> Result<ReferenceFront<f64>> {
    let file = read_population(path, None)?;
    Ok(ReferenceFront::new(file.population.objective_points())?)
}

fn fmt_cell(v: f64) -> String {
    format!("{v:.16e}")
}

/// Renders a population; decision columns are written when every member
/// has one.
pub fn format_population(pop: &Population<f64>) -> String {
    let mut out = String::new();
    if let Some(tag) = pop.problem_id() {
        out.push_str(&format!("# problem: {tag}\n"));
    }
    let n = if pop.has_decisions() { pop.num_variables().unwrap_or(0) } else { 0 };
    let m = pop.num_objectives().unwrap_or(0);
    let header: Vec<String> = (1..=n).map(|j| format!("x{j}")).chain((1..=m).map(|i| format!("f{i}"))).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for member in pop.members() {
        let xs = member.decision().map(|d| d.values()).unwrap_or(&[]);
        let row: Vec<String> = xs[..n]
            .iter()
            .chain(member.objectives().values())
            .map(|&v| fmt_cell(v))
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Renders objective rows only, e.g. a sampled reference front.
pub fn format_front<S: ObjectiveSet<f64> + ?Sized>(set: &S, problem: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(tag) = problem {
        out.push_str(&format!("# problem: {tag}\n"));
    }
    let m = set.dim().unwrap_or(0);
    let header: Vec<String> = (1..=m).map(|i| format!("f{i}")).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for i in 0..set.count() {
        let row: Vec<String> = set.point(i).iter().map(|&v| fmt_cell(v)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    }
    let mut file = fs::File::create(path).map_err(|e| HarnessError::io(path, e))?;
    file.write_all(text.as_bytes()).map_err(|e| HarnessError::io(path, e))
}

pub fn write_population(path: &Path, pop: &Population<f64>) -> Result<()> {
    write_text(path, &format_population(pop))
}

/// One reported number together with the parameters that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndicatorValue {
    pub indicator: String,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub value: f64,
}

/// JSON record written next to every output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Exact configuration needed to reproduce the outputs.
    pub config: serde_json::Value,
    pub seeds: Vec<u64>,
    pub values: Vec<IndicatorValue>,
    pub warnings: Vec<String>,
    pub outputs: Vec<String>,
    pub wall_time_secs: BTreeMap<String, f64>,
}

impl ResultManifest {
    pub fn new(command: &str, config: serde_json::Value) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            config,
            seeds: Vec::new(),
            values: Vec::new(),
            warnings: Vec::new(),
            outputs: Vec::new(),
            wall_time_secs: BTreeMap::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serialises")
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_text(path, &(self.to_json() + "\n"))
    }
}

/// Console rendering with six significant digits.
pub fn sig6(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-4..6).contains(&exp) {
        return format!("{v:.5e}");
    }
    format!("{:.*}", (5 - exp).max(0) as usize, v)
}

/// Parses `a,b,c` into numbers.
pub fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| usage(format!("invalid {what} `{s}`"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_example() {
        let text = "x1,x2,f1,f2\n0.1,0.2,1,2\n0.3,0.4,3,4\n0.5,0.6,5,6\n";
        let p = parse_population(text, "t", None).unwrap().population;
        assert_eq!((p.len(), p.num_variables(), p.num_objectives()), (3, Some(2), Some(2)));
        assert_eq!(p.members()[2].decision().unwrap().values(), &[0.5, 0.6]);
    }

    #[test]
    fn column_order_is_free() {
        let p = parse_population("f2,x1,f1\n2,0.5,1\n", "t", None).unwrap().population;
        assert_eq!(p.members()[0].objectives().values(), &[1.0, 2.0]);
        assert_eq!(p.members()[0].decision().unwrap().values(), &[0.5]);
    }

    #[test]
    fn diagnostics_carry_line_numbers() {
        let err = parse_population("f1,f2\n1,2\n1,2,3\n", "pop.csv", None).unwrap_err();
        assert_eq!(err.to_string(), "pop.csv:3: expected 2 fields, found 3");
        let err = parse_population("# problem: dtlz2\nf1,f2\n1,2\n1,abc\n", "p", None).unwrap_err();
        assert_eq!(err.to_string(), "p:4: non-numeric cell `abc`");
        let err = parse_population("x1,x2\n1,2\n", "p", None).unwrap_err();
        assert!(err.to_string().contains("no objective columns"), "{err}");
        assert!(parse_population("f1,f3\n1,2\n", "p", None).is_err());
        assert!(parse_population("f1,f2\n", "p", None).is_err());
        assert!(parse_population("f1,f2,g\n1,2,3\n", "p", None).is_err());
    }

    #[test]
    fn problem_tag_resolution() {
        let text = "# problem: DTLZ2\nx1,x2,x3,f1,f2,f3\n0.5,0.5,0.5,0.5,0.5,0.7\n";
        let f = parse_population(text, "t", None).unwrap();
        assert_eq!(f.problem_tag.as_deref(), Some("dtlz2"));
        assert_eq!(f.population.problem_id(), Some("dtlz2"));
        let g = parse_population(text, "t", Some("dtlz1")).unwrap();
        assert_eq!(g.population.problem_id(), Some("dtlz1"));
        let bad = "# problem: dtlz2\nx1,x2,x3,f1,f2,f3\n1.5,0.5,0.5,0.5,0.5,0.7\n";
        assert_eq!(parse_population(bad, "t", None).unwrap_err().exit_code(), 1);
        assert!(parse_population("# problem: nope\nf1,f2\n1,2\n", "t", None).is_err());
    }

    #[test]
    fn round_trip_is_exact() {
        let text = "x1,f1,f2\n0.1,0.30000000000000004,1e-300\n0.7,2.5,1.7976931348623157e308\n";
        let a = parse_population(text, "t", None).unwrap().population;
        let b = parse_population(&format_population(&a), "t", None).unwrap().population;
        assert_eq!(a, b);
    }

    #[test]
    fn sig6_format() {
        assert_eq!(sig6(0.0548341), "0.0548341");
        assert_eq!(sig6(1.30381234), "1.30381");
        assert_eq!(sig6(123456.7), "123457");
        assert_eq!(sig6(1234567.0), "1.23457e6");
        assert_eq!(sig6(0.0), "0");
        assert_eq!(sig6(2e-7), "2.00000e-7");
    }
}
