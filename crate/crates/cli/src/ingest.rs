//! CSV ingestion of per-year observations.
//!
//! Required columns: `year, y_current, y_potential, revenue, expenditure`.
//! Optional columns: `t1..t4` (revenue categories), `eps_t1..eps_t4`
//! (their elasticities), `x_term`, `u_current`, `u_structural`,
//! `eps_c_u`, `debt_ratio`. Decimal point is `.`, no thousands
//! separators, UTF-8. Unknown columns are ignored. Errors carry the CSV
//! line number (the header is line 1).

use std::collections::HashMap;
use std::path::Path;

use crate::error::{CliError, CliResult};

pub const REQUIRED_COLUMNS: [&str; 5] =
    ["year", "y_current", "y_potential", "revenue", "expenditure"];

pub const OPTIONAL_COLUMNS: [&str; 13] = [
    "t1",
    "t2",
    "t3",
    "t4",
    "eps_t1",
    "eps_t2",
    "eps_t3",
    "eps_t4",
    "x_term",
    "u_current",
    "u_structural",
    "eps_c_u",
    "debt_ratio",
];

/// One parsed CSV row; `line` is kept for error reporting downstream.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationRow {
    pub line: usize,
    pub year: i32,
    pub y_current: f64,
    pub y_potential: f64,
    pub revenue: f64,
    pub expenditure: f64,
    pub revenue_categories: [Option<f64>; 4],
    pub revenue_elasticities: [Option<f64>; 4],
    pub x_term: Option<f64>,
    pub u_current: Option<f64>,
    pub u_structural: Option<f64>,
    pub eps_c_u: Option<f64>,
    pub debt_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ObservationTable {
    pub rows: Vec<ObservationRow>,
}

impl ObservationTable {
    /// A column value that a subcommand cannot do without.
    pub fn require(row: &ObservationRow, value: Option<f64>, column: &str) -> CliResult<f64> {
        value.ok_or_else(|| {
            CliError::Domain(format!(
                "row {} (year {}): column '{column}' is required by this subcommand",
                row.line, row.year
            ))
        })
    }
}

struct Columns {
    index: HashMap<String, usize>,
}

impl Columns {
    fn get(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

pub fn ingest_csv(path: &Path) -> CliResult<ObservationTable> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Domain(format!("cannot read {}: {e}", path.display())))?;

    let headers = reader
        .headers()
        .map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))?
        .clone();
    let mut index = HashMap::new();
    for (i, name) in headers.iter().enumerate() {
        index.insert(name.to_string(), i);
    }
    for required in REQUIRED_COLUMNS {
        if !index.contains_key(required) {
            return Err(CliError::Domain(format!(
                "{}: missing required column '{required}'",
                path.display()
            )));
        }
    }
    let columns = Columns { index };

    let mut rows: Vec<ObservationRow> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2; // header occupies line 1
        let record = record.map_err(|e| CliError::Domain(format!("row {line}: {e}")))?;
        let row = parse_row(&record, &columns, line)?;
        if let Some(prev) = rows.last() {
            if row.year == prev.year {
                return Err(CliError::Domain(format!(
                    "row {line}: duplicate year {}",
                    row.year
                )));
            }
            if row.year < prev.year {
                return Err(CliError::Domain(format!(
                    "row {line}: years must be strictly increasing ({} after {})",
                    row.year, prev.year
                )));
            }
        }
        rows.push(row);
    }
    Ok(ObservationTable { rows })
}

fn parse_row(
    record: &csv::StringRecord,
    columns: &Columns,
    line: usize,
) -> CliResult<ObservationRow> {
    let cell = |name: &str| -> Option<&str> {
        columns
            .get(name)
            .and_then(|i| record.get(i))
            .filter(|s| !s.is_empty())
    };
    let required_f64 = |name: &str| -> CliResult<f64> {
        let raw = cell(name)
            .ok_or_else(|| CliError::Domain(format!("row {line}: column '{name}' is empty")))?;
        parse_f64(raw, name, line)
    };
    let optional_f64 = |name: &str| -> CliResult<Option<f64>> {
        cell(name).map(|raw| parse_f64(raw, name, line)).transpose()
    };

    let year_raw = cell("year")
        .ok_or_else(|| CliError::Domain(format!("row {line}: column 'year' is empty")))?;
    let year: i32 = year_raw.parse().map_err(|_| {
        CliError::Domain(format!(
            "row {line}, column 'year': cannot parse '{year_raw}' as an integer"
        ))
    })?;

    Ok(ObservationRow {
        line,
        year,
        y_current: required_f64("y_current")?,
        y_potential: required_f64("y_potential")?,
        revenue: required_f64("revenue")?,
        expenditure: required_f64("expenditure")?,
        revenue_categories: [
            optional_f64("t1")?,
            optional_f64("t2")?,
            optional_f64("t3")?,
            optional_f64("t4")?,
        ],
        revenue_elasticities: [
            optional_f64("eps_t1")?,
            optional_f64("eps_t2")?,
            optional_f64("eps_t3")?,
            optional_f64("eps_t4")?,
        ],
        x_term: optional_f64("x_term")?,
        u_current: optional_f64("u_current")?,
        u_structural: optional_f64("u_structural")?,
        eps_c_u: optional_f64("eps_c_u")?,
        debt_ratio: optional_f64("debt_ratio")?,
    })
}

fn parse_f64(raw: &str, name: &str, line: usize) -> CliResult<f64> {
    raw.parse::<f64>().map_err(|_| {
        CliError::Domain(format!(
            "row {line}, column '{name}': cannot parse '{raw}' as a number"
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_csv(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn minimal_valid_file() {
        let f = write_csv("year,y_current,y_potential,revenue,expenditure\n2014,105,100,30,35\n");
        let table = ingest_csv(f.path()).unwrap();
        assert_eq!(table.rows.len(), 1);
        assert_eq!(table.rows[0].year, 2014);
        assert_eq!(table.rows[0].y_current, 105.0);
        assert!(table.rows[0].debt_ratio.is_none());
    }

    #[test]
    fn duplicate_year_names_row() {
        let f = write_csv(
            "year,y_current,y_potential,revenue,expenditure\n2014,105,100,30,35\n2014,106,100,30,35\n",
        );
        let err = ingest_csv(f.path()).unwrap_err();
        assert!(err.to_string().contains("row 3"), "{err}");
        assert!(err.to_string().contains("duplicate year 2014"), "{err}");
    }

    #[test]
    fn decreasing_years_rejected() {
        let f = write_csv(
            "year,y_current,y_potential,revenue,expenditure\n2015,105,100,30,35\n2014,106,100,30,35\n",
        );
        let err = ingest_csv(f.path()).unwrap_err();
        assert!(err.to_string().contains("strictly increasing"), "{err}");
    }

    #[test]
    fn missing_column_and_bad_cell_are_reported() {
        let f = write_csv("year,y_current,y_potential,revenue\n2014,105,100,30\n");
        let err = ingest_csv(f.path()).unwrap_err();
        assert!(
            err.to_string()
                .contains("missing required column 'expenditure'"),
            "{err}"
        );

        let f = write_csv("year,y_current,y_potential,revenue,expenditure\n2014,105,abc,30,35\n");
        let err = ingest_csv(f.path()).unwrap_err();
        assert!(
            err.to_string().contains("row 2, column 'y_potential'"),
            "{err}"
        );
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn optional_columns_parse_when_present() {
        let f = write_csv(
            "year,y_current,y_potential,revenue,expenditure,t1,t2,t3,t4,u_current,u_structural,debt_ratio\n\
             2014,105,100,30,35,10,10,10,10,5,4,0.4\n",
        );
        let table = ingest_csv(f.path()).unwrap();
        let row = &table.rows[0];
        assert_eq!(row.revenue_categories, [Some(10.0); 4]);
        assert_eq!(row.u_current, Some(5.0));
        assert_eq!(row.debt_ratio, Some(0.4));
        assert_eq!(row.eps_c_u, None);
    }

    #[test]
    fn quarterly_wage_values_sum_exactly() {
        let f = write_csv(
            "year,y_current,y_potential,revenue,expenditure\n\
             2014,1,1,39388.9,0\n2015,1,1,42106.5,0\n2016,1,1,44315.1,0\n2017,1,1,46244.8,0\n",
        );
        let table = ingest_csv(f.path()).unwrap();
        let total: f64 = table.rows.iter().map(|r| r.revenue).sum();
        assert_eq!(total, 172055.3);
    }
}
