//! The four class-count tables: `D(k)`, `L(k)`, `ABM(a,b,m)` and grid relations.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::relations::{count_classes_many, CountOptions, RelationSpec};

/// `(a, b, m)` rows of the ABM table, in publication order.
pub const ABM_ROWS: [(i64, i64, i64); 93] = [
    (1, 1, 1),
    (1, 2, 2),
    (1, 1, 2),
    (1, 3, 3),
    (1, 4, 4),
    (2, 3, 6),
    (1, 2, 3),
    (1, 1, 3),
    (1, 2, 4),
    (1, 5, 5),
    (1, 6, 6),
    (2, 5, 10),
    (3, 4, 12),
    (1, 3, 4),
    (1, 1, 4),
    (1, 3, 6),
    (1, 7, 7),
    (1, 2, 6),
    (1, 4, 6),
    (1, 8, 8),
    (2, 7, 14),
    (1, 4, 5),
    (1, 1, 5),
    (1, 2, 5),
    (1, 4, 8),
    (1, 9, 9),
    (2, 3, 12),
    (1, 10, 10),
    (1, 5, 6),
    (1, 1, 6),
    (1, 2, 8),
    (1, 3, 9),
    (1, 5, 10),
    (1, 6, 8),
    (1, 6, 9),
    (1, 11, 11),
    (1, 12, 12),
    (1, 1, 7),
    (1, 1, 8),
    (1, 1, 9),
    (1, 1, 10),
    (1, 1, 11),
    (1, 1, 12),
    (1, 1, 13),
    (1, 1, 14),
    (1, 2, 7),
    (1, 2, 9),
    (1, 2, 10),
    (1, 2, 11),
    (1, 2, 12),
    (1, 2, 13),
    (1, 2, 14),
    (1, 3, 7),
    (1, 3, 8),
    (1, 3, 10),
    (1, 3, 11),
    (1, 3, 12),
    (1, 3, 13),
    (1, 3, 14),
    (1, 4, 9),
    (1, 4, 10),
    (1, 4, 12),
    (1, 4, 13),
    (1, 4, 14),
    (1, 5, 8),
    (1, 5, 11),
    (1, 5, 12),
    (1, 5, 13),
    (1, 6, 7),
    (1, 6, 10),
    (1, 6, 12),
    (1, 6, 13),
    (1, 6, 14),
    (1, 7, 8),
    (1, 7, 11),
    (1, 7, 12),
    (1, 7, 14),
    (1, 8, 9),
    (1, 8, 10),
    (1, 8, 12),
    (1, 8, 14),
    (1, 9, 10),
    (1, 9, 12),
    (1, 9, 14),
    (1, 10, 11),
    (1, 10, 12),
    (1, 10, 14),
    (1, 11, 12),
    (1, 12, 13),
    (1, 12, 14),
    (1, 13, 13),
    (1, 13, 14),
    (1, 14, 14),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableRequest {
    pub table: u8,
    pub max_n: usize,
    pub format: TableFormat,
}

/// One parameter row with its counts for `n = 1..=max_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub params: Vec<i64>,
    pub relation: RelationSpec,
    pub counts: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub number: u8,
    pub columns: &'static [&'static str],
    pub rows: Vec<TableRow>,
}

/// Parameter columns of a table.
pub fn param_columns(table: u8) -> Result<&'static [&'static str]> {
    match table {
        1 | 2 => Ok(&["k"]),
        3 => Ok(&["a", "b", "m"]),
        4 => Ok(&["u", "v", "w"]),
        _ => Err(Error::InvalidRelation(format!(
            "no table {table}; choose 1 to 4"
        ))),
    }
}

/// The parameter rows of a table and their relations.
pub fn table_relations(table: u8) -> Result<Vec<(Vec<i64>, RelationSpec)>> {
    param_columns(table)?;
    Ok(match table {
        1 => (1..=8)
            .map(|k| (vec![k], RelationSpec::D(k as u64)))
            .collect(),
        2 => (1..=15)
            .map(|k| (vec![k], RelationSpec::L(k as u64)))
            .collect(),
        3 => ABM_ROWS
            .iter()
            .map(|&(a, b, m)| (vec![a, b, m], RelationSpec::Abm(a, b, m)))
            .collect(),
        _ => {
            let mut rows = Vec::new();
            for w in 1..=5 {
                for v in 1..=5 {
                    for u in 0..w {
                        rows.push((vec![u, v, w], RelationSpec::Grid(Grid::Plane { u, v, w })));
                    }
                }
            }
            rows
        }
    })
}

pub fn compute_table(table: u8, max_n: usize, opts: &CountOptions) -> Result<Table> {
    let columns = param_columns(table)?;
    let rels = table_relations(table)?;
    let specs: Vec<RelationSpec> = rels.iter().map(|(_, s)| *s).collect();
    let mut rows: Vec<TableRow> = rels
        .into_iter()
        .map(|(params, relation)| TableRow {
            params,
            relation,
            counts: Vec::with_capacity(max_n),
        })
        .collect();
    for n in 1..=max_n {
        let counts = count_classes_many(n, &specs, opts)?;
        for (row, c) in rows.iter_mut().zip(counts) {
            row.counts.push(c);
        }
    }
    Ok(Table {
        number: table,
        columns,
        rows,
    })
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push_str(",n,count\n");
        for row in &self.rows {
            let params: Vec<String> = row.params.iter().map(|p| p.to_string()).collect();
            let params = params.join(",");
            for (i, c) in row.counts.iter().enumerate() {
                out.push_str(&format!("{params},{},{c}\n", i + 1));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (name, p) in self.columns.iter().zip(&row.params) {
                    obj.insert(name.to_string(), json!(p));
                }
                obj.insert("relation".into(), json!(row.relation.to_string()));
                obj.insert("sequence".into(), json!(row.counts));
                let cells: Vec<Value> = row
                    .counts
                    .iter()
                    .enumerate()
                    .map(|(i, c)| json!({"n": i + 1, "count": c}))
                    .collect();
                obj.insert("cells".into(), Value::Array(cells));
                Value::Object(obj)
            })
            .collect();
        json!({ "table": self.number, "rows": rows })
    }

    pub fn render(&self, format: TableFormat) -> String {
        match format {
            TableFormat::Csv => self.to_csv(),
            TableFormat::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.to_json()).expect("plain JSON values");
                s.push('\n');
                s
            }
        }
    }
}

pub fn run_request(req: &TableRequest, opts: &CountOptions) -> Result<String> {
    Ok(compute_table(req.table, req.max_n, opts)?.render(req.format))
}
