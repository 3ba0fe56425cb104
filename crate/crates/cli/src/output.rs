//! Rendering of report rows as CSV, JSON or an aligned text table.
//!
//! CSV is the reference format. JSON is an array of objects with the same
//! field names, and the table is the CSV re-laid out in padded columns.

use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

pub fn emit<T: Serialize>(rows: &[T], format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Csv => out.write_all(&to_csv(rows)?),
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)
        }
        Format::Table => write_table(&to_csv(rows)?, out),
    }
}

fn to_csv<T: Serialize>(rows: &[T]) -> io::Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(io::Error::other)?;
    }
    w.into_inner().map_err(|e| io::Error::other(e.to_string()))
}

fn write_table(csv_bytes: &[u8], out: &mut dyn Write) -> io::Result<()> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(csv_bytes);
    let records: Vec<Vec<String>> = reader
        .records()
        .map(|r| r.map(|rec| rec.iter().map(str::to_string).collect()))
        .collect::<Result<_, _>>()
        .map_err(io::Error::other)?;
    let columns = records.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..columns)
        .map(|c| {
            records
                .iter()
                .filter_map(|r| r.get(c))
                .map(String::len)
                .max()
                .unwrap_or(0)
        })
        .collect();
    for record in &records {
        let line: Vec<String> = record
            .iter()
            .zip(&widths)
            .map(|(cell, &w)| format!("{cell:>w$}"))
            .collect();
        writeln!(out, "{}", line.join("  ").trim_end())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        b: u64,
        value: String,
    }

    fn render(format: Format) -> String {
        let rows = [
            Row {
                b: 5,
                value: "-1/5".into(),
            },
            Row {
                b: 40,
                value: "13/16".into(),
            },
        ];
        let mut buf = Vec::new();
        emit(&rows, format, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn csv_has_header_and_rows() {
        assert_eq!(render(Format::Csv), "b,value\n5,-1/5\n40,13/16\n");
    }

    #[test]
    fn json_mirrors_fields() {
        let v: serde_json::Value = serde_json::from_str(&render(Format::Json)).unwrap();
        assert_eq!(v[1]["b"], 40);
        assert_eq!(v[0]["value"], "-1/5");
    }

    #[test]
    fn table_is_aligned() {
        assert_eq!(render(Format::Table), " b  value\n 5   -1/5\n40  13/16\n");
    }
}
