//! Canonical shorthand output.
//!
//! Each spec has exactly one canonical text: sections in grammar order
//! separated by one blank line, single spaces between tokens, relative-date
//! durations before units, and a single trailing newline.

use std::fmt::Write;

use crate::model::{ensure_valid, Field, Filter, InvalidSpec, Sort, VizSpec};

/// Quotes `s`, escaping backslashes and double quotes.
pub fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if matches!(c, '"' | '\\') {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Shortest decimal that reads back as the same `f64`, never in exponent form.
pub fn format_number(v: f64) -> String {
    // `Display` for f64 is shortest round-trip and never uses exponents.
    v.to_string()
}

pub fn emit(spec: &VizSpec) -> Result<String, InvalidSpec> {
    ensure_valid(spec)?;
    let mut out = String::from("fields:\n");
    for field in &spec.fields {
        out.push_str(&field_line(field));
        out.push('\n');
    }
    if !spec.filters.is_empty() {
        out.push_str("\nfilters:\n");
        for filter in &spec.filters {
            out.push_str(&filter_line(filter));
            out.push('\n');
        }
    }
    if !spec.sorts.is_empty() {
        out.push_str("\nsort:\n");
        for sort in &spec.sorts {
            out.push_str(&sort_line(sort));
            out.push('\n');
        }
    }
    if let Some(chart) = spec.chart_type {
        let _ = writeln!(out, "\nchart:\n{chart}");
    }
    Ok(out)
}

fn field_line(field: &Field) -> String {
    let mut parts: Vec<String> = Vec::with_capacity(4);
    if let Some(code) = field.field_type.code() {
        parts.push(code.to_owned());
    }
    parts.push(quote(&field.name));
    if let Some(agg) = field.aggregation {
        parts.push(agg.to_string());
    }
    if let Some(enc) = field.encoding {
        parts.push(enc.to_string());
    }
    parts.join(" ")
}

fn filter_line(filter: &Filter) -> String {
    let mut parts = vec![filter.prefix().to_owned(), quote(filter.field_name())];
    match filter {
        Filter::Categorical {
            exclude, values, ..
        } => {
            if *exclude {
                parts.push("ex".into());
            }
            parts.push("values".into());
            parts.extend(values.iter().map(|v| quote(v)));
        }
        Filter::RelativeDate {
            duration, units, ..
        } => {
            parts.push(duration.to_string());
            parts.push(units.to_string());
        }
        Filter::DateRange { start, end, .. } => {
            if let Some(s) = start {
                parts.extend(["start".to_owned(), s.clone()]);
            }
            if let Some(e) = end {
                parts.extend(["end".to_owned(), e.clone()]);
            }
        }
        Filter::NumericRange {
            aggregation,
            start,
            end,
            ..
        } => {
            if let Some(agg) = aggregation {
                parts.push(agg.to_string());
            }
            if let Some(s) = start {
                parts.extend(["start".to_owned(), format_number(*s)]);
            }
            if let Some(e) = end {
                parts.extend(["end".to_owned(), format_number(*e)]);
            }
        }
    }
    parts.join(" ")
}

fn sort_line(sort: &Sort) -> String {
    let mut parts = vec![quote(&sort.sort_by_field)];
    if let Some(agg) = sort.aggregation {
        parts.push(agg.to_string());
    }
    if let Some(dir) = sort.direction {
        parts.push(dir.to_string());
    }
    if let Some(limit) = sort.limit {
        parts.push(limit.to_string());
    }
    if let Some(name) = &sort.field_name {
        parts.push(quote(name));
    }
    parts.join(" ")
}
