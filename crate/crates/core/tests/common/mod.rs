#![allow(dead_code)]

use std::path::PathBuf;

use dss::{
    Aggregation, ChartType, DateUnit, Direction, Encoding, Field, FieldType, Filter, Sort, VizSpec,
};
use proptest::option;
use proptest::prelude::*;
use proptest::sample::select;

pub fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Names exercise spaces, escapes and non-ASCII text.
pub fn name() -> impl Strategy<Value = String> {
    "[a-zA-Z0-9 _\"\\\\é#:.,'-]{1,12}"
}

fn value() -> impl Strategy<Value = String> {
    "[a-zA-Z0-9 \"\\\\ü]{0,8}"
}

fn date() -> impl Strategy<Value = String> {
    (
        1900u32..2100,
        1u32..=12,
        1u32..=28,
        0usize..4,
        0u32..24,
        0u32..60,
    )
        .prop_map(|(y, m, d, style, h, min)| {
            let day = format!("{y:04}-{m:02}-{d:02}");
            match style {
                0 => day,
                1 => format!("{day}T{h:02}:{min:02}:00"),
                2 => format!("{day}T{h:02}:{min:02}:59Z"),
                _ => format!("{day}T{h:02}:{min:02}:00-{:02}:30", h % 12),
            }
        })
}

fn number() -> impl Strategy<Value = f64> {
    prop_oneof![
        (-1_000_000i64..1_000_000).prop_map(|n| n as f64),
        (-1_000_000i64..1_000_000, 1u32..4).prop_map(|(n, p)| n as f64 / 10f64.powi(p as i32)),
        prop::num::f64::NORMAL,
        Just(0.0),
    ]
}

fn aggregation() -> impl Strategy<Value = Aggregation> {
    select(Aggregation::ALL)
}

fn field(name: String) -> impl Strategy<Value = Field> {
    (
        select(FieldType::ALL),
        option::of(aggregation()),
        option::of(select(Encoding::ALL)),
    )
        .prop_map(move |(field_type, aggregation, encoding)| Field {
            name: name.clone(),
            field_type,
            aggregation,
            encoding,
        })
}

fn fields() -> impl Strategy<Value = Vec<Field>> {
    prop::collection::vec(name(), 1..5)
        .prop_map(|mut names| {
            let mut seen = std::collections::HashSet::new();
            names.retain(|n| seen.insert(n.clone()));
            names
        })
        .prop_flat_map(|names| names.into_iter().map(field).collect::<Vec<_>>())
}

pub fn filter() -> impl Strategy<Value = Filter> {
    let bounds_num = (number(), number(), 0usize..3).prop_map(|(a, b, which)| {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        match which {
            0 => (Some(lo), None),
            1 => (None, Some(hi)),
            _ => (Some(lo), Some(hi)),
        }
    });
    let bounds_date = (date(), date(), 0usize..3).prop_map(|(a, b, which)| match which {
        0 => (Some(a), None),
        1 => (None, Some(b)),
        _ => (Some(a), Some(b)),
    });
    prop_oneof![
        (name(), any::<bool>(), prop::collection::vec(value(), 1..4)).prop_map(
            |(field_name, exclude, values)| Filter::Categorical {
                field_name,
                exclude,
                values
            }
        ),
        (name(), 1u64..=1000, select(DateUnit::ALL)).prop_map(|(field_name, duration, units)| {
            Filter::RelativeDate {
                field_name,
                duration,
                units,
            }
        }),
        (name(), bounds_date).prop_map(|(field_name, (start, end))| Filter::DateRange {
            field_name,
            start,
            end
        }),
        (name(), option::of(aggregation()), bounds_num).prop_map(
            |(field_name, aggregation, (start, end))| Filter::NumericRange {
                field_name,
                aggregation,
                start,
                end
            }
        ),
    ]
}

pub fn sort() -> impl Strategy<Value = Sort> {
    (
        name(),
        option::of(aggregation()),
        option::of(select(Direction::ALL)),
        option::of(prop_oneof![1u64..100, Just(u64::MAX)]),
        option::of(name()),
    )
        .prop_map(
            |(sort_by_field, aggregation, direction, limit, field_name)| Sort {
                sort_by_field,
                aggregation,
                direction,
                limit,
                field_name,
            },
        )
}

/// Valid specs: every variant, every keyword, every optional part present
/// or absent.
pub fn viz_spec() -> impl Strategy<Value = VizSpec> {
    (
        fields(),
        prop::collection::vec(filter(), 0..5),
        prop::collection::vec(sort(), 0..3),
        option::of(select(ChartType::ALL)),
    )
        .prop_map(|(fields, filters, sorts, chart_type)| VizSpec {
            fields,
            filters,
            sorts,
            chart_type,
        })
}

/// The one lossy case of the JSON mapping: a field without a type code is
/// written with discrete-dimension attributes and reads back as `dd`.
pub fn codec_normalized(spec: &VizSpec) -> VizSpec {
    let mut out = spec.clone();
    for f in &mut out.fields {
        if f.field_type == FieldType::Unspecified {
            f.field_type = FieldType::Dd;
        }
    }
    out
}
