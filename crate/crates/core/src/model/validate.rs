use std::collections::HashSet;

use super::{Code, Diagnostic, FieldType, Filter, VizSpec};
use crate::isodate;

/// What a validation finding is about. The key names match the full-spec
/// JSON keys, so a subject maps directly onto a document path; the parser
/// maps it onto the token it recorded for that key instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Subject {
    FieldList,
    Field(usize, Option<&'static str>),
    Filter(usize, Option<&'static str>),
    Sort(usize, Option<&'static str>),
}

impl Subject {
    pub(crate) fn json_path(self) -> String {
        let (list, index, key) = match self {
            Subject::FieldList => return "fields".to_owned(),
            Subject::Field(i, k) => ("fields", i, k),
            Subject::Filter(i, k) => ("filters", i, k),
            Subject::Sort(i, k) => ("sort", i, k),
        };
        match key {
            Some(k) => format!("{list}[{index}].{k}"),
            None => format!("{list}[{index}]"),
        }
    }
}

fn has_control(s: &str) -> bool {
    s.chars().any(char::is_control)
}

fn check_name(s: &str, what: &str) -> Option<String> {
    if s.is_empty() {
        Some(format!("{what} is empty"))
    } else if has_control(s) {
        Some(format!("{what} contains a control character"))
    } else {
        None
    }
}

/// Cross-element and structural checks for a spec.
///
/// Returns an empty list iff the spec is fully valid. Errors make the spec
/// unusable for emitting; warnings do not. Positions are 1:1 since a bare
/// model has no source text.
pub fn validate(spec: &VizSpec) -> Vec<Diagnostic> {
    check(spec).into_iter().map(|(_, d)| d).collect()
}

pub(crate) fn check(spec: &VizSpec) -> Vec<(Subject, Diagnostic)> {
    let mut out = Vec::new();
    let mut push = |subject, d| out.push((subject, d));

    if spec.fields.is_empty() {
        push(
            Subject::FieldList,
            Diagnostic::error(Code::MissingFields, "spec has no fields"),
        );
    }

    let mut seen = HashSet::new();
    for (i, field) in spec.fields.iter().enumerate() {
        if let Some(msg) = check_name(&field.name, "field name") {
            push(
                Subject::Field(i, Some("fieldName")),
                Diagnostic::error(Code::BadField, msg),
            );
        }
        if !seen.insert(field.name.as_str()) {
            push(
                Subject::Field(i, Some("fieldName")),
                Diagnostic::error(
                    Code::DupField,
                    format!("field \"{}\" is listed more than once", field.name),
                ),
            );
        }
        if let Some(agg) = field.aggregation {
            if field.field_type == FieldType::Cm && agg.is_date_unit() {
                push(
                    Subject::Field(i, Some("aggregation")),
                    Diagnostic::warning(
                        Code::DateAggOnMeasure,
                        format!(
                            "date aggregation `{agg}` on continuous measure \"{}\"",
                            field.name
                        ),
                    ),
                );
            }
        }
    }

    for (i, filter) in spec.filters.iter().enumerate() {
        let mut bad = |key, msg: String| {
            push(
                Subject::Filter(i, key),
                Diagnostic::error(Code::BadFilter, msg),
            );
        };
        if let Some(msg) = check_name(filter.field_name(), "filter field name") {
            bad(Some("fieldName"), msg);
        }
        match filter {
            Filter::Categorical { values, .. } => {
                if values.is_empty() {
                    bad(Some("values"), "categorical filter has no values".into());
                } else if values.iter().any(|v| has_control(v)) {
                    bad(
                        Some("values"),
                        "categorical value contains a control character".into(),
                    );
                }
            }
            Filter::RelativeDate { duration, .. } => {
                if *duration == 0 {
                    bad(
                        Some("duration"),
                        "relative-date duration must be at least 1".into(),
                    );
                }
            }
            Filter::DateRange { start, end, .. } => {
                if start.is_none() && end.is_none() {
                    bad(None, "date-range filter needs a start or an end".into());
                }
                for (key, bound) in [("start", start), ("end", end)] {
                    if let Some(Err(msg)) = bound.as_deref().map(isodate::check) {
                        bad(Some(key), msg);
                    }
                }
            }
            Filter::NumericRange { start, end, .. } => {
                match (start, end) {
                    (None, None) => {
                        bad(None, "numeric-range filter needs a start or an end".into())
                    }
                    (Some(s), Some(e)) if s > e => {
                        bad(None, format!("numeric range start {s} exceeds end {e}"))
                    }
                    _ => {}
                }
                for (key, bound) in [("start", start), ("end", end)] {
                    if bound.is_some_and(|v| !v.is_finite()) {
                        bad(Some(key), format!("numeric bound `{key}` is not finite"));
                    }
                }
            }
        }
    }

    // Names a sort may target: anything the spec already mentions.
    let known: HashSet<&str> = spec
        .fields
        .iter()
        .map(|f| f.name.as_str())
        .chain(spec.filters.iter().map(Filter::field_name))
        .collect();

    for (i, sort) in spec.sorts.iter().enumerate() {
        if let Some(msg) = check_name(&sort.sort_by_field, "sort-by field") {
            push(
                Subject::Sort(i, Some("sortByField")),
                Diagnostic::error(Code::BadSort, msg),
            );
        }
        if sort.limit == Some(0) {
            push(
                Subject::Sort(i, Some("limit")),
                Diagnostic::error(Code::BadSort, "sort limit must be at least 1"),
            );
        }
        if let Some(target) = &sort.field_name {
            if let Some(msg) = check_name(target, "sorted field name") {
                push(
                    Subject::Sort(i, Some("fieldName")),
                    Diagnostic::error(Code::BadSort, msg),
                );
            } else if !known.contains(target.as_str()) {
                push(
                    Subject::Sort(i, Some("fieldName")),
                    Diagnostic::warning(
                        Code::SortUnknownField,
                        format!("sort targets \"{target}\", which the spec does not mention"),
                    ),
                );
            }
        }
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{
        has_errors, Aggregation, DateUnit, Direction, Encoding, Field, FieldType, Severity, Sort,
    };

    fn example_spec() -> VizSpec {
        VizSpec {
            fields: vec![
                Field::new("Order Date", FieldType::Cd)
                    .aggregated(Aggregation::Month)
                    .encoded(Encoding::X),
                Field::new("Sales", FieldType::Cm).aggregated(Aggregation::Sum),
            ],
            filters: vec![
                Filter::Categorical {
                    field_name: "Product Name".into(),
                    exclude: false,
                    values: vec!["Product A".into(), "Product B".into()],
                },
                Filter::Categorical {
                    field_name: "Region".into(),
                    exclude: false,
                    values: vec!["South".into(), "West".into()],
                },
                Filter::RelativeDate {
                    field_name: "Order Date".into(),
                    duration: 2,
                    units: DateUnit::Years,
                },
                Filter::NumericRange {
                    field_name: "Sales".into(),
                    aggregation: Some(Aggregation::Sum),
                    start: Some(1000.0),
                    end: Some(10000.0),
                },
            ],
            sorts: vec![Sort {
                sort_by_field: "Sales".into(),
                aggregation: Some(Aggregation::Sum),
                direction: Some(Direction::Desc),
                limit: Some(5),
                field_name: Some("Region".into()),
            }],
            chart_type: None,
        }
    }

    fn codes(spec: &VizSpec) -> Vec<Code> {
        validate(spec).into_iter().map(|d| d.code).collect()
    }

    #[test]
    fn example_content_is_clean() {
        assert_eq!(validate(&example_spec()), vec![]);
    }

    #[test]
    fn duplicate_field_names() {
        let spec = VizSpec::with_fields(vec![
            Field::new("Sales", FieldType::Cm),
            Field::new("Sales", FieldType::Cm).aggregated(Aggregation::Sum),
        ]);
        let diags = validate(&spec);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, Code::DupField);
        assert_eq!(diags[0].severity, Severity::Error);
        assert_eq!((diags[0].line, diags[0].column), (1, 1));
    }

    #[test]
    fn duplicate_check_is_case_sensitive() {
        let spec = VizSpec::with_fields(vec![
            Field::new("Sales", FieldType::Cm),
            Field::new("sales", FieldType::Cm),
        ]);
        assert!(validate(&spec).is_empty());
    }

    #[test]
    fn date_aggregation_on_measure_table() {
        // Independent table: which keywords are date buckets.
        const DATE_UNITS: [&str; 8] = [
            "year", "quarter", "month", "week", "day", "hour", "minute", "second",
        ];
        let mut aggs: Vec<Option<Aggregation>> = vec![None];
        aggs.extend(Aggregation::ALL.iter().copied().map(Some));
        for &ft in FieldType::ALL {
            for &agg in &aggs {
                let mut field = Field::new("Revenue", ft);
                field.aggregation = agg;
                let spec = VizSpec::with_fields(vec![field]);
                let expect_warning = ft.code() == Some("cm")
                    && agg.is_some_and(|a| DATE_UNITS.contains(&a.keyword()));
                let diags = validate(&spec);
                if expect_warning {
                    assert_eq!(diags.len(), 1, "{ft} {agg:?}");
                    assert_eq!(diags[0].code, Code::DateAggOnMeasure);
                    assert_eq!(diags[0].severity, Severity::Warning);
                } else {
                    assert!(diags.is_empty(), "{ft} {agg:?}: {diags:?}");
                }
            }
        }
    }

    #[test]
    fn sort_target_must_be_mentioned() {
        let mut spec = example_spec();
        spec.sorts[0].field_name = Some("Category".into());
        assert_eq!(codes(&spec), vec![Code::SortUnknownField]);
        assert!(!has_errors(&validate(&spec)));

        // Region is mentioned only by a filter, which is enough.
        let mut spec = example_spec();
        spec.filters.remove(1);
        assert_eq!(codes(&spec), vec![Code::SortUnknownField]);
    }

    #[test]
    fn structural_violations() {
        assert_eq!(codes(&VizSpec::default()), vec![Code::MissingFields]);

        let base = VizSpec::with_fields(vec![Field::new("A", FieldType::Cm)]);
        let with_filter = |f: Filter| VizSpec {
            filters: vec![f],
            ..base.clone()
        };
        assert_eq!(
            codes(&with_filter(Filter::NumericRange {
                field_name: "A".into(),
                aggregation: None,
                start: None,
                end: None
            })),
            vec![Code::BadFilter]
        );
        assert_eq!(
            codes(&with_filter(Filter::NumericRange {
                field_name: "A".into(),
                aggregation: None,
                start: Some(5.0),
                end: Some(1.0)
            })),
            vec![Code::BadFilter]
        );
        assert_eq!(
            codes(&with_filter(Filter::DateRange {
                field_name: "A".into(),
                start: Some("2023-02-30".into()),
                end: None
            })),
            vec![Code::BadFilter]
        );
        assert_eq!(
            codes(&with_filter(Filter::RelativeDate {
                field_name: "A".into(),
                duration: 0,
                units: DateUnit::Days
            })),
            vec![Code::BadFilter]
        );
        assert_eq!(
            codes(&with_filter(Filter::Categorical {
                field_name: "A".into(),
                exclude: true,
                values: vec![]
            })),
            vec![Code::BadFilter]
        );

        let mut spec = base.clone();
        spec.fields[0].name = "line\nbreak".into();
        assert_eq!(codes(&spec), vec![Code::BadField]);

        let mut spec = base;
        spec.sorts.push(Sort {
            limit: Some(0),
            ..Sort::by("A")
        });
        assert_eq!(codes(&spec), vec![Code::BadSort]);
    }

    #[test]
    fn subject_paths() {
        assert_eq!(Subject::Filter(0, None).json_path(), "filters[0]");
        assert_eq!(
            Subject::Field(1, Some("fieldName")).json_path(),
            "fields[1].fieldName"
        );
        assert_eq!(Subject::Sort(2, Some("limit")).json_path(), "sort[2].limit");
    }

    #[test]
    fn deterministic_and_non_mutating() {
        let spec = example_spec();
        let before = spec.clone();
        let a = validate(&spec);
        let b = validate(&spec);
        assert_eq!(a, b);
        assert_eq!(spec, before);
    }
}
