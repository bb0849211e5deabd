//! Typed representation of a visualization spec.
//!
//! A [`VizSpec`] is what both the shorthand and the full-spec JSON describe:
//! an ordered list of fields, optional filters and sorts, and an optional
//! chart type. All values are plain data; cross-element rules live in
//! [`validate`].

mod diagnostic;
mod keywords;
mod validate;

pub use diagnostic::{has_errors, Code, Diagnostic, Severity};
pub use keywords::{Aggregation, ChartType, DateUnit, Direction, Encoding};
pub use validate::validate;
pub(crate) use validate::{check, Subject};

use std::fmt;

use thiserror::Error;

/// Field type code: continuous measure, continuous dimension, discrete
/// dimension, or none given.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FieldType {
    Cm,
    Cd,
    Dd,
    #[default]
    Unspecified,
}

impl FieldType {
    pub const ALL: &'static [FieldType] = &[
        FieldType::Cm,
        FieldType::Cd,
        FieldType::Dd,
        FieldType::Unspecified,
    ];

    /// Shorthand code, or `None` for [`FieldType::Unspecified`].
    pub fn code(self) -> Option<&'static str> {
        match self {
            FieldType::Cm => Some("cm"),
            FieldType::Cd => Some("cd"),
            FieldType::Dd => Some("dd"),
            FieldType::Unspecified => None,
        }
    }

    pub fn from_code(s: &str) -> Option<Self> {
        match s {
            "cm" => Some(FieldType::Cm),
            "cd" => Some(FieldType::Cd),
            "dd" => Some(FieldType::Dd),
            _ => None,
        }
    }
}

impl fmt::Display for FieldType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code().unwrap_or("unspecified"))
    }
}

/// One dataset field used by the visualization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Field {
    pub name: String,
    pub field_type: FieldType,
    pub aggregation: Option<Aggregation>,
    pub encoding: Option<Encoding>,
}

impl Field {
    pub fn new(name: impl Into<String>, field_type: FieldType) -> Self {
        Field {
            name: name.into(),
            field_type,
            aggregation: None,
            encoding: None,
        }
    }

    pub fn aggregated(mut self, aggregation: Aggregation) -> Self {
        self.aggregation = Some(aggregation);
        self
    }

    pub fn encoded(mut self, encoding: Encoding) -> Self {
        self.encoding = Some(encoding);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Filter {
    /// Keep (or with `exclude`, drop) rows whose field is one of `values`.
    Categorical {
        field_name: String,
        exclude: bool,
        values: Vec<String>,
    },
    /// The last `duration` `units`, e.g. the last 2 years.
    RelativeDate {
        field_name: String,
        duration: u64,
        units: DateUnit,
    },
    /// ISO-8601 bounds; a missing bound leaves that side open.
    DateRange {
        field_name: String,
        start: Option<String>,
        end: Option<String>,
    },
    NumericRange {
        field_name: String,
        aggregation: Option<Aggregation>,
        start: Option<f64>,
        end: Option<f64>,
    },
}

impl Filter {
    pub fn field_name(&self) -> &str {
        match self {
            Filter::Categorical { field_name, .. }
            | Filter::RelativeDate { field_name, .. }
            | Filter::DateRange { field_name, .. }
            | Filter::NumericRange { field_name, .. } => field_name,
        }
    }

    /// The shorthand line prefix, which doubles as a short kind label.
    pub fn prefix(&self) -> &'static str {
        match self {
            Filter::Categorical { .. } => "cat",
            Filter::RelativeDate { .. } => "rd",
            Filter::DateRange { .. } => "dr",
            Filter::NumericRange { .. } => "nr",
        }
    }
}

/// Sort `field_name` (or the whole view) by `sort_by_field`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sort {
    pub sort_by_field: String,
    pub aggregation: Option<Aggregation>,
    pub direction: Option<Direction>,
    pub limit: Option<u64>,
    pub field_name: Option<String>,
}

impl Sort {
    pub fn by(sort_by_field: impl Into<String>) -> Self {
        Sort {
            sort_by_field: sort_by_field.into(),
            aggregation: None,
            direction: None,
            limit: None,
            field_name: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VizSpec {
    pub fields: Vec<Field>,
    pub filters: Vec<Filter>,
    pub sorts: Vec<Sort>,
    pub chart_type: Option<ChartType>,
}

impl VizSpec {
    pub fn with_fields(fields: Vec<Field>) -> Self {
        VizSpec {
            fields,
            ..VizSpec::default()
        }
    }
}

/// A spec that cannot be serialized because it has validation errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid spec: {code} at {path}: {message}")]
pub struct InvalidSpec {
    pub code: Code,
    pub path: String,
    pub message: String,
}

/// Returns the spec's warnings, or the first error as an [`InvalidSpec`].
pub fn ensure_valid(spec: &VizSpec) -> Result<Vec<Diagnostic>, InvalidSpec> {
    let findings = check(spec);
    if let Some((subject, d)) = findings.iter().find(|(_, d)| d.is_error()) {
        return Err(InvalidSpec {
            code: d.code,
            path: subject.json_path(),
            message: d.message.clone(),
        });
    }
    Ok(findings.into_iter().map(|(_, d)| d).collect())
}
