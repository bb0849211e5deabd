//! Conversion between [`VizSpec`] and the verbose JSON full-spec document.
//!
//! Document layout (keys in output order):
//!
//! ```text
//! { "fields":  [ {fieldName, aggregation?, encoding?, role, type, dataType} ],
//!   "filters": [ {filterType: categorical,   fieldName, exclude?, values}
//!              | {filterType: relative-date, fieldName, duration, units}
//!              | {filterType: date-range,    fieldName, start?, end?}
//!              | {filterType: numeric-range, fieldName, aggregation?, start?, end?} ],
//!   "sort":    [ {fieldName?, sortByField, aggregation?, direction?, limit?} ],
//!   "chartType": "<chart keyword>" }
//! ```
//!
//! `filters`, `sort` and `chartType` appear only when non-empty / present.
//! Absent optional values are omitted, never `null`. `exclude` is written
//! only when true. The `exclude`, `date-range` and `chartType` shapes are
//! extensions that follow the pattern of the other entries.

mod locate;

pub use locate::locate;

use serde_json::{Map, Number, Value};

use crate::model::{
    self, ensure_valid, has_errors, Aggregation, ChartType, Code, DateUnit, Diagnostic, Direction,
    Encoding, Field, FieldType, Filter, InvalidSpec, Sort, VizSpec,
};

keyword_enum! {
    Role {
        Dimension => "dimension",
        Measure => "measure",
    }
}

keyword_enum! {
    /// The full spec's `type` attribute.
    Continuity {
        Continuous => "continuous",
        Discrete => "discrete",
    }
}

keyword_enum! {
    DataType {
        Date => "date",
        Number => "number",
        String => "string",
    }
}

keyword_enum! {
    FilterKind {
        Categorical => "categorical",
        RelativeDate => "relative-date",
        DateRange => "date-range",
        NumericRange => "numeric-range",
    }
}

/// The three per-field attributes the full spec carries and the shorthand
/// encodes as a single type code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldAttrs {
    pub role: Role,
    pub continuity: Continuity,
    pub data_type: DataType,
}

/// Attributes implied by a type code. Fields without a code get the
/// discrete-dimension defaults; [`to_full_spec`] warns about those.
pub fn infer_field_attrs(field_type: FieldType) -> FieldAttrs {
    let (role, continuity, data_type) = match field_type {
        FieldType::Cm => (Role::Measure, Continuity::Continuous, DataType::Number),
        FieldType::Cd => (Role::Dimension, Continuity::Continuous, DataType::Date),
        FieldType::Dd | FieldType::Unspecified => {
            (Role::Dimension, Continuity::Discrete, DataType::String)
        }
    };
    FieldAttrs {
        role,
        continuity,
        data_type,
    }
}

/// Inverse of [`infer_field_attrs`] on (role, type); `None` for
/// measure + discrete, which no code produces.
pub fn field_type_for(role: Role, continuity: Continuity) -> Option<FieldType> {
    match (role, continuity) {
        (Role::Measure, Continuity::Continuous) => Some(FieldType::Cm),
        (Role::Dimension, Continuity::Continuous) => Some(FieldType::Cd),
        (Role::Dimension, Continuity::Discrete) => Some(FieldType::Dd),
        (Role::Measure, Continuity::Discrete) => None,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Encoded {
    pub document: Value,
    pub warnings: Vec<Diagnostic>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decoded {
    pub spec: VizSpec,
    pub warnings: Vec<Diagnostic>,
}

/// JSON numbers for bounds: integral values within the exactly
/// representable range are written as integers, as in hand-written specs.
fn number(v: f64) -> Value {
    const EXACT: f64 = 9_007_199_254_740_992.0; // 2^53
    if v.fract() == 0.0 && v.abs() < EXACT {
        Value::from(v as i64)
    } else {
        Number::from_f64(v).map_or(Value::Null, Value::Number)
    }
}

fn text(s: impl Into<String>) -> Value {
    Value::String(s.into())
}

pub fn to_full_spec(spec: &VizSpec) -> Result<Encoded, InvalidSpec> {
    let mut warnings: Vec<Diagnostic> = ensure_valid(spec)?;
    let mut root = Map::new();

    let fields = spec
        .fields
        .iter()
        .enumerate()
        .map(|(i, field)| {
            if field.field_type == FieldType::Unspecified {
                warnings.push(
                    Diagnostic::warning(
                        Code::UnspecifiedFieldType,
                        format!(
                            "field \"{}\" has no type code; written as a discrete string dimension",
                            field.name
                        ),
                    )
                    .with_path(format!("fields[{i}]")),
                );
            }
            field_object(field)
        })
        .collect();
    root.insert("fields".into(), Value::Array(fields));

    if !spec.filters.is_empty() {
        let filters = spec.filters.iter().map(filter_object).collect();
        root.insert("filters".into(), Value::Array(filters));
    }
    if !spec.sorts.is_empty() {
        let sorts = spec.sorts.iter().map(sort_object).collect();
        root.insert("sort".into(), Value::Array(sorts));
    }
    if let Some(chart) = spec.chart_type {
        root.insert("chartType".into(), text(chart.keyword()));
    }
    Ok(Encoded {
        document: Value::Object(root),
        warnings,
    })
}

fn field_object(field: &Field) -> Value {
    let attrs = infer_field_attrs(field.field_type);
    let mut m = Map::new();
    m.insert("fieldName".into(), text(&field.name));
    if let Some(agg) = field.aggregation {
        m.insert("aggregation".into(), text(agg.keyword()));
    }
    if let Some(enc) = field.encoding {
        m.insert("encoding".into(), text(enc.keyword()));
    }
    m.insert("role".into(), text(attrs.role.keyword()));
    m.insert("type".into(), text(attrs.continuity.keyword()));
    m.insert("dataType".into(), text(attrs.data_type.keyword()));
    Value::Object(m)
}

fn filter_object(filter: &Filter) -> Value {
    let mut m = Map::new();
    let kind = match filter {
        Filter::Categorical { .. } => FilterKind::Categorical,
        Filter::RelativeDate { .. } => FilterKind::RelativeDate,
        Filter::DateRange { .. } => FilterKind::DateRange,
        Filter::NumericRange { .. } => FilterKind::NumericRange,
    };
    m.insert("filterType".into(), text(kind.keyword()));
    m.insert("fieldName".into(), text(filter.field_name()));
    match filter {
        Filter::Categorical {
            exclude, values, ..
        } => {
            if *exclude {
                m.insert("exclude".into(), Value::Bool(true));
            }
            m.insert(
                "values".into(),
                Value::Array(values.iter().map(text).collect()),
            );
        }
        Filter::RelativeDate {
            duration, units, ..
        } => {
            m.insert("duration".into(), Value::from(*duration));
            m.insert("units".into(), text(units.keyword()));
        }
        Filter::DateRange { start, end, .. } => {
            if let Some(s) = start {
                m.insert("start".into(), text(s));
            }
            if let Some(e) = end {
                m.insert("end".into(), text(e));
            }
        }
        Filter::NumericRange {
            aggregation,
            start,
            end,
            ..
        } => {
            if let Some(agg) = aggregation {
                m.insert("aggregation".into(), text(agg.keyword()));
            }
            if let Some(s) = start {
                m.insert("start".into(), number(*s));
            }
            if let Some(e) = end {
                m.insert("end".into(), number(*e));
            }
        }
    }
    Value::Object(m)
}

fn sort_object(sort: &Sort) -> Value {
    let mut m = Map::new();
    if let Some(name) = &sort.field_name {
        m.insert("fieldName".into(), text(name));
    }
    m.insert("sortByField".into(), text(&sort.sort_by_field));
    if let Some(agg) = sort.aggregation {
        m.insert("aggregation".into(), text(agg.keyword()));
    }
    if let Some(dir) = sort.direction {
        m.insert("direction".into(), text(dir.keyword()));
    }
    if let Some(limit) = sort.limit {
        m.insert("limit".into(), Value::from(limit));
    }
    Value::Object(m)
}

/// Pretty JSON with two-space indentation and a trailing newline.
pub fn to_json_text(document: &Value) -> String {
    let mut s = serde_json::to_string_pretty(document).expect("Value always serializes");
    s.push('\n');
    s
}

fn child(parent: &str, key: &str) -> String {
    if parent == "$" {
        key.to_owned()
    } else {
        format!("{parent}.{key}")
    }
}

/// Walks a document, collecting diagnostics instead of stopping at the first.
#[derive(Default)]
struct Decoder {
    diagnostics: Vec<Diagnostic>,
}

impl Decoder {
    fn error(&mut self, code: Code, path: String, message: impl Into<String>) {
        self.diagnostics
            .push(Diagnostic::error(code, message).with_path(path));
    }

    fn object<'v>(&mut self, v: &'v Value, path: &str) -> Option<&'v Map<String, Value>> {
        let m = v.as_object();
        if m.is_none() {
            self.error(Code::BadType, path.to_owned(), "expected an object");
        }
        m
    }

    fn unknown_keys(&mut self, m: &Map<String, Value>, path: &str, known: &[&str]) {
        for key in m.keys().filter(|k| !known.contains(&k.as_str())) {
            self.diagnostics.push(
                Diagnostic::warning(Code::UnknownKey, format!("unknown key `{key}` ignored"))
                    .with_path(child(path, key)),
            );
        }
    }

    /// `Some(None)` when absent or null; `None` after reporting a type error.
    fn opt_str<'v>(
        &mut self,
        m: &'v Map<String, Value>,
        path: &str,
        key: &str,
    ) -> Option<Option<&'v str>> {
        match m.get(key) {
            None | Some(Value::Null) => Some(None),
            Some(Value::String(s)) => Some(Some(s)),
            Some(_) => {
                self.error(Code::BadType, child(path, key), "expected a string");
                None
            }
        }
    }

    fn req_str<'v>(&mut self, m: &'v Map<String, Value>, path: &str, key: &str) -> Option<&'v str> {
        let v = self.opt_str(m, path, key)?;
        if v.is_none() {
            self.error(
                Code::MissingKey,
                child(path, key),
                format!("required key `{key}` is missing"),
            );
        }
        v
    }

    fn opt_enum<T>(
        &mut self,
        m: &Map<String, Value>,
        path: &str,
        key: &str,
        parse: fn(&str) -> Option<T>,
    ) -> Option<Option<T>> {
        match self.opt_str(m, path, key)? {
            None => Some(None),
            Some(s) => match parse(s) {
                Some(v) => Some(Some(v)),
                None => {
                    self.error(
                        Code::BadEnum,
                        child(path, key),
                        format!("`{s}` is not a valid {key}"),
                    );
                    None
                }
            },
        }
    }

    fn req_enum<T>(
        &mut self,
        m: &Map<String, Value>,
        path: &str,
        key: &str,
        parse: fn(&str) -> Option<T>,
    ) -> Option<T> {
        let s = self.req_str(m, path, key)?;
        let v = parse(s);
        if v.is_none() {
            self.error(
                Code::BadEnum,
                child(path, key),
                format!("`{s}` is not a valid {key}"),
            );
        }
        v
    }

    fn opt_number(&mut self, m: &Map<String, Value>, path: &str, key: &str) -> Option<Option<f64>> {
        match m.get(key) {
            None | Some(Value::Null) => Some(None),
            Some(Value::Number(n)) => Some(n.as_f64()),
            Some(_) => {
                self.error(Code::BadType, child(path, key), "expected a number");
                None
            }
        }
    }

    fn opt_count(&mut self, m: &Map<String, Value>, path: &str, key: &str) -> Option<Option<u64>> {
        let n = match m.get(key) {
            None | Some(Value::Null) => return Some(None),
            Some(Value::Number(n)) => n,
            Some(_) => {
                self.error(Code::BadType, child(path, key), "expected an integer");
                return None;
            }
        };
        let v = n.as_u64().or_else(|| {
            n.as_f64()
                .filter(|f| f.fract() == 0.0 && *f >= 0.0 && *f <= u64::MAX as f64)
                .map(|f| f as u64)
        });
        if v.is_none() {
            self.error(
                Code::BadType,
                child(path, key),
                format!("expected a non-negative integer, found {n}"),
            );
        }
        v.map(Some)
    }

    fn req_count(&mut self, m: &Map<String, Value>, path: &str, key: &str) -> Option<u64> {
        let v = self.opt_count(m, path, key)?;
        if v.is_none() {
            self.error(
                Code::MissingKey,
                child(path, key),
                format!("required key `{key}` is missing"),
            );
        }
        v
    }

    fn array<'v>(&mut self, v: &'v Value, path: &str) -> Option<&'v Vec<Value>> {
        let a = v.as_array();
        if a.is_none() {
            self.error(Code::BadType, path.to_owned(), "expected an array");
        }
        a
    }

    fn field(&mut self, v: &Value, path: &str) -> Option<Field> {
        let m = self.object(v, path)?;
        self.unknown_keys(
            m,
            path,
            &[
                "fieldName",
                "aggregation",
                "encoding",
                "role",
                "type",
                "dataType",
            ],
        );
        let name = self.req_str(m, path, "fieldName");
        let aggregation = self.opt_enum(m, path, "aggregation", Aggregation::from_keyword);
        let encoding = self.opt_enum(m, path, "encoding", Encoding::from_keyword);
        let role = self.req_enum(m, path, "role", Role::from_keyword);
        let continuity = self.req_enum(m, path, "type", Continuity::from_keyword);
        let data_type = self.req_enum(m, path, "dataType", DataType::from_keyword);
        let (name, aggregation, encoding, role, continuity, data_type) = (
            name?,
            aggregation?,
            encoding?,
            role?,
            continuity?,
            data_type?,
        );

        let Some(field_type) = field_type_for(role, continuity) else {
            self.error(
                Code::BadFieldAttrs,
                path.to_owned(),
                format!("role `{role}` with type `{continuity}` matches no field type code"),
            );
            return None;
        };
        let implied = infer_field_attrs(field_type).data_type;
        if implied != data_type {
            self.error(
                Code::BadFieldAttrs,
                child(path, "dataType"),
                format!(
                    "dataType `{data_type}` conflicts with {role}/{continuity}, which implies `{implied}`"
                ),
            );
            return None;
        }
        Some(Field {
            name: name.to_owned(),
            field_type,
            aggregation,
            encoding,
        })
    }

    fn filter(&mut self, v: &Value, path: &str) -> Option<Filter> {
        let m = self.object(v, path)?;
        let kind = self.req_enum(m, path, "filterType", FilterKind::from_keyword);
        let name = self.req_str(m, path, "fieldName");
        let kind = kind?;
        let known: &[&str] = match kind {
            FilterKind::Categorical => &["filterType", "fieldName", "exclude", "values"],
            FilterKind::RelativeDate => &["filterType", "fieldName", "duration", "units"],
            FilterKind::DateRange => &["filterType", "fieldName", "start", "end"],
            FilterKind::NumericRange => &["filterType", "fieldName", "aggregation", "start", "end"],
        };
        self.unknown_keys(m, path, known);
        let field_name = name?.to_owned();
        match kind {
            FilterKind::Categorical => {
                let exclude = match m.get("exclude") {
                    None | Some(Value::Null) => Some(false),
                    Some(Value::Bool(b)) => Some(*b),
                    Some(_) => {
                        self.error(Code::BadType, child(path, "exclude"), "expected a boolean");
                        None
                    }
                };
                let values_path = child(path, "values");
                let values = match m.get("values") {
                    None => {
                        self.error(
                            Code::MissingKey,
                            values_path,
                            "required key `values` is missing",
                        );
                        None
                    }
                    Some(v) => {
                        let items = self.array(v, &values_path)?;
                        let mut out = Vec::with_capacity(items.len());
                        for (i, item) in items.iter().enumerate() {
                            match item.as_str() {
                                Some(s) => out.push(s.to_owned()),
                                None => {
                                    self.error(
                                        Code::BadType,
                                        format!("{values_path}[{i}]"),
                                        "expected a string",
                                    );
                                    return None;
                                }
                            }
                        }
                        Some(out)
                    }
                };
                Some(Filter::Categorical {
                    field_name,
                    exclude: exclude?,
                    values: values?,
                })
            }
            FilterKind::RelativeDate => {
                let duration = self.req_count(m, path, "duration");
                let units = self.req_enum(m, path, "units", DateUnit::from_keyword);
                Some(Filter::RelativeDate {
                    field_name,
                    duration: duration?,
                    units: units?,
                })
            }
            FilterKind::DateRange => {
                let start = self.opt_str(m, path, "start");
                let end = self.opt_str(m, path, "end");
                Some(Filter::DateRange {
                    field_name,
                    start: start?.map(str::to_owned),
                    end: end?.map(str::to_owned),
                })
            }
            FilterKind::NumericRange => {
                let aggregation = self.opt_enum(m, path, "aggregation", Aggregation::from_keyword);
                let start = self.opt_number(m, path, "start");
                let end = self.opt_number(m, path, "end");
                Some(Filter::NumericRange {
                    field_name,
                    aggregation: aggregation?,
                    start: start?,
                    end: end?,
                })
            }
        }
    }

    fn sort(&mut self, v: &Value, path: &str) -> Option<Sort> {
        let m = self.object(v, path)?;
        self.unknown_keys(
            m,
            path,
            &[
                "fieldName",
                "sortByField",
                "aggregation",
                "direction",
                "limit",
            ],
        );
        let field_name = self.opt_str(m, path, "fieldName");
        let by = self.req_str(m, path, "sortByField");
        let aggregation = self.opt_enum(m, path, "aggregation", Aggregation::from_keyword);
        let direction = self.opt_enum(m, path, "direction", Direction::from_keyword);
        let limit = self.opt_count(m, path, "limit");
        Some(Sort {
            sort_by_field: by?.to_owned(),
            aggregation: aggregation?,
            direction: direction?,
            limit: limit?,
            field_name: field_name?.map(str::to_owned),
        })
    }

    fn list<T>(
        &mut self,
        root: &Map<String, Value>,
        key: &str,
        item: fn(&mut Self, &Value, &str) -> Option<T>,
    ) -> Vec<T> {
        let Some(v) = root.get(key).filter(|v| !v.is_null()) else {
            return Vec::new();
        };
        let Some(items) = self.array(v, key) else {
            return Vec::new();
        };
        items
            .iter()
            .enumerate()
            .filter_map(|(i, v)| item(self, v, &format!("{key}[{i}]")))
            .collect()
    }

    fn spec(&mut self, doc: &Value) -> Option<VizSpec> {
        let root = self.object(doc, "$")?;
        self.unknown_keys(root, "$", &["fields", "filters", "sort", "chartType"]);
        if !root.contains_key("fields") {
            self.error(
                Code::MissingKey,
                "fields".into(),
                "required key `fields` is missing",
            );
        }
        let fields = self.list(root, "fields", Self::field);
        let filters = self.list(root, "filters", Self::filter);
        let sorts = self.list(root, "sort", Self::sort);
        let chart_type = self.opt_enum(root, "$", "chartType", ChartType::from_keyword)?;
        Some(VizSpec {
            fields,
            filters,
            sorts,
            chart_type,
        })
    }
}

/// Reads a full-spec document into a spec.
///
/// Every problem is reported, each with the document path it concerns.
/// Diagnostics are positioned at 1:1; use [`from_full_spec_text`] to get
/// source positions.
pub fn from_full_spec(doc: &Value) -> Result<Decoded, Vec<Diagnostic>> {
    let mut decoder = Decoder::default();
    let spec = decoder.spec(doc);
    let mut diagnostics = decoder.diagnostics;
    let spec = match spec {
        Some(spec) if !has_errors(&diagnostics) => spec,
        _ => {
            diagnostics.retain(Diagnostic::is_error);
            return Err(diagnostics);
        }
    };
    for (subject, d) in model::check(&spec) {
        diagnostics.push(d.with_path(subject.json_path()));
    }
    if has_errors(&diagnostics) {
        diagnostics.retain(Diagnostic::is_error);
        Err(diagnostics)
    } else {
        Ok(Decoded {
            spec,
            warnings: diagnostics,
        })
    }
}

/// Parses JSON text and decodes it, positioning every diagnostic at the
/// source location of the value its path names.
pub fn from_full_spec_text(text: &str) -> Result<Decoded, Vec<Diagnostic>> {
    let doc: Value = serde_json::from_str(text).map_err(|e| {
        vec![Diagnostic::error(Code::BadJson, e.to_string()).at(e.line(), e.column())]
    })?;
    let place = |d: Diagnostic| match d.path.as_deref().and_then(|p| locate(text, p)) {
        Some((line, column)) => d.at(line, column),
        None => d,
    };
    match from_full_spec(&doc) {
        Ok(decoded) => Ok(Decoded {
            spec: decoded.spec,
            warnings: decoded.warnings.into_iter().map(place).collect(),
        }),
        Err(diags) => Err(diags.into_iter().map(place).collect()),
    }
}
