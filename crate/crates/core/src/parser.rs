//! Recursive-descent parser from shorthand text to [`VizSpec`].
//!
//! The document is a sequence of sections in fixed order:
//!
//! ```text
//! fields:            one or more field lines
//! filters:           optional; cat / rd / dr / nr lines
//! sort:              optional; sort lines
//! chart:             optional; exactly one chart keyword
//! ```
//!
//! Errors are reported per line: after the first problem on a line the
//! parser skips to the next line and keeps going, so one run can report
//! several diagnostics.

use std::collections::HashMap;

use crate::isodate;
use crate::lexer::{lex, Token, TokenKind};
use crate::model::{
    self, has_errors, Aggregation, ChartType, Code, DateUnit, Diagnostic, Direction, Encoding,
    Field, FieldType, Filter, Sort, Subject, VizSpec,
};

/// Result of a full parse: the spec when there were no errors, plus every
/// diagnostic (warnings included) in source order.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseOutput {
    pub spec: Option<VizSpec>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Parses shorthand, returning the spec or every error found.
pub fn parse(text: &str) -> Result<VizSpec, Vec<Diagnostic>> {
    let out = parse_with_diagnostics(text);
    match out.spec {
        Some(spec) => Ok(spec),
        None => Err(out
            .diagnostics
            .into_iter()
            .filter(Diagnostic::is_error)
            .collect()),
    }
}

pub fn parse_with_diagnostics(text: &str) -> ParseOutput {
    let tokens = match lex(text) {
        Ok(tokens) => tokens,
        Err(diagnostics) => {
            return ParseOutput {
                spec: None,
                diagnostics,
            }
        }
    };
    let mut parser = Parser::default();
    parser.run(&tokens);
    parser.finish()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    Fields,
    Filters,
    Sort,
    Chart,
}

impl Section {
    fn from_header(word: &str) -> Option<Self> {
        match word {
            "fields:" => Some(Section::Fields),
            "filters:" => Some(Section::Filters),
            "sort:" => Some(Section::Sort),
            "chart:" => Some(Section::Chart),
            _ => None,
        }
    }

    fn header(self) -> &'static str {
        match self {
            Section::Fields => "fields:",
            Section::Filters => "filters:",
            Section::Sort => "sort:",
            Section::Chart => "chart:",
        }
    }
}

type Pos = (usize, usize);

fn pos(t: &Token) -> Pos {
    (t.line, t.column)
}

/// Source positions of one parsed item, keyed by full-spec key name.
#[derive(Debug, Default)]
struct Spans {
    start: Pos,
    keys: HashMap<&'static str, Pos>,
}

impl Spans {
    fn new(start: &Token) -> Self {
        Spans {
            start: pos(start),
            keys: HashMap::new(),
        }
    }

    fn mark(&mut self, key: &'static str, t: &Token) {
        self.keys.insert(key, pos(t));
    }

    fn locate(&self, key: Option<&'static str>) -> Pos {
        key.and_then(|k| self.keys.get(k).copied())
            .unwrap_or(self.start)
    }
}

/// Every bare word the grammar knows, in any position.
fn is_vocabulary(word: &str) -> bool {
    FieldType::from_code(word).is_some()
        || Aggregation::from_keyword(word).is_some()
        || Encoding::from_keyword(word).is_some()
        || DateUnit::from_keyword(word).is_some()
        || Direction::from_keyword(word).is_some()
        || ChartType::from_keyword(word).is_some()
        || Section::from_header(word).is_some()
        || matches!(
            word,
            "cat" | "rd" | "dr" | "nr" | "ex" | "values" | "start" | "end"
        )
}

fn err(code: Code, t: &Token, message: impl Into<String>) -> Diagnostic {
    Diagnostic::error(code, message).at(t.line, t.column)
}

/// Cursor over the tokens of one line. Reading past the end yields the
/// line terminator (newline or end of input).
struct Line<'a> {
    tokens: &'a [Token],
    end: &'a Token,
    i: usize,
}

impl<'a> Line<'a> {
    fn peek(&self) -> &'a Token {
        self.tokens.get(self.i).unwrap_or(self.end)
    }

    fn next(&mut self) -> &'a Token {
        let t = self.peek();
        self.i += 1;
        t
    }

    fn at_end(&self) -> bool {
        self.i >= self.tokens.len()
    }

    /// Consumes the next token if it is a keyword accepted by `f`.
    fn keyword<T>(&mut self, f: impl Fn(&str) -> Option<T>) -> Option<(T, &'a Token)> {
        let t = self.peek();
        if t.kind != TokenKind::Keyword {
            return None;
        }
        let v = f(&t.lexeme)?;
        self.i += 1;
        Some((v, t))
    }

    fn eat(&mut self, word: &str) -> Option<&'a Token> {
        self.keyword(|w| (w == word).then_some(())).map(|(_, t)| t)
    }

    fn quoted(&mut self) -> Option<&'a Token> {
        let t = self.peek();
        (t.kind == TokenKind::QuotedString).then(|| {
            self.i += 1;
            t
        })
    }

    fn expect_quoted(&mut self, code: Code, what: &str) -> Result<&'a Token, Diagnostic> {
        let t = self.peek();
        self.quoted().ok_or_else(|| {
            err(
                code,
                t,
                format!("expected quoted {what}, found {}", t.describe()),
            )
        })
    }

    fn expect_end(&self, code: Code) -> Result<(), Diagnostic> {
        if self.at_end() {
            Ok(())
        } else {
            let t = self.peek();
            Err(err(code, t, format!("unexpected {}", t.describe())))
        }
    }
}

fn positive_integer(t: &Token, code: Code, what: &str) -> Result<u64, Diagnostic> {
    if t.kind != TokenKind::Number {
        return Err(err(
            code,
            t,
            format!("expected {what}, found {}", t.describe()),
        ));
    }
    match t.lexeme.parse::<u64>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(err(
            code,
            t,
            format!("{what} must be a positive integer, found `{}`", t.lexeme),
        )),
    }
}

fn finite_number(t: &Token, code: Code) -> Result<f64, Diagnostic> {
    if t.kind != TokenKind::Number {
        return Err(err(
            code,
            t,
            format!("expected a number, found {}", t.describe()),
        ));
    }
    t.lexeme
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| err(code, t, format!("number `{}` is out of range", t.lexeme)))
}

#[derive(Default)]
struct Parser {
    spec: VizSpec,
    field_spans: Vec<Spans>,
    filter_spans: Vec<Spans>,
    sort_spans: Vec<Spans>,
    diagnostics: Vec<Diagnostic>,
    section: Option<Section>,
    highest: Option<Section>,
    fields_header: Option<Pos>,
    chart_header: Option<Pos>,
    missing_fields_reported: bool,
    field_lines: usize,
    chart_lines: usize,
    first_token: Option<Pos>,
}

impl Parser {
    fn run(&mut self, tokens: &[Token]) {
        let (eoi, body) = tokens
            .split_last()
            .expect("lexer always ends with end of input");
        self.first_token = Some(pos(tokens.first().unwrap_or(eoi)));
        let mut start = 0;
        for (i, t) in body.iter().enumerate() {
            if t.is(TokenKind::Newline) {
                self.line(&body[start..i], t);
                start = i + 1;
            }
        }
        self.line(&body[start..], eoi);

        let at_start = self.first_token.unwrap_or((1, 1));
        if self.fields_header.is_none() && !self.missing_fields_reported {
            self.diagnostics.push(
                Diagnostic::error(Code::MissingFields, "input has no `fields:` section")
                    .at(at_start.0, at_start.1),
            );
        } else if let Some((l, c)) = self.fields_header {
            if self.field_lines == 0 {
                self.diagnostics.push(
                    Diagnostic::error(Code::MissingFields, "`fields:` section has no field lines")
                        .at(l, c),
                );
            }
        }
        if let Some((l, c)) = self.chart_header {
            if self.chart_lines == 0 {
                self.diagnostics.push(
                    Diagnostic::error(Code::BadChart, "`chart:` section has no chart type")
                        .at(l, c),
                );
            }
        }
    }

    fn line(&mut self, tokens: &[Token], end: &Token) {
        if tokens.is_empty() {
            return;
        }
        let mut line = Line { tokens, end, i: 0 };
        let first = line.peek();
        if first.kind == TokenKind::Keyword {
            if let Some(section) = Section::from_header(&first.lexeme) {
                line.next();
                self.enter(section, first);
                if !line.at_end() {
                    self.content(&mut line);
                }
                return;
            }
        }
        if self.section.is_none() {
            self.missing_fields_reported = true;
            self.diagnostics.push(err(
                Code::MissingFields,
                first,
                format!("expected `fields:` header, found {}", first.describe()),
            ));
            self.section = Some(Section::Fields);
            self.highest = Some(Section::Fields);
        }
        self.content(&mut line);
    }

    fn enter(&mut self, section: Section, header: &Token) {
        match self.highest {
            None if section != Section::Fields => {
                self.missing_fields_reported = true;
                self.diagnostics.push(err(
                    Code::MissingFields,
                    header,
                    format!(
                        "`{}` appears before any `fields:` section",
                        section.header()
                    ),
                ));
            }
            Some(highest) if section <= highest => {
                self.diagnostics.push(err(
                    Code::SectionOrder,
                    header,
                    format!(
                        "`{}` must come before `{}` and may appear only once",
                        section.header(),
                        highest.header()
                    ),
                ));
            }
            _ => {}
        }
        match section {
            Section::Fields if self.fields_header.is_none() => {
                self.fields_header = Some(pos(header))
            }
            Section::Chart if self.chart_header.is_none() => self.chart_header = Some(pos(header)),
            _ => {}
        }
        self.section = Some(section);
        self.highest = self.highest.max(Some(section));
    }

    fn content(&mut self, line: &mut Line<'_>) {
        let result = match self.section.unwrap_or(Section::Fields) {
            Section::Fields => {
                self.field_lines += 1;
                field_line(line).map(|(f, s)| {
                    self.spec.fields.push(f);
                    self.field_spans.push(s);
                })
            }
            Section::Filters => filter_line(line).map(|(f, s)| {
                self.spec.filters.push(f);
                self.filter_spans.push(s);
            }),
            Section::Sort => sort_line(line).map(|(s, spans)| {
                self.spec.sorts.push(s);
                self.sort_spans.push(spans);
            }),
            Section::Chart => {
                self.chart_lines += 1;
                if self.chart_lines > 1 {
                    Err(err(
                        Code::BadChart,
                        line.peek(),
                        "`chart:` takes exactly one chart type",
                    ))
                } else {
                    chart_line(line).map(|c| self.spec.chart_type = Some(c))
                }
            }
        };
        if let Err(d) = result {
            self.diagnostics.push(d);
        }
    }

    fn finish(mut self) -> ParseOutput {
        for (subject, d) in model::check(&self.spec) {
            let (line, column) = match subject {
                Subject::FieldList => continue,
                Subject::Field(i, key) => self.field_spans[i].locate(key),
                Subject::Filter(i, key) => self.filter_spans[i].locate(key),
                Subject::Sort(i, key) => self.sort_spans[i].locate(key),
            };
            self.diagnostics.push(d.at(line, column));
        }
        self.diagnostics.sort_by_key(|d| (d.line, d.column));
        let spec = (!has_errors(&self.diagnostics)).then_some(self.spec);
        ParseOutput {
            spec,
            diagnostics: self.diagnostics,
        }
    }
}

/// `[cm|cd|dd] "name" [aggregation] [encoding]`
fn field_line(line: &mut Line<'_>) -> Result<(Field, Spans), Diagnostic> {
    let first = line.peek();
    let mut spans = Spans::new(first);
    let field_type = line
        .keyword(FieldType::from_code)
        .map_or(FieldType::Unspecified, |(ft, _)| ft);
    let name_tok = line.quoted().ok_or_else(|| {
        let t = line.peek();
        if t.kind == TokenKind::Keyword && !is_vocabulary(&t.lexeme) {
            err(
                Code::UnknownKeyword,
                t,
                format!("unknown keyword {}", t.describe()),
            )
        } else {
            err(
                Code::BadField,
                t,
                format!("expected quoted field name, found {}", t.describe()),
            )
        }
    })?;
    if name_tok.lexeme.is_empty() {
        return Err(err(Code::BadField, name_tok, "field name is empty"));
    }
    spans.mark("fieldName", name_tok);
    let mut field = Field::new(name_tok.lexeme.clone(), field_type);
    if let Some((agg, t)) = line.keyword(Aggregation::from_keyword) {
        spans.mark("aggregation", t);
        field.aggregation = Some(agg);
    }
    if let Some((enc, t)) = line.keyword(Encoding::from_keyword) {
        spans.mark("encoding", t);
        field.encoding = Some(enc);
    }
    if !line.at_end() {
        let t = line.peek();
        return Err(
            if t.kind == TokenKind::Keyword && !is_vocabulary(&t.lexeme) {
                err(
                    Code::UnknownKeyword,
                    t,
                    format!("unknown keyword {}", t.describe()),
                )
            } else {
                err(
                    Code::BadField,
                    t,
                    format!(
                        "unexpected {}; a field line is [type] \"name\" [aggregation] [encoding]",
                        t.describe()
                    ),
                )
            },
        );
    }
    Ok((field, spans))
}

fn filter_line(line: &mut Line<'_>) -> Result<(Filter, Spans), Diagnostic> {
    let head = line.next();
    let mut spans = Spans::new(head);
    if head.kind != TokenKind::Keyword {
        return Err(err(
            Code::BadFilter,
            head,
            format!("expected cat, rd, dr or nr, found {}", head.describe()),
        ));
    }
    let kind = head.lexeme.as_str();
    if !matches!(kind, "cat" | "rd" | "dr" | "nr") {
        let code = if is_vocabulary(kind) {
            Code::BadFilter
        } else {
            Code::UnknownKeyword
        };
        return Err(err(
            code,
            head,
            format!("expected cat, rd, dr or nr, found {}", head.describe()),
        ));
    }
    let name_tok = line.expect_quoted(Code::BadFilter, "field name")?;
    spans.mark("fieldName", name_tok);
    let field_name = name_tok.lexeme.clone();
    if field_name.is_empty() {
        return Err(err(Code::BadFilter, name_tok, "filter field name is empty"));
    }

    let filter = match kind {
        "cat" => {
            let exclude = line.eat("ex").is_some();
            let t = line.peek();
            line.eat("values").ok_or_else(|| {
                err(
                    Code::BadFilter,
                    t,
                    format!("expected `values`, found {}", t.describe()),
                )
            })?;
            let mut values = Vec::new();
            while let Some(v) = line.quoted() {
                if values.is_empty() {
                    spans.mark("values", v);
                }
                values.push(v.lexeme.clone());
            }
            if values.is_empty() {
                let t = line.peek();
                return Err(err(
                    Code::BadFilter,
                    t,
                    format!("expected at least one quoted value, found {}", t.describe()),
                ));
            }
            Filter::Categorical {
                field_name,
                exclude,
                values,
            }
        }
        "rd" => {
            let mut duration = None;
            let mut units = None;
            for _ in 0..2 {
                let t = line.next();
                match t.kind {
                    TokenKind::Number if duration.is_none() => {
                        spans.mark("duration", t);
                        duration = Some(positive_integer(t, Code::BadFilter, "duration")?);
                    }
                    TokenKind::Keyword if units.is_none() => {
                        let u = DateUnit::from_keyword(&t.lexeme).ok_or_else(|| {
                            err(
                                Code::BadFilter,
                                t,
                                format!(
                                    "unknown unit {}; expected days, weeks, months, quarters or years",
                                    t.describe()
                                ),
                            )
                        })?;
                        spans.mark("units", t);
                        units = Some(u);
                    }
                    _ => {
                        let wanted = if duration.is_none() {
                            "a duration"
                        } else {
                            "a unit"
                        };
                        return Err(err(
                            Code::BadFilter,
                            t,
                            format!("expected {wanted}, found {}", t.describe()),
                        ));
                    }
                }
            }
            Filter::RelativeDate {
                field_name,
                duration: duration.expect("loop fills both"),
                units: units.expect("loop fills both"),
            }
        }
        "dr" => {
            let mut bound = |key: &'static str| -> Result<Option<String>, Diagnostic> {
                if line.eat(key).is_none() {
                    return Ok(None);
                }
                let t = line.next();
                if t.kind != TokenKind::IsoDate {
                    return Err(err(
                        Code::BadFilter,
                        t,
                        format!(
                            "expected an ISO-8601 date after `{key}`, found {}",
                            t.describe()
                        ),
                    ));
                }
                isodate::check(&t.lexeme).map_err(|m| err(Code::BadFilter, t, m))?;
                spans.mark(key, t);
                Ok(Some(t.lexeme.clone()))
            };
            let start = bound("start")?;
            let end = bound("end")?;
            if start.is_none() && end.is_none() {
                return Err(err(
                    Code::BadFilter,
                    head,
                    "date-range filter needs `start` or `end`",
                ));
            }
            Filter::DateRange {
                field_name,
                start,
                end,
            }
        }
        _ => {
            let aggregation = line.keyword(Aggregation::from_keyword).map(|(a, t)| {
                spans.mark("aggregation", t);
                a
            });
            let mut bound = |key: &'static str| -> Result<Option<f64>, Diagnostic> {
                if line.eat(key).is_none() {
                    return Ok(None);
                }
                let t = line.next();
                let v = finite_number(t, Code::BadFilter)?;
                spans.mark(key, t);
                Ok(Some(v))
            };
            let start = bound("start")?;
            let end = bound("end")?;
            match (start, end) {
                (None, None) => {
                    if !line.at_end() {
                        let t = line.peek();
                        return Err(err(
                            Code::BadFilter,
                            t,
                            format!("expected `start` or `end`, found {}", t.describe()),
                        ));
                    }
                    return Err(err(
                        Code::BadFilter,
                        head,
                        "numeric-range filter needs `start` or `end`",
                    ));
                }
                (Some(s), Some(e)) if s > e => {
                    return Err(err(
                        Code::BadFilter,
                        head,
                        format!("numeric range start {s} exceeds end {e}"),
                    ))
                }
                _ => {}
            }
            Filter::NumericRange {
                field_name,
                aggregation,
                start,
                end,
            }
        }
    };
    line.expect_end(Code::BadFilter)?;
    Ok((filter, spans))
}

/// `"sortBy" [aggregation] [asc|desc] [limit] ["field"]`
fn sort_line(line: &mut Line<'_>) -> Result<(Sort, Spans), Diagnostic> {
    let first = line.peek();
    let mut spans = Spans::new(first);
    if first.kind == TokenKind::Keyword && !is_vocabulary(&first.lexeme) {
        return Err(err(
            Code::UnknownKeyword,
            first,
            format!("unknown keyword {}", first.describe()),
        ));
    }
    let by = line.expect_quoted(Code::BadSort, "sort-by field")?;
    if by.lexeme.is_empty() {
        return Err(err(Code::BadSort, by, "sort-by field is empty"));
    }
    spans.mark("sortByField", by);
    let mut sort = Sort::by(by.lexeme.clone());
    if let Some((agg, t)) = line.keyword(Aggregation::from_keyword) {
        spans.mark("aggregation", t);
        sort.aggregation = Some(agg);
    }
    if let Some((dir, t)) = line.keyword(Direction::from_keyword) {
        spans.mark("direction", t);
        sort.direction = Some(dir);
    }
    if line.peek().kind == TokenKind::Number {
        let t = line.next();
        sort.limit = Some(positive_integer(t, Code::BadSort, "limit")?);
        spans.mark("limit", t);
    }
    if let Some(t) = line.quoted() {
        if t.lexeme.is_empty() {
            return Err(err(Code::BadSort, t, "sorted field name is empty"));
        }
        spans.mark("fieldName", t);
        sort.field_name = Some(t.lexeme.clone());
    }
    if !line.at_end() {
        let t = line.peek();
        return Err(err(
            Code::BadSort,
            t,
            format!(
                "unexpected {}; a sort line is \"by\" [aggregation] [asc|desc] [limit] [\"field\"]",
                t.describe()
            ),
        ));
    }
    Ok((sort, spans))
}

fn chart_line(line: &mut Line<'_>) -> Result<ChartType, Diagnostic> {
    let t = line.peek();
    let (chart, _) = line.keyword(ChartType::from_keyword).ok_or_else(|| {
        err(
            Code::BadChart,
            t,
            format!("unknown chart type {}", t.describe()),
        )
    })?;
    line.expect_end(Code::BadChart)?;
    Ok(chart)
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOLDEN: &str = "fields:
cd \"Order Date\" month x
cm \"Sales\" sum

filters:
cat \"Product Name\" values \"Product A\" \"Product B\"
cat \"Region\" values \"South\" \"West\"
rd \"Order Date\" 2 years
nr \"Sales\" sum start 1000 end 10000

sort:
\"Sales\" sum desc 5 \"Region\"
";

    fn first_error(text: &str) -> (Code, usize, usize) {
        let errs = parse(text).unwrap_err();
        (errs[0].code, errs[0].line, errs[0].column)
    }

    #[test]
    fn golden_shorthand() {
        let spec = parse(GOLDEN).unwrap();
        assert_eq!(
            spec.fields,
            vec![
                Field::new("Order Date", FieldType::Cd)
                    .aggregated(Aggregation::Month)
                    .encoded(Encoding::X),
                Field::new("Sales", FieldType::Cm).aggregated(Aggregation::Sum),
            ]
        );
        assert_eq!(spec.filters.len(), 4);
        assert_eq!(
            spec.filters[0],
            Filter::Categorical {
                field_name: "Product Name".into(),
                exclude: false,
                values: vec!["Product A".into(), "Product B".into()],
            }
        );
        assert_eq!(
            spec.filters[2],
            Filter::RelativeDate {
                field_name: "Order Date".into(),
                duration: 2,
                units: DateUnit::Years,
            }
        );
        assert_eq!(
            spec.filters[3],
            Filter::NumericRange {
                field_name: "Sales".into(),
                aggregation: Some(Aggregation::Sum),
                start: Some(1000.0),
                end: Some(10000.0),
            }
        );
        assert_eq!(
            spec.sorts,
            vec![Sort {
                sort_by_field: "Sales".into(),
                aggregation: Some(Aggregation::Sum),
                direction: Some(Direction::Desc),
                limit: Some(5),
                field_name: Some("Region".into()),
            }]
        );
        assert_eq!(spec.chart_type, None);
    }

    #[test]
    fn minimal() {
        let spec = parse("fields:\ncm \"Sales\"").unwrap();
        assert_eq!(
            spec,
            VizSpec::with_fields(vec![Field::new("Sales", FieldType::Cm)])
        );
    }

    #[test]
    fn open_ended_date_range() {
        let spec = parse("fields:\ncm \"Sales\" sum\nfilters:\ndr \"Order Date\" start 2023-01-01")
            .unwrap();
        assert_eq!(
            spec.filters,
            vec![Filter::DateRange {
                field_name: "Order Date".into(),
                start: Some("2023-01-01".into()),
                end: None,
            }]
        );
    }

    #[test]
    fn relative_date_accepts_both_orders() {
        let a = parse("fields:\n\"A\"\nfilters:\nrd \"A\" 3 weeks").unwrap();
        let b = parse("fields:\n\"A\"\nfilters:\nrd \"A\" weeks 3").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn header_may_share_a_line() {
        let a = parse("fields: cm \"A\"\nchart: bar").unwrap();
        assert_eq!(a.chart_type, Some(ChartType::Bar));
        assert_eq!(a.fields.len(), 1);
    }

    #[test]
    fn categorical_exclude() {
        let spec = parse(
            "fields:\n\"Segment\"\nfilters:\ncat \"Segment\" ex values \"Banking\" \"Healthcare\"",
        )
        .unwrap();
        assert_eq!(
            spec.filters[0],
            Filter::Categorical {
                field_name: "Segment".into(),
                exclude: true,
                values: vec!["Banking".into(), "Healthcare".into()],
            }
        );
    }

    #[test]
    fn error_codes_and_positions() {
        assert_eq!(
            first_error("fields:\ncm \"A\"\ncm \"A\" sum"),
            (Code::DupField, 3, 4)
        );
        assert_eq!(
            first_error("fields:\ncm \"A\" summ"),
            (Code::UnknownKeyword, 2, 8)
        );
        assert_eq!(
            first_error("fields:\ncm \"A\" x sum"),
            (Code::BadField, 2, 10)
        );
        assert_eq!(
            first_error("fields:\nzz \"A\""),
            (Code::UnknownKeyword, 2, 1)
        );
        assert_eq!(first_error("cm \"A\""), (Code::MissingFields, 1, 1));
        assert_eq!(first_error(""), (Code::MissingFields, 1, 1));
        assert_eq!(first_error("fields:\n"), (Code::MissingFields, 1, 1));
        assert_eq!(
            first_error("fields:\n\"A\"\nfilters:\nnr \"A\" sum"),
            (Code::BadFilter, 4, 1)
        );
        assert_eq!(
            first_error("fields:\n\"A\"\nfilters:\nrd \"A\" 1.5 years"),
            (Code::BadFilter, 4, 8)
        );
        assert_eq!(
            first_error("fields:\n\"A\"\nfilters:\nrd \"A\" 0 years"),
            (Code::BadFilter, 4, 8)
        );
        assert_eq!(
            first_error("fields:\n\"A\"\nsort:\n\"A\"\nfilters:\nrd \"A\" 2 years"),
            (Code::SectionOrder, 5, 1)
        );
        assert_eq!(
            first_error("fields:\n\"A\"\nchart:\nbars"),
            (Code::BadChart, 4, 1)
        );
        assert_eq!(
            first_error("fields:\n\"A\"\nchart:"),
            (Code::BadChart, 3, 1)
        );
        assert_eq!(
            first_error("fields:\n\"A\"\nchart:\nbar\npie"),
            (Code::BadChart, 5, 1)
        );
        assert_eq!(
            first_error("fields:\n\"A\"\nfilters:\ndr \"A\" start 2023-02-30"),
            (Code::BadFilter, 4, 14)
        );
        assert_eq!(
            first_error("fields:\n\"A\"\nfilters:\nnr \"A\" start 5 end 1"),
            (Code::BadFilter, 4, 1)
        );
        assert_eq!(
            first_error("fields:\n\"A\"\nsort:\n\"A\" desc 0"),
            (Code::BadSort, 4, 10)
        );
        assert_eq!(
            first_error("fields:\n\"A\"\nfilters:\ncat \"A\" values"),
            (Code::BadFilter, 4, 15)
        );
        assert_eq!(first_error("fields:\n\"\""), (Code::BadField, 2, 1));
        assert_eq!(
            first_error("fields:\nfields:\n\"A\""),
            (Code::SectionOrder, 2, 1)
        );
    }

    #[test]
    fn unknown_unit_position() {
        let text = "fields:\ncd \"Order Date\"\n\nfilters:\nrd \"Order Date\" yearly 2\n";
        assert_eq!(first_error(text), (Code::BadFilter, 5, 17));
    }

    #[test]
    fn recovers_per_line() {
        let errs =
            parse("fields:\ncm \"A\" bogus\ncm \"B\"\nxx \"C\"\nfilters:\nnr \"A\"\n").unwrap_err();
        let got: Vec<_> = errs.iter().map(|d| (d.code, d.line)).collect();
        assert_eq!(
            got,
            vec![
                (Code::UnknownKeyword, 2),
                (Code::UnknownKeyword, 4),
                (Code::BadFilter, 6)
            ]
        );
    }

    #[test]
    fn warnings_carry_positions() {
        let out = parse_with_diagnostics(
            "fields:\ncm \"Revenue\" month\nsort:\n\"Revenue\" desc \"Nope\"\n",
        );
        assert!(out.spec.is_some());
        let got: Vec<_> = out
            .diagnostics
            .iter()
            .map(|d| (d.code, d.line, d.column))
            .collect();
        assert_eq!(
            got,
            vec![
                (Code::DateAggOnMeasure, 2, 14),
                (Code::SortUnknownField, 4, 16)
            ]
        );
    }

    #[test]
    fn lexer_errors_pass_through() {
        assert_eq!(
            first_error("fields:\ncm \"Sales"),
            (Code::UnterminatedString, 2, 4)
        );
        assert_eq!(first_error("fields:\n# note\n\"A\""), (Code::BadChar, 2, 1));
    }
}
