use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Severity {
    Error,
    Warning,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

macro_rules! codes {
    ($($(#[$doc:meta])* $variant:ident => $s:literal,)+) => {
        /// Registry of every diagnostic code the toolkit can report.
        ///
        /// The string form is stable and is what tools should match on.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum Code {
            $($(#[$doc])* $variant,)+
        }

        impl Code {
            pub const ALL: &'static [Code] = &[$(Code::$variant,)+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(Code::$variant => $s,)+
                }
            }
        }
    };
}

codes! {
    /// A quoted string runs into a line break or the end of input.
    UnterminatedString => "UNTERMINATED_STRING",
    /// A character that cannot start or continue any token.
    BadChar => "BAD_CHAR",
    /// A bare word that is not part of the vocabulary where it appears.
    UnknownKeyword => "UNKNOWN_KEYWORD",
    /// No `fields:` section, or one with no field lines.
    MissingFields => "MISSING_FIELDS",
    /// Two fields share a name (case-sensitive).
    DupField => "DUP_FIELD",
    /// A section header appears after a section that must follow it, or twice.
    SectionOrder => "SECTION_ORDER",
    /// Malformed field line or field entry.
    BadField => "BAD_FIELD",
    BadFilter => "BAD_FILTER",
    BadSort => "BAD_SORT",
    BadChart => "BAD_CHART",
    /// Warning: date bucketing applied to a continuous measure.
    DateAggOnMeasure => "DATE_AGG_ON_MEASURE",
    /// Warning: a sort targets a name the spec does not mention elsewhere.
    SortUnknownField => "SORT_UNKNOWN_FIELD",
    /// Warning: a field without a type code was given default attributes.
    UnspecifiedFieldType => "UNSPECIFIED_FIELD_TYPE",
    /// Full spec: a required key is absent.
    MissingKey => "MISSING_KEY",
    /// Full spec: a string value outside its vocabulary.
    BadEnum => "BAD_ENUM",
    /// Full spec: role/type/dataType combination no type code produces.
    BadFieldAttrs => "BAD_FIELD_ATTRS",
    /// Full spec: a value of the wrong JSON type.
    BadType => "BAD_TYPE",
    /// Warning: full spec key that is not part of the format; ignored.
    UnknownKey => "UNKNOWN_KEY",
    /// Full spec text is not well-formed JSON.
    BadJson => "BAD_JSON",
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A located error or warning.
///
/// `line` and `column` are 1-based and count Unicode scalar values. Model-level
/// diagnostics that have no source text use 1:1. Diagnostics about a full-spec
/// document also carry the JSON `path` of the offending value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    pub message: String,
    pub line: usize,
    pub column: usize,
    pub path: Option<String>,
}

impl Diagnostic {
    pub fn error(code: Code, message: impl Into<String>) -> Self {
        Self::new(Severity::Error, code, message)
    }

    pub fn warning(code: Code, message: impl Into<String>) -> Self {
        Self::new(Severity::Warning, code, message)
    }

    fn new(severity: Severity, code: Code, message: impl Into<String>) -> Self {
        Diagnostic {
            severity,
            code,
            message: message.into(),
            line: 1,
            column: 1,
            path: None,
        }
    }

    pub fn at(mut self, line: usize, column: usize) -> Self {
        self.line = line.max(1);
        self.column = column.max(1);
        self
    }

    pub fn with_path(mut self, path: impl Into<String>) -> Self {
        self.path = Some(path.into());
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {} {}: ",
            self.line, self.column, self.severity, self.code
        )?;
        if let Some(path) = &self.path {
            write!(f, "at {path}: ")?;
        }
        f.write_str(&self.message)
    }
}

pub fn has_errors(diagnostics: &[Diagnostic]) -> bool {
    diagnostics.iter().any(Diagnostic::is_error)
}
