//! Toolkit for a compact, line-oriented shorthand for visualization specs.
//!
//! The shorthand is parsed into a typed [`VizSpec`], which converts losslessly
//! to and from a verbose JSON "full spec" document. [`tokens`] measures how
//! much smaller the shorthand is.
//!
//! ```
//! let spec = dss::parse("fields:\ncd \"Order Date\" month x\ncm \"Sales\" sum\n").unwrap();
//! let doc = dss::to_full_spec(&spec).unwrap().document;
//! assert_eq!(doc["fields"][1]["role"], "measure");
//! let back = dss::from_full_spec(&doc).unwrap().spec;
//! assert_eq!(dss::emit(&back).unwrap(), "fields:\ncd \"Order Date\" month x\ncm \"Sales\" sum\n");
//! ```

#[macro_use]
mod macros;

pub mod cli;
pub mod emitter;
pub mod fullspec;
pub mod isodate;
pub mod lexer;
pub mod model;
pub mod parser;
pub mod prompt;
pub mod tokens;

pub use emitter::emit;
pub use fullspec::{
    from_full_spec, from_full_spec_text, infer_field_attrs, to_full_spec, to_json_text, Decoded,
    Encoded, FieldAttrs,
};
pub use lexer::{lex, Token, TokenKind};
pub use model::{
    validate, Aggregation, ChartType, Code, DateUnit, Diagnostic, Direction, Encoding, Field,
    FieldType, Filter, InvalidSpec, Severity, Sort, VizSpec,
};
pub use parser::{parse, parse_with_diagnostics, ParseOutput};
pub use tokens::{compare, count_tokens, Heuristic, TokenCounter, TokenStats};
