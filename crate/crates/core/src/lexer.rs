//! Tokenizer for shorthand text.

use std::fmt;

use crate::isodate;
use crate::model::{Code, Diagnostic};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    /// Bare word, including section headers such as `fields:`.
    Keyword,
    /// Double-quoted string; the lexeme holds the unescaped content.
    QuotedString,
    Number,
    IsoDate,
    Newline,
    EndOfInput,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TokenKind::Keyword => "keyword",
            TokenKind::QuotedString => "quoted string",
            TokenKind::Number => "number",
            TokenKind::IsoDate => "date",
            TokenKind::Newline => "end of line",
            TokenKind::EndOfInput => "end of input",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub line: usize,
    pub column: usize,
}

impl Token {
    pub fn is(&self, kind: TokenKind) -> bool {
        self.kind == kind
    }

    pub fn is_keyword(&self, word: &str) -> bool {
        self.kind == TokenKind::Keyword && self.lexeme == word
    }

    /// Human-readable description for diagnostics.
    pub fn describe(&self) -> String {
        match self.kind {
            TokenKind::Keyword => format!("`{}`", self.lexeme),
            TokenKind::QuotedString => format!("\"{}\"", self.lexeme),
            TokenKind::Number | TokenKind::IsoDate => {
                format!("{} `{}`", self.kind, self.lexeme)
            }
            TokenKind::Newline | TokenKind::EndOfInput => self.kind.to_string(),
        }
    }
}

fn is_bare(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '+' | ':' | '.')
}

fn is_number(s: &str) -> bool {
    let s = s.strip_prefix('-').unwrap_or(s);
    let (int, frac) = match s.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (s, None),
    };
    let all_digits = |p: &str| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit());
    all_digits(int) && frac.is_none_or(all_digits)
}

fn classify(word: &str) -> TokenKind {
    if isodate::matches_pattern(word) {
        TokenKind::IsoDate
    } else if is_number(word) {
        TokenKind::Number
    } else {
        TokenKind::Keyword
    }
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }
}

/// Splits shorthand into tokens.
///
/// Spaces and tabs separate tokens, each run of line breaks (blank lines
/// included) yields one newline token, and an end-of-input token is always
/// last. All lexical errors are collected before returning.
pub fn lex(text: &str) -> Result<Vec<Token>, Vec<Diagnostic>> {
    let text = text.replace("\r\n", "\n");
    let mut cur = Cursor {
        chars: text.chars().peekable(),
        line: 1,
        column: 1,
    };
    let mut tokens: Vec<Token> = Vec::new();
    let mut errors = Vec::new();

    while let Some(c) = cur.peek() {
        let (line, column) = (cur.line, cur.column);
        match c {
            ' ' | '\t' => {
                cur.bump();
            }
            '\n' => {
                cur.bump();
                if tokens.last().is_some_and(|t| !t.is(TokenKind::Newline)) {
                    tokens.push(Token {
                        kind: TokenKind::Newline,
                        lexeme: "\n".into(),
                        line,
                        column,
                    });
                }
            }
            '"' => {
                cur.bump();
                let mut content = String::new();
                let mut closed = false;
                while let Some(c) = cur.peek() {
                    match c {
                        '"' => {
                            cur.bump();
                            closed = true;
                            break;
                        }
                        '\n' => break,
                        '\\' => {
                            cur.bump();
                            match cur.peek() {
                                Some(e @ ('"' | '\\')) => {
                                    cur.bump();
                                    content.push(e);
                                }
                                // Unknown escapes are kept literally.
                                _ => content.push('\\'),
                            }
                        }
                        c if c.is_control() => {
                            errors.push(
                                Diagnostic::error(
                                    Code::BadChar,
                                    format!("control character {c:?} inside a quoted string"),
                                )
                                .at(cur.line, cur.column),
                            );
                            cur.bump();
                        }
                        c => {
                            cur.bump();
                            content.push(c);
                        }
                    }
                }
                if closed {
                    tokens.push(Token {
                        kind: TokenKind::QuotedString,
                        lexeme: content,
                        line,
                        column,
                    });
                } else {
                    errors.push(
                        Diagnostic::error(
                            Code::UnterminatedString,
                            "quoted string is not closed before the end of the line",
                        )
                        .at(line, column),
                    );
                }
            }
            c if is_bare(c) => {
                let mut word = String::new();
                while let Some(c) = cur.peek().filter(|&c| is_bare(c)) {
                    cur.bump();
                    word.push(c);
                }
                tokens.push(Token {
                    kind: classify(&word),
                    lexeme: word,
                    line,
                    column,
                });
            }
            c => {
                cur.bump();
                errors.push(
                    Diagnostic::error(Code::BadChar, format!("unexpected character {c:?}"))
                        .at(line, column),
                );
            }
        }
    }

    tokens.push(Token {
        kind: TokenKind::EndOfInput,
        lexeme: String::new(),
        line: cur.line,
        column: cur.column,
    });

    if errors.is_empty() {
        Ok(tokens)
    } else {
        Err(errors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use TokenKind::*;

    fn kinds(text: &str) -> Vec<(TokenKind, String)> {
        lex(text)
            .unwrap()
            .into_iter()
            .map(|t| (t.kind, t.lexeme))
            .collect()
    }

    fn tok(kind: TokenKind, lexeme: &str) -> (TokenKind, String) {
        (kind, lexeme.to_owned())
    }

    #[test]
    fn field_line() {
        assert_eq!(
            kinds(r#"cm "Sales" sum"#),
            vec![
                tok(Keyword, "cm"),
                tok(QuotedString, "Sales"),
                tok(Keyword, "sum"),
                tok(EndOfInput, "")
            ]
        );
    }

    #[test]
    fn empty_input() {
        assert_eq!(kinds(""), vec![tok(EndOfInput, "")]);
    }

    #[test]
    fn numeric_range_line() {
        assert_eq!(
            kinds(r#"nr "Sales" sum start 1000 end 10000"#),
            vec![
                tok(Keyword, "nr"),
                tok(QuotedString, "Sales"),
                tok(Keyword, "sum"),
                tok(Keyword, "start"),
                tok(Number, "1000"),
                tok(Keyword, "end"),
                tok(Number, "10000"),
                tok(EndOfInput, "")
            ]
        );
    }

    #[test]
    fn headers_dates_and_numbers() {
        assert_eq!(
            kinds("filters:\ndr \"D\" start 2023-01-01T00:00:00Z end -1.5"),
            vec![
                tok(Keyword, "filters:"),
                tok(Newline, "\n"),
                tok(Keyword, "dr"),
                tok(QuotedString, "D"),
                tok(Keyword, "start"),
                tok(IsoDate, "2023-01-01T00:00:00Z"),
                tok(Keyword, "end"),
                tok(Number, "-1.5"),
                tok(EndOfInput, "")
            ]
        );
        // Not numbers: these become keywords and fail later in the parser.
        assert_eq!(kinds("1e5")[0].0, Keyword);
        assert_eq!(kinds("1.")[0].0, Keyword);
        assert_eq!(kinds("-")[0].0, Keyword);
    }

    #[test]
    fn blank_lines_collapse() {
        let toks = lex("fields:\n\n\n  \t\ncm \"A\"\n\n").unwrap();
        let k: Vec<_> = toks.iter().map(|t| t.kind).collect();
        assert_eq!(
            k,
            vec![Keyword, Newline, Keyword, QuotedString, Newline, EndOfInput]
        );
        assert_eq!((toks[2].line, toks[2].column), (5, 1));
        assert_eq!((toks[5].line, toks[5].column), (7, 1));
    }

    #[test]
    fn leading_blank_lines_produce_no_token() {
        let toks = lex("\n\nfields:").unwrap();
        assert_eq!(toks[0].kind, Keyword);
        assert_eq!(toks[0].line, 3);
    }

    #[test]
    fn crlf_is_normalized() {
        let toks = lex("fields:\r\ncm \"A\"\r\n").unwrap();
        assert_eq!(toks.len(), 6);
        assert_eq!((toks[3].line, toks[3].column), (2, 4));
    }

    #[test]
    fn escapes() {
        let toks = lex(r#""a \"quoted\" \\ name" "C:\path""#).unwrap();
        assert_eq!(toks[0].lexeme, r#"a "quoted" \ name"#);
        assert_eq!(toks[1].lexeme, r"C:\path");
    }

    #[test]
    fn positions_count_chars() {
        let toks = lex("cat \"Résumé\" values \"é\"").unwrap();
        assert_eq!(toks[2].column, 14);
        assert_eq!(toks[3].column, 21);
    }

    #[test]
    fn unterminated_string() {
        let errs = lex("fields:\ncm \"Sales sum\ncd \"B\"").unwrap_err();
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].code, Code::UnterminatedString);
        assert_eq!((errs[0].line, errs[0].column), (2, 4));
    }

    #[test]
    fn bad_characters_are_all_reported() {
        let errs = lex("# comment\ncm \"A\" @").unwrap_err();
        let got: Vec<_> = errs.iter().map(|d| (d.code, d.line, d.column)).collect();
        assert_eq!(got, vec![(Code::BadChar, 1, 1), (Code::BadChar, 2, 8)]);
    }

    #[test]
    fn control_character_in_string() {
        let errs = lex("\"a\u{7}b\"").unwrap_err();
        assert_eq!(errs[0].code, Code::BadChar);
        assert_eq!(errs[0].column, 3);
    }
}
