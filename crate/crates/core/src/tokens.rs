//! Token and character counts for comparing shorthand with full-spec JSON.
//!
//! The built-in [`Heuristic`] counter approximates a BPE tokenizer: roughly
//! four characters per word-piece, one token per punctuation character and
//! per line break. Exact counts from a production tokenizer can be had by
//! passing any `Fn(&str) -> usize` as the counter.

use serde::Serialize;

/// Anything that turns text into a deterministic token count.
pub trait TokenCounter {
    fn count(&self, text: &str) -> usize;
}

impl<F> TokenCounter for F
where
    F: Fn(&str) -> usize,
{
    fn count(&self, text: &str) -> usize {
        self(text)
    }
}

/// Rules, left to right:
/// each maximal run of letters, digits and `_` costs `ceil(len / 4)`;
/// every other non-whitespace character costs 1; each `\n` costs 1;
/// all other whitespace is free.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Heuristic;

fn is_word(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

impl TokenCounter for Heuristic {
    fn count(&self, text: &str) -> usize {
        let mut tokens = 0;
        let mut run = 0usize;
        for c in text.chars() {
            if is_word(c) {
                run += 1;
                continue;
            }
            tokens += run.div_ceil(4);
            run = 0;
            if c == '\n' || !c.is_whitespace() {
                tokens += 1;
            }
        }
        tokens + run.div_ceil(4)
    }
}

pub fn count_tokens(text: &str, counter: &dyn TokenCounter) -> usize {
    counter.count(text)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TokenStats {
    pub shorthand_tokens: usize,
    pub full_tokens: usize,
    pub shorthand_chars: usize,
    pub full_chars: usize,
    /// `full_tokens / shorthand_tokens`; `None` when the shorthand is empty.
    pub token_ratio: Option<f64>,
    pub char_ratio: Option<f64>,
}

fn ratio(num: usize, den: usize) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

pub fn compare(shorthand: &str, full: &str, counter: &dyn TokenCounter) -> TokenStats {
    let shorthand_tokens = count_tokens(shorthand, counter);
    let full_tokens = count_tokens(full, counter);
    let shorthand_chars = shorthand.chars().count();
    let full_chars = full.chars().count();
    TokenStats {
        shorthand_tokens,
        full_tokens,
        shorthand_chars,
        full_chars,
        token_ratio: ratio(full_tokens, shorthand_tokens),
        char_ratio: ratio(full_chars, shorthand_chars),
    }
}

impl TokenStats {
    /// Single-line JSON record.
    pub fn to_record(&self) -> String {
        serde_json::to_string(self).expect("stats always serialize")
    }
}
