//! Prompt assembly: the bundled grammar, a dataset field extract and the
//! user's request, each under a labeled delimiter line.

/// Grammar text bundled with the tool. Its bytes are prompt material and
/// must not drift within a major version.
pub const GRAMMAR: &str = include_str!("grammar.bnf");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PromptLabels {
    pub grammar: String,
    pub schema: String,
    pub request: String,
}

impl Default for PromptLabels {
    fn default() -> Self {
        PromptLabels {
            grammar: "GRAMMAR:".into(),
            schema: "DATASET FIELDS:".into(),
            request: "REQUEST:".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PromptBundle {
    pub grammar_text: String,
    pub schema_extract: String,
    pub user_query: String,
}

impl PromptBundle {
    /// Bundle using the built-in grammar.
    pub fn new(schema_extract: impl Into<String>, user_query: impl Into<String>) -> Self {
        PromptBundle {
            grammar_text: GRAMMAR.to_owned(),
            schema_extract: schema_extract.into(),
            user_query: user_query.into(),
        }
    }

    /// Grammar, then schema extract, then query. Trailing line breaks of each
    /// part are normalized so the output depends only on the content.
    pub fn render(&self, labels: &PromptLabels) -> String {
        let parts = [
            (&labels.grammar, &self.grammar_text),
            (&labels.schema, &self.schema_extract),
            (&labels.request, &self.user_query),
        ];
        let sections: Vec<String> = parts
            .iter()
            .map(|(label, body)| format!("{label}\n{}\n", body.trim_end_matches(['\n', '\r'])))
            .collect();
        sections.join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_is_bundled() {
        assert!(GRAMMAR.starts_with("#CFG for high-level representation"));
        assert!(GRAMMAR.contains("<VizSpec> ::= <Fields><Filters><Sorting><ChartType>"));
        assert!(GRAMMAR.ends_with('\n'));
    }

    #[test]
    fn render_layout() {
        let b = PromptBundle {
            grammar_text: "G\n".into(),
            schema_extract: "\"Sales\" number\n\n".into(),
            user_query: "sales by month".into(),
        };
        assert_eq!(
            b.render(&PromptLabels::default()),
            "GRAMMAR:\nG\n\nDATASET FIELDS:\n\"Sales\" number\n\nREQUEST:\nsales by month\n"
        );
        let labels = PromptLabels {
            grammar: "## Grammar".into(),
            ..PromptLabels::default()
        };
        assert!(b.render(&labels).starts_with("## Grammar\nG\n"));
    }
}
