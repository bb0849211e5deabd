//! Maps a document path such as `filters[0].filterType` back to a line and
//! column in the JSON source, so codec diagnostics point at real text.
//!
//! Only called on text that already parsed as JSON.

#[derive(Debug, Clone, PartialEq, Eq)]
enum Segment {
    Key(String),
    Index(usize),
}

fn segments(path: &str) -> Option<Vec<Segment>> {
    let mut out = Vec::new();
    if path == "$" || path.is_empty() {
        return Some(out);
    }
    for part in path.split('.') {
        let (key, rest) = match part.find('[') {
            Some(i) => part.split_at(i),
            None => (part, ""),
        };
        if !key.is_empty() {
            out.push(Segment::Key(key.to_owned()));
        }
        let mut rest = rest;
        while let Some(r) = rest.strip_prefix('[') {
            let close = r.find(']')?;
            out.push(Segment::Index(r[..close].parse().ok()?));
            rest = &r[close + 1..];
        }
    }
    Some(out)
}

struct Scanner {
    chars: Vec<char>,
    i: usize,
}

impl Scanner {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).copied()
    }

    fn ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.i += 1;
        }
    }

    fn eat(&mut self, c: char) -> Option<()> {
        self.ws();
        (self.peek()? == c).then(|| self.i += 1)
    }

    fn string(&mut self) -> Option<String> {
        self.eat('"')?;
        let mut out = String::new();
        loop {
            let c = self.peek()?;
            self.i += 1;
            match c {
                '"' => return Some(out),
                '\\' => {
                    let e = self.peek()?;
                    self.i += 1;
                    match e {
                        'u' => {
                            let hex: String = self.chars.get(self.i..self.i + 4)?.iter().collect();
                            self.i += 4;
                            let code = u32::from_str_radix(&hex, 16).ok()?;
                            out.push(char::from_u32(code).unwrap_or('\u{FFFD}'));
                        }
                        'n' => out.push('\n'),
                        't' => out.push('\t'),
                        'r' => out.push('\r'),
                        'b' => out.push('\u{8}'),
                        'f' => out.push('\u{c}'),
                        other => out.push(other),
                    }
                }
                c => out.push(c),
            }
        }
    }

    fn skip_value(&mut self) -> Option<()> {
        self.ws();
        match self.peek()? {
            '"' => self.string().map(drop),
            '{' => {
                self.i += 1;
                self.ws();
                if self.peek()? == '}' {
                    self.i += 1;
                    return Some(());
                }
                loop {
                    self.string()?;
                    self.eat(':')?;
                    self.skip_value()?;
                    self.ws();
                    match self.peek()? {
                        ',' => self.i += 1,
                        '}' => {
                            self.i += 1;
                            return Some(());
                        }
                        _ => return None,
                    }
                }
            }
            '[' => {
                self.i += 1;
                self.ws();
                if self.peek()? == ']' {
                    self.i += 1;
                    return Some(());
                }
                loop {
                    self.skip_value()?;
                    self.ws();
                    match self.peek()? {
                        ',' => self.i += 1,
                        ']' => {
                            self.i += 1;
                            return Some(());
                        }
                        _ => return None,
                    }
                }
            }
            _ => {
                while self
                    .peek()
                    .is_some_and(|c| !matches!(c, ',' | '}' | ']') && !c.is_whitespace())
                {
                    self.i += 1;
                }
                Some(())
            }
        }
    }

    /// Leaves the cursor at the start of the member value named `key`.
    fn member(&mut self, key: &str) -> Option<()> {
        self.eat('{')?;
        self.ws();
        if self.peek()? == '}' {
            return None;
        }
        loop {
            let k = self.string()?;
            self.eat(':')?;
            if k == key {
                self.ws();
                return Some(());
            }
            self.skip_value()?;
            self.ws();
            match self.peek()? {
                ',' => self.i += 1,
                _ => return None,
            }
        }
    }

    fn element(&mut self, index: usize) -> Option<()> {
        self.eat('[')?;
        self.ws();
        if self.peek()? == ']' {
            return None;
        }
        for _ in 0..index {
            self.skip_value()?;
            self.eat(',')?;
        }
        self.ws();
        Some(())
    }
}

fn line_col(chars: &[char], index: usize) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for &c in &chars[..index.min(chars.len())] {
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

fn find(chars: &[char], segs: &[Segment]) -> Option<(usize, usize)> {
    let mut s = Scanner {
        chars: chars.to_vec(),
        i: 0,
    };
    s.ws();
    for seg in segs {
        match seg {
            Segment::Key(k) => s.member(k)?,
            Segment::Index(n) => s.element(*n)?,
        }
    }
    Some(line_col(chars, s.i))
}

/// Position of the value at `path`, or of its nearest existing ancestor
/// (useful for missing keys).
pub fn locate(text: &str, path: &str) -> Option<(usize, usize)> {
    let chars: Vec<char> = text.chars().collect();
    let segs = segments(path)?;
    (0..=segs.len())
        .rev()
        .find_map(|n| find(&chars, &segs[..n]))
}
