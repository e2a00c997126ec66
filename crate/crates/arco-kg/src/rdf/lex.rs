//! Shared low-level scanning helpers for the N-Triples, Turtle and
//! query parsers.

/// A character cursor with line/column tracking and two-character lookahead.
pub struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    pub line: usize,
    pub column: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(text: &'a str) -> Cursor<'a> {
        Cursor {
            text,
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    pub fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    pub fn peek_second(&self) -> Option<char> {
        let mut chars = self.text[self.pos..].chars();
        chars.next();
        chars.next()
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.text[self.pos..].chars().next()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    pub fn eat(&mut self, expected: char) -> bool {
        if self.peek() == Some(expected) {
            self.bump();
            return true;
        }
        false
    }

    pub fn starts_with(&self, prefix: &str) -> bool {
        self.text[self.pos..].starts_with(prefix)
    }

    pub fn is_at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    /// Skip whitespace and `#` comments (to end of line).
    pub fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(c) = self.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => return,
            }
        }
    }

}

/// Decode one string escape after the backslash has been consumed.
pub fn unescape_char(cursor: &mut Cursor) -> Result<char, String> {
    match cursor.bump() {
        Some('t') => Ok('\t'),
        Some('b') => Ok('\u{0008}'),
        Some('n') => Ok('\n'),
        Some('r') => Ok('\r'),
        Some('f') => Ok('\u{000C}'),
        Some('"') => Ok('"'),
        Some('\'') => Ok('\''),
        Some('\\') => Ok('\\'),
        Some('u') => unescape_codepoint(cursor, 4),
        Some('U') => unescape_codepoint(cursor, 8),
        Some(c) => Err(format!("invalid escape sequence \\{c}")),
        None => Err("unterminated escape sequence".to_string()),
    }
}

fn unescape_codepoint(cursor: &mut Cursor, digits: usize) -> Result<char, String> {
    let mut value: u32 = 0;
    for _ in 0..digits {
        let c = cursor
            .bump()
            .ok_or_else(|| "unterminated unicode escape".to_string())?;
        let d = c
            .to_digit(16)
            .ok_or_else(|| format!("invalid hex digit '{c}' in unicode escape"))?;
        value = value * 16 + d;
    }
    char::from_u32(value).ok_or_else(|| format!("invalid code point U+{value:X}"))
}

/// Read the body of an IRIREF after the opening `<`, up to the closing `>`.
pub fn read_iri_body(cursor: &mut Cursor) -> Result<String, String> {
    let mut out = String::new();
    loop {
        match cursor.bump() {
            Some('>') => return Ok(out),
            Some('\\') => out.push(unescape_char(cursor)?),
            Some(c) if c <= ' ' || "<\"{}|^`".contains(c) => {
                return Err(format!(
                    "character '{}' not allowed in IRI",
                    c.escape_default()
                ))
            }
            Some(c) => out.push(c),
            None => return Err("unterminated IRI".to_string()),
        }
    }
}

/// Read the body of a quoted string after the opening `"`.
pub fn read_string_body(cursor: &mut Cursor) -> Result<String, String> {
    let mut out = String::new();
    loop {
        match cursor.bump() {
            Some('"') => return Ok(out),
            Some('\\') => out.push(unescape_char(cursor)?),
            Some('\n') => return Err("unescaped newline in string literal".to_string()),
            Some(c) => out.push(c),
            None => return Err("unterminated string literal".to_string()),
        }
    }
}

/// Read a language tag after the `@` (letters, digits, hyphens).
pub fn read_langtag(cursor: &mut Cursor) -> Result<String, String> {
    let mut out = String::new();
    while let Some(c) = cursor.peek() {
        if c.is_ascii_alphanumeric() || c == '-' {
            out.push(c);
            cursor.bump();
        } else {
            break;
        }
    }
    if out.is_empty() || !out.chars().next().unwrap().is_ascii_alphabetic() {
        return Err("invalid language tag".to_string());
    }
    Ok(out)
}

/// True for characters allowed in names (blank node labels, prefixed-name
/// parts, variable names). Dots are handled by the callers.
pub fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-'
}

/// Read a name. A `.` is included only when followed by another name
/// character, so statement-terminating dots are left in the input.
pub fn read_name(cursor: &mut Cursor) -> String {
    let mut out = String::new();
    loop {
        match cursor.peek() {
            Some(c) if is_name_char(c) => {
                out.push(c);
                cursor.bump();
            }
            Some('.') if cursor.peek_second().is_some_and(is_name_char) => {
                out.push('.');
                cursor.bump();
            }
            _ => return out,
        }
    }
}
