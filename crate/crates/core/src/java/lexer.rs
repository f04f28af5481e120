//! Java tokenizer. Comments and whitespace are dropped; every token keeps
//! its 1-based start and end position.

use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Keyword(&'static str),
    /// Numeric, char, string and text-block literals, kept verbatim.
    Literal(LitKind, String),
    Op(&'static str),
    Eof,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LitKind {
    Int,
    Float,
    Char,
    Str,
}

impl LitKind {
    pub fn name(self) -> &'static str {
        match self {
            LitKind::Int => "int",
            LitKind::Float => "float",
            LitKind::Char => "char",
            LitKind::Str => "string",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub start: (u32, u32),
    pub end: (u32, u32),
}

const KEYWORDS: &[&str] = &[
    "abstract",
    "assert",
    "boolean",
    "break",
    "byte",
    "case",
    "catch",
    "char",
    "class",
    "const",
    "continue",
    "default",
    "do",
    "double",
    "else",
    "enum",
    "extends",
    "final",
    "finally",
    "float",
    "for",
    "goto",
    "if",
    "implements",
    "import",
    "instanceof",
    "int",
    "interface",
    "long",
    "native",
    "new",
    "package",
    "private",
    "protected",
    "public",
    "return",
    "short",
    "static",
    "strictfp",
    "super",
    "switch",
    "synchronized",
    "this",
    "throw",
    "throws",
    "transient",
    "try",
    "void",
    "volatile",
    "while",
    "true",
    "false",
    "null",
];

// longest first so that greedy matching picks e.g. `>>>=` over `>>`
const OPERATORS: &[&str] = &[
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", ">=",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", ">>", "(", ")", "{", "}", "[", "]", ";",
    ",", ".", "@", "=", ">", "<", "!", "~", "?", ":", "+", "-", "*", "/", "&", "|", "^", "%",
];

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: u32,
    col: u32,
    file: &'a str,
}

impl Cursor<'_> {
    fn peek(&self, ahead: usize) -> Option<char> {
        self.chars.get(self.pos + ahead).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn here(&self) -> (u32, u32) {
        (self.line, self.col)
    }

    fn starts_with(&self, s: &str) -> bool {
        s.chars().enumerate().all(|(i, c)| self.peek(i) == Some(c))
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            file: self.file.to_string(),
            line: self.line,
            col: self.col,
            message: msg.into(),
        }
    }
}

pub fn tokenize(file: &str, src: &str) -> Result<Vec<Token>, ParseError> {
    let mut cur = Cursor {
        chars: src.chars().collect(),
        pos: 0,
        line: 1,
        col: 1,
        file,
    };
    let mut out = Vec::new();
    let mut last_end = (1, 1);
    loop {
        skip_trivia(&mut cur)?;
        let start = cur.here();
        let Some(c) = cur.peek(0) else {
            out.push(Token {
                tok: Tok::Eof,
                start,
                end: last_end,
            });
            return Ok(out);
        };
        let tok = if c.is_alphabetic() || c == '_' || c == '$' {
            let mut word = String::new();
            while let Some(c) = cur.peek(0) {
                if c.is_alphanumeric() || c == '_' || c == '$' {
                    word.push(c);
                    cur.bump();
                } else {
                    break;
                }
            }
            match KEYWORDS.iter().find(|k| **k == word) {
                Some(k) => Tok::Keyword(k),
                None => Tok::Ident(word),
            }
        } else if c.is_ascii_digit()
            || (c == '.' && cur.peek(1).is_some_and(|d| d.is_ascii_digit()))
        {
            number(&mut cur)
        } else if cur.starts_with("\"\"\"") {
            text_block(&mut cur)?
        } else if c == '"' || c == '\'' {
            quoted(&mut cur, c)?
        } else {
            let op = OPERATORS
                .iter()
                .find(|op| cur.starts_with(op))
                .ok_or_else(|| cur.error(format!("unexpected character {c:?}")))?;
            for _ in 0..op.chars().count() {
                cur.bump();
            }
            Tok::Op(op)
        };
        let end = (cur.line, cur.col.saturating_sub(1).max(1));
        last_end = end;
        out.push(Token { tok, start, end });
    }
}

fn skip_trivia(cur: &mut Cursor) -> Result<(), ParseError> {
    loop {
        match cur.peek(0) {
            Some(c) if c.is_whitespace() || c == '\u{feff}' => {
                cur.bump();
            }
            Some('/') if cur.peek(1) == Some('/') => {
                while let Some(c) = cur.peek(0) {
                    if c == '\n' {
                        break;
                    }
                    cur.bump();
                }
            }
            Some('/') if cur.peek(1) == Some('*') => {
                let err = cur.error("unterminated comment");
                cur.bump();
                cur.bump();
                loop {
                    if cur.starts_with("*/") {
                        cur.bump();
                        cur.bump();
                        break;
                    }
                    if cur.bump().is_none() {
                        return Err(err);
                    }
                }
            }
            _ => return Ok(()),
        }
    }
}

fn number(cur: &mut Cursor) -> Tok {
    let mut text = String::new();
    let mut float = false;
    let hex = cur.starts_with("0x") || cur.starts_with("0X");
    if hex || cur.starts_with("0b") || cur.starts_with("0B") {
        text.push(cur.bump().unwrap());
        text.push(cur.bump().unwrap());
    }
    while let Some(c) = cur.peek(0) {
        let accept = if hex {
            c.is_ascii_hexdigit() || c == '_' || c == '.' || matches!(c, 'p' | 'P')
        } else if c == '.' {
            // `1.foo()` is not a float, but `1.` and `1.5` are
            !float
                && !cur.peek(1).is_some_and(|n| {
                    n.is_alphabetic()
                        && n != 'e'
                        && n != 'E'
                        && n != 'f'
                        && n != 'F'
                        && n != 'd'
                        && n != 'D'
                })
        } else if matches!(c, 'e' | 'E') {
            float = true;
            text.push(c);
            cur.bump();
            if matches!(cur.peek(0), Some('+' | '-')) {
                text.push(cur.bump().unwrap());
            }
            continue;
        } else {
            c.is_ascii_digit() || c == '_'
        };
        if !accept {
            break;
        }
        if c == '.' {
            float = true;
        }
        text.push(c);
        cur.bump();
    }
    if let Some(c) = cur.peek(0) {
        match c {
            'l' | 'L' => {
                text.push(c);
                cur.bump();
            }
            'f' | 'F' | 'd' | 'D' if !hex || float => {
                float = true;
                text.push(c);
                cur.bump();
            }
            _ => {}
        }
    }
    Tok::Literal(if float { LitKind::Float } else { LitKind::Int }, text)
}

fn quoted(cur: &mut Cursor, quote: char) -> Result<Tok, ParseError> {
    let err = cur.error("unterminated literal");
    let mut text = String::new();
    text.push(cur.bump().unwrap());
    loop {
        match cur.bump() {
            None | Some('\n') => return Err(err),
            Some('\\') => {
                text.push('\\');
                text.push(cur.bump().ok_or_else(|| err.clone())?);
            }
            Some(c) => {
                text.push(c);
                if c == quote {
                    break;
                }
            }
        }
    }
    let kind = if quote == '"' {
        LitKind::Str
    } else {
        LitKind::Char
    };
    Ok(Tok::Literal(kind, text))
}

fn text_block(cur: &mut Cursor) -> Result<Tok, ParseError> {
    let err = cur.error("unterminated text block");
    let mut text = String::new();
    for _ in 0..3 {
        text.push(cur.bump().unwrap());
    }
    loop {
        if cur.starts_with("\"\"\"") {
            for _ in 0..3 {
                text.push(cur.bump().unwrap());
            }
            return Ok(Tok::Literal(LitKind::Str, text));
        }
        match cur.bump() {
            None => return Err(err),
            Some('\\') => {
                text.push('\\');
                if let Some(c) = cur.bump() {
                    text.push(c);
                }
            }
            Some(c) => text.push(c),
        }
    }
}
