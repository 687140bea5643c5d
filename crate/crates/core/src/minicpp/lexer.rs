//! Hand-written lexer for preprocessed C++.

use crate::ast::SourceSpan;
use crate::error::{Diagnostic, DiagnosticKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Ident,
    Keyword,
    IntLit,
    FloatLit,
    StringLit,
    CharLit,
    Punct,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub span: SourceSpan,
}

impl Token {
    pub fn is_punct(&self, p: &str) -> bool {
        self.kind == TokenKind::Punct && self.text == p
    }

    pub fn is_keyword(&self, k: &str) -> bool {
        self.kind == TokenKind::Keyword && self.text == k
    }
}

pub const KEYWORDS: &[&str] = &[
    "bool",
    "break",
    "case",
    "char",
    "class",
    "const",
    "continue",
    "default",
    "delete",
    "do",
    "double",
    "else",
    "enum",
    "explicit",
    "extern",
    "false",
    "float",
    "for",
    "friend",
    "goto",
    "if",
    "inline",
    "int",
    "long",
    "mutable",
    "namespace",
    "new",
    "nullptr",
    "operator",
    "private",
    "protected",
    "public",
    "return",
    "short",
    "signed",
    "sizeof",
    "static",
    "struct",
    "switch",
    "template",
    "this",
    "true",
    "typedef",
    "union",
    "unsigned",
    "using",
    "virtual",
    "void",
    "volatile",
    "while",
];

// Longest first within each length class.
const PUNCTS: &[&str] = &[
    "<<=", ">>=", "::", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=", "&&", "||", "+=", "-=", "*=", "/=", "%=",
    "&=", "|=", "^=", "{", "}", "(", ")", "[", "]", ";", ":", ",", ".", "<", ">", "+", "-", "*", "/", "%", "&", "|",
    "^", "!", "~", "=", "?",
];

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    row: u32,
    col: u32,
    file: &'a str,
    at_line_start: bool,
}

impl Cursor<'_> {
    fn peek(&self, ahead: usize) -> Option<char> {
        self.chars.get(self.pos + ahead).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.row += 1;
            self.col = 1;
            self.at_line_start = true;
        } else {
            self.col += 1;
            if !c.is_whitespace() {
                self.at_line_start = false;
            }
        }
        Some(c)
    }

    fn starts_with(&self, s: &str) -> bool {
        s.chars().enumerate().all(|(i, c)| self.peek(i) == Some(c))
    }

    fn error(&self, row: u32, col: u32, message: String) -> Diagnostic {
        Diagnostic::new(DiagnosticKind::Lex, SourceSpan::point(self.file, row, col), message)
    }
}

/// Splits `text` into tokens. Comments, whitespace and `#` lines are
/// skipped; rows and columns are 1-based and count characters.
pub fn lex(file: &str, text: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut cur = Cursor { chars: text.chars().collect(), pos: 0, row: 1, col: 1, file, at_line_start: true };
    let mut tokens = Vec::new();

    while let Some(c) = cur.peek(0) {
        let (row, col) = (cur.row, cur.col);

        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if c == '#' && cur.at_line_start {
            while cur.peek(0).is_some_and(|c| c != '\n') {
                cur.bump();
            }
            continue;
        }
        if cur.starts_with("//") {
            while cur.peek(0).is_some_and(|c| c != '\n') {
                cur.bump();
            }
            continue;
        }
        if cur.starts_with("/*") {
            cur.bump();
            cur.bump();
            loop {
                if cur.starts_with("*/") {
                    cur.bump();
                    cur.bump();
                    break;
                }
                if cur.bump().is_none() {
                    return Err(cur.error(row, col, "unterminated block comment".into()));
                }
            }
            continue;
        }

        let mut text = String::new();
        let kind = if c.is_ascii_alphabetic() || c == '_' {
            while let Some(c) = cur.peek(0).filter(|c| c.is_ascii_alphanumeric() || *c == '_') {
                text.push(c);
                cur.bump();
            }
            if KEYWORDS.contains(&text.as_str()) {
                TokenKind::Keyword
            } else {
                TokenKind::Ident
            }
        } else if c.is_ascii_digit() || (c == '.' && cur.peek(1).is_some_and(|d| d.is_ascii_digit())) {
            lex_number(&mut cur, &mut text)
        } else if c == '"' || c == '\'' {
            lex_quoted(&mut cur, &mut text, c, row, col)?
        } else if let Some(p) = PUNCTS.iter().find(|p| cur.starts_with(p)) {
            for _ in 0..p.chars().count() {
                cur.bump();
            }
            text.push_str(p);
            TokenKind::Punct
        } else {
            return Err(cur.error(row, col, format!("unexpected character `{c}`")));
        };

        let end_col = cur.col - 1;
        tokens.push(Token { kind, text, span: SourceSpan::new(file, row, col, cur.row, end_col.max(col)) });
    }
    Ok(tokens)
}

fn lex_number(cur: &mut Cursor<'_>, text: &mut String) -> TokenKind {
    let mut float = false;
    if cur.starts_with("0x") || cur.starts_with("0X") {
        text.push(cur.bump().unwrap());
        text.push(cur.bump().unwrap());
        while let Some(c) = cur.peek(0).filter(|c| c.is_ascii_hexdigit()) {
            text.push(c);
            cur.bump();
        }
    } else {
        while let Some(c) = cur.peek(0) {
            if c.is_ascii_digit() {
                text.push(c);
            } else if c == '.' && !float {
                float = true;
                text.push(c);
            } else if (c == 'e' || c == 'E')
                && (cur.peek(1).is_some_and(|d| d.is_ascii_digit())
                    || (matches!(cur.peek(1), Some('+') | Some('-'))
                        && cur.peek(2).is_some_and(|d| d.is_ascii_digit())))
            {
                float = true;
                text.push(c);
                cur.bump();
                text.push(cur.peek(0).unwrap());
            } else {
                break;
            }
            cur.bump();
        }
    }
    while let Some(c) = cur.peek(0).filter(|c| matches!(c, 'u' | 'U' | 'l' | 'L' | 'f' | 'F')) {
        if matches!(c, 'f' | 'F') {
            float = true;
        }
        text.push(c);
        cur.bump();
    }
    if float {
        TokenKind::FloatLit
    } else {
        TokenKind::IntLit
    }
}

fn lex_quoted(
    cur: &mut Cursor<'_>,
    text: &mut String,
    quote: char,
    row: u32,
    col: u32,
) -> Result<TokenKind, Diagnostic> {
    text.push(quote);
    cur.bump();
    loop {
        match cur.peek(0) {
            None | Some('\n') => {
                return Err(cur.error(row, col, "unterminated literal".into()));
            }
            Some('\\') => {
                text.push('\\');
                cur.bump();
                if let Some(c) = cur.peek(0).filter(|c| *c != '\n') {
                    text.push(c);
                    cur.bump();
                }
            }
            Some(c) => {
                text.push(c);
                cur.bump();
                if c == quote {
                    break;
                }
            }
        }
    }
    Ok(if quote == '"' { TokenKind::StringLit } else { TokenKind::CharLit })
}
