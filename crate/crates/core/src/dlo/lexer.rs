use super::{ParseError, ParseErrorKind, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    LParen,
    RParen,
    Colon,
    Word(String),
    Number(String),
    Str(String),
    /// End of a statement: a newline outside any parentheses, or end of input.
    End,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub span: Span,
}

fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic()
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '.'
}

/// Splits source text into tokens. Newlines inside parentheses are ignored so a
/// long concept may span several lines; a newline at depth zero ends the
/// statement.
pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    let lexical = |span: Span, message: String| ParseError { kind: ParseErrorKind::Lexical, span, message };

    while let Some(&c) = chars.peek() {
        let span = Span { line, column: col };
        match c {
            '\n' => {
                chars.next();
                if depth == 0 && !matches!(out.last(), None | Some(Token { tok: Tok::End, .. })) {
                    out.push(Token { tok: Tok::End, span });
                }
                line += 1;
                col = 1;
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '(' => {
                chars.next();
                col += 1;
                depth += 1;
                out.push(Token { tok: Tok::LParen, span });
            }
            ')' => {
                chars.next();
                col += 1;
                if depth == 0 {
                    return Err(ParseError { kind: ParseErrorKind::Syntax, span, message: "unbalanced `)`".into() });
                }
                depth -= 1;
                out.push(Token { tok: Tok::RParen, span });
            }
            ':' => {
                chars.next();
                col += 1;
                out.push(Token { tok: Tok::Colon, span });
            }
            '"' => {
                chars.next();
                col += 1;
                let mut s = String::new();
                loop {
                    match chars.next() {
                        None | Some('\n') => return Err(lexical(span, "unterminated string literal".into())),
                        Some('"') => {
                            col += 1;
                            break;
                        }
                        Some('\\') => {
                            col += 1;
                            match chars.next() {
                                Some(e @ ('"' | '\\')) => {
                                    col += 1;
                                    s.push(e);
                                }
                                Some('n') => {
                                    col += 1;
                                    s.push('\n');
                                }
                                _ => return Err(lexical(Span { line, column: col }, "bad escape in string literal".into())),
                            }
                        }
                        Some(other) => {
                            col += 1;
                            s.push(other);
                        }
                    }
                }
                out.push(Token { tok: Tok::Str(s), span });
            }
            c if c.is_ascii_digit() || c == '-' || c == '+' => {
                let mut s = String::new();
                s.push(c);
                chars.next();
                col += 1;
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() || d == '.' {
                        s.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let digits = s.trim_start_matches(['-', '+']);
                let valid = !digits.is_empty()
                    && !digits.starts_with('.')
                    && !digits.ends_with('.')
                    && digits.matches('.').count() <= 1;
                if !valid {
                    return Err(lexical(span, format!("malformed number `{s}`")));
                }
                if let Some(&d) = chars.peek() {
                    if is_name_char(d) {
                        return Err(lexical(span, format!("malformed number `{s}{d}`")));
                    }
                }
                out.push(Token { tok: Tok::Number(s), span });
            }
            c if is_name_start(c) => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if is_name_char(d) {
                        s.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push(Token { tok: Tok::Word(s), span });
            }
            other => return Err(lexical(span, format!("unexpected character `{other}`"))),
        }
    }
    if depth != 0 {
        return Err(ParseError {
            kind: ParseErrorKind::Syntax,
            span: Span { line, column: col },
            message: "unclosed `(` at end of input".into(),
        });
    }
    if !matches!(out.last(), None | Some(Token { tok: Tok::End, .. })) {
        out.push(Token { tok: Tok::End, span: Span { line, column: col } });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn comments_and_blank_lines_vanish() {
        assert_eq!(toks("# héllo\n\nclass A # trailing ünïcode\n"), vec![Tok::Word("class".into()), Tok::Word("A".into()), Tok::End]);
    }

    #[test]
    fn newlines_inside_parens_continue() {
        let t = toks("subclass A (and B\n   C)\nclass D");
        assert_eq!(t.iter().filter(|t| **t == Tok::End).count(), 2);
    }

    #[test]
    fn numbers_and_strings() {
        assert_eq!(toks("data d len -1.50 mm"), vec![
            Tok::Word("data".into()),
            Tok::Word("d".into()),
            Tok::Word("len".into()),
            Tok::Number("-1.50".into()),
            Tok::Word("mm".into()),
            Tok::End
        ]);
        assert_eq!(toks(r#"data d label "a \"q\"""#)[3], Tok::Str("a \"q\"".into()));
    }

    #[test]
    fn bad_character_has_position() {
        let err = tokenize("class A\nclass B$").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Lexical);
        assert_eq!(err.span, Span { line: 2, column: 8 });
    }

    #[test]
    fn malformed_numbers() {
        assert!(tokenize("data d x 1.2.3").is_err());
        assert!(tokenize("data d x 12ab").is_err());
        assert!(tokenize("data d x -").is_err());
    }
}
