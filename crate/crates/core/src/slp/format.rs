//! Plain-text SLP files.
//!
//! ```text
//! SLP <n> <root>
//! ALPHA <sigma> <symbol> ...
//! T <symbol-index>
//! N <left> <right>
//! ...
//! ```
//!
//! One rule line per id `0..n`. Symbols that are whitespace, control
//! characters or a backslash are written as `\u{HEX}`.

use super::{Alphabet, Rule, Slp};
use crate::error::{Error, Result};
use std::fmt::Write as _;

fn needs_escape(ch: char) -> bool {
    ch.is_whitespace() || ch.is_control() || ch == '\\'
}

fn write_symbol(out: &mut String, ch: char) {
    if needs_escape(ch) {
        let _ = write!(out, "\\u{{{:X}}}", ch as u32);
    } else {
        out.push(ch);
    }
}

fn parse_symbol(tok: &str, line: usize) -> Result<char> {
    let err = |msg: String| Error::Parse { line, msg };
    if let Some(hex) = tok.strip_prefix("\\u{").and_then(|t| t.strip_suffix('}')) {
        let code = u32::from_str_radix(hex, 16).map_err(|_| err(format!("bad escape {tok:?}")))?;
        return char::from_u32(code).ok_or_else(|| err(format!("bad scalar value {code:X}")));
    }
    let mut it = tok.chars();
    match (it.next(), it.next()) {
        (Some(ch), None) if !needs_escape(ch) => Ok(ch),
        _ => Err(err(format!("symbol {tok:?} is not a single character"))),
    }
}

/// Serializes an SLP; the output parses back to an identical SLP.
pub fn write_slp(slp: &Slp) -> String {
    let mut out = String::with_capacity(16 * slp.num_rules() + 32);
    let _ = writeln!(out, "SLP {} {}", slp.num_rules(), slp.root());
    let _ = write!(out, "ALPHA {}", slp.sigma());
    for &ch in slp.alphabet().symbols() {
        out.push(' ');
        write_symbol(&mut out, ch);
    }
    out.push('\n');
    for r in slp.rules() {
        let _ = match r {
            Rule::Terminal(s) => writeln!(out, "T {s}"),
            Rule::Nonterminal(l, r) => writeln!(out, "N {l} {r}"),
        };
    }
    out
}

fn number<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::Parse {
        line,
        msg: format!("missing {what}"),
    })?;
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad {what} {tok:?}"),
    })
}

fn expect_end<'a>(mut toks: impl Iterator<Item = &'a str>, line: usize) -> Result<()> {
    match toks.next() {
        None => Ok(()),
        Some(t) => Err(Error::Parse {
            line,
            msg: format!("unexpected token {t:?}"),
        }),
    }
}

/// Parses and validates an SLP file.
pub fn parse_slp(text: &str) -> Result<Slp> {
    let mut lines = text.split('\n').enumerate().map(|(i, l)| (i + 1, l));
    let mut next_line = |what: &str| {
        lines.next().filter(|(_, l)| !l.is_empty()).ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("missing {what} line"),
        })
    };

    let (ln, header) = next_line("header")?;
    let mut toks = header.split(' ');
    if toks.next() != Some("SLP") {
        return Err(Error::Parse {
            line: ln,
            msg: "expected `SLP <n> <root>`".into(),
        });
    }
    let n: usize = number(toks.next(), ln, "rule count")?;
    let root: usize = number(toks.next(), ln, "root id")?;
    expect_end(toks, ln)?;

    let (ln, alpha) = next_line("alphabet")?;
    let mut toks = alpha.split(' ');
    if toks.next() != Some("ALPHA") {
        return Err(Error::Parse {
            line: ln,
            msg: "expected `ALPHA <sigma> <symbols>`".into(),
        });
    }
    let sigma: usize = number(toks.next(), ln, "alphabet size")?;
    let symbols = toks.map(|t| parse_symbol(t, ln)).collect::<Result<Vec<_>>>()?;
    if symbols.len() != sigma {
        return Err(Error::Parse {
            line: ln,
            msg: format!("alphabet lists {} symbols, header says {sigma}", symbols.len()),
        });
    }
    let alphabet = Alphabet::new(symbols).map_err(|e| Error::Parse {
        line: ln,
        msg: e.to_string(),
    })?;

    let mut rules = Vec::with_capacity(n.min(1 << 24));
    for _ in 0..n {
        let (ln, l) = next_line("rule")?;
        let mut toks = l.split(' ');
        let rule = match toks.next() {
            Some("T") => Rule::Terminal(number(toks.next(), ln, "symbol index")?),
            Some("N") => Rule::Nonterminal(number(toks.next(), ln, "left id")?, number(toks.next(), ln, "right id")?),
            _ => {
                return Err(Error::Parse {
                    line: ln,
                    msg: "expected `T <symbol>` or `N <left> <right>`".into(),
                })
            }
        };
        expect_end(toks, ln)?;
        rules.push(rule);
    }
    for (ln, l) in lines {
        if !l.is_empty() {
            return Err(Error::Parse {
                line: ln,
                msg: "trailing content after the last rule".into(),
            });
        }
    }
    Slp::new(rules, root, alphabet)
}
