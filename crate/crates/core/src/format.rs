//! Line-oriented text format for directive sequences.
//!
//! ```text
//! # Fibonacci
//! alphabet 0: 0 1
//! morphism 0:
//!   0 -> 0 1
//!   1 -> 0
//! tail repeat 1
//! ```
//!
//! `morphism k` maps letters of `alphabet k+1` to words over `alphabet k`.
//! Undeclared alphabets are inferred: `A_{k+1}` from the left-hand letters of
//! `morphism k`, and `A_0` from those letters followed by any new image
//! letters. When every token is a decimal number below 256 it is used as the
//! symbol id; otherwise ids follow first appearance in the file and the
//! tokens become display glyphs. `tail finite` (the default) or
//! `tail repeat p`; an optional `hint primitive` line marks the sequence as
//! primitive.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::language::{DirectiveSequence, Tail};
use crate::morphism::Morphism;
use crate::words::{Alphabet, Symbol, Word};

#[derive(Clone, Debug)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

struct Rule<'a> {
    lhs: Token<'a>,
    rhs: Vec<Token<'a>>,
}

struct MorphismBlock<'a> {
    header: Token<'a>,
    rules: Vec<Rule<'a>>,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens of a line with 1-based columns, stopping at `#`.
fn tokenize(line: &str, number: usize) -> Vec<Token<'_>> {
    let code = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in code.char_indices().chain(std::iter::once((code.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token {
                    text: &code[s..i],
                    line: number,
                    column: code[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

/// Parses `"<keyword> <k>:"` level headers, accepting `3:` or `3 :`.
fn level_of(tokens: &[Token<'_>]) -> Result<(usize, usize)> {
    let kw = &tokens[0];
    let Some(tok) = tokens.get(1) else {
        return Err(err(kw.line, kw.column + kw.text.len(), "expected a level number"));
    };
    let (digits, mut next) = match tok.text.strip_suffix(':') {
        Some(d) => (d, 2),
        None => match tokens.get(2) {
            Some(t) if t.text == ":" => (tok.text, 3),
            Some(t) => return Err(err(t.line, t.column, "expected ':'")),
            None => return Err(err(tok.line, tok.column + tok.text.len(), "expected ':'")),
        },
    };
    let level = digits
        .parse::<usize>()
        .map_err(|_| err(tok.line, tok.column, format!("bad level number {digits:?}")))?;
    if digits.is_empty() {
        return Err(err(tok.line, tok.column, "expected a level number"));
    }
    if next > tokens.len() {
        next = tokens.len();
    }
    Ok((level, next))
}

pub fn parse_dirseq(text: &str) -> Result<DirectiveSequence> {
    let mut alphabets: BTreeMap<usize, (Token<'_>, Vec<Token<'_>>)> = BTreeMap::new();
    let mut morphisms: BTreeMap<usize, MorphismBlock<'_>> = BTreeMap::new();
    let mut tail: Option<(Token<'_>, Tail)> = None;
    let mut hint = false;
    let mut open: Option<usize> = None;

    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let tokens = tokenize(raw, number);
        let Some(first) = tokens.first() else {
            continue;
        };
        let indented = raw.starts_with(char::is_whitespace);
        if indented {
            let Some(level) = open else {
                return Err(err(number, first.column, "indented line outside a morphism block"));
            };
            let arrow = tokens.get(1);
            if arrow.map(|t| t.text) != Some("->") {
                let (line, column) = arrow.map_or((number, first.column + first.text.len()), |t| (t.line, t.column));
                return Err(err(line, column, "expected '->'"));
            }
            if tokens.len() < 3 {
                return Err(err(number, tokens[1].column + 2, "empty image"));
            }
            let block = morphisms.get_mut(&level).expect("open block");
            if let Some(prev) = block.rules.iter().find(|r| r.lhs.text == first.text) {
                return Err(err(
                    number,
                    first.column,
                    format!("letter {:?} already has an image on line {}", first.text, prev.lhs.line),
                ));
            }
            block.rules.push(Rule {
                lhs: first.clone(),
                rhs: tokens[2..].to_vec(),
            });
            continue;
        }
        open = None;
        match first.text {
            "alphabet" => {
                let (level, rest) = level_of(&tokens)?;
                if tokens.len() == rest {
                    return Err(err(number, raw.len() + 1, "alphabet has no letters"));
                }
                if alphabets.contains_key(&level) {
                    return Err(err(number, first.column, format!("alphabet {level} declared twice")));
                }
                alphabets.insert(level, (first.clone(), tokens[rest..].to_vec()));
            }
            "morphism" => {
                let (level, rest) = level_of(&tokens)?;
                if let Some(t) = tokens.get(rest) {
                    return Err(err(t.line, t.column, "unexpected token after morphism header"));
                }
                if morphisms.contains_key(&level) {
                    return Err(err(number, first.column, format!("morphism {level} declared twice")));
                }
                morphisms.insert(
                    level,
                    MorphismBlock {
                        header: first.clone(),
                        rules: Vec::new(),
                    },
                );
                open = Some(level);
            }
            "tail" => {
                if tail.is_some() {
                    return Err(err(number, first.column, "tail declared twice"));
                }
                let words: Vec<&str> = tokens[1..].iter().map(|t| t.text).collect();
                let rule = match words.as_slice() {
                    ["finite"] => Tail::Finite,
                    ["repeat", p] => Tail::RepeatLast(p.parse().map_err(|_| {
                        err(number, tokens[2].column, format!("bad tail period {p:?}"))
                    })?),
                    _ => {
                        let col = tokens.get(1).map_or(first.column + 4, |t| t.column);
                        return Err(err(number, col, "expected 'finite' or 'repeat <p>'"));
                    }
                };
                tail = Some((first.clone(), rule));
            }
            "hint" => match tokens.get(1).map(|t| t.text) {
                Some("primitive") if tokens.len() == 2 => hint = true,
                _ => return Err(err(number, first.column, "expected 'hint primitive'")),
            },
            other => return Err(err(number, first.column, format!("unknown directive {other:?}"))),
        }
    }

    build(alphabets, morphisms, tail, hint)
}

fn build(
    alphabets: BTreeMap<usize, (Token<'_>, Vec<Token<'_>>)>,
    morphisms: BTreeMap<usize, MorphismBlock<'_>>,
    tail: Option<(Token<'_>, Tail)>,
    hint: bool,
) -> Result<DirectiveSequence> {
    let count = morphisms.len();
    if count == 0 {
        return Err(err(1, 1, "no morphism declared"));
    }
    for (expected, (&level, block)) in morphisms.iter().enumerate() {
        if level != expected {
            return Err(err(
                block.header.line,
                block.header.column,
                format!("morphism {level} declared but morphism {expected} is missing"),
            ));
        }
        if block.rules.is_empty() {
            return Err(err(block.header.line, block.header.column, format!("morphism {level} has no images")));
        }
    }
    if let Some((&level, (kw, _))) = alphabets.iter().find(|(&k, _)| k > count) {
        return Err(err(kw.line, kw.column, format!("alphabet {level} is beyond the last level {count}")));
    }

    // Ids: literal numbers when every token is one, otherwise first appearance.
    let mut all: Vec<&Token<'_>> = alphabets.values().flat_map(|(_, t)| t.iter()).collect();
    for block in morphisms.values() {
        for rule in &block.rules {
            all.push(&rule.lhs);
            all.extend(rule.rhs.iter());
        }
    }
    all.sort_by_key(|t| (t.line, t.column));
    let numeric = all.iter().all(|t| t.text.parse::<Symbol>().is_ok() && !t.text.starts_with('+'));
    let mut ids: HashMap<&str, Symbol> = HashMap::new();
    for t in &all {
        if ids.contains_key(t.text) {
            continue;
        }
        let id = if numeric {
            t.text.parse::<Symbol>().expect("numeric token")
        } else {
            if ids.len() == 256 {
                return Err(err(t.line, t.column, "more than 256 distinct letters"));
            }
            ids.len() as Symbol
        };
        ids.insert(t.text, id);
    }

    let make = |tokens: &[&Token<'_>], what: &str| -> Result<Alphabet> {
        let mut seen: HashMap<&str, &Token<'_>> = HashMap::new();
        for t in tokens {
            if seen.insert(t.text, t).is_some() {
                return Err(err(t.line, t.column, format!("letter {:?} repeated in {what}", t.text)));
            }
        }
        let alphabet = Alphabet::new(tokens.iter().map(|t| ids[t.text]).collect())
            .map_err(|e| err(tokens[0].line, tokens[0].column, e.to_string()))?;
        if numeric {
            Ok(alphabet)
        } else {
            alphabet.with_glyphs(tokens.iter().map(|t| t.text.to_string()).collect())
        }
    };

    let mut chain: Vec<Alphabet> = Vec::with_capacity(count + 1);
    for k in 0..=count {
        let tokens: Vec<&Token<'_>> = match alphabets.get(&k) {
            Some((_, toks)) => toks.iter().collect(),
            None if k > 0 => morphisms[&(k - 1)].rules.iter().map(|r| &r.lhs).collect(),
            None => {
                let block = &morphisms[&0];
                let mut out: Vec<&Token<'_>> = Vec::new();
                let lhs = block.rules.iter().map(|r| &r.lhs);
                let rhs = block.rules.iter().flat_map(|r| r.rhs.iter());
                for t in lhs.chain(rhs) {
                    if out.iter().all(|o| o.text != t.text) {
                        out.push(t);
                    }
                }
                out
            }
        };
        chain.push(make(&tokens, &format!("alphabet {k}"))?);
    }

    let mut levels = Vec::with_capacity(count);
    for (k, block) in morphisms.values().enumerate() {
        let source = &chain[k + 1];
        let target = &chain[k];
        let mut images: Vec<Option<Word>> = vec![None; source.len()];
        for rule in &block.rules {
            let pos = source.index_of(ids[rule.lhs.text]).ok_or_else(|| {
                err(rule.lhs.line, rule.lhs.column, format!("letter {:?} is not in alphabet {}", rule.lhs.text, k + 1))
            })?;
            let mut img = Vec::with_capacity(rule.rhs.len());
            for t in &rule.rhs {
                let s = ids[t.text];
                if !target.contains(s) {
                    return Err(err(t.line, t.column, format!("letter {:?} is not in alphabet {k}", t.text)));
                }
                img.push(s);
            }
            images[pos] = Some(Word::new(img));
        }
        if let Some(pos) = images.iter().position(Option::is_none) {
            let letter = source.glyphs().map_or_else(|| source.symbols()[pos].to_string(), |g| g[pos].clone());
            return Err(err(
                block.header.line,
                block.header.column,
                format!("morphism {k} gives no image for letter {letter:?}"),
            ));
        }
        let images = images.into_iter().map(Option::unwrap).collect();
        levels.push(
            Morphism::new(source.clone(), target.clone(), images)
                .map_err(|e| err(block.header.line, block.header.column, e.to_string()))?,
        );
    }

    let (tail_pos, tail) = match tail {
        Some((t, rule)) => ((t.line, t.column), rule),
        None => ((1, 1), Tail::Finite),
    };
    DirectiveSequence::new(levels, tail)
        .map(|d| d.with_primitive_hint(hint))
        .map_err(|e| err(tail_pos.0, tail_pos.1, e.to_string()))
}

fn glyph(alphabet: &Alphabet, s: Symbol) -> String {
    match alphabet.glyphs() {
        Some(g) => g[alphabet.index_of(s).expect("symbol in alphabet")].clone(),
        None => s.to_string(),
    }
}

/// Canonical text: every alphabet declared, one image per line in alphabet
/// order, then the tail and hint.
pub fn serialize_dirseq(dirseq: &DirectiveSequence) -> String {
    let levels = dirseq.levels();
    let mut out = String::new();
    for k in 0..=levels.len() {
        let alphabet = if k < levels.len() {
            levels[k].target()
        } else {
            levels[k - 1].source()
        };
        let letters: Vec<String> = alphabet.symbols().iter().map(|&s| glyph(alphabet, s)).collect();
        writeln!(out, "alphabet {k}: {}", letters.join(" ")).unwrap();
    }
    for (k, tau) in levels.iter().enumerate() {
        writeln!(out, "morphism {k}:").unwrap();
        for (&a, img) in tau.source().symbols().iter().zip(tau.images()) {
            let rhs: Vec<String> = img.iter().map(|&s| glyph(tau.target(), s)).collect();
            writeln!(out, "  {} -> {}", glyph(tau.source(), a), rhs.join(" ")).unwrap();
        }
    }
    match dirseq.tail() {
        Tail::Finite => out.push_str("tail finite\n"),
        Tail::RepeatLast(p) => writeln!(out, "tail repeat {p}").unwrap(),
    }
    if dirseq.primitive_hint() {
        out.push_str("hint primitive\n");
    }
    out
}
