//! Plain-text format for finite categories and functors.
//!
//! ```text
//! # the walking arrow
//! objects: a, b
//! morphisms:
//!   f: a -> b
//! compose:
//! ```
//!
//! Identities are implicit and spelled `1_x`. The `compose:` block lists every
//! composite of two non-identity morphisms as `g . f = h` (apply `f` first).
//! Labels are bare words (`[A-Za-z0-9_'#]+`) or double-quoted strings.
//!
//! Functors between two known categories:
//!
//! ```text
//! objects:
//!   a -> x
//! morphisms:
//!   f -> 1_x
//! ```

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use super::{CategoryBuilder, FinCategory, Functor, Mor, Obj};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Word(String),
    Arrow,
    Colon,
    Comma,
    Dot,
    Equals,
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub col: usize,
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '#'
}

pub(crate) fn tokenize(line_no: usize, line: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '#' if out.is_empty() || chars[..i].iter().all(|c| c.is_whitespace()) => break,
            c if c.is_whitespace() => i += 1,
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push(Token { tok: Tok::Arrow, col });
                i += 2;
            }
            ':' => {
                out.push(Token { tok: Tok::Colon, col });
                i += 1;
            }
            ',' => {
                out.push(Token { tok: Tok::Comma, col });
                i += 1;
            }
            '.' => {
                out.push(Token { tok: Tok::Dot, col });
                i += 1;
            }
            '=' => {
                out.push(Token { tok: Tok::Equals, col });
                i += 1;
            }
            '"' => {
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err(ParseError::new(line_no, col, "unterminated quoted label")),
                        Some('"') => {
                            i += 1;
                            break;
                        }
                        Some('\\') => {
                            match chars.get(i + 1) {
                                Some(&e) => s.push(e),
                                None => {
                                    return Err(ParseError::new(line_no, i + 1, "dangling escape"))
                                }
                            }
                            i += 2;
                        }
                        Some(&ch) => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                out.push(Token { tok: Tok::Word(s), col });
            }
            c if is_word_char(c) => {
                let start = i;
                while i < chars.len() && is_word_char(chars[i]) {
                    i += 1;
                }
                out.push(Token { tok: Tok::Word(chars[start..i].iter().collect()), col });
            }
            other => {
                return Err(ParseError::new(line_no, col, format!("unexpected character '{other}'")))
            }
        }
    }
    Ok(out)
}

pub(crate) fn quote(label: &str) -> String {
    if !label.is_empty() && label.chars().all(is_word_char) && !label.starts_with('#') {
        label.to_string()
    } else {
        let mut s = String::from("\"");
        for c in label.chars() {
            if c == '"' || c == '\\' {
                s.push('\\');
            }
            s.push(c);
        }
        s.push('"');
        s
    }
}

/// Labels made unique by suffixing the index on collision.
pub(crate) fn unique_labels(labels: &[String], reserved: &HashSet<String>) -> Vec<String> {
    let mut count: HashMap<&str, usize> = HashMap::new();
    for l in labels {
        *count.entry(l.as_str()).or_default() += 1;
    }
    labels
        .iter()
        .enumerate()
        .map(|(i, l)| {
            if count[l.as_str()] > 1 || reserved.contains(l) || l.is_empty() {
                format!("{l}@{i}")
            } else {
                l.clone()
            }
        })
        .collect()
}

pub(crate) struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| {
                let t = l.trim();
                !t.is_empty() && !t.starts_with('#')
            })
            .collect();
        Lines { lines, pos: 0 }
    }

    pub(crate) fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    pub(crate) fn next(&mut self) -> Option<(usize, &'a str)> {
        let l = self.peek();
        self.pos += 1;
        l
    }

    pub(crate) fn last_line(&self) -> usize {
        self.lines.last().map_or(1, |l| l.0)
    }

    /// Consume a `name:` header, returning tokens after the colon.
    pub(crate) fn header(&mut self, name: &str) -> Result<(usize, Vec<Token>), ParseError> {
        let (no, line) = self
            .next()
            .ok_or_else(|| ParseError::new(self.last_line(), 1, format!("expected '{name}:'")))?;
        let toks = tokenize(no, line)?;
        match toks.as_slice() {
            [Token { tok: Tok::Word(w), .. }, Token { tok: Tok::Colon, .. }, ..] if w == name => {
                Ok((no, toks[2..].to_vec()))
            }
            _ => Err(ParseError::new(no, toks.first().map_or(1, |t| t.col), format!("expected '{name}:'"))),
        }
    }

    /// Body lines until the next `word:` header line with nothing after it,
    /// or the end of input.
    pub(crate) fn body(&mut self, stop: &[&str]) -> Result<Vec<(usize, Vec<Token>)>, ParseError> {
        let mut out = Vec::new();
        while let Some((no, line)) = self.peek() {
            let toks = tokenize(no, line)?;
            if let [Token { tok: Tok::Word(w), .. }, Token { tok: Tok::Colon, .. }, ..] = toks.as_slice() {
                if stop.contains(&w.as_str()) {
                    break;
                }
            }
            self.pos += 1;
            out.push((no, toks));
        }
        Ok(out)
    }
}

pub(crate) fn word_list(no: usize, toks: &[Token]) -> Result<Vec<String>, ParseError> {
    let mut out = Vec::new();
    let mut expect_word = true;
    for t in toks {
        match (&t.tok, expect_word) {
            (Tok::Word(w), true) => {
                out.push(w.clone());
                expect_word = false;
            }
            (Tok::Comma, false) => expect_word = true,
            _ => return Err(ParseError::new(no, t.col, "expected a comma-separated list of labels")),
        }
    }
    if expect_word && !out.is_empty() {
        return Err(ParseError::new(no, toks.last().map_or(1, |t| t.col), "trailing comma"));
    }
    Ok(out)
}

pub(crate) fn expect_word(no: usize, toks: &[Token], i: usize) -> Result<String, ParseError> {
    match toks.get(i) {
        Some(Token { tok: Tok::Word(w), .. }) => Ok(w.clone()),
        Some(t) => Err(ParseError::new(no, t.col, "expected a label")),
        None => Err(ParseError::new(no, toks.last().map_or(1, |t| t.col + 1), "expected a label")),
    }
}

pub(crate) fn expect_tok(no: usize, toks: &[Token], i: usize, want: Tok, what: &str) -> Result<(), ParseError> {
    match toks.get(i) {
        Some(t) if t.tok == want => Ok(()),
        Some(t) => Err(ParseError::new(no, t.col, format!("expected {what}"))),
        None => Err(ParseError::new(no, toks.last().map_or(1, |t| t.col + 1), format!("expected {what}"))),
    }
}

/// `name: src -> tgt` lines.
pub(crate) fn parse_edge_line(
    no: usize,
    toks: &[Token],
    objects: &HashMap<String, Obj>,
) -> Result<(String, Obj, Obj), ParseError> {
    let name = expect_word(no, toks, 0)?;
    expect_tok(no, toks, 1, Tok::Colon, "':'")?;
    let s = expect_word(no, toks, 2)?;
    expect_tok(no, toks, 3, Tok::Arrow, "'->'")?;
    let t = expect_word(no, toks, 4)?;
    if toks.len() > 5 {
        return Err(ParseError::new(no, toks[5].col, "unexpected trailing input"));
    }
    let lookup = |label: &str, idx: usize| {
        objects
            .get(label)
            .copied()
            .ok_or_else(|| ParseError::new(no, toks[idx].col, format!("unknown object '{label}'")))
    };
    Ok((name, lookup(&s, 2)?, lookup(&t, 4)?))
}

pub(crate) fn object_table(no: usize, toks: &[Token], labels: &[String]) -> Result<HashMap<String, Obj>, ParseError> {
    let mut objects = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if objects.insert(l.clone(), i).is_some() {
            return Err(ParseError::new(no, toks.first().map_or(1, |t| t.col), format!("duplicate object '{l}'")));
        }
    }
    Ok(objects)
}

pub fn parse_category(text: &str) -> Result<FinCategory, ParseError> {
    let mut lines = Lines::new(text);
    let (obj_line, obj_toks) = lines.header("objects")?;
    let obj_labels = word_list(obj_line, &obj_toks)?;
    let objects = object_table(obj_line, &obj_toks, &obj_labels)?;
    let mut morphisms: HashMap<String, Mor> = obj_labels
        .iter()
        .enumerate()
        .map(|(i, l)| (format!("1_{l}"), i))
        .collect();
    let mut builder = CategoryBuilder::new(obj_labels.clone());
    let (_, rest) = lines.header("morphisms")?;
    if let Some(t) = rest.first() {
        return Err(ParseError::new(obj_line + 1, t.col, "unexpected input after 'morphisms:'"));
    }
    for (no, toks) in lines.body(&["compose"])? {
        let (name, s, t) = parse_edge_line(no, &toks, &objects)?;
        if morphisms.contains_key(&name) {
            return Err(ParseError::new(no, toks[0].col, format!("duplicate morphism '{name}'")));
        }
        let m = builder.add_morphism(name.clone(), s, t);
        morphisms.insert(name, m);
    }
    let mut composites = Vec::new();
    if lines.peek().is_some() {
        let (_, rest) = lines.header("compose")?;
        if let Some(t) = rest.first() {
            return Err(ParseError::new(lines.last_line(), t.col, "unexpected input after 'compose:'"));
        }
        for (no, toks) in lines.body(&[])? {
            let look = |i: usize| -> Result<Mor, ParseError> {
                let w = expect_word(no, &toks, i)?;
                morphisms
                    .get(&w)
                    .copied()
                    .ok_or_else(|| ParseError::new(no, toks[i].col, format!("unknown morphism '{w}'")))
            };
            let g = look(0)?;
            expect_tok(no, &toks, 1, Tok::Dot, "'.'")?;
            let f = look(2)?;
            expect_tok(no, &toks, 3, Tok::Equals, "'='")?;
            let h = look(4)?;
            if toks.len() > 5 {
                return Err(ParseError::new(no, toks[5].col, "unexpected trailing input"));
            }
            composites.push((no, g, f, h));
        }
    }
    for &(no, g, f, h) in &composites {
        builder.set_composite(g, f, h);
        let _ = no;
    }
    let last = lines.last_line();
    builder.build().map_err(|e| {
        let line = match &e {
            super::CategoryError::NotComposable { g, f } => composites
                .iter()
                .find(|c| c.1 == *g && c.2 == *f)
                .map_or(last, |c| c.0),
            _ => last,
        };
        ParseError::new(line, 1, e.to_string())
    })
}

pub fn print_category(c: &FinCategory) -> String {
    let obj = unique_labels(c.obj_labels(), &HashSet::new());
    let reserved: HashSet<String> = obj.iter().map(|l| format!("1_{l}")).collect();
    let non_id: Vec<String> = c.non_identities().map(|f| c.mor_label(f).to_string()).collect();
    let non_id = unique_labels(&non_id, &reserved);
    let mor = |f: Mor| -> String {
        if c.is_identity(f) {
            quote(&format!("1_{}", obj[f]))
        } else {
            quote(&non_id[f - c.num_objects()])
        }
    };
    let mut s = String::new();
    let objs: Vec<String> = obj.iter().map(|l| quote(l)).collect();
    let _ = writeln!(s, "objects: {}", objs.join(", "));
    let _ = writeln!(s, "morphisms:");
    for f in c.non_identities() {
        let _ = writeln!(s, "  {}: {} -> {}", mor(f), quote(&obj[c.src(f)]), quote(&obj[c.tgt(f)]));
    }
    let _ = writeln!(s, "compose:");
    for f in c.non_identities() {
        for &g in c.out_of(c.tgt(f)) {
            if c.is_identity(g) {
                continue;
            }
            let h = c.compose(g, f).expect("composable");
            let _ = writeln!(s, "  {} . {} = {}", mor(g), mor(f), mor(h));
        }
    }
    s
}

fn morphism_names(c: &FinCategory) -> HashMap<String, Mor> {
    let obj = unique_labels(c.obj_labels(), &HashSet::new());
    let reserved: HashSet<String> = obj.iter().map(|l| format!("1_{l}")).collect();
    let non_id: Vec<String> = c.non_identities().map(|f| c.mor_label(f).to_string()).collect();
    let non_id = unique_labels(&non_id, &reserved);
    let mut names: HashMap<String, Mor> =
        obj.iter().enumerate().map(|(i, l)| (format!("1_{l}"), i)).collect();
    for (k, l) in non_id.into_iter().enumerate() {
        names.insert(l, c.num_objects() + k);
    }
    names
}

pub fn parse_functor(text: &str, dom: Arc<FinCategory>, cod: Arc<FinCategory>) -> Result<Functor, ParseError> {
    let mut lines = Lines::new(text);
    let dom_obj: HashMap<String, Obj> = unique_labels(dom.obj_labels(), &HashSet::new())
        .into_iter()
        .enumerate()
        .map(|(i, l)| (l, i))
        .collect();
    let cod_obj: HashMap<String, Obj> = unique_labels(cod.obj_labels(), &HashSet::new())
        .into_iter()
        .enumerate()
        .map(|(i, l)| (l, i))
        .collect();
    let dom_mor = morphism_names(&dom);
    let cod_mor = morphism_names(&cod);
    let pair = |no: usize, toks: &[Token]| -> Result<(String, String), ParseError> {
        let a = expect_word(no, toks, 0)?;
        expect_tok(no, toks, 1, Tok::Arrow, "'->'")?;
        let b = expect_word(no, toks, 2)?;
        if toks.len() > 3 {
            return Err(ParseError::new(no, toks[3].col, "unexpected trailing input"));
        }
        Ok((a, b))
    };
    let mut obj_map: Vec<Option<Obj>> = vec![None; dom.num_objects()];
    lines.header("objects")?;
    for (no, toks) in lines.body(&["morphisms"])? {
        let (a, b) = pair(no, &toks)?;
        let x = *dom_obj
            .get(&a)
            .ok_or_else(|| ParseError::new(no, toks[0].col, format!("unknown domain object '{a}'")))?;
        let y = *cod_obj
            .get(&b)
            .ok_or_else(|| ParseError::new(no, toks[2].col, format!("unknown codomain object '{b}'")))?;
        obj_map[x] = Some(y);
    }
    let mut mor_map: Vec<Option<Mor>> = vec![None; dom.num_morphisms()];
    if lines.peek().is_some() {
        lines.header("morphisms")?;
        for (no, toks) in lines.body(&[])? {
            let (a, b) = pair(no, &toks)?;
            let f = *dom_mor
                .get(&a)
                .ok_or_else(|| ParseError::new(no, toks[0].col, format!("unknown domain morphism '{a}'")))?;
            let h = *cod_mor
                .get(&b)
                .ok_or_else(|| ParseError::new(no, toks[2].col, format!("unknown codomain morphism '{b}'")))?;
            mor_map[f] = Some(h);
        }
    }
    let last = lines.last_line();
    let obj_map: Vec<Obj> = obj_map
        .into_iter()
        .enumerate()
        .map(|(x, y)| {
            y.ok_or_else(|| ParseError::new(last, 1, format!("object '{}' is not mapped", dom.obj_label(x))))
        })
        .collect::<Result<_, _>>()?;
    let mor_map: Vec<Mor> = mor_map
        .into_iter()
        .enumerate()
        .map(|(f, h)| match h {
            Some(h) => Ok(h),
            None if dom.is_identity(f) => Ok(cod.identity(obj_map[f])),
            None => Err(ParseError::new(last, 1, format!("morphism '{}' is not mapped", dom.mor_label(f)))),
        })
        .collect::<Result<_, _>>()?;
    Ok(Functor::new(dom, cod, obj_map, mor_map))
}

pub fn print_functor(f: &Functor) -> String {
    let dom_obj = unique_labels(f.dom.obj_labels(), &HashSet::new());
    let cod_obj = unique_labels(f.cod.obj_labels(), &HashSet::new());
    let name_of = |c: &FinCategory| -> Vec<String> {
        let mut names = vec![String::new(); c.num_morphisms()];
        for (l, m) in morphism_names(c) {
            names[m] = l;
        }
        names
    };
    let dom_mor = name_of(&f.dom);
    let cod_mor = name_of(&f.cod);
    let mut s = String::from("objects:\n");
    for x in f.dom.objects() {
        let _ = writeln!(s, "  {} -> {}", quote(&dom_obj[x]), quote(&cod_obj[f.ob(x)]));
    }
    s.push_str("morphisms:\n");
    for m in f.dom.non_identities() {
        let _ = writeln!(s, "  {} -> {}", quote(&dom_mor[m]), quote(&cod_mor[f.mor(m)]));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const ORDINAL2: &str = "objects: a, b, c
morphisms:
  f: a -> b
  g: b -> c
  h: a -> c
compose:
  g . f = h
";

    #[test]
    fn parse_and_print_round_trip() {
        let c = parse_category(ORDINAL2).unwrap();
        assert!(c.is_valid());
        assert_eq!(print_category(&c), ORDINAL2);
        assert_eq!(parse_category(&print_category(&c)).unwrap(), c);
    }

    #[test]
    fn fixtures_round_trip() {
        for c in [fixtures::monoid5(), fixtures::cospan(), fixtures::free_iso(), fixtures::poset_s2_big()] {
            assert_eq!(parse_category(&print_category(&c)).unwrap(), c);
        }
    }

    #[test]
    fn quoted_labels_survive() {
        let c = crate::fincat::construct::product(&fixtures::arrow(), &fixtures::arrow());
        let back = parse_category(&print_category(&c)).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn missing_composite_reports_a_line() {
        let err = parse_category("objects: a, b, c\nmorphisms:\n  f: a -> b\n  g: b -> c\n").unwrap_err();
        assert!(err.message.contains("no entry"), "{err}");
    }

    #[test]
    fn unknown_object_has_position() {
        let err = parse_category("objects: a\nmorphisms:\n  f: a -> zz\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, 11));
    }

    #[test]
    fn bad_character_has_position() {
        let err = parse_category("objects: a; b\n").unwrap_err();
        assert_eq!((err.line, err.column), (1, 11));
    }

    #[test]
    fn functor_round_trip() {
        let one = fixtures::terminal().into_arc();
        let two = fixtures::arrow().into_arc();
        let f = Functor::point(one.clone(), two.clone(), 1);
        let text = print_functor(&f);
        assert_eq!(parse_functor(&text, one, two).unwrap(), f);
    }
}
