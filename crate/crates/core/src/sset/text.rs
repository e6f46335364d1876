//! Level-by-level text format.
//!
//! ```text
//! dimension: 1
//! simplices 0: a, b
//! simplices 1: f, 1a, 1b
//! faces 1:
//!   f: b, a
//!   1a: a, a
//!   1b: b, b
//! degeneracies 0:
//!   a: 1a
//!   b: 1b
//! ```
//!
//! Face rows list `d_0, ..., d_k`; degeneracy rows list `s_0, ..., s_k`.

use std::collections::{HashMap, HashSet};
use std::fmt::Write;

use super::TruncatedSSet;
use crate::fincat::text::{quote, tokenize, unique_labels, word_list, Tok, Token};
use crate::fincat::ParseError;

enum Section {
    Faces(usize),
    Degens(usize),
}

fn header(no: usize, toks: &[Token]) -> Option<Result<(String, usize, Vec<Token>), ParseError>> {
    match toks {
        [Token { tok: Tok::Word(kw), .. }, Token { tok: Tok::Word(n), col }, Token { tok: Tok::Colon, .. }, rest @ ..]
            if ["simplices", "faces", "degeneracies"].contains(&kw.as_str()) =>
        {
            Some(
                n.parse::<usize>()
                    .map(|k| (kw.clone(), k, rest.to_vec()))
                    .map_err(|_| ParseError::new(no, *col, "expected a level number")),
            )
        }
        _ => None,
    }
}

pub fn parse_sset(text: &str) -> Result<TruncatedSSet, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (no, first) = lines.next().ok_or_else(|| ParseError::new(1, 1, "expected 'dimension:'"))?;
    let toks = tokenize(no, first)?;
    let dim = match toks.as_slice() {
        [Token { tok: Tok::Word(w), .. }, Token { tok: Tok::Colon, .. }, Token { tok: Tok::Word(d), col }]
            if w == "dimension" =>
        {
            d.parse::<usize>().map_err(|_| ParseError::new(no, *col, "expected a dimension"))?
        }
        _ => return Err(ParseError::new(no, 1, "expected 'dimension: <n>'")),
    };
    let mut labels: Vec<Option<Vec<String>>> = vec![None; dim + 1];
    let mut index: Vec<HashMap<String, usize>> = vec![HashMap::new(); dim + 1];
    let mut faces: Vec<Vec<Vec<Option<usize>>>> = Vec::new();
    let mut degens: Vec<Vec<Vec<Option<usize>>>> = Vec::new();
    let mut section: Option<Section> = None;
    let mut last = no;
    for (no, line) in lines {
        last = no;
        let toks = tokenize(no, line)?;
        if let Some(h) = header(no, &toks) {
            let (kw, k, rest) = h?;
            if k > dim {
                return Err(ParseError::new(no, toks[1].col, format!("level {k} above the dimension")));
            }
            match kw.as_str() {
                "simplices" => {
                    let names = word_list(no, &rest)?;
                    for (i, n) in names.iter().enumerate() {
                        if index[k].insert(n.clone(), i).is_some() {
                            return Err(ParseError::new(no, 1, format!("duplicate simplex '{n}'")));
                        }
                    }
                    labels[k] = Some(names);
                    section = None;
                }
                "faces" | "degeneracies" => {
                    let is_face = kw == "faces";
                    if (is_face && k == 0) || (!is_face && k == dim) {
                        return Err(ParseError::new(no, toks[1].col, format!("no {kw} at level {k}")));
                    }
                    let (Some(here), Some(_)) = (&labels[k], &labels[if is_face { k - 1 } else { k + 1 }]) else {
                        return Err(ParseError::new(no, 1, "simplices must be declared before their maps"));
                    };
                    let n = here.len();
                    if faces.is_empty() {
                        faces = (0..=dim).map(|l| vec![Vec::new(); if l == 0 { 0 } else { l + 1 }]).collect();
                        degens = (0..=dim).map(|l| vec![Vec::new(); if l == dim { 0 } else { l + 1 }]).collect();
                    }
                    let table = if is_face { &mut faces[k] } else { &mut degens[k] };
                    for t in table.iter_mut() {
                        *t = vec![None; n];
                    }
                    section = Some(if is_face { Section::Faces(k) } else { Section::Degens(k) });
                }
                _ => unreachable!(),
            }
            continue;
        }
        let Some(sec) = &section else {
            return Err(ParseError::new(no, 1, "row outside a faces or degeneracies section"));
        };
        let (k, target, is_face) = match *sec {
            Section::Faces(k) => (k, k - 1, true),
            Section::Degens(k) => (k, k + 1, false),
        };
        let name = match toks.first() {
            Some(Token { tok: Tok::Word(w), .. }) => w.clone(),
            _ => return Err(ParseError::new(no, 1, "expected a simplex name")),
        };
        let x = *index[k]
            .get(&name)
            .ok_or_else(|| ParseError::new(no, toks[0].col, format!("unknown simplex '{name}'")))?;
        if toks.get(1).map(|t| &t.tok) != Some(&Tok::Colon) {
            return Err(ParseError::new(no, toks.get(1).map_or(1, |t| t.col), "expected ':'"));
        }
        let images = word_list(no, &toks[2..])?;
        let table = if is_face { &mut faces[k] } else { &mut degens[k] };
        if images.len() != table.len() {
            return Err(ParseError::new(no, 1, format!("expected {} entries", table.len())));
        }
        for (i, img) in images.iter().enumerate() {
            let y = *index[target]
                .get(img)
                .ok_or_else(|| ParseError::new(no, 1, format!("unknown simplex '{img}' at level {target}")))?;
            table[i][x] = Some(y);
        }
    }
    let labels: Vec<Vec<String>> = labels
        .into_iter()
        .enumerate()
        .map(|(k, l)| l.ok_or_else(|| ParseError::new(last, 1, format!("level {k} is not declared"))))
        .collect::<Result<_, _>>()?;
    if faces.is_empty() {
        faces = (0..=dim).map(|l| vec![Vec::new(); if l == 0 { 0 } else { l + 1 }]).collect();
        degens = (0..=dim).map(|l| vec![Vec::new(); if l == dim { 0 } else { l + 1 }]).collect();
    }
    let complete = |t: Vec<Vec<Vec<Option<usize>>>>, what: &str| -> Result<Vec<Vec<Vec<usize>>>, ParseError> {
        t.into_iter()
            .enumerate()
            .map(|(k, level)| {
                level
                    .into_iter()
                    .map(|row| {
                        if row.len() != labels[k].len() {
                            return Err(ParseError::new(last, 1, format!("{what} at level {k} missing")));
                        }
                        row.into_iter()
                            .enumerate()
                            .map(|(x, y)| {
                                y.ok_or_else(|| {
                                    ParseError::new(last, 1, format!("{what} of '{}' missing", labels[k][x]))
                                })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    };
    let faces = complete(faces, "faces")?;
    let degens = complete(degens, "degeneracies")?;
    let counts = labels.iter().map(Vec::len).collect();
    TruncatedSSet::from_tables(dim, counts, faces, degens, Some(labels)).map_err(|e| ParseError::new(last, 1, e.to_string()))
}

pub fn print_sset(x: &TruncatedSSet) -> String {
    let names: Vec<Vec<String>> =
        (0..=x.dim()).map(|k| unique_labels(x.labels(k), &HashSet::new()).into_iter().map(|l| quote(&l)).collect()).collect();
    let mut s = String::new();
    let _ = writeln!(s, "dimension: {}", x.dim());
    for (k, level) in names.iter().enumerate() {
        let _ = writeln!(s, "simplices {k}: {}", level.join(", "));
    }
    for k in 1..=x.dim() {
        let _ = writeln!(s, "faces {k}:");
        for y in 0..x.count(k) {
            let row: Vec<&str> = x.face_tuple(k, y).iter().map(|&f| names[k - 1][f].as_str()).collect();
            let _ = writeln!(s, "  {}: {}", names[k][y], row.join(", "));
        }
    }
    for k in 0..x.dim() {
        let _ = writeln!(s, "degeneracies {k}:");
        for y in 0..x.count(k) {
            let row: Vec<&str> = (0..=k).map(|i| names[k + 1][x.degen(k, i, y)].as_str()).collect();
            let _ = writeln!(s, "  {}: {}", names[k][y], row.join(", "));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::super::nerve::nerve;
    use super::*;
    use crate::fixtures;

    #[test]
    fn nerve_round_trips() {
        for c in [fixtures::arrow(), fixtures::monoid5(), fixtures::cospan()] {
            let n = nerve(&c, 2).unwrap();
            let back = parse_sset(&print_sset(&n.sset)).unwrap();
            assert_eq!(back.counts(), n.sset.counts());
            for k in 1..=2 {
                for y in 0..back.count(k) {
                    assert_eq!(back.face_tuple(k, y), n.sset.face_tuple(k, y));
                }
            }
            back.check_identities().unwrap();
        }
    }

    #[test]
    fn parses_the_documented_example() {
        let text = "dimension: 1\nsimplices 0: a, b\nsimplices 1: f, 1a, 1b\nfaces 1:\n  f: b, a\n  1a: a, a\n  1b: b, b\ndegeneracies 0:\n  a: 1a\n  b: 1b\n";
        let x = parse_sset(text).unwrap();
        assert_eq!(x.counts(), &[2, 3]);
        assert!(!x.is_degenerate(1, 0) && x.is_degenerate(1, 1));
        x.check_identities().unwrap();
    }

    #[test]
    fn missing_face_is_reported() {
        let text = "dimension: 1\nsimplices 0: a\nsimplices 1: 1a\nfaces 1:\ndegeneracies 0:\n  a: 1a\n";
        assert!(parse_sset(text).unwrap_err().message.contains("missing"));
    }
}
