//! Text format for presentations.
//!
//! ```text
//! objects: a, b
//! generators:
//!   f: a -> b
//!   g: b -> a
//! relations:
//!   g . f = 1_a
//!   f . g = 1_b
//! ```
//!
//! Paths are written in composition order, so `g . f` applies `f` first.

use std::collections::{HashMap, HashSet};
use std::fmt::Write;

use super::{Generator, Path, PresentedCategory};
use crate::fincat::text::{
    expect_tok, expect_word, object_table, parse_edge_line, quote, unique_labels, word_list, Lines, Tok, Token,
};
use crate::fincat::{Obj, ParseError};

enum Factor {
    Identity(Obj),
    Gen(usize),
}

fn parse_path(
    no: usize,
    toks: &[Token],
    objects: &HashMap<String, Obj>,
    gens: &HashMap<String, usize>,
    p: &PresentedCategory,
) -> Result<Path, ParseError> {
    let mut factors = Vec::new();
    for (k, chunk) in toks.chunks(2).enumerate() {
        let i = 2 * k;
        let w = expect_word(no, toks, i)?;
        let col = toks[i].col;
        let factor = if let Some(&g) = gens.get(&w) {
            Factor::Gen(g)
        } else if let Some(x) = w.strip_prefix("1_").and_then(|o| objects.get(o)) {
            Factor::Identity(*x)
        } else {
            return Err(ParseError::new(no, col, format!("unknown generator '{w}'")));
        };
        factors.push((col, factor));
        if chunk.len() == 2 {
            expect_tok(no, toks, i + 1, Tok::Dot, "'.'")?;
            if i + 2 >= toks.len() {
                return Err(ParseError::new(no, toks[i + 1].col, "path ends with '.'"));
            }
        }
    }
    let Some((_, first)) = factors.last() else {
        return Err(ParseError::new(no, 1, "empty path"));
    };
    let start = match *first {
        Factor::Identity(x) => x,
        Factor::Gen(g) => p.generators[g].src,
    };
    let mut at = start;
    let mut path = Path::empty(start);
    for (col, f) in factors.iter().rev() {
        match *f {
            Factor::Identity(x) if x == at => {}
            Factor::Gen(g) if p.generators[g].src == at => {
                path.gens.push(g);
                at = p.generators[g].tgt;
            }
            _ => return Err(ParseError::new(no, *col, "path is not composable")),
        }
    }
    Ok(path)
}

pub fn parse_presentation(text: &str) -> Result<PresentedCategory, ParseError> {
    let mut lines = Lines::new(text);
    let (obj_line, obj_toks) = lines.header("objects")?;
    let obj_labels = word_list(obj_line, &obj_toks)?;
    let objects = object_table(obj_line, &obj_toks, &obj_labels)?;
    let mut p = PresentedCategory { objects: obj_labels, generators: Vec::new(), relations: Vec::new() };
    let (gen_line, rest) = lines.header("generators")?;
    if let Some(t) = rest.first() {
        return Err(ParseError::new(gen_line, t.col, "unexpected input after 'generators:'"));
    }
    let mut gens = HashMap::new();
    for (no, toks) in lines.body(&["relations"])? {
        let (name, src, tgt) = parse_edge_line(no, &toks, &objects)?;
        if name.starts_with("1_") || gens.contains_key(&name) {
            return Err(ParseError::new(no, toks[0].col, format!("duplicate or reserved generator '{name}'")));
        }
        gens.insert(name.clone(), p.generators.len());
        p.generators.push(Generator { name, src, tgt });
    }
    if lines.peek().is_some() {
        let (rel_line, rest) = lines.header("relations")?;
        if let Some(t) = rest.first() {
            return Err(ParseError::new(rel_line, t.col, "unexpected input after 'relations:'"));
        }
        for (no, toks) in lines.body(&[])? {
            let Some(eq) = toks.iter().position(|t| t.tok == Tok::Equals) else {
                return Err(ParseError::new(no, 1, "expected 'path = path'"));
            };
            let lhs = parse_path(no, &toks[..eq], &objects, &gens, &p)?;
            let rhs = parse_path(no, &toks[eq + 1..], &objects, &gens, &p)?;
            if lhs.start != rhs.start || p.path_end(&lhs) != p.path_end(&rhs) {
                return Err(ParseError::new(no, toks[eq].col, "relation sides are not parallel"));
            }
            p.relations.push((lhs, rhs));
        }
    }
    Ok(p)
}

pub fn print_presentation(p: &PresentedCategory) -> String {
    let obj = unique_labels(&p.objects, &HashSet::new());
    let reserved: HashSet<String> = obj.iter().map(|l| format!("1_{l}")).collect();
    let names: Vec<String> = p.generators.iter().map(|g| g.name.clone()).collect();
    let names = unique_labels(&names, &reserved);
    let path = |q: &Path| -> String {
        if q.is_empty() {
            quote(&format!("1_{}", obj[q.start]))
        } else {
            q.gens.iter().rev().map(|&g| quote(&names[g])).collect::<Vec<_>>().join(" . ")
        }
    };
    let mut s = String::new();
    let objs: Vec<String> = obj.iter().map(|l| quote(l)).collect();
    let _ = writeln!(s, "objects: {}", objs.join(", "));
    let _ = writeln!(s, "generators:");
    for (g, gen) in p.generators.iter().enumerate() {
        let _ = writeln!(s, "  {}: {} -> {}", quote(&names[g]), quote(&obj[gen.src]), quote(&obj[gen.tgt]));
    }
    let _ = writeln!(s, "relations:");
    for (l, r) in &p.relations {
        let _ = writeln!(s, "  {} = {}", path(l), path(r));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::present::presentation_of;

    #[test]
    fn parses_the_free_isomorphism() {
        let text = "objects: a, b\ngenerators:\n  f: a -> b\n  g: b -> a\nrelations:\n  g . f = 1_a\n  f . g = 1_b\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.generators.len(), 2);
        assert_eq!(p.relations[0].0, Path { start: 0, gens: vec![0, 1] });
        assert_eq!(p.relations[0].1, Path::empty(0));
        assert_eq!(parse_presentation(&print_presentation(&p)).unwrap(), p);
    }

    #[test]
    fn round_trips_fixture_presentations() {
        for c in [fixtures::monoid5(), fixtures::poset_s2_big(), fixtures::cospan()] {
            let p = presentation_of(&c);
            assert_eq!(parse_presentation(&print_presentation(&p)).unwrap(), p);
        }
    }

    #[test]
    fn rejects_non_composable_paths() {
        let text = "objects: a, b\ngenerators:\n  f: a -> b\nrelations:\n  f . f = f\n";
        let e = parse_presentation(text).unwrap_err();
        assert_eq!(e.line, 5);
    }

    #[test]
    fn rejects_non_parallel_relations() {
        let text = "objects: a, b\ngenerators:\n  f: a -> b\nrelations:\n  f = 1_a\n";
        assert!(parse_presentation(text).unwrap_err().message.contains("parallel"));
    }
}
