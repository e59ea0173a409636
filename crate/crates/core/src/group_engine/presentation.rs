use std::fmt;

use thiserror::Error;

/// The bundled presentation of the order-96 reflection group.
pub const H1_PRESENTATION: &str = include_str!("../../data/h1.pres");

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    /// Column of the coset table: `2 * gen` for the generator, `2 * gen + 1` for its inverse.
    pub fn column(self) -> usize {
        2 * self.gen + self.inverse as usize
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Free reduction: cancels adjacent `x x^-1` pairs.
    pub fn reduced(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Space-separated rendering with uppercase inverses, `1` for the empty word.
    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|l| if l.inverse { names[l.gen].to_uppercase() } else { names[l.gen].clone() })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `gens:` line")]
    MissingGenerators,
    #[error("presentation has no relators")]
    NoRelators,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    /// Generators of a subgroup, from optional `sub:` lines.
    pub subgroup: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Self {
        Presentation { generators, relators, subgroup: Vec::new() }
    }

    pub fn h1() -> Self {
        Self::parse(H1_PRESENTATION).expect("bundled presentation parses")
    }

    /// `<a | a^n>`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let a = Letter::new(0, false);
        Self::new(vec!["a".into()], vec![Word(vec![a; n])])
    }

    /// `<s, t | s^2, t^2, (st)^3>`.
    pub fn symmetric3() -> Self {
        Self::parse("gens: s t\nrel: s s\nrel: t t\nrel: s t s t s t\n").expect("valid")
    }

    /// `<i, j | i^4, i^2 j^-2, i j i j^-1>`.
    pub fn quaternion() -> Self {
        Self::parse("gens: i j\nrel: i i i i\nrel: i i J J\nrel: i j i J\n").expect("valid")
    }

    /// Parses the line format
    ///
    /// ```text
    /// gens: s t
    /// rel: s s s s
    /// rel: s t s T S T
    /// sub: s
    /// ```
    ///
    /// Generator names are lowercase; the uppercase spelling denotes the inverse.
    /// Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut generators: Option<Vec<String>> = None;
        let mut relators = Vec::new();
        let mut subgroup = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| ParseError::Syntax { line: line_no, msg };
            let (key, rest) = line.split_once(':').ok_or_else(|| err(format!("expected `key: ...`, got {line:?}")))?;
            match key.trim() {
                "gens" => {
                    if generators.is_some() {
                        return Err(err("duplicate `gens:` line".into()));
                    }
                    let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                    if names.is_empty() {
                        return Err(err("no generators".into()));
                    }
                    for (k, n) in names.iter().enumerate() {
                        if !n.chars().all(|c| c.is_ascii_lowercase()) {
                            return Err(err(format!("generator name {n:?} must be lowercase ASCII letters")));
                        }
                        if names[..k].contains(n) {
                            return Err(err(format!("duplicate generator {n:?}")));
                        }
                    }
                    generators = Some(names);
                }
                key @ ("rel" | "sub") => {
                    let gens = generators.as_ref().ok_or(ParseError::MissingGenerators)?;
                    let word = parse_word(rest, gens).map_err(err)?;
                    if key == "rel" {
                        if word.is_empty() {
                            return Err(err("relator reduces to the empty word".into()));
                        }
                        relators.push(word);
                    } else {
                        subgroup.push(word);
                    }
                }
                other => return Err(err(format!("unknown key {other:?}"))),
            }
        }
        let generators = generators.ok_or(ParseError::MissingGenerators)?;
        if relators.is_empty() {
            return Err(ParseError::NoRelators);
        }
        Ok(Presentation { generators, relators, subgroup })
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, String> {
        parse_word(text, &self.generators)
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }
}

fn parse_word(text: &str, gens: &[String]) -> Result<Word, String> {
    let mut letters = Vec::new();
    for tok in text.split_whitespace() {
        if tok == "1" {
            continue;
        }
        let lower = tok.to_lowercase();
        let gen = gens.iter().position(|g| *g == lower).ok_or_else(|| format!("unknown generator {tok:?}"))?;
        let inverse = if tok == lower {
            false
        } else if tok == lower.to_uppercase() {
            true
        } else {
            return Err(format!("mixed-case token {tok:?}"));
        };
        letters.push(Letter::new(gen, inverse));
    }
    Ok(Word::reduced(letters))
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.generators.join(" "))?;
        for r in &self.relators {
            writeln!(f, "rel: {}", r.render(&self.generators))?;
        }
        for w in &self.subgroup {
            writeln!(f, "sub: {}", w.render(&self.generators))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_presentation() {
        let p = Presentation::h1();
        assert_eq!(p.generators, vec!["s", "t"]);
        assert_eq!(p.relators.len(), 3);
        assert_eq!(p.relators[2].render(&p.generators), "s t s T S T");
        assert_eq!(Presentation::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn free_reduction() {
        let p = Presentation::parse("gens: a b\nrel: a b B a A a\n").unwrap();
        assert_eq!(p.relators[0].render(&p.generators), "a a");
        let w = p.parse_word("a b").unwrap();
        assert_eq!(w.inverse().render(&p.generators), "B A");
    }

    #[test]
    fn errors() {
        assert_eq!(Presentation::parse("rel: a\n"), Err(ParseError::MissingGenerators));
        assert_eq!(Presentation::parse("gens: a\n"), Err(ParseError::NoRelators));
        assert!(matches!(Presentation::parse("gens: a\nrel: b\n"), Err(ParseError::Syntax { line: 2, .. })));
        assert!(matches!(Presentation::parse("gens: a\nrel: a A\n"), Err(ParseError::Syntax { line: 2, .. })));
        assert!(matches!(Presentation::parse("gens a\n"), Err(ParseError::Syntax { line: 1, .. })));
        assert!(matches!(Presentation::parse("gens: a\nrel: aA\n"), Err(ParseError::Syntax { .. })));
        assert!(matches!(Presentation::parse("gens: X\nrel: X\n"), Err(ParseError::Syntax { .. })));
    }
}
