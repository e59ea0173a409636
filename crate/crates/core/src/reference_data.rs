//! Published reference values for H1 and its five faithful transitive actions,
//! transcribed verbatim (including the one misprint), plus a parser for the
//! printed multiplicity formulas.

use std::fmt;

use thiserror::Error;

use crate::exact_algebra::{BigInt, BigRat};
use crate::tensor_centralizer::ClosedForm;

pub const GROUP_ORDER: usize = 96;
pub const CLASS_COUNT: usize = 16;
pub const SUBGROUP_CLASS_COUNT: usize = 24;
pub const DEGREE_SUM: i64 = 36;

/// Labels of the faithful actions, in published order.
pub const THETA_LABELS: [&str; 5] = ["theta1", "theta3", "theta4", "theta8", "theta9"];

/// Fixed-point counts on the published classes 1..16.
pub const FIXED_POINTS: [[u64; 16]; 5] = [
    [96, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [48, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 8, 0],
    [32, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 8, 0, 0, 0, 0],
    [24, 0, 0, 0, 0, 0, 0, 0, 4, 0, 4, 0, 0, 0, 4, 0],
    [24, 0, 0, 0, 0, 0, 4, 0, 0, 0, 0, 0, 4, 0, 4, 0],
];

/// Multiplicities of the published irreducibles 1..16.
pub const DECOMPOSITIONS: [[u32; 16]; 5] = [
    [1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 4, 4],
    [1, 1, 0, 0, 2, 0, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2],
    [1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 2, 2],
    [1, 0, 0, 0, 1, 0, 1, 1, 0, 0, 0, 1, 1, 1, 1, 1],
    [1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 0, 1, 1, 1, 1, 1],
];

/// Dimension of the centralizer for k = 1..4; rows theta1, theta3, theta4, theta8 = theta9.
pub const DIM_TABLE: [[u64; 4]; 4] = [
    [96, 884736, 8153726976, 75144747810816],
    [28, 55552, 127418368, 293535219712],
    [16, 11264, 11206656, 11454644224],
    [9, 3504, 1991424, 1146630144],
];

/// Row of [`DIM_TABLE`] for each entry of [`THETA_LABELS`].
pub const DIM_TABLE_ROW: [usize; 5] = [0, 1, 2, 3, 3];

/// Letter naming the multiplicity of each irreducible (the letter `k` is skipped).
pub const LETTERS: [char; 16] = ['a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'i', 'j', 'l', 'm', 'n', 'o', 'p', 'q'];

/// Which letter's formula gives each irreducible's multiplicity, per action.
pub const LETTER_PATTERNS: [&str; 5] =
    ["aaaaeeeeeellllpp", "aaccefggggllnnpp", "aaaaeeeeeellllpp", "abbbefeefflmmmpp", "abbbefffeelmmmpp"];

/// A printed formula and, where it is a misprint, the reading the computation supports.
#[derive(Clone, Copy, Debug)]
pub struct PrintedFormula {
    pub letter: char,
    pub printed: &'static str,
    pub correction: Option<&'static str>,
}

const fn pf(letter: char, printed: &'static str) -> PrintedFormula {
    PrintedFormula { letter, printed, correction: None }
}

pub const FORMULAS: [&[PrintedFormula]; 5] = [
    &[
        pf('a', "96^(k-1)"),
        pf('e', "96^k/48"),
        pf('l', "96^k/32"),
        PrintedFormula { letter: 'p', printed: "96/24", correction: Some("96^k/24") },
    ],
    &[
        pf('a', "48^(k-1)/2 + 8^(k-1)/2"),
        pf('c', "48^(k-1)/2 - 8^(k-1)/2"),
        pf('e', "48^(k-1) + 8^(k-1)"),
        pf('f', "48^(k-1) - 8^(k-1)"),
        pf('g', "48^(k-1)"),
        pf('l', "48^k/32 - 8^(k-1)/2"),
        pf('n', "48^k/32 + 8^(k-1)/2"),
        pf('p', "48^k/24"),
    ],
    &[pf('a', "32^(k-1)/3 + 8^k/12"), pf('e', "32^k/48 - 8^k/12"), pf('l', "32^(k-1)"), pf('p', "32^k/24 + 8^k/12")],
    &[
        pf('a', "24^(k-1)/4 + 3*4^(k-2)"),
        pf('b', "24^(k-1)/4 - 4^(k-2)"),
        pf('e', "24^(k-1)/2 + 4^(k-1)/2"),
        pf('f', "24^(k-1)/2 - 4^(k-1)/2"),
        pf('l', "24^k/32 - 3*4^(k-2)"),
        pf('m', "24^k/32 + 4^(k-2)"),
        pf('p', "24^(k-1)"),
    ],
    &[
        pf('a', "24^(k-1)/4 + 3*4^(k-2)"),
        pf('b', "24^(k-1)/4 - 4^(k-2)"),
        pf('e', "24^(k-1)/2 + 4^(k-1)/2"),
        pf('f', "24^(k-1)/2 - 4^(k-1)/2"),
        pf('l', "24^k/32 - 3*4^(k-2)"),
        pf('m', "24^k/32 + 4^(k-2)"),
        pf('p', "24^(k-1)"),
    ],
];

/// Wedderburn components as printed: `(count, letter)` summands in order.
pub const WEDDERBURN: [&[(usize, char)]; 5] = [
    &[(4, 'a'), (6, 'e'), (4, 'l'), (2, 'p')],
    &[(2, 'a'), (2, 'c'), (1, 'e'), (1, 'f'), (4, 'g'), (2, 'l'), (2, 'n'), (2, 'p')],
    &[(4, 'a'), (6, 'e'), (4, 'l'), (2, 'p')],
    &[(1, 'a'), (3, 'b'), (1, 'e'), (3, 'f'), (2, 'e'), (1, 'l'), (3, 'm'), (2, 'p')],
    &[(1, 'a'), (3, 'b'), (1, 'e'), (3, 'f'), (2, 'e'), (1, 'l'), (3, 'm'), (2, 'p')],
];

/// Centralizer dimension as a function of k, per action.
pub const DIMENSION_FORMULAS: [&str; 5] = [
    "96^(2k-1)",
    "48^(2k-1)/2 + 8^(2k-1)/2",
    "32^(2k-1)/3 + 8^(2k)/12",
    "24^(2k-1)/4 + 3*4^(2k-2)",
    "24^(2k-1)/4 + 3*4^(2k-2)",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse formula {input:?} at byte {pos}: {msg}")]
pub struct FormulaError {
    pub input: String,
    pub pos: usize,
    pub msg: &'static str,
}

/// `coef * base^(k_mult*k + offset)`; a constant has `base = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coef: BigRat,
    pub base: u64,
    pub k_mult: u32,
    pub offset: i32,
}

impl Term {
    fn eval(&self, k: u32) -> BigRat {
        let e = self.k_mult as i64 * k as i64 + self.offset as i64;
        let b = BigRat::from_integer(BigInt::from(self.base));
        let p = if e >= 0 { num_traits::pow(b, e as usize) } else { num_traits::pow(b.recip(), (-e) as usize) };
        &self.coef * p
    }
}

/// A sum of terms, evaluated exactly for integer `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula {
    pub source: String,
    pub terms: Vec<Term>,
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

impl Formula {
    pub fn parse(s: &str) -> Result<Self, FormulaError> {
        Parser { src: s, bytes: s.as_bytes(), pos: 0 }.formula()
    }

    pub fn eval(&self, k: u32) -> BigRat {
        self.terms.iter().map(|t| t.eval(k)).sum()
    }

    /// Rewrites into `sum_v c_v v^(k-1)`; `None` if some exponent is not linear in k with slope 0 or 1.
    pub fn to_closed_form(&self) -> Option<ClosedForm> {
        let mut terms = Vec::new();
        for t in &self.terms {
            match t.k_mult {
                0 => terms.push((1, t.eval(0))),
                1 => {
                    // base^(k+off) = base^(off+1) * base^(k-1)
                    let shifted = Term { coef: t.coef.clone(), base: t.base, k_mult: 0, offset: t.offset + 1 };
                    terms.push((t.base, shifted.eval(0)));
                }
                _ => return None,
            }
        }
        Some(ClosedForm::new(terms))
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &'static str) -> FormulaError {
        FormulaError { input: self.src.to_string(), pos: self.pos, msg }
    }

    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<u64, FormulaError> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        self.src[start..self.pos].parse().map_err(|_| self.err("expected an integer"))
    }

    fn formula(mut self) -> Result<Formula, FormulaError> {
        let mut terms = Vec::new();
        let mut negative = self.eat(b'-');
        loop {
            let mut t = self.term()?;
            if negative {
                t.coef = -t.coef;
            }
            terms.push(t);
            match self.peek() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return Err(self.err("expected + or -")),
            }
            self.pos += 1;
        }
        Ok(Formula { source: self.src.to_string(), terms })
    }

    /// `[n*]b[^e][/d]` or `n[/d]`.
    fn term(&mut self) -> Result<Term, FormulaError> {
        let first = self.int()?;
        let (coef, base, (k_mult, offset)) = if self.eat(b'*') {
            let base = self.int()?;
            if !self.eat(b'^') {
                return Err(self.err("expected ^ after base"));
            }
            (first, base, self.exponent()?)
        } else if self.eat(b'^') {
            (1, first, self.exponent()?)
        } else {
            (first, 1, (0, 0))
        };
        let den = if self.eat(b'/') { self.int()? } else { 1 };
        if den == 0 {
            return Err(self.err("zero denominator"));
        }
        Ok(Term { coef: BigRat::new(coef.into(), den.into()), base, k_mult, offset })
    }

    /// `k`, `n`, or `(ak +- b)` / `(ak)` / `(n)`.
    fn exponent(&mut self) -> Result<(u32, i32), FormulaError> {
        if self.eat(b'(') {
            let e = self.linear()?;
            if !self.eat(b')') {
                return Err(self.err("expected )"));
            }
            Ok(e)
        } else if self.eat(b'k') {
            Ok((1, 0))
        } else {
            Ok((0, self.int()? as i32))
        }
    }

    fn linear(&mut self) -> Result<(u32, i32), FormulaError> {
        let lead = if self.peek().is_some_and(|b| b.is_ascii_digit()) { Some(self.int()?) } else { None };
        if !self.eat(b'k') {
            return lead.map(|n| (0, n as i32)).ok_or_else(|| self.err("expected k"));
        }
        let mult = lead.unwrap_or(1) as u32;
        let offset = if self.eat(b'+') {
            self.int()? as i32
        } else if self.eat(b'-') {
            -(self.int()? as i32)
        } else {
            0
        };
        Ok((mult, offset))
    }
}

/// Letter formula for `letter` in action `theta` (0-based), with its correction if any.
pub fn formula_for(theta: usize, letter: char) -> Option<&'static PrintedFormula> {
    FORMULAS[theta].iter().find(|f| f.letter == letter)
}

/// Letter assigned to each published irreducible for an action.
pub fn letters(theta: usize) -> Vec<char> {
    LETTER_PATTERNS[theta].chars().collect()
}

/// `(letter, total count)` after merging repeated letters, sorted by letter.
pub fn merged_wedderburn(theta: usize) -> Vec<(char, usize)> {
    let mut out: Vec<(char, usize)> = Vec::new();
    for &(n, l) in WEDDERBURN[theta] {
        match out.iter_mut().find(|(m, _)| *m == l) {
            Some(e) => e.1 += n,
            None => out.push((l, n)),
        }
    }
    out.sort_unstable();
    out
}
