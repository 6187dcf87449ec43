//! Term grammar: `dot`, `dot^n`, `x`, `rcup`, `rcap`, `lcup`, `lcap`, `id(WORD)`,
//! `*` for tensor (left operand on the left), `.` for composition (left operand on top),
//! rational scalar prefixes, `+`/`-`, parentheses.

use num_traits::{One, Signed};

use super::{dot_power, lift, normalize, parse_word, word_string, Gen, GenTerm, Morphism};
use crate::{parse_q, Error};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<(Vec<Tok>, Vec<usize>), Error> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = vec![];
    let mut cols = vec![];
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if !c.is_whitespace() {
            cols.push(i + 1);
        }
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_digit() || cs[i] == '/') {
                i += 1;
            }
            out.push(Tok::Num(cs[st..i].iter().collect()));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "()*.+-^".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("line 1, column {}: unexpected character {:?}", i + 1, c)));
        }
    }
    cols.push(cs.len() + 1);
    Ok((out, cols))
}

struct P {
    toks: Vec<Tok>,
    cols: Vec<usize>,
    pos: usize,
    k: i64,
}

impl P {
    fn err(&self, expected: &str) -> Error {
        Error::Parse(format!("line 1, column {}: expected {}", self.cols[self.pos.min(self.cols.len() - 1)], expected))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Morphism, Error> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = acc.scale(&crate::q(-1));
        }
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = acc.add(&t)?;
            } else if self.eat('-') {
                let t = self.term()?;
                acc = acc.sub(&t)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Morphism, Error> {
        if let Some(Tok::Num(n)) = self.peek().cloned() {
            self.pos += 1;
            let c = parse_q(&n)?;
            self.eat('*');
            return Ok(self.term()?.scale(&c));
        }
        let mut acc = self.tens()?;
        while self.eat('.') {
            let t = self.tens()?;
            acc = Morphism::compose(&acc, &t)?;
        }
        Ok(acc)
    }

    fn tens(&mut self) -> Result<Morphism, Error> {
        let mut acc = self.atom()?;
        while self.eat('*') {
            let t = self.atom()?;
            acc = Morphism::tensor(&acc, &t)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Morphism, Error> {
        if self.eat('(') {
            let e = self.expr()?;
            if !self.eat(')') {
                return Err(self.err("`)`"));
            }
            return Ok(e);
        }
        let Some(Tok::Ident(name)) = self.peek().cloned() else {
            return Err(self.err("one of dot, x, rcup, rcap, lcup, lcap, id, `(`, a number"));
        };
        self.pos += 1;
        let k = self.k;
        let g = match name.as_str() {
            "dot" => {
                if self.eat('^') {
                    let Some(Tok::Num(n)) = self.peek().cloned() else {
                        return Err(self.err("an exponent"));
                    };
                    self.pos += 1;
                    let Ok(n) = n.parse::<u32>() else {
                        self.pos -= 1;
                        return Err(self.err("an integer exponent"));
                    };
                    return Ok(dot_power(n, k));
                }
                Gen::Dot
            }
            "x" => Gen::UpCross,
            "rcup" => Gen::RCup,
            "rcap" => Gen::RCap,
            "lcup" => Gen::LCup,
            "lcap" => Gen::LCap,
            "id" => {
                if !self.eat('(') {
                    return Err(self.err("`(` after id"));
                }
                let w = match self.peek().cloned() {
                    Some(Tok::Ident(w)) | Some(Tok::Num(w)) => {
                        self.pos += 1;
                        w
                    }
                    _ => String::new(),
                };
                if !self.eat(')') {
                    return Err(self.err("`)` after the id word"));
                }
                return Ok(Morphism::identity(&parse_word(&w)?, k));
            }
            _ => {
                self.pos -= 1;
                return Err(self.err(&format!("a generator, found unknown identifier {}", name)));
            }
        };
        normalize(&GenTerm::gen(g, k))
    }
}

/// Parses and normalizes a linear combination of terms at charge `k`.
pub fn parse_morphism(s: &str, k: i64) -> Result<Morphism, Error> {
    let (toks, cols) = lex(s)?;
    let mut p = P { toks, cols, pos: 0, k };
    let m = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("`+`, `-`, `.`, `*` or end of input"));
    }
    Ok(m)
}

fn gen_name(g: Gen) -> &'static str {
    match g {
        Gen::Dot => "dot",
        Gen::UpCross => "x",
        Gen::RCup => "rcup",
        Gen::RCap => "rcap",
        Gen::LCup => "lcup",
        Gen::LCap => "lcap",
    }
}

/// Prints a generator term in the term grammar.
pub fn term_expr(t: &GenTerm) -> String {
    if t.slices.is_empty() {
        return format!("id({})", word_string(&t.source));
    }
    let slices: Vec<String> = t
        .slices
        .iter()
        .rev()
        .map(|s| {
            let mut parts = vec![];
            if !s.left.is_empty() {
                parts.push(format!("id({})", word_string(&s.left)));
            }
            parts.push(gen_name(s.gen).to_string());
            if !s.right.is_empty() {
                parts.push(format!("id({})", word_string(&s.right)));
            }
            format!("({})", parts.join(" * "))
        })
        .collect();
    slices.join(" . ")
}

/// Prints a morphism as a linear combination of generator terms; parsing the result gives it back.
pub fn morphism_expr(m: &Morphism) -> String {
    let mut out = String::new();
    for (c, t) in lift::lift(m) {
        let neg = c.is_negative();
        let a = c.abs();
        let body = if a.is_one() { format!("({})", term_expr(&t)) } else { format!("{} * ({})", a, term_expr(&t)) };
        if out.is_empty() {
            out = if neg { format!("-{}", body) } else { body };
        } else {
            out = format!("{} {} {}", out, if neg { "-" } else { "+" }, body);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}
