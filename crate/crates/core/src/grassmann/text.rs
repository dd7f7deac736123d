//! Text form of classes: `t1_1 t1_3 t2_1 t2_2 - 3*t1_1 t1_3 t2_2 t2_3`.
//!
//! ```text
//! class    := term (('+' | '-') term)*      leading sign optional
//! term     := [integer '*'] monomial | integer
//! monomial := factor+ | '1'
//! factor   := 't' k '_' i
//! ```
//! Factors may appear in any order; the sign of sorting them is applied.

use std::fmt;

use super::{Context, GeneratorIndex, HomologyClass, Monomial};
use crate::error::{Error, Result};
use crate::int::Int;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn index(&mut self, what: &str) -> Result<usize> {
        let at = self.pos;
        self.digits()
            .ok_or_else(|| Error::parse(at, format!("expected {what} index")))?
            .parse()
            .map_err(|_| Error::parse(at, format!("{what} index too large")))
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }
}

impl HomologyClass {
    pub fn parse(ctx: &Context, src: &str) -> Result<Self> {
        let mut cur = Cursor { src, pos: 0 };
        let mut out = HomologyClass::zero(ctx);
        cur.skip_ws();
        if cur.at_end() {
            return Err(Error::parse(0, "empty class"));
        }
        let mut first = true;
        while !cur.at_end() {
            let negative = match cur.peek() {
                Some(b'+') => {
                    cur.pos += 1;
                    false
                }
                Some(b'-') => {
                    cur.pos += 1;
                    true
                }
                _ if first => false,
                _ => return Err(Error::parse(cur.pos, "expected '+' or '-' between terms")),
            };
            first = false;
            cur.skip_ws();
            let (m, coeff) = parse_term(ctx, &mut cur)?;
            out.add_term(m, &if negative { -coeff } else { coeff });
            cur.skip_ws();
        }
        Ok(out)
    }
}

fn parse_term(ctx: &Context, cur: &mut Cursor<'_>) -> Result<(Monomial, Int)> {
    let start = cur.pos;
    let mut coeff = Int::ONE;
    if let Some(num) = cur.digits() {
        let value: Int = num.parse().map_err(|_| Error::parse(start, "bad integer"))?;
        cur.skip_ws();
        if cur.peek() == Some(b'*') {
            cur.pos += 1;
            cur.skip_ws();
            coeff = value;
        } else {
            // a bare integer is a multiple of the unit
            return Ok((Monomial::UNIT, value));
        }
    }
    let mut gens = Vec::new();
    let mut unit = false;
    loop {
        let at = cur.pos;
        match cur.peek() {
            Some(b't') => {
                cur.pos += 1;
                let k = cur.index("sphere")?;
                if cur.peek() != Some(b'_') {
                    return Err(Error::parse(cur.pos, "expected '_' in generator"));
                }
                cur.pos += 1;
                let i = cur.index("coordinate")?;
                gens.push((at, GeneratorIndex::new(k, i)));
            }
            Some(b'1') if gens.is_empty() => {
                cur.pos += 1;
                unit = true;
                break;
            }
            _ => break,
        }
        let save = cur.pos;
        cur.skip_ws();
        if cur.peek() != Some(b't') {
            cur.pos = save;
            break;
        }
    }
    if gens.is_empty() && !unit {
        return Err(Error::parse(cur.pos, "expected a monomial"));
    }
    let mut acc = 0u64;
    let mut inversions = 0u32;
    for &(at, g) in &gens {
        let p = ctx.position(g).map_err(|e| Error::parse(at, e.to_string()))?;
        if acc >> p & 1 == 1 {
            // repeated odd generator: the term is zero
            return Ok((Monomial::UNIT, Int::ZERO));
        }
        inversions += (acc >> p).count_ones();
        acc |= 1 << p;
    }
    if inversions % 2 == 1 {
        coeff = -coeff;
    }
    Ok((Monomial(acc), coeff))
}

/// Renders a monomial as space-separated generators; the unit as `1`.
pub fn format_monomial(ctx: &Context, m: Monomial) -> String {
    if m.is_unit() {
        return "1".into();
    }
    let parts: Vec<String> = m.positions().map(|p| ctx.generator_at(p).to_string()).collect();
    parts.join(" ")
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if m.is_unit() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&format_monomial(self.context(), m))?;
            } else {
                write!(f, "{mag}*{}", format_monomial(self.context(), m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomologyClass[{}]", self)
    }
}
