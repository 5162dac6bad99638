//! Weight expressions: `+`, `*`, `/`, `^n`, parentheses, `0`, `1`, hex
//! literals for GF(2^k) (`0x5`), the generator `t` of GF(2^k), and variable
//! names for rational functions.

use twistkh_core::field::{Field, FieldElement, Gf2kElem, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("column {column}: {message}")]
pub struct ExprError {
    /// 1-based column within the expression
    pub column: usize,
    pub message: String,
}

pub fn parse_weight(text: &str, field: &Field) -> Result<FieldElement, ExprError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, field };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a Field,
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> ExprError {
        ExprError { column: self.pos + 1, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn lift<T>(&self, r: Result<T, twistkh_core::FieldError>, at: usize) -> Result<T, ExprError> {
        r.map_err(|e| ExprError { column: at + 1, message: e.to_string() })
    }

    fn expr(&mut self) -> Result<FieldElement, ExprError> {
        let mut acc = self.term()?;
        while self.peek() == Some(b'+') {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.term()?;
            acc = self.lift(acc.add(&rhs), at)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FieldElement, ExprError> {
        let mut acc = self.power()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.power()?;
            let rhs = if op == b'/' {
                self.lift(rhs.inv(), at).map_err(|_| ExprError { column: at + 1, message: "division by zero".into() })?
            } else {
                rhs
            };
            acc = self.lift(acc.mul(&rhs), at)?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<FieldElement, ExprError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let exp: u32 = digits.parse().map_err(|_| ExprError { column: start + 1, message: "expected an exponent".into() })?;
        let mut acc = self.field.one();
        for _ in 0..exp {
            acc = self.lift(acc.mul(&base), start)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<FieldElement, ExprError> {
        match self.peek() {
            None => Err(self.err("unexpected end of expression")),
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.ident(),
            Some(c) => Err(self.err(format!("unexpected character '{}'", c as char))),
        }
    }

    fn number(&mut self) -> Result<FieldElement, ExprError> {
        let start = self.pos;
        let at_err = |m: &str| ExprError { column: start + 1, message: m.into() };
        if self.src[start..].starts_with(b"0x") || self.src[start..].starts_with(b"0X") {
            self.pos += 2;
            let s = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_hexdigit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.src[s..self.pos]).unwrap();
            let bits = u64::from_str_radix(digits, 16).map_err(|_| at_err("bad hex literal"))?;
            return match self.field {
                Field::Gf2k(g) if g.contains(bits) => Ok(FieldElement::Gf2k(Gf2kElem::new(*g, bits))),
                Field::Gf2k(g) => Err(at_err(&format!("{digits} does not fit in GF(2^{})", g.degree()))),
                Field::Gf2 if bits <= 1 => Ok(FieldElement::Gf2(bits == 1)),
                _ => Err(at_err("hex literals denote elements of GF(2) or GF(2^k)")),
            };
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        match &self.src[start..self.pos] {
            b"0" => Ok(self.field.zero()),
            b"1" => Ok(self.field.one()),
            _ => Err(at_err("only the integers 0 and 1 are allowed")),
        }
    }

    fn ident(&mut self) -> Result<FieldElement, ExprError> {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let unknown = || ExprError { column: start + 1, message: format!("unknown variable '{name}'") };
        match self.field {
            Field::RatFn(r) => {
                let i = r.var_index(name).ok_or_else(unknown)?;
                Ok(FieldElement::Rat(RatFunc::var(r.nvars(), i)))
            }
            Field::Gf2k(g) if name == "t" && g.degree() >= 2 => Ok(FieldElement::Gf2k(Gf2kElem::new(*g, 2))),
            Field::Gf2k(g) if name == "t" => Ok(FieldElement::Gf2k(Gf2kElem::new(*g, (g.modulus() as u64) & g.mask()))),
            _ => Err(unknown()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use twistkh_core::field::RatFnField;

    #[test]
    fn gf2k_literals() {
        let f = Field::gf2k(3).unwrap();
        assert_eq!(f.format(&parse_weight("0x5", &f).unwrap()), "0x5");
        // t^3 = t + 1 in GF(8)
        assert_eq!(parse_weight("t^3", &f).unwrap(), parse_weight("t + 1", &f).unwrap());
        assert_eq!(parse_weight("1/t", &f).unwrap(), parse_weight("0x5", &f).unwrap());
        assert!(parse_weight("0x8", &f).is_err());
    }

    #[test]
    fn rational_expressions() {
        let f = Field::RatFn(RatFnField::new(["w1", "w2", "w3"]));
        let a = parse_weight("(w1+w2)/(w1*w3)", &f).unwrap();
        let b = parse_weight("1/w3 + w2/(w1*w3)", &f).unwrap();
        assert_eq!(a, b);
        assert_eq!(f.format(&parse_weight("w1 + w1", &f).unwrap()), "0");
    }

    #[test]
    fn errors_have_columns() {
        let f = Field::RatFn(RatFnField::new(["a"]));
        assert_eq!(parse_weight("a + b", &f).unwrap_err().column, 5);
        assert_eq!(parse_weight("a / 0", &f).unwrap_err().column, 3);
        assert_eq!(parse_weight("(a", &f).unwrap_err().column, 3);
        assert_eq!(parse_weight("2", &Field::Gf2).unwrap_err().column, 1);
    }
}
