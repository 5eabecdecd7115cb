use num::{BigInt, BigRational, Zero};

use super::{GaussRat, Scalar, ScalarError, Symbol};

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

fn is_ident_char(c: char) -> bool {
    !c.is_whitespace() && !"+-*/^()[]{},;:\"'".contains(c)
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, ScalarError> {
        Err(ScalarError::Parse { input: self.src.to_string(), pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = Scalar::zero();
        let mut sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -1
            }
            Some('+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            if sign < 0 {
                acc -= &t;
            } else {
                acc += &t;
            }
            match self.peek() {
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.power()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let p = self.power()?;
            acc = acc * p;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Scalar, ScalarError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            let Ok(e) = digits.parse::<u32>() else { return self.err("expected exponent") };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits().expect("digit run");
                let mut den = BigInt::from(1);
                if self.chars.get(self.pos) == Some(&'/') {
                    self.pos += 1;
                    match self.digits() {
                        Some(d) if !d.is_zero() => den = d,
                        _ => return self.err("bad denominator"),
                    }
                }
                let r = BigRational::new(num, den);
                let imaginary = self.chars.get(self.pos) == Some(&'i') && !self.chars.get(self.pos + 1).is_some_and(|&c| is_ident_char(c));
                if imaginary {
                    self.pos += 1;
                    return Ok(Scalar::constant(GaussRat::new(BigRational::zero(), r)));
                }
                Ok(Scalar::constant(GaussRat::new(r, BigRational::zero())))
            }
            Some(c) if is_ident_char(c) => {
                let start = self.pos;
                while self.pos < self.chars.len() && is_ident_char(self.chars[self.pos]) {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if name == "i" {
                    return Ok(Scalar::i());
                }
                match Symbol::lookup(&name) {
                    Some(s) => Ok(Scalar::from(s)),
                    None => Err(ScalarError::UnknownSymbol(name)),
                }
            }
            Some(_) => self.err("unexpected character"),
        }
    }
}

impl Scalar {
    /// Parses the canonical text form. Symbols must already be registered.
    pub fn parse(src: &str) -> Result<Scalar, ScalarError> {
        let mut p = Parser { chars: src.chars().collect(), pos: 0, src };
        let s = p.expr()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(s)
    }
}
