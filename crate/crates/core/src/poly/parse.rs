//! Reading polynomials written in the ring's variable names.
//!
//! Grammar: sums of products of factors, where a factor is an integer, a
//! variable or a parenthesised expression, optionally raised to `^n`.

use super::{Poly, PolyError, PolyRing};

pub fn parse_poly(ring: &PolyRing, text: &str) -> Result<Poly, PolyError> {
    let mut p = Parser {
        ring,
        src: text.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    ring: &'a PolyRing,
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse {
            offset: self.pos,
            message: msg.to_string(),
        }
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

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let r = self.ring;
        let mut acc = Poly::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.product()?;
            acc = if sign < 0 { acc.sub(r, &t) } else { acc.add(r, &t) };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = acc.mul(self.ring, &f);
                }
                // Implicit multiplication like `2x` or `x(y+z)`.
                Some(c) if c.is_ascii_alphabetic() || c == b'(' => {
                    let f = self.power()?;
                    acc = acc.mul(self.ring, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            if e > u16::MAX as u64 {
                return Err(self.err("exponent too large"));
            }
            return Ok(base.pow(self.ring, e as u32));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64, PolyError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| self.err("integer out of range"))
    }

    fn atom(&mut self) -> Result<Poly, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let p = self.ring.field().p() as u64;
                let n = self.integer()?;
                Ok(Poly::constant(self.ring, (n % p) as i64))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ring.var_index(name) {
                    Some(i) => Ok(Poly::var(self.ring, i)),
                    None => {
                        self.pos = start;
                        Err(self.err(&format!("unknown variable '{}'", name)))
                    }
                }
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints_back() {
        let r = PolyRing::standard(101, &["x", "z1", "z2"]).unwrap();
        let p = parse_poly(&r, "3*x^2 - z1*z2 + (x+z1)^2 - x^2").unwrap();
        assert_eq!(p.fmt(&r), "3*x^2 + 2*x*z1 + z1^2 - z1*z2");
        assert_eq!(parse_poly(&r, &p.fmt(&r)).unwrap(), p);
        assert_eq!(parse_poly(&r, "-1").unwrap().fmt(&r), "-1");
    }

    #[test]
    fn reports_offsets() {
        let r = PolyRing::standard(101, &["x"]).unwrap();
        match parse_poly(&r, "x + y") {
            Err(PolyError::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("unexpected {:?}", other),
        }
        assert!(parse_poly(&r, "x +").is_err());
        assert!(parse_poly(&r, "(x").is_err());
    }
}
