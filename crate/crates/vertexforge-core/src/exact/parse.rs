//! Text form of exact scalars: a small expression grammar over the
//! literals `q`, `i` and integers with `+ - * / ^` and parentheses.
//! Fractional powers are written `q^(1/2)`. The renderer emits text
//! the parser reads back to the identical canonical value.

use alloc::format;
use alloc::string::String;
use core::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use super::gaussian::GaussianRational;
use super::poly::Poly;
use super::scalar::ExactScalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input where the problem was noticed.
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.pos, self.message)
    }
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser {
            input: input.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self
            .input
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected {:?}", c as char))
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.input.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected an integer");
        }
        let text = core::str::from_utf8(&self.input[start..self.pos]).unwrap();
        text.parse().or_else(|_| self.err("integer out of range"))
    }

    fn expr(&mut self) -> Result<ExactScalar, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ExactScalar, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let pos = self.pos;
                let rhs = self.unary()?;
                acc = match acc.try_div(&rhs) {
                    Some(v) => v,
                    None => {
                        return Err(ParseError {
                            pos,
                            message: String::from("division by zero"),
                        })
                    }
                };
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<ExactScalar, ParseError> {
        if self.eat(b'-') {
            Ok(-self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<ExactScalar, ParseError> {
        let (base, base_is_q) = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let pos = self.pos;
        let e = self.exponent()?;
        if e.denom().is_one() {
            let k = *e.numer();
            if k < 0 && base.is_zero() {
                return Err(ParseError {
                    pos,
                    message: String::from("zero to a negative power"),
                });
            }
            Ok(base.pow(k as i32))
        } else if base_is_q {
            Ok(ExactScalar::q_power(e))
        } else {
            Err(ParseError {
                pos,
                message: String::from("fractional exponents are only supported on q"),
            })
        }
    }

    /// Exponent literal: an optionally negated integer, or a
    /// parenthesized rational like `(1/2)` or `(-3/4)`.
    fn exponent(&mut self) -> Result<Ratio<i64>, ParseError> {
        if self.eat(b'(') {
            let neg = self.eat(b'-');
            let p = self.integer()?;
            let ratio = if self.eat(b'/') {
                let pos = self.pos;
                let s = self.integer()?;
                if s == 0 {
                    return Err(ParseError {
                        pos,
                        message: String::from("zero exponent denominator"),
                    });
                }
                Ratio::new(p, s)
            } else {
                Ratio::from_integer(p)
            };
            self.expect(b')')?;
            Ok(if neg { -ratio } else { ratio })
        } else {
            let neg = self.eat(b'-');
            let p = self.integer()?;
            Ok(Ratio::from_integer(if neg { -p } else { p }))
        }
    }

    /// Returns the value and whether the atom was the bare literal q.
    fn atom(&mut self) -> Result<(ExactScalar, bool), ParseError> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok((ExactScalar::q(), true))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok((ExactScalar::i(), false))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok((v, false))
            }
            Some(c) if c.is_ascii_digit() => Ok((ExactScalar::from_int(self.integer()?), false)),
            Some(c) => self.err(format!("unexpected character {:?}", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse(input: &str) -> Result<ExactScalar, ParseError> {
    let mut p = Parser::new(input);
    let v = p.expr()?;
    if p.peek().is_some() {
        p.err("trailing input")
    } else {
        Ok(v)
    }
}

fn push_exponent(out: &mut String, e: usize, root: u32) {
    let ratio = Ratio::new(e as i64, root as i64);
    if ratio.is_one() {
        out.push('q');
    } else if ratio.denom().is_one() {
        out.push_str(&format!("q^{}", ratio.numer()));
    } else {
        out.push_str(&format!("q^({}/{})", ratio.numer(), ratio.denom()));
    }
}

/// Renders one coefficient-times-power term, returning the sign to
/// splice into the surrounding sum and the unsigned remainder.
fn term_string(c: &GaussianRational, e: usize, root: u32) -> (bool, String) {
    let (neg, mag) = if c.is_real() {
        (c.re.is_negative(), GaussianRational::from_rational(c.re.abs()))
    } else if c.re.is_zero() {
        (
            c.im.is_negative(),
            GaussianRational::new(c.re.clone(), c.im.abs()),
        )
    } else {
        // mixed real and imaginary parts render parenthesized, sign inside
        (false, c.clone())
    };
    let coeff_str = if c.is_real() || c.re.is_zero() {
        format!("{mag}")
    } else {
        format!("({mag})")
    };
    let mut out = String::new();
    if e == 0 {
        out.push_str(&coeff_str);
    } else if mag.is_one() {
        push_exponent(&mut out, e, root);
    } else {
        out.push_str(&coeff_str);
        out.push('*');
        push_exponent(&mut out, e, root);
    }
    (neg, out)
}

fn poly_string(p: &Poly, root: u32) -> String {
    if p.is_zero() {
        return String::from("0");
    }
    let mut out = String::new();
    let mut first = true;
    for (e, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let (neg, body) = term_string(c, e, root);
        if first {
            if neg {
                out.push('-');
            }
            first = false;
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&body);
    }
    out
}

fn term_count(p: &Poly) -> usize {
    p.coeffs().iter().filter(|c| !c.is_zero()).count()
}

pub(crate) fn render(v: &ExactScalar, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let num = v.numerator();
    let den = v.denominator();
    if den.is_one() {
        return f.write_str(&poly_string(num, v.root()));
    }
    let num_str = if term_count(num) > 1 {
        format!("({})", poly_string(num, v.root()))
    } else {
        let (neg, body) = {
            let (e, c) = num
                .coeffs()
                .iter()
                .enumerate()
                .find(|(_, c)| !c.is_zero())
                .unwrap();
            term_string(c, e, v.root())
        };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    };
    let den_str = if term_count(den) > 1 {
        format!("({})", poly_string(den, v.root()))
    } else {
        // canonical single-term denominator is a bare power of q
        let mut s = String::new();
        push_exponent(&mut s, den.ord().unwrap(), v.root());
        s
    };
    write!(f, "{num_str}/{den_str}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use num_rational::Ratio;

    fn rt(s: &str) {
        let v: ExactScalar = s.parse().unwrap();
        let rendered = v.to_string();
        let reparsed: ExactScalar = rendered.parse().unwrap();
        assert_eq!(v, reparsed, "round trip failed for {s} -> {rendered}");
    }

    #[test]
    fn parse_basics() {
        let one = ExactScalar::one();
        let q = ExactScalar::q();
        assert_eq!("q".parse::<ExactScalar>().unwrap(), q);
        assert_eq!(
            &"1/2".parse::<ExactScalar>().unwrap() * &ExactScalar::from_int(2),
            one
        );
        assert_eq!(
            "q^(1/2) - q^(-1/2)".parse::<ExactScalar>().unwrap(),
            &ExactScalar::q_power(Ratio::new(1, 2)) - &ExactScalar::q_power(Ratio::new(-1, 2))
        );
        assert_eq!(
            "(q-1)^2/q".parse::<ExactScalar>().unwrap(),
            &(&q - &one).pow(2) / &q
        );
        assert_eq!("i^2".parse::<ExactScalar>().unwrap(), -one);
        assert_eq!("-q^-1".parse::<ExactScalar>().unwrap(), -q.pow(-1));
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = "q + #".parse::<ExactScalar>().unwrap_err();
        assert_eq!(e.pos, 4);
        let e = "1/(q-q)".parse::<ExactScalar>().unwrap_err();
        assert!(e.message.contains("division by zero"));
        assert!("(q".parse::<ExactScalar>().is_err());
        assert!("q 1".parse::<ExactScalar>().is_err());
        assert!("(1+q)^(1/2)".parse::<ExactScalar>().is_err());
    }

    #[test]
    fn render_round_trips() {
        for s in [
            "0",
            "1",
            "-1",
            "q",
            "q^2 - 2*q + 1",
            "q/(q-1)^2",
            "q^(-3/4)",
            "(q^(1/2)-q^(-1/2))^3",
            "1/2*q + 1/2",
            "i*q - i",
            "(1+2*i)/(q+3)",
            "-q^5/(q^2-1)",
            "(q-1)/(q^3+q+1)",
        ] {
            rt(s);
        }
    }

    #[test]
    fn render_examples() {
        assert_eq!(ExactScalar::q_power(Ratio::new(-1, 1)).to_string(), "1/q");
        assert_eq!(
            ExactScalar::q_power(Ratio::new(3, 2)).to_string(),
            "q^(3/2)"
        );
        let v: ExactScalar = "(q-1)*(q+1)".parse().unwrap();
        assert_eq!(v.to_string(), "q^2 - 1");
    }
}
