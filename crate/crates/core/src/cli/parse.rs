//! Recursive-descent parser for polynomial expressions over the rationals.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary)*
//! unary   := "-" unary | power
//! power   := atom ("^" integer)?
//! atom    := integer | identifier | "(" expr ")"
//! ```
//!
//! Division is by nonzero constants only, so `p/q` reads as a rational.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{Context, Poly, Rational};
use crate::error::{Error, Result};

/// Parse `text` into a polynomial over `ctx`; byte offsets in errors refer
/// to `text`.
pub fn parse_expr(text: &str, ctx: &Arc<Context>) -> Result<Poly> {
    let mut p = Parser {
        src: text,
        pos: 0,
        ctx,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error(format!("unexpected `{}`", p.peek_char().unwrap_or(' '))));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    ctx: &'a Arc<Context>,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek_char(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_char()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some('/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.unary()?;
                let c = match d.degree() {
                    None => None,
                    Some(0) => Some(d.constant_term()),
                    Some(_) => {
                        return Err(Error::Syntax {
                            offset: at,
                            message: "division by a non-constant".into(),
                        })
                    }
                };
                match c {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                    _ => {
                        return Err(Error::Syntax {
                            offset: at,
                            message: "division by zero".into(),
                        })
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        self.skip_ws();
        let at = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("expected a nonnegative integer exponent"));
        }
        let e: u32 = digits.parse().map_err(|_| Error::Syntax {
            offset: at,
            message: "exponent too large".into(),
        })?;
        Ok(base.pow(e))
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.src.len() - start);
        self.pos += len;
        &self.src[start..start + len]
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits().parse().expect("ascii digits");
                Ok(Poly::constant(self.ctx, Rational::from_integer(n)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                let len = self.src[start..]
                    .find(|c: char| !(c.is_alphanumeric() || c == '_'))
                    .unwrap_or(self.src.len() - start);
                self.pos += len;
                let name = &self.src[start..start + len];
                match self.ctx.index_of(name) {
                    Ok(i) => Poly::var(self.ctx, i),
                    Err(_) => Err(Error::UndeclaredIdentifier {
                        name: name.to_string(),
                        offset: start,
                    }),
                }
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn xy() -> Arc<Context> {
        Context::new(["x", "y"])
    }

    #[test]
    fn conic() {
        let ctx = xy();
        let h = parse_expr("-y + x^2 + 2*x*y + y^2", &ctx).unwrap();
        assert_eq!(h.to_string(), "x^2 + 2*x*y + y^2 - y");
        assert!(parse_expr("0", &ctx).unwrap().is_zero());
        let half = parse_expr("1/2*x^2", &ctx).unwrap();
        assert_eq!(half, Poly::var(&ctx, 0).unwrap().pow(2).scale(&rat(1, 2)));
        assert_eq!(parse_expr("-x^2", &ctx).unwrap().to_string(), "-x^2");
        assert_eq!(
            parse_expr("(x - y)^2 / 4", &ctx).unwrap().to_string(),
            "1/4*x^2 - 1/2*x*y + 1/4*y^2"
        );
    }

    #[test]
    fn errors_carry_offsets() {
        let ctx = xy();
        assert!(matches!(
            parse_expr("x + z", &ctx),
            Err(Error::UndeclaredIdentifier { offset: 4, .. })
        ));
        assert!(matches!(
            parse_expr("2 x", &ctx),
            Err(Error::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            parse_expr("x/y", &ctx),
            Err(Error::Syntax { offset: 1, .. })
        ));
        assert!(matches!(
            parse_expr("x/0", &ctx),
            Err(Error::Syntax { offset: 1, .. })
        ));
        assert!(matches!(
            parse_expr("(x", &ctx),
            Err(Error::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            parse_expr("x^-1", &ctx),
            Err(Error::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            parse_expr("", &ctx),
            Err(Error::Syntax { offset: 0, .. })
        ));
    }
}
