use std::fmt;

use num_bigint::BigInt;

use crate::algebra::{Rat, RatFunc};
use crate::error::{Error, Result};

/// Syntax tree of a rational expression in one variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprAST {
    Integer(BigInt),
    Rational(Rat),
    Var(String),
    Neg(Box<ExprAST>),
    Add(Box<ExprAST>, Box<ExprAST>),
    Sub(Box<ExprAST>, Box<ExprAST>),
    Mul(Box<ExprAST>, Box<ExprAST>),
    Div(Box<ExprAST>, Box<ExprAST>),
    Pow(Box<ExprAST>, i32),
}

impl ExprAST {
    /// The variable, if any.
    pub fn variable(&self) -> Option<&str> {
        match self {
            ExprAST::Var(v) => Some(v),
            ExprAST::Integer(_) | ExprAST::Rational(_) => None,
            ExprAST::Neg(a) | ExprAST::Pow(a, _) => a.variable(),
            ExprAST::Add(a, b) | ExprAST::Sub(a, b) | ExprAST::Mul(a, b) | ExprAST::Div(a, b) => {
                a.variable().or_else(|| b.variable())
            }
        }
    }

    pub fn eval(&self) -> Result<RatFunc> {
        Ok(match self {
            ExprAST::Integer(n) => RatFunc::constant(Rat::from_integer(n.clone())),
            ExprAST::Rational(q) => RatFunc::constant(q.clone()),
            ExprAST::Var(_) => RatFunc::x(),
            ExprAST::Neg(a) => -&a.eval()?,
            ExprAST::Add(a, b) => &a.eval()? + &b.eval()?,
            ExprAST::Sub(a, b) => &a.eval()? - &b.eval()?,
            ExprAST::Mul(a, b) => &a.eval()? * &b.eval()?,
            ExprAST::Div(a, b) => a.eval()?.checked_div(&b.eval()?)?,
            ExprAST::Pow(a, e) => a.eval()?.pow(*e)?,
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            ExprAST::Add(..) | ExprAST::Sub(..) => 1,
            ExprAST::Mul(..) | ExprAST::Div(..) => 2,
            ExprAST::Neg(_) => 3,
            ExprAST::Pow(..) => 4,
            ExprAST::Rational(_) => 2,
            ExprAST::Integer(n) if n.sign() == num_bigint::Sign::Minus => 3,
            ExprAST::Integer(_) | ExprAST::Var(_) => 5,
        }
    }
}

fn wrap(f: &mut fmt::Formatter<'_>, e: &ExprAST, min: u8) -> fmt::Result {
    if e.precedence() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for ExprAST {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprAST::Integer(n) => write!(f, "{n}"),
            ExprAST::Rational(q) => write!(f, "{}", crate::algebra::fmt_rat(q)),
            ExprAST::Var(v) => f.write_str(v),
            ExprAST::Neg(a) => {
                f.write_str("-")?;
                wrap(f, a, 3)
            }
            ExprAST::Add(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(" + ")?;
                wrap(f, b, 2)
            }
            ExprAST::Sub(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(" - ")?;
                wrap(f, b, 2)
            }
            ExprAST::Mul(a, b) => {
                wrap(f, a, 2)?;
                f.write_str("*")?;
                wrap(f, b, 3)
            }
            ExprAST::Div(a, b) => {
                wrap(f, a, 2)?;
                f.write_str("/")?;
                wrap(f, b, 3)
            }
            ExprAST::Pow(a, e) => {
                wrap(f, a, 5)?;
                write!(f, "^{e}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((pos, Token::Num(s.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Token::Ident(chars[start..i].iter().map(|&(_, c)| c).collect())));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Token::Op(c)));
            i += 1;
        } else {
            return Err(Error::Syntax {
                pos,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    at: usize,
    end: usize,
    var: Option<String>,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ExprAST> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = ExprAST::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = ExprAST::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<ExprAST> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = ExprAST::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat('/') {
                lhs = ExprAST::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<ExprAST> {
        if self.eat('-') {
            return Ok(ExprAST::Neg(Box::new(self.factor()?)));
        }
        let base = self.base()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                let e: i32 = match i32::try_from(n) {
                    Ok(e) => e,
                    Err(_) => return self.error("exponent too large"),
                };
                self.at += 1;
                Ok(ExprAST::Pow(Box::new(base), if negative { -e } else { e }))
            }
            _ => self.error("expected an integer exponent"),
        }
    }

    fn base(&mut self) -> Result<ExprAST> {
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.at += 1;
                Ok(ExprAST::Integer(n))
            }
            Some(Token::Ident(name)) => {
                match &self.var {
                    None => self.var = Some(name.clone()),
                    Some(v) if *v != name => {
                        return Err(Error::MultipleVariables {
                            first: v.clone(),
                            second: name,
                        })
                    }
                    Some(_) => {}
                }
                self.at += 1;
                Ok(ExprAST::Var(name))
            }
            Some(Token::Op('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.error("expected ')'");
                }
                Ok(e)
            }
            Some(Token::Op('-')) => self.factor(),
            Some(Token::Op(c)) => self.error(format!("unexpected '{c}'")),
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parses text into a syntax tree; the first identifier is the variable.
pub fn parse_expr(text: &str) -> Result<ExprAST> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        at: 0,
        end: text.len(),
        var: None,
    };
    let e = p.expr()?;
    if p.at < p.tokens.len() {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

/// Parses text into a canonical rational function.
pub fn parse_ratfunc(text: &str) -> Result<RatFunc> {
    parse_expr(text)?.eval()
}

/// Parses text, additionally requiring the variable (if any) to be `var`.
pub fn parse_ratfunc_in(text: &str, var: &str) -> Result<RatFunc> {
    let e = parse_expr(text)?;
    if let Some(v) = e.variable() {
        if v != var {
            return Err(Error::MultipleVariables {
                first: var.to_string(),
                second: v.to_string(),
            });
        }
    }
    e.eval()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Poly};

    #[test]
    fn parses_inverse_square() {
        let f = parse_ratfunc("-4/x^2").unwrap();
        assert_eq!(
            f,
            RatFunc::new(Poly::from_ints(&[-4]), Poly::from_ints(&[0, 0, 1])).unwrap()
        );
    }

    #[test]
    fn cancels_common_factors() {
        let f = parse_ratfunc("(x^2-1)/(x^3-x)").unwrap();
        assert_eq!(f, RatFunc::new(Poly::one(), Poly::x()).unwrap());
    }

    #[test]
    fn rejects_two_variables() {
        assert!(matches!(parse_ratfunc("x + y"), Err(Error::MultipleVariables { .. })));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(parse_ratfunc("x + * 2"), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_ratfunc("(x"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_ratfunc("x $"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_ratfunc("x^y"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(parse_ratfunc("1/(x-x)").unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn precedence_and_negative_exponents() {
        assert_eq!(parse_ratfunc("-2^2").unwrap(), RatFunc::constant(int(-4)));
        assert_eq!(
            parse_ratfunc("2*x^-1").unwrap(),
            RatFunc::new(Poly::from_ints(&[2]), Poly::x()).unwrap()
        );
        assert_eq!(parse_ratfunc("1 - 2 - 3").unwrap(), RatFunc::constant(int(-4)));
    }

    #[test]
    fn ast_display_round_trips() {
        for s in ["-(x + 1)^2/3", "x - (1 - x)", "-x^-2", "1/(2*x)", "(-3)^3"] {
            let e = parse_expr(s).unwrap();
            assert_eq!(
                parse_expr(&e.to_string()).unwrap().eval().unwrap(),
                e.eval().unwrap(),
                "{s}"
            );
        }
    }

    #[test]
    fn variable_binding() {
        assert!(parse_ratfunc_in("2*t", "t").is_ok());
        assert!(parse_ratfunc_in("2*t", "x").is_err());
        assert!(parse_ratfunc_in("7", "x").is_ok());
    }
}
