//! The expression language of the command-line interface: sums, products
//! and integer powers of generator atoms with exact scalar literals.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | base ('^' int)?
//! base   := atom | int | 'v' | 'xi' | '(' expr ')'
//! atom   := NAME '[' int (',' int)? (';' int)* ']'
//! ```
//!
//! Atoms: `K[i]`, `Kinv[i]`, `k[i;t]`, `kbin[i;c;t]`, `h[i;n]` (torus),
//! `E[i;N]`, `F[i;N]`, `Eij[i,j;N]`, `Fij[i,j;N]` (divided powers),
//! `g[i]`, `t[i]` (specialized torus generators). Division is defined for
//! scalars only; `v` is the generic parameter and `xi` its image at the
//! root of unity. Indices are 1-based in the surface syntax.
//!
//! Rendering of normal forms (the `Display` impls of the algebra types)
//! stays inside this grammar, so parse . render is the identity on
//! normal-form output.

use std::sync::Arc;

use num::BigRational;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, RatFunc};
use crate::torus::{self, GroupAlgElem};
use crate::torus_special::SpecTorusElem;
use crate::uq::{UElem, UqContext};

/// Abstract syntax of an expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Sum(Vec<(bool, Expr)>),
    Product(Vec<(bool, Expr)>),
    Pow(Box<Expr>, i64),
    Neg(Box<Expr>),
    Int(i64),
    V,
    Xi,
    Atom(ExprAtom),
}

/// A generator atom with 1-based indices as written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprAtom {
    K(usize),
    Kinv(usize),
    SmallK { i: usize, t: i64 },
    KBin { i: usize, c: i64, t: i64 },
    H { i: usize, n: i64 },
    E { i: usize, n: i64 },
    F { i: usize, n: i64 },
    Eij { i: usize, j: usize, n: i64 },
    Fij { i: usize, j: usize, n: i64 },
    G(usize),
    T(usize),
}

// ---------------------------------------------------------------------------
// Lexer and parser
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Semi,
    Comma,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

fn lex(input: &str) -> Result<Lexer> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = input.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (l, c) = (line, col);
        match ch {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                chars.next();
                col += 1;
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let v = s.parse::<i64>().map_err(|_| Error::Parse {
                    line: l,
                    col: c,
                    message: format!("integer literal {} out of range", s),
                })?;
                toks.push((Tok::Int(v), l, c));
            }
            'a'..='z' | 'A'..='Z' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() {
                        s.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Name(s), l, c));
            }
            _ => {
                let t = match ch {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ';' => Tok::Semi,
                    ',' => Tok::Comma,
                    other => {
                        return Err(Error::Parse {
                            line: l,
                            col: c,
                            message: format!("unexpected character {:?}", other),
                        })
                    }
                };
                chars.next();
                col += 1;
                toks.push((t, l, c));
            }
        }
    }
    Ok(Lexer { toks, pos: 0 })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|(_, l, c)| (*l, *c))
            .unwrap_or((1, 1))
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        let (l, c) = self.here();
        match self.next() {
            Some(t) if t == want => Ok(()),
            got => Err(Error::Parse {
                line: l,
                col: c,
                message: format!("expected {:?}, found {:?}", want, got),
            }),
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(Error::Parse { line, col, message: message.into() })
    }
}

/// Parse an expression; errors carry line and column.
pub fn parse(input: &str) -> Result<Expr> {
    let mut lx = lex(input)?;
    let e = parse_expr(&mut lx)?;
    if lx.peek().is_some() {
        return lx.err("trailing input");
    }
    Ok(e)
}

fn parse_expr(lx: &mut Lexer) -> Result<Expr> {
    let first = parse_term(lx)?;
    let mut parts = vec![(false, first)];
    loop {
        match lx.peek() {
            Some(Tok::Plus) => {
                lx.next();
                parts.push((false, parse_term(lx)?));
            }
            Some(Tok::Minus) => {
                lx.next();
                parts.push((true, parse_term(lx)?));
            }
            _ => break,
        }
    }
    Ok(if parts.len() == 1 && !parts[0].0 { parts.pop().unwrap().1 } else { Expr::Sum(parts) })
}

fn parse_term(lx: &mut Lexer) -> Result<Expr> {
    let first = parse_factor(lx)?;
    let mut parts = vec![(false, first)];
    loop {
        match lx.peek() {
            Some(Tok::Star) => {
                lx.next();
                parts.push((false, parse_factor(lx)?));
            }
            Some(Tok::Slash) => {
                lx.next();
                parts.push((true, parse_factor(lx)?));
            }
            _ => break,
        }
    }
    Ok(if parts.len() == 1 && !parts[0].0 {
        parts.pop().unwrap().1
    } else {
        Expr::Product(parts)
    })
}

fn parse_factor(lx: &mut Lexer) -> Result<Expr> {
    if matches!(lx.peek(), Some(Tok::Minus)) {
        lx.next();
        return Ok(Expr::Neg(Box::new(parse_factor(lx)?)));
    }
    let base = parse_base(lx)?;
    if matches!(lx.peek(), Some(Tok::Caret)) {
        lx.next();
        let neg = if matches!(lx.peek(), Some(Tok::Minus)) {
            lx.next();
            true
        } else {
            false
        };
        match lx.next() {
            Some(Tok::Int(n)) => {
                let e = if neg { -n } else { n };
                return Ok(Expr::Pow(Box::new(base), e));
            }
            _ => return lx.err("expected integer exponent after ^"),
        }
    }
    Ok(base)
}

fn parse_base(lx: &mut Lexer) -> Result<Expr> {
    match lx.next() {
        Some(Tok::Int(n)) => Ok(Expr::Int(n)),
        Some(Tok::LParen) => {
            let e = parse_expr(lx)?;
            lx.expect(Tok::RParen)?;
            Ok(e)
        }
        Some(Tok::Name(name)) => match name.as_str() {
            "v" => Ok(Expr::V),
            "xi" => Ok(Expr::Xi),
            _ => parse_atom(lx, name),
        },
        got => {
            let (line, col) = lx.here();
            Err(Error::Parse {
                line,
                col,
                message: format!("expected expression, found {:?}", got),
            })
        }
    }
}

fn parse_atom(lx: &mut Lexer, name: String) -> Result<Expr> {
    lx.expect(Tok::LBracket)?;
    let mut ints: Vec<i64> = Vec::new();
    let mut comma_after_first = false;
    loop {
        let neg = if matches!(lx.peek(), Some(Tok::Minus)) {
            lx.next();
            true
        } else {
            false
        };
        match lx.next() {
            Some(Tok::Int(n)) => ints.push(if neg { -n } else { n }),
            _ => return lx.err("expected integer in atom arguments"),
        }
        match lx.next() {
            Some(Tok::RBracket) => break,
            Some(Tok::Semi) => {}
            Some(Tok::Comma) => {
                if ints.len() != 1 {
                    return lx.err("a comma may only separate the two indices");
                }
                comma_after_first = true;
            }
            _ => return lx.err("expected ';', ',' or ']' in atom arguments"),
        }
    }
    let idx = |n: i64| -> Result<usize> {
        if n < 1 {
            return Err(Error::IndexOutOfRange(format!("index {} must be >= 1", n)));
        }
        Ok((n - 1) as usize)
    };
    let atom = match (name.as_str(), ints.as_slice(), comma_after_first) {
        ("K", [i], false) => ExprAtom::K(idx(*i)?),
        ("Kinv", [i], false) => ExprAtom::Kinv(idx(*i)?),
        ("k", [i, t], false) => ExprAtom::SmallK { i: idx(*i)?, t: *t },
        ("kbin", [i, c, t], false) => ExprAtom::KBin { i: idx(*i)?, c: *c, t: *t },
        ("h", [i, n], false) => ExprAtom::H { i: idx(*i)?, n: *n },
        ("E", [i, n], false) => ExprAtom::E { i: idx(*i)?, n: *n },
        ("F", [i, n], false) => ExprAtom::F { i: idx(*i)?, n: *n },
        ("Eij", [i, j, n], true) => ExprAtom::Eij { i: idx(*i)?, j: idx(*j)?, n: *n },
        ("Fij", [i, j, n], true) => ExprAtom::Fij { i: idx(*i)?, j: idx(*j)?, n: *n },
        ("g", [i], false) => ExprAtom::G(idx(*i)?),
        ("t", [i], false) => ExprAtom::T(idx(*i)?),
        _ => {
            return lx.err(format!(
                "unknown atom {}[..] with {} argument(s)",
                name,
                ints.len()
            ))
        }
    };
    Ok(Expr::Atom(atom))
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

enum GenValue {
    Scalar(RatFunc),
    Elem(GroupAlgElem),
}

impl GenValue {
    fn into_elem(self, rank: usize) -> GroupAlgElem {
        match self {
            GenValue::Scalar(s) => GroupAlgElem::scalar(rank, s),
            GenValue::Elem(e) => e,
        }
    }
}

/// Evaluate an expression in the generic torus model over `Q(v)`.
/// Divided-power atoms (`E`, `F`, ...) and the specialized generators are
/// rejected here.
pub fn eval_generic(expr: &Expr, rank: usize) -> Result<GroupAlgElem> {
    Ok(eval_generic_value(expr, rank)?.into_elem(rank))
}

fn eval_generic_value(expr: &Expr, rank: usize) -> Result<GenValue> {
    let check_index = |i: usize| -> Result<()> {
        if i >= rank {
            return Err(Error::IndexOutOfRange(format!(
                "index {} exceeds rank {}",
                i + 1,
                rank
            )));
        }
        Ok(())
    };
    let exp_t = |t: i64| -> Result<u32> {
        u32::try_from(t).map_err(|_| {
            Error::InvalidArgument(format!("exponent {} must be nonnegative", t))
        })
    };
    match expr {
        Expr::Int(n) => Ok(GenValue::Scalar(RatFunc::from_int(*n))),
        Expr::V => Ok(GenValue::Scalar(RatFunc::v_pow(1))),
        Expr::Xi => Err(Error::InvalidArgument(
            "xi is only available in specialized mode".into(),
        )),
        Expr::Neg(e) => Ok(match eval_generic_value(e, rank)? {
            GenValue::Scalar(s) => GenValue::Scalar(-&s),
            GenValue::Elem(x) => GenValue::Elem(x.neg()),
        }),
        Expr::Sum(parts) => {
            let values: Vec<(bool, GenValue)> = parts
                .iter()
                .map(|(n, p)| Ok((*n, eval_generic_value(p, rank)?)))
                .collect::<Result<_>>()?;
            if values.iter().all(|(_, v)| matches!(v, GenValue::Scalar(_))) {
                let mut acc = RatFunc::zero();
                for (negate, v) in &values {
                    let GenValue::Scalar(s) = v else { unreachable!() };
                    acc = if *negate { &acc - s } else { &acc + s };
                }
                return Ok(GenValue::Scalar(acc));
            }
            let mut acc = GroupAlgElem::zero(rank);
            for (negate, v) in values {
                let v = v.into_elem(rank);
                acc = if negate { acc.sub(&v) } else { acc.add(&v) };
            }
            Ok(GenValue::Elem(acc))
        }
        Expr::Product(parts) => {
            let mut acc = GenValue::Scalar(RatFunc::one());
            for (divide, p) in parts {
                let v = eval_generic_value(p, rank)?;
                if *divide {
                    let GenValue::Scalar(d) = v else {
                        return Err(Error::InvalidArgument(
                            "division is defined for scalars only".into(),
                        ));
                    };
                    acc = match acc {
                        GenValue::Scalar(s) => GenValue::Scalar(s.div(&d)?),
                        GenValue::Elem(x) => GenValue::Elem(x.scalar_mul(&d.inverse()?)),
                    };
                } else {
                    acc = match (acc, v) {
                        (GenValue::Scalar(a), GenValue::Scalar(b)) => GenValue::Scalar(&a * &b),
                        (GenValue::Scalar(a), GenValue::Elem(b)) => GenValue::Elem(b.scalar_mul(&a)),
                        (GenValue::Elem(a), GenValue::Scalar(b)) => GenValue::Elem(a.scalar_mul(&b)),
                        (GenValue::Elem(a), GenValue::Elem(b)) => GenValue::Elem(a.mul(&b)),
                    };
                }
            }
            Ok(acc)
        }
        Expr::Pow(base, e) => match eval_generic_value(base, rank)? {
            GenValue::Scalar(s) => {
                if *e >= 0 {
                    let mut acc = RatFunc::one();
                    for _ in 0..*e {
                        acc = &acc * &s;
                    }
                    Ok(GenValue::Scalar(acc))
                } else {
                    let inv = s.inverse()?;
                    let mut acc = RatFunc::one();
                    for _ in 0..(-*e) {
                        acc = &acc * &inv;
                    }
                    Ok(GenValue::Scalar(acc))
                }
            }
            GenValue::Elem(x) => {
                if *e >= 0 {
                    Ok(GenValue::Elem(x.pow(*e as u32)))
                } else if x.terms().count() == 1 {
                    // Invertible monomials (group-likes) admit negative powers.
                    let (exps, c) = x.terms().next().unwrap();
                    if !c.is_one() {
                        return Err(Error::InvalidArgument(
                            "negative powers need a group-like base".into(),
                        ));
                    }
                    let flipped: Vec<i64> = exps.iter().map(|v| -v).collect();
                    Ok(GenValue::Elem(
                        GroupAlgElem::monomial(rank, flipped, RatFunc::one()).pow((-*e) as u32),
                    ))
                } else {
                    Err(Error::InvalidArgument(
                        "negative powers need a group-like base".into(),
                    ))
                }
            }
        },
        Expr::Atom(atom) => match atom {
            ExprAtom::K(i) => {
                check_index(*i)?;
                Ok(GenValue::Elem(GroupAlgElem::k_pow(rank, *i, 1)))
            }
            ExprAtom::Kinv(i) => {
                check_index(*i)?;
                Ok(GenValue::Elem(GroupAlgElem::k_pow(rank, *i, -1)))
            }
            ExprAtom::SmallK { i, t } => {
                check_index(*i)?;
                Ok(GenValue::Elem(torus::k_elem(rank, *i, exp_t(*t)?)?))
            }
            ExprAtom::KBin { i, c, t } => {
                check_index(*i)?;
                Ok(GenValue::Elem(torus::kbin(rank, *i, *c, exp_t(*t)?, false)?))
            }
            ExprAtom::H { i, n } => {
                check_index(*i)?;
                Ok(GenValue::Elem(torus::h_elem(rank, *i, *n)?))
            }
            other => Err(Error::InvalidArgument(format!(
                "atom {:?} is not part of the generic torus model",
                other
            ))),
        },
    }
}

enum SpecValue {
    Scalar(CycNum),
    Elem(UElem),
}

impl SpecValue {
    fn into_elem(self, ctx: &Arc<UqContext>) -> UElem {
        match self {
            SpecValue::Scalar(s) => UElem::scalar(ctx, s),
            SpecValue::Elem(e) => e,
        }
    }
}

/// Evaluate an expression in the specialized quantum group (all atoms
/// available; `v` and `xi` both denote the root of unity).
pub fn eval_specialized(expr: &Expr, ctx: &Arc<UqContext>) -> Result<UElem> {
    Ok(eval_spec_value(expr, ctx)?.into_elem(ctx))
}

fn eval_spec_value(expr: &Expr, ctx: &Arc<UqContext>) -> Result<SpecValue> {
    let rank = ctx.rank();
    let params = ctx.params();
    let check_index = |i: usize| -> Result<()> {
        if i >= rank {
            return Err(Error::IndexOutOfRange(format!(
                "index {} exceeds rank {}",
                i + 1,
                rank
            )));
        }
        Ok(())
    };
    let exp_t = |t: i64| -> Result<u32> {
        u32::try_from(t).map_err(|_| {
            Error::InvalidArgument(format!("exponent {} must be nonnegative", t))
        })
    };
    match expr {
        Expr::Int(n) => Ok(SpecValue::Scalar(params.from_int(*n))),
        Expr::V | Expr::Xi => Ok(SpecValue::Scalar(params.xi())),
        Expr::Neg(e) => Ok(match eval_spec_value(e, ctx)? {
            SpecValue::Scalar(s) => SpecValue::Scalar(-&s),
            SpecValue::Elem(x) => SpecValue::Elem(x.neg()),
        }),
        Expr::Sum(parts) => {
            let values: Vec<(bool, SpecValue)> = parts
                .iter()
                .map(|(n, p)| Ok((*n, eval_spec_value(p, ctx)?)))
                .collect::<Result<_>>()?;
            if values.iter().all(|(_, v)| matches!(v, SpecValue::Scalar(_))) {
                let mut acc = params.zero();
                for (negate, v) in &values {
                    let SpecValue::Scalar(s) = v else { unreachable!() };
                    acc = if *negate { &acc - s } else { &acc + s };
                }
                return Ok(SpecValue::Scalar(acc));
            }
            let mut acc = UElem::zero(ctx);
            for (negate, v) in values {
                let v = v.into_elem(ctx);
                acc = if negate { acc.sub(&v) } else { acc.add(&v) };
            }
            Ok(SpecValue::Elem(acc))
        }
        Expr::Product(parts) => {
            let mut acc = SpecValue::Scalar(params.one());
            for (divide, p) in parts {
                let v = eval_spec_value(p, ctx)?;
                if *divide {
                    let SpecValue::Scalar(d) = v else {
                        return Err(Error::InvalidArgument(
                            "division is defined for scalars only".into(),
                        ));
                    };
                    let dinv = d.inverse()?;
                    acc = match acc {
                        SpecValue::Scalar(s) => SpecValue::Scalar(&s * &dinv),
                        SpecValue::Elem(x) => SpecValue::Elem(x.scalar_mul(&dinv)),
                    };
                } else {
                    acc = match (acc, v) {
                        (SpecValue::Scalar(a), SpecValue::Scalar(b)) => {
                            SpecValue::Scalar(&a * &b)
                        }
                        (SpecValue::Scalar(a), SpecValue::Elem(b)) => {
                            SpecValue::Elem(b.scalar_mul(&a))
                        }
                        (SpecValue::Elem(a), SpecValue::Scalar(b)) => {
                            SpecValue::Elem(a.scalar_mul(&b))
                        }
                        (SpecValue::Elem(a), SpecValue::Elem(b)) => {
                            SpecValue::Elem(a.multiply(&b)?)
                        }
                    };
                }
            }
            Ok(acc)
        }
        Expr::Pow(base, e) => match eval_spec_value(base, ctx)? {
            SpecValue::Scalar(s) => {
                if *e >= 0 {
                    Ok(SpecValue::Scalar(s.pow(*e as u32)))
                } else {
                    Ok(SpecValue::Scalar(s.inverse()?.pow((-*e) as u32)))
                }
            }
            SpecValue::Elem(x) => {
                if *e >= 0 {
                    let mut acc = UElem::one(ctx);
                    for _ in 0..*e {
                        acc = acc.multiply(&x)?;
                    }
                    Ok(SpecValue::Elem(acc))
                } else {
                    // Negative powers for torus-only group-like elements.
                    let torus = x.as_torus()?;
                    let mut terms = torus.terms();
                    match (terms.next(), terms.next()) {
                        (Some((m, c)), None) if c.is_one() && m.t.iter().all(|x| *x == 0) => {
                            let mut acc = UElem::one(ctx);
                            let inv = SpecTorusElem::monomial(&ctx.spec, m.clone(), c.clone())
                                .antipode();
                            for _ in 0..(-*e) {
                                acc = acc.multiply(&UElem::from_torus(ctx, &inv))?;
                            }
                            Ok(SpecValue::Elem(acc))
                        }
                        _ => Err(Error::InvalidArgument(
                            "negative powers need a group-like base".into(),
                        )),
                    }
                }
            }
        },
        Expr::Atom(atom) => {
            let spec = &ctx.spec;
            match atom {
                ExprAtom::K(i) => {
                    check_index(*i)?;
                    Ok(SpecValue::Elem(UElem::from_torus(
                        ctx,
                        &SpecTorusElem::g_pow(spec, *i, 1),
                    )))
                }
                ExprAtom::Kinv(i) => {
                    check_index(*i)?;
                    Ok(SpecValue::Elem(UElem::from_torus(
                        ctx,
                        &SpecTorusElem::g_pow(spec, *i, -1),
                    )))
                }
                ExprAtom::G(i) => {
                    check_index(*i)?;
                    Ok(SpecValue::Elem(UElem::from_torus(
                        ctx,
                        &SpecTorusElem::g_pow(spec, *i, 1),
                    )))
                }
                ExprAtom::T(i) => {
                    check_index(*i)?;
                    Ok(SpecValue::Elem(UElem::from_torus(
                        ctx,
                        &SpecTorusElem::t_gen(spec, *i),
                    )))
                }
                ExprAtom::SmallK { i, t } => {
                    check_index(*i)?;
                    if *t < 0 {
                        return Err(Error::InvalidArgument(format!(
                            "k index {} must be nonnegative",
                            t
                        )));
                    }
                    Ok(SpecValue::Elem(UElem::from_torus(ctx, &ctx.spec_k(*i, *t)?)))
                }
                ExprAtom::KBin { i, c, t } => {
                    check_index(*i)?;
                    if *t < 0 {
                        return Err(Error::InvalidArgument(format!(
                            "binomial index {} must be nonnegative",
                            t
                        )));
                    }
                    Ok(SpecValue::Elem(UElem::from_torus(
                        ctx,
                        &crate::torus_special::spec_kbin(spec, *i, *c, *t, false)?,
                    )))
                }
                ExprAtom::H { i, n } => {
                    check_index(*i)?;
                    if *n != ctx.ell() {
                        return Err(Error::InvalidArgument(format!(
                            "in specialized mode h[i;n] is available at n = l = {} (it maps to t[i])",
                            ctx.ell()
                        )));
                    }
                    Ok(SpecValue::Elem(UElem::from_torus(
                        ctx,
                        &SpecTorusElem::t_gen(spec, *i),
                    )))
                }
                ExprAtom::E { i, n } => {
                    check_index(*i)?;
                    Ok(SpecValue::Elem(UElem::e_gen(ctx, *i, exp_t(*n)?)))
                }
                ExprAtom::F { i, n } => {
                    check_index(*i)?;
                    Ok(SpecValue::Elem(UElem::f_gen(ctx, *i, exp_t(*n)?)))
                }
                ExprAtom::Eij { i, j, n } => {
                    check_index(*i)?;
                    check_index(*j)?;
                    Ok(SpecValue::Elem(UElem::e_composite(ctx, *i, *j, exp_t(*n)?)?))
                }
                ExprAtom::Fij { i, j, n } => {
                    check_index(*i)?;
                    check_index(*j)?;
                    Ok(SpecValue::Elem(UElem::f_composite(ctx, *i, *j, exp_t(*n)?)?))
                }
            }
        }
    }
}

/// Scalar Laurent-polynomial evaluation (used for scalar literals in
/// configuration): rejects any atom.
pub fn eval_scalar(expr: &Expr) -> Result<RatFunc> {
    match eval_generic_value(expr, 1)? {
        GenValue::Scalar(s) => Ok(s),
        GenValue::Elem(_) => Err(Error::InvalidArgument("expected a scalar expression".into())),
    }
}

/// Convenience constructor: the rational `p/q` as an exact scalar.
pub fn rational(p: i64, q: i64) -> Result<RatFunc> {
    if q == 0 {
        return Err(Error::DivisionByZero);
    }
    Ok(RatFunc::from_poly(LaurentPoly::monomial(
        BigRational::new(p.into(), q.into()),
        0,
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanMatrix;
    use crate::cyclotomic::CycParams;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn parses_the_reference_examples() {
        // K[1]*Kinv[1] normalizes to 1 in either model.
        let e = parse("K[1]*Kinv[1]").unwrap();
        let g = eval_generic(&e, 1).unwrap();
        assert_eq!(g, GroupAlgElem::one(1));
        // (v^-2 - 1) * k[1;2] * K[1]^2 round-trips through the evaluator.
        let e = parse("(v^-2 - 1)*k[1;2]*K[1]^2").unwrap();
        let g = eval_generic(&e, 1).unwrap();
        let coeff = RatFunc::from_poly(LaurentPoly::from_terms([
            (-2, rat_int(1)),
            (0, rat_int(-1)),
        ]));
        let expect = torus::k_elem(1, 0, 2)
            .unwrap()
            .mul(&GroupAlgElem::k_pow(1, 0, 2))
            .scalar_mul(&coeff);
        assert_eq!(g, expect);
    }

    #[test]
    fn merged_divided_powers() {
        // E[1;2]*E[1;3] = [5 choose 3] E[1;5].
        let ctx = UqContext::new(CartanMatrix::a1(), CycParams::new(7).unwrap());
        let e = parse("E[1;2]*E[1;3]").unwrap();
        let v = eval_specialized(&e, &ctx).unwrap();
        let expect = UElem::e_gen(&ctx, 0, 5)
            .scalar_mul(&ctx.params().q_binomial_xi(5, 3).unwrap());
        assert_eq!(v, expect);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse("K[1] &").unwrap_err();
        match err {
            Error::Parse { line, col, .. } => {
                assert_eq!(line, 1);
                assert_eq!(col, 6);
            }
            other => panic!("unexpected error {:?}", other),
        }
        assert!(parse("Q[1]").is_err());
        let ctx = UqContext::new(CartanMatrix::a1(), CycParams::new(3).unwrap());
        let e = parse("E[2;1]").unwrap();
        assert!(matches!(
            eval_specialized(&e, &ctx),
            Err(Error::IndexOutOfRange(_))
        ));
    }

    use crate::laurent::rat_int;

    fn random_uelem(ctx: &Arc<UqContext>, rng: &mut StdRng) -> UElem {
        let mut x = UElem::one(ctx);
        for _ in 0..rng.gen_range(1..4) {
            let factor = match rng.gen_range(0..6) {
                0 => UElem::e_gen(ctx, rng.gen_range(0..2), rng.gen_range(1..3)),
                1 => UElem::f_gen(ctx, rng.gen_range(0..2), rng.gen_range(1..3)),
                2 => UElem::from_torus(
                    ctx,
                    &SpecTorusElem::g_pow(&ctx.spec, rng.gen_range(0..2), rng.gen_range(0..6)),
                ),
                3 => UElem::from_torus(ctx, &SpecTorusElem::t_gen(&ctx.spec, rng.gen_range(0..2))),
                4 => UElem::e_composite(ctx, 0, 1, rng.gen_range(1..3)).unwrap(),
                _ => UElem::scalar(
                    ctx,
                    &ctx.params().xi_pow(rng.gen_range(0..3)) + &ctx.params().from_int(rng.gen_range(-2..3)),
                ),
            };
            x = match x.multiply(&factor) {
                Ok(y) if !y.is_zero() => y,
                _ => x,
            };
        }
        x
    }

    #[test]
    fn parse_render_round_trip() {
        // Rendered normal forms re-parse and re-evaluate to themselves, both
        // in the specialized and the generic model.
        let ctx = UqContext::new(CartanMatrix::a2(), CycParams::new(3).unwrap());
        let mut rng = StdRng::seed_from_u64(500);
        for case in 0..400 {
            let x = random_uelem(&ctx, &mut rng);
            let rendered = x.to_string();
            let parsed = parse(&rendered)
                .unwrap_or_else(|e| panic!("case {}: {:?} on {}", case, e, rendered));
            let back = eval_specialized(&parsed, &ctx)
                .unwrap_or_else(|e| panic!("case {}: {:?} on {}", case, e, rendered));
            assert_eq!(back, x, "case {} render {}", case, rendered);
        }
        // Generic model round trip.
        let mut rng = StdRng::seed_from_u64(501);
        for case in 0..100 {
            let mut x = GroupAlgElem::one(2);
            for _ in 0..rng.gen_range(1..4) {
                let i = rng.gen_range(0..2);
                let f = match rng.gen_range(0..3) {
                    0 => GroupAlgElem::k_pow(2, i, rng.gen_range(-3..4)),
                    1 => torus::k_elem(2, i, rng.gen_range(0..4)).unwrap(),
                    _ => torus::kbin(2, i, rng.gen_range(-3..4), rng.gen_range(0..3), false)
                        .unwrap(),
                };
                x = x.mul(&f);
            }
            let rendered = x.to_string();
            let parsed = parse(&rendered)
                .unwrap_or_else(|e| panic!("case {}: {:?} on {}", case, e, rendered));
            let back = eval_generic(&parsed, 2)
                .unwrap_or_else(|e| panic!("case {}: {:?} on {}", case, e, rendered));
            assert_eq!(back, x, "case {} render {}", case, rendered);
        }
    }
}
