//! A mini-language for complex-analytic expressions: parser, evaluator,
//! exact symbolic derivative and path integration.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := unary ('^' integer)?
//! unary  := '-'? atom
//! atom   := number | 'i' | variable | func '(' expr ')' | '(' expr ')'
//! func   := exp | sin | cos | sinh | cosh
//! ```
//!
//! The function set is restricted to entire functions; quotients parse but
//! surface synthesis rejects data whose components are not entire. Powers are
//! limited to integer exponents to keep everything single-valued.

use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quad;

/// Built-in entire functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Sin,
    Cos,
    Sinh,
    Cosh,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
        }
    }

    fn apply(self, z: Complex64) -> Complex64 {
        match self {
            Func::Exp => z.exp(),
            Func::Sin => z.sin(),
            Func::Cos => z.cos(),
            Func::Sinh => z.sinh(),
            Func::Cosh => z.cosh(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Num(Complex64),
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Func(Func, Box<Expr>),
}

/// Parsed abstract syntax tree of an analytic expression.
///
/// Spans record byte offsets into the source text for error reporting;
/// they are ignored by structural equality.
#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: (usize, usize),
    vars: Arc<Vec<String>>,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

const SYNTH_SPAN: (usize, usize) = (0, 0);

impl Expr {
    fn synth(kind: ExprKind, vars: Arc<Vec<String>>) -> Expr {
        Expr { kind, span: SYNTH_SPAN, vars }
    }

    /// Parse an expression in the single variable `z`.
    pub fn parse(text: &str) -> Result<Expr> {
        Expr::parse_with_vars(text, &["z"])
    }

    /// Parse an expression over a custom variable set (e.g. `x1`, `x2`).
    pub fn parse_with_vars(text: &str, vars: &[&str]) -> Result<Expr> {
        if text.trim().is_empty() {
            return Err(Error::Syntax {
                offset: 0,
                message: "empty expression".into(),
            });
        }
        let var_names: Arc<Vec<String>> = Arc::new(vars.iter().map(|s| s.to_string()).collect());
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
            vars: var_names,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::Syntax {
                offset: p.pos,
                message: "trailing input".into(),
            });
        }
        Ok(e)
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    /// Evaluate at `z` (single-variable expressions).
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        self.eval_vars(&[z])
    }

    /// Evaluate with one value per variable.
    pub fn eval_vars(&self, vals: &[Complex64]) -> Result<Complex64> {
        for v in vals {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::Evaluation("non-finite evaluation point".into()));
            }
        }
        let v = self.eval_inner(vals)?;
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::Evaluation(format!(
                "non-finite value from `{}`",
                self
            )));
        }
        Ok(v)
    }

    fn eval_inner(&self, vals: &[Complex64]) -> Result<Complex64> {
        Ok(match &self.kind {
            ExprKind::Num(c) => *c,
            ExprKind::Var(k) => vals[*k],
            ExprKind::Neg(a) => -a.eval_inner(vals)?,
            ExprKind::Add(a, b) => a.eval_inner(vals)? + b.eval_inner(vals)?,
            ExprKind::Sub(a, b) => a.eval_inner(vals)? - b.eval_inner(vals)?,
            ExprKind::Mul(a, b) => a.eval_inner(vals)? * b.eval_inner(vals)?,
            ExprKind::Div(a, b) => {
                let den = b.eval_inner(vals)?;
                if den.norm() == 0.0 {
                    return Err(Error::DivisionByZero {
                        node: format!("{}", b),
                        span: b.span,
                    });
                }
                a.eval_inner(vals)? / den
            }
            ExprKind::Pow(a, n) => a.eval_inner(vals)?.powi(*n),
            ExprKind::Func(f, a) => f.apply(a.eval_inner(vals)?),
        })
    }

    /// Exact symbolic derivative with respect to the single variable `z`.
    pub fn derive(&self) -> Expr {
        self.derive_var(0)
    }

    /// Exact symbolic partial derivative with respect to variable index `k`.
    pub fn derive_var(&self, k: usize) -> Expr {
        let vars = self.vars.clone();
        let num = |c: Complex64| Expr::synth(ExprKind::Num(c), vars.clone());
        let d = match &self.kind {
            ExprKind::Num(_) => return num(Complex64::new(0.0, 0.0)),
            ExprKind::Var(v) => {
                return num(Complex64::new(if *v == k { 1.0 } else { 0.0 }, 0.0))
            }
            ExprKind::Neg(a) => ExprKind::Neg(Box::new(a.derive_var(k))),
            ExprKind::Add(a, b) => {
                ExprKind::Add(Box::new(a.derive_var(k)), Box::new(b.derive_var(k)))
            }
            ExprKind::Sub(a, b) => {
                ExprKind::Sub(Box::new(a.derive_var(k)), Box::new(b.derive_var(k)))
            }
            ExprKind::Mul(a, b) => ExprKind::Add(
                Box::new(Expr::synth(
                    ExprKind::Mul(Box::new(a.derive_var(k)), b.clone()),
                    vars.clone(),
                )),
                Box::new(Expr::synth(
                    ExprKind::Mul(a.clone(), Box::new(b.derive_var(k))),
                    vars.clone(),
                )),
            ),
            ExprKind::Div(a, b) => {
                // (a'b - ab') / b^2
                let numer = Expr::synth(
                    ExprKind::Sub(
                        Box::new(Expr::synth(
                            ExprKind::Mul(Box::new(a.derive_var(k)), b.clone()),
                            vars.clone(),
                        )),
                        Box::new(Expr::synth(
                            ExprKind::Mul(a.clone(), Box::new(b.derive_var(k))),
                            vars.clone(),
                        )),
                    ),
                    vars.clone(),
                );
                ExprKind::Div(
                    Box::new(numer),
                    Box::new(Expr::synth(ExprKind::Pow(b.clone(), 2), vars.clone())),
                )
            }
            ExprKind::Pow(a, n) => {
                // n * a^(n-1) * a'
                let coeff = num(Complex64::new(*n as f64, 0.0));
                let pw = Expr::synth(ExprKind::Pow(a.clone(), n - 1), vars.clone());
                ExprKind::Mul(
                    Box::new(Expr::synth(
                        ExprKind::Mul(Box::new(coeff), Box::new(pw)),
                        vars.clone(),
                    )),
                    Box::new(a.derive_var(k)),
                )
            }
            ExprKind::Func(f, a) => {
                let outer = match f {
                    Func::Exp => Expr::synth(ExprKind::Func(Func::Exp, a.clone()), vars.clone()),
                    Func::Sin => Expr::synth(ExprKind::Func(Func::Cos, a.clone()), vars.clone()),
                    Func::Cos => Expr::synth(
                        ExprKind::Neg(Box::new(Expr::synth(
                            ExprKind::Func(Func::Sin, a.clone()),
                            vars.clone(),
                        ))),
                        vars.clone(),
                    ),
                    Func::Sinh => Expr::synth(ExprKind::Func(Func::Cosh, a.clone()), vars.clone()),
                    Func::Cosh => Expr::synth(ExprKind::Func(Func::Sinh, a.clone()), vars.clone()),
                };
                ExprKind::Mul(Box::new(outer), Box::new(a.derive_var(k)))
            }
        };
        Expr::synth(d, vars).simplify()
    }

    /// Constant folding and identity simplification.
    pub fn simplify(&self) -> Expr {
        let vars = self.vars.clone();
        let synth = |k| Expr::synth(k, vars.clone());
        let kind = match &self.kind {
            ExprKind::Num(_) | ExprKind::Var(_) => return self.clone(),
            ExprKind::Neg(a) => {
                let a = a.simplify();
                if let ExprKind::Num(c) = a.kind {
                    return synth(ExprKind::Num(-c));
                }
                ExprKind::Neg(Box::new(a))
            }
            ExprKind::Add(a, b) => {
                let (a, b) = (a.simplify(), b.simplify());
                match (&a.kind, &b.kind) {
                    (ExprKind::Num(x), ExprKind::Num(y)) => return synth(ExprKind::Num(x + y)),
                    (ExprKind::Num(x), _) if x.norm() == 0.0 => return b,
                    (_, ExprKind::Num(y)) if y.norm() == 0.0 => return a,
                    _ => ExprKind::Add(Box::new(a), Box::new(b)),
                }
            }
            ExprKind::Sub(a, b) => {
                let (a, b) = (a.simplify(), b.simplify());
                match (&a.kind, &b.kind) {
                    (ExprKind::Num(x), ExprKind::Num(y)) => return synth(ExprKind::Num(x - y)),
                    (_, ExprKind::Num(y)) if y.norm() == 0.0 => return a,
                    _ => ExprKind::Sub(Box::new(a), Box::new(b)),
                }
            }
            ExprKind::Mul(a, b) => {
                let (a, b) = (a.simplify(), b.simplify());
                match (&a.kind, &b.kind) {
                    (ExprKind::Num(x), ExprKind::Num(y)) => return synth(ExprKind::Num(x * y)),
                    (ExprKind::Num(x), _) if x.norm() == 0.0 => {
                        return synth(ExprKind::Num(Complex64::new(0.0, 0.0)))
                    }
                    (_, ExprKind::Num(y)) if y.norm() == 0.0 => {
                        return synth(ExprKind::Num(Complex64::new(0.0, 0.0)))
                    }
                    (ExprKind::Num(x), _) if *x == Complex64::new(1.0, 0.0) => return b,
                    (_, ExprKind::Num(y)) if *y == Complex64::new(1.0, 0.0) => return a,
                    _ => ExprKind::Mul(Box::new(a), Box::new(b)),
                }
            }
            ExprKind::Div(a, b) => {
                let (a, b) = (a.simplify(), b.simplify());
                match (&a.kind, &b.kind) {
                    (ExprKind::Num(x), _) if x.norm() == 0.0 => {
                        return synth(ExprKind::Num(Complex64::new(0.0, 0.0)))
                    }
                    (ExprKind::Num(x), ExprKind::Num(y)) if y.norm() != 0.0 => {
                        return synth(ExprKind::Num(x / y))
                    }
                    (_, ExprKind::Num(y)) if *y == Complex64::new(1.0, 0.0) => return a,
                    _ => ExprKind::Div(Box::new(a), Box::new(b)),
                }
            }
            ExprKind::Pow(a, n) => {
                let a = a.simplify();
                match (&a.kind, *n) {
                    (_, 0) => return synth(ExprKind::Num(Complex64::new(1.0, 0.0))),
                    (_, 1) => return a,
                    (ExprKind::Num(x), n) => return synth(ExprKind::Num(x.powi(n))),
                    _ => ExprKind::Pow(Box::new(a), *n),
                }
            }
            ExprKind::Func(f, a) => {
                let a = a.simplify();
                if let ExprKind::Num(c) = a.kind {
                    return synth(ExprKind::Num(f.apply(c)));
                }
                ExprKind::Func(*f, Box::new(a))
            }
        };
        synth(kind)
    }

    /// True when the expression contains no variable node.
    pub fn is_constant_expr(&self) -> bool {
        match &self.kind {
            ExprKind::Num(_) => true,
            ExprKind::Var(_) => false,
            ExprKind::Neg(a) | ExprKind::Pow(a, _) | ExprKind::Func(_, a) => a.is_constant_expr(),
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) | ExprKind::Div(a, b) => {
                a.is_constant_expr() && b.is_constant_expr()
            }
        }
    }

    /// Symbolic constancy test with a numeric probe fallback: the derivative
    /// simplifies to zero, or vanishes at 8 probe points.
    pub fn is_constant_function(&self) -> bool {
        let d = self.derive().simplify();
        if matches!(d.kind, ExprKind::Num(c) if c.norm() == 0.0) {
            return true;
        }
        let probes = [
            Complex64::new(0.3, 0.1),
            Complex64::new(-0.7, 0.4),
            Complex64::new(0.9, -0.6),
            Complex64::new(-0.2, -0.8),
            Complex64::new(0.55, 0.35),
            Complex64::new(-0.45, 0.15),
            Complex64::new(0.05, -0.25),
            Complex64::new(-0.95, -0.05),
        ];
        probes
            .iter()
            .all(|&z| matches!(d.eval(z), Ok(v) if v.norm() < 1e-13))
    }

    /// True when the tree contains a division node (not entire).
    pub fn has_division(&self) -> bool {
        match &self.kind {
            ExprKind::Div(_, _) => true,
            ExprKind::Num(_) | ExprKind::Var(_) => false,
            ExprKind::Neg(a) | ExprKind::Pow(a, _) | ExprKind::Func(_, a) => a.has_division(),
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) => {
                a.has_division() || b.has_division()
            }
        }
    }

    /// True when the expression is exactly the variable `z` (index 0).
    pub fn is_identity(&self) -> bool {
        matches!(self.kind, ExprKind::Var(0))
    }

    /// Integrate along the straight segment from `z0` to `z1` with adaptive
    /// Gauss-Legendre quadrature, absolute error estimate at most `tol`.
    pub fn integrate_segment(&self, z0: Complex64, z1: Complex64, tol: f64) -> Result<Complex64> {
        quad::integrate_segment_fn(|z| self.eval(z), z0, z1, tol)
    }
}

// Precedence levels used by the printer: 1 sum, 2 product, 3 unary, 4 power, 5 atom.
fn prec(kind: &ExprKind) -> u8 {
    match kind {
        ExprKind::Add(_, _) | ExprKind::Sub(_, _) => 1,
        ExprKind::Mul(_, _) | ExprKind::Div(_, _) => 2,
        ExprKind::Neg(_) => 3,
        ExprKind::Pow(_, _) => 4,
        ExprKind::Num(c) => {
            if (c.im == 0.0 && c.re >= 0.0) || (c.re == 0.0 && c.im == 1.0) {
                5
            } else {
                0 // composite literal, always parenthesized when nested
            }
        }
        ExprKind::Var(_) | ExprKind::Func(_, _) => 5,
    }
}

fn fmt_at(e: &Expr, min_prec: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let p = prec(&e.kind);
    let need_paren = p < min_prec;
    if need_paren {
        write!(out, "(")?;
    }
    match &e.kind {
        ExprKind::Num(c) => {
            if c.im == 0.0 {
                write!(out, "{}", c.re)?;
            } else if c.re == 0.0 && c.im == 1.0 {
                write!(out, "i")?;
            } else if c.re == 0.0 {
                write!(out, "{}*i", c.im)?;
            } else if c.im < 0.0 {
                write!(out, "{}-{}*i", c.re, -c.im)?;
            } else {
                write!(out, "{}+{}*i", c.re, c.im)?;
            }
        }
        ExprKind::Var(k) => write!(out, "{}", e.vars[*k])?,
        ExprKind::Neg(a) => {
            write!(out, "-")?;
            fmt_at(a, 5, out)?;
        }
        ExprKind::Add(a, b) => {
            fmt_at(a, 1, out)?;
            write!(out, " + ")?;
            fmt_at(b, 2, out)?;
        }
        ExprKind::Sub(a, b) => {
            fmt_at(a, 1, out)?;
            write!(out, " - ")?;
            fmt_at(b, 2, out)?;
        }
        ExprKind::Mul(a, b) => {
            fmt_at(a, 2, out)?;
            write!(out, "*")?;
            fmt_at(b, 3, out)?;
        }
        ExprKind::Div(a, b) => {
            fmt_at(a, 2, out)?;
            write!(out, "/")?;
            fmt_at(b, 3, out)?;
        }
        ExprKind::Pow(a, n) => {
            fmt_at(a, 3, out)?;
            write!(out, "^{}", n)?;
        }
        ExprKind::Func(f, a) => {
            write!(out, "{}(", f.name())?;
            fmt_at(a, 1, out)?;
            write!(out, ")")?;
        }
    }
    if need_paren {
        write!(out, ")")?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_at(self, 1, out)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: Arc<Vec<String>>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn synth(&self, kind: ExprKind, span: (usize, usize)) -> Expr {
        Expr {
            kind,
            span,
            vars: self.vars.clone(),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    let span = (lhs.span.0, rhs.span.1);
                    lhs = self.synth(ExprKind::Add(Box::new(lhs), Box::new(rhs)), span);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    let span = (lhs.span.0, rhs.span.1);
                    lhs = self.synth(ExprKind::Sub(Box::new(lhs), Box::new(rhs)), span);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    let span = (lhs.span.0, rhs.span.1);
                    lhs = self.synth(ExprKind::Mul(Box::new(lhs), Box::new(rhs)), span);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    let span = (lhs.span.0, rhs.span.1);
                    lhs = self.synth(ExprKind::Div(Box::new(lhs), Box::new(rhs)), span);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.unary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.integer()?;
            let span = (base.span.0, self.pos);
            return Ok(self.synth(ExprKind::Pow(Box::new(base), n), span));
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(b'-') {
            let start = self.pos;
            self.pos += 1;
            let a = self.atom()?;
            let span = (start, a.span.1);
            return Ok(self.synth(ExprKind::Neg(Box::new(a)), span));
        }
        self.atom()
    }

    fn integer(&mut self) -> Result<i32> {
        let start = self.pos;
        let mut neg = false;
        if self.src.get(self.pos) == Some(&b'-') {
            neg = true;
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(Error::NonIntegerExponent { offset: start });
        }
        // reject fractional exponents explicitly
        if self.src.get(self.pos) == Some(&b'.') {
            return Err(Error::NonIntegerExponent { offset: start });
        }
        let text = std::str::from_utf8(&self.src[digits_start..self.pos]).unwrap();
        let v: i32 = text.parse().map_err(|_| Error::Syntax {
            offset: start,
            message: "exponent out of range".into(),
        })?;
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            None => Err(Error::Syntax {
                offset: self.pos,
                message: "unexpected end of input".into(),
            }),
            Some(b'(') => {
                let start = self.pos;
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::Syntax {
                        offset: self.pos,
                        message: "expected `)`".into(),
                    });
                }
                self.pos += 1;
                Ok(Expr {
                    span: (start, self.pos),
                    ..e
                })
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.identifier(),
            Some(_) => Err(Error::Syntax {
                offset: self.pos,
                message: format!("unexpected character `{}`", self.src[self.pos] as char),
            }),
        }
    }

    fn number(&mut self) -> Result<Expr> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
        }
        // optional exponent part
        if matches!(self.src.get(self.pos), Some(b'e') | Some(b'E')) {
            let mut probe = self.pos + 1;
            if matches!(self.src.get(probe), Some(b'+') | Some(b'-')) {
                probe += 1;
            }
            if matches!(self.src.get(probe), Some(d) if d.is_ascii_digit()) {
                self.pos = probe;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let v: f64 = text.parse().map_err(|_| Error::Syntax {
            offset: start,
            message: format!("invalid number `{}`", text),
        })?;
        Ok(self.synth(
            ExprKind::Num(Complex64::new(v, 0.0)),
            (start, self.pos),
        ))
    }

    fn identifier(&mut self) -> Result<Expr> {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
        let span = (start, self.pos);
        if name == "i" {
            return Ok(self.synth(ExprKind::Num(Complex64::new(0.0, 1.0)), span));
        }
        if let Some(k) = self.vars.iter().position(|v| *v == name) {
            return Ok(self.synth(ExprKind::Var(k), span));
        }
        let func = match name.as_str() {
            "exp" => Some(Func::Exp),
            "sin" => Some(Func::Sin),
            "cos" => Some(Func::Cos),
            "sinh" => Some(Func::Sinh),
            "cosh" => Some(Func::Cosh),
            _ => None,
        };
        match func {
            Some(f) => {
                if self.peek() != Some(b'(') {
                    return Err(Error::Syntax {
                        offset: self.pos,
                        message: format!("expected `(` after `{}`", name),
                    });
                }
                self.pos += 1;
                let arg = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::Syntax {
                        offset: self.pos,
                        message: "expected `)`".into(),
                    });
                }
                self.pos += 1;
                Ok(self.synth(ExprKind::Func(f, Box::new(arg)), (start, self.pos)))
            }
            None => Err(Error::UnknownFunction {
                name,
                offset: start,
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parse_cosh() {
        let e = Expr::parse("cosh(z)").unwrap();
        assert!(matches!(e.kind, ExprKind::Func(Func::Cosh, _)));
    }

    #[test]
    fn parse_precedence() {
        // power > product > sum
        let e = Expr::parse("(1+2*i)*z^2 - sinh(z)").unwrap();
        match &e.kind {
            ExprKind::Sub(l, r) => {
                assert!(matches!(l.kind, ExprKind::Mul(_, _)));
                assert!(matches!(r.kind, ExprKind::Func(Func::Sinh, _)));
            }
            other => panic!("unexpected {:?}", other),
        }
        let v = e.eval(c(2.0, 0.0)).unwrap();
        let expect = c(1.0, 2.0) * c(4.0, 0.0) - c(2.0, 0.0).sinh();
        assert!((v - expect).norm() < 1e-14);
    }

    #[test]
    fn unknown_function() {
        assert!(matches!(
            Expr::parse("log(z)"),
            Err(Error::UnknownFunction { .. })
        ));
    }

    #[test]
    fn non_integer_exponent() {
        assert!(matches!(
            Expr::parse("z^1.5"),
            Err(Error::NonIntegerExponent { .. })
        ));
    }

    #[test]
    fn syntax_error_offset() {
        match Expr::parse("z + ") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn eval_basics() {
        assert_eq!(
            Expr::parse("sinh(z)").unwrap().eval(c(0.0, 0.0)).unwrap(),
            c(0.0, 0.0)
        );
        assert_eq!(
            Expr::parse("cosh(z)").unwrap().eval(c(0.0, 0.0)).unwrap(),
            c(1.0, 0.0)
        );
    }

    #[test]
    fn eval_exp_i_pi() {
        // series oracle for exp at i*pi
        let z = c(0.0, std::f64::consts::PI);
        let mut sum = c(0.0, 0.0);
        let mut term = c(1.0, 0.0);
        for k in 1..64 {
            sum += term;
            term = term * z / c(k as f64, 0.0);
        }
        let v = Expr::parse("exp(z)").unwrap().eval(z).unwrap();
        assert!((v - sum).norm() < 1e-15);
        assert!((v - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn division_by_zero_reports_node() {
        let e = Expr::parse("1/(z-1)").unwrap();
        match e.eval(c(1.0, 0.0)) {
            Err(Error::DivisionByZero { node, .. }) => assert!(node.contains("z")),
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn derive_cubic() {
        let d = Expr::parse("z^3").unwrap().derive();
        let v = d.eval(c(2.0, 0.0)).unwrap();
        assert!((v - c(12.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn derive_cosh_at_zero() {
        let d = Expr::parse("cosh(z)").unwrap().derive();
        assert_eq!(d.eval(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn derive_matches_finite_difference() {
        let h = 1e-5;
        for src in [
            "z^4 - 3*z^2 + (2-i)*z",
            "sinh(z)*cos(z)",
            "exp(z^2)",
            "cosh((1+i)*z)",
            "sin(z)/cosh(z)",
        ] {
            let e = Expr::parse(src).unwrap();
            let d = e.derive();
            for &z in &[c(0.3, 0.2), c(-0.5, 0.7), c(1.1, -0.4)] {
                let fd = (e.eval(z + c(h, 0.0)).unwrap() - e.eval(z - c(h, 0.0)).unwrap())
                    / c(2.0 * h, 0.0);
                let dv = d.eval(z).unwrap();
                assert!(
                    (dv - fd).norm() <= 1e-8 * (1.0 + dv.norm()),
                    "{}: {} vs {}",
                    src,
                    dv,
                    fd
                );
            }
        }
    }

    #[test]
    fn second_derivative_well_defined() {
        let e = Expr::parse("sin(z)/(1+z^2)").unwrap();
        let dd = e.derive().derive();
        assert!(dd.eval(c(0.5, 0.1)).is_ok());
    }

    #[test]
    fn integrate_cosh_segment() {
        let e = Expr::parse("cosh(z)").unwrap();
        let v = e
            .integrate_segment(c(0.0, 0.0), c(1.0, 0.0), 1e-12)
            .unwrap();
        assert!((v.re - 1.1752011936438014).abs() < 1e-12);
    }

    #[test]
    fn roundtrip_corpus() {
        let corpus = [
            "z",
            "i",
            "-z",
            "z + 1",
            "z - 1 - 2",
            "(1+2*i)*z^2 - sinh(z)",
            "z^-2",
            "-z^2",
            "-(z^2)",
            "cosh(sinh(z))",
            "exp(z)/(1+z)",
            "2.5*z^3 + sin(z)*cos(z)",
            "z/(z+1)/(z+2)",
            "1e-3*z",
        ];
        for src in corpus {
            let e1 = Expr::parse(src).unwrap();
            let printed = format!("{}", e1);
            let e2 = Expr::parse(&printed)
                .unwrap_or_else(|err| panic!("reparse of `{}` from `{}`: {}", printed, src, err));
            assert_eq!(e1, e2, "round-trip failed: `{}` -> `{}`", src, printed);
        }
    }

    #[test]
    fn neg_base_power_grammar() {
        // per the grammar, the power applies to the signed atom
        let e = Expr::parse("-z^2").unwrap();
        assert!(matches!(&e.kind, ExprKind::Pow(b, 2) if matches!(b.kind, ExprKind::Neg(_))));
        assert_eq!(e.eval(c(3.0, 0.0)).unwrap(), c(9.0, 0.0));
    }

    #[test]
    fn constancy_probe() {
        assert!(Expr::parse("1+2*i").unwrap().is_constant_function());
        assert!(Expr::parse("sinh(z)^2 - cosh(z)^2").unwrap().is_constant_function());
        assert!(!Expr::parse("z").unwrap().is_constant_function());
    }

    #[test]
    fn two_variable_partials() {
        let e = Expr::parse_with_vars("x1^2*x2 + sin(x2)", &["x1", "x2"]).unwrap();
        let d1 = e.derive_var(0);
        let d2 = e.derive_var(1);
        let at = [c(2.0, 0.0), c(0.5, 0.0)];
        assert!((d1.eval_vars(&at).unwrap() - c(2.0, 0.0)).norm() < 1e-14);
        let expect = c(4.0, 0.0) + c(0.5, 0.0).cos();
        assert!((d2.eval_vars(&at).unwrap() - expect).norm() < 1e-14);
    }
}
