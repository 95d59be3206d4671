//! Small expression trees for closed-form solutions and side conditions.
//!
//! Forms are stored as trees rather than strings so that an errata correction
//! can replace a single node (an exponent, a Jacobi function) and so that the
//! same tree both evaluates and renders.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::special::{jacobi_unchecked, ns_plus_cs_unchecked, JacobiRatio, WeierstrassInvariants, WeierstrassLattice};

/// Named quantities that may appear in a form or a condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Symbol {
    C0,
    C1,
    C2,
    C3,
    C4,
    Eps,
    M,
    Xi,
    Xi0,
    Alpha,
    Beta,
    Gamma,
    Omega,
    /// NLS phase frequency `c` in `eta = k x + c t`.
    Freq,
    /// mBBM integration constant.
    B,
    /// KdV-mKdV integration constant.
    C,
    X,
    T,
}

impl Symbol {
    pub const COUNT: usize = 18;

    pub const ALL: [Symbol; Symbol::COUNT] = [
        Symbol::C0,
        Symbol::C1,
        Symbol::C2,
        Symbol::C3,
        Symbol::C4,
        Symbol::Eps,
        Symbol::M,
        Symbol::Xi,
        Symbol::Xi0,
        Symbol::Alpha,
        Symbol::Beta,
        Symbol::Gamma,
        Symbol::Omega,
        Symbol::Freq,
        Symbol::B,
        Symbol::C,
        Symbol::X,
        Symbol::T,
    ];

    pub const COEFFICIENTS: [Symbol; 5] = [Symbol::C0, Symbol::C1, Symbol::C2, Symbol::C3, Symbol::C4];

    fn index(self) -> usize {
        self as usize
    }

    /// Rendering used in printed forms.
    pub fn glyph(self) -> &'static str {
        match self {
            Symbol::C0 => "c0",
            Symbol::C1 => "c1",
            Symbol::C2 => "c2",
            Symbol::C3 => "c3",
            Symbol::C4 => "c4",
            Symbol::Eps => "ε",
            Symbol::M => "m",
            Symbol::Xi => "ξ",
            Symbol::Xi0 => "ξ0",
            Symbol::Alpha => "α",
            Symbol::Beta => "β",
            Symbol::Gamma => "γ",
            Symbol::Omega => "ω",
            Symbol::Freq => "c",
            Symbol::B => "B",
            Symbol::C => "C",
            Symbol::X => "x",
            Symbol::T => "t",
        }
    }

    /// ASCII key used for parameter bindings in JSON and on the command line.
    pub fn key(self) -> &'static str {
        match self {
            Symbol::C0 => "c0",
            Symbol::C1 => "c1",
            Symbol::C2 => "c2",
            Symbol::C3 => "c3",
            Symbol::C4 => "c4",
            Symbol::Eps => "eps",
            Symbol::M => "m",
            Symbol::Xi => "xi",
            Symbol::Xi0 => "xi0",
            Symbol::Alpha => "alpha",
            Symbol::Beta => "beta",
            Symbol::Gamma => "gamma",
            Symbol::Omega => "omega",
            Symbol::Freq => "c",
            Symbol::B => "B",
            Symbol::C => "C",
            Symbol::X => "x",
            Symbol::T => "t",
        }
    }

    pub fn from_key(key: &str) -> Option<Symbol> {
        Symbol::ALL.into_iter().find(|s| s.key() == key)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.glyph())
    }
}

/// Numeric bindings for every [`Symbol`]; unbound symbols read as NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Env {
    values: [f64; Symbol::COUNT],
}

impl Default for Env {
    fn default() -> Self {
        Env {
            values: [f64::NAN; Symbol::COUNT],
        }
    }
}

impl Env {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, s: Symbol, v: f64) -> Self {
        self.set(s, v);
        self
    }

    pub fn set(&mut self, s: Symbol, v: f64) {
        self.values[s.index()] = v;
    }

    pub fn unset(&mut self, s: Symbol) {
        self.values[s.index()] = f64::NAN;
    }

    pub fn get(&self, s: Symbol) -> f64 {
        self.values[s.index()]
    }

    pub fn is_bound(&self, s: Symbol) -> bool {
        !self.get(s).is_nan()
    }

    /// Bound symbols in declaration order.
    pub fn bindings(&self) -> Vec<(Symbol, f64)> {
        Symbol::ALL
            .into_iter()
            .filter(|s| self.is_bound(*s))
            .map(|s| (s, self.get(s)))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Cot,
    Sec,
    Csc,
    Sinh,
    Cosh,
    Tanh,
    Coth,
    Sech,
    Csch,
    Exp,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Cot => "cot",
            Func::Sec => "sec",
            Func::Csc => "csc",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Coth => "coth",
            Func::Sech => "sech",
            Func::Csch => "csch",
            Func::Exp => "exp",
        }
    }

    pub fn apply(self, v: f64) -> f64 {
        match self {
            Func::Sin => v.sin(),
            Func::Cos => v.cos(),
            Func::Tan => v.tan(),
            Func::Cot => 1.0 / v.tan(),
            Func::Sec => 1.0 / v.cos(),
            Func::Csc => 1.0 / v.sin(),
            Func::Sinh => v.sinh(),
            Func::Cosh => v.cosh(),
            Func::Tanh => v.tanh(),
            Func::Coth => 1.0 / v.tanh(),
            Func::Sech => 1.0 / v.cosh(),
            Func::Csch => 1.0 / v.sinh(),
            Func::Exp => v.exp(),
        }
    }
}

/// Jacobi-type primitives: sn, cn, dn, the Glaisher ratios, and `ns + cs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JacobiFn {
    Sn,
    Cn,
    Dn,
    Ratio(JacobiRatio),
    NsPlusCs,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Sym(Symbol),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Sqrt(Box<Expr>),
    Abs(Box<Expr>),
    Func(Func, Box<Expr>),
    /// Jacobi function of (argument, modulus).
    Jacobi(JacobiFn, Box<Expr>, Box<Expr>),
    /// Weierstrass ℘ of (argument, g2, g3).
    Wp(Box<Expr>, Box<Expr>, Box<Expr>),
}

pub fn num(v: f64) -> Expr {
    Expr::Const(v)
}

pub fn sym(s: Symbol) -> Expr {
    Expr::Sym(s)
}

/// `p / q` as an exact-looking rational constant node.
pub fn frac(p: f64, q: f64) -> Expr {
    Expr::Div(Box::new(num(p)), Box::new(num(q)))
}

pub fn sqrt(e: impl Into<Expr>) -> Expr {
    Expr::Sqrt(Box::new(e.into()))
}

pub fn abs(e: impl Into<Expr>) -> Expr {
    Expr::Abs(Box::new(e.into()))
}

pub fn pow(base: impl Into<Expr>, exp: impl Into<Expr>) -> Expr {
    Expr::Pow(Box::new(base.into()), Box::new(exp.into()))
}

pub fn sq(e: impl Into<Expr>) -> Expr {
    pow(e, 2.0)
}

pub fn func(f: Func, arg: impl Into<Expr>) -> Expr {
    Expr::Func(f, Box::new(arg.into()))
}

pub fn jac(kind: JacobiFn, arg: impl Into<Expr>, m: impl Into<Expr>) -> Expr {
    Expr::Jacobi(kind, Box::new(arg.into()), Box::new(m.into()))
}

pub fn sn(arg: impl Into<Expr>, m: impl Into<Expr>) -> Expr {
    jac(JacobiFn::Sn, arg, m)
}

pub fn cn(arg: impl Into<Expr>, m: impl Into<Expr>) -> Expr {
    jac(JacobiFn::Cn, arg, m)
}

pub fn dn(arg: impl Into<Expr>, m: impl Into<Expr>) -> Expr {
    jac(JacobiFn::Dn, arg, m)
}

pub fn wp(arg: impl Into<Expr>, g2: impl Into<Expr>, g3: impl Into<Expr>) -> Expr {
    Expr::Wp(Box::new(arg.into()), Box::new(g2.into()), Box::new(g3.into()))
}

impl From<f64> for Expr {
    fn from(v: f64) -> Self {
        Expr::Const(v)
    }
}

impl From<Symbol> for Expr {
    fn from(s: Symbol) -> Self {
        Expr::Sym(s)
    }
}

impl From<&Expr> for Expr {
    fn from(e: &Expr) -> Self {
        e.clone()
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl<R: Into<Expr>> $trait<R> for Expr {
            type Output = Expr;
            fn $method(self, rhs: R) -> Expr {
                Expr::$variant(Box::new(self), Box::new(rhs.into()))
            }
        }
        impl<R: Into<Expr>> $trait<R> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: R) -> Expr {
                Expr::$variant(Box::new(self.clone()), Box::new(rhs.into()))
            }
        }
        impl<R: Into<Expr>> $trait<R> for Symbol {
            type Output = Expr;
            fn $method(self, rhs: R) -> Expr {
                Expr::$variant(Box::new(Expr::Sym(self)), Box::new(rhs.into()))
            }
        }
        impl $trait<Expr> for f64 {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::$variant(Box::new(Expr::Const(self)), Box::new(rhs))
            }
        }
        impl $trait<Symbol> for f64 {
            type Output = Expr;
            fn $method(self, rhs: Symbol) -> Expr {
                Expr::$variant(Box::new(Expr::Const(self)), Box::new(Expr::Sym(rhs)))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

impl Neg for Symbol {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(Expr::Sym(self)))
    }
}

impl Expr {
    /// Evaluate under `env`. Unbound symbols and invalid real operations give NaN.
    pub fn eval(&self, env: &Env) -> f64 {
        match self {
            Expr::Const(v) => *v,
            Expr::Sym(s) => env.get(*s),
            Expr::Neg(a) => -a.eval(env),
            Expr::Add(a, b) => a.eval(env) + b.eval(env),
            Expr::Sub(a, b) => a.eval(env) - b.eval(env),
            Expr::Mul(a, b) => a.eval(env) * b.eval(env),
            Expr::Div(a, b) => a.eval(env) / b.eval(env),
            Expr::Pow(a, b) => {
                let base = a.eval(env);
                match b.as_ref() {
                    Expr::Const(p) if p.fract() == 0.0 && p.abs() < 64.0 => base.powi(*p as i32),
                    _ => base.powf(b.eval(env)),
                }
            }
            Expr::Sqrt(a) => a.eval(env).sqrt(),
            Expr::Abs(a) => a.eval(env).abs(),
            Expr::Func(f, a) => f.apply(a.eval(env)),
            Expr::Jacobi(kind, u, m) => {
                let t = jacobi_unchecked(u.eval(env), m.eval(env));
                match kind {
                    JacobiFn::Sn => t.sn,
                    JacobiFn::Cn => t.cn,
                    JacobiFn::Dn => t.dn,
                    JacobiFn::Ratio(r) => r.apply(t),
                    JacobiFn::NsPlusCs => ns_plus_cs_unchecked(t),
                }
            }
            Expr::Wp(z, g2, g3) => {
                let (z, g2, g3) = (z.eval(env), g2.eval(env), g3.eval(env));
                match WeierstrassInvariants::new(g2, g3) {
                    Ok(inv) if z.is_finite() => WeierstrassLattice::new(inv).eval_unchecked(z).0,
                    _ => f64::NAN,
                }
            }
        }
    }

    /// Structural replacement of every subtree equal to `target`.
    pub fn replace(&self, target: &Expr, with: &Expr) -> Expr {
        if self == target {
            return with.clone();
        }
        let r = |e: &Expr| Box::new(e.replace(target, with));
        match self {
            Expr::Const(_) | Expr::Sym(_) => self.clone(),
            Expr::Neg(a) => Expr::Neg(r(a)),
            Expr::Add(a, b) => Expr::Add(r(a), r(b)),
            Expr::Sub(a, b) => Expr::Sub(r(a), r(b)),
            Expr::Mul(a, b) => Expr::Mul(r(a), r(b)),
            Expr::Div(a, b) => Expr::Div(r(a), r(b)),
            Expr::Pow(a, b) => Expr::Pow(r(a), r(b)),
            Expr::Sqrt(a) => Expr::Sqrt(r(a)),
            Expr::Abs(a) => Expr::Abs(r(a)),
            Expr::Func(f, a) => Expr::Func(*f, r(a)),
            Expr::Jacobi(k, a, m) => Expr::Jacobi(*k, r(a), r(m)),
            Expr::Wp(z, g2, g3) => Expr::Wp(r(z), r(g2), r(g3)),
        }
    }

    /// Replace every occurrence of a symbol by an expression.
    pub fn substitute(&self, s: Symbol, with: &Expr) -> Expr {
        self.replace(&Expr::Sym(s), with)
    }

    /// Number of subtrees equal to `target`.
    pub fn count(&self, target: &Expr) -> usize {
        if self == target {
            return 1;
        }
        self.children().iter().map(|c| c.count(target)).sum()
    }

    pub fn contains_symbol(&self, s: Symbol) -> bool {
        self.count(&Expr::Sym(s)) > 0
    }

    /// Distinct symbols in the tree, sorted.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        self.collect_symbols(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_symbols(&self, out: &mut Vec<Symbol>) {
        if let Expr::Sym(s) = self {
            out.push(*s);
        }
        for c in self.children() {
            c.collect_symbols(out);
        }
    }

    fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Const(_) | Expr::Sym(_) => vec![],
            Expr::Neg(a) | Expr::Sqrt(a) | Expr::Abs(a) | Expr::Func(_, a) => vec![a],
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                vec![a, b]
            }
            Expr::Jacobi(_, a, m) => vec![a, m],
            Expr::Wp(z, g2, g3) => vec![z, g2, g3],
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Const(v) if *v < 0.0 => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

fn fmt_const(v: f64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        write!(f, "{}", v as i64)
    } else if v == std::f64::consts::FRAC_1_SQRT_2 {
        f.write_str("√2/2")
    } else {
        write!(f, "{v}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(v) => fmt_const(*v, f),
            Expr::Sym(s) => write!(f, "{s}"),
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.fmt_child(f, 3)
            }
            Expr::Add(a, b) => {
                a.fmt_child(f, 1)?;
                f.write_str(" + ")?;
                b.fmt_child(f, 2)
            }
            Expr::Sub(a, b) => {
                a.fmt_child(f, 1)?;
                f.write_str(" - ")?;
                b.fmt_child(f, 2)
            }
            Expr::Mul(a, b) => {
                a.fmt_child(f, 2)?;
                f.write_str("*")?;
                b.fmt_child(f, 3)
            }
            Expr::Div(a, b) => {
                a.fmt_child(f, 2)?;
                f.write_str("/")?;
                b.fmt_child(f, 3)
            }
            Expr::Pow(a, b) => {
                a.fmt_child(f, 5)?;
                f.write_str("^")?;
                b.fmt_child(f, 5)
            }
            Expr::Sqrt(a) => write!(f, "√({a})"),
            Expr::Abs(a) => write!(f, "|{a}|"),
            Expr::Func(func, a) => write!(f, "{}({a})", func.name()),
            Expr::Jacobi(kind, a, m) => match kind {
                JacobiFn::Sn => write!(f, "sn({a}, {m})"),
                JacobiFn::Cn => write!(f, "cn({a}, {m})"),
                JacobiFn::Dn => write!(f, "dn({a}, {m})"),
                JacobiFn::Ratio(r) => write!(f, "{}({a}, {m})", r.name()),
                JacobiFn::NsPlusCs => write!(f, "[ns({a}, {m}) + cs({a}, {m})]"),
            },
            Expr::Wp(z, g2, g3) => write!(f, "℘({z}, {g2}, {g3})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Symbol::*;

    #[test]
    fn arithmetic_and_render() {
        let e = 2.0 * C2 / (Eps * sqrt(C3 * C3 - 4.0 * C2 * C4) - C3);
        let env = Env::new().with(C2, 1.0).with(C3, 0.0).with(C4, -1.0).with(Eps, 1.0);
        assert_eq!(e.eval(&env), 1.0);
        assert_eq!(e.to_string(), "2*c2/(ε*√(c3*c3 - 4*c2*c4) - c3)");
    }

    #[test]
    fn unbound_symbol_is_nan() {
        assert!((C0 + 1.0).eval(&Env::new()).is_nan());
        assert!(sqrt(-1.0 * C0).eval(&Env::new().with(C0, 2.0)).is_nan());
    }

    #[test]
    fn replace_single_node() {
        let arg = 2.0 * Xi;
        let e = dn(&arg, M) / cn(&arg, M);
        let fixed = e.replace(&cn(&arg, M), &sn(&arg, M));
        assert_eq!(fixed, dn(&arg, M) / sn(&arg, M));
        assert_eq!(e.count(&cn(&arg, M)), 1);
        assert_eq!(fixed.count(&cn(&arg, M)), 0);
    }

    #[test]
    fn power_rendering_and_eval() {
        let e = pow(-4.0 * C0 / C4, frac(1.0, 4.0));
        assert_eq!(e.to_string(), "(-4*c0/c4)^(1/4)");
        let v = e.eval(&Env::new().with(C0, -1.0).with(C4, 4.0));
        assert!((v - 1.0).abs() < 1e-15);
        assert_eq!(sq(Xi).eval(&Env::new().with(Xi, -3.0)), 9.0);
    }

    #[test]
    fn symbols_are_collected() {
        let e = sn(C3 / (4.0 * M * sqrt(C4)) * Xi, M);
        assert_eq!(e.symbols(), vec![C3, C4, M, Xi]);
        assert!(e.contains_symbol(M));
        assert_eq!(Symbol::from_key("omega"), Some(Omega));
        assert_eq!(Symbol::from_key("C"), Some(C));
    }

    #[test]
    fn jacobi_and_weierstrass_nodes() {
        let env = Env::new().with(Xi, 1.0).with(M, 1.0);
        assert!((sn(Xi, M).eval(&env) - 1f64.tanh()).abs() < 1e-15);
        let p = wp(Xi, 0.0, 0.0).eval(&Env::new().with(Xi, 2.0));
        assert!((p - 0.25).abs() < 1e-14);
    }
}
