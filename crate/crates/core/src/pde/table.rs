//! Printed solution inventories: mBBM u1-u11, NLS u1-u14, KdV-mKdV u1-u23.

use std::sync::OnceLock;

use serde::Serialize;

use super::PdeId;
use crate::catalog::{Condition, Constraint, ErrataKind, FamilyId};
use crate::error::{Error, Result};
use crate::expr::{cn, dn, func, jac, num, pow, sn, sq, sqrt, sym, Expr, Func, JacobiFn, Symbol, Symbol::*};
use crate::special::JacobiRatio;

/// A candidate correction of a printed entry.
#[derive(Debug, Clone)]
pub struct Correction {
    pub kind: ErrataKind,
    pub printed: &'static str,
    pub corrected: &'static str,
    pub profile: Option<Expr>,
    pub speed: Option<Expr>,
    pub conditions: Option<Vec<Condition>>,
}

/// One printed solution `u_k` of a registered equation.
#[derive(Debug, Clone)]
pub struct SolutionEntry {
    pub pde: PdeId,
    pub name: &'static str,
    /// Catalog family the entry was obtained from.
    pub family: FamilyId,
    /// Profile in the wave variable `ξ = x - speed t + ξ0`.
    pub profile: Expr,
    pub speed: Expr,
    /// Carrier `e^{i(k x + freq t)}` for NLS.
    pub carrier: Option<(Expr, Expr)>,
    /// Parameters the entry determines, as `(symbol, value)`.
    pub fixed: Vec<(Symbol, Expr)>,
    /// Printed validity conditions.
    pub conditions: Vec<Condition>,
    pub note: Option<&'static str>,
    pub correction: Option<Correction>,
}

/// JSON listing row for one entry.
#[derive(Debug, Clone, Serialize)]
pub struct EntryListing {
    pub name: &'static str,
    pub family: FamilyId,
    pub profile: String,
    pub speed: String,
    pub carrier: Option<[String; 2]>,
    pub fixed: Vec<String>,
    pub conditions: Vec<String>,
    pub parameters: Vec<&'static str>,
    pub note: Option<&'static str>,
    pub correction: Option<String>,
}

impl SolutionEntry {
    /// Parameters a caller must (or may) supply.
    pub fn parameters(&self) -> Vec<Symbol> {
        let mut exprs: Vec<&Expr> = vec![&self.profile, &self.speed];
        if let Some((k, f)) = &self.carrier {
            exprs.push(k);
            exprs.push(f);
        }
        exprs.extend(self.fixed.iter().map(|(_, e)| e));
        let mut syms: Vec<Symbol> = self.pde.physical().to_vec();
        for e in exprs {
            syms.extend(e.symbols());
        }
        for c in &self.conditions {
            match &c.constraint {
                Constraint::Assign { symbol, value } => {
                    syms.push(*symbol);
                    syms.extend(value.symbols());
                }
                Constraint::Sign { expr, .. } => syms.extend(expr.symbols()),
            }
        }
        syms.sort();
        syms.dedup();
        syms.retain(|s| *s != Xi && !self.fixed.iter().any(|(f, _)| f == s));
        syms
    }

    pub fn listing(&self) -> EntryListing {
        EntryListing {
            name: self.name,
            family: self.family,
            profile: self.profile.to_string(),
            speed: self.speed.to_string(),
            carrier: self.carrier.as_ref().map(|(k, f)| [k.to_string(), f.to_string()]),
            fixed: self.fixed.iter().map(|(s, e)| format!("{s} = {e}")).collect(),
            conditions: self.conditions.iter().map(|c| c.label.clone()).collect(),
            parameters: self.parameters().iter().map(|s| s.key()).collect(),
            note: self.note,
            correction: self
                .correction
                .as_ref()
                .map(|c| format!("{}: {} -> {}", kind_text(c.kind), c.printed, c.corrected)),
        }
    }

    /// The entry with its correction applied (itself when it has none).
    pub fn corrected(&self) -> SolutionEntry {
        let mut out = self.clone();
        if let Some(c) = &self.correction {
            if let Some(p) = &c.profile {
                out.profile = p.clone();
            }
            if let Some(s) = &c.speed {
                out.speed = s.clone();
                for (sym_, e) in out.fixed.iter_mut() {
                    if *sym_ == Omega {
                        *e = s.clone();
                    }
                }
            }
            if let Some(conds) = &c.conditions {
                out.conditions = conds.clone();
            }
        }
        out.correction = None;
        out
    }
}

fn kind_text(k: ErrataKind) -> &'static str {
    match k {
        ErrataKind::Form => "form",
        ErrataKind::Constraint => "constraint",
        ErrataKind::Parameter => "parameter",
        ErrataKind::Condition => "condition",
    }
}

struct Builder(SolutionEntry);

fn entry(pde: PdeId, name: &'static str, family: FamilyId, profile: Expr) -> Builder {
    let carrier = (pde == PdeId::Nls).then(|| (sym(Omega) / (2.0 * Alpha), sym(Freq)));
    let fixed = match pde {
        PdeId::Mbbm => vec![(B, num(0.0))],
        _ => vec![],
    };
    Builder(SolutionEntry {
        pde,
        name,
        family,
        profile,
        speed: sym(Omega),
        carrier,
        fixed,
        conditions: Vec::new(),
        note: None,
        correction: None,
    })
}

impl Builder {
    fn when(mut self, label: &str, c: Constraint) -> Self {
        self.0.conditions.push(Condition::printed(label, c));
        self
    }

    /// Fixed wave speed, recorded as the printed condition `label`.
    fn speed(mut self, label: &str, e: Expr) -> Self {
        self.0.speed = e.clone();
        self.0.fixed.push((Omega, e));
        if !label.is_empty() {
            self.0.conditions.push(Condition::printed(
                label,
                Constraint::assign(Omega, self.0.speed.clone()),
            ));
        }
        self
    }

    fn fix(mut self, s: Symbol, e: Expr) -> Self {
        self.0.fixed.push((s, e));
        self
    }

    fn carrier(mut self, k: Expr, f: Expr) -> Self {
        self.0.carrier = Some((k, f));
        self
    }

    fn note(mut self, n: &'static str) -> Self {
        self.0.note = Some(n);
        self
    }

    fn correction(mut self, c: Correction) -> Self {
        self.0.correction = Some(c);
        self
    }

    fn build(self) -> SolutionEntry {
        self.0
    }
}

fn f(func_: Func, e: Expr) -> Expr {
    func(func_, e)
}

fn xi() -> Expr {
    sym(Xi)
}

fn r2() -> Expr {
    num(std::f64::consts::FRAC_1_SQRT_2)
}

fn mbbm() -> Vec<SolutionEntry> {
    use PdeId::Mbbm as P;
    let id = FamilyId::new;
    let w = || sym(Omega);
    let rate_1 = || sqrt((1.0 - w()) / w());
    let rate_2 = || sqrt((w() - 1.0) / w());
    let rate_5 = || sqrt((w() - 1.0) / (2.0 * w()));
    let rate_7 = || sqrt((1.0 - w()) / (2.0 * w()));
    let between_0_1 = |b: Builder| {
        b.when("0<ω<1", Constraint::positive(Omega))
            .when("0<ω<1", Constraint::positive(1.0 - w()))
    };
    let above_1 = |b: Builder| b.when("ω>1", Constraint::positive(w() - 1.0));
    vec![
        between_0_1(entry(
            P,
            "u1",
            FamilyId::new(2),
            Eps * sqrt(6.0 * (1.0 - w())) * f(Func::Csch, rate_1() * xi()),
        ))
        .build(),
        above_1(entry(
            P,
            "u2",
            FamilyId::branch(3, 'a'),
            Eps * sqrt(6.0 * (w() - 1.0)) * f(Func::Sec, rate_2() * xi()),
        ))
        .build(),
        above_1(entry(
            P,
            "u3",
            FamilyId::branch(3, 'b'),
            Eps * sqrt(6.0 * (w() - 1.0)) * f(Func::Csc, rate_2() * xi()),
        ))
        .build(),
        entry(P, "u4", id(6), sqrt(6.0) * Eps / xi())
            .speed("ω=1", num(1.0))
            .build(),
        above_1(entry(
            P,
            "u5",
            id(14),
            Eps * sqrt(3.0 * (w() - 1.0)) * f(Func::Tanh, rate_5() * xi()),
        ))
        .build(),
        above_1(entry(
            P,
            "u6",
            id(15),
            Eps * sqrt(3.0 * (w() - 1.0)) * f(Func::Coth, rate_5() * xi()),
        ))
        .build(),
        between_0_1(entry(
            P,
            "u7",
            FamilyId::branch(16, 'a'),
            Eps * sqrt(3.0 * (1.0 - w())) * f(Func::Tan, rate_7() * xi()),
        ))
        .build(),
        between_0_1(entry(
            P,
            "u8",
            FamilyId::branch(16, 'b'),
            Eps * sqrt(3.0 * (1.0 - w())) * f(Func::Cot, rate_7() * xi()),
        ))
        .build(),
        above_1(entry(
            P,
            "u9",
            id(17),
            sqrt(6.0 * (w() - 1.0) * sq(M) / (sq(M) + 1.0)) * sn(sqrt((w() - 1.0) / (w() * (sq(M) + 1.0))) * xi(), M),
        ))
        .note("the cn/dn companions from the same case are not printed")
        .build(),
        entry(
            P,
            "u10",
            id(20),
            Eps * pow(-24.0 * C0, 0.25)
                * jac(
                    JacobiFn::Ratio(JacobiRatio::Ds),
                    pow(-2.0 / 3.0 * C0, 0.25) * xi(),
                    r2(),
                ),
        )
        .speed("ω=1", num(1.0))
        .when("c0<0", Constraint::negative(C0))
        .build(),
        entry(
            P,
            "u11",
            id(21),
            Eps * pow(6.0 * C0, 0.25) * jac(JacobiFn::NsPlusCs, 2.0 * pow(C0 / 6.0, 0.25) * xi(), r2()),
        )
        .speed("ω=1", num(1.0))
        .when("c0>0", Constraint::positive(C0))
        .build(),
    ]
}

fn nls() -> Vec<SolutionEntry> {
    use PdeId::Nls as P;
    let id = FamilyId::new;
    let w = || sq(Omega) + 4.0 * Alpha * Freq;
    let ab = || Alpha * Beta;
    let w_pos = |b: Builder| b.when("ω²+4αc>0", Constraint::positive(w()));
    let w_neg = |b: Builder| b.when("ω²+4αc<0", Constraint::negative(w()));
    let ab_pos = |b: Builder| b.when("αβ>0", Constraint::positive(ab()));
    let ab_neg = |b: Builder| b.when("αβ<0", Constraint::negative(ab()));
    let half_rate = |inner: Expr| 0.5 * sqrt(inner);
    let quarter_rate = |inner: Expr| 0.25 * sqrt(inner);
    let w0_free_c = || -sq(Omega) / (4.0 * Alpha);
    let w0_free_alpha = || -sq(Omega) / (4.0 * Freq);
    let carrier_w0 = || (-2.0 * Freq / Omega, sym(Freq));
    let beta_c0_c = || Beta * C0 * Freq;
    vec![
        ab_pos(w_pos(entry(
            P,
            "u1",
            id(1),
            Eps * sqrt(w() / (2.0 * ab())) * f(Func::Sech, half_rate(w() / sq(Alpha)) * xi()),
        )))
        .build(),
        ab_neg(w_pos(entry(
            P,
            "u2",
            id(2),
            Eps * sqrt(-w() / (2.0 * ab())) * f(Func::Csch, half_rate(w() / sq(Alpha)) * xi()),
        )))
        .build(),
        ab_neg(w_neg(entry(
            P,
            "u3",
            FamilyId::branch(3, 'a'),
            Eps * sqrt(w() / (2.0 * ab())) * f(Func::Sec, half_rate(-w() / sq(Alpha)) * xi()),
        )))
        .build(),
        ab_neg(w_neg(entry(
            P,
            "u4",
            FamilyId::branch(3, 'b'),
            Eps * sqrt(w() / (2.0 * ab())) * f(Func::Csc, half_rate(-w() / sq(Alpha)) * xi()),
        )))
        .build(),
        ab_pos(
            entry(P, "u5", id(6), Eps / (sqrt(-Beta / (2.0 * Alpha)) * xi()))
                .fix(Freq, w0_free_c())
                .when("ω²+4αc=0", Constraint::assign(Freq, w0_free_c())),
        )
        .correction(Correction {
            kind: ErrataKind::Condition,
            printed: "αβ>0",
            corrected: "αβ<0",
            profile: None,
            speed: None,
            conditions: Some(vec![
                Condition::printed("ω²+4αc=0", Constraint::assign(Freq, w0_free_c())),
                Condition::printed("αβ<0", Constraint::negative(ab())),
            ]),
        })
        .build(),
        ab_neg(w_neg(entry(
            P,
            "u6",
            id(14),
            0.5 * Eps * sqrt(w() / ab()) * f(Func::Tanh, quarter_rate(-2.0 * w() / sq(Alpha)) * xi()),
        )))
        .build(),
        ab_neg(w_neg(entry(
            P,
            "u7",
            id(15),
            0.5 * Eps * sqrt(w() / ab()) * f(Func::Coth, quarter_rate(-2.0 * w() / sq(Alpha)) * xi()),
        )))
        .build(),
        ab_neg(w_pos(entry(
            P,
            "u8",
            FamilyId::branch(16, 'a'),
            0.5 * Eps * sqrt(-w() / ab()) * f(Func::Tan, quarter_rate(2.0 * w() / sq(Alpha)) * xi()),
        )))
        .build(),
        ab_neg(w_pos(entry(
            P,
            "u9",
            FamilyId::branch(16, 'b'),
            0.5 * Eps * sqrt(-w() / ab()) * f(Func::Cot, quarter_rate(2.0 * w() / sq(Alpha)) * xi()),
        )))
        .build(),
        ab_pos(w_pos(entry(
            P,
            "u10",
            id(18),
            sqrt(sq(M) * w() / (2.0 * ab() * (2.0 * sq(M) - 1.0)))
                * cn(half_rate(w() / (sq(Alpha) * (2.0 * sq(M) - 1.0))) * xi(), M),
        )))
        .when("½<m²<1", Constraint::positive(2.0 * sq(M) - 1.0))
        .when("½<m²<1", Constraint::positive(1.0 - sq(M)))
        .build(),
        ab_neg(w_neg(entry(
            P,
            "u11",
            id(17),
            sqrt(sq(M) * w() / (2.0 * ab() * (sq(M) + 1.0)))
                * sn(half_rate(-w() / (sq(Alpha) * (sq(M) + 1.0))) * xi(), M),
        )))
        .build(),
        ab_pos(w_pos(entry(
            P,
            "u12",
            id(19),
            sqrt(w() / (2.0 * ab() * (2.0 - sq(M)))) * dn(half_rate(w() / (sq(Alpha) * (2.0 - sq(M)))) * xi(), M),
        )))
        .build(),
        entry(
            P,
            "u13",
            id(20),
            Eps * pow(-2.0 * sq(Omega) * C0 / (Beta * Freq), 0.25)
                * jac(
                    JacobiFn::Ratio(JacobiRatio::Ds),
                    pow(-8.0 * Beta * C0 * Freq / sq(Omega), 0.25) * xi(),
                    r2(),
                ),
        )
        .carrier(carrier_w0().0, carrier_w0().1)
        .fix(Alpha, w0_free_alpha())
        .when("ω²+4αc=0", Constraint::assign(Alpha, w0_free_alpha()))
        .when("βc0c<0", Constraint::negative(beta_c0_c()))
        .correction(Correction {
            kind: ErrataKind::Condition,
            printed: "βc0c<0",
            corrected: "c0<0, βc>0",
            profile: None,
            speed: None,
            conditions: Some(vec![
                Condition::printed("ω²+4αc=0", Constraint::assign(Alpha, w0_free_alpha())),
                Condition::printed("c0<0", Constraint::negative(C0)),
                Condition::printed("βc>0", Constraint::positive(Beta * Freq)),
            ]),
        })
        .build(),
        entry(
            P,
            "u14",
            id(21),
            Eps * pow(sq(Omega) * C0 / (2.0 * Beta * Freq), 0.25)
                * jac(
                    JacobiFn::NsPlusCs,
                    2.0 * pow(2.0 * Beta * C0 * Freq / sq(Omega), 0.25) * xi(),
                    r2(),
                ),
        )
        .carrier(carrier_w0().0, carrier_w0().1)
        .fix(Alpha, w0_free_alpha())
        .when("ω²+4αc=0", Constraint::assign(Alpha, w0_free_alpha()))
        .when("βc0c>0", Constraint::positive(beta_c0_c()))
        .correction(Correction {
            kind: ErrataKind::Condition,
            printed: "βc0c>0",
            corrected: "c0>0, βc>0",
            profile: None,
            speed: None,
            conditions: Some(vec![
                Condition::printed("ω²+4αc=0", Constraint::assign(Alpha, w0_free_alpha())),
                Condition::printed("c0>0", Constraint::positive(C0)),
                Condition::printed("βc>0", Constraint::positive(Beta * Freq)),
            ]),
        })
        .build(),
    ]
}

fn kdv() -> Vec<SolutionEntry> {
    use PdeId::KdvMkdv as P;
    let id = FamilyId::new;
    let w = || sym(Omega);
    let d = || sq(Alpha) + Beta * w();
    let bg = || Beta * Gamma;
    let shell = |inner: Expr| -Alpha / (2.0 * Beta) * (1.0 + inner);
    let bg_pos = |b: Builder| b.when("βγ>0", Constraint::positive(bg()));
    let bg_neg = |b: Builder| b.when("βγ<0", Constraint::negative(bg()));
    let m2 = || sq(M);
    let mc = || sqrt(1.0 - sq(M));

    // Wave speeds and integration constants per sub-case.
    let w1 = || -sq(Alpha) / Beta;
    let c1 = || -2.0 * pow(Alpha, 3.0) / (27.0 * sq(Beta));
    let w2 = || -sq(Alpha) * (5.0 * m2() - 1.0) / (4.0 * m2() * Beta);
    let c2 = || -pow(Alpha, 3.0) * (m2() - 1.0) / (8.0 * m2() * sq(Beta));
    let w3_printed = || sq(Alpha) * (m2() - 5.0) / Beta;
    let w3 = || sq(Alpha) * (m2() - 5.0) / (4.0 * Beta);
    let c3 = || -pow(Alpha, 3.0) * (1.0 - m2()) / (8.0 * sq(Beta));
    let w4 = || -sq(Alpha) * (4.0 * m2() + 1.0) / (4.0 * m2() * Beta);
    let c4 = || -pow(Alpha, 3.0) / (8.0 * m2() * sq(Beta));
    let w5 = || -sq(Alpha) * (5.0 * m2() - 4.0) / (4.0 * Beta * (m2() - 1.0));
    let c5 = || -pow(Alpha, 3.0) * m2() / (8.0 * sq(Beta) * (m2() - 1.0));
    let w6 = || -sq(Alpha) * (4.0 * m2() - 5.0) / (4.0 * Beta * (m2() - 1.0));
    let c6 = || pow(Alpha, 3.0) / (8.0 * sq(Beta) * (m2() - 1.0));
    let w7 = || -sq(Alpha) * (m2() + 4.0) / (4.0 * Beta);
    let c7 = || -pow(Alpha, 3.0) * m2() / (8.0 * sq(Beta));

    let t_h = || f(Func::Tanh, (1.0 / 6.0) * sqrt(3.0 * sq(Alpha) / bg()) * xi());
    let t_c = || f(Func::Coth, (1.0 / 6.0) * sqrt(3.0 * sq(Alpha) / bg()) * xi());
    let t_t = || f(Func::Tan, (1.0 / 6.0) * sqrt(-3.0 * sq(Alpha) / bg()) * xi());
    let t_k = || f(Func::Cot, (1.0 / 6.0) * sqrt(-3.0 * sq(Alpha) / bg()) * xi());
    let squared_den = |t: Expr, sign: f64, lead: f64| {
        let den = 3.0 + sign * sq(t.clone());
        let printed = lead * 4.0 * Alpha * sq(t.clone()) / (3.0 * Beta * pow(den.clone(), 2.0));
        let corrected = lead * 4.0 * Alpha * sq(t) / (3.0 * Beta * den);
        (printed, corrected)
    };
    let squared_fix = |corrected: Expr, den: &'static str| Correction {
        kind: ErrataKind::Form,
        printed: den,
        corrected: "denominator to the first power",
        profile: Some(corrected),
        speed: None,
        conditions: None,
    };
    let (u8p, u8c) = squared_den(t_h(), 1.0, -1.0);
    let (u9p, u9c) = squared_den(t_c(), 1.0, -1.0);
    let (u10p, u10c) = squared_den(t_t(), -1.0, 1.0);
    let (u11p, u11c) = squared_den(t_k(), -1.0, 1.0);

    let arg12 = || Alpha / (2.0 * M * Beta) * sqrt(-Beta / Gamma) * xi();
    let arg14 = || Alpha / (2.0 * Gamma) * sqrt(-Gamma / Beta) * xi();
    let arg16 = || Alpha / (2.0 * M * Gamma) * sqrt(Gamma / Beta) * xi();
    let arg18 = || Alpha / (2.0 * Gamma) * sqrt(Gamma / (Beta * (1.0 - m2()))) * xi();
    let arg20 = || Alpha / (2.0 * Gamma) * sqrt(-Gamma / (Beta * (1.0 - m2()))) * xi();
    let arg22 = || Alpha / (2.0 * Gamma) * sqrt(Gamma / Beta) * xi();
    let speed_fix = || Correction {
        kind: ErrataKind::Parameter,
        printed: "ω = α²(m²-5)/β",
        corrected: "ω = α²(m²-5)/(4β)",
        profile: None,
        speed: Some(w3()),
        conditions: None,
    };

    let kink = |b: Builder| b.speed("", w1()).fix(C, num(0.0));
    let sub1 = |b: Builder| b.speed("", w1()).fix(C, c1());
    vec![
        entry(
            P,
            "u1",
            id(1),
            w() / (Eps * sqrt(d()) * f(Func::Cosh, sqrt(w() / Gamma) * xi()) + Alpha),
        )
        .fix(C, num(0.0))
        .when("α²+βω>0", Constraint::positive(d()))
        .when("ωγ>0", Constraint::positive(w() * Gamma))
        .build(),
        entry(
            P,
            "u2",
            id(2),
            w() / (Eps * sqrt(-d()) * f(Func::Sinh, sqrt(w() / Gamma) * xi()) + Alpha),
        )
        .fix(C, num(0.0))
        .when("α²+βω<0", Constraint::negative(d()))
        .when("ωγ>0", Constraint::positive(w() * Gamma))
        .build(),
        entry(
            P,
            "u3",
            FamilyId::branch(3, 'a'),
            w() / (Eps * sqrt(d()) * f(Func::Cos, sqrt(-w() / Gamma) * xi()) + Alpha),
        )
        .fix(C, num(0.0))
        .when("α²+βω>0", Constraint::positive(d()))
        .when("ωγ<0", Constraint::negative(w() * Gamma))
        .build(),
        entry(
            P,
            "u4",
            FamilyId::branch(3, 'b'),
            w() / (Eps * sqrt(d()) * f(Func::Sin, sqrt(-w() / Gamma) * xi()) + Alpha),
        )
        .fix(C, num(0.0))
        .when("α²+βω>0", Constraint::positive(d()))
        .when("ωγ<0", Constraint::negative(w() * Gamma))
        .build(),
        bg_neg(kink(entry(
            P,
            "u5",
            id(4),
            shell(Eps * f(Func::Tanh, 0.5 * sqrt(-sq(Alpha) / bg()) * xi())),
        )))
        .build(),
        bg_neg(kink(entry(
            P,
            "u6",
            id(5),
            shell(Eps * f(Func::Coth, 0.5 * sqrt(-sq(Alpha) / bg()) * xi())),
        )))
        .build(),
        entry(P, "u7", id(7), -2.0 * Alpha * Gamma / (sq(Alpha) * sq(xi()) + bg()))
            .speed("ω=0", num(0.0))
            .fix(C, num(0.0))
            .note("stationary solution")
            .build(),
        bg_pos(sub1(entry(P, "u8", id(23), u8p)))
            .correction(squared_fix(u8c, "(3 + tanh²)²"))
            .build(),
        bg_pos(sub1(entry(P, "u9", id(24), u9p)))
            .correction(squared_fix(u9c, "(3 + coth²)²"))
            .build(),
        bg_neg(sub1(entry(P, "u10", id(25), u10p)))
            .correction(squared_fix(u10c, "(3 - tan²)²"))
            .build(),
        bg_neg(sub1(entry(P, "u11", id(26), u11p)))
            .correction(squared_fix(u11c, "(3 - cot²)²"))
            .build(),
        bg_neg(
            entry(P, "u12", id(27), shell(Eps * sn(arg12(), M)))
                .speed("", w2())
                .fix(C, c2()),
        )
        .build(),
        bg_neg(
            entry(P, "u13", id(28), shell(Eps / (M * sn(arg12(), M))))
                .speed("", w2())
                .fix(C, c2()),
        )
        .build(),
        bg_neg(
            entry(P, "u14", id(29), shell(-Eps * M * sn(arg14(), M)))
                .speed("", w3_printed())
                .fix(C, c3()),
        )
        .correction(speed_fix())
        .build(),
        bg_neg(
            entry(P, "u15", id(30), shell(-Eps / sn(arg14(), M)))
                .speed("", w3_printed())
                .fix(C, c3()),
        )
        .correction(speed_fix())
        .build(),
        bg_pos(
            entry(P, "u16", id(31), shell(Eps * cn(arg16(), M)))
                .speed("", w4())
                .fix(C, c4()),
        )
        .build(),
        bg_pos(
            entry(P, "u17", id(32), shell(Eps * mc() * sn(arg16(), M) / dn(arg16(), M)))
                .speed("", w4())
                .fix(C, c4()),
        )
        .build(),
        bg_pos(
            entry(P, "u18", id(33), shell(Eps / mc() * dn(arg18(), M)))
                .speed("", w5())
                .fix(C, c5()),
        )
        .build(),
        bg_pos(
            entry(P, "u19", id(34), shell(Eps / dn(arg18(), M)))
                .speed("", w5())
                .fix(C, c5()),
        )
        .build(),
        bg_neg(
            entry(P, "u20", id(35), shell(Eps / cn(arg20(), M)))
                .speed("", w6())
                .fix(C, c6()),
        )
        .build(),
        bg_neg(
            entry(P, "u21", id(36), shell(-Eps * dn(arg20(), M) / (mc() * sn(arg20(), M))))
                .speed("", w6())
                .fix(C, c6()),
        )
        .build(),
        bg_pos(
            entry(P, "u22", id(37), shell(Eps * dn(arg22(), M)))
                .speed("", w7())
                .fix(C, c7()),
        )
        .build(),
        bg_pos(
            entry(P, "u23", id(38), shell(Eps * mc() / dn(arg22(), M)))
                .speed("", w7())
                .fix(C, c7()),
        )
        .build(),
    ]
}

/// Printed inventory of `pde`, in the printed order.
pub fn solution_table(pde: PdeId) -> &'static [SolutionEntry] {
    static TABLES: OnceLock<[Vec<SolutionEntry>; 3]> = OnceLock::new();
    let t = TABLES.get_or_init(|| [mbbm(), nls(), kdv()]);
    match pde {
        PdeId::Mbbm => &t[0],
        PdeId::Nls => &t[1],
        PdeId::KdvMkdv => &t[2],
    }
}

pub fn find_entry(pde: PdeId, name: &str) -> Result<&'static SolutionEntry> {
    let key = name.trim().to_ascii_lowercase();
    solution_table(pde)
        .iter()
        .find(|e| e.name == key)
        .ok_or_else(|| Error::UnknownSolution {
            pde: pde.to_string(),
            solution: name.to_string(),
        })
}
