use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, PI};

use super::{Condition, Constraint, FamilyId, ModulusRule, PoleRule, PoleSet, SolutionFamily};
use crate::expr::{cn, dn, frac, func, jac, num, pow, sn, sq, sqrt, wp, Env, Expr, Func, JacobiFn, Symbol::*};
use crate::special::{complete_k, JacobiRatio, Modulus, WeierstrassInvariants, WeierstrassLattice};

fn k_of(m: f64) -> f64 {
    Modulus::new(m).and_then(complete_k).unwrap_or(f64::NAN)
}

fn delta() -> Expr {
    sq(C3) - 4.0 * C2 * C4
}

fn small_delta() -> Expr {
    sq(C1) - 4.0 * C0 * C2
}

fn m2() -> Expr {
    sq(M)
}

fn m_comp() -> Expr {
    sqrt(1.0 - sq(M))
}

fn printed(label: &str, c: Constraint) -> Condition {
    Condition::printed(label, c)
}

fn inferred(label: &str, c: Constraint) -> Condition {
    Condition::inferred(label, c)
}

struct Builder {
    id: FamilyId,
    case_id: u8,
    form: Expr,
    conditions: Vec<Condition>,
    modulus: ModulusRule,
    epsilon: bool,
    rate: Option<Expr>,
    poles: PoleRule,
    pole_text: &'static str,
}

fn no_poles(_: &Env) -> PoleSet {
    PoleSet::none()
}

fn family(id: FamilyId, case_id: u8, form: Expr) -> Builder {
    let base = match case_id {
        1 => vec![
            printed("c0=0", Constraint::assign(C0, 0.0)),
            printed("c1=0", Constraint::assign(C1, 0.0)),
        ],
        2 => vec![
            printed("c3=0", Constraint::assign(C3, 0.0)),
            printed("c4=0", Constraint::assign(C4, 0.0)),
        ],
        3 => vec![
            printed("c1=0", Constraint::assign(C1, 0.0)),
            printed("c3=0", Constraint::assign(C3, 0.0)),
        ],
        4 => vec![
            printed("c2=0", Constraint::assign(C2, 0.0)),
            printed("c4=0", Constraint::assign(C4, 0.0)),
        ],
        _ => vec![
            printed("c0=0", Constraint::assign(C0, 0.0)),
            inferred("c3≠0", Constraint::nonzero(C3)),
        ],
    };
    let epsilon = form.contains_symbol(Eps);
    let modulus = if form.contains_symbol(M) {
        ModulusRule::Free
    } else {
        ModulusRule::None
    };
    Builder {
        id,
        case_id,
        form,
        conditions: base,
        modulus,
        epsilon,
        rate: None,
        poles: no_poles,
        pole_text: "none",
    }
}

impl Builder {
    fn when(mut self, label: &str, c: Constraint) -> Self {
        self.conditions.push(printed(label, c));
        self
    }

    fn inferred(mut self, label: &str, c: Constraint) -> Self {
        self.conditions.push(inferred(label, c));
        self
    }

    fn rate(mut self, r: Expr) -> Self {
        self.rate = Some(r);
        self
    }

    fn poles(mut self, rule: PoleRule, text: &'static str) -> Self {
        self.poles = rule;
        self.pole_text = text;
        self
    }

    fn fixed_modulus(mut self, m: f64) -> Self {
        self.modulus = ModulusRule::Fixed(m);
        self
    }

    fn build(self) -> SolutionFamily {
        SolutionFamily {
            id: self.id,
            case_id: self.case_id,
            form: self.form,
            conditions: self.conditions,
            modulus: self.modulus,
            epsilon: self.epsilon,
            rate: self.rate,
            poles: self.poles,
            pole_text: self.pole_text,
        }
    }
}

fn get(env: &Env, e: &Expr) -> f64 {
    e.eval(env)
}

// Case 1 rates and denominators.

fn rate_sqrt_c2() -> Expr {
    sqrt(C2)
}

fn rate_sqrt_neg_c2() -> Expr {
    sqrt(-C2)
}

fn f1_poles(env: &Env) -> PoleSet {
    // eps sqrt(Δ) cosh(s ξ) = c3
    let s = get(env, &rate_sqrt_c2());
    let r = env.get(C3) / (env.get(Eps) * get(env, &sqrt(delta())));
    if r >= 1.0 {
        let x = r.acosh() / s;
        PoleSet::point(x).with_point(-x)
    } else {
        PoleSet::none()
    }
}

fn f2_poles(env: &Env) -> PoleSet {
    let s = get(env, &rate_sqrt_c2());
    let r = env.get(C3) / (env.get(Eps) * get(env, &sqrt(-delta())));
    PoleSet::point(r.asinh() / s)
}

fn f3a_poles(env: &Env) -> PoleSet {
    let s = get(env, &rate_sqrt_neg_c2());
    let r = env.get(C3) / (env.get(Eps) * get(env, &sqrt(delta())));
    if r.abs() <= 1.0 {
        let a = r.acos();
        PoleSet::none()
            .with_argument_lattice(a, 2.0 * PI, s)
            .with_argument_lattice(-a, 2.0 * PI, s)
    } else {
        PoleSet::none()
    }
}

fn f3b_poles(env: &Env) -> PoleSet {
    let s = get(env, &rate_sqrt_neg_c2());
    let r = env.get(C3) / (env.get(Eps) * get(env, &sqrt(delta())));
    if r.abs() <= 1.0 {
        let a = r.asin();
        PoleSet::none()
            .with_argument_lattice(a, 2.0 * PI, s)
            .with_argument_lattice(PI - a, 2.0 * PI, s)
    } else {
        PoleSet::none()
    }
}

fn origin(_: &Env) -> PoleSet {
    PoleSet::point(0.0)
}

fn f7_poles(env: &Env) -> PoleSet {
    let (c3, c4) = (env.get(C3), env.get(C4));
    if c4 > 0.0 {
        let x = 2.0 * c4.sqrt() / c3.abs();
        PoleSet::point(x).with_point(-x)
    } else if c4 == 0.0 {
        PoleSet::point(0.0)
    } else {
        PoleSet::none()
    }
}

// Case 3.

fn f16_rate() -> Expr {
    sqrt(C2 / 2.0)
}

fn f16a_poles(env: &Env) -> PoleSet {
    PoleSet::none().with_argument_lattice(FRAC_PI_2, PI, get(env, &f16_rate()))
}

fn f16b_poles(env: &Env) -> PoleSet {
    PoleSet::none().with_argument_lattice(0.0, PI, get(env, &f16_rate()))
}

fn f20_rate() -> Expr {
    pow(-4.0 * C0 * C4, frac(1.0, 4.0))
}

fn f21_rate() -> Expr {
    2.0 * pow(C0 * C4, frac(1.0, 4.0))
}

fn f20_poles(env: &Env) -> PoleSet {
    let k = k_of(FRAC_1_SQRT_2);
    PoleSet::none().with_argument_lattice(0.0, 2.0 * k, get(env, &f20_rate()))
}

fn f21_poles(env: &Env) -> PoleSet {
    let k = k_of(FRAC_1_SQRT_2);
    PoleSet::none().with_argument_lattice(0.0, 4.0 * k, get(env, &f21_rate()))
}

// Case 4.

fn f22_rate() -> Expr {
    sqrt(C3) / 2.0
}

fn f22_poles(env: &Env) -> PoleSet {
    let (c0, c1, c3) = (env.get(C0), env.get(C1), env.get(C3));
    let rate = c3.sqrt() / 2.0;
    let period = WeierstrassInvariants::new(-4.0 * c1 / c3, -4.0 * c0 / c3)
        .ok()
        .and_then(|inv| WeierstrassLattice::new(inv).real_period());
    match period {
        Some(p) => PoleSet::none().with_argument_lattice(0.0, p, rate),
        None => PoleSet::point(0.0),
    }
}

// Case 5.

fn hyperbolic_rate_12() -> Expr {
    sqrt(-C2 / 12.0)
}

fn circular_rate_12() -> Expr {
    sqrt(C2 / 12.0)
}

fn f25_poles(env: &Env) -> PoleSet {
    // tan^2 = 3 gives poles; the tan poles themselves are removable.
    let s = get(env, &circular_rate_12());
    PoleSet::none()
        .with_argument_lattice(FRAC_PI_3, PI, s)
        .with_argument_lattice(2.0 * FRAC_PI_3, PI, s)
        .with_argument_lattice(FRAC_PI_2, PI, s)
}

fn f26_poles(env: &Env) -> PoleSet {
    let s = get(env, &circular_rate_12());
    PoleSet::none()
        .with_argument_lattice(FRAC_PI_6, PI, s)
        .with_argument_lattice(5.0 * FRAC_PI_6, PI, s)
        .with_argument_lattice(0.0, PI, s)
}

fn rate_27() -> Expr {
    C3 / (4.0 * M * sqrt(C4))
}

fn rate_29() -> Expr {
    C3 / (4.0 * sqrt(C4))
}

fn rate_31() -> Expr {
    -C3 / (4.0 * M * sqrt(-C4))
}

fn rate_33() -> Expr {
    C3 / (4.0 * sqrt(C4 * (m2() - 1.0)))
}

fn rate_35() -> Expr {
    C3 / (4.0 * sqrt(C4 * (1.0 - m2())))
}

fn rate_37() -> Expr {
    -C3 / (4.0 * sqrt(-C4))
}

fn sn_zeros(env: &Env, rate: Expr) -> PoleSet {
    let k = k_of(env.get(M));
    PoleSet::none().with_argument_lattice(0.0, 2.0 * k, get(env, &rate))
}

fn cn_zeros(env: &Env, rate: Expr) -> PoleSet {
    let k = k_of(env.get(M));
    PoleSet::none().with_argument_lattice(k, 2.0 * k, get(env, &rate))
}

fn f28_poles(env: &Env) -> PoleSet {
    sn_zeros(env, rate_27())
}

fn f30_poles(env: &Env) -> PoleSet {
    sn_zeros(env, rate_29())
}

fn f35_poles(env: &Env) -> PoleSet {
    cn_zeros(env, rate_35())
}

/// Poles of the corrected F36 form, which has `sn` in the denominator.
pub(super) fn f36_corrected_poles(env: &Env) -> PoleSet {
    sn_zeros(env, rate_35())
}

/// `-c3/(4 c4) [1 + inner]`
fn case5_shell(inner: Expr) -> Expr {
    -C3 / (4.0 * C4) * (1.0 + inner)
}

/// Denominator argument of F36 as printed; shared with the errata candidate.
pub(super) fn f36_argument() -> Expr {
    rate_35() * Xi
}

pub(super) fn all() -> Vec<SolutionFamily> {
    let id = FamilyId::new;
    let br = FamilyId::branch;
    let tanh = |e: Expr| func(Func::Tanh, e);
    let coth = |e: Expr| func(Func::Coth, e);
    let tan = |e: Expr| func(Func::Tan, e);
    let cot = |e: Expr| func(Func::Cot, e);
    let sqrt2_2 = || num(FRAC_1_SQRT_2);

    let mut v = Vec::with_capacity(41);

    // Case 1: c0 = c1 = 0.
    v.push(
        family(
            id(1),
            1,
            2.0 * C2 / (Eps * sqrt(delta()) * func(Func::Cosh, rate_sqrt_c2() * Xi) - C3),
        )
        .when("Δ>0", Constraint::positive(delta()))
        .when("c2>0", Constraint::positive(C2))
        .rate(rate_sqrt_c2())
        .poles(f1_poles, "ε√Δ cosh(√c2 ξ) = c3")
        .build(),
    );
    v.push(
        family(
            id(2),
            1,
            2.0 * C2 / (Eps * sqrt(-delta()) * func(Func::Sinh, rate_sqrt_c2() * Xi) - C3),
        )
        .when("Δ<0", Constraint::negative(delta()))
        .when("c2>0", Constraint::positive(C2))
        .rate(rate_sqrt_c2())
        .poles(f2_poles, "ε√(-Δ) sinh(√c2 ξ) = c3")
        .build(),
    );
    v.push(
        family(
            br(3, 'a'),
            1,
            2.0 * C2 / (Eps * sqrt(delta()) * func(Func::Cos, rate_sqrt_neg_c2() * Xi) - C3),
        )
        .when("Δ>0", Constraint::positive(delta()))
        .when("c2<0", Constraint::negative(C2))
        .rate(rate_sqrt_neg_c2())
        .poles(f3a_poles, "ε√Δ cos(√(-c2) ξ) = c3")
        .build(),
    );
    v.push(
        family(
            br(3, 'b'),
            1,
            2.0 * C2 / (Eps * sqrt(delta()) * func(Func::Sin, rate_sqrt_neg_c2() * Xi) - C3),
        )
        .when("Δ>0", Constraint::positive(delta()))
        .when("c2<0", Constraint::negative(C2))
        .rate(rate_sqrt_neg_c2())
        .poles(f3b_poles, "ε√Δ sin(√(-c2) ξ) = c3")
        .build(),
    );
    v.push(
        family(id(4), 1, -C2 / C3 * (1.0 + Eps * tanh(sqrt(C2) / 2.0 * Xi)))
            .when("Δ=0", Constraint::assign(C4, sq(C3) / (4.0 * C2)))
            .when("c2>0", Constraint::positive(C2))
            .inferred("c3≠0", Constraint::nonzero(C3))
            .rate(sqrt(C2) / 2.0)
            .build(),
    );
    v.push(
        family(id(5), 1, -C2 / C3 * (1.0 + Eps * coth(sqrt(C2) / 2.0 * Xi)))
            .when("Δ=0", Constraint::assign(C4, sq(C3) / (4.0 * C2)))
            .when("c2>0", Constraint::positive(C2))
            .inferred("c3≠0", Constraint::nonzero(C3))
            .rate(sqrt(C2) / 2.0)
            .poles(origin, "ξ = 0")
            .build(),
    );
    v.push(
        family(id(6), 1, Eps / (sqrt(C4) * Xi))
            .when("c2=0", Constraint::assign(C2, 0.0))
            .when("c3=0", Constraint::assign(C3, 0.0))
            .when("c4>0", Constraint::positive(C4))
            .poles(origin, "ξ = 0")
            .build(),
    );
    v.push(
        family(id(7), 1, 4.0 * C3 / (sq(C3) * sq(Xi) - 4.0 * C4))
            .when("c2=0", Constraint::assign(C2, 0.0))
            .inferred("c3≠0", Constraint::nonzero(C3))
            .poles(f7_poles, "c3² ξ² = 4 c4")
            .build(),
    );

    // Case 2: c3 = c4 = 0.
    let shift = || -C1 / (2.0 * C2);
    v.push(
        family(
            id(8),
            2,
            shift() + Eps * sqrt(small_delta()) / (2.0 * C2) * func(Func::Cosh, rate_sqrt_c2() * Xi),
        )
        .when("δ>0", Constraint::positive(small_delta()))
        .when("c2>0", Constraint::positive(C2))
        .rate(rate_sqrt_c2())
        .build(),
    );
    v.push(
        family(
            id(9),
            2,
            shift() + Eps * sqrt(-small_delta()) / (2.0 * C2) * func(Func::Sinh, rate_sqrt_c2() * Xi),
        )
        .when("δ<0", Constraint::negative(small_delta()))
        .when("c2>0", Constraint::positive(C2))
        .rate(rate_sqrt_c2())
        .build(),
    );
    v.push(
        family(
            br(10, 'a'),
            2,
            shift() + Eps * sqrt(small_delta()) / (2.0 * C2) * func(Func::Cos, rate_sqrt_neg_c2() * Xi),
        )
        .when("δ>0", Constraint::positive(small_delta()))
        .when("c2<0", Constraint::negative(C2))
        .rate(rate_sqrt_neg_c2())
        .build(),
    );
    v.push(
        family(
            br(10, 'b'),
            2,
            shift() + Eps * sqrt(small_delta()) / (2.0 * C2) * func(Func::Sin, rate_sqrt_neg_c2() * Xi),
        )
        .when("δ>0", Constraint::positive(small_delta()))
        .when("c2<0", Constraint::negative(C2))
        .rate(rate_sqrt_neg_c2())
        .build(),
    );
    v.push(
        family(id(11), 2, shift() + func(Func::Exp, Eps * sqrt(C2) * Xi))
            .when("δ=0", Constraint::assign(C0, sq(C1) / (4.0 * C2)))
            .when("c2>0", Constraint::positive(C2))
            .rate(rate_sqrt_c2())
            .build(),
    );
    v.push(
        family(id(12), 2, Eps * sqrt(C0) * Xi)
            .when("c1=0", Constraint::assign(C1, 0.0))
            .when("c2=0", Constraint::assign(C2, 0.0))
            .inferred("c0>0", Constraint::positive(C0))
            .build(),
    );
    v.push(
        family(id(13), 2, -C0 / C1 + C1 / 4.0 * sq(Xi))
            .when("c2=0", Constraint::assign(C2, 0.0))
            .inferred("c1≠0", Constraint::nonzero(C1))
            .build(),
    );

    // Case 3: c1 = c3 = 0.
    let delta1_zero = || Constraint::assign(C0, sq(C2) / (4.0 * C4));
    let hyp = || sqrt(-C2 / 2.0);
    v.push(
        family(id(14), 3, Eps * sqrt(-C2 / (2.0 * C4)) * tanh(hyp() * Xi))
            .when("Δ1=0", delta1_zero())
            .when("c2<0", Constraint::negative(C2))
            .when("c4>0", Constraint::positive(C4))
            .rate(hyp())
            .build(),
    );
    v.push(
        family(id(15), 3, Eps * sqrt(-C2 / (2.0 * C4)) * coth(hyp() * Xi))
            .when("Δ1=0", delta1_zero())
            .when("c2<0", Constraint::negative(C2))
            .when("c4>0", Constraint::positive(C4))
            .rate(hyp())
            .poles(origin, "ξ = 0")
            .build(),
    );
    v.push(
        family(br(16, 'a'), 3, Eps * sqrt(C2 / (2.0 * C4)) * tan(f16_rate() * Xi))
            .when("Δ1=0", delta1_zero())
            .when("c2>0", Constraint::positive(C2))
            .when("c4>0", Constraint::positive(C4))
            .rate(f16_rate())
            .poles(f16a_poles, "√(c2/2) ξ = π/2 + jπ")
            .build(),
    );
    v.push(
        family(br(16, 'b'), 3, Eps * sqrt(C2 / (2.0 * C4)) * cot(f16_rate() * Xi))
            .when("Δ1=0", delta1_zero())
            .when("c2>0", Constraint::positive(C2))
            .when("c4>0", Constraint::positive(C4))
            .rate(f16_rate())
            .poles(f16b_poles, "√(c2/2) ξ = jπ")
            .build(),
    );
    v.push(
        family(
            id(17),
            3,
            sqrt(-C2 * m2() / (C4 * (m2() + 1.0))) * sn(sqrt(-C2 / (m2() + 1.0)) * Xi, M),
        )
        .when(
            "c0=c2²m²/(c4(m²+1)²)",
            Constraint::assign(C0, sq(C2) * m2() / (C4 * sq(m2() + 1.0))),
        )
        .when("c2<0", Constraint::negative(C2))
        .when("c4>0", Constraint::positive(C4))
        .rate(sqrt(-C2 / (m2() + 1.0)))
        .build(),
    );
    v.push(
        family(
            id(18),
            3,
            sqrt(-C2 * m2() / (C4 * (2.0 * m2() - 1.0))) * cn(sqrt(C2 / (2.0 * m2() - 1.0)) * Xi, M),
        )
        .when(
            "c0=c2²m²(m²-1)/(c4(2m²-1)²)",
            Constraint::assign(C0, sq(C2) * m2() * (m2() - 1.0) / (C4 * sq(2.0 * m2() - 1.0))),
        )
        .when("c2>0", Constraint::positive(C2))
        .when("c4<0", Constraint::negative(C4))
        .inferred("m²>1/2", Constraint::positive(2.0 * m2() - 1.0))
        .rate(sqrt(C2 / (2.0 * m2() - 1.0)))
        .build(),
    );
    v.push(
        family(
            id(19),
            3,
            sqrt(-C2 / (C4 * (2.0 - m2()))) * dn(sqrt(C2 / (2.0 - m2())) * Xi, M),
        )
        .when(
            "c0=c2²(1-m²)/(c4(2-m²)²)",
            Constraint::assign(C0, sq(C2) * (1.0 - m2()) / (C4 * sq(2.0 - m2()))),
        )
        .when("c2>0", Constraint::positive(C2))
        .when("c4<0", Constraint::negative(C4))
        .rate(sqrt(C2 / (2.0 - m2())))
        .build(),
    );
    v.push(
        family(
            id(20),
            3,
            Eps * pow(-4.0 * C0 / C4, frac(1.0, 4.0))
                * jac(JacobiFn::Ratio(JacobiRatio::Ds), f20_rate() * Xi, sqrt2_2()),
        )
        .when("c2=0", Constraint::assign(C2, 0.0))
        .when("c0c4<0", Constraint::negative(C0 * C4))
        .fixed_modulus(FRAC_1_SQRT_2)
        .rate(f20_rate())
        .poles(f20_poles, "(-4c0c4)^(1/4) ξ = 2jK(√2/2)")
        .build(),
    );
    v.push(
        family(
            id(21),
            3,
            Eps * pow(C0 / C4, frac(1.0, 4.0)) * jac(JacobiFn::NsPlusCs, f21_rate() * Xi, sqrt2_2()),
        )
        .when("c2=0", Constraint::assign(C2, 0.0))
        .when("c0c4>0", Constraint::positive(C0 * C4))
        .fixed_modulus(FRAC_1_SQRT_2)
        .rate(f21_rate())
        .poles(f21_poles, "2(c0c4)^(1/4) ξ = 4jK(√2/2)")
        .build(),
    );

    // Case 4: c2 = c4 = 0.
    v.push(
        family(id(22), 4, wp(f22_rate() * Xi, -4.0 * C1 / C3, -4.0 * C0 / C3))
            .when("c3>0", Constraint::positive(C3))
            .rate(f22_rate())
            .poles(f22_poles, "√c3 ξ/2 on the period lattice of ℘")
            .build(),
    );

    // Case 5: c0 = 0.
    let c1_23 = || Constraint::assign(C1, 8.0 * sq(C2) / (27.0 * C3));
    let c4_23 = || Constraint::assign(C4, sq(C3) / (4.0 * C2));
    let t_h = || tanh(hyperbolic_rate_12() * Xi);
    let t_c = || coth(hyperbolic_rate_12() * Xi);
    v.push(
        family(id(23), 5, -8.0 * C2 * sq(t_h()) / (3.0 * C3 * (3.0 + sq(t_h()))))
            .when("c2<0", Constraint::negative(C2))
            .when("c1=8c2²/(27c3)", c1_23())
            .when("c4=c3²/(4c2)", c4_23())
            .rate(hyperbolic_rate_12())
            .build(),
    );
    v.push(
        family(id(24), 5, -8.0 * C2 * sq(t_c()) / (3.0 * C3 * (3.0 + sq(t_c()))))
            .when("c2<0", Constraint::negative(C2))
            .when("c1=8c2²/(27c3)", c1_23())
            .when("c4=c3²/(4c2)", c4_23())
            .rate(hyperbolic_rate_12())
            .poles(origin, "ξ = 0 (removable)")
            .build(),
    );
    let t_t = || tan(circular_rate_12() * Xi);
    let t_k = || cot(circular_rate_12() * Xi);
    v.push(
        family(id(25), 5, 8.0 * C2 * sq(t_t()) / (3.0 * C3 * (3.0 - sq(t_t()))))
            .when("c2>0", Constraint::positive(C2))
            .when("c1=8c2²/(27c3)", c1_23())
            .when("c4=c3²/(4c2)", c4_23())
            .rate(circular_rate_12())
            .poles(f25_poles, "tan² = 3; tan poles removable")
            .build(),
    );
    v.push(
        family(id(26), 5, 8.0 * C2 * sq(t_k()) / (3.0 * C3 * (3.0 - sq(t_k()))))
            .when("c2>0", Constraint::positive(C2))
            .when("c1=8c2²/(27c3)", c1_23())
            .when("c4=c3²/(4c2)", c4_23())
            .rate(circular_rate_12())
            .poles(f26_poles, "cot² = 3; cot poles removable")
            .build(),
    );

    let c1_27 = || Constraint::assign(C1, pow(C3, 3.0) * (m2() - 1.0) / (32.0 * m2() * sq(C4)));
    let c2_27 = || Constraint::assign(C2, sq(C3) * (5.0 * m2() - 1.0) / (16.0 * m2() * C4));
    v.push(
        family(id(27), 5, case5_shell(Eps * sn(rate_27() * Xi, M)))
            .when("c4>0", Constraint::positive(C4))
            .when("c1=c3³(m²-1)/(32m²c4²)", c1_27())
            .when("c2=c3²(5m²-1)/(16m²c4)", c2_27())
            .rate(rate_27())
            .build(),
    );
    v.push(
        family(id(28), 5, case5_shell(Eps / (M * sn(rate_27() * Xi, M))))
            .when("c4>0", Constraint::positive(C4))
            .when("c1=c3³(m²-1)/(32m²c4²)", c1_27())
            .when("c2=c3²(5m²-1)/(16m²c4)", c2_27())
            .rate(rate_27())
            .poles(f28_poles, "sn zeros: rate ξ = 2jK")
            .build(),
    );

    let c1_29 = || Constraint::assign(C1, pow(C3, 3.0) * (1.0 - m2()) / (32.0 * sq(C4)));
    let c2_29 = || Constraint::assign(C2, sq(C3) * (5.0 - m2()) / (16.0 * C4));
    v.push(
        family(id(29), 5, case5_shell(Eps * M * sn(rate_29() * Xi, M)))
            .when("c4>0", Constraint::positive(C4))
            .when("c1=c3³(1-m²)/(32c4²)", c1_29())
            .when("c2=c3²(5-m²)/(16c4)", c2_29())
            .rate(rate_29())
            .build(),
    );
    v.push(
        family(id(30), 5, case5_shell(Eps / sn(rate_29() * Xi, M)))
            .when("c4>0", Constraint::positive(C4))
            .when("c1=c3³(1-m²)/(32c4²)", c1_29())
            .when("c2=c3²(5-m²)/(16c4)", c2_29())
            .rate(rate_29())
            .poles(f30_poles, "sn zeros: rate ξ = 2jK")
            .build(),
    );

    let c1_31 = || Constraint::assign(C1, pow(C3, 3.0) / (32.0 * m2() * sq(C4)));
    let c2_31 = || Constraint::assign(C2, sq(C3) * (4.0 * m2() + 1.0) / (16.0 * m2() * C4));
    v.push(
        family(id(31), 5, case5_shell(Eps * cn(rate_31() * Xi, M)))
            .when("c4<0", Constraint::negative(C4))
            .when("c1=c3³/(32m²c4²)", c1_31())
            .when("c2=c3²(4m²+1)/(16m²c4)", c2_31())
            .rate(rate_31())
            .build(),
    );
    v.push(
        family(
            id(32),
            5,
            case5_shell(Eps * m_comp() * sn(rate_31() * Xi, M) / dn(rate_31() * Xi, M)),
        )
        .when("c4<0", Constraint::negative(C4))
        .when("c1=c3³/(32m²c4²)", c1_31())
        .when("c2=c3²(4m²+1)/(16m²c4)", c2_31())
        .rate(rate_31())
        .build(),
    );

    let c1_33 = || Constraint::assign(C1, pow(C3, 3.0) * m2() / (32.0 * sq(C4) * (m2() - 1.0)));
    let c2_33 = || Constraint::assign(C2, sq(C3) * (5.0 * m2() - 4.0) / (16.0 * C4 * (m2() - 1.0)));
    v.push(
        family(id(33), 5, case5_shell(Eps / m_comp() * dn(rate_33() * Xi, M)))
            .when("c4<0", Constraint::negative(C4))
            .when("c1=c3³m²/(32c4²(m²-1))", c1_33())
            .when("c2=c3²(5m²-4)/(16c4(m²-1))", c2_33())
            .rate(rate_33())
            .build(),
    );
    v.push(
        family(id(34), 5, case5_shell(Eps / dn(rate_33() * Xi, M)))
            .when("c4<0", Constraint::negative(C4))
            .when("c1=c3³m²/(32c4²(m²-1))", c1_33())
            .when("c2=c3²(5m²-4)/(16c4(m²-1))", c2_33())
            .rate(rate_33())
            .build(),
    );

    let c1_35 = || Constraint::assign(C1, pow(C3, 3.0) / (32.0 * sq(C4) * (1.0 - m2())));
    let c2_35 = || Constraint::assign(C2, sq(C3) * (4.0 * m2() - 5.0) / (16.0 * C4 * (m2() - 1.0)));
    v.push(
        family(id(35), 5, case5_shell(Eps / cn(f36_argument(), M)))
            .when("c4>0", Constraint::positive(C4))
            .when("c1=c3³/(32c4²(1-m²))", c1_35())
            .when("c2=c3²(4m²-5)/(16c4(m²-1))", c2_35())
            .rate(rate_35())
            .poles(f35_poles, "cn zeros: rate ξ = K + 2jK")
            .build(),
    );
    v.push(
        family(
            id(36),
            5,
            case5_shell(Eps * dn(f36_argument(), M) / (m_comp() * cn(f36_argument(), M))),
        )
        .when("c4>0", Constraint::positive(C4))
        .when("c1=c3³/(32c4²(1-m²))", c1_35())
        .when("c2=c3²(4m²-5)/(16c4(m²-1))", c2_35())
        .rate(rate_35())
        .poles(f35_poles, "cn zeros: rate ξ = K + 2jK")
        .build(),
    );

    let c1_37 = || Constraint::assign(C1, pow(C3, 3.0) * m2() / (32.0 * sq(C4)));
    let c2_37 = || Constraint::assign(C2, sq(C3) * (m2() + 4.0) / (16.0 * C4));
    v.push(
        family(id(37), 5, case5_shell(Eps * dn(rate_37() * Xi, M)))
            .when("c4<0", Constraint::negative(C4))
            .when("c1=c3³m²/(32c4²)", c1_37())
            .when("c2=c3²(m²+4)/(16c4)", c2_37())
            .rate(rate_37())
            .build(),
    );
    v.push(
        family(id(38), 5, case5_shell(Eps * m_comp() / dn(rate_37() * Xi, M)))
            .when("c4<0", Constraint::negative(C4))
            .when("c1=c3³m²/(32c4²)", c1_37())
            .when("c2=c3²(m²+4)/(16c4)", c2_37())
            .rate(rate_37())
            .build(),
    );

    v
}
