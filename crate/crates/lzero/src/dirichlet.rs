//! Dirichlet L-functions: analytic continuation via the Hurwitz-zeta
//! decomposition, the completed functions Lambda and xi, and the polar
//! split xi = A e^{i theta} that the zero equation is built from.
//!
//! Only primitive characters are evaluated directly; a non-primitive input
//! is silently reduced to the primitive character that induces it (same
//! zeros in the strip). Callers that want to surface the reduction check
//! `is_primitive` themselves.

use crate::characters::{conductor, gauss_sum, is_primitive, DirichletCharacter};
use crate::error::{Error, Result};
use crate::kernel::{hurwitz_zeta, log_gamma, ComplexValue, PrecisionContext};
use rug::float::Constant;
use rug::{Float, Rational};

/// L(z, chi) together with its completed form and polar decomposition.
#[derive(Clone, Debug)]
pub struct DirichletLValue {
    /// L(z, chi)
    pub l: ComplexValue,
    /// xi(z, chi) = i^{a/2} k^{1/4} G(chi)^{-1/2} (k/pi)^{(z+a)/2}
    /// Gamma((z+a)/2) L(z, chi)
    pub xi: ComplexValue,
    /// A(x, y, chi) = |xi| computed from its factors
    pub a_modulus: Float,
    /// theta(x, y, chi), with arg Gamma on the Stirling branch and arg L
    /// principal; equals arg xi only mod 2 pi
    pub theta_phase: Float,
}

fn reduce<'a>(chi: &'a DirichletCharacter, owned: &'a mut Option<DirichletCharacter>) -> &'a DirichletCharacter {
    if is_primitive(chi) {
        chi
    } else {
        owned.insert(conductor(chi).1)
    }
}

/// psi(p/q) for 0 < p < q by the finite cotangent-log-sine closed form.
fn digamma_rational(p: u64, q: u64, ctx: &PrecisionContext) -> Float {
    let g = crate::characters::gcd_u64(p, q);
    let (p, q) = (p / g, q / g);
    let prec = ctx.prec();
    let pi = ctx.pi();
    let mut acc = -ctx.real(Constant::Euler);
    acc -= ctx.real(2 * q).ln();
    let ang = (pi.clone() * p) / q;
    let (s, c) = ang.sin_cos(Float::new(prec));
    acc -= pi.clone() / 2u32 * (c / s);
    for j in 1..=(q - 1) / 2 {
        let cosine = ((pi.clone() * 2u32 * j) * p / q).cos();
        let logsine = ((pi.clone() * j) / q).sin().ln();
        acc += 2u32 * (cosine * logsine);
    }
    acc
}

/// L(1, chi) for non-principal chi, where the per-term Hurwitz poles cancel:
/// L(1, chi) = -(1/k) sum_m chi(m) psi(m/k).
fn l_at_one(chi: &DirichletCharacter, ctx: &PrecisionContext) -> ComplexValue {
    let k = chi.modulus();
    let mut acc = ComplexValue::zero(ctx.prec());
    for m in 1..k {
        if chi.rotation(m).is_some() {
            let psi = digamma_rational(m, k, ctx);
            acc = &acc + &chi.value(m, ctx).scale(&psi);
        }
    }
    let scale = -ctx.real(k).recip();
    acc.scale(&scale)
}

/// L(z, chi) anywhere in the plane, via
/// L(z, chi) = k^{-z} sum_{m=1}^{k} chi(m) zeta(z, m/k).
pub fn l_value(z: &ComplexValue, chi: &DirichletCharacter, ctx: &PrecisionContext) -> Result<ComplexValue> {
    let mut owned = None;
    let chi = reduce(chi, &mut owned);
    let k = chi.modulus();
    if z.im.is_zero() && z.re == 1u32 {
        if chi.is_principal() {
            return Err(Error::LPole);
        }
        return Ok(l_at_one(chi, ctx));
    }
    let mut acc = ComplexValue::zero(ctx.prec());
    for m in 1..=k {
        if chi.rotation(m).is_some() {
            let q = ctx.rational_to_real(&Rational::from((m, k)));
            let h = hurwitz_zeta(z, &q, ctx)?;
            acc = &acc + &(&chi.value(m, ctx) * &h);
        }
    }
    let kpow = ComplexValue::pow_real_base(&ctx.real(k), &-z);
    Ok(&kpow * &acc)
}

/// xi(z, chi) with its polar decomposition.
pub fn xi_value(z: &ComplexValue, chi: &DirichletCharacter, ctx: &PrecisionContext) -> Result<DirichletLValue> {
    let mut owned = None;
    let chi = reduce(chi, &mut owned);
    let k = chi.modulus();
    let a = chi.parity();
    let l = l_value(z, chi, ctx)?;

    let w = ComplexValue::new(
        (z.re.clone() + u32::from(a)) / 2u32,
        z.im.clone() / 2u32,
    );
    let lg = log_gamma(&w, ctx)?;
    let gamma_val = lg.exp();

    let g = gauss_sum(chi, ctx);
    let kf = ctx.real(k);
    let pref = match a {
        0 => ctx.complex(1, 0),
        _ => {
            // i^{1/2} = e^{i pi / 4}
            let (s, c) = (ctx.pi() / 4u32).sin_cos(Float::new(ctx.prec()));
            ComplexValue::new(c, s)
        }
    };
    let kpi = kf.clone() / ctx.pi();
    let kpipow = ComplexValue::pow_real_base(&kpi, &w);
    let lambda = &(&kpipow * &gamma_val) * &l;
    let quarter_root = kf.clone().root(4);
    let xi = &(&pref.scale(&quarter_root) * &g.value.sqrt().recip()) * &lambda;

    let a_modulus = kpipow.abs() * lg.re.clone().exp() * l.abs();
    let ln_pi_over_k = (ctx.pi() / kf).ln();
    let theta_phase = lg.im.clone() - z.im.clone() / 2u32 * ln_pi_over_k
        - g.argument.clone() / 2u32
        + l.arg()
        + ctx.pi() * u32::from(a) / 4u32;

    Ok(DirichletLValue {
        l,
        xi,
        a_modulus,
        theta_phase,
    })
}

/// arg L(1/2 + delta + i y, chi), principal branch at the point. This is the
/// delta-regularized phase term; the delta -> 0+ schedule belongs to callers.
pub fn arg_l_on_line(y: &Float, delta: &Float, chi: &DirichletCharacter, ctx: &PrecisionContext) -> Result<Float> {
    let mut re = ctx.real(delta);
    re += 0.5f64;
    let z = ComplexValue::new(re, ctx.real(y));
    let l = l_value(&z, chi, ctx)?;
    // under three decades above the working noise floor the phase is garbage
    if l.abs() < ctx.working_eps() * 1000u32 {
        return Err(Error::ZeroOfL {
            delta: crate::kernel::format_real(delta, 6),
        });
    }
    Ok(l.arg())
}

/// vartheta_{k,a}(y) = Im log Gamma(1/4 + a/2 + i y/2) - (y/2) log(pi/k),
/// the generalized Riemann-Siegel theta on the Stirling branch.
pub fn vartheta_ka(y: &Float, k: u64, a: u8, ctx: &PrecisionContext) -> Float {
    let re = ctx.real(0.25f64) + ctx.real(u32::from(a)) / 2u32;
    let w = ComplexValue::new(re, y.clone() / 2u32);
    let lg = log_gamma(&w, ctx).expect("Re(1/4 + a/2) > 0, no pole");
    lg.im - y.clone() / 2u32 * (ctx.pi() / ctx.real(k)).ln()
}
