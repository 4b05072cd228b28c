//! Descriptor-driven L-functions: degree d, conductor k, local parameters
//! a_j, functional-equation phase beta. This unifies the Dirichlet and
//! modular families under one equation and provides a raw-series evaluator
//! for synthetic descriptors.
//!
//! The analytic inputs are a completed function
//! Lambda(z) = k^{z/2} pi^{-dz/2} prod_j Gamma((z + a_j)/2) L(z),
//! a phase alpha = e^{i beta} with Lambda(z) = alpha (Lambda(1 - z*))*, and
//! xi = e^{-i beta/2} Lambda, real on the critical line.
//!
//! beta can be supplied exactly, or derived: for the Dirichlet evaluator it
//! is the Gauss-sum phase arg G - pi a / 2, for the normalized modular
//! evaluator it is 0 or pi by the sign (-1)^{k/2}, and for raw series it is
//! estimated from arg xi(1/2) = 0, which silently assumes xi(1/2) > 0. When
//! that assumption fails (it does for zeta, where xi(1/2) < 0) the label
//! offset n0 absorbs the defect; n0 is part of the descriptor.

use crate::characters::{conductor, gauss_sum, is_primitive, DirichletCharacter};
use crate::dirichlet;
use crate::error::{Error, Result};
use crate::kernel::{lambert_w0, log_gamma, ComplexValue, PrecisionContext};
use crate::modular::{self, ModularLDescriptor};
use rug::{Float, Rational};
use serde::Deserialize;

/// How the functional-equation phase beta is obtained.
#[derive(Clone, Debug)]
pub enum BetaSpec {
    /// Derive from the evaluator (closed form where known, else from
    /// arg xi(1/2) = 0 with a vertical regularization).
    Derived,
    /// beta = q * pi exactly.
    PiMultiple(Rational),
    /// Explicit numeric value (e.g. from descriptor JSON).
    Literal(f64),
}

/// Strategy for evaluating L(z, f) in the strip.
#[derive(Clone, Debug)]
pub enum Evaluator {
    /// Hurwitz-zeta continuation of a primitive Dirichlet character.
    Dirichlet(DirichletCharacter),
    /// Incomplete-gamma continuation of a level-one modular form, shifted
    /// so the critical line sits at Re z = 1/2.
    ModularNormalized(ModularLDescriptor),
    /// Truncated raw Dirichlet series sum lambda(n) n^{-z}. Exact for the
    /// finite sequences used by synthetic descriptors; for genuinely
    /// infinite series it is only an approximation with no continuation.
    DirichletSeries(Vec<(f64, f64)>),
}

/// An Appendix-style L-function: the analytic data the zero equation needs.
#[derive(Clone, Debug)]
pub struct LFunctionDescriptor {
    degree: u32,
    conductor: u64,
    local_params: Vec<(f64, f64)>,
    beta: BetaSpec,
    n0: i64,
    evaluator: Evaluator,
}

impl LFunctionDescriptor {
    pub fn new(
        degree: u32,
        conductor: u64,
        local_params: Vec<(f64, f64)>,
        beta: BetaSpec,
        n0: i64,
        evaluator: Evaluator,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidDescriptor("degree must be >= 1".into()));
        }
        if conductor == 0 {
            return Err(Error::InvalidDescriptor("conductor must be >= 1".into()));
        }
        if local_params.len() != degree as usize {
            return Err(Error::InvalidDescriptor(format!(
                "need exactly degree = {degree} local parameters, got {}",
                local_params.len()
            )));
        }
        if local_params.iter().any(|(re, im)| !re.is_finite() || !im.is_finite()) {
            return Err(Error::InvalidDescriptor("local parameters must be finite".into()));
        }
        // closed under conjugation as multisets
        let mut direct = local_params.clone();
        let mut conj: Vec<(f64, f64)> = local_params.iter().map(|&(re, im)| (re, -im)).collect();
        let cmp = |a: &(f64, f64), b: &(f64, f64)| {
            a.partial_cmp(b).expect("finite parameters compare totally")
        };
        direct.sort_by(cmp);
        conj.sort_by(cmp);
        if direct != conj {
            return Err(Error::InvalidDescriptor(
                "local parameters must be closed under conjugation".into(),
            ));
        }
        if let Evaluator::DirichletSeries(coeffs) = &evaluator {
            match coeffs.first() {
                Some(&(1.0, 0.0)) => {}
                _ => {
                    return Err(Error::InvalidDescriptor(
                        "series coefficients must start with lambda(1) = 1".into(),
                    ))
                }
            }
        }
        Ok(Self {
            degree,
            conductor,
            local_params,
            beta,
            n0,
            evaluator,
        })
    }

    /// Dirichlet L-function of a (primitive reduction of a) character:
    /// d = 1, a_1 = parity, conductor = modulus, Gauss-phase beta.
    pub fn dirichlet(chi: &DirichletCharacter) -> Self {
        let chi = if is_primitive(chi) {
            chi.clone()
        } else {
            conductor(chi).1
        };
        let n0 = i64::from(chi.modulus() == 1);
        Self {
            degree: 1,
            conductor: chi.modulus(),
            local_params: vec![(f64::from(chi.parity()), 0.0)],
            beta: BetaSpec::Derived,
            n0,
            evaluator: Evaluator::Dirichlet(chi),
        }
    }

    /// The Riemann zeta function: trivial character, beta = 0, n0 = 1.
    pub fn zeta() -> Self {
        let trivial = crate::characters::enumerate_characters(1).remove(0);
        Self {
            beta: BetaSpec::PiMultiple(Rational::new()),
            ..Self::dirichlet(&trivial)
        }
    }

    /// Delta recentered to Re z = 1/2: degree 2, conductor 1, local
    /// parameters (11/2, 13/2), beta = 0.
    pub fn delta_normalized(n_coefficients: usize) -> Self {
        Self {
            degree: 2,
            conductor: 1,
            local_params: vec![(5.5, 0.0), (6.5, 0.0)],
            beta: BetaSpec::PiMultiple(Rational::new()),
            n0: 0,
            evaluator: Evaluator::ModularNormalized(ModularLDescriptor::delta(n_coefficients)),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn local_params(&self) -> &[(f64, f64)] {
        &self.local_params
    }

    pub fn n0(&self) -> i64 {
        self.n0
    }

    pub fn with_n0(mut self, n0: i64) -> Self {
        self.n0 = n0;
        self
    }

    pub fn beta_spec(&self) -> &BetaSpec {
        &self.beta
    }

    pub fn evaluator(&self) -> &Evaluator {
        &self.evaluator
    }

    /// lambda_f(n) of the underlying Dirichlet series; n >= 1.
    pub fn lambda_f(&self, n: u64, ctx: &PrecisionContext) -> ComplexValue {
        if n == 0 {
            return ComplexValue::zero(ctx.prec());
        }
        match &self.evaluator {
            Evaluator::Dirichlet(chi) => chi.value(n, ctx),
            Evaluator::ModularNormalized(m) => {
                let idx = n as usize;
                if idx > m.coefficients().len() {
                    return ComplexValue::zero(ctx.prec());
                }
                let a = ctx.real(m.coefficients()[idx - 1]);
                let scale = ctx.real(n).pow_shifted(m.weight() - 1);
                ComplexValue::from_real(a / scale)
            }
            Evaluator::DirichletSeries(coeffs) => match coeffs.get(n as usize - 1) {
                Some(&(re, im)) => ctx.complex(re, im),
                None => ComplexValue::zero(ctx.prec()),
            },
        }
    }

    /// L(z, f) by this descriptor's evaluation strategy.
    pub fn evaluate_l(&self, z: &ComplexValue, ctx: &PrecisionContext) -> Result<ComplexValue> {
        match &self.evaluator {
            Evaluator::Dirichlet(chi) => dirichlet::l_value(z, chi, ctx),
            Evaluator::ModularNormalized(m) => {
                // L_norm(z) = L_f(z + (k-1)/2)
                let shift = ctx.real(m.weight() - 1) / 2u32;
                let zs = ComplexValue::new(z.re.clone() + shift, z.im.clone());
                modular::l_f_value(&zs, m, ctx)
            }
            Evaluator::DirichletSeries(coeffs) => {
                let mut acc = ComplexValue::zero(ctx.prec());
                for (i, &(re, im)) in coeffs.iter().enumerate() {
                    if re == 0.0 && im == 0.0 {
                        continue;
                    }
                    let nf = ctx.real(i as u32 + 1);
                    let npow = ComplexValue::pow_real_base(&nf, &-z);
                    acc = &acc + &(&ctx.complex(re, im) * &npow);
                }
                Ok(acc)
            }
        }
    }
}

/// Helper: n^{(w)/2} for the modular normalization, exact via sqrt.
trait PowShifted {
    fn pow_shifted(self, w: u32) -> Float;
}

impl PowShifted for Float {
    fn pow_shifted(self, w: u32) -> Float {
        use rug::ops::Pow;
        self.pow(w).sqrt()
    }
}

/// beta/2 at working precision.
pub fn beta_half(f: &LFunctionDescriptor, ctx: &PrecisionContext) -> Result<Float> {
    match &f.beta {
        BetaSpec::PiMultiple(q) => Ok(ctx.pi() * ctx.rational_to_real(q) / 2u32),
        BetaSpec::Literal(x) => Ok(ctx.real(*x) / 2u32),
        BetaSpec::Derived => match &f.evaluator {
            Evaluator::Dirichlet(chi) => {
                let g = gauss_sum(chi, ctx);
                Ok(g.argument / 2u32 - ctx.pi() * u32::from(chi.parity()) / 4u32)
            }
            Evaluator::ModularNormalized(m) => {
                if m.sign() == 1 {
                    Ok(ctx.real(0))
                } else {
                    Ok(ctx.pi() / 2u32)
                }
            }
            Evaluator::DirichletSeries(_) => {
                // arg xi(1/2) = 0: beta/2 = sum_j arg Gamma(1/4 + a_j/2)
                //                          + arg L(1/2), vertically regularized
                let mut acc = Float::new(ctx.prec());
                for &(re, im) in &f.local_params {
                    let w = ctx.complex(0.25 + re / 2.0, im / 2.0);
                    acc += log_gamma(&w, ctx)?.im;
                }
                acc += arg_l_center(f, ctx)?;
                Ok(acc)
            }
        },
    }
}

/// arg L(1/2, f). Evaluated at the center itself when L(1/2) != 0; a
/// self-dual alpha = -1 forces a central zero, and then the limit up the
/// critical line regularized at t = 10^{-working/2} is used instead.
pub(crate) fn arg_l_center(f: &LFunctionDescriptor, ctx: &PrecisionContext) -> Result<Float> {
    let noise = ctx.working_eps() * 1000u32;
    let center = ComplexValue::new(ctx.real(0.5f64), ctx.real(0));
    let l = f.evaluate_l(&center, ctx)?;
    if l.abs() > noise {
        return Ok(l.arg());
    }
    let t0 = ctx.real(-i32::try_from(ctx.working_digits() / 2).unwrap()).exp10();
    let z = ComplexValue::new(ctx.real(0.5f64), t0);
    let l = f.evaluate_l(&z, ctx)?;
    if l.abs() < noise {
        return Err(Error::ZeroOfL {
            delta: "center".into(),
        });
    }
    Ok(l.arg())
}

/// sum_j vartheta_{k, a_j}(y): the degree-d Riemann-Siegel phase
/// sum_j [ Im log Gamma(1/4 + a_j/2 + i y/2) - (y/2) log(pi / k^{1/d}) ].
pub fn generic_theta_sum(y: &Float, f: &LFunctionDescriptor, ctx: &PrecisionContext) -> Result<Float> {
    let root_k = ctx.real(f.conductor).root(f.degree);
    let ln_pi_over_root_k = (ctx.pi() / root_k).ln();
    let mut acc = Float::new(ctx.prec());
    for &(re, im) in &f.local_params {
        let w = ComplexValue::new(
            ctx.real(0.25 + re / 2.0),
            ctx.real(im / 2.0) + y.clone() / 2u32,
        );
        acc += log_gamma(&w, ctx)?.im;
    }
    acc -= y.clone() / 2u32 * ln_pi_over_root_k * f.degree;
    Ok(acc)
}

/// Left side of the zero equation:
/// sum_j vartheta_{k,a_j}(y) + arg L(1/2 + delta + i y, f) - beta/2.
/// Solutions obey LHS = (n - n0 - 1/2) pi.
pub fn generic_equation_lhs(
    y: &Float,
    delta: &Float,
    f: &LFunctionDescriptor,
    ctx: &PrecisionContext,
) -> Result<Float> {
    let theta = generic_theta_sum(y, f, ctx)?;
    let mut re = ctx.real(delta);
    re += 0.5f64;
    let l = f.evaluate_l(&ComplexValue::new(re, ctx.real(y)), ctx)?;
    if l.abs() < ctx.working_eps() * 1000u32 {
        return Err(Error::ZeroOfL {
            delta: crate::kernel::format_real(delta, 6),
        });
    }
    Ok(theta + l.arg() - beta_half(f, ctx)?)
}

/// Lambert-seeded approximation of the n-th zero ordinate:
/// y_n ~ 2 pi A_n / (d W[k^{1/d} (d e)^{-1} A_n]), with
/// A_n = (n - n0) - 1/2 + beta/(2 pi) - sum_j (2 Re a_j - 1)/8
/// (imaginary parts cancel over conjugate pairs).
pub fn generic_lambert_guess(n: i64, f: &LFunctionDescriptor, ctx: &PrecisionContext) -> Result<Float> {
    let mut a_n = ctx.real(n - f.n0) - ctx.real(0.5f64);
    a_n += beta_half(f, ctx)? / ctx.pi();
    for &(re, _) in &f.local_params {
        a_n -= ctx.real(2.0 * re - 1.0) / 8u32;
    }
    if a_n.is_zero() {
        return Err(Error::LambertDomain("degenerate seed at A_n = 0".into()));
    }
    let d = f.degree;
    let root_k = ctx.real(f.conductor).root(d);
    let x = root_k * &a_n / (ctx.real(d) * ctx.real(1).exp());
    let w = lambert_w0(&x, ctx)?;
    if w.is_zero() {
        return Err(Error::LambertDomain("W = 0 gives no finite seed".into()));
    }
    Ok(ctx.pi() * 2u32 * a_n / (w * d))
}

/// Counting formula on the critical line for 0 < Im z < T:
/// N(T) = (1/pi) sum_j [vartheta_{k,a_j}(T) - arg Gamma(1/4 + a_j/2)]
///      + (1/pi) arg L(1/2 + iT) - (1/pi) arg L(1/2).
pub fn generic_counting(t: &Float, f: &LFunctionDescriptor, ctx: &PrecisionContext) -> Result<Float> {
    let mut acc = generic_theta_sum(t, f, ctx)?;
    for &(re, im) in &f.local_params {
        let w = ctx.complex(0.25 + re / 2.0, im / 2.0);
        acc -= log_gamma(&w, ctx)?.im;
    }
    let z = ComplexValue::new(ctx.real(0.5f64), ctx.real(t));
    let l = f.evaluate_l(&z, ctx)?;
    if l.abs() < ctx.working_eps() * 1000u32 {
        return Err(Error::ZeroOfL {
            delta: "counting height is a jump point".into(),
        });
    }
    acc += l.arg();
    acc -= arg_l_center(f, ctx)?;
    Ok(acc / ctx.pi())
}

// ---- descriptor JSON ----

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DescriptorJson {
    degree: u32,
    conductor: u64,
    local_params: Vec<[f64; 2]>,
    #[serde(default)]
    beta: Option<f64>,
    coefficients: CoefficientsJson,
    #[serde(default)]
    n0: Option<i64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoefficientsJson {
    Named(String),
    Inline(Vec<CoefficientEntry>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoefficientEntry {
    Real(f64),
    Pair([f64; 2]),
}

/// Parse a descriptor from its JSON schema:
/// { degree, conductor, local_params: [[re, im], ...],
///   beta?: number, coefficients: "zeta" | "delta" | [...], n0?: integer }.
pub fn descriptor_from_json(s: &str) -> Result<LFunctionDescriptor> {
    let raw: DescriptorJson = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
    let local: Vec<(f64, f64)> = raw.local_params.iter().map(|p| (p[0], p[1])).collect();
    let (template, default_n0): (LFunctionDescriptor, i64) = match &raw.coefficients {
        CoefficientsJson::Named(name) => match name.as_str() {
            "zeta" => (LFunctionDescriptor::zeta(), 1),
            "delta" => (LFunctionDescriptor::delta_normalized(2048), 0),
            other => {
                return Err(Error::InvalidDescriptor(format!(
                    "unknown builtin coefficient set '{other}'"
                )))
            }
        },
        CoefficientsJson::Inline(entries) => {
            let coeffs: Vec<(f64, f64)> = entries
                .iter()
                .map(|e| match e {
                    CoefficientEntry::Real(x) => (*x, 0.0),
                    CoefficientEntry::Pair(p) => (p[0], p[1]),
                })
                .collect();
            let d = LFunctionDescriptor::new(
                raw.degree,
                raw.conductor,
                local.clone(),
                BetaSpec::Derived,
                0,
                Evaluator::DirichletSeries(coeffs),
            )?;
            (d, 0)
        }
    };
    // builtin templates carry canonical structure; reject mismatches
    if template.degree != raw.degree
        || template.conductor != raw.conductor
        || template.local_params != local
    {
        return Err(Error::InvalidDescriptor(
            "degree/conductor/local_params disagree with the named builtin".into(),
        ));
    }
    let beta = match raw.beta {
        Some(x) => BetaSpec::Literal(x),
        None => template.beta.clone(),
    };
    let n0 = raw.n0.unwrap_or(default_n0);
    LFunctionDescriptor::new(raw.degree, raw.conductor, local, beta, n0, template.evaluator)
}
