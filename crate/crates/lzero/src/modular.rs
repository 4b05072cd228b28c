//! Level-one modular L-functions: exact Ramanujan tau coefficients, the
//! completed function Lambda_f of even weight k, and the weight-k theta
//! phase. The concrete instance of interest is Delta (k = 12).
//!
//! Lambda_f is continued everywhere by splitting its Mellin integral at
//! t = 1, which yields two incomplete-gamma sums converging like e^{-2 pi n}.
//! High on the critical line the two halves cancel almost exactly (the
//! completed function decays like e^{-pi |y| / 2} while each half stays
//! O(1)), so evaluation internally raises the working precision by
//! pi/(2 ln 10) ~ 0.6822 digits per unit of |Im z|.

use crate::error::{Error, Result};
use crate::kernel::{log_gamma, upper_incomplete_gamma, ComplexValue, PrecisionContext};
use rug::Float;

/// Exact tau(1)..tau(N).
#[derive(Clone, Debug)]
pub struct TauSeries {
    coefficients: Vec<i128>,
}

impl TauSeries {
    /// tau(n), 1-based.
    pub fn get(&self, n: usize) -> i128 {
        self.coefficients[n - 1]
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn as_slice(&self) -> &[i128] {
        &self.coefficients
    }
}

/// Truncated product of dense polynomials in exact i128, degree < n.
fn poly_mul(a: &[i128], b: &[i128], n: usize) -> Vec<i128> {
    let mut out = vec![0i128; n];
    for (i, &ai) in a.iter().enumerate().take(n) {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(n - i) {
            if bj == 0 {
                continue;
            }
            let prod = ai.checked_mul(bj).expect("tau expansion overflows i128");
            out[i + j] = out[i + j].checked_add(prod).expect("tau expansion overflows i128");
        }
    }
    out
}

/// tau(1)..tau(N): Euler's pentagonal expansion of prod (1 - q^m), raised
/// to the 24th power by binary exponentiation of truncated polynomials.
pub fn tau_coefficients(n: usize) -> TauSeries {
    assert!(n >= 1, "need at least one coefficient");
    let mut eta = vec![0i128; n];
    eta[0] = 1;
    // generalized pentagonal numbers j(3j-1)/2 for j = 1, -1, 2, -2, ...
    for j in 1i128.. {
        let mut hit = false;
        for g in [j * (3 * j - 1) / 2, j * (3 * j + 1) / 2] {
            if (g as usize) < n {
                eta[g as usize] = if j % 2 == 0 { 1 } else { -1 };
                hit = true;
            }
        }
        if !hit {
            break;
        }
    }
    let p2 = poly_mul(&eta, &eta, n);
    let p4 = poly_mul(&p2, &p2, n);
    let p8 = poly_mul(&p4, &p4, n);
    let p16 = poly_mul(&p8, &p8, n);
    let p24 = poly_mul(&p16, &p8, n);
    TauSeries { coefficients: p24 }
}

/// A level-one modular L-function given by its weight and exact Fourier
/// coefficients a_f(1)..a_f(N).
#[derive(Clone, Debug)]
pub struct ModularLDescriptor {
    weight: u32,
    coefficients: Vec<i128>,
}

impl ModularLDescriptor {
    pub fn new(weight: u32, coefficients: Vec<i128>) -> Result<Self> {
        if weight < 4 || weight % 2 != 0 {
            return Err(Error::InvalidDescriptor(format!(
                "weight must be an even integer >= 4, got {weight}"
            )));
        }
        Ok(Self { weight, coefficients })
    }

    /// The Delta instance: weight 12, a_f(n) = tau(n).
    pub fn delta(n_coefficients: usize) -> Self {
        Self {
            weight: 12,
            coefficients: tau_coefficients(n_coefficients).coefficients,
        }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn coefficients(&self) -> &[i128] {
        &self.coefficients
    }

    /// (-1)^{k/2}, the sign in the functional equation.
    pub fn sign(&self) -> i32 {
        if (self.weight / 2) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Terms needed so the e^{-2 pi n} envelope falls below 10^{-wd}, with
/// margin for the polynomial factors a_f(n) (2 pi n)^{O(k)}.
fn required_terms(wd: u32, weight: u32) -> usize {
    (f64::from(wd) * std::f64::consts::LN_10 / std::f64::consts::TAU).ceil() as usize
        + 12
        + weight as usize
}

/// Internal digit boost soaking the cancellation between the two halves,
/// which grows like e^{pi |y| / 2}.
fn cancellation_extra(z: &ComplexValue) -> u32 {
    (0.6825 * z.im.clone().abs().to_f64()).ceil() as u32 + 3
}

/// Lambda_f(z) = (2 pi)^{-z} Gamma(z) L_f(z), continued everywhere by
/// Lambda_f(z) = sum_n a(n) (2 pi n)^{-z} Gamma(z, 2 pi n)
///             + (-1)^{k/2} sum_n a(n) (2 pi n)^{z-k} Gamma(k-z, 2 pi n).
pub fn lambda_value(z: &ComplexValue, f: &ModularLDescriptor, ctx: &PrecisionContext) -> Result<ComplexValue> {
    let k = f.weight;
    let wctx = ctx.widened(cancellation_extra(z));
    let n_terms = required_terms(wctx.working_digits(), k);
    if f.coefficients.len() < n_terms {
        return Err(Error::InsufficientCoefficients {
            required: n_terms,
            available: f.coefficients.len(),
        });
    }
    let prec = wctx.prec();
    let zw = ComplexValue::new(wctx.real(&z.re), wctx.real(&z.im));
    // k - z, exactly
    let kz = ComplexValue::new(wctx.real(k) - &zw.re, -zw.im.clone());
    let sign = f.sign();
    let two_pi = wctx.pi() * 2u32;
    let mut acc = ComplexValue::zero(prec);
    for (i, &a) in f.coefficients.iter().enumerate().take(n_terms) {
        if a == 0 {
            continue;
        }
        let x = two_pi.clone() * (i as u32 + 1);
        let af = wctx.real(a);
        let direct = &ComplexValue::pow_real_base(&x, &-&zw) * &upper_incomplete_gamma(&zw, &x, &wctx)?;
        let reflected =
            &ComplexValue::pow_real_base(&x, &(&zw - &wctx.complex(k, 0))) * &upper_incomplete_gamma(&kz, &x, &wctx)?;
        let pair = if sign == 1 {
            &direct + &reflected
        } else {
            &direct - &reflected
        };
        acc = &acc + &pair.scale(&af);
    }
    Ok(acc)
}

/// xi_f(z): Lambda_f for k/2 even, e^{-i pi/2} Lambda_f for k/2 odd, so the
/// functional equation reads xi_f(z) = xi_f*(k - z) with a real-on-center
/// normalization either way.
pub fn xi_f_value(z: &ComplexValue, f: &ModularLDescriptor, ctx: &PrecisionContext) -> Result<ComplexValue> {
    let lambda = lambda_value(z, f, ctx)?;
    if f.sign() == 1 {
        Ok(lambda)
    } else {
        // e^{-i pi / 2} = -i
        Ok(-&lambda.mul_i())
    }
}

/// L_f(z) = (2 pi)^z Lambda_f(z) / Gamma(z).
pub fn l_f_value(z: &ComplexValue, f: &ModularLDescriptor, ctx: &PrecisionContext) -> Result<ComplexValue> {
    let lg = log_gamma(z, ctx)?;
    let lambda = lambda_value(z, f, ctx)?;
    let two_pi = ctx.pi() * 2u32;
    let scale = &ComplexValue::pow_real_base(&two_pi, z) * &(-&lg).exp();
    Ok(&lambda * &scale)
}

/// vartheta_k(y) = Im log Gamma(k/2 + i y) - y log(2 pi), the weight-k
/// analogue of the Riemann-Siegel theta, on the Stirling branch.
pub fn vartheta_weight(y: &Float, k: u32, ctx: &PrecisionContext) -> Float {
    let w = ComplexValue::new(ctx.real(k) / 2u32, ctx.real(y));
    let lg = log_gamma(&w, ctx).expect("k/2 > 0, no pole");
    lg.im - ctx.real(y) * (ctx.pi() * 2u32).ln()
}
