//! Hurwitz zeta by Euler-Maclaurin.
//!
//! This is the evaluation core for every Dirichlet L-value: L(z, chi) is a
//! finite combination of zeta(z, m/k). The cutoff N grows with both the
//! digit budget and |Im z|, so accuracy is uniform along the critical line.

use crate::error::{Error, Result};
use crate::kernel::{bernoulli, ComplexValue, PrecisionContext};
use rug::ops::CompleteRound;
use rug::{Float, Integer, Rational};

/// zeta(z, q) for complex z != 1 and real q > 0:
/// sum_{m=0}^{N-1} (m+q)^{-z} + w^{1-z}/(z-1) + w^{-z}/2
///   + sum_j B_{2j}/(2j)! (z)_{2j-1} w^{-z-2j+1},  w = N + q,
/// with the tail stopped adaptively and N doubled if it refuses to decay.
pub fn hurwitz_zeta(z: &ComplexValue, q: &Float, ctx: &PrecisionContext) -> Result<ComplexValue> {
    if !(q.is_sign_positive() && !q.is_zero() && q.is_finite()) {
        return Err(Error::HurwitzDomain(format!(
            "q = {} must be a positive real",
            q.to_f64()
        )));
    }
    if z.im.is_zero() && z.re == 1u32 {
        return Err(Error::HurwitzPole);
    }
    let prec = ctx.prec();
    let wd = ctx.working_digits();
    let t_abs = z.im.to_f64().abs();
    let mut n_terms = ((wd as f64 * std::f64::consts::LN_10 / (2.0 * std::f64::consts::PI)).ceil()
        as usize)
        .max((t_abs / 2.0).ceil() as usize)
        + 10;

    'attempt: for _ in 0..4 {
        let minus_z = -z;
        let mut s1 = ComplexValue::zero(prec);
        for m in 0..n_terms {
            let base = (q + m as u32).complete(prec);
            s1 = &s1 + &ComplexValue::pow_real_base(&base, &minus_z);
        }
        let w = (q + n_terms as u32).complete(prec);

        let one_minus_z =
            ComplexValue::new((1u32 - &z.re).complete(prec), (-&z.im).complete(prec));
        let z_minus_1 = ComplexValue::new((&z.re - 1u32).complete(prec), z.im.clone());
        let t1 = &ComplexValue::pow_real_base(&w, &one_minus_z) / &z_minus_1;
        let w_mz = ComplexValue::pow_real_base(&w, &minus_z);
        let mut half = Float::with_val(prec, 1u32);
        half >>= 1;
        let t2 = w_mz.scale(&half);
        let mut acc = &(&s1 + &t1) + &t2;

        // incremental tail state at j = 1
        let w2 = (&w * &w).complete(prec);
        let mut wpow = ComplexValue::new(
            (&w_mz.re / &w).complete(prec),
            (&w_mz.im / &w).complete(prec),
        );
        let mut poch = z.clone();
        let mut fact = Integer::from(2);
        let eps = ctx.working_eps();
        let mut prev_mag = Float::with_val(prec, rug::float::Special::Infinity);

        for j in 1..(4 * wd + 64) {
            let coeff_r = bernoulli(2 * j as usize) / Rational::from(&fact);
            let term = (&poch * &wpow).scale(&ctx.rational_to_real(&coeff_r));
            let mag = term.abs();
            if mag > prev_mag {
                n_terms *= 2;
                continue 'attempt;
            }
            acc = &acc + &term;
            if mag < eps.clone() * (acc.abs() + 1u32) {
                return Ok(acc);
            }
            prev_mag = mag;
            let f1 = ComplexValue::new(
                (&z.re + (2 * j - 1)).complete(prec),
                z.im.clone(),
            );
            let f2 = ComplexValue::new((&z.re + 2 * j).complete(prec), z.im.clone());
            poch = &(&poch * &f1) * &f2;
            wpow = ComplexValue::new(
                (&wpow.re / &w2).complete(prec),
                (&wpow.im / &w2).complete(prec),
            );
            fact *= (2 * j + 1) * (2 * j + 2);
        }
        n_terms *= 2;
    }
    Err(Error::PrecisionExhausted { op: "hurwitz_zeta" })
}
