//! Log-gamma and the upper incomplete gamma function.
//!
//! `log_gamma` is the analytic log-gamma (continuous on the cut plane, equal
//! to log |Gamma| on the positive reals), not the principal log of Gamma. All
//! phase formulas read their vertical arguments from its imaginary part, so
//! the branch discipline here is what makes the counting machinery work.

use crate::error::{Error, Result};
use crate::kernel::{bernoulli, ComplexValue, PrecisionContext};
use rug::ops::CompleteRound;
use rug::{Float, Rational};

/// Analytic log Gamma(z), poles rejected. Arguments in the lower half-plane
/// are conjugated so the Stirling branch bookkeeping only ever runs for
/// Im z >= 0.
pub fn log_gamma(z: &ComplexValue, ctx: &PrecisionContext) -> Result<ComplexValue> {
    if z.im.is_zero() && z.re.is_integer() && z.re <= 0u32 {
        return Err(Error::GammaPole(format!(
            "log_gamma pole at z = {}",
            z.re.to_f64()
        )));
    }
    if z.im.is_sign_negative() && !z.im.is_zero() {
        return Ok(log_gamma(&z.conj(), ctx)?.conj());
    }
    stirling(z, ctx)
}

/// Stirling with recurrence shift: push z right until the asymptotic series
/// converges, then subtract the logs of the shifted-over factors. Restarts
/// with a larger shift radius if the series turns before reaching tolerance.
fn stirling(z: &ComplexValue, ctx: &PrecisionContext) -> Result<ComplexValue> {
    let prec = ctx.prec();
    let mut radius = 0.12 * prec as f64 + 6.0;
    let re_f = z.re.to_f64();
    let abs_f = z.abs().to_f64();

    'attempt: for _ in 0..4 {
        let shift: u32 = if re_f >= radius || (re_f >= 0.0 && abs_f >= radius) {
            0
        } else {
            (radius - re_f).ceil() as u32
        };
        let w = ComplexValue::new((&z.re + shift).complete(prec), z.im.clone());

        // leading part: (w - 1/2) Log w - w + (1/2) log(2 pi)
        let logw = w.ln();
        let mut half = Float::with_val(prec, 1u32);
        half >>= 1;
        let w_half = ComplexValue::new((&w.re - &half).complete(prec), w.im.clone());
        let mut s = &w_half * &logw;
        s = &s - &w;
        let mut log_two_pi = ctx.pi();
        log_two_pi *= 2u32;
        s.re += log_two_pi.ln() * &half;

        let target = {
            let mut t = ctx.working_eps();
            t *= s.abs() + 1u32;
            t
        };

        // tail: sum_m B_{2m} / (2m (2m-1) w^{2m-1})
        let w2_inv = (&w * &w).recip();
        let mut wpow = w.recip();
        let mut prev_mag = Float::with_val(prec, rug::float::Special::Infinity);
        let max_m = 4 * ctx.working_digits() + 64;
        for m in 1..=max_m {
            let coeff = bernoulli(2 * m as usize) / Rational::from(2 * m * (2 * m - 1));
            let term = wpow.scale(&ctx.rational_to_real(&coeff));
            let mag = term.abs();
            if mag > prev_mag {
                radius *= 1.5;
                continue 'attempt;
            }
            s = &s + &term;
            if mag < target {
                // undo the shift: log Gamma(z) = S - sum_j Log(z + j)
                for j in 0..shift {
                    let zj = ComplexValue::new((&z.re + j).complete(prec), z.im.clone());
                    if zj.is_zero() {
                        return Err(Error::GammaPole("shift crossed a pole".into()));
                    }
                    s = &s - &zj.ln();
                }
                return Ok(s);
            }
            prev_mag = mag;
            wpow = &wpow * &w2_inv;
        }
        radius *= 1.5;
    }
    Err(Error::PrecisionExhausted { op: "log_gamma" })
}

/// Upper incomplete gamma Gamma(s, x) for complex s and real x > 0.
///
/// Two regimes: the Legendre continued fraction when x dominates |s|, and
/// Kummer's series for the lower function otherwise, with a post-hoc
/// cancellation audit on the subtraction Gamma(s) - gamma(s, x).
pub fn upper_incomplete_gamma(
    s: &ComplexValue,
    x: &Float,
    ctx: &PrecisionContext,
) -> Result<ComplexValue> {
    if !(x.is_sign_positive() && !x.is_zero() && x.is_finite()) {
        return Err(Error::GammaPole(
            "upper_incomplete_gamma requires real x > 0".into(),
        ));
    }
    let s_abs = s.abs().to_f64();
    let x_f = x.to_f64();
    // near a non-positive integer Gamma(s) blows up; the continued fraction
    // has no pole there, so prefer it even for smallish x
    let near_pole = s.im.to_f64().abs() < 0.5 && {
        let r = s.re.to_f64();
        r < 0.5 && (r - r.round()).abs() < 0.25
    };
    if x_f >= s_abs + 10.0 || near_pole {
        continued_fraction(s, x, ctx)
    } else {
        kummer(s, x, ctx)
    }
}

/// Gamma(s,x) = e^{-x} x^s / (b0 + a1/(b1 + a2/(b2 + ...))) with
/// b_i = x + 1 - s + 2i and a_i = -i(i - s), evaluated by modified Lentz.
fn continued_fraction(s: &ComplexValue, x: &Float, ctx: &PrecisionContext) -> Result<ComplexValue> {
    let prec = ctx.prec();
    let tiny = {
        let mut t = Float::with_val(prec, 1u32);
        t >>= 2 * prec;
        ComplexValue::from_real(t)
    };
    let guard_zero = |v: ComplexValue| if v.is_zero() { tiny.clone() } else { v };

    // b0 = x + 1 - s
    let mut b = ComplexValue::new(
        {
            let mut r = (x - &s.re).complete(prec);
            r += 1u32;
            r
        },
        (-&s.im).complete(prec),
    );
    let mut f = guard_zero(b.clone());
    let mut c = f.clone();
    let mut d = ComplexValue::zero(prec);
    let eps = ctx.working_eps();
    let one = ComplexValue::from_real(Float::with_val(prec, 1u32));

    for i in 1u64..=200_000 {
        let i_f = Float::with_val(prec, i);
        // a_i = -i(i - s) = i s - i^2
        let a = ComplexValue::new(
            {
                let mut r = (&s.re * &i_f).complete(prec);
                r -= (&i_f * &i_f).complete(prec);
                r
            },
            (&s.im * &i_f).complete(prec),
        );
        b.re += 2u32;
        d = guard_zero(&b + &(&a * &d)).recip();
        c = guard_zero(&b + &(&a / &c));
        let delta = &c * &d;
        f = &f * &delta;
        if (&delta - &one).abs() < eps {
            let mut pre = ComplexValue::pow_real_base(x, s);
            let damp = (-x.clone()).exp();
            pre = pre.scale(&damp);
            return Ok(&pre * &f.recip());
        }
    }
    Err(Error::PrecisionExhausted {
        op: "upper_incomplete_gamma (continued fraction)",
    })
}

/// Kummer series for the lower function,
/// gamma(s,x) = x^s e^{-x} sum_n x^n / (s (s+1) ... (s+n)),
/// then Gamma(s,x) = Gamma(s) - gamma(s,x). The subtraction is audited: if
/// it cancelled more digits than the current working precision can absorb,
/// the whole computation reruns with the precision widened by the loss.
fn kummer(s: &ComplexValue, x: &Float, ctx: &PrecisionContext) -> Result<ComplexValue> {
    let mut extra: u32 = 0;
    for _ in 0..3 {
        let wctx = ctx.widened(extra);
        let prec = wctx.prec();
        let sw = ComplexValue::new(
            Float::with_val(prec, &s.re),
            Float::with_val(prec, &s.im),
        );
        let xw = Float::with_val(prec, x);

        let mut term = sw.recip();
        let mut sum = term.clone();
        let eps = wctx.working_eps();
        let x_f = xw.to_f64();
        let cap = 200_000 + 100 * (x_f.abs() as usize);
        let mut converged = false;
        for n in 1..=cap {
            // t_n = t_{n-1} * x / (s + n)
            let sn = ComplexValue::new((&sw.re + n as u32).complete(prec), sw.im.clone());
            term = term.scale(&xw);
            term = &term / &sn;
            sum = &sum + &term;
            if n as f64 > x_f && term.abs() < eps.clone() * sum.abs() {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::PrecisionExhausted {
                op: "upper_incomplete_gamma (kummer series)",
            });
        }
        let mut pre = ComplexValue::pow_real_base(&xw, &sw);
        let damp = (-xw.clone()).exp();
        pre = pre.scale(&damp);
        let lower = &pre * &sum;
        let whole = log_gamma(&sw, &wctx)?.exp();
        let result = &whole - &lower;

        // cancellation audit
        let big = whole.abs().max(&lower.abs());
        let res_mag = result.abs();
        if res_mag.is_zero() && !big.is_zero() {
            extra += wctx.working_digits() as u32;
            continue;
        }
        let lost = if big.is_zero() {
            0.0
        } else {
            (big / &res_mag).log10().to_f64()
        };
        if lost > extra as f64 + ctx.guard() as f64 / 2.0 {
            extra = lost.ceil() as u32 + 10;
            continue;
        }
        return Ok(result);
    }
    Err(Error::PrecisionExhausted {
        op: "upper_incomplete_gamma (cancellation audit)",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;
    use rug::ops::Pow;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(50).unwrap()
    }

    /// Independent oracle from the Weierstrass-style series
    /// log Gamma(z) = -gamma z - log z + sum_n [z/n - log(1 + z/n)],
    /// truncated at N with the tail restored through zeta values:
    /// tail = sum_{k>=2} (-1)^k (z^k / k) (zeta(k) - sum_{n<=N} n^{-k}).
    fn series_oracle(z: &ComplexValue, ctx: &PrecisionContext) -> ComplexValue {
        let wctx = ctx.widened(12);
        let prec = wctx.prec();
        let n_cut = 20_000u32;
        let zw = ComplexValue::new(
            Float::with_val(prec, &z.re),
            Float::with_val(prec, &z.im),
        );
        let euler = Float::with_val(prec, Constant::Euler);
        let mut acc = &(-&zw).scale(&euler) - &zw.ln();
        for n in 1..=n_cut {
            let zn = ComplexValue::new(
                (&zw.re / n).complete(prec),
                (&zw.im / n).complete(prec),
            );
            let one_plus = ComplexValue::new((&zn.re + 1u32).complete(prec), zn.im.clone());
            acc = &acc + &(&zn - &one_plus.ln());
        }
        // tail over n > N, expanded in powers of z/n
        let mut zpow = &zw * &zw;
        for k in 2..=24u32 {
            let mut zeta_tail = Float::with_val(prec, k).zeta();
            for n in 1..=n_cut {
                zeta_tail -= Float::with_val(prec, n).pow(-(k as i32));
            }
            let mut coeff = zeta_tail / k;
            if k % 2 == 1 {
                coeff = -coeff;
            }
            acc = &acc + &zpow.scale(&coeff);
            zpow = &zpow * &zw;
        }
        acc
    }

    #[test]
    fn trivial_values() {
        let c = ctx();
        let one = log_gamma(&c.complex(1, 0), &c).unwrap();
        assert!(one.abs() < c.eps());
        let half = log_gamma(&c.complex(0.5, 0), &c).unwrap();
        let want = c.pi().ln() / 2u32;
        assert!((half.re.clone() - want).abs() < c.eps());
        assert!(half.im.is_zero());
        let five = log_gamma(&c.complex(5, 0), &c).unwrap();
        let want = c.real(24).ln();
        assert!((five.re.clone() - want).abs() < c.eps());
    }

    #[test]
    fn matches_series_oracle() {
        let c = ctx();
        for &(re, im) in &[(0.25, 5.0), (0.75, 14.1), (0.25, 40.0), (3.0, 2.0)] {
            let z = c.complex(re, im);
            let got = log_gamma(&z, &c).unwrap();
            let want = series_oracle(&z, &c);
            let err = (&got - &want).abs();
            assert!(
                err < c.real(-40).exp10(),
                "oracle mismatch at {re}+{im}i: err = {:?}",
                err.to_f64()
            );
        }
    }

    #[test]
    fn recurrence_and_conjugation() {
        let c = ctx();
        let z = c.complex(0.3, 7.2);
        let lg = log_gamma(&z, &c).unwrap();
        // z + 1 in exact arithmetic (the f64 literal 1.3 is not 0.3 + 1)
        let zp1 = ComplexValue::new(z.re.clone() + 1u32, z.im.clone());
        let lg1 = log_gamma(&zp1, &c).unwrap();
        let diff = (&(&lg + &z.ln()) - &lg1).abs();
        assert!(diff < c.eps());
        let lgc = log_gamma(&z.conj(), &c).unwrap();
        assert!((&lgc - &lg.conj()).abs() < c.eps());
    }

    #[test]
    fn rejects_poles() {
        let c = ctx();
        assert!(matches!(
            log_gamma(&c.complex(0, 0), &c),
            Err(Error::GammaPole(_))
        ));
        assert!(matches!(
            log_gamma(&c.complex(-3, 0), &c),
            Err(Error::GammaPole(_))
        ));
    }

    /// Doubling exp-sinh quadrature for int_0^infty (x+u)^{s-1} e^{-(x+u)} du.
    /// Nodes are kept at working precision; f64 coordinates would cap the
    /// attainable accuracy near 10^-16.
    fn quadrature_oracle(s: &ComplexValue, x: &Float, ctx: &PrecisionContext) -> ComplexValue {
        let wctx = ctx.widened(10);
        let prec = wctx.prec();
        let half_pi = {
            let mut p = wctx.pi();
            p >>= 1;
            p
        };
        let sm1 = ComplexValue::new((&s.re - 1u32).complete(prec), s.im.clone());
        let integrand = |u: &Float| -> ComplexValue {
            let xu = (x + u).complete(prec);
            let v = ComplexValue::pow_real_base(&xu, &sm1);
            let damp = (-xu).exp();
            v.scale(&damp)
        };
        let eval_at = |t: &Float| -> ComplexValue {
            let (sh, ch) = t.clone().sinh_cosh(Float::new(prec));
            let u = (&half_pi * &sh).complete(prec).exp();
            // weight = (pi/2) cosh t * u
            let w = (&half_pi * &ch).complete(prec) * &u;
            integrand(&u).scale(&w)
        };
        let t_max = Float::with_val(prec, 5.6);
        let mut h = Float::with_val(prec, 0.7);
        let mut total = eval_at(&Float::new(prec));
        let mut j = 1u32;
        loop {
            let t = (&h * j).complete(prec);
            if t > t_max {
                break;
            }
            total = &total + &eval_at(&t);
            total = &total + &eval_at(&-t);
            j += 1;
        }
        let tol = wctx.real(-52).exp10();
        let mut integral = total.scale(&h);
        for level in 0..12 {
            // refine: fold in the odd multiples of h/2
            let mut step = h.clone();
            step >>= 1;
            let mut added = ComplexValue::zero(prec);
            let mut j = 0u32;
            loop {
                let t = (&step * (2 * j + 1)).complete(prec);
                if t > t_max {
                    break;
                }
                added = &added + &eval_at(&t);
                added = &added + &eval_at(&-t);
                j += 1;
            }
            total = &total + &added;
            let new_est = total.scale(&step);
            let diff = (&integral - &new_est).abs();
            integral = new_est;
            h = step;
            if level > 2 && diff < tol.clone() * (integral.abs() + 1u32) {
                break;
            }
        }
        integral
    }

    #[test]
    fn incomplete_gamma_trivial_values() {
        let c = ctx();
        let g11 = upper_incomplete_gamma(&c.complex(1, 0), &c.real(1), &c).unwrap();
        let want = c.real(-1).exp();
        assert!((g11.re.clone() - want).abs() < c.eps() && g11.im.clone().abs() < c.eps());
        // Gamma(2, 1/2) = (3/2) e^{-1/2}
        let g2 = upper_incomplete_gamma(&c.complex(2, 0), &c.real(0.5), &c).unwrap();
        let want = c.real(1.5) * c.real(-0.5).exp();
        assert!((g2.re.clone() - want).abs() < c.eps());
        // Gamma(1/2, 2) = sqrt(pi) erfc(sqrt 2)
        let gh = upper_incomplete_gamma(&c.complex(0.5, 0), &c.real(2), &c).unwrap();
        let want = c.pi().sqrt() * c.real(2).sqrt().erfc();
        assert!((gh.re.clone() - want).abs() < c.eps());
    }

    #[test]
    fn incomplete_gamma_matches_quadrature() {
        let c = ctx();
        let s = c.complex(6, 14);
        let mut x = c.pi();
        x *= 2u32;
        let got = upper_incomplete_gamma(&s, &x, &c).unwrap();
        let want = quadrature_oracle(&s, &x, &c);
        let rel = (&got - &want).abs() / want.abs();
        assert!(
            rel < c.real(-40).exp10(),
            "quadrature mismatch: rel = {:?}",
            rel.to_f64()
        );
    }

    #[test]
    fn incomplete_gamma_recurrence_across_regimes() {
        let c = ctx();
        // Gamma(s+1, x) = s Gamma(s, x) + x^s e^{-x}, straddling the
        // series/continued-fraction switchover
        for &(re, im, xv) in &[(2.5, 3.0, 20.0), (6.0, 14.0, 6.0), (1.5, 0.0, 11.0)] {
            let s = c.complex(re, im);
            let sp1 = c.complex(re + 1.0, im);
            let x = c.real(xv);
            let lhs = upper_incomplete_gamma(&sp1, &x, &c).unwrap();
            let g = upper_incomplete_gamma(&s, &x, &c).unwrap();
            let mut rhs = &s * &g;
            let mut boundary = ComplexValue::pow_real_base(&x, &s);
            boundary = boundary.scale(&(-x.clone()).exp());
            rhs = &rhs + &boundary;
            let rel = (&lhs - &rhs).abs() / lhs.abs();
            assert!(rel < c.eps(), "recurrence failed at ({re}, {im}, {xv})");
        }
    }
}
