//! Principal branch of the Lambert W function.

use crate::error::{Error, Result};
use crate::kernel::PrecisionContext;
use rug::ops::CompleteRound;
use rug::Float;

/// W_0(x): the real solution w >= -1 of w e^w = x, for x >= -1/e.
///
/// Away from the branch point: double-precision asymptotic seed polished by
/// Halley iterations at working precision. Near the branch point Halley's
/// residual drowns in cancellation noise, so the expansion in
/// p = sqrt(2(ex+1)) takes over; W is ill-conditioned there anyway (the
/// derivative blows up), which callers inherit no matter the method.
pub fn lambert_w0(x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let prec = ctx.prec();
    if x.is_zero() {
        return Ok(Float::new(prec));
    }
    let e = Float::with_val(prec, 1u32).exp();
    // ex1 = e*x + 1 decides the domain and the branch-point regime.
    let ex1 = (&e * x).complete(prec) + 1u32;
    if ex1 < 0u32 {
        let mut margin = ctx.working_eps();
        margin *= 8u32;
        if -ex1.clone() > margin {
            return Err(Error::LambertDomain(format!(
                "x = {} is below -1/e",
                x.to_f64()
            )));
        }
        return Ok(Float::with_val(prec, -1i32));
    }

    // branch-point series in p = sqrt(2(ex+1)), error O(p^6)
    let p = (ex1 * 2u32).sqrt();
    let series_cut = ctx.working_eps().root(6);
    if p < series_cut {
        let p2 = (&p * &p).complete(prec);
        let p3 = (&p2 * &p).complete(prec);
        let p4 = (&p2 * &p2).complete(prec);
        let p5 = (&p4 * &p).complete(prec);
        let mut w = Float::with_val(prec, -1i32);
        w += &p;
        w -= p2 / 3u32;
        w += p3 * 11u32 / 72u32;
        w -= p4 * 43u32 / 540u32;
        w += p5 * 769u32 / 17280u32;
        return Ok(w);
    }

    let xf = x.to_f64();
    let seed: f64 = if xf < -0.25 {
        let pf = p.to_f64();
        -1.0 + pf - pf * pf / 3.0 + 11.0 * pf.powi(3) / 72.0
    } else if xf > std::f64::consts::E {
        let l1 = xf.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    } else {
        xf.ln_1p()
    };

    let mut w = Float::with_val(prec, seed);
    let mut tol = Float::with_val(prec, 1u32);
    tol >>= prec - 6;
    // noise-floor acceptance: near the branch point the computable residual
    // bottoms out around eps/p; accept a stalled step once it is tiny
    let mut stall = Float::with_val(prec, 1u32);
    stall >>= prec / 3;
    let mut prev_step = Float::with_val(prec, rug::float::Special::Infinity);
    for _ in 0..200 {
        let ew = w.clone().exp();
        // f = w e^w - x
        let f = (&w * &ew).complete(prec) - x;
        // Halley: w -= f / (e^w (w+1) - (w+2) f / (2w+2))
        let wp1 = (&w + 1u32).complete(prec);
        let d1 = (&ew * &wp1).complete(prec);
        let wp2 = (&w + 2u32).complete(prec);
        let corr = (&wp2 * &f).complete(prec) / (wp1 * 2u32);
        let step = f / (d1 - corr);
        w -= &step;
        let mag = step.abs();
        let scale = (Float::with_val(prec, 1u32) + w.clone().abs()) * &tol;
        if mag <= scale {
            return Ok(w);
        }
        let stall_scale = (Float::with_val(prec, 1u32) + w.clone().abs()) * &stall;
        if mag >= prev_step && mag <= stall_scale {
            return Ok(w);
        }
        prev_step = mag;
    }
    Err(Error::PrecisionExhausted { op: "lambert_w0" })
}
