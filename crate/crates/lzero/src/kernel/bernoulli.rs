//! Exact Bernoulli numbers with a process-wide cache.
//!
//! Convention B_1 = -1/2. Every consumer here (Stirling and Euler-Maclaurin
//! tails) only reads even indices, where the conventions agree anyway.

use crate::kernel::PrecisionContext;
use rug::{Integer, Rational};
use std::sync::{OnceLock, RwLock};

static CACHE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();

fn cache() -> &'static RwLock<Vec<Rational>> {
    CACHE.get_or_init(|| RwLock::new(vec![Rational::from(1)]))
}

/// B_n as an exact rational, computed by the defining recurrence
/// sum_{k=0}^{m} C(m+1, k) B_k = 0 and memoized append-only.
pub fn bernoulli(n: usize) -> Rational {
    {
        let c = cache().read().unwrap();
        if n < c.len() {
            return c[n].clone();
        }
    }
    let mut c = cache().write().unwrap();
    while c.len() <= n {
        let m = c.len();
        if m >= 3 && m % 2 == 1 {
            c.push(Rational::new());
            continue;
        }
        let mut acc = Rational::new();
        for (k, b) in c.iter().enumerate() {
            if b.cmp0() == std::cmp::Ordering::Equal {
                continue;
            }
            let binom = Integer::from(m as u32 + 1).binomial(k as u32);
            acc += b.clone() * binom;
        }
        acc /= -Rational::from(m as u32 + 1);
        c.push(acc);
    }
    c[n].clone()
}

/// B_n rounded into the context's working precision.
pub fn bernoulli_float(n: usize, ctx: &PrecisionContext) -> rug::Float {
    ctx.rational_to_real(&bernoulli(n))
}
