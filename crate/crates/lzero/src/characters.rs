//! Dirichlet characters mod k: enumeration, parity, primitivity, conductor
//! reduction, and Gauss sums.
//!
//! Character values are exact rotation numbers: chi(n) = e^{2 pi i r(n)}
//! with r(n) rational, or 0 off the units. Everything group-theoretic stays
//! exact; floats only appear when a value is materialized at a precision.
//!
//! Canonical order: (Z/kZ)* is decomposed through the CRT into cyclic pieces
//! with fixed generators (ascending prime powers; for 2^e with e >= 3 the
//! pair -1 then 5; odd p^e the smallest primitive root, lifted if needed).
//! Characters are ordered lexicographically by exponent vector on those
//! generators, j = 1 being the principal character. Published tables that
//! index characters by software-specific labels are matched by value row,
//! never by j.

use crate::error::{Error, Result};
use crate::kernel::{ComplexValue, PrecisionContext};
use rug::{Float, Rational};
use std::collections::HashMap;

/// A Dirichlet character mod k, stored as its exact value row.
#[derive(Clone, Debug, PartialEq)]
pub struct DirichletCharacter {
    modulus: u64,
    /// slot i holds r(i+1) for n = 1..=k; None encodes chi(n) = 0
    rotations: Vec<Option<Rational>>,
    parity: u8,
    /// canonical index j in 1..=phi(k)
    index: usize,
}

/// A Gauss sum with the derived quantities the zero equation consumes.
#[derive(Clone, Debug)]
pub struct GaussSumValue {
    pub value: ComplexValue,
    pub modulus_squared: Float,
    pub argument: Float,
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn euler_phi(k: u64) -> u64 {
    factorize(k)
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .product::<u64>()
        .max(1)
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b: u128 = (base % m) as u128;
    let m128 = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

fn primitive_root(p: u64) -> u64 {
    let qs: Vec<u64> = factorize(p - 1).iter().map(|&(q, _)| q).collect();
    (2..p)
        .find(|&g| qs.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("every prime has a primitive root")
}

/// Generators (with orders) of (Z/p^e Z)*.
fn component_generators(p: u64, e: u32) -> Vec<(u64, u64)> {
    if p == 2 {
        return match e {
            1 => vec![],
            2 => vec![(3, 2)],
            _ => vec![(2u64.pow(e) - 1, 2), (5, 2u64.pow(e - 2))],
        };
    }
    let pe = p.pow(e);
    let g0 = primitive_root(p);
    let g = if e > 1 && pow_mod(g0, p - 1, p * p) == 1 {
        g0 + p
    } else {
        g0
    };
    vec![(g, pe / p * (p - 1))]
}

/// One CRT component: modulus p^e, its generators, and a full discrete-log
/// table residue -> exponent vector.
struct Component {
    prime_power: u64,
    orders: Vec<u64>,
    dlog: HashMap<u64, Vec<u64>>,
}

fn build_components(k: u64) -> Vec<Component> {
    factorize(k)
        .into_iter()
        .map(|(p, e)| {
            let pe = p.pow(e);
            let gens = component_generators(p, e);
            let mut dlog: HashMap<u64, Vec<u64>> = HashMap::new();
            dlog.insert(1 % pe, vec![]);
            for &(g, order) in &gens {
                let mut next = HashMap::new();
                for (&res, exps) in &dlog {
                    let mut cur: u128 = res as u128;
                    for t in 0..order {
                        let mut v = exps.clone();
                        v.push(t);
                        next.insert(cur as u64, v);
                        cur = cur * g as u128 % pe as u128;
                    }
                }
                dlog = next;
            }
            Component {
                prime_power: pe,
                orders: gens.iter().map(|&(_, d)| d).collect(),
                dlog,
            }
        })
        .collect()
}

fn reduce_mod_1(r: Rational) -> Rational {
    let f = r.clone().floor();
    r - f
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Canonical index j in 1..=phi(k); j = 1 is the principal character.
    pub fn index(&self) -> usize {
        self.index
    }

    /// Order a per chi(-1) = (-1)^a.
    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn rotations(&self) -> &[Option<Rational>] {
        &self.rotations
    }

    /// r(n) for any n >= 0, via periodicity; None means chi(n) = 0.
    pub fn rotation(&self, n: u64) -> Option<Rational> {
        let res = n % self.modulus;
        let slot = if res == 0 {
            self.modulus as usize - 1
        } else {
            res as usize - 1
        };
        self.rotations[slot].clone()
    }

    pub fn is_principal(&self) -> bool {
        self.rotations
            .iter()
            .flatten()
            .all(|r| r.cmp0() == std::cmp::Ordering::Equal)
    }

    /// chi(n) materialized at the context's precision.
    pub fn value(&self, n: u64, ctx: &PrecisionContext) -> ComplexValue {
        match self.rotation(n) {
            None => ComplexValue::zero(ctx.prec()),
            Some(r) => {
                let mut angle = ctx.pi();
                angle *= 2u32;
                angle *= ctx.rational_to_real(&r);
                let (s, c) = angle.sin_cos(Float::new(ctx.prec()));
                ComplexValue::new(c, s)
            }
        }
    }

    /// Build from an explicit rotation row, validating the character axioms
    /// and locating the row in the canonical enumeration.
    pub fn from_rotations(k: u64, rotations: Vec<Option<Rational>>) -> Result<Self> {
        if k == 0 || rotations.len() != k as usize {
            return Err(Error::InvalidCharacter(format!(
                "need exactly k = {k} rotation entries, got {}",
                rotations.len()
            )));
        }
        let phi = euler_phi(k);
        let canon: Vec<Option<Rational>> = rotations
            .into_iter()
            .map(|r| r.map(reduce_mod_1))
            .collect();
        for (i, r) in canon.iter().enumerate() {
            let n = i as u64 + 1;
            let coprime = gcd_u64(n % k.max(2), k) == 1 || k == 1;
            match r {
                None if coprime => {
                    return Err(Error::InvalidCharacter(format!(
                        "chi({n}) = 0 but gcd({n}, {k}) = 1"
                    )))
                }
                Some(_) if !coprime => {
                    return Err(Error::InvalidCharacter(format!(
                        "chi({n}) != 0 but gcd({n}, {k}) > 1"
                    )))
                }
                Some(r) => {
                    let scaled = r.clone() * Rational::from(phi);
                    if !scaled.is_integer() {
                        return Err(Error::InvalidCharacter(format!(
                            "chi({n}) is not a phi(k)-th root of unity (r = {r})"
                        )));
                    }
                }
                None => {}
            }
        }
        if canon[0] != Some(Rational::new()) {
            return Err(Error::InvalidCharacter("chi(1) must be 1".into()));
        }
        // complete multiplicativity on the stored row
        for n in 1..=k {
            for m in n..=k {
                let (a, b) = (&canon[n as usize - 1], &canon[m as usize - 1]);
                let prod_slot = {
                    let res = n * m % k;
                    if res == 0 {
                        k as usize - 1
                    } else {
                        res as usize - 1
                    }
                };
                let want = match (a, b) {
                    (Some(x), Some(y)) => Some(reduce_mod_1(x.clone() + y)),
                    _ => None,
                };
                if want != canon[prod_slot] {
                    return Err(Error::InvalidCharacter(format!(
                        "multiplicativity fails at ({n}, {m})"
                    )));
                }
            }
        }
        enumerate_characters(k)
            .into_iter()
            .find(|chi| chi.rotations == canon)
            .ok_or_else(|| {
                Error::InvalidCharacter("row passes axioms but matches no character".into())
            })
    }

    /// The conjugate character chi*.
    pub fn conjugate(&self) -> Self {
        let conj_rots: Vec<Option<Rational>> = self
            .rotations
            .iter()
            .map(|r| r.as_ref().map(|x| reduce_mod_1(-x.clone())))
            .collect();
        enumerate_characters(self.modulus)
            .into_iter()
            .find(|chi| chi.rotations == conj_rots)
            .expect("conjugate of a character is a character")
    }
}

/// All phi(k) characters mod k in canonical order (see module docs).
pub fn enumerate_characters(k: u64) -> Vec<DirichletCharacter> {
    assert!(k >= 1 && k <= 10_000_000, "modulus out of supported range");
    if k == 1 {
        return vec![DirichletCharacter {
            modulus: 1,
            rotations: vec![Some(Rational::new())],
            parity: 0,
            index: 1,
        }];
    }
    let comps = build_components(k);
    let orders: Vec<u64> = comps.iter().flat_map(|c| c.orders.iter().copied()).collect();
    let total: u64 = orders.iter().product::<u64>().max(1);

    // discrete logs for every unit n mod k, flattened across components
    let units: Vec<(u64, Vec<u64>)> = (1..=k)
        .filter(|&n| gcd_u64(n, k) == 1)
        .map(|n| {
            let mut exps = Vec::with_capacity(orders.len());
            for c in &comps {
                exps.extend(c.dlog[&(n % c.prime_power)].iter().copied());
            }
            (n, exps)
        })
        .collect();

    let mut out = Vec::with_capacity(total as usize);
    for idx in 0..total {
        // decode exponent vector, first generator most significant
        let mut c_vec = vec![0u64; orders.len()];
        let mut rem = idx;
        for i in (0..orders.len()).rev() {
            c_vec[i] = rem % orders[i];
            rem /= orders[i];
        }
        let mut rotations: Vec<Option<Rational>> = vec![None; k as usize];
        for (n, exps) in &units {
            let mut r = Rational::new();
            for ((&c, &t), &d) in c_vec.iter().zip(exps).zip(&orders) {
                r += Rational::from((c * t % d, d));
            }
            rotations[*n as usize - 1] = Some(reduce_mod_1(r));
        }
        let parity = match rotations[k as usize - 2].as_ref() {
            Some(r) if r.cmp0() == std::cmp::Ordering::Equal => 0,
            Some(r) if *r == Rational::from((1, 2)) => 1,
            _ => unreachable!("chi(-1) must be a square root of 1"),
        };
        out.push(DirichletCharacter {
            modulus: k,
            rotations,
            parity,
            index: idx as usize + 1,
        });
    }
    out
}

/// Character by canonical label (k, j), j in 1..=phi(k).
pub fn character_by_index(k: u64, j: usize) -> Result<DirichletCharacter> {
    let phi = euler_phi(k) as usize;
    if j == 0 || j > phi {
        return Err(Error::CharacterIndex {
            modulus: k,
            index: j,
            phi,
        });
    }
    Ok(enumerate_characters(k).swap_remove(j - 1))
}

/// Smallest f | k from which chi is induced, with the inducing primitive
/// character mod f.
pub fn conductor(chi: &DirichletCharacter) -> (u64, DirichletCharacter) {
    let k = chi.modulus;
    let mut divisors: Vec<u64> = (1..=k).filter(|d| k % d == 0).collect();
    divisors.sort_unstable();
    for f in divisors {
        // chi is induced mod f iff chi = 1 on units congruent to 1 mod f
        let trivial_on_kernel = (1..=k)
            .filter(|&n| n % f == 1 % f && gcd_u64(n, k) == 1)
            .all(|n| chi.rotation(n) == Some(Rational::new()));
        if !trivial_on_kernel {
            continue;
        }
        let mut rotations: Vec<Option<Rational>> = vec![None; f as usize];
        for m in 1..=f {
            if gcd_u64(m, f) != 1 {
                continue;
            }
            // lift m to a unit mod k in the same class mod f
            let n = (0..)
                .map(|t| m + t * f)
                .find(|&n| gcd_u64(n % k.max(2), k) == 1 || k == 1)
                .expect("CRT guarantees a coprime lift");
            rotations[m as usize - 1] = chi.rotation(n);
        }
        let inducer = DirichletCharacter::from_rotations(f, rotations)
            .expect("induced row is a character");
        return (f, inducer);
    }
    unreachable!("k divides k, so the loop always returns")
}

/// True iff chi is primitive (its own conductor).
pub fn is_primitive(chi: &DirichletCharacter) -> bool {
    conductor(chi).0 == chi.modulus
}

/// G(chi) = sum_{m=1}^{k} chi(m) e^{2 pi i m / k}, summed at doubled digits.
pub fn gauss_sum(chi: &DirichletCharacter, ctx: &PrecisionContext) -> GaussSumValue {
    let wctx = ctx.widened(ctx.digits());
    let prec = wctx.prec();
    let k = chi.modulus;
    let mut acc = ComplexValue::zero(prec);
    for m in 1..=k {
        if let Some(r) = chi.rotation(m) {
            // chi(m) e^{2 pi i m/k} = e^{2 pi i (r + m/k)}
            let rho = reduce_mod_1(r + Rational::from((m, k)));
            let mut angle = wctx.pi();
            angle *= 2u32;
            angle *= wctx.rational_to_real(&rho);
            let (s, c) = angle.sin_cos(Float::new(prec));
            acc = &acc + &ComplexValue::new(c, s);
        }
    }
    GaussSumValue {
        modulus_squared: acc.norm_sqr(),
        argument: acc.arg(),
        value: acc,
    }
}

/// Reference mod-7 characters used across the test suite, pinned by their
/// value rows rather than by any software's labeling convention.
#[cfg(test)]
pub(crate) mod test_rows {
    use super::*;

    fn rat(n: i64, d: i64) -> Option<Rational> {
        Some(Rational::from((n, d)))
    }

    /// Odd character mod 7 with chi(3) = e^{i pi / 3}.
    pub fn chi_7_2() -> DirichletCharacter {
        DirichletCharacter::from_rotations(
            7,
            vec![rat(0, 1), rat(1, 3), rat(1, 6), rat(2, 3), rat(5, 6), rat(1, 2), None],
        )
        .unwrap()
    }

    /// Even character mod 7 with chi(3) = e^{2 pi i / 3}.
    pub fn chi_7_3() -> DirichletCharacter {
        DirichletCharacter::from_rotations(
            7,
            vec![rat(0, 1), rat(2, 3), rat(1, 3), rat(1, 3), rat(2, 3), rat(0, 1), None],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::test_rows::{chi_7_2, chi_7_3};
    use super::*;

    fn rat(n: i64, d: u64) -> Option<Rational> {
        Some(Rational::from((n, d as i64)))
    }

    #[test]
    fn enumerates_small_moduli() {
        let k1 = enumerate_characters(1);
        assert_eq!(k1.len(), 1);
        assert!(k1[0].is_principal());
        assert_eq!(k1[0].rotation(5), Some(Rational::new()));

        let k3 = enumerate_characters(3);
        assert_eq!(k3.len(), 2);
        let nonprincipal = &k3[1];
        assert_eq!(nonprincipal.rotations(), &[rat(0, 1), rat(1, 2), None]);

        let k7 = enumerate_characters(7);
        assert_eq!(k7.len(), 6);
        assert!(k7.iter().any(|c| c.rotations() == chi_7_2().rotations()));
        assert!(k7.iter().any(|c| c.rotations() == chi_7_3().rotations()));
    }

    #[test]
    fn parity_matches_known_cases() {
        assert_eq!(chi_7_2().parity(), 1);
        assert_eq!(chi_7_3().parity(), 0);
        assert_eq!(enumerate_characters(1)[0].parity(), 0);
    }

    #[test]
    fn primitivity_and_conductor() {
        let chi32 = character_by_index(3, 2).unwrap();
        assert!(is_primitive(&chi32));
        assert!(is_primitive(&chi_7_2()));
        let (f, inducer) = conductor(&chi_7_2());
        assert_eq!(f, 7);
        assert_eq!(inducer, chi_7_2());

        let principal6 = character_by_index(6, 1).unwrap();
        assert!(!is_primitive(&principal6));
        assert_eq!(conductor(&principal6).0, 1);

        let chi62 = character_by_index(6, 2).unwrap();
        assert!(!is_primitive(&chi62));
        let (f, inducer) = conductor(&chi62);
        assert_eq!(f, 3);
        assert_eq!(inducer, chi32);

        let principal5 = character_by_index(5, 1).unwrap();
        assert_eq!(conductor(&principal5).0, 1);
    }

    #[test]
    fn gauss_sums_match_primitivity_law() {
        let ctx = PrecisionContext::new(50).unwrap();
        let tol = ctx.real(-47).exp10();

        let trivial = enumerate_characters(1).remove(0);
        let g = gauss_sum(&trivial, &ctx);
        assert!((g.modulus_squared.clone() - 1u32).abs() < tol);

        let chi32 = character_by_index(3, 2).unwrap();
        let g = gauss_sum(&chi32, &ctx);
        assert!((g.modulus_squared.clone() - 3u32).abs() < tol);

        let g = gauss_sum(&chi_7_2(), &ctx);
        assert!((g.modulus_squared.clone() - 7u32).abs() < tol);
        // hand-derived from the row: G = sum of 6 unit vectors, arg in Q2
        assert!((g.argument.to_f64() - 2.7448).abs() < 1e-3);

        // non-primitive: |G(chi_{6,2})|^2 = 3, not 6
        let chi62 = character_by_index(6, 2).unwrap();
        let g = gauss_sum(&chi62, &ctx);
        assert!((g.modulus_squared.clone() - 3u32).abs() < tol);
    }

    #[test]
    fn conjugation_involution_and_known_rows() {
        let chi32 = character_by_index(3, 2).unwrap();
        assert_eq!(chi32.conjugate(), chi32);
        let c = chi_7_2().conjugate();
        assert_eq!(
            c.rotations(),
            &[rat(0, 1), rat(2, 3), rat(5, 6), rat(1, 3), rat(1, 6), rat(1, 2), None]
        );
        assert_eq!(c.conjugate(), chi_7_2());
        let trivial = enumerate_characters(1).remove(0);
        assert_eq!(trivial.conjugate(), trivial);
    }

    #[test]
    fn axioms_hold_exhaustively() {
        for k in 1..=50u64 {
            for chi in enumerate_characters(k) {
                for n in 0..=2 * k {
                    // periodicity
                    assert_eq!(chi.rotation(n), chi.rotation(n + k), "period k={k}");
                    // zero exactly off the units
                    let coprime = if k == 1 { true } else { gcd_u64(n % k, k) == 1 };
                    assert_eq!(chi.rotation(n).is_some(), coprime, "support k={k} n={n}");
                    if let Some(r) = chi.rotation(n) {
                        // root-of-unity order divides phi(k)
                        assert!((r * Rational::from(euler_phi(k))).is_integer());
                    }
                    for m in 1..=2 * k {
                        let want = match (chi.rotation(n), chi.rotation(m)) {
                            (Some(a), Some(b)) => Some(reduce_mod_1(a + b)),
                            _ => None,
                        };
                        assert_eq!(chi.rotation(n * m), want, "mult k={k} ({n},{m})");
                    }
                }
                assert_eq!(chi.rotation(1), Some(Rational::new()));
            }
        }
    }

    #[test]
    fn primitive_gauss_moduli_up_to_50() {
        let ctx = PrecisionContext::new(30).unwrap();
        let tol = ctx.real(-27).exp10();
        for k in 1..=50u64 {
            for chi in enumerate_characters(k) {
                if !is_primitive(&chi) {
                    continue;
                }
                let g = gauss_sum(&chi, &ctx);
                let err = (g.modulus_squared.clone() - Float::with_val(32, k)).abs();
                assert!(err < tol, "|G|^2 != k at k={k} j={}", chi.index());
            }
        }
    }

    #[test]
    fn gauss_conjugation_law() {
        // G(chi*) = chi(-1) G(chi)*
        let ctx = PrecisionContext::new(40).unwrap();
        let tol = ctx.real(-37).exp10();
        for chi in [chi_7_2(), chi_7_3(), character_by_index(5, 3).unwrap()] {
            let lhs = gauss_sum(&chi.conjugate(), &ctx).value;
            let sign = chi.value(chi.modulus() - 1, &ctx);
            let rhs = &sign * &gauss_sum(&chi, &ctx).value.conj();
            assert!((&lhs - &rhs).abs() < tol);
        }
    }

    #[test]
    fn conductor_round_trip_reinduces() {
        for k in [6u64, 12, 15, 45] {
            for chi in enumerate_characters(k) {
                let (f, psi) = conductor(&chi);
                assert_eq!(k % f, 0);
                // inducing psi back up to k reproduces chi entrywise
                for n in 1..=k {
                    let want = if k == 1 || gcd_u64(n % k.max(2), k) == 1 {
                        psi.rotation(n)
                    } else {
                        None
                    };
                    assert_eq!(chi.rotation(n), want, "k={k} f={f} n={n}");
                }
            }
        }
    }

    #[test]
    fn group_closure_under_products() {
        for k in [5u64, 8, 12, 21] {
            let chars = enumerate_characters(k);
            for a in &chars {
                for b in &chars {
                    let prod: Vec<Option<Rational>> = (1..=k)
                        .map(|n| match (a.rotation(n), b.rotation(n)) {
                            (Some(x), Some(y)) => Some(reduce_mod_1(x + y)),
                            _ => None,
                        })
                        .collect();
                    assert!(
                        chars.iter().any(|c| c.rotations() == prod.as_slice()),
                        "product escapes the group at k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_malformed_rows() {
        // wrong length
        assert!(DirichletCharacter::from_rotations(3, vec![rat(0, 1)]).is_err());
        // nonzero where gcd > 1
        assert!(
            DirichletCharacter::from_rotations(3, vec![rat(0, 1), rat(1, 2), rat(0, 1)]).is_err()
        );
        // breaks multiplicativity: chi(2)^2 should be chi(4) = chi(1) = 1
        assert!(
            DirichletCharacter::from_rotations(3, vec![rat(0, 1), rat(1, 3), None]).is_err()
        );
        // chi(1) != 1
        assert!(
            DirichletCharacter::from_rotations(3, vec![rat(1, 2), rat(0, 1), None]).is_err()
        );
        // index out of range
        assert!(matches!(
            character_by_index(7, 7),
            Err(Error::CharacterIndex { phi: 6, .. })
        ));
    }
}
