//! Mode-distribution layer: windowed locality and semi-locality testers for
//! structure-constant distributions, and the Maurer-Cartan algebra with its
//! relations.
//!
//! The windowed test is verified-necessary and sampled-sufficient: because
//! every bracket conserves total t-degree, vanishing of all window-interior
//! coefficients of (z1 - z2)^N [a(z1), b(z2)] is exact for these
//! distributions, not an approximation.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::AlgError;
use crate::liecore::{AlgebraDef, AlgebraElement};
use crate::scalar::Rat;

/// Mode lattice of one distribution a(z) = sum a(t^n) z^n.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum ModeRule {
    /// n in Z
    Ramond,
    /// n in 1/2 + Z
    NsOdd,
    /// n in 2Z
    TwistedEven,
    /// n in 2Z + 1
    TwistedOdd,
}

impl ModeRule {
    /// legality of a doubled t-power
    pub fn legal_t2(&self, t2: i64) -> bool {
        match self {
            ModeRule::Ramond => t2 % 2 == 0,
            ModeRule::NsOdd => t2 % 2 != 0,
            ModeRule::TwistedEven => t2 % 4 == 0,
            ModeRule::TwistedOdd => t2.rem_euclid(4) == 2,
        }
    }
}

/// A t-parametrized family a(t^n): the degree-zero shape plus its mode rule.
#[derive(Clone, Debug)]
pub struct ModeFamily {
    pub label: String,
    /// shape at t-degree zero; a(t^n) is the shift by n
    pub base: AlgebraElement,
    pub rule: ModeRule,
}

impl ModeFamily {
    pub fn new(label: &str, base: AlgebraElement, rule: ModeRule) -> ModeFamily {
        ModeFamily { label: label.to_string(), base, rule }
    }

    pub fn at_t2(&self, t2: i64) -> Option<AlgebraElement> {
        self.rule.legal_t2(t2).then(|| self.base.shift_t(t2))
    }
}

fn binomial(n: u32, k: u32) -> i128 {
    let mut acc = 1i128;
    for j in 0..k {
        acc = acc * ((n - j) as i128) / ((j + 1) as i128);
    }
    acc
}

/// Smallest N <= max_n such that every window-interior coefficient of
/// (z1 - z2)^N [a(z1), b(z2)] vanishes; the z-shift per power is step_t2.
fn kill_order(
    alg: &AlgebraDef,
    a: &ModeFamily,
    b: &ModeFamily,
    window: i64,
    max_n: u32,
    step_t2: i64,
) -> Result<Option<u32>, AlgError> {
    if window < max_n as i64 + 2 {
        return Err(AlgError::WindowTooSmall(format!(
            "window {window} too small for order {max_n}"
        )));
    }
    let w2 = 2 * window;
    'candidates: for n in 0..=max_n {
        let reach = (n as i64) * step_t2;
        // interior exponents: all shifted modes stay inside the window
        let mut p2 = -w2 + reach;
        while p2 <= w2 {
            let mut q2 = -w2 + reach;
            while q2 <= w2 {
                let mut acc = AlgebraElement::zero(&alg.id);
                for j in 0..=n {
                    let am = a.at_t2(p2 - (n - j) as i64 * step_t2);
                    let bm = b.at_t2(q2 - j as i64 * step_t2);
                    if let (Some(am), Some(bm)) = (am, bm) {
                        let sign = if j % 2 == 0 { 1 } else { -1 };
                        let c = Rat::int(sign * binomial(n, j));
                        acc = acc.add(&alg.bracket(&am, &bm)?.scale(c))?;
                    }
                }
                if !acc.is_zero() {
                    continue 'candidates;
                }
                q2 += 1;
            }
            p2 += 1;
        }
        return Ok(Some(n));
    }
    Ok(None)
}

/// Smallest N <= max_n with (z1 - z2)^N [a(z1), b(z2)] = 0 on the window
/// interior.
pub fn locality_order(
    alg: &AlgebraDef,
    a: &ModeFamily,
    b: &ModeFamily,
    window: i64,
    max_n: u32,
) -> Result<Option<u32>, AlgError> {
    kill_order(alg, a, b, window, max_n, 2)
}

/// Smallest M <= max_m with (z1^2 - z2^2)^M [a(z1), b(z2)] = 0 on the
/// window interior (the twisted mode lattices).
pub fn semilocality_order(
    alg: &AlgebraDef,
    a: &ModeFamily,
    b: &ModeFamily,
    window: i64,
    max_m: u32,
) -> Result<Option<u32>, AlgError> {
    kill_order(alg, a, b, window, max_m, 4)
}

// ---------------------------------------------------------------------------
// The Maurer-Cartan algebra
// ---------------------------------------------------------------------------

/// Element sum x_n a_n of the Maurer-Cartan algebra.
#[derive(Clone, PartialEq, Debug, Default, Serialize)]
pub struct McElement {
    pub terms: BTreeMap<i64, Rat>,
}

impl McElement {
    pub fn zero() -> McElement {
        McElement { terms: BTreeMap::new() }
    }

    pub fn gen(n: i64) -> McElement {
        let mut e = McElement::zero();
        e.add_term(n, Rat::ONE);
        e
    }

    pub fn add_term(&mut self, n: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(n).or_insert(Rat::ZERO);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&n);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &McElement) -> McElement {
        let mut out = self.clone();
        for (&n, &c) in &other.terms {
            out.add_term(n, c);
        }
        out
    }

    pub fn scale(&self, c: Rat) -> McElement {
        if c.is_zero() {
            return McElement::zero();
        }
        McElement { terms: self.terms.iter().map(|(&n, &v)| (n, v * c)).collect() }
    }
}

/// [a_n, a_m] = (n - m) a_{n+m} - n a_n + m a_m, extended bilinearly.
pub fn mc_bracket(x: &McElement, y: &McElement) -> McElement {
    let mut out = McElement::zero();
    for (&n, &cx) in &x.terms {
        for (&m, &cy) in &y.terms {
            let c = cx * cy;
            out.add_term(n + m, c * Rat::int((n - m) as i128));
            out.add_term(n, -(c * Rat::int(n as i128)));
            out.add_term(m, c * Rat::int(m as i128));
        }
    }
    out
}

/// Delta(n) = sum_{k=-1}^{n} (-1)^k C(n+1, k+1) a_k for n > 0, and the
/// mirrored sum on negative indices.
pub fn mc_delta(n: i64) -> McElement {
    assert!(n != 0, "Delta(0) is not defined");
    let size = n.unsigned_abs() as u32;
    let mut out = McElement::zero();
    for k in -1..=(size as i64) {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        let c = Rat::int(sign * binomial(size + 1, (k + 1) as u32));
        out.add_term(if n > 0 { k } else { -k }, c);
    }
    out
}

/// Membership in the derived algebra: sum x_k = 0 and sum k x_k = 0.
pub fn mc_derived_test(x: &McElement) -> bool {
    let s0: Rat = x.terms.values().copied().sum();
    let s1: Rat = x.terms.iter().map(|(&k, &v)| v * Rat::int(k as i128)).sum();
    s0.is_zero() && s1.is_zero()
}

/// Jacobi audit over generator triples with |indices| <= bound.
pub fn mc_jacobi_check(bound: i64) -> bool {
    for n in -bound..=bound {
        for m in -bound..=bound {
            for k in -bound..=bound {
                let (an, am, ak) = (McElement::gen(n), McElement::gen(m), McElement::gen(k));
                let t1 = mc_bracket(&an, &mc_bracket(&am, &ak));
                let t2 = mc_bracket(&am, &mc_bracket(&ak, &an));
                let t3 = mc_bracket(&ak, &mc_bracket(&an, &am));
                if !t1.add(&t2).add(&t3).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}
