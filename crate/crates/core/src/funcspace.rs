//! The supercommutative function algebra C[t^{1/2},t^{-1/2}] (x) Grass(N),
//! used as coefficient space for W(n) derivations, the contact embedding and
//! the order-three cocycle module of the extended K(4).
//!
//! Exponents of t live in (1/2)Z and are stored doubled.

use std::collections::BTreeMap;
use std::fmt;

use crate::grassmann::{del_mask, mask_parity, mul_mask, Mask};
use crate::scalar::{HalfInt, Rat};

/// Sparse element of C[t^{±1/2}] ⊗ Grass(N), keyed by (doubled t-power, mask).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuperPoly {
    pub n_gens: u32,
    pub terms: BTreeMap<(i64, Mask), Rat>,
}

impl SuperPoly {
    pub fn zero(n_gens: u32) -> SuperPoly {
        SuperPoly { n_gens, terms: BTreeMap::new() }
    }

    pub fn term(n_gens: u32, t2: i64, mask: Mask, c: Rat) -> SuperPoly {
        let mut p = SuperPoly::zero(n_gens);
        p.add_term(t2, mask, c);
        p
    }

    pub fn one(n_gens: u32) -> SuperPoly {
        SuperPoly::term(n_gens, 0, 0, Rat::ONE)
    }

    pub fn add_term(&mut self, t2: i64, mask: Mask, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((t2, mask)).or_insert(Rat::ZERO);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(t2, mask));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &SuperPoly) -> SuperPoly {
        let mut out = self.clone();
        for (&(t2, m), &c) in &other.terms {
            out.add_term(t2, m, c);
        }
        out
    }

    pub fn sub(&self, other: &SuperPoly) -> SuperPoly {
        self.add(&other.scale(-Rat::ONE))
    }

    pub fn scale(&self, c: Rat) -> SuperPoly {
        if c.is_zero() {
            return SuperPoly::zero(self.n_gens);
        }
        SuperPoly {
            n_gens: self.n_gens,
            terms: self.terms.iter().map(|(&k, &v)| (k, v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &SuperPoly) -> SuperPoly {
        let mut out = SuperPoly::zero(self.n_gens);
        for (&(ta, ma), &ca) in &self.terms {
            for (&(tb, mb), &cb) in &other.terms {
                if let Some((m, s)) = mul_mask(ma, mb) {
                    out.add_term(ta + tb, m, ca * cb * Rat::int(s as i128));
                }
            }
        }
        out
    }

    /// Ramond derivation D = t d/dt: multiplies each term by its t-exponent.
    pub fn ramond_d(&self) -> SuperPoly {
        let mut out = SuperPoly::zero(self.n_gens);
        for (&(t2, m), &c) in &self.terms {
            out.add_term(t2, m, c * HalfInt::from_doubled(t2).as_rat());
        }
        out
    }

    /// Left partial derivative with respect to generator slot `i`.
    pub fn del(&self, i: u32) -> SuperPoly {
        let mut out = SuperPoly::zero(self.n_gens);
        for (&(t2, m), &c) in &self.terms {
            if let Some((mm, s)) = del_mask(m, i) {
                out.add_term(t2, mm, c * Rat::int(s as i128));
            }
        }
        out
    }

    /// Euler derivation E = sum_i xi_i d/dxi_i: multiplies by Grassmann degree.
    pub fn euler(&self) -> SuperPoly {
        let mut out = SuperPoly::zero(self.n_gens);
        for (&(t2, m), &c) in &self.terms {
            out.add_term(t2, m, c * Rat::int(m.count_ones() as i128));
        }
        out
    }

    /// Multiply by t^{p} with p given doubled.
    pub fn shift_t(&self, t2: i64) -> SuperPoly {
        SuperPoly {
            n_gens: self.n_gens,
            terms: self.terms.iter().map(|(&(t, m), &c)| ((t + t2, m), c)).collect(),
        }
    }

    /// Parity, if homogeneous; None on mixed parity.
    pub fn parity(&self) -> Option<bool> {
        let mut p = None;
        for &(_, m) in self.terms.keys() {
            let q = mask_parity(m);
            match p {
                None => p = Some(q),
                Some(prev) if prev != q => return None,
                _ => {}
            }
        }
        p.or(Some(false))
    }
}

impl fmt::Display for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(t2, m), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            if t2 != 0 {
                write!(f, "*t^{}", HalfInt::from_doubled(t2))?;
            }
            for i in 0..self.n_gens {
                if m & (1 << i) != 0 {
                    write!(f, "*xi{}", i + 1)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivation_basics() {
        let p = SuperPoly::term(2, 4, 0b01, Rat::ONE); // t^2 xi1
        assert_eq!(p.ramond_d(), p.scale(Rat::int(2)));
        assert_eq!(p.del(0), SuperPoly::term(2, 4, 0, Rat::ONE));
        assert!(p.del(1).is_zero());
        assert_eq!(p.euler(), p);
        // left derivative picks up a sign past the first generator
        let q = SuperPoly::term(2, 0, 0b11, Rat::ONE); // xi1 xi2
        assert_eq!(q.del(1), SuperPoly::term(2, 0, 0b01, -Rat::ONE));
    }

    #[test]
    fn half_integer_exponents() {
        let p = SuperPoly::term(1, 1, 0b1, Rat::ONE); // t^{1/2} xi1
        assert_eq!(p.ramond_d(), p.scale(Rat::new(1, 2)));
    }
}
