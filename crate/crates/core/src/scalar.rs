//! Exact rational scalars, half-integer exponents and small multivariate
//! polynomials over the rationals.
//!
//! All arithmetic is exact. Scalars are reduced fractions over `i128`;
//! overflow aborts loudly (overflow checks stay on in every profile) instead
//! of ever wrapping.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::AlgError;

/// Exact rational number. Always stored reduced with a positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rat(Ratio<i128>);

impl Rat {
    pub const ZERO: Rat = Rat(Ratio::new_raw(0, 1));
    pub const ONE: Rat = Rat(Ratio::new_raw(1, 1));

    pub fn new(num: i128, den: i128) -> Rat {
        assert!(den != 0, "zero denominator");
        Rat(Ratio::new(num, den))
    }

    pub fn int(n: i128) -> Rat {
        Rat(Ratio::new_raw(n, 1))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "division by zero");
        Rat(self.0.recip())
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn pow(&self, e: u32) -> Rat {
        let mut acc = Rat::ONE;
        for _ in 0..e {
            acc *= *self;
        }
        acc
    }

    /// Exact integer value, if the fraction is an integer.
    pub fn to_integer(&self) -> Option<i128> {
        self.is_integer().then(|| self.numer())
    }

    /// Parses "p/q", "p" or "-p/q".
    pub fn parse(s: &str) -> Result<Rat, AlgError> {
        let s = s.trim();
        let mk_err = || AlgError::Parse(format!("bad rational `{s}`"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p: i128 = p.trim().parse().map_err(|_| mk_err())?;
                let q: i128 = q.trim().parse().map_err(|_| mk_err())?;
                if q == 0 {
                    return Err(mk_err());
                }
                Ok(Rat::new(p, q))
            }
            None => {
                let p: i128 = s.parse().map_err(|_| mk_err())?;
                Ok(Rat::int(p))
            }
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::int(n as i128)
    }
}

macro_rules! rat_binop {
    ($trait:ident, $m:ident, $op:tt) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                Rat(self.0 $op rhs.0)
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat(self.0 $op rhs.0)
            }
        }
    };
}

rat_binop!(Add, add, +);
rat_binop!(Sub, sub, -);
rat_binop!(Mul, mul, *);

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(self.0 / rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl AddAssign for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Rat {
    fn sub_assign(&mut self, rhs: Rat) {
        self.0 -= rhs.0;
    }
}

impl MulAssign for Rat {
    fn mul_assign(&mut self, rhs: Rat) {
        self.0 *= rhs.0;
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::ZERO, |a, b| a + b)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct R {
            num: i128,
            den: i128,
        }
        R { num: self.numer(), den: self.denom() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        #[derive(Deserialize)]
        struct R {
            num: i128,
            den: i128,
        }
        let r = R::deserialize(d)?;
        if r.den == 0 {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Rat::new(r.num, r.den))
    }
}

/// Element of ½·Z, stored doubled so NS and twisted mode bookkeeping stays
/// branch-free. Serializes as the doubled integer under the key "t2".
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct HalfInt {
    pub t2: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { t2: 0 };

    pub fn from_doubled(t2: i64) -> HalfInt {
        HalfInt { t2 }
    }

    pub fn int(n: i64) -> HalfInt {
        HalfInt { t2: 2 * n }
    }

    pub fn half(n: i64) -> HalfInt {
        HalfInt { t2: n }
    }

    pub fn is_integer(&self) -> bool {
        self.t2 % 2 == 0
    }

    pub fn as_rat(&self) -> Rat {
        Rat::new(self.t2 as i128, 2)
    }

    /// Parses "3", "-2", "1/2", "-3/2".
    pub fn parse(s: &str) -> Result<HalfInt, AlgError> {
        let r = Rat::parse(s)?;
        let doubled = r * Rat::int(2);
        match doubled.to_integer() {
            Some(t2) => Ok(HalfInt { t2: t2 as i64 }),
            None => Err(AlgError::Parse(format!("`{s}` is not a half-integer"))),
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.t2 % 2 == 0 {
            write!(f, "{}", self.t2 / 2)
        } else {
            write!(f, "{}/2", self.t2)
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt { t2: self.t2 + rhs.t2 }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt { t2: self.t2 - rhs.t2 }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { t2: -self.t2 }
    }
}

/// Sparse multivariate polynomial over the rationals with named variables.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MultiPoly {
    pub vars: Vec<String>,
    /// exponent tuple (one entry per variable) -> coefficient, no zeros stored
    pub terms: BTreeMap<Vec<u32>, Rat>,
}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> MultiPoly {
        MultiPoly { vars: vars.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[&str], c: Rat) -> MultiPoly {
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    pub fn var(vars: &[&str], name: &str) -> MultiPoly {
        let mut p = MultiPoly::zero(vars);
        let i = p.vars.iter().position(|v| v == name).expect("unknown variable");
        let mut exp = vec![0; p.vars.len()];
        exp[i] = 1;
        p.terms.insert(exp, Rat::ONE);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, exp: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(Rat::ZERO);
        *entry += c;
        if entry.is_zero() {
            let key: Vec<u32> = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .expect("zero entry present");
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, other.vars, "variable mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), *c);
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, other.vars, "variable mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), -*c);
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, other.vars, "variable mismatch");
        let mut out = MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert(exp, *ca * *cb);
            }
        }
        out
    }

    pub fn scale(&self, c: Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), *v * c)).collect(),
        }
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars.len(), "point arity mismatch");
        let mut acc = Rat::ZERO;
        for (exp, c) in &self.terms {
            let mut term = *c;
            for (e, x) in exp.iter().zip(point) {
                term *= x.pow(*e);
            }
            acc += term;
        }
        acc
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, e) in exp.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*{}", self.vars[i])?,
                    _ => write!(f, "*{}^{}", self.vars[i], e)?,
                }
            }
        }
        Ok(())
    }
}

/// Exact interpolation of a rational-valued function sampled on a full
/// product grid, one degree bound per variable.
///
/// The first `bound+1` distinct coordinates per variable are used as nodes;
/// every remaining sample must be reproduced exactly or the fit is rejected.
pub fn poly_fit(
    vars: &[&str],
    samples: &[(Vec<Rat>, Rat)],
    bounds: &[u32],
) -> Result<MultiPoly, AlgError> {
    let nv = vars.len();
    assert_eq!(bounds.len(), nv, "one bound per variable");
    if samples.is_empty() {
        return Err(AlgError::GridDeficient("no samples".into()));
    }
    for (p, _) in samples {
        if p.len() != nv {
            return Err(AlgError::GridDeficient("sample arity mismatch".into()));
        }
    }

    // Node set per variable: first bound+1 distinct coordinates, sorted.
    let mut nodes: Vec<Vec<Rat>> = Vec::with_capacity(nv);
    for v in 0..nv {
        let mut coords: Vec<Rat> = samples.iter().map(|(p, _)| p[v]).collect();
        coords.sort();
        coords.dedup();
        let need = bounds[v] as usize + 1;
        if coords.len() < need {
            return Err(AlgError::GridDeficient(format!(
                "variable {} has {} distinct coordinates, need {}",
                vars[v],
                coords.len(),
                need
            )));
        }
        coords.truncate(need);
        nodes.push(coords);
    }

    let lookup: BTreeMap<&[Rat], Rat> =
        samples.iter().map(|(p, v)| (p.as_slice(), *v)).collect();

    // Tensor-product Lagrange interpolation on the node grid.
    let total: usize = nodes.iter().map(|n| n.len()).product();
    let mut poly = MultiPoly::zero(vars);
    let mut idx = vec![0usize; nv];
    for _ in 0..total {
        let point: Vec<Rat> = idx.iter().enumerate().map(|(v, &i)| nodes[v][i]).collect();
        let value = *lookup.get(point.as_slice()).ok_or_else(|| {
            AlgError::GridDeficient(format!(
                "missing grid point ({})",
                point.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
            ))
        })?;
        if !value.is_zero() {
            let mut basis = MultiPoly::constant(vars, value);
            for v in 0..nv {
                let xi = nodes[v][idx[v]];
                for (j, &xj) in nodes[v].iter().enumerate() {
                    if j == idx[v] {
                        continue;
                    }
                    // (x_v - xj) / (xi - xj)
                    let denom = xi - xj;
                    let lin = MultiPoly::var(vars, vars[v])
                        .sub(&MultiPoly::constant(vars, xj))
                        .scale(denom.recip());
                    basis = basis.mul(&lin);
                }
            }
            poly = poly.add(&basis);
        }
        // advance the mixed-radix counter
        for v in (0..nv).rev() {
            idx[v] += 1;
            if idx[v] < nodes[v].len() {
                break;
            }
            idx[v] = 0;
        }
    }

    for (p, v) in samples {
        if poly.eval(p) != *v {
            return Err(AlgError::NoFit(format!(
                "sample ({}) -> {} not reproduced",
                p.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(","),
                v
            )));
        }
    }
    Ok(poly)
}

/// Deterministic stream of small rationals for parameter sampling.
pub struct RatSampler {
    rng: rand_chacha::ChaCha8Rng,
}

impl RatSampler {
    pub fn new(seed: u64) -> RatSampler {
        use rand::SeedableRng;
        RatSampler { rng: rand_chacha::ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Rational with numerator in [-max_num, max_num] and denominator in [1, max_den].
    pub fn rat(&mut self, max_num: i64, max_den: i64) -> Rat {
        use rand::Rng;
        let num = self.rng.gen_range(-max_num..=max_num);
        let den = self.rng.gen_range(1..=max_den);
        Rat::new(num as i128, den as i128)
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        use rand::Rng;
        self.rng.gen_range(lo..=hi)
    }
}
