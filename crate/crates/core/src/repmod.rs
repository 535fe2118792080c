//! Tensor-density modules over the centralizer frames, the mode-word
//! evaluator that straightens raising/lowering words against a highest
//! weight vector, the closed-form coefficient catalog it is checked
//! against, and finite-window Gram ranks.
//!
//! The simple quotient modules are never materialized: every classification
//! question is reduced to word evaluations on the highest component, where
//! the centralizer acts through Tens(lambda, delta, u) and its radical acts
//! as zero.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::AlgError;
use crate::liecore::{koszul, AlgebraDef, AlgebraElement, AlgebraId, BasisKey, Tag};
use crate::scalar::{HalfInt, MultiPoly, Rat};

/// Highest-weight parameters: the weight coordinates (for the extended K(4)
/// the third coordinate is the central charge), the density delta and the
/// monodromy u.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TensParams {
    pub lambda: Vec<Rat>,
    pub delta: Rat,
    pub u: Rat,
}

impl TensParams {
    pub fn new(lambda: Vec<Rat>, delta: Rat, u: Rat) -> TensParams {
        TensParams { lambda, delta, u }
    }
}

/// Element of Tens(lambda, delta, u): a finite combination of v(t^n) and,
/// in the contact frame, (xi v)(t^n); modes are doubled t-powers.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TensVector {
    pub terms: BTreeMap<(i64, bool), Rat>,
}

impl Default for TensVector {
    fn default() -> Self {
        TensVector::zero()
    }
}

impl TensVector {
    pub fn zero() -> TensVector {
        TensVector { terms: BTreeMap::new() }
    }

    pub fn unit(t2: i64) -> TensVector {
        let mut v = TensVector::zero();
        v.add_term(t2, false, Rat::ONE);
        v
    }

    pub fn add_term(&mut self, t2: i64, xi: bool, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((t2, xi)).or_insert(Rat::ZERO);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(t2, xi));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &TensVector) -> TensVector {
        let mut out = self.clone();
        for (&(t2, xi), &c) in &other.terms {
            out.add_term(t2, xi, c);
        }
        out
    }

    pub fn scale(&self, c: Rat) -> TensVector {
        if c.is_zero() {
            return TensVector::zero();
        }
        TensVector { terms: self.terms.iter().map(|(&k, &v)| (k, v * c)).collect() }
    }

    /// The coefficient on the given basis vector when the whole vector is a
    /// multiple of it (zero counts), else None.
    pub fn scalar_on(&self, t2: i64, xi: bool) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::ZERO),
            1 => {
                let (&key, &c) = self.terms.iter().next().expect("one term");
                (key == (t2, xi)).then_some(c)
            }
            _ => None,
        }
    }
}

impl fmt::Display for TensVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(t2, xi), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let name = if xi { "xi.v" } else { "v" };
            write!(f, "{c}*{name}(t^{})", HalfInt::from_doubled(t2))?;
        }
        Ok(())
    }
}

/// Classification of an F-degree-zero basis key inside the centralizer
/// frame Vir x| H(x)C[t,1/t] (or its contact variant).
enum FramePart {
    Vir,
    H(usize),
    XiVir,
    XiH(usize),
    Radical,
}

fn frame_part(alg: &AlgebraDef, k: &BasisKey) -> Result<FramePart, AlgError> {
    match &alg.id {
        AlgebraId::W { n } | AlgebraId::S { n, .. } => match k.tag {
            Tag::WD if k.mask == 0 => Ok(FramePart::Vir),
            Tag::WD if k.mask == (1 << n) - 1 => Ok(FramePart::Radical),
            Tag::WDel(i) if k.mask == (1u32 << i) => Ok(FramePart::H(i as usize)),
            _ => Err(AlgError::OutOfSubalgebra(format!("{k:?}"))),
        },
        AlgebraId::Contact { n, .. } => {
            if k.tag == Tag::Central {
                // central keys of the extension act through the last weight
                // coordinate, exactly like an extra Cartan direction
                return Ok(FramePart::H((*n as usize) / 2));
            }
            let m = (*n as u32) / 2;
            let has_xi = *n % 2 == 1 && (k.mask & (1 << (2 * m))) != 0;
            let mut pairs = Vec::new();
            for i in 0..m {
                let z = k.mask & (1 << (2 * i)) != 0;
                let e = k.mask & (1 << (2 * i + 1)) != 0;
                match (z, e) {
                    (true, true) => pairs.push(i as usize),
                    (false, false) => {}
                    _ => return Err(AlgError::OutOfSubalgebra(format!("{k:?}"))),
                }
            }
            Ok(match (pairs.len(), has_xi) {
                (0, false) => FramePart::Vir,
                (0, true) => FramePart::XiVir,
                (1, false) => FramePart::H(pairs[0]),
                (1, true) => FramePart::XiH(pairs[0]),
                _ => FramePart::Radical,
            })
        }
        AlgebraId::Ck6 => match k.tag {
            Tag::Ck6(0) => Ok(FramePart::Vir),
            Tag::Ck6(i) if (13..=15).contains(&i) => Ok(FramePart::H(i as usize - 13)),
            _ => Err(AlgError::OutOfSubalgebra(format!("{k:?}"))),
        },
        AlgebraId::K2 { .. } => Err(AlgError::OutOfSubalgebra(
            "the twisted algebra has no highest-weight frame here".into(),
        )),
    }
}

/// Pairing of the H-part with lambda: for CK(6) the Cartan basis consists of
/// the coroots, so the multiplier is lambda(h_i) in epsilon coordinates.
fn h_multiplier(alg: &AlgebraDef, i: usize, p: &TensParams) -> Rat {
    match &alg.id {
        AlgebraId::Ck6 => {
            let l = &p.lambda;
            match i {
                0 => l[0] + l[1],
                1 => l[1] - l[0],
                _ => l[2] - l[1],
            }
        }
        _ => p.lambda[i],
    }
}

/// The tabulated tensor-density action of one F-degree-zero element:
/// (fD) g = f D(g) + delta D(f) g + u f g, (h(x)f) g = lambda(h) f g, and in
/// the contact frame the odd generator acts with the half-shifted density.
pub fn tens_act(
    alg: &AlgebraDef,
    x: &AlgebraElement,
    v: &TensVector,
    p: &TensParams,
) -> Result<TensVector, AlgError> {
    let mut out = TensVector::zero();
    for (k, &c) in &x.terms {
        if !alg.key_fdeg(k).is_zero() {
            return Err(AlgError::OutOfSubalgebra(format!("{k:?} has nonzero F-degree")));
        }
        let part = frame_part(alg, k)?;
        let n = HalfInt::from_doubled(k.t2).as_rat();
        for (&(m2, xi), &vc) in &v.terms {
            let m = HalfInt::from_doubled(m2).as_rat();
            let coeff = c * vc;
            match part {
                FramePart::Vir => {
                    let delta = if xi { p.delta + Rat::new(1, 2) } else { p.delta };
                    out.add_term(k.t2 + m2, xi, coeff * (m + delta * n + p.u));
                }
                FramePart::H(i) => {
                    out.add_term(k.t2 + m2, xi, coeff * h_multiplier(alg, i, p));
                }
                FramePart::XiVir => {
                    if xi {
                        out.add_term(k.t2 + m2, false, coeff);
                    } else {
                        let val = m * Rat::new(1, 2) + p.delta * n + p.u * Rat::new(1, 2);
                        out.add_term(k.t2 + m2, true, coeff * val);
                    }
                }
                FramePart::XiH(i) => {
                    if !xi {
                        out.add_term(k.t2 + m2, true, coeff * h_multiplier(alg, i, p));
                    }
                }
                FramePart::Radical => {}
            }
        }
    }
    Ok(out)
}

/// An ordered list of homogeneous algebra elements to be applied to a
/// highest weight vector v(t^{hw}); the leftmost factor acts last.
#[derive(Clone, Debug)]
pub struct ModeWord {
    pub factors: Vec<AlgebraElement>,
    pub hw_t2: i64,
    pub hw_xi: bool,
}

impl ModeWord {
    pub fn new(factors: Vec<AlgebraElement>, hw_t2: i64) -> ModeWord {
        ModeWord { factors, hw_t2, hw_xi: false }
    }

    pub fn on_xi(mut self) -> ModeWord {
        self.hw_xi = true;
        self
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    /// bubble the rightmost raising factor standing left of a non-raising one
    RightmostDescent,
    /// bubble the leftmost such raising factor
    LeftmostDescent,
}

struct WorkItem {
    coeff: Rat,
    factors: Vec<AlgebraElement>,
    vec: TensVector,
}

/// Straightens the word against the highest weight vector: raising factors
/// annihilate it, centralizer factors act through Tens with the radical
/// acting as zero, and raising factors are commuted past the rest with
/// Koszul signs until one of the two rules applies.
pub fn act_on_highest_weight(
    alg: &AlgebraDef,
    word: &ModeWord,
    p: &TensParams,
    strategy: Strategy,
) -> Result<TensVector, AlgError> {
    // validate homogeneity and weight balance
    let mut net = vec![Rat::ZERO; alg.weight_len()];
    for f in &word.factors {
        alg.element_parity(f)
            .map_err(|_| AlgError::NonHomogeneousFactor(format!("{f}")))?;
        let w = alg
            .element_weight(f)
            .map_err(|_| AlgError::NonHomogeneousFactor(format!("{f}")))?;
        for (acc, x) in net.iter_mut().zip(&w) {
            *acc += *x;
        }
    }
    if net.iter().any(|x| !x.is_zero()) {
        return Err(AlgError::WeightImbalance(format!(
            "net weight ({})",
            net.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
        )));
    }

    let mut start = TensVector::zero();
    start.add_term(word.hw_t2, word.hw_xi, Rat::ONE);
    let mut queue = vec![WorkItem { coeff: Rat::ONE, factors: word.factors.clone(), vec: start }];
    let mut result = TensVector::zero();
    while let Some(item) = queue.pop() {
        let WorkItem { coeff, mut factors, vec } = item;
        let Some(last) = factors.last() else {
            result = result.add(&vec.scale(coeff));
            continue;
        };
        let fd = alg.element_fdeg(last)?;
        if fd.is_negative() {
            let fdegs: Vec<Rat> =
                factors.iter().map(|f| alg.element_fdeg(f).expect("homogeneous")).collect();
            let raising = |i: usize| !fdegs[i].is_negative() && !fdegs[i].is_zero();
            let descent = |i: usize| raising(i) && !raising(i + 1);
            let pos = match strategy {
                Strategy::RightmostDescent => (0..factors.len() - 1).rev().find(|&i| descent(i)),
                Strategy::LeftmostDescent => (0..factors.len() - 1).find(|&i| descent(i)),
            };
            // weight balance guarantees a raising factor somewhere
            let i = pos.expect("lowering tail without a raising factor");
            let pa = alg.element_parity(&factors[i]).expect("homogeneous");
            let pb = alg.element_parity(&factors[i + 1]).expect("homogeneous");
            let br = alg.bracket(&factors[i], &factors[i + 1])?;
            // branch with the pair contracted to its bracket
            if !br.is_zero() {
                let mut contracted = factors.clone();
                contracted.remove(i + 1);
                contracted[i] = br;
                queue.push(WorkItem { coeff, factors: contracted, vec: vec.clone() });
            }
            // branch with the pair swapped
            factors.swap(i, i + 1);
            queue.push(WorkItem { coeff: coeff * koszul(pa, pb), factors, vec });
        } else if fd.is_zero() {
            let last = factors.pop().expect("nonempty");
            let acted = tens_act(alg, &last, &vec, p)?;
            if !acted.is_zero() {
                queue.push(WorkItem { coeff, factors, vec: acted });
            }
        }
        // fd > 0: kills the highest weight vector; drop the branch
    }
    Ok(result)
}

// ---------------------------------------------------------------------------
// The identity-lemma catalog
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum LemmaId {
    WA,
    WB,
    WC,
    S,
    K4A,
    K4B,
    K4C,
    K4D,
    K4E,
    K4F,
    K4G,
    K4H,
    K4K,
    K3A,
    K3B,
}

pub const ALL_LEMMAS: [LemmaId; 15] = [
    LemmaId::WA,
    LemmaId::WB,
    LemmaId::WC,
    LemmaId::S,
    LemmaId::K4A,
    LemmaId::K4B,
    LemmaId::K4C,
    LemmaId::K4D,
    LemmaId::K4E,
    LemmaId::K4F,
    LemmaId::K4G,
    LemmaId::K4H,
    LemmaId::K4K,
    LemmaId::K3A,
    LemmaId::K3B,
];

impl LemmaId {
    pub fn name(&self) -> &'static str {
        match self {
            LemmaId::WA => "W(a)",
            LemmaId::WB => "W(b)",
            LemmaId::WC => "W(c)",
            LemmaId::S => "S",
            LemmaId::K4A => "K4(a)",
            LemmaId::K4B => "K4(b)",
            LemmaId::K4C => "K4(c)",
            LemmaId::K4D => "K4(d)",
            LemmaId::K4E => "K4(e)",
            LemmaId::K4F => "K4(f)",
            LemmaId::K4G => "K4(g)",
            LemmaId::K4H => "K4(h)",
            LemmaId::K4K => "K4(k)",
            LemmaId::K3A => "K3(a)",
            LemmaId::K3B => "K3(b)",
        }
    }
}

pub const MODE_VARS: [&str; 4] = ["nv", "nw", "nx", "ny"];

/// The closed-form coefficient polynomial of one catalog identity, with the
/// mode symbols substituted by the variables nv, nw, nx, ny.
pub fn closed_form(lemma: LemmaId, p: &TensParams) -> Result<MultiPoly, AlgError> {
    let vars = &MODE_VARS;
    let v = MultiPoly::var(vars, "nv");
    let w = MultiPoly::var(vars, "nw");
    let x = MultiPoly::var(vars, "nx");
    let y = MultiPoly::var(vars, "ny");
    let c = |r: Rat| MultiPoly::constant(vars, r);
    let delta = p.delta;
    let l = &p.lambda;
    let half = Rat::new(1, 2);
    let vw = v.sub(&w);
    let xy = x.sub(&y);
    Ok(match lemma {
        // delta (1 - delta - lambda_1)(D_v - D_w)(D_y - D_x): the proof's
        // D_v D_y coefficient pins the orientation opposite to the tabulated
        // final line
        LemmaId::WA => {
            let coeff = delta * (Rat::ONE - delta - l[0]);
            c(coeff).mul(&vw).mul(&y.sub(&x))
        }
        // lambda_k (lambda_1 + delta - 1)(D_x - D_y), instantiated at k = 2
        LemmaId::WB => {
            let coeff = l[1] * (l[0] + delta - Rat::ONE);
            c(coeff).mul(&xy)
        }
        LemmaId::WC => MultiPoly::zero(vars),
        // general weight: (lambda_1 + delta - 1)(delta + lambda_2)
        // (D_v - D_w)(D_x - D_y); on the S-stratum lambda_1 = 0 this is the
        // tabulated scalar (delta - lambda(h_1))(1 - delta) with lambda(h_1) =
        // -lambda_2, in the (D_y - D_x) orientation inherited from W(a)
        LemmaId::S => {
            let coeff = (l[0] + delta - Rat::ONE) * (delta + l[1]);
            c(coeff).mul(&vw).mul(&xy)
        }
        LemmaId::K4A => {
            let coeff = (delta - Rat::ONE + l[0] * half) * (delta - l[0] * half);
            c(coeff).mul(&vw).mul(&xy)
        }
        LemmaId::K4B => {
            let coeff = (l[1] - l[2] * half) * (delta - Rat::ONE + l[0] * half);
            c(coeff).mul(&y.sub(&x))
        }
        LemmaId::K4C => MultiPoly::zero(vars),
        LemmaId::K4D => {
            let coeff = (delta - l[0] * half) * (l[1] + l[2] * half);
            c(coeff).mul(&w.sub(&v))
        }
        LemmaId::K4E => c((l[1] + l[2] * half) * (l[1] - l[2] * half)),
        LemmaId::K4F | LemmaId::K4G | LemmaId::K4H | LemmaId::K4K => MultiPoly::zero(vars),
        LemmaId::K3A => {
            let coeff = (delta - Rat::ONE + l[0] * half) * (delta - l[0] * half);
            c(coeff).mul(&vw).mul(&xy)
        }
        LemmaId::K3B => {
            let coeff = (delta + (l[0] - Rat::ONE) * half) * (delta - (l[0] - Rat::ONE) * half);
            c(coeff).mul(&vw).mul(&xy)
        }
    })
}

/// The algebra a catalog identity lives on.
pub fn lemma_algebra(lemma: LemmaId) -> AlgebraDef {
    match lemma {
        LemmaId::WA | LemmaId::WB | LemmaId::WC | LemmaId::S => crate::algebras::w(2),
        LemmaId::K3A | LemmaId::K3B => crate::algebras::k(3),
        _ => crate::algebras::khat4(),
    }
}

/// The mode word of a catalog identity at integer modes (nv, nw, nx, ny)
/// applied to v(t^{nz}). The S-identity factors are expressed inside W(n).
pub fn lemma_word(
    lemma: LemmaId,
    alg: &AlgebraDef,
    modes: [i64; 4],
    nz: i64,
    gamma: Rat,
) -> ModeWord {
    let [nv, nw, nx, ny] = modes;
    let el = |k: BasisKey| alg.element(k, Rat::ONE);
    match lemma {
        LemmaId::WA | LemmaId::WB | LemmaId::WC | LemmaId::S => {
            let xi1d = |n: i64| el(BasisKey::wd(0b01, 2 * n));
            let h12 = |n: i64| el(BasisKey::wdel(0b11, 1, 2 * n));
            let del1 = |n: i64| el(BasisKey::wdel(0, 0, 2 * n));
            let a_s = |n: i64| {
                let mut e = el(BasisKey::wd(0b01, 2 * n));
                e.add_term(BasisKey::wdel(0b11, 1, 2 * n), Rat::int(n as i128) + gamma);
                e
            };
            let factors = match lemma {
                LemmaId::WA => vec![xi1d(nv), xi1d(nw), del1(nx), del1(ny)],
                LemmaId::WB => vec![h12(nv), xi1d(nw), del1(nx), del1(ny)],
                LemmaId::WC => vec![h12(nv), h12(nw), del1(nx), del1(ny)],
                LemmaId::S => vec![a_s(nv), a_s(nw), del1(nx), del1(ny)],
                _ => unreachable!(),
            };
            ModeWord::new(factors, 2 * nz)
        }
        LemmaId::K3A | LemmaId::K3B => {
            let z1 = |n: i64| el(BasisKey::gr(0b01, 2 * n));
            let e1 = |n: i64| el(BasisKey::gr(0b10, 2 * n));
            let word = ModeWord::new(vec![z1(nv), z1(nw), e1(nx), e1(ny)], 2 * nz);
            if lemma == LemmaId::K3B { word.on_xi() } else { word }
        }
        _ => {
            // extended K(4): zeta1* = zeta1 zeta2 eta2, eta1* = eta1 zeta2 eta2
            let z1 = |n: i64| el(BasisKey::gr(0b0001, 2 * n));
            let z1s = |n: i64| el(BasisKey::gr(0b1101, 2 * n));
            let e1 = |n: i64| el(BasisKey::gr(0b0010, 2 * n));
            let e1s = |n: i64| el(BasisKey::gr(0b1110, 2 * n));
            let factors = match lemma {
                LemmaId::K4A => vec![z1(nv), z1(nw), e1(nx), e1(ny)],
                LemmaId::K4B => vec![z1(nv), z1s(nw), e1(nx), e1(ny)],
                LemmaId::K4C => vec![z1s(nv), z1s(nw), e1(nx), e1(ny)],
                LemmaId::K4D => vec![z1(nv), z1(nw), e1(nx), e1s(ny)],
                LemmaId::K4E => vec![z1(nv), z1s(nw), e1(nx), e1s(ny)],
                LemmaId::K4F => vec![z1s(nv), z1s(nw), e1(nx), e1s(ny)],
                LemmaId::K4G => vec![z1(nv), z1(nw), e1s(nx), e1s(ny)],
                LemmaId::K4H => vec![z1(nv), z1s(nw), e1s(nx), e1s(ny)],
                LemmaId::K4K => vec![z1s(nv), z1s(nw), e1s(nx), e1s(ny)],
                _ => unreachable!(),
            };
            ModeWord::new(factors, 2 * nz)
        }
    }
}

/// Evaluates one catalog identity by the straightening oracle at the given
/// modes and compares with the closed form; returns (oracle, predicted).
pub fn lemma_eval(
    lemma: LemmaId,
    alg: &AlgebraDef,
    p: &TensParams,
    modes: [i64; 4],
    nz: i64,
    gamma: Rat,
) -> Result<(Rat, Rat), AlgError> {
    let word = lemma_word(lemma, alg, modes, nz, gamma);
    let out = act_on_highest_weight(alg, &word, p, Strategy::RightmostDescent)?;
    let total: i64 = 2 * (modes.iter().sum::<i64>() + nz);
    let oracle = out.scalar_on(total, word.hw_xi).ok_or_else(|| {
        AlgError::WeightImbalance(format!("output not a multiple of the base vector: {out}"))
    })?;
    let poly = closed_form(lemma, p)?;
    let point: Vec<Rat> = modes.iter().map(|&n| Rat::int(n as i128)).collect();
    Ok((oracle, poly.eval(&point)))
}

// ---------------------------------------------------------------------------
// Gram ranks
// ---------------------------------------------------------------------------

fn word_degree_t2(factors: &[AlgebraElement]) -> i64 {
    factors
        .iter()
        .map(|f| f.terms.keys().next().map(|k| k.t2).unwrap_or(0))
        .sum()
}

/// Rank over Q of the matrix act(raise_i . lower_j) evaluated as scalars on
/// a fixed highest-weight mode; monotone nondecreasing in the window.
pub fn gram_rank(
    alg: &AlgebraDef,
    p: &TensParams,
    raise_words: &[Vec<AlgebraElement>],
    lower_words: &[Vec<AlgebraElement>],
    hw_t2: i64,
) -> Result<usize, AlgError> {
    let mut matrix = Vec::with_capacity(raise_words.len());
    for r in raise_words {
        let mut row = Vec::with_capacity(lower_words.len());
        for l in lower_words {
            let mut factors = r.clone();
            factors.extend(l.iter().cloned());
            let t2 = word_degree_t2(&factors) + hw_t2;
            let word = ModeWord::new(factors, hw_t2);
            let out = act_on_highest_weight(alg, &word, p, Strategy::RightmostDescent)?;
            let val = out.scalar_on(t2, false).ok_or_else(|| {
                AlgError::WeightImbalance(format!("non-scalar output {out}"))
            })?;
            row.push(val);
        }
        matrix.push(row);
    }
    Ok(crate::linalg::rank(&matrix))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras;
    use crate::scalar::RatSampler;

    #[test]
    fn tens_act_examples() {
        let w2 = algebras::w(2);
        let p = TensParams::new(vec![Rat::int(3), Rat::ZERO], Rat::new(1, 3), Rat::new(2, 5));
        // (tD) vbar = (delta + u) t vbar
        let td = w2.element(BasisKey::wd(0, 2), Rat::ONE);
        let v = TensVector::unit(0);
        let out = tens_act(&w2, &td, &v, &p).unwrap();
        assert_eq!(out.scalar_on(2, false).unwrap(), p.delta + p.u);
        // (h (x) t^2) vbar = lambda(h) t^2 vbar
        let h1t2 = w2.element(BasisKey::wdel(1, 0, 4), Rat::ONE);
        let out = tens_act(&w2, &h1t2, &v, &p).unwrap();
        assert_eq!(out.scalar_on(4, false).unwrap(), Rat::int(3));
        // D on t^n: (n + u), the delta-term vanishing for constant f
        let d = w2.element(BasisKey::wd(0, 0), Rat::ONE);
        let vn = TensVector::unit(6);
        let out = tens_act(&w2, &d, &vn, &p).unwrap();
        assert_eq!(out.scalar_on(6, false).unwrap(), Rat::int(3) + p.u);
    }

    #[test]
    fn tens_act_is_a_representation() {
        // commutator identity on frame generator pairs, random parameters;
        // the K(3) frame exercises the odd contact sector as well
        let mut smp = RatSampler::new(23);
        for draw in 0..6 {
            let k3 = algebras::k(3);
            let p = TensParams::new(vec![smp.rat(4, 3)], smp.rat(4, 3), smp.rat(4, 3));
            let mut frame = Vec::new();
            for n in -2..=2i64 {
                frame.push(k3.element(BasisKey::gr(0, 2 * n), Rat::ONE)); // Vir
                frame.push(k3.element(BasisKey::gr(0b011, 2 * n), Rat::ONE)); // h1
                frame.push(k3.element(BasisKey::gr(0b100, 2 * n), Rat::ONE)); // xi
                frame.push(k3.element(BasisKey::gr(0b111, 2 * n), Rat::ONE)); // h1 xi
            }
            for x in &frame {
                let px = k3.element_parity(x).unwrap();
                for y in &frame {
                    let py = k3.element_parity(y).unwrap();
                    for mode in [-2i64, 0, 2] {
                        for xi in [false, true] {
                            let mut v = TensVector::zero();
                            v.add_term(mode, xi, Rat::ONE);
                            let lhs = tens_act(&k3, x, &tens_act(&k3, y, &v, &p).unwrap(), &p)
                                .unwrap()
                                .add(
                                    &tens_act(&k3, y, &tens_act(&k3, x, &v, &p).unwrap(), &p)
                                        .unwrap()
                                        .scale(-koszul(px, py)),
                                );
                            let rhs =
                                tens_act(&k3, &k3.bracket(x, y).unwrap(), &v, &p).unwrap();
                            assert_eq!(lhs, rhs, "draw {draw}: [{x}, {y}] on mode {mode}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn annihilation_and_imbalance() {
        let khat = algebras::khat4();
        let p = TensParams::new(
            vec![Rat::new(1, 2), Rat::new(3, 2), Rat::ONE],
            Rat::new(1, 4),
            Rat::ZERO,
        );
        // unbalanced word: error
        let z1 = khat.element(BasisKey::gr(0b0001, 2), Rat::ONE);
        let word = ModeWord::new(vec![z1.clone()], 0);
        assert!(matches!(
            act_on_highest_weight(&khat, &word, &p, Strategy::RightmostDescent),
            Err(AlgError::WeightImbalance(_))
        ));
        // balanced word ending in a raising factor: annihilates
        let e1 = khat.element(BasisKey::gr(0b0010, -2), Rat::ONE);
        let word = ModeWord::new(vec![e1, z1], 0);
        let out = act_on_highest_weight(&khat, &word, &p, Strategy::RightmostDescent).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn lemma_spot_checks() {
        // the K4(e) coefficient (l2 + lc/2)(l2 - lc/2) is mode-free
        let khat = algebras::khat4();
        let p = TensParams::new(
            vec![Rat::new(1, 2), Rat::new(3, 2), Rat::new(5, 3)],
            Rat::new(1, 7),
            Rat::new(2, 9),
        );
        let (oracle, predicted) =
            lemma_eval(LemmaId::K4E, &khat, &p, [1, -2, 0, 2], 1, Rat::ZERO).unwrap();
        assert_eq!(oracle, predicted, "oracle {oracle} vs predicted {predicted}");
        // the W(c) word vanishes identically
        let w2 = algebras::w(2);
        let pw = TensParams::new(vec![Rat::new(2, 3), Rat::new(1, 5)], Rat::new(3, 4), Rat::ONE);
        let (oracle, predicted) =
            lemma_eval(LemmaId::WC, &w2, &pw, [2, -1, 1, 0], -1, Rat::ZERO).unwrap();
        assert_eq!(oracle, Rat::ZERO);
        assert_eq!(predicted, Rat::ZERO);
    }

    #[test]
    fn straightening_is_confluent() {
        // the two straightening strategies agree on random weight-balanced
        // words of length 4
        let khat = algebras::khat4();
        let mut smp = RatSampler::new(99);
        let p = TensParams::new(
            vec![smp.rat(4, 3), smp.rat(4, 3), smp.rat(4, 3)],
            smp.rat(4, 3),
            smp.rat(4, 3),
        );
        let raising = [0b0001u32, 0b1101];
        let lowering = [0b0010u32, 0b1110];
        let middles = [0b0000u32, 0b0011, 0b1100];
        for trial in 0..100 {
            let r = khat.element(
                BasisKey::gr(raising[smp.int(0, 1) as usize], 2 * smp.int(-2, 2)),
                Rat::ONE,
            );
            let l = khat.element(
                BasisKey::gr(lowering[smp.int(0, 1) as usize], 2 * smp.int(-2, 2)),
                Rat::ONE,
            );
            let m1 = khat.element(
                BasisKey::gr(middles[smp.int(0, 2) as usize], 2 * smp.int(-2, 2)),
                Rat::ONE,
            );
            let m2 = khat.element(
                BasisKey::gr(middles[smp.int(0, 2) as usize], 2 * smp.int(-2, 2)),
                Rat::ONE,
            );
            let mut items = vec![r, l, m1, m2];
            for i in (1..items.len()).rev() {
                let j = smp.int(0, i as i64) as usize;
                items.swap(i, j);
            }
            let word = ModeWord::new(items, 2 * smp.int(-1, 1));
            let a = act_on_highest_weight(&khat, &word, &p, Strategy::RightmostDescent).unwrap();
            let b = act_on_highest_weight(&khat, &word, &p, Strategy::LeftmostDescent).unwrap();
            assert_eq!(a, b, "trial {trial}");
        }
    }

    #[test]
    fn gram_rank_examples() {
        let khat = algebras::khat4();
        // at lambda = (1/2,1/2), lambda_c = 1, delta = 1/4 every catalog
        // identity vanishes: the block has rank 0
        let p0 = TensParams::new(
            vec![Rat::new(1, 2), Rat::new(1, 2), Rat::ONE],
            Rat::new(1, 4),
            Rat::new(1, 3),
        );
        let raise: Vec<Vec<AlgebraElement>> = (0..3i64)
            .map(|n| {
                vec![
                    khat.element(BasisKey::gr(0b0001, 2 * n), Rat::ONE),
                    khat.element(BasisKey::gr(0b0001, -2 * n + 2), Rat::ONE),
                ]
            })
            .collect();
        let lower: Vec<Vec<AlgebraElement>> = (0..3i64)
            .map(|n| {
                vec![
                    khat.element(BasisKey::gr(0b0010, 2 * n), Rat::ONE),
                    khat.element(BasisKey::gr(0b0010, -2 * n - 2), Rat::ONE),
                ]
            })
            .collect();
        assert_eq!(gram_rank(&khat, &p0, &raise, &lower, 0).unwrap(), 0);
        // same lambda with delta = 1/2: rank >= 1
        let p1 = TensParams::new(p0.lambda.clone(), Rat::new(1, 2), p0.u);
        assert!(gram_rank(&khat, &p1, &raise, &lower, 0).unwrap() >= 1);
        // empty word lists
        assert_eq!(gram_rank(&khat, &p0, &[], &[], 0).unwrap(), 0);
    }
}
