//! The Grassmann superalgebra Grass(N) with its supercommutative product,
//! super-Poisson bracket, trace and the split/standard basis change.
//!
//! Monomials are bitmasks over generator slots in a fixed ascending order;
//! every element is stored with canonically ordered monomials, so signs are
//! normalized at construction and equality is literal.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use smallvec::SmallVec;

use crate::error::AlgError;
use crate::scalar::Rat;

/// Monomial = subset of generator slots, ascending slot order.
pub type Mask = u32;

pub fn mask_degree(m: Mask) -> u32 {
    m.count_ones()
}

pub fn mask_parity(m: Mask) -> bool {
    m.count_ones() % 2 == 1
}

/// Sign of concatenating ascending monomials `a` then `b` and resorting,
/// or None when they overlap.
pub fn mul_mask(a: Mask, b: Mask) -> Option<(Mask, i32)> {
    if a & b != 0 {
        return None;
    }
    let mut sign = 1i32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        // generators of `a` above slot j must jump over gen j
        let above = (a >> (j + 1)).count_ones();
        if above % 2 == 1 {
            sign = -sign;
        }
        bb &= bb - 1;
    }
    Some((a | b, sign))
}

/// Left derivative by slot `i`: sign is (-1)^{#slots below i}.
pub fn del_mask(m: Mask, i: u32) -> Option<(Mask, i32)> {
    if m & (1 << i) == 0 {
        return None;
    }
    let below = (m & ((1u32 << i) - 1)).count_ones();
    let sign = if below % 2 == 0 { 1 } else { -1 };
    Some((m & !(1 << i), sign))
}

/// Bilinear form on the odd generators, fixing the Poisson structure.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum GrassForm {
    /// Split generators zeta_1,eta_1,...,zeta_m,eta_m and, when `extra` is
    /// set, one more generator xi with [xi,xi]=1. [zeta_i,eta_i]=1, all other
    /// generator brackets zero.
    Split { pairs: u32, extra: bool },
    /// Standard generators xi_1..xi_N with [xi_i,xi_j] = delta_ij * diag[i].
    Diagonal(Vec<Rat>),
}

impl GrassForm {
    pub fn split(n: u32) -> GrassForm {
        GrassForm::Split { pairs: n / 2, extra: n % 2 == 1 }
    }

    /// The standard form [xi_i,xi_j] = delta_ij.
    pub fn std(n: u32) -> GrassForm {
        GrassForm::Diagonal(vec![Rat::ONE; n as usize])
    }

    pub fn n_gens(&self) -> u32 {
        match self {
            GrassForm::Split { pairs, extra } => 2 * pairs + u32::from(*extra),
            GrassForm::Diagonal(d) => d.len() as u32,
        }
    }

    /// [g_i, g_j] on single generators.
    pub fn pairing(&self, i: u32, j: u32) -> Rat {
        match self {
            GrassForm::Split { pairs, extra } => {
                let n_paired = 2 * pairs;
                if i < n_paired && j < n_paired {
                    // slots 2k (zeta_{k+1}) and 2k+1 (eta_{k+1}) pair to 1
                    if i / 2 == j / 2 && i != j {
                        Rat::ONE
                    } else {
                        Rat::ZERO
                    }
                } else if i == j && i == n_paired && *extra {
                    Rat::ONE
                } else {
                    Rat::ZERO
                }
            }
            GrassForm::Diagonal(d) => {
                if i == j {
                    d[i as usize]
                } else {
                    Rat::ZERO
                }
            }
        }
    }

    pub fn gen_name(&self, slot: u32) -> String {
        match self {
            GrassForm::Split { pairs, .. } => {
                if slot < 2 * pairs {
                    if slot % 2 == 0 {
                        format!("zeta{}", slot / 2 + 1)
                    } else {
                        format!("eta{}", slot / 2 + 1)
                    }
                } else {
                    "xi".to_string()
                }
            }
            GrassForm::Diagonal(_) => format!("xi{}", slot + 1),
        }
    }

    pub fn slot_of(&self, name: &str) -> Option<u32> {
        (0..self.n_gens()).find(|&s| self.gen_name(s) == name)
    }
}

/// One Grassmann algebra with its Poisson tables precomputed.
#[derive(Clone)]
pub struct GrassAlgebra {
    pub form: GrassForm,
    n: u32,
    /// poisson[a][b] -> terms
    poisson: Vec<Vec<SmallVec<[(Mask, Rat); 4]>>>,
}

pub type GrassTerms = SmallVec<[(Mask, Rat); 4]>;

impl GrassAlgebra {
    pub fn new(form: GrassForm) -> GrassAlgebra {
        let n = form.n_gens();
        assert!(n <= 16, "Grassmann rank too large");
        let size = 1usize << n;
        let mut poisson = vec![vec![SmallVec::new(); size]; size];
        // fill by increasing degree of the first argument so recursion is a lookup
        let mut masks: Vec<Mask> = (0..size as u32).collect();
        masks.sort_by_key(|m| m.count_ones());
        for &a in &masks {
            for b in 0..size as u32 {
                poisson[a as usize][b as usize] = Self::poisson_raw(&form, &poisson, a, b);
            }
        }
        GrassAlgebra { form, n, poisson }
    }

    pub fn n_gens(&self) -> u32 {
        self.n
    }

    pub fn top_mask(&self) -> Mask {
        (1u32 << self.n) - 1
    }

    /// Poisson bracket of single monomials, computed by the Leibniz rules:
    /// [g, m] = sum_p (-1)^p [g, m_p] (m \ m_p)
    /// [g a', b] = g [a', b] + (-1)^{|a'|} a' [g, b]
    fn poisson_raw(
        form: &GrassForm,
        table: &[Vec<SmallVec<[(Mask, Rat); 4]>>],
        a: Mask,
        b: Mask,
    ) -> SmallVec<[(Mask, Rat); 4]> {
        let mut out: BTreeMap<Mask, Rat> = BTreeMap::new();
        let deg_a = a.count_ones();
        if deg_a == 0 || b == 0 {
            return SmallVec::new();
        }
        if deg_a == 1 {
            let g = a.trailing_zeros();
            let mut pos = 0i32;
            let mut bb = b;
            while bb != 0 {
                let j = bb.trailing_zeros();
                let pair = form.pairing(g, j);
                if !pair.is_zero() {
                    let sign = if pos % 2 == 0 { Rat::ONE } else { -Rat::ONE };
                    let rest = b & !(1 << j);
                    *out.entry(rest).or_insert(Rat::ZERO) += pair * sign;
                }
                pos += 1;
                bb &= bb - 1;
            }
        } else {
            // a = g * a' with g the lowest slot
            let g_slot = a.trailing_zeros();
            let g: Mask = 1 << g_slot;
            let rest = a & !g;
            // g * [a', b]
            for &(m, c) in &table[rest as usize][b as usize] {
                if let Some((mm, s)) = mul_mask(g, m) {
                    *out.entry(mm).or_insert(Rat::ZERO) += c * Rat::int(s as i128);
                }
            }
            // (-1)^{|a'|} a' * [g, b]
            let sgn = if rest.count_ones() % 2 == 0 { Rat::ONE } else { -Rat::ONE };
            for &(m, c) in &table[g as usize][b as usize] {
                if let Some((mm, s)) = mul_mask(rest, m) {
                    *out.entry(mm).or_insert(Rat::ZERO) += c * sgn * Rat::int(s as i128);
                }
            }
        }
        out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn poisson_masks(&self, a: Mask, b: Mask) -> &GrassTerms {
        &self.poisson[a as usize][b as usize]
    }
}

/// Sparse exact linear combination of Grassmann monomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GrassElement {
    pub form: GrassForm,
    pub terms: BTreeMap<Mask, Rat>,
}

impl GrassElement {
    pub fn zero(form: &GrassForm) -> GrassElement {
        GrassElement { form: form.clone(), terms: BTreeMap::new() }
    }

    pub fn monomial(form: &GrassForm, mask: Mask, c: Rat) -> GrassElement {
        let mut e = GrassElement::zero(form);
        e.add_term(mask, c);
        e
    }

    /// Product of generators given by slots, in the given order; the stored
    /// coefficient carries the reordering sign.
    pub fn word(form: &GrassForm, slots: &[u32], c: Rat) -> GrassElement {
        let mut mask: Mask = 0;
        let mut sign = 1i32;
        for &s in slots {
            match mul_mask(mask, 1 << s) {
                Some((m, sg)) => {
                    mask = m;
                    sign *= sg;
                }
                None => return GrassElement::zero(form),
            }
        }
        GrassElement::monomial(form, mask, c * Rat::int(sign as i128))
    }

    pub fn add_term(&mut self, mask: Mask, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(mask).or_insert(Rat::ZERO);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &GrassElement) -> Result<GrassElement, AlgError> {
        self.check_kind(other)?;
        let mut out = self.clone();
        for (&m, &c) in &other.terms {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: Rat) -> GrassElement {
        let mut out = GrassElement::zero(&self.form);
        for (&m, &v) in &self.terms {
            out.add_term(m, v * c);
        }
        out
    }

    fn check_kind(&self, other: &GrassElement) -> Result<(), AlgError> {
        if self.form != other.form {
            return Err(AlgError::BasisMismatch(format!("{:?} vs {:?}", self.form, other.form)));
        }
        Ok(())
    }

    /// Parity, if homogeneous.
    pub fn parity(&self) -> Option<bool> {
        let mut p = None;
        for m in self.terms.keys() {
            let q = mask_parity(*m);
            match p {
                None => p = Some(q),
                Some(prev) if prev != q => return None,
                _ => {}
            }
        }
        p.or(Some(false))
    }
}

impl fmt::Display for GrassElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *m == 0 {
                write!(f, "{c}")?;
                continue;
            }
            if *c != Rat::ONE {
                write!(f, "{c}*")?;
            }
            let names: Vec<String> =
                (0..32).filter(|i| m & (1 << i) != 0).map(|i| self.form.gen_name(i)).collect();
            write!(f, "{}", names.join("."))?;
        }
        Ok(())
    }
}

/// Supercommutative product with Koszul signs.
pub fn gr_mul(alg: &GrassAlgebra, a: &GrassElement, b: &GrassElement) -> Result<GrassElement, AlgError> {
    a.check_kind(b)?;
    if a.form != alg.form {
        return Err(AlgError::BasisMismatch("element does not match algebra".into()));
    }
    let mut out = GrassElement::zero(&a.form);
    for (&ma, &ca) in &a.terms {
        for (&mb, &cb) in &b.terms {
            if let Some((m, s)) = mul_mask(ma, mb) {
                out.add_term(m, ca * cb * Rat::int(s as i128));
            }
        }
    }
    Ok(out)
}

/// Super-Poisson bracket extended from the generator pairings by the Leibniz
/// rule; drops total degree by two.
pub fn gr_poisson(
    alg: &GrassAlgebra,
    a: &GrassElement,
    b: &GrassElement,
) -> Result<GrassElement, AlgError> {
    a.check_kind(b)?;
    if a.form != alg.form {
        return Err(AlgError::BasisMismatch("element does not match algebra".into()));
    }
    let mut out = GrassElement::zero(&a.form);
    for (&ma, &ca) in &a.terms {
        for (&mb, &cb) in &b.terms {
            for &(m, ref c) in alg.poisson_masks(ma, mb) {
                out.add_term(m, ca * cb * *c);
            }
        }
    }
    Ok(out)
}

/// Coefficient of the top monomial (for N=4 this is Tr with Tr(omega)=1).
pub fn gr_trace(alg: &GrassAlgebra, a: &GrassElement) -> Rat {
    a.terms.get(&alg.top_mask()).copied().unwrap_or(Rat::ZERO)
}

/// Wire form of a monomial: the basis kind plus the ascending generator
/// indices.
#[derive(Clone, Debug, Serialize)]
pub struct MonomialRepr {
    pub kind: &'static str,
    pub gens: Vec<u32>,
}

pub fn monomial_repr(form: &GrassForm, mask: Mask) -> MonomialRepr {
    let kind = match form {
        GrassForm::Split { .. } => "split",
        GrassForm::Diagonal(_) => "std",
    };
    MonomialRepr { kind, gens: (0..form.n_gens()).filter(|i| mask & (1 << i) != 0).collect() }
}

/// Split -> standard substitution: zeta_i = (x_{2i-1}+x_{2i})/2,
/// eta_i = (x_{2i-1}-x_{2i})/2, and the odd extra generator maps to itself.
/// The image generators satisfy [x_{2i-1},x_{2i-1}] = 2, [x_{2i},x_{2i}] = -2.
pub fn split_to_std_form(pairs: u32, extra: bool) -> GrassForm {
    let mut d = Vec::new();
    for _ in 0..pairs {
        d.push(Rat::int(2));
        d.push(Rat::int(-2));
    }
    if extra {
        d.push(Rat::ONE);
    }
    GrassForm::Diagonal(d)
}

/// Direction of `basis_change`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BasisKind {
    Standard,
    Split,
}

/// Linear change of generators between the split basis and the sum/difference
/// standard basis; preserves the Poisson structure and is involutive up to
/// the inverse map.
pub fn basis_change(a: &GrassElement, to: BasisKind) -> Result<GrassElement, AlgError> {
    match (&a.form, to) {
        (GrassForm::Split { pairs, extra }, BasisKind::Standard) => {
            let (pairs, extra) = (*pairs, *extra);
            let target = split_to_std_form(pairs, extra);
            let alg = GrassAlgebra::new(target.clone());
            // slot 2k (zeta_{k+1}) -> (x_{2k} + x_{2k+1})/2,
            // slot 2k+1 (eta_{k+1}) -> (x_{2k} - x_{2k+1})/2
            let gen_image = |slot: u32| -> GrassElement {
                if slot < 2 * pairs {
                    let base = (slot / 2) * 2;
                    let mut e = GrassElement::zero(&target);
                    let half = Rat::new(1, 2);
                    e.add_term(1 << base, half);
                    e.add_term(1 << (base + 1), if slot % 2 == 0 { half } else { -half });
                    e
                } else {
                    GrassElement::monomial(&target, 1 << slot, Rat::ONE)
                }
            };
            substitute(&alg, &target, a, gen_image)
        }
        (GrassForm::Diagonal(d), BasisKind::Split) => {
            let extra = d.len() % 2 == 1;
            let pairs = (d.len() as u32) / 2;
            if split_to_std_form(pairs, extra) != a.form {
                return Err(AlgError::DimensionMismatch(
                    "source is not the sum/difference standard form".into(),
                ));
            }
            let target = GrassForm::Split { pairs, extra };
            let alg = GrassAlgebra::new(target.clone());
            // x_{2k} -> zeta_{k+1} + eta_{k+1}, x_{2k+1} -> zeta_{k+1} - eta_{k+1}
            let gen_image = |slot: u32| -> GrassElement {
                if slot < 2 * pairs {
                    let base = (slot / 2) * 2;
                    let mut e = GrassElement::zero(&target);
                    e.add_term(1 << base, Rat::ONE);
                    e.add_term(1 << (base + 1), if slot % 2 == 0 { Rat::ONE } else { -Rat::ONE });
                    e
                } else {
                    GrassElement::monomial(&target, 1 << slot, Rat::ONE)
                }
            };
            substitute(&alg, &target, a, gen_image)
        }
        _ => Err(AlgError::DimensionMismatch("unsupported basis change direction".into())),
    }
}

fn substitute(
    alg: &GrassAlgebra,
    target: &GrassForm,
    a: &GrassElement,
    gen_image: impl Fn(u32) -> GrassElement,
) -> Result<GrassElement, AlgError> {
    let mut out = GrassElement::zero(target);
    for (&mask, &coeff) in &a.terms {
        let mut acc = GrassElement::monomial(target, 0, coeff);
        for slot in 0..32 {
            if mask & (1 << slot) != 0 {
                acc = gr_mul(alg, &acc, &gen_image(slot))?;
            }
        }
        out = out.add(&acc)?;
    }
    Ok(out)
}
