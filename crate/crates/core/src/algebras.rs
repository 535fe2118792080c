//! Concrete constructors for every algebra family, plus the family-specific
//! operations: divergence and S(n;gamma) membership, the contact embedding
//! into W(N), the twisting involution sigma and the twisted basis.

use crate::error::AlgError;
use crate::funcspace::SuperPoly;
use crate::grassmann::{mask_parity, mul_mask, Mask};
use crate::liecore::{
    AlgebraDef, AlgebraElement, AlgebraId, BasisKey, ContactBasis, ContactVariant, ModeForm, Tag,
};
use crate::scalar::{HalfInt, Rat};

pub fn w(n: u8) -> AlgebraDef {
    assert!(n >= 1, "W(n) needs n >= 1");
    AlgebraDef::new(AlgebraId::W { n })
}

pub fn s(n: u8, gamma: Rat) -> AlgebraDef {
    assert!(n >= 2, "S(n;gamma) needs n >= 2");
    AlgebraDef::new(AlgebraId::S { n, gamma })
}

/// The contact superconformal algebra K(N) in the split basis (Ramond form).
/// For N = 4 this is the derived algebra of K(4;D).
pub fn k(n: u8) -> AlgebraDef {
    AlgebraDef::new(AlgebraId::Contact {
        n,
        basis: ContactBasis::Split,
        mode: ModeForm::Ramond,
        variant: ContactVariant::Simple,
    })
}

pub fn k_ns(n: u8) -> AlgebraDef {
    AlgebraDef::new(AlgebraId::Contact {
        n,
        basis: ContactBasis::Split,
        mode: ModeForm::Ns,
        variant: ContactVariant::Simple,
    })
}

/// The full bracket algebra K(N;D), standard basis, used by the contact
/// embedding into W(N).
pub fn kd_std(n: u8) -> AlgebraDef {
    AlgebraDef::new(AlgebraId::Contact {
        n,
        basis: ContactBasis::Std,
        mode: ModeForm::Ramond,
        variant: ContactVariant::Full,
    })
}

pub fn kd_split(n: u8) -> AlgebraDef {
    AlgebraDef::new(AlgebraId::Contact {
        n,
        basis: ContactBasis::Split,
        mode: ModeForm::Ramond,
        variant: ContactVariant::Full,
    })
}

/// The specific central extension of K(4), split basis.
pub fn khat4() -> AlgebraDef {
    AlgebraDef::new(AlgebraId::Contact {
        n: 4,
        basis: ContactBasis::Split,
        mode: ModeForm::Ramond,
        variant: ContactVariant::Hat,
    })
}

/// The extension realized on the standard basis with [xi_i,xi_j]=delta_ij
/// and omega = xi1 xi2 xi3 xi4; this is the frame of the order-three cocycle.
pub fn khat4_std() -> AlgebraDef {
    AlgebraDef::new(AlgebraId::Contact {
        n: 4,
        basis: ContactBasis::Std,
        mode: ModeForm::Ramond,
        variant: ContactVariant::Hat,
    })
}

/// Vir = Der C[t,1/t] realized as the N=0 contact algebra: f <-> fD,
/// so E_n = -t^n D corresponds to -t^n.
pub fn vir() -> AlgebraDef {
    AlgebraDef::new(AlgebraId::Contact {
        n: 0,
        basis: ContactBasis::Split,
        mode: ModeForm::Ramond,
        variant: ContactVariant::Full,
    })
}

pub fn ck6() -> AlgebraDef {
    AlgebraDef::new(AlgebraId::Ck6)
}

/// The twisted contact algebra, realized inside K(2m).
pub fn k2(m: u8) -> AlgebraDef {
    assert!(m >= 1);
    AlgebraDef::new(AlgebraId::K2 { m })
}

/// Ambient split contact algebra of K2(2m).
pub fn k2_ambient(m: u8) -> AlgebraDef {
    k(2 * m)
}

// ---------------------------------------------------------------------------
// W(n): derivation form, divergence, S-membership
// ---------------------------------------------------------------------------

/// A W(n) element in the frame f D + sum_i f_i d/dxi_i.
pub struct WParts {
    pub d: SuperPoly,
    pub dels: Vec<SuperPoly>,
}

pub fn w_parts(alg: &AlgebraDef, x: &AlgebraElement) -> WParts {
    let n = alg.n_gens();
    let mut d = SuperPoly::zero(n);
    let mut dels = vec![SuperPoly::zero(n); n as usize];
    for (k, &c) in &x.terms {
        match k.tag {
            Tag::WD => d.add_term(k.t2, k.mask, c),
            Tag::WDel(i) => dels[i as usize].add_term(k.t2, k.mask, c),
            _ => panic!("not a W-type key"),
        }
    }
    WParts { d, dels }
}

pub fn w_from_parts(alg: &AlgebraDef, parts: &WParts) -> AlgebraElement {
    let mut out = AlgebraElement::zero(&alg.id);
    for (&(t2, mask), &c) in &parts.d.terms {
        out.add_term(BasisKey::wd(mask, t2), c);
    }
    for (i, h) in parts.dels.iter().enumerate() {
        for (&(t2, mask), &c) in &h.terms {
            out.add_term(BasisKey::wdel(mask, i as u8, t2), c);
        }
    }
    out
}

/// div(f D + sum f_i d/dxi_i) = D(f) + sum_i (-1)^{|f_i|} d f_i / d xi_i.
/// The Ramond derivation D itself is divergence-free.
pub fn divergence(alg: &AlgebraDef, x: &AlgebraElement) -> SuperPoly {
    divergence_twisted(alg, x, Rat::ZERO)
}

/// Divergence of t^{gamma} x, with the overall factor t^{gamma} dropped:
/// (D + gamma)(f) + sum_i (-1)^{|f_i|} d f_i / d xi_i.
pub fn divergence_twisted(alg: &AlgebraDef, x: &AlgebraElement, gamma: Rat) -> SuperPoly {
    let parts = w_parts(alg, x);
    let mut out = parts.d.ramond_d().add(&parts.d.scale(gamma));
    for (i, h) in parts.dels.iter().enumerate() {
        // apply the sign (-1)^{|f_i|} termwise: f_i need not be homogeneous
        for (&(t2, mask), &c) in &h.terms {
            let sgn = if mask_parity(mask) { -Rat::ONE } else { Rat::ONE };
            let term = SuperPoly::term(alg.n_gens(), t2, mask, c * sgn);
            out = out.add(&term.del(i as u32));
        }
    }
    out
}

/// True iff x lies in S(n;gamma): the twisted divergence vanishes
/// identically, and for integral gamma the divergence-free complement line
/// t^{-gamma} xi_1..xi_n D carries no coefficient. The twist direction is
/// the one that puts the tabulated Virasoro basis E_k inside the algebra.
pub fn s_membership(alg: &AlgebraDef, gamma: Rat, x: &AlgebraElement) -> bool {
    if !divergence_twisted(alg, x, gamma).is_zero() {
        return false;
    }
    if let Some(g) = gamma.to_integer() {
        let n = alg.n_gens();
        let top = (1u32 << n) - 1;
        let key = BasisKey::wd(top, -2 * g as i64);
        if x.terms.contains_key(&key) {
            return false;
        }
    }
    true
}

/// Basis of the S(n;gamma) degree slot: the kernel of the twisted divergence
/// inside the W(n) slot, with the complement line removed for integral gamma.
pub(crate) fn s_basis_at_degree(alg: &AlgebraDef, deg: HalfInt) -> Vec<AlgebraElement> {
    let AlgebraId::S { n, gamma } = &alg.id else { panic!("not S") };
    if deg.t2 % 2 != 0 {
        return Vec::new();
    }
    let n = *n as u32;
    let w_alg = w(n as u8);
    // column space: all W keys at this degree
    let mut keys = Vec::new();
    for mask in 0..(1u32 << n) {
        keys.push(BasisKey::wd(mask, deg.t2));
        for i in 0..n as u8 {
            keys.push(BasisKey::wdel(mask, i, deg.t2));
        }
    }
    // divergence image is spanned by monomials t^deg xi_mask
    let mut rows: Vec<Mask> = (0..(1u32 << n)).collect();
    rows.sort();
    let mut matrix: Vec<Vec<Rat>> = Vec::new(); // rows x cols
    for _ in &rows {
        matrix.push(vec![Rat::ZERO; keys.len()]);
    }
    for (c, k) in keys.iter().enumerate() {
        let e = w_alg.element(*k, Rat::ONE);
        let div = divergence_twisted(&w_alg, &e, *gamma);
        for (&(_, mask), &v) in &div.terms {
            let r = rows.binary_search(&mask).unwrap();
            matrix[r][c] = v;
        }
    }
    let kernel = crate::linalg::kernel_basis(&matrix, keys.len());
    let mut out = Vec::new();
    let top = (1u32 << n) - 1;
    let excl = gamma.to_integer().map(|g| BasisKey::wd(top, -2 * g as i64));
    for v in kernel {
        let mut e = AlgebraElement::zero(&alg.id);
        for (c, coeff) in v.into_iter().enumerate() {
            e.add_term(keys[c], coeff);
        }
        if let Some(x) = &excl {
            // kernel vectors never mix the complement line with others
            // (its divergence column is zero), so drop it as a whole vector
            if e.terms.len() == 1 && e.terms.contains_key(x) {
                continue;
            }
        }
        out.push(e);
    }
    out
}

/// The S(n;gamma) Virasoro basis element
/// E_k = -(t^k D + (k+gamma) t^k xi_1 d/dxi_1).
pub fn s_vir_element(alg: &AlgebraDef, k: i64) -> AlgebraElement {
    let AlgebraId::S { gamma, .. } = &alg.id else { panic!("not S") };
    let mut e = AlgebraElement::zero(&alg.id);
    e.add_term(BasisKey::wd(0, 2 * k), -Rat::ONE);
    e.add_term(BasisKey::wdel(1, 0, 2 * k), -(Rat::int(k as i128) + *gamma));
    e
}

// ---------------------------------------------------------------------------
// The contact embedding nabla : K(N;D) -> W(N)
// ---------------------------------------------------------------------------

/// nabla(F) = (F - E(F)/2) D + D(F)/2 E - (-1)^{|F|} sum_i (dF/dxi_i) d/dxi_i
/// for parity-homogeneous F in C[t,1/t,xi_1..xi_N].
pub fn contact_embed(w_alg: &AlgebraDef, f: &SuperPoly) -> Result<AlgebraElement, AlgError> {
    let n = w_alg.n_gens();
    assert_eq!(f.n_gens, n, "generator count mismatch");
    let parity = f
        .parity()
        .ok_or_else(|| AlgError::NonHomogeneous(format!("{f}")))?;
    let half = Rat::new(1, 2);
    let d_coeff = f.sub(&f.euler().scale(half));
    let df_half = f.ramond_d().scale(half);
    let sgn = if parity { -Rat::ONE } else { Rat::ONE };
    let mut dels = Vec::with_capacity(n as usize);
    for i in 0..n {
        // D(F)/2 * xi_i  - (-1)^{|F|} dF/dxi_i
        let xi = SuperPoly::term(n, 0, 1 << i, Rat::ONE);
        let part = df_half.mul(&xi).sub(&f.del(i).scale(sgn));
        dels.push(part);
    }
    Ok(w_from_parts(w_alg, &WParts { d: d_coeff, dels }))
}

/// View a standard-basis contact element as a function in C[t,1/t,xi...].
pub fn contact_as_function(alg: &AlgebraDef, x: &AlgebraElement) -> SuperPoly {
    let n = alg.n_gens();
    let mut f = SuperPoly::zero(n);
    for (k, &c) in &x.terms {
        match k.tag {
            Tag::Gr => f.add_term(k.t2, k.mask, c),
            _ => panic!("cannot view {:?} as a plain function", k.tag),
        }
    }
    f
}

// ---------------------------------------------------------------------------
// The involution sigma and the twisted algebra
// ---------------------------------------------------------------------------

/// sigma(t^n) = (-1)^n t^n, sigma swaps zeta_1 <-> eta_1 and fixes the other
/// generators. On the extended K(4) the central keys pick up one extra sign,
/// c(t^n) -> (-1)^{n+1} c(t^n): the cocycle is sigma-anti-invariant (sigma
/// reverses the top monomial), and this is the unique lift making sigma an
/// automorphism of the extension.
pub fn sigma(alg: &AlgebraDef, x: &AlgebraElement) -> Result<AlgebraElement, AlgError> {
    match &alg.id {
        AlgebraId::Contact { basis: ContactBasis::Split, mode: ModeForm::Ramond, .. }
        | AlgebraId::K2 { .. } => {}
        _ => {
            return Err(AlgError::FamilyMismatch(format!(
                "sigma is defined on split Ramond contact algebras, not {}",
                alg.id
            )))
        }
    }
    let mut out = AlgebraElement::zero(&x.id);
    for (k, &c) in &x.terms {
        let n = k.t2 / 2;
        let tsign = if n % 2 == 0 { Rat::ONE } else { -Rat::ONE };
        match k.tag {
            Tag::Central => {
                out.add_term(*k, -(c * tsign));
            }
            Tag::Gr => {
                let (mask, s) = swap_first_pair(k.mask);
                out.add_term(BasisKey::gr(mask, k.t2), c * tsign * Rat::int(s as i128));
            }
            _ => unreachable!(),
        }
    }
    Ok(out)
}

/// Swap slots 0 (zeta_1) and 1 (eta_1) in a canonical monomial; the result
/// is re-sorted and the sign recorded.
fn swap_first_pair(mask: Mask) -> (Mask, i32) {
    let has0 = mask & 1 != 0;
    let has1 = mask & 2 != 0;
    if has0 == has1 {
        // both or neither: mask unchanged; both present costs one transposition
        (mask, if has0 { -1 } else { 1 })
    } else {
        // exactly one: swap the slot, order is unchanged (slot 0 <-> 1 are adjacent
        // and the lowest slots), no sign
        ((mask & !3) | if has0 { 2 } else { 1 }, 1)
    }
}

/// Eigenvalue of sigma restricted to the Grassmann part of a monomial, when
/// the monomial is an eigenvector; pairs zeta1*r / eta1*r are not.
fn sigma_mono_eigen(mask: Mask) -> Option<i32> {
    let has0 = mask & 1 != 0;
    let has1 = mask & 2 != 0;
    if has0 && has1 {
        Some(-1)
    } else if !has0 && !has1 {
        Some(1)
    } else {
        None
    }
}

/// Basis of the sigma-fixed subspace at one t-degree: a(t^{2n}) for
/// sigma-fixed a, a(t^{2n+1}) for sigma-antifixed a, with the mixed
/// zeta1/eta1 monomials entering through (zeta1 +/- eta1) combinations.
pub(crate) fn k2_basis_at_degree(alg: &AlgebraDef, deg: HalfInt) -> Vec<AlgebraElement> {
    let AlgebraId::K2 { m } = alg.id else { panic!("not K2") };
    if deg.t2 % 2 != 0 {
        return Vec::new();
    }
    let n_deg = deg.t2 / 2;
    let mode_sign: i32 = if n_deg % 2 == 0 { 1 } else { -1 };
    let n_gens = 2 * m as u32;
    let mut out = Vec::new();
    let ambient = AlgebraId::Contact {
        n: 2 * m,
        basis: ContactBasis::Split,
        mode: ModeForm::Ramond,
        variant: ContactVariant::Simple,
    };
    for mask in 0..(1u32 << n_gens) {
        match sigma_mono_eigen(mask) {
            Some(e) => {
                if e == mode_sign {
                    // skip omega(t^0) for m=2 (not in the derived algebra)
                    if m == 2 && mask == 0b1111 && deg.t2 == 0 {
                        continue;
                    }
                    let mut el = AlgebraElement::zero(&alg.id);
                    el.add_term(BasisKey::gr(mask, deg.t2), Rat::ONE);
                    out.push(el);
                }
            }
            None => {
                // only handle the zeta1-containing representative once
                if mask & 1 != 0 {
                    let partner = (mask & !1) | 2;
                    let sign = if mode_sign == 1 { Rat::ONE } else { -Rat::ONE };
                    let mut el = AlgebraElement::zero(&alg.id);
                    el.add_term(BasisKey::gr(mask, deg.t2), Rat::ONE);
                    el.add_term(BasisKey::gr(partner, deg.t2), sign);
                    out.push(el);
                }
            }
        }
    }
    let _ = ambient;
    out
}

/// Checks that an ambient K(2m) element is sigma-fixed.
pub fn k2_member(alg: &AlgebraDef, x: &AlgebraElement) -> bool {
    match sigma(alg, x) {
        Ok(s) => s == *x,
        Err(_) => false,
    }
}

// ---------------------------------------------------------------------------
// Element builders shared by tests and the CLI
// ---------------------------------------------------------------------------

/// Single monomial key from generator names, e.g. `["zeta1","eta1"]`.
pub fn contact_monomial(
    alg: &AlgebraDef,
    gens: &[&str],
    t2: i64,
    c: Rat,
) -> Result<AlgebraElement, AlgError> {
    let form = &alg.grass().form;
    let mut mask: Mask = 0;
    let mut sign = 1i32;
    for g in gens {
        let slot = form
            .slot_of(g)
            .ok_or_else(|| AlgError::Parse(format!("unknown generator {g}")))?;
        let (m, s) = mul_mask(mask, 1 << slot)
            .ok_or_else(|| AlgError::Parse(format!("repeated generator {g}")))?;
        mask = m;
        sign *= s;
    }
    let key = BasisKey::gr(mask, t2);
    if !alg.key_legal(&key) {
        return Err(AlgError::IllegalKey(format!("{key:?} in {}", alg.id)));
    }
    Ok(alg.element(key, c * Rat::int(sign as i128)))
}
