//! Generic sparse graded Lie-superalgebra engine: basis keys, elements,
//! brackets through per-family structure constants, Jacobi and grading
//! auditors, weights and the triangular decomposition.
//!
//! Brackets are computed lazily from closed-form structure constants, never
//! from precomputed tables, so degree windows can grow without regeneration.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use smallvec::SmallVec;

use crate::error::AlgError;
use crate::grassmann::{mask_parity, GrassAlgebra, GrassForm, Mask};
use crate::scalar::{HalfInt, Rat};

/// Basis-kind of a contact algebra realization.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum ContactBasis {
    /// zeta_i, eta_i (and xi for odd N) with [zeta_i,eta_i]=1
    Split,
    /// xi_1..xi_N with [xi_i,xi_j] = delta_ij
    Std,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum ModeForm {
    Ramond,
    Ns,
    /// Union of the Ramond and Neveu-Schwarz mode lattices; the ambient
    /// space of checks which mix both sectors.
    Mixed,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum ContactVariant {
    /// K(N;D), the full bracket algebra
    Full,
    /// the superconformal algebra K(N); differs from Full only at N=4,
    /// where the top component loses omega(t^0)
    Simple,
    /// the specific central extension of K(4): the top component is replaced
    /// by central keys c(t^n)
    Hat,
}

/// Identifier of one algebra family instance.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub enum AlgebraId {
    W { n: u8 },
    S { n: u8, gamma: Rat },
    Contact { n: u8, basis: ContactBasis, mode: ModeForm, variant: ContactVariant },
    Ck6,
    /// Twisted contact algebra inside K(2m) (sigma-fixed points).
    K2 { m: u8 },
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraId::W { n } => write!(f, "W:{n}"),
            AlgebraId::S { n, gamma } => write!(f, "S:{n}:g={gamma}"),
            AlgebraId::Contact { n: 0, .. } => write!(f, "Vir"),
            AlgebraId::Contact { n, basis, mode, variant } => {
                let head = match variant {
                    ContactVariant::Full => "KD",
                    ContactVariant::Simple => "K",
                    ContactVariant::Hat => "Khat",
                };
                write!(f, "{head}:{n}")?;
                if *mode == ModeForm::Ns {
                    write!(f, ":ns")?;
                }
                if *basis == ContactBasis::Std {
                    write!(f, ":std")?;
                }
                Ok(())
            }
            AlgebraId::Ck6 => write!(f, "CK6"),
            AlgebraId::K2 { m } => write!(f, "K2:{}", 2 * m),
        }
    }
}

/// Extra structure attached to a key beyond its monomial and t-power.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum Tag {
    /// contact key a(t^p) (mask 0 is the Virasoro line f <-> fD)
    Gr,
    /// central key c(t^p) of the extended K(4)
    Central,
    /// W-type key t^p xi_mask D
    WD,
    /// W-type key t^p xi_mask d/dxi_i
    WDel(u8),
    /// CK6 basis matrix of the given index at t-degree p
    Ck6(u8),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct BasisKey {
    pub tag: Tag,
    pub mask: Mask,
    /// doubled t-power
    pub t2: i64,
}

impl BasisKey {
    pub fn gr(mask: Mask, t2: i64) -> BasisKey {
        BasisKey { tag: Tag::Gr, mask, t2 }
    }

    pub fn central(t2: i64) -> BasisKey {
        BasisKey { tag: Tag::Central, mask: 0, t2 }
    }

    pub fn wd(mask: Mask, t2: i64) -> BasisKey {
        BasisKey { tag: Tag::WD, mask, t2 }
    }

    pub fn wdel(mask: Mask, i: u8, t2: i64) -> BasisKey {
        BasisKey { tag: Tag::WDel(i), mask, t2 }
    }

    pub fn ck6(idx: u8, t2: i64) -> BasisKey {
        BasisKey { tag: Tag::Ck6(idx), mask: 0, t2 }
    }

    pub fn degree(&self) -> HalfInt {
        HalfInt::from_doubled(self.t2)
    }
}

pub type KeyTerms = SmallVec<[(BasisKey, Rat); 6]>;

/// Sparse exact linear combination of basis keys of one family.
#[derive(Clone, PartialEq, Debug)]
pub struct AlgebraElement {
    pub id: AlgebraId,
    pub terms: BTreeMap<BasisKey, Rat>,
}

impl AlgebraElement {
    pub fn zero(id: &AlgebraId) -> AlgebraElement {
        AlgebraElement { id: id.clone(), terms: BTreeMap::new() }
    }

    pub fn key(id: &AlgebraId, k: BasisKey, c: Rat) -> AlgebraElement {
        let mut e = AlgebraElement::zero(id);
        e.add_term(k, c);
        e
    }

    pub fn add_term(&mut self, k: BasisKey, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert(Rat::ZERO);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgError> {
        if self.id != other.id {
            return Err(AlgError::FamilyMismatch(format!("{} vs {}", self.id, other.id)));
        }
        let mut out = self.clone();
        for (&k, &c) in &other.terms {
            out.add_term(k, c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: Rat) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero(&self.id);
        }
        AlgebraElement {
            id: self.id.clone(),
            terms: self.terms.iter().map(|(&k, &v)| (k, v * c)).collect(),
        }
    }

    /// Shift every key's t-power by the given doubled amount.
    pub fn shift_t(&self, t2: i64) -> AlgebraElement {
        AlgebraElement {
            id: self.id.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&k, &v)| (BasisKey { t2: k.t2 + t2, ..k }, v))
                .collect(),
        }
    }
}

/// Triangular data of one algebra: the Cartan basis, the distinguished
/// element F and the simple coroots expressed as weight functionals.
#[derive(Clone, Debug)]
pub struct TriangularData {
    pub cartan_basis: Vec<BasisKey>,
    pub f_element: AlgebraElement,
    /// F expressed in weight coordinates: fdeg(key) = weight(key) . f_coords
    pub f_coords: Vec<i64>,
    /// simple coroots as linear functionals on weight coordinates
    pub coroots: Vec<Vec<Rat>>,
}

/// Structure-constant engine for one algebra family.
pub struct AlgebraDef {
    pub id: AlgebraId,
    pub(crate) gr: Option<GrassAlgebra>,
    pub(crate) ck6: Option<crate::ck6::Ck6Basis>,
}

impl AlgebraDef {
    pub fn new(id: AlgebraId) -> AlgebraDef {
        let gr = match &id {
            AlgebraId::Contact { n, basis, .. } => {
                let form = match basis {
                    ContactBasis::Split => GrassForm::split(*n as u32),
                    ContactBasis::Std => GrassForm::std(*n as u32),
                };
                Some(GrassAlgebra::new(form))
            }
            AlgebraId::K2 { m } => Some(GrassAlgebra::new(GrassForm::split(2 * *m as u32))),
            _ => None,
        };
        let ck6 = matches!(id, AlgebraId::Ck6).then(crate::ck6::Ck6Basis::new);
        let def = AlgebraDef { id, gr, ck6 };
        def.assert_f_separates();
        def
    }

    pub fn grass(&self) -> &GrassAlgebra {
        self.gr.as_ref().expect("not a contact-type algebra")
    }

    pub fn n_gens(&self) -> u32 {
        match &self.id {
            AlgebraId::W { n } | AlgebraId::S { n, .. } => *n as u32,
            AlgebraId::Contact { n, .. } => *n as u32,
            AlgebraId::K2 { m } => 2 * *m as u32,
            AlgebraId::Ck6 => 0,
        }
    }

    /// Number of zeta/eta pairs for split contact algebras.
    pub fn pair_count(&self) -> u32 {
        self.n_gens() / 2
    }

    pub fn element(&self, k: BasisKey, c: Rat) -> AlgebraElement {
        debug_assert!(self.key_legal(&k), "illegal key for {}", self.id);
        AlgebraElement::key(&self.id, k, c)
    }

    pub fn key_legal(&self, k: &BasisKey) -> bool {
        match &self.id {
            AlgebraId::W { n } | AlgebraId::S { n, .. } => match k.tag {
                Tag::WD => k.t2 % 2 == 0 && k.mask < (1 << n),
                Tag::WDel(i) => k.t2 % 2 == 0 && k.mask < (1 << n) && i < *n,
                _ => false,
            },
            AlgebraId::Contact { n, mode, variant, .. } => match k.tag {
                Tag::Gr => {
                    if k.mask >= (1 << n) {
                        return false;
                    }
                    let odd = mask_parity(k.mask);
                    let mode_ok = match mode {
                        ModeForm::Ramond => k.t2 % 2 == 0,
                        ModeForm::Ns => (k.t2 % 2 != 0) == odd,
                        ModeForm::Mixed => true,
                    };
                    if !mode_ok {
                        return false;
                    }
                    match variant {
                        ContactVariant::Full => true,
                        ContactVariant::Simple => {
                            !(*n == 4 && k.mask == 0b1111 && k.t2 == 0)
                        }
                        ContactVariant::Hat => k.mask.count_ones() < 4,
                    }
                }
                Tag::Central => {
                    matches!(variant, ContactVariant::Hat)
                        && (*mode == ModeForm::Mixed || k.t2 % 2 == 0)
                }
                _ => false,
            },
            AlgebraId::K2 { m } => match k.tag {
                // ambient K(2m) key legality; sigma-fixedness is a property
                // of elements, not of single keys
                Tag::Gr => k.t2 % 2 == 0 && k.mask < (1 << (2 * m)),
                _ => false,
            },
            AlgebraId::Ck6 => match k.tag {
                Tag::Ck6(i) => k.t2 % 2 == 0 && (i as usize) < crate::ck6::BASIS_DIM,
                _ => false,
            },
        }
    }

    pub fn key_parity(&self, k: &BasisKey) -> bool {
        match k.tag {
            Tag::Gr => mask_parity(k.mask),
            Tag::Central => false,
            Tag::WD => mask_parity(k.mask),
            Tag::WDel(_) => !mask_parity(k.mask),
            Tag::Ck6(i) => self.ck6.as_ref().expect("ck6").parity(i),
        }
    }

    pub fn element_parity(&self, x: &AlgebraElement) -> Result<bool, AlgError> {
        let mut p = None;
        for k in x.terms.keys() {
            let q = self.key_parity(k);
            match p {
                None => p = Some(q),
                Some(prev) if prev != q => {
                    return Err(AlgError::NonHomogeneous(format!("{x}")));
                }
                _ => {}
            }
        }
        Ok(p.unwrap_or(false))
    }

    /// Rank of the weight lattice used by this family.
    pub fn weight_len(&self) -> usize {
        match &self.id {
            AlgebraId::W { n } | AlgebraId::S { n, .. } => *n as usize,
            AlgebraId::Contact { n, .. } => (*n as usize) / 2,
            AlgebraId::K2 { m } => *m as usize,
            AlgebraId::Ck6 => 3,
        }
    }

    /// H-eigenvalue tuple of a basis key.
    pub fn key_weight(&self, k: &BasisKey) -> Vec<Rat> {
        match &self.id {
            AlgebraId::W { n } | AlgebraId::S { n, .. } => {
                let mut w = vec![Rat::ZERO; *n as usize];
                for i in 0..*n as u32 {
                    if k.mask & (1 << i) != 0 {
                        w[i as usize] += Rat::ONE;
                    }
                }
                if let Tag::WDel(i) = k.tag {
                    w[i as usize] -= Rat::ONE;
                }
                w
            }
            AlgebraId::Contact { n, basis, .. } => {
                let m = (*n as usize) / 2;
                let mut w = vec![Rat::ZERO; m];
                if k.tag == Tag::Central {
                    return w;
                }
                match basis {
                    ContactBasis::Split => {
                        for i in 0..m as u32 {
                            if k.mask & (1 << (2 * i)) != 0 {
                                w[i as usize] += Rat::ONE; // zeta_{i+1}
                            }
                            if k.mask & (1 << (2 * i + 1)) != 0 {
                                w[i as usize] -= Rat::ONE; // eta_{i+1}
                            }
                        }
                    }
                    // the standard basis does not diagonalize H; weights are
                    // only used in the split realization
                    ContactBasis::Std => {}
                }
                w
            }
            AlgebraId::K2 { m } => {
                let mm = *m as usize;
                let mut w = vec![Rat::ZERO; mm];
                for i in 0..mm as u32 {
                    if k.mask & (1 << (2 * i)) != 0 {
                        w[i as usize] += Rat::ONE;
                    }
                    if k.mask & (1 << (2 * i + 1)) != 0 {
                        w[i as usize] -= Rat::ONE;
                    }
                }
                w
            }
            AlgebraId::Ck6 => {
                let Tag::Ck6(i) = k.tag else { panic!("bad ck6 key") };
                self.ck6.as_ref().expect("ck6").weight(i)
            }
        }
    }

    /// F in weight coordinates: fdeg(key) = weight(key) . f_coords.
    pub fn f_coords(&self) -> Vec<i64> {
        match &self.id {
            AlgebraId::W { n } | AlgebraId::S { n, .. } => {
                // eps_1(F) = 2^n - 2 and eps_k(F) = -2^{k-1} for k > 1, so
                // that the only degree-zero root line is the radical
                // C[t,1/t] xi_1..xi_n D
                let n = *n as u32;
                let mut v = vec![0i64; n as usize];
                v[0] = (1i64 << n) - 2;
                for k in 1..n {
                    v[k as usize] = -(1i64 << k);
                }
                v
            }
            AlgebraId::Contact { n, .. } => {
                (1..=(*n as i64) / 2).map(|i| 1i64 << i).collect()
            }
            AlgebraId::K2 { m } => (1..=*m as i64).map(|i| 1i64 << i).collect(),
            AlgebraId::Ck6 => crate::ck6::F_EPS_COORDS.to_vec(),
        }
    }

    pub fn key_fdeg(&self, k: &BasisKey) -> Rat {
        let w = self.key_weight(k);
        let f = self.f_coords();
        w.iter().zip(&f).map(|(x, &c)| *x * Rat::int(c as i128)).sum()
    }

    /// Checked at construction: nonzero roots never collide with F-degree
    /// zero except the tabulated degenerate line (the W-radical).
    fn assert_f_separates(&self) {
        match &self.id {
            // W(1) has rank zero and no triangular decomposition
            AlgebraId::W { n } | AlgebraId::S { n, .. } if *n >= 2 => {
                let n = *n as u32;
                for mask in 0..(1u32 << n) {
                    let k = BasisKey::wd(mask, 0);
                    let w = self.key_weight(&k);
                    let zero_weight = w.iter().all(|x| x.is_zero());
                    let fdeg = self.key_fdeg(&k);
                    if fdeg.is_zero() {
                        assert!(
                            zero_weight || mask == (1 << n) - 1,
                            "F fails to separate root {mask:#b}"
                        );
                    }
                    for i in 0..n as u8 {
                        let k = BasisKey::wdel(mask, i, 0);
                        let w = self.key_weight(&k);
                        let zero_weight = w.iter().all(|x| x.is_zero());
                        if self.key_fdeg(&k).is_zero() {
                            assert!(zero_weight, "F fails to separate a del-root");
                        }
                    }
                }
            }
            _ => {}
        }
    }

    pub fn weight_of(&self, k: &BasisKey) -> Result<(Vec<Rat>, Rat, bool), AlgError> {
        if !self.key_legal(k) {
            return Err(AlgError::IllegalKey(format!("{k:?} in {}", self.id)));
        }
        Ok((self.key_weight(k), self.key_fdeg(k), self.key_parity(k)))
    }

    pub fn element_weight(&self, x: &AlgebraElement) -> Result<Vec<Rat>, AlgError> {
        let mut w = None;
        for k in x.terms.keys() {
            let kw = self.key_weight(k);
            match &w {
                None => w = Some(kw),
                Some(prev) if *prev != kw => {
                    return Err(AlgError::NonHomogeneous(format!("{x}")));
                }
                _ => {}
            }
        }
        Ok(w.unwrap_or_else(|| vec![Rat::ZERO; self.weight_len()]))
    }

    pub fn element_fdeg(&self, x: &AlgebraElement) -> Result<Rat, AlgError> {
        let w = self.element_weight(x)?;
        let f = self.f_coords();
        Ok(w.iter().zip(&f).map(|(x, &c)| *x * Rat::int(c as i128)).sum())
    }

    /// Splits x into components of positive / zero / negative F-degree.
    pub fn triangular_split(
        &self,
        x: &AlgebraElement,
    ) -> (AlgebraElement, AlgebraElement, AlgebraElement) {
        let mut pos = AlgebraElement::zero(&self.id);
        let mut zero = AlgebraElement::zero(&self.id);
        let mut neg = AlgebraElement::zero(&self.id);
        for (&k, &c) in &x.terms {
            let d = self.key_fdeg(&k);
            if d.is_zero() {
                zero.add_term(k, c);
            } else if d.is_negative() {
                neg.add_term(k, c);
            } else {
                pos.add_term(k, c);
            }
        }
        (pos, zero, neg)
    }

    pub fn triangular_data(&self) -> TriangularData {
        let coords = self.f_coords();
        let mut f_element = AlgebraElement::zero(&self.id);
        let mut cartan = Vec::new();
        match &self.id {
            AlgebraId::W { n } | AlgebraId::S { n, .. } => {
                for i in 0..*n {
                    let k = BasisKey::wdel(1 << i, i, 0);
                    cartan.push(k);
                    f_element.add_term(k, Rat::int(coords[i as usize] as i128));
                }
            }
            AlgebraId::Contact { n, basis: ContactBasis::Split, variant, .. } => {
                for i in 0..(*n as u32) / 2 {
                    let k = BasisKey::gr((1 << (2 * i)) | (1 << (2 * i + 1)), 0);
                    cartan.push(k);
                    f_element.add_term(k, Rat::int(coords[i as usize] as i128));
                }
                if matches!(variant, ContactVariant::Hat) {
                    cartan.push(BasisKey::central(0));
                }
            }
            AlgebraId::Ck6 => {
                let b = self.ck6.as_ref().expect("ck6");
                for (k, c) in b.f_element_terms() {
                    f_element.add_term(k, c);
                }
                cartan = b.cartan_keys();
            }
            _ => {}
        }
        TriangularData {
            cartan_basis: cartan,
            f_element,
            f_coords: coords,
            coroots: self.coroots(),
        }
    }

    /// Simple coroots as linear functionals on the weight coordinates.
    pub fn coroots(&self) -> Vec<Vec<Rat>> {
        let one = Rat::ONE;
        match &self.id {
            AlgebraId::W { n } | AlgebraId::S { n, .. } => {
                // lambda(h_i) = lambda_i - lambda_{i+1}
                let n = *n as usize;
                (0..n - 1)
                    .map(|i| {
                        let mut v = vec![Rat::ZERO; n];
                        v[i] = one;
                        v[i + 1] = -one;
                        v
                    })
                    .collect()
            }
            AlgebraId::Contact { n, .. } => {
                let m = (*n as usize) / 2;
                if m == 0 {
                    return Vec::new();
                }
                let mut out = Vec::new();
                if *n % 2 == 0 {
                    // type D: lambda(h_1) = lambda_1 + lambda_2
                    let mut v = vec![Rat::ZERO; m];
                    if m >= 2 {
                        v[0] = one;
                        v[1] = one;
                    } else {
                        v[0] = one + one;
                    }
                    out.push(v);
                } else {
                    // type B: lambda(h_1) = 2 lambda_1
                    let mut v = vec![Rat::ZERO; m];
                    v[0] = one + one;
                    out.push(v);
                }
                for i in 1..m {
                    let mut v = vec![Rat::ZERO; m];
                    v[i] = one;
                    v[i - 1] = -one;
                    out.push(v);
                }
                out
            }
            AlgebraId::K2 { m } => {
                let m = *m as usize;
                let mut out = Vec::new();
                let mut v = vec![Rat::ZERO; m];
                if m >= 2 {
                    v[0] = one;
                    v[1] = one;
                } else {
                    v[0] = one + one;
                }
                out.push(v);
                for i in 1..m {
                    let mut v = vec![Rat::ZERO; m];
                    v[i] = one;
                    v[i - 1] = -one;
                    out.push(v);
                }
                out
            }
            AlgebraId::Ck6 => {
                // lambda(h_1)=l1+l2, lambda(h_2)=l2-l1, lambda(h_3)=l3-l2
                vec![
                    vec![one, one, Rat::ZERO],
                    vec![-one, one, Rat::ZERO],
                    vec![Rat::ZERO, -one, one],
                ]
            }
        }
    }

    /// Key-level bracket.
    pub fn bracket_keys(&self, a: &BasisKey, b: &BasisKey) -> KeyTerms {
        match &self.id {
            AlgebraId::W { .. } | AlgebraId::S { .. } => self.w_bracket_keys(a, b),
            AlgebraId::Contact { .. } => self.contact_bracket_keys(a, b),
            AlgebraId::K2 { .. } => self.contact_bracket_keys(a, b),
            AlgebraId::Ck6 => self.ck6.as_ref().expect("ck6").bracket_keys(a, b),
        }
    }

    /// Bilinear extension of the structure-constant bracket.
    pub fn bracket(
        &self,
        x: &AlgebraElement,
        y: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgError> {
        if x.id != self.id || y.id != self.id {
            return Err(AlgError::FamilyMismatch(format!(
                "{} and {} in {}",
                x.id, y.id, self.id
            )));
        }
        let mut out = AlgebraElement::zero(&self.id);
        for (ka, ca) in &x.terms {
            for (kb, cb) in &y.terms {
                for (k, c) in self.bracket_keys(ka, kb) {
                    out.add_term(k, *ca * *cb * c);
                }
            }
        }
        Ok(out)
    }

    /// Contact bracket from Eq. (Kbracket):
    /// [a(f), b(g)] = ab((2-k)/2 fD(g) - (2-l)/2 gD(f)) + [a,b](fg),
    /// with the top component routed to central keys in the Hat variant.
    fn contact_bracket_keys(&self, a: &BasisKey, b: &BasisKey) -> KeyTerms {
        let mut out = KeyTerms::new();
        let gr = self.grass();
        let hat = matches!(
            self.id,
            AlgebraId::Contact { variant: ContactVariant::Hat, .. }
        );
        let top = gr.top_mask();
        match (a.tag, b.tag) {
            (Tag::Gr, Tag::Gr) => {
                let (n, m) = (HalfInt::from_doubled(a.t2).as_rat(), HalfInt::from_doubled(b.t2).as_rat());
                let k = a.mask.count_ones() as i128;
                let l = b.mask.count_ones() as i128;
                let t2 = a.t2 + b.t2;
                // product part
                if let Some((mask, sign)) = crate::grassmann::mul_mask(a.mask, b.mask) {
                    if hat && mask == top {
                        // the top component is spanned by central keys: the
                        // product part (2-k)/2 (n+m) omega(t^{n+m}) together
                        // with the cocycle value at n+m=0 collapse to
                        // (2-k)/2 Tr(ab) c(t^{n+m}) uniformly
                        let c = Rat::new(2 - k, 2) * Rat::int(sign as i128);
                        if !c.is_zero() {
                            out.push((BasisKey::central(t2), c));
                        }
                    } else {
                        let coeff = (Rat::new(2 - k, 2) * m - Rat::new(2 - l, 2) * n)
                            * Rat::int(sign as i128);
                        if !coeff.is_zero() {
                            out.push((BasisKey::gr(mask, t2), coeff));
                        }
                    }
                }
                // Poisson part
                for &(mask, ref c) in gr.poisson_masks(a.mask, b.mask) {
                    out.push((BasisKey::gr(mask, t2), *c));
                }
            }
            (Tag::Gr, Tag::Central) => {
                debug_assert!(hat);
                let k = a.mask.count_ones();
                let m = HalfInt::from_doubled(b.t2).as_rat();
                let t2 = a.t2 + b.t2;
                if k == 0 {
                    // [f, c(g)] = c(f D g)
                    if !m.is_zero() {
                        out.push((BasisKey::central(t2), m));
                    }
                } else if k == 1 {
                    // [a(f), c(g)] = [a, omega](f D g)
                    for &(mask, ref c) in gr.poisson_masks(a.mask, top) {
                        let v = *c * m;
                        if !v.is_zero() {
                            out.push((BasisKey::gr(mask, t2), v));
                        }
                    }
                }
                // k >= 2: zero
            }
            (Tag::Central, Tag::Gr) => {
                // c is even: [c(g), a(f)] = -[a(f), c(g)]
                for (k, c) in self.contact_bracket_keys(b, a) {
                    out.push((k, -c));
                }
            }
            (Tag::Central, Tag::Central) => {}
            _ => panic!("non-contact key in contact bracket"),
        }
        // normalize duplicates
        dedup_terms(&mut out);
        if cfg!(debug_assertions) {
            for (k, _) in &out {
                debug_assert!(self.key_legal(k), "bracket produced illegal key {k:?}");
            }
        }
        out
    }

    /// W(n) bracket via the action on the generators t and xi_k: the
    /// commutator of two superderivations is determined by its values there.
    fn w_bracket_keys(&self, a: &BasisKey, b: &BasisKey) -> KeyTerms {
        use crate::funcspace::SuperPoly;
        let n = self.n_gens();
        let pa = self.key_parity(a);
        let pb = self.key_parity(b);
        let parts = |k: &BasisKey| -> (SuperPoly, Vec<SuperPoly>) {
            let mut d = SuperPoly::zero(n);
            let mut dels = vec![SuperPoly::zero(n); n as usize];
            match k.tag {
                Tag::WD => d.add_term(k.t2, k.mask, Rat::ONE),
                Tag::WDel(i) => dels[i as usize].add_term(k.t2, k.mask, Rat::ONE),
                _ => panic!("non-W key"),
            }
            (d, dels)
        };
        let (da, dela) = parts(a);
        let (db, delb) = parts(b);
        let apply = |d: &SuperPoly, dels: &[SuperPoly], u: &SuperPoly| -> SuperPoly {
            let mut out = d.mul(&u.ramond_d());
            for (i, h) in dels.iter().enumerate() {
                if !h.is_zero() {
                    out = out.add(&h.mul(&u.del(i as u32)));
                }
            }
            out
        };
        let sign = if pa && pb { -Rat::ONE } else { Rat::ONE };
        // D-coefficient: X(g_Y) - (-1)^{|X||Y|} Y(g_X)
        let zg = apply(&da, &dela, &db).sub(&apply(&db, &delb, &da).scale(sign));
        let mut out = KeyTerms::new();
        for (&(t2, mask), &c) in &zg.terms {
            out.push((BasisKey::wd(mask, t2), c));
        }
        for i in 0..n as usize {
            let zh = apply(&da, &dela, &delb[i]).sub(&apply(&db, &delb, &dela[i]).scale(sign));
            for (&(t2, mask), &c) in &zh.terms {
                out.push((BasisKey::wdel(mask, i as u8, t2), c));
            }
        }
        out
    }

    /// Basis of the degree slot `deg` as a list of elements. For most
    /// families these are single keys; S(n;gamma) and the twisted algebras
    /// return genuine combinations.
    pub fn basis_at_degree(&self, deg: HalfInt) -> Vec<AlgebraElement> {
        match &self.id {
            AlgebraId::W { n } => {
                if deg.t2 % 2 != 0 {
                    return Vec::new();
                }
                let mut out = Vec::new();
                for mask in 0..(1u32 << n) {
                    out.push(self.element(BasisKey::wd(mask, deg.t2), Rat::ONE));
                    for i in 0..*n {
                        out.push(self.element(BasisKey::wdel(mask, i, deg.t2), Rat::ONE));
                    }
                }
                out
            }
            AlgebraId::S { .. } => crate::algebras::s_basis_at_degree(self, deg),
            AlgebraId::Contact { n, variant, .. } => {
                let mut out = Vec::new();
                for mask in 0..(1u32 << n) {
                    let mut k = BasisKey::gr(mask, deg.t2);
                    if matches!(variant, ContactVariant::Hat) && mask == (1 << n) - 1 {
                        k = BasisKey::central(deg.t2);
                        if self.key_legal(&k) && !out.iter().any(|e: &AlgebraElement| e.terms.contains_key(&k)) {
                            out.push(self.element(k, Rat::ONE));
                        }
                        continue;
                    }
                    if self.key_legal(&k) {
                        out.push(self.element(k, Rat::ONE));
                    }
                }
                out
            }
            AlgebraId::K2 { .. } => crate::algebras::k2_basis_at_degree(self, deg),
            AlgebraId::Ck6 => {
                if deg.t2 % 2 != 0 {
                    return Vec::new();
                }
                (0..crate::ck6::BASIS_DIM as u8)
                    .map(|i| self.element(BasisKey::ck6(i, deg.t2), Rat::ONE))
                    .collect()
            }
        }
    }

    pub fn basis_in_window(&self, lo: i64, hi: i64) -> Vec<AlgebraElement> {
        let mut out = Vec::new();
        for t2 in (2 * lo)..=(2 * hi) {
            out.extend(self.basis_at_degree(HalfInt::from_doubled(t2)));
        }
        out
    }

    /// Exhaustively verifies the super-Jacobi identity
    /// (-1)^{|x||z|}[x,[y,z]] + cyclic = 0 over all basis triples with
    /// t-degrees in the window.
    pub fn jacobi_check(&self, window: i64) -> Report {
        let basis = self.basis_in_window(-window, window);
        let n = basis.len();
        let idx: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let violations: Vec<Violation> = idx
            .par_iter()
            .flat_map_iter(|&(i, j)| {
                let mut local = Vec::new();
                let x = &basis[i];
                let y = &basis[j];
                let px = self.element_parity(x).expect("homogeneous basis");
                let py = self.element_parity(y).expect("homogeneous basis");
                let xy = self.bracket(x, y).expect("bracket");
                for z in &basis {
                    let pz = self.element_parity(z).expect("homogeneous basis");
                    let yz = self.bracket(y, z).expect("bracket");
                    let zx = self.bracket(z, x).expect("bracket");
                    let s1 = koszul(px, pz);
                    let s2 = koszul(py, px);
                    let s3 = koszul(pz, py);
                    let mut acc = self.bracket(x, &yz).expect("bracket").scale(s1);
                    acc = acc
                        .add(&self.bracket(y, &zx).expect("bracket").scale(s2))
                        .expect("add");
                    acc = acc
                        .add(&self.bracket(z, &xy).expect("bracket").scale(s3))
                        .expect("add");
                    if !acc.is_zero() {
                        local.push(Violation {
                            x: x.to_string(),
                            y: y.to_string(),
                            z: z.to_string(),
                            residual: acc.to_string(),
                        });
                    }
                }
                local
            })
            .collect();
        Report { checked: (n * n * n) as u64, violations }
    }
}

pub fn koszul(pa: bool, pb: bool) -> Rat {
    if pa && pb {
        -Rat::ONE
    } else {
        Rat::ONE
    }
}

fn dedup_terms(terms: &mut KeyTerms) {
    if terms.len() < 2 {
        return;
    }
    let mut map: BTreeMap<BasisKey, Rat> = BTreeMap::new();
    for (k, c) in terms.drain(..) {
        *map.entry(k).or_insert(Rat::ZERO) += c;
    }
    for (k, c) in map {
        if !c.is_zero() {
            terms.push((k, c));
        }
    }
}

/// Audit result with the offending triples, if any.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub checked: u64,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub x: String,
    pub y: String,
    pub z: String,
    pub residual: String,
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // the standalone Witt algebra prints in its E_n = -t^n D basis
        let vir = matches!(self.id, AlgebraId::Contact { n: 0, .. });
        let names = key_namer(&self.id);
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let (c, name) = if vir { (-*c, "E".to_string()) } else { (*c, names(k)) };
            if c != Rat::ONE {
                write!(f, "{c}*")?;
            }
            write!(f, "{}@{}", name, k.degree())?;
        }
        Ok(())
    }
}

fn key_namer(id: &AlgebraId) -> Box<dyn Fn(&BasisKey) -> String + '_> {
    let form: Option<GrassForm> = match id {
        AlgebraId::W { n } | AlgebraId::S { n, .. } => Some(GrassForm::std(*n as u32)),
        AlgebraId::Contact { n, basis, .. } => Some(match basis {
            ContactBasis::Split => GrassForm::split(*n as u32),
            ContactBasis::Std => GrassForm::std(*n as u32),
        }),
        AlgebraId::K2 { m } => Some(GrassForm::split(2 * *m as u32)),
        AlgebraId::Ck6 => None,
    };
    Box::new(move |k: &BasisKey| -> String {
        let mono = |mask: Mask| -> String {
            let form = form.as_ref().expect("grass form");
            if mask == 0 {
                return String::new();
            }
            (0..form.n_gens())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| form.gen_name(i))
                .collect::<Vec<_>>()
                .join(".")
        };
        match k.tag {
            Tag::Gr => {
                if k.mask == 0 {
                    "D".to_string()
                } else {
                    mono(k.mask)
                }
            }
            Tag::Central => "c".to_string(),
            Tag::WD => {
                if k.mask == 0 {
                    "D".to_string()
                } else {
                    format!("{}.D", mono(k.mask))
                }
            }
            Tag::WDel(i) => {
                if k.mask == 0 {
                    format!("dxi{}", i + 1)
                } else {
                    format!("{}.dxi{}", mono(k.mask), i + 1)
                }
            }
            Tag::Ck6(i) => crate::ck6::basis_name(i),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras;

    #[test]
    fn vir_bracket() {
        // [E_2, E_-1] = 3 E_1 with E_n = -t^n D realized as -t^n in K(0;D)
        let vir = algebras::vir();
        let e = |n: i64| vir.element(BasisKey::gr(0, 2 * n), -Rat::ONE);
        let r = vir.bracket(&e(2), &e(-1)).unwrap();
        assert_eq!(r, e(1).scale(Rat::int(3)));
    }

    #[test]
    fn k4_zeta_eta_bracket() {
        // [zeta1(t), eta1(1/t)] = D(t^0) - zeta1.eta1(t^0)
        let k4 = algebras::k(4);
        let z1 = k4.element(BasisKey::gr(0b01, 2), Rat::ONE);
        let e1 = k4.element(BasisKey::gr(0b10, -2), Rat::ONE);
        let r = k4.bracket(&z1, &e1).unwrap();
        let mut expect = AlgebraElement::zero(&k4.id);
        expect.add_term(BasisKey::gr(0, 0), Rat::ONE);
        expect.add_term(BasisKey::gr(0b11, 0), -Rat::ONE);
        assert_eq!(r, expect);
    }

    #[test]
    fn zeta_eta_gives_ramond_derivation() {
        // [zeta1, eta1] = D at t^0
        let k4 = algebras::k(4);
        let z1 = k4.element(BasisKey::gr(0b01, 0), Rat::ONE);
        let e1 = k4.element(BasisKey::gr(0b10, 0), Rat::ONE);
        let r = k4.bracket(&z1, &e1).unwrap();
        assert_eq!(r, k4.element(BasisKey::gr(0, 0), Rat::ONE));
    }

    #[test]
    fn weights_and_split() {
        let k4 = algebras::k(4);
        let (w, fdeg, parity) = k4.weight_of(&BasisKey::gr(0b01, 0)).unwrap();
        assert_eq!(w, vec![Rat::ONE, Rat::ZERO]);
        assert_eq!(fdeg, Rat::int(2));
        assert!(parity);
        // D has weight zero
        let (w, fdeg, _) = k4.weight_of(&BasisKey::gr(0, 0)).unwrap();
        assert!(w.iter().all(|x| x.is_zero()) && fdeg.is_zero());
        // eta1 zeta2 has weight (-1, 1)
        let (w, _, _) = k4.weight_of(&BasisKey::gr(0b0110, 0)).unwrap();
        assert_eq!(w, vec![-Rat::ONE, Rat::ONE]);
        // termwise triangular split
        let mut x = AlgebraElement::zero(&k4.id);
        x.add_term(BasisKey::gr(0b01, 0), Rat::ONE); // zeta1, F-degree 2
        x.add_term(BasisKey::gr(0b10, 0), Rat::ONE); // eta1, F-degree -2
        let (p, z, n) = k4.triangular_split(&x);
        assert_eq!(p.terms.len(), 1);
        assert!(z.is_zero());
        assert_eq!(n.terms.len(), 1);
        // idempotent
        let (p2, _, _) = k4.triangular_split(&p);
        assert_eq!(p2, p);
        // components sum back
        assert_eq!(p.add(&z).unwrap().add(&n).unwrap(), x);
    }

    #[test]
    fn w2_jacobi_small_window() {
        let w2 = algebras::w(2);
        let rep = w2.jacobi_check(2);
        assert!(rep.ok(), "violations: {:?}", rep.violations.first());
    }

    #[test]
    fn corrupted_constant_is_caught() {
        // fault injection: a deliberately wrong bracket value must show up
        let k4 = algebras::k(4);
        let basis = k4.basis_in_window(-1, 1);
        let x = &basis[0];
        // take a genuine residual and corrupt one bracket by hand
        let y = k4.element(BasisKey::gr(0b01, 0), Rat::ONE);
        let z = k4.element(BasisKey::gr(0b10, 0), Rat::ONE);
        let good = k4.bracket(&y, &z).unwrap();
        let bad = good.scale(Rat::int(2)); // wrong constant
        let lhs = k4.bracket(x, &bad).unwrap();
        let rhs = k4.bracket(x, &good).unwrap();
        assert_ne!(lhs, rhs);
    }
}
