//! The exceptional superconformal algebra CK(6), realized as 8x8 matrices
//! over symbols f(t) + g(t) D of differential operators of order <= 1 on
//! C[t,1/t], with the block constraints coupling the D-part of the upper
//! right block to the Pfaffian adjoint of the lower left block.

use std::collections::BTreeMap;

use serde::Serialize;
use smallvec::SmallVec;

use crate::error::AlgError;
use crate::liecore::{BasisKey, KeyTerms, Tag};
use crate::scalar::{HalfInt, Rat};

/// F in epsilon coordinates: eps_1(F)=2, eps_2(F)=4, eps_3(F)=8.
pub const F_EPS_COORDS: [i64; 3] = [2, 4, 8];

/// 32 basis elements per t-degree: Vir, sl(4), the symmetric upper-right
/// block and the skew lower-left block.
pub const BASIS_DIM: usize = 32;

/// Operator entry: finite sum of coeff * t^{t2/2} * D^dpow.
pub type Entry = SmallVec<[(i64, u8, Rat); 3]>;

fn entry_add(e: &mut Entry, t2: i64, dpow: u8, c: Rat) {
    if c.is_zero() {
        return;
    }
    for (tt, dd, cc) in e.iter_mut() {
        if *tt == t2 && *dd == dpow {
            *cc += c;
            if cc.is_zero() {
                e.retain(|(a, b, v)| !(*a == t2 && *b == dpow && v.is_zero()));
            }
            return;
        }
    }
    e.push((t2, dpow, c));
}

/// Sparse 8x8 matrix over operator entries, stored row-wise.
#[derive(Clone, Debug, PartialEq)]
pub struct Ck6Element {
    pub rows: Vec<SmallVec<[(u8, Entry); 6]>>,
}

impl Default for Ck6Element {
    fn default() -> Self {
        Ck6Element { rows: vec![SmallVec::new(); 8] }
    }
}

impl Ck6Element {
    pub fn zero() -> Ck6Element {
        Ck6Element::default()
    }

    pub fn add(&mut self, r: usize, c: usize, t2: i64, dpow: u8, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        for (cc, e) in self.rows[r].iter_mut() {
            if *cc as usize == c {
                entry_add(e, t2, dpow, coeff);
                return;
            }
        }
        let mut e = Entry::new();
        e.push((t2, dpow, coeff));
        self.rows[r].push((c as u8, e));
    }

    pub fn entry(&self, r: usize, c: usize) -> Entry {
        self.rows[r]
            .iter()
            .find(|(cc, _)| *cc as usize == c)
            .map(|(_, e)| e.clone())
            .unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|(_, e)| e.iter().all(|(_, _, c)| c.is_zero())))
    }

    pub fn scale(&self, s: Rat) -> Ck6Element {
        let mut out = Ck6Element::zero();
        for (r, row) in self.rows.iter().enumerate() {
            for (c, e) in row {
                for &(t2, d, v) in e {
                    out.add(r, *c as usize, t2, d, v * s);
                }
            }
        }
        out
    }

    pub fn plus(&self, other: &Ck6Element) -> Ck6Element {
        let mut out = self.clone();
        for (r, row) in other.rows.iter().enumerate() {
            for (c, e) in row {
                for &(t2, d, v) in e {
                    out.add(r, *c as usize, t2, d, v);
                }
            }
        }
        out
    }

    /// Block parity of a position: diagonal blocks even, off-diagonal odd.
    fn pos_parity(r: usize, c: usize) -> bool {
        (r < 4) != (c < 4)
    }

    fn parity_part(&self, odd: bool) -> Ck6Element {
        let mut out = Ck6Element::zero();
        for (r, row) in self.rows.iter().enumerate() {
            for (c, e) in row {
                if Ck6Element::pos_parity(r, *c as usize) == odd {
                    for &(t2, d, v) in e {
                        out.add(r, *c as usize, t2, d, v);
                    }
                }
            }
        }
        out
    }

    /// Operator-valued matrix product; composes entries by the Leibniz rule
    /// (f D^a)(g D^b) = sum_j C(a,j) f D^j(g) D^{a+b-j}.
    pub fn matmul(&self, other: &Ck6Element) -> Ck6Element {
        let mut cols: Vec<SmallVec<[(u8, &Entry); 6]>> = vec![SmallVec::new(); 8];
        for (r, row) in other.rows.iter().enumerate() {
            for (c, e) in row {
                cols[r].push((*c, e));
            }
        }
        let mut out = Ck6Element::zero();
        for (r, row) in self.rows.iter().enumerate() {
            for (kcol, e1) in row {
                for (c, e2) in &cols[*kcol as usize] {
                    for &(t1, d1, v1) in e1 {
                        for &(t2, d2, v2) in e2.iter() {
                            // compose f t^{t1} D^{d1} with g t^{t2} D^{d2}
                            let mut binom = 1i128;
                            for j in 0..=d1 {
                                if j > 0 {
                                    binom = binom * ((d1 - j + 1) as i128) / (j as i128);
                                }
                                let djg = HalfInt::from_doubled(t2).as_rat().pow(j as u32);
                                let coeff = v1 * v2 * Rat::int(binom) * djg;
                                out.add(r, *c as usize, t1 + t2, d1 + d2 - j, coeff);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Supercommutator with respect to the block parity.
    pub fn bracket(&self, other: &Ck6Element) -> Ck6Element {
        let m1 = self.matmul(other);
        let m2 = other.matmul(self);
        let m3 = other.parity_part(true).matmul(&self.parity_part(true));
        m1.plus(&m2.scale(-Rat::ONE)).plus(&m3.scale(Rat::int(2)))
    }
}

/// 4x4 Laurent-polynomial matrix; used for the skew/symmetric blocks.
pub type LaurentMat = Vec<Vec<BTreeMap<i64, Rat>>>;

pub fn lm_zero() -> LaurentMat {
    vec![vec![BTreeMap::new(); 4]; 4]
}

pub fn lm_add(m: &mut LaurentMat, r: usize, c: usize, t2: i64, v: Rat) {
    if v.is_zero() {
        return;
    }
    let e = m[r][c].entry(t2).or_insert(Rat::ZERO);
    *e += v;
    if e.is_zero() {
        m[r][c].remove(&t2);
    }
}

pub fn lm_is_skew(m: &LaurentMat) -> bool {
    for r in 0..4 {
        for c in 0..4 {
            let mut neg = m[c][r].clone();
            for v in neg.values_mut() {
                *v = -*v;
            }
            if m[r][c] != neg {
                return false;
            }
        }
    }
    true
}

pub fn lm_is_sym(m: &LaurentMat) -> bool {
    (0..4).all(|r| (0..4).all(|c| m[r][c] == m[c][r]))
}

fn lm_mul_scalarwise(a: &LaurentMat, b: &LaurentMat) -> LaurentMat {
    let mut out = lm_zero();
    for r in 0..4 {
        for c in 0..4 {
            for k in 0..4 {
                for (&t1, &v1) in &a[r][k] {
                    for (&t2, &v2) in &b[k][c] {
                        lm_add(&mut out, r, c, t1 + t2, v1 * v2);
                    }
                }
            }
        }
    }
    out
}

/// Pfaffian of a skew map, with the volume element fixed once and for all
/// as x1 ^ x2 ^ x3 ^ x4.
pub fn ck6_pf(s: &LaurentMat) -> BTreeMap<i64, Rat> {
    // Pf = s12 s34 - s13 s24 + s14 s23
    let mut out: BTreeMap<i64, Rat> = BTreeMap::new();
    let mut acc = |a: &BTreeMap<i64, Rat>, b: &BTreeMap<i64, Rat>, sgn: Rat| {
        for (&t1, &v1) in a {
            for (&t2, &v2) in b {
                let e = out.entry(t1 + t2).or_insert(Rat::ZERO);
                *e += v1 * v2 * sgn;
                if e.is_zero() {
                    out.remove(&(t1 + t2));
                }
            }
        }
    };
    acc(&s[0][1], &s[2][3], Rat::ONE);
    acc(&s[0][2], &s[1][3], -Rat::ONE);
    acc(&s[0][3], &s[1][2], Rat::ONE);
    out
}

/// The linear Pfaffian-adjoint map with phi(s) . s = Pf(s) Id and
/// s . phi(s) = Pf(s) Id; it lands in the skew maps again.
pub fn ck6_phi(s: &LaurentMat) -> LaurentMat {
    let mut out = lm_zero();
    let pairs: [((usize, usize), (usize, usize), i64); 6] = [
        ((0, 1), (2, 3), -1),
        ((0, 2), (1, 3), 1),
        ((0, 3), (1, 2), -1),
        ((1, 2), (0, 3), -1),
        ((1, 3), (0, 2), 1),
        ((2, 3), (0, 1), -1),
    ];
    for ((r, c), (sr, sc), sgn) in pairs {
        for (&t2, &v) in &s[sr][sc] {
            let val = v * Rat::int(sgn as i128);
            lm_add(&mut out, r, c, t2, val);
            lm_add(&mut out, c, r, t2, -val);
        }
    }
    out
}

pub fn phi_times_s_is_pf(s: &LaurentMat) -> bool {
    let phi = ck6_phi(s);
    let pf = ck6_pf(s);
    let prod1 = lm_mul_scalarwise(&phi, s);
    let prod2 = lm_mul_scalarwise(s, &phi);
    for p in [&prod1, &prod2] {
        for r in 0..4 {
            for c in 0..4 {
                let expect = if r == c { pf.clone() } else { BTreeMap::new() };
                if p[r][c] != expect {
                    return false;
                }
            }
        }
    }
    true
}

/// Block data extracted from a membership check.
pub struct Blocks {
    /// Virasoro coefficient f(t)
    pub f: BTreeMap<i64, Rat>,
    /// traceless order-0 part of the upper left block
    pub a: LaurentMat,
    /// symmetric order-0 part of the upper right block
    pub h: LaurentMat,
    /// skew lower left block
    pub c: LaurentMat,
}

/// Checks the four block constraints exactly and returns the block data:
/// A = a + (fD + D(f)/4) Id_V, D-block = -a^T + (fD + 3D(f)/4) Id_{V*},
/// C skew of order 0, B = H + phi(C) D + D(phi(C))/2 with H symmetric.
pub fn ck6_membership(x: &Ck6Element) -> Result<Blocks, AlgError> {
    let fail = |m: &str| AlgError::NotMember(m.to_string());
    // split entries by dpow
    let mut ord0 = vec![vec![BTreeMap::<i64, Rat>::new(); 8]; 8];
    let mut ord1 = vec![vec![BTreeMap::<i64, Rat>::new(); 8]; 8];
    for (r, row) in x.rows.iter().enumerate() {
        for (c, e) in row {
            for &(t2, d, v) in e {
                if v.is_zero() {
                    continue;
                }
                match d {
                    0 => {
                        *ord0[r][*c as usize].entry(t2).or_insert(Rat::ZERO) += v;
                    }
                    1 => {
                        *ord1[r][*c as usize].entry(t2).or_insert(Rat::ZERO) += v;
                    }
                    _ => return Err(fail("operator order exceeds 1")),
                }
            }
        }
    }
    let clean = |m: &mut BTreeMap<i64, Rat>| m.retain(|_, v| !v.is_zero());
    ord0.iter_mut().for_each(|r| r.iter_mut().for_each(clean));
    ord1.iter_mut().for_each(|r| r.iter_mut().for_each(clean));

    // D-part of the diagonal blocks must be f * Id on both
    let f = ord1[0][0].clone();
    for i in 0..8 {
        for j in 0..8 {
            let expect = if i == j && i < 4 {
                f.clone()
            } else if i == j {
                f.clone()
            } else if (i < 4) == (j < 4) {
                BTreeMap::new()
            } else {
                continue; // off-diagonal D-parts handled below
            };
            if ord1[i][j] != expect {
                return Err(fail("diagonal D-part is not a scalar matrix"));
            }
        }
    }
    // upper right block: order 0 and skew
    let mut c_blk = lm_zero();
    for r in 0..4 {
        for cc in 0..4 {
            if !ord1[r][4 + cc].is_empty() {
                return Err(fail("upper right block has a D-part"));
            }
            c_blk[r][cc] = ord0[r][4 + cc].clone();
        }
    }
    if !lm_is_skew(&c_blk) {
        return Err(fail("upper right block is not skew"));
    }
    // lower left D-part must equal phi(C)
    let phi_c = ck6_phi(&c_blk);
    for r in 0..4 {
        for cc in 0..4 {
            if ord1[4 + r][cc] != phi_c[r][cc] {
                return Err(fail("lower left D-part differs from phi(C)"));
            }
        }
    }
    // H := B0 - D(phi(C))/2 must be symmetric
    let mut h_blk = lm_zero();
    for r in 0..4 {
        for cc in 0..4 {
            h_blk[r][cc] = ord0[4 + r][cc].clone();
            let d_half: Vec<(i64, Rat)> = phi_c[r][cc]
                .iter()
                .map(|(&t2, &v)| (t2, v * HalfInt::from_doubled(t2).as_rat() * Rat::new(1, 2)))
                .collect();
            for (t2, v) in d_half {
                lm_add(&mut h_blk, r, cc, t2, -v);
            }
        }
    }
    if !lm_is_sym(&h_blk) {
        return Err(fail("lower left order-0 part minus D(phi(C))/2 is not symmetric"));
    }
    // a := A0 - D(f)/4 must be traceless and the D-block must match -a^T + 3D(f)/4
    let quarter = Rat::new(1, 4);
    let mut a_blk = lm_zero();
    for r in 0..4 {
        for cc in 0..4 {
            a_blk[r][cc] = ord0[r][cc].clone();
            if r == cc {
                for (&t2, &v) in &f {
                    lm_add(&mut a_blk, r, cc, t2, -v * HalfInt::from_doubled(t2).as_rat() * quarter);
                }
            }
        }
    }
    let mut trace: BTreeMap<i64, Rat> = BTreeMap::new();
    for item in a_blk.iter().take(4).enumerate() {
        let (r, row) = item;
        for (&t2, &v) in &row[r] {
            let e = trace.entry(t2).or_insert(Rat::ZERO);
            *e += v;
            if e.is_zero() {
                trace.remove(&t2);
            }
        }
    }
    if !trace.is_empty() {
        return Err(fail("upper left order-0 part is not traceless"));
    }
    let tq = Rat::new(3, 4);
    for r in 0..4 {
        for cc in 0..4 {
            let mut expect: BTreeMap<i64, Rat> = a_blk[cc][r]
                .iter()
                .map(|(&t2, &v)| (t2, -v))
                .collect();
            if r == cc {
                for (&t2, &v) in &f {
                    let e = expect.entry(t2).or_insert(Rat::ZERO);
                    *e += v * HalfInt::from_doubled(t2).as_rat() * tq;
                    if e.is_zero() {
                        expect.remove(&t2);
                    }
                }
            }
            expect.retain(|_, v| !v.is_zero());
            if ord0[4 + r][4 + cc] != expect {
                return Err(fail("lower right block differs from -a^T + 3D(f)/4"));
            }
        }
    }
    Ok(Blocks { f, a: a_blk, h: h_blk, c: c_blk })
}

/// Indexing of the 32 basis elements per t-degree.
///   0        : Vir
///   1..=12   : sl(4) off-diagonal E_ab (row-major, a != b)
///   13..=15  : coroots h1, h2, h3
///   16..=25  : symmetric upper-right block (Eab+Eba for a<b, then Eaa)
///   26..=31  : skew lower-left block (Eab-Eba for a<b) with phi-completion
pub struct Ck6Basis {
    weights: Vec<Vec<Rat>>,
    parities: Vec<bool>,
    /// memoized key-level brackets; the same pairs recur millions of times
    /// in the Jacobi audit
    cache: std::sync::RwLock<std::collections::HashMap<(u8, i64, u8, i64), KeyTerms>>,
}

const H_DIAGS: [[i64; 4]; 3] = [[1, -1, 0, 0], [0, 0, 1, -1], [0, 1, -1, 0]];

fn offdiag_list() -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            if a != b {
                v.push((a, b));
            }
        }
    }
    v
}

fn sym_list() -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for a in 0..4 {
        for b in a + 1..4 {
            v.push((a, b));
        }
    }
    for a in 0..4 {
        v.push((a, a));
    }
    v
}

fn skew_list() -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for a in 0..4 {
        for b in a + 1..4 {
            v.push((a, b));
        }
    }
    v
}

pub fn basis_name(idx: u8) -> String {
    let i = idx as usize;
    if i == 0 {
        return "Vir".to_string();
    }
    if (1..=12).contains(&i) {
        let (a, b) = offdiag_list()[i - 1];
        return format!("E{}{}", a + 1, b + 1);
    }
    if (13..=15).contains(&i) {
        return format!("h{}", i - 12);
    }
    if (16..=25).contains(&i) {
        let (a, b) = sym_list()[i - 16];
        return format!("B{}{}", a + 1, b + 1);
    }
    let (a, b) = skew_list()[i - 26];
    format!("C{}{}", a + 1, b + 1)
}

/// The basis matrix of the given index at t-degree n (t2 doubled).
pub fn basis_matrix(idx: u8, t2: i64) -> Ck6Element {
    let i = idx as usize;
    let n4 = HalfInt::from_doubled(t2).as_rat() * Rat::new(1, 4);
    let mut m = Ck6Element::zero();
    if i == 0 {
        for d in 0..4 {
            m.add(d, d, t2, 1, Rat::ONE);
            m.add(d, d, t2, 0, n4);
            m.add(4 + d, 4 + d, t2, 1, Rat::ONE);
            m.add(4 + d, 4 + d, t2, 0, n4 * Rat::int(3));
        }
        return m;
    }
    if (1..=12).contains(&i) {
        let (a, b) = offdiag_list()[i - 1];
        m.add(a, b, t2, 0, Rat::ONE);
        m.add(4 + b, 4 + a, t2, 0, -Rat::ONE);
        return m;
    }
    if (13..=15).contains(&i) {
        let d = H_DIAGS[i - 13];
        for (pos, &v) in d.iter().enumerate() {
            if v != 0 {
                m.add(pos, pos, t2, 0, Rat::int(v as i128));
                m.add(4 + pos, 4 + pos, t2, 0, Rat::int(-v as i128));
            }
        }
        return m;
    }
    if (16..=25).contains(&i) {
        // symmetric generators live in the lower left block
        let (a, b) = sym_list()[i - 16];
        m.add(4 + a, b, t2, 0, Rat::ONE);
        if a != b {
            m.add(4 + b, a, t2, 0, Rat::ONE);
        }
        return m;
    }
    // skew upper-right generator with its phi-completion in the lower left
    let (a, b) = skew_list()[i - 26];
    let mut s = lm_zero();
    lm_add(&mut s, a, b, t2, Rat::ONE);
    lm_add(&mut s, b, a, t2, -Rat::ONE);
    for r in 0..4 {
        for c in 0..4 {
            for (&tt, &v) in &s[r][c] {
                m.add(r, 4 + c, tt, 0, v);
            }
        }
    }
    let phi = ck6_phi(&s);
    let half = Rat::new(1, 2);
    for r in 0..4 {
        for c in 0..4 {
            for (&tt, &v) in &phi[r][c] {
                m.add(4 + r, c, tt, 1, v);
                m.add(4 + r, c, tt, 0, v * HalfInt::from_doubled(tt).as_rat() * half);
            }
        }
    }
    m
}

/// Decomposes a member into basis coordinates.
pub fn decompose(x: &Ck6Element) -> Result<Vec<(u8, i64, Rat)>, AlgError> {
    let blocks = ck6_membership(x)?;
    let mut out = Vec::new();
    for (&t2, &v) in &blocks.f {
        out.push((0u8, t2, v));
    }
    for (pos, (a, b)) in offdiag_list().into_iter().enumerate() {
        for (&t2, &v) in &blocks.a[a][b] {
            out.push((1 + pos as u8, t2, v));
        }
    }
    // diagonal part of a in the coroot basis: alpha=d1, beta=-d4, gamma=d1+d2
    let diag: Vec<BTreeMap<i64, Rat>> = (0..4).map(|r| blocks.a[r][r].clone()).collect();
    let mut t2s: Vec<i64> = Vec::new();
    for d in &diag {
        t2s.extend(d.keys().copied());
    }
    t2s.sort();
    t2s.dedup();
    for t2 in t2s {
        let d: Vec<Rat> = (0..4)
            .map(|r| diag[r].get(&t2).copied().unwrap_or(Rat::ZERO))
            .collect();
        let alpha = d[0];
        let beta = -d[3];
        let gamma = d[0] + d[1];
        for (j, v) in [alpha, beta, gamma].into_iter().enumerate() {
            if !v.is_zero() {
                out.push((13 + j as u8, t2, v));
            }
        }
    }
    for (pos, (a, b)) in sym_list().into_iter().enumerate() {
        for (&t2, &v) in &blocks.h[a][b] {
            out.push((16 + pos as u8, t2, v));
        }
    }
    for (pos, (a, b)) in skew_list().into_iter().enumerate() {
        for (&t2, &v) in &blocks.c[a][b] {
            out.push((26 + pos as u8, t2, v));
        }
    }
    Ok(out)
}

impl Ck6Basis {
    pub fn new() -> Ck6Basis {
        // weights from the h-eigenvalues, converted to epsilon coordinates
        let mut weights = Vec::with_capacity(BASIS_DIM);
        let mut parities = Vec::with_capacity(BASIS_DIM);
        for idx in 0..BASIS_DIM as u8 {
            let x = basis_matrix(idx, 0);
            let mut hvals = [Rat::ZERO; 3];
            for (j, hv) in hvals.iter_mut().enumerate() {
                let h = basis_matrix(13 + j as u8, 0);
                let br = h.bracket(&x);
                // eigenvector: br = m * x
                let m = eigen_scalar(&br, &x);
                *hv = m.expect("basis must be an ad(H) eigenvector");
            }
            let l1 = (hvals[0] - hvals[1]) * Rat::new(1, 2);
            let l2 = (hvals[0] + hvals[1]) * Rat::new(1, 2);
            let l3 = hvals[2] + l2;
            weights.push(vec![l1, l2, l3]);
            parities.push((16..32).contains(&(idx as usize)));
        }
        Ck6Basis { weights, parities, cache: std::sync::RwLock::new(Default::default()) }
    }

    pub fn weight(&self, idx: u8) -> Vec<Rat> {
        self.weights[idx as usize].clone()
    }

    pub fn parity(&self, idx: u8) -> bool {
        self.parities[idx as usize]
    }

    pub fn cartan_keys(&self) -> Vec<BasisKey> {
        (13..=15).map(|i| BasisKey::ck6(i, 0)).collect()
    }

    /// F = diag(7,1,-3,-5) = 7 h1 + 5 h2 + 8 h3.
    pub fn f_element_terms(&self) -> Vec<(BasisKey, Rat)> {
        vec![
            (BasisKey::ck6(13, 0), Rat::int(7)),
            (BasisKey::ck6(14, 0), Rat::int(5)),
            (BasisKey::ck6(15, 0), Rat::int(8)),
        ]
    }

    pub fn bracket_keys(&self, a: &BasisKey, b: &BasisKey) -> KeyTerms {
        let (Tag::Ck6(i), Tag::Ck6(j)) = (a.tag, b.tag) else {
            panic!("non-CK6 keys")
        };
        let key = (i, a.t2, j, b.t2);
        if let Some(hit) = self.cache.read().expect("cache").get(&key) {
            return hit.clone();
        }
        let ma = basis_matrix(i, a.t2);
        let mb = basis_matrix(j, b.t2);
        let br = ma.bracket(&mb);
        let mut out = KeyTerms::new();
        for (idx, t2, c) in decompose(&br).expect("bracket of members is a member") {
            out.push((BasisKey::ck6(idx, t2), c));
        }
        self.cache.write().expect("cache").insert(key, out.clone());
        out
    }
}

/// If br == m * x for a scalar m, return it.
fn eigen_scalar(br: &Ck6Element, x: &Ck6Element) -> Option<Rat> {
    if br.is_zero() {
        return Some(Rat::ZERO);
    }
    // find the first nonzero entry of x and compare
    for (r, row) in x.rows.iter().enumerate() {
        for (c, e) in row {
            for &(t2, d, v) in e {
                if v.is_zero() {
                    continue;
                }
                let be = br.entry(r, *c as usize);
                let bv = be
                    .iter()
                    .find(|(tt, dd, _)| *tt == t2 && *dd == d)
                    .map(|(_, _, w)| *w)
                    .unwrap_or(Rat::ZERO);
                let m = bv / v;
                return if br == &x.scale(m) { Some(m) } else { None };
            }
        }
    }
    None
}

/// Element of the defining module W = (V + V*) (x) t^u C[t,1/t]:
/// components 0..4 are the x_i, components 4..8 the dual dx_i; the i64 key n
/// stands for t^{n+u}.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DefVec {
    pub comps: Vec<BTreeMap<i64, Rat>>,
}

impl DefVec {
    pub fn zero() -> DefVec {
        DefVec { comps: vec![BTreeMap::new(); 8] }
    }

    pub fn unit(comp: usize, n: i64) -> DefVec {
        let mut v = DefVec::zero();
        v.comps[comp].insert(n, Rat::ONE);
        v
    }

    pub fn add_term(&mut self, comp: usize, n: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.comps[comp].entry(n).or_insert(Rat::ZERO);
        *e += c;
        if e.is_zero() {
            self.comps[comp].remove(&n);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_empty())
    }

    pub fn plus(&self, other: &DefVec) -> DefVec {
        let mut out = self.clone();
        for (comp, terms) in other.comps.iter().enumerate() {
            for (&n, &c) in terms {
                out.add_term(comp, n, c);
            }
        }
        out
    }

    pub fn scale(&self, s: Rat) -> DefVec {
        let mut out = DefVec::zero();
        for (comp, terms) in self.comps.iter().enumerate() {
            for (&n, &c) in terms {
                out.add_term(comp, n, c * s);
            }
        }
        out
    }
}

/// Action of a member on the t^u-shifted defining module: D acts on t^{n+u}
/// as (n+u), f(t) shifts the exponent.
pub fn ck6_defining_act(x: &Ck6Element, w: &DefVec, u: Rat) -> Result<DefVec, AlgError> {
    ck6_membership(x)?;
    let mut out = DefVec::zero();
    for (r, row) in x.rows.iter().enumerate() {
        for (c, e) in row {
            for &(t2, d, v) in e {
                debug_assert!(t2 % 2 == 0);
                for (&n, &wc) in &w.comps[*c as usize] {
                    let mut coeff = v * wc;
                    for _ in 0..d {
                        coeff *= Rat::int(n as i128) + u;
                    }
                    out.add_term(r, n + t2 / 2, coeff);
                }
            }
        }
    }
    Ok(out)
}

/// c = h1 + h2 + 2 h3 as a member.
pub fn central_c(t2: i64) -> Ck6Element {
    let mut m = basis_matrix(13, t2);
    m = m.plus(&basis_matrix(14, t2));
    m = m.plus(&basis_matrix(15, t2).scale(Rat::int(2)));
    m
}
