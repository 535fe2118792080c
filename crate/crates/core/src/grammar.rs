//! The element grammar shared by the command line and the test harnesses:
//! terms `coef*name@tpow` joined by `+`/`-`, with rational coefficients
//! `p/q` and half-integer t-powers `3/2`. One grammar across families.

use crate::algebras;
use crate::error::AlgError;
use crate::liecore::{AlgebraDef, AlgebraElement, AlgebraId, BasisKey};
use crate::scalar::{HalfInt, Rat};

/// Parses an algebra id: `W:2`, `S:2:g=1/3`, `K:5`, `K:3:ns`, `KD:4`,
/// `Khat:4`, `CK6`, `K2:4`, `Vir`; `:std` selects the standard basis of a
/// contact family.
pub fn parse_algebra(s: &str) -> Result<AlgebraDef, AlgError> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || AlgError::Parse(format!("unknown algebra id `{s}`"));
    let n_of = |p: &str| p.parse::<u8>().map_err(|_| bad());
    match parts.as_slice() {
        ["Vir"] => Ok(algebras::vir()),
        ["CK6"] => Ok(algebras::ck6()),
        ["W", n] => Ok(algebras::w(n_of(n)?)),
        ["S", n, g] => {
            let g = g.strip_prefix("g=").ok_or_else(bad)?;
            Ok(algebras::s(n_of(n)?, Rat::parse(g)?))
        }
        ["K", n] => Ok(algebras::k(n_of(n)?)),
        ["K", n, "ns"] => Ok(algebras::k_ns(n_of(n)?)),
        ["KD", n] => Ok(algebras::kd_split(n_of(n)?)),
        ["KD", n, "std"] => Ok(algebras::kd_std(n_of(n)?)),
        ["Khat", "4"] => Ok(algebras::khat4()),
        ["Khat", "4", "std"] => Ok(algebras::khat4_std()),
        ["K2", n] => {
            let n = n_of(n)?;
            if n % 2 != 0 || n < 2 {
                return Err(bad());
            }
            Ok(algebras::k2(n / 2))
        }
        _ => Err(bad()),
    }
}

/// Short aliases used in mode words: z1 = zeta1, e1 = eta1, z1s/e1s the
/// degree-three partners, x = xi, d = the Virasoro line.
fn expand_alias(name: &str) -> String {
    match name {
        "d" | "D" => "D".to_string(),
        "x" => "xi".to_string(),
        "z1s" => "zeta1.zeta2.eta2".to_string(),
        "e1s" => "eta1.zeta2.eta2".to_string(),
        _ => {
            if let Some(i) = name.strip_prefix('z') {
                if !i.is_empty() && i.chars().all(|c| c.is_ascii_digit()) {
                    return format!("zeta{i}");
                }
            }
            if let Some(i) = name.strip_prefix('e') {
                if !i.is_empty() && i.chars().all(|c| c.is_ascii_digit()) {
                    return format!("eta{i}");
                }
            }
            name.to_string()
        }
    }
}

/// Parses one `name@tpow` atom into a basis element of the algebra.
pub fn parse_atom(alg: &AlgebraDef, s: &str) -> Result<AlgebraElement, AlgError> {
    let (name, tpow) = s
        .split_once('@')
        .ok_or_else(|| AlgError::Parse(format!("missing `@tpow` in `{s}`")))?;
    let t2 = HalfInt::parse(tpow)?.t2;
    let name = expand_alias(name.trim());
    // E@n is the Virasoro basis -t^n D
    if name == "E" {
        let key = match alg.id {
            AlgebraId::W { .. } | AlgebraId::S { .. } => BasisKey::wd(0, t2),
            _ => BasisKey::gr(0, t2),
        };
        return checked(alg, key, -Rat::ONE);
    }
    match &alg.id {
        AlgebraId::W { .. } | AlgebraId::S { .. } => {
            // grammar: [gen.gen...].D, [gen.gen...].dxiK, bare D or dxiK
            let parts: Vec<&str> = name.split('.').collect();
            let (head, tail) = parts.split_at(parts.len() - 1);
            let last = tail[0];
            let mut mask = 0u32;
            let mut sign = 1i32;
            let form = crate::grassmann::GrassForm::std(alg.n_gens());
            for g in head {
                let slot = form
                    .slot_of(g)
                    .ok_or_else(|| AlgError::Parse(format!("unknown generator `{g}`")))?;
                let (m, s) = crate::grassmann::mul_mask(mask, 1 << slot)
                    .ok_or_else(|| AlgError::Parse(format!("repeated generator `{g}`")))?;
                mask = m;
                sign *= s;
            }
            let key = if last == "D" {
                BasisKey::wd(mask, t2)
            } else if let Some(i) = last.strip_prefix("dxi") {
                let i: u8 = i
                    .parse()
                    .map_err(|_| AlgError::Parse(format!("bad derivative `{last}`")))?;
                if i == 0 || i > alg.n_gens() as u8 {
                    return Err(AlgError::Parse(format!("bad derivative `{last}`")));
                }
                BasisKey::wdel(mask, i - 1, t2)
            } else {
                return Err(AlgError::Parse(format!(
                    "expected a trailing `.D` or `.dxiK` in `{name}`"
                )));
            };
            checked(alg, key, Rat::int(sign as i128))
        }
        AlgebraId::Contact { .. } | AlgebraId::K2 { .. } => {
            if name == "c" {
                return checked(alg, BasisKey::central(t2), Rat::ONE);
            }
            if name == "D" {
                return checked(alg, BasisKey::gr(0, t2), Rat::ONE);
            }
            if name == "omega" {
                return checked(alg, BasisKey::gr((1 << alg.n_gens()) - 1, t2), Rat::ONE);
            }
            let form = alg.grass().form.clone();
            let mut mask = 0u32;
            let mut sign = 1i32;
            for g in name.split('.') {
                let slot = form
                    .slot_of(g)
                    .ok_or_else(|| AlgError::Parse(format!("unknown generator `{g}`")))?;
                let (m, s) = crate::grassmann::mul_mask(mask, 1 << slot)
                    .ok_or_else(|| AlgError::Parse(format!("repeated generator `{g}`")))?;
                mask = m;
                sign *= s;
            }
            checked(alg, BasisKey::gr(mask, t2), Rat::int(sign as i128))
        }
        AlgebraId::Ck6 => {
            let idx = (0..crate::ck6::BASIS_DIM as u8)
                .find(|&i| crate::ck6::basis_name(i) == name)
                .ok_or_else(|| AlgError::Parse(format!("unknown generator `{name}`")))?;
            checked(alg, BasisKey::ck6(idx, t2), Rat::ONE)
        }
    }
}

fn checked(alg: &AlgebraDef, key: BasisKey, c: Rat) -> Result<AlgebraElement, AlgError> {
    if !alg.key_legal(&key) {
        return Err(AlgError::IllegalKey(format!("{key:?} in {}", alg.id)));
    }
    Ok(alg.element(key, c))
}

/// Parses a sum of atoms with optional rational prefixes:
/// `zeta1@1 - 1/2*D@0 + 3*eta1.zeta2@-2`.
pub fn parse_element(alg: &AlgebraDef, s: &str) -> Result<AlgebraElement, AlgError> {
    let mut out = AlgebraElement::zero(&alg.id);
    // split on +/- at term boundaries; a sign directly after `@` or `/`
    // belongs to the number it prefixes
    let mut chunks: Vec<String> = vec![String::new()];
    let mut prev = ' ';
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && prev != '@' && prev != '/' {
            chunks.push(if ch == '-' { "-".to_string() } else { String::new() });
        } else {
            chunks.last_mut().expect("nonempty").push(ch);
        }
        if !ch.is_whitespace() {
            prev = ch;
        }
    }
    for chunk in &chunks {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        let (coef, atom) = match chunk.split_once('*') {
            Some((c, a)) => (Rat::parse(c)?, a.trim()),
            None => {
                if let Some(rest) = chunk.strip_prefix('-') {
                    (-Rat::ONE, rest.trim())
                } else {
                    (Rat::ONE, chunk)
                }
            }
        };
        let term = parse_atom(alg, atom)?;
        out = out.add(&term.scale(coef))?;
    }
    Ok(out)
}

/// Parses a comma-separated mode word: `z1@1,z1s@0,e1@-1,e1s@0`.
pub fn parse_word(alg: &AlgebraDef, s: &str) -> Result<Vec<AlgebraElement>, AlgError> {
    s.split(',').map(|atom| parse_atom(alg, atom.trim())).collect()
}
