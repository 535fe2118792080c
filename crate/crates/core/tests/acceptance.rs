//! Acceptance suite: one test per criterion, each printing a pass line.
//! Every assertion is an exact rational equality; there are no tolerances
//! anywhere.

use sconf_core::algebras;
use sconf_core::ck6::{self, DefVec};
use sconf_core::classify;
use sconf_core::cohomology::{self, CentralExt, CocycleId};
use sconf_core::grammar::parse_algebra;
use sconf_core::jordan;
use sconf_core::liecore::{koszul, AlgebraDef, AlgebraElement, BasisKey, Tag};
use sconf_core::locality::{self, ModeFamily, ModeRule};
use sconf_core::repmod::{self, LemmaId, TensParams};
use sconf_core::scalar::{HalfInt, Rat, RatSampler};

fn r(n: i128, d: i128) -> Rat {
    Rat::new(n, d)
}

#[test]
fn acceptance_01_jacobi_audit() {
    let families = [
        "W:2", "S:2:g=1/3", "K:3", "K:4", "K:5", "Khat:4", "K:3:ns", "CK6", "K2:4",
    ];
    for id in families {
        let alg = parse_algebra(id).expect("algebra id");
        let rep = alg.jacobi_check(3);
        assert!(
            rep.ok(),
            "criterion 1: {id} has {} Jacobi violations of {} triples; first: {:?}",
            rep.violations.len(),
            rep.checked,
            rep.violations.first()
        );
        println!("[PASS] criterion 1: {id} Jacobi audit clean over {} triples", rep.checked);
    }
    // the twisted algebra is closed: sigma-fixed brackets stay sigma-fixed
    let k2 = algebras::k2(2);
    let basis = k2.basis_in_window(-2, 2);
    for x in &basis {
        for y in &basis {
            let b = k2.bracket(x, y).expect("bracket");
            assert!(b.is_zero() || algebras::k2_member(&k2, &b), "closure broke at [{x},{y}]");
        }
    }
    println!("[PASS] criterion 1: twisted subalgebra closure verified");
}

#[test]
fn acceptance_02_extension_identity() {
    let k4 = algebras::k(4);
    let khat = algebras::khat4();
    let ext = CentralExt::new(algebras::k(4), CocycleId::Psi);
    let basis = k4.basis_in_window(-3, 3);
    let mut checked = 0u64;
    for x in &basis {
        for y in &basis {
            let abstract_bracket = ext.bracket(&ext.lift(x), &ext.lift(y)).expect("bracket");
            let lhs = cohomology::ext_to_khat(&khat, &abstract_bracket);
            let rhs = khat
                .bracket(
                    &cohomology::ext_to_khat(&khat, &ext.lift(x)),
                    &cohomology::ext_to_khat(&khat, &ext.lift(y)),
                )
                .expect("bracket");
            assert_eq!(lhs, rhs, "criterion 2: extension mismatch at [{x}, {y}]");
            checked += 1;
        }
    }
    println!("[PASS] criterion 2: central extension matches the realized algebra on {checked} key pairs");
}

#[test]
fn acceptance_03_cocycle_conditions() {
    let kd = algebras::kd_split(4);
    for id in [CocycleId::Psi, CocycleId::Phi1, CocycleId::Phi2, CocycleId::Phi3] {
        let rep = cohomology::cocycle_check(id, &kd, 4);
        assert!(rep.ok(), "criterion 3: {id:?} violations {:?}", rep.violations.first());
        println!("[PASS] criterion 3: {id:?} closes over {} triples", rep.checked);
    }
    let w2 = algebras::w(2);
    let rep = cohomology::cocycle_check(CocycleId::Psi3, &w2, 4);
    assert!(rep.ok(), "criterion 3: psi3 violations {:?}", rep.violations.first());
    println!("[PASS] criterion 3: Psi3 closes over {} triples", rep.checked);
    let w1 = algebras::w(1);
    let rep = cohomology::cocycle_check(CocycleId::Psi4, &w1, 4);
    assert!(rep.ok(), "criterion 3: psi4 violations {:?}", rep.violations.first());
    println!("[PASS] criterion 3: Psi4 closes over {} triples", rep.checked);
    let rep = cohomology::d_cocycle_check(4);
    assert!(
        rep.ok(),
        "criterion 3: order-three cocycle violations {} of {}; first {:?}",
        rep.violations.len(),
        rep.checked,
        rep.violations.first()
    );
    println!(
        "[PASS] criterion 3: order-three cocycle identity and osp(4,2)-invariance over {} pairs",
        rep.checked
    );
}

#[test]
fn acceptance_04_contact_embedding() {
    for n in [3u8, 4] {
        let k_std = algebras::kd_std(n);
        let w_alg = algebras::w(n);
        let basis = k_std.basis_in_window(-3, 3);
        let mut checked = 0u64;
        for x in &basis {
            let fx = algebras::contact_as_function(&k_std, x);
            let nx = algebras::contact_embed(&w_alg, &fx).expect("homogeneous");
            for y in &basis {
                let fy = algebras::contact_as_function(&k_std, y);
                let ny = algebras::contact_embed(&w_alg, &fy).expect("homogeneous");
                let lhs = w_alg.bracket(&nx, &ny).expect("bracket");
                let contact = k_std.bracket(x, y).expect("bracket");
                let rhs = algebras::contact_embed(
                    &w_alg,
                    &algebras::contact_as_function(&k_std, &contact),
                )
                .expect("homogeneous");
                assert_eq!(lhs, rhs, "criterion 4: embedding fails at [{x}, {y}] for N={n}");
                checked += 1;
            }
        }
        println!("[PASS] criterion 4: contact embedding is a homomorphism on {checked} pairs (N={n})");
    }
}

#[test]
fn acceptance_05_pfaffian_identities() {
    // the six basis skew maps
    let mut count = 0;
    for a in 0..4 {
        for b in a + 1..4 {
            let mut s = ck6::lm_zero();
            ck6::lm_add(&mut s, a, b, 0, Rat::ONE);
            ck6::lm_add(&mut s, b, a, 0, -Rat::ONE);
            assert!(ck6::phi_times_s_is_pf(&s), "criterion 5: basis map ({a},{b})");
            count += 1;
        }
    }
    // 50 random rational skew maps with Laurent-polynomial entries
    let mut smp = RatSampler::new(55);
    for _ in 0..50 {
        let mut s = ck6::lm_zero();
        for a in 0..4 {
            for b in a + 1..4 {
                for _ in 0..2 {
                    let t2 = 2 * smp.int(-3, 3);
                    let v = smp.rat(9, 5);
                    ck6::lm_add(&mut s, a, b, t2, v);
                    ck6::lm_add(&mut s, b, a, t2, -v);
                }
            }
        }
        assert!(ck6::phi_times_s_is_pf(&s), "criterion 5: random skew map");
        count += 1;
    }
    println!("[PASS] criterion 5: Pfaffian identities exact on {count} skew maps");
}

#[test]
fn acceptance_06_identity_lemmas() {
    let grid: [i64; 4] = [-2, -1, 0, 1];
    let mut smp = RatSampler::new(2024);
    let mut evaluations = 0u64;
    for lemma in repmod::ALL_LEMMAS {
        let alg = repmod::lemma_algebra(lemma);
        let nl = match lemma {
            LemmaId::K3A | LemmaId::K3B => 1,
            LemmaId::WA | LemmaId::WB | LemmaId::WC | LemmaId::S => 2,
            _ => 3,
        };
        for _ in 0..10 {
            let gamma = smp.rat(4, 3);
            let p = TensParams::new(
                (0..nl).map(|_| smp.rat(5, 4)).collect(),
                smp.rat(5, 4),
                smp.rat(5, 4),
            );
            for &nv in &grid {
                for &nw in &grid {
                    for &nx in &grid {
                        for &ny in &grid {
                            for &nz in &grid {
                                let (oracle, predicted) = repmod::lemma_eval(
                                    lemma,
                                    &alg,
                                    &p,
                                    [nv, nw, nx, ny],
                                    nz,
                                    gamma,
                                )
                                .expect("well-formed word");
                                assert_eq!(
                                    oracle, predicted,
                                    "criterion 6: {} at modes ({nv},{nw},{nx},{ny};{nz})",
                                    lemma.name()
                                );
                                evaluations += 1;
                            }
                        }
                    }
                }
            }
        }
        println!("[PASS] criterion 6: identity {} matches the evaluator exactly", lemma.name());
    }
    println!("[PASS] criterion 6: {evaluations} oracle evaluations, all exact");
}

#[test]
fn acceptance_07_classification_boundary() {
    let mut smp = RatSampler::new(4711);
    // W(2) boundary: lambda(h1) = 1; vanishing holds iff lambda1 = 1 - delta
    let w2 = algebras::w(2);
    for _ in 0..50 {
        let l1 = smp.rat(4, 3);
        let delta = if smp.int(0, 1) == 0 { Rat::ONE - l1 } else { smp.rat(4, 3) };
        let lambda = vec![l1, l1 - Rat::ONE];
        let p = TensParams::new(lambda.clone(), delta, smp.rat(3, 2));
        let vanish = classify::vanishing_criterion(&w2, &p, Rat::ZERO).expect("oracle");
        assert_eq!(vanish, l1 == Rat::ONE - delta, "criterion 7: W boundary at l1={l1} d={delta}");
    }
    println!("[PASS] criterion 7: W boundary clause matches the oracle on 50 points");
    // S(2;gamma) boundary: vanishing iff delta = 1 (canonical extension
    // lambda = (0, -1) has lambda(h1) = 1)
    let s2 = algebras::s(2, r(1, 3));
    for _ in 0..50 {
        let delta = if smp.int(0, 1) == 0 { Rat::ONE } else { smp.rat(4, 3) };
        let p = TensParams::new(vec![Rat::ZERO, -Rat::ONE], delta, smp.rat(3, 2));
        let vanish = classify::vanishing_criterion(&s2, &p, r(1, 3)).expect("oracle");
        assert_eq!(vanish, delta == Rat::ONE, "criterion 7: S boundary at delta={delta}");
    }
    println!("[PASS] criterion 7: S boundary clause matches the oracle on 50 points");
    // extended K(4) boundary: lambda1 + lambda2 = 1
    let khat = algebras::khat4();
    for i in 0..50 {
        let l2 = smp.rat(4, 3);
        let l1 = Rat::ONE - l2;
        let (lc, delta) = match i % 4 {
            0 => (l2 * Rat::int(2), (Rat::ONE - l2) * r(1, 2)),
            1 => (-(l2 * Rat::int(2)), (Rat::ONE + l2) * r(1, 2)),
            // the swapped pairing from the tabulated corollary: must NOT vanish
            2 => (l2 * Rat::int(2), (Rat::ONE + l2) * r(1, 2)),
            _ => (smp.rat(4, 3), smp.rat(4, 3)),
        };
        let p = TensParams::new(vec![l1, l2, lc], delta, smp.rat(3, 2));
        let vanish = classify::vanishing_criterion(&khat, &p, Rat::ZERO).expect("oracle");
        let two = Rat::int(2);
        let clause_b = lc == two * l2 && delta == (Rat::ONE - l2) * r(1, 2);
        let clause_c = lc == -(two * l2) && delta == (Rat::ONE + l2) * r(1, 2);
        let degenerate = l2.is_zero() && lc.is_zero()
            && (delta == l1 * r(1, 2) || delta == Rat::ONE - l1 * r(1, 2));
        assert_eq!(
            vanish,
            clause_b || clause_c || degenerate,
            "criterion 7: extended K(4) at l2={l2} lc={lc} d={delta}"
        );
    }
    println!("[PASS] criterion 7: extended K(4) boundary matches the two clause lines (swapped pairing rejected)");
    // K(3) boundary: lambda1 = 1/2, vanishing iff delta = 1/4
    let k3 = algebras::k(3);
    for _ in 0..50 {
        let delta = if smp.int(0, 1) == 0 { r(1, 4) } else { smp.rat(4, 3) };
        let p = TensParams::new(vec![r(1, 2)], delta, smp.rat(3, 2));
        let vanish = classify::vanishing_criterion(&k3, &p, Rat::ZERO).expect("oracle");
        assert_eq!(vanish, delta == r(1, 4), "criterion 7: K(3) boundary at delta={delta}");
    }
    println!("[PASS] criterion 7: K(3) boundary clause matches the oracle on 50 points");
    // lambda(h1) >= 2 strata: the Gram block is generically positive and the
    // predicate says cuspidal
    let raise: Vec<Vec<AlgebraElement>> = (0..4i64)
        .map(|n| {
            vec![
                khat.element(BasisKey::gr(0b0001, 2 * n), Rat::ONE),
                khat.element(BasisKey::gr(0b0001, 2 - 2 * n), Rat::ONE),
            ]
        })
        .collect();
    let lower: Vec<Vec<AlgebraElement>> = (0..4i64)
        .map(|n| {
            vec![
                khat.element(BasisKey::gr(0b0010, 2 * n), Rat::ONE),
                khat.element(BasisKey::gr(0b0010, -2 - 2 * n), Rat::ONE),
            ]
        })
        .collect();
    for _ in 0..5 {
        let lambda = vec![r(1, 2), r(3, 2), smp.rat(4, 3)];
        let delta = smp.rat(4, 3);
        let u = smp.rat(4, 3);
        let p = TensParams::new(lambda.clone(), delta, u);
        let rank = repmod::gram_rank(&khat, &p, &raise, &lower, 0).expect("rank");
        assert!(rank >= 1, "criterion 7: zero Gram rank on a generic lambda(h1)=2 point");
        let verdict = classify::cuspidal_predicate(&khat, &lambda, delta, u).expect("dominant");
        assert!(verdict.cuspidal, "criterion 7: {}", verdict.rule_fired);
    }
    println!("[PASS] criterion 7: lambda(h1) >= 2 stratum has positive Gram rank and cuspidal verdicts");
}

#[test]
fn acceptance_08_ck6_defining_module() {
    let u = r(2, 7);
    // representation axiom on the window
    let ck = algebras::ck6();
    let basis = ck.basis_in_window(-3, 3);
    let test_vectors: Vec<DefVec> =
        (0..8).flat_map(|c| [-1i64, 0, 1].map(|n| DefVec::unit(c, n))).collect();
    let mut checked = 0u64;
    for x in &basis {
        let mx = key_matrix(x);
        let px = ck.element_parity(x).expect("homogeneous");
        for y in &basis {
            let my = key_matrix(y);
            let py = ck.element_parity(y).expect("homogeneous");
            let br = mx.bracket(&my);
            for w in &test_vectors {
                let lhs = ck6::ck6_defining_act(&mx, &ck6::ck6_defining_act(&my, w, u).expect("act"), u)
                    .expect("act");
                let sign = koszul(px, py);
                let rhs1 = ck6::ck6_defining_act(&my, &ck6::ck6_defining_act(&mx, w, u).expect("act"), u)
                    .expect("act")
                    .scale(sign);
                let rhs2 = ck6::ck6_defining_act(&br, w, u).expect("act");
                assert_eq!(
                    lhs.plus(&rhs1.scale(-Rat::ONE)),
                    rhs2,
                    "criterion 8: representation axiom fails at [{x}, {y}]"
                );
                checked += 1;
            }
        }
    }
    println!("[PASS] criterion 8: representation axiom exact on {checked} triples");
    // c = h1 + h2 + 2h3 acts as +1 on one half and -1 on the other
    let c = ck6::central_c(0);
    for comp in 0..8usize {
        let v = DefVec::unit(comp, 0);
        let cv = ck6::ck6_defining_act(&c, &v, u).expect("act");
        let expect = if [0, 1, 6, 7].contains(&comp) { Rat::ONE } else { -Rat::ONE };
        assert_eq!(cv, v.scale(expect), "criterion 8: central action on component {comp}");
    }
    println!("[PASS] criterion 8: central element acts as +1 / -1 on the two halves");
    // highest weights of the halves in epsilon coordinates, and the density
    // split: the plus half is headed by an x-type vector (density 1/4), the
    // minus half by a dual vector (density 3/4)
    let comp_weights = component_weights(&ck);
    let f = [7i64, 1, -3, -5, -7, -1, 3, 5]; // F-eigenvalues per component
    let plus = [0usize, 1, 6, 7];
    let minus = [2usize, 3, 4, 5];
    let top_plus = *plus.iter().max_by_key(|&&c| f[c]).expect("nonempty");
    let top_minus = *minus.iter().max_by_key(|&&c| f[c]).expect("nonempty");
    assert_eq!(comp_weights[top_plus], vec![r(1, 2), r(1, 2), r(1, 2)]);
    assert_eq!(comp_weights[top_minus], vec![r(1, 2), r(1, 2), r(-1, 2)]);
    assert!(top_plus < 4, "criterion 8: plus-half head must be an x-type vector");
    assert!(top_minus >= 4, "criterion 8: minus-half head must be a dual vector");
    // density read off the Virasoro action: fD + delta D(f) with delta = 1/4
    // on V and 3/4 on V*
    let vir1 = ck6::basis_matrix(0, 2);
    for (comp, expect) in [(top_plus, r(1, 4)), (top_minus, r(3, 4))] {
        let v = DefVec::unit(comp, 0);
        let out = ck6::ck6_defining_act(&vir1, &v, u).expect("act");
        let coeff = out.comps[comp].get(&1).copied().unwrap_or(Rat::ZERO);
        assert_eq!(coeff, u + expect, "criterion 8: density of component {comp}");
    }
    println!("[PASS] criterion 8: halves have highest weights (1/2,1/2,+-1/2) with densities 1/4 and 3/4");
    // the halves are stable under the centralizer
    for n in -2..=2i64 {
        for x in jordan::ck6_centralizer_basis(&ck, 2 * n) {
            let mx = key_matrix(&x);
            for &compp in &plus {
                let out = ck6::ck6_defining_act(&mx, &DefVec::unit(compp, 0), u).expect("act");
                for &compm in &minus {
                    assert!(out.comps[compm].is_empty(), "criterion 8: halves mix under {x}");
                }
            }
        }
    }
    println!("[PASS] criterion 8: the defining module splits into the two stable halves");
}

fn key_matrix(x: &AlgebraElement) -> ck6::Ck6Element {
    let mut m = ck6::Ck6Element::zero();
    for (k, &c) in &x.terms {
        let Tag::Ck6(i) = k.tag else { panic!("not a ck6 key") };
        m = m.plus(&ck6::basis_matrix(i, k.t2).scale(c));
    }
    m
}

fn component_weights(ck: &AlgebraDef) -> Vec<Vec<Rat>> {
    // eigenvalues of h1,h2,h3 on each component, converted to eps coordinates
    let mut out = Vec::new();
    for comp in 0..8usize {
        let mut hv = [Rat::ZERO; 3];
        for (j, h) in hv.iter_mut().enumerate() {
            let m = ck6::basis_matrix(13 + j as u8, 0);
            let v = DefVec::unit(comp, 0);
            let out_v = ck6::ck6_defining_act(&m, &v, Rat::ZERO).expect("act");
            *h = out_v.comps[comp].get(&0).copied().unwrap_or(Rat::ZERO);
        }
        let l1 = (hv[0] - hv[1]) * r(1, 2);
        let l2 = (hv[0] + hv[1]) * r(1, 2);
        let l3 = hv[2] + l2;
        out.push(vec![l1, l2, l3]);
    }
    let _ = ck;
    out
}

#[test]
fn acceptance_09_jordan_tables() {
    let k4 = algebras::k(4);
    let tk = jordan::jor_table(&k4, &jordan::k4_triple(&k4), &jordan::k4_families(&k4))
        .expect("table");
    let ck = algebras::ck6();
    let tc = jordan::jor_table(&ck, &jordan::ck6_triple(&ck), &jordan::ck6_families(&ck))
        .expect("table");
    // entry-wise agreement under e <-> e, e' <-> zeta2 xi', S <-> zeta2,
    // H <-> zeta2*
    let idc: Vec<usize> = (0..4).collect();
    let rep = jordan::jor_compare(&tk, &tc, &idc);
    assert!(rep.ok(), "criterion 9: table mismatch at {:?}", rep.mismatches);
    println!("[PASS] criterion 9: the two Jordan tables agree entry-for-entry under the correspondence");
    // against the reference tables: both share the supercommutativity-violating
    // mixed cells; the centralizer table has exactly one extra flag, the
    // (S, unit) cell tabulated with the other table's generator name
    let flags_contact = jordan::compare_with_reference(&tk, &jordan::reference_table_contact());
    assert_eq!(flags_contact, vec![(1, 2), (2, 1)], "criterion 9: contact-table flags");
    let flags_centr = jordan::compare_with_reference(&tc, &jordan::reference_table_centralizer());
    let extra: Vec<_> =
        flags_centr.iter().filter(|c| !flags_contact.contains(c)).cloned().collect();
    assert_eq!(extra, vec![(2, 0)], "criterion 9: exactly one extra typo cell");
    println!("[PASS] criterion 9: known typo cell (S row, unit column) flagged exactly once");
    // ad(h) spectrum audits
    jordan::k4_triple(&k4).verify(&k4, 3).expect("triple");
    let t = jordan::ck6_triple(&ck);
    for n in -3..=3i64 {
        for x in jordan::ck6_centralizer_basis(&ck, 2 * n) {
            let hx = ck.bracket(&t.h, &x).expect("bracket");
            let ok = [Rat::int(-2), Rat::ZERO, Rat::int(2)]
                .into_iter()
                .any(|ev| hx == x.scale(ev));
            assert!(ok, "criterion 9: ad(h) spectrum violation at {x}");
        }
    }
    println!("[PASS] criterion 9: ad(h) spectra are exactly {{-2, 0, 2}} on both sides");
}

#[test]
fn acceptance_10_locality() {
    // all mode families of K(4) and the extension: order <= 4 on [-8, 8]
    for id in ["K:4", "Khat:4"] {
        let alg = parse_algebra(id).expect("id");
        let mut fams: Vec<ModeFamily> = Vec::new();
        for mask in 0..(1u32 << 4) {
            let key = if mask.count_ones() == 4 {
                if id == "Khat:4" {
                    BasisKey::central(0)
                } else {
                    continue; // the top line of the simple algebra has no t^0 key
                }
            } else {
                BasisKey::gr(mask, 0)
            };
            fams.push(ModeFamily::new(
                &format!("{mask:04b}"),
                alg.element(key, Rat::ONE),
                ModeRule::Ramond,
            ));
        }
        let mut max_order = 0;
        for a in &fams {
            for b in &fams {
                let ord = locality::locality_order(&alg, a, b, 8, 4)
                    .expect("window")
                    .unwrap_or_else(|| panic!("criterion 10: ({}, {}) not local", a.label, b.label));
                max_order = max_order.max(ord);
            }
        }
        assert!(max_order <= 4);
        println!(
            "[PASS] criterion 10: {} generator pairs mutually local, max order {max_order}",
            id
        );
    }
    // twisted generator families: semi-locality with order <= 4; the full
    // bracket algebra hosts the top family's degree-zero shape (its shifts
    // only ever hit the odd modes that lie in the twisted algebra)
    let amb = algebras::kd_split(4);
    let mut fams: Vec<ModeFamily> = Vec::new();
    for mask in 0..(1u32 << 4) {
        let has0 = mask & 1 != 0;
        let has1 = mask & 2 != 0;
        if has0 == has1 {
            let rule = if has0 { ModeRule::TwistedOdd } else { ModeRule::TwistedEven };
            fams.push(ModeFamily::new(
                &format!("{mask:04b}"),
                amb.element(BasisKey::gr(mask, 0), Rat::ONE),
                rule,
            ));
        } else if has0 {
            // the sigma eigenvectors zeta1 +- eta1 (times the rest)
            let partner = (mask & !1) | 2;
            for (sign, rule, tag) in
                [(Rat::ONE, ModeRule::TwistedEven, "+"), (-Rat::ONE, ModeRule::TwistedOdd, "-")]
            {
                let mut e = AlgebraElement::zero(&amb.id);
                e.add_term(BasisKey::gr(mask, 0), Rat::ONE);
                e.add_term(BasisKey::gr(partner, 0), sign);
                fams.push(ModeFamily::new(&format!("{mask:04b}{tag}"), e, rule));
            }
        }
    }
    let mut max_order = 0;
    for a in &fams {
        for b in &fams {
            let ord = locality::semilocality_order(&amb, a, b, 8, 4)
                .expect("window")
                .unwrap_or_else(|| {
                    panic!("criterion 10: ({}, {}) not semi-local", a.label, b.label)
                });
            max_order = max_order.max(ord);
        }
    }
    assert!(max_order <= 4);
    println!("[PASS] criterion 10: twisted generator pairs mutually semi-local, max order {max_order}");
}

#[test]
fn acceptance_11_maurer_cartan() {
    assert!(locality::mc_jacobi_check(6), "criterion 11: Jacobi failed");
    for n in 1..=6i64 {
        let d = locality::mc_delta(n);
        let lhs = locality::mc_bracket(&locality::McElement::gen(-1), &d);
        assert_eq!(lhs, d.scale(Rat::int(n as i128)), "criterion 11: relation at n={n}");
        assert!(locality::mc_derived_test(&d), "criterion 11: derived membership at n={n}");
    }
    println!("[PASS] criterion 11: Maurer-Cartan Jacobi (|indices| <= 6) and the ladder relations hold");
}

#[test]
fn acceptance_12_sigma_automorphism() {
    for id in ["K:4", "K:6", "Khat:4"] {
        let alg = parse_algebra(id).expect("id");
        let basis = alg.basis_in_window(-3, 3);
        for x in &basis {
            // involution
            let twice =
                algebras::sigma(&alg, &algebras::sigma(&alg, x).expect("sigma")).expect("sigma");
            assert_eq!(&twice, x, "criterion 12: sigma^2 != id on {x}");
        }
        for x in &basis {
            let sx = algebras::sigma(&alg, x).expect("sigma");
            for y in &basis {
                let sy = algebras::sigma(&alg, y).expect("sigma");
                let lhs = algebras::sigma(&alg, &alg.bracket(x, y).expect("bracket")).expect("sigma");
                let rhs = alg.bracket(&sx, &sy).expect("bracket");
                assert_eq!(lhs, rhs, "criterion 12: sigma breaks at [{x}, {y}] in {id}");
            }
        }
        println!("[PASS] criterion 12: sigma is an involutive automorphism of {id}");
    }
}
