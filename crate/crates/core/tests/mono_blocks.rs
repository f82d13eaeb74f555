//! Sweep every monodromic block of the small presets at q ∈ {2, 3}:
//! self-duality, unitriangularity and degree bounds, the scalar-twist
//! exchange of the two bases, and exact agreement with the generic Hecke
//! algebra on the trivial class.

use dlhecke_core::hecke::elem::HeckeElem;
use dlhecke_core::mono::{MonoBlock, MonoElem, MonoKLTable};
use dlhecke_core::torus::{geometric_classes, FrobeniusDatum};
use dlhecke_core::{ExecMode, KLTable, WeylGroup};

#[test]
fn every_block_carries_two_self_dual_bases() {
    for name in ["A1", "A2", "B2", "GL2", "T1"] {
        let g = WeylGroup::build_preset(name).unwrap();
        for q in [2u64, 3] {
            let fd = FrobeniusDatum::new(&g, q, None).unwrap();
            let series = geometric_classes(&g, &fd).unwrap();
            for class in &series.classes {
                let block = MonoBlock::build(&g, class);
                assert_eq!(
                    block.basis_size(),
                    g.order() * class.orbit.len(),
                    "{name} q={q}: |W|·|orbit|"
                );
                let t = MonoKLTable::compute(&block, ExecMode::default());
                t.verify_contract()
                    .unwrap_or_else(|e| panic!("{name} q={q}: {e}"));
                for idx in block.basis() {
                    let kl = t.kl_basis(idx);
                    assert_eq!(kl.bar(), kl, "{name} q={q}: bar(H̲) = H̲");
                    let klt = t.kl_tilde(idx);
                    assert_eq!(klt.bar(), klt, "{name} q={q}: bar(H̲̃) = H̲̃");
                    assert_eq!(
                        kl.b_twist(),
                        klt,
                        "{name} q={q}: the scalar twist exchanges the bases"
                    );
                }
            }
        }
    }
}

#[test]
fn trivial_class_bar_matches_the_hecke_bar() {
    for name in ["A2", "B2", "G2"] {
        let g = WeylGroup::build_preset(name).unwrap();
        let block = MonoBlock::unipotent(&g);
        for w in g.elements() {
            let hb = HeckeElem::std_basis(g.clone(), w).bar();
            let mb = MonoElem::std_basis(block.clone(), w, 0).bar();
            assert_eq!(mb.iter().count(), hb.iter().count());
            for (y, p) in hb.iter() {
                assert_eq!(mb.coeff((*y, 0)), p.clone(), "{name}");
            }
        }
    }
}

#[test]
fn unipotent_kl_rows_match_between_modules() {
    for name in ["A3", "G2"] {
        let g = WeylGroup::build_preset(name).unwrap();
        let ht = KLTable::compute(&g, ExecMode::default());
        let block = MonoBlock::unipotent(&g);
        let mt = MonoKLTable::compute(&block, ExecMode::default());
        for w in g.elements() {
            assert_eq!(ht.row(w).len(), mt.row((w, 0)).len(), "{name}");
            for (y, p) in ht.row(w) {
                assert_eq!(mt.row((w, 0)).get(&(*y, 0)), Some(p), "{name}");
            }
            for (y, p) in ht.row_tilde(w) {
                assert_eq!(mt.row_tilde((w, 0)).get(&(*y, 0)), Some(p), "{name}");
            }
        }
    }
}
