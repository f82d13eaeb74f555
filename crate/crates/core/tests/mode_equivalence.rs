//! The sequential and parallel execution paths produce identical results.

#![cfg(feature = "parallel")]

use dlhecke_core::mono::{MonoBlock, MonoKLTable};
use dlhecke_core::torus::{brute_force_fixed_points, FrobeniusDatum};
use dlhecke_core::{ExecMode, KLTable, WeylGroup};

#[test]
fn kl_tables_agree_across_modes() {
    for name in ["A3", "B3", "G2"] {
        let g = WeylGroup::build_preset(name).unwrap();
        let seq = KLTable::compute(&g, ExecMode::Sequential);
        let par = KLTable::compute(&g, ExecMode::Parallel);
        assert!(seq.rows_equal(&par), "{name} recursion");
        let seq = KLTable::compute_bar_solve(&g, ExecMode::Sequential);
        let par = KLTable::compute_bar_solve(&g, ExecMode::Parallel);
        assert!(seq.rows_equal(&par), "{name} bar-solve");
    }
}

#[test]
fn block_tables_agree_across_modes() {
    let g = WeylGroup::build_preset("B2").unwrap();
    let block = MonoBlock::unipotent(&g);
    let seq = MonoKLTable::compute(&block, ExecMode::Sequential);
    let par = MonoKLTable::compute(&block, ExecMode::Parallel);
    for idx in block.basis() {
        assert_eq!(seq.row(idx), par.row(idx));
        assert_eq!(seq.row_tilde(idx), par.row_tilde(idx));
    }
}

#[test]
fn point_counts_agree_across_modes() {
    let g = WeylGroup::build_preset("B2").unwrap();
    let fd = FrobeniusDatum::new(&g, 3, None).unwrap();
    for w in g.elements() {
        let n = dlhecke_core::torus::minimal_rational_degree(&g, w);
        let seq = brute_force_fixed_points(&g, w, &fd, n, 1 << 24, ExecMode::Sequential).unwrap();
        let par = brute_force_fixed_points(&g, w, &fd, n, 1 << 24, ExecMode::Parallel).unwrap();
        assert_eq!(seq, par);
    }
}
