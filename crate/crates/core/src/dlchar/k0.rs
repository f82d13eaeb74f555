//! The K₀ dictionary and the inversion-of-ℓ decomposition.
//!
//! Unipotent dictionary: standard ↦ `H_w`, costandard ↦ `H_{w^{-1}}^{-1}`,
//! intersection complex ↦ `H̲̃_w`, tilting ↦ `H̲_w`, with the half Tate
//! twist acting as multiplication by `v^{-1}`. With nontrivial character
//! data the intersection-complex and standard rows stay unconditional;
//! calling the tilting row with a nontrivial character is gated behind an
//! explicit conjectural flag.

use std::sync::Arc;

use crate::coxeter::weyl::{ElemId, WeylGroup};
use crate::error::{Error, Result};
use crate::exec::ExecMode;
use crate::hecke::elem::HeckeElem;
use crate::hecke::kl::KLTable;
use crate::mono::{MonoBlock, MonoElem, MonoKLTable};
use crate::torus::series::CharVector;
use crate::torus::{ell_power_characters, fixed_torus, FrobeniusDatum, TorusCharacter};

use super::cert::NMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum K0Kind {
    Std,
    Costd,
    Ic,
    Tilt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum K0Ring {
    QbarL,
    ZbarL,
}

/// The image of one of the four families under the K₀ dictionary, tagged
/// with its provenance and coefficient ring.
#[derive(Clone, Debug)]
pub struct K0Class {
    pub kind: K0Kind,
    pub ring: K0Ring,
    pub w: ElemId,
    pub elem: K0SummandElem,
}

/// Dictionary row for the unipotent part. Unconditional for every kind.
pub fn k0_class_unip(table: &KLTable, kind: K0Kind, w: ElemId, ring: K0Ring) -> K0Class {
    let group = table.group();
    let elem = match kind {
        K0Kind::Std => k0_std(group, w),
        K0Kind::Costd => k0_costd(group, w),
        K0Kind::Ic => k0_ic(table, w),
        K0Kind::Tilt => k0_tilt(table, w),
    };
    K0Class {
        kind,
        ring,
        w,
        elem: K0SummandElem::Unip(elem),
    }
}

/// `[Δ_{w,1}] = H_w`.
pub fn k0_std(group: &Arc<WeylGroup>, w: ElemId) -> HeckeElem {
    HeckeElem::std_basis(group.clone(), w)
}

/// `[∇_{w,1}] = H_{w^{-1}}^{-1}`.
pub fn k0_costd(group: &Arc<WeylGroup>, w: ElemId) -> HeckeElem {
    HeckeElem::bar_std_basis(group, w)
}

/// `[IC_{w,1}] = H̲̃_w`.
pub fn k0_ic(table: &KLTable, w: ElemId) -> HeckeElem {
    table.kl_tilde(w)
}

/// `[T_{w,1}] = H̲_w`.
pub fn k0_tilt(table: &KLTable, w: ElemId) -> HeckeElem {
    table.kl_basis(w)
}

/// Half Tate twists: `k` copies of `(1/2)` multiply the class by `v^{-k}`.
pub fn tate_twist(h: &HeckeElem, k: i64) -> HeckeElem {
    h.scale(&crate::algebra::laurent::LaurentPoly::v_pow(-k))
}

/// Monodromic dictionary rows. `Std`, `Costd` and `Ic` are unconditional;
/// `Tilt` with a nontrivial character requires `conjectural`.
#[allow(clippy::too_many_arguments)]
pub fn k0_class_mono(
    block: &Arc<MonoBlock>,
    table: &MonoKLTable,
    kind: K0Kind,
    w: ElemId,
    chi_idx: usize,
    ring: K0Ring,
    conjectural: bool,
) -> Result<K0Class> {
    let nontrivial = !block.orbit()[chi_idx].is_trivial();
    let elem = match kind {
        K0Kind::Std => MonoElem::std_basis(block.clone(), w, chi_idx),
        K0Kind::Costd => crate::mono::bar_basis(block, (w, chi_idx)),
        K0Kind::Ic => table.kl_tilde((w, chi_idx)),
        K0Kind::Tilt => {
            if nontrivial && !conjectural {
                return Err(Error::GatedConjectural(
                    "tilting classes with nontrivial character data".into(),
                ));
            }
            table.kl_basis((w, chi_idx))
        }
    };
    Ok(K0Class {
        kind,
        ring,
        w,
        elem: K0SummandElem::Mono(elem),
    })
}

/// One summand of an inversion-of-ℓ decomposition.
#[derive(Clone, Debug)]
pub struct K0Summand {
    pub kind: K0Kind,
    pub w: ElemId,
    pub chi: TorusCharacter,
    pub multiplicity: u64,
    /// The dictionary element, when it is unconditional (or the conjectural
    /// flag was passed); `None` for ungated conjectural tilting rows.
    pub elem: Option<K0SummandElem>,
}

#[derive(Clone, Debug)]
pub enum K0SummandElem {
    Unip(HeckeElem),
    Mono(MonoElem),
}

/// Decompose an integral (`Z̄_ℓ`-) class with trivial character data into
/// `Q̄_ℓ`-summands indexed by the ℓ-power-order characters of `T^{wF}`:
/// `Δ_{w,1} ↦ ⊕_{χ_ℓ} Δ_{w,χ_ℓ}`, likewise for costandards, and for
/// tiltings additionally the multiplicity summands `T_{v,χ_ℓ}` prescribed
/// by the table `n` (all zero by default).
#[allow(clippy::too_many_arguments)]
pub fn zl_decompose(
    group: &Arc<WeylGroup>,
    fd: &FrobeniusDatum,
    table: &KLTable,
    class: &K0Class,
    ell: u64,
    n: &NMatrix,
    conjectural: bool,
    mode: ExecMode,
) -> Result<Vec<K0Summand>> {
    if ell == fd.p {
        return Err(Error::InvalidModulus(format!(
            "ℓ = {ell} equals the defining characteristic"
        )));
    }
    if class.ring != K0Ring::ZbarL {
        return Err(Error::InvalidDatum(
            "the inversion-of-ℓ decomposition applies to integral classes".into(),
        ));
    }
    let kind = class.kind;
    let w = class.w;
    if kind == K0Kind::Ic {
        return Err(Error::InvalidDatum(
            "the inversion-of-ℓ decomposition applies to standard, costandard and tilting classes"
                .into(),
        ));
    }
    if !matches!(&class.elem, K0SummandElem::Unip(_)) {
        return Err(Error::InvalidDatum(
            "the inversion-of-ℓ decomposition starts from trivial character data".into(),
        ));
    }
    let t = fixed_torus(group, w, fd)?;
    let chars = ell_power_characters(&t, ell);
    let rank = group.rank();
    let mut out = Vec::new();
    for chi in &chars {
        let phi = CharVector::from_torus_character(&t, chi, rank);
        let elem = if phi.is_trivial() {
            Some(K0SummandElem::Unip(match kind {
                K0Kind::Std => k0_std(group, w),
                K0Kind::Costd => k0_costd(group, w),
                K0Kind::Tilt => k0_tilt(table, w),
                K0Kind::Ic => unreachable!(),
            }))
        } else {
            let block = MonoBlock::from_rep(group, &phi);
            let chi_idx = block.char_index(&phi).expect("φ lies in its own orbit");
            match kind {
                K0Kind::Std => Some(K0SummandElem::Mono(MonoElem::std_basis(
                    block.clone(),
                    w,
                    chi_idx,
                ))),
                K0Kind::Costd => Some(K0SummandElem::Mono(crate::mono::bar_basis(
                    &block,
                    (w, chi_idx),
                ))),
                K0Kind::Tilt => {
                    if conjectural {
                        let mt = MonoKLTable::compute(&block, mode);
                        Some(K0SummandElem::Mono(mt.kl_basis((w, chi_idx))))
                    } else {
                        None
                    }
                }
                K0Kind::Ic => unreachable!(),
            }
        };
        out.push(K0Summand {
            kind,
            w,
            chi: chi.clone(),
            multiplicity: 1,
            elem,
        });
    }
    if kind == K0Kind::Tilt {
        for chi in &chars {
            for v in group.elements() {
                let m = n.multiplicity(v, w, chi);
                if m == 0 {
                    continue;
                }
                let phi = CharVector::from_torus_character(&t, chi, rank);
                let elem = if phi.is_trivial() {
                    Some(K0SummandElem::Unip(k0_tilt(table, v)))
                } else if conjectural {
                    let block = MonoBlock::from_rep(group, &phi);
                    let chi_idx = block.char_index(&phi).unwrap();
                    let mt = MonoKLTable::compute(&block, mode);
                    Some(K0SummandElem::Mono(mt.kl_basis((v, chi_idx))))
                } else {
                    None
                };
                out.push(K0Summand {
                    kind,
                    w: v,
                    chi: chi.clone(),
                    multiplicity: m,
                    elem,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::laurent::LaurentPoly;
    use num_bigint::BigInt;

    fn lp(pairs: &[(i64, i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (e, c) in pairs {
            p.add_term(*e, &BigInt::from(*c));
        }
        p
    }

    #[test]
    fn dictionary_rank_one() {
        let g = WeylGroup::build_preset("A1").unwrap();
        let t = KLTable::compute(&g, ExecMode::Sequential);
        let s = g.simple(0);
        assert_eq!(k0_std(&g, s), HeckeElem::std_basis(g.clone(), s));
        // costd(s) = H_s + (v − v^{-1}) H_e
        let c = k0_costd(&g, s);
        assert_eq!(c.coeff(s), LaurentPoly::one());
        assert_eq!(c.coeff(ElemId::IDENTITY), lp(&[(1, 1), (-1, -1)]));
        // ic(s) = H_s − v^{-1} H_e
        let ic = k0_ic(&t, s);
        assert_eq!(ic.coeff(ElemId::IDENTITY), lp(&[(-1, -1)]));
        // a half twist multiplies by v^{-1}
        assert_eq!(
            tate_twist(&k0_std(&g, s), 1).coeff(s),
            LaurentPoly::v_pow(-1)
        );
    }

    #[test]
    fn decomposition_counts_gl2() {
        let g = WeylGroup::build_preset("GL2").unwrap();
        let fd = FrobeniusDatum::new(&g, 3, None).unwrap();
        let t = KLTable::compute(&g, ExecMode::Sequential);
        let s = g.simple(0);
        let n = NMatrix::empty();
        let c = k0_class_unip(&t, K0Kind::Std, s, K0Ring::ZbarL);
        // T^{sF} = Z/8: all 8 characters have 2-power order
        let d2 = zl_decompose(&g, &fd, &t, &c, 2, &n, false, ExecMode::Sequential).unwrap();
        assert_eq!(d2.len(), 8);
        // ℓ = 7 with 7 ∤ 8: only the trivial character
        let d7 = zl_decompose(&g, &fd, &t, &c, 7, &n, false, ExecMode::Sequential).unwrap();
        assert_eq!(d7.len(), 1);
        assert!(d7[0].chi.is_trivial());
        // ℓ = p rejected
        assert!(zl_decompose(&g, &fd, &t, &c, 3, &n, false, ExecMode::Sequential).is_err());
        // rational classes are not decomposed
        let rational = k0_class_unip(&t, K0Kind::Std, s, K0Ring::QbarL);
        assert!(zl_decompose(&g, &fd, &t, &rational, 2, &n, false, ExecMode::Sequential).is_err());
    }

    #[test]
    fn tilt_decomposition_gating() {
        let g = WeylGroup::build_preset("GL2").unwrap();
        let fd = FrobeniusDatum::new(&g, 3, None).unwrap();
        let t = KLTable::compute(&g, ExecMode::Sequential);
        let s = g.simple(0);
        let n = NMatrix::empty();
        let c = k0_class_unip(&t, K0Kind::Tilt, s, K0Ring::ZbarL);
        let d = zl_decompose(&g, &fd, &t, &c, 2, &n, false, ExecMode::Sequential).unwrap();
        assert_eq!(d.len(), 8, "n = 0: only the χ_ℓ summands");
        // the unipotent summand carries its element, nontrivial ones are gated
        for s in &d {
            if s.chi.is_trivial() {
                assert!(s.elem.is_some());
            } else {
                assert!(s.elem.is_none());
            }
        }
        // with the flag, every summand is materialized
        let d = zl_decompose(&g, &fd, &t, &c, 2, &n, true, ExecMode::Sequential).unwrap();
        assert!(d.iter().all(|s| s.elem.is_some()));
    }

    #[test]
    fn mono_tilt_gate() {
        let g = WeylGroup::build_preset("A1").unwrap();
        let fd = FrobeniusDatum::new(&g, 3, None).unwrap();
        let series = crate::torus::geometric_classes(&g, &fd).unwrap();
        let class = series
            .classes
            .iter()
            .find(|c| c.rep.den == 4)
            .expect("order-4 class exists");
        let block = MonoBlock::build(&g, class);
        let mt = MonoKLTable::compute(&block, ExecMode::Sequential);
        let s = g.simple(0);
        let gated = k0_class_mono(&block, &mt, K0Kind::Tilt, s, 0, K0Ring::QbarL, false);
        assert!(matches!(gated, Err(Error::GatedConjectural(_))));
        assert!(k0_class_mono(&block, &mt, K0Kind::Tilt, s, 0, K0Ring::QbarL, true).is_ok());
        assert!(k0_class_mono(&block, &mt, K0Kind::Ic, s, 0, K0Ring::QbarL, false).is_ok());
    }
}
