//! Elements of the generic Hecke algebra in the standard basis `{H_w}`.
//!
//! The defining relations, with `s` a simple reflection:
//! `H_w H_s = H_{ws}` when `ws > w`, and
//! `H_w H_s = H_{ws} + (v^{-1} − v) H_w` when `ws < w`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::laurent::LaurentPoly;
use crate::coxeter::weyl::{ElemId, WeylGroup};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct HeckeElem {
    group: Arc<WeylGroup>,
    terms: BTreeMap<ElemId, LaurentPoly>,
}

impl PartialEq for HeckeElem {
    fn eq(&self, other: &Self) -> bool {
        self.group.signature() == other.group.signature() && self.terms == other.terms
    }
}

impl Eq for HeckeElem {}

impl HeckeElem {
    pub fn zero(group: Arc<WeylGroup>) -> Self {
        HeckeElem {
            group,
            terms: BTreeMap::new(),
        }
    }

    /// The standard basis element `H_w`.
    pub fn std_basis(group: Arc<WeylGroup>, w: ElemId) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, LaurentPoly::one());
        HeckeElem { group, terms }
    }

    pub fn unit(group: Arc<WeylGroup>) -> Self {
        HeckeElem::std_basis(group, ElemId::IDENTITY)
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: ElemId) -> LaurentPoly {
        self.terms.get(&w).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ElemId, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = ElemId> + '_ {
        self.terms.keys().copied()
    }

    pub fn add_term(&mut self, w: ElemId, p: &LaurentPoly) {
        if p.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_insert_with(LaurentPoly::zero);
        *entry = &*entry + p;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, rhs: &HeckeElem) -> Result<HeckeElem> {
        self.check_group(rhs)?;
        let mut out = self.clone();
        for (w, p) in &rhs.terms {
            out.add_term(*w, p);
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &HeckeElem) -> Result<HeckeElem> {
        self.check_group(rhs)?;
        let mut out = self.clone();
        for (w, p) in &rhs.terms {
            out.add_term(*w, &-p);
        }
        Ok(out)
    }

    pub fn neg(&self) -> HeckeElem {
        let terms = self.terms.iter().map(|(w, p)| (*w, -p)).collect();
        HeckeElem {
            group: self.group.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElem {
        if c.is_zero() {
            return HeckeElem::zero(self.group.clone());
        }
        let terms = self.terms.iter().map(|(w, p)| (*w, p * c)).collect();
        HeckeElem {
            group: self.group.clone(),
            terms,
        }
    }

    fn check_group(&self, rhs: &HeckeElem) -> Result<()> {
        if self.group.signature() != rhs.group.signature() {
            return Err(Error::MixedGroups);
        }
        Ok(())
    }

    /// Right multiplication by the generator `H_s`.
    pub fn mul_gen_right(&self, s: usize) -> HeckeElem {
        let g = &self.group;
        let mut out = HeckeElem::zero(self.group.clone());
        let correction = {
            let mut c = LaurentPoly::v_pow(-1);
            c.add_term(1, &BigInt::from(-1));
            c // v^{-1} - v
        };
        for (w, p) in &self.terms {
            let ws = g.right_mul_gen(*w, s);
            out.add_term(ws, p);
            if g.length(ws) < g.length(*w) {
                out.add_term(*w, &(p * &correction));
            }
        }
        out
    }

    /// Left multiplication by the generator `H_s`.
    pub fn mul_gen_left(&self, s: usize) -> HeckeElem {
        let g = &self.group;
        let mut out = HeckeElem::zero(self.group.clone());
        let correction = {
            let mut c = LaurentPoly::v_pow(-1);
            c.add_term(1, &BigInt::from(-1));
            c
        };
        for (w, p) in &self.terms {
            let sw = g.left_mul_gen(s, *w);
            out.add_term(sw, p);
            if g.length(sw) < g.length(*w) {
                out.add_term(*w, &(p * &correction));
            }
        }
        out
    }

    pub fn mul(&self, rhs: &HeckeElem) -> Result<HeckeElem> {
        self.check_group(rhs)?;
        let g = &self.group;
        let mut out = HeckeElem::zero(self.group.clone());
        for (w, p) in &rhs.terms {
            let mut acc = self.clone();
            for &s in g.word(*w) {
                acc = acc.mul_gen_right(s as usize);
            }
            for (u, q) in &acc.terms {
                out.add_term(*u, &(q * p));
            }
        }
        Ok(out)
    }

    /// `H_s^{-1} = H_s + (v − v^{-1}) H_e`.
    fn gen_inverse(group: &Arc<WeylGroup>, s: usize) -> HeckeElem {
        let mut x = HeckeElem::std_basis(group.clone(), group.simple(s));
        let mut c = LaurentPoly::v_pow(1);
        c.add_term(-1, &BigInt::from(-1));
        x.add_term(ElemId::IDENTITY, &c);
        x
    }

    /// `H_w^{-1}`, the class of the costandard object attached to `w^{-1}`.
    pub fn std_inverse(group: &Arc<WeylGroup>, w: ElemId) -> HeckeElem {
        // H_w = H_{s_1}⋯H_{s_k}  ⇒  H_w^{-1} = H_{s_k}^{-1}⋯H_{s_1}^{-1}
        let mut out = HeckeElem::unit(group.clone());
        for &s in group.word(w).iter().rev() {
            out = out.mul(&HeckeElem::gen_inverse(group, s as usize)).unwrap();
        }
        out
    }

    /// Bar image of the standard basis element:
    /// `bar(H_w) = H_{w^{-1}}^{-1} = H_{s_1}^{-1}⋯H_{s_k}^{-1}` along the
    /// canonical word `s_1⋯s_k` of `w`.
    pub fn bar_std_basis(group: &Arc<WeylGroup>, w: ElemId) -> HeckeElem {
        let mut out = HeckeElem::unit(group.clone());
        for &s in group.word(w) {
            out = out.mul(&HeckeElem::gen_inverse(group, s as usize)).unwrap();
        }
        out
    }

    /// The bar involution: `v ↦ v^{-1}`, `H_w ↦ H_{w^{-1}}^{-1}`.
    pub fn bar(&self) -> HeckeElem {
        let mut out = HeckeElem::zero(self.group.clone());
        for (w, p) in &self.terms {
            let img = HeckeElem::bar_std_basis(&self.group, *w);
            let pb = p.bar();
            for (u, q) in &img.terms {
                out.add_term(*u, &(q * &pb));
            }
        }
        out
    }

    /// The ring automorphism `a`: fixes `v`, sends `H_x` to
    /// `(−1)^{ℓ(x)} H_{x^{-1}}^{-1}`.
    pub fn invol_a(&self) -> HeckeElem {
        let mut out = HeckeElem::zero(self.group.clone());
        for (w, p) in &self.terms {
            let img = HeckeElem::bar_std_basis(&self.group, *w);
            let signed = if self.group.length(*w) % 2 == 1 {
                -p
            } else {
                p.clone()
            };
            for (u, q) in &img.terms {
                out.add_term(*u, &(q * &signed));
            }
        }
        out
    }

    /// The involution `b`: fixes every `H_w`, twists scalars by
    /// `v ↦ −v^{-1}`.
    pub fn invol_b(&self) -> HeckeElem {
        let terms = self
            .terms
            .iter()
            .map(|(w, p)| (*w, p.b_twist()))
            .collect();
        HeckeElem {
            group: self.group.clone(),
            terms,
        }
    }
}

impl fmt::Debug for HeckeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, p) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let word: Vec<String> = self
                .group
                .word(*w)
                .iter()
                .map(|s| (s + 1).to_string())
                .collect();
            write!(f, "({p})·H[{}]", word.join("-"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(pairs: &[(i64, i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (e, c) in pairs {
            p.add_term(*e, &BigInt::from(*c));
        }
        p
    }

    #[test]
    fn quadratic_relation() {
        let g = WeylGroup::build_preset("A1").unwrap();
        let hs = HeckeElem::std_basis(g.clone(), g.simple(0));
        let sq = hs.mul(&hs).unwrap();
        // H_s² = H_e + (v^{-1} - v) H_s
        assert_eq!(sq.coeff(ElemId::IDENTITY), LaurentPoly::one());
        assert_eq!(sq.coeff(g.simple(0)), lp(&[(-1, 1), (1, -1)]));
        assert_eq!(sq.num_terms(), 2);
    }

    #[test]
    fn unit_is_two_sided() {
        let g = WeylGroup::build_preset("A2").unwrap();
        let e = HeckeElem::unit(g.clone());
        for w in g.elements() {
            let h = HeckeElem::std_basis(g.clone(), w).scale(&lp(&[(2, 3), (-1, 1)]));
            assert_eq!(e.mul(&h).unwrap(), h);
            assert_eq!(h.mul(&e).unwrap(), h);
        }
    }

    #[test]
    fn braid_product() {
        let g = WeylGroup::build_preset("A2").unwrap();
        let h1 = HeckeElem::std_basis(g.clone(), g.simple(0));
        let h2 = HeckeElem::std_basis(g.clone(), g.simple(1));
        let prod = h1.mul(&h2).unwrap();
        let s1s2 = g.multiply(g.simple(0), g.simple(1));
        assert_eq!(prod, HeckeElem::std_basis(g.clone(), s1s2));
    }

    #[test]
    fn bar_examples() {
        let g = WeylGroup::build_preset("A1").unwrap();
        let e = HeckeElem::unit(g.clone());
        assert_eq!(e.bar(), e);
        // bar(H_s) = H_s + (v - v^{-1}) H_e
        let hs = HeckeElem::std_basis(g.clone(), g.simple(0));
        let b = hs.bar();
        assert_eq!(b.coeff(g.simple(0)), LaurentPoly::one());
        assert_eq!(b.coeff(ElemId::IDENTITY), lp(&[(1, 1), (-1, -1)]));
        // bar(v·H_e) = v^{-1}·H_e
        let ve = e.scale(&LaurentPoly::v_pow(1));
        assert_eq!(ve.bar(), e.scale(&LaurentPoly::v_pow(-1)));
    }

    #[test]
    fn bar_is_involutive_and_multiplicative() {
        let g = WeylGroup::build_preset("B2").unwrap();
        let mut x = HeckeElem::std_basis(g.clone(), g.from_word(&[0, 1]).unwrap());
        x.add_term(g.simple(1), &lp(&[(2, 1), (0, -3)]));
        let mut y = HeckeElem::std_basis(g.clone(), g.from_word(&[1, 0, 1]).unwrap());
        y.add_term(ElemId::IDENTITY, &lp(&[(-2, 5)]));
        assert_eq!(x.bar().bar(), x);
        assert_eq!(
            x.mul(&y).unwrap().bar(),
            x.bar().mul(&y.bar()).unwrap(),
            "bar is a ring homomorphism"
        );
    }

    #[test]
    fn std_inverse_examples() {
        let g = WeylGroup::build_preset("A2").unwrap();
        assert_eq!(
            HeckeElem::std_inverse(&g, ElemId::IDENTITY),
            HeckeElem::unit(g.clone())
        );
        // H_s^{-1} = H_s + (v - v^{-1}) H_e, verified by the product.
        for w in g.elements() {
            let inv = HeckeElem::std_inverse(&g, w);
            let prod = HeckeElem::std_basis(g.clone(), w).mul(&inv).unwrap();
            assert_eq!(prod, HeckeElem::unit(g.clone()), "H_w · H_w^{{-1}} = H_e");
        }
        // A2: H_{s1 s2}^{-1} equals bar(H_{s2 s1})
        let s1s2 = g.from_word(&[0, 1]).unwrap();
        let s2s1 = g.from_word(&[1, 0]).unwrap();
        assert_eq!(
            HeckeElem::std_inverse(&g, s1s2),
            HeckeElem::bar_std_basis(&g, s2s1)
        );
    }

    #[test]
    fn invol_a_examples() {
        let g = WeylGroup::build_preset("A2").unwrap();
        let e = HeckeElem::unit(g.clone());
        assert_eq!(e.invol_a(), e);
        // a(H_s) = -H_s - (v - v^{-1}) H_e
        let hs = HeckeElem::std_basis(g.clone(), g.simple(0));
        let a = hs.invol_a();
        assert_eq!(a.coeff(g.simple(0)), lp(&[(0, -1)]));
        assert_eq!(a.coeff(ElemId::IDENTITY), lp(&[(1, -1), (-1, 1)]));
    }

    #[test]
    fn invol_a_is_a_ring_automorphism() {
        let g = WeylGroup::build_preset("A2").unwrap();
        let mut x = HeckeElem::std_basis(g.clone(), g.simple(0));
        x.add_term(g.from_word(&[0, 1]).unwrap(), &lp(&[(1, 2)]));
        let mut y = HeckeElem::std_basis(g.clone(), g.simple(1));
        y.add_term(ElemId::IDENTITY, &lp(&[(-1, 1), (3, 4)]));
        assert_eq!(x.invol_a().invol_a(), x, "a is involutive");
        assert_eq!(
            x.mul(&y).unwrap().invol_a(),
            x.invol_a().mul(&y.invol_a()).unwrap(),
            "a(xy) = a(x)a(y)"
        );
    }

    #[test]
    fn invol_b_fixes_standard_basis() {
        let g = WeylGroup::build_preset("B2").unwrap();
        for w in g.elements() {
            let h = HeckeElem::std_basis(g.clone(), w);
            assert_eq!(h.invol_b(), h);
        }
        let mut x = HeckeElem::std_basis(g.clone(), g.simple(0)).scale(&lp(&[(1, 1)]));
        x.add_term(ElemId::IDENTITY, &lp(&[(-3, 2), (2, 7)]));
        assert_eq!(x.invol_b().invol_b(), x);
    }

    #[test]
    fn mixed_groups_rejected() {
        let g1 = WeylGroup::build_preset("A1").unwrap();
        let g2 = WeylGroup::build_preset("A2").unwrap();
        let x = HeckeElem::unit(g1);
        let y = HeckeElem::unit(g2);
        assert!(matches!(x.mul(&y), Err(Error::MixedGroups)));
    }

    #[test]
    fn associativity_on_deterministic_triples() {
        let g = WeylGroup::build_preset("B2").unwrap();
        let elems: Vec<ElemId> = g.elements().collect();
        let mut seed = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for _ in 0..60 {
            let mut mk = || {
                let mut h = HeckeElem::zero(g.clone());
                let count = next() % 3 + 1;
                for _ in 0..count {
                    let w = elems[(next() % elems.len() as u64) as usize];
                    let e = (next() % 5) as i64 - 2;
                    let c = (next() % 7) as i64 - 3;
                    h.add_term(w, &lp(&[(e, c)]));
                }
                h
            };
            let (x, y, z) = (mk(), mk(), mk());
            let lhs = x.mul(&y).unwrap().mul(&z).unwrap();
            let rhs = x.mul(&y.mul(&z).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
