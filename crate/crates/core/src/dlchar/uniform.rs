//! The v-graded formal uniform lattice: finitely supported maps from
//! symbols `ρ_{w,θ}` to `Z[v^{±1}]`, with the linear `ch` map from Hecke
//! elements and the duality involution
//! `d(v^n ρ_{w,θ}) = (−1)^{ℓ(w)} v^{−n} ρ_{w,θ}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::laurent::LaurentPoly;
use crate::coxeter::weyl::{ElemId, WeylGroup};
use crate::hecke::elem::HeckeElem;
use crate::mono::MonoElem;
use crate::torus::series::CharVector;

#[derive(Clone)]
pub struct UniformVirtual {
    group: Arc<WeylGroup>,
    terms: BTreeMap<(ElemId, CharVector), LaurentPoly>,
}

impl PartialEq for UniformVirtual {
    fn eq(&self, other: &Self) -> bool {
        self.group.signature() == other.group.signature() && self.terms == other.terms
    }
}

impl Eq for UniformVirtual {}

impl UniformVirtual {
    pub fn zero(group: Arc<WeylGroup>) -> Self {
        UniformVirtual {
            group,
            terms: BTreeMap::new(),
        }
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(ElemId, CharVector), &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: ElemId, theta: &CharVector) -> LaurentPoly {
        self.terms
            .get(&(w, theta.clone()))
            .cloned()
            .unwrap_or_else(LaurentPoly::zero)
    }

    pub fn add_term(&mut self, w: ElemId, theta: CharVector, p: &LaurentPoly) {
        if p.is_zero() {
            return;
        }
        let key = (w, theta);
        let entry = self.terms.entry(key.clone()).or_insert_with(LaurentPoly::zero);
        *entry = &*entry + p;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, rhs: &UniformVirtual) -> UniformVirtual {
        let mut out = self.clone();
        for ((w, theta), p) in &rhs.terms {
            out.add_term(*w, theta.clone(), p);
        }
        out
    }

    pub fn neg(&self) -> UniformVirtual {
        let terms = self.terms.iter().map(|(k, p)| (k.clone(), -p)).collect();
        UniformVirtual {
            group: self.group.clone(),
            terms,
        }
    }

    pub fn scale_int(&self, k: i64) -> UniformVirtual {
        if k == 0 {
            return UniformVirtual::zero(self.group.clone());
        }
        let c = LaurentPoly::monomial(k, 0);
        let terms = self.terms.iter().map(|(i, p)| (i.clone(), p * &c)).collect();
        UniformVirtual {
            group: self.group.clone(),
            terms,
        }
    }

    /// The `ch` map on the unipotent part: `H_w ↦ ρ_{w,triv}`, extended
    /// `Z[v^{±1}]`-linearly.
    pub fn ch_unip(h: &HeckeElem) -> UniformVirtual {
        let group = h.group().clone();
        let triv = CharVector::trivial(group.rank());
        let mut out = UniformVirtual::zero(group);
        for (w, p) in h.iter() {
            out.add_term(*w, triv.clone(), p);
        }
        out
    }

    /// The `ch` map on a monodromic block: `H_{w,χ} ↦ ρ_{w,χ}`.
    pub fn ch_mono(m: &MonoElem) -> UniformVirtual {
        let group = m.block().group().clone();
        let orbit = m.block().orbit().to_vec();
        let mut out = UniformVirtual::zero(group);
        for ((w, c), p) in m.iter() {
            out.add_term(*w, orbit[*c].clone(), p);
        }
        out
    }

    /// Alvis-Curtis duality in the graded model:
    /// `d(v^n ρ_{w,θ}) = (−1)^{ℓ(w)} v^{−n} ρ_{w,θ}`. Involutive.
    pub fn alvis_curtis(&self) -> UniformVirtual {
        let terms = self
            .terms
            .iter()
            .map(|((w, theta), p)| {
                let q = if self.group.length(*w) % 2 == 1 {
                    -&p.bar()
                } else {
                    p.bar()
                };
                ((*w, theta.clone()), q)
            })
            .collect();
        UniformVirtual {
            group: self.group.clone(),
            terms,
        }
    }

    /// All v-exponents occurring anywhere in the support.
    pub fn occurring_exponents(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self
            .terms
            .values()
            .flat_map(|p| p.iter().map(|(e, _)| *e).collect::<Vec<_>>())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Restriction to the terms whose v-exponent satisfies the predicate.
    pub fn restrict_exponents(&self, keep: impl Fn(i64) -> bool) -> UniformVirtual {
        let mut out = UniformVirtual::zero(self.group.clone());
        for ((w, theta), p) in &self.terms {
            let mut q = LaurentPoly::zero();
            for (e, c) in p.iter() {
                if keep(*e) {
                    q.add_term(*e, c);
                }
            }
            out.add_term(*w, theta.clone(), &q);
        }
        out
    }
}

impl fmt::Debug for UniformVirtual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((w, theta), p) in &self.terms {
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
            if theta.is_trivial() {
                write!(f, "({p})·ρ[{}]", word.join("-"))?;
            } else {
                write!(f, "({p})·ρ[{};{:?}/{}]", word.join("-"), theta.nums, theta.den)?;
            }
        }
        Ok(())
    }
}
