//! Weyl group enumeration and combinatorics.
//!
//! Elements are enumerated breadth-first by length; each element is stored
//! with its lexicographically least reduced word (the canonical form), its
//! action matrix on `X_*`, descent sets and inverse. Lookup tables for
//! multiplication by generators on either side make all later products
//! cheap, and the Bruhat order is precomputed as one bitset per element
//! using the subword criterion.

use std::collections::HashMap;
use std::sync::Arc;

use crate::coxeter::datum::RootDatum;
use crate::error::{Error, Result};

/// Index of an element inside its group's enumeration. Enumeration order is
/// (length, lex-canonical word), so the identity is always index 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElemId(pub u32);

impl ElemId {
    pub const IDENTITY: ElemId = ElemId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug)]
struct ElemData {
    word: Vec<u8>,
    matrix: Vec<i64>,
    length: u32,
    inverse: u32,
    left_desc: u32,
    right_desc: u32,
}

#[derive(Debug)]
pub struct WeylGroup {
    datum: RootDatum,
    elems: Vec<ElemData>,
    right_mul: Vec<Vec<u32>>,
    left_mul: Vec<Vec<u32>>,
    by_length: Vec<Vec<u32>>,
    longest: u32,
    /// Bruhat lower cone of each element, as a bitset over element ids.
    bruhat_cone: Vec<Vec<u64>>,
    /// τ applied to each element (word-wise through the diagram permutation).
    tau_elem: Vec<u32>,
    signature: u64,
}

pub const DEFAULT_ELEMENT_CAP: usize = 20_000;

impl WeylGroup {
    /// Enumerate the full group. Fails with `InfiniteGroup` if the number of
    /// elements exceeds `cap`.
    pub fn build(datum: RootDatum, cap: usize) -> Result<Arc<WeylGroup>> {
        let r = datum.rank();
        let n = datum.num_simple();
        let gens: Vec<Vec<i64>> = (0..n).map(|i| datum.reflection_matrix(i)).collect();
        let id_matrix: Vec<i64> = (0..r * r)
            .map(|k| i64::from(k % (r + 1) == 0 && r > 0))
            .collect();
        // r = 0 would be an empty matrix; T1 has r = 1 so this stays sane.

        let mut elems = vec![ElemData {
            word: Vec::new(),
            matrix: id_matrix.clone(),
            length: 0,
            inverse: 0,
            left_desc: 0,
            right_desc: 0,
        }];
        let mut index: HashMap<Vec<i64>, u32> = HashMap::new();
        index.insert(id_matrix, 0);
        let mut right_mul: Vec<Vec<u32>> = vec![vec![u32::MAX; n]];
        let mut frontier: Vec<u32> = vec![0];

        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &w in &frontier {
                for s in 0..n {
                    if right_mul[w as usize][s] != u32::MAX {
                        continue;
                    }
                    let m = mul_flat(&elems[w as usize].matrix, &gens[s], r);
                    let ws = match index.get(&m) {
                        Some(&k) => k,
                        None => {
                            if elems.len() >= cap {
                                return Err(Error::InfiniteGroup { cap });
                            }
                            let mut word = elems[w as usize].word.clone();
                            word.push(s as u8);
                            let k = elems.len() as u32;
                            elems.push(ElemData {
                                word,
                                matrix: m.clone(),
                                length: elems[w as usize].length + 1,
                                inverse: 0,
                                left_desc: 0,
                                right_desc: 0,
                            });
                            right_mul.push(vec![u32::MAX; n]);
                            index.insert(m, k);
                            next.push(k);
                            k
                        }
                    };
                    right_mul[w as usize][s] = ws;
                    right_mul[ws as usize][s] = w;
                }
            }
            // Frontier is produced in (parent lex order, generator order),
            // which is exactly canonical-word lex order at the next length.
            frontier = next;
        }

        let count = elems.len();
        let mut left_mul = vec![vec![0u32; n]; count];
        for w in 0..count {
            for s in 0..n {
                let m = mul_flat(&gens[s], &elems[w].matrix, r);
                left_mul[w][s] = index[&m];
            }
        }

        for w in 0..count {
            let mut inv = 0u32;
            for &s in elems[w].word.clone().iter().rev() {
                inv = right_mul[inv as usize][s as usize];
            }
            elems[w].inverse = inv;
            let mut ld = 0u32;
            let mut rd = 0u32;
            for s in 0..n {
                if elems[left_mul[w][s] as usize].length < elems[w].length {
                    ld |= 1 << s;
                }
                if elems[right_mul[w][s] as usize].length < elems[w].length {
                    rd |= 1 << s;
                }
            }
            elems[w].left_desc = ld;
            elems[w].right_desc = rd;
        }

        let max_len = elems.iter().map(|e| e.length).max().unwrap_or(0);
        let mut by_length = vec![Vec::new(); max_len as usize + 1];
        for (k, e) in elems.iter().enumerate() {
            by_length[e.length as usize].push(k as u32);
        }
        let longest_candidates = &by_length[max_len as usize];
        if longest_candidates.len() != 1 {
            return Err(Error::InvalidDatum(
                "no unique longest element; datum is not of finite type".into(),
            ));
        }
        let longest = longest_candidates[0];

        // Bruhat cones by the subword criterion: the set of products of
        // subwords of the canonical word of w is exactly {y : y ≤ w}.
        let words = count.div_ceil(64);
        let mut bruhat_cone = vec![vec![0u64; words]; count];
        for w in 0..count {
            let mut reach = vec![false; count];
            reach[0] = true;
            for &s in &elems[w].word {
                let mut next = reach.clone();
                for (z, ok) in reach.iter().enumerate() {
                    if *ok {
                        next[right_mul[z][s as usize] as usize] = true;
                    }
                }
                reach = next;
            }
            for (z, ok) in reach.iter().enumerate() {
                if *ok {
                    bruhat_cone[w][z / 64] |= 1 << (z % 64);
                }
            }
        }

        let mut tau_elem = vec![0u32; count];
        for w in 0..count {
            let mut t = 0u32;
            for &s in &elems[w].word {
                t = right_mul[t as usize][datum.tau_perm()[s as usize]];
            }
            tau_elem[w] = t;
        }

        let signature = datum.signature();
        Ok(Arc::new(WeylGroup {
            datum,
            elems,
            right_mul,
            left_mul,
            by_length,
            longest,
            bruhat_cone,
            tau_elem,
            signature,
        }))
    }

    pub fn build_preset(name: &str) -> Result<Arc<WeylGroup>> {
        WeylGroup::build(RootDatum::preset(name)?, DEFAULT_ELEMENT_CAP)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn num_simple(&self) -> usize {
        self.datum.num_simple()
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn signature(&self) -> u64 {
        self.signature
    }

    pub fn identity(&self) -> ElemId {
        ElemId(0)
    }

    pub fn longest(&self) -> ElemId {
        ElemId(self.longest)
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> {
        (0..self.elems.len() as u32).map(ElemId)
    }

    pub fn elements_of_length(&self, l: usize) -> &[u32] {
        self.by_length.get(l).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn max_length(&self) -> usize {
        self.by_length.len() - 1
    }

    pub fn length(&self, w: ElemId) -> u32 {
        self.elems[w.index()].length
    }

    /// Canonical (lexicographically least) reduced word.
    pub fn word(&self, w: ElemId) -> &[u8] {
        &self.elems[w.index()].word
    }

    /// Action matrix on `X_*`, row-major `r×r`.
    pub fn matrix(&self, w: ElemId) -> &[i64] {
        &self.elems[w.index()].matrix
    }

    pub fn simple(&self, s: usize) -> ElemId {
        assert!(s < self.num_simple());
        ElemId(self.right_mul[0][s])
    }

    pub fn right_mul_gen(&self, w: ElemId, s: usize) -> ElemId {
        ElemId(self.right_mul[w.index()][s])
    }

    pub fn left_mul_gen(&self, s: usize, w: ElemId) -> ElemId {
        ElemId(self.left_mul[w.index()][s])
    }

    pub fn multiply(&self, x: ElemId, y: ElemId) -> ElemId {
        let mut acc = x;
        for &s in self.word(y) {
            acc = self.right_mul_gen(acc, s as usize);
        }
        acc
    }

    pub fn invert(&self, w: ElemId) -> ElemId {
        ElemId(self.elems[w.index()].inverse)
    }

    pub fn left_descents(&self, w: ElemId) -> u32 {
        self.elems[w.index()].left_desc
    }

    pub fn right_descents(&self, w: ElemId) -> u32 {
        self.elems[w.index()].right_desc
    }

    /// Image of `w` under the diagram automorphism.
    pub fn tau(&self, w: ElemId) -> ElemId {
        ElemId(self.tau_elem[w.index()])
    }

    /// Bruhat order: `y ≤ w`.
    pub fn bruhat_leq(&self, y: ElemId, w: ElemId) -> bool {
        let z = y.index();
        self.bruhat_cone[w.index()][z / 64] >> (z % 64) & 1 == 1
    }

    /// Element from a word in generator indices; the word need not be
    /// reduced.
    pub fn from_word(&self, word: &[usize]) -> Result<ElemId> {
        let mut acc = ElemId::IDENTITY;
        for &s in word {
            if s >= self.num_simple() {
                return Err(Error::InvalidDatum(format!(
                    "generator index {s} out of range (the datum has {} simple roots)",
                    self.num_simple()
                )));
            }
            acc = self.right_mul_gen(acc, s);
        }
        Ok(acc)
    }

    /// Independent Bruhat oracle via the lifting property:
    /// for `s` a right descent of `w`, `y ≤ w` iff `ys ≤ ws` (when `s` is a
    /// descent of `y`) or `y ≤ ws` (when it is not).
    pub fn bruhat_leq_lifting(&self, y: ElemId, w: ElemId) -> bool {
        if self.length(y) > self.length(w) {
            return false;
        }
        if w == ElemId::IDENTITY {
            return y == ElemId::IDENTITY;
        }
        let rd = self.right_descents(w);
        let s = rd.trailing_zeros() as usize;
        let ws = self.right_mul_gen(w, s);
        if self.right_descents(y) >> s & 1 == 1 {
            self.bruhat_leq_lifting(self.right_mul_gen(y, s), ws)
        } else {
            self.bruhat_leq_lifting(y, ws)
        }
    }

    /// Partition into conjugacy classes (`twisted = false`) or τ-twisted
    /// classes `x ~ w x τ(w)^{-1}` (`twisted = true`). Classes are sorted by
    /// their minimal member, members sorted ascending.
    pub fn conjugacy_classes(&self, twisted: bool) -> Vec<Vec<u32>> {
        let count = self.elems.len();
        let mut class_of = vec![usize::MAX; count];
        let mut classes: Vec<Vec<u32>> = Vec::new();
        for start in 0..count as u32 {
            if class_of[start as usize] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start];
            class_of[start as usize] = id;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for s in 0..self.num_simple() {
                    // s · x · τ(s)  (generators are involutions)
                    let ts = if twisted {
                        self.datum.tau_perm()[s]
                    } else {
                        s
                    };
                    let y = self.right_mul_gen(self.left_mul_gen(s, ElemId(x)), ts);
                    if class_of[y.index()] == usize::MAX {
                        class_of[y.index()] = id;
                        members.push(y.0);
                        stack.push(y.0);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }
}

fn mul_flat(a: &[i64], b: &[i64], r: usize) -> Vec<i64> {
    let mut out = vec![0i64; r * r];
    for i in 0..r {
        for k in 0..r {
            let av = a[i * r + k];
            if av == 0 {
                continue;
            }
            for j in 0..r {
                out[i * r + j] += av * b[k * r + j];
            }
        }
    }
    out
}

/// Brute-force closure of the generator matrices, used as an independent
/// oracle for the enumeration count.
pub fn matrix_closure_order(datum: &RootDatum, cap: usize) -> Result<usize> {
    let r = datum.rank();
    let gens: Vec<Vec<i64>> = (0..datum.num_simple())
        .map(|i| datum.reflection_matrix(i))
        .collect();
    let id: Vec<i64> = (0..r * r).map(|k| i64::from(r > 0 && k % (r + 1) == 0)).collect();
    let mut seen = std::collections::HashSet::new();
    seen.insert(id.clone());
    let mut stack = vec![id];
    while let Some(m) = stack.pop() {
        for g in &gens {
            let p = mul_flat(&m, g, r);
            if seen.insert(p.clone()) {
                if seen.len() > cap {
                    return Err(Error::InfiniteGroup { cap });
                }
                stack.push(p);
            }
        }
    }
    Ok(seen.len())
}
