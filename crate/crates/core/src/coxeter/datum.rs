//! Root data: the integral input from which a Weyl group and its torus
//! combinatorics are built.
//!
//! A datum consists of the cocharacter lattice `X_* = Z^r`, the simple
//! coroots as columns of an `r×n` matrix, the simple roots as rows of an
//! `n×r` matrix of functionals on `X_*`, and a diagram automorphism `τ`
//! given as a permutation of the simple roots together with its matrix on
//! `X_*`. The pairing matrix `roots · coroots` is the (generalized) Cartan
//! matrix and is validated on construction.
//!
//! The root functionals are part of the datum: the reflection action on
//! `X_*` is not determined by the Cartan matrix and the coroots alone once
//! the torus rank exceeds the semisimple rank (compare the two-dimensional
//! general-linear datum below).

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    label: String,
    rank: usize,
    num_roots: usize,
    /// `r×n`: column `j` is the simple coroot `α_j^∨ ∈ X_*`.
    coroots: Vec<Vec<i64>>,
    /// `n×r`: row `i` is the simple root `α_i` as a functional on `X_*`.
    roots: Vec<Vec<i64>>,
    /// Permutation of simple roots.
    tau_perm: Vec<usize>,
    /// `r×r` matrix of τ on `X_*`.
    tau_matrix: Vec<Vec<i64>>,
}

impl RootDatum {
    pub fn new(
        label: impl Into<String>,
        rank: usize,
        coroots: Vec<Vec<i64>>,
        roots: Vec<Vec<i64>>,
        tau_perm: Vec<usize>,
        tau_matrix: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let n = roots.len();
        let datum = RootDatum {
            label: label.into(),
            rank,
            num_roots: n,
            coroots,
            roots,
            tau_perm,
            tau_matrix,
        };
        datum.validate()?;
        Ok(datum)
    }

    /// Split datum: τ = id.
    pub fn new_split(
        label: impl Into<String>,
        rank: usize,
        coroots: Vec<Vec<i64>>,
        roots: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let n = roots.len();
        let id = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        RootDatum::new(label, rank, coroots, roots, (0..n).collect(), id)
    }

    /// Simply connected datum from a Cartan matrix: `X_*` is the coroot
    /// lattice, so the coroots are the standard basis and the root
    /// functionals are the rows of the Cartan matrix.
    pub fn simply_connected(label: impl Into<String>, cartan: &[Vec<i64>]) -> Result<Self> {
        let n = cartan.len();
        let coroots = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        RootDatum::new_split(label, n, coroots, cartan.to_vec())
    }

    fn validate(&self) -> Result<()> {
        let (r, n) = (self.rank, self.num_roots);
        if self.coroots.len() != r || self.coroots.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidDatum(format!(
                "coroot matrix must be {r}×{n}"
            )));
        }
        if self.roots.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidDatum(format!("root rows must have length {r}")));
        }
        if self.tau_perm.len() != n {
            return Err(Error::InvalidDatum("τ permutation length mismatch".into()));
        }
        let mut seen = vec![false; n];
        for &p in &self.tau_perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidDatum("τ is not a permutation".into()));
            }
            seen[p] = true;
        }
        if self.tau_matrix.len() != r || self.tau_matrix.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidDatum(format!("τ matrix must be {r}×{r}")));
        }

        // Cartan pairing: 2 on the diagonal, non-positive off it.
        let cartan = self.cartan_matrix();
        for i in 0..n {
            for j in 0..n {
                let a = cartan[i][j];
                if i == j && a != 2 {
                    return Err(Error::InvalidDatum(format!(
                        "⟨α_{i}, α_{i}^∨⟩ = {a}, expected 2"
                    )));
                }
                if i != j && a > 0 {
                    return Err(Error::InvalidDatum(format!(
                        "⟨α_{i}, α_{j}^∨⟩ = {a} > 0 off the diagonal"
                    )));
                }
                if i != j && (a == 0) != (cartan[j][i] == 0) {
                    return Err(Error::InvalidDatum(
                        "Cartan pairing has asymmetric zero pattern".into(),
                    ));
                }
            }
        }

        // τ preserves the Cartan pairing and transports roots/coroots.
        for i in 0..n {
            for j in 0..n {
                if cartan[self.tau_perm[i]][self.tau_perm[j]] != cartan[i][j] {
                    return Err(Error::InvalidDatum("τ does not preserve the Cartan matrix".into()));
                }
            }
        }
        for j in 0..n {
            let moved = self.apply_tau_matrix(&self.coroot(j));
            if moved != self.coroot(self.tau_perm[j]) {
                return Err(Error::InvalidDatum(format!(
                    "τ matrix does not send coroot {j} to coroot {}",
                    self.tau_perm[j]
                )));
            }
        }
        for i in 0..n {
            // ⟨α_{τ(i)}, τ(x)⟩ = ⟨α_i, x⟩ for all x
            let ti = self.tau_perm[i];
            for b in 0..r {
                let mut lhs = 0i64;
                for (k, row) in self.tau_matrix.iter().enumerate() {
                    lhs += self.roots[ti][k] * row[b];
                }
                if lhs != self.roots[i][b] {
                    return Err(Error::InvalidDatum(format!(
                        "τ matrix is not compatible with root {i}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots.
    pub fn num_simple(&self) -> usize {
        self.num_roots
    }

    pub fn coroot(&self, j: usize) -> Vec<i64> {
        (0..self.rank).map(|i| self.coroots[i][j]).collect()
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    /// Pairing matrix `⟨α_i, α_j^∨⟩`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.num_roots)
            .map(|i| {
                (0..self.num_roots)
                    .map(|j| {
                        (0..self.rank)
                            .map(|k| self.roots[i][k] * self.coroots[k][j])
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }

    pub fn tau_perm(&self) -> &[usize] {
        &self.tau_perm
    }

    pub fn tau_matrix(&self) -> &[Vec<i64>] {
        &self.tau_matrix
    }

    pub fn tau_is_trivial(&self) -> bool {
        self.tau_perm.iter().enumerate().all(|(i, &p)| i == p)
            && self
                .tau_matrix
                .iter()
                .enumerate()
                .all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == i64::from(i == j)))
    }

    /// Order of τ as a matrix on `X_*`.
    pub fn tau_order(&self) -> u32 {
        let r = self.rank;
        let id: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
            .collect();
        let mut acc = self.tau_matrix.clone();
        for k in 1..=64u32 {
            if acc == id {
                return k;
            }
            acc = mat_mul(&acc, &self.tau_matrix);
        }
        panic!("τ has order > 64; datum not supported");
    }

    fn apply_tau_matrix(&self, x: &[i64]) -> Vec<i64> {
        self.tau_matrix
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Matrix of the simple reflection `s_i` on `X_*`:
    /// `x ↦ x − ⟨α_i, x⟩ α_i^∨`.
    pub fn reflection_matrix(&self, i: usize) -> Vec<i64> {
        let r = self.rank;
        let coroot = self.coroot(i);
        let root = &self.roots[i];
        let mut m = vec![0i64; r * r];
        for a in 0..r {
            for b in 0..r {
                m[a * r + b] = i64::from(a == b) - coroot[a] * root[b];
            }
        }
        m
    }

    /// Built-in presets.
    pub fn preset(name: &str) -> Result<RootDatum> {
        match name {
            // Simply connected presets: X_* = coroot lattice.
            "A1" => RootDatum::simply_connected("A1", &[vec![2]]),
            "A2" => RootDatum::simply_connected("A2", &[vec![2, -1], vec![-1, 2]]),
            "A3" => RootDatum::simply_connected(
                "A3",
                &[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            ),
            "B2" => RootDatum::simply_connected("B2", &[vec![2, -1], vec![-2, 2]]),
            "B3" => RootDatum::simply_connected(
                "B3",
                &[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]],
            ),
            "G2" => RootDatum::simply_connected("G2", &[vec![2, -1], vec![-3, 2]]),
            // Torus rank 2, semisimple rank 1: the general-linear datum.
            "GL2" => RootDatum::new_split(
                "GL2",
                2,
                vec![vec![1], vec![-1]],
                vec![vec![1, -1]],
            ),
            // A one-dimensional torus with trivial Weyl group.
            "T1" => RootDatum::new_split("T1", 1, vec![vec![]], vec![]),
            other => Err(Error::InvalidDatum(format!("unknown preset '{other}'"))),
        }
    }

    pub const PRESETS: [&'static str; 8] = ["A1", "A2", "A3", "B2", "B3", "G2", "GL2", "T1"];

    /// Stable content signature used to detect mixed-group operations.
    pub fn signature(&self) -> u64 {
        let mut h = 0xcbf29ce484222325u64;
        let mut eat = |x: i64| {
            h ^= x as u64;
            h = h.wrapping_mul(0x100000001b3);
        };
        for b in self.label.bytes() {
            eat(b as i64);
        }
        eat(self.rank as i64);
        eat(self.num_roots as i64);
        for row in &self.coroots {
            for &x in row {
                eat(x);
            }
        }
        for row in &self.roots {
            for &x in row {
                eat(x);
            }
        }
        for &p in &self.tau_perm {
            eat(p as i64);
        }
        for row in &self.tau_matrix {
            for &x in row {
                eat(x);
            }
        }
        h
    }
}

pub(crate) fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum())
                .collect()
        })
        .collect()
}
