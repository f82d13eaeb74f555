//! Ordinary character tables of the supported (split) Weyl groups, computed
//! by the Burnside-Dixon method: simultaneous diagonalization of the class
//! multiplication matrices over a prime field `F_p` with `p ≡ 1 (mod e)`,
//! followed by an integral lift.
//!
//! Weyl group characters are rational integers, so the lift is the symmetric
//! representative in `(-p/2, p/2)`; the exact integral orthogonality
//! relations are verified before the table is returned, which certifies the
//! lift.

use crate::coxeter::weyl::{ElemId, WeylGroup};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct CharTable {
    /// Conjugacy classes, sorted by minimal member; members ascending.
    pub classes: Vec<Vec<u32>>,
    /// Class index of each group element.
    pub class_of: Vec<usize>,
    /// Class of the inverses of class `k`.
    pub inverse_class: Vec<usize>,
    /// Rows are irreducible characters (sorted by degree, then values);
    /// columns follow `classes`.
    pub values: Vec<Vec<i64>>,
}

impl CharTable {
    pub fn degrees(&self) -> Vec<i64> {
        let e_class = self.class_of[0];
        self.values.iter().map(|row| row[e_class]).collect()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a ≠ 0 mod p.
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Reduced row echelon kernel of an `n×n` matrix over `F_p`.
fn nullspace_mod_p(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let mut pivot_col_of_row = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(r) = (row..n).find(|&r| !a[r][col].is_multiple_of(p)) else {
            continue;
        };
        a.swap(row, r);
        let inv = mod_inv(a[row][col], p);
        for x in a[row].iter_mut() {
            *x = *x * inv % p;
        }
        for r2 in 0..n {
            if r2 != row && a[r2][col] != 0 {
                let f = a[r2][col];
                for c in 0..n {
                    a[r2][c] = (a[r2][c] + (p - f) * a[row][c]) % p;
                }
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let pivot_cols: std::collections::HashSet<usize> = pivot_col_of_row.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = (p - a[r][free] % p) % p;
        }
        basis.push(v);
    }
    basis
}

struct ClassData {
    classes: Vec<Vec<u32>>,
    class_of: Vec<usize>,
    inverse_class: Vec<usize>,
    reps: Vec<u32>,
}

fn class_data(group: &WeylGroup) -> ClassData {
    let classes = group.conjugacy_classes(false);
    let mut class_of = vec![0usize; group.order()];
    for (k, class) in classes.iter().enumerate() {
        for &x in class {
            class_of[x as usize] = k;
        }
    }
    let inverse_class = classes
        .iter()
        .map(|class| class_of[group.invert(ElemId(class[0])).index()])
        .collect();
    let reps = classes.iter().map(|c| c[0]).collect();
    ClassData {
        classes,
        class_of,
        inverse_class,
        reps,
    }
}

/// Exact character table of a split group. Twisted data are rejected.
pub fn char_table(group: &WeylGroup) -> Result<CharTable> {
    if !group.datum().tau_is_trivial() {
        return Err(Error::UnsupportedTwisted(
            "character tables are only computed for split data (τ = id)".into(),
        ));
    }
    let order = group.order() as u64;
    let cd = class_data(group);
    let k = cd.classes.len();

    // exponent of the group
    let mut exponent = 1u64;
    for &rep in &cd.reps {
        let mut n = 1u64;
        let mut acc = ElemId(rep);
        while acc != group.identity() {
            acc = group.multiply(acc, ElemId(rep));
            n += 1;
        }
        exponent = num_integer::lcm(exponent, n);
    }

    // Dixon prime: p ≡ 1 (mod e), p > 2·sqrt(|G|), p coprime to |G|.
    let mut p = exponent + 1;
    loop {
        if is_prime(p) && (p * p) > 4 * order && !order.is_multiple_of(p) {
            break;
        }
        p += exponent;
    }

    // class multiplication coefficients: a_{ijk} = #{(x,y) ∈ C_i×C_j : xy = z_k}
    // matrix M_i has (M_i)[k][j] = a_{ijk}
    let mut class_mats: Vec<Vec<Vec<u64>>> = vec![vec![vec![0u64; k]; k]; k];
    for i in 0..k {
        for (kk, &rep) in cd.reps.iter().enumerate() {
            let z = ElemId(rep);
            let mut counts = vec![0u64; k];
            for &x in &cd.classes[i] {
                // y = x⁻¹ z
                let y = group.multiply(group.invert(ElemId(x)), z);
                counts[cd.class_of[y.index()]] += 1;
            }
            for j in 0..k {
                class_mats[i][kk][j] = counts[j] % p;
            }
        }
    }

    // split F_p^k into common eigenspaces of the commuting class matrices
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
        .map(|i| {
            let mut v = vec![0u64; k];
            v[i] = 1;
            v
        })
        .collect()];
    for mat in &class_mats {
        let mut next = Vec::new();
        for space in &spaces {
            if space.len() == 1 {
                next.push(space.clone());
                continue;
            }
            // action of mat restricted to the subspace, in its basis
            let dim = space.len();
            let images: Vec<Vec<u64>> = space
                .iter()
                .map(|v| {
                    (0..k)
                        .map(|r| {
                            space_row_apply(mat, v, r, p)
                        })
                        .collect()
                })
                .collect();
            let act = restrict_to_span(space, &images, p);
            let mut found = Vec::new();
            for lam in 0..p {
                let shifted: Vec<Vec<u64>> = (0..dim)
                    .map(|i| {
                        (0..dim)
                            .map(|j| (act[i][j] + if i == j { p - lam } else { 0 }) % p)
                            .collect()
                    })
                    .collect();
                // kernel of (A - λ)ᵀ acting on coordinate columns: we want
                // vectors c with A·c = λ·c where columns index basis vectors,
                // i.e. kernel of (A - λI) as a matrix acting on the right.
                let transposed: Vec<Vec<u64>> = (0..dim)
                    .map(|i| (0..dim).map(|j| shifted[j][i]).collect())
                    .collect();
                for c in nullspace_mod_p(&transposed, p) {
                    // eigenvector in ambient coordinates
                    let mut v = vec![0u64; k];
                    for (bi, coef) in c.iter().enumerate() {
                        for t in 0..k {
                            v[t] = (v[t] + coef * space[bi][t]) % p;
                        }
                    }
                    found.push((lam, v));
                }
            }
            // group by eigenvalue
            found.sort_by_key(|(lam, _)| *lam);
            let mut grouped: Vec<Vec<Vec<u64>>> = Vec::new();
            let mut current_lam = None;
            for (lam, v) in found {
                if current_lam != Some(lam) {
                    grouped.push(Vec::new());
                    current_lam = Some(lam);
                }
                grouped.last_mut().unwrap().push(v);
            }
            next.extend(grouped);
        }
        spaces = next;
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
    }
    if spaces.len() != k {
        return Err(Error::IdentityViolation(format!(
            "class algebra did not split into {k} one-dimensional eigenspaces"
        )));
    }

    // central characters ω_i = eigenvalue of M_i on each common eigenvector
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for space in &spaces {
        let v = &space[0];
        let pivot = (0..k).find(|&t| v[t] != 0).unwrap();
        let omegas: Vec<u64> = class_mats
            .iter()
            .map(|mat| {
                let img = space_row_apply(mat, v, pivot, p);
                img * mod_inv(v[pivot], p) % p
            })
            .collect();
        // degree: d² = |G| / Σ_i ω_i ω_{i*} / |C_i|
        let mut denom = 0u64;
        for i in 0..k {
            let t = omegas[i] * omegas[cd.inverse_class[i]] % p;
            denom = (denom + t * mod_inv(cd.classes[i].len() as u64 % p, p)) % p;
        }
        let d2 = order % p * mod_inv(denom, p) % p;
        let d = (0..p).find(|&d| d * d % p == d2).ok_or_else(|| {
            Error::IdentityViolation("degree is not a square mod p".into())
        })?;
        let d = d.min(p - d); // true degree < p/2
        let mut row = Vec::with_capacity(k);
        for i in 0..k {
            let val = d * omegas[i] % p * mod_inv(cd.classes[i].len() as u64 % p, p) % p;
            // symmetric lift
            let lifted = if val > p / 2 {
                val as i64 - p as i64
            } else {
                val as i64
            };
            row.push(lifted);
        }
        rows.push(row);
    }

    let e_class = cd.class_of[0];
    rows.sort_by(|a, b| a[e_class].cmp(&b[e_class]).then_with(|| a.cmp(b)));

    let table = CharTable {
        classes: cd.classes,
        class_of: cd.class_of,
        inverse_class: cd.inverse_class,
        values: rows,
    };
    verify_orthogonality(group, &table)?;
    Ok(table)
}

fn space_row_apply(mat: &[Vec<u64>], v: &[u64], row: usize, p: u64) -> u64 {
    mat[row]
        .iter()
        .zip(v)
        .fold(0u64, |acc, (m, x)| (acc + m * x) % p)
}

/// Matrix of a linear map on the span of `basis`, given the images of the
/// basis vectors; columns solve `images = basis · A`. The basis vectors are
/// echelonizable, so plain elimination suffices.
fn restrict_to_span(basis: &[Vec<u64>], images: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let dim = basis.len();
    let amb = basis[0].len();
    // Solve for each image: express as combination of basis rows.
    // Build augmented system Bᵀ · c = img.
    let mut act = vec![vec![0u64; dim]; dim];
    for (j, img) in images.iter().enumerate() {
        // Gaussian elimination on columns of basis
        let mut a: Vec<Vec<u64>> = (0..amb)
            .map(|r| {
                let mut row: Vec<u64> = (0..dim).map(|c| basis[c][r]).collect();
                row.push(img[r]);
                row
            })
            .collect();
        let mut piv_rows = Vec::new();
        let mut rr = 0;
        for c in 0..dim {
            let Some(pr) = (rr..amb).find(|&r| a[r][c] != 0) else {
                continue;
            };
            a.swap(rr, pr);
            let inv = mod_inv(a[rr][c], p);
            for x in a[rr].iter_mut() {
                *x = *x * inv % p;
            }
            for r2 in 0..amb {
                if r2 != rr && a[r2][c] != 0 {
                    let f = a[r2][c];
                    for cc in 0..=dim {
                        a[r2][cc] = (a[r2][cc] + (p - f) * a[rr][cc]) % p;
                    }
                }
            }
            piv_rows.push((rr, c));
            rr += 1;
        }
        for &(r, c) in &piv_rows {
            act[c][j] = a[r][dim];
        }
    }
    // act[i][j]: coefficient of basis i in the image of basis j; we want the
    // row-convention A[i][j] so that image(basis_i) = Σ_j A[i][j] basis_j.
    (0..dim)
        .map(|i| (0..dim).map(|j| act[j][i]).collect())
        .collect()
}

fn verify_orthogonality(group: &WeylGroup, t: &CharTable) -> Result<()> {
    let order = group.order() as i64;
    let k = t.classes.len();
    for a in 0..t.values.len() {
        for b in 0..t.values.len() {
            let mut acc = 0i64;
            for i in 0..k {
                acc += t.classes[i].len() as i64
                    * t.values[a][i]
                    * t.values[b][t.inverse_class[i]];
            }
            let expect = if a == b { order } else { 0 };
            if acc != expect {
                return Err(Error::IdentityViolation(format!(
                    "row orthogonality failed for characters {a}, {b}: {acc} ≠ {expect}"
                )));
            }
        }
    }
    for i in 0..k {
        for j in 0..k {
            let mut acc = 0i64;
            for row in &t.values {
                acc += row[i] * row[t.inverse_class[j]];
            }
            let expect = if i == j {
                order / t.classes[i].len() as i64
            } else {
                0
            };
            if acc != expect {
                return Err(Error::IdentityViolation(format!(
                    "column orthogonality failed for classes {i}, {j}"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::weyl::WeylGroup;

    #[test]
    fn a1_table() {
        let g = WeylGroup::build_preset("A1").unwrap();
        let t = char_table(&g).unwrap();
        assert_eq!(t.values, vec![vec![1, -1], vec![1, 1]]);
    }

    #[test]
    fn a2_degrees() {
        let g = WeylGroup::build_preset("A2").unwrap();
        let t = char_table(&g).unwrap();
        let mut degrees = t.degrees();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![1, 1, 2]);
    }

    #[test]
    fn degree_square_sums() {
        for name in ["A1", "A2", "A3", "B2", "B3", "G2"] {
            let g = WeylGroup::build_preset(name).unwrap();
            let t = char_table(&g).unwrap();
            let sum: i64 = t.degrees().iter().map(|d| d * d).sum();
            assert_eq!(sum as usize, g.order(), "{name}: Σ d² = |W|");
        }
    }

    #[test]
    fn known_degree_multisets() {
        let cases = [
            ("A3", vec![1, 1, 2, 3, 3]),
            ("B2", vec![1, 1, 1, 1, 2]),
            ("B3", vec![1, 1, 1, 1, 2, 2, 3, 3, 3, 3]),
            ("G2", vec![1, 1, 1, 1, 2, 2]),
        ];
        for (name, expect) in cases {
            let g = WeylGroup::build_preset(name).unwrap();
            let t = char_table(&g).unwrap();
            let mut degrees = t.degrees();
            degrees.sort_unstable();
            assert_eq!(degrees, expect, "{name}");
        }
    }

    #[test]
    fn deterministic_tables() {
        let g = WeylGroup::build_preset("A3").unwrap();
        let t1 = char_table(&g).unwrap();
        let t2 = char_table(&g).unwrap();
        assert_eq!(t1.values, t2.values);
    }

    #[test]
    fn s4_table_matches_the_textbook() {
        // classes in enumeration order: e, transpositions, 3-cycles,
        // double transpositions, 4-cycles
        let g = WeylGroup::build_preset("A3").unwrap();
        let t = char_table(&g).unwrap();
        let sizes: Vec<usize> = t.classes.iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![1, 6, 8, 3, 6]);
        assert_eq!(
            t.values,
            vec![
                vec![1, -1, 1, 1, -1],  // sign
                vec![1, 1, 1, 1, 1],    // trivial
                vec![2, 0, -1, 2, 0],   // the S3-pullback
                vec![3, -1, 0, -1, 1],  // standard ⊗ sign
                vec![3, 1, 0, -1, -1],  // standard
            ]
        );
    }
}
