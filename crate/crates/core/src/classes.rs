//! Conjugacy classes and irreducible character tables.
//!
//! The character table comes from the class algebra: multiplication by a
//! class sum, written in the class-sum basis, is the integer matrix
//! `(M_i)_{kj} = a_{ijk}` of structure constants, and the common
//! eigenvectors of the family `{M_i}` are the central idempotents, one per
//! irreducible character. Rescaling by the square roots of the class sizes
//! turns each `M_i` into a normal operator whose adjoint is the matrix of
//! the inverse class, so a random combination with conjugate-paired
//! coefficients is Hermitian and a single Jacobi run recovers the common
//! eigenbasis. Eigenvalues of the individual `M_i` are then read off by
//! Rayleigh quotients, which are quadratically insensitive to eigenvector
//! error, and converted to character values.

use num_complex::Complex64;

use crate::eigen::{hermitian_eigen, CMatrix};
use crate::group::Group;
use crate::rng::SplitMix64;
use crate::{Error, Result, TOL_CHAR};

/// Conjugacy-class partition of a group, classes ordered by their minimum
/// element so the identity class is always index 0.
pub struct ClassData {
    class_of: Vec<usize>,
    reps: Vec<usize>,
    sizes: Vec<usize>,
    members: Vec<Vec<usize>>,
    inverse_class: Vec<usize>,
    centralizer_order: Vec<usize>,
}

impl ClassData {
    /// Number of classes, the symbol `h`.
    pub fn num_classes(&self) -> usize {
        self.reps.len()
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn rep(&self, c: usize) -> usize {
        self.reps[c]
    }

    pub fn size(&self, c: usize) -> usize {
        self.sizes[c]
    }

    pub fn members(&self, c: usize) -> &[usize] {
        &self.members[c]
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    pub fn centralizer_order(&self, c: usize) -> usize {
        self.centralizer_order[c]
    }

    /// Class of `rep(c)^k`; well defined because conjugation commutes with
    /// powers.
    pub fn power_class(&self, group: &Group, c: usize, k: i64) -> usize {
        self.class_of[group.power(self.reps[c], k)]
    }

    /// Order of the elements in class `c`.
    pub fn class_element_order(&self, group: &Group, c: usize) -> usize {
        group.element_order(self.reps[c])
    }
}

/// Partition `group` into conjugacy classes by orbit closure under all
/// conjugations.
pub fn conjugacy_classes(group: &Group) -> ClassData {
    let n = group.order();
    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        let c = reps.len();
        let mut orbit = vec![start];
        class_of[start] = c;
        let mut frontier = 0;
        while frontier < orbit.len() {
            let g = orbit[frontier];
            frontier += 1;
            for x in 0..n {
                let conj = group.conj(x, g);
                if class_of[conj] == usize::MAX {
                    class_of[conj] = c;
                    orbit.push(conj);
                }
            }
        }
        orbit.sort_unstable();
        reps.push(start);
        members.push(orbit);
    }
    let sizes: Vec<usize> = members.iter().map(|m| m.len()).collect();
    let inverse_class: Vec<usize> = reps.iter().map(|&r| class_of[group.inv(r)]).collect();
    let centralizer_order: Vec<usize> = reps
        .iter()
        .map(|&r| (0..n).filter(|&x| group.mul(x, r) == group.mul(r, x)).count())
        .collect();
    ClassData {
        class_of,
        reps,
        sizes,
        members,
        inverse_class,
        centralizer_order,
    }
}

/// `a_{ijk}`: the number of ways a fixed element of class `k` factors as
/// `x·y` with `x ∈ Cl_i`, `y ∈ Cl_j`. Independent of the chosen element,
/// which is asserted by sampling a second one.
pub fn structure_constants(group: &Group, cd: &ClassData, i: usize, j: usize, k: usize) -> usize {
    let count_for = |z: usize| {
        cd.members(i)
            .iter()
            .filter(|&&x| cd.class_of(group.mul(group.inv(x), z)) == j)
            .count()
    };
    let z = cd.rep(k);
    let a = count_for(z);
    if cd.size(k) > 1 {
        let z2 = cd.members(k)[cd.size(k) / 2];
        assert_eq!(a, count_for(z2), "structure constant depends on class element");
    }
    a
}

/// The `h×h` table of irreducible character values on class
/// representatives, rows sorted by degree and then by value vector.
pub struct CharacterTable {
    values: Vec<Complex64>, // row-major, chi[j * h + c]
    degrees: Vec<usize>,
    conj_pair: Vec<usize>,
}

impl CharacterTable {
    pub fn num_chars(&self) -> usize {
        self.degrees.len()
    }

    /// `χ_j` evaluated on class `c`.
    pub fn chi(&self, j: usize, c: usize) -> Complex64 {
        self.values[j * self.degrees.len() + c]
    }

    /// `χ_j` evaluated on an element.
    pub fn chi_elem(&self, cd: &ClassData, j: usize, g: usize) -> Complex64 {
        self.chi(j, cd.class_of(g))
    }

    pub fn degree(&self, j: usize) -> usize {
        self.degrees[j]
    }

    /// The index `k` with `χ_k = conj(χ_j)`.
    pub fn conj_pair(&self, j: usize) -> usize {
        self.conj_pair[j]
    }

    /// Fault-injection helper for validation tests: a copy of the table
    /// with `delta` added to the value at `(j, c)`. The result is no
    /// longer a character table of any group; scanners fed with it must
    /// report violations instead of passing silently.
    pub fn perturbed(&self, j: usize, c: usize, delta: Complex64) -> CharacterTable {
        let mut values = self.values.clone();
        values[j * self.degrees.len() + c] += delta;
        CharacterTable {
            values,
            degrees: self.degrees.clone(),
            conj_pair: self.conj_pair.clone(),
        }
    }
}

const COMBINATION_RETRIES: usize = 8;

/// Compute the character table of `group` by simultaneous diagonalization
/// of the class-algebra multiplication matrices, then verify both
/// orthogonality relations to [`TOL_CHAR`].
pub fn character_table(group: &Group, cd: &ClassData) -> Result<CharacterTable> {
    let n = group.order();
    let h = cd.num_classes();
    let mats = scaled_class_matrices(group, cd);

    let mut seed = 0xCA7_1E7u64 ^ ((n as u64) << 24) ^ (h as u64);
    let mut last_err = None;
    for _ in 0..COMBINATION_RETRIES {
        let mut rng = SplitMix64::new(seed);
        seed = seed.wrapping_add(0x9E37_79B9);
        match try_character_table(group, cd, &mats, &mut rng) {
            Ok(table) => return Ok(table),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or(Error::DegenerateCombination {
        retries: COMBINATION_RETRIES,
    }))
}

/// Sparse `D·M_i·D⁻¹` with `D = diag(√|Cl_j|)`: entries
/// `a_{ijk}·√(|Cl_k|/|Cl_j|)` at row `k`, column `j`.
struct ScaledClassMatrix {
    entries: Vec<(u32, u32, f64)>, // (row k, col j, scaled value)
}

fn scaled_class_matrices(group: &Group, cd: &ClassData) -> Vec<ScaledClassMatrix> {
    let h = cd.num_classes();
    let sqrt_size: Vec<f64> = (0..h).map(|c| (cd.size(c) as f64).sqrt()).collect();
    let mut mats = Vec::with_capacity(h);
    for i in 0..h {
        let mut entries = Vec::new();
        let mut counts = vec![0usize; h];
        for j in 0..h {
            counts.iter_mut().for_each(|c| *c = 0);
            for &x in cd.members(i) {
                for &y in cd.members(j) {
                    counts[cd.class_of(group.mul(x, y))] += 1;
                }
            }
            for (k, &count) in counts.iter().enumerate() {
                if count == 0 {
                    continue;
                }
                debug_assert_eq!(count % cd.size(k), 0);
                let a = (count / cd.size(k)) as f64;
                entries.push((k as u32, j as u32, a * sqrt_size[k] / sqrt_size[j]));
            }
        }
        mats.push(ScaledClassMatrix { entries });
    }
    mats
}

fn try_character_table(
    group: &Group,
    cd: &ClassData,
    mats: &[ScaledClassMatrix],
    rng: &mut SplitMix64,
) -> Result<CharacterTable> {
    let n = group.order();
    let h = cd.num_classes();
    let vectors = common_eigenvectors(cd, mats, rng)?;

    // Rayleigh quotients give the class-sum eigenvalues ω_i = |Cl_i|·χ(g_i)/d.
    let mut rows: Vec<(usize, Vec<Complex64>)> = Vec::with_capacity(h);
    for col in 0..h {
        let w = vectors.column(col);
        let omega: Vec<Complex64> = (0..h)
            .map(|i| {
                mats[i]
                    .entries
                    .iter()
                    .map(|&(k, j, a)| w[k as usize].conj() * a * w[j as usize])
                    .sum()
            })
            .collect();
        let inv_d_sq: f64 = omega
            .iter()
            .enumerate()
            .map(|(i, z)| z.norm_sqr() / cd.size(i) as f64)
            .sum();
        let d = (n as f64 / inv_d_sq).sqrt();
        let degree = d.round();
        if (d - degree).abs() > 1e-6 || degree < 1.0 {
            return Err(Error::OrthogonalityFailure(format!(
                "character degree {d} does not snap to an integer"
            )));
        }
        let chi: Vec<Complex64> = omega
            .iter()
            .enumerate()
            .map(|(i, z)| z * degree / cd.size(i) as f64)
            .collect();
        rows.push((degree as usize, chi));
    }

    if rows.iter().map(|(d, _)| d * d).sum::<usize>() != n {
        return Err(Error::OrthogonalityFailure(
            "degree squares do not sum to the group order".to_string(),
        ));
    }

    // Deterministic row order: degree ascending, then the rounded value
    // vector lexicographically descending, which puts the trivial
    // character first among the linear ones.
    rows.sort_by(|(da, va), (db, vb)| {
        da.cmp(db).then_with(|| {
            for (x, y) in va.iter().zip(vb) {
                let key = |z: &Complex64| {
                    (
                        (z.re * 1e6).round() as i64,
                        (z.im * 1e6).round() as i64,
                    )
                };
                match key(y).cmp(&key(x)) {
                    std::cmp::Ordering::Equal => continue,
                    other => return other,
                }
            }
            std::cmp::Ordering::Equal
        })
    });

    let degrees: Vec<usize> = rows.iter().map(|(d, _)| *d).collect();
    let mut values = Vec::with_capacity(h * h);
    for (_, chi) in &rows {
        values.extend_from_slice(chi);
    }

    let conj_pair = find_conjugate_pairs(&values, h)?;
    let table = CharacterTable {
        values,
        degrees,
        conj_pair,
    };
    verify_orthogonality(cd, &table)?;
    Ok(table)
}

/// Common eigenvectors of the scaled class matrices, by Jacobi on a random
/// Hermitian combination and recursive re-splitting of eigenvalue clusters.
fn common_eigenvectors(
    cd: &ClassData,
    mats: &[ScaledClassMatrix],
    rng: &mut SplitMix64,
) -> Result<CMatrix> {
    let h = cd.num_classes();
    let mut basis = CMatrix::identity(h);
    let mut clusters: Vec<Vec<usize>> = vec![(0..h).collect()];
    for _ in 0..COMBINATION_RETRIES {
        if clusters.iter().all(|c| c.len() == 1) {
            return Ok(basis);
        }
        let combo = hermitian_combination(cd, mats, rng);
        let mut next_clusters = Vec::new();
        for cluster in &clusters {
            if cluster.len() == 1 {
                next_clusters.push(cluster.clone());
                continue;
            }
            let k = cluster.len();
            // M = W* C W on the cluster's current columns
            let mut cw = vec![vec![Complex64::new(0.0, 0.0); k]; h];
            for (ci, &col) in cluster.iter().enumerate() {
                for r in 0..h {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for j in 0..h {
                        acc += combo.get(r, j) * basis.get(j, col);
                    }
                    cw[r][ci] = acc;
                }
            }
            let m = CMatrix::from_fn(k, |a, b| {
                (0..h)
                    .map(|r| basis.get(r, cluster[a]).conj() * cw[r][b])
                    .sum()
            });
            let eig = hermitian_eigen(&m)?;
            // rotate the cluster columns into the refined basis
            let mut new_cols = vec![vec![Complex64::new(0.0, 0.0); h]; k];
            for (bi, new_col) in new_cols.iter_mut().enumerate() {
                for (r, slot) in new_col.iter_mut().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (ai, &col) in cluster.iter().enumerate() {
                        acc += basis.get(r, col) * eig.vectors.get(ai, bi);
                    }
                    *slot = acc;
                }
            }
            for (bi, &col) in cluster.iter().enumerate() {
                for r in 0..h {
                    basis.set(r, col, new_cols[bi][r]);
                }
            }
            // split by eigenvalue gaps
            let spread = (eig.values[k - 1] - eig.values[0]).max(1.0);
            let mut current = vec![cluster[0]];
            for idx in 1..k {
                if eig.values[idx] - eig.values[idx - 1] > 1e-6 * spread {
                    next_clusters.push(std::mem::take(&mut current));
                }
                current.push(cluster[idx]);
            }
            next_clusters.push(current);
        }
        clusters = next_clusters;
    }
    if clusters.iter().all(|c| c.len() == 1) {
        Ok(basis)
    } else {
        Err(Error::DegenerateCombination {
            retries: COMBINATION_RETRIES,
        })
    }
}

/// Random combination `Σ t_i·(D M_i D⁻¹)` with `t_{i'} = conj(t_i)` across
/// inverse-class pairs, which makes the result Hermitian.
fn hermitian_combination(cd: &ClassData, mats: &[ScaledClassMatrix], rng: &mut SplitMix64) -> CMatrix {
    let h = cd.num_classes();
    let mut coeff = vec![Complex64::new(0.0, 0.0); h];
    for i in 0..h {
        let ii = cd.inverse_class(i);
        if ii == i {
            coeff[i] = Complex64::new(rng.range_i64(1, 1_000_000) as f64, 0.0);
        } else if i < ii {
            let t = Complex64::new(
                rng.range_i64(1, 1_000_000) as f64,
                rng.range_i64(1, 1_000_000) as f64,
            );
            coeff[i] = t;
            coeff[ii] = t.conj();
        }
    }
    let mut c = CMatrix::zeros(h);
    for (i, mat) in mats.iter().enumerate() {
        for &(k, j, a) in &mat.entries {
            let v = c.get(k as usize, j as usize) + coeff[i] * a;
            c.set(k as usize, j as usize, v);
        }
    }
    // kill the rounding asymmetry so the Jacobi input is exactly Hermitian
    CMatrix::from_fn(h, |i, j| (c.get(i, j) + c.get(j, i).conj()) / 2.0)
}

fn find_conjugate_pairs(values: &[Complex64], h: usize) -> Result<Vec<usize>> {
    let mut pairs = vec![usize::MAX; h];
    for j in 0..h {
        let found = (0..h).find(|&k| {
            (0..h).all(|c| (values[k * h + c] - values[j * h + c].conj()).norm() < 1e-6)
        });
        match found {
            Some(k) => pairs[j] = k,
            None => {
                return Err(Error::OrthogonalityFailure(format!(
                    "no conjugate partner for character {j}"
                )))
            }
        }
    }
    for j in 0..h {
        if pairs[pairs[j]] != j {
            return Err(Error::OrthogonalityFailure(
                "conjugate pairing is not an involution".to_string(),
            ));
        }
    }
    Ok(pairs)
}

/// Check both orthogonality relations at [`TOL_CHAR`]; construction always
/// runs this, but callers can re-verify tables (or reject doctored ones).
pub fn verify_orthogonality(cd: &ClassData, table: &CharacterTable) -> Result<()> {
    let h = cd.num_classes();
    let n: usize = (0..h).map(|c| cd.size(c)).sum();
    for j in 0..h {
        for l in 0..h {
            let sum: Complex64 = (0..h)
                .map(|c| cd.size(c) as f64 * table.chi(j, c) * table.chi(l, c).conj())
                .sum();
            let expect = if j == l { n as f64 } else { 0.0 };
            if (sum - expect).norm() > TOL_CHAR * n as f64 {
                return Err(Error::OrthogonalityFailure(format!(
                    "row orthogonality failed at ({j},{l}): {sum}"
                )));
            }
        }
    }
    for c in 0..h {
        for cp in 0..h {
            let sum: Complex64 = (0..h)
                .map(|j| table.chi(j, c) * table.chi(j, cp).conj())
                .sum();
            let expect = if c == cp {
                cd.centralizer_order(c) as f64
            } else {
                0.0
            };
            if (sum - expect).norm() > TOL_CHAR * n as f64 {
                return Err(Error::OrthogonalityFailure(format!(
                    "column orthogonality failed at ({c},{cp}): {sum}"
                )));
            }
        }
    }
    Ok(())
}
