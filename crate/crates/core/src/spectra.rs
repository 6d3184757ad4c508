//! Adjacency matrices of mixed Cayley graphs and their spectra, computed
//! both from irreducible characters and by direct eigen-decomposition.
//!
//! For a normal connection set the HS-spectrum is `{[γ_j]^{d_j²}}` with
//! `γ_j = λ_j + μ_j`: `λ_j` averages `χ_j` over the symmetric part and
//! `μ_j` weights the skew part by `ω6` and its conjugate. The plain
//! adjacency spectrum replaces the weights by the 0/1 indicator. The
//! non-Hermitian adjacency matrix never goes through a general
//! eigensolver; power-trace moment checks validate its character-sum
//! spectrum instead.

use num_complex::Complex64;

use crate::atoms::ConnectionSet;
use crate::classes::{CharacterTable, ClassData};
use crate::eigen::{hermitian_eigen, max_residual, CMatrix};
use crate::eisenstein::QOmega;
use crate::group::Group;
use crate::{Error, Result, EIG_RESIDUAL, MERGE_EPS};

/// `ω_m = exp(2πi/m)`.
pub fn root_of_unity(m: u64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / m as f64)
}

/// `ω6 = (1+i√3)/2`.
pub fn omega6() -> Complex64 {
    Complex64::new(0.5, 3f64.sqrt() / 2.0)
}

/// `ω3 = (−1+i√3)/2`.
pub fn omega3() -> Complex64 {
    Complex64::new(-0.5, 3f64.sqrt() / 2.0)
}

/// Hermitian adjacency matrix of the second kind: 1 on undirected edges,
/// `ω6`/`ω6⁵` on directed ones.
pub struct HermitianAdjacency(pub CMatrix);

/// The (0,1)-adjacency matrix, stored over `Complex64` so the same moment
/// machinery applies to it.
pub struct ZeroOneAdjacency(pub CMatrix);

/// `H(Cay(Γ,S))`: entry `(u,v)` is decided by `w = v·u⁻¹`.
pub fn build_h_matrix(group: &Group, s: &ConnectionSet) -> Result<HermitianAdjacency> {
    if s.members().contains(group.identity()) {
        return Err(Error::IdentityInSet);
    }
    let n = group.order();
    let w6 = omega6();
    let m = CMatrix::from_fn(n, |u, v| {
        let w = group.mul(v, group.inv(u));
        if s.symmetric_part().contains(w) {
            Complex64::new(1.0, 0.0)
        } else if s.skew_part().contains(w) {
            w6
        } else if s.skew_part().contains(group.inv(w)) {
            w6.conj()
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Ok(HermitianAdjacency(m))
}

/// `A(Cay(Γ,S))`: entry `(u,v)` is 1 iff `v·u⁻¹ ∈ S`.
pub fn build_a_matrix(group: &Group, s: &ConnectionSet) -> Result<ZeroOneAdjacency> {
    if s.members().contains(group.identity()) {
        return Err(Error::IdentityInSet);
    }
    let n = group.order();
    let m = CMatrix::from_fn(n, |u, v| {
        let w = group.mul(v, group.inv(u));
        Complex64::new(if s.members().contains(w) { 1.0 } else { 0.0 }, 0.0)
    });
    Ok(ZeroOneAdjacency(m))
}

/// Multiset of eigenvalues, merged at [`MERGE_EPS`] and sorted by
/// `(re, im)`; the unmerged per-character view is kept when the spectrum
/// came from character sums.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub entries: Vec<(Complex64, usize)>,
    pub per_character: Option<Vec<(usize, Complex64, usize)>>,
}

impl Spectrum {
    fn from_values(values: Vec<(Complex64, usize)>) -> Self {
        let mut sorted = values;
        sorted.sort_by(|a, b| {
            a.0.re
                .partial_cmp(&b.0.re)
                .unwrap()
                .then(a.0.im.partial_cmp(&b.0.im).unwrap())
        });
        let mut entries: Vec<(Complex64, usize)> = Vec::new();
        for (value, mult) in sorted {
            match entries.last_mut() {
                Some((rep, count)) if (value - *rep).norm() <= MERGE_EPS => *count += mult,
                _ => entries.push((value, mult)),
            }
        }
        Spectrum {
            entries,
            per_character: None,
        }
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .map(|(v, _)| v.norm())
            .fold(0.0, f64::max)
    }

    /// Multiset equality against expected `(value, multiplicity)` pairs.
    pub fn matches_multiset(&self, expected: &[(Complex64, usize)], tol: f64) -> bool {
        let mut remaining = self.entries.clone();
        for &(value, mult) in expected {
            match remaining
                .iter()
                .position(|&(v, m)| (v - value).norm() <= tol && m == mult)
            {
                Some(idx) => {
                    remaining.remove(idx);
                }
                None => return false,
            }
        }
        remaining.is_empty()
    }

    pub fn agrees_with(&self, other: &Spectrum, tol: f64) -> bool {
        self.matches_multiset(&other.entries, tol)
    }
}

/// Per-character eigenvalue pieces of a normal mixed Cayley graph:
/// `γ_j = λ_j + μ_j`, each with multiplicity `d_j²`.
pub struct HsValues {
    pub lambda: Vec<f64>,
    pub mu: Vec<f64>,
}

impl HsValues {
    pub fn gamma(&self) -> Vec<f64> {
        self.lambda
            .iter()
            .zip(&self.mu)
            .map(|(l, m)| l + m)
            .collect()
    }
}

/// Decomposed HS-eigenvalues via character sums; errors on non-normal `S`.
pub fn hs_values(
    group: &Group,
    cd: &ClassData,
    ct: &CharacterTable,
    s: &ConnectionSet,
) -> Result<HsValues> {
    let _ = group;
    let classes = s.class_indices(cd)?;
    let h = ct.num_chars();
    let w6 = omega6();
    let mut lambda = Vec::with_capacity(h);
    let mut mu = Vec::with_capacity(h);
    for j in 0..h {
        let d = ct.degree(j) as f64;
        let mut lam = Complex64::new(0.0, 0.0);
        let mut m = Complex64::new(0.0, 0.0);
        for &c in &classes {
            let size = cd.size(c) as f64;
            let inv_c = cd.inverse_class(c);
            if classes.contains(&inv_c) {
                lam += size * ct.chi(j, c);
            } else {
                m += size * (w6 * ct.chi(j, c) + w6.conj() * ct.chi(j, inv_c));
            }
        }
        lam /= d;
        m /= d;
        debug_assert!(lam.im.abs() < 1e-9 && m.im.abs() < 1e-9);
        lambda.push(lam.re);
        mu.push(m.re);
    }
    Ok(HsValues { lambda, mu })
}

/// HS-spectrum `{[γ_j]^{d_j²}}` by character sums.
pub fn hs_spectrum_by_characters(
    group: &Group,
    cd: &ClassData,
    ct: &CharacterTable,
    s: &ConnectionSet,
) -> Result<Spectrum> {
    let values = hs_values(group, cd, ct, s)?;
    let gamma = values.gamma();
    let per: Vec<(usize, Complex64, usize)> = gamma
        .iter()
        .enumerate()
        .map(|(j, &g)| (j, Complex64::new(g, 0.0), ct.degree(j) * ct.degree(j)))
        .collect();
    let mut spectrum = Spectrum::from_values(per.iter().map(|&(_, v, m)| (v, m)).collect());
    spectrum.per_character = Some(per);
    Ok(spectrum)
}

/// Adjacency spectrum `{[ν_j]^{d_j²}}` with `ν_j = (1/d_j)·Σ_{s∈S} χ_j(s)`.
pub fn adjacency_spectrum_by_characters(
    group: &Group,
    cd: &ClassData,
    ct: &CharacterTable,
    s: &ConnectionSet,
) -> Result<Spectrum> {
    let _ = group;
    let classes = s.class_indices(cd)?;
    let h = ct.num_chars();
    let mut per = Vec::with_capacity(h);
    for j in 0..h {
        let d = ct.degree(j) as f64;
        let nu: Complex64 = classes
            .iter()
            .map(|&c| cd.size(c) as f64 * ct.chi(j, c))
            .sum::<Complex64>()
            / d;
        per.push((j, nu, ct.degree(j) * ct.degree(j)));
    }
    let mut spectrum = Spectrum::from_values(per.iter().map(|&(_, v, m)| (v, m)).collect());
    spectrum.per_character = Some(per);
    Ok(spectrum)
}

/// HS-spectrum by dense Hermitian eigen-decomposition, verified against the
/// residual contract.
pub fn hs_spectrum_direct(h: &HermitianAdjacency) -> Result<Spectrum> {
    let n = h.0.size();
    let eig = hermitian_eigen(&h.0)?;
    let allowed = EIG_RESIDUAL * n as f64 * h.0.max_abs().max(1.0);
    if max_residual(&h.0, &eig) > allowed {
        return Err(Error::ConvergenceFailure(0));
    }
    Ok(Spectrum::from_values(
        eig.values
            .iter()
            .map(|&v| (Complex64::new(v, 0.0), 1))
            .collect(),
    ))
}

/// Moment-check outcome; `first_failure` holds the smallest failing power
/// and the absolute trace error there.
#[derive(Debug)]
pub struct MomentCheck {
    pub passed: bool,
    pub first_failure: Option<(usize, f64)>,
}

/// Verify `trace(M^k) = Σ mult·value^k` for `k = 1..=kmax` within
/// `1e-6·n·max(1,|value|_max)^k`.
pub fn moment_check(m: &CMatrix, spectrum: &Spectrum, kmax: usize) -> MomentCheck {
    let n = m.size();
    let scale_base = spectrum.max_abs().max(1.0);
    let mut power = m.clone();
    let mut tol_scale = scale_base;
    for k in 1..=kmax {
        let trace = power.trace();
        let expected: Complex64 = spectrum
            .entries
            .iter()
            .map(|&(v, mult)| v.powu(k as u32) * mult as f64)
            .sum();
        let err = (trace - expected).norm();
        if err > 1e-6 * n as f64 * tol_scale {
            return MomentCheck {
                passed: false,
                first_failure: Some((k, err)),
            };
        }
        if k < kmax {
            power = power.matmul(m);
            tol_scale *= scale_base;
        }
    }
    MomentCheck {
        passed: true,
        first_failure: None,
    }
}

/// Element of the group algebra `Q(ω3)Γ` with exact coefficients.
#[derive(Clone, Debug)]
pub struct GroupAlgebraElement {
    coeffs: Vec<QOmega>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement {
            coeffs: vec![QOmega::zero(); n],
        }
    }

    pub fn coeff(&self, g: usize) -> QOmega {
        self.coeffs[g]
    }

    pub fn set(&mut self, g: usize, value: QOmega) {
        self.coeffs[g] = value;
    }

    pub fn add_to(&mut self, g: usize, value: QOmega) {
        self.coeffs[g] += value;
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The assignment from the oriented HS-integrality argument:
    /// `c_g = −ω3²` on `set`, `−ω3` on `set⁻¹`. For skew-symmetric `set`,
    /// `χ_j(x)/d_j` is exactly the HS-eigenvalue `μ_j` of `Cay(Γ, set)`.
    pub fn oriented_assignment(group: &Group, set: &crate::elemset::ElemSet) -> Self {
        let mut x = Self::zero(group.order());
        for e in set.iter() {
            x.set(e, -QOmega::omega3_sq());
        }
        for e in set.iter() {
            x.set(group.inv(e), -QOmega::omega3());
        }
        x
    }

    /// Exact per-class coefficient sums `Σ_{s∈Cl_c} c_s`.
    pub fn class_sums(&self, cd: &ClassData) -> Vec<QOmega> {
        let mut sums = vec![QOmega::zero(); cd.num_classes()];
        for (g, &c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                sums[cd.class_of(g)] += c;
            }
        }
        sums
    }
}

/// DOT rendering of the mixed graph: directed arcs for the skew part,
/// undirected (`dir=none`) edges for the symmetric part, element labels on
/// the nodes.
pub fn dot_export(group: &Group, s: &ConnectionSet, graph_name: &str) -> String {
    let n = group.order();
    let mut out = String::new();
    out.push_str(&format!("digraph \"{graph_name}\" {{\n"));
    for v in 0..n {
        out.push_str(&format!("  n{v} [label=\"{}\"];\n", group.label(v)));
    }
    for u in 0..n {
        for v in 0..n {
            let w = group.mul(v, group.inv(u));
            if s.symmetric_part().contains(w) && u < v {
                out.push_str(&format!("  n{u} -> n{v} [dir=none];\n"));
            } else if s.skew_part().contains(w) {
                out.push_str(&format!("  n{u} -> n{v};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

/// `χ_j(x) = Σ_c (Σ_{s∈Cl_c} c_s)·χ_j(c)`: exact class sums times the
/// numeric character value.
pub fn evaluate_character_sum(
    ct: &CharacterTable,
    cd: &ClassData,
    x: &GroupAlgebraElement,
    j: usize,
) -> Complex64 {
    x.class_sums(cd)
        .iter()
        .enumerate()
        .map(|(c, sum)| sum.to_complex() * ct.chi(j, c))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{character_table, conjugacy_classes};
    use crate::group::{build_group, GroupSpec};
    use crate::rng::SplitMix64;
    use crate::Context;

    fn ctx(spec: &str) -> Context {
        Context::from_spec(&spec.parse().unwrap()).unwrap()
    }

    fn a4_oriented(ctx: &Context) -> ConnectionSet {
        let c3 = ctx
            .classes
            .class_of(ctx.group.element_by_label("(1,2,3)").unwrap());
        ConnectionSet::from_class_indices(&ctx.group, &ctx.classes, &[c3]).unwrap()
    }

    fn a4_mixed(ctx: &Context) -> ConnectionSet {
        let c3 = ctx
            .classes
            .class_of(ctx.group.element_by_label("(1,2,3)").unwrap());
        let c2 = (0..4).find(|&c| ctx.classes.size(c) == 3).unwrap();
        ConnectionSet::from_class_indices(&ctx.group, &ctx.classes, &[c2, c3]).unwrap()
    }

    fn re(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }

    #[test]
    fn empty_set_gives_zero_matrix_and_spectrum() {
        let ctx = ctx("alternating:4");
        let s = ConnectionSet::from_elements(&ctx.group, []).unwrap();
        let h = build_h_matrix(&ctx.group, &s).unwrap();
        assert_eq!(h.0.max_abs(), 0.0);
        let spec = hs_spectrum_by_characters(&ctx.group, &ctx.classes, &ctx.chars, &s).unwrap();
        assert!(spec.matches_multiset(&[(re(0.0), 12)], 1e-12));
        let a = adjacency_spectrum_by_characters(&ctx.group, &ctx.classes, &ctx.chars, &s).unwrap();
        assert!(a.matches_multiset(&[(re(0.0), 12)], 1e-12));
        assert!(moment_check(&h.0, &spec, 4).passed);
    }

    #[test]
    fn symmetric_set_h_equals_a() {
        let ctx = ctx("symmetric:3");
        let transpositions = (0..3).find(|&c| ctx.classes.size(c) == 3).unwrap();
        let s = ConnectionSet::from_class_indices(&ctx.group, &ctx.classes, &[transpositions])
            .unwrap();
        let h = build_h_matrix(&ctx.group, &s).unwrap();
        let a = build_a_matrix(&ctx.group, &s).unwrap();
        assert_eq!(h.0, a.0);
        // row sums equal |S|
        for u in 0..6 {
            let sum: Complex64 = (0..6).map(|v| a.0.get(u, v)).sum();
            assert!((sum - re(3.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn h_matrix_structure() {
        let ctx = ctx("alternating:4");
        let s = a4_mixed(&ctx);
        let h = build_h_matrix(&ctx.group, &s).unwrap();
        assert!(h.0.is_hermitian(1e-12));
        let n = ctx.order();
        // Cayley structure: entry depends only on v·u⁻¹
        for u in 0..n {
            for v in 0..n {
                let w = ctx.group.mul(v, ctx.group.inv(u));
                assert_eq!(h.0.get(u, v), h.0.get(0, w));
            }
            assert_eq!(h.0.get(u, u), re(0.0));
        }
        // A ≠ Aᵀ exactly when the skew part is nonempty
        let a = build_a_matrix(&ctx.group, &s).unwrap();
        let asym = (0..n).any(|u| (0..n).any(|v| a.0.get(u, v) != a.0.get(v, u)));
        assert!(asym);
        // oriented rows: four ω6 and four ω6⁵ entries each
        let oriented = a4_oriented(&ctx);
        let ho = build_h_matrix(&ctx.group, &oriented).unwrap();
        for u in 0..n {
            let w6_count = (0..n)
                .filter(|&v| (ho.0.get(u, v) - omega6()).norm() < 1e-12)
                .count();
            let w65_count = (0..n)
                .filter(|&v| (ho.0.get(u, v) - omega6().conj()).norm() < 1e-12)
                .count();
            assert_eq!((w6_count, w65_count), (4, 4));
        }
    }

    #[test]
    fn a4_oriented_spectrum_golden() {
        let ctx = ctx("alternating:4");
        let s = a4_oriented(&ctx);
        let spec = hs_spectrum_by_characters(&ctx.group, &ctx.classes, &ctx.chars, &s).unwrap();
        assert!(spec.matches_multiset(&[(re(-8.0), 1), (re(0.0), 9), (re(4.0), 2)], 1e-9));
        let direct = hs_spectrum_direct(&build_h_matrix(&ctx.group, &s).unwrap()).unwrap();
        assert!(spec.agrees_with(&direct, 1e-6));
    }

    #[test]
    fn a4_mixed_spectra_golden() {
        let ctx = ctx("alternating:4");
        let s = a4_mixed(&ctx);
        let hs = hs_spectrum_by_characters(&ctx.group, &ctx.classes, &ctx.chars, &s).unwrap();
        assert!(hs.matches_multiset(&[(re(-5.0), 1), (re(-1.0), 9), (re(7.0), 2)], 1e-9));
        let adj =
            adjacency_spectrum_by_characters(&ctx.group, &ctx.classes, &ctx.chars, &s).unwrap();
        let w = omega3();
        assert!(adj.matches_multiset(
            &[
                (re(7.0), 1),
                (re(3.0) + 4.0 * w, 1),
                (re(-1.0) - 4.0 * w, 1),
                (re(-1.0), 9),
            ],
            1e-9
        ));
        // moment validation for the non-Hermitian adjacency route
        let a = build_a_matrix(&ctx.group, &s).unwrap();
        assert!(moment_check(&a.0, &adj, 4).passed);
        let h = build_h_matrix(&ctx.group, &s).unwrap();
        assert!(moment_check(&h.0, &hs, 4).passed);
    }

    #[test]
    fn lambda_mu_decomposition() {
        let ctx = ctx("alternating:4");
        let s = a4_mixed(&ctx);
        let both = hs_values(&ctx.group, &ctx.classes, &ctx.chars, &s).unwrap();
        let sym = ConnectionSet::from_set(&ctx.group, s.symmetric_part().clone()).unwrap();
        let skew = ConnectionSet::from_set(&ctx.group, s.skew_part().clone()).unwrap();
        let lam = hs_values(&ctx.group, &ctx.classes, &ctx.chars, &sym).unwrap();
        let mu = hs_values(&ctx.group, &ctx.classes, &ctx.chars, &skew).unwrap();
        for j in 0..4 {
            assert!((both.lambda[j] - lam.gamma()[j]).abs() < 1e-9);
            assert!((both.mu[j] - mu.gamma()[j]).abs() < 1e-9);
        }
    }

    #[test]
    fn non_normal_set_rejected() {
        let ctx = ctx("alternating:4");
        let x = ctx.group.element_by_label("(1,2,3)").unwrap();
        let s = ConnectionSet::from_elements(&ctx.group, [x]).unwrap();
        assert!(matches!(
            hs_spectrum_by_characters(&ctx.group, &ctx.classes, &ctx.chars, &s),
            Err(Error::NotNormal(_))
        ));
    }

    #[test]
    fn chars_agree_with_direct_on_random_normal_sets() {
        for spec in ["symmetric:3", "dihedral:6", "dicyclic:3", "cyclic:12"] {
            let ctx = ctx(spec);
            let h = ctx.classes.num_classes();
            let mut rng = SplitMix64::new(42);
            for _ in 0..8 {
                let mask = rng.below(1 << (h - 1));
                let s = ConnectionSet::from_class_mask(&ctx.group, &ctx.classes, mask).unwrap();
                let by_chars =
                    hs_spectrum_by_characters(&ctx.group, &ctx.classes, &ctx.chars, &s).unwrap();
                assert_eq!(by_chars.total_multiplicity(), ctx.order());
                let direct =
                    hs_spectrum_direct(&build_h_matrix(&ctx.group, &s).unwrap()).unwrap();
                assert!(
                    by_chars.agrees_with(&direct, 1e-6),
                    "disagreement for {spec} mask {mask}"
                );
                let a = build_a_matrix(&ctx.group, &s).unwrap();
                let adj =
                    adjacency_spectrum_by_characters(&ctx.group, &ctx.classes, &ctx.chars, &s)
                        .unwrap();
                assert!(moment_check(&a.0, &adj, h).passed);
            }
        }
    }

    #[test]
    fn character_sum_evaluation() {
        let g = build_group(&GroupSpec::Alternating(4)).unwrap();
        let cd = conjugacy_classes(&g);
        let ct = character_table(&g, &cd).unwrap();
        // identity indicator evaluates to the degree
        let mut x = GroupAlgebraElement::zero(12);
        x.set(0, QOmega::one());
        for j in 0..4 {
            let v = evaluate_character_sum(&ct, &cd, &x, j);
            assert!((v - re(ct.degree(j) as f64)).norm() < 1e-9);
        }
        // indicator of Cl((1,2,3)) at the character with χ = ω3 there
        let c3 = cd.class_of(g.element_by_label("(1,2,3)").unwrap());
        let mut ind = GroupAlgebraElement::zero(12);
        for &e in cd.members(c3) {
            ind.set(e, QOmega::one());
        }
        let j = (0..4)
            .find(|&j| (ct.chi(j, c3) - omega3()).norm() < 1e-8)
            .unwrap();
        let v = evaluate_character_sum(&ct, &cd, &ind, j);
        assert!((v - 4.0 * omega3()).norm() < 1e-9);
        // oriented assignment reproduces μ_j·d_j
        let ctx = Context::new(build_group(&GroupSpec::Alternating(4)).unwrap()).unwrap();
        let s = a4_oriented(&ctx);
        let x = GroupAlgebraElement::oriented_assignment(&ctx.group, s.members());
        let mu = hs_values(&ctx.group, &ctx.classes, &ctx.chars, &s)
            .unwrap()
            .mu;
        for j in 0..4 {
            let v = evaluate_character_sum(&ctx.chars, &ctx.classes, &x, j);
            let d = ctx.chars.degree(j) as f64;
            assert!((v / d - re(mu[j])).norm() < 1e-9, "j={j}");
        }
    }

    #[test]
    fn dot_export_structure() {
        let ctx = ctx("alternating:4");
        let s = a4_mixed(&ctx);
        let dot = dot_export(&ctx.group, &s, "a4-mixed");
        // 3·12/2 undirected edges, 4·12 arcs
        assert_eq!(dot.matches("[dir=none]").count(), 18);
        assert_eq!(dot.matches(" -> ").count(), 18 + 48);
        assert!(dot.contains("label=\"(1,2)(3,4)\""));
        assert!(dot.starts_with("digraph"));
    }

    #[test]
    fn moment_check_detects_wrong_spectrum() {
        let ctx = ctx("alternating:4");
        let s = a4_mixed(&ctx);
        let a = build_a_matrix(&ctx.group, &s).unwrap();
        let mut wrong =
            adjacency_spectrum_by_characters(&ctx.group, &ctx.classes, &ctx.chars, &s).unwrap();
        wrong.entries[0].0 += re(0.5);
        let check = moment_check(&a.0, &wrong, 4);
        assert!(!check.passed);
        assert!(check.first_failure.is_some());
    }
}
