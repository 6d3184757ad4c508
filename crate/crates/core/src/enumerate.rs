//! Enumeration of normal connection sets and exhaustive catalog scans.
//!
//! A normal connection set is a union of non-identity conjugacy classes,
//! so it is a bitmask over classes. The slow path materializes
//! [`ConnectionSet`]s for classification rows; the fast path keeps
//! everything at class granularity — power-map masks decide the
//! structural criteria, precomputed per-class real contributions decide
//! the spectral ones — which is what makes full scans over millions of
//! sets affordable.

use rayon::prelude::*;
use serde::Serialize;

use crate::atoms::{self, ConnectionSet};
use crate::classes::ClassData;
use crate::group::{Group, GroupSpec};
use crate::integrality::{integrality_report, is_eisenstein_integral};
use crate::spectra::hs_spectrum_by_characters;
use crate::{int_distance, Context, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumMode {
    /// Every nonempty union of non-identity classes.
    All,
    /// Sets with both an undirected and a directed edge class.
    MixedOnly,
    /// Skew-symmetric sets only.
    OrientedOnly,
    /// Symmetric sets only.
    SymmetricOnly,
}

impl std::str::FromStr for EnumMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<EnumMode> {
        match s {
            "all" => Ok(EnumMode::All),
            "mixed-only" => Ok(EnumMode::MixedOnly),
            "oriented-only" => Ok(EnumMode::OrientedOnly),
            "symmetric-only" => Ok(EnumMode::SymmetricOnly),
            _ => Err(Error::Parse(format!("unknown enumeration mode {s:?}"))),
        }
    }
}

/// Class-level view of one group, shared by the mask iterator and the
/// exhaustive scanner. Bit `b` always refers to class `b + 1`.
struct ClassMasks {
    bits: usize,
    inv: Vec<usize>, // inverse class per bit
}

impl ClassMasks {
    fn new(cd: &ClassData) -> ClassMasks {
        let bits = cd.num_classes() - 1;
        let inv = (0..bits).map(|b| cd.inverse_class(b + 1) - 1).collect();
        ClassMasks { bits, inv }
    }

    fn inverse_mask(&self, mask: u64) -> u64 {
        let mut out = 0u64;
        let mut rest = mask;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= 1 << self.inv[b];
        }
        out
    }

    fn admits(&self, mode: EnumMode, mask: u64) -> bool {
        let _ = self.bits;
        let inv = self.inverse_mask(mask);
        let sym = mask & inv;
        let skew = mask & !inv;
        match mode {
            EnumMode::All => true,
            EnumMode::MixedOnly => sym != 0 && skew != 0,
            EnumMode::OrientedOnly => sym == 0,
            EnumMode::SymmetricOnly => skew == 0,
        }
    }
}

/// Check the enumeration size against `max_sets` and return the number of
/// class bits.
fn enumeration_bits(cd: &ClassData, max_sets: u64) -> Result<usize> {
    let bits = cd.num_classes() - 1;
    let total = if bits >= 127 {
        u128::MAX
    } else {
        1u128 << bits
    };
    if bits > 62 || total > max_sets as u128 {
        return Err(Error::EnumerationTooLarge {
            sets: total,
            bound: max_sets,
        });
    }
    Ok(bits)
}

/// Masks of every nonempty normal set admitted by `mode`, ascending.
pub fn normal_set_masks(
    cd: &ClassData,
    mode: EnumMode,
    max_sets: u64,
) -> Result<impl Iterator<Item = u64> + '_> {
    let bits = enumeration_bits(cd, max_sets)?;
    let masks = ClassMasks::new(cd);
    Ok((1..(1u64 << bits)).filter(move |&m| masks.admits(mode, m)))
}

/// Stream of materialized normal connection sets, ascending by mask.
pub fn enumerate_normal_sets<'a>(
    group: &'a Group,
    cd: &'a ClassData,
    mode: EnumMode,
    max_sets: u64,
) -> Result<impl Iterator<Item = ConnectionSet> + 'a> {
    let masks = normal_set_masks(cd, mode, max_sets)?;
    Ok(masks.map(move |m| {
        ConnectionSet::from_class_mask(group, cd, m).expect("class masks exclude the identity")
    }))
}

/// One classification row: deterministic connection-set descriptor plus
/// the integrality verdicts and the HS-spectrum.
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationRow {
    pub group: String,
    pub set: String,
    pub normal: bool,
    pub hs_integral: bool,
    pub eisenstein_integral: bool,
    pub spectrum: String,
}

/// Descriptor like `Cl[(1,2)(3,4)]+Cl[(1,2,3)]→`: sorted class labels, an
/// arrow marking classes included without their inverse class.
pub fn set_descriptor(group: &Group, cd: &ClassData, classes: &[usize]) -> String {
    let mut parts: Vec<String> = classes
        .iter()
        .map(|&c| {
            let arrow = if classes.contains(&cd.inverse_class(c)) {
                ""
            } else {
                "→"
            };
            format!("Cl[{}]{arrow}", group.label(cd.rep(c)))
        })
        .collect();
    parts.sort();
    if parts.is_empty() {
        "∅".to_string()
    } else {
        parts.join("+")
    }
}

fn spectrum_summary(spectrum: &crate::spectra::Spectrum) -> String {
    let items: Vec<String> = spectrum
        .entries
        .iter()
        .map(|&(v, m)| {
            let value = if v.im.abs() < 1e-9 && int_distance(v.re) < 1e-9 {
                format!("{}", v.re.round() as i64)
            } else {
                format!("{:.6}{:+.6}i", v.re, v.im)
            };
            format!("{value}^{m}")
        })
        .collect();
    format!("{{{}}}", items.join(","))
}

/// Classify every admitted normal set of every group; all cross-route
/// invariants are asserted along the way and any violation aborts with a
/// reproducer command.
pub fn classify(
    specs: &[GroupSpec],
    mode: EnumMode,
    max_sets: u64,
    tol: f64,
) -> Result<Vec<ClassificationRow>> {
    let mut rows = Vec::new();
    for spec in specs {
        let ctx = Context::from_spec(spec)?;
        let masks: Vec<u64> = normal_set_masks(&ctx.classes, mode, max_sets)?.collect();
        for mask in masks {
            let s = ConnectionSet::from_class_mask(&ctx.group, &ctx.classes, mask)?;
            let classes = s.class_indices(&ctx.classes)?;
            let report = integrality_report(&ctx, &s, tol)?;
            let eis = is_eisenstein_integral(&ctx, &s, tol)?;
            let reproducer = || {
                format!(
                    "check --group {} --set classes:{}",
                    ctx.name,
                    classes
                        .iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            };
            if !report.agree {
                return Err(Error::InvariantViolation {
                    command: reproducer(),
                });
            }
            if eis.verdict && !report.spectral {
                return Err(Error::InvariantViolation {
                    command: reproducer(),
                });
            }
            let spectrum = hs_spectrum_by_characters(&ctx.group, &ctx.classes, &ctx.chars, &s)?;
            rows.push(ClassificationRow {
                group: ctx.name.clone(),
                set: set_descriptor(&ctx.group, &ctx.classes, &classes),
                normal: true,
                hs_integral: report.spectral,
                eisenstein_integral: eis.verdict,
                spectrum: spectrum_summary(&spectrum),
            });
        }
    }
    Ok(rows)
}

/// Counters from one exhaustive class-mask scan. All three mismatch
/// counters must be zero; `first_mismatch_mask` pins a reproducer.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ExhaustiveReport {
    pub group: String,
    pub sets_checked: u64,
    pub hs_integral_sets: u64,
    pub eisenstein_sets: u64,
    /// structural verdict differed from the spectral one
    pub structural_spectral_mismatches: u64,
    /// HS-integrality of `S` differed from that of `S∖S̄` and `S̄` jointly
    pub decomposition_mismatches: u64,
    /// Eisenstein-integral set that was not HS-integral
    pub eisenstein_implication_violations: u64,
    pub first_mismatch_mask: Option<u64>,
}

/// Per-class scan tables. Contribution entries are real parts only: every
/// aggregate these feed (`λ`, `μ`, `g`) is a real number, so dropping the
/// pairwise-cancelling imaginary parts is exact.
struct ScanTables {
    h: usize,
    inv: Vec<usize>,
    gamma3: Vec<bool>,
    power_mask: Vec<u64>,
    power3_mask: Vec<u64>,
    sym_contrib: Vec<f64>,  // [bit * h + j]
    skew_contrib: Vec<f64>, // [bit * h + j]
    g_contrib: Vec<f64>,    // [bit * h + j]
}

impl ScanTables {
    fn new(ctx: &Context) -> ScanTables {
        let cd = &ctx.classes;
        let ct = &ctx.chars;
        let group = &ctx.group;
        let h = cd.num_classes();
        let bits = h - 1;
        let w6 = crate::spectra::omega6();
        let omega = num_complex::Complex64::new(0.5, -3f64.sqrt() / 6.0);
        let mut tables = ScanTables {
            h,
            inv: vec![0; bits],
            gamma3: vec![false; bits],
            power_mask: vec![0; bits],
            power3_mask: vec![0; bits],
            sym_contrib: vec![0.0; bits * h],
            skew_contrib: vec![0.0; bits * h],
            g_contrib: vec![0.0; bits * h],
        };
        for b in 0..bits {
            let c = b + 1;
            let inv_c = cd.inverse_class(c);
            tables.inv[b] = inv_c - 1;
            let order = cd.class_element_order(group, c) as u64;
            tables.gamma3[b] = order % 3 == 0;
            for k in atoms::divisor_set(order, 1).expect("1 divides everything") {
                tables.power_mask[b] |= 1 << (cd.power_class(group, c, k as i64) - 1);
            }
            if tables.gamma3[b] {
                for k in atoms::divisor_set_mod3(order, 1, 1).expect("order divisible by 3") {
                    tables.power3_mask[b] |= 1 << (cd.power_class(group, c, k as i64) - 1);
                }
            }
            let size = cd.size(c) as f64;
            for j in 0..h {
                let d = ct.degree(j) as f64;
                tables.sym_contrib[b * h + j] = size * ct.chi(j, c).re / d;
                tables.skew_contrib[b * h + j] =
                    size * (w6 * ct.chi(j, c) + w6.conj() * ct.chi(j, inv_c)).re / d;
                tables.g_contrib[b * h + j] =
                    size * (omega * ct.chi(j, c) + omega.conj() * ct.chi(j, inv_c)).re / d;
            }
        }
        tables
    }

    fn inverse_mask(&self, mask: u64) -> u64 {
        let mut out = 0u64;
        let mut rest = mask;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= 1 << self.inv[b];
        }
        out
    }

    /// Structural HS-integrality at class level.
    fn structural(&self, sym: u64, skew: u64) -> bool {
        let mut rest = sym;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.power_mask[b] & !sym != 0 {
                return false;
            }
        }
        let mut rest = skew;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if !self.gamma3[b] || self.power3_mask[b] & !skew != 0 {
                return false;
            }
        }
        true
    }

    /// All characters integral for `Σ_{b∈sym} table_a + Σ_{b∈skew} table_b`.
    fn all_integral(
        &self,
        sym: u64,
        skew: u64,
        table_a: &[f64],
        table_b: &[f64],
        tol: f64,
    ) -> bool {
        for j in 0..self.h {
            let mut value = 0.0;
            let mut rest = sym;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                value += table_a[b * self.h + j];
            }
            let mut rest = skew;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                value += table_b[b * self.h + j];
            }
            if int_distance(value) > tol {
                return false;
            }
        }
        true
    }
}

/// Exhaustively check, for every nonempty normal set of `ctx`, that the
/// structural and spectral HS verdicts agree, that HS-integrality matches
/// the symmetric/skew decomposition, and that Eisenstein integrality
/// implies HS-integrality.
pub fn exhaustive_group_scan(ctx: &Context, max_sets: u64, tol: f64) -> Result<ExhaustiveReport> {
    let bits = enumeration_bits(&ctx.classes, max_sets)?;
    let tables = ScanTables::new(ctx);
    let total = 1u64 << bits;

    let report = (1..total)
        .into_par_iter()
        .fold(ExhaustiveReport::default, |mut acc, mask| {
            let inv = tables.inverse_mask(mask);
            let sym = mask & inv;
            let skew = mask & !inv;

            let structural = tables.structural(sym, skew);
            let gamma_ok =
                tables.all_integral(sym, skew, &tables.sym_contrib, &tables.skew_contrib, tol);
            let lambda_ok =
                tables.all_integral(sym, 0, &tables.sym_contrib, &tables.skew_contrib, tol);
            let mu_ok =
                tables.all_integral(0, skew, &tables.sym_contrib, &tables.skew_contrib, tol);
            let eis_ok = lambda_ok
                && tables.all_integral(0, skew, &tables.sym_contrib, &tables.g_contrib, tol);

            acc.sets_checked += 1;
            acc.hs_integral_sets += gamma_ok as u64;
            acc.eisenstein_sets += eis_ok as u64;
            let mut bad = false;
            if structural != gamma_ok {
                acc.structural_spectral_mismatches += 1;
                bad = true;
            }
            if gamma_ok != (lambda_ok && mu_ok) {
                acc.decomposition_mismatches += 1;
                bad = true;
            }
            if eis_ok && !gamma_ok {
                acc.eisenstein_implication_violations += 1;
                bad = true;
            }
            if bad {
                acc.first_mismatch_mask =
                    Some(acc.first_mismatch_mask.map_or(mask, |m| m.min(mask)));
            }
            acc
        })
        .reduce(ExhaustiveReport::default, |mut a, b| {
            a.sets_checked += b.sets_checked;
            a.hs_integral_sets += b.hs_integral_sets;
            a.eisenstein_sets += b.eisenstein_sets;
            a.structural_spectral_mismatches += b.structural_spectral_mismatches;
            a.decomposition_mismatches += b.decomposition_mismatches;
            a.eisenstein_implication_violations += b.eisenstein_implication_violations;
            a.first_mismatch_mask = match (a.first_mismatch_mask, b.first_mismatch_mask) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, y) => x.or(y),
            };
            a
        });

    Ok(ExhaustiveReport {
        group: ctx.name.clone(),
        ..report
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::TOL_INT;

    fn ctx(spec: &str) -> Context {
        Context::from_spec(&spec.parse().unwrap()).unwrap()
    }

    #[test]
    fn a4_set_counts() {
        let ctx = ctx("alternating:4");
        let all: Vec<u64> = normal_set_masks(&ctx.classes, EnumMode::All, 1 << 20)
            .unwrap()
            .collect();
        assert_eq!(all.len(), 7);
        let oriented: Vec<u64> = normal_set_masks(&ctx.classes, EnumMode::OrientedOnly, 1 << 20)
            .unwrap()
            .collect();
        // each 3-cycle class alone
        assert_eq!(oriented.len(), 2);
        let mixed: Vec<u64> = normal_set_masks(&ctx.classes, EnumMode::MixedOnly, 1 << 20)
            .unwrap()
            .collect();
        assert_eq!(mixed.len(), 2);
    }

    #[test]
    fn ambivalent_groups_have_no_oriented_sets() {
        let ctx = ctx("symmetric:3");
        let oriented: Vec<u64> = normal_set_masks(&ctx.classes, EnumMode::OrientedOnly, 1 << 20)
            .unwrap()
            .collect();
        assert!(oriented.is_empty());
        let symmetric: Vec<u64> =
            normal_set_masks(&ctx.classes, EnumMode::SymmetricOnly, 1 << 20)
                .unwrap()
                .collect();
        assert_eq!(symmetric.len(), 3);
    }

    #[test]
    fn enumeration_bound_enforced() {
        let ctx = ctx("cyclic:24");
        assert!(matches!(
            normal_set_masks(&ctx.classes, EnumMode::All, 1 << 20).map(|i| i.count()),
            Err(Error::EnumerationTooLarge { .. })
        ));
        assert!(normal_set_masks(&ctx.classes, EnumMode::All, 1 << 23).is_ok());
    }

    #[test]
    fn classification_rows_a4() {
        let rows = classify(
            &["alternating:4".parse().unwrap()],
            EnumMode::All,
            1 << 20,
            TOL_INT,
        )
        .unwrap();
        assert_eq!(rows.len(), 7);
        // the mixed example: involutions plus one oriented 3-cycle class
        let mixed = rows
            .iter()
            .find(|r| r.set.contains("(1,2)(3,4)") && r.set.contains("→") && r.hs_integral)
            .expect("mixed example row present");
        assert!(mixed.eisenstein_integral);
        assert_eq!(mixed.spectrum, "{-5^1,-1^9,7^2}");
        // full 3-cycle union is symmetric: no arrows
        let sym_row = rows
            .iter()
            .find(|r| r.set.matches("Cl[").count() == 2 && !r.set.contains("→"))
            .expect("symmetric two-class row");
        assert!(!sym_row.set.contains("(1,2)(3,4)"));
    }

    #[test]
    fn counting_invariant() {
        for spec in ["cyclic:6", "dihedral:4", "dicyclic:2"] {
            let ctx = ctx(spec);
            let h = ctx.classes.num_classes();
            let rows =
                classify(&[ctx.name.parse().unwrap()], EnumMode::All, 1 << 20, TOL_INT).unwrap();
            assert_eq!(rows.len(), (1 << (h - 1)) - 1, "{spec}");
        }
    }

    #[test]
    fn classification_deterministic() {
        let specs: Vec<GroupSpec> =
            vec!["cyclic:12".parse().unwrap(), "dicyclic:3".parse().unwrap()];
        let a = classify(&specs, EnumMode::All, 1 << 20, TOL_INT).unwrap();
        let b = classify(&specs, EnumMode::All, 1 << 20, TOL_INT).unwrap();
        let render =
            |rows: &[ClassificationRow]| serde_json::to_string(rows).expect("serializable");
        assert_eq!(render(&a), render(&b));
    }

    #[test]
    fn cyclic_12_oriented_example_row() {
        let rows = classify(
            &["cyclic:12".parse().unwrap()],
            EnumMode::OrientedOnly,
            1 << 20,
            TOL_INT,
        )
        .unwrap();
        // S̄ = {5, 11} = classes {5},{11} is HS-integral
        let target = rows
            .iter()
            .find(|r| r.set == "Cl[11]→+Cl[5]→")
            .expect("row for {5,11}");
        assert!(target.hs_integral);
        // cyclic:4 has Γ(3) = ∅: nothing oriented is HS-integral
        let rows4 = classify(
            &["cyclic:4".parse().unwrap()],
            EnumMode::OrientedOnly,
            1 << 20,
            TOL_INT,
        )
        .unwrap();
        assert!(rows4.iter().all(|r| !r.hs_integral));
    }

    #[test]
    fn scanner_matches_slow_path() {
        for spec in [
            "alternating:4",
            "symmetric:3",
            "cyclic:12",
            "dihedral:4",
            "dicyclic:3",
        ] {
            let ctx = ctx(spec);
            let tables = ScanTables::new(&ctx);
            let bits = ctx.classes.num_classes() - 1;
            for mask in 1u64..(1 << bits) {
                let inv = tables.inverse_mask(mask);
                let (sym, skew) = (mask & inv, mask & !inv);
                let s = ConnectionSet::from_class_mask(&ctx.group, &ctx.classes, mask).unwrap();
                let report = integrality_report(&ctx, &s, TOL_INT).unwrap();
                assert_eq!(
                    tables.structural(sym, skew),
                    report.structural,
                    "{spec} mask {mask} structural"
                );
                assert_eq!(
                    tables.all_integral(
                        sym,
                        skew,
                        &tables.sym_contrib,
                        &tables.skew_contrib,
                        TOL_INT
                    ),
                    report.spectral,
                    "{spec} mask {mask} spectral"
                );
                let eis = is_eisenstein_integral(&ctx, &s, TOL_INT).unwrap();
                let fast_eis = tables.all_integral(
                    sym,
                    0,
                    &tables.sym_contrib,
                    &tables.skew_contrib,
                    TOL_INT,
                ) && tables.all_integral(
                    0,
                    skew,
                    &tables.sym_contrib,
                    &tables.g_contrib,
                    TOL_INT,
                );
                assert_eq!(fast_eis, eis.verdict, "{spec} mask {mask} eisenstein");
            }
        }
    }

    #[test]
    fn exhaustive_scan_small_groups() {
        for spec in ["alternating:4", "cyclic:12", "dicyclic:3", "symmetric:4"] {
            let report = exhaustive_group_scan(&ctx(spec), 1 << 20, TOL_INT).unwrap();
            assert_eq!(report.structural_spectral_mismatches, 0, "{spec}");
            assert_eq!(report.decomposition_mismatches, 0, "{spec}");
            assert_eq!(report.eisenstein_implication_violations, 0, "{spec}");
            assert!(report.sets_checked > 0);
        }
    }
}
