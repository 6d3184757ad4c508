//! Acceptance suite: every release criterion as one test, each printing a
//! PASS line (`cargo test --test acceptance -- --nocapture` shows them).
//!
//! The exhaustive catalog — cyclic 3..=24, dihedral 3..=8, symmetric 3..=4,
//! alternating 4, dicyclic 2 (quaternion) and 3 — is scanned once and
//! shared across the criteria that consume it.

use std::sync::OnceLock;

use num_complex::Complex64;

use cayley_core::atoms::ConnectionSet;
use cayley_core::classes::verify_orthogonality;
use cayley_core::enumerate::{exhaustive_group_scan, normal_set_masks, EnumMode, ExhaustiveReport};
use cayley_core::group::{alternating_ambivalent, build_group, GroupSpec};
use cayley_core::integrality::{
    all_character_sums_rational, c_values, check_rationality_conditions, conjecture_scan,
    f_g_values, sample_group_algebra_element, scan_group_conjecture, t_values,
};
use cayley_core::rng::SplitMix64;
use cayley_core::spectra::{
    adjacency_spectrum_by_characters, build_a_matrix, build_h_matrix, hs_spectrum_by_characters,
    hs_spectrum_direct, moment_check, omega3,
};
use cayley_core::{int_distance, Context, TOL_INT};

const SCAN_BOUND: u64 = 1 << 24;

fn catalog() -> Vec<GroupSpec> {
    let mut specs: Vec<GroupSpec> = (3..=24).map(GroupSpec::Cyclic).collect();
    specs.extend((3..=8).map(GroupSpec::Dihedral));
    specs.extend((3..=4).map(GroupSpec::Symmetric));
    specs.push(GroupSpec::Alternating(4));
    specs.push(GroupSpec::Dicyclic(2)); // quaternion group
    specs.push(GroupSpec::Dicyclic(3));
    specs
}

fn catalog_scan() -> &'static [ExhaustiveReport] {
    static SCAN: OnceLock<Vec<ExhaustiveReport>> = OnceLock::new();
    SCAN.get_or_init(|| {
        catalog()
            .iter()
            .map(|spec| {
                let ctx = Context::from_spec(spec).expect("catalog group builds");
                exhaustive_group_scan(&ctx, SCAN_BOUND, TOL_INT).expect("scan within bound")
            })
            .collect()
    })
}

fn a4() -> Context {
    Context::from_spec(&GroupSpec::Alternating(4)).unwrap()
}

/// The two named connection sets of the running example: the oriented
/// 3-cycle class and the mixed 7-element set.
fn a4_sets(ctx: &Context) -> (ConnectionSet, ConnectionSet) {
    let c3 = ctx
        .classes
        .class_of(ctx.group.element_by_label("(1,2,3)").unwrap());
    let c2 = (0..4).find(|&c| ctx.classes.size(c) == 3).unwrap();
    let oriented = ConnectionSet::from_class_indices(&ctx.group, &ctx.classes, &[c3]).unwrap();
    let mixed = ConnectionSet::from_class_indices(&ctx.group, &ctx.classes, &[c2, c3]).unwrap();
    (oriented, mixed)
}

fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

#[test]
fn criterion_01_a4_character_table() {
    let ctx = a4();
    let ct = &ctx.chars;
    let cd = &ctx.classes;
    assert_eq!(
        (0..4).map(|j| ct.degree(j)).collect::<Vec<_>>(),
        vec![1, 1, 1, 3]
    );
    let ident = 0usize;
    let c2 = (0..4).find(|&c| cd.size(c) == 3).unwrap();
    let c3a = cd.class_of(ctx.group.element_by_label("(1,2,3)").unwrap());
    let c3b = cd.inverse_class(c3a);
    let w = omega3();
    let golden: [[Complex64; 4]; 4] = [
        [re(1.0), re(1.0), re(1.0), re(1.0)],
        [re(1.0), re(1.0), w, w * w],
        [re(1.0), re(1.0), w * w, w],
        [re(3.0), re(-1.0), re(0.0), re(0.0)],
    ];
    let cols = [ident, c2, c3a, c3b];
    let mut used = [false; 4];
    for expect in &golden {
        let j = (0..4)
            .find(|&j| {
                !used[j]
                    && cols
                        .iter()
                        .zip(expect)
                        .all(|(&c, &e)| (ct.chi(j, c) - e).norm() < 1e-8)
            })
            .expect("every golden row appears in the computed table");
        used[j] = true;
    }
    println!("ACCEPTANCE 01 A4 character table matches the golden table (1e-8): PASS");
}

#[test]
fn criterion_02_a4_oriented_spectrum() {
    let ctx = a4();
    let (oriented, _) = a4_sets(&ctx);
    let by_chars =
        hs_spectrum_by_characters(&ctx.group, &ctx.classes, &ctx.chars, &oriented).unwrap();
    assert!(by_chars.matches_multiset(&[(re(-8.0), 1), (re(0.0), 9), (re(4.0), 2)], TOL_INT));
    // exact after snapping
    for &(v, _) in &by_chars.entries {
        assert!(int_distance(v.re) < TOL_INT && v.im.abs() < TOL_INT);
    }
    let direct = hs_spectrum_direct(&build_h_matrix(&ctx.group, &oriented).unwrap()).unwrap();
    assert!(by_chars.agrees_with(&direct, 1e-6));
    println!("ACCEPTANCE 02 A4 oriented spectrum {{-8^1, 0^9, 4^2}} by characters and solver: PASS");
}

#[test]
fn criterion_03_a4_mixed_example() {
    let ctx = a4();
    let (_, mixed) = a4_sets(&ctx);
    let hs = hs_spectrum_by_characters(&ctx.group, &ctx.classes, &ctx.chars, &mixed).unwrap();
    assert!(hs.matches_multiset(&[(re(-5.0), 1), (re(-1.0), 9), (re(7.0), 2)], TOL_INT));

    let w = omega3();
    let adj =
        adjacency_spectrum_by_characters(&ctx.group, &ctx.classes, &ctx.chars, &mixed).unwrap();
    assert!(adj.matches_multiset(
        &[
            (re(7.0), 1),
            (re(3.0) + 4.0 * w, 1),
            (re(-1.0) - 4.0 * w, 1),
            (re(-1.0), 9),
        ],
        TOL_INT
    ));

    // pin rows: trivial character, the conjugate pair located by its value
    // on Cl((1,2,3)), and the degree-3 character
    let cd = &ctx.classes;
    let ct = &ctx.chars;
    let c3 = cd.class_of(ctx.group.element_by_label("(1,2,3)").unwrap());
    let j_triv = 0usize;
    let j_omega = (0..4).find(|&j| (ct.chi(j, c3) - w).norm() < 1e-8).unwrap();
    let j_omega2 = ct.conj_pair(j_omega);
    let j_deg3 = 3usize;
    assert_eq!(ct.degree(j_deg3), 3);

    let fg = f_g_values(&ctx, &mixed).unwrap();
    let snap = |v: f64| {
        assert!(int_distance(v) < TOL_INT);
        v.round() as i64
    };
    assert_eq!(snap(fg.f[j_triv]), 3);
    assert_eq!(snap(fg.f[j_omega]), 3);
    assert_eq!(snap(fg.f[j_omega2]), 3);
    assert_eq!(snap(fg.f[j_deg3]), -1);
    assert_eq!(snap(fg.g[j_triv]), 4);
    assert_eq!(snap(fg.g[j_omega]), 0);
    assert_eq!(snap(fg.g[j_omega2]), -4);
    assert_eq!(snap(fg.g[j_deg3]), 0);

    let y = ctx.group.element_by_label("(1,2,3)").unwrap();
    let c = c_values(&ctx, y).unwrap();
    assert_eq!(snap(c[j_triv]), 8);
    assert_eq!(snap(c[j_omega]), -4);
    assert_eq!(snap(c[j_omega2]), -4);
    assert_eq!(snap(c[j_deg3]), 0);
    let t = t_values(&ctx, y).unwrap().unwrap();
    assert_eq!(snap(t[j_triv]), 0);
    assert_eq!(snap(t[j_omega]), -12);
    assert_eq!(snap(t[j_omega2]), 12);
    assert_eq!(snap(t[j_deg3]), 0);
    println!("ACCEPTANCE 03 A4 mixed example: HS and Eisenstein spectra, f, g, C_y, T_y: PASS");
}

#[test]
fn criterion_04_structural_equals_spectral_exhaustively() {
    let mut total = 0u64;
    for report in catalog_scan() {
        assert_eq!(
            report.structural_spectral_mismatches, 0,
            "{}: first mismatch mask {:?}",
            report.group, report.first_mismatch_mask
        );
        total += report.sets_checked;
    }
    println!(
        "ACCEPTANCE 04 structural == spectral HS verdict on {total} normal sets across the catalog: PASS"
    );
}

#[test]
fn criterion_05_decomposition_equivalence_exhaustively() {
    let mut total = 0u64;
    for report in catalog_scan() {
        assert_eq!(
            report.decomposition_mismatches, 0,
            "{}: first mismatch mask {:?}",
            report.group, report.first_mismatch_mask
        );
        total += report.sets_checked;
    }
    println!(
        "ACCEPTANCE 05 HS(S) == HS(S∖S̄) ∧ HS(S̄) on {total} normal sets across the catalog: PASS"
    );
}

#[test]
fn criterion_06_eisenstein_implies_hs_exhaustively() {
    let mut eisenstein = 0u64;
    for report in catalog_scan() {
        assert_eq!(
            report.eisenstein_implication_violations, 0,
            "{}: first mismatch mask {:?}",
            report.group, report.first_mismatch_mask
        );
        eisenstein += report.eisenstein_sets;
    }
    println!(
        "ACCEPTANCE 06 every Eisenstein-integral set ({eisenstein} found) is HS-integral: PASS"
    );
}

#[test]
fn criterion_07_conjecture_scan_and_planted_violation() {
    let mut specs = catalog();
    specs.extend((25..=100).map(GroupSpec::Cyclic));
    let result = conjecture_scan(&specs, TOL_INT).unwrap();
    assert!(
        result.verdict,
        "counterexamples: {:?}",
        result.counterexamples
    );
    assert!(result.pairs_scanned > 0);
    assert_eq!(result.exit_code(), 0);

    // the scanner must flag a planted violation: perturb one character
    // value of A4 and demand a nonzero exit
    let ctx = a4();
    let c3 = ctx
        .classes
        .class_of(ctx.group.element_by_label("(1,2,3)").unwrap());
    let j = (0..4)
        .find(|&j| (ctx.chars.chi(j, c3) - omega3()).norm() < 1e-8)
        .unwrap();
    let doctored = Context {
        chars: ctx.chars.perturbed(j, c3, Complex64::new(0.05, 0.0)),
        ..ctx
    };
    let (_, _, findings) = scan_group_conjecture(&doctored, "alternating:4", TOL_INT).unwrap();
    assert!(!findings.is_empty(), "planted violation was not flagged");
    let mut flagged = conjecture_scan(&[], TOL_INT).unwrap();
    flagged.counterexamples = findings;
    flagged.verdict = false;
    assert_eq!(flagged.exit_code(), 2);
    println!(
        "ACCEPTANCE 07 T_y(j)/3 integral over catalog + cyclic ≤ 100 ({} pairs); planted violation flagged: PASS",
        result.pairs_scanned
    );
}

#[test]
fn criterion_08_rationality_conditions_match_numeric_oracle() {
    let mut checked = 0u64;
    for spec in catalog() {
        let ctx = Context::from_spec(&spec).unwrap();
        if ctx.order() > 24 {
            continue;
        }
        let mut rng = SplitMix64::new(0xACCE97 ^ (ctx.order() as u64) << 8);
        for trial in 0..200 {
            let x = sample_group_algebra_element(&ctx, &mut rng, trial % 2 == 0);
            let exact = check_rationality_conditions(&ctx, &x).all();
            let numeric = all_character_sums_rational(&ctx, &x, TOL_INT);
            assert_eq!(exact, numeric, "{} trial {trial}", ctx.name);
            checked += 1;
        }
    }
    println!(
        "ACCEPTANCE 08 rationality conditions equal the numeric oracle on {checked} random elements: PASS"
    );
}

#[test]
fn criterion_09_orthogonality_and_moments() {
    // every computed character table passes both orthogonality relations
    for spec in catalog() {
        let ctx = Context::from_spec(&spec).unwrap();
        verify_orthogonality(&ctx.classes, &ctx.chars).unwrap();
    }

    // moment checks on both matrices: exhaustive for orders ≤ 12, sampled
    // for the larger catalog groups
    let mut checked = 0u64;
    for spec in catalog() {
        let ctx = Context::from_spec(&spec).unwrap();
        let h = ctx.classes.num_classes();
        let masks: Vec<u64> = if ctx.order() <= 12 {
            normal_set_masks(&ctx.classes, EnumMode::All, SCAN_BOUND)
                .unwrap()
                .collect()
        } else {
            let mut rng = SplitMix64::new(0x40404 ^ ctx.order() as u64);
            (0..50).map(|_| 1 + rng.below((1 << (h - 1)) - 1)).collect()
        };
        for mask in masks {
            let s = ConnectionSet::from_class_mask(&ctx.group, &ctx.classes, mask).unwrap();
            let hs = hs_spectrum_by_characters(&ctx.group, &ctx.classes, &ctx.chars, &s).unwrap();
            let hm = build_h_matrix(&ctx.group, &s).unwrap();
            let check_h = moment_check(&hm.0, &hs, h);
            assert!(
                check_h.passed,
                "{} mask {mask} H-moments failed at {:?}",
                ctx.name, check_h.first_failure
            );
            let adj =
                adjacency_spectrum_by_characters(&ctx.group, &ctx.classes, &ctx.chars, &s).unwrap();
            let am = build_a_matrix(&ctx.group, &s).unwrap();
            let check_a = moment_check(&am.0, &adj, h);
            assert!(
                check_a.passed,
                "{} mask {mask} A-moments failed at {:?}",
                ctx.name, check_a.first_failure
            );
            checked += 1;
        }
    }
    println!(
        "ACCEPTANCE 09 orthogonality at 1e-8 on all tables; A/H moment checks on {checked} spectra: PASS"
    );
}

#[test]
fn criterion_10_ambivalence_tables() {
    let expected_alternating = [1, 2, 5, 6, 10];
    for n in 1..=10 {
        assert_eq!(
            alternating_ambivalent(n),
            expected_alternating.contains(&n),
            "A_{n}"
        );
    }
    // cross-check the cycle-type route against materialized groups
    for n in 1..=7 {
        let g = cayley_core::group::build_group_bounded(&GroupSpec::Alternating(n), 3000).unwrap();
        assert_eq!(g.is_ambivalent(), alternating_ambivalent(n), "A_{n}");
    }
    for n in 1..=6 {
        let g = build_group(&GroupSpec::Symmetric(n)).unwrap();
        assert!(g.is_ambivalent(), "S_{n}");
    }
    println!("ACCEPTANCE 10 ambivalence: A_n for n ≤ 10 matches {{1,2,5,6,10}}, S_n true for n ≤ 6: PASS");
}
