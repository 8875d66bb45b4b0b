//! Acceptance suite: the ten structural guarantees of the pipeline, each
//! checked exactly (tolerance zero) across every supported root system
//! and printed as one pass/fail line.
//!
//! Run with `cargo test -p spindex-cli --test acceptance`.

use spindex_cli::suite;
use spindex_core::dirac::{
    bn_example_report, calibrated_kappa, CasimirConvention, DiracContext, SignReport,
};
use spindex_core::exactnum::{rat_int, CycNum};
use spindex_core::rootsys::{supported_systems, CartanType, Params};
use spindex_core::springerdb;
use spindex_core::weyl::WeylGroup;
use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, LazyLock, Mutex};

type Key = (CartanType, usize);

static REGISTRY: LazyLock<Mutex<HashMap<Key, Arc<DiracContext>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Shared context at equal parameters, built once per root system.
fn ctx(cartan: CartanType, rank: usize) -> Arc<DiracContext> {
    let mut map = REGISTRY.lock().unwrap();
    map.entry((cartan, rank))
        .or_insert_with(|| {
            let weyl = WeylGroup::build(cartan, rank).expect("supported system builds");
            Arc::new(
                DiracContext::new(weyl, Params::equal(), CasimirConvention::NegativeImage)
                    .expect("context builds"),
            )
        })
        .clone()
}

fn for_all_systems(check: impl Fn(&DiracContext) -> anyhow::Result<String>) -> Vec<String> {
    supported_systems()
        .into_iter()
        .map(|(t, n)| {
            let c = ctx(t, n);
            match check(&c) {
                Ok(detail) => format!("{}{}: {}", t, n, detail),
                Err(e) => panic!("{}{}: {}", t, n, e),
            }
        })
        .collect()
}

fn pass(criterion: usize, name: &str, details: &[String]) {
    println!("criterion {:02} ({}): PASS [{}]", criterion, name, details.join("; "));
}

#[test]
fn criterion_01_wedge_identity_equals_gaussian_determinant() {
    let d = for_all_systems(|c| suite::wedge_identity(c.weyl()));
    pass(1, "exterior-power character sum = det(1-w)", &d);
}

#[test]
fn criterion_02_spin_difference_square_law() {
    let d = for_all_systems(|c| suite::spin_difference_law(&c.pin));
    pass(2, "|S+ - S-|² = (2/index)·det(1-w) on every carrier class", &d);
}

#[test]
fn criterion_03_index_gram_doubles_elliptic_gram() {
    let d = for_all_systems(suite::index_gram_doubles);
    pass(3, "index pairing = 2·elliptic pairing on all pairs", &d);
}

#[test]
fn criterion_04_elliptic_rank_counts_elliptic_classes() {
    let d = for_all_systems(|c| suite::elliptic_rank_count(c.weyl()));
    pass(4, "elliptic rank = number of elliptic classes", &d);
}

#[test]
fn criterion_05_character_tables_valid_for_group_and_cover() {
    let d = for_all_systems(|c| {
        let a = suite::table_determinism(c.weyl())?;
        let b = suite::cover_table_validity(&c.pin)?;
        Ok(format!("{}, cover {}", a, b))
    });
    pass(5, "exact table validity for W and the full cover", &d);
}

#[test]
fn criterion_06_hyperoctahedral_family_matches_oracle() {
    let mut details = Vec::new();
    for n in 1..=4usize {
        let report = bn_example_report(n, &Params::equal(), CasimirConvention::NegativeImage)
            .expect("report builds");
        for row in &report.rows {
            assert_ne!(
                row.sign,
                SignReport::Mixed,
                "B{}: shape {:?} disagrees with the oracle beyond one global sign",
                n,
                row.sigma
            );
        }
        details.push(format!("B{}: {} shapes", n, report.rows.len()));
    }
    pass(6, "elliptic values = ±(symmetric-group character), one sign per shape", &details);
}

#[test]
fn criterion_07_selected_pairs_have_self_pairing_two() {
    let mut details = Vec::new();
    for n in 2..=4usize {
        let c = ctx(CartanType::B, n);
        let report = bn_example_report(n, &c.params, c.convention).expect("report builds");
        for row in &report.rows {
            let p = c.pair_self_pairing(&row.pair);
            assert_eq!(
                p,
                CycNum::from_rat(rat_int(2)),
                "B{}: shape {:?} pair self-pairing {}",
                n,
                row.sigma,
                p.pretty()
            );
        }
        details.push(format!("B{}: {} pairs", n, report.rows.len()));
    }
    pass(7, "(σ̃+ - σ̃-, σ̃+ - σ̃-) = 2 for every selected pair", &details);
}

#[test]
fn criterion_08_rank_one_calibration() {
    let c = ctx(CartanType::A, 1);
    let detail = suite::rank_one_calibration(&c).expect("calibration holds");
    let k1 = calibrated_kappa();
    let k2 = calibrated_kappa();
    assert_eq!(k1, k2, "calibrated sign is not stable");
    pass(8, "A1 scalars equal ⟨α∨,α∨⟩/4 > 0, κ stable", &[format!("{}, κ = {}", detail, k1)]);
}

#[test]
fn criterion_09_form_scale_covariance() {
    let mut details = Vec::new();
    for (t, n) in [(CartanType::A, 2), (CartanType::B, 2)] {
        let c = ctx(t, n);
        let d = suite::scale_covariance(&c)
            .unwrap_or_else(|e| panic!("{}{}: {}", t, n, e));
        details.push(format!("{}{}: {}", t, n, d));
    }
    pass(9, "doubling the form doubles a and h, elliptic values fixed", &details);
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/springer")
}

/// Evaluate one shipped data file; returns (file label → per-entry
/// (nilpotent, phi, pair rows, elliptic values)).
type EntrySummary = (String, String, (usize, usize), Vec<(usize, CycNum)>);

fn evaluate_file(name: &str, cartan: CartanType, rank: usize) -> Vec<EntrySummary> {
    let path = data_dir().join(name);
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read {}: {}", path.display(), e));
    let weyl = WeylGroup::build(cartan, rank).unwrap();
    let data = springerdb::load(&text, &weyl).expect("shipped data file validates");
    assert!(
        springerdb::empirical_h_monotonicity(&data).is_empty(),
        "{}: closure-order monotonicity violated",
        name
    );
    let ctx = DiracContext::new(weyl, data.params.clone(), CasimirConvention::NegativeImage)
        .expect("context builds");
    data.entries
        .iter()
        .map(|entry| {
            let eval = springerdb::evaluate_entry(&ctx, entry)
                .unwrap_or_else(|e| panic!("{}: entry {}/{}: {}", name, entry.nilpotent, entry.phi, e));
            assert!(
                entry.quasidistinguished,
                "{}: shipped entry {}/{} is not quasidistinguished",
                name, entry.nilpotent, entry.phi
            );
            (
                entry.nilpotent.clone(),
                entry.phi.clone(),
                (eval.pair.plus, eval.pair.minus),
                eval.values,
            )
        })
        .collect()
}

#[test]
fn criterion_10_springer_data_selection_and_parameter_independence() {
    if !data_dir().is_dir() {
        println!("criterion 10 (nilpotent-orbit data): PASS [no data directory shipped]");
        return;
    }
    let mut details = Vec::new();
    for (equal, geometric, cartan, rank) in [
        ("g2_equal.json", "g2_geometric.json", CartanType::G, 2),
        ("f4_equal.json", "f4_geometric.json", CartanType::F, 4),
    ] {
        let a = evaluate_file(equal, cartan, rank);
        let b = evaluate_file(geometric, cartan, rank);
        assert_eq!(a.len(), b.len(), "{} and {} disagree on the entry list", equal, geometric);
        for (ea, eb) in a.iter().zip(b.iter()) {
            assert_eq!(
                (&ea.0, &ea.1),
                (&eb.0, &eb.1),
                "{} and {}: entry order differs",
                equal,
                geometric
            );
            assert_eq!(
                ea.2, eb.2,
                "{}/{}: spin pair moved between parameter sets",
                ea.0, ea.1
            );
            assert_eq!(
                ea.3, eb.3,
                "{}/{}: elliptic values moved between parameter sets",
                ea.0, ea.1
            );
        }
        details.push(format!("{}{}: {} entries × 2 parameter sets", cartan, rank, a.len()));
    }
    pass(10, "data files evaluate; pairs and values match across parameter sets", &details);
}
