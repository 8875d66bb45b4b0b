//! The verification suite: exact structural identities of the pipeline,
//! runnable for any supported configuration.
//!
//! Each check is a pure function of prebuilt objects, so the acceptance
//! tests can drive the same code against their own instances.  Checks
//! return a short summary on success and a descriptive error on failure;
//! nothing is approximate and nothing is tolerance-based.

use anyhow::{ensure, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spindex_core::dirac::{bn_example_report, DiracContext, SignReport};
use spindex_core::exactnum::{rat_int, CycNum, Rat};
use spindex_core::fingroup::dixon::character_table;
use spindex_core::fingroup::ClassFunction;
use spindex_core::pin::PinCover;
use spindex_core::rootsys::{CartanType, Params};
use spindex_core::springerdb::{evaluate_entry, regular_entry};
use spindex_core::weyl::WeylGroup;

/// Rebuilding the character table reproduces it column for column.
pub fn table_determinism(weyl: &WeylGroup) -> Result<String> {
    let again = character_table(weyl.group())?;
    ensure!(
        again.degrees == weyl.table.degrees && again.rows == weyl.table.rows,
        "rebuilt character table differs from the stored one"
    );
    Ok(format!("{} rows reproduced", again.num_irreps()))
}

/// The alternating sum over exterior powers of the reflection
/// representation, read off the characteristic polynomial, equals the
/// Gaussian determinant det(1−w) on every class; it vanishes exactly off
/// the elliptic classes.
pub fn wedge_identity(weyl: &WeylGroup) -> Result<String> {
    let g = weyl.group();
    for c in 0..g.num_classes() {
        let m = weyl
            .root_system
            .restrict_to_span(weyl.matrix(g.class_rep(c)));
        // det(x·1 − m) evaluated at x = 1 is Σ_k (−1)^k χ_{Λ^k}(w).
        let wedge_sum: Rat = m.charpoly().into_iter().sum();
        ensure!(
            &wedge_sum == weyl.det_one_minus(c),
            "class {}: exterior-power sum {} but det(1-w) = {}",
            c,
            wedge_sum,
            weyl.det_one_minus(c)
        );
        ensure!(
            weyl.is_elliptic_class(c) == (wedge_sum != rat_int(0)),
            "class {}: ellipticity flag disagrees with det(1-w)",
            c
        );
    }
    Ok(format!("{} classes checked", g.num_classes()))
}

/// The rank of the elliptic pairing on virtual characters equals the
/// number of elliptic conjugacy classes.
pub fn elliptic_rank_count(weyl: &WeylGroup) -> Result<String> {
    let rank = weyl.elliptic_rank();
    let count = weyl.elliptic_classes().len();
    ensure!(rank == count, "elliptic rank {} but {} elliptic classes", rank, count);
    Ok(format!("rank {}", rank))
}

/// The full double cover has a valid exact character table (orthogonality,
/// degree relation, conjugation closure are rechecked internally); when
/// the carrier is the cover the rebuild reproduces the stored table.
pub fn cover_table_validity(pin: &PinCover) -> Result<String> {
    let table = character_table(&pin.cover)?;
    let z = pin.cover.class_of(pin.cover_index(0, true));
    let genuine = (0..table.num_irreps())
        .filter(|&i| {
            let row = table.row(i);
            row.values[z] == row.values[0].scale(&rat_int(-1))
        })
        .count();
    if pin.carrier_is_cover {
        ensure!(
            table.rows == pin.carrier_table.rows,
            "cover table rebuild differs from the carrier table"
        );
    }
    Ok(format!(
        "order {}, {} irreducibles, {} genuine",
        pin.cover.order(),
        table.num_irreps(),
        genuine
    ))
}

/// |χ₊(w̃) − χ₋(w̃)|² = (2/[W : p(carrier)])·det(1 − p(w̃)) on every
/// carrier class; in particular the difference vanishes off the elliptic
/// lifts.
pub fn spin_difference_law(pin: &PinCover) -> Result<String> {
    let carrier = &pin.carrier;
    let index = 2 * pin.weyl.group().order() / carrier.order();
    for c in 0..carrier.num_classes() {
        let cover_idx = pin.carrier_fusion[carrier.class_rep(c) as usize];
        let wclass = pin.weyl.group().class_of(pin.project(cover_idx));
        let diff = &pin.chi_plus.values[c] - &pin.chi_minus.values[c];
        let expected =
            pin.weyl.det_one_minus(wclass) * Rat::new(2.into(), (index as i64).into());
        ensure!(
            diff.norm_squared() == CycNum::from_rat(expected),
            "carrier class {}: |χ₊−χ₋|² differs from (2/{})·det(1−w)",
            c,
            index
        );
    }
    Ok(format!("{} carrier classes checked", carrier.num_classes()))
}

/// The Gram matrix of the index map equals twice the elliptic-pairing Gram
/// matrix on all pairs of irreducible characters.
pub fn index_gram_doubles(ctx: &DiracContext) -> Result<String> {
    let weyl = ctx.weyl();
    let elliptic = weyl.elliptic_gram();
    let index = ctx.index_pairing_matrix()?;
    let k = weyl.table.num_irreps();
    for i in 0..k {
        for j in 0..k {
            let doubled = elliptic.at(i, j) * rat_int(2);
            ensure!(
                index.at(i, j) == &doubled,
                "pair ({}, {}): index pairing {} but elliptic pairing {}",
                i,
                j,
                index.at(i, j),
                elliptic.at(i, j)
            );
        }
    }
    Ok(format!("{}×{} pairs checked", k, k))
}

/// Every Casimir scalar on a genuine row is real, and the parity twist
/// partner carries the same scalar.
pub fn casimir_real_twist(ctx: &DiracContext) -> Result<String> {
    for &r in &ctx.pin.genuine_rows {
        let a = &ctx.scalars[r];
        ensure!(a.is_real(), "scalar on row {} is not real", r);
        let q = ctx.pin.partner_row(r)?;
        ensure!(
            &ctx.scalars[q] == a,
            "rows {} and {} are twist partners with different scalars",
            r,
            q
        );
    }
    Ok(format!("{} genuine rows checked", ctx.pin.genuine_rows.len()))
}

/// Rank one at the unit parameter: both genuine scalars equal the
/// calibration value ⟨α∨, α∨⟩/4, which is positive.
pub fn rank_one_calibration(ctx: &DiracContext) -> Result<String> {
    let rs = &ctx.weyl().root_system;
    ensure!(rs.rank == 1, "calibration check is a rank-one statement");
    let idx = rs.simple_indices()[0];
    let expected =
        CycNum::from_rat(rs.inner(rs.coroot(idx), rs.coroot(idx)) * Rat::new(1.into(), 4.into()));
    let (re, _) = expected.float_shadow();
    ensure!(re > 0.0, "calibration target is not positive");
    for &r in &ctx.pin.genuine_rows {
        ensure!(
            ctx.scalars[r] == expected,
            "row {}: scalar {} differs from the calibration value {}",
            r,
            ctx.scalars[r].pretty(),
            expected.pretty()
        );
    }
    Ok(format!("a = {} on both genuine rows", expected.pretty()))
}

/// The hyperoctahedral family: for every shape the selected pair has
/// self-pairing 2 and the elliptic character values match the
/// symmetric-group oracle with one global sign.
pub fn hyperoctahedral_oracle(ctx: &DiracContext) -> Result<String> {
    let rank = ctx.weyl().root_system.rank;
    let report = bn_example_report(rank, &ctx.params, ctx.convention)?;
    for row in &report.rows {
        ensure!(
            row.sign != SignReport::Mixed,
            "shape {:?}: no single sign aligns the values with the oracle",
            row.sigma
        );
        let self_pairing = ctx.pair_self_pairing(&row.pair);
        ensure!(
            self_pairing == CycNum::from_rat(rat_int(2)),
            "shape {:?}: pair self-pairing is {}, not 2",
            row.sigma,
            self_pairing.pretty()
        );
    }
    Ok(format!("{} shapes checked", report.rows.len()))
}

/// Doubling the invariant form doubles every Casimir scalar and the
/// regular entry's length, and leaves the elliptic character values
/// unchanged.
pub fn scale_covariance(ctx: &DiracContext) -> Result<String> {
    let rs = &ctx.weyl().root_system;
    let doubled = WeylGroup::build_scaled(rs.cartan, rs.rank, &rs.scale * rat_int(2))?;
    let ctx2 = DiracContext::new(doubled, ctx.params.clone(), ctx.convention)?;
    ensure!(
        ctx2.pin.genuine_rows == ctx.pin.genuine_rows,
        "genuine rows moved under a form rescale"
    );
    for &r in &ctx.pin.genuine_rows {
        ensure!(
            ctx2.scalars[r] == ctx.scalars[r].scale(&rat_int(2)),
            "row {}: scalar did not double with the form",
            r
        );
    }
    let e1 = regular_entry(ctx.weyl(), &ctx.params)?;
    let e2 = regular_entry(ctx2.weyl(), &ctx.params)?;
    ensure!(
        e2.h_value == &e1.h_value * rat_int(2),
        "regular h did not double with the form"
    );
    let v1 = evaluate_entry(ctx, &e1)?;
    let v2 = evaluate_entry(&ctx2, &e2)?;
    ensure!(
        v1.pair.plus == v2.pair.plus && v1.pair.minus == v2.pair.minus,
        "regular spin pair moved under a form rescale"
    );
    ensure!(
        v1.values == v2.values,
        "elliptic character values changed under a form rescale"
    );
    Ok(format!(
        "scalars and h double, {} elliptic values invariant",
        v1.values.len()
    ))
}

fn random_virtual(rng: &mut ChaCha8Rng, weyl: &WeylGroup) -> ClassFunction {
    let k = weyl.table.num_irreps();
    let classes = weyl.group().num_classes();
    let coeffs: Vec<i64> = (0..k).map(|_| rng.gen_range(-3..=3)).collect();
    let values: Vec<CycNum> = (0..classes)
        .map(|c| {
            let mut acc = CycNum::zero();
            for (i, &m) in coeffs.iter().enumerate() {
                if m != 0 {
                    acc = &acc + &weyl.table.row(i).values[c].scale(&rat_int(m));
                }
            }
            acc
        })
        .collect();
    ClassFunction::new(values)
}

/// Seeded random virtual characters: the elliptic pairing is symmetric and
/// positive semidefinite on them, and the index pairing is exactly twice
/// the elliptic pairing off the basis as well.
pub fn seeded_pairing_properties(ctx: &DiracContext, seed: u64, trials: usize) -> Result<String> {
    let weyl = ctx.weyl();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let f = random_virtual(&mut rng, weyl);
        let g = random_virtual(&mut rng, weyl);
        let e_fg = weyl.elliptic_pairing(&f, &g);
        let e_gf = weyl.elliptic_pairing(&g, &f);
        ensure!(e_fg == e_gf, "trial {}: elliptic pairing is not symmetric", t);
        let doubled = ctx.index_pairing(&f, &g);
        ensure!(
            doubled == e_fg.scale(&rat_int(2)),
            "trial {}: index pairing is not twice the elliptic pairing",
            t
        );
        let e_ff = weyl
            .elliptic_pairing(&f, &f)
            .to_rat()
            .ok_or_else(|| anyhow::anyhow!("trial {}: self-pairing is irrational", t))?;
        ensure!(
            e_ff >= rat_int(0),
            "trial {}: elliptic self-pairing {} is negative",
            t,
            e_ff
        );
    }
    Ok(format!("{} seeded trials", trials))
}

/// One named outcome of the suite.
pub struct SuiteOutcome {
    pub name: &'static str,
    pub result: Result<String>,
}

fn record(out: &mut Vec<SuiteOutcome>, name: &'static str, result: Result<String>) {
    log::debug!(
        "check {}: {}",
        name,
        match &result {
            Ok(s) => format!("pass ({})", s),
            Err(e) => format!("FAIL ({})", e),
        }
    );
    out.push(SuiteOutcome { name, result });
}

/// Run every check that applies to the configuration, in a fixed order.
pub fn run_suite(
    cartan: CartanType,
    rank: usize,
    params: &Params,
    convention: spindex_core::dirac::CasimirConvention,
    seed: u64,
) -> Result<Vec<SuiteOutcome>, spindex_core::CoreError> {
    let weyl = WeylGroup::build(cartan, rank)?;
    let mut out = Vec::new();
    record(&mut out, "character-table-determinism", table_determinism(&weyl));
    record(&mut out, "wedge-identity", wedge_identity(&weyl));
    record(&mut out, "elliptic-rank-matches-class-count", elliptic_rank_count(&weyl));
    let ctx = DiracContext::new(weyl, params.clone(), convention)?;
    record(&mut out, "cover-table-validity", cover_table_validity(&ctx.pin));
    record(&mut out, "spin-difference-square-law", spin_difference_law(&ctx.pin));
    record(&mut out, "index-gram-doubles-elliptic-gram", index_gram_doubles(&ctx));
    record(&mut out, "casimir-scalars-real-and-twist-paired", casimir_real_twist(&ctx));
    let unit = params.long == rat_int(1) && params.short == rat_int(1);
    if cartan == CartanType::A && rank == 1 && unit {
        record(&mut out, "rank-one-calibration", rank_one_calibration(&ctx));
    }
    if cartan == CartanType::B && rank <= 4 {
        record(&mut out, "hyperoctahedral-oracle", hyperoctahedral_oracle(&ctx));
    }
    if rank == 2 && matches!(cartan, CartanType::A | CartanType::B) {
        record(&mut out, "form-scale-covariance", scale_covariance(&ctx));
    }
    record(
        &mut out,
        "seeded-pairing-properties",
        seeded_pairing_properties(&ctx, seed, 4),
    );
    Ok(out)
}
