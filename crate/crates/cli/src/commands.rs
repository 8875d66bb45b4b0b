//! One function per subcommand; each returns the complete stdout text for
//! the resolved configuration and format.

use crate::config::{GroupChoice, OutputFormat, RunConfig};
use crate::output::{
    align, csv_line, cyc_cell, cyc_inline, json_envelope, rat_cell, rat_inline, text_header,
};
use crate::Failure;
use serde_json::{json, Value};
use spindex_core::dirac::{calibrated_kappa, bn_example_report, CasimirConvention, DiracContext, SignReport};
use spindex_core::exactnum::{rat_display, rat_int, CycNum, Rat};
use spindex_core::fingroup::dixon::character_table;
use spindex_core::fingroup::{CharacterTable, FinGroup};
use spindex_core::pin::PinCover;
use spindex_core::springerdb::{self, SpringerData};
use spindex_core::weyl::WeylGroup;

pub fn build_weyl(cfg: &RunConfig) -> Result<WeylGroup, Failure> {
    Ok(WeylGroup::build(cfg.cartan_type, cfg.rank)?)
}

pub fn build_ctx(cfg: &RunConfig) -> Result<DiracContext, Failure> {
    Ok(DiracContext::new(
        build_weyl(cfg)?,
        cfg.params.clone(),
        cfg.convention,
    )?)
}

fn reject_csv(cfg: &RunConfig) -> Result<(), Failure> {
    if cfg.format == OutputFormat::Csv {
        return Err(Failure::Usage(format!(
            "CSV output is provided for character grids only; `{}` supports json or pretty",
            cfg.command
        )));
    }
    Ok(())
}

/// `info`: group and root-system summary.
pub fn info(cfg: &RunConfig) -> Result<String, Failure> {
    reject_csv(cfg)?;
    let weyl = build_weyl(cfg)?;
    let rs = &weyl.root_system;
    let g = weyl.group();
    let degrees: Vec<u64> = weyl.table.degrees.clone();
    let coxeter = 2 * rs.num_positive() / rs.rank;
    let elliptic = weyl.elliptic_classes().to_vec();
    let rank = weyl.elliptic_rank();
    if cfg.format == OutputFormat::Json {
        let result = json!({
            "order": g.order(),
            "classes": g.num_classes(),
            "exponent": g.exponent(),
            "irreps": degrees.len(),
            "degrees": degrees,
            "positive_roots": rs.num_positive(),
            "coxeter_number": coxeter,
            "ambient_dim": rs.ambient_dim,
            "form_scale": rat_cell(&rs.scale),
            "elliptic_classes": elliptic,
            "elliptic_rank": rank,
        });
        return Ok(json_envelope(cfg, result));
    }
    let mut out = text_header(cfg);
    let degs = degrees
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    let ell = elliptic
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    out.push_str(&format!("order            {}\n", g.order()));
    out.push_str(&format!("classes          {}\n", g.num_classes()));
    out.push_str(&format!("exponent         {}\n", g.exponent()));
    out.push_str(&format!("irreps           {}\n", degrees.len()));
    out.push_str(&format!("degrees          {}\n", degs));
    out.push_str(&format!("positive roots   {}\n", rs.num_positive()));
    out.push_str(&format!("coxeter number   {}\n", coxeter));
    out.push_str(&format!("ambient dim      {}\n", rs.ambient_dim));
    out.push_str(&format!("form scale       {}\n", rat_display(&rs.scale)));
    out.push_str(&format!("elliptic classes {}\n", ell));
    out.push_str(&format!("elliptic rank    {}\n", rank));
    Ok(out)
}

fn cycle_string(weyl: &WeylGroup, class: usize) -> Option<String> {
    let cycles = weyl.class_cycle_type(class)?;
    Some(
        cycles
            .iter()
            .map(|&(len, neg)| format!("{}{}", len, if neg { "-" } else { "+" }))
            .collect::<Vec<_>>()
            .join(" "),
    )
}

/// `classes`: conjugacy classes with det(1−w) and ellipticity.
pub fn classes(cfg: &RunConfig) -> Result<String, Failure> {
    reject_csv(cfg)?;
    let weyl = build_weyl(cfg)?;
    let g = weyl.group();
    let only_elliptic = cfg.elliptic_only.unwrap_or(false);
    let picked: Vec<usize> = (0..g.num_classes())
        .filter(|&c| !only_elliptic || weyl.is_elliptic_class(c))
        .collect();
    if cfg.format == OutputFormat::Json {
        let rows: Vec<Value> = picked
            .iter()
            .map(|&c| {
                json!({
                    "class": c,
                    "size": g.class_size(c),
                    "rep_order": g.element_order(g.class_rep(c)),
                    "cycle_type": cycle_string(&weyl, c),
                    "det_one_minus": rat_cell(weyl.det_one_minus(c)),
                    "elliptic": weyl.is_elliptic_class(c),
                })
            })
            .collect();
        return Ok(json_envelope(cfg, json!({"rows": rows})));
    }
    let mut rows = vec![vec![
        "class".into(),
        "size".into(),
        "order".into(),
        "cycles".into(),
        "det(1-w)".into(),
        "elliptic".into(),
    ]];
    for &c in &picked {
        rows.push(vec![
            c.to_string(),
            g.class_size(c).to_string(),
            g.element_order(g.class_rep(c)).to_string(),
            cycle_string(&weyl, c).unwrap_or_else(|| "-".into()),
            rat_inline(weyl.det_one_minus(c)),
            if weyl.is_elliptic_class(c) { "yes" } else { "no" }.into(),
        ]);
    }
    Ok(text_header(cfg) + &align(&rows))
}

/// Genuine rows of a cover table: χ(z) = −χ(1) on the central class.
fn genuine_of(table: &CharacterTable, z_class: usize) -> Vec<usize> {
    (0..table.num_irreps())
        .filter(|&i| {
            let row = table.row(i);
            row.values[z_class] == row.values[0].scale(&Rat::from_integer((-1).into()))
        })
        .collect()
}

/// `chartable`: exact character grid of W, its double cover, or the spin
/// carrier.
pub fn chartable(cfg: &RunConfig) -> Result<String, Failure> {
    let choice = cfg.group.unwrap_or(GroupChoice::Weyl);
    let weyl = build_weyl(cfg)?;
    match choice {
        GroupChoice::Weyl => render_grid(cfg, weyl.group(), &weyl.table, &[]),
        GroupChoice::Cover => {
            let pin = PinCover::build(weyl, calibrated_kappa())?;
            let table = character_table(&pin.cover)
                .map_err(spindex_core::CoreError::from)?;
            let z = pin.cover.class_of(pin.cover_index(0, true));
            let genuine = genuine_of(&table, z);
            render_grid(cfg, &pin.cover, &table, &genuine)
        }
        GroupChoice::Carrier => {
            let pin = PinCover::build(weyl, calibrated_kappa())?;
            let genuine = pin.genuine_rows.clone();
            render_grid(cfg, &pin.carrier, &pin.carrier_table, &genuine)
        }
    }
}

fn render_grid(
    cfg: &RunConfig,
    group: &FinGroup,
    table: &CharacterTable,
    genuine: &[usize],
) -> Result<String, Failure> {
    let r = group.num_classes();
    let class_meta: Vec<Value> = (0..r)
        .map(|c| {
            json!({
                "class": c,
                "size": group.class_size(c),
                "rep_order": group.element_order(group.class_rep(c)),
            })
        })
        .collect();
    match cfg.format {
        OutputFormat::Json => {
            let rows: Vec<Value> = (0..table.num_irreps())
                .map(|i| {
                    json!({
                        "row": i,
                        "degree": table.degrees[i],
                        "genuine": genuine.contains(&i),
                        "values": table.row(i).values.iter().map(cyc_cell).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(json_envelope(
                cfg,
                json!({
                    "order": group.order(),
                    "classes": class_meta,
                    "genuine_rows": genuine,
                    "rows": rows,
                }),
            ))
        }
        OutputFormat::Csv => {
            let mut out = text_header(cfg);
            let mut head = vec!["row".to_string(), "degree".to_string()];
            head.extend((0..r).map(|c| format!("C{}", c)));
            out.push_str(&csv_line(&head));
            for i in 0..table.num_irreps() {
                let mut cells = vec![i.to_string(), table.degrees[i].to_string()];
                cells.extend(table.row(i).values.iter().map(|v| v.pretty()));
                out.push_str(&csv_line(&cells));
            }
            Ok(out)
        }
        OutputFormat::Pretty => {
            let mut rows = Vec::new();
            let mut head = vec!["row".to_string(), "deg".to_string()];
            head.extend((0..r).map(|c| format!("C{}", c)));
            rows.push(head);
            let mut sizes = vec!["".to_string(), "size".to_string()];
            sizes.extend((0..r).map(|c| group.class_size(c).to_string()));
            rows.push(sizes);
            for i in 0..table.num_irreps() {
                let marker = if genuine.contains(&i) { "*" } else { "" };
                let mut cells =
                    vec![format!("{}{}", i, marker), table.degrees[i].to_string()];
                cells.extend(table.row(i).values.iter().map(|v| v.pretty()));
                rows.push(cells);
            }
            let mut out = text_header(cfg);
            out.push_str(&format!("order {}\n", group.order()));
            if !genuine.is_empty() {
                out.push_str("rows marked * are genuine (χ(z) = −χ(1))\n");
            }
            out.push_str(&align(&rows));
            Ok(out)
        }
    }
}

/// `spin`: the spin characters of the cover and the squared-difference law
/// |χ₊(w̃) − χ₋(w̃)|² = (2/[W : p(carrier)])·det(1 − p(w̃)).
pub fn spin(cfg: &RunConfig) -> Result<String, Failure> {
    let weyl = build_weyl(cfg)?;
    let weyl_order = weyl.group().order();
    let pin = PinCover::build(weyl, calibrated_kappa())?;
    let carrier = &pin.carrier;
    let index = 2 * weyl_order / carrier.order();
    let tau2 = (&pin.tau * &pin.tau)
        .to_rat()
        .expect("τ² is rational by construction");

    struct Row {
        class: usize,
        size: usize,
        weyl_class: usize,
        elliptic: bool,
        plus: CycNum,
        minus: CycNum,
        diff_sq: CycNum,
        expected: Rat,
    }
    let mut grid = Vec::new();
    for c in 0..carrier.num_classes() {
        let cover_idx = pin.carrier_fusion[carrier.class_rep(c) as usize];
        let wclass = pin.weyl.group().class_of(pin.project(cover_idx));
        let plus = pin.chi_plus.values[c].clone();
        let minus = pin.chi_minus.values[c].clone();
        let diff_sq = (&plus - &minus).norm_squared();
        let expected =
            pin.weyl.det_one_minus(wclass) * Rat::new(2.into(), (index as i64).into());
        if diff_sq != CycNum::from_rat(expected.clone()) {
            return Err(Failure::Run(format!(
                "squared-difference law fails on carrier class {}",
                c
            )));
        }
        grid.push(Row {
            class: c,
            size: carrier.class_size(c),
            weyl_class: wclass,
            elliptic: pin.weyl.is_elliptic_class(wclass),
            plus,
            minus,
            diff_sq,
            expected,
        });
    }

    match cfg.format {
        OutputFormat::Json => {
            let rows: Vec<Value> = grid
                .iter()
                .map(|r| {
                    json!({
                        "class": r.class,
                        "size": r.size,
                        "weyl_class": r.weyl_class,
                        "elliptic": r.elliptic,
                        "chi_plus": cyc_cell(&r.plus),
                        "chi_minus": cyc_cell(&r.minus),
                        "diff_abs_squared": cyc_cell(&r.diff_sq),
                        "two_over_index_times_det": rat_cell(&r.expected),
                    })
                })
                .collect();
            Ok(json_envelope(
                cfg,
                json!({
                    "kappa": calibrated_kappa(),
                    "spin_dim": pin.spin_dim,
                    "tau_squared": rat_cell(&tau2),
                    "tau": cyc_cell(&pin.tau),
                    "carrier_order": carrier.order(),
                    "carrier_is_cover": pin.carrier_is_cover,
                    "projection_index": index,
                    "z_class": pin.z_class,
                    "genuine_rows": pin.genuine_rows,
                    "classes": rows,
                }),
            ))
        }
        OutputFormat::Csv => {
            let mut out = text_header(cfg);
            out.push_str(&csv_line(&[
                "class".into(),
                "size".into(),
                "weyl_class".into(),
                "elliptic".into(),
                "chi_plus".into(),
                "chi_minus".into(),
                "diff_abs_squared".into(),
            ]));
            for r in &grid {
                out.push_str(&csv_line(&[
                    r.class.to_string(),
                    r.size.to_string(),
                    r.weyl_class.to_string(),
                    r.elliptic.to_string(),
                    r.plus.pretty(),
                    r.minus.pretty(),
                    r.diff_sq.pretty(),
                ]));
            }
            Ok(out)
        }
        OutputFormat::Pretty => {
            let mut out = text_header(cfg);
            out.push_str(&format!(
                "kappa {}   dim S± {}   τ² {}   carrier order {}   [W : p(carrier)] {}\n",
                calibrated_kappa(),
                pin.spin_dim,
                rat_display(&tau2),
                carrier.order(),
                index
            ));
            out.push_str(&format!(
                "genuine rows {}\n",
                pin.genuine_rows
                    .iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
            let mut rows = vec![vec![
                "class".to_string(),
                "size".into(),
                "W-class".into(),
                "elliptic".into(),
                "χ+".into(),
                "χ-".into(),
                "|χ+-χ-|²".into(),
            ]];
            for r in &grid {
                rows.push(vec![
                    r.class.to_string(),
                    r.size.to_string(),
                    r.weyl_class.to_string(),
                    if r.elliptic { "yes" } else { "no" }.into(),
                    cyc_inline(&r.plus),
                    cyc_inline(&r.minus),
                    r.diff_sq.pretty(),
                ]);
            }
            out.push_str(&align(&rows));
            Ok(out)
        }
    }
}

/// `elliptic-pairing`: the Gram matrix of the elliptic pairing on the
/// irreducible characters, and its rank.
pub fn elliptic_pairing(cfg: &RunConfig) -> Result<String, Failure> {
    reject_csv(cfg)?;
    let weyl = build_weyl(cfg)?;
    let gram = weyl.elliptic_gram();
    let rank = gram.rank();
    let k = weyl.table.num_irreps();
    if cfg.format == OutputFormat::Json {
        let rows: Vec<Vec<Value>> = (0..k)
            .map(|i| (0..k).map(|j| rat_cell(gram.at(i, j))).collect())
            .collect();
        return Ok(json_envelope(
            cfg,
            json!({
                "irreps": k,
                "elliptic_classes": weyl.elliptic_classes(),
                "gram": rows,
                "rank": rank,
            }),
        ));
    }
    let mut out = text_header(cfg);
    out.push_str(&format!(
        "irreps {}   elliptic classes {}   rank {}\n",
        k,
        weyl.elliptic_classes().len(),
        rank
    ));
    let mut rows = Vec::new();
    let mut head = vec!["".to_string()];
    head.extend((0..k).map(|j| j.to_string()));
    rows.push(head);
    for i in 0..k {
        let mut cells = vec![i.to_string()];
        cells.extend((0..k).map(|j| rat_display(gram.at(i, j))));
        rows.push(cells);
    }
    out.push_str(&align(&rows));
    Ok(out)
}

/// `casimir`: exact Casimir scalars on the genuine rows, under both sign
/// conventions side by side.
pub fn casimir(cfg: &RunConfig) -> Result<String, Failure> {
    reject_csv(cfg)?;
    let weyl = build_weyl(cfg)?;
    let pin = PinCover::build(weyl, calibrated_kappa())?;
    let genuine = pin.genuine_rows.clone();
    let degrees = pin.carrier_table.degrees.clone();
    let partners: Vec<usize> = genuine
        .iter()
        .map(|&r| pin.partner_row(r))
        .collect::<Result<_, _>>()?;
    let ctx_neg = DiracContext::with_pin(
        pin,
        cfg.params.clone(),
        CasimirConvention::NegativeImage,
    )?;
    let neg = ctx_neg.scalars.clone();
    let ctx_pos = DiracContext::with_pin(
        ctx_neg.pin,
        cfg.params.clone(),
        CasimirConvention::PositiveImage,
    )?;
    let pos = ctx_pos.scalars;

    if cfg.format == OutputFormat::Json {
        let rows: Vec<Value> = genuine
            .iter()
            .zip(partners.iter())
            .map(|(&r, &q)| {
                json!({
                    "row": r,
                    "degree": degrees[r],
                    "twist_partner": q,
                    "negative": cyc_cell(&neg[r]),
                    "positive": cyc_cell(&pos[r]),
                    "negative_rational": neg[r].to_rat().is_some(),
                    "positive_rational": pos[r].to_rat().is_some(),
                })
            })
            .collect();
        return Ok(json_envelope(cfg, json!({"genuine_rows": rows})));
    }
    let mut rows = vec![vec![
        "row".to_string(),
        "degree".into(),
        "partner".into(),
        "a (negative)".into(),
        "a (positive)".into(),
        "rational".into(),
    ]];
    for (&r, &q) in genuine.iter().zip(partners.iter()) {
        rows.push(vec![
            r.to_string(),
            degrees[r].to_string(),
            q.to_string(),
            cyc_inline(&neg[r]),
            cyc_inline(&pos[r]),
            format!(
                "{}/{}",
                if neg[r].to_rat().is_some() { "yes" } else { "no" },
                if pos[r].to_rat().is_some() { "yes" } else { "no" }
            ),
        ]);
    }
    Ok(text_header(cfg) + &align(&rows))
}

fn partition_str(p: &[usize]) -> String {
    p.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("+")
}

fn sign_str(s: SignReport) -> &'static str {
    match s {
        SignReport::Plus => "plus",
        SignReport::Minus => "minus",
        SignReport::Mixed => "mixed",
    }
}

/// `bn-example`: the hyperoctahedral family against the symmetric-group
/// oracle: for every shape σ ⊢ n the elliptic character values at the
/// all-negative-cycle classes w_λ equal ±χ_σ(λ) with one global sign.
pub fn bn_example(cfg: &RunConfig) -> Result<String, Failure> {
    reject_csv(cfg)?;
    let report = bn_example_report(cfg.rank, &cfg.params, cfg.convention)?;
    if cfg.format == OutputFormat::Json {
        let rows: Vec<Value> = report
            .rows
            .iter()
            .map(|row| {
                json!({
                    "sigma": row.sigma,
                    "pair": {
                        "plus_row": row.pair.plus,
                        "minus_row": row.pair.minus,
                        "scalar": cyc_cell(&row.pair.scalar),
                    },
                    "sign": sign_str(row.sign),
                    "columns": row.columns.iter().map(|col| json!({
                        "lambda": col.lambda,
                        "class": col.class,
                        "oracle": col.oracle,
                        "value": cyc_cell(&col.value),
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        return Ok(json_envelope(cfg, json!({"n": report.n, "rows": rows})));
    }
    let mut out = text_header(cfg);
    let lambdas: Vec<String> = report
        .rows
        .first()
        .map(|r| r.columns.iter().map(|c| partition_str(&c.lambda)).collect())
        .unwrap_or_default();
    let mut rows = Vec::new();
    let mut head = vec!["sigma".to_string(), "pair".into(), "a".into(), "sign".into()];
    head.extend(lambdas.iter().map(|l| format!("w({})", l)));
    rows.push(head);
    for row in &report.rows {
        let mut cells = vec![
            partition_str(&row.sigma),
            format!("({},{})", row.pair.plus, row.pair.minus),
            row.pair.scalar.pretty(),
            sign_str(row.sign).to_string(),
        ];
        cells.extend(
            row.columns
                .iter()
                .map(|c| format!("{}|{}", c.value.pretty(), c.oracle)),
        );
        rows.push(cells);
    }
    out.push_str("value columns show: evaluated|oracle\n");
    out.push_str(&align(&rows));
    Ok(out)
}

/// Load and cross-validate a data file against the configured system.
pub fn load_springer(cfg: &RunConfig) -> Result<(WeylGroup, SpringerData), Failure> {
    let path = cfg.data.as_deref().expect("springer-eval always has a path");
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read data file {}: {}", path, e)))?;
    let file = springerdb::parse(&text)?;
    if file.cartan != cfg.cartan_type || file.rank != cfg.rank {
        return Err(Failure::Usage(format!(
            "data file {} describes {}{} but the run is configured for {}{}",
            path, file.cartan, file.rank, cfg.cartan_type, cfg.rank
        )));
    }
    let weyl = build_weyl(cfg)?;
    let data = springerdb::load(&text, &weyl)?;
    Ok((weyl, data))
}

/// `springer-eval`: drive the elliptic character formula from a data file:
/// select the spin pair of every entry by its Casimir target h/4 and
/// evaluate on every elliptic class.
pub fn springer_eval(cfg: &RunConfig) -> Result<String, Failure> {
    reject_csv(cfg)?;
    let (weyl, data) = load_springer(cfg)?;
    let elliptic = weyl.elliptic_classes().to_vec();
    let ctx = DiracContext::with_pin(
        PinCover::build(weyl, calibrated_kappa())?,
        data.params.clone(),
        cfg.convention,
    )?;
    let violations = springerdb::empirical_h_monotonicity(&data);
    let mut evaluations = Vec::new();
    for entry in &data.entries {
        let eval = springerdb::evaluate_entry(&ctx, entry)?;
        evaluations.push((entry, eval));
    }

    if cfg.format == OutputFormat::Json {
        let entries: Vec<Value> = evaluations
            .iter()
            .map(|(entry, eval)| {
                json!({
                    "nilpotent": entry.nilpotent,
                    "phi": entry.phi,
                    "sigma_row": entry.sigma_row,
                    "degree": entry.fingerprint.degree,
                    "quasidistinguished": entry.quasidistinguished,
                    "h": rat_cell(&entry.h_value),
                    "casimir_target": rat_cell(&(&entry.h_value / &rat_int(4))),
                    "pair": {
                        "plus_row": eval.pair.plus,
                        "minus_row": eval.pair.minus,
                        "scalar": cyc_cell(&eval.pair.scalar),
                    },
                    "values": eval.values.iter().map(|(c, v)| json!({
                        "class": c,
                        "value": cyc_cell(v),
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        let viol: Vec<Value> = violations
            .iter()
            .map(|v| {
                json!({
                    "lower": v.lower,
                    "upper": v.upper,
                    "h_lower": rat_cell(&v.h_lower),
                    "h_upper": rat_cell(&v.h_upper),
                })
            })
            .collect();
        return Ok(json_envelope(
            cfg,
            json!({
                "params": data.params,
                "elliptic_classes": elliptic,
                "entries": entries,
                "monotonicity_violations": viol,
            }),
        ));
    }

    let mut out = text_header(cfg);
    out.push_str(&format!(
        "params long {} short {}\n",
        rat_display(&data.params.long),
        rat_display(&data.params.short)
    ));
    let mut rows = Vec::new();
    let mut head = vec![
        "nilpotent".to_string(),
        "phi".into(),
        "row".into(),
        "deg".into(),
        "h".into(),
        "pair".into(),
    ];
    head.extend(elliptic.iter().map(|c| format!("C{}", c)));
    rows.push(head);
    for (entry, eval) in &evaluations {
        let mut cells = vec![
            entry.nilpotent.clone(),
            entry.phi.clone(),
            entry.sigma_row.to_string(),
            entry.fingerprint.degree.to_string(),
            rat_display(&entry.h_value),
            format!("({},{})", eval.pair.plus, eval.pair.minus),
        ];
        cells.extend(eval.values.iter().map(|(_, v)| v.pretty()));
        rows.push(cells);
    }
    out.push_str(&align(&rows));
    if violations.is_empty() {
        out.push_str("closure-order monotonicity: no violations\n");
    } else {
        for v in &violations {
            out.push_str(&format!(
                "monotonicity violation: h({}) = {} but h({}) = {} above it\n",
                v.lower,
                rat_display(&v.h_lower),
                v.upper,
                rat_display(&v.h_upper)
            ));
        }
    }
    Ok(out)
}
