//! One function per subcommand, each producing a [`Report`].

use malachite::{Integer, Natural};
use rayon::prelude::*;

use rcurves::enumerate::{count_morphisms, section_data, CountResult};
use rcurves::forms::SurfaceModel;
use rcurves::lattice::{
    admissibility, blow_down_data, conic_classes, ell, enumerate_in_cone, minus_one_classes, DivisorClass, C1, C2, C3,
};
use rcurves::sieve::{c_constant, limit_check, tamagawa, virtual_count, virtual_zeta, TruncSeries};
use rcurves::Frac;

use crate::config::{Command, RunConfig};
use crate::error::CliError;
use crate::report::Report;

/// Significant digits of the decimal companions.
pub const DIGITS: usize = 12;

pub const COUNT_COLUMNS: &[&str] = &[
    "class",
    "h",
    "a",
    "a_prime",
    "k",
    "regime",
    "exact_sections",
    "exact_morphisms",
    "virtual_sections",
    "virtual_morphisms",
    "exact_over_virtual",
    "exact_over_virtual_dec",
    "morphisms_over_qh",
    "morphisms_over_qh_dec",
    "tau",
    "tau_dec",
    "upper_bound",
    "upper_bound_dec",
    "bound_holds",
    "ell",
    "ell_flag",
    "eps_flag",
    "c3_flag",
    "note",
];

fn dec(x: &Frac) -> String {
    x.to_decimal(DIGITS)
}

fn frac_u128(x: u128) -> Frac {
    Frac::from(Integer::from(x))
}

fn join(k: &[u32]) -> String {
    k.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

/// `q^(h + 2) (q / (q - 1))^(r + 2)`.
pub fn upper_bound(q: u64, r: usize, h: i64) -> Result<Frac, CliError> {
    let qf = Frac::from(q);
    let ratio = Frac::from_ratio(q as i64, q as i64 - 1);
    Ok(qf.powi(h + 2).map_err(CliError::model)? * ratio.pow(r as u64 + 2))
}

fn model_of(cfg: &RunConfig) -> &SurfaceModel {
    cfg.model.as_ref().expect("counting commands always carry a model")
}

fn class_of(cfg: &RunConfig) -> &DivisorClass {
    cfg.class.as_ref().expect("command resolves a default class")
}

struct RowInputs<'a> {
    cfg: &'a RunConfig,
    alpha: &'a DivisorClass,
    count: &'a CountResult,
    zeta: Option<&'a TruncSeries>,
    tau: &'a Rendered,
}

/// A rational with its exact and decimal strings, rendered once.
struct Rendered {
    exact: String,
    decimal: String,
}

impl Rendered {
    fn new(x: &Frac) -> Self {
        Rendered { exact: x.to_string(), decimal: dec(x) }
    }
}

fn count_row(inp: RowInputs<'_>) -> Result<Vec<String>, CliError> {
    let RowInputs { cfg, alpha, count, zeta, tau } = inp;
    let q = cfg.q;
    let (a, ap, k) = section_data(alpha).map_err(CliError::config)?;
    let h = alpha.height();
    let exact = frac_u128(count.morphisms);
    let (vs, vm, ratio) = match zeta {
        Some(z) => {
            let v = virtual_count(a as u64, ap as u64, &k, z, cfg.convention).map_err(CliError::model)?;
            let ratio = (!v.morphisms.is_zero()).then(|| &exact / &v.morphisms);
            (v.sections.to_string(), v.morphisms.to_string(), ratio)
        }
        None => (String::new(), String::new(), None),
    };
    let over_qh = &exact / &Frac::from(q).pow(h as u64);
    let bound = upper_bound(q, cfg.r, h)?;
    let holds = exact <= bound;
    let (ell_s, flags, note) = if alpha.is_zero() {
        (String::new(), [String::new(), String::new(), String::new()], "model count".to_string())
    } else {
        let ell_s = ell(alpha).map(|l| l.to_string()).unwrap_or_default();
        match admissibility(&Natural::from(q), alpha) {
            Ok(adm) => (
                ell_s,
                [adm.ell_flag.to_string(), adm.eps_flag.to_string(), adm.c3_flag.to_string()],
                adm.note,
            ),
            Err(e) => (ell_s, [String::new(), String::new(), String::new()], format!("no admissibility data: {e}")),
        }
    };
    let [ell_flag, eps_flag, c3_flag] = flags;
    Ok(vec![
        alpha.to_string(),
        h.to_string(),
        a.to_string(),
        ap.to_string(),
        join(&k),
        count.in_regime().to_string(),
        count.raw.to_string(),
        count.morphisms.to_string(),
        vs,
        vm,
        ratio.as_ref().map(Frac::to_string).unwrap_or_default(),
        ratio.as_ref().map(dec).unwrap_or_default(),
        over_qh.to_string(),
        dec(&over_qh),
        tau.exact.clone(),
        tau.decimal.clone(),
        bound.to_string(),
        dec(&bound),
        holds.to_string(),
        ell_s,
        ell_flag,
        eps_flag,
        c3_flag,
        note,
    ])
}

fn zeta_for(cfg: &RunConfig, caps: &[u32]) -> Result<Option<TruncSeries>, CliError> {
    if !cfg.virtual_counts {
        return Ok(None);
    }
    let kmax = caps.iter().copied().max().unwrap_or(0) as u64;
    if cfg.d < kmax {
        return Err(CliError::config(format!("d = {} is below the largest multiplicity {kmax}", cfg.d)));
    }
    Ok(Some(virtual_zeta(cfg.r, cfg.q, caps, cfg.d).map_err(CliError::model)?.series))
}

fn tau_value(cfg: &RunConfig) -> Result<Frac, CliError> {
    Ok(tamagawa(cfg.r, cfg.q, cfg.d).map_err(CliError::model)?.value)
}

fn tau_rendered(cfg: &RunConfig) -> Result<Rendered, CliError> {
    Ok(Rendered::new(&tau_value(cfg)?))
}

fn count(cfg: &RunConfig) -> Result<Report, CliError> {
    let model = model_of(cfg);
    let alpha = class_of(cfg);
    let (_, _, k) = section_data(alpha).map_err(CliError::config)?;
    let zeta = zeta_for(cfg, &k)?;
    let tau = tau_rendered(cfg)?;
    let c = count_morphisms(model, alpha, cfg.mode, cfg.budget).map_err(CliError::model)?;
    let mut rep = Report::new(cfg.command.as_str(), cfg.resolved(), COUNT_COLUMNS);
    rep.push(count_row(RowInputs { cfg, alpha, count: &c, zeta: zeta.as_ref(), tau: &tau })?);
    hypothesis_flags(&mut rep);
    Ok(rep)
}

fn hypothesis_flags(rep: &mut Report) {
    rep.flag("c1", C1);
    rep.flag("c2", C2);
    rep.flag("c3", C3);
}

fn scan(cfg: &RunConfig) -> Result<Report, CliError> {
    let model = model_of(cfg);
    let classes = enumerate_in_cone(cfg.r, &cfg.cone, cfg.hmax, cfg.include_zero).map_err(CliError::config)?;
    let mut caps = vec![0u32; cfg.r];
    for alpha in &classes {
        let (_, _, k) = section_data(alpha).map_err(CliError::config)?;
        for (c, x) in caps.iter_mut().zip(k) {
            *c = (*c).max(x);
        }
    }
    let zeta = zeta_for(cfg, &caps)?;
    let tau = tau_rendered(cfg)?;
    let counts: Vec<Result<CountResult, CliError>> = classes
        .par_iter()
        .map(|alpha| count_morphisms(model, alpha, cfg.mode, cfg.budget).map_err(CliError::model))
        .collect();
    let mut rep = Report::new(cfg.command.as_str(), cfg.resolved(), COUNT_COLUMNS);
    let mut violations = 0u64;
    for (alpha, c) in classes.iter().zip(counts) {
        let c = c?;
        let row = count_row(RowInputs { cfg, alpha, count: &c, zeta: zeta.as_ref(), tau: &tau })?;
        if row[18] == "false" {
            violations += 1;
        }
        rep.push(row);
    }
    rep.flag("classes", classes.len());
    rep.flag("bound_violations", violations);
    hypothesis_flags(&mut rep);
    Ok(rep)
}

fn tamagawa_cmd(cfg: &RunConfig) -> Result<Report, CliError> {
    let t = tamagawa(cfg.r, cfg.q, cfg.d).map_err(CliError::model)?;
    let mut rep = Report::new(
        cfg.command.as_str(),
        cfg.resolved(),
        &["r", "q", "d", "tau", "tau_dec", "relative_bound", "relative_bound_dec", "log_bound", "log_bound_dec"],
    );
    rep.push(vec![
        cfg.r.to_string(),
        cfg.q.to_string(),
        cfg.d.to_string(),
        t.value.to_string(),
        dec(&t.value),
        t.relative_bound.to_string(),
        dec(&t.relative_bound),
        t.log_bound.as_ref().map(Frac::to_string).unwrap_or_default(),
        t.log_bound.as_ref().map(dec).unwrap_or_default(),
    ]);
    Ok(rep)
}

fn converge(cfg: &RunConfig) -> Result<Report, CliError> {
    let model = model_of(cfg);
    let alpha = class_of(cfg);
    if alpha.is_zero() {
        return Err(CliError::config("converge needs a nonzero class"));
    }
    let tau = tau_value(cfg)?;
    let tau_s = Rendered::new(&tau);
    let h = alpha.height();
    let mut rep = Report::new(
        cfg.command.as_str(),
        cfg.resolved(),
        &["m", "class", "exact_morphisms", "ratio", "ratio_dec", "tau", "tau_dec", "rel_error", "rel_error_dec"],
    );
    let mut errors = Vec::new();
    for m in 1..=cfg.mmax as i64 {
        let beta = alpha.scale(m);
        let c = count_morphisms(model, &beta, cfg.mode, cfg.budget).map_err(CliError::model)?;
        let ratio = &frac_u128(c.morphisms) / &Frac::from(cfg.q).pow((m * h) as u64);
        let err = &(&ratio - &tau).abs() / &tau;
        rep.push(vec![
            m.to_string(),
            beta.to_string(),
            c.morphisms.to_string(),
            ratio.to_string(),
            dec(&ratio),
            tau_s.exact.clone(),
            tau_s.decimal.clone(),
            err.to_string(),
            dec(&err),
        ]);
        errors.push(err);
    }
    let toward = errors.len() >= 2 && errors.windows(2).all(|w| w[1] < w[0]);
    let last_below_half = errors.last().is_some_and(|e| *e < Frac::from_ratio(1, 2));
    rep.flag("moving_toward_tau", toward);
    rep.flag("last_rel_error_below_half", last_below_half);
    if let Ok(adm) = admissibility(&Natural::from(cfg.q), alpha) {
        rep.flag("ell_flag", adm.ell_flag);
        rep.flag("eps_flag", adm.eps_flag);
        rep.flag("c3_flag", adm.c3_flag);
    }
    Ok(rep)
}

fn audit_upper(cfg: &RunConfig) -> Result<Report, CliError> {
    let model = model_of(cfg);
    let classes: Vec<DivisorClass> = enumerate_in_cone(cfg.r, &cfg.cone, cfg.hmax, false)
        .map_err(CliError::config)?
        .into_iter()
        .filter(|c| c.invariants().in_regime())
        .collect();
    let counts: Vec<Result<CountResult, CliError>> = classes
        .par_iter()
        .map(|alpha| count_morphisms(model, alpha, cfg.mode, cfg.budget).map_err(CliError::model))
        .collect();
    let mut rep = Report::new(
        cfg.command.as_str(),
        cfg.resolved(),
        &["class", "h", "exact_morphisms", "upper_bound", "upper_bound_dec", "holds"],
    );
    let mut violations = 0u64;
    for (alpha, c) in classes.iter().zip(counts) {
        let c = c?;
        let bound = upper_bound(cfg.q, cfg.r, alpha.height())?;
        let holds = frac_u128(c.morphisms) <= bound;
        violations += u64::from(!holds);
        rep.push(vec![
            alpha.to_string(),
            alpha.height().to_string(),
            c.morphisms.to_string(),
            bound.to_string(),
            dec(&bound),
            holds.to_string(),
        ]);
    }
    rep.flag("classes", classes.len());
    rep.flag("violations", violations);
    rep.flag("pass", violations == 0);
    hypothesis_flags(&mut rep);
    Ok(rep)
}

/// `tau = q^2 (q / (q - 1))^2 c` at every cutoff up to `d`.
pub fn tau_identity_holds(r: usize, q: u64, d: u64) -> Result<bool, CliError> {
    let factor = Frac::from(q).pow(2) * Frac::from_ratio(q as i64, q as i64 - 1).pow(2);
    for dd in 0..=d {
        let t = tamagawa(r, q, dd).map_err(CliError::model)?.value;
        let c = c_constant(r, q, dd).map_err(CliError::model)?;
        if t != &factor * &c {
            return Ok(false);
        }
    }
    Ok(true)
}

fn limits(cfg: &RunConfig) -> Result<Report, CliError> {
    let rep_data = limit_check(cfg.r, cfg.q, cfg.nmax, cfg.d).map_err(CliError::model)?;
    let mut rep =
        Report::new(cfg.command.as_str(), cfg.resolved(), &["n", "coefficient", "coefficient_dec", "gap", "gap_dec"]);
    for (i, (v, g)) in rep_data.coefficients.iter().zip(&rep_data.gaps).enumerate() {
        rep.push(vec![(i + 1).to_string(), v.to_string(), dec(v), g.to_string(), dec(g)]);
    }
    rep.flag("c", &rep_data.c);
    rep.flag("c_dec", dec(&rep_data.c));
    rep.flag("relative_bound", &rep_data.relative_bound);
    rep.flag("gaps_decreasing", rep_data.pass);
    rep.flag("tau_identity", tau_identity_holds(cfg.r, cfg.q, cfg.d)?);
    Ok(rep)
}

fn cones(cfg: &RunConfig) -> Result<Report, CliError> {
    let r = cfg.r;
    let mut rep = Report::new(cfg.command.as_str(), cfg.resolved(), &["kind", "index", "class", "h", "self_intersection"]);
    let minus = minus_one_classes(r).map_err(CliError::config)?;
    for (i, c) in minus.iter().enumerate() {
        rep.push(vec!["minus_one".into(), i.to_string(), c.to_string(), c.height().to_string(), c.self_intersection().to_string()]);
    }
    let conics = conic_classes(r).map_err(CliError::config)?;
    for (i, c) in conics.iter().enumerate() {
        rep.push(vec!["conic".into(), i.to_string(), c.to_string(), c.height().to_string(), c.self_intersection().to_string()]);
    }
    let k = DivisorClass::anticanonical(r);
    rep.flag("minus_one_classes", minus.len());
    rep.flag("conic_classes", conics.len());
    rep.flag("anticanonical_square", k.self_intersection());
    match blow_down_data(r) {
        Ok(data) => {
            for (i, phi) in data.iter().enumerate() {
                let ec: Vec<String> = phi.ec.iter().map(|e| e.to_string()).collect();
                rep.push(vec![
                    "blow_down".into(),
                    i.to_string(),
                    format!("F={} | F'={} | E={}", phi.fc, phi.fc_prime, ec.join(" | ")),
                    String::new(),
                    String::new(),
                ]);
            }
            rep.flag("blow_downs", data.len());
            rep.flag("ell_anticanonical", ell(&k).map_err(CliError::model)?);
        }
        Err(_) => {
            rep.flag("blow_downs", "unavailable");
            rep.flag("ell_anticanonical", "unavailable");
        }
    }
    Ok(rep)
}

fn admissible(cfg: &RunConfig) -> Result<Report, CliError> {
    let alpha = class_of(cfg);
    let adm = admissibility(&Natural::from(cfg.q), alpha).map_err(CliError::config)?;
    let mut rep = Report::new(
        cfg.command.as_str(),
        cfg.resolved(),
        &["class", "q", "h", "ell", "ell_ratio", "eps", "diag_i", "ell_flag", "eps_flag", "c3_flag", "note"],
    );
    rep.push(vec![
        alpha.to_string(),
        adm.q.to_string(),
        adm.h.to_string(),
        adm.ell.to_string(),
        adm.ell_ratio.to_string(),
        adm.eps.to_string(),
        adm.diag_i.to_string(),
        adm.ell_flag.to_string(),
        adm.eps_flag.to_string(),
        adm.c3_flag.to_string(),
        adm.note,
    ]);
    hypothesis_flags(&mut rep);
    Ok(rep)
}

/// Runs the command on the current rayon pool.
pub fn execute(cfg: &RunConfig) -> Result<Report, CliError> {
    match cfg.command {
        Command::Count => count(cfg),
        Command::Tamagawa => tamagawa_cmd(cfg),
        Command::Scan => scan(cfg),
        Command::Converge => converge(cfg),
        Command::AuditUpper => audit_upper(cfg),
        Command::Limits => limits(cfg),
        Command::Cones => cones(cfg),
        Command::Admissible => admissible(cfg),
    }
}
