use std::fmt;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde_json::json;
use trimmed_edgeworth::edgeworth::invert_expansion;
use trimmed_edgeworth::io::{format_sample, read_sample};
use trimmed_edgeworth::montecarlo::{
    bias_study, empirical_expansion_study, rate_study, remainder_study, run_replicates,
    SimulationConfig, Target,
};
use trimmed_edgeworth::report::{csv_string, json_string, write_csv, write_json, write_text};
use trimmed_edgeworth::{
    bias_term, compute_functionals, make_model, BiasEstimator, Diagnostic, Error, ExpansionCoefficients,
    ExpansionKind, ModelSpec, PluginEstimates, SortedSample, TrimLevels, TrimSpec,
};

use crate::{AnalyzeArgs, DiagnoseArgs, ModelArgs, PopulationArgs, SimulateArgs, Study, TrimArgs};

/// Bad invocation caught by the front end itself.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

/// 1 runtime failure, 2 usage or validation, 3 degenerate data.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::DegenerateVariance | Error::DegenerateDensity) => 3,
        Some(
            Error::UnknownFamily(_)
            | Error::InvalidParams { .. }
            | Error::InvalidTrim(_)
            | Error::EmptyTrimRange { .. }
            | Error::InvalidSample(_)
            | Error::ProbabilityOutOfRange(_)
            | Error::Parse { .. }
            | Error::Config(_)
            | Error::UnknownDiagnostic(_),
        ) => 2,
        _ => 1,
    }
}

fn bias_estimator(printed: bool) -> BiasEstimator {
    if printed {
        BiasEstimator::AsPrinted
    } else {
        BiasEstimator::DensityMatched
    }
}

fn levels(t: &TrimArgs) -> Result<TrimLevels> {
    match (t.alpha, t.beta) {
        (Some(a), Some(b)) => Ok(TrimLevels::new(a, b)?),
        _ => Err(usage("--alpha and --beta are required")),
    }
}

fn model_spec(m: &ModelArgs) -> Result<ModelSpec> {
    let family = m.family.clone().ok_or_else(|| usage("--family is required"))?;
    Ok(ModelSpec {
        family,
        params: m.params.clone().unwrap_or_default(),
    })
}

pub fn analyze(args: AnalyzeArgs) -> Result<()> {
    let values = read_sample(&args.file).with_context(|| format!("reading {}", args.file.display()))?;
    if values.len() < 4 {
        return Err(usage(format!(
            "{}: need at least 4 values, found {}",
            args.file.display(),
            values.len()
        )));
    }
    let n = values.len();
    let spec = TrimSpec::new(args.alpha, args.beta, n)?;
    let sample = SortedSample::new(values)?;
    let est = PluginEstimates::compute(&sample, &spec, bias_estimator(args.printed_bias))?;
    let mut warnings = Vec::new();
    if est.density_degenerate {
        warnings.push(
            "kernel density estimate not positive at a trimming quantile; expansions keep lambda1_hat only"
                .to_string(),
        );
    }
    let g_hat = ExpansionCoefficients::empirical_unchecked(&est, ExpansionKind::Normalized);
    let h_hat = ExpansionCoefficients::empirical_unchecked(&est, ExpansionKind::Studentized);

    let interval = match args.level {
        None => None,
        Some(level) => {
            if !(level > 0.0 && level < 1.0) {
                return Err(usage(format!("--level must lie in (0, 1), got {level}")));
            }
            let tail = (1.0 - level) / 2.0;
            let lo_q = invert_expansion(&h_hat, tail)?;
            let hi_q = invert_expansion(&h_hat, 1.0 - tail)?;
            warnings.extend(lo_q.warning.clone());
            warnings.extend(hi_q.warning.clone());
            let scale = est.s_n() / ((spec.beta - spec.alpha) * (n as f64).sqrt());
            Some(json!({
                "level": level,
                "lower": est.t_n - scale * hi_q.x,
                "upper": est.t_n - scale * lo_q.x,
                "statistic_quantiles": [lo_q.x, hi_q.x],
            }))
        }
    };

    let report = json!({
        "input": { "path": args.file.display().to_string(), "n": n },
        "spec": spec,
        "estimates": est,
        "expansions": { "normalized": g_hat, "studentized": h_hat },
        "confidence_interval": interval,
        "warnings": warnings,
    });
    let text = json_string(&report)?;
    print!("{text}");
    if let Some(dir) = &args.out_dir {
        write_text(&dir.join("analysis.json"), &text)?;
    }
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    Ok(())
}

fn simulation_config(args: &SimulateArgs) -> Result<SimulationConfig> {
    let mut table = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            text.parse::<toml::Table>()
                .map_err(|e| Error::Config(format!("{}: {}", path.display(), e.message())))?
        }
        None => toml::Table::new(),
    };
    let mut set = |key: &str, value: toml::Value| {
        table.insert(key.to_string(), value);
    };
    if args.model.family.is_some() {
        let spec = model_spec(&args.model)?;
        set("model", toml::Value::try_from(spec)?);
    }
    if let Some(a) = args.trim.alpha {
        set("alpha", a.into());
    }
    if let Some(b) = args.trim.beta {
        set("beta", b.into());
    }
    if let Some(list) = &args.n_list {
        set("n_list", toml::Value::Array(list.iter().map(|&n| (n as i64).into()).collect()));
    }
    if let Some(r) = args.reps {
        set("reps", (r as i64).into());
    }
    if let Some(s) = args.seed {
        let s = i64::try_from(s).map_err(|_| usage("--seed must be below 2^63"))?;
        set("base_seed", toml::Value::Integer(s));
    }
    if let Some(k) = &args.kind {
        set("kind", k.clone().into());
    }
    if let Some(t) = &args.targets {
        set("targets", toml::Value::Array(t.iter().map(|s| s.clone().into()).collect()));
    }
    if let Some(w) = args.workers {
        set("workers", (w as i64).into());
    }
    if args.printed_bias {
        set("bias_estimator", "as_printed".into());
    }
    if !table.contains_key("base_seed") {
        return Err(usage("an explicit seed is required (--seed or base_seed in the config)"));
    }
    if args.study == Study::Bias && !table.contains_key("kind") {
        table.insert("kind".into(), "normalized".into());
    }
    if !table.contains_key("reps") {
        table.insert("reps".into(), toml::Value::Integer(200_000));
    }
    Ok(SimulationConfig::from_toml_str(&toml::to_string(&table)?)?)
}

fn dump_samples(cfg: &SimulationConfig, dir: &Path) -> Result<()> {
    let model = cfg.build_model()?;
    let levels = cfg.levels()?;
    for &n in &cfg.n_list {
        let spec = TrimSpec::from_levels(levels, n)?;
        let x = run_replicates(&model, n, 1, cfg.base_seed, 1, |_, x| x.to_vec())?.remove(0);
        let header = format!(
            "replicate 0, n = {n}, base_seed = {}, model = {} {:?}",
            cfg.base_seed, cfg.model.family, cfg.model.params
        );
        write_text(&dir.join(format!("sample_n{n}.txt")), &format_sample(&x, &header))?;
        let est = PluginEstimates::compute(&SortedSample::new(x)?, &spec, cfg.bias_estimator)?;
        write_json(&dir.join(format!("sample_n{n}.json")), &est)?;
    }
    Ok(())
}

pub fn simulate(args: SimulateArgs) -> Result<()> {
    let cfg = simulation_config(&args)?;
    let dir = &args.out_dir;
    write_text(&dir.join("config.toml"), &cfg.to_toml_string())?;
    match args.study {
        Study::Rate => {
            let mut report = rate_study(&cfg)?;
            report.config.workers = 1;
            write_csv(&dir.join("sup_distance.csv"), &report.rows)?;
            println!("sup_distance.csv: {} rows", report.rows.len());
            if cfg.targets.contains(&Target::EmpiricalExpansion) {
                write_csv(&dir.join("empirical.csv"), &report.empirical)?;
                println!("empirical.csv: {} rows", report.empirical.len());
            }
            write_json(&dir.join("summary.json"), &report)?;
            println!("summary.json: {:.1}s", report.runtime_seconds);
        }
        Study::Empirical => {
            let mut report = empirical_expansion_study(&cfg)?;
            report.config.workers = 1;
            write_csv(&dir.join("empirical.csv"), &report.rows)?;
            println!("empirical.csv: {} rows", report.rows.len());
            write_json(&dir.join("summary.json"), &report)?;
            println!("summary.json: {:.1}s", report.runtime_seconds);
        }
        Study::Bias => {
            let model = cfg.build_model()?;
            let levels = cfg.levels()?;
            let rows = cfg
                .n_list
                .iter()
                .map(|&n| bias_study(&model, levels, n, cfg.reps, cfg.base_seed, cfg.workers))
                .collect::<trimmed_edgeworth::Result<Vec<_>>>()?;
            write_text(&dir.join("bias.csv"), &bias_csv(&rows)?)?;
            println!("bias.csv: {} rows", rows.len());
            write_json(&dir.join("summary.json"), &json!({ "config": cfg_for_output(&cfg), "rows": rows }))?;
            println!("summary.json: written");
        }
    }
    if args.dump_sample {
        dump_samples(&cfg, dir)?;
        println!("sample dumps: {} sizes", cfg.n_list.len());
    }
    Ok(())
}

fn cfg_for_output(cfg: &SimulationConfig) -> SimulationConfig {
    let mut c = cfg.clone();
    c.workers = 1;
    c
}

fn bias_csv(rows: &[trimmed_edgeworth::montecarlo::BiasReport]) -> Result<String> {
    #[derive(serde::Serialize)]
    struct Row {
        n: usize,
        reps: usize,
        frac_alpha: f64,
        frac_beta: f64,
        mc_bias: f64,
        mc_standard_error: f64,
        beta_n: f64,
        z_score: f64,
    }
    let rows: Vec<Row> = rows
        .iter()
        .map(|r| Row {
            n: r.n,
            reps: r.reps,
            frac_alpha: r.frac_alpha,
            frac_beta: r.frac_beta,
            mc_bias: r.mc_bias,
            mc_standard_error: r.mc_standard_error,
            beta_n: r.beta_n,
            z_score: r.z_score,
        })
        .collect();
    Ok(csv_string(&rows)?)
}

pub fn diagnose(args: DiagnoseArgs) -> Result<()> {
    let which: Diagnostic = args.lemma.parse()?;
    let model = model_spec(&args.model)?.build()?;
    let levels = levels(&args.trim)?;
    if args.n_list.is_empty() {
        return Err(usage("--n-list is required"));
    }
    if args.reps < 100 {
        return Err(usage(format!("--reps = {} is below 100", args.reps)));
    }
    if args.workers == 0 {
        return Err(usage("--workers must be at least 1"));
    }
    for &n in &args.n_list {
        if n < 4 {
            return Err(usage(format!("sample size {n} is below 4")));
        }
        TrimSpec::from_levels(levels, n)?;
    }
    let report = remainder_study(&model, levels, &args.n_list, args.reps, args.seed, args.workers, which)?;
    write_csv(&args.out_dir.join("remainders.csv"), &report.rows)?;
    println!("remainders.csv: {} rows ({which})", report.rows.len());
    write_json(&args.out_dir.join("summary.json"), &report)?;
    println!(
        "summary.json: log-median slope {:.3}, p99 ratio {:.2}",
        report.log_median_slope, report.p99_ratio
    );
    Ok(())
}

pub fn population(args: PopulationArgs) -> Result<()> {
    let spec = model_spec(&args.model)?;
    let model = make_model(&spec.family, &spec.params)?;
    let levels = levels(&args.trim)?;
    let pop = compute_functionals(&model, levels)?;
    let at_n = match args.n {
        None => None,
        Some(n) => {
            let ts = TrimSpec::from_levels(levels, n)?;
            Some(json!({
                "n": n,
                "beta_n": bias_term(&pop, &ts),
                "normalized": ExpansionCoefficients::population(&pop, &ts, ExpansionKind::Normalized),
                "studentized": ExpansionCoefficients::population(&pop, &ts, ExpansionKind::Studentized),
            }))
        }
    };
    let mut value = serde_json::to_value(&pop)?;
    value["model"] = serde_json::to_value(&spec)?;
    if let Some(extra) = at_n {
        value["at_n"] = extra;
    }
    let text = json_string(&value)?;
    print!("{text}");
    if let Some(dir) = &args.out_dir {
        write_text(&PathBuf::from(dir).join("population.json"), &text)?;
    }
    Ok(())
}
