//! One function per subcommand, each turning a resolved config into a result.

use std::collections::BTreeMap;
use std::path::PathBuf;

use gaplab_core::constants::{derive_c_lg, derive_c_lg_at, ComponentConstants, Derivation, CONSTANT_KEYS, DERIVED_PARAM_NAMES};
use gaplab_core::construction::{build_prime_sets, random_construction, survivor_stats, Overrides, Strategy};
use gaplab_core::maynard::{check_cij_bound, maximize_ratio};
use gaplab_core::scale::Scale;
use gaplab_core::sieve_lab::{
    brun_titchmarsh_check, brun_titchmarsh_sweep, gap_records, max_gap_gk, mertens_grid, primorial,
    random_coprime_pairs, ub_pair_count,
};
use gaplab_core::trace::DerivationTrace;
use gaplab_core::zero_region::{derive_chain, selberg_cub, ZeroRegionInputs, ZERO_REGION_KEYS};
use gaplab_core::{Interval, LabError};
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::config::{parse_f64, parse_u64, RunConfig};
use crate::report::{self, float, integer, interval, rational, Format};
use crate::CliError;

pub struct CommandOutput {
    pub result: Value,
    pub warnings: Vec<String>,
    /// Present for derivations, whose CSV form is the trace table.
    pub trace: Option<DerivationTrace>,
    pub members: Option<(PathBuf, String)>,
}

impl CommandOutput {
    fn plain(result: Value) -> Self {
        CommandOutput { result, warnings: Vec::new(), trace: None, members: None }
    }

    pub fn render(&self, cfg: &RunConfig, format: Format) -> String {
        let env = report::envelope(cfg, self.result.clone(), &self.warnings);
        match (format, &self.trace) {
            (Format::Json, _) => report::to_json(&env),
            (Format::Csv, Some(t)) => report::trace_csv(cfg, t),
            (Format::Csv, None) => report::flat_csv(&env),
        }
    }
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Lab(LabError::Parse(msg.into()))
}

pub fn dispatch(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    match cfg.subcommand.as_str() {
        "derive" => derive(cfg),
        "zero-constants" => zero_constants(cfg),
        "maynard" => maynard(cfg),
        "gaps" => gaps(cfg),
        "mertens" => mertens(cfg),
        "bt-check" => bt_check(cfg),
        "ub-pairs" => ub_pairs(cfg),
        "construct" => construct(cfg),
        other => Err(bad(format!("unknown subcommand `{other}`"))),
    }
}

fn param_value(d: &Derivation, name: &str) -> Value {
    let p = &d.params;
    let iv = match name {
        "c" => &p.c,
        "A" => &p.a,
        "c1" => &p.c1,
        "epsilon" => &p.epsilon,
        "EN_lower" => &p.en_lower,
        "EN2_upper" => &p.en2_upper,
        "prob_lower" => &p.prob_lower,
        "c_LG" => &p.c_lg,
        "C_low" => &p.c_low,
        "C_high" => &p.c_high,
        "m" => return json!(p.m),
        "A_prime" => &p.a_prime,
        "epsilon0" => &p.epsilon0,
        "u" => &p.u,
        "sigma_y_coeff" => &p.sigma_y_coeff,
        _ => return Value::Null,
    };
    interval(iv)
}

fn derive(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let k = cfg.u64("k")?;
    let overrides: BTreeMap<String, String> = CONSTANT_KEYS
        .iter()
        .filter_map(|key| cfg.optional(key).map(|v| (key.to_string(), v.to_string())))
        .collect();
    let consts = ComponentConstants::from_overrides(&overrides)?;
    let d = match cfg.optional("log2_x") {
        None => derive_c_lg(&consts, k)?,
        Some(_) => derive_c_lg_at(&consts, k, &Scale::from_log2(Interval::from_ratio(&cfg.rational("log2_x")?))?)?,
    };
    let params: Map<String, Value> = DERIVED_PARAM_NAMES.iter().map(|n| (n.to_string(), param_value(&d, n))).collect();
    let result = json!({
        "k": d.k,
        "c_LG": interval(&d.params.c_lg),
        "bound": "G_k(X) >= (c_LG/k^2) log X log2 X log4 X / log3 X",
        "params": params,
        "trace": report::trace(&d.trace),
    });
    Ok(CommandOutput { result, warnings: Vec::new(), trace: Some(d.trace), members: None })
}

fn zero_constants(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let map: BTreeMap<String, String> =
        ZERO_REGION_KEYS.iter().map(|k| (k.to_string(), cfg.raw(k).to_string())).collect();
    let inputs = ZeroRegionInputs::from_overrides(&map)?;
    let chain = derive_chain(&inputs)?;
    let x = cfg.u64("x")?;
    let (_, ratio) = selberg_cub(x)?;
    let z = &chain.constants;
    let result = json!({
        "R": interval(&z.r),
        "R_source": "external literal, truncated",
        "R1": interval(&z.r1),
        "c_ZFR": rational(&z.c_zfr),
        "a": rational(&z.a),
        "c_ZD": z.c_zd,
        "D_PAP": interval(&chain.d_pap),
        "C_PAP": interval(&chain.c_pap),
        "C_UB": interval(&chain.c_ub),
        "mertens_square_ratio": { "x": x, "value": float(ratio) },
        "trace": report::trace(&chain.trace),
    });
    Ok(CommandOutput { result, warnings: Vec::new(), trace: Some(chain.trace), members: None })
}

fn matrix(m: &[Vec<BigRational>]) -> Value {
    Value::Array(m.iter().map(|row| Value::Array(row.iter().map(rational).collect())).collect())
}

fn maynard(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let (r, degree) = (cfg.usize("r")?, cfg.u64("degree")?);
    let degree = u32::try_from(degree).map_err(|_| bad("degree too large"))?;
    let res = maximize_ratio(r, degree)?;
    let c_ij = cfg.f64("c_IJ")?;
    let check = if r >= 2 {
        let c = check_cij_bound(r, res.ratio, c_ij)?;
        json!({ "c_IJ": float(c_ij), "bound": float(c_ij * (r as f64).ln() / r as f64), "margin": float(c.margin), "pass": c.pass })
    } else {
        Value::Null
    };
    let mut result = json!({
        "r": r,
        "degree": degree,
        "basis_size": res.basis.len(),
        "ratio": float(res.ratio),
        "ratio_exact": rational(&res.ratio_exact),
        "eigenvalue": float(res.eigenvalue),
        "constant_function_ratio": float(2.0 / (r as f64 + 1.0)),
        "pivot_spread": float(res.pivot_spread),
        "basis": res.basis,
        "coefficients": res.coefficients.iter().map(rational).collect::<Vec<_>>(),
        "c_IJ_check": check,
    });
    if cfg.bool("gram")? {
        result["gram_I"] = matrix(&res.gram_i);
        result["gram_J"] = matrix(&res.gram_j);
    }
    Ok(CommandOutput::plain(result))
}

fn gaps(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let (x, k) = (cfg.u64("x")?, cfg.usize("k")?);
    let g = max_gap_gk(x, k)?;
    let mut result = json!({ "x": x, "k": k, "G_k": g.value, "witness": g.witness });
    if cfg.bool("records")? {
        let recs = gap_records(x, k)?;
        result["records"] =
            Value::Array(recs.iter().map(|r| json!({ "x": r.x, "value": r.value, "witness": r.witness })).collect());
    }
    Ok(CommandOutput::plain(result))
}

fn list_u64(key: &str, text: &str) -> Result<Vec<u64>, CliError> {
    text.split(',').map(|s| parse_u64(key, s.trim())).collect()
}

fn mertens(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let xs = list_u64("xs", cfg.raw("xs"))?;
    let rows = mertens_grid(&xs)?;
    let result = json!({
        "rows": rows.iter().map(|m| json!({ "x": m.x, "product": float(m.product), "ratio": float(m.ratio) })).collect::<Vec<_>>(),
    });
    Ok(CommandOutput::plain(result))
}

fn bt_check(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let x = cfg.u64("x")?;
    let rows = match (cfg.optional("q"), cfg.optional("a")) {
        (Some(q), Some(a)) => vec![brun_titchmarsh_check(x, parse_u64("q", q)?, parse_u64("a", a)?)?],
        (None, None) => brun_titchmarsh_sweep(x, cfg.u64("q_max")?)?,
        _ => return Err(bad("give both q and a, or neither")),
    };
    let worst = rows.iter().map(|r| r.count as f64 / r.bound).fold(0.0, f64::max);
    let result = json!({
        "x": x,
        "checked": rows.len(),
        "all_hold": rows.iter().all(|r| r.holds),
        "max_count_over_bound": float(worst),
        "rows": rows.iter().map(|r| json!({ "q": r.q, "a": r.a, "count": r.count, "bound": float(r.bound), "holds": r.holds })).collect::<Vec<_>>(),
    });
    Ok(CommandOutput::plain(result))
}

fn parse_u128(key: &str, v: &str) -> Result<u128, CliError> {
    v.parse::<u128>().map_err(|_| bad(format!("`{key}` expects a nonnegative integer, got `{v}`")))
}

fn ub_pairs(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let (x, b0, z) = (cfg.u64("x")?, cfg.u64("b0")?, cfg.u64("z")?);
    let p = primorial(x) / b0.max(1);
    let p = u128::try_from(p).map_err(|_| CliError::Lab(LabError::Resource("P(x)/B0 exceeds 128 bits".into())))?;
    let pairs = match (cfg.optional("a"), cfg.optional("b")) {
        (Some(a), Some(b)) => vec![(parse_u128("a", a)?, parse_u128("b", b)?)],
        (None, None) => random_coprime_pairs(p, cfg.usize("pairs")?, cfg.u64("seed")?)?,
        _ => return Err(bad("give both a and b, or neither")),
    };
    let rows = pairs.iter().map(|&(a, b)| ub_pair_count(x, b0, z, a, b)).collect::<Result<Vec<_>, _>>()?;
    let mut warnings = Vec::new();
    if rows.iter().any(|r| !r.precondition_met) {
        warnings.push("log Z >= 10 log x fails; the bound is evaluated outside its asymptotic range".to_string());
    }
    let result = json!({
        "x": x,
        "b0": b0,
        "P": integer(p),
        "z": z,
        "all_hold": rows.iter().all(|r| r.holds),
        "rows": rows.iter().map(|r| json!({
            "a": integer(r.a),
            "b": integer(r.b),
            "count": r.count,
            "bound": float(r.bound),
            "holds": r.holds,
            "precondition_met": r.precondition_met,
            "short_circuit": r.short_circuit,
        })).collect::<Vec<_>>(),
    });
    Ok(CommandOutput { result, warnings, trace: None, members: None })
}

fn bands(text: &str) -> Result<Vec<(f64, f64)>, CliError> {
    text.split(',')
        .map(|part| {
            let (a, b) = part.trim().split_once(':').ok_or_else(|| bad(format!("band `{part}` is not alpha:beta")))?;
            Ok((parse_f64("bands", a)?, parse_f64("bands", b)?))
        })
        .collect()
}

fn construct(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let (x, b0) = (cfg.u64("x")?, cfg.u64("b0")?);
    let ov = Overrides { c: cfg.opt_f64("c")?, s_min: cfg.opt_f64("s_min")?, y: cfg.opt_f64("y")?, z: cfg.opt_f64("z")? };
    let strategy = Strategy::parse(cfg.raw("strategy"))?;
    let band_list = bands(cfg.raw("bands"))?;
    let (a_pop, eps) = (cfg.f64("A")?, cfg.f64("eps")?);
    let sys = build_prime_sets(x, b0, &ov)?;
    let system = json!({
        "x": x,
        "y": float(sys.y),
        "z": float(sys.z),
        "c": float(sys.c),
        "s_min": float(sys.s_min),
        "b0": b0,
        "b0_in_range": sys.b0_in_range,
        "regime": sys.regime.label(),
        "S_size": sys.s.len(),
        "P_size": sys.p_set.len(),
        "Q_size": sys.q.len(),
    });
    let mut result = json!({ "system": system });
    let mut members = None;
    if !cfg.bool("evaluate_only")? {
        let (asg, t) = random_construction(&sys, cfg.u64("seed")?, strategy)?;
        let rows = band_list
            .iter()
            .map(|&(al, be)| survivor_stats(&t, sys.y, al, be, a_pop, x as f64, eps))
            .collect::<Result<Vec<_>, _>>()?;
        result["strategy"] = json!(strategy.name());
        result["fingerprint"] = json!(asg.fingerprint());
        result["provenance"] = json!(t.provenance.name());
        result["T_size"] = json!(t.len());
        result["bands"] = Value::Array(
            rows.iter()
                .map(|b| json!({
                    "alpha": float(b.alpha),
                    "beta": float(b.beta),
                    "count": b.count,
                    "upper_5A": float(b.upper),
                    "lower_A": float(b.lower),
                    "short_interval_upper": float(b.short_upper),
                }))
                .collect(),
        );
        if let Some(path) = cfg.optional("members") {
            let text: String = t.members.iter().map(|n| format!("{n}\n")).collect();
            members = Some((PathBuf::from(path), text));
        }
    }
    Ok(CommandOutput { result, warnings: sys.warnings.clone(), trace: None, members })
}
