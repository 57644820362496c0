use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use ksat_core::degree_io::{emit_degree_sequence, parse_degree_sequence};
use ksat_core::dimacs::{emit_dimacs_with_comments, parse_dimacs};
use ksat_core::{build_type_table, clause_type_counts, Formula, Literal};
use ksat_experiments as exp;
use ksat_gen as gen;
use ksat_moments::{self as moments, ClauseWeights, TypeEntry, TypeProfile};
use serde::Serialize;
use serde_json::json;

use crate::args::*;
use crate::error::CliError;

type Result<T> = std::result::Result<T, CliError>;

pub fn dispatch(cli: &Cli) -> Result<()> {
    let c = &cli.common;
    match &cli.command {
        Command::Gen(a) => gen_cmd(c, a),
        Command::Census(a) => census_cmd(c, a),
        Command::Marginals(a) => marginals_cmd(c, a),
        Command::Moments(a) => moments_cmd(c, a),
        Command::Saddle(a) => saddle_cmd(c, a),
        Command::Bounds(a) => bounds_cmd(c, a),
        Command::Experiment(a) => experiment_cmd(c, a),
    }
}

fn write_output(common: &Common, text: &str) -> Result<()> {
    match &common.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn read_formula(path: &Path) -> Result<Formula> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    Ok(parse_dimacs(&text)?)
}

fn clause_count(size: &Size) -> Result<usize> {
    match (size.m, size.r) {
        (Some(m), None) => Ok(m),
        (None, Some(r)) => Ok(gen::clauses_for_density(r, size.n)?),
        _ => Err(CliError::Usage("exactly one of --m and --r is required".into())),
    }
}

fn bits(values: &[bool]) -> String {
    values.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn model_name(m: Model) -> &'static str {
    match m {
        Model::Uniform => "uniform",
        Model::TwoStep => "two-step",
        Model::Typed => "typed",
        Model::Planted => "planted",
        Model::Degrees => "degrees",
    }
}

fn gen_cmd(common: &Common, a: &GenArgs) -> Result<()> {
    let (k, n) = (a.size.k, a.size.n);
    let m = clause_count(&a.size)?;
    let mut rng = gen::stream_rng(common.seed, 0);
    let model = model_name(a.model);
    let mut planted = None;
    let (formula, degrees) = match a.model {
        Model::Uniform => (Some(gen::sample_uniform_with(n, m, k, &mut rng)?), None),
        Model::TwoStep => {
            let d = gen::sample_degree_sequence_with(n, m, k, &mut rng)?;
            (Some(gen::sample_formula_given_degrees_with(&d, &mut rng)?), None)
        }
        Model::Typed => {
            let d = gen::sample_degree_sequence_with(n, m, k, &mut rng)?;
            let draft = gen::sample_formula_given_degrees_with(&d, &mut rng)?;
            let counts = clause_type_counts(&draft, &build_type_table(&d)?);
            (Some(gen::sample_formula_given_degrees_and_types_with(&d, &counts, &mut rng)?), None)
        }
        Model::Planted => {
            let (f, sigma) = gen::sample_planted_pair_with(n, m, k, &mut rng)?;
            planted = Some(bits(sigma.values()));
            (Some(f), None)
        }
        Model::Degrees => (None, Some(gen::sample_degree_sequence_with(n, m, k, &mut rng)?)),
    };

    let meta = json!({
        "model": model,
        "seed": common.seed,
        "k": k,
        "n": n,
        "m": m,
        "planted": planted,
        "build_id": exp::BUILD_ID,
    });
    if let Some(path) = &a.meta {
        fs::write(path, to_json(&meta)?)?;
    }

    let body = match (&formula, &degrees) {
        (Some(f), _) => {
            let mut comments = vec![format!("model {model} seed {}", common.seed)];
            if let Some(p) = &planted {
                comments.push(format!("planted {p}"));
            }
            emit_dimacs_with_comments(f, &comments)
        }
        (None, Some(d)) => emit_degree_sequence(d),
        (None, None) => unreachable!("every model produces an artefact"),
    };
    match common.format {
        Format::Text => write_output(common, &body),
        Format::Json => {
            let key = if formula.is_some() { "dimacs" } else { "degrees" };
            let mut obj = meta;
            obj[key] = json!(body);
            write_output(common, &to_json(&obj)?)
        }
    }
}

fn census_cmd(common: &Common, a: &CensusArgs) -> Result<()> {
    let f = read_formula(&a.input)?;
    let c = ksat_census::census(&f, a.cap)?;
    let spectrum = if a.spectrum { Some(ksat_census::pair_distance_spectrum(&f, a.cap)?) } else { None };
    let (marginals, distance) = if c.count > 0 {
        let d = c.mean_distance_to_majority()?;
        (Some(c.marginals()?), Some(d))
    } else {
        (None, None)
    };
    match common.format {
        Format::Json => {
            let obj = json!({
                "n": f.n(),
                "m": f.m(),
                "k": f.k(),
                "count": c.count,
                "marginals": marginals,
                "majority": bits(c.majority.values()),
                "mean_distance_to_majority": distance.map(|d| d.to_string()),
                "mean_distance_to_majority_f64": distance.map(|d| *d.numer() as f64 / *d.denom() as f64),
                "spectrum": spectrum,
            });
            write_output(common, &to_json(&obj)?)
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "n = {}, m = {}, k = {}", f.n(), f.m(), f.k());
            let _ = writeln!(s, "satisfying assignments: {}", c.count);
            if let (Some(mu), Some(d)) = (&marginals, distance) {
                let _ = writeln!(s, "mean distance to majority vote: {d}");
                let _ = writeln!(s, "{:>5} {:>10}", "var", "marginal");
                for (i, v) in mu.iter().enumerate() {
                    let _ = writeln!(s, "{:>5} {:>10.6}", i + 1, v);
                }
            }
            if let Some(sp) = &spectrum {
                let _ = writeln!(s, "pair distance spectrum: {sp:?}");
            }
            write_output(common, &s)
        }
    }
}

fn marginals_cmd(common: &Common, a: &MarginalsArgs) -> Result<()> {
    let f = read_formula(&a.input)?;
    let d = f.degree_sequence();
    let table = build_type_table(&d)?;
    let maj = ksat_marginals::majority_vote(&d);
    let rows: Vec<serde_json::Value> = d
        .pairs()
        .iter()
        .enumerate()
        .map(|(v, &(p, q))| {
            json!({
                "var": v + 1,
                "d_pos": p,
                "d_neg": q,
                "p": table.literal_value(Literal::positive(v)),
                "good": table.is_good(v),
                "majority": maj.get(v),
            })
        })
        .collect();
    let w = ksat_marginals::majority_weight(&d)?;
    let skew = ksat_marginals::sigma_skew(&d, &table)?;
    let summary = json!({
        "n": f.n(),
        "m": f.m(),
        "k": f.k(),
        "w_maj": w.to_string(),
        "sigma_skew": skew.to_string(),
        "majority_balanced": ksat_marginals::is_balanced(&maj, &f),
    });
    let mut s = String::new();
    match common.format {
        Format::Json => {
            for r in &rows {
                let _ = writeln!(s, "{r}");
            }
            let _ = writeln!(s, "{summary}");
        }
        Format::Text => {
            let _ = writeln!(s, "{:>5} {:>6} {:>6} {:>10} {:>5} {:>4}", "var", "d+", "d-", "p", "good", "maj");
            for (v, &(p, q)) in d.pairs().iter().enumerate() {
                let _ = writeln!(
                    s,
                    "{:>5} {:>6} {:>6} {:>10.6} {:>5} {:>4}",
                    v + 1,
                    p,
                    q,
                    table.literal_value(Literal::positive(v)),
                    table.is_good(v),
                    u8::from(maj.get(v))
                );
            }
            let _ = writeln!(s, "w_maj = {w}, sigma_skew = {skew}");
        }
    }
    write_output(common, &s)
}

fn parse_type_spec(spec: &str, k: usize, r: f64) -> Result<TypeProfile> {
    match spec {
        "balanced" => Ok(TypeProfile::balanced(k)),
        "bp" => Ok(TypeProfile::two_type(k, r)),
        list => {
            let entries = list
                .split(',')
                .map(|item| {
                    let parts: Vec<f64> = item
                        .split(':')
                        .map(|x| x.trim().parse::<f64>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|e| CliError::Usage(format!("type spec entry {item:?}: {e}")))?;
                    match parts[..] {
                        [value, pi, var_fraction] => Ok(TypeEntry { value, pi, var_fraction }),
                        _ => Err(CliError::Usage(format!("type spec entry {item:?} is not t:pi:var_fraction"))),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(TypeProfile::new(k, entries))
        }
    }
}

fn moments_cmd(common: &Common, a: &MomentsArgs) -> Result<()> {
    let k = a.k;
    if k < 2 {
        return Err(CliError::Usage("moments needs k >= 2".into()));
    }
    let r = a.r.unwrap_or_else(|| ksat_bounds::r_bp(k));
    let profile = parse_type_spec(&a.type_spec, k, r)?;
    let first = moments::first_moment_exponent(&profile, &ClauseWeights::Product { r })?;

    let ell = a.ell.clone().unwrap_or_else(|| vec![0.5; k]);
    if ell.len() != k {
        return Err(CliError::Usage(format!("--ell has {} entries, expected {k}", ell.len())));
    }
    let omega = a.omega.clone().unwrap_or_else(|| ell.iter().map(|l| l * l).collect());
    let pair = moments::solve_pair_q(&ell, &omega)?;
    let gradient = moments::pair_gradient(&ell, &omega, a.grad_step)?;
    let gradient_max_abs = gradient.iter().fold(0f64, |m, g| m.max(g.abs()));
    let hessian = a.hessian_step.map(|h| moments::check_hessian_bound(&ell, h)).transpose()?;
    let offdiag = (k >= 8 && a.offdiag_grid > 0)
        .then(|| moments::verify_offdiag(k, r, a.offdiag_grid))
        .transpose()?;

    let report = json!({
        "k": k,
        "r": r,
        "first_moment": first,
        "pair": pair,
        "gradient": gradient,
        "gradient_max_abs": gradient_max_abs,
        "hessian": hessian,
        "offdiag": offdiag,
    });
    let text = match common.format {
        Format::Json => to_json(&report)?,
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "k = {k}, r = {r}");
            let _ = writeln!(
                s,
                "first moment: exponent = {:.6e} (2^k·exponent = {:.6}), reference {:.6e}, max residual {:.1e}",
                first.exponent, first.scaled, first.reference, first.max_residual
            );
            let _ = writeln!(
                s,
                "pair: P = {:.6e}, residual {:.1e}, |grad|_inf = {:.3e}",
                pair.exponent, pair.residual, gradient_max_abs
            );
            if let Some(h) = &hessian {
                let _ = writeln!(s, "hessian: max |entry| = {:.3e}, bound {:.3e}, within = {}", h.max_abs, h.bound, h.within_bound);
            }
            if let Some(o) = &offdiag {
                let _ = writeln!(
                    s,
                    "offdiag: {} grid points, max {:?}, passed = {}",
                    o.grid_points, o.max_value, o.passed
                );
            }
            s
        }
    };
    write_output(common, &text)?;
    if let Some(o) = &offdiag {
        if !o.passed {
            return Err(CliError::Failure(format!(
                "off-diagonal exponent is non-negative at x = {:?}",
                o.first_violation
            )));
        }
    }
    Ok(())
}

fn saddle_cmd(common: &Common, a: &SaddleArgs) -> Result<()> {
    let pairs: Vec<(u64, u64)> = match (&a.degrees, a.n, a.m) {
        (Some(path), _, _) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            parse_degree_sequence(&text)?.pairs().to_vec()
        }
        (None, Some(n), Some(m)) => gen::sample_degree_sequence(n, m, a.k, common.seed)?.pairs().to_vec(),
        _ => return Err(CliError::Usage("give --degrees FILE or both --n and --m".into())),
    };
    let simple = ksat_saddle::coeff_simple_asymptotic(&pairs)?;
    let total: u64 = pairs.iter().map(|&(x, y)| x + y).sum();
    let exact = ksat_saddle::exact_coefficient(&pairs, total / 2);
    let exact_f = exact.to_string().parse::<f64>().unwrap_or(f64::INFINITY);
    let mut report = json!({
        "n": pairs.len(),
        "total": total,
        "simple": {
            "exact": exact.to_string(),
            "asymptotic": simple.value,
            "ratio": exact_f / simple.value,
            "details": simple,
        },
    });
    if let Some(eps) = a.eps {
        let asym = ksat_saddle::coeff_triple_asymptotic(&pairs, eps)?;
        let exact = if pairs.len() <= ksat_saddle::MAX_TRIPLE_N {
            Some(ksat_saddle::exact_triple_coefficient(&pairs, eps)?)
        } else {
            None
        };
        let ratio = exact.as_ref().map(|e| e.to_string().parse::<f64>().unwrap_or(f64::INFINITY) / asym.value);
        report["triple"] = json!({
            "eps": eps,
            "exact": exact.map(|e| e.to_string()),
            "asymptotic": asym.value,
            "ratio": ratio,
            "details": asym,
        });
    }
    let text = match common.format {
        Format::Json => to_json(&report)?,
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "N = {}, M = {total}", pairs.len());
            let _ = writeln!(s, "single: exact = {}, asymptotic = {:.6e}, ratio = {:.6}", report["simple"]["exact"], simple.value, exact_f / simple.value);
            if let Some(t) = report.get("triple") {
                let _ = writeln!(s, "pair (eps = {}): exact = {}, asymptotic = {:.6e}, ratio = {}", t["eps"], t["exact"], t["asymptotic"].as_f64().unwrap_or(f64::NAN), t["ratio"]);
            }
            s
        }
    };
    write_output(common, &text)
}

fn bounds_cmd(common: &Common, a: &BoundsArgs) -> Result<()> {
    let b = ksat_bounds::threshold_bounds(a.k)?;
    let text = match common.format {
        Format::Json => to_json(&b)?,
        Format::Text => format!(
            "k = {}\n  r_upper = {:.4}\n  r_bp    = {:.4}\n  r_bal   = {:.4}\n  note: {}\n",
            b.k, b.r_upper, b.r_bp, b.r_bal, b.caveat
        ),
    };
    write_output(common, &text)
}

fn write_jsonl<T: Serialize, S: Serialize>(path: &Path, trials: &[T], summary: &S) -> Result<()> {
    let mut s = String::new();
    for t in trials {
        let _ = writeln!(s, "{}", serde_json::to_string(t)?);
    }
    let _ = writeln!(s, "{}", serde_json::to_string(summary)?);
    fs::write(path, s)?;
    Ok(())
}

fn experiment_cmd(common: &Common, a: &ExperimentArgs) -> Result<()> {
    let (k, n) = (a.size.k, a.size.n);
    let m = clause_count(&a.size)?;
    let seed = common.seed;
    let summary_json = match a.name {
        ExperimentName::Skew => {
            let rep = exp::run_majority_skew(&exp::SkewParams { k, n, m, trials: a.trials, seed, cap: a.cap })?;
            let summary = json!({ "meta": rep.meta, "params": rep.params, "summary": rep.summary });
            if let Some(p) = &a.json_out {
                write_jsonl(p, &rep.trials, &summary)?;
            }
            summary
        }
        ExperimentName::Correlation => {
            let rep = exp::run_marginal_correlation(&exp::CorrelationParams { k, n, m, trials: a.trials, seed, cap: a.cap })?;
            let summary = json!({ "meta": rep.meta, "params": rep.params, "summary": rep.summary });
            if let Some(p) = &a.json_out {
                write_jsonl(p, &rep.trials, &summary)?;
            }
            summary
        }
        ExperimentName::Wmaj => {
            let rep = exp::run_wmaj_fluctuation(&exp::WmajParams { k, n, m, trials: a.trials, seed, bins: 20 })?;
            let summary = json!({ "meta": rep.meta, "params": rep.params, "summary": rep.summary });
            if let Some(p) = &a.json_out {
                write_jsonl(p, &rep.trials, &summary)?;
            }
            summary
        }
        ExperimentName::GeneratorKs => {
            let rep = exp::run_generator_ks(&exp::GeneratorKsParams { k, n, m, trials: a.trials, seed })?;
            let summary = serde_json::to_value(&rep)?;
            if let Some(p) = &a.json_out {
                write_jsonl::<(), _>(p, &[], &summary)?;
            }
            summary
        }
    };
    let text = match common.format {
        Format::Json => to_json(&summary_json)?,
        Format::Text => {
            let mut s = String::new();
            if let Some(obj) = summary_json.get("summary").and_then(|v| v.as_object()) {
                for (key, v) in obj {
                    if key != "histogram" {
                        let _ = writeln!(s, "{key}: {v}");
                    }
                }
            } else {
                let _ = writeln!(s, "{summary_json}");
            }
            s
        }
    };
    write_output(common, &text)
}
