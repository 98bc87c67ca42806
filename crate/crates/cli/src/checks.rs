use std::collections::BTreeSet;
use std::path::Path;
use std::time::Instant;

use epsilon_core::fundmatrix::{
    build_a_theta, epsilon_determinant_check, flip_entry, global_sign, kernel_block_det_check,
    zero_pattern_ok, DeterminantReport, FreeSlotFilling,
};
use epsilon_core::gauss::{self, GaussConvention, RamifiedChar};
use epsilon_core::groupring::{trace_congruence_check, trace_factorization_check, CharValues, Character, GroupParams};
use epsilon_core::kgroup::{
    self, correction_star, correction_table, corrupt_epsilon, epsilon_closed, eta_ratio_check, theorem_verify_from_determinants,
    ArtinParam, KRep,
};
use epsilon_core::{lattice, residue, Error};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{Instance, RunConfig, Suite};
use crate::report::{CheckResult, Status};

/// Outcome of a single check before timing is attached.
pub enum Outcome {
    Pass(Value),
    Fail(Value),
    Skip(String),
}

impl Outcome {
    fn from_bool(ok: bool, witness: Value) -> Self {
        if ok {
            Outcome::Pass(witness)
        } else {
            Outcome::Fail(witness)
        }
    }

    fn from_result(r: Result<(bool, Value), Error>) -> Self {
        match r {
            Ok((ok, w)) => Self::from_bool(ok, w),
            Err(e @ (Error::SizeLimit(_) | Error::LevelTooLarge { .. })) => Outcome::Skip(e.to_string()),
            Err(e) => Outcome::Fail(json!({ "error": e.to_string() })),
        }
    }
}

pub fn timed(check_id: &str, params: Value, seed: u64, f: impl FnOnce() -> Outcome) -> CheckResult {
    let start = Instant::now();
    let outcome = f();
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let (status, witness) = match outcome {
        Outcome::Pass(w) => (Status::Pass, w),
        Outcome::Fail(w) => (Status::Fail, w),
        Outcome::Skip(why) => (Status::Skipped, json!({ "reason": why })),
    };
    CheckResult {
        check_id: check_id.to_string(),
        params,
        status,
        witness,
        seed,
        elapsed_ms,
    }
}

fn instance_json(i: &Instance) -> Value {
    json!({ "p": i.p, "m": i.m, "d": i.d })
}

pub fn char_values_json(values: &CharValues) -> Value {
    Value::Object(
        values
            .iter()
            .map(|(ch, x)| (ch.to_string(), Value::String(x.to_string())))
            .collect(),
    )
}

fn group_params(i: &Instance) -> Result<GroupParams, Error> {
    GroupParams::new(i.p, i.d, i.m)
}

fn within_level(cfg: &RunConfig, i: &Instance) -> Result<(), Error> {
    let level = epsilon_core::arith::lcm(i.p, i.d);
    if level > cfg.level_limit {
        return Err(Error::LevelTooLarge {
            level,
            limit: cfg.level_limit,
        });
    }
    Ok(())
}

pub fn groupring_checks(p: u64) -> Vec<CheckResult> {
    let params = json!({ "p": p });
    vec![
        timed("trace_factorization", params.clone(), 0, || {
            Outcome::from_result(trace_factorization_check(p).map(|(u, ok)| {
                (ok, json!({ "u": u, "augmentation": u.augmentation().to_string() }))
            }))
        }),
        timed("trace_congruence", params, 0, || {
            Outcome::from_result(trace_congruence_check(p).map(|ok| (ok, Value::Null)))
        }),
    ]
}

pub fn lattice_checks(p: u64, d: u64, pd_limit: u64) -> Vec<CheckResult> {
    vec![timed("kernel_generators", json!({ "p": p, "d": d }), 0, || {
        Outcome::from_result(
            lattice::kernel_generators_report(p, d, pd_limit).map(|r| (r.ok(), serde_json::to_value(&r).expect("serializable"))),
        )
    })]
}

/// Determinant of the flipped matrix compared with the closed form: the control
/// passes when the comparison fails.
fn flipped_control(params: &GroupParams, seed: u64) -> Result<(bool, Value), Error> {
    let a = build_a_theta(params, &FreeSlotFilling::random(params, seed))?;
    let closed = epsilon_closed(params).scalars();
    let flipped = flip_entry(&a).char_dets();
    let sign = global_sign(&flipped, &closed);
    Ok((sign.is_none(), json!({ "mutated_delta": sign })))
}

fn corrupted_control(params: &GroupParams, artin: ArtinParam, det: &DeterminantReport) -> Result<(bool, Value), Error> {
    let eps = match det.epsilon() {
        Some(v) => KRep::from_scalars(params, &v)?,
        None => epsilon_closed(params),
    };
    let bad = corrupt_epsilon(&eps, &Character::TRIVIAL)?;
    let report = kgroup::theorem_verify_with_epsilon(params, artin, &bad)?;
    let failed: Vec<&str> = report.steps.iter().filter(|s| !s.passed).map(|s| s.name.as_str()).collect();
    Ok((!report.passed(), json!({ "failed_steps": failed, "corrupted_character": "(0,0)" })))
}

/// Matrix and K-group checks for one instance, sharing the determinant computation.
pub fn instance_checks(cfg: &RunConfig, inst: &Instance) -> Vec<CheckResult> {
    let want_fm = cfg.suite.includes(Suite::Fundmatrix);
    let want_kg = cfg.suite.includes(Suite::Kgroup);
    let pj = instance_json(inst);
    let mut out = Vec::new();
    let params = match within_level(cfg, inst).and_then(|_| group_params(inst)) {
        Ok(p) => p,
        Err(e) => {
            let id = if want_fm { "epsilon_determinant" } else { "theorem_pipeline" };
            out.push(timed(id, pj, cfg.seed, || Outcome::from_result(Err(e))));
            return out;
        }
    };
    let seeds = cfg.seeds();
    let det_start = Instant::now();
    let det = epsilon_determinant_check(&params, &seeds);
    let det_ms = det_start.elapsed().as_millis() as u64;

    if want_fm {
        out.push(timed("kernel_block_det", pj.clone(), cfg.seed, || {
            Outcome::from_bool(
                kernel_block_det_check(&params),
                json!({ "sign": if params.m % 2 == 0 { 1 } else { -1 }, "b_exponent": params.mtilde as i64 - 1 }),
            )
        }));
        out.push(timed("generator_zero_pattern", pj.clone(), cfg.seed, || {
            Outcome::from_result(
                build_a_theta(&params, &FreeSlotFilling::random(&params, cfg.seed)).map(|a| (zero_pattern_ok(&a), Value::Null)),
            )
        }));
        let mut r = timed("epsilon_determinant", pj.clone(), cfg.seed, || match &det {
            Ok(rep) => Outcome::from_bool(
                rep.ok(),
                json!({
                    "delta": rep.delta,
                    "seeds": seeds,
                    "seed_independent": rep.seed_independent,
                    "determinants": rep.per_seed.first().map(|s| char_values_json(&s.dets)),
                }),
            ),
            Err(e) => Outcome::from_result(Err(e.clone())),
        });
        r.elapsed_ms += det_ms;
        out.push(r);
        out.push(timed("control_flipped_entry", pj.clone(), cfg.seed, || {
            Outcome::from_result(flipped_control(&params, cfg.seed))
        }));
    }

    if want_kg {
        out.push(timed("correction_term", pj.clone(), cfg.seed, || {
            let table = correction_table(&params);
            let star = correction_star(&params);
            Outcome::from_bool(table == star, json!({ "values": table }))
        }));
        let det = match det {
            Ok(d) => d,
            Err(e) => {
                out.push(timed("theorem_pipeline", pj, cfg.seed, || Outcome::from_result(Err(e))));
                return out;
            }
        };
        let k4s = cfg.k4_values(inst.p);
        for &k4 in &k4s {
            let pk = json!({ "p": inst.p, "m": inst.m, "d": inst.d, "k4": k4 });
            let artin = ArtinParam { k4 };
            out.push(timed("eta_ratio", pk.clone(), cfg.seed, || {
                Outcome::from_bool(eta_ratio_check(&params, artin), Value::Null)
            }));
            out.push(timed("theorem_pipeline", pk, cfg.seed, || {
                Outcome::from_result(
                    theorem_verify_from_determinants(&params, artin, &det)
                        .map(|r| (r.passed(), serde_json::to_value(&r).expect("serializable"))),
                )
            }));
        }
        let artin = ArtinParam { k4: k4s[0] };
        out.push(timed(
            "control_corrupted_epsilon",
            json!({ "p": inst.p, "m": inst.m, "d": inst.d, "k4": k4s[0] }),
            cfg.seed,
            || Outcome::from_result(corrupted_control(&params, artin, &det)),
        ));
    }
    out
}

pub fn residue_checks(inst: &Instance) -> Vec<CheckResult> {
    let (p, m, d) = (inst.p, inst.m as usize, inst.d as usize);
    let pj = instance_json(inst);
    let q = (p as u128).pow(m as u32);
    vec![
        timed("artin_schreier_divisibility", pj.clone(), 0, || {
            Outcome::from_result(residue::artin_schreier_divisibility_check(p, m, d).map(|ok| (ok, Value::Null)))
        }),
        timed("artin_schreier_roots", pj.clone(), 0, || {
            Outcome::from_result(residue::artin_schreier_roots_check(p, m, d).map(|ok| (ok, Value::Null)))
        }),
        timed("frobenius_shift", pj, 0, || {
            Outcome::from_result((|| {
                let tower = residue::Tower::new(p, m, d)?;
                let all: Vec<u128> = (1..q).collect();
                let bad: Vec<String> = residue::frobenius_shift_failures(&tower, &all)?
                    .iter()
                    .map(u128::to_string)
                    .collect();
                Ok((bad.is_empty(), json!({ "alpha1_checked": (q - 1).to_string(), "failing": bad })))
            })())
        }),
    ]
}

pub fn residue_basis_checks(p: u64, m: u64) -> Vec<CheckResult> {
    let q = (p as u128).pow(m as u32);
    vec![timed("residue_basis", json!({ "p": p, "m": m }), 0, || {
        Outcome::from_result((|| {
            let a = residue::trace_one_normal_basis(p, m as usize)?;
            let mut bad = Vec::new();
            for idx in 1..q {
                if !residue::residue_basis_check(p, m as usize, idx)? {
                    bad.push(idx.to_string());
                }
            }
            Ok((
                bad.is_empty(),
                json!({ "normal_element": a, "alpha1_checked": (q - 1).to_string(), "failing": bad }),
            ))
        })())
    })]
}

/// Calibrates at p = 3 and, when a persisted convention exists, checks that it
/// is the calibrated one. Returns the check and the convention to use.
pub fn calibration_check(cfg: &RunConfig) -> (CheckResult, Option<GaussConvention>) {
    let mut chosen = None;
    let result = timed("gauss_calibration", json!({ "p": 3, "coeff_bound": cfg.coeff_bound }), 0, || {
        let cal = match gauss::calibrate_and_search_alpha(3, cfg.coeff_bound) {
            Ok(c) => c,
            Err(e) => return Outcome::from_result(Err(e)),
        };
        let persisted = match cfg.convention_path.as_deref().map(load_or_store(cal.convention)) {
            Some(Ok(c)) => c,
            Some(Err(e)) => return Outcome::Fail(json!({ "error": e })),
            None => cal.convention,
        };
        chosen = Some(persisted);
        let ok = cal.ok && persisted == cal.convention;
        Outcome::from_bool(ok, serde_json::to_value(&cal).expect("serializable"))
    });
    (result, chosen)
}

fn load_or_store(calibrated: GaussConvention) -> impl Fn(&Path) -> Result<GaussConvention, String> {
    move |path| {
        if path.exists() {
            load_convention(path)
        } else {
            store_convention(path, &calibrated)?;
            Ok(calibrated)
        }
    }
}

pub fn load_convention(path: &Path) -> Result<GaussConvention, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let c: GaussConvention = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    GaussConvention::new(c.char_sign, c.exp_sign, c.artin_dir).map_err(|e| e.to_string())
}

pub fn store_convention(path: &Path, conv: &GaussConvention) -> Result<(), String> {
    let text = serde_json::to_string_pretty(conv).expect("serializable");
    std::fs::write(path, text + "\n").map_err(|e| format!("{}: {e}", path.display()))
}

pub fn gauss_checks(cfg: &RunConfig, p: u64, conv: &GaussConvention) -> Vec<CheckResult> {
    let pj = json!({ "p": p });
    let mut out = vec![timed("gauss_abs_square", pj.clone(), 0, || {
        Outcome::from_result((|| {
            let mut all = true;
            for c in GaussConvention::all() {
                for chi in RamifiedChar::all(p)?.iter().filter(|c| !c.is_trivial()) {
                    all &= gauss::abs_square_check(chi, &c)?;
                }
            }
            Ok((all, json!({ "conventions": 8, "characters": p - 1 })))
        })())
    })];
    for &d in &cfg.ds {
        out.push(timed("twist_identity", json!({ "p": p, "d": d }), 0, || {
            Outcome::from_result(gauss::twist_identity_check(p, conv, d).map(|ok| (ok, Value::Null)))
        }));
    }
    out.push(timed("inflation_trace", pj.clone(), cfg.seed, || {
        Outcome::from_result(gauss::inflation_trace_check(p, conv, cfg.seed, 5).map(|ok| (ok, json!({ "random_elements": 5 }))))
    }));
    out.push(timed("split_pair", pj.clone(), cfg.seed, || {
        Outcome::from_result(
            gauss::split_pair_check(p, conv, cfg.seed).map(|ok| (ok, json!({ "auxiliary_prime": gauss::auxiliary_prime(p) }))),
        )
    }));
    out.push(timed("sqrt_inv_diff_lattice", pj.clone(), 0, || {
        Outcome::from_result((|| {
            let lat = gauss::sqrt_inv_diff_lattice(p)?;
            let checks = lat.checks()?;
            Ok((checks.ok(p), serde_json::to_value(&checks).expect("serializable")))
        })())
    }));
    out.push(timed("normal_generator_search", json!({ "p": p, "coeff_bound": cfg.coeff_bound }), 0, || {
        Outcome::from_result((|| {
            let lat = gauss::sqrt_inv_diff_lattice(p)?;
            let Some(alpha) = gauss::verify_convention(p, conv, cfg.coeff_bound)? else {
                return Ok((false, json!({ "alpha": null })));
            };
            let generates = gauss::normal_generator_check(&lat, &alpha, conv)?;
            Ok((generates, json!({ "alpha": alpha, "alpha_value": lat.element(&alpha)?.to_string() })))
        })())
    }));
    out
}

/// Every selected check over the grid, in a fixed order.
pub fn run_checks(cfg: &RunConfig) -> (Vec<CheckResult>, Option<GaussConvention>) {
    type Job<'a> = Box<dyn Fn() -> Vec<CheckResult> + Send + Sync + 'a>;
    let mut jobs: Vec<Job> = Vec::new();
    if cfg.suite.includes(Suite::Groupring) {
        for &p in &cfg.primes {
            jobs.push(Box::new(move || groupring_checks(p)));
        }
    }
    if cfg.suite.includes(Suite::Lattice) {
        let pairs: BTreeSet<(u64, u64)> = cfg.instances.iter().map(|i| (i.p, i.d)).collect();
        for (p, d) in pairs {
            jobs.push(Box::new(move || lattice_checks(p, d, cfg.pd_limit)));
        }
    }
    if cfg.suite.includes(Suite::Fundmatrix) || cfg.suite.includes(Suite::Kgroup) {
        for inst in &cfg.instances {
            jobs.push(Box::new(move || instance_checks(cfg, inst)));
        }
    }
    if cfg.suite.includes(Suite::Residue) {
        for inst in &cfg.instances {
            jobs.push(Box::new(move || residue_checks(inst)));
        }
        let pairs: BTreeSet<(u64, u64)> = cfg.instances.iter().map(|i| (i.p, i.m)).collect();
        for (p, m) in pairs {
            jobs.push(Box::new(move || residue_basis_checks(p, m)));
        }
    }
    let mut convention = None;
    let mut tail = Vec::new();
    if cfg.suite.includes(Suite::Gauss) {
        let (cal, conv) = calibration_check(cfg);
        tail.push(cal);
        convention = conv;
    }
    let mut results: Vec<CheckResult> = jobs.par_iter().map(|job| job()).flatten().collect();
    results.extend(tail);
    if let Some(conv) = convention {
        let gauss: Vec<CheckResult> = cfg
            .primes
            .par_iter()
            .map(|&p| gauss_checks(cfg, p, &conv))
            .flatten()
            .collect();
        results.extend(gauss);
    }
    (results, convention)
}
