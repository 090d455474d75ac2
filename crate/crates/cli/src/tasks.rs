//! Task dispatch: each scenario task maps to one verifier in the core
//! crate. Errors are captured per task and never abort siblings.

use crate::scenario::{Compiled, TaskDecl};
use dualis_core::algebra::module::ModuleElt;
use dualis_core::duality::{
    theta_base_change, theta_transitivity, verdier_theta, verdier_trace_form, FiniteFlatAlgebra,
    ResidueData, VerdierData,
};
use dualis_core::local_cohomology::{
    lc_tensor_check, CechData, ExtData, FractionContext, KoszulData,
};
use dualis_core::{CheckOutcome, Polynomial, Scalar, Witness};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

/// One line of output: verdict, evidence and timing for a single task.
#[derive(Debug, Clone)]
pub struct Report {
    pub scenario: String,
    pub task: String,
    pub status: Status,
    pub witness: Option<Witness>,
    pub note: String,
    pub ms: u128,
}

fn merge(parts: Vec<(&str, CheckOutcome)>) -> CheckOutcome {
    let passed = parts.iter().all(|(_, o)| o.passed);
    let note = parts
        .iter()
        .map(|(n, o)| format!("{n}: {}", o.note))
        .collect::<Vec<_>>()
        .join("; ");
    let witness = Witness::map(
        parts
            .iter()
            .map(|(n, o)| (*n, o.witness.clone()))
            .collect(),
    );
    if passed {
        CheckOutcome::pass(witness, note)
    } else {
        CheckOutcome::fail(witness, note)
    }
}

fn powered(c: &Compiled) -> Vec<Polynomial> {
    c.t.iter()
        .zip(&c.alpha)
        .map(|(p, &a)| c.ring.nf(&p.pow(a)))
        .collect()
}

fn need_map<'a>(c: &'a Compiled, task: &str) -> Result<&'a dualis_core::RingMap, String> {
    c.maps
        .first()
        .map(|(_, m)| m)
        .ok_or_else(|| format!("task {task} needs a `map` declaration"))
}

/// A deterministic pseudorandom ring element with small support,
/// driven by the run seed.
fn random_poly(c: &Compiled, rng: &mut ChaCha8Rng) -> Polynomial {
    let arity = c.ring.arity();
    let mut p = Polynomial::zero(arity);
    let terms = rng.gen_range(1..=3);
    for _ in 0..terms {
        let expo: Vec<u32> = (0..arity).map(|_| rng.gen_range(0..=2)).collect();
        let mut coeff = rng.gen_range(-3i64..=3);
        if coeff == 0 {
            coeff = 1;
        }
        p = p.add(&Polynomial::monomial(
            arity,
            expo,
            Scalar::from_i64(c.ring.field(), coeff),
        ));
    }
    c.ring.nf(&p)
}

fn parse_in(ring: &dualis_core::Ring, what: &str, text: &str) -> Result<Polynomial, String> {
    ring.parse(text).map_err(|e| format!("{what} `{text}`: {e}"))
}

fn run_inner(c: &Compiled, task: &TaskDecl, seed: u64) -> Result<CheckOutcome, String> {
    let err = |e: dualis_core::AlgebraError| e.to_string();
    match task.name.as_str() {
        "pairing" => {
            let rd = ResidueData::new(&c.ring, &c.t, &c.alpha).map_err(err)?;
            Ok(rd.pairing_unimodular())
        }
        "residue" => {
            let g_text = task.arg("g").ok_or("task residue needs g=<poly>")?;
            let g = parse_in(&c.ring, "residue numerator", g_text)?;
            let rd = ResidueData::new(&c.ring, &c.t, &c.alpha).map_err(err)?;
            let value = rd.residue(&g);
            let base = rd.base();
            let oracle = rd.trace_consistency(&g);
            let mut outcome = merge(vec![("trace_oracle", oracle)]);
            if let Witness::Map(entries) = &mut outcome.witness {
                entries.insert(0, ("value".to_string(), Witness::text(base.display(&value))));
            }
            if let Some(expect) = task.arg("expect") {
                let want = base.nf(&parse_in(&base, "expected residue", expect)?);
                if value != want {
                    outcome.passed = false;
                    outcome.note = format!(
                        "residue is {} but the scenario expects {}",
                        base.display(&value),
                        base.display(&want)
                    );
                }
            }
            Ok(outcome)
        }
        "local-duality" => {
            let rd = ResidueData::new(&c.ring, &c.t, &c.alpha).map_err(err)?;
            Ok(rd.local_duality_truncated())
        }
        "theta" => {
            let g = need_map(c, "theta")?;
            let fa = FiniteFlatAlgebra::new(&c.ring, &powered(c)).map_err(err)?;
            let td = theta_base_change(&fa, g).map_err(err)?;
            let mut parts = vec![("base_change", td.report)];
            if c.maps.len() >= 2 {
                let tt = theta_transitivity(&fa, g, &c.maps[1].1).map_err(err)?;
                parts.push(("transitivity", tt));
            }
            Ok(merge(parts))
        }
        "residue-bc" => {
            let g = need_map(c, "residue-bc")?;
            let rd = ResidueData::new(&c.ring, &c.t, &c.alpha).map_err(err)?;
            let (_, outcome) = dualis_core::duality::residue_base_change(&rd, g).map_err(err)?;
            Ok(outcome)
        }
        "cech-sign" => {
            let sign_text = task
                .arg("expect-sign")
                .ok_or("task cech-sign needs expect-sign=+1 or -1")?;
            let sign: i64 = match sign_text {
                "+1" | "1" => 1,
                "-1" => -1,
                other => return Err(format!("expect-sign must be +1 or -1, got `{other}`")),
            };
            let num = match task.arg("num") {
                Some(text) => parse_in(&c.ring, "numerator", text)?,
                None => c.ring.one(),
            };
            let e: u32 = match task.arg("e") {
                Some(text) => text
                    .parse()
                    .map_err(|_| format!("e must be a nonnegative integer, got `{text}`"))?,
                None => 1,
            };
            let cd = CechData::new(&c.ring, c.t.clone(), 1).map_err(err)?;
            let top = cd.localized(ModuleElt::unit(1, c.ring.arity(), 0, num), e);
            cd.connecting_vs_phi(&top, sign).map_err(err)
        }
        "verdier" => {
            let form = task.arg("form").unwrap_or("diagonal");
            match form {
                "diagonal" => {
                    let vd = VerdierData::new(&c.ring).map_err(err)?;
                    let mut parts = vec![("normalization", vd.normalization().map_err(err)?)];
                    if let Some((_, g)) = c.maps.first() {
                        let vt = verdier_theta(&c.ring, &c.t, &c.alpha, g).map_err(err)?;
                        parts.push(("theta_in_coordinates", vt));
                    }
                    Ok(merge(parts))
                }
                "trace" => {
                    let g = need_map(c, "verdier form=trace")?;
                    let fa = FiniteFlatAlgebra::new(&c.ring, &powered(c)).map_err(err)?;
                    verdier_trace_form(&fa, g).map_err(err)
                }
                other => Err(format!("form must be diagonal or trace, got `{other}`")),
            }
        }
        "koszul-ext" => {
            let kd = KoszulData::new(&c.ring, c.t.clone(), c.alpha.clone()).map_err(err)?;
            let ed = ExtData::new(&kd, 1).map_err(err)?;
            Ok(merge(vec![
                ("vanishing_below_top", ed.vanishing_below_top()),
                ("top_identification", ed.top_iso()),
            ]))
        }
        "lc-tensor" => {
            let n: usize = match task.arg("samples") {
                Some(text) => text
                    .parse()
                    .map_err(|_| format!("samples must be an integer, got `{text}`"))?,
                None => 4,
            };
            let ctx = FractionContext::new(&c.ring, c.t.clone(), 1).map_err(err)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let samples: Vec<ModuleElt> = (0..n)
                .map(|_| ModuleElt::unit(1, c.ring.arity(), 0, random_poly(c, &mut rng)))
                .collect();
            Ok(lc_tensor_check(&ctx, &c.alpha, &samples))
        }
        other => Err(format!("unknown task `{other}`")),
    }
}

pub fn run_task(scenario: &str, c: &Compiled, task: &TaskDecl, seed: u64) -> Report {
    let start = Instant::now();
    let (status, witness, note) = match run_inner(c, task, seed) {
        Ok(outcome) => {
            let status = if outcome.passed {
                Status::Pass
            } else {
                Status::Fail
            };
            (status, Some(outcome.witness), outcome.note)
        }
        Err(msg) => (Status::Error, None, msg),
    };
    Report {
        scenario: scenario.to_string(),
        task: task.name.clone(),
        status,
        witness,
        note,
        ms: start.elapsed().as_millis(),
    }
}
