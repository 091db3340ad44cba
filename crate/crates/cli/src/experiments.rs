//! One function per subcommand. Each writes its data files into the output
//! directory and returns a JSON summary for the manifest.

use crate::config::{ExperimentConfig, ChainConfig};
use qet_core::analysis::{
    analytic_row, chain_qet_report, delta_grid, delta_sensitivity, observable_level_set, post_round_paulis,
    simulated_row, soundness_sweep, theta_level_set, write_csv_file, ParamPair, TABLE_MODELS,
};
use qet_core::hamiltonian::{minimal_ground_state, minimal_theta, GeneralChainModel, MinimalModel};
use qet_core::protocol::{run_qip, run_qmip, run_qsd, QipSetup, QmipProver, QsdChoice};
use qet_core::quantum::state_fidelity;
use qet_core::rng::derive_seed;
use qet_core::Result;
use serde::Serialize;
use serde_json::{json, Value};
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

pub struct Outcome {
    pub summary: Value,
    pub files: Vec<PathBuf>,
}

fn model(cfg: &ExperimentConfig) -> Result<MinimalModel> {
    MinimalModel::new(cfg.h, cfg.k)
}

fn jsonl(path: &Path, t: &qet_core::protocol::ProtocolTranscript) -> Result<()> {
    t.write_jsonl(BufWriter::new(File::create(path)?))
}

pub fn qip(cfg: &ExperimentConfig) -> Result<Outcome> {
    if let Some(chain) = &cfg.chain {
        return qip_chain(cfg, chain);
    }
    let mut setup = QipSetup::honest(model(cfg)?);
    setup.rule = cfg.rule;
    let t = run_qip(&setup, cfg.n_shot, cfg.seed)?;
    let path = cfg.out.join("transcript.jsonl");
    jsonl(&path, &t)?;
    let (e, h1, v) = (t.energy(), t.h1(), t.v());
    Ok(Outcome {
        summary: json!({
            "decision": t.decision,
            "theta": setup.prover.theta,
            "mean_energy": e.mean,
            "std_error": e.std_error,
            "z_score": e.z_score(),
            "mean_h1": h1.mean,
            "mean_v": v.mean,
            "n_shot": e.n,
        }),
        files: vec![path],
    })
}

#[derive(Serialize)]
struct ChainRow {
    n_sites: usize,
    site_a: usize,
    site_b: usize,
    ground_energy: f64,
    theta: f64,
    xi: f64,
    eta: f64,
    energy_closed: f64,
    energy_ensemble: f64,
}

fn qip_chain(cfg: &ExperimentConfig, chain: &ChainConfig) -> Result<Outcome> {
    let model = GeneralChainModel::new(chain.z.clone(), chain.xx.clone())?;
    let rep = chain_qet_report(&model, 0, 1)?;
    let row = ChainRow {
        n_sites: model.n_sites(),
        site_a: 0,
        site_b: 1,
        ground_energy: rep.ground_energy,
        theta: rep.theta,
        xi: rep.xi,
        eta: rep.eta,
        energy_closed: rep.energy_closed,
        energy_ensemble: rep.energy_ensemble,
    };
    let path = cfg.out.join("chain.csv");
    write_csv_file(&[row], &path)?;
    Ok(Outcome {
        summary: json!({
            "n_sites": model.n_sites(),
            "theta": rep.theta,
            "receiver_energy": rep.energy_closed,
            "ensemble_energy": rep.energy_ensemble,
            "negative": rep.energy_closed < 0.0,
        }),
        files: vec![path],
    })
}

#[derive(Serialize)]
struct QsdRow {
    game: u64,
    choice: QsdChoice,
    guess: QsdChoice,
    h1_guess: QsdChoice,
    v_mean: f64,
    v_std_error: f64,
    h1_mean: f64,
    h1_std_error: f64,
}

pub fn qsd(cfg: &ExperimentConfig) -> Result<Outcome> {
    let m = model(cfg)?;
    let mut rows = Vec::new();
    let mut files = Vec::new();
    for (c, choice) in [QsdChoice::Q1, QsdChoice::Q2].into_iter().enumerate() {
        for game in 0..cfg.n_games {
            let seed = derive_seed(cfg.seed, 2 * game + c as u64);
            let res = run_qsd(&m, choice, cfg.n_shot, seed)?;
            if cfg.n_games == 1 {
                let path = cfg.out.join(format!("qsd_{choice:?}.jsonl").to_lowercase());
                jsonl(&path, &res.transcript)?;
                files.push(path);
            }
            rows.push(QsdRow {
                game,
                choice,
                guess: res.guess,
                h1_guess: res.h1_guess,
                v_mean: res.v.mean,
                v_std_error: res.v.std_error,
                h1_mean: res.h1.mean,
                h1_std_error: res.h1.std_error,
            });
        }
    }
    let correct = |c: QsdChoice| rows.iter().filter(|r| r.choice == c && r.guess == c).count();
    let summary = json!({
        "games_per_choice": cfg.n_games,
        "correct_q1": correct(QsdChoice::Q1),
        "correct_q2": correct(QsdChoice::Q2),
    });
    let path = cfg.out.join("qsd.csv");
    write_csv_file(&rows, &path)?;
    files.insert(0, path);
    Ok(Outcome { summary, files })
}

#[derive(Serialize)]
struct QmipRow {
    prover: usize,
    site_a: usize,
    site_b: usize,
    decision: qet_core::protocol::Decision,
    mean_energy: f64,
    std_error: f64,
}

pub fn qmip(cfg: &ExperimentConfig) -> Result<Outcome> {
    let m = model(cfg)?;
    let provers: Vec<QmipProver> = (0..cfg.n_provers)
        .map(|p| {
            let mut setup = QipSetup::honest(m);
            setup.rule = cfg.rule;
            QmipProver { sites: vec![2 * p, 2 * p + 1], setup }
        })
        .collect();
    let res = run_qmip(&provers, cfg.n_shot, cfg.seed)?;
    let mut files = Vec::new();
    let mut rows = Vec::new();
    for (p, t) in res.transcripts.iter().enumerate() {
        let path = cfg.out.join(format!("prover_{p}.jsonl"));
        jsonl(&path, t)?;
        files.push(path);
        let e = t.energy();
        rows.push(QmipRow {
            prover: p,
            site_a: 2 * p,
            site_b: 2 * p + 1,
            decision: t.decision,
            mean_energy: e.mean,
            std_error: e.std_error,
        });
    }
    let path = cfg.out.join("qmip.csv");
    write_csv_file(&rows, &path)?;
    files.insert(0, path);
    Ok(Outcome { summary: json!({ "decisions": res.decisions() }), files })
}

pub fn soundness(cfg: &ExperimentConfig) -> Result<Outcome> {
    let res = soundness_sweep(&model(cfg)?, cfg.n_unitaries, cfg.n_thetas, cfg.seed)?;
    let path = cfg.out.join("attacks.csv");
    write_csv_file(&res.samples, &path)?;
    let mean_fidelity = res.samples.iter().map(|s| s.fidelity).sum::<f64>() / res.samples.len() as f64;
    Ok(Outcome {
        summary: json!({
            "negative_fraction": res.negative_fraction,
            "n_samples": res.samples.len(),
            "mean_fidelity": mean_fidelity,
            "control_energy": res.control.energy,
            "control_fidelity": res.control.fidelity,
        }),
        files: vec![path],
    })
}

pub fn delta_sweep(cfg: &ExperimentConfig) -> Result<Outcome> {
    let reports = delta_sensitivity(&model(cfg)?, &delta_grid(-cfg.delta_span, cfg.delta_span, cfg.n_deltas));
    let best = reports
        .iter()
        .min_by(|a, b| a.eb.total_cmp(&b.eb))
        .expect("grid is non-empty");
    let path = cfg.out.join("delta.csv");
    write_csv_file(&reports, &path)?;
    Ok(Outcome {
        summary: json!({ "argmin_delta": best.delta, "min_energy": best.eb }),
        files: vec![path],
    })
}

pub fn table1(cfg: &ExperimentConfig) -> Result<Outcome> {
    let mut rows = Vec::new();
    for (i, &(h, k)) in TABLE_MODELS.iter().enumerate() {
        let m = MinimalModel::new(h, k)?;
        rows.push(analytic_row(&m));
        for (j, n) in [100u64, 1000, 10_000].into_iter().enumerate() {
            rows.push(simulated_row(&m, n, derive_seed(cfg.seed, (3 * i + j) as u64))?);
        }
    }
    let path = cfg.out.join("table1.csv");
    write_csv_file(&rows, &path)?;
    Ok(Outcome { summary: json!({ "rows": rows.len() }), files: vec![path] })
}

#[derive(Serialize)]
struct LevelRow {
    set: &'static str,
    k: f64,
    h: f64,
    theta: f64,
    xx: f64,
    z: f64,
    fidelity_to_first: f64,
}

pub fn level_set(cfg: &ExperimentConfig) -> Result<Outcome> {
    let m = model(cfg)?;
    let theta = minimal_theta(&m).theta;
    let (x, z) = post_round_paulis(&m, theta);
    let mut rows = Vec::new();
    let sets: [(&'static str, Vec<ParamPair>); 2] = [
        ("theta", theta_level_set(theta, cfg.n_samples)?),
        ("observable", observable_level_set(x, z, theta, cfg.n_samples)?),
    ];
    for (name, pairs) in &sets {
        let first = minimal_ground_state(&pairs[0].model()?);
        for p in pairs {
            let pm = p.model()?;
            let (px, pz) = post_round_paulis(&pm, theta);
            rows.push(LevelRow {
                set: name,
                k: p.k,
                h: p.h,
                theta: minimal_theta(&pm).theta,
                xx: px,
                z: pz,
                fidelity_to_first: state_fidelity(&first, &minimal_ground_state(&pm))?,
            });
        }
    }
    let path = cfg.out.join("level_set.csv");
    write_csv_file(&rows, &path)?;
    Ok(Outcome {
        summary: json!({ "theta": theta, "xx": x, "z": z, "pairs": rows.len() }),
        files: vec![path],
    })
}
