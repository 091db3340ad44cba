#![allow(dead_code)]

//! Property checks shared by the property tests and the acceptance run.
//!
//! Every check drives a deterministic proptest runner and returns the
//! first counterexample as an error string.

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use qet_core::analysis::{
    analytic_conditional, analytic_h1_v, observable_level_set, post_round_paulis, theta_level_set,
};
use qet_core::hamiltonian::{
    exact_ground_state, general_theta, minimal_ground_state, minimal_terms, minimal_theta, GeneralChainModel,
    MinimalModel,
};
use qet_core::protocol::{
    build_qsd_ensembles, qet_ensemble, qst_teleport, run_qip_round, Actor, Party, PartyId, ProverStrategy, QipSetup,
    Role, Session,
};
use qet_core::quantum::{
    branch_measure, haar_random_unitary, state_fidelity, Outcome, Pauli, PauliString, Statevector, C64,
};
use qet_core::rng::{child_rng, seeded};

pub type Check = fn() -> Result<(), String>;

pub const ALL: [(&str, Check); 12] = [
    ("norm preservation", norm_preservation),
    ("branch-weight completeness", branch_completeness),
    ("ground-state term zeroing", ground_state_zeroing),
    ("eigen residual", eigen_residual),
    ("LOCC discipline", locc_discipline),
    ("theta consistency", theta_consistency),
    ("ensemble vs closed form", oracle_equivalence),
    ("conditional sign structure", sign_structure),
    ("level-set residuals", level_set_residuals),
    ("teleportation exactness", teleport_exactness),
    ("transcript eigenvalues and message budget", transcript_validity),
    ("discrimination ensembles", qsd_ensembles),
];

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(Config { cases, failure_persistence: None, ..Config::default() }, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, TestCaseError> {
    r.map_err(|e| fail(e.to_string()))
}

fn param() -> impl Strategy<Value = f64> {
    0.05f64..5.0
}

fn state(n: usize) -> impl Strategy<Value = Statevector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n)
        .prop_filter("non-zero", |v| v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-3)
        .prop_map(|v| Statevector::from_amplitudes(v.into_iter().map(|(a, b)| C64::new(a, b)).collect()).unwrap())
}

fn pauli() -> impl Strategy<Value = Pauli> {
    prop_oneof![Just(Pauli::X), Just(Pauli::Y), Just(Pauli::Z)]
}

pub fn norm_preservation() -> Result<(), String> {
    let strat = (1usize..=4).prop_flat_map(|n| (state(n), 0..n, 0..n, any::<u64>()));
    run(64, strat, |(psi, a, b, seed)| {
        let mut rng = seeded(seed);
        let targets: Vec<usize> = if a == b { vec![a] } else { vec![a, b] };
        let u = ok(haar_random_unitary(1 << targets.len(), &mut rng))?;
        let out = ok(psi.apply_unitary(&u, &targets))?;
        prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-12, "norm {}", out.norm_sqr());
        Ok(())
    })
}

pub fn branch_completeness() -> Result<(), String> {
    let strat = (2usize..=4).prop_flat_map(|n| (state(n), 0..n, pauli()));
    run(64, strat, |(psi, site, p)| {
        let n = psi.n_qubits();
        let b = ok(branch_measure(&psi, &ok(PauliString::single(n, site, p))?))?;
        let total = b[0].probability + b[1].probability;
        prop_assert!((total - 1.0).abs() < 1e-12, "weights sum to {total}");
        for r in &b {
            prop_assert!((r.post_state.norm_sqr() - 1.0).abs() < 1e-12);
        }
        Ok(())
    })
}

pub fn ground_state_zeroing() -> Result<(), String> {
    run(64, (param(), param()), |(h, k)| {
        let m = ok(MinimalModel::new(h, k))?;
        let g = minimal_ground_state(&m);
        for t in minimal_terms(&m).as_list() {
            let e = ok(t.expectation(&g))?;
            prop_assert!(e.abs() < 1e-12, "term expectation {e} at ({h}, {k})");
        }
        Ok(())
    })
}

pub fn eigen_residual() -> Result<(), String> {
    let strat = (2usize..=6).prop_flat_map(|n| {
        (prop::collection::vec(-2.0f64..2.0, n), prop::collection::vec(-2.0f64..2.0, n - 1))
    });
    run(32, strat, |(z, xx)| {
        let chain = ok(GeneralChainModel::new(z, xx))?;
        let gs = ok(exact_ground_state(&chain))?;
        let h = ok(chain.observable())?;
        // <g|H^2|g> - E^2 = |H g - E g|^2 for Hermitian H.
        let dense = h.to_dense();
        let v = nalgebra::DVector::from_column_slice(gs.state.amplitudes());
        let r = (&dense * &v - &v * C64::new(gs.energy, 0.0)).norm();
        prop_assert!(r <= 1e-9, "residual {r}");
        Ok(())
    })
}

pub fn locc_discipline() -> Result<(), String> {
    let op = (0u32..2, 0usize..4, 0u8..3);
    run(64, prop::collection::vec(op, 1..20), |ops| {
        let mut s = ok(Session::new(
            ok(Statevector::basis(4))?,
            vec![Party::new(0, Role::Prover, [0, 1]), Party::new(1, Role::Verifier, [2, 3])],
            vec![],
            vec![],
        ))?;
        let mut allowed = 0;
        for (who, site, gate) in ops {
            let actor = Actor::Party(PartyId(who));
            let r = match gate {
                0 => s.hadamard(actor, site),
                1 => s.pauli_x(actor, site),
                _ => s.pauli_z(actor, site),
            };
            let owns = (site < 2) == (who == 0);
            prop_assert_eq!(r.is_ok(), owns);
            allowed += usize::from(owns);
        }
        ok(s.audit())?;
        prop_assert_eq!(s.events().len(), allowed);
        Ok(())
    })
}

pub fn theta_consistency() -> Result<(), String> {
    run(64, (param(), param()), |(h, k)| {
        let m = ok(MinimalModel::new(h, k))?;
        let closed = minimal_theta(&m);
        let sa = ok(PauliString::single(2, 0, Pauli::X))?;
        let sb = ok(PauliString::single(2, 1, Pauli::Y))?;
        let general = ok(general_theta(&minimal_terms(&m).as_list(), &sa, &sb, &minimal_ground_state(&m)))?;
        prop_assert!((general.theta - closed.theta).abs() < 1e-10);
        let eb = |t: f64| analytic_h1_v(&m, t).eb;
        prop_assert!((closed.receiver_energy() - eb(closed.theta)).abs() < 1e-10);
        prop_assert!(eb(closed.theta) < 0.0);
        let step = 1e-6;
        let slope = (eb(closed.theta + step) - eb(closed.theta - step)) / (2.0 * step);
        prop_assert!(slope.abs() < 1e-6, "slope {slope}");
        Ok(())
    })
}

pub fn oracle_equivalence() -> Result<(), String> {
    run(100, (param(), param(), 0.0f64..std::f64::consts::TAU, any::<bool>()), |(h, k, theta, faithful)| {
        let m = ok(MinimalModel::new(h, k))?;
        let terms = minimal_terms(&m);
        let ens = ok(qet_ensemble(&minimal_ground_state(&m), 0, 1, theta, faithful))?;
        let (mut h1, mut v) = (0.0, 0.0);
        for mu in Outcome::BOTH {
            let nu = if faithful { mu } else { mu.flipped() };
            let r = analytic_conditional(&m, theta, mu, nu);
            h1 += r.h1;
            v += r.v;
        }
        prop_assert!((ok(ens.expectation(&terms.field_b))? - h1).abs() < 1e-10);
        prop_assert!((ok(ens.expectation(&terms.coupling))? - v).abs() < 1e-10);
        if faithful {
            let e = ok(ens.expectation(&terms.receiver_energy()))?;
            prop_assert!((e - analytic_h1_v(&m, theta).eb).abs() < 1e-10);
        }
        Ok(())
    })
}

pub fn sign_structure() -> Result<(), String> {
    run(128, (param(), param()), |(h, k)| {
        let m = ok(MinimalModel::new(h, k))?;
        let theta = minimal_theta(&m).theta;
        let (mut h1c, mut h1i, mut vc, mut vi) = (0.0, 0.0, 0.0, 0.0);
        for mu in Outcome::BOTH {
            let c = analytic_conditional(&m, theta, mu, mu);
            let i = analytic_conditional(&m, theta, mu, mu.flipped());
            h1c += c.h1;
            vc += c.v;
            h1i += i.h1;
            vi += i.v;
        }
        prop_assert!(vc <= 0.0 && vi >= 0.0 && h1c >= 0.0 && h1i <= 0.0, "({h1c}, {h1i}, {vc}, {vi})");
        Ok(())
    })
}

pub fn level_set_residuals() -> Result<(), String> {
    run(64, (param(), param(), 1usize..6), |(h, k, n)| {
        let m = ok(MinimalModel::new(h, k))?;
        let sol = minimal_theta(&m);
        for p in ok(theta_level_set(sol.theta, n))? {
            let s = minimal_theta(&ok(p.model())?).sin_2theta();
            prop_assert!((s - sol.sin_2theta()).abs() <= 1e-9);
        }
        let (x, z) = post_round_paulis(&m, sol.theta);
        let pairs = ok(observable_level_set(x, z, sol.theta, n))?;
        prop_assert!(((pairs[0].k / pairs[0].h) - k / h).abs() <= 1e-9 * (1.0 + k / h));
        for p in pairs {
            let (px, pz) = post_round_paulis(&ok(p.model())?, sol.theta);
            prop_assert!((px - x).abs() <= 1e-6 && (pz - z).abs() <= 1e-6);
        }
        Ok(())
    })
}

pub fn teleport_exactness() -> Result<(), String> {
    run(64, (state(1), any::<u64>()), |(psi, seed)| {
        let register = ok(psi.tensor(&ok(Statevector::basis(2))?))?;
        let mut s = ok(Session::new(
            register,
            vec![Party::new(0, Role::Prover, [0, 1]), Party::new(1, Role::Verifier, [2])],
            vec![(1, 2)],
            vec![(PartyId(0), PartyId(1))],
        ))?;
        let c = ok(qst_teleport(&mut s, 0, 1, 2, &mut seeded(seed)))?;
        let expected = ok(ok(Statevector::computational(2, (c.z_bit as usize) << 1 | c.x_bit as usize))?.tensor(&psi))?;
        let f = ok(state_fidelity(s.state(), &expected))?;
        prop_assert!((f - 1.0).abs() < 1e-12, "fidelity {f}");
        ok(s.audit())?;
        Ok(())
    })
}

pub fn transcript_validity() -> Result<(), String> {
    run(24, (param(), param(), any::<u64>(), any::<bool>()), |(h, k, seed, faithful)| {
        let m = ok(MinimalModel::new(h, k))?;
        let mut setup = QipSetup::honest(m);
        setup.prover = ProverStrategy { faithful, ..setup.prover.clone() };
        for shot in 0..8 {
            let (rec, round) = ok(run_qip_round(&setup, shot, &mut child_rng(seed, shot)))?;
            let dh = rec.h1_sample - m.field_constant();
            let dv = rec.v_sample - m.coupling_constant();
            prop_assert!((dh.abs() - h).abs() < 1e-12 && (dv.abs() - 2.0 * k).abs() < 1e-12);
            prop_assert_eq!(round.session().bits_sent(qet_core::protocol::qip::VERIFIER), 1);
            ok(round.session().audit())?;
        }
        Ok(())
    })
}

pub fn qsd_ensembles() -> Result<(), String> {
    run(64, (param(), param(), 0.0f64..std::f64::consts::TAU), |(h, k, theta)| {
        let m = ok(MinimalModel::new(h, k))?;
        let (r1, r2) = ok(build_qsd_ensembles(&m, theta))?;
        let terms = minimal_terms(&m);
        for (ens, faithful) in [(r1, true), (r2, false)] {
            prop_assert!((ens.total_weight() - 1.0).abs() < 1e-12);
            let (mut h1, mut v) = (0.0, 0.0);
            for mu in Outcome::BOTH {
                let nu = if faithful { mu } else { mu.flipped() };
                let r = analytic_conditional(&m, theta, mu, nu);
                h1 += r.h1;
                v += r.v;
            }
            prop_assert!((ok(ens.expectation(&terms.field_b))? - h1).abs() < 1e-12);
            prop_assert!((ok(ens.expectation(&terms.coupling))? - v).abs() < 1e-12);
        }
        Ok(())
    })
}
