//! LOCC-checked protocol sessions and the interactive proof, state
//! discrimination and multi-prover runs built on them.

pub mod qip;
pub mod qmip;
pub mod qsd;
pub mod rotation;
pub mod session;
pub mod teleport;
pub mod transcript;

pub use qip::{
    decide, qet_ensemble, qet_round, run_direct, run_qip, run_qip_round, AcceptRule, ProverStrategy, QetRound,
    QipRound, QipSetup,
};
pub use qmip::{prover_seed, run_qmip, QmipProver, QmipResult};
pub use qsd::{build_qsd_ensembles, run_qsd, run_qsd_at, QsdChoice, QsdResult};
pub use rotation::ConditionalRotation;
pub use session::{Actor, Basis, Channel, ClassicalMessage, Event, Party, PartyId, Payload, Role, Session, Verdict};
pub use teleport::{qst_teleport, Corrections};
pub use transcript::{read_jsonl, write_jsonl, Decision, Estimate, ProtocolTranscript, ShotRecord};
