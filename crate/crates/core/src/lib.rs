//! Decentralized health-IoT protocol stack over a deterministic
//! discrete-event simulator.
//!
//! The crate wires synthetic patient telemetry through an edge
//! anomaly-detection pipeline, a federated-learning layer with
//! differential privacy and Paillier secure aggregation, a permissioned
//! hash-chained ledger (round-robin proof-of-authority, plus a
//! proof-of-work baseline sealer), and a deterministic policy engine for
//! consent-gated access control. The [`scenario`] module runs the whole
//! stack under three architectures (edge+PoA, centralized cloud, PoW
//! chain) on the [`netsim`] kernel and reports latency, throughput, and
//! energy side by side.
//!
//! Everything is seeded: a scenario config plus a seed reproduces every
//! event, metric, and artifact byte for byte.

pub mod contracts;
pub mod crypto;
pub mod edge;
pub mod fedlearn;
pub mod ledger;
pub mod netsim;
pub mod scenario;
pub mod telemetry;
pub(crate) mod wire;
