//! Orbit monoids: matrices over finite semirings indexed by region vertices.

mod compute;
mod element;
mod export;
mod lyapunov;
mod semiring;

pub use compute::{direct_path_orbit, edge_orbit, path_orbit, Abstraction, EdgeOrbits, Kind};
pub use element::{idempotent_power, Matrix, OrbitElement};
pub use export::{export_dot, orbit_dump, OrbitDump};
pub use lyapunov::{scc_decomposition, NotCyclic, SccFamily};
pub use semiring::{Freedom, Semiring, Speed};
