//! Identity checking: evaluation, substitution suites, centers and
//! multilinear T-ideal membership.

pub mod center;
pub mod eval;
pub mod linalg;
pub mod presets;
pub mod subst;
pub mod tideal;

pub use center::{center_membership, CenterKind};
pub use eval::{evaluate, koszul_sign};
pub use presets::{preset, preset_names, Identity, IdentityPreset};
pub use subst::{verify_by_substitution, verify_generic, verify_with, Mode, SubstOptions, SubstReport, Verdict};
pub use tideal::{is_consequence, tideal_multilinear_span, ConsequenceCertificate, ConsequenceVerdict, MultilinearMatrix};
