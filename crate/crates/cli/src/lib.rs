//! Library half of the `bpa` command: the value cache and the subcommand
//! bodies, kept out of `main` so they are testable in-process.

pub mod cache;
pub mod commands;

/// Bad arguments; maps to exit status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Exit status for an error escaping a subcommand.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    let usage = err.chain().any(|e| {
        e.downcast_ref::<UsageError>().is_some()
            || matches!(
                e.downcast_ref::<bpa_core::Error>(),
                Some(bpa_core::Error::InvalidArgument(_) | bpa_core::Error::Domain { .. })
            )
    });
    if usage {
        EXIT_USAGE
    } else {
        EXIT_FAILURE
    }
}
