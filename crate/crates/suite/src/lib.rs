//! Acceptance criteria for `quasicomm`; run with `cargo test -p quasicomm-suite`.
