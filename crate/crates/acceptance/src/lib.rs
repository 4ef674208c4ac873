//! Holds the acceptance suite (`cargo test -p pairkit-tests --test acceptance`).
