//! Cyclically equivariant neural belief-propagation decoders for BCH and
//! punctured Reed–Muller codes.
//!
//! * [`galois`] — GF(2^m) and GF(2)[x] arithmetic.
//! * [`codes`] — code construction and parity matrices.
//! * [`tanner`] — Tanner graphs with canonical edge ordering.
//! * [`decoder`] — vanilla, per-edge-weighted and shift-shared BP decoders.
//! * [`train`] — gradients and the training loop.
//! * [`channel`] — BPSK/AWGN.
//! * [`listdec`] — affine-permutation list decoding.
//! * [`harness`] — Monte-Carlo measurement, weight files, CSV/SVG output.

pub mod bits;
pub mod channel;
pub mod codes;
pub mod decoder;
pub mod error;
pub mod galois;
pub mod harness;
pub mod listdec;
pub mod tanner;
pub mod train;

pub use bits::BitMatrix;
pub use codes::{CodeId, CyclicCode};
pub use decoder::{bp_decode, boost, hard_decision, neural_bp_decode, Decoder, Variant, WeightBank};
pub use error::{Error, Result};
pub use galois::{BinaryPolynomial, GaloisField};
pub use listdec::{list_decode, AffinePermutationSet, FailedBranch};
pub use tanner::TannerGraph;
