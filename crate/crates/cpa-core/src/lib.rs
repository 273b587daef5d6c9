#![cfg_attr(not(feature = "std"), no_std)]

//! Compositional phoneme approximation.
//!
//! Approximates phonemes missing from a learner's native inventory as short
//! sequences of native segments, working in a ternary phonological feature
//! space. Vowels are approximated by composing the backness of one native
//! vowel with the height of another; consonants by searching allophonic
//! variation rules whose realized segment lands near the target. The crate
//! also renders Hangul-style grapheme cues for the approximations, estimates
//! vowel formants from audio via LPC, and scores production experiments.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the default `std`
//! feature switches the float math onto the standard library and implements
//! [`core::error::Error`]-style trait support for error types.

extern crate alloc;

pub mod acoustics;
pub mod bundled;
pub mod composer;
pub mod grapheme;
pub mod inventory;
mod math;
pub mod phonfeat;
pub mod report;
pub mod scoring;
