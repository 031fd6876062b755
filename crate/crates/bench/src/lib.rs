//! Shared fixtures for the benchmarks.

use csm_core::{CartanData, WeylGroup};

pub fn symmetric(n: usize) -> WeylGroup {
    WeylGroup::symmetric(n).expect("small symmetric group")
}

pub fn labelled(label: &str) -> WeylGroup {
    WeylGroup::new(CartanData::from_label(label).expect("known label")).expect("finite type")
}
