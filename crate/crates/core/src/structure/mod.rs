//! Isomorphism, minors, spikes, special points and clique extensions.

mod clique;
mod iso;
mod minor;
mod spikes;

pub use clique::{
    analyze_clique_extension, classify_extension_element, identify_clique, CircuitPair, Claim, CliqueAnalysis,
    CliqueIdentification, ElementClassification, Hypotheses, MixedPair,
};
pub use iso::{are_isomorphic, are_isomorphic_with_cap, find_embedding, preserves_independence, DEFAULT_ISO_CAP};
pub use minor::{
    has_minor, has_minor_brute_force, has_minor_with_cap, MinorWitness, DEFAULT_MINOR_CAP, MAX_PATTERN_SIZE,
};
pub use spikes::{
    classify_three_line_configuration, special_points, spike_tip_multiplicity, PointReport, SpecialPointReport,
    ThreeLineClass, TipMultiplicity,
};
