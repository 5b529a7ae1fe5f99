//! Witnesses, parsimonious certificates, and the accept/reject sides of the
//! protocols, including the combined protocol over the full constraint
//! system.

mod certificate;
mod combined;
mod witness;

pub use certificate::{
    alice_accept, bob_accept, candidate_rs, certificate_space_size, choose_valid_witness,
    cost_bits, encode_certificate, enumerate_certificates, floor_log2, prover_certificate,
    prover_certificate_with, range_split, Certificate, TieBreak,
};
pub use combined::{
    combined_alice_accept, combined_bob_accept, combined_prover, enumerate_combined_certificates,
    enumerate_facets, CombinedCertificate, FacetId,
};
pub use witness::{
    all_witnesses, is_witness, is_witness_triple, naive_alice_accept, naive_bob_accept,
    witness_exists, Witness,
};
