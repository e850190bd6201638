//! Kernels checked against slow, independent reference computations.

mod common;

#[test]
fn pauli_algebra_matches_matrices() {
    common::check_pauli_against_matrices(1000, 7);
}

#[test]
fn lp_matches_vertex_enumeration() {
    common::check_lp_against_vertices(400, 11);
}

#[test]
fn gf2_matches_brute_force() {
    common::check_gf2_against_enumeration(500, 3);
}
