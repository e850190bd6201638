//! End-to-end acceptance checks. Each test prints one PASS/FAIL line
//! directly to stdout, bypassing the harness's output capture.

mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use contextus::builtin::{
    ghz_contexts, ghz_model, ghz_state, pentagram_contexts, pentagram_observables, pr_box,
    shared_coin,
};
use contextus::exactkernel::{rat, GaussianRational, Rational};
use contextus::hilbert::{
    common_stabilised_state, generated_algebra_dimension, rank, to_matrix, ContextSpec,
    ExactMatrix, ScaledVector,
};
use contextus::parity::{mermin_system, state_dependent_system, ValuationReport};
use contextus::pauli::{
    clifton_abelianised, clifton_contradiction, commutes, is_avn_triple, subgroup_generate, Letter,
    PauliOp,
};
use contextus::presheaf::{
    coordinate_rings, global_sections as presheaf_sections, pspec_functor_points,
    spectral_presheaf, support_subpresheaf, ContextPoset,
};
use contextus::roots::{
    colouring_search, coxeter_graph_with, is_isomorphic, orthogonal_bases, rays_from_contexts,
    reflection_closure,
};
use contextus::scenario::{
    assignment_of, avn_check, check_no_signalling, classify, Level, Witness,
};
use num_traits::Zero;

/// Number of orthogonal bases among the 40 pentagram rays, frozen after the
/// first enumeration.
const GOLDEN_BASIS_COUNT: usize = 25;

fn criterion(number: u32, title: &str, budget: Duration, body: impl FnOnce()) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let verdict = match (&outcome, elapsed <= budget) {
        (Ok(()), true) => "PASS",
        _ => "FAIL",
    };
    let line = format!(
        "{verdict} criterion {number:>2}: {title} ({:.3} s, budget {:.1} s)\n",
        elapsed.as_secs_f64(),
        budget.as_secs_f64()
    );
    let mut out = std::io::stdout().lock();
    out.write_all(line.as_bytes()).unwrap();
    out.flush().unwrap();
    if let Err(panic) = outcome {
        resume_unwind(panic);
    }
    assert!(
        elapsed <= budget,
        "criterion {number} took {elapsed:?}, budget {budget:?}"
    );
}

fn secs(s: f64) -> Duration {
    Duration::from_secs_f64(s)
}

#[test]
fn criterion_01_pentagram_parity() {
    criterion(
        1,
        "pentagram parity system is inconsistent on all five rows",
        secs(0.1),
        || {
            let system = mermin_system();
            assert_eq!(system.equations().len(), 5);
            match system.decide() {
                ValuationReport::Inconsistent {
                    certificate,
                    derivation,
                } => {
                    assert_eq!(certificate.rows, (0..5).collect::<BTreeSet<_>>());
                    assert!(certificate.verify(system.system()));
                    assert_eq!(system.replay(&certificate.rows), Some(-1));
                    assert_eq!(derivation.last().unwrap(), "1 = −1");
                }
                other => panic!("expected inconsistency, got {other:?}"),
            }
        },
    );
}

#[test]
fn criterion_02_state_dependent_system() {
    criterion(
        2,
        "GHZ eigenvalue right-hand sides and inconsistency",
        secs(0.1),
        || {
            let system = state_dependent_system(&ghz_state(), &ghz_contexts()).unwrap();
            let rhs: Vec<bool> = system.system().rows().iter().map(|(_, b)| *b).collect();
            assert_eq!(rhs, [false, true, true, true]);
            let signs: Vec<i8> = system.equations().iter().map(|e| e.sign).collect();
            assert_eq!(signs, [1, -1, -1, -1]);
            assert!(!system.decide().is_consistent());
        },
    );
}

/// `<ψ| ∏ (I + s_k A_k)/2 |ψ>` from dense matrices.
fn projector_probability(state: &ScaledVector, ctx: &ContextSpec, signs: &[i8]) -> Rational {
    let dim = state.dim();
    let half = GaussianRational::from(rat(1, 2));
    let mut proj = ExactMatrix::identity(dim);
    for (a, &s) in ctx.observables().iter().zip(signs) {
        let m = to_matrix(a)
            .unwrap()
            .scale(&GaussianRational::from(Rational::from_integer(s.into())));
        proj = proj.mul(&ExactMatrix::identity(dim).add(&m).scale(&half));
    }
    let image = proj.apply(state.coords());
    let amp: GaussianRational = state
        .coords()
        .iter()
        .zip(&image)
        .map(|(c, v)| c.conj() * v)
        .sum();
    assert!(amp.im.is_zero());
    amp.re / state.scale2()
}

#[test]
fn criterion_03_ghz_model() {
    criterion(
        3,
        "GHZ model support table, 1/4 weights, no-signalling, strong",
        secs(1.0),
        || {
            let model = ghz_model();
            let expected = [
                [1, 0, 0, 1, 0, 1, 1, 0],
                [0, 1, 1, 0, 1, 0, 0, 1],
                [0, 1, 1, 0, 1, 0, 0, 1],
                [0, 1, 1, 0, 1, 0, 0, 1],
            ];
            let quarter = rat(1, 4);
            for (c, row) in expected.iter().enumerate() {
                let ctx = &ghz_contexts()[c];
                for (k, &bit) in row.iter().enumerate() {
                    let p = &model.table(c)[k];
                    assert_eq!(!p.is_zero(), bit == 1, "context {c}, cell {k}");
                    if bit == 1 {
                        assert_eq!(*p, quarter);
                    }
                    assert_eq!(
                        projector_probability(&ghz_state(), ctx, &assignment_of(k, 3)),
                        *p
                    );
                }
            }
            assert!(check_no_signalling(&model).is_ok());
            let class = classify(&model).unwrap();
            assert_eq!(class.level, Level::Strong);
            let Witness::EmptySupport { near_misses, .. } = class.witness else {
                panic!("strong contextuality needs an empty-support witness");
            };
            // s1..s4 over (X1, X2, X3, Y1, Y2, Y3), each eliminated by C1.
            let names: Vec<&str> = model
                .cover()
                .observables()
                .iter()
                .map(String::as_str)
                .collect();
            assert_eq!(names, ["X1", "X2", "X3", "Y1", "Y2", "Y3"]);
            let killed_by_first: Vec<&Vec<i8>> = near_misses
                .iter()
                .filter(|m| m.killed_by == 0)
                .map(|m| &m.assignment)
                .collect();
            for s in [
                [1, 1, -1, 1, 1, -1],
                [1, -1, 1, 1, -1, 1],
                [-1, 1, 1, -1, 1, 1],
                [-1, -1, -1, -1, -1, -1],
            ] {
                assert!(
                    killed_by_first.contains(&&s.to_vec()),
                    "{s:?} not eliminated by C1"
                );
            }
        },
    );
}

#[test]
fn criterion_04_hierarchy_sanity() {
    criterion(
        4,
        "PR box strong, shared coin noncontextual with exact witness",
        secs(1.0),
        || {
            assert_eq!(classify(&pr_box()).unwrap().level, Level::Strong);
            let coin = shared_coin();
            let class = classify(&coin).unwrap();
            assert_eq!(class.level, Level::Noncontextual);
            let Witness::GlobalDistribution(weights) = class.witness else {
                panic!("noncontextual models carry a global distribution");
            };
            assert_eq!(coin.tables_from_global(&weights), coin.tables());
        },
    );
}

#[test]
fn criterion_05_algebra_dimension() {
    criterion(
        5,
        "pentagram observables generate a 64-dimensional algebra",
        secs(1.0),
        || {
            let gens = pentagram_observables();
            let dim = generated_algebra_dimension(&gens).unwrap();
            let group = subgroup_generate(&gens).unwrap();
            let flat: Vec<Vec<GaussianRational>> = group
                .iter()
                .map(|g| to_matrix(g).unwrap().flatten())
                .collect();
            assert_eq!(dim, 64);
            assert_eq!(rank(&flat), 64);
        },
    );
}

#[test]
fn criterion_06_geometry() {
    criterion(
        6,
        "40 rays close to 240 roots classified E8",
        secs(60.0),
        || {
            let rays = rays_from_contexts(&pentagram_contexts()).unwrap();
            assert_eq!(rays.len(), 40);
            let system = reflection_closure(&rays).unwrap();
            assert_eq!(system.len(), 240);
            assert_eq!(system.antipodal_pairs(), Some(120));
            assert_eq!(system.verify_axioms(), Ok(240 * 240));
            let graphs: Vec<_> = [17, 19, 23]
                .iter()
                .map(|&t| coxeter_graph_with(&system, t).unwrap())
                .collect();
            for g in &graphs {
                assert_eq!(g.simple_roots.len(), 8);
                assert_eq!(g.classification, "E8");
                assert!(is_isomorphic(&g.labels, &graphs[0].labels));
            }
        },
    );
}

#[test]
fn criterion_07_colouring() {
    criterion(
        7,
        "no colouring of the 40 rays, stable basis count",
        secs(60.0),
        || {
            let rays = rays_from_contexts(&pentagram_contexts()).unwrap();
            let bases = orthogonal_bases(&rays).unwrap();
            assert_eq!(orthogonal_bases(&rays).unwrap(), bases);
            assert_eq!(bases.len(), GOLDEN_BASIS_COUNT);
            let outcome = colouring_search(rays.len(), &bases);
            assert!(!outcome.is_feasible());
            assert!(outcome.nodes() > 0);
        },
    );
}

#[test]
fn criterion_08_clifton() {
    criterion(
        8,
        "Weyl-operator products give +1 against -1; abelian control +1",
        secs(0.1),
        || {
            let r = clifton_contradiction();
            assert_eq!((r.func_value, r.operator_value), (Some(1), Some(-1)));
            let c = clifton_abelianised();
            assert_eq!((c.func_value, c.operator_value), (Some(1), Some(1)));
        },
    );
}

#[test]
fn criterion_09_presheaf_equivalences() {
    criterion(
        9,
        "presheaf, prime-spectrum and parity verdicts agree",
        secs(5.0),
        || {
            // Pentagram spectral presheaf against the parity system.
            let pentagram = ContextPoset::from_contexts(&pentagram_contexts()).unwrap();
            let sections = presheaf_sections(&spectral_presheaf(&pentagram).unwrap());
            assert_eq!(
                sections.is_empty(),
                !mermin_system().decide().is_consistent()
            );
            assert!(sections.is_empty());

            // Coordinate rings of the four GHZ contexts against the eigenvalue system.
            let ghz = ghz_contexts();
            let full = ContextPoset::from_contexts(&ghz).unwrap();
            let rings = coordinate_rings(&full, Some(&ghz_state())).unwrap();
            let points = pspec_functor_points(&rings, full.poset()).unwrap();
            let parity = state_dependent_system(&ghz_state(), &ghz).unwrap().decide();
            assert_eq!(points.is_empty(), !parity.is_consistent());
            assert!(points.is_empty());

            // Without C1.
            let rest = ContextPoset::from_contexts(&ghz[1..]).unwrap();
            let rest_sections =
                presheaf_sections(&support_subpresheaf(&rest, &ghz_state()).unwrap());
            let ValuationReport::Consistent {
                valuations: Some(vals),
                ..
            } = state_dependent_system(&ghz_state(), &ghz[1..])
                .unwrap()
                .decide()
            else {
                panic!("the three remaining rows are satisfiable");
            };
            assert_eq!(rest_sections.len(), vals.len());
            assert_eq!(rest_sections.len(), 4, "global sections after removing C1");
        },
    );
}

fn phase_free_three_qubit() -> Vec<PauliOp> {
    let letters = [Letter::I, Letter::X, Letter::Y, Letter::Z];
    let mut out = Vec::new();
    for a in letters {
        for b in letters {
            for c in letters {
                let p = PauliOp::from_letters(&[a, b, c], 1).unwrap();
                if !p.is_identity() {
                    out.push(p);
                }
            }
        }
    }
    out
}

#[test]
fn criterion_10_all_versus_nothing() {
    criterion(
        10,
        "every stabilised AvN triple is parity-inconsistent and strong",
        secs(120.0),
        || {
            let ops = phase_free_three_qubit();
            let mut found = 0;
            let mut checked = 0;
            for e in &ops {
                for f in &ops {
                    for g in &ops {
                        let distinct = e != f && f != g && e != g;
                        let pairwise = distinct
                            && commutes(e, f).unwrap()
                            && commutes(e, g).unwrap()
                            && commutes(f, g).unwrap();
                        if !pairwise || !is_avn_triple(*e, *f, *g).unwrap().holds {
                            continue;
                        }
                        found += 1;
                        let Some(state) = common_stabilised_state(&[*e, *f, *g]).unwrap() else {
                            continue;
                        };
                        let report = avn_check(&[*e, *f, *g], &state).unwrap();
                        assert!(report.is_all_versus_nothing(), "{e};{f};{g}");
                        checked += 1;
                    }
                }
            }
            assert!(found > 0);
            assert!(checked > 0);
        },
    );
}

#[test]
fn criterion_11_oracle_invariants() {
    criterion(
        11,
        "Pauli, LP and GF(2) kernels agree with reference computations",
        secs(60.0),
        || {
            common::check_pauli_against_matrices(1000, 101);
            common::check_lp_against_vertices(200, 202);
            common::check_gf2_against_enumeration(200, 303);
        },
    );
}
