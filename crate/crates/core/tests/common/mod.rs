//! Slow reference computations shared by the oracle and acceptance tests.

use contextus::exactkernel::{
    gf2_solve, lp_feasible, BitRow, Gf2Solution, Gf2System, LpOutcome, Rational,
};
use contextus::pauli::{commutes, multiply, Letter, PauliOp};
use num_complex::Complex;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type C = Complex<i64>;
type Mat = Vec<Vec<C>>;

fn letter_matrix(l: Letter) -> Mat {
    let (o, z, i) = (C::new(1, 0), C::new(0, 0), C::new(0, 1));
    match l {
        Letter::I => vec![vec![o, z], vec![z, o]],
        Letter::X => vec![vec![z, o], vec![o, z]],
        Letter::Y => vec![vec![z, -i], vec![i, z]],
        Letter::Z => vec![vec![o, z], vec![z, -o]],
    }
}

fn kron(a: &Mat, b: &Mat) -> Mat {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![C::zero(); n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Dense matrix of `p` built from its letters and prefactor only.
pub fn oracle_matrix(p: &PauliOp) -> Mat {
    let mut m = vec![vec![C::one()]];
    for l in p.letters() {
        m = kron(&m, &letter_matrix(l));
    }
    let prefactor = C::i().powu(p.letter_phase() as u32);
    m.iter()
        .map(|row| row.iter().map(|v| v * prefactor).collect())
        .collect()
}

pub fn random_pauli(rng: &mut StdRng, n: usize) -> PauliOp {
    PauliOp::new(
        n,
        rng.gen_range(0..1 << n),
        rng.gen_range(0..1 << n),
        rng.gen_range(0..4),
    )
    .unwrap()
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Unique solution of `cols · x = b` when the columns are independent.
fn solve_independent(cols: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = b.len();
    let k = cols.len();
    let mut aug: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            cols.iter()
                .map(|c| c[i].clone())
                .chain([b[i].clone()])
                .collect()
        })
        .collect();
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..k {
        let p = (row..m).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(row, p);
        let lead = aug[row][col].clone();
        for v in aug[row].iter_mut() {
            *v /= &lead;
        }
        for r in 0..m {
            if r != row && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                let pr = aug[row].clone();
                for (v, pv) in aug[r].iter_mut().zip(&pr) {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(row);
        row += 1;
    }
    if aug[row..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| aug[r][k].clone()).collect())
}

/// Feasible iff some basic solution on independent columns is nonnegative.
pub fn vertex_enumeration_feasible(a: &[Vec<Rational>], b: &[Rational], vars: usize) -> bool {
    let columns: Vec<Vec<Rational>> = (0..vars)
        .map(|j| a.iter().map(|r| r[j].clone()).collect())
        .collect();
    (0u32..1 << vars).any(|mask| {
        let chosen: Vec<Vec<Rational>> = (0..vars)
            .filter(|j| mask >> j & 1 == 1)
            .map(|j| columns[j].clone())
            .collect();
        if chosen.len() > b.len() {
            return false;
        }
        solve_independent(&chosen, b).is_some_and(|x| x.iter().all(|v| !v.is_negative()))
    })
}

/// Multiplication and commutation against dense matrices on `pairs` random
/// 3-qubit pairs.
pub fn check_pauli_against_matrices(pairs: usize, seed: u64) {
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..pairs {
        let p = random_pauli(&mut rng, 3);
        let q = random_pauli(&mut rng, 3);
        let (mp, mq) = (oracle_matrix(&p), oracle_matrix(&q));
        let pq = matmul(&mp, &mq);
        assert_eq!(oracle_matrix(&multiply(&p, &q).unwrap()), pq, "{p} * {q}");
        assert_eq!(
            commutes(&p, &q).unwrap(),
            pq == matmul(&mq, &mp),
            "{p} vs {q}"
        );
    }
}

/// `lp_feasible` against vertex enumeration on `systems` random systems.
pub fn check_lp_against_vertices(systems: usize, seed: u64) {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut feasible = 0;
    for _ in 0..systems {
        let m = rng.gen_range(1..=3);
        let vars = rng.gen_range(1..=8);
        let a: Vec<Vec<Rational>> = (0..m)
            .map(|_| (0..vars).map(|_| rat(rng.gen_range(-3..=3))).collect())
            .collect();
        let b: Vec<Rational> = (0..m).map(|_| rat(rng.gen_range(-4..=4))).collect();
        let eqs: Vec<(Vec<Rational>, Rational)> =
            a.iter().cloned().zip(b.iter().cloned()).collect();
        let outcome = lp_feasible(&eqs, vars).unwrap();
        assert_eq!(
            outcome.is_feasible(),
            vertex_enumeration_feasible(&a, &b, vars),
            "{eqs:?}"
        );
        match outcome {
            LpOutcome::Feasible(x) => {
                feasible += 1;
                assert!(x.iter().all(|v| !v.is_negative()));
                for (row, rhs) in &eqs {
                    let lhs: Rational = row.iter().zip(&x).map(|(c, v)| c * v).sum();
                    assert_eq!(&lhs, rhs);
                }
            }
            LpOutcome::Infeasible { residual } => assert!(residual.is_positive()),
        }
    }
    assert!(
        feasible > systems / 10 && feasible < systems * 9 / 10,
        "sample is one-sided: {feasible}"
    );
}

/// `gf2_solve` against exhaustive search; certificates must re-verify.
pub fn check_gf2_against_enumeration(systems: usize, seed: u64) {
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..systems {
        let vars = rng.gen_range(1..=8);
        let rows = rng.gen_range(1..=10);
        let bools: Vec<(Vec<bool>, bool)> = (0..rows)
            .map(|_| {
                (
                    (0..vars).map(|_| rng.gen_bool(0.4)).collect(),
                    rng.gen_bool(0.5),
                )
            })
            .collect();
        let sys = Gf2System::from_bool_rows(&bools).unwrap();
        let solutions: Vec<BitRow> = (0u32..1 << vars)
            .map(|m| BitRow::from_bools(&(0..vars).map(|j| m >> j & 1 == 1).collect::<Vec<_>>()))
            .filter(|x| sys.is_satisfied_by(x))
            .collect();
        match gf2_solve(&sys) {
            Gf2Solution::Consistent(set) => {
                assert_eq!(set.count(), solutions.len() as u128);
                assert!(sys.is_satisfied_by(&set.particular));
                let mut listed = set.solutions.expect("small systems are enumerated");
                listed.sort_by_key(|r| r.to_bools());
                let mut brute = solutions.clone();
                brute.sort_by_key(|r| r.to_bools());
                assert_eq!(listed, brute);
            }
            Gf2Solution::Inconsistent(cert) => {
                assert!(solutions.is_empty());
                assert!(cert.verify(&sys));
            }
        }
    }
}
