//! Acceptance run: one PASS/FAIL line per criterion, then a summary.
//!
//! Criterion 2 compares the matrix built from the reference dual generators
//! with the reference matrix. The reference second generator does not
//! reproduce the reference row, so that line is expected to report FAIL; the
//! run only errors if a different set of criteria fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sqh::algebra::{format_monomial, parse_poly, Monomial, Poly, Scalar, Vars, WeightSystem};
use sqh::kodaira_spencer::{ks_matrix, lie_filtrations, KsMatrix};
use sqh::standard_basis::monomials_of_degree;
use sqh::stratification::{
    mu_vector, normalize_polynomial, rank_tau_at_point, strata_symbolic, tau_at_point, SamplerConfig,
};
use sqh::symmetry::{
    compose, diagonal_invariant_monomials, enumerate_diagonal, group_closure, theta, GradedAutomorphism, InducedAction,
};
use sqh::unfolding::{negative_unfolding, reduce_to_t_minus, NegativeUnfolding};

const SEED: u64 = 20_240_917;
const MAX_NUMERATOR: i64 = 9;
const MAX_DENOMINATOR: i64 = 3;
const POINTS_PER_MEMBER: usize = 50;
const STRATA_SAMPLES: usize = 200;
const ROUND_TRIPS_PER_MEMBER: usize = 100;
const CLOSURE_CAP: usize = 10_000;
/// Invariant monomials of x⁴+y⁵ are enumerated up to t¹⁰, i.e. weight −20.
const INVARIANT_EXPONENT_BOUND: i64 = 10;

const BUDGET_UNFOLDING: Duration = Duration::from_secs(1);
const BUDGET_MATRIX: Duration = Duration::from_secs(5);
const BUDGET_SYMMETRY: Duration = Duration::from_secs(60);
const BUDGET_RANK_TAU: Duration = Duration::from_secs(120);
const BUDGET_STRATA: Duration = Duration::from_secs(60);
const BUDGET_GROUP: Duration = Duration::from_secs(60);
const BUDGET_ROUND_TRIP: Duration = Duration::from_secs(120);

/// Criteria known to fail, with the reason printed next to the FAIL line.
const EXPECTED_FAILURES: &[(usize, &str)] = &[(
    2,
    "reference n2 yields h25 = 5t4 - 110/147 t1^3 t3 + 500/1029 t1 t2^4; auto-computed duals give the reference matrix",
)];

struct Member {
    f0: &'static str,
    vars: &'static [&'static str],
    weights: &'static [i64],
    degree: i64,
}

const fn member(f0: &'static str, vars: &'static [&'static str], weights: &'static [i64], degree: i64) -> Member {
    Member {
        f0,
        vars,
        weights,
        degree,
    }
}

const XY: &[&str] = &["x", "y"];
const XYZ: &[&str] = &["x", "y", "z"];

const CORPUS: &[Member] = &[
    member("x^3+y^7", XY, &[7, 3], 21),
    member("x^4+y^5", XY, &[5, 4], 20),
    member("x^3+y^8", XY, &[8, 3], 24),
    member("x^4+y^6", XY, &[3, 2], 12),
    member("x^5+y^5", XY, &[1, 1], 5),
    member("x^3+y^3+z^4", XYZ, &[4, 4, 3], 12),
    member("x^3+y^3+z^5", XYZ, &[5, 5, 3], 15),
    member("x^2+y^4+z^5", XYZ, &[10, 5, 4], 20),
    member("x^3+y^3+z^7", XYZ, &[7, 7, 3], 21),
];

const SIMPLE: &[(&str, Member)] = &[
    ("A1", member("x^2+y^2", XY, &[1, 1], 2)),
    ("A2", member("x^3+y^2", XY, &[2, 3], 6)),
    ("A3", member("x^4+y^2", XY, &[1, 2], 4)),
    ("A4", member("x^5+y^2", XY, &[2, 5], 10)),
    ("A5", member("x^6+y^2", XY, &[1, 3], 6)),
    ("A6", member("x^7+y^2", XY, &[2, 7], 14)),
    ("D4", member("x^2*y+y^3", XY, &[1, 1], 3)),
    ("D5", member("x^2*y+y^4", XY, &[3, 2], 8)),
    ("E6", member("x^3+y^4", XY, &[4, 3], 12)),
    ("E7", member("x^3+x*y^3", XY, &[3, 2], 9)),
    ("E8", member("x^3+y^5", XY, &[5, 3], 15)),
];

impl Member {
    fn unfold(&self) -> Result<NegativeUnfolding, String> {
        let vars = Vars::new(self.vars.iter().copied());
        let f0 = parse_poly(self.f0, &vars).map_err(|e| e.to_string())?;
        let w = WeightSystem::new(self.weights.to_vec(), self.degree).map_err(|e| e.to_string())?;
        negative_unfolding(&f0, &w).map_err(|e| format!("{}: {e}", self.f0))
    }
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn check(passed: bool, detail: impl Into<String>) -> Result<Outcome, String> {
    Ok(Outcome {
        passed,
        detail: detail.into(),
    })
}

fn within(elapsed: Duration, budget: Duration) -> Result<(), String> {
    if elapsed <= budget {
        Ok(())
    } else {
        Err(format!("took {elapsed:.2?}, budget {budget:?}"))
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::from_ratio(
        rng.gen_range(-MAX_NUMERATOR..=MAX_NUMERATOR),
        rng.gen_range(1..=MAX_DENOMINATOR),
    )
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let s = random_rational(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

fn random_point(rng: &mut ChaCha8Rng, k: usize) -> Vec<Scalar> {
    (0..k).map(|_| random_rational(rng)).collect()
}

fn running() -> Result<NegativeUnfolding, String> {
    CORPUS.last().expect("corpus is not empty").unfold()
}

fn monomial_names(u: &NegativeUnfolding) -> Vec<String> {
    u.upper_monomials()
        .iter()
        .map(|m| format_monomial(u.milnor().vars(), m))
        .collect()
}

fn unfolding_golden() -> Result<Outcome, String> {
    let start = Instant::now();
    let u = running()?;
    let elapsed = start.elapsed();
    within(elapsed, BUDGET_UNFOLDING)?;
    let names = monomial_names(&u);
    let want = ["x*z^5", "y*z^5", "x*y*z^3", "x*y*z^4", "x*y*z^5"];
    let ok = u.milnor().mu() == 24 && names == want && u.parameter_weights() == [-1, -1, -2, -5, -8];
    check(
        ok,
        format!("mu {}, monomials {names:?}, weights {:?}", u.milnor().mu(), u.parameter_weights()),
    )
}

const REFERENCE_GENERATORS: [&str; 5] = [
    "-21",
    "-21*z + (250/49*t1^3*t2 + 55/7*t1^2*t3 - 250/49*t2^4)*y - 55/7*t2^2*t3*x",
    "-21*z^2 - 30*t2*y",
    "-21*x",
    "-21*y",
];

const REFERENCE_MATRIX: [[&str; 5]; 5] = [
    ["t1", "t2", "2*t3", "5*t4", "8*t5"],
    ["0", "0", "0", "2*t3 - 10/7*t1*t2", "5*t4"],
    ["0", "0", "0", "0", "2*t3"],
    ["0", "0", "0", "0", "t2"],
    ["0", "0", "0", "0", "t1"],
];

fn matrix_mismatches(m: &KsMatrix, u: &NegativeUnfolding) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    for (i, row) in REFERENCE_MATRIX.iter().enumerate() {
        for (j, text) in row.iter().enumerate() {
            let want = normalize_polynomial(&parse_poly(text, u.parameter_vars()).map_err(|e| e.to_string())?);
            let got = normalize_polynomial(&m.entries[i][j]);
            if got != want {
                out.push(format!("({},{}) = {}", i + 1, j + 1, m.entries[i][j]));
            }
        }
    }
    Ok(out)
}

fn matrix_golden() -> Result<Outcome, String> {
    let u = running()?;
    let generators: Vec<Poly> = REFERENCE_GENERATORS
        .iter()
        .map(|s| parse_poly(s, u.family_vars()).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let start = Instant::now();
    let m = ks_matrix(&u, Some(&generators)).map_err(|e| e.to_string())?;
    within(start.elapsed(), BUDGET_MATRIX)?;
    let bad = matrix_mismatches(&m, &u)?;
    // exact entry equality; normalization only removes a common scalar
    let exact = (0..5).all(|i| {
        (0..5).all(|j| parse_poly(REFERENCE_MATRIX[i][j], u.parameter_vars()).ok().as_ref() == Some(&m.entries[i][j]))
    });
    let auto = ks_matrix(&u, None).map_err(|e| e.to_string())?;
    let auto_bad = matrix_mismatches(&auto, &u)?;
    check(
        bad.is_empty() && exact,
        format!(
            "reference generators: {} mismatching entries {bad:?}; auto-computed generators: {} mismatches",
            bad.len(),
            auto_bad.len()
        ),
    )
}

fn symmetry_suite() -> Result<Outcome, String> {
    let start = Instant::now();
    let mut failures = Vec::new();
    for member in CORPUS {
        let u = member.unfold()?;
        match ks_matrix(&u, None) {
            Ok(m) if m.symmetric && m.symmetry_defects().is_empty() => {}
            Ok(m) => failures.push(format!("{}: defects {:?}", member.f0, m.symmetry_defects())),
            Err(e) => failures.push(format!("{}: {e}", member.f0)),
        }
    }
    within(start.elapsed(), BUDGET_SYMMETRY)?;
    check(
        failures.is_empty() && CORPUS.len() >= 8,
        format!("{} members symmetric, failures {failures:?}", CORPUS.len() - failures.len()),
    )
}

fn rank_tau_equivalence() -> Result<Outcome, String> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut compared = 0usize;
    let mut failures = Vec::new();
    for member in CORPUS {
        let u = member.unfold()?;
        let m = ks_matrix(&u, None).map_err(|e| e.to_string())?;
        for _ in 0..POINTS_PER_MEMBER {
            let t = random_point(&mut rng, u.k());
            let (_, by_basis) = tau_at_point(&u, &t).map_err(|e| e.to_string())?;
            let by_rank = rank_tau_at_point(&m, &u, &t).map_err(|e| e.to_string())?;
            compared += by_basis.values.len();
            if by_basis != by_rank {
                failures.push(format!("{} at {t:?}: {:?} vs {:?}", member.f0, by_basis.values, by_rank.values));
            }
        }
    }
    within(start.elapsed(), BUDGET_RANK_TAU)?;
    check(
        failures.is_empty(),
        format!("{compared} levels compared over {} points, failures {failures:?}", POINTS_PER_MEMBER * CORPUS.len()),
    )
}

/// τ from the reference table, as a function of t.
fn reference_tau(t: &[Scalar]) -> usize {
    let q = &(&Scalar::from_int(7) * &t[2]) - &(&(&Scalar::from_int(5) * &t[0]) * &t[1]);
    if !q.is_zero() {
        21
    } else if t[..4].iter().any(|c| !c.is_zero()) {
        22
    } else if !t[4].is_zero() {
        23
    } else {
        24
    }
}

/// Points drawn from each piece of the reference table in turn.
fn strata_sample(rng: &mut ChaCha8Rng, index: usize) -> Vec<Scalar> {
    let zero = Scalar::zero;
    match index % 5 {
        0 => random_point(rng, 5),
        1 => {
            let (t1, t2) = (random_rational(rng), random_rational(rng));
            let t3 = &(&Scalar::from_ratio(5, 7) * &t1) * &t2;
            vec![t1, t2, t3, random_rational(rng), random_rational(rng)]
        }
        2 => vec![zero(), zero(), zero(), random_nonzero(rng), random_rational(rng)],
        3 => vec![zero(), zero(), zero(), zero(), random_nonzero(rng)],
        _ => vec![zero(); 5],
    }
}

fn stratification_golden() -> Result<Outcome, String> {
    let u = running()?;
    let m = ks_matrix(&u, None).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let rep = strata_symbolic(&m, &u, &SamplerConfig::default()).map_err(|e| e.to_string())?;
    let tpoly = |s: &str| parse_poly(s, u.parameter_vars()).map_err(|e| e.to_string());
    let mut problems = Vec::new();

    let sigma: Vec<Vec<usize>> = vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 2], vec![1, 1, 2], vec![1, 2, 3]];
    if rep.sigma != sigma {
        problems.push(format!("sigma {:?}", rep.sigma));
    }
    if !rep.undetermined.is_empty() {
        problems.push(format!("undetermined {:?}", rep.undetermined));
    }
    let q = tpoly("7*t3 - 5*t1*t2")?;
    let reference_q = normalize_polynomial(&tpoly("2*t3 - 10/7*t1*t2")?);
    match rep.stratum(&[1, 2, 3]) {
        Some(s) if s.equations.is_empty() && s.inequations == vec![vec![q.clone()]] && reference_q == q => {}
        other => problems.push(format!("generic stratum {:?}", other.map(|s| (&s.equations, &s.inequations)))),
    }
    match rep.stratum(&[0, 0, 1]) {
        Some(s) => {
            let mut eqs: Vec<Poly> = s.equations.clone();
            eqs.sort_by_key(|p| p.to_string());
            let want: Vec<Poly> = ["t1", "t2", "t3", "t4"].iter().map(|n| tpoly(n)).collect::<Result<_, _>>()?;
            if eqs != want || s.inequations != vec![vec![tpoly("t5")?]] {
                problems.push(format!("U001 equations {eqs:?}, inequations {:?}", s.inequations));
            }
        }
        None => problems.push("U001 missing".into()),
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut tally = [0usize; 4];
    for i in 0..STRATA_SAMPLES {
        let t = strata_sample(&mut rng, i);
        let want = reference_tau(&t);
        let (tau, hf) = tau_at_point(&u, &t).map_err(|e| e.to_string())?;
        let rank = hf.rank_vector(&rep.mu);
        let containing: Vec<&Vec<usize>> = rep.strata.iter().filter(|s| s.contains(&t)).map(|s| &s.rank).collect();
        let stratum_tau = rep.stratum(&rank).map(|s| s.tau[s.tau.len() - 1]);
        if tau != want || containing != vec![&rank] || stratum_tau != Some(tau) {
            problems.push(format!("{t:?}: tau {tau}, table {want}, strata {containing:?}"));
        } else {
            tally[tau - 21] += 1;
        }
    }
    within(start.elapsed(), BUDGET_STRATA)?;
    check(
        problems.is_empty(),
        format!("{STRATA_SAMPLES} samples with tau 21..24 counts {tally:?}, problems {problems:?}"),
    )
}

fn lie_filtration_golden() -> Result<Outcome, String> {
    let u = running()?;
    let m = ks_matrix(&u, None).map_err(|e| e.to_string())?;
    let ld = lie_filtrations(&u, &m).map_err(|e| e.to_string())?;
    let mu = mu_vector(&u);
    let ok = ld.s == 2 && ld.levels == [3, 6] && ld.z_generators.get(1) == Some(&vec![3, 4, 5]) && mu == [22, 23, 24];
    check(
        ok,
        format!("s {}, r {:?}, Z generators {:?}, mu vector {mu:?}", ld.s, ld.levels, ld.z_generators),
    )
}

fn group_golden() -> Result<Outcome, String> {
    let start = Instant::now();
    let u = running()?;
    let vars = u.milnor().vars().clone();
    let w = u.milnor().weights().clone();
    let one = Scalar::one;
    // ξ = e^{2πi/3} = ζ₂₁⁷ and e^{2πi/7} = ζ₂₁³
    let xi = Scalar::root_of_unity(21, 7);
    let seventh = Scalar::root_of_unity(21, 3);
    let swap = GradedAutomorphism::new(vec![Poly::var(&vars, 1), Poly::var(&vars, 0), Poly::var(&vars, 2)], &w)
        .map_err(|e| e.to_string())?;
    let gens = vec![
        swap,
        GradedAutomorphism::diagonal(&vars, &[xi.clone(), xi.pow(2), one()]),
        GradedAutomorphism::diagonal(&vars, &[xi.clone(), xi.clone(), one()]),
        GradedAutomorphism::diagonal(&vars, &[one(), one(), seventh.clone()]),
    ];
    let tvars = u.parameter_vars();
    let t = |i: usize| Poly::var(tvars, i);
    let scaled = |factors: [Scalar; 5]| InducedAction {
        components: factors.iter().enumerate().map(|(i, c)| t(i).scale(c)).collect(),
    };
    let reference = [
        InducedAction {
            components: vec![t(1), t(0), t(2), t(3), t(4)],
        },
        scaled([xi.clone(), xi.pow(2), one(), one(), one()]),
        scaled([xi.clone(), xi.clone(), xi.pow(2), xi.pow(2), xi.pow(2)]),
        scaled([seventh.pow(5), seventh.pow(5), seventh.pow(3), seventh.pow(4), seventh.pow(5)]),
    ];
    let thetas: Vec<InducedAction> = gens
        .iter()
        .map(|g| theta(g, &u).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let formulas: Vec<bool> = thetas.iter().zip(&reference).map(|(a, b)| a == b).collect();
    let mut homomorphism = true;
    for (i, a) in gens.iter().enumerate() {
        for (j, b) in gens.iter().enumerate() {
            let lhs = theta(&compose(a, b), &u).map_err(|e| e.to_string())?;
            homomorphism &= lhs == thetas[i].compose(&thetas[j]);
        }
    }
    let closure = group_closure(&thetas, tvars, CLOSURE_CAP);
    within(start.elapsed(), BUDGET_GROUP)?;
    check(
        formulas.iter().all(|&b| b) && homomorphism && closure.complete && closure.elements.len() == 126,
        format!(
            "formulas {formulas:?}, homomorphism {homomorphism}, closure {} elements (complete {})",
            closure.elements.len(),
            closure.complete
        ),
    )
}

/// xᵢ ↦ xᵢ + (random terms of degree wᵢ + 1 .. wᵢ + spread).
fn random_positive_change(rng: &mut ChaCha8Rng, vars: &Vars, weights: &[i64], spread: i64) -> Vec<Poly> {
    (0..vars.len())
        .map(|i| {
            let mut image = Poly::var(vars, i);
            for degree in weights[i] + 1..=weights[i] + spread {
                for mono in monomials_of_degree(weights, degree) {
                    if rng.gen_bool(0.3) {
                        image.add_term(mono, &random_nonzero(rng));
                    }
                }
            }
            image
        })
        .collect()
}

fn round_trip() -> Result<Outcome, String> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = Vec::new();
    let mut trips = 0usize;
    for member in CORPUS {
        let u = member.unfold()?;
        let md = u.milnor();
        let w = md.weights().weights();
        let truncation = md.jacobian_basis().truncation();
        let spread = md.weights().max_weight();
        for n in 0..ROUND_TRIPS_PER_MEMBER {
            let t = random_point(&mut rng, u.k());
            let f = u.specialize(&t).map_err(|e| e.to_string())?;
            // every other trip first applies a random coordinate change of positive degree
            let input = if n % 2 == 1 {
                let images = random_positive_change(&mut rng, md.vars(), w, spread);
                f.substitute_truncated(&images, w, truncation)
            } else {
                f
            };
            trips += 1;
            match reduce_to_t_minus(&input, &u) {
                Ok(r) if r.t == t => {}
                Ok(r) => failures.push(format!("{}: {t:?} came back as {:?}", member.f0, r.t)),
                Err(e) => failures.push(format!("{}: {e}", member.f0)),
            }
        }
    }
    within(start.elapsed(), BUDGET_ROUND_TRIP)?;
    check(failures.is_empty(), format!("{trips} round trips, failures {failures:?}"))
}

fn simple_and_elliptic() -> Result<Outcome, String> {
    let mut nonempty = Vec::new();
    for (name, member) in SIMPLE {
        let u = member.unfold()?;
        if u.k() != 0 {
            nonempty.push(format!("{name} has {} parameters", u.k()));
        }
    }
    let mut dims = Vec::new();
    for f0 in ["x^3+y^3+z^7", "x^4+y^5"] {
        let member = CORPUS.iter().find(|m| m.f0 == f0).expect("corpus member");
        dims.push(member.unfold()?.k());
    }
    check(
        nonempty.is_empty() && dims.iter().all(|&k| k > 0),
        format!("{} simple germs with T- = 0, failures {nonempty:?}; dim T- of the two examples {dims:?}", SIMPLE.len()),
    )
}

fn quartic_quintic_golden() -> Result<Outcome, String> {
    let member = &CORPUS[1];
    let u = member.unfold()?;
    let names = monomial_names(&u);
    let vars = u.milnor().vars();
    let family = u.family();
    let want_family = parse_poly("x^4+y^5+t1*x^2*y^3", u.family_vars()).map_err(|e| e.to_string())?;
    let group = enumerate_diagonal(u.milnor().f0(), u.milnor().weights(), 20).map_err(|e| e.to_string())?;
    let actions: Vec<InducedAction> = group
        .iter()
        .map(|g| theta(g, &u).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let tw = u.parameter_weights();
    let bound = -tw[0] * INVARIANT_EXPONENT_BOUND;
    let invariants = diagonal_invariant_monomials(&actions, tw, bound).map_err(|e| e.to_string())?;
    let generated_by_t10 = invariants == vec![Monomial::new(vec![10])];
    check(
        vars.len() == 2 && family == &want_family && tw == [-2] && generated_by_t10,
        format!(
            "monomials {names:?}, w(t) {tw:?}, {} diagonal symmetries, invariants up to t^{INVARIANT_EXPONENT_BOUND}: {:?}",
            group.len(),
            invariants.iter().map(|m| m.exponents()[0]).collect::<Vec<_>>()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(usize, &str, fn() -> Result<Outcome, String>); 10] = [
        (1, "unfolding of x^3+y^3+z^7", unfolding_golden),
        (2, "matrix from the reference dual generators", matrix_golden),
        (3, "matrix symmetry over the corpus", symmetry_suite),
        (4, "rank and standard-basis tau agree", rank_tau_equivalence),
        (5, "strata of x^3+y^3+z^7", stratification_golden),
        (6, "Lie filtration and mu vector", lie_filtration_golden),
        (7, "induced group of x^3+y^3+z^7", group_golden),
        (8, "reduction round trip", round_trip),
        (9, "simple germs have no negative parameters", simple_and_elliptic),
        (10, "x^4+y^5 invariants", quartic_quintic_golden),
    ];
    let mut unexpected = Vec::new();
    for (number, name, run) in criteria {
        let start = Instant::now();
        let outcome = run().unwrap_or_else(|e| Outcome {
            passed: false,
            detail: e,
        });
        let elapsed = start.elapsed();
        let expected = EXPECTED_FAILURES.iter().find(|(n, _)| *n == number);
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        println!("criterion {number:>2} {status} [{elapsed:.2?}] {name}: {}", outcome.detail);
        match (outcome.passed, expected) {
            (false, Some((_, reason))) => println!("             known failure: {reason}"),
            (true, Some(_)) => unexpected.push(format!("criterion {number} passed but is listed as a known failure")),
            (false, None) => unexpected.push(format!("criterion {number} failed")),
            (true, None) => {}
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria behave as recorded");
        ExitCode::SUCCESS
    } else {
        for u in &unexpected {
            println!("acceptance: {u}");
        }
        ExitCode::FAILURE
    }
}
