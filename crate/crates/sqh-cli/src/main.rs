//! `sqh`: runs the classification pipeline on a problem file.

mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use sqh::algebra::{format_monomial, Poly, Scalar};
use sqh::kodaira_spencer::{ks_matrix, lie_filtrations, KsMatrix};
use sqh::standard_basis::default_truncation;
use sqh::stratification::{
    classify_point, default_invariant_bound, lplus_invariants, strata_symbolic, tau_at_point, SamplerConfig,
};
use sqh::symmetry::{
    enumerate_diagonal, group_closure, orbit_equivalent_contact, orbit_equivalent_right, theta, Decision,
    GradedAutomorphism,
};
use sqh::unfolding::{negative_unfolding, reduce_to_t_minus_with, NegativeUnfolding};
use sqh::{Result, SqhError};

use input::{point_from_input, poly_from_input, EquivalenceKind, Problem, FORMAT_VERSION};
use report::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Command {
    Analyze,
    Unfold,
    Reduce,
    Ks,
    Strata,
    Tau,
    Classify,
    Theta,
    Invariants,
}

#[derive(Parser, Debug)]
#[command(name = "sqh", about = "Classify semiquasihomogeneous singularities with a fixed principal part")]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Problem file (TOML).
    #[arg(long)]
    input: PathBuf,
    /// Where to write the JSON report; the text report goes to stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    truncation: Option<i64>,
    #[arg(long)]
    conductor: Option<u32>,
    #[arg(long)]
    max_orbit: Option<usize>,
}

const EXIT_INTERNAL: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_TRUNCATION: u8 = 4;
const EXIT_UNDETERMINED: u8 = 5;

fn exit_code(e: &SqhError) -> u8 {
    match e {
        SqhError::Parse(_) => EXIT_PARSE,
        SqhError::Truncation { .. } => EXIT_TRUNCATION,
        SqhError::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_PRECONDITION,
    }
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(T::to_string).collect()
}

struct Context {
    problem: Problem,
    seed: u64,
    truncation: Option<i64>,
    conductor: Option<u32>,
    max_orbit: usize,
}

struct Stages {
    unfolding: NegativeUnfolding,
    matrix: Option<KsMatrix>,
}

impl Context {
    fn matrix(&self, st: &mut Stages) -> Result<KsMatrix> {
        if let Some(m) = &st.matrix {
            return Ok(m.clone());
        }
        let u = &st.unfolding;
        let m = match &self.problem.raw.dual_generators {
            Some(list) => {
                let gens = list
                    .iter()
                    .map(|p| poly_from_input(p, u.family_vars()))
                    .collect::<Result<Vec<_>>>()?;
                ks_matrix(u, Some(&gens))?
            }
            None => ks_matrix(u, None)?,
        };
        st.matrix = Some(m.clone());
        Ok(m)
    }

    fn automorphisms(&self) -> Result<Vec<(String, GradedAutomorphism)>> {
        let p = &self.problem;
        if !p.raw.generators.is_empty() {
            return p
                .raw
                .generators
                .iter()
                .map(|g| {
                    let images = g
                        .images
                        .iter()
                        .map(|i| poly_from_input(i, &p.vars))
                        .collect::<Result<Vec<_>>>()?;
                    Ok((g.name.clone(), GradedAutomorphism::new(images, &p.weights)?))
                })
                .collect();
        }
        match self.conductor {
            Some(n) => Ok(enumerate_diagonal(&p.f0, &p.weights, n)?
                .into_iter()
                .enumerate()
                .map(|(i, g)| (format!("diagonal{}", i + 1), g))
                .collect()),
            None => Ok(Vec::new()),
        }
    }

    fn points(&self) -> Result<Vec<Vec<Scalar>>> {
        self.problem.raw.points.iter().map(|p| point_from_input(p)).collect()
    }
}

fn unfolding_section(u: &NegativeUnfolding) -> UnfoldingSection {
    let md = u.milnor();
    UnfoldingSection {
        mu: md.mu(),
        basis: md
            .staircase()
            .monomials
            .iter()
            .map(|m| monomial_text(md.vars(), m))
            .collect(),
        upper_monomials: u
            .upper_monomials()
            .iter()
            .map(|m| monomial_text(md.vars(), m))
            .collect(),
        upper_degrees: u.upper_degrees(),
        parameter_weights: u.parameter_weights().to_vec(),
        family: u.family().to_string(),
    }
}

fn monomial_text(vars: &sqh::algebra::Vars, m: &sqh::algebra::Monomial) -> String {
    let s = format_monomial(vars, m);
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

fn run(cmd: Command, ctx: &Context) -> Result<Report> {
    let p = &ctx.problem;
    let mut report = Report {
        format_version: FORMAT_VERSION,
        command: format!("{cmd:?}").to_lowercase(),
        problem: ProblemSummary {
            variables: p.raw.variables.clone(),
            weights: p.raw.weights.clone(),
            degree: p.raw.degree,
            f0: p.f0.to_string(),
        },
        ..Report::default()
    };
    let mut st = Stages {
        unfolding: negative_unfolding(&p.f0, &p.weights)?,
        matrix: None,
    };
    let all = cmd == Command::Analyze;

    if all || cmd == Command::Unfold {
        report.unfolding = Some(unfolding_section(&st.unfolding));
    }
    if all || cmd == Command::Ks {
        let m = ctx.matrix(&mut st)?;
        let u = &st.unfolding;
        report.ks_matrix = Some(MatrixSection {
            generators: strings(&m.generators),
            generator_degrees: m.generator_degrees.clone(),
            entries: m.entries.iter().map(|r| strings(r)).collect(),
            symmetric: m.symmetric,
            graded: m.graded,
            symmetry_defects: m.symmetry_defects(),
        });
        let lie = lie_filtrations(u, &m)?;
        report.lie = Some(LieSection {
            s: lie.s,
            levels: lie.levels,
            z_generators: lie.z_generators,
            row_degrees: lie.row_degrees,
            condition_f: lie.condition_f,
            condition_z: lie.condition_z,
        });
    }
    if all || cmd == Command::Strata {
        let m = ctx.matrix(&mut st)?;
        let u = &st.unfolding;
        let cfg = SamplerConfig {
            seed: ctx.seed,
            ..SamplerConfig::default()
        };
        let rep = strata_symbolic(&m, u, &cfg)?;
        let strata = rep
            .strata
            .iter()
            .map(|s| {
                Ok(StratumSection {
                    rank: s.rank.clone(),
                    tau: s.tau.clone(),
                    equations: strings(&s.equations),
                    inequations: s.inequations.iter().map(|g| strings(g)).collect(),
                    samples: s.samples.iter().map(|p| strings(p)).collect(),
                    normal_form: u.specialize(&s.samples[0])?.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        report.undetermined |= !rep.undetermined.is_empty();
        report.strata = Some(StrataSection {
            hilbert_levels: rep.levels,
            mu_vector: rep.mu,
            sigma: rep.sigma,
            strata,
            undetermined: rep.undetermined,
            exhaustive: rep.exhaustive,
            points_sampled: rep.points_sampled,
            seed: ctx.seed,
        });
    }
    let invariant_bound = p
        .raw
        .invariant_bound
        .unwrap_or_else(|| default_invariant_bound(&st.unfolding));
    let mut invariants: Vec<Poly> = Vec::new();
    if all || cmd == Command::Invariants {
        let m = ctx.matrix(&mut st)?;
        invariants = lplus_invariants(&m, &st.unfolding, invariant_bound);
        report.invariants = Some(InvariantSection {
            degree_bound: invariant_bound,
            generators: strings(&invariants),
        });
    }
    if all || cmd == Command::Tau || cmd == Command::Classify {
        let classify = cmd != Command::Tau;
        let m = if classify { Some(ctx.matrix(&mut st)?) } else { None };
        let u = &st.unfolding;
        for t in ctx.points()? {
            let section = match &m {
                Some(m) => {
                    let c = classify_point(u, m, None, &invariants, &t)?;
                    PointSection {
                        t: strings(&t),
                        tau: c.tau,
                        hilbert: c.hilbert.values,
                        rank: c.rank,
                        normal_form: c.normal_form.to_string(),
                        invariant_values: strings(&c.invariant_values),
                    }
                }
                None => {
                    let (tau, hf) = tau_at_point(u, &t)?;
                    PointSection {
                        t: strings(&t),
                        tau,
                        hilbert: hf.values,
                        rank: Vec::new(),
                        normal_form: u.specialize(&t)?.to_string(),
                        invariant_values: Vec::new(),
                    }
                }
            };
            report.points.push(section);
        }
    }
    if all || cmd == Command::Reduce {
        let u = &st.unfolding;
        let bound = ctx.truncation.unwrap_or_else(|| default_truncation(&p.weights));
        for g in &p.raw.reduce {
            let f = poly_from_input(g, &p.vars)?;
            let r = reduce_to_t_minus_with(&f, u, bound)?;
            report.reductions.push(ReductionSection {
                input: f.to_string(),
                t: strings(&r.t),
                coordinate_changes: r.log.len(),
                residual_degree: r.residual_degree,
            });
        }
    }
    if all || cmd == Command::Theta {
        let needs_matrix = p.raw.equivalence.iter().any(|e| matches!(e.kind, EquivalenceKind::Contact));
        let m = if needs_matrix { Some(ctx.matrix(&mut st)?) } else { None };
        let u = &st.unfolding;
        let autos = ctx.automorphisms()?;
        let mut actions = Vec::new();
        let mut sections = Vec::new();
        for (name, g) in &autos {
            let a = theta(g, u)?;
            sections.push(ActionSection {
                name: name.clone(),
                images: strings(&g.images),
                theta: strings(&a.components),
            });
            actions.push(a);
        }
        let closure = group_closure(&actions, u.parameter_vars(), ctx.max_orbit);
        report.undetermined |= !closure.complete;
        report.group = Some(GroupSection {
            conductor: ctx.conductor,
            actions: sections,
            closure_size: closure.elements.len(),
            closure_complete: closure.complete,
        });
        let gens: Vec<GradedAutomorphism> = autos.into_iter().map(|(_, g)| g).collect();
        for e in &p.raw.equivalence {
            let t = point_from_input(&e.t)?;
            let tp = point_from_input(&e.t_prime)?;
            let decision = match e.kind {
                EquivalenceKind::Right => orbit_equivalent_right(&t, &tp, &gens, u, ctx.max_orbit)?,
                EquivalenceKind::Contact => {
                    let m = m.as_ref().expect("computed above");
                    orbit_equivalent_contact(&t, &tp, &gens, u, m, ctx.max_orbit)?
                }
            };
            let text = match &decision {
                Decision::Equivalent => "equivalent".to_string(),
                Decision::NotEquivalent => "not equivalent".to_string(),
                Decision::Undetermined(why) => {
                    report.undetermined = true;
                    format!("undetermined: {why}")
                }
            };
            report.equivalence.push(EquivalenceSection {
                kind: format!("{:?}", e.kind).to_lowercase(),
                t: strings(&t),
                t_prime: strings(&tp),
                decision: text,
            });
        }
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match std::fs::read_to_string(&cli.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", cli.input.display());
            return ExitCode::from(EXIT_INTERNAL);
        }
    };
    let problem = match Problem::from_toml(&text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let ctx = Context {
        seed: cli.seed.or(problem.raw.seed).unwrap_or(SamplerConfig::default().seed),
        truncation: cli.truncation.or(problem.raw.truncation),
        conductor: cli.conductor.or(problem.raw.conductor),
        max_orbit: cli.max_orbit.or(problem.raw.max_orbit).unwrap_or(10_000),
        problem,
    };
    let report = match run(cli.command, &ctx) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    print!("{}", report.render_text());
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_INTERNAL);
        }
    }
    if report.undetermined {
        ExitCode::from(EXIT_UNDETERMINED)
    } else {
        ExitCode::SUCCESS
    }
}
