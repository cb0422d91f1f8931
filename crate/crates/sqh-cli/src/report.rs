//! The report document: serialized to JSON as the machine-readable contract
//! and rendered as plain text for reading.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub format_version: u32,
    pub command: String,
    pub problem: ProblemSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unfolding: Option<UnfoldingSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ks_matrix: Option<MatrixSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lie: Option<LieSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strata: Option<StrataSection>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<PointSection>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reductions: Vec<ReductionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantSection>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub equivalence: Vec<EquivalenceSection>,
    pub undetermined: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemSummary {
    pub variables: Vec<String>,
    pub weights: Vec<i64>,
    pub degree: i64,
    pub f0: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnfoldingSection {
    pub mu: usize,
    pub basis: Vec<String>,
    pub upper_monomials: Vec<String>,
    pub upper_degrees: Vec<i64>,
    pub parameter_weights: Vec<i64>,
    pub family: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixSection {
    pub generators: Vec<String>,
    pub generator_degrees: Vec<i64>,
    pub entries: Vec<Vec<String>>,
    pub symmetric: bool,
    pub graded: bool,
    pub symmetry_defects: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieSection {
    pub s: i64,
    pub levels: Vec<i64>,
    pub z_generators: Vec<Vec<usize>>,
    pub row_degrees: Vec<Option<i64>>,
    pub condition_f: bool,
    pub condition_z: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumSection {
    pub rank: Vec<usize>,
    pub tau: Vec<usize>,
    pub equations: Vec<String>,
    pub inequations: Vec<Vec<String>>,
    pub samples: Vec<Vec<String>>,
    pub normal_form: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrataSection {
    pub hilbert_levels: Vec<i64>,
    pub mu_vector: Vec<usize>,
    pub sigma: Vec<Vec<usize>>,
    pub strata: Vec<StratumSection>,
    pub undetermined: Vec<Vec<usize>>,
    pub exhaustive: bool,
    pub points_sampled: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSection {
    pub t: Vec<String>,
    pub tau: usize,
    pub hilbert: Vec<usize>,
    pub rank: Vec<usize>,
    pub normal_form: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub invariant_values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionSection {
    pub input: String,
    pub t: Vec<String>,
    pub coordinate_changes: usize,
    pub residual_degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSection {
    pub name: String,
    pub images: Vec<String>,
    pub theta: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSection {
    pub conductor: Option<u32>,
    pub actions: Vec<ActionSection>,
    pub closure_size: usize,
    pub closure_complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSection {
    pub degree_bound: i64,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceSection {
    pub kind: String,
    pub t: Vec<String>,
    pub t_prime: Vec<String>,
    pub decision: String,
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let p = &self.problem;
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "f0 = {} in ({})", p.f0, p.variables.join(", "));
        let _ = writeln!(out, "weights ({}), degree {}", join(&p.weights), p.degree);
        if let Some(u) = &self.unfolding {
            let _ = writeln!(out, "\nMilnor number mu = {}", u.mu);
            let _ = writeln!(out, "basis: {}", u.basis.join(", "));
            let _ = writeln!(out, "upper monomials and parameter weights:");
            for (i, m) in u.upper_monomials.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  t{} * {}  (degree {}, weight {})",
                    i + 1,
                    m,
                    u.upper_degrees[i],
                    u.parameter_weights[i]
                );
            }
            let _ = writeln!(out, "F = {}", u.family);
        }
        if let Some(m) = &self.ks_matrix {
            let _ = writeln!(out, "\ndual generators:");
            for (i, g) in m.generators.iter().enumerate() {
                let _ = writeln!(out, "  n{} = {}  (degree {})", i + 1, g, m.generator_degrees[i]);
            }
            let _ = writeln!(out, "matrix (row i: coefficients of delta_i):");
            for row in &m.entries {
                let _ = writeln!(out, "  [{}]", row.join(", "));
            }
            let _ = writeln!(out, "symmetric: {}, graded: {}", m.symmetric, m.graded);
            if !m.symmetry_defects.is_empty() {
                let _ = writeln!(out, "asymmetric entries: {:?}", m.symmetry_defects);
            }
        }
        if let Some(l) = &self.lie {
            let _ = writeln!(out, "\ns = {}, r = ({})", l.s, join(&l.levels));
            for (j, z) in l.z_generators.iter().enumerate() {
                let _ = writeln!(out, "  Z{} spanned by delta_{{{}}}", j + 1, join(z));
            }
            let _ = writeln!(out, "condition (F): {}, condition (Z): {}", l.condition_f, l.condition_z);
        }
        if let Some(s) = &self.strata {
            let _ = writeln!(out, "\nmu vector ({}) at levels ({})", join(&s.mu_vector), join(&s.hilbert_levels));
            let _ = writeln!(out, "Sigma = {{{}}}", s.sigma.iter().map(|r| format!("({})", join(r))).collect::<Vec<_>>().join(", "));
            for st in &s.strata {
                let _ = writeln!(out, "  U({}): tau = ({})", join(&st.rank), join(&st.tau));
                let _ = writeln!(out, "    equations: {}", if st.equations.is_empty() { "none".into() } else { st.equations.join(", ") });
                for g in &st.inequations {
                    let _ = writeln!(out, "    not all zero: {}", g.join(", "));
                }
                let _ = writeln!(out, "    normal form at ({}): {}", st.samples[0].join(", "), st.normal_form);
            }
            for r in &s.undetermined {
                let _ = writeln!(out, "  U({}): undetermined", join(r));
            }
            if !s.exhaustive {
                let _ = writeln!(out, "  only sampled rank vectors were examined");
            }
        }
        for pt in &self.points {
            let _ = writeln!(out, "\npoint ({})", pt.t.join(", "));
            let _ = writeln!(out, "  tau = {}, hilbert function ({}), rank ({})", pt.tau, join(&pt.hilbert), join(&pt.rank));
            let _ = writeln!(out, "  normal form: {}", pt.normal_form);
            if !pt.invariant_values.is_empty() {
                let _ = writeln!(out, "  invariant values: {}", pt.invariant_values.join(", "));
            }
        }
        for r in &self.reductions {
            let _ = writeln!(out, "\nreduce {}", r.input);
            let _ = writeln!(out, "  t = ({}) after {} coordinate changes", r.t.join(", "), r.coordinate_changes);
        }
        if let Some(g) = &self.group {
            let _ = writeln!(out, "\nsymmetries:");
            for a in &g.actions {
                let _ = writeln!(out, "  {}: ({}) -> theta: ({})", a.name, a.images.join(", "), a.theta.join(", "));
            }
            let _ = writeln!(
                out,
                "  induced group: {} elements{}",
                g.closure_size,
                if g.closure_complete { "" } else { " (enumeration capped)" }
            );
        }
        if let Some(inv) = &self.invariants {
            let _ = writeln!(out, "\ninvariants of L+ down to degree -{}: {}", inv.degree_bound, inv.generators.join(", "));
        }
        for e in &self.equivalence {
            let _ = writeln!(out, "\n{} equivalence ({}) ~ ({}): {}", e.kind, e.t.join(", "), e.t_prime.join(", "), e.decision);
        }
        if self.undetermined {
            let _ = writeln!(out, "\nsome results are undetermined");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let report = Report {
            format_version: 1,
            command: "strata".into(),
            problem: ProblemSummary {
                variables: vec!["x".into(), "y".into()],
                weights: vec![5, 4],
                degree: 20,
                f0: "x^4+y^5".into(),
            },
            strata: Some(StrataSection {
                hilbert_levels: vec![6],
                mu_vector: vec![12],
                sigma: vec![vec![0], vec![1]],
                strata: vec![StratumSection {
                    rank: vec![1],
                    tau: vec![11],
                    equations: vec![],
                    inequations: vec![vec!["t1".into()]],
                    samples: vec![vec!["-1/3".into()]],
                    normal_form: "x^4+y^5-1/3*x^2*y^3".into(),
                }],
                undetermined: vec![],
                exhaustive: true,
                points_sampled: 503,
                seed: 1,
            }),
            points: vec![PointSection {
                t: vec!["z20^3".into()],
                tau: 11,
                hilbert: vec![11],
                rank: vec![1],
                normal_form: "x^4+y^5".into(),
                invariant_values: vec![],
            }],
            ..Report::default()
        };
        let text = report.to_json();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.to_json(), text);
    }
}
