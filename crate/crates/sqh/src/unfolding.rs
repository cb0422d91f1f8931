//! Milnor algebra data of f₀, the unfolding of negative weight and the
//! reduction of semiquasihomogeneous germs to their parameter in T₋.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::algebra::{Matrix, Monomial, Poly, Scalar, Vars, WeightSystem};
use crate::error::{Result, SqhError};
use crate::standard_basis::{
    default_truncation, jacobian, monomials_of_degree, standard_basis, LocalOrder, Staircase, StandardBasis,
};

/// Decomposition of one monomial of the graded piece: x^α = Σ aᵢ·∂ᵢf₀ + Σ c_b·b.
#[derive(Clone, Debug)]
struct MonomialSplit {
    derivative_coeffs: Vec<Vec<(Monomial, Scalar)>>,
    staircase_coeffs: Vec<(usize, Scalar)>,
}

#[derive(Debug, Default)]
struct GradedPiece {
    splits: BTreeMap<Monomial, MonomialSplit>,
}

/// f₀ together with its weights, Jacobian standard basis and staircase.
#[derive(Clone, Debug)]
pub struct MilnorData {
    f0: Poly,
    weights: WeightSystem,
    jacobian: Vec<Poly>,
    jacobian_basis: StandardBasis,
    staircase: Staircase,
    tables: Arc<Mutex<BTreeMap<i64, Arc<GradedPiece>>>>,
}

/// h = Σ aᵢ·∂ᵢf₀ + staircase part, exactly, with coefficients in any extra variables.
#[derive(Clone, Debug)]
pub struct GradedSplit {
    pub derivative_coeffs: Vec<Poly>,
    pub staircase_part: Poly,
}

impl MilnorData {
    pub fn new(f0: &Poly, w: &WeightSystem) -> Result<MilnorData> {
        w.require_quasihomogeneous(f0)?;
        let jac = jacobian(f0);
        let order = LocalOrder::from_weights(w);
        let sb = standard_basis(&jac, &order, default_truncation(w)).map_err(|e| match e {
            SqhError::Truncation { .. } => {
                SqhError::NonIsolated(format!("{f0} has an infinite Milnor number"))
            }
            other => other,
        })?;
        let staircase = sb.monomial_basis();
        Ok(MilnorData {
            f0: f0.clone(),
            weights: w.clone(),
            jacobian: jac,
            jacobian_basis: sb,
            staircase,
            tables: Arc::default(),
        })
    }

    pub fn f0(&self) -> &Poly {
        &self.f0
    }

    pub fn weights(&self) -> &WeightSystem {
        &self.weights
    }

    pub fn vars(&self) -> &Vars {
        self.f0.vars()
    }

    pub fn jacobian(&self) -> &[Poly] {
        &self.jacobian
    }

    pub fn jacobian_basis(&self) -> &StandardBasis {
        &self.jacobian_basis
    }

    pub fn staircase(&self) -> &Staircase {
        &self.staircase
    }

    pub fn mu(&self) -> usize {
        self.staircase.dimension()
    }

    fn piece(&self, e: i64) -> Arc<GradedPiece> {
        if let Some(p) = self.tables.lock().expect("table lock").get(&e) {
            return p.clone();
        }
        let piece = Arc::new(self.build_piece(e));
        self.tables
            .lock()
            .expect("table lock")
            .insert(e, piece.clone());
        piece
    }

    /// Solves every monomial of degree e against the columns x^β·∂ᵢf₀ and the
    /// staircase monomials of degree e. Free unknowns are set to zero.
    fn build_piece(&self, e: i64) -> GradedPiece {
        let w = self.weights.weights();
        let d = self.weights.degree();
        let rows = monomials_of_degree(w, e);
        if rows.is_empty() {
            return GradedPiece::default();
        }
        let row_index: BTreeMap<&Monomial, usize> = rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
        // columns: (Some(i), β) for x^β ∂ᵢf₀, (None, b) for staircase b
        let mut columns: Vec<(Option<usize>, Monomial, usize)> = Vec::new();
        for (idx, b) in self.staircase.monomials.iter().enumerate() {
            if self.staircase.degrees[idx] == e {
                columns.push((None, b.clone(), idx));
            }
        }
        for (i, wi) in w.iter().enumerate() {
            for beta in monomials_of_degree(w, e - d + wi) {
                columns.push((Some(i), beta, 0));
            }
        }
        let ncols = columns.len();
        let nrows = rows.len();
        let mut aug = Matrix::zeros(nrows, ncols + nrows);
        for (c, (which, mono, _)) in columns.iter().enumerate() {
            match which {
                None => aug.set(row_index[mono], c, Scalar::one()),
                Some(i) => {
                    for (m, coef) in self.jacobian[*i].terms() {
                        let r = row_index[&m.mul(mono)];
                        let v = aug.get(r, c) + coef;
                        aug.set(r, c, v);
                    }
                }
            }
        }
        for r in 0..nrows {
            aug.set(r, ncols + r, Scalar::one());
        }
        let pivots = aug.rref_in_place();
        let rank = pivots.iter().filter(|&&p| p < ncols).count();
        assert!(
            pivots.iter().all(|&p| p < ncols) && rank == nrows,
            "graded piece of degree {e} is not spanned by the Jacobian ideal and the staircase"
        );
        let n = w.len();
        let mut splits = BTreeMap::new();
        for (j, mono) in rows.iter().enumerate() {
            let mut split = MonomialSplit {
                derivative_coeffs: vec![Vec::new(); n],
                staircase_coeffs: Vec::new(),
            };
            for (r, &pc) in pivots.iter().enumerate() {
                let v = aug.get(r, ncols + j);
                if v.is_zero() {
                    continue;
                }
                let (which, beta, idx) = &columns[pc];
                match which {
                    None => split.staircase_coeffs.push((*idx, v.clone())),
                    Some(i) => split.derivative_coeffs[*i].push((beta.clone(), v.clone())),
                }
            }
            splits.insert(mono.clone(), split);
        }
        GradedPiece { splits }
    }

    /// Splits a polynomial whose first n variables are x (any further variables
    /// are coefficients) into its Jacobian-ideal and staircase components.
    pub fn split_in_jacobian(&self, h: &Poly) -> GradedSplit {
        let n = self.weights.nvars();
        let vars = h.vars().clone();
        let w = self.weights.weights();
        let mut derivative_coeffs = vec![Poly::zero(&vars); n];
        let mut staircase_part = Poly::zero(&vars);
        let mut pieces: BTreeMap<i64, Arc<GradedPiece>> = BTreeMap::new();
        for (m, c) in h.terms() {
            let (xs, rest) = m.exponents().split_at(n);
            let alpha = Monomial::new(xs.to_vec());
            let e = alpha.degree(w);
            let piece = pieces.entry(e).or_insert_with(|| self.piece(e)).clone();
            let split = &piece.splits[&alpha];
            let lift = |x: &Monomial| {
                let mut v = x.exponents().to_vec();
                v.extend_from_slice(rest);
                Monomial::new(v)
            };
            for (i, list) in split.derivative_coeffs.iter().enumerate() {
                for (beta, s) in list {
                    derivative_coeffs[i].add_term(lift(beta), &(c * s));
                }
            }
            for (idx, s) in &split.staircase_coeffs {
                staircase_part.add_term(lift(&self.staircase.monomials[*idx]), &(c * s));
            }
        }
        GradedSplit {
            derivative_coeffs,
            staircase_part,
        }
    }

    /// Weights of the ring x ∪ extra with the extra variables in degree 0.
    pub fn x_grading(&self, total_vars: usize) -> Vec<i64> {
        let mut g = self.weights.weights().to_vec();
        g.resize(total_vars, 0);
        g
    }
}

/// One logged coordinate change xᵢ ↦ images[i] that kills the Jacobian part in `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateChange {
    pub degree: i64,
    pub images: Vec<Poly>,
}

/// Outcome of the graded reduction of a family f(x, s) with f(x, s) − f₀ of x-degree > d.
#[derive(Clone, Debug)]
pub struct GradedReduction {
    /// Coefficient of each upper monomial, as polynomials in the extra variables.
    pub coefficients: Vec<Poly>,
    pub log: Vec<CoordinateChange>,
    /// The reduced family: f₀ + Σ coefficientⱼ·mⱼ modulo x-degree > `residual_degree`.
    pub reduced: Poly,
    pub residual_degree: i64,
}

/// The unfolding F = f₀ + Σ tᵢ·mᵢ over the staircase monomials above degree d.
#[derive(Clone, Debug)]
pub struct NegativeUnfolding {
    milnor: MilnorData,
    upper: Vec<Monomial>,
    t_weights: Vec<i64>,
    family_vars: Vars,
    parameter_vars: Vars,
    family: Poly,
}

impl NegativeUnfolding {
    pub fn milnor(&self) -> &MilnorData {
        &self.milnor
    }

    pub fn upper_monomials(&self) -> &[Monomial] {
        &self.upper
    }

    pub fn upper_degrees(&self) -> Vec<i64> {
        let w = self.milnor.weights.weights();
        self.upper.iter().map(|m| m.degree(w)).collect()
    }

    pub fn parameter_weights(&self) -> &[i64] {
        &self.t_weights
    }

    pub fn k(&self) -> usize {
        self.upper.len()
    }

    /// Variables x₁..xₙ followed by t1..tk.
    pub fn family_vars(&self) -> &Vars {
        &self.family_vars
    }

    /// The parameter variables t1..tk on their own.
    pub fn parameter_vars(&self) -> &Vars {
        &self.parameter_vars
    }

    pub fn family(&self) -> &Poly {
        &self.family
    }

    /// Weights of x followed by the (negative) weights of t.
    pub fn family_weights(&self) -> Vec<i64> {
        let mut w = self.milnor.weights.weights().to_vec();
        w.extend_from_slice(&self.t_weights);
        w
    }

    pub fn max_upper_degree(&self) -> i64 {
        self.upper_degrees()
            .into_iter()
            .max()
            .unwrap_or(self.milnor.weights.degree())
    }

    pub fn upper_polys(&self) -> Vec<Poly> {
        let vars = self.milnor.vars();
        self.upper
            .iter()
            .map(|m| Poly::monomial(vars, m.clone(), Scalar::one()))
            .collect()
    }

    /// F_t for a concrete parameter.
    pub fn specialize(&self, t: &[Scalar]) -> Result<Poly> {
        if t.len() != self.k() {
            return Err(SqhError::ArityMismatch {
                expected: self.k(),
                found: t.len(),
            });
        }
        let mut f = self.milnor.f0.clone();
        for (m, c) in self.upper.iter().zip(t) {
            f.add_term(m.clone(), c);
        }
        Ok(f)
    }

    /// Graded reduction of a family in the ring x ∪ extra, processing x-degrees
    /// d+1..=`upto`. Terms of x-degree above `upto` are discarded throughout.
    pub fn reduce_family(&self, f: &Poly, extra: &Vars, upto: i64) -> Result<GradedReduction> {
        let n = self.milnor.weights.nvars();
        let d = self.milnor.weights.degree();
        let vars = f.vars().clone();
        if vars.len() != n + extra.len() {
            return Err(SqhError::ArityMismatch {
                expected: n + extra.len(),
                found: vars.len(),
            });
        }
        if upto < self.max_upper_degree() {
            return Err(SqhError::Truncation {
                bound: upto,
                detail: format!("the upper monomials reach degree {}", self.max_upper_degree()),
            });
        }
        let grading = self.milnor.x_grading(vars.len());
        let x_embed: Vec<usize> = (0..n).collect();
        let f0 = self.milnor.f0.embed(&vars, &x_embed);
        let low = f.filter(|m| m.degree(&grading) <= d);
        if low != f0 {
            return Err(SqhError::PrincipalPartMismatch {
                expected: self.milnor.f0.to_string(),
                found: low.to_string(),
            });
        }
        let degrees = self.upper_degrees();
        let mut coefficients = vec![Poly::zero(extra); self.k()];
        let mut log = Vec::new();
        let mut g = f.truncate_above(&grading, upto);
        for e in d + 1..=upto {
            let piece = g.homogeneous_part(&grading, e);
            if piece.is_zero() {
                continue;
            }
            let split = self.milnor.split_in_jacobian(&piece);
            for (m, c) in split.staircase_part.terms() {
                let (xs, rest) = m.exponents().split_at(n);
                let alpha = Monomial::new(xs.to_vec());
                let j = self
                    .upper
                    .iter()
                    .position(|u| *u == alpha)
                    .ok_or_else(|| SqhError::Internal(format!("staircase monomial of degree {e} is not upper")))?;
                debug_assert_eq!(degrees[j], e);
                coefficients[j].add_term(Monomial::new(rest.to_vec()), c);
            }
            if split.derivative_coeffs.iter().all(Poly::is_zero) {
                continue;
            }
            let images: Vec<Poly> = (0..n)
                .map(|i| Poly::var(&vars, i).sub(&split.derivative_coeffs[i]))
                .collect();
            let mut full_images = images.clone();
            full_images.extend((n..vars.len()).map(|i| Poly::var(&vars, i)));
            g = g.substitute_truncated(&full_images, &grading, upto);
            log.push(CoordinateChange { degree: e, images });
        }
        Ok(GradedReduction {
            coefficients,
            log,
            reduced: g,
            residual_degree: upto,
        })
    }
}

/// Composite of logged changes as one substitution (x ↦ P(x)).
pub fn compose_log(log: &[CoordinateChange], vars: &Vars, grading: &[i64], upto: i64) -> Vec<Poly> {
    let total = vars.len();
    let n = log.first().map_or(0, |c| c.images.len());
    let mut composite: Vec<Poly> = (0..n).map(|i| Poly::var(vars, i)).collect();
    for change in log {
        let mut images = change.images.clone();
        images.extend((n..total).map(|i| Poly::var(vars, i)));
        composite = composite
            .iter()
            .map(|p| p.substitute_truncated(&images, grading, upto))
            .collect();
    }
    composite
}

pub fn negative_unfolding(f0: &Poly, w: &WeightSystem) -> Result<NegativeUnfolding> {
    let milnor = MilnorData::new(f0, w)?;
    let d = w.degree();
    let st = milnor.staircase();
    let upper: Vec<Monomial> = st
        .monomials
        .iter()
        .zip(&st.degrees)
        .filter(|(_, &deg)| deg > d)
        .map(|(m, _)| m.clone())
        .collect();
    let t_weights: Vec<i64> = upper.iter().map(|m| d - m.degree(w.weights())).collect();
    let k = upper.len();
    let t_names: Vec<String> = (1..=k).map(|i| format!("t{i}")).collect();
    for name in &t_names {
        if f0.vars().index_of(name).is_some() {
            return Err(SqhError::Precondition(format!(
                "variable name {name} is reserved for unfolding parameters"
            )));
        }
    }
    let parameter_vars = Vars::new(t_names.clone());
    let family_vars = Vars::new(f0.vars().names().iter().cloned().chain(t_names));
    let n = w.nvars();
    let mut family = f0.embed(&family_vars, &(0..n).collect::<Vec<_>>());
    for (j, m) in upper.iter().enumerate() {
        let mut e = m.exponents().to_vec();
        e.resize(n + k, 0);
        e[n + j] = 1;
        family.add_term(Monomial::new(e), &Scalar::one());
    }
    Ok(NegativeUnfolding {
        milnor,
        upper,
        t_weights,
        family_vars,
        parameter_vars,
        family,
    })
}

pub fn specialize(u: &NegativeUnfolding, t: &[Scalar]) -> Result<Poly> {
    u.specialize(t)
}

/// The parameter t ∈ T₋ of a germ with principal part f₀, with the coordinate
/// changes that bring it to F_t.
#[derive(Clone, Debug)]
pub struct ReductionResult {
    pub t: Vec<Scalar>,
    pub log: Vec<CoordinateChange>,
    pub residual_degree: i64,
}

impl ReductionResult {
    /// Replays the log on `f` and compares with F_t up to the residual degree.
    pub fn replay_matches(&self, f: &Poly, u: &NegativeUnfolding) -> Result<bool> {
        let w = u.milnor().weights().weights();
        let vars = f.vars();
        let composite = if self.log.is_empty() {
            (0..vars.len()).map(|i| Poly::var(vars, i)).collect()
        } else {
            compose_log(&self.log, vars, w, self.residual_degree)
        };
        let transformed = f.substitute_truncated(&composite, w, self.residual_degree);
        let target = u.specialize(&self.t)?.truncate_above(w, self.residual_degree);
        Ok(transformed == target)
    }
}

/// Reduction with the default truncation degree of the Milnor data.
pub fn reduce_to_t_minus(f: &Poly, u: &NegativeUnfolding) -> Result<ReductionResult> {
    reduce_to_t_minus_with(f, u, u.milnor().jacobian_basis().truncation())
}

pub fn reduce_to_t_minus_with(f: &Poly, u: &NegativeUnfolding, truncation: i64) -> Result<ReductionResult> {
    let w = u.milnor().weights();
    if f.nvars() != w.nvars() {
        return Err(SqhError::ArityMismatch {
            expected: w.nvars(),
            found: f.nvars(),
        });
    }
    let pp = w.principal_part(f)?;
    if pp != *u.milnor().f0() || !f.filter(|m| m.degree(w.weights()) < w.degree()).is_empty() {
        return Err(SqhError::PrincipalPartMismatch {
            expected: u.milnor().f0().to_string(),
            found: pp.to_string(),
        });
    }
    let empty = Vars::new(Vec::<String>::new());
    let red = u.reduce_family(f, &empty, truncation)?;
    let t: Vec<Scalar> = red.coefficients.iter().map(Poly::constant_term).collect();
    let result = ReductionResult {
        t,
        log: red.log,
        residual_degree: truncation,
    };
    if !result.replay_matches(f, u)? {
        return Err(SqhError::Internal("replay of the coordinate changes does not reach F_t".into()));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn xyz() -> Vars {
        Vars::new(["x", "y", "z"])
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, &xyz()).unwrap()
    }

    fn running() -> NegativeUnfolding {
        negative_unfolding(&p("x^3+y^3+z^7"), &WeightSystem::new(vec![7, 7, 3], 21).unwrap()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn running_example_upper_monomials() {
        let u = running();
        let shown: Vec<String> = u.upper_polys().iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["x*z^5", "y*z^5", "x*y*z^3", "x*y*z^4", "x*y*z^5"]);
        assert_eq!(u.parameter_weights(), &[-1, -1, -2, -5, -8]);
        assert!(u.family().is_homogeneous_of(&u.family_weights(), 21));
    }

    #[test]
    fn simple_and_curve_examples() {
        let v2 = Vars::new(["x", "y"]);
        let u = negative_unfolding(&parse_poly("x^2+y^2", &v2).unwrap(), &WeightSystem::new(vec![1, 1], 2).unwrap())
            .unwrap();
        assert_eq!(u.k(), 0);
        let u = negative_unfolding(&parse_poly("x^3+y^7", &v2).unwrap(), &WeightSystem::new(vec![7, 3], 21).unwrap())
            .unwrap();
        assert_eq!(u.upper_polys()[0].to_string(), "x*y^5");
        assert_eq!(u.parameter_weights(), &[-1]);
    }

    #[test]
    fn simple_singularities_have_no_parameters() {
        let v2 = Vars::new(["x", "y"]);
        let mut cases: Vec<(String, Vec<i64>, i64)> = (1..=6)
            .map(|k| (format!("x^{}+y^2", k + 1), vec![2, k + 1], 2 * (k + 1)))
            .collect();
        cases.push(("x^2*y+y^3".into(), vec![2, 2], 6));
        cases.push(("x^2*y+y^4".into(), vec![3, 2], 8));
        cases.push(("x^3+y^4".into(), vec![4, 3], 12));
        cases.push(("x^3+x*y^3".into(), vec![3, 2], 9));
        cases.push(("x^3+y^5".into(), vec![5, 3], 15));
        for (f, w, d) in cases {
            let u = negative_unfolding(&parse_poly(&f, &v2).unwrap(), &WeightSystem::new(w, d).unwrap()).unwrap();
            assert_eq!(u.k(), 0, "{f}");
        }
    }

    #[test]
    fn specialize_examples() {
        let u = running();
        assert_eq!(u.specialize(&ints(&[0, 0, 0, 0, 0])).unwrap(), p("x^3+y^3+z^7"));
        assert_eq!(u.specialize(&ints(&[0, 0, 0, 0, 1])).unwrap(), p("x^3+y^3+z^7+x*y*z^5"));
        assert_eq!(u.specialize(&ints(&[1, 0, 0, 0, 0])).unwrap(), p("x^3+y^3+z^7+x*z^5"));
        assert!(u.specialize(&ints(&[1])).is_err());
    }

    #[test]
    fn reduction_examples() {
        let u = running();
        let t = vec![
            Scalar::from_int(3),
            Scalar::from_int(-2),
            Scalar::from_ratio(1, 2),
            Scalar::zero(),
            Scalar::from_int(7),
        ];
        let r = reduce_to_t_minus(&u.specialize(&t).unwrap(), &u).unwrap();
        assert_eq!(r.t, t);
        assert!(r.log.is_empty());

        let r = reduce_to_t_minus(&p("x^3+y^3+z^7+z^8"), &u).unwrap();
        assert_eq!(r.t, ints(&[0, 0, 0, 0, 0]));
        assert!(!r.log.is_empty());

        let r = reduce_to_t_minus(&p("x^3+y^3+z^7+x*y*z^3"), &u).unwrap();
        assert_eq!(r.t, ints(&[0, 0, 1, 0, 0]));
    }

    #[test]
    fn principal_part_mismatch() {
        let u = running();
        let err = reduce_to_t_minus(&p("x^3+2*y^3+z^7"), &u).unwrap_err();
        assert!(matches!(err, SqhError::PrincipalPartMismatch { .. }));
        let err = reduce_to_t_minus(&p("x^3+y^3+z^7+x^2"), &u).unwrap_err();
        assert!(matches!(err, SqhError::PrincipalPartMismatch { .. }));
    }

    #[test]
    fn coordinate_noise_is_absorbed() {
        let u = running();
        let t = ints(&[1, 2, -1, 3, 5]);
        let ft = u.specialize(&t).unwrap();
        let psi = vec![p("x+y*z^2+z^3"), p("y-x*z"), p("z+z^2+x*y")];
        let noisy = ft.substitute_truncated(&psi, &[7, 7, 3], 55);
        let r = reduce_to_t_minus(&noisy, &u).unwrap();
        assert_eq!(r.t, t);
    }

    #[test]
    fn split_is_exact() {
        let u = running();
        let h = p("x^2*z+5*x*y*z^5+z^9+x*y^2+y*z^5");
        let s = u.milnor().split_in_jacobian(&h);
        let mut back = s.staircase_part.clone();
        for (a, j) in s.derivative_coeffs.iter().zip(u.milnor().jacobian()) {
            back = back.add(&a.mul(j));
        }
        assert_eq!(back, h);
        assert_eq!(s.staircase_part, p("5*x*y*z^5+y*z^5"));
    }
}
