//! Graded automorphisms of f₀, the action θ(φ) they induce on T₋, diagonal
//! symmetry groups, group closure and orbit-equivalence of parameters under
//! right and contact equivalence.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::algebra::{Matrix, Monomial, Poly, Scalar, Vars, WeightSystem};
use crate::error::{Result, SqhError};
use crate::kodaira_spencer::{lie_filtrations, KsMatrix, VectorField};
use crate::stratification::tau_at_point;
use crate::unfolding::NegativeUnfolding;

/// φ: xᵢ ↦ images[i], each image quasihomogeneous of degree wᵢ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAutomorphism {
    pub images: Vec<Poly>,
}

impl GradedAutomorphism {
    /// Checks the grading and that the linear part on each weight class is invertible.
    pub fn new(images: Vec<Poly>, w: &WeightSystem) -> Result<Self> {
        let n = w.nvars();
        if images.len() != n {
            return Err(SqhError::ArityMismatch {
                expected: n,
                found: images.len(),
            });
        }
        let vars = images.first().map(|p| p.vars().clone());
        for (i, p) in images.iter().enumerate() {
            if p.nvars() != n || Some(p.vars()) != vars.as_ref() {
                return Err(SqhError::ArityMismatch {
                    expected: n,
                    found: p.nvars(),
                });
            }
            if p.is_zero() || !p.is_homogeneous_of(w.weights(), w.weights()[i]) {
                return Err(SqhError::NotGraded {
                    variable: p.vars().name(i).to_string(),
                    image: p.to_string(),
                });
            }
        }
        let mut classes: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, &wi) in w.weights().iter().enumerate() {
            classes.entry(wi).or_default().push(i);
        }
        for class in classes.values() {
            let rows = class
                .iter()
                .map(|&i| class.iter().map(|&j| images[i].coeff(&Monomial::var(n, j))).collect())
                .collect();
            if Matrix::from_rows(rows).rank() < class.len() {
                return Err(SqhError::Precondition(format!(
                    "linear part on the variables of weight {} is singular",
                    w.weights()[class[0]]
                )));
            }
        }
        Ok(GradedAutomorphism { images })
    }

    pub fn identity(vars: &Vars) -> Self {
        GradedAutomorphism {
            images: (0..vars.len()).map(|i| Poly::var(vars, i)).collect(),
        }
    }

    /// xᵢ ↦ cᵢ·xᵢ.
    pub fn diagonal(vars: &Vars, factors: &[Scalar]) -> Self {
        GradedAutomorphism {
            images: factors
                .iter()
                .enumerate()
                .map(|(i, c)| Poly::var(vars, i).scale(c))
                .collect(),
        }
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        f.substitute(&self.images)
    }

    /// The automorphism whose substitution first applies `other`, then `self`
    /// (images otherᵢ(self(x))), so that θ(a.then(b)) = θ(a)∘θ(b).
    pub fn then(&self, other: &GradedAutomorphism) -> GradedAutomorphism {
        GradedAutomorphism {
            images: other.images.iter().map(|p| p.substitute(&self.images)).collect(),
        }
    }
}

/// compose(φ, ψ) has images ψᵢ(φ(x)); θ(compose(φ, ψ)) = θ(φ)∘θ(ψ).
pub fn compose(phi: &GradedAutomorphism, psi: &GradedAutomorphism) -> GradedAutomorphism {
    phi.then(psi)
}

/// Is f₀∘φ = f₀?
pub fn verify_automorphism(phi: &GradedAutomorphism, f0: &Poly, w: &WeightSystem) -> Result<bool> {
    let checked = GradedAutomorphism::new(phi.images.clone(), w)?;
    if f0.vars() != checked.images[0].vars() {
        return Err(SqhError::Precondition("automorphism and f₀ live in different rings".into()));
    }
    Ok(checked.apply(f0) == *f0)
}

/// θ(φ): T₋ → T₋ given by polynomials in t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedAction {
    pub components: Vec<Poly>,
}

impl InducedAction {
    pub fn identity(tvars: &Vars) -> Self {
        InducedAction {
            components: (0..tvars.len()).map(|i| Poly::var(tvars, i)).collect(),
        }
    }

    pub fn apply(&self, t: &[Scalar]) -> Vec<Scalar> {
        self.components.iter().map(|p| p.evaluate(t)).collect()
    }

    /// (self ∘ other)(t) = self(other(t)).
    pub fn compose(&self, other: &InducedAction) -> InducedAction {
        InducedAction {
            components: self
                .components
                .iter()
                .map(|p| p.substitute(&other.components))
                .collect(),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.components.iter().map(Poly::conductor).fold(1, lcm)
    }

    /// Canonical text identifying the map, with scalars written in Q(ζ_n).
    fn key(&self, n: u32) -> String {
        let mut s = String::new();
        for p in &self.components {
            for (m, c) in p.terms() {
                s.push_str(&format!("{:?}:{};", m.exponents(), c.key_in(n)));
            }
            s.push('|');
        }
        s
    }

    /// Each component a scalar multiple of its own variable.
    pub fn diagonal_factors(&self) -> Option<Vec<Scalar>> {
        self.components
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let var = Monomial::var(p.nvars(), i);
                (p.len() == 1 && !p.coeff(&var).is_zero()).then(|| p.coeff(&var))
            })
            .collect()
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    num_integer::lcm(a, b)
}

/// Reduces F∘φ, with t symbolic, back to the form f₀ + Σ sᵢ(t)·mᵢ.
pub fn theta(phi: &GradedAutomorphism, u: &NegativeUnfolding) -> Result<InducedAction> {
    let md = u.milnor();
    if !verify_automorphism(phi, md.f0(), md.weights())? {
        return Err(SqhError::Precondition("the map does not fix f₀".into()));
    }
    let n = md.weights().nvars();
    let fvars = u.family_vars();
    let embed: Vec<usize> = (0..n).collect();
    let mut images: Vec<Poly> = phi.images.iter().map(|p| p.embed(fvars, &embed)).collect();
    images.extend((n..fvars.len()).map(|i| Poly::var(fvars, i)));
    let moved = u.family().substitute(&images);
    let reduction = u.reduce_family(&moved, u.parameter_vars(), u.max_upper_degree())?;
    let tw = u.parameter_weights();
    for (i, c) in reduction.coefficients.iter().enumerate() {
        if !c.is_zero() && !c.is_homogeneous_of(tw, tw[i]) {
            return Err(SqhError::Internal(format!(
                "θ(φ)(t{}) = {c} is not quasihomogeneous of degree {}",
                i + 1,
                tw[i]
            )));
        }
    }
    Ok(InducedAction {
        components: reduction.coefficients,
    })
}

/// All xᵢ ↦ ζ_N^{eᵢ}xᵢ fixing f₀, from the congruences Σ αᵢeᵢ ≡ 0 mod N.
pub fn enumerate_diagonal(f0: &Poly, w: &WeightSystem, conductor: u32) -> Result<Vec<GradedAutomorphism>> {
    let n = w.nvars();
    if f0.nvars() != n {
        return Err(SqhError::ArityMismatch {
            expected: n,
            found: f0.nvars(),
        });
    }
    if conductor == 0 {
        return Err(SqhError::Conductor {
            conductor,
            detail: "must be positive".into(),
        });
    }
    for (m, _) in f0.terms() {
        let nonzero: Vec<u32> = m.exponents().iter().copied().filter(|&e| e > 0).collect();
        if let [a] = nonzero[..] {
            if conductor % a != 0 {
                return Err(SqhError::Conductor {
                    conductor,
                    detail: format!("the pure power of degree {a} needs its roots of unity"),
                });
            }
        }
    }
    let total = (conductor as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if total > 5_000_000 {
        return Err(SqhError::Precondition(format!("{total} exponent vectors are too many to enumerate")));
    }
    let monos: Vec<Vec<u32>> = f0.terms().map(|(m, _)| m.exponents().to_vec()).collect();
    let vars = f0.vars().clone();
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    loop {
        let fixes = monos.iter().all(|alpha| {
            let s: u64 = alpha.iter().zip(&exps).map(|(a, e)| *a as u64 * *e as u64).sum();
            s % conductor as u64 == 0
        });
        if fixes {
            let factors: Vec<Scalar> = exps
                .iter()
                .map(|&e| Scalar::root_of_unity(conductor, e as i64))
                .collect();
            out.push(GradedAutomorphism::diagonal(&vars, &factors));
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(out);
            }
            exps[i] += 1;
            if exps[i] < conductor {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

#[derive(Clone, Debug)]
pub struct GroupClosure {
    pub elements: Vec<InducedAction>,
    /// False when the cap stopped the enumeration.
    pub complete: bool,
}

/// Breadth-first closure of the generated group of induced maps.
pub fn group_closure(generators: &[InducedAction], tvars: &Vars, cap: usize) -> GroupClosure {
    let conductor = generators.iter().map(InducedAction::conductor).fold(1, lcm);
    let id = InducedAction::identity(tvars);
    let mut seen = BTreeMap::new();
    seen.insert(id.key(conductor), ());
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for h in generators {
            let next = h.compose(&g);
            let key = next.key(conductor);
            if seen.contains_key(&key) {
                continue;
            }
            if elements.len() >= cap {
                return GroupClosure {
                    elements,
                    complete: false,
                };
            }
            seen.insert(key, ());
            elements.push(next.clone());
            queue.push_back(next);
        }
    }
    GroupClosure {
        elements,
        complete: true,
    }
}

/// The monomials t^γ with weight ≥ −`bound` fixed by every diagonal action.
pub fn diagonal_invariant_monomials(actions: &[InducedAction], weights: &[i64], bound: i64) -> Result<Vec<Monomial>> {
    let factors: Vec<Vec<Scalar>> = actions
        .iter()
        .map(|a| {
            a.diagonal_factors()
                .ok_or_else(|| SqhError::Precondition("induced action is not diagonal".into()))
        })
        .collect::<Result<_>>()?;
    let monos = crate::kodaira_spencer::parameter_monomials_down_to(weights, -bound);
    Ok(monos
        .into_iter()
        .filter(|m| !m.is_one())
        .filter(|m| {
            factors.iter().all(|f| {
                let mut c = Scalar::one();
                for (e, s) in m.exponents().iter().zip(f) {
                    c *= &s.pow(*e as i64);
                }
                c.is_one()
            })
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Equivalent,
    NotEquivalent,
    Undetermined(String),
}

fn check_arity(u: &NegativeUnfolding, t: &[Scalar]) -> Result<()> {
    if t.len() != u.k() {
        return Err(SqhError::ArityMismatch {
            expected: u.k(),
            found: t.len(),
        });
    }
    Ok(())
}

fn induced_group(gens: &[GradedAutomorphism], u: &NegativeUnfolding, cap: usize) -> Result<GroupClosure> {
    let actions = gens.iter().map(|g| theta(g, u)).collect::<Result<Vec<_>>>()?;
    Ok(group_closure(&actions, u.parameter_vars(), cap))
}

/// Is t′ = θ(g)(t) for some g in the group generated by `gens`?
pub fn orbit_equivalent_right(
    t: &[Scalar],
    t_prime: &[Scalar],
    gens: &[GradedAutomorphism],
    u: &NegativeUnfolding,
    cap: usize,
) -> Result<Decision> {
    check_arity(u, t)?;
    check_arity(u, t_prime)?;
    if t == t_prime {
        return Ok(Decision::Equivalent);
    }
    if tau_at_point(u, t)?.1 != tau_at_point(u, t_prime)?.1 {
        return Ok(Decision::NotEquivalent);
    }
    let group = induced_group(gens, u, cap)?;
    if group.elements.iter().any(|g| g.apply(t) == t_prime) {
        return Ok(Decision::Equivalent);
    }
    if group.complete {
        Ok(Decision::NotEquivalent)
    } else {
        Ok(Decision::Undetermined(format!(
            "group enumeration stopped at {cap} elements"
        )))
    }
}

/// Linearly independent fields of L₊ sorted by degree, so that the spans of
/// the tails are ideals.
fn unipotent_basis(u: &NegativeUnfolding, m: &KsMatrix) -> Result<Vec<VectorField>> {
    let lie = lie_filtrations(u, m)?;
    let mut fields: Vec<(i64, VectorField)> = lie
        .lplus_degrees
        .iter()
        .copied()
        .zip(lie.lplus)
        .filter(|(_, f)| !f.is_zero())
        .collect();
    fields.sort_by_key(|(e, _)| *e);
    let mut coords: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let mut rows: Vec<Vec<(usize, Scalar)>> = Vec::new();
    let mut basis = Vec::new();
    let mut rank = 0;
    for (_, f) in fields {
        let mut row = Vec::new();
        for (j, h) in f.components.iter().enumerate() {
            for (mono, c) in h.terms() {
                let len = coords.len();
                let idx = *coords.entry((j, mono.clone())).or_insert(len);
                row.push((idx, c.clone()));
            }
        }
        rows.push(row);
        let mut a = Matrix::zeros(rows.len(), coords.len());
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row {
                a.set(r, *c, v.clone());
            }
        }
        let new_rank = a.rank();
        if new_rank > rank {
            rank = new_rank;
            basis.push(f);
        } else {
            rows.pop();
        }
    }
    Ok(basis)
}

/// exp(c₁X₁)∘…∘exp(c_NX_N) applied to p, as polynomials in c.
fn flow_image(basis: &[VectorField], p: &[Scalar], tvars: &Vars) -> (Vars, Vec<Poly>) {
    let cvars = Vars::new((1..=basis.len()).map(|i| format!("c{i}")));
    let mut point: Vec<Poly> = p.iter().map(|x| Poly::constant(&cvars, x.clone())).collect();
    for (idx, field) in basis.iter().enumerate().rev() {
        let cvar = Poly::var(&cvars, idx);
        let mut next = Vec::with_capacity(point.len());
        for j in 0..point.len() {
            // Lie series Σ cⁿ/n!·Xⁿ(t_j), finite since X raises the degree
            let mut term = Poly::var(tvars, j);
            let mut total = Poly::zero(&cvars);
            let mut factorial = Scalar::one();
            let mut power = Poly::one(&cvars);
            let mut order = 0i64;
            while !term.is_zero() {
                let value = term.substitute(&point);
                total.add_assign(&value.mul(&power).scale(&factorial.inverse().expect("nonzero")));
                order += 1;
                factorial *= &Scalar::from_int(order);
                power = power.mul(&cvar);
                term = field.apply(&term);
            }
            next.push(total);
        }
        point = next;
    }
    (cvars, point)
}

enum Solve {
    Solved,
    Contradiction,
    Stuck,
}

/// Successive elimination of unknowns entering an equation linearly with a
/// constant coefficient.
fn solve_layered(mut equations: Vec<Poly>) -> Solve {
    loop {
        equations.retain(|e| !e.is_zero());
        if equations.is_empty() {
            return Solve::Solved;
        }
        if equations.iter().any(Poly::is_constant) {
            return Solve::Contradiction;
        }
        let mut chosen = None;
        'search: for (idx, e) in equations.iter().enumerate() {
            let nv = e.nvars();
            for v in (0..nv).rev() {
                let var = Monomial::var(nv, v);
                let c = e.coeff(&var);
                if c.is_zero() {
                    continue;
                }
                if e.terms().any(|(m, _)| m.exponents()[v] > 0 && *m != var) {
                    continue;
                }
                let rest = e.filter(|m| *m != var);
                chosen = Some((idx, v, rest.scale(&-c.inverse().expect("nonzero"))));
                break 'search;
            }
        }
        let Some((idx, v, expr)) = chosen else {
            return Solve::Stuck;
        };
        equations.remove(idx);
        let vars = equations.first().map(|e| e.vars().clone());
        if let Some(vars) = vars {
            let images: Vec<Poly> = (0..vars.len())
                .map(|i| if i == v { expr.clone() } else { Poly::var(&vars, i) })
                .collect();
            for e in &mut equations {
                *e = e.substitute(&images);
            }
        }
    }
}

/// An exact n-th root of a rational number, if one exists.
fn rational_root(r: &BigRational, n: u32) -> Option<BigRational> {
    let root = |x: &BigInt| -> Option<BigInt> {
        if x.is_negative() && n % 2 == 0 {
            return None;
        }
        let y = x.nth_root(n);
        (y.pow(n) == *x).then_some(y)
    };
    Some(BigRational::new(root(r.numer())?, root(r.denom())?))
}

/// Membership in the orbit of exp(L₊) ⋊ (E·C*): t′ = λ·u(e(t)).
pub fn orbit_equivalent_contact(
    t: &[Scalar],
    t_prime: &[Scalar],
    gens: &[GradedAutomorphism],
    u: &NegativeUnfolding,
    m: &KsMatrix,
    cap: usize,
) -> Result<Decision> {
    check_arity(u, t)?;
    check_arity(u, t_prime)?;
    if t == t_prime {
        return Ok(Decision::Equivalent);
    }
    if tau_at_point(u, t)?.1 != tau_at_point(u, t_prime)?.1 {
        return Ok(Decision::NotEquivalent);
    }
    let tvars = u.parameter_vars();
    let tw = u.parameter_weights();
    let group = induced_group(gens, u, cap)?;
    let basis = unipotent_basis(u, m)?;
    // canonical order: highest weight first, then index
    let mut order: Vec<usize> = (0..u.k()).collect();
    order.sort_by_key(|&i| (-tw[i], i));

    let mut open: Option<String> = None;
    for e in &group.elements {
        let p = e.apply(t);
        let (cvars, image) = flow_image(&basis, &p, tvars);
        let pivot = order
            .iter()
            .copied()
            .find(|&j| image[j].is_constant() && !image[j].is_zero());
        let Some(j0) = pivot else {
            if image.iter().all(Poly::is_zero) {
                if t_prime.iter().all(Scalar::is_zero) {
                    return Ok(Decision::Equivalent);
                }
                continue;
            }
            open.get_or_insert_with(|| "no coordinate fixed by exp(L₊) is nonzero".into());
            continue;
        };
        // λ^{w(t_j0)} = t′_j0 / p_j0
        let ratio = t_prime[j0].clone() * &image[j0].constant_term().inverse().expect("nonzero");
        if ratio.is_zero() {
            continue;
        }
        let relevant: Vec<usize> = (0..u.k())
            .filter(|&i| !image[i].is_zero() || !t_prime[i].is_zero())
            .collect();
        let w0 = tw[j0];
        // candidate values of λ^{−w(tᵢ)} on the relevant coordinates
        let mut scalings: Vec<BTreeMap<usize, Scalar>> = Vec::new();
        if relevant.iter().all(|&i| tw[i] % w0 == 0) {
            let inv = ratio.inverse().expect("nonzero");
            scalings.push(relevant.iter().map(|&i| (i, inv.pow(tw[i] / w0))).collect());
        } else {
            let root = ratio
                .as_rational()
                .and_then(|r| rational_root(&if w0 < 0 { r.recip() } else { r.clone() }, w0.unsigned_abs() as u32));
            let Some(lambda0) = root else {
                open.get_or_insert_with(|| {
                    format!("λ^{w0} = {ratio} has no root in the working field")
                });
                continue;
            };
            let order_w = w0.unsigned_abs() as u32;
            for k in 0..order_w as i64 {
                let lambda = Scalar::from_rational(lambda0.clone()) * Scalar::root_of_unity(order_w, k);
                scalings.push(relevant.iter().map(|&i| (i, lambda.pow(-tw[i]))).collect());
            }
        }
        for s in scalings {
            let equations: Vec<Poly> = relevant
                .iter()
                .map(|&i| image[i].sub(&Poly::constant(&cvars, t_prime[i].clone() * &s[&i])))
                .collect();
            match solve_layered(equations) {
                Solve::Solved => return Ok(Decision::Equivalent),
                Solve::Contradiction => {}
                Solve::Stuck => {
                    open.get_or_insert_with(|| "flow equations are not triangular".into());
                }
            }
        }
    }
    if !group.complete {
        return Ok(Decision::Undetermined(format!(
            "group enumeration stopped at {cap} elements"
        )));
    }
    Ok(match open {
        Some(reason) => Decision::Undetermined(reason),
        None => Decision::NotEquivalent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::kodaira_spencer::ks_matrix;
    use crate::unfolding::negative_unfolding;
    use std::sync::OnceLock;

    fn running() -> &'static (NegativeUnfolding, KsMatrix) {
        static DATA: OnceLock<(NegativeUnfolding, KsMatrix)> = OnceLock::new();
        DATA.get_or_init(|| {
            let v = Vars::new(["x", "y", "z"]);
            let u = negative_unfolding(
                &parse_poly("x^3+y^3+z^7", &v).unwrap(),
                &WeightSystem::new(vec![7, 7, 3], 21).unwrap(),
            )
            .unwrap();
            let m = ks_matrix(&u, None).unwrap();
            (u, m)
        })
    }

    fn xyz() -> Vars {
        Vars::new(["x", "y", "z"])
    }

    fn w() -> WeightSystem {
        WeightSystem::new(vec![7, 7, 3], 21).unwrap()
    }

    fn diag(factors: [Scalar; 3]) -> GradedAutomorphism {
        GradedAutomorphism::diagonal(&xyz(), &factors)
    }

    fn one() -> Scalar {
        Scalar::one()
    }

    /// α, β, γ, δ with ξ = ζ₂₁⁷ and ζ = ζ₂₁³.
    fn generators() -> Vec<GradedAutomorphism> {
        let v = xyz();
        let xi = Scalar::root_of_unity(21, 7);
        let zeta = Scalar::root_of_unity(21, 3);
        vec![
            GradedAutomorphism::new(vec![Poly::var(&v, 1), Poly::var(&v, 0), Poly::var(&v, 2)], &w()).unwrap(),
            diag([xi.clone(), xi.pow(2), one()]),
            diag([xi.clone(), xi, one()]),
            diag([one(), one(), zeta]),
        ]
    }

    fn tpoly(s: &str) -> Poly {
        parse_poly(s, running().0.parameter_vars()).unwrap()
    }

    #[test]
    fn verification() {
        let f0 = parse_poly("x^3+y^3+z^7", &xyz()).unwrap();
        for g in generators() {
            assert!(verify_automorphism(&g, &f0, &w()).unwrap());
        }
        assert!(verify_automorphism(&GradedAutomorphism::identity(&xyz()), &f0, &w()).unwrap());
        assert!(!verify_automorphism(&diag([Scalar::from_int(2), one(), one()]), &f0, &w()).unwrap());
        let bad = GradedAutomorphism::new(
            vec![parse_poly("x+z", &xyz()).unwrap(), Poly::var(&xyz(), 1), Poly::var(&xyz(), 2)],
            &w(),
        );
        assert!(matches!(bad, Err(SqhError::NotGraded { .. })));
    }

    #[test]
    fn induced_actions() {
        let (u, _) = running();
        let gens = generators();
        let zeta = Scalar::root_of_unity(7, 1);
        let xi = Scalar::root_of_unity(3, 1);
        let scaled = |fs: [Scalar; 5]| InducedAction {
            components: fs
                .iter()
                .enumerate()
                .map(|(i, c)| tpoly(&format!("t{}", i + 1)).scale(c))
                .collect(),
        };
        assert_eq!(
            theta(&gens[0], u).unwrap().components,
            ["t2", "t1", "t3", "t4", "t5"].map(tpoly).to_vec()
        );
        assert_eq!(
            theta(&gens[1], u).unwrap(),
            scaled([xi.clone(), xi.pow(2), one(), one(), one()])
        );
        assert_eq!(
            theta(&gens[2], u).unwrap(),
            scaled([xi.clone(), xi.clone(), xi.pow(2), xi.pow(2), xi.pow(2)])
        );
        assert_eq!(
            theta(&gens[3], u).unwrap(),
            scaled([zeta.pow(5), zeta.pow(5), zeta.pow(3), zeta.pow(4), zeta.pow(5)])
        );
        let id = theta(&GradedAutomorphism::identity(&xyz()), u).unwrap();
        assert_eq!(id, InducedAction::identity(u.parameter_vars()));
    }

    #[test]
    fn homomorphism_and_group() {
        let (u, _) = running();
        let gens = generators();
        let thetas: Vec<InducedAction> = gens.iter().map(|g| theta(g, u).unwrap()).collect();
        for (i, a) in gens.iter().enumerate() {
            for (j, b) in gens.iter().enumerate() {
                let lhs = theta(&compose(a, b), u).unwrap();
                assert_eq!(lhs, thetas[i].compose(&thetas[j]), "pair {i} {j}");
            }
        }
        let closure = group_closure(&thetas, u.parameter_vars(), 1000);
        assert!(closure.complete);
        assert_eq!(closure.elements.len(), 126);
    }

    #[test]
    fn diagonal_groups() {
        let f0 = parse_poly("x^3+y^3+z^7", &xyz()).unwrap();
        assert_eq!(enumerate_diagonal(&f0, &w(), 21).unwrap().len(), 63);
        assert!(matches!(enumerate_diagonal(&f0, &w(), 10), Err(SqhError::Conductor { .. })));

        let v = Vars::new(["x", "y"]);
        let w45 = WeightSystem::new(vec![5, 4], 20).unwrap();
        let f = parse_poly("x^4+y^5", &v).unwrap();
        let group = enumerate_diagonal(&f, &w45, 20).unwrap();
        assert_eq!(group.len(), 20);
        let u = negative_unfolding(&f, &w45).unwrap();
        let actions: Vec<InducedAction> = group.iter().map(|g| theta(g, &u).unwrap()).collect();
        let inv = diagonal_invariant_monomials(&actions, u.parameter_weights(), 40).unwrap();
        assert_eq!(inv, vec![Monomial::new(vec![10]), Monomial::new(vec![20])]);

        let v1 = Vars::new(["x"]);
        let q = parse_poly("x^2", &v1).unwrap();
        let w1 = WeightSystem::new(vec![1], 2).unwrap();
        assert_eq!(enumerate_diagonal(&q, &w1, 2).unwrap().len(), 2);
    }

    #[test]
    fn right_equivalence() {
        let (u, _) = running();
        let gens = generators();
        let xi = Scalar::root_of_unity(3, 1);
        let z = Scalar::zero;
        let t = vec![one(), z(), z(), z(), z()];
        let tp = vec![xi, z(), z(), z(), z()];
        assert_eq!(
            orbit_equivalent_right(&t, &tp, &gens[1..2], u, 1000).unwrap(),
            Decision::Equivalent
        );
        let a = vec![z(), z(), z(), z(), one()];
        let b = vec![z(), z(), z(), one(), z()];
        assert_eq!(orbit_equivalent_right(&a, &a, &[], u, 10).unwrap(), Decision::Equivalent);
        assert_eq!(orbit_equivalent_right(&a, &b, &gens, u, 1000).unwrap(), Decision::NotEquivalent);
    }

    #[test]
    fn contact_equivalence() {
        let (u, m) = running();
        let z = Scalar::zero;
        let a = vec![z(), z(), z(), z(), one()];
        let a2 = vec![z(), z(), z(), z(), Scalar::from_int(2)];
        let b = vec![z(), z(), z(), one(), z()];
        assert_eq!(orbit_equivalent_contact(&a, &a2, &[], u, m, 10).unwrap(), Decision::Equivalent);
        assert_eq!(orbit_equivalent_contact(&a, &a, &[], u, m, 10).unwrap(), Decision::Equivalent);
        assert_eq!(orbit_equivalent_contact(&b, &a, &[], u, m, 10).unwrap(), Decision::NotEquivalent);
        // on the generic stratum t₄, t₅ can be moved freely by exp(L₊)
        let p = [1, 2, 3, 4, 5].map(Scalar::from_int).to_vec();
        let q = [1, 2, 3, -7, 11].map(Scalar::from_int).to_vec();
        assert_eq!(orbit_equivalent_contact(&p, &q, &[], u, m, 10).unwrap(), Decision::Equivalent);
        // λ = 2 sends t₁ to t₁/2 and t₃ to t₃/4
        let r = [Scalar::from_ratio(1, 2), Scalar::one(), Scalar::from_ratio(3, 4), z(), z()].to_vec();
        assert_eq!(orbit_equivalent_contact(&p, &r, &[], u, m, 10).unwrap(), Decision::Equivalent);
        let s = [1, 2, 4, 4, 5].map(Scalar::from_int).to_vec();
        assert_eq!(orbit_equivalent_contact(&p, &s, &[], u, m, 10).unwrap(), Decision::NotEquivalent);
    }
}
