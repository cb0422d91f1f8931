//! Standard bases of zero-dimensional ideals in the local ring C{x}.
//!
//! Computations run in C[x]/H_{>D}, where H_{>D} is spanned by the monomials
//! of weighted degree above the truncation degree D. Every reduction therefore
//! terminates. A basis is only returned once its staircase tops out at degree
//! ≤ D − max wᵢ, which by Nakayama's lemma shows H_{>D} lies in the ideal, so
//! dropping those terms is exact rather than an approximation.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{Monomial, Poly, Scalar, Vars, WeightSystem};
use crate::error::{Result, SqhError};

/// Local weighted order: lower weighted degree is larger, so 1 is the largest
/// monomial; ties are broken reverse-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalOrder {
    weights: Vec<i64>,
}

impl LocalOrder {
    pub fn new(weights: Vec<i64>) -> Self {
        assert!(weights.iter().all(|&w| w > 0), "local order needs positive weights");
        LocalOrder { weights }
    }

    pub fn from_weights(w: &WeightSystem) -> Self {
        LocalOrder::new(w.weights().to_vec())
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn degree(&self, m: &Monomial) -> i64 {
        m.degree(&self.weights)
    }

    /// `Greater` when `a` is the larger monomial.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.degree(b)
            .cmp(&self.degree(a))
            .then_with(|| a.revlex_cmp(b))
    }

    pub fn lead_term<'a>(&self, p: &'a Poly) -> Option<(&'a Monomial, &'a Scalar)> {
        p.terms().max_by(|a, b| self.cmp(a.0, b.0))
    }

    /// Sorts monomials from largest to smallest: ascending degree, ties reverse-lexicographic.
    pub fn sort_desc(&self, monos: &mut [Monomial]) {
        monos.sort_by(|a, b| self.cmp(b, a));
    }

    pub fn format(&self, p: &Poly) -> String {
        p.format_with(|a, b| self.cmp(a, b))
    }

    fn key(&self, m: &Monomial) -> Key {
        let mut rev = m.exponents().to_vec();
        rev.reverse();
        (self.degree(m), rev)
    }
}

/// Sort key whose ascending order is the descending local order.
type Key = (i64, Vec<u32>);

fn key_to_monomial(k: &Key) -> Monomial {
    let mut e = k.1.clone();
    e.reverse();
    Monomial::new(e)
}

/// Default truncation degree n·d − 2Σwᵢ + d.
pub fn default_truncation(w: &WeightSystem) -> i64 {
    w.socle_degree() + w.degree()
}

/// A generator prepared for division.
#[derive(Clone, Debug)]
struct Reducer {
    lead: Monomial,
    lead_coeff_inv: Scalar,
    ecart: i64,
    terms: Vec<(Monomial, Scalar, i64)>,
}

impl Reducer {
    fn new(p: &Poly, order: &LocalOrder) -> Self {
        let (lead, lc) = order.lead_term(p).expect("reducer is nonzero");
        let ld = order.degree(lead);
        let terms: Vec<_> = p
            .terms()
            .map(|(m, c)| (m.clone(), c.clone(), order.degree(m)))
            .collect();
        let maxd = terms.iter().map(|t| t.2).max().unwrap_or(ld);
        Reducer {
            lead: lead.clone(),
            lead_coeff_inv: lc.inverse().expect("nonzero lead"),
            ecart: maxd - ld,
            terms,
        }
    }
}

/// Quotients and remainder of a division: f ≡ Σ qᵢ·gᵢ + r modulo H_{>D}.
#[derive(Clone, Debug)]
pub struct Division {
    pub remainder: Poly,
    pub quotients: Vec<Poly>,
}

struct Work<'a> {
    order: &'a LocalOrder,
    bound: i64,
    map: BTreeMap<Key, Scalar>,
}

impl<'a> Work<'a> {
    fn from_poly(p: &Poly, order: &'a LocalOrder, bound: i64) -> Self {
        let mut map = BTreeMap::new();
        for (m, c) in p.terms() {
            let k = order.key(m);
            if k.0 <= bound {
                map.insert(k, c.clone());
            }
        }
        Work { order, bound, map }
    }

    fn sub_scaled(&mut self, c: &Scalar, mono: &Monomial, mono_deg: i64, r: &Reducer) {
        for (m, a, d) in &r.terms {
            let deg = d + mono_deg;
            if deg > self.bound {
                continue;
            }
            let prod = m.mul(mono);
            let k = self.order.key(&prod);
            let delta = c * a;
            match self.map.entry(k) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(-delta);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    *o.get_mut() -= &delta;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
            }
        }
    }
}

/// Division with Mora's selection rule: among reducers whose lead divides the
/// current lead, take the one of least écart. Terms above `bound` are dropped.
fn divide(
    f: &Poly,
    reducers: &[Reducer],
    order: &LocalOrder,
    bound: i64,
    full: bool,
    transcript: bool,
) -> Division {
    let vars = f.vars().clone();
    let mut work = Work::from_poly(f, order, bound);
    let mut remainder = Poly::zero(&vars);
    let mut quotients = if transcript {
        vec![Poly::zero(&vars); reducers.len()]
    } else {
        Vec::new()
    };
    while let Some((k, c)) = work.map.pop_first() {
        let lead = key_to_monomial(&k);
        let choice = reducers
            .iter()
            .enumerate()
            .filter(|(_, r)| r.lead.divides(&lead))
            .min_by_key(|(i, r)| (r.ecart, *i));
        match choice {
            Some((i, r)) => {
                let mono = r.lead.quotient_of(&lead).expect("divisibility checked");
                let factor = &c * &r.lead_coeff_inv;
                let mono_deg = order.degree(&mono);
                // the lead cancels exactly; subtract the rest
                work.map.insert(k, c);
                work.sub_scaled(&factor, &mono, mono_deg, r);
                debug_assert!(!work.map.contains_key(&order.key(&lead)));
                if transcript {
                    quotients[i].add_term(mono, &factor);
                }
            }
            None => {
                remainder.add_term(lead, &c);
                if !full {
                    for (k2, c2) in std::mem::take(&mut work.map) {
                        remainder.add_term(key_to_monomial(&k2), &c2);
                    }
                }
            }
        }
    }
    Division {
        remainder,
        quotients,
    }
}

/// A reduced standard basis of an ideal of C{x} modulo H_{>D}.
#[derive(Clone, Debug)]
pub struct StandardBasis {
    order: LocalOrder,
    truncation: i64,
    input: Vec<Poly>,
    generators: Vec<Poly>,
    reducers: Vec<Reducer>,
    staircase: Vec<Monomial>,
}

/// Monomial basis of the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    pub monomials: Vec<Monomial>,
    pub degrees: Vec<i64>,
}

impl Staircase {
    pub fn dimension(&self) -> usize {
        self.monomials.len()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.monomials.iter().position(|b| b == m)
    }
}

/// All monomials of weighted degree ≤ `max` (positive weights).
pub fn monomials_up_to(weights: &[i64], max: i64) -> Vec<Monomial> {
    fn rec(weights: &[i64], i: usize, left: i64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            out.push(Monomial::new(cur.clone()));
            return;
        }
        let mut e = 0;
        while e as i64 * weights[i] <= left {
            cur.push(e);
            rec(weights, i + 1, left - e as i64 * weights[i], cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    if max >= 0 {
        rec(weights, 0, max, &mut Vec::new(), &mut out);
    }
    out
}

/// All monomials of weighted degree exactly `degree`.
pub fn monomials_of_degree(weights: &[i64], degree: i64) -> Vec<Monomial> {
    monomials_up_to(weights, degree)
        .into_iter()
        .filter(|m| m.degree(weights) == degree)
        .collect()
}

fn normalize(p: &Poly, order: &LocalOrder) -> Poly {
    let (_, lc) = order.lead_term(p).expect("nonzero");
    p.scale(&lc.inverse().expect("nonzero lead"))
}

impl StandardBasis {
    /// Buchberger's algorithm in C[x]/H_{>D} followed by certification of the staircase.
    pub fn compute(gens: &[Poly], order: &LocalOrder, truncation: i64) -> Result<StandardBasis> {
        let nvars = order.weights.len();
        let vars = match gens.first() {
            Some(g) => g.vars().clone(),
            None => return Err(SqhError::Precondition("standard basis of the empty ideal".into())),
        };
        for g in gens {
            if g.nvars() != nvars {
                return Err(SqhError::ArityMismatch {
                    expected: nvars,
                    found: g.nvars(),
                });
            }
        }
        let bound = truncation;
        let mut basis: Vec<Poly> = Vec::new();
        let mut reducers: Vec<Reducer> = Vec::new();
        let mut pairs: BTreeSet<(i64, usize, usize)> = BTreeSet::new();

        let add = |p: Poly, basis: &mut Vec<Poly>, reducers: &mut Vec<Reducer>, pairs: &mut BTreeSet<(i64, usize, usize)>| {
            let p = normalize(&p, order);
            let r = Reducer::new(&p, order);
            let k = basis.len();
            for (i, other) in reducers.iter().enumerate() {
                let l = other.lead.lcm(&r.lead);
                pairs.insert((order.degree(&l), i, k));
            }
            basis.push(p);
            reducers.push(r);
        };

        let mut sorted: Vec<Poly> = gens.iter().map(|g| g.truncate_above(&order.weights, bound)).collect();
        sorted.retain(|g| !g.is_zero());
        for g in sorted {
            let r = divide(&g, &reducers, order, bound, true, false).remainder;
            if !r.is_zero() {
                add(r, &mut basis, &mut reducers, &mut pairs);
            }
        }

        while let Some((ldeg, i, j)) = pairs.pop_first() {
            if ldeg > bound {
                continue;
            }
            let (ri, rj) = (&reducers[i], &reducers[j]);
            if ri.lead.is_coprime(&rj.lead) {
                continue;
            }
            let l = ri.lead.lcm(&rj.lead);
            let mi = ri.lead.quotient_of(&l).expect("lcm");
            let mj = rj.lead.quotient_of(&l).expect("lcm");
            let s = basis[i]
                .mul_monomial(&mi, &Scalar::one())
                .sub(&basis[j].mul_monomial(&mj, &Scalar::one()))
                .truncate_above(&order.weights, bound);
            let r = divide(&s, &reducers, order, bound, true, false).remainder;
            if !r.is_zero() {
                add(r, &mut basis, &mut reducers, &mut pairs);
            }
        }

        // minimalize
        let mut keep: Vec<usize> = Vec::new();
        for i in 0..basis.len() {
            let li = &reducers[i].lead;
            let redundant = (0..basis.len()).any(|j| {
                j != i && reducers[j].lead.divides(li) && (reducers[j].lead != *li || j < i)
            });
            if !redundant {
                keep.push(i);
            }
        }
        let minimal: Vec<Poly> = keep.iter().map(|&i| basis[i].clone()).collect();
        let min_reducers: Vec<Reducer> = keep.iter().map(|&i| reducers[i].clone()).collect();

        // interreduce the tails
        let mut generators = Vec::with_capacity(minimal.len());
        for g in &minimal {
            let (lm, lc) = order.lead_term(g).expect("nonzero");
            let tail = g.filter(|m| m != lm);
            let reduced_tail = divide(&tail, &min_reducers, order, bound, true, false).remainder;
            let mut p = reduced_tail;
            p.add_term(lm.clone(), lc);
            generators.push(p);
        }
        generators.sort_by(|a, b| {
            order.cmp(order.lead_term(b).expect("nonzero").0, order.lead_term(a).expect("nonzero").0)
        });
        let reducers: Vec<Reducer> = generators.iter().map(|g| Reducer::new(g, order)).collect();

        let mut staircase: Vec<Monomial> = monomials_up_to(&order.weights, bound)
            .into_iter()
            .filter(|m| !reducers.iter().any(|r| r.lead.divides(m)))
            .collect();
        order.sort_desc(&mut staircase);
        let wmax = *order.weights.iter().max().expect("nonempty");
        if let Some(top) = staircase.iter().map(|m| order.degree(m)).max() {
            if top + wmax > bound {
                return Err(SqhError::Truncation {
                    bound,
                    detail: format!(
                        "staircase reaches degree {top}; the ideal is not zero-dimensional or D must exceed {}",
                        top + wmax - 1
                    ),
                });
            }
        }
        let sb = StandardBasis {
            order: order.clone(),
            truncation: bound,
            input: gens.to_vec(),
            generators,
            reducers,
            staircase,
        };
        sb.certify_staircase(&vars)?;
        Ok(sb)
    }

    /// Checks that every (staircase monomial)·(variable) reduces into the span of the staircase.
    fn certify_staircase(&self, vars: &Vars) -> Result<()> {
        let n = vars.len();
        for b in &self.staircase {
            for i in 0..n {
                let prod = Poly::monomial(vars, b.mul(&Monomial::var(n, i)), Scalar::one());
                let r = self.reduce(&prod);
                let escaped = r.terms().find(|(m, _)| !self.staircase.contains(m)).map(|(m, _)| m.clone());
                if let Some(m) = escaped {
                    return Err(SqhError::Internal(format!(
                        "normal form leaves the staircase at {}",
                        crate::algebra::poly::format_monomial(vars, &m)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> &LocalOrder {
        &self.order
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn input(&self) -> &[Poly] {
        &self.input
    }

    pub fn lead_monomials(&self) -> Vec<Monomial> {
        self.reducers.iter().map(|r| r.lead.clone()).collect()
    }

    /// Fully reduced normal form; terms beyond D lie in the ideal and are dropped.
    pub fn reduce(&self, f: &Poly) -> Poly {
        divide(f, &self.reducers, &self.order, self.truncation, true, false).remainder
    }

    /// Division against the reduced generators, keeping the quotients.
    pub fn reduce_with_transcript(&self, f: &Poly) -> Division {
        divide(f, &self.reducers, &self.order, self.truncation, true, true)
    }

    /// Re-multiplies a transcript: f − Σ qᵢgᵢ − r vanishes up to degree D.
    pub fn verify_division(&self, f: &Poly, div: &Division) -> bool {
        let w = &self.order.weights;
        let mut acc = f.sub(&div.remainder);
        for (q, g) in div.quotients.iter().zip(&self.generators) {
            acc = acc.sub(&q.mul_truncated(g, w, self.truncation));
        }
        acc.truncate_above(w, self.truncation).is_zero()
    }

    pub fn monomial_basis(&self) -> Staircase {
        Staircase {
            degrees: self.staircase.iter().map(|m| self.order.degree(m)).collect(),
            monomials: self.staircase.clone(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.staircase.len()
    }

    /// Number of staircase monomials of weighted degree < `bound`.
    pub fn count_below(&self, bound: i64) -> usize {
        self.staircase
            .iter()
            .filter(|m| self.order.degree(m) < bound)
            .count()
    }
}

/// Standard basis with an explicit order and truncation degree.
pub fn standard_basis(gens: &[Poly], order: &LocalOrder, truncation: i64) -> Result<StandardBasis> {
    StandardBasis::compute(gens, order, truncation)
}

pub fn mora_reduce(f: &Poly, basis: &StandardBasis) -> Result<Poly> {
    if f.nvars() != basis.order.weights.len() {
        return Err(SqhError::ArityMismatch {
            expected: basis.order.weights.len(),
            found: f.nvars(),
        });
    }
    Ok(basis.reduce(f))
}

pub fn monomial_basis(sb: &StandardBasis) -> Staircase {
    sb.monomial_basis()
}

/// The partial derivatives of `f`.
pub fn jacobian(f: &Poly) -> Vec<Poly> {
    (0..f.nvars()).map(|i| f.derivative(i)).collect()
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
pub fn poly_determinant(m: &[Vec<Poly>], vars: &Vars) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(vars);
    }
    let mut memo: BTreeMap<(usize, u64), Poly> = BTreeMap::new();
    det_rec(m, 0, (1u64 << n) - 1, vars, &mut memo)
}

fn det_rec(m: &[Vec<Poly>], row: usize, cols: u64, vars: &Vars, memo: &mut BTreeMap<(usize, u64), Poly>) -> Poly {
    if cols == 0 {
        return Poly::one(vars);
    }
    if let Some(p) = memo.get(&(row, cols)) {
        return p.clone();
    }
    let mut acc = Poly::zero(vars);
    let mut sign_pos = true;
    for c in 0..m[row].len() {
        if cols & (1 << c) == 0 {
            continue;
        }
        let entry = &m[row][c];
        if !entry.is_zero() {
            let minor = det_rec(m, row + 1, cols & !(1 << c), vars, memo);
            let term = entry.mul(&minor);
            acc = if sign_pos { acc.add(&term) } else { acc.sub(&term) };
        }
        sign_pos = !sign_pos;
    }
    memo.insert((row, cols), acc.clone());
    acc
}

/// Hessian of f₀, the socle monomial of its Milnor algebra and the scale c
/// with hess ≡ c·(socle monomial).
#[derive(Clone, Debug)]
pub struct HessianSocle {
    pub hessian: Poly,
    pub socle: Monomial,
    pub scale: Scalar,
}

pub fn hessian_socle(f0: &Poly, w: &WeightSystem) -> Result<HessianSocle> {
    w.require_quasihomogeneous(f0)?;
    let vars = f0.vars().clone();
    let n = f0.nvars();
    let grad = jacobian(f0);
    let second: Vec<Vec<Poly>> = (0..n)
        .map(|i| (0..n).map(|j| grad[i].derivative(j)).collect())
        .collect();
    let hessian = poly_determinant(&second, &vars);
    let order = LocalOrder::from_weights(w);
    let sb = standard_basis(&grad, &order, default_truncation(w)).map_err(|e| match e {
        SqhError::Truncation { .. } => SqhError::NonIsolated(format!("Milnor algebra of {f0} is infinite")),
        other => other,
    })?;
    let nf = sb.reduce(&hessian);
    if nf.is_zero() {
        return Err(SqhError::NonIsolated(format!("hessian of {f0} vanishes in the Milnor algebra")));
    }
    let socle_deg = w.socle_degree();
    let socles: Vec<&Monomial> = sb
        .staircase
        .iter()
        .filter(|m| order.degree(m) == socle_deg)
        .collect();
    if socles.len() != 1 || nf.len() != 1 {
        return Err(SqhError::Internal(format!(
            "hessian class {nf} is not a multiple of a unique socle monomial"
        )));
    }
    let socle = socles[0].clone();
    let scale = nf.coeff(&socle);
    if scale.is_zero() {
        return Err(SqhError::Internal("hessian class misses the socle monomial".into()));
    }
    Ok(HessianSocle {
        hessian,
        socle,
        scale,
    })
}

/// dim C{x}/(gens, H^m) where H^m is spanned by monomials of degree ≥ m·w_min.
pub fn filtered_quotient_dim(gens: &[Poly], m: i64, w: &WeightSystem) -> Result<usize> {
    let sb = standard_basis(gens, &LocalOrder::from_weights(w), default_truncation(w))?;
    Ok(sb.count_below(m * w.min_weight()))
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

    fn running() -> (Poly, WeightSystem) {
        (p("x^3+y^3+z^7"), WeightSystem::new(vec![7, 7, 3], 21).unwrap())
    }

    fn jac_sb() -> StandardBasis {
        let (f, w) = running();
        standard_basis(&jacobian(&f), &LocalOrder::from_weights(&w), default_truncation(&w)).unwrap()
    }

    #[test]
    fn order_examples() {
        let o = LocalOrder::new(vec![7, 7, 3]);
        assert_eq!(o.cmp(&Monomial::one(3), &Monomial::var(3, 2)), Ordering::Greater);
        // equal degree 22: x z^5 ranks above y z^5
        assert_eq!(
            o.cmp(&Monomial::new(vec![1, 0, 5]), &Monomial::new(vec![0, 1, 5])),
            Ordering::Greater
        );
    }

    #[test]
    fn jacobian_of_running_example() {
        let sb = jac_sb();
        let mut leads = sb.lead_monomials();
        leads.sort();
        let mut want = vec![Monomial::new(vec![2, 0, 0]), Monomial::new(vec![0, 2, 0]), Monomial::new(vec![0, 0, 6])];
        want.sort();
        assert_eq!(leads, want);
        let st = sb.monomial_basis();
        assert_eq!(st.dimension(), 24);
        assert!(st
            .monomials
            .iter()
            .all(|m| m.exponents()[0] <= 1 && m.exponents()[1] <= 1 && m.exponents()[2] <= 5));
        assert_eq!(st.monomials[0], Monomial::one(3));
        assert_eq!(st.monomials[23], Monomial::new(vec![1, 1, 5]));
    }

    #[test]
    fn reduction_examples() {
        let sb = jac_sb();
        assert!(mora_reduce(&p("x^2"), &sb).unwrap().is_zero());
        assert_eq!(mora_reduce(&p("x*y*z^5"), &sb).unwrap(), p("x*y*z^5"));
        assert!(mora_reduce(&p("z^8"), &sb).unwrap().is_zero());
        let f = p("x^2*z+3*x*y*z^5+z^9+y");
        let div = sb.reduce_with_transcript(&f);
        assert!(sb.verify_division(&f, &div));
        assert_eq!(div.remainder, p("3*x*y*z^5+y"));
    }

    #[test]
    fn trivial_and_product_staircases() {
        let v = Vars::new(["x"]);
        let sb = standard_basis(&[parse_poly("x", &v).unwrap()], &LocalOrder::new(vec![1]), 3).unwrap();
        assert_eq!(sb.dimension(), 1);
        assert_eq!(sb.monomial_basis().monomials, vec![Monomial::one(1)]);
        let v2 = Vars::new(["x", "y"]);
        let gens = [parse_poly("x^2", &v2).unwrap(), parse_poly("y^6", &v2).unwrap()];
        let sb = standard_basis(&gens, &LocalOrder::new(vec![3, 1]), 20).unwrap();
        assert_eq!(sb.dimension(), 12);
    }

    #[test]
    fn non_zero_dimensional_is_reported() {
        let v2 = Vars::new(["x", "y"]);
        let gens = [parse_poly("x^2", &v2).unwrap()];
        let err = standard_basis(&gens, &LocalOrder::new(vec![1, 1]), 10).unwrap_err();
        assert!(matches!(err, SqhError::Truncation { .. }));
    }

    #[test]
    fn unit_generator_gives_trivial_quotient() {
        let v2 = Vars::new(["x", "y"]);
        let gens = [parse_poly("1+x", &v2).unwrap()];
        let sb = standard_basis(&gens, &LocalOrder::new(vec![1, 1]), 6).unwrap();
        assert_eq!(sb.dimension(), 0);
    }

    #[test]
    fn hessian_examples() {
        let (f, w) = running();
        let h = hessian_socle(&f, &w).unwrap();
        assert_eq!(h.hessian, p("1512*x*y*z^5"));
        assert_eq!(h.socle, Monomial::new(vec![1, 1, 5]));
        assert_eq!(h.scale, Scalar::from_int(1512));

        let v2 = Vars::new(["x", "y"]);
        let morse = parse_poly("x^2+y^2", &v2).unwrap();
        let h = hessian_socle(&morse, &WeightSystem::new(vec![1, 1], 2).unwrap()).unwrap();
        assert_eq!(h.hessian, parse_poly("4", &v2).unwrap());
        assert_eq!(h.socle, Monomial::one(2));

        let e = parse_poly("x^4+y^5", &v2).unwrap();
        let h = hessian_socle(&e, &WeightSystem::new(vec![5, 4], 20).unwrap()).unwrap();
        assert_eq!(h.hessian, parse_poly("240*x^2*y^3", &v2).unwrap());
        assert_eq!(h.socle, Monomial::new(vec![2, 3]));
        assert_eq!(h.scale, Scalar::from_int(240));
    }

    #[test]
    fn filtered_dimensions() {
        let (f, w) = running();
        let j = jacobian(&f);
        assert_eq!(filtered_quotient_dim(&j, 8, &w).unwrap(), 22);
        assert_eq!(filtered_quotient_dim(&j, 7, &w).unwrap(), 19);
        assert_eq!(filtered_quotient_dim(&j, 100, &w).unwrap(), 24);
    }

    #[test]
    fn determinant_small() {
        let v = xyz();
        let m = vec![
            vec![p("x"), p("y")],
            vec![p("z"), p("1")],
        ];
        assert_eq!(poly_determinant(&m, &v), p("x-y*z"));
    }
}
