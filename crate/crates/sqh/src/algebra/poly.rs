//! Sparse multivariate polynomials with exact coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::scalar::Scalar;

/// Exponent vector of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn degree(&self, weights: &[i64]) -> i64 {
        debug_assert_eq!(weights.len(), self.0.len());
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(
                other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Squarefree part: every positive exponent replaced by 1.
    pub fn support(&self) -> Monomial {
        Monomial(self.0.iter().map(|&e| u32::from(e > 0)).collect())
    }

    /// Reverse-lexicographic comparison: the monomial with the smaller
    /// exponent in the last differing variable is larger.
    pub fn revlex_cmp(&self, other: &Monomial) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            match a.cmp(b) {
                Ordering::Equal => continue,
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

/// Ordered variable names shared by polynomials of one ring.
#[derive(Clone, Debug)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Vars(names.into_iter().map(Into::into).collect::<Vec<_>>().into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// Concatenation, e.g. x-variables followed by t-variables.
    pub fn join(&self, other: &Vars) -> Vars {
        Vars::new(self.0.iter().chain(other.0.iter()).cloned())
    }
}

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Vars {}

/// Weighted degree extended by +∞ for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtDegree {
    Finite(i64),
    Infinity,
}

impl ExtDegree {
    pub fn finite(self) -> Option<i64> {
        match self {
            ExtDegree::Finite(d) => Some(d),
            ExtDegree::Infinity => None,
        }
    }
}

impl fmt::Display for ExtDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtDegree::Finite(d) => write!(f, "{d}"),
            ExtDegree::Infinity => write!(f, "inf"),
        }
    }
}

/// A polynomial: finite map from monomials to nonzero scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    vars: Vars,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(vars: &Vars) -> Self {
        Poly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: Scalar) -> Self {
        Self::monomial(vars, Monomial::one(vars.len()), c)
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Scalar::one())
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        Self::monomial(vars, Monomial::var(vars.len(), i), Scalar::one())
    }

    pub fn monomial(vars: &Vars, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.nvars(), vars.len(), "monomial arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Poly::zero(vars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Scalar)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one(self.nvars()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.nvars());
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Poly) {
        assert_eq!(self.vars, other.vars, "polynomials from different rings");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.check_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }

    pub fn add_assign(&mut self, other: &Poly) {
        self.check_ring(other);
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    /// `self += c · mono · other`.
    pub fn add_scaled(&mut self, c: &Scalar, mono: &Monomial, other: &Poly) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.mul(mono), &(c * a));
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), a * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check_ring(other);
        let mut out = Poly::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }

    /// Product keeping only terms of weighted degree ≤ `max`; weights must be
    /// non-negative so partial products can be discarded early.
    pub fn mul_truncated(&self, other: &Poly, weights: &[i64], max: i64) -> Poly {
        self.check_ring(other);
        let mut out = Poly::zero(&self.vars);
        let right: Vec<(i64, &Monomial, &Scalar)> = other
            .terms
            .iter()
            .map(|(m, c)| (m.degree(weights), m, c))
            .collect();
        for (m1, c1) in &self.terms {
            let d1 = m1.degree(weights);
            if d1 > max {
                continue;
            }
            for (d2, m2, c2) in &right {
                if d1 + d2 <= max {
                    out.add_term(m1.mul(m2), &(c1 * *c2));
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(&self.vars);
        for _ in 0..e {
            result = result.mul(self);
        }
        result
    }

    pub fn weighted_degree_with(&self, weights: &[i64]) -> ExtDegree {
        self.terms
            .keys()
            .map(|m| m.degree(weights))
            .min()
            .map_or(ExtDegree::Infinity, ExtDegree::Finite)
    }

    /// Largest weighted degree of a term, `None` for zero.
    pub fn max_degree_with(&self, weights: &[i64]) -> Option<i64> {
        self.terms.keys().map(|m| m.degree(weights)).max()
    }

    pub fn homogeneous_part(&self, weights: &[i64], degree: i64) -> Poly {
        self.filter(|m| m.degree(weights) == degree)
    }

    pub fn truncate_above(&self, weights: &[i64], max: i64) -> Poly {
        self.filter(|m| m.degree(weights) <= max)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// True iff every term has weighted degree exactly `degree`.
    pub fn is_homogeneous_of(&self, weights: &[i64], degree: i64) -> bool {
        self.terms.keys().all(|m| m.degree(weights) == degree)
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.0.clone();
            m2[i] -= 1;
            out.add_term(Monomial(m2), &(c * &Scalar::from_int(e as i64)));
        }
        out
    }

    pub fn evaluate(&self, values: &[Scalar]) -> Scalar {
        assert_eq!(values.len(), self.nvars(), "evaluation arity");
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (e, v) in m.0.iter().zip(values) {
                if *e > 0 {
                    term *= &v.pow(*e as i64);
                }
            }
            total += &term;
        }
        total
    }

    /// Substitutes `images[i]` for variable i; images live in a common ring.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        self.substitute_inner(images, None)
    }

    /// Substitution discarding terms of weighted degree above `max` under
    /// non-negative `weights` of the target ring.
    pub fn substitute_truncated(&self, images: &[Poly], weights: &[i64], max: i64) -> Poly {
        self.substitute_inner(images, Some((weights, max)))
    }

    fn substitute_inner(&self, images: &[Poly], trunc: Option<(&[i64], i64)>) -> Poly {
        assert_eq!(images.len(), self.nvars(), "substitution arity");
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(&p.vars)]).collect();
        let mut out = Poly::zero(&target);
        let mul = |a: &Poly, b: &Poly| match trunc {
            Some((w, max)) => a.mul_truncated(b, w, max),
            None => a.mul(b),
        };
        for (m, c) in &self.terms {
            let mut term = Poly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = mul(powers[i].last().expect("nonempty"), &images[i]);
                    powers[i].push(next);
                }
                term = mul(&term, &powers[i][e as usize]);
                if term.is_zero() {
                    break;
                }
            }
            out.add_assign(&term);
        }
        out
    }

    /// Moves the polynomial into `target`, sending variable i to `map[i]`.
    pub fn embed(&self, target: &Vars, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.nvars(), "embedding arity");
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial(e), c);
        }
        out
    }

    /// Coefficient polynomials with respect to a split of the variables into
    /// `outer` (kept as monomial keys) and the rest (moved into `inner_vars`).
    pub fn split(&self, outer: &[usize], inner: &[usize], inner_vars: &Vars) -> BTreeMap<Vec<u32>, Poly> {
        let mut out: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u32> = outer.iter().map(|&i| m.0[i]).collect();
            let rest = Monomial(inner.iter().map(|&i| m.0[i]).collect());
            out.entry(key)
                .or_insert_with(|| Poly::zero(inner_vars))
                .add_term(rest, c);
        }
        out
    }

    /// Largest conductor among the coefficients (1 when all are rational).
    pub fn conductor(&self) -> u32 {
        self.terms
            .values()
            .map(Scalar::conductor)
            .fold(1, num_integer::lcm)
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.as_rational().is_some())
    }

    /// Terms sorted so that larger monomials in `cmp` come first.
    pub fn sorted_terms(&self, cmp: impl Fn(&Monomial, &Monomial) -> Ordering) -> Vec<(&Monomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| cmp(b.0, a.0));
        v
    }

    /// Renders the polynomial with terms in the order given by `cmp` (largest first).
    pub fn format_with(&self, cmp: impl Fn(&Monomial, &Monomial) -> Ordering) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.sorted_terms(cmp).into_iter().enumerate() {
            let mono = format_monomial(&self.vars, m);
            let coeff = c.to_string();
            let compound = matches!(c, Scalar::Cyclotomic(_)) && {
                let body = coeff.trim_start_matches('-');
                body.contains('+') || body.contains('-')
            };
            let (neg, body) = if compound {
                (false, format!("({coeff})"))
            } else if let Some(rest) = coeff.strip_prefix('-') {
                (true, rest.to_string())
            } else {
                (false, coeff)
            };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { "-" } else { "+" });
            }
            match (mono.is_empty(), body.as_str()) {
                (true, _) => s.push_str(&body),
                (false, "1") => s.push_str(&mono),
                (false, _) => {
                    s.push_str(&body);
                    s.push('*');
                    s.push_str(&mono);
                }
            }
        }
        s
    }
}

/// Default ordering for display: lower total degree first, ties reverse-lexicographic.
pub fn default_display_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    b.total_degree()
        .cmp(&a.total_degree())
        .then_with(|| a.revlex_cmp(b))
}

pub fn format_monomial(vars: &Vars, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars.name(i).to_string()),
            _ => parts.push(format!("{}^{}", vars.name(i), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_with(default_display_cmp))
    }
}
