//! Hilbert functions of the fibres F_t, their rank description through the
//! matrix of vector fields, the flattening strata of T₋, invariants of L₊ and
//! classification of single parameter points.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Matrix, Monomial, Poly, Scalar, Vars};
use crate::error::{Result, SqhError};
use crate::kodaira_spencer::{filtration_bound, KsMatrix};
use crate::standard_basis::{default_truncation, jacobian, monomials_of_degree, standard_basis, LocalOrder};
use crate::unfolding::NegativeUnfolding;

/// (τ_m) for the levels m = ⌊d/w_min⌋+1 .. ⌊d/w_min⌋+s+1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertFunction {
    pub levels: Vec<i64>,
    pub values: Vec<usize>,
}

impl HilbertFunction {
    /// r = μ − τ, entrywise.
    pub fn rank_vector(&self, mu: &[usize]) -> Vec<usize> {
        mu.iter().zip(&self.values).map(|(m, t)| m - t).collect()
    }
}

/// Sampling parameters for the discovery of strata. The seed is fixed so
/// reports are reproducible.
#[derive(Clone, Debug)]
pub struct SamplerConfig {
    pub seed: u64,
    pub random_points: usize,
    pub max_numerator: i64,
    pub max_denominator: i64,
    pub witness_attempts: usize,
    /// Above this many monotone rank vectors only the sampled ones are examined.
    pub max_candidates: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            seed: 20_240_917,
            random_points: 500,
            max_numerator: 9,
            max_denominator: 3,
            witness_attempts: 300,
            max_candidates: 512,
        }
    }
}

/// One flattening stratum U_r: the equations vanish, and in every inequation
/// group at least one polynomial does not.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub rank: Vec<usize>,
    pub tau: Vec<usize>,
    pub equations: Vec<Poly>,
    pub inequations: Vec<Vec<Poly>>,
    pub samples: Vec<Vec<Scalar>>,
}

impl Stratum {
    pub fn contains(&self, t: &[Scalar]) -> bool {
        self.equations.iter().all(|e| e.evaluate(t).is_zero())
            && self
                .inequations
                .iter()
                .all(|g| g.iter().any(|p| !p.evaluate(t).is_zero()))
    }
}

#[derive(Clone, Debug)]
pub struct StrataReport {
    pub levels: Vec<i64>,
    pub mu: Vec<usize>,
    /// Columns (0-based) entering the rank at each level.
    pub column_sets: Vec<Vec<usize>>,
    pub sigma: Vec<Vec<usize>>,
    pub strata: Vec<Stratum>,
    /// Candidates neither witnessed nor shown to be empty.
    pub undetermined: Vec<Vec<usize>>,
    /// False when the candidate list was cut down to the sampled rank vectors.
    pub exhaustive: bool,
    pub points_sampled: usize,
}

impl StrataReport {
    pub fn stratum(&self, rank: &[usize]) -> Option<&Stratum> {
        self.strata.iter().find(|s| s.rank == rank)
    }
}

/// The levels m at which τ_m is recorded; empty when s < 0.
pub fn hilbert_levels(u: &NegativeUnfolding) -> Vec<i64> {
    let w = u.milnor().weights();
    let s = filtration_bound(w);
    if s < 0 {
        return Vec::new();
    }
    let base = w.degree().div_euclid(w.min_weight());
    (base + 1..=base + s + 1).collect()
}

pub fn mu_vector(u: &NegativeUnfolding) -> Vec<usize> {
    let wmin = u.milnor().weights().min_weight();
    let sb = u.milnor().jacobian_basis();
    hilbert_levels(u)
        .into_iter()
        .map(|m| sb.count_below(m * wmin))
        .collect()
}

/// For each level m the parameters with w(tⱼ) > d − m·w_min.
pub fn column_sets(u: &NegativeUnfolding) -> Vec<Vec<usize>> {
    let w = u.milnor().weights();
    let tw = u.parameter_weights();
    hilbert_levels(u)
        .into_iter()
        .map(|m| {
            let bound = w.degree() - m * w.min_weight();
            (0..tw.len()).filter(|&j| tw[j] > bound).collect()
        })
        .collect()
}

fn check_point(u: &NegativeUnfolding, t: &[Scalar]) -> Result<()> {
    if t.len() != u.k() {
        return Err(SqhError::ArityMismatch {
            expected: u.k(),
            found: t.len(),
        });
    }
    Ok(())
}

/// τ(F_t) and its Hilbert function from a standard basis of (F_t, ∂F_t).
pub fn tau_at_point(u: &NegativeUnfolding, t: &[Scalar]) -> Result<(usize, HilbertFunction)> {
    check_point(u, t)?;
    let w = u.milnor().weights();
    let ft = u.specialize(t)?;
    let mut gens = vec![ft.clone()];
    gens.extend(jacobian(&ft));
    let sb = standard_basis(&gens, &LocalOrder::from_weights(w), default_truncation(w))?;
    let levels = hilbert_levels(u);
    let values = levels
        .iter()
        .map(|m| sb.count_below(m * w.min_weight()))
        .collect();
    Ok((sb.dimension(), HilbertFunction { levels, values }))
}

fn evaluate_matrix(m: &KsMatrix, t: &[Scalar]) -> Vec<Vec<Scalar>> {
    m.entries
        .iter()
        .map(|row| row.iter().map(|h| h.evaluate(t)).collect())
        .collect()
}

fn ranks_of(values: &[Vec<Scalar>], columns: &[Vec<usize>]) -> Vec<usize> {
    columns
        .iter()
        .map(|cols| {
            if values.is_empty() || cols.is_empty() {
                return 0;
            }
            let rows = values
                .iter()
                .map(|row| cols.iter().map(|&j| row[j].clone()).collect())
                .collect();
            Matrix::from_rows(rows).rank()
        })
        .collect()
}

/// Rank of the column submatrices of M(t), one per level.
pub fn rank_vector_at(m: &KsMatrix, u: &NegativeUnfolding, t: &[Scalar]) -> Result<Vec<usize>> {
    check_point(u, t)?;
    Ok(ranks_of(&evaluate_matrix(m, t), &column_sets(u)))
}

/// τ_m(t) = μ_m − rank of the m-th column submatrix.
pub fn rank_tau_at_point(m: &KsMatrix, u: &NegativeUnfolding, t: &[Scalar]) -> Result<HilbertFunction> {
    let ranks = rank_vector_at(m, u, t)?;
    let mu = mu_vector(u);
    let values = mu
        .iter()
        .zip(&ranks)
        .map(|(a, r)| {
            a.checked_sub(*r)
                .ok_or_else(|| SqhError::Internal(format!("rank {r} exceeds μ_m = {a}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HilbertFunction {
        levels: hilbert_levels(u),
        values,
    })
}

// ---------------------------------------------------------------------------
// canonical forms and small polynomial helpers

/// Clears denominators, removes the integer content and makes the leading
/// coefficient positive; the leading term has the lowest total degree, ties
/// broken reverse-lexicographically. Non-rational polynomials become monic.
pub fn normalize_polynomial(p: &Poly) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    let order = LocalOrder::new(vec![1; p.nvars()]);
    let lead = order.lead_term(p).map(|(_, c)| c.clone()).expect("nonzero");
    if !p.is_rational() {
        return p.scale(&lead.inverse().expect("nonzero lead"));
    }
    let mut denom = BigInt::one();
    let mut content = BigInt::zero();
    for (_, c) in p.terms() {
        let q = c.as_rational().expect("rational");
        denom = denom.lcm(q.denom());
    }
    for (_, c) in p.terms() {
        let q = c.as_rational().expect("rational");
        let scaled = q * BigRational::from_integer(denom.clone());
        content = content.gcd(scaled.numer());
    }
    let mut factor = BigRational::new(denom, content);
    if lead.as_rational().expect("rational").is_negative() {
        factor = -factor;
    }
    p.scale(&Scalar::from_rational(factor))
}

fn key(p: &Poly) -> String {
    p.to_string()
}

fn global_cmp(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    a.total_degree().cmp(&b.total_degree()).then_with(|| a.revlex_cmp(b))
}

fn global_lead(p: &Poly) -> Option<(Monomial, Scalar)> {
    p.terms()
        .max_by(|a, b| global_cmp(a.0, b.0))
        .map(|(m, c)| (m.clone(), c.clone()))
}

/// g / p when p divides g exactly.
pub fn exact_divide(g: &Poly, p: &Poly) -> Option<Poly> {
    let (lp, lc) = global_lead(p)?;
    let inv = lc.inverse()?;
    let mut rest = g.clone();
    let mut quotient = Poly::zero(g.vars());
    while let Some((lr, cr)) = global_lead(&rest) {
        let mono = lp.quotient_of(&lr)?;
        let c = cr * &inv;
        quotient.add_term(mono.clone(), &c);
        rest = rest.sub(&p.mul_monomial(&mono, &c));
    }
    Some(quotient)
}

/// A monomial is replaced by the product of the variables it involves.
fn radicalize(p: &Poly) -> Poly {
    if p.len() == 1 {
        let (m, _) = p.terms().next().expect("one term");
        return Poly::monomial(p.vars(), m.support(), Scalar::one());
    }
    p.clone()
}

/// Is g in the ideal of `gens`? Only the cases g = q·h and "every term of g is
/// divisible by a monomial generator" are recognised.
fn in_ideal(g: &Poly, gens: &[Poly]) -> bool {
    if g.is_zero() || gens.iter().any(|h| exact_divide(g, h).is_some()) {
        return true;
    }
    let monos: Vec<&Monomial> = gens
        .iter()
        .filter(|h| h.len() == 1)
        .map(|h| h.terms().next().expect("one term").0)
        .collect();
    !monos.is_empty() && g.terms().all(|(t, _)| monos.iter().any(|m| m.divides(t)))
}

/// Splits e = a·t_v + b with t_v absent from a and b; None if t_v occurs with
/// a higher power.
fn linear_split(e: &Poly, v: usize) -> Option<(Poly, Poly)> {
    let mut a = Poly::zero(e.vars());
    let mut b = Poly::zero(e.vars());
    let mut found = false;
    for (m, c) in e.terms() {
        match m.exponents()[v] {
            0 => b.add_term(m.clone(), c),
            1 => {
                let mut ex = m.exponents().to_vec();
                ex[v] = 0;
                a.add_term(Monomial::new(ex), c);
                found = true;
            }
            _ => return None,
        }
    }
    found.then_some((a, b))
}

// ---------------------------------------------------------------------------
// symbolic description of one candidate stratum

#[derive(Clone, Debug)]
struct System {
    vars: Vars,
    equations: Vec<Poly>,
    groups: Vec<Vec<Poly>>,
    /// t_v = expression in the remaining free parameters.
    eliminated: Vec<(usize, Poly)>,
    /// The eliminated equations in the form they had when used.
    stated: Vec<Poly>,
    empty: bool,
}

impl System {
    fn fingerprint(&self) -> String {
        let mut s = String::new();
        for e in &self.equations {
            s.push_str(&key(e));
            s.push(';');
        }
        s.push('|');
        for g in &self.groups {
            for p in g {
                s.push_str(&key(p));
                s.push(',');
            }
            s.push(';');
        }
        s.push_str(&self.eliminated.len().to_string());
        s.push_str(if self.empty { "E" } else { "" });
        s
    }

    fn substitute(&mut self, v: usize, expr: &Poly) {
        let images: Vec<Poly> = (0..self.vars.len())
            .map(|i| if i == v { expr.clone() } else { Poly::var(&self.vars, i) })
            .collect();
        for e in &mut self.equations {
            *e = e.substitute(&images);
        }
        for g in &mut self.groups {
            for p in g.iter_mut() {
                *p = p.substitute(&images);
            }
        }
        for (_, x) in &mut self.eliminated {
            *x = x.substitute(&images);
        }
    }

    fn simplify(&mut self, factors: &[Poly]) {
        for _ in 0..256 {
            let before = self.fingerprint();
            self.round(factors);
            if self.empty || self.fingerprint() == before {
                return;
            }
        }
    }

    fn round(&mut self, factors: &[Poly]) {
        // equations: canonical form, radical of monomials, contradictions
        let mut seen = BTreeSet::new();
        let mut eqs = Vec::new();
        for e in &self.equations {
            let e = normalize_polynomial(&radicalize(&normalize_polynomial(e)));
            if e.is_zero() {
                continue;
            }
            if e.is_constant() {
                self.empty = true;
                return;
            }
            if seen.insert(key(&e)) {
                eqs.push(e);
            }
        }
        eqs.sort_by(|a, b| {
            let da = a.terms().map(|(m, _)| m.total_degree()).max();
            let db = b.terms().map(|(m, _)| m.total_degree()).max();
            da.cmp(&db).then_with(|| key(a).cmp(&key(b)))
        });

        // a single inequation p ≠ 0 may be cancelled from every equation
        let units: Vec<Poly> = self
            .groups
            .iter()
            .filter(|g| g.len() == 1 && !g[0].is_constant())
            .map(|g| g[0].clone())
            .collect();
        for e in &mut eqs {
            for p in &units {
                while let Some(q) = exact_divide(e, p) {
                    if q.is_constant() {
                        self.empty = true;
                        return;
                    }
                    *e = normalize_polynomial(&q);
                }
            }
        }

        // E = p·{e'} with D(G) ∩ V(e') = ∅ for some group G gives V(p) ∩ D(G)
        if !eqs.is_empty() && !(eqs.len() == 1 && factors.iter().any(|p| key(p) == key(&eqs[0]))) {
            let mut pool: Vec<Poly> = factors.to_vec();
            pool.extend(eqs.iter().cloned());
            for p in &pool {
                if p.is_constant() || eqs.len() == 1 && key(p) == key(&eqs[0]) {
                    continue;
                }
                let quotients: Option<Vec<Poly>> = eqs.iter().map(|e| exact_divide(e, p)).collect();
                let Some(quotients) = quotients else { continue };
                let covered = quotients.iter().any(Poly::is_constant)
                    || self
                        .groups
                        .iter()
                        .any(|g| g.iter().all(|h| in_ideal(h, &quotients)));
                if covered {
                    eqs = vec![normalize_polynomial(p)];
                    break;
                }
            }
        }

        // linear elimination t_v = −b/c for an equation c·t_v + b, c constant
        let mut chosen = None;
        'search: for (idx, e) in eqs.iter().enumerate() {
            for v in (0..self.vars.len()).rev() {
                if let Some((a, b)) = linear_split(e, v) {
                    if a.is_constant() && !a.is_zero() {
                        let c = a.constant_term();
                        let expr = b.scale(&-c.inverse().expect("nonzero"));
                        chosen = Some((idx, v, expr));
                        break 'search;
                    }
                }
            }
        }
        if let Some((idx, v, expr)) = chosen {
            let e = eqs.remove(idx);
            self.stated.push(e);
            self.equations = eqs;
            self.substitute(v, &expr);
            self.eliminated.push((v, expr));
            return;
        }
        self.equations = eqs;

        // inequation groups
        let mut pool: Vec<Poly> = factors.to_vec();
        for g in &self.groups {
            pool.extend(g.iter().map(normalize_polynomial));
        }
        let mut groups: Vec<Vec<Poly>> = Vec::new();
        for g in &self.groups {
            let mut seen = BTreeSet::new();
            let mut elems = Vec::new();
            let mut satisfied = false;
            for p in g {
                let p = normalize_polynomial(&radicalize(&normalize_polynomial(p)));
                if p.is_zero() || self.equations.iter().any(|e| exact_divide(&p, e).is_some()) {
                    continue;
                }
                if p.is_constant() {
                    satisfied = true;
                    break;
                }
                if seen.insert(key(&p)) {
                    elems.push(p);
                }
            }
            if satisfied {
                continue;
            }
            // p ≠ 0 follows from q ≠ 0 whenever p divides q
            let kept: Vec<Poly> = elems
                .iter()
                .filter(|q| {
                    !elems
                        .iter()
                        .any(|p| key(p) != key(q) && exact_divide(q, p).is_some())
                })
                .cloned()
                .collect();
            if kept.is_empty() {
                self.empty = true;
                return;
            }
            let mut split = false;
            if kept.len() >= 2 {
                for p in &pool {
                    if p.is_constant() {
                        continue;
                    }
                    let quotients: Option<Vec<Poly>> = kept.iter().map(|q| exact_divide(q, p)).collect();
                    if let Some(qs) = quotients {
                        groups.push(vec![normalize_polynomial(p)]);
                        groups.push(qs.iter().map(normalize_polynomial).collect());
                        split = true;
                        break;
                    }
                }
            }
            if !split {
                groups.push(kept);
            }
        }

        // redundant groups
        let keysets: Vec<BTreeSet<String>> = groups.iter().map(|g| g.iter().map(key).collect()).collect();
        let mut keep = vec![true; groups.len()];
        for i in 0..groups.len() {
            for j in 0..groups.len() {
                if i == j || !keep[j] {
                    continue;
                }
                let subset = keysets[j].is_subset(&keysets[i]) && (keysets[j] != keysets[i] || j < i);
                let single_implies = groups[j].len() == 1
                    && keysets[j] != keysets[i]
                    && groups[i].iter().all(|p| p.len() == 1)
                    && in_ideal(&groups[j][0], &groups[i]);
                if subset || single_implies {
                    keep[i] = false;
                    break;
                }
            }
        }
        self.groups = groups
            .into_iter()
            .zip(keep)
            .filter_map(|(g, k)| k.then_some(g))
            .collect();
        self.groups.sort_by_key(|g| g.iter().map(key).collect::<Vec<_>>());
    }

    fn free_vars(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|v| !self.eliminated.iter().any(|(e, _)| e == v))
            .collect()
    }

    fn report_equations(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = self.stated.clone();
        out.extend(self.equations.iter().cloned());
        let mut seen = BTreeSet::new();
        out.retain(|p| seen.insert(key(p)));
        out
    }
}

fn random_scalar(rng: &mut ChaCha8Rng, cfg: &SamplerConfig) -> Scalar {
    let num = rng.gen_range(-cfg.max_numerator..=cfg.max_numerator);
    let den = rng.gen_range(1..=cfg.max_denominator);
    Scalar::from_ratio(num, den)
}

fn random_nonzero(rng: &mut ChaCha8Rng, cfg: &SamplerConfig) -> Scalar {
    loop {
        let s = random_scalar(rng, cfg);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Points with at most two nonzero coordinates, each ±1.
fn plane_points(k: usize) -> Vec<Vec<Scalar>> {
    let signs = [Scalar::one(), Scalar::from_int(-1)];
    let mut out = vec![vec![Scalar::zero(); k]];
    for i in 0..k {
        for a in &signs {
            let mut p = vec![Scalar::zero(); k];
            p[i] = a.clone();
            out.push(p);
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            for a in &signs {
                for b in &signs {
                    let mut p = vec![Scalar::zero(); k];
                    p[i] = a.clone();
                    p[j] = b.clone();
                    out.push(p);
                }
            }
        }
    }
    out
}

fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(start: usize, n: usize, size: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            if n - i < size - current.len() {
                break;
            }
            current.push(i);
            rec(i + 1, n, size, current, out);
            current.pop();
        }
    }
    rec(0, n, size, &mut current, &mut out);
    out
}

/// All nonzero size×size minors of the given columns, rows and columns in
/// lexicographic order.
fn minors(entries: &[Vec<Poly>], cols: &[usize], size: usize, vars: &Vars) -> Vec<Poly> {
    if size == 0 {
        return vec![Poly::one(vars)];
    }
    let k = entries.len();
    if size > k || size > cols.len() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for rows in combinations(k, size) {
        for cs in combinations(cols.len(), size) {
            let sub: Vec<Vec<Poly>> = rows
                .iter()
                .map(|&r| cs.iter().map(|&c| entries[r][cols[c]].clone()).collect())
                .collect();
            let d = crate::standard_basis::poly_determinant(&sub, vars);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

fn monotone_candidates(column_sets: &[Vec<usize>], k: usize, cap: usize) -> Option<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for (i, cols) in column_sets.iter().enumerate() {
        let top = cols.len().min(k);
        let mut next = Vec::new();
        for r in &out {
            let (lo, hi) = match r.last() {
                None => (0, top),
                Some(&prev) => (prev, top.min(prev + cols.len() - column_sets[i - 1].len())),
            };
            for v in lo..=hi {
                let mut x = r.clone();
                x.push(v);
                next.push(x);
            }
        }
        if next.len() > cap {
            return None;
        }
        out = next;
    }
    Some(out)
}

struct Witnessing<'a> {
    m: &'a KsMatrix,
    columns: &'a [Vec<usize>],
}

impl Witnessing<'_> {
    fn ranks(&self, t: &[Scalar]) -> Vec<usize> {
        ranks_of(&evaluate_matrix(self.m, t), self.columns)
    }

    fn search(&self, sys: &System, target: &[usize], rng: &mut ChaCha8Rng, cfg: &SamplerConfig) -> Option<Vec<Scalar>> {
        let k = sys.vars.len();
        let free = sys.free_vars();
        for attempt in 0..cfg.witness_attempts {
            let mut values: Vec<Option<Scalar>> = vec![None; k];
            for (v, _) in &sys.eliminated {
                values[*v] = Some(Scalar::zero());
            }
            let draw = |rng: &mut ChaCha8Rng| {
                if attempt % 3 == 0 {
                    random_nonzero(rng, cfg)
                } else {
                    random_scalar(rng, cfg)
                }
            };
            for e in &sys.equations {
                let target_var = free.iter().copied().find(|&v| {
                    values[v].is_none() && linear_split(e, v).is_some_and(|(a, _)| !a.is_zero())
                });
                let Some(v) = target_var else { continue };
                for &o in &free {
                    if o != v && values[o].is_none() && e.terms().any(|(m, _)| m.exponents()[o] > 0) {
                        values[o] = Some(draw(rng));
                    }
                }
                let (a, b) = linear_split(e, v).expect("checked");
                let point: Vec<Scalar> = values.iter().map(|x| x.clone().unwrap_or_else(Scalar::zero)).collect();
                if let Some(inv) = a.evaluate(&point).inverse() {
                    values[v] = Some(-(b.evaluate(&point) * &inv));
                }
            }
            for &v in &free {
                if values[v].is_none() {
                    values[v] = Some(draw(rng));
                }
            }
            let mut point: Vec<Scalar> = values.into_iter().map(|x| x.unwrap_or_else(Scalar::zero)).collect();
            for (v, expr) in &sys.eliminated {
                point[*v] = expr.evaluate(&point);
            }
            if self.ranks(&point) == target {
                return Some(point);
            }
        }
        None
    }
}

/// Discovers the realized rank vectors by sampling, derives each stratum's
/// minor conditions, simplifies them and decides the remaining candidates
/// by emptiness proofs or witnesses.
pub fn strata_symbolic(m: &KsMatrix, u: &NegativeUnfolding, cfg: &SamplerConfig) -> Result<StrataReport> {
    let k = u.k();
    let levels = hilbert_levels(u);
    let mu = mu_vector(u);
    let columns = column_sets(u);
    let tvars = u.parameter_vars().clone();
    if k == 0 {
        return Ok(StrataReport {
            levels,
            mu: mu.clone(),
            column_sets: columns,
            sigma: vec![Vec::new()],
            strata: vec![Stratum {
                rank: Vec::new(),
                tau: mu,
                equations: Vec::new(),
                inequations: Vec::new(),
                samples: vec![Vec::new()],
            }],
            undetermined: Vec::new(),
            exhaustive: true,
            points_sampled: 1,
        });
    }

    let witnessing = Witnessing { m, columns: &columns };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut points = plane_points(k);
    for _ in 0..cfg.random_points {
        points.push((0..k).map(|_| random_scalar(&mut rng, cfg)).collect());
    }
    let mut found: BTreeMap<Vec<usize>, Vec<Vec<Scalar>>> = BTreeMap::new();
    for p in &points {
        let r = witnessing.ranks(p);
        let list = found.entry(r).or_default();
        if list.len() < 5 {
            list.push(p.clone());
        }
    }

    let (mut candidates, exhaustive) = match monotone_candidates(&columns, k, cfg.max_candidates) {
        Some(c) => (c, true),
        None => (Vec::new(), false),
    };
    for r in found.keys() {
        if !candidates.contains(r) {
            candidates.push(r.clone());
        }
    }
    candidates.sort();

    let mut factors: Vec<Poly> = (0..k).map(|i| Poly::var(&tvars, i)).collect();
    let mut seen = BTreeSet::new();
    for row in &m.entries {
        for h in row {
            let h = normalize_polynomial(h);
            if !h.is_constant() && seen.insert(key(&h)) {
                factors.push(h);
            }
        }
    }

    let mut minor_cache: BTreeMap<(usize, usize), Vec<Poly>> = BTreeMap::new();
    let mut minors_at = |level: usize, size: usize| -> Vec<Poly> {
        minor_cache
            .entry((level, size))
            .or_insert_with(|| minors(&m.entries, &columns[level], size, &tvars))
            .clone()
    };

    let mut strata = Vec::new();
    let mut undetermined = Vec::new();
    for r in candidates {
        let mut sys = System {
            vars: tvars.clone(),
            equations: Vec::new(),
            groups: Vec::new(),
            eliminated: Vec::new(),
            stated: Vec::new(),
            empty: false,
        };
        for (level, &ri) in r.iter().enumerate() {
            sys.equations.extend(minors_at(level, ri + 1));
            sys.groups.push(minors_at(level, ri));
        }
        sys.simplify(&factors);
        let samples = match found.get(&r) {
            Some(pts) => pts.clone(),
            None if sys.empty => continue,
            None => match witnessing.search(&sys, &r, &mut rng, cfg) {
                Some(p) => vec![p],
                None => {
                    undetermined.push(r);
                    continue;
                }
            },
        };
        if sys.empty {
            return Err(SqhError::Internal(format!(
                "rank vector {r:?} is realized but its conditions were simplified away"
            )));
        }
        let stratum = Stratum {
            tau: mu.iter().zip(&r).map(|(a, b)| a - b).collect(),
            rank: r,
            equations: sys.report_equations(),
            inequations: sys.groups.clone(),
            samples,
        };
        if let Some(p) = stratum.samples.iter().find(|p| !stratum.contains(p)) {
            return Err(SqhError::Internal(format!(
                "sample {p:?} violates the conditions of stratum {:?}",
                stratum.rank
            )));
        }
        strata.push(stratum);
    }
    let sigma = strata.iter().map(|s| s.rank.clone()).collect();
    Ok(StrataReport {
        levels,
        mu,
        column_sets: columns,
        sigma,
        strata,
        undetermined,
        exhaustive,
        points_sampled: points.len(),
    })
}

/// 2·|min w(tᵢ)|, or 0 without parameters.
pub fn default_invariant_bound(u: &NegativeUnfolding) -> i64 {
    u.parameter_weights().iter().map(|w| -2 * w).max().unwrap_or(0)
}

/// Generators of the algebra of p ∈ A₋ with δᵢ(p) = 0 for all i ≥ 2, up to
/// degree −bound, found piece by piece as kernels of the stacked maps.
pub fn lplus_invariants(m: &KsMatrix, u: &NegativeUnfolding, bound: i64) -> Vec<Poly> {
    let k = u.k();
    if k == 0 {
        return Vec::new();
    }
    let tvars = u.parameter_vars().clone();
    let pos: Vec<i64> = u.parameter_weights().iter().map(|w| -w).collect();
    let fields: Vec<_> = (1..k).map(|i| m.row_field(i, u)).collect();
    let mut generators: Vec<(Poly, i64)> = Vec::new();
    // kernel bases of the lower pieces, degree 0 holding the constants
    let mut pieces: BTreeMap<i64, Vec<Poly>> = BTreeMap::new();
    pieces.insert(0, vec![Poly::one(&tvars)]);
    for e in 1..=bound {
        let monos = monomials_of_degree(&pos, e);
        if monos.is_empty() {
            pieces.insert(e, Vec::new());
            continue;
        }
        let mut rows: BTreeMap<(usize, Monomial), Vec<(usize, Scalar)>> = BTreeMap::new();
        for (c, mono) in monos.iter().enumerate() {
            let p = Poly::monomial(&tvars, mono.clone(), Scalar::one());
            for (i, f) in fields.iter().enumerate() {
                for (t, v) in f.apply(&p).terms() {
                    rows.entry((i, t.clone())).or_default().push((c, v.clone()));
                }
            }
        }
        let mut a = Matrix::zeros(rows.len(), monos.len());
        for (r, entries) in rows.values().enumerate() {
            for (c, v) in entries {
                a.set(r, *c, v.clone());
            }
        }
        let to_poly = |v: &[Scalar]| {
            let mut p = Poly::zero(&tvars);
            for (mono, c) in monos.iter().zip(v) {
                p.add_term(mono.clone(), c);
            }
            p
        };
        let to_vec = |p: &Poly| -> Vec<Scalar> { monos.iter().map(|mono| p.coeff(mono)).collect() };
        let kernel: Vec<Poly> = if rows.is_empty() {
            monos.iter().map(|mono| Poly::monomial(&tvars, mono.clone(), Scalar::one())).collect()
        } else {
            a.nullspace().iter().map(|v| to_poly(v)).collect()
        };
        let mut span: Vec<Vec<Scalar>> = Vec::new();
        for (g, ge) in &generators {
            if let Some(lower) = pieces.get(&(e - ge)) {
                for p in lower {
                    span.push(to_vec(&g.mul(p)));
                }
            }
        }
        let mut rank = if span.is_empty() { 0 } else { Matrix::from_rows(span.clone()).rank() };
        for p in &kernel {
            let mut trial = span.clone();
            trial.push(to_vec(p));
            let r = Matrix::from_rows(trial.clone()).rank();
            if r > rank {
                rank = r;
                span = trial;
                generators.push((normalize_polynomial(p), e));
            }
        }
        pieces.insert(e, kernel);
    }
    generators.into_iter().map(|(g, _)| g).collect()
}

#[derive(Clone, Debug)]
pub struct PointClassification {
    pub rank: Vec<usize>,
    pub hilbert: HilbertFunction,
    pub tau: usize,
    pub normal_form: Poly,
    /// Whether the point satisfies the simplified conditions of its stratum.
    pub in_stratum: Option<bool>,
    pub invariant_values: Vec<Scalar>,
}

/// Both τ computations at t, required to agree, plus the stratum and the
/// values of the given invariants.
pub fn classify_point(
    u: &NegativeUnfolding,
    m: &KsMatrix,
    report: Option<&StrataReport>,
    invariants: &[Poly],
    t: &[Scalar],
) -> Result<PointClassification> {
    let (tau, hilbert) = tau_at_point(u, t)?;
    let by_rank = rank_tau_at_point(m, u, t)?;
    if by_rank != hilbert {
        return Err(SqhError::Internal(format!(
            "Hilbert function {:?} from the standard basis differs from {:?} from the rank formula",
            hilbert.values, by_rank.values
        )));
    }
    let rank = rank_vector_at(m, u, t)?;
    let in_stratum = report.map(|rep| rep.stratum(&rank).is_some_and(|s| s.contains(t)));
    if in_stratum == Some(false) {
        return Err(SqhError::Internal(format!(
            "point {t:?} of rank {rank:?} lies outside the stratum conditions"
        )));
    }
    Ok(PointClassification {
        rank,
        hilbert,
        tau,
        normal_form: u.specialize(t)?,
        in_stratum,
        invariant_values: invariants.iter().map(|p| p.evaluate(t)).collect(),
    })
}
