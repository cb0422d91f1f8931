//! The kernel of the Kodaira–Spencer map on T₋: normal forms in
//! I = A₋{x}/(∂F/∂x), the residue pairing, the dual generators nᵢ, the
//! matrix (hᵢⱼ) of vector fields δᵢ and the filtration data of L₊.

use std::collections::BTreeMap;

use crate::algebra::{Matrix, Monomial, Poly, Scalar, Vars, WeightSystem};
use crate::error::{Result, SqhError};
use crate::standard_basis::{hessian_socle, monomials_up_to};
use crate::unfolding::{MilnorData, NegativeUnfolding};

/// Splits a monomial of the family ring into its x part and its t part.
fn split_monomial(m: &Monomial, n: usize) -> (Monomial, Monomial) {
    let (xs, ts) = m.exponents().split_at(n);
    (Monomial::new(xs.to_vec()), Monomial::new(ts.to_vec()))
}

/// Moves a polynomial in t1..tk into the family ring x ∪ t.
pub fn parameter_to_family(p: &Poly, u: &NegativeUnfolding) -> Poly {
    let n = u.milnor().weights().nvars();
    let map: Vec<usize> = (0..u.k()).map(|i| n + i).collect();
    p.embed(u.family_vars(), &map)
}

/// Moves an x-polynomial into the family ring.
pub fn x_to_family(p: &Poly, u: &NegativeUnfolding) -> Poly {
    let map: Vec<usize> = (0..p.nvars()).collect();
    p.embed(u.family_vars(), &map)
}

/// Class of h ∈ A₋[x] in I, as coordinates over A₋ on the staircase basis.
///
/// The lowest x-degree piece is split as Σ aᵢ∂ᵢf₀ + (staircase part); since
/// ∂ᵢf₀ ≡ −∂ᵢ(F − f₀) in I, the correction −Σ aᵢ∂ᵢ(F − f₀) goes back into the
/// worklist with strictly larger x-degree. Pieces above the socle degree have
/// no staircase part, so they are dropped.
pub fn normal_form_in_i(h: &Poly, u: &NegativeUnfolding) -> Result<Vec<Poly>> {
    let md = u.milnor();
    let n = md.weights().nvars();
    if h.vars() != u.family_vars() {
        return Err(SqhError::ArityMismatch {
            expected: u.family_vars().len(),
            found: h.nvars(),
        });
    }
    let grading = md.x_grading(u.family_vars().len());
    let top = md.weights().socle_degree();
    let tails: Vec<Poly> = (0..n)
        .map(|i| u.family().derivative(i).sub(&x_to_family(&md.jacobian()[i], u)))
        .collect();
    let mut coords = vec![Poly::zero(u.parameter_vars()); md.mu()];
    let mut current = h.truncate_above(&grading, top);
    while let Some(low) = current.terms().map(|(m, _)| m.degree(&grading)).min() {
        let piece = current.homogeneous_part(&grading, low);
        current = current.sub(&piece);
        let split = md.split_in_jacobian(&piece);
        for (m, c) in split.staircase_part.terms() {
            let (x, t) = split_monomial(m, n);
            let idx = md
                .staircase()
                .index_of(&x)
                .ok_or_else(|| SqhError::Internal("staircase part outside the staircase".into()))?;
            coords[idx].add_term(t, c);
        }
        for (a, tail) in split.derivative_coeffs.iter().zip(&tails) {
            if !a.is_zero() {
                current = current.sub(&a.mul_truncated(tail, &grading, top));
            }
        }
    }
    Ok(coords)
}

/// Class of g·F in I on the staircase basis.
pub fn multiply_in_i(g: &Poly, u: &NegativeUnfolding) -> Result<Vec<Poly>> {
    if g.vars() != u.family_vars() {
        return Err(SqhError::ArityMismatch {
            expected: u.family_vars().len(),
            found: g.nvars(),
        });
    }
    normal_form_in_i(&g.mul(u.family()), u)
}

/// Components of g·F on the upper monomials m₁..m_k.
pub fn multiply_in_i_upper(g: &Poly, u: &NegativeUnfolding) -> Result<Vec<Poly>> {
    let coords = multiply_in_i(g, u)?;
    let st = u.milnor().staircase();
    let mut upper = Vec::with_capacity(u.k());
    for m in u.upper_monomials() {
        upper.push(coords[st.index_of(m).expect("upper monomials are in the staircase")].clone());
    }
    for (idx, c) in coords.iter().enumerate() {
        if !c.is_zero() && !u.upper_monomials().contains(&st.monomials[idx]) {
            return Err(SqhError::Internal(format!(
                "g·F has a component on the non-upper monomial {}",
                crate::algebra::poly::format_monomial(u.milnor().vars(), &st.monomials[idx])
            )));
        }
    }
    Ok(upper)
}

/// Gram matrix of ⟨h, g⟩ = (socle coefficient of h·g)/(hessian scale) on the staircase.
#[derive(Clone, Debug)]
pub struct ResiduePairing {
    pub gram: Matrix,
    pub socle: Monomial,
    pub scale: Scalar,
}

pub fn residue_pairing(h: &Poly, g: &Poly, md: &MilnorData) -> Result<Scalar> {
    let hs = hessian_socle(md.f0(), md.weights())?;
    let nf = md.jacobian_basis().reduce(&h.mul(g));
    Ok(&nf.coeff(&hs.socle) * &hs.scale.inverse().expect("nonzero scale"))
}

pub fn residue_gram(md: &MilnorData) -> Result<ResiduePairing> {
    let hs = hessian_socle(md.f0(), md.weights())?;
    let inv = hs.scale.inverse().expect("nonzero scale");
    let st = md.staircase();
    let mu = st.dimension();
    let mut gram = Matrix::zeros(mu, mu);
    let mut memo: BTreeMap<Monomial, Scalar> = BTreeMap::new();
    for i in 0..mu {
        for j in 0..mu {
            let prod = st.monomials[i].mul(&st.monomials[j]);
            let v = memo
                .entry(prod.clone())
                .or_insert_with(|| {
                    let p = Poly::monomial(md.vars(), prod, Scalar::one());
                    &md.jacobian_basis().reduce(&p).coeff(&hs.socle) * &inv
                })
                .clone();
            gram.set(i, j, v);
        }
    }
    Ok(ResiduePairing {
        gram,
        socle: hs.socle,
        scale: hs.scale,
    })
}

/// The dual generators n₁..n_k with their (x,t)-degrees.
///
/// `full` holds −d·(dual basis element); `generators` holds its shortest
/// truncation in t-degree that still has the same row (hᵢ₁..hᵢₖ).
#[derive(Clone, Debug)]
pub struct DualGenerators {
    pub generators: Vec<Poly>,
    pub full: Vec<Poly>,
    pub degrees: Vec<i64>,
}

fn t_degree(m: &Monomial, n: usize) -> u64 {
    m.exponents()[n..].iter().map(|&e| e as u64).sum()
}

/// Drops the terms of highest t-degree as long as the row of g·F is unchanged.
fn shortest_equivalent(g: &Poly, u: &NegativeUnfolding) -> Result<Poly> {
    let n = u.milnor().weights().nvars();
    let row = multiply_in_i_upper(g, u)?;
    let top = g.terms().map(|(m, _)| t_degree(m, n)).max().unwrap_or(0);
    for level in 0..top {
        let candidate = g.filter(|m| t_degree(m, n) <= level);
        if multiply_in_i_upper(&candidate, u)? == row {
            return Ok(candidate);
        }
    }
    Ok(g.clone())
}

fn poly_mat_vec(m: &[Vec<Poly>], v: &[Poly], vars: &Vars) -> Vec<Poly> {
    m.iter()
        .map(|row| {
            let mut acc = Poly::zero(vars);
            for (a, b) in row.iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    acc.add_assign(&a.mul(b));
                }
            }
            acc
        })
        .collect()
}

fn const_mat_vec(m: &Matrix, v: &[Poly], vars: &Vars) -> Vec<Poly> {
    (0..m.rows())
        .map(|i| {
            let mut acc = Poly::zero(vars);
            for (j, p) in v.iter().enumerate() {
                let c = m.get(i, j);
                if !c.is_zero() && !p.is_zero() {
                    acc.add_assign(&p.scale(c));
                }
            }
            acc
        })
        .collect()
}

/// nᵢ = −d·m*_{k−i+1}, where m* is the A₋-dual basis of the staircase under
/// ℓ(h) = socle coefficient of the class of h in I.
///
/// The Gram matrix is G₀ + N with G₀ constant and N of positive t-degree;
/// the series Σ (−G₀⁻¹N)ʲ G₀⁻¹ terminates because every entry is
/// quasihomogeneous of bounded weight.
pub fn dual_generators(u: &NegativeUnfolding) -> Result<DualGenerators> {
    let md = u.milnor();
    let k = u.k();
    if k == 0 {
        return Ok(DualGenerators {
            generators: Vec::new(),
            full: Vec::new(),
            degrees: Vec::new(),
        });
    }
    let st = md.staircase();
    let mu = st.dimension();
    let socle_deg = md.weights().socle_degree();
    let socle_idx = st
        .degrees
        .iter()
        .position(|&e| e == socle_deg)
        .ok_or_else(|| SqhError::Internal("no socle monomial in the staircase".into()))?;
    let tvars = u.parameter_vars().clone();
    let mut memo: BTreeMap<Monomial, Poly> = BTreeMap::new();
    let mut gram: Vec<Vec<Poly>> = vec![vec![Poly::zero(&tvars); mu]; mu];
    for i in 0..mu {
        for j in i..mu {
            let prod = st.monomials[i].mul(&st.monomials[j]);
            let v = match memo.get(&prod) {
                Some(v) => v.clone(),
                None => {
                    let h = x_to_family(&Poly::monomial(md.vars(), prod.clone(), Scalar::one()), u);
                    let v = normal_form_in_i(&h, u)?[socle_idx].clone();
                    memo.insert(prod, v.clone());
                    v
                }
            };
            gram[i][j] = v.clone();
            gram[j][i] = v;
        }
    }
    let mut g0 = Matrix::zeros(mu, mu);
    let mut nil = gram.clone();
    for i in 0..mu {
        for j in 0..mu {
            let c = gram[i][j].constant_term();
            nil[i][j] = gram[i][j].filter(|m| !m.is_one());
            g0.set(i, j, c);
        }
    }
    let g0_inv = g0
        .inverse()
        .ok_or_else(|| SqhError::Internal("degenerate pairing on the Milnor algebra".into()))?;
    let max_t_degree: i64 = socle_deg + 1;
    let d = md.weights().degree();
    let x_vars: Vec<Poly> = st
        .monomials
        .iter()
        .map(|m| x_to_family(&Poly::monomial(md.vars(), m.clone(), Scalar::one()), u))
        .collect();
    let mut full = Vec::with_capacity(k);
    let mut degrees = Vec::with_capacity(k);
    for i in 1..=k {
        let target = &u.upper_monomials()[k - i];
        let col = st.index_of(target).expect("upper monomial in staircase");
        let mut term: Vec<Poly> = (0..mu)
            .map(|r| Poly::constant(&tvars, g0_inv.get(r, col).clone()))
            .collect();
        let mut sum = term.clone();
        let mut steps = 0;
        while term.iter().any(|p| !p.is_zero()) {
            steps += 1;
            if steps > max_t_degree {
                return Err(SqhError::Internal("dual basis series does not terminate".into()));
            }
            let next = poly_mat_vec(&nil, &term, &tvars);
            term = const_mat_vec(&g0_inv, &next, &tvars)
                .into_iter()
                .map(|p| p.neg())
                .collect();
            for (s, t) in sum.iter_mut().zip(&term) {
                s.add_assign(t);
            }
        }
        let mut dual = Poly::zero(u.family_vars());
        for (c, basis) in sum.iter().zip(&x_vars) {
            if !c.is_zero() {
                dual.add_assign(&parameter_to_family(c, u).mul(basis));
            }
        }
        full.push(dual.scale(&Scalar::from_int(-d)));
        degrees.push(socle_deg - target.degree(md.weights().weights()));
    }
    let generators = full
        .iter()
        .map(|g| shortest_equivalent(g, u))
        .collect::<Result<Vec<_>>>()?;
    Ok(DualGenerators {
        generators,
        full,
        degrees,
    })
}

/// The k×k matrix (hᵢⱼ) with nᵢF = Σⱼ hᵢⱼmⱼ in I.
#[derive(Clone, Debug)]
pub struct KsMatrix {
    pub entries: Vec<Vec<Poly>>,
    pub generators: Vec<Poly>,
    pub generator_degrees: Vec<i64>,
    pub symmetric: bool,
    pub graded: bool,
}

impl KsMatrix {
    pub fn k(&self) -> usize {
        self.entries.len()
    }

    pub fn row_field(&self, i: usize, u: &NegativeUnfolding) -> VectorField {
        VectorField::new(self.entries[i].clone(), u.parameter_weights().to_vec())
    }

    pub fn fields(&self, u: &NegativeUnfolding) -> Vec<VectorField> {
        (0..self.k()).map(|i| self.row_field(i, u)).collect()
    }

    /// The symmetric partner of (i, j) is (k−1−j, k−1−i) with 0-based indices.
    pub fn symmetry_defects(&self) -> Vec<(usize, usize)> {
        let k = self.k();
        let mut out = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if self.entries[i][j] != self.entries[k - 1 - j][k - 1 - i] {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Builds the matrix from auto-computed duals, or from the supplied nᵢ.
pub fn ks_matrix(u: &NegativeUnfolding, supplied: Option<&[Poly]>) -> Result<KsMatrix> {
    let k = u.k();
    let fw = u.family_weights();
    let (generators, degrees, auto) = match supplied {
        None => {
            let dg = dual_generators(u)?;
            (dg.generators, dg.degrees, true)
        }
        Some(list) => {
            if list.len() != k {
                return Err(SqhError::ArityMismatch {
                    expected: k,
                    found: list.len(),
                });
            }
            let mut degrees = Vec::with_capacity(k);
            for (i, g) in list.iter().enumerate() {
                if g.vars() != u.family_vars() {
                    return Err(SqhError::Precondition(format!("n{} is not in the ring of x and t", i + 1)));
                }
                let deg = match g.max_degree_with(&fw) {
                    Some(e) if g.is_homogeneous_of(&fw, e) => e,
                    _ => {
                        return Err(SqhError::Precondition(format!(
                            "n{} = {g} is not quasihomogeneous in (x, t)",
                            i + 1
                        )))
                    }
                };
                degrees.push(deg);
            }
            (list.to_vec(), degrees, false)
        }
    };
    let mut entries = Vec::with_capacity(k);
    for g in &generators {
        entries.push(multiply_in_i_upper(g, u)?);
    }
    let tw = u.parameter_weights();
    let graded = entries.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, h)| h.is_zero() || h.is_homogeneous_of(tw, degrees[i] + tw[j]))
    });
    let mut m = KsMatrix {
        entries,
        generators,
        generator_degrees: degrees,
        symmetric: false,
        graded,
    };
    m.symmetric = m.symmetry_defects().is_empty();
    if auto && !m.symmetric {
        return Err(SqhError::Internal("auto-computed matrix is not symmetric".into()));
    }
    Ok(m)
}

/// A derivation Σ hⱼ ∂/∂tⱼ of A₋.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    pub components: Vec<Poly>,
    pub weights: Vec<i64>,
}

impl VectorField {
    pub fn new(components: Vec<Poly>, weights: Vec<i64>) -> Self {
        assert_eq!(components.len(), weights.len(), "one component per parameter");
        VectorField { components, weights }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    /// The degree e with hⱼ of degree e + w(tⱼ) for all j, if there is one.
    pub fn degree(&self) -> Option<i64> {
        let mut found: Option<i64> = None;
        for (h, w) in self.components.iter().zip(&self.weights) {
            if h.is_zero() {
                continue;
            }
            let e = h.max_degree_with(&self.weights)?;
            if !h.is_homogeneous_of(&self.weights, e) {
                return None;
            }
            match found {
                None => found = Some(e - w),
                Some(f) if f != e - w => return None,
                _ => {}
            }
        }
        found
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        let mut acc = Poly::zero(p.vars());
        for (j, h) in self.components.iter().enumerate() {
            if h.is_zero() {
                continue;
            }
            let dp = p.derivative(j);
            if !dp.is_zero() {
                acc.add_assign(&h.mul(&dp));
            }
        }
        acc
    }

    pub fn scale_by(&self, p: &Poly) -> VectorField {
        VectorField::new(self.components.iter().map(|h| h.mul(p)).collect(), self.weights.clone())
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
            self.weights.clone(),
        )
    }
}

pub fn bracket(a: &VectorField, b: &VectorField) -> VectorField {
    assert_eq!(a.components.len(), b.components.len(), "fields on different parameter spaces");
    let components = a
        .components
        .iter()
        .zip(&b.components)
        .map(|(aj, bj)| a.apply(bj).sub(&b.apply(aj)))
        .collect();
    VectorField::new(components, a.weights.clone())
}

/// Σ w(tᵢ)·tᵢ ∂/∂tᵢ with the (negative) parameter weights.
pub fn euler_field(u: &NegativeUnfolding) -> VectorField {
    let tv = u.parameter_vars();
    let components = u
        .parameter_weights()
        .iter()
        .enumerate()
        .map(|(i, &w)| Poly::var(tv, i).scale(&Scalar::from_int(w)))
        .collect();
    VectorField::new(components, u.parameter_weights().to_vec())
}

/// Filtration data for the quotient by L₊.
#[derive(Clone, Debug)]
pub struct LieData {
    pub s: i64,
    /// Nonconstant t-monomials spanning F⁰..Fˢ (degree > −(i+1)·w_min).
    pub filtration: Vec<Vec<Monomial>>,
    /// r₁..r_s.
    pub levels: Vec<i64>,
    /// Z₁..Z_{s+1} as sets of 1-based row indices i ≥ 2 with deg δᵢ ≥ rⱼ.
    pub z_generators: Vec<Vec<usize>>,
    pub row_degrees: Vec<Option<i64>>,
    /// Spanning set t^γ·δᵢ (i ≥ 2) of L₊ with its degrees.
    pub lplus: Vec<VectorField>,
    pub lplus_degrees: Vec<i64>,
    pub euler: VectorField,
    pub condition_f: bool,
    pub condition_z: bool,
}

/// Monomials in the parameters of weight in [min_weight, 0] (weights negative).
pub fn parameter_monomials_down_to(weights: &[i64], min_weight: i64) -> Vec<Monomial> {
    let pos: Vec<i64> = weights.iter().map(|w| -w).collect();
    let mut out = monomials_up_to(&pos, -min_weight);
    out.sort_by(|a, b| a.degree(&pos).cmp(&b.degree(&pos)).then_with(|| b.revlex_cmp(a)));
    out
}

/// Is `target` a C-linear combination of `spanning`?
fn in_span(target: &VectorField, spanning: &[VectorField]) -> bool {
    if target.is_zero() {
        return true;
    }
    let mut coords: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let index = |j: usize, m: &Monomial, coords: &mut BTreeMap<(usize, Monomial), usize>| {
        let len = coords.len();
        *coords.entry((j, m.clone())).or_insert(len)
    };
    let mut columns: Vec<Vec<(usize, Scalar)>> = Vec::new();
    for f in spanning {
        let mut col = Vec::new();
        for (j, h) in f.components.iter().enumerate() {
            for (m, c) in h.terms() {
                col.push((index(j, m, &mut coords), c.clone()));
            }
        }
        columns.push(col);
    }
    let mut rhs = Vec::new();
    for (j, h) in target.components.iter().enumerate() {
        for (m, c) in h.terms() {
            rhs.push((index(j, m, &mut coords), c.clone()));
        }
    }
    let mut a = Matrix::zeros(coords.len(), columns.len());
    for (c, col) in columns.iter().enumerate() {
        for (r, v) in col {
            a.set(*r, c, v.clone());
        }
    }
    let mut b = vec![Scalar::zero(); coords.len()];
    for (r, v) in rhs {
        b[r] = v;
    }
    a.solve(&b).is_some()
}

/// s = ⌊((n−1)d − 2Σwᵢ)/w_min⌋; negative when no parameter of weight ≤ −w_min exists.
pub fn filtration_bound(w: &WeightSystem) -> i64 {
    let n = w.nvars() as i64;
    ((n - 1) * w.degree() - 2 * w.weight_sum()).div_euclid(w.min_weight())
}

pub fn lie_filtrations(u: &NegativeUnfolding, m: &KsMatrix) -> Result<LieData> {
    let w = u.milnor().weights();
    let wmin = w.min_weight();
    let s = filtration_bound(w);
    let tw = u.parameter_weights().to_vec();
    let k = u.k();
    let tvars = u.parameter_vars().clone();

    let filtration: Vec<Vec<Monomial>> = (0..=s.max(0))
        .map(|i| {
            let bound = -(i + 1) * wmin;
            parameter_monomials_down_to(&tw, bound + 1)
                .into_iter()
                .filter(|mono| !mono.is_one())
                .collect()
        })
        .collect();

    let fields = m.fields(u);
    let row_degrees: Vec<Option<i64>> = fields
        .iter()
        .zip(&m.generator_degrees)
        .map(|(f, &g)| if f.is_zero() { Some(g) } else { f.degree() })
        .collect();

    let mut levels = Vec::new();
    for i in 1..=s {
        let level = s - i;
        let bound = -(level + 1) * wmin;
        let r = (1..=k)
            .filter(|&j| tw[k - j] > bound)
            .filter_map(|j| row_degrees[j - 1])
            .min();
        levels.push(r.unwrap_or(i64::MAX));
    }

    let mut z_generators: Vec<Vec<usize>> = levels
        .iter()
        .map(|&r| {
            (2..=k)
                .filter(|&i| row_degrees[i - 1].is_some_and(|e| e >= r))
                .collect()
        })
        .collect();
    z_generators.push(Vec::new());

    // L₊ spanned by t^γ·δᵢ, i ≥ 2, of degree ≥ w_min
    let mut lplus = Vec::new();
    let mut lplus_degrees = Vec::new();
    let mut lplus_rows = Vec::new();
    for i in 2..=k {
        let Some(e) = row_degrees[i - 1] else {
            return Err(SqhError::Internal(format!("row {i} is not quasihomogeneous")));
        };
        if fields[i - 1].is_zero() || e < wmin {
            continue;
        }
        for gamma in parameter_monomials_down_to(&tw, wmin - e) {
            let gdeg = gamma.degree(&tw);
            let factor = Poly::monomial(&tvars, gamma, Scalar::one());
            lplus.push(fields[i - 1].scale_by(&factor));
            lplus_degrees.push(e + gdeg);
            lplus_rows.push(i);
        }
    }

    // (F): δ(Fⁱ) ⊆ F^{i−1}, where F^{−1} = 0
    let mut condition_f = true;
    for (field, &e) in lplus.iter().zip(&lplus_degrees) {
        if e < wmin {
            condition_f = false;
        }
        for (i, monos) in filtration.iter().enumerate() {
            for mono in monos {
                let image = field.apply(&Poly::monomial(&tvars, mono.clone(), Scalar::one()));
                let ok = image.terms().all(|(t, _)| i > 0 && t.degree(&tw) > -(i as i64) * wmin);
                if !ok {
                    condition_f = false;
                }
            }
        }
    }

    // (Z): [L₊, Zⱼ] ⊆ Z_{j+1}, with Zⱼ spanned by the L₊ elements of degree ≥ rⱼ
    let z_span = |j: usize| -> Vec<VectorField> {
        if j >= levels.len() {
            return Vec::new();
        }
        lplus
            .iter()
            .zip(&lplus_degrees)
            .filter(|(_, &e)| e >= levels[j])
            .map(|(f, _)| f.clone())
            .collect()
    };
    let mut condition_z = true;
    'outer: for j in 0..levels.len() {
        let zj = z_span(j);
        let next = z_span(j + 1);
        for a in &lplus {
            for b in &zj {
                let c = bracket(a, b);
                if !in_span(&c, &next) {
                    condition_z = false;
                    break 'outer;
                }
            }
        }
    }

    Ok(LieData {
        s,
        filtration,
        levels,
        z_generators,
        row_degrees,
        lplus,
        lplus_degrees,
        euler: euler_field(u),
        condition_f,
        condition_z,
    })
}
