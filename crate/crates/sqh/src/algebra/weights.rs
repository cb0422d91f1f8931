//! Weight systems and the weighted-degree operations built on them.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::{format_monomial, ExtDegree, Poly};
use crate::error::{Result, SqhError};

/// Positive weights w₁..wₙ and a degree d with 0 < wᵢ/d ≤ 1/2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    weights: Vec<i64>,
    degree: i64,
}

/// Normalized order of a polynomial: weighted degree divided by d, or +∞.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalizedOrder {
    Finite(BigRational),
    Infinity,
}

impl WeightSystem {
    pub fn new(weights: Vec<i64>, degree: i64) -> Result<Self> {
        if weights.is_empty() {
            return Err(SqhError::InvalidWeights("no variables".into()));
        }
        if degree <= 0 {
            return Err(SqhError::InvalidWeights(format!("degree {degree} is not positive")));
        }
        for (i, &w) in weights.iter().enumerate() {
            if w <= 0 {
                return Err(SqhError::InvalidWeights(format!("weight w{} = {w} is not positive", i + 1)));
            }
            if 2 * w > degree {
                return Err(SqhError::InvalidWeights(format!(
                    "normalized weight w{}/d = {w}/{degree} exceeds 1/2",
                    i + 1
                )));
            }
        }
        Ok(WeightSystem { weights, degree })
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn min_weight(&self) -> i64 {
        *self.weights.iter().min().expect("nonempty")
    }

    pub fn max_weight(&self) -> i64 {
        *self.weights.iter().max().expect("nonempty")
    }

    pub fn weight_sum(&self) -> i64 {
        self.weights.iter().sum()
    }

    /// Degree of the hessian, n·d − 2Σwᵢ: the top degree of the Milnor algebra.
    pub fn socle_degree(&self) -> i64 {
        self.nvars() as i64 * self.degree - 2 * self.weight_sum()
    }

    fn check_arity(&self, f: &Poly) -> Result<()> {
        if f.nvars() != self.nvars() {
            return Err(SqhError::ArityMismatch {
                expected: self.nvars(),
                found: f.nvars(),
            });
        }
        Ok(())
    }

    pub fn weighted_degree(&self, f: &Poly) -> Result<ExtDegree> {
        self.check_arity(f)?;
        Ok(f.weighted_degree_with(&self.weights))
    }

    pub fn is_quasihomogeneous(&self, f: &Poly) -> Result<bool> {
        self.check_arity(f)?;
        if f.is_zero() {
            return Err(SqhError::ZeroPolynomial);
        }
        Ok(f.is_homogeneous_of(&self.weights, self.degree))
    }

    /// Checks quasihomogeneity and names the first offending term.
    pub fn require_quasihomogeneous(&self, f: &Poly) -> Result<()> {
        if self.is_quasihomogeneous(f)? {
            return Ok(());
        }
        let (m, _) = f
            .terms()
            .find(|(m, _)| m.degree(&self.weights) != self.degree)
            .expect("some term has the wrong degree");
        Err(SqhError::NotQuasihomogeneous {
            degree: self.degree,
            term: format_monomial(f.vars(), m),
        })
    }

    pub fn principal_part(&self, f: &Poly) -> Result<Poly> {
        self.check_arity(f)?;
        match f.weighted_degree_with(&self.weights) {
            ExtDegree::Infinity => Err(SqhError::ZeroPolynomial),
            ExtDegree::Finite(d) => Ok(f.homogeneous_part(&self.weights, d)),
        }
    }

    pub fn nu_c(&self, f: &Poly) -> Result<NormalizedOrder> {
        Ok(match self.weighted_degree(f)? {
            ExtDegree::Infinity => NormalizedOrder::Infinity,
            ExtDegree::Finite(e) => {
                NormalizedOrder::Finite(BigRational::new(BigInt::from(e), BigInt::from(self.degree)))
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;
    use crate::algebra::poly::Vars;

    fn ws() -> WeightSystem {
        WeightSystem::new(vec![7, 7, 3], 21).unwrap()
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, &Vars::new(["x", "y", "z"])).unwrap()
    }

    #[test]
    fn degree_examples() {
        assert_eq!(ws().weighted_degree(&p("x^3+y^3+z^7")).unwrap(), ExtDegree::Finite(21));
        assert_eq!(ws().weighted_degree(&p("0")).unwrap(), ExtDegree::Infinity);
        assert_eq!(ws().weighted_degree(&p("x*z^5")).unwrap(), ExtDegree::Finite(22));
    }

    #[test]
    fn quasihomogeneity_examples() {
        assert!(ws().is_quasihomogeneous(&p("x^3+y^3+z^7")).unwrap());
        assert!(!ws().is_quasihomogeneous(&p("x^3+y^3+z^7+x*z^5")).unwrap());
        assert_eq!(ws().is_quasihomogeneous(&p("0")), Err(SqhError::ZeroPolynomial));
        // d = w₁ violates the bound w/d ≤ 1/2, so check the grading directly
        assert!(WeightSystem::new(vec![7, 7, 3], 7).is_err());
        assert!(p("x").is_homogeneous_of(&[7, 7, 3], 7));
    }

    #[test]
    fn principal_part_examples() {
        assert_eq!(ws().principal_part(&p("x^3+y^3+z^7+x*z^5")).unwrap(), p("x^3+y^3+z^7"));
        let w = WeightSystem::new(vec![5, 4], 20).unwrap();
        let v = Vars::new(["x", "y"]);
        let f = parse_poly("x^4+y^5+x^2*y^3", &v).unwrap();
        assert_eq!(w.principal_part(&f).unwrap(), parse_poly("x^4+y^5", &v).unwrap());
    }

    #[test]
    fn nu_c_examples() {
        assert_eq!(
            ws().nu_c(&p("x")).unwrap(),
            NormalizedOrder::Finite(BigRational::new(1.into(), 3.into()))
        );
        assert_eq!(ws().nu_c(&p("0")).unwrap(), NormalizedOrder::Infinity);
        assert_eq!(
            ws().nu_c(&p("x^3+y^3+z^7")).unwrap(),
            NormalizedOrder::Finite(BigRational::from_integer(1.into()))
        );
    }

    #[test]
    fn invalid_weights_rejected() {
        assert!(WeightSystem::new(vec![0, 3], 6).is_err());
        assert!(WeightSystem::new(vec![4, 3], 6).is_err());
        assert!(WeightSystem::new(vec![3, 3], 6).is_ok());
    }
}
