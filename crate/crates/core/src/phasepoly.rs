//! Laurent polynomials in formal unimodular phase variables.
//!
//! A [`PhaseVariable`] `x_δ` stands for `e^{iδ}` with `δ` an arbitrary real
//! angle; unimodularity means its conjugate is its inverse, so conjugation
//! negates exponents. Coefficients are exact [`CyclotomicNumber`]s. An
//! identity that reduces to the zero polynomial therefore holds for *every*
//! assignment of phase angles simultaneously — sampling can only ever refute
//! such a claim, the canonical form proves it.
//!
//! Polynomials are kept canonical: no zero coefficients are stored, and
//! terms are ordered lexicographically by (variable name, exponent), which
//! makes equality a structural comparison and serialization deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cyclo::{CyclotomicNumber, RootOfUnity};

/// Errors raised by polynomial evaluation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PhaseError {
    /// An evaluation was attempted without a value for some variable.
    #[error("no assignment for phase variable {0:?}")]
    MissingAssignment(String),
}

/// A named formal phase variable standing for `e^{iδ}`.
///
/// Equality is by name; distinct phases must use distinct names.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PhaseVariable {
    name: String,
}

impl PhaseVariable {
    /// Creates a variable with the given name.
    pub fn new(name: impl Into<String>) -> Self {
        PhaseVariable { name: name.into() }
    }

    /// The variable's name.
    pub fn name(&self) -> &str {
        &self.name
    }
}

impl fmt::Display for PhaseVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// A product of variable powers, e.g. `x_δ²·x_φ⁻¹`, stored sparsely with no
/// zero exponents. The derived ordering (lexicographic over the sorted
/// entries) is the canonical term order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
struct Monomial {
    exponents: BTreeMap<PhaseVariable, i64>,
}

impl Monomial {
    fn one() -> Self {
        Monomial::default()
    }

    fn variable(v: &PhaseVariable, exponent: i64) -> Self {
        let mut exponents = BTreeMap::new();
        if exponent != 0 {
            exponents.insert(v.clone(), exponent);
        }
        Monomial { exponents }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut exponents = self.exponents.clone();
        for (v, e) in &other.exponents {
            let combined = exponents.entry(v.clone()).or_insert(0);
            *combined += e;
            if *combined == 0 {
                exponents.remove(v);
            }
        }
        Monomial { exponents }
    }

    fn inverse(&self) -> Self {
        Monomial {
            exponents: self
                .exponents
                .iter()
                .map(|(v, e)| (v.clone(), -e))
                .collect(),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, e) in &self.exponents {
            if !first {
                write!(f, "·")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "x_{v}")?;
            } else {
                write!(f, "x_{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A Laurent polynomial in phase variables with cyclotomic coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PhasePolynomial {
    terms: BTreeMap<Monomial, CyclotomicNumber>,
}

impl PhasePolynomial {
    /// The zero polynomial.
    pub fn zero() -> Self {
        PhasePolynomial::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::constant(CyclotomicNumber::one())
    }

    /// A constant polynomial. A zero constant folds to the zero polynomial.
    pub fn constant(value: CyclotomicNumber) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Monomial::one(), value);
        }
        PhasePolynomial { terms }
    }

    /// An integer constant.
    pub fn from_integer(n: i64) -> Self {
        Self::constant(CyclotomicNumber::from_integer(n))
    }

    /// The monomial `x_v` with coefficient 1.
    pub fn variable(v: &PhaseVariable) -> Self {
        Self::variable_pow(v, 1)
    }

    /// The monomial `x_v^n` with coefficient 1 (`n` may be negative).
    pub fn variable_pow(v: &PhaseVariable, n: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::variable(v, n), CyclotomicNumber::one());
        PhasePolynomial { terms }
    }

    /// True iff this is the zero polynomial (empty canonical term map).
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// If the polynomial has no variables, returns the constant value.
    pub fn as_constant(&self) -> Option<CyclotomicNumber> {
        match self.terms.len() {
            0 => Some(CyclotomicNumber::zero()),
            1 => self
                .terms
                .get_key_value(&Monomial::one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    /// Number of (nonzero) terms in canonical form.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// All variables that occur in the polynomial.
    pub fn variables(&self) -> BTreeSet<&PhaseVariable> {
        self.terms
            .keys()
            .flat_map(|m| m.exponents.keys())
            .collect()
    }

    /// Conjugation: negate every exponent vector (unimodularity) and
    /// conjugate every coefficient. An involutive ring automorphism.
    pub fn conjugate(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.inverse(), c.conjugate()))
            .collect();
        PhasePolynomial { terms }
    }

    /// Multiplies every coefficient by an exact constant.
    pub fn scale(&self, factor: &CyclotomicNumber) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c * factor))
            .collect();
        PhasePolynomial { terms }
    }

    fn insert_term(terms: &mut BTreeMap<Monomial, CyclotomicNumber>, m: Monomial, c: CyclotomicNumber) {
        match terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                if !c.is_zero() {
                    slot.insert(c);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let combined = slot.get() + &c;
                if combined.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = combined;
                }
            }
        }
    }

    fn add_impl(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::insert_term(&mut terms, m.clone(), c.clone());
        }
        PhasePolynomial { terms }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                Self::insert_term(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        PhasePolynomial { terms }
    }

    fn neg_impl(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), -c))
            .collect();
        PhasePolynomial { terms }
    }

    /// Substitutes `x_v = exp(i·angle)` for every variable and evaluates the
    /// coefficients in double precision.
    pub fn evaluate(
        &self,
        assignment: &BTreeMap<PhaseVariable, f64>,
    ) -> Result<Complex64, PhaseError> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut phase = 0.0;
            for (v, e) in &m.exponents {
                let angle = assignment
                    .get(v)
                    .ok_or_else(|| PhaseError::MissingAssignment(v.name.clone()))?;
                phase += angle * (*e as f64);
            }
            acc += c.to_complex_float() * Complex64::from_polar(1.0, phase);
        }
        Ok(acc)
    }

    /// Substitutes a root of unity for every variable and folds the result
    /// into a single exact cyclotomic constant.
    pub fn evaluate_exact(
        &self,
        assignment: &BTreeMap<PhaseVariable, RootOfUnity>,
    ) -> Result<CyclotomicNumber, PhaseError> {
        let mut acc = CyclotomicNumber::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in &m.exponents {
                let root = assignment
                    .get(v)
                    .ok_or_else(|| PhaseError::MissingAssignment(v.name.clone()))?;
                term = term * root.pow(*e).to_cyclotomic();
            }
            acc += term;
        }
        Ok(acc)
    }
}

impl From<CyclotomicNumber> for PhasePolynomial {
    fn from(value: CyclotomicNumber) -> Self {
        PhasePolynomial::constant(value)
    }
}

macro_rules! poly_binary_operator {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl std::ops::$trait<PhasePolynomial> for PhasePolynomial {
            type Output = PhasePolynomial;
            fn $method(self, rhs: PhasePolynomial) -> PhasePolynomial {
                self.$impl_fn(&rhs)
            }
        }
        impl std::ops::$trait<&PhasePolynomial> for PhasePolynomial {
            type Output = PhasePolynomial;
            fn $method(self, rhs: &PhasePolynomial) -> PhasePolynomial {
                self.$impl_fn(rhs)
            }
        }
        impl std::ops::$trait<PhasePolynomial> for &PhasePolynomial {
            type Output = PhasePolynomial;
            fn $method(self, rhs: PhasePolynomial) -> PhasePolynomial {
                self.$impl_fn(&rhs)
            }
        }
        impl std::ops::$trait<&PhasePolynomial> for &PhasePolynomial {
            type Output = PhasePolynomial;
            fn $method(self, rhs: &PhasePolynomial) -> PhasePolynomial {
                self.$impl_fn(rhs)
            }
        }
    };
}

poly_binary_operator!(Add, add, add_impl);
poly_binary_operator!(Mul, mul, mul_impl);

impl std::ops::Sub<&PhasePolynomial> for &PhasePolynomial {
    type Output = PhasePolynomial;
    fn sub(self, rhs: &PhasePolynomial) -> PhasePolynomial {
        self.add_impl(&rhs.neg_impl())
    }
}

impl std::ops::Sub<PhasePolynomial> for PhasePolynomial {
    type Output = PhasePolynomial;
    fn sub(self, rhs: PhasePolynomial) -> PhasePolynomial {
        &self - &rhs
    }
}

impl std::ops::Sub<&PhasePolynomial> for PhasePolynomial {
    type Output = PhasePolynomial;
    fn sub(self, rhs: &PhasePolynomial) -> PhasePolynomial {
        &self - rhs
    }
}

impl std::ops::Sub<PhasePolynomial> for &PhasePolynomial {
    type Output = PhasePolynomial;
    fn sub(self, rhs: PhasePolynomial) -> PhasePolynomial {
        self - &rhs
    }
}

impl std::ops::Neg for PhasePolynomial {
    type Output = PhasePolynomial;
    fn neg(self) -> PhasePolynomial {
        self.neg_impl()
    }
}

impl std::ops::Neg for &PhasePolynomial {
    type Output = PhasePolynomial;
    fn neg(self) -> PhasePolynomial {
        self.neg_impl()
    }
}

impl std::ops::AddAssign<&PhasePolynomial> for PhasePolynomial {
    fn add_assign(&mut self, rhs: &PhasePolynomial) {
        *self = self.add_impl(rhs);
    }
}

impl std::ops::AddAssign<PhasePolynomial> for PhasePolynomial {
    fn add_assign(&mut self, rhs: PhasePolynomial) {
        *self = self.add_impl(&rhs);
    }
}

impl std::ops::SubAssign<&PhasePolynomial> for PhasePolynomial {
    fn sub_assign(&mut self, rhs: &PhasePolynomial) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for PhasePolynomial {
    fn sum<I: Iterator<Item = PhasePolynomial>>(iter: I) -> PhasePolynomial {
        iter.fold(PhasePolynomial::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for PhasePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = c.to_string();
            if m.exponents.is_empty() {
                write!(f, "{coeff}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else if coeff.contains(' ') {
                write!(f, "({coeff})·{m}")?;
            } else {
                write!(f, "{coeff}·{m}")?;
            }
        }
        Ok(())
    }
}

// Serialization: a sorted list of `{exponents, coeff}` records. BTreeMap
// iteration order *is* the canonical term order, so the encoding is
// deterministic byte-for-byte.

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exponents: BTreeMap<String, i64>,
    coeff: CyclotomicNumber,
}

impl Serialize for PhasePolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(m, c)| TermRepr {
                exponents: m
                    .exponents
                    .iter()
                    .map(|(v, e)| (v.name.clone(), *e))
                    .collect(),
                coeff: c.clone(),
            })
            .collect();
        #[derive(Serialize)]
        struct PolyRepr {
            terms: Vec<TermRepr>,
        }
        PolyRepr { terms }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PhasePolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct PolyRepr {
            terms: Vec<TermRepr>,
        }
        let repr = PolyRepr::deserialize(deserializer)?;
        let mut terms = BTreeMap::new();
        for term in repr.terms {
            let monomial = Monomial {
                exponents: term
                    .exponents
                    .into_iter()
                    .filter(|(_, e)| *e != 0)
                    .map(|(name, e)| (PhaseVariable::new(name), e))
                    .collect(),
            };
            PhasePolynomial::insert_term(&mut terms, monomial, term.coeff);
        }
        Ok(PhasePolynomial { terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::root_of_unity;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn delta() -> PhaseVariable {
        PhaseVariable::new("delta")
    }

    fn gamma() -> CyclotomicNumber {
        root_of_unity(3, 1).unwrap()
    }

    #[test]
    fn unimodularity_makes_conjugate_the_inverse() {
        let x = PhasePolynomial::variable(&delta());
        let product = &x * &x.conjugate();
        assert_eq!(product, PhasePolynomial::one());
    }

    #[test]
    fn doubling_a_monomial_doubles_its_coefficient() {
        let x = PhasePolynomial::variable(&delta());
        let doubled = &x + &x;
        assert_eq!(doubled, x.scale(&CyclotomicNumber::from_integer(2)));
        assert_eq!(doubled.term_count(), 1);
    }

    #[test]
    fn conjugation_acts_componentwise() {
        // conj(Γ·x_δ) = Γ²·x_δ^{−1}.
        let lhs = PhasePolynomial::variable(&delta()).scale(&gamma());
        let rhs = PhasePolynomial::variable_pow(&delta(), -1)
            .scale(&root_of_unity(3, 2).unwrap());
        assert_eq!(lhs.conjugate(), rhs);
        assert_eq!(lhs.conjugate().conjugate(), lhs);
    }

    #[test]
    fn cancellation_produces_the_empty_term_map() {
        let x = PhasePolynomial::variable(&delta());
        assert!((&x - &x).is_zero());
        assert_eq!((&x - &x).term_count(), 0);
    }

    #[test]
    fn zero_constants_fold_away() {
        // 1 + Γ + Γ² = 0, so the constant polynomial over it is zero.
        let value = CyclotomicNumber::one() + gamma() + root_of_unity(3, 2).unwrap();
        assert!(PhasePolynomial::constant(value).is_zero());
    }

    #[test]
    fn squared_modulus_of_one_plus_gamma_x() {
        // (1 + Γx)·conj(1 + Γx) = 2 + Γx + Γ²x^{−1}.
        let p = PhasePolynomial::one() + PhasePolynomial::variable(&delta()).scale(&gamma());
        let product = &p * &p.conjugate();
        let expected = PhasePolynomial::from_integer(2)
            + PhasePolynomial::variable(&delta()).scale(&gamma())
            + PhasePolynomial::variable_pow(&delta(), -1).scale(&root_of_unity(3, 2).unwrap());
        assert_eq!(product, expected);

        // Float cross-check at 10 pseudo-random angles.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let angle: f64 = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
            let assignment = BTreeMap::from([(delta(), angle)]);
            let direct = {
                let z = gamma().to_complex_float() * Complex64::from_polar(1.0, angle);
                (1.0 + z) * (1.0 + z).conj()
            };
            let via_poly = product.evaluate(&assignment).unwrap();
            assert!((via_poly - direct).norm() < 1e-9);
        }
    }

    #[test]
    fn evaluate_substitutes_unit_phases() {
        let x = PhasePolynomial::variable(&delta());
        let at_zero = x.evaluate(&BTreeMap::from([(delta(), 0.0)])).unwrap();
        assert!((at_zero - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let at_quarter = x
            .evaluate(&BTreeMap::from([(delta(), std::f64::consts::FRAC_PI_2)]))
            .unwrap();
        assert!((at_quarter - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn evaluate_constant_folds_cyclotomic_sums() {
        // 2 + Γ + Γ² = 1 at δ = 0.
        let p = PhasePolynomial::from_integer(2)
            + PhasePolynomial::variable(&delta()).scale(&gamma())
            + PhasePolynomial::variable_pow(&delta(), -1).scale(&root_of_unity(3, 2).unwrap());
        let value = p.evaluate(&BTreeMap::from([(delta(), 0.0)])).unwrap();
        assert!((value - Complex64::new(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn evaluate_reports_the_missing_variable_by_name() {
        let x = PhasePolynomial::variable(&delta());
        let err = x.evaluate(&BTreeMap::new()).unwrap_err();
        assert_eq!(err, PhaseError::MissingAssignment("delta".into()));
        let err = x.evaluate_exact(&BTreeMap::new()).unwrap_err();
        assert_eq!(err, PhaseError::MissingAssignment("delta".into()));
    }

    #[test]
    fn exact_evaluation_folds_to_cyclotomic_constants() {
        let x = PhasePolynomial::variable(&delta());
        // (x_δ − 1) at x_δ ↦ 1.
        let p = &x - &PhasePolynomial::one();
        let at_one = p
            .evaluate_exact(&BTreeMap::from([(delta(), RootOfUnity::one())]))
            .unwrap();
        assert!(at_one.is_zero());

        // (1 + Γ·x + Γ²·x²) at x ↦ Γ gives 1 + Γ² + Γ⁴ = 1 + Γ² + Γ = 0.
        let q = PhasePolynomial::one()
            + x.scale(&gamma())
            + PhasePolynomial::variable_pow(&delta(), 2).scale(&root_of_unity(3, 2).unwrap());
        let at_gamma = q
            .evaluate_exact(&BTreeMap::from([(delta(), RootOfUnity::new(3, 1).unwrap())]))
            .unwrap();
        assert!(at_gamma.is_zero());

        // A constant polynomial ignores the assignment.
        let c = PhasePolynomial::from_integer(5);
        assert_eq!(
            c.evaluate_exact(&BTreeMap::new()).unwrap(),
            CyclotomicNumber::from_integer(5)
        );
    }

    #[test]
    fn exact_and_float_evaluation_agree_at_roots_of_unity() {
        let phi = PhaseVariable::new("phi");
        let p = PhasePolynomial::one()
            + PhasePolynomial::variable(&delta()).scale(&gamma())
            + (PhasePolynomial::variable_pow(&phi, -2) * PhasePolynomial::variable(&delta()))
                .scale(&CyclotomicNumber::from_ratio(3, 7));
        let root_d = RootOfUnity::new(12, 5).unwrap();
        let root_p = RootOfUnity::new(8, 3).unwrap();
        let exact = p
            .evaluate_exact(&BTreeMap::from([
                (delta(), root_d),
                (phi.clone(), root_p),
            ]))
            .unwrap()
            .to_complex_float();
        let angles = BTreeMap::from([
            (delta(), std::f64::consts::TAU * 5.0 / 12.0),
            (phi, std::f64::consts::TAU * 3.0 / 8.0),
        ]);
        let float = p.evaluate(&angles).unwrap();
        assert!((exact - float).norm() < 1e-9);
    }

    #[test]
    fn disjoint_variable_products_take_the_union() {
        let phi = PhaseVariable::new("phi");
        let p = PhasePolynomial::variable(&delta());
        let q = PhasePolynomial::variable(&phi);
        let product = &p * &q;
        assert_eq!(product.term_count(), 1);
        let names: Vec<&str> = product.variables().iter().map(|v| v.name()).collect();
        assert_eq!(names, vec!["delta", "phi"]);
    }

    #[test]
    fn serialization_is_canonical_and_round_trips() {
        let phi = PhaseVariable::new("phi");
        let p = PhasePolynomial::variable(&phi)
            + PhasePolynomial::variable(&delta()).scale(&gamma())
            + PhasePolynomial::from_integer(-2);
        let encoded = serde_json::to_string(&p).unwrap();
        let decoded: PhasePolynomial = serde_json::from_str(&encoded).unwrap();
        assert_eq!(decoded, p);
        // The constant term (empty exponent map) sorts first.
        assert!(encoded.starts_with(r#"{"terms":[{"exponents":{},"#));
        assert!(encoded.find("delta").unwrap() < encoded.find("phi").unwrap());
    }

    #[test]
    fn display_is_readable() {
        let p = PhasePolynomial::from_integer(2)
            + PhasePolynomial::variable(&delta()).scale(&gamma());
        assert_eq!(p.to_string(), "2 + ζ3·x_delta");
        assert_eq!(PhasePolynomial::zero().to_string(), "0");
        assert_eq!(
            PhasePolynomial::variable_pow(&delta(), -1).to_string(),
            "x_delta^-1"
        );
    }
}
