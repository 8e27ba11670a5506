//! Exact arithmetic in cyclotomic fields `Q(ζ_L)`.
//!
//! A [`CyclotomicNumber`] stores rational coefficients over the power basis
//! `{1, ζ_L, …, ζ_L^{L−1}}` of the ring `Q[x]/(x^L − 1)` and is kept reduced
//! modulo the L-th cyclotomic polynomial `Φ_L`, the minimal polynomial of
//! `ζ_L = e^{2πi/L}`. Reduction makes the representative canonical at a fixed
//! conductor, so equality and zero-testing are exact coefficient comparisons.
//!
//! Conductors grow lazily: a value carries the conductor it was built at, and
//! a binary operation on mixed conductors lifts both operands to the least
//! common multiple before combining them. Purely qutrit computations therefore
//! stay at conductor 12 even though the square roots needed elsewhere push the
//! worst case of the full suite up to conductor 264 = lcm(8, 12, 44).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Errors raised by the constructors in this module.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    /// A root of unity was requested with order zero.
    #[error("root-of-unity order must be positive")]
    InvalidOrder,
    /// A square root was requested of a non-positive integer.
    #[error("square-root argument must be a positive integer")]
    InvalidArgument,
    /// A serialized value failed validation while being decoded.
    #[error("malformed cyclotomic value: {0}")]
    Malformed(String),
}

// -------------------------------------------------------------------------
// Cyclotomic polynomials
// -------------------------------------------------------------------------

/// A cached monic cyclotomic polynomial, kept both with integer coefficients
/// (its natural form) and pre-converted rational ones (the form reduction
/// actually consumes).
struct CyclotomicPolynomial {
    degree: usize,
    rational: Vec<BigRational>,
    integer: Vec<BigInt>,
}

fn polynomial_cache() -> &'static Mutex<HashMap<u32, Arc<CyclotomicPolynomial>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicPolynomial>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Exact division of integer polynomials where the divisor is monic.
/// Coefficient order is ascending; the remainder is asserted to vanish.
fn divide_monic(numerator: &[BigInt], divisor: &[BigInt]) -> Vec<BigInt> {
    let n = numerator.len() - 1;
    let d = divisor.len() - 1;
    debug_assert!(divisor[d].is_one(), "divisor must be monic");
    let mut rest = numerator.to_vec();
    let mut quotient = vec![BigInt::zero(); n - d + 1];
    for k in (0..=n - d).rev() {
        let c = std::mem::replace(&mut rest[k + d], BigInt::zero());
        if c.is_zero() {
            continue;
        }
        for (j, dj) in divisor.iter().enumerate().take(d) {
            rest[k + j] -= &c * dj;
        }
        quotient[k] = c;
    }
    debug_assert!(rest.iter().all(BigInt::is_zero), "division must be exact");
    quotient
}

fn compute_cyclotomic_polynomial(order: u32) -> Vec<BigInt> {
    // Φ_L = (x^L − 1) / ∏_{d | L, d < L} Φ_d, with Φ_1 = x − 1 as the base
    // case. Every division along the way is exact and by a monic divisor.
    if order == 1 {
        return vec![-BigInt::one(), BigInt::one()];
    }
    let mut poly = vec![BigInt::zero(); order as usize + 1];
    poly[0] = -BigInt::one();
    poly[order as usize] = BigInt::one();
    for d in 1..order {
        if order.is_multiple_of(d) {
            let factor = cyclotomic_polynomial_entry(d);
            poly = divide_monic(&poly, &factor.integer);
        }
    }
    poly
}

fn cyclotomic_polynomial_entry(order: u32) -> Arc<CyclotomicPolynomial> {
    if let Some(hit) = polynomial_cache().lock().unwrap().get(&order) {
        return Arc::clone(hit);
    }
    // Computed outside the lock so the recursion over divisors can re-enter.
    let integer = compute_cyclotomic_polynomial(order);
    let entry = Arc::new(CyclotomicPolynomial {
        degree: integer.len() - 1,
        rational: integer
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect(),
        integer,
    });
    polynomial_cache()
        .lock()
        .unwrap()
        .entry(order)
        .or_insert(entry)
        .clone()
}

/// The L-th cyclotomic polynomial `Φ_L` as ascending integer coefficients.
///
/// `Φ_L` is monic of degree `φ(L)` (Euler's totient) and is the minimal
/// polynomial of `ζ_L` over the rationals.
pub fn cyclotomic_polynomial(order: u32) -> Vec<BigInt> {
    assert!(order >= 1, "cyclotomic polynomial of order zero");
    cyclotomic_polynomial_entry(order).integer.clone()
}

// -------------------------------------------------------------------------
// Roots of unity
// -------------------------------------------------------------------------

/// A root of unity `exp(2πik/L)`, stored with the fraction `k/L` in lowest
/// terms so that structural equality coincides with equality of the complex
/// values it denotes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    order: u32,
    exponent: u32,
}

impl RootOfUnity {
    /// Builds `exp(2πi·exponent/order)`, reducing the exponent modulo the
    /// order and then cancelling common factors.
    pub fn new(order: u32, exponent: i64) -> Result<Self, CycloError> {
        if order == 0 {
            return Err(CycloError::InvalidOrder);
        }
        let reduced = exponent.rem_euclid(i64::from(order)) as u32;
        let g = reduced.gcd(&order);
        Ok(RootOfUnity {
            order: order / g,
            exponent: reduced / g,
        })
    }

    /// The multiplicative identity, `exp(0) = 1`.
    pub fn one() -> Self {
        RootOfUnity {
            order: 1,
            exponent: 0,
        }
    }

    /// Denominator of the reduced fraction `k/L`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Numerator of the reduced fraction `k/L`, in `0 ≤ k < L`.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// The n-th power, still a root of unity.
    pub fn pow(&self, n: i64) -> Self {
        let k = i64::from(self.exponent).wrapping_mul(n % i64::from(self.order));
        RootOfUnity::new(self.order, k).expect("order stays positive")
    }

    /// Complex conjugate, i.e. the inverse `exp(−2πik/L)`.
    pub fn conjugate(&self) -> Self {
        self.pow(-1)
    }

    /// Product of two roots of unity (addition of the phase fractions).
    pub fn mul(&self, other: &Self) -> Self {
        let order = u64::from(self.order) * u64::from(other.order);
        let k = u64::from(self.exponent) * u64::from(other.order)
            + u64::from(other.exponent) * u64::from(self.order);
        RootOfUnity::new(
            u32::try_from(order).expect("combined order fits in u32"),
            (k % order) as i64,
        )
        .expect("order stays positive")
    }

    /// The same value as an exact cyclotomic field element.
    pub fn to_cyclotomic(&self) -> CyclotomicNumber {
        root_of_unity(self.order, i64::from(self.exponent)).expect("order is positive")
    }

    /// Double-precision embedding `exp(2πik/L)`.
    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(
            1.0,
            std::f64::consts::TAU * f64::from(self.exponent) / f64::from(self.order),
        )
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.order, self.exponent) {
            (1, _) => write!(f, "1"),
            (2, _) => write!(f, "-1"),
            (l, 1) => write!(f, "ζ{l}"),
            (l, k) => write!(f, "ζ{l}^{k}"),
        }
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RootRepr {
            order: self.order,
            exponent: self.exponent,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RootOfUnity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = RootRepr::deserialize(deserializer)?;
        RootOfUnity::new(repr.order, i64::from(repr.exponent)).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct RootRepr {
    order: u32,
    exponent: u32,
}

// -------------------------------------------------------------------------
// Cyclotomic numbers
// -------------------------------------------------------------------------

/// An element of the cyclotomic field `Q(ζ_L)`.
///
/// The coefficient vector always has length L (the conductor) and is kept
/// reduced modulo `Φ_L`, so only the first `φ(L)` entries can be nonzero and
/// equal values at equal conductors have identical coefficient vectors.
#[derive(Clone, Debug)]
pub struct CyclotomicNumber {
    conductor: u32,
    coefficients: Vec<BigRational>,
}

impl CyclotomicNumber {
    /// Builds a value from raw coefficients over the power basis of
    /// `Q[x]/(x^L − 1)` and reduces it to the canonical representative.
    pub fn from_power_basis(conductor: u32, coefficients: Vec<BigRational>) -> Self {
        assert!(conductor >= 1, "conductor must be positive");
        assert_eq!(
            coefficients.len(),
            conductor as usize,
            "coefficient vector length must equal the conductor"
        );
        let mut value = CyclotomicNumber {
            conductor,
            coefficients,
        };
        value.reduce();
        value
    }

    /// The additive identity (at conductor 1).
    pub fn zero() -> Self {
        CyclotomicNumber {
            conductor: 1,
            coefficients: vec![BigRational::zero()],
        }
    }

    /// The multiplicative identity (at conductor 1).
    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// Embeds an integer as a field element.
    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Embeds an exact rational as a field element.
    pub fn from_rational(r: BigRational) -> Self {
        CyclotomicNumber {
            conductor: 1,
            coefficients: vec![r],
        }
    }

    /// Embeds the ratio `num/den` as a field element. `den` must be nonzero.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "denominator must be nonzero");
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The conductor L this value is currently represented at.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Coefficients over the power basis `{ζ_L^0, …, ζ_L^{L−1}}`, reduced
    /// modulo `Φ_L` (entries at index ≥ φ(L) are zero).
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    /// Reduces the coefficient vector modulo `Φ_L`. Because `Φ_L` is monic,
    /// each step replaces `x^e` (for e ≥ deg Φ_L) by lower-degree terms
    /// without any division.
    fn reduce(&mut self) {
        let phi = cyclotomic_polynomial_entry(self.conductor);
        let degree = phi.degree;
        for e in (degree..self.conductor as usize).rev() {
            if self.coefficients[e].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut self.coefficients[e], BigRational::zero());
            for (j, pj) in phi.rational.iter().enumerate().take(degree) {
                if !pj.is_zero() {
                    let term = &c * pj;
                    self.coefficients[e - degree + j] -= term;
                }
            }
        }
    }

    /// Re-expresses the value at a larger conductor `target` (which must be a
    /// multiple of the current one): `ζ_L^k = ζ_target^{k·target/L}`.
    fn lift(&self, target: u32) -> Self {
        debug_assert_eq!(target % self.conductor, 0, "lift target must be a multiple");
        if target == self.conductor {
            return self.clone();
        }
        let stride = (target / self.conductor) as usize;
        let mut coefficients = vec![BigRational::zero(); target as usize];
        for (k, c) in self.coefficients.iter().enumerate() {
            if !c.is_zero() {
                coefficients[k * stride] = c.clone();
            }
        }
        Self::from_power_basis(target, coefficients)
    }

    fn common_conductor(&self, other: &Self) -> u32 {
        self.conductor.lcm(&other.conductor)
    }

    /// True iff this is the zero element of the field. Exact: the reduced
    /// representative of zero is the all-zero coefficient vector.
    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(BigRational::is_zero)
    }

    /// True iff this is the multiplicative identity.
    pub fn is_one(&self) -> bool {
        self.coefficients[0].is_one() && self.coefficients[1..].iter().all(BigRational::is_zero)
    }

    /// If the value is rational (all basis coefficients beyond the constant
    /// vanish), returns it as an exact rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coefficients[1..].iter().all(BigRational::is_zero) {
            Some(self.coefficients[0].clone())
        } else {
            None
        }
    }

    /// Complex conjugation: `ζ_L^k → ζ_L^{L−k}`, rationals fixed. This is an
    /// involutive field automorphism.
    pub fn conjugate(&self) -> Self {
        let l = self.conductor as usize;
        let mut coefficients = vec![BigRational::zero(); l];
        for (k, c) in self.coefficients.iter().enumerate() {
            if !c.is_zero() {
                coefficients[(l - k) % l] = c.clone();
            }
        }
        Self::from_power_basis(self.conductor, coefficients)
    }

    /// Multiplies by an exact rational scalar.
    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        CyclotomicNumber {
            conductor: self.conductor,
            coefficients: self.coefficients.iter().map(|c| c * factor).collect(),
        }
    }

    /// Squared modulus `z · conj(z)` — always a real (totally positive or
    /// zero) field element, rational whenever `z` lies in a CM field, which
    /// covers every value this crate constructs from matrix entries.
    pub fn norm_squared(&self) -> Self {
        self * &self.conjugate()
    }

    /// Double-precision embedding with `ζ_L ↦ exp(2πi/L)`.
    pub fn to_complex_float(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let step = std::f64::consts::TAU / f64::from(self.conductor);
        for (k, c) in self.coefficients.iter().enumerate() {
            if !c.is_zero() {
                let coeff = c.to_f64().expect("rational magnitude fits in f64");
                acc += coeff * Complex64::from_polar(1.0, step * k as f64);
            }
        }
        acc
    }

    fn add_impl(&self, other: &Self) -> Self {
        let target = self.common_conductor(other);
        let a = self.lift(target);
        let b = other.lift(target);
        let coefficients = a
            .coefficients
            .iter()
            .zip(&b.coefficients)
            .map(|(x, y)| x + y)
            .collect();
        // Both summands are reduced, so the sum (same degrees) already is.
        CyclotomicNumber {
            conductor: target,
            coefficients,
        }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let target = self.common_conductor(other);
        let a = self.lift(target);
        let b = other.lift(target);
        let l = target as usize;
        let mut coefficients = vec![BigRational::zero(); l];
        // Sparse cyclic convolution in Q[x]/(x^L − 1); reduction mod Φ_L
        // happens in the constructor.
        for (i, x) in a.coefficients.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coefficients.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let term = x * y;
                coefficients[(i + j) % l] += term;
            }
        }
        Self::from_power_basis(target, coefficients)
    }

    fn neg_impl(&self) -> Self {
        CyclotomicNumber {
            conductor: self.conductor,
            coefficients: self.coefficients.iter().map(|c| -c).collect(),
        }
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coefficients == other.coefficients;
        }
        // Reduced representatives are canonical per conductor, so equality
        // across conductors is coefficient equality after lifting both.
        let target = self.common_conductor(other);
        self.lift(target).coefficients == other.lift(target).coefficients
    }
}

impl Eq for CyclotomicNumber {}

/// The exact field element `ζ_order^exponent` at conductor `order`.
///
/// Negative exponents are accepted and reduced modulo the order.
pub fn root_of_unity(order: u32, exponent: i64) -> Result<CyclotomicNumber, CycloError> {
    if order == 0 {
        return Err(CycloError::InvalidOrder);
    }
    let k = exponent.rem_euclid(i64::from(order)) as usize;
    let mut coefficients = vec![BigRational::zero(); order as usize];
    coefficients[k] = BigRational::one();
    Ok(CyclotomicNumber::from_power_basis(order, coefficients))
}

/// The quadratic Gauss sum `g_p = Σ_{a=0}^{p−1} ζ_p^{a²}` for an odd prime p.
/// Classically `g_p = √p` when p ≡ 1 (mod 4) and `g_p = i·√p` when
/// p ≡ 3 (mod 4), with the positive sign in both cases.
fn gauss_sum(p: u64) -> CyclotomicNumber {
    let mut coefficients = vec![BigRational::zero(); p as usize];
    for a in 0..p {
        let idx = ((a * a) % p) as usize;
        coefficients[idx] += BigRational::one();
    }
    CyclotomicNumber::from_power_basis(p as u32, coefficients)
}

fn sqrt_prime(p: u64) -> CyclotomicNumber {
    if p == 2 {
        // √2 = ζ_8 + ζ_8^{−1} = 2·cos(π/4).
        let z = root_of_unity(8, 1).expect("positive order");
        let zbar = root_of_unity(8, 7).expect("positive order");
        return z + zbar;
    }
    let g = gauss_sum(p);
    if p % 4 == 1 {
        g
    } else {
        // g = i·√p, so divide by i: √p = ζ_4^{−1} · g.
        let minus_i = root_of_unity(4, 3).expect("positive order");
        minus_i * g
    }
}

/// The exact square root of a positive integer, embedding to the positive
/// real root.
///
/// The perfect-square part is extracted rationally; each remaining
/// (squarefree) prime factor contributes a quadratic Gauss sum, so e.g.
/// √66 = √2·√3·√11 lives at conductor lcm(8, 12, 44) = 264.
pub fn sqrt_positive_integer(m: u64) -> Result<CyclotomicNumber, CycloError> {
    if m == 0 {
        return Err(CycloError::InvalidArgument);
    }
    let mut rest = m;
    let mut square_part: u64 = 1;
    let mut squarefree_primes = Vec::new();
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut multiplicity = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                multiplicity += 1;
            }
            square_part *= p.pow(multiplicity / 2);
            if multiplicity % 2 == 1 {
                squarefree_primes.push(p);
            }
        }
        p += 1;
    }
    if rest > 1 {
        squarefree_primes.push(rest);
    }
    let mut result = CyclotomicNumber::from_integer(
        i64::try_from(square_part).expect("square part fits in i64"),
    );
    for prime in squarefree_primes {
        result = result * sqrt_prime(prime);
    }
    Ok(result)
}

// -------------------------------------------------------------------------
// Operators
// -------------------------------------------------------------------------

macro_rules! binary_operator {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl std::ops::$trait<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                self.$impl_fn(&rhs)
            }
        }
        impl std::ops::$trait<&CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                self.$impl_fn(rhs)
            }
        }
        impl std::ops::$trait<CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                self.$impl_fn(&rhs)
            }
        }
        impl std::ops::$trait<&CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                self.$impl_fn(rhs)
            }
        }
    };
}

binary_operator!(Add, add, add_impl);
binary_operator!(Mul, mul, mul_impl);

impl std::ops::Sub<&CyclotomicNumber> for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.add_impl(&rhs.neg_impl())
    }
}

impl std::ops::Sub<CyclotomicNumber> for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
        &self - &rhs
    }
}

impl std::ops::Sub<&CyclotomicNumber> for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        &self - rhs
    }
}

impl std::ops::Sub<CyclotomicNumber> for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
        self - &rhs
    }
}

impl std::ops::Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        self.neg_impl()
    }
}

impl std::ops::Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        self.neg_impl()
    }
}

impl std::ops::AddAssign<&CyclotomicNumber> for CyclotomicNumber {
    fn add_assign(&mut self, rhs: &CyclotomicNumber) {
        *self = self.add_impl(rhs);
    }
}

impl std::ops::AddAssign<CyclotomicNumber> for CyclotomicNumber {
    fn add_assign(&mut self, rhs: CyclotomicNumber) {
        *self = self.add_impl(&rhs);
    }
}

impl std::ops::SubAssign<&CyclotomicNumber> for CyclotomicNumber {
    fn sub_assign(&mut self, rhs: &CyclotomicNumber) {
        *self = &*self - rhs;
    }
}

impl std::ops::MulAssign<&CyclotomicNumber> for CyclotomicNumber {
    fn mul_assign(&mut self, rhs: &CyclotomicNumber) {
        *self = self.mul_impl(rhs);
    }
}

impl std::iter::Sum for CyclotomicNumber {
    fn sum<I: Iterator<Item = CyclotomicNumber>>(iter: I) -> CyclotomicNumber {
        iter.fold(CyclotomicNumber::zero(), |acc, x| acc + x)
    }
}

// -------------------------------------------------------------------------
// Display and serialization
// -------------------------------------------------------------------------

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff = format_rational(&magnitude);
            if k == 0 {
                write!(f, "{coeff}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{coeff}·")?;
                }
                if k == 1 {
                    write!(f, "ζ{}", self.conductor)?;
                } else {
                    write!(f, "ζ{}^{}", self.conductor, k)?;
                }
            }
        }
        Ok(())
    }
}

/// One signed integer in the JSON encoding: a plain number when it fits in
/// an `i64`, a decimal string beyond that (JSON numbers are not reliable
/// carriers for arbitrary precision).
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for JsonInt {
    fn from(value: &BigInt) -> Self {
        match value.to_i64() {
            Some(small) => JsonInt::Small(small),
            None => JsonInt::Big(value.to_string()),
        }
    }
}

impl TryFrom<&JsonInt> for BigInt {
    type Error = CycloError;
    fn try_from(value: &JsonInt) -> Result<Self, CycloError> {
        match value {
            JsonInt::Small(small) => Ok(BigInt::from(*small)),
            JsonInt::Big(text) => text
                .parse()
                .map_err(|_| CycloError::Malformed(format!("bad integer literal {text:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    conductor: u32,
    coefficients: Vec<[JsonInt; 2]>,
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let coefficients = self
            .coefficients
            .iter()
            .map(|c| [JsonInt::from(c.numer()), JsonInt::from(c.denom())])
            .collect();
        CycloRepr {
            conductor: self.conductor,
            coefficients,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = CycloRepr::deserialize(deserializer)?;
        if repr.conductor == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        if repr.coefficients.len() != repr.conductor as usize {
            return Err(D::Error::custom(
                "coefficient count must equal the conductor",
            ));
        }
        let mut coefficients = Vec::with_capacity(repr.coefficients.len());
        for [num, den] in &repr.coefficients {
            let num = BigInt::try_from(num).map_err(D::Error::custom)?;
            let den = BigInt::try_from(den).map_err(D::Error::custom)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            coefficients.push(BigRational::new(num, den));
        }
        Ok(CyclotomicNumber::from_power_basis(
            repr.conductor,
            coefficients,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gamma(k: i64) -> CyclotomicNumber {
        root_of_unity(3, k).unwrap()
    }

    #[test]
    fn cyclotomic_polynomials_match_known_tables() {
        let as_i64 = |poly: Vec<BigInt>| -> Vec<i64> {
            poly.iter().map(|c| c.to_i64().unwrap()).collect()
        };
        assert_eq!(as_i64(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(3)), vec![1, 1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(8)), vec![1, 0, 0, 0, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn cyclotomic_polynomial_degree_is_the_totient() {
        // φ(264) = φ(8)·φ(3)·φ(11) = 4·2·10 = 80.
        assert_eq!(cyclotomic_polynomial(264).len() - 1, 80);
        // φ(105) = 48; Φ_105 is the first cyclotomic polynomial with a
        // coefficient of magnitude 2 (at x^7 and x^41).
        let phi105 = cyclotomic_polynomial(105);
        assert_eq!(phi105.len() - 1, 48);
        assert_eq!(phi105[7], BigInt::from(-2));
    }

    #[test]
    fn divisor_product_reconstitutes_x_pow_n_minus_one() {
        for n in [6u32, 12, 24] {
            let mut product = vec![BigInt::one()];
            for d in 1..=n {
                if n % d == 0 {
                    let phi = cyclotomic_polynomial(d);
                    let mut next = vec![BigInt::zero(); product.len() + phi.len() - 1];
                    for (i, a) in product.iter().enumerate() {
                        for (j, b) in phi.iter().enumerate() {
                            next[i + j] += a * b;
                        }
                    }
                    product = next;
                }
            }
            let mut expected = vec![BigInt::zero(); n as usize + 1];
            expected[0] = -BigInt::one();
            expected[n as usize] = BigInt::one();
            assert_eq!(product, expected, "∏ Φ_d ≠ x^{n} − 1");
        }
    }

    #[test]
    fn root_of_unity_identity_case() {
        assert!(root_of_unity(1, 0).unwrap().is_one());
        assert_eq!(root_of_unity(0, 0), Err(CycloError::InvalidOrder));
    }

    #[test]
    fn third_roots_satisfy_the_cyclotomic_relation() {
        // 1 + Γ + Γ² = 0, hence Γ + Γ² = −1.
        let sum = gamma(1) + gamma(2);
        assert_eq!(sum, CyclotomicNumber::from_integer(-1));
        // Γ·Γ² = Γ³ = 1.
        assert!((gamma(1) * gamma(2)).is_one());
        let full = CyclotomicNumber::one() + gamma(1) + gamma(2);
        assert!(full.is_zero());
    }

    #[test]
    fn every_root_power_collapses_to_one() {
        for order in 1..=24u32 {
            for exponent in 0..order {
                let z = root_of_unity(order, i64::from(exponent)).unwrap();
                let mut power = CyclotomicNumber::one();
                for _ in 0..order {
                    power *= &z;
                }
                assert!(power.is_one(), "ζ_{order}^{exponent} to the {order} ≠ 1");
            }
        }
    }

    #[test]
    fn conjugation_swaps_third_roots() {
        assert_eq!(gamma(1).conjugate(), gamma(2));
        assert_eq!(gamma(2).conjugate(), gamma(1));
        assert_eq!(gamma(1).conjugate().conjugate(), gamma(1));
    }

    #[test]
    fn squared_moduli_of_the_diagonal_entries_are_three() {
        // |2Γ+1|² = (2Γ+1)(2Γ²+1) = 4Γ³ + 2Γ + 2Γ² + 1 = 4 − 2 + 1 = 3,
        // using Γ³ = 1 and Γ + Γ² = −1. Same for |2+Γ²|².
        let two = CyclotomicNumber::from_integer(2);
        let first = &two * &gamma(1) + CyclotomicNumber::one();
        assert_eq!(first.norm_squared(), CyclotomicNumber::from_integer(3));
        let second = two + gamma(2);
        assert_eq!(second.norm_squared(), CyclotomicNumber::from_integer(3));
    }

    #[test]
    fn conjugate_matches_the_expanded_form() {
        // conj(2Γ+1) = 2Γ² + 1, so (1 + 2Γ²) − conj(2Γ + 1) = 0.
        let lhs = CyclotomicNumber::one() + CyclotomicNumber::from_integer(2) * gamma(2);
        let rhs = (CyclotomicNumber::from_integer(2) * gamma(1) + CyclotomicNumber::one())
            .conjugate();
        assert!((lhs - rhs).is_zero());
    }

    #[test]
    fn zero_testing_distinguishes_distinct_roots() {
        assert!(!(gamma(1) - gamma(2)).is_zero());
        let z = root_of_unity(12, 5).unwrap();
        assert!((&z - &z).is_zero());
    }

    #[test]
    fn square_roots_square_back_exactly() {
        for m in 1..=100u64 {
            let s = sqrt_positive_integer(m).unwrap();
            let square = &s * &s;
            assert_eq!(
                square,
                CyclotomicNumber::from_integer(m as i64),
                "√{m} squared"
            );
        }
        assert_eq!(sqrt_positive_integer(0), Err(CycloError::InvalidArgument));
    }

    #[test]
    fn square_roots_embed_to_the_positive_real_root() {
        for m in [2u64, 3, 5, 6, 7, 11, 22, 33, 66] {
            let value = sqrt_positive_integer(m).unwrap().to_complex_float();
            assert!(
                (value.re - (m as f64).sqrt()).abs() < 1e-9,
                "float(√{m}) = {value}"
            );
            assert!(value.im.abs() < 1e-9, "float(√{m}) drifted off the real axis");
        }
        let root3 = sqrt_positive_integer(3).unwrap().to_complex_float();
        assert!((root3.re - 1.732_050_8).abs() < 1e-7);
    }

    #[test]
    fn perfect_squares_stay_rational() {
        assert_eq!(
            sqrt_positive_integer(4).unwrap(),
            CyclotomicNumber::from_integer(2)
        );
        assert!(sqrt_positive_integer(1).unwrap().is_one());
        assert_eq!(
            sqrt_positive_integer(36).unwrap(),
            CyclotomicNumber::from_integer(6)
        );
        // 12 = 4·3 → √12 = 2√3.
        let lhs = sqrt_positive_integer(12).unwrap();
        let rhs = CyclotomicNumber::from_integer(2) * sqrt_positive_integer(3).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn worst_case_conductor_is_264() {
        let root66 = sqrt_positive_integer(66).unwrap();
        assert_eq!(root66.conductor(), 264);
        assert_eq!(
            &root66 * &root66,
            CyclotomicNumber::from_integer(66)
        );
    }

    #[test]
    fn float_embedding_matches_library_trigonometry() {
        let i = root_of_unity(4, 1).unwrap().to_complex_float();
        assert!((i.re).abs() < 1e-12 && (i.im - 1.0).abs() < 1e-12);
        let g = gamma(1).to_complex_float();
        assert!((g.re + 0.5).abs() < 1e-12);
        assert!((g.im - 0.866_025_403_784_438_6).abs() < 1e-9);
        let one = CyclotomicNumber::one().to_complex_float();
        assert!((one.re - 1.0).abs() < 1e-12 && one.im.abs() < 1e-12);
    }

    #[test]
    fn mixed_conductor_arithmetic_lifts_to_the_lcm() {
        let z3 = gamma(1);
        let z4 = root_of_unity(4, 1).unwrap();
        let product = &z3 * &z4;
        assert_eq!(product.conductor(), 12);
        // ζ_3·ζ_4 = ζ_12^{4+3} = ζ_12^7.
        assert_eq!(product, root_of_unity(12, 7).unwrap());
        let ones_agree =
            root_of_unity(3, 0).unwrap() == root_of_unity(4, 0).unwrap();
        assert!(ones_agree, "1 must be equal to itself at any conductor");
    }

    #[test]
    fn reduced_roots_of_unity_cancel_common_factors() {
        let r = RootOfUnity::new(12, 4).unwrap();
        assert_eq!((r.order(), r.exponent()), (3, 1));
        assert_eq!(RootOfUnity::new(12, 4).unwrap(), RootOfUnity::new(3, 1).unwrap());
        assert_eq!(RootOfUnity::new(12, -1).unwrap().exponent(), 11);
        assert_eq!(RootOfUnity::new(0, 1), Err(CycloError::InvalidOrder));
        assert_eq!(RootOfUnity::new(12, 24).unwrap(), RootOfUnity::one());
    }

    #[test]
    fn root_of_unity_algebra_is_consistent_with_the_field() {
        let a = RootOfUnity::new(12, 5).unwrap();
        let b = RootOfUnity::new(8, 3).unwrap();
        assert_eq!(
            a.mul(&b).to_cyclotomic(),
            a.to_cyclotomic() * b.to_cyclotomic()
        );
        assert_eq!(a.pow(-1), a.conjugate());
        assert_eq!(a.conjugate().to_cyclotomic(), a.to_cyclotomic().conjugate());
        assert!(a.pow(12).to_cyclotomic().is_one());
    }

    #[test]
    fn display_renders_sums_of_basis_terms() {
        let value = CyclotomicNumber::from_integer(2) * gamma(1) + CyclotomicNumber::one();
        assert_eq!(value.to_string(), "1 + 2·ζ3");
        assert_eq!(CyclotomicNumber::zero().to_string(), "0");
        assert_eq!(CyclotomicNumber::from_ratio(-1, 2).to_string(), "-1/2");
        assert_eq!(RootOfUnity::new(12, 5).unwrap().to_string(), "ζ12^5");
    }

    #[test]
    fn serialization_round_trips_and_is_stable() {
        let value = sqrt_positive_integer(3).unwrap().scale(&BigRational::new(
            BigInt::from(1),
            BigInt::from(3),
        ));
        let encoded = serde_json::to_string(&value).unwrap();
        let decoded: CyclotomicNumber = serde_json::from_str(&encoded).unwrap();
        assert_eq!(decoded, value);
        let simple = serde_json::to_string(&root_of_unity(3, 1).unwrap()).unwrap();
        assert_eq!(
            simple,
            r#"{"conductor":3,"coefficients":[[0,1],[1,1],[0,1]]}"#
        );
    }

    #[test]
    fn deserialization_rejects_malformed_values() {
        let bad_len = r#"{"conductor":3,"coefficients":[[0,1],[1,1]]}"#;
        assert!(serde_json::from_str::<CyclotomicNumber>(bad_len).is_err());
        let bad_conductor = r#"{"conductor":0,"coefficients":[]}"#;
        assert!(serde_json::from_str::<CyclotomicNumber>(bad_conductor).is_err());
        let zero_den = r#"{"conductor":1,"coefficients":[[1,0]]}"#;
        assert!(serde_json::from_str::<CyclotomicNumber>(zero_den).is_err());
    }
}
