//! Qudit state vectors, gate matrices, and the concrete state families and
//! transforms under study.
//!
//! Amplitudes and matrix entries are [`PhasePolynomial`] scalars, so a single
//! computation covers *all* phase angles at once. The ubiquitous `1/√d`
//! normalization factors are carried symbolically as the positive integer
//! `d` and only materialized — through [`sqrt_positive_integer`] — when an
//! inner product or application actually combines them. That keeps purely
//! qutrit computations inside `Q(ζ_12)` even though `1/√66` eventually drags
//! the worst case up to conductor 264.
//!
//! The [`float`] submodule mirrors every constructor with a direct
//! double-precision implementation (built from `cos`/`sin`/`exp`, not by
//! evaluating the exact amplitudes), providing an independent backend the
//! verification layer cross-checks against.

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::cyclo::{root_of_unity, sqrt_positive_integer, CyclotomicNumber};
use crate::phasepoly::{PhasePolynomial, PhaseVariable};

/// Errors raised by state and gate constructors and combinators.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum QStateError {
    /// Two objects that must share a dimension do not.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    /// A dimension outside the supported range was requested.
    #[error("invalid dimension {0}")]
    InvalidDimension(usize),
    /// A normalization denominator of zero was supplied.
    #[error("normalization denominator must be positive")]
    InvalidNormalization,
    /// A family constructor received the wrong number of phase variables.
    #[error("expected {expected} phase variables, got {got}")]
    PhaseArity { expected: usize, got: usize },
    /// A linear combination received mismatched coefficient/state counts.
    #[error("expected {expected} coefficients, got {got}")]
    CoefficientArity { expected: usize, got: usize },
    /// A float-backend parameter lies outside its documented range.
    #[error("parameter {name} = {value} outside {range}")]
    ParameterRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
}

/// The exact scalar `1/√d`, as `√d / d`.
fn inverse_sqrt(d: u64) -> CyclotomicNumber {
    let root = sqrt_positive_integer(d).expect("normalization denominator is positive");
    root.scale(&BigRational::new(1.into(), d.into()))
}

// -------------------------------------------------------------------------
// State vectors
// -------------------------------------------------------------------------

/// A pure qudit state `(1/√d)·(a_0, …, a_{n−1})` with phase-polynomial
/// amplitudes `a_k` and the normalization factor kept as the integer `d`.
#[derive(Clone, Debug, Serialize)]
pub struct StateVector {
    dimension: usize,
    normalization_d: u64,
    amplitudes: Vec<PhasePolynomial>,
}

impl StateVector {
    /// Builds a state from raw amplitudes and the normalization denominator
    /// `d` (the state is the amplitude vector times `1/√d`).
    pub fn new(
        amplitudes: Vec<PhasePolynomial>,
        normalization_d: u64,
    ) -> Result<Self, QStateError> {
        if amplitudes.is_empty() {
            return Err(QStateError::InvalidDimension(0));
        }
        if normalization_d == 0 {
            return Err(QStateError::InvalidNormalization);
        }
        Ok(StateVector {
            dimension: amplitudes.len(),
            normalization_d,
            amplitudes,
        })
    }

    /// The computational basis state `|k⟩` of the given dimension.
    pub fn basis_state(dimension: usize, k: usize) -> Result<Self, QStateError> {
        if dimension == 0 {
            return Err(QStateError::InvalidDimension(0));
        }
        assert!(k < dimension, "basis index out of range");
        let amplitudes = (0..dimension)
            .map(|i| {
                if i == k {
                    PhasePolynomial::one()
                } else {
                    PhasePolynomial::zero()
                }
            })
            .collect();
        Self::new(amplitudes, 1)
    }

    /// Number of amplitudes.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// The raw (un-normalized) amplitudes.
    pub fn amplitudes(&self) -> &[PhasePolynomial] {
        &self.amplitudes
    }

    /// One raw amplitude.
    pub fn amplitude(&self, k: usize) -> &PhasePolynomial {
        &self.amplitudes[k]
    }

    /// The `d` in the state's `1/√d` normalization factor.
    pub fn normalization_d(&self) -> u64 {
        self.normalization_d
    }

    /// `Σ_k c_k·s_k` scaled by an extra `1/√extra_d`. All states must share
    /// dimension and normalization; the result's denominator is their common
    /// `d` times `extra_d`. This is how prescribed actions like
    /// `(ψ_r + i·ψ_{r+1})/√2` are assembled.
    pub fn linear_combination(
        coefficients: &[CyclotomicNumber],
        states: &[&StateVector],
        extra_d: u64,
    ) -> Result<Self, QStateError> {
        if coefficients.len() != states.len() {
            return Err(QStateError::CoefficientArity {
                expected: states.len(),
                got: coefficients.len(),
            });
        }
        let first = states.first().ok_or(QStateError::InvalidDimension(0))?;
        for s in states {
            if s.dimension != first.dimension {
                return Err(QStateError::DimensionMismatch {
                    left: first.dimension,
                    right: s.dimension,
                });
            }
            if s.normalization_d != first.normalization_d {
                return Err(QStateError::InvalidNormalization);
            }
        }
        if extra_d == 0 {
            return Err(QStateError::InvalidNormalization);
        }
        let amplitudes = (0..first.dimension)
            .map(|k| {
                coefficients
                    .iter()
                    .zip(states)
                    .map(|(c, s)| s.amplitudes[k].scale(c))
                    .sum()
            })
            .collect();
        Self::new(amplitudes, first.normalization_d * extra_d)
    }

    /// Componentwise difference of the raw amplitudes against another state
    /// with the *same* normalization denominator. A zero residual vector
    /// means the states are identical; any nonzero component is an exact
    /// witness (off by the common `1/√d` factor, which cannot vanish).
    pub fn residual_against(&self, other: &Self) -> Result<Vec<PhasePolynomial>, QStateError> {
        if self.dimension != other.dimension {
            return Err(QStateError::DimensionMismatch {
                left: self.dimension,
                right: other.dimension,
            });
        }
        if self.normalization_d != other.normalization_d {
            return Err(QStateError::InvalidNormalization);
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a - b)
            .collect())
    }

    /// `⟨self|self⟩` — identically 1 for every constructor in this module,
    /// which the verification layer checks rather than assumes.
    pub fn norm_squared(&self) -> PhasePolynomial {
        inner_product(self, self).expect("dimensions trivially agree")
    }

    /// Evaluates the state numerically at an angle assignment, folding in
    /// the `1/√d` factor. Used by backend-coherence checks.
    pub fn evaluate(
        &self,
        assignment: &std::collections::BTreeMap<PhaseVariable, f64>,
    ) -> Result<Vec<Complex64>, crate::phasepoly::PhaseError> {
        let scale = 1.0 / (self.normalization_d as f64).sqrt();
        self.amplitudes
            .iter()
            .map(|a| a.evaluate(assignment).map(|z| z * scale))
            .collect()
    }
}

impl PartialEq for StateVector {
    /// Mathematical equality: `(1/√d_a)·a = (1/√d_b)·b` iff
    /// `√d_b·a_k − √d_a·b_k = 0` for every component (cross-multiplied to
    /// stay division-free).
    fn eq(&self, other: &Self) -> bool {
        if self.dimension != other.dimension {
            return false;
        }
        let sa = PhasePolynomial::constant(
            sqrt_positive_integer(self.normalization_d).expect("positive"),
        );
        let sb = PhasePolynomial::constant(
            sqrt_positive_integer(other.normalization_d).expect("positive"),
        );
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .all(|(a, b)| (a * &sb - b * &sa).is_zero())
    }
}

impl Eq for StateVector {}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.normalization_d != 1 {
            write!(f, "(1/√{})·", self.normalization_d)?;
        }
        write!(f, "(")?;
        for (k, a) in self.amplitudes.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// `⟨a|b⟩ = (1/√(d_a·d_b))·Σ_k conj(a_k)·b_k`, conjugate-linear in the first
/// argument, with the normalization materialized exactly (perfect-square
/// products of denominators stay rational and never grow the conductor).
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<PhasePolynomial, QStateError> {
    if a.dimension != b.dimension {
        return Err(QStateError::DimensionMismatch {
            left: a.dimension,
            right: b.dimension,
        });
    }
    let sum: PhasePolynomial = a
        .amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| x.conjugate() * y)
        .sum();
    Ok(sum.scale(&inverse_sqrt(a.normalization_d * b.normalization_d)))
}

// -------------------------------------------------------------------------
// Gate matrices
// -------------------------------------------------------------------------

/// A square gate `(1/√d)·(E_{ij})` with phase-polynomial entries and the
/// normalization factor carried as the integer `d`.
#[derive(Clone, Debug, Serialize)]
pub struct GateMatrix {
    dimension: usize,
    normalization_d: u64,
    entries: Vec<Vec<PhasePolynomial>>,
}

impl GateMatrix {
    /// Builds a gate from raw entries (row-major) and the normalization
    /// denominator `d`.
    pub fn new(
        entries: Vec<Vec<PhasePolynomial>>,
        normalization_d: u64,
    ) -> Result<Self, QStateError> {
        let dimension = entries.len();
        if dimension == 0 {
            return Err(QStateError::InvalidDimension(0));
        }
        if normalization_d == 0 {
            return Err(QStateError::InvalidNormalization);
        }
        for row in &entries {
            if row.len() != dimension {
                return Err(QStateError::DimensionMismatch {
                    left: dimension,
                    right: row.len(),
                });
            }
        }
        Ok(GateMatrix {
            dimension,
            normalization_d,
            entries,
        })
    }

    /// The identity gate.
    pub fn identity(dimension: usize) -> Result<Self, QStateError> {
        if dimension == 0 {
            return Err(QStateError::InvalidDimension(0));
        }
        let entries = (0..dimension)
            .map(|i| {
                (0..dimension)
                    .map(|j| {
                        if i == j {
                            PhasePolynomial::one()
                        } else {
                            PhasePolynomial::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(entries, 1)
    }

    /// A diagonal gate `(1/√d)·diag(values)`.
    pub fn diagonal(values: Vec<PhasePolynomial>, normalization_d: u64) -> Result<Self, QStateError> {
        let dimension = values.len();
        if dimension == 0 {
            return Err(QStateError::InvalidDimension(0));
        }
        let entries = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                let mut row = vec![PhasePolynomial::zero(); dimension];
                row[i] = v;
                row
            })
            .collect();
        Self::new(entries, normalization_d)
    }

    /// Matrix dimension n.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// The raw (un-normalized) entries, row-major.
    pub fn entries(&self) -> &[Vec<PhasePolynomial>] {
        &self.entries
    }

    /// One raw entry.
    pub fn entry(&self, row: usize, col: usize) -> &PhasePolynomial {
        &self.entries[row][col]
    }

    /// The `d` in the gate's `1/√d` normalization factor.
    pub fn normalization_d(&self) -> u64 {
        self.normalization_d
    }

    /// Conjugate transpose (an involution).
    pub fn dagger(&self) -> Self {
        let entries = (0..self.dimension)
            .map(|i| {
                (0..self.dimension)
                    .map(|j| self.entries[j][i].conjugate())
                    .collect()
            })
            .collect();
        GateMatrix {
            dimension: self.dimension,
            normalization_d: self.normalization_d,
            entries,
        }
    }

    /// Computes `U†U − I` exactly and reports whether every entry vanishes.
    /// The two `1/√d` factors combine to the rational `1/d`, so this check
    /// never grows the conductor.
    pub fn is_unitary(&self) -> (bool, Vec<Vec<PhasePolynomial>>) {
        let d = CyclotomicNumber::from_ratio(
            1,
            i64::try_from(self.normalization_d).expect("denominator fits in i64"),
        );
        let residual: Vec<Vec<PhasePolynomial>> = (0..self.dimension)
            .map(|i| {
                (0..self.dimension)
                    .map(|j| {
                        let sum: PhasePolynomial = (0..self.dimension)
                            .map(|k| self.entries[k][i].conjugate() * &self.entries[k][j])
                            .sum();
                        let scaled = sum.scale(&d);
                        if i == j {
                            scaled - PhasePolynomial::one()
                        } else {
                            scaled
                        }
                    })
                    .collect()
            })
            .collect();
        let unitary = residual
            .iter()
            .all(|row| row.iter().all(PhasePolynomial::is_zero));
        (unitary, residual)
    }

    /// Exact matrix-vector application; the result's denominator is the
    /// product of the gate's and the state's.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector, QStateError> {
        if self.dimension != state.dimension {
            return Err(QStateError::DimensionMismatch {
                left: self.dimension,
                right: state.dimension,
            });
        }
        let amplitudes = (0..self.dimension)
            .map(|i| {
                self.entries[i]
                    .iter()
                    .zip(&state.amplitudes)
                    .map(|(u, v)| u * v)
                    .sum()
            })
            .collect();
        StateVector::new(amplitudes, self.normalization_d * state.normalization_d)
    }
}

impl PartialEq for GateMatrix {
    /// Mathematical equality via the same cross-multiplied, division-free
    /// comparison as [`StateVector`].
    fn eq(&self, other: &Self) -> bool {
        if self.dimension != other.dimension {
            return false;
        }
        let sa = PhasePolynomial::constant(
            sqrt_positive_integer(self.normalization_d).expect("positive"),
        );
        let sb = PhasePolynomial::constant(
            sqrt_positive_integer(other.normalization_d).expect("positive"),
        );
        self.entries
            .iter()
            .zip(&other.entries)
            .all(|(ra, rb)| {
                ra.iter()
                    .zip(rb)
                    .all(|(a, b)| (a * &sb - b * &sa).is_zero())
            })
    }
}

impl Eq for GateMatrix {}

impl fmt::Display for GateMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.normalization_d != 1 {
            write!(f, "(1/√{})·", self.normalization_d)?;
        }
        write!(f, "[")?;
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

// -------------------------------------------------------------------------
// Ensemble families
// -------------------------------------------------------------------------

/// An ordered family of same-dimension states, by intention mutually
/// orthonormal — a property the verification layer establishes through
/// [`EnsembleFamily::gram`] rather than assuming.
#[derive(Clone, Debug, Serialize)]
pub struct EnsembleFamily {
    label: String,
    states: Vec<StateVector>,
}

impl EnsembleFamily {
    /// Builds a family; all members must share a dimension.
    pub fn new(label: impl Into<String>, states: Vec<StateVector>) -> Result<Self, QStateError> {
        let first = states.first().ok_or(QStateError::InvalidDimension(0))?;
        let dimension = first.dimension;
        for s in &states {
            if s.dimension != dimension {
                return Err(QStateError::DimensionMismatch {
                    left: dimension,
                    right: s.dimension,
                });
            }
        }
        Ok(EnsembleFamily {
            label: label.into(),
            states,
        })
    }

    /// The family's label.
    pub fn label(&self) -> &str {
        &self.label
    }

    /// The member states, in order.
    pub fn states(&self) -> &[StateVector] {
        &self.states
    }

    /// One member state.
    pub fn state(&self, index: usize) -> &StateVector {
        &self.states[index]
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.states.len()
    }

    /// True iff the family has no members (unreachable via `new`).
    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Common dimension of the members.
    pub fn dimension(&self) -> usize {
        self.states[0].dimension
    }

    /// The matrix of pairwise inner products `⟨s_i|s_j⟩`. The family is
    /// orthonormal iff this is the identity, entrywise and exactly.
    pub fn gram(&self) -> Vec<Vec<PhasePolynomial>> {
        self.states
            .iter()
            .map(|a| {
                self.states
                    .iter()
                    .map(|b| inner_product(a, b).expect("family members share a dimension"))
                    .collect()
            })
            .collect()
    }

    /// True iff `gram()` equals the identity exactly.
    pub fn is_orthonormal(&self) -> bool {
        self.gram().iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, g)| {
                if i == j {
                    (g - &PhasePolynomial::one()).is_zero()
                } else {
                    g.is_zero()
                }
            })
        })
    }
}

// -------------------------------------------------------------------------
// Concrete constructors
// -------------------------------------------------------------------------

/// The discrete-Fourier-transform gate: entry `(k, j) = Γ^{jk}` with
/// `Γ = e^{2πi/n}`, normalization `1/√n`. For n = 2 this is the Hadamard
/// gate.
pub fn dft_matrix(n: usize) -> Result<GateMatrix, QStateError> {
    if n == 0 {
        return Err(QStateError::InvalidDimension(0));
    }
    let order = u32::try_from(n).map_err(|_| QStateError::InvalidDimension(n))?;
    let entries = (0..n)
        .map(|k| {
            (0..n)
                .map(|j| {
                    let exponent = ((j * k) % n) as i64;
                    PhasePolynomial::constant(
                        root_of_unity(order, exponent).expect("n is positive"),
                    )
                })
                .collect()
        })
        .collect();
    GateMatrix::new(entries, n as u64)
}

/// The equatorial family of dimension n: member r has amplitudes
/// `(1/√n)·Γ^{rk}·x_k` where `x_0 = 1` and `x_k` is the k-th formal phase.
///
/// Passing an empty variable list sets every `x_k = 1`, which reproduces the
/// plain qudit family `|ψ_r⟩ = (1/√n)·Σ_k Γ^{rk}|k⟩`; otherwise exactly
/// `n − 1` variables must be supplied. Orthonormality is identical in the
/// phases: the geometric sum `Σ_k Γ^{(s−r)k}` vanishes for `s ≠ r` and the
/// unimodular `x_k` factors cancel against their conjugates.
pub fn equatorial_family(
    n: usize,
    phase_vars: &[PhaseVariable],
) -> Result<EnsembleFamily, QStateError> {
    if n < 2 {
        return Err(QStateError::InvalidDimension(n));
    }
    if !phase_vars.is_empty() && phase_vars.len() != n - 1 {
        return Err(QStateError::PhaseArity {
            expected: n - 1,
            got: phase_vars.len(),
        });
    }
    let order = u32::try_from(n).map_err(|_| QStateError::InvalidDimension(n))?;
    let phase = |k: usize| -> PhasePolynomial {
        if k == 0 || phase_vars.is_empty() {
            PhasePolynomial::one()
        } else {
            PhasePolynomial::variable(&phase_vars[k - 1])
        }
    };
    let states = (0..n)
        .map(|r| {
            let amplitudes = (0..n)
                .map(|k| {
                    let root = root_of_unity(order, ((r * k) % n) as i64).expect("n is positive");
                    phase(k).scale(&root)
                })
                .collect();
            StateVector::new(amplitudes, n as u64)
        })
        .collect::<Result<Vec<_>, _>>()?;
    EnsembleFamily::new("equatorial", states)
}

/// The two orthonormal qutrit triples used to defeat the general transform:
/// the unequal-modulus v-family
/// `{(1, 2x_{δk}, x_{φk})/√6, (1, x_{δk}, −3x_{φk})/√11, (7, −4x_{δk}, x_{φk})/√66}`
/// and the equatorial w-family
/// `{(1, x_{δj}, x_{φj})/√3, (1, Γx_{δj}, Γ²x_{φj})/√3, (1, Γ²x_{δj}, Γx_{φj})/√3}`.
pub fn counterexample_families() -> (EnsembleFamily, EnsembleFamily) {
    let delta_k = PhaseVariable::new("delta_k");
    let phi_k = PhaseVariable::new("phi_k");
    let x = PhasePolynomial::variable(&delta_k);
    let y = PhasePolynomial::variable(&phi_k);
    let int = |n: i64| CyclotomicNumber::from_integer(n);

    let v0 = StateVector::new(
        vec![PhasePolynomial::one(), x.scale(&int(2)), y.clone()],
        6,
    )
    .expect("static dimensions");
    let v1 = StateVector::new(
        vec![PhasePolynomial::one(), x.clone(), y.scale(&int(-3))],
        11,
    )
    .expect("static dimensions");
    let v2 = StateVector::new(
        vec![PhasePolynomial::from_integer(7), x.scale(&int(-4)), y],
        66,
    )
    .expect("static dimensions");
    let v_family = EnsembleFamily::new("v-family", vec![v0, v1, v2]).expect("static dimensions");

    let w_family = equatorial_family(
        3,
        &[PhaseVariable::new("delta_j"), PhaseVariable::new("phi_j")],
    )
    .expect("static arity")
    ;
    let w_family = EnsembleFamily::new("w-family", w_family.states().to_vec())
        .expect("static dimensions");
    (v_family, w_family)
}

/// Which of the two coefficient solutions a diagonal equatorial-transform
/// gate is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EquatorialVariant {
    /// The solution α = β = Γ, giving `diag(2Γ+1, 2+Γ², 2+Γ²)/√3`.
    Gamma,
    /// The solution α = β = Γ², giving `diag(1+2Γ², 2+Γ, 2+Γ)/√3`.
    GammaSquared,
}

/// The diagonal qutrit gate realizing the transform-like action on the
/// equatorial family for the chosen coefficient solution.
pub fn equatorial_dft_gate(variant: EquatorialVariant) -> GateMatrix {
    let gamma = root_of_unity(3, 1).expect("positive order");
    let gamma2 = root_of_unity(3, 2).expect("positive order");
    let two = CyclotomicNumber::from_integer(2);
    let one = CyclotomicNumber::one();
    let (head, tail) = match variant {
        // 2Γ + 1 and 2 + Γ².
        EquatorialVariant::Gamma => (&two * &gamma + &one, &two + &gamma2),
        // 1 + 2Γ² and 2 + Γ.
        EquatorialVariant::GammaSquared => (&two * &gamma2 + &one, &two + &gamma),
    };
    GateMatrix::diagonal(
        vec![
            PhasePolynomial::constant(head),
            PhasePolynomial::constant(tail.clone()),
            PhasePolynomial::constant(tail),
        ],
        3,
    )
    .expect("static dimensions")
}

/// The qubit gate `(1/√2)·diag(1+i, 1−i)` that maps the equatorial qubit
/// `ψ = (|0⟩ + x_φ|1⟩)/√2` to `(ψ + i·ψ̄)/√2`.
pub fn qubit_equatorial_gate() -> GateMatrix {
    let i = root_of_unity(4, 1).expect("positive order");
    let one = CyclotomicNumber::one();
    GateMatrix::diagonal(
        vec![
            PhasePolynomial::constant(&one + &i),
            PhasePolynomial::constant(&one - &i),
        ],
        2,
    )
    .expect("static dimensions")
}

/// The pairwise combination gate `(1/√2)·diag(1 + i·Γ^k)` for dimension `n`,
/// with `Γ = e^{2πi/n}`. Its prescribed action sends `ψ_r` to
/// `(ψ_r + i·ψ_{r+1 mod n})/√2` on the plain equatorial family.
pub fn pairwise_gate(n: usize) -> Result<GateMatrix, QStateError> {
    if n < 2 {
        return Err(QStateError::InvalidDimension(n));
    }
    let order = u32::try_from(n).map_err(|_| QStateError::InvalidDimension(n))?;
    let i = root_of_unity(4, 1).expect("positive order");
    let one = CyclotomicNumber::one();
    let values = (0..n)
        .map(|k| {
            let root = root_of_unity(order, k as i64).expect("n is positive");
            PhasePolynomial::constant(&one + &i * root)
        })
        .collect();
    GateMatrix::diagonal(values, 2)
}

// -------------------------------------------------------------------------
// General (non-equatorial) qutrit — float backend only
// -------------------------------------------------------------------------

/// Parameters of the most general single-qutrit pure state
/// `(cos γ1, sin γ1 cos γ2 e^{iδ}, sin γ1 sin γ2 e^{iφ})`, with
/// `γ1, γ2 ∈ [0, π/2]` and `δ, φ ∈ [0, 2π)`.
///
/// The trigonometric moduli have no exact cyclotomic form, so this family
/// exists only in the float backend.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GeneralQutritParams {
    gamma1: f64,
    gamma2: f64,
    delta: f64,
    phi: f64,
}

impl GeneralQutritParams {
    /// Validates the parameter ranges.
    pub fn new(gamma1: f64, gamma2: f64, delta: f64, phi: f64) -> Result<Self, QStateError> {
        let half_pi = std::f64::consts::FRAC_PI_2;
        let tau = std::f64::consts::TAU;
        let check_gamma = |name: &'static str, value: f64| {
            if (0.0..=half_pi).contains(&value) {
                Ok(())
            } else {
                Err(QStateError::ParameterRange {
                    name,
                    value,
                    range: "[0, π/2]",
                })
            }
        };
        check_gamma("gamma1", gamma1)?;
        check_gamma("gamma2", gamma2)?;
        let check_angle = |name: &'static str, value: f64| {
            if (0.0..tau).contains(&value) {
                Ok(())
            } else {
                Err(QStateError::ParameterRange {
                    name,
                    value,
                    range: "[0, 2π)",
                })
            }
        };
        check_angle("delta", delta)?;
        check_angle("phi", phi)?;
        Ok(GeneralQutritParams {
            gamma1,
            gamma2,
            delta,
            phi,
        })
    }
}

/// The general qutrit as a unit-norm complex 3-vector (float backend).
pub fn general_qutrit(p: &GeneralQutritParams) -> [Complex64; 3] {
    [
        Complex64::new(p.gamma1.cos(), 0.0),
        p.gamma1.sin() * p.gamma2.cos() * Complex64::from_polar(1.0, p.delta),
        p.gamma1.sin() * p.gamma2.sin() * Complex64::from_polar(1.0, p.phi),
    ]
}

// -------------------------------------------------------------------------
// Independent float backend
// -------------------------------------------------------------------------

/// Direct double-precision twins of the exact constructors.
///
/// Everything here is built from `cos`/`sin`/`from_polar` on raw angles —
/// deliberately *not* by evaluating the exact amplitudes — so agreement
/// between the two backends is a genuine cross-check rather than a tautology.
pub mod float {
    use num_complex::Complex64;
    use std::f64::consts::TAU;

    use super::EquatorialVariant;

    /// A state as a plain complex vector, normalization folded in.
    #[derive(Clone, Debug)]
    pub struct FloatState {
        pub amplitudes: Vec<Complex64>,
    }

    /// A gate as a plain complex matrix, normalization folded in.
    #[derive(Clone, Debug)]
    pub struct FloatMatrix {
        pub entries: Vec<Vec<Complex64>>,
    }

    /// `⟨a|b⟩`, conjugate-linear in the first argument.
    pub fn inner_product(a: &FloatState, b: &FloatState) -> Complex64 {
        assert_eq!(a.amplitudes.len(), b.amplitudes.len());
        a.amplitudes
            .iter()
            .zip(&b.amplitudes)
            .map(|(x, y)| x.conj() * y)
            .sum()
    }

    /// Matrix-vector application.
    pub fn apply(m: &FloatMatrix, v: &FloatState) -> FloatState {
        let amplitudes = m
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&v.amplitudes)
                    .map(|(u, x)| u * x)
                    .sum()
            })
            .collect();
        FloatState { amplitudes }
    }

    /// `U†U − I` as a float matrix.
    pub fn unitarity_residual(m: &FloatMatrix) -> Vec<Vec<Complex64>> {
        let n = m.entries.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let sum: Complex64 = (0..n)
                            .map(|k| m.entries[k][i].conj() * m.entries[k][j])
                            .sum();
                        if i == j {
                            sum - 1.0
                        } else {
                            sum
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// The transform gate with entries `exp(2πi·jk/n)/√n`.
    pub fn dft_matrix(n: usize) -> FloatMatrix {
        let scale = 1.0 / (n as f64).sqrt();
        let entries = (0..n)
            .map(|k| {
                (0..n)
                    .map(|j| scale * Complex64::from_polar(1.0, TAU * (j * k % n) as f64 / n as f64))
                    .collect()
            })
            .collect();
        FloatMatrix { entries }
    }

    /// Member r of the equatorial family at explicit phase angles
    /// (`phases.len()` must be `n − 1`, or 0 for all-zero phases).
    pub fn equatorial_member(n: usize, r: usize, phases: &[f64]) -> FloatState {
        assert!(phases.is_empty() || phases.len() == n - 1);
        let scale = 1.0 / (n as f64).sqrt();
        let amplitudes = (0..n)
            .map(|k| {
                let phase = if k == 0 || phases.is_empty() {
                    0.0
                } else {
                    phases[k - 1]
                };
                scale * Complex64::from_polar(1.0, TAU * (r * k % n) as f64 / n as f64 + phase)
            })
            .collect();
        FloatState { amplitudes }
    }

    /// The v-family at explicit phase angles.
    pub fn v_family(delta_k: f64, phi_k: f64) -> [FloatState; 3] {
        let x = Complex64::from_polar(1.0, delta_k);
        let y = Complex64::from_polar(1.0, phi_k);
        let scaled = |coeffs: [Complex64; 3], d: f64| FloatState {
            amplitudes: coeffs.iter().map(|c| c / d.sqrt()).collect(),
        };
        [
            scaled([Complex64::new(1.0, 0.0), 2.0 * x, y], 6.0),
            scaled([Complex64::new(1.0, 0.0), x, -3.0 * y], 11.0),
            scaled([Complex64::new(7.0, 0.0), -4.0 * x, y], 66.0),
        ]
    }

    /// The w-family (equatorial qutrits) at explicit phase angles.
    pub fn w_family(delta_j: f64, phi_j: f64) -> [FloatState; 3] {
        [
            equatorial_member(3, 0, &[delta_j, phi_j]),
            equatorial_member(3, 1, &[delta_j, phi_j]),
            equatorial_member(3, 2, &[delta_j, phi_j]),
        ]
    }

    /// The diagonal equatorial-transform gate for the chosen solution.
    pub fn equatorial_dft_gate(variant: EquatorialVariant) -> FloatMatrix {
        let gamma = Complex64::from_polar(1.0, TAU / 3.0);
        let gamma2 = Complex64::from_polar(1.0, 2.0 * TAU / 3.0);
        let (head, tail) = match variant {
            EquatorialVariant::Gamma => (2.0 * gamma + 1.0, 2.0 + gamma2),
            EquatorialVariant::GammaSquared => (1.0 + 2.0 * gamma2, 2.0 + gamma),
        };
        diagonal(&[head, tail, tail], 3.0)
    }

    /// The qubit gate `(1/√2)·diag(1+i, 1−i)`.
    pub fn qubit_equatorial_gate() -> FloatMatrix {
        diagonal(
            &[Complex64::new(1.0, 1.0), Complex64::new(1.0, -1.0)],
            2.0,
        )
    }

    /// The pairwise gate `(1/√2)·diag(1 + i·e^{2πik/n})`.
    pub fn pairwise_gate(n: usize) -> FloatMatrix {
        let i = Complex64::new(0.0, 1.0);
        let diag: Vec<Complex64> = (0..n)
            .map(|k| 1.0 + i * Complex64::from_polar(1.0, TAU * k as f64 / n as f64))
            .collect();
        diagonal(&diag, 2.0)
    }

    fn diagonal(values: &[Complex64], d: f64) -> FloatMatrix {
        let n = values.len();
        let scale = 1.0 / d.sqrt();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { scale * values[i] } else { Complex64::new(0.0, 0.0) })
                    .collect()
            })
            .collect();
        FloatMatrix { entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn qutrit_vars() -> Vec<PhaseVariable> {
        vec![PhaseVariable::new("delta"), PhaseVariable::new("phi")]
    }

    #[test]
    fn constructor_states_have_unit_norm_identically() {
        let family = equatorial_family(3, &qutrit_vars()).unwrap();
        for state in family.states() {
            let deviation = state.norm_squared() - PhasePolynomial::one();
            assert!(deviation.is_zero(), "norm² ≠ 1 for {state}");
        }
        let (v, w) = counterexample_families();
        for state in v.states().iter().chain(w.states()) {
            assert!((state.norm_squared() - PhasePolynomial::one()).is_zero());
        }
    }

    #[test]
    fn equatorial_members_are_orthogonal_identically() {
        let family = equatorial_family(3, &qutrit_vars()).unwrap();
        let overlap = inner_product(family.state(0), family.state(1)).unwrap();
        assert!(overlap.is_zero(), "⟨ψ0|ψ1⟩ = {overlap}");
        assert!(family.is_orthonormal());
    }

    #[test]
    fn the_first_two_counterexample_states_cancel_as_one_plus_two_minus_three() {
        let (v, _) = counterexample_families();
        let overlap = inner_product(v.state(0), v.state(1)).unwrap();
        assert!(overlap.is_zero(), "⟨v0|v1⟩ = {overlap}");
        assert!(v.is_orthonormal());
    }

    #[test]
    fn inner_product_is_conjugate_symmetric() {
        let (v, w) = counterexample_families();
        for a in v.states() {
            for b in w.states() {
                let ab = inner_product(a, b).unwrap();
                let ba = inner_product(b, a).unwrap();
                assert!((ab.conjugate() - ba).is_zero());
            }
        }
    }

    #[test]
    fn inner_product_rejects_mismatched_dimensions() {
        let qubit = StateVector::basis_state(2, 0).unwrap();
        let qutrit = StateVector::basis_state(3, 0).unwrap();
        assert_eq!(
            inner_product(&qubit, &qutrit),
            Err(QStateError::DimensionMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn identity_application_is_the_identity() {
        let family = equatorial_family(3, &qutrit_vars()).unwrap();
        let id = GateMatrix::identity(3).unwrap();
        for state in family.states() {
            assert_eq!(&id.apply(state).unwrap(), state);
        }
    }

    #[test]
    fn transform_of_basis_states_gives_uniform_superpositions() {
        let dft = dft_matrix(3).unwrap();
        let gamma = root_of_unity(3, 1).unwrap();
        let gamma2 = root_of_unity(3, 2).unwrap();

        let from_zero = dft.apply(&StateVector::basis_state(3, 0).unwrap()).unwrap();
        let uniform = StateVector::new(
            vec![
                PhasePolynomial::one(),
                PhasePolynomial::one(),
                PhasePolynomial::one(),
            ],
            3,
        )
        .unwrap();
        assert_eq!(from_zero, uniform);

        let from_one = dft.apply(&StateVector::basis_state(3, 1).unwrap()).unwrap();
        let expected = StateVector::new(
            vec![
                PhasePolynomial::one(),
                PhasePolynomial::constant(gamma),
                PhasePolynomial::constant(gamma2),
            ],
            3,
        )
        .unwrap();
        assert_eq!(from_one, expected);
    }

    #[test]
    fn transform_gates_are_unitary_at_small_dimensions() {
        for n in [1, 2, 3, 4] {
            let (unitary, residual) = dft_matrix(n).unwrap().is_unitary();
            assert!(unitary, "dimension {n}: residual {residual:?}");
        }
        assert_eq!(dft_matrix(0), Err(QStateError::InvalidDimension(0)));
    }

    #[test]
    fn hadamard_is_the_two_dimensional_transform() {
        let dft = dft_matrix(2).unwrap();
        let minus_one = PhasePolynomial::from_integer(-1);
        let expected = GateMatrix::new(
            vec![
                vec![PhasePolynomial::one(), PhasePolynomial::one()],
                vec![PhasePolynomial::one(), minus_one],
            ],
            2,
        )
        .unwrap();
        assert_eq!(dft, expected);
    }

    #[test]
    fn gram_of_a_repeated_state_is_all_ones() {
        let zero = StateVector::basis_state(3, 0).unwrap();
        let family = EnsembleFamily::new("repeated", vec![zero.clone(), zero]).unwrap();
        for row in family.gram() {
            for entry in row {
                assert!((entry - PhasePolynomial::one()).is_zero());
            }
        }
        assert!(!family.is_orthonormal());
    }

    #[test]
    fn equatorial_family_checks_its_phase_arity() {
        let one_var = [PhaseVariable::new("delta")];
        assert_eq!(
            equatorial_family(3, &one_var).unwrap_err(),
            QStateError::PhaseArity {
                expected: 2,
                got: 1
            }
        );
        assert_eq!(
            equatorial_family(1, &[]).unwrap_err(),
            QStateError::InvalidDimension(1)
        );
        // Empty phase list → plain qudit family, orthonormal at any n.
        let plain = equatorial_family(5, &[]).unwrap();
        assert!(plain.is_orthonormal());
    }

    #[test]
    fn the_qubit_equatorial_family_matches_the_two_displayed_states() {
        let phi = [PhaseVariable::new("phi")];
        let family = equatorial_family(2, &phi).unwrap();
        // ψ_1 = (1/√2)(|0⟩ − x_φ|1⟩).
        let expected = StateVector::new(
            vec![
                PhasePolynomial::one(),
                -PhasePolynomial::variable(&phi[0]),
            ],
            2,
        )
        .unwrap();
        assert_eq!(family.state(1), &expected);
    }

    #[test]
    fn second_counterexample_state_has_the_minus_three_amplitude() {
        let (v, _) = counterexample_families();
        let phi_k = PhaseVariable::new("phi_k");
        let expected =
            PhasePolynomial::variable(&phi_k).scale(&CyclotomicNumber::from_integer(-3));
        assert_eq!(v.state(1).amplitude(2), &expected);
        assert_eq!(v.state(1).normalization_d(), 11);
    }

    #[test]
    fn dagger_is_an_involution_and_detects_non_unitarity() {
        let gate = equatorial_dft_gate(EquatorialVariant::Gamma);
        assert_eq!(gate.dagger().dagger(), gate);
        let (unitary, _) = gate.is_unitary();
        assert!(unitary);

        // diag(1, 2) is visibly not unitary.
        let stretched = GateMatrix::diagonal(
            vec![PhasePolynomial::one(), PhasePolynomial::from_integer(2)],
            1,
        )
        .unwrap();
        let (unitary, residual) = stretched.is_unitary();
        assert!(!unitary);
        assert!((&residual[1][1] - &PhasePolynomial::from_integer(3)).is_zero());
    }

    #[test]
    fn cross_normalization_equality_is_mathematical_not_structural() {
        // diag-free: (1/√4)·(2, 0) equals (1/√1)·(1, 0).
        let a = StateVector::new(
            vec![PhasePolynomial::from_integer(2), PhasePolynomial::zero()],
            4,
        )
        .unwrap();
        let b = StateVector::basis_state(2, 0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn linear_combinations_track_the_combined_normalization() {
        let family = equatorial_family(3, &qutrit_vars()).unwrap();
        let gamma = root_of_unity(3, 1).unwrap();
        let combo = StateVector::linear_combination(
            &[CyclotomicNumber::one(), gamma.clone(), gamma],
            &[family.state(0), family.state(1), family.state(2)],
            3,
        )
        .unwrap();
        assert_eq!(combo.normalization_d(), 9);
        assert!((combo.norm_squared() - PhasePolynomial::one()).is_zero());
    }

    #[test]
    fn general_qutrit_covers_the_poles_and_stays_normalized() {
        let north = general_qutrit(&GeneralQutritParams::new(0.0, 0.3, 0.0, 0.0).unwrap());
        assert!((north[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(north[1].norm() < 1e-12 && north[2].norm() < 1e-12);

        let half_pi = std::f64::consts::FRAC_PI_2;
        let south = general_qutrit(&GeneralQutritParams::new(half_pi, half_pi, 0.0, 0.0).unwrap());
        assert!((south[2] - Complex64::new(1.0, 0.0)).norm() < 1e-12);

        let quarter = std::f64::consts::FRAC_PI_4;
        let mid = general_qutrit(&GeneralQutritParams::new(quarter, quarter, 0.0, 0.0).unwrap());
        assert!((mid[0].re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-7);
        assert!((mid[1].re - 0.5).abs() < 1e-7);
        assert!((mid[2].re - 0.5).abs() < 1e-7);

        let norm: f64 = mid.iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);

        assert!(matches!(
            GeneralQutritParams::new(-0.1, 0.0, 0.0, 0.0),
            Err(QStateError::ParameterRange { name: "gamma1", .. })
        ));
        assert!(matches!(
            GeneralQutritParams::new(0.0, 0.0, 7.0, 0.0),
            Err(QStateError::ParameterRange { name: "delta", .. })
        ));
    }

    #[test]
    fn float_backend_agrees_with_exact_constructions_spotwise() {
        // Transform matrix entries.
        let exact = dft_matrix(5).unwrap();
        let float = float::dft_matrix(5);
        let scale = 1.0 / 5f64.sqrt();
        for i in 0..5 {
            for j in 0..5 {
                let e = exact
                    .entry(i, j)
                    .evaluate(&BTreeMap::new())
                    .unwrap()
                    * scale;
                assert!((e - float.entries[i][j]).norm() < 1e-12);
            }
        }

        // v-family at a non-trivial phase point.
        let (v, _) = counterexample_families();
        let (delta, phi) = (0.7, -1.3);
        let assignment = BTreeMap::from([
            (PhaseVariable::new("delta_k"), delta),
            (PhaseVariable::new("phi_k"), phi),
        ]);
        let direct = float::v_family(delta, phi);
        for (exact_state, float_state) in v.states().iter().zip(&direct) {
            let evaluated = exact_state.evaluate(&assignment).unwrap();
            for (a, b) in evaluated.iter().zip(&float_state.amplitudes) {
                assert!((a - b).norm() < 1e-12);
            }
        }

        // Pairwise gate diagonal.
        let exact_pair = pairwise_gate(3).unwrap();
        let float_pair = float::pairwise_gate(3);
        let scale = 1.0 / 2f64.sqrt();
        for k in 0..3 {
            let e = exact_pair
                .entry(k, k)
                .evaluate(&BTreeMap::new())
                .unwrap()
                * scale;
            assert!((e - float_pair.entries[k][k]).norm() < 1e-12);
        }
    }

    #[test]
    fn float_unitarity_residual_flags_the_pairwise_gate_at_dimension_three() {
        let residual = float::unitarity_residual(&float::pairwise_gate(3));
        // Diagonal entry k: (|1 + i·Γ^k|² − 2)/2 = −sin(2πk/3), nonzero for
        // k = 1, 2.
        assert!(residual[0][0].norm() < 1e-12);
        assert!((residual[1][1].re + (std::f64::consts::TAU / 3.0).sin()).abs() < 1e-12);
        let qubit = float::unitarity_residual(&float::qubit_equatorial_gate());
        for row in qubit {
            for entry in row {
                assert!(entry.norm() < 1e-12);
            }
        }
    }
}
