//! Instances: homogeneous tropical polynomials over the lattice points of a
//! dilated simplex, together with a sign distribution.
//!
//! Tropical arithmetic is min-plus throughout. Coefficients are exact
//! rationals; cell structure of the induced subdivision depends on exact
//! comparisons of the coefficients.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

/// Largest number of homogeneous variables accepted. Orthant sets carry
/// `2^n` bits and sedentarity sets are `u32` masks.
pub const MAX_VARIABLES: usize = 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: duplicate exponent {exponent}")]
    DuplicateExponent {
        line: usize,
        exponent: ExponentVector,
    },
    #[error("line {line}: exponent {exponent} has degree {found}, expected {expected}")]
    NotHomogeneous {
        line: usize,
        exponent: ExponentVector,
        found: u32,
        expected: u32,
    },
    #[error("line {line}: sign {found} is not 0 or 1")]
    BadSign { line: usize, found: String },
    #[error("support has {found} points, expected all {expected} lattice points of the dilated simplex (missing {missing})")]
    IncompleteSupport {
        found: usize,
        expected: usize,
        missing: ExponentVector,
    },
    #[error("unsupported dimensions n = {n}, d = {d} (need 2 <= n <= {max}, d >= 1)", max = MAX_VARIABLES)]
    Dimensions { n: usize, d: u32 },
    #[error("exponent {exponent} has {found} entries, expected {expected}")]
    Arity {
        exponent: ExponentVector,
        found: usize,
        expected: usize,
    },
    #[error("point has length {found}, expected {expected}")]
    DimensionMismatch { found: usize, expected: usize },
    #[error("sign distribution does not match the polynomial support")]
    SignDomain,
}

/// Exponent vector `v` of a monomial `x^v`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Bit `i` set iff `v_i > 0`.
    pub fn support_mask(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    /// Bit `i` set iff `v_i` is odd.
    pub fn parity_mask(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e % 2 == 1)
            .fold(0, |m, (i, _)| m | (1 << i))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

fn check_dimensions(n: usize, d: u32) -> Result<(), InstanceError> {
    if !(2..=MAX_VARIABLES).contains(&n) || d == 0 {
        return Err(InstanceError::Dimensions { n, d });
    }
    Ok(())
}

/// All `v >= 0` with `sum(v) = d`, lexicographically decreasing.
pub fn lattice_points(n: usize, d: u32) -> Vec<ExponentVector> {
    fn fill(prefix: &mut Vec<u32>, remaining: u32, slots: usize, out: &mut Vec<ExponentVector>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(ExponentVector(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=remaining).rev() {
            prefix.push(e);
            fill(prefix, remaining - e, slots - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    fill(&mut Vec::with_capacity(n), d, n, &mut out);
    out
}

/// `C(d + n - 1, n - 1)`, the number of lattice points of `d * Delta_{n-1}`.
pub fn lattice_point_count(n: usize, d: u32) -> u64 {
    let k = (n - 1) as u64;
    let mut acc: u64 = 1;
    for i in 1..=k {
        acc = acc * (d as u64 + i) / i;
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub exponent: ExponentVector,
    pub coefficient: BigRational,
}

/// A homogeneous min-plus polynomial `f = min_v (c_v + <x, v>)`.
///
/// Terms are kept in the canonical order (lexicographically decreasing
/// exponents), so for a full support the term index equals the index into
/// [`lattice_points`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalPolynomial {
    n: usize,
    d: u32,
    terms: Vec<Term>,
}

impl TropicalPolynomial {
    pub fn new(n: usize, d: u32, mut terms: Vec<Term>) -> Result<Self, InstanceError> {
        check_dimensions(n, d)?;
        for (line, t) in terms.iter().enumerate() {
            if t.exponent.len() != n {
                return Err(InstanceError::Arity {
                    exponent: t.exponent.clone(),
                    found: t.exponent.len(),
                    expected: n,
                });
            }
            if t.exponent.degree() != d {
                return Err(InstanceError::NotHomogeneous {
                    line: line + 1,
                    exponent: t.exponent.clone(),
                    found: t.exponent.degree(),
                    expected: d,
                });
            }
        }
        terms.sort_by(|a, b| b.exponent.cmp(&a.exponent));
        for (i, w) in terms.windows(2).enumerate() {
            if w[0].exponent == w[1].exponent {
                return Err(InstanceError::DuplicateExponent {
                    line: i + 2,
                    exponent: w[1].exponent.clone(),
                });
            }
        }
        Ok(Self { n, d, terms })
    }

    /// Polynomial supported on all lattice points with coefficients given in
    /// canonical order.
    pub fn from_coefficients(
        n: usize,
        d: u32,
        coefficients: Vec<BigRational>,
    ) -> Result<Self, InstanceError> {
        check_dimensions(n, d)?;
        let points = lattice_points(n, d);
        if points.len() != coefficients.len() {
            return Err(InstanceError::DimensionMismatch {
                found: coefficients.len(),
                expected: points.len(),
            });
        }
        let terms = points
            .into_iter()
            .zip(coefficients)
            .map(|(exponent, coefficient)| Term {
                exponent,
                coefficient,
            })
            .collect();
        Self::new(n, d, terms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn coefficient(&self, v: &ExponentVector) -> Option<&BigRational> {
        self.terms
            .binary_search_by(|t| v.cmp(&t.exponent))
            .ok()
            .map(|i| &self.terms[i].coefficient)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &BigRational> {
        self.terms.iter().map(|t| &t.coefficient)
    }

    /// Errors unless the support is every lattice point of `d * Delta_{n-1}`.
    pub fn require_full_support(&self) -> Result<(), InstanceError> {
        let expected = lattice_points(self.n, self.d);
        if expected.len() == self.terms.len() {
            return Ok(());
        }
        let missing = expected
            .into_iter()
            .find(|v| self.coefficient(v).is_none())
            .expect("fewer terms than lattice points");
        Err(InstanceError::IncompleteSupport {
            found: self.terms.len(),
            expected: lattice_point_count(self.n, self.d) as usize,
            missing,
        })
    }

    /// `min_v (c_v + <x, v>)`.
    pub fn evaluate(&self, x: &[BigRational]) -> Result<BigRational, InstanceError> {
        Ok(self.evaluate_with_argmin(x)?.0)
    }

    /// Minimum value and the indices of the terms attaining it.
    pub fn evaluate_with_argmin(
        &self,
        x: &[BigRational],
    ) -> Result<(BigRational, Vec<usize>), InstanceError> {
        if x.len() != self.n {
            return Err(InstanceError::DimensionMismatch {
                found: x.len(),
                expected: self.n,
            });
        }
        let mut best: Option<BigRational> = None;
        let mut argmin = Vec::new();
        for (i, t) in self.terms.iter().enumerate() {
            let mut value = t.coefficient.clone();
            for (xi, &vi) in x.iter().zip(t.exponent.entries()) {
                if vi != 0 {
                    value += xi * BigRational::from_integer(BigInt::from(vi));
                }
            }
            match &best {
                Some(b) if value > *b => {}
                Some(b) if value == *b => argmin.push(i),
                _ => {
                    best = Some(value);
                    argmin.clear();
                    argmin.push(i);
                }
            }
        }
        Ok((best.unwrap_or_else(BigRational::zero), argmin))
    }
}

/// Sign distribution `epsilon: V -> {0, 1}`; `z` stands for `(-1)^z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignDistribution {
    bits: BTreeMap<ExponentVector, bool>,
}

impl SignDistribution {
    pub fn new(bits: BTreeMap<ExponentVector, bool>) -> Self {
        Self { bits }
    }

    /// Signs aligned with `points`.
    pub fn from_aligned(points: &[ExponentVector], bits: &[bool]) -> Self {
        assert_eq!(points.len(), bits.len());
        Self {
            bits: points.iter().cloned().zip(bits.iter().copied()).collect(),
        }
    }

    pub fn get(&self, v: &ExponentVector) -> Option<bool> {
        self.bits.get(v).copied()
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Signs in the order of `points`, or an error if any point is missing.
    pub fn aligned(&self, points: &[ExponentVector]) -> Result<Vec<bool>, InstanceError> {
        if points.len() != self.bits.len() {
            return Err(InstanceError::SignDomain);
        }
        points
            .iter()
            .map(|v| self.get(v).ok_or(InstanceError::SignDomain))
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ExponentVector, bool)> {
        self.bits.iter().map(|(v, &b)| (v, b))
    }
}

/// A polynomial paired with a sign on each of its monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub polynomial: TropicalPolynomial,
    pub signs: SignDistribution,
}

impl Instance {
    pub fn new(
        polynomial: TropicalPolynomial,
        signs: SignDistribution,
    ) -> Result<Self, InstanceError> {
        let exps: Vec<ExponentVector> = polynomial
            .terms()
            .iter()
            .map(|t| t.exponent.clone())
            .collect();
        signs.aligned(&exps)?;
        Ok(Self { polynomial, signs })
    }

    /// Signs in canonical term order.
    pub fn sign_bits(&self) -> Vec<bool> {
        self.polynomial
            .terms()
            .iter()
            .map(|t| {
                self.signs
                    .get(&t.exponent)
                    .expect("validated on construction")
            })
            .collect()
    }
}

fn parse_rational(token: &str) -> Option<BigRational> {
    match token.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p).ok()?;
            let q = BigInt::from_str(q).ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => BigInt::from_str(token).ok().map(BigRational::from_integer),
    }
}

/// Reads the line-oriented instance format:
///
/// ```text
/// # comment
/// n d
/// v_1 ... v_n c e
/// ```
///
/// with one line per lattice point of `d * Delta_{n-1}`, `c` an integer or
/// `p/q`, and `e` in `{0, 1}`.
pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    let mut header: Option<(usize, u32)> = None;
    let mut terms = Vec::new();
    let mut signs = BTreeMap::new();
    let mut seen: BTreeMap<ExponentVector, usize> = BTreeMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let Some((n, d)) = header else {
            let malformed = || InstanceError::Malformed {
                line,
                reason: format!("expected header `n d`, found `{trimmed}`"),
            };
            if tokens.len() != 2 {
                return Err(malformed());
            }
            let n: usize = tokens[0].parse().map_err(|_| malformed())?;
            let d: u32 = tokens[1].parse().map_err(|_| malformed())?;
            check_dimensions(n, d)?;
            header = Some((n, d));
            continue;
        };

        if tokens.len() != n + 2 {
            return Err(InstanceError::Malformed {
                line,
                reason: format!("expected {} fields, found {}", n + 2, tokens.len()),
            });
        }
        let mut entries = Vec::with_capacity(n);
        for tok in &tokens[..n] {
            let e: u32 = tok.parse().map_err(|_| InstanceError::Malformed {
                line,
                reason: format!("exponent `{tok}` is not a nonnegative integer"),
            })?;
            entries.push(e);
        }
        let exponent = ExponentVector(entries);
        if exponent.degree() != d {
            return Err(InstanceError::NotHomogeneous {
                line,
                found: exponent.degree(),
                exponent,
                expected: d,
            });
        }
        let coefficient = parse_rational(tokens[n]).ok_or_else(|| InstanceError::Malformed {
            line,
            reason: format!("coefficient `{}` is not an integer or p/q", tokens[n]),
        })?;
        let sign = match tokens[n + 1] {
            "0" => false,
            "1" => true,
            other => {
                return Err(InstanceError::BadSign {
                    line,
                    found: other.to_string(),
                })
            }
        };
        if seen.insert(exponent.clone(), line).is_some() {
            return Err(InstanceError::DuplicateExponent { line, exponent });
        }
        signs.insert(exponent.clone(), sign);
        terms.push(Term {
            exponent,
            coefficient,
        });
    }

    let Some((n, d)) = header else {
        return Err(InstanceError::Malformed {
            line: text.lines().count().max(1),
            reason: "missing header `n d`".into(),
        });
    };
    let polynomial = TropicalPolynomial::new(n, d, terms)?;
    polynomial.require_full_support()?;
    Instance::new(polynomial, SignDistribution::new(signs))
}

fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Writes an instance in canonical term order. Inverse of [`parse_instance`].
pub fn write_instance(instance: &Instance) -> String {
    let poly = &instance.polynomial;
    let mut out = String::new();
    writeln!(out, "{} {}", poly.n(), poly.degree()).unwrap();
    for t in poly.terms() {
        for e in t.exponent.entries() {
            write!(out, "{e} ").unwrap();
        }
        let sign = instance.signs.get(&t.exponent).unwrap_or(false);
        writeln!(
            out,
            "{} {}",
            format_rational(&t.coefficient),
            u8::from(sign)
        )
        .unwrap();
    }
    out
}

/// Lexicographically decreasing order, used for canonical listings.
pub fn canonical_order(points: &mut [ExponentVector]) {
    points.sort_by_key(|v| Reverse(v.clone()));
}
