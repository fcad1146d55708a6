//! Ordinals below ε₀ in Cantor normal form.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("coefficient overflow")]
    Overflow,
    #[error("ordinal exceeds the height guard of {0}")]
    TooTall(usize),
}

/// Exponent towers taller than this are refused by [`Ordinal::checked_pow`].
pub const HEIGHT_GUARD: usize = 32;

/// `ω^e₁·c₁ + … + ω^eₖ·cₖ` with `e₁ > … > eₖ` and every `cᵢ ≥ 1`; the
/// empty sum is 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::nat(1)
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal {
                terms: vec![(Self::zero(), n)],
            }
        }
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::one())
    }

    /// `ω^e`.
    pub fn omega_pow(e: Ordinal) -> Self {
        Self::term(e, 1)
    }

    /// `ω^e·c`.
    pub fn term(e: Ordinal, c: u64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Ordinal { terms: vec![(e, c)] }
    }

    /// Builds from `(exponent, coefficient)` pairs, which must already be in
    /// normal form.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Self {
        assert!(terms.iter().all(|(_, c)| *c >= 1), "coefficients must be positive");
        assert!(terms.windows(2).all(|w| w[0].0 > w[1].0), "exponents must descend");
        Ordinal { terms }
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_nat().is_some()
    }

    /// Nonzero with no finite part.
    pub fn is_limit(&self) -> bool {
        self.terms.last().is_some_and(|(e, _)| !e.is_zero())
    }

    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|(e, _)| e.is_zero())
    }

    pub fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms.first().map(|(e, _)| e)
    }

    /// Splits into the largest limit-or-zero part and the finite rest.
    pub fn split_finite(&self) -> (Ordinal, u64) {
        match self.terms.last() {
            Some((e, c)) if e.is_zero() => (
                Ordinal {
                    terms: self.terms[..self.terms.len() - 1].to_vec(),
                },
                *c,
            ),
            _ => (self.clone(), 0),
        }
    }

    /// Nesting depth of exponents; finite ordinals have height 0 and `ω`
    /// has height 1.
    pub fn height(&self) -> usize {
        self.terms
            .iter()
            .map(|(e, _)| if e.is_zero() { 0 } else { 1 + e.height() })
            .max()
            .unwrap_or(0)
    }

    pub fn checked_add(&self, rhs: &Ordinal) -> Result<Ordinal, OrdinalError> {
        let Some((e, c)) = rhs.terms.first() else {
            return Ok(self.clone());
        };
        let mut terms: Vec<(Ordinal, u64)> = self.terms.iter().take_while(|(f, _)| f > e).cloned().collect();
        let mut lead = *c;
        if let Some((f, d)) = self.terms.get(terms.len()) {
            if f == e {
                lead = lead.checked_add(*d).ok_or(OrdinalError::Overflow)?;
            }
        }
        terms.push((e.clone(), lead));
        terms.extend(rhs.terms[1..].iter().cloned());
        Ok(Ordinal { terms })
    }

    pub fn checked_mul(&self, rhs: &Ordinal) -> Result<Ordinal, OrdinalError> {
        if self.is_zero() || rhs.is_zero() {
            return Ok(Ordinal::zero());
        }
        let lead = self.terms[0].0.clone();
        let mut acc = Ordinal::zero();
        for (f, d) in &rhs.terms {
            let piece = if f.is_zero() {
                let mut terms = self.terms.clone();
                terms[0].1 = terms[0].1.checked_mul(*d).ok_or(OrdinalError::Overflow)?;
                Ordinal { terms }
            } else {
                Ordinal::term(lead.checked_add(f)?, *d)
            };
            acc = acc.checked_add(&piece)?;
        }
        Ok(acc)
    }

    pub fn checked_pow(&self, rhs: &Ordinal) -> Result<Ordinal, OrdinalError> {
        if rhs.is_zero() {
            return Ok(Ordinal::one());
        }
        if self.is_zero() {
            return Ok(Ordinal::zero());
        }
        if self.as_nat() == Some(1) {
            return Ok(Ordinal::one());
        }
        let (infinite, m) = rhs.split_finite();
        let head = if infinite.is_zero() {
            Ordinal::one()
        } else if let Some(n) = self.as_nat() {
            // n^(ω^(1+γ)) = ω^(ω^γ) for 2 ≤ n < ω
            debug_assert!(n >= 2);
            let mut exp = Ordinal::zero();
            for (f, c) in &infinite.terms {
                let g = match f.as_nat() {
                    Some(k) => Ordinal::nat(k - 1),
                    None => f.clone(),
                };
                exp = exp.checked_add(&Ordinal::term(g, *c))?;
            }
            Ordinal::omega_pow(exp)
        } else {
            // α^(ω^f) = ω^(e·ω^f) for α ≥ ω with leading exponent e
            Ordinal::omega_pow(self.terms[0].0.checked_mul(&infinite)?)
        };
        let mut tail = Ordinal::one();
        let mut base = self.clone();
        let mut k = m;
        while k > 0 {
            if k & 1 == 1 {
                tail = tail.checked_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        let out = head.checked_mul(&tail)?;
        if out.height() > HEIGHT_GUARD {
            return Err(OrdinalError::TooTall(HEIGHT_GUARD));
        }
        Ok(out)
    }

    /// The unique `x` with `self + x = other`, when `self ≤ other`.
    pub fn left_sub(&self, other: &Ordinal) -> Option<Ordinal> {
        if self > other {
            return None;
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let (f, d) = &other.terms[i];
            if e != f || c != d {
                // other is larger at this term
                let mut terms = Vec::new();
                if e == f {
                    terms.push((f.clone(), d - c));
                } else {
                    terms.push((f.clone(), *d));
                }
                terms.extend(other.terms[i + 1..].iter().cloned());
                return Some(Ordinal { terms });
            }
        }
        Some(Ordinal {
            terms: other.terms[self.terms.len()..].to_vec(),
        })
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for ((e, c), (f, d)) in self.terms.iter().zip(&other.terms) {
            match e.cmp(f).then(c.cmp(d)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Add for &Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: &Ordinal) -> Ordinal {
        self.checked_add(rhs).expect("ordinal addition overflow")
    }
}

impl std::ops::Mul for &Ordinal {
    type Output = Ordinal;

    fn mul(self, rhs: &Ordinal) -> Ordinal {
        self.checked_mul(rhs).expect("ordinal multiplication overflow")
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::nat(n)
    }
}

/// Prints `w^2*3+w+1`; compound exponents are parenthesized.
impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            f.write_str("w")?;
            if e.as_nat() != Some(1) {
                let atomic = e.as_nat().is_some() || (e.terms.len() == 1 && e.terms[0].0.as_nat() == Some(1) && e.terms[0].1 == 1);
                if atomic {
                    write!(f, "^{e}")?;
                } else {
                    write!(f, "^({e})")?;
                }
            }
            if *c > 1 {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
