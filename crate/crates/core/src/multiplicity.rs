use std::fmt;
use std::ops::Add;
use std::str::FromStr;

/// How many indices carry a given value: a positive natural or `ℵ₀`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Multiplicity {
    Finite(u64),
    Aleph0,
}

impl Multiplicity {
    pub fn is_infinite(self) -> bool {
        matches!(self, Multiplicity::Aleph0)
    }

    pub fn is_finite(self) -> bool {
        !self.is_infinite()
    }

    /// True when at least `k` copies are available.
    pub fn covers(self, k: u64) -> bool {
        match self {
            Multiplicity::Finite(m) => m >= k,
            Multiplicity::Aleph0 => true,
        }
    }
}

impl Add for Multiplicity {
    type Output = Multiplicity;

    fn add(self, rhs: Multiplicity) -> Multiplicity {
        match (self, rhs) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => Multiplicity::Finite(a + b),
            _ => Multiplicity::Aleph0,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Aleph0 => f.write_str("inf"),
        }
    }
}

impl FromStr for Multiplicity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inf" => Ok(Multiplicity::Aleph0),
            _ => match s.parse::<u64>() {
                Ok(0) => Err("multiplicity must be at least 1".to_string()),
                Ok(n) => Ok(Multiplicity::Finite(n)),
                Err(_) => Err(format!("expected a positive natural or `inf`, found `{s}`")),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!("inf".parse::<Multiplicity>(), Ok(Multiplicity::Aleph0));
        assert_eq!("7".parse::<Multiplicity>(), Ok(Multiplicity::Finite(7)));
        assert!("0".parse::<Multiplicity>().is_err());
        assert!("-1".parse::<Multiplicity>().is_err());
        assert_eq!(Multiplicity::Aleph0.to_string(), "inf");
    }

    #[test]
    fn addition_saturates_at_aleph0() {
        use Multiplicity::*;
        assert_eq!(Finite(2) + Finite(3), Finite(5));
        assert_eq!(Finite(2) + Aleph0, Aleph0);
        assert!(Aleph0.covers(1_000_000));
        assert!(!Finite(2).covers(3));
    }
}
