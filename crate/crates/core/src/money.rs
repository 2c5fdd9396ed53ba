//! Euro amounts held as integer cents so cost ledgers stay exact.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Eur(i64);

impl Eur {
    pub const ZERO: Eur = Eur(0);

    pub const fn from_cents(cents: i64) -> Self {
        Eur(cents)
    }

    /// Rounds to the nearest cent.
    pub fn from_euros(euros: f64) -> Self {
        Eur((euros * 100.0).round() as i64)
    }

    pub const fn cents(self) -> i64 {
        self.0
    }

    pub fn euros(self) -> f64 {
        self.0 as f64 / 100.0
    }

    /// How many whole units of `unit` fit into `self`; zero for non-positive amounts.
    pub fn units_affordable(self, unit: Eur) -> u64 {
        if self.0 <= 0 || unit.0 <= 0 {
            return 0;
        }
        (self.0 / unit.0) as u64
    }
}

impl Add for Eur {
    type Output = Eur;
    fn add(self, rhs: Eur) -> Eur {
        Eur(self.0 + rhs.0)
    }
}

impl AddAssign for Eur {
    fn add_assign(&mut self, rhs: Eur) {
        self.0 += rhs.0;
    }
}

impl Sub for Eur {
    type Output = Eur;
    fn sub(self, rhs: Eur) -> Eur {
        Eur(self.0 - rhs.0)
    }
}

impl Mul<u64> for Eur {
    type Output = Eur;
    fn mul(self, n: u64) -> Eur {
        Eur(self.0 * n as i64)
    }
}

impl Sum for Eur {
    fn sum<I: Iterator<Item = Eur>>(iter: I) -> Eur {
        iter.fold(Eur::ZERO, Add::add)
    }
}

impl fmt::Display for Eur {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        write!(f, "{sign}{}.{:02}", abs / 100, abs % 100)
    }
}

impl Serialize for Eur {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.euros())
    }
}

impl<'de> Deserialize<'de> for Eur {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let euros = f64::deserialize(d)?;
        if !euros.is_finite() {
            return Err(serde::de::Error::custom("euro amount must be finite"));
        }
        Ok(Eur::from_euros(euros))
    }
}
