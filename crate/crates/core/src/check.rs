//! Outcome of an exhaustive law check: how many cases were visited and,
//! on failure, the first violating case in enumeration order.

use serde::{Deserialize, Serialize};

/// A single violating case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Name of the violated law.
    pub property: String,
    /// The elements/edges/vertices at which the law fails.
    pub location: Vec<String>,
    pub expected: String,
    pub found: String,
}

impl Witness {
    pub fn new(
        property: impl Into<String>,
        location: Vec<String>,
        expected: impl Into<String>,
        found: impl Into<String>,
    ) -> Self {
        Witness {
            property: property.into(),
            location,
            expected: expected.into(),
            found: found.into(),
        }
    }
}

/// Result of checking a law over every case of a finite instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub property: String,
    pub checked: u64,
    pub witness: Option<Witness>,
}

impl Check {
    pub fn new(property: impl Into<String>) -> Self {
        Check {
            property: property.into(),
            checked: 0,
            witness: None,
        }
    }

    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }

    pub fn tick(&mut self) {
        self.checked += 1;
    }

    /// Records the failing case; only the first failure is kept.
    pub fn fail(mut self, location: Vec<String>, expected: impl Into<String>, found: impl Into<String>) -> Self {
        if self.witness.is_none() {
            self.witness = Some(Witness::new(self.property.clone(), location, expected, found));
        }
        self
    }

    /// Merges two checks into one conjunction; the earlier witness wins.
    pub fn and(mut self, other: Check) -> Check {
        self.checked += other.checked;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
        self
    }

    pub fn renamed(mut self, property: impl Into<String>) -> Check {
        self.property = property.into();
        self
    }
}
