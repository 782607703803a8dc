use std::fmt::Display;

use serde::{Deserialize, Serialize};

/// Both sides of an identity and their difference, rendered as text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
    pub defect: String,
}

impl Check {
    pub fn compare<T: Display + PartialEq>(lhs: &T, rhs: &T, defect: impl Display) -> Check {
        Check { pass: lhs == rhs, lhs: lhs.to_string(), rhs: rhs.to_string(), defect: defect.to_string() }
    }

    pub fn new(pass: bool, lhs: impl Display, rhs: impl Display, defect: impl Display) -> Check {
        Check { pass, lhs: lhs.to_string(), rhs: rhs.to_string(), defect: defect.to_string() }
    }
}
