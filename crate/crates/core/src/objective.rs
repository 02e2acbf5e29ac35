//! The two optimization goals.

use core::fmt;

use crate::rational::Rational;

/// What a solver optimizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Objective {
    /// Maximize the total time the terminals are connected.
    MaxConnectivity,
    /// Minimize the total time the terminals are disconnected.
    MinDisconnection,
}

impl Objective {
    /// Objective value of a schedule with the given connected time.
    pub fn value(self, connected: &Rational, horizon: &Rational) -> Rational {
        match self {
            Objective::MaxConnectivity => connected.clone(),
            Objective::MinDisconnection => horizon - connected,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Objective::MaxConnectivity => "max",
            Objective::MinDisconnection => "min",
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::MaxConnectivity => "max-connectivity",
            Objective::MinDisconnection => "min-disconnection",
        })
    }
}
