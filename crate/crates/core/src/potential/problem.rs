use std::fmt;

use super::RadialPotential;
use crate::error::{Error, Result};

/// Spatial dimension of the bound-state problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dimension {
    Two,
    Three,
}

impl Dimension {
    pub fn value(self) -> u32 {
        match self {
            Dimension::Two => 2,
            Dimension::Three => 3,
        }
    }
}

impl TryFrom<u32> for Dimension {
    type Error = Error;

    fn try_from(d: u32) -> Result<Self> {
        match d {
            2 => Ok(Dimension::Two),
            3 => Ok(Dimension::Three),
            other => Err(Error::Dimension(other)),
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// A radial potential in a given dimension, in units ħ = 2m = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    pub potential: RadialPotential,
    pub dimension: Dimension,
}

impl Problem {
    pub fn new(potential: RadialPotential, dimension: Dimension) -> Self {
        Self {
            potential,
            dimension,
        }
    }

    pub fn three_d(potential: RadialPotential) -> Self {
        Self::new(potential, Dimension::Three)
    }

    pub fn two_d(potential: RadialPotential) -> Self {
        Self::new(potential, Dimension::Two)
    }
}
