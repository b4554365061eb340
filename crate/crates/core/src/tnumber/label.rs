use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::potential::Dimension;

const ORBITAL_LETTERS: &[u8] = b"spdfghiklmnoqrtuvwxyz";

/// Quantum numbers of one level. `n` counts radial nodes; `l` is the orbital
/// number (3D), `m` the magnetic (3D) or planar angular (2D) number, and
/// `slab` the index `N >= 1` of the motion across a quantum-dot slab.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StateLabel {
    pub n: u32,
    pub l: Option<u32>,
    pub m: Option<i32>,
    pub slab: Option<u32>,
}

impl StateLabel {
    pub fn radial(n: u32, l: u32) -> Self {
        Self {
            n,
            l: Some(l),
            m: None,
            slab: None,
        }
    }

    pub fn with_m(n: u32, l: u32, m: i32) -> Result<Self> {
        Self {
            n,
            l: Some(l),
            m: Some(m),
            slab: None,
        }
        .validated()
    }

    pub fn planar(n: u32, m: i32) -> Self {
        Self {
            n,
            l: None,
            m: Some(m),
            slab: None,
        }
    }

    pub fn dot(slab: u32, n: u32, m: i32) -> Result<Self> {
        Self {
            n,
            l: None,
            m: Some(m),
            slab: Some(slab),
        }
        .validated()
    }

    pub fn validated(self) -> Result<Self> {
        if let (Some(l), Some(m)) = (self.l, self.m) {
            if m.unsigned_abs() > l {
                return Err(Error::InvalidState(format!(
                    "|m| = {} exceeds l = {l}",
                    m.abs()
                )));
            }
        }
        if self.l.is_none() && self.m.is_none() {
            return Err(Error::InvalidState(format!(
                "state n = {} has neither l nor m",
                self.n
            )));
        }
        if self.slab == Some(0) {
            return Err(Error::InvalidState("slab index starts at 1".into()));
        }
        Ok(self)
    }

    /// Angular quantum number used for ordering: `l` when present, else `|m|`.
    pub fn angular(&self) -> u32 {
        self.l.or(self.m.map(i32::unsigned_abs)).unwrap_or(0)
    }

    /// `λ = l + (D − 2)/2`: `l + 1/2` in 3D and `|m|` in 2D.
    pub fn lambda(&self, dimension: Dimension) -> Result<f64> {
        match dimension {
            Dimension::Three => self
                .l
                .map(|l| l as f64 + 0.5)
                .ok_or_else(|| Error::InvalidState(format!("{self} has no l for a 3D problem"))),
            Dimension::Two => self
                .m
                .map(|m| m.unsigned_abs() as f64)
                .or(self.l.map(f64::from))
                .ok_or_else(|| Error::InvalidState(format!("{self} has no m for a 2D problem"))),
        }
    }

    /// Spectroscopic name such as `1s`, `2p`, `1h`.
    pub fn spectroscopic(&self) -> String {
        let a = self.angular() as usize;
        let letter = ORBITAL_LETTERS
            .get(a)
            .map(|&c| (c as char).to_string())
            .unwrap_or_else(|| format!("[{a}]"));
        format!("{}{}", self.n + 1, letter)
    }

    /// Tie-break key: angular number, then `n`, `m`, slab.
    pub fn order_key(&self) -> (u32, u32, i32, u32) {
        (
            self.angular(),
            self.n,
            self.m.unwrap_or(0),
            self.slab.unwrap_or(0),
        )
    }

    pub fn cmp_order(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}", self.n)?;
        if let Some(l) = self.l {
            write!(f, ", l={l}")?;
        }
        if let Some(m) = self.m {
            write!(f, ", m={m}")?;
        }
        if let Some(s) = self.slab {
            write!(f, ", N={s}")?;
        }
        write!(f, ")")
    }
}
