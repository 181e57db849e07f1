use core::fmt;

use crate::error::{Error, Result};

/// Ambient dimension `n` of the hyperbolic manifold. Always at least 2;
/// operations that need `n >= 3` check it themselves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dimension(u32);

impl Dimension {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain("Dimension::new", "n >= 2", n as f64));
        }
        Ok(Dimension(n))
    }

    #[inline]
    pub const fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_odd(self) -> bool {
        self.0 % 2 == 1
    }

    pub(crate) fn at_least(self, min: u32, operation: &'static str) -> Result<u32> {
        if self.0 < min {
            let requirement = if min == 3 { "n >= 3" } else { "n >= 2" };
            return Err(Error::domain(operation, requirement, self.0 as f64));
        }
        Ok(self.0)
    }
}

impl TryFrom<u32> for Dimension {
    type Error = Error;
    fn try_from(n: u32) -> Result<Self> {
        Dimension::new(n)
    }
}

impl From<Dimension> for u32 {
    fn from(d: Dimension) -> u32 {
        d.0
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
