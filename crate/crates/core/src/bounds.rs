use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Caps that make every enumeration in the crate finite.
///
/// Every equivalence verdict is relative to the bounds it was computed at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bounds {
    pub max_nat: u32,
    pub max_play_len: usize,
    pub max_view_len: usize,
    pub fix_depth: usize,
}

/// Hidden moves allowed in one composition step, per unit of `max_play_len`.
pub const HIDDEN_FACTOR: usize = 16;

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_nat: 3,
            max_play_len: 8,
            max_view_len: 6,
            fix_depth: 4,
        }
    }
}

impl Bounds {
    pub fn new(max_nat: u32, max_play_len: usize, max_view_len: usize, fix_depth: usize) -> Result<Bounds> {
        let b = Bounds {
            max_nat,
            max_play_len,
            max_view_len,
            fix_depth,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_nat == 0 || self.max_play_len == 0 || self.max_view_len == 0 || self.fix_depth == 0 {
            return Err(Error::InvalidBounds(format!(
                "all bounds must be strictly positive, got {self:?}"
            )));
        }
        Ok(())
    }

    /// Cap on the hidden moves of a single interaction inside a composite.
    pub fn hidden_cap(&self) -> usize {
        self.max_play_len * HIDDEN_FACTOR
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let b = Bounds::default();
        assert_eq!((b.max_nat, b.max_play_len, b.max_view_len, b.fix_depth), (3, 8, 6, 4));
        b.validate().unwrap();
    }

    #[test]
    fn zero_is_rejected() {
        assert!(Bounds::new(0, 8, 6, 4).is_err());
        assert!(Bounds::new(3, 8, 6, 0).is_err());
    }
}
