//! Genus and puncture bookkeeping.

use core::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn matches(self, n: usize) -> bool {
        Self::of(n) == self
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamsError {
    #[error("odd mode requires g >= 13, got g = {0}")]
    OddGenusTooSmall(usize),
    #[error("even mode requires g >= 16, got g = {0}")]
    EvenGenusTooSmall(usize),
    #[error("even mode requires r odd (g = 0 mod 4), got g = {g} with r = {r}")]
    EvenModeRequiresOddR { g: usize, r: usize },
    #[error("{mode} genus requires an {mode} puncture count (or n = 0), got n = {n}")]
    PunctureParity { mode: Parity, n: usize },
}

/// Validated surface parameters for `N_{g,n}`.
///
/// Odd mode: `g = 2r+1`, `k = ⌊r/2⌋`, `n = 2l+1`.
/// Even mode: `g = 2r+2` with `r = 2k+1`, `n = 2l`.
/// `n = 0` is accepted in both modes with `l = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurfaceParams {
    pub g: usize,
    pub n: usize,
    pub parity: Parity,
    pub r: usize,
    pub k: usize,
    pub l: usize,
}

impl SurfaceParams {
    pub fn new(g: usize, n: usize) -> Result<Self, ParamsError> {
        let parity = Parity::of(g);
        let (r, k) = match parity {
            Parity::Odd => {
                if g < 13 {
                    return Err(ParamsError::OddGenusTooSmall(g));
                }
                let r = (g - 1) / 2;
                (r, r / 2)
            }
            Parity::Even => {
                if g < 14 {
                    return Err(ParamsError::EvenGenusTooSmall(g));
                }
                let r = (g - 2) / 2;
                if r.is_multiple_of(2) {
                    return Err(ParamsError::EvenModeRequiresOddR { g, r });
                }
                (r, (r - 1) / 2)
            }
        };
        if n > 0 && !parity.matches(n) {
            return Err(ParamsError::PunctureParity { mode: parity, n });
        }
        debug_assert!(k + 3 <= r);
        Ok(Self {
            g,
            n,
            parity,
            r,
            k,
            l: n / 2,
        })
    }

    pub fn is_even(&self) -> bool {
        self.parity == Parity::Even
    }

    /// Dimension of `H₁(N_{g,n}; Z/2)`: `g + max(n-1, 0)`.
    pub fn homology_dim(&self) -> usize {
        self.g + self.n.saturating_sub(1)
    }

    /// Number of involutions in the generating set: 8 (odd) or 11 (even).
    pub fn involution_count(&self) -> usize {
        match self.parity {
            Parity::Odd => 8,
            Parity::Even => 11,
        }
    }

    /// Highest `b` index in the curve family.
    pub fn b_max(&self) -> usize {
        if self.is_even() {
            self.r + 1
        } else {
            self.r
        }
    }

    /// Highest `c` index in the curve family.
    pub fn c_max(&self) -> usize {
        if self.is_even() {
            self.r
        } else {
            self.r - 1
        }
    }

    /// Size of the reduced twist set `Λ′`.
    pub fn reduced_twist_count(&self) -> usize {
        let b = if self.is_even() { 3 } else { 2 };
        self.r + b + self.c_max() + 2 + self.n.saturating_sub(1)
    }

    /// Number of required generators: `|Λ′|` twists, `n` slides `v_i`
    /// (plus `n` slides `w_i` in even mode) and `y`.
    pub fn required_generator_count(&self) -> usize {
        let slides = if self.is_even() { 2 * self.n } else { self.n };
        self.reduced_twist_count() + slides + 1
    }
}

impl fmt::Display for SurfaceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N_{{{},{}}} ({} mode, r={}, k={}, l={})", self.g, self.n, self.parity, self.r, self.k, self.l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn odd_example() {
        let p = SurfaceParams::new(13, 5).unwrap();
        assert_eq!((p.r, p.k, p.l, p.parity), (6, 3, 2, Parity::Odd));
        assert_eq!(p.homology_dim(), 17);
        assert_eq!(p.reduced_twist_count(), 19);
        assert_eq!(p.required_generator_count(), 25);
    }

    #[test]
    fn even_example() {
        let p = SurfaceParams::new(16, 4).unwrap();
        assert_eq!((p.r, p.k, p.l, p.parity), (7, 3, 2, Parity::Even));
        assert_eq!(p.b_max(), 8);
        assert_eq!(p.c_max(), 7);
    }

    #[test]
    fn even_genus_two_mod_four_rejected() {
        let err = SurfaceParams::new(14, 4).unwrap_err();
        assert_eq!(err, ParamsError::EvenModeRequiresOddR { g: 14, r: 6 });
        assert!(err.to_string().contains("even mode requires r odd"));
    }

    #[test]
    fn odd_r_accepted_in_odd_mode() {
        let p = SurfaceParams::new(15, 5).unwrap();
        assert_eq!((p.r, p.k), (7, 3));
    }

    #[test]
    fn rejects_small_genus_and_bad_punctures() {
        assert_eq!(SurfaceParams::new(11, 3).unwrap_err(), ParamsError::OddGenusTooSmall(11));
        assert_eq!(SurfaceParams::new(12, 2).unwrap_err(), ParamsError::EvenGenusTooSmall(12));
        assert!(matches!(
            SurfaceParams::new(13, 4).unwrap_err(),
            ParamsError::PunctureParity { n: 4, .. }
        ));
        assert!(SurfaceParams::new(13, 0).is_ok());
        assert!(SurfaceParams::new(16, 0).is_ok());
    }
}
