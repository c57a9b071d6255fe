//! Support systems and the restricted differentials they induce.

use std::fmt;

use gaugeloc_linalg::RationalMatrix;

use crate::complex::CubicalComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flag {
    Free,
    Compact,
}

/// Which boundary strata a cochain must vanish on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportSystem {
    pub time: Flag,
    pub space: Flag,
}

impl SupportSystem {
    pub const C: SupportSystem = SupportSystem { time: Flag::Compact, space: Flag::Compact };
    pub const TC: SupportSystem = SupportSystem { time: Flag::Compact, space: Flag::Free };
    pub const SC: SupportSystem = SupportSystem { time: Flag::Free, space: Flag::Compact };
    pub const FREE: SupportSystem = SupportSystem { time: Flag::Free, space: Flag::Free };

    pub const ALL: [SupportSystem; 4] = [Self::FREE, Self::C, Self::TC, Self::SC];

    /// The system paired against this one in the duality pairings.
    pub fn dual(self) -> SupportSystem {
        let flip = |f| if f == Flag::Free { Flag::Compact } else { Flag::Free };
        SupportSystem { time: flip(self.time), space: flip(self.space) }
    }

    pub fn name(self) -> &'static str {
        match (self.time, self.space) {
            (Flag::Compact, Flag::Compact) => "c",
            (Flag::Compact, Flag::Free) => "tc",
            (Flag::Free, Flag::Compact) => "sc",
            (Flag::Free, Flag::Free) => "free",
        }
    }

    pub fn parse(s: &str) -> Option<SupportSystem> {
        match s {
            "c" => Some(Self::C),
            "tc" => Some(Self::TC),
            "sc" => Some(Self::SC),
            "free" | "unrestricted" => Some(Self::FREE),
            _ => None,
        }
    }
}

impl fmt::Display for SupportSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Differential used for cohomology: `d` raises degree, `δ` lowers it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    D,
    Delta,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::D => "d",
            Flavor::Delta => "delta",
        }
    }
}

/// Cells a cochain of the given support and flavor may be nonzero on.
///
/// For `d` a compact flag means vanishing on the corresponding boundary
/// stratum. For `δ` the roles flip: a free flag means vanishing there, which
/// makes `δ` the relative boundary operator.
pub fn allowed(c: &CubicalComplex, k: usize, s: SupportSystem, flavor: Flavor) -> Vec<bool> {
    let (kill_t, kill_s) = match flavor {
        Flavor::D => (s.time == Flag::Compact, s.space == Flag::Compact),
        Flavor::Delta => (s.time == Flag::Free, s.space == Flag::Free),
    };
    (0..c.dim(k)).map(|i| !((kill_t && c.in_tb(k, i)) || (kill_s && c.in_sb(k, i)))).collect()
}

pub fn allowed_indices(c: &CubicalComplex, k: usize, s: SupportSystem, flavor: Flavor) -> Vec<usize> {
    allowed(c, k, s, flavor).iter().enumerate().filter(|(_, a)| **a).map(|(i, _)| i).collect()
}

/// `d: C^k_s → C^{k+1}_s` in the coordinates of allowed cells.
pub fn coboundary_matrix(c: &CubicalComplex, k: usize, s: SupportSystem) -> RationalMatrix {
    let rows = allowed_indices(c, k + 1, s, Flavor::D);
    let cols = allowed_indices(c, k, s, Flavor::D);
    c.d(k).select_rows(&rows).select_cols(&cols)
}

/// `δ: C^k → C^{k-1}` on the δ-flavor allowed cells, projected off the vanishing strata.
pub fn codifferential_matrix(c: &CubicalComplex, k: usize, s: SupportSystem) -> RationalMatrix {
    let rows = allowed_indices(c, k - 1, s, Flavor::Delta);
    let cols = allowed_indices(c, k, s, Flavor::Delta);
    c.delta(k).select_rows(&rows).select_cols(&cols)
}
