//! Index types shared by the tables, the oracle and the engine.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite::{CuspLabel, Sign};

/// The seven Cartan labels: split `s0`, unramified elliptic `s1`, `s2`, ramified `t0..t3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CocycleLabel {
    S0,
    S1,
    S2,
    T0,
    T1,
    T2,
    T3,
}

impl CocycleLabel {
    pub const ALL: [CocycleLabel; 7] = [
        CocycleLabel::S0,
        CocycleLabel::S1,
        CocycleLabel::S2,
        CocycleLabel::T0,
        CocycleLabel::T1,
        CocycleLabel::T2,
        CocycleLabel::T3,
    ];
    /// Labels carrying an orbital integral in the expansion.
    pub const ELLIPTIC: [CocycleLabel; 6] = [
        CocycleLabel::S1,
        CocycleLabel::S2,
        CocycleLabel::T0,
        CocycleLabel::T1,
        CocycleLabel::T2,
        CocycleLabel::T3,
    ];
    pub const RAMIFIED: [CocycleLabel; 4] = [
        CocycleLabel::T0,
        CocycleLabel::T1,
        CocycleLabel::T2,
        CocycleLabel::T3,
    ];

    pub fn is_ramified(self) -> bool {
        matches!(
            self,
            CocycleLabel::T0 | CocycleLabel::T1 | CocycleLabel::T2 | CocycleLabel::T3
        )
    }

    /// Smallest admissible `n` for cells with this label.
    pub fn n_min(self) -> i64 {
        if self.is_ramified() {
            0
        } else {
            1
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CocycleLabel::S0 => "s0",
            CocycleLabel::S1 => "s1",
            CocycleLabel::S2 => "s2",
            CocycleLabel::T0 => "t0",
            CocycleLabel::T1 => "t1",
            CocycleLabel::T2 => "t2",
            CocycleLabel::T3 => "t3",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|z| z.name() == s)
    }
}

impl fmt::Display for CocycleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The invariant set of topologically nilpotent elements indexed by `(z, n, ν)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CellIndex {
    pub z: CocycleLabel,
    pub n: i64,
    pub nu: Sign,
}

impl CellIndex {
    pub fn new(z: CocycleLabel, n: i64, nu: Sign) -> Result<Self> {
        if n < z.n_min() {
            return Err(Error::Range(format!(
                "cell ({z}, {n}) requires n >= {}",
                z.n_min()
            )));
        }
        Ok(CellIndex { z, n, nu })
    }

    /// All cells with `n ≤ n_max`, in canonical order.
    pub fn grid(n_max: i64) -> Vec<CellIndex> {
        let mut out = Vec::new();
        for z in CocycleLabel::ALL {
            for n in z.n_min()..=n_max {
                for nu in [Sign::Plus, Sign::Minus] {
                    out.push(CellIndex { z, n, nu });
                }
            }
        }
        out
    }
}

impl fmt::Display for CellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.z, self.n, self.nu)
    }
}

/// The two vertices of the fundamental edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Vertex {
    #[serde(rename = "0")]
    V0,
    #[serde(rename = "1")]
    V1,
}

impl Vertex {
    pub const ALL: [Vertex; 2] = [Vertex::V0, Vertex::V1];

    pub fn name(self) -> &'static str {
        match self {
            Vertex::V0 => "(0)",
            Vertex::V1 => "(1)",
        }
    }
}

/// A depth-zero supercuspidal `π(x, σ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ReprLabel {
    pub x: Vertex,
    pub cusp: CuspLabel,
}

impl ReprLabel {
    pub fn all() -> [ReprLabel; 6] {
        let mut out = [ReprLabel {
            x: Vertex::V0,
            cusp: CuspLabel::SigmaTheta,
        }; 6];
        let mut i = 0;
        for x in Vertex::ALL {
            for cusp in CuspLabel::ALL {
                out[i] = ReprLabel { x, cusp };
                i += 1;
            }
        }
        out
    }
}

impl fmt::Display for ReprLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = match self.x {
            Vertex::V0 => 0,
            Vertex::V1 => 1,
        };
        write!(f, "pi({x},{})", self.cusp.label())
    }
}

/// The four elliptic endoscopic groups of `SL(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EndoLabel {
    #[serde(rename = "SL2")]
    Sl2,
    #[serde(rename = "U_eps")]
    UEps,
    #[serde(rename = "U_pi")]
    UPi,
    #[serde(rename = "U_epspi")]
    UEpsPi,
}

impl EndoLabel {
    pub const ALL: [EndoLabel; 4] = [
        EndoLabel::Sl2,
        EndoLabel::UEps,
        EndoLabel::UPi,
        EndoLabel::UEpsPi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EndoLabel::Sl2 => "SL2",
            EndoLabel::UEps => "U_eps",
            EndoLabel::UPi => "U_pi",
            EndoLabel::UEpsPi => "U_epspi",
        }
    }
}

impl fmt::Display for EndoLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
