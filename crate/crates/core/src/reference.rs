//! The four reference configurations on the projective line.
//!
//! P-points sit at `1, 2, ...`, Q-points at `-1, -2, ...` and grading points at
//! `0, 1/2, 1/3, ...`; every grading point carries the same vector.

use crate::current::LaxAlgebra;
use crate::exactnum::{frac, int};
use crate::liealg::MatrixLieAlgebra;
use crate::rootsys::{CartanType, GradingSpec};
use crate::surface::{DegreeSchedule, GammaPoint, MarkedCurve};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Reference {
    /// `sl(2)`, one P, one Q, one grading point, vector `(1)`.
    Sl2,
    /// `sl(3)`, two P, one Q, two grading points, vector `(1, 0)`.
    Sl3,
    /// `sp(4)`, one P, one Q, one grading point, vector `(1, 0)`.
    Sp4,
    /// `so(5)`, one P, two Q, one grading point, vector `(0, 1)`.
    So5,
}

impl Reference {
    pub const ALL: [Reference; 4] = [Reference::Sl2, Reference::Sl3, Reference::Sp4, Reference::So5];

    pub fn tag(self) -> char {
        match self {
            Reference::Sl2 => 'a',
            Reference::Sl3 => 'b',
            Reference::Sp4 => 'c',
            Reference::So5 => 'd',
        }
    }

    pub fn from_tag(tag: &str) -> Option<Reference> {
        Reference::ALL.into_iter().find(|r| tag.len() == 1 && tag.starts_with(r.tag()))
    }

    /// `(type, rank, N, M, |Gamma|, vector)`.
    pub fn shape(self) -> (CartanType, usize, usize, usize, usize, Vec<i64>) {
        match self {
            Reference::Sl2 => (CartanType::A, 2, 1, 1, 1, vec![1]),
            Reference::Sl3 => (CartanType::A, 3, 2, 1, 2, vec![1, 0]),
            Reference::Sp4 => (CartanType::C, 2, 1, 1, 1, vec![1, 0]),
            Reference::So5 => (CartanType::B, 2, 1, 2, 1, vec![0, 1]),
        }
    }

    pub fn curve(self) -> Result<MarkedCurve> {
        let (_, _, n, m, g, spec) = self.shape();
        let spec = GradingSpec::new(spec)?;
        MarkedCurve::new(
            (1..=n as i64).map(int).collect(),
            (1..=m as i64).map(|j| int(-j)).collect(),
            (0..g as i64)
                .map(|s| GammaPoint { coord: if s == 0 { int(0) } else { frac(1, s + 1) }, spec: spec.clone() })
                .collect(),
        )
    }

    pub fn build(self) -> Result<LaxAlgebra> {
        let (ty, rank, ..) = self.shape();
        let curve = self.curve()?;
        let schedule = DegreeSchedule::default_for(&curve);
        LaxAlgebra::new(MatrixLieAlgebra::build(ty, rank)?, curve, schedule)
    }
}
