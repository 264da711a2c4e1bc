//! Conjugation schemes: how the second non-trivial diagonal of a power moves
//! under conjugation by `x0^±1` and `x1^±1`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::band::{conj_second, DiagTriple, GroupElement};
use crate::error::{Error, Result};
use crate::groups::{GeneratorSet, Spherical};
use crate::tables::{self, PrintedFigure};

/// Which pair `(x*, y*)` a figure follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    XY,
    X0Y0,
    X1Y1,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::XY, Family::X0Y0, Family::X1Y1];

    pub fn pair(self) -> (Spherical, Spherical) {
        match self {
            Family::XY => (Spherical::X, Spherical::Y),
            Family::X0Y0 => (Spherical::X0, Spherical::Y0),
            Family::X1Y1 => (Spherical::X1, Spherical::Y1),
        }
    }

    pub fn printed(self) -> &'static [PrintedFigure; 4] {
        match self {
            Family::XY => &tables::XY_FIGURES,
            Family::X0Y0 => &tables::X0Y0_FIGURES,
            Family::X1Y1 => &tables::X1Y1_FIGURES,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.pair();
        write!(f, "{a},{b}")
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.replace(' ', "").as_str() {
            "x,y" | "xy" => Ok(Family::XY),
            "x0,y0" | "x0y0" => Ok(Family::X0Y0),
            "x1,y1" | "x1y1" => Ok(Family::X1Y1),
            _ => Err(Error::Parse(format!("unknown pair {s:?}; expected x,y | x0,y0 | x1,y1"))),
        }
    }
}

/// Exponent class of the powers in a figure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `t(n) = 1`
    Base,
    /// `t(n) = 3`
    Cube,
    /// `t(n) = 2^r`, `r` odd
    OddTwoPower,
    /// `t(n) = 2^r`, `r ≥ 2` even
    EvenTwoPower,
}

impl Regime {
    pub const ALL: [Regime; 4] = [Regime::Base, Regime::Cube, Regime::OddTwoPower, Regime::EvenTwoPower];

    /// Smallest exponent in the class.
    pub fn exponent(self) -> u64 {
        match self {
            Regime::Base => 1,
            Regime::Cube => 3,
            Regime::OddTwoPower => 2,
            Regime::EvenTwoPower => 4,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Regime::Base => "base",
            Regime::Cube => "cube",
            Regime::OddTwoPower => "odd-two-power",
            Regime::EvenTwoPower => "even-two-power",
        }
    }
}

impl FromStr for Regime {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Regime::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown regime {s:?}; expected base | cube | odd-two-power | even-two-power"
                ))
            })
    }
}

/// Conjugation by `x0^±1` or `x1^±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EdgeLabel {
    #[serde(rename = "Conj(x0^±1)")]
    X0,
    #[serde(rename = "Conj(x1^±1)")]
    X1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: EdgeLabel,
}

/// One 2×2 block: `nodes = [N1, N2, N3, N4]` with `N2 = x0·N1`, `N3 = x1·N1`,
/// `N4 = x0·N3`, where `s·A2` is the second diagonal after conjugating by `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjScheme {
    pub leading: DiagTriple,
    pub vanish: usize,
    pub nodes: [DiagTriple; 4],
    pub edges: Vec<Edge>,
    /// Distinct second diagonals in the block.
    pub orbit: Vec<DiagTriple>,
    /// Both edge maps are involutions and `x1·N2 = N4`.
    pub closed: bool,
}

impl ConjScheme {
    pub fn grid(&self) -> [[DiagTriple; 2]; 2] {
        [[self.nodes[0], self.nodes[1]], [self.nodes[2], self.nodes[3]]]
    }
}

/// Builds the block seeded by `(a1, a2)` at vanish count `vanish`;
/// `b1 = [first diagonal of x0, first diagonal of x1]`.
pub fn conj_scheme(a1: DiagTriple, a2: DiagTriple, vanish: usize, b1: [DiagTriple; 2]) -> ConjScheme {
    let c0 = |a: DiagTriple| conj_second(a1, a, b1[0], vanish);
    let c1 = |a: DiagTriple| conj_second(a1, a, b1[1], vanish);
    let n1 = a2;
    let n2 = c0(n1);
    let n3 = c1(n1);
    let n4 = c0(n3);
    let nodes = [n1, n2, n3, n4];
    let closed = c1(n2) == n4
        && nodes.iter().all(|&n| c0(c0(n)) == n && c1(c1(n)) == n)
        && c0(n2) == n1
        && c1(n4) == n2;
    let edges = vec![
        Edge { from: 0, to: 1, label: EdgeLabel::X0 },
        Edge { from: 0, to: 2, label: EdgeLabel::X1 },
        Edge { from: 1, to: 3, label: EdgeLabel::X1 },
        Edge { from: 2, to: 3, label: EdgeLabel::X0 },
    ];
    let mut orbit = nodes.to_vec();
    orbit.sort_unstable();
    orbit.dedup();
    ConjScheme {
        leading: a1,
        vanish,
        nodes,
        edges,
        orbit,
        closed,
    }
}

/// A full figure: the block for `x*^n` on the left and for `y*^n` on the right.
#[derive(Clone, Debug, Serialize)]
pub struct SchemeFigure {
    pub family: Family,
    pub regime: Regime,
    pub exponent: u64,
    pub level: usize,
    pub left: ConjScheme,
    pub right: ConjScheme,
    /// Every node agrees with the first two diagonals of the actual
    /// conjugate computed by full multiplication.
    #[serde(rename = "genericAgrees")]
    pub generic_agrees: bool,
}

impl SchemeFigure {
    /// Value-for-value comparison with the published figure.
    pub fn matches_printed(&self) -> bool {
        let p = &self.family.printed()[self.regime.index()];
        let as_grid = |g: &[[[u16; 3]; 2]; 2]| g.map(|row| row.map(|c| DiagTriple::new(c).expect("table codes")));
        self.left.leading.to_array() == p.leading
            && self.right.leading.to_array() == p.leading
            && self.left.grid() == as_grid(&p.left)
            && self.right.grid() == as_grid(&p.right)
    }
}

/// Computes the figure for `family` in `regime` from the actual powers.
///
/// The level is the smallest one (at least 5) where the second non-trivial
/// diagonal of the power survives truncation.
pub fn scheme_figure(family: Family, regime: Regime) -> Result<SchemeFigure> {
    let n = regime.exponent();
    let level = (n as usize + 1).max(5);
    let gs = GeneratorSet::new(level)?;
    let b1 = [gs.x(0).diag(1), gs.x(1).diag(1)];
    let (sx, sy) = family.pair();
    let mut blocks = Vec::with_capacity(2);
    let mut generic_agrees = true;
    for s in [sx, sy] {
        let p = gs.spherical(s).pow(n);
        let lp = p.first_two_diagonals()?;
        let scheme = conj_scheme(lp.a1, lp.a2, lp.vanish, b1);
        generic_agrees &= generic_nodes(&gs, &p)? == scheme.nodes;
        blocks.push(scheme);
    }
    let right = blocks.pop().expect("two blocks");
    let left = blocks.pop().expect("two blocks");
    Ok(SchemeFigure {
        family,
        regime,
        exponent: n,
        level,
        left,
        right,
        generic_agrees,
    })
}

/// Second diagonals of `p`, `x0 p x0⁻¹`, `x1 p x1⁻¹`, `x0 x1 p x1⁻¹ x0⁻¹`.
fn generic_nodes(gs: &GeneratorSet, p: &GroupElement) -> Result<[DiagTriple; 4]> {
    let q = p.conjugate_by(gs.x(1))?;
    let mut out = [DiagTriple::ZERO; 4];
    for (slot, e) in out.iter_mut().zip([p.clone(), p.conjugate_by(gs.x(0))?, q.clone(), q.conjugate_by(gs.x(0))?]) {
        *slot = e.first_two_diagonals()?.a2;
    }
    Ok(out)
}

/// All twelve figures, by family then regime.
pub fn all_figures() -> Result<Vec<SchemeFigure>> {
    let mut out = Vec::with_capacity(12);
    for family in Family::ALL {
        for regime in Regime::ALL {
            out.push(scheme_figure(family, regime)?);
        }
    }
    Ok(out)
}

impl fmt::Display for SchemeFigure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (sx, sy) = self.family.pair();
        let n = self.exponent;
        writeln!(
            f,
            "pair ({sx}^{n}, {sy}^{n}) = M_{}(A1 = {}, A2, ...)",
            self.left.vanish, self.left.leading
        )?;
        let l = self.left.grid();
        let r = self.right.grid();
        let w = l
            .iter()
            .chain(r.iter())
            .flatten()
            .map(|t| t.to_string().len())
            .max()
            .unwrap_or(0);
        let conj0 = " <-x0-> ";
        let row = |f: &mut fmt::Formatter<'_>, a: [DiagTriple; 2], b: [DiagTriple; 2]| {
            writeln!(
                f,
                "  {:<w$}{conj0}{:<w$}    {:<w$}{conj0}{:<w$}",
                a[0].to_string(),
                a[1].to_string(),
                b[0].to_string(),
                b[1].to_string()
            )
        };
        row(f, l[0], r[0])?;
        writeln!(
            f,
            "  {:<w$}{}{:<w$}    {:<w$}{}{:<w$}",
            "x1",
            " ".repeat(conj0.len()),
            "x1",
            "x1",
            " ".repeat(conj0.len()),
            "x1"
        )?;
        row(f, l[1], r[1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::band::triple;

    #[test]
    fn base_xy_orbit() {
        let gs = GeneratorSet::new(3).unwrap();
        let b1 = [gs.x(0).diag(1), gs.x(1).diag(1)];
        let s = conj_scheme(triple(28, 235, 129), triple(29, 211, 263), 0, b1);
        assert!(s.closed);
        assert_eq!(s.nodes[1], triple(19, 64, 355));
        assert_eq!(s.nodes[2], triple(19, 64, 355));
        assert_eq!(s.orbit.len(), 2);
    }

    #[test]
    fn appendix_seeds() {
        let gs = GeneratorSet::new(3).unwrap();
        let b1 = [gs.x(0).diag(1), gs.x(1).diag(1)];
        let s = conj_scheme(triple(26, 26, 26), triple(0, 157, 106), 1, b1);
        assert_eq!(s.orbit, vec![triple(0, 157, 106), triple(0, 247, 157)]);
        let s = conj_scheme(triple(23, 224, 138), triple(26, 26, 26), 3, b1);
        assert_eq!(s.orbit, vec![triple(20, 137, 126), triple(26, 26, 26)]);
    }

    #[test]
    fn every_figure_matches_and_agrees() {
        for fig in all_figures().unwrap() {
            assert!(fig.left.closed && fig.right.closed, "{fig}");
            assert!(fig.generic_agrees, "{fig}");
            assert!(fig.matches_printed(), "{fig}");
        }
    }

    #[test]
    fn parse_names() {
        assert_eq!("x,y".parse::<Family>().unwrap(), Family::XY);
        assert_eq!("x1, y1".parse::<Family>().unwrap(), Family::X1Y1);
        assert_eq!("cube".parse::<Regime>().unwrap(), Regime::Cube);
        assert!("fifth".parse::<Regime>().is_err());
    }
}
