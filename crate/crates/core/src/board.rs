//! Riders, squares and the attack relation.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A basic move vector, stored reduced by gcd and with a canonical sign
/// (`dx > 0`, or `dx == 0 && dy > 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BasicMove {
    dx: i64,
    dy: i64,
}

impl BasicMove {
    pub fn new(dx: i64, dy: i64) -> Result<Self> {
        if dx == 0 && dy == 0 {
            return Err(Error::InvalidRider("basic move (0,0)".into()));
        }
        let g = dx.gcd(&dy);
        let (mut dx, mut dy) = (dx / g, dy / g);
        if dx < 0 || (dx == 0 && dy < 0) {
            dx = -dx;
            dy = -dy;
        }
        Ok(BasicMove { dx, dy })
    }

    pub fn dx(&self) -> i64 {
        self.dx
    }

    pub fn dy(&self) -> i64 {
        self.dy
    }

    /// True iff `(ddx, ddy)` is a nonzero integral multiple of this move.
    pub fn divides(&self, ddx: i64, ddy: i64) -> bool {
        if ddx == 0 && ddy == 0 {
            return false;
        }
        // Reduced moves: parallel integral vectors are automatically integral multiples.
        ddx * self.dy == ddy * self.dx
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rider {
    name: String,
    moves: Vec<BasicMove>,
}

impl Rider {
    /// Builds a rider, merging parallel moves. Fails on an empty move set.
    pub fn new(name: impl Into<String>, moves: impl IntoIterator<Item = BasicMove>) -> Result<Self> {
        let mut moves: Vec<BasicMove> = moves.into_iter().collect();
        moves.sort();
        moves.dedup();
        if moves.is_empty() {
            return Err(Error::InvalidRider("empty move set".into()));
        }
        Ok(Rider { name: name.into(), moves })
    }

    pub fn bishop() -> Self {
        Rider { name: "bishop".into(), moves: vec![BasicMove { dx: 1, dy: -1 }, BasicMove { dx: 1, dy: 1 }] }
    }

    pub fn rook() -> Self {
        Rider { name: "rook".into(), moves: vec![BasicMove { dx: 0, dy: 1 }, BasicMove { dx: 1, dy: 0 }] }
    }

    pub fn queen() -> Self {
        let mut moves = Self::bishop().moves;
        moves.extend(Self::rook().moves);
        Rider::new("queen", moves).expect("nonempty")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn moves(&self) -> &[BasicMove] {
        &self.moves
    }

    pub fn is_bishop(&self) -> bool {
        self.moves == Self::bishop().moves
    }
}

impl FromStr for Rider {
    type Err = Error;

    /// Accepts `bishop`, `rook`, `queen`, or an explicit list `dx,dy;dx,dy;...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.to_ascii_lowercase().as_str() {
            "bishop" => return Ok(Rider::bishop()),
            "rook" => return Ok(Rider::rook()),
            "queen" => return Ok(Rider::queen()),
            _ => {}
        }
        let mut moves = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (a, b) =
                part.split_once(',').ok_or_else(|| Error::InvalidRider(format!("expected dx,dy in {part:?}")))?;
            let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| Error::InvalidRider(format!("{t:?}: {e}")));
            moves.push(BasicMove::new(parse(a)?, parse(b)?)?);
        }
        let rider = Rider::new(s, moves)?;
        if rider.is_bishop() {
            return Ok(Rider::bishop());
        }
        Ok(rider)
    }
}

impl fmt::Display for Rider {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// A board square with 1-based coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Square {
    pub x: i64,
    pub y: i64,
}

impl Square {
    pub fn new(x: i64, y: i64) -> Self {
        Square { x, y }
    }

    pub fn on_board(&self, n: i64) -> bool {
        (1..=n).contains(&self.x) && (1..=n).contains(&self.y)
    }
}

/// A labelled placement of pieces on an `n × n` board.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    n: i64,
    pieces: Vec<Square>,
}

impl Configuration {
    pub fn new(n: i64, pieces: Vec<Square>) -> Result<Self> {
        if let Some(s) = pieces.iter().find(|s| !s.on_board(n)) {
            return Err(Error::InvalidArgument(format!("square {s:?} is off the {n}x{n} board")));
        }
        for (i, a) in pieces.iter().enumerate() {
            if pieces[i + 1..].contains(a) {
                return Err(Error::InvalidArgument(format!("square {a:?} is occupied twice")));
            }
        }
        Ok(Configuration { n, pieces })
    }

    pub fn board_size(&self) -> i64 {
        self.n
    }

    pub fn pieces(&self) -> &[Square] {
        &self.pieces
    }
}

/// Whether a rider on `a` attacks `b`. The squares must be distinct.
pub fn attacks(a: Square, b: Square, rider: &Rider) -> bool {
    assert_ne!(a, b, "attacks() requires distinct squares");
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    rider.moves.iter().any(|m| m.divides(dx, dy))
}

pub fn is_nonattacking(c: &Configuration, rider: &Rider) -> bool {
    let p = &c.pieces;
    (0..p.len()).all(|i| (i + 1..p.len()).all(|j| !attacks(p[i], p[j], rider)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sq(x: i64, y: i64) -> Square {
        Square::new(x, y)
    }

    #[test]
    fn bishop_attacks() {
        let b = Rider::bishop();
        assert!(attacks(sq(1, 1), sq(3, 3), &b));
        assert!(!attacks(sq(1, 1), sq(2, 3), &b));
        assert!(attacks(sq(2, 5), sq(4, 3), &b));
    }

    #[test]
    #[should_panic]
    fn attacks_rejects_same_square() {
        attacks(sq(2, 2), sq(2, 2), &Rider::bishop());
    }

    #[test]
    fn nonattacking_examples() {
        let b = Rider::bishop();
        let c = Configuration::new(2, vec![sq(1, 1), sq(1, 2)]).unwrap();
        assert!(is_nonattacking(&c, &b));
        let c = Configuration::new(2, vec![sq(1, 1), sq(2, 2)]).unwrap();
        assert!(!is_nonattacking(&c, &b));
        // (1,3) and (3,1) share the anti-diagonal x + y = 4
        let c = Configuration::new(3, vec![sq(1, 1), sq(1, 3), sq(3, 1)]).unwrap();
        assert!(!is_nonattacking(&c, &b));
        let c = Configuration::new(3, vec![sq(1, 1), sq(1, 2), sq(1, 3)]).unwrap();
        assert!(is_nonattacking(&c, &b));
    }

    #[test]
    fn configuration_validation() {
        assert!(Configuration::new(2, vec![sq(3, 1)]).is_err());
        assert!(Configuration::new(2, vec![sq(1, 1), sq(1, 1)]).is_err());
    }

    #[test]
    fn canonical_moves() {
        let m = BasicMove::new(-2, 2).unwrap();
        assert_eq!((m.dx(), m.dy()), (1, -1));
        let m = BasicMove::new(0, -3).unwrap();
        assert_eq!((m.dx(), m.dy()), (0, 1));
        assert!(BasicMove::new(0, 0).is_err());
    }

    #[test]
    fn parse_riders() {
        assert_eq!("bishop".parse::<Rider>().unwrap(), Rider::bishop());
        assert!("1,1;-1,1".parse::<Rider>().unwrap().is_bishop());
        let nightrider: Rider = "1,2;2,1;1,-2;2,-1".parse().unwrap();
        assert_eq!(nightrider.moves().len(), 4);
        // parallel moves collapse
        assert_eq!("1,1;2,2".parse::<Rider>().unwrap().moves().len(), 1);
        assert!("".parse::<Rider>().is_err());
        assert!("1;2".parse::<Rider>().is_err());
        assert!("0,0".parse::<Rider>().is_err());
    }

    proptest! {
        #[test]
        fn attack_symmetric_and_translation_invariant(
            ax in -20i64..20, ay in -20i64..20, bx in -20i64..20, by in -20i64..20,
            tx in -10i64..10, ty in -10i64..10,
        ) {
            prop_assume!((ax, ay) != (bx, by));
            for r in [Rider::bishop(), Rider::queen(), "1,2;2,-1".parse().unwrap()] {
                let (a, b) = (sq(ax, ay), sq(bx, by));
                prop_assert_eq!(attacks(a, b, &r), attacks(b, a, &r));
                prop_assert_eq!(attacks(a, b, &r), attacks(sq(ax + tx, ay + ty), sq(bx + tx, by + ty), &r));
            }
            let bishop = attacks(sq(ax, ay), sq(bx, by), &Rider::bishop());
            prop_assert_eq!(bishop, (ax - bx).abs() == (ay - by).abs());
        }
    }
}
