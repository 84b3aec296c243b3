//! The two-world frame `t < s` shared by the propositional and predicate
//! logics.

use std::fmt;

use serde::Serialize;

/// A world of the frame. `T` is the actual world.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum World {
    T,
    S,
}

impl World {
    /// The worlds `w'` with `w <= w'`.
    pub fn successors(self) -> &'static [World] {
        match self {
            World::T => &[World::T, World::S],
            World::S => &[World::S],
        }
    }
}

impl fmt::Display for World {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            World::T => "t",
            World::S => "s",
        })
    }
}

/// Truth profile `(at t, at s)`. The profile true-at-t, false-at-s
/// violates persistence and has no constructor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ThreeVal {
    /// `(⊥,⊥)`, read as out.
    FF,
    /// `(⊥,⊤)`, read as undecided.
    FT,
    /// `(⊤,⊤)`, read as in.
    TT,
}

impl ThreeVal {
    pub const ALL: [ThreeVal; 3] = [ThreeVal::FF, ThreeVal::FT, ThreeVal::TT];
    pub const DECIDED: [ThreeVal; 2] = [ThreeVal::FF, ThreeVal::TT];

    #[inline]
    pub fn at(self, w: World) -> bool {
        match self {
            ThreeVal::FF => false,
            ThreeVal::FT => w == World::S,
            ThreeVal::TT => true,
        }
    }

    /// `None` for the forbidden profile.
    pub fn from_worlds(t: bool, s: bool) -> Option<ThreeVal> {
        match (t, s) {
            (false, false) => Some(ThreeVal::FF),
            (false, true) => Some(ThreeVal::FT),
            (true, true) => Some(ThreeVal::TT),
            (true, false) => None,
        }
    }

    pub fn is_decided(self) -> bool {
        self != ThreeVal::FT
    }
}

impl fmt::Display for ThreeVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThreeVal::FF => "(f,f)",
            ThreeVal::FT => "(f,t)",
            ThreeVal::TT => "(t,t)",
        })
    }
}

/// Counter over `radix^len` digit vectors; the last position varies fastest.
pub(crate) struct Odometer {
    digits: Vec<usize>,
    radix: usize,
    done: bool,
}

impl Odometer {
    pub(crate) fn new(len: usize, radix: usize) -> Self {
        Odometer {
            digits: vec![0; len],
            radix,
            done: radix == 0 && len > 0,
        }
    }

    /// Current digits, `None` once exhausted.
    pub(crate) fn next_digits(&self) -> Option<&[usize]> {
        (!self.done).then_some(self.digits.as_slice())
    }

    /// Moves to the next combination. Returns false when wrapped around.
    pub(crate) fn advance(&mut self) -> bool {
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                return false;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.radix {
                return true;
            }
            self.digits[i] = 0;
        }
    }
}
