//! Literals encoded as `2·var + negated`.

use std::fmt;
use std::ops::Not;

/// A possibly negated variable.
///
/// The packed code places `x` and `¬x` next to each other, so a literal's code
/// doubles as an index into per-literal arrays of length `2n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal(u32);

impl Literal {
    pub fn new(var: usize, positive: bool) -> Self {
        let var = u32::try_from(var).expect("variable index exceeds u32");
        Literal(2 * var + u32::from(!positive))
    }

    pub fn positive(var: usize) -> Self {
        Self::new(var, true)
    }

    pub fn negative(var: usize) -> Self {
        Self::new(var, false)
    }

    /// Rebuilds a literal from its packed code.
    pub fn from_code(code: usize) -> Self {
        Literal(u32::try_from(code).expect("literal code exceeds u32"))
    }

    /// Packed code in `[0, 2n)`.
    pub fn code(self) -> usize {
        self.0 as usize
    }

    /// The underlying variable `|l|`.
    pub fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    /// `+1` for a positive literal, `-1` for a negated one.
    pub fn sign(self) -> i8 {
        if self.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Value of the literal when its variable takes `value`.
    pub fn eval(self, value: bool) -> bool {
        value == self.is_positive()
    }

    /// DIMACS integer: `var+1` or `-(var+1)`.
    pub fn to_dimacs(self) -> i64 {
        let v = self.var() as i64 + 1;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }

    /// Inverse of [`Literal::to_dimacs`]; `None` for zero.
    pub fn from_dimacs(x: i64) -> Option<Self> {
        if x == 0 {
            return None;
        }
        let var = usize::try_from(x.unsigned_abs() - 1).ok()?;
        Some(Self::new(var, x > 0))
    }
}

impl Not for Literal {
    type Output = Literal;

    fn not(self) -> Literal {
        Literal(self.0 ^ 1)
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "x{}", self.var())
        } else {
            write!(f, "¬x{}", self.var())
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}
