//! Operator expressions like `R^2∘STIRLING` or `M^-1∘EULER`.
//!
//! Grammar:
//!
//! ```text
//! expr   := factor { sep factor }
//! sep    := "∘" | "o" | "."
//! factor := NAME [ "^" POWER ]
//! POWER  := SIGNED-INT | "{" SIGNED-INT "}"
//! ```
//!
//! Factors are written left to right and applied right to left. Printing
//! always uses `∘`.

use std::fmt;
use std::str::FromStr;

use crate::conv::BinaryOp;
use crate::error::ParseError;
use crate::seq::Offset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpName {
    R,
    L,
    N,
    M,
    Binomial,
    Stirling,
    Conv,
    ExpConv,
    FConv(BinaryOp),
    Mobius,
    Weigh,
    Euler,
    Partition,
    Invert,
    Revert,
    Exp,
}

impl OpName {
    pub const ALL: [OpName; 20] = [
        OpName::R,
        OpName::L,
        OpName::N,
        OpName::M,
        OpName::Binomial,
        OpName::Stirling,
        OpName::Conv,
        OpName::ExpConv,
        OpName::FConv(BinaryOp::Lcm),
        OpName::FConv(BinaryOp::Gcd),
        OpName::FConv(BinaryOp::And),
        OpName::FConv(BinaryOp::Or),
        OpName::FConv(BinaryOp::Xor),
        OpName::Mobius,
        OpName::Weigh,
        OpName::Euler,
        OpName::Partition,
        OpName::Invert,
        OpName::Revert,
        OpName::Exp,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            OpName::R => "R",
            OpName::L => "L",
            OpName::N => "N",
            OpName::M => "M",
            OpName::Binomial => "BINOMIAL",
            OpName::Stirling => "STIRLING",
            OpName::Conv => "CONV",
            OpName::ExpConv => "EXP-CONV",
            OpName::FConv(BinaryOp::Lcm) => "LCM-CONV",
            OpName::FConv(BinaryOp::Gcd) => "GCD-CONV",
            OpName::FConv(BinaryOp::And) => "AND-CONV",
            OpName::FConv(BinaryOp::Or) => "OR-CONV",
            OpName::FConv(BinaryOp::Xor) => "XOR-CONV",
            OpName::Mobius => "MÖBIUS",
            OpName::Weigh => "WEIGH",
            OpName::Euler => "EULER",
            OpName::Partition => "PARTITION",
            OpName::Invert => "INVERT",
            OpName::Revert => "REVERT",
            OpName::Exp => "EXP",
        }
    }

    /// R, L, N and M rearrange terms; everything else is a transform.
    pub fn is_auxiliary(self) -> bool {
        matches!(self, OpName::R | OpName::L | OpName::N | OpName::M)
    }

    /// Whether `self^-k` is meaningful. `M^-1` is accepted separately as
    /// the marker of a doubling eigen-equation.
    pub fn is_invertible(self) -> bool {
        matches!(
            self,
            OpName::N
                | OpName::Binomial
                | OpName::Stirling
                | OpName::Mobius
                | OpName::Euler
                | OpName::Invert
                | OpName::Exp
                | OpName::Revert
        )
    }

    /// The offset the transform is defined on, or `None` when it accepts
    /// either.
    pub fn native_offset(self) -> Option<Offset> {
        match self {
            OpName::R | OpName::L | OpName::N | OpName::M | OpName::Binomial | OpName::Stirling => {
                None
            }
            OpName::Conv | OpName::ExpConv | OpName::FConv(_) => Some(Offset::Zero),
            _ => Some(Offset::One),
        }
    }

    /// Looks up a name, returning the power multiplier for aliases.
    fn lookup(name: &str) -> Option<(OpName, i32)> {
        if name == "MOBIUS-INV" || name == "MÖBIUS-INV" {
            return Some((OpName::Mobius, -1));
        }
        if name == "MOBIUS" {
            return Some((OpName::Mobius, 1));
        }
        OpName::ALL
            .into_iter()
            .find(|op| op.as_str() == name)
            .map(|op| (op, 1))
    }
}

impl fmt::Display for OpName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Factor {
    pub name: OpName,
    pub power: i32,
}

impl Factor {
    pub fn new(name: OpName, power: i32) -> Self {
        Factor { name, power }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.power == 1 {
            write!(f, "{}", self.name)
        } else {
            write!(f, "{}^{}", self.name, self.power)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransformExpr {
    factors: Vec<Factor>,
}

impl TransformExpr {
    /// Factors in written order, outermost first.
    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Builds an expression without the textual checks, except that
    /// it must be nonempty.
    pub fn from_factors(factors: Vec<Factor>) -> Option<Self> {
        if factors.is_empty() {
            None
        } else {
            Some(TransformExpr { factors })
        }
    }

    pub fn single(name: OpName, power: i32) -> Self {
        TransformExpr {
            factors: vec![Factor::new(name, power)],
        }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Parser::new(text).expr()
    }

    /// The offset the expression must act on, if any factor fixes one.
    pub fn native_offset(&self) -> Option<Offset> {
        self.factors.iter().find_map(|f| f.name.native_offset())
    }

    /// Offset to use when the caller gives none. Stirling triangles are
    /// taken at base 1, everything else unconstrained at 0.
    pub fn default_offset(&self) -> Offset {
        self.native_offset().unwrap_or_else(|| {
            if self.factors.iter().any(|f| f.name == OpName::Stirling) {
                Offset::One
            } else {
                Offset::Zero
            }
        })
    }

    /// Whether every factor is a transform (no R, L, N or M).
    pub fn is_pure(&self) -> bool {
        self.factors.iter().all(|f| !f.name.is_auxiliary())
    }
}

impl fmt::Display for TransformExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("∘")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

impl FromStr for TransformExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TransformExpr::parse(s)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.pos + 1, message)
    }

    fn expr(&mut self) -> Result<TransformExpr, ParseError> {
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.err("empty expression"));
        }
        let mut factors = Vec::new();
        let mut offset: Option<(Offset, OpName)> = None;
        loop {
            self.skip_ws();
            let start = self.pos;
            let factor = self.factor()?;
            if let Some(o) = factor.name.native_offset() {
                match offset {
                    Some((prev, name)) if prev != o => {
                        return Err(ParseError::new(
                            start + 1,
                            format!(
                                "{} acts on offset {o} but {name} acts on offset {prev}",
                                factor.name
                            ),
                        ));
                    }
                    None => offset = Some((o, factor.name)),
                    _ => {}
                }
            }
            factors.push(factor);
            self.skip_ws();
            match self.peek() {
                None => break,
                Some('∘' | 'o' | '.') => self.pos += 1,
                Some(c) => {
                    return Err(self.err(format!("expected `∘` between factors, found `{c}`")))
                }
            }
        }
        Ok(TransformExpr { factors })
    }

    fn factor(&mut self) -> Result<Factor, ParseError> {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_uppercase() || c == 'Ö' || c == '-')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(match self.peek() {
                Some(c) => self.err(format!("expected an operator name, found `{c}`")),
                None => self.err("expected an operator name"),
            });
        }
        let word: String = self.chars[start..self.pos].iter().collect();
        let Some((name, multiplier)) = OpName::lookup(&word) else {
            return Err(ParseError::new(
                start + 1,
                format!("unknown operator `{word}`"),
            ));
        };
        let power_pos = self.pos;
        let power = if self.peek() == Some('^') {
            self.pos += 1;
            self.power()?
        } else {
            1
        };
        let power = power * multiplier;
        if power == 0 {
            return Err(ParseError::new(power_pos + 1, "power must be nonzero"));
        }
        if power < 0 && !name.is_invertible() && !(name == OpName::M && power == -1) {
            return Err(ParseError::new(
                power_pos + 1,
                format!("{name} is not invertible and cannot take power {power}"),
            ));
        }
        Ok(Factor { name, power })
    }

    fn power(&mut self) -> Result<i32, ParseError> {
        let braced = self.peek() == Some('{');
        if braced {
            self.pos += 1;
        }
        let start = self.pos;
        if matches!(self.peek(), Some('-' | '+')) {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        let value = text
            .parse::<i32>()
            .map_err(|_| ParseError::new(start + 1, format!("bad power `{text}`")))?;
        if braced {
            if self.peek() != Some('}') {
                return Err(self.err("expected `}`"));
            }
            self.pos += 1;
        }
        Ok(value)
    }
}
