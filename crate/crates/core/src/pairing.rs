//! Bijections between index tuples and positive integers.
//!
//! All maps use 1-based tuples and values.
//!
//! * `cantor`: the classical pairing `pi(a, b) = (a+b)(a+b+1)/2 + b` on
//!   0-based shifts, folded left to right for arity > 2; injective on all of
//!   `N^n`.
//! * `box`: row-major order on `[1, side]^n -> [1, side^n]`.
//! * `diagonal`: a bijection `[1, side]^n -> [1, side^n]` sending the
//!   diagonal tuple `(i, ..., i)` to `i` and the remaining tuples, in row-major
//!   order, to `side + 1, side + 2, ...`.

use std::fmt;

use crate::error::{LabError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BijectionKind {
    Cantor,
    Box,
    DiagonalFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BijectionSpec {
    kind: BijectionKind,
    arity: usize,
    side: usize,
}

impl BijectionSpec {
    pub fn cantor(arity: usize) -> Self {
        BijectionSpec {
            kind: BijectionKind::Cantor,
            arity,
            side: 0,
        }
    }

    pub fn boxed(arity: usize, side: usize) -> Self {
        BijectionSpec {
            kind: BijectionKind::Box,
            arity,
            side,
        }
    }

    pub fn diagonal_first(arity: usize, side: usize) -> Self {
        BijectionSpec {
            kind: BijectionKind::DiagonalFirst,
            arity,
            side,
        }
    }

    /// Parses `cantor`, `box[:side]` or `diagonal[:side]`; a missing side
    /// defaults to `default_side`.
    pub fn parse(text: &str, arity: usize, default_side: usize) -> Result<Self> {
        let (name, side) = match text.split_once(':') {
            Some((n, s)) => (
                n.trim(),
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| LabError::Pairing(format!("invalid box side `{s}`")))?,
            ),
            None => (text.trim(), default_side),
        };
        match name {
            "cantor" => Ok(Self::cantor(arity)),
            "box" => Ok(Self::boxed(arity, side)),
            "diagonal" | "diag" => Ok(Self::diagonal_first(arity, side)),
            other => Err(LabError::Pairing(format!("unknown bijection `{other}`"))),
        }
    }

    pub fn kind(&self) -> BijectionKind {
        self.kind
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Box side (0 for cantor).
    pub fn side(&self) -> usize {
        self.side
    }

    /// Number of values in the image for finite kinds.
    pub fn range_len(&self) -> Option<u64> {
        match self.kind {
            BijectionKind::Cantor => None,
            _ => (self.side as u64).checked_pow(self.arity as u32),
        }
    }

    pub fn pair(&self, tuple: &[usize]) -> Result<u64> {
        if tuple.len() != self.arity {
            return Err(LabError::Pairing(format!(
                "tuple of length {} given to a bijection of arity {}",
                tuple.len(),
                self.arity
            )));
        }
        if tuple.contains(&0) {
            return Err(LabError::Pairing(format!("tuple {tuple:?} is not 1-based")));
        }
        match self.kind {
            BijectionKind::Cantor => cantor_pair(tuple),
            BijectionKind::Box => Ok(self.row_major(tuple)? + 1),
            BijectionKind::DiagonalFirst => {
                let r = self.row_major(tuple)?;
                if tuple.iter().all(|&i| i == tuple[0]) {
                    return Ok(tuple[0] as u64);
                }
                let before = self.diagonals_before(r);
                Ok(self.side as u64 + (r - before) + 1)
            }
        }
    }

    pub fn unpair(&self, value: u64) -> Result<Vec<usize>> {
        if value == 0 {
            return Err(LabError::Pairing("values are 1-based".into()));
        }
        if self.arity == 0 {
            return Err(LabError::Pairing("arity must be positive".into()));
        }
        match self.kind {
            BijectionKind::Cantor => cantor_unpair(value, self.arity),
            BijectionKind::Box => {
                self.check_range(value)?;
                Ok(self.row_major_tuple(value - 1))
            }
            BijectionKind::DiagonalFirst => {
                self.check_range(value)?;
                let side = self.side as u64;
                if value <= side {
                    return Ok(vec![value as usize; self.arity]);
                }
                // smallest fixed point of r = rank + #{diagonal positions <= r}
                let rank = value - side - 1;
                let mut r = rank;
                loop {
                    let next = rank + self.diagonals_before(r + 1);
                    if next == r {
                        return Ok(self.row_major_tuple(r));
                    }
                    r = next;
                }
            }
        }
    }

    fn check_range(&self, value: u64) -> Result<()> {
        let len = self
            .range_len()
            .ok_or_else(|| LabError::Pairing("box range overflows u64".into()))?;
        if value > len {
            return Err(LabError::Pairing(format!(
                "value {value} outside [1, {len}] for side {} arity {}",
                self.side, self.arity
            )));
        }
        Ok(())
    }

    fn row_major(&self, tuple: &[usize]) -> Result<u64> {
        let side = self.side as u64;
        let mut r: u64 = 0;
        for &i in tuple {
            if i > self.side {
                return Err(LabError::Pairing(format!(
                    "component {i} outside [1, {}] in {tuple:?}",
                    self.side
                )));
            }
            r = r
                .checked_mul(side)
                .and_then(|r| r.checked_add(i as u64 - 1))
                .ok_or_else(|| LabError::Pairing("box index overflows u64".into()))?;
        }
        Ok(r)
    }

    fn row_major_tuple(&self, mut r: u64) -> Vec<usize> {
        let side = self.side as u64;
        let mut out = vec![0; self.arity];
        for slot in (0..self.arity).rev() {
            out[slot] = (r % side) as usize + 1;
            r /= side;
        }
        out
    }

    /// Row-major offset between consecutive diagonal tuples.
    fn diagonal_step(&self) -> u64 {
        let side = self.side as u64;
        (0..self.arity).fold(0u64, |acc, _| acc * side + 1)
    }

    /// Number of diagonal tuples with row-major index strictly below `r`.
    fn diagonals_before(&self, r: u64) -> u64 {
        let step = self.diagonal_step();
        (r.div_ceil(step)).min(self.side as u64)
    }
}

impl fmt::Display for BijectionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            BijectionKind::Cantor => write!(f, "cantor"),
            BijectionKind::Box => write!(f, "box:{}", self.side),
            BijectionKind::DiagonalFirst => write!(f, "diagonal:{}", self.side),
        }
    }
}

fn cantor2(a: u64, b: u64) -> Option<u64> {
    let s = a.checked_add(b)?;
    let tri = if s % 2 == 0 {
        (s / 2).checked_mul(s + 1)?
    } else {
        s.checked_mul(s.checked_add(1)? / 2)?
    };
    tri.checked_add(b)
}

fn cantor_unpair2(z: u64) -> (u64, u64) {
    let z128 = z as u128;
    let w = ((8 * z128 + 1).isqrt() - 1) / 2;
    let t = w * (w + 1) / 2;
    let b = z128 - t;
    let a = w - b;
    (a as u64, b as u64)
}

fn cantor_pair(tuple: &[usize]) -> Result<u64> {
    let mut z = tuple[0] as u64 - 1;
    for &i in &tuple[1..] {
        z = cantor2(z, i as u64 - 1)
            .ok_or_else(|| LabError::Pairing(format!("cantor code of {tuple:?} overflows u64")))?;
    }
    z.checked_add(1)
        .ok_or_else(|| LabError::Pairing("cantor code overflows u64".into()))
}

fn cantor_unpair(value: u64, arity: usize) -> Result<Vec<usize>> {
    let mut z = value - 1;
    let mut out = vec![0usize; arity];
    for slot in (1..arity).rev() {
        let (a, b) = cantor_unpair2(z);
        out[slot] = usize::try_from(b + 1)
            .map_err(|_| LabError::Pairing("component overflows usize".into()))?;
        z = a;
    }
    out[0] = usize::try_from(z + 1)
        .map_err(|_| LabError::Pairing("component overflows usize".into()))?;
    Ok(out)
}
