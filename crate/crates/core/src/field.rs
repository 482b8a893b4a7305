//! Arithmetic in the prime field GF(p).

use std::fmt;

use crate::error::{HkError, Result};

/// The prime field GF(p) for a machine-word prime `p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(HkError::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn characteristic(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + (self.p - b)
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.p) {
            return Err(HkError::DivisionByZero(self.p));
        }
        let (mut r0, mut r1) = (self.p as i64, (a % self.p) as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(self.reduce_i64(t0))
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn element(self, v: i64) -> FieldElement {
        FieldElement {
            residue: self.reduce_i64(v),
            p: self.p,
        }
    }
}

/// A residue class in GF(p), carrying its characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    residue: u32,
    p: u32,
}

impl FieldElement {
    pub fn new(field: PrimeField, v: i64) -> Self {
        field.element(v)
    }

    pub fn residue(self) -> u32 {
        self.residue
    }

    pub fn characteristic(self) -> u32 {
        self.p
    }

    pub fn field(self) -> PrimeField {
        PrimeField { p: self.p }
    }

    pub fn is_zero(self) -> bool {
        self.residue == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Inv,
    Neg,
}

/// Applies `op` to `a` (and `b` for binary operations).
pub fn field_arith(op: FieldOp, a: FieldElement, b: Option<FieldElement>) -> Result<FieldElement> {
    let field = a.field();
    let rhs = || -> Result<u32> {
        let b = b.ok_or_else(|| HkError::Invalid("binary field operation needs two operands".into()))?;
        if b.p != a.p {
            return Err(HkError::CharMismatch(a.p, b.p));
        }
        Ok(b.residue)
    };
    let residue = match op {
        FieldOp::Add => field.add(a.residue, rhs()?),
        FieldOp::Sub => field.sub(a.residue, rhs()?),
        FieldOp::Mul => field.mul(a.residue, rhs()?),
        FieldOp::Neg => field.neg(a.residue),
        FieldOp::Inv => field.inv(a.residue)?,
    };
    Ok(FieldElement { residue, p: a.p })
}
