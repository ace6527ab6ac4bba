//! The prime field F_p.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

/// Largest modulus accepted; keeps every product of two residues inside `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    NotPrime(u64),
    TooLarge(u64),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{p} is not prime"),
            FieldError::TooLarge(p) => write!(f, "modulus {p} exceeds {MAX_MODULUS}"),
        }
    }
}

impl core::error::Error for FieldError {}

/// A validated prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= MAX_MODULUS {
            return Err(FieldError::TooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.p
    }

    /// Characteristic as a `u32`, convenient for exponent arithmetic.
    #[inline]
    pub fn characteristic(self) -> u32 {
        self.p as u32
    }

    pub fn zero(self) -> Fp {
        Fp {
            value: 0,
            field: self,
        }
    }

    pub fn one(self) -> Fp {
        Fp {
            value: 1 % self.p,
            field: self,
        }
    }

    /// Reduces an arbitrary signed integer into the field.
    pub fn element(self, v: i64) -> Fp {
        Fp {
            value: self.reduce_signed(v),
            field: self,
        }
    }

    #[inline]
    pub(crate) fn reduce_signed(self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub(crate) fn add_raw(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn sub_raw(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub(crate) fn neg_raw(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub(crate) fn mul_raw(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub(crate) fn pow_raw(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse via Fermat; `a` must be nonzero.
    pub(crate) fn inv_raw(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow_raw(a, self.p - 2)
    }
}

/// An element of F_p together with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    field: PrimeField,
}

pub type PrimeFieldElement = Fp;

impl Fp {
    pub fn new(field: PrimeField, value: u64) -> Self {
        Fp {
            value: value % field.p,
            field,
        }
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn field(self) -> PrimeField {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, exp: u64) -> Fp {
        Fp {
            value: self.field.pow_raw(self.value, exp),
            field: self.field,
        }
    }

    pub fn inverse(self) -> Option<Fp> {
        if self.is_zero() {
            None
        } else {
            Some(Fp {
                value: self.field.inv_raw(self.value),
                field: self.field,
            })
        }
    }

    /// The absolute Frobenius `a -> a^p`; the identity on F_p.
    pub fn frobenius(self) -> Fp {
        self.pow(self.field.p)
    }

    fn check(self, other: Fp) {
        assert_eq!(
            self.field, other.field,
            "arithmetic between elements of different prime fields"
        );
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.check(rhs);
        Fp {
            value: self.field.add_raw(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.check(rhs);
        Fp {
            value: self.field.sub_raw(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.check(rhs);
        Fp {
            value: self.field.mul_raw(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: self.field.neg_raw(self.value),
            field: self.field,
        }
    }
}
