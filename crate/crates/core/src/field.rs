//! Exact coefficient arithmetic: rationals (with an `i64` fast path) and
//! prime fields of characteristic below 2^31.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The coefficient field of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    characteristic: u32,
}

impl Field {
    pub const RATIONALS: Field = Field { characteristic: 0 };

    pub fn rationals() -> Self {
        Self::RATIONALS
    }

    /// The prime field `F_p`. Fails unless `p` is a prime below `2^31`.
    pub fn prime(p: u32) -> Result<Self> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::BadCharacteristic(p));
        }
        Ok(Field { characteristic: p })
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn is_finite(&self) -> bool {
        self.characteristic != 0
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        if self.characteristic == 0 {
            Scalar::Small(Ratio::from_integer(v))
        } else {
            let p = self.characteristic as i64;
            Scalar::Mod(v.rem_euclid(p) as u32, self.characteristic)
        }
    }

    /// `num / den`; `den` must be nonzero in the field.
    pub fn from_fraction(&self, num: i64, den: i64) -> Scalar {
        self.from_i64(num) * self.from_i64(den).inv()
    }

    /// All elements, in increasing order of representative. Only for finite fields.
    pub fn elements(&self) -> Vec<Scalar> {
        assert!(self.is_finite(), "cannot enumerate an infinite field");
        (0..self.characteristic)
            .map(|v| Scalar::Mod(v, self.characteristic))
            .collect()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.characteristic == 0 {
            write!(f, "Q")
        } else {
            write!(f, "F_{}", self.characteristic)
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element. Rationals that fit in `i64/i64` stay in the `Small`
/// variant; `Big` is only used when they do not, so derived equality and
/// hashing are sound.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Small(Ratio<i64>),
    Big(BigRational),
    Mod(u32, u32),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Small(r) => r.is_zero(),
            Scalar::Big(r) => r.is_zero(),
            Scalar::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Small(r) => r.is_one(),
            Scalar::Big(r) => r.is_one(),
            Scalar::Mod(v, _) => *v == 1,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Mod(_, p) => Field { characteristic: *p },
            _ => Field::RATIONALS,
        }
    }

    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Small(r) => Scalar::Small(r.recip()),
            Scalar::Big(r) => Scalar::from_big(r.recip()),
            Scalar::Mod(v, p) => Scalar::Mod(mod_pow(*v as u64, *p as u64 - 2, *p as u64) as u32, *p),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Scalar::Small(r) => BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Scalar::Big(r) => r.clone(),
            Scalar::Mod(..) => unreachable!("prime field element used as rational"),
        }
    }

    fn from_big(r: BigRational) -> Scalar {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => Scalar::Small(Ratio::new_raw(n, d)),
            _ => Scalar::Big(r),
        }
    }

    /// Nonnegative representative for prime field elements, used for enumeration.
    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::Mod(v, _) => Some(*v),
            _ => None,
        }
    }
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn small_ok(r: &Ratio<i64>) -> bool {
    *r.numer() != i64::MIN && *r.denom() != i64::MIN
}

macro_rules! rational_op {
    ($a:expr, $b:expr, $checked:ident, $op:tt) => {
        match ($a, $b) {
            (Scalar::Mod(x, p), Scalar::Mod(y, q)) => {
                debug_assert_eq!(p, q, "mixed characteristics");
                let p64 = *p as u64;
                Scalar::Mod(rational_op!(@mod x, y, p64, $op) as u32, *p)
            }
            (Scalar::Small(x), Scalar::Small(y)) => match x.$checked(y) {
                Some(r) if small_ok(&r) => Scalar::Small(r),
                _ => Scalar::from_big($a.to_big() $op $b.to_big()),
            },
            (a, b) => Scalar::from_big(a.to_big() $op b.to_big()),
        }
    };
    (@mod $x:expr, $y:expr, $p:expr, +) => { (*$x as u64 + *$y as u64) % $p };
    (@mod $x:expr, $y:expr, $p:expr, -) => { (*$x as u64 + $p - *$y as u64) % $p };
    (@mod $x:expr, $y:expr, $p:expr, *) => { (*$x as u64 * *$y as u64) % $p };
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        rational_op!(self, rhs, checked_add, +)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        rational_op!(self, rhs, checked_sub, -)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        rational_op!(self, rhs, checked_mul, *)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Small(r) if *r.numer() != i64::MIN => Scalar::Small(-*r),
            Scalar::Mod(v, p) => Scalar::Mod(if *v == 0 { 0 } else { p - v }, *p),
            other => Scalar::from_big(-other.to_big()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Small(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Big(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod(v, _) => write!(f, "{v}"),
        }
    }
}

impl Scalar {
    /// Whether printing this scalar needs a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Small(r) => r.is_negative(),
            Scalar::Big(r) => r.is_negative(),
            Scalar::Mod(..) => false,
        }
    }
}
