//! Scalar and value abstractions.
//!
//! [`Scalar`] is the real number type a model or dataset is instantiated
//! with (`f32` or `f64`). [`Value`] is anything a program can be evaluated
//! over: real scalars, single booleans, or 64-row words of a packed truth
//! table.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, ToPrimitive};

use crate::primitives::{BoolOp, Domain, Op, RealOp};

/// Real scalar type used for constants, datasets and real-domain evaluation.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Value + Display + FromStr + Default
{
    fn from_f64_lossy(v: f64) -> Self {
        Self::from_f64(v).unwrap_or_else(Self::nan)
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// A value a program can be evaluated over.
///
/// Every implementation gives every [`Op`] a total definition, so evaluation
/// never faults even if a caller mixes domains. Real ops applied to boolean
/// values treat them as 0/1 and test the result for non-zero; boolean ops
/// applied to reals treat `x > 0` as true and produce 0/1.
pub trait Value: Copy + PartialEq + Debug + Send + Sync + 'static {
    const DOMAIN: Domain;

    fn apply(op: Op, args: &[Self]) -> Self;

    /// Converts a stored constant. Boolean domains read non-zero as true.
    fn from_scalar<T: Scalar>(c: T) -> Self;
}

fn real_op<T: Scalar>(op: RealOp, args: &[T]) -> T {
    let arg = |i: usize| args[i];
    match op {
        RealOp::Add => arg(0) + arg(1),
        RealOp::Sub => arg(0) - arg(1),
        RealOp::Mul => arg(0) * arg(1),
        RealOp::Div => {
            let den = arg(1);
            if den.abs() < T::from_f64_lossy(crate::primitives::DIV_GUARD) {
                T::one()
            } else {
                arg(0) / den
            }
        }
        RealOp::Sin => arg(0).sin(),
        RealOp::Cos => arg(0).cos(),
        RealOp::Exp => arg(0).exp(),
        RealOp::Log => {
            let x = arg(0).abs();
            if x == T::zero() {
                T::zero()
            } else {
                x.ln()
            }
        }
        RealOp::Sqrt => arg(0).abs().sqrt(),
        RealOp::Neg => -arg(0),
        RealOp::One => T::one(),
    }
}

fn bool_word(op: BoolOp, args: &[u64]) -> u64 {
    let arg = |i: usize| args[i];
    match op {
        BoolOp::And => arg(0) & arg(1),
        BoolOp::Or => arg(0) | arg(1),
        BoolOp::Nand => !(arg(0) & arg(1)),
        BoolOp::Nor => !(arg(0) | arg(1)),
        BoolOp::Xor => arg(0) ^ arg(1),
        BoolOp::Xnor => !(arg(0) ^ arg(1)),
        BoolOp::Not => !arg(0),
        BoolOp::True => u64::MAX,
        BoolOp::False => 0,
    }
}

fn bool_single(op: BoolOp, args: &[bool]) -> bool {
    let arg = |i: usize| args[i];
    match op {
        BoolOp::And => arg(0) && arg(1),
        BoolOp::Or => arg(0) || arg(1),
        BoolOp::Nand => !(arg(0) && arg(1)),
        BoolOp::Nor => !(arg(0) || arg(1)),
        BoolOp::Xor => arg(0) != arg(1),
        BoolOp::Xnor => arg(0) == arg(1),
        BoolOp::Not => !arg(0),
        BoolOp::True => true,
        BoolOp::False => false,
    }
}

macro_rules! impl_real_value {
    ($t:ty) => {
        impl Value for $t {
            const DOMAIN: Domain = Domain::Real;

            fn apply(op: Op, args: &[Self]) -> Self {
                match op {
                    Op::Real(r) => real_op(r, args),
                    Op::Bool(b) => {
                        let mut bits = [false; crate::primitives::MAX_ARITY];
                        for (slot, v) in bits.iter_mut().zip(args) {
                            *slot = *v > 0.0;
                        }
                        if bool_single(b, &bits[..args.len()]) {
                            1.0
                        } else {
                            0.0
                        }
                    }
                }
            }

            fn from_scalar<T: Scalar>(c: T) -> Self {
                <$t as Scalar>::from_f64_lossy(c.to_f64_lossy())
            }
        }
    };
}

impl_real_value!(f32);
impl_real_value!(f64);

impl Value for bool {
    const DOMAIN: Domain = Domain::Boolean;

    fn apply(op: Op, args: &[Self]) -> Self {
        match op {
            Op::Bool(b) => bool_single(b, args),
            Op::Real(r) => {
                let mut reals = [0.0f64; crate::primitives::MAX_ARITY];
                for (slot, v) in reals.iter_mut().zip(args) {
                    *slot = if *v { 1.0 } else { 0.0 };
                }
                real_op(r, &reals[..args.len()]) != 0.0
            }
        }
    }

    fn from_scalar<T: Scalar>(c: T) -> Self {
        c != T::zero()
    }
}

/// 64 truth-table rows evaluated at once, one row per bit.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Word(pub u64);

impl Value for Word {
    const DOMAIN: Domain = Domain::Boolean;

    fn apply(op: Op, args: &[Self]) -> Self {
        let mut words = [0u64; crate::primitives::MAX_ARITY];
        for (slot, v) in words.iter_mut().zip(args) {
            *slot = v.0;
        }
        let words = &words[..args.len()];
        match op {
            Op::Bool(b) => Word(bool_word(b, words)),
            Op::Real(r) => {
                // bit-sliced fallback: evaluate every lane on its own
                let mut out = 0u64;
                for lane in 0..64 {
                    let mut lanes = [false; crate::primitives::MAX_ARITY];
                    for (slot, w) in lanes.iter_mut().zip(words) {
                        *slot = (w >> lane) & 1 == 1;
                    }
                    if bool::apply(Op::Real(r), &lanes[..words.len()]) {
                        out |= 1 << lane;
                    }
                }
                Word(out)
            }
        }
    }

    fn from_scalar<T: Scalar>(c: T) -> Self {
        if c != T::zero() {
            Word(u64::MAX)
        } else {
            Word(0)
        }
    }
}
