//! Primitive operators and function sets.

use serde::{Deserialize, Serialize};

use crate::error::{GpError, Result};

/// Largest arity of any built-in primitive.
pub const MAX_ARITY: usize = 2;

/// Divisors with a magnitude below this make protected division return 1.
pub const DIV_GUARD: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    Real,
    Boolean,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RealOp {
    Add,
    Sub,
    Mul,
    /// Protected: returns 1 when `|y| < DIV_GUARD`.
    Div,
    Sin,
    Cos,
    Exp,
    /// Protected: `ln|x|`, with 0 at `x = 0`.
    Log,
    /// Protected: `sqrt|x|`.
    Sqrt,
    Neg,
    One,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoolOp {
    And,
    Or,
    Nand,
    Nor,
    Xor,
    Xnor,
    Not,
    True,
    False,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Real(RealOp),
    Bool(BoolOp),
}

const REAL_CATALOGUE: &[(&str, RealOp, usize)] = &[
    ("add", RealOp::Add, 2),
    ("sub", RealOp::Sub, 2),
    ("mul", RealOp::Mul, 2),
    ("div", RealOp::Div, 2),
    ("sin", RealOp::Sin, 1),
    ("cos", RealOp::Cos, 1),
    ("exp", RealOp::Exp, 1),
    ("log", RealOp::Log, 1),
    ("sqrt", RealOp::Sqrt, 1),
    ("neg", RealOp::Neg, 1),
    ("one", RealOp::One, 0),
];

const BOOL_CATALOGUE: &[(&str, BoolOp, usize)] = &[
    ("and", BoolOp::And, 2),
    ("or", BoolOp::Or, 2),
    ("nand", BoolOp::Nand, 2),
    ("nor", BoolOp::Nor, 2),
    ("xor", BoolOp::Xor, 2),
    ("xnor", BoolOp::Xnor, 2),
    ("not", BoolOp::Not, 1),
    ("true", BoolOp::True, 0),
    ("false", BoolOp::False, 0),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Primitive {
    pub id: usize,
    pub name: &'static str,
    pub arity: usize,
    pub domain: Domain,
    pub op: Op,
}

impl Primitive {
    fn lookup(domain: Domain, name: &str) -> Option<(&'static str, Op, usize)> {
        match domain {
            Domain::Real => REAL_CATALOGUE
                .iter()
                .find(|(n, _, _)| *n == name)
                .map(|&(n, op, a)| (n, Op::Real(op), a)),
            Domain::Boolean => BOOL_CATALOGUE
                .iter()
                .find(|(n, _, _)| *n == name)
                .map(|&(n, op, a)| (n, Op::Bool(op), a)),
        }
    }
}

/// Names of every primitive available for a domain.
pub fn available(domain: Domain) -> Vec<&'static str> {
    match domain {
        Domain::Real => REAL_CATALOGUE.iter().map(|e| e.0).collect(),
        Domain::Boolean => BOOL_CATALOGUE.iter().map(|e| e.0).collect(),
    }
}

/// Ordered, non-empty list of primitives sharing one domain. Ids equal positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionSet {
    primitives: Vec<Primitive>,
    domain: Domain,
}

impl FunctionSet {
    pub fn from_names<S: AsRef<str>>(domain: Domain, names: &[S]) -> Result<Self> {
        if names.is_empty() {
            return Err(GpError::config("function set must not be empty"));
        }
        let mut primitives = Vec::with_capacity(names.len());
        for (id, name) in names.iter().enumerate() {
            let name = name.as_ref();
            let (name, op, arity) = Primitive::lookup(domain, name).ok_or_else(|| {
                GpError::config(format!(
                    "unknown {domain:?} primitive `{name}`; valid names: {}",
                    available(domain).join(", ")
                ))
            })?;
            if primitives.iter().any(|p: &Primitive| p.name == name) {
                return Err(GpError::config(format!("duplicate primitive `{name}`")));
            }
            primitives.push(Primitive {
                id,
                name,
                arity,
                domain,
                op,
            });
        }
        Ok(FunctionSet { primitives, domain })
    }

    /// {AND, OR, NAND, NOR}.
    pub fn boolean_default() -> Self {
        Self::from_names(Domain::Boolean, &["and", "or", "nand", "nor"]).expect("built-in set")
    }

    /// {+, -, *, protected /}.
    pub fn real_default() -> Self {
        Self::from_names(Domain::Real, &["add", "sub", "mul", "div"]).expect("built-in set")
    }

    /// Default real set plus sin, cos, exp and protected log.
    pub fn real_extended() -> Self {
        Self::from_names(
            Domain::Real,
            &["add", "sub", "mul", "div", "sin", "cos", "exp", "log"],
        )
        .expect("built-in set")
    }

    pub fn default_for(domain: Domain) -> Self {
        match domain {
            Domain::Real => Self::real_default(),
            Domain::Boolean => Self::boolean_default(),
        }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.primitives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primitives.is_empty()
    }

    pub fn get(&self, id: usize) -> &Primitive {
        &self.primitives[id]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Primitive> {
        self.primitives.iter()
    }

    pub fn max_arity(&self) -> usize {
        self.primitives.iter().map(|p| p.arity).max().unwrap_or(0)
    }

    /// Ids of primitives with arity ≥ 1.
    pub fn function_ids(&self) -> Vec<usize> {
        self.primitives
            .iter()
            .filter(|p| p.arity > 0)
            .map(|p| p.id)
            .collect()
    }

    /// Ids of zero-arity primitives, usable as leaves.
    pub fn terminal_ids(&self) -> Vec<usize> {
        self.primitives
            .iter()
            .filter(|p| p.arity == 0)
            .map(|p| p.id)
            .collect()
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.primitives.iter().map(|p| p.name).collect()
    }
}
