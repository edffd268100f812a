//! Structure registry and type-erased access.
//!
//! Identifiers: `rational`, `z1p:<p>`, `zx`, `maxtimes-qpos`, `nonneg:<base>`
//! with `<base>` one of the ordered fields `rational`, `zx`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};
use crate::instances::{
    MaxTimes, MaxTimesQpos, NonNeg, Rational, RationalField, RationalFunction, Z1pElem, Z1pRing, ZxField,
};
use crate::order::{OrderedHemiring, StructureDescriptor};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StructureId {
    Rational,
    Z1p(u64),
    Zx,
    MaxTimesQpos,
    NonNeg(Box<StructureId>),
}

impl FromStr for StructureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "rational" => return Ok(StructureId::Rational),
            "zx" => return Ok(StructureId::Zx),
            "maxtimes-qpos" => return Ok(StructureId::MaxTimesQpos),
            _ => {}
        }
        if let Some(p) = s.strip_prefix("z1p:") {
            let p: u64 = p.parse().map_err(|_| Error::UnknownStructure(s.to_string()))?;
            Z1pRing::new(p)?;
            return Ok(StructureId::Z1p(p));
        }
        if let Some(base) = s.strip_prefix("nonneg:") {
            let base: StructureId = base.parse()?;
            return match base {
                StructureId::Rational | StructureId::Zx => Ok(StructureId::NonNeg(Box::new(base))),
                _ => Err(Error::UnknownStructure(format!("{s} (base must be an ordered field)"))),
            };
        }
        Err(Error::UnknownStructure(s.to_string()))
    }
}

impl fmt::Display for StructureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureId::Rational => f.write_str("rational"),
            StructureId::Z1p(p) => write!(f, "z1p:{p}"),
            StructureId::Zx => f.write_str("zx"),
            StructureId::MaxTimesQpos => f.write_str("maxtimes-qpos"),
            StructureId::NonNeg(b) => write!(f, "nonneg:{b}"),
        }
    }
}

/// A resolved registry entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyStructure {
    Rational(RationalField),
    Z1p(Z1pRing),
    Zx(ZxField),
    MaxTimes(MaxTimesQpos),
    NonNegRational(NonNeg<RationalField>),
    NonNegZx(NonNeg<ZxField>),
}

/// Binds the concrete structure inside an [`AnyStructure`] and evaluates `$body` for it.
#[macro_export]
macro_rules! dispatch {
    ($any:expr, $s:ident => $body:expr) => {
        match $any {
            $crate::registry::AnyStructure::Rational($s) => $body,
            $crate::registry::AnyStructure::Z1p($s) => $body,
            $crate::registry::AnyStructure::Zx($s) => $body,
            $crate::registry::AnyStructure::MaxTimes($s) => $body,
            $crate::registry::AnyStructure::NonNegRational($s) => $body,
            $crate::registry::AnyStructure::NonNegZx($s) => $body,
        }
    };
}

/// Like [`dispatch!`] but only for the ordered rings; other entries evaluate `$otherwise`.
#[macro_export]
macro_rules! dispatch_ring {
    ($any:expr, $s:ident => $body:expr, $other:ident => $otherwise:expr) => {
        match $any {
            $crate::registry::AnyStructure::Rational($s) => $body,
            $crate::registry::AnyStructure::Z1p($s) => $body,
            $crate::registry::AnyStructure::Zx($s) => $body,
            $other => $otherwise,
        }
    };
}

impl AnyStructure {
    pub fn resolve(id: &str) -> Result<Self> {
        Ok(Self::from_id(&id.parse()?))
    }

    pub fn from_id(id: &StructureId) -> Self {
        match id {
            StructureId::Rational => AnyStructure::Rational(RationalField),
            StructureId::Z1p(p) => AnyStructure::Z1p(Z1pRing::new(*p).expect("validated prime")),
            StructureId::Zx => AnyStructure::Zx(ZxField),
            StructureId::MaxTimesQpos => AnyStructure::MaxTimes(MaxTimesQpos),
            StructureId::NonNeg(b) => match **b {
                StructureId::Zx => AnyStructure::NonNegZx(NonNeg::new(ZxField).expect("field")),
                _ => AnyStructure::NonNegRational(NonNeg::new(RationalField).expect("field")),
            },
        }
    }

    pub fn id(&self) -> String {
        dispatch!(self, s => s.id())
    }

    pub fn describe(&self) -> StructureDescriptor {
        dispatch!(self, s => s.describe())
    }

    pub fn parse(&self, text: &str) -> std::result::Result<AnyElement, ParseError> {
        dispatch!(self, s => s.parse(text).map(|e| s.wrap(e)))
    }

    pub fn render(&self, a: &AnyElement) -> Result<String> {
        dispatch!(self, s => Ok(s.render(s.unwrap(a)?)))
    }

    pub fn zero(&self) -> AnyElement {
        dispatch!(self, s => s.wrap(s.zero()))
    }

    pub fn one(&self) -> Option<AnyElement> {
        dispatch!(self, s => s.one().map(|e| s.wrap(e)))
    }

    pub fn add(&self, a: &AnyElement, b: &AnyElement) -> Result<AnyElement> {
        dispatch!(self, s => Ok(s.wrap(s.add(s.unwrap(a)?, s.unwrap(b)?))))
    }

    pub fn mul(&self, a: &AnyElement, b: &AnyElement) -> Result<AnyElement> {
        dispatch!(self, s => Ok(s.wrap(s.mul(s.unwrap(a)?, s.unwrap(b)?))))
    }

    pub fn neg(&self, a: &AnyElement) -> Result<AnyElement> {
        dispatch!(self, s => s
            .neg(s.unwrap(a)?)
            .map(|e| s.wrap(e))
            .ok_or_else(|| Error::NotARing(s.id())))
    }

    pub fn invert(&self, a: &AnyElement) -> Result<AnyElement> {
        dispatch!(self, s => Ok(s.wrap(s.invert(s.unwrap(a)?)?)))
    }

    pub fn compare(&self, a: &AnyElement, b: &AnyElement) -> Result<Option<Ordering>> {
        dispatch!(self, s => Ok(s.compare(s.unwrap(a)?, s.unwrap(b)?)))
    }
}

/// An element of some registered structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyElement {
    Rational(Rational),
    Z1p(Z1pElem),
    Function(RationalFunction),
    MaxTimes(MaxTimes),
}

/// Moves elements in and out of [`AnyElement`].
pub trait ElemCast: OrderedHemiring {
    fn wrap(&self, e: Self::Elem) -> AnyElement;
    fn unwrap<'a>(&self, a: &'a AnyElement) -> Result<&'a Self::Elem>;
}

fn mismatch(id: String) -> Error {
    Error::NotApplicable(format!("element does not belong to {id}"))
}

macro_rules! elem_cast {
    ($ty:ty, $variant:ident) => {
        impl ElemCast for $ty {
            fn wrap(&self, e: Self::Elem) -> AnyElement {
                AnyElement::$variant(e)
            }
            fn unwrap<'a>(&self, a: &'a AnyElement) -> Result<&'a Self::Elem> {
                match a {
                    AnyElement::$variant(e) => Ok(e),
                    _ => Err(mismatch(self.id())),
                }
            }
        }
    };
}

elem_cast!(RationalField, Rational);
elem_cast!(Z1pRing, Z1p);
elem_cast!(ZxField, Function);
elem_cast!(MaxTimesQpos, MaxTimes);
elem_cast!(NonNeg<RationalField>, Rational);
elem_cast!(NonNeg<ZxField>, Function);
