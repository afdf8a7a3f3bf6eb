//! Units of measure for data assertions.
//!
//! A deliberately small registry: lengths, areas and temperatures, each with a
//! single base unit. Conversion factors are exact decimals so converted answers
//! can be compared for equality.

use std::fmt;
use std::str::FromStr;

use rust_decimal::Decimal;
use serde::Serialize;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Dimension {
    Length,
    Area,
    Temperature,
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dimension::Length => "length",
            Dimension::Area => "area",
            Dimension::Temperature => "temperature",
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UnitError {
    #[error("unknown unit `{0}`")]
    UnknownUnit(String),
    #[error("cannot convert {from} ({from_dim}) to {to} ({to_dim})")]
    DimensionMismatch { from: String, from_dim: Dimension, to: String, to_dim: Dimension },
    #[error("conversion overflow")]
    Overflow,
}

/// One registry row: `base = value * factor + offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitDef {
    pub code: &'static str,
    pub dimension: Dimension,
    pub factor: Decimal,
    pub offset: Decimal,
}

#[derive(Clone, Debug)]
pub struct UnitRegistry {
    units: Vec<UnitDef>,
}

fn dec(s: &str) -> Decimal {
    Decimal::from_str(s).expect("registry literal")
}

impl UnitRegistry {
    /// The built-in registry: `m mm um m2 mm2 K degC`.
    pub fn standard() -> UnitRegistry {
        let row = |code, dimension, factor: &str, offset: &str| UnitDef { code, dimension, factor: dec(factor), offset: dec(offset) };
        UnitRegistry {
            units: vec![
                row("m", Dimension::Length, "1", "0"),
                row("mm", Dimension::Length, "0.001", "0"),
                row("um", Dimension::Length, "0.000001", "0"),
                row("m2", Dimension::Area, "1", "0"),
                row("mm2", Dimension::Area, "0.000001", "0"),
                row("K", Dimension::Temperature, "1", "0"),
                row("degC", Dimension::Temperature, "1", "273.15"),
            ],
        }
    }

    pub fn get(&self, code: &str) -> Result<&UnitDef, UnitError> {
        self.units.iter().find(|u| u.code == code).ok_or_else(|| UnitError::UnknownUnit(code.to_string()))
    }

    pub fn units(&self) -> &[UnitDef] {
        &self.units
    }

    /// Base unit of a dimension (factor 1, offset 0).
    pub fn base(&self, dimension: Dimension) -> Option<&UnitDef> {
        self.units.iter().find(|u| u.dimension == dimension && u.factor == Decimal::ONE && u.offset.is_zero())
    }

    pub fn convert(&self, q: &Quantity, target: &str) -> Result<Quantity, UnitError> {
        let from = self.get(&q.unit)?;
        let to = self.get(target)?;
        if from.dimension != to.dimension {
            return Err(UnitError::DimensionMismatch {
                from: from.code.to_string(),
                from_dim: from.dimension,
                to: to.code.to_string(),
                to_dim: to.dimension,
            });
        }
        if from.code == to.code {
            return Ok(q.clone());
        }
        let base = q
            .value
            .checked_mul(from.factor)
            .and_then(|v| v.checked_add(from.offset))
            .and_then(|v| v.checked_sub(to.offset))
            .ok_or(UnitError::Overflow)?;
        let value = base.checked_div(to.factor).ok_or(UnitError::Overflow)?;
        Ok(Quantity { value: value.normalize(), unit: to.code.to_string() })
    }
}

/// A decimal value tagged with a unit code from the registry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quantity {
    pub value: Decimal,
    pub unit: String,
}

impl Quantity {
    pub fn new(value: Decimal, unit: &str) -> Quantity {
        Quantity { value, unit: unit.to_string() }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.value.normalize(), self.unit)
    }
}

/// Converts with the standard registry.
pub fn convert(q: &Quantity, target: &str) -> Result<Quantity, UnitError> {
    UnitRegistry::standard().convert(q, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(v: &str, u: &str) -> Quantity {
        Quantity::new(dec(v), u)
    }

    #[test]
    fn metric_prefix() {
        let r = convert(&q("1500", "mm"), "m").unwrap();
        assert_eq!(r.value, dec("1.5"));
        assert_eq!(r.to_string(), "1.5 m");
    }

    #[test]
    fn kelvin_to_celsius() {
        assert_eq!(convert(&q("300", "K"), "degC").unwrap().value, dec("26.85"));
        assert_eq!(convert(&q("26.85", "degC"), "K").unwrap().value, dec("300"));
    }

    #[test]
    fn area_units() {
        assert_eq!(convert(&q("2", "m2"), "mm2").unwrap().value, dec("2000000"));
    }

    #[test]
    fn dimension_mismatch() {
        let err = convert(&q("2", "mm"), "degC").unwrap_err();
        assert!(matches!(err, UnitError::DimensionMismatch { from_dim: Dimension::Length, to_dim: Dimension::Temperature, .. }));
    }

    #[test]
    fn unknown_unit() {
        assert_eq!(convert(&q("1", "ft"), "m").unwrap_err(), UnitError::UnknownUnit("ft".into()));
        assert_eq!(convert(&q("1", "m"), "inch").unwrap_err(), UnitError::UnknownUnit("inch".into()));
    }

    #[test]
    fn identity_is_exact() {
        let x = q("0.0500", "mm");
        assert_eq!(convert(&x, "mm").unwrap(), x);
    }

    #[test]
    fn every_dimension_has_one_base() {
        let reg = UnitRegistry::standard();
        for dim in [Dimension::Length, Dimension::Area, Dimension::Temperature] {
            let bases = reg.units().iter().filter(|u| u.dimension == dim && u.factor == Decimal::ONE && u.offset.is_zero()).count();
            assert_eq!(bases, 1, "{dim}");
        }
    }

    proptest! {
        #[test]
        fn round_trip(mantissa in -1_000_000_000i64..1_000_000_000, scale in 0u32..6, a in 0usize..7, b in 0usize..7) {
            let reg = UnitRegistry::standard();
            let (ua, ub) = (&reg.units()[a], &reg.units()[b]);
            prop_assume!(ua.dimension == ub.dimension);
            let x = Quantity::new(Decimal::new(mantissa, scale), ua.code);
            let there = reg.convert(&x, ub.code).unwrap();
            let back = reg.convert(&there, ua.code).unwrap();
            prop_assert_eq!(back.value.normalize(), x.value.normalize());
        }
    }
}
