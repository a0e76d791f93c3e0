//! Configuration tables for the one-function and two-function experiments,
//! with the port each configuration is expected to light up.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::oracles::{BooleanFunction, OracleSet, SignedPauli};
use crate::sagnac::Port;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentTable {
    /// Four single-function configurations.
    Deutsch,
    /// Sixteen two-function configurations.
    TwoFunction,
}

impl ExperimentTable {
    pub fn rows(self) -> Vec<TableRow> {
        let raw: &[(&[(u8, u8)], Port)] = match self {
            ExperimentTable::Deutsch => DEUTSCH_ROWS,
            ExperimentTable::TwoFunction => TWO_FUNCTION_ROWS,
        };
        raw.iter()
            .map(|(pairs, port)| {
                let functions = pairs
                    .iter()
                    .map(|&(a, b)| BooleanFunction::new(a, b).expect("fixture bits"))
                    .collect();
                TableRow::new(
                    OracleSet::new(functions).expect("fixture rows are non-empty"),
                    *port,
                )
            })
            .collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            ExperimentTable::Deutsch => "deutsch",
            ExperimentTable::TwoFunction => "two-function",
        }
    }
}

impl fmt::Display for ExperimentTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentTable {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "deutsch" => Ok(ExperimentTable::Deutsch),
            "two-function" | "two_function" => Ok(ExperimentTable::TwoFunction),
            other => Err(format!(
                "unknown table {other:?} (expected deutsch or two-function)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    /// `U₁` factors joined by `*`, e.g. `I*-Z`.
    pub label: String,
    pub oracles: OracleSet,
    pub factors: Vec<SignedPauli>,
    pub expected_port: Port,
}

impl TableRow {
    fn new(oracles: OracleSet, expected_port: Port) -> Self {
        let factors: Vec<SignedPauli> = oracles
            .functions()
            .iter()
            .map(|&f| SignedPauli::of(f))
            .collect();
        let label = factors
            .iter()
            .map(|p| p.label())
            .collect::<Vec<_>>()
            .join("*");
        Self {
            label,
            oracles,
            factors,
            expected_port,
        }
    }
}

// (f(0), f(1)) per function, expected port
const DEUTSCH_ROWS: &[(&[(u8, u8)], Port)] = &[
    (&[(0, 0)], Port::B),
    (&[(1, 1)], Port::B),
    (&[(0, 1)], Port::A),
    (&[(1, 0)], Port::A),
];

const TWO_FUNCTION_ROWS: &[(&[(u8, u8)], Port)] = &[
    (&[(0, 0), (0, 0)], Port::B),
    (&[(0, 0), (1, 1)], Port::B),
    (&[(0, 0), (0, 1)], Port::A),
    (&[(0, 0), (1, 0)], Port::A),
    (&[(1, 1), (0, 0)], Port::B),
    (&[(1, 1), (1, 1)], Port::B),
    (&[(1, 1), (0, 1)], Port::A),
    (&[(1, 1), (1, 0)], Port::A),
    (&[(0, 1), (0, 0)], Port::A),
    (&[(0, 1), (1, 1)], Port::A),
    (&[(0, 1), (0, 1)], Port::B),
    (&[(0, 1), (1, 0)], Port::B),
    (&[(1, 0), (0, 0)], Port::A),
    (&[(1, 0), (1, 1)], Port::A),
    (&[(1, 0), (0, 1)], Port::B),
    (&[(1, 0), (1, 0)], Port::B),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::product_oracle;
    use crate::qmath::{commutator, gates};

    #[test]
    fn sizes_and_labels() {
        let d = ExperimentTable::Deutsch.rows();
        assert_eq!(d.len(), 4);
        assert_eq!(
            d.iter().map(|r| r.label.as_str()).collect::<Vec<_>>(),
            ["I", "-I", "Z", "-Z"]
        );
        let t = ExperimentTable::TwoFunction.rows();
        assert_eq!(t.len(), 16);
        assert_eq!(t[1].label, "I*-I");
        assert_eq!(t[11].label, "Z*-Z");
        assert_eq!(t[15].label, "-Z*-Z");
    }

    #[test]
    fn port_b_rows_are_exactly_the_commuting_ones() {
        for table in [ExperimentTable::Deutsch, ExperimentTable::TwoFunction] {
            for row in table.rows() {
                let u1 = product_oracle(&row.oracles);
                let commutes = commutator(&u1, &gates::pauli_x()).unwrap().is_zero(0.0);
                assert_eq!(commutes, row.expected_port == Port::B, "{}", row.label);
            }
        }
    }

    #[test]
    fn parses_names() {
        assert_eq!(
            "deutsch".parse::<ExperimentTable>(),
            Ok(ExperimentTable::Deutsch)
        );
        assert_eq!(
            "two-function".parse::<ExperimentTable>(),
            Ok(ExperimentTable::TwoFunction)
        );
        assert!("three".parse::<ExperimentTable>().is_err());
    }
}
