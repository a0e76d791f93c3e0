//! One-bit Boolean black boxes and their operator encodings.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qmath::{gates, r, ComplexMatrix, ONE};

/// Truth table `(f(0), f(1))` of a function `{0,1} -> {0,1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    f0: u8,
    f1: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FunctionClass {
    Constant,
    Balanced,
}

impl BooleanFunction {
    pub const CONST_ZERO: Self = Self { f0: 0, f1: 0 };
    pub const CONST_ONE: Self = Self { f0: 1, f1: 1 };
    pub const IDENTITY: Self = Self { f0: 0, f1: 1 };
    pub const NEGATION: Self = Self { f0: 1, f1: 0 };

    /// All four functions, in truth-table order (0,0), (0,1), (1,0), (1,1).
    pub const ALL: [Self; 4] = [
        Self::CONST_ZERO,
        Self::IDENTITY,
        Self::NEGATION,
        Self::CONST_ONE,
    ];

    pub fn new(f0: u8, f1: u8) -> Result<Self> {
        for bit in [f0, f1] {
            if bit > 1 {
                return Err(Error::InvalidBit(bit));
            }
        }
        Ok(Self { f0, f1 })
    }

    #[inline]
    pub fn eval(self, x: u8) -> u8 {
        if x & 1 == 0 {
            self.f0
        } else {
            self.f1
        }
    }

    pub fn f0(self) -> u8 {
        self.f0
    }

    pub fn f1(self) -> u8 {
        self.f1
    }

    /// Short alias: `c0`, `c1`, `b01`, `b10`.
    pub fn alias(self) -> &'static str {
        match (self.f0, self.f1) {
            (0, 0) => "c0",
            (1, 1) => "c1",
            (0, 1) => "b01",
            _ => "b10",
        }
    }
}

impl FromStr for BooleanFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "c0" => Ok(Self::CONST_ZERO),
            "c1" => Ok(Self::CONST_ONE),
            "b01" => Ok(Self::IDENTITY),
            "b10" => Ok(Self::NEGATION),
            other => Err(Error::UnknownAlias(other.to_string())),
        }
    }
}

impl fmt::Display for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.f0, self.f1)
    }
}

impl Serialize for BooleanFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.f0, self.f1].serialize(s)
    }
}

impl<'de> Deserialize<'de> for BooleanFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        // a pair [f0, f1] or one of the string aliases
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Pair([u8; 2]),
            Alias(String),
        }
        match Repr::deserialize(d)? {
            Repr::Pair([a, b]) => BooleanFunction::new(a, b),
            Repr::Alias(s) => s.parse(),
        }
        .map_err(serde::de::Error::custom)
    }
}

pub fn classify(f: BooleanFunction) -> FunctionClass {
    if f.f0 == f.f1 {
        FunctionClass::Constant
    } else {
        FunctionClass::Balanced
    }
}

#[inline]
fn sign(bit: u8) -> f64 {
    if bit == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `D(f) = Σ_x (−1)^{f(x)} |x⟩⟨x|`, one of ±I, ±Z.
pub fn diag_oracle(f: BooleanFunction) -> ComplexMatrix {
    ComplexMatrix::diag(&[r(sign(f.f0)), r(sign(f.f1))])
}

/// Two-qubit black box `U_f |x, y⟩ = |x, y ⊕ f(x)⟩`, basis index `2x + y`.
pub fn two_qubit_oracle(f: BooleanFunction) -> ComplexMatrix {
    let mut u = ComplexMatrix::zeros(4, 4);
    for x in 0..2u8 {
        for y in 0..2u8 {
            let col = (2 * x + y) as usize;
            let row = (2 * x + (y ^ f.eval(x))) as usize;
            u.set(row, col, ONE);
        }
    }
    u
}

/// Which of the four diagonal Paulis a ±1 diagonal operator is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignedPauli {
    #[serde(rename = "I")]
    PlusI,
    #[serde(rename = "-I")]
    MinusI,
    #[serde(rename = "Z")]
    PlusZ,
    #[serde(rename = "-Z")]
    MinusZ,
}

impl SignedPauli {
    pub fn of(f: BooleanFunction) -> Self {
        match (f.f0, f.f1) {
            (0, 0) => Self::PlusI,
            (1, 1) => Self::MinusI,
            (0, 1) => Self::PlusZ,
            _ => Self::MinusZ,
        }
    }

    /// Identify a matrix as ±I/±Z, exactly.
    pub fn identify(m: &ComplexMatrix) -> Option<Self> {
        if m.shape() != (2, 2) || m.get(0, 1) != r(0.0) || m.get(1, 0) != r(0.0) {
            return None;
        }
        let (a, b) = (m.get(0, 0), m.get(1, 1));
        let one = r(1.0);
        match (a == one, a == -one, b == one, b == -one) {
            (true, _, true, _) => Some(Self::PlusI),
            (_, true, _, true) => Some(Self::MinusI),
            (true, _, _, true) => Some(Self::PlusZ),
            (_, true, true, _) => Some(Self::MinusZ),
            _ => None,
        }
    }

    pub fn matrix(self) -> ComplexMatrix {
        match self {
            Self::PlusI => gates::identity(),
            Self::MinusI => -&gates::identity(),
            Self::PlusZ => gates::pauli_z(),
            Self::MinusZ => -&gates::pauli_z(),
        }
    }

    pub fn is_identity_like(self) -> bool {
        matches!(self, Self::PlusI | Self::MinusI)
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::PlusI => "I",
            Self::MinusI => "-I",
            Self::PlusZ => "Z",
            Self::MinusZ => "-Z",
        }
    }
}

impl fmt::Display for SignedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Ordered, non-empty list of black-box functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct OracleSet {
    functions: Vec<BooleanFunction>,
}

impl OracleSet {
    pub fn new(functions: Vec<BooleanFunction>) -> Result<Self> {
        if functions.is_empty() {
            return Err(Error::EmptyOracleSet);
        }
        Ok(Self { functions })
    }

    pub fn functions(&self) -> &[BooleanFunction] {
        &self.functions
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn count_constants(&self) -> usize {
        self.functions
            .iter()
            .filter(|&&f| classify(f) == FunctionClass::Constant)
            .count()
    }

    /// The `index`-th set of size `n` in base-4 order over [`BooleanFunction::ALL`],
    /// first function most significant. `index < 4^n`.
    pub fn from_index(n: usize, index: u64) -> Self {
        let mut functions = vec![BooleanFunction::CONST_ZERO; n];
        let mut rest = index;
        for slot in functions.iter_mut().rev() {
            *slot = BooleanFunction::ALL[(rest % 4) as usize];
            rest /= 4;
        }
        Self { functions }
    }

    /// Every one of the `4^n` oracle sets of size `n`.
    pub fn enumerate(n: usize) -> impl Iterator<Item = OracleSet> {
        assert!(n >= 1, "n >= 1 required");
        let total = configuration_count(n);
        (0..total).map(move |i| Self::from_index(n, i))
    }

    /// Parses JSON (`[[0,0],[0,1]]`, aliases allowed as elements) or a
    /// comma-separated alias list (`c0,b01`).
    pub fn parse(text: &str) -> std::result::Result<Self, OracleParseError> {
        let trimmed = text.trim();
        let functions: Vec<BooleanFunction> = if trimmed.starts_with('[') {
            serde_json::from_str(trimmed).map_err(|e| OracleParseError::Json {
                line: e.line(),
                column: e.column(),
                message: strip_position(&e.to_string()),
            })?
        } else if trimmed.is_empty() {
            Vec::new()
        } else {
            trimmed
                .split(',')
                .map(str::parse)
                .collect::<Result<_>>()
                .map_err(OracleParseError::Invalid)?
        };
        Self::new(functions).map_err(OracleParseError::Invalid)
    }
}

impl<'de> Deserialize<'de> for OracleSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let functions = Vec::<BooleanFunction>::deserialize(d)?;
        OracleSet::new(functions).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for OracleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, func) in self.functions.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{func}")?;
        }
        f.write_str("]")
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleParseError {
    #[error("malformed oracle JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Invalid(Error),
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

/// `4^n`.
pub fn configuration_count(n: usize) -> u64 {
    4u64.pow(n as u32)
}

/// `U_1 = D(f_1) D(f_2) ... D(f_n)`, multiplied left to right.
pub fn product_oracle(s: &OracleSet) -> ComplexMatrix {
    s.functions
        .iter()
        .fold(gates::identity(), |acc, &f| &acc * &diag_oracle(f))
}

/// Whether the set holds an odd number of constant functions.
pub fn ground_truth_odd_constants(s: &OracleSet) -> bool {
    s.count_constants() % 2 == 1
}
