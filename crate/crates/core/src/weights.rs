//! Weight classes, the dispersion ratio `alpha`, lexicographic order on
//! solutions, and the exponential-weight reduction.
//!
//! All arithmetic is exact: weights are arbitrary-precision positive
//! rationals and every comparison is an exact rational comparison. The
//! threshold results this crate certifies are equality-sensitive, so there is
//! no floating-point fast path anywhere.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::elems::ElemSet;
use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rational = BigRational;

/// A strictly positive exact rational weight.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(Rational);

impl Weight {
    pub fn new(value: Rational) -> Result<Self> {
        if value.is_positive() {
            Ok(Weight(value))
        } else {
            Err(Error::InvalidWeight(format!("{} is not strictly positive", rational_to_string(&value))))
        }
    }

    pub fn from_integer(n: u64) -> Result<Self> {
        Self::new(Rational::from_integer(BigInt::from(n)))
    }

    /// `num/den` as an exact ratio.
    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidWeight("zero denominator".into()));
        }
        Self::new(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_value(self) -> Rational {
        self.0
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&rational_to_string(&self.0))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Weight({})", self)
    }
}

/// Weights parse from `"num/den"` or `"int"` strings. Decimal notation is
/// rejected so no floating-point value can enter the solvers.
impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Weight::new(parse_rational(s)?)
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Renders a rational as `"num/den"`, or `"num"` when the denominator is 1.
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"num/den"` or `"int"`. Anything else (including decimals) is an
/// `InvalidParameter` error.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.parse::<BigInt>().map_err(|_| {
            Error::InvalidParameter(format!(
                "`{s}` is not an exact rational (use \"num/den\" or \"int\")"
            ))
        })
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(Error::InvalidParameter(format!("`{s}` has a zero denominator")));
            }
            Ok(Rational::new(num, den))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Serde adapter: rationals as `"num/den"` strings (use with
/// `#[serde(with = "rational_serde")]`).
pub mod rational_serde {
    use super::{parse_rational, rational_to_string, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        value: &Rational,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&rational_to_string(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for optional rationals (`null` or `"num/den"`).
pub mod rational_serde_opt {
    use super::{parse_rational, rational_to_string, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        value: &Option<Rational>,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match value {
            Some(r) => serializer.serialize_some(&rational_to_string(r)),
            None => serializer.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Option<Rational>, D::Error> {
        let text = Option::<String>::deserialize(deserializer)?;
        text.map(|t| parse_rational(&t).map_err(serde::de::Error::custom)).transpose()
    }
}

/// The partition of the ground set into classes of equal weight, ordered by
/// descending weight level.
///
/// Class indices are 0-based: class 0 holds the heaviest elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightClasses {
    levels: Vec<Weight>,
    class_of: Vec<usize>,
    classes: Vec<ElemSet>,
}

impl WeightClasses {
    /// Number of distinct weight levels `k`.
    pub fn k(&self) -> usize {
        self.levels.len()
    }

    pub fn ground_size(&self) -> usize {
        self.class_of.len()
    }

    pub fn levels(&self) -> &[Weight] {
        &self.levels
    }

    pub fn level(&self, class: usize) -> &Weight {
        &self.levels[class]
    }

    pub fn class_of(&self, e: usize) -> Result<usize> {
        self.class_of.get(e).copied().ok_or(Error::UnknownElement(e))
    }

    pub fn class_members(&self, class: usize) -> &ElemSet {
        &self.classes[class]
    }

    pub fn classes(&self) -> &[ElemSet] {
        &self.classes
    }

    /// Elements of weight `w_0, ..., w_class` (the prefix ground set).
    pub fn prefix(&self, class: usize) -> ElemSet {
        let mut out = ElemSet::new();
        for c in self.classes.iter().take(class + 1) {
            out = out.union(c);
        }
        out
    }

    fn check_subset(&self, set: &ElemSet) -> Result<()> {
        match set.last() {
            Some(e) if e >= self.ground_size() => Err(Error::UnknownElement(e)),
            _ => Ok(()),
        }
    }
}

/// Groups the dense ground set `0..weights.len()` by distinct weight value in
/// descending order.
pub fn weight_classes(weights: &[Weight]) -> WeightClasses {
    let mut levels: Vec<Weight> = weights.to_vec();
    levels.sort();
    levels.dedup();
    levels.reverse();
    let class_of: Vec<usize> = weights
        .iter()
        .map(|w| levels.iter().position(|l| l == w).expect("weight is one of its own distinct values"))
        .collect();
    let mut classes = vec![ElemSet::new(); levels.len()];
    for (e, &c) in class_of.iter().enumerate() {
        classes[c].insert(e);
    }
    WeightClasses { levels, class_of, classes }
}

/// The minimum ratio of consecutive distinct weight levels.
///
/// A single weight level has no consecutive pair; that case is reported as
/// `Infinite` so downstream threshold checks treat it as the `alpha > 2`
/// regime, where the results hold trivially.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Alpha {
    Finite(Rational),
    Infinite,
}

impl Alpha {
    pub fn is_greater_than_two(&self) -> bool {
        match self {
            Alpha::Finite(a) => *a > Rational::from_integer(BigInt::from(2)),
            Alpha::Infinite => true,
        }
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            Alpha::Finite(a) => Some(a),
            Alpha::Infinite => None,
        }
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Finite(a) => f.write_str(&rational_to_string(a)),
            Alpha::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Alpha {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        if s == "inf" {
            Ok(Alpha::Infinite)
        } else {
            parse_rational(&s).map(Alpha::Finite).map_err(serde::de::Error::custom)
        }
    }
}

/// `alpha = min_i w_i / w_{i+1}` over consecutive levels; `Infinite` for a
/// single level.
pub fn alpha(classes: &WeightClasses) -> Alpha {
    if classes.k() < 2 {
        return Alpha::Infinite;
    }
    classes
        .levels
        .windows(2)
        .map(|pair| pair[0].value() / pair[1].value())
        .min()
        .map(Alpha::Finite)
        .expect("k >= 2 has at least one consecutive pair")
}

/// The per-class element counts `|X_0|, ..., |X_{k-1}|` of a solution; the
/// key of the lexicographic order. Derived `Ord` compares coordinate-wise
/// from the heaviest class, which is exactly the lex order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LexSignature(pub Vec<usize>);

impl LexSignature {
    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for LexSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Counts the elements of `set` in each weight class.
pub fn lex_signature(set: &ElemSet, classes: &WeightClasses) -> Result<LexSignature> {
    classes.check_subset(set)?;
    let mut counts = vec![0usize; classes.k()];
    for e in set {
        counts[classes.class_of[e]] += 1;
    }
    Ok(LexSignature(counts))
}

/// Compares two subsets in lexicographic order: `Greater` means `x` takes
/// more elements than `y` at the heaviest class where they differ.
pub fn lex_compare(x: &ElemSet, y: &ElemSet, classes: &WeightClasses) -> Result<Ordering> {
    Ok(lex_signature(x, classes)?.cmp(&lex_signature(y, classes)?))
}

/// The exponential-weight reduction: every element of class `i` (0-based)
/// gets weight `base^(k-1-i)`.
///
/// Any integer base above 2 preserves optima because the resulting weight
/// function has `alpha = base > 2`; the default base used by the solvers is 3.
pub fn dispersed_weights(classes: &WeightClasses, base: u64) -> Result<Vec<Weight>> {
    if base <= 2 {
        return Err(Error::InvalidBase(base));
    }
    let k = classes.k();
    let level_weights: Vec<Weight> = (0..k)
        .map(|i| {
            let value = BigInt::from(base).pow((k - 1 - i) as u32);
            Weight::new(Rational::from_integer(value)).expect("positive power")
        })
        .collect();
    Ok(classes.class_of.iter().map(|&c| level_weights[c].clone()).collect())
}

/// Exact total weight of a subset; the empty set has weight zero.
pub fn weight_of(set: &ElemSet, weights: &[Weight]) -> Result<Rational> {
    let mut total = Rational::zero();
    for e in set {
        let w = weights.get(e).ok_or(Error::UnknownElement(e))?;
        total += w.value();
    }
    Ok(total)
}
