//! The ring of virtual motives: integer combinations of `L^k ⊗ S_1 ⊗ … ⊗ S_r`
//! where `L` is the Lefschetz class and the `S_i` are cusp form symbols.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{self, FormsTable};

/// Largest genus of a cusp symbol.
pub const MAX_SYMBOL_GENUS: usize = 7;

/// How a cusp symbol is decorated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decoration {
    Plain,
    Sym2,
}

/// The symbolic class `S[k_1, …, k_g]` of the level-one Siegel cusp
/// eigenforms of genus `g` and weight `k̲`, or its symmetric square for
/// genus one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CuspSymbol {
    genus: usize,
    weights: Vec<i64>,
    decoration: Decoration,
}

impl CuspSymbol {
    /// Validated constructor.
    pub fn new(weights: Vec<i64>, decoration: Decoration) -> Result<Self> {
        let genus = weights.len();
        if genus == 0 || genus > MAX_SYMBOL_GENUS {
            return Err(Error::Domain(format!(
                "cusp symbol genus {genus} outside 1..={MAX_SYMBOL_GENUS}"
            )));
        }
        if weights.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("weights {weights:?} not weakly decreasing")));
        }
        if genus == 1 {
            if weights[0] < 2 {
                return Err(Error::Domain(format!("genus one weight {} below 2", weights[0])));
            }
        } else {
            if decoration == Decoration::Sym2 {
                return Err(Error::Domain("Sym2 decoration requires genus one".into()));
            }
            if weights[genus - 1] < genus as i64 + 1 {
                return Err(Error::Domain(format!(
                    "smallest weight of {weights:?} below {}",
                    genus + 1
                )));
            }
        }
        Ok(CuspSymbol {
            genus,
            weights,
            decoration,
        })
    }

    /// `S[k]` in genus one.
    pub fn elliptic(k: i64) -> Result<Self> {
        Self::new(vec![k], Decoration::Plain)
    }

    /// `Sym² S[k]` in genus one.
    pub fn sym2(k: i64) -> Result<Self> {
        Self::new(vec![k], Decoration::Sym2)
    }

    /// `S[k̲]` in genus `len(k̲)`.
    pub fn siegel(weights: Vec<i64>) -> Result<Self> {
        Self::new(weights, Decoration::Plain)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn decoration(&self) -> Decoration {
        self.decoration
    }
}

impl fmt::Display for CuspSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        match self.decoration {
            Decoration::Plain => write!(f, "S[{}]", ws.join(",")),
            Decoration::Sym2 => write!(f, "Sym2S[{}]", ws.join(",")),
        }
    }
}

/// A monomial `L^tate ⊗ symbols`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MotiveTerm {
    tate: i64,
    symbols: Vec<CuspSymbol>,
}

impl MotiveTerm {
    /// Canonicalizing constructor (symbols are sorted).
    pub fn new(tate: i64, mut symbols: Vec<CuspSymbol>) -> Self {
        symbols.sort();
        MotiveTerm { tate, symbols }
    }

    pub fn tate(&self) -> i64 {
        self.tate
    }

    pub fn symbols(&self) -> &[CuspSymbol] {
        &self.symbols
    }

    fn times(&self, other: &MotiveTerm) -> MotiveTerm {
        let mut symbols = self.symbols.clone();
        symbols.extend(other.symbols.iter().cloned());
        MotiveTerm::new(self.tate + other.tate, symbols)
    }
}

/// Dimensions of the spaces behind cusp symbols.
pub trait DimensionOracle {
    fn dimension(&self, symbol: &CuspSymbol) -> Result<BigInt>;
}

/// Frobenius traces of cusp symbols.
pub trait HeckeSource {
    /// The trace of `Frob_p^m` on the symbol.
    fn symbol_trace(&self, symbol: &CuspSymbol, p: u64, m: u32) -> Result<BigInt>;
}

impl DimensionOracle for FormsTable {
    fn dimension(&self, symbol: &CuspSymbol) -> Result<BigInt> {
        if symbol.genus != 1 {
            return Err(Error::UnknownDimension(symbol.to_string()));
        }
        let k = symbol.weights[0];
        Ok(match (symbol.decoration, k) {
            (Decoration::Plain, 2) => BigInt::from(-2),
            _ => BigInt::from(forms::dim_cusp_elliptic(k)),
        })
    }
}

impl HeckeSource for FormsTable {
    fn symbol_trace(&self, symbol: &CuspSymbol, p: u64, m: u32) -> Result<BigInt> {
        if symbol.genus != 1 {
            return Err(Error::UnknownHecke {
                symbol: symbol.to_string(),
                prime: p,
            });
        }
        let k = symbol.weights[0];
        match (symbol.decoration, k) {
            (Decoration::Plain, 2) => Ok(-BigInt::one() - forms::pow_big(p, m as u64)),
            (Decoration::Plain, _) => forms::elliptic_family_trace(self, k, p, m),
            (Decoration::Sym2, _) => forms::elliptic_sym2_trace(self, k, p, m),
        }
    }
}

/// A Laurent polynomial in `q` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TatePolynomial(BTreeMap<i64, BigInt>);

impl TatePolynomial {
    /// Builds from `(exponent, coefficient)` pairs, dropping zeros.
    pub fn from_coefficients<I: IntoIterator<Item = (i64, i64)>>(iter: I) -> Self {
        let mut map = BTreeMap::new();
        for (e, c) in iter {
            *map.entry(e).or_insert_with(BigInt::zero) += c;
        }
        map.retain(|_, c: &mut BigInt| !c.is_zero());
        TatePolynomial(map)
    }

    /// Coefficients keyed by exponent.
    pub fn coefficients(&self) -> &BTreeMap<i64, BigInt> {
        &self.0
    }

    /// The coefficient of `q^e`.
    pub fn coefficient(&self, e: i64) -> BigInt {
        self.0.get(&e).cloned().unwrap_or_default()
    }

    /// Evaluates at an integer; fails on negative exponents.
    pub fn evaluate(&self, q: &BigInt) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for (e, c) in &self.0 {
            if *e < 0 {
                return Err(Error::Domain(format!("negative exponent {e} in polynomial")));
            }
            total += c * q.pow(*e as u32);
        }
        Ok(total)
    }

    /// The value at `q = 1`.
    pub fn value_at_one(&self) -> BigInt {
        self.0.values().sum()
    }
}

impl fmt::Display for TatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.0.iter().rev() {
            let mono = match *e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{e}"),
            };
            write_signed(f, c, &mono, first)?;
            first = false;
        }
        Ok(())
    }
}

fn write_signed(f: &mut fmt::Formatter<'_>, c: &BigInt, mono: &str, first: bool) -> fmt::Result {
    let sign = if c.is_negative() {
        if first { "-" } else { " - " }
    } else if first {
        ""
    } else {
        " + "
    };
    let mag = c.abs();
    if mono.is_empty() {
        write!(f, "{sign}{mag}")
    } else if mag.is_one() {
        write!(f, "{sign}{mono}")
    } else {
        write!(f, "{sign}{mag}*{mono}")
    }
}

/// Result of extracting a point-count polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointCountPolynomial {
    Tate(TatePolynomial),
    /// The motive is not Tate; carries the offending symbols.
    NotTate(Vec<CuspSymbol>),
}

/// An element of the Grothendieck ring of virtual motives.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct VirtualMotive {
    terms: BTreeMap<MotiveTerm, BigInt>,
}

impl VirtualMotive {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::lefschetz(0)
    }

    /// `L^k`.
    pub fn lefschetz(k: i64) -> Self {
        Self::monomial(BigInt::one(), k, Vec::new())
    }

    /// The integer `c` times the unit.
    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::monomial(c.into(), 0, Vec::new())
    }

    /// `c · L^tate ⊗ symbols`.
    pub fn monomial(coeff: BigInt, tate: i64, symbols: Vec<CuspSymbol>) -> Self {
        let mut out = Self::zero();
        out.add_term(MotiveTerm::new(tate, symbols), coeff);
        out
    }

    /// The class of a symbol; `S[2]` is expanded as `-1 - L`.
    pub fn symbol(symbol: CuspSymbol) -> Self {
        if symbol.genus == 1 && symbol.decoration == Decoration::Plain && symbol.weights[0] == 2 {
            return -(Self::one() + Self::lefschetz(1));
        }
        Self::monomial(BigInt::one(), 0, vec![symbol])
    }

    /// `Σ_{i ∈ range} L^i`.
    pub fn lefschetz_sum(range: std::ops::RangeInclusive<i64>) -> Self {
        let mut out = Self::zero();
        for i in range {
            out.add_term(MotiveTerm::new(i, Vec::new()), BigInt::one());
        }
        out
    }

    fn add_term(&mut self, term: MotiveTerm, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(term.clone()).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&term);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms with their nonzero coefficients, in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&MotiveTerm, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `self ⊗ L^k`.
    pub fn tate_twist(&self, k: i64) -> Self {
        VirtualMotive {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (MotiveTerm::new(t.tate + k, t.symbols.clone()), c.clone()))
                .collect(),
        }
    }

    /// Multiplication by an integer.
    pub fn scale<C: Into<BigInt>>(&self, c: C) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        VirtualMotive {
            terms: self.terms.iter().map(|(t, x)| (t.clone(), x * &c)).collect(),
        }
    }

    /// The tensor product.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (t1, c1) in &self.terms {
            for (t2, c2) in &other.terms {
                out.add_term(t1.times(t2), c1 * c2);
            }
        }
        out
    }

    /// Rebuilds the term map from scratch.
    pub fn canonicalize(&self) -> Self {
        let mut out = Self::zero();
        for (t, c) in &self.terms {
            out.add_term(MotiveTerm::new(t.tate, t.symbols.clone()), c.clone());
        }
        out
    }

    /// All distinct symbols occurring in the motive.
    pub fn symbols(&self) -> Vec<CuspSymbol> {
        let mut out: Vec<CuspSymbol> = self.terms.keys().flat_map(|t| t.symbols.iter().cloned()).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Replaces every symbol for which `f` returns a motive.
    pub fn substitute<F>(&self, f: F) -> Self
    where
        F: Fn(&CuspSymbol) -> Option<VirtualMotive>,
    {
        let mut out = Self::zero();
        for (t, c) in &self.terms {
            let mut acc = VirtualMotive::monomial(c.clone(), t.tate, Vec::new());
            for s in &t.symbols {
                let factor = f(s).unwrap_or_else(|| VirtualMotive::monomial(BigInt::one(), 0, vec![s.clone()]));
                acc = acc.tensor(&factor);
            }
            out += acc;
        }
        out
    }

    /// Virtual rank: `Σ c · ∏ dim(symbol)`, with `rank(L^k) = 1`.
    pub fn rank(&self, dims: &dyn DimensionOracle) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for (t, c) in &self.terms {
            let mut x = c.clone();
            for s in &t.symbols {
                x *= dims.dimension(s)?;
            }
            total += x;
        }
        Ok(total)
    }

    /// Trace of `Frob_p^m`: `Σ c · p^{tate·m} · ∏ trace(symbol)`.
    pub fn trace_frobenius(&self, p: u64, m: u32, hecke: &dyn HeckeSource) -> Result<BigInt> {
        if !forms::is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::Domain("Frobenius power must be positive".into()));
        }
        let mut cache: BTreeMap<&CuspSymbol, BigInt> = BTreeMap::new();
        let mut total = BigInt::zero();
        for (t, c) in &self.terms {
            let e = t.tate * m as i64;
            if e < 0 {
                return Err(Error::Domain(format!("negative Lefschetz exponent {}", t.tate)));
            }
            let mut x = c * forms::pow_big(p, e as u64);
            for s in &t.symbols {
                if !cache.contains_key(s) {
                    cache.insert(s, hecke.symbol_trace(s, p, m)?);
                }
                x *= &cache[s];
            }
            total += x;
        }
        Ok(total)
    }

    /// `Σ c q^tate` if no symbol occurs.
    pub fn as_point_count_polynomial(&self) -> PointCountPolynomial {
        let symbols = self.symbols();
        if !symbols.is_empty() {
            return PointCountPolynomial::NotTate(symbols);
        }
        let mut map = BTreeMap::new();
        for (t, c) in &self.terms {
            map.insert(t.tate, c.clone());
        }
        PointCountPolynomial::Tate(TatePolynomial(map))
    }

    /// The JSON document of this motive.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("motive serializes")
    }

    /// Parses a JSON document.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        VirtualMotive::deserialize(value).map_err(|e| Error::Domain(format!("bad motive JSON: {e}")))
    }
}

impl fmt::Display for VirtualMotive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (t, c) in self.terms.iter().rev() {
            let mut parts = Vec::new();
            match t.tate {
                0 => {}
                1 => parts.push("L".to_string()),
                k => parts.push(format!("L^{k}")),
            }
            parts.extend(t.symbols.iter().map(|s| s.to_string()));
            write_signed(f, c, &parts.join("*"), first)?;
            first = false;
        }
        Ok(())
    }
}

impl AddAssign<&VirtualMotive> for VirtualMotive {
    fn add_assign(&mut self, rhs: &VirtualMotive) {
        for (t, c) in &rhs.terms {
            self.add_term(t.clone(), c.clone());
        }
    }
}

impl AddAssign for VirtualMotive {
    fn add_assign(&mut self, rhs: VirtualMotive) {
        *self += &rhs;
    }
}

impl SubAssign<&VirtualMotive> for VirtualMotive {
    fn sub_assign(&mut self, rhs: &VirtualMotive) {
        for (t, c) in &rhs.terms {
            self.add_term(t.clone(), -c);
        }
    }
}

impl SubAssign for VirtualMotive {
    fn sub_assign(&mut self, rhs: VirtualMotive) {
        *self -= &rhs;
    }
}

impl Neg for VirtualMotive {
    type Output = VirtualMotive;
    fn neg(self) -> VirtualMotive {
        self.scale(-1)
    }
}

impl Neg for &VirtualMotive {
    type Output = VirtualMotive;
    fn neg(self) -> VirtualMotive {
        self.scale(-1)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&VirtualMotive> for &VirtualMotive {
            type Output = VirtualMotive;
            fn $method(self, rhs: &VirtualMotive) -> VirtualMotive {
                let f: fn(&VirtualMotive, &VirtualMotive) -> VirtualMotive = $body;
                f(self, rhs)
            }
        }
        impl $tr<VirtualMotive> for VirtualMotive {
            type Output = VirtualMotive;
            fn $method(self, rhs: VirtualMotive) -> VirtualMotive {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&VirtualMotive> for VirtualMotive {
            type Output = VirtualMotive;
            fn $method(self, rhs: &VirtualMotive) -> VirtualMotive {
                (&self).$method(rhs)
            }
        }
        impl $tr<VirtualMotive> for &VirtualMotive {
            type Output = VirtualMotive;
            fn $method(self, rhs: VirtualMotive) -> VirtualMotive {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| {
    let mut out = a.clone();
    out += b;
    out
});
binop!(Sub, sub, |a, b| {
    let mut out = a.clone();
    out -= b;
    out
});
binop!(Mul, mul, |a, b| a.tensor(b));

impl std::iter::Sum for VirtualMotive {
    fn sum<I: Iterator<Item = VirtualMotive>>(iter: I) -> Self {
        let mut out = VirtualMotive::zero();
        for x in iter {
            out += x;
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SymbolDoc {
    genus: usize,
    weights: Vec<i64>,
    decoration: Decoration,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    tate: i64,
    symbols: Vec<SymbolDoc>,
    coeff: serde_json::Number,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MotiveDoc {
    terms: Vec<TermDoc>,
}

impl Serialize for VirtualMotive {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let doc = MotiveDoc {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| TermDoc {
                    tate: t.tate,
                    symbols: t
                        .symbols
                        .iter()
                        .map(|s| SymbolDoc {
                            genus: s.genus,
                            weights: s.weights.clone(),
                            decoration: s.decoration,
                        })
                        .collect(),
                    coeff: serde_json::Number::from_str(&c.to_string()).expect("integer literal"),
                })
                .collect(),
        };
        doc.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for VirtualMotive {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = MotiveDoc::deserialize(deserializer)?;
        let mut out = VirtualMotive::zero();
        for t in doc.terms {
            let mut symbols = Vec::new();
            for s in t.symbols {
                if s.genus != s.weights.len() {
                    return Err(D::Error::custom(format!(
                        "genus {} does not match {} weights",
                        s.genus,
                        s.weights.len()
                    )));
                }
                symbols.push(CuspSymbol::new(s.weights, s.decoration).map_err(D::Error::custom)?);
            }
            let coeff = BigInt::from_str(&t.coeff.to_string())
                .map_err(|_| D::Error::custom(format!("coefficient {} is not an integer", t.coeff)))?;
            out.add_term(MotiveTerm::new(t.tate, symbols), coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lefschetz_products() {
        let x = VirtualMotive::lefschetz(2) * VirtualMotive::lefschetz(3);
        assert_eq!(x, VirtualMotive::lefschetz(5));
    }

    #[test]
    fn s2_expands() {
        let s2 = VirtualMotive::symbol(CuspSymbol::elliptic(2).unwrap());
        assert_eq!(s2, -(VirtualMotive::one() + VirtualMotive::lefschetz(1)));
        assert_eq!(s2.rank(&FormsTable::standard()).unwrap(), BigInt::from(-2));
    }

    #[test]
    fn traces_of_delta() {
        let t = FormsTable::standard();
        let s12 = VirtualMotive::symbol(CuspSymbol::elliptic(12).unwrap());
        assert_eq!(s12.trace_frobenius(2, 1, &t).unwrap(), BigInt::from(-24));
        assert_eq!(s12.trace_frobenius(2, 2, &t).unwrap(), BigInt::from(-3520));
        assert_eq!(VirtualMotive::lefschetz(5).trace_frobenius(2, 1, &t).unwrap(), BigInt::from(32));
    }

    #[test]
    fn display_is_readable() {
        let x = VirtualMotive::lefschetz(3) + VirtualMotive::lefschetz(2)
            - VirtualMotive::monomial(BigInt::from(2), 1, vec![CuspSymbol::elliptic(12).unwrap()]);
        assert_eq!(x.to_string(), "L^3 + L^2 - 2*L*S[12]");
    }

    #[test]
    fn json_round_trip() {
        let x = VirtualMotive::monomial(BigInt::from(10).pow(40), 7, vec![CuspSymbol::sym2(12).unwrap()])
            - VirtualMotive::one();
        let text = serde_json::to_string(&x).unwrap();
        let y: VirtualMotive = serde_json::from_str(&text).unwrap();
        assert_eq!(x, y);
        assert_eq!(serde_json::to_string(&y).unwrap(), text);
    }
}
