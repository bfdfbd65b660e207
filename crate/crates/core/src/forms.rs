//! Level-one elliptic cusp form data and the catalog of self-dual cuspidal
//! families `S(w…)`, `O_o(w…)` and `O_e(w…)`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};

/// Largest index accepted by [`tau_coefficient`].
pub const TAU_BOUND: usize = 10_000;

/// Largest prime for which built-in eigenvalues of `Δ_11` are provided.
pub const BUILTIN_HECKE_PRIME_BOUND: u64 = 97;

/// Default weight bound of [`FormsTable::builtin`].
pub const DEFAULT_MAX_WEIGHT: i64 = 25;

/// Families whose largest infinitesimal-character eigenvalue is at most this
/// bound are empty, apart from `1` and `Δ_11`.
pub const VANISHING_WEIGHT_BOUND: i64 = 7;

/// Dimension of `S_k(SL_2(Z))`.
pub fn dim_cusp_elliptic(k: i64) -> u64 {
    if k < 12 || k % 2 != 0 || k == 14 {
        return 0;
    }
    let base = (k / 12) as u64;
    if k % 12 == 2 {
        base - 1
    } else {
        base
    }
}

static TAU_CACHE: Mutex<Vec<i128>> = Mutex::new(Vec::new());

/// Coefficients `c_0, …, c_len-1` of `∏_{m ≥ 1} (1 - q^m)^24`.
fn delta_quotient_coefficients(len: usize) -> Result<Vec<i128>> {
    let mut cache = TAU_CACHE.lock().map_err(|_| Error::Internal("tau cache poisoned".into()))?;
    if cache.len() >= len {
        return Ok(cache[..len].to_vec());
    }
    let mut sigma = vec![0i128; len + 1];
    for d in 1..=len {
        for k in (d..=len).step_by(d) {
            sigma[k] += d as i128;
        }
    }
    let overflow = || Error::SizeLimit("tau coefficient overflow".into());
    let mut c = std::mem::take(&mut *cache);
    if c.is_empty() {
        c.push(1);
    }
    for n in c.len()..len {
        let mut acc: i128 = 0;
        for k in 1..=n {
            let term = sigma[k].checked_mul(c[n - k]).ok_or_else(overflow)?;
            acc = acc.checked_add(term).ok_or_else(overflow)?;
        }
        let val = acc.checked_mul(-24).ok_or_else(overflow)?;
        if val % n as i128 != 0 {
            return Err(Error::Internal(format!("non-integral coefficient at index {n}")));
        }
        c.push(val / n as i128);
    }
    *cache = c;
    Ok(cache[..len].to_vec())
}

/// Ramanujan's `τ(N)`: the coefficient of `q^N` in `q ∏ (1 - q^m)^24`.
pub fn tau_coefficient(n: usize) -> Result<BigInt> {
    if n == 0 || n > TAU_BOUND {
        return Err(Error::SizeLimit(format!("tau index {n} outside 1..={TAU_BOUND}")));
    }
    Ok(BigInt::from(delta_quotient_coefficients(n)?[n - 1]))
}

/// `α^m + β^m` where `α + β = a_p` and `αβ = p^(k-1)`.
pub fn frobenius_power_trace(k: i64, a_p: &BigInt, p: u64, m: u32) -> BigInt {
    let norm = BigInt::from(p).pow((k - 1).max(0) as u32);
    let mut prev = BigInt::from(2);
    if m == 0 {
        return prev;
    }
    let mut cur = a_p.clone();
    for _ in 1..m {
        let next = a_p * &cur - &norm * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Primality by trial division (inputs are small).
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A rational number with denominator dividing 2, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(pub i64);

impl HalfInt {
    /// The integer `n`.
    pub fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    /// Twice the value.
    pub fn twice(self) -> i64 {
        self.0
    }

    /// Whether the value is an integer.
    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// The value if it is an integer.
    pub fn to_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        match s.split_once('/') {
            None => s
                .parse::<i64>()
                .map(HalfInt::from_int)
                .map_err(|e| format!("bad weight {s:?}: {e}")),
            Some((num, den)) => {
                let num: i64 = num.trim().parse().map_err(|e| format!("bad weight {s:?}: {e}"))?;
                match den.trim() {
                    "1" => Ok(HalfInt::from_int(num)),
                    "2" => Ok(HalfInt(num)),
                    _ => Err(format!("weight {s:?} has denominator other than 1 or 2")),
                }
            }
        }
    }
}

/// The three kinds of level-one self-dual cuspidal families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Symplectic type, half-integral weights.
    S,
    /// Odd orthogonal type, integral weights and an eigenvalue `0`.
    Oo,
    /// Even orthogonal type, integral weights.
    Oe,
}

impl Family {
    /// The name used in table files.
    pub fn name(self) -> &'static str {
        match self {
            Family::S => "S",
            Family::Oo => "Oo",
            Family::Oe => "Oe",
        }
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "S" => Ok(Family::S),
            "Oo" | "O_o" => Ok(Family::Oo),
            "Oe" | "O_e" => Ok(Family::Oe),
            _ => Err(format!("unknown family type {s:?}")),
        }
    }
}

/// A cuspidal family: all level-one self-dual cuspidal representations of a
/// given type whose infinitesimal character has positive eigenvalues
/// `weights` (strictly decreasing).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyKey {
    pub family: Family,
    pub weights: Vec<HalfInt>,
}

impl FamilyKey {
    /// Validates integrality, positivity and ordering.
    pub fn new(family: Family, weights: Vec<HalfInt>) -> Result<Self> {
        if weights.iter().any(|w| w.0 <= 0) || weights.windows(2).any(|p| p[0] <= p[1]) {
            return Err(Error::Domain(format!(
                "weights of {} must be positive and strictly decreasing",
                family.name()
            )));
        }
        let ok = match family {
            Family::S => weights.iter().all(|w| !w.is_integer()),
            Family::Oo | Family::Oe => weights.iter().all(|w| w.is_integer()),
        };
        if !ok {
            return Err(Error::Domain(format!(
                "weights of {} have the wrong integrality",
                family.name()
            )));
        }
        Ok(FamilyKey { family, weights })
    }

    /// The trivial representation of `GL_1`.
    pub fn trivial() -> Self {
        FamilyKey {
            family: Family::Oo,
            weights: Vec::new(),
        }
    }

    /// Whether this is the trivial representation.
    pub fn is_trivial(&self) -> bool {
        self.family == Family::Oo && self.weights.is_empty()
    }

    /// The rank of the general linear group.
    pub fn gl_rank(&self) -> usize {
        match self.family {
            Family::Oo => 2 * self.weights.len() + 1,
            Family::S | Family::Oe => 2 * self.weights.len(),
        }
    }

    /// Twice the largest weight (0 for the trivial representation).
    pub fn top_twice(&self) -> i64 {
        self.weights.first().map_or(0, |w| w.0)
    }

    /// The eigenvalues of the infinitesimal character, doubled.
    pub fn eigenvalues_twice(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self.weights.iter().flat_map(|w| [w.0, -w.0]).collect();
        if self.family == Family::Oo {
            out.push(0);
        }
        out
    }
}

impl fmt::Display for FamilyKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let ws: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "{}({})", self.family.name(), ws.join(","))
    }
}

/// Where a catalog entry comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    BuiltinDerived,
    Ingested,
}

/// A member of a cuspidal family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuspidalClass {
    pub key: FamilyKey,
    pub label: String,
    pub provenance: Provenance,
    /// Labels of the elliptic eigenforms this member is built from: the form
    /// itself for `S(w)`, the lifted form for `O_o(w)`, the pair for
    /// `O_e(w_1, w_2)`, nothing otherwise.
    pub constituents: Vec<String>,
}

/// The number of members of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Count {
    Known(u64),
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct IngestedFamily {
    count: u64,
    labels: Vec<String>,
}

/// Catalog of cuspidal families with counts, members and Hecke eigenvalues.
///
/// Counts of single-weight and pair families are derived from elliptic
/// dimensions; other families are unknown unless ingested. Built once and
/// then read-only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormsTable {
    max_weight: i64,
    ingested: BTreeMap<FamilyKey, IngestedFamily>,
    hecke: BTreeMap<(String, u64), BigInt>,
}

/// The elliptic cusp form label used for generated members of weight `k`.
fn elliptic_label(k: i64, index: usize, total: u64) -> String {
    if total == 1 {
        format!("Δ_{}", k - 1)
    } else {
        format!("Δ_{}.{}", k - 1, index + 1)
    }
}

impl FormsTable {
    /// The built-in table with derivation rules for weights up to
    /// `max_weight` and eigenvalues of `Δ_11` at primes up to 97.
    pub fn builtin(max_weight: i64) -> Result<Self> {
        if max_weight > DEFAULT_MAX_WEIGHT {
            return Err(Error::SizeLimit(format!(
                "max weight {max_weight} exceeds {DEFAULT_MAX_WEIGHT}"
            )));
        }
        let mut hecke = BTreeMap::new();
        for p in (2..=BUILTIN_HECKE_PRIME_BOUND).filter(|&p| is_prime(p)) {
            hecke.insert(("Δ_11".to_string(), p), tau_coefficient(p as usize)?);
        }
        Ok(FormsTable {
            max_weight,
            ingested: BTreeMap::new(),
            hecke,
        })
    }

    /// The built-in table with the default weight bound.
    pub fn standard() -> Self {
        Self::builtin(DEFAULT_MAX_WEIGHT).expect("default weight bound is valid")
    }

    /// The weight bound of the derivation rules.
    pub fn max_weight(&self) -> i64 {
        self.max_weight
    }

    /// The count forced by derivation rules, if any.
    pub fn derived_count(&self, key: &FamilyKey) -> Option<u64> {
        if key.top_twice() > 2 * self.max_weight {
            return None;
        }
        let w: Vec<i64> = key.weights.iter().map(|w| w.0).collect();
        match (key.family, w.as_slice()) {
            (Family::Oo, []) => Some(1),
            (Family::S, [w]) => Some(dim_cusp_elliptic(w + 1)),
            (Family::Oo, [w]) => Some(dim_cusp_elliptic(w / 2 + 1)),
            (Family::Oe, [w1, w2]) => {
                let (w1, w2) = (w1 / 2, w2 / 2);
                if (w1 + w2) % 2 == 0 {
                    Some(0)
                } else {
                    Some(dim_cusp_elliptic(w1 + w2 + 1) * dim_cusp_elliptic(w1 - w2 + 1))
                }
            }
            (Family::Oe, ws) if ws.len() % 2 == 1 => Some(0),
            _ if key.top_twice() <= 2 * VANISHING_WEIGHT_BOUND => Some(0),
            _ => None,
        }
    }

    /// The number of members of a family.
    pub fn count(&self, key: &FamilyKey) -> Count {
        if let Some(c) = self.derived_count(key) {
            return Count::Known(c);
        }
        match self.ingested.get(key) {
            Some(f) => Count::Known(f.count),
            None => Count::Unknown,
        }
    }

    /// Labels of the normalized eigenforms in `S_k(SL_2(Z))`.
    pub fn elliptic_forms(&self, k: i64) -> Vec<String> {
        let dim = dim_cusp_elliptic(k);
        if dim == 0 {
            return Vec::new();
        }
        let key = FamilyKey {
            family: Family::S,
            weights: vec![HalfInt(k - 1)],
        };
        if let Some(f) = self.ingested.get(&key) {
            if !f.labels.is_empty() {
                return f.labels.clone();
            }
        }
        (0..dim as usize).map(|i| elliptic_label(k, i, dim)).collect()
    }

    /// All members of a family, or an error if its count is unknown.
    pub fn members(&self, key: &FamilyKey) -> Result<Vec<CuspidalClass>> {
        let derived = |label: String, constituents: Vec<String>| CuspidalClass {
            key: key.clone(),
            label,
            provenance: Provenance::BuiltinDerived,
            constituents,
        };
        if self.derived_count(key).is_some() {
            let w: Vec<i64> = key.weights.iter().map(|w| w.0).collect();
            let out = match (key.family, w.as_slice()) {
                (Family::Oo, []) => vec![derived("1".into(), Vec::new())],
                (Family::S, [w]) => self
                    .elliptic_forms(w + 1)
                    .into_iter()
                    .map(|l| derived(l.clone(), vec![l]))
                    .collect(),
                (Family::Oo, [w]) => self
                    .elliptic_forms(w / 2 + 1)
                    .into_iter()
                    .map(|l| derived(format!("Sym2({l})"), vec![l]))
                    .collect(),
                (Family::Oe, [w1, w2]) if self.derived_count(key) != Some(0) => {
                    let (w1, w2) = (w1 / 2, w2 / 2);
                    let mut out = Vec::new();
                    for l1 in self.elliptic_forms(w1 + w2 + 1) {
                        for l2 in self.elliptic_forms(w1 - w2 + 1) {
                            out.push(derived(format!("{l1}⊗{l2}"), vec![l1.clone(), l2]));
                        }
                    }
                    out
                }
                _ => Vec::new(),
            };
            return Ok(out);
        }
        match self.ingested.get(key) {
            Some(f) if f.labels.len() as u64 == f.count => Ok(f
                .labels
                .iter()
                .map(|l| CuspidalClass {
                    key: key.clone(),
                    label: l.clone(),
                    provenance: Provenance::Ingested,
                    constituents: Vec::new(),
                })
                .collect()),
            Some(_) => Err(Error::Incomplete(vec![format!("{key} (members not listed)")])),
            None => Err(Error::Incomplete(vec![key.to_string()])),
        }
    }

    /// The classical Hecke eigenvalue `a_p` of a labelled eigenform.
    pub fn hecke(&self, label: &str, p: u64) -> Option<&BigInt> {
        self.hecke.get(&(label.to_string(), p))
    }

    /// The classical weight of a labelled elliptic eigenform, if known.
    pub fn elliptic_weight(&self, label: &str) -> Option<i64> {
        (12..=2 * self.max_weight + 1)
            .step_by(2)
            .find(|&k| self.elliptic_forms(k).iter().any(|l| l == label))
    }

    /// Overlays the families of a JSON document on this table.
    pub fn ingest_str(&self, text: &str) -> Result<FormsTable> {
        let doc: TableFile = serde_json::from_str(text).map_err(|e| Error::Ingestion {
            location: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        let mut out = self.clone();
        let mut seen = BTreeMap::new();
        for (i, entry) in doc.families.iter().enumerate() {
            let loc = format!("families[{i}]");
            let err = |location: String, message: String| Error::Ingestion { location, message };
            let family: Family = entry
                .family
                .parse()
                .map_err(|m| err(format!("{loc}.type"), m))?;
            let mut weights = Vec::new();
            for (j, w) in entry.weights.iter().enumerate() {
                let text = match w {
                    serde_json::Value::String(s) => s.clone(),
                    serde_json::Value::Number(n) => n.to_string(),
                    other => {
                        return Err(err(format!("{loc}.weights[{j}]"), format!("unexpected {other}")))
                    }
                };
                let hw: HalfInt = text
                    .parse()
                    .map_err(|m| err(format!("{loc}.weights[{j}]"), m))?;
                weights.push(hw);
            }
            let key = FamilyKey::new(family, weights).map_err(|e| err(format!("{loc}.weights"), e.to_string()))?;
            if key.family == Family::Oe && key.weights.len() % 2 == 1 && entry.count > 0 {
                return Err(err(
                    format!("{loc}.count"),
                    format!("{key} has an odd number of weights and must be empty"),
                ));
            }
            if let Some(prev) = seen.insert(key.clone(), i) {
                return Err(err(loc, format!("duplicate family {key} (first at families[{prev}])")));
            }
            if let Some(derived) = out.derived_count(&key) {
                if derived != entry.count {
                    return Err(err(
                        format!("{loc}.count"),
                        format!("{key} has derived count {derived}, file says {}", entry.count),
                    ));
                }
            }
            if !entry.forms.is_empty() && entry.forms.len() as u64 != entry.count {
                return Err(err(
                    format!("{loc}.forms"),
                    format!("{} forms listed for count {}", entry.forms.len(), entry.count),
                ));
            }
            let mut labels = Vec::new();
            for (j, form) in entry.forms.iter().enumerate() {
                for (p, v) in &form.hecke {
                    let ploc = format!("{loc}.forms[{j}].hecke.{p}");
                    let prime: u64 = p.parse().map_err(|_| err(ploc.clone(), "prime key expected".into()))?;
                    if !is_prime(prime) {
                        return Err(err(ploc, format!("{prime} is not prime")));
                    }
                    let value = match v {
                        serde_json::Value::Number(n) => BigInt::from_str(&n.to_string()).ok(),
                        serde_json::Value::String(s) => BigInt::from_str(s).ok(),
                        _ => None,
                    }
                    .ok_or_else(|| err(ploc.clone(), "integer eigenvalue expected".into()))?;
                    out.hecke.insert((form.label.clone(), prime), value);
                }
                labels.push(form.label.clone());
            }
            out.ingested.insert(
                key,
                IngestedFamily {
                    count: entry.count,
                    labels,
                },
            );
        }
        Ok(out)
    }

    /// Loads a JSON table file and overlays it on this table.
    pub fn ingest_file(&self, path: &Path) -> Result<FormsTable> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Ingestion {
            location: path.display().to_string(),
            message: e.to_string(),
        })?;
        self.ingest_str(&text)
    }
}

/// Loads a JSON table file over the standard built-in table.
pub fn load_forms_table(path: &Path) -> Result<FormsTable> {
    FormsTable::standard().ingest_file(path)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFile {
    families: Vec<FamilyEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyEntry {
    #[serde(rename = "type")]
    family: String,
    weights: Vec<serde_json::Value>,
    count: u64,
    #[serde(default)]
    forms: Vec<FormEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormEntry {
    label: String,
    #[serde(default)]
    hecke: BTreeMap<String, serde_json::Value>,
}

/// Sum of `α^m + β^m` over the eigenforms of weight `k`.
pub fn elliptic_family_trace(table: &FormsTable, k: i64, p: u64, m: u32) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for label in table.elliptic_forms(k) {
        let a_p = table.hecke(&label, p).ok_or_else(|| Error::UnknownHecke {
            symbol: label.clone(),
            prime: p,
        })?;
        total += frobenius_power_trace(k, a_p, p, m);
    }
    Ok(total)
}

/// Sum of `α^2m + (αβ)^m + β^2m` over the eigenforms of weight `k`.
pub fn elliptic_sym2_trace(table: &FormsTable, k: i64, p: u64, m: u32) -> Result<BigInt> {
    let mut total = BigInt::zero();
    let norm_m = BigInt::from(p).pow(((k - 1) as u32) * m);
    for label in table.elliptic_forms(k) {
        let a_p = table.hecke(&label, p).ok_or_else(|| Error::UnknownHecke {
            symbol: label.clone(),
            prime: p,
        })?;
        total += frobenius_power_trace(k, a_p, p, 2 * m) + &norm_m;
    }
    Ok(total)
}

/// `p^e` for a possibly large exponent.
pub(crate) fn pow_big(p: u64, e: u64) -> BigInt {
    let mut out = BigInt::one();
    let base = BigInt::from(p);
    for _ in 0..e {
        out *= &base;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_dimensions() {
        assert_eq!(dim_cusp_elliptic(12), 1);
        assert_eq!(dim_cusp_elliptic(14), 0);
        assert_eq!(dim_cusp_elliptic(24), 2);
        assert_eq!(dim_cusp_elliptic(26), 1);
        assert_eq!(dim_cusp_elliptic(13), 0);
    }

    #[test]
    fn tau_small_values() {
        let t: Vec<BigInt> = (1..=6).map(|n| tau_coefficient(n).unwrap()).collect();
        let expect = [1, -24, 252, -1472, 4830, -6048];
        for (a, b) in t.iter().zip(expect) {
            assert_eq!(*a, BigInt::from(b));
        }
        assert!(tau_coefficient(0).is_err());
        assert!(tau_coefficient(TAU_BOUND + 1).is_err());
    }

    #[test]
    fn halfint_parsing() {
        assert_eq!("11/2".parse::<HalfInt>().unwrap(), HalfInt(11));
        assert_eq!("9".parse::<HalfInt>().unwrap(), HalfInt(18));
        assert!("1/3".parse::<HalfInt>().is_err());
        assert_eq!(HalfInt(11).to_string(), "11/2");
    }

    #[test]
    fn builtin_counts() {
        let t = FormsTable::standard();
        let s = FamilyKey::new(Family::S, vec![HalfInt(11)]).unwrap();
        assert_eq!(t.count(&s), Count::Known(1));
        assert_eq!(t.members(&s).unwrap()[0].label, "Δ_11");
        let o = FamilyKey::new(Family::Oo, vec![HalfInt(18), HalfInt(16)]).unwrap();
        assert_eq!(t.count(&o), Count::Unknown);
        let small = FamilyKey::new(Family::Oo, vec![HalfInt(10), HalfInt(4)]).unwrap();
        assert_eq!(t.count(&small), Count::Known(0));
    }
}
