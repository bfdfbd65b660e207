//! Formal level-one Arthur parameters `ψ = ⊕ π_i[d_i]` for `SO_{2n+1}` with
//! a prescribed infinitesimal character, their signs, and their spin
//! contributions as virtual motives.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forms::{self, Count, Family, FamilyKey, FormsTable, HalfInt};
use crate::motive::{CuspSymbol, VirtualMotive};

/// One block `π[d]` of a parameter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub key: FamilyKey,
    pub d: usize,
}

impl Factor {
    pub fn new(key: FamilyKey, d: usize) -> Self {
        Factor { key, d }
    }

    /// The trivial block `[d]`.
    pub fn trivial(d: usize) -> Self {
        Factor {
            key: FamilyKey::trivial(),
            d,
        }
    }

    /// `gl_rank(π) · d`.
    pub fn dim(&self) -> usize {
        self.key.gl_rank() * self.d
    }

    pub fn is_odd(&self) -> bool {
        self.dim() % 2 == 1
    }

    /// The infinitesimal character eigenvalues `w + (d-1)/2 - k`, doubled.
    pub fn values_twice(&self) -> Vec<i64> {
        let d = self.d as i64;
        self.key
            .eigenvalues_twice()
            .into_iter()
            .flat_map(|e| (0..d).map(move |k| e + d - 1 - 2 * k))
            .collect()
    }

    /// Positive eigenvalues, doubled, in decreasing order.
    pub fn positive_values_twice(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.values_twice().into_iter().filter(|&x| x > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.key.is_trivial() {
            write!(f, "[{}]", self.d)
        } else {
            write!(f, "{}[{}]", self.key, self.d)
        }
    }
}

/// A formal parameter; `factors[0]` is the odd-dimensional block.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArthurParameter {
    pub n: usize,
    pub factors: Vec<Factor>,
    /// Number of concrete parameters of this shape (product of family counts).
    pub multiplicity: u64,
}

impl ArthurParameter {
    /// Builds and validates a parameter of genus `n`, reordering the odd
    /// block first and the others by decreasing largest eigenvalue.
    pub fn new(n: usize, mut factors: Vec<Factor>, multiplicity: u64) -> Result<Self> {
        factors.sort_by_key(|f| {
            (
                !f.is_odd(),
                std::cmp::Reverse(f.positive_values_twice().first().copied().unwrap_or(0)),
            )
        });
        let psi = ArthurParameter {
            n,
            factors,
            multiplicity,
        };
        psi.validate()?;
        Ok(psi)
    }

    /// Checks dimension, orthogonality, the single odd block and the
    /// absence of repeated eigenvalues.
    pub fn validate(&self) -> Result<()> {
        let total: usize = self.factors.iter().map(Factor::dim).sum();
        if total != 2 * self.n + 1 {
            return Err(Error::Domain(format!("{self}: dimension {total} != {}", 2 * self.n + 1)));
        }
        if self.factors.iter().filter(|f| f.is_odd()).count() != 1 || !self.factors[0].is_odd() {
            return Err(Error::Domain(format!("{self}: needs exactly one odd block, listed first")));
        }
        for f in &self.factors {
            let orthogonal = match f.key.family {
                Family::S => f.d % 2 == 0,
                Family::Oo | Family::Oe => f.d % 2 == 1,
            };
            if !orthogonal || f.d == 0 {
                return Err(Error::Domain(format!("{self}: block {f} is not orthogonal")));
            }
        }
        if self.factors.iter().duplicates().next().is_some() {
            return Err(Error::Domain(format!("{self}: repeated block")));
        }
        let mut values: Vec<i64> = self.factors.iter().flat_map(Factor::values_twice).collect();
        values.sort_unstable();
        if values.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Domain(format!("{self}: repeated eigenvalue")));
        }
        Ok(())
    }

    /// The odd block `ψ_0`.
    pub fn odd_factor(&self) -> &Factor {
        &self.factors[0]
    }

    /// `d_0`.
    pub fn d0(&self) -> usize {
        self.factors[0].d
    }

    /// Number `r` of even blocks.
    pub fn even_count(&self) -> usize {
        self.factors.len() - 1
    }

    /// `τ = λ + ρ` recovered from the eigenvalues.
    pub fn tau(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.factors.iter().flat_map(Factor::positive_values_twice).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v.into_iter().map(|x| x / 2).collect()
    }
}

impl fmt::Display for ArthurParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.factors.iter().map(|x| x.to_string()).join(" ⊕ "))
    }
}

/// The result of enumerating parameters with a given infinitesimal character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    /// Parameters with every family count known and positive.
    pub parameters: Vec<ArthurParameter>,
    /// The full-size tempered family `O_o(τ)`, absent when `Σλ` is odd.
    pub general: Option<FamilyKey>,
    /// Its count, bundled into `S[k̲]` downstream.
    pub general_count: Count,
    /// Families of unknown count occurring in some otherwise valid shape.
    pub missing: Vec<FamilyKey>,
}

impl Enumeration {
    /// Whether nothing is missing and the general family is resolved.
    pub fn is_complete(&self) -> bool {
        self.missing.is_empty() && self.general_count != Count::Unknown
    }
}

fn validate_lambda(lambda: &[i64]) -> Result<()> {
    if lambda.is_empty() {
        return Err(Error::Domain("genus must be positive".into()));
    }
    if lambda.iter().any(|&x| x < 0) || lambda.windows(2).any(|p| p[0] < p[1]) {
        return Err(Error::Domain(format!(
            "weight {lambda:?} is not weakly decreasing and non-negative"
        )));
    }
    Ok(())
}

/// `τ_i = λ_i + n + 1 - i`.
pub fn tau_of(lambda: &[i64]) -> Vec<i64> {
    let n = lambda.len() as i64;
    lambda.iter().enumerate().map(|(i, &l)| l + n - i as i64).collect()
}

/// The general-type family `O_o(τ)`.
pub fn general_key(lambda: &[i64]) -> FamilyKey {
    FamilyKey {
        family: Family::Oo,
        weights: tau_of(lambda).into_iter().map(HalfInt::from_int).collect(),
    }
}

struct Search<'a> {
    n: usize,
    table: &'a FormsTable,
    general: FamilyKey,
    parameters: Vec<ArthurParameter>,
    missing: Vec<FamilyKey>,
}

impl Search<'_> {
    fn run(&mut self, remaining: &[i64], odd_used: bool, acc: &mut Vec<Factor>, mult: u64, pending: &mut Vec<FamilyKey>) -> Result<()> {
        let Some(&top) = remaining.first() else {
            let mut factors = acc.clone();
            if !odd_used {
                factors.push(Factor::trivial(1));
            }
            if pending.is_empty() {
                self.parameters.push(ArthurParameter::new(self.n, factors, mult)?);
            } else {
                self.missing.extend(pending.iter().cloned());
            }
            return Ok(());
        };
        for d in 1..=(top + 1) as usize {
            let d_i = d as i64;
            let mut candidates: Vec<FamilyKey> = Vec::new();
            if d % 2 == 1 && d_i - 1 == top && !odd_used {
                candidates.push(FamilyKey::trivial());
            }
            let top_weight = top - (d_i - 1);
            if top_weight > 0 {
                let families: &[Family] = if d % 2 == 0 {
                    if top_weight % 2 == 1 { &[Family::S] } else { &[] }
                } else if top_weight % 2 == 0 {
                    if odd_used { &[Family::Oe] } else { &[Family::Oo, Family::Oe] }
                } else {
                    &[]
                };
                let others: Vec<i64> = remaining[1..]
                    .iter()
                    .map(|x| x - (d_i - 1))
                    .filter(|&c| c > 0 && c < top_weight && c % 2 == top_weight % 2)
                    .collect();
                for &family in families {
                    for subset in others.iter().copied().powerset() {
                        if family == Family::Oe && subset.len() % 2 == 0 {
                            continue;
                        }
                        let mut weights = vec![HalfInt(top_weight)];
                        weights.extend(subset.into_iter().map(HalfInt));
                        candidates.push(FamilyKey { family, weights });
                    }
                }
            }
            for key in candidates {
                let factor = Factor::new(key.clone(), d);
                let values = factor.values_twice();
                let zeros = values.iter().filter(|&&x| x == 0).count();
                if zeros != usize::from(factor.is_odd()) {
                    continue;
                }
                let positive = factor.positive_values_twice();
                if positive.first() != Some(&top) || positive.windows(2).any(|w| w[0] == w[1]) {
                    continue;
                }
                if !positive.iter().all(|x| remaining.contains(x)) {
                    continue;
                }
                let rest: Vec<i64> = remaining.iter().copied().filter(|x| !positive.contains(x)).collect();
                if d == 1 && key == self.general {
                    continue;
                }
                let count = self.table.count(&key);
                let pushed_pending = match count {
                    Count::Known(0) => continue,
                    Count::Known(_) => false,
                    Count::Unknown => {
                        pending.push(key.clone());
                        true
                    }
                };
                let c = match count {
                    Count::Known(c) => c,
                    Count::Unknown => 1,
                };
                acc.push(factor.clone());
                let next_mult = mult
                    .checked_mul(c)
                    .ok_or_else(|| Error::SizeLimit("parameter multiplicity overflow".into()))?;
                self.run(&rest, odd_used || factor.is_odd(), acc, next_mult, pending)?;
                acc.pop();
                if pushed_pending {
                    pending.pop();
                }
            }
        }
        Ok(())
    }
}

/// All parameters of genus `n = len(λ)` with infinitesimal character
/// `{±τ_i} ∪ {0}`, excluding the general type `O_o(τ)`.
pub fn enumerate_parameters(lambda: &[i64], table: &FormsTable) -> Result<Enumeration> {
    validate_lambda(lambda)?;
    if lambda.iter().sum::<i64>() % 2 != 0 {
        return Ok(Enumeration {
            parameters: Vec::new(),
            general: None,
            general_count: Count::Known(0),
            missing: Vec::new(),
        });
    }
    let general = general_key(lambda);
    let general_count = table.count(&general);
    let targets: Vec<i64> = tau_of(lambda).into_iter().map(|t| 2 * t).collect();
    let mut search = Search {
        n: lambda.len(),
        table,
        general: general.clone(),
        parameters: Vec::new(),
        missing: Vec::new(),
    };
    search.run(&targets, false, &mut Vec::new(), 1, &mut Vec::new())?;
    let mut parameters = search.parameters;
    parameters.sort_by_cached_key(|p| (p.factors.len(), p.to_string()));
    let mut missing = search.missing;
    missing.sort();
    missing.dedup();
    Ok(Enumeration {
        parameters,
        general: Some(general),
        general_count,
        missing,
    })
}

/// The partition `{1, …, n} = J_0 ⊔ … ⊔ J_r` of slots by owning block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotPartition {
    pub parts: Vec<Vec<usize>>,
}

/// Slot `j` belongs to the block contributing the `j`-th largest positive
/// eigenvalue.
pub fn slot_partition(psi: &ArthurParameter) -> SlotPartition {
    let mut owned: Vec<(i64, usize)> = psi
        .factors
        .iter()
        .enumerate()
        .flat_map(|(i, f)| f.positive_values_twice().into_iter().map(move |v| (v, i)))
        .collect();
    owned.sort_by_key(|x| std::cmp::Reverse(x.0));
    let mut parts = vec![Vec::new(); psi.factors.len()];
    for (slot, (_, owner)) in owned.into_iter().enumerate() {
        parts[owner].push(slot + 1);
    }
    SlotPartition { parts }
}

/// `ε(1/2, π_O × π_S)` for an orthogonal and a symplectic family:
/// `(-1)^{#{(a,b) : w_a > w'_b}}`, times `∏_b (-1)^{w'_b + 1/2}` when
/// `π_O` is odd-dimensional.
pub fn epsilon_pair(orthogonal: &FamilyKey, symplectic: &FamilyKey) -> Result<i32> {
    if orthogonal.family == Family::S || symplectic.family != Family::S {
        return Err(Error::Domain(format!(
            "epsilon_pair needs an orthogonal and a symplectic family, got {orthogonal} and {symplectic}"
        )));
    }
    let mut exponent: i64 = 0;
    for wa in &orthogonal.weights {
        for wb in &symplectic.weights {
            if wa > wb {
                exponent += 1;
            }
        }
    }
    if orthogonal.family == Family::Oo {
        exponent += symplectic.weights.iter().map(|w| (w.twice() + 1) / 2).sum::<i64>();
    }
    Ok(if exponent % 2 == 0 { 1 } else { -1 })
}

fn check_even_index(psi: &ArthurParameter, i: usize) -> Result<()> {
    if i == 0 || i >= psi.factors.len() {
        return Err(Error::Domain(format!(
            "index {i} does not name an even block of {psi}"
        )));
    }
    Ok(())
}

/// `ε_ψ(s_i) = ∏_{j : d_j ≢ d_i} ε(π_i × π_j)^{min(d_i, d_j)}`.
pub fn epsilon_psi(psi: &ArthurParameter, i: usize) -> Result<i32> {
    check_even_index(psi, i)?;
    let fi = &psi.factors[i];
    let mut sign = 1;
    for (j, fj) in psi.factors.iter().enumerate() {
        if j == i || fj.d % 2 == fi.d % 2 {
            continue;
        }
        let (o, s) = if fi.key.family == Family::S { (fj, fi) } else { (fi, fj) };
        let e = epsilon_pair(&o.key, &s.key)?;
        if fi.d.min(fj.d) % 2 == 1 {
            sign *= e;
        }
    }
    Ok(sign)
}

/// `u_i(ψ) = ε_ψ(s_i) · (-1)^{N_i}` with `N_i = #{j ∈ J_i : j even}`.
pub fn u_sign(psi: &ArthurParameter, i: usize) -> Result<i32> {
    let eps = epsilon_psi(psi, i)?;
    let parts = slot_partition(psi);
    let n_i = parts.parts[i].iter().filter(|&&j| j % 2 == 0).count();
    Ok(if n_i % 2 == 0 { eps } else { -eps })
}

/// `(u_1, …, u_r)`.
pub fn u_vector(psi: &ArthurParameter) -> Vec<i32> {
    (1..psi.factors.len())
        .map(|i| u_sign(psi, i).expect("index in range"))
        .collect()
}

/// `(-1)^{n(n+1)/2 + (d_0² - 1)/8} ∏_{i ≥ 1} u_i^{d_i - 1}`.
pub fn global_sign(psi: &ArthurParameter) -> i32 {
    let n = psi.n;
    let d0 = psi.d0();
    let mut exponent = n * (n + 1) / 2 + (d0 * d0 - 1) / 8;
    for (i, u) in u_vector(psi).into_iter().enumerate() {
        if u == -1 {
            exponent += psi.factors[i + 1].d - 1;
        }
    }
    if exponent.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Whether `ψ` contributes holomorphic Siegel cusp forms: `d_0 = 1` and all
/// `u_i(ψ) = +1`.
///
/// The character of the holomorphic discrete series is read as the product
/// of the even-indexed coordinates `z_2 z_4 ⋯`; it takes the value
/// `(-1)^{N_i}` on `s_i`.
pub fn siegel_contributes(psi: &ArthurParameter) -> bool {
    psi.d0() == 1 && u_vector(psi).into_iter().all(|u| u == 1)
}

/// The Lefschetz exponent `Σλ/2 + n(n+1)/4 - a_0(a_0+1)/4 - Σ_{i≥1} dim_i/8`
/// applied to the untwisted spin blocks.
pub fn twist_exponent(psi: &ArthurParameter, lambda: &[i64]) -> Result<i64> {
    let total: i64 = lambda.iter().sum();
    if total % 2 != 0 || lambda.len() != psi.n {
        return Err(Error::Domain(format!("weight {lambda:?} does not fit {psi}")));
    }
    let n = psi.n as i64;
    let a0 = (psi.odd_factor().dim() as i64 - 1) / 2;
    let even_dims: i64 = psi.factors[1..].iter().map(|f| f.dim() as i64).sum();
    let eighths = 4 * total + 2 * n * (n + 1) - 2 * a0 * (a0 + 1) - even_dims;
    if eighths % 8 != 0 {
        return Err(Error::Internal(format!("non-integral twist {eighths}/8 for {psi}")));
    }
    Ok(eighths / 8)
}

fn known_count(table: &FormsTable, key: &FamilyKey) -> Result<BigInt> {
    match table.count(key) {
        Count::Known(c) => Ok(BigInt::from(c)),
        Count::Unknown => Err(Error::Incomplete(vec![key.to_string()])),
    }
}

fn symbol(k: i64) -> Result<VirtualMotive> {
    Ok(VirtualMotive::symbol(CuspSymbol::elliptic(k)?))
}

fn no_closed_form(f: &Factor) -> Error {
    Error::NoClosedForm(f.to_string())
}

/// The family-summed spin block of the odd factor, untwisted.
fn odd_block(f: &Factor) -> Result<VirtualMotive> {
    let w: Vec<i64> = f.key.weights.iter().map(|w| w.twice()).collect();
    match (f.key.family, w.as_slice(), f.d) {
        (Family::Oo, [], d) => {
            let a = (d as i64 - 1) / 2;
            Ok((1..=a).fold(VirtualMotive::one(), |acc, j| {
                acc * (VirtualMotive::one() + VirtualMotive::lefschetz(j))
            }))
        }
        (Family::Oo, [w2], 1) => {
            let w = w2 / 2;
            Ok(symbol(w + 1)?.tate_twist(-(w - 1) / 2))
        }
        _ => Err(no_closed_form(f)),
    }
}

/// The family-summed half-spin block of an even factor, untwisted.
fn even_block(f: &Factor, u: i32, table: &FormsTable) -> Result<VirtualMotive> {
    let w: Vec<i64> = f.key.weights.iter().map(|w| w.twice()).collect();
    let count = || known_count(table, &f.key);
    match (f.key.family, w.as_slice(), f.d, u) {
        (Family::S, [w2], 2, 1) => {
            let k = w2 + 1;
            Ok(symbol(k)?.tate_twist(-(k - 2) / 2))
        }
        (Family::S, [_], 2, _) => {
            Ok((VirtualMotive::one() + VirtualMotive::lefschetz(1)).scale(count()?))
        }
        (Family::S, [w2], 4, 1) => {
            let k = w2 + 1;
            let sym2 = VirtualMotive::symbol(CuspSymbol::sym2(k)?).tate_twist(-(k - 2));
            Ok(sym2 + VirtualMotive::lefschetz_sum(-1..=3).scale(count()?))
        }
        (Family::S, [w2], 4, _) => {
            let k = w2 + 1;
            Ok(symbol(k)?.tate_twist(-(k - 2) / 2) * VirtualMotive::lefschetz_sum(-1..=2))
        }
        (Family::Oe, [a2, b2], 1, u) => {
            let (w1, w2) = (a2 / 2, b2 / 2);
            let (k1, k2) = (w1 + w2 + 1, w1 - w2 + 1);
            let (k, other) = if u == 1 { (k1, k2) } else { (k2, k1) };
            let c = BigInt::from(forms::dim_cusp_elliptic(other));
            Ok(symbol(k)?.tate_twist(-(k - 2) / 2).scale(c))
        }
        _ => Err(no_closed_form(f)),
    }
}

/// The untwisted product of family-summed spin blocks for a sign vector
/// `(u_1, …, u_r)`.
pub fn half_spin(psi: &ArthurParameter, signs: &[i32], table: &FormsTable) -> Result<VirtualMotive> {
    if signs.len() != psi.even_count() {
        return Err(Error::Domain(format!(
            "{psi} has {} even blocks, got {} signs",
            psi.even_count(),
            signs.len()
        )));
    }
    let mut out = odd_block(psi.odd_factor())?;
    for (f, &u) in psi.factors[1..].iter().zip(signs) {
        out = out * even_block(f, u, table)?;
    }
    Ok(out)
}

/// The contribution of `ψ` (all its members) to `e_IH(A_n, V_λ)`.
pub fn spin_contribution(psi: &ArthurParameter, lambda: &[i64], table: &FormsTable) -> Result<VirtualMotive> {
    let twist = twist_exponent(psi, lambda)?;
    Ok(half_spin(psi, &u_vector(psi), table)?
        .tate_twist(twist)
        .scale(global_sign(psi)))
}

/// The sum over all half-spin sign vectors, the contribution of `ψ` to
/// `S[k̲(λ)]` when it is a Siegel parameter.
pub fn siegel_spin_sum(psi: &ArthurParameter, lambda: &[i64], table: &FormsTable) -> Result<VirtualMotive> {
    let twist = twist_exponent(psi, lambda)?;
    let r = psi.even_count();
    let mut out = VirtualMotive::zero();
    for mask in 0..(1u32 << r) {
        let signs: Vec<i32> = (0..r).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
        out += half_spin(psi, &signs, table)?;
    }
    Ok(out.tate_twist(twist))
}

/// Exponents of the Satake roots of the elliptic constituents, and of `p^{1/2}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Atom {
    x: Vec<i64>,
    t: i64,
}

impl Atom {
    fn unit(vars: usize) -> Self {
        Atom { x: vec![0; vars], t: 0 }
    }

    fn times(&self, other: &Atom) -> Atom {
        Atom {
            x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect(),
            t: self.t + other.t,
        }
    }

    fn inverse(&self) -> Atom {
        Atom {
            x: self.x.iter().map(|a| -a).collect(),
            t: -self.t,
        }
    }
}

/// Torus coordinates and spin lift of a block, for one member.
fn block_atoms(f: &Factor, vars: usize, first_var: usize) -> Result<(Vec<Atom>, Atom)> {
    let var = |i: usize, e: i64, t: i64| {
        let mut a = Atom::unit(vars);
        a.x[first_var + i] = e;
        a.t = t;
        a
    };
    let w: Vec<i64> = f.key.weights.iter().map(|w| w.twice()).collect();
    match (f.key.family, w.len(), f.d) {
        (Family::Oo, 0, d) => {
            let a = (d as i64 - 1) / 2;
            let coords = (1..=a)
                .map(|j| {
                    let mut x = Atom::unit(vars);
                    x.t = 2 * j;
                    x
                })
                .collect();
            let mut s = Atom::unit(vars);
            s.t = a * (a + 1) / 2;
            Ok((coords, s))
        }
        (Family::Oo, 1, 1) => Ok((vec![var(0, 2, 0)], var(0, 1, 0))),
        (Family::S, 1, d) => {
            let d = d as i64;
            let coords = (0..d).map(|k| var(0, 1, d - 1 - 2 * k)).collect();
            Ok((coords, var(0, d / 2, 0)))
        }
        (Family::Oe, 2, 1) => {
            let mut z1 = Atom::unit(vars);
            z1.x[first_var] = 1;
            z1.x[first_var + 1] = 1;
            let mut z2 = Atom::unit(vars);
            z2.x[first_var] = 1;
            z2.x[first_var + 1] = -1;
            Ok((vec![z1, z2], var(0, 1, 0)))
        }
        _ => Err(no_closed_form(f)),
    }
}

/// Classical weights of the elliptic constituents of a block.
fn constituent_weights(f: &Factor) -> Result<Vec<i64>> {
    let w: Vec<i64> = f.key.weights.iter().map(|w| w.twice()).collect();
    match (f.key.family, w.as_slice(), f.d) {
        (Family::Oo, [], _) => Ok(Vec::new()),
        (Family::Oo, [w2], 1) => Ok(vec![w2 / 2 + 1]),
        (Family::S, [w2], _) => Ok(vec![w2 + 1]),
        (Family::Oe, [a2, b2], 1) => Ok(vec![(a2 + b2) / 2 + 1, (a2 - b2) / 2 + 1]),
        _ => Err(no_closed_form(f)),
    }
}

/// Eigenvalue atoms `s · ∏_{i ∈ I} z_i^{-1}` of a (half-)spin block.
fn spin_atoms(coords: &[Atom], lift: &Atom, parity: Option<usize>) -> Vec<Atom> {
    let mut out = Vec::new();
    for subset in (0..coords.len()).powerset() {
        if let Some(p) = parity {
            if subset.len() % 2 != p {
                continue;
            }
        }
        let mut a = lift.clone();
        for i in subset {
            a = a.times(&coords[i].inverse());
        }
        out.push(a);
    }
    out
}

/// Numerical trace of `Frob_p^power` on the twisted tensor product of
/// half-spin blocks selected by `signs`, summed over all members of the
/// families of `ψ`, computed from Satake parameters.
pub fn spectral_trace(
    psi: &ArthurParameter,
    lambda: &[i64],
    signs: &[i32],
    p: u64,
    power: u32,
    table: &FormsTable,
) -> Result<BigInt> {
    if signs.len() != psi.even_count() {
        return Err(Error::Domain(format!("{psi}: wrong number of signs")));
    }
    if !forms::is_prime(p) || power == 0 {
        return Err(Error::Domain(format!("invalid Frobenius data p = {p}, power = {power}")));
    }
    let total: i64 = lambda.iter().sum();
    if total % 2 != 0 || lambda.len() != psi.n {
        return Err(Error::Domain(format!("weight {lambda:?} does not fit {psi}")));
    }
    let mut weights = Vec::new();
    let mut offsets = Vec::new();
    for f in &psi.factors {
        offsets.push(weights.len());
        weights.extend(constituent_weights(f)?);
    }
    let vars = weights.len();
    let mut atoms_by_block = Vec::new();
    for (i, f) in psi.factors.iter().enumerate() {
        let (coords, lift) = block_atoms(f, vars, offsets[i])?;
        let parity = if i == 0 {
            None
        } else {
            Some(if signs[i - 1] == 1 { 0 } else { 1 })
        };
        atoms_by_block.push(spin_atoms(&coords, &lift, parity));
    }
    let mut multiset: BTreeMap<Atom, i64> = BTreeMap::new();
    let n = psi.n as i64;
    let mut base = Atom::unit(vars);
    base.t = n * (n + 1) / 2 + total;
    multiset.insert(base, 1);
    for block in &atoms_by_block {
        let mut next = BTreeMap::new();
        for (a, c) in &multiset {
            for b in block {
                *next.entry(a.times(b)).or_insert(0) += c;
            }
        }
        multiset = next;
    }

    let member_lists: Vec<Vec<Vec<String>>> = psi
        .factors
        .iter()
        .map(|f| {
            table
                .members(&f.key)
                .map(|ms| ms.into_iter().map(|m| m.constituents).collect())
        })
        .collect::<Result<_>>()?;
    let mut result = BigRational::zero();
    for choice in member_lists.iter().map(|l| l.iter()).multi_cartesian_product() {
        let labels: Vec<&String> = choice.iter().flat_map(|c| c.iter()).collect();
        let mut a_p = Vec::new();
        for label in &labels {
            a_p.push(table.hecke(label, p).cloned().ok_or_else(|| Error::UnknownHecke {
                symbol: (*label).clone(),
                prime: p,
            })?);
        }
        result += evaluate_atoms(&multiset, &weights, &a_p, p, power)?;
    }
    if !result.is_integer() {
        return Err(Error::Internal(format!("non-integral spectral trace {result} for {psi}")));
    }
    Ok(result.to_integer())
}

/// Sums the atoms at `Frob_p^power`, replacing each `x_v^e` by the average
/// `(α_v^{|e|·power} + β_v^{|e|·power}) / 2` of its Weyl orbit.
fn evaluate_atoms(
    atoms: &BTreeMap<Atom, i64>,
    weights: &[i64],
    a_p: &[BigInt],
    p: u64,
    power: u32,
) -> Result<BigRational> {
    let mut power_sums: BTreeMap<(usize, u32), BigInt> = BTreeMap::new();
    let mut even = BigRational::zero();
    let mut odd = BigRational::zero();
    let two = BigInt::from(2);
    for (atom, &c) in atoms {
        let mut value = BigRational::from_integer(BigInt::from(c));
        let mut half_exp = atom.t * power as i64;
        for (v, &e) in atom.x.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let j = e.unsigned_abs() as u32 * power;
            let ps = power_sums
                .entry((v, j))
                .or_insert_with(|| forms::frobenius_power_trace(weights[v], &a_p[v], p, j))
                .clone();
            value *= BigRational::new(ps, two.clone());
            half_exp -= j as i64 * (weights[v] - 1);
        }
        let whole = half_exp.div_euclid(2);
        let scale = if whole >= 0 {
            BigRational::from_integer(forms::pow_big(p, whole as u64))
        } else {
            BigRational::new(BigInt::one(), forms::pow_big(p, whole.unsigned_abs()))
        };
        value *= scale;
        if half_exp.rem_euclid(2) == 0 {
            even += value;
        } else {
            odd += value;
        }
    }
    if !odd.is_zero() {
        return Err(Error::Internal(format!("odd powers of sqrt(p) survive: {odd}")));
    }
    Ok(even)
}

/// A Siegel cusp form dimension, possibly partial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiegelDimension {
    /// Count of the resolved contributions.
    pub known: u64,
    /// Families whose counts are needed but unknown.
    pub unresolved: Vec<FamilyKey>,
}

impl SiegelDimension {
    pub fn is_complete(&self) -> bool {
        self.unresolved.is_empty()
    }
}

/// `dim S_{k̲}(Sp_2n(Z))`: contributing parameters plus the general type.
pub fn dim_siegel_cusp(weight: &[i64], table: &FormsTable) -> Result<SiegelDimension> {
    let n = weight.len() as i64;
    if n == 0 {
        return Err(Error::Domain("empty weight".into()));
    }
    if weight.windows(2).any(|w| w[0] < w[1]) || weight[weight.len() - 1] < n + 1 {
        return Err(Error::Domain(format!(
            "weight {weight:?} must be weakly decreasing with k_n >= {}",
            n + 1
        )));
    }
    let lambda: Vec<i64> = weight.iter().map(|k| k - n - 1).collect();
    let e = enumerate_parameters(&lambda, table)?;
    let mut known: u64 = e
        .parameters
        .iter()
        .filter(|psi| siegel_contributes(psi))
        .map(|psi| psi.multiplicity)
        .sum();
    let mut unresolved = e.missing.clone();
    match (e.general, e.general_count) {
        (Some(g), Count::Unknown) => unresolved.push(g),
        (_, Count::Known(c)) => known += c,
        (None, Count::Unknown) => {}
    }
    Ok(SiegelDimension { known, unresolved })
}
