//! The Weyl group of type `C_n` as signed permutations, Kostant
//! representatives for `GL_n`, and the dot action on `GSp_2n` weights.

use std::fmt;

use itertools::Itertools;
use num_rational::Ratio;

use crate::error::{Error, Result};

/// Largest rank accepted by exhaustive enumeration.
pub const MAX_ENUMERATION_RANK: usize = 8;

/// A bijection `w` of `{±1, …, ±n}` with `w(-i) = -w(i)`.
///
/// Stored by its images on positive indices: `images[i - 1] = w(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    images: Vec<i32>,
}

impl SignedPermutation {
    /// Builds a signed permutation from its images `w(1), …, w(n)`.
    pub fn new(images: Vec<i32>) -> Result<Self> {
        let n = images.len() as i32;
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x == 0 || x.abs() > n || seen[(x.abs() - 1) as usize] {
                return Err(Error::Domain(format!(
                    "{images:?} is not a signed permutation"
                )));
            }
            seen[(x.abs() - 1) as usize] = true;
        }
        Ok(SignedPermutation { images })
    }

    /// The identity of rank `n`.
    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            images: (1..=n as i32).collect(),
        }
    }

    /// The positive cycle `(c_1 c_2 … c_r)`, i.e. `c_1 ↦ c_2 ↦ … ↦ c_r ↦ c_1`.
    pub fn from_cycle(n: usize, cycle: &[i32]) -> Result<Self> {
        let mut images: Vec<i32> = (1..=n as i32).collect();
        for (k, &c) in cycle.iter().enumerate() {
            if c < 1 || c as usize > n {
                return Err(Error::Domain(format!("cycle entry {c} out of range")));
            }
            images[(c - 1) as usize] = cycle[(k + 1) % cycle.len()];
        }
        Self::new(images)
    }

    /// The rank `n`.
    pub fn rank(&self) -> usize {
        self.images.len()
    }

    /// The images `w(1), …, w(n)`.
    pub fn images(&self) -> &[i32] {
        &self.images
    }

    /// Evaluates `w(i)` for `i ∈ {±1, …, ±n}`.
    pub fn apply(&self, i: i32) -> i32 {
        let v = self.images[(i.abs() - 1) as usize];
        if i < 0 {
            -v
        } else {
            v
        }
    }

    /// The inverse element.
    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.rank()];
        for (j, &x) in self.images.iter().enumerate() {
            let j = j as i32 + 1;
            images[(x.abs() - 1) as usize] = if x < 0 { -j } else { j };
        }
        SignedPermutation { images }
    }

    /// The composite `self ∘ other`.
    pub fn compose(&self, other: &SignedPermutation) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::Domain("composing signed permutations of different rank".into()));
        }
        Ok(SignedPermutation {
            images: other.images.iter().map(|&x| self.apply(x)).collect(),
        })
    }

    /// Number of inversions of `|w|` as a permutation of `{1, …, n}`.
    pub fn inversions(&self) -> usize {
        self.images
            .iter()
            .tuple_combinations()
            .filter(|(x, y)| x.abs() > y.abs())
            .count()
    }

    /// Number of `i > 0` with `w(i) < 0`.
    pub fn sign_flips(&self) -> usize {
        self.images.iter().filter(|&&x| x < 0).count()
    }

    /// The determinant of `w` on the reflection representation.
    pub fn sign(&self) -> i32 {
        if (self.inversions() + self.sign_flips()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.images.iter().join(", "))
    }
}

/// A dominant weight `(λ_1 ≥ … ≥ λ_n ≥ 0; m)` for `GSp_2n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominantWeight {
    lambda: Vec<i64>,
    m: i64,
}

impl DominantWeight {
    /// Validates and builds a dominant weight.
    pub fn new(lambda: Vec<i64>, m: i64) -> Result<Self> {
        if lambda.iter().any(|&x| x < 0) || lambda.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::Domain(format!(
                "weight {lambda:?} is not weakly decreasing and non-negative"
            )));
        }
        Ok(DominantWeight { lambda, m })
    }

    /// The zero weight of rank `n`.
    pub fn zero(n: usize) -> Self {
        DominantWeight {
            lambda: vec![0; n],
            m: 0,
        }
    }

    /// The rank `n`.
    pub fn rank(&self) -> usize {
        self.lambda.len()
    }

    /// The entries `λ_1, …, λ_n`.
    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }

    /// The similitude exponent `m`.
    pub fn similitude(&self) -> i64 {
        self.m
    }

    /// `λ_1 + … + λ_n`.
    pub fn total(&self) -> i64 {
        self.lambda.iter().sum()
    }

    /// `τ = λ + ρ` on the `Sp` part: `τ_i = λ_i + n + 1 - i`.
    pub fn tau(&self) -> Vec<i64> {
        let n = self.rank() as i64;
        self.lambda
            .iter()
            .enumerate()
            .map(|(i, &l)| l + n - i as i64)
            .collect()
    }

    /// The weight as a general `GSp_2n` weight.
    pub fn to_gsp(&self) -> GSpWeight {
        GSpWeight {
            entries: self.lambda.clone(),
            similitude: self.m,
        }
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.lambda.iter().join(", "), self.m)
    }
}

/// An arbitrary integral `GSp_2n` weight `(μ_1, …, μ_n; m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GSpWeight {
    pub entries: Vec<i64>,
    pub similitude: i64,
}

impl GSpWeight {
    /// The dominant weight with the same entries, if it is dominant.
    pub fn to_dominant(&self) -> Option<DominantWeight> {
        DominantWeight::new(self.entries.clone(), self.similitude).ok()
    }
}

impl From<&DominantWeight> for GSpWeight {
    fn from(w: &DominantWeight) -> Self {
        w.to_gsp()
    }
}

/// A weight of `GL_1^a × GL_2^b`, read off as a flat integer sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GLWeight(pub Vec<i64>);

/// Computes `w · μ = w(μ + ρ) - ρ` with `ρ = (n, …, 1; n(n+1)/4)`.
///
/// A coordinate sent to a negative index subtracts its `τ`-value from the
/// similitude entry. The similitude is carried exactly as a rational and
/// the result is checked to be integral.
pub fn dot_action(w: &SignedPermutation, mu: &GSpWeight) -> Result<GSpWeight> {
    let n = w.rank();
    if mu.entries.len() != n {
        return Err(Error::Domain(format!(
            "rank mismatch: element of rank {n}, weight of rank {}",
            mu.entries.len()
        )));
    }
    let rho: Vec<i64> = (1..=n as i64).rev().collect();
    let rho_sim = Ratio::new((n * (n + 1)) as i64, 4);
    let tau: Vec<i64> = mu.entries.iter().zip(&rho).map(|(x, r)| x + r).collect();
    let mut moved = vec![0i64; n];
    let mut sim = Ratio::from_integer(mu.similitude) + rho_sim;
    for (j, &t) in tau.iter().enumerate() {
        let target = w.images[j];
        let slot = (target.abs() - 1) as usize;
        if target < 0 {
            moved[slot] = -t;
            sim -= Ratio::from_integer(t);
        } else {
            moved[slot] = t;
        }
    }
    let sim = sim - rho_sim;
    if !sim.is_integer() {
        return Err(Error::Internal(format!(
            "non-integral similitude {sim} in dot action of {w}"
        )));
    }
    Ok(GSpWeight {
        entries: moved.iter().zip(&rho).map(|(x, r)| x - r).collect(),
        similitude: sim.to_integer(),
    })
}

/// Splits a weight into its `GL_1^a × GL_2^b` part and its `GSp` part.
pub fn split_lin_her(mu: &GSpWeight, a: usize, b: usize) -> Result<(GLWeight, GSpWeight)> {
    let h = a + 2 * b;
    if h > mu.entries.len() {
        return Err(Error::Domain(format!(
            "a + 2b = {h} exceeds rank {}",
            mu.entries.len()
        )));
    }
    Ok((
        GLWeight(mu.entries[..h].to_vec()),
        GSpWeight {
            entries: mu.entries[h..].to_vec(),
            similitude: mu.similitude,
        },
    ))
}

/// All `2^n · n!` signed permutations of rank `n`, in lexicographic order of
/// their image sequences.
pub fn enumerate_signed_perms(n: usize) -> Result<Vec<SignedPermutation>> {
    if n == 0 || n > MAX_ENUMERATION_RANK {
        return Err(Error::SizeLimit(format!(
            "rank {n} outside 1..={MAX_ENUMERATION_RANK}"
        )));
    }
    let mut out = Vec::new();
    for perm in (1..=n as i32).permutations(n) {
        for mask in 0..(1u32 << n) {
            let images = perm
                .iter()
                .enumerate()
                .map(|(i, &x)| if mask >> i & 1 == 1 { -x } else { x })
                .collect();
            out.push(SignedPermutation { images });
        }
    }
    out.sort();
    Ok(out)
}

/// Selects which first chain of inequalities defines a Weyl set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeylKind {
    /// `0 < w⁻¹(1) < … < w⁻¹(a)`.
    W,
    /// `w⁻¹(1) > … > w⁻¹(a) > 0`.
    WPrime,
}

/// The set `W(a, b, n)` or `W'(a, b, n)` of signed permutations `w` with:
///
/// * the singleton chain on `w⁻¹(1), …, w⁻¹(a)` selected by `kind`,
/// * `0 < w⁻¹(a+1) < w⁻¹(a+3) < … < w⁻¹(a+2b-1)`,
/// * `|w⁻¹(a+2i)| > w⁻¹(a+2i-1)` for `1 ≤ i ≤ b`,
/// * `0 < w⁻¹(a+2b+1) < … < w⁻¹(n)`.
///
/// The elements are generated directly (choose slots, then signs) and
/// returned in lexicographic order of their image sequences.
pub fn weyl_set(kind: WeylKind, a: usize, b: usize, n: usize) -> Result<Vec<SignedPermutation>> {
    if a + 2 * b > n {
        return Err(Error::Domain(format!("a + 2b = {} exceeds n = {n}", a + 2 * b)));
    }
    let mut out = Vec::new();
    let all: Vec<i32> = (1..=n as i32).collect();
    for singles in all.iter().copied().combinations(a) {
        let rest: Vec<i32> = all.iter().copied().filter(|x| !singles.contains(x)).collect();
        let mut head = singles.clone();
        if kind == WeylKind::WPrime {
            head.reverse();
        }
        for paired in rest.iter().copied().combinations(2 * b) {
            let tail: Vec<i32> = rest.iter().copied().filter(|x| !paired.contains(x)).collect();
            for matching in matchings(&paired) {
                for mask in 0..(1u32 << b) {
                    let mut inv = head.clone();
                    for (i, &(f, s)) in matching.iter().enumerate() {
                        inv.push(f);
                        inv.push(if mask >> i & 1 == 1 { -s } else { s });
                    }
                    inv.extend(&tail);
                    out.push(SignedPermutation { images: inv }.inverse());
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Perfect matchings of a sorted list into pairs `(f, s)` with `f < s`,
/// listed with increasing first elements.
fn matchings(items: &[i32]) -> Vec<Vec<(i32, i32)>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let first = items[0];
    let mut out = Vec::new();
    for k in 1..items.len() {
        let rest: Vec<i32> = items[1..]
            .iter()
            .enumerate()
            .filter(|&(i, _)| i + 1 != k)
            .map(|(_, &x)| x)
            .collect();
        for mut m in matchings(&rest) {
            m.insert(0, (first, items[k]));
            out.push(m);
        }
    }
    out
}

/// The set `𝔖(a, b)` of permutations `σ` of `{1, …, a + 2b}` with
///
/// * `σ⁻¹(1) < … < σ⁻¹(a)`,
/// * `σ⁻¹(a+2i-1) < σ⁻¹(a+2i)` for `1 ≤ i ≤ b`,
/// * `σ⁻¹(a+1) < σ⁻¹(a+3) < … < σ⁻¹(a+2b-1)`.
///
/// Each permutation is returned as its image sequence `σ(1), …, σ(n)`.
pub fn kostant_gl(a: usize, b: usize) -> Vec<Vec<usize>> {
    let n = a + 2 * b;
    let all: Vec<i32> = (1..=n as i32).collect();
    let mut out = Vec::new();
    for singles in all.iter().copied().combinations(a) {
        let rest: Vec<i32> = all.iter().copied().filter(|x| !singles.contains(x)).collect();
        for matching in matchings(&rest) {
            let mut inv = singles.clone();
            for (f, s) in matching {
                inv.push(f);
                inv.push(s);
            }
            let mut sigma = vec![0usize; n];
            for (i, &x) in inv.iter().enumerate() {
                sigma[(x - 1) as usize] = i + 1;
            }
            out.push(sigma);
        }
    }
    out.sort();
    out
}

/// The sign of a permutation given by its image sequence (1-based).
pub fn permutation_sign(sigma: &[usize]) -> i32 {
    let inv = sigma
        .iter()
        .tuple_combinations()
        .filter(|(x, y)| x > y)
        .count();
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_convention() {
        let w = SignedPermutation::from_cycle(3, &[1, 2, 3]).unwrap();
        assert_eq!(w.images(), &[2, 3, 1]);
        assert_eq!(w.apply(-1), -2);
    }

    #[test]
    fn inverse_and_compose() {
        let w = SignedPermutation::new(vec![1, 3, -2]).unwrap();
        let id = SignedPermutation::identity(3);
        assert_eq!(w.compose(&w.inverse()).unwrap(), id);
        assert_eq!(w.sign(), 1);
    }

    #[test]
    fn rejects_invalid_images() {
        assert!(SignedPermutation::new(vec![1, 1]).is_err());
        assert!(SignedPermutation::new(vec![0, 2]).is_err());
        assert!(SignedPermutation::new(vec![3, 1]).is_err());
    }

    #[test]
    fn dot_action_genus_two_flip() {
        let w = SignedPermutation::new(vec![1, -2]).unwrap();
        let lam = DominantWeight::new(vec![5, 3], 0).unwrap();
        let mu = dot_action(&w, &lam.to_gsp()).unwrap();
        assert_eq!(mu.entries, vec![5, -5]);
        assert_eq!(mu.similitude, -4);
    }

    #[test]
    fn matchings_count() {
        assert_eq!(matchings(&[1, 2, 3, 4]).len(), 3);
        assert_eq!(matchings(&[1, 2, 3, 4, 5, 6]).len(), 15);
    }

    #[test]
    fn split_rejects_oversized() {
        let mu = DominantWeight::zero(2).to_gsp();
        assert!(split_lin_her(&mu, 1, 1).is_err());
    }
}
