//! Multiplicity of the trivial Hecke character in the Euler characteristic
//! of `GL_n(Z)`, computed from the Kostant sum over the standard parabolics
//! with `GL_1` and `GL_2` blocks.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::weyl::{kostant_gl, permutation_sign};

/// Which coefficient system is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GlTwist {
    /// The trivial coefficient system, `λ = 0`.
    Plain,
    /// The weight `λ = (1, …, 1)` (even `n` only).
    DetSign,
}

impl FromStr for GlTwist {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "plain" => Ok(GlTwist::Plain),
            "det-sign" => Ok(GlTwist::DetSign),
            _ => Err(format!("unknown twist {s:?}, expected plain or det-sign")),
        }
    }
}

impl fmt::Display for GlTwist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GlTwist::Plain => "plain",
            GlTwist::DetSign => "det-sign",
        })
    }
}

/// Largest `n` accepted by [`trivial_multiplicity`].
pub const MAX_GL_RANK: usize = 24;

/// `f(m) = Σ_b (-1)^b C(m-b, b)`, by `f(m+1) = f(m) - f(m-1)`.
pub fn f_periodic(m: u64) -> i64 {
    let (mut prev, mut cur) = (1i64, 1i64);
    if m == 0 {
        return 1;
    }
    for _ in 1..m {
        let next = cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Whether `σ` keeps each `GL_2` block adjacent: `σ⁻¹(a+2i) = σ⁻¹(a+2i-1) + 1`.
fn blocks_adjacent(sigma: &[usize], a: usize, b: usize) -> bool {
    let mut inv = vec![0usize; sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s - 1] = i + 1;
    }
    (1..=b).all(|i| inv[a + 2 * i - 1] == inv[a + 2 * i - 2] + 1)
}

/// The signed contribution of one Kostant representative.
fn term(sigma: &[usize], a: usize, lambda: &[i64]) -> i64 {
    let n = sigma.len();
    let mut inv = vec![0usize; n];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s - 1] = i + 1;
    }
    let parity_ok = (1..=a).all(|i| {
        let j = inv[i - 1];
        let dot = lambda[j - 1] - j as i64 + i as i64;
        (dot + a as i64 + 1) % 2 == 0
    });
    if !parity_ok {
        return 0;
    }
    let base = if (a * a.saturating_sub(1) / 2).is_multiple_of(2) { 1 } else { -1 };
    base * permutation_sign(sigma) as i64
}

/// Permutations of `𝔖(a, b)` keeping the `GL_2` blocks adjacent, generated
/// directly by interleaving `a` singletons with `b` adjacent blocks.
pub fn adjacent_kostant(a: usize, b: usize) -> Vec<Vec<usize>> {
    let n = a + 2 * b;
    let mut out = Vec::new();
    for single_units in (0..a + b).combinations(a) {
        let mut sigma = vec![0usize; n];
        let (mut pos, mut next_single, mut next_block) = (1usize, 1usize, 0usize);
        for unit in 0..a + b {
            if single_units.contains(&unit) {
                sigma[pos - 1] = next_single;
                next_single += 1;
                pos += 1;
            } else {
                sigma[pos - 1] = a + 2 * next_block + 1;
                sigma[pos] = a + 2 * next_block + 2;
                next_block += 1;
                pos += 2;
            }
        }
        out.push(sigma);
    }
    out.sort();
    out
}

/// The same set as [`adjacent_kostant`], by filtering all of `𝔖(a, b)`.
pub fn adjacent_kostant_filtered(a: usize, b: usize) -> Vec<Vec<usize>> {
    kostant_gl(a, b)
        .into_iter()
        .filter(|s| blocks_adjacent(s, a, b))
        .collect()
}

/// The multiplicity `e_n` (plain) or `ẽ_n` (det-sign) of the trivial
/// character.
pub fn trivial_multiplicity(n: usize, twist: GlTwist) -> Result<i64> {
    if n == 0 || n > MAX_GL_RANK {
        return Err(Error::SizeLimit(format!("n = {n} outside 1..={MAX_GL_RANK}")));
    }
    if twist == GlTwist::DetSign && n % 2 == 1 {
        return Err(Error::Domain(format!("det-sign twist needs even n, got {n}")));
    }
    let lambda = match twist {
        GlTwist::Plain => vec![0i64; n],
        GlTwist::DetSign => vec![1i64; n],
    };
    let mut total = 0i64;
    for b in 0..=n / 2 {
        let a = n - 2 * b;
        for sigma in adjacent_kostant(a, b) {
            total += term(&sigma, a, &lambda);
        }
    }
    Ok(total)
}
