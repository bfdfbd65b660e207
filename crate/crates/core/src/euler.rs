//! Euler characteristics of `A_n` with coefficients in `V_λ`: intersection
//! cohomology from Arthur parameters, compactly supported cohomology from
//! the boundary formula, the inverse formula, and closed forms in genus
//! two and three.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arthur::{
    enumerate_parameters, siegel_contributes, siegel_spin_sum, spin_contribution,
};
use crate::error::{Error, Result};
use crate::forms::{dim_cusp_elliptic, Count, FormsTable};
use crate::motive::{CuspSymbol, Decoration, VirtualMotive};
use crate::weyl::{dot_action, split_lin_her, weyl_set, DominantWeight, WeylKind};

/// Largest genus handled by the assembly.
pub const MAX_GENUS: usize = 7;

/// An Euler characteristic with its bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerResult {
    /// The full motive, including any general-type symbol.
    pub motive: VirtualMotive,
    /// The general-type symbol `S[k̲]` with its coefficient, when present.
    pub general: Option<(i32, CuspSymbol)>,
    /// Families of unknown count or parameters without a closed form; when
    /// nonempty the motive is incomplete.
    pub missing: Vec<String>,
}

impl EulerResult {
    fn unit_twisted(k: i64) -> Self {
        EulerResult {
            motive: VirtualMotive::lefschetz(k),
            general: None,
            missing: Vec::new(),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.missing.is_empty()
    }

    /// The motive, or an incomplete-data error.
    pub fn complete_motive(&self) -> Result<&VirtualMotive> {
        if self.missing.is_empty() {
            Ok(&self.motive)
        } else {
            Err(Error::Incomplete(self.missing.clone()))
        }
    }
}

/// A term `coeff · L^tate · e(genus, weight)` of a conversion formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConversionTerm {
    pub coeff: BigInt,
    pub tate: i64,
    pub genus: usize,
    pub weight: Vec<i64>,
}

/// `(-1)^{n(n+1)/2}`.
pub fn general_sign(n: usize) -> i32 {
    if (n * (n + 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `k̲(λ) = (λ_1 + n + 1, …, λ_n + n + 1)`.
pub fn siegel_weight(lambda: &[i64]) -> Vec<i64> {
    let n = lambda.len() as i64;
    lambda.iter().map(|l| l + n + 1).collect()
}

/// The dimension factor of the `GL_1^a × GL_2^b` part of a weight:
/// `∏ [μ_i even] · ∏ (-dim S_{c-d+2} + [c = d])`.
fn lin_dim(lin: &[i64], a: usize, b: usize) -> Result<i64> {
    let mut out = 1i64;
    for &x in &lin[..a] {
        if x % 2 != 0 {
            return Ok(0);
        }
    }
    for i in 0..b {
        let (c, d) = (lin[a + 2 * i], lin[a + 2 * i + 1]);
        if c < d {
            return Err(Error::Internal(format!("non-dominant GL_2 weight ({c}, {d})")));
        }
        out *= -(dim_cusp_elliptic(c - d + 2) as i64) + i64::from(c == d);
    }
    Ok(out)
}

fn conversion_terms(kind: WeylKind, lambda: &DominantWeight) -> Result<Vec<ConversionTerm>> {
    let n = lambda.rank();
    let mut acc: BTreeMap<(i64, usize, Vec<i64>), BigInt> = BTreeMap::new();
    let mu = lambda.to_gsp();
    for b in 0..=n / 2 {
        for a in 0..=n - 2 * b {
            let base: i64 = match kind {
                WeylKind::W => if (a + b) % 2 == 0 { 1 } else { -1 },
                WeylKind::WPrime => 1,
            };
            for w in weyl_set(kind, a, b, n)? {
                let moved = dot_action(&w, &mu)?;
                let (lin, her) = split_lin_her(&moved, a, b)?;
                let factor = lin_dim(&lin.0, a, b)?;
                if factor == 0 {
                    continue;
                }
                let her = her.to_dominant().ok_or_else(|| {
                    Error::Internal(format!("non-dominant weight {:?} from {w}", her.entries))
                })?;
                let coeff = base * i64::from(w.sign()) * factor;
                let key = (-her.similitude(), her.rank(), her.lambda().to_vec());
                *acc.entry(key).or_insert_with(BigInt::zero) += coeff;
            }
        }
    }
    Ok(acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((tate, genus, weight), coeff)| ConversionTerm {
            coeff,
            tate,
            genus,
            weight,
        })
        .collect())
}

/// `e_c(n, λ) = Σ coeff · L^tate · e_IH(genus, weight)`.
pub fn ec_from_eih_terms(lambda: &DominantWeight) -> Result<Vec<ConversionTerm>> {
    conversion_terms(WeylKind::W, lambda)
}

/// `e_IH(n, λ) = Σ coeff · L^tate · e_c(genus, weight)`.
pub fn eih_from_ec_terms(lambda: &DominantWeight) -> Result<Vec<ConversionTerm>> {
    conversion_terms(WeylKind::WPrime, lambda)
}

/// Evaluates the inverse formula with a supplied `e_c` oracle; genus zero
/// is the unit.
pub fn e_ih_from_ec<F>(lambda: &DominantWeight, mut ec: F) -> Result<VirtualMotive>
where
    F: FnMut(&DominantWeight) -> Result<VirtualMotive>,
{
    let mut out = VirtualMotive::zero();
    for t in eih_from_ec_terms(lambda)? {
        let value = if t.genus == 0 {
            VirtualMotive::one()
        } else {
            ec(&DominantWeight::new(t.weight.clone(), 0)?)?
        };
        out += value.tate_twist(t.tate).scale(t.coeff);
    }
    Ok(out)
}

/// Memoizing evaluator of `e_IH` and `e_c` over a fixed forms table.
pub struct Euler<'a> {
    table: &'a FormsTable,
    ih: RefCell<HashMap<Vec<i64>, EulerResult>>,
    c: RefCell<HashMap<Vec<i64>, EulerResult>>,
}

impl<'a> Euler<'a> {
    pub fn new(table: &'a FormsTable) -> Self {
        Euler {
            table,
            ih: RefCell::new(HashMap::new()),
            c: RefCell::new(HashMap::new()),
        }
    }

    pub fn table(&self) -> &FormsTable {
        self.table
    }

    fn check(lambda: &DominantWeight) -> Result<()> {
        if lambda.rank() > MAX_GENUS {
            return Err(Error::SizeLimit(format!(
                "genus {} exceeds {MAX_GENUS}",
                lambda.rank()
            )));
        }
        Ok(())
    }

    /// `e_IH(A_n, V_{λ,m})`.
    pub fn e_ih(&self, lambda: &DominantWeight) -> Result<EulerResult> {
        Self::check(lambda)?;
        let mut out = self.e_ih_normalized(lambda.lambda())?;
        out.motive = out.motive.tate_twist(-lambda.similitude());
        Ok(out)
    }

    fn e_ih_normalized(&self, lambda: &[i64]) -> Result<EulerResult> {
        if let Some(r) = self.ih.borrow().get(lambda) {
            return Ok(r.clone());
        }
        let result = self.compute_e_ih(lambda)?;
        self.ih.borrow_mut().insert(lambda.to_vec(), result.clone());
        Ok(result)
    }

    fn compute_e_ih(&self, lambda: &[i64]) -> Result<EulerResult> {
        let n = lambda.len();
        if n == 0 {
            return Ok(EulerResult::unit_twisted(0));
        }
        if lambda.iter().sum::<i64>() % 2 != 0 {
            return Ok(EulerResult {
                motive: VirtualMotive::zero(),
                general: None,
                missing: Vec::new(),
            });
        }
        let e = enumerate_parameters(lambda, self.table)?;
        let mut missing: Vec<String> = e.missing.iter().map(|k| k.to_string()).collect();
        let sign = general_sign(n);
        let general = match e.general_count {
            Count::Known(0) => None,
            _ => Some((sign, CuspSymbol::new(siegel_weight(lambda), Decoration::Plain)?)),
        };
        let mut motive = VirtualMotive::zero();
        if let Some((c, s)) = &general {
            motive += VirtualMotive::symbol(s.clone()).scale(*c);
        }
        for psi in &e.parameters {
            let contribution = spin_contribution(psi, lambda, self.table).and_then(|x| {
                if general.is_some() && siegel_contributes(psi) {
                    Ok(x - siegel_spin_sum(psi, lambda, self.table)?.scale(sign))
                } else {
                    Ok(x)
                }
            });
            match contribution {
                Ok(x) => motive += x,
                Err(Error::NoClosedForm(_)) => missing.push(psi.to_string()),
                Err(err) => return Err(err),
            }
        }
        Ok(EulerResult {
            motive,
            general,
            missing,
        })
    }

    /// `e_c(A_n, V_{λ,m})`.
    pub fn e_c(&self, lambda: &DominantWeight) -> Result<EulerResult> {
        Self::check(lambda)?;
        let mut out = self.e_c_normalized(lambda.lambda())?;
        out.motive = out.motive.tate_twist(-lambda.similitude());
        Ok(out)
    }

    fn e_c_normalized(&self, lambda: &[i64]) -> Result<EulerResult> {
        if let Some(r) = self.c.borrow().get(lambda) {
            return Ok(r.clone());
        }
        let weight = DominantWeight::new(lambda.to_vec(), 0)?;
        let mut motive = VirtualMotive::zero();
        let mut missing = Vec::new();
        let mut general = None;
        if lambda.iter().sum::<i64>() % 2 == 0 {
            for t in ec_from_eih_terms(&weight)? {
                let lower = self.e_ih_normalized(&t.weight)?;
                if t.genus == lambda.len() {
                    general = lower.general.clone();
                }
                motive += lower.motive.tate_twist(t.tate).scale(t.coeff);
                missing.extend(lower.missing);
            }
        }
        missing.sort();
        missing.dedup();
        let result = EulerResult {
            motive,
            general,
            missing,
        };
        self.c.borrow_mut().insert(lambda.to_vec(), result.clone());
        Ok(result)
    }

    /// Replaces every genus ≥ 2 symbol `S[k̲]` whose general-type family is
    /// known to be empty by the sum of its Siegel parameters.
    pub fn resolve(&self, motive: &VirtualMotive) -> Result<VirtualMotive> {
        let mut replacements = HashMap::new();
        for s in motive.symbols() {
            if s.genus() < 2 {
                continue;
            }
            let n = s.genus() as i64;
            let lambda: Vec<i64> = s.weights().iter().map(|k| k - n - 1).collect();
            let e = enumerate_parameters(&lambda, self.table)?;
            if e.general_count != Count::Known(0) || !e.missing.is_empty() {
                continue;
            }
            let mut sum = VirtualMotive::zero();
            for psi in e.parameters.iter().filter(|p| siegel_contributes(p)) {
                sum += siegel_spin_sum(psi, &lambda, self.table)?;
            }
            replacements.insert(s, sum);
        }
        Ok(motive.substitute(|s| replacements.get(s).cloned()))
    }

    /// `Σ_q |A_n(F_q)|` at `q = p^power`: the Frobenius trace of
    /// `e_c(A_n, Q_ℓ)`.
    pub fn point_count(&self, n: usize, p: u64, power: u32) -> Result<BigInt> {
        let r = self.e_c(&DominantWeight::zero(n))?;
        r.complete_motive()?.trace_frobenius(p, power, self.table)
    }
}

/// `e_IH` with a fresh evaluator.
pub fn e_ih(lambda: &DominantWeight, table: &FormsTable) -> Result<EulerResult> {
    Euler::new(table).e_ih(lambda)
}

/// `e_c` with a fresh evaluator.
pub fn e_c(lambda: &DominantWeight, table: &FormsTable) -> Result<EulerResult> {
    Euler::new(table).e_c(lambda)
}

/// `S[k]` with the conventions of the closed forms: `0` for odd `k` or an
/// empty space, `-1 - L` for `k = 2`.
pub fn closed_symbol(k: i64) -> Result<VirtualMotive> {
    if k % 2 != 0 || k < 2 {
        return Ok(VirtualMotive::zero());
    }
    if k == 2 {
        return Ok(-(VirtualMotive::one() + VirtualMotive::lefschetz(1)));
    }
    if dim_cusp_elliptic(k) == 0 {
        return Ok(VirtualMotive::zero());
    }
    Ok(VirtualMotive::symbol(CuspSymbol::elliptic(k)?))
}

/// `s_k = dim S_k`, with `s_2 = -1`.
pub fn closed_dim(k: i64) -> i64 {
    if k == 2 {
        -1
    } else {
        dim_cusp_elliptic(k) as i64
    }
}

/// The genus-two extraneous term
/// `-s_{λ1+λ2+4}(S[λ1-λ2+2] + 1)L^{λ2+1} + s_{λ1-λ2+2} - S[λ1+3] + S[λ2+2] + [λ1 even]`.
pub fn e2_extr(l1: i64, l2: i64) -> Result<VirtualMotive> {
    if l1 < l2 || l2 < 0 {
        return Err(Error::Domain(format!("({l1}, {l2}) is not dominant")));
    }
    let mut out = (closed_symbol(l1 - l2 + 2)? + VirtualMotive::one())
        .tate_twist(l2 + 1)
        .scale(-closed_dim(l1 + l2 + 4));
    out += VirtualMotive::constant(closed_dim(l1 - l2 + 2));
    out -= closed_symbol(l1 + 3)?;
    out += closed_symbol(l2 + 2)?;
    if l1 % 2 == 0 {
        out += VirtualMotive::one();
    }
    Ok(out)
}

/// `-S[λ1+3, λ2+3] + e_{2,extr}(λ)` for `λ ≠ 0`, `L^3 + L^2` for `λ = 0`,
/// and `0` for odd `λ1 + λ2`.
pub fn genus2_closed(l1: i64, l2: i64) -> Result<VirtualMotive> {
    if (l1 + l2) % 2 != 0 {
        return Ok(VirtualMotive::zero());
    }
    if l1 == 0 && l2 == 0 {
        return Ok(VirtualMotive::lefschetz(3) + VirtualMotive::lefschetz(2));
    }
    Ok(e2_extr(l1, l2)? - VirtualMotive::symbol(CuspSymbol::siegel(vec![l1 + 3, l2 + 3])?))
}

/// The genus-three closed form for `λ ≠ 0`:
/// `S[k̲(λ)] + Σ_{(η,a,b,c) ∈ X(λ)} η (e_c(A_2, V_{a,b}) + e_{2,extr}(a,b) ⊗ S[c])`.
pub fn bfg_genus3(lambda: &[i64]) -> Result<VirtualMotive> {
    let [l1, l2, l3] = *lambda else {
        return Err(Error::Domain(format!("genus three needs three entries, got {lambda:?}")));
    };
    DominantWeight::new(lambda.to_vec(), 0)?;
    if l1 == 0 {
        return Err(Error::Domain("the genus three closed form excludes λ = 0".into()));
    }
    if (l1 + l2 + l3) % 2 != 0 {
        return Ok(VirtualMotive::zero());
    }
    let mut out = VirtualMotive::symbol(CuspSymbol::siegel(vec![l1 + 4, l2 + 4, l3 + 4])?);
    let x = [
        (-1, l1 + 1, l2 + 1, l3 + 2),
        (1, l1 + 1, l3, l2 + 3),
        (-1, l2, l3, l1 + 4),
    ];
    for (eta, a, b, c) in x {
        let term = genus2_closed(a, b)? + e2_extr(a, b)? * closed_symbol(c)?;
        out += term.scale(eta);
    }
    Ok(out)
}

/// Lefschetz polynomial of `|A_n(F_q)|` for `n ≤ 6`, as printed coefficient
/// lists `(exponent, coefficient)`.
pub fn reference_point_count(n: usize) -> Option<Vec<(i64, i64)>> {
    let v: &[(i64, i64)] = match n {
        1 => &[(1, 1)],
        2 => &[(3, 1), (2, 1)],
        3 => &[(6, 1), (5, 1), (4, 1), (3, 1), (0, 1)],
        4 => &[(10, 1), (9, 1), (8, 1), (7, 2), (6, 1), (5, 1), (4, 1), (1, 1)],
        5 => &[
            (15, 1), (14, 1), (13, 1), (12, 2), (11, 2), (10, 2), (9, 2), (8, 2), (7, 1),
            (6, 1), (5, 1), (3, 1), (2, 1),
        ],
        6 => &[
            (21, 1), (20, 1), (19, 1), (18, 2), (17, 2), (16, 4), (15, 4), (14, 4), (13, 5),
            (12, 4), (11, 4), (10, 3), (9, 2), (8, 1), (7, 2), (6, 2), (5, 1), (4, 1), (3, 1),
            (0, 1),
        ],
        _ => return None,
    };
    Some(v.to_vec())
}

/// The polynomial part of `|A_7(F_q)|`.
pub const GENUS7_POLYNOMIAL_PART: &[(i64, i64)] = &[
    (28, 1), (27, 1), (26, 1), (25, 2), (24, 2), (23, 3), (22, 4), (21, 4), (20, 4), (19, 6),
    (18, 7), (17, 8), (16, 7), (15, 6), (14, 5), (13, 4), (12, 4), (11, 2), (10, 3), (9, 4),
    (8, 3), (7, 3), (6, 1), (5, 1), (4, 2), (1, 1),
];

/// The factor multiplying `a(q)` in `|A_7(F_q)|`.
pub const GENUS7_CUSP_FACTOR: &[(i64, i64)] = &[(6, 1), (5, 1), (4, 1), (3, 1), (0, 1)];

/// `a(p^m)` for `m = 0..=max_m` from the generating function
/// `(3 - 2τ(p²)T + p^11 τ(p²)T²) / (1 - τ(p²)T + p^11 τ(p²)T² - p^33 T³)`.
pub fn genus7_cusp_series(p: u64, max_m: usize) -> Result<Vec<BigInt>> {
    let t = crate::forms::tau_coefficient((p * p) as usize)?;
    let p11 = BigInt::from(p).pow(11);
    let p33 = BigInt::from(p).pow(33);
    let num = [BigInt::from(3), BigInt::from(-2) * &t, &p11 * &t];
    let den = [BigInt::one(), -&t, &p11 * &t, -p33];
    let mut out: Vec<BigInt> = Vec::with_capacity(max_m + 1);
    for m in 0..=max_m {
        let mut c = num.get(m).cloned().unwrap_or_default();
        for j in 1..den.len().min(m + 1) {
            c -= &den[j] * &out[m - j];
        }
        out.push(c);
    }
    Ok(out)
}
