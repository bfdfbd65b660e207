//! Golden checks run by `siegel-euler selftest`, always against the
//! built-in table.

use num_bigint::BigInt;
use serde_json::json;
use siegel_euler::arthur::{dim_siegel_cusp, epsilon_pair, u_sign, ArthurParameter, Factor};
use siegel_euler::euler::{closed_symbol, genus7_cusp_series, reference_point_count, Euler};
use siegel_euler::forms::{frobenius_power_trace, tau_coefficient, Family, FamilyKey, FormsTable, HalfInt};
use siegel_euler::gl_euler::{f_periodic, trivial_multiplicity, GlTwist};
use siegel_euler::motive::{PointCountPolynomial, TatePolynomial, VirtualMotive};
use siegel_euler::weyl::DominantWeight;

use crate::{Output, EXIT_SELFTEST};

type Check = Result<(), String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn delta_key(d: usize) -> Result<Factor, String> {
    Ok(Factor::new(FamilyKey::new(Family::S, vec![HalfInt(11)]).map_err(err)?, d))
}

fn point_count_polynomials(table: &FormsTable) -> Check {
    let euler = Euler::new(table);
    for n in 1..=6 {
        let coeffs = reference_point_count(n).ok_or("missing reference polynomial")?;
        let expect = TatePolynomial::from_coefficients(coeffs.iter().copied());
        let got = euler.e_c(&DominantWeight::zero(n)).map_err(err)?;
        if got.motive.as_point_count_polynomial() != PointCountPolynomial::Tate(expect) {
            return Err(format!("P_{n} differs: {}", got.motive));
        }
    }
    let p3 = euler.point_count(3, 2, 3).map_err(err)?;
    if p3 != BigInt::from(299_521) {
        return Err(format!("|A_3(F_8)| = {p3}"));
    }
    Ok(())
}

fn genus_seven(table: &FormsTable) -> Check {
    let a_2 = tau_coefficient(2).map_err(err)?;
    let series = genus7_cusp_series(2, 3).map_err(err)?;
    for m in 1..=3u32 {
        let spectral = frobenius_power_trace(12, &a_2, 2, 2 * m) + BigInt::from(2).pow(11 * m);
        if series[m as usize] != spectral {
            return Err(format!("a(2^{m}) = {}, expected {spectral}", series[m as usize]));
        }
    }
    Euler::new(table).point_count(7, 2, 1).map_err(err)?;
    Ok(())
}

fn genus_one(table: &FormsTable) -> Check {
    let euler = Euler::new(table);
    for k in (0..=22).step_by(2) {
        let lambda = DominantWeight::new(vec![k], 0).map_err(err)?;
        let got = euler.e_c(&lambda).map_err(err)?.motive;
        let expect = -closed_symbol(k + 2).map_err(err)? - VirtualMotive::one();
        if got != expect {
            return Err(format!("k = {k}: {got}"));
        }
    }
    Ok(())
}

fn sign_anchors() -> Check {
    for d in 0..=4usize {
        let psi = ArthurParameter::new(d + 2, vec![Factor::trivial(2 * d + 1), delta_key(2)?], 1).map_err(err)?;
        if u_sign(&psi, 1).map_err(err)? != -1 {
            return Err(format!("u_1({psi}) should be -1"));
        }
    }
    for d in 0..=3usize {
        let psi = ArthurParameter::new(d + 4, vec![Factor::trivial(2 * d + 1), delta_key(4)?], 1).map_err(err)?;
        if u_sign(&psi, 1).map_err(err)? != 1 {
            return Err(format!("u_1({psi}) should be +1"));
        }
    }
    for (k, sign) in [(12, 1), (18, -1)] {
        let key = FamilyKey::new(Family::S, vec![HalfInt(k - 1)]).map_err(err)?;
        if epsilon_pair(&FamilyKey::trivial(), &key).map_err(err)? != sign {
            return Err(format!("ε([1], Δ_{}) should be {sign}", k - 1));
        }
    }
    Ok(())
}

fn gl_tables() -> Check {
    for m in 0..=60u64 {
        if f_periodic(m) != [1, 1, 0, -1, -1, 0][(m % 6) as usize] {
            return Err(format!("f({m}) = {}", f_periodic(m)));
        }
    }
    for n in 1..=12usize {
        let plain = trivial_multiplicity(n, GlTwist::Plain).map_err(err)?;
        let expect = if n % 2 == 0 { 1 } else { [0, 1, 0, 1, 0, 0, 0, -1, 0, -1, 0, 0][n % 12] };
        if plain != expect {
            return Err(format!("e_{n} = {plain}"));
        }
        if n % 2 == 0 {
            let twisted = trivial_multiplicity(n, GlTwist::DetSign).map_err(err)?;
            let expect = [1, 0, 0, 0, -1, 0, -1, 0, 0, 0, 1, 0][n % 12];
            if twisted != expect {
                return Err(format!("ẽ_{n} = {twisted}"));
            }
        }
    }
    Ok(())
}

fn saito_kurokawa(table: &FormsTable) -> Check {
    let ingested = table
        .ingest_str(r#"{"families":[{"type":"Oo","weights":[9,8],"count":0}]}"#)
        .map_err(err)?;
    let d = dim_siegel_cusp(&[10, 10], &ingested).map_err(err)?;
    if !(d.is_complete() && d.known == 1) {
        return Err(format!("dim S_(10,10) = {}", d.known));
    }
    Ok(())
}

pub(crate) fn run() -> Output {
    let table = FormsTable::standard();
    let checks: Vec<(&str, Check)> = vec![
        ("point-count polynomials", point_count_polynomials(&table)),
        ("genus 7 cusp series", genus_seven(&table)),
        ("genus 1 closed form", genus_one(&table)),
        ("sign anchors", sign_anchors()),
        ("GL Euler tables", gl_tables()),
        ("Saito-Kurokawa dimension", saito_kurokawa(&table)),
    ];
    let passed = checks.iter().all(|(_, r)| r.is_ok());
    let json = json!({
        "passed": passed,
        "checks": checks
            .iter()
            .map(|(name, r)| json!({"name": name, "passed": r.is_ok(), "detail": r.as_ref().err()}))
            .collect::<Vec<_>>(),
    });
    let text = checks
        .iter()
        .map(|(name, r)| match r {
            Ok(()) => format!("PASS {name}"),
            Err(e) => format!("FAIL {name}: {e}"),
        })
        .collect::<Vec<_>>()
        .join("\n");
    Output {
        json,
        text,
        code: if passed { 0 } else { EXIT_SELFTEST },
    }
}
