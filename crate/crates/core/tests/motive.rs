use num_bigint::BigInt;
use proptest::prelude::*;
use siegel_euler::forms::{tau_coefficient, FormsTable};
use siegel_euler::motive::{CuspSymbol, Decoration, PointCountPolynomial, TatePolynomial, VirtualMotive};
use siegel_euler::Error;

fn symbol_pool() -> Vec<CuspSymbol> {
    vec![
        CuspSymbol::elliptic(12).unwrap(),
        CuspSymbol::elliptic(16).unwrap(),
        CuspSymbol::elliptic(24).unwrap(),
        CuspSymbol::sym2(12).unwrap(),
        CuspSymbol::siegel(vec![10, 10]).unwrap(),
    ]
}

fn traceable_pool() -> Vec<CuspSymbol> {
    vec![
        CuspSymbol::elliptic(12).unwrap(),
        CuspSymbol::elliptic(14).unwrap(),
        CuspSymbol::elliptic(8).unwrap(),
        CuspSymbol::sym2(12).unwrap(),
        CuspSymbol::sym2(10).unwrap(),
    ]
}

fn motive() -> impl Strategy<Value = VirtualMotive> {
    motive_over(symbol_pool())
}

fn motive_over(pool: Vec<CuspSymbol>) -> impl Strategy<Value = VirtualMotive> {
    let term = (-4i64..=4, 0i64..=4, prop::collection::vec(0..pool.len(), 0..=2));
    prop::collection::vec(term, 0..=5).prop_map(move |terms| {
        terms
            .into_iter()
            .map(|(c, tate, idx)| {
                VirtualMotive::monomial(BigInt::from(c), tate, idx.into_iter().map(|i| pool[i].clone()).collect())
            })
            .sum()
    })
}

#[test]
fn display_format() {
    let s12 = VirtualMotive::symbol(CuspSymbol::elliptic(12).unwrap());
    let m = VirtualMotive::lefschetz(3) + VirtualMotive::lefschetz(2) - VirtualMotive::lefschetz(1) * s12.scale(2);
    assert_eq!(m.to_string(), "L^3 + L^2 - 2*L*S[12]");
    assert_eq!(VirtualMotive::zero().to_string(), "0");
    assert_eq!(CuspSymbol::sym2(12).unwrap().to_string(), "Sym2S[12]");
}

#[test]
fn weight_two_symbol_expands() {
    let s2 = VirtualMotive::symbol(CuspSymbol::elliptic(2).unwrap());
    assert_eq!(s2, -VirtualMotive::one() - VirtualMotive::lefschetz(1));
}

#[test]
fn elliptic_trace_is_ramanujan_tau() {
    let t = FormsTable::standard();
    let s12 = VirtualMotive::symbol(CuspSymbol::elliptic(12).unwrap());
    for p in [2u64, 3, 5, 7, 11, 13] {
        assert_eq!(s12.trace_frobenius(p, 1, &t).unwrap(), tau_coefficient(p as usize).unwrap());
        assert_eq!(s12.rank(&t).unwrap(), BigInt::from(1));
    }
    let zero_space = VirtualMotive::symbol(CuspSymbol::elliptic(14).unwrap());
    assert_eq!(zero_space.trace_frobenius(2, 1, &t).unwrap(), BigInt::from(0));
}

#[test]
fn trace_rejects_bad_arguments() {
    let t = FormsTable::standard();
    let one = VirtualMotive::one();
    assert!(matches!(one.trace_frobenius(4, 1, &t), Err(Error::Domain(_))));
    assert!(matches!(one.trace_frobenius(2, 0, &t), Err(Error::Domain(_))));
    assert!(matches!(VirtualMotive::lefschetz(-1).trace_frobenius(2, 1, &t), Err(Error::Domain(_))));
    let siegel = VirtualMotive::symbol(CuspSymbol::siegel(vec![10, 10]).unwrap());
    assert!(matches!(siegel.trace_frobenius(2, 1, &t), Err(Error::UnknownHecke { .. })));
    assert!(matches!(siegel.rank(&t), Err(Error::UnknownDimension(_))));
}

#[test]
fn invalid_symbols_are_rejected() {
    assert!(CuspSymbol::new(vec![], Decoration::Plain).is_err());
    assert!(CuspSymbol::new(vec![12; 8], Decoration::Plain).is_err());
}

#[test]
fn point_count_polynomial_classification() {
    let m = VirtualMotive::lefschetz(2) - VirtualMotive::one();
    assert_eq!(
        m.as_point_count_polynomial(),
        PointCountPolynomial::Tate(TatePolynomial::from_coefficients([(2, 1), (0, -1)]))
    );
    let s = CuspSymbol::elliptic(12).unwrap();
    let with_symbol = m + VirtualMotive::symbol(s.clone());
    assert_eq!(with_symbol.as_point_count_polynomial(), PointCountPolynomial::NotTate(vec![s]));
}

proptest! {
    #[test]
    fn ring_laws(a in motive(), b in motive(), c in motive()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, VirtualMotive::zero());
        prop_assert_eq!(&a * &VirtualMotive::one(), a.clone());
        prop_assert_eq!(a.tate_twist(2), &a * &VirtualMotive::lefschetz(2));
        prop_assert_eq!(a.scale(3), &a * &VirtualMotive::constant(3));
    }

    #[test]
    fn specializations_are_ring_homomorphisms(a in motive_over(traceable_pool()), b in motive_over(traceable_pool()), p in prop::sample::select(vec![2u64, 3, 5, 7]), m in 1u32..=2) {
        let t = FormsTable::standard();
        let tr = |x: &VirtualMotive| x.trace_frobenius(p, m, &t).unwrap();
        prop_assert_eq!(tr(&(&a + &b)), tr(&a) + tr(&b));
        prop_assert_eq!(tr(&(&a * &b)), tr(&a) * tr(&b));
        let rk = |x: &VirtualMotive| x.rank(&t).unwrap();
        prop_assert_eq!(rk(&(&a + &b)), rk(&a) + rk(&b));
        prop_assert_eq!(rk(&(&a * &b)), rk(&a) * rk(&b));
    }

    #[test]
    fn canonicalize_is_idempotent(a in motive()) {
        let once = a.canonicalize();
        prop_assert_eq!(once.canonicalize(), once.clone());
        prop_assert_eq!(once, a);
    }

    #[test]
    fn json_round_trip(a in motive()) {
        let json = a.to_json();
        let text = serde_json::to_string(&json).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(VirtualMotive::from_json(&parsed).unwrap(), a);
    }
}
