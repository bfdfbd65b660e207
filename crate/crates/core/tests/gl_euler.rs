use siegel_euler::gl_euler::{
    adjacent_kostant, adjacent_kostant_filtered, f_periodic, trivial_multiplicity, GlTwist, MAX_GL_RANK,
};
use siegel_euler::Error;

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

fn f_mod6(m: u64) -> i64 {
    [1, 1, 0, -1, -1, 0][(m % 6) as usize]
}

fn plain_odd_mod12(n: usize) -> i64 {
    match n % 12 {
        1 | 3 => 1,
        5 | 11 => 0,
        7 | 9 => -1,
        _ => unreachable!(),
    }
}

fn det_sign_mod12(n: usize) -> i64 {
    match n % 12 {
        0 | 10 => 1,
        2 | 8 => 0,
        4 | 6 => -1,
        _ => unreachable!(),
    }
}

#[test]
fn f_matches_binomial_sum_and_period() {
    for m in 0..=60u64 {
        let direct: i64 = (0..=m as i64 / 2).map(|b| (-1i64).pow(b as u32) * binomial(m as i64 - b, b)).sum();
        assert_eq!(f_periodic(m), direct, "m = {m}");
        assert_eq!(f_periodic(m), f_mod6(m), "m = {m}");
    }
}

#[test]
fn multiplicities_match_tables() {
    for n in 1..=MAX_GL_RANK {
        let plain = trivial_multiplicity(n, GlTwist::Plain).unwrap();
        if n % 2 == 1 {
            assert_eq!(plain, plain_odd_mod12(n), "e_{n}");
            assert_eq!(plain, (-1i64).pow(((n - 1) / 2) as u32) * f_periodic(n as u64));
            assert!(matches!(trivial_multiplicity(n, GlTwist::DetSign), Err(Error::Domain(_))));
        } else {
            assert_eq!(plain, 1, "e_{n}");
            let twisted = trivial_multiplicity(n, GlTwist::DetSign).unwrap();
            assert_eq!(twisted, det_sign_mod12(n), "ẽ_{n}");
            assert_eq!(twisted, (-1i64).pow((n / 2) as u32) * f_periodic(n as u64));
        }
    }
}

#[test]
fn euler_characteristics_of_special_linear_groups() {
    let sum = |n| trivial_multiplicity(n, GlTwist::Plain).unwrap() + trivial_multiplicity(n, GlTwist::DetSign).unwrap();
    assert_eq!(sum(2), 1);
    assert_eq!(sum(4), 0);
    assert_eq!(sum(6), 0);
}

#[test]
fn adjacent_representatives() {
    for n in 1..=9usize {
        for b in 0..=n / 2 {
            let a = n - 2 * b;
            let direct = adjacent_kostant(a, b);
            assert_eq!(direct, adjacent_kostant_filtered(a, b), "({a}, {b})");
            assert_eq!(direct.len() as i64, binomial((n - b) as i64, b as i64));
        }
    }
    assert_eq!(adjacent_kostant(MAX_GL_RANK - 2 * 6, 6).len() as i64, binomial(18, 6));
}

#[test]
fn rank_limits() {
    assert!(matches!(trivial_multiplicity(0, GlTwist::Plain), Err(Error::SizeLimit(_))));
    assert!(matches!(trivial_multiplicity(MAX_GL_RANK + 1, GlTwist::Plain), Err(Error::SizeLimit(_))));
}

#[test]
fn twist_parsing() {
    assert_eq!("plain".parse::<GlTwist>().unwrap(), GlTwist::Plain);
    assert_eq!("det-sign".parse::<GlTwist>().unwrap(), GlTwist::DetSign);
    assert_eq!(GlTwist::DetSign.to_string(), "det-sign");
    assert!("other".parse::<GlTwist>().is_err());
}
