use hypgeo_core::extmeasure::{
    ext_add, ext_cosh, ext_mul, ext_sinh, ext_tanh, scalar_sum, ExtError, ExtReal, ExtScalar,
};

use super::{CheckConfig, SuiteResult, Tally};

/// The rule set for infinite values, checked by exact equality on `n`
/// finite companions.
pub(crate) fn extended_arithmetic(n: usize, cfg: &CheckConfig) -> SuiteResult {
    use ExtReal::*;
    let mut t = Tally::new("extended arithmetic", 0.0, cfg);
    let rule = |t: &mut Tally, ok: bool, what: &str| {
        t.case(0.0);
        t.require(ok, || what.to_string());
    };
    rule(&mut t, ext_add(PlusInf, MinusInf) == Finite(0.0), "inf + (-inf) = 0");
    rule(&mut t, ext_add(MinusInf, PlusInf) == Finite(0.0), "(-inf) + inf = 0");
    rule(&mut t, ext_mul(PlusInf, PlusInf) == Ok(PlusInf), "inf * inf = inf");
    rule(&mut t, ext_mul(MinusInf, MinusInf) == Ok(PlusInf), "(-inf) * (-inf) = inf");
    rule(&mut t, ext_mul(PlusInf, MinusInf) == Ok(MinusInf), "inf * (-inf) = -inf");
    for inf in [ExtScalar::PLUS_INF, ExtScalar::MINUS_INF] {
        let s = f64::from(inf.re().signum());
        rule(&mut t, ext_cosh(inf) == ExtScalar::PLUS_INF, "cosh of an infinity is inf");
        rule(&mut t, ext_sinh(inf) == inf, "sinh keeps the infinity");
        rule(&mut t, ext_tanh(inf) == ExtScalar::real(s), "tanh of an infinity is its sign");
    }
    rule(
        &mut t,
        scalar_sum(&[ExtScalar::PLUS_INF, ExtScalar::PLUS_INF, ExtScalar::MINUS_INF])
            == Err(ExtError::AssociativityViolation(3)),
        "three infinite terms are refused",
    );
    rule(
        &mut t,
        scalar_sum(&[ExtScalar::PLUS_INF, ExtScalar::MINUS_INF]) == Ok(ExtScalar::ZERO),
        "two opposite infinities cancel",
    );
    for k in 0..n {
        let a = (k as f64 - n as f64 / 2.0) * 0.37 + 0.125;
        let b = 0.5 + k as f64 * 0.11;
        rule(&mut t, ext_add(PlusInf, Finite(a)) == PlusInf, "inf + a = inf");
        rule(&mut t, ext_add(Finite(a), MinusInf) == MinusInf, "a + (-inf) = -inf");
        let z = ExtScalar::new(PlusInf, b);
        rule(&mut t, z.im() == 0.0 && z == ExtScalar::PLUS_INF, "inf + bi normalizes to inf");
        let sum = ExtScalar::from_parts(a, b) + ExtScalar::MINUS_INF;
        rule(&mut t, sum == ExtScalar::MINUS_INF, "finite + (-inf) drops the imaginary part");
        if a != 0.0 {
            let want = if a > 0.0 { PlusInf } else { MinusInf };
            rule(&mut t, ext_mul(Finite(a), PlusInf) == Ok(want), "a * inf takes the sign of a");
        }
    }
    rule(&mut t, ext_mul(Finite(0.0), PlusInf).is_err(), "0 * inf is undefined");
    t.finish()
}
