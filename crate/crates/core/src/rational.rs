//! Exact rationals. `BigRational` keeps values in lowest terms with a
//! positive denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders `p/q`, or `p` when the denominator is one.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p/q` or `p`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

pub fn numer_i64(q: &Rational) -> Option<i64> {
    q.numer().to_i64()
}

pub fn denom_i64(q: &Rational) -> Option<i64> {
    q.denom().to_i64()
}

/// Every rational `a/b` in lowest terms with `b <= denom_bound` and
/// `lo <= a/b <= hi`, ascending.
pub fn rationals_in(lo: &Rational, hi: &Rational, denom_bound: u64) -> Vec<Rational> {
    let mut out = Vec::new();
    if lo > hi {
        return out;
    }
    for b in 1..=denom_bound as i64 {
        let bb = BigInt::from(b);
        // smallest a with a/b >= lo
        let lo_num = lo.numer() * &bb;
        let mut a = lo_num.div_ceil(lo.denom());
        loop {
            let q = Rational::new(a.clone(), bb.clone());
            if &q > hi {
                break;
            }
            if a.gcd(&bb).is_one() {
                out.push(q);
            }
            a += 1;
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn is_positive(q: &Rational) -> bool {
    q.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_between_one_and_three_halves() {
        let v = rationals_in(&from_int(1), &ratio(3, 2), 4);
        let want = vec![from_int(1), ratio(5, 4), ratio(4, 3), ratio(3, 2)];
        assert_eq!(v, want);
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_rational("6/4"), Some(ratio(3, 2)));
        assert_eq!(parse_rational(" 7 "), Some(from_int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(fmt_rational(&ratio(10, 5)), "2");
        assert_eq!(fmt_rational(&ratio(-3, 6)), "-1/2");
    }
}
