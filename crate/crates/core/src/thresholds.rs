//! Interval and refutation formulas for zero-one k-laws, in exact arithmetic.
//!
//! For `t/s ∈ (0,1)` and `k ≥ 4` the basic construction sets
//! `q = ((s+1)^k − 1)/s` and reports the interval `(tq/(sq+1), t/s)`. The
//! strengthened variant replaces `q` by
//! `((s+1)^{k−2}(1 + s·m) − 1)/s` with `m = C(k−2, ⌊s/t⌋) + 1`.
//! `(s+1)^k` overflows machine integers quickly, so everything here is
//! `BigInt`/[`Rational`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ThresholdError {
    #[error("{0}")]
    Domain(String),
}

fn domain<T>(msg: impl Into<String>) -> Result<T, ThresholdError> {
    Err(ThresholdError::Domain(msg.into()))
}

/// `C(n, r)`, zero when `r > n`.
pub fn binomial(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn pow(base: u64, exp: u64) -> BigInt {
    Pow::pow(BigInt::from(base), exp)
}

/// Validated `(t, s, k)` with `gcd(t, s) = 1`, `0 < t < s`, `k ≥ 4`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawParams {
    pub t: u64,
    pub s: u64,
    pub k: u64,
}

impl LawParams {
    pub fn new(t: u64, s: u64, k: u64) -> Result<Self, ThresholdError> {
        if t == 0 || t >= s {
            return domain(format!("need 0 < t/s < 1, got {t}/{s}"));
        }
        if t.gcd(&s) != 1 {
            return domain(format!("t/s must be in lowest terms, got {t}/{s}"));
        }
        if k < 4 {
            return domain(format!("need k >= 4, got {k}"));
        }
        Ok(LawParams { t, s, k })
    }

    /// From a fraction strictly between 0 and 1.
    pub fn from_fraction(frac: &Rational, k: u64) -> Result<Self, ThresholdError> {
        let to_u64 = |b: &BigInt| u64::try_from(b).ok();
        match (to_u64(frac.numer()), to_u64(frac.denom())) {
            (Some(t), Some(s)) => LawParams::new(t, s, k),
            _ => domain(format!("need 0 < t/s < 1, got {frac}")),
        }
    }

    pub fn ratio(&self) -> Rational {
        Rational::new(self.t, self.s)
    }

    /// `⌊s/t⌋`.
    pub fn floor_s_over_t(&self) -> u64 {
        self.s / self.t
    }

    /// `m = C(k−2, ⌊s/t⌋) + 1`.
    pub fn strong_m(&self) -> BigInt {
        binomial(self.k - 2, self.floor_s_over_t()) + 1
    }

    pub fn q(&self) -> Rational {
        q_basic(self.k, self.s).expect("validated")
    }

    pub fn q_list(&self) -> Vec<Rational> {
        (0..=self.k)
            .map(|i| q_i_basic(self.k, self.s, i).expect("validated"))
            .collect()
    }
}

/// `q = ((s+1)^k − 1)/s`.
pub fn q_basic(k: u64, s: u64) -> Result<Rational, ThresholdError> {
    if k < 1 || s < 1 {
        return domain(format!("need k >= 1 and s >= 1, got k={k}, s={s}"));
    }
    Ok(Rational::new(pow(s + 1, k) - 1, BigInt::from(s)))
}

/// `q_i = q − ((s+1)^{k−i} − 1)/s` for `0 ≤ i ≤ k`.
pub fn q_i_basic(k: u64, s: u64, i: u64) -> Result<Rational, ThresholdError> {
    if i > k {
        return domain(format!("need 0 <= i <= k, got i={i}, k={k}"));
    }
    let q = q_basic(k, s)?;
    Ok(q - Rational::new(pow(s + 1, k - i) - 1, BigInt::from(s)))
}

fn interval_for(p: &LawParams, q: &Rational) -> (Rational, Rational) {
    let t = Rational::from_integer(p.t);
    let s = Rational::from_integer(p.s);
    let left = &(&t * q) / &(&(&s * q) + &Rational::one());
    (left, p.ratio())
}

/// `(tq/(sq+1), t/s)` with the basic `q`.
pub fn interval_basic(k: u64, t: u64, s: u64) -> Result<(Rational, Rational), ThresholdError> {
    let p = LawParams::new(t, s, k)?;
    Ok(interval_for(&p, &p.q()))
}

/// The strengthened `q = ((s+1)^{k−2}(1 + s·m) − 1)/s`.
pub fn q_strong(k: u64, t: u64, s: u64) -> Result<Rational, ThresholdError> {
    let p = LawParams::new(t, s, k)?;
    let m = p.strong_m();
    let numer = pow(s + 1, k - 2) * (BigInt::one() + BigInt::from(s) * m) - 1;
    Ok(Rational::new(numer, BigInt::from(s)))
}

/// `q_i = q − ((s+1)^{k−2−i}(1 + s·m) − 1)/s` for `0 ≤ i ≤ k−2`.
pub fn q_i_strong(k: u64, t: u64, s: u64, i: u64) -> Result<Rational, ThresholdError> {
    let p = LawParams::new(t, s, k)?;
    if i > k - 2 {
        return domain(format!("need 0 <= i <= k-2, got i={i}, k={k}"));
    }
    let m = p.strong_m();
    let tail = pow(s + 1, k - 2 - i) * (BigInt::one() + BigInt::from(s) * m) - 1;
    Ok(q_strong(k, t, s)? - Rational::new(tail, BigInt::from(s)))
}

pub fn interval_strong(k: u64, t: u64, s: u64) -> Result<(Rational, Rational), ThresholdError> {
    let p = LawParams::new(t, s, k)?;
    Ok(interval_for(&p, &q_strong(k, t, s)?))
}

/// `C(k−2, ⌊s/t⌋) < s + 1`: the strengthened interval is the larger one.
pub fn strong_improves(k: u64, t: u64, s: u64) -> Result<bool, ThresholdError> {
    let p = LawParams::new(t, s, k)?;
    Ok(binomial(k - 2, p.floor_s_over_t()) < BigInt::from(s + 1))
}

/// `k₁ = k − 10m + 8`, defined for `m ≥ 2`, `k ≥ 10m − 5`.
pub fn refutation_k1(m: u64, k: u64) -> Result<u64, ThresholdError> {
    if m < 2 {
        return domain(format!("need m >= 2, got {m}"));
    }
    if k + 5 < 10 * m {
        return domain(format!(
            "need k >= 10m - 5 = {}, got k={k}",
            10 * m - 5
        ));
    }
    Ok(k + 8 - 10 * m)
}

/// `α = 2/m − 1/(2^{k₁}·m·(m−1))`.
pub fn refutation_alpha(m: u64, k: u64) -> Result<Rational, ThresholdError> {
    let k1 = refutation_k1(m, k)?;
    let sub = Rational::new(BigInt::one(), pow(2, k1) * m * (m - 1));
    Ok(Rational::new(2u64, m) - sub)
}

/// Where the refutation point sits relative to the law intervals ending at
/// `2/m`. Only computed, never asserted: the ordering is not claimed in general.
#[derive(Debug, Clone, Serialize)]
pub struct RefutationReport {
    pub m: u64,
    pub k: u64,
    pub k1: u64,
    pub alpha: Rational,
    pub right_end: Rational,
    pub basic_interval: Option<(Rational, Rational)>,
    pub strong_interval: Option<(Rational, Rational)>,
    /// `Some(true)` if alpha lies inside the basic interval.
    pub inside_basic: Option<bool>,
    pub inside_strong: Option<bool>,
}

pub fn refutation_report(m: u64, k: u64) -> Result<RefutationReport, ThresholdError> {
    let k1 = refutation_k1(m, k)?;
    let alpha = refutation_alpha(m, k)?;
    let right_end = Rational::new(2u64, m);
    let params = LawParams::from_fraction(&right_end, k).ok();
    let basic = params
        .as_ref()
        .map(|p| interval_basic(k, p.t, p.s).expect("validated"));
    let strong = params
        .as_ref()
        .map(|p| interval_strong(k, p.t, p.s).expect("validated"));
    let inside = |iv: &Option<(Rational, Rational)>| {
        iv.as_ref().map(|(l, r)| l < &alpha && &alpha < r)
    };
    Ok(RefutationReport {
        m,
        k,
        k1,
        inside_basic: inside(&basic),
        inside_strong: inside(&strong),
        alpha,
        right_end,
        basic_interval: basic,
        strong_interval: strong,
    })
}
