use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::field::prime_power;
use crate::projective::{LinearKind, PairKind};
use crate::stats::StatsReport;

use super::{BoundCheck, BoundReport, LabError};

pub(crate) const EPSILON: f64 = 1e-9;

/// Lower and upper bounds on `I(PGL_d(q))` acting on `m`-subspaces.
pub fn thm31_bounds(d: usize, m: usize, q: u64) -> Result<(usize, usize), LabError> {
    if d < 2 || m == 0 || m >= d {
        return Err(LabError::BadParameters(format!("need d >= 2 and 1 <= m <= d - 1, got d = {d}, m = {m}")));
    }
    if prime_power(q).is_none() {
        return Err(LabError::BadParameters(format!("{q} is not a prime power")));
    }
    let lower = if q == 2 { m * d - m * m + 1 } else { (m + 1) * d - m * m };
    Ok((lower, (m + 1) * d - 2 * m + 1))
}

/// Length of the longest subgroup chain in a cyclic group of order `f`:
/// the number of prime factors of `f` with multiplicity.
pub fn cyclic_chain_length(f: u64) -> Result<u32, LabError> {
    if f == 0 {
        return Err(LabError::BadParameters("f must be at least 1".into()));
    }
    let (mut f, mut count, mut p) = (f, 0, 2);
    while p * p <= f {
        while f % p == 0 {
            f /= p;
            count += 1;
        }
        p += 1;
    }
    Ok(count + u32::from(f > 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum FamilyShape {
    Subspaces { kind: LinearKind },
    Pairs { pair: PairKind, kind: LinearKind, duality: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyContext {
    pub shape: FamilyShape,
    pub d: usize,
    pub m: usize,
    pub q: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundContext {
    /// Curated flag: alternating or symmetric socle in a subset action.
    pub large_base: bool,
    pub soluble: Option<bool>,
    pub family: Option<FamilyContext>,
    /// `I` of the same linear group on `m`-subspaces (for pair actions).
    pub companion_i: Option<usize>,
    /// `I(PGL_d(q))` on the same points (for semilinear groups).
    pub linear_i: Option<usize>,
}

fn big(x: impl Into<BigUint>) -> BigUint {
    x.into()
}

fn pow(base: u64, e: usize) -> BigUint {
    BigUint::from(base).pow(e as u32)
}

fn log2(x: f64) -> f64 {
    libm::log2(x)
}

/// Every inequality that applies to `stats` under `ctx`.
pub fn bound_suite(stats: &StatsReport, ctx: &BoundContext) -> Result<BoundReport, LabError> {
    let i = stats.i.as_ref().ok_or(LabError::MissingStatistic("I"))?.value;
    let b = stats.b.as_ref().map(|w| w.value);
    let big_b = stats.big_b.as_ref().map(|w| w.value);
    let h = stats.h.as_ref().map(|w| w.value);
    let rc = stats.rc.as_ref().map(|r| r.value);
    let greedy = stats.greedy.as_ref().map(|g| g.base.len());
    let n = stats.n as u64;
    let order = big(stats.order);
    let mut checks = Vec::new();

    let chain: Vec<usize> = [b, big_b, h, Some(i)].into_iter().flatten().collect();
    checks.push(BoundCheck::exact(
        "statistic-chain",
        "b <= B <= H <= I",
        format!("{chain:?}"),
        "non-decreasing",
        chain.windows(2).all(|w| w[0] <= w[1]),
    ));
    if let Some(b) = b {
        checks.push(BoundCheck::exact(
            "irredundant-log",
            "I <= b log n, as 2^I <= n^b",
            pow(2, i),
            pow(n, b),
            pow(2, i) <= pow(n, b),
        ));
    }
    if let (Some(rc), Some(h)) = (rc, h) {
        checks.push(BoundCheck::exact("relational-height", "RC <= H + 1", rc, h + 1, rc <= h + 1));
    }
    if let (Some(g), Some(b)) = (greedy, b) {
        checks.push(BoundCheck::exact("greedy-range", "b <= greedy <= I", g, format!("[{b}, {i}]"), b <= g && g <= i));
    }
    if ctx.soluble == Some(false) {
        checks.push(BoundCheck::exact(
            "insoluble-order",
            "I < log|G| - 1, as 2^(I+1) < |G|",
            pow(2, i + 1),
            &order,
            pow(2, i + 1) < order,
        ));
    }
    if stats.transitive && n >= 5 {
        checks.push(BoundCheck::exact(
            "transitive-order",
            "I <= log|G| - 1, as 2^(I+1) <= |G|",
            pow(2, i + 1),
            &order,
            pow(2, i + 1) <= order,
        ));
    }
    if let (true, Some(b)) = (stats.transitive, b) {
        if i >= 1 && b >= 1 {
            checks.push(BoundCheck::exact(
                "transitive-base",
                "I <= (b - 1) log n + 1, as 2^(I-1) <= n^(b-1)",
                pow(2, i - 1),
                pow(n, b - 1),
                pow(2, i - 1) <= pow(n, b - 1),
            ));
        }
    }
    if stats.primitive && !ctx.large_base {
        let n5 = pow(n, 5);
        checks.push(BoundCheck::exact(
            "primitive-five-log",
            "I < 5 log n, as 2^I < n^5",
            pow(2, i),
            &n5,
            pow(2, i) < n5,
        ));
        if let Some(rc) = rc {
            let l = pow(2, rc.saturating_sub(1));
            checks.push(BoundCheck::exact("primitive-five-log-rc", "RC < 5 log n + 1", &l, &n5, l < n5));
        }
        for (name, stmt, v) in [
            ("primitive-five-log-minimal", "B < 5 log n", big_b),
            ("primitive-five-log-height", "H < 5 log n", h),
            ("primitive-five-log-greedy", "greedy base length < 5 log n", greedy),
        ] {
            if let Some(v) = v {
                checks.push(BoundCheck::exact(name, stmt, pow(2, v), &n5, pow(2, v) < n5));
            }
        }
    }
    if let Some(fam) = ctx.family {
        family_checks(&mut checks, fam, ctx, i, n)?;
    }
    Ok(BoundReport { checks })
}

fn family_checks(
    checks: &mut Vec<BoundCheck>,
    fam: FamilyContext,
    ctx: &BoundContext,
    i: usize,
    n: u64,
) -> Result<(), LabError> {
    let FamilyContext { d, m, q, .. } = fam;
    let (_, f) = prime_power(q).ok_or_else(|| LabError::BadParameters(format!("{q} is not a prime power")))?;
    let f = f as u64;
    let codim = m * (d - m);
    match fam.shape {
        FamilyShape::Subspaces { kind } => {
            if kind == LinearKind::Pgl {
                let (lo, hi) = thm31_bounds(d, m, q)?;
                checks.push(BoundCheck::exact(
                    "linear-two-sided",
                    "lower(d, m, q) <= I(PGL_d(q)) <= (m+1)d - 2m + 1",
                    i,
                    format!("[{lo}, {hi}]"),
                    lo <= i && i <= hi,
                ));
            }
            checks.push(BoundCheck::exact(
                "subspace-count",
                "log n > m(d - m) log q, as n > q^(m(d-m))",
                n,
                pow(q, codim),
                big(n) > pow(q, codim),
            ));
            if q == 2 && d % 2 == 0 && m == d / 2 && m >= 2 {
                checks.push(BoundCheck::exact(
                    "subspace-count-half",
                    "log n > d^2/4 + 1/2, as n^4 > 2^(d^2 + 2)",
                    pow(n, 4),
                    pow(2, d * d + 2),
                    pow(n, 4) > pow(2, d * d + 2),
                ));
            }
            if !matches!((d, q), (2, 2) | (2, 3)) {
                checks.push(BoundCheck::exact(
                    "socle-three-log",
                    "I < 3 log n, as 2^I < n^3",
                    pow(2, i),
                    pow(n, 3),
                    pow(2, i) < pow(n, 3),
                ));
            }
            if 2 * m <= d {
                semilinear_checks(checks, d, m, q, f, i, n);
                let (lhs, rhs, stmt) = if m == 1 {
                    (pow(q, codim), big(2 * f), "m(d - m) log q >= log f + 1, as q^(m(d-m)) >= 2f")
                } else {
                    (pow(q, codim), big(16 * f * f * f), "m(d - m) log q >= 3 log f + 4, as q^(m(d-m)) >= 16 f^3")
                };
                let pass = lhs >= rhs;
                checks.push(BoundCheck::exact("field-degree", stmt, lhs, rhs, pass));
            }
            if let (LinearKind::Pgammal, Some(li)) = (kind, ctx.linear_i) {
                let ell = cyclic_chain_length(f)? as usize;
                checks.push(BoundCheck::exact(
                    "semilinear-extension",
                    "I(PGammaL) <= I(PGL) + chain length of C_f",
                    i,
                    li + ell,
                    i <= li + ell,
                ));
            }
        }
        FamilyShape::Pairs { .. } => {
            if let Some(ci) = ctx.companion_i {
                checks.push(BoundCheck::exact(
                    "pair-doubling",
                    "I(G, pairs) <= 2 I(H, m-subspaces) + 1",
                    i,
                    2 * ci + 1,
                    i <= 2 * ci + 1,
                ));
            }
            checks.push(BoundCheck::exact(
                "pair-five-log",
                "I < 5(log n - 1), as 2^(I+5) < n^5",
                pow(2, i + 5),
                pow(n, 5),
                pow(2, i + 5) < pow(n, 5),
            ));
            if (d, m, q) == (3, 1, 2) {
                checks.push(BoundCheck::exact(
                    "pair-small-instance",
                    "n in {21, 28} and I <= 11",
                    format!("n = {n}, I = {i}"),
                    "n in {21, 28}, I <= 11",
                    (n == 21 || n == 28) && i <= 11,
                ));
            }
        }
    }
    Ok(())
}

/// The four-case bound for the semilinear group on `m`-subspaces, `m <= d/2`,
/// together with its restatement in terms of `n`.
fn semilinear_checks(checks: &mut Vec<BoundCheck>, d: usize, m: usize, q: u64, f: u64, i: usize, n: u64) {
    let (lq, lf) = (log2(q as f64), log2(f as f64));
    let name = "semilinear-bound";
    let restated = "semilinear-bound-in-n";
    if m == 1 && q == 2 {
        let v = 2 * (d - 1) + 1;
        checks.push(BoundCheck::exact(name, "I <= 2(d - 1) + 1", i, v, i <= v));
        let pass = pow(2, 2 * (d - 1)) <= pow(n, 2);
        checks.push(BoundCheck::exact(restated, "2(d - 1) + 1 <= 2 log n + 1", pow(2, 2 * (d - 1)), pow(n, 2), pass));
    } else if m == 1 {
        let v = 4.0 / 3.0 * (d - 1) as f64 * lq + 1.0 + lf;
        checks.push(BoundCheck::float(name, "I <= (4/3)(d - 1) log q + 1 + log f", i as f64, v));
        let pass = pow(q, d - 1) <= big(n);
        checks.push(BoundCheck::exact(restated, "(d - 1) log q <= log n", pow(q, d - 1), n, pass));
    } else if q == 2 && 2 * m == d {
        let v = d * d / 2 + 1;
        checks.push(BoundCheck::exact(name, "I <= d^2/2 + 1", i, v, i <= v));
        let pass = pow(2, v) <= pow(n, 2);
        checks.push(BoundCheck::exact(restated, "d^2/2 + 1 <= 2 log n", pow(2, v), pow(n, 2), pass));
    } else {
        let codim = m * (d - m);
        let v = 2.0 * codim as f64 * lq + lf;
        checks.push(BoundCheck::float(name, "I <= 2m(d - m) log q + log f", i as f64, v));
        let pass = pow(q, codim) <= big(n);
        checks.push(BoundCheck::exact(restated, "m(d - m) log q <= log n", pow(q, codim), n, pass));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_bounds() {
        assert_eq!(thm31_bounds(2, 1, 3).unwrap(), (3, 3));
        assert_eq!(thm31_bounds(3, 1, 2).unwrap(), (3, 5));
        assert_eq!(thm31_bounds(4, 2, 2).unwrap(), (5, 9));
        assert_eq!(thm31_bounds(3, 1, 3).unwrap(), (5, 5));
        assert!(thm31_bounds(3, 3, 2).is_err());
        assert!(thm31_bounds(3, 1, 6).is_err());
    }

    #[test]
    fn chain_lengths() {
        assert_eq!(cyclic_chain_length(1).unwrap(), 0);
        assert_eq!(cyclic_chain_length(8).unwrap(), 3);
        assert_eq!(cyclic_chain_length(12).unwrap(), 3);
        assert_eq!(cyclic_chain_length(97).unwrap(), 1);
        assert!(cyclic_chain_length(0).is_err());
        for f in 1..200u64 {
            assert!(cyclic_chain_length(f).unwrap() as f64 <= log2(f as f64) + EPSILON);
        }
    }
}
