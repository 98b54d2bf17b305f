//! Exact rational coefficients of the projector recursions, on the wall
//! (`c_n`, `d_n`) and beyond it (`c_m`, `d_{m,n}`), in closed form and by
//! their defining recursions.

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::{Report, VerifyReport};

pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

fn recip(x: &Rat, what: &str) -> Result<Rat> {
    if x.is_zero() {
        return Err(Error::DivisionByZero(what.to_string()));
    }
    Ok(x.recip())
}

/// Wall coefficient `c_n`: 0 for `n <= 4`, and `c_{2k+1} = c_{2k+2} = -(k-1)/k`.
pub fn wall_c(n: usize) -> Result<Rat> {
    if n == 0 {
        return Err(Error::IndexOutOfRange("c_n needs n >= 1".into()));
    }
    if n <= 4 {
        return Ok(Rat::zero());
    }
    let k = ((n - 1) / 2) as i64;
    Ok(rat(-(k - 1), k))
}

/// One step `c_{n+1} = 1 / (-2 - c_{n-1})`.
pub fn wall_c_step(c_prev: &Rat) -> Result<Rat> {
    recip(&(rat(-2, 1) - c_prev), "-2 - c_{n-1}")
}

/// `[c_1, ..., c_max]` from the recursion with `c_1 = ... = c_4 = 0`.
pub fn wall_c_rec_table(max: usize) -> Result<Vec<Rat>> {
    let mut out: Vec<Rat> = Vec::with_capacity(max);
    for n in 1..=max {
        let value = if n <= 4 { Rat::zero() } else { wall_c_step(&out[n - 3])? };
        out.push(value);
    }
    Ok(out)
}

pub fn wall_c_rec(n: usize) -> Result<Rat> {
    if n == 0 {
        return Err(Error::IndexOutOfRange("c_n needs n >= 1".into()));
    }
    Ok(wall_c_rec_table(n)?.pop().expect("n >= 1"))
}

fn odd_index(n: usize) -> Result<usize> {
    if n % 2 == 0 {
        return Err(Error::IndexOutOfRange(format!("d_n is defined for odd n, got {n}")));
    }
    Ok((n - 1) / 2)
}

/// Wall coefficient `d_{2k+1}`: 0 for `k <= 2`, then `(k-2)/(k-1)`.
pub fn wall_d(n: usize) -> Result<Rat> {
    let k = odd_index(n)? as i64;
    if k <= 2 {
        return Ok(Rat::zero());
    }
    Ok(rat(k - 2, k - 1))
}

/// One step `d_{2k+1} = 1 / (2 - d_{2k-1})`.
pub fn wall_d_step(d_prev: &Rat) -> Result<Rat> {
    recip(&(rat(2, 1) - d_prev), "2 - d_{2n-1}")
}

/// `[d_1, d_3, ..., d_{2K+1}]` for the largest `2K+1 <= max`.
pub fn wall_d_rec_table(max: usize) -> Result<Vec<Rat>> {
    let mut out: Vec<Rat> = Vec::new();
    for k in 0..=(max.saturating_sub(1) / 2) {
        let value = if k <= 2 { Rat::zero() } else { wall_d_step(&out[k - 1])? };
        out.push(value);
    }
    Ok(out)
}

pub fn wall_d_rec(n: usize) -> Result<Rat> {
    let k = odd_index(n)?;
    Ok(wall_d_rec_table(n)?.swap_remove(k))
}

/// Beyond-wall `c_m = (m-1)/m` for `m >= 1`.
pub fn beyond_c(m: usize) -> Result<Rat> {
    if m == 0 {
        return Err(Error::IndexOutOfRange("beyond c_m needs m >= 1".into()));
    }
    Ok(rat(m as i64 - 1, m as i64))
}

/// One step of `-1/c_{m+1} = -2 + c_m`.
pub fn beyond_c_step(c_m: &Rat) -> Result<Rat> {
    Ok(-recip(&(rat(-2, 1) + c_m), "-2 + c_m")?)
}

/// `d_{j,n} = -n(n+j) / ((n+1)(n+j+1))` for `j >= 1`.
pub fn beyond_d(j: usize, n: usize) -> Result<Rat> {
    if j == 0 {
        return Err(Error::IndexOutOfRange("beyond d_{m,n} needs m >= 1".into()));
    }
    let (j, n) = (j as i64, n as i64);
    Ok(rat(-n * (n + j), (n + 1) * (n + j + 1)))
}

/// `-1/d_{1,n} = 3 - 2 c_n`.
pub fn beyond_d_first(c_n: &Rat) -> Result<Rat> {
    Ok(-recip(&(rat(3, 1) - c_n * rat(2, 1)), "3 - 2c_n")?)
}

/// `-1/d_{m+1,n} = 4 - 2 c_n + d_{m,n} (2 - c_n)^2`.
pub fn beyond_d_step(d_mn: &Rat, c_n: &Rat) -> Result<Rat> {
    let two_minus = rat(2, 1) - c_n;
    let denom = rat(4, 1) - c_n * rat(2, 1) + d_mn * &two_minus * &two_minus;
    Ok(-recip(&denom, "4 - 2c_n + d_{m,n}(2 - c_n)^2")?)
}

/// Closed forms against recursions on the wall, up to index `max`.
pub fn wall_rec_check(max: usize) -> Result<VerifyReport> {
    let mut r = Report::new("wall-recursions").param("max", max);
    let c_table = wall_c_rec_table(max)?;
    for (i, rec) in c_table.iter().enumerate() {
        let n = i + 1;
        let closed = wall_c(n)?;
        r.expect_eq_with(|| format!("c_{n}"), &closed, rec);
        if closed.is_positive() || closed <= rat(-1, 1) {
            r.mismatch(format!("c_{n} range"), "(-1, 0]", &closed);
        }
        if i > 0 && closed > wall_c(n - 1)? {
            r.mismatch(format!("c_{n} monotone"), "non-increasing", &closed);
        }
    }
    let d_table = wall_d_rec_table(max)?;
    for (k, rec) in d_table.iter().enumerate() {
        let n = 2 * k + 1;
        r.expect_eq_with(|| format!("d_{n}"), &wall_d(n)?, rec);
    }
    Ok(r.finish())
}

/// Beyond-wall closed forms against their recursions: plugging the closed
/// values into each recursion, and iterating each recursion from its base.
pub fn beyond_rec_check(max_m: usize, max_n: usize) -> Result<VerifyReport> {
    let mut r = Report::new("beyond-recursions")
        .param("max_m", max_m)
        .param("max_n", max_n);

    let mut c_iter = Rat::zero();
    for m in 1..=max_m.max(max_n) {
        let closed = beyond_c(m)?;
        r.expect_eq(format!("c_{m} (iterated)"), &closed, &c_iter);
        if closed.is_negative() || closed >= Rat::one() {
            r.mismatch(format!("c_{m} range"), "[0, 1)", &closed);
        }
        let next = beyond_c(m + 1)?;
        r.expect_eq(
            format!("c_{} (from closed c_{m})", m + 1),
            &next,
            &beyond_c_step(&closed)?,
        );
        c_iter = beyond_c_step(&c_iter)?;
    }

    let rows: Vec<Result<VerifyReport>> = (1..=max_n)
        .into_par_iter()
        .map(|n| match d_row::<i128>(n, max_m) {
            Some(report) => Ok(report),
            None => d_row::<BigInt>(n, max_m)
                .ok_or_else(|| Error::DivisionByZero(format!("beyond-wall d recursion at n={n}"))),
        })
        .collect();
    for row in rows {
        r.absorb(&row?);
    }
    Ok(r.finish())
}

fn ratio<I: Integer + Clone + From<i64>>(num: i64, den: i64) -> Option<Ratio<I>> {
    (den != 0).then(|| Ratio::new(I::from(num), I::from(den)))
}

/// `-1 / x`, `None` on zero.
fn neg_recip<I: Integer + Clone + CheckedMul + Neg<Output = I>>(x: &Ratio<I>) -> Option<Ratio<I>> {
    (!x.is_zero()).then(|| -x.recip())
}

/// The `d_{m,n}` checks for one `n`, in the integer type `I`. `None` when an
/// operation overflows `I` or a recursion hits a zero denominator.
fn d_row<I>(n: usize, max_m: usize) -> Option<VerifyReport>
where
    I: Integer + Clone + Signed + CheckedMul + CheckedAdd + CheckedSub + From<i64> + fmt::Display,
{
    let (ni, two, three, four) = (n as i64, Ratio::<I>::from_integer(I::from(2)), I::from(3), I::from(4));
    let closed = |j: i64| -> Option<Ratio<I>> {
        let num = ni.checked_mul(ni + j)?;
        let den = (ni + 1).checked_mul(ni + j + 1)?;
        ratio(-num, den)
    };
    let c_n = ratio::<I>(ni - 1, ni)?;
    let first = neg_recip(&Ratio::from_integer(three).checked_sub(&two.checked_mul(&c_n)?)?)?;
    let two_minus = two.checked_sub(&c_n)?;
    let square = two_minus.checked_mul(&two_minus)?;
    let base = Ratio::from_integer(four).checked_sub(&two.checked_mul(&c_n)?)?;
    let step = |d: &Ratio<I>| -> Option<Ratio<I>> { neg_recip(&base.checked_add(&d.checked_mul(&square)?)?) };

    let mut sub = Report::new("d").param("n", n);
    sub.expect_eq("d_{1,n}", &closed(1)?, &first);
    let mut iterated = first;
    let mut closed_m = closed(1)?;
    for m in 1..=max_m {
        let closed_next = closed(m as i64 + 1)?;
        sub.expect_eq_with(
            || format!("d_{{{},{n}}} (from closed)", m + 1),
            &closed_next,
            &step(&closed_m)?,
        );
        iterated = step(&iterated)?;
        sub.expect_eq_with(|| format!("d_{{{},{n}}} (iterated)", m + 1), &closed_next, &iterated);
        closed_m = closed_next;
    }
    Some(sub.finish())
}

/// One line of a coefficient table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoeffRow {
    pub index: String,
    pub closed: String,
    pub recursive: String,
    pub equal: bool,
}

fn row(index: String, closed: Rat, recursive: Rat) -> CoeffRow {
    CoeffRow {
        index,
        equal: closed == recursive,
        closed: closed.to_string(),
        recursive: recursive.to_string(),
    }
}

/// `c_1..c_max` and the odd `d_n` up to `max`.
pub fn wall_table(max: usize) -> Result<Vec<CoeffRow>> {
    let mut out = Vec::new();
    for (i, rec) in wall_c_rec_table(max)?.into_iter().enumerate() {
        out.push(row(format!("c_{}", i + 1), wall_c(i + 1)?, rec));
    }
    for (k, rec) in wall_d_rec_table(max)?.into_iter().enumerate() {
        out.push(row(format!("d_{}", 2 * k + 1), wall_d(2 * k + 1)?, rec));
    }
    Ok(out)
}

/// `c_1..c_max` and `d_{m,n}` for `1 <= m, n <= max`.
pub fn beyond_table(max: usize) -> Result<Vec<CoeffRow>> {
    let mut out = Vec::new();
    let mut c = Rat::zero();
    for m in 1..=max {
        out.push(row(format!("c_{m}"), beyond_c(m)?, c.clone()));
        c = beyond_c_step(&c)?;
    }
    for n in 1..=max {
        let c_n = beyond_c(n)?;
        let mut d = beyond_d_first(&c_n)?;
        for m in 1..=max {
            out.push(row(format!("d_{{{m},{n}}}"), beyond_d(m, n)?, d.clone()));
            d = beyond_d_step(&d, &c_n)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wall_spot_values() {
        assert_eq!(wall_c(5).unwrap(), rat(-1, 2));
        assert_eq!(wall_c(6).unwrap(), rat(-1, 2));
        assert_eq!(wall_c(4).unwrap(), Rat::zero());
        assert_eq!(wall_c_rec(7).unwrap(), rat(-2, 3));
        assert_eq!(wall_d(7).unwrap(), rat(1, 2));
        assert_eq!(wall_d(5).unwrap(), Rat::zero());
        assert_eq!(wall_d_rec(9).unwrap(), rat(2, 3));
        assert!(wall_d(4).is_err());
        assert!(wall_c(0).is_err());
    }

    #[test]
    fn beyond_spot_values() {
        assert_eq!(beyond_c(2).unwrap(), rat(1, 2));
        assert_eq!(beyond_c_step(&Rat::zero()).unwrap(), rat(1, 2));
        assert_eq!(beyond_d(1, 1).unwrap(), rat(-1, 3));
        assert_eq!(beyond_d_first(&Rat::zero()).unwrap(), rat(-1, 3));
        assert_eq!(beyond_d(2, 1).unwrap(), rat(-3, 8));
        assert_eq!(beyond_d_step(&rat(-1, 3), &Rat::zero()).unwrap(), rat(-3, 8));
        assert!(beyond_c(0).is_err());
        assert!(beyond_d(0, 3).is_err());
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert!(matches!(wall_c_step(&rat(-2, 1)), Err(Error::DivisionByZero(_))));
        assert!(matches!(wall_d_step(&rat(2, 1)), Err(Error::DivisionByZero(_))));
        assert!(matches!(beyond_c_step(&rat(2, 1)), Err(Error::DivisionByZero(_))));
    }

    #[test]
    fn recursions_small() {
        assert!(wall_rec_check(200).unwrap().pass);
        assert!(beyond_rec_check(30, 30).unwrap().pass);
    }

    #[test]
    fn tables() {
        let wall = wall_table(9).unwrap();
        assert_eq!(wall.len(), 9 + 5);
        assert!(wall.iter().all(|r| r.equal));
        assert_eq!(wall[4].closed, "-1/2");
        let beyond = beyond_table(3).unwrap();
        assert_eq!(beyond.len(), 3 + 9);
        assert!(beyond.iter().all(|r| r.equal));
    }
}
