//! Univariate helpers: Sturm root counting, x-adic valuation, exact division.

use num_traits::{One, Signed, Zero};

use super::SparsePoly;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Dense coefficients, constant term first, no trailing zeros.
type Dense = Vec<Rational>;

fn to_dense(p: &SparsePoly) -> Result<Dense> {
    if p.nvars() != 1 {
        return Err(Error::Dimension(format!(
            "expected a univariate polynomial, got {} variables",
            p.nvars()
        )));
    }
    let deg = p.degree().unwrap_or(0) as usize;
    let mut d = vec![Rational::zero(); deg + 1];
    for (e, c) in p.terms() {
        d[e[0] as usize] = c.clone();
    }
    trim(&mut d);
    Ok(d)
}

fn from_dense(d: &[Rational]) -> SparsePoly {
    SparsePoly::from_terms(
        1,
        d.iter()
            .enumerate()
            .map(|(k, c)| (vec![k as u32], c.clone())),
    )
    .expect("univariate")
}

fn trim(d: &mut Dense) {
    while d.last().is_some_and(|c| c.is_zero()) {
        d.pop();
    }
}

fn eval(d: &[Rational], x: &Rational) -> Rational {
    d.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

fn derivative(d: &[Rational]) -> Dense {
    let mut out: Dense = d
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Rational::from_integer(k.into()))
        .collect();
    trim(&mut out);
    out
}

/// Polynomial long division `a = q·b + r`; `b` must be nonzero.
fn div_rem(a: &[Rational], b: &[Rational]) -> (Dense, Dense) {
    let mut r: Dense = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / &lead;
        for (k, c) in b.iter().enumerate() {
            let t = c * &f;
            r[k + shift] -= t;
        }
        q[shift] = f;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn gcd(a: &[Rational], b: &[Rational]) -> Dense {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let (_, r) = div_rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(l) = a.last().cloned() {
        for c in a.iter_mut() {
            *c /= &l;
        }
    }
    a
}

fn sturm_chain(d: &[Rational]) -> Vec<Dense> {
    let mut chain = vec![d.to_vec()];
    let d1 = derivative(d);
    if d1.is_empty() {
        return chain;
    }
    chain.push(d1);
    loop {
        let n = chain.len();
        let (_, r) = div_rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            return chain;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
}

fn sign_variations(chain: &[Dense], x: &Rational) -> usize {
    let signs: Vec<bool> = chain
        .iter()
        .map(|p| eval(p, x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `p` in the half-open interval `(a, b]`.
pub fn sturm_count(p: &SparsePoly, a: &Rational, b: &Rational) -> Result<usize> {
    let d = to_dense(p)?;
    if d.is_empty() {
        return Err(Error::Invalid("Sturm count of the zero polynomial".into()));
    }
    if a >= b {
        return Ok(0);
    }
    // Square-free part keeps the chain's last element nonvanishing.
    let g = gcd(&d, &derivative(&d));
    let sf = if g.len() > 1 { div_rem(&d, &g).0 } else { d };
    let chain = sturm_chain(&sf);
    Ok(sign_variations(&chain, a).saturating_sub(sign_variations(&chain, b)))
}

/// `p > 0` at every point of `[0, 1]`.
pub fn strictly_positive_on_unit_interval(p: &SparsePoly) -> Result<bool> {
    let d = to_dense(p)?;
    if d.is_empty() {
        return Ok(false);
    }
    let (zero, one) = (Rational::zero(), Rational::one());
    Ok(eval(&d, &zero).is_positive()
        && eval(&d, &one).is_positive()
        && sturm_count(p, &zero, &one)? == 0)
}

/// Largest `j` with `x^j | p`; `None` for the zero polynomial.
pub fn x_valuation(p: &SparsePoly) -> Result<Option<u32>> {
    let d = to_dense(p)?;
    Ok(d.iter().position(|c| !c.is_zero()).map(|j| j as u32))
}

/// `p / q` when `q` divides `p` exactly.
pub fn exact_div(p: &SparsePoly, q: &SparsePoly) -> Result<Option<SparsePoly>> {
    let (a, b) = (to_dense(p)?, to_dense(q)?);
    if b.is_empty() {
        return Err(Error::Invalid("division by the zero polynomial".into()));
    }
    let (quot, rem) = div_rem(&a, &b);
    Ok(rem.is_empty().then(|| from_dense(&quot)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn u(s: &str) -> SparsePoly {
        SparsePoly::parse(s, &["x"]).unwrap()
    }

    #[test]
    fn sturm_examples() {
        let (z, o) = (int(0), int(1));
        assert_eq!(sturm_count(&u("2x - 1"), &z, &o).unwrap(), 1);
        assert_eq!(sturm_count(&u("1"), &z, &o).unwrap(), 0);
        assert_eq!(sturm_count(&u("x^2 - x + 1"), &z, &o).unwrap(), 0);
        assert!(sturm_count(&SparsePoly::zero(1), &z, &o).is_err());
    }

    #[test]
    fn half_open_interval_and_multiplicity() {
        // roots 0 (double) and 1: counted in (0, 1] only once, 0 excluded
        let p = u("x^2 (x - 1)");
        assert_eq!(sturm_count(&p, &int(0), &int(1)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &int(-1), &int(1)).unwrap(), 2);
        let q = u("(x - 1/3)^3 (x - 2/3)");
        assert_eq!(sturm_count(&q, &int(0), &int(1)).unwrap(), 2);
        assert_eq!(sturm_count(&q, &rat(1, 3), &rat(1, 2)).unwrap(), 0);
    }

    #[test]
    fn unit_interval_positivity() {
        assert!(strictly_positive_on_unit_interval(&u("x^2 - x + 1")).unwrap());
        assert!(strictly_positive_on_unit_interval(&u("1 + x")).unwrap());
        assert!(!strictly_positive_on_unit_interval(&u("x")).unwrap());
        assert!(!strictly_positive_on_unit_interval(&u("(2x - 1)^2")).unwrap());
        assert!(!strictly_positive_on_unit_interval(&u("1 - x")).unwrap());
        assert!(!strictly_positive_on_unit_interval(&SparsePoly::zero(1)).unwrap());
    }

    #[test]
    fn valuation_and_division() {
        assert_eq!(x_valuation(&u("x^3 (2 - x)")).unwrap(), Some(3));
        assert_eq!(x_valuation(&u("1 + x")).unwrap(), Some(0));
        assert_eq!(x_valuation(&SparsePoly::zero(1)).unwrap(), None);
        assert_eq!(exact_div(&u("x + x^2"), &u("1 + x")).unwrap(), Some(u("x")));
        assert_eq!(exact_div(&u("x + 2"), &u("1 + x")).unwrap(), None);
        assert!(x_valuation(&SparsePoly::zero(2)).is_err());
    }
}
