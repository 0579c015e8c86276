//! Structure constants of `sl2`-hat in the principal picture, on the basis
//! `{B(m) : m odd} ∪ {X(n) : n ∈ Z} ∪ {c, d}`.
//!
//! ```text
//! [B(m), B(n)] = m δ_{m+n,0} c
//! [B(m), X(n)] = 2 X(m+n)
//! [X(m), X(n)] = (-1)^{m+1} 2 B(m+n) + (-1)^m m δ_{m+n,0} c
//! [d, B(n)] = n B(n),  [d, X(n)] = n X(n),  c central
//! ```
//!
//! `B(m+n)` on the right-hand side vanishes whenever `m+n` is even. As an
//! input, though, `B(even)` is not a basis element and is rejected.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::qseries::{fock_character, TruncatedSeries};
use crate::{par, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisElement {
    B(i64),
    X(i64),
    C,
    D,
}

impl BasisElement {
    pub fn validate(self) -> Result<Self> {
        match self {
            BasisElement::B(n) if n % 2 == 0 => Err(Error::EvenHeisenbergIndex(n)),
            other => Ok(other),
        }
    }

    pub fn degree(self) -> i64 {
        match self {
            BasisElement::B(n) | BasisElement::X(n) => n,
            BasisElement::C | BasisElement::D => 0,
        }
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::B(n) => write!(f, "B({n})"),
            BasisElement::X(n) => write!(f, "X({n})"),
            BasisElement::C => f.write_str("c"),
            BasisElement::D => f.write_str("d"),
        }
    }
}

/// Finite integer combination of basis elements. Zero coefficients are never
/// stored, so structural equality is equality of combinations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LieCombination {
    terms: BTreeMap<BasisElement, i64>,
}

impl LieCombination {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (BasisElement, i64)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    /// Adds `coeff * e`. `B(even)` terms are dropped: they are zero by
    /// convention.
    pub fn add_term(&mut self, e: BasisElement, coeff: i64) {
        if coeff == 0 {
            return;
        }
        if let BasisElement::B(n) = e {
            if n % 2 == 0 {
                return;
            }
        }
        let entry = self.terms.entry(e).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn add(&mut self, other: &Self, scale: i64) {
        for (&e, &c) in &other.terms {
            self.add_term(e, scale * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, e: BasisElement) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (BasisElement, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for LieCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (e, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}: {c}")?;
        }
        f.write_str("}")
    }
}

fn sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn bracket(x: BasisElement, y: BasisElement) -> Result<LieCombination> {
    use BasisElement::*;
    let x = x.validate()?;
    let y = y.validate()?;
    let mut out = LieCombination::zero();
    match (x, y) {
        (C, _) | (_, C) | (D, D) => {}
        (D, e @ (B(n) | X(n))) => out.add_term(e, n),
        (e @ (B(n) | X(n)), D) => out.add_term(e, -n),
        (B(m), B(n)) => {
            if m + n == 0 {
                out.add_term(C, m);
            }
        }
        (B(m), X(n)) => out.add_term(X(m + n), 2),
        (X(n), B(m)) => out.add_term(X(m + n), -2),
        (X(m), X(n)) => {
            out.add_term(B(m + n), -sign(m) * 2);
            if m + n == 0 {
                out.add_term(C, sign(m) * m);
            }
        }
    }
    Ok(out)
}

/// `[x, v]` extended linearly in `v`.
pub fn bracket_with(x: BasisElement, v: &LieCombination) -> Result<LieCombination> {
    let mut out = LieCombination::zero();
    for (e, c) in v.terms() {
        out.add(&bracket(x, e)?, c);
    }
    Ok(out)
}

/// Every basis element with `|index| <= window`, plus `c` and `d`.
pub fn basis_window(window: i64) -> Vec<BasisElement> {
    let w = window.abs();
    let mut out: Vec<_> = (-w..=w)
        .filter(|n| n % 2 != 0)
        .map(BasisElement::B)
        .collect();
    out.extend((-w..=w).map(BasisElement::X));
    out.push(BasisElement::C);
    out.push(BasisElement::D);
    out
}

/// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]`.
pub fn jacobiator(x: BasisElement, y: BasisElement, z: BasisElement) -> Result<LieCombination> {
    let mut out = bracket_with(x, &bracket(y, z)?)?;
    out.add(&bracket_with(y, &bracket(z, x)?)?, 1);
    out.add(&bracket_with(z, &bracket(x, y)?)?, 1);
    Ok(out)
}

/// A basis triple whose Jacobiator is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: [BasisElement; 3],
    pub residue: LieCombination,
}

/// All ordered triples in the window with a nonzero Jacobiator, in
/// basis order.
pub fn jacobi_violations(window: i64) -> Vec<JacobiViolation> {
    let basis = basis_window(window);
    let per_x = par::map_collect(basis.clone(), |x| {
        let mut found = Vec::new();
        for &y in &basis {
            for &z in &basis {
                let residue = jacobiator(x, y, z).expect("window holds only valid elements");
                if !residue.is_zero() {
                    found.push(JacobiViolation {
                        triple: [x, y, z],
                        residue,
                    });
                }
            }
        }
        found
    });
    per_x.into_iter().flatten().collect()
}

pub fn jacobi_check(window: i64) -> bool {
    jacobi_violations(window).is_empty()
}

/// Pairs in the window with `[x,y] != -[y,x]`.
pub fn antisymmetry_violations(window: i64) -> Vec<(BasisElement, BasisElement)> {
    let basis = basis_window(window);
    let mut out = Vec::new();
    for &x in &basis {
        for &y in &basis {
            let mut sum = bracket(x, y).expect("valid");
            sum.add(&bracket(y, x).expect("valid"), 1);
            if !sum.is_zero() {
                out.push((x, y));
            }
        }
    }
    out
}

pub fn antisymmetry_check(window: i64) -> bool {
    antisymmetry_violations(window).is_empty()
}

/// Graded count of the PBW monomials `B(i_1)..B(i_r) X(j_1)..X(j_s) v`
/// (odd `i_1 <= .. <= i_r <= -1`, `j_1 <= .. <= j_s <= -1`) with at most
/// `max_x` factors `X`, i.e. the filtration piece `M_(max_x)`. The `q^n`
/// coefficient counts monomials of degree `-n`.
///
/// With `max_x >= order` this is the full Verma character `F / (q)_∞`.
pub fn pbw_count(max_x: usize, order: usize) -> TruncatedSeries {
    let mut s = fock_character(order);
    s.apply_poch_inv(1, max_x).expect("step 1 is positive");
    s
}

/// Same count as [`pbw_count`] by listing the monomials one by one.
/// Exponential in `order`; meant for cross-checking small orders.
pub fn pbw_count_enumerated(max_x: usize, order: usize) -> TruncatedSeries {
    // counts[n] = number of B-monomials of exponent n
    let mut b_counts = vec![0u64; order + 1];
    count_parts(order, order, 0, &|p| p % 2 == 1, usize::MAX, &mut b_counts);
    let mut x_counts = vec![0u64; order + 1];
    count_parts(order, order, 0, &|_| true, max_x, &mut x_counts);
    let mut total = vec![BigInt::from(0); order + 1];
    for (a, &ca) in b_counts.iter().enumerate() {
        for (b, &cb) in x_counts[..=order - a].iter().enumerate() {
            total[a + b] += BigInt::from(ca) * BigInt::from(cb);
        }
    }
    TruncatedSeries::from_coeffs(total).expect("nonempty")
}

// Walks every multiset of allowed parts (listed largest first) with at most
// `slots` parts, tallying each by its sum.
fn count_parts(
    budget: usize,
    max_part: usize,
    sum: usize,
    allowed: &dyn Fn(usize) -> bool,
    slots: usize,
    counts: &mut [u64],
) {
    counts[sum] += 1;
    if slots == 0 {
        return;
    }
    for p in (1..=max_part.min(budget)).filter(|&p| allowed(p)) {
        count_parts(budget - p, p, sum + p, allowed, slots - 1, counts);
    }
}
