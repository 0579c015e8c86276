//! Closed-form characters: product sides, fermionic sum sides, and the
//! module characters read off the quasi-particle bases.
//!
//! Every character of a standard module is `F` times a series from one of
//! the Rogers-Ramanujan-type families, where `F` is the Fock-space
//! character [`fock_character`].

use crate::combinat::{qp_count_series, HighestWeight, ModuleSpec};
use crate::qseries::{fock_character, TruncatedSeries};
use crate::{par, Error, Result};

/// Parameters `(l, s, r)` of the Gordon-Andrews-Bressoud identity with
/// modulus `2l + s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrrParams {
    l: u32,
    s: u32,
    r: u32,
}

impl GrrParams {
    pub fn new(l: u32, s: u32, r: u32) -> Result<Self> {
        if l < 2 {
            return Err(Error::InvalidParams(format!("l = {l}, need l >= 2")));
        }
        if s > 1 {
            return Err(Error::InvalidParams(format!("s = {s}, need s in {{0, 1}}")));
        }
        // r = l leaves the linear term empty; that is an identity only for
        // odd modulus (for s = 0 it is the k0 = k1 case, which needs a
        // numerator product)
        let r_max = if s == 1 { l } else { l - 1 };
        if r < 1 || r > r_max {
            return Err(Error::InvalidParams(format!(
                "r = {r}, need 1 <= r <= {r_max} for s = {s}"
            )));
        }
        Ok(Self { l, s, r })
    }

    pub fn l(self) -> u32 {
        self.l
    }

    pub fn s(self) -> u32 {
        self.s
    }

    pub fn r(self) -> u32 {
        self.r
    }

    pub fn modulus(self) -> u32 {
        2 * self.l + self.s
    }

    /// All triples with `l` in the given range, `s` in `{0, 1}` and
    /// `1 <= r <= l - 1`.
    pub fn family(l_range: std::ops::RangeInclusive<u32>) -> Vec<Self> {
        let mut out = Vec::new();
        for l in l_range {
            for s in 0..=1 {
                for r in 1..l {
                    out.extend(Self::new(l, s, r));
                }
            }
        }
        out
    }
}

impl std::fmt::Display for GrrParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "l={},s={},r={}", self.l, self.s, self.r)
    }
}

/// `prod_{n >= 1, n mod m not in excluded} (1 - q^n)^{-1}`.
fn residue_product(modulus: u32, excluded: &[u32], order: usize) -> TruncatedSeries {
    let m = modulus as usize;
    let allowed = (1..=order).filter(|n| !excluded.contains(&((n % m) as u32)));
    TruncatedSeries::inv_product(order, allowed).expect("exponents start at 1")
}

/// Product side: parts `n ≢ 0, ±r (mod 2l+s)`.
pub fn grr_product(p: GrrParams, order: usize) -> TruncatedSeries {
    let m = p.modulus();
    residue_product(m, &[0, p.r % m, (m - p.r) % m], order)
}

/// Shape of a multivariate fermionic sum
///
/// ```text
/// sum_{n_1..n_v >= 0} q^{N_1^2 + .. + N_v^2 + N_a + .. + N_v}
///     / ((q)_{n_1} ⋯ (q)_{n_{v-1}} (q^b)_{n_v})
/// ```
///
/// with `N_j = n_j + .. + n_v`, `v = variables`, `a = linear_from` (no
/// linear term when `a > v`) and `b = last_step`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FermionicSum {
    pub variables: u32,
    pub linear_from: u32,
    pub last_step: usize,
}

impl FermionicSum {
    /// Truncated expansion. A tuple can only contribute below `q^order` when
    /// `sum N_j^2 <= order`, since the linear term is nonnegative; the walk
    /// over `N_1 >= N_2 >= ..` is cut there.
    pub fn expand(self, order: usize) -> TruncatedSeries {
        let mut tuples = Vec::new();
        partial_sum_sequences(
            self.variables,
            order as u64,
            u32::MAX,
            &mut Vec::new(),
            &mut tuples,
        );
        par::map_reduce(
            tuples,
            || TruncatedSeries::zero(order),
            |big_n| self.term(&big_n, order),
            |mut a, b| {
                a.add_assign(&b).expect("same order");
                a
            },
        )
    }

    // big_n = (N_1, .., N_k) with trailing zero N's omitted
    fn term(self, big_n: &[u32], order: usize) -> TruncatedSeries {
        let v = self.variables as usize;
        let at = |j: usize| -> u64 { big_n.get(j - 1).copied().map_or(0, u64::from) };
        let mut exponent: u64 = (1..=v).map(|j| at(j) * at(j)).sum();
        if self.linear_from >= 1 {
            exponent += (self.linear_from as usize..=v).map(at).sum::<u64>();
        }
        let mut term = TruncatedSeries::monomial(exponent as usize, order);
        if exponent as usize > order {
            return term;
        }
        for j in 1..=v {
            let n_j = (at(j) - at(j + 1)) as usize;
            let step = if j == v { self.last_step } else { 1 };
            term.apply_poch_inv(step, n_j).expect("positive step");
        }
        term
    }
}

// every nonincreasing sequence of positive N's (at most `slots` long) with
// sum of squares within budget, including the empty one
fn partial_sum_sequences(
    slots: u32,
    budget: u64,
    upper: u32,
    cur: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    out.push(cur.clone());
    if slots == 0 {
        return;
    }
    let mut n = 1u32;
    while n <= upper && u64::from(n) * u64::from(n) <= budget {
        cur.push(n);
        partial_sum_sequences(slots - 1, budget - u64::from(n) * u64::from(n), n, cur, out);
        cur.pop();
        n += 1;
    }
}

/// Sum side of the Gordon-Andrews-Bressoud identity:
/// `l - 1` variables, linear term from `N_r`, last factor `(q^{2-s})_{n_{l-1}}`.
pub fn grr_sum(p: GrrParams, order: usize) -> TruncatedSeries {
    FermionicSum {
        variables: p.l - 1,
        linear_from: p.r,
        last_step: (2 - p.s) as usize,
    }
    .expand(order)
}

/// [`grr_sum`], compared against [`grr_product`] before returning.
pub fn grr_sum_checked(p: GrrParams, order: usize) -> Result<TruncatedSeries> {
    let sum = grr_sum(p, order);
    cross_check(&sum, &grr_product(p, order), format!("grr({p})"))?;
    Ok(sum)
}

fn cross_check(a: &TruncatedSeries, b: &TruncatedSeries, label: String) -> Result<()> {
    match a.coeffs().iter().zip(b.coeffs()).position(|(x, y)| x != y) {
        None => Ok(()),
        Some(index) => Err(Error::CrossCheck { label, index }),
    }
}

/// Principally specialized character of a Verma module,
/// `F * prod_{n>=1} (1 - q^n)^{-1}`.
pub fn verma_char(order: usize) -> TruncatedSeries {
    let mut s = fock_character(order);
    for n in 1..=order {
        s.apply_inv_one_minus(n).expect("positive");
    }
    s
}

/// Which of the three Rogers-Ramanujan-type families governs `L(Λ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityFamily {
    /// odd level
    Andrews,
    /// even level, `k0 != k1`
    Bressoud,
    /// `k0 == k1`
    BressoudEqual,
}

pub fn identity_family(w: HighestWeight) -> IdentityFamily {
    if w.level() % 2 == 1 {
        IdentityFamily::Andrews
    } else if w.k0() != w.k1() {
        IdentityFamily::Bressoud
    } else {
        IdentityFamily::BressoudEqual
    }
}

/// Weyl-Kac principal product: residues are taken mod `k + 2`.
pub fn standard_char_product(w: HighestWeight, order: usize) -> TruncatedSeries {
    let m = w.level() + 2;
    let a = w.k0() + 1;
    let inner = if w.k0() != w.k1() {
        residue_product(m, &[0, a % m, (m - a) % m], order)
    } else {
        let mut s = residue_product(m, &[0, a % m], order);
        for n in (a as usize..=order).step_by(m as usize) {
            s.apply_one_minus(n).expect("positive");
        }
        s
    };
    fock_character(order).mul(&inner).expect("same order")
}

/// The fermionic sum attached to `w` (without the factor `F`).
pub fn standard_sum_shape(w: HighestWeight) -> FermionicSum {
    let variables = w.max_charge();
    match identity_family(w) {
        IdentityFamily::Andrews => FermionicSum {
            variables,
            linear_from: w.i(),
            last_step: 1,
        },
        IdentityFamily::Bressoud => FermionicSum {
            variables,
            linear_from: w.i(),
            last_step: 2,
        },
        IdentityFamily::BressoudEqual => FermionicSum {
            variables,
            // i = k/2 + 1 lies past the last variable: no linear term
            linear_from: variables + 1,
            last_step: 2,
        },
    }
}

pub fn standard_char_sum(w: HighestWeight, order: usize) -> TruncatedSeries {
    let sum = standard_sum_shape(w).expand(order);
    fock_character(order).mul(&sum).expect("same order")
}

/// [`standard_char_sum`], compared against [`standard_char_product`] before
/// returning.
pub fn standard_char_sum_checked(w: HighestWeight, order: usize) -> Result<TruncatedSeries> {
    let sum = standard_char_sum(w, order);
    cross_check(
        &sum,
        &standard_char_product(w, order),
        format!("standard{w}"),
    )?;
    Ok(sum)
}

/// Character counted from the basis: quasi-particle parts times `F`.
pub fn standard_char_enumerated(w: HighestWeight, order: usize) -> TruncatedSeries {
    qp_count_series(ModuleSpec::Standard(w), order)
        .mul(&fock_character(order))
        .expect("same order")
}

/// Verma character counted from the quasi-particle basis.
pub fn verma_char_enumerated(order: usize) -> TruncatedSeries {
    qp_count_series(ModuleSpec::Verma, order)
        .mul(&fock_character(order))
        .expect("same order")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::partitions_with_parts_in;
    use num_bigint::BigInt;

    fn w(k0: u32, k1: u32) -> HighestWeight {
        HighestWeight::new(k0, k1).unwrap()
    }

    fn coeff(s: &TruncatedSeries, n: usize) -> i64 {
        s.coeffs()[n].clone().try_into().unwrap()
    }

    #[test]
    fn grr_params_validation() {
        assert!(GrrParams::new(1, 1, 1).is_err());
        assert!(GrrParams::new(2, 2, 1).is_err());
        assert!(GrrParams::new(3, 0, 3).is_err());
        assert!(GrrParams::new(3, 1, 3).is_ok());
        assert!(GrrParams::new(3, 1, 4).is_err());
        assert!(GrrParams::new(3, 0, 0).is_err());
        assert_eq!(GrrParams::new(3, 1, 2).unwrap().modulus(), 7);
        // l = 2..5: 2 * (1 + 2 + 3 + 4)
        assert_eq!(GrrParams::family(2..=5).len(), 20);
    }

    #[test]
    fn rogers_ramanujan_product() {
        let p = GrrParams::new(2, 1, 2).unwrap();
        let s = grr_product(p, 10);
        assert_eq!(
            s,
            TruncatedSeries::from_i64s(&[1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6]).unwrap()
        );
        assert_eq!(s, partitions_with_parts_in(&[1, 4], 5, 10).unwrap());
        let p = GrrParams::new(2, 1, 1).unwrap();
        assert_eq!(coeff(&grr_product(p, 10), 4), 1);
        for p in GrrParams::family(2..=5) {
            assert_eq!(coeff(&grr_product(p, 5), 0), 1);
            assert_eq!(coeff(&grr_sum(p, 5), 0), 1);
        }
    }

    #[test]
    fn rogers_ramanujan_sum() {
        let p = GrrParams::new(2, 1, 1).unwrap();
        assert_eq!(coeff(&grr_sum(p, 10), 2), 1);
        let p = GrrParams::new(2, 1, 2).unwrap();
        assert_eq!(grr_sum(p, 100), grr_product(p, 100));
        // r = l with even modulus is not an identity, hence rejected
        let bad = FermionicSum {
            variables: 1,
            linear_from: 2,
            last_step: 2,
        }
        .expand(20);
        assert_ne!(bad, residue_product(4, &[0, 2], 20));
        assert!(grr_sum_checked(p, 60).is_ok());
    }

    #[test]
    fn verma_spot_values() {
        let v = verma_char(3);
        assert_eq!(v, TruncatedSeries::from_i64s(&[1, 2, 4, 8]).unwrap());
    }

    #[test]
    fn level_one_is_the_fock_space() {
        let one = w(1, 0);
        assert_eq!(standard_char_product(one, 40), fock_character(40));
        assert_eq!(standard_char_sum(one, 40), fock_character(40));
        assert_eq!(standard_char_enumerated(one, 40), fock_character(40));
        assert_eq!(coeff(&standard_char_product(one, 6), 3), 2);
    }

    #[test]
    fn level_three_vacuum_matches_grr() {
        let grr = GrrParams::new(2, 1, 1).unwrap();
        let expect = grr_product(grr, 40).mul(&fock_character(40)).unwrap();
        assert_eq!(standard_char_product(w(3, 0), 40), expect);
        assert_eq!(standard_char_sum(w(3, 0), 40), expect);
    }

    #[test]
    fn level_three_mixed_weight() {
        // w = (2,1): i = 2 > [k/2] = 1, so no linear term
        let shape = standard_sum_shape(w(2, 1));
        assert_eq!(
            shape,
            FermionicSum {
                variables: 1,
                linear_from: 2,
                last_step: 1
            }
        );
        assert_eq!(coeff(&standard_char_enumerated(w(2, 1), 10), 2), 3);
    }

    #[test]
    fn equal_weights_use_numerator() {
        for k0 in 1..=3 {
            let x = w(k0, k0);
            assert_eq!(identity_family(x), IdentityFamily::BressoudEqual);
            let order = 60;
            let product = standard_char_product(x, order);
            assert_eq!(product, standard_char_enumerated(x, order), "{x}");
            assert_eq!(product, standard_char_sum(x, order), "{x}");
        }
    }

    #[test]
    fn families_dispatch() {
        assert_eq!(identity_family(w(4, 1)), IdentityFamily::Andrews);
        assert_eq!(identity_family(w(4, 2)), IdentityFamily::Bressoud);
        assert_eq!(identity_family(w(0, 2)), IdentityFamily::Bressoud);
    }

    #[test]
    fn checked_sums_report_disagreement() {
        let p = GrrParams::new(3, 0, 1).unwrap();
        assert!(grr_sum_checked(p, 40).is_ok());
        assert!(standard_char_sum_checked(w(4, 2), 40).is_ok());
        let bad = TruncatedSeries::one(3);
        let good = TruncatedSeries::from_i64s(&[1, 0, 1, 0]).unwrap();
        assert_eq!(
            cross_check(&bad, &good, "x".into()),
            Err(Error::CrossCheck {
                label: "x".into(),
                index: 2
            })
        );
    }

    #[test]
    fn sum_truncation_keeps_high_terms_exact() {
        // a single term whose quadratic part is within the order but whose
        // linear part pushes it beyond must vanish, not wrap
        let shape = FermionicSum {
            variables: 1,
            linear_from: 1,
            last_step: 1,
        };
        let s = shape.expand(4);
        // q^{n^2+n}/(q)_n: n=0 -> 1, n=1 -> q^2/(1-q)
        assert_eq!(s, TruncatedSeries::from_i64s(&[1, 0, 1, 1, 1]).unwrap());
        assert_eq!(s.coeffs()[0], BigInt::from(1));
    }
}
