//! Quasi-particle monomials and the partition-like objects that count them.
//!
//! A basis vector of a Verma module `M(Λ)` or a standard module `L(Λ)` is
//!
//! ```text
//! B(i_1)⋯B(i_r) X^{(p_1)}(j_1)⋯X^{(p_s)}(j_s) v_Λ
//! ```
//!
//! with odd `i_1 <= .. <= i_r <= -1`, nondecreasing charges
//! `1 <= p_1 <= .. <= p_s` and degrees `j_l` subject to
//!
//! * `j_s <= -n(p_s)` (last factor),
//! * `j_l <= -n(p_l) - 2 p_l (s - l)` when `p_l < p_{l+1}` (block boundary),
//! * `j_l <= j_{l+1} - 2 p_l` when `p_l = p_{l+1}` (difference condition),
//!
//! where `n(p) = p` for Verma modules and `n(p) = n_Λ(p)` for `L(Λ)`. A
//! standard module additionally caps charges at `[k/2]` and, for even `k`,
//! forces `j ≡ k0 (mod 2)` on charge `k/2`.
//!
//! The "exponent" of a monomial is its negated total degree, so that
//! characters are power series in `q` with nonnegative exponents.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::qseries::TruncatedSeries;
use crate::{par, Error, Result};

/// Highest weight `k0 Λ_0 + k1 Λ_1` of a standard module, level
/// `k = k0 + k1 >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HighestWeight {
    k0: u32,
    k1: u32,
}

impl HighestWeight {
    pub fn new(k0: u32, k1: u32) -> Result<Self> {
        if k0 + k1 == 0 {
            return Err(Error::ZeroLevel);
        }
        Ok(Self { k0, k1 })
    }

    pub fn k0(self) -> u32 {
        self.k0
    }

    pub fn k1(self) -> u32 {
        self.k1
    }

    pub fn level(self) -> u32 {
        self.k0 + self.k1
    }

    /// `t = min{k0, k1}`.
    pub fn t(self) -> u32 {
        self.k0.min(self.k1)
    }

    /// First index carrying a linear term in the fermionic sum, `t + 1`.
    pub fn i(self) -> u32 {
        self.t() + 1
    }

    /// `[k/2]`, the largest charge allowed on `L(Λ)`.
    pub fn max_charge(self) -> u32 {
        self.level() / 2
    }

    /// `n_Λ(p)`: `p` for `p <= t`, `2p - t` above.
    pub fn n_lambda(self, p: u32) -> Result<u32> {
        if p == 0 || p > self.max_charge() {
            return Err(Error::ChargeOutOfRange {
                charge: p,
                max: self.max_charge(),
            });
        }
        Ok(if p <= self.t() { p } else { 2 * p - self.t() })
    }

    /// All weights with `1 <= k0 + k1 <= max_level`, by level then `k0`.
    pub fn all_up_to_level(max_level: u32) -> Vec<Self> {
        (1..=max_level)
            .flat_map(|k| (0..=k).rev().map(move |k0| Self { k0, k1: k - k0 }))
            .collect()
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k0, self.k1)
    }
}

/// Which module's basis conditions apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleSpec {
    Verma,
    Standard(HighestWeight),
}

impl ModuleSpec {
    pub fn max_charge(self) -> Option<u32> {
        match self {
            ModuleSpec::Verma => None,
            ModuleSpec::Standard(w) => Some(w.max_charge()),
        }
    }

    /// The initial-condition shift `n(p)`.
    pub fn initial_bound(self, p: u32) -> Result<u32> {
        match self {
            ModuleSpec::Verma if p >= 1 => Ok(p),
            ModuleSpec::Verma => Err(Error::ChargeOutOfRange {
                charge: p,
                max: u32::MAX,
            }),
            ModuleSpec::Standard(w) => w.n_lambda(p),
        }
    }

    /// `(k/2, k0 mod 2)` when the level is even: degrees of charge `k/2`
    /// must have that residue.
    pub fn parity_rule(self) -> Option<(u32, i64)> {
        match self {
            ModuleSpec::Standard(w) if w.level() % 2 == 0 => {
                Some((w.level() / 2, i64::from(w.k0() % 2)))
            }
            _ => None,
        }
    }

    fn check_charge(self, p: u32) -> Result<()> {
        match self.max_charge() {
            Some(max) if p == 0 || p > max => Err(Error::ChargeOutOfRange { charge: p, max }),
            None if p == 0 => Err(Error::ChargeOutOfRange {
                charge: p,
                max: u32::MAX,
            }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleSpec::Verma => f.write_str("verma"),
            ModuleSpec::Standard(w) => write!(f, "standard{w}"),
        }
    }
}

/// A charge-type stored as multiplicities: `n_p` copies of charge `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ChargeType {
    // mult[p - 1] = n_p; no trailing zeros
    mult: Vec<u32>,
}

impl ChargeType {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_multiplicities(mut mult: Vec<u32>) -> Self {
        while mult.last() == Some(&0) {
            mult.pop();
        }
        Self { mult }
    }

    /// From a nondecreasing tuple of positive charges.
    pub fn from_tuple(charges: &[u32]) -> Result<Self> {
        if charges.contains(&0) {
            return Err(Error::InvalidChargeType("charges must be positive".into()));
        }
        if charges.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidChargeType(format!(
                "{charges:?} is not nondecreasing"
            )));
        }
        let top = charges.last().copied().unwrap_or(0) as usize;
        let mut mult = vec![0; top];
        for &p in charges {
            mult[p as usize - 1] += 1;
        }
        Ok(Self { mult })
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.mult
    }

    /// `n_p`.
    pub fn multiplicity(&self, p: u32) -> u32 {
        if p == 0 {
            return 0;
        }
        self.mult.get(p as usize - 1).copied().unwrap_or(0)
    }

    /// `N_j = n_j + n_{j+1} + ..`, the number of quasi-particles of charge
    /// at least `j`.
    pub fn partial_sum(&self, j: u32) -> u32 {
        let from = (j.max(1) - 1) as usize;
        self.mult.iter().skip(from).sum()
    }

    /// The nondecreasing charge tuple `(p_1, .., p_s)`.
    pub fn tuple(&self) -> Vec<u32> {
        self.mult
            .iter()
            .enumerate()
            .flat_map(|(i, &n)| std::iter::repeat_n(i as u32 + 1, n as usize))
            .collect()
    }

    /// Number of quasi-particles `s`.
    pub fn len(&self) -> usize {
        self.mult.iter().map(|&n| n as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn total_charge(&self) -> u64 {
        self.mult
            .iter()
            .enumerate()
            .map(|(i, &n)| (i as u64 + 1) * u64::from(n))
            .sum()
    }

    pub fn max_charge(&self) -> u32 {
        self.mult.len() as u32
    }

    /// `sum_j N_j^2`, a lower bound for the exponent of every monomial of
    /// this charge-type in all module families.
    pub fn square_sum(&self) -> u64 {
        (1..=self.max_charge())
            .map(|j| u64::from(self.partial_sum(j)).pow(2))
            .sum()
    }
}

impl fmt::Display for ChargeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tuple().iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// One basis vector: a Heisenberg part times a quasi-particle monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct QPMonomial {
    #[serde(rename = "heis")]
    heisenberg: Vec<i64>,
    charges: Vec<u32>,
    degrees: Vec<i64>,
}

impl QPMonomial {
    pub fn new(heisenberg: Vec<i64>, charges: Vec<u32>, degrees: Vec<i64>) -> Result<Self> {
        if charges.len() != degrees.len() {
            return Err(Error::InvalidChargeType(format!(
                "{} charges but {} degrees",
                charges.len(),
                degrees.len()
            )));
        }
        if charges.contains(&0) {
            return Err(Error::InvalidChargeType("charges must be positive".into()));
        }
        Ok(Self {
            heisenberg,
            charges,
            degrees,
        })
    }

    /// Quasi-particle part only.
    pub fn quasi_particles(charges: Vec<u32>, degrees: Vec<i64>) -> Result<Self> {
        Self::new(Vec::new(), charges, degrees)
    }

    pub fn heisenberg(&self) -> &[i64] {
        &self.heisenberg
    }

    pub fn charges(&self) -> &[u32] {
        &self.charges
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn with_heisenberg(&self, heisenberg: Vec<i64>) -> Self {
        Self {
            heisenberg,
            ..self.clone()
        }
    }

    pub fn total_charge(&self) -> u64 {
        self.charges.iter().map(|&p| u64::from(p)).sum()
    }

    /// Negated total degree.
    pub fn exponent(&self) -> i64 {
        -(self.heisenberg.iter().sum::<i64>() + self.degrees.iter().sum::<i64>())
    }

    /// The basis order `≺`: larger total charge first, then charge-type,
    /// degree-type and Heisenberg part each compared reverse
    /// lexicographically. `Less` means `self ≺ other`.
    pub fn cmp_precedence(&self, other: &Self) -> Ordering {
        other
            .total_charge()
            .cmp(&self.total_charge())
            .then_with(|| revlex(&self.charges, &other.charges))
            .then_with(|| revlex(&self.degrees, &other.degrees))
            .then_with(|| revlex(&self.heisenberg, &other.heisenberg))
    }
}

fn revlex<T: Ord>(a: &[T], b: &[T]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// Listing order: exponent ascending, then from the top of `≺` down.
pub fn listing_order(a: &QPMonomial, b: &QPMonomial) -> Ordering {
    a.exponent()
        .cmp(&b.exponent())
        .then_with(|| b.cmp_precedence(a))
}

/// Canonical text, e.g. `B(-3)B(-1) X1(-4)X2(-2)`; the empty monomial is `1`.
impl fmt::Display for QPMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.heisenberg.is_empty() && self.charges.is_empty() {
            return f.write_str("1");
        }
        for i in &self.heisenberg {
            write!(f, "B({i})")?;
        }
        if !self.heisenberg.is_empty() && !self.charges.is_empty() {
            f.write_str(" ")?;
        }
        for (p, j) in self.charges.iter().zip(&self.degrees) {
            write!(f, "X{p}({j})")?;
        }
        Ok(())
    }
}

pub fn n_lambda(w: HighestWeight, p: u32) -> Result<u32> {
    w.n_lambda(p)
}

/// Upper bound on `j_l` (0-based `l`) given `j_{l+1}`, before any parity
/// adjustment.
fn degree_bound(spec: ModuleSpec, charges: &[u32], l: usize, next: i64) -> Result<i64> {
    let s = charges.len();
    let p = charges[l];
    let n = i64::from(spec.initial_bound(p)?);
    let p = i64::from(p);
    Ok(if l + 1 == s {
        -n
    } else if charges[l] < charges[l + 1] {
        -n - 2 * p * (s - 1 - l) as i64
    } else {
        next - 2 * p
    })
}

/// Whether `m` satisfies every basis condition of `spec`.
pub fn check_conditions(m: &QPMonomial, spec: ModuleSpec) -> bool {
    let heis_ok = m.heisenberg.iter().all(|&i| i <= -1 && i % 2 != 0)
        && m.heisenberg.windows(2).all(|w| w[0] <= w[1]);
    if !heis_ok {
        return false;
    }
    let charges = &m.charges;
    if charges.windows(2).any(|w| w[0] > w[1]) {
        return false;
    }
    if charges.iter().any(|&p| spec.check_charge(p).is_err()) {
        return false;
    }
    let s = charges.len();
    for l in 0..s {
        let next = if l + 1 < s { m.degrees[l + 1] } else { 0 };
        match degree_bound(spec, charges, l, next) {
            Ok(ub) if m.degrees[l] <= ub => {}
            _ => return false,
        }
        if let Some((top, residue)) = spec.parity_rule() {
            if charges[l] == top && (m.degrees[l] - residue).rem_euclid(2) != 0 {
                return false;
            }
        }
    }
    true
}

/// The largest admissible degree-type of a charge-type, built right to left.
pub fn minimal_degrees(c: &ChargeType, spec: ModuleSpec) -> Result<Vec<i64>> {
    let charges = c.tuple();
    for &p in &charges {
        spec.check_charge(p)?;
    }
    let mut degrees = vec![0i64; charges.len()];
    let mut next = 0;
    for l in (0..charges.len()).rev() {
        next = degree_bound(spec, &charges, l, next)?;
        degrees[l] = next;
    }
    Ok(degrees)
}

/// Exponent of the maximal admissible degree-type.
pub fn min_exponent(c: &ChargeType, spec: ModuleSpec) -> Result<u64> {
    let degrees = minimal_degrees(c, spec)?;
    Ok((-degrees.iter().sum::<i64>()) as u64)
}

/// Every charge-type whose minimal exponent is at most `budget`, ordered by
/// total charge descending, then reverse-lexicographically.
pub fn enumerate_charge_types(spec: ModuleSpec, budget: u64) -> Vec<ChargeType> {
    let cap = spec.max_charge().unwrap_or(u32::MAX);
    let mut out = Vec::new();
    // walk N_1 >= N_2 >= .. with sum N_j^2 <= budget
    let mut partial: Vec<u32> = Vec::new();
    collect_partial_sums(cap, budget, u32::MAX, &mut partial, &mut |ns| {
        let mult: Vec<u32> = (0..ns.len())
            .map(|j| ns[j] - ns.get(j + 1).copied().unwrap_or(0))
            .collect();
        let c = ChargeType::from_multiplicities(mult);
        if min_exponent(&c, spec).is_ok_and(|e| e <= budget) {
            out.push(c);
        }
    });
    out.sort_by(|a, b| {
        b.total_charge()
            .cmp(&a.total_charge())
            .then_with(|| revlex(&a.tuple(), &b.tuple()))
    });
    out
}

fn collect_partial_sums(
    slots_left: u32,
    budget: u64,
    upper: u32,
    partial: &mut Vec<u32>,
    emit: &mut dyn FnMut(&[u32]),
) {
    emit(partial);
    if slots_left == 0 {
        return;
    }
    let max_here = (budget as f64).sqrt() as u32 + 1;
    for n in 1..=upper.min(max_here) {
        let sq = u64::from(n) * u64::from(n);
        if sq > budget {
            break;
        }
        partial.push(n);
        collect_partial_sums(slots_left - 1, budget - sq, n, partial, emit);
        partial.pop();
    }
}

/// Step of the gap generating function for the equal-charge block `p`:
/// 2 on the parity-restricted top block, 1 otherwise.
fn gap_step(spec: ModuleSpec, p: u32) -> usize {
    match spec.parity_rule() {
        Some((top, _)) if top == p => 2,
        _ => 1,
    }
}

/// Generating function of the quasi-particle parts allowed by `spec`:
/// `sum_c q^{min_exponent(c)} prod_p 1/(q^{step_p})_{n_p}`.
pub fn qp_count_series(spec: ModuleSpec, order: usize) -> TruncatedSeries {
    let types = enumerate_charge_types(spec, order as u64);
    par::map_reduce(
        types,
        || TruncatedSeries::zero(order),
        |c| {
            let e = min_exponent(&c, spec).expect("enumerated types are admissible") as usize;
            let mut term = TruncatedSeries::monomial(e, order);
            for (i, &n) in c.multiplicities().iter().enumerate() {
                let p = i as u32 + 1;
                term.apply_poch_inv(gap_step(spec, p), n as usize)
                    .expect("positive step");
            }
            term
        },
        |mut a, b| {
            a.add_assign(&b).expect("same order");
            a
        },
    )
}

/// Every quasi-particle part with exponent at most `max_exponent`, in
/// listing order.
pub fn qp_enumerate(spec: ModuleSpec, max_exponent: u64) -> Vec<QPMonomial> {
    let types = enumerate_charge_types(spec, max_exponent);
    let mut out: Vec<QPMonomial> = par::map_collect(types, |c| {
        let mut found = Vec::new();
        enumerate_degrees(spec, &c.tuple(), max_exponent as i64, &mut found);
        found
    })
    .into_iter()
    .flatten()
    .collect();
    out.sort_by(listing_order);
    out
}

fn enumerate_degrees(spec: ModuleSpec, charges: &[u32], budget: i64, out: &mut Vec<QPMonomial>) {
    let s = charges.len();
    let mut degrees = vec![0i64; s];
    if s == 0 {
        out.push(QPMonomial::default());
        return;
    }
    descend(spec, charges, s - 1, 0, 0, budget, &mut degrees, out);
}

#[allow(clippy::too_many_arguments)]
fn descend(
    spec: ModuleSpec,
    charges: &[u32],
    l: usize,
    next: i64,
    used: i64,
    budget: i64,
    degrees: &mut [i64],
    out: &mut Vec<QPMonomial>,
) {
    let mut j = degree_bound(spec, charges, l, next).expect("admissible charges");
    let mut step = 1;
    if let Some((top, residue)) = spec.parity_rule() {
        if charges[l] == top {
            if (j - residue).rem_euclid(2) != 0 {
                j -= 1;
            }
            step = 2;
        }
    }
    loop {
        let spent = used - j;
        if spent + rest_minimum(spec, charges, l, j) > budget {
            return;
        }
        degrees[l] = j;
        if l == 0 {
            out.push(QPMonomial {
                heisenberg: Vec::new(),
                charges: charges.to_vec(),
                degrees: degrees.to_vec(),
            });
        } else {
            descend(spec, charges, l - 1, j, spent, budget, degrees, out);
        }
        j -= step;
    }
}

// smallest exponent positions 0..l can contribute once j_l is fixed
fn rest_minimum(spec: ModuleSpec, charges: &[u32], l: usize, j_l: i64) -> i64 {
    let mut next = j_l;
    let mut total = 0;
    for m in (0..l).rev() {
        next = degree_bound(spec, charges, m, next).expect("admissible charges");
        total -= next;
    }
    total
}

/// Bucket counts of monomials by exponent, as a series of the given order.
pub fn count_by_exponent<'a, I>(monomials: I, order: usize) -> TruncatedSeries
where
    I: IntoIterator<Item = &'a QPMonomial>,
{
    let mut counts = vec![0u64; order + 1];
    for m in monomials {
        if let Ok(e) = usize::try_from(m.exponent()) {
            if e <= order {
                counts[e] += 1;
            }
        }
    }
    TruncatedSeries::from_coeffs(counts.into_iter().map(BigInt::from).collect()).expect("nonempty")
}

/// Partitions of `m` into odd parts, as ascending lists of negated parts
/// (`B(i_1)⋯B(i_r)` with `i_1 <= .. <= i_r <= -1`).
pub fn odd_partitions(m: u64) -> Vec<Vec<i64>> {
    fn go(rest: i64, largest: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if rest == 0 {
            out.push(cur.iter().map(|&p| -p).collect());
            return;
        }
        let mut p = largest.min(rest);
        if p % 2 == 0 {
            p -= 1;
        }
        while p >= 1 {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
            p -= 2;
        }
    }
    let mut out = Vec::new();
    go(m as i64, m as i64, &mut Vec::new(), &mut out);
    out
}

/// Full basis vectors (Heisenberg part times quasi-particle part) with
/// exponent at most `max_exponent`, in listing order.
pub fn basis_enumerate(spec: ModuleSpec, max_exponent: u64) -> Vec<QPMonomial> {
    let heis_by_exp: Vec<Vec<Vec<i64>>> = (0..=max_exponent).map(odd_partitions).collect();
    let mut out = Vec::new();
    for qp in qp_enumerate(spec, max_exponent) {
        let e = qp.exponent() as u64;
        for h in heis_by_exp.iter().take((max_exponent - e + 1) as usize) {
            for parts in h {
                out.push(qp.with_heisenberg(parts.clone()));
            }
        }
    }
    out.sort_by(listing_order);
    out
}

/// Number of partitions of each `n <= order` into parts congruent (mod
/// `modulus`) to one of `residues`. Plain dynamic programming over part
/// sizes; does not go through series arithmetic.
pub fn partitions_with_parts_in(
    residues: &[u32],
    modulus: u32,
    order: usize,
) -> Result<TruncatedSeries> {
    if modulus == 0 {
        return Err(Error::InvalidParams("modulus must be at least 1".into()));
    }
    if let Some(r) = residues.iter().find(|&&r| r >= modulus) {
        return Err(Error::InvalidParams(format!(
            "residue {r} not below modulus {modulus}"
        )));
    }
    let mut ways = vec![BigInt::from(0); order + 1];
    ways[0] = BigInt::from(1);
    for part in 1..=order {
        if !residues.contains(&((part % modulus as usize) as u32)) {
            continue;
        }
        for n in part..=order {
            let add = ways[n - part].clone();
            ways[n] += add;
        }
    }
    TruncatedSeries::from_coeffs(ways)
}
