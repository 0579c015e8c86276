//! Coefficient-exact comparison of series and the verification suite.
//!
//! A `match` at order `N` means the two sides agree on `q^0 ..= q^N`. It is
//! evidence for an identity, not a proof of it.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::characters::{
    grr_product, grr_sum, standard_char_enumerated, standard_char_product, standard_char_sum,
    verma_char, verma_char_enumerated, FermionicSum, GrrParams,
};
use crate::combinat::{
    count_by_exponent, partitions_with_parts_in, qp_count_series, qp_enumerate, HighestWeight,
    ModuleSpec,
};
use crate::liealg::{antisymmetry_violations, jacobi_violations};
use crate::qseries::TruncatedSeries;
use crate::{par, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Match => "match",
            Status::Mismatch => "mismatch",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub label: String,
    pub order: usize,
    pub status: Status,
    pub first_mismatch: Option<usize>,
    pub lhs: Option<BigInt>,
    pub rhs: Option<BigInt>,
    pub elapsed: Duration,
    /// Extra facts worth printing, e.g. pinned dimensions.
    pub note: Option<String>,
}

impl VerificationReport {
    pub fn matched(label: impl Into<String>, order: usize) -> Self {
        Self {
            label: label.into(),
            order,
            status: Status::Match,
            first_mismatch: None,
            lhs: None,
            rhs: None,
            elapsed: Duration::ZERO,
            note: None,
        }
    }

    pub fn mismatched(
        label: impl Into<String>,
        order: usize,
        at: usize,
        lhs: BigInt,
        rhs: BigInt,
    ) -> Self {
        debug_assert!(lhs != rhs);
        Self {
            status: Status::Mismatch,
            first_mismatch: Some(at),
            lhs: Some(lhs),
            rhs: Some(rhs),
            ..Self::matched(label, order)
        }
    }

    pub fn is_match(&self) -> bool {
        self.status == Status::Match
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Report as a JSON object. Wall-clock time is only included on request
    /// so that default output is byte-stable.
    pub fn to_json(&self, with_timing: bool) -> Value {
        let mut obj = Map::new();
        obj.insert("label".into(), json!(self.label));
        obj.insert("status".into(), json!(self.status.as_str()));
        obj.insert("order".into(), json!(self.order));
        if let Some(at) = self.first_mismatch {
            obj.insert("first_mismatch".into(), json!(at));
        }
        if let Some(lhs) = &self.lhs {
            obj.insert("lhs".into(), json!(lhs.to_string()));
        }
        if let Some(rhs) = &self.rhs {
            obj.insert("rhs".into(), json!(rhs.to_string()));
        }
        if let Some(note) = &self.note {
            obj.insert("note".into(), json!(note));
        }
        if with_timing {
            obj.insert("ms".into(), json!(self.elapsed.as_secs_f64() * 1e3));
        }
        Value::Object(obj)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            Status::Match => write!(f, "MATCH    {} (order {})", self.label, self.order)?,
            Status::Mismatch => write!(
                f,
                "MISMATCH {} (order {}) at q^{}: {} vs {}",
                self.label,
                self.order,
                self.first_mismatch.unwrap_or_default(),
                self.lhs
                    .as_ref()
                    .map(ToString::to_string)
                    .unwrap_or_default(),
                self.rhs
                    .as_ref()
                    .map(ToString::to_string)
                    .unwrap_or_default(),
            )?,
        }
        if let Some(note) = &self.note {
            write!(f, " [{note}]")?;
        }
        Ok(())
    }
}

/// Exact coefficient-wise comparison; reports the smallest differing index.
pub fn compare(
    a: &TruncatedSeries,
    b: &TruncatedSeries,
    label: impl Into<String>,
) -> Result<VerificationReport> {
    let start = Instant::now();
    if a.order() != b.order() {
        return Err(Error::OrderMismatch {
            left: a.order(),
            right: b.order(),
        });
    }
    let mut report = match a.coeffs().iter().zip(b.coeffs()).position(|(x, y)| x != y) {
        None => VerificationReport::matched(label, a.order()),
        Some(at) => VerificationReport::mismatched(
            label,
            a.order(),
            at,
            a.coeffs()[at].clone(),
            b.coeffs()[at].clone(),
        ),
    };
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Graded dimensions of the maximal submodule, `dim W_n = dim M_n - dim L_n`.
pub fn complement_dims(w: HighestWeight, order: usize) -> TruncatedSeries {
    verma_char(order)
        .sub(&standard_char_enumerated(w, order))
        .expect("same order")
}

/// Checks `dim W_n >= 0` for all `n <= order` and, for `|k0 - k1| = 1`
/// with `l = min(k0, k1)`, that `dim W_{l+1} = 1` and `dim W_{l+2} = 3`.
pub fn complement_check(w: HighestWeight, order: usize) -> VerificationReport {
    let start = Instant::now();
    let label = format!("complement{w}");
    let verma = verma_char(order);
    let standard = standard_char_enumerated(w, order);
    let dims = verma.sub(&standard).expect("same order");

    let mut report = match dims.coeffs().iter().position(|d| *d < BigInt::zero()) {
        Some(n) => VerificationReport::mismatched(
            &label,
            order,
            n,
            verma.coeffs()[n].clone(),
            standard.coeffs()[n].clone(),
        )
        .with_note("negative dim W"),
        None => VerificationReport::matched(&label, order),
    };

    if report.is_match() && w.k0().abs_diff(w.k1()) == 1 {
        let l = w.t() as usize;
        let mut pinned = Vec::new();
        for (n, expect) in [(l + 1, 1), (l + 2, 3)] {
            let Some(got) = dims.coeffs().get(n) else {
                continue;
            };
            pinned.push(format!("dim W_{n}={got}"));
            if *got != BigInt::from(expect) && report.is_match() {
                report = VerificationReport::mismatched(
                    &label,
                    order,
                    n,
                    got.clone(),
                    BigInt::from(expect),
                );
            }
        }
        if !pinned.is_empty() {
            report.note = Some(pinned.join(", "));
        }
    } else if report.is_match() {
        let shown: Vec<String> = dims
            .coeffs()
            .iter()
            .take(4)
            .enumerate()
            .map(|(n, d)| format!("dim W_{n}={d}"))
            .collect();
        report.note = Some(shown.join(", "));
    }
    report.elapsed = start.elapsed();
    report
}

/// `prod_{n ≢ 0, ±(l+2) mod 2l+3} (1-q^n)^{-1}` against
/// `sum q^{N_1^2+..+N_l^2} / ((q)_{n_1}⋯(q)_{n_l})`.
pub fn andrews_section8_check(l: u32, order: usize) -> Result<VerificationReport> {
    if l == 0 {
        return Err(Error::InvalidParams("l must be at least 1".into()));
    }
    let m = 2 * l + 3;
    let excluded = [0, l + 2, m - (l + 2)];
    let product = TruncatedSeries::inv_product(
        order,
        (1..=order).filter(|n| !excluded.contains(&((n % m as usize) as u32))),
    )?;
    let sum = FermionicSum {
        variables: l,
        linear_from: l + 1,
        last_step: 1,
    }
    .expand(order);
    compare(&product, &sum, format!("andrews-closing(l={l})"))
}

/// One independent item of the verification suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    /// product side against sum side of the Gordon-Andrews-Bressoud identity
    Grr(GrrParams),
    /// product side of the first Rogers-Ramanujan identity against a
    /// direct congruence-partition count
    RogersRamanujanOracle,
    ModuleProductSum(HighestWeight),
    ModuleProductEnumerated(HighestWeight),
    VermaCharacter,
    /// backtracking enumeration counts against the counting series, up to
    /// the given exponent
    QpEnumeration(ModuleSpec, usize),
    Complement(HighestWeight),
    Section8(u32),
    Antisymmetry(i64),
    Jacobi(i64),
}

impl Check {
    fn validate(&self) -> Result<()> {
        match self {
            Check::Section8(0) => Err(Error::InvalidParams("section8 needs l >= 1".into())),
            Check::Antisymmetry(w) | Check::Jacobi(w) if *w < 1 => {
                Err(Error::InvalidParams("Lie window must be at least 1".into()))
            }
            _ => Ok(()),
        }
    }

    fn run(&self, order: usize) -> Result<VerificationReport> {
        let start = Instant::now();
        let mut report = match self {
            Check::Grr(p) => compare(
                &grr_product(*p, order),
                &grr_sum(*p, order),
                format!("grr({p})"),
            )?,
            Check::RogersRamanujanOracle => {
                let p = GrrParams::new(2, 1, 2)?;
                compare(
                    &grr_product(p, order),
                    &partitions_with_parts_in(&[1, 4], 5, order)?,
                    "grr(l=2,s=1,r=2) product=congruence-count",
                )?
            }
            Check::ModuleProductSum(w) => compare(
                &standard_char_product(*w, order),
                &standard_char_sum(*w, order),
                format!("module{w} product=sum"),
            )?,
            Check::ModuleProductEnumerated(w) => compare(
                &standard_char_product(*w, order),
                &standard_char_enumerated(*w, order),
                format!("module{w} product=enumerated"),
            )?,
            Check::VermaCharacter => compare(
                &verma_char(order),
                &verma_char_enumerated(order),
                "verma product=enumerated",
            )?,
            Check::QpEnumeration(spec, d) => {
                let listed = qp_enumerate(*spec, *d as u64);
                compare(
                    &count_by_exponent(&listed, *d),
                    &qp_count_series(*spec, *d),
                    format!("qp-enumeration {spec} listing=series"),
                )?
            }
            Check::Complement(w) => complement_check(*w, order),
            Check::Section8(l) => andrews_section8_check(*l, order)?,
            Check::Antisymmetry(window) => {
                let label = format!("liealg antisymmetry |n|<={window}");
                match antisymmetry_violations(*window).first() {
                    None => VerificationReport::matched(label, *window as usize),
                    Some((x, y)) => VerificationReport::mismatched(
                        label,
                        *window as usize,
                        x.degree().unsigned_abs().max(y.degree().unsigned_abs()) as usize,
                        BigInt::from(1),
                        BigInt::from(0),
                    )
                    .with_note(format!("[{x},{y}] != -[{y},{x}]")),
                }
            }
            Check::Jacobi(window) => {
                let label = format!("liealg jacobi |n|<={window}");
                match jacobi_violations(*window).first() {
                    None => VerificationReport::matched(label, *window as usize),
                    Some(v) => {
                        let [x, y, z] = v.triple;
                        let (_, coeff) = v.residue.terms().next().expect("nonzero residue");
                        let reach = [x, y, z]
                            .iter()
                            .map(|e| e.degree().unsigned_abs())
                            .max()
                            .unwrap_or(0);
                        VerificationReport::mismatched(
                            label,
                            *window as usize,
                            reach as usize,
                            BigInt::from(coeff),
                            BigInt::from(0),
                        )
                        .with_note(format!("jacobiator({x},{y},{z}) = {}", v.residue))
                    }
                }
            }
        };
        report.elapsed = start.elapsed();
        Ok(report)
    }
}

/// The checks to run and the truncation order they share.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub order: usize,
    pub checks: Vec<Check>,
    /// Run suite items concurrently (only effective with the `parallel`
    /// feature). Output order is the same either way.
    pub parallel: bool,
}

/// Default exponent bound for listing-based cross-checks.
pub const DEFAULT_LISTING_DEPTH: usize = 25;

impl SuiteConfig {
    pub fn empty(order: usize) -> Self {
        Self {
            order,
            checks: Vec::new(),
            parallel: true,
        }
    }

    /// Every check with default parameter ranges.
    pub fn full(order: usize) -> Self {
        let mut cfg = Self::empty(order);
        cfg.add_grr_family(2..=5);
        cfg.add_modules(7);
        cfg.add_verma();
        cfg.add_complements(7);
        cfg.add_section8(1..=4);
        cfg.add_liealg(8);
        cfg.add_listing_oracles(7, DEFAULT_LISTING_DEPTH.min(order));
        cfg
    }

    pub fn add_grr_family(&mut self, l_range: std::ops::RangeInclusive<u32>) -> &mut Self {
        self.checks.push(Check::RogersRamanujanOracle);
        self.checks
            .extend(GrrParams::family(l_range).into_iter().map(Check::Grr));
        self
    }

    pub fn add_module(&mut self, w: HighestWeight) -> &mut Self {
        self.checks.push(Check::ModuleProductSum(w));
        self.checks.push(Check::ModuleProductEnumerated(w));
        self
    }

    pub fn add_modules(&mut self, max_level: u32) -> &mut Self {
        for w in HighestWeight::all_up_to_level(max_level) {
            self.add_module(w);
        }
        self
    }

    pub fn add_verma(&mut self) -> &mut Self {
        self.checks.push(Check::VermaCharacter);
        self
    }

    pub fn add_complements(&mut self, max_level: u32) -> &mut Self {
        self.checks.extend(
            HighestWeight::all_up_to_level(max_level)
                .into_iter()
                .map(Check::Complement),
        );
        self
    }

    pub fn add_section8(&mut self, l_range: std::ops::RangeInclusive<u32>) -> &mut Self {
        self.checks.extend(l_range.map(Check::Section8));
        self
    }

    pub fn add_liealg(&mut self, window: i64) -> &mut Self {
        self.checks.push(Check::Antisymmetry(window));
        self.checks.push(Check::Jacobi(window));
        self
    }

    pub fn add_listing_oracles(&mut self, max_level: u32, depth: usize) -> &mut Self {
        self.checks
            .push(Check::QpEnumeration(ModuleSpec::Verma, depth));
        self.checks.extend(
            HighestWeight::all_up_to_level(max_level)
                .into_iter()
                .map(|w| Check::QpEnumeration(ModuleSpec::Standard(w), depth)),
        );
        self
    }
}

/// Runs every configured check. Malformed configurations are rejected
/// before anything runs; individual mismatches are reported, not raised.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    for check in &config.checks {
        check.validate()?;
    }
    let order = config.order;
    let results = if config.parallel {
        par::map_collect(config.checks.clone(), |c| c.run(order))
    } else {
        config.checks.iter().map(|c| c.run(order)).collect()
    };
    results.into_iter().collect()
}
