use std::fmt::Write as _;
use std::io::{self, Write as _};
use std::time::Instant;

use qpchar::characters::{
    standard_char_enumerated, standard_char_product, standard_char_sum, verma_char,
    verma_char_enumerated, GrrParams,
};
use qpchar::combinat::{basis_enumerate, count_by_exponent, HighestWeight, ModuleSpec};
use qpchar::verify::{
    compare, run_suite, Check, SuiteConfig, VerificationReport, DEFAULT_LISTING_DEPTH,
};
use qpchar::TruncatedSeries;
use rand::Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::cache::Cache;
use crate::{CharArgs, Cli, Command, Format, ListArgs, Method, Selector, Target, VerifyArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qpchar::Error),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

type Result<T> = std::result::Result<T, CliError>;

/// Runs the command. `Ok(false)` means some comparison failed.
pub fn run(cli: &Cli) -> Result<bool> {
    let cache = match &cli.cache_dir {
        Some(dir) => Some(Cache::open(dir)?),
        None => None,
    };
    let mut out = Vec::new();
    let ok = match &cli.command {
        Command::Char(args) => char_cmd(cli, cache.as_ref(), args, &mut out)?,
        Command::List(args) => list_cmd(cli, args, &mut out)?,
        Command::Verify(args) => verify_cmd(cli, args, &mut out)?,
    };
    let mut stdout = io::stdout().lock();
    stdout.write_all(&out)?;
    stdout.flush()?;
    Ok(ok)
}

fn weight(k0: Option<u32>, k1: Option<u32>) -> Result<Option<HighestWeight>> {
    match (k0, k1) {
        (Some(a), Some(b)) => Ok(Some(HighestWeight::new(a, b)?)),
        (None, None) => Ok(None),
        _ => Err(CliError::Usage("give both --k0 and --k1".into())),
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Product => "product",
        Method::Sum => "sum",
        Method::Enumerate => "enumerate",
        Method::All => "all",
    }
}

fn compute(w: Option<HighestWeight>, method: Method, order: usize) -> Result<TruncatedSeries> {
    Ok(match (w, method) {
        (None, Method::Product) => verma_char(order),
        (None, Method::Enumerate) => verma_char_enumerated(order),
        (None, _) => {
            return Err(CliError::Usage(
                "the Verma character has no sum side; use product or enumerate".into(),
            ))
        }
        (Some(w), Method::Product) => standard_char_product(w, order),
        (Some(w), Method::Sum) => standard_char_sum(w, order),
        (Some(w), Method::Enumerate) => standard_char_enumerated(w, order),
        (Some(_), Method::All) => unreachable!("expanded by the caller"),
    })
}

// an independent route for the coefficient recheck
fn oracle_route(method: Method) -> Method {
    match method {
        Method::Product => Method::Enumerate,
        _ => Method::Product,
    }
}

// Recomputes one random coefficient by another route.
fn recheck(s: &TruncatedSeries, w: Option<HighestWeight>, method: Method) -> Result<bool> {
    let n = rand::rng().random_range(0..=s.order());
    let other = oracle_route(method);
    let fresh = compute(w, other, n)?;
    let ok = fresh.coeffs()[n] == s.coeffs()[n];
    eprintln!(
        "oracle: q^{n} coefficient via {}: {}",
        method_name(other),
        if ok { "ok" } else { "MISMATCH" }
    );
    Ok(ok)
}

// (series, passed the oracle recheck)
fn obtain(
    cli: &Cli,
    cache: Option<&Cache>,
    w: Option<HighestWeight>,
    label: &str,
    method: Method,
) -> Result<(TruncatedSeries, bool)> {
    let order = cli.order;
    let key = format!("char/{label}/{}/{order}", method_name(method));
    if let Some(s) = cache.and_then(|c| c.load(&key, order)) {
        if !cli.oracle || recheck(&s, w, method)? {
            return Ok((s, true));
        }
        eprintln!("warning: cached {key} failed the recheck; recomputing");
        if let Some(c) = cache {
            c.remove(&key);
        }
    }
    let s = compute(w, method, order)?;
    let ok = !cli.oracle || recheck(&s, w, method)?;
    if ok {
        if let Some(c) = cache {
            c.store(&key, &s)?;
        }
    }
    Ok((s, ok))
}

fn series_csv(out: &mut Vec<u8>, rows: &[(Option<&str>, &TruncatedSeries)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.iter().any(|(route, _)| route.is_some()) {
        w.write_record(["route", "n", "coefficient"])?;
    } else {
        w.write_record(["n", "coefficient"])?;
    }
    for (route, s) in rows {
        for (n, c) in s.coeffs().iter().enumerate() {
            let (n, c) = (n.to_string(), c.to_string());
            match route {
                Some(r) => w.write_record([*r, &n, &c])?,
                None => w.write_record([&n, &c])?,
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn char_cmd(cli: &Cli, cache: Option<&Cache>, args: &CharArgs, out: &mut Vec<u8>) -> Result<bool> {
    let start = Instant::now();
    let w = weight(args.k0, args.k1)?;
    let label = match (args.target, w) {
        (Target::Verma, None) => "verma".to_string(),
        (Target::Verma, Some(_)) => {
            return Err(CliError::Usage("--k0/--k1 do not apply to verma".into()))
        }
        (Target::Standard, Some(w)) => format!("standard{w}"),
        (Target::Standard, None) => {
            return Err(CliError::Usage("standard needs --k0 and --k1".into()))
        }
    };

    let methods: Vec<Method> = match (args.method, w) {
        (Method::All, None) => vec![Method::Product, Method::Enumerate],
        (Method::All, Some(_)) => vec![Method::Product, Method::Sum, Method::Enumerate],
        (m, _) => vec![m],
    };
    let mut ok = true;
    let mut routes = Vec::new();
    for m in methods {
        let (s, passed) = obtain(cli, cache, w, &label, m)?;
        ok &= passed;
        routes.push((m, s));
    }

    let mut reports = Vec::new();
    if args.method == Method::All {
        let (_, base) = &routes[0];
        for (m, s) in &routes[1..] {
            let r = compare(base, s, format!("{label} product={}", method_name(*m)))?;
            ok &= r.is_match();
            reports.push(r);
        }
    }

    match (cli.format, args.method) {
        (Format::Text, Method::All) => {
            let mut text = String::new();
            for (m, s) in &routes {
                writeln!(text, "{:<9} {s}", method_name(*m)).expect("string");
            }
            for r in &reports {
                writeln!(text, "{r}").expect("string");
            }
            out.extend_from_slice(text.as_bytes());
        }
        (Format::Text, _) => writeln!(out, "{}", routes[0].1)?,
        (Format::Json, Method::All) => {
            let mut by_route = serde_json::Map::new();
            for (m, s) in &routes {
                by_route.insert(method_name(*m).into(), serde_json::to_value(s)?);
            }
            let doc = json!({
                "target": label,
                "routes": by_route,
                "reports": reports.iter().map(|r| r.to_json(cli.timings)).collect::<Vec<_>>(),
            });
            writeln!(out, "{doc}")?;
        }
        (Format::Json, m) => {
            let doc = json!({
                "target": label,
                "method": method_name(m),
                "series": serde_json::to_value(&routes[0].1)?,
            });
            writeln!(out, "{doc}")?;
        }
        (Format::Csv, Method::All) => {
            let rows: Vec<_> = routes
                .iter()
                .map(|(m, s)| (Some(method_name(*m)), s))
                .collect();
            series_csv(out, &rows)?;
            for r in &reports {
                eprintln!("{r}");
            }
        }
        (Format::Csv, _) => series_csv(out, &[(None, &routes[0].1)])?,
    }
    if cli.timings {
        eprintln!("elapsed: {:.1} ms", start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(ok)
}

fn list_cmd(cli: &Cli, args: &ListArgs, out: &mut Vec<u8>) -> Result<bool> {
    let start = Instant::now();
    let (spec, label) = match (args.verma, weight(args.k0, args.k1)?) {
        (true, _) => (ModuleSpec::Verma, "verma".to_string()),
        (false, Some(w)) => (ModuleSpec::Standard(w), format!("standard{w}")),
        (false, None) => return Err(CliError::Usage("give --verma or --k0 and --k1".into())),
    };
    let d = args.max_exponent;
    if d > args.limit {
        return Err(CliError::Usage(format!(
            "--max-exponent {d} is above the listing limit {}; raise --limit if you mean it, \
             or use `char` for counts only",
            args.limit
        )));
    }
    let listed = basis_enumerate(spec, d);
    let counts = count_by_exponent(&listed, d as usize);

    let mut ok = true;
    if cli.oracle {
        let expected = match spec {
            ModuleSpec::Verma => verma_char(d as usize),
            ModuleSpec::Standard(w) => standard_char_product(w, d as usize),
        };
        let r = compare(&counts, &expected, format!("{label} listing=character"))?;
        eprintln!("{r}");
        ok = r.is_match();
    }

    match cli.format {
        Format::Text => {
            let mut text = String::new();
            for m in &listed {
                writeln!(text, "{} {m}", m.exponent()).expect("string");
            }
            writeln!(text, "counts: {counts}").expect("string");
            out.extend_from_slice(text.as_bytes());
        }
        Format::Json => {
            let monomials: Vec<Value> = listed
                .iter()
                .map(|m| {
                    let mut v = json!({ "exponent": m.exponent(), "text": m.to_string() });
                    if let (Value::Object(obj), Value::Object(parts)) =
                        (&mut v, serde_json::to_value(m)?)
                    {
                        obj.extend(parts);
                    }
                    Ok(v)
                })
                .collect::<Result<_>>()?;
            let counts: Vec<String> = counts.coeffs().iter().map(ToString::to_string).collect();
            let doc = json!({
                "target": label,
                "max_exponent": d,
                "counts": counts,
                "monomials": monomials,
            });
            writeln!(out, "{doc}")?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["exponent", "monomial"])?;
            for m in &listed {
                w.write_record([m.exponent().to_string(), m.to_string()])?;
            }
            w.flush()?;
        }
    }
    if cli.timings {
        eprintln!("elapsed: {:.1} ms", start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(ok)
}

fn suite_for(cli: &Cli, args: &VerifyArgs) -> Result<SuiteConfig> {
    let mut cfg = SuiteConfig::empty(cli.order);
    let depth = DEFAULT_LISTING_DEPTH.min(cli.order);
    let w = weight(args.k0, args.k1)?;
    let uses_weight = matches!(args.selector, Selector::Module | Selector::Complement);
    if w.is_some() && !uses_weight {
        return Err(CliError::Usage(
            "--k0/--k1 only apply to module and complement".into(),
        ));
    }
    let grr_args = [args.l, args.s, args.r];
    if args.selector != Selector::Grr && (args.s.is_some() || args.r.is_some()) {
        return Err(CliError::Usage("--s/--r only apply to grr".into()));
    }
    if args.l.is_some() && !matches!(args.selector, Selector::Grr | Selector::Section8) {
        return Err(CliError::Usage(
            "--l only applies to grr and section8".into(),
        ));
    }

    match args.selector {
        Selector::Grr => match grr_args {
            [Some(l), Some(s), Some(r)] => {
                cfg.checks.push(Check::Grr(GrrParams::new(l, s, r)?));
                if cli.oracle {
                    cfg.checks.push(Check::RogersRamanujanOracle);
                }
            }
            [None, None, None] => {
                cfg.add_grr_family(2..=5);
            }
            _ => return Err(CliError::Usage("give all of --l, --s, --r or none".into())),
        },
        Selector::Module => match w {
            Some(w) => {
                cfg.add_module(w);
                if cli.oracle {
                    cfg.checks
                        .push(Check::QpEnumeration(ModuleSpec::Standard(w), depth));
                }
            }
            None => {
                cfg.add_modules(args.max_level).add_verma();
                if cli.oracle {
                    cfg.add_listing_oracles(args.max_level, depth);
                }
            }
        },
        Selector::Complement => match w {
            Some(w) => cfg.checks.push(Check::Complement(w)),
            None => {
                cfg.add_complements(args.max_level);
            }
        },
        Selector::Section8 => match args.l {
            Some(l) => cfg.checks.push(Check::Section8(l)),
            None => {
                cfg.add_section8(1..=4);
            }
        },
        Selector::Liealg => {
            cfg.add_liealg(args.window);
        }
        Selector::All => {
            cfg.add_grr_family(2..=5)
                .add_modules(args.max_level)
                .add_verma()
                .add_complements(args.max_level)
                .add_section8(1..=4)
                .add_liealg(args.window)
                .add_listing_oracles(args.max_level, depth);
        }
    }
    Ok(cfg)
}

fn verify_cmd(cli: &Cli, args: &VerifyArgs, out: &mut Vec<u8>) -> Result<bool> {
    let cfg = suite_for(cli, args)?;
    let reports = run_suite(&cfg)?;
    let mismatches = reports.iter().filter(|r| !r.is_match()).count();

    match cli.format {
        Format::Text => {
            let mut text = String::new();
            for r in &reports {
                write!(text, "{r}").expect("string");
                if cli.timings {
                    write!(text, " ({:.1} ms)", r.elapsed.as_secs_f64() * 1e3).expect("string");
                }
                text.push('\n');
            }
            writeln!(text, "{} checks, {mismatches} mismatches", reports.len()).expect("string");
            out.extend_from_slice(text.as_bytes());
        }
        Format::Json => {
            let doc = json!({
                "order": cli.order,
                "checks": reports.len(),
                "mismatches": mismatches,
                "reports": reports.iter().map(|r| r.to_json(cli.timings)).collect::<Vec<_>>(),
            });
            writeln!(out, "{doc}")?;
        }
        Format::Csv => reports_csv(out, &reports, cli.timings)?,
    }
    Ok(mismatches == 0)
}

fn reports_csv(out: &mut Vec<u8>, reports: &[VerificationReport], timings: bool) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec![
        "label",
        "status",
        "order",
        "first_mismatch",
        "lhs",
        "rhs",
        "note",
    ];
    if timings {
        header.push("ms");
    }
    w.write_record(&header)?;
    let opt = |v: Option<String>| v.unwrap_or_default();
    for r in reports {
        let mut row = vec![
            r.label.clone(),
            r.status.as_str().to_string(),
            r.order.to_string(),
            opt(r.first_mismatch.map(|n| n.to_string())),
            opt(r.lhs.as_ref().map(ToString::to_string)),
            opt(r.rhs.as_ref().map(ToString::to_string)),
            opt(r.note.clone()),
        ];
        if timings {
            row.push(format!("{:.3}", r.elapsed.as_secs_f64() * 1e3));
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
