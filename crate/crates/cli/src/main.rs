//! Command-line front end for the zipcone library.
//!
//! Every verb prints one canonical document (sorted JSON keys, or CSV for
//! `slice`). Exit status: 0 success, 1 usage, 2 guard exceeded, 3 a computed
//! statement that should hold failed.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use zipcone::catalog::{self, ConeName, NamedCone};
use zipcone::cone::{self, ConeError, Weight};
use zipcone::fpoly::MinorFraction;
use zipcone::rootdata::SymplecticRootDatum;
use zipcone::sections::{self, SectionError, SectionName};
use zipcone::weyl::{self, WeylError};

const SCHEMA: &str = "zipcone/1";
const THREADS_VAR: &str = "ZIPCONE_THREADS";

#[derive(Parser)]
#[command(name = "zipcone", version, about = "Weight cones and zip sections for Sp(2n) in exact arithmetic")]
struct Cli {
    /// Write the document here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Generators,
    Halfspaces,
}

#[derive(Clone, Copy, ValueEnum)]
enum Report {
    Dims,
    Thminter,
}

#[derive(Subcommand)]
enum Command {
    /// Print a named cone as generators or inequalities
    Cone {
        #[arg(long)]
        name: ConeName,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value = "generators")]
        emit: Emit,
    },
    /// Dump the simple roots, Levi type and positive roots
    Rootdata {
        #[arg(long)]
        n: usize,
    },
    /// Build a catalog section and verify its weight and invariance
    VerifySection {
        #[arg(long)]
        name: SectionName,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        p: u64,
        /// Include the polynomial itself
        #[arg(long)]
        body: bool,
    },
    /// The matrix zAφ(z)⁻¹ with its cleared entries
    Gamma {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
    },
    /// Dimension of the weight-λ sections
    H0 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long, default_value_t = sections::DEFAULT_MONOMIAL_CAP)]
        cap: usize,
    },
    /// Dimensions attached to the induced module V(λ)
    Vlambda {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long, value_enum, default_value = "dims")]
        report: Report,
    },
    /// Compare the section oracle with a catalog cone over a box of weights
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        /// Per-coordinate range lo..hi
        #[arg(long = "box", default_value = "-8..8", allow_hyphen_values = true)]
        range: String,
        #[arg(long)]
        compare: ConeName,
        #[arg(long, default_value_t = sections::DEFAULT_MONOMIAL_CAP)]
        cap: usize,
    },
    /// Cross-section of a rank-3 cone by the plane a1 + a2 + a3 = -level, as CSV
    Slice {
        #[arg(long)]
        cone: ConeName,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        level: u64,
        /// Decimal places in the coordinates
        #[arg(long, default_value_t = 6)]
        digits: u32,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Guard(String),
    Theorem(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Guard(_) => 2,
            Failure::Theorem(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Guard(m) | Failure::Theorem(m) => m,
        }
    }
}

impl From<ConeError> for Failure {
    fn from(e: ConeError) -> Self {
        match e {
            ConeError::RankGuard(_) | ConeError::UndecidedAtBound { .. } => Failure::Guard(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<SectionError> for Failure {
    fn from(e: SectionError) -> Self {
        if e.is_guard() {
            Failure::Guard(e.to_string())
        } else if e.is_theorem_violation() {
            Failure::Theorem(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<WeylError> for Failure {
    fn from(e: WeylError) -> Self {
        if e.is_guard() {
            Failure::Guard(e.to_string())
        } else if e.is_theorem_violation() {
            Failure::Theorem(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type Res<T> = Result<T, Failure>;

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn check_p(p: u64) -> Res<()> {
    if is_prime(p) && p < 1 << 16 {
        Ok(())
    } else {
        Err(Failure::Usage(format!("p = {p} is not a supported prime")))
    }
}

fn check_n(n: usize) -> Res<()> {
    if n >= 1 {
        Ok(())
    } else {
        Err(Failure::Usage("n must be at least 1".into()))
    }
}

fn parse_weight(s: &str, n: usize) -> Res<Weight> {
    let coords: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Failure::Usage(format!("bad weight coordinate '{t}'"))))
        .collect::<Res<_>>()?;
    if coords.len() != n {
        return Err(Failure::Usage(format!("weight {s} has {} coordinates, expected {n}", coords.len())));
    }
    Ok(Weight::new(coords))
}

fn parse_range(s: &str) -> Res<(i64, i64)> {
    let bad = || Failure::Usage(format!("box '{s}' is not of the form lo..hi"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn int(b: &BigInt) -> Value {
    match i64::try_from(b) {
        Ok(x) => json!(x),
        Err(_) => json!(b.to_string()),
    }
}

fn weight_json(w: &Weight) -> Value {
    Value::Array(w.0.iter().map(int).collect())
}

fn rows_json(rows: &[Vec<BigInt>]) -> Value {
    Value::Array(rows.iter().map(|r| Value::Array(r.iter().map(int).collect())).collect())
}

fn document(kind: &str, body: Value) -> Value {
    let mut v = body;
    v["schema"] = json!(SCHEMA);
    v["kind"] = json!(kind);
    v
}

fn rank_for(name: ConeName, n: usize) -> usize {
    name.fixed_rank().unwrap_or(n)
}

fn run_cone(name: ConeName, n: usize, p: u64, emit: Emit) -> Res<Value> {
    let n = rank_for(name, n);
    let c = catalog::build(name, n, p);
    let mut body = json!({ "name": name.label(), "rank": n, "p": p });
    match emit {
        Emit::Generators => {
            let g = c.to_generators()?;
            body["generators"] = Value::Array(g.generators.iter().map(weight_json).collect());
        }
        Emit::Halfspaces => {
            let h = c.to_halfspaces()?;
            body["inequalities"] = rows_json(&h.inequalities);
        }
    }
    Ok(document("cone", body))
}

fn run_rootdata(n: usize) -> Value {
    let d = SymplecticRootDatum::split(n);
    let simple: Vec<Value> = d.simple.iter().map(|r| json!({ "root": weight_json(&r.root), "coroot": weight_json(&r.coroot) })).collect();
    document(
        "rootdata",
        json!({
            "n": n,
            "simple": simple,
            "levi_type": d.levi_type,
            "positive_roots": d.positive_roots.iter().map(weight_json).collect::<Vec<_>>(),
            "sigma": d.sigma,
        }),
    )
}

fn run_verify(name: SectionName, n: usize, p: u64, with_body: bool) -> Res<Value> {
    let s = sections::catalog_section(name, n, p)?;
    let mut body = json!({
        "name": name.label(),
        "n": s.n,
        "p": p,
        "weight": weight_json(&s.weight),
        "terms": s.body.len(),
        "degree": s.body.total_degree(),
        "verified": true,
    });
    if with_body {
        body["body"] = s.body.to_json();
    }
    Ok(document("section", body))
}

fn fraction_text(f: &MinorFraction) -> String {
    let den: Vec<String> = f
        .den
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(k, &e)| if e == 1 { format!("Δ{}", k + 1) } else { format!("Δ{}^{e}", k + 1) })
        .collect();
    if den.is_empty() {
        format!("{:?}", f.num)
    } else {
        format!("({:?}) / {}", f.num, den.join("·"))
    }
}

fn run_gamma(n: usize, p: u64) -> Res<Value> {
    let g = sections::gamma_matrix(n, p)?;
    let mut entries = Vec::new();
    for r in 1..=n {
        for s in 1..=n + 1 - r {
            let e = sections::reduced_entry(&g, r, s);
            let cleared = sections::clear_denominators(&g, r, s)?;
            entries.push(json!({
                "r": r,
                "s": s,
                "entry": fraction_text(&e),
                "denominator": e.den,
                "weight": g.entry_weight(r, s).map(|w| weight_json(&w)),
                "multiplier": sections::clearing_multiplier(n, r, s, p),
                "cleared_weight": weight_json(&cleared.weight),
                "cleared_terms": cleared.body.len(),
            }));
        }
    }
    Ok(document("gamma", json!({ "n": n, "p": p, "entries": entries })))
}

fn run_h0(n: usize, p: u64, lam: &Weight, cap: usize) -> Res<Value> {
    let dim = sections::h0_dimension_capped(lam, n, p, cap)?;
    Ok(document("h0", json!({ "n": n, "p": p, "weight": weight_json(lam), "dim": dim })))
}

fn run_vlambda(lam: &Weight, p: u64, report: Report) -> Res<Value> {
    let body = match report {
        Report::Dims => {
            let r = weyl::module_report(lam, p)?;
            json!({
                "dim": r.dim,
                "dim_leq0": r.dim_leq0,
                "dim_invariants": r.dim_invariants,
                "dim_intersection": r.dim_intersection,
            })
        }
        Report::Thminter => {
            let r = weyl::thminter_check(lam, p)?;
            json!({ "lhs": r.lhs, "rhs": r.rhs, "agree": r.agree })
        }
    };
    let mut body = body;
    body["n"] = json!(lam.rank());
    body["p"] = json!(p);
    body["weight"] = weight_json(lam);
    Ok(document("vlambda", body))
}

/// Monoid membership for cones given only by generators, cone membership otherwise.
fn catalog_member(c: &NamedCone, lam: &Weight) -> Res<bool> {
    match (&c.generators, &c.halfspaces) {
        (Some(g), None) => Ok(cone::monoid_membership(g, lam)?.is_some()),
        _ => Ok(c.contains(lam)?),
    }
}

fn thread_pool() -> Res<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let k: usize = v.parse().map_err(|_| Failure::Usage(format!("{THREADS_VAR}={v} is not a thread count")))?;
        b = b.num_threads(k);
    }
    b.build().map_err(|e| Failure::Usage(e.to_string()))
}

fn run_sweep(n: usize, p: u64, range: (i64, i64), compare: ConeName, cap: usize) -> Res<Value> {
    if let Some(r) = compare.fixed_rank() {
        if r != n {
            return Err(Failure::Usage(format!("{} has rank {r}, not {n}", compare.label())));
        }
    }
    let c = catalog::build(compare, n, p);
    let points = cone::box_points(&vec![range; n]);
    let rows: Vec<Res<(Value, bool)>> = thread_pool()?.install(|| {
        points
            .par_iter()
            .map(|pt| {
                let lam = Weight::new(pt.clone());
                let dim = sections::h0_dimension_capped(&lam, n, p, cap)?;
                let member = catalog_member(&c, &lam)?;
                let agree = (dim > 0) == member;
                Ok((json!({ "weight": weight_json(&lam), "oracle_dim": dim, "catalog_member": member, "agree": agree }), agree))
            })
            .collect()
    });
    let rows: Vec<(Value, bool)> = rows.into_iter().collect::<Res<_>>()?;
    let disagreements = rows.iter().filter(|r| !r.1).count();
    Ok(document(
        "sweep",
        json!({
            "n": n,
            "p": p,
            "box": [range.0, range.1],
            "compare": compare.label(),
            "points": rows.len(),
            "disagreements": disagreements,
            "rows": rows.into_iter().map(|r| r.0).collect::<Vec<_>>(),
        }),
    ))
}

/// x rounded half away from zero to `digits` decimals, printed exactly.
fn decimal(x: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled = x * BigRational::from_integer(scale.clone());
    let r = scaled.abs().round().to_integer();
    let sign = if x.is_negative() && !r.is_zero() { "-" } else { "" };
    let (whole, frac) = (&r / &scale, &r % &scale);
    if digits == 0 {
        return format!("{sign}{whole}");
    }
    format!("{sign}{whole}.{:0>width$}", frac.to_string(), width = digits as usize)
}

fn run_slice(name: ConeName, p: u64, level: u64, digits: u32) -> Res<String> {
    if name.fixed_rank().is_some_and(|r| r != 3) {
        return Err(Failure::Usage(format!("{} is not a rank-3 cone", name.label())));
    }
    if level == 0 {
        return Err(Failure::Usage("level must be positive".into()));
    }
    let c = catalog::build(name, 3, p);
    let rays = match &c.halfspaces {
        Some(h) => {
            if !h.lineality().is_empty() {
                return Err(Failure::Usage(format!("{} is not pointed", name.label())));
            }
            h.extreme_rays()?
        }
        None => cone::halfspaces_of(c.generators.as_ref().expect("catalog cone"))?.extreme_rays()?,
    };
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    let mut pts: Vec<(BigRational, BigRational, Weight)> = Vec::new();
    for r in rays {
        let s = r.sum();
        if !s.is_negative() {
            // parallel to or away from the plane
            continue;
        }
        let t = BigRational::new(BigInt::from(level), -s);
        let l: Vec<BigRational> = r.to_q().iter().map(|x| x * &t).collect();
        let u = (&l[0] - &l[1]) / q(2);
        let v = (&l[0] + &l[1] - &l[2] * q(2)) / q(6);
        pts.push((u, v, r));
    }
    order_counterclockwise(&mut pts);
    let mut out = String::from("u,v,label\n");
    for (u, v, r) in pts {
        out.push_str(&format!("{},{},\"{}\"\n", decimal(&u, digits), decimal(&v, digits), r));
    }
    Ok(out)
}

/// Sort polygon vertices by angle about their centroid, exactly.
fn order_counterclockwise(pts: &mut [(BigRational, BigRational, Weight)]) {
    if pts.is_empty() {
        return;
    }
    let k = BigRational::from_integer(BigInt::from(pts.len()));
    let cu = pts.iter().fold(BigRational::zero(), |a, x| a + &x.0) / &k;
    let cv = pts.iter().fold(BigRational::zero(), |a, x| a + &x.1) / &k;
    let half = |du: &BigRational, dv: &BigRational| u8::from(dv.is_negative() || (dv.is_zero() && du.is_negative()));
    pts.sort_by(|x, y| {
        let (xu, xv) = (&x.0 - &cu, &x.1 - &cv);
        let (yu, yv) = (&y.0 - &cu, &y.1 - &cv);
        half(&xu, &xv).cmp(&half(&yu, &yv)).then_with(|| {
            let cross = &xu * &yv - &xv * &yu;
            BigRational::zero().cmp(&cross)
        })
        .then_with(|| x.2 .0.cmp(&y.2 .0))
    });
}

fn emit(out: &Option<PathBuf>, text: &str) -> Res<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Res<()> {
    let text = match cli.command {
        Command::Cone { name, n, p, emit } => {
            check_n(n)?;
            check_p(p)?;
            json_text(&run_cone(name, n, p, emit)?)
        }
        Command::Rootdata { n } => {
            check_n(n)?;
            json_text(&run_rootdata(n))
        }
        Command::VerifySection { name, n, p, body } => {
            check_n(n)?;
            check_p(p)?;
            json_text(&run_verify(name, n, p, body)?)
        }
        Command::Gamma { n, p } => {
            check_n(n)?;
            check_p(p)?;
            json_text(&run_gamma(n, p)?)
        }
        Command::H0 { n, p, weight, cap } => {
            check_n(n)?;
            check_p(p)?;
            json_text(&run_h0(n, p, &parse_weight(&weight, n)?, cap)?)
        }
        Command::Vlambda { n, p, weight, report } => {
            check_n(n)?;
            check_p(p)?;
            json_text(&run_vlambda(&parse_weight(&weight, n)?, p, report)?)
        }
        Command::Sweep { n, p, range, compare, cap } => {
            check_n(n)?;
            check_p(p)?;
            json_text(&run_sweep(n, p, parse_range(&range)?, compare, cap)?)
        }
        Command::Slice { cone, p, level, digits } => {
            check_p(p)?;
            run_slice(cone, p, level, digits)?
        }
    };
    emit(&cli.out, &text)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("zipcone: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_round_half_away() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(decimal(&r(1, 3), 4), "0.3333");
        assert_eq!(decimal(&r(-2, 3), 2), "-0.67");
        assert_eq!(decimal(&r(5, 2), 0), "3");
        assert_eq!(decimal(&r(-1, 1000), 2), "0.00");
    }

    #[test]
    fn ranges_and_weights() {
        assert_eq!(parse_range("-8..8").unwrap(), (-8, 8));
        assert!(parse_range("3..1").is_err());
        assert_eq!(parse_weight("1,-2", 2).unwrap(), Weight::new([1, -2]));
        assert!(parse_weight("1", 2).is_err());
    }

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(3) && is_prime(5));
        assert!(!is_prime(1) && !is_prime(4));
    }

    #[test]
    fn generators_without_halfspaces_use_the_monoid() {
        let c = catalog::build(ConeName::ZipSp4, 2, 2);
        // (1,-3) lies in the saturated cone but not in the monoid at p = 2
        assert!(c.contains(&Weight::new([1, -3])).unwrap());
        assert!(!catalog_member(&c, &Weight::new([1, -3])).unwrap());
        assert!(catalog_member(&c, &Weight::new([1, -4])).unwrap());
    }
}
