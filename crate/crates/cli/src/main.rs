use std::process::ExitCode;
use std::str::FromStr;

use betamatch::algebra::real::roots_in;
use betamatch::kneading::{
    alpha_from_pair, count_blocks_with_ceiling, entropy, kneading_determinant, smallest_determinant_root,
};
use betamatch::matching::{
    matching_interval, matching_time, scan_fiber, sft_approximate, IntervalMethod, ScanConfig,
};
use betamatch::scalar::ratio;
use betamatch::structure::{is_linearizable, linearize};
use betamatch::{Error, IntPoly, KneadingPair, Rational};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "betamatch", version, about = "Matching and kneading invariants of x -> beta x + alpha mod 1")]
struct Cli {
    /// Bits of precision for printed decimals.
    #[arg(long, global = true, default_value_t = 128)]
    precision_bits: u32,
    /// Orbit depth for expansions and fiber scans.
    #[arg(long, global = true, default_value_t = 64)]
    depth: usize,
    /// Longest block length accepted by `blocks`.
    #[arg(long, global = true, default_value_t = 24)]
    block_ceiling: usize,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
    Text,
    Svg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Inequalities,
    Extension,
    Both,
}

impl From<Method> for IntervalMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Inequalities => IntervalMethod::Inequalities,
            Method::Extension => IntervalMethod::Extension,
            Method::Both => IntervalMethod::Both,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a kneading pair, e.g. `validate "(100) (01)"`.
    Validate { pair: Vec<String> },
    /// Recover beta, alpha and the entropy from a pair.
    Params {
        pair: Vec<String>,
        /// Replace a non-linearizable pair by its linearization first.
        #[arg(long)]
        linearize: bool,
    },
    /// Matching time and matching interval of a pair.
    Matching {
        pair: Vec<String>,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Periodic approximation on the same fiber with the same matching.
    Approx {
        pair: Vec<String>,
        /// Tolerance as a decimal (`1e-3`, `0.001`) or a fraction (`1/1000`).
        #[arg(long)]
        eps: String,
    },
    /// Matching intervals on the fiber of the largest root in (1, 2).
    Scan {
        #[arg(long)]
        beta_poly: String,
        #[arg(long, default_value_t = 2000)]
        grid: usize,
        /// Longest period of the periodic pairs searched for singletons.
        #[arg(long, default_value_t = 10)]
        max_period: usize,
    },
    /// Number of admissible blocks of each length.
    Blocks {
        pair: Vec<String>,
        #[arg(long, default_value_t = 16)]
        max_len: usize,
    },
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    error: Error,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { code: 1, error }
    }
}

fn with_code(code: u8) -> impl Fn(Error) -> Failure {
    move |error| Failure { code, error }
}

fn parse_pair(tokens: &[String]) -> Result<KneadingPair, Failure> {
    Ok(tokens.join(" ").parse::<KneadingPair>()?)
}

/// Exact rational from `a/b`, a decimal, or a decimal with exponent.
fn parse_rational(s: &str) -> Result<Rational, Error> {
    let bad = |pos: usize| Error::Parse {
        pos,
        msg: format!("expected a decimal or fraction, found {s:?}"),
    };
    if s.contains('/') {
        return Rational::from_str(s).map_err(|_| bad(0));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad(i + 1))?),
        None => (s, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits = format!("{int}{frac}");
    let numer = BigInt::from_str(&digits).map_err(|_| bad(0))?;
    let ten = BigInt::from(10);
    let scale = exp - frac.len() as i32;
    let pow = Pow::pow(&ten, scale.unsigned_abs());
    Ok(if scale >= 0 {
        Rational::from_integer(numer * pow)
    } else {
        Rational::new(numer, pow)
    })
}

struct Ctx {
    digits: usize,
    output: Output,
}

fn emit(ctx: &Ctx, json: &Value, text: impl FnOnce() -> String, csv: Option<String>, svg: Option<String>) {
    let out = match ctx.output {
        Output::Json => serde_json::to_string_pretty(json).expect("json values serialize"),
        Output::Text => text(),
        Output::Csv => csv.unwrap_or_else(text),
        Output::Svg => svg.unwrap_or_else(text),
    };
    println!("{}", out.trim_end());
}

fn cmd_validate(ctx: &Ctx, tokens: &[String]) -> Result<u8, Failure> {
    let pair = parse_pair(tokens)?;
    let class = is_linearizable(&pair);
    let mut json = class.to_json();
    json["pair"] = json!(pair.to_string());
    emit(
        ctx,
        &json,
        || {
            format!(
                "pair {pair}\nadmissible {}\nlinearizable {}\nshift class {}",
                class.admissible, class.linearizable, class.shift_class
            )
        },
        None,
        None,
    );
    Ok(if class.linearizable { 0 } else { 2 })
}

fn cmd_params(ctx: &Ctx, tokens: &[String], lin: bool) -> Result<u8, Failure> {
    let input = parse_pair(tokens)?;
    let pair = if lin { linearize(&input) } else { input.clone() };
    let det = kneading_determinant(&pair);
    let t0 = smallest_determinant_root(&pair).map_err(with_code(3))?;
    let beta = t0.reciprocal().map_err(with_code(3))?;
    if !is_linearizable(&pair).linearizable {
        return Err(Error::InvalidPair(format!("{pair} is not linearizable; pass --linearize")).into());
    }
    let alpha = alpha_from_pair(&pair, &t0)?;
    let h = entropy(&pair)?;
    let json = json!({
        "input": input.to_string(),
        "pair": pair.to_string(),
        "determinant_numerator": det.numerator.to_string(),
        "determinant_reduced": det.reduced.to_string(),
        "denominator_exponent": det.denominator_exponent,
        "t0": t0.to_json(ctx.digits),
        "beta": beta.to_json(ctx.digits),
        "alpha": alpha.to_json(ctx.digits),
        "entropy": h.to_decimal(ctx.digits),
    });
    emit(
        ctx,
        &json,
        || {
            format!(
                "pair {pair}\nbeta {}\nalpha {}\nentropy {}",
                beta.to_decimal(ctx.digits),
                alpha.to_decimal(ctx.digits),
                h.to_decimal(ctx.digits)
            )
        },
        None,
        None,
    );
    Ok(0)
}

fn cmd_matching(ctx: &Ctx, tokens: &[String], method: Method) -> Result<u8, Failure> {
    let pair = parse_pair(tokens)?;
    let report = matching_time(&pair)?;
    let interval = if report.has_matching {
        Some(matching_interval(&pair, method.into())?)
    } else {
        None
    };
    let json = json!({
        "pair": pair.to_string(),
        "report": report.to_json(),
        "interval": interval.as_ref().map(|i| i.to_json(ctx.digits)),
    });
    let csv = interval.as_ref().map(|i| {
        format!(
            "alpha_lo,alpha_hi,left_closed,right_closed,matching_time\n{},{},{},{},{}",
            i.left.value.to_algebraic().to_decimal(ctx.digits),
            i.right.value.to_algebraic().to_decimal(ctx.digits),
            i.left.closed,
            i.right.closed,
            i.time()
        )
    });
    emit(
        ctx,
        &json,
        || match &interval {
            None => format!("pair {pair}\nno matching"),
            Some(i) => format!(
                "pair {pair}\nmatching time {}\ninterval {}\nleft {} {}\nright {} {}",
                report.time(),
                i.to_string_with(ctx.digits.min(12)),
                i.left_pair,
                i.left_class,
                i.right_pair,
                i.right_class
            ),
        },
        csv,
        None,
    );
    Ok(0)
}

fn cmd_approx(ctx: &Ctx, tokens: &[String], eps: &str) -> Result<u8, Failure> {
    let pair = parse_pair(tokens)?;
    let eps = parse_rational(eps)?;
    if eps <= Rational::zero() {
        return Err(Error::Domain("eps must be positive".into()).into());
    }
    let a = sft_approximate(&pair, &eps).map_err(|e| match e {
        Error::NoMatching => Failure { code: 4, error: e },
        e => e.into(),
    })?;
    let json = a.to_json(ctx.digits);
    emit(
        ctx,
        &json,
        || {
            format!(
                "input {}\noutput {}\nk {}\nrejected {:?}\nsame matching {}\nwithin bound {}",
                a.input,
                a.output,
                a.k.map_or("none".into(), |k| k.to_string()),
                a.rejected,
                a.same_matching,
                a.gap_within_bound()
            )
        },
        None,
        None,
    );
    Ok(0)
}

fn cmd_scan(ctx: &Ctx, poly: &str, grid: usize, max_period: usize, depth: usize) -> Result<u8, Failure> {
    let p: IntPoly = poly.parse()?;
    let beta = roots_in(&p, &ratio(1, 1), &ratio(2, 1))
        .pop()
        .ok_or_else(|| Error::Domain(format!("{p} has no root in (1, 2)")))?;
    let cfg = ScanConfig {
        grid,
        depth,
        max_period,
        ..ScanConfig::default()
    };
    let scan = scan_fiber(&beta, &cfg)?;
    let json = scan.to_json(ctx.digits);
    let text_digits = ctx.digits.min(12);
    emit(
        ctx,
        &json,
        || {
            let mut out = format!(
                "beta {}\nobstructed {}\nmultinacci {}\nintervals {}\n",
                beta.to_decimal(text_digits),
                scan.obstruction == betamatch::matching::Obstruction::Obstructed,
                scan.multinacci,
                scan.intervals.len()
            );
            for i in &scan.intervals {
                out.push_str(&format!("{}\n", i.to_string_with(text_digits)));
            }
            out.push_str(&format!("unresolved runs {}", scan.unresolved.len()));
            out
        },
        Some(scan.to_csv(ctx.digits)),
        Some(scan.to_svg()),
    );
    Ok(0)
}

fn cmd_blocks(ctx: &Ctx, tokens: &[String], max_len: usize, ceiling: usize) -> Result<u8, Failure> {
    let pair = parse_pair(tokens)?;
    let counts = (1..=max_len)
        .map(|n| count_blocks_with_ceiling(&pair, n, ceiling))
        .collect::<Result<Vec<u64>, Error>>()?;
    let json = json!({ "pair": pair.to_string(), "counts": counts });
    let rows = || {
        let mut out = String::from("n,count\n");
        for (n, c) in counts.iter().enumerate() {
            out.push_str(&format!("{},{c}\n", n + 1));
        }
        out
    };
    emit(ctx, &json, rows, Some(rows()), None);
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let ctx = Ctx {
        digits: ((cli.precision_bits as f64) * std::f64::consts::LOG10_2).floor().max(1.0) as usize,
        output: cli.output,
    };
    if cli.depth == 0 || cli.block_ceiling == 0 || cli.precision_bits == 0 {
        return Err(Error::Domain("depth, block ceiling and precision must be positive".into()).into());
    }
    match &cli.command {
        Command::Validate { pair } => cmd_validate(&ctx, pair),
        Command::Params { pair, linearize } => cmd_params(&ctx, pair, *linearize),
        Command::Matching { pair, method } => cmd_matching(&ctx, pair, *method),
        Command::Approx { pair, eps } => cmd_approx(&ctx, pair, eps),
        Command::Scan {
            beta_poly,
            grid,
            max_period,
        } => cmd_scan(&ctx, beta_poly, *grid, *max_period, cli.depth),
        Command::Blocks { pair, max_len } => cmd_blocks(&ctx, pair, *max_len, cli.block_ceiling),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.error);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_parse_exactly() {
        assert_eq!(parse_rational("1e-2").unwrap(), ratio(1, 100));
        assert_eq!(parse_rational("0.001").unwrap(), ratio(1, 1000));
        assert_eq!(parse_rational("1/3").unwrap(), ratio(1, 3));
        assert_eq!(parse_rational("2.5E1").unwrap(), ratio(25, 1));
        assert!(parse_rational("abc").is_err());
    }
}
