//! Command-line front-end for `hypcyc`.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when the tuple is
//! not realized by a cyclic polygon (including the horocyclic limit for
//! commands that need a finite radius).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypcyc::embed::to_json;
use hypcyc::{
    angles_with_tol, classify, defect_lower_bound_horocyclic, defect_with_tol,
    embed_cyclic_with_tol, embed_horocyclic, emit, jacobian_with_tol, radius_closed,
    radius_with_tol, Error, Format, Jacobian, Model, PolygonClass, SideLengths, DEFAULT_TOL,
};
use serde_json::{json, Value};

pub const TOL_ENV: &str = "HYPCYC_TOL";
const MIN_TOL: f64 = 1e-15;
const MAX_TOL: f64 = 1e-6;
const FD_STEP: f64 = 1e-5;

#[derive(Parser, Debug)]
#[command(
    name = "hypcyc",
    version,
    about = "Cyclic and horocyclic hyperbolic polygons from their side lengths"
)]
struct Cli {
    /// Classification tolerance; overrides HYPCYC_TOL.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Machine-readable output with round-trip decimals.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct SidesArg {
    /// Comma-separated side lengths, e.g. 1,1,1.
    #[arg(long, allow_hyphen_values = true)]
    sides: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Auto,
    Closed,
    Bisect,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelArg {
    Disk,
    Uhp,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Which region the tuple lies in.
    Classify(SidesArg),
    /// Circumradius J.
    Radius {
        #[command(flatten)]
        sides: SidesArg,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
    },
    /// Central, base and vertex angles.
    Angles(SidesArg),
    /// Radius-R defect.
    Defect {
        #[command(flatten)]
        sides: SidesArg,
        #[arg(long = "R", short = 'R', allow_hyphen_values = true)]
        r: f64,
    },
    /// Partial derivatives with respect to the sides.
    Jacobian {
        #[command(flatten)]
        sides: SidesArg,
        #[arg(long = "R", short = 'R', allow_hyphen_values = true)]
        r: f64,
        /// Compare against central differences with step 1e-5.
        #[arg(long)]
        check_fd: bool,
    },
    /// Vertex coordinates in a model of the hyperbolic plane.
    Embed {
        #[command(flatten)]
        sides: SidesArg,
        #[arg(long, value_enum, default_value = "disk")]
        model: ModelArg,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Defect bounds.
    Bounds {
        #[command(subcommand)]
        kind: BoundKind,
    },
    /// Vary one side over a range and tabulate class, radius and defect.
    Sweep {
        /// Side lengths; the entry at --vary is replaced.
        #[arg(long, allow_hyphen_values = true)]
        template: String,
        #[arg(long)]
        vary: usize,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[arg(
            long = "R",
            short = 'R',
            default_value_t = 0.0,
            allow_hyphen_values = true
        )]
        r: f64,
    },
    /// Classify a file of tuples, one comma-separated tuple per line.
    Batch {
        file: PathBuf,
        #[arg(
            long = "R",
            short = 'R',
            default_value_t = 0.0,
            allow_hyphen_values = true
        )]
        r: f64,
    },
}

#[derive(Subcommand, Debug)]
enum BoundKind {
    /// Lower bound over non-centered tuples with the given shorter sides.
    Horocyclic {
        #[arg(long, allow_hyphen_values = true)]
        lower: String,
        #[arg(
            long = "R",
            short = 'R',
            default_value_t = 0.0,
            allow_hyphen_values = true
        )]
        r: f64,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure {
            code: 1,
            msg: msg.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotRealizable | Error::Horocyclic | Error::NumericallyHorocyclic(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 1,
            msg: e.to_string(),
        }
    }
}

type Out<'a> = &'a mut dyn Write;

/// Formats like C's `%.*g`: `digits` significant digits, trailing zeros dropped.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mant = trim_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mant}e{sign}{:02}", exp.abs());
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn num(x: f64) -> String {
    fmt_sig(x, 15)
}

fn row(v: &[f64]) -> String {
    v.iter().map(|&x| num(x)).collect::<Vec<_>>().join(" ")
}

fn parse_list(s: &str) -> Result<Vec<f64>, Failure> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .map_err(|_| Failure::usage(format!("not a number: {t:?}")))
        })
        .collect()
}

fn parse_sides(s: &str) -> Result<SideLengths, Failure> {
    SideLengths::new(parse_list(s)?).map_err(|e| Failure::usage(e.to_string()))
}

fn check_r(r: f64) -> Result<f64, Failure> {
    if r.is_finite() && r >= 0.0 {
        Ok(r)
    } else {
        Err(Failure::usage(format!(
            "R must be finite and nonnegative, got {r}"
        )))
    }
}

fn resolve_tol(flag: Option<f64>) -> Result<f64, Failure> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| Failure::usage(format!("{TOL_ENV} is not a number: {s:?}")))?,
            Err(_) => DEFAULT_TOL,
        },
    };
    if !(MIN_TOL..=MAX_TOL).contains(&tol) {
        return Err(Failure::usage(format!(
            "tolerance {tol} outside [{MIN_TOL:e}, {MAX_TOL:e}]"
        )));
    }
    Ok(tol)
}

fn class_json(c: PolygonClass) -> Value {
    json!({ "tag": c.tag(), "index": c.long_index() })
}

fn print_json(out: Out, v: &Value) -> Result<(), Failure> {
    writeln!(out, "{v}")?;
    Ok(())
}

/// Parses `args` (including the program name), writes results to `out` and
/// diagnostics to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn dispatch(cli: &Cli, out: Out, err: Out) -> Result<i32, Failure> {
    let tol = resolve_tol(cli.tol)?;
    let js = cli.json;
    match &cli.command {
        Command::Classify(s) => {
            let d = parse_sides(&s.sides)?;
            let c = classify(&d, tol)?;
            if js {
                print_json(out, &json!({ "class": class_json(c) }))?;
            } else {
                writeln!(out, "{}", c)?;
            }
            Ok(if c == PolygonClass::NotRealizable {
                2
            } else {
                0
            })
        }
        Command::Radius { sides, method } => {
            let d = parse_sides(&sides.sides)?;
            radius_cmd(&d, *method, tol, js, out)
        }
        Command::Angles(s) => {
            let d = parse_sides(&s.sides)?;
            let a = angles_with_tol(&d, tol)?;
            if js {
                print_json(
                    out,
                    &json!({ "class": class_json(a.class), "J": a.j, "alpha": a.alpha, "beta": a.beta, "nu": a.nu }),
                )?;
            } else {
                writeln!(out, "class {}", a.class)?;
                writeln!(out, "J {}", a.j.map_or("inf".into(), num))?;
                writeln!(out, "alpha {}", row(&a.alpha))?;
                writeln!(out, "beta {}", row(&a.beta))?;
                writeln!(out, "nu {}", row(&a.nu))?;
            }
            Ok(0)
        }
        Command::Defect { sides, r } => {
            let d = parse_sides(&sides.sides)?;
            let v = defect_with_tol(&d, check_r(*r)?, tol)?;
            if js {
                print_json(out, &json!({ "defect": v }))?;
            } else {
                writeln!(out, "{}", num(v))?;
            }
            Ok(0)
        }
        Command::Jacobian { sides, r, check_fd } => {
            let d = parse_sides(&sides.sides)?;
            let r = check_r(*r)?;
            let jac = jacobian_with_tol(&d, r, tol)?;
            let fd = if *check_fd {
                Some(fd_check(&d, r, tol, &jac)?)
            } else {
                None
            };
            if js {
                let mut v = json!({
                    "class": class_json(jac.class), "J": jac.j, "R": jac.r, "dJ": jac.d_j,
                    "dAlpha": jac.d_alpha, "dBeta": jac.d_beta, "dNu": jac.d_nu, "dDefect": jac.d_defect,
                });
                if let Some(e) = fd {
                    v["fdMaxRelErr"] = json!(e);
                }
                print_json(out, &v)?;
            } else {
                writeln!(out, "class {}", jac.class)?;
                writeln!(out, "J {}", num(jac.j))?;
                writeln!(out, "dJ {}", row(&jac.d_j))?;
                writeln!(out, "dDefect {}", row(&jac.d_defect))?;
                for (name, m) in [
                    ("dAlpha", &jac.d_alpha),
                    ("dBeta", &jac.d_beta),
                    ("dNu", &jac.d_nu),
                ] {
                    for (i, r) in m.iter().enumerate() {
                        writeln!(out, "{name}[{i}] {}", row(r))?;
                    }
                }
                if let Some(e) = fd {
                    writeln!(out, "fd-check max-rel-err {}", num(e))?;
                }
            }
            if let (Some(e), Some(_)) = (fd, jac.one_sided.as_ref()) {
                let _ = writeln!(
                    err,
                    "note: boundary tuple, differences straddle the kink (max rel err {})",
                    num(e)
                );
            }
            Ok(0)
        }
        Command::Embed {
            sides,
            model,
            format,
        } => {
            let d = parse_sides(&sides.sides)?;
            let model = match model {
                ModelArg::Disk => Model::Disk,
                ModelArg::Uhp => Model::Uhp,
            };
            let e = match classify(&d, tol)? {
                PolygonClass::Horocyclic(i) => {
                    if model == Model::Disk {
                        let _ = writeln!(
                            err,
                            "note: horocyclic tuples are drawn in the upper half-plane"
                        );
                    }
                    if i != 0 {
                        let _ = writeln!(err, "note: vertices start at the long side d_{i}");
                    }
                    embed_horocyclic(&d.rest_after(i))?
                }
                _ => embed_cyclic_with_tol(&d, model, tol)?,
            };
            let bytes = match format {
                FormatArg::Json => to_json(&e).into_bytes(),
                FormatArg::Svg => emit(&e, Format::Svg),
            };
            out.write_all(&bytes)?;
            if !bytes.ends_with(b"\n") {
                writeln!(out)?;
            }
            Ok(0)
        }
        Command::Bounds {
            kind: BoundKind::Horocyclic { lower, r },
        } => {
            let lower = parse_list(lower)?;
            let v = defect_lower_bound_horocyclic(&lower, check_r(*r)?)?;
            if js {
                print_json(out, &json!({ "bound": v }))?;
            } else {
                writeln!(out, "{}", num(v))?;
            }
            Ok(0)
        }
        Command::Sweep {
            template,
            vary,
            from,
            to,
            steps,
            r,
        } => {
            let base = parse_list(template)?;
            if *vary >= base.len() {
                return Err(Failure::usage(format!(
                    "--vary {vary} out of range for {} sides",
                    base.len()
                )));
            }
            if *steps < 1 {
                return Err(Failure::usage("--steps must be at least 1"));
            }
            let r = check_r(*r)?;
            let mut rows = Vec::new();
            if !js {
                writeln!(out, "d{vary}\tclass\tJ\tdefect")?;
            }
            for k in 0..=*steps {
                let x = from + (to - from) * k as f64 / *steps as f64;
                let mut v = base.clone();
                v[*vary] = x;
                let d = SideLengths::new(v).map_err(|e| Failure::usage(e.to_string()))?;
                let p = evaluate(&d, r, tol)?;
                if js {
                    rows.push(
                        json!({ "value": x, "class": class_json(p.0), "J": p.1, "defect": p.2 }),
                    );
                } else {
                    writeln!(out, "{}\t{}\t{}\t{}", num(x), p.0, opt(p.1), opt(p.2))?;
                }
            }
            if js {
                print_json(out, &Value::Array(rows))?;
            }
            Ok(0)
        }
        Command::Batch { file, r } => {
            let r = check_r(*r)?;
            let text = std::fs::read_to_string(file)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", file.display())))?;
            let mut rows = Vec::new();
            if !js {
                writeln!(out, "line\tclass\tJ\tdefect")?;
            }
            for (no, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let d = parse_sides(line)
                    .map_err(|f| Failure::usage(format!("line {}: {}", no + 1, f.msg)))?;
                let p = evaluate(&d, r, tol)?;
                if js {
                    rows.push(json!({ "line": no + 1, "sides": d.as_slice(), "class": class_json(p.0), "J": p.1, "defect": p.2 }));
                } else {
                    writeln!(out, "{}\t{}\t{}\t{}", no + 1, p.0, opt(p.1), opt(p.2))?;
                }
            }
            if js {
                print_json(out, &Value::Array(rows))?;
            }
            Ok(0)
        }
    }
}

fn opt(x: Option<f64>) -> String {
    x.map_or("-".into(), num)
}

/// Class, radius and defect, with `None` where the value does not exist.
fn evaluate(
    d: &SideLengths,
    r: f64,
    tol: f64,
) -> Result<(PolygonClass, Option<f64>, Option<f64>), Failure> {
    let c = classify(d, tol)?;
    match c {
        PolygonClass::NotRealizable => Ok((c, None, None)),
        PolygonClass::Horocyclic(_) => Ok((c, None, Some(defect_with_tol(d, r, tol)?))),
        _ => match radius_with_tol(d, tol) {
            Ok(rr) => Ok((c, Some(rr.j), Some(defect_with_tol(d, r, tol)?))),
            Err(Error::NumericallyHorocyclic(_)) => {
                Ok((c, None, Some(defect_with_tol(d, r, tol)?)))
            }
            Err(e) => Err(e.into()),
        },
    }
}

fn radius_cmd(
    d: &SideLengths,
    method: Method,
    tol: f64,
    js: bool,
    out: Out,
) -> Result<i32, Failure> {
    let class = classify(d, tol)?;
    match class {
        PolygonClass::NotRealizable => return Err(Error::NotRealizable.into()),
        PolygonClass::Horocyclic(_) => return Err(Error::Horocyclic.into()),
        _ => {}
    }
    let (j, detail) = match method {
        Method::Closed => {
            if !(3..=4).contains(&d.len()) {
                return Err(Failure::usage(format!(
                    "--method closed needs 3 or 4 sides, got {}",
                    d.len()
                )));
            }
            (radius_closed(d)?, None)
        }
        Method::Auto | Method::Bisect => {
            let r = radius_with_tol(d, tol)?;
            (r.j, Some(r))
        }
    };
    if js {
        let mut v = json!({ "class": class_json(class), "J": j });
        if let Some(r) = &detail {
            v["equation"] = json!(r.equation_used.as_str());
            v["residual"] = json!(r.residual);
            v["iterations"] = json!(r.iterations);
        }
        print_json(out, &v)?;
    } else {
        writeln!(out, "{}", num(j))?;
    }
    Ok(0)
}

/// Largest relative deviation of the analytic partials from central
/// differences, measured against `max(|fd|, 1e-3)`.
fn fd_check(d: &SideLengths, r: f64, tol: f64, jac: &Jacobian) -> Result<f64, Failure> {
    let n = d.len();
    let mut worst: f64 = 0.0;
    let mut cmp = |an: f64, fd: f64| worst = worst.max((an - fd).abs() / fd.abs().max(1e-3));
    for k in 0..n {
        let bump = |h: f64| -> Result<SideLengths, Failure> {
            let mut v = d.as_slice().to_vec();
            v[k] += h;
            SideLengths::new(v).map_err(|e| Failure::usage(e.to_string()))
        };
        let (p, m) = (bump(FD_STEP)?, bump(-FD_STEP)?);
        let (ap, am) = (angles_with_tol(&p, tol)?, angles_with_tol(&m, tol)?);
        let c = |a: f64, b: f64| (a - b) / (2.0 * FD_STEP);
        cmp(
            jac.d_j[k],
            c(ap.j.unwrap_or(f64::NAN), am.j.unwrap_or(f64::NAN)),
        );
        cmp(
            jac.d_defect[k],
            c(defect_with_tol(&p, r, tol)?, defect_with_tol(&m, r, tol)?),
        );
        for i in 0..n {
            cmp(jac.d_alpha[i][k], c(ap.alpha[i], am.alpha[i]));
            cmp(jac.d_beta[i][k], c(ap.beta[i], am.beta[i]));
            cmp(jac.d_nu[i][k], c(ap.nu[i], am.nu[i]));
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig_digits_match_printf_g() {
        assert_eq!(fmt_sig(1.0, 15), "1");
        assert_eq!(fmt_sig(0.1, 15), "0.1");
        assert_eq!(fmt_sig(2.0 / 3.0, 15), "0.666666666666667");
        assert_eq!(fmt_sig(123456.789, 4), "1.235e+05");
        assert_eq!(fmt_sig(1.5e-7, 15), "1.5e-07");
        assert_eq!(fmt_sig(-2.5, 15), "-2.5");
        assert_eq!(fmt_sig(0.0001, 15), "0.0001");
    }

    #[test]
    fn list_parsing() {
        assert_eq!(parse_list("1, 2,3.5").unwrap(), vec![1.0, 2.0, 3.5]);
        assert!(parse_list("1,x").is_err());
        assert!(parse_sides("1,2").is_err());
        assert!(parse_sides("1,-2,1").is_err());
    }

    #[test]
    fn error_codes() {
        assert_eq!(Failure::from(Error::NotRealizable).code, 2);
        assert_eq!(Failure::from(Error::Horocyclic).code, 2);
        assert_eq!(Failure::from(Error::Precondition("x".into())).code, 1);
    }
}
