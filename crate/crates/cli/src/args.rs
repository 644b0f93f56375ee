use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

/// Mellin-Barnes integrals of Gamma and zeta products: evaluation,
/// contour integration, residues and an identity verification suite.
#[derive(Debug, Parser)]
#[command(name = "mbzeta", version)]
pub struct Cli {
    /// Output format; text for computations and json for `verify` when omitted.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a special function at one point.
    Eval(EvalArgs),
    /// Integrate an integrand family along the vertical line Re z = c.
    Integrate(IntegrateArgs),
    /// Integrate around a rectangle and compare with the enclosed residues.
    Rect(RectArgs),
    /// List the poles inside a rectangle with closed-form and numerical residues.
    Residues(RectArgs),
    /// Terms of the divergent residue series of the zeta-zeta-Gamma family.
    Tail(TailArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    Gamma,
    #[value(alias = "lngamma")]
    LogGamma,
    Zeta,
    Hurwitz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Γ(z)Γ(s-z)u^{-z}
    #[value(name = "gammapower", alias = "gamma_power")]
    GammaPower,
    /// ζ(z)ζ(s-z)Γ(z)Γ(s-z)
    #[value(name = "zetazeta", alias = "zeta_zeta_gamma")]
    ZetaZeta,
    /// ζ(z)Γ(z)Γ(s-z)(a-1)^{z-s}
    #[value(name = "zetagamma", alias = "zeta_gamma_power")]
    ZetaGamma,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub function: Function,
    /// Argument as "re,im" or a real number.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub s: Complex64,
    /// Hurwitz shift.
    #[arg(long, value_parser = parse_finite, allow_hyphen_values = true)]
    pub a: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub s: Complex64,
    /// Power base for gammapower, in (0, 1].
    #[arg(long, value_parser = parse_finite, allow_hyphen_values = true)]
    pub u: Option<f64>,
    /// Hurwitz shift for zetagamma, at least 2.
    #[arg(long, value_parser = parse_finite, allow_hyphen_values = true)]
    pub a: Option<f64>,
}

#[derive(Debug, Args)]
pub struct IntegrateArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Abscissa of the line.
    #[arg(long, value_parser = parse_finite, allow_hyphen_values = true)]
    pub c: f64,
    /// Absolute tolerance.
    #[arg(long, default_value_t = 1e-10, value_parser = parse_finite)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct RectArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, value_parser = parse_finite, allow_hyphen_values = true)]
    pub right: f64,
    #[arg(long, value_parser = parse_finite, allow_hyphen_values = true)]
    pub left: f64,
    /// Half-height of the rectangle.
    #[arg(long = "T", value_parser = parse_finite, allow_hyphen_values = true)]
    pub half_height: f64,
    #[arg(long, default_value_t = 1e-10, value_parser = parse_finite)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct TailArgs {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub s: Complex64,
    /// Largest term index m.
    #[arg(long, default_value_t = 20)]
    pub max_index: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite configuration file, or "default" for the built-in battery.
    /// Falls back to $MBZETA_CONFIG, then to the built-in battery.
    #[arg(long)]
    pub config: Option<String>,
}

/// Parses "re,im" or a bare real number.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = text.split(',').collect();
    let (re, im) = match parts.as_slice() {
        [re] => (parse_finite(re)?, 0.0),
        [re, im] => (parse_finite(re)?, parse_finite(im)?),
        _ => return Err(format!("expected \"re,im\", got \"{text}\"")),
    };
    Ok(Complex64::new(re, im))
}

pub fn parse_finite(text: &str) -> Result<f64, String> {
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| format!("\"{text}\" is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("\"{text}\" is not finite"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("2,0").unwrap(), Complex64::new(2.0, 0.0));
        assert_eq!(
            parse_complex("-0.5,14.1").unwrap(),
            Complex64::new(-0.5, 14.1)
        );
        assert_eq!(parse_complex("3").unwrap(), Complex64::new(3.0, 0.0));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("(1,2)").is_err());
        assert!(parse_complex("1,inf").is_err());
        assert!(parse_complex("nan").is_err());
    }

    #[test]
    fn parses_examples() {
        let cli = Cli::try_parse_from(["mbzeta", "eval", "zeta", "--s", "2,0"]).unwrap();
        match cli.command {
            Command::Eval(a) => {
                assert_eq!(a.function, Function::Zeta);
                assert_eq!(a.s, Complex64::new(2.0, 0.0));
            }
            other => panic!("{other:?}"),
        }
        let cli = Cli::try_parse_from([
            "mbzeta",
            "verify",
            "--config",
            "suite.json",
            "--format",
            "json",
        ])
        .unwrap();
        assert_eq!(cli.format, Some(Format::Json));
        let cli = Cli::try_parse_from([
            "mbzeta", "rect", "--family", "zetazeta", "--s", "4,0", "--right", "1.5", "--left",
            "-4.5", "--T", "30",
        ])
        .unwrap();
        match cli.command {
            Command::Rect(r) => assert_eq!(r.left, -4.5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_bad_flags() {
        assert!(Cli::try_parse_from(["mbzeta", "eval", "zeta", "--s", "two"]).is_err());
        assert!(Cli::try_parse_from([
            "mbzeta",
            "integrate",
            "--family",
            "nope",
            "--s",
            "4",
            "--c",
            "1"
        ])
        .is_err());
        assert!(Cli::try_parse_from(["mbzeta", "verify", "--format", "xml"]).is_err());
    }
}
