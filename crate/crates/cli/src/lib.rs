//! Command-line front end: one subcommand per subject area, seeded and
//! deterministic, emitting JSON (default), CSV for tabular modes, or plain
//! text.
//!
//! Exit codes are the machine interface:
//!
//! - `0`: every requested check passed
//! - `1`: a check failed (or a numeric search/precision failure)
//! - `2`: usage error (bad flags, bad parameter domain)
//! - `3`: a resource cap refused the request
//!
//! The same `(config, seed)` pair always produces byte-identical output;
//! parallel sections reduce in fixed order and every map in a report is
//! ordered.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sinefold::equidist::{self, QuadraticPisot, ThetaSpec};
use sinefold::norms;
use sinefold::pte;
use sinefold::report::Envelope;
use sinefold::series::{self, StepOrGeneral};
use sinefold::signs;
use sinefold::trigprod::{self, ProductKind, ProductSpec, TrigIdentity};
use sinefold::wallis;
use sinefold::Error;

/// Fitted L1 growth-rate window asserted by `norms --rho`.
pub const RHO_WINDOW: (f64, f64) = (0.654336, 0.663197);

#[derive(Debug, Parser)]
#[command(name = "sinefold", version, about = "Binary-digit-sum product identities: verify, measure, explore")]
pub struct Cli {
    /// RNG seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Override the default residual tolerance (1e-10).
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,

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
    /// Exact and sampled verification of the product identities.
    Verify(VerifyArgs),
    /// Sup/L1/L2 norms of the sine products and the L1 growth fit.
    Norms(NormsArgs),
    /// Sine-power moments, the moment recurrence, and Wallis partials.
    Wallis(WallisArgs),
    /// Multigrade residterm certificates and Prouhet partitions.
    Pte(PteArgs),
    /// Weyl sums, discrepancy experiments, Pisot power norms.
    Equidist(EquidistArgs),
    /// Sign words of the dyadic sine product.
    Signs(SignsArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Which identity to check: all, digits, poly, corollary, step, general,
    /// cosh, cos, sinh, sin, sin-odd, dyadic-cos, dyadic-sin,
    /// dyadic-cos-folded, dyadic-sin-folded, closed-form, remark5, expansion.
    /// Each mode runs at min(--n, its ceiling): 16 for the exact polynomial
    /// layer, 12 for sampled identities, 14 for the expansion.
    #[arg(long, default_value = "all")]
    pub identity: String,

    /// Max factor count / polynomial size.
    #[arg(long, default_value_t = 10)]
    pub n: u32,

    /// Random draws per sampled check.
    #[arg(long, default_value_t = 100)]
    pub samples: u32,
}

#[derive(Debug, Args)]
pub struct NormsArgs {
    /// Sup-norm search for the given r and n.
    #[arg(long)]
    pub sup: bool,

    /// Multiplier r for --sup (dyadic family is r = 2).
    #[arg(long, default_value_t = 2)]
    pub r: u32,

    /// Factor exponent n (the product has n+1 factors).
    #[arg(long)]
    pub n: Option<u32>,

    /// Exact L1 norm of the dyadic product.
    #[arg(long)]
    pub l1: bool,

    /// Exact Parseval L2 value for --lambda.
    #[arg(long)]
    pub l2: bool,

    /// Check the Cauchy-Schwarz L1 bound for --lambda.
    #[arg(long)]
    pub l1_bound: bool,

    /// Weights for --l2 / --l1-bound, e.g. 1,2,4,8.
    #[arg(long, value_delimiter = ',')]
    pub lambda: Vec<u64>,

    /// Fit the L1 growth rate over [n-min, n-max] and assert the window.
    #[arg(long)]
    pub rho: bool,

    #[arg(long, default_value_t = 8)]
    pub n_min: u32,

    #[arg(long, default_value_t = 14)]
    pub n_max: u32,

    /// Emit the (n, sup, l1, l2) table for n = 0..=n.
    #[arg(long)]
    pub table: bool,

    /// Emit the folded expansion of the n-factor dyadic sine product.
    #[arg(long)]
    pub expansion: Option<u32>,

    /// Report the even-r sup witness x0.
    #[arg(long)]
    pub witness: bool,
}

#[derive(Debug, Args)]
pub struct WallisArgs {
    /// Exact even moments up to m, cross-checked by quadrature.
    #[arg(long)]
    pub moments: Option<u32>,

    /// Recurrence and pi/2-product check up to n.
    #[arg(long)]
    pub recurrence: Option<u32>,

    /// Single Wallis partial at this n, to 50+ digits.
    #[arg(long)]
    pub partial: Option<u64>,

    /// Digit-sum central counts up to m, against C(2m, m).
    #[arg(long)]
    pub central: Option<u32>,

    /// CSV ladder of partials at these n values.
    #[arg(long, value_delimiter = ',')]
    pub ladder: Vec<u64>,
}

#[derive(Debug, Args)]
pub struct PteArgs {
    /// Weight vector, e.g. 1,2,4,8.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambda: Vec<i64>,

    /// Highest exponent for the residual certificate.
    #[arg(long, default_value_t = 8)]
    pub e_max: u32,

    /// Prouhet partition of [0, 2^n) with power-sum verification.
    #[arg(long)]
    pub prouhet: Option<u32>,

    /// Also emit the two signed-sum multisets.
    #[arg(long)]
    pub multisets: bool,
}

#[derive(Debug, Args)]
pub struct EquidistArgs {
    /// Base: golden, sqrt2, sqrt:K, pisot:TRACE,NORM, or real:VALUE.
    #[arg(long)]
    pub theta: Option<String>,

    /// Multiplier x for the experiment.
    #[arg(long, default_value_t = 1.0)]
    pub x: f64,

    /// Block exponent: samples are u(j, lambda) for j < 2^n.
    #[arg(long, default_value_t = 12)]
    pub n: u32,

    /// Run the Weyl-sum vs cosine-product identity on random weights.
    #[arg(long)]
    pub product_check: bool,

    /// Draws for --product-check.
    #[arg(long, default_value_t = 200)]
    pub samples: u32,

    /// Emit ||x theta^q|| for q < count (theta must be quadratic Pisot).
    #[arg(long)]
    pub pisot_norms: Option<usize>,

    /// Integer multiplier for --pisot-norms.
    #[arg(long, default_value_t = 1)]
    pub x_int: i64,
}

#[derive(Debug, Args)]
pub struct SignsArgs {
    /// Word length exponent (word has 2^n letters).
    #[arg(long, default_value_t = 10)]
    pub n: u32,

    /// Check the interval-splitting relations at this level too.
    #[arg(long)]
    pub splitting: bool,
}

/// Operations reachable from each subcommand; the integration tests assert
/// this table covers every public operation of the library.
pub fn dispatch_coverage() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        (
            "verify",
            vec![
                "bits",
                "digit_sum",
                "thue_morse",
                "signed_digits",
                "u_value",
                "product_poly",
                "sum_poly",
                "check_corollary",
                "check_step_identity",
                "check_general_identity",
                "eval_product",
                "cos_closed_form_check",
                "check_identity",
                "fourier_expansion",
                "remark5_term_multisets",
            ],
        ),
        (
            "norms",
            vec![
                "sup_norm",
                "x0_witness",
                "l1_norm",
                "l2_norm",
                "admissible",
                "l1_upper_bound_check",
                "rho_estimate",
                "fourier_expansion",
            ],
        ),
        (
            "wallis",
            vec!["sin_moment", "central_count", "moment_recurrence_check", "wallis_partial"],
        ),
        (
            "pte",
            vec!["multigrade_residuals", "prouhet_partition", "multigrade_from_weights"],
        ),
        (
            "equidist",
            vec![
                "nearest_int_norm",
                "weyl_sum",
                "product_identity_check",
                "zero_classifier",
                "pisot_power_norms",
                "star_discrepancy",
                "equidist_experiment",
            ],
        ),
        (
            "signs",
            vec!["sign_word_analytic", "morphism_word", "splitting_check"],
        ),
    ]
}

/// Canonical list of public operations (used by the coverage test).
pub const CORE_OPERATIONS: &[&str] = &[
    "bits",
    "digit_sum",
    "thue_morse",
    "signed_digits",
    "u_value",
    "product_poly",
    "sum_poly",
    "check_corollary",
    "check_step_identity",
    "check_general_identity",
    "eval_product",
    "cos_closed_form_check",
    "check_identity",
    "fourier_expansion",
    "remark5_term_multisets",
    "sup_norm",
    "x0_witness",
    "l1_norm",
    "l2_norm",
    "admissible",
    "l1_upper_bound_check",
    "rho_estimate",
    "sin_moment",
    "central_count",
    "moment_recurrence_check",
    "wallis_partial",
    "multigrade_residuals",
    "prouhet_partition",
    "multigrade_from_weights",
    "nearest_int_norm",
    "weyl_sum",
    "product_identity_check",
    "zero_classifier",
    "pisot_power_norms",
    "star_discrepancy",
    "equidist_experiment",
    "sign_word_analytic",
    "morphism_word",
    "splitting_check",
];

/// One executed check: a JSON fragment plus pass/fail.
struct ModeResult {
    value: Value,
    passed: bool,
    /// CSV body when the mode is naturally tabular.
    csv: Option<String>,
    /// Human-readable one-liner.
    text: String,
}

fn check_result(kind: &str, passed: bool, value: Value, text: String) -> ModeResult {
    ModeResult { value: json!({ "kind": kind, "passed": passed, "report": value }), passed, csv: None, text }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable report")
}

/// Run the CLI with parsed arguments; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    sinefold::init_threads_from_env();
    let tol = cli.tolerance.unwrap_or(series::DEFAULT_TOL);
    if let Some(t) = cli.tolerance {
        if !(t > 0.0) {
            eprintln!("error: tolerance must be positive");
            return 2;
        }
    }
    let outcome = match &cli.command {
        Command::Verify(args) => run_verify(args, cli.seed, tol),
        Command::Norms(args) => run_norms(args, tol),
        Command::Wallis(args) => run_wallis(args, tol),
        Command::Pte(args) => run_pte(args),
        Command::Equidist(args) => run_equidist(args, cli.seed),
        Command::Signs(args) => run_signs(args),
    };
    let (results, subcommand) = match outcome {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return match e {
                Error::Resource(_) => 3,
                Error::Domain(_) | Error::SingularInput(_) => 2,
                _ => 1,
            };
        }
    };

    let all_passed = results.iter().all(|r| r.passed);
    let rendered = match cli.format {
        Format::Json => {
            let values: Vec<Value> = results.iter().map(|r| r.value.clone()).collect();
            let mut envelope = Envelope::new(subcommand, Some(cli.seed), values).to_json();
            envelope.push('\n');
            envelope
        }
        Format::Csv => {
            let tables: Vec<&String> = results.iter().filter_map(|r| r.csv.as_ref()).collect();
            if tables.is_empty() {
                eprintln!("error: no tabular output for this mode; use --format json");
                return 2;
            }
            tables.into_iter().cloned().collect::<Vec<_>>().join("\n")
        }
        Format::Text => {
            let mut out = String::new();
            for r in &results {
                out.push_str(&r.text);
                out.push('\n');
            }
            out.push_str(if all_passed { "overall: pass\n" } else { "overall: FAIL\n" });
            out
        }
    };

    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, &rendered) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 1;
        }
    } else {
        print!("{rendered}");
    }

    if all_passed {
        0
    } else {
        1
    }
}

type ModeOutcome = sinefold::Result<(Vec<ModeResult>, &'static str)>;

fn run_verify(args: &VerifyArgs, seed: u64, tol: f64) -> ModeOutcome {
    let mut results = Vec::new();
    let wanted = args.identity.as_str();
    let all = wanted == "all";
    let n = args.n;
    let samples = args.samples;

    if all || wanted == "digits" {
        // Digit-layer self-checks: expansions reconstruct, the signed-digit
        // weighted sum hits 2j+1-2^n, Thue-Morse follows the parity
        // recurrences, and u(., 2^q) is the identity.
        let width = n.clamp(1, 20) as usize;
        let lambda: Vec<f64> = (0..width).map(|q| (1u64 << q) as f64).collect();
        let mut passed = true;
        let mut state = seed | 1;
        for _ in 0..samples.max(1) {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 11) % (1u64 << width);
            let expansion = sinefold::digits::bits(j, width)?;
            let reconstructed: u64 = expansion
                .digits()
                .iter()
                .enumerate()
                .map(|(q, &d)| (d as u64) << q)
                .sum();
            passed &= reconstructed == j;
            passed &= expansion.digits().iter().map(|&d| d as u32).sum::<u32>()
                == sinefold::digits::digit_sum(j);
            let sigmas = sinefold::digits::signed_digits(j, width)?;
            let signed_total: i64 =
                sigmas.sigmas().iter().enumerate().map(|(q, &s)| (s as i64) << q).sum();
            passed &= signed_total == 2 * j as i64 + 1 - (1i64 << width);
            passed &= sinefold::digits::thue_morse(2 * j) == sinefold::digits::thue_morse(j);
            passed &= sinefold::digits::thue_morse(2 * j + 1) == -sinefold::digits::thue_morse(j);
            passed &= sinefold::digits::u_value(j, &lambda)? == j as f64;
        }
        results.push(check_result(
            "digits",
            passed,
            json!({ "width": width, "samples": samples, "passed": passed }),
            format!("digits width={width}: reconstruction/recurrence checks: {passed}"),
        ));
    }
    if all || wanted == "poly" {
        let cap = n.min(16).max(1);
        let equal = series::product_poly(cap)? == series::sum_poly(cap)?;
        results.push(check_result(
            "poly",
            equal,
            json!({ "n": cap, "coefficientwise_equal": equal }),
            format!("poly n={cap}: product == digit-sum expansion: {equal}"),
        ));
    }
    if all || wanted == "corollary" {
        for a in [1i8, -1] {
            let report = series::check_corollary(n.min(16).max(1), a)?;
            results.push(check_result(
                "corollary",
                report.passed,
                to_value(&report),
                format!("corollary a={a}: passed={}", report.passed),
            ));
        }
    }
    if all || wanted == "step" {
        let report = series::check_identity_batch(StepOrGeneral::Step, n.min(12).max(1), samples, seed, tol)?;
        let text = format!("step n={}: max residual {:.3e}", report.n, report.max_residual);
        results.push(check_result("step", report.passed, to_value(&report), text));
    }
    if all || wanted == "general" {
        let report =
            series::check_identity_batch(StepOrGeneral::General, n.min(12).max(1), samples, seed ^ 1, tol)?;
        let text = format!("general n={}: max residual {:.3e}", report.n, report.max_residual);
        results.push(check_result("general", report.passed, to_value(&report), text));
    }

    for (i, which) in TrigIdentity::ALL.iter().enumerate() {
        if all || wanted == which.name() {
            let mut factors = n.min(12).max(2);
            if let Some(p) = match which {
                TrigIdentity::Sinh | TrigIdentity::Sin | TrigIdentity::DyadicSin
                | TrigIdentity::DyadicSinFolded => Some(0),
                TrigIdentity::SinOdd => Some(1),
                _ => None,
            } {
                if factors % 2 != p {
                    factors -= 1;
                }
            }
            let report = trigprod::check_identity_batch(*which, factors, samples, seed ^ (i as u64 + 2), tol)?;
            let text = format!(
                "{} factors={}: max residual {:.3e}",
                which.name(),
                factors,
                report.max_residual
            );
            results.push(check_result(which.name(), report.passed, to_value(&report), text));
        }
    }

    if all || wanted == "closed-form" {
        // sampled closed-form check away from the poles
        let mut worst = 0.0f64;
        for i in 0..samples {
            let x = 0.05 + (std::f64::consts::PI - 0.1) * (i as f64 + 0.5) / samples as f64;
            worst = worst.max(trigprod::cos_closed_form_check(n.min(16), x)?);
        }
        let passed = worst <= tol;
        results.push(check_result(
            "closed-form",
            passed,
            json!({ "n": n.min(16), "samples": samples, "max_residual": worst }),
            format!("closed-form n={}: max residual {worst:.3e}", n.min(16)),
        ));
    }
    if all || wanted == "remark5" {
        let factors = n.clamp(1, 10);
        let mut passed = true;
        for i in 0..samples.min(50) {
            passed &= trigprod::remark5_check(factors, seed ^ (i as u64))?;
        }
        results.push(check_result(
            "remark5",
            passed,
            json!({ "factors": factors, "multisets_equal": passed }),
            format!("remark5 factors={factors}: multisets equal: {passed}"),
        ));
    }
    if all || wanted == "expansion" {
        let factors = n.clamp(1, 14);
        let spec = ProductSpec::dyadic(ProductKind::Sin, 2, 0.37, factors)?;
        let expansion = trigprod::fourier_expansion(&spec)?;
        let mut worst = 0.0f64;
        for i in 0..1000 {
            let x = std::f64::consts::PI * (i as f64 + 0.5) / 1000.0;
            let spec_x = ProductSpec::dyadic(ProductKind::Sin, 2, x, factors)?;
            worst = worst.max((expansion.eval(x) - trigprod::eval_product(&spec_x)).abs());
        }
        let passed = worst <= 1e-12;
        let mut result = check_result(
            "expansion",
            passed,
            json!({
                "factors": factors,
                "terms": expansion.terms.len(),
                "amplitude": expansion.amplitude,
                "basis": to_value(&expansion.basis),
                "max_reconstruction_error": worst,
            }),
            format!("expansion factors={factors}: reconstruction error {worst:.3e}"),
        );
        result.csv = Some(expansion.csv_rows());
        results.push(result);
    }

    if results.is_empty() {
        return Err(Error::Domain(format!("verify: unknown identity '{wanted}'")));
    }
    Ok((results, "verify"))
}

fn run_norms(args: &NormsArgs, tol: f64) -> ModeOutcome {
    let mut results = Vec::new();

    if args.sup {
        let n = args.n.ok_or_else(|| Error::domain("norms --sup needs --n"))?;
        let report = norms::sup_norm(args.r, n)?;
        let passed = report.bound_checks.iter().all(|c| c.passed);
        let text = format!(
            "sup r={} n={n}: {:.6} at {:.6} ({} bound checks)",
            args.r,
            report.sup_estimate.unwrap(),
            report.argmax.unwrap(),
            report.bound_checks.len()
        );
        results.push(check_result("sup_norm", passed, to_value(&report), text));
    }
    if args.witness {
        let x0 = norms::x0_witness(args.r)?;
        results.push(check_result(
            "x0_witness",
            true,
            json!({ "r": args.r, "x0": x0 }),
            format!("x0 witness r={}: {x0:.6}", args.r),
        ));
    }
    if args.l1 {
        let n = args.n.ok_or_else(|| Error::domain("norms --l1 needs --n"))?;
        let (value, error_bound) = norms::l1_norm(n)?;
        results.push(check_result(
            "l1_norm",
            true,
            json!({ "n": n, "value": value, "error_bound": error_bound }),
            format!("l1 n={n}: {value:.12} (+-{error_bound:.2e})"),
        ));
    }
    if args.l2 {
        if args.lambda.is_empty() {
            return Err(Error::domain("norms --l2 needs --lambda"));
        }
        let exact = norms::l2_norm(&args.lambda, norms::L2Kind::Sin)?;
        let quadrature = norms::l2_norm_quadrature(&args.lambda, norms::L2Kind::Sin, 1e-12);
        let exact_f64 = norms::l2_norm_f64(&args.lambda, norms::L2Kind::Sin)?;
        let residual = (exact_f64 - quadrature).abs();
        let passed = residual <= 1e-9;
        results.push(check_result(
            "l2_norm",
            passed,
            json!({
                "lambda": args.lambda,
                "exact": format!("{}/{}", exact.numer(), exact.denom()),
                "quadrature": quadrature,
                "residual": residual,
            }),
            format!("l2 {:?}: exact {}/{} vs quadrature {quadrature:.3e}", args.lambda, exact.numer(), exact.denom()),
        ));
    }
    if args.l1_bound {
        if args.lambda.is_empty() {
            return Err(Error::domain("norms --l1-bound needs --lambda"));
        }
        let check = norms::l1_upper_bound_check(&args.lambda)?;
        let text = format!(
            "l1 bound {:?}: integral {:.6} <= {:.6}: {}",
            args.lambda, check.value, check.upper, check.passed
        );
        results.push(check_result("l1_upper_bound_check", check.passed, to_value(&check), text));
    }
    if args.rho {
        let fit = norms::rho_estimate(args.n_min, args.n_max)?;
        let passed = fit.rho_hat > RHO_WINDOW.0
            && fit.rho_hat < RHO_WINDOW.1
            && fit.rho_hat <= 2f64.sqrt() / 2.0;
        let text = format!(
            "rho over [{}, {}]: {:.6} (window {:?}, r2 {:.6})",
            args.n_min, args.n_max, fit.rho_hat, RHO_WINDOW, fit.r_squared
        );
        results.push(check_result("rho_estimate", passed, to_value(&fit), text));
    }
    if args.table {
        let n_max = args.n.unwrap_or(8);
        let csv = norms::norms_csv(n_max)?;
        let mut rows = Vec::new();
        for n in 0..=n_max {
            rows.push(to_value(&norms::full_report(n)?));
        }
        let mut result = check_result(
            "norms_table",
            true,
            Value::Array(rows),
            format!("norms table for n = 0..={n_max}"),
        );
        result.csv = Some(csv);
        results.push(result);
    }
    if let Some(factors) = args.expansion {
        let spec = ProductSpec::dyadic(ProductKind::Sin, 2, 1.0, factors.max(1))?;
        let expansion = trigprod::fourier_expansion(&spec)?;
        let mut result = check_result(
            "expansion",
            true,
            to_value(&expansion),
            format!("expansion factors={factors}: {} terms", expansion.terms.len()),
        );
        result.csv = Some(expansion.csv_rows());
        results.push(result);
    }

    if results.is_empty() {
        return Err(Error::domain(
            "norms: pick at least one of --sup --l1 --l2 --l1-bound --rho --table --witness --expansion",
        ));
    }
    let _ = tol;
    Ok((results, "norms"))
}

fn run_wallis(args: &WallisArgs, tol: f64) -> ModeOutcome {
    let mut results = Vec::new();

    if let Some(m_max) = args.moments {
        let mut rows = Vec::new();
        let mut worst = 0.0f64;
        for m in 0..=m_max.min(20) {
            let moment = wallis::sin_moment(m)?;
            let direct = sinefold::quad::integrate(
                &|x: f64| x.sin().powi(2 * m as i32),
                0.0,
                std::f64::consts::FRAC_PI_2,
                1e-13,
            );
            let exact = moment.to_f64();
            let residual = (direct - exact).abs() / exact;
            worst = worst.max(residual);
            rows.push(json!({
                "m": m,
                "rational_times_pi": format!("{}/{}", moment.rational_part.numer(), moment.rational_part.denom()),
                "value": exact,
                "quadrature_residual": residual,
            }));
        }
        let passed = worst <= tol.max(1e-10);
        results.push(check_result(
            "sin_moments",
            passed,
            Value::Array(rows),
            format!("moments m<=20: worst quadrature residual {worst:.3e}"),
        ));
    }
    if let Some(n_max) = args.recurrence {
        let report = wallis::moment_recurrence_check(n_max, 1e-9)?;
        let text = format!(
            "recurrence n<={n_max}: residuals {:.2e}/{:.2e}/{:.2e}",
            report.max_recurrence_residual, report.max_product_residual, report.max_quadrature_residual
        );
        results.push(check_result("moment_recurrence", report.passed, to_value(&report), text));
    }
    if let Some(n) = args.partial {
        let decimal = wallis::wallis_partial_decimal(n, 50)?;
        results.push(check_result(
            "wallis_partial",
            true,
            json!({ "n": n, "value": decimal }),
            format!("wallis({n}) = {decimal}"),
        ));
    }
    if let Some(m_max) = args.central {
        let mut rows = Vec::new();
        let mut all_equal = true;
        for m in 0..=m_max {
            let counted = wallis::central_count(m)?;
            let formula = wallis::binomial(2 * m as u64, m as u64);
            let equal = formula == counted.into();
            all_equal &= equal;
            rows.push(json!({ "m": m, "count": counted, "binomial": formula.to_string(), "equal": equal }));
        }
        results.push(check_result(
            "central_count",
            all_equal,
            Value::Array(rows),
            format!("central counts m<={m_max}: all equal: {all_equal}"),
        ));
    }
    if !args.ladder.is_empty() {
        let csv = wallis::wallis_csv(&args.ladder)?;
        let mut result = check_result(
            "wallis_ladder",
            true,
            json!({ "n": args.ladder }),
            format!("wallis ladder at {:?}", args.ladder),
        );
        result.csv = Some(csv);
        results.push(result);
    }

    if results.is_empty() {
        return Err(Error::domain(
            "wallis: pick at least one of --moments --recurrence --partial --central --ladder",
        ));
    }
    Ok((results, "wallis"))
}

fn run_pte(args: &PteArgs) -> ModeOutcome {
    let mut results = Vec::new();

    if !args.lambda.is_empty() {
        let witness = pte::multigrade_residuals(&args.lambda, args.e_max)?;
        let passed = witness.vanishing_holds();
        let text = format!(
            "multigrade lambda={:?}: vanishing + pivot: {passed}",
            args.lambda
        );
        results.push(check_result("multigrade_residuals", passed, to_value(&witness), text));
        if args.multisets {
            let (even, odd) = pte::multigrade_from_weights(&args.lambda)?;
            // cross-check: power sums of the two multisets reproduce residuals
            let mut agree = true;
            for e in 0..=args.e_max {
                let diff = pte::power_sum(&even, e) - pte::power_sum(&odd, e);
                if &diff != &witness.residuals[&e] {
                    agree = false;
                }
            }
            results.push(check_result(
                "multigrade_multisets",
                agree,
                json!({ "even": even, "odd": odd, "power_sums_match_residuals": agree }),
                format!("multisets sizes {}/{}: power sums match residuals: {agree}", even.len(), odd.len()),
            ));
        }
    }
    if let Some(n) = args.prouhet {
        let partition = pte::prouhet_partition(n)?;
        let passed = partition.differs_at_n && partition.equal_through + 1 == n;
        let text = format!(
            "prouhet n={n}: equal power sums through e={}, differs at e={n}: {}",
            partition.equal_through, partition.differs_at_n
        );
        results.push(check_result("prouhet_partition", passed, to_value(&partition), text));
    }

    if results.is_empty() {
        return Err(Error::domain("pte: pass --lambda and/or --prouhet"));
    }
    Ok((results, "pte"))
}

fn parse_theta(spec: &str) -> sinefold::Result<ThetaSpec> {
    match spec {
        "golden" => Ok(ThetaSpec::Quadratic(QuadraticPisot::golden_ratio())),
        "sqrt2" => Ok(ThetaSpec::SqrtInteger(2)),
        other => {
            if let Some(rest) = other.strip_prefix("sqrt:") {
                let k: u64 = rest
                    .parse()
                    .map_err(|_| Error::Domain(format!("bad sqrt base '{rest}'")))?;
                Ok(ThetaSpec::SqrtInteger(k))
            } else if let Some(rest) = other.strip_prefix("pisot:") {
                let parts: Vec<&str> = rest.split(',').collect();
                if parts.len() != 2 {
                    return Err(Error::domain("pisot spec needs trace,norm"));
                }
                let trace: i64 =
                    parts[0].parse().map_err(|_| Error::Domain(format!("bad trace '{}'", parts[0])))?;
                let norm: i64 =
                    parts[1].parse().map_err(|_| Error::Domain(format!("bad norm '{}'", parts[1])))?;
                Ok(ThetaSpec::Quadratic(QuadraticPisot::new(trace, norm)?))
            } else if let Some(rest) = other.strip_prefix("real:") {
                let v: f64 =
                    rest.parse().map_err(|_| Error::Domain(format!("bad real value '{rest}'")))?;
                Ok(ThetaSpec::Real(v))
            } else {
                Err(Error::Domain(format!("unknown theta spec '{other}'")))
            }
        }
    }
}

fn run_equidist(args: &EquidistArgs, seed: u64) -> ModeOutcome {
    let mut results = Vec::new();

    if args.product_check {
        let (_, worst) = equidist::product_identity_batch(args.samples, seed, 12)?;
        let passed = worst <= 1e-10;
        results.push(check_result(
            "product_identity_check",
            passed,
            json!({ "samples": args.samples, "max_residual": worst }),
            format!("weyl/product identity over {} draws: max residual {worst:.3e}", args.samples),
        ));
    }
    if let Some(count) = args.pisot_norms {
        let theta_str = args
            .theta
            .as_deref()
            .ok_or_else(|| Error::domain("equidist --pisot-norms needs --theta"))?;
        let theta = parse_theta(theta_str)?;
        let p = match theta {
            ThetaSpec::Quadratic(p) => p,
            _ => return Err(Error::domain("--pisot-norms needs a quadratic Pisot theta")),
        };
        let norms_list = equidist::pisot_power_norms(&p, args.x_int, count)?;
        results.push(check_result(
            "pisot_power_norms",
            true,
            json!({ "theta": theta.describe(), "x": args.x_int, "norms": norms_list }),
            format!("pisot norms for {}: {count} values", theta.describe()),
        ));
    }
    if args.theta.is_some() && args.pisot_norms.is_none() {
        let theta = parse_theta(args.theta.as_deref().unwrap())?;
        let report = equidist::equidist_experiment(theta, args.x, args.n)?;
        let text = format!(
            "experiment theta={} x={} n={}: D* = {:.6}, verdict {:?}",
            report.theta, report.x, report.n, report.discrepancy, report.classifier.verdict
        );
        let csv = equidist::samples_csv(&report.samples);
        let mut result = check_result("equidist_experiment", true, to_value(&report), text);
        result.csv = Some(csv);
        results.push(result);
    }

    if results.is_empty() {
        return Err(Error::domain("equidist: pass --theta and/or --product-check/--pisot-norms"));
    }
    Ok((results, "equidist"))
}

fn run_signs(args: &SignsArgs) -> ModeOutcome {
    let mut results = Vec::new();
    let analytic = signs::sign_word_analytic(args.n)?;
    let morphic = signs::morphism_word(args.n)?;
    let equal = analytic.word == morphic.word;
    results.push(check_result(
        "sign_words",
        equal,
        json!({
            "n": analytic.n,
            "analytic": analytic.to_plus_minus(),
            "morphism": morphic.to_plus_minus(),
            "equal": equal,
        }),
        format!("sign words n={}: analytic == morphism: {equal}", analytic.n),
    ));
    if args.splitting {
        let report = signs::splitting_check(args.n)?;
        let text = format!(
            "splitting n={}: {} relations: {}",
            report.n, report.relations_checked, report.passed
        );
        results.push(check_result("splitting_check", report.passed, to_value(&report), text));
    }
    Ok((results, "signs"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coverage_table_covers_every_operation() {
        let table = dispatch_coverage();
        for op in CORE_OPERATIONS {
            assert!(
                table.iter().any(|(_, ops)| ops.contains(op)),
                "operation {op} not reachable from any subcommand"
            );
        }
        for (sub, ops) in &table {
            for op in ops {
                assert!(CORE_OPERATIONS.contains(op), "{sub} lists unknown op {op}");
            }
        }
    }

    #[test]
    fn theta_parsing() {
        assert!(matches!(parse_theta("golden"), Ok(ThetaSpec::Quadratic(_))));
        assert!(matches!(parse_theta("sqrt2"), Ok(ThetaSpec::SqrtInteger(2))));
        assert!(matches!(parse_theta("sqrt:3"), Ok(ThetaSpec::SqrtInteger(3))));
        assert!(matches!(parse_theta("pisot:2,-1"), Ok(ThetaSpec::Quadratic(_))));
        assert!(matches!(parse_theta("real:1.5"), Ok(ThetaSpec::Real(_))));
        assert!(parse_theta("nonsense").is_err());
        assert!(parse_theta("pisot:0,-2").is_err());
    }
}
