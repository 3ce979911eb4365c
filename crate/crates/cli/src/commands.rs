use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;
use stimsig_core::{
    closed_form_probs, differential_sigma_20, first_principles_probs, linearity_gap,
    monte_carlo_probs, run_loop, sweep, transmit, violation_threshold, LoopConfig,
    PolarizationAngle, ProbabilityTriple, ProtocolConfig, Variant,
};

use crate::error::CliError;
use crate::literal::{bits_to_string, parse_angle, BitString};
use crate::output::{Format, OutputRecord, Row};

/// Largest closed-form vs projection discrepancy `probs` accepts.
pub const PROBS_TOLERANCE: f64 = 1e-9;
/// Largest bisection vs closed-form discrepancy `causality-scan` accepts.
pub const SCAN_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(
    name = "stimsig",
    version,
    about = "Stimulated-emission amplifier statistics, signaling protocol and causal-loop kinematics"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the document to PATH instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Outcome probabilities at one angle, closed form and projection route.
    Probs {
        /// Angle in radians, or a multiple of pi such as `pi/8`, `3pi/8`.
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, default_value = "distinguishable")]
        variant: Variant,
    },
    /// Closed-form probabilities on a uniform angle grid.
    Sweep {
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, default_value = "0")]
        theta_min: f64,
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, default_value = "pi/2")]
        theta_max: f64,
        /// Grid points, endpoints included.
        #[arg(long, default_value_t = 9)]
        steps: usize,
        #[arg(long, default_value = "distinguishable")]
        variant: Variant,
    },
    /// Seeded Monte Carlo estimate of the outcome probabilities.
    Mc {
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, default_value = "distinguishable")]
        variant: Variant,
        /// Number of two-photon outcomes.
        #[arg(long, default_value_t = 1_000_000)]
        n: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Send a bit string through the EPR-pair amplifier scheme.
    Protocol {
        /// Bits to send, e.g. `0110`.
        #[arg(long)]
        bits: BitString,
        /// Two-photon outcomes Bob collects per bit.
        #[arg(long, default_value_t = 10_000)]
        pairs_per_bit: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value = "distinguishable")]
        variant: Variant,
        /// Analyzer angle for bit 0.
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, default_value = "0")]
        theta0: f64,
        /// Analyzer angle for bit 1.
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, default_value = "pi/4")]
        theta1: f64,
    },
    /// Trace the two-frame superluminal relay once.
    Causality {
        /// Channel speed in units of c, in each sender's frame.
        #[arg(long)]
        u: f64,
        /// Relative speed of the second frame.
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        /// Superluminal channel length.
        #[arg(long, default_value_t = 1.0)]
        length: f64,
        /// Light-channel length.
        #[arg(long, default_value_t = 0.0)]
        ell: f64,
    },
    /// Critical frame speed for a list of channel speeds.
    CausalityScan {
        /// Comma-separated channel speeds.
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_hyphen_values = true
        )]
        u: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        length: f64,
    },
}

/// A command's document, plus a consistency failure to report after it
/// has been written.
pub struct Outcome {
    pub record: OutputRecord,
    pub inconsistency: Option<String>,
}

impl From<OutputRecord> for Outcome {
    fn from(record: OutputRecord) -> Self {
        Self {
            record,
            inconsistency: None,
        }
    }
}

fn triple_cells(row: Row, prefix: [&'static str; 3], p: &ProbabilityTriple) -> Row {
    row.with(prefix[0], p.p20)
        .with(prefix[1], p.p11)
        .with(prefix[2], p.p02)
}

pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    match *command {
        Command::Probs { theta, variant } => probs(theta, variant),
        Command::Sweep {
            theta_min,
            theta_max,
            steps,
            variant,
        } => sweep_cmd(theta_min, theta_max, steps, variant),
        Command::Mc {
            theta,
            variant,
            n,
            seed,
        } => mc(theta, variant, n, seed),
        Command::Protocol {
            ref bits,
            pairs_per_bit,
            seed,
            variant,
            theta0,
            theta1,
        } => {
            let config = ProtocolConfig {
                theta_bit0: PolarizationAngle::new(theta0),
                theta_bit1: PolarizationAngle::new(theta1),
                pairs_per_bit,
                variant,
                seed,
            };
            protocol(&config, &bits.0)
        }
        Command::Causality {
            u,
            beta,
            length,
            ell,
        } => causality(&LoopConfig {
            u,
            beta,
            length,
            light_length: ell,
        }),
        Command::CausalityScan { ref u, length } => causality_scan(u, length),
    }
}

fn probs(theta: f64, variant: Variant) -> Result<Outcome, CliError> {
    let angle = PolarizationAngle::new(theta);
    let closed = closed_form_probs(angle, variant);
    let projected = first_principles_probs(angle, variant);
    let discrepancy = closed.max_abs_diff(&projected);
    let row = Row::new()
        .with("theta_rad", angle.radians())
        .with("variant", variant.as_str());
    let row = triple_cells(row, ["p20", "p11", "p02"], &closed);
    let row = triple_cells(row, ["fp_p20", "fp_p11", "fp_p02"], &projected)
        .with("max_abs_discrepancy", discrepancy)
        .with("sigma20_per_lambda2", differential_sigma_20(angle));
    let record = OutputRecord::new("probs")
        .param("theta", theta)
        .param("variant", variant)
        .row(row);
    Ok(Outcome {
        record,
        inconsistency: (discrepancy > PROBS_TOLERANCE)
            .then(|| format!("closed form and projection route differ by {discrepancy:e}")),
    })
}

fn sweep_cmd(
    theta_min: f64,
    theta_max: f64,
    steps: usize,
    variant: Variant,
) -> Result<Outcome, CliError> {
    let rows = sweep(theta_min, theta_max, steps, variant)?;
    let mut record = OutputRecord::new("sweep")
        .param("theta_min", theta_min)
        .param("theta_max", theta_max)
        .param("steps", steps)
        .param("variant", variant);
    for r in rows {
        let row = triple_cells(
            Row::new().with("theta_rad", r.theta),
            ["p20", "p11", "p02"],
            &r.probs,
        )
        .with("sigma20_per_lambda2", r.sigma20);
        record = record.row(row);
    }
    Ok(record.into())
}

fn mc(theta: f64, variant: Variant, n: u64, seed: u64) -> Result<Outcome, CliError> {
    let angle = PolarizationAngle::new(theta);
    let (counts, est) = monte_carlo_probs(angle, variant, n, seed)?;
    let reference = closed_form_probs(angle, variant);
    let row = Row::new()
        .with("theta_rad", angle.radians())
        .with("variant", variant.as_str())
        .with("n", n)
        .with("seed", seed)
        .with("n20", counts.n20)
        .with("n11", counts.n11)
        .with("n02", counts.n02);
    let row = triple_cells(row, ["p20_hat", "p11_hat", "p02_hat"], &est);
    let row = triple_cells(row, ["p20", "p11", "p02"], &reference)
        .with("dev20", est.p20 - reference.p20)
        .with("dev11", est.p11 - reference.p11)
        .with("dev02", est.p02 - reference.p02)
        .with("max_abs_dev", est.max_abs_diff(&reference));
    Ok(OutputRecord::new("mc")
        .param("theta", theta)
        .param("variant", variant)
        .param("n", n)
        .param("seed", seed)
        .row(row)
        .into())
}

fn protocol(config: &ProtocolConfig, bits: &[bool]) -> Result<Outcome, CliError> {
    let report = transmit(config, bits)?;
    let mut record = OutputRecord::new("protocol")
        .param("bits", bits_to_string(bits))
        .param("pairs_per_bit", config.pairs_per_bit)
        .param("seed", config.seed)
        .param("variant", config.variant)
        .param("theta0", config.theta_bit0.radians())
        .param("theta1", config.theta_bit1.radians());
    for (i, ((&sent, &decoded), &p)) in report
        .sent_bits
        .iter()
        .zip(&report.decoded_bits)
        .zip(&report.per_bit_estimates)
        .enumerate()
    {
        record = record.row(
            Row::new()
                .with("index", i as u64)
                .with("sent", u64::from(sent))
                .with("decoded", u64::from(decoded))
                .with("p20_hat", p),
        );
    }
    let linearity: Vec<_> = [config.theta_bit0, config.theta_bit1]
        .into_iter()
        .map(|theta| {
            let r = linearity_gap(theta, config.variant);
            json!({
                "theta_rad": r.theta.radians(),
                "p_model": r.p_model,
                "p_linear": r.p_linear,
                "gap": r.gap,
            })
        })
        .collect();
    record.summary = Some(json!({
        "sent": bits_to_string(&report.sent_bits),
        "decoded": bits_to_string(&report.decoded_bits),
        "errors": report.errors(),
        "error_rate": report.error_rate,
        "threshold": report.threshold,
        "linearity": linearity,
    }));
    Ok(record.into())
}

fn causality(cfg: &LoopConfig) -> Result<Outcome, CliError> {
    let report = run_loop(cfg)?;
    let mut row = Row::new()
        .with("u", cfg.u)
        .with("beta", cfg.beta)
        .with("length", cfg.length)
        .with("light_length", cfg.light_length);
    let names: [(&str, &str); 5] = [
        ("emission_t", "emission_x"),
        ("bob1_t", "bob1_x"),
        ("alice2_t", "alice2_x"),
        ("bob2_t", "bob2_x"),
        ("arrival_t", "arrival_x"),
    ];
    for ((t_key, x_key), (_, e)) in names.into_iter().zip(report.events()) {
        row = row.with(t_key, e.t).with(x_key, e.x);
    }
    let row = row
        .with("delta_t", report.delta_t)
        .with("violated", report.violated);
    Ok(OutputRecord::new("causality")
        .param("u", cfg.u)
        .param("beta", cfg.beta)
        .param("length", cfg.length)
        .param("ell", cfg.light_length)
        .row(row)
        .into())
}

fn causality_scan(speeds: &[f64], length: f64) -> Result<Outcome, CliError> {
    let mut record = OutputRecord::new("causality-scan")
        .param("u", speeds)
        .param("length", length);
    let mut worst: f64 = 0.0;
    for &u in speeds {
        let threshold = violation_threshold(u, length)?;
        let closed = (u > 1.0).then(|| 2.0 * u / (1.0 + u * u));
        let error = threshold.zip(closed).map(|(a, b)| (a - b).abs());
        worst = worst.max(error.unwrap_or(0.0));
        record = record.row(
            Row::new()
                .with("u", u)
                .with("threshold_beta", threshold)
                .with("closed_form_beta", closed)
                .with("abs_error", error),
        );
    }
    Ok(Outcome {
        record,
        inconsistency: (worst > SCAN_TOLERANCE)
            .then(|| format!("bisection differs from 2u/(1+u^2) by {worst:e}")),
    })
}
