use c4ex_core::certify::{find_threshold_q0, RRule, ThresholdScan, Verdict};
use c4ex_core::rational::parse_decimal;
use c4ex_core::{certify_point, Certificate, Which};
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::io::print_json;
use crate::{CliError, Outcome};

#[derive(Debug, clap::Args)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["q", "scan"])))]
pub struct Args {
    /// F or G; a scan without it covers both.
    #[arg(long)]
    which: Option<Which>,
    #[arg(long, requires_all = ["r", "which"])]
    q: Option<i64>,
    #[arg(long, requires = "q", allow_hyphen_values = true)]
    r: Option<i64>,
    /// Scan q upward for the threshold q0.
    #[arg(long)]
    scan: bool,
    #[arg(long, default_value_t = 2, requires = "scan")]
    qmin: i64,
    #[arg(long, default_value_t = 22_000, requires = "scan")]
    qmax: i64,
    /// Length of the run of fully certified q that fixes q0.
    #[arg(long, default_value_t = 50, requires = "scan")]
    window: i64,
    /// Override the upper end of the r range as a fraction of q (decimal or num/den).
    #[arg(long, requires = "scan")]
    r_max: Option<String>,
    /// Also emit every failing and confirming certificate.
    #[arg(long, requires = "scan")]
    certificates: bool,
    /// Scan F and G concurrently when above 1.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Serialize)]
#[serde(tag = "record", rename_all = "snake_case")]
enum Line<'a> {
    Certificate {
        #[serde(flatten)]
        cert: &'a Certificate,
    },
    Threshold {
        which: Which,
        rule: RRule,
        q_lo: i64,
        q_hi: i64,
        window: i64,
        q0: Option<i64>,
        failing_q: usize,
        last_failure: Option<&'a Certificate>,
    },
}

fn rule_for(which: Which, r_max: Option<&str>) -> Result<RRule, CliError> {
    let mut rule = RRule::of(which);
    if let Some(text) = r_max {
        let x = parse_decimal(text).map_err(|e| CliError::Usage(e.to_string()))?;
        let (num, den) = (x.numer().to_i64(), x.denom().to_i64());
        match (num, den) {
            (Some(num), Some(den)) if num >= 0 && den <= 1_000_000_000 => {
                rule.max_num = num;
                rule.max_den = den;
            }
            _ => return Err(CliError::Usage(format!("--r-max {text} is out of range"))),
        }
    }
    Ok(rule)
}

fn emit_scan(scan: &ThresholdScan, certificates: bool) -> Result<(), CliError> {
    if certificates {
        for cert in scan.failures.iter().chain(&scan.confirming) {
            print_json(&Line::Certificate { cert })?;
        }
    }
    print_json(&Line::Threshold {
        which: scan.which,
        rule: scan.rule,
        q_lo: scan.q_lo,
        q_hi: scan.q_hi,
        window: scan.window,
        q0: scan.q0,
        failing_q: scan.failures.len(),
        last_failure: scan.failures.last(),
    })
}

pub fn run(args: Args) -> Result<Outcome, CliError> {
    if !args.scan {
        let (which, q, r) = (args.which.expect("required"), args.q.expect("required"), args.r.expect("required"));
        if q < 1 {
            return Err(CliError::Usage(format!("q must be positive, got {q}")));
        }
        let cert = certify_point(which, q, r);
        print_json(&cert)?;
        // Points outside the claimed range carry no claim, so only a failed
        // certificate is a verdict failure.
        return Ok(match cert.verdict {
            Verdict::CertifiedNegative | Verdict::Inapplicable => Outcome::Success,
            _ => Outcome::VerdictFailed,
        });
    }
    if args.qmin < 1 || args.qmin > args.qmax || args.window < 0 {
        return Err(CliError::Usage(format!("need 1 <= qmin <= qmax and window >= 0, got {}..{}", args.qmin, args.qmax)));
    }
    let whiches: Vec<Which> = match args.which {
        Some(w) => vec![w],
        None => vec![Which::G, Which::F],
    };
    let rules = whiches
        .iter()
        .map(|&w| rule_for(w, args.r_max.as_deref()))
        .collect::<Result<Vec<_>, _>>()?;
    let scan = |(&w, &rule): (&Which, &RRule)| find_threshold_q0(w, rule, args.qmin, args.qmax, args.window);
    let scans: Vec<ThresholdScan> = if args.threads > 1 {
        std::thread::scope(|s| {
            let handles: Vec<_> = whiches.iter().zip(&rules).map(|p| s.spawn(move || scan(p))).collect();
            handles.into_iter().map(|h| h.join().expect("scan thread")).collect()
        })
    } else {
        whiches.iter().zip(&rules).map(scan).collect()
    };
    for s in &scans {
        emit_scan(s, args.certificates)?;
    }
    Ok(if scans.iter().all(|s| s.q0.is_some()) { Outcome::Success } else { Outcome::VerdictFailed })
}
