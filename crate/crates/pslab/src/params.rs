//! Experiment parameters shared by the command line and JSON config files.
//!
//! Every value is kept as text so that a config file and a flag say exactly
//! the same thing; `1e7`, `10000000` and `"10000000"` are all accepted for an
//! integer, and `a/b` or a decimal for `gamma`.

use std::path::PathBuf;

use clap::Args;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::CliError;

fn text<'de, D: Deserializer<'de>>(d: D) -> Result<Option<String>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Scalar {
        Str(String),
        Int(i64),
        UInt(u64),
        Float(f64),
        List(Vec<serde_json::Value>),
    }
    Ok(Some(match Scalar::deserialize(d)? {
        Scalar::Str(s) => s,
        Scalar::Int(v) => v.to_string(),
        Scalar::UInt(v) => v.to_string(),
        Scalar::Float(v) => format!("{v:?}"),
        Scalar::List(v) => serde_json::to_string(&v).map_err(serde::de::Error::custom)?,
    }))
}

macro_rules! params {
    ($($(#[doc = $doc:literal])* $name:ident),* $(,)?) => {
        #[derive(Debug, Clone, Default, PartialEq, Eq, Args, Serialize, Deserialize)]
        #[serde(deny_unknown_fields)]
        pub struct Params {
            /// Subcommand name; only read from config files.
            #[arg(skip)]
            #[serde(default, skip_serializing_if = "Option::is_none")]
            pub command: Option<String>,
            $(
                $(#[doc = $doc])*
                #[arg(long)]
                #[serde(default, skip_serializing_if = "Option::is_none", deserialize_with = "text")]
                pub $name: Option<String>,
            )*
            /// JSON config file (or a run manifest); flags override its values.
            #[arg(long)]
            #[serde(skip)]
            pub config: Option<PathBuf>,
        }

        impl Params {
            /// Names of the keys that are set.
            pub fn keys(&self) -> Vec<&'static str> {
                let mut out = Vec::new();
                $(if self.$name.is_some() { out.push(stringify!($name)); })*
                out
            }

            /// `other` wins wherever it is set.
            pub fn overlay(mut self, other: Params) -> Params {
                $(if other.$name.is_some() { self.$name = other.$name; })*
                if other.command.is_some() {
                    self.command = other.command;
                }
                self
            }
        }
    };
}

params! {
    /// Exponent γ as `a/b` (exact) or a decimal (certified real arithmetic).
    gamma,
    /// Size parameter: X, N, or a comma-separated list for some commands.
    x,
    /// Progression length.
    k,
    /// lambda, lambda-gamma, ones, or compare.
    weight,
    /// System preset (single, two-form, 3-ap, k-ap, goldbach3) or a JSON matrix.
    system,
    /// W-trick cut-off: W is the product of the primes up to w.
    w,
    /// Residue class b mod W.
    b,
    /// Linear-forms complexity parameter m.
    m,
    /// Sieve truncation R.
    r,
    /// Frequency, degree, or a comma-separated list of coefficients.
    h,
    /// Interval length Y.
    y,
    /// Curvature scale Δ.
    delta,
    /// Erdős–Turán cut-off J (comma-separated list allowed).
    j,
    /// Gowers norm degree.
    s,
    /// Monte Carlo sample count.
    samples,
    /// Grid size.
    grid,
    /// Input function for the Gowers norm.
    input,
    /// Twisting sequence: linear or heisenberg.
    twist,
    /// Frequency α of a linear twist (`sqrt2` accepted).
    alpha,
    /// Affine forms `a:b` (comma-separated), meaning a·x + b.
    forms,
    /// Lower end of an interval.
    lo,
    /// Upper end of an interval.
    hi,
    /// Prime bound.
    p,
    /// Number of random sequences.
    sequences,
    /// Majorization constant c.
    c,
    /// Output CSV path; the manifest goes next to it.
    out,
    /// Worker threads (0 = all cores).
    threads,
    /// Random seed.
    seed,
}

/// Keys every command accepts.
pub const COMMON_KEYS: &[&str] = &["out", "threads", "seed"];

impl Params {
    /// Rejects keys the command does not use.
    pub fn check_keys(&self, command: &str, allowed: &[&str]) -> Result<(), CliError> {
        for key in self.keys() {
            if !allowed.contains(&key) && !COMMON_KEYS.contains(&key) {
                return Err(CliError::Config(format!("`{command}` does not take `{key}`")));
            }
        }
        Ok(())
    }

    /// Reads a config object, or the `config` member of a run manifest.
    pub fn from_json(text: &str) -> Result<Params, CliError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| CliError::Config(format!("config is not valid JSON: {e}")))?;
        let value = match value {
            serde_json::Value::Object(mut map) if map.contains_key("manifest_version") => map
                .remove("config")
                .ok_or_else(|| CliError::Config("manifest has no `config` member".into()))?,
            v => v,
        };
        serde_json::from_value(value).map_err(|e| CliError::Config(format!("invalid config: {e}")))
    }
}

pub fn parse_u64(key: &str, value: &str) -> Result<u64, CliError> {
    let v = value.trim().replace('_', "");
    if let Ok(n) = v.parse::<u64>() {
        return Ok(n);
    }
    match v.parse::<f64>() {
        Ok(f) if f >= 0.0 && f.fract() == 0.0 && f <= 9.007_199_254_740_992e15 => Ok(f as u64),
        _ => Err(CliError::Config(format!("`{key}` must be a nonnegative integer, got `{value}`"))),
    }
}

pub fn parse_i64(key: &str, value: &str) -> Result<i64, CliError> {
    let v = value.trim();
    match v.strip_prefix('-') {
        Some(rest) => parse_u64(key, rest).and_then(|n| {
            i64::try_from(n).map(|n| -n).map_err(|_| CliError::Config(format!("`{key}` is out of range")))
        }),
        None => parse_u64(key, v)
            .and_then(|n| i64::try_from(n).map_err(|_| CliError::Config(format!("`{key}` is out of range")))),
    }
}

/// A real number given as a decimal, `a/b`, or `sqrt2`.
pub fn parse_real(key: &str, value: &str) -> Result<f64, CliError> {
    let v = value.trim();
    if v == "sqrt2" {
        return Ok(std::f64::consts::SQRT_2);
    }
    let bad = || CliError::Config(format!("`{key}` must be a real number, got `{value}`"));
    let out = match v.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.trim().parse().map_err(|_| bad())?;
            let b: f64 = b.trim().parse().map_err(|_| bad())?;
            a / b
        }
        None => v.parse().map_err(|_| bad())?,
    };
    if out.is_finite() {
        Ok(out)
    } else {
        Err(bad())
    }
}

pub fn parse_list<T>(key: &str, value: &str, item: impl Fn(&str, &str) -> Result<T, CliError>) -> Result<Vec<T>, CliError> {
    let out: Vec<T> = value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| item(key, s))
        .collect::<Result<_, _>>()?;
    if out.is_empty() {
        return Err(CliError::Config(format!("`{key}` is empty")));
    }
    Ok(out)
}
