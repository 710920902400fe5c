//! CSV tables and run manifests.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::params::Params;

/// Seventeen significant digits, independent of locale.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for line in std::iter::once(&self.header).chain(&self.rows) {
            let cells: Vec<String> = line.iter().map(|c| quote(c)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn quote(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Versions {
    pub pslab: &'static str,
    #[serde(rename = "pslab-core")]
    pub pslab_core: &'static str,
}

pub const MANIFEST_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub manifest_version: u32,
    pub command: String,
    /// Effective parameters; feeding this object back through `--config`
    /// reruns the experiment.
    pub config: Params,
    /// `exact` or `certified`, for commands that test PS membership.
    pub gamma_path: Option<&'static str>,
    pub gamma: Option<String>,
    pub threads: usize,
    pub wall_time_seconds: f64,
    pub csv: PathBuf,
    pub versions: Versions,
}

pub fn versions() -> Versions {
    Versions {
        pslab: env!("CARGO_PKG_VERSION"),
        pslab_core: pslab_core::VERSION,
    }
}

/// `results.csv` → `results.manifest.json`.
pub fn manifest_path(csv: &Path) -> PathBuf {
    let stem = csv.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    csv.with_file_name(format!("{stem}.manifest.json"))
}

pub fn write_outputs(csv_path: &Path, table: &Table, manifest: &Manifest) -> io::Result<()> {
    if let Some(dir) = csv_path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(csv_path, table.to_csv())?;
    let json = serde_json::to_string_pretty(manifest).map_err(io::Error::other)?;
    fs::write(manifest_path(csv_path), json + "\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        assert_eq!(real(1.0), "1.0000000000000000e0");
        assert_eq!(real(-0.1), "-1.0000000000000001e-1");
        let mut t = Table::new(&["a", "b"]);
        t.push(vec!["1".into(), "x,y".into()]);
        assert_eq!(t.to_csv(), "a,b\n1,\"x,y\"\n");
        assert_eq!(manifest_path(Path::new("out/r.csv")), Path::new("out/r.manifest.json"));
    }
}
