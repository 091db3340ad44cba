use crate::config::ExperimentConfig;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::io;
use std::path::{Path, PathBuf};

#[derive(Serialize)]
pub struct OutputFile {
    pub path: PathBuf,
    pub sha256: String,
}

#[derive(Serialize)]
pub struct Manifest<'a> {
    pub experiment: String,
    pub config: &'a ExperimentConfig,
    pub seed: u64,
    pub wall_time_s: f64,
    pub summary: Value,
    pub outputs: Vec<OutputFile>,
}

pub fn hash_file(path: &Path) -> io::Result<String> {
    let mut hasher = Sha256::new();
    io::copy(&mut std::fs::File::open(path)?, &mut hasher)?;
    Ok(hex::encode(hasher.finalize()))
}

pub fn output_files(dir: &Path, files: &[PathBuf]) -> io::Result<Vec<OutputFile>> {
    files
        .iter()
        .map(|f| {
            Ok(OutputFile {
                path: f.strip_prefix(dir).unwrap_or(f).to_path_buf(),
                sha256: hash_file(f)?,
            })
        })
        .collect()
}
