//! Run the whole pipeline and write every table, figure and the manifest.
//!
//!     cargo run --release --example full_report -- [out-dir] [config.toml]

use std::path::PathBuf;

use datastock::{run_pipeline, RunConfig};

fn main() -> datastock::Result<()> {
    let mut args = std::env::args().skip(1);
    let out = PathBuf::from(args.next().unwrap_or_else(|| "report".into()));
    let config = match args.next() {
        Some(p) => RunConfig::load(p.as_ref())?,
        None => RunConfig::default(),
    };

    let bundle = run_pipeline(&config)?;
    let written = bundle.write_to(&out)?;
    if let Some(t) = bundle.table("table_exhaustion") {
        print!("{}", t.to_markdown()?);
    }
    println!("{} files in {}, config {}", written.len(), out.display(), &bundle.manifest.config_sha256[..12]);
    Ok(())
}
