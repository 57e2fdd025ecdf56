use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use momkp::{generate, CapacityRule, SetKind};

#[derive(Args)]
pub struct GenerateArgs {
    /// Instance family: A, B, C, D or X.
    #[arg(long, value_parser = parse_kind)]
    pub kind: SetKind,

    /// Number of items.
    #[arg(long, default_value_t = 1000)]
    pub n: usize,

    /// Weight dimensions.
    #[arg(long, default_value_t = 4)]
    pub m: usize,

    /// Profit objectives.
    #[arg(long, default_value_t = 4)]
    pub p: usize,

    /// Instances to generate; instance i uses seed `seed + i`.
    #[arg(long, default_value_t = 5)]
    pub count: usize,

    /// Base seed.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Capacity rule: `per-item:<c>` (capacity c*n) or `fixed:<W>`.
    /// The default gives W = 50000 at n = 1000 and scales with n.
    #[arg(long, default_value = "per-item:50", value_parser = parse_capacity)]
    pub capacity: CapacityRule,

    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

fn parse_kind(raw: &str) -> Result<SetKind> {
    match SetKind::parse_token(raw) {
        Some(SetKind::External) | None => bail!("unknown set kind '{raw}' (expected A, B, C, D or X)"),
        Some(kind) => Ok(kind),
    }
}

fn parse_capacity(raw: &str) -> Result<CapacityRule> {
    if let Some(v) = raw.strip_prefix("per-item:") {
        return Ok(CapacityRule::PerItem(v.parse().context("bad per-item capacity")?));
    }
    if let Some(v) = raw.strip_prefix("fixed:") {
        return Ok(CapacityRule::Fixed(v.parse().context("bad fixed capacity")?));
    }
    bail!("unknown capacity rule '{raw}' (expected per-item:<c> or fixed:<W>)")
}

pub fn run(args: GenerateArgs) -> Result<()> {
    std::fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;
    for i in 0..args.count {
        let seed = args.seed + i as u64;
        let inst = generate(args.kind, args.n, args.m, args.p, args.capacity, seed)?;
        let path = args.out_dir.join(format!("{}.momkp", inst.instance_id()));
        momkp::write_instance_file(&inst, &path)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
