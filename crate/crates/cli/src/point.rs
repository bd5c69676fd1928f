//! Point selection shared by the commands that build `ψ`.

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use paramodular_core::borcherds::{family_inflation_point, point_587, InflationPoint};
use paramodular_core::diophantine::{FamilyId, FAMILY_C};

#[derive(Args, Debug, Clone, Default)]
pub struct PointArgs {
    /// Built-in point; only `587` is available.
    #[arg(long)]
    pub preset: Option<String>,
    /// Family line, `Fam1` or `Fam2`; needs --alpha and --beta.
    #[arg(long)]
    pub family: Option<FamilyId>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<i64>,
    /// Inflation vector as a comma-separated list (default: the family c).
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    /// Point as a comma-separated list of 24 integers.
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<String>,
    /// File holding the inflation vector (commas or whitespace).
    #[arg(long)]
    pub c_file: Option<PathBuf>,
    /// File holding the point (commas or whitespace).
    #[arg(long)]
    pub d_file: Option<PathBuf>,
}

/// Parses `"1,2, 3"` or whitespace-separated integers; empty input is the
/// empty list.
pub fn parse_list(text: &str) -> Result<Vec<i64>> {
    text.split(|ch: char| ch == ',' || ch.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i64>().with_context(|| format!("not an integer: {s:?}")))
        .collect()
}

fn read_list(path: &PathBuf) -> Result<Vec<i64>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_list(&text)
}

fn inline_or_file(inline: &Option<String>, file: &Option<PathBuf>, what: &str) -> Result<Option<Vec<i64>>> {
    match (inline, file) {
        (Some(_), Some(_)) => bail!("give --{what} or --{what}-file, not both"),
        (Some(s), None) => parse_list(s).map(Some),
        (None, Some(p)) => read_list(p).map(Some),
        (None, None) => Ok(None),
    }
}

impl PointArgs {
    pub fn resolve(&self) -> Result<InflationPoint> {
        let c = inline_or_file(&self.c, &self.c_file, "c")?;
        let d = inline_or_file(&self.d, &self.d_file, "d")?;
        let family = self.family.is_some() || self.alpha.is_some() || self.beta.is_some();
        let sources = [self.preset.is_some(), family, d.is_some()].iter().filter(|&&b| b).count();
        if sources != 1 {
            bail!("choose exactly one point source: --preset, --family/--alpha/--beta, or --d/--d-file");
        }
        if let Some(p) = &self.preset {
            if p != "587" {
                bail!("unknown preset {p:?}; available: 587");
            }
            if c.is_some() {
                bail!("--c does not apply to a preset");
            }
            return Ok(point_587());
        }
        if family {
            let (Some(id), Some(a), Some(b)) = (self.family, self.alpha, self.beta) else {
                bail!("--family needs --alpha and --beta");
            };
            if c.is_some() {
                bail!("--c does not apply to a family point");
            }
            return Ok(family_inflation_point(id, a, b)?);
        }
        let c = c.unwrap_or_else(|| FAMILY_C.to_vec());
        Ok(InflationPoint::new(c, d.expect("checked above"))?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(parse_list("").unwrap(), Vec::<i64>::new());
        assert_eq!(parse_list("1,-2, 3\n4").unwrap(), vec![1, -2, 3, 4]);
        assert!(parse_list("1,x").is_err());
    }

    #[test]
    fn exactly_one_source() {
        assert!(PointArgs::default().resolve().is_err());
        let both = PointArgs { preset: Some("587".into()), family: Some(FamilyId::Fam1), ..Default::default() };
        assert!(both.resolve().is_err());
        let p = PointArgs { preset: Some("587".into()), ..Default::default() };
        assert_eq!(p.resolve().unwrap().level(), 587);
    }

    #[test]
    fn family_and_explicit_agree() {
        let fam = PointArgs { family: Some(FamilyId::Fam2), alpha: Some(1), beta: Some(2), ..Default::default() };
        let p = fam.resolve().unwrap();
        let d: Vec<String> = p.d().iter().map(|x| x.to_string()).collect();
        let explicit = PointArgs { d: Some(d.join(",")), ..Default::default() };
        assert_eq!(explicit.resolve().unwrap(), p);
        assert_eq!(p.level(), 167);
    }
}
