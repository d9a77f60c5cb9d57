//! Run and sweep configuration.
//!
//! A sweep file holds one entry per line, `group [lattice] mu`, e.g.
//!
//! ```text
//! # comment
//! cap = 200000
//! only = s2,haines
//! GL3 1,0,0
//! C2 Qv 1,2
//! ```
//!
//! Lines of the form `key = value` set global options (`cap`, `threads`, `only`).

use std::collections::BTreeSet;

use anyhow::{anyhow, bail, Context, Result};
use kr_admissible::verifier::{CheckName, SweepEntry};
use kr_admissible::{Coweight, GroupDescriptor, RootSystem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub group: GroupDescriptor,
    pub mu: Vec<i64>,
}

impl RunConfig {
    pub fn parse(group: &str, lattice: Option<&str>, mu: &str) -> Result<Self> {
        let group = GroupDescriptor::parse(group, lattice)?;
        let mu = parse_mu(mu)?;
        let config = RunConfig { group, mu };
        config.validate()?;
        Ok(config)
    }

    /// Builds the root system and checks that `μ` has the right length.
    pub fn validate(&self) -> Result<(RootSystem, Coweight)> {
        let rs = self.group.build()?;
        let mu = rs
            .coweight(self.mu.clone())
            .with_context(|| format!("μ for {}", self.group))?;
        Ok((rs, mu))
    }

    pub fn entry(&self) -> SweepEntry {
        SweepEntry::new(self.group.clone(), self.mu.clone())
    }
}

pub fn parse_mu(s: &str) -> Result<Vec<i64>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.is_empty() {
        bail!("empty μ");
    }
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| anyhow!("malformed μ {s:?}")))
        .collect()
}

pub fn parse_only(s: &str) -> Result<BTreeSet<CheckName>> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.parse::<CheckName>().map_err(|e| anyhow!(e)))
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepFile {
    pub entries: Vec<RunConfig>,
    pub cap: Option<usize>,
    pub threads: Option<usize>,
    pub only: Option<BTreeSet<CheckName>>,
}

impl SweepFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = SweepFile::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = || format!("line {}: {raw:?}", n + 1);
            if let Some((key, value)) = line.split_once('=') {
                let value = value.trim();
                match key.trim() {
                    "cap" => out.cap = Some(value.parse().with_context(at)?),
                    "threads" => out.threads = Some(value.parse().with_context(at)?),
                    "only" => out.only = Some(parse_only(value).with_context(at)?),
                    other => bail!("{}: unknown option {other:?}", at()),
                }
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let entry = match fields.as_slice() {
                [group, mu] => RunConfig::parse(group, None, mu),
                [group, lattice, mu] => RunConfig::parse(group, Some(lattice), mu),
                _ => Err(anyhow!("expected `group [lattice] mu`")),
            }
            .with_context(at)?;
            out.entries.push(entry);
        }
        Ok(out)
    }

    pub fn entries(&self) -> Vec<SweepEntry> {
        self.entries.iter().map(RunConfig::entry).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu_forms() {
        assert_eq!(parse_mu("1,0,-1").unwrap(), vec![1, 0, -1]);
        assert_eq!(parse_mu("(2, 1)").unwrap(), vec![2, 1]);
        assert!(parse_mu("1,x").is_err());
        assert!(parse_mu("").is_err());
    }

    #[test]
    fn run_config_checks_rank() {
        assert!(RunConfig::parse("GL3", None, "1,0,0").is_ok());
        assert!(RunConfig::parse("GL3", None, "1,0").is_err());
        assert!(RunConfig::parse("C2", Some("Pv"), "0,1").is_ok());
        assert!(RunConfig::parse("Z9", None, "1").is_err());
    }

    #[test]
    fn sweep_file() {
        let text = "# demo\ncap = 1000\nonly = s2, haines\n\nGL2 1,0\nC2 Qv 1,2  # trailing\n";
        let f = SweepFile::parse(text).unwrap();
        assert_eq!(f.cap, Some(1000));
        assert_eq!(f.only, Some(BTreeSet::from([CheckName::S2, CheckName::Haines])));
        assert_eq!(f.entries.len(), 2);
        assert_eq!(f.entries[1].mu, vec![1, 2]);
        assert!(SweepFile::parse("GL2 1,0,0").is_err());
        assert!(SweepFile::parse("speed = 3").is_err());
        assert!(SweepFile::parse("A1 Qv 1 extra").is_err());
    }
}
