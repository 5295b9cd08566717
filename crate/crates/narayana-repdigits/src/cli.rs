//! Command implementations behind the binary: configuration validation and
//! the four pipeline entry points (bounds, reduce, search, all). These are
//! plain functions over [`RunConfig`] so they can be exercised directly in
//! tests; the binary only parses flags, calls them, and renders.

use crate::matveev::{BoundChainReport, BoundEngine, HeightProfile};
use crate::recurrence::narayana_upto;
use crate::reduction::{
    reference_m_limit, sweep_step1, sweep_step2, sweep_step3, StepReport, SweepContext,
};
use crate::report::{
    AllOutput, BoundsOutput, OutputFormat, Provenance, ReduceOutput, SearchOutput, SolutionRow,
};
use crate::search::{search, verify_golden, SearchBox, SolutionRecord};
use crate::{algebraic, Error, Result};
use rug::Integer;
use std::collections::BTreeMap;
use std::path::PathBuf;

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub bases: Vec<u32>,
    pub precision_bits: u32,
    pub k_max: Option<u64>,
    pub ell_max: Option<u32>,
    pub m_max: Option<u32>,
    pub n_max: Option<u32>,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub strict_heights: bool,
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            bases: (2..=10).collect(),
            precision_bits: 1200,
            k_max: None,
            ell_max: None,
            m_max: None,
            n_max: None,
            format: OutputFormat::Markdown,
            out: None,
            strict_heights: false,
            threads: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.bases.is_empty() {
            return Err(Error::InvalidInput("no bases selected".into()));
        }
        if let Some(&g) = self.bases.iter().find(|&&g| !(2..=36).contains(&g)) {
            return Err(Error::InvalidInput(format!(
                "base {g} outside the supported range [2, 36]"
            )));
        }
        if self.precision_bits < 128 {
            return Err(Error::InvalidInput(format!(
                "precision_bits must be ≥ 128, got {}",
                self.precision_bits
            )));
        }
        Ok(())
    }

    pub fn profile(&self) -> HeightProfile {
        if self.strict_heights {
            HeightProfile::Strict
        } else {
            HeightProfile::Reproduction
        }
    }

    fn provenance(&self, command: &str) -> Provenance {
        Provenance::new(
            command,
            &self.bases,
            self.precision_bits,
            self.strict_heights,
            self.threads,
        )
    }

    /// M for the reduction: the published 1.99·10^54 covers every g ≤ 10;
    /// larger bases get the recomputed chain bound (rounded up — a larger M
    /// only weakens the conclusion, never its validity).
    fn m_limit(&self, g: u32) -> Result<Integer> {
        if g <= 10 {
            return Ok(reference_m_limit());
        }
        let constants = algebraic::compute_constants(192)?;
        let engine = BoundEngine::new(&constants, self.profile());
        let (_, k_bound) = engine.derive_n_bound(g)?;
        let f = rug::Float::with_val(64, k_bound * 1.001);
        f.ceil()
            .to_integer()
            .ok_or_else(|| Error::InvalidInput("k bound overflow".into()))
    }
}

/// Which reduction step(s) to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepSelect {
    One,
    Two,
    Three,
    All,
}

impl std::str::FromStr for StepSelect {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(Self::One),
            "2" => Ok(Self::Two),
            "3" => Ok(Self::Three),
            "all" => Ok(Self::All),
            other => Err(Error::InvalidInput(format!(
                "step must be 1, 2, 3, or all; got {other}"
            ))),
        }
    }
}

pub fn cmd_bounds(cfg: &RunConfig) -> Result<BoundsOutput> {
    cfg.validate()?;
    let constants = algebraic::compute_constants(cfg.precision_bits.min(512))?;
    let engine = BoundEngine::new(&constants, cfg.profile());
    let mut reports = Vec::new();
    for &g in &cfg.bases {
        reports.push(engine.chain_report(g)?);
    }
    Ok(BoundsOutput {
        provenance: cfg.provenance("bounds"),
        reports,
    })
}

/// Run the sweeps for one base, cumulatively: later steps consume the bounds
/// of earlier ones.
pub fn reduce_base(cfg: &RunConfig, g: u32) -> Result<[StepReport; 3]> {
    let ctx = SweepContext::new(g, cfg.m_limit(g)?, cfg.precision_bits)?;
    let s1 = sweep_step1(&ctx)?;
    let s2 = sweep_step2(&ctx, s1.bound)?;
    let s3 = sweep_step3(&ctx, s1.bound, s2.bound)?;
    Ok([s1, s2, s3])
}

pub fn cmd_reduce(cfg: &RunConfig, select: StepSelect) -> Result<ReduceOutput> {
    cfg.validate()?;
    init_threads(cfg);
    let mut steps = Vec::new();
    for &g in &cfg.bases {
        let [s1, s2, s3] = reduce_base(cfg, g)?;
        match select {
            StepSelect::One => steps.push(s1),
            StepSelect::Two => steps.push(s2),
            StepSelect::Three => steps.push(s3),
            StepSelect::All => steps.extend([s1, s2, s3]),
        }
    }
    steps.sort_by_key(|s| (s.step, s.g));
    Ok(ReduceOutput {
        provenance: cfg.provenance("reduce"),
        steps,
    })
}

fn boxes_from(cfg: &RunConfig) -> BTreeMap<u32, SearchBox> {
    cfg.bases
        .iter()
        .map(|&g| {
            let proven = SearchBox::proven(g);
            (
                g,
                SearchBox {
                    base: g,
                    k_max: cfg.k_max.unwrap_or(proven.k_max),
                    ell_max: cfg.ell_max.unwrap_or(proven.ell_max),
                    m_max: cfg.m_max.unwrap_or(proven.m_max),
                    n_max: cfg.n_max.unwrap_or(proven.n_max),
                },
            )
        })
        .collect()
}

type SearchResults = (BTreeMap<u32, Vec<SolutionRecord>>, Vec<SolutionRow>);

fn run_search(boxes: &BTreeMap<u32, SearchBox>) -> Result<SearchResults> {
    let k_top = boxes.values().map(|b| b.k_max).max().unwrap_or(0);
    let table = narayana_upto(k_top);
    let mut results = BTreeMap::new();
    for (&g, bx) in boxes {
        results.insert(g, search(bx, &table)?);
    }
    let rows = results
        .values()
        .flatten()
        .map(SolutionRow::from_record)
        .collect();
    Ok((results, rows))
}

pub fn cmd_search(cfg: &RunConfig) -> Result<SearchOutput> {
    cfg.validate()?;
    init_threads(cfg);
    let boxes = boxes_from(cfg);
    for bx in boxes.values() {
        bx.validate()?;
    }
    let (results, rows) = run_search(&boxes)?;
    let golden = verify_golden(&results, &boxes);
    Ok(SearchOutput {
        provenance: cfg.provenance("search"),
        solutions: rows,
        golden,
    })
}

pub fn cmd_all(cfg: &RunConfig) -> Result<AllOutput> {
    cfg.validate()?;
    init_threads(cfg);
    let constants = algebraic::compute_constants(cfg.precision_bits.min(512))?;
    let engine = BoundEngine::new(&constants, cfg.profile());

    let mut bounds: Vec<BoundChainReport> = Vec::new();
    let mut steps = Vec::new();
    let mut boxes = BTreeMap::new();
    for &g in &cfg.bases {
        bounds.push(engine.chain_report(g)?);
        let [s1, s2, s3] = reduce_base(cfg, g)?;
        // the search region never exceeds the reduced bounds unless the user
        // explicitly overrides; ordering ℓ ≤ m ≤ n lets each bound clamp the
        // ones below it
        let n_max = cfg.n_max.unwrap_or(s3.bound);
        let m_max = cfg.m_max.unwrap_or(s2.bound.min(n_max));
        let ell_max = cfg.ell_max.unwrap_or(s1.bound.min(m_max));
        boxes.insert(
            g,
            SearchBox {
                base: g,
                k_max: cfg.k_max.unwrap_or(11500),
                ell_max,
                m_max,
                n_max,
            },
        );
        steps.extend([s1, s2, s3]);
    }
    steps.sort_by_key(|s| (s.step, s.g));
    for bx in boxes.values() {
        bx.validate()?;
    }
    let (results, rows) = run_search(&boxes)?;
    let golden = verify_golden(&results, &boxes);
    let success = golden.clean() || golden.clean_modulo_known_discrepancy();
    Ok(AllOutput {
        provenance: cfg.provenance("all"),
        bounds,
        steps,
        solutions: rows,
        golden,
        success,
    })
}

fn init_threads(cfg: &RunConfig) {
    if let Some(n) = cfg.threads {
        // a global pool may already exist (tests, repeated calls); that is fine
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        let mut cfg = RunConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.bases = vec![1];
        assert!(cfg.validate().is_err());
        cfg.bases = vec![37];
        assert!(cfg.validate().is_err());
        cfg.bases = vec![];
        assert!(cfg.validate().is_err());
        cfg.bases = vec![2];
        cfg.precision_bits = 100;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn step_select_parsing() {
        assert_eq!("1".parse::<StepSelect>().unwrap(), StepSelect::One);
        assert_eq!("all".parse::<StepSelect>().unwrap(), StepSelect::All);
        assert!("4".parse::<StepSelect>().is_err());
    }

    #[test]
    fn bounds_command_rejects_bad_base() {
        let cfg = RunConfig {
            bases: vec![1],
            ..RunConfig::default()
        };
        assert!(matches!(cmd_bounds(&cfg), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn bounds_command_reports_all_bases() {
        let cfg = RunConfig::default();
        let out = cmd_bounds(&cfg).unwrap();
        assert_eq!(out.reports.len(), 9);
        for r in &out.reports {
            assert!(r.n_bound <= r.n_ceiling);
            assert!(r.k_bound <= r.k_ceiling);
        }
    }

    #[test]
    fn search_command_with_degenerate_k() {
        let cfg = RunConfig {
            bases: vec![2],
            k_max: Some(0),
            ..RunConfig::default()
        };
        let out = cmd_search(&cfg).unwrap();
        assert!(out.solutions.is_empty());
        // nothing expected within an empty box either
        assert!(out.golden.missing.is_empty());
        assert!(out.golden.clean());
    }

    #[test]
    fn search_command_small_box_per_base() {
        let cfg = RunConfig {
            bases: vec![6],
            k_max: Some(100),
            ell_max: Some(8),
            m_max: Some(8),
            n_max: Some(8),
            ..RunConfig::default()
        };
        let out = cmd_search(&cfg).unwrap();
        let labels: Vec<String> = out.solutions.iter().map(|r| r.bracket()).collect();
        assert!(labels.contains(&"[1,1,333]_6".to_string()));
        assert!(labels.contains(&"[1,3,111]_6".to_string()));
        assert!(out.golden.clean());
    }
}
