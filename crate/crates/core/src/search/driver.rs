//! Batched, parallel, checkpointed scans writing records to a file or
//! stream.
//!
//! A batch is a run of consecutive outer values. Workers render the blocks
//! of a batch independently; blocks are then written and their statistics
//! merged in outer-value order, so the output does not depend on the
//! worker count. After every batch the output is synced and the checkpoint
//! replaced, so the checkpoint never runs ahead of the file.

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::{Seek, SeekFrom, Write};
use std::path::Path;

use rayon::prelude::*;

use super::checkpoint::{offer, ExtremalRecord, ScanCheckpoint, ScanMode};
use super::record::{self, fmt_real, Cell, Cells, RecordFormat};
use super::{
    exhaustive_block, quadruple_block, smooth_block, AbcTriple, AbcdQuadruple, RadicalTable,
    SearchError, SmoothSet,
};
use crate::bounds;

pub const STAT_MAX_QUALITY: &str = "max_quality";
pub const STAT_KAPPA_THM1PRELIM: &str = "kappa_thm1prelim";
pub const STAT_KAPPA_THM1: &str = "kappa_thm1";
pub const STAT_KAPPA_ABCD: &str = "kappa_abcd";

#[derive(Debug, Clone, PartialEq)]
pub struct ScanJob {
    pub mode: ScanMode,
    /// `c_max` for triple modes, `h_max` for quadruples.
    pub limit: u64,
    pub tau: f64,
    /// Smoothness bound, used by [`ScanMode::Smooth3`] only.
    pub smooth_bound: u64,
    pub format: RecordFormat,
    pub workers: usize,
    /// Outer values per batch, and so per checkpoint.
    pub batch: u64,
}

impl ScanJob {
    pub fn new(mode: ScanMode, limit: u64, tau: f64) -> Self {
        ScanJob {
            mode,
            limit,
            tau,
            smooth_bound: 3,
            format: RecordFormat::Csv,
            workers: 1,
            batch: 64,
        }
    }

    fn validate(&self) -> Result<(), SearchError> {
        let bad = |msg: String| Err(SearchError::BadParameter(msg));
        if !(self.tau > 0.0 && self.tau.is_finite()) {
            return bad(format!("tau = {} must be positive", self.tau));
        }
        if self.limit < self.mode.first_outer() {
            return bad(format!(
                "limit = {} is below {}",
                self.limit,
                self.mode.first_outer()
            ));
        }
        if self.mode == ScanMode::Smooth3 && self.smooth_bound < 2 {
            return bad(format!("B = {} must be at least 2", self.smooth_bound));
        }
        if self.mode == ScanMode::Exhaustive4 && self.limit > i64::MAX as u64 / 4 {
            return bad(format!("h_max = {} is too large", self.limit));
        }
        if self.workers == 0 || self.batch == 0 {
            return bad("workers and batch must be positive".into());
        }
        Ok(())
    }

    fn params(&self) -> BTreeMap<String, f64> {
        let mut p = BTreeMap::from([("tau".to_string(), self.tau)]);
        if self.mode == ScanMode::Smooth3 {
            p.insert("B".to_string(), self.smooth_bound as f64);
        }
        p
    }

    fn fresh_checkpoint(&self) -> ScanCheckpoint {
        let lo = self.mode.first_outer();
        ScanCheckpoint {
            mode: self.mode,
            range_lo: lo,
            range_hi: self.limit + 1,
            cursor: lo,
            params: self.params(),
            extremal: Vec::new(),
            count: 0,
            output_bytes: 0,
        }
    }

    fn header(&self) -> String {
        match (self.format, self.mode) {
            (RecordFormat::Csv, ScanMode::Exhaustive4) => {
                record::csv_header(&record::QUADRUPLE_COLUMNS)
            }
            (RecordFormat::Csv, _) => record::csv_header(&record::TRIPLE_COLUMNS),
            _ => String::new(),
        }
    }
}

/// Final or interrupted scan state; identical to the last checkpoint.
pub type ScanSummary = ScanCheckpoint;

/// How [`run_scan`] ended.
#[derive(Debug, Clone, PartialEq)]
pub enum ScanOutcome {
    Complete(ScanSummary),
    /// Stopped after the requested number of batches.
    Stopped(ScanSummary),
}

impl ScanOutcome {
    pub fn summary(&self) -> &ScanSummary {
        match self {
            ScanOutcome::Complete(s) | ScanOutcome::Stopped(s) => s,
        }
    }
}

enum Context {
    Table(RadicalTable),
    Smooth(SmoothSet),
    None,
}

struct Block {
    text: String,
    count: u64,
    extremal: Vec<ExtremalRecord>,
}

struct Driver<'a> {
    job: &'a ScanJob,
    ctx: Context,
    pool: rayon::ThreadPool,
}

impl<'a> Driver<'a> {
    fn new(job: &'a ScanJob) -> Result<Self, SearchError> {
        job.validate()?;
        let ctx = match job.mode {
            ScanMode::Exhaustive3 => Context::Table(RadicalTable::new(job.limit)?),
            ScanMode::Smooth3 => Context::Smooth(SmoothSet::new(job.smooth_bound, job.limit)?),
            ScanMode::Exhaustive4 => Context::None,
        };
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(job.workers)
            .build()
            .map_err(|e| SearchError::BadParameter(format!("thread pool: {e}")))?;
        Ok(Driver { job, ctx, pool })
    }

    /// The next batch of outer values at or after `cursor`, and the cursor
    /// after it.
    fn next_batch(&self, cursor: u64, hi: u64) -> (Vec<u64>, u64) {
        let batch = self.job.batch;
        match &self.ctx {
            Context::Smooth(s) => {
                let start = s.values().partition_point(|&v| v < cursor);
                let outers: Vec<u64> = s.values()[start..]
                    .iter()
                    .copied()
                    .take_while(|&v| v < hi)
                    .take(batch as usize)
                    .collect();
                let next = if (outers.len() as u64) < batch {
                    hi
                } else {
                    outers.last().map_or(hi, |&v| v + 1)
                };
                (outers, next)
            }
            _ => {
                let end = cursor.saturating_add(batch).min(hi);
                ((cursor..end).collect(), end)
            }
        }
    }

    fn block(&self, outer: u64) -> Result<Block, SearchError> {
        let mut b = Block {
            text: String::new(),
            count: 0,
            extremal: Vec::new(),
        };
        let (tau, format) = (self.job.tau, self.job.format);
        match &self.ctx {
            Context::Table(table) => {
                for (t, passes) in exhaustive_block(table, outer, tau) {
                    b.add_triple(&t, passes, tau, format);
                }
            }
            Context::Smooth(smooth) => {
                for t in smooth_block(smooth, outer)? {
                    let passes = bounds::gap_condition(t.a(), t.c(), tau);
                    b.add_triple(&t, passes, tau, format);
                }
            }
            Context::None => {
                for (q, passes) in quadruple_block(outer, tau) {
                    b.add_quadruple(&q, passes, tau, format);
                }
            }
        }
        Ok(b)
    }

    /// Renders the next batch, folds its statistics into `cp` and returns
    /// the text to append.
    fn run_batch(&self, cp: &mut ScanCheckpoint) -> Result<String, SearchError> {
        let (outers, next) = self.next_batch(cp.cursor, cp.range_hi);
        let blocks: Vec<Block> = self.pool.install(|| {
            outers
                .par_iter()
                .map(|&o| self.block(o))
                .collect::<Result<_, _>>()
        })?;
        let mut text = String::new();
        for b in blocks {
            text.push_str(&b.text);
            cp.count += b.count;
            for r in b.extremal {
                cp.offer(&r.stat, r.value, || r.instance);
            }
        }
        cp.cursor = next;
        cp.output_bytes += text.len() as u64;
        Ok(text)
    }
}

impl Block {
    fn add_triple(&mut self, t: &AbcTriple, passes: bool, tau: f64, format: RecordFormat) {
        let prelim = bounds::kappa_demand_thm1prelim(t);
        let cells: Cells = vec![
            ("a", Some(Cell::Text(t.a().to_string()))),
            ("b", Some(Cell::Text(t.b().to_string()))),
            ("c", Some(Cell::Text(t.c().to_string()))),
            ("rad_abc", Some(Cell::Text(t.rad_abc().to_string()))),
            ("rad_bc", Some(Cell::Text(t.rad_bc().to_string()))),
            ("quality", Some(Cell::Text(fmt_real(t.quality())))),
            ("passes_condition", Some(Cell::Bool(passes))),
            ("kappa_demand", Some(Cell::Text(fmt_real(prelim)))),
        ];
        record::render(format, &cells, &mut self.text);
        self.count += 1;

        let label = || t.to_string();
        offer(&mut self.extremal, STAT_MAX_QUALITY, t.quality(), label);
        offer(&mut self.extremal, STAT_KAPPA_THM1PRELIM, prelim, label);
        if passes {
            if let Ok(Some(k)) = bounds::kappa_demand_thm1(t, tau) {
                offer(&mut self.extremal, STAT_KAPPA_THM1, k, label);
            }
        }
    }

    fn add_quadruple(&mut self, q: &AbcdQuadruple, passes: bool, tau: f64, format: RecordFormat) {
        let demand = if passes {
            bounds::kappa_demand_abcd(q, tau).ok().flatten()
        } else {
            None
        };
        let int = |v: i64| Some(Cell::Text(v.to_string()));
        let [x1, x2, x3, x4] = q.xs();
        let mp = q.min_pair();
        let cells: Cells = vec![
            ("x1", int(x1)),
            ("x2", int(x2)),
            ("x3", int(x3)),
            ("x4", int(x4)),
            ("H", Some(Cell::Text(q.height().to_string()))),
            ("min_i", Some(Cell::Text(mp.i.to_string()))),
            ("min_j", Some(Cell::Text(mp.j.to_string()))),
            ("min_sum", Some(Cell::Text(mp.sum.to_string()))),
            ("R", Some(Cell::Text(q.radical().to_string()))),
            ("passes_hypothesis", Some(Cell::Bool(passes))),
            ("kappa_demand", demand.map(|k| Cell::Text(fmt_real(k)))),
        ];
        record::render(format, &cells, &mut self.text);
        self.count += 1;
        if let Some(k) = demand {
            offer(&mut self.extremal, STAT_KAPPA_ABCD, k, || q.to_string());
        }
    }
}

/// Runs `job` to completion, streaming records to `out`.
pub fn scan_to_writer<W: Write>(job: &ScanJob, out: &mut W) -> Result<ScanSummary, SearchError> {
    let driver = Driver::new(job)?;
    let mut cp = job.fresh_checkpoint();
    let header = job.header();
    out.write_all(header.as_bytes())?;
    cp.output_bytes = header.len() as u64;
    while !cp.is_done() {
        let text = driver.run_batch(&mut cp)?;
        out.write_all(text.as_bytes())?;
    }
    out.flush()?;
    Ok(cp)
}

/// Runs `job` writing records to the file `out`.
///
/// With a `checkpoint` path the state is saved after every batch. With
/// `resume` set and an existing checkpoint, the output file is cut back to
/// the checkpointed length and the scan continues from the cursor; the
/// result is byte-identical to an uninterrupted run. A missing checkpoint
/// starts a fresh scan. `stop_after` limits the number of batches run by
/// this call.
pub fn run_scan(
    job: &ScanJob,
    out: &Path,
    checkpoint: Option<&Path>,
    resume: bool,
    stop_after: Option<u64>,
) -> Result<ScanOutcome, SearchError> {
    let driver = Driver::new(job)?;
    let resumed = match checkpoint {
        Some(path) if resume && path.exists() => Some(ScanCheckpoint::load(path)?),
        _ => None,
    };

    let (mut file, mut cp) = match resumed {
        Some(cp) => {
            check_compatible(job, &cp)?;
            let mut file = OpenOptions::new().write(true).open(out)?;
            let len = file.metadata()?.len();
            if len < cp.output_bytes {
                return Err(SearchError::CheckpointMismatch(format!(
                    "output file has {len} bytes, checkpoint expects {}",
                    cp.output_bytes
                )));
            }
            file.set_len(cp.output_bytes)?;
            file.seek(SeekFrom::End(0))?;
            (file, cp)
        }
        None => {
            let mut file = fs::File::create(out)?;
            let mut cp = job.fresh_checkpoint();
            let header = job.header();
            file.write_all(header.as_bytes())?;
            cp.output_bytes = header.len() as u64;
            if let Some(path) = checkpoint {
                file.sync_data()?;
                cp.save(path)?;
            }
            (file, cp)
        }
    };

    let mut batches = 0u64;
    while !cp.is_done() {
        if stop_after.is_some_and(|n| batches >= n) {
            file.flush()?;
            return Ok(ScanOutcome::Stopped(cp));
        }
        let text = driver.run_batch(&mut cp)?;
        file.write_all(text.as_bytes())?;
        if let Some(path) = checkpoint {
            file.sync_data()?;
            cp.save(path)?;
        }
        batches += 1;
    }
    file.flush()?;
    Ok(ScanOutcome::Complete(cp))
}

fn check_compatible(job: &ScanJob, cp: &ScanCheckpoint) -> Result<(), SearchError> {
    let fresh = job.fresh_checkpoint();
    if cp.mode != fresh.mode {
        return Err(SearchError::CheckpointMismatch(format!(
            "mode {:?} vs {:?}",
            cp.mode, fresh.mode
        )));
    }
    if (cp.range_lo, cp.range_hi) != (fresh.range_lo, fresh.range_hi) {
        return Err(SearchError::CheckpointMismatch(format!(
            "range [{}, {}) vs [{}, {})",
            cp.range_lo, cp.range_hi, fresh.range_lo, fresh.range_hi
        )));
    }
    if cp.params != fresh.params {
        return Err(SearchError::CheckpointMismatch(format!(
            "params {:?} vs {:?}",
            cp.params, fresh.params
        )));
    }
    Ok(())
}
