//! Parallel execution of the verification suite.

use mcgcert_core::chart::CurveChart;
use mcgcert_core::suite::{assemble, census, certificates, pi_report, plan, run_check, VerificationReport};
use rayon::prelude::*;

use crate::cache::{CacheStats, CachedEval};

pub const WORKERS_ENV: &str = "MCGCERT_WORKERS";

/// Worker count from `MCGCERT_WORKERS`, or the machine's parallelism.
pub fn worker_count() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub report: VerificationReport,
    pub cache: CacheStats,
    pub workers: usize,
}

pub fn run_parallel(chart: &CurveChart, workers: usize) -> RunOutcome {
    let workers = workers.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    let ev = CachedEval::new(chart);
    let certs = certificates(chart);
    let specs = plan(chart, &certs);
    let checks = pool.install(|| specs.par_iter().map(|s| run_check(&ev, s)).collect());
    let census = census(&chart.params, certs.as_deref().unwrap_or(&[]));
    let report = assemble(chart.params, checks, census, pi_report(&ev));
    RunOutcome {
        report,
        cache: ev.stats(),
        workers,
    }
}

pub fn run(chart: &CurveChart) -> RunOutcome {
    run_parallel(chart, worker_count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use mcgcert_core::chart::default_chart;
    use mcgcert_core::params::SurfaceParams;
    use mcgcert_core::suite::run_suite;

    #[test]
    fn parallel_matches_sequential() {
        let chart = default_chart(&SurfaceParams::new(16, 4).unwrap()).unwrap();
        let seq = run_suite(&chart);
        let a = run_parallel(&chart, 4);
        let b = run_parallel(&chart, 1);
        assert_eq!(a.report, seq);
        assert_eq!(b.report, seq);
        assert_eq!(a.cache, b.cache);
        assert!(a.cache.hits > 0);
    }
}
