//! A memoizing, thread-safe word evaluator.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use mcgcert_core::chart::CurveChart;
use mcgcert_core::rep::{Evaluator, RepError, RepImage, WordEval};
use mcgcert_core::word::MappingWord;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub lookups: u64,
    pub hits: u64,
    pub entries: u64,
}

/// Images keyed by `(chart fingerprint, word)`.
///
/// Two threads racing on the same word may both evaluate it, so hits are
/// counted as `lookups - entries` at read time. That number depends only
/// on which words were requested, not on scheduling.
pub struct CachedEval<'a> {
    inner: Evaluator<'a>,
    fingerprint: u64,
    memo: Mutex<HashMap<(u64, MappingWord), RepImage>>,
    lookups: AtomicU64,
}

impl<'a> CachedEval<'a> {
    pub fn new(chart: &'a CurveChart) -> Self {
        Self {
            inner: Evaluator::new(chart),
            fingerprint: chart.fingerprint(),
            memo: Mutex::new(HashMap::new()),
            lookups: AtomicU64::new(0),
        }
    }

    pub fn stats(&self) -> CacheStats {
        let lookups = self.lookups.load(Ordering::Relaxed);
        let entries = self.memo.lock().expect("cache lock poisoned").len() as u64;
        CacheStats {
            lookups,
            hits: lookups.saturating_sub(entries),
            entries,
        }
    }
}

impl WordEval for CachedEval<'_> {
    fn chart(&self) -> &CurveChart {
        self.inner.chart()
    }

    fn eval(&self, w: &MappingWord) -> Result<RepImage, RepError> {
        self.lookups.fetch_add(1, Ordering::Relaxed);
        let key = (self.fingerprint, w.clone());
        if let Some(img) = self.memo.lock().expect("cache lock poisoned").get(&key) {
            return Ok(img.clone());
        }
        // Errors are not cached; they are cheap to reproduce.
        let img = self.inner.word(w)?;
        self.memo.lock().expect("cache lock poisoned").entry(key).or_insert_with(|| img.clone());
        Ok(img)
    }
}
