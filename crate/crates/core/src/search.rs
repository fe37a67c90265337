//! Exhaustive filtered search over free trees with a JSONL catalog and a
//! resumable cursor.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::IntPoly;
use crate::reduction::pendant_report;
use crate::spectra::{nullity_matching, TreeSpectrum};
use crate::tree::{CanonicalCode, EnumerationCursor, FreeTrees, Shard, Tree, TreeError};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("cursor file {path} is unusable ({reason}); delete it to start over or point --resume elsewhere")]
    CorruptCursor { path: PathBuf, reason: String },
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> SearchError + '_ {
    move |source| SearchError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Where and when a record was found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discovery {
    pub order_cap: usize,
    pub shard: Shard,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

/// One catalogued tree. Everything except `discovery` is a function of
/// `code`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub code: CanonicalCode,
    pub order: usize,
    pub nullity: usize,
    pub integral: bool,
    /// `[eigenvalue, multiplicity]`, largest eigenvalue first.
    pub spectrum: Vec<(i64, usize)>,
    /// Factor of the characteristic polynomial without integer roots.
    pub residual: IntPoly,
    pub char_poly: IntPoly,
    pub discovery: Discovery,
}

impl CatalogRecord {
    pub fn new(tree: &Tree, discovery: Discovery) -> Self {
        Self::from_spectrum(TreeSpectrum::of(tree), discovery)
    }

    fn from_spectrum(s: TreeSpectrum, discovery: Discovery) -> Self {
        let spectrum = s
            .summary
            .integer_roots
            .iter()
            .rev()
            .map(|(k, &m)| (k.to_i64().expect("tree eigenvalues are small"), m))
            .collect();
        CatalogRecord {
            order: s.code.order(),
            nullity: s.nullity,
            integral: s.summary.is_integral,
            spectrum,
            residual: s.summary.residual,
            char_poly: s.char_poly,
            code: s.code,
            discovery,
        }
    }

    /// Recomputes every derived field from the code and compares.
    pub fn verify(&self) -> bool {
        match Tree::from_code(&self.code) {
            Ok(t) => {
                let again = CatalogRecord::new(&t, self.discovery.clone());
                again == *self
            }
            Err(_) => false,
        }
    }
}

/// Which trees a search keeps.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Filter {
    pub nullity: Option<usize>,
    pub integral_only: bool,
    pub reduced_only: bool,
}

impl Filter {
    /// Cheap structural tests first; the characteristic polynomial is only
    /// computed for survivors.
    pub fn evaluate(
        &self,
        tree: &Tree,
        discovery: impl FnOnce() -> Discovery,
    ) -> Option<CatalogRecord> {
        if let Some(h) = self.nullity {
            if h % 2 != tree.order() % 2 || nullity_matching(tree) != h {
                return None;
            }
        }
        if self.reduced_only && !pendant_report(tree).is_reduced {
            return None;
        }
        let spectrum = TreeSpectrum::of(tree);
        if self.integral_only && !spectrum.is_integral() {
            return None;
        }
        Some(CatalogRecord::from_spectrum(spectrum, discovery()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub min_order: usize,
    pub max_order: usize,
    pub filter: Filter,
    pub shard: Shard,
    pub out: Option<PathBuf>,
    pub resume: Option<PathBuf>,
    /// Trees enumerated between cursor writes.
    pub checkpoint_every: u64,
    /// Stop (after writing the cursor) once this many trees have been
    /// examined in total.
    pub stop_after: Option<u64>,
}

impl SearchConfig {
    pub const DEFAULT_CHECKPOINT: u64 = 100_000;

    pub fn new(max_order: usize) -> Self {
        SearchConfig {
            min_order: 1,
            max_order,
            filter: Filter::default(),
            shard: Shard::whole(),
            out: None,
            resume: None,
            checkpoint_every: Self::DEFAULT_CHECKPOINT,
            stop_after: None,
        }
    }

    fn validate(&self) -> Result<(), SearchError> {
        if self.max_order == 0 || self.min_order == 0 || self.min_order > self.max_order {
            return Err(SearchError::InvalidConfig(format!(
                "order range {}..={} is empty",
                self.min_order, self.max_order
            )));
        }
        Shard::new(self.shard.index, self.shard.count)?;
        if self.checkpoint_every == 0 {
            return Err(SearchError::InvalidConfig(
                "checkpoint interval must be positive".into(),
            ));
        }
        if self.resume.is_some() && self.out.is_none() {
            return Err(SearchError::InvalidConfig(
                "resuming requires an output file".into(),
            ));
        }
        Ok(())
    }
}

/// Persisted search position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCursor {
    pub min_order: usize,
    pub max_order: usize,
    pub filter: Filter,
    pub shard: Shard,
    /// Position inside the order currently being enumerated.
    pub enumeration: EnumerationCursor,
    /// Bytes of the output file covered by this cursor.
    pub out_len: u64,
    pub found: BTreeMap<usize, u64>,
    pub examined: u64,
    pub done: bool,
}

impl SearchCursor {
    fn fresh(config: &SearchConfig) -> Result<Self, SearchError> {
        Ok(SearchCursor {
            min_order: config.min_order,
            max_order: config.max_order,
            filter: config.filter.clone(),
            shard: config.shard,
            enumeration: EnumerationCursor::start(config.min_order, config.shard)?,
            out_len: 0,
            found: BTreeMap::new(),
            examined: 0,
            done: false,
        })
    }

    pub fn load(path: &Path) -> Result<Self, SearchError> {
        let text = fs::read_to_string(path).map_err(|e| SearchError::CorruptCursor {
            path: path.to_path_buf(),
            reason: e.to_string(),
        })?;
        let cursor: SearchCursor =
            serde_json::from_str(&text).map_err(|e| SearchError::CorruptCursor {
                path: path.to_path_buf(),
                reason: e.to_string(),
            })?;
        FreeTrees::resume(cursor.enumeration.clone()).map_err(|e| SearchError::CorruptCursor {
            path: path.to_path_buf(),
            reason: e.to_string(),
        })?;
        Ok(cursor)
    }

    /// Writes to a sibling temporary file and renames it into place.
    pub fn store(&self, path: &Path) -> Result<(), SearchError> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        let text = serde_json::to_string_pretty(self).expect("cursor serializes");
        fs::write(&tmp, text).map_err(io_err(&tmp))?;
        fs::rename(&tmp, path).map_err(io_err(path))
    }

    fn matches(&self, config: &SearchConfig) -> bool {
        self.min_order == config.min_order
            && self.max_order == config.max_order
            && self.filter == config.filter
            && self.shard == config.shard
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    /// Records written per order (including those from before a resume).
    pub found: BTreeMap<usize, u64>,
    pub examined: u64,
}

fn now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Runs a single-shard search, streaming records as JSON lines to the
/// configured output file, or to `fallback` when there is none.
///
/// With a resume path, an existing cursor file is loaded (the output is
/// truncated back to the length it recorded, so nothing is emitted twice)
/// and the cursor is rewritten every `checkpoint_every` trees and at the
/// end.
pub fn run_search(
    config: &SearchConfig,
    fallback: &mut dyn Write,
) -> Result<SearchSummary, SearchError> {
    config.validate()?;
    let mut cursor = match &config.resume {
        Some(path) if path.exists() => {
            let c = SearchCursor::load(path)?;
            if !c.matches(config) {
                return Err(SearchError::CorruptCursor {
                    path: path.clone(),
                    reason: "cursor was written by a search with different settings".into(),
                });
            }
            c
        }
        _ => SearchCursor::fresh(config)?,
    };
    let mut file_sink;
    let sink: &mut dyn Write = match &config.out {
        Some(path) => {
            let file = open_output(path, config.resume.is_some().then_some(cursor.out_len))?;
            file_sink = BufWriter::new(file);
            &mut file_sink
        }
        None => fallback,
    };
    let out_path = config
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("<stdout>"));
    let mut since_checkpoint = 0u64;
    while !cursor.done {
        let mut trees = FreeTrees::resume(cursor.enumeration.clone())?;
        while let Some(layout) = trees.next_layout() {
            let tree = Tree::from_level_sequence(&layout)?;
            let discovery = || Discovery {
                order_cap: config.max_order,
                shard: config.shard,
                timestamp: now(),
            };
            if let Some(record) = config.filter.evaluate(&tree, discovery) {
                let mut line = serde_json::to_string(&record).expect("record serializes");
                line.push('\n');
                sink.write_all(line.as_bytes()).map_err(io_err(&out_path))?;
                cursor.out_len += line.len() as u64;
                *cursor.found.entry(record.order).or_default() += 1;
            }
            cursor.examined += 1;
            since_checkpoint += 1;
            cursor.enumeration = trees.cursor().clone();
            if since_checkpoint >= config.checkpoint_every {
                since_checkpoint = 0;
                checkpoint(config, &cursor, sink, &out_path)?;
            }
            if config
                .stop_after
                .is_some_and(|limit| cursor.examined >= limit)
            {
                checkpoint(config, &cursor, sink, &out_path)?;
                return Ok(SearchSummary {
                    found: cursor.found,
                    examined: cursor.examined,
                });
            }
        }
        let order = cursor.enumeration.order;
        if order >= config.max_order {
            cursor.done = true;
        } else {
            cursor.enumeration = EnumerationCursor::start(order + 1, config.shard)?;
        }
    }
    checkpoint(config, &cursor, sink, &out_path)?;
    Ok(SearchSummary {
        found: cursor.found,
        examined: cursor.examined,
    })
}

fn checkpoint(
    config: &SearchConfig,
    cursor: &SearchCursor,
    sink: &mut dyn Write,
    out_path: &Path,
) -> Result<(), SearchError> {
    sink.flush().map_err(io_err(out_path))?;
    if let Some(path) = &config.resume {
        cursor.store(path)?;
    }
    Ok(())
}

fn open_output(path: &Path, keep: Option<u64>) -> Result<File, SearchError> {
    match keep {
        Some(len) if path.exists() => {
            let file = OpenOptions::new()
                .write(true)
                .open(path)
                .map_err(io_err(path))?;
            let actual = file.metadata().map_err(io_err(path))?.len();
            if actual < len {
                return Err(SearchError::CorruptCursor {
                    path: path.to_path_buf(),
                    reason: format!("output holds {actual} bytes but the cursor covers {len}"),
                });
            }
            file.set_len(len).map_err(io_err(path))?;
            drop(file);
            OpenOptions::new()
                .append(true)
                .open(path)
                .map_err(io_err(path))
        }
        _ => File::create(path).map_err(io_err(path)),
    }
}

/// All trees of order `min_order..=max_order` passing `filter`, computed in
/// parallel over `shards` shards and returned sorted by order and then by
/// canonical code (descending), so the result does not depend on the shard
/// count.
pub fn collect_matching(
    min_order: usize,
    max_order: usize,
    filter: &Filter,
    shards: usize,
) -> Result<Vec<CatalogRecord>, TreeError> {
    let shards = shards.max(1);
    let jobs: Vec<(usize, Shard)> = (min_order.max(1)..=max_order)
        .flat_map(|n| {
            (0..shards).map(move |i| {
                (
                    n,
                    Shard {
                        index: i,
                        count: shards,
                    },
                )
            })
        })
        .collect();
    let parts: Result<Vec<Vec<CatalogRecord>>, TreeError> = jobs
        .into_par_iter()
        .map(|(n, shard)| {
            let trees = crate::tree::enumerate_free_trees(n, Some(shard))?;
            Ok(trees
                .filter_map(|t| {
                    filter.evaluate(&t, || Discovery {
                        order_cap: max_order,
                        shard,
                        timestamp: 0,
                    })
                })
                .collect())
        })
        .collect();
    let mut all: Vec<CatalogRecord> = parts?.into_iter().flatten().collect();
    for r in &mut all {
        r.discovery.shard = Shard::whole();
    }
    all.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| b.code.cmp(&a.code)));
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{path, star};

    fn integral(max: usize) -> SearchConfig {
        let mut c = SearchConfig::new(max);
        c.filter.integral_only = true;
        c
    }

    fn codes(text: &str) -> Vec<String> {
        text.lines()
            .map(|l| {
                serde_json::from_str::<CatalogRecord>(l)
                    .unwrap()
                    .code
                    .to_string()
            })
            .collect()
    }

    #[test]
    fn record_roundtrip() {
        let r = CatalogRecord::new(
            &star(4),
            Discovery {
                order_cap: 5,
                shard: Shard::whole(),
                timestamp: 0,
            },
        );
        assert_eq!(r.spectrum, vec![(2, 1), (0, 3), (-2, 1)]);
        assert!(r.verify());
        let back: CatalogRecord =
            serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
        let mut forged = r.clone();
        forged.nullity = 1;
        assert!(!forged.verify());
    }

    #[test]
    fn integral_orders_up_to_ten() {
        let mut buf = Vec::new();
        let summary = run_search(&integral(10), &mut buf).unwrap();
        let orders: Vec<usize> = summary.found.keys().copied().collect();
        assert_eq!(orders, vec![1, 2, 5, 6, 7, 10]);
        assert_eq!(summary.examined, 1 + 1 + 1 + 2 + 3 + 6 + 11 + 23 + 47 + 106);
        assert_eq!(
            codes(std::str::from_utf8(&buf).unwrap()).len() as u64,
            summary.found.values().sum::<u64>()
        );
    }

    #[test]
    fn shard_count_does_not_change_results() {
        let filter = Filter {
            integral_only: true,
            ..Filter::default()
        };
        let one = collect_matching(1, 11, &filter, 1).unwrap();
        let four = collect_matching(1, 11, &filter, 4).unwrap();
        assert_eq!(one, four);
        assert!(one.iter().any(|r| r.code == *path(2).canonical_code()));
    }

    #[test]
    fn resume_continues_without_duplicates() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("cat.jsonl");
        let cursor = dir.path().join("cursor.json");
        let mut plain = SearchConfig::new(11);
        plain.filter.nullity = Some(1);
        let mut full = Vec::new();
        run_search(&plain, &mut full).unwrap();

        let mut config = plain.clone();
        config.out = Some(out.clone());
        config.resume = Some(cursor.clone());
        config.checkpoint_every = 7;
        config.stop_after = Some(150);
        run_search(&config, &mut io::sink()).unwrap();
        let saved = SearchCursor::load(&cursor).unwrap();
        assert!(!saved.done);
        assert_eq!(saved.examined, 150);
        // output written after the last checkpoint must be discarded
        fs::OpenOptions::new()
            .append(true)
            .open(&out)
            .unwrap()
            .write_all(b"{\"partial\":")
            .unwrap();
        config.stop_after = None;
        let summary = run_search(&config, &mut io::sink()).unwrap();
        let resumed = fs::read_to_string(&out).unwrap();
        assert_eq!(codes(&resumed), codes(std::str::from_utf8(&full).unwrap()));
        assert_eq!(
            summary.found.values().sum::<u64>() as usize,
            codes(&resumed).len()
        );
        assert!(SearchCursor::load(&cursor).unwrap().done);
        // a finished cursor resumes to nothing new
        run_search(&config, &mut io::sink()).unwrap();
        assert_eq!(fs::read_to_string(&out).unwrap(), resumed);
    }

    #[test]
    fn corrupt_cursor_is_refused() {
        let dir = tempfile::tempdir().unwrap();
        let cursor = dir.path().join("cursor.json");
        fs::write(&cursor, "{not json").unwrap();
        let mut config = integral(6);
        config.out = Some(dir.path().join("o.jsonl"));
        config.resume = Some(cursor.clone());
        assert!(matches!(
            run_search(&config, &mut io::sink()),
            Err(SearchError::CorruptCursor { .. })
        ));
        let mut other = integral(7);
        other.out = config.out.clone();
        other.resume = Some(dir.path().join("c2.json"));
        run_search(&other, &mut io::sink()).unwrap();
        let mut changed = integral(8);
        changed.out = config.out.clone();
        changed.resume = other.resume.clone();
        assert!(matches!(
            run_search(&changed, &mut io::sink()),
            Err(SearchError::CorruptCursor { .. })
        ));
    }

    #[test]
    fn invalid_configs() {
        assert!(run_search(&SearchConfig::new(0), &mut io::sink()).is_err());
        let mut c = SearchConfig::new(4);
        c.resume = Some(PathBuf::from("x"));
        assert!(matches!(
            run_search(&c, &mut io::sink()),
            Err(SearchError::InvalidConfig(_))
        ));
    }
}
