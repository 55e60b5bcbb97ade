//! Multi-worker driver for the flat-graph search. Enumeration stays
//! single-threaded (it is cheap relative to the solves); the per-graph
//! pruning and curvature work is fanned out in chunks and the results are
//! merged back in certificate order, so the outcome is identical for every
//! worker count.

use std::sync::mpsc;
use std::thread;

use ricciflat_core::curvature;
use ricciflat_core::search::{
    self, FlatSearchOutcome, PruneDecision, SearchConfig, SearchError, AUDIT_SAMPLE,
};

/// Parallel variant of [`search::find_ricci_flat`]; `workers = 1` falls back
/// to the sequential engine path.
pub fn find_ricci_flat_parallel(
    config: &SearchConfig,
    workers: usize,
) -> Result<FlatSearchOutcome, SearchError> {
    if workers <= 1 {
        return search::find_ricci_flat(config);
    }
    let listed = search::enumerate_compact(config)?;
    let enumerated = listed.len();
    let chunk = listed.len().div_ceil(workers).max(1);
    let (tx, rx) = mpsc::channel();
    thread::scope(|scope| {
        for (widx, slice) in listed.chunks(chunk).enumerate() {
            let tx = tx.clone();
            let config = config.clone();
            scope.spawn(move || {
                let mut flats = Vec::new();
                let mut pruned_graphs = Vec::new();
                let mut result: Result<(), SearchError> = Ok(());
                for (cert, small) in slice {
                    let g = small.to_graph();
                    if g.n() < 2 {
                        continue;
                    }
                    if config.prune_rules {
                        if let PruneDecision::Cut(_) = search::lemma_prune(&g) {
                            pruned_graphs.push((cert.clone(), g));
                            continue;
                        }
                    }
                    match curvature::is_ricci_flat(&g) {
                        Ok(flat) if flat.flat => flats.push((cert.clone(), g)),
                        Ok(_) => {}
                        Err(e) => {
                            result = Err(e.into());
                            break;
                        }
                    }
                }
                tx.send((widx, flats, pruned_graphs, result)).expect("collector alive");
            });
        }
        drop(tx);
        let mut parts: Vec<_> = rx.into_iter().collect();
        parts.sort_by_key(|(widx, ..)| *widx);

        let mut outcome = FlatSearchOutcome { enumerated, ..Default::default() };
        let mut all_pruned = Vec::new();
        for (_, flats, pruned, result) in parts {
            result?;
            all_pruned.extend(pruned);
            for (cert, g) in flats {
                outcome.hits.push(search::examine_hit(g, cert)?);
            }
        }
        outcome.pruned = all_pruned.len();
        outcome.hits.sort_by(|a, b| {
            (a.graph.n(), &a.certificate).cmp(&(b.graph.n(), &b.certificate))
        });
        if config.audit_prunes {
            for (cert, g) in all_pruned.into_iter().take(AUDIT_SAMPLE) {
                outcome.audited += 1;
                if curvature::is_ricci_flat(&g)?.flat {
                    outcome.audit_failures.push(cert);
                }
            }
        }
        Ok(outcome)
    })
}
