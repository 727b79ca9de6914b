//! Minimality search over a class: enumerate candidates, prune by Perron
//! dominance, exclude non-class candidates with exact root-location
//! certificates, compare certified enclosures, and emit a re-checkable
//! report.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::classes::{
    enumerate_candidates, root_location_filter, CandidateVector, ClassSpec,
    RootLocationCertificate, EXHAUSTIVE_DEGREE_CAP,
};
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::rational::{format_rational, parse_rational, rat};
use crate::roots::{compare, largest_root_enclosure, Comparison, EnclosureJson, RootEnclosure};

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub prune: bool,
    pub threads: usize,
    pub tol: BigRational,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            prune: true,
            threads: 1,
            tol: default_tol(),
        }
    }
}

pub fn default_tol() -> BigRational {
    parse_rational("1e-12").expect("literal")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PruneEntry {
    pub skipped: CandidateVector,
    /// A strictly dominated class member; Perron dominance certifies the
    /// skipped candidate's spectral radius strictly exceeds the witness's.
    pub witness: CandidateVector,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExclusionEntry {
    pub candidate: CandidateVector,
    pub certificate: RootLocationCertificate,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunnerUp {
    pub poly: IntPoly,
    pub enclosure: EnclosureJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchReport {
    pub spec: ClassSpec,
    pub degree: usize,
    pub no_prune: bool,
    pub tol: String,
    pub enumerated: usize,
    pub pruned_by_dominance: usize,
    pub root_location_excluded: usize,
    pub evaluated: usize,
    pub minimizer: IntPoly,
    pub enclosure: EnclosureJson,
    pub tie: bool,
    pub co_minimal: Vec<IntPoly>,
    /// gcd polynomials witnessing each co-minimal shared root.
    pub tie_proof: Vec<IntPoly>,
    pub runner_up: Option<RunnerUp>,
    pub pruning_log: Vec<PruneEntry>,
    pub exclusion_log: Vec<ExclusionEntry>,
}

/// Per-candidate filter memo shared within one search run.
struct FilterCache<'a> {
    candidates: &'a [CandidateVector],
    family: crate::classes::Family,
    memo: BTreeMap<usize, RootLocationCertificate>,
}

impl<'a> FilterCache<'a> {
    fn new(candidates: &'a [CandidateVector], family: crate::classes::Family) -> Self {
        FilterCache {
            candidates,
            family,
            memo: BTreeMap::new(),
        }
    }

    fn get(&mut self, idx: usize) -> Result<&RootLocationCertificate> {
        if !self.memo.contains_key(&idx) {
            let cert = root_location_filter(&self.candidates[idx].poly(), self.family)?;
            self.memo.insert(idx, cert);
        }
        Ok(&self.memo[&idx])
    }

    fn passes(&mut self, idx: usize) -> Result<bool> {
        Ok(self.get(idx)?.pass)
    }
}

fn coarse_tol() -> BigRational {
    rat(1, 1024)
}

/// Sequential lazy tournament: returns the index of the smallest
/// filter-passing candidate (lex-smallest on shared roots), or None.
fn tournament(
    indices: &[usize],
    candidates: &[CandidateVector],
    cache: &mut FilterCache,
) -> Result<Option<usize>> {
    let mut best: Option<(usize, RootEnclosure)> = None;
    for &idx in indices {
        match best.as_mut() {
            None => {
                if cache.passes(idx)? {
                    let enc = largest_root_enclosure(&candidates[idx].poly(), &coarse_tol())?;
                    best = Some((idx, enc));
                }
            }
            Some((best_idx, best_enc)) => {
                let mut enc = largest_root_enclosure(&candidates[idx].poly(), &coarse_tol())?;
                match compare(&mut enc, best_enc) {
                    Comparison::Greater => {}
                    Comparison::Less => {
                        if cache.passes(idx)? {
                            *best_idx = idx;
                            *best_enc = enc;
                        }
                    }
                    Comparison::SharedRoot => {
                        // lex order of processing keeps the smaller index
                        let _ = cache.passes(idx)?;
                    }
                }
            }
        }
    }
    Ok(best.map(|(idx, _)| idx))
}

/// Chunked parallel wrapper around the tournament; the winner is invariant
/// to the chunking, so any thread count yields the same result.
fn parallel_min(
    indices: &[usize],
    candidates: &[CandidateVector],
    family: crate::classes::Family,
    threads: usize,
) -> Result<Option<usize>> {
    if threads <= 1 || indices.len() < 2 * threads {
        let mut cache = FilterCache::new(candidates, family);
        return tournament(indices, candidates, &mut cache);
    }
    let chunk_size = indices.len().div_ceil(threads);
    let chunk_results: Vec<Result<Option<usize>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = indices
            .chunks(chunk_size)
            .map(|chunk| {
                scope.spawn(move || {
                    let mut cache = FilterCache::new(candidates, family);
                    tournament(chunk, candidates, &mut cache)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker")).collect()
    });
    let mut winners = Vec::new();
    for r in chunk_results {
        if let Some(idx) = r? {
            winners.push(idx);
        }
    }
    if winners.is_empty() {
        return Ok(None);
    }
    winners.sort_unstable();
    let mut cache = FilterCache::new(candidates, family);
    tournament(&winners, candidates, &mut cache)
}

/// Certified minimality search. The minimizer is the class member with the
/// certified-smallest dominant root among all enumerated candidates; every
/// candidate below it in root order carries an exact exclusion certificate,
/// and every dominance skip carries its witness.
pub fn search_min(spec: &ClassSpec, opts: &SearchOptions) -> Result<SearchReport> {
    let degree = spec.degree();
    if degree > EXHAUSTIVE_DEGREE_CAP {
        return Err(Error::InvalidParameter(format!(
            "degree {degree} exceeds the exhaustive cap {EXHAUSTIVE_DEGREE_CAP}"
        )));
    }
    let candidates = enumerate_candidates(spec);
    let enumerated = candidates.len();
    if enumerated == 0 {
        return Err(Error::EmptyClass);
    }
    let family = spec.family;
    let mut cache = FilterCache::new(&candidates, family);

    // Dominance pruning: skip any candidate that strictly dominates a class
    // member (Perron: strictly larger spectral radius). Witnesses must pass
    // the root-location filter to be class members.
    let mut pruned = vec![false; enumerated];
    let mut pruning_log = Vec::new();
    if opts.prune {
        for idx in 0..enumerated {
            for w in 0..enumerated {
                if w == idx || !candidates[idx].dominates(&candidates[w]) {
                    continue;
                }
                if cache.passes(w)? {
                    pruned[idx] = true;
                    pruning_log.push(PruneEntry {
                        skipped: candidates[idx].clone(),
                        witness: candidates[w].clone(),
                    });
                    break;
                }
            }
        }
    }
    let surviving: Vec<usize> = (0..enumerated).filter(|&i| !pruned[i]).collect();
    let pruned_by_dominance = enumerated - surviving.len();

    let best_idx = parallel_min(&surviving, &candidates, family, opts.threads)?
        .ok_or(Error::EmptyClass)?;
    let best_poly = candidates[best_idx].poly();

    // Deterministic justification pass against the final best: orders every
    // surviving candidate, collects exact exclusion certificates below the
    // winner and shared-root ties at it.
    let mut work_best = largest_root_enclosure(&best_poly, &coarse_tol())?;
    let mut co_minimal = Vec::new();
    let mut tie_proof = Vec::new();
    let mut exclusions: BTreeMap<usize, RootLocationCertificate> = BTreeMap::new();
    let mut greater_pool = Vec::new();
    for &idx in &surviving {
        if idx == best_idx {
            continue;
        }
        let mut enc = largest_root_enclosure(&candidates[idx].poly(), &coarse_tol())?;
        match compare(&mut enc, &mut work_best) {
            Comparison::Greater => greater_pool.push(idx),
            Comparison::Less => {
                let cert = cache.get(idx)?.clone();
                assert!(
                    !cert.pass,
                    "tournament missed a smaller class member {}",
                    candidates[idx].poly()
                );
                exclusions.insert(idx, cert);
            }
            Comparison::SharedRoot => {
                let cert = cache.get(idx)?.clone();
                if cert.pass {
                    co_minimal.push(candidates[idx].poly());
                    tie_proof.push(best_poly.gcd(&candidates[idx].poly()));
                } else {
                    exclusions.insert(idx, cert);
                }
            }
        }
    }

    // Runner-up: smallest class member strictly above the winner.
    let mut runner_idx: Option<(usize, RootEnclosure)> = None;
    for &idx in &greater_pool {
        match runner_idx.as_mut() {
            None => {
                if cache.passes(idx)? {
                    let enc = largest_root_enclosure(&candidates[idx].poly(), &coarse_tol())?;
                    runner_idx = Some((idx, enc));
                } else {
                    exclusions.insert(idx, cache.get(idx)?.clone());
                }
            }
            Some((r_idx, r_enc)) => {
                let mut enc = largest_root_enclosure(&candidates[idx].poly(), &coarse_tol())?;
                match compare(&mut enc, r_enc) {
                    Comparison::Greater => {}
                    Comparison::Less => {
                        if cache.passes(idx)? {
                            *r_idx = idx;
                            *r_enc = enc;
                        } else {
                            exclusions.insert(idx, cache.get(idx)?.clone());
                        }
                    }
                    Comparison::SharedRoot => {}
                }
            }
        }
    }

    // Canonical enclosures for the report, recomputed on a fixed schedule so
    // the serialized report is independent of scheduling and thread count.
    let mut best_enc = largest_root_enclosure(&best_poly, &opts.tol)?;
    let runner_up = match runner_idx {
        None => None,
        Some((idx, _)) => {
            let poly = candidates[idx].poly();
            let mut enc = largest_root_enclosure(&poly, &opts.tol)?;
            while best_enc.hi() >= enc.lo() {
                best_enc.bisect_step();
                enc.bisect_step();
            }
            Some(RunnerUp {
                enclosure: EnclosureJson::from(&enc),
                poly,
            })
        }
    };

    let exclusion_log: Vec<ExclusionEntry> = exclusions
        .into_iter()
        .map(|(idx, certificate)| ExclusionEntry {
            candidate: candidates[idx].clone(),
            certificate,
        })
        .collect();

    Ok(SearchReport {
        spec: spec.clone(),
        degree,
        no_prune: !opts.prune,
        tol: format_rational(&opts.tol),
        enumerated,
        pruned_by_dominance,
        root_location_excluded: exclusion_log.len(),
        evaluated: surviving.len(),
        minimizer: best_poly,
        enclosure: EnclosureJson::from(&best_enc),
        tie: !co_minimal.is_empty(),
        co_minimal,
        tie_proof,
        runner_up,
        pruning_log,
        exclusion_log,
    })
}

/// Re-validates a report from scratch: re-enumerates, re-runs the search with
/// pruning disabled, re-checks the enclosure sign certificates, every
/// dominance witness, and every exclusion certificate. Returns the verdict
/// with a discrepancy log.
pub fn certify(report: &SearchReport) -> (bool, Vec<String>) {
    let mut log = Vec::new();
    let spec = &report.spec;
    let candidates = enumerate_candidates(spec);
    if candidates.len() != report.enumerated {
        log.push(format!(
            "enumerated count mismatch: report {} vs {}",
            report.enumerated,
            candidates.len()
        ));
    }
    if !candidates.iter().any(|c| c.poly() == report.minimizer) {
        log.push(format!(
            "minimizer {} is not an enumerated candidate",
            report.minimizer
        ));
    }

    let tol = match parse_rational(&report.tol) {
        Ok(t) => t,
        Err(e) => {
            log.push(format!("bad tol in report: {e}"));
            default_tol()
        }
    };
    let rerun = search_min(
        spec,
        &SearchOptions {
            prune: false,
            threads: 1,
            tol,
        },
    );
    match rerun {
        Err(e) => log.push(format!("re-execution failed: {e}")),
        Ok(fresh) => {
            if fresh.minimizer != report.minimizer {
                log.push(format!(
                    "minimizer mismatch: report {} vs re-run {}",
                    report.minimizer, fresh.minimizer
                ));
            }
            if fresh.tie != report.tie || fresh.co_minimal != report.co_minimal {
                log.push("tie set mismatch against re-run".into());
            }
            if report.no_prune {
                let a = report.runner_up.as_ref().map(|r| &r.poly);
                let b = fresh.runner_up.as_ref().map(|r| &r.poly);
                if a != b {
                    log.push("runner-up mismatch against re-run".into());
                }
            }
        }
    }

    // enclosure sign certificates, exactly
    match (
        parse_rational(&report.enclosure.lo),
        parse_rational(&report.enclosure.hi),
    ) {
        (Ok(lo), Ok(hi)) => {
            let p = &report.minimizer;
            if !(p.sign_at(&lo) < 0 && p.sign_at(&hi) > 0 && lo >= rat(1, 1) && lo < hi) {
                log.push("enclosure sign certificates do not hold".into());
            }
        }
        _ => log.push("unparseable enclosure endpoints".into()),
    }

    for entry in &report.pruning_log {
        if !entry.skipped.dominates(&entry.witness) {
            log.push(format!(
                "pruning witness does not satisfy dominance for {:?}",
                entry.skipped.a
            ));
        }
        if !candidates.contains(&entry.witness) || !candidates.contains(&entry.skipped) {
            log.push(format!("pruning entry outside the enumerated set: {:?}", entry.skipped.a));
        }
        match root_location_filter(&entry.witness.poly(), spec.family) {
            Ok(cert) if cert.pass => {}
            Ok(_) => log.push(format!(
                "pruning witness {:?} is not a class member",
                entry.witness.a
            )),
            Err(e) => log.push(format!("witness filter failed: {e}")),
        }
    }

    for entry in &report.exclusion_log {
        match root_location_filter(&entry.candidate.poly(), spec.family) {
            Ok(cert) => {
                if cert.pass {
                    log.push(format!(
                        "exclusion certificate refuted for {:?}",
                        entry.candidate.a
                    ));
                }
            }
            Err(e) => log.push(format!("exclusion re-check failed: {e}")),
        }
    }

    (log.is_empty(), log)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::Family;

    fn run(family: Family, k: u32, prune: bool) -> SearchReport {
        let spec = ClassSpec::new(family, k, 3).unwrap();
        search_min(
            &spec,
            &SearchOptions {
                prune,
                threads: 1,
                tol: default_tol(),
            },
        )
        .unwrap()
    }

    #[test]
    fn n2_minimizer() {
        let report = run(Family::N, 2, false);
        assert_eq!(report.minimizer, IntPoly::parse("x^3 - x^2 - x - 1").unwrap());
        assert_eq!(report.enumerated, 3);
        assert!(!report.tie);
        // x^3 - 2x - 1 is excluded with an exact boundary certificate
        assert_eq!(report.root_location_excluded, 1);
        assert!(report.exclusion_log[0].certificate.neg_inv_root);
        // runner-up is x^3 - 2x^2 - 1
        let ru = report.runner_up.as_ref().unwrap();
        assert_eq!(ru.poly, IntPoly::parse("x^3 - 2x^2 - 1").unwrap());
        // separation invariant
        let lo = parse_rational(&ru.enclosure.lo).unwrap();
        let hi = parse_rational(&report.enclosure.hi).unwrap();
        assert!(hi < lo);
    }

    #[test]
    fn n3_minimizer() {
        let report = run(Family::N, 3, false);
        assert_eq!(report.minimizer, IntPoly::parse("x^5 - x^3 - x^2 - 1").unwrap());
        assert!(report.enclosure.approx.starts_with("1.42910"));
    }

    #[test]
    fn s2_minimizer() {
        let report = run(Family::S, 2, false);
        assert_eq!(
            report.minimizer,
            IntPoly::parse("x^8 - x^5 - x^3 - 1").unwrap()
        );
        assert!(report.enclosure.approx.starts_with("1.25207"));
    }

    #[test]
    fn pruning_on_off_agree() {
        for (family, k) in [(Family::N, 2), (Family::N, 3), (Family::N, 4), (Family::S, 2)] {
            let with = run(family, k, true);
            let without = run(family, k, false);
            assert_eq!(with.minimizer, without.minimizer);
            assert_eq!(with.enumerated, without.enumerated);
            assert_eq!(with.enclosure.lo, without.enclosure.lo);
            assert!(without.pruned_by_dominance == 0);
        }
    }

    #[test]
    fn thread_counts_agree_bytewise() {
        let spec = ClassSpec::new(Family::N, 4, 3).unwrap();
        let mut reports = Vec::new();
        for threads in [1usize, 2, 5] {
            let r = search_min(
                &spec,
                &SearchOptions {
                    prune: true,
                    threads,
                    tol: default_tol(),
                },
            )
            .unwrap();
            reports.push(serde_json::to_string(&r).unwrap());
        }
        assert_eq!(reports[0], reports[1]);
        assert_eq!(reports[0], reports[2]);
    }

    #[test]
    fn certify_accepts_and_rejects() {
        let report = run(Family::N, 2, true);
        let (ok, log) = certify(&report);
        assert!(ok, "{log:?}");

        let mut tampered = report.clone();
        tampered.minimizer = IntPoly::parse("x^3 - 2x^2 - 1").unwrap();
        let (ok, log) = certify(&tampered);
        assert!(!ok);
        assert!(!log.is_empty());

        // a fabricated pruning entry whose witness is not a class member
        let mut bad_prune = report.clone();
        bad_prune.pruning_log.push(PruneEntry {
            skipped: CandidateVector::new(vec![2, 2]),
            witness: CandidateVector::new(vec![2, 0]),
        });
        let (ok, log) = certify(&bad_prune);
        assert!(!ok, "{log:?}");
    }

    #[test]
    fn degree_cap_enforced() {
        let spec = ClassSpec::new(Family::N, 12, 3).unwrap(); // degree 23
        assert!(matches!(
            search_min(&spec, &SearchOptions::default()),
            Err(Error::InvalidParameter(_))
        ));
    }
}
