//! Structural parameters of a code: distances, girth, stopping sets and the
//! stopping redundancy hierarchy.

mod codewords;
mod girth;
mod rpc;
mod stopping;

pub use codewords::{
    for_each_span_word, low_weight_span_words, span_min_weight, span_weight_distribution, Budget, MinWeight,
    EXHAUSTIVE_MAX_DIM,
};
pub use girth::girth;
pub use rpc::{
    extend_rpc, extend_rpc_auto, kill_probability, rho_hierarchy, same_row_space, RhoEstimate, RhoHierarchy,
    RhoMethod, RhoMode,
};
pub use stopping::{
    enumerate_stopping_sets, is_ml_decodable, is_stopping_set, sample_u, stopping_distance, StoppingCensus,
    StoppingSet, UEstimate,
};

use std::fmt;

use crate::codes::{DegreeProfile, LinearCode};
use crate::error::{Error, Result};
use crate::gf2;

/// Minimum codeword weight and its multiplicity.
///
/// Exhaustive for `k ≤ 30`; otherwise words of weight up to `cap` are searched
/// and [`Error::CapExceeded`] reports that the distance exceeds `cap`.
pub fn min_distance(code: &LinearCode, cap: Option<usize>, budget: &Budget) -> Result<MinWeight> {
    let g = code.generator();
    if g.rows() == 0 {
        return crate::error::domain("the code has dimension 0");
    }
    span_min_weight(&g, cap, budget, "minimum distance")
}

/// Minimum weight of the dual code (the row space of `H`).
pub fn dual_min_distance(code: &LinearCode, cap: Option<usize>, budget: &Budget) -> Result<MinWeight> {
    span_min_weight(code.h(), cap, budget, "dual distance")
}

/// Full weight distribution `A_0..A_n` (needs `k ≤ 30`).
pub fn weight_distribution(code: &LinearCode, budget: &Budget) -> Result<Vec<u64>> {
    span_weight_distribution(&code.generator(), budget)
}

/// Winner of a candidate search.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub index: u64,
    pub seed: u64,
    pub code: LinearCode,
    pub distance: MinWeight,
}

/// Builds `count` candidates from the seeds `derive_seed(base_seed, i)` and
/// keeps the best by minimum distance (larger first), then by the number of
/// minimum-weight codewords (fewer first), then by lowest index. Candidates
/// that fail to build, or whose distance exceeds `cap`, are skipped.
pub fn best_candidate(
    count: u64,
    base_seed: u64,
    cap: Option<usize>,
    budget: &Budget,
    mut build: impl FnMut(u64) -> Result<LinearCode>,
) -> Result<Candidate> {
    let mut best: Option<Candidate> = None;
    for index in 0..count {
        budget.check("candidate search")?;
        let seed = crate::rng::derive_seed(base_seed, index);
        let Ok(code) = build(seed) else { continue };
        if code.k() == 0 {
            continue;
        }
        let distance = match min_distance(&code, cap, budget) {
            Ok(d) => d,
            Err(Error::CapExceeded { .. }) => continue,
            Err(e) => return Err(e),
        };
        let better = best.as_ref().is_none_or(|b| {
            (distance.weight, std::cmp::Reverse(distance.multiplicity))
                > (b.distance.weight, std::cmp::Reverse(b.distance.multiplicity))
        });
        if better {
            best = Some(Candidate {
                index,
                seed,
                code,
                distance,
            });
        }
    }
    best.ok_or_else(|| Error::Domain("no candidate could be built".into()))
}

/// A measured quantity that may only be bounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Measure {
    Exact(usize),
    AtLeast(usize),
    /// Not computed (time budget ran out or not requested).
    Unknown,
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measure::Exact(v) => write!(f, "{v}"),
            Measure::AtLeast(v) => write!(f, ">={v}"),
            Measure::Unknown => f.write_str("?"),
        }
    }
}

fn measure_of(r: Result<MinWeight>) -> Result<(Measure, Option<u64>)> {
    match r {
        Ok(m) => Ok((Measure::Exact(m.weight), Some(m.multiplicity))),
        Err(Error::CapExceeded { lower_bound, .. }) => Ok((Measure::AtLeast(lower_bound), None)),
        Err(Error::Budget(_)) => Ok((Measure::Unknown, None)),
        Err(e) => Err(e),
    }
}

/// Settings for [`analyze`].
#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    /// Weight cap for distance searches when the dimension is above 30.
    pub distance_cap: usize,
    /// Largest stopping-set size searched.
    pub stopping_cap: usize,
    /// Levels `ℓ` of the stopping redundancy hierarchy to estimate.
    pub rho_levels: Vec<usize>,
    pub rho_method: RhoMethod,
    /// Time limit applied separately to each computation.
    pub seconds: u64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            distance_cap: 16,
            stopping_cap: 8,
            rho_levels: Vec::new(),
            rho_method: RhoMethod::Sampled {
                samples: 100_000,
                seed: 0,
            },
            seconds: Budget::DEFAULT_SECONDS,
        }
    }
}

/// The parameters of one code, as in a row of a code comparison table.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisReport {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub rank: usize,
    pub d_min: Measure,
    pub a_dmin: Option<u64>,
    pub d_stop: Measure,
    pub d_dual: Measure,
    pub girth: Option<usize>,
    pub profile: DegreeProfile,
    pub rho: Vec<RhoEstimate>,
}

impl AnalysisReport {
    pub const CSV_HEADER: &'static str = "n,k,d_min,A_dmin,d_stop,d_dual,girth,J_K,rho,rho_mode";

    /// Flat `key=value` block; distance and multiplicity share a line.
    pub fn key_values(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("n={} k={} r={} rank={}\n", self.n, self.k, self.r, self.rank));
        out.push_str(&format!("d_min={} A={}\n", self.d_min, opt(self.a_dmin)));
        out.push_str(&format!("d_stop={}\n", self.d_stop));
        out.push_str(&format!("d_dual={}\n", self.d_dual));
        out.push_str(&format!("girth={}\n", self.girth_label()));
        out.push_str(&format!("J,K={}\n", self.profile.label()));
        for e in &self.rho {
            out.push_str(&format!("rho_{}={} mode={}\n", e.level, e.total_rows, e.mode));
        }
        out
    }

    /// One CSV row in the order of [`Self::CSV_HEADER`].
    pub fn csv_row(&self) -> String {
        let rho: Vec<String> = self.rho.iter().map(|e| format!("{}:{}", e.level, e.total_rows)).collect();
        let mut modes: Vec<String> = self.rho.iter().map(|e| e.mode.to_string()).collect();
        modes.dedup();
        format!(
            "{},{},{},{},{},{},{},\"{}\",{},{}",
            self.n,
            self.k,
            self.d_min,
            opt(self.a_dmin),
            self.d_stop,
            self.d_dual,
            self.girth_label(),
            self.profile.label(),
            rho.join(";"),
            modes.join(";"),
        )
    }

    fn girth_label(&self) -> String {
        self.girth.map_or_else(|| "NONE".to_string(), |g| g.to_string())
    }
}

fn opt(v: Option<u64>) -> String {
    v.map_or_else(|| "?".to_string(), |x| x.to_string())
}

/// Computes every field of [`AnalysisReport`]. Distances that exceed their
/// cap are reported as lower bounds, and ones that run out of time as
/// unknown; other errors propagate.
pub fn analyze(code: &LinearCode, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let budget = || Budget::from_now(std::time::Duration::from_secs(opts.seconds));
    let (d_min, a_dmin) = if code.k() == 0 {
        (Measure::Unknown, None)
    } else {
        measure_of(min_distance(code, Some(opts.distance_cap), &budget()))?
    };
    let (d_dual, _) = if gf2::rank(code.h()) == 0 {
        (Measure::Unknown, None)
    } else {
        measure_of(dual_min_distance(code, Some(opts.distance_cap), &budget()))?
    };
    let d_stop = match stopping_distance(code, opts.stopping_cap, &budget()) {
        Ok((d, _)) => Measure::Exact(d),
        Err(Error::CapExceeded { lower_bound, .. }) => Measure::AtLeast(lower_bound),
        Err(Error::Budget(_)) => Measure::Unknown,
        Err(e) => return Err(e),
    };
    let rho = if opts.rho_levels.is_empty() {
        Vec::new()
    } else {
        rho_hierarchy(code, &opts.rho_levels, &opts.rho_method, &budget())?.estimates
    };
    Ok(AnalysisReport {
        n: code.n(),
        k: code.k(),
        r: code.r(),
        rank: code.rank(),
        d_min,
        a_dmin,
        d_stop,
        d_dual,
        girth: girth(code),
        profile: code.degree_profile(),
        rho,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::fixtures;
    use crate::gf2::BitMatrix;

    #[test]
    fn repetition_code() {
        let c = fixtures::repetition(7);
        let b = Budget::unlimited();
        let d = min_distance(&c, None, &b).unwrap();
        assert_eq!((d.weight, d.multiplicity), (7, 1));
        assert_eq!(dual_min_distance(&c, None, &b).unwrap().weight, 2);
    }

    #[test]
    fn hamming_is_self_dual() {
        let c = fixtures::hamming84();
        let b = Budget::unlimited();
        let d = min_distance(&c, None, &b).unwrap();
        assert_eq!((d.weight, d.multiplicity), (4, 14));
        let dd = dual_min_distance(&c, None, &b).unwrap();
        assert_eq!(dd, d);
        // every dual codeword is a codeword
        let words = low_weight_span_words(c.h(), 8, &b).unwrap();
        for w in words {
            let bits = gf2::unpack_bits(&w, 8);
            assert!(c.is_codeword(&bits));
        }
    }

    #[test]
    fn information_set_mode_reports_caps() {
        // [40,34] code: dimension 34 forces the capped search
        let mut rows = vec![vec![0u8; 40]; 6];
        for j in 0..40 {
            for (i, row) in rows.iter_mut().enumerate() {
                row[j] = ((j + 1) >> i & 1) as u8;
            }
        }
        let c = LinearCode::new(BitMatrix::from_rows(&rows).unwrap());
        assert_eq!(c.k(), 34);
        let b = Budget::unlimited();
        // columns are distinct and nonzero, so d = 3 (Hamming-like)
        let d = min_distance(&c, Some(3), &b).unwrap();
        assert_eq!(d.weight, 3);
        assert!(matches!(
            min_distance(&c, Some(2), &b),
            Err(Error::CapExceeded { lower_bound: 3, .. })
        ));
    }

    #[test]
    fn report_formats() {
        let c = fixtures::hamming84();
        let opts = AnalysisOptions {
            rho_levels: vec![4],
            rho_method: RhoMethod::ExactGreedy { max_candidates: 1 << 10 },
            ..AnalysisOptions::default()
        };
        let rep = analyze(&c, &opts).unwrap();
        assert_eq!(rep.d_min, Measure::Exact(4));
        assert_eq!(rep.a_dmin, Some(14));
        assert_eq!(rep.d_dual, Measure::Exact(4));
        assert!(matches!(rep.d_stop, Measure::Exact(s) if s <= 4));
        let kv = rep.key_values();
        assert!(kv.lines().any(|l| l == "d_min=4 A=14"));
        let row = rep.csv_row();
        assert_eq!(
            row.split(',').count(),
            AnalysisReport::CSV_HEADER.split(',').count() + 1,
            "the quoted J,K field holds one comma"
        );
        assert!(row.starts_with("8,4,4,14,"));
    }

    #[test]
    fn candidate_search_prefers_distance_then_multiplicity() {
        let b = Budget::unlimited();
        let best = best_candidate(12, 5, None, &b, |seed| crate::codes::build_gallager(3, 6, 24, seed)).unwrap();
        for i in 0..12 {
            let c = crate::codes::build_gallager(3, 6, 24, crate::rng::derive_seed(5, i)).unwrap();
            let d = min_distance(&c, None, &b).unwrap();
            assert!(
                d.weight < best.distance.weight
                    || (d.weight == best.distance.weight && d.multiplicity >= best.distance.multiplicity)
            );
        }
        assert_eq!(best.seed, crate::rng::derive_seed(5, best.index));
    }

    #[test]
    fn stopping_never_exceeds_distance() {
        for c in [fixtures::hamming84(), fixtures::repetition(5)] {
            let (s, _) = stopping_distance(&c, 8, &Budget::unlimited()).unwrap();
            let d = min_distance(&c, None, &Budget::unlimited()).unwrap();
            assert!(s <= d.weight);
        }
    }
}
