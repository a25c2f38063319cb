#pragma once

#include <cstdint>
#include <vector>

#include "srq/metrics.hpp"
#include "srq/model.hpp"
#include "srq/reference.hpp"

namespace srq {

enum class Selector : std::uint8_t { Exhaustive = 0, Greedy = 1 };

// Experiment grid for a seeded entropy sweep. Every list is non-empty; one
// enumeration + selection per (grouping, sigma, trial) is shared across all
// nk/delta cells of that trial.
struct SweepConfig {
    std::vector<Grouping> groupings;
    int n0 = 10;
    std::vector<double> sigma_list;
    std::vector<int> nk_list;
    std::vector<double> delta_list = {1.0};
    int trials = 100;
    std::uint64_t master_seed = 0;
    Selector selector = Selector::Exhaustive;
    unsigned threads = 0;          // 0 = hardware concurrency
    bool record_trials = true;     // retain per-trial raw H values
};

struct SweepCell {
    Grouping grouping;
    double sigma_m = 0.0;
    int nk = 0;
    double delta = 1.0;
    int trials = 0;
    double mean_h = 0.0;
    double std_h = 0.0;
    int nonfinite_trials = 0;      // flagged, never silently dropped
    std::vector<double> raw_h;     // empty unless record_trials
};

struct McSummary {
    SweepConfig config;
    std::vector<SweepCell> cells;  // grouping-major, then sigma, nk, delta
};

// Pooled histogram of every reference value from every trial, over [0, 1],
// normalized to a density (sum of density * bin_width = 1).
struct DiffusionHistogram {
    Grouping grouping;
    int n0 = 0;
    double sigma_m = 0.0;
    int trials = 0;
    std::uint32_t bin_count = 0;
    std::vector<double> density;
    std::uint64_t total_count = 0;
};

inline constexpr std::uint32_t kDefaultDiffusionBins = 1u << 14;

// Per-cell trial seeds are derived as
//   fold_key(fold_key(fold_key(fold_key(master_seed, kind), s), n0prime), sigma_index)
// so any cell is independently reproducible. Trials run in parallel; all
// reductions happen in trial-index order with compensated summation, so the
// summary is bit-identical for any worker count.
std::uint64_t derive_cell_seed(std::uint64_t master_seed, const Grouping& grouping,
                               std::size_t sigma_index);

McSummary run_sweep(const SweepConfig& config);

DiffusionHistogram run_diffusion(const Grouping& grouping, int n0, double sigma_m, int trials,
                                 std::uint32_t bin_count, std::uint64_t master_seed,
                                 unsigned threads = 0);

}  // namespace srq
