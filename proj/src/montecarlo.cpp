#include "srq/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "srq/grouping.hpp"
#include "srq/parallel.hpp"
#include "srq/rng.hpp"

namespace srq {

namespace {

ComponentArray build_grouping(const Grouping& g, int n0) {
    switch (g.kind) {
        case GroupingKind::BinaryWeighted: return build_binary_weighted(n0);
        case GroupingKind::HalfSplit: return build_half_split(n0);
        case GroupingKind::Uniform: return build_uniform(n0);
        case GroupingKind::RedundantSub: return build_rs_family(n0, g.s, g.n0prime);
        case GroupingKind::Raw:
            throw std::invalid_argument("raw groupings need an explicit weight list");
    }
    throw std::invalid_argument("unknown grouping");
}

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
    int finite = 0;
    int nonfinite = 0;
};

MeanStd reduce_trials(const double* h, int trials) {
    MeanStd r;
    double comp_sum = 0.0, comp_c = 0.0;
    for (int t = 0; t < trials; ++t) {
        if (!std::isfinite(h[t])) {
            ++r.nonfinite;
            continue;
        }
        ++r.finite;
        double v = h[t];
        double s = comp_sum + v;
        if (std::abs(comp_sum) >= std::abs(v))
            comp_c += (comp_sum - s) + v;
        else
            comp_c += (v - s) + comp_sum;
        comp_sum = s;
    }
    if (r.finite == 0) {
        r.mean = std::numeric_limits<double>::quiet_NaN();
        r.std = std::numeric_limits<double>::quiet_NaN();
        return r;
    }
    r.mean = (comp_sum + comp_c) / r.finite;
    if (r.finite > 1) {
        double sq_sum = 0.0, sq_c = 0.0;
        for (int t = 0; t < trials; ++t) {
            if (!std::isfinite(h[t])) continue;
            double d = h[t] - r.mean;
            double v = d * d;
            double s = sq_sum + v;
            if (std::abs(sq_sum) >= std::abs(v))
                sq_c += (sq_sum - s) + v;
            else
                sq_c += (v - s) + sq_sum;
            sq_sum = s;
        }
        r.std = std::sqrt((sq_sum + sq_c) / (r.finite - 1));
    }
    return r;
}

}  // namespace

std::uint64_t derive_cell_seed(std::uint64_t master_seed, const Grouping& grouping,
                               std::size_t sigma_index) {
    std::uint64_t h = fold_key(master_seed, static_cast<std::uint64_t>(grouping.kind));
    h = fold_key(h, static_cast<std::uint64_t>(grouping.s));
    h = fold_key(h, static_cast<std::uint64_t>(grouping.n0prime));
    return fold_key(h, sigma_index);
}

McSummary run_sweep(const SweepConfig& config) {
    if (config.groupings.empty() || config.sigma_list.empty() || config.nk_list.empty() ||
        config.delta_list.empty())
        throw std::invalid_argument("sweep config: all lists must be non-empty");
    if (config.trials < 1) throw std::invalid_argument("sweep config: trials must be >= 1");
    for (double s : config.sigma_list)
        if (!(s >= 0.0 && s < 1.0)) throw std::invalid_argument("sweep config: sigma_m in [0, 1)");
    for (double d : config.delta_list)
        if (!(d > 0.0 && d <= 1.0)) throw std::invalid_argument("sweep config: delta in (0, 1]");
    for (int nk : config.nk_list)
        if (nk < 1 || nk > 30) throw std::invalid_argument("sweep config: nk out of range");

    std::vector<ComponentArray> arrays;
    arrays.reserve(config.groupings.size());
    for (const Grouping& g : config.groupings) {
        arrays.push_back(build_grouping(g, config.n0));
        if (arrays.back().n() > kMaxEnumerableComponents)
            throw std::invalid_argument("grouping exceeds enumeration guard");
    }

    const std::size_t ng = config.groupings.size();
    const std::size_t ns = config.sigma_list.size();
    const std::size_t nt = static_cast<std::size_t>(config.trials);
    const std::size_t nnk = config.nk_list.size();
    const std::size_t nd = config.delta_list.size();

    // h_values[(((g*ns + si)*nt + t)*nnk + ki)*nd + di]
    std::vector<double> h_values(ng * ns * nt * nnk * nd);

    parallel_for_index(ng * ns * nt, config.threads, [&](std::size_t item) {
        const std::size_t t = item % nt;
        const std::size_t si = (item / nt) % ns;
        const std::size_t g = item / (nt * ns);

        MismatchModel model{config.sigma_list[si],
                            derive_cell_seed(config.master_seed, config.groupings[g], si)};
        ComponentArray sampled = sample_actual_weights(arrays[g], model, t);

        ReferenceSet refs;
        if (config.selector == Selector::Exhaustive) refs = enumerate_references(sampled);

        double* slot = &h_values[((g * ns + si) * nt + t) * nnk * nd];
        for (std::size_t ki = 0; ki < nnk; ++ki) {
            TargetGrid grid{config.nk_list[ki], 1.0};
            SelectedQuantizer q = config.selector == Selector::Exhaustive
                                      ? select_quantizer_exhaustive(refs, grid)
                                      : select_quantizer_greedy(sampled, grid);
            for (std::size_t di = 0; di < nd; ++di)
                slot[ki * nd + di] = entropy_report(q, config.delta_list[di]).h;
        }
    });

    McSummary summary;
    summary.config = config;
    summary.cells.reserve(ng * ns * nnk * nd);
    std::vector<double> trial_h(nt);
    for (std::size_t g = 0; g < ng; ++g)
        for (std::size_t si = 0; si < ns; ++si)
            for (std::size_t ki = 0; ki < nnk; ++ki)
                for (std::size_t di = 0; di < nd; ++di) {
                    for (std::size_t t = 0; t < nt; ++t)
                        trial_h[t] = h_values[(((g * ns + si) * nt + t) * nnk + ki) * nd + di];
                    MeanStd stats = reduce_trials(trial_h.data(), config.trials);

                    SweepCell cell;
                    cell.grouping = config.groupings[g];
                    cell.sigma_m = config.sigma_list[si];
                    cell.nk = config.nk_list[ki];
                    cell.delta = config.delta_list[di];
                    cell.trials = config.trials;
                    cell.mean_h = stats.mean;
                    cell.std_h = stats.std;
                    cell.nonfinite_trials = stats.nonfinite;
                    if (config.record_trials) cell.raw_h = trial_h;
                    summary.cells.push_back(std::move(cell));
                }
    return summary;
}

DiffusionHistogram run_diffusion(const Grouping& grouping, int n0, double sigma_m, int trials,
                                 std::uint32_t bin_count, std::uint64_t master_seed,
                                 unsigned threads) {
    if (trials < 1) throw std::invalid_argument("diffusion: trials must be >= 1");
    if (bin_count < 1) throw std::invalid_argument("diffusion: bin_count must be >= 1");
    if (!(sigma_m >= 0.0 && sigma_m < 1.0)) throw std::invalid_argument("diffusion: sigma_m in [0, 1)");

    ComponentArray array = build_grouping(grouping, n0);
    if (array.n() > kMaxEnumerableComponents)
        throw std::invalid_argument("grouping exceeds enumeration guard");

    const std::size_t nt = static_cast<std::size_t>(trials);
    std::vector<std::vector<std::uint64_t>> counts(nt);

    parallel_for_index(nt, threads, [&](std::size_t t) {
        MismatchModel model{sigma_m, derive_cell_seed(master_seed, grouping, 0)};
        ComponentArray sampled = sample_actual_weights(array, model, t);
        std::vector<double> values = reference_values(sampled);

        std::vector<std::uint64_t>& local = counts[t];
        local.assign(bin_count, 0);
        const double scale = static_cast<double>(bin_count);
        for (double v : values) {
            auto bin = static_cast<std::uint32_t>(v * scale);
            if (bin >= bin_count) bin = bin_count - 1;  // v < 1, but the product can round up
            ++local[bin];
        }
    });

    DiffusionHistogram hist;
    hist.grouping = grouping;
    hist.n0 = n0;
    hist.sigma_m = sigma_m;
    hist.trials = trials;
    hist.bin_count = bin_count;
    hist.density.assign(bin_count, 0.0);

    std::vector<std::uint64_t> pooled(bin_count, 0);
    for (std::size_t t = 0; t < nt; ++t)
        for (std::uint32_t b = 0; b < bin_count; ++b) pooled[b] += counts[t][b];

    hist.total_count = nt << array.n();
    const double norm = static_cast<double>(bin_count) / static_cast<double>(hist.total_count);
    for (std::uint32_t b = 0; b < bin_count; ++b)
        hist.density[b] = static_cast<double>(pooled[b]) * norm;
    return hist;
}

}  // namespace srq
