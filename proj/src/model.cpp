#include "srq/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "srq/rng.hpp"

namespace srq {

QuantizerSpec QuantizerSpec::make(int n0) {
    if (n0 < 1 || n0 > 31) throw std::invalid_argument("QuantizerSpec: n0 must be in [1, 31]");
    QuantizerSpec spec;
    spec.n0 = n0;
    spec.unit_count = (1u << n0) - 1u;
    return spec;
}

std::string to_string(const Grouping& g) {
    switch (g.kind) {
        case GroupingKind::BinaryWeighted: return "bw";
        case GroupingKind::HalfSplit: return "hs";
        case GroupingKind::Uniform: return "un";
        case GroupingKind::Raw: return "raw";
        case GroupingKind::RedundantSub:
            return "rs:" + std::to_string(g.s) + ":" + std::to_string(g.n0prime);
    }
    return "?";
}

Grouping grouping_from_string(const std::string& text) {
    if (text == "bw") return Grouping::bw();
    if (text == "hs") return Grouping::hs();
    if (text == "un") return Grouping::un();
    if (text == "raw") return Grouping::raw();
    if (text.rfind("rs:", 0) == 0) {
        auto sep = text.find(':', 3);
        if (sep != std::string::npos) {
            int s = std::stoi(text.substr(3, sep - 3));
            int p = std::stoi(text.substr(sep + 1));
            return Grouping::rs(s, p);
        }
    }
    throw std::invalid_argument("unknown grouping '" + text + "' (expected bw|hs|un|raw|rs:<s>:<n0prime>)");
}

ComponentArray sample_actual_weights(const ComponentArray& array, const MismatchModel& model,
                                     std::uint64_t trial_index) {
    if (model.sigma_m < 0.0) throw std::invalid_argument("sigma_m must be >= 0");

    ComponentArray out = array;
    out.trial = trial_index;
    if (model.sigma_m == 0.0) {
        for (std::size_t i = 0; i < out.nominal.size(); ++i)
            out.actual[i] = static_cast<double>(out.nominal[i]);
        return out;
    }

    const std::uint64_t trial_key = fold_key(model.master_seed, trial_index);
    for (std::size_t i = 0; i < out.nominal.size(); ++i) {
        const double w = static_cast<double>(out.nominal[i]);
        const double z = gaussian_from_key(fold_key(trial_key, i));
        out.actual[i] = std::max(0.0, w + std::sqrt(w) * model.sigma_m * z);
    }
    return out;
}

}  // namespace srq
