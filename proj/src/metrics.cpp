#include "srq/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace srq {

namespace {

// Neumaier compensated summation.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

}  // namespace

EntropyReport entropy_report(const SelectedQuantizer& q, double delta) {
    if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must be in (0, 1]");
    const std::size_t codes = std::size_t{1} << q.nk;
    if (q.boundaries.size() != codes + 1) throw std::invalid_argument("boundary count mismatch");
    for (std::size_t i = 1; i < q.boundaries.size(); ++i)
        if (q.boundaries[i] < q.boundaries[i - 1])
            throw std::invalid_argument("boundaries not monotone");

    std::size_t d_lo = 0;
    std::size_t d_hi = codes - 1;
    if (delta < 1.0) {
        const double margin = (1.0 - delta) / 2.0;
        d_lo = static_cast<std::size_t>(std::floor(margin * static_cast<double>(codes)));
        d_hi = static_cast<std::size_t>(std::floor((1.0 - margin) * static_cast<double>(codes)));
        d_hi = std::min(d_hi, codes - 1);
    }

    EntropyReport report;
    report.nk = q.nk;
    report.delta = delta;
    report.code_begin = static_cast<std::uint32_t>(d_lo);
    report.rmse_per_code.resize(d_hi - d_lo + 1);

    const double scale = static_cast<double>(codes);
    CompensatedSum total;
    for (std::size_t d = d_lo; d <= d_hi; ++d) {
        const double mid = (static_cast<double>(d) + 0.5) / scale;
        const double lo = q.boundaries[d] - mid;
        const double hi = q.boundaries[d + 1] - mid;
        const double m_d = std::max(0.0, (hi * hi * hi - lo * lo * lo) / 3.0);
        report.rmse_per_code[d - d_lo] = std::sqrt(m_d);
        total.add(m_d);
    }
    report.m_total = total.value();
    report.h = -0.5 * std::log2(12.0 * report.m_total);
    return report;
}

double shannon_limit(int nk, double delta) {
    if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must be in (0, 1]");
    return static_cast<double>(nk) + std::log2(delta);
}

std::vector<std::pair<std::uint32_t, double>> rmse_profile(const SelectedQuantizer& q) {
    EntropyReport report = entropy_report(q, 1.0);
    std::vector<std::pair<std::uint32_t, double>> profile(report.rmse_per_code.size());
    for (std::size_t d = 0; d < profile.size(); ++d)
        profile[d] = {static_cast<std::uint32_t>(d), report.rmse_per_code[d]};
    return profile;
}

}  // namespace srq
