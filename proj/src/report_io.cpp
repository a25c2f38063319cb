#include "srq/report_io.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include <json.hpp>

namespace srq {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

void write_sweep_csv(const McSummary& summary, std::ostream& out) {
    out << "grouping,sigma_m,nk,delta,trials,mean_h,std_h\n";
    for (const SweepCell& cell : summary.cells) {
        out << to_string(cell.grouping) << ',' << format_double(cell.sigma_m) << ',' << cell.nk
            << ',' << format_double(cell.delta) << ',' << cell.trials << ','
            << format_double(cell.mean_h) << ',' << format_double(cell.std_h) << '\n';
    }
}

void write_diffusion_csv(const DiffusionHistogram& hist, std::ostream& out) {
    out << "bin_left,bin_right,density\n";
    const double width = 1.0 / static_cast<double>(hist.bin_count);
    for (std::uint32_t b = 0; b < hist.bin_count; ++b) {
        out << format_double(b * width) << ',' << format_double((b + 1) * width) << ','
            << format_double(hist.density[b]) << '\n';
    }
}

void write_rmse_csv(const std::vector<std::pair<std::uint32_t, double>>& profile,
                    std::ostream& out) {
    out << "code,rmse\n";
    for (const auto& [code, rmse] : profile)
        out << code << ',' << format_double(rmse) << '\n';
}

namespace {

// NaN/inf have no JSON literal; mirror the CSV strings.
nlohmann::json json_number(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

}  // namespace

void write_sweep_json(const McSummary& summary, std::ostream& out) {
    nlohmann::json records = nlohmann::json::array();
    for (const SweepCell& cell : summary.cells) {
        records.push_back({{"grouping", to_string(cell.grouping)},
                           {"sigma_m", cell.sigma_m},
                           {"nk", cell.nk},
                           {"delta", cell.delta},
                           {"trials", cell.trials},
                           {"mean_h", json_number(cell.mean_h)},
                           {"std_h", json_number(cell.std_h)}});
    }
    out << records.dump(2) << '\n';
}

void write_diffusion_json(const DiffusionHistogram& hist, std::ostream& out) {
    nlohmann::json records = nlohmann::json::array();
    const double width = 1.0 / static_cast<double>(hist.bin_count);
    for (std::uint32_t b = 0; b < hist.bin_count; ++b) {
        records.push_back({{"bin_left", b * width},
                           {"bin_right", (b + 1) * width},
                           {"density", hist.density[b]}});
    }
    out << records.dump(2) << '\n';
}

void write_rmse_json(const std::vector<std::pair<std::uint32_t, double>>& profile,
                     std::ostream& out) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& [code, rmse] : profile)
        records.push_back({{"code", code}, {"rmse", rmse}});
    out << records.dump(2) << '\n';
}

}  // namespace srq
