// srq: simulation and optimization toolkit for redundant-sensing quantizers.
//
// Subcommands:
//   groups      print a grouping's nominal component weights
//   enumerate   reference-set statistics for one mismatch trial
//   sweep       seeded entropy sweep over (grouping, sigma, nk, delta) -> CSV/JSON
//   diffusion   pooled reference-value histogram -> CSV/JSON
//   rmse        per-code RMSE profile for one trial -> CSV/JSON
//   lut         export / inspect calibration lookup-table files
//
// Every file-producing run writes a <out>.manifest.json with the echoed
// configuration; re-running with that configuration reproduces the file
// byte-exactly.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "srq/grouping.hpp"
#include "srq/lut_io.hpp"
#include "srq/metrics.hpp"
#include "srq/montecarlo.hpp"
#include "srq/parallel.hpp"
#include "srq/report_io.hpp"
#include "srq/rng.hpp"

namespace {

constexpr const char* kToolVersion = "1.0.0";

using nlohmann::json;

// JSON config files mirroring the flag vocabulary: top-level keys are
// subcommand names, nested objects hold option values. Flags override file
// values (CLI11 default precedence).
class ConfigJson : public CLI::Config {
public:
    std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
        json j;
        for (const CLI::Option* opt : app->get_options({})) {
            if (!opt->get_lnames().empty() && opt->get_configurable()) {
                const std::string name = opt->get_lnames()[0];
                if (opt->reduced_results().size() == 1) {
                    j[name] = opt->reduced_results().at(0);
                } else if (default_also && !opt->get_default_str().empty()) {
                    j[name] = opt->get_default_str();
                }
            }
        }
        for (const CLI::App* sub : app->get_subcommands({}))
            j[sub->get_name()] = json::parse(to_config(sub, default_also, false, ""));
        return j.dump(2);
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json j;
        input >> j;
        return collect(j, "", {});
    }

private:
    static std::vector<CLI::ConfigItem> collect(const json& j, const std::string& name,
                                                std::vector<std::string> parents) {
        std::vector<CLI::ConfigItem> results;
        if (j.is_object()) {
            if (!name.empty()) parents.push_back(name);
            for (auto it = j.begin(); it != j.end(); ++it) {
                auto sub = collect(it.value(), it.key(), parents);
                results.insert(results.end(), sub.begin(), sub.end());
            }
        } else if (!name.empty()) {
            CLI::ConfigItem item;
            item.name = name;
            item.parents = std::move(parents);
            if (j.is_boolean()) {
                item.inputs = {j.get<bool>() ? "true" : "false"};
            } else if (j.is_number_integer()) {
                item.inputs = {std::to_string(j.get<long long>())};
            } else if (j.is_number()) {
                item.inputs = {srq::format_double(j.get<double>())};
            } else if (j.is_string()) {
                item.inputs = {j.get<std::string>()};
            } else if (j.is_array()) {
                for (const auto& e : j)
                    item.inputs.push_back(e.is_string() ? e.get<std::string>() : e.dump());
            } else {
                throw CLI::ConversionError("unsupported JSON value for option '" + name + "'");
            }
            results.push_back(item);
        }
        return results;
    }
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ','))
        if (!token.empty()) parts.push_back(token);
    return parts;
}

// Integer lists accept comma-separated values and inclusive "a..b" ranges.
std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    try {
        for (const std::string& token : split_list(text)) {
            auto dots = token.find("..");
            if (dots != std::string::npos) {
                int lo = std::stoi(token.substr(0, dots));
                int hi = std::stoi(token.substr(dots + 2));
                if (hi < lo) throw CLI::ValidationError("range '" + token + "' is descending");
                for (int v = lo; v <= hi; ++v) values.push_back(v);
            } else {
                values.push_back(std::stoi(token));
            }
        }
    } catch (const std::logic_error&) {
        throw CLI::ValidationError("cannot parse integer list '" + text + "'");
    }
    if (values.empty()) throw CLI::ValidationError("empty list");
    return values;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> values;
    try {
        for (const std::string& token : split_list(text)) values.push_back(std::stod(token));
    } catch (const std::logic_error&) {
        throw CLI::ValidationError("cannot parse number list '" + text + "'");
    }
    if (values.empty()) throw CLI::ValidationError("empty list");
    return values;
}

srq::Grouping parse_method(const std::string& text) {
    try {
        return srq::grouping_from_string(text);
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError(e.what());
    }
}

std::vector<srq::Grouping> parse_methods(const std::string& text) {
    std::vector<srq::Grouping> methods;
    for (const std::string& token : split_list(text)) methods.push_back(parse_method(token));
    if (methods.empty()) throw CLI::ValidationError("empty method list");
    return methods;
}

srq::ComponentArray build_method(const srq::Grouping& g, int n0) {
    switch (g.kind) {
        case srq::GroupingKind::BinaryWeighted: return srq::build_binary_weighted(n0);
        case srq::GroupingKind::HalfSplit: return srq::build_half_split(n0);
        case srq::GroupingKind::Uniform: return srq::build_uniform(n0);
        case srq::GroupingKind::RedundantSub: return srq::build_rs_family(n0, g.s, g.n0prime);
        default: throw CLI::ValidationError("method must be bw|hs|un|rs:<s>:<n0prime>");
    }
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_manifest(const std::string& out_path, const std::string& command, const json& config,
                    std::uint64_t seed, double wall_time_s) {
    json manifest = {
        {"command", command},
        {"config", config},
        {"seed", seed},
        {"versions", {{"srq", kToolVersion}, {"lut_format", srq::kLutVersion}}},
        {"wall_time_s", wall_time_s},
    };
    write_file(out_path + ".manifest.json", manifest.dump(2) + "\n");
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

// ---- subcommand option blocks -------------------------------------------

struct GroupsOpts {
    std::string method = "bw";
    int n0 = 10;
};

struct EnumerateOpts {
    std::string method = "hs";
    int n0 = 10;
    double sigma = 0.1;
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;
};

struct SweepOpts {
    std::string methods = "hs,un";
    int n0 = 10;
    std::string sigma = "0.1";
    std::string nk;
    std::string delta = "1.0";
    int trials = 100;
    std::uint64_t seed = 0;
    std::string selector = "exhaustive";
    unsigned threads = 0;
    std::string out;
    std::string format = "csv";
};

struct DiffusionOpts {
    std::string method = "un";
    int n0 = 10;
    double sigma = 0.1;
    int trials = 100;
    std::uint32_t bins = srq::kDefaultDiffusionBins;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string out;
    std::string format = "csv";
};

struct RmseOpts {
    std::string method = "hs";
    int n0 = 10;
    double sigma = 0.1;
    int nk = 18;
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
};

struct LutExportOpts {
    std::string method = "un";
    int n0 = 10;
    double sigma = 0.1;
    int nk = 16;
    double delta = 1.0;
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;
    std::string selector = "exhaustive";
    std::string out;
};

srq::ReportFormat parse_format(const std::string& text) {
    if (text == "csv") return srq::ReportFormat::Csv;
    if (text == "json") return srq::ReportFormat::Json;
    throw CLI::ValidationError("--format must be csv or json");
}

srq::Selector parse_selector(const std::string& text) {
    if (text == "exhaustive") return srq::Selector::Exhaustive;
    if (text == "greedy") return srq::Selector::Greedy;
    throw CLI::ValidationError("--selector must be exhaustive or greedy");
}

// Single-run commands (enumerate, rmse, lut export) draw their weights from
// the sweep's seed derivation with sigma index 0, so a sweep cell can be
// reproduced in isolation by passing that cell's seed.
srq::ComponentArray sample_single(const srq::Grouping& g, int n0, double sigma,
                                  std::uint64_t seed, std::uint64_t trial) {
    srq::ComponentArray array = build_method(g, n0);
    srq::MismatchModel model{sigma, srq::derive_cell_seed(seed, g, 0)};
    return srq::sample_actual_weights(array, model, trial);
}

int run_groups(const GroupsOpts& o) {
    srq::Grouping g = srq::grouping_from_string(o.method);
    srq::ComponentArray array = build_method(g, o.n0);

    std::cout << "method " << srq::to_string(g) << "  n0 " << o.n0 << "  components "
              << array.n() << "\n";
    std::cout << "weights:";
    for (std::uint32_t w : array.nominal) std::cout << ' ' << w;
    std::cout << "\n";

    std::vector<std::uint32_t> sorted = array.nominal;
    std::sort(sorted.begin(), sorted.end());
    std::cout << "sorted: {";
    for (std::size_t i = 0; i < sorted.size(); ++i) std::cout << (i ? ", " : "") << sorted[i];
    std::cout << "} (" << sorted.size() << " elements)\n";
    return 0;
}

int run_enumerate(const EnumerateOpts& o) {
    srq::Grouping g = srq::grouping_from_string(o.method);
    srq::ComponentArray sampled = sample_single(g, o.n0, o.sigma, o.seed, o.trial);
    srq::ReferenceSet refs = srq::enumerate_references(sampled);

    std::size_t distinct = refs.entries.empty() ? 0 : 1;
    for (std::size_t i = 1; i < refs.entries.size(); ++i)
        if (refs.entries[i].value != refs.entries[i - 1].value) ++distinct;

    std::cout << "method " << srq::to_string(g) << "  n0 " << o.n0 << "  sigma "
              << srq::format_double(o.sigma) << "  trial " << o.trial << "  seed " << o.seed
              << "\n";
    std::cout << "components " << refs.n << "\n";
    std::cout << "references " << refs.entries.size() << "\n";
    std::cout << "distinct   " << distinct << "\n";
    std::cout << "denom      " << srq::format_double(refs.denom) << "\n";
    std::cout << "min        " << srq::format_double(refs.entries.front().value) << "\n";
    std::cout << "max        " << srq::format_double(refs.entries.back().value) << "\n";
    return 0;
}

int run_sweep_cmd(const SweepOpts& o, const json& echo) {
    if (o.out.empty()) throw CLI::ValidationError("sweep: --out is required");
    if (o.nk.empty()) throw CLI::ValidationError("sweep: --nk is required");
    Timer timer;

    srq::SweepConfig config;
    config.groupings = parse_methods(o.methods);
    config.n0 = o.n0;
    config.sigma_list = parse_double_list(o.sigma);
    config.nk_list = parse_int_list(o.nk);
    config.delta_list = parse_double_list(o.delta);
    config.trials = o.trials;
    config.master_seed = o.seed;
    config.selector = parse_selector(o.selector);
    config.threads = o.threads;
    config.record_trials = false;

    srq::McSummary summary = srq::run_sweep(config);

    int flagged = 0;
    for (const srq::SweepCell& cell : summary.cells) flagged += cell.nonfinite_trials > 0;
    if (flagged > 0)
        std::cerr << "warning: " << flagged << " cell(s) contain non-finite entropy values\n";

    std::ostringstream body;
    if (parse_format(o.format) == srq::ReportFormat::Csv)
        srq::write_sweep_csv(summary, body);
    else
        srq::write_sweep_json(summary, body);
    write_file(o.out, body.str());
    write_manifest(o.out, "sweep", echo, o.seed, timer.seconds());
    std::cout << "wrote " << o.out << " (" << summary.cells.size() << " cells)\n";
    return 0;
}

int run_diffusion_cmd(const DiffusionOpts& o, const json& echo) {
    if (o.out.empty()) throw CLI::ValidationError("diffusion: --out is required");
    Timer timer;

    srq::Grouping g = srq::grouping_from_string(o.method);
    srq::DiffusionHistogram hist =
        srq::run_diffusion(g, o.n0, o.sigma, o.trials, o.bins, o.seed, o.threads);

    std::ostringstream body;
    if (parse_format(o.format) == srq::ReportFormat::Csv)
        srq::write_diffusion_csv(hist, body);
    else
        srq::write_diffusion_json(hist, body);
    write_file(o.out, body.str());
    write_manifest(o.out, "diffusion", echo, o.seed, timer.seconds());
    std::cout << "wrote " << o.out << " (" << hist.bin_count << " bins, " << hist.total_count
              << " values)\n";
    return 0;
}

int run_rmse_cmd(const RmseOpts& o, const json& echo) {
    if (o.out.empty()) throw CLI::ValidationError("rmse: --out is required");
    Timer timer;

    srq::Grouping g = srq::grouping_from_string(o.method);
    srq::ComponentArray sampled = sample_single(g, o.n0, o.sigma, o.seed, o.trial);
    srq::ReferenceSet refs = srq::enumerate_references(sampled);
    srq::SelectedQuantizer q =
        srq::select_quantizer_exhaustive(refs, srq::TargetGrid{o.nk, 1.0});
    auto profile = srq::rmse_profile(q);

    std::ostringstream body;
    if (parse_format(o.format) == srq::ReportFormat::Csv)
        srq::write_rmse_csv(profile, body);
    else
        srq::write_rmse_json(profile, body);
    write_file(o.out, body.str());
    write_manifest(o.out, "rmse", echo, o.seed, timer.seconds());
    std::cout << "wrote " << o.out << " (" << profile.size() << " codes)\n";
    return 0;
}

int run_lut_export(const LutExportOpts& o, const json& echo) {
    if (o.out.empty()) throw CLI::ValidationError("lut export: --out is required");
    Timer timer;

    srq::Grouping g = srq::grouping_from_string(o.method);
    srq::ComponentArray sampled = sample_single(g, o.n0, o.sigma, o.seed, o.trial);
    srq::TargetGrid grid{o.nk, o.delta};
    srq::SelectedQuantizer q;
    if (parse_selector(o.selector) == srq::Selector::Exhaustive) {
        srq::ReferenceSet refs = srq::enumerate_references(sampled);
        q = srq::select_quantizer_exhaustive(refs, grid);
    } else {
        q = srq::select_quantizer_greedy(sampled, grid);
    }

    std::size_t bytes = srq::export_lut(q, sampled, o.out, o.delta);
    write_manifest(o.out, "lut export", echo, o.seed, timer.seconds());
    std::cout << "wrote " << o.out << " (" << bytes << " bytes, "
              << ((std::uint64_t{1} << o.nk) - 1) * static_cast<std::uint64_t>(sampled.n())
              << " mask bits)\n";
    return 0;
}

int run_lut_inspect(const std::string& path) {
    srq::LutHeader header = srq::read_lut_header(path);
    auto [q, array] = srq::import_lut(path);  // full validation incl. CRC + monotonicity

    std::cout << "file      " << path << "\n";
    std::cout << "version   " << header.version << "\n";
    std::cout << "grouping  " << srq::to_string(header.grouping) << "\n";
    std::cout << "n0        " << header.n0 << "\n";
    std::cout << "nk        " << header.nk << "\n";
    std::cout << "delta     " << srq::format_double(header.delta) << "\n";
    std::cout << "n         " << header.n << "\n";
    std::cout << "boundaries " << q.boundaries.size() << " (monotone, crc ok)\n";
    std::cout << "entropy   " << srq::format_double(srq::entropy_report(q, header.delta).h)
              << " bits at delta " << srq::format_double(header.delta) << "\n";
    return 0;
}

json echo_options(const CLI::App* cmd) {
    json j;
    for (const CLI::Option* opt : cmd->get_options({})) {
        if (opt->get_lnames().empty()) continue;
        const std::string name = opt->get_lnames()[0];
        if (name == "help" || name == "config") continue;
        if (opt->count() > 0)
            j[name] = opt->reduced_results().size() == 1 ? json(opt->reduced_results()[0])
                                                         : json(opt->reduced_results());
        else if (!opt->get_default_str().empty())
            j[name] = opt->get_default_str();
    }
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"redundant-sensing super-resolution quantizer toolkit"};
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<ConfigJson>());
    app.set_config("--config", "", "JSON config file mirroring all flags; flags override it");
    app.set_version_flag("--version", kToolVersion);

    GroupsOpts groups;
    CLI::App* groups_cmd = app.add_subcommand("groups", "print a grouping's nominal weights");
    groups_cmd->add_option("--method", groups.method, "bw|hs|un|rs:<s>:<n0prime>")->required();
    groups_cmd->add_option("--n0", groups.n0, "intrinsic resolution in bits")->required();

    EnumerateOpts enumerate;
    CLI::App* enum_cmd = app.add_subcommand("enumerate", "reference-set statistics for one trial");
    enum_cmd->add_option("--method", enumerate.method)->required();
    enum_cmd->add_option("--n0", enumerate.n0)->required();
    enum_cmd->add_option("--sigma", enumerate.sigma, "mismatch ratio");
    enum_cmd->add_option("--trial", enumerate.trial, "trial index");
    enum_cmd->add_option("--seed", enumerate.seed, "master seed");

    SweepOpts sweep;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "entropy sweep over (method, sigma, nk, delta)");
    sweep_cmd->add_option("--method", sweep.methods, "comma-separated methods")->required();
    sweep_cmd->add_option("--n0", sweep.n0)->required();
    sweep_cmd->add_option("--sigma", sweep.sigma, "comma-separated mismatch ratios")->required();
    sweep_cmd->add_option("--nk", sweep.nk, "target resolutions, e.g. 10..20 or 12,14")->required();
    sweep_cmd->add_option("--delta", sweep.delta, "comma-separated sample-space fractions");
    sweep_cmd->add_option("--trials", sweep.trials, "Monte Carlo trials per cell");
    sweep_cmd->add_option("--seed", sweep.seed, "master seed");
    sweep_cmd->add_option("--selector", sweep.selector, "exhaustive|greedy");
    sweep_cmd->add_option("--threads", sweep.threads, "worker count (0 = all cores)");
    sweep_cmd->add_option("--out", sweep.out, "output file")->required();
    sweep_cmd->add_option("--format", sweep.format, "csv|json");

    DiffusionOpts diffusion;
    CLI::App* diff_cmd = app.add_subcommand("diffusion", "pooled reference-value histogram");
    diff_cmd->add_option("--method", diffusion.method)->required();
    diff_cmd->add_option("--n0", diffusion.n0)->required();
    diff_cmd->add_option("--sigma", diffusion.sigma)->required();
    diff_cmd->add_option("--trials", diffusion.trials);
    diff_cmd->add_option("--bins", diffusion.bins, "histogram bin count");
    diff_cmd->add_option("--seed", diffusion.seed);
    diff_cmd->add_option("--threads", diffusion.threads);
    diff_cmd->add_option("--out", diffusion.out, "output file")->required();
    diff_cmd->add_option("--format", diffusion.format, "csv|json");

    RmseOpts rmse;
    CLI::App* rmse_cmd = app.add_subcommand("rmse", "per-code RMSE profile for one trial");
    rmse_cmd->add_option("--method", rmse.method)->required();
    rmse_cmd->add_option("--n0", rmse.n0)->required();
    rmse_cmd->add_option("--sigma", rmse.sigma)->required();
    rmse_cmd->add_option("--nk", rmse.nk)->required();
    rmse_cmd->add_option("--trial", rmse.trial);
    rmse_cmd->add_option("--seed", rmse.seed);
    rmse_cmd->add_option("--out", rmse.out, "output file")->required();
    rmse_cmd->add_option("--format", rmse.format, "csv|json");

    CLI::App* lut_cmd = app.add_subcommand("lut", "calibration lookup-table files");
    lut_cmd->require_subcommand(1);

    LutExportOpts lut_export;
    CLI::App* lut_export_cmd = lut_cmd->add_subcommand("export", "select and export a LUT");
    lut_export_cmd->add_option("--method", lut_export.method)->required();
    lut_export_cmd->add_option("--n0", lut_export.n0)->required();
    lut_export_cmd->add_option("--sigma", lut_export.sigma)->required();
    lut_export_cmd->add_option("--nk", lut_export.nk)->required();
    lut_export_cmd->add_option("--delta", lut_export.delta);
    lut_export_cmd->add_option("--trial", lut_export.trial);
    lut_export_cmd->add_option("--seed", lut_export.seed);
    lut_export_cmd->add_option("--selector", lut_export.selector);
    lut_export_cmd->add_option("--out", lut_export.out, "output file")->required();

    std::string lut_inspect_path;
    CLI::App* lut_inspect_cmd = lut_cmd->add_subcommand("inspect", "validate and print a LUT header");
    lut_inspect_cmd->add_option("file", lut_inspect_path, "LUT file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\nsee 'srq --help'\n";
        return 1;
    }

    try {
        if (groups_cmd->parsed()) return run_groups(groups);
        if (enum_cmd->parsed()) return run_enumerate(enumerate);
        if (sweep_cmd->parsed()) return run_sweep_cmd(sweep, echo_options(sweep_cmd));
        if (diff_cmd->parsed()) return run_diffusion_cmd(diffusion, echo_options(diff_cmd));
        if (rmse_cmd->parsed()) return run_rmse_cmd(rmse, echo_options(rmse_cmd));
        if (lut_cmd->parsed()) {
            if (lut_export_cmd->parsed()) return run_lut_export(lut_export, echo_options(lut_export_cmd));
            if (lut_inspect_cmd->parsed()) return run_lut_inspect(lut_inspect_path);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\nsee 'srq --help'\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
