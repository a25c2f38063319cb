#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "srq/lut_io.hpp"
#include "srq/rng.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* env = std::getenv("SRQ_CLI");
    REQUIRE_MESSAGE(env != nullptr, "SRQ_CLI must point at the srq binary");
    return env;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("srq-cli-" + std::to_string(srq::mix64(reinterpret_cast<std::uintptr_t>(this))));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

int run(const std::string& args, const fs::path& stdout_file = {}) {
    std::string cmd = cli_path() + " " + args;
    if (!stdout_file.empty()) cmd += " > " + stdout_file.string() + " 2>&1";
    else cmd += " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("groups prints the published component sets") {
    TempDir tmp;
    const fs::path out = tmp.path / "groups.txt";
    CHECK(run("groups --method un --n0 10", out) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("1, 1, 1, 1, 2, 2, 2, 2, 4, 4, 4, 8, 8, 16, 16, 31, 62, 123, 245, 490") !=
          std::string::npos);
    CHECK(text.find("(20 elements)") != std::string::npos);

    CHECK(run("groups --method hs --n0 10", out) == 0);
    CHECK(slurp(out).find("(19 elements)") != std::string::npos);
}

TEST_CASE("sweep output is byte-identical across reruns and thread counts") {
    TempDir tmp;
    const std::string common =
        " --method hs,un --n0 6 --sigma 0.1 --nk 6..8 --delta 1.0,0.95 --trials 6 --seed 7 --out ";
    const fs::path a = tmp.path / "a.csv";
    const fs::path b = tmp.path / "b.csv";
    const fs::path c = tmp.path / "c.csv";

    CHECK(run("sweep" + common + a.string() + " --threads 1") == 0);
    CHECK(run("sweep" + common + b.string() + " --threads 1") == 0);
    CHECK(run("sweep" + common + c.string() + " --threads 3") == 0);

    const std::string bytes = slurp(a);
    CHECK(!bytes.empty());
    CHECK(bytes == slurp(b));
    CHECK(bytes == slurp(c));
    CHECK(bytes.rfind("grouping,sigma_m,nk,delta,trials,mean_h,std_h\n", 0) == 0);
}

TEST_CASE("every output file gets a manifest") {
    TempDir tmp;
    const fs::path out = tmp.path / "d.csv";
    CHECK(run("diffusion --method un --n0 5 --sigma 0.1 --trials 3 --bins 64 --seed 2 --out " +
              out.string()) == 0);
    CHECK(fs::exists(out));
    const std::string manifest = slurp(out.string() + ".manifest.json");
    CHECK(manifest.find("\"command\": \"diffusion\"") != std::string::npos);
    CHECK(manifest.find("\"seed\": 2") != std::string::npos);
    CHECK(manifest.find("\"bins\": \"64\"") != std::string::npos);
    CHECK(manifest.find("wall_time_s") != std::string::npos);
}

TEST_CASE("zero-mismatch diffusion puts density only on the intrinsic grid") {
    TempDir tmp;
    const fs::path out = tmp.path / "spikes.csv";
    CHECK(run("diffusion --method un --n0 4 --sigma 0 --trials 1 --bins 256 --seed 0 --out " +
              out.string()) == 0);

    std::ifstream in(out);
    std::string line;
    std::getline(in, line);  // header
    int row = 0;
    while (std::getline(in, line)) {
        const auto last_comma = line.rfind(',');
        const double density = std::stod(line.substr(last_comma + 1));
        if (row % 16 == 0)
            CHECK(density > 0.0);
        else
            CHECK(density == 0.0);
        ++row;
    }
    CHECK(row == 256);
}

TEST_CASE("json format mirrors csv records") {
    TempDir tmp;
    const fs::path out = tmp.path / "r.json";
    CHECK(run("rmse --method hs --n0 5 --sigma 0.1 --nk 7 --seed 3 --out " + out.string() +
              " --format json") == 0);
    const std::string text = slurp(out);
    CHECK(text.find("\"code\"") != std::string::npos);
    CHECK(text.find("\"rmse\"") != std::string::npos);
}

TEST_CASE("lut export and inspect round-trip through the cli") {
    TempDir tmp;
    const fs::path out = tmp.path / "cal.lut";
    CHECK(run("lut export --method hs --n0 5 --sigma 0.1 --nk 7 --seed 11 --out " + out.string()) ==
          0);
    CHECK(fs::file_size(out) == srq::lut_file_size(7, 9));

    const fs::path text = tmp.path / "inspect.txt";
    CHECK(run("lut inspect " + out.string(), text) == 0);
    const std::string report = slurp(text);
    CHECK(report.find("grouping  hs") != std::string::npos);
    CHECK(report.find("nk        7") != std::string::npos);
    CHECK(report.find("crc ok") != std::string::npos);
}

TEST_CASE("config file mirrors flags and flags win") {
    TempDir tmp;
    const fs::path cfg = tmp.path / "cfg.json";
    const fs::path flag_out = tmp.path / "flags.csv";
    const fs::path cfg_out = tmp.path / "cfg.csv";
    {
        std::ofstream out(cfg);
        out << R"({"sweep": {"method": "hs", "n0": 5, "sigma": "0.1", "nk": "5..6",)"
            << R"( "trials": 4, "seed": 9, "out": ")" << cfg_out.string() << R"("}})";
    }
    CHECK(run("--config " + cfg.string() + " sweep") == 0);
    CHECK(fs::exists(cfg_out));

    CHECK(run("--config " + cfg.string() + " sweep --out " + flag_out.string()) == 0);
    CHECK(fs::exists(flag_out));
    CHECK(slurp(cfg_out) == slurp(flag_out));  // same config, only the path differed
}

TEST_CASE("exit codes distinguish usage and runtime errors") {
    TempDir tmp;
    CHECK(run("sweep --definitely-not-a-flag") == 1);
    CHECK(run("nosuchcommand") == 1);
    CHECK(run("groups --method nope --n0 4") == 2);  // parse ok, unknown grouping at runtime
    CHECK(run("lut inspect " + (tmp.path / "missing.lut").string()) == 2);
    CHECK(run("--help") == 0);
    CHECK(run("sweep --help") == 0);
}
