// End-to-end driver for the cohfluct CLI. Spawns the binary (argv[1]) and
// checks the documented exit codes and output files.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    if (ok) {
        std::cout << "[PASS] " << what << "\n";
    } else {
        std::cerr << "[FAIL] " << what << "\n";
        ++failures;
    }
}

void write(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

int run(const std::string& cmd) {
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <path-to-cohfluct-binary>\n";
        return 2;
    }
    const std::string bin = argv[1];
    fs::path dir = fs::temp_directory_path() / "cohfluct_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);

    const std::string good = R"({
      "p": [0.5, 0.25, 0.125, 0.125],
      "q": [0.25, 0.25, 0.25, 0.25],
      "u": 2, "n": 11
    })";
    write(dir / "good.json", good);
    write(dir / "bad.json", R"({"p": [0.5, 0.48], "q": [1.0], "u": 2})");
    write(dir / "failing.json", R"({
      "p": [0.5, 0.5], "q": [0.5, 0.5], "u": 2,
      "coupling": {"mode": "explicit",
                   "table": [{"i":0,"j":0,"f":-1,"value":0.5},{"i":0,"j":1,"f":-1,"value":0.5},
                             {"i":1,"j":0,"f":-1,"value":0.5},{"i":1,"j":1,"f":-1,"value":0.5}]},
      "checks": ["conditions"]
    })");
    write(dir / "sweep.json", R"({
      "p": [0.5, 0.25, 0.125, 0.125],
      "q": [0.25, 0.25, 0.25, 0.25],
      "u": 2, "sweep": {"n": [7, 19, 4]}
    })");
    write(dir / "oracle.json", R"({"p": [0.5, 0.5], "q": [1.0, 0.0], "u": 2, "n": 6})");
    write(dir / "gridfail.json", R"({"p": [0.6, 0.4], "q": [0.5, 0.5], "u": 2})");

    auto out_path = [&](const std::string& name) { return (dir / name).string(); };
    auto cfg = [&](const std::string& name) { return (dir / name).string(); };

    expect(run(bin + " validate --config " + cfg("good.json") + " --quiet") == 0,
           "validate accepts a good config (exit 0)");
    expect(run(bin + " validate --config " + cfg("bad.json") + " 2>/dev/null") == 2,
           "validate rejects a bad config (exit 2)");
    expect(run(bin + " run --config " + cfg("bad.json") + " 2>/dev/null") == 2,
           "run on a bad config exits 2");

    int rc = run(bin + " run --config " + cfg("good.json") + " --out " + out_path("run_out") +
                 " --quiet");
    expect(rc == 0, "run on the d4 fixture exits 0");
    expect(fs::exists(dir / "run_out" / "report.json"), "report.json written");
    expect(fs::exists(dir / "run_out" / "p_w.csv"), "p_w.csv written");
    expect(fs::exists(dir / "run_out" / "p_rev_w.csv"), "p_rev_w.csv written");

    rc = run(bin + " run --config " + cfg("good.json") + " --out " + out_path("run_out2") +
             " --checks conditions,second_law,jarzynski --quiet");
    expect(rc == 0, "run with an explicit check list exits 0");

    rc = run(bin + " run --config " + cfg("failing.json") + " --out " + out_path("fail_out") +
             " --quiet");
    expect(rc == 1, "run with a failing check exits 1");

    rc = run(bin + " run --config " + cfg("gridfail.json") + " --out " + out_path("grid_out") +
             " --quiet 2>/dev/null");
    expect(rc == 3, "module error exits 3");
    {
        std::ifstream in(dir / "grid_out" / "report.json");
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        expect(text.find("\"error\"") != std::string::npos, "error record written on failure");
    }

    rc = run(bin + " sweep --config " + cfg("sweep.json") + " --out " + out_path("sweep_out") +
             " --quiet");
    expect(rc == 0, "sweep exits 0");
    {
        std::ifstream in(dir / "sweep_out" / "sweep.csv");
        std::string header;
        std::getline(in, header);
        expect(header == "n,N,epsilon,r1,r2,r3,overlap,bound", "sweep.csv schema is pinned");
    }

    rc = run(bin + " oracle --config " + cfg("oracle.json") + " --out " + out_path("oracle_out") +
             " --quiet");
    expect(rc == 0, "oracle exits 0");

    expect(run(bin + " run 2>/dev/null") == 2, "missing --config exits 2");

    if (failures == 0) fs::remove_all(dir);
    return failures == 0 ? 0 : 1;
}
