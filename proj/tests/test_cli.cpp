#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "../tools/pipeline.hpp"
#include "lptime/rng.hpp"
#include "support/sim.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path workdir() {
    const fs::path p = fs::temp_directory_path() / "lptime_cli_tests";
    fs::create_directories(p);
    return p;
}

std::string bin_path() {
    const char* p = std::getenv("LPTIME_BIN");
    REQUIRE_MESSAGE(p != nullptr, "LPTIME_BIN must point at the lptime binary");
    return p;
}

int run_cmd(const std::string& args, const fs::path& stdout_to = {}) {
    std::string cmd = bin_path() + " " + args;
    cmd += " > " + (stdout_to.empty() ? std::string("/dev/null") : stdout_to.string());
    cmd += " 2> /dev/null";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

fs::path write_gaussian_csv(const std::string& name, std::size_t n, std::uint64_t seed) {
    lptime::Rng rng(seed);
    const fs::path p = workdir() / name;
    std::ofstream out(p);
    out << "y,other\n";
    for (std::size_t i = 0; i < n; ++i) out << rng.normal() << ",1\n";
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json slurp_json(const fs::path& p) { return json::parse(slurp(p)); }

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("load_series maps prices to log returns") {
    const fs::path p = workdir() / "prices.csv";
    {
        std::ofstream out(p);
        out.precision(17);
        out << "p\n1\n" << std::exp(1.0) << "\n" << std::exp(2.0) << "\n";
    }
    const auto loaded = lptime::cli::load_series(p.string(), "p", true);
    REQUIRE(loaded.values.size() == 2);
    CHECK(loaded.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(loaded.values[1] == doctest::Approx(1.0).epsilon(1e-12));

    const auto plain = lptime::cli::load_series(p.string(), "p", false);
    CHECK(plain.values.size() == 3);
}

TEST_CASE("load_series reports the offending row") {
    const fs::path p = workdir() / "badcell.csv";
    {
        std::ofstream out(p);
        out << "y\n1\n2\n3\n4\n5\n6\noops\n8\n";
    }
    try {
        lptime::cli::load_series(p.string(), "y", false);
        FAIL("expected DataError");
    } catch (const lptime::cli::DataError& e) {
        CHECK(std::string(e.what()).find("row 7") != std::string::npos);
    }
    CHECK_THROWS_AS(lptime::cli::load_series(p.string(), "nope", false),
                    lptime::cli::DataError);
    CHECK_THROWS_AS(lptime::cli::load_series("/no/such/file.csv", "y", false),
                    lptime::cli::DataError);
}

TEST_CASE("exit codes: config, data, numeric") {
    const auto csv = write_gaussian_csv("codes.csv", 500, 811);
    CHECK(run_cmd("moments -i " + csv.string() + " -c y") == 0);
    // Unknown flag and out-of-range value are config errors.
    CHECK(run_cmd("moments -i " + csv.string() + " --nonsense 3") == 2);
    CHECK(run_cmd("moments -i " + csv.string() + " --k 0") == 2);
    // Missing file and short input are data errors.
    CHECK(run_cmd("moments -i /no/such.csv") == 3);
    const fs::path tiny = workdir() / "tiny.csv";
    {
        std::ofstream out(tiny);
        out << "y\n1\n2\n3\n4\n5\n";
    }
    CHECK(run_cmd("moments -i " + tiny.string()) == 3);
    // A constant column fails numerically.
    const fs::path flat = workdir() / "flat.csv";
    {
        std::ofstream out(flat);
        out << "y\n";
        for (int i = 0; i < 40; ++i) out << "7\n";
    }
    CHECK(run_cmd("moments -i " + flat.string()) == 4);
}

TEST_CASE("subcommands emit parseable output") {
    const auto csv = write_gaussian_csv("smoke.csv", 3000, 821);
    const fs::path out = workdir() / "out.json";
    const std::string base = "-i " + csv.string() + " -c y ";

    CHECK(run_cmd("transform " + base, workdir() / "t.csv") == 0);
    {
        std::ifstream in(workdir() / "t.csv");
        std::string header;
        std::getline(in, header);
        CHECK(header == "t,Z,YS1,YS2,YS3,YS4");
    }

    CHECK(run_cmd("qiq " + base + "--points 19", out) == 0);
    CHECK(slurp_json(out)["qiq"].size() == 19);

    CHECK(run_cmd("moments " + base, out) == 0);
    {
        const json j = slurp_json(out);
        CHECK(j["tail_index"] == 1);
        CHECK(j["nearest_reference"] == "N(0,1)");
        CHECK(std::abs(j["lp"][0].get<double>() - 0.977) < 0.03);
    }

    CHECK(run_cmd("comoment " + base + "--lag 1", out) == 0);
    {
        const json j = slurp_json(out);
        CHECK(j["raw"].size() == 4);
        CHECK(j["bic_path"].size() == 17);
    }

    CHECK(run_cmd("correlogram " + base + "--max-lag 10", out) == 0);
    CHECK(slurp_json(out)["acf"]["YS1"].size() == 10);

    CHECK(run_cmd("copula " + base + "--grid 16", workdir() / "cop.csv") == 0);
    {
        std::ifstream in(workdir() / "cop.csv");
        std::string line;
        int rows = 0;
        while (std::getline(in, line)) ++rows;
        CHECK(rows == 16);
    }

    CHECK(run_cmd("autolpinfor " + base + "--max-lag 5", out) == 0);
    CHECK(slurp_json(out)["autolpinfor"].size() == 5);

    CHECK(run_cmd("nonstat " + base, out) == 0);
    CHECK(slurp_json(out).contains("lpinfor_smooth"));

    CHECK(run_cmd("quantcorr " + base + "--points 21", out) == 0);
    {
        const json j = slurp_json(out);
        CHECK(j["lambda"].size() == 21);
        CHECK(j["gaussian"].size() == 21);
    }

    CHECK(run_cmd("condinfor " + base + "--points 11", out) == 0);
    CHECK(slurp_json(out)["lpinfor"].size() == 11);

    CHECK(run_cmd("condquant " + base +
                      "--u-grid 5 --levels .1,.5,.9 --nsim 500 --seed 1",
                  workdir() / "cq.csv") == 0);
    {
        std::ifstream in(workdir() / "cq.csv");
        std::string header;
        std::getline(in, header);
        CHECK(header.rfind("u,q0.1", 0) == 0);
    }

    const fs::path qiq_out = workdir() / "cq_qiq.csv";
    CHECK(run_cmd("condquant " + base +
                      "--u-grid 3 --levels .25,.75 --nsim 400 --seed 2 " +
                      "--qiq-points 9 --qiq-out " + qiq_out.string(),
                  workdir() / "cq2.csv") == 0);
    {
        std::ifstream in(qiq_out);
        std::string header;
        std::getline(in, header);
        CHECK(header == "u,p,qiq");
        int rows = 0;
        std::string line;
        while (std::getline(in, line)) ++rows;
        CHECK(rows == 3 * 9); // u-grid x qiq grid
    }

    CHECK(run_cmd("blomqvist " + base + "--components 1,2", out) == 0);
    CHECK(slurp_json(out).contains("per_component"));

    CHECK(run_cmd("spectrum " + base + "--max-order 6 --points 64", out) == 0);
    CHECK(slurp_json(out)["components"].size() == 5);

    CHECK(run_cmd("copspec " + base + "--u .1 --v .1 --H 10 --points 64", out) == 0);
    CHECK(slurp_json(out)["density"].size() == 64);

    CHECK(run_cmd("var " + base + "--components 1,2 --max-order 2", out) == 0);
    CHECK(slurp_json(out)["order"] == 0);

    CHECK(run_cmd("forecast " + base + "--components 1,2 --max-order 2 --steps 3", out) ==
          0);
    CHECK(slurp_json(out)["forecast"].size() == 3);
}

TEST_CASE("config file: key=value and JSON forms, flags win") {
    const auto csv = write_gaussian_csv("cfg.csv", 800, 823);
    const fs::path ini = workdir() / "cfg.ini";
    {
        std::ofstream out(ini);
        out << "input=" << csv.string() << "\ncolumn=y\nk=3\n";
    }
    const fs::path out = workdir() / "cfg_out.json";
    CHECK(run_cmd("transform --config " + ini.string(), workdir() / "cfg_t.csv") == 0);
    {
        std::ifstream in(workdir() / "cfg_t.csv");
        std::string header;
        std::getline(in, header);
        CHECK(header == "t,Z,YS1,YS2,YS3");
    }

    const fs::path jcfg = workdir() / "cfg.json";
    {
        std::ofstream f(jcfg);
        f << "{\"input\": \"" << csv.string() << "\", \"column\": \"y\", \"k\": 2}\n";
    }
    CHECK(run_cmd("transform --config " + jcfg.string(), workdir() / "cfg_t2.csv") == 0);
    {
        std::ifstream in(workdir() / "cfg_t2.csv");
        std::string header;
        std::getline(in, header);
        CHECK(header == "t,Z,YS1,YS2");
    }
    // Explicit flag overrides the file.
    CHECK(run_cmd("transform --config " + jcfg.string() + " --k 4",
                  workdir() / "cfg_t3.csv") == 0);
    {
        std::ifstream in(workdir() / "cfg_t3.csv");
        std::string header;
        std::getline(in, header);
        CHECK(header == "t,Z,YS1,YS2,YS3,YS4");
    }
}

TEST_CASE("run bundle is complete and byte-deterministic") {
    const auto csv = write_gaussian_csv("bundle.csv", 1500, 829);
    const fs::path d1 = workdir() / "bundle1";
    const fs::path d2 = workdir() / "bundle2";
    fs::remove_all(d1);
    fs::remove_all(d2);
    const std::string base = "run -i " + csv.string() + " -c y --seed 42 --u-grid 3 " +
                             "--nsim 400 --max-lag 8 --grid 12 --points 19 --max-order 4";
    CHECK(run_cmd(base + " -o " + d1.string()) == 0);
    CHECK(run_cmd(base + " -o " + d2.string()) == 0);

    const json manifest = slurp_json(d1 / "manifest.json");
    CHECK(manifest["seed"] == 42);
    const std::vector<std::string> stages = {
        "transform", "qiq",       "moments",   "comoment", "correlogram",
        "autolpinfor", "copula",  "nonstat",   "quantcorr", "condinfor",
        "condquant", "blomqvist", "spectrum",  "copspec",  "var"};
    for (const auto& s : stages) {
        CHECK(manifest["stages"][s]["status"] == "ok");
    }
    for (const auto& f :
         {"transform.csv", "qiq.json", "moments.json", "comoment.json",
          "correlogram.json", "autolpinfor.json", "copula.csv", "nonstat.json",
          "quantcorr.json", "condinfor.json", "condquant.csv", "blomqvist.json",
          "spectrum.json", "spectrum.csv", "copspec.json", "var.json",
          "manifest.json"}) {
        CHECK_MESSAGE(fs::exists(d1 / f), f);
        CHECK_MESSAGE(slurp(d1 / f) == slurp(d2 / f), f << " differs between runs");
    }
}

TEST_CASE("binary data caps k at 1 and still completes the pipeline") {
    const fs::path csv = workdir() / "binary.csv";
    {
        lptime::Rng rng(907);
        std::ofstream out(csv);
        out << "y\n";
        for (int i = 0; i < 400; ++i) out << rng.index(2) << "\n";
    }
    const fs::path d = workdir() / "bundle_binary";
    fs::remove_all(d);
    CHECK(run_cmd("run -i " + csv.string() + " -c y -o " + d.string() +
                  " --seed 9 --u-grid 3 --nsim 300 --max-lag 8 --grid 8 " +
                  "--points 9 --max-order 2") == 0);
    const json manifest = slurp_json(d / "manifest.json");
    for (const auto& [name, st] : manifest["stages"].items()) {
        CHECK_MESSAGE(st["status"] == "ok", name);
    }
    const json moments = slurp_json(d / "moments.json");
    CHECK(moments["k_used"] == 1);
    CHECK(moments["capped"] == true);
    {
        std::ifstream in(d / "transform.csv");
        std::string header;
        std::getline(in, header);
        CHECK(header == "t,Z,YS1");
    }
}

TEST_CASE("run keeps independent stages alive after one failure") {
    const auto csv = write_gaussian_csv("partial.csv", 60, 831);
    const fs::path d = workdir() / "bundle_partial";
    fs::remove_all(d);
    // max-lag 20 violates the T/4 bound for the correlogram only.
    const int rc = run_cmd("run -i " + csv.string() + " -c y -o " + d.string() +
                           " --seed 5 --max-lag 20 --u-grid 2 --nsim 200 --grid 8 " +
                           "--points 9 --max-order 1");
    CHECK(rc == 4);
    const json manifest = slurp_json(d / "manifest.json");
    CHECK(manifest["stages"]["correlogram"]["status"] == "error");
    CHECK(manifest["stages"]["transform"]["status"] == "ok");
    CHECK(manifest["stages"]["moments"]["status"] == "ok");
    CHECK(manifest["stages"]["condquant"]["status"] == "ok");
    CHECK(manifest["stages"]["var"]["status"] == "ok");
}

TEST_CASE("run on a bad path writes nothing usable and exits 3") {
    const fs::path d = workdir() / "bundle_bad";
    fs::remove_all(d);
    CHECK(run_cmd("run -i /no/such.csv -o " + d.string()) == 3);
    const json manifest = slurp_json(d / "manifest.json");
    CHECK(manifest["input"].contains("error"));
}

TEST_SUITE_END();
