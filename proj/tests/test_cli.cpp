// End-to-end tests that drive the installed binary exactly the way a user
// would. Paths to the executable and the baseline config are injected by the
// build (VARSWAP_BIN / TABLE1_JSON).

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "fixtures.hpp"
#include "hestoncir/pricer.hpp"
#include "hestoncir/report.hpp"

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args) {
    const std::string cmd =
        std::string(VARSWAP_BIN) + " " + args + " > cli_stdout.txt 2> cli_stderr.txt";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp("cli_stdout.txt");
    r.err = slurp("cli_stderr.txt");
    return r;
}

const std::string kConfig = std::string("--config ") + TABLE1_JSON;

}  // namespace

TEST_CASE("price: single interval equals the direct inner-expectation strike") {
    const auto r = run("price " + kConfig + " --n 1");
    REQUIRE(r.code == 0);
    const auto quote = hestoncir::fair_strike(fixtures::baseline(), fixtures::contract(1));
    const std::string expected =
        "n_obs,strike_formula\n1," +
        hestoncir::csvfmt::strike(quote.strike_variance_points) + "\n";
    CHECK(r.out == expected);
}

TEST_CASE("price: frozen regression strikes for the baseline config") {
    const auto r = run("price " + kConfig + " --n 4,12,26,52");
    REQUIRE(r.code == 0);
    CHECK(r.out == "n_obs,strike_formula\n"
                   "4,518.477\n"
                   "12,505.967\n"
                   "26,502.729\n"
                   "52,501.359\n");
}

TEST_CASE("price honors --ode-steps at reporting precision") {
    const auto coarse = run("price " + kConfig + " --n 12 --ode-steps 64");
    const auto fine = run("price " + kConfig + " --n 12 --ode-steps 512");
    REQUIRE(coarse.code == 0);
    REQUIRE(fine.code == 0);
    CHECK(coarse.out == fine.out);
}

TEST_CASE("malformed config exits 3 with no partial output") {
    {
        std::ofstream bad("cli_bad.json", std::ios::binary);
        bad << "{ \"kappa_star\": 2.0, ";  // truncated JSON
    }
    const auto r = run("price --config cli_bad.json --n 4");
    CHECK(r.code == 3);
    CHECK(r.out.empty());
    CHECK(!r.err.empty());
}

TEST_CASE("config with an unknown key exits 3") {
    nlohmann::json j = nlohmann::json::parse(slurp(TABLE1_JSON));
    j["mystery_knob"] = 1.0;
    {
        std::ofstream bad("cli_extra.json", std::ios::binary);
        bad << j.dump();
    }
    const auto r = run("price --config cli_extra.json --n 4");
    CHECK(r.code == 3);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("price --n 4").code == 2);                       // missing --config
    CHECK(run("price " + kConfig).code == 2);                  // missing --n
    CHECK(run("price " + kConfig + " --n 4 --bogus").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("sweep " + kConfig + " --n 12 --param rho23").code == 2);  // missing --values
    CHECK(run("sweep " + kConfig + " --n 12 --param kappa_star --values 1").code == 2);
}

TEST_CASE("validation failures exit 3") {
    CHECK(run("mc " + kConfig + " --n 4 --paths 0").code == 3);
    nlohmann::json j = nlohmann::json::parse(slurp(TABLE1_JSON));
    j["sigma"] = 0.8;  // Feller violation
    {
        std::ofstream bad("cli_feller.json", std::ios::binary);
        bad << j.dump();
    }
    CHECK(run("price --config cli_feller.json --n 4").code == 3);
}

TEST_CASE("mc output is byte-identical across repeated invocations") {
    const std::string args = "mc " + kConfig + " --n 4 --paths 2000 --steps 5 --seed 42";
    const auto a = run(args);
    const auto b = run(args + " --workers 3");
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("n_obs,strike_mc,std_error,paths,seed\n", 0) == 0);
    CHECK(a.out.find(",2000,42\n") != std::string::npos);
}

TEST_CASE("sweep: rho23 grid is emitted in order and keeps going past bad cells") {
    const auto r = run("sweep " + kConfig + " --n 12 --param rho23 --values -0.5,0,0.5,0.999");
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "param,value,n_obs,strike");
    double prev = -1e9;
    int rows = 0;
    int empty_cells = 0;
    while (std::getline(lines, line)) {
        ++rows;
        const auto last_comma = line.rfind(',');
        const std::string strike = line.substr(last_comma + 1);
        if (strike.empty()) {
            ++empty_cells;
            continue;
        }
        const double value = std::stod(strike);
        CHECK(value >= prev);
        prev = value;
    }
    CHECK(rows == 4);
    CHECK(empty_cells == 1);  // rho23 = 0.999 breaks positive-definiteness
}

TEST_CASE("compare --skip-mc leaves the MC columns empty") {
    const auto r = run("compare " + kConfig + " --n 4 --skip-mc");
    REQUIRE(r.code == 0);
    CHECK(r.out == "n_obs,strike_formula,strike_mc,std_error,rel_error_pct\n"
                   "4,518.477,,,\n");
}

TEST_CASE("--out and --json write reproducible artifacts") {
    const auto r = run("price " + kConfig +
                       " --n 4,12 --out cli_price.csv --json cli_price.json");
    REQUIRE(r.code == 0);
    CHECK(slurp("cli_price.csv") == r.out);

    const nlohmann::json j = nlohmann::json::parse(slurp("cli_price.json"));
    const auto report = j.get<hestoncir::RunReport>();
    CHECK(report.command == "price");
    CHECK(report.rows.size() == 2);
    CHECK(report.rows[0].n_obs == 4);
    CHECK(report.rows[1].n_obs == 12);
    CHECK(report.resolved_params.at("kappa_star").get<double>() == 2.0);
    CHECK(report.resolved_params.at("n_obs").get<int>() == 52);  // config echo
    CHECK(report.version == hestoncir::kToolVersion);
    // round trip
    const nlohmann::json j2 = report;
    CHECK(j2.at("rows") == j.at("rows"));
}
