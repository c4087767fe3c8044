#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jonq/cocycle.hpp"
#include "jonq_cli/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "jonq");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = jonq::cli::run_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> v;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

std::vector<std::string> split(const std::string& row) {
    std::vector<std::string> v;
    std::istringstream in(row);
    for (std::string c; std::getline(in, c, ',');) v.push_back(c);
    return v;
}

nlohmann::json result_of(const std::string& text) { return nlohmann::json::parse(text).at("result"); }

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

fs::path scratch_dir() {
    const fs::path d = fs::temp_directory_path() / ("jonq_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

const std::vector<std::string> kQuick{"--n", "5000", "--samples", "16"};

std::vector<std::string> with(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}  // namespace

TEST_CASE("lyapunov sweep over s in [-2, 2]") {
    const auto r = run(with({"lyapunov", "--kind", "JonquieresB", "--s-min", "-2", "--s-max", "2", "--s-steps", "41"}, kQuick));
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 43);
    CHECK(ls[0].rfind("# jonq " JONQ_VERSION_STRING " {", 0) == 0);
    CHECK(ls[1] == "kind,alpha_angle,freq,rho,ln_rho,L,stderr,half_n_L,n,samples,seed");
    for (std::size_t i = 2; i < ls.size(); ++i) {
        const auto cells = split(ls[i]);
        REQUIRE(cells.size() == 11);
        CHECK(cells[0] == "JonquieresB");
        const double s = std::stod(cells[4]);
        CHECK(std::abs(std::stod(cells[5]) - std::max(0.0, s)) <= 0.05);
    }
    CHECK(r.out.find('\r') == std::string::npos);
}

TEST_CASE("exit codes") {
    const auto radius_one = run({"lyapunov", "--kind", "BTilde", "--rho", "1"});
    CHECK(radius_one.code == 2);
    CHECK(radius_one.err.find("rho = 1") != std::string::npos);
    CHECK(radius_one.out.empty());
    CHECK(run({"lyapunov", "--kind", "Nope"}).code == 2);
    CHECK(run({"lyapunov", "--no-such-flag"}).code == 2);
    CHECK(run({"lyapunov", "--format", "xml"}).code == 2);
    CHECK(run({"lyapunov", "--freq", "0.5"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"accel", "--kind", "JonquieresB", "--rho", "1.01"}).code == 2);
    CHECK(run({"--version"}).code == 0);
    CHECK(run({"degree", "--map", "jonquieres", "--specialize", "0,1"}).code == 3);
    CHECK(run({"degree", "--specialize", "x,1"}).code == 2);
    const auto sd = run({"linearize", "--freq", "0.33333338333333331", "--divisor-floor", "1e-5"});
    CHECK(sd.code == 3);
    CHECK(sd.err.find("small divisor") != std::string::npos);
    CHECK(run({"replay", "/nonexistent/file"}).code == 2);
}

TEST_CASE("identical runs are byte-identical") {
    const auto args = with({"lyapunov", "--rho", "0.5,2", "--seed", "7"}, kQuick);
    const auto a = run(args);
    const auto b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    // the thread count is recorded but does not change the data rows
    const auto c = run(with(args, {"--threads", "3"}));
    const auto la = lines(a.out), lc = lines(c.out);
    REQUIRE(la.size() == lc.size());
    for (std::size_t i = 1; i < la.size(); ++i) CHECK(la[i] == lc[i]);
}

TEST_CASE("acceleration table") {
    const auto bt = run(with({"accel", "--kind", "BTilde", "--rho", "0.25,0.5,2,4"}, kQuick));
    REQUIRE(bt.code == 0);
    const auto ls = lines(bt.out);
    REQUIRE(ls.size() == 6);
    CHECK(ls[1] == "rho,omega,nearest_integer,distance,left_slope,right_slope,regular_flag");
    for (std::size_t i = 2; i < ls.size(); ++i) {
        const auto cells = split(ls[i]);
        CHECK(std::abs(std::stod(cells[1])) <= 0.05);
        CHECK(cells[6] == "1");
    }
    const auto b = run(with({"accel", "--kind", "JonquieresB", "--rho", "2", "--format", "json"}, kQuick));
    REQUIRE(b.code == 0);
    CHECK(std::abs(result_of(b.out)[0].at("omega").get<double>() + 1.0) <= 0.05);
    const auto dp = run(with({"accel", "--kind", "DiagonalPower", "--rho", "1", "--format", "json"}, kQuick));
    REQUIRE(dp.code == 0);
    const auto row = result_of(dp.out)[0];
    CHECK(std::abs(row.at("omega").get<double>() - 1.0) <= 0.05);
    CHECK(row.at("regular") == false);
}

TEST_CASE("orbit output") {
    const auto r = run({"orbit", "--n", "200", "--x-re", "0.01", "--x-im", "0", "--y-re", "0.003", "--y-im", "0.004"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 2 + 201);
    CHECK(ls[1] == "step,x_re,x_im,y_re,y_im,abs_y");
    for (std::size_t i = 2; i < ls.size(); ++i) CHECK(std::abs(std::stod(split(ls[i])[5]) - 0.005) < 1e-15);
    CHECK(run({"orbit", "--system", "h"}).code == 2);
    const auto g = run({"orbit", "--system", "G", "--n", "10", "--format", "json"});
    REQUIRE(g.code == 0);
    CHECK(result_of(g.out).at("points").size() == 11);
}

TEST_CASE("orbit-closure classification") {
    const auto f = run({"classify", "--n", "100000"});
    REQUIRE(f.code == 0);
    CHECK(result_of(f.out).at("rank") == 2);
    const auto g = run({"classify", "--system", "G", "--n", "100000", "--x-re", "1e-3", "--x-im", "0", "--y-re", "1e-3",
                        "--y-im", "0"});
    REQUIRE(g.code == 0);
    CHECK(result_of(g.out).at("rank") == 1);
}

TEST_CASE("linearization report") {
    const auto r = run({"linearize", "--order", "12"});
    REQUIRE(r.code == 0);
    const auto res = result_of(r.out);
    const auto& co = res.at("coefficients");
    const jonq::Complex b1(co.at("b")[1][0].get<double>(), co.at("b")[1][1].get<double>());
    const jonq::Complex al = jonq::unit_phase(jonq::kGenericAlphaAngle), be = jonq::unit_phase(jonq::kGenericFreq);
    CHECK(std::abs(b1 - be * (1.0 + al) / (1.0 - be)) < 1e-12);
    for (const char* k : {"eq1", "eq2", "eq3"}) CHECK(res.at("residuals").at(k).get<double>() <= 1e-10);
    CHECK(res.at("radius_estimate").get<double>() > 0.0);
    const auto csv = run({"linearize", "--order", "4", "--format", "csv"});
    REQUIRE(csv.code == 0);
    CHECK(lines(csv.out).size() == 2 + 5);
}

TEST_CASE("degree reports") {
    const auto f8 = run({"degree", "--order", "8"});
    REQUIRE(f8.code == 0);
    const auto r8 = result_of(f8.out);
    CHECK(r8.at("growth_class") == "Linear");
    CHECK(r8.at("degrees") == nlohmann::json({2, 2, 3, 3, 4, 4, 5, 5}));
    const auto f6 = run({"degree", "--order", "6"});
    CHECK(result_of(f6.out).at("lambda_estimate").get<double>() >= r8.at("lambda_estimate").get<double>());
    const auto lin = run({"degree", "--map", "linear"});
    REQUIRE(lin.code == 0);
    CHECK(result_of(lin.out).at("growth_class") == "Bounded");
    const auto forced = run({"degree", "--specialize", "2/3,5"});
    REQUIRE(forced.code == 0);
    CHECK(result_of(forced.out).at("specializations")[0] == nlohmann::json({"2/3", "5"}));
    const auto csv = run({"degree", "--format", "csv"});
    CHECK(lines(csv.out)[1] == "n,degree");
}

TEST_CASE("config round trip") {
    jonq::cli::RunConfig c;
    c.subcommand = "accel";
    c.rho = {0.5, 2.0};
    c.seed = 99;
    c.out = "ignored.csv";
    const auto j = c.to_json();
    CHECK_FALSE(j.contains("out"));
    const auto back = jonq::cli::RunConfig::from_json(j);
    CHECK(back.to_json() == j);
    CHECK(back.out.empty());
    CHECK_THROWS(jonq::cli::RunConfig::from_json(nlohmann::json::array()));
}

TEST_CASE("every output replays byte for byte") {
    const fs::path dir = scratch_dir();
    const std::vector<std::vector<std::string>> runs{
        with({"lyapunov", "--rho", "0.5,3"}, kQuick),
        with({"lyapunov", "--kind", "Schrodinger", "--coupling", "2", "--energy", "0.3", "--rho", "1", "--format", "json"},
             kQuick),
        with({"accel", "--kind", "Constant", "--matrix", "2,0,0,0.5", "--rho", "1"}, kQuick),
        {"orbit", "--n", "50", "--system", "g"},
        {"classify", "--n", "100000", "--system", "linear", "--format", "csv"},
        {"linearize", "--order", "10"},
        {"degree", "--map", "henon", "--order", "6", "--seed", "5"},
    };
    int k = 0;
    for (const auto& args : runs) {
        const fs::path first = dir / ("out" + std::to_string(k) + ".txt");
        const fs::path second = dir / ("replay" + std::to_string(k) + ".txt");
        ++k;
        REQUIRE(run(with(args, {"--out", first.string()})).code == 0);
        REQUIRE(run({"replay", first.string(), "--out", second.string()}).code == 0);
        const std::string a = slurp(first);
        CHECK_FALSE(a.empty());
        CHECK(a == slurp(second));
        // replay to stdout matches as well
        CHECK(run({"replay", first.string()}).out == a);
    }
    fs::remove_all(dir);
}
