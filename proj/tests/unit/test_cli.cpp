#include "dpplab/cli.hpp"
#include "dpplab/error.hpp"
#include "dpplab/io.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace dpplab;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_json(const json& config) {
    std::ostringstream out, err;
    const int code = run(config, out, err);
    return {code, out.str(), err.str()};
}

// Parses a CSV artifact into rows of numbers (skipping the header lines).
std::vector<std::vector<double>> rows(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    std::vector<std::vector<double>> out;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        out.push_back(row);
    }
    return out;
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("traces") {
        const Result r = run_json({{"command", "traces"}, {"scheme", "gue"}, {"n", 5}, {"moments", 4}});
        REQUIRE(r.code == 0);
        CHECK(r.out.rfind("# {", 0) == 0);
        CHECK(r.out.find("config_hash") != std::string::npos);
        const auto t = rows(r.out);
        REQUIRE(t.size() == 5);
        CHECK(t[2][2] == doctest::Approx(1));
        CHECK(t[2][3] == doctest::Approx(0.8));
    }

    TEST_CASE("byte-identical reruns") {
        const json c{{"command", "sample"}, {"model", "gue"}, {"n", 6}, {"samples", 20}, {"seed", 5}, {"moments", 3}};
        CHECK(run_json(c).out == run_json(c).out);
        const json g{{"command", "gap-sweep"}, {"scheme", "gue"}, {"n", {10, 20, 40}}, {"moments", 2}};
        CHECK(run_json(g).out == run_json(g).out);
    }

    TEST_CASE("gap sweep") {
        const Result r = run_json({{"command", "gap-sweep"}, {"scheme", "gue"}, {"n", {10, 20, 40, 80}}, {"moments", 2}});
        REQUIRE(r.code == 0);
        for (const auto& row : rows(r.out)) {
            const double N = row[0];
            if (row[1] == 2) {
                CHECK(row[4] == doctest::Approx(1 / N));
                CHECK(row[6] == doctest::Approx(-1).epsilon(0.01));
            }
            if (row[1] == 0) CHECK(row[4] == 0);
            CHECK(row[4] <= row[5]);
        }
        const Result m = run_json({{"command", "gap-sweep"},
                                   {"scheme", {{"name", "meixner"}, {"alpha", 0.5}, {"beta", 1.0}}},
                                   {"n", {5, 10, 20, 40}},
                                   {"moments", 4}});
        REQUIRE(m.code == 0);
        for (const auto& row : rows(m.out)) CHECK(row[4] <= row[5]);
        CHECK(run_json({{"command", "gap-sweep"}, {"scheme", "gue"}, {"n", {20, 10}}, {"moments", 2}}).code == 2);
    }

    TEST_CASE("curve density") {
        const Result r = run_json(
            {{"command", "curve"}, {"kind", "hermite"}, {"q", 1}, {"a", 0}, {"density", 0}, {"eps", 1e-6}});
        REQUIRE(r.code == 0);
        CHECK(rows(r.out)[0][1] == doctest::Approx(1 / M_PI).epsilon(1e-5));
    }

    TEST_CASE("other commands run") {
        CHECK(run_json({{"command", "zeros"}, {"scheme", "wishart"}, {"n", {4, 8}}, {"moments", 3}}).code == 0);
        CHECK(run_json({{"command", "variance-sweep"}, {"scheme", "gue"}, {"n", {4, 8}}, {"moments", 2}}).code == 0);
        CHECK(run_json({{"command", "kva"}, {"scheme", {{"name", "charlier"}, {"alpha", 1.0}}}, {"moments", 4}}).code == 0);
        CHECK(run_json({{"command", "kva"}, {"scheme", "gue"}, {"density", {0.0, 1.0}}}).code == 0);
        CHECK(run_json({{"command", "mop-zeros"}, {"kind", "hermite"}, {"a", {1, -1}}, {"q", {0.5, 0.5}}, {"n", 20}, {"moments", 4}}).code == 0);
        const Result f = run_json({{"command", "free-conv"},
                                   {"op", "add"},
                                   {"mu", {{"type", "semicircle"}}},
                                   {"nu", {{"type", "atoms"}, {"atoms", {1, -1}}, {"weights", {0.5, 0.5}}}},
                                   {"moments", 4}});
        REQUIRE(f.code == 0);
        CHECK(rows(f.out)[4][1] == doctest::Approx(7));
        const Result s = run_json({{"command", "sample"}, {"model", "gue_source"}, {"n", 10}, {"atoms", {1, -1}},
                                   {"ratios", {0.5, 0.5}}, {"samples", 5}, {"moments", 2}});
        REQUIRE(s.code == 0);
        const json body = json::parse(s.out);
        CHECK(body.at("mean").size() == 3);
        CHECK(body.contains("se"));
        CHECK(body.at("meta").contains("versions"));
    }

    TEST_CASE("errors map to exit codes") {
        std::ostringstream out, err;
        CHECK(run_text("{\"command\": ", out, err) == 2);
        const Result unknown = run_json({{"command", "traces"}, {"scheme", "gue"}, {"n", 3}, {"moments", 2}, {"colour", 1}});
        CHECK(unknown.code == 2);
        CHECK(unknown.err.find("colour") != std::string::npos);
        CHECK(run_json({{"command", "nope"}}).code == 2);
        CHECK(run_json({{"command", "traces"}, {"scheme", "gue"}, {"n", "five"}, {"moments", 2}}).code == 2);
        CHECK(run_json({{"command", "sample"}, {"model", "wishart"}, {"n", 3}, {"alpha", 0.5}, {"samples", 4}, {"moments", 1}}).code == 2);
        // A nonpositive smoothing width is rejected.
        CHECK(run_json({{"command", "curve"}, {"kind", "hermite"}, {"q", {0.5, 0.5}}, {"a", {1, -1}}, {"density", 0.5}, {"eps", 0.0}}).code == 2);
    }

    TEST_CASE("scheme objects") {
        const RecurrenceScheme a = scheme_from_json({{"ensemble", "meixner"}, {"params", {{"alpha", 0.5}, {"beta", 1.0}}}}, 10);
        const RecurrenceScheme b = scheme_from_json({{"name", "meixner"}, {"alpha", 0.5}, {"beta", 1.0}}, 10);
        for (long k = 0; k < 5; ++k) CHECK(a.entry(k, k, 7) == b.entry(k, k, 7));
        CHECK_THROWS_AS(scheme_from_json({{"ensemble", "gue"}, {"name", "gue"}}, 10), InvalidArgument);
        CHECK(scheme_from_json({{"name", "multiple-hermite"}, {"a", {1, -1}}, {"q", {0.5, 0.5}}}, 20).lower_band() == 2);
    }

    TEST_CASE("helpers") {
        CHECK(format_double(0.1) == "0.10000000000000001");
        CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
        CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
        const std::vector<double> x{1, 2, 4, 8}, y{1, 0.25, 0.0625, 0.015625};
        CHECK(loglog_slope(x, y) == doctest::Approx(-2));
    }
}
