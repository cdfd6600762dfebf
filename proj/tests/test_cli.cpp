#include <doctest.h>

#include <fstream>
#include <map>
#include <sstream>

#include "helpers.hpp"
#include "twrc/cli.hpp"

using namespace twrc;
using json = nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args, const std::string& stdinText = {}) {
    std::istringstream in(stdinText);
    std::ostringstream out, err;
    const int code = run_cli(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) { return std::string(TWRC_GOLDEN_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream s(line);
    while (std::getline(s, cell, sep)) out.push_back(cell);
    return out;
}

const char* kUnit = R"({"h":[1,1,1,1],"g":[1,1,1,1],"P":[1,1,1,1],"sigma2":[1,1,1,1],"sigmaR2":1,"PR":1})";

}  // namespace

TEST_CASE("channel json round trip") {
    // Output is rounded to 12 significant digits; parsing it back is exact after that.
    const SystemParams p = random_channel(3, ChannelRanges{});
    const SystemParams q = parse_channel(channel_to_json(p));
    for (int i = 0; i < 4; ++i) {
        CHECK(q.h[i] == round12(p.h[i]));
        CHECK(q.g[i] == round12(p.g[i]));
        CHECK(q.P[i] == round12(p.P[i]));
        CHECK(q.sigma2[i] == round12(p.sigma2[i]));
    }
    CHECK(q.sigmaR2 == round12(p.sigmaR2));
    CHECK(q.PR == round12(p.PR));
    const SystemParams r = parse_channel(channel_to_json(q));
    CHECK(channel_to_json(r) == channel_to_json(q));
}

TEST_CASE("channel parsing errors") {
    json j = json::parse(kUnit);
    j.erase("PR");
    try {
        parse_channel(j);
        FAIL("expected a throw");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("\"PR\"") != std::string::npos);
    }
    json k = json::parse(kUnit);
    k["h"] = {1, 2};
    CHECK_THROWS_AS(parse_channel(k), ValidationError);
    k = json::parse(kUnit);
    k["extra"] = 1;
    CHECK_THROWS_AS(parse_channel(k), ValidationError);
    k = json::parse(kUnit);
    k["sigmaR2"] = -1;
    CHECK_THROWS_AS(parse_channel(k), ValidationError);
}

TEST_CASE("rounding") {
    CHECK(round12(0.1 + 0.2) == 0.3);
    CHECK(std::signbit(round12(-0.0)) == false);
    CHECK(format12(0.5) == "0.5");
    CHECK(format12(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("terms of the unit channel") {
    const Run r = run({"terms", "-"}, kUnit);
    REQUIRE(r.code == kExitOk);
    const json j = json::parse(r.out);
    for (const json& c : j["C"]) CHECK(c.get<double>() == 0.5);
    for (const json& d : j["D"]) CHECK(d.get<double>() == 0.5);
}

TEST_CASE("validation exits") {
    CHECK(run({"terms", "-"}, R"({"h":[1,1,1,1],"g":[1,1,1,1],"P":[1,1,1,1],"sigma2":[1,1,1,1],"sigmaR2":1})").code ==
          kExitValidation);
    const Run r = run({"certify", "-"}, "{not json");
    CHECK(r.code == kExitValidation);
    CHECK_FALSE(r.err.empty());
    CHECK(run({"terms", "/nonexistent/channel.json"}).code == kExitValidation);
    CHECK(run({"bogus"}).code == kExitValidation);
    CHECK(run({"sweep", "-", "--from", "1", "--to", "0", "--param", "nope"}, kUnit).code == kExitValidation);
    CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("vertices") {
    const Run box = run({"vertices", "--unit-box"});
    REQUIRE(box.code == kExitOk);
    CHECK(json::parse(box.out)["count"] == 16);

    const Run down = run({"vertices", golden("hi.json"), "--link", "downlink"});
    REQUIRE(down.code == kExitOk);
    const json d = json::parse(down.out);
    CHECK(d.contains("case"));
    CHECK(d["indexing"] == "effective");
}

TEST_CASE("certify exits") {
    CHECK(run({"certify", "-"}, kUnit).code == kExitOk);
    CHECK(run({"certify", golden("hi.json")}).code == kExitOk);
    CHECK(run({"certify", golden("hi.json"), "--test-corrupt-recipe"}).code == kExitCertFailure);
    const Run a = run({"certify", "--random", "100", "7"});
    const Run b = run({"certify", "--random", "100", "7"});
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    const json j = json::parse(a.out);
    CHECK(j["passed"] == 100);
    CHECK(j["seed"] == 7);
}

TEST_CASE("sweep over relay power") {
    const Run r = run({"sweep", golden("hi.json"), "--param", "PR", "--from", "0", "--to", "40", "--steps", "9"});
    REQUIRE(r.code == kExitOk);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    const auto header = split(line, ',');
    REQUIRE(header.size() == 22);
    CHECK(header[0] == "value");
    CHECK(header[5] == "D1");
    std::map<std::string, int> col;
    for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = static_cast<int>(i);

    std::map<double, std::array<double, 4>> D;
    int zeroRows = 0;
    while (std::getline(lines, line)) {
        const auto cells = split(line, ',');
        REQUIRE(cells.size() == header.size());
        const double v = std::stod(cells[0]);
        std::array<double, 4> d;
        for (int i = 0; i < 4; ++i) d[i] = std::stod(cells[col["D" + std::to_string(i + 1)]]);
        if (D.count(v)) CHECK(D[v] == d);
        D[v] = d;
        if (v == 0.0) {
            ++zeroRows;
            for (double x : d) CHECK(x == 0.0);
            if (cells[col["link"]] == "downlink")
                for (int i = 1; i <= 4; ++i) {
                    CHECK(std::stod(cells[col["target" + std::to_string(i)]]) == 0.0);
                    CHECK(std::stod(cells[col["achieved" + std::to_string(i)]]) == 0.0);
                }
        }
        CHECK(cells.back() == "1");
    }
    CHECK(zeroRows > 0);
    CHECK(D.size() == 9);
    std::array<double, 4> prev{};
    for (const auto& [v, d] : D) {
        for (int i = 0; i < 4; ++i) CHECK(d[i] >= prev[i]);
        prev = d;
    }
}

TEST_CASE("golden fixtures") {
    std::ifstream manifest(golden("manifest.txt"));
    REQUIRE(manifest.good());
    std::string line;
    int entries = 0;
    while (std::getline(manifest, line)) {
        if (line.empty()) continue;
        auto args = split(line, ' ');
        const std::string expected = args.front();
        args.erase(args.begin());
        for (std::string& a : args)
            if (a.size() > 5 && a.compare(a.size() - 5, 5, ".json") == 0) a = golden(a);
        INFO(expected);
        CHECK(run(args).out == slurp(golden(expected)));
        ++entries;
    }
    CHECK(entries > 0);
}
