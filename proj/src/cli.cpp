#include "twrc/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "twrc/bounds.hpp"
#include "twrc/certifier.hpp"
#include "twrc/downlink.hpp"
#include "twrc/effective.hpp"
#include "twrc/polytope.hpp"

namespace twrc {

using nlohmann::json;

double round12(double x) {
    if (!std::isfinite(x)) return x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    const double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;
}

std::string format12(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", round12(x));
    return buf;
}

namespace {

// JSON has no infinity; +inf is written as null.
json num(double x) {
    if (std::isinf(x) && x > 0) return nullptr;
    return round12(x);
}

json vec(const Vec4& v) {
    json a = json::array();
    for (double x : v) a.push_back(num(x));
    return a;
}

Vec4 read_vec(const json& j, const char* field, bool nullIsInf) {
    if (!j.contains(field)) throw ValidationError(std::string("missing field \"") + field + "\"");
    const json& a = j.at(field);
    if (!a.is_array() || a.size() != 4) {
        throw ValidationError(std::string("field \"") + field + "\" must be an array of 4 numbers");
    }
    Vec4 v{};
    for (int i = 0; i < 4; ++i) {
        if (nullIsInf && a[i].is_null()) {
            v[i] = std::numeric_limits<double>::infinity();
        } else if (a[i].is_number()) {
            v[i] = a[i].get<double>();
        } else {
            throw ValidationError(std::string("field \"") + field + "\" must be an array of 4 numbers");
        }
    }
    return v;
}

double read_scalar(const json& j, const char* field) {
    if (!j.contains(field)) throw ValidationError(std::string("missing field \"") + field + "\"");
    if (!j.at(field).is_number()) throw ValidationError(std::string("field \"") + field + "\" must be a number");
    return j.at(field).get<double>();
}

}  // namespace

SystemParams parse_channel(const json& j) {
    if (!j.is_object()) throw ValidationError("channel file must be a JSON object");
    for (const auto& item : j.items()) {
        const std::string& k = item.key();
        if (k != "h" && k != "g" && k != "P" && k != "sigma2" && k != "sigmaR2" && k != "PR") {
            throw ValidationError("unknown field \"" + k + "\"");
        }
    }
    SystemParams p;
    p.h = read_vec(j, "h", false);
    p.g = read_vec(j, "g", false);
    p.P = read_vec(j, "P", false);
    p.sigma2 = read_vec(j, "sigma2", true);
    p.sigmaR2 = read_scalar(j, "sigmaR2");
    p.PR = read_scalar(j, "PR");
    p.validate();
    return p;
}

json channel_to_json(const SystemParams& p) {
    return json{{"h", vec(p.h)},           {"g", vec(p.g)},           {"P", vec(p.P)},
                {"sigma2", vec(p.sigma2)}, {"sigmaR2", num(p.sigmaR2)}, {"PR", num(p.PR)}};
}

json terms_to_json(const CapacityTerms& t) {
    return json{{"C", vec(t.C)},
                {"D", vec(t.D)},
                {"Cpair",
                 {{"13", num(t.Cpair[k13])}, {"14", num(t.Cpair[k14])}, {"23", num(t.Cpair[k23])},
                  {"24", num(t.Cpair[k24])}}},
                {"sigmaBar2", vec(t.sigmaBar2)}};
}

json certificate_to_json(const GapCertificate& c) {
    return json{{"link", to_string(c.link)},    {"label", c.vertexLabel},      {"target", vec(c.target.r)},
                {"achieved", vec(c.achieved.r)}, {"slack", vec(c.slack)},       {"maxSlack", num(max_slack(c))},
                {"inPolytope", c.inPolytope},   {"pass", c.pass},              {"detail", c.detail}};
}

namespace {

std::string read_source(const std::string& path, std::istream& in) {
    std::ostringstream ss;
    if (path == "-") {
        ss << in.rdbuf();
    } else {
        std::ifstream f(path);
        if (!f) throw ValidationError("cannot open channel file \"" + path + "\"");
        ss << f.rdbuf();
    }
    return ss.str();
}

SystemParams load_channel(const std::string& path, std::istream& in) {
    json j;
    try {
        j = json::parse(read_source(path, in));
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
    return parse_channel(j);
}

json perm_json(const EffectiveSystem& e) {
    json a = json::array();
    for (int x : e.perm) a.push_back(x + 1);
    return a;
}

json vertex_set_json(const VertexSet& all) {
    const VertexSet maxv = maximal_vertices(all);
    json out = json::array();
    for (std::size_t k = 0; k < all.vertices.size(); ++k) {
        const bool maximal = std::any_of(maxv.vertices.begin(), maxv.vertices.end(),
                                         [&](const RateTuple& m) { return m == all.vertices[k]; });
        out.push_back({{"rates", vec(all.vertices[k].r)}, {"tight", all.tight_sets[k]}, {"maximal", maximal}});
    }
    return out;
}

void write_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

// ---- terms -------------------------------------------------------------------

int cmd_terms(const std::string& path, std::istream& in, std::ostream& out) {
    write_json(out, terms_to_json(capacity_terms(load_channel(path, in))));
    return kExitOk;
}

// ---- vertices ----------------------------------------------------------------

int cmd_vertices(const std::string& path, const std::string& link, bool unitBox, std::istream& in,
                 std::ostream& out) {
    json j;
    if (unitBox) {
        std::vector<Row> rows;
        for (int i = 0; i < 4; ++i) {
            Row r;
            r.a[i] = 1.0;
            r.b = 1.0;
            rows.push_back(r);
        }
        const VertexSet vs = enumerate_vertices(HalfspaceSystem(rows));
        j = {{"link", "unit-box"}, {"count", vs.vertices.size()}, {"vertices", vertex_set_json(vs)}};
        write_json(out, j);
        return kExitOk;
    }
    const SystemParams p = load_channel(path, in);
    if (link == "outer" || link == "uplink") {
        const CapacityTerms t = capacity_terms(p);
        const VertexSet vs = enumerate_vertices(link == "outer" ? outer_bound(t) : uplink_polytope(t));
        j = {{"link", link}, {"indexing", "original"}, {"count", vs.vertices.size()}, {"vertices", vertex_set_json(vs)}};
    } else {
        const EffectiveSystem e = canonicalize(p);
        const CapacityTerms t = capacity_terms(e.params);
        const CaseLabel c = classify_case(t.sigmaBar2);
        const VertexSet vs = enumerate_vertices(downlink_polytope(c, t));
        j = {{"link", link},
             {"indexing", "effective"},
             {"case", to_string(c)},
             {"perm", perm_json(e)},
             {"count", vs.vertices.size()},
             {"vertices", vertex_set_json(vs)}};
    }
    write_json(out, j);
    return kExitOk;
}

// ---- certify -----------------------------------------------------------------

const char* kCertCsvHeader =
    "link,order,case,label,subcase,target1,target2,target3,target4,achieved1,achieved2,achieved3,achieved4,"
    "slack1,slack2,slack3,slack4,pass";

void cert_csv_cells(std::ostream& out, const GapCertificate& c) {
    for (const Vec4* v : {&c.target.r, &c.achieved.r, &c.slack})
        for (double x : *v) out << ',' << format12(x);
    out << ',' << (c.pass ? 1 : 0);
}

json report_json(const Theorem1Report& rep) {
    json runs = json::array();
    for (const LinkRun& run : rep.runs) {
        json up = json::array(), down = json::array();
        for (const GapCertificate& c : run.uplink) up.push_back(certificate_to_json(c));
        for (const GapCertificate& c : run.downlink) down.push_back(certificate_to_json(c));
        runs.push_back({{"order", order_tag(run.order)},
                        {"perm", perm_json(run.eff)},
                        {"pairSwapped", run.eff.pairSwapped},
                        {"case", to_string(run.caseLabel)},
                        {"uplink", up},
                        {"downlink", down}});
    }
    json combined = json::array();
    for (const CombinedVertex& cv : rep.combined) {
        json c = certificate_to_json(cv.certificate);
        c["order"] = order_tag(rep.runs[cv.run].order);
        c["hullTarget"] = vec(cv.target.r);
        c["uplinkInHull"] = cv.uplinkInHull;
        c["downlinkInHull"] = cv.downlinkInHull;
        combined.push_back(c);
    }
    return {{"pass", rep.pass}, {"runs", runs}, {"combined", combined}};
}

void report_csv(std::ostream& out, const Theorem1Report& rep) {
    out << kCertCsvHeader << "\n";
    for (const LinkRun& run : rep.runs) {
        for (const auto* certs : {&run.uplink, &run.downlink}) {
            for (const GapCertificate& c : *certs) {
                out << to_string(c.link) << ',' << order_tag(run.order) << ',' << to_string(run.caseLabel) << ','
                    << c.vertexLabel << ',' << (c.link == Link::Downlink ? c.detail : "");
                cert_csv_cells(out, c);
                out << "\n";
            }
        }
    }
    for (const CombinedVertex& cv : rep.combined) {
        const LinkRun& run = rep.runs[cv.run];
        out << "combined," << order_tag(run.order) << ',' << to_string(run.caseLabel) << ','
            << cv.certificate.vertexLabel << ',';
        cert_csv_cells(out, cv.certificate);
        out << "\n";
    }
}

json monte_carlo_json(const MonteCarloConfig& cfg, const MonteCarloResult& r) {
    json j;
    j["seed"] = cfg.seed;
    j["trials"] = r.trials;
    j["passed"] = r.passed;
    j["uplink"] = {{"certificates", r.uplinkCerts}, {"passed", r.uplinkPassed}, {"maxSlack", num(r.maxSlackUplink)}};
    j["downlink"] = {
        {"certificates", r.downlinkCerts}, {"passed", r.downlinkPassed}, {"maxSlack", num(r.maxSlackDownlink)}};
    j["combined"] = {
        {"certificates", r.combinedCerts}, {"passed", r.combinedPassed}, {"maxSlack", num(r.maxSlackCombined)}};
    j["worstTrial"] = r.worstTrial;
    j["worstChannel"] = r.worstTrial >= 0 ? channel_to_json(r.worstChannel) : json(nullptr);
    j["caseCounts"] = r.caseCounts;
    j["subcaseCounts"] = r.subcaseCounts;
    return j;
}

int cmd_certify(const std::string& path, const std::vector<std::uint64_t>& random, const std::string& format,
                bool corrupt, std::istream& in, std::ostream& out) {
    Theorem1Options opt;
    opt.downlink.corruptRecipe = corrupt;
    if (!random.empty()) {
        MonteCarloConfig cfg;
        cfg.trials = static_cast<int>(random[0]);
        cfg.seed = random[1];
        const MonteCarloResult r = monte_carlo(cfg, opt);
        const json j = monte_carlo_json(cfg, r);
        if (format == "json") {
            write_json(out, j);
        } else {
            out << "metric,value\n";
            out << "seed," << cfg.seed << "\ntrials," << r.trials << "\npassed," << r.passed << "\n";
            out << "uplink_passed," << r.uplinkPassed << "\nuplink_certificates," << r.uplinkCerts << "\n";
            out << "downlink_passed," << r.downlinkPassed << "\ndownlink_certificates," << r.downlinkCerts << "\n";
            out << "combined_passed," << r.combinedPassed << "\ncombined_certificates," << r.combinedCerts << "\n";
            out << "max_slack_uplink," << format12(r.maxSlackUplink) << "\n";
            out << "max_slack_downlink," << format12(r.maxSlackDownlink) << "\n";
            out << "max_slack_combined," << format12(r.maxSlackCombined) << "\n";
        }
        return r.passed == r.trials ? kExitOk : kExitCertFailure;
    }
    const SystemParams p = load_channel(path, in);
    const Theorem1Report rep = verify_theorem1(p, opt);
    if (format == "json") {
        json j = report_json(rep);
        j["channel"] = channel_to_json(p);
        write_json(out, j);
    } else {
        report_csv(out, rep);
    }
    return rep.pass ? kExitOk : kExitCertFailure;
}

// ---- sweep -------------------------------------------------------------------

double& sweep_slot(SystemParams& p, const std::string& name) {
    if (name == "PR") return p.PR;
    if (name == "sigmaR2") return p.sigmaR2;
    const std::pair<const char*, Vec4*> groups[] = {{"P", &p.P}, {"h", &p.h}, {"g", &p.g}, {"sigma2_", &p.sigma2}};
    for (const auto& [prefix, v] : groups) {
        const std::string pre = prefix;
        if (name.size() == pre.size() + 1 && name.compare(0, pre.size(), pre) == 0) {
            const int k = name.back() - '1';
            if (k >= 0 && k < 4) return (*v)[k];
        }
    }
    throw ValidationError("unknown sweep parameter \"" + name +
                          "\" (expected PR, sigmaR2, P1..P4, h1..h4, g1..g4, sigma2_1..sigma2_4)");
}

int cmd_sweep(const std::string& path, const std::string& param, double from, double to, int steps, bool corrupt,
              std::istream& in, std::ostream& out) {
    if (steps < 1) throw ValidationError("steps must be >= 1");
    if (!std::isfinite(from) || !std::isfinite(to)) throw ValidationError("from/to must be finite");
    SystemParams p = load_channel(path, in);
    double& slot = sweep_slot(p, param);
    Theorem1Options opt;
    opt.downlink.corruptRecipe = corrupt;

    out << "value,order,case,link,label,D1,D2,D3,D4,target1,target2,target3,target4,achieved1,achieved2,achieved3,"
           "achieved4,slack1,slack2,slack3,slack4,pass\n";
    bool all = true;
    for (int k = 0; k < steps; ++k) {
        const double v = steps == 1 ? from : from + (to - from) * static_cast<double>(k) / (steps - 1);
        slot = v;
        const CapacityTerms t = capacity_terms(p);
        const Theorem1Report rep = verify_theorem1(p, opt);
        all = all && rep.pass;
        auto row = [&](const LinkRun& run, const GapCertificate& c) {
            out << format12(v) << ',' << order_tag(run.order) << ',' << to_string(run.caseLabel) << ','
                << to_string(c.link) << ',' << c.vertexLabel;
            for (double d : t.D) out << ',' << format12(d);
            cert_csv_cells(out, c);
            out << "\n";
        };
        for (const LinkRun& run : rep.runs) {
            for (const GapCertificate& c : run.uplink) row(run, c);
            for (const GapCertificate& c : run.downlink) row(run, c);
        }
        for (const CombinedVertex& cv : rep.combined) row(rep.runs[cv.run], cv.certificate);
    }
    return all ? kExitOk : kExitCertFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-pair two-way relay channel: outer bounds, achievable schemes and gap certificates", "twrc"};
    app.require_subcommand(1);

    std::string termsFile;
    auto* terms = app.add_subcommand("terms", "Print capacity terms of a channel file");
    terms->add_option("channel", termsFile, "Channel JSON file, or - for stdin")->required();

    std::string vertFile, link = "outer";
    bool unitBox = false;
    auto* vertices = app.add_subcommand("vertices", "List polytope vertices with tight sets and maximal flags");
    vertices->add_option("channel", vertFile, "Channel JSON file, or - for stdin");
    vertices->add_option("--link", link, "outer | uplink | downlink")
        ->check(CLI::IsMember({"outer", "uplink", "downlink"}));
    vertices->add_flag("--unit-box", unitBox, "Use the synthetic box 0 <= R_i <= 1 instead of a channel");

    std::string certFile, format = "json";
    std::vector<std::uint64_t> random;
    bool corrupt = false;
    auto* certify = app.add_subcommand("certify", "Certify the half-bit gap for a channel or a random ensemble");
    certify->add_option("channel", certFile, "Channel JSON file, or - for stdin");
    certify->add_option("--random", random, "trials seed: Monte Carlo over random channels")->expected(2);
    certify->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    certify->add_flag("--test-corrupt-recipe", corrupt)->group("");

    std::string sweepFile, param = "PR";
    double from = 0.0, to = 1.0;
    int steps = 11;
    bool sweepCorrupt = false;
    auto* sweep = app.add_subcommand("sweep", "CSV of vertex rates and slacks against one swept parameter");
    sweep->add_option("channel", sweepFile, "Channel JSON file, or - for stdin")->required();
    sweep->add_option("--param", param, "PR, sigmaR2, P1..P4, h1..h4, g1..g4, sigma2_1..sigma2_4");
    sweep->add_option("--from", from, "First value")->required();
    sweep->add_option("--to", to, "Last value")->required();
    sweep->add_option("--steps", steps, "Number of values (>= 1)");
    sweep->add_flag("--test-corrupt-recipe", sweepCorrupt)->group("");

    std::vector<std::string> argvStore{"twrc"};
    argvStore.insert(argvStore.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (std::string& s : argvStore) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*terms) return cmd_terms(termsFile, in, out);
        if (*vertices) {
            if (!unitBox && vertFile.empty()) throw ValidationError("vertices: a channel file or --unit-box is required");
            return cmd_vertices(vertFile, link, unitBox, in, out);
        }
        if (*certify) {
            if (random.empty() == certFile.empty()) {
                throw ValidationError("certify: give exactly one of a channel file or --random trials seed");
            }
            return cmd_certify(certFile, random, format, corrupt, in, out);
        }
        if (*sweep) return cmd_sweep(sweepFile, param, from, to, steps, sweepCorrupt, in, out);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitCertFailure;
    }
    return kExitValidation;
}

}  // namespace twrc
