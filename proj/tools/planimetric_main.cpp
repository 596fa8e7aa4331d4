#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "planimetric/distances.hpp"
#include "planimetric/errors.hpp"
#include "planimetric/geometry.hpp"
#include "planimetric/kernel.hpp"
#include "planimetric/report.hpp"
#include "planimetric/rng.hpp"
#include "planimetric/verify.hpp"

namespace pm = planimetric;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct RunConfig {
    std::string command;          // distance | metric | certify | sweep
    json domain = {{"type", "disc"}};
    std::string z, w;             // complex literals; empty = unset
    std::string metric = "bergman";
    std::string suite;
    std::uint64_t seed = 1;
    int resolution = pm::kDefaultGraphResolution;
    int degree = pm::kernel::kDefaultDiscDegree;
    int kmax = pm::kDefaultOrbitBound;
    int pairs = 2000;
    int directions = 12;
    std::string out;              // empty = stdout
    std::string format = "json";
};

ordered_json config_to_json(const RunConfig& c) {
    ordered_json j;
    j["command"] = c.command;
    j["domain"] = c.domain;
    j["z"] = c.z;
    j["w"] = c.w;
    j["metric"] = c.metric;
    j["suite"] = c.suite;
    j["seed"] = c.seed;
    j["resolution"] = c.resolution;
    j["degree"] = c.degree;
    j["kmax"] = c.kmax;
    j["pairs"] = c.pairs;
    j["directions"] = c.directions;
    j["out"] = c.out;
    j["format"] = c.format;
    return j;
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    const std::vector<std::string> known{"command", "domain", "z", "w", "metric", "suite",
                                         "seed", "resolution", "degree", "kmax", "pairs",
                                         "directions", "out", "format"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            throw pm::ConfigError("unknown config field: " + it.key());
    auto get = [&](const char* key, auto& slot) {
        if (j.contains(key)) slot = j[key].get<std::decay_t<decltype(slot)>>();
    };
    get("command", c.command);
    if (j.contains("domain")) c.domain = j["domain"];
    get("z", c.z);
    get("w", c.w);
    get("metric", c.metric);
    get("suite", c.suite);
    get("seed", c.seed);
    get("resolution", c.resolution);
    get("degree", c.degree);
    get("kmax", c.kmax);
    get("pairs", c.pairs);
    get("directions", c.directions);
    get("out", c.out);
    get("format", c.format);
    return c;
}

void validate(const RunConfig& c) {
    const std::vector<std::string> commands{"distance", "metric", "certify", "sweep"};
    if (std::find(commands.begin(), commands.end(), c.command) == commands.end())
        throw pm::ConfigError("command must be one of distance|metric|certify|sweep");
    if (c.format != "json" && c.format != "csv")
        throw pm::ConfigError("format must be json or csv");
    if (c.command == "distance" && (c.z.empty() || c.w.empty()))
        throw pm::ConfigError("distance requires --z and --w");
    if (c.command == "metric" && c.z.empty()) throw pm::ConfigError("metric requires --z");
    if (c.command == "distance" &&
        !(c.metric == "bergman" || c.metric == "kobayashi" || c.metric == "caratheodory"))
        throw pm::ConfigError("metric must be bergman|kobayashi|caratheodory");
    if ((c.command == "certify" || c.command == "sweep") && c.suite.empty())
        throw pm::ConfigError(c.command + " requires --suite");
    const std::vector<std::string> suites{"lemma4", "prop1", "cor2",       "prop3",
                                          "remark_d", "monotonicity", "isolated"};
    if (!c.suite.empty() && std::find(suites.begin(), suites.end(), c.suite) == suites.end())
        throw pm::ConfigError("unknown suite: " + c.suite);
    if (c.resolution < 8) throw pm::ConfigError("resolution must be at least 8");
    if (c.degree < 1) throw pm::ConfigError("degree must be positive");
    if (c.kmax < 1) throw pm::ConfigError("kmax must be positive");
}

pm::verify::SamplePlan plan_from(const RunConfig& c, const pm::Domain& domain) {
    pm::verify::SamplePlan plan;
    plan.domain = domain;
    plan.seed = c.seed;
    plan.pair_count = c.pairs;
    plan.directions = c.directions;
    plan.graph_resolution = c.resolution;
    plan.orbit_bound = c.kmax;
    return plan;
}

std::vector<pm::verify::Certificate> run_suite(const RunConfig& c, const pm::Domain& domain) {
    using namespace pm::verify;
    if (c.suite == "lemma4") return {lemma4_enclosure(plan_from(c, pm::UnitDisc{}))};
    if (c.suite == "prop1") return {prop1_certificate(plan_from(c, domain))};
    if (c.suite == "cor2") return {corollary2_gap(plan_from(c, domain))};
    if (c.suite == "prop3") return {prop3_sweep(plan_from(c, domain))};
    if (c.suite == "remark_d") return {remark_d_limit(plan_from(c, domain))};
    if (c.suite == "isolated") return {isolated_point_check(DepthLadder{})};
    // monotonicity: the two canonical nestings at 100 seeded points each.
    pm::Rng rng(c.seed);
    std::vector<pm::Complex> disc_points, ring_points;
    while (disc_points.size() < 100) {
        pm::Complex p = rng.in_disc(0.7);
        disc_points.push_back(p);
    }
    while (ring_points.size() < 100) {
        pm::Complex p = rng.in_annulus(0.3, 0.93);
        ring_points.push_back(p);
    }
    return {monotonicity_check(pm::ScaledDisc{0.8}, pm::UnitDisc{}, disc_points),
            monotonicity_check(pm::Annulus{0.25}, pm::UnitDisc{}, ring_points)};
}

int run(const RunConfig& c) {
    pm::Domain domain = pm::domain_from_json(c.domain);
    ordered_json doc;
    doc["schema"] = "planimetric.report/1";
    doc["config"] = config_to_json(c);
    std::vector<pm::report::Row> rows;
    bool all_pass = true;

    if (c.command == "distance") {
        pm::Complex z = pm::parse_complex(c.z), w = pm::parse_complex(c.w);
        pm::DistanceEstimate est;
        if (c.metric == "bergman")
            est = pm::bergman_distance(domain, z, w, c.resolution);
        else if (c.metric == "kobayashi")
            est = pm::kobayashi_distance(domain, z, w, c.kmax);
        else
            est = pm::caratheodory_distance(domain, z, w);
        ordered_json result;
        result["metric"] = c.metric;
        result["value"] = est.value;
        result["method"] = pm::method_name(est.method);
        result["bracket_lo"] = est.bracket_lo;
        result["bracket_hi"] = est.bracket_hi;
        doc["results"] = ordered_json::array({result});
        pm::report::Row row;
        row.claim_id = "distance:" + c.metric;
        row.domain = pm::domain_label(domain);
        row.seed = c.seed;
        row.z = z;
        row.w = w;
        row.value = est.value;
        row.bound_lo = est.value - est.bracket_lo;
        row.bound_hi = est.value + est.bracket_hi;
        rows.push_back(row);
    } else if (c.command == "metric") {
        pm::Complex z = pm::parse_complex(c.z);
        double d = pm::dist_to_boundary(domain, z);
        pm::MetricField beta = pm::MetricField::preferred(domain);
        double value = beta(z);
        ordered_json result;
        result["beta"] = value;
        result["dist_to_boundary"] = d;
        result["d_times_beta"] = d * value;
        result["accuracy"] = beta.accuracy_tag();
        doc["results"] = ordered_json::array({result});
        pm::report::Row row;
        row.claim_id = "metric:bergman_density";
        row.domain = pm::domain_label(domain);
        row.seed = c.seed;
        row.z = z;
        row.value = value;
        rows.push_back(row);
    } else { // certify | sweep
        auto certs = run_suite(c, domain);
        auto results = ordered_json::array();
        for (const auto& cert : certs) {
            all_pass = all_pass && cert.pass;
            results.push_back(pm::verify::certificate_to_json(cert));
            auto cert_rows = pm::report::rows_from_certificate(cert);
            rows.insert(rows.end(), cert_rows.begin(), cert_rows.end());
        }
        doc["results"] = results;
    }

    std::string payload = c.format == "csv" ? pm::report::to_csv(rows)
                                            : pm::report::to_json_string(doc);
    if (c.out.empty()) {
        std::cout << payload;
    } else {
        std::ofstream file(c.out, std::ios::binary);
        if (!file) throw pm::Error("cannot open output file: " + c.out);
        file << payload;
        if (!file.good()) throw pm::Error("failed writing output file: " + c.out);
    }
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig flags; // CLI-provided values; merged over file/defaults below
    std::string domain_text, config_path;
    double z_re = 0, z_im = 0, w_re = 0, w_im = 0;

    CLI::App app{"invariant metrics of bounded planar domains"};
    app.require_subcommand(0, 1);
    std::vector<CLI::App*> subs;
    for (const char* name : {"distance", "metric", "certify", "sweep"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--domain", domain_text, "domain spec as JSON");
        sub->add_option("--config", config_path, "load a RunConfig JSON file");
        sub->add_option("--z", flags.z, "first point, re+imi literal");
        sub->add_option("--w", flags.w, "second point, re+imi literal");
        sub->add_option("--z-re", z_re);
        sub->add_option("--z-im", z_im);
        sub->add_option("--w-re", w_re);
        sub->add_option("--w-im", w_im);
        sub->add_option("--metric", flags.metric, "bergman|kobayashi|caratheodory");
        sub->add_option("--suite", flags.suite,
                        "lemma4|prop1|cor2|prop3|remark_d|monotonicity|isolated");
        sub->add_option("--seed", flags.seed);
        sub->add_option("--resolution", flags.resolution);
        sub->add_option("--degree", flags.degree);
        sub->add_option("--kmax", flags.kmax);
        sub->add_option("--pairs", flags.pairs);
        sub->add_option("--directions", flags.directions);
        sub->add_option("--out", flags.out, "output path (default stdout)");
        sub->add_option("--format", flags.format, "json|csv");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        CLI::App* active = nullptr;
        for (CLI::App* sub : subs)
            if (sub->parsed()) active = sub;
        if (!active) throw pm::ConfigError("expected a command: distance|metric|certify|sweep");

        RunConfig config;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw pm::ConfigError("cannot read config file: " + config_path);
            config = config_from_json(json::parse(in));
        }
        config.command = active->get_name();
        auto given = [&](const char* flag) { return active->count(flag) > 0; };
        if (given("--domain")) config.domain = json::parse(domain_text);
        if (given("--z")) config.z = flags.z;
        if (given("--w")) config.w = flags.w;
        if (given("--z-re") || given("--z-im")) config.z = pm::format_complex({z_re, z_im});
        if (given("--w-re") || given("--w-im")) config.w = pm::format_complex({w_re, w_im});
        if (given("--metric")) config.metric = flags.metric;
        if (given("--suite")) config.suite = flags.suite;
        if (given("--seed")) config.seed = flags.seed;
        if (given("--resolution")) config.resolution = flags.resolution;
        if (given("--degree")) config.degree = flags.degree;
        if (given("--kmax")) config.kmax = flags.kmax;
        if (given("--pairs")) config.pairs = flags.pairs;
        if (given("--directions")) config.directions = flags.directions;
        if (given("--out")) config.out = flags.out;
        if (given("--format")) config.format = flags.format;
        if (!config.z.empty()) pm::parse_complex(config.z);
        if (!config.w.empty()) pm::parse_complex(config.w);
        validate(config);
        return run(config);
    } catch (const pm::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const pm::Error& e) {
        std::cerr << "engine error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "engine error: " << e.what() << "\n";
        return 3;
    }
}
