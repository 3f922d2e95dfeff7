// Command-line front end: condition checks, tight-span queries, subtree
// representations, dominating metrics, diversity analysis and the
// randomized property suites.  All numbers are exact rationals; output
// is deterministic for fixed input, flags and seed.

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tspan/distance_space.hpp"
#include "tspan/diversity.hpp"
#include "tspan/domination.hpp"
#include "tspan/errors.hpp"
#include "tspan/json_io.hpp"
#include "tspan/real_tree.hpp"
#include "tspan/tightspan.hpp"

using namespace tspan;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_input_error = 2;

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string digest_of(const std::string& path) {
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a(read_file(path))));
    return std::string("fnv1a:") + hex;
}

struct ReportOptions {
    bool pretty = false;
    bool timing = false;
};

class Report {
  public:
    Report(std::string command, const ReportOptions& options)
        : options_(options), start_(std::chrono::steady_clock::now()) {
        body_["command"] = std::move(command);
        body_["inputs"] = Json::object();
    }

    void add_input(const std::string& name, const std::string& path) {
        body_["inputs"][name] = Json{{"path", path}, {"digest", digest_of(path)}};
    }

    Json& body() { return body_; }

    // Pretty mode prints the human lines pushed alongside the fields.
    void line(const std::string& text) { lines_.push_back(text); }

    int finish(int code) {
        if (options_.pretty) {
            for (const auto& l : lines_) std::cout << l << "\n";
        } else {
            if (options_.timing) {
                const auto elapsed = std::chrono::steady_clock::now() - start_;
                body_["wall_ms"] =
                    std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
            }
            std::cout << body_.dump(2) << "\n";
        }
        return code;
    }

  private:
    ReportOptions options_;
    Json body_;
    std::vector<std::string> lines_;
    std::chrono::steady_clock::time_point start_;
};

int run_check(const std::string& path, const std::string& kind, const ReportOptions& options) {
    Report report("check", options);
    report.add_input("data", path);
    Certificate certificate;
    if (kind == "diversity") {
        const Json value = parse_json_file(path);
        if (!value.is_object() || !value.contains("elements") || !value.contains("delta")) {
            throw ParseError("expected a diversity object");
        }
        std::vector<std::string> elements;
        for (const auto& e : value.at("elements")) elements.push_back(e.get<std::string>());
        // Raw table, bypassing the constructor so violations become
        // certificates instead of errors.
        SubsetFunction table(std::size_t(1) << elements.size(), Rational(0));
        const Json& delta = value.at("delta");
        for (SubsetMask a = 1; a < table.size(); ++a) {
            std::string key;
            for (std::size_t i = 0; i < elements.size(); ++i) {
                if ((a >> i & 1) == 0) continue;
                if (!key.empty()) key += ",";
                key += elements[i];
            }
            if (!delta.contains(key)) {
                throw ParseError("incomplete table: missing subset \"" + key + "\"");
            }
            table[a] = rational_from_json(delta.at(key));
        }
        certificate = check_diversity_axioms(elements, table);
    } else {
        const DistanceSpace d = load_distance_space(path);
        if (kind == "metric") {
            certificate = check_metric(d);
        } else if (kind == "4pt") {
            certificate = check_four_point(d);
        } else {
            certificate = check_extended_four_point(d);
        }
    }
    report.body()["kind"] = kind;
    report.body()["certificate"] = certificate_to_json(certificate);
    report.line(to_string(certificate));
    return report.finish(certificate.ok() ? exit_ok : exit_violation);
}

int run_tightspan(const std::string& sub, const std::string& path, const std::string& vector_arg,
                  const std::string& second_vector, const std::string& pair_arg,
                  const std::string& t_arg, const std::string& point_label,
                  const ReportOptions& options) {
    Report report("tightspan " + sub, options);
    report.add_input("data", path);
    const DistanceSpace d = load_distance_space(path);
    Json& body = report.body();

    if (sub == "member") {
        const PointFunction f = point_function_from_text(d, vector_arg);
        const bool pd = in_pd(d, f);
        body["in_Pd"] = pd;
        body["in_Td"] = pd && in_td(d, f);
        report.line(std::string("in_Pd: ") + (pd ? "true" : "false"));
        return report.finish(exit_ok);
    }
    if (sub == "retract") {
        const PointFunction f = point_function_from_text(d, vector_arg);
        const auto g = retract_to_td(d, f);
        body["point"] = point_function_to_json(d, g.function);
        report.line(to_string(g.function));
        return report.finish(exit_ok);
    }
    if (sub == "geodesic") {
        const auto comma = pair_arg.find(',');
        if (comma == std::string::npos) throw ParseError("--pair expects \"x,y\"");
        const auto point = geodesic_point(d, pair_arg.substr(0, comma),
                                          pair_arg.substr(comma + 1), parse_rational(t_arg));
        body["point"] = point_function_to_json(d, point.function);
        report.line(to_string(point.function));
        return report.finish(exit_ok);
    }
    if (sub == "kappa") {
        const auto gates = kappa_gates(d, point_label);
        Json list = Json::array();
        for (const auto& gate : gates) {
            list.push_back(point_function_to_json(d, gate.function));
        }
        body["gates"] = std::move(list);
        report.line(std::to_string(gates.size()) + " gates");
        return report.finish(exit_ok);
    }
    if (sub == "dist") {
        const PointFunction f = point_function_from_text(d, vector_arg);
        const PointFunction g = point_function_from_text(d, second_vector);
        body["d_inf"] = rational_to_json(d_inf(f, g));
        if (in_td(d, f) && in_td(d, g)) {
            body["d_inf_by_formula"] = rational_to_json(d_inf_by_formula(d, f, g));
        }
        report.line(to_string(d_inf(f, g)));
        return report.finish(exit_ok);
    }
    throw ParseError("unknown tightspan subcommand '" + sub + "'");
}

int run_subtree(const std::string& path, const std::string& out, bool newick,
                const ReportOptions& options) {
    Report report("subtree", options);
    report.add_input("data", path);
    const DistanceSpace d = load_distance_space(path);

    const Certificate certificate = check_extended_four_point(d);
    report.body()["certificate"] = certificate_to_json(certificate);
    if (!certificate.ok()) {
        report.line(to_string(certificate));
        return report.finish(exit_violation);
    }

    const auto rep = build_subtree_representation(d);
    const Certificate verification = verify_subtree_representation(rep, d);
    report.body()["verification"] = certificate_to_json(verification);
    Json tree = subtree_representation_to_json(rep);
    if (!out.empty()) {
        std::ofstream output(out);
        output << tree.dump(2) << "\n";
        report.body()["out"] = out;
    } else {
        report.body()["representation"] = std::move(tree);
    }
    if (newick) {
        report.body()["newick"] = tree_to_newick(rep.tree);
    }
    report.line("representation verified: " + to_string(verification));
    return report.finish(verification.ok() ? exit_ok : exit_violation);
}

std::vector<std::pair<std::string, std::string>> parse_pair_order(const std::string& arg) {
    std::vector<std::pair<std::string, std::string>> order;
    std::string token;
    std::istringstream input(arg);
    while (std::getline(input, token, ';')) {
        const auto comma = token.find(',');
        if (comma == std::string::npos) throw ParseError("--order expects \"a,b;a,c;...\"");
        order.emplace_back(token.substr(0, comma), token.substr(comma + 1));
    }
    return order;
}

int run_dominate(const std::string& sub, const std::string& path, const std::string& metric_path,
                 const std::string& pair_arg, const std::string& order_arg,
                 const std::string& tol_arg, const ReportOptions& options) {
    Report report("dominate " + sub, options);
    report.add_input("base", path);
    const DistanceSpace d = load_distance_space(path);
    Json& body = report.body();

    const auto load_metric = [&]() {
        report.add_input("metric", metric_path);
        return DominatingMetric(Metric(load_distance_space(metric_path)), d);
    };

    if (sub == "any") {
        const auto rho = some_dominating_metric(d);
        body["metric"] = distance_space_to_json(rho.metric().space());
        report.line("constant dominating metric at " + to_string(d.diameter()));
        return report.finish(exit_ok);
    }
    if (sub == "pin") {
        const auto comma = pair_arg.find(',');
        if (comma == std::string::npos) throw ParseError("--pair expects \"x,y\"");
        const auto pinned =
            pin_pair(load_metric(), pair_arg.substr(0, comma), pair_arg.substr(comma + 1));
        body["metric"] = distance_space_to_json(pinned.metric().space());
        report.line("pinned " + pair_arg);
        return report.finish(exit_ok);
    }
    if (sub == "minimize") {
        const auto rho = order_arg.empty()
                             ? minimal_dominating_metric(d)
                             : minimal_dominating_metric(d, parse_pair_order(order_arg));
        body["metric"] = distance_space_to_json(rho.metric().space());
        body["minimal"] = verify_minimal(rho);
        report.line("lexicographic minimum computed; certified minimal");
        return report.finish(exit_ok);
    }
    if (sub == "verify") {
        const bool minimal = verify_minimal(load_metric());
        body["minimal"] = minimal;
        report.line(minimal ? "minimal" : "not minimal");
        return report.finish(minimal ? exit_ok : exit_violation);
    }
    if (sub == "embed") {
        const Rational tolerance = tol_arg.empty() ? pow2_inverse(40) : parse_rational(tol_arg);
        const auto embedding = embed_minimal_metric(d, load_metric(), tolerance);
        Json points = Json::object();
        for (const auto& [label, f] : embedding) {
            points[label] = point_function_to_json(d, f);
        }
        body["embedding"] = std::move(points);
        report.line("embedded " + std::to_string(embedding.size()) + " points");
        return report.finish(exit_ok);
    }
    throw ParseError("unknown dominate subcommand '" + sub + "'");
}

int run_diversity(const std::string& sub, const std::string& path, const std::string& gate,
                  const ReportOptions& options) {
    Report report("diversity " + sub, options);
    report.add_input("data", path);
    const Diversity delta = load_diversity(path);
    Json& body = report.body();

    if (sub == "ddelta") {
        body["distance"] = distance_space_to_json(d_delta(delta));
        report.line("induced distance on " + std::to_string(delta.subset_count()) + " subsets");
        return report.finish(exit_ok);
    }
    if (sub == "arboreal") {
        const Certificate certificate = is_arboreal(delta);
        body["certificate"] = certificate_to_json(certificate);
        body["arboreal"] = certificate.ok();
        report.line(certificate.ok() ? "arboreal" : to_string(certificate));
        return report.finish(certificate.ok() ? exit_ok : exit_violation);
    }
    if (sub == "phylo") {
        const auto result = is_phylogenetic(delta);
        body["phylogenetic"] = result.phylogenetic;
        if (result.phylogenetic) {
            body["tree"] = tree_to_json(*result.tree);
            report.line("realizable: tree emitted");
        } else if (result.witness_subset) {
            body["witness"] = Json{{"subset", delta.subset_label(*result.witness_subset)},
                                   {"delta", rational_to_json(result.delta_value)},
                                   {"hull", rational_to_json(result.hull_value)}};
            report.line("not realizable at " + delta.subset_label(*result.witness_subset) +
                        ": value " + to_string(result.delta_value) + " vs hull " +
                        to_string(result.hull_value));
        } else if (result.metric_witness) {
            body["witness"] = certificate_to_json(*result.metric_witness);
            report.line("induced metric is not additive");
        }
        return report.finish(result.phylogenetic ? exit_ok : exit_violation);
    }
    if (sub == "nice") {
        const auto result = check_nice(delta);
        body["pairwise_equals_collections"] = result.equal;
        if (result.witness) {
            body["witness"] = subset_function_to_json(delta, *result.witness);
        }
        report.line(result.equal ? "regions coincide" : "regions differ");
        return report.finish(result.equal ? exit_ok : exit_violation);
    }
    if (sub == "embed") {
        if (gate.empty()) throw ParseError("--gate <element> required");
        const auto f = g_map(delta, gate);
        const auto g = embed_into_td(delta, f);
        body["gate"] = subset_function_to_json(delta, f);
        body["translate"] = subset_function_to_json(delta, g);
        report.line("translate lies in the subset-distance span");
        return report.finish(exit_ok);
    }
    throw ParseError("unknown diversity subcommand '" + sub + "'");
}

// ---------------------------------------------------------------------------
// Randomized property suites

std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) {
    return rng() % bound;
}

Rational fuzz_rational(std::mt19937_64& rng) {
    return Rational(static_cast<unsigned>(below(rng, 9))) /
           Rational(static_cast<unsigned>(1 + below(rng, 2)));
}

DistanceSpace fuzz_distance_space(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(1, char('a' + i)));
    RationalMatrix table(n, RationalVector(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            table[i][j] = table[j][i] = fuzz_rational(rng);
        }
    }
    return DistanceSpace(labels, std::move(table));
}

Metric fuzz_metric(std::mt19937_64& rng, std::size_t n) {
    auto d = fuzz_distance_space(rng, n);
    RationalMatrix table = d.table();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && table[i][j] == 0) table[i][j] = Rational(1);
        }
    }
    // Shortest-path closure restores the triangle inequality.
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j || i == k || j == k) continue;
                const Rational through = table[i][k] + table[k][j];
                if (through < table[i][j]) table[i][j] = through;
            }
        }
    }
    return Metric(DistanceSpace(d.labels(), std::move(table)));
}

int run_fuzz(const std::string& mode, std::uint64_t seed, std::size_t count,
             const ReportOptions& options) {
    Report report("fuzz " + mode, options);
    Json& body = report.body();
    body["mode"] = mode;
    body["seed"] = seed;
    body["count"] = count;
    Json failures = Json::array();
    std::size_t passes = 0;

    for (std::size_t i = 0; i < count; ++i) {
        std::mt19937_64 rng(seed + i);
        try {
            if (mode == "subtree") {
                const auto [d, rep] = random_subtree_distance(
                    rng(), 1 + below(rng, 6), 2 + below(rng, 18));
                if (!check_extended_four_point(d).ok()) {
                    throw VerificationError("generated distance fails the extended condition");
                }
                const auto rebuilt = build_subtree_representation(d);
                if (!verify_subtree_representation(rebuilt, d).ok()) {
                    throw VerificationError("roundtrip verification failed");
                }
            } else if (mode == "metric") {
                const auto metric = fuzz_metric(rng, 2 + below(rng, 5));
                const bool classical = check_four_point(metric.space()).ok();
                const bool extended = check_extended_four_point(metric.space()).ok();
                if (classical != extended) {
                    throw VerificationError("four-point verdicts disagree on a metric");
                }
            } else if (mode == "diversity") {
                const auto metric = fuzz_metric(rng, 2 + below(rng, 3));
                const auto delta = diameter_diversity(metric);
                if (!check_nice(delta).equal) {
                    throw VerificationError("diameter diversity failed the collapse check");
                }
                for (const auto& element : delta.elements()) {
                    embed_into_td(delta, g_map(delta, element));  // throws unless it embeds
                }
                if (is_phylogenetic(delta).phylogenetic && !is_arboreal(delta).ok()) {
                    throw VerificationError("realizable diversity not arboreal");
                }
            } else {
                throw ParseError("unknown fuzz mode '" + mode + "'");
            }
            ++passes;
        } catch (const ParseError&) {
            throw;
        } catch (const Error& error) {
            failures.push_back(Json{{"case", i}, {"error", error.what()}});
        }
    }
    body["passes"] = passes;
    body["failures"] = std::move(failures);
    report.line(std::to_string(passes) + "/" + std::to_string(count) + " passed");
    return report.finish(passes == count ? exit_ok : exit_violation);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact tight spans, subtree representations and diversities"};
    app.require_subcommand(1);
    app.fallthrough();  // accept the global flags after a subcommand too
    ReportOptions options;
    app.add_flag("--pretty", options.pretty, "Human-readable output instead of JSON");
    app.add_flag("--timing", options.timing,
                 "Add wall-clock milliseconds to the report (not byte-stable)");

    std::string path, kind = "ext4pt", vector_arg, second_vector, pair_arg, t_arg = "0";
    std::string point_label, out_path, metric_path, order_arg, tol_arg, gate;
    bool newick = false;
    std::string fuzz_mode = "subtree";
    std::uint64_t seed = 0;
    std::size_t count = 100;

    auto* check = app.add_subcommand("check", "Check a table against a condition");
    check->add_option("path", path)->required();
    check->add_option("--kind", kind)
        ->check(CLI::IsMember({"metric", "4pt", "ext4pt", "diversity"}));

    auto* tightspan = app.add_subcommand("tightspan", "Tight-span queries");
    tightspan->require_subcommand(1);
    for (const std::string name : {"member", "retract", "geodesic", "kappa", "dist"}) {
        auto* sub = tightspan->add_subcommand(name);
        sub->add_option("path", path)->required();
        if (name == "member" || name == "retract" || name == "dist") {
            sub->add_option("--vector", vector_arg)->required();
        }
        if (name == "dist") sub->add_option("--second", second_vector)->required();
        if (name == "geodesic") {
            sub->add_option("--pair", pair_arg)->required();
            sub->add_option("--t", t_arg)->required();
        }
        if (name == "kappa") sub->add_option("--point", point_label)->required();
    }

    auto* subtree = app.add_subcommand("subtree", "Build a subtree representation");
    subtree->add_option("path", path)->required();
    subtree->add_option("--out", out_path);
    subtree->add_flag("--newick", newick);

    auto* dominate = app.add_subcommand("dominate", "Dominating metric operations");
    dominate->require_subcommand(1);
    for (const std::string name : {"any", "pin", "minimize", "verify", "embed"}) {
        auto* sub = dominate->add_subcommand(name);
        sub->add_option("path", path)->required();
        if (name == "pin" || name == "verify" || name == "embed") {
            sub->add_option("--metric", metric_path)->required();
        }
        if (name == "pin") sub->add_option("--pair", pair_arg)->required();
        if (name == "minimize") sub->add_option("--order", order_arg);
        if (name == "embed") sub->add_option("--tol", tol_arg);
    }

    auto* diversity = app.add_subcommand("diversity", "Diversity operations");
    diversity->require_subcommand(1);
    for (const std::string name : {"ddelta", "arboreal", "phylo", "nice", "embed"}) {
        auto* sub = diversity->add_subcommand(name);
        sub->add_option("path", path)->required();
        if (name == "embed") sub->add_option("--gate", gate);
    }

    auto* fuzz = app.add_subcommand("fuzz", "Randomized property suites");
    fuzz->add_option("--mode", fuzz_mode)
        ->check(CLI::IsMember({"subtree", "metric", "diversity"}));
    fuzz->add_option("--seed", seed);
    fuzz->add_option("--count", count);

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return run_check(path, kind, options);
        if (tightspan->parsed()) {
            return run_tightspan(tightspan->get_subcommands().front()->get_name(), path,
                                 vector_arg, second_vector, pair_arg, t_arg, point_label,
                                 options);
        }
        if (subtree->parsed()) return run_subtree(path, out_path, newick, options);
        if (dominate->parsed()) {
            return run_dominate(dominate->get_subcommands().front()->get_name(), path,
                                metric_path, pair_arg, order_arg, tol_arg, options);
        }
        if (diversity->parsed()) {
            return run_diversity(diversity->get_subcommands().front()->get_name(), path, gate,
                                 options);
        }
        if (fuzz->parsed()) return run_fuzz(fuzz_mode, seed, count, options);
    } catch (const ParseError& error) {
        std::cerr << "input error: " << error.what() << "\n";
        return exit_input_error;
    } catch (const Error& error) {
        std::cerr << "error: " << error.what() << "\n";
        return exit_input_error;
    }
    return exit_input_error;
}
