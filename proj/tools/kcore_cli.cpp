// kcore: transform set functions, classify subset orders, and generate or
// certify vertices of k-additive cores. Every command is a thin layer over
// the library; all numbers are exact rationals rendered with a decimal
// approximation alongside.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kcore/kcore.hpp"

namespace {

using kcore::GameTable;
using kcore::GroundSet;
using kcore::Json;
using kcore::Mask;
using kcore::MobiusVector;
using kcore::Rational;

std::string decimal(const Rational& x) {
    std::ostringstream out;
    out << kcore::approx(x);
    return out.str();
}

std::string render(const Rational& x) {
    return kcore::format_rational(x) + " (" + decimal(x) + ")";
}

// Nonzero entries on one line: "1 = 1/10 (0.1), 1,2 = 2/5 (0.4)".
std::string render_point(const MobiusVector& m) {
    std::string out;
    for (int size = 1; size <= m.ground.n; ++size) {
        for (Mask a : kcore::subsets_of_size(m.ground, size)) {
            if (m[a] == 0) continue;
            if (!out.empty()) out += ", ";
            out += kcore::coalition_key(a) + " = " + render(m[a]);
        }
    }
    return out.empty() ? "(zero vector)" : out;
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

kcore::OracleGuard guard_from_env() {
    kcore::OracleGuard guard;
    const char* text = std::getenv("KCORE_GUARD_OVERRIDE");
    if (text == nullptr) return guard;
    const std::string value(text);
    const auto comma = value.find(',');
    try {
        if (comma == std::string::npos) throw std::invalid_argument("no comma");
        guard.max_vars = std::stoi(value.substr(0, comma));
        guard.max_rows = std::stoi(value.substr(comma + 1));
    } catch (const std::exception&) {
        throw kcore::input_error("KCORE_GUARD_OVERRIDE must look like \"vars,rows\", got \"" +
                                 value + "\"");
    }
    return guard;
}

void write_json(const std::string& path, const Json& doc) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw kcore::input_error("cannot write " + path);
    out << doc.dump(2) << "\n";
}

std::string order_line(const kcore::SubsetOrder& order) {
    std::string out;
    for (Mask a : order.sequence()) {
        if (!out.empty()) out += " < ";
        out += kcore::coalition_key(a);
    }
    return out;
}

std::string classification_label(const kcore::CompatibilityReport& report) {
    if (report.strongly_compatible) return "strongly compatible";
    if (report.compatible) return "compatible";
    if (report.subset_compatible) return "subset-compatible";
    return "incompatible";
}

// ---------------------------------------------------------------- transform

int cmd_transform(const std::string& game_path, const std::string& out_path) {
    const auto loaded = kcore::load_game(game_path);
    const GroundSet g = loaded.worth.ground;
    const auto& v = loaded.worth;
    const auto& m = loaded.mobius;

    std::cout << "game: n=" << g.n << ", source form="
              << (loaded.mobius_form ? "mobius" : "game") << "\n";
    std::cout << "worth (zero coalitions omitted):\n";
    for (int size = 1; size <= g.n; ++size) {
        for (Mask a : kcore::subsets_of_size(g, size)) {
            if (v[a] != 0) std::cout << "  " << kcore::coalition_key(a) << " = " << render(v[a]) << "\n";
        }
    }
    std::cout << "mobius (zero coalitions omitted):\n";
    for (int size = 1; size <= g.n; ++size) {
        for (Mask a : kcore::subsets_of_size(g, size)) {
            if (m[a] != 0) std::cout << "  " << kcore::coalition_key(a) << " = " << render(m[a]) << "\n";
        }
    }

    bool zero = true;
    for (Mask a = 1; a <= g.full(); ++a) zero = zero && m[a] == 0;
    const int degree = zero ? 0 : kcore::additivity_degree(m);
    const bool monotone = kcore::is_monotone(v);
    const bool infinitely = kcore::is_infinitely_monotone(v);

    std::cout << "classification:\n";
    std::cout << "  monotone: " << yesno(monotone) << "\n";
    std::cout << "  additivity degree: " << degree << "\n";
    Json k_monotone = Json::object();
    for (int k = 2; k <= g.n; ++k) {
        const bool holds = kcore::is_k_monotone(v, k);
        std::cout << "  " << k << "-monotone: " << yesno(holds) << "\n";
        k_monotone[std::to_string(k)] = holds;
    }
    std::cout << "  infinitely monotone: " << yesno(infinitely) << "\n";

    Json doc;
    doc["n"] = g.n;
    doc["worth"] = kcore::game_to_json(v)["entries"];
    doc["mobius"] = kcore::mobius_to_json(m)["entries"];
    doc["classification"] = {{"monotone", monotone},
                             {"additivity_degree", degree},
                             {"k_monotone", k_monotone},
                             {"infinitely_monotone", infinitely}};
    write_json(out_path, doc);
    return 0;
}

// ------------------------------------------------------------------- orders

void print_atlas(const kcore::SubsetOrder& order, const kcore::FamilyAtlas& atlas,
                 const std::string& indent) {
    for (Mask b : order.sequence()) {
        const auto& family = atlas.families.at(b);
        std::cout << indent << "A(" << kcore::coalition_key(b) << ") = {";
        bool first = true;
        for (Mask a : family.members) {
            if (!first) std::cout << "; ";
            std::cout << kcore::coalition_key(a);
            first = false;
        }
        std::cout << "}";
        if (family.empty()) {
            std::cout << " (empty)";
        } else {
            std::cout << " top=" << (family.top ? kcore::coalition_key(*family.top) : "-")
                      << " lattice=" << yesno(family.is_lattice);
        }
        std::cout << "\n";
    }
}

Json order_record(const kcore::SubsetOrder& order, bool with_atlas) {
    const auto report = kcore::classify(order);
    Json record;
    record["sequence"] = kcore::order_to_json(order)["sequence"];
    record["subset_compatible"] = report.subset_compatible;
    record["compatible"] = report.compatible;
    record["strongly_compatible"] = report.strongly_compatible;
    if (with_atlas) record["atlas"] = kcore::atlas_to_json(order, kcore::build_atlas(order));
    return record;
}

int cmd_orders(int n, int k, const std::string& filter_name, std::size_t cap, bool atlas,
               const std::string& order_path, const std::string& out_path) {
    if (!order_path.empty()) {
        const auto order = kcore::load_order(order_path);
        const auto report = kcore::classify(order);
        std::cout << "order: " << order_line(order) << "\n";
        std::cout << "n=" << order.ground().n << " k=" << order.k() << "\n";
        std::cout << "subset-compatible: " << yesno(report.subset_compatible) << "\n";
        std::cout << "compatible: " << yesno(report.compatible) << "\n";
        std::cout << "strongly compatible: " << yesno(report.strongly_compatible) << "\n";
        if (report.witness) {
            const auto& w = *report.witness;
            if (w.kind == kcore::ViolationKind::containment) {
                std::cout << "witness: {" << kcore::coalition_key(w.a) << "} is contained in {"
                          << kcore::coalition_key(w.b) << "} but ranked after it\n";
            } else {
                std::cout << "witness: {" << kcore::coalition_key(w.a) << "} vs {"
                          << kcore::coalition_key(w.b) << "} flips after adding {"
                          << kcore::coalition_key(w.c) << "}\n";
            }
        }
        if (atlas) {
            std::cout << "achievable families:\n";
            print_atlas(order, kcore::build_atlas(order), "  ");
        }
        write_json(out_path, order_record(order, atlas));
        return 0;
    }

    kcore::OrderFilter filter = kcore::OrderFilter::all;
    if (filter_name == "compatible") filter = kcore::OrderFilter::compatible;
    if (filter_name == "strongly_compatible") filter = kcore::OrderFilter::strongly_compatible;

    const GroundSet g(n);
    const auto enumeration = kcore::enumerate_orders(g, k, filter, cap);
    std::cout << "orders: n=" << n << " k=" << k << " filter=" << filter_name
              << " count=" << enumeration.orders.size()
              << " truncated=" << yesno(enumeration.truncated) << "\n";
    Json records = Json::array();
    for (const auto& order : enumeration.orders) {
        std::cout << order_line(order) << "  [" << classification_label(kcore::classify(order))
                  << "]\n";
        if (atlas) print_atlas(order, kcore::build_atlas(order), "    ");
        records.push_back(order_record(order, atlas));
    }
    Json doc;
    doc["count"] = enumeration.orders.size();
    doc["truncated"] = enumeration.truncated;
    doc["orders"] = records;
    write_json(out_path, doc);
    return 0;
}

// ----------------------------------------------------------------- vertices

kcore::CoreVariant variant_from_name(const std::string& name) {
    if (name == "plain") return kcore::CoreVariant::plain;
    if (name == "monotone") return kcore::CoreVariant::monotone;
    return kcore::CoreVariant::infinite;
}

struct ModeResult {
    std::string mode;
    std::set<std::vector<Rational>> point_set;  // dedicated to exact diffs
    std::vector<MobiusVector> points;           // presentation order
    Json document;
};

ModeResult run_mode(const std::string& mode, const GameTable& v, int k,
                    const std::string& variant_name, const std::string& filter_name,
                    std::size_t cap, int threads, bool quiet) {
    ModeResult result;
    result.mode = mode;
    const GroundSet g = v.ground;

    if (mode == "orders") {
        const auto require = filter_name == "compatible"
                                 ? kcore::OrderRequirement::compatible
                                 : kcore::OrderRequirement::strongly_compatible;
        const auto scan = kcore::order_vertices(v, k, require, cap, threads);
        if (!quiet) {
            std::cout << "mode=orders k=" << k << " filter=" << filter_name << "\n";
            std::cout << "orders seen: " << scan.orders_seen
                      << ", truncated: " << yesno(scan.truncated) << "\n";
            std::cout << "vertex guarantee ((k+1)-monotone): "
                      << yesno(scan.hypothesis_holds) << "\n";
            std::cout << "distinct induced points: " << scan.certificates.size() << "\n";
            const std::size_t needed = kcore::subsets_up_to(g, k).size();
            for (std::size_t i = 0; i < scan.certificates.size(); ++i) {
                const auto& cert = scan.certificates[i];
                std::cout << "point " << i + 1 << ": " << render_point(cert.point) << "\n";
                std::cout << "  vertex: " << yesno(cert.is_vertex) << ", rank " << cert.rank
                          << " of " << needed << " needed"
                          << (cert.guaranteed ? "" : " (not guaranteed)") << "\n";
            }
        }
        for (const auto& cert : scan.certificates) {
            result.points.push_back(cert.point);
            result.point_set.insert(cert.point.coeffs);
        }
        result.document = Json{{"mode", "orders"},
                               {"orders_seen", scan.orders_seen},
                               {"truncated", scan.truncated},
                               {"hypothesis_holds", scan.hypothesis_holds},
                               {"certificates", kcore::certificates_to_json(scan.certificates)}};
        return result;
    }

    if (mode == "theorem-n-1") {
        if (k != g.n - 1)
            throw kcore::input_error("mode theorem-n-1 needs k = n-1, got k=" +
                                     std::to_string(k) + " with n=" + std::to_string(g.n));
        if (variant_name != "plain")
            throw kcore::input_error("mode theorem-n-1 certifies the plain polyhedron");
        const auto certs = kcore::vertices_n_minus_1(v);
        if (!quiet) {
            std::cout << "mode=theorem-n-1 k=" << k << "\n";
            std::cout << "top coefficient m(N) = "
                      << render(kcore::mobius_transform(v)[g.full()]) << "\n";
            std::cout << "vertices: " << certs.size() << "\n";
            for (std::size_t i = 0; i < certs.size(); ++i) {
                std::cout << "vertex " << i + 1 << ": " << render_point(certs[i].point) << "\n";
            }
        }
        for (const auto& cert : certs) {
            result.points.push_back(cert.point);
            result.point_set.insert(cert.point.coeffs);
        }
        result.document = Json{{"mode", "theorem-n-1"},
                               {"certificates", kcore::certificates_to_json(certs)}};
        return result;
    }

    if (mode == "oracle") {
        const auto sys = kcore::core_constraints(v, k, variant_from_name(variant_name));
        const auto summary = kcore::enumerate_vertices(sys, guard_from_env());
        if (!quiet) {
            std::cout << "mode=oracle k=" << k << " variant=" << variant_name << "\n";
            std::cout << "feasible: " << yesno(summary.feasible) << "\n";
            std::cout << "bounded: " << yesno(summary.bounded) << "\n";
            std::cout << "vertices: " << summary.vertices.size() << "\n";
            std::size_t index = 0;
            for (const auto& x : summary.vertices) {
                std::cout << "vertex " << ++index << ": "
                          << render_point(kcore::from_coordinates(sys, x)) << "\n";
            }
            std::cout << "rays: " << summary.rays.size() << "\n";
            index = 0;
            for (const auto& d : summary.rays) {
                std::cout << "ray " << ++index << ": "
                          << render_point(kcore::from_coordinates(sys, d)) << "\n";
            }
        }
        for (const auto& x : summary.vertices) {
            MobiusVector point = kcore::from_coordinates(sys, x);
            result.point_set.insert(point.coeffs);
            result.points.push_back(std::move(point));
        }
        result.document = kcore::summary_to_json(sys, summary);
        result.document["mode"] = "oracle";
        return result;
    }

    throw kcore::input_error("unknown mode \"" + mode + "\" (orders, theorem-n-1, oracle)");
}

int cmd_vertices(const std::string& game_path, int k, const std::string& mode,
                 const std::vector<std::string>& compare, const std::string& variant_name,
                 const std::string& filter_name, std::size_t cap, int threads,
                 const std::string& out_path) {
    const auto loaded = kcore::load_game(game_path);
    const auto& v = loaded.worth;

    if (compare.empty()) {
        auto result = run_mode(mode, v, k, variant_name, filter_name, cap, threads, false);
        write_json(out_path, result.document);
        return 0;
    }

    const auto first = run_mode(compare[0], v, k, variant_name, filter_name, cap, threads, true);
    const auto second = run_mode(compare[1], v, k, variant_name, filter_name, cap, threads, true);
    std::cout << "compare: " << first.mode << " vs " << second.mode << " (k=" << k << ")\n";
    std::cout << first.mode << ": " << first.point_set.size() << " points\n";
    std::cout << second.mode << ": " << second.point_set.size() << " points\n";

    Json only_first = Json::array();
    Json only_second = Json::array();
    for (const auto& p : first.points) {
        if (second.point_set.count(p.coeffs) == 0) {
            std::cout << "only in " << first.mode << ": " << render_point(p) << "\n";
            only_first.push_back(kcore::mobius_to_json(p)["entries"]);
        }
    }
    for (const auto& p : second.points) {
        if (first.point_set.count(p.coeffs) == 0) {
            std::cout << "only in " << second.mode << ": " << render_point(p) << "\n";
            only_second.push_back(kcore::mobius_to_json(p)["entries"]);
        }
    }
    const bool identical = first.point_set == second.point_set;
    std::cout << "identical: " << yesno(identical) << "\n";

    Json doc;
    doc["first"] = first.document;
    doc["second"] = second.document;
    doc["identical"] = identical;
    doc["only_first"] = only_first;
    doc["only_second"] = only_second;
    write_json(out_path, doc);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-additive core toolkit: set function transforms, subset orders, "
                 "and exact vertex generation"};
    app.require_subcommand(1);

    std::string game_path, order_path, out_path;
    int k = 1, n = 0, threads = 1;
    std::size_t cap = 0;
    std::string variant_name = "plain", mode = "oracle";
    std::string orders_filter = "all", vertices_filter = "strongly_compatible";
    std::vector<std::string> compare;
    bool atlas = false;

    auto* transform = app.add_subcommand("transform", "read a game, print worth and "
                                                      "interaction coefficients, classify it");
    transform->add_option("--game", game_path, "game JSON file")->required();
    transform->add_option("--out", out_path, "write the report as JSON");

    auto* orders = app.add_subcommand("orders", "enumerate or classify orders on the "
                                                "coalitions of size up to k");
    auto* n_opt = orders->add_option("--n", n, "number of players");
    orders->add_option("--k", k, "degree bound");
    auto* order_opt =
        orders->add_option("--order", order_path, "classify a single order from a JSON file");
    orders->add_option("--filter", orders_filter, "all, compatible, or strongly_compatible")
        ->check(CLI::IsMember({"all", "compatible", "strongly_compatible"}));
    orders->add_option("--cap", cap, "stop after this many orders (0 = no cap)");
    orders->add_flag("--atlas", atlas, "also dump each order's achievable families");
    orders->add_option("--out", out_path, "write the report as JSON");
    order_opt->excludes(n_opt);
    n_opt->excludes(order_opt);

    auto* vertices = app.add_subcommand("vertices", "generate and certify vertices of a "
                                                    "k-additive core");
    vertices->add_option("--game", game_path, "game JSON file")->required();
    vertices->add_option("--k", k, "additivity degree of the polyhedron")->required();
    vertices->add_option("--mode", mode, "orders, theorem-n-1, or oracle")
        ->check(CLI::IsMember({"orders", "theorem-n-1", "oracle"}));
    vertices->add_option("--compare", compare, "run two modes and diff the vertex sets")
        ->expected(2);
    vertices->add_option("--variant", variant_name, "plain, monotone, or infinite")
        ->default_val("plain")
        ->check(CLI::IsMember({"plain", "monotone", "infinite"}));
    vertices->add_option("--filter", vertices_filter,
                         "order requirement for mode=orders: strongly_compatible or compatible")
        ->check(CLI::IsMember({"strongly_compatible", "compatible"}));
    vertices->add_option("--cap", cap, "order enumeration cap (0 = no cap)");
    vertices->add_option("--threads", threads, "worker threads for per-order certification")
        ->check(CLI::Range(1, 256));
    vertices->add_option("--out", out_path, "write the report as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (transform->parsed()) return cmd_transform(game_path, out_path);
        if (orders->parsed()) {
            if (order_path.empty() && n_opt->count() == 0)
                throw kcore::input_error("orders needs either --n or --order FILE");
            return cmd_orders(n, k, orders_filter, cap, atlas, order_path, out_path);
        }
        return cmd_vertices(game_path, k, mode, compare, variant_name, vertices_filter, cap,
                            threads, out_path);
    } catch (const kcore::guard_error& e) {
        std::cerr << "guard refusal: " << e.what() << "\n";
        return 3;
    } catch (const kcore::internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    } catch (const kcore::error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
