#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "invpack/bounds.hpp"
#include "invpack/errors.hpp"
#include "invpack/exact.hpp"
#include "invpack/invert.hpp"
#include "invpack/kappa.hpp"
#include "invpack/matching.hpp"
#include "invpack/pack.hpp"
#include "invpack/qcube.hpp"
#include "invpack/setcore.hpp"

namespace invpack::cli {

namespace {

using json = nlohmann::json;

// Exit codes.
constexpr int ok = 0;
constexpr int negative = 1;
constexpr int usage = 2;
constexpr int bad_input = 3;

std::string num(double x) { return fmt::format("{:.6g}", x); }

// integers print without the "/1"
std::string ratio(const ExactRational& r) { return r.denominator() == 1 ? r.numerator().str() : r.str(); }

json to_json(const Subset& s) { return json(s.elements()); }
json to_json(const Permutation& p) { return json(p.image()); }

std::string perm_line(const Permutation& p) {
    std::string s = serialize_permutation(p);
    if (!s.empty() && s.back() == '\n') s.pop_back();
    return s;
}

struct Report {
    int code = ok;
    std::string text;
    json doc = json::object();

    template <typename... Args>
    void line(fmt::format_string<Args...> f, Args&&... args) {
        text += fmt::format(f, std::forward<Args>(args)...);
        text += '\n';
    }
};

struct Options {
    bool as_json = false;
    std::size_t limit = 8;
};

// ---------------------------------------------------------------- invert

Report cmd_invert(const std::string& path) {
    const Collection c = read_collection_file(path);
    const auto g = conflict_graph(c);
    const auto r = decide_invertible(c);
    Report rep;
    rep.doc["n"] = c.ground_size();
    rep.doc["sets"] = c.size();
    rep.doc["invertible"] = r.invertible();
    if (r.matched) {
        rep.line("{}", perm_line(*r.matched));
        rep.line("# verified: permutation inverts all {} sets", c.size());
        rep.doc["permutation"] = to_json(*r.matched);
        rep.doc["verified"] = true;
        return rep;
    }
    const Subset& cert = *r.certificate;
    const std::size_t nb = g.neighbourhood(cert).cardinality();
    const bool valid = nb < cert.cardinality();
    rep.code = negative;
    rep.line("NOT INVERTIBLE");
    rep.line("{}", format_set(cert));
    rep.line("# verified: {} |N(I)| = {} < |I| = {} in the conflict graph", valid ? "yes" : "NO", nb, cert.cardinality());
    rep.doc["certificate"] = to_json(cert);
    rep.doc["neighbourhood_size"] = nb;
    rep.doc["verified"] = valid;
    return rep;
}

// ---------------------------------------------------------------- triple

Report cmd_triple(const std::string& path) {
    const Collection c = read_collection_file(path);
    const bool holds = check_triple(c);
    const bool invertible = decide_invertible(c).invertible();
    const std::size_t common = (c[0] & c[1] & c[2]).cardinality();
    const std::size_t outside = (c[0] | c[1] | c[2]).complement().cardinality();
    Report rep;
    rep.code = holds ? ok : negative;
    rep.line("condition: {}", holds ? "holds" : "fails");
    rep.line("n = {}, k = {}, common = {}, outside = {}", c.ground_size(), c[0].cardinality(), common, outside);
    rep.line("invertible: {}", invertible ? "yes" : "no");
    rep.line("# verified: condition {} the matching verdict", holds == invertible ? "agrees with" : "DISAGREES with");
    rep.doc = {{"condition", holds},     {"n", c.ground_size()},  {"k", c[0].cardinality()},
               {"common", common},       {"outside", outside},    {"invertible", invertible},
               {"verified", holds == invertible}};
    return rep;
}

// ---------------------------------------------------------------- kappa

Report cmd_kappa(const std::string& path, bool exhaustive, bool simple_only, const Options& opt) {
    const Collection c = read_collection_file(path);
    const auto r = find_simple_permutation(c);
    Report rep;
    rep.line("bound: {} ({})", r.bound.str(), num(r.bound.to_double()));
    rep.line("permutation: {}", perm_line(r.permutation));
    rep.line("inverted: {} of {}", r.inverted, c.size());
    const bool verified = BigInt(r.inverted) >= r.bound.ceil() && r.permutation.is_simple();
    rep.line("# verified: simple permutation, recount {} >= ceil(bound) = {}", r.inverted, r.bound.ceil().str());
    rep.doc = {{"bound", r.bound.str()},
               {"bound_decimal", r.bound.to_double()},
               {"permutation", to_json(r.permutation)},
               {"inverted", r.inverted},
               {"sets", c.size()},
               {"verified", verified}};
    if (exhaustive) {
        const auto best = exhaustive_kappa(c, simple_only, opt.limit);
        rep.line("optimum: {} ({})", best.count, simple_only ? "simple permutations" : "all permutations");
        rep.line("optimum permutation: {}", perm_line(best.permutation));
        rep.doc["optimum"] = best.count;
        rep.doc["optimum_permutation"] = to_json(best.permutation);
        rep.doc["optimum_scope"] = simple_only ? "simple" : "all";
    }
    return rep;
}

// ---------------------------------------------------------------- pack

std::string family_header(const PackingFamily& f) {
    return fmt::format("# packing n={} alpha={} c={}", f.n, f.declared_alpha.str(), f.achieved_c.str());
}

std::string kind_name(PackingLevel::Kind k) {
    switch (k) {
        case PackingLevel::Kind::singletons: return "singletons";
        case PackingLevel::Kind::product: return "product";
        case PackingLevel::Kind::lifted: return "lifted";
    }
    return "?";
}

Report cmd_pack_build(std::size_t n, const ExactRational& alpha, std::uint64_t max_blocks) {
    const auto tree = PackingConstruction::build(n, alpha);
    const auto structure = tree.structural_check();
    Report rep;
    json levels = json::array();
    for (const auto& lv : tree.levels()) {
        levels.push_back({{"kind", kind_name(lv.kind)},
                          {"ground_requested", lv.ground_requested},
                          {"ground_used", lv.ground_used},
                          {"alpha", lv.alpha.str()},
                          {"parts", lv.parts},
                          {"modulus", lv.modulus},
                          {"family_size", lv.family_size},
                          {"block_size", lv.block_size},
                          {"intersection_bound", lv.intersection_bound},
                          {"note", lv.note}});
    }
    rep.doc = {{"n", n},
               {"alpha", alpha.str()},
               {"ground_used", tree.ground_used()},
               {"size", tree.size()},
               {"block_size", tree.block_size()},
               {"intersection_bound", tree.intersection_bound()},
               {"levels", levels},
               {"structural_check", structure.passed}};

    std::optional<PackingReport> pairwise;
    if (tree.size() <= max_blocks) {
        const PackingFamily f = tree.materialize(max_blocks);
        pairwise = verify_packing(f);
        rep.line("{}", family_header(f));
        rep.text += serialize_collection(f.as_collection());
        rep.doc["c"] = f.achieved_c.str();
        rep.doc["blocks"] = json::array();
        for (const auto& b : f.blocks) rep.doc["blocks"].push_back(to_json(b));
        rep.doc["max_intersection"] = pairwise->max_intersection;
        rep.doc["pairwise_check"] = pairwise->passed;
    } else {
        rep.line("# packing n={} alpha={} blocks={} block_size={} (not listed: more than {} blocks)", n, alpha.str(),
                 tree.size(), tree.block_size(), max_blocks);
    }
    for (const auto& lv : tree.levels()) {
        rep.line("# level {} ground={}/{} alpha={} size={} block={} bound={}{}{}", kind_name(lv.kind), lv.ground_used,
                 lv.ground_requested, lv.alpha.str(), lv.family_size, lv.block_size, lv.intersection_bound,
                 lv.modulus != 0 ? fmt::format(" q={}", lv.modulus) : std::string(),
                 lv.note.empty() ? std::string() : " (" + lv.note + ")");
    }
    rep.line("# verified: structural check {} ({} product levels)", structure.passed ? "passed" : "FAILED: " + structure.failure,
             structure.product_levels);
    if (pairwise) {
        rep.line("# verified: pairwise check {} ({} pairs, max intersection {} < {})",
                 pairwise->passed ? "passed" : "FAILED: " + pairwise->failure, pairwise->pairs_checked,
                 pairwise->max_intersection, ratio(pairwise->threshold));
    }
    if (!structure.passed || (pairwise && !pairwise->passed)) rep.code = negative;
    return rep;
}

Report cmd_pack_verify(const std::string& path, const ExactRational& alpha) {
    const PackingFamily f = make_family(read_collection_file(path), alpha);
    const auto r = verify_packing(f);
    Report rep;
    rep.doc = {{"n", f.n},
               {"blocks", f.blocks.size()},
               {"block_size", f.block_size()},
               {"alpha", alpha.str()},
               {"threshold", r.threshold.str()},
               {"pairs_checked", r.pairs_checked},
               {"max_intersection", r.max_intersection},
               {"passed", r.passed}};
    if (r.worst_pair) rep.doc["worst_pair"] = {r.worst_pair->first, r.worst_pair->second};
    if (r.passed) {
        rep.line("{}", family_header(f));
        rep.line("# verified: {} blocks of size {}, max intersection {} < {} ({} pairs)", f.blocks.size(), f.block_size(),
                 r.max_intersection, ratio(r.threshold), r.pairs_checked);
    } else {
        rep.code = negative;
        rep.doc["failure"] = r.failure;
        rep.line("FAILED: {}", r.failure);
    }
    return rep;
}

Report cmd_pack_no3(std::size_t n, std::size_t k, const std::string& rs_path) {
    const PackingFamily rs = rs_path.empty()
                                 ? no_three_rs_family(n, k)
                                 : make_family(read_collection_file(rs_path), ExactRational(BigInt(1), BigInt(3)));
    const Collection family = no_three_invertible_family(n, k, rs);
    const auto r = verify_no_three(family);
    Report rep;
    rep.code = r.passed ? ok : negative;
    rep.line("# no-three family n={} k={} sets={}", n, k, family.size());
    rep.text += serialize_collection(family);
    rep.line("# verified: {} ({} pairs invertible, {} triples not invertible)", r.passed ? "passed" : "FAILED: " + r.failure,
             r.pairs_checked, r.triples_checked);
    json sets = json::array();
    for (const auto& s : family) sets.push_back(to_json(s));
    rep.doc = {{"n", n},          {"k", k},
               {"sets", sets},    {"pairs_checked", r.pairs_checked},
               {"triples_checked", r.triples_checked}, {"passed", r.passed}};
    if (!r.passed) rep.doc["failure"] = r.failure;
    return rep;
}

// ---------------------------------------------------------------- bounds

std::string d_prime_name(DPrime d) { return d == DPrime::one_minus_alpha ? "1-alpha" : "(1-2c+c*alpha)/(1-c)"; }

json report_json(const BoundReport& b) {
    json j = {{"alpha", b.alpha}, {"c", b.c}};
    j["c_star"] = b.c_star ? json(*b.c_star) : json(nullptr);
    if (b.lower) {
        j["log_lower_per_n"] = b.lower->log_per_n;
        j["base_lower"] = b.lower->base;
        j["lower_hypothesis_holds"] = b.lower->hypothesis_holds;
    } else {
        j["log_lower_per_n"] = nullptr;
        j["base_lower"] = nullptr;
    }
    j["ub_small_c"] = b.ub_small_c ? json(*b.ub_small_c) : json(nullptr);
    if (b.upper) {
        j["log_upper_per_n"] = b.upper->log_per_n;
        j["base_upper"] = b.upper->base;
        j["d_prime_used"] = d_prime_name(b.upper->d_prime_used);
        j["d_prime"] = b.upper->d_prime;
        j["asymptotic"] = b.upper->asymptotic;
    } else {
        j["log_upper_per_n"] = nullptr;
        j["base_upper"] = nullptr;
        j["d_prime_used"] = nullptr;
    }
    return j;
}

Report cmd_bounds(const std::string& which, const ExactRational& alpha_q, const std::optional<ExactRational>& c_q) {
    const double alpha = alpha_q.to_double();
    Report rep;
    rep.line("alpha = {}", alpha_q.str());
    if (which == "optimum") {
        const double c = optimal_c(alpha);
        const auto t = lower_bound_T(c, alpha);
        const double residual = optimal_c_derivative(c, alpha);
        rep.line("c* = {}", num(c));
        rep.line("base = {}", num(t.base));
        rep.line("log_per_n = {}", num(t.log_per_n));
        rep.line("# verified: derivative at c* = {} (bisection tolerance {})", num(residual), num(optimal_c_tolerance));
        rep.doc = report_json(bound_report(c, alpha));
        rep.doc["derivative_at_c_star"] = residual;
        return rep;
    }
    if (which == "lower") {
        const bool chosen = !c_q.has_value();
        const double c = chosen ? optimal_c(alpha) : c_q->to_double();
        const auto t = lower_bound_T(c, alpha);
        rep.line("c = {}{}", chosen ? num(c) : c_q->str(), chosen ? " (optimal)" : "");
        rep.line("log_per_n = {}", num(t.log_per_n));
        rep.line("base = {}", num(t.base));
        rep.line("# hypothesis c < alpha: {}", t.hypothesis_holds ? "holds" : "VIOLATED (value proves nothing)");
        rep.code = t.hypothesis_holds ? ok : negative;
        rep.doc = report_json(bound_report(c, alpha));
        return rep;
    }
    // upper
    if (!c_q) throw std::invalid_argument("bounds upper needs --c");
    const double c = c_q->to_double();
    const auto b = bound_report(c, alpha);
    rep.line("c = {}", c_q->str());
    if (b.ub_small_c) rep.line("small-c bound = {}", num(*b.ub_small_c));
    if (c > 0.0 && c <= alpha && alpha < 1.0) {
        for (const DPrime d : {DPrime::one_minus_alpha, DPrime::ratio}) {
            const auto u = upper_bound_entropy_at(c, alpha, d);
            rep.line("d' = {} = {}: log_per_n = {}, base = {}", d_prime_name(d), num(u.d_prime), num(u.log_per_n), num(u.base));
        }
        rep.line("log_per_n = {}", num(b.upper->log_per_n));
        rep.line("base = {} (+ o(1), asymptotic)", num(b.upper->base));
        rep.line("d' used = {}", d_prime_name(b.upper->d_prime_used));
    }
    if (!b.ub_small_c && !b.upper) throw std::invalid_argument("no upper bound applies at this (c, alpha)");
    rep.doc = report_json(b);
    return rep;
}

// ---------------------------------------------------------------- cube

Report cmd_cube_build(std::size_t n, bool assist) {
    Report rep;
    CubeEdgeSet m(0);
    std::size_t saved = 0;
    if (assist) {
        auto a = inversion_assisted_blocking(n);
        m = std::move(a.edges);
        saved = a.saved;
    } else {
        m = recursive_blocking_set(n);
    }
    const bool blocking = is_square_blocking(m);
    const std::uint64_t ceiling = static_cast<std::uint64_t>(n - 1) << (n - 2);
    rep.code = blocking ? ok : negative;
    rep.text += serialize_cube_edges(m);
    rep.line("# edges: {} (ceiling (n-1)*2^(n-2) = {})", m.size(), ceiling);
    if (assist) rep.line("# saved vs recursive construction: {}", saved);
    rep.line("# verified: {} ({} squares)", blocking ? "square-blocking" : "NOT square-blocking", square_count(n));
    json edges = json::array();
    for (const auto& e : m.edges()) edges.push_back({vertex_label(e.vertex, n), e.direction});
    rep.doc = {{"n", n}, {"edges", edges}, {"size", m.size()}, {"square_blocking", blocking}, {"ceiling", ceiling}};
    if (assist) rep.doc["saved"] = saved;
    return rep;
}

Report cmd_cube_verify(std::size_t n, const std::string& path) {
    const CubeEdgeSet m = read_cube_edges_file(path);
    if (m.dimension() != n) {
        throw FormatError("edge file has dimension " + std::to_string(m.dimension()) + ", expected " + std::to_string(n));
    }
    std::optional<Square> open;
    for_each_square(n, [&](const Square& s) {
        if (open) return;
        const auto e = s.edges();
        if (std::none_of(e.begin(), e.end(), [&](const CubeEdge& x) { return m.contains(x.vertex, x.direction); })) open = s;
    });
    Report rep;
    rep.doc = {{"n", n}, {"size", m.size()}, {"square_blocking", !open.has_value()}};
    if (open) {
        rep.code = negative;
        rep.line("NOT SQUARE-BLOCKING");
        rep.line("unblocked square: base {} directions {} {}", vertex_label(open->base, n), open->i, open->j);
        rep.doc["unblocked_square"] = {{"base", vertex_label(open->base, n)}, {"i", open->i}, {"j", open->j}};
    } else {
        rep.line("# verified: {} edges block all {} squares", m.size(), square_count(n));
    }
    return rep;
}

}  // namespace

CommandOutcome run(const std::vector<std::string>& args) {
    CLI::App app{"Set inversion, packing constructions and packing bounds", "invpack"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_flag("--json", opt.as_json, "Emit one JSON document instead of text");
    app.add_option("--limit", opt.limit, "Size cap for exhaustive searches")->capture_default_str();

    std::string input;
    std::string rs_path;
    std::string alpha_text;
    std::string c_text;
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t i = 0;
    bool exhaustive = false;
    bool simple_only = false;
    bool assist = false;
    std::uint64_t max_blocks = default_materialize_limit;

    auto* invert = app.add_subcommand("invert", "Decide invertibility of a collection");
    invert->add_option("--input", input, "Collection file")->required();
    auto* triple = app.add_subcommand("triple", "Check the three-set condition");
    triple->add_option("--input", input, "Collection file with three equal-size sets")->required();
    auto* kappa = app.add_subcommand("kappa", "Simple permutation inverting many sets");
    kappa->add_option("--input", input, "Collection file")->required();
    kappa->add_flag("--exhaustive", exhaustive, "Also search exhaustively for the optimum");
    kappa->add_flag("--simple-only", simple_only, "Restrict the exhaustive search to simple permutations");
    auto* sig = app.add_subcommand("sigma", "Number of simple permutations of N points");
    sig->add_option("N", n)->required();
    auto* lam = app.add_subcommand("lambda", "Simple permutations of N points inverting a fixed I-set");
    lam->add_option("N", n)->required();
    lam->add_option("I", i)->required();

    auto* pack = app.add_subcommand("pack", "Packings");
    pack->require_subcommand(1);
    auto* pack_build = pack->add_subcommand("build", "Recursive product construction");
    pack_build->add_option("--n", n)->required();
    pack_build->add_option("--alpha", alpha_text, "1/k")->required();
    pack_build->add_option("--max-blocks", max_blocks, "List the family only up to this many blocks")->capture_default_str();
    auto* pack_verify = pack->add_subcommand("verify", "Check pairwise intersections of a family");
    pack_verify->add_option("--input", input)->required();
    pack_verify->add_option("--alpha", alpha_text)->required();
    auto* pack_no3 = pack->add_subcommand("no3", "Family with every pair but no triple invertible");
    pack_no3->add_option("--n", n)->required();
    pack_no3->add_option("--k", k)->required();
    pack_no3->add_option("--rs", rs_path, "k-sets over the last n/2+k points");

    auto* bounds = app.add_subcommand("bounds", "Packing size bounds (natural log, per n)");
    bounds->require_subcommand(1);
    auto* b_lower = bounds->add_subcommand("lower", "Greedy lower bound");
    b_lower->add_option("--alpha", alpha_text)->required();
    b_lower->add_option("--c", c_text, "Defaults to the optimal c");
    auto* b_upper = bounds->add_subcommand("upper", "Upper bounds");
    b_upper->add_option("--alpha", alpha_text)->required();
    b_upper->add_option("--c", c_text)->required();
    auto* b_opt = bounds->add_subcommand("optimum", "c maximising the lower bound");
    b_opt->add_option("--alpha", alpha_text)->required();

    auto* cube = app.add_subcommand("cube", "Square-blocking sets of the hypercube");
    cube->require_subcommand(1);
    auto* cube_build = cube->add_subcommand("build", "Recursive construction");
    cube_build->add_option("--n", n)->required();
    cube_build->add_flag("--assist", assist, "Permute the upper copy by a simple permutation");
    auto* cube_verify = cube->add_subcommand("verify", "Check an edge file");
    cube_verify->add_option("--n", n)->required();
    cube_verify->add_option("--edges", input)->required();

    CommandOutcome outcome;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        outcome.out = app.help();
        return outcome;
    } catch (const CLI::ParseError& e) {
        outcome.exit_code = usage;
        outcome.err = std::string(e.what()) + "\n\n" + app.help();
        return outcome;
    }

    try {
        Report rep;
        auto alpha = [&] { return parse_rational(alpha_text); };
        if (invert->parsed()) {
            rep = cmd_invert(input);
        } else if (triple->parsed()) {
            rep = cmd_triple(input);
        } else if (kappa->parsed()) {
            rep = cmd_kappa(input, exhaustive, simple_only, opt);
        } else if (sig->parsed()) {
            const BigInt s = sigma(n);
            rep.line("{}", s.str());
            rep.doc = {{"n", n}, {"sigma", s.str()}};
        } else if (lam->parsed()) {
            const BigInt l = lambda_simple(n, i);
            rep.line("{}", l.str());
            rep.doc = {{"n", n}, {"i", i}, {"lambda", l.str()}};
        } else if (pack_build->parsed()) {
            rep = cmd_pack_build(n, alpha(), max_blocks);
        } else if (pack_verify->parsed()) {
            rep = cmd_pack_verify(input, alpha());
        } else if (pack_no3->parsed()) {
            rep = cmd_pack_no3(n, k, rs_path);
        } else if (b_lower->parsed() || b_upper->parsed() || b_opt->parsed()) {
            std::optional<ExactRational> c;
            if (!c_text.empty()) c = parse_rational(c_text);
            rep = cmd_bounds(b_lower->parsed() ? "lower" : b_upper->parsed() ? "upper" : "optimum", alpha(), c);
        } else if (cube_build->parsed()) {
            rep = cmd_cube_build(n, assist);
        } else if (cube_verify->parsed()) {
            rep = cmd_cube_verify(n, input);
        }
        outcome.exit_code = rep.code;
        outcome.out = opt.as_json ? rep.doc.dump(2) + "\n" : rep.text;
    } catch (const FormatError& e) {
        outcome.exit_code = bad_input;
        outcome.err = std::string("invalid input: ") + e.what() + "\n";
    } catch (const LimitExceeded& e) {
        outcome.exit_code = usage;
        outcome.err = std::string(e.what()) + " (raise with --limit)\n";
    } catch (const std::invalid_argument& e) {
        outcome.exit_code = usage;
        outcome.err = std::string("error: ") + e.what() + "\n";
    } catch (const std::out_of_range& e) {
        outcome.exit_code = usage;
        outcome.err = std::string("error: ") + e.what() + "\n";
    } catch (const std::domain_error& e) {
        outcome.exit_code = usage;
        outcome.err = std::string("error: ") + e.what() + "\n";
    } catch (const std::exception& e) {
        outcome.exit_code = negative;
        outcome.err = std::string("verification failed: ") + e.what() + "\n";
    }
    return outcome;
}

}  // namespace invpack::cli
