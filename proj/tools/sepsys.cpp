// sepsys: construct, verify, and search separating set systems.
//
// Exit codes: 0 success/PASS, 1 property FAIL or table mismatch,
// 2 usage or input error, 3 a construction failed its own verification.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "sepsys/bounds.hpp"
#include "sepsys/construct.hpp"
#include "sepsys/family.hpp"
#include "sepsys/io.hpp"
#include "sepsys/search.hpp"
#include "sepsys/verify.hpp"

using namespace sepsys;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBug = 3;

struct SelfCheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string property;
    std::string kind;
    std::string problem;
    std::string group = "perm";
    std::string format = "json";
    std::string input;
    int n = -1;
    int m = -1;
    int k = -1;
    int element = -1;
    int m_max = search::kMaxNiceGround;
    int check_up_to = 12;
    int threads = 1;
    long long budget_ms = -1;
    bool no_symmetry = false;
};

io::Format format_of(const Options& o) { return o.format == "text" ? io::Format::text : io::Format::json; }

io::FamilyDocument read_input(const Options& o)
{
    std::string text;
    if (o.input.empty() || o.input == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
        std::ifstream in(o.input);
        if (!in)
            throw Error(ErrorKind::parse, "cannot open " + o.input);
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    return io::parse_document(text);
}

int require(int value, const char* flag)
{
    if (value < 0)
        throw Error(ErrorKind::parameter, std::string(flag) + " is required");
    return value;
}

search::SearchOptions search_options(const Options& o)
{
    search::SearchOptions s;
    s.symmetry = !o.no_symmetry;
    s.threads = o.threads;
    long long budget = o.budget_ms;
    if (budget < 0) {
        if (const char* env = std::getenv("SEPSYS_BUDGET_MS")) {
            try {
                budget = std::stoll(env);
            } catch (const std::exception&) {
                throw Error(ErrorKind::parameter, "SEPSYS_BUDGET_MS is not an integer");
            }
        }
    }
    if (budget >= 0)
        s.budget = std::chrono::milliseconds(budget);
    return s;
}

std::vector<io::DocumentWitness> separator_witnesses(const Family& d, int k)
{
    std::vector<io::DocumentWitness> out;
    const Verdict v = is_nice(d, k);
    for (const auto& w : v.certificate.witnesses)
        out.push_back({w.subject, w.separator});
    return out;
}

void print_verdict(const Verdict& v, Property p, int k)
{
    std::ostream& os = std::cout;
    const std::string label = std::string(name(p)) + (k > 0 ? " k=" + std::to_string(k) : "");
    if (!v.holds) {
        os << "FAIL " << label << ": " << v.reason << "\n";
        os << "counterexample:";
        for (auto i : v.counterexample)
            os << ' ' << i;
        os << "\n";
        return;
    }
    os << "PASS " << label << " (" << v.certificate.witnesses.size() << " witnesses)\n";
    for (const auto& w : v.certificate.witnesses) {
        switch (p) {
        case Property::separating:
        case Property::completely_separating:
            os << "element " << w.subject << ": sets " << set_to_string(w.sets) << "\n";
            break;
        case Property::hyper_completely:
            os << "element " << w.subject << ": intersect " << set_to_string(w.sets) << "\n";
            break;
        case Property::hyper_separating:
            os << "element " << w.subject << ": sets " << set_to_string(w.separator.separator) << " in "
               << set_to_string(w.separator.key) << "\n";
            break;
        case Property::nice:
            os << "member " << w.subject << ": separator " << set_to_string(w.separator.separator) << " key "
               << set_to_string(w.separator.key) << "\n";
            break;
        }
    }
}

int cmd_verify(const Options& o)
{
    const io::FamilyDocument doc = read_input(o);
    const Family& f = doc.family;
    Verdict v;
    Property p;
    int k = 0;
    if (o.property == "separating") {
        p = Property::separating;
        v = is_separating(f);
    } else if (o.property == "completely") {
        p = Property::completely_separating;
        v = is_completely_separating(f);
    } else {
        k = require(o.k, "--k");
        if (o.property == "hcs") {
            p = Property::hyper_completely;
            v = is_k_hypercompletely_separating(f, k);
        } else if (o.property == "hs") {
            p = Property::hyper_separating;
            v = is_k_hyperseparating(f, k);
        } else {
            p = Property::nice;
            v = is_nice(f, k);
        }
    }
    print_verdict(v, p, k);
    return v.holds ? 0 : kExitFail;
}

void self_check(bool ok, const std::string& what)
{
    if (!ok)
        throw SelfCheckFailure("construction failed self-verification: " + what);
}

int cmd_construct(const Options& o)
{
    io::FamilyDocument doc;
    if (o.kind == "nice-small") {
        const int m = require(o.m, "--m");
        doc.family = construct::nice_small_m(m);
        doc.role = "dual";
        self_check(is_nice(doc.family, 2).holds && doc.family.size() == static_cast<std::size_t>(2 * m),
                   "nice-small");
        doc.witnesses = separator_witnesses(doc.family, 2);
    } else {
        const int n = require(o.n, "--n");
        doc.role = "primal";
        if (o.kind == "binary") {
            doc.family = construct::binary_separating(n);
            self_check(is_separating(doc.family).holds &&
                           doc.family.size() == static_cast<std::size_t>(bounds::separating_min(static_cast<std::uint64_t>(n))),
                       "binary");
        } else if (o.kind == "spencer") {
            doc.family = construct::spencer_completely_separating(n);
            self_check(is_completely_separating(doc.family).holds &&
                           doc.family.size() == static_cast<std::size_t>(bounds::spencer_min(static_cast<std::uint64_t>(n))),
                       "spencer");
        } else if (o.kind == "hcs") {
            const int k = require(o.k, "--k");
            doc.family = construct::k_hcs_minimal(n, k);
            self_check(is_k_hypercompletely_separating(doc.family, k).holds &&
                           is_k_hyperseparating(doc.family, k).holds &&
                           doc.family.size() == static_cast<std::size_t>(bounds::min_m_hcs(static_cast<std::uint64_t>(n), k)),
                       "hcs");
        } else {
            doc.family = construct::hyperseparating_minimal_2(n);
            self_check(is_k_hyperseparating(doc.family, 2).holds &&
                           doc.family.size() == static_cast<std::size_t>(bounds::f2_exact(static_cast<std::uint64_t>(n))),
                       "hs2");
        }
    }
    std::cout << io::emit(doc, format_of(o));
    return 0;
}

int cmd_bounds(const Options& o)
{
    const int n = require(o.n, "--n");
    const int k = require(o.k, "--k");
    const auto b = bounds::f_bounds(static_cast<std::uint64_t>(n), k);
    std::string source = b.lower_source == bounds::LowerSource::pair_family ? "pair-family" : "info-theoretic";
    if (b.clamped)
        source += ", clamped";
    std::cout << b.lower << " ≤ f(" << n << "," << k << ") ≤ " << b.upper << " [" << source << "]\n";
    return 0;
}

std::string exhausted_tag(bool exhausted) { return exhausted ? "(exhausted)" : "(budget exhausted)"; }

int cmd_search(const Options& o)
{
    const auto opts = search_options(o);
    const int k = require(o.k, "--k");
    std::ostream& os = std::cout;
    if (o.problem == "g") {
        const int m = require(o.m, "--m");
        const auto r = search::max_nice_size(m, k, opts);
        os << "g(" << m << "," << k << ") = " << r.best << " " << exhausted_tag(r.exhausted) << "\n";
        if (k >= 3)
            os << "note: no reference value exists for k >= 3\n";
        os << "nodes: " << r.nodes_visited << "\n";
        os << io::emit({r.example, "dual", separator_witnesses(r.example, k)}, format_of(o));
    } else if (o.problem == "exists") {
        const int m = require(o.m, "--m");
        const int n = require(o.n, "--n");
        const auto r = search::exists_nice_of_size(m, k, n, opts);
        os << "exists(" << m << "," << k << "," << n << "): ";
        switch (r.status) {
        case search::Existence::found:
            os << "found\n";
            break;
        case search::Existence::absent:
            os << "absent (exhausted)\n";
            break;
        case search::Existence::unknown:
            os << "unknown (budget exhausted)\n";
            break;
        }
        os << "nodes: " << r.nodes_visited << "\n";
        if (r.family)
            os << io::emit({*r.family, "dual", separator_witnesses(*r.family, k)}, format_of(o));
    } else if (o.problem == "min-m") {
        const int n = require(o.n, "--n");
        const auto r = search::min_m_hyperseparating(n, k, o.m_max, opts);
        if (r.found)
            os << "f(" << n << "," << k << ") = " << r.best << " " << exhausted_tag(r.exhausted) << "\n";
        else
            os << "f(" << n << "," << k << ") > " << o.m_max << " " << exhausted_tag(r.exhausted) << "\n";
        os << "nodes: " << r.nodes_visited << "\n";
        if (r.found)
            os << io::emit({r.example, "primal", {}}, format_of(o));
    } else if (o.problem == "unique-subset") {
        const int m = require(o.m, "--m");
        const auto r = search::max_unique_subset_family(m, k, opts);
        os << "unique-subset(" << m << "," << k << ") = " << r.best << " " << exhausted_tag(r.exhausted) << "\n";
        os << "nodes: " << r.nodes_visited << "\n";
        os << io::emit({r.example, std::nullopt, {}}, format_of(o));
    } else {
        const int m = require(o.m, "--m");
        const auto r = search::max_pair_family(m, k);
        os << "pair-family(" << m << "," << k << ") = " << r.best << " " << exhausted_tag(r.exhausted) << "\n";
        os << "nodes: " << r.nodes_visited << "\n";
        nlohmann::ordered_json j;
        j["ground_size"] = m;
        auto pairs = nlohmann::ordered_json::array();
        for (const auto& p : r.example_pairs)
            pairs.push_back({{"separator", elements_of(p.separator)}, {"key", elements_of(p.key)}});
        j["pairs"] = std::move(pairs);
        os << j.dump() << "\n";
    }
    return 0;
}

int cmd_table(const Options& o)
{
    const int n_max = o.n < 0 ? 30 : o.n;
    if (n_max < 2 || n_max > 200)
        throw Error(ErrorKind::parameter, "--n must be in 2..200 for table");
    if (o.check_up_to > 12)
        throw Error(ErrorKind::parameter, "--check-up-to must be at most 12");
    const auto opts = search_options(o);
    bool mismatch = false;
    std::ostringstream out;
    out << "n  f(n,2)  [lower ≤ f ≤ upper]  search\n";
    for (int n = 2; n <= n_max; ++n) {
        const int f = bounds::f2_exact(static_cast<std::uint64_t>(n));
        const auto b = bounds::f_bounds(static_cast<std::uint64_t>(n), 2);
        out << n << "  " << f << "  [" << b.lower << " ≤ " << f << " ≤ " << b.upper << "]";
        if (b.lower > f || f > b.upper) {
            out << "  bounds ✗";
            mismatch = true;
        }
        if (n <= o.check_up_to) {
            const auto r = search::min_m_hyperseparating(n, 2, search::kMaxNiceGround, opts);
            const bool agree = r.found && r.exhausted && r.best == f;
            out << "  search:" << (r.found ? std::to_string(r.best) : std::string("?")) << (agree ? " ✓" : " ✗");
            mismatch = mismatch || !agree;
        }
        out << "\n";
    }
    std::cout << out.str();
    return mismatch ? kExitFail : 0;
}

int cmd_dual(const Options& o)
{
    io::FamilyDocument doc = read_input(o);
    io::FamilyDocument out{dual(doc.family), std::nullopt, {}};
    if (doc.role)
        out.role = *doc.role == "primal" ? "dual" : "primal";
    std::cout << io::emit(out, format_of(o));
    return 0;
}

int cmd_switch(const Options& o)
{
    io::FamilyDocument doc = read_input(o);
    const int v = require(o.element, "--element");
    std::cout << io::emit({switch_element(doc.family, v), doc.role, {}}, format_of(o));
    return 0;
}

int cmd_canon(const Options& o)
{
    io::FamilyDocument doc = read_input(o);
    const auto group =
        o.group == "perm-switch" ? SymmetryGroup::permutations_and_switching : SymmetryGroup::permutations;
    std::cout << io::emit({canonical_form(doc.family, group), doc.role, {}}, format_of(o));
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Construct, verify, and search separating set systems"};
    app.require_subcommand(1);
    Options o;

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    };
    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--input", o.input, "Family document (default: stdin)");
    };
    auto add_search = [&](CLI::App* sub) {
        sub->add_option("--budget-ms", o.budget_ms, "Wall-clock budget (default: $SEPSYS_BUDGET_MS)");
        sub->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_flag("--no-symmetry", o.no_symmetry, "Disable orbit pruning");
    };

    auto* verify = app.add_subcommand("verify", "Check a separation property of a family document");
    verify->add_option("--property", o.property)
        ->required()
        ->check(CLI::IsMember({"separating", "completely", "hcs", "hs", "nice"}));
    verify->add_option("--k", o.k);
    add_input(verify);

    auto* construct = app.add_subcommand("construct", "Emit a verified construction");
    construct->add_option("--kind", o.kind)->required()->check(
        CLI::IsMember({"binary", "spencer", "hcs", "hs2", "nice-small"}));
    construct->add_option("--n", o.n);
    construct->add_option("--m", o.m);
    construct->add_option("--k", o.k);
    add_format(construct);

    auto* bounds_cmd = app.add_subcommand("bounds", "Bounds on f(n,k)");
    bounds_cmd->add_option("--n", o.n)->required();
    bounds_cmd->add_option("--k", o.k)->required();

    auto* search_cmd = app.add_subcommand("search", "Exhaustive extremal searches");
    search_cmd->add_option("--problem", o.problem)
        ->required()
        ->check(CLI::IsMember({"g", "exists", "min-m", "unique-subset", "pair-family"}));
    search_cmd->add_option("--n", o.n);
    search_cmd->add_option("--m", o.m);
    search_cmd->add_option("--m-max", o.m_max, "Largest m tried by min-m");
    search_cmd->add_option("--k", o.k)->required();
    add_search(search_cmd);
    add_format(search_cmd);

    auto* table = app.add_subcommand("table", "Tabulate f(n,2) against bounds and search");
    table->add_option("--n", o.n, "Largest n (default 30)");
    table->add_option("--check-up-to", o.check_up_to, "Cross-check by search up to this n");
    add_search(table);

    auto* dual_cmd = app.add_subcommand("dual", "Dual family");
    add_input(dual_cmd);
    add_format(dual_cmd);

    auto* switch_cmd = app.add_subcommand("switch", "Complement one ground element");
    switch_cmd->add_option("--element", o.element)->required();
    add_input(switch_cmd);
    add_format(switch_cmd);

    auto* canon = app.add_subcommand("canon", "Canonical form under relabeling (and switching)");
    canon->add_option("--group", o.group)->check(CLI::IsMember({"perm", "perm-switch"}));
    add_input(canon);
    add_format(canon);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*verify)
            return cmd_verify(o);
        if (*construct)
            return cmd_construct(o);
        if (*bounds_cmd)
            return cmd_bounds(o);
        if (*search_cmd)
            return cmd_search(o);
        if (*table)
            return cmd_table(o);
        if (*dual_cmd)
            return cmd_dual(o);
        if (*switch_cmd)
            return cmd_switch(o);
        return cmd_canon(o);
    } catch (const SelfCheckFailure& e) {
        std::cerr << "sepsys: internal error: " << e.what() << "\n";
        return kExitBug;
    } catch (const Error& e) {
        std::cerr << "sepsys: " << e.what() << "\n";
        return kExitUsage;
    }
}
