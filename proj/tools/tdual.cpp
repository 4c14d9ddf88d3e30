#include "suite.hpp"

#include "tdual/cap.hpp"
#include "tdual/cover.hpp"
#include "tdual/error.hpp"
#include "tdual/fundamental.hpp"
#include "tdual/hash.hpp"
#include "tdual/mayer_vietoris.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <random>

using namespace tdual;

namespace {

struct RunConfig {
    std::string command;
    std::string complex = "rp2";
    std::string system = "constant";
    std::string ring = "Z";
    std::string format = "tsv";
    std::string cover = "default";
    std::uint64_t seed = 0;
    std::size_t rank = 0;
    int count = 100;
};

// Input problems; reported with exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Inputs {
    ComplexPtr complex;
    RingSpec ring;
    LocalSystem system;
};

bool is_fixture(const std::string& name)
{
    const auto& names = mv_fixture_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

ComplexPtr load_complex(const std::string& source)
{
    const auto& names = corpus_names();
    if (std::find(names.begin(), names.end(), source) != names.end())
        return share(corpus(source));
    if (is_fixture(source))
        return mv_fixture(source).complex;
    return share(SimplicialComplex::load(source));
}

LocalSystem load_system(const RunConfig& cfg, const ComplexPtr& m, const RingSpec& ring)
{
    if (cfg.system == "constant")
        return constant_system(m, ring, cfg.rank ? cfg.rank : 1);
    if (cfg.system == "orientation")
        return orientation_system(m, ring);
    if (cfg.system == "random-flat")
        return random_flat_system(m, ring, cfg.rank ? cfg.rank : 2, cfg.seed);
    return LocalSystem::load(m, cfg.system);
}

Inputs load_inputs(const RunConfig& cfg, bool with_system = true)
{
    try {
        Inputs in;
        in.complex = load_complex(cfg.complex);
        in.ring = RingSpec::parse(cfg.ring);
        if (with_system) {
            in.system = load_system(cfg, in.complex, in.ring);
            in.ring = in.system.ring();
        }
        return in;
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
}

std::string header(const RunConfig& cfg, const Inputs& in)
{
    std::vector<std::pair<std::string, std::string>> fields = {{"command", cfg.command}};
    if (in.complex)
        fields.push_back({"complex", in.complex->digest()});
    if (in.system.base())
        fields.push_back({"system", in.system.digest()});
    fields.push_back({"ring", in.ring.short_name()});
    fields.push_back({"seed", std::to_string(cfg.seed)});
    return header_line(fields);
}

struct Outcome {
    Table table;
    std::vector<std::string> extra; // comment lines after the table
    std::vector<std::string> failures;
};

std::string yes(bool b)
{
    return b ? "true" : "false";
}

std::string f_vector(const SimplicialComplex& m)
{
    std::string out;
    for (int k = 0; k <= m.dimension(); ++k)
        out += (k ? "," : "") + std::to_string(m.count(k));
    return out;
}

Outcome run_validate(const Inputs& in)
{
    const auto r = validate(*in.complex);
    Outcome o;
    o.table.columns = {"property", "value"};
    o.table.rows = {{"dimension", std::to_string(r.dimension)},
                    {"f_vector", f_vector(*in.complex)},
                    {"pure", yes(r.is_pure)},
                    {"ridges_in_two_facets", yes(r.each_ridge_in_two_facets)},
                    {"dual_graph_connected", yes(r.dual_graph_connected)},
                    {"links_validated", yes(r.links_validated)},
                    {"euler_characteristic", std::to_string(r.euler_characteristic)}};
    if (!r.passes())
        o.failures.push_back("closed pseudomanifold: validation failed");
    return o;
}

Outcome run_orientation(const Inputs& in)
{
    const bool orientable = is_trivializable(orientation_system(in.complex, in.ring)).trivializable;
    const auto cover = orientation_double_cover(in.complex);
    const auto r = validate(*cover.total);
    Outcome o;
    o.table.columns = {"property", "value"};
    o.table.rows = {{"orientable", yes(orientable)},
                    {"cover_connected", yes(cover.connected())},
                    {"cover_f_vector", f_vector(*cover.total)},
                    {"cover_euler_characteristic", std::to_string(r.euler_characteristic)},
                    {"cover_validated", yes(r.passes())}};
    if (cover.connected() == orientable)
        o.failures.push_back("orientation cover: connected exactly when the base is non-orientable fails");
    if (!r.passes())
        o.failures.push_back("orientation cover: total space is not a closed pseudomanifold");
    return o;
}

Outcome run_fundamental(const Inputs& in)
{
    Outcome o;
    o.table.columns = {"check", "value"};
    const int n = in.complex->dimension();
    const auto direct = fundamental_class_direct(in.complex, in.ring);
    const auto h = homology(direct.system, n);
    const bool generates = h.is_generator_of_rank_one(direct.cycle);
    o.table.rows.push_back({"homology", h.to_string()});
    o.table.rows.push_back({"generates", yes(generates)});
    o.table.rows.push_back({"locally_generating", yes(is_locally_generating(direct))});
    if (!generates)
        o.failures.push_back("fundamental class: does not generate the top twisted homology");
    if (in.ring.two_is_nonzero()) {
        const auto via = fundamental_class_via_cover(in.complex, in.ring);
        const bool agree = h.same_class(direct.cycle, via.cycle);
        o.table.rows.push_back({"via_cover_agrees", yes(agree)});
        if (!agree)
            o.failures.push_back("fundamental class: cover construction disagrees");
    } else {
        o.table.rows.push_back({"via_cover_agrees", "n/a"});
    }
    return o;
}

Outcome run_lemma1(const Inputs& in)
{
    const auto cover = orientation_double_cover(in.complex);
    const bool ok = lemma1_check(cover, in.ring);
    Outcome o;
    o.table.columns = {"cover_connected", "deck_negates_orientation"};
    o.table.rows = {{yes(cover.connected()), yes(ok)}};
    if (!ok)
        o.failures.push_back("deck lemma: deck image is not the negated orientation");
    return o;
}

Outcome run_lemma2(const Inputs& in)
{
    const auto cover = orientation_double_cover(in.complex);
    Outcome o;
    o.table.columns = {"K", "pushforward_vanishes"};
    const std::vector<std::pair<std::string, FullSubcomplex>> sets = {
        {"all", FullSubcomplex::all(in.complex)}, {"vertex0", FullSubcomplex(in.complex, {0})}};
    for (const auto& [name, k] : sets) {
        const bool ok = lemma2_check(cover, in.ring, k);
        o.table.rows.push_back({name, yes(ok)});
        if (!ok)
            o.failures.push_back("pushforward lemma: nonzero pushforward class for K=" + name);
    }
    return o;
}

Outcome run_phi(const Inputs& in)
{
    const auto cover = orientation_double_cover(in.complex);
    const auto s = split_maps(cover, in.ring, FullSubcomplex::all(in.complex));
    const bool exact = short_sequences_exact(s), phi = phi_identify(s);
    Outcome o;
    o.table.columns = {"short_sequences_exact", "phi_isomorphism_of_complexes"};
    o.table.rows = {{yes(exact), yes(phi)}};
    if (!exact)
        o.failures.push_back("cover splitting: short sequences are not exact");
    if (!phi)
        o.failures.push_back("cover splitting: phi does not identify the minus part with the twisted complex");
    return o;
}

Outcome run_cap_identity(const RunConfig& cfg, const Inputs& in)
{
    const auto& g = in.system;
    const auto h = orientation_system(in.complex, in.ring);
    const int n = in.complex->dimension();
    std::mt19937_64 rng(fnv1a64("cap-identity", cfg.seed + 0xcbf29ce484222325ULL));
    std::uniform_int_distribution<int> entry(-5, 5);
    auto column = [&](std::size_t size) {
        ExactMatrix v(in.ring, size, 1);
        for (std::size_t i = 0; i < size; ++i)
            v.set(i, 0, entry(rng));
        return v;
    };
    int holds = 0;
    std::vector<std::string> failing;
    for (int trial = 0; trial < cfg.count; ++trial) {
        const int k = static_cast<int>(rng() % (n + 1));
        const int q = k + static_cast<int>(rng() % (n - k + 1));
        auto c = column(in.complex->count(k) * g.rank());
        auto a = column(in.complex->count(q) * h.rank());
        if (boundary_identity_check(g, c, k, h, a, q).holds)
            ++holds;
        else
            failing.push_back(std::to_string(trial));
    }
    Outcome o;
    o.table.columns = {"trials", "holds"};
    o.table.rows = {{std::to_string(cfg.count), std::to_string(holds)}};
    if (!failing.empty())
        o.failures.push_back("cap identity: boundary formula fails for trial " + failing.front());
    return o;
}

Outcome run_duality(const Inputs& in)
{
    const auto r = verify_duality(in.system);
    Outcome o;
    o.table = r.table();
    for (const auto& row : r.rows)
        if (!row.is_isomorphism())
            o.failures.push_back("duality: cap with the fundamental class is not an isomorphism in degree " +
                                 std::to_string(row.degree));
    return o;
}

MVFixture resolve_cover(const RunConfig& cfg)
{
    static const std::vector<std::string> aliases = {"default", "cylinders", "halves", "bands"};
    const bool alias = std::find(aliases.begin(), aliases.end(), cfg.cover) != aliases.end();
    if (alias && is_fixture(cfg.complex))
        return mv_fixture(cfg.complex);
    if (is_fixture(cfg.cover))
        return mv_fixture(cfg.cover);
    throw UsageError("no two-set cover '" + cfg.cover + "' for complex '" + cfg.complex +
                     "'; complexes with covers: octahedron, torus, sphere-grid, torus-grid, klein-grid");
}

Outcome run_check_mv(const RunConfig& cfg, const Inputs& in, const MVFixture& f)
{
    const auto pair = CoverPair::absolute(f.u, f.v);
    const auto h = mv_homology(pair, in.system, cfg.seed);
    const auto c = mv_cohomology(pair, in.system, cfg.seed);
    Outcome o;
    o.table.columns = {"sequence", "position", "node", "module", "exact"};
    for (const auto* r : {&h, &c})
        for (const auto& row : r->table().rows) {
            std::vector<std::string> cells = {r->kind};
            cells.insert(cells.end(), row.begin(), row.end());
            o.table.rows.push_back(cells);
        }
    for (const auto* r : {&h, &c})
        for (const auto& node : r->nodes)
            if (!node.exact)
                o.failures.push_back("Mayer-Vietoris: " + r->kind + " sequence not exact at " + node.label);
    return o;
}

Outcome run_diagram(const RunConfig& cfg, const Inputs& in, const MVFixture& f)
{
    const auto r = diagram6_check(in.system, f.u, f.v, f.k, f.l, cfg.seed);
    Outcome o;
    o.table = r.table();
    const int sign = r.connecting_sign();
    o.extra.push_back(std::string("# connecting-sign ") +
                      (sign == 1 ? "+1" : sign == -1 ? "-1" : sign == 0 ? "undetermined" : "inconsistent"));
    if (!r.middle_blocks_commute())
        o.failures.push_back("duality diagram: a cap square does not commute");
    if (sign == 2)
        o.failures.push_back("duality diagram: connecting block has no consistent sign");
    return o;
}

Outcome run_corpus_all(const RunConfig& cfg)
{
    Outcome o;
    o.table.columns = {"criterion", "name", "verdict", "detail"};
    for (const auto& r : suite::run_all(cfg.seed)) {
        o.table.rows.push_back({std::to_string(r.id), r.name, r.pass ? "PASS" : "FAIL", r.detail});
        if (!r.pass)
            o.failures.push_back("acceptance: criterion " + std::to_string(r.id) + " (" + r.name + ") failed");
    }
    return o;
}

int run(const RunConfig& cfg)
{
    const bool tsv = cfg.format == "tsv";
    Inputs in;
    Outcome o;
    try {
        const std::string& c = cfg.command;
        if (c == "corpus-all") {
            in.ring = RingSpec::integers();
            std::cout << header(cfg, in) << '\n';
            o = run_corpus_all(cfg);
        } else if (c == "check-mv" || c == "diagram6") {
            const MVFixture f = resolve_cover(cfg);
            RunConfig local = cfg;
            local.complex = f.name;
            in = load_inputs(local);
            std::cout << header(cfg, in) << " cover=" << f.name << '\n';
            o = c == "check-mv" ? run_check_mv(cfg, in, f) : run_diagram(cfg, in, f);
        } else {
            const bool needs_system = c == "cap-identity" || c == "verify-duality";
            in = load_inputs(cfg, needs_system);
            std::cout << header(cfg, in) << '\n';
            if (c == "validate")
                o = run_validate(in);
            else if (c == "orientation")
                o = run_orientation(in);
            else if (c == "fundamental-class")
                o = run_fundamental(in);
            else if (c == "lemma1")
                o = run_lemma1(in);
            else if (c == "lemma2")
                o = run_lemma2(in);
            else if (c == "phi-check")
                o = run_phi(in);
            else if (c == "cap-identity")
                o = run_cap_identity(cfg, in);
            else
                o = run_duality(in);
        }
    } catch (const UsageError& e) {
        std::cerr << "tdual: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cout << "FAIL\t" << cfg.command << ": " << e.what() << '\n';
        return 1;
    }
    std::cout << o.table.render(tsv);
    for (const auto& line : o.extra)
        std::cout << line << '\n';
    for (const auto& f : o.failures)
        std::cout << "FAIL\t" << f << '\n';
    return o.failures.empty() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact checks of twisted Poincare duality on simplicial complexes"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    RunConfig cfg;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"validate", "Check that the complex is a closed pseudomanifold"},
        {"orientation", "Orientability and the orientation double cover"},
        {"fundamental-class", "Fundamental class, directly and through the cover"},
        {"lemma1", "The deck transformation negates the cover orientation"},
        {"lemma2", "The pushforward of the cover fundamental class vanishes"},
        {"phi-check", "Splitting of cover chains and the identification phi"},
        {"cap-identity", "Boundary formula for the cap product on random inputs"},
        {"verify-duality", "Cap with the fundamental class in every degree"},
        {"check-mv", "Mayer-Vietoris sequences of a two-set cover"},
        {"diagram6", "Compare the two Mayer-Vietoris rows through cap products"},
        {"corpus-all", "Run the full acceptance suite"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--complex", cfg.complex, "Corpus name, cover fixture name or complex file")
            ->capture_default_str();
        sub->add_option("--system", cfg.system, "constant, orientation, random-flat or a system file")
            ->capture_default_str();
        sub->add_option("--rank", cfg.rank, "Rank for constant (default 1) or random-flat (default 2) systems");
        sub->add_option("--ring", cfg.ring, "Z, Q or Z/m")->capture_default_str();
        sub->add_option("--cover", cfg.cover, "Two-set cover name")->capture_default_str();
        sub->add_option("--format", cfg.format, "Output format")
            ->check(CLI::IsMember({"tsv", "plain"}))
            ->capture_default_str();
        sub->add_option("--seed", cfg.seed, "Seed for every random choice")->capture_default_str();
        sub->add_option("--count", cfg.count, "Number of random trials")->check(CLI::PositiveNumber)->capture_default_str();
        sub->callback([&cfg, n = name] { cfg.command = n; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return run(cfg);
}
