#include "dmeq/cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "dmeq/cyclic_cohomology.hpp"
#include "dmeq/dm_basis.hpp"
#include "dmeq/equivariant_cochains.hpp"
#include "dmeq/fixed_points.hpp"
#include "dmeq/keel.hpp"
#include "dmeq/serre_e2.hpp"

namespace dmeq {

using ojson = nlohmann::ordered_json;

namespace {

/// One result, three renderings.
struct Rendered {
    ojson json;
    std::string csv;
    std::string ascii;
    int status = kExitOk;
};

/// Raised for bad arguments detected after parsing.
class UsageError : public Error {
public:
    using Error::Error;
};

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

ojson monomial_json(const Monomial& m)
{
    ojson arr = ojson::array();
    for (const auto& [s, e] : m.exponents())
        arr.push_back({{"set", s.members()}, {"exp", e}});
    return arr;
}

ojson degrees_json(const GradedBasis& b)
{
    ojson deg = ojson::object();
    for (const auto& [d, v] : b.by_degree)
        deg[std::to_string(d)] = v.size();
    return deg;
}

std::string rational_string(const Rational& r)
{
    std::ostringstream os;
    os << r;
    return os.str();
}

ojson cyclotomic_json(const CyclotomicNumber& x)
{
    ojson arr = ojson::array();
    for (const auto& c : x.coefficients())
        arr.push_back(rational_string(c));
    return arr;
}

// ---------------------------------------------------------------- subcommands

Rendered render_betti(const RunConfig& cfg)
{
    const auto basis = enumerate_basis(cfg.p, cfg.max_degree);
    Rendered r;
    r.json = {{"p", cfg.p}, {"degrees", degrees_json(basis)}};
    r.csv = "degree,dim\n";
    r.ascii = fmt::format("Betti numbers of M_0,{}-bar over F_{}\ndegree  dim\n", cfg.p + 1, cfg.p);
    for (const auto& [d, v] : basis.by_degree) {
        r.csv += fmt::format("{},{}\n", d, v.size());
        r.ascii += fmt::format("{:>6}  {}\n", d, v.size());
    }
    r.ascii += fmt::format("total   {}\n", basis.total_size());
    return r;
}

Rendered render_orbits(const RunConfig& cfg)
{
    const auto basis = enumerate_basis(cfg.p, cfg.max_degree);
    const auto orbits = orbit_decomposition(basis);
    Rendered r;
    ojson fixed = ojson::array();
    for (const auto& m : orbits.fixed)
        fixed.push_back(monomial_json(m));
    ojson cycles = ojson::array();
    for (const auto& c : orbits.cycles) {
        ojson cyc = ojson::array();
        for (const auto& m : c)
            cyc.push_back(monomial_json(m));
        cycles.push_back(std::move(cyc));
    }
    r.json = {{"p", cfg.p}, {"degrees", degrees_json(basis)}, {"fixed", fixed}, {"cycles", cycles}};

    const auto fixed_by = orbits.fixed_by_degree();
    const auto cycles_by = orbits.cycles_by_degree();
    r.csv = "degree,dim,fixed,cycles\n";
    r.ascii = fmt::format("sigma-orbits on the basis of H*(M_0,{}-bar; F_{})\n", cfg.p + 1, cfg.p);
    r.ascii += "degree  dim  fixed  cycles\n";
    for (const auto& [d, v] : basis.by_degree) {
        const auto f = fixed_by.count(d) ? fixed_by.at(d) : 0;
        const auto c = cycles_by.count(d) ? cycles_by.at(d) : 0;
        r.csv += fmt::format("{},{},{},{}\n", d, v.size(), f, c);
        r.ascii += fmt::format("{:>6}  {:>3}  {:>5}  {:>6}\n", d, v.size(), f, c);
    }
    r.ascii += "fixed:";
    for (const auto& m : orbits.fixed)
        r.ascii += " " + to_string(m);
    r.ascii += fmt::format("\n{} fixed, {} cycles of length {}\n", orbits.fixed.size(), orbits.cycles.size(), cfg.p);
    return r;
}

Rendered render_group_cohomology(const RunConfig& cfg)
{
    const auto p = static_cast<std::uint32_t>(cfg.p);
    const int max_i = cfg.max_i.value_or(default_max_i(p));
    if (max_i < 0)
        throw UsageError("--max-i must be nonnegative");

    std::optional<PermutationCycles> cycles;
    std::optional<PermRepresentation> rep;
    if (cfg.rep == "trivial") {
        rep = PermRepresentation::trivial(p);
        cycles = PermutationCycles{1, 0};
    } else if (cfg.rep == "regular") {
        rep = PermRepresentation::regular(p);
        cycles = PermutationCycles{0, 1};
    } else if (cfg.rep.rfind("perm:", 0) == 0) {
        std::vector<std::size_t> perm;
        try {
            perm = parse_cycle_notation(cfg.rep.substr(5));
            cycles = decompose_permutation_rep(perm, p);
            rep = PermRepresentation::from_permutation(perm, p);
        } catch (const InvalidRepresentation& e) {
            throw UsageError(std::string("--rep: ") + e.what());
        }
        if (perm.empty())
            throw UsageError("--rep: empty permutation");
    } else {
        throw UsageError("--rep must be trivial, regular or perm:<cycles>");
    }

    const auto dims = group_cohomology_dims(*rep, max_i);
    Rendered r;
    r.json = {{"p", cfg.p},
              {"rep", cfg.rep},
              {"dimension", rep->dimension()},
              {"fixed_count", cycles->fixed_count},
              {"cycle_count", cycles->cycle_count},
              {"dims", dims}};
    r.csv = "i,dim\n";
    r.ascii = fmt::format("H^i(BZ/{}; {}) , dimension {} ({} fixed, {} p-cycles)\n  i  dim\n", cfg.p, cfg.rep,
                          rep->dimension(), cycles->fixed_count, cycles->cycle_count);
    for (std::size_t i = 0; i < dims.size(); ++i) {
        r.csv += fmt::format("{},{}\n", i, dims[i]);
        r.ascii += fmt::format("{:>3}  {}\n", i, dims[i]);
    }
    return r;
}

Rendered render_e2(const RunConfig& cfg)
{
    const int max_i = cfg.max_i.value_or(default_display_columns(cfg.p));
    if (max_i < 0)
        throw UsageError("--max-i must be nonnegative");
    const auto page = assemble_e2(cfg.p, max_i);
    const auto violations = e2_invariant_violations(page);

    Rendered r;
    ojson cells = ojson::array();
    r.csv = "i,j,dim\n";
    for (int j = 0; j <= page.top; ++j)
        for (int i = 0; i <= page.max_i; ++i) {
            r.csv += fmt::format("{},{},{}\n", i, j, page.dim(i, j));
            if (page.dim(i, j) == 0)
                continue;
            ojson labels = ojson::array();
            for (const auto& g : page.generators(i, j))
                labels.push_back(g.label);
            cells.push_back({{"i", i}, {"j", j}, {"dim", page.dim(i, j)}, {"generators", labels}});
        }
    ojson torsion = ojson::object();
    for (int j = 0; j <= page.top; j += 2)
        torsion[std::to_string(j)] = page.torsion_flags(j);
    r.json = {{"p", cfg.p},
              {"max_i", page.max_i},
              {"top", page.top},
              {"u", page.u_label()},
              {"e", page.e_label()},
              {"alpha", page.alpha_label()},
              {"cells", cells},
              {"torsion", torsion},
              {"invariants_hold", violations.empty()},
              {"violations", violations}};

    std::string& a = r.ascii;
    a = fmt::format("E2 page, p = {}, columns i = 0..{}\n", cfg.p, page.max_i);
    a += " j\\i |";
    for (int i = 0; i <= page.max_i; ++i)
        a += fmt::format("{:>3}", i);
    a += "\n-----+" + std::string(3 * (page.max_i + 1), '-') + "\n";
    for (int j = std::max(page.top, 0); j >= 0; --j) {
        a += fmt::format("{:>4} |", j);
        for (int i = 0; i <= page.max_i; ++i) {
            const auto d = page.dim(i, j);
            a += d ? fmt::format("{:>3}", d) : "  .";
        }
        a += "\n";
    }
    a += fmt::format("u = {} in (2,0), e = {} in (1,0), alpha = {} in (0,2)\n", page.u_label(), page.e_label(),
                     page.alpha_label().empty() ? "-" : page.alpha_label());
    for (int j = 0; j <= page.top; j += 2) {
        a += fmt::format("E2^{{0,{}}}:", j);
        const auto& gens = page.generators(0, j);
        const auto flags = page.torsion_flags(j);
        for (std::size_t k = 0; k < gens.size(); ++k)
            a += " " + gens[k].label + (flags[k] ? "*" : "");
        a += "\n";
    }
    a += "(* = killed by u and e)\n";
    for (const auto& v : violations)
        a += "violation: " + v + "\n";
    r.status = violations.empty() ? kExitOk : kExitFailed;
    return r;
}

Rendered render_certificate(const CertificateReport& rep)
{
    Rendered r;
    ojson items = ojson::array();
    r.csv = "id,pass,detail\n";
    r.ascii = fmt::format("certificate for p = {}\n", rep.p);
    for (const auto& it : rep.items) {
        items.push_back({{"id", it.id}, {"pass", it.pass}, {"detail", it.detail}});
        r.csv += fmt::format("{},{},{}\n", it.id, it.pass ? "true" : "false", csv_field(it.detail));
        r.ascii += fmt::format("  {} {}  {}\n", it.id, it.pass ? "PASS" : "FAIL", it.detail);
    }
    r.json = {{"p", rep.p}, {"items", items}, {"pass", rep.pass}};
    r.ascii += fmt::format("overall: {}\n{}\n", rep.pass ? "PASS" : "FAIL", rep.summary);
    r.status = rep.pass ? kExitOk : kExitFailed;
    return r;
}

Rendered render_fixed_points(const RunConfig& cfg)
{
    if (cfg.p < 3)
        throw UsageError("fixed-points needs p >= 3");
    const auto configs = enumerate_fixed(cfg.p);
    Rendered r;
    ojson list = ojson::array();
    r.csv = "s,label,z,w\n";
    r.ascii = fmt::format("{} fixed points of M_0,{}-bar (η = primitive {}th root of unity)\n", configs.size(),
                          cfg.p + 1, cfg.p);
    for (std::size_t s = 0; s < configs.size(); ++s) {
        ojson pts = ojson::array();
        r.ascii += fmt::format("C_{}:", s + 1);
        for (std::size_t l = 1; l <= configs[s].size(); ++l) {
            const auto& pt = configs[s].point(l);
            pts.push_back({{"label", l}, {"z", cyclotomic_json(pt.z())}, {"w", cyclotomic_json(pt.w())}});
            r.csv += fmt::format("{},{},{},{}\n", s + 1, l, csv_field(to_string(pt.z())), csv_field(to_string(pt.w())));
            r.ascii += fmt::format(" x{}={}", l, to_string(pt));
        }
        r.ascii += "\n";
        list.push_back({{"s", s + 1}, {"points", pts}});
    }
    r.json = {{"p", cfg.p},
              {"count", configs.size()},
              {"basis", "coefficients on 1, η, ..., η^(p-2)"},
              {"sigma_fixed", true},
              {"pairwise_non_isomorphic", true},
              {"configurations", list}};
    r.ascii += "each C_s is fixed by the rotation; all pairs are non-isomorphic\n";
    return r;
}

Rendered render_trees(const RunConfig& cfg)
{
    if (cfg.p > kMaxTreePrime)
        throw UsageError(fmt::format("trees is limited to p <= {}", kMaxTreePrime));
    const auto trees = enumerate_stable_trees(cfg.p);
    const auto search = nodal_fixed_point_search(cfg.p);
    Rendered r;
    ojson list = ojson::array();
    r.csv = "index,vertices,clusters\n";
    for (std::size_t k = 0; k < trees.size(); ++k) {
        const auto& t = trees[k];
        std::vector<std::vector<int>> clusters;
        for (auto c : t.clusters)
            clusters.push_back(MarkedSet::from_mask(c).members());
        list.push_back({{"vertices", t.vertex_count()},
                        {"edges", t.edges()},
                        {"label_vertex", t.label_vertex},
                        {"clusters", clusters}});
        r.csv += fmt::format("{},{},{}\n", k, t.vertex_count(), csv_field(to_string(t)));
    }
    r.json = {{"p", cfg.p},
              {"marked_points", cfg.p + 1},
              {"count", trees.size()},
              {"nodal_search",
               {{"trees_examined", search.trees_examined},
                {"sigma_compatible", search.sigma_compatible},
                {"no_nodal_fixed_points", search.no_nodal_fixed_points}}},
              {"trees", list}};
    r.ascii = fmt::format("{} stable trees with {} marked points ({} with a node)\n", trees.size(), cfg.p + 1,
                          search.trees_examined);
    r.ascii += fmt::format("trees admitting an automorphism realising the rotation: {}\n", search.sigma_compatible);
    r.ascii += fmt::format("no nodal fixed points: {}\n", search.no_nodal_fixed_points ? "yes" : "no");
    r.status = search.no_nodal_fixed_points ? kExitOk : kExitFailed;
    return r;
}

Rendered render_moebius(const RunConfig& cfg)
{
    if (cfg.p < 3)
        throw UsageError("moebius-degree needs p >= 3");
    const auto rep = moebius_power_degree(cfg.p);
    auto poly_json = [](const CycloPoly& f) {
        ojson arr = ojson::array();
        for (const auto& c : f)
            arr.push_back(cyclotomic_json(c));
        return arr;
    };
    Rendered r;
    r.json = {{"p", cfg.p},
              {"numerator_c_free", rep.numerator_c_free},
              {"denominator_degree", rep.denominator_degree},
              {"fixed_point_polynomial_degree", degree(rep.fixed_point_polynomial)},
              {"fixed_point_polynomial", poly_json(rep.fixed_point_polynomial)},
              {"c_zero_is_rotation", rep.c_zero_is_rotation},
              {"pass", rep.pass}};
    r.csv = "key,value\n";
    r.csv += fmt::format("numerator_c_free,{}\n", rep.numerator_c_free);
    r.csv += fmt::format("denominator_degree,{}\n", rep.denominator_degree);
    r.csv += fmt::format("fixed_point_polynomial,{}\n", csv_field(to_string(rep.fixed_point_polynomial)));
    r.csv += fmt::format("c_zero_is_rotation,{}\n", rep.c_zero_is_rotation);
    r.ascii = fmt::format("phi(z) = ηz/(cz + 1 - c), composed {} times\n", cfg.p - 1);
    r.ascii += fmt::format("  numerator free of c: {}\n", rep.numerator_c_free ? "yes" : "no");
    r.ascii += fmt::format("  denominator degree in c: {}\n", rep.denominator_degree);
    r.ascii += fmt::format("  fixed-point polynomial: {}\n", to_string(rep.fixed_point_polynomial));
    r.ascii += fmt::format("  c = 0 gives z -> η^{} z: {}\n", cfg.p - 1, rep.c_zero_is_rotation ? "yes" : "no");
    r.status = rep.pass ? kExitOk : kExitFailed;
    return r;
}

Rendered render_borel(const RunConfig& cfg)
{
    if (cfg.input.empty())
        throw UsageError("borel needs --input <complex.json>");
    std::ifstream in(cfg.input);
    if (!in)
        throw UsageError("cannot open " + cfg.input);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(cfg.input + ": " + e.what());
    }
    FiniteGComplex c;
    try {
        c = complex_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(cfg.input + ": " + e.what());
    }
    if (cfg.p != 0 && static_cast<std::uint32_t>(cfg.p) != c.p)
        throw UsageError(fmt::format("--p {} disagrees with p = {} in {}", cfg.p, c.p, cfg.input));
    const int max_degree = cfg.max_degree.value_or(8);
    if (max_degree < 0)
        throw UsageError("--max-degree must be nonnegative");
    const auto dims = borel_cohomology_dims(build_borel(c, max_degree + 2));
    Rendered r;
    r.json = {{"p", c.p}, {"max_degree", max_degree}, {"dims", dims}};
    r.csv = "degree,dim\n";
    r.ascii = fmt::format("Borel cohomology over F_{}\ndegree  dim\n", c.p);
    for (std::size_t n = 0; n < dims.size(); ++n) {
        r.csv += fmt::format("{},{}\n", n, dims[n]);
        r.ascii += fmt::format("{:>6}  {}\n", n, dims[n]);
    }
    return r;
}

Rendered render_verify_all(const RunConfig& cfg, std::ostream& err)
{
    const auto rep = verify_all(cfg.p, cfg.window);
    Rendered r;
    ojson stages = ojson::array();
    r.csv = "stage,pass,detail\n";
    r.ascii = fmt::format("verify-all p = {}, window = {}\n", rep.p, rep.window);
    for (const auto& s : rep.stages) {
        stages.push_back({{"name", s.name}, {"pass", s.pass}, {"detail", s.detail}});
        r.csv += fmt::format("{},{},{}\n", s.name, s.pass ? "true" : "false", csv_field(s.detail));
        r.ascii += fmt::format("  [{}] {:<18} {}\n", s.pass ? "PASS" : "FAIL", s.name, s.detail);
        if (cfg.timings)
            err << fmt::format("{:<18} {:.3f}s\n", s.name, s.seconds);
    }
    r.json = {{"p", rep.p}, {"window", rep.window}, {"stages", stages}, {"cross_count", rep.cross_count},
              {"pass", rep.pass}};
    r.ascii += fmt::format("cross-count: {}\noverall: {}\n", rep.cross_count, rep.pass ? "PASS" : "FAIL");
    r.status = rep.pass ? kExitOk : kExitFailed;
    return r;
}

} // namespace

VerifyAllReport verify_all(int p, int window)
{
    VerifyAllReport rep;
    rep.p = p;
    rep.window = window;
    const auto up = static_cast<std::uint32_t>(p);

    std::optional<GradedBasis> basis;
    std::optional<OrbitDecomposition> orbits;
    std::size_t fixed_configs = 0;

    auto stage = [&](const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
        StageResult s;
        s.name = name;
        const auto start = std::chrono::steady_clock::now();
        try {
            std::tie(s.pass, s.detail) = body();
        } catch (const std::exception& e) {
            s.pass = false;
            s.detail = std::string("error: ") + e.what();
        }
        s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        rep.stages.push_back(std::move(s));
    };

    stage("basis", [&] {
        basis = enumerate_basis(p);
        const auto oracle = keel_point_count(p + 1);
        bool ok = basis->by_degree.size() == oracle.size();
        std::vector<std::size_t> dims;
        for (std::size_t k = 0; k < oracle.size(); ++k) {
            dims.push_back(basis->dim(2 * static_cast<int>(k)));
            ok = ok && dims.back() == static_cast<std::size_t>(oracle[k]);
        }
        return std::pair{ok, fmt::format("dims ({}) vs point-count oracle ({})", fmt::join(dims, ","),
                                         fmt::join(oracle, ","))};
    });

    stage("orbits", [&] {
        if (!basis)
            throw Error("skipped: basis stage did not produce a basis");
        orbits = orbit_decomposition(*basis);
        bool ok = orbits->fixed.size() == static_cast<std::size_t>(p - 1);
        for (std::size_t k = 0; k < orbits->fixed.size(); ++k)
            ok = ok && orbits->fixed[k] == pi_x_power(p, static_cast<int>(k));
        return std::pair{ok, fmt::format("{} fixed (powers of Π_X), {} cycles of length {}", orbits->fixed.size(),
                                         orbits->cycles.size(), p)};
    });

    stage("group-cohomology", [&] {
        const int max_i = default_max_i(up);
        const auto triv = group_cohomology_dims(PermRepresentation::trivial(up), max_i);
        const auto reg = group_cohomology_dims(PermRepresentation::regular(up), max_i);
        const auto triv_b = borel_cohomology_dims(build_borel(FiniteGComplex::fixed_points(up, 1), max_i + 2));
        const auto reg_b = borel_cohomology_dims(build_borel(FiniteGComplex::free_orbit(up), max_i + 2));
        std::vector<std::size_t> ones(max_i + 1, 1), delta(max_i + 1, 0);
        delta[0] = 1;
        const bool ok = triv == ones && reg == delta && triv_b == triv && reg_b == reg;
        return std::pair{ok, fmt::format("trivial ({}) regular ({}) for i=0..{}; Borel complex agrees: {}",
                                         fmt::join(triv, ","), fmt::join(reg, ","), max_i,
                                         triv_b == triv && reg_b == reg)};
    });

    stage("e2", [&] {
        const auto page = assemble_e2(p);
        const auto v = e2_invariant_violations(page);
        return std::pair{v.empty(), v.empty() ? fmt::format("all invariants hold on {} columns", page.max_i + 1)
                                              : fmt::format("{} violations, first: {}", v.size(), v.front())};
    });

    stage("collapse", [&] {
        const auto c = collapse_certificate(p, window);
        std::string detail;
        for (const auto& it : c.items)
            detail += fmt::format("{}{}={}", detail.empty() ? "" : " ", it.id, it.pass ? "pass" : "fail");
        return std::pair{c.pass, detail};
    });

    stage("inject", [&] {
        const auto c = injectivity_certificate(p, window);
        std::string detail;
        for (const auto& it : c.items)
            detail += fmt::format("{}{}={}", detail.empty() ? "" : " ", it.id, it.pass ? "pass" : "fail");
        return std::pair{c.pass, detail};
    });

    stage("fixed-points", [&] {
        if (p == 2) {
            fixed_configs = 1;
            return std::pair{true, std::string("M_0,3-bar is a single point")};
        }
        fixed_configs = enumerate_fixed(p).size();
        const auto moebius = moebius_power_degree(p);
        bool ok = fixed_configs == static_cast<std::size_t>(p - 1) && moebius.pass;
        std::string nodal = "skipped (p > 7)";
        if (p <= kMaxTreePrime) {
            const auto search = nodal_fixed_point_search(p);
            ok = ok && search.no_nodal_fixed_points;
            nodal = fmt::format("{} nodal trees, {} rotation-compatible", search.trees_examined,
                                search.sigma_compatible);
        }
        return std::pair{ok, fmt::format("{} configurations; Moebius denominator degree {}; {}", fixed_configs,
                                         moebius.denominator_degree, nodal)};
    });

    stage("cross-count", [&] {
        const std::size_t from_basis = orbits ? orbits->fixed.size() : 0;
        const auto pts = FiniteGComplex::fixed_points(up, static_cast<std::size_t>(p - 1));
        const auto stable = stabilized_dims(pts, 1, kDefaultLocalizationWindow);
        const bool constant = std::all_of(stable.begin(), stable.end(), [&](auto d) { return d == stable.front(); });
        const std::size_t from_borel = constant ? stable.front() : 0;
        const bool ok = constant && from_basis == fixed_configs && fixed_configs == from_borel &&
                        from_basis == static_cast<std::size_t>(p - 1);
        rep.cross_count = ok ? static_cast<long long>(from_basis) : -1;
        return std::pair{ok, fmt::format("fixed monomials {}, fixed configurations {}, stabilized Borel dim {}",
                                         from_basis, fixed_configs, from_borel)};
    });

    stage("localization", [&] {
        const auto point = FiniteGComplex::fixed_points(up, 1);
        const auto orbit = FiniteGComplex::free_orbit(up);
        const auto mixed = FiniteGComplex::disjoint_union(orbit, point);
        FpMatrix project(1, up + 1, up);
        project.set(0, up, 1);
        const bool a = localization_check(mixed, point, {project});
        const bool b = localization_check(point, point, {FpMatrix::identity(1, up)});
        const bool c = localization_check(orbit, FiniteGComplex::empty(up), {FpMatrix(0, up, up)});
        return std::pair{a && b && c, fmt::format("orbit+point vs point {}, point vs point {}, orbit vs empty {}", a,
                                                  b, c)};
    });

    rep.pass = std::all_of(rep.stages.begin(), rep.stages.end(), [](const auto& s) { return s.pass; });
    return rep;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "ascii")
            throw UsageError("--format must be json, csv or ascii");
        if (cfg.subcommand != "borel")
            require_prime(cfg.p);
        if (cfg.window < 1)
            throw UsageError("--window must be positive");

        Rendered r;
        const auto& s = cfg.subcommand;
        if (s == "betti")
            r = render_betti(cfg);
        else if (s == "orbits")
            r = render_orbits(cfg);
        else if (s == "group-cohomology")
            r = render_group_cohomology(cfg);
        else if (s == "e2")
            r = render_e2(cfg);
        else if (s == "collapse")
            r = render_certificate(collapse_certificate(cfg.p, cfg.window));
        else if (s == "inject")
            r = render_certificate(injectivity_certificate(cfg.p, cfg.window));
        else if (s == "fixed-points")
            r = render_fixed_points(cfg);
        else if (s == "trees")
            r = render_trees(cfg);
        else if (s == "moebius-degree")
            r = render_moebius(cfg);
        else if (s == "borel")
            r = render_borel(cfg);
        else if (s == "verify-all")
            r = render_verify_all(cfg, err);
        else
            throw UsageError("unknown subcommand '" + s + "'");

        std::string text;
        if (cfg.format == "json")
            text = r.json.dump(2) + "\n";
        else if (cfg.format == "csv")
            text = r.csv;
        else
            text = r.ascii;

        if (cfg.out.empty()) {
            out << text;
        } else {
            std::ofstream file(cfg.out, std::ios::binary);
            if (!file)
                throw UsageError("cannot write " + cfg.out);
            file << text;
        }
        return r.status;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidPrime& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ResourceGuard& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidComplex& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ShapeMismatch& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << "\n";
        return kExitFailed;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Mod-p equivariant cohomology of M_0,1+p-bar with its Z/p action", "dmeq"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--p", cfg.p, "prime p (number of rotated marked points)");
    app.add_option("--format", cfg.format, "json, csv or ascii")->capture_default_str();
    app.add_option("--out", cfg.out, "write output to this file instead of stdout");

    auto* betti = app.add_subcommand("betti", "Betti numbers of M_0,1+p-bar");
    betti->add_option("--max-degree", cfg.max_degree, "truncate at this cohomological degree");
    auto* orbits = app.add_subcommand("orbits", "sigma-orbit decomposition of the monomial basis");
    auto* gc = app.add_subcommand("group-cohomology", "H^i(BZ/p; A) for a representation A");
    gc->add_option("--rep", cfg.rep, "trivial, regular or perm:<cycle notation>")->capture_default_str();
    gc->add_option("--max-i", cfg.max_i, "largest degree i (default 2p+2)");
    auto* e2 = app.add_subcommand("e2", "E2 page of the Serre spectral sequence");
    e2->add_option("--max-i", cfg.max_i, "number of columns minus one (default 2p+4)");
    auto* collapse = app.add_subcommand("collapse", "collapse certificate C1-C5");
    collapse->add_option("--window", cfg.window, "number of stable degree pairs checked")->capture_default_str();
    auto* inject = app.add_subcommand("inject", "injectivity certificate I1-I3");
    inject->add_option("--window", cfg.window, "number of stable degree pairs checked")->capture_default_str();
    app.add_subcommand("fixed-points", "the p-1 fixed configurations");
    app.add_subcommand("trees", "stable trees with p+1 marked points and the nodal fixed-point search");
    app.add_subcommand("moebius-degree", "degree in c of the (p-1)-fold composed Moebius map");
    auto* borel = app.add_subcommand("borel", "Borel cohomology of a finite complex with Z/p action");
    borel->add_option("--input", cfg.input, "complex JSON file")->required();
    borel->add_option("--max-degree", cfg.max_degree, "largest reported degree (default 8)");
    auto* all = app.add_subcommand("verify-all", "run every check in sequence");
    all->add_option("--window", cfg.window, "window for the certificates")->capture_default_str();
    all->add_flag("--timings", cfg.timings, "print per-stage timings to stderr");
    (void)orbits;

    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    return run(cfg, out, err);
}

} // namespace dmeq
