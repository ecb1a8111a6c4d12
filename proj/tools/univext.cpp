// univext command-line front end.

#include "univext/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace univext;

namespace {

struct Globals {
    std::string json_out;
    long window = 3;
    unsigned seed = 7;
};

void emit(const Globals& g, json report)
{
    if (!report.contains("version")) report["version"] = kReportVersion;
    if (g.json_out.empty()) return;
    std::ofstream out(g.json_out);
    if (!out) throw std::runtime_error(g.json_out + ": cannot write report");
    out << report.dump(2) << '\n';
}

void print_check(const Check& c)
{
    std::cout << c.name << ": " << (c.pass() ? "pass" : "fail") << " (" << c.seconds << " s)\n";
    for (const auto& a : c.assertions)
        if (!a.pass) std::cout << "  first failing assertion: " << a.name << '\n';
}

int cmd_vform(const Globals& g, const std::string& source)
{
    LieAlgebra L = load_lie(source);
    UniversalForm U = universal_form(L);
    const std::size_t n = L.dim();
    std::cout << "algebra: " << (L.name().empty() ? source : L.name()) << " (dim " << n << ")\n";
    std::cout << "dim S^2 = " << U.sym().dim() << ", relation rank = " << U.relations().dim() << '\n';
    std::cout << "dim V = " << U.dim() << '\n';
    json table = json::array();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Vec k = U.kappa_basis(i, j);
            if (is_zero(k)) continue;
            std::cout << "  kappa(e" << i << ",e" << j << ") =";
            for (const auto& x : k) std::cout << ' ' << format_rat(x);
            std::cout << '\n';
            table.push_back({{"i", i}, {"j", j}, {"value", vec_to_json(k)}});
        }
    emit(g, {{"check", "vform"}, {"status", "pass"},
             {"dims", {{"g", n}, {"S2", U.sym().dim()}, {"relations", U.relations().dim()}, {"V", U.dim()}}},
             {"witness", {{"kappa", table}}}});
    return 0;
}

int cmd_h2(const Globals& g, const std::string& source, std::size_t w)
{
    LieAlgebra L = load_lie(source);
    CohomologySpace H = h2(L, w);
    std::cout << "dim Z2 = " << H.Z2().dim() << ", dim B2 = " << H.B2().dim() << '\n';
    std::cout << "H2 = " << H.dim() << '\n';
    json reps = json::array();
    for (std::size_t r = 0; r < H.dim(); ++r) reps.push_back(vec_to_json(H.representative(unit_vec(H.dim(), r)).coords()));
    emit(g, {{"check", "h2"}, {"status", "pass"},
             {"dims", {{"g", L.dim()}, {"W", w}, {"Z2", H.Z2().dim()}, {"B2", H.B2().dim()}, {"H2", H.dim()}}},
             {"witness", {{"representatives", reps}}}});
    return 0;
}

int cmd_maier(const Globals& g, const std::string& lie_source, const std::string& alg_source)
{
    LieAlgebra L = load_lie(lie_source);
    CommAlgebra A = load_comm(alg_source);
    MaierCocycle m = maier_cocycle(L, A);
    CohomologySpace H = h2(m.current);
    UniversalityReport r = verify_universal(m.current, m.omega);
    std::cout << "dim A(x)g = " << m.current.dim() << ", dim V = " << m.v_dim << ", dim Omega/dA = " << m.q_dim << '\n';
    std::cout << "H2 = " << H.dim() << '\n';
    std::cout << "universal: " << (r.universal() ? "yes" : "no") << '\n';
    const bool ok = r.universal() && H.dim() == m.v_dim * m.q_dim;
    emit(g, {{"check", "maier"}, {"status", ok ? "pass" : "fail"},
             {"dims", {{"current", m.current.dim()}, {"V", m.v_dim}, {"Omega/dA", m.q_dim}, {"H2", H.dim()}}},
             {"witness", {{"perfect", r.perfect}, {"bijective", r.bijective}}}});
    return ok ? 0 : 1;
}

int cmd_extend(const Globals& g, const std::string& alg_source, const std::string& lie_source)
{
    CommAlgebra A = load_comm(alg_source);
    LieAlgebra L = load_lie(lie_source);
    LieAlgebra C = current_algebra(A, L), S = semidirect(A, L);
    CohomologySpace HC = h2(C), HS = h2(S);
    NeutralChooser choose = A.unit() ? unit_chooser(A) : solving_chooser(A);
    std::size_t good = 0;
    json failures = json::array();
    for (std::size_t r = 0; r < HC.Z2().dim(); ++r) {
        Cochain2 w0 = Cochain2::from_coords(C.dim(), 1, HC.Z2().basis_vector(r));
        Cochain2 ext = extend_cocycle(A, L, w0, choose);
        if (ext.is_alternating() && is_cocycle(S, ext) && restriction_map(ext, A, L) == w0)
            ++good;
        else
            failures.push_back(r);
    }
    const bool bij = is_bijective(induced_h2_map(HS, HC, current_embedding(A, L)));
    std::cout << "dim Z2(A(x)g) = " << HC.Z2().dim() << ", extended correctly: " << good << '\n';
    std::cout << "H2(A(x)g) = " << HC.dim() << ", H2(semidirect) = " << HS.dim() << '\n';
    std::cout << "restriction bijective on H2: " << (bij ? "yes" : "no") << '\n';
    const bool ok = failures.empty() && bij;
    emit(g, {{"check", "extend"}, {"status", ok ? "pass" : "fail"},
             {"dims", {{"current", C.dim()}, {"semidirect", S.dim()}, {"Z2", HC.Z2().dim()}, {"H2", HC.dim()}}},
             {"witness", {{"failing_basis_cocycles", failures}}}});
    return ok ? 0 : 1;
}

int cmd_loop(const Globals& g, const std::string& source)
{
    VerifyOptions opt;
    opt.window = g.window;
    opt.seed = g.seed;
    Check c = check_loop(opt, load_lie(source));
    print_check(c);
    emit(g, c.to_json());
    return c.pass() ? 0 : 1;
}

int cmd_bundle(const Globals& g, const std::string& source)
{
    VerifyOptions opt;
    opt.seed = g.seed;
    std::vector<NamedBundle> bundles;
    if (source == "twisted-sl3")
        bundles.emplace_back(source, make_twisted_bundle(sl3(), 6, sl3_negative_transpose()));
    else if (source == "trivial-sl2")
        bundles.emplace_back(source, make_trivial_bundle(sl2(), 3));
    else {
        json j = read_json_file(source);
        try {
            bundles.emplace_back(source, bundle_from_json(j));
        } catch (const JsonError&) {
            throw;
        } catch (const std::exception& e) {
            throw JsonError(source + ": " + e.what());
        }
    }
    Check c = check_bundles(opt, bundles);
    print_check(c);
    emit(g, c.to_json());
    return c.pass() ? 0 : 1;
}

int cmd_verify(const Globals& g, const std::string& suite)
{
    VerifyOptions opt;
    opt.window = g.window;
    opt.seed = g.seed;
    SuiteResult r = run_suite(suite, opt);
    for (const auto& c : r.checks) print_check(c);
    emit(g, r.to_json());
    if (r.pass()) {
        std::cout << "suite " << suite << ": pass\n";
        return 0;
    }
    std::cout << "suite " << suite << ": FAIL at " << r.first_failure() << '\n';
    return 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Universal invariant forms, H2 and central extensions over Q"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--json", g.json_out, "write a JSON report");
    app.add_option("--window", g.window, "Laurent degree bound")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "seed for sampled inputs");

    std::string a1, a2, suite;
    std::size_t coeff = 1;
    int rc = 0;

    auto* vform = app.add_subcommand("vform", "universal invariant form of an algebra");
    vform->add_option("algebra", a1, "catalog name or JSON file")->required();
    vform->callback([&] { rc = cmd_vform(g, a1); });

    auto* h2c = app.add_subcommand("h2", "second cohomology with trivial coefficients");
    h2c->add_option("algebra", a1)->required();
    h2c->add_option("--coeff", coeff, "coefficient dimension")->check(CLI::PositiveNumber);
    h2c->callback([&] { rc = cmd_h2(g, a1, coeff); });

    auto* maier = app.add_subcommand("maier", "residue cocycle on a current algebra and its universality");
    maier->add_option("lie", a1)->required();
    maier->add_option("comm", a2, "points(n), trunc(n), zero(n), exterior_pair or JSON file")->required();
    maier->callback([&] { rc = cmd_maier(g, a1, a2); });

    auto* extend = app.add_subcommand("extend", "extend cocycles from A(x)g to the semidirect product");
    extend->add_option("comm", a1)->required();
    extend->add_option("lie", a2)->required();
    extend->callback([&] { rc = cmd_extend(g, a1, a2); });

    auto* loop = app.add_subcommand("loop", "connection, forms and residue cocycle on the loop algebra");
    loop->add_option("lie", a1)->default_val("sl2");
    loop->callback([&] { rc = cmd_loop(g, a1); });

    auto* bundle = app.add_subcommand("bundle", "glue invariant forms over a discrete bundle");
    bundle->add_option("fixture", a1, "twisted-sl3, trivial-sl2 or JSON file")->required();
    bundle->callback([&] { rc = cmd_bundle(g, a1); });

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite)->required()->check(CLI::IsMember(suite_names()));
    verify->callback([&] { rc = cmd_verify(g, suite); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return rc;
}
