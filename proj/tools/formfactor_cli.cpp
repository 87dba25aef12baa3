// Command-line front end for the form factor library.

#include "formfactor/harness.hpp"
#include "formfactor/oracle.hpp"
#include "formfactor/polyhedron_ff.hpp"
#include "formfactor/shape_io.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace ff;

std::string fmt(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".eni") == std::string::npos)
        s += ".0";
    return s;
}

std::string fmt(complex z)
{
    const double im = z.imag();
    return fmt(z.real()) + (std::signbit(im) ? " - " : " + ") + fmt(std::abs(im)) + "i";
}

std::vector<double> parse_reals(const std::string& text, const std::string& flag)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double v = 0;
        const auto* first = item.data();
        const auto* last = item.data() + item.size();
        while (first < last && *first == ' ')
            ++first;
        if (first < last && *first == '+')
            ++first;
        const auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc() || res.ptr != last)
            throw CLI::ValidationError(flag, "expected comma-separated reals, got '" + text + "'");
        out.push_back(v);
    }
    return out;
}

RealVec3 triple(const std::vector<double>& v, std::size_t offset = 0)
{
    return RealVec3(v[offset], v[offset + 1], v[offset + 2]);
}

ComplexVec3 wavevector(const std::string& re, const std::string& im)
{
    const auto r = parse_reals(re, "--q");
    if (r.size() != 3)
        throw CLI::ValidationError("--q", "needs 3 components");
    RealVec3 i = RealVec3::Zero();
    if (!im.empty()) {
        const auto v = parse_reals(im, "--qi");
        if (v.size() != 3)
            throw CLI::ValidationError("--qi", "needs 3 components");
        i = triple(v);
    }
    ComplexVec3 q;
    for (int k = 0; k < 3; ++k)
        q(k) = complex(r[static_cast<std::size_t>(k)], i(k));
    return q;
}

/// A loaded shape file: either a polygon or a polyhedron.
struct Shape {
    shapes::Figure figure;
    std::optional<Polygon> polygon;
    std::optional<Polyhedron> polyhedron;

    explicit Shape(const std::string& path) : figure(read_shape_file(path))
    {
        if (const auto* c = std::get_if<VertexChain>(&figure))
            polygon.emplace(*c);
        else
            polyhedron.emplace(std::get<PolyhedronMesh>(figure));
    }

    EvalResult eval(const ComplexVec3& q, const EvalConfig& cfg) const
    {
        return polygon ? ff_polygon(q, *polygon, cfg) : ff_polyhedron(q, *polyhedron, cfg);
    }

    double measure() const { return polygon ? polygon->area() : polyhedron->volume(); }
    double radius() const { return polygon ? polygon->radius() : polyhedron->radius(); }
};

struct Options {
    EvalConfig cfg;
    std::string shape;
    std::string q, qi;
    std::string qdir;
    double qmin = 1e-6, qmax = 1e2;
    int points = 100;
    bool log = false;
    double tol = 1e-10;
    long mc = 0;
    std::uint64_t seed = 1;
    std::string report;
    std::string output;
    std::string suite;
    std::string kind;
    std::map<std::string, double> params;
};

void add_config_flags(CLI::App* app, Options& o)
{
    app->add_option("--threshold-c", o.cfg.threshold_q, "full-q polygon series below a|q| < c");
    app->add_option("--threshold-cpar", o.cfg.threshold_q_par, "in-plane polygon series below a|q_par| < c_par");
    app->add_option("--threshold-C", o.cfg.threshold_polyhedron, "polyhedron series below a|q| < C");
    app->add_option("--max-order", o.cfg.max_order, "maximum series order");
}

int cmd_ff(const Options& o)
{
    const Shape shape(o.shape);
    const auto r = shape.eval(wavevector(o.q, o.qi), o.cfg);
    std::cout << fmt(r.value) << ", method=" << to_string(r.method) << ", terms=" << r.terms_used << "\n";
    return 0;
}

int cmd_sweep(const Options& o)
{
    const Shape shape(o.shape);
    const auto v = parse_reals(o.qdir, "--qdir");
    if (v.size() != 3 && v.size() != 6)
        throw CLI::ValidationError("--qdir", "needs 3 or 6 components");
    ComplexVec3 dir;
    for (int k = 0; k < 3; ++k)
        dir(k) = complex(v[static_cast<std::size_t>(k)], v.size() == 6 ? v[static_cast<std::size_t>(k) + 3] : 0.0);
    const double n = safe_norm(dir);
    if (n == 0)
        throw CLI::ValidationError("--qdir", "direction must be nonzero");
    dir /= n;
    if (o.points < 1)
        throw CLI::ValidationError("--points", "must be at least 1");
    if (o.log && !(o.qmin > 0 && o.qmax > 0))
        throw CLI::ValidationError("--qmin", "log grids need qmin, qmax > 0");

    std::cout << "q,re,im,abs,method,terms\n";
    for (int i = 0; i < o.points; ++i) {
        const double t = o.points == 1 ? 0.0 : static_cast<double>(i) / (o.points - 1);
        double s = o.log ? o.qmin * std::pow(o.qmax / o.qmin, t) : o.qmin + t * (o.qmax - o.qmin);
        if (i == o.points - 1 && o.points > 1)
            s = o.qmax;
        const auto r = shape.eval(s * dir, o.cfg);
        std::cout << fmt(s) << ',' << fmt(r.value.real()) << ',' << fmt(r.value.imag()) << ',' << fmt(std::abs(r.value))
                  << ',' << to_string(r.method) << ',' << r.terms_used << '\n';
    }
    return 0;
}

int cmd_validate(const Options& o)
{
    shapes::Figure fig;
    try {
        fig = read_shape_file(o.shape);
    } catch (const Error& e) {
        std::cerr << "invalid shape file: " << e.what() << "\n";
        return 1;
    }
    if (const auto* c = std::get_if<VertexChain>(&fig)) {
        const auto d = validate_polygon(*c);
        std::cout << "polygon vertices=" << c->size() << " area=" << fmt(d.area)
                  << " planarity_residual=" << fmt(d.planarity_residual) << "\n";
        for (std::size_t i = 0; i < d.violations.size(); ++i)
            std::cerr << "violation " << to_string(d.violations[i]) << ": " << d.messages[i] << "\n";
        std::cout << (d.ok ? "ok" : "invalid") << "\n";
        return d.ok ? 0 : 1;
    }
    const auto& mesh = std::get<PolyhedronMesh>(fig);
    const auto d = validate_mesh(mesh);
    std::cout << "polyhedron vertices=" << mesh.vertices.size() << " faces=" << mesh.faces.size()
              << " volume=" << fmt(d.volume) << " closure_residual=" << fmt(d.closure_residual) << "\n";
    for (const auto& v : d.violations)
        std::cerr << "violation: " << v << "\n";
    if (d.ok) {
        const Polyhedron p(mesh);
        std::cout << "inversion_center=" << (p.symmetry() ? "yes" : "no") << "\n";
    }
    std::cout << (d.ok ? "ok" : "invalid") << "\n";
    return d.ok ? 0 : 1;
}

int cmd_make(const Options& o)
{
    const auto kind = shapes::kind_from_string(o.kind);
    if (!kind)
        throw CLI::ValidationError("kind", "unknown shape kind '" + o.kind + "'");
    const shapes::ShapeSpec spec{*kind, o.params};
    const auto fig = shapes::make(spec);
    const std::string text = format_shape(fig, spec.label());
    if (o.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(o.output);
        if (!(out << text))
            throw Error(ErrorKind::ParseError, "cannot write " + o.output);
    }
    return 0;
}

int cmd_selftest(const Options& o)
{
    const bool all = o.suite == "all";
    const auto suite = shapes::default_suite();
    bool ok = true;
    std::vector<harness::SymmetryCase> sym;
    std::vector<harness::SpecializationCase> spec;
    std::optional<harness::ContinuitySummary> cont;

    if (all || o.suite == "symmetry") {
        sym = harness::run_symmetry_suite(suite, o.cfg);
        harness::DeltaReport worst;
        for (const auto& c : sym) {
            harness::merge(worst, c.report);
            std::cout << "symmetry " << c.shape << " [" << c.op << "] delta=" << fmt(c.report.delta) << "\n";
        }
        const bool pass = worst.delta <= 5e-10;
        ok = ok && pass;
        std::cout << "symmetry worst delta=" << fmt(worst.delta) << " bound=5e-10 " << (pass ? "PASS" : "FAIL") << "\n";
    }
    if (all || o.suite == "specialization") {
        spec = harness::run_specialization_suite(o.cfg);
        double worst = 0;
        for (const auto& c : spec) {
            worst = std::max(worst, c.report.delta);
            std::cout << "specialization " << c.name << " delta=" << fmt(c.report.delta) << "\n";
        }
        const bool pass = worst <= 3e-10;
        ok = ok && pass;
        std::cout << "specialization worst delta=" << fmt(worst) << " bound=3e-10 " << (pass ? "PASS" : "FAIL")
                  << "\n";
    }
    if (all || o.suite == "continuity") {
        cont = harness::run_continuity_suite(suite, o.cfg);
        const auto& s = *cont;
        const bool pass = s.worst <= 1e-9 && !s.not_converged;
        ok = ok && pass;
        std::cout << "continuity switches=" << s.switches << " worst delta_cont=" << fmt(s.worst) << " at |q|="
                  << fmt(s.worst_switch.q) << " (" << s.worst_shape << ", " << to_string(s.worst_switch.below.method)
                  << " -> " << to_string(s.worst_switch.above.method) << ") bound=1e-9 " << (pass ? "PASS" : "FAIL")
                  << "\n";
    }
    if (!o.report.empty()) {
        std::ofstream out(o.report);
        out << harness::report_json(sym, spec, cont ? &*cont : nullptr);
    }
    return ok ? 0 : 1;
}

int cmd_oracle(const Options& o)
{
    const Shape shape(o.shape);
    const ComplexVec3 q = wavevector(o.q, o.qi);
    const auto lib = shape.eval(q, o.cfg);
    oracle::OracleResult orc;
    if (shape.polygon) {
        orc = oracle::quad_polygon(q, std::get<VertexChain>(shape.figure), o.tol);
    } else if (o.mc > 0) {
        orc = oracle::mc_polyhedron(q, std::get<PolyhedronMesh>(shape.figure), o.mc, o.seed);
    } else {
        orc = oracle::quad_polyhedron(q, std::get<PolyhedronMesh>(shape.figure), o.tol);
    }
    const double den = std::max(std::abs(orc.value), 1e-300);
    std::cout << "library=" << fmt(lib.value) << " oracle=" << fmt(orc.value)
              << " rel_deviation=" << fmt(std::abs(lib.value - orc.value) / den) << " oracle_est_error="
              << fmt(orc.est_error) << " method=" << to_string(lib.method) << "\n";
    return 0;
}

int cmd_tune(const Options& o)
{
    const auto grid = harness::threshold_grid({1e-3, 1e-2, 1e-1}, o.cfg);
    const auto t = harness::tune_thresholds(shapes::default_suite(), grid, o.points);
    std::cout << "threshold-c=" << fmt(t.config.threshold_q) << " threshold-cpar=" << fmt(t.config.threshold_q_par)
              << " threshold-C=" << fmt(t.config.threshold_polyhedron)
              << " worst_delta_cont=" << fmt(t.worst_delta_cont) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Form factors of polygons and polyhedra at complex wavevectors"};
    app.require_subcommand(1);
    Options o;

    auto* ff_cmd = app.add_subcommand("ff", "evaluate the form factor at one wavevector");
    ff_cmd->add_option("--shape", o.shape, "shape file")->required();
    ff_cmd->add_option("--q", o.q, "real part of q, x,y,z")->required();
    ff_cmd->add_option("--qi", o.qi, "imaginary part of q, x,y,z");
    add_config_flags(ff_cmd, o);

    auto* sweep = app.add_subcommand("sweep", "CSV of the form factor along a ray in q");
    sweep->add_option("--shape", o.shape, "shape file")->required();
    sweep->add_option("--qdir", o.qdir, "direction, x,y,z or x,y,z,ix,iy,iz")->required();
    sweep->add_option("--qmin", o.qmin, "smallest |q|");
    sweep->add_option("--qmax", o.qmax, "largest |q|");
    sweep->add_option("--points", o.points, "number of grid points");
    sweep->add_flag("--log", o.log, "logarithmic grid");
    add_config_flags(sweep, o);

    auto* validate = app.add_subcommand("validate", "check a shape file");
    validate->add_option("--shape", o.shape, "shape file")->required();

    auto* make = app.add_subcommand("make", "write a shape file for a built-in shape");
    make->add_option("kind", o.kind, "shape kind")->required();
    for (const char* key : {"edge", "height", "alpha", "fold", "width", "lx", "ly", "lz"}) {
        make->add_option_function<double>(std::string("--") + key, [&o, key](double v) { o.params[key] = v; },
                                          std::string("shape parameter ") + key);
    }
    make->add_option("-o,--output", o.output, "output path (default stdout)");

    auto* selftest = app.add_subcommand("selftest", "run consistency suites");
    selftest->add_option("suite", o.suite, "symmetry, specialization, continuity or all")
        ->required()
        ->check(CLI::IsMember({"symmetry", "specialization", "continuity", "all"}));
    selftest->add_option("--report", o.report, "write a JSON report");
    add_config_flags(selftest, o);

    auto* orc = app.add_subcommand("oracle", "compare against brute-force integration");
    orc->add_option("--shape", o.shape, "shape file")->required();
    orc->add_option("--q", o.q, "real part of q, x,y,z")->required();
    orc->add_option("--qi", o.qi, "imaginary part of q, x,y,z");
    orc->add_option("--tol", o.tol, "quadrature tolerance");
    orc->add_option("--mc", o.mc, "use Monte Carlo with this many samples");
    orc->add_option("--seed", o.seed, "Monte Carlo seed");
    add_config_flags(orc, o);

    auto* tune = app.add_subcommand("tune", "grid search for the series thresholds");
    tune->add_option("--points", o.points, "grid points per continuity scan");

    CLI11_PARSE(app, argc, argv);

    try {
        o.cfg.validate();
        if (ff_cmd->parsed())
            return cmd_ff(o);
        if (sweep->parsed())
            return cmd_sweep(o);
        if (validate->parsed())
            return cmd_validate(o);
        if (make->parsed())
            return cmd_make(o);
        if (selftest->parsed())
            return cmd_selftest(o);
        if (orc->parsed())
            return cmd_oracle(o);
        if (tune->parsed()) {
            if (o.points == 100)
                o.points = 40;
            return cmd_tune(o);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
