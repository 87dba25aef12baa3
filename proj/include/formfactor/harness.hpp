// formfactor/harness.hpp
//
// Consistency checks for the form factor routines: the relative deviation
// metric, symmetry and specialization suites, method-switch continuity
// scans and threshold tuning.
#pragma once

#include "formfactor/polygon_ff.hpp"
#include "formfactor/polyhedron_ff.hpp"
#include "formfactor/shapes.hpp"

#include <functional>
#include <string>
#include <vector>

namespace ff::harness {

struct DeltaReport {
    double delta = 0;
    ComplexVec3 argmax_q = ComplexVec3::Zero();
    std::size_t samples = 0;
    std::size_t excluded = 0; // pairs with F1 + F2 = 0
};

/// max |F1 - F2| / (|F1 + F2| / 2) over pairs. qs, if given, labels the
/// pairs for argmax_q. Throws AllPairsDegenerate if every pair is excluded.
[[nodiscard]] DeltaReport delta(const std::vector<complex>& f1, const std::vector<complex>& f2,
                                const std::vector<ComplexVec3>& qs = {});

/// Combine reports, keeping the worst.
void merge(DeltaReport& into, const DeltaReport& other);

/// Seven unit directions: two coordinate axes, two slightly off them, a
/// body diagonal and two without any symmetry.
[[nodiscard]] std::vector<RealVec3> default_directions();

/// Log-spaced magnitudes over [qmin_a, qmax_a] / a times the directions,
/// each once real and once with an imaginary part of relative size
/// imag_fraction in a different direction.
[[nodiscard]] std::vector<ComplexVec3> q_set(double a, const std::vector<RealVec3>& directions, int magnitudes = 61,
                                             double qmin_a = 1e-6, double qmax_a = 1e2, double imag_fraction = 0.05);
[[nodiscard]] std::vector<ComplexVec3> default_q_set(double a);

using Evaluator = std::function<complex(const ComplexVec3&)>;

/// delta[F(q), F(Rq)]. Throws NotASymmetry unless R maps the vertex set
/// onto itself within 1e-12 a.
[[nodiscard]] DeltaReport symmetry_suite(const PolyhedronMesh& mesh, const Eigen::Matrix3d& r,
                                         const std::vector<ComplexVec3>& qs, const EvalConfig& cfg = {});
[[nodiscard]] DeltaReport symmetry_suite(const VertexChain& chain, const Eigen::Matrix3d& r,
                                         const std::vector<ComplexVec3>& qs, const EvalConfig& cfg = {});

[[nodiscard]] DeltaReport specialization_suite(const Evaluator& f1, const Evaluator& f2,
                                               const std::vector<ComplexVec3>& qs);

struct NamedOp {
    std::string name;
    Eigen::Matrix3d matrix;
};

/// Point-group elements of a suite shape used by the symmetry suite.
[[nodiscard]] std::vector<NamedOp> symmetry_ops(const shapes::ShapeSpec& spec, const PolyhedronMesh& mesh);

struct SymmetryCase {
    std::string shape;
    std::string op;
    DeltaReport report;
};
[[nodiscard]] std::vector<SymmetryCase> run_symmetry_suite(const std::vector<shapes::ShapeSpec>& suite,
                                                           const EvalConfig& cfg = {});

struct SpecializationCase {
    std::string name;
    DeltaReport report;
};
/// Pairs of differently constructed but coincident figures.
[[nodiscard]] std::vector<SpecializationCase> run_specialization_suite(const EvalConfig& cfg = {});

using TracedEvaluator = std::function<EvalResult(const ComplexVec3&, MethodTrace*)>;

struct Switch {
    double q = 0; // |q| at the switch
    MethodTrace below;
    MethodTrace above;
    double delta_cont = 0;
};

inline constexpr double kEta = 8e-16;

/// Walk q = s * dir for s on a log grid over [smin, smax]; every change of
/// method (term counts ignored) between grid points is located by
/// bisection, and delta_cont = delta[F(q*(1 - eta)), F(q*(1 + eta))].
[[nodiscard]] std::vector<Switch> continuity_scan(const TracedEvaluator& eval, const ComplexVec3& dir, double smin,
                                                  double smax, int points = 200, double eta = kEta);

[[nodiscard]] TracedEvaluator traced(const Polyhedron& poly, const EvalConfig& cfg);
[[nodiscard]] TracedEvaluator traced(const Polygon& polygon, const EvalConfig& cfg);

struct ContinuitySummary {
    double worst = 0;
    std::string worst_shape;
    Switch worst_switch;
    std::size_t switches = 0;
    bool not_converged = false;
};

/// Continuity scans over the suite shapes, the default directions (real
/// and complex), over a|q| in [1e-5, 10].
[[nodiscard]] ContinuitySummary run_continuity_suite(const std::vector<shapes::ShapeSpec>& suite,
                                                     const EvalConfig& cfg, int points = 120);

struct TuneResult {
    EvalConfig config;
    double worst_delta_cont = 0;
};

/// Grid search over (c, c_par, C) minimizing the worst continuity delta on
/// the suite. Configurations whose series ever fail to converge are skipped.
[[nodiscard]] TuneResult tune_thresholds(const std::vector<shapes::ShapeSpec>& suite,
                                         const std::vector<EvalConfig>& grid, int points = 60);

/// Cartesian product of the values over the three thresholds, based on base.
[[nodiscard]] std::vector<EvalConfig> threshold_grid(const std::vector<double>& values, const EvalConfig& base = {});

/// Report text in the shape-file style JSON dialect.
[[nodiscard]] std::string report_json(const std::vector<SymmetryCase>& symmetry,
                                      const std::vector<SpecializationCase>& specialization,
                                      const ContinuitySummary* continuity);

} // namespace ff::harness
