#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "collapse/csl.hpp"
#include "collapse/params.hpp"

namespace collapse {

/// Experiment descriptor (SI units). Interferometric records carry the
/// superposition separation and the retained contrast ratio in (0, 1];
/// heating records carry the maximum collapse-attributable power in W.
struct ExperimentRecord {
    enum class Kind { interferometric, heating };

    std::string name;
    Kind kind;
    RigidBodyGeometry geometry;  // n_nucleons, size, interparticle distance
    double separation = 0.0;     // m, interferometric only
    double duration;             // s
    double observable_limit;     // contrast in (0,1] or max power > 0

    ExperimentRecord(std::string name_, Kind kind_, RigidBodyGeometry geom, double separation_,
                     double duration_, double observable_limit_);
};

/// lambda(r_c) samples over a strictly increasing log-spaced r_c grid.
/// sense = upper: lambda above the curve is excluded.
/// sense = lower: lambda below the curve fails the macroscopicity requirement.
struct BoundCurve {
    std::vector<double> r_c;
    std::vector<double> lambda;
    enum class Sense { upper, lower } sense;
    std::string source;
};

struct PointVerdict {
    std::string point_name;
    double lambda;
    double r_c;
    std::vector<std::pair<std::string, std::string>> per_curve;  // (source, allowed|excluded)
};

struct ExclusionReport {
    std::string variant;
    std::vector<BoundCurve> curves;
    std::vector<PointVerdict> verdicts;
};

/// Model variant the curves are computed under. The colored variant scales the
/// decoherence exponent by the noise-power fraction eta(T, omega_c); the
/// dissipative variant rescales heating bounds by (1+k)^5 with k evaluated at
/// the nucleon mass (initial-slope substitution with e0 = 0).
struct ModelVariant {
    enum class Kind { white, dissipative, colored };
    Kind kind = Kind::white;
    double t_csl = 1.0;     // K, dissipative
    double omega_c = 0.0;   // Hz (angular), colored

    static ModelVariant white() { return {}; }
    static ModelVariant dissipative(double t_csl);
    static ModelVariant colored(double omega_c);
};

/// Fraction of white-noise power delivered over a window T by the exponential
/// kernel: eta = 1 - (1 - e^{-omega_c T}) / (omega_c T); -> 1 as omega_c T -> inf.
double noise_power_fraction(double duration, double omega_c);

std::vector<double> make_rc_grid(double rc_min, double rc_max, int n_points);

BoundCurve interferometric_bound(const ExperimentRecord& rec, const std::vector<double>& rc_grid,
                                 const ModelVariant& variant = ModelVariant::white());
BoundCurve heating_bound(const ExperimentRecord& rec, const std::vector<double>& rc_grid,
                         const ModelVariant& variant = ModelVariant::white());

/// Theoretical lower bound: a single-layer graphene disk of radius 1e-5 m must
/// collapse within 1e-2 s. Uses the interpolated amplification law, so values
/// are indicative.
BoundCurve macroscopicity_lower_bound(const std::vector<double>& rc_grid,
                                      const ModelVariant& variant = ModelVariant::white());
RigidBodyGeometry graphene_disk_geometry();

/// Log-log interpolation of the curve at r_c (end segments extrapolate).
double curve_lambda_at(const BoundCurve& curve, double r_c);

/// "excluded" if the point violates the curve (above an upper bound / below
/// the lower bound), else "allowed".
std::string classify_point(const CollapseParams& point, const BoundCurve& curve);

/// Experiment file I/O (JSON, schema_version 1). Unknown fields and missing
/// kind-required fields are rejected with location-bearing diagnostics.
std::vector<ExperimentRecord> ingest_experiments(const std::string& path);
std::vector<ExperimentRecord> parse_experiments(const std::string& json_text);
std::string emit_experiments(const std::vector<ExperimentRecord>& records);

/// All record curves plus the graphene lower bound, with the canonical
/// parameter points classified against every curve.
ExclusionReport build_report(const std::vector<ExperimentRecord>& records,
                             const std::vector<double>& rc_grid, const ModelVariant& variant);

/// CSV: header "r_c_m,lambda_per_s,sense,source", scientific, 9 significant digits.
void write_curves_csv(const ExclusionReport& report, std::ostream& os);
std::string report_json(const ExclusionReport& report);

}  // namespace collapse
