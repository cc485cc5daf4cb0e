#include "collapse/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "collapse/constants.hpp"
#include "json.hpp"

namespace collapse {

using nlohmann::json;

ExperimentRecord::ExperimentRecord(std::string name_, Kind kind_, RigidBodyGeometry geom,
                                   double separation_, double duration_, double observable_limit_)
    : name(std::move(name_)), kind(kind_), geometry(geom), separation(separation_),
      duration(duration_), observable_limit(observable_limit_) {
    if (!(duration > 0.0)) throw std::invalid_argument("ExperimentRecord: duration must be > 0");
    if (kind == Kind::interferometric) {
        if (!(separation > 0.0))
            throw std::invalid_argument("ExperimentRecord: interferometric record needs separation > 0");
        if (!(observable_limit > 0.0 && observable_limit <= 1.0))
            throw std::invalid_argument("ExperimentRecord: contrast must be in (0, 1]");
    } else {
        if (!(observable_limit > 0.0))
            throw std::invalid_argument("ExperimentRecord: heating record needs max power > 0");
    }
}

ModelVariant ModelVariant::dissipative(double t_csl) {
    if (!(t_csl > 0.0)) throw std::invalid_argument("ModelVariant: t_csl must be > 0");
    ModelVariant v;
    v.kind = Kind::dissipative;
    v.t_csl = t_csl;
    return v;
}

ModelVariant ModelVariant::colored(double omega_c) {
    if (!(omega_c > 0.0)) throw std::invalid_argument("ModelVariant: omega_c must be > 0");
    ModelVariant v;
    v.kind = Kind::colored;
    v.omega_c = omega_c;
    return v;
}

double noise_power_fraction(double duration, double omega_c) {
    if (!(duration > 0.0) || !(omega_c > 0.0))
        throw std::invalid_argument("noise_power_fraction: duration and omega_c must be > 0");
    const double x = omega_c * duration;
    if (x < 1e-6) return 0.5 * x - x * x / 6.0;  // series, avoids cancellation
    return 1.0 - (1.0 - std::exp(-x)) / x;
}

std::vector<double> make_rc_grid(double rc_min, double rc_max, int n_points) {
    if (!(rc_min > 0.0) || !(rc_max > rc_min))
        throw std::invalid_argument("make_rc_grid: need 0 < rc_min < rc_max");
    if (n_points < 2) throw std::invalid_argument("make_rc_grid: need at least 2 points");
    std::vector<double> grid(n_points);
    const double step = std::log(rc_max / rc_min) / (n_points - 1);
    for (int i = 0; i < n_points; ++i) grid[i] = rc_min * std::exp(i * step);
    return grid;
}

namespace {

double colored_eta(const ModelVariant& v, double duration) {
    return v.kind == ModelVariant::Kind::colored ? noise_power_fraction(duration, v.omega_c) : 1.0;
}

/// (1+k)^5 heating weakening of the dissipative variant, k at the nucleon mass.
double dissipative_heating_factor(const ModelVariant& v, double r_c) {
    if (v.kind != ModelVariant::Kind::dissipative) return 1.0;
    const double h = constants::hbar;
    const double k =
        h * h / (8.0 * constants::nucleon_mass * constants::k_boltzmann * r_c * r_c * v.t_csl);
    const double one_k = 1.0 + k;
    return one_k * one_k * one_k * one_k * one_k;
}

double separation_factor(double d, double r_c) {
    return 1.0 - std::exp(-d * d / (4.0 * r_c * r_c));
}

}  // namespace

BoundCurve interferometric_bound(const ExperimentRecord& rec, const std::vector<double>& rc_grid,
                                 const ModelVariant& variant) {
    if (rec.kind != ExperimentRecord::Kind::interferometric)
        throw std::invalid_argument("interferometric_bound: record kind mismatch");

    const double log_contrast = -std::log(rec.observable_limit);
    const double eta = colored_eta(variant, rec.duration);

    BoundCurve curve{rc_grid, {}, BoundCurve::Sense::upper, rec.name};
    curve.lambda.reserve(rc_grid.size());
    for (double rc : rc_grid) {
        const double amp = csl_amplification(rec.geometry, CollapseParams(1.0, rc));
        const double denom = amp * separation_factor(rec.separation, rc) * rec.duration * eta;
        curve.lambda.push_back(log_contrast / denom);  // inf when denom or contrast deg.
    }
    return curve;
}

BoundCurve heating_bound(const ExperimentRecord& rec, const std::vector<double>& rc_grid,
                         const ModelVariant& variant) {
    if (rec.kind != ExperimentRecord::Kind::heating)
        throw std::invalid_argument("heating_bound: record kind mismatch");

    // Per-constituent heating rate summed over nucleons: P = 3 M lambda hbar^2 / (4 m0^2 r_c^2)
    // with M the total mass, inverted for lambda at the record's power limit.
    const double total_mass = rec.geometry.n_nucleons * constants::nucleon_mass;
    const double h2 = constants::hbar * constants::hbar;
    const double m0 = constants::nucleon_mass;
    const double eta = colored_eta(variant, rec.duration);

    BoundCurve curve{rc_grid, {}, BoundCurve::Sense::upper, rec.name};
    curve.lambda.reserve(rc_grid.size());
    for (double rc : rc_grid) {
        double lam = rec.observable_limit * 4.0 * m0 * m0 * rc * rc / (3.0 * total_mass * h2);
        lam *= dissipative_heating_factor(variant, rc);
        lam /= eta;
        curve.lambda.push_back(lam);
    }
    return curve;
}

RigidBodyGeometry graphene_disk_geometry() {
    const double radius = 1e-5;  // m
    const double area = std::numbers::pi * radius * radius;
    const double n = area * constants::graphene_areal_density / constants::nucleon_mass;
    // 2D atom spacing for carbon-12, sqrt(area / n_atoms) ~ 1.62e-10 m.
    const double d_ip = std::sqrt(area / (n / 12.0));
    return RigidBodyGeometry(n, 2.0 * radius, d_ip);
}

BoundCurve macroscopicity_lower_bound(const std::vector<double>& rc_grid,
                                      const ModelVariant& variant) {
    const RigidBodyGeometry geom = graphene_disk_geometry();
    const double collapse_time = 1e-2;  // s
    const double d_g = geom.size;       // disk diameter as superposition separation
    const double eta = colored_eta(variant, collapse_time);

    BoundCurve curve{rc_grid, {}, BoundCurve::Sense::lower, "graphene-macroscopicity"};
    curve.lambda.reserve(rc_grid.size());
    for (double rc : rc_grid) {
        const double amp = csl_amplification(geom, CollapseParams(1.0, rc));
        curve.lambda.push_back(1.0 / (amp * separation_factor(d_g, rc) * collapse_time * eta));
    }
    return curve;
}

double curve_lambda_at(const BoundCurve& curve, double r_c) {
    const auto& xs = curve.r_c;
    const auto& ys = curve.lambda;
    if (xs.size() < 2) throw std::invalid_argument("curve_lambda_at: need at least 2 samples");

    std::size_t hi = 1;
    while (hi < xs.size() - 1 && xs[hi] < r_c) ++hi;
    const std::size_t lo = hi - 1;
    const double t = (std::log(r_c) - std::log(xs[lo])) / (std::log(xs[hi]) - std::log(xs[lo]));
    // Degenerate samples (0 or inf, from contrast = 1 or vanishing separation)
    // cannot be log-interpolated; the nearer sample decides.
    if (!(std::isfinite(ys[lo]) && std::isfinite(ys[hi]) && ys[lo] > 0.0 && ys[hi] > 0.0))
        return t < 0.5 ? ys[lo] : ys[hi];
    return std::exp(std::log(ys[lo]) + t * (std::log(ys[hi]) - std::log(ys[lo])));
}

std::string classify_point(const CollapseParams& point, const BoundCurve& curve) {
    const double bound = curve_lambda_at(curve, point.r_c);
    const bool excluded = curve.sense == BoundCurve::Sense::upper ? point.lambda > bound
                                                                  : point.lambda < bound;
    return excluded ? "excluded" : "allowed";
}

namespace {

const char* kKnownFields[] = {"name",         "kind",       "n_nucleons",
                              "mass_kg",      "size_m",     "interparticle_distance_m",
                              "separation_m", "duration_s", "contrast",
                              "max_power_w"};

double require_number(const json& rec, const std::string& where, const std::string& field) {
    if (!rec.contains(field))
        throw std::runtime_error(where + ": missing required field '" + field + "'");
    if (!rec[field].is_number())
        throw std::runtime_error(where + ": field '" + field + "' must be a number");
    return rec[field].get<double>();
}

ExperimentRecord parse_record(const json& rec, const std::string& where) {
    if (!rec.is_object()) throw std::runtime_error(where + ": record must be an object");

    for (const auto& item : rec.items()) {
        bool known = false;
        for (const char* f : kKnownFields) known = known || item.key() == f;
        if (!known) throw std::runtime_error(where + ": unknown field '" + item.key() + "'");
    }

    if (!rec.contains("name") || !rec["name"].is_string())
        throw std::runtime_error(where + ": missing or non-string field 'name'");
    const std::string name = rec["name"].get<std::string>();

    if (!rec.contains("kind") || !rec["kind"].is_string())
        throw std::runtime_error(where + ": missing or non-string field 'kind'");
    const std::string kind_s = rec["kind"].get<std::string>();
    ExperimentRecord::Kind kind;
    if (kind_s == "interferometric") kind = ExperimentRecord::Kind::interferometric;
    else if (kind_s == "heating") kind = ExperimentRecord::Kind::heating;
    else throw std::runtime_error(where + ": kind must be 'interferometric' or 'heating'");

    const bool has_n = rec.contains("n_nucleons");
    const bool has_m = rec.contains("mass_kg");
    if (has_n == has_m)
        throw std::runtime_error(where + ": provide exactly one of 'n_nucleons' or 'mass_kg'");
    const double n_nucleons = has_n ? require_number(rec, where, "n_nucleons")
                                    : require_number(rec, where, "mass_kg") / constants::nucleon_mass;
    if (!(n_nucleons >= 1.0))
        throw std::runtime_error(where + ": system must contain at least one nucleon");

    const double size = require_number(rec, where, "size_m");
    const double d_ip = require_number(rec, where, "interparticle_distance_m");
    const double duration = require_number(rec, where, "duration_s");
    if (!(size > 0.0) || !(d_ip > 0.0))
        throw std::runtime_error(where + ": geometry lengths must be > 0");
    if (!(duration > 0.0)) throw std::runtime_error(where + ": duration_s must be > 0");

    double separation = 0.0;
    double limit;
    if (kind == ExperimentRecord::Kind::interferometric) {
        separation = require_number(rec, where, "separation_m");
        if (!(separation > 0.0)) throw std::runtime_error(where + ": separation_m must be > 0");
        if (rec.contains("max_power_w"))
            throw std::runtime_error(where + ": 'max_power_w' is not valid for kind=interferometric");
        limit = require_number(rec, where, "contrast");
        if (!(limit > 0.0 && limit <= 1.0))
            throw std::runtime_error(where + ": contrast must be in (0, 1]");
    } else {
        if (rec.contains("separation_m") || rec.contains("contrast"))
            throw std::runtime_error(where + ": interferometric fields are not valid for kind=heating");
        limit = require_number(rec, where, "max_power_w");
        if (!(limit > 0.0)) throw std::runtime_error(where + ": max_power_w must be > 0");
    }

    return ExperimentRecord(name, kind, RigidBodyGeometry(n_nucleons, size, d_ip), separation,
                            duration, limit);
}

}  // namespace

std::vector<ExperimentRecord> parse_experiments(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("experiments: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw std::runtime_error("experiments: top level must be an object");
    if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer())
        throw std::runtime_error("experiments: missing integer 'schema_version'");
    if (doc["schema_version"].get<int>() != 1)
        throw std::runtime_error("experiments: unsupported schema_version (expected 1)");
    for (const auto& item : doc.items())
        if (item.key() != "schema_version" && item.key() != "experiments")
            throw std::runtime_error("experiments: unknown top-level field '" + item.key() + "'");
    if (!doc.contains("experiments") || !doc["experiments"].is_array())
        throw std::runtime_error("experiments: missing array 'experiments'");

    std::vector<ExperimentRecord> records;
    int i = 0;
    for (const auto& rec : doc["experiments"]) {
        records.push_back(parse_record(rec, "experiments[" + std::to_string(i) + "]"));
        ++i;
    }
    return records;
}

std::vector<ExperimentRecord> ingest_experiments(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("experiments: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_experiments(ss.str());
}

std::string emit_experiments(const std::vector<ExperimentRecord>& records) {
    json doc;
    doc["schema_version"] = 1;
    doc["experiments"] = json::array();
    for (const auto& r : records) {
        json j;
        j["name"] = r.name;
        j["kind"] = r.kind == ExperimentRecord::Kind::interferometric ? "interferometric" : "heating";
        j["n_nucleons"] = r.geometry.n_nucleons;
        j["size_m"] = r.geometry.size;
        j["interparticle_distance_m"] = r.geometry.interparticle_distance;
        j["duration_s"] = r.duration;
        if (r.kind == ExperimentRecord::Kind::interferometric) {
            j["separation_m"] = r.separation;
            j["contrast"] = r.observable_limit;
        } else {
            j["max_power_w"] = r.observable_limit;
        }
        doc["experiments"].push_back(j);
    }
    return doc.dump(2) + "\n";
}

ExclusionReport build_report(const std::vector<ExperimentRecord>& records,
                             const std::vector<double>& rc_grid, const ModelVariant& variant) {
    if (records.empty()) throw std::invalid_argument("build_report: no experiment records");

    ExclusionReport report;
    switch (variant.kind) {
        case ModelVariant::Kind::white: report.variant = "white"; break;
        case ModelVariant::Kind::dissipative: report.variant = "dissipative"; break;
        case ModelVariant::Kind::colored: report.variant = "colored"; break;
    }

    for (const auto& rec : records)
        report.curves.push_back(rec.kind == ExperimentRecord::Kind::interferometric
                                    ? interferometric_bound(rec, rc_grid, variant)
                                    : heating_bound(rec, rc_grid, variant));
    report.curves.push_back(macroscopicity_lower_bound(rc_grid, variant));

    const CanonicalPoints pts = canonical_points();
    const std::pair<std::string, const CollapseParams*> named[] = {
        {"grw", &pts.grw}, {"adler_7", &pts.adler_7}, {"adler_6", &pts.adler_6}};
    for (const auto& [name, p] : named) {
        PointVerdict v{name, p->lambda, p->r_c, {}};
        for (const auto& curve : report.curves)
            v.per_curve.emplace_back(curve.source, classify_point(*p, curve));
        report.verdicts.push_back(std::move(v));
    }
    return report;
}

void write_curves_csv(const ExclusionReport& report, std::ostream& os) {
    os << "r_c_m,lambda_per_s,sense,source\n";
    char buf[64];
    for (const auto& curve : report.curves) {
        const char* sense = curve.sense == BoundCurve::Sense::upper ? "upper" : "lower";
        for (std::size_t i = 0; i < curve.r_c.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.8e,%.8e,", curve.r_c[i], curve.lambda[i]);
            os << buf << sense << ',' << curve.source << '\n';
        }
    }
}

std::string report_json(const ExclusionReport& report) {
    json doc;
    doc["schema_version"] = 1;
    doc["variant"] = report.variant;
    doc["curves"] = json::array();
    for (const auto& c : report.curves) {
        json j;
        j["source"] = c.source;
        j["sense"] = c.sense == BoundCurve::Sense::upper ? "upper" : "lower";
        j["r_c_m"] = c.r_c;
        j["lambda_per_s"] = c.lambda;
        doc["curves"].push_back(j);
    }
    doc["verdicts"] = json::array();
    for (const auto& v : report.verdicts) {
        json j;
        j["point"] = v.point_name;
        j["lambda_per_s"] = v.lambda;
        j["r_c_m"] = v.r_c;
        j["per_curve"] = json::array();
        for (const auto& [source, verdict] : v.per_curve)
            j["per_curve"].push_back({{"source", source}, {"verdict", verdict}});
        doc["verdicts"].push_back(j);
    }
    return doc.dump(2) + "\n";
}

}  // namespace collapse
