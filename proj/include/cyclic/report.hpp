#pragma once

// JSON configuration parsing and report assembly shared by the C interface.

#include <optional>
#include <vector>

#include <json.hpp>

#include "cyclic/thomae.hpp"

namespace cyclic {

inline constexpr int kSchemaVersion = 1;

struct Deformation {
    int branch = 0;  // 0-based index into lambda
    cplx target;
    int steps = 10;
};

struct RunInput {
    CurveSpec spec;
    std::vector<cplx> points;  // sample x values for abel and kernels reports
    std::optional<Deformation> deformation;
};

/// Throws InvalidInput naming the offending key.
RunInput parse_config(const nlohmann::json& config);

/// Default sample points: three points on a circle around the centroid, clear of branch points.
std::vector<cplx> default_points(const CurveSpec& spec);

/// Configured deformation, or the last branch point moved 25% further from the centroid in 10 steps.
std::vector<std::vector<cplx>> deformation_chain(const RunInput& in);

nlohmann::json to_json(cplx z);
nlohmann::json to_json(const Eigen::MatrixXcd& M);
nlohmann::json to_json(const Eigen::VectorXcd& v);
nlohmann::json to_json(const Rational& q);
/// Entries of a characteristic vector as exact fractions with denominator 2N.
nlohmann::json characteristic_json(const Eigen::VectorXd& v, int N);

nlohmann::json enumerate_report(const CurveSpec& spec, bool all_congruent);
nlohmann::json periods_report(const RunInput& in, const AnalysisOptions& opt);
nlohmann::json abel_report(const RunInput& in, const AnalysisOptions& opt);
nlohmann::json theta_report(const RunInput& in, const AnalysisOptions& opt);
nlohmann::json kernels_report(const RunInput& in, const AnalysisOptions& opt);

struct VerifySettings {
    double tol = 1e-4;
    ExponentForm form = ExponentForm::Stated;
};

/// ThomaeReport for the given beta vectors (all admissible ones when empty).
nlohmann::json verify_report(const RunInput& in, const AnalysisOptions& opt, const VerifySettings& settings,
                             std::vector<std::vector<int>> betas, bool& all_pass);

}  // namespace cyclic
