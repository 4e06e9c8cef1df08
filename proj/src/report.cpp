#include "cyclic/report.hpp"

#include <cmath>
#include <string>

namespace cyclic {

using nlohmann::json;

namespace {

[[noreturn]] void bad_key(const std::string& key, const std::string& what) {
    throw InvalidInput("config key '" + key + "': " + what);
}

const json& require(const json& j, const std::string& key) {
    if (!j.contains(key)) bad_key(key, "missing");
    return j.at(key);
}

cplx parse_complex(const json& v, const std::string& key) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    bad_key(key, "expected a number or a [re, im] pair");
}

int parse_int(const json& v, const std::string& key) {
    if (!v.is_number_integer()) bad_key(key, "expected an integer");
    return v.get<int>();
}


json beta_of(const BetaVector& b) {
    return {{"beta", b.beta}, {"tau", b.tau}, {"order", b.order}};
}

double rel(cplx got, cplx want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

}  // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const Eigen::MatrixXcd& M) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < M.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back(to_json(M(r, c)));
        rows.push_back(row);
    }
    return rows;
}

json to_json(const Eigen::VectorXcd& v) {
    json out = json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(to_json(v(k)));
    return out;
}

json to_json(const Rational& q) { return to_string(q); }

json characteristic_json(const Eigen::VectorXd& v, int N) {
    json out = json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k)
        out.push_back(to_string(Rational(std::llround(v(k) * 2 * N), 2 * N)));
    return out;
}

RunInput parse_config(const json& j) {
    if (!j.is_object()) throw InvalidInput("config: expected a JSON object");
    if (j.contains("schema_version") && j["schema_version"] != kSchemaVersion)
        bad_key("schema_version", "unsupported version");
    RunInput in;
    in.spec.N = parse_int(require(j, "N"), "N");
    const json& R = require(j, "R");
    if (!R.is_array()) bad_key("R", "expected a list of integers");
    for (const auto& r : R) in.spec.R.push_back(parse_int(r, "R"));
    const json& lam = require(j, "lambda");
    if (!lam.is_array()) bad_key("lambda", "expected a list of numbers or [re, im] pairs");
    for (const auto& l : lam) in.spec.lambda.push_back(parse_complex(l, "lambda"));
    if (in.spec.lambda.size() != in.spec.R.size()) bad_key("lambda", "length differs from R");
    try {
        if (j.contains("base_x")) {
            in.spec.base_x = parse_complex(j["base_x"], "base_x");
        } else if (!in.spec.lambda.empty()) {
            double re = 0.0, im = in.spec.lambda.front().imag();
            for (auto l : in.spec.lambda) re += l.real() / in.spec.lambda.size(), im = std::min(im, l.imag());
            in.spec.base_x = {re, im - 0.5 * branch_scale(in.spec)};
        }
        validate_curve(in.spec);
    } catch (const InvalidInput& e) {
        throw InvalidInput(std::string("config: ") + e.what());
    }
    if (j.contains("points")) {
        if (!j["points"].is_array()) bad_key("points", "expected a list");
        for (const auto& p : j["points"]) in.points.push_back(parse_complex(p, "points"));
    } else {
        in.points = default_points(in.spec);
    }
    const double sep = min_branch_separation(in.spec);
    for (auto p : in.points)
        for (auto l : in.spec.lambda)
            if (std::abs(p - l) < 0.05 * sep) bad_key("points", "point too close to a branch point");
    if (j.contains("deformation")) {
        const json& d = j["deformation"];
        if (!d.is_object()) bad_key("deformation", "expected an object");
        Deformation def;
        def.branch = parse_int(require(d, "branch"), "deformation.branch");
        def.target = parse_complex(require(d, "target"), "deformation.target");
        if (d.contains("steps")) def.steps = parse_int(d["steps"], "deformation.steps");
        if (def.branch < 0 || def.branch >= in.spec.m()) bad_key("deformation.branch", "out of range");
        if (def.steps < 1) bad_key("deformation.steps", "must be at least 1");
        in.deformation = def;
    }
    return in;
}

std::vector<cplx> default_points(const CurveSpec& spec) {
    cplx c = 0.0;
    for (auto l : spec.lambda) c += l / double(spec.m());
    const double s = branch_scale(spec), sep = min_branch_separation(spec);
    std::vector<cplx> out;
    for (double arg : {0.4, 2.3, 4.1}) {
        cplx best = c + std::polar(0.6 * s, arg);
        // nudge outward until clear of the branch points
        for (double r = 0.6; r < 3.0; r += 0.05) {
            const cplx p = c + std::polar(r * s, arg);
            double d = 1e300;
            for (auto l : spec.lambda) d = std::min(d, std::abs(p - l));
            best = p;
            if (d > 0.3 * sep) break;
        }
        out.push_back(best);
    }
    return out;
}

std::vector<std::vector<cplx>> deformation_chain(const RunInput& in) {
    if (in.deformation) return linear_deformation(in.spec, in.deformation->branch, in.deformation->target, in.deformation->steps);
    cplx c = 0.0;
    for (auto l : in.spec.lambda) c += l / double(in.spec.m());
    const int i = in.spec.m() - 1;
    return linear_deformation(in.spec, i, in.spec.lambda[i] + 0.25 * (in.spec.lambda[i] - c), 10);
}

json enumerate_report(const CurveSpec& spec, bool all_congruent) {
    const auto ram = validate_curve(spec);
    json records = json::array();
    for (const auto& b : all_congruent ? enumerate_congruent(spec) : enumerate_admissible(spec)) records.push_back(beta_of(b));
    return {{"schema_version", kSchemaVersion}, {"command", "enumerate"}, {"genus", ram.g},
            {"selection", all_congruent ? "congruent" : "admissible"}, {"count", records.size()}, {"records", records}};
}

json periods_report(const RunInput& in, const AnalysisOptions& opt) {
    const Surface S(in.spec);
    const HomologyBasis H = build_basis(S, opt.seed);
    const PeriodData P = compute_periods(S, H, opt.quad);
    const Eigen::MatrixXcd& tau = P.tau;
    const double sym = (tau - tau.transpose()).cwiseAbs().maxCoeff() / tau.cwiseAbs().maxCoeff();
    const Eigen::MatrixXcd bil = P.A.transpose() * P.B - P.B.transpose() * P.A;
    const double bil_rel = bil.cwiseAbs().maxCoeff() / (P.A.cwiseAbs().maxCoeff() * P.B.cwiseAbs().maxCoeff());
    const Eigen::MatrixXd Y = tau.imag();
    const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(0.5 * (Y + Y.transpose())).eigenvalues().minCoeff();
    json diffs = json::array();
    for (const auto& d : S.basis()) diffs.push_back(json{{"l", d.l}, {"j", d.j}});
    return {{"schema_version", kSchemaVersion},
            {"command", "periods"},
            {"genus", S.genus()},
            {"quad_order", P.quad_order},
            {"differentials", diffs},
            {"intersection", H.intersection},
            {"A", to_json(P.A)},
            {"B", to_json(P.B)},
            {"tau", to_json(tau)},
            {"detC", to_json(P.detC)},
            {"checks",
             {{"tau_symmetry", sym},
              {"bilinear_relation", bil_rel},
              {"im_tau_min_eigenvalue", min_eig},
              {"quadrature_drift", quadrature_drift(S, H, opt.quad)}}}};
}

namespace {

json riemann_json(const CurveAnalysis& ca) {
    const int N = ca.surface.N();
    return {{"K", to_json(ca.riemann.K)},
            {"half_a", characteristic_json(ca.riemann.half_a, N)},
            {"half_b", characteristic_json(ca.riemann.half_b, N)},
            {"best_residual", ca.riemann.best_residual},
            {"second_residual", ca.riemann.second_residual},
            {"theta_scale", ca.theta_scale}};
}

}  // namespace

json abel_report(const RunInput& in, const AnalysisOptions& opt) {
    const CurveAnalysis ca(in.spec, opt);
    const Jacobian& J = *ca.jacobian;
    const int N = in.spec.N;
    json places = json::array();
    for (int i = 0; i < in.spec.m(); ++i)
        places.push_back({{"place", "branch"}, {"index", i}, {"u", to_json(J.abel(Place::branch_point(i)))}});
    for (int s = 0; s < N; ++s)
        places.push_back({{"place", "infinity"}, {"sheet", s}, {"u", to_json(J.abel(Place::infinity(s)))}});
    for (auto x : in.points)
        for (int s = 0; s < N; ++s)
            places.push_back({{"place", "regular"}, {"x", to_json(x)}, {"sheet", s},
                              {"u", to_json(J.abel(Place::regular(x, s)))}});
    json points = json::array();
    for (const auto& b : enumerate_admissible(in.spec)) {
        const JacobianPoint e = divisor_point(J, ca.riemann, b.beta);
        points.push_back({{"beta", b.beta},
                          {"e", to_json(e.z)},
                          {"a", characteristic_json(*e.char_a, N)},
                          {"b", characteristic_json(*e.char_b, N)},
                          {"rounding_residual", e.char_residual}});
    }
    return {{"schema_version", kSchemaVersion}, {"command", "abel"},         {"genus", ca.surface.genus()},
            {"riemann_constant", riemann_json(ca)},  {"places", places}, {"divisor_points", points}};
}

json theta_report(const RunInput& in, const AnalysisOptions& opt) {
    const CurveAnalysis ca(in.spec, opt);
    json rows = json::array();
    bool consistent = true;
    for (const auto& b : enumerate_congruent(in.spec)) {
        const auto r = verify_nonvanishing(ca, b.beta);
        consistent = consistent && r.pass;
        rows.push_back({{"beta", b.beta}, {"order", r.order}, {"theta_abs", r.theta_abs}, {"ratio", r.ratio},
                        {"pass", r.pass}});
    }
    return {{"schema_version", kSchemaVersion},
            {"command", "theta"},
            {"genus", ca.surface.genus()},
            {"tau", to_json(ca.periods.tau)},
            {"theta_scale", ca.theta_scale},
            {"riemann_constant", riemann_json(ca)},
            {"vanishing_consistent", consistent},
            {"theta_constants", rows}};
}

json kernels_report(const RunInput& in, const AnalysisOptions& opt) {
    const Surface S(in.spec);
    const HomologyBasis H = build_basis(S, opt.seed);
    const PeriodData P = compute_periods(S, H, opt.quad);
    json szego = json::array();
    for (const auto& b : enumerate_admissible(in.spec))
        for (auto x : in.points) {
            const auto c = szego_expansion(S, b.beta, x, 2);
            const cplx qf = szego_quadratic_q_formula(S, b.beta, x), ex = szego_quadratic_exact(S, b.beta, x);
            szego.push_back({{"beta", b.beta},
                             {"x", to_json(x)},
                             {"coefficients", {to_json(c[0]), to_json(c[1]), to_json(c[2])}},
                             {"q_formula", to_json(qf)},
                             {"exact", to_json(ex)},
                             {"q_formula_residual", rel(c[2], qf)},
                             {"exact_residual", rel(c[2], ex)}});
        }
    const CanonicalBidifferential W(S, H, P, opt.quad);
    json omega = json::array();
    for (std::size_t u = 0; u < in.points.size(); ++u) {
        const auto y = S.point(in.points[u], 0);
        const auto x = S.point(in.points[(u + 1) % in.points.size()], 1 % S.N());
        const cplx wxy = W.omega(x, y), wyx = W.omega(y, x);
        omega.push_back({{"y", to_json(in.points[u])},
                         {"a_period_residual", W.a_period_residual(y)},
                         {"symmetry_defect", std::abs(wxy - wyx) / std::abs(wxy)}});
    }
    json gz = json::array(), det = json::array();
    for (int i = 0; i < in.spec.m(); ++i) {
        const cplx dlog = dlog_detC_jacobi(S, H, P, i, opt.quad);
        const cplx got = W.gz_coefficient(i), want = gz_expected(S, i, dlog);
        gz.push_back({{"branch", i}, {"coefficient", to_json(got)}, {"expected", to_json(want)}, {"residual", rel(got, want)}});
        const CramerCheck cc = cramer_decomposition_check(S, H, P, i, opt.quad);
        json per_l = json::array();
        for (int l = 1; l < S.N(); ++l)
            per_l.push_back({{"l", l}, {"detB_l", to_json(cc.detB_l[l])}, {"sum_detC", to_json(cc.sumC_l[l])},
                             {"residual", rel(cc.detB_l[l], cc.sumC_l[l])}});
        det.push_back({{"branch", i}, {"detB", to_json(cc.detB)}, {"detC", to_json(cc.detC)},
                       {"residual", rel(cc.detB, cc.detC)}, {"columns", per_l}});
    }
    return {{"schema_version", kSchemaVersion},
            {"command", "kernels"},
            {"genus", S.genus()},
            {"szego", szego},
            {"bidifferential", omega},
            {"gz_coefficients", gz},
            {"determinants", det}};
}

json verify_report(const RunInput& in, const AnalysisOptions& opt, const VerifySettings& settings,
                   std::vector<std::vector<int>> betas, bool& all_pass) {
    const CurveSpec& spec = in.spec;
    const int N = spec.N, m = spec.m();
    if (betas.empty())
        for (const auto& b : enumerate_admissible(spec)) betas.push_back(b.beta);
    for (const auto& b : betas) {
        if (static_cast<int>(b.size()) != m) throw InvalidInput("beta: expected " + std::to_string(m) + " entries");
        if (tau_profile(spec, b).order != 0) throw InvalidInput("beta: not admissible");
    }
    const CurveAnalysis ca(spec, opt);
    const auto chain = deformation_chain(in);
    const bool stated = settings.form == ExponentForm::Stated;
    all_pass = true;
    json records = json::array();
    for (const auto& beta : betas) {
        const Characteristic ch = characteristic_of(ca, beta);
        const auto nv = verify_nonvanishing(ca, beta);
        const double grad = verify_first_derivatives(ca, beta);
        bool pass = nv.pass && grad < 1e-6;
        json ids = json::array();
        for (int i = 0; i < m; ++i) {
            const auto d = verify_derivative_identity(ca, beta, i);
            const bool ok = (stated ? d.residual_stated : d.residual_corrected) < settings.tol;
            pass = pass && ok;
            ids.push_back({{"i", i},
                           {"lhs", to_json(d.lhs_numeric)},
                           {"lhs_heat", to_json(d.lhs_heat)},
                           {"rhs_stated", to_json(d.rhs_stated)},
                           {"rhs_corrected", to_json(d.rhs_corrected)},
                           {"residual_stated", d.residual_stated},
                           {"residual_corrected", d.residual_corrected},
                           {"pass", ok}});
        }
        json exps_stated = json::array(), exps_corr = json::array();
        for (int i = 0; i < m; ++i) {
            json rp = json::array(), rc = json::array();
            for (int j = 0; j < m; ++j) {
                rp.push_back(i == j ? json("0") : to_json(thomae_exponent(spec, beta, i, j, ExponentForm::Stated)));
                rc.push_back(i == j ? json("0") : to_json(thomae_exponent(spec, beta, i, j, ExponentForm::Corrected)));
            }
            exps_stated.push_back(rp);
            exps_corr.push_back(rc);
        }
        const auto cs = verify_constancy(ca, beta, chain);
        const bool const_ok = cs.characteristics_stable && (stated ? cs.drift_stated : cs.drift_corrected) < settings.tol;
        pass = pass && const_ok;
        all_pass = all_pass && pass;
        json alpha = json::array();
        for (std::size_t t = 0; t < cs.alpha_stated.size(); ++t)
            alpha.push_back({{"stated", to_json(cs.alpha_stated[t])}, {"corrected", to_json(cs.alpha_corrected[t])}});
        records.push_back({{"beta", beta},
                           {"a", characteristic_json(ch.a, N)},
                           {"b", characteristic_json(ch.b, N)},
                           {"rhs_stated", to_json(rhs_value(ca, beta, ExponentForm::Stated))},
                           {"rhs_corrected", to_json(rhs_value(ca, beta, ExponentForm::Corrected))},
                           {"exponents_stated", exps_stated},
                           {"exponents_corrected", exps_corr},
                           {"nonvanishing", {{"theta_abs", nv.theta_abs}, {"ratio", nv.ratio}, {"pass", nv.pass}}},
                           {"first_derivatives", {{"ratio", grad}, {"pass", grad < 1e-6}}},
                           {"derivative_identity", ids},
                           {"constancy",
                            {{"steps", chain.size() - 1},
                             {"drift_stated", cs.drift_stated},
                             {"drift_corrected", cs.drift_corrected},
                             {"characteristics_stable", cs.characteristics_stable},
                             {"alpha", alpha},
                             {"pass", const_ok}}},
                           {"pass", pass}});
    }
    json lambdas = json::array();
    for (const auto& l : chain.back()) lambdas.push_back(to_json(l));
    return {{"schema_version", kSchemaVersion},
            {"command", "verify"},
            {"genus", ca.surface.genus()},
            {"form", stated ? "stated" : "corrected"},
            {"tol", settings.tol},
            {"deformation_end", lambdas},
            {"records", records},
            {"pass", all_pass}};
}

}  // namespace cyclic
