#include "cyclic/cyclic.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "cyclic/report.hpp"

struct cyclic_curve {
    cyclic::RunInput input;
};

namespace {

thread_local std::string last_error;

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

cyclic::AnalysisOptions analysis_options(const cyclic_options* o) {
    const cyclic_options d = cyclic_options_default();
    if (!o) o = &d;
    if (o->quad_order < 2) throw cyclic::InvalidInput("quad_order must be at least 2");
    if (!(o->theta_tol > 0.0)) throw cyclic::InvalidInput("theta_tol must be positive");
    if (!(o->tol > 0.0)) throw cyclic::InvalidInput("tol must be positive");
    cyclic::AnalysisOptions a;
    a.quad.order = o->quad_order;
    a.theta_tol = o->theta_tol;
    a.seed = o->seed;
    return a;
}

// Runs f, translating exceptions into status codes and the thread-local message.
template <class F>
cyclic_status guarded(F&& f) {
    try {
        f();
        last_error.clear();
        return CYCLIC_OK;
    } catch (const cyclic::InvalidInput& e) {
        last_error = e.what();
        return CYCLIC_E_INVALID_ARGUMENT;
    } catch (const nlohmann::json::exception& e) {
        last_error = std::string("config: ") + e.what();
        return CYCLIC_E_INVALID_ARGUMENT;
    } catch (const cyclic::NumericalError& e) {
        last_error = e.what();
        return CYCLIC_E_NUMERICAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return CYCLIC_E_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return CYCLIC_E_INTERNAL;
    }
}

template <class F>
cyclic_status report_call(const cyclic_curve* curve, char** report, F&& build) {
    if (report) *report = nullptr;
    return guarded([&] {
        if (!curve || !report) throw cyclic::InvalidInput("null argument");
        *report = dup(build(curve->input).dump(2));
    });
}

}  // namespace

extern "C" {

cyclic_options cyclic_options_default(void) {
    cyclic_options o;
    o.quad_order = cyclic::QuadratureOptions{}.order;
    o.theta_tol = cyclic::AnalysisOptions{}.theta_tol;
    o.tol = 1e-4;
    o.seed = 1;
    o.exponent_form = CYCLIC_FORM_STATED;
    return o;
}

cyclic_status cyclic_curve_open(const char* config_json, cyclic_curve** out) {
    if (out) *out = nullptr;
    return guarded([&] {
        if (!config_json || !out) throw cyclic::InvalidInput("null argument");
        auto c = std::make_unique<cyclic_curve>();
        c->input = cyclic::parse_config(nlohmann::json::parse(config_json));
        *out = c.release();
    });
}

void cyclic_curve_free(cyclic_curve* curve) { delete curve; }

cyclic_status cyclic_curve_genus(const cyclic_curve* curve, int* genus) {
    return guarded([&] {
        if (!curve || !genus) throw cyclic::InvalidInput("null argument");
        *genus = cyclic::validate_curve(curve->input.spec).g;
    });
}

cyclic_status cyclic_enumerate(const cyclic_curve* curve, int all_congruent, char** report) {
    return report_call(curve, report,
                       [&](const cyclic::RunInput& in) { return cyclic::enumerate_report(in.spec, all_congruent != 0); });
}

cyclic_status cyclic_periods(const cyclic_curve* curve, const cyclic_options* options, char** report) {
    return report_call(curve, report, [&](const cyclic::RunInput& in) {
        return cyclic::periods_report(in, analysis_options(options));
    });
}

cyclic_status cyclic_abel(const cyclic_curve* curve, const cyclic_options* options, char** report) {
    return report_call(curve, report,
                       [&](const cyclic::RunInput& in) { return cyclic::abel_report(in, analysis_options(options)); });
}

cyclic_status cyclic_theta(const cyclic_curve* curve, const cyclic_options* options, char** report) {
    return report_call(curve, report,
                       [&](const cyclic::RunInput& in) { return cyclic::theta_report(in, analysis_options(options)); });
}

cyclic_status cyclic_kernels(const cyclic_curve* curve, const cyclic_options* options, char** report) {
    return report_call(curve, report, [&](const cyclic::RunInput& in) {
        return cyclic::kernels_report(in, analysis_options(options));
    });
}

cyclic_status cyclic_verify(const cyclic_curve* curve, const cyclic_options* options, const int* beta,
                            size_t beta_len, char** report, int* all_pass) {
    if (all_pass) *all_pass = 0;
    return report_call(curve, report, [&](const cyclic::RunInput& in) {
        const cyclic_options d = cyclic_options_default();
        const cyclic_options& o = options ? *options : d;
        cyclic::VerifySettings vs;
        vs.tol = o.tol;
        if (o.exponent_form != CYCLIC_FORM_STATED && o.exponent_form != CYCLIC_FORM_CORRECTED)
            throw cyclic::InvalidInput("exponent_form must be 0 or 1");
        vs.form = o.exponent_form == CYCLIC_FORM_STATED ? cyclic::ExponentForm::Stated : cyclic::ExponentForm::Corrected;
        std::vector<std::vector<int>> betas;
        if (beta) betas.emplace_back(beta, beta + beta_len);
        bool pass = false;
        auto r = cyclic::verify_report(in, analysis_options(options), vs, betas, pass);
        if (all_pass) *all_pass = pass ? 1 : 0;
        return r;
    });
}

const char* cyclic_last_error(void) { return last_error.c_str(); }

const char* cyclic_status_string(cyclic_status status) {
    switch (status) {
        case CYCLIC_OK: return "ok";
        case CYCLIC_E_INVALID_ARGUMENT: return "invalid argument";
        case CYCLIC_E_NUMERICAL: return "numerical failure";
        case CYCLIC_E_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void cyclic_string_free(char* s) { std::free(s); }

}  // extern "C"
