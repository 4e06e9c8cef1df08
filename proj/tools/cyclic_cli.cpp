// Command-line front end over the C interface.
//
// Exit codes: 0 success, 1 a verification check failed, 2 input error,
// 3 numerical or internal failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cyclic/cyclic.h"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

int exit_code(cyclic_status s) {
    switch (s) {
        case CYCLIC_OK: return 0;
        case CYCLIC_E_INVALID_ARGUMENT: return kExitInput;
        default: return kExitNumerical;
    }
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

std::vector<int> parse_beta(const std::string& text) {
    std::vector<int> beta;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const int v = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        beta.push_back(v);
    }
    return beta;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Theta constants, periods and Thomae checks for cyclic covers y^N = prod (x - lambda_i)^R_i"};
    app.require_subcommand(1);

    std::string config_path, out_path, form = "stated", beta_text;
    cyclic_options opt = cyclic_options_default();
    bool all_congruent = false, all_admissible = false;

    app.add_option("--tol", opt.tol, "verification tolerance")->check(CLI::PositiveNumber);
    app.add_option("--quad-order", opt.quad_order, "Gauss-Legendre nodes per piece")->check(CLI::Range(2, 200));
    app.add_option("--theta-tol", opt.theta_tol, "theta truncation tolerance")->check(CLI::PositiveNumber);
    app.add_option("--seed", opt.seed, "seed for cycle layout and random divisors");
    app.add_option("--out", out_path, "write the report here instead of stdout");

    auto add = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("config", config_path, "curve configuration (JSON)")->required();
        return sub;
    };
    auto* enumerate = add("enumerate", "admissible beta vectors with tau-profiles");
    enumerate->add_flag("--congruent", all_congruent, "list every beta satisfying the congruence");
    add("periods", "period matrices A, B, tau and det C");
    add("abel", "Abel map, Riemann constant and divisor points");
    add("theta", "theta constants at every divisor point");
    add("kernels", "Szego expansion, canonical bidifferential and determinant identities");
    auto* verify = add("verify", "non-vanishing, derivative identity and constancy checks");
    auto* beta_opt = verify->add_option("--beta", beta_text, "comma separated beta vector");
    verify->add_flag("--all-admissible", all_admissible, "check every admissible beta")->excludes(beta_opt);
    verify->add_option("--form", form, "exponent form deciding PASS/FAIL")->check(CLI::IsMember({"stated", "corrected"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    std::string text;
    if (!read_file(config_path, text)) {
        std::cerr << "error: cannot read config '" << config_path << "'\n";
        return kExitInput;
    }
    cyclic_curve* curve = nullptr;
    if (cyclic_status s = cyclic_curve_open(text.c_str(), &curve); s != CYCLIC_OK) {
        std::cerr << "error: " << cyclic_last_error() << '\n';
        return exit_code(s);
    }

    char* report = nullptr;
    cyclic_status status = CYCLIC_OK;
    int passed = 1;
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "enumerate") {
        status = cyclic_enumerate(curve, all_congruent ? 1 : 0, &report);
    } else if (cmd == "periods") {
        status = cyclic_periods(curve, &opt, &report);
    } else if (cmd == "abel") {
        status = cyclic_abel(curve, &opt, &report);
    } else if (cmd == "theta") {
        status = cyclic_theta(curve, &opt, &report);
    } else if (cmd == "kernels") {
        status = cyclic_kernels(curve, &opt, &report);
    } else {
        opt.exponent_form = form == "stated" ? CYCLIC_FORM_STATED : CYCLIC_FORM_CORRECTED;
        std::vector<int> beta;
        if (!beta_text.empty()) {
            try {
                beta = parse_beta(beta_text);
            } catch (const std::exception&) {
                std::cerr << "error: --beta expects comma separated integers\n";
                cyclic_curve_free(curve);
                return kExitInput;
            }
        } else if (!all_admissible) {
            std::cerr << "error: verify needs --beta or --all-admissible\n";
            cyclic_curve_free(curve);
            return kExitInput;
        }
        status = cyclic_verify(curve, &opt, beta.empty() ? nullptr : beta.data(), beta.size(), &report, &passed);
    }
    cyclic_curve_free(curve);

    if (status != CYCLIC_OK) {
        std::cerr << "error (" << cyclic_status_string(status) << "): " << cyclic_last_error() << '\n';
        return exit_code(status);
    }
    if (out_path.empty()) {
        std::cout << report << '\n';
    } else {
        std::ofstream out(out_path);
        out << report << '\n';
        if (!out) {
            std::cerr << "error: cannot write '" << out_path << "'\n";
            cyclic_string_free(report);
            return kExitInput;
        }
    }
    cyclic_string_free(report);
    if (cmd == "verify") std::cerr << (passed ? "PASS" : "FAIL") << '\n';
    return passed ? 0 : kExitFail;
}
