// Command-line front end: computes invariant subspaces and dimension data
// for a state-space system file, cross-validates the closed forms against
// the recursive baselines, and generates random test systems.

#include "geosub/linalg.hpp"
#include "geosub/markov.hpp"
#include "geosub/oracle.hpp"
#include "geosub/slowspace.hpp"
#include "geosub/sysmodel.hpp"
#include "geosub/transferdim.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;
using namespace geosub;

constexpr const char* kVersion = "0.1.0";

// Exit codes, in order of precedence once input parsing succeeded.
constexpr int kExitOk = 0;
constexpr int kExitDisagreement = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitInapplicable = 3;
constexpr int kExitInfiniteImpulses = 4;

ordered_json basis_to_json(const Matrix& basis) {
    ordered_json cols = ordered_json::array();
    for (Index c = 0; c < basis.cols(); ++c) {
        ordered_json col = ordered_json::array();
        for (Index r = 0; r < basis.rows(); ++r) col.push_back(basis(r, c));
        cols.push_back(std::move(col));
    }
    return cols;
}

struct QuantityResult {
    ordered_json entry;
    int severity = kExitOk;  // kExitOk, kExitInapplicable or kExitInfiniteImpulses
};

QuantityResult run_quantity(const std::string& name, const StateSpaceSystem& sys, double tol) {
    QuantityResult out;
    out.entry["quantity"] = name;
    try {
        if (name == "fast_space") {
            const SubspaceBasis fast = fast_space(sys, tol);
            out.entry["status"] = "ok";
            out.entry["dim"] = fast.dim();
            out.entry["basis"] = basis_to_json(fast.basis);
        } else if (name == "slow_space" || name == "good_slow_space") {
            const SlowSpaceResult slow = name == "slow_space"
                                             ? weakly_unobservable(sys, tol)
                                             : good_weakly_unobservable(sys, tol);
            out.entry["status"] = "ok";
            out.entry["dim"] = slow.space.dim();
            out.entry["basis"] = basis_to_json(slow.space.basis);
        } else if (name == "impulsive_inputs") {
            const ImpulsiveInputBasis imp = impulsive_space(sys, tol);
            out.entry["status"] = "ok";
            out.entry["dim"] = imp.f;
            out.entry["ker_d_dim"] = imp.d;
            out.entry["basis"] = basis_to_json(imp.N);
        } else {
            const TransferDims dims = dims_from_transfer(sys, tol);
            out.entry["status"] = "ok";
            out.entry["n_s"] = dims.n_s;
            out.entry["n_f"] = dims.n_f;
            out.entry["route"] = dims.route == DimsRoute::Both
                                     ? "both"
                                     : dims.route == DimsRoute::Square ? "square" : "even";
        }
    } catch (const InfiniteImpulsiveSpace& e) {
        out.entry["status"] = "error";
        out.entry["diagnostics"] = std::string("InfiniteImpulsiveSpace: ") + e.what();
        out.severity = kExitInfiniteImpulses;
    } catch (const NotSquare& e) {
        out.entry["status"] = "inapplicable";
        out.entry["diagnostics"] = std::string("NotSquare: ") + e.what();
        out.severity = kExitInapplicable;
    } catch (const SingularPencil& e) {
        out.entry["status"] = "inapplicable";
        out.entry["diagnostics"] = std::string("SingularPencil: ") + e.what();
        out.severity = kExitInapplicable;
    } catch (const NotLeftInvertible& e) {
        out.entry["status"] = "inapplicable";
        out.entry["diagnostics"] = std::string("NotLeftInvertible: ") + e.what();
        out.severity = kExitInapplicable;
    } catch (const Inapplicable& e) {
        out.entry["status"] = "inapplicable";
        out.entry["diagnostics"] = e.what();
        out.severity = kExitInapplicable;
    } catch (const Error& e) {
        out.entry["status"] = "error";
        out.entry["diagnostics"] = e.what();
        out.severity = kExitInapplicable;
    }
    return out;
}

int cmd_compute(const std::string& input, const std::string& what, double tol,
                const std::string& output) {
    StateSpaceSystem sys;
    try {
        sys = load_system(input);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }

    std::vector<std::string> quantities;
    if (what == "fast") {
        quantities = {"fast_space"};
    } else if (what == "slow") {
        quantities = {"slow_space"};
    } else if (what == "goodslow") {
        quantities = {"good_slow_space"};
    } else if (what == "uimp") {
        quantities = {"impulsive_inputs"};
    } else if (what == "dims") {
        quantities = {"dims"};
    } else {
        quantities = {"fast_space", "slow_space", "good_slow_space", "impulsive_inputs", "dims"};
    }

    ordered_json report;
    report["tool"] = "geosub";
    report["version"] = kVersion;
    report["tol"] = tol;
    report["system"] = {{"n", sys.n()}, {"m", sys.m()}, {"p", sys.p()}};
    report["results"] = ordered_json::array();

    int exit_code = kExitOk;
    for (const auto& name : quantities) {
        QuantityResult q = run_quantity(name, sys, tol);
        report["results"].push_back(std::move(q.entry));
        if (q.severity == kExitInfiniteImpulses) {
            exit_code = kExitInfiniteImpulses;
        } else if (q.severity == kExitInapplicable && exit_code != kExitInfiniteImpulses) {
            exit_code = kExitInapplicable;
        }
    }

    if (output.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream out(output);
        if (!out) {
            std::cerr << "error: cannot open \"" << output << "\" for writing\n";
            return kExitInvalidInput;
        }
        out << report.dump(2) << "\n";
        if (!out) {
            std::cerr << "error: write to \"" << output << "\" failed\n";
            return kExitInvalidInput;
        }
    }
    return exit_code;
}

int cmd_check(const std::optional<std::string>& input, int random_count, Index n, Index m,
              Index p, std::uint64_t seed, double tol) {
    std::vector<StateSpaceSystem> systems;
    if (input) {
        try {
            systems.push_back(load_system(*input));
        } catch (const Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitInvalidInput;
        }
    } else {
        for (int i = 0; i < random_count; ++i) {
            systems.push_back(random_system(n, m, p, seed + static_cast<std::uint64_t>(i)));
        }
    }

    Index quantities = 0;
    Index disagreements = 0;
    for (std::size_t idx = 0; idx < systems.size(); ++idx) {
        const CrossCheckReport report = cross_check(systems[idx], tol);
        quantities += report.comparisons();
        if (report.all_agree()) continue;
        for (const auto& e : report.entries) {
            if (e.agree.has_value() && !*e.agree) ++disagreements;
        }
        std::cout << "system " << idx << " disagrees:\n";
        for (const auto& e : report.entries) {
            std::cout << "  " << e.quantity << ": closed form = " << e.closed_form
                      << ", oracle = " << e.oracle;
            if (e.agree.has_value()) std::cout << (*e.agree ? " [agree]" : " [DISAGREE]");
            std::cout << "\n";
        }
    }
    std::cout << "checked " << systems.size() << " systems, " << quantities << " quantities, "
              << disagreements << " disagreements\n";
    return disagreements == 0 ? kExitOk : kExitDisagreement;
}

int cmd_random(Index n, Index m, Index p, std::uint64_t seed, const std::string& output, int lo,
               int hi) {
    try {
        const StateSpaceSystem sys = random_system(n, m, p, seed, {lo, hi});
        save_system(sys, output);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"invariant subspaces of LTI state-space systems"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    double tol = kDefaultTol;

    auto* compute = app.add_subcommand("compute", "compute subspaces for a system file");
    std::string compute_input, compute_what, compute_output;
    compute->add_option("--input", compute_input, "system JSON file")->required();
    compute->add_option("--what", compute_what, "quantity to compute")
        ->required()
        ->check(CLI::IsMember({"fast", "slow", "goodslow", "uimp", "dims", "all"}));
    compute->add_option("--tol", tol, "relative tolerance");
    compute->add_option("--output", compute_output, "write the JSON report here");

    auto* check = app.add_subcommand("check", "cross-validate closed forms against recursions");
    std::string check_input;
    int check_random = 0;
    std::uint64_t check_seed = 0;
    Index check_n = 0, check_m = 0, check_p = 0;
    auto* check_input_opt = check->add_option("--input", check_input, "system JSON file");
    auto* check_random_opt =
        check->add_option("--random", check_random, "number of random systems")
            ->check(CLI::PositiveNumber)
            ->excludes(check_input_opt);
    check->add_option("--n", check_n, "state dimension")->check(CLI::PositiveNumber);
    check->add_option("--m", check_m, "input dimension")->check(CLI::PositiveNumber);
    check->add_option("--p", check_p, "output dimension")->check(CLI::PositiveNumber);
    check->add_option("--seed", check_seed, "seed of the first system");
    check->add_option("--tol", tol, "relative tolerance");

    auto* rnd = app.add_subcommand("random", "generate a random integer system file");
    Index rnd_n = 0, rnd_m = 0, rnd_p = 0;
    std::uint64_t rnd_seed = 0;
    std::string rnd_output;
    int rnd_lo = -3, rnd_hi = 3;
    rnd->add_option("--n", rnd_n, "state dimension")->required()->check(CLI::PositiveNumber);
    rnd->add_option("--m", rnd_m, "input dimension")->required()->check(CLI::PositiveNumber);
    rnd->add_option("--p", rnd_p, "output dimension")->required()->check(CLI::PositiveNumber);
    rnd->add_option("--seed", rnd_seed, "generator seed")->required();
    rnd->add_option("--output", rnd_output, "output JSON file")->required();
    rnd->add_option("--lo", rnd_lo, "smallest entry value");
    rnd->add_option("--hi", rnd_hi, "largest entry value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalidInput;
    }

    if (compute->parsed()) {
        return cmd_compute(compute_input, compute_what, tol, compute_output);
    }
    if (check->parsed()) {
        if (check_input_opt->count() == 0) {
            if (check_random_opt->count() == 0 || check_n < 1 || check_m < 1 || check_p < 1) {
                std::cerr << "error: check needs --input or --random with --n --m --p\n";
                return kExitInvalidInput;
            }
            return cmd_check(std::nullopt, check_random, check_n, check_m, check_p, check_seed,
                             tol);
        }
        return cmd_check(check_input, 0, 0, 0, 0, 0, tol);
    }
    return cmd_random(rnd_n, rnd_m, rnd_p, rnd_seed, rnd_output, rnd_lo, rnd_hi);
}
