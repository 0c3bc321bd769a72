// genmult command-line front end.
//
// Exit codes: 0 everything passed, 1 a certified violation was found,
// 2 input or usage error.

#include "genmult/invertibility.hpp"
#include "genmult/json_io.hpp"
#include "genmult/multiplier.hpp"
#include "genmult/perturbation.hpp"
#include "genmult/suites.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using genmult::io::json;

constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;

struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw usage_error("cannot write '" + out_path + "'");
    os << text;
}

std::string dump(const json& j) {
    return j.dump(2) + "\n";
}

std::pair<Eigen::Index, Eigen::Index> parse_range(const std::string& s) {
    const auto colon = s.find(':');
    try {
        if (colon == std::string::npos) {
            const long v = std::stol(s);
            return {v, v};
        }
        return {std::stol(s.substr(0, colon)), std::stol(s.substr(colon + 1))};
    } catch (const std::exception&) {
        throw usage_error("range must be N or LO:HI, got '" + s + "'");
    }
}

std::vector<genmult::Complex> parse_scalars(const std::string& s) {
    std::vector<genmult::Complex> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.emplace_back(std::stod(item), 0.0);
        } catch (const std::exception&) {
            throw usage_error("not a number: '" + item + "'");
        }
    }
    if (out.empty()) throw usage_error("empty scalar list");
    return out;
}

json spectrum_to_json(const genmult::SingularSpectrum& s) {
    return s.values;
}

struct Globals {
    genmult::ToleranceConfig tol;
    std::string out;
    bool csv = false;
};

int cmd_classify(const std::string& path, const Globals& g) {
    const auto seq = genmult::io::sequence_from_json(genmult::io::read_file(path));
    emit(dump(genmult::io::classification_to_json(seq, g.tol)), g.out);
    return 0;
}

struct SymbolArgs {
    std::string kind = "diagonal";
    std::string m;
    std::string kernel;
    long offset = 0;
    long n = 0;
    std::string a_path;
};

int cmd_symbol(const SymbolArgs& a, const Globals& g) {
    std::optional<genmult::Symbol> u;
    if (a.kind == "diagonal") {
        u.emplace(genmult::diagonal_symbol(parse_scalars(a.m)));
    } else if (a.kind == "convolution") {
        if (a.n < 1) throw usage_error("convolution needs --n >= 1");
        u.emplace(genmult::convolution_symbol(parse_scalars(a.kernel), a.offset, a.n));
    } else if (a.kind == "triblock") {
        u.emplace(genmult::triblock_example(a.n));
    } else if (a.kind == "frobenius") {
        if (a.a_path.empty()) throw usage_error("frobenius needs --a <matrix.json>");
        u.emplace(genmult::frobenius_symbol(genmult::io::matrix_from_json(genmult::io::read_file(a.a_path))));
    } else {
        throw usage_error("unknown symbol kind '" + a.kind + "'");
    }
    emit(dump(genmult::io::symbol_to_json(*u)), g.out);
    return 0;
}

int cmd_multiplier(const std::string& path, const std::vector<std::string>& actions, const std::string& vector_path,
                   const Globals& g) {
    using namespace genmult;
    const GeneralizedMultiplier m = io::bundle_from_json(io::read_file(path));
    json out = json::object();
    bool violation = false;

    for (const std::string& act : actions) {
        if (act == "build") {
            out["build"] = io::matrix_to_json(m.assembled());
        } else if (act == "apply") {
            if (vector_path.empty()) throw usage_error("apply needs --vector <file>");
            const CVector f = io::vector_from_json(io::read_file(vector_path));
            if (f.size() != m.assembled().cols()) throw dimension_error("apply: vector length mismatch");
            out["apply"] = io::vector_to_json(m.apply(f));
        } else if (act == "norms") {
            json certs = json::array();
            for (const auto& c : norm_certificates(m, g.tol)) {
                violation = violation || !c.pass;
                certs.push_back(io::certificate_to_json(c));
            }
            const SingularSpectrum s = singular_profile(m);
            out["norms"] = {{"op", s.max()},
                            {"s1", schatten_norm(s, 1.0)},
                            {"s2", schatten_norm(s, 2.0)},
                            {"certificates", std::move(certs)}};
        } else if (act == "adjoint") {
            const Certificate c = adjoint_check(m, g.tol);
            violation = violation || !c.pass;
            out["adjoint"] = io::certificate_to_json(c);
        } else if (act == "invert") {
            json inv;
            const bool riesz = classify(m.analysis_seq(), g.tol).is_riesz() && classify(m.synthesis_seq(), g.tol).is_riesz();
            if (riesz) {
                const RieszInverse r = riesz_inverse(m, g.tol);
                inv = {{"method", "riesz_formula"},
                       {"symbol_invertible", r.symbol_invertible},
                       {"invertible", r.multiplier_invertible},
                       {"sigma_min", r.sigma_min_multiplier},
                       {"consistent", r.consistent()}};
                if (!r.consistent()) violation = true;
                if (r.inverse) {
                    inv["right_residual"] = r.right_residual;
                    inv["left_residual"] = r.left_residual;
                    inv["inverse"] = io::matrix_to_json(r.inverse->assembled());
                    if (std::max(r.right_residual, r.left_residual) > g.tol.bound_slack) violation = true;
                }
            } else {
                const bool ok = multiplier_invertible(m, g.tol);
                const auto& a = m.assembled();
                inv = {{"method", "direct"},
                       {"invertible", ok},
                       {"sigma_min", a.rows() == a.cols() ? smallest_singular(a) : 0.0}};
                if (ok) {
                    const CMatrix x = inverse(a, g.tol);
                    inv["right_residual"] = operator_norm(a * x - CMatrix::Identity(a.rows(), a.rows()));
                    inv["inverse"] = io::matrix_to_json(x);
                }
            }
            out["invert"] = std::move(inv);
        } else if (act == "profile") {
            out["profile"] = spectrum_to_json(singular_profile(m));
        } else {
            throw usage_error("unknown action '" + act + "'");
        }
    }
    emit(dump(out), g.out);
    return violation ? kExitViolation : 0;
}

int cmd_check(const std::string& suite, genmult::SweepConfig cfg, const std::string& dims, const std::string& counts,
              std::optional<std::size_t> replay, const Globals& g) {
    std::tie(cfg.dim_lo, cfg.dim_hi) = parse_range(dims);
    std::tie(cfg.count_lo, cfg.count_hi) = parse_range(counts);
    cfg.tol = g.tol;
    try {
        cfg.validate();
    } catch (const std::invalid_argument& ex) {
        throw usage_error(ex.what());
    }
    const auto names = genmult::suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) throw usage_error("unknown suite '" + suite + "'");

    if (replay) {
        const genmult::DrawResult r = genmult::run_draw(suite, cfg, *replay);
        emit(dump(genmult::io::draw_to_json(r, true)), g.out);
        return r.status == genmult::VerdictStatus::Fail ? kExitViolation : 0;
    }
    const genmult::SuiteReport rep = genmult::run_suite(suite, cfg);
    emit(g.csv ? genmult::io::suite_report_to_csv(rep) : dump(genmult::io::suite_report_to_json(rep)), g.out);
    return rep.all_pass() ? 0 : kExitViolation;
}

int cmd_perturb(const std::string& path, const Globals& g) {
    const genmult::ConvergenceExperiment exp = genmult::io::experiment_from_json(genmult::io::read_file(path));
    const genmult::ConvergenceReport rep = genmult::run_experiment(exp, g.tol);
    emit(g.csv ? genmult::io::report_to_csv(rep) : dump(genmult::io::report_to_json(rep)), g.out);
    return rep.all_satisfied() ? 0 : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"genmult: generalized Bessel multipliers over finite-dimensional Hilbert spaces"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--tol-eq", g.tol.eq_abs, "relative equality tolerance");
    app.add_option("--tol-slack", g.tol.bound_slack, "relative slack for inequality checks");
    app.add_option("--tol-rank", g.tol.rank_tol, "relative rank threshold");
    app.add_option("--tol-floor", g.tol.invert_floor, "relative sigma_min floor for invertibility");
    app.add_option("--out", g.out, "write output to this file instead of stdout");
    app.add_flag("--csv", g.csv, "emit CSV instead of JSON where supported");

    std::string seq_path;
    auto* classify = app.add_subcommand("classify", "classify a sequence system and report its frame bounds");
    classify->add_option("file", seq_path, "sequence JSON")->required();

    SymbolArgs sym;
    auto* symbol = app.add_subcommand("symbol", "construct a symbol and print its JSON");
    symbol->add_option("--kind", sym.kind, "diagonal | convolution | triblock | frobenius");
    symbol->add_option("--m", sym.m, "diagonal entries, comma separated");
    symbol->add_option("--kernel", sym.kernel, "convolution kernel c_offset, c_offset+1, ...");
    symbol->add_option("--offset", sym.offset, "index of the first kernel entry");
    symbol->add_option("--n", sym.n, "size of the truncated symbol");
    symbol->add_option("--a", sym.a_path, "matrix JSON with the Frobenius coefficients");

    std::string bundle_path, vector_path;
    std::vector<std::string> actions;
    auto* multiplier = app.add_subcommand("multiplier", "build a multiplier from a bundle and run actions on it");
    multiplier->add_option("file", bundle_path, "multiplier bundle JSON")->required();
    multiplier->add_option("--action", actions, "build | apply | norms | adjoint | invert | profile")->required();
    multiplier->add_option("--vector", vector_path, "vector JSON for 'apply'");

    std::string suite, dims = "2:8", counts = "2:16";
    genmult::SweepConfig cfg;
    std::optional<std::size_t> replay;
    auto* check = app.add_subcommand("check", "randomized sweep of one result");
    check->add_option("suite", suite, "suite name")->required();
    check->add_option("--dims", dims, "dimension range LO:HI");
    check->add_option("--counts", counts, "sequence length range LO:HI");
    check->add_option("--draws", cfg.draws, "number of draws");
    check->add_option("--seed", cfg.seed, "master seed");
    check->add_option("--replay", replay, "run only this draw index, with detail");
    check->add_flag("--tight", cfg.tight_only, "prop-4-4: draw tight frames only");

    std::string exp_path;
    auto* perturb = app.add_subcommand("perturb", "run a convergence experiment");
    perturb->add_option("file", exp_path, "experiment JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        g.tol.validate();
        if (*classify) return cmd_classify(seq_path, g);
        if (*symbol) return cmd_symbol(sym, g);
        if (*multiplier) return cmd_multiplier(bundle_path, actions, vector_path, g);
        if (*check) return cmd_check(suite, cfg, dims, counts, replay, g);
        if (*perturb) return cmd_perturb(exp_path, g);
    } catch (const genmult::io::json::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitInput;
    } catch (const std::domain_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitInput;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitViolation;
    }
    return kExitInput;
}
