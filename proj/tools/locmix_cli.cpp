// Command-line frontend for the local mixture toolkit.
//
// Subcommands: gen-moments, recover, fourier, statmix, ideal-check.
// Exit codes: 0 success, 2 validation error, 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <locmix/elimination.hpp>
#include <locmix/fourier.hpp>
#include <locmix/ideals.hpp>
#include <locmix/io.hpp>
#include <locmix/moments.hpp>
#include <locmix/recovery.hpp>
#include <locmix/statmix.hpp>

#include <Eigen/Core>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace locmix;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOptions {
    unsigned long seed = 0;
    double tol = 1e-8;
    int starts = 200;
    std::string out;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--seed", opt.seed, "random seed (all randomness flows from here)");
    cmd->add_option("--tol", opt.tol, "numeric tolerance for rank/realness decisions");
    cmd->add_option("--starts", opt.starts, "number of random Newton starts");
    cmd->add_option("--out", opt.out, "output file (stdout when omitted)");
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
}

RecoveryConfig make_config(const CommonOptions& opt) {
    RecoveryConfig cfg;
    cfg.seed = opt.seed;
    cfg.starts = opt.starts;
    cfg.rank_tol = opt.tol;
    return cfg;
}

std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void emit(const CommonOptions& opt, const std::string& text) {
    if (opt.out.empty())
        std::cout << text << "\n";
    else
        io::write_file(opt.out, text + "\n");
}

json base_report(const std::string& command, const std::string& input_bytes,
                 const CommonOptions& opt) {
    return json{{"command", command},
                {"input_digest", fnv1a_digest(input_bytes)},
                {"seed", opt.seed}};
}

void emit_report(const CommonOptions& opt, json report,
                 const std::chrono::steady_clock::time_point& t0) {
    report["timing_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(opt, report.dump(2));
}

std::string read_input(const std::string& path) {
    try {
        return io::read_file(path);
    } catch (const std::runtime_error& e) {
        throw ValidationError(e.what());
    }
}

MomentSequence<cplx> load_moments(const std::string& path, std::string* raw = nullptr) {
    const std::string bytes = read_input(path);
    if (raw) *raw = bytes;
    try {
        const auto stripped = bytes.find_first_not_of(" \t\r\n");
        if (stripped != std::string::npos && bytes[stripped] == '{')
            return io::moments_from_json(json::parse(bytes));
        std::istringstream in(bytes);
        return io::moments_from_csv(in);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("moments file: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string("moments file: ") + e.what());
    }
}

MomentSequence<double> realify_moments(const MomentSequence<cplx>& m, double tol) {
    std::vector<double> vals;
    double scale = 1.0;
    for (const auto& v : m.values) scale = std::max(scale, std::abs(v));
    for (const auto& v : m.values) {
        if (std::abs(v.imag()) > tol * scale)
            throw ValidationError("moments must be real for this command");
        vals.push_back(v.real());
    }
    return MomentSequence<double>(std::move(vals), m.normalized);
}

json diagnostics_json(const RecoveryDiagnostics& d) {
    return json{{"candidate_count", d.candidate_count},
                {"best_selector_residual", d.best_selector_residual},
                {"second_selector_residual", d.second_selector_residual},
                {"ambiguous", d.ambiguous},
                {"vandermonde_condition", d.vandermonde_condition},
                {"rank_profile", d.rank_profile}};
}

std::string mixture_to_csv(const LocalDiracMixture<cplx>& mix) {
    std::ostringstream os;
    os.precision(17);
    for (const auto& c : mix.components) {
        os << c.xi.real() << "," << c.xi.imag();
        for (const auto& l : c.lambdas) os << "," << l.real() << "," << l.imag();
        os << "\n";
    }
    return os.str();
}

// ---- gen-moments -------------------------------------------------------

struct GenMomentsArgs {
    CommonOptions common;
    std::string mixture_file;
    std::vector<double> pareto;  // alpha, xi
    int degree = 0;
};

int run_gen_moments(const GenMomentsArgs& a) {
    const auto t0 = std::chrono::steady_clock::now();
    if (a.degree < 0) throw ValidationError("--degree must be nonnegative");
    if (a.mixture_file.empty() == a.pareto.empty())
        throw ValidationError("give exactly one of --mixture or --pareto");

    MomentSequence<cplx> m({cplx{1.0}}, true);
    std::string input_bytes;
    std::string source;
    if (!a.mixture_file.empty()) {
        input_bytes = read_input(a.mixture_file);
        LocalDiracMixture<cplx> mix;
        try {
            mix = io::mixture_from_json(json::parse(input_bytes));
        } catch (const json::exception& e) {
            throw ValidationError(std::string("mixture file: ") + e.what());
        }
        if (mix.size() == 0) throw ValidationError("mixture has no components");
        m = local_dirac_moments(mix, a.degree);
        source = "mixture";
    } else {
        if (a.pareto.size() != 2) throw ValidationError("--pareto needs alpha and xi");
        const auto pm = pareto_moments({a.pareto[0], a.pareto[1]}, a.degree);
        std::vector<cplx> vals(pm.values.begin(), pm.values.end());
        m = MomentSequence<cplx>(std::move(vals), pm.normalized);
        input_bytes = "pareto:" + std::to_string(a.pareto[0]) + "," + std::to_string(a.pareto[1]);
        source = "pareto";
    }

    if (a.common.format == "csv") {
        emit(a.common, io::moments_to_csv(m));
        return 0;
    }
    json report = base_report("gen-moments", input_bytes, a.common);
    report["parameters"] = json{{"source", source}, {"degree", a.degree}};
    report["moments"] = io::moments_to_json(m);
    emit_report(a.common, std::move(report), t0);
    return 0;
}

// ---- recover -----------------------------------------------------------

struct RecoverArgs {
    CommonOptions common;
    std::string moments_file;
    int r = 0;
    int l = 0;
    std::string method = "auto";
    bool statistical = false;
};

int run_recover(const RecoverArgs& a) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string raw;
    const auto m = load_moments(a.moments_file, &raw);
    if (a.r < 1 || a.l < 0) throw ValidationError("need --components >= 1 and --order >= 0");

    LocalDiracMixture<cplx> mix;
    json diag;
    if (a.method == "elimination") {
        if (a.r != 2 || a.l != 1)
            throw ValidationError("--method elimination handles exactly r=2, l=1");
        const auto mr = realify_moments(m, a.common.tol);
        std::vector<TwoMixCandidate> cands;
        try {
            cands = recover_two_component(mr, a.statistical);
        } catch (const std::invalid_argument& e) {
            throw ValidationError(e.what());
        } catch (const std::runtime_error& e) {
            throw NumericalError(e.what());
        }
        const auto& b = cands.front();
        mix.components.push_back({b.xi1, {b.lambda, b.lambda * b.alpha1}});
        mix.components.push_back(
            {b.xi2, {cplx{1.0} - b.lambda, (cplx{1.0} - b.lambda) * b.alpha2}});
        diag = json{{"candidate_count", cands.size()},
                    {"m6_residual", b.m6_residual},
                    {"boundary_lambda", b.boundary_lambda}};
    } else if (a.method == "auto") {
        RecoveryResult<cplx> rec;
        try {
            rec = recover(m, a.r, a.l, make_config(a.common));
        } catch (const std::invalid_argument& e) {
            throw ValidationError(e.what());
        } catch (const std::runtime_error& e) {
            throw NumericalError(e.what());
        }
        if (rec.diagnostics.ambiguous)
            throw NumericalError("candidate selection is ambiguous; supply more moments");
        mix = rec.mixture;
        diag = diagnostics_json(rec.diagnostics);
        if (a.statistical) {
            for (const auto& c : mix.components) {
                const double im = std::abs(c.lambdas[0].imag());
                const double re = c.lambdas[0].real();
                if (im > a.common.tol || re < -a.common.tol || re > 1 + a.common.tol)
                    throw NumericalError("no statistically admissible mixture (weights must be "
                                         "real in [0, 1])");
            }
        }
    } else {
        throw ValidationError("unknown --method (use auto or elimination)");
    }

    if (a.common.format == "csv") {
        emit(a.common, mixture_to_csv(mix));
        return 0;
    }
    json report = base_report("recover", raw, a.common);
    report["parameters"] = json{{"components", a.r},
                                {"order", a.l},
                                {"method", a.method},
                                {"statistical", a.statistical}};
    report["mixture"] = io::mixture_to_json(mix);
    report["diagnostics"] = diag;
    emit_report(a.common, std::move(report), t0);
    return 0;
}

// ---- fourier -----------------------------------------------------------

struct FourierArgs {
    CommonOptions common;
    std::string coeffs_file;
    std::string signal_file;
    int segments = 0;
    int bandwidth = 0;
    double noise = 0;
};

int run_fourier(const FourierArgs& a) {
    const auto t0 = std::chrono::steady_clock::now();
    if (a.coeffs_file.empty() == a.signal_file.empty())
        throw ValidationError("give exactly one of --coeffs (reconstruction) or --signal "
                              "(forward coefficients)");

    if (!a.signal_file.empty()) {
        if (a.bandwidth < 1) throw ValidationError("--bandwidth must be >= 1");
        const std::string raw = read_input(a.signal_file);
        PiecewiseLinearSignal sig;
        try {
            sig = io::signal_from_json(json::parse(raw));
        } catch (const json::exception& e) {
            throw ValidationError(std::string("signal file: ") + e.what());
        } catch (const std::invalid_argument& e) {
            throw ValidationError(e.what());
        }
        auto c = fourier_coefficients(sig, a.bandwidth);
        if (a.noise > 0) c = add_coefficient_noise(c, a.noise, a.common.seed);
        if (a.common.format == "csv") {
            emit(a.common, io::fourier_to_csv(c));
            return 0;
        }
        json report = base_report("fourier", raw, a.common);
        report["parameters"] = json{{"bandwidth", a.bandwidth}, {"noise", a.noise}};
        report["coefficients_csv"] = io::fourier_to_csv(c);
        emit_report(a.common, std::move(report), t0);
        return 0;
    }

    if (a.segments < 1) throw ValidationError("--segments must be >= 1");
    const std::string raw = read_input(a.coeffs_file);
    FourierSamples c;
    try {
        std::istringstream in(raw);
        c = io::fourier_from_csv(in);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    ReconstructionResult rec;
    try {
        rec = reconstruct_signal(c, a.segments, make_config(a.common));
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    } catch (const std::runtime_error& e) {
        throw NumericalError(e.what());
    }
    if (rec.diagnostics.ambiguous)
        throw NumericalError("candidate selection is ambiguous; raise the bandwidth");

    if (a.common.format == "csv") {
        std::ostringstream os;
        os.precision(17);
        for (int j = 0; j < rec.signal.segments(); ++j) {
            os << rec.signal.breakpoints[j];
            if (j + 1 < rec.signal.segments())
                os << "," << rec.signal.values[j] << "," << rec.signal.slopes[j];
            os << "\n";
        }
        emit(a.common, os.str());
        return 0;
    }
    json report = base_report("fourier", raw, a.common);
    report["parameters"] = json{{"segments", a.segments}, {"bandwidth", c.s}};
    report["signal"] = io::signal_to_json(rec.signal);
    report["diagnostics"] = diagnostics_json(rec.diagnostics);
    report["closure_value"] = std::abs(rec.closure_value);
    report["closure_slope"] = std::abs(rec.closure_slope);
    emit_report(a.common, std::move(report), t0);
    return 0;
}

// ---- statmix -----------------------------------------------------------

struct StatmixArgs {
    CommonOptions common;
    std::string sample_file;
    std::string moments_file;
    int r = 0;
    int l = 0;
    int degree = -1;
};

int run_statmix(const StatmixArgs& a) {
    const auto t0 = std::chrono::steady_clock::now();
    if (a.sample_file.empty() == a.moments_file.empty())
        throw ValidationError("give exactly one of --sample or --moments");
    if (a.r < 1 || a.l < 0) throw ValidationError("need --components >= 1 and --order >= 0");
    const int d = a.degree > 0 ? a.degree : (a.l + 2) * a.r;
    if (d < (a.l + 2) * a.r) throw ValidationError("--degree must be at least (order+2)*components");

    std::string raw;
    MomentSequence<double> m({1.0}, true);
    if (!a.sample_file.empty()) {
        raw = read_input(a.sample_file);
        std::istringstream in(raw);
        std::vector<double> xs;
        try {
            xs = io::sample_from_csv(in);
        } catch (const std::invalid_argument& e) {
            throw ValidationError(e.what());
        }
        m = empirical_moments(xs, d);
    } else {
        const auto mc = load_moments(a.moments_file, &raw);
        m = realify_moments(mc, a.common.tol);
        if (!m.normalized) throw ValidationError("statmix moments must be normalized (m_0 = 1)");
    }

    LocalGaussianMixture est;
    try {
        est = estimate(m, a.r, a.l, make_config(a.common));
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    } catch (const std::runtime_error& e) {
        throw NumericalError(e.what());
    }

    json comps = json::array();
    for (int j = 0; j < est.size(); ++j)
        comps.push_back(json{{"xi", est.components[j].xi},
                             {"alphas", est.components[j].alphas},
                             {"weight", est.weights[j]}});
    if (a.common.format == "csv") {
        std::ostringstream os;
        os.precision(17);
        for (int j = 0; j < est.size(); ++j) {
            os << est.components[j].xi << "," << est.weights[j];
            for (double al : est.components[j].alphas) os << "," << al;
            os << "\n";
        }
        emit(a.common, os.str());
        return 0;
    }
    json report = base_report("statmix", raw, a.common);
    report["parameters"] =
        json{{"components", a.r}, {"order", a.l}, {"degree", d}};
    report["estimate"] = json{{"components", comps}};
    emit_report(a.common, std::move(report), t0);
    return 0;
}

// ---- ideal-check -------------------------------------------------------

struct IdealCheckArgs {
    CommonOptions common;
    std::string moments_file;
    std::string family = "first-order";
};

int run_ideal_check(const IdealCheckArgs& a) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string raw;
    const auto mc = load_moments(a.moments_file, &raw);
    const auto m = realify_moments(mc, a.common.tol);
    const int d = m.degree();
    double scale = 1.0;
    for (const auto& v : m.values) scale = std::max(scale, std::abs(v));

    struct Entry {
        std::string index;
        double value;
    };
    std::vector<Entry> entries;
    double gen_scale = scale * scale;
    if (a.family == "first-order") {
        if (d < 4) throw ValidationError("first-order family needs degree >= 4");
        for (int i = 2; i <= d - 2; ++i)
            for (int j = i; j <= d - 2; ++j)
                entries.push_back({"f_" + std::to_string(i) + "_" + std::to_string(j),
                                   eval_fij(m, i, j)});
    } else if (a.family == "cube") {
        if (d < 3) throw ValidationError("cube family needs degree >= 3");
        for (int a0 = 0; a0 + 3 <= d; ++a0)
            for (int a1 = a0; a1 + 3 <= d; ++a1)
                entries.push_back({"delta3_" + std::to_string(a0) + "_" + std::to_string(a1),
                                   eval_delta_power(m, a0, a1, 3)});
        gen_scale = scale * scale * scale;
    } else if (a.family == "second-order") {
        if (d < 6) throw ValidationError("second-order family needs degree >= 6");
        for (int j = 0; j + 3 <= d; ++j)
            for (int i = std::max(0, j - 3); i + 3 <= d; ++i)
                entries.push_back({"g_" + std::to_string(i) + "_" + std::to_string(j),
                                   eval_second_order_generator(m, i, j)});
    } else if (a.family == "pareto") {
        if (d < 4) throw ValidationError("pareto family needs degree >= 4");
        for (int i = 2; i <= d - 2; ++i)
            for (int j = i; j <= d - 2; ++j)
                entries.push_back({"p_" + std::to_string(i) + "_" + std::to_string(j),
                                   eval_pareto_generator(m, i, j)});
        gen_scale = scale * scale * scale * scale;
    } else if (a.family == "cremona") {
        if (d < 6) throw ValidationError("cremona family needs degree >= 6");
        const auto y = cremona_transform(m);
        double ys = 1.0;
        for (const auto& v : y) ys = std::max(ys, std::abs(v));
        for (int i = 3; i < static_cast<int>(y.size()); ++i)
            entries.push_back({"y_" + std::to_string(i + 1), y[i]});
        entries.push_back({"discriminant", eval_discriminant_quartic(y[0], y[1], y[2])});
        gen_scale = ys * ys * ys * ys;
    } else {
        throw ValidationError("unknown --family (first-order, cube, second-order, pareto, "
                              "cremona)");
    }

    double worst = 0;
    json items = json::array();
    for (const auto& e : entries) {
        const bool ok = std::abs(e.value) <= a.common.tol * gen_scale;
        worst = std::max(worst, std::abs(e.value));
        items.push_back(json{{"family", a.family},
                             {"index", e.index},
                             {"value", e.value},
                             {"scale", gen_scale},
                             {"pass", ok}});
    }
    const bool all_pass = worst <= a.common.tol * gen_scale;

    if (a.common.format == "csv") {
        std::ostringstream os;
        os.precision(17);
        for (const auto& e : entries)
            os << a.family << "," << e.index << "," << e.value << "," << gen_scale << ","
               << (std::abs(e.value) <= a.common.tol * gen_scale ? 1 : 0) << "\n";
        emit(a.common, os.str());
        return 0;
    }
    json report = base_report("ideal-check", raw, a.common);
    report["parameters"] = json{{"family", a.family}, {"tol", a.common.tol}};
    report["generators"] = items;
    report["worst_value"] = worst;
    report["scale"] = gen_scale;
    report["pass"] = all_pass;
    emit_report(a.common, std::move(report), t0);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("LOCMIX_THREADS")) {
        const int n = std::atoi(threads);
        if (n > 0) Eigen::setNbThreads(n);
    }

    CLI::App app{"Moment-based recovery of local mixture models"};
    app.require_subcommand(1);

    GenMomentsArgs gen;
    auto* cmd_gen = app.add_subcommand("gen-moments", "forward moments of a mixture");
    cmd_gen->add_option("--mixture", gen.mixture_file, "mixture JSON file");
    cmd_gen->add_option("--pareto", gen.pareto, "Pareto parameters alpha xi")->expected(2);
    cmd_gen->add_option("--degree", gen.degree, "highest moment degree")->required();
    add_common(cmd_gen, gen.common);

    RecoverArgs rec;
    auto* cmd_rec = app.add_subcommand("recover", "recover mixture parameters from moments");
    cmd_rec->add_option("--moments", rec.moments_file, "moments file (CSV or JSON)")->required();
    cmd_rec->add_option("--components,-r", rec.r, "number of components")->required();
    cmd_rec->add_option("--order,-l", rec.l, "component order")->required();
    cmd_rec->add_option("--method", rec.method, "auto or elimination");
    cmd_rec->add_flag("--statistical", rec.statistical, "require weights real in [0, 1]");
    add_common(cmd_rec, rec.common);

    FourierArgs fr;
    auto* cmd_fr = app.add_subcommand("fourier", "piecewise-linear signal <-> Fourier data");
    cmd_fr->add_option("--coeffs", fr.coeffs_file, "coefficient CSV (k,re,im) to reconstruct");
    cmd_fr->add_option("--segments", fr.segments, "number of signal segments");
    cmd_fr->add_option("--signal", fr.signal_file, "signal JSON for forward coefficients");
    cmd_fr->add_option("--bandwidth", fr.bandwidth, "highest coefficient index s");
    cmd_fr->add_option("--noise", fr.noise, "coefficient noise sigma (forward mode)");
    add_common(cmd_fr, fr.common);

    StatmixArgs sm;
    auto* cmd_sm = app.add_subcommand("statmix", "estimate a local Gaussian mixture");
    cmd_sm->add_option("--sample", sm.sample_file, "sample CSV (one value per line)");
    cmd_sm->add_option("--moments", sm.moments_file, "analytic moments file");
    cmd_sm->add_option("--components,-r", sm.r, "number of components")->required();
    cmd_sm->add_option("--order,-l", sm.l, "component order")->required();
    cmd_sm->add_option("--degree", sm.degree, "moment degree (default (order+2)*components)");
    add_common(cmd_sm, sm.common);

    IdealCheckArgs ic;
    auto* cmd_ic = app.add_subcommand("ideal-check", "evaluate vanishing certificates");
    cmd_ic->add_option("--moments", ic.moments_file, "moments file (CSV or JSON)")->required();
    cmd_ic->add_option("--family", ic.family,
                       "generator family: first-order, cube, second-order, pareto, cremona");
    ic.common.tol = 1e-9;
    add_common(cmd_ic, ic.common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (*cmd_gen) return run_gen_moments(gen);
        if (*cmd_rec) return run_recover(rec);
        if (*cmd_fr) return run_fourier(fr);
        if (*cmd_sm) return run_statmix(sm);
        if (*cmd_ic) return run_ideal_check(ic);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
