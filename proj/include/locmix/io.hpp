#ifndef LOCMIX_IO_HPP
#define LOCMIX_IO_HPP

#include <complex>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fourier.hpp"
#include "moments.hpp"
#include "scalar.hpp"

namespace locmix::io {

using nlohmann::json;

namespace detail {

inline std::string strip(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(strip(field));
    return fields;
}

inline double parse_double(const std::string& s) {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("invalid numeric field: '" + s + "'");
    return v;
}

inline json complex_json(const cplx& v) { return json{{"re", v.real()}, {"im", v.imag()}}; }

inline cplx complex_from_json(const json& j) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    return cplx(j.at("re").get<double>(), j.at("im").get<double>());
}

}  // namespace detail

// ---- moment sequences -------------------------------------------------

/// One value per line; complex values as "re,im", real values as "re".
inline std::string moments_to_csv(const MomentSequence<cplx>& m) {
    std::ostringstream os;
    os.precision(17);
    for (const auto& v : m.values) os << v.real() << "," << v.imag() << "\n";
    return os.str();
}

inline std::string moments_to_csv(const MomentSequence<double>& m) {
    std::ostringstream os;
    os.precision(17);
    for (const auto& v : m.values) os << v << "\n";
    return os.str();
}

inline MomentSequence<cplx> moments_from_csv(std::istream& in) {
    std::vector<cplx> vals;
    std::string line;
    while (std::getline(in, line)) {
        line = detail::strip(line);
        if (line.empty() || line[0] == '#') continue;
        const auto fields = detail::split_csv_line(line);
        if (fields.size() == 1)
            vals.emplace_back(detail::parse_double(fields[0]), 0.0);
        else if (fields.size() == 2)
            vals.emplace_back(detail::parse_double(fields[0]), detail::parse_double(fields[1]));
        else
            throw std::invalid_argument("moments CSV: expected 1 or 2 fields per line");
    }
    if (vals.empty()) throw std::invalid_argument("moments CSV: no values");
    const bool norm = vals[0] == cplx{1.0};
    return MomentSequence<cplx>(std::move(vals), norm);
}

inline json moments_to_json(const MomentSequence<cplx>& m) {
    json arr = json::array();
    bool real = true;
    for (const auto& v : m.values)
        if (v.imag() != 0) real = false;
    for (const auto& v : m.values) {
        if (real)
            arr.push_back(v.real());
        else
            arr.push_back(detail::complex_json(v));
    }
    return json{{"moments", arr}, {"normalized", m.normalized}};
}

inline MomentSequence<cplx> moments_from_json(const json& j) {
    std::vector<cplx> vals;
    for (const auto& v : j.at("moments")) vals.push_back(detail::complex_from_json(v));
    const bool norm = j.value("normalized", !vals.empty() && vals[0] == cplx{1.0});
    return MomentSequence<cplx>(std::move(vals), norm);
}

// ---- mixtures ----------------------------------------------------------

inline json mixture_to_json(const LocalDiracMixture<cplx>& mix) {
    json comps = json::array();
    for (const auto& c : mix.components) {
        json lambdas = json::array();
        for (const auto& l : c.lambdas) lambdas.push_back(detail::complex_json(l));
        comps.push_back(json{{"xi", detail::complex_json(c.xi)}, {"lambdas", lambdas}});
    }
    return json{{"components", comps}};
}

inline json mixture_to_json(const LocalDiracMixture<double>& mix) {
    json comps = json::array();
    for (const auto& c : mix.components)
        comps.push_back(json{{"xi", c.xi}, {"lambdas", c.lambdas}});
    return json{{"components", comps}};
}

inline LocalDiracMixture<cplx> mixture_from_json(const json& j) {
    LocalDiracMixture<cplx> mix;
    for (const auto& c : j.at("components")) {
        DiracComponent<cplx> comp;
        comp.xi = detail::complex_from_json(c.at("xi"));
        for (const auto& l : c.at("lambdas")) comp.lambdas.push_back(detail::complex_from_json(l));
        if (comp.lambdas.empty())
            throw std::invalid_argument("mixture JSON: each component needs lambda_0");
        mix.components.push_back(std::move(comp));
    }
    return mix;
}

// ---- signals and Fourier samples ---------------------------------------

inline json signal_to_json(const PiecewiseLinearSignal& sig) {
    return json{{"breakpoints", sig.breakpoints}, {"values", sig.values}, {"slopes", sig.slopes}};
}

inline PiecewiseLinearSignal signal_from_json(const json& j) {
    PiecewiseLinearSignal sig;
    sig.breakpoints = j.at("breakpoints").get<std::vector<double>>();
    sig.values = j.at("values").get<std::vector<double>>();
    sig.slopes = j.at("slopes").get<std::vector<double>>();
    sig.validate();
    return sig;
}

/// Fourier CSV: one "k,re,im" line per coefficient, k = -s..s.
inline std::string fourier_to_csv(const FourierSamples& c) {
    std::ostringstream os;
    os.precision(17);
    for (int k = -c.s; k <= c.s; ++k)
        os << k << "," << c.c(k).real() << "," << c.c(k).imag() << "\n";
    return os.str();
}

inline FourierSamples fourier_from_csv(std::istream& in) {
    std::vector<std::pair<int, cplx>> rows;
    std::string line;
    int kmax = 0;
    while (std::getline(in, line)) {
        line = detail::strip(line);
        if (line.empty() || line[0] == '#') continue;
        const auto fields = detail::split_csv_line(line);
        if (fields.size() != 3)
            throw std::invalid_argument("Fourier CSV: expected 'k,re,im' per line");
        const int k = static_cast<int>(detail::parse_double(fields[0]));
        rows.emplace_back(k, cplx(detail::parse_double(fields[1]), detail::parse_double(fields[2])));
        kmax = std::max(kmax, std::abs(k));
    }
    if (rows.empty()) throw std::invalid_argument("Fourier CSV: no rows");
    FourierSamples out;
    out.s = kmax;
    out.coefficients.assign(2 * kmax + 1, cplx{0.0});
    std::vector<bool> seen(2 * kmax + 1, false);
    for (const auto& [k, v] : rows) {
        if (seen[k + kmax]) throw std::invalid_argument("Fourier CSV: duplicate index");
        seen[k + kmax] = true;
        out.c(k) = v;
    }
    for (bool s : seen)
        if (!s) throw std::invalid_argument("Fourier CSV: missing index in -s..s");
    return out;
}

/// Sample CSV: one real value per line.
inline std::vector<double> sample_from_csv(std::istream& in) {
    std::vector<double> xs;
    std::string line;
    while (std::getline(in, line)) {
        line = detail::strip(line);
        if (line.empty() || line[0] == '#') continue;
        xs.push_back(detail::parse_double(line));
    }
    if (xs.empty()) throw std::invalid_argument("sample CSV: no values");
    return xs;
}

inline std::string sample_to_csv(const std::vector<double>& xs) {
    std::ostringstream os;
    os.precision(17);
    for (double x : xs) os << x << "\n";
    return os.str();
}

// ---- file helpers -------------------------------------------------------

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << content;
}

}  // namespace locmix::io

#endif
