// End-to-end checks of the command-line tool: each test shells out to the
// built binary (path injected at compile time) through files in a scratch
// directory.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <locmix/io.hpp>
#include <locmix/moments.hpp>
#include <locmix/statmix.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
    int exit_code;
    std::string output_path;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "locmix_cli_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path scratch_file(const std::string& name) { return scratch_dir() / name; }

int run_cli(const std::string& args) {
    const std::string cmd = std::string(LOCMIX_CLI_PATH) + " " + args + " > " +
                            (scratch_dir() / "stdout.txt").string() + " 2> " +
                            (scratch_dir() / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string strip_timing(std::string text) {
    // the timing field is the only run-to-run variation in a report
    static const std::regex timing_re("\"timing_seconds\": [^,\\n]+");
    return std::regex_replace(text, timing_re, "\"timing_seconds\": X");
}

json load_json(const fs::path& p) { return json::parse(locmix::io::read_file(p.string())); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen-moments emits the reference sequence and feeds recover") {
    const auto mix_path = scratch_file("mix.json");
    locmix::io::write_file(mix_path.string(),
                           R"({"components":[{"xi":2.0,"lambdas":[1.0,1.0]}]})");
    const auto mom_path = scratch_file("moments.csv");
    REQUIRE(run_cli("gen-moments --mixture " + mix_path.string() +
                    " --degree 4 --format csv --out " + mom_path.string()) == 0);

    std::ifstream in(mom_path);
    const auto m = locmix::io::moments_from_csv(in);
    REQUIRE(m.values.size() == 5);
    const double want[] = {1, 3, 8, 20, 48};
    for (int i = 0; i <= 4; ++i) CHECK(m[i].real() == doctest::Approx(want[i]));

    const auto rec_path = scratch_file("recovered.json");
    REQUIRE(run_cli("recover --moments " + mom_path.string() +
                    " --components 1 --order 1 --out " + rec_path.string()) == 0);
    const auto report = load_json(rec_path);
    const auto mix = locmix::io::mixture_from_json(report.at("mixture"));
    REQUIRE(mix.size() == 1);
    CHECK(std::abs(mix.components[0].xi - locmix::cplx{2.0}) < 1e-8);
    CHECK(std::abs(mix.components[0].lambdas[0] - locmix::cplx{1.0}) < 1e-8);
    CHECK(std::abs(mix.components[0].lambdas[1] - locmix::cplx{1.0}) < 1e-8);
    CHECK(report.at("seed") == 0);
    CHECK(report.contains("input_digest"));
    CHECK(report.contains("timing_seconds"));
}

TEST_CASE("elimination and default recovery agree on a two-component instance") {
    locmix::LocalDiracMixture<double> mix;
    mix.components.push_back({-1.0, {0.3, 0.3 * 0.4}});
    mix.components.push_back({1.5, {0.7, 0.7 * -0.2}});
    const auto m = locmix::local_dirac_moments(mix, 7);
    const auto mom_path = scratch_file("two_mix.csv");
    locmix::io::write_file(mom_path.string(), locmix::io::moments_to_csv(m));
    // the elimination route needs only degree 6
    std::vector<double> six(m.values.begin(), m.values.begin() + 7);
    locmix::io::write_file(scratch_file("two_mix6.csv").string(),
                           locmix::io::moments_to_csv(
                               locmix::MomentSequence<double>(six, true)));

    const auto a_path = scratch_file("rec_auto.json");
    const auto e_path = scratch_file("rec_elim.json");
    REQUIRE(run_cli("recover --moments " + mom_path.string() +
                    " --components 2 --order 1 --out " + a_path.string()) == 0);
    REQUIRE(run_cli("recover --moments " + scratch_file("two_mix6.csv").string() +
                    " --components 2 --order 1 --method elimination --out " +
                    e_path.string()) == 0);
    auto ma = locmix::io::mixture_from_json(load_json(a_path).at("mixture"));
    auto me = locmix::io::mixture_from_json(load_json(e_path).at("mixture"));
    REQUIRE(ma.size() == 2);
    REQUIRE(me.size() == 2);
    auto by_xi = [](locmix::LocalDiracMixture<locmix::cplx>& mm) {
        std::sort(mm.components.begin(), mm.components.end(),
                  [](const auto& x, const auto& y) { return x.xi.real() < y.xi.real(); });
    };
    by_xi(ma);
    by_xi(me);
    for (int j = 0; j < 2; ++j) {
        CHECK(std::abs(ma.components[j].xi - me.components[j].xi) < 1e-6);
        CHECK(std::abs(ma.components[j].lambdas[0] - me.components[j].lambdas[0]) < 1e-6);
        CHECK(std::abs(ma.components[j].lambdas[1] - me.components[j].lambdas[1]) < 1e-6);
    }
}

TEST_CASE("reports are byte-identical across runs apart from timing") {
    const auto mom_path = scratch_file("det.csv");
    locmix::LocalDiracMixture<double> mix;
    mix.components.push_back({0.5, {0.6, 0.1}});
    mix.components.push_back({-1.25, {0.4, -0.3}});
    locmix::io::write_file(mom_path.string(),
                           locmix::io::moments_to_csv(locmix::local_dirac_moments(mix, 7)));
    const auto r1 = scratch_file("det1.json"), r2 = scratch_file("det2.json");
    REQUIRE(run_cli("recover --moments " + mom_path.string() +
                    " --components 2 --order 1 --seed 5 --out " + r1.string()) == 0);
    REQUIRE(run_cli("recover --moments " + mom_path.string() +
                    " --components 2 --order 1 --seed 5 --out " + r2.string()) == 0);
    CHECK(strip_timing(locmix::io::read_file(r1.string())) ==
          strip_timing(locmix::io::read_file(r2.string())));
}

TEST_CASE("validation failures exit with code 2") {
    CHECK(run_cli("recover --moments /nonexistent.csv --components 1 --order 0") == 2);
    const auto mom_path = scratch_file("short.csv");
    locmix::io::write_file(mom_path.string(), "1\n2\n3\n");
    CHECK(run_cli("recover --moments " + mom_path.string() + " --components 2 --order 1") == 2);
    CHECK(run_cli("recover --moments " + mom_path.string() + " --components 0 --order 0") == 2);
    CHECK(run_cli("recover --moments " + mom_path.string() +
                  " --components 1 --order 0 --method bogus") == 2);
    CHECK(run_cli("recover") == 2);                   // missing required flags
    CHECK(run_cli("not-a-subcommand") == 2);          // unknown subcommand
    const auto mix_path = scratch_file("empty_mix.json");
    locmix::io::write_file(mix_path.string(), R"({"components":[]})");
    CHECK(run_cli("gen-moments --mixture " + mix_path.string() + " --degree 3") == 2);
}

TEST_CASE("fourier forward and reconstruction roundtrip") {
    const auto sig_path = scratch_file("signal.json");
    locmix::io::write_file(
        sig_path.string(),
        R"({"breakpoints":[-2.0,-0.5,1.0],"values":[0.8,-0.4],"slopes":[0.25,0.5]})");
    const auto coeff_path = scratch_file("coeffs.csv");
    REQUIRE(run_cli("fourier --signal " + sig_path.string() +
                    " --bandwidth 8 --format csv --out " + coeff_path.string()) == 0);
    const auto rec_path = scratch_file("signal_rec.json");
    REQUIRE(run_cli("fourier --coeffs " + coeff_path.string() + " --segments 3 --out " +
                    rec_path.string()) == 0);
    const auto report = load_json(rec_path);
    const auto sig = locmix::io::signal_from_json(report.at("signal"));
    REQUIRE(sig.segments() == 3);
    CHECK(sig.breakpoints[0] == doctest::Approx(-2.0).epsilon(1e-7));
    CHECK(sig.breakpoints[1] == doctest::Approx(-0.5).epsilon(1e-7));
    CHECK(sig.breakpoints[2] == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(sig.values[0] == doctest::Approx(0.8).epsilon(1e-6));
    CHECK(sig.slopes[1] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(run_cli("fourier --signal " + sig_path.string() + " --coeffs " + coeff_path.string() +
                  " --segments 3") == 2);
}

TEST_CASE("statmix estimates from a generated sample") {
    const locmix::LocalGaussianMixture gm({{-1.0, {}}, {2.0, {}}}, {0.4, 0.6});
    const auto xs = locmix::sample(gm, 5000, 11);
    const auto sample_path = scratch_file("sample.csv");
    locmix::io::write_file(sample_path.string(), locmix::io::sample_to_csv(xs));
    const auto est_path = scratch_file("estimate.json");
    REQUIRE(run_cli("statmix --sample " + sample_path.string() +
                    " --components 2 --order 0 --degree 5 --out " + est_path.string()) == 0);
    const auto report = load_json(est_path);
    const auto& comps = report.at("estimate").at("components");
    REQUIRE(comps.size() == 2);
    CHECK(std::abs(comps[0].at("xi").get<double>() + 1.0) < 0.25);
    CHECK(std::abs(comps[1].at("xi").get<double>() - 2.0) < 0.25);
    CHECK(std::abs(comps[0].at("weight").get<double>() - 0.4) < 0.15);
}

TEST_CASE("ideal-check reports vanishing and non-vanishing families") {
    locmix::LocalDiracMixture<double> mix;
    mix.components.push_back({1.5, {1.0, 0.5}});
    const auto m = locmix::local_dirac_moments(mix, 8);
    const auto mom_path = scratch_file("ideal_in.csv");
    locmix::io::write_file(mom_path.string(), locmix::io::moments_to_csv(m));

    const auto out_path = scratch_file("ideal_out.json");
    REQUIRE(run_cli("ideal-check --moments " + mom_path.string() +
                    " --family first-order --out " + out_path.string()) == 0);
    auto report = load_json(out_path);
    CHECK(report.at("pass") == true);
    REQUIRE(report.at("generators").size() > 0);
    const auto& first = report.at("generators")[0];
    CHECK(first.contains("family"));
    CHECK(first.contains("index"));
    CHECK(first.contains("value"));
    CHECK(first.contains("scale"));
    CHECK(first.contains("pass"));

    // generic sequence: generators must not vanish
    locmix::io::write_file(scratch_file("generic.csv").string(), "1\n2\n3\n5\n8\n13\n21\n34\n55\n");
    REQUIRE(run_cli("ideal-check --moments " + scratch_file("generic.csv").string() +
                    " --family first-order --out " + out_path.string()) == 0);
    CHECK(load_json(out_path).at("pass") == false);

    CHECK(run_cli("ideal-check --moments " + mom_path.string() + " --family bogus") == 2);
}

}  // TEST_SUITE
