#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct CliResult {
    int exit_code;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(POLYMETRIC_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return CliResult{WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("constants command") {
    const auto r = run_cli("constants --k 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("1.8540746773") != std::string::npos);
    CHECK(r.out.find("\"c_lambda\"") != std::string::npos);
    CHECK(r.out.find("\"half_strip_m0\"") != std::string::npos);
    SECTION("quarter-turn symmetry: k and 1/k agree byte for byte") {
        const auto a = run_cli("constants --k 0.5");
        const auto b = run_cli("constants --k 2");
        CHECK(a.exit_code == 0);
        CHECK(a.out == b.out);
    }
    SECTION("large aspect approaches the half-strip constant") {
        const auto big = run_cli("constants --k 1000000");
        CHECK(big.exit_code == 0);
        CHECK(big.out.find("1.71268857") != std::string::npos);
    }
}

TEST_CASE("table command") {
    SECTION("published isosceles-triangle rows") {
        const auto r = run_cli("table m1 --format csv");
        CHECK(r.exit_code == 0);
        CHECK(r.out.rfind("parameter,value\n", 0) == 0);
        CHECK(r.out.find("1.652782373") != std::string::npos);
        CHECK(r.out.find("1.714708744") != std::string::npos);
        CHECK(r.out.find("1.753405362") != std::string::npos);
        CHECK(r.out.find("1.753152525") != std::string::npos);
    }
    SECTION("published unbounded-triangle rows") {
        const auto r = run_cli("table m2 --format csv");
        CHECK(r.out.find("1.554662095759") != std::string::npos);
        CHECK(r.out.find("1.441224578770") != std::string::npos);
        CHECK(r.out.find("1.308765658869") != std::string::npos);
    }
    SECTION("cross-family rows: n-gon covers the triangle and square values") {
        const auto ngon = run_cli("table ngon --format csv");
        CHECK(ngon.exit_code == 0);
        CHECK(ngon.out.find("1.766638") != std::string::npos);     // equals M1(1/3)
        CHECK(ngon.out.find("1.854074677") != std::string::npos);  // equals rhomb(pi/2)
        const auto rhomb = run_cli("table rhomb --format csv");
        CHECK(rhomb.out.find("1.854074677") != std::string::npos);
    }
}

TEST_CASE("emit command") {
    SECTION("s-circle point counts and header") {
        const auto r = run_cli("emit s-circle --k 1.4 --x 0.7,-0.4 --directions 64 --format csv");
        CHECK(r.exit_code == 0);
        CHECK(count_lines(r.out) == 1 + 9 * 64);
        CHECK(r.out.rfind("radius,theta,x,y\n", 0) == 0);
    }
    SECTION("regions grid") {
        const auto r = run_cli("emit regions --k 1.4 --x 0.7,-0.4 --grid 50");
        CHECK(r.exit_code == 0);
        CHECK(count_lines(r.out) == 1 + 50 * 50);
    }
    SECTION("sigma graph") {
        const auto r = run_cli("emit sigma --k 2");
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("\"nodes\"") != std::string::npos);
        CHECK(r.out.find("\"edges\"") != std::string::npos);
    }
    SECTION("medial graph of a polygon file") {
        const std::string path = "/tmp/polymetric_test_hexagon.json";
        {
            std::ofstream f(path);
            f << "{\"vertices\": [[1,0],[0.5,0.87],[-0.5,0.87],[-1,0],[-0.5,-0.87],[0.5,-0.87]]}";
        }
        const auto r = run_cli("emit medial --polygon " + path);
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("\"nodes\"") != std::string::npos);
        std::remove(path.c_str());
    }
    SECTION("curve emitters") {
        const auto ct = run_cli("emit ctilde-curve --grid 40");
        CHECK(ct.exit_code == 0);
        CHECK(count_lines(ct.out) == 41);
        const auto m3c = run_cli("emit m3-curve --grid 20");
        CHECK(count_lines(m3c.out) == 21);
        const auto rh = run_cli("emit rhomb-curve --grid 20");
        CHECK(count_lines(rh.out) == 21);
    }
}

TEST_CASE("scan command") {
    SECTION("conjecture scan is clean and reproducible") {
        const auto a = run_cli("scan conjecture --k 1.4 --pairs 2000 --seed 7");
        CHECK(a.exit_code == 0);
        CHECK(a.out.find("\"lower_violations\": 0") != std::string::npos);
        CHECK(a.out.find("conjecture-supporting") != std::string::npos);
        const auto b = run_cli("scan conjecture --k 1.4 --pairs 2000 --seed 7");
        CHECK(a.out == b.out);
    }
    SECTION("rectangle ratio scan") {
        const auto r = run_cli("scan rect-ratio --k 1.4 --grid 64");
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("\"max_matches_c\": true") != std::string::npos);
    }
    SECTION("local limit scan") {
        const auto r = run_cli("scan lemma-limit --k 2 --grid 64");
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("\"ok\": true") != std::string::npos);
    }
    SECTION("segment monotonicity scan") {
        const auto r = run_cli("scan monotone --k 2 --pairs 25 --seed 3");
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("\"violations\": 0") != std::string::npos);
    }
}

TEST_CASE("report command") {
    const auto d1 = run_cli("report d1");
    CHECK(d1.exit_code == 0);
    CHECK(d1.out.find("d1_ratio_max") != std::string::npos);
    CHECK(d1.out.find("1.85318") != std::string::npos);
    const auto d2 = run_cli("report d2");
    CHECK(d2.out.find("d2_radius_max_real_axis") != std::string::npos);
    CHECK(d2.out.find("\"note\"") != std::string::npos);  // the published octic discrepancy
    const auto d5 = run_cli("report d5 --d5-alpha 0.5");
    CHECK(d5.out.find("\"note\"") != std::string::npos);  // printed-location mismatch
    const auto d4csv = run_cli("report d4 --format csv");
    CHECK(d4csv.out.find("1.561469") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run_cli("nonsense").exit_code == 1);
    CHECK(run_cli("constants").exit_code == 1);        // missing required --k
    CHECK(run_cli("constants --k 0").exit_code == 1);  // parameter error
    CHECK(run_cli("table unknown").exit_code == 1);
    CHECK(run_cli("scan conjecture --k 1.4 --pairs 0").exit_code == 1);
    CHECK(run_cli("report d3 --alpha 1 --beta 0.9").exit_code == 1);
}
