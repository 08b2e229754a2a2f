// Command-line surface for the polygonal-metrics library: closed-form
// constants, table reproduction, figure-data emitters and numeric scans.
//
// Exit codes: 0 success, 1 usage or parameter error, 2 a mathematical
// invariant failed during a scan.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polymetric/extremal.hpp"
#include "polymetric/serialize.hpp"

using namespace polymetric;

namespace {

struct Output {
    std::string path;  // empty: stdout
    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            if (!text.empty() && text.back() != '\n') std::cout << '\n';
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file: " + path);
        f << text;
        if (!text.empty() && text.back() != '\n') f << '\n';
    }
};

Point parse_point(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("complex values are written re,im");
    return Point(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
}

// "start..end" ranges, sampled with a separate count flag
std::pair<double, double> parse_range(const std::string& s) {
    const auto dots = s.find("..");
    if (dots == std::string::npos)
        throw CLI::ValidationError("ranges are written start..end");
    return {std::stod(s.substr(0, dots)), std::stod(s.substr(dots + 2))};
}

ConvexPolygon load_polygon(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open polygon file: " + path);
    nlohmann::json j;
    f >> j;
    std::vector<Point> vertices;
    for (const auto& v : j.at("vertices"))
        vertices.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    return ConvexPolygon(std::move(vertices));
}

std::vector<ExtremalReport> constants_reports(double k) {
    const double k_norm = k < 1.0 ? 1.0 / k : k;
    const EllipticModulus m = rect_modulus(k_norm);
    const CLambdaRoutes routes = c_lambda_routes(m);
    std::vector<ExtremalReport> out;
    out.push_back({"rect_modulus", m.lambda, Point(k_norm, 0.0), "root of K(l)/K'(l) = 1/(2k)",
                   std::abs(m.k_complete / m.k_prime - 0.5 / k_norm), ""});
    out.push_back({"c_lambda", routes.via_quotient, Point(k_norm - 1.0, 0.0),
                   "K(l)*|cn*dn/sn| at i*K(l)",
                   std::abs(routes.via_quotient - routes.via_a), ""});
    out.push_back({"c_tilde", c_tilde(m.lambda), Point(m.lambda, 0.0),
                   "C(l) below the square modulus, C(h(l)) above",
                   std::abs(c_tilde(m.lambda) - routes.via_quotient), ""});
    out.push_back(half_strip_constant());
    const double g = gamma_fn(0.25);
    const double square = g * g / (4.0 * std::sqrt(std::numbers::pi));
    out.push_back({"square_constant", square, Point(0.0, 0.0), "Gamma(1/4)^2/(4*sqrt(pi))",
                   std::abs(square - ngon_ratio(4).value), ""});
    const double strip = 0.5 * std::numbers::pi;
    out.push_back({"strip_constant", strip, Point(0.0, 0.0), "pi/2",
                   std::abs(strip - sector_ratio(1e-8).value), ""});
    return out;
}

std::string xy_csv_row(double a, double b) { return csv_num(a) + "," + csv_num(b) + "\n"; }

int run(int argc, char** argv) {
    CLI::App app{"metrics and extremal constants in polygonal domains"};
    app.require_subcommand(1);

    std::string format = "json";
    std::string output_path;
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output", output_path, "output file (default: stdout)");

    double k = 1.0;
    double alpha = 4.0 / 3.0, beta_param = 2.0 / 3.0, d5_alpha = 0.5;
    std::string x_str = "0.7,-0.4";
    std::string radii_str = "0.1..0.9";
    int grid = 200, directions = 256, pairs = 10000, count = 9;
    std::uint64_t seed = 7;
    std::string polygon_path;
    bool full_axis = false;

    auto* constants = app.add_subcommand("constants", "sharp constants for a rectangle aspect");
    constants->add_option("--k", k, "rectangle half-width")->required();

    auto* table = app.add_subcommand("table", "tabulate a constant family");
    std::string table_name;
    table->add_option("family", table_name, "m1, m2, ngon or rhomb")
        ->required()
        ->check(CLI::IsMember({"m1", "m2", "ngon", "rhomb"}));
    table->add_option("--grid", grid, "extra evenly spaced rows (0: published rows only)")
        ->default_val(0);

    auto* emit = app.add_subcommand("emit", "figure data as plottable point sets");
    std::string emit_name;
    emit->add_option("what", emit_name,
                     "regions, s-circle, sigma, medial, ctilde-curve, m3-curve or rhomb-curve")
        ->required()
        ->check(CLI::IsMember({"regions", "s-circle", "sigma", "medial", "ctilde-curve",
                               "m3-curve", "rhomb-curve"}));
    emit->add_option("--k", k, "rectangle half-width");
    emit->add_option("--x", x_str, "base point re,im");
    emit->add_option("--grid", grid, "grid resolution");
    emit->add_option("--directions", directions, "rays per s-circle");
    emit->add_option("--radii", radii_str, "radius range start..end");
    emit->add_option("--count", count, "number of radii in the range");
    emit->add_option("--polygon", polygon_path, "polygon JSON file {\"vertices\":[[x,y],...]}");
    emit->add_flag("--full", full_axis, "medial: keep the boundary spokes");

    auto* scan = app.add_subcommand("scan", "numeric scans of the rectangle bounds");
    std::string scan_name;
    scan->add_option("what", scan_name, "conjecture, rect-ratio, lemma-limit or monotone")
        ->required()
        ->check(CLI::IsMember({"conjecture", "rect-ratio", "lemma-limit", "monotone"}));
    scan->add_option("--k", k, "rectangle half-width");
    scan->add_option("--pairs", pairs, "sample count");
    scan->add_option("--seed", seed, "PRNG seed");
    scan->add_option("--grid", grid, "grid resolution")->default_val(64);

    auto* report = app.add_subcommand("report", "extremal reports for the analytic domains");
    std::string domain_name;
    report->add_option("domain", domain_name, "d1, d2, d3, d4 or d5")
        ->required()
        ->check(CLI::IsMember({"d1", "d2", "d3", "d4", "d5"}));
    report->add_option("--alpha", alpha, "d3 coefficient of z (d5: lemniscate parameter)");
    report->add_option("--beta", beta_param, "d3 coefficient of z^2");
    report->add_option("--d5-alpha", d5_alpha, "d5 parameter in [0,1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 1;
    }

    const Output out{output_path};
    const bool csv = format == "csv";

    if (*constants) {
        const auto reports = constants_reports(k);
        out.write(csv ? to_csv(reports) : to_json(reports));
        return 0;
    }

    if (*table) {
        std::vector<std::pair<double, double>> rows;
        if (table_name == "m1") {
            for (double a : {1.0 / 12.0, 1.0 / 6.0, 0.25, 5.0 / 12.0})
                rows.emplace_back(a, triangle_m1(a).value);
            for (int i = 1; i <= grid; ++i) {
                const double a = 0.5 * i / (grid + 1.0);
                rows.emplace_back(a, triangle_m1(a).value);
            }
        } else if (table_name == "m2") {
            for (double a : {2.0 / 3.0, 0.75, 5.0 / 6.0})
                rows.emplace_back(a, triangle_m2(a).value);
            for (int i = 1; i <= grid; ++i) {
                const double a = 0.5 + 0.5 * i / (grid + 1.0);
                rows.emplace_back(a, triangle_m2(a).value);
            }
        } else if (table_name == "ngon") {
            const int n_max = grid > 0 ? grid : 12;
            for (int n = 3; n <= n_max; ++n) rows.emplace_back(n, ngon_ratio(n).value);
        } else {  // rhomb
            const int n = grid > 0 ? grid : 9;
            for (int i = 1; i <= n; ++i) {
                const double d = 0.5 * std::numbers::pi * i / n;
                rows.emplace_back(d, rhomb_ratio(d).value);
            }
        }
        if (csv) {
            std::string text = "parameter,value\n";
            for (const auto& [p, v] : rows) text += xy_csv_row(p, v);
            out.write(text);
        } else {
            std::string text = "[";
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i) text += ",";
                text += "\n  {\"parameter\": " + json_num(rows[i].first) +
                        ", \"value\": " + json_num(rows[i].second) + "}";
            }
            text += "\n]";
            out.write(text);
        }
        return 0;
    }

    if (*emit) {
        if (emit_name == "regions") {
            const Rectangle R(k);
            const int n = grid > 2 ? grid : 200;
            const auto g = rect_nearest_side_regions(R, parse_point(x_str), n);
            std::string text = "x,y,label\n";
            for (int iy = 0; iy < n; ++iy)
                for (int ix = 0; ix < n; ++ix) {
                    const Point c = g.cell_center(ix, iy);
                    text += csv_num(c.real()) + "," + csv_num(c.imag()) + "," +
                            std::to_string(g.labels[std::size_t(iy) * n + ix]) + "\n";
                }
            out.write(text);
        } else if (emit_name == "s-circle") {
            const Rectangle R(k);
            const Point x = parse_point(x_str);
            const auto [r_lo, r_hi] = parse_range(radii_str);
            std::string text = "radius,theta,x,y\n";
            bool any_flag = false;
            for (int i = 0; i < count; ++i) {
                const double r = count == 1 ? r_lo : r_lo + (r_hi - r_lo) * i / (count - 1.0);
                const auto c = s_circle(R, x, r, directions);
                any_flag = any_flag || !c.omitted_rays.empty() || !c.nonmonotone_rays.empty();
                for (std::size_t j = 0; j < c.points.size(); ++j) {
                    const double theta = 2.0 * std::numbers::pi * j / directions;
                    text += csv_num(r) + "," + csv_num(theta) + "," +
                            csv_num(c.points[j].real()) + "," + csv_num(c.points[j].imag()) + "\n";
                }
            }
            out.write(text);
            if (any_flag) std::cerr << "note: some rays were omitted or non-monotone\n";
        } else if (emit_name == "sigma") {
            out.write(to_json(sigma_segments(Rectangle(k))));
        } else if (emit_name == "medial") {
            const ConvexPolygon P =
                polygon_path.empty() ? ConvexPolygon(Rectangle(k)) : load_polygon(polygon_path);
            out.write(to_json(full_axis ? medial_axis(P) : medial_graph(P)));
        } else if (emit_name == "ctilde-curve") {
            std::string text = "lambda,value\n";
            for (int i = 1; i <= grid; ++i) {
                const double lam = double(i) / (grid + 1.0);
                text += xy_csv_row(lam, c_tilde(lam));
            }
            out.write(text);
        } else if (emit_name == "m3-curve") {
            std::string text = "alpha,value\n";
            for (int i = 1; i <= grid; ++i) {
                const double a = double(i) / (grid + 1.0);
                text += xy_csv_row(a, m3(a));
            }
            out.write(text);
        } else {  // rhomb-curve
            std::string text = "delta,value\n";
            for (int i = 1; i <= grid; ++i) {
                const double d = 0.5 * std::numbers::pi * i / grid;
                text += xy_csv_row(d, rhomb_ratio(d).value);
            }
            out.write(text);
        }
        return 0;
    }

    if (*scan) {
        if (scan_name == "conjecture") {
            const auto r = conjecture_scan(Rectangle(k), pairs, seed);
            out.write(to_json(r));
            return r.lower_violations == 0 ? 0 : 2;
        }
        if (scan_name == "rect-ratio") {
            const auto r = rect_extremal_scan(Rectangle(k), grid < 16 ? 64 : grid);
            out.write(to_json(r));
            return (r.all_above_one && r.argmax_at_corner_points && r.max_matches_c) ? 0 : 2;
        }
        if (scan_name == "lemma-limit") {
            const double k_norm = k < 1.0 ? 1.0 / k : k;
            const RectMap m = make_rect_map(k_norm);
            const int side = std::max(2, int(std::lround(std::sqrt(double(grid)))));
            const double margin = 0.12;
            double worst = 0.0;
            for (int i = 0; i < side; ++i)
                for (int j = 0; j < side; ++j) {
                    const Point v(-k_norm + margin + (i + 0.5) * 2.0 * (k_norm - margin) / side,
                                  -1.0 + margin + (j + 0.5) * 2.0 * (1.0 - margin) / side);
                    worst = std::max(worst, std::abs(local_ratio(m, v, 1e-4) - ratio_rect(m, v)));
                }
            const bool ok = worst <= 1e-3;
            std::string text = "{\"scan\": \"lemma-limit\", \"k\": " + json_num(k_norm) +
                               ", \"samples\": " + std::to_string(side * side) +
                               ", \"max_abs_diff\": " + json_num(worst) +
                               ", \"tolerance\": 0.001, \"ok\": " + (ok ? "true" : "false") + "}";
            out.write(text);
            return ok ? 0 : 2;
        }
        // monotone
        std::mt19937_64 rng(seed);
        auto u01 = [&rng]() { return double(rng() >> 11) * 0x1.0p-53; };
        const Rectangle R(k < 1.0 ? 1.0 / k : k);
        int violations = 0;
        double worst = 0.0;
        for (int i = 0; i < pairs; ++i) {
            Point z0;
            do {
                z0 = Point((2.0 * u01() - 1.0) * R.k, 2.0 * u01() - 1.0);
            } while (R.k - std::abs(z0.real()) < 1e-2 || 1.0 - std::abs(z0.imag()) < 1e-2);
            const auto rep = segment_monotonicity_check(R, z0);
            if (!rep.ok) ++violations;
            worst = std::max(worst, rep.max_excess);
        }
        const std::string text = "{\"scan\": \"monotone\", \"k\": " + json_num(R.k) +
                                 ", \"segments\": " + std::to_string(pairs) +
                                 ", \"violations\": " + std::to_string(violations) +
                                 ", \"max_excess\": " + json_num(worst) + "}";
        out.write(text);
        return violations == 0 ? 0 : 2;
    }

    if (*report) {
        std::vector<ExtremalReport> reports;
        if (domain_name == "d1") reports = domain_report_d1();
        else if (domain_name == "d2") reports = domain_report_d2();
        else if (domain_name == "d3") reports = domain_report_d3(alpha, beta_param);
        else if (domain_name == "d4") reports = domain_report_d4();
        else reports = domain_report_d5(d5_alpha);
        out.write(csv ? to_csv(reports) : to_json(reports));
        return 0;
    }

    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::domain_error& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
