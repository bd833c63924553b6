// Batch front-end for the Reinhardt toolkit: polygon families, density
// tables, Fuller-system experiments, the blowup unstable curve, and the
// chaos sweep in hyperboloid coordinates.
//
// Exit codes: 0 success, 2 usage error, 3 numerical contract violation.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "reinhardt/blowup.h"
#include "reinhardt/extremals.h"
#include "reinhardt/fuller.h"
#include "reinhardt/geometry.h"
#include "reinhardt/hyperboloid.h"

using json = nlohmann::json;
using namespace reinhardt;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kPi = 3.14159265358979323846;

// Contract breaches detected by a command (distinct from usage errors).
struct ContractViolation : std::runtime_error {
    explicit ContractViolation(const std::string& msg)
        : std::runtime_error(msg) {}
};

struct Common {
    double tol_abs = 1e-10;
    double tol_rel = 1e-10;
    std::uint64_t seed = 0;
    std::string out = ".";
    std::string format = "csv";
};

json meta_block(const Common& c) {
    return {{"version", kVersion},
            {"seed", c.seed},
            {"tolerances", {{"abs", c.tol_abs}, {"rel", c.tol_rel}}}};
}

std::ofstream open_out(const Common& c, const std::string& name) {
    std::filesystem::create_directories(c.out);
    std::ofstream os(std::filesystem::path(c.out) / name);
    if (!os) throw std::runtime_error("cannot open output file " + name);
    os.precision(17);
    return os;
}

void write_json(const Common& c, const std::string& name, const json& j) {
    open_out(c, name) << j.dump(2) << "\n";
}

// Minimal polyline SVG; presentation only, excluded from byte-level
// reproducibility.
void write_svg(const Common& c, const std::string& name,
               const std::vector<std::complex<double>>& pts) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& p : pts) {
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
    }
    const double span = std::max(xmax - xmin, ymax - ymin);
    const double s = 500.0 / (span > 0 ? span : 1.0);
    auto os = open_out(c, name);
    os.precision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"520\" "
          "height=\"520\" viewBox=\"0 0 520 520\">\n<polyline fill=\"none\" "
          "stroke=\"black\" stroke-width=\"1\" points=\"";
    for (const auto& p : pts)
        os << 10 + s * (p.real() - xmin) << "," << 10 + s * (ymax - p.imag())
           << " ";
    os << "\"/>\n</svg>\n";
}

// --- polygon ---

int cmd_polygon(const Common& c, int k, const std::string& family) {
    const PolygonFamily fam =
        family == "minus" ? PolygonFamily::Minus : PolygonFamily::Plus;
    if (fam == PolygonFamily::Minus && k == 1) {
        // the 6k-2 family degenerates at k = 1 to a 2 x sqrt(3) rectangle
        // of area sqrt(12), which tiles the plane
        json j = meta_block(c);
        j["k"] = 1;
        j["family"] = family;
        j["n"] = 4;
        j["degenerate"] = true;
        j["area"] = std::sqrt(12.0);
        j["density"] = 1.0;
        j["extremal"] = false;
        write_json(c, "polygon_params.json", j);
        const double h = std::sqrt(3.0) / 2.0;
        const std::vector<std::complex<double>> box = {
            {1, -h}, {1, h}, {-1, h}, {-1, -h}, {1, -h}};
        auto os = open_out(c, "polygon_boundary.csv");
        os << "x,y\n";
        for (const auto& z : box) os << z.real() << "," << z.imag() << "\n";
        if (c.format == "svg") write_svg(c, "polygon_boundary.svg", box);
        std::cout.precision(12);
        std::cout << "n 4  area " << std::sqrt(12.0) << "  density 1 "
                  << "(degenerate rectangle)\n";
        return 0;
    }
    PolygonParams p;
    try {
        p = solve_polygon(k, fam);
    } catch (const std::domain_error& e) {
        std::cerr << "polygon: " << e.what() << "\n";
        return 2;
    }
    p.check();

    json j = meta_block(c);
    j["k"] = p.k;
    j["family"] = family;
    j["n"] = fam == PolygonFamily::Plus ? 6 * k + 2 : 6 * k - 2;
    j["y0"] = p.y0;
    j["t_sw"] = p.t_sw;
    j["area"] = p.area;
    j["density"] = p.density;
    j["extremal"] = p.extremal;
    write_json(c, "polygon_params.json", j);

    const auto boundary = polygon_boundary(p, 48);
    auto os = open_out(c, "polygon_boundary.csv");
    os << "x,y\n";
    for (const auto& z : boundary) os << z.real() << "," << z.imag() << "\n";
    if (c.format == "svg") write_svg(c, "polygon_boundary.svg", boundary);

    std::cout.precision(12);
    std::cout << "n " << j["n"].get<int>() << "  area " << p.area
              << "  density " << p.density << "\n";
    return 0;
}

// --- density-table ---

int cmd_density_table(const Common& c, int k_max) {
    auto os = open_out(c, "density_table.csv");
    os << "n,family,k,area,density\n";
    const double bound = kPi / std::sqrt(12.0);
    double prev_plus = 0, prev_minus = 1e300;
    for (int k = 1; k <= k_max; ++k) {
        const PolygonParams p = solve_polygon(k, PolygonFamily::Plus);
        os << 6 * k + 2 << ",plus," << k << "," << p.area << "," << p.density
           << "\n";
        if (!(p.area > prev_plus) || !(p.area < kPi))
            throw ContractViolation("plus-family areas must increase to pi");
        if (!(p.density < bound))
            throw ContractViolation("plus-family density reached pi/sqrt(12)");
        prev_plus = p.area;
        if (k == 1) {
            std::cout.precision(6);
            std::cout << "n 8  area " << p.area << "  density " << p.density
                      << "\n";
        }
    }
    // the minus family degenerates at k = 1; its areas exceed pi and
    // decrease toward it
    for (int k = 2; k <= k_max; ++k) {
        const PolygonParams p = solve_polygon(k, PolygonFamily::Minus);
        os << 6 * k - 2 << ",minus," << k << "," << p.area << "," << p.density
           << "\n";
        if (!(p.area > kPi) || !(p.area < prev_minus))
            throw ContractViolation("minus-family areas must decrease to pi");
        prev_minus = p.area;
    }
    return 0;
}

// --- fuller ---

int cmd_fuller_spiral(const Common& c) {
    {
        auto os = open_out(c, "fuller_log_spiral.csv");
        os << "t,re_z1,im_z1,re_z2,im_z2,re_z3,im_z3\n";
        for (int i = 0; i <= 500; ++i) {
            const double t = 0.1 + (10.0 - 0.1) * i / 500.0;
            const FullerState z = log_spiral(t);
            os << t << "," << z.z1.real() << "," << z.z1.imag() << ","
               << z.z2.real() << "," << z.z2.imag() << "," << z.z3.real()
               << "," << z.z3.imag() << "\n";
        }
    }
    {
        // expanding triangular spiral from the self-similar seed
        auto os = open_out(c, "fuller_triangular_spiral.csv");
        os << "t,re_z3,im_z3,re_u,im_u\n";
        FullerState z = q_out_state();
        double t0 = 0;
        // z3 grows by r_scale^3 = 247 per period; six periods stay well
        // inside double-precision root finding
        for (int seg = 0; seg < 6; ++seg) {
            const SwitchInfo sw = first_switch(z);
            for (int i = 0; i < 40; ++i) {
                const double s = sw.t_sw * i / 40.0;
                const FullerState zs = triangular_segment(z, sw.control, s);
                os << t0 + s << "," << zs.z3.real() << "," << zs.z3.imag()
                   << "," << sw.control.real() << "," << sw.control.imag()
                   << "\n";
            }
            t0 += sw.t_sw;
            z = sw.state;
        }
    }
    return 0;
}

int cmd_fuller_fixed(const Common& c) {
    const double r = r_scale();
    const double t_sw = q_out_switch_time();

    FullerState q = to_wall_representative(q_out_state());
    q = virial(q, 0.0, 1.0 / phi_norm(q));
    const FullerState fq = fuller_poincare_angular(q);
    const double residual = std::abs(fq.z1 - q.z1) + std::abs(fq.z2 - q.z2) +
                            std::abs(fq.z3 - q.z3);
    const auto eigs = q_out_section_eigs();

    json j = meta_block(c);
    j["r_scale"] = r;
    j["t_sw"] = t_sw;
    j["fixed_point_residual"] = residual;
    const CellCoordinates co = cell_coords(q_out_state());
    const CellCoordinates ci = cell_coords(q_in_state());
    j["q_out"] = {co.r2, co.psi, co.theta2};
    j["q_in"] = {ci.r2, ci.psi, ci.theta2};
    json je = json::array();
    for (const auto& e : eigs) je.push_back(std::abs(e));
    j["section_eig_moduli"] = je;
    write_json(c, "fuller_fixed.json", j);

    std::cout.precision(13);
    std::cout << "r_scale " << r << "\n";
    std::cout.precision(6);
    std::cout << "t_sw " << t_sw << "\n";

    if (residual > 1e-9)
        throw ContractViolation("fixed-point residual exceeded 1e-9");
    for (const auto& e : eigs)
        if (std::abs(e) >= 0.1)
            throw ContractViolation("section spectrum is not contracting");
    return 0;
}

int cmd_fuller_basin(const Common& c, int samples) {
    const BasinReport rep = basin_check(samples, c.seed);
    json j = meta_block(c);
    j["boundary_samples"] = rep.boundary_samples;
    j["boundary_failures"] = rep.boundary_failures;
    j["table_samples"] = rep.table_samples;
    j["table_failures"] = rep.table_failures;
    j["orbits"] = rep.orbits;
    j["converged"] = rep.converged;
    j["max_iterations"] = rep.max_iterations;
    write_json(c, "fuller_basin.json", j);
    std::cout << "converged: " << rep.converged << "/" << rep.orbits << "\n";
    if (!rep.ok()) throw ContractViolation("basin certificate failed");
    return 0;
}

int cmd_fuller_special(const Common& c) {
    // trajectory through (1, 2i, 2): tangent to the diagonal x2 = x3 at
    // (2, 2), crossing back at a second point near t = 0.9
    const FullerState z0 = {Cx(1, 0), Cx(0, 2), Cx(2, 0)};
    auto gate = [&](double t) {
        const FullerState z = fuller_flow_circular(z0, t, 1e-12);
        return std::real(z.z2 * std::conj(z.z1));
    };
    double lo = 0.5, hi = 1.2;
    for (int i = 0; i < 60; ++i) {
        const double m = 0.5 * (lo + hi);
        (gate(m) < 0 ? lo : hi) = m;
    }
    const double crossing = 0.5 * (lo + hi);

    auto os = open_out(c, "fuller_special.csv");
    os << "t,x2,x3\n";
    FullerState z = z0;
    const double dt = 0.02;
    for (int i = 0; i <= 600; ++i) {
        const BaseSpacePoint p = base_project(z);
        os << i * dt << "," << p.eps2 * p.x2 << "," << p.eps3 * p.x3 << "\n";
        z = fuller_flow_circular(z, dt, 1e-11);
    }
    std::cout.precision(6);
    std::cout << "diagonal crossing at t = " << crossing << "\n";
    if (std::abs(crossing - 0.9) > 0.1)
        throw ContractViolation("diagonal crossing left the expected window");
    return 0;
}

// --- unstable ---

int cmd_unstable(const Common& c, double max_r, double step) {
    const UnstableCurveResult uc = unstable_curve(max_r, step);
    auto os = open_out(c, "unstable_curve.csv");
    os << "r,xt21,lt11,lt21\n";
    std::vector<std::complex<double>> pts;
    for (const auto& p : uc.points) {
        os << p.r << "," << p.xt21 << "," << p.lt11 << "," << p.lt21 << "\n";
        pts.emplace_back(p.r, p.xt21);
    }
    if (c.format == "svg") write_svg(c, "unstable_curve.svg", pts);

    json j = meta_block(c);
    j["points"] = uc.points.size();
    j["boundary_r"] = uc.boundary_r;
    j["boundary_xt21"] = uc.points.empty() ? 0.0 : uc.points.back().xt21;
    j["exit_onset_r"] = uc.exit_onset_r;
    j["cyclic"] = uc.cyclic;
    write_json(c, "unstable_summary.json", j);

    std::cout.precision(6);
    std::cout << "star boundary at (r, xt21) = (" << uc.boundary_r << ", "
              << (uc.points.empty() ? 0.0 : uc.points.back().xt21) << ")\n";
    if (!uc.cyclic)
        throw ContractViolation("switching order lost cyclicity on the curve");
    return 0;
}

// --- chaos ---

// Hyperboloid sweep at fixed angular momentum: b is recovered from A0 with
// the sign that reproduces the reference behavior (drift at A0 = 3, near
// periodicity at A0 = 2.5).
WBCState chaos_state(double A0, double w0, double c0) {
    WBCState s;
    s.rho = 1.1;
    s.d1 = 1.5;
    s.eps = 1;
    s.lambda_cost = -1.0;
    s.w = Cx(w0, 0);
    s.c = Cx(c0, 0);
    const double bb =
        (A0 + 2.0 * re_pair(s.w, s.c) / bracket_norm(s.w, 1)) / (2.0 * s.d1);
    s.b = Cx(-std::sqrt(bb * bb - 1.0), 0);
    return s;
}

int cmd_chaos(const Common& c) {
    // divergence thresholds frozen after calibration on this integrator
    const double kBounded = 0.05, kDrift = 0.2;
    for (double A0 : {3.0, 2.5}) {
        WBCState a = chaos_state(A0, 1.5, 0.5);
        WBCState b = chaos_state(A0, 1.495, 0.5);
        auto os = open_out(c, A0 == 3.0 ? "chaos_A3.csv" : "chaos_A2.5.csv");
        os << "t,abs_w_1,abs_w_2\n";
        double divergence = 0;
        const double dt = 0.01;
        os << 0.0 << "," << std::abs(a.w) << "," << std::abs(b.w) << "\n";
        for (int i = 1; i <= 2000; ++i) {
            a = wbc_integrate(a, dt);
            b = wbc_integrate(b, dt);
            divergence =
                std::max(divergence, std::abs(std::abs(a.w) - std::abs(b.w)));
            os << i * dt << "," << std::abs(a.w) << "," << std::abs(b.w)
               << "\n";
        }
        std::cout.precision(6);
        std::cout << "A0 = " << A0 << "  divergence " << divergence << "\n";
        if (A0 == 3.0 && divergence < kDrift)
            throw ContractViolation("A0 = 3 trajectories failed to drift");
        if (A0 == 2.5 && divergence > kBounded)
            throw ContractViolation("A0 = 2.5 trajectories failed to stay close");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reinhardt packing optimal-control toolkit"};
    app.require_subcommand(1);

    Common c;
    app.add_option("--tol-abs", c.tol_abs, "absolute integrator tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--tol-rel", c.tol_rel, "relative integrator tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", c.seed, "RNG seed");
    app.add_option("--out", c.out, "output directory");
    app.add_option("--format", c.format, "boundary/trace format")
        ->check(CLI::IsMember({"csv", "json", "svg"}));

    int k = 1, k_max = 10, samples = 1000;
    std::string family = "plus";
    double max_r = 0.25, step = 5e-4;

    auto* polygon = app.add_subcommand("polygon", "smoothed polygon family");
    polygon->fallthrough();
    polygon->add_option("--k", k, "family index")->check(CLI::PositiveNumber);
    polygon->add_option("--family", family, "plus (6k+2) or minus (6k-2)")
        ->check(CLI::IsMember({"plus", "minus"}));

    auto* table = app.add_subcommand("density-table", "area/density table");
    table->fallthrough();
    table->add_option("--k-max", k_max, "largest family index")
        ->check(CLI::PositiveNumber);

    auto* fuller = app.add_subcommand("fuller", "Fuller-system experiments");
    fuller->fallthrough();
    fuller->require_subcommand(1);
    auto* spiral = fuller->add_subcommand("spiral", "log/triangular spirals");
    spiral->fallthrough();
    auto* fixed = fuller->add_subcommand("fixed", "self-similar fixed point");
    fixed->fallthrough();
    auto* basin = fuller->add_subcommand("basin", "basin certificate");
    basin->fallthrough();
    basin->add_option("--samples", samples, "samples per certificate part")
        ->check(CLI::PositiveNumber);
    auto* special = fuller->add_subcommand("special", "diagonal crossing");
    special->fallthrough();

    auto* unstable = app.add_subcommand("unstable", "blowup unstable curve");
    unstable->fallthrough();
    unstable->add_option("--max-r", max_r, "trace up to this radius")
        ->check(CLI::PositiveNumber);
    unstable->add_option("--step", step, "radial resampling step")
        ->check(CLI::PositiveNumber);

    auto* chaos = app.add_subcommand("chaos", "hyperboloid divergence sweep");
    chaos->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (polygon->parsed()) return cmd_polygon(c, k, family);
        if (table->parsed()) return cmd_density_table(c, k_max);
        if (fuller->parsed()) {
            if (spiral->parsed()) return cmd_fuller_spiral(c);
            if (fixed->parsed()) return cmd_fuller_fixed(c);
            if (basin->parsed()) return cmd_fuller_basin(c, samples);
            if (special->parsed()) return cmd_fuller_special(c);
        }
        if (unstable->parsed()) return cmd_unstable(c, max_r, step);
        if (chaos->parsed()) return cmd_chaos(c);
    } catch (const ContractViolation& e) {
        std::cerr << "contract violation: " << e.what() << "\n";
        return 3;
    } catch (const ReinhardtError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
