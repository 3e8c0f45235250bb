#include "creepwave/output.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "creepwave/asymptotics.hpp"
#include "creepwave/errors.hpp"
#include "creepwave/maslov.hpp"
#include "creepwave/oracle.hpp"

namespace creepwave::output {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string cell_to_string(const Cell& c) {
    if (std::holds_alternative<double>(c)) return format_g17(std::get<double>(c));
    if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
    return std::get<std::string>(c);
}

} // namespace

std::string OutputTable::to_csv() const {
    std::string out;
    for (const auto& line : provenance) out += "# " + line + "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
        out += columns[i] + (i + 1 < columns.size() ? "," : "");
    out += "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out += cell_to_string(row[i]) + (i + 1 < row.size() ? "," : "");
        out += "\n";
    }
    return out;
}

std::string OutputTable::to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size() && i < columns.size(); ++i) {
            const Cell& c = row[i];
            if (std::holds_alternative<double>(c))
                obj[columns[i]] = std::get<double>(c);
            else if (std::holds_alternative<long long>(c))
                obj[columns[i]] = std::get<long long>(c);
            else
                obj[columns[i]] = std::get<std::string>(c);
        }
        arr.push_back(obj);
    }
    return arr.dump(2) + "\n";
}

void RunConfig::validate() const {
    if (command != "modes" && command != "amplitude" && command != "compare" &&
        command != "raytrace" && command != "selftest")
        throw ConfigError("config: unknown command '" + command + "'");
    if (!(radius > 0.0)) throw ConfigError("config: radius must be positive");
    if (k_steps > 0) {
        if (!(k_min > 0.0) || !(k_max > k_min))
            throw ConfigError("config: k range requires 0 < k-min < k-max");
    } else if (!(k > 0.0)) {
        throw ConfigError("config: k must be positive");
    }
    // theta = 0 itself is reported by the amplitude evaluation, which can
    // name the offending grid row
    if (theta_min < 0.0 || theta_max > pi + 1e-12 || !(theta_max >= theta_min))
        throw ConfigError("config: theta range must lie within (0, pi]");
    if (theta_steps < 1) throw ConfigError("config: theta-steps must be >= 1");
    if (modes < 1) throw ConfigError("config: modes must be >= 1");
    if (tours < 0) throw ConfigError("config: tours must be >= 0");
    if (boundary != "dirichlet")
        throw ConfigError("config: only the dirichlet boundary condition is implemented");
    if (engine != "creeping" && engine != "exact")
        throw ConfigError("config: engine must be 'creeping' or 'exact'");
    if (!(calibration > 0.0)) throw ConfigError("config: calibration must be positive");
    if (lmax < 0) throw ConfigError("config: lmax must be >= 0");
    if (!(period_tolerance > 0.0)) throw ConfigError("config: period-tol must be positive");
    if (workers < 0) throw ConfigError("config: workers must be >= 0");
}

std::vector<std::string> RunConfig::echo() const {
    std::vector<std::string> out;
    out.push_back(std::string(version_string));
    out.push_back("command=" + command);
    if (k_steps > 0) {
        out.push_back("k-min=" + format_g17(k_min));
        out.push_back("k-max=" + format_g17(k_max));
        out.push_back("k-steps=" + std::to_string(k_steps));
    } else {
        out.push_back("k=" + format_g17(k));
    }
    out.push_back("radius=" + format_g17(radius));
    out.push_back("theta-min=" + format_g17(theta_min));
    out.push_back("theta-max=" + format_g17(theta_max));
    out.push_back("theta-steps=" + std::to_string(theta_steps));
    out.push_back("modes=" + std::to_string(modes));
    out.push_back("tours=" + std::to_string(tours));
    out.push_back("boundary=" + boundary);
    out.push_back("engine=" + engine);
    out.push_back("calibration=" + format_g17(calibration));
    out.push_back("fit-calibration=" + std::string(fit_calibration ? "1" : "0"));
    out.push_back("lmax=" + std::to_string(lmax));
    out.push_back("period-tol=" + format_g17(period_tolerance));
    out.push_back("seed=" + std::to_string(seed));
    return out;
}

void apply_key_value(RunConfig& cfg, const std::string& key, const std::string& value) {
    auto to_d = [&](const std::string& v) {
        try {
            std::size_t pos = 0;
            const double d = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return d;
        } catch (const std::exception&) {
            throw ConfigError("config: bad numeric value '" + value + "' for key '" + key + "'");
        }
    };
    auto to_i = [&](const std::string& v) {
        const double d = to_d(v);
        if (d != std::floor(d)) throw ConfigError("config: key '" + key + "' wants an integer");
        return static_cast<long long>(d);
    };
    if (key == "command") cfg.command = value;
    else if (key == "k") cfg.k = to_d(value);
    else if (key == "k-min") cfg.k_min = to_d(value);
    else if (key == "k-max") cfg.k_max = to_d(value);
    else if (key == "k-steps") cfg.k_steps = static_cast<int>(to_i(value));
    else if (key == "radius") cfg.radius = to_d(value);
    else if (key == "theta-min") cfg.theta_min = to_d(value);
    else if (key == "theta-max") cfg.theta_max = to_d(value);
    else if (key == "theta-steps") cfg.theta_steps = static_cast<int>(to_i(value));
    else if (key == "modes") cfg.modes = static_cast<int>(to_i(value));
    else if (key == "tours") cfg.tours = static_cast<int>(to_i(value));
    else if (key == "boundary") cfg.boundary = value;
    else if (key == "engine") cfg.engine = value;
    else if (key == "calibration") cfg.calibration = to_d(value);
    else if (key == "fit-calibration") cfg.fit_calibration = to_i(value) != 0;
    else if (key == "lmax") cfg.lmax = static_cast<int>(to_i(value));
    else if (key == "period-tol") cfg.period_tolerance = to_d(value);
    else if (key == "out") cfg.out_path = value;
    else if (key == "svg") cfg.svg_path = value;
    else if (key == "workers") cfg.workers = static_cast<int>(to_i(value));
    else if (key == "seed") cfg.seed = static_cast<unsigned long long>(to_i(value));
    else throw ConfigError("config: unknown key '" + key + "'");
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + " is not key=value");
        apply_key_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
    unsigned w = workers > 0 ? static_cast<unsigned>(workers) : std::thread::hardware_concurrency();
    if (w == 0) w = 1;
    w = std::min<unsigned>(w, n == 0 ? 1 : static_cast<unsigned>(n));
    if (w <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (unsigned t = 0; t < w; ++t) {
        pool.emplace_back([&, t]() {
            try {
                for (std::size_t i = t; i < n; i += w) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

OutputTable run_modes(const RunConfig& cfg) {
    cfg.validate();
    OutputTable t;
    t.provenance = cfg.echo();
    t.columns = {"i", "q_i", "beta_i", "re_lambda_i", "im_lambda_i", "re_mu_i", "im_mu_i",
                 "re_C_i", "im_C_i"};
    for (int i = 1; i <= cfg.modes; ++i) {
        const auto m = asymptotics::make_creeping_mode(i, cfg.k, cfg.radius, cfg.calibration);
        t.rows.push_back({static_cast<long long>(i), m.q, m.beta, m.lambda.real(), m.lambda.imag(),
                          m.mu.real(), m.mu.imag(), m.coefficient.real(), m.coefficient.imag()});
    }
    return t;
}

OutputTable run_amplitude(const RunConfig& cfg) {
    cfg.validate();
    const int n = cfg.theta_steps;
    std::vector<double> thetas(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        thetas[static_cast<std::size_t>(i)] =
            n == 1 ? cfg.theta_min
                   : cfg.theta_min + (cfg.theta_max - cfg.theta_min) * i / (n - 1.0);
    OutputTable t;
    t.provenance = cfg.echo();
    t.columns = {"theta", "re_f", "im_f", "abs_f"};

    if (cfg.engine != "exact") {
        // the creeping representation has a logarithmic singularity at 0;
        // the partial-wave engine is regular there
        for (int i = 0; i < n; ++i) {
            if (!(thetas[static_cast<std::size_t>(i)] > 0.0))
                throw DomainError("run_amplitude: row " + std::to_string(i) +
                                  ": theta = 0 hits the logarithmic singularity");
        }
    }

    if (cfg.engine == "exact") {
        // partial-wave oracle over the same grid and schema, so columns can
        // be compared side by side with the creeping output
        const int lmax = cfg.lmax > 0 ? cfg.lmax : oracle::default_l_max(cfg.k, cfg.radius);
        const auto table = oracle::phase_shifts(cfg.k, cfg.radius, lmax);
        std::vector<cplx> f(static_cast<std::size_t>(n));
        parallel_for(static_cast<std::size_t>(n), cfg.workers,
                     [&](std::size_t i) { f[i] = oracle::amplitude_at(table, thetas[i]); });
        for (int i = 0; i < n; ++i) {
            const cplx v = f[static_cast<std::size_t>(i)];
            t.rows.push_back(
                {thetas[static_cast<std::size_t>(i)], v.real(), v.imag(), std::abs(v)});
        }
        return t;
    }

    std::vector<asymptotics::AmplitudeBreakdown> results(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), cfg.workers, [&](std::size_t i) {
        results[i] =
            asymptotics::total_amplitude(cfg.k, cfg.radius, thetas[i], cfg.modes, cfg.calibration);
    });
    for (int i = 1; i <= cfg.modes; ++i) {
        t.columns.push_back("re_f_mode" + std::to_string(i));
        t.columns.push_back("im_f_mode" + std::to_string(i));
    }
    for (int i = 0; i < n; ++i) {
        const auto& b = results[static_cast<std::size_t>(i)];
        std::vector<Cell> row{thetas[static_cast<std::size_t>(i)], b.total.real(), b.total.imag(),
                              std::abs(b.total)};
        for (const cplx& m : b.mode_totals) {
            row.push_back(m.real());
            row.push_back(m.imag());
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

namespace {

// least-squares cubic fit, returning the evaluated trend
std::vector<double> cubic_trend(const std::vector<double>& x, const std::vector<double>& y) {
    const double x0 = x.front(), x1 = x.back();
    auto scale = [&](double v) { return 2.0 * (v - x0) / (x1 - x0) - 1.0; };
    double M[4][5] = {};
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double t = scale(x[i]);
        const double b[4] = {1.0, t, t * t, t * t * t};
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) M[r][c] += b[r] * b[c];
            M[r][4] += b[r] * y[i];
        }
    }
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
        std::swap(M[piv], M[col]);
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double f = M[r][col] / M[col][col];
            for (int c = col; c < 5; ++c) M[r][c] -= f * M[col][c];
        }
    }
    double coef[4];
    for (int r = 0; r < 4; ++r) coef[r] = M[r][4] / M[r][r];
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double t = scale(x[i]);
        out[i] = coef[0] + t * (coef[1] + t * (coef[2] + t * coef[3]));
    }
    return out;
}

} // namespace

CalibrationFit fit_calibration_backward(const std::vector<double>& ks, double R, int modes) {
    if (ks.size() < 32) throw DomainError("fit_calibration_backward: k grid too small");
    const std::size_t n = ks.size();
    std::vector<double> fe(n);
    std::vector<cplx> fm(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto t = oracle::phase_shifts(ks[i], R, oracle::default_l_max(ks[i], R));
        fe[i] = std::abs(oracle::amplitude_at(t, pi));
        fm[i] = asymptotics::total_amplitude(ks[i], R, pi, modes, 1.0).total;
    }
    const std::vector<double> trend = cubic_trend(ks, fe);

    // |f| = |f_spec + f_creep| ~ |f_spec| + Re(f_creep e^{-i arg f_spec});
    // with f_spec ~ -(R/2) e^{-2ikR} the oscillating part is a fixed linear
    // combination of Re and Im of e^{2ikR} f_model, so a 2x2 least squares
    // absorbs the unknown constant through the unknown reference phase
    double g11 = 0.0, g12 = 0.0, g22 = 0.0, r1 = 0.0, r2 = 0.0, rr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double resid = fe[i] - trend[i];
        const cplx rot = std::exp(cplx(0.0, 2.0 * ks[i] * R)) * fm[i];
        g11 += rot.real() * rot.real();
        g12 += rot.real() * rot.imag();
        g22 += rot.imag() * rot.imag();
        r1 += rot.real() * resid;
        r2 += rot.imag() * resid;
        rr += resid * resid;
    }
    const double det = g11 * g22 - g12 * g12;
    CalibrationFit out;
    out.rms_oscillation = std::sqrt(rr / n);
    if (det <= 0.0 || rr <= 0.0) return out;
    const double alpha = (g22 * r1 - g12 * r2) / det;
    const double beta = (g11 * r2 - g12 * r1) / det;
    out.calibration = std::hypot(alpha, beta);
    double misfit = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double resid = fe[i] - trend[i];
        const cplx rot = std::exp(cplx(0.0, 2.0 * ks[i] * R)) * fm[i];
        const double model = alpha * rot.real() + beta * rot.imag();
        misfit += (resid - model) * (resid - model);
    }
    out.relative_residual = std::sqrt(misfit / rr);
    return out;
}

CompareResult run_compare(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.k_steps < 512)
        throw ConfigError("config: compare needs a k range with k-steps >= 512");
    const int n = cfg.k_steps;
    std::vector<double> ks(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        ks[static_cast<std::size_t>(i)] = cfg.k_min + (cfg.k_max - cfg.k_min) * i / (n - 1.0);

    std::vector<cplx> f_exact(static_cast<std::size_t>(n));
    std::vector<cplx> f_asym(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), cfg.workers, [&](std::size_t i) {
        const double k = ks[i];
        const int lmax = cfg.lmax > 0 ? cfg.lmax : oracle::default_l_max(k, cfg.radius);
        const auto table = oracle::phase_shifts(k, cfg.radius, lmax);
        f_exact[i] = oracle::amplitude_at(table, pi);
        f_asym[i] =
            asymptotics::total_amplitude(k, cfg.radius, pi, cfg.modes, cfg.calibration).total;
    });

    CalibrationFit fit;
    if (cfg.fit_calibration) {
        fit = fit_calibration_backward(ks, cfg.radius, cfg.modes);
        for (auto& v : f_asym) v *= fit.calibration / cfg.calibration;
    }

    const auto probe = oracle::backward_interference_probe(ks, cfg.radius);

    CompareResult out;
    out.table.provenance = cfg.echo();
    out.table.columns = {"k", "re_f_exact_pi", "im_f_exact_pi", "abs_f_exact_pi",
                         "re_f_creep_pi", "im_f_creep_pi", "abs_f_creep_pi", "abs_rel_diff"};
    double mean_resid = 0.0;
    for (int i = 0; i < n; ++i) {
        const cplx fe = f_exact[static_cast<std::size_t>(i)];
        const cplx fa = f_asym[static_cast<std::size_t>(i)];
        const double rel = std::abs(std::abs(fa) - std::abs(fe)) / std::abs(fe);
        mean_resid += rel;
        out.table.rows.push_back({ks[static_cast<std::size_t>(i)], fe.real(), fe.imag(),
                                  std::abs(fe), fa.real(), fa.imag(), std::abs(fa), rel});
    }
    mean_resid /= n;

    const bool period_pass = probe.conclusive && probe.relative_error <= cfg.period_tolerance;
    out.pass = period_pass;
    out.summary.push_back("probe_conclusive=" + std::string(probe.conclusive ? "1" : "0"));
    out.summary.push_back("dk_extracted=" + format_g17(probe.dk_extracted));
    out.summary.push_back("dk_predicted=" + format_g17(probe.dk_predicted));
    out.summary.push_back("dk_relative_error=" + format_g17(probe.relative_error));
    out.summary.push_back("dk_peak_power=" + format_g17(probe.peak_power));
    out.summary.push_back("dk_noise_floor=" + format_g17(probe.noise_floor));
    out.summary.push_back("period_check=" + std::string(period_pass ? "PASS" : "FAIL"));
    if (cfg.fit_calibration) {
        out.summary.push_back("calibration_fit=" + format_g17(fit.calibration));
        out.summary.push_back("calibration_rms_oscillation=" + format_g17(fit.rms_oscillation));
        out.summary.push_back("calibration_relative_residual=" +
                              format_g17(fit.relative_residual));
    }
    out.summary.push_back("mean_magnitude_residual=" + format_g17(mean_resid));
    for (const auto& line : out.summary) out.table.provenance.push_back(line);
    return out;
}

namespace {

struct SvgMapper {
    double min_x, max_x, min_z, max_z, scale, pad;
    double X(double x) const { return pad + (x - min_x) * scale; }
    double Y(double z) const { return pad + (max_z - z) * scale; }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

} // namespace

std::string render_svg(const geometry::ObstacleScene& scene,
                       const std::vector<geometry::RayPath>& rays,
                       const std::vector<geometry::Vec3>& crossings) {
    using geometry::Vec3;
    // sample the rays to polylines and gather bounds
    std::vector<std::vector<Vec3>> polys;
    double min_x = -scene.radius, max_x = scene.radius;
    double min_z = -scene.radius, max_z = scene.radius;
    for (const auto& ray : rays) {
        std::vector<Vec3> poly;
        for (const auto& seg : ray.segments) {
            if (std::holds_alternative<geometry::StraightSegment>(seg)) {
                const auto& s = std::get<geometry::StraightSegment>(seg);
                poly.push_back(s.a);
                poly.push_back(s.b);
            } else {
                const auto& a = std::get<geometry::BoundaryArc>(seg);
                const int nsub = std::max(32, static_cast<int>(std::abs(a.ang1 - a.ang0) * 64.0));
                for (int i = 0; i <= nsub; ++i)
                    poly.push_back(a.point(a.ang0 + (a.ang1 - a.ang0) * i / nsub));
            }
        }
        for (const auto& p : poly) {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_z = std::min(min_z, p.z);
            max_z = std::max(max_z, p.z);
        }
        polys.push_back(std::move(poly));
    }
    const double span = std::max(max_x - min_x, max_z - min_z);
    SvgMapper m{min_x, max_x, min_z, max_z, 720.0 / (span > 0 ? span : 1.0), 40.0};
    const double W = m.X(max_x) + m.pad, H = m.Y(min_z) + m.pad;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(W) + "\" height=\"" +
           num(H) + "\" viewBox=\"0 0 " + num(W) + " " + num(H) + "\">\n";
    svg += "  <rect x=\"0\" y=\"0\" width=\"" + num(W) + "\" height=\"" + num(H) +
           "\" fill=\"white\"/>\n";
    // axial caustic: the symmetry axis through the scene
    svg += "  <line x1=\"" + num(m.X(0.0)) + "\" y1=\"" + num(m.Y(min_z)) + "\" x2=\"" +
           num(m.X(0.0)) + "\" y2=\"" + num(m.Y(max_z)) +
           "\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";
    // obstacle
    svg += "  <circle cx=\"" + num(m.X(0.0)) + "\" cy=\"" + num(m.Y(0.0)) + "\" r=\"" +
           num(scene.radius * m.scale) +
           "\" fill=\"#e8e8e8\" stroke=\"#222222\" stroke-width=\"1.5\"/>\n";
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    for (std::size_t r = 0; r < polys.size(); ++r) {
        svg += "  <polyline fill=\"none\" stroke=\"";
        svg += colors[r % 4];
        svg += "\" stroke-width=\"1.5\" points=\"";
        for (const auto& p : polys[r]) svg += num(m.X(p.x)) + "," + num(m.Y(p.z)) + " ";
        svg += "\"/>\n";
    }
    for (const auto& c : crossings) {
        svg += "  <circle class=\"cross\" cx=\"" + num(m.X(c.x)) + "\" cy=\"" + num(m.Y(c.z)) +
               "\" r=\"5\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

RaytraceResult run_raytrace(const RunConfig& cfg) {
    cfg.validate();
    geometry::ObstacleScene scene;
    scene.radius = cfg.radius;
    const double theta = cfg.theta_min; // raytrace draws the first grid angle
    RaytraceResult out;
    std::vector<geometry::RayPath> rays;
    std::vector<geometry::Vec3> crossings;
    for (Sense s : {Sense::counterclockwise, Sense::clockwise}) {
        const auto ray = geometry::sphere_diffracted_ray(scene, theta, cfg.tours, s);
        out.ray_export += export_raypath(ray);
        const auto pts = geometry::axis_crossings(ray, scene);
        out.crossing_counts.push_back(static_cast<int>(pts.size()));
        for (const auto& p : pts) { // one mark per distinct caustic point
            bool dup = false;
            for (const auto& c : crossings)
                if (geometry::norm(c - p) < 1e-7 * scene.radius) dup = true;
            if (!dup) crossings.push_back(p);
        }
        rays.push_back(ray);
    }
    out.svg = render_svg(scene, rays, crossings);
    return out;
}

int run_selftest(const RunConfig& cfg, std::string& report) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        report += std::string(ok ? "PASS" : "FAIL") + "  " + name + "\n";
        if (!ok) ++failures;
    };

    {
        bool ok = true; // crossing map is a bijection onto the naturals
        std::vector<char> seen(2001, 0);
        for (int m = -1000; m <= 1000; ++m) {
            const int c = geometry::crossing_number(m);
            if (c < 0 || c > 2000 || seen[static_cast<std::size_t>(c)]) ok = false;
            else seen[static_cast<std::size_t>(c)] = 1;
        }
        for (char s : seen) ok = ok && s;
        check("crossing-number bijection on [-1000, 1000]", ok);
    }
    {
        bool ok = true; // resummation identity over random Im lambda > 0.1
        std::uniform_real_distribution<double> re(0.0, 50.0), im(0.1, 5.0);
        for (int i = 0; i < 100 && ok; ++i) {
            const cplx lam(re(rng), im(rng));
            cplx sum = 0.0;
            for (int nn = 0; nn < 400; ++nn) {
                const double sg = nn % 2 == 0 ? 1.0 : -1.0;
                sum += sg * std::exp(cplx(0.0, 1.0) * (2.0 * pi * static_cast<double>(nn) * lam));
                if (std::exp(-2.0 * pi * (nn + 1.0) * lam.imag()) < 1e-18) break;
            }
            const cplx lhs = 1.0 / (2.0 * std::cos(pi * lam));
            const cplx rhs = std::exp(cplx(0.0, 1.0) * (pi * lam)) * sum;
            ok = std::abs(lhs - rhs) <= 1e-13 * std::abs(lhs);
        }
        check("tour resummation identity (100 random degrees)", ok);
    }
    {
        bool ok = true; // damping exponent vs pole position
        std::uniform_real_distribution<double> kd(0.5, 60.0), rd(0.2, 4.0);
        for (int i = 0; i < 20 && ok; ++i) {
            const double k = kd(rng), R = rd(rng);
            for (int n = 1; n <= 5 && ok; ++n) {
                const double lhs = R * asymptotics::damping_exponent(n, k, R);
                const double rhs = oracle::regge_pole_asymptotic(n, k, R).imag();
                ok = std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs);
            }
        }
        check("damping identity Im(lambda_i) = R*beta_i (20 random scenes)", ok);
    }
    {
        bool ok = true; // Wronskian spot checks
        for (double x : {1.0, 10.0, 100.0}) {
            const auto t = specfun::spherical_bessel_table(201, x);
            for (int l = 1; l <= 200; ++l) {
                const long double X = x;
                const long double jp = t.j[static_cast<std::size_t>(l) - 1] -
                                       (l + 1.0L) / X * t.j[static_cast<std::size_t>(l)];
                const long double yp = t.y[static_cast<std::size_t>(l) - 1] -
                                       (l + 1.0L) / X * t.y[static_cast<std::size_t>(l)];
                const long double w =
                    t.j[static_cast<std::size_t>(l)] * yp - jp * t.y[static_cast<std::size_t>(l)];
                if (std::abs(static_cast<double>(w * X * X - 1.0L)) > 1e-10) ok = false;
            }
        }
        check("spherical Bessel Wronskian (l <= 200, x in {1,10,100})", ok);
    }
    {
        bool ok = true; // optical theorem at three sizes
        for (double kr : {1.0, 10.0, 50.0}) {
            const auto t = oracle::phase_shifts(kr, 1.0, oracle::default_l_max(kr, 1.0));
            const double lhs = oracle::total_cross_section(t);
            const double rhs = 4.0 * pi / kr * oracle::amplitude_at(t, 0.0).imag();
            if (std::abs(lhs - rhs) > 1e-8 * std::abs(lhs)) ok = false;
        }
        check("optical theorem at kR in {1, 10, 50}", ok);
    }
    return failures;
}

} // namespace creepwave::output
