#include "ovw/gronwall.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>

#include <json.hpp>

#include "ovw/errors.hpp"
#include "ovw/grid.hpp"

namespace ovw::gronwall {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// log(exp(a) + exp(b)) without overflow.
double log_add(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

std::vector<double> union_mesh(const std::vector<const TimeProfile*>& profiles) {
    std::vector<double> t;
    for (const auto* p : profiles) t.insert(t.end(), p->times.begin(), p->times.end());
    std::sort(t.begin(), t.end());
    std::vector<double> out;
    for (double x : t) {
        if (out.empty() || x - out.back() > 1e-12 * std::max(1.0, std::abs(x))) out.push_back(x);
    }
    return out;
}

TimeProfile resample(const TimeProfile& p, const std::vector<double>& mesh) {
    TimeProfile out;
    out.times = mesh;
    out.values.reserve(mesh.size());
    for (double t : mesh) out.values.push_back(p.value_at(t));
    return out;
}

/// Raises each node by (local max slope) * (local spacing) / 4 and returns the added integral.
double pad(TimeProfile& p) {
    const std::size_t n = p.times.size();
    if (n < 2) return 0.0;
    std::vector<double> add(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double slope = 0.0;
        double width = 0.0;
        if (i > 0) {
            const double d = p.times[i] - p.times[i - 1];
            slope = std::max(slope, std::abs(p.values[i] - p.values[i - 1]) / d);
            width = std::max(width, d);
        }
        if (i + 1 < n) {
            const double d = p.times[i + 1] - p.times[i];
            slope = std::max(slope, std::abs(p.values[i + 1] - p.values[i]) / d);
            width = std::max(width, d);
        }
        add[i] = 0.25 * slope * width;
    }
    double extra = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) extra += 0.5 * (p.times[i + 1] - p.times[i]) * (add[i] + add[i + 1]);
    for (std::size_t i = 0; i < n; ++i) p.values[i] += add[i];
    return extra;
}

/// Uniform mesh spacing or 0 when the mesh is not uniform.
double uniform_spacing(const TimeProfile& p) {
    const std::size_t n = p.times.size();
    const double span = p.times.back() - p.times.front();
    const double d = span / static_cast<double>(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs((p.times[i + 1] - p.times[i]) - d) > 1e-9 * d) return 0.0;
    }
    return d;
}

TimeProfile refine(const TimeProfile& p, int factor) {
    TimeProfile out;
    const std::size_t n = p.times.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (int s = 0; s < factor; ++s) {
            const double w = static_cast<double>(s) / factor;
            out.times.push_back(p.times[i] + w * (p.times[i + 1] - p.times[i]));
            out.values.push_back(p.values[i] + w * (p.values[i + 1] - p.values[i]));
        }
    }
    out.times.push_back(p.times.back());
    out.values.push_back(p.values.back());
    return out;
}

std::string hex64(std::uint64_t x) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

}  // namespace

TimeProfile TimeProfile::constant(double value, double t_end, std::size_t intervals) {
    if (intervals == 0 || !(t_end > 0.0)) throw InputError("TimeProfile::constant: empty mesh");
    TimeProfile p;
    for (std::size_t i = 0; i <= intervals; ++i) {
        p.times.push_back(t_end * static_cast<double>(i) / static_cast<double>(intervals));
        p.values.push_back(value);
    }
    return p;
}

void TimeProfile::validate() const {
    if (times.empty()) throw InputError("time profile: empty mesh");
    if (times.size() != values.size()) throw InputError("time profile: size mismatch");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i])) throw InputError("time profile: non-finite time");
        if (!std::isfinite(values[i]) || values[i] < 0.0) {
            throw InputError("time profile: values must be finite and nonnegative");
        }
        if (i > 0 && !(times[i] > times[i - 1])) throw InputError("time profile: times must increase");
    }
}

double TimeProfile::value_at(double t) const {
    if (t <= times.front()) return values.front();
    if (t >= times.back()) return values.back();
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - times.begin());
    const double w = (t - times[i - 1]) / (times[i] - times[i - 1]);
    return values[i - 1] + w * (values[i] - values[i - 1]);
}

double TimeProfile::integral() const { return integral(times.front(), times.back()); }

double TimeProfile::integral(double a, double b) const {
    if (b <= a) return 0.0;
    double sum = 0.0;
    double prev_t = a;
    double prev_v = value_at(a);
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] <= a) continue;
        if (times[i] >= b) break;
        sum += 0.5 * (times[i] - prev_t) * (values[i] + prev_v);
        prev_t = times[i];
        prev_v = values[i];
    }
    sum += 0.5 * (b - prev_t) * (value_at(b) + prev_v);
    return sum;
}

double TimeProfile::max() const { return *std::max_element(values.begin(), values.end()); }

std::uint64_t TimeProfile::digest() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](const std::vector<double>& v) {
        for (double x : v) {
            unsigned char bytes[sizeof(double)];
            std::memcpy(bytes, &x, sizeof bytes);
            for (unsigned char b : bytes) {
                h ^= b;
                h *= 0x100000001b3ULL;
            }
        }
    };
    mix(times);
    mix(values);
    return h;
}

double theta_of(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("theta_of: sigma must be positive");
    return sigma / (4.0 + sigma);
}

double default_c_interp() { return 2.0 * (1.0 + 2.0 * std::numbers::ln2); }

double default_c_sigma() { return 2.0; }

PqProfiles derive_pq(const TimeProfile& f, const TimeProfile& g, const TimeProfile& h, double sigma,
                     double c_interp, double c_sigma) {
    f.validate();
    g.validate();
    h.validate();
    if (!(c_interp > 0.0) || !(c_sigma > 0.0)) throw DomainError("derive_pq: constants must be positive");
    const double power = 1.0 + theta_of(sigma);
    const auto mesh = union_mesh({&f, &g, &h});
    PqProfiles out;
    out.p.times = mesh;
    out.q.times = mesh;
    for (double t : mesh) {
        const double fv = f.value_at(t);
        const double gv = g.value_at(t);
        const double hp = std::pow(h.value_at(t), power);
        out.p.values.push_back(c_interp * fv * (1.0 + c_sigma * hp));
        out.q.values.push_back(c_sigma * fv * hp + gv * gv);
    }
    return out;
}

WindowChoice choose_t0(const TimeProfile& p, double theta, double T) {
    p.validate();
    if (!(theta > 0.0) || !(theta < 1.0)) throw DomainError("choose_t0: theta must lie in (0, 1)");
    if (!(T > 0.0)) throw DomainError("choose_t0: T must be positive");
    if (p.times.size() < 2) throw InputError("choose_t0: profile needs at least two nodes");
    const double budget = theta / 4.0;

    const double total = p.integral(0.0, T);
    if (!std::isfinite(total)) throw InputError("choose_t0: profile is not integrable");
    if (total <= budget) return {T, 1, total};

    const double d = uniform_spacing(p);
    if (d == 0.0) throw InputError("choose_t0: profile mesh must be uniform");
    const std::size_t cells = static_cast<std::size_t>(std::llround(T / d));
    std::vector<double> prefix(cells + 1, 0.0);
    for (std::size_t i = 0; i < cells; ++i) {
        const double a = p.times.front() + d * static_cast<double>(i);
        prefix[i + 1] = prefix[i] + p.integral(a, a + d);
    }
    // A window of m cells starting anywhere lies inside m + 1 aligned cells.
    auto sup_mass = [&](std::size_t m) {
        const std::size_t span = std::min(m + 1, cells);
        double worst = 0.0;
        for (std::size_t i = 0; i + span <= cells; ++i) worst = std::max(worst, prefix[i + span] - prefix[i]);
        return worst;
    };
    std::size_t lo = 0;
    std::size_t hi = cells;  // sup_mass(cells) = total > budget
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (sup_mass(mid) <= budget) lo = mid;
        else hi = mid;
    }
    if (lo == 0) {
        throw CertificationFailure("no window of positive length keeps the integral of p below theta/4 "
                                   "at this mesh resolution");
    }
    WindowChoice w;
    w.t0 = d * static_cast<double>(lo);
    w.n_windows = static_cast<int>(std::ceil(T / w.t0 - 1e-9));
    w.max_window_mass = sup_mass(lo);
    return w;
}

double RateCertificate::log_bound(double nu) const { return log_big_m + std::log(nu) * std::exp(-log_big_m); }

double RateCertificate::bound(double nu) const {
    const double lb = log_bound(nu);
    return lb > 709.0 ? kInf : std::exp(lb);
}

RateCertificate certify(const TimeProfile& f, const TimeProfile& g, const TimeProfile& h, double sigma, double T,
                        const CertifyOptions& options) {
    if (!(T > 0.0)) throw DomainError("certify: T must be positive");
    const double theta = theta_of(sigma);
    for (const auto* prof : {&f, &g, &h}) {
        prof->validate();
        if (prof->times.front() > 1e-12 * T || prof->times.back() < T * (1.0 - 1e-12)) {
            throw InputError("certify: profiles must cover [0, T]");
        }
    }

    RateCertificate c;
    c.sigma = sigma;
    c.theta = theta;
    c.t_end = T;
    c.c_interp = options.c_interp;
    c.c_sigma = options.c_sigma;
    c.digest_f = f.digest();
    c.digest_g = g.digest();
    c.digest_h = h.digest();

    TimeProfile fp = f;
    TimeProfile gp = g;
    TimeProfile hp = h;
    c.quadrature_error.f = pad(fp);
    c.quadrature_error.g = pad(gp);
    c.quadrature_error.h = pad(hp);

    auto pq = derive_pq(fp, gp, hp, sigma, options.c_interp, options.c_sigma);
    if (uniform_spacing(pq.p) == 0.0) {
        // Put p and q on a uniform mesh at the finest spacing present.
        double dmin = T;
        for (std::size_t i = 0; i + 1 < pq.p.times.size(); ++i) dmin = std::min(dmin, pq.p.times[i + 1] - pq.p.times[i]);
        const auto n = static_cast<std::size_t>(std::ceil(T / dmin));
        std::vector<double> mesh;
        for (std::size_t i = 0; i <= n; ++i) mesh.push_back(T * static_cast<double>(i) / static_cast<double>(n));
        pq.p = resample(pq.p, mesh);
        pq.q = resample(pq.q, mesh);
    }
    if (options.refine_mesh) {
        for (int level = 0; level < options.max_refine_levels; ++level) {
            double worst = 0.0;
            for (std::size_t i = 0; i + 1 < pq.p.times.size(); ++i) {
                worst = std::max(worst, pq.p.integral(pq.p.times[i], pq.p.times[i + 1]));
            }
            if (worst <= theta / 16.0) break;
            pq.p = refine(pq.p, 2);
            pq.q = refine(pq.q, 2);
        }
    }
    c.quadrature_error.p = pad(pq.p);
    c.quadrature_error.q = pad(pq.q);

    const WindowChoice w = choose_t0(pq.p, theta, T);
    c.t0 = w.t0;
    c.n_windows = w.n_windows;

    // Window recursion in log space.
    const double log_growth = (theta / 4.0) * std::log(2.0 * std::numbers::e);
    const double e1 = std::min(theta, 0.5) - theta / 2.0;
    const double log_e1 = std::log(e1);
    const double log_ratio = std::log(theta / 2.0);
    double log_c = -kInf;
    double log_gamma = 0.0;
    for (int k = 0; k < c.n_windows; ++k) {
        WindowRecord r;
        r.start = std::min(T, k * c.t0);
        r.end = std::min(T, (k + 1) * c.t0);
        r.p_mass = pq.p.integral(r.start, r.end);
        r.q_mass = pq.q.integral(r.start, r.end);
        r.log_exponent = log_e1 + static_cast<double>(k) * log_ratio;
        r.exponent = std::exp(r.log_exponent);
        r.gamma = std::exp(log_gamma);
        log_c = log_add(log_c, std::log1p(r.q_mass)) + log_growth;
        r.log_c = log_c;
        c.windows.push_back(r);
        log_gamma = r.log_exponent;
    }
    const double log_e_n = c.windows.back().log_exponent;
    c.log_c_final = log_c;
    c.c_envelope = std::exp(log_c / c.n_windows);

    // M = 2 max{C_N, (2/theta)^N, 1/e_N}: the last term turns nu^{e_N / 2} into nu^{1/M}.
    const double log_two_over_theta_n = c.n_windows * std::log(2.0 / theta);
    c.log_big_m = std::log(2.0) + std::max({log_c, log_two_over_theta_n, -log_e_n});
    c.big_m = c.log_big_m > 709.0 ? kInf : std::exp(c.log_big_m);

    // Chain closes while C_N nu^{e_N} <= 1/2.
    const double log_two_c = std::log(2.0) + log_c;
    c.log_nu_bootstrap = -log_two_c * std::exp(-log_e_n);
    const double log_log_boot = std::log(log_two_c) - log_e_n;

    double h_sup = 0.0;
    for (double v : hp.values) h_sup = std::max(h_sup, v);
    c.energy_ceiling = 2.0 * std::pow(GridSpec::measure(), 0.5 - 1.0 / (2.0 + sigma)) * h_sup;

    const double log_d = std::log(c.energy_ceiling);
    c.log_log_nu_energy = c.log_big_m > log_d ? c.log_big_m + std::log(c.log_big_m - log_d) : -kInf;
    const bool union_closes = c.log_log_nu_energy >= log_log_boot;

    if (union_closes) {
        c.log_nu_bar = std::log(0.5);
        c.notes.push_back("window chain covers nu below the bootstrap threshold; above nu_E the bound exceeds "
                          "the energy ceiling, and nu_E lies below the threshold");
    } else {
        c.log_nu_bar = std::min(std::log(0.5), c.log_nu_bootstrap);
        if (c.log_nu_bar < std::log(options.nu_floor)) {
            throw CertificationFailure("certified viscosity range falls below the floor");
        }
        c.notes.push_back("nu_bar set by the window-chain bootstrap threshold");
    }
    c.nu_bar = std::exp(c.log_nu_bar);
    c.notes.push_back("admissibility on later windows follows from the energy balance of the limit solution; "
                      "not checked numerically");
    return c;
}

std::string certificate_json(const RateCertificate& c) {
    using nlohmann::json;
    auto num_or_string = [](double x, double log_x) -> json {
        if (std::isfinite(x)) return x;
        char buf[64];
        std::snprintf(buf, sizeof buf, "1e%.6f", log_x / std::numbers::ln10);
        return std::string(buf);
    };
    json j;
    j["sigma"] = c.sigma;
    j["theta"] = c.theta;
    j["T"] = c.t_end;
    j["t0"] = c.t0;
    j["N"] = c.n_windows;
    json gamma = json::array();
    json log10_exponents = json::array();
    json windows = json::array();
    for (const auto& w : c.windows) {
        gamma.push_back(w.gamma);
        log10_exponents.push_back(w.log_exponent / std::numbers::ln10);
        windows.push_back({{"start", w.start},
                           {"end", w.end},
                           {"p_mass", w.p_mass},
                           {"q_mass", w.q_mass},
                           {"log_C", w.log_c}});
    }
    j["gamma_ladder"] = gamma;
    j["log10_exponent_ladder"] = log10_exponents;
    j["windows"] = windows;
    j["C"] = c.c_envelope;
    j["log_C_N"] = c.log_c_final;
    j["M"] = num_or_string(c.big_m, c.log_big_m);
    j["log10_M"] = c.log_big_m / std::numbers::ln10;
    j["nu_bar"] = c.nu_bar;
    j["log10_nu_bar"] = c.log_nu_bar / std::numbers::ln10;
    j["log10_nu_bootstrap"] = c.log_nu_bootstrap / std::numbers::ln10;
    j["energy_ceiling"] = c.energy_ceiling;
    j["constants"] = {{"c_interp", c.c_interp}, {"c_sigma", c.c_sigma}};
    j["quadrature_error_bounds"] = {{"f", c.quadrature_error.f},
                                    {"g", c.quadrature_error.g},
                                    {"h", c.quadrature_error.h},
                                    {"p", c.quadrature_error.p},
                                    {"q", c.quadrature_error.q}};
    j["input_profile_digests"] = {{"f", hex64(c.digest_f)}, {"g", hex64(c.digest_g)}, {"h", hex64(c.digest_h)}};
    j["notes"] = c.notes;
    return j.dump(2);
}

void write_certificate_json(const std::filesystem::path& path, const RateCertificate& cert) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << certificate_json(cert) << '\n';
    if (!out) throw IoError("write failed for " + path.string());
}

double ode_oracle(double a, const TimeProfile& f, double log_const, double tau) {
    if (!(a > 0.0)) throw DomainError("ode_oracle: a must be positive");
    f.validate();
    if (tau <= 0.0) return a;

    auto rhs = [&](double t, double y) {
        if (y <= 0.0) return 0.0;
        return f.value_at(t) * y * (std::abs(std::log(y)) + log_const);
    };
    auto rk4 = [&](double t, double y, double h) {
        const double k1 = rhs(t, y);
        const double k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1);
        const double k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2);
        const double k4 = rhs(t + h, y + h * k3);
        return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };

    // Integrate node to node so the right side is smooth inside each step.
    std::vector<double> stops;
    for (double t : f.times) {
        if (t > 0.0 && t < tau) stops.push_back(t);
    }
    stops.push_back(tau);

    double t = 0.0;
    double y = a;
    double h = tau / 64.0;
    constexpr double kTol = 1e-10;
    constexpr double kHuge = 1e300;
    for (double stop : stops) {
        while (t < stop) {
            double step = std::min(h, stop - t);
            for (int tries = 0;; ++tries) {
                const double full = rk4(t, y, step);
                const double half = rk4(t + 0.5 * step, rk4(t, y, 0.5 * step), 0.5 * step);
                if (!std::isfinite(full) || !std::isfinite(half) || half > kHuge) return kInf;
                const double err = std::abs(half - full) / 15.0;
                if (err <= kTol * std::max(1.0, std::abs(half)) || step < 1e-14 * std::max(1.0, tau)) {
                    y = half + (half - full) / 15.0;
                    t = (step == stop - t) ? stop : t + step;
                    h = err < kTol / 64.0 * std::max(1.0, std::abs(half)) ? 2.0 * step : step;
                    break;
                }
                step *= 0.5;
                if (tries > 200) return kInf;
            }
        }
    }
    return y;
}

}  // namespace ovw::gronwall
