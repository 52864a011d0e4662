#include "ovw/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "ovw/errors.hpp"
#include "text_format.hpp"

namespace ovw {

namespace {

using detail::fmt;
using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

std::string format_pow10(double log10_value) {
    if (std::isnan(log10_value)) return "nan";
    if (std::isinf(log10_value)) return log10_value > 0 ? "inf" : "0";
    char buf[64];
    if (std::abs(log10_value) < 300.0) {
        std::snprintf(buf, sizeof buf, "%.15g", std::pow(10.0, log10_value));
        return buf;
    }
    double e = std::floor(log10_value);
    double mantissa = std::pow(10.0, log10_value - e);
    if (mantissa >= 9.9999999999999995) {
        mantissa /= 10.0;
        e += 1.0;
    }
    std::snprintf(buf, sizeof buf, "%.15ge%+.0f", mantissa, e);
    return buf;
}

void write_summary_json(const std::filesystem::path& path, const std::map<std::string, bool>& checks) {
    json j;
    j["checks"] = json::object();
    bool all = true;
    for (const auto& [name, ok] : checks) {
        j["checks"][name] = ok ? "pass" : "fail";
        all = all && ok;
    }
    j["passed"] = all;
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    finish(out, path);
}

void write_report(const SweepResult& res, const std::filesystem::path& outdir) {
    std::error_code ec;
    std::filesystem::create_directories(outdir / "plotdata", ec);
    if (ec) throw IoError("cannot create " + (outdir / "plotdata").string() + ": " + ec.message());

    {
        const auto path = outdir / "sweep.csv";
        auto out = open_out(path);
        out << "nu,sup_rel_dist,certified_bound,min_slack\n";
        for (const auto& r : res.records) {
            const std::string bound = res.certificate ? format_pow10(r.log10_certified_bound) : "nan";
            out << fmt(r.nu) << ',' << fmt(r.sup_rel_dist) << ',' << bound << ',' << fmt(r.min_slack) << '\n';
        }
        finish(out, path);
    }
    {
        const auto path = outdir / "certificate.json";
        auto out = open_out(path);
        if (res.certificate) {
            out << gronwall::certificate_json(*res.certificate) << '\n';
        } else {
            out << json{{"failure", res.certificate_failure}}.dump(2) << '\n';
        }
        finish(out, path);
    }
    {
        const auto path = outdir / "rate_fit.json";
        json j{{"ok", res.fit.ok},
               {"exponent", res.fit.exponent},
               {"prefactor", res.fit.prefactor},
               {"r_squared", res.fit.r_squared},
               {"note", res.fit.note}};
        if (res.certificate) j["inverse_M"] = std::exp(-res.certificate->log_big_m);
        auto out = open_out(path);
        out << j.dump(2) << '\n';
        finish(out, path);
    }
    {
        const auto path = outdir / "records.json";
        json arr = json::array();
        for (const auto& r : res.records) {
            arr.push_back({{"nu", r.nu},
                           {"sup_rel_dist", r.sup_rel_dist},
                           {"exact_dist", r.exact_dist},
                           {"sup_sqrt_nu_grad", r.sup_sqrt_nu_grad},
                           {"sup_l2psigma", r.sup_l2psigma},
                           {"min_slack", r.min_slack},
                           {"energy_min_slack", r.energy_min_slack},
                           {"certified_bound", finite_or_null(r.certified_bound)},
                           {"log10_certified_bound", r.log10_certified_bound},
                           {"covered", r.covered},
                           {"wall_time", r.wall_time}});
        }
        json j{{"grid", res.config.n},
               {"t_end", res.config.t_end},
               {"sigma", res.config.sigma},
               {"dt", res.dt},
               {"initial_energy", res.initial_energy},
               {"records", arr}};
        auto out = open_out(path);
        out << j.dump(2) << '\n';
        finish(out, path);
    }
    write_inequality_report(outdir / "inequality_report.csv", res.inequalities);
    {
        const auto path = outdir / "plotdata" / "distance.csv";
        auto out = open_out(path);
        out << "log10_nu,log10_sup_rel_dist,log10_certified_bound,log10_exact\n";
        for (const auto& r : res.records) {
            out << fmt(std::log10(r.nu)) << ',' << fmt(std::log10(r.sup_rel_dist)) << ','
                << (res.certificate ? fmt(r.log10_certified_bound) : std::string("nan")) << ','
                << (r.exact_dist > 0.0 ? fmt(std::log10(r.exact_dist)) : std::string("nan")) << '\n';
        }
        finish(out, path);
    }
    {
        const auto path = outdir / "plotdata" / "profiles.csv";
        auto out = open_out(path);
        out << "t,f,g,h\n";
        for (std::size_t k = 0; k < res.f.times.size(); ++k) {
            out << fmt(res.f.times[k]) << ',' << fmt(res.f.values[k]) << ',' << fmt(res.g.values[k]) << ','
                << fmt(res.h.values[k]) << '\n';
        }
        finish(out, path);
    }
    write_summary_json(outdir / "summary.json", res.checks);
}

}  // namespace ovw
