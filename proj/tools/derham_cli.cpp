// Command-line interface for constructing and analyzing self-affine curves.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "selfaffine/coding.hpp"
#include "selfaffine/evaluator.hpp"
#include "selfaffine/holder.hpp"
#include "selfaffine/json_io.hpp"
#include "selfaffine/numeric.hpp"
#include "selfaffine/oracle.hpp"
#include "selfaffine/spectrum.hpp"
#include "selfaffine/system.hpp"

namespace sa = selfaffine;

namespace {

struct SystemOpts {
    std::string preset;
    std::string system;
    double a = std::nan("");
    double theta = std::nan("");
};

void add_system_opts(CLI::App* cmd, SystemOpts& so) {
    cmd->add_option("--preset", so.preset, "preset name: polya, okamoto, riesz_nagy, gray");
    cmd->add_option("--theta", so.theta, "polya angle in degrees");
    cmd->add_option("--a", so.a, "parameter for okamoto / riesz_nagy / gray");
    cmd->add_option("--system", so.system, "system JSON (inline or file path)");
}

sa::SelfAffineSystem build_system(const SystemOpts& so) {
    if (!so.system.empty()) return sa::load_system(so.system);
    if (so.preset.empty())
        throw CLI::ValidationError("system", "give either --system or --preset");
    if (so.preset == "polya") {
        if (std::isnan(so.theta)) throw CLI::ValidationError("--theta", "polya needs --theta");
        return sa::preset_polya(so.theta * std::acos(-1.0) / 180.0);
    }
    if (std::isnan(so.a))
        throw CLI::ValidationError("--a", "preset '" + so.preset + "' needs --a");
    if (so.preset == "okamoto") return sa::preset_okamoto(so.a);
    if (so.preset == "riesz_nagy") return sa::preset_riesz_nagy(so.a);
    if (so.preset == "gray") return sa::preset_gray(so.a);
    throw CLI::ValidationError("--preset", "unknown preset '" + so.preset + "'");
}

sa::SelfAffineSystem build_valid_system(const SystemOpts& so) {
    sa::SelfAffineSystem sys = build_system(so);
    sa::ValidationReport rep = sa::validate(sys);
    if (!rep.ok) throw std::invalid_argument("invalid system: " + rep.str());
    return sys;
}

sa::json json_number(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    out << text;
}

sa::json holder_json(const sa::HolderResult& hr) {
    sa::json j;
    j["value"] = json_number(hr.value);
    j["lo"] = json_number(hr.lo);
    j["hi"] = json_number(hr.hi);
    j["case"] = sa::holder_case_name(hr.kind);
    j["K"] = hr.k_const;
    j["oneSided"] = hr.one_sided;
    return j;
}

sa::json profile_json(const sa::SpectrumProfile& pr) {
    sa::json j;
    sa::json rho = sa::json::array();
    for (double r : pr.rho) rho.push_back(json_number(r));
    j["rho"] = rho;
    j["alphaMin"] = pr.alpha_min;
    j["alphaMax"] = pr.alpha_max;
    j["alphaHat"] = pr.alpha_hat;
    j["sHat"] = pr.s_hat;
    j["sMin"] = pr.s_min;
    j["sMax"] = pr.s_max;
    j["iZero"] = pr.i_zero;
    j["iPlus"] = pr.i_plus;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"self-affine curve toolkit: evaluation, exponents, spectra"};
    app.require_subcommand(1);

    SystemOpts so;
    double t = std::nan("");
    std::string coding_text;
    std::size_t level = 8;
    std::size_t grid = 101;
    std::size_t bins = 32;
    std::size_t depth = 48;
    double tol = 1e-12;
    std::uint64_t seed = 12345;
    int kmin = 4, kmax = 20;
    std::string out_path;
    std::string format;

    CLI::App* c_validate = app.add_subcommand("validate", "check system invariants");
    add_system_opts(c_validate, so);

    CLI::App* c_eval = app.add_subcommand("eval", "evaluate f at a point or coding");
    add_system_opts(c_eval, so);
    c_eval->add_option("--t", t, "point in [0,1]");
    c_eval->add_option("--coding", coding_text, "digit string 'prefix|tail'");
    c_eval->add_option("--tol", tol, "evaluation tolerance");
    c_eval->add_option("--format", format, "plain (default) or csv");

    CLI::App* c_sample = app.add_subcommand("sample", "sample the curve at level-n endpoints");
    add_system_opts(c_sample, so);
    c_sample->add_option("--level", level, "subdivision level");
    c_sample->add_option("--tol", tol, "evaluation tolerance");
    c_sample->add_option("--format", format, "csv (default) or svg");
    c_sample->add_option("--out", out_path, "output file (stdout if absent)");

    CLI::App* c_spec = app.add_subcommand("spectrum", "exponent profile and dimension table");
    add_system_opts(c_spec, so);
    c_spec->add_option("--grid", grid, "table grid points");
    c_spec->add_option("--format", format, "csv (default) or json");
    c_spec->add_option("--out", out_path, "write the table here, profile to stdout");

    CLI::App* c_classify = app.add_subcommand("classify", "differentiability class report");
    add_system_opts(c_classify, so);

    CLI::App* c_holder = app.add_subcommand("holder", "pointwise exponent at t or a coding");
    add_system_opts(c_holder, so);
    c_holder->add_option("--t", t, "point in [0,1]");
    c_holder->add_option("--coding", coding_text, "digit string 'prefix|tail'");
    c_holder->add_option("--depth", depth, "digits used for numeric t");

    CLI::App* c_dec = app.add_subcommand("decompose", "factor f = h . g through the subordinator");
    add_system_opts(c_dec, so);
    c_dec->add_option("--out", out_path, "output directory for g.json / h.json / s.txt")
        ->required();

    CLI::App* c_oracle = app.add_subcommand("oracle", "brute-force numerical cross-checks");
    c_oracle->require_subcommand(1);
    CLI::App* o_chord = c_oracle->add_subcommand("chord", "log-log chord exponent fit at t");
    add_system_opts(o_chord, so);
    o_chord->add_option("--t", t, "point in [0,1]")->required();
    o_chord->add_option("--kmin", kmin, "smallest dyadic scale exponent");
    o_chord->add_option("--kmax", kmax, "largest dyadic scale exponent");
    o_chord->add_option("--tol", tol, "evaluation tolerance");
    CLI::App* o_spec = c_oracle->add_subcommand("spectrum", "exponent histogram over digit strings");
    add_system_opts(o_spec, so);
    o_spec->add_option("--level", level, "digit string length");
    o_spec->add_option("--bins", bins, "histogram bins");
    CLI::App* o_der = c_oracle->add_subcommand("derivative", "difference-quotient trend at t");
    add_system_opts(o_der, so);
    o_der->add_option("--t", t, "point in [0,1] (random when absent)");
    o_der->add_option("--depth", depth, "digits tracked (<= 40)");
    o_der->add_option("--seed", seed, "RNG seed for the random point");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_validate->parsed()) {
            sa::SelfAffineSystem sys = build_system(so);
            sa::ValidationReport rep = sa::validate(sys);
            if (rep.ok) {
                std::printf("ok\n");
                return 0;
            }
            for (const std::string& v : rep.violations) std::printf("violation: %s\n", v.c_str());
            return 1;
        }

        if (c_eval->parsed()) {
            sa::SelfAffineSystem sys = build_valid_system(so);
            sa::Evaluator ev(sys, tol);
            sa::Evaluator::Result r;
            double t_shown = std::nan("");
            if (!coding_text.empty()) {
                sa::Coding cd = sa::parse_coding(coding_text, sys.m);
                r = ev.eval(cd);
                std::size_t n = std::min<std::size_t>(cd.periodic() ? 48 : cd.prefix.size(), 48);
                t_shown = sa::interval_of(sys, cd.first_digits(n)).left;
            } else if (!std::isnan(t)) {
                r = ev.eval(t);
                t_shown = t;
            } else {
                throw CLI::ValidationError("eval", "give --t or --coding");
            }
            if (format == "csv") {
                std::string row = sa::fmt_g12(t_shown);
                for (double v : r.value) row += "," + sa::fmt_g12(v);
                row += "," + sa::fmt_g12(r.err);
                std::printf("%s\n", row.c_str());
            } else {
                std::string vals;
                for (std::size_t k = 0; k < r.value.size(); ++k)
                    vals += (k ? ", " : "") + sa::fmt_g12(r.value[k]);
                std::printf("f(%s) = (%s) +/- %s  [depth %zu]\n", sa::fmt_g12(t_shown).c_str(),
                            vals.c_str(), sa::fmt_g12(r.err).c_str(), r.depth);
            }
            return 0;
        }

        if (c_sample->parsed()) {
            sa::SelfAffineSystem sys = build_valid_system(so);
            sa::Evaluator ev(sys, tol);
            auto pts = ev.sample_curve(level);
            std::string text = (format == "svg") ? sa::curve_to_svg(pts, sys.d)
                                                 : sa::curve_to_csv(pts);
            if (out_path.empty())
                std::fputs(text.c_str(), stdout);
            else
                write_text(out_path, text);
            return 0;
        }

        if (c_spec->parsed()) {
            sa::SelfAffineSystem sys = build_valid_system(so);
            sa::SpectrumProfile pr = sa::spectrum_profile(sys);
            sa::SpectrumTable tab = sa::spectrum_table(sys, grid);
            std::string csv;
            if (tab.infinite_atom)
                csv += "# exponent +inf occurs on a set of full Lebesgue measure\n";
            csv += "alpha,dim\n";
            for (const auto& row : tab.rows)
                csv += sa::fmt_g12(row.alpha) + "," + sa::fmt_g12(row.dim) + "\n";
            if (format == "json") {
                sa::json j;
                j["profile"] = profile_json(pr);
                sa::json rows = sa::json::array();
                for (const auto& row : tab.rows) rows.push_back({row.alpha, row.dim});
                j["table"] = rows;
                j["infiniteAtom"] = tab.infinite_atom;
                std::printf("%s\n", j.dump(2).c_str());
            } else if (!out_path.empty()) {
                write_text(out_path, csv);
                std::printf("%s\n", profile_json(pr).dump(2).c_str());
            } else {
                std::printf("%s", csv.c_str());
            }
            return 0;
        }

        if (c_classify->parsed()) {
            sa::SelfAffineSystem sys = build_valid_system(so);
            sa::Classification cl = sa::classify(sys);
            sa::json j;
            j["case"] = cl.kind;
            j["dimD"] = cl.dim_diff ? sa::json(*cl.dim_diff) : sa::json(nullptr);
            j["dimDcomplement"] = cl.dim_nondiff;
            j["criterion"] = cl.criterion;
            j["driftSum"] = json_number(cl.drift_sum);
            j["hatDrift"] = json_number(cl.hat_drift);
            std::printf("%s\n", j.dump(2).c_str());
            return 0;
        }

        if (c_holder->parsed()) {
            sa::SelfAffineSystem sys = build_valid_system(so);
            sa::HolderResult hr;
            if (!coding_text.empty())
                hr = sa::holder_exponent(sys, sa::parse_coding(coding_text, sys.m));
            else if (!std::isnan(t))
                hr = sa::holder_exponent_at(sys, t, depth);
            else
                throw CLI::ValidationError("holder", "give --t or --coding");
            std::printf("%s\n", holder_json(hr).dump(2).c_str());
            return 0;
        }

        if (c_dec->parsed()) {
            sa::SelfAffineSystem sys = build_valid_system(so);
            sa::Subordination sub = sa::subordinate(sys);
            std::filesystem::create_directories(out_path);
            write_text(out_path + "/g.json", sa::system_to_json(sub.g).dump(2) + "\n");
            write_text(out_path + "/h.json", sa::system_to_json(sub.h).dump(2) + "\n");
            write_text(out_path + "/s.txt", sa::fmt_g12(sub.s) + "\n");
            std::printf("s = %s\n", sa::fmt_g12(sub.s).c_str());
            return 0;
        }

        if (o_chord->parsed()) {
            sa::SelfAffineSystem sys = build_valid_system(so);
            sa::Evaluator ev(sys, tol);
            sa::ChordExponent ce = sa::empirical_chord_exponent(ev, t, sa::dyadic_scales(kmin, kmax));
            sa::json j;
            j["slope"] = json_number(ce.slope);
            j["stdError"] = ce.std_error;
            j["points"] = ce.points;
            j["infinite"] = ce.infinite;
            std::printf("%s\n", j.dump(2).c_str());
            return 0;
        }

        if (o_spec->parsed()) {
            sa::SelfAffineSystem sys = build_valid_system(so);
            sa::EmpiricalSpectrum es = sa::empirical_spectrum(sys, level, bins);
            std::printf("alphaLo,alphaHi,alphaCenter,count,dim\n");
            for (const auto& b : es.bins)
                std::printf("%s,%s,%s,%zu,%s\n", sa::fmt_g12(b.alpha_lo).c_str(),
                            sa::fmt_g12(b.alpha_hi).c_str(), sa::fmt_g12(b.alpha_center).c_str(),
                            b.count, sa::fmt_g12(b.dim).c_str());
            return 0;
        }

        if (o_der->parsed()) {
            sa::SelfAffineSystem sys = build_valid_system(so);
            double point = t;
            if (std::isnan(point)) {
                std::mt19937_64 rng(seed);
                point = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            }
            sa::DerivativeVerdict v =
                sa::empirical_derivative_test(sys, point, std::min<std::size_t>(depth, 40));
            std::printf("t = %s: %s\n", sa::fmt_g12(point).c_str(),
                        sa::derivative_verdict_name(v).c_str());
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
