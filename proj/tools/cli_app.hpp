#pragma once

// cauchy-field command line: spectrum, simulate, estimate, classify, lamperti.
// Exit codes: 0 success, 1 other failure, 2 invalid parameters,
// 3 quadrature did not converge, 4 no acceptable circulant embedding.

#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cauchy/analysis.hpp"
#include "cauchy/field_io.hpp"
#include "cauchy/lamperti.hpp"
#include "cauchy/parallel.hpp"
#include "cauchy/simulate.hpp"
#include "cauchy/spectral.hpp"

namespace cauchy::cli {

inline constexpr int kExitOther = 1;
inline constexpr int kExitParams = 2;
inline constexpr int kExitConvergence = 3;
inline constexpr int kExitEmbedding = 4;

/// Grid syntax: a comma list of values, or a:b:logN / a:b:linN / a:b:N (log spaced).
inline std::vector<double> parse_sweep(const std::string& spec) {
    auto number = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw ParameterError("bad number '" + s + "' in grid '" + spec + "'");
        }
        if (used != s.size() || !std::isfinite(v)) throw ParameterError("bad number '" + s + "' in grid '" + spec + "'");
        return v;
    };
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() == 1) {
        std::vector<double> out;
        std::stringstream cs(spec);
        for (std::string p; std::getline(cs, p, ',');) out.push_back(number(p));
        if (out.empty()) throw ParameterError("empty grid");
        return out;
    }
    if (parts.size() != 3) throw ParameterError("grid '" + spec + "' is not of the form a:b:logN or a:b:linN");
    const double a = number(parts[0]);
    const double b = number(parts[1]);
    std::string mode = parts[2];
    bool log_spaced = true;
    if (mode.rfind("log", 0) == 0) {
        mode = mode.substr(3);
    } else if (mode.rfind("lin", 0) == 0) {
        log_spaced = false;
        mode = mode.substr(3);
    }
    const double count = number(mode);
    if (count < 1 || count != std::floor(count) || count > 1e7) throw ParameterError("grid point count must be a positive integer");
    const auto n = static_cast<std::size_t>(count);
    if (log_spaced && !(a > 0.0 && b > 0.0)) throw ParameterError("log grid needs positive end points");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double f = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        out[i] = log_spaced ? std::exp(std::log(a) + f * (std::log(b) - std::log(a))) : a + f * (b - a);
    }
    out.front() = a;
    if (n > 1) out.back() = b;
    return out;
}

/// Column-oriented table written as RFC-4180 CSV or a JSON array of row objects.
class Table {
public:
    using Cell = std::variant<double, std::string>;

    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add(std::vector<Cell> row) {
        if (row.size() != columns_.size()) throw Error("table row width mismatch");
        rows_.push_back(std::move(row));
    }

    void write_csv(std::ostream& os) const {
        os << std::setprecision(std::numeric_limits<double>::max_digits10);
        for (std::size_t c = 0; c < columns_.size(); ++c) os << (c ? "," : "") << columns_[c];
        os << '\n';
        for (const auto& row : rows_) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) os << ',';
                if (const auto* d = std::get_if<double>(&row[c])) {
                    os << *d;
                } else {
                    os << quote(std::get<std::string>(row[c]));
                }
            }
            os << '\n';
        }
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& row : rows_) {
            nlohmann::ordered_json o;
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (const auto* d = std::get_if<double>(&row[c])) {
                    o[columns_[c]] = *d;
                } else {
                    o[columns_[c]] = std::get<std::string>(row[c]);
                }
            }
            arr.push_back(std::move(o));
        }
        return arr;
    }

    void write(std::ostream& os, const std::string& format) const {
        if (format == "json") {
            os << to_json().dump() << '\n';
        } else {
            write_csv(os);
        }
    }

private:
    static std::string quote(const std::string& s) {
        if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
        std::string q = "\"";
        for (char ch : s) {
            if (ch == '"') q += '"';
            q += ch;
        }
        return q + '"';
    }

    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

namespace detail {

struct KernelOptions {
    int n = 1;
    std::vector<double> alpha;
    std::vector<double> beta;
    bool sheet = false;
    std::vector<double> alphas;
    std::vector<double> betas;

    void add_to(CLI::App* cmd, bool multi) {
        cmd->add_option("--n", n, "spatial dimension")->capture_default_str();
        auto* a = cmd->add_option("--alpha", alpha, multi ? "fractal exponents in (0, 2], comma separated" : "fractal exponent in (0, 2]");
        auto* b = cmd->add_option("--beta", beta, multi ? "dependence exponents > 0, comma separated" : "dependence exponent > 0");
        a->delimiter(',');
        b->delimiter(',');
        cmd->add_flag("--sheet", sheet, "use the separable sheet kernel with --alphas/--betas");
        cmd->add_option("--alphas", alphas, "per-axis exponents of the sheet")->delimiter(',');
        cmd->add_option("--betas", betas, "per-axis dependence exponents of the sheet")->delimiter(',');
    }

    KernelParams kernel() const {
        if (alpha.size() != 1 || beta.size() != 1) throw ParameterError("give exactly one --alpha and one --beta");
        return KernelParams(alpha[0], beta[0], n);
    }

    SheetParams sheet_params() const { return SheetParams(alphas, betas); }

    std::variant<KernelParams, SheetParams> base() const {
        if (sheet) return sheet_params();
        return kernel();
    }
};

inline Lag parse_point(const std::string& s, const char* what) {
    std::vector<double> c;
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, ',');) {
        try {
            std::size_t used = 0;
            c.push_back(std::stod(p, &used));
            if (used != p.size()) throw std::invalid_argument(p);
        } catch (const std::exception&) {
            throw ParameterError(std::string("bad coordinate in ") + what + ": '" + p + "'");
        }
    }
    if (c.empty()) throw ParameterError(std::string(what) + " is empty");
    return Lag(c);
}

class Output {
public:
    Output(const std::string& path, std::ostream& fallback, bool binary) {
        if (path.empty() || path == "-") {
            os_ = &fallback;
        } else {
            file_.open(path, binary ? std::ios::binary | std::ios::out : std::ios::out);
            if (!file_) throw Error("cannot open " + path + " for writing");
            os_ = &file_;
        }
    }
    std::ostream& stream() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_ = nullptr;
};

inline void check_format(const std::string& format, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (format == a) return;
    throw ParameterError("unsupported --format '" + format + "'");
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Generalized Cauchy random fields: spectra, simulation, estimation, classification, Lamperti transforms"};
    app.name("cauchy-field");
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (default: CAUCHY_FIELD_THREADS or hardware concurrency)");

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "spectral density S(|omega|) on a frequency grid");
    detail::KernelOptions sk;
    sk.add_to(spectrum, true);
    std::optional<double> ab_product;
    std::string omega_spec = "0.01:100:log64";
    QuadratureSpec qs;
    bool asymptotes = false;
    std::string sp_format = "csv", sp_output;
    spectrum->add_option("--alpha-beta-product", ab_product, "set beta = product / alpha for each --alpha");
    spectrum->add_option("--omega", omega_spec, "frequency grid: list, a:b:logN or a:b:linN")->capture_default_str();
    spectrum->add_option("--rel-tol", qs.rel_tol, "quadrature relative tolerance")->capture_default_str();
    spectrum->add_option("--abs-tol", qs.abs_tol, "quadrature absolute tolerance")->capture_default_str();
    spectrum->add_option("--max-subdivisions", qs.max_subdivisions, "quadrature subdivision limit")->capture_default_str();
    spectrum->add_flag("--asymptotes", asymptotes, "add leading high- and low-frequency asymptote columns");
    spectrum->add_option("--format", sp_format, "csv or json")->capture_default_str();
    spectrum->add_option("--output", sp_output, "output path (default stdout)");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "exact circulant-embedding sample of the field");
    detail::KernelOptions mk;
    mk.add_to(simulate, false);
    GridSpec grid;
    grid.points = 1024;
    std::vector<double> spacing{1.0};
    std::uint64_t realization = 0;
    std::string sim_format = "binary", sim_output;
    simulate->add_option("--points", grid.points, "grid points per axis, a power of two >= 8")->capture_default_str();
    simulate->add_option("--spacing", spacing, "grid spacing, one value or one per axis")->delimiter(',')->capture_default_str();
    simulate->add_option("--seed", grid.seed, "generator seed")->capture_default_str();
    simulate->add_option("--realization", realization, "realization index under the seed")->capture_default_str();
    simulate->add_option("--format", sim_format, "binary or csv")->capture_default_str();
    simulate->add_option("--output", sim_output, "output path (default stdout)");

    // estimate
    auto* estimate = app.add_subcommand("estimate", "variogram estimate of alpha, topothesy and graph dimension");
    std::vector<std::string> inputs;
    int max_lag = 8;
    detail::KernelOptions ek;
    ek.add_to(estimate, false);
    std::string est_format = "json", est_output;
    estimate->add_option("--input", inputs, "binary field files; several are pooled")->required()->delimiter(',');
    estimate->add_option("--max-lag", max_lag, "largest lag in grid steps")->capture_default_str();
    estimate->add_option("--format", est_format, "json or csv")->capture_default_str();
    estimate->add_option("--output", est_output, "output path (default stdout)");

    // classify
    auto* classify = app.add_subcommand("classify", "long- or short-range dependence verdict");
    detail::KernelOptions ck;
    ck.add_to(classify, false);
    std::string cl_format = "json";
    classify->add_option("--format", cl_format, "json or csv")->capture_default_str();

    // lamperti
    auto* lamperti = app.add_subcommand("lamperti", "covariances of the Lamperti-transformed fields and scaling checks");
    detail::KernelOptions lk;
    lk.add_to(lamperti, false);
    std::string mode = "first";
    std::vector<double> H;
    std::string t_spec = "1", s_spec = "0.1:10:log16";
    std::vector<double> scale;
    std::string la_format = "csv", la_output;
    lamperti->add_option("--mode", mode, "first (self-similar) or second (multi-self-similar)")->capture_default_str();
    lamperti->add_option("--H", H, "Hurst index, one per axis for the second transform")->required()->delimiter(',');
    lamperti->add_option("--t", t_spec, "base point, comma separated coordinates")->capture_default_str();
    lamperti->add_option("--s", s_spec, "second point as coordinates, or a grid of diagonal points a:b:logN")->capture_default_str();
    lamperti->add_option("--scaling", scale, "report the scaling check at factor(s) c instead of a table")->delimiter(',');
    lamperti->add_option("--format", la_format, "csv or json")->capture_default_str();
    lamperti->add_option("--output", la_output, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : kExitParams;
    }

    try {
        if (threads < 0) throw ParameterError("--threads must be nonnegative");

        if (*spectrum) {
            detail::check_format(sp_format, {"csv", "json"});
            if (sk.sheet) throw ParameterError("spectrum takes the isotropic kernel only");
            std::vector<double> betas = sk.beta;
            if (ab_product) {
                if (!betas.empty()) throw ParameterError("give --beta or --alpha-beta-product, not both");
                for (double a : sk.alpha) betas.push_back(*ab_product / a);
            } else if (betas.size() == 1 && sk.alpha.size() > 1) {
                betas.assign(sk.alpha.size(), betas[0]);
            }
            if (sk.alpha.empty() || betas.size() != sk.alpha.size()) throw ParameterError("give one --beta per --alpha");
            std::vector<KernelParams> curves;
            for (std::size_t i = 0; i < sk.alpha.size(); ++i) curves.emplace_back(sk.alpha[i], betas[i], sk.n);
            const std::vector<double> omegas = parse_sweep(omega_spec);
            for (double w : omegas)
                if (!(w >= 0.0)) throw ParameterError("frequencies must be nonnegative");
            if (!(qs.rel_tol > 0.0) || qs.abs_tol < 0.0 || qs.max_subdivisions < 1) throw ParameterError("bad quadrature tolerances");

            struct Row {
                SpectralValue s;
                double high = 0.0, low = 0.0;
                std::string status = "ok";
            };
            std::vector<Row> rows(curves.size() * omegas.size());
            parallel_for(
                rows.size(),
                [&](std::size_t k) {
                    const KernelParams& p = curves[k / omegas.size()];
                    const double w = omegas[k % omegas.size()];
                    Row& r = rows[k];
                    try {
                        r.s = spectral_density(p, Frequency({w}), qs);
                    } catch (const ConvergenceError& e) {
                        r.s.value = r.s.abs_error = std::numeric_limits<double>::quiet_NaN();
                        r.status = std::string("convergence_error: ") + e.what();
                    }
                    if (asymptotes) {
                        const double nan = std::numeric_limits<double>::quiet_NaN();
                        r.high = w > 0.0 ? evaluate_truncated(high_freq_series(p, 1), w) : nan;
                        r.low = w > 0.0 ? evaluate_truncated(low_freq_leading(p), w) : nan;
                    }
                },
                threads);
            std::vector<std::string> cols{"alpha", "beta", "n", "omega", "S", "est_error"};
            if (asymptotes) {
                cols.push_back("high_freq");
                cols.push_back("low_freq");
            }
            cols.push_back("status");
            Table table(cols);
            bool failed = false;
            for (std::size_t k = 0; k < rows.size(); ++k) {
                const KernelParams& p = curves[k / omegas.size()];
                std::vector<Table::Cell> row{p.alpha(), p.beta(), static_cast<double>(p.dim()), omegas[k % omegas.size()], rows[k].s.value,
                                             rows[k].s.abs_error};
                if (asymptotes) {
                    row.emplace_back(rows[k].high);
                    row.emplace_back(rows[k].low);
                }
                row.emplace_back(rows[k].status);
                failed = failed || rows[k].status != "ok";
                table.add(std::move(row));
            }
            detail::Output o(sp_output, out, false);
            table.write(o.stream(), sp_format);
            o.stream().flush();
            if (failed) {
                err << "cauchy-field: quadrature did not converge at some frequencies (marked in the status column)\n";
                return kExitConvergence;
            }
            return 0;
        }

        if (*simulate) {
            detail::check_format(sim_format, {"binary", "csv"});
            grid.dim = mk.sheet ? static_cast<int>(mk.alphas.size()) : mk.n;
            grid.spacing = spacing;
            grid.validate();
            std::optional<CirculantSampler> sampler;
            if (mk.sheet) {
                sampler.emplace(CirculantSampler::gsgcc(mk.sheet_params(), grid));
            } else {
                sampler.emplace(CirculantSampler::gfgcc(mk.kernel(), grid));
            }
            const FieldGrid f = sampler->sample(realization, threads);
            detail::Output o(sim_output, out, sim_format == "binary");
            if (sim_format == "binary") {
                write_binary(f, o.stream());
            } else {
                write_csv(f, o.stream());
            }
            o.stream().flush();
            return 0;
        }

        if (*estimate) {
            detail::check_format(est_format, {"json", "csv"});
            std::vector<FieldGrid> fields;
            for (const auto& path : inputs) fields.push_back(read_binary(path));
            const VariogramFit fit = estimate_variogram(fields, max_lag);
            nlohmann::ordered_json j;
            const bool have_kernel = ek.sheet || !ek.alpha.empty() || !ek.beta.empty();
            if (have_kernel) {
                const DependenceVerdict v = ek.sheet ? classify_dependence(ek.sheet_params()) : classify_dependence(ek.kernel());
                j = report_json(v, fit);
            } else {
                j["alpha_hat"] = fit.alpha_hat;
                j["beta_hat"] = fit.beta_hat;
                j["dimension_hat"] = fit.dimension_hat;
                j["r_squared"] = fit.r_squared;
                j["lags_used"] = fit.lags_used;
            }
            detail::Output o(est_output, out, false);
            if (est_format == "json") {
                o.stream() << j.dump() << '\n';
            } else {
                std::vector<std::string> cols;
                std::vector<Table::Cell> row;
                for (auto it = j.begin(); it != j.end(); ++it) {
                    cols.push_back(it.key());
                    if (it->is_string()) {
                        row.emplace_back(it->get<std::string>());
                    } else if (it->is_array()) {
                        std::ostringstream os;
                        os << std::setprecision(std::numeric_limits<double>::max_digits10);
                        for (std::size_t i = 0; i < it->size(); ++i) os << (i ? ";" : "") << (*it)[i].get<double>();
                        row.emplace_back(os.str());
                    } else {
                        row.emplace_back(it->get<double>());
                    }
                }
                Table t(cols);
                t.add(std::move(row));
                t.write_csv(o.stream());
            }
            return 0;
        }

        if (*classify) {
            detail::check_format(cl_format, {"json", "csv"});
            const DependenceVerdict v = ck.sheet ? classify_dependence(ck.sheet_params()) : classify_dependence(ck.kernel());
            if (cl_format == "json") {
                out << to_json(v).dump() << '\n';
            } else {
                Table t({"verdict", "margin"});
                t.add({std::string(to_string(v.verdict)), v.margin});
                t.write_csv(out);
            }
            return 0;
        }

        if (*lamperti) {
            detail::check_format(la_format, {"csv", "json"});
            if (mode != "first" && mode != "second") throw ParameterError("--mode must be first or second");
            const auto L = mode == "first" ? (H.size() == 1 ? LampertiParams::first(H[0], lk.base())
                                                             : throw ParameterError("first transform takes a single --H"))
                                           : LampertiParams::second(H, lk.base());
            const int n = L.dim();
            const Lag t = detail::parse_point(t_spec, "--t");
            cauchy::detail::require_dim(t.size(), static_cast<std::size_t>(n), "--t");
            cauchy::detail::require_positive(t, "--t");
            std::vector<Lag> points;
            if (s_spec.find(':') != std::string::npos) {
                for (double x : parse_sweep(s_spec)) points.emplace_back(std::vector<double>(static_cast<std::size_t>(n), x));
            } else {
                points.push_back(detail::parse_point(s_spec, "--s"));
            }
            for (const auto& s : points) {
                cauchy::detail::require_dim(s.size(), static_cast<std::size_t>(n), "--s");
                cauchy::detail::require_positive(s, "--s");
            }
            std::vector<std::string> cols;
            for (int i = 0; i < n; ++i) cols.push_back("t" + std::to_string(i + 1));
            for (int i = 0; i < n; ++i) cols.push_back("s" + std::to_string(i + 1));
            detail::Output o(la_output, out, false);
            if (!scale.empty()) {
                for (const char* c : {"lhs", "rhs", "rel_error"}) cols.push_back(c);
                Table table(cols);
                for (const auto& s : points) {
                    const ScalingCheck r = scaling_check(L, t, s, scale);
                    std::vector<Table::Cell> row;
                    for (int i = 0; i < n; ++i) row.emplace_back(t[static_cast<std::size_t>(i)]);
                    for (int i = 0; i < n; ++i) row.emplace_back(s[static_cast<std::size_t>(i)]);
                    row.emplace_back(r.lhs);
                    row.emplace_back(r.rhs);
                    row.emplace_back(r.rel_error);
                    table.add(std::move(row));
                }
                table.write(o.stream(), la_format);
                return 0;
            }
            cols.push_back("cov");
            cols.push_back("corr");
            Table table(cols);
            for (const auto& s : points) {
                const double c = lamperti_cov(L, t, s);
                const double r = c / std::sqrt(lamperti_cov(L, t, t) * lamperti_cov(L, s, s));
                std::vector<Table::Cell> row;
                for (int i = 0; i < n; ++i) row.emplace_back(t[static_cast<std::size_t>(i)]);
                for (int i = 0; i < n; ++i) row.emplace_back(s[static_cast<std::size_t>(i)]);
                row.emplace_back(c);
                row.emplace_back(r);
                table.add(std::move(row));
            }
            table.write(o.stream(), la_format);
            return 0;
        }
    } catch (const ParameterError& e) {
        err << "cauchy-field: invalid parameters: " << e.what() << '\n';
        return kExitParams;
    } catch (const DomainError& e) {
        err << "cauchy-field: invalid parameters: " << e.what() << '\n';
        return kExitParams;
    } catch (const DimensionMismatch& e) {
        err << "cauchy-field: invalid parameters: " << e.what() << '\n';
        return kExitParams;
    } catch (const PreconditionError& e) {
        err << "cauchy-field: invalid parameters: " << e.what() << '\n';
        return kExitParams;
    } catch (const InsufficientData& e) {
        err << "cauchy-field: invalid parameters: " << e.what() << '\n';
        return kExitParams;
    } catch (const ConvergenceError& e) {
        err << "cauchy-field: " << e.what() << '\n';
        return kExitConvergence;
    } catch (const EmbeddingError& e) {
        err << "cauchy-field: " << e.what() << '\n';
        return kExitEmbedding;
    } catch (const std::exception& e) {
        err << "cauchy-field: " << e.what() << '\n';
        return kExitOther;
    }
    return 0;
}

}  // namespace cauchy::cli
