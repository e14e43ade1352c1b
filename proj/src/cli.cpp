#include "apzeta/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "apzeta/expr.hpp"
#include "apzeta/expsum.hpp"
#include "apzeta/zeta.hpp"

namespace apzeta {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string now_iso8601() {
    auto now = std::chrono::system_clock::now();
    std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ProgressionSpec make_spec(const RunConfig& cfg) {
    if (cfg.rs_k0) {
        auto [r, s, k0] = *cfg.rs_k0;
        return ProgressionSpec::rational_power(r, s, static_cast<int>(k0), cfg.b);
    }
    if (cfg.a_expr.empty()) throw std::invalid_argument("moment: provide --a or --rs");
    return ProgressionSpec::generic(eval_expr(cfg.a_expr, cfg.precision_bits), cfg.b);
}

KeySumForm parse_form(const std::string& f) {
    if (f == "refined") return KeySumForm::refined;
    if (f == "intro") return KeySumForm::intro;
    throw std::invalid_argument("unknown key-sum form '" + f + "' (refined|intro)");
}

std::uint64_t table_need(const ProgressionSpec& spec, double T, KeySumForm form) {
    double hi = T / M_PI;
    if (form == KeySumForm::intro) hi = T * std::exp(-2 * M_PI / spec.spacing_d());
    return static_cast<std::uint64_t>(std::floor(hi)) + 2;
}

DivisorTable obtain_table(const RunConfig& cfg, std::uint64_t need) {
    if (!cfg.table_path.empty()) {
        DivisorTable t = DivisorTable::load(cfg.table_path);
        if (t.limit() < need)
            throw std::invalid_argument("table at " + cfg.table_path + " holds " +
                                        std::to_string(t.limit()) + " entries; need " +
                                        std::to_string(need));
        return t;
    }
    return sieve(std::max<std::uint64_t>(need, 8), cfg.entry_cap);
}

ordered_json report_to_json(const MomentReport& r) {
    ordered_json j;
    j["T"] = r.T;
    j["a"] = r.a;
    j["b"] = r.b;
    j["form"] = r.form;
    j["empirical"] = r.empirical;
    j["predicted_leading"] = r.predicted_leading;
    j["predicted_full"] = r.predicted_full;
    j["ratio_leading"] = r.ratio_leading;
    j["ratio_full"] = r.ratio_full;
    j["key_sum_re"] = r.key_sum_value.real();
    j["key_sum_im"] = r.key_sum_value.imag();
    j["key_sum_over_TlogT"] = r.key_sum_over_tlogt;
    ordered_json diag;
    for (const auto& [k, v] : r.diagnostics) diag[k] = v;
    j["diagnostics"] = diag;
    return j;
}

std::string csv_header() {
    return "T,a,b,form,empirical,predicted_leading,predicted_full,ratio_leading,ratio_full,"
           "key_sum_re,key_sum_im,key_sum_over_TlogT";
}

std::string csv_row(const MomentReport& r) {
    std::ostringstream os;
    os << fmt(r.T) << ',' << fmt(r.a) << ',' << fmt(r.b) << ',' << r.form << ','
       << fmt(r.empirical) << ',' << fmt(r.predicted_leading) << ',' << fmt(r.predicted_full)
       << ',' << fmt(r.ratio_leading) << ',' << fmt(r.ratio_full) << ','
       << fmt(r.key_sum_value.real()) << ',' << fmt(r.key_sum_value.imag()) << ','
       << fmt(r.key_sum_over_tlogt);
    return os.str();
}

ordered_json bundle_meta(const ReportBundle& b) {
    ordered_json meta;
    meta["schema"] = b.schema;
    meta["version"] = b.version;
    if (!b.timestamp.empty()) meta["timestamp"] = b.timestamp;
    meta["config"] = b.config_echo;
    return meta;
}

void write_out(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out_path);
    if (!f) throw std::runtime_error("cannot open for writing: " + cfg.out_path);
    f << text;
}

// ---------------------------------------------------------------------------

int cmd_sieve(const RunConfig& cfg, std::ostream& out) {
    if (cfg.limit < 1) throw std::invalid_argument("sieve: --limit must be >= 1");
    if (cfg.out_path.empty()) throw std::invalid_argument("sieve: --out is required");
    DivisorTable t = sieve(cfg.limit, cfg.entry_cap);
    t.save(cfg.out_path);
    out << "sieved " << cfg.limit << " entries -> " << cfg.out_path << "\n";
    return 0;
}

int cmd_zeta_eval(const RunConfig& cfg, std::ostream& out) {
    CriticalPoint p = zeta_half_line(cfg.t);
    const char* method =
        p.method == ZetaMethod::riemann_siegel ? "riemann_siegel" : "euler_maclaurin";
    if (cfg.output == OutputMode::json) {
        ordered_json j;
        j["t"] = p.t;
        j["zeta_abs_sq"] = p.zeta_abs_sq;
        j["method"] = method;
        out << j.dump() << "\n";
    } else {
        out << "t " << fmt(p.t) << "\nzeta_abs_sq " << fmt(p.zeta_abs_sq) << "\nmethod " << method
            << "\n";
    }
    return 0;
}

int cmd_mean_square(const RunConfig& cfg, std::ostream& out) {
    MeanSquare ms = continuous_mean_square(cfg.T, QuadratureSpec{cfg.step});
    std::ostringstream os;
    os << "T,integral,main_term,E_T\n"
       << fmt(ms.T) << ',' << fmt(ms.integral) << ',' << fmt(ms.main_term) << ','
       << fmt(ms.error_term) << "\n";
    write_out(cfg, os.str(), out);
    return 0;
}

int cmd_expsum(const RunConfig& cfg, std::ostream& out) {
    if (cfg.M < 1) throw std::invalid_argument("expsum: --M must be >= 1");
    // alpha may be an expression or an exact fraction r/s
    std::int64_t r = 0, s = 0;
    bool is_fraction = false;
    {
        auto slash = cfg.alpha_expr.find('/');
        if (slash != std::string::npos) {
            try {
                std::size_t used1 = 0, used2 = 0;
                std::string left = cfg.alpha_expr.substr(0, slash);
                std::string right = cfg.alpha_expr.substr(slash + 1);
                r = std::stoll(left, &used1);
                s = std::stoll(right, &used2);
                is_fraction = used1 == left.size() && used2 == right.size();
            } catch (...) {
                is_fraction = false;
            }
        }
    }

    ordered_json j;
    j["M"] = cfg.M;
    j["alpha"] = cfg.alpha_expr;
    j["algorithm"] = cfg.algo;
    std::ostringstream human;
    if (cfg.algo == "rational") {
        if (!is_fraction)
            throw std::invalid_argument("expsum --algo rational needs --alpha in r/s form");
        DivisorTable table = obtain_table(cfg, cfg.M);
        RationalExpSum rs = divisor_expsum_rational(table, static_cast<double>(cfg.M), r, s);
        j["value_re"] = rs.value.real();
        j["value_im"] = rs.value.imag();
        j["predicted_main"] = rs.predicted_main;
        j["residual"] = rs.residual;
        human << "value " << fmt(rs.value.real()) << " + " << fmt(rs.value.imag())
              << "i\npredicted_main " << fmt(rs.predicted_main) << "\nresidual "
              << fmt(rs.residual) << "\n";
    } else {
        Real alpha = is_fraction
                         ? Real(static_cast<long>(r), cfg.precision_bits) / static_cast<long>(s)
                         : eval_expr(cfg.alpha_expr, cfg.precision_bits);
        ExpSumResult res;
        if (cfg.algo == "direct") {
            DivisorTable table = obtain_table(cfg, cfg.M);
            res = divisor_expsum_direct(table, cfg.M, alpha);
        } else if (cfg.algo == "hyperbola") {
            res = divisor_expsum_hyperbola(cfg.M, alpha);
        } else {
            throw std::invalid_argument("expsum: unknown --algo '" + cfg.algo + "'");
        }
        j["value_re"] = res.value.real();
        j["value_im"] = res.value.imag();
        j["accuracy"] = res.accuracy;
        human << "value " << fmt(res.value.real()) << " + " << fmt(res.value.imag())
              << "i\naccuracy " << fmt(res.accuracy) << "\nalgorithm " << cfg.algo << "\n";
    }
    if (cfg.output == OutputMode::json)
        out << j.dump() << "\n";
    else
        out << human.str();
    return 0;
}

int cmd_approx(const RunConfig& cfg, std::ostream& out) {
    if (cfg.M < 1) throw std::invalid_argument("approx: --M must be >= 1");
    if (cfg.alpha_expr.empty()) throw std::invalid_argument("approx: --alpha is required");
    Real probe = eval_expr(cfg.alpha_expr, 64);
    double mag = std::abs(probe.to_double());
    int need = cfg.precision_bits + (mag > 2 ? static_cast<int>(std::log2(mag)) + 1 : 0) +
               static_cast<int>(std::log2(static_cast<double>(cfg.M))) + 32;
    Real alpha = eval_expr(cfg.alpha_expr, need);
    RationalApprox ra = dirichlet_approx(alpha, cfg.M);
    ordered_json j;
    j["alpha"] = cfg.alpha_expr;
    j["M"] = cfg.M;
    j["p"] = ra.p.get_str();
    j["q"] = ra.q.get_str();
    j["err"] = ra.err;
    if (cfg.output == OutputMode::human) {
        out << "p " << ra.p.get_str() << "\nq " << ra.q.get_str() << "\nerr " << fmt(ra.err)
            << "\n";
    } else {
        out << j.dump() << "\n";
    }
    return 0;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
    ProgressionSpec spec =
        ProgressionSpec::rational_power(cfg.r, cfg.s, cfg.k0, cfg.b);
    SpacingClassification cls = classify_spacing(spec, cfg.kmax);
    if (cfg.output == OutputMode::json) {
        ordered_json j;
        j["r"] = cfg.r;
        j["s"] = cfg.s;
        j["k0"] = cfg.k0;
        j["power_l"] = cls.power_l;
        j["x"] = cls.x.get_str();
        j["y"] = cls.y.get_str();
        ordered_json arr = ordered_json::array();
        for (const auto& e : cls.entries) {
            ordered_json row;
            row["k"] = e.k;
            row["rational"] = e.rational;
            if (e.rational) {
                row["num"] = e.num.get_str();
                row["den"] = e.den.get_str();
            }
            arr.push_back(row);
        }
        j["entries"] = arr;
        out << j.dump() << "\n";
    } else {
        out << "r/s = " << cfg.r << "/" << cfg.s << ", k0 = " << cfg.k0 << ", perfect power l = "
            << cls.power_l << " (x/y = " << cls.x.get_str() << "/" << cls.y.get_str() << ")\n";
        for (const auto& e : cls.entries) {
            if (e.rational)
                out << "k=" << e.k << " rational " << e.num.get_str() << "/" << e.den.get_str()
                    << "\n";
            else
                out << "k=" << e.k << " irrational (k0 does not divide k)\n";
        }
    }
    return 0;
}

std::string config_echo(const RunConfig& cfg) {
    std::ostringstream os;
    os << cfg.command << " precision_bits=" << cfg.precision_bits << " threads=" << cfg.threads;
    if (cfg.rs_k0)
        os << " rs=" << (*cfg.rs_k0)[0] << ":" << (*cfg.rs_k0)[1] << ":" << (*cfg.rs_k0)[2];
    else if (!cfg.a_expr.empty())
        os << " a=" << cfg.a_expr;
    os << " b=" << fmt(cfg.b) << " form=" << cfg.key_form;
    return os.str();
}

MomentReport one_report(const RunConfig& cfg, const ProgressionSpec& spec, double T,
                        const DivisorTable& table) {
    MomentRequest req;
    req.spec = spec;
    req.T = T;
    req.grid.threads = cfg.threads;
    req.key_form = parse_form(cfg.key_form);
    return moment_report(req, table);
}

int cmd_moment(const RunConfig& cfg, std::ostream& out) {
    if (!(cfg.T > 0)) throw std::invalid_argument("moment: --T must be positive");
    ProgressionSpec spec = make_spec(cfg);
    DivisorTable table = obtain_table(cfg, table_need(spec, cfg.T, parse_form(cfg.key_form)));
    MomentReport rep = one_report(cfg, spec, cfg.T, table);
    if (cfg.output == OutputMode::json) {
        ordered_json j = report_to_json(rep);
        out << j.dump() << "\n";
    } else if (cfg.output == OutputMode::csv) {
        out << csv_header() << "\n" << csv_row(rep) << "\n";
    } else {
        out << "T " << fmt(rep.T) << "\na " << fmt(rep.a) << "\nb " << fmt(rep.b) << "\nform "
            << rep.form << "\nempirical " << fmt(rep.empirical) << "\npredicted_leading "
            << fmt(rep.predicted_leading) << "\npredicted_full " << fmt(rep.predicted_full)
            << "\nratio_leading " << fmt(rep.ratio_leading) << "\nratio_full "
            << fmt(rep.ratio_full) << "\nkey_sum " << fmt(rep.key_sum_value.real()) << " + "
            << fmt(rep.key_sum_value.imag()) << "i\nkey_sum_over_TlogT "
            << fmt(rep.key_sum_over_tlogt) << "\n";
        for (const auto& [k, v] : rep.diagnostics) out << k << " " << fmt(v) << "\n";
    }
    return 0;
}

int cmd_report(const RunConfig& cfg, std::ostream& out) {
    if (cfg.t_ladder.empty()) throw std::invalid_argument("report: --T-ladder is required");
    for (std::size_t i = 1; i < cfg.t_ladder.size(); ++i)
        if (!(cfg.t_ladder[i] > cfg.t_ladder[i - 1]))
            throw std::invalid_argument("report: T-ladder must be strictly increasing");
    ProgressionSpec spec = make_spec(cfg);
    double tmax = cfg.t_ladder.back();
    DivisorTable table = obtain_table(cfg, table_need(spec, tmax, parse_form(cfg.key_form)));

    ReportBundle bundle;
    bundle.version = kVersion;
    if (!cfg.no_timestamp) bundle.timestamp = now_iso8601();
    bundle.config_echo = config_echo(cfg);
    for (double T : cfg.t_ladder) bundle.rows.push_back(one_report(cfg, spec, T, table));

    if (!cfg.plot_path.empty()) emit_plot_data(bundle, cfg.plot_path);
    if (cfg.output == OutputMode::json) {
        write_out(cfg, report_json(bundle), out);
    } else {
        write_out(cfg, report_csv(bundle), out);
    }
    return 0;
}

}  // namespace

void emit_plot_data(const ReportBundle& bundle, const std::filesystem::path& path) {
    if (bundle.rows.empty())
        throw std::invalid_argument("emit_plot_data: empty bundle, refusing to write");
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
    f << "# T ratio_full\n";
    for (const auto& r : bundle.rows) f << fmt(r.T) << " " << fmt(r.ratio_full) << "\n";
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

std::string report_csv(const ReportBundle& bundle) {
    std::ostringstream os;
    os << "# " << bundle.schema << " " << bundle.version;
    if (!bundle.timestamp.empty()) os << " " << bundle.timestamp;
    os << " | " << bundle.config_echo << "\n";
    os << csv_header() << "\n";
    for (const auto& r : bundle.rows) os << csv_row(r) << "\n";
    return os.str();
}

std::string report_json(const ReportBundle& bundle) {
    ordered_json j;
    j["meta"] = bundle_meta(bundle);
    ordered_json rows = ordered_json::array();
    for (const auto& r : bundle.rows) rows.push_back(report_to_json(r));
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        set_default_precision_bits(cfg.precision_bits);
        if (cfg.command == "sieve") return cmd_sieve(cfg, out);
        if (cfg.command == "zeta-eval") return cmd_zeta_eval(cfg, out);
        if (cfg.command == "mean-square") return cmd_mean_square(cfg, out);
        if (cfg.command == "expsum") return cmd_expsum(cfg, out);
        if (cfg.command == "approx") return cmd_approx(cfg, out);
        if (cfg.command == "classify") return cmd_classify(cfg, out);
        if (cfg.command == "moment") return cmd_moment(cfg, out);
        if (cfg.command == "report") return cmd_report(cfg, out);
        err << R"({"error":{"type":"usage","message":"unknown command )" << cfg.command
            << R"("}})" << "\n";
        return 2;
    } catch (const ResourceError& e) {
        ordered_json j;
        j["error"] = {{"type", "resource"}, {"message", e.what()}};
        err << j.dump() << "\n";
        return 3;
    } catch (const std::exception& e) {
        ordered_json j;
        j["error"] = {{"type", "failure"}, {"message", e.what()}};
        err << j.dump() << "\n";
        return 1;
    }
}

}  // namespace apzeta
