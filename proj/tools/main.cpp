#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>

#include "apzeta/cli.hpp"
#include "apzeta/expr.hpp"

namespace {

// "R:S:K0" -> three integers
bool parse_rs(const std::string& text, std::array<std::int64_t, 3>& out) {
    std::istringstream is(text);
    char c1 = 0, c2 = 0;
    if (!(is >> out[0] >> c1 >> out[1] >> c2 >> out[2])) return false;
    if (c1 != ':' || c2 != ':') return false;
    std::string rest;
    return !(is >> rest);
}

bool parse_ladder(const std::string& text, std::vector<double>& out) {
    out.clear();
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        try {
            std::size_t used = 0;
            double v = std::stod(item, &used);
            if (used != item.size()) return false;
            out.push_back(v);
        } catch (...) {
            return false;
        }
    }
    return !out.empty();
}

}  // namespace

int main(int argc, char** argv) {
    apzeta::RunConfig cfg;
    CLI::App app{"discrete second moments of zeta on arithmetic progressions"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    app.add_option("--precision-bits", cfg.precision_bits,
                   "significand bits for extended-precision arithmetic (>= 64)")
        ->envname("APZETA_PRECISION_BITS");
    app.add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
    app.add_flag("--no-timestamp", cfg.no_timestamp, "omit timestamps from emitted metadata");

    std::string rs_text, ladder_text;
    std::string b_text = "0", T_text, t_text = "0", step_text;
    bool want_json = false, want_csv = false, want_human = false;

    auto* sieve = app.add_subcommand("sieve", "sieve d(n) and write a binary table");
    sieve->add_option("--limit", cfg.limit, "sieve limit N")->required();
    sieve->add_option("--out", cfg.out_path, "output table path")->required();
    sieve->add_option("--cap", cfg.entry_cap, "memory-policy entry cap");

    auto* zeval = app.add_subcommand("zeta-eval", "|zeta(1/2+it)|^2 at one point");
    zeval->add_option("--t", t_text, "ordinate t > 0 (expression)")->required();
    zeval->add_flag("--json", want_json, "JSON output");

    auto* msq = app.add_subcommand("mean-square", "int_0^T |zeta(1/2+it)|^2 dt by quadrature");
    msq->add_option("--T", T_text, "upper limit T >= 10 (expression)")->required();
    msq->add_option("--step", step_text, "quadrature step (default pi/(2 log T), capped at 0.1)");
    msq->add_option("--out", cfg.out_path, "write CSV here instead of stdout");

    auto* exps = app.add_subcommand("expsum", "sum_{m<=M} d(m) e(alpha m)");
    exps->add_option("--M", cfg.M, "upper limit M")->required();
    exps->add_option("--alpha", cfg.alpha_expr, "real expression or exact fraction r/s")
        ->required();
    exps->add_option("--algo", cfg.algo, "direct | hyperbola | rational");
    exps->add_option("--table", cfg.table_path, "divisor table file (sieved on the fly if absent)");
    exps->add_flag("--json", want_json, "JSON output");

    auto* approx = app.add_subcommand("approx", "Dirichlet approximation of alpha at scale M");
    approx->add_option("--alpha", cfg.alpha_expr, "expression, e.g. pi or exp(2*pi*1/3)")
        ->required();
    approx->add_option("--M", cfg.M, "approximation scale M")->required();
    approx->add_flag("--json", want_json, "JSON output (default)");
    approx->add_flag("--human", want_human, "plain text output");

    auto* cls = app.add_subcommand("classify", "rationality of e^{2 pi k/a} for rational-power a");
    cls->add_option("--r", cfg.r, "numerator r")->required();
    cls->add_option("--s", cfg.s, "denominator s")->required();
    cls->add_option("--k0", cfg.k0, "k0 with e^{2 pi k0/a} = r/s")->required();
    cls->add_option("--kmax", cfg.kmax, "classify k = 1..kmax");
    cls->add_option("--b", b_text, "progression offset (expression)");
    cls->add_flag("--json", want_json, "JSON output");

    auto* mom = app.add_subcommand("moment", "discrete second moment vs predictions");
    mom->add_option("--a", cfg.a_expr, "spacing a as an expression, e.g. 2*pi/log(3)");
    mom->add_option("--b", b_text, "offset b (expression)");
    mom->add_option("--T", T_text, "cutoff T (expression)")->required();
    mom->add_option("--rs", rs_text, "rational-power spacing R:S:K0 (overrides --a)");
    mom->add_option("--form", cfg.key_form, "key-sum form: refined | intro");
    mom->add_option("--table", cfg.table_path, "divisor table file");
    mom->add_flag("--json", want_json, "JSON output");
    mom->add_flag("--csv", want_csv, "CSV output");

    auto* rep = app.add_subcommand("report", "moment reports across a T-ladder");
    rep->add_option("--a", cfg.a_expr, "spacing a as an expression");
    rep->add_option("--b", b_text, "offset b (expression)");
    rep->add_option("--T-ladder", ladder_text, "comma-separated increasing T values")->required();
    rep->add_option("--rs", rs_text, "rational-power spacing R:S:K0 (overrides --a)");
    rep->add_option("--form", cfg.key_form, "key-sum form: refined | intro");
    rep->add_option("--table", cfg.table_path, "divisor table file");
    rep->add_option("--out", cfg.out_path, "write the table here instead of stdout");
    rep->add_option("--plot-out", cfg.plot_path, "also write (T, ratio_full) plot data");
    rep->add_flag("--json", want_json, "JSON output");
    rep->add_flag("--csv", want_csv, "CSV output (default)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // usage error
    }

    cfg.command = app.get_subcommands().front()->get_name();
    try {
        cfg.b = apzeta::eval_expr(b_text, cfg.precision_bits).to_double();
        if (!T_text.empty()) cfg.T = apzeta::eval_expr(T_text, cfg.precision_bits).to_double();
        cfg.t = apzeta::eval_expr(t_text, cfg.precision_bits).to_double();
        if (!step_text.empty())
            cfg.step = apzeta::eval_expr(step_text, cfg.precision_bits).to_double();
        if (!cfg.a_expr.empty()) apzeta::eval_expr(cfg.a_expr, 64);  // reject bad input early
    } catch (const std::exception& e) {
        std::cerr << R"({"error":{"type":"usage","message":")" << e.what() << R"("}})" << "\n";
        return 2;
    }
    if (!rs_text.empty()) {
        std::array<std::int64_t, 3> rsk{};
        if (!parse_rs(rs_text, rsk)) {
            std::cerr << R"({"error":{"type":"usage","message":"--rs expects R:S:K0"}})" << "\n";
            return 2;
        }
        cfg.rs_k0 = rsk;
    }
    if (!ladder_text.empty() && !parse_ladder(ladder_text, cfg.t_ladder)) {
        std::cerr << R"({"error":{"type":"usage","message":"--T-ladder expects t1,t2,..."}})"
                  << "\n";
        return 2;
    }
    if (want_json)
        cfg.output = apzeta::OutputMode::json;
    else if (want_csv)
        cfg.output = apzeta::OutputMode::csv;
    else if (want_human)
        cfg.output = apzeta::OutputMode::human;
    else if (cfg.command == "approx")
        cfg.output = apzeta::OutputMode::json;  // exact p, q as decimal strings by default
    else if (cfg.command == "report")
        cfg.output = apzeta::OutputMode::csv;

    return apzeta::run(cfg, std::cout, std::cerr);
}
