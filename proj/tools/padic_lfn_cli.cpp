// padic-lfn: command-line front end for the padic_lfn library.
//
// Exit codes: 0 success, 1 usage error (bad flags or argument values),
// 2 domain error (nonconvergence, pole, degenerate twist, capacity, range)
// or a failed selftest.

#include "padic_lfn.hpp"
#include "report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <string>

using namespace padic_lfn;
using report::json;

namespace {

constexpr int exit_usage = 1;
constexpr int exit_domain = 2;
constexpr int max_delta_range = 20000;  // O(N^2) big-integer expansion beyond this is impractical

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// "2", "-1.5", "0.5+14.1i", "3i", "1-2i", "i".
complex_value parse_complex(const std::string& text) {
    static const std::regex re(
        R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(?:([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*i)?\s*$)");
    static const std::regex pure(R"(^\s*([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*i\s*$)");
    std::smatch m;
    if (std::regex_match(text, m, pure)) {
        const double mag = m[2].matched ? std::stod(m[2]) : 1.0;
        return {0.0, m[1] == "-" ? -mag : mag};
    }
    if (text.empty() || !std::regex_match(text, m, re) || (!m[1].matched && !m[2].matched))
        throw usage_error("cannot parse complex number '" + text + "' (expected a, a+bi or bi)");
    const double re_part = m[1].matched ? std::stod(m[1]) : 0.0;
    double im_part = 0.0;
    if (m[2].matched) {
        im_part = m[3].matched ? std::stod(m[3]) : 1.0;
        if (m[2] == "-") im_part = -im_part;
    }
    return {re_part, im_part};
}

/// Characters are addressed as "k:index", or as a bare index together with --k.
dirichlet_character parse_character(const std::string& chi, std::optional<long long> k) {
    static const std::regex full(R"(^\s*(\d+)\s*:\s*(\d+)\s*$)");
    static const std::regex bare(R"(^\s*(\d+)\s*$)");
    std::smatch m;
    if (std::regex_match(chi, m, full)) {
        if (k && *k != std::stoll(m[1])) throw usage_error("--k disagrees with the modulus in --chi " + chi);
        return character(std::stoll(m[1]), std::stoll(m[2]));
    }
    if (std::regex_match(chi, m, bare)) {
        if (!k) throw usage_error("--chi " + chi + " needs --k (or use the k:index form)");
        return character(*k, std::stoll(m[1]));
    }
    throw usage_error("malformed character spec '" + chi + "' (expected k:index)");
}

struct character_flags {
    std::optional<long long> k;
    std::optional<std::string> chi;

    void attach(CLI::App* cmd) {
        cmd->add_option("--k", k, "character modulus");
        cmd->add_option("--chi", chi, "character as k:index, or index with --k");
    }
    bool given() const { return k.has_value() || chi.has_value(); }
    dirichlet_character get() const { return parse_character(chi.value_or("0"), k); }
};

std::string label_of(const dirichlet_character& chi) { return chi.label(); }

coefficient_provider delta_provider(std::int64_t range) {
    if (range > max_delta_range)
        throw math_error(error_kind::capacity, "range",
                         "Delta coefficients are expanded up to " + std::to_string(max_delta_range) +
                             "; requested " + std::to_string(range));
    return coefficient_provider::delta(static_cast<int>(std::max<std::int64_t>(range, 2)));
}

series_options series_opts(const run_config& cfg) { return {cfg.chunk_size, cfg.threads}; }

template <class Real>
json eigencheck_ket(const operator_spec& op, int label, int points, int R, const run_config& cfg, double& worst) {
    const int p = op.prime();
    const auto idx = wavelet_index::from_ket(p, label);
    json rows = json::array();
    double max_excess = 0;
    for (int i = 0; i < points; ++i) {
        // Deterministic points in the support p^(label-1) Z_p: 0, 1, then mixed digits.
        const std::int64_t u = i == 0 ? 0 : 1 + (i - 1) * (p + 1) + (i > 2 ? p * p : 0);
        const auto xi = padic_number::from_integer(p, u).shifted(label - 1);
        const auto k = apply_kernel<Real>(op, idx, xi, R, {0, cfg.coset_cap});
        const auto want = eigenvalue<Real>(op, label) * wavelet_eval<Real>(idx, xi);
        using std::abs;
        const double residual = static_cast<double>(abs(k.value - want));
        const double tail = static_cast<double>(k.tail_bound);
        max_excess = std::max(max_excess, residual - tail);
        rows.push_back({{"xi", xi.to_string()},
                        {"kernel", report::complex_json(demote<Real>(k.value))},
                        {"spectral", report::complex_json(demote<Real>(want))},
                        {"residual", residual},
                        {"tail_bound", tail}});
    }
    worst = std::max(worst, max_excess);
    return {{"label", label}, {"points", rows}, {"max_residual_minus_tail", max_excess}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-adic operator traces, twisted gamma functions and L-series checks", "padic-lfn"};
    app.require_subcommand(1);

    std::optional<std::string> config_path, format_flag, output_path;
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--format", format_flag, "json or tsv");
    app.add_option("--output", output_path, "write the report here instead of stdout");

    std::optional<int> truncation;
    std::optional<long long> prime_bound, terms;

    // gamma
    auto* gamma_cmd = app.add_subcommand("gamma", "twisted gamma function: quadrature vs closed form");
    int g_p = 2;
    std::string g_s = "2";
    std::optional<int> g_root;
    character_flags g_chi;
    gamma_cmd->add_option("--p", g_p, "prime")->required();
    gamma_cmd->add_option("--s", g_s, "complex s, e.g. 0.5+14.1i")->required();
    gamma_cmd->add_option("--circles", truncation, "inner circles N (default: truncation)");
    gamma_cmd->add_option("--modular-root", g_root, "twist by a_1(p) or a_2(p) of Delta")->check(CLI::Range(1, 2));
    g_chi.attach(gamma_cmd);

    // eigencheck
    auto* eig_cmd = app.add_subcommand("eigencheck", "kernel action vs eigenvalue on wavelet kets");
    int e_p = 2, e_kets = 3, e_points = 5;
    std::string e_kind = "plain", e_alpha = "1", e_precision = "high";
    std::optional<int> e_radius;
    character_flags e_chi;
    eig_cmd->add_option("--p", e_p, "prime")->required();
    eig_cmd->add_option("--kind", e_kind, "plain, character, modular_a1 or modular_a2")
        ->check(CLI::IsMember({"plain", "character", "modular_a1", "modular_a2"}));
    eig_cmd->add_option("--alpha", e_alpha, "operator exponent (Re > 0)");
    eig_cmd->add_option("--kets", e_kets, "check kets |0> .. |kets>")->check(CLI::Range(0, 30));
    eig_cmd->add_option("--points", e_points, "sample points per ket")->check(CLI::Range(1, 20));
    eig_cmd->add_option("--radius", e_radius, "outer radius exponent R (default: truncation)");
    eig_cmd->add_option("--precision", e_precision, "double or high (50 digits)")
        ->check(CLI::IsMember({"double", "high"}));
    e_chi.attach(eig_cmd);

    // local-factor
    auto* lf_cmd = app.add_subcommand("local-factor", "local Euler factor as a truncated trace vs closed form");
    int lf_p = 2;
    std::string lf_kind = "zeta", lf_s = "2";
    character_flags lf_chi;
    lf_cmd->add_option("--p", lf_p, "prime")->required();
    lf_cmd->add_option("--kind", lf_kind, "zeta, dirichlet or modular")
        ->check(CLI::IsMember({"zeta", "dirichlet", "modular"}));
    lf_cmd->add_option("--s", lf_s, "complex s");
    lf_cmd->add_option("--M", truncation, "truncation (default: config)");
    lf_chi.attach(lf_cmd);

    // lseries
    auto* ls_cmd = app.add_subcommand("lseries", "global L-series by Euler product or Dirichlet series");
    std::string ls_kind = "zeta", ls_s = "2", ls_method = "euler";
    character_flags ls_chi;
    ls_cmd->add_option("--kind", ls_kind, "zeta, dirichlet or modular")
        ->check(CLI::IsMember({"zeta", "dirichlet", "modular"}));
    ls_cmd->add_option("--s", ls_s, "complex s");
    ls_cmd->add_option("--method", ls_method, "euler or series")->check(CLI::IsMember({"euler", "series"}));
    ls_cmd->add_option("--prime-bound", prime_bound, "largest prime in the Euler product");
    ls_cmd->add_option("--terms", terms, "Dirichlet series length");
    ls_chi.attach(ls_cmd);

    // tau
    auto* tau_cmd = app.add_subcommand("tau", "Ramanujan tau(1..N) as exact integers");
    int tau_max = 10;
    tau_cmd->add_option("--max", tau_max, "N")->required()->check(CLI::PositiveNumber);

    // factorize
    auto* fac_cmd = app.add_subcommand("factorize", "roots a_1, a_2 of x^2 - tau(p) x + p^11");
    int fac_p = 2;
    fac_cmd->add_option("--p", fac_p, "prime")->required();

    // hecke-trace
    auto* hk_cmd = app.add_subcommand("hecke-trace", "conjugated trace vs a(p^l) p^(-sl) L_p");
    int hk_p = 2, hk_l = 1;
    std::string hk_s = "8", hk_kind = "modular";
    character_flags hk_chi;
    hk_cmd->add_option("--p", hk_p, "prime")->required();
    hk_cmd->add_option("--s", hk_s, "complex s");
    hk_cmd->add_option("--l", hk_l, "shift l")->check(CLI::NonNegativeNumber);
    hk_cmd->add_option("--M", truncation, "truncation (default: config)");
    hk_cmd->add_option("--kind", hk_kind, "modular or dirichlet")->check(CLI::IsMember({"modular", "dirichlet"}));
    hk_chi.attach(hk_cmd);

    // selftest
    auto* st_cmd = app.add_subcommand("selftest", "run the acceptance invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    run_config cfg;
    json out;
    int status = 0;
    try {
        if (config_path) cfg.load_file(*config_path);
        if (format_flag) cfg.format = run_config::parse_format(*format_flag);
        if (truncation) cfg.truncation = *truncation;
        if (prime_bound) cfg.prime_bound = *prime_bound;
        if (terms) cfg.series_length = *terms;
        cfg.validate();
        const series_options sopts = series_opts(cfg);

        if (*gamma_cmd) {
            const complex_value s = parse_complex(g_s);
            gamma_spec spec = gamma_spec::standard(g_p, s);
            if (g_root && g_chi.given()) throw usage_error("choose either a character or --modular-root");
            if (g_chi.given()) spec = gamma_spec::character_twisted(g_chi.get(), g_p, s);
            if (g_root) {
                const auto fac = factorize_local(delta_provider(g_p), g_p);
                spec = gamma_spec::modular(*g_root, fac.root(*g_root), g_p, s);
            }
            gamma_quadrature_options qopts;
            qopts.quadrature.coset_cap = cfg.coset_cap;
            const auto q = gamma_by_quadrature(spec, cfg.truncation, qopts);
            const complex_value closed = gamma_closed_form(spec);
            const double diff = std::abs(q.value - closed);
            out = {{"command", "gamma"},
                   {"p", g_p},
                   {"twist", spec.datum.describe()},
                   {"s", report::complex_json(s)},
                   {"circles", cfg.truncation},
                   {"closed_form", report::complex_json(closed)},
                   {"quadrature", report::complex_json(q.value)},
                   {"regions",
                    {{"inner", report::complex_json(q.inner)},
                     {"unit", report::complex_json(q.unit)},
                     {"outer", report::complex_json(q.outer)}}},
                   {"remainder_bound", q.remainder_bound},
                   {"abs_difference", diff},
                   {"within_bound", diff <= q.remainder_bound + cfg.tolerance}};
        } else if (*eig_cmd) {
            const complex_value alpha = parse_complex(e_alpha);
            operator_spec op = operator_spec::plain(e_p, alpha);
            if (e_kind == "character") {
                if (!e_chi.given()) throw usage_error("--kind character needs --chi");
                op = operator_spec::character_twisted(e_chi.get(), e_p, alpha);
            } else if (e_kind != "plain") {
                const int which = e_kind == "modular_a1" ? 1 : 2;
                const auto fac = factorize_local(delta_provider(e_p), e_p);
                op = operator_spec::modular(which, fac.root(which), e_p, alpha);
            }
            const int R = e_radius.value_or(cfg.truncation);
            double worst = 0;
            json kets = json::array();
            for (int label = 0; label <= e_kets; ++label)
                kets.push_back(e_precision == "high" ? eigencheck_ket<hp_real>(op, label, e_points, R, cfg, worst)
                                                      : eigencheck_ket<double>(op, label, e_points, R, cfg, worst));
            out = {{"command", "eigencheck"},
                   {"p", e_p},
                   {"operator", op.datum.describe()},
                   {"alpha", report::complex_json(alpha)},
                   {"radius", R},
                   {"precision", e_precision},
                   {"kets", kets},
                   {"max_residual_minus_tail", worst},
                   {"within_tolerance", worst <= cfg.tolerance}};
        } else if (*lf_cmd) {
            const complex_value s = parse_complex(lf_s);
            trace_request req = trace_request::zeta(lf_p, s, cfg.truncation);
            std::string twist = "none";
            if (lf_kind == "dirichlet") {
                const auto chi = lf_chi.get();
                req = trace_request::dirichlet(chi, lf_p, s, cfg.truncation);
                twist = label_of(chi);
            } else if (lf_kind == "modular") {
                req = trace_request::modular(delta_provider(lf_p), lf_p, s, cfg.truncation);
                twist = "delta";
            }
            const complex_value closed = local_factor_closed(req);
            const auto tr = local_trace(req);
            out = {{"command", "local-factor"},
                   {"kind", to_string(req.kind)},
                   {"p", lf_p},
                   {"twist", twist},
                   {"s", report::complex_json(s)},
                   {"trace", report::series_json(tr)},
                   {"closed_form", report::complex_json(closed)},
                   {"abs_difference", std::abs(tr.value - closed)}};
        } else if (*ls_cmd) {
            const complex_value s = parse_complex(ls_s);
            series_result r;
            std::string twist = "none";
            if (ls_kind == "modular") {
                // The coefficient table bounds both P and N; the defaults shrink accordingly.
                const std::int64_t P = prime_bound.value_or(2000), N = terms.value_or(2000);
                const auto f = delta_provider(ls_method == "euler" ? P : N);
                r = ls_method == "euler" ? euler_product(f, s, P, sopts) : dirichlet_series(f, s, N, sopts);
                twist = "delta";
            } else {
                const auto chi = ls_kind == "zeta" ? trivial_character() : ls_chi.get();
                if (ls_kind == "dirichlet") twist = label_of(chi);
                r = ls_method == "euler" ? euler_product(chi, s, cfg.prime_bound, sopts)
                                         : dirichlet_series(chi, s, cfg.series_length, sopts);
            }
            out = {{"command", "lseries"}, {"kind", ls_kind}, {"twist", twist}, {"s", report::complex_json(s)}};
            out.update(report::series_json(r));
        } else if (*tau_cmd) {
            const auto tau = delta_expansion(tau_max);
            json coeffs = json::array();
            for (const auto& t : tau) coeffs.push_back(t.str());
            out = {{"command", "tau"}, {"max", tau_max}, {"coefficients", coeffs}};
        } else if (*fac_cmd) {
            const auto f = delta_provider(fac_p);
            const auto fac = factorize_local(f, fac_p);
            out = {{"command", "factorize"},
                   {"form", "delta"},
                   {"p", fac_p},
                   {"a_p", f.exact_coefficient(fac_p)->str()},
                   {"hecke_constant", f.exact_hecke_constant(fac_p)->str()},
                   {"root1", report::complex_json(fac.root1)},
                   {"root2", report::complex_json(fac.root2)},
                   {"sum_residual", std::abs(fac.root1 + fac.root2 - fac.a_p)},
                   {"product_residual", std::abs(fac.root1 * fac.root2 - fac.hecke_constant)}};
        } else if (*hk_cmd) {
            const complex_value s = parse_complex(hk_s);
            const int M = std::max(cfg.truncation, hk_l);
            if (hk_kind == "modular") {
                const auto f = delta_provider(ipow_int(hk_p, hk_l) + hk_p);
                const auto tr = hecke_conjugated_trace(f, hk_p, s, hk_l, M);
                const complex_value closed = local_factor_closed(trace_request::modular(f, hk_p, s));
                const complex_value predicted =
                    f.coefficient(ipow_int(hk_p, hk_l)) * prime_power(hk_p, -s * double(hk_l)) * closed;
                out = {{"command", "hecke-trace"},
                       {"kind", "modular"},
                       {"p", hk_p},
                       {"s", report::complex_json(s)},
                       {"l", hk_l},
                       {"a_p_l", f.exact_coefficient(ipow_int(hk_p, hk_l))->str()},
                       {"trace", report::series_json(tr)},
                       {"predicted", report::complex_json(predicted)},
                       {"abs_difference", std::abs(tr.value - predicted)},
                       {"lattice_region", report::series_json(lattice_region_sum(f, hk_p, s, hk_l, M))}};
            } else {
                const auto chi = hk_chi.get();
                const auto tr = hecke_conjugated_trace(chi, hk_p, s, hk_l, M);
                const complex_value predicted = ipow(chi(hk_p) * prime_power(hk_p, -s), hk_l) *
                                                local_factor_closed(trace_request::dirichlet(chi, hk_p, s));
                out = {{"command", "hecke-trace"},
                       {"kind", "dirichlet"},
                       {"p", hk_p},
                       {"chi", label_of(chi)},
                       {"s", report::complex_json(s)},
                       {"l", hk_l},
                       {"trace", report::series_json(tr)},
                       {"predicted", report::complex_json(predicted)},
                       {"abs_difference", std::abs(tr.value - predicted)}};
            }
        } else if (*st_cmd) {
            selftest_options o;
            o.M = cfg.truncation;
            o.prime_bound = cfg.prime_bound;
            o.series_length = cfg.series_length;
            o.series = sopts;
            json criteria = json::array();
            long passed = 0, failed = 0;
            for (const auto& c : run_selftest(o)) {
                (c.passed() ? passed : failed) += 1;
                criteria.push_back(report::check_json(c));
            }
            out = {{"command", "selftest"}, {"passed", passed}, {"failed", failed}, {"criteria", criteria}};
            if (failed > 0) status = exit_domain;
        }
    } catch (const usage_error& e) {
        std::cerr << "padic-lfn: usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const math_error& e) {
        std::cerr << "padic-lfn: " << e.what() << "\n";
        return e.kind() == error_kind::invalid_argument ? exit_usage : exit_domain;
    }

    const std::string text = report::render(out, cfg.format);
    const char* env_path = std::getenv("PADIC_LFN_OUTPUT");
    const std::optional<std::string> target = env_path && *env_path ? std::optional<std::string>(env_path) : output_path;
    if (target) {
        std::ofstream file(*target, std::ios::binary);
        if (!file) {
            std::cerr << "padic-lfn: cannot write " << *target << "\n";
            return exit_usage;
        }
        file << text;
    } else {
        std::cout << text;
    }
    return status;
}
