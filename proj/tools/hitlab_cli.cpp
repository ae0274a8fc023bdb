// Experiment driver: one static binary, one subcommand per experiment kind.
// All sampled randomness derives from --seed through SplitMix64 streams, so
// identical (config, seed) reproduce every output byte for byte. The only
// exception is manifest.json, which records wall-clock runtimes.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hitlab/corr.hpp"
#include "hitlab/flow.hpp"
#include "hitlab/indicator.hpp"
#include "hitlab/json_io.hpp"
#include "hitlab/measure.hpp"
#include "hitlab/orbit.hpp"
#include "hitlab/pair_builder.hpp"
#include "hitlab/rng.hpp"

namespace fs = std::filesystem;
using namespace hitlab;

namespace {

struct Common {
    std::string config_path;
    std::string out = "out";
    std::uint64_t seed = 1;
    int jobs = 1;
    Json cfg = Json::object();
    std::vector<std::function<void()>> appliers;  // config -> unset options
    CLI::Option* seed_opt = nullptr;
    CLI::Option* out_opt = nullptr;
    CLI::Option* jobs_opt = nullptr;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--config", c.config_path, "JSON config file; flags win");
    c.seed_opt =
        sub->add_option("--seed", c.seed, "master seed for all sampled points");
    c.out_opt = sub->add_option("--out", c.out, "output directory");
    c.jobs_opt = sub->add_option("--jobs", c.jobs,
                                 "worker budget (results are "
                                 "order-independent and sorted)")
                     ->check(CLI::PositiveNumber);
}

// Registers an option that a config file can also set; explicit flags win.
template <typename T>
void cfgable(CLI::App* sub, Common& c, const std::string& name, T& var,
             const std::string& desc) {
    auto* opt = sub->add_option("--" + name, var, desc);
    c.appliers.push_back([&c, opt, name, &var] {
        if (opt->count() == 0 && c.cfg.contains(name))
            var = c.cfg.at(name).get<T>();
    });
}

void load_config(Common& c) {
    if (!c.config_path.empty()) {
        std::ifstream in(c.config_path);
        if (!in)
            throw ConfigError("config file not readable: " + c.config_path);
        try {
            in >> c.cfg;
        } catch (const std::exception& e) {
            throw ConfigError(std::string("config parse error: ") + e.what());
        }
        if (!c.cfg.is_object())
            throw ConfigError("config must be a JSON object");
        if (c.seed_opt->count() == 0 && c.cfg.contains("seed"))
            c.seed = c.cfg.at("seed").get<std::uint64_t>();
        if (c.out_opt->count() == 0 && c.cfg.contains("out"))
            c.out = c.cfg.at("out").get<std::string>();
        if (c.jobs_opt->count() == 0 && c.cfg.contains("jobs"))
            c.jobs = c.cfg.at("jobs").get<int>();
    }
    for (auto& f : c.appliers) f();
}

void write_text(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("output path not writable: " + path.string());
    out << text;
}

void write_json(const fs::path& path, const Json& j) {
    write_text(path, j.dump(2) + "\n");
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

// manifest.json: versions, config hash, runtimes. Deliberately the one file
// with run-dependent content; determinism checks compare everything else.
void write_manifest(const Common& c, const std::string& command,
                    const Json& effective, double runtime_ms) {
    Json m;
    m["tool"] = "hitlab";
    m["version"] = "1.0.0";
    m["command"] = command;
    m["seed"] = c.seed;
    m["jobs"] = c.jobs;
    m["config_hash"] = fnv1a64(command + effective.dump());
    m["effective_config"] = effective;
    m["runtime_ms"] = format_double(runtime_ms);
    write_json(fs::path(c.out) / "manifest.json", m);
}

Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        return Rational(BigInt(s.substr(0, slash)),
                        BigInt(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw ConfigError("not a rational (num/den): " + s);
    }
}

Rational rand_unit_rational(SplitMix64& rng) {
    return Rational(rng.next_below(1000000) + 1, 1000003);
}

struct Timer {
    std::chrono::steady_clock::time_point t0 =
        std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }
};

// ---------------------------------------------------------------- build-pair

bool run_build_pair(const Common& c, double gamma, int levels,
                    const std::string& regime) {
    IntertwinedPair pair;
    if (regime == "power")
        pair = build_pair(gamma, levels);
    else if (regime == "exponential")
        pair = build_exponential_pair(levels);
    else
        throw ConfigError("regime must be power or exponential");
    auto report = verify_membership(pair);
    write_json(fs::path(c.out) / "pair.json", pair_to_json(pair, report));
    return report.all_ok;
}

// ----------------------------------------------------------------------- hit

bool run_hit(const Common& c, const std::string& alpha_s, int golden_depth,
             const std::string& alpha2_s, const std::string& x_s,
             const std::string& x2_s, const std::string& x0_s,
             const std::string& x02_s, const std::string& r_s,
             const std::string& horizon_s) {
    const Rational r = parse_rational(r_s);
    const BigInt horizon(horizon_s);
    HittingRecord rec;
    Json detail;
    if (!alpha2_s.empty()) {
        ContinuedFraction a1 = golden_depth > 0
                                   ? golden_cf(golden_depth)
                                   : cf_from_rational(parse_rational(alpha_s));
        ContinuedFraction a2 = cf_from_rational(parse_rational(alpha2_s));
        TorusPoint x({parse_rational(x_s), parse_rational(x2_s)});
        TorusPoint x0({parse_rational(x0_s), parse_rational(x02_s)});
        rec = hit_torus2(a1, a2, x, x0, r, horizon);
        detail["system"] = "torus2";
    } else {
        CirclePoint x{parse_rational(x_s)}, x0{parse_rational(x0_s)};
        if (golden_depth > 0)
            rec = hit_circle(golden_cf(golden_depth), x, x0, r, horizon);
        else
            rec = hit_circle(parse_rational(alpha_s), x, x0, r, horizon);
        detail["system"] = "circle";
    }

    std::ostringstream csv;
    csv << "# provenance: exact rational inputs; tau is an exact integer\n"
        << "instance_id,r_num,r_den,tau,horizon,censored_flag\n"
        << 0 << ',' << to_decimal(numerator(r)) << ','
        << to_decimal(denominator(r)) << ','
        << (rec.found() ? to_decimal(*rec.tau) : std::string("")) << ','
        << to_decimal(rec.horizon) << ',' << (rec.found() ? 0 : 1) << '\n';
    write_text(fs::path(c.out) / "hit.csv", csv.str());

    detail["r"] = rational_to_json(r);
    detail["tau"] = rec.found() ? Json(to_decimal(*rec.tau)) : Json(nullptr);
    detail["horizon"] = to_decimal(rec.horizon);
    detail["censored"] = !rec.found();
    write_json(fs::path(c.out) / "hit.json", detail);
    return true;
}

// ---------------------------------------------------------------- indicators

bool run_indicators(const Common& c, double gamma, int levels, int points,
                    int n_min, int n_max, const std::string& horizon_s) {
    auto pair = build_pair(gamma, levels);
    const BigInt horizon(horizon_s);
    RadiusSchedule sched{std::exp(1.0), n_min, n_max};
    TorusPoint x0({Rational(0), Rational(0)});

    std::ostringstream csv;
    csv << "# provenance: radii exact dyadic ~ e^-n; ratios are float "
           "(17 significant digits)\n"
        << "point_id,n,ratio,censored\n";
    Json summary;
    summary["gamma"] = format_double(gamma);
    summary["levels"] = levels;
    summary["schedule"] = {{"base", format_double(sched.base)},
                           {"n_min", n_min},
                           {"n_max", n_max}};
    Json per_point = Json::array();
    double min_low = std::numeric_limits<double>::infinity();
    for (int i = 0; i < points; ++i) {
        SplitMix64 rng = SplitMix64::stream(c.seed, i);
        TorusPoint x({rand_unit_rational(rng), rand_unit_rational(rng)});
        auto est = torus2_indicators(pair.alpha, pair.alpha_prime, x, x0,
                                     sched, horizon);
        for (const auto& [n, ratio] : est.ratios)
            csv << i << ',' << n << ',' << format_double(ratio) << ",0\n";
        Json p = indicator_to_json(est);
        p["point_id"] = i;
        p["x"] = Json::array(
            {rational_to_json(x.c[0]), rational_to_json(x.c[1])});
        per_point.push_back(p);
        min_low = std::min(min_low, est.R_low);
    }
    summary["points"] = per_point;
    summary["min_R_low"] = format_double(min_low);
    write_text(fs::path(c.out) / "indicators.csv", csv.str());
    write_json(fs::path(c.out) / "indicators.json", summary);
    return true;
}

// ------------------------------------------------------------- level-measure

bool run_level_measure(const Common& c, int depth, int window, int k_max) {
    auto g = golden_cf(depth);
    if (window < 1 ||
        static_cast<std::size_t>(window) + 2 > g.depth())
        throw ConfigError("level-measure: window out of the stored depth");
    const Rational norm_lo = norm_q_alpha(g, window);      // ||q_n a||
    const Rational norm_hi = norm_q_alpha(g, window - 1);  // ||q_{n-1} a||
    const Rational r = (norm_lo + norm_hi) / 4;            // 2r mid-window
    auto cs = convergents(g, window);
    const BigInt qn = cs[window].q;
    if (k_max <= 0) k_max = static_cast<int>(std::min<BigInt>(qn - 1, 10));

    Json j;
    j["alpha"] = cf_to_json(g);
    j["window"] = window;
    j["r"] = rational_to_json(r);
    j["q_n"] = to_decimal(qn);
    Json entries = Json::array();
    bool all_match = true;
    for (int k = 1; k <= k_max; ++k) {
        const Rational m = level_set(g, Rational(0), r, BigInt(k)).measure();
        const bool match = m == 2 * r;
        all_match = all_match && match;
        Json e;
        e["k"] = k;
        e["measure"] = rational_to_json(m);
        e["equals_2r"] = match;
        entries.push_back(e);
    }
    j["levels"] = entries;
    j["all_equal_2r"] = all_match;
    write_json(fs::path(c.out) / "level_measure.json", j);
    return all_match;
}

// ----------------------------------------------------------------- key-lemma

bool run_key_lemma(const Common& c, int depth, double beta, double M, double N,
                   int window) {
    auto g = golden_cf(depth);
    if (window < 1 || static_cast<std::size_t>(window) + 2 > g.depth())
        throw ConfigError("key-lemma: window out of the stored depth");
    // 2r slightly inside the upper window endpoint (1/N) ||q_{n-1} a||
    const Rational hi = norm_q_alpha(g, window - 1);
    const Rational two_r =
        hi / Rational(BigInt(std::llround(N * 256.0)), 256) * Rational(255, 256);
    auto query = make_key_lemma_query(g, beta, M, N, window, two_r / 2);
    auto result = check_key_lemma(g, query);
    write_json(fs::path(c.out) / "key_lemma.json",
               key_lemma_to_json(query, result));
    return result.holds;
}

// ------------------------------------------------------------ borel-cantelli

bool run_borel(const Common& c, double gamma, int levels, double beta,
               int max_level) {
    auto pair = build_pair(gamma, levels);
    auto report = borel_cantelli_report(pair, beta, max_level);
    write_json(fs::path(c.out) / "borel_cantelli.json",
               borel_cantelli_to_json(report));
    std::ostringstream csv;
    csv << "# provenance: exact rational partial sums of min(tail, tail') "
           "measures\n"
        << "index,partial_sum_num,partial_sum_den\n";
    for (std::size_t i = 0; i < report.partial_sums.size(); ++i)
        csv << i << ',' << to_decimal(numerator(report.partial_sums[i]))
            << ',' << to_decimal(denominator(report.partial_sums[i])) << '\n';
    write_text(fs::path(c.out) / "partial_sums.csv", csv.str());
    return report.all_bounded;
}

// ---------------------------------------------------------------------- flow

bool run_flow(const Common& c, std::vector<double> direction, double amp,
              std::vector<double> x, std::vector<double> x0, double r,
              double t_max) {
    if (direction.empty()) direction = {1.0, 0.6180339887498949};
    if (x.empty()) x = std::vector<double>(direction.size(), 0.2);
    if (x0.empty()) x0 = std::vector<double>(direction.size(), 0.7);
    TranslationFlow flow{direction};
    std::vector<int> freq(direction.size(), 0);
    freq[0] = 1;
    Reparametrization phi =
        amp == 0.0 ? Reparametrization()
                   : Reparametrization(1.0, {TrigTerm{freq, amp, 0.0}});
    const double C = phi.certified_C();

    auto t_straight = flow_hit(flow, x, x0, r, t_max);
    std::optional<double> t_rep;
    if (t_straight)
        t_rep = reparam_flow_hit(flow, phi, x, x0, r, C * *t_straight + 1.0);
    auto section = poincare_section(flow, phi, x0[0], x);

    Json j;
    Json dir = Json::array();
    for (double d : direction) dir.push_back(format_double(d));
    j["direction"] = dir;
    j["speed"] = {{"c0", format_double(1.0)},
                  {"cos_amplitude", format_double(amp)},
                  {"certified_C", format_double(C)}};
    j["r"] = format_double(r);
    j["tau_flow"] =
        t_straight ? Json(format_double(*t_straight)) : Json(nullptr);
    j["tau_reparametrized"] =
        t_rep ? Json(format_double(*t_rep)) : Json(nullptr);
    const bool sandwich =
        !t_straight || !t_rep ||
        (*t_rep >= *t_straight / C - 1e-6 && *t_rep <= C * *t_straight + 1e-6);
    j["sandwich_holds"] = sandwich;
    Json sec;
    sec["return_time"] = format_double(section.return_time);
    Json pt = Json::array();
    for (double v : section.point) pt.push_back(format_double(v));
    sec["point"] = pt;
    j["poincare_section"] = sec;
    write_json(fs::path(c.out) / "flow.json", j);

    // plot-ready trajectory of the reparametrized flow
    std::ostringstream csv;
    csv << "# provenance: float trajectory (17 significant digits), fixed "
           "time step\n"
        << "t";
    for (std::size_t i = 0; i < direction.size(); ++i) csv << ",x" << i + 1;
    csv << '\n';
    std::vector<double> cur = x;
    const double dt = 0.125;
    for (int k = 0; k <= 160; ++k) {
        csv << format_double(k * dt);
        for (double v : cur) csv << ',' << format_double(v);
        csv << '\n';
        // advance by dt using the time-1 machinery scaled down
        auto next = cur;
        for (int sub = 0; sub < 1; ++sub) {
            TranslationFlow scaled{direction};
            for (double& d : scaled.direction) d *= dt;
            next = time1_map(scaled, phi, next);
        }
        cur = next;
    }
    write_text(fs::path(c.out) / "trajectory.csv", csv.str());
    return sandwich;
}

// ---------------------------------------------------------------------- corr

bool run_corr(const Common& c, double alpha, int n_max) {
    MapSpec rot{SystemKind::rotation, {alpha}};
    MapSpec dbl{SystemKind::doubling, {}};
    auto cosx = Observable::trig(1, 0.0, {TrigTerm{{1}, 1.0, 0.0}});

    std::vector<long> ns;
    for (long n = 1; n <= n_max; ++n) ns.push_back(n);
    auto rot_series = correlation_series(rot, cosx, cosx, ns);
    auto dbl_series = correlation_series(dbl, cosx, cosx, ns);
    write_text(fs::path(c.out) / "corr_rotation.csv",
               "# provenance: closed-form values (float, 17 significant "
               "digits); error_bound 0 = exact\n" +
                   series_to_csv(rot_series));
    write_text(fs::path(c.out) / "corr_doubling.csv",
               "# provenance: closed-form values (float, 17 significant "
               "digits); error_bound 0 = exact\n" +
                   series_to_csv(dbl_series));

    bool doubling_zero = true;
    for (const auto& e : dbl_series.values)
        doubling_zero = doubling_zero && e.value == 0.0;
    auto fit = decay_exponent_fit(rot_series);

    Json j;
    j["alpha"] = format_double(alpha);
    j["rotation_fit_p"] = format_double(fit.p);
    j["rotation_fit_indeterminate"] = fit.indeterminate;
    j["doubling_all_zero"] = doubling_zero;
    j["theorem1_bound_d1_p2"] = format_double(theorem1_bound(1.0, 1.0, 2.0));
    j["theoremC_upper_d1_p2"] = format_double(theoremC_upper(1.0, 2.0));
    j["corollary_bound_d2_R4"] = format_double(corollary_bound(2.0, 4.0));
    j["corollary_bound_d3_Rinf"] = format_double(
        corollary_bound(3.0, std::numeric_limits<double>::infinity()));
    write_json(fs::path(c.out) / "corr.json", j);
    return doubling_zero && std::abs(fit.p) < 0.5;
}

// ------------------------------------------------------------------ verify-all

bool run_verify_all(const Common& c) {
    Json checks = Json::array();
    bool all = true;
    auto record = [&](const std::string& name, bool ok) {
        Json e;
        e["name"] = name;
        e["pass"] = ok;
        checks.push_back(e);
        all = all && ok;
    };

    Common sub = c;  // artifacts of each stage land in subdirectories
    auto stage = [&](const std::string& dir) {
        sub.out = (fs::path(c.out) / dir).string();
    };

    stage("pair");
    record("pair-membership", run_build_pair(sub, 2.0, 4, "power"));

    // solver vs literal orbit walk on seeded circle instances
    {
        bool ok = true;
        for (int i = 0; i < 20 && ok; ++i) {
            SplitMix64 rng = SplitMix64::stream(c.seed, 7000 + i);
            Rational alpha = rand_unit_rational(rng);
            CirclePoint x{rand_unit_rational(rng)}, x0{rand_unit_rational(rng)};
            Rational r(1 + static_cast<long>(rng.next_below(40)), 1000);
            auto rec = hit_circle(alpha, x, x0, r, BigInt(200000));
            Rational cpos = x.v;
            BigInt walk_tau = 0;
            for (long n = 1; n <= 200000; ++n) {
                cpos = frac(cpos + alpha);
                if (circle_dist(cpos, x0.v) < r) {
                    walk_tau = n;
                    break;
                }
            }
            const bool found_match =
                rec.found() ? (walk_tau == *rec.tau) : (walk_tau == 0);
            ok = ok && found_match;
        }
        record("hit-solver-vs-walk", ok);
    }

    stage("hit");
    record("hit-export", run_hit(sub, "", 30, "", "2/7", "", "0", "", "1/100",
                                 "1000000"));

    stage("indicators");
    record("indicators-export", run_indicators(sub, 2.0, 4, 6, 2, 10,
                                               "1000000000000"));

    stage("level-measure");
    record("level-measure-prop", run_level_measure(sub, 30, 6, 0));

    stage("key-lemma");
    record("key-lemma-certified", run_key_lemma(sub, 30, 1.1, 1.0, 1.0, 6));

    stage("borel-cantelli");
    record("borel-cantelli-bounded", run_borel(sub, 2.0, 4, 1.9, 3));

    stage("flow");
    record("flow-sandwich",
           run_flow(sub, {1.0, 0.6180339887498949}, 0.5, {0.2, 0.7},
                    {0.9, 0.1}, 0.1, 500.0));
    {
        TranslationFlow diag{{1.0, 1.0}};
        auto t = flow_hit(diag, {0.0, 0.0}, {0.5, 0.5}, 0.1, 10.0);
        record("flow-diagonal-04",
               t.has_value() && std::abs(*t - 0.4) < 1e-9);
    }

    stage("corr");
    record("corr-controls", run_corr(sub, 0.6180339887498949, 100));
    {
        auto g = golden_cf(40);
        const Rational alpha = frac(value(g));
        MapSpec rot{SystemKind::rotation, {alpha.convert_to<double>()}};
        auto cosx = Observable::trig(1, 0.0, {TrigTerm{{1}, 1.0, 0.0}});
        auto cs = convergents(g, 14);
        bool ok = true;
        for (const auto& conv : cs) {
            if (dist_to_int(Rational(conv.q) * alpha) >= Rational(1, 20))
                continue;
            ok = ok &&
                 correlation(rot, cosx, cosx, conv.q.convert_to<long>())
                         .value >= 0.4;
        }
        record("corr-rotation-witness", ok);
    }

    Json j;
    j["checks"] = checks;
    j["all_pass"] = all;
    write_json(fs::path(c.out) / "verify_all.json", j);
    return all;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hitting-time laboratory for circle rotations, torus "
                 "translations, and reparametrized translation flows"};
    app.require_subcommand(1);

    int rc = 0;
    auto guard = [&](Common& c, const std::string& name, const Json& eff,
                     const std::function<bool()>& body) {
        Timer timer;
        try {
            load_config(c);
            const bool ok = body();
            write_manifest(c, name, eff, timer.ms());
            if (!ok) rc = 1;
        } catch (const ConfigError& e) {
            std::fprintf(stderr, "config error: %s\n", e.what());
            rc = 2;
        } catch (const ResourceError& e) {
            std::fprintf(stderr, "resource error: %s\n", e.what());
            rc = 3;
        } catch (const HorizonError& e) {
            std::fprintf(stderr, "resource error (horizon): %s\n", e.what());
            rc = 3;
        } catch (const DepthError& e) {
            std::fprintf(stderr, "resource error (depth): %s\n", e.what());
            rc = 3;
        }
    };

    // build-pair
    {
        auto* s = app.add_subcommand("build-pair",
                                     "construct and verify an intertwined "
                                     "continued-fraction pair");
        auto c = std::make_shared<Common>();
        auto gamma = std::make_shared<double>(2.0);
        auto levels = std::make_shared<int>(4);
        auto regime = std::make_shared<std::string>("power");
        add_common(s, *c);
        cfgable(s, *c, "gamma", *gamma, "growth exponent (power regime)");
        cfgable(s, *c, "levels", *levels, "enforced levels");
        cfgable(s, *c, "regime", *regime, "power | exponential");
        s->callback([&rc, &guard, c, gamma, levels, regime] {
            Json eff{{"gamma", *gamma}, {"levels", *levels},
                     {"regime", *regime}};
            guard(*c, "build-pair", eff, [&] {
                return run_build_pair(*c, *gamma, *levels, *regime);
            });
        });
    }

    // hit
    {
        auto* s = app.add_subcommand(
            "hit", "exact first-entry time on the circle or 2-torus");
        auto c = std::make_shared<Common>();
        auto alpha = std::make_shared<std::string>("");
        auto gdepth = std::make_shared<int>(0);
        auto alpha2 = std::make_shared<std::string>("");
        auto x = std::make_shared<std::string>("0");
        auto x2 = std::make_shared<std::string>("0");
        auto x0 = std::make_shared<std::string>("0");
        auto x02 = std::make_shared<std::string>("0");
        auto r = std::make_shared<std::string>("1/100");
        auto horizon = std::make_shared<std::string>("1000000");
        add_common(s, *c);
        cfgable(s, *c, "alpha", *alpha, "angle as num/den");
        cfgable(s, *c, "golden-depth", *gdepth,
                "use the golden continued fraction at this depth instead");
        cfgable(s, *c, "alpha-prime", *alpha2,
                "second angle (num/den): switches to the 2-torus");
        cfgable(s, *c, "x", *x, "start, first coordinate (num/den)");
        cfgable(s, *c, "x2", *x2, "start, second coordinate (torus)");
        cfgable(s, *c, "x0", *x0, "target, first coordinate");
        cfgable(s, *c, "x02", *x02, "target, second coordinate (torus)");
        cfgable(s, *c, "r", *r, "ball radius (num/den)");
        cfgable(s, *c, "horizon", *horizon, "search horizon (decimal)");
        s->callback([&rc, &guard, c, alpha, gdepth, alpha2, x, x2, x0, x02, r,
                     horizon] {
            Json eff{{"alpha", *alpha},     {"golden-depth", *gdepth},
                     {"alpha-prime", *alpha2}, {"x", *x},
                     {"x2", *x2},           {"x0", *x0},
                     {"x02", *x02},         {"r", *r},
                     {"horizon", *horizon}};
            guard(*c, "hit", eff, [&] {
                return run_hit(*c, *alpha, *gdepth, *alpha2, *x, *x2, *x0,
                               *x02, *r, *horizon);
            });
        });
    }

    // indicators
    {
        auto* s = app.add_subcommand(
            "indicators",
            "hitting-indicator surrogates on an intertwined pair");
        auto c = std::make_shared<Common>();
        auto gamma = std::make_shared<double>(2.0);
        auto levels = std::make_shared<int>(4);
        auto points = std::make_shared<int>(6);
        auto n_min = std::make_shared<int>(2);
        auto n_max = std::make_shared<int>(10);
        auto horizon = std::make_shared<std::string>("1000000000000");
        add_common(s, *c);
        cfgable(s, *c, "gamma", *gamma, "pair growth exponent");
        cfgable(s, *c, "levels", *levels, "pair levels");
        cfgable(s, *c, "points", *points, "sampled start points");
        cfgable(s, *c, "n-min", *n_min, "schedule start (radius e^-n)");
        cfgable(s, *c, "n-max", *n_max, "schedule end");
        cfgable(s, *c, "horizon", *horizon, "per-query horizon (decimal)");
        s->callback([&rc, &guard, c, gamma, levels, points, n_min, n_max,
                     horizon] {
            Json eff{{"gamma", *gamma},   {"levels", *levels},
                     {"points", *points}, {"n-min", *n_min},
                     {"n-max", *n_max},   {"horizon", *horizon}};
            guard(*c, "indicators", eff, [&] {
                return run_indicators(*c, *gamma, *levels, *points, *n_min,
                                      *n_max, *horizon);
            });
        });
    }

    // level-measure
    {
        auto* s = app.add_subcommand(
            "level-measure",
            "exact level-set measures of the hitting time (golden angle)");
        auto c = std::make_shared<Common>();
        auto depth = std::make_shared<int>(30);
        auto window = std::make_shared<int>(6);
        auto k_max = std::make_shared<int>(0);
        add_common(s, *c);
        cfgable(s, *c, "depth", *depth, "golden truncation depth");
        cfgable(s, *c, "window", *window, "convergent window index n");
        cfgable(s, *c, "k-max", *k_max, "levels to emit (0 = automatic)");
        s->callback([&rc, &guard, c, depth, window, k_max] {
            Json eff{{"depth", *depth}, {"window", *window},
                     {"k-max", *k_max}};
            guard(*c, "level-measure", eff, [&] {
                return run_level_measure(*c, *depth, *window, *k_max);
            });
        });
    }

    // key-lemma
    {
        auto* s = app.add_subcommand(
            "key-lemma", "certified key-lemma inequality check");
        auto c = std::make_shared<Common>();
        auto depth = std::make_shared<int>(30);
        auto beta = std::make_shared<double>(1.1);
        auto M = std::make_shared<double>(1.0);
        auto N = std::make_shared<double>(1.0);
        auto window = std::make_shared<int>(6);
        add_common(s, *c);
        cfgable(s, *c, "depth", *depth, "golden truncation depth");
        cfgable(s, *c, "beta", *beta, "exponent beta >= 1");
        cfgable(s, *c, "bigM", *M, "window constant M");
        cfgable(s, *c, "bigN", *N, "window constant N");
        cfgable(s, *c, "window", *window, "convergent window index n");
        s->callback([&rc, &guard, c, depth, beta, M, N, window] {
            Json eff{{"depth", *depth}, {"beta", *beta}, {"bigM", *M},
                     {"bigN", *N},      {"window", *window}};
            guard(*c, "key-lemma", eff, [&] {
                return run_key_lemma(*c, *depth, *beta, *M, *N, *window);
            });
        });
    }

    // borel-cantelli
    {
        auto* s = app.add_subcommand(
            "borel-cantelli",
            "window schedule, exact tail measures, series bounds");
        auto c = std::make_shared<Common>();
        auto gamma = std::make_shared<double>(2.0);
        auto levels = std::make_shared<int>(4);
        auto beta = std::make_shared<double>(1.9);
        auto max_level = std::make_shared<int>(3);
        add_common(s, *c);
        cfgable(s, *c, "gamma", *gamma, "pair growth exponent");
        cfgable(s, *c, "levels", *levels, "pair levels");
        cfgable(s, *c, "beta", *beta, "exponent 1 < beta < gamma");
        cfgable(s, *c, "max-level", *max_level, "deepest window level");
        s->callback([&rc, &guard, c, gamma, levels, beta, max_level] {
            Json eff{{"gamma", *gamma}, {"levels", *levels}, {"beta", *beta},
                     {"max-level", *max_level}};
            guard(*c, "borel-cantelli", eff, [&] {
                return run_borel(*c, *gamma, *levels, *beta, *max_level);
            });
        });
    }

    // flow
    {
        auto* s = app.add_subcommand(
            "flow", "translation flow hits, reparametrization, section");
        auto c = std::make_shared<Common>();
        auto direction = std::make_shared<std::vector<double>>();
        auto amp = std::make_shared<double>(0.5);
        auto x = std::make_shared<std::vector<double>>();
        auto x0 = std::make_shared<std::vector<double>>();
        auto r = std::make_shared<double>(0.1);
        auto t_max = std::make_shared<double>(500.0);
        add_common(s, *c);
        cfgable(s, *c, "direction", *direction, "direction components");
        cfgable(s, *c, "amp", *amp, "cos amplitude of the speed");
        cfgable(s, *c, "x", *x, "start point");
        cfgable(s, *c, "x0", *x0, "target point");
        cfgable(s, *c, "r", *r, "ball radius");
        cfgable(s, *c, "t-max", *t_max, "time horizon");
        s->callback([&rc, &guard, c, direction, amp, x, x0, r, t_max] {
            Json eff{{"direction", *direction}, {"amp", *amp}, {"x", *x},
                     {"x0", *x0},               {"r", *r},
                     {"t-max", *t_max}};
            guard(*c, "flow", eff, [&] {
                return run_flow(*c, *direction, *amp, *x, *x0, *r, *t_max);
            });
        });
    }

    // corr
    {
        auto* s = app.add_subcommand(
            "corr", "correlation series, decay fits, indicator bounds");
        auto c = std::make_shared<Common>();
        auto alpha = std::make_shared<double>(0.6180339887498949);
        auto n_max = std::make_shared<int>(100);
        add_common(s, *c);
        cfgable(s, *c, "alpha", *alpha, "rotation angle (float)");
        cfgable(s, *c, "n-max", *n_max, "series length");
        s->callback([&rc, &guard, c, alpha, n_max] {
            Json eff{{"alpha", *alpha}, {"n-max", *n_max}};
            guard(*c, "corr", eff,
                  [&] { return run_corr(*c, *alpha, *n_max); });
        });
    }

    // verify-all
    {
        auto* s = app.add_subcommand(
            "verify-all", "run the cross-module invariant battery");
        auto c = std::make_shared<Common>();
        add_common(s, *c);
        s->callback([&rc, &guard, c] {
            guard(*c, "verify-all", Json::object(),
                  [&] { return run_verify_all(*c); });
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return rc;
}
