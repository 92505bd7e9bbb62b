#include "bachvol/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "bachvol/conversions.hpp"
#include "bachvol/csv.hpp"
#include "bachvol/implied_vol.hpp"
#include "bachvol/moments.hpp"
#include "bachvol/pricing.hpp"
#include "bachvol/smile.hpp"
#include "bachvol/wings.hpp"

namespace bachvol::cli {

namespace {

// Usage problems detected by the CLI itself (bad flag combinations, grids).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) {
    return format_number(v, 17);
}

void require_flag(const std::optional<double>& v, const char* flag) {
    if (!v) throw UsageError(std::string(flag) + " is required");
    if (!std::isfinite(*v)) throw UsageError(std::string(flag) + " must be finite");
}

void require_positive(const std::optional<double>& v, const char* flag) {
    require_flag(v, flag);
    if (!(*v > 0.0)) throw UsageError(std::string(flag) + " must be > 0 (got " + num(*v) + ")");
}

template <class Fn>
void parallel_for(std::size_t n, int threads, Fn fn) {
    const auto workers = static_cast<std::size_t>(std::max(1, threads));
    if (workers == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, n); ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

struct GlobalArgs {
    std::optional<double> forward;
    std::optional<double> expiry;
    double df = 1.0;
    int threads = 1;
};

OptionTerms terms_from(const GlobalArgs& g, double strike) {
    require_flag(g.forward, "--forward");
    require_positive(g.expiry, "--expiry");
    if (!(g.df > 0.0) || !std::isfinite(g.df)) throw UsageError("--df must be > 0 (got " + num(g.df) + ")");
    return OptionTerms{*g.forward, strike, *g.expiry, g.df};
}

OptionKind parse_kind(const std::string& s) {
    return s == "put" ? OptionKind::Put : OptionKind::Call;
}

// ---- price / implied -------------------------------------------------------

struct PriceArgs {
    std::string model;
    std::string kind;
    std::optional<double> strike;
    std::optional<double> vol;
    std::optional<double> price;
};

int cmd_price(const GlobalArgs& g, const PriceArgs& a, std::ostream& out) {
    require_flag(a.strike, "--strike");
    const OptionTerms terms = terms_from(g, *a.strike);
    require_positive(a.vol, "--vol");
    const OptionKind kind = parse_kind(a.kind);
    const double price = a.model == "black" ? black_price(terms, BlackVol(*a.vol), kind)
                                            : bachelier_price(terms, NormalVol(*a.vol), kind);
    out << format_number(price, 12) << '\n';
    return kExitOk;
}

int cmd_implied(const GlobalArgs& g, const PriceArgs& a, std::ostream& out) {
    require_flag(a.strike, "--strike");
    const OptionTerms terms = terms_from(g, *a.strike);
    require_flag(a.price, "--price");
    const OptionKind kind = parse_kind(a.kind);
    const double vol = a.model == "black" ? implied_black_vol(terms, *a.price, kind).vol.value()
                                          : implied_normal_vol(terms, *a.price, kind).vol.value();
    out << num(vol) << '\n';
    return kExitOk;
}

// ---- convert ---------------------------------------------------------------

struct ConvertArgs {
    std::string method = "exact";
    std::string from;
    std::optional<double> strike;
    std::optional<double> vol;
};

int cmd_convert(const GlobalArgs& g, const ConvertArgs& a, std::ostream& out) {
    require_flag(g.forward, "--forward");
    require_positive(g.expiry, "--expiry");
    require_flag(a.strike, "--strike");
    require_positive(a.vol, "--vol");
    const bool from_normal = a.from == "normal";
    if (a.method == "lorig" && !from_normal) {
        throw UsageError("--method lorig converts a normal vol to a Black vol; use --from normal");
    }
    if (a.method != "lorig" && a.method != "exact" && from_normal) {
        throw UsageError("--method " + a.method + " converts a Black vol to a normal vol; use --from black");
    }
    const ConversionInput in{*g.forward, *a.strike, *g.expiry};
    double result = 0.0;
    if (a.method == "exact") {
        result = exact_convert(in, *a.vol,
                               from_normal ? ConversionDirection::NormalToBlack : ConversionDirection::BlackToNormal);
    } else if (a.method == "lorig") {
        result = lorig_black_from_normal(in, NormalVol(*a.vol)).value();
    } else if (a.method == "hagan2") {
        result = hagan_normal_from_black_o2(in, BlackVol(*a.vol)).value();
    } else if (a.method == "hagan4") {
        result = hagan_normal_from_black_o4(in, BlackVol(*a.vol)).value();
    } else {
        result = grunspan_normal_from_black(in, BlackVol(*a.vol)).value();
    }
    out << num(result) << '\n';
    return kExitOk;
}

// ---- smile families (smile-gen, moments) -----------------------------------

struct FamilyArgs {
    std::string family;
    std::optional<double> beta;
    std::optional<double> vol;
    std::optional<double> b;
    std::optional<double> c;
    double scale = 1.0;
    double offset = 0.0;
};

void add_family_options(CLI::App* cmd, FamilyArgs& f, std::vector<std::string> families) {
    cmd->add_option("--family", f.family, "Smile family")->required()->check(CLI::IsMember(std::move(families)));
    cmd->add_option("--beta", f.beta, "power-normal exponent: sigma_N = scale*(|K-F| + offset)^beta");
    cmd->add_option("--scale", f.scale, "power-normal scale")->capture_default_str();
    cmd->add_option("--offset", f.offset, "power-normal offset")->capture_default_str();
    cmd->add_option("--vol", f.vol, "flat normal vol");
    cmd->add_option("--b", f.b, "right-wing exponent (wing-bound, lemma-bound)");
    cmd->add_option("--c", f.c, "left-wing exponent (wing-bound; defaults to --b)");
}

Smile build_smile(const FamilyArgs& f, double forward, double expiry) {
    if (f.family == "flat") {
        require_positive(f.vol, "--vol");
        return Smile::flat(forward, expiry, *f.vol);
    }
    if (f.family == "power-normal") {
        require_positive(f.beta, "--beta");
        if (!(f.scale > 0.0)) throw UsageError("--scale must be > 0");
        if (!(f.offset >= 0.0)) throw UsageError("--offset must be >= 0");
        return Smile::power(forward, expiry, *f.beta, f.scale, f.offset);
    }
    if (f.family == "wing-bound") {
        require_positive(f.b, "--b");
        const double c = f.c.value_or(*f.b);
        if (!(c > 0.0)) throw UsageError("--c must be > 0");
        return Smile::wing_bound(forward, expiry, WingBoundParams{*f.b, c, 0.0});
    }
    if (f.family == "lemma-bound") {
        require_positive(f.b, "--b");
        if (*f.b < 2.0) throw UsageError("--b must be >= 2 for lemma-bound");
        return Smile::lemma_bound(forward, expiry, *f.b);
    }
    throw UsageError("family " + f.family + " does not define a Bachelier smile here");
}

// ---- smile-gen -------------------------------------------------------------

struct GridArgs {
    std::optional<double> k_min;
    std::optional<double> k_max;
    int k_count = 0;
    std::string spacing = "log";
};

std::vector<double> make_grid(const GridArgs& a) {
    require_flag(a.k_min, "--k-min");
    require_flag(a.k_max, "--k-max");
    if (!(*a.k_min < *a.k_max)) throw UsageError("--k-min must be < --k-max");
    if (a.k_count < 2) throw UsageError("--k-count must be >= 2");
    if (!(*a.k_min > 0.0)) throw UsageError("--k-min must be > 0 (log-moneyness needs K > 0)");
    std::vector<double> grid(static_cast<std::size_t>(a.k_count));
    const double n = a.k_count - 1;
    for (int i = 0; i < a.k_count; ++i) {
        if (a.spacing == "log") {
            const double lo = std::log(*a.k_min);
            const double hi = std::log(*a.k_max);
            grid[i] = std::exp(lo + (hi - lo) * (i / n));
        } else {
            grid[i] = *a.k_min + (*a.k_max - *a.k_min) * (i / n);
        }
    }
    grid.front() = *a.k_min;
    grid.back() = *a.k_max;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw UsageError("strike grid is not strictly increasing; reduce --k-count");
    }
    return grid;
}

struct FigureRow {
    double strike = 0.0;
    double log_moneyness = 0.0;
    double normal_vol = kNaN;
    double black_vol = kNaN;
    double total_variance = kNaN;
    std::string failure;
};

std::string field(double v) {
    return std::isnan(v) ? std::string() : num(v);
}

int cmd_smile_gen(const GlobalArgs& g, const FamilyArgs& f, const GridArgs& grid_args, std::ostream& out,
                  std::ostream& err) {
    require_positive(g.forward, "--forward");
    require_positive(g.expiry, "--expiry");
    const double fwd = *g.forward;
    const double t = *g.expiry;
    const std::vector<double> grid = make_grid(grid_args);
    const bool lbv = f.family == "linear-black-variance";
    std::optional<Smile> smile;
    if (lbv || (f.family == "power-normal" && f.offset == 0.0)) {
        if (!(grid.front() > fwd)) throw UsageError("--k-min must be > --forward for family " + f.family);
    }
    if (!lbv) {
        smile = build_smile(f, fwd, t);
        for (double k : {grid.front(), grid.back()}) {
            if (!smile->domain().contains(k)) {
                throw UsageError("strike " + num(k) + " lies outside the domain of " + smile->describe());
            }
        }
    }

    std::vector<FigureRow> rows(grid.size());
    parallel_for(grid.size(), g.threads, [&](std::size_t i) {
        FigureRow& row = rows[i];
        row.strike = grid[i];
        row.log_moneyness = std::log(grid[i] / fwd);
        const ConversionInput in{fwd, grid[i], t};
        try {
            if (lbv) {
                row.total_variance = row.log_moneyness;
                row.black_vol = std::sqrt(row.log_moneyness / t);
                row.normal_vol = exact_convert(in, row.black_vol, ConversionDirection::BlackToNormal);
            } else {
                row.normal_vol = smile->vol(grid[i]).value();
                row.black_vol = exact_convert(in, row.normal_vol, ConversionDirection::NormalToBlack);
                row.total_variance = row.black_vol * row.black_vol * t;
            }
        } catch (const NoSolutionError& e) {
            row.failure = e.what();
        } catch (const ConvergenceError& e) {
            row.failure = e.what();
        }
    });

    out << "strike,log_moneyness,normal_vol,black_vol,total_variance\n";
    std::size_t failures = 0;
    for (const FigureRow& row : rows) {
        if (!row.failure.empty()) ++failures;
        out << csv_row({num(row.strike), num(row.log_moneyness), field(row.normal_vol), field(row.black_vol),
                        field(row.total_variance)})
            << '\n';
    }
    if (failures > 0) {
        err << "smile-gen: " << failures << " of " << rows.size()
            << " rows have no conversion solution; converted fields left empty\n";
        for (const FigureRow& row : rows) {
            if (!row.failure.empty()) err << "  K=" << num(row.strike) << ": " << row.failure << '\n';
        }
    }
    return kExitOk;
}

// ---- audit -----------------------------------------------------------------

struct AuditArgs {
    std::string input;
    std::optional<double> b;
    std::optional<double> c;
    int max_moment = 0;
};

struct Normalized {
    double sigma_n = kNaN;
    std::string failure;
};

double normalize_quote(const Quote& q, const OptionTerms& terms) {
    switch (q.kind) {
        case QuoteKind::NormalVol: return NormalVol(q.value).value();
        case QuoteKind::BlackVol:
            return exact_convert(ConversionInput{terms.forward, terms.strike, terms.expiry}, q.value,
                                 ConversionDirection::BlackToNormal);
        case QuoteKind::PriceCall: return implied_normal_vol(terms, q.value, OptionKind::Call).vol.value();
        case QuoteKind::PricePut: return implied_normal_vol(terms, q.value, OptionKind::Put).vol.value();
    }
    throw UsageError("unknown quote kind");
}

// Wing-bound margin applied to the right wing guard K > max(F, 1) + margin.
constexpr double kBoundGuard = 1.0;

int cmd_audit(const GlobalArgs& g, const AuditArgs& a, std::ostream& out, std::ostream& err) {
    const OptionTerms base = terms_from(g, 0.0);
    if (a.b && !(*a.b > 0.0)) throw UsageError("--b must be > 0");
    if (a.c && !(*a.c > 0.0)) throw UsageError("--c must be > 0");
    if (a.max_moment < 0) throw UsageError("--max-moment must be >= 0");

    std::ifstream file(a.input);
    if (!file) throw UsageError("cannot open --input " + a.input);
    const std::vector<Quote> quotes = parse_quotes(file);

    std::vector<Normalized> norm(quotes.size());
    parallel_for(quotes.size(), g.threads, [&](std::size_t i) {
        OptionTerms terms = base;
        terms.strike = quotes[i].strike;
        try {
            norm[i].sigma_n = normalize_quote(quotes[i], terms);
        } catch (const std::exception& e) {
            norm[i].failure = e.what();
        }
    });

    std::map<double, std::pair<double, int>> points;
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < quotes.size(); ++i) {
        if (!norm[i].failure.empty()) {
            ++skipped;
            err << "audit: line " << quotes[i].line << " (K=" << num(quotes[i].strike) << ", "
                << to_string(quotes[i].kind) << "): skipped: " << norm[i].failure << '\n';
            continue;
        }
        const auto [it, inserted] = points.emplace(quotes[i].strike, std::make_pair(norm[i].sigma_n, quotes[i].line));
        if (!inserted) {
            throw CsvError(quotes[i].line, "duplicate strike " + num(quotes[i].strike) + " (first seen on line " +
                                               std::to_string(it->second.second) + ")");
        }
    }
    if (points.size() < 2) throw UsageError("audit needs at least two usable rows, got " + std::to_string(points.size()));

    std::vector<double> strikes;
    std::vector<double> vols;
    for (const auto& [k, v] : points) {
        strikes.push_back(k);
        vols.push_back(v.first);
    }
    const double fwd = base.forward;
    const double t = base.expiry;
    const Smile smile = Smile::tabulated(fwd, t, strikes, vols);

    std::vector<SlopeAuditRow> rows(strikes.size());
    parallel_for(strikes.size(), g.threads, [&](std::size_t i) {
        rows[i] = slope_no_arb_audit(smile, std::span<const double>(&strikes[i], 1)).front();
    });

    auto right_applicable = [&](double k) { return k > std::max(fwd, 1.0) + kBoundGuard; };
    auto left_applicable = [&](double k) { return k < -1.0 && std::abs(k) + fwd > 0.0; };

    out << "strike,sigma_n,ds_dx,lower_allowed,upper_allowed,slope_pass,bound_pass\n";
    std::size_t slope_failures = 0;
    std::vector<double> violations;
    for (std::size_t i = 0; i < strikes.size(); ++i) {
        const double k = strikes[i];
        std::string bound = "na";
        if (a.b && right_applicable(k)) {
            const bool ok = vols[i] <= upper_bound_right(k, fwd, t, *a.b).value();
            bound = ok ? "true" : "false";
        } else if (a.c && left_applicable(k)) {
            const bool ok = vols[i] <= upper_bound_left(k, fwd, t, *a.c).value();
            bound = ok ? "true" : "false";
        }
        if (bound == "false") violations.push_back(k);
        if (!rows[i].pass) ++slope_failures;
        out << csv_row({num(k), num(vols[i]), num(rows[i].ds_dx), num(rows[i].lower_allowed),
                        num(rows[i].upper_allowed), rows[i].pass ? "true" : "false", bound})
            << '\n';
    }

    err << "audit summary\n";
    err << "  rows read: " << quotes.size() << ", used: " << strikes.size() << ", skipped: " << skipped << '\n';
    err << "  slope failures: " << slope_failures << '\n';
    if (const auto threshold = pass_threshold(rows)) {
        err << "  slope condition holds from K = " << num(*threshold) << " onwards\n";
    } else {
        err << "  slope condition fails at the largest quoted strike\n";
    }
    err << "  bound violations: " << violations.size();
    for (double k : violations) err << ' ' << num(k);
    err << '\n';

    if (a.max_moment > 0) {
        std::optional<double> b = a.b;
        std::optional<double> c = a.c;
        const char* b_source = "user";
        const char* c_source = "user";
        if (!b && right_applicable(strikes.back())) {
            const double x = strikes.back() - fwd;
            const double s = smile.stddev(strikes.back());
            b = x * x / (s * s * std::log(strikes.back()));
            b_source = "fitted at the largest strike";
        }
        if (!c && left_applicable(strikes.front())) {
            const double x = std::abs(strikes.front()) + fwd;
            const double s = smile.stddev(strikes.front());
            c = x * x / (s * s * std::log(std::abs(strikes.front())));
            c_source = "fitted at the smallest strike";
        }
        if (b) err << "  b = " << num(*b) << " (" << b_source << ")\n";
        if (c) err << "  c = " << num(*c) << " (" << c_source << ")\n";
        for (int p = 1; p <= a.max_moment; ++p) {
            err << "  moment p=" << p << " (E[F^" << p + 1 << "]): ";
            if (!b || !c) {
                err << "undetermined (" << (!b ? "no right-wing exponent" : "no left-wing exponent") << ")\n";
            } else {
                err << (moment_exists(*b, *c, p) ? "finite" : "not guaranteed finite") << '\n';
            }
        }
    }
    return kExitOk;
}

// ---- moments ---------------------------------------------------------------

struct MomentArgs {
    int p = 1;
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    std::optional<double> k_max_left;
    std::optional<double> k_max_right;
};

int cmd_moments(const GlobalArgs& g, FamilyArgs f, const MomentArgs& a, std::ostream& out) {
    require_flag(g.forward, "--forward");
    require_positive(g.expiry, "--expiry");
    if (a.p < 1) throw UsageError("--p must be >= 1");
    if (!(a.rel_tol > 0.0)) throw UsageError("--rel-tol must be > 0");
    if (!(a.abs_tol >= 0.0)) throw UsageError("--abs-tol must be >= 0");
    MomentRequest request{a.p, build_smile(f, *g.forward, *g.expiry), QuadratureConfig{}};
    request.quadrature.rel_tol = a.rel_tol;
    request.quadrature.abs_tol = a.abs_tol;
    if (a.k_max_left || a.k_max_right) {
        const double right = a.k_max_right.value_or(a.k_max_left.value_or(0.0));
        const double left = a.k_max_left.value_or(right);
        if (!(right > 0.0)) throw UsageError("--k-max-right must be > 0");
        if (!(left > 0.0)) throw UsageError("--k-max-left must be > 0 (it is the magnitude of K_min)");
        request.quadrature.truncation_strikes = std::make_pair(-left, right);
    }
    const MomentResult r = carr_madan_moment(request);
    out << "smile: " << request.smile.describe() << '\n';
    out << "moment: E[F_T^" << a.p + 1 << "] (p=" << a.p << ")\n";
    out << "value: " << num(r.value) << '\n';
    out << "converged: " << (r.converged ? "true" : "false") << '\n';
    out << "tail_estimate: " << num(r.tail_estimate) << '\n';
    out << "quadrature_error: " << num(r.quadrature_error) << '\n';
    out << "truncation: " << num(r.k_min) << ' ' << num(r.k_max) << '\n';
    out << "wing_exponents: " << num(r.left_exponent) << ' ' << num(r.right_exponent) << '\n';
    if (!r.converged) out << "DIVERGENT (truncation-dependent)\n";
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bachelier/Black pricing, implied vols, wing audits and moments", "bachvol"};
    app.require_subcommand(1);

    GlobalArgs g;
    app.add_option("--forward", g.forward, "Forward F");
    app.add_option("--expiry", g.expiry, "Expiry T in years");
    app.add_option("--df", g.df, "Discount factor B")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads for per-strike work")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    PriceArgs price_args;
    auto add_price_flags = [&](CLI::App* cmd, bool with_vol) {
        cmd->fallthrough();
        cmd->add_option("--model", price_args.model, "Pricing model")
            ->required()
            ->check(CLI::IsMember({"bachelier", "black"}));
        cmd->add_option("--kind", price_args.kind, "Option kind")->required()->check(CLI::IsMember({"call", "put"}));
        cmd->add_option("--strike", price_args.strike, "Strike K")->required();
        if (with_vol) {
            cmd->add_option("--vol", price_args.vol, "Volatility in model units")->required();
        } else {
            cmd->add_option("--price", price_args.price, "Discounted option price")->required();
        }
    };
    CLI::App* price_cmd = app.add_subcommand("price", "Price a European option");
    add_price_flags(price_cmd, true);
    CLI::App* implied_cmd = app.add_subcommand("implied", "Invert a price to an implied volatility");
    add_price_flags(implied_cmd, false);

    ConvertArgs convert_args;
    CLI::App* convert_cmd = app.add_subcommand("convert", "Convert between Black and normal vols");
    convert_cmd->fallthrough();
    convert_cmd->add_option("--method", convert_args.method, "Conversion method")
        ->capture_default_str()
        ->check(CLI::IsMember({"hagan2", "hagan4", "grunspan", "lorig", "exact"}));
    convert_cmd->add_option("--from", convert_args.from, "Source model")
        ->required()
        ->check(CLI::IsMember({"normal", "black"}));
    convert_cmd->add_option("--strike", convert_args.strike, "Strike K")->required();
    convert_cmd->add_option("--vol", convert_args.vol, "Source volatility")->required();

    FamilyArgs gen_family;
    GridArgs grid_args;
    CLI::App* gen_cmd = app.add_subcommand("smile-gen", "Emit a smile as CSV");
    gen_cmd->fallthrough();
    add_family_options(gen_cmd, gen_family,
                       {"power-normal", "linear-black-variance", "flat", "wing-bound", "lemma-bound"});
    gen_cmd->add_option("--k-min", grid_args.k_min, "Smallest strike")->required();
    gen_cmd->add_option("--k-max", grid_args.k_max, "Largest strike")->required();
    gen_cmd->add_option("--k-count", grid_args.k_count, "Number of strikes")->required();
    gen_cmd->add_option("--spacing", grid_args.spacing, "Grid spacing")
        ->capture_default_str()
        ->check(CLI::IsMember({"log", "linear"}));

    AuditArgs audit_args;
    CLI::App* audit_cmd = app.add_subcommand("audit", "Audit quotes for slope arbitrage and wing bounds");
    audit_cmd->fallthrough();
    audit_cmd->add_option("--input", audit_args.input, "Quotes CSV (strike,value,kind)")->required();
    audit_cmd->add_option("--b", audit_args.b, "Right-wing exponent for bound checks");
    audit_cmd->add_option("--c", audit_args.c, "Left-wing exponent for bound checks");
    audit_cmd->add_option("--max-moment", audit_args.max_moment, "Print moment verdicts for p = 1..P");

    FamilyArgs moment_family;
    moment_family.offset = 1.0;
    MomentArgs moment_args;
    CLI::App* moments_cmd = app.add_subcommand("moments", "Carr-Madan moment E[F_T^(p+1)] of a smile");
    moments_cmd->fallthrough();
    add_family_options(moments_cmd, moment_family, {"flat", "power-normal", "wing-bound", "lemma-bound"});
    moments_cmd->add_option("--p", moment_args.p, "Moment order parameter")->capture_default_str();
    moments_cmd->add_option("--rel-tol", moment_args.rel_tol, "Relative tolerance")->capture_default_str();
    moments_cmd->add_option("--abs-tol", moment_args.abs_tol, "Absolute tolerance")->capture_default_str();
    moments_cmd->add_option("--k-max-left", moment_args.k_max_left, "Left truncation |K_min|");
    moments_cmd->add_option("--k-max-right", moment_args.k_max_right, "Right truncation K_max");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*price_cmd) return cmd_price(g, price_args, out);
        if (*implied_cmd) return cmd_implied(g, price_args, out);
        if (*convert_cmd) return cmd_convert(g, convert_args, out);
        if (*gen_cmd) return cmd_smile_gen(g, gen_family, grid_args, out, err);
        if (*audit_cmd) return cmd_audit(g, audit_args, out, err);
        if (*moments_cmd) return cmd_moments(g, moment_family, moment_args, out);
    } catch (const UsageError& e) {
        err << "bachvol: error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const CsvError& e) {
        err << "bachvol: error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NoSolutionError& e) {
        err << "bachvol: no solution: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "bachvol: error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "bachvol: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitUsage;
}

}  // namespace bachvol::cli
