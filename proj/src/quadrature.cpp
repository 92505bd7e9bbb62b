#include "bachvol/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "bachvol/errors.hpp"

namespace bachvol {

namespace {

// QUADPACK qk15 abscissae/weights on [-1, 1]; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;
};

Panel gauss_kronrod_15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        kronrod += kWgk[j] * (f1[j] + f2[j]);
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1[j] + f2[j]);
    }
    // QUADPACK error heuristic.
    const double mean = 0.5 * kronrod;
    double asc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    asc *= std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    return {a, b, kronrod * half, err};
}

struct ByError {
    bool operator()(const Panel& lhs, const Panel& rhs) const { return lhs.error < rhs.error; }
};

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, std::span<const double> breakpoints,
                                    const QuadratureOptions& options) {
    if (breakpoints.size() < 2) throw DomainError("integrate_adaptive: need at least two breakpoints");
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (!std::isfinite(breakpoints[i])) throw DomainError("integrate_adaptive: non-finite breakpoint");
        if (i > 0 && breakpoints[i] < breakpoints[i - 1]) {
            throw DomainError("integrate_adaptive: breakpoints must be non-decreasing");
        }
    }
    QuadratureResult result;
    std::priority_queue<Panel, std::vector<Panel>, ByError> queue;
    std::vector<Panel> done;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (breakpoints[i + 1] == breakpoints[i]) continue;
        queue.push(gauss_kronrod_15(f, breakpoints[i], breakpoints[i + 1]));
        result.evaluations += 15;
    }

    auto totals = [&]() {
        std::vector<Panel> all = done;
        auto copy = queue;
        while (!copy.empty()) {
            all.push_back(copy.top());
            copy.pop();
        }
        std::sort(all.begin(), all.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
        double value = 0.0;
        double error = 0.0;
        for (const Panel& p : all) {
            value += p.value;
            error += p.error;
        }
        return std::pair{value, error};
    };

    // Running sums steer the refinement; the reported value is resummed in order.
    auto [value, error] = totals();
    while (true) {
        if (!std::isfinite(value) || !std::isfinite(error)) break;
        if (error <= std::max(options.abs_tol, options.rel_tol * std::abs(value))) {
            result.converged = true;
            break;
        }
        if (result.subdivisions >= options.max_subdivisions || queue.empty()) break;
        const Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Panel at floating-point resolution: nothing left to refine there.
            done.push_back(worst);
            continue;
        }
        const Panel left = gauss_kronrod_15(f, worst.a, mid);
        const Panel right = gauss_kronrod_15(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        result.evaluations += 30;
        ++result.subdivisions;
    }
    std::tie(result.value, result.error) = totals();
    return result;
}

QuadratureResult integrate_log_substituted(const std::function<double(double)>& f, double a, double b,
                                           const QuadratureOptions& options) {
    if (!(a > 0.0) || !(b > a)) throw DomainError("integrate_log_substituted: needs 0 < a < b");
    const double ua = std::log(a);
    const double ub = std::log(b);
    // Unit panels in ln k keep each Kronrod rule on a fixed relative scale.
    const int panels = std::max(1, static_cast<int>(std::ceil(ub - ua)));
    std::vector<double> nodes(static_cast<std::size_t>(panels) + 1);
    for (int i = 0; i <= panels; ++i) nodes[static_cast<std::size_t>(i)] = ua + (ub - ua) * i / panels;
    nodes.back() = ub;
    auto g = [&f](double u) {
        const double k = std::exp(u);
        return f(k) * k;
    };
    return integrate_adaptive(g, nodes, options);
}

}  // namespace bachvol
