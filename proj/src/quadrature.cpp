#include "abstokes/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

namespace abstokes {

namespace {

// Gauss-Kronrod (7,15) nodes and weights on [-1, 1], positive half.
// Odd-index nodes (plus the centre) form the embedded 7-point Gauss rule.
constexpr double kNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a = 0.0;
    double b = 0.0;
    double value = 0.0;
    double error = 0.0;
};

struct PanelOrder {
    bool operator()(const Panel& lhs, const Panel& rhs) const {
        return lhs.error < rhs.error;
    }
};

Panel gk15(const std::function<double(double)>& fn, double a, double b,
           long& evaluations) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv1[8];
    double fv2[8];
    for (int j = 0; j < 7; ++j) {
        fv1[j] = fn(centre - half * kNodes[j]);
        fv2[j] = fn(centre + half * kNodes[j]);
    }
    const double fc = fn(centre);
    evaluations += 15;

    for (int j = 0; j < 7; ++j) {
        if (!std::isfinite(fv1[j]) || !std::isfinite(fv2[j])) {
            throw std::runtime_error(
                "integrand returned a non-finite value near x = " +
                std::to_string(centre));
        }
    }
    if (!std::isfinite(fc)) {
        throw std::runtime_error(
            "integrand returned a non-finite value at x = " +
            std::to_string(centre));
    }

    double resk = kKronrodW[7] * fc;
    double resabs = std::abs(resk);
    double resg = kGaussW[3] * fc;
    for (int j = 0; j < 7; ++j) {
        resk += kKronrodW[j] * (fv1[j] + fv2[j]);
        resabs += kKronrodW[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1) {
            resg += kGaussW[j / 2] * (fv1[j] + fv2[j]);
        }
    }

    const double mean = 0.5 * resk;
    double resasc = kKronrodW[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) {
        resasc += kKronrodW[j] *
                  (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
    }
    resabs *= std::abs(half);
    resasc *= std::abs(half);

    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    // Roundoff floor: summation noise scales with the absolute mass.
    const double eps = std::numeric_limits<double>::epsilon();
    const double tiny = std::numeric_limits<double>::min();
    if (resabs > tiny / eps) {
        err = std::max(eps * resabs, err);
    }

    return Panel{a, b, resk * half, err};
}

std::vector<double> panel_edges(double lo, double hi,
                                const std::vector<double>& breakpoints) {
    std::vector<double> edges;
    edges.push_back(lo);
    std::vector<double> inner;
    for (double bp : breakpoints) {
        if (bp > lo && bp < hi) inner.push_back(bp);
    }
    std::sort(inner.begin(), inner.end());
    const double span = hi - lo;
    for (double bp : inner) {
        if (bp - edges.back() > 1e-14 * span) edges.push_back(bp);
    }
    edges.push_back(hi);
    return edges;
}

}  // namespace

IntegralResult integrate_1d(const std::function<double(double)>& fn,
                            double a, double b, const QuadratureConfig& cfg) {
    if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0)) {
        throw std::invalid_argument("quadrature tolerances must be positive");
    }
    if (cfg.max_subdivisions < 1) {
        throw std::invalid_argument("max_subdivisions must be at least 1");
    }
    if (a == b) {
        return IntegralResult{0.0, 0.0, 0, true};
    }

    double lo = a;
    double hi = b;
    double sign = 1.0;
    if (lo > hi) {
        std::swap(lo, hi);
        sign = -1.0;
    }

    IntegralResult result;
    std::priority_queue<Panel, std::vector<Panel>, PanelOrder> queue;
    double total_value = 0.0;
    double total_error = 0.0;

    const std::vector<double> edges = panel_edges(lo, hi, cfg.breakpoints);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Panel panel = gk15(fn, edges[i], edges[i + 1], result.evaluations);
        total_value += panel.value;
        total_error += panel.error;
        queue.push(panel);
    }

    auto tolerance = [&cfg](double value) {
        return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
    };

    int subdivisions = 0;
    int stalls = 0;
    while (total_error > tolerance(total_value) &&
           subdivisions < cfg.max_subdivisions) {
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval no longer splittable at double precision.
            queue.push(worst);
            break;
        }
        Panel left = gk15(fn, worst.a, mid, result.evaluations);
        Panel right = gk15(fn, mid, worst.b, result.evaluations);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++subdivisions;
        // The estimate has hit its roundoff plateau when splitting the worst
        // panel stops paying; further work cannot improve it.
        if (left.error + right.error > 0.99 * worst.error) {
            if (++stalls >= 20) break;
        } else {
            stalls = 0;
        }
    }

    result.value = sign * total_value;
    result.error_estimate = total_error;
    result.converged = total_error <= tolerance(total_value);
    return result;
}

IntegralResult integrate_2d(const std::function<double(double, double)>& fn,
                            const IntegrationRange& x,
                            const IntegrationRange& y,
                            const QuadratureConfig& cfg) {
    return integrate_2d(fn, x, y, cfg, nullptr);
}

IntegralResult integrate_2d(
    const std::function<double(double, double)>& fn, const IntegrationRange& x,
    const IntegrationRange& y, const QuadratureConfig& cfg,
    const std::function<std::vector<double>(double)>& inner_breakpoints_at) {
    QuadratureConfig inner_cfg = cfg;
    inner_cfg.abs_tol = cfg.abs_tol / 10.0;
    inner_cfg.rel_tol = cfg.rel_tol / 10.0;
    inner_cfg.breakpoints = x.breakpoints;

    QuadratureConfig outer_cfg = cfg;
    outer_cfg.breakpoints = y.breakpoints;

    const std::size_t fixed_count = inner_cfg.breakpoints.size();
    long inner_evaluations = 0;
    bool inner_converged = true;
    auto outer_integrand = [&](double yv) {
        auto slice = [&fn, yv](double xv) { return fn(xv, yv); };
        inner_cfg.breakpoints.resize(fixed_count);
        if (inner_breakpoints_at) {
            for (double bp : inner_breakpoints_at(yv)) {
                inner_cfg.breakpoints.push_back(bp);
            }
        }
        IntegralResult inner = integrate_1d(slice, x.lo, x.hi, inner_cfg);
        inner_evaluations += inner.evaluations;
        inner_converged = inner_converged && inner.converged;
        return inner.value;
    };

    IntegralResult outer = integrate_1d(outer_integrand, y.lo, y.hi, outer_cfg);
    outer.evaluations = inner_evaluations;
    outer.converged = outer.converged && inner_converged;
    return outer;
}

double riemann_oracle(const std::function<double(double)>& fn,
                      double a, double b, long panels) {
    if (panels < 1) {
        throw std::domain_error("riemann_oracle requires at least one panel");
    }
    const double h = (b - a) / static_cast<double>(panels);
    double sum = 0.0;
    for (long i = 0; i < panels; ++i) {
        sum += fn(a + (static_cast<double>(i) + 0.5) * h);
    }
    return sum * h;
}

}  // namespace abstokes
