#include "cellrate/numerics/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cellrate/errors.hpp"

namespace cellrate::numerics {

namespace {

// 15-point Kronrod abscissae on [-1,1] (positive half) and weights; the
// embedded 7-point Gauss rule sits on the odd-indexed abscissae.
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

struct PanelResult {
    double integral;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);

    double kronrod = kWgk[7] * fv[7];
    double gauss = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        kronrod += kWgk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) gauss += kWg[i / 2] * (fv[i] + fv[14 - i]);
    }
    kronrod *= h;
    gauss *= h;
    return {kronrod, std::abs(kronrod - gauss)};
}

struct Panel {
    double a, b, integral, error;
};

bool worse(const Panel& lhs, const Panel& rhs) {
    if (lhs.error != rhs.error) return lhs.error < rhs.error;
    return lhs.a < rhs.a;  // tie-break for a deterministic pop order
}

double sum_sorted(std::vector<Panel>& panels, double (*field)(const Panel&)) {
    std::sort(panels.begin(), panels.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    double s = 0.0;
    for (const Panel& p : panels) s += field(p);
    return s;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadSpec& spec) {
    if (!(lo < hi)) throw Error("integrate: requires lo < hi");
    std::vector<Panel> heap;
    const PanelResult first = gk15(f, lo, hi);
    heap.push_back({lo, hi, first.integral, first.error});

    std::vector<Panel> settled;  // panels too narrow to split further
    double total = first.integral;
    double total_err = first.error;

    for (int n = 0; n < spec.max_subdivisions; ++n) {
        if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total)))
            break;
        if (heap.empty()) break;

        std::pop_heap(heap.begin(), heap.end(), worse);
        const Panel p = heap.back();
        heap.pop_back();

        const double mid = 0.5 * (p.a + p.b);
        if (!(p.a < mid && mid < p.b)) {
            settled.push_back(p);  // width at rounding limit
            continue;
        }
        const PanelResult left = gk15(f, p.a, mid);
        const PanelResult right = gk15(f, mid, p.b);
        heap.push_back({p.a, mid, left.integral, left.error});
        std::push_heap(heap.begin(), heap.end(), worse);
        heap.push_back({mid, p.b, right.integral, right.error});
        std::push_heap(heap.begin(), heap.end(), worse);

        total += left.integral + right.integral - p.integral;
        total_err += left.error + right.error - p.error;
    }

    // Re-sum in position order so the value does not depend on heap history.
    for (const Panel& p : settled) heap.push_back(p);
    total = sum_sorted(heap, +[](const Panel& p) { return p.integral; });
    total_err = sum_sorted(heap, +[](const Panel& p) { return p.error; });

    if (!(total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total))))
        throw NonConvergenceError("integrate: subdivision budget exhausted (err=" +
                                  std::to_string(total_err) + ")");
    return total;
}

double integrate_semiinfinite(const std::function<double(double)>& f, double lo,
                              const QuadSpec& spec) {
    return integrate_semiinfinite_scaled(f, lo, 1.0, spec);
}

double integrate_semiinfinite_scaled(const std::function<double(double)>& f, double lo,
                                     double scale, const QuadSpec& spec) {
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw Error("integrate_semiinfinite_scaled: scale must be positive and finite");
    auto g = [&f, lo, scale](double t) {
        const double u = 1.0 - t;
        const double x = lo + scale * t / u;
        return scale * f(x) / (u * u);
    };
    return integrate(g, 0.0, 1.0, spec);
}

}  // namespace cellrate::numerics
