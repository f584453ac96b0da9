#include "hive/hive_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hive {

namespace {

double span(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
}

void push(ValidationReport& r, const char* kind, int i, int j, double slack, double tol) {
    r.min_slack = std::min(r.min_slack, slack);
    if (slack < -tol) r.violations.push_back({kind, i, j, slack});
}

} // namespace

double GTPattern::spread() const {
    if (n == 0) return 0.0;
    return top().front() - top().back();
}

double GTPattern::value_scale() const {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& r : rows) {
        for (double x : r) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    }
    return rows.empty() ? 0.0 : hi - lo;
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    os << (ok() ? "valid" : "INVALID") << " (violations=" << violations.size()
       << ", min_slack=" << min_slack << ", scale=" << scale << ")";
    if (!ok()) {
        const auto& w = violations.front();
        os << " first: " << w.kind << " at (" << w.i << "," << w.j << ") slack=" << w.slack;
    }
    return os.str();
}

ValidationReport gt_validate(const GTPattern& p, double tol) {
    ValidationReport rep;
    rep.scale = p.value_scale();
    const double t = tol > 0 ? tol : 1e-10 * std::max(1.0, rep.scale);
    for (int k = 1; k < p.n; ++k) {
        const auto& shorter = p.row(k);
        const auto& longer = p.row(k + 1);
        for (int j = 0; j < k; ++j) {
            push(rep, "interlace", j, k, longer[static_cast<size_t>(j)] - shorter[static_cast<size_t>(j)], t);
            push(rep, "interlace", j + 1, k, shorter[static_cast<size_t>(j)] - longer[static_cast<size_t>(j + 1)], t);
        }
    }
    return rep;
}

double Hive::value_scale() const { return span(v); }
double DoubleHive::value_scale() const { return span(v); }
double AugmentedHive::value_scale() const { return span(v); }

std::vector<RhombusSlack> rhombus_slacks(const Hive& h) {
    std::vector<RhombusSlack> out;
    const int n = h.n;
    // Type 1: A=(i,j) B=(i+1,j) C=(i+2,j+1) D=(i+1,j+1)
    for (int j = 1; j <= n - 1; ++j)
        for (int i = 0; i + 1 <= j; ++i)
            out.push_back({1, i, j, h(i + 1, j) + h(i + 1, j + 1) - h(i, j) - h(i + 2, j + 1)});
    // Type 2: A=(i,j) B=(i+1,j+1) C=(i+1,j+2) D=(i,j+1)
    for (int j = 0; j <= n - 2; ++j)
        for (int i = 0; i <= j; ++i)
            out.push_back({2, i, j, h(i + 1, j + 1) + h(i, j + 1) - h(i, j) - h(i + 1, j + 2)});
    // Type 3: A=(i,j) B=(i,j-1) C=(i+1,j-1) D=(i+1,j)
    for (int j = 2; j <= n; ++j)
        for (int i = 0; i <= j - 2; ++i)
            out.push_back({3, i, j, h(i, j - 1) + h(i + 1, j) - h(i, j) - h(i + 1, j - 1)});
    return out;
}

void local_slack_triple(const Hive& h, int i, int j, double out[3]) {
    if (!(i >= 0 && i + 1 <= j && j + 2 <= h.n)) {
        throw std::out_of_range("local_slack_triple: stencil outside triangle");
    }
    out[0] = h(i + 1, j + 1) + h(i, j + 1) - h(i, j) - h(i + 1, j + 2);
    out[1] = h(i + 1, j + 1) + h(i, j) - h(i + 1, j) - h(i, j + 1);
    out[2] = h(i + 1, j) + h(i + 1, j + 1) - h(i, j) - h(i + 2, j + 1);
}

void apply_boundary(Hive& h, const BoundaryTriple& t) {
    t.validate();
    if (t.n() != h.n) throw std::invalid_argument("apply_boundary: size mismatch");
    const auto lp = t.lambda.partial_sums();
    const auto mp = t.mu.partial_sums();
    const auto np = t.nu.partial_sums();
    const double total = lp.back();
    for (int i = 0; i <= h.n; ++i) {
        h.at(0, i) = lp[static_cast<size_t>(i)];
        h.at(i, h.n) = total + mp[static_cast<size_t>(i)];
        h.at(i, i) = np[static_cast<size_t>(i)];
    }
}

Hive hive_boundary(const BoundaryTriple& t) {
    Hive h(t.n());
    apply_boundary(h, t);
    return h;
}

ValidationReport validate_hive(const Hive& h, const BoundaryTriple* t, double rel_tol) {
    ValidationReport rep;
    rep.scale = h.value_scale();
    const double tol = rel_tol * std::max(1.0, rep.scale);
    for (const auto& rs : rhombus_slacks(h)) {
        const char* kind = rs.type == 1 ? "rhombus1" : rs.type == 2 ? "rhombus2" : "rhombus3";
        push(rep, kind, rs.i, rs.j, rs.slack, tol);
    }
    if (t != nullptr) {
        const auto lp = t->lambda.partial_sums();
        const auto mp = t->mu.partial_sums();
        const auto np = t->nu.partial_sums();
        const double total = lp.back();
        for (int i = 0; i <= h.n; ++i) {
            const double d0 = std::fabs(h(0, i) - lp[static_cast<size_t>(i)]);
            const double d1 = std::fabs(h(i, h.n) - total - mp[static_cast<size_t>(i)]);
            const double d2 = std::fabs(h(i, i) - np[static_cast<size_t>(i)]);
            if (d0 > tol) rep.violations.push_back({"boundary", 0, i, d0});
            if (d1 > tol) rep.violations.push_back({"boundary", i, h.n, d1});
            if (d2 > tol) rep.violations.push_back({"boundary", i, i, d2});
        }
    }
    return rep;
}

Hive DoubleHive::upper_triangle() const {
    Hive h(n);
    if (glue == Glue::main) {
        for (int i = 0; i <= n; ++i)
            for (int j = i; j <= n; ++j) h.at(i, j) = (*this)(i, j);
    } else {
        for (int i = 0; i <= n; ++i)
            for (int j = i; j <= n; ++j) h.at(i, j) = (*this)(i, j - i);
    }
    return h;
}

Hive DoubleHive::lower_triangle() const {
    Hive h(n);
    if (glue == Glue::main) {
        for (int i = 0; i <= n; ++i)
            for (int j = i; j <= n; ++j) h.at(i, j) = (*this)(j, i);
    } else {
        for (int i = 0; i <= n; ++i)
            for (int j = i; j <= n; ++j) h.at(i, j) = (*this)(n - j + i, j);
    }
    return h;
}

ValidationReport validate_double_hive(const DoubleHive& d, double rel_tol) {
    ValidationReport rep;
    rep.scale = d.value_scale();
    const double tol = rel_tol * std::max(1.0, rep.scale);
    const Hive up = d.upper_triangle();
    const Hive lo = d.lower_triangle();
    for (const auto& rs : rhombus_slacks(up)) {
        const char* kind = rs.type == 1 ? "rhombus1" : rs.type == 2 ? "rhombus2" : "rhombus3";
        push(rep, kind, rs.i, rs.j, rs.slack, tol);
    }
    for (const auto& rs : rhombus_slacks(lo)) {
        const char* kind = rs.type == 1 ? "rhombus1" : rs.type == 2 ? "rhombus2" : "rhombus3";
        push(rep, kind, -rs.i - 1, -rs.j - 1, rs.slack, tol);  // negative anchor marks lower triangle
    }
    return rep;
}

Hive AugmentedHive::upper_triangle() const {
    Hive h(n);
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) h.at(i, j) = (*this)(i, j);
    return h;
}

ValidationReport validate_augmented(const AugmentedHive& a, double rel_tol) {
    ValidationReport rep;
    rep.scale = a.value_scale();
    const double tol = rel_tol * std::max(1.0, rep.scale);
    const int n = a.n;
    for (const auto& rs : rhombus_slacks(a.upper_triangle())) {
        const char* kind = rs.type == 1 ? "rhombus1" : rs.type == 2 ? "rhombus2" : "rhombus3";
        push(rep, kind, rs.i, rs.j, rs.slack, tol);
    }
    // Non-square unit parallelograms with all vertices at or below the diagonal.
    for (int j = 0; j <= n - 1; ++j)
        for (int i = j; i <= n - 2; ++i)
            push(rep, "parallelogram1", i, j,
                 a(i + 1, j) + a(i + 1, j + 1) - a(i, j) - a(i + 2, j + 1), tol);
    for (int j = 0; j <= n - 2; ++j)
        for (int i = j + 1; i <= n - 1; ++i)
            push(rep, "parallelogram2", i, j,
                 a(i + 1, j + 1) + a(i, j + 1) - a(i, j) - a(i + 1, j + 2), tol);
    for (int i = 0; i <= n; ++i) {
        const double z = std::fabs(a(i, 0));
        if (z > tol) rep.violations.push_back({"zero-row", i, 0, z});
    }
    return rep;
}

Spectrum make_large_gaps(const GTPattern& gx, const GTPattern& gy, double margin) {
    if (gx.n != gy.n) throw std::invalid_argument("make_large_gaps: pattern size mismatch");
    if (margin < 1.0) throw std::invalid_argument("make_large_gaps: margin must be >= 1");
    const int n = gx.n;
    const double g = margin * (std::max(gx.spread(), gy.spread()) + 1.0);
    Spectrum s;
    s.values.resize(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) s.values[static_cast<size_t>(i - 1)] = (n - i) * g;
    return s;
}

DoubleHive build_double_hive(const GTPattern& gx, const GTPattern& gy, const Spectrum& Lambda) {
    const int n = gx.n;
    if (gy.n != n || Lambda.n() != n) {
        throw std::invalid_argument("build_double_hive: size mismatch");
    }
    if (n > 1) {
        double min_gap = std::numeric_limits<double>::infinity();
        for (int i = 0; i + 1 < n; ++i) min_gap = std::min(min_gap, Lambda[i] - Lambda[i + 1]);
        if (!(min_gap > gx.spread() && min_gap > gy.spread())) {
            throw std::invalid_argument("build_double_hive: gap condition violated");
        }
    }
    const auto lp = Lambda.partial_sums();
    DoubleHive d(n, DoubleHive::Glue::main);
    for (int i = 0; i <= n; ++i) {
        for (int j = i; j <= n; ++j) {
            double s = lp[static_cast<size_t>(i)];
            const int m = n - i;
            for (int k = 0; k < j - i; ++k) s += gx.row(m)[static_cast<size_t>(k)];
            d.at(i, j) = s;
            if (i == j) continue;
            double t = lp[static_cast<size_t>(i)];
            for (int k = 0; k < j - i; ++k) t += gy.row(m)[static_cast<size_t>(k)];
            d.at(j, i) = t;
        }
    }
    const auto rep = validate_double_hive(d, 1e-9);
    if (!rep.ok()) {
        throw std::runtime_error("build_double_hive: rhombus violation: " + rep.summary());
    }
    return d;
}

double gt_volume_log(const Spectrum& s) {
    return log_vandermonde(s) - log_vandermonde(tau(s.n()));
}

namespace {
Spectrum diag_diff_impl(int n, const std::function<double(int, int)>& at) {
    Spectrum s;
    s.values.resize(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) s.values[static_cast<size_t>(i - 1)] = at(i, i) - at(i - 1, i - 1);
    return s;
}
} // namespace

Spectrum diag_differences(const DoubleHive& d) {
    return diag_diff_impl(d.n, [&](int i, int j) { return d(i, j); });
}

Spectrum diag_differences(const AugmentedHive& a) {
    return diag_diff_impl(a.n, [&](int i, int j) { return a(i, j); });
}

} // namespace hive
