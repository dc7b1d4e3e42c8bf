#include "igabench/heat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "igabench/mesh_quadrature.hpp"

namespace igabench {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

// Values and derivatives of the p+1 functions of one 1D element at a set of points.
struct Table1D {
    int q = 0;
    int points = 0;
    std::vector<double> value;  // [f * points + n]
    std::vector<double> deriv;

    [[nodiscard]] double b(int f, int n) const { return value[static_cast<std::size_t>(f * points + n)]; }
    [[nodiscard]] double db(int f, int n) const { return deriv[static_cast<std::size_t>(f * points + n)]; }
};

Table1D tabulate_1d(const KnotVector& kv, int element, std::span<const double> x) {
    const int p = kv.degree();
    Table1D t;
    t.q = p + 1;
    t.points = static_cast<int>(x.size());
    t.value.assign(static_cast<std::size_t>(t.q * t.points), 0.0);
    t.deriv.assign(t.value.size(), 0.0);
    for (int n = 0; n < t.points; ++n) {
        const auto bv = eval_nonzero_basis_with_derivatives(kv, element, x[static_cast<std::size_t>(n)]);
        for (int f = 0; f < t.q; ++f) {
            t.value[static_cast<std::size_t>(f * t.points + n)] = bv.values[static_cast<std::size_t>(f)];
            t.deriv[static_cast<std::size_t>(f * t.points + n)] = bv.derivatives[static_cast<std::size_t>(f)];
        }
    }
    return t;
}

struct ElementTables {
    QuadratureRule rule;
    std::array<Table1D, 3> axis;
};

ElementTables element_tables(const KnotVector& kv, ElementId e, int points) {
    ElementTables out{gauss_rule(kv.degree(), kv.elements(), e, points), {}};
    const std::array<int, 3> idx{e.i, e.j, e.k};
    for (std::size_t d = 0; d < 3; ++d) {
        out.axis[d] = tabulate_1d(kv, idx[d], out.rule.abscissae[d]);
    }
    return out;
}

// Applies fn(point weight, a, b, c) over the element's tensor quadrature.
template <typename Fn>
void for_each_point(const ElementTables& t, Fn&& fn) {
    const int Q = t.rule.points_per_direction;
    for (int a = 0; a < Q; ++a) {
        for (int b = 0; b < Q; ++b) {
            for (int c = 0; c < Q; ++c) {
                const double w = t.rule.weights[0][static_cast<std::size_t>(a)] *
                                 t.rule.weights[1][static_cast<std::size_t>(b)] *
                                 t.rule.weights[2][static_cast<std::size_t>(c)];
                fn(w, a, b, c);
            }
        }
    }
}

}  // namespace

// ---------------------------------------------------------------------------

SplineField::SplineField(int k, int p, std::vector<double> c) : elements(k), degree(p), coefficients(std::move(c)) {
    validate();
}

SplineField SplineField::constant(int k, int p, double value) {
    const auto n = static_cast<std::size_t>(k + p);
    return {k, p, std::vector<double>(n * n * n, value)};
}

void SplineField::validate() const {
    if (elements < 1 || degree < 0) {
        throw std::invalid_argument("invalid spline field mesh");
    }
    const auto n = static_cast<std::size_t>(elements + degree);
    if (coefficients.size() != n * n * n) {
        throw std::invalid_argument("spline field has " + std::to_string(coefficients.size()) +
                                    " coefficients, expected " + std::to_string(n * n * n));
    }
    for (const double c : coefficients) {
        if (!std::isfinite(c)) {
            throw std::invalid_argument("spline field has a non-finite coefficient");
        }
    }
}

double SplineField::evaluate(double x, double y, double z) const {
    const KnotVector kv(elements, degree);
    const std::array<double, 3> pt{x, y, z};
    std::array<BasisValues, 3> bv;
    for (std::size_t d = 0; d < 3; ++d) {
        bv[d] = eval_nonzero_basis(kv, kv.find_element(pt[d]), pt[d]);
    }
    double u = 0.0;
    for (int a = 0; a <= degree; ++a) {
        for (int b = 0; b <= degree; ++b) {
            for (int c = 0; c <= degree; ++c) {
                const auto row = dof_index({bv[0].element + a, bv[1].element + b, bv[2].element + c}, elements, degree);
                u += coefficients[row] * bv[0].values[static_cast<std::size_t>(a)] *
                     bv[1].values[static_cast<std::size_t>(b)] * bv[2].values[static_cast<std::size_t>(c)];
            }
        }
    }
    return u;
}

std::array<double, 3> SplineField::gradient(double x, double y, double z) const {
    const KnotVector kv(elements, degree);
    const std::array<double, 3> pt{x, y, z};
    std::array<BasisValues, 3> bv;
    for (std::size_t d = 0; d < 3; ++d) {
        bv[d] = eval_nonzero_basis_with_derivatives(kv, kv.find_element(pt[d]), pt[d]);
    }
    std::array<double, 3> g{0.0, 0.0, 0.0};
    for (int a = 0; a <= degree; ++a) {
        for (int b = 0; b <= degree; ++b) {
            for (int c = 0; c <= degree; ++c) {
                const auto row = dof_index({bv[0].element + a, bv[1].element + b, bv[2].element + c}, elements, degree);
                const auto ua = static_cast<std::size_t>(a);
                const auto ub = static_cast<std::size_t>(b);
                const auto uc = static_cast<std::size_t>(c);
                const double m = coefficients[row];
                g[0] += m * bv[0].derivatives[ua] * bv[1].values[ub] * bv[2].values[uc];
                g[1] += m * bv[0].values[ua] * bv[1].derivatives[ub] * bv[2].values[uc];
                g[2] += m * bv[0].values[ua] * bv[1].values[ub] * bv[2].derivatives[uc];
            }
        }
    }
    return g;
}

// ---------------------------------------------------------------------------

CgResult conjugate_gradient(const GlobalGram& g, std::span<const double> b, std::span<double> x, double tolerance,
                            int max_iterations) {
    const std::size_t n = g.rows();
    if (b.size() != n || x.size() != n) {
        throw std::invalid_argument("conjugate gradient dimension mismatch");
    }
    if (max_iterations <= 0) {
        max_iterations = static_cast<int>(10 * n);
    }
    const double bnorm = std::sqrt(dot(b, b));
    std::vector<double> r(n);
    std::vector<double> ap(n);
    spmv(g, x, ap);
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = b[i] - ap[i];
    }
    if (bnorm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        return {0, 0.0};
    }
    std::vector<double> p = r;
    double rr = dot(r, r);
    CgResult res;
    res.relative_residual = std::sqrt(rr) / bnorm;
    while (res.relative_residual > tolerance) {
        if (res.iterations >= max_iterations) {
            std::ostringstream msg;
            msg << "conjugate gradients did not converge in " << max_iterations << " iterations (residual "
                << res.relative_residual << ")";
            throw std::runtime_error(msg.str());
        }
        spmv(g, p, ap);
        const double pap = dot(p, ap);
        if (!(pap > 0.0)) {
            throw std::runtime_error("conjugate gradients broke down: matrix is not positive definite");
        }
        const double alpha = rr / pap;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        const double rr_next = dot(r, r);
        const double beta = rr_next / rr;
        rr = rr_next;
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = r[i] + beta * p[i];
        }
        ++res.iterations;
        res.relative_residual = std::sqrt(rr) / bnorm;
    }
    return res;
}

double default_time_step(int elements) {
    const double h = 1.0 / elements;
    return h * h / 6.0;
}

double default_initial_state(double x, double y, double z) {
    using std::numbers::pi;
    return 1.0 + std::cos(pi * x) * std::cos(pi * y) * std::cos(pi * z);
}

double analytic_solution(double t, double x, double y, double z) {
    using std::numbers::pi;
    return 1.0 + std::exp(-3.0 * pi * pi * t) * std::cos(pi * x) * std::cos(pi * y) * std::cos(pi * z);
}

// ---------------------------------------------------------------------------

namespace {

const HeatConfig& checked(const HeatConfig& cfg) {
    if (cfg.elements < 1) {
        throw std::invalid_argument("heat demo needs K >= 1");
    }
    if (cfg.degree < 1) {
        throw std::invalid_argument("heat demo needs p >= 1 for the gradient term");
    }
    if (cfg.dt < 0.0 || !(cfg.t_final >= 0.0)) {
        throw std::invalid_argument("time step and final time must be non-negative");
    }
    if (!(cfg.tolerance > 0.0)) {
        throw std::invalid_argument("solver tolerance must be positive");
    }
    return cfg;
}

GlobalGram integrate_gram(Runtime& runtime, const HeatConfig& cfg) {
    RunConfig rc;
    rc.method = cfg.method;
    rc.strategy = cfg.strategy;
    rc.workers = cfg.workers;
    rc.elements = cfg.elements;
    rc.degree = cfg.degree;
    return std::move(runtime.run(rc).gram);
}

}  // namespace

HeatSolver::HeatSolver(const HeatConfig& cfg)
    : cfg_(checked(cfg)), kv_(cfg.elements, cfg.degree), gram_(integrate_gram(runtime_, cfg_)) {}

void HeatSolver::reassemble() { gram_ = integrate_gram(runtime_, cfg_); }

void HeatSolver::check_field(const SplineField& u) const {
    u.validate();
    if (u.elements != cfg_.elements || u.degree != cfg_.degree) {
        throw std::invalid_argument("spline field does not match the solver mesh");
    }
}

SplineField HeatSolver::l2_project(const ScalarField3& u0, CgResult* info) {
    const int p = cfg_.degree;
    const int K = cfg_.elements;
    const int q = p + 1;
    std::vector<double> b(dofs(), 0.0);
    for (const auto e : element_list(K)) {
        const auto t = element_tables(kv_, e, p + 3);
        std::vector<double> local(static_cast<std::size_t>(q * q * q), 0.0);
        for_each_point(t, [&](double w, int a, int bb, int c) {
            const double f = w * u0(t.rule.abscissae[0][static_cast<std::size_t>(a)],
                                    t.rule.abscissae[1][static_cast<std::size_t>(bb)],
                                    t.rule.abscissae[2][static_cast<std::size_t>(c)]);
            for (int l = 0; l < q * q * q; ++l) {
                const auto o = local_offsets(l, p);
                local[static_cast<std::size_t>(l)] += f * t.axis[0].b(o[0], a) * t.axis[1].b(o[1], bb) *
                                                      t.axis[2].b(o[2], c);
            }
        });
        for (int l = 0; l < q * q * q; ++l) {
            const auto o = local_offsets(l, p);
            b[dof_index({e.i + o[0], e.j + o[1], e.k + o[2]}, K, p)] += local[static_cast<std::size_t>(l)];
        }
    }
    std::vector<double> mu(dofs(), 0.0);
    const auto res = conjugate_gradient(gram_, b, mu, cfg_.tolerance);
    if (info != nullptr) {
        *info = res;
    }
    return {K, p, std::move(mu)};
}

std::vector<double> HeatSolver::assemble_rhs(const SplineField& u, double dt) const {
    check_field(u);
    if (dt < 0.0) {
        throw std::invalid_argument("time step must be non-negative");
    }
    const int p = cfg_.degree;
    const int K = cfg_.elements;
    const int q = p + 1;
    const int n = q * q * q;
    std::vector<double> out(dofs(), 0.0);
    std::vector<std::size_t> rows(static_cast<std::size_t>(n));
    std::vector<MultiIndex> offs(static_cast<std::size_t>(n));
    std::vector<double> local(static_cast<std::size_t>(n));
    for (const auto e : element_list(K)) {
        const auto t = element_tables(kv_, e, q);
        for (int l = 0; l < n; ++l) {
            offs[static_cast<std::size_t>(l)] = local_offsets(l, p);
            const auto& o = offs[static_cast<std::size_t>(l)];
            rows[static_cast<std::size_t>(l)] = dof_index({e.i + o[0], e.j + o[1], e.k + o[2]}, K, p);
        }
        std::fill(local.begin(), local.end(), 0.0);
        for_each_point(t, [&](double w, int a, int b, int c) {
            double val = 0.0;
            std::array<double, 3> grad{0.0, 0.0, 0.0};
            for (int l = 0; l < n; ++l) {
                const auto& o = offs[static_cast<std::size_t>(l)];
                const double m = u.coefficients[rows[static_cast<std::size_t>(l)]];
                const double bx = t.axis[0].b(o[0], a);
                const double by = t.axis[1].b(o[1], b);
                const double bz = t.axis[2].b(o[2], c);
                val += m * bx * by * bz;
                grad[0] += m * t.axis[0].db(o[0], a) * by * bz;
                grad[1] += m * bx * t.axis[1].db(o[1], b) * bz;
                grad[2] += m * bx * by * t.axis[2].db(o[2], c);
            }
            for (int l = 0; l < n; ++l) {
                const auto& o = offs[static_cast<std::size_t>(l)];
                const double bx = t.axis[0].b(o[0], a);
                const double by = t.axis[1].b(o[1], b);
                const double bz = t.axis[2].b(o[2], c);
                const double gb = grad[0] * t.axis[0].db(o[0], a) * by * bz +
                                  grad[1] * bx * t.axis[1].db(o[1], b) * bz +
                                  grad[2] * bx * by * t.axis[2].db(o[2], c);
                local[static_cast<std::size_t>(l)] += w * (val * bx * by * bz - dt * gb);
            }
        });
        for (int l = 0; l < n; ++l) {
            out[rows[static_cast<std::size_t>(l)]] += local[static_cast<std::size_t>(l)];
        }
    }
    return out;
}

SplineField HeatSolver::step(const SplineField& u, double dt, CgResult* info) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("time step must be positive");
    }
    if (cfg_.reassemble) {
        reassemble();
    }
    const auto rhs = assemble_rhs(u, dt);
    auto mu = u.coefficients;  // warm start
    const auto res = conjugate_gradient(gram_, rhs, mu, cfg_.tolerance);
    if (info != nullptr) {
        *info = res;
    }
    return {u.elements, u.degree, std::move(mu)};
}

double HeatSolver::mass(const SplineField& u) const {
    check_field(u);
    const auto gu = spmv(gram_, u.coefficients);
    return std::accumulate(gu.begin(), gu.end(), 0.0);
}

double HeatSolver::l2_error(const SplineField& u, const ScalarField3& exact) const {
    check_field(u);
    const int p = cfg_.degree;
    const int K = cfg_.elements;
    const int q = p + 1;
    double sum = 0.0;
    for (const auto e : element_list(K)) {
        const auto t = element_tables(kv_, e, p + 3);
        for_each_point(t, [&](double w, int a, int b, int c) {
            double val = 0.0;
            for (int l = 0; l < q * q * q; ++l) {
                const auto o = local_offsets(l, p);
                val += u.coefficients[dof_index({e.i + o[0], e.j + o[1], e.k + o[2]}, K, p)] *
                       t.axis[0].b(o[0], a) * t.axis[1].b(o[1], b) * t.axis[2].b(o[2], c);
            }
            const double d = val - exact(t.rule.abscissae[0][static_cast<std::size_t>(a)],
                                         t.rule.abscissae[1][static_cast<std::size_t>(b)],
                                         t.rule.abscissae[2][static_cast<std::size_t>(c)]);
            sum += w * d * d;
        });
    }
    return std::sqrt(sum);
}

double HeatSolver::stability_bound(int iterations) {
    // Generalized eigenproblem S v = lambda G v; S v is G v - rhs(v, 1).
    const std::size_t n = dofs();
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = std::sin(1.0 + 0.7 * static_cast<double>(i));  // generic start, not a constant
    }
    const auto apply_s = [&](const std::vector<double>& x) {
        const SplineField f(cfg_.elements, cfg_.degree, x);
        const auto gx = spmv(gram_, x);
        auto r = assemble_rhs(f, 1.0);
        for (std::size_t i = 0; i < n; ++i) {
            r[i] = gx[i] - r[i];
        }
        return r;
    };
    double lambda = 0.0;
    std::vector<double> w(n, 0.0);
    for (int it = 0; it < iterations; ++it) {
        const auto sv = apply_s(v);
        std::fill(w.begin(), w.end(), 0.0);
        conjugate_gradient(gram_, sv, w, 1e-12);
        const double norm = std::sqrt(dot(w, w));
        if (norm == 0.0) {
            break;
        }
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = w[i] / norm;
        }
        const auto gv = spmv(gram_, v);
        lambda = dot(v, apply_s(v)) / dot(v, gv);
    }
    if (!(lambda > 0.0)) {
        return std::numeric_limits<double>::infinity();
    }
    return 2.0 / lambda;
}

HeatRun run_heat(const HeatConfig& cfg, const ScalarField3& u0, const ExactSolution& exact,
                 const std::function<void(const std::string&)>& warn) {
    HeatSolver solver(cfg);
    HeatRun run;
    run.stability_bound = solver.stability_bound();
    const auto note = [&](const std::string& message) {
        run.warnings.push_back(message);
        if (warn) {
            warn(message);
        }
    };
    std::ostringstream msg;
    if (cfg.dt > 0.0) {
        run.dt = cfg.dt;
        if (run.dt > run.stability_bound) {
            msg << "time step " << run.dt << " exceeds the forward Euler stability bound " << run.stability_bound;
            note(msg.str());
        }
    } else {
        // h^2/6 is not always stable with a consistent mass matrix.
        run.dt = std::min(default_time_step(cfg.elements), 0.9 * run.stability_bound);
        if (run.dt < default_time_step(cfg.elements)) {
            msg << "default time step reduced from " << default_time_step(cfg.elements) << " to " << run.dt
                << " (stability bound " << run.stability_bound << ")";
            note(msg.str());
        }
    }

    const auto record = [&](int step, double time, const SplineField& u, int iterations) {
        HeatStepRecord r;
        r.step = step;
        r.time = time;
        r.mass = solver.mass(u);
        r.cg_iterations = iterations;
        if (exact) {
            r.l2_error = solver.l2_error(u, [&](double x, double y, double z) { return exact(time, x, y, z); });
        }
        run.steps.push_back(r);
    };

    CgResult info;
    auto u = solver.l2_project(u0, &info);
    record(0, 0.0, u, info.iterations);
    const auto steps = static_cast<int>(std::ceil(cfg.t_final / run.dt - 1e-9));
    for (int s = 1; s <= steps; ++s) {
        u = solver.step(u, run.dt, &info);
        record(s, s * run.dt, u, info.iterations);
    }
    run.final_state = std::move(u);
    return run;
}

}  // namespace igabench
