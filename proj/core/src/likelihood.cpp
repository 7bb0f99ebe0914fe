#include "adsel/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "adsel/clayton.hpp"
#include "adsel/logistic.hpp"

namespace adsel {

namespace {

const double kLogCellFloor = std::log(kCellFloor);

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Marginal CDFs evaluated at the negated indices; clamped away from exact 0
// so the copula log-space evaluation stays finite (the matching density
// factor is ~0 there anyway).
double u_of(double index) {
    return std::max(logistic_cdf(-index), 1e-300);
}

struct CellEval {
    double p;
    double dua, dub, duc; // partials in the marginal CDF values
    double dtheta;
};

// Joint probability of one observed (d, y_tau, y) cell plus partials, with
// ub/uc evaluated at the observed arm. Inclusion-exclusion over the copula
// margins; see cell_probabilities for the full six-cell layout.
CellEval eval_cell(int d, int y_tau, int y, double ua, double ub, double uc, double theta) {
    CellEval e{0.0, 0.0, 0.0, 0.0, 0.0};
    if (d == 0) {
        if (y_tau == 0) {
            const auto ab = clayton_cdf2_partials(ua, ub, theta);
            e = {ab.c, ab.du, ab.dv, 0.0, ab.dtheta};
        } else if (y == 0) {
            const auto ac = clayton_cdf2_partials(ua, uc, theta);
            const auto t = clayton_cdf3_partials(ua, ub, uc, theta);
            e = {ac.c - t.c, ac.du - t.du, -t.dv, ac.dv - t.dw, ac.dtheta - t.dtheta};
        } else {
            const auto ab = clayton_cdf2_partials(ua, ub, theta);
            const auto ac = clayton_cdf2_partials(ua, uc, theta);
            const auto t = clayton_cdf3_partials(ua, ub, uc, theta);
            e = {ua - ab.c - ac.c + t.c, 1.0 - ab.du - ac.du + t.du, -ab.dv + t.dv,
                 -ac.dv + t.dw, -ab.dtheta - ac.dtheta + t.dtheta};
        }
    } else {
        if (y_tau == 0) {
            const auto ab = clayton_cdf2_partials(ua, ub, theta);
            e = {ub - ab.c, -ab.du, 1.0 - ab.dv, 0.0, -ab.dtheta};
        } else if (y == 0) {
            const auto ac = clayton_cdf2_partials(ua, uc, theta);
            const auto bc = clayton_cdf2_partials(ub, uc, theta);
            const auto t = clayton_cdf3_partials(ua, ub, uc, theta);
            e = {uc - ac.c - bc.c + t.c, -ac.du + t.du, -bc.du + t.dv,
                 1.0 - ac.dv - bc.dv + t.dw, -ac.dtheta - bc.dtheta + t.dtheta};
        } else {
            const auto ab = clayton_cdf2_partials(ua, ub, theta);
            const auto ac = clayton_cdf2_partials(ua, uc, theta);
            const auto bc = clayton_cdf2_partials(ub, uc, theta);
            const auto t = clayton_cdf3_partials(ua, ub, uc, theta);
            e = {1.0 - ua - ub - uc + ab.c + ac.c + bc.c - t.c,
                 -1.0 + ab.du + ac.du - t.du, -1.0 + ab.dv + bc.du - t.dv,
                 -1.0 + ac.dv + bc.dv - t.dw,
                 ab.dtheta + ac.dtheta + bc.dtheta - t.dtheta};
        }
    }
    return e;
}

// Value-only variant for the plain likelihood path.
double eval_cell_value(int d, int y_tau, int y, double ua, double ub, double uc, double theta) {
    if (d == 0) {
        if (y_tau == 0) return clayton_cdf2(ua, ub, theta);
        const double ac = clayton_cdf2(ua, uc, theta);
        const double t = clayton_cdf3(ua, ub, uc, theta);
        if (y == 0) return ac - t;
        return ua - clayton_cdf2(ua, ub, theta) - ac + t;
    }
    if (y_tau == 0) return ub - clayton_cdf2(ua, ub, theta);
    const double ac = clayton_cdf2(ua, uc, theta);
    const double bc = clayton_cdf2(ub, uc, theta);
    const double t = clayton_cdf3(ua, ub, uc, theta);
    if (y == 0) return uc - ac - bc + t;
    return 1.0 - ua - ub - uc + clayton_cdf2(ua, ub, theta) + ac + bc - t;
}

struct ChunkGrad {
    double value = 0.0;
    std::vector<double> grad;
};

template <typename Fn>
void run_chunked(std::size_t n_chunks, int n_threads, Fn&& per_chunk) {
    if (n_threads <= 1 || n_chunks <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) per_chunk(c);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(n_threads), n_chunks);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t c = w; c < n_chunks; c += workers) per_chunk(c);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace

LinearIndices linear_indices(std::span<const double> x1, std::span<const double> x2,
                             std::span<const double> z, const ParameterSet& params) {
    if (x1.size() != params.gamma.size() || x2.size() != params.beta.size() ||
        z.size() != params.alpha1.size()) {
        throw std::invalid_argument("linear_indices: covariate/parameter dimension mismatch");
    }
    const double a = dot(x1, params.gamma);
    const double s = dot(x2, params.beta);
    const double az = dot(z, params.alpha1);
    return {a, s, az + s, params.w1 * s + params.w2, params.alpha2 + params.w1 * s + params.w2};
}

LinearIndices linear_indices(const ImpressionRecord& rec, const ParameterSet& params) {
    return linear_indices(rec.x1, rec.x2, rec.z, params);
}

CellProbabilities cell_probabilities(std::span<const double> x1, std::span<const double> x2,
                                     std::span<const double> z, const ParameterSet& params) {
    const LinearIndices li = linear_indices(x1, x2, z, params);
    const double theta = params.theta();
    if (!(theta > kThetaMin)) {
        throw std::domain_error("cell_probabilities: theta must exceed -1/2");
    }
    const double ua = u_of(li.a);
    const double ub0 = u_of(li.b0);
    const double ub1 = u_of(li.b1);
    const double uc0 = u_of(li.c0);
    const double uc1 = u_of(li.c1);

    const double ab0 = clayton_cdf2(ua, ub0, theta);
    const double ac0 = clayton_cdf2(ua, uc0, theta);
    const double t0 = clayton_cdf3(ua, ub0, uc0, theta);
    const double ab1 = clayton_cdf2(ua, ub1, theta);
    const double ac1 = clayton_cdf2(ua, uc1, theta);
    const double bc1 = clayton_cdf2(ub1, uc1, theta);
    const double t1 = clayton_cdf3(ua, ub1, uc1, theta);

    CellProbabilities cp;
    cp.p[0] = ab0;
    cp.p[1] = ac0 - t0;
    cp.p[2] = ua - ab0 - ac0 + t0;
    cp.p[3] = ub1 - ab1;
    cp.p[4] = uc1 - ac1 - bc1 + t1;
    cp.p[5] = 1.0 - ua - ub1 - uc1 + ab1 + ac1 + bc1 - t1;
    for (double& p : cp.p) p = std::max(p, 0.0); // rounding guard
    return cp;
}

CellProbabilities cell_probabilities(const ImpressionRecord& rec, const ParameterSet& params) {
    return cell_probabilities(rec.x1, rec.x2, rec.z, params);
}

double log_likelihood(const Dataset& data, const ParameterSet& params, int n_threads) {
    if (data.empty()) {
        throw std::invalid_argument("log_likelihood: empty dataset");
    }
    if (data.k1() != params.gamma.size() || data.k2() != params.beta.size() ||
        data.kz() != params.alpha1.size()) {
        throw std::invalid_argument("log_likelihood: dataset/parameter dimension mismatch");
    }
    const double theta = params.theta();
    if (!(theta > kThetaMin)) {
        throw std::domain_error("log_likelihood: theta must exceed -1/2");
    }

    const std::size_t n = data.size();
    const std::size_t n_chunks = (n + kReductionChunk - 1) / kReductionChunk;
    std::vector<double> partial(n_chunks, 0.0);

    run_chunked(n_chunks, n_threads, [&](std::size_t c) {
        const std::size_t lo = c * kReductionChunk;
        const std::size_t hi = std::min(lo + kReductionChunk, n);
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            const LinearIndices li =
                linear_indices(data.x1_row(i), data.x2_row(i), data.z_row(i), params);
            const int d = data.d(i);
            const double b = d ? li.b1 : li.b0;
            const double cc = d ? li.c1 : li.c0;
            const double p = eval_cell_value(d, data.y_tau(i), data.y(i), u_of(li.a),
                                             u_of(b), u_of(cc), theta);
            acc += (p < kCellFloor) ? kLogCellFloor : std::log(p);
        }
        partial[c] = acc;
    });

    double total = 0.0;
    for (double v : partial) total += v;
    return total;
}

LogLikEval log_likelihood_with_gradient(const Dataset& data, const ParameterSet& params,
                                        int n_threads) {
    if (data.empty()) {
        throw std::invalid_argument("log_likelihood_with_gradient: empty dataset");
    }
    const std::size_t k1 = data.k1();
    const std::size_t kz = data.kz();
    const std::size_t k2 = data.k2();
    if (k1 != params.gamma.size() || k2 != params.beta.size() || kz != params.alpha1.size()) {
        throw std::invalid_argument("log_likelihood_with_gradient: dimension mismatch");
    }
    const auto tt = theta_transform(params.theta_tilde);
    if (!(tt.theta > kThetaMin)) {
        throw std::domain_error("log_likelihood_with_gradient: theta must exceed -1/2");
    }

    const std::size_t dim = params.flat_size();
    const std::size_t off_alpha1 = k1;
    const std::size_t off_beta = k1 + kz;
    const std::size_t off_alpha2 = off_beta + k2;

    const std::size_t n = data.size();
    const std::size_t n_chunks = (n + kReductionChunk - 1) / kReductionChunk;
    std::vector<ChunkGrad> partial(n_chunks);

    run_chunked(n_chunks, n_threads, [&](std::size_t c) {
        const std::size_t lo = c * kReductionChunk;
        const std::size_t hi = std::min(lo + kReductionChunk, n);
        ChunkGrad& out = partial[c];
        out.grad.assign(dim, 0.0);
        for (std::size_t i = lo; i < hi; ++i) {
            const auto x1 = data.x1_row(i);
            const auto x2 = data.x2_row(i);
            const auto z = data.z_row(i);
            const int d = data.d(i);

            const double a = dot(x1, params.gamma);
            const double s = dot(x2, params.beta);
            const double b = (d ? dot(z, params.alpha1) : 0.0) + s;
            const double cc = params.alpha2 * d + params.w1 * s + params.w2;

            const double ua = u_of(a);
            const double ub = u_of(b);
            const double uc = u_of(cc);
            const CellEval e = eval_cell(d, data.y_tau(i), data.y(i), ua, ub, uc, tt.theta);

            const double p = std::max(e.p, 0.0);
            if (p < kCellFloor) {
                out.value += kLogCellFloor;
                continue; // clamped cell: zero gradient contribution
            }
            out.value += std::log(p);
            const double inv = 1.0 / p;
            const double ga = -logistic_pdf(a) * e.dua * inv; // pdf is symmetric
            const double gb = -logistic_pdf(b) * e.dub * inv;
            const double gc = -logistic_pdf(cc) * e.duc * inv;

            for (std::size_t j = 0; j < k1; ++j) out.grad[j] += ga * x1[j];
            if (d) {
                for (std::size_t j = 0; j < kz; ++j) out.grad[off_alpha1 + j] += gb * z[j];
            }
            const double gs = gb + params.w1 * gc;
            for (std::size_t j = 0; j < k2; ++j) out.grad[off_beta + j] += gs * x2[j];
            out.grad[off_alpha2] += gc * d;
            out.grad[off_alpha2 + 1] += gc * s;
            out.grad[off_alpha2 + 2] += gc;
            out.grad[off_alpha2 + 3] += e.dtheta * inv * tt.dtheta;
        }
    });

    LogLikEval result{0.0, std::vector<double>(dim, 0.0)};
    for (const ChunkGrad& cg : partial) {
        result.value += cg.value;
        for (std::size_t j = 0; j < dim; ++j) result.gradient[j] += cg.grad[j];
    }
    return result;
}

std::vector<double> log_likelihood_gradient(const Dataset& data, const ParameterSet& params,
                                            int n_threads) {
    return log_likelihood_with_gradient(data, params, n_threads).gradient;
}

} // namespace adsel
