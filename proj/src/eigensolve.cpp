#include "r0colloc/eigensolve.hpp"

#include "r0colloc/errors.hpp"
#include "scalars.hpp"

#include <lapacke.h>

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace r0colloc {

namespace {

constexpr double kRealTolerance = 1e-8;
constexpr double kTieTolerance = 1e-12;

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::size_t pick_dominant(const std::vector<std::complex<double>>& spectrum) {
    double max_mod = 0.0;
    for (const auto& z : spectrum) max_mod = std::max(max_mod, std::abs(z));
    const double tie = kTieTolerance * std::max(1.0, max_mod);
    std::size_t best = 0;
    bool found = false;
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        if (max_mod - std::abs(spectrum[i]) > tie) continue;
        if (!found || spectrum[i].real() > spectrum[best].real() ||
            (spectrum[i].real() == spectrum[best].real() &&
             std::abs(spectrum[i].imag()) < std::abs(spectrum[best].imag()))) {
            best = i;
            found = true;
        }
    }
    return best;
}

// Right eigenvector of `a` for the real eigenvalue `lambda`, by shifted inverse
// iteration; falls back to a full dgeev with eigenvectors when that stalls.
Vector real_eigenvector(const Matrix& a, double lambda) {
    const Eigen::Index n = a.rows();
    const double scale = std::max(1.0, a.cwiseAbs().rowwise().sum().maxCoeff());
    const double shift = lambda + 1e-10 * std::max(1.0, std::abs(lambda));

    Matrix shifted = a;
    shifted.diagonal().array() -= shift;
    Eigen::PartialPivLU<Matrix> lu(shifted);
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = 1.0 + 0.1 * std::sin(static_cast<double>(i + 1));
    v.normalize();
    for (int it = 0; it < 4; ++it) {
        v = lu.solve(v);
        if (!v.allFinite()) break;
        v.normalize();
    }
    if (v.allFinite() && (a * v - lambda * v).cwiseAbs().maxCoeff() <= 1e-10 * scale) return v;

    Matrix work = a;
    std::vector<double> wr(static_cast<std::size_t>(n)), wi(static_cast<std::size_t>(n));
    Matrix vr(n, n);
    const lapack_int info =
        LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'V', static_cast<lapack_int>(n), work.data(),
                      static_cast<lapack_int>(n), wr.data(), wi.data(), nullptr, 1, vr.data(),
                      static_cast<lapack_int>(n));
    if (info != 0) throw NumericalError("dgeev failed to compute eigenvectors (info = " +
                                        std::to_string(info) + ")");
    Eigen::Index best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (wi[static_cast<std::size_t>(i)] != 0.0) continue;
        const double dist = std::abs(wr[static_cast<std::size_t>(i)] - lambda);
        if (dist < best_dist) {
            best_dist = dist;
            best = i;
        }
    }
    return vr.col(best);
}

}  // namespace

std::string_view to_string(SolverPath path) {
    return path == SolverPath::NgoProduct ? "ngo-product" : "m-inverse-left";
}

SolverPath parse_solver_path(std::string_view text) {
    const std::string t = detail::to_lower(text);
    if (t == "ngo" || t == "ngo-product") return SolverPath::NgoProduct;
    if (t == "left" || t == "m-inverse-left") return SolverPath::MInverseLeft;
    throw std::invalid_argument("unknown solver method '" + std::string(text) +
                                "' (expected ngo or left)");
}

std::vector<std::complex<double>> dense_eigenvalues(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("matrix must be square");
    const auto n = static_cast<lapack_int>(a.rows());
    if (n == 0) return {};
    if (!a.allFinite()) throw NumericalError("eigenvalue problem has non-finite entries");
    Matrix work = a;
    std::vector<double> wr(static_cast<std::size_t>(n)), wi(static_cast<std::size_t>(n));
    const lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, work.data(), n,
                                          wr.data(), wi.data(), nullptr, 1, nullptr, 1);
    if (info != 0)
        throw NumericalError("QR iteration did not converge (dgeev info = " +
                             std::to_string(info) + ")");
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = {wr[i], wi[i]};
    return out;
}

R0Result spectral_radius(const OperatorPair& pair, SolverPath method) {
    const Matrix& b = pair.birth;
    const Matrix& m = pair.mortality;
    if (b.rows() != b.cols() || m.rows() != m.cols() || b.rows() != m.rows())
        throw std::invalid_argument("B and M must be square matrices of equal size");
    if (b.rows() == 0) throw std::invalid_argument("empty operator pair");

    Eigen::PartialPivLU<Matrix> lu(m);
    // Condition estimate of the row-equilibrated M.
    const Vector row_scale = m.cwiseAbs().rowwise().maxCoeff();
    if ((row_scale.array() == 0.0).any())
        throw NumericalError("mortality matrix M has a zero row",
                             std::numeric_limits<double>::infinity());
    const Eigen::PartialPivLU<Matrix> scaled(row_scale.cwiseInverse().asDiagonal() * m);
    const Vector pivots = scaled.matrixLU().diagonal().cwiseAbs();
    const double rcond = std::min(scaled.rcond(), pivots.minCoeff() / pivots.maxCoeff());
    const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
    if (!(cond <= kMaxConditionEstimate)) {
        throw NumericalError("mortality matrix M is singular to working precision "
                             "(condition estimate " + short_number(cond) + ")",
                             cond);
    }

    // B M^{-1} solves M^T X^T = B^T.
    const Matrix a = method == SolverPath::NgoProduct
                         ? Matrix(Eigen::PartialPivLU<Matrix>(m.transpose())
                                      .solve(b.transpose())
                                      .transpose())
                         : Matrix(lu.solve(b));

    R0Result res;
    res.method = method;
    res.degree = pair.degree;
    res.condition_estimate = cond;
    res.active_indices = pair.active_indices;
    res.spectrum = dense_eigenvalues(a);

    const std::complex<double> lambda = res.spectrum[pick_dominant(res.spectrum)];
    res.dominant = lambda;
    res.r0 = std::abs(lambda);
    res.dominant_is_real = std::abs(lambda.imag()) <= kRealTolerance * (1.0 + res.r0);
    if (!res.dominant_is_real) {
        res.residual = std::numeric_limits<double>::quiet_NaN();
        return res;
    }
    res.dominant = {lambda.real(), 0.0};

    const Vector v = real_eigenvector(a, lambda.real());
    Vector phi = method == SolverPath::NgoProduct ? Vector(lu.solve(v)) : v;
    Eigen::Index imax = 0;
    phi.cwiseAbs().maxCoeff(&imax);
    phi /= phi[imax];

    res.residual = (b * phi - lambda.real() * (m * phi)).cwiseAbs().maxCoeff() /
                   phi.cwiseAbs().maxCoeff();
    res.psi = m * phi;
    res.eigvec = std::move(phi);
    return res;
}

std::vector<double> eigenfunction(const R0Result& result, const CollocationMesh& mesh,
                                  std::span<const double> queries,
                                  std::optional<Anchor> anchor) {
    if (!result.eigvec || !result.dominant_is_real)
        throw std::invalid_argument("result has no real dominant eigenvector");
    const Vector& phi = *result.eigvec;
    if (static_cast<std::size_t>(phi.size()) != result.active_indices.size())
        throw std::invalid_argument("eigenvector does not match the active node set");

    std::vector<double> nodes;
    nodes.reserve(result.active_indices.size());
    for (int i : result.active_indices) {
        if (i < 0 || i > mesh.degree()) throw std::invalid_argument("mesh does not match result");
        nodes.push_back(mesh.node(i));
    }
    const std::vector<double> values(phi.data(), phi.data() + phi.size());
    const std::vector<double> w = barycentric_weights(nodes);

    std::vector<double> out = barycentric_interpolate(nodes, w, values, queries);
    if (anchor) {
        const double at[1] = {anchor->x};
        const double p = barycentric_interpolate(nodes, w, values, at)[0];
        if (p == 0.0 || !std::isfinite(p))
            throw std::invalid_argument("eigenfunction vanishes at the normalization anchor");
        const double s = anchor->value / p;
        for (double& v : out) v *= s;
    }
    return out;
}

}  // namespace r0colloc
