#include "fcmetric/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fcm {

namespace {

void require_same(const AlgebraElement& a, const AlgebraElement& b) {
    if (!(a.descriptor() == b.descriptor())) {
        throw DescriptorMismatch("algebra elements carry different descriptors");
    }
}

void require_finite(std::span<const double> entries) {
    for (double v : entries) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("algebra element entry is not finite");
        }
    }
}

// Cyclic Jacobi diagonalization of a symmetric matrix, accumulating the
// rotations in vecs (columns are eigenvectors). Converges when the Frobenius
// mass of the off-diagonal part drops below off_tol; the sweep cap only
// guards against non-termination on pathological input.
void jacobi_eigen(int n, std::vector<double>& a, std::vector<double>& vecs,
                  double off_tol = 1e-12, int max_sweeps = 60) {
    auto at = [n](std::vector<double>& m, int i, int j) -> double& {
        return m[static_cast<std::size_t>(i) * n + j];
    };
    vecs.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) at(vecs, i, i) = 1.0;

    auto off_mass = [&]() {
        double s = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) s += 2.0 * at(a, p, q) * at(a, p, q);
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < max_sweeps && off_mass() >= off_tol; ++sweep) {
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = at(a, p, q);
                if (apq == 0.0) continue;
                const double theta = (at(a, q, q) - at(a, p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                const double app = at(a, p, p);
                const double aqq = at(a, q, q);
                at(a, p, p) = app - t * apq;
                at(a, q, q) = aqq + t * apq;
                at(a, p, q) = 0.0;
                at(a, q, p) = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        const double arp = at(a, r, p);
                        const double arq = at(a, r, q);
                        at(a, r, p) = at(a, p, r) = arp - s * (arq + tau * arp);
                        at(a, r, q) = at(a, q, r) = arq + s * (arp - tau * arq);
                    }
                    const double vrp = at(vecs, r, p);
                    const double vrq = at(vecs, r, q);
                    at(vecs, r, p) = vrp - s * (vrq + tau * vrp);
                    at(vecs, r, q) = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }
}

// Eigenvalues and eigenvectors of the symmetrized matrix, ascending.
void symmetric_eigen(const AlgebraElement& h, std::vector<double>& values,
                     std::vector<double>& vectors) {
    const int n = h.descriptor().dim;
    std::vector<double> a(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[static_cast<std::size_t>(i) * n + j] = 0.5 * (h.at(i, j) + h.at(j, i));

    std::vector<double> v;
    jacobi_eigen(n, a, v);

    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return a[static_cast<std::size_t>(x) * n + x] < a[static_cast<std::size_t>(y) * n + y];
    });

    values.resize(static_cast<std::size_t>(n));
    vectors.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int k = 0; k < n; ++k) {
        const int src = order[static_cast<std::size_t>(k)];
        values[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(src) * n + src];
        for (int r = 0; r < n; ++r)
            vectors[static_cast<std::size_t>(r) * n + k] = v[static_cast<std::size_t>(r) * n + src];
    }
}

} // namespace

AlgebraElement::AlgebraElement()
    : AlgebraElement(AlgebraDescriptor{AlgebraKind::componentwise, 1}, {0.0}) {}

AlgebraElement::AlgebraElement(AlgebraDescriptor desc, std::vector<double> entries)
    : desc_(desc), entries_(std::move(entries)) {
    if (desc_.dim < 1) throw std::invalid_argument("algebra dimension must be >= 1");
    if (static_cast<int>(entries_.size()) != desc_.entry_count()) {
        throw std::invalid_argument("entry count does not match descriptor");
    }
    require_finite(entries_);
}

AlgebraElement AlgebraElement::zero(AlgebraDescriptor desc) {
    return AlgebraElement(desc, std::vector<double>(static_cast<std::size_t>(desc.entry_count()), 0.0));
}

AlgebraElement AlgebraElement::unit(AlgebraDescriptor desc) {
    return scalar(desc, 1.0);
}

AlgebraElement AlgebraElement::scalar(AlgebraDescriptor desc, double s) {
    std::vector<double> e(static_cast<std::size_t>(desc.entry_count()), 0.0);
    if (desc.kind == AlgebraKind::matrix) {
        for (int i = 0; i < desc.dim; ++i) e[static_cast<std::size_t>(i) * desc.dim + i] = s;
    } else {
        std::fill(e.begin(), e.end(), s);
    }
    return AlgebraElement(desc, std::move(e));
}

AlgebraElement AlgebraElement::diagonal(AlgebraDescriptor desc, std::span<const double> values) {
    if (static_cast<int>(values.size()) != desc.dim) {
        throw std::invalid_argument("diagonal length must equal the algebra dimension");
    }
    if (desc.kind == AlgebraKind::componentwise) {
        return AlgebraElement(desc, std::vector<double>(values.begin(), values.end()));
    }
    std::vector<double> e(static_cast<std::size_t>(desc.entry_count()), 0.0);
    for (int i = 0; i < desc.dim; ++i) e[static_cast<std::size_t>(i) * desc.dim + i] = values[static_cast<std::size_t>(i)];
    return AlgebraElement(desc, std::move(e));
}

AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) {
    require_same(a, b);
    std::vector<double> e(a.entries().begin(), a.entries().end());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.entries()[i];
    return AlgebraElement(a.descriptor(), std::move(e));
}

AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b) {
    require_same(a, b);
    std::vector<double> e(a.entries().begin(), a.entries().end());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] -= b.entries()[i];
    return AlgebraElement(a.descriptor(), std::move(e));
}

AlgebraElement neg(const AlgebraElement& a) { return scale(-1.0, a); }

AlgebraElement scale(double s, const AlgebraElement& a) {
    std::vector<double> e(a.entries().begin(), a.entries().end());
    for (double& v : e) v *= s;
    return AlgebraElement(a.descriptor(), std::move(e));
}

AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) {
    require_same(a, b);
    const auto& d = a.descriptor();
    if (d.kind == AlgebraKind::componentwise) {
        std::vector<double> e(a.entries().begin(), a.entries().end());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] *= b.entries()[i];
        return AlgebraElement(d, std::move(e));
    }
    const int n = d.dim;
    std::vector<double> e(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const double aik = a.at(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < n; ++j)
                e[static_cast<std::size_t>(i) * n + j] += aik * b.at(k, j);
        }
    return AlgebraElement(d, std::move(e));
}

AlgebraElement adjoint(const AlgebraElement& z) {
    const auto& d = z.descriptor();
    if (d.kind == AlgebraKind::componentwise) return z;
    const int n = d.dim;
    std::vector<double> e(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) e[static_cast<std::size_t>(i) * n + j] = z.at(j, i);
    return AlgebraElement(d, std::move(e));
}

AlgebraElement conjugate_by(const AlgebraElement& coeff, const AlgebraElement& value) {
    return mul(adjoint(coeff), mul(value, coeff));
}

double frobenius_norm(const AlgebraElement& z) {
    double s = 0.0;
    for (double v : z.entries()) s += v * v;
    return std::sqrt(s);
}

double self_adjoint_defect(const AlgebraElement& z) {
    return frobenius_norm(sub(z, adjoint(z)));
}

std::vector<double> spectrum(const AlgebraElement& h, Tolerance tol) {
    if (self_adjoint_defect(h) > tol.eps) {
        throw NotSelfAdjoint("spectrum requires a self-adjoint element");
    }
    if (h.descriptor().kind == AlgebraKind::componentwise) {
        std::vector<double> v(h.entries().begin(), h.entries().end());
        std::sort(v.begin(), v.end());
        return v;
    }
    std::vector<double> values, vectors;
    symmetric_eigen(h, values, vectors);
    return values;
}

bool is_positive(const AlgebraElement& z, Tolerance tol) {
    if (self_adjoint_defect(z) > tol.eps) return false;
    const auto spec = spectrum(z, tol);
    return spec.front() >= -tol.eps;
}

bool leq(const AlgebraElement& z, const AlgebraElement& w, Tolerance tol) {
    require_same(z, w);
    return is_positive(sub(w, z), tol);
}

double operator_norm(const AlgebraElement& z) {
    const auto& d = z.descriptor();
    if (d.kind == AlgebraKind::componentwise) {
        double m = 0.0;
        for (double v : z.entries()) m = std::max(m, std::abs(v));
        return m;
    }
    const AlgebraElement gram = mul(adjoint(z), z);
    std::vector<double> values, vectors;
    symmetric_eigen(gram, values, vectors);
    return std::sqrt(std::max(0.0, values.back()));
}

AlgebraElement abs_element(const AlgebraElement& z, Tolerance) {
    const auto& d = z.descriptor();
    if (d.kind == AlgebraKind::componentwise) {
        std::vector<double> e(z.entries().begin(), z.entries().end());
        for (double& v : e) v = std::abs(v);
        return AlgebraElement(d, std::move(e));
    }
    const AlgebraElement gram = mul(adjoint(z), z);
    std::vector<double> values, vectors;
    symmetric_eigen(gram, values, vectors);
    const int n = d.dim;
    std::vector<double> roots(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) roots[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, values[static_cast<std::size_t>(i)]));
    // Q sqrt(L) Q^T
    std::vector<double> e(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k)
                s += vectors[static_cast<std::size_t>(i) * n + k] * roots[static_cast<std::size_t>(k)] *
                     vectors[static_cast<std::size_t>(j) * n + k];
            e[static_cast<std::size_t>(i) * n + j] = s;
        }
    return AlgebraElement(d, std::move(e));
}

double order_margin(const AlgebraElement& lhs, const AlgebraElement& rhs) {
    require_same(lhs, rhs);
    const AlgebraElement diff = sub(rhs, lhs);
    const double defect = self_adjoint_defect(diff);
    double min_eig;
    if (diff.descriptor().kind == AlgebraKind::componentwise) {
        min_eig = *std::min_element(diff.entries().begin(), diff.entries().end());
    } else {
        std::vector<double> values, vectors;
        symmetric_eigen(diff, values, vectors);
        min_eig = values.front();
    }
    return min_eig - defect;
}

bool is_admissible_control_value(const AlgebraElement& z,
                                 std::span<const AlgebraElement> generators,
                                 Tolerance tol) {
    if (generators.empty()) throw std::invalid_argument("generators must be nonempty");
    for (const auto& g : generators) require_same(z, g);
    if (!leq(AlgebraElement::unit(z.descriptor()), z, tol)) return false;
    if (z.descriptor().kind == AlgebraKind::componentwise) return true;
    const double zn = operator_norm(z);
    for (const auto& g : generators) {
        const AlgebraElement comm = sub(mul(z, g), mul(g, z));
        if (operator_norm(comm) > tol.eps * (1.0 + zn * operator_norm(g))) return false;
    }
    return true;
}

std::string to_string(const AlgebraElement& z) {
    std::ostringstream os;
    os.precision(17);
    const auto& d = z.descriptor();
    if (d.kind == AlgebraKind::componentwise) {
        os << "(";
        for (int i = 0; i < d.dim; ++i) os << (i ? ", " : "") << z.entry(i);
        os << ")";
    } else {
        os << "[";
        for (int i = 0; i < d.dim; ++i) {
            os << (i ? ", [" : "[");
            for (int j = 0; j < d.dim; ++j) os << (j ? ", " : "") << z.at(i, j);
            os << "]";
        }
        os << "]";
    }
    return os.str();
}

} // namespace fcm
