#pragma once

#include <span>
#include <string>
#include <vector>

#include "fcmetric/errors.hpp"

namespace fcm {

enum class AlgebraKind {
    matrix,        ///< real n x n matrices, adjoint = transpose
    componentwise, ///< real k-tuples with entrywise product, adjoint = identity
};

/// Describes a finite-dimensional concrete C*-algebra. The descriptor fully
/// determines addition, multiplication, scalar action, adjoint, unit and zero.
struct AlgebraDescriptor {
    AlgebraKind kind = AlgebraKind::matrix;
    int dim = 1; ///< matrix side length, or tuple length

    friend bool operator==(const AlgebraDescriptor&, const AlgebraDescriptor&) = default;

    /// Number of stored entries: dim^2 for matrices, dim for tuples.
    int entry_count() const {
        return kind == AlgebraKind::matrix ? dim * dim : dim;
    }
};

/// Numerical comparison slack used by the order predicates.
struct Tolerance {
    double eps = 1e-9;
};

/// A value in the algebra. Matrix entries are stored row-major. All entries
/// are finite; constructors reject NaN/Inf.
class AlgebraElement {
public:
    /// Zero of the 1-dimensional componentwise algebra. Exists so witnesses
    /// and reports can be value-initialized before being filled in.
    AlgebraElement();
    AlgebraElement(AlgebraDescriptor desc, std::vector<double> entries);

    static AlgebraElement zero(AlgebraDescriptor desc);
    static AlgebraElement unit(AlgebraDescriptor desc);
    /// s * unit.
    static AlgebraElement scalar(AlgebraDescriptor desc, double s);
    /// Matrix kind: diagonal matrix; componentwise kind: the tuple itself.
    static AlgebraElement diagonal(AlgebraDescriptor desc, std::span<const double> values);

    const AlgebraDescriptor& descriptor() const { return desc_; }
    std::span<const double> entries() const { return entries_; }

    /// Matrix entry (row i, column j). Valid for matrix kind only.
    double at(int i, int j) const { return entries_[static_cast<std::size_t>(i) * desc_.dim + j]; }
    /// Raw entry by flat index.
    double entry(int i) const { return entries_[static_cast<std::size_t>(i)]; }

    friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

private:
    AlgebraDescriptor desc_;
    std::vector<double> entries_;
};

// Arithmetic. All binary operations throw DescriptorMismatch when the two
// descriptors differ.
AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement neg(const AlgebraElement& a);
AlgebraElement scale(double s, const AlgebraElement& a);
AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b);

/// Involution: transpose for matrices, identity for tuples.
AlgebraElement adjoint(const AlgebraElement& z);

/// coeff* . value . coeff
AlgebraElement conjugate_by(const AlgebraElement& coeff, const AlgebraElement& value);

/// Frobenius norm of the entries (used for symmetry-defect checks, not as the
/// algebra norm).
double frobenius_norm(const AlgebraElement& z);

/// Defect from self-adjointness: frobenius_norm(z - z*).
double self_adjoint_defect(const AlgebraElement& z);

/// Eigenvalues in ascending order. Matrix kind runs cyclic Jacobi rotations
/// (dimensions here are small); componentwise kind sorts the entries.
/// Throws NotSelfAdjoint when self_adjoint_defect(h) > tol.eps.
std::vector<double> spectrum(const AlgebraElement& h, Tolerance tol = {});

/// True iff z is self-adjoint within tol and its spectrum lies in [-eps, inf).
bool is_positive(const AlgebraElement& z, Tolerance tol = {});

/// Partial order: z <= w iff w - z is positive. Genuinely partial; false
/// covers both "w - z negative" and "incomparable".
bool leq(const AlgebraElement& z, const AlgebraElement& w, Tolerance tol = {});

/// C*-norm: sqrt(max eigenvalue of z*z) for matrices, max |entry| for tuples.
double operator_norm(const AlgebraElement& z);

/// |z| = (z*z)^(1/2), via eigendecomposition of z*z for matrices.
AlgebraElement abs_element(const AlgebraElement& z, Tolerance tol = {});

/// Signed slack of the order relation lhs <= rhs: the smallest eigenvalue of
/// the symmetrized difference rhs - lhs, minus any self-adjointness defect.
/// Negative values mean the relation fails; -order_margin is the violation
/// severity recorded in witnesses.
double order_margin(const AlgebraElement& lhs, const AlgebraElement& rhs);

/// Membership test for control values: z commutes with every generator and
/// z >= unit. Componentwise algebras are commutative, so only the unit bound
/// is checked there. Generators must be nonempty and share z's descriptor.
bool is_admissible_control_value(const AlgebraElement& z,
                                 std::span<const AlgebraElement> generators,
                                 Tolerance tol = {});

/// Human-readable rendering, e.g. "[[1, 0], [0, 1]]" or "(20.5, 20.5)".
std::string to_string(const AlgebraElement& z);

} // namespace fcm
