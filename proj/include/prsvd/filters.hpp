#pragma once

#include "prsvd/matrix.hpp"

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace prsvd {

/// Odd polynomial filter chi applied to singular values:
///   Identity          chi(x) = x
///   PowerIteration(q) chi(x) = x^{2q+1}
///   OddPolynomial(c)  chi(x) = sum_j c_j x^{2j-1}, j = 1..p, c_p != 0
/// There is no constant term.
class FilterSpec {
public:
  struct Identity {};
  struct PowerIteration {
    int q = 0;
  };
  struct OddPolynomial {
    std::vector<double> c;
  };
  using Variant = std::variant<Identity, PowerIteration, OddPolynomial>;

  FilterSpec() = default;
  static FilterSpec identity() { return FilterSpec(Identity{}); }
  static FilterSpec power(int q);
  static FilterSpec polynomial(std::vector<double> c);

  const Variant &variant() const noexcept { return v_; }
  bool is_identity() const noexcept;

  /// Canonical odd coefficients c_1..c_p. Identity -> [1],
  /// PowerIteration(q) -> [0, ..., 0, 1] with q zeros.
  std::vector<double> coefficients() const;

  /// CLI syntax: identity, power:q, poly:c1,...,cp
  std::string to_string() const;

  /// Equality of the underlying polynomials.
  friend bool operator==(const FilterSpec &a, const FilterSpec &b) {
    return a.coefficients() == b.coefficients();
  }

private:
  explicit FilterSpec(Variant v) : v_(std::move(v)) {}
  Variant v_ = Identity{};
};

/// Parses one filter. Throws ParseError.
FilterSpec parse_filter(std::string_view text);

/// Comma-separated filter list. Numeric tokens continue the preceding poly:
/// entry, so "poly:0.5,2,power:3" is two filters.
std::vector<FilterSpec> parse_filter_list(std::string_view text);

/// chi(x) for x >= 0. OverflowError if the value is not representable.
double eval_filter(const FilterSpec &spec, double x);

/// log(chi(x)^2) for x > 0, evaluated without forming chi(x) so that it stays
/// finite where chi(x)^2 over- or underflows. DomainError when chi(x) = 0.
double eval_filter_log_sq(const FilterSpec &spec, double x);

/// How power-iteration intermediates are kept in range. All three produce the
/// same range(Y) in exact arithmetic.
enum class PowerStabilization {
  Orthonormalize, ///< thin QR after each power step
  Frobenius,      ///< divide by ||Z||_F after each power step
  None,
};

/// Y = chi(A) * Omega without forming chi(A): Z_1 = A Omega,
/// Z_j = A (A^T Z_{j-1}), Y = sum_j c_j Z_j.
///
/// For PowerIteration, Y is only determined up to an invertible right factor
/// (see PowerStabilization). OddPolynomial intermediates are never rescaled;
/// non-finite intermediates raise OverflowError.
Matrix apply_filter_sketch(const Matrix &a, const Matrix &omega, const FilterSpec &spec,
                           PowerStabilization stabilization = PowerStabilization::Orthonormalize);

} // namespace prsvd
