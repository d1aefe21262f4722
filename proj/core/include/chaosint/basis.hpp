#pragma once

#include <string>
#include <string_view>

namespace chaosint {

enum class BasisKind { cosine, legendre };

BasisKind parse_basis_kind(std::string_view name);
std::string to_string(BasisKind kind);

/// Orthonormal basis {m_k, k >= 1} of L2((0,T)) with closed-form
/// antiderivatives M_k(t) = int_0^t m_k(s) ds. Both families start with the
/// constant m_1 = 1/sqrt(T), hence M_1(T) = sqrt(T) and M_k(T) = 0 for k >= 2.
///
/// cosine:   m_k(t) = sqrt(2/T) cos((k-1) pi t / T), k >= 2
/// legendre: m_k(t) = sqrt((2k-1)/T) P_{k-1}(2t/T - 1)
class BasisFamily {
 public:
  BasisFamily(BasisKind kind, double horizon);
  static BasisFamily cosine(double horizon) { return {BasisKind::cosine, horizon}; }
  static BasisFamily legendre(double horizon) { return {BasisKind::legendre, horizon}; }

  BasisKind kind() const noexcept { return kind_; }
  double horizon() const noexcept { return horizon_; }

  /// m_k(t); throws DomainError for t outside [0,T] or k == 0.
  double eval(unsigned k, double t) const;
  /// M_k(t) = int_0^t m_k.
  double antideriv(unsigned k, double t) const;

  friend bool operator==(const BasisFamily&, const BasisFamily&) = default;

 private:
  void check(unsigned k, double t) const;

  BasisKind kind_;
  double horizon_;
};

inline double basis_eval(const BasisFamily& b, unsigned k, double t) { return b.eval(k, t); }
inline double basis_antideriv(const BasisFamily& b, unsigned k, double t) { return b.antideriv(k, t); }

}  // namespace chaosint
