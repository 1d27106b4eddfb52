#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nichols {

struct ConductorMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
  std::size_t position;
};

class CycloField;
using FieldPtr = std::shared_ptr<const CycloField>;

/// The cyclotomic field Q(zeta_L) for a fixed conductor L.
///
/// Elements are polynomials in zeta_L reduced modulo the L-th cyclotomic
/// polynomial Phi_L, so the reduced exponent range is [0, phi(L)).  A whole
/// computation session shares one field object; mixing values from different
/// fields raises ConductorMismatch.
class CycloField : public std::enable_shared_from_this<CycloField> {
 public:
  static FieldPtr make(long conductor);

  long conductor() const { return conductor_; }
  /// Degree of the extension, phi(L).
  long degree() const { return degree_; }
  /// x^e mod Phi_L as an integer coefficient row (only for e >= degree()).
  const std::vector<mpz_class>& reduction_row(long e) const;

 private:
  explicit CycloField(long conductor);
  long conductor_ = 1;
  long degree_ = 1;
  std::vector<mpz_class> phi_;                   // monic Phi_L, index = exponent
  std::vector<std::vector<mpz_class>> reduce_;   // rows for e in [degree, max_exp]
};

/// An exact element of Q(zeta_L), always kept in canonical reduced form.
/// Immutable in spirit: all operations return fresh values, so instances can
/// be shared freely across threads.
class Cyclotomic {
 public:
  static Cyclotomic zero(FieldPtr f);
  static Cyclotomic one(FieldPtr f);
  static Cyclotomic from_integer(FieldPtr f, long v);
  static Cyclotomic from_rational(FieldPtr f, const mpq_class& v);
  /// zeta_n^k inside Q(zeta_L); requires n | L.
  static Cyclotomic root(FieldPtr f, long n, long k);

  const FieldPtr& field() const { return field_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  /// The rational part; only meaningful when is_rational().
  mpq_class rational_value() const;

  Cyclotomic operator-() const;
  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic inv() const;
  Cyclotomic pow(long n) const;

  bool operator==(const Cyclotomic& o) const;
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

  /// Multiplicative order if this is a root of unity, absent otherwise.
  /// a is a root of unity in Q(zeta_L) iff a^{lcm(2,L)} = 1, which bounds the
  /// search.  Raises DomainError on zero.
  std::optional<long> order() const;

  /// Sparse exponent -> coefficient view of the reduced form.
  std::map<long, mpq_class> coeff_map() const;

  /// Canonical text form, e.g. "1 - 3*z6^2".  Deterministic; used by golden
  /// outputs.
  std::string str() const;
  /// Decimal approximation "a+bi" for human inspection only.
  std::string approx_str() const;

  std::size_t hash() const;

 private:
  explicit Cyclotomic(FieldPtr f);
  void reduce_tail(std::vector<mpq_class>& work) const;
  void check_same_field(const Cyclotomic& o) const;

  FieldPtr field_;
  std::vector<mpq_class> c_;  // dense, size = field_->degree()
};

/// Parses the scalar literal grammar: ['-'] factor ('*' factor)*, where a
/// factor is an integer or z<n>[^<exp>].  Examples: "-z24^4", "z5", "-1",
/// "2*z3^2".  Reports the offending position on error.
Cyclotomic parse_cyclotomic(const std::string& text, FieldPtr field);

/// Root orders n mentioned as z<n> literals in `text` (for conductor
/// selection before any field exists).
std::vector<long> scan_root_orders(const std::string& text);

/// Session conductor for a set of root orders: lcm of the orders with 2
/// joined in so that -1 always exists in the field.
long conductor_for_orders(const std::vector<long>& orders);

}  // namespace nichols
