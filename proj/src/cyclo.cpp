#include "nichols/cyclo.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

namespace nichols {

namespace {

// Quotient of the exact division num / den for integer polynomials with den
// monic-up-to-sign; used only to build cyclotomic polynomials.
std::vector<mpz_class> poly_divexact(std::vector<mpz_class> num,
                                     const std::vector<mpz_class>& den) {
  long dn = static_cast<long>(num.size()) - 1;
  long dd = static_cast<long>(den.size()) - 1;
  std::vector<mpz_class> quot(dn - dd + 1, mpz_class(0));
  for (long k = dn - dd; k >= 0; --k) {
    mpz_class q = num[k + dd] / den[dd];
    quot[k] = q;
    if (q != 0)
      for (long j = 0; j <= dd; ++j) num[k + j] -= q * den[j];
  }
  return quot;
}

std::vector<mpz_class> cyclotomic_poly(long n,
                                       std::map<long, std::vector<mpz_class>>& memo) {
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  // x^n - 1 divided by Phi_d for every proper divisor d of n.
  std::vector<mpz_class> f(n + 1, mpz_class(0));
  f[0] = -1;
  f[n] = 1;
  for (long d = 1; d < n; ++d)
    if (n % d == 0) f = poly_divexact(std::move(f), cyclotomic_poly(d, memo));
  memo[n] = f;
  return f;
}

long euler_phi(long n) {
  long result = n;
  long m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

}  // namespace

CycloField::CycloField(long conductor) : conductor_(conductor) {
  if (conductor < 1) throw DomainError("conductor must be positive");
  std::map<long, std::vector<mpz_class>> memo;
  phi_ = cyclotomic_poly(conductor, memo);
  degree_ = static_cast<long>(phi_.size()) - 1;
  if (degree_ != euler_phi(conductor))
    throw std::logic_error("cyclotomic polynomial degree mismatch");

  // Rows x^e mod Phi_L for degree_ <= e <= max needed exponent.  Products of
  // reduced elements reach 2*degree_-2; root exponents reach conductor-1.
  long max_exp = std::max(2 * degree_ - 2, conductor - 1);
  std::vector<mpz_class> cur(degree_, mpz_class(0));
  // x^degree = -(phi_0 + ... + phi_{d-1} x^{d-1}), Phi monic.
  for (long j = 0; j < degree_; ++j) cur[j] = -phi_[j];
  for (long e = degree_; e <= max_exp; ++e) {
    reduce_.push_back(cur);
    // multiply by x, fold the overflow term back in
    mpz_class top = cur.empty() ? mpz_class(0) : cur[degree_ - 1];
    for (long j = degree_ - 1; j > 0; --j) cur[j] = cur[j - 1];
    if (degree_ > 0) cur[0] = 0;
    if (top != 0)
      for (long j = 0; j < degree_; ++j) cur[j] += top * (-phi_[j]);
  }
}

FieldPtr CycloField::make(long conductor) {
  return FieldPtr(new CycloField(conductor));
}

const std::vector<mpz_class>& CycloField::reduction_row(long e) const {
  return reduce_.at(e - degree_);
}

Cyclotomic::Cyclotomic(FieldPtr f) : field_(std::move(f)) {
  c_.assign(field_->degree(), mpq_class(0));
}

Cyclotomic Cyclotomic::zero(FieldPtr f) { return Cyclotomic(std::move(f)); }

Cyclotomic Cyclotomic::one(FieldPtr f) { return from_integer(std::move(f), 1); }

Cyclotomic Cyclotomic::from_integer(FieldPtr f, long v) {
  return from_rational(std::move(f), mpq_class(v));
}

Cyclotomic Cyclotomic::from_rational(FieldPtr f, const mpq_class& v) {
  Cyclotomic r(std::move(f));
  if (r.field_->degree() == 0) return r;  // conductor 1: field is Q... degree 1 actually
  r.c_[0] = v;
  return r;
}

Cyclotomic Cyclotomic::root(FieldPtr f, long n, long k) {
  if (n < 1) throw DomainError("root order must be positive");
  long L = f->conductor();
  if (L % n != 0)
    throw ConductorMismatch("root order " + std::to_string(n) +
                            " does not divide the session conductor " +
                            std::to_string(L));
  long e = ((L / n) * (k % n) % L + L) % L;
  Cyclotomic r(std::move(f));
  long d = r.field_->degree();
  if (e < d) {
    r.c_[e] = 1;
  } else {
    const auto& row = r.field_->reduction_row(e);
    for (long j = 0; j < d; ++j) r.c_[j] = mpq_class(row[j]);
  }
  return r;
}

bool Cyclotomic::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool Cyclotomic::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  for (std::size_t j = 1; j < c_.size(); ++j)
    if (c_[j] != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t j = 1; j < c_.size(); ++j)
    if (c_[j] != 0) return false;
  return true;
}

mpq_class Cyclotomic::rational_value() const {
  return c_.empty() ? mpq_class(0) : c_[0];
}

void Cyclotomic::check_same_field(const Cyclotomic& o) const {
  if (field_ != o.field_ && field_->conductor() != o.field_->conductor())
    throw ConductorMismatch("mixing cyclotomic values of conductors " +
                            std::to_string(field_->conductor()) + " and " +
                            std::to_string(o.field_->conductor()));
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r(*this);
  for (auto& x : r.c_) x = -x;
  return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  check_same_field(o);
  for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
  check_same_field(o);
  for (std::size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
  return *this;
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  Cyclotomic r(*this);
  r += o;
  return r;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const {
  Cyclotomic r(*this);
  r -= o;
  return r;
}

void Cyclotomic::reduce_tail(std::vector<mpq_class>& work) const {
  long d = field_->degree();
  for (long e = static_cast<long>(work.size()) - 1; e >= d; --e) {
    if (work[e] == 0) continue;
    const auto& row = field_->reduction_row(e);
    for (long j = 0; j < d; ++j)
      if (row[j] != 0) work[j] += work[e] * row[j];
    work[e] = 0;
  }
  work.resize(d);
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  check_same_field(o);
  long d = field_->degree();
  std::vector<mpq_class> work(2 * d - 1, mpq_class(0));
  for (long i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    for (long j = 0; j < d; ++j) {
      if (o.c_[j] == 0) continue;
      work[i + j] += c_[i] * o.c_[j];
    }
  }
  reduce_tail(work);
  Cyclotomic r(field_);
  r.c_ = std::move(work);
  return r;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  *this = *this * o;
  return *this;
}

Cyclotomic Cyclotomic::inv() const {
  if (is_zero()) throw DomainError("division by zero in Q(zeta)");
  if (is_rational()) {
    Cyclotomic r(field_);
    r.c_[0] = 1 / c_[0];
    return r;
  }
  // Extended Euclid in Q[x] against Phi_L (irreducible, so the gcd is a
  // nonzero constant).  Phi is recovered from the x^d reduction row:
  // x^d = sum row[j] x^j, hence Phi = x^d - sum row[j] x^j.
  long d = field_->degree();
  std::vector<mpq_class> r0(d + 1), r1(c_.begin(), c_.end());
  {
    const auto& row = field_->reduction_row(d);
    for (long j = 0; j < d; ++j) r0[j] = mpq_class(-row[j]);
    r0[d] = 1;
  }
  auto trim = [](std::vector<mpq_class>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  };
  trim(r1);
  std::vector<mpq_class> s0 = {mpq_class(0)}, s1 = {mpq_class(1)};
  trim(s0);
  while (true) {
    // divide r0 by r1
    std::vector<mpq_class> rem = r0;
    std::vector<mpq_class> quot(std::max<std::size_t>(rem.size() - r1.size() + 1, 1),
                                mpq_class(0));
    while (rem.size() >= r1.size() && !rem.empty()) {
      mpq_class q = rem.back() / r1.back();
      std::size_t shift = rem.size() - r1.size();
      quot[shift] = q;
      for (std::size_t j = 0; j < r1.size(); ++j) rem[shift + j] -= q * r1[j];
      trim(rem);
      if (rem.size() < r1.size()) break;
    }
    // s_next = s0 - quot * s1
    std::vector<mpq_class> snext(std::max(s0.size(), quot.size() + s1.size()),
                                 mpq_class(0));
    for (std::size_t j = 0; j < s0.size(); ++j) snext[j] = s0[j];
    for (std::size_t a = 0; a < quot.size(); ++a) {
      if (quot[a] == 0) continue;
      for (std::size_t b = 0; b < s1.size(); ++b) snext[a + b] -= quot[a] * s1[b];
    }
    trim(snext);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(snext);
    if (r1.empty()) break;
    if (r1.size() == 1) {
      // gcd reached: inverse = s1 / r1[0]
      Cyclotomic out(field_);
      for (std::size_t j = 0; j < s1.size() && j < out.c_.size(); ++j)
        out.c_[j] = s1[j] / r1[0];
      // s1 may exceed degree d-1 only transiently; fold just in case
      if (s1.size() > static_cast<std::size_t>(d)) {
        std::vector<mpq_class> work(s1.begin(), s1.end());
        for (auto& x : work) x /= r1[0];
        work.resize(std::max<std::size_t>(work.size(), d), mpq_class(0));
        reduce_tail(work);
        out.c_.assign(work.begin(), work.end());
      }
      return out;
    }
  }
  throw std::logic_error("extended euclid fell through; element not invertible");
}

Cyclotomic Cyclotomic::pow(long n) const {
  if (n < 0) return inv().pow(-n);
  Cyclotomic acc = one(field_);
  Cyclotomic base = *this;
  unsigned long e = static_cast<unsigned long>(n);
  while (e) {
    if (e & 1) acc *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return acc;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
  check_same_field(o);
  return c_ == o.c_;
}

std::optional<long> Cyclotomic::order() const {
  if (is_zero()) throw DomainError("order of zero is undefined");
  long bound = std::lcm(2L, field_->conductor());
  if (!pow(bound).is_one()) return std::nullopt;
  for (long d = 1; d <= bound; ++d)
    if (bound % d == 0 && pow(d).is_one()) return d;
  return std::nullopt;  // unreachable
}

std::map<long, mpq_class> Cyclotomic::coeff_map() const {
  std::map<long, mpq_class> m;
  for (long j = 0; j < static_cast<long>(c_.size()); ++j)
    if (c_[j] != 0) m[j] = c_[j];
  return m;
}

std::string Cyclotomic::str() const {
  auto m = coeff_map();
  if (m.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  long L = field_->conductor();
  for (const auto& [e, q] : m) {
    mpq_class a = q;
    bool neg = sgn(a) < 0;
    if (neg) a = -a;
    if (first) {
      if (neg) out << "-";
      first = false;
    } else {
      out << (neg ? " - " : " + ");
    }
    std::string coeff = a.get_str();
    if (e == 0) {
      out << coeff;
    } else {
      if (coeff != "1") out << coeff << "*";
      out << "z" << L;
      if (e != 1) out << "^" << e;
    }
  }
  return out.str();
}

std::string Cyclotomic::approx_str() const {
  double re = 0.0, im = 0.0;
  long L = field_->conductor();
  for (long j = 0; j < static_cast<long>(c_.size()); ++j) {
    if (c_[j] == 0) continue;
    double v = c_[j].get_d();
    re += v * std::cos(2.0 * M_PI * j / L);
    im += v * std::sin(2.0 * M_PI * j / L);
  }
  std::ostringstream out;
  out.precision(6);
  out << std::fixed << re << (im < 0 ? "" : "+") << im << "i";
  return out.str();
}

std::size_t Cyclotomic::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (const auto& x : c_) {
    double v = x.get_d();
    std::size_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(v));
    h = (h ^ bits) * 1099511628211ull;
  }
  return h;
}

namespace {

struct Scanner {
  const std::string& s;
  std::size_t pos = 0;
  bool eof() const { return pos >= s.size(); }
  char peek() const { return s[pos]; }
  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
};

long parse_long(Scanner& sc, const char* what) {
  sc.skip_ws();
  std::size_t start = sc.pos;
  bool neg = false;
  if (!sc.eof() && (sc.peek() == '-' || sc.peek() == '+')) {
    neg = sc.peek() == '-';
    ++sc.pos;
  }
  if (sc.eof() || !std::isdigit(static_cast<unsigned char>(sc.peek())))
    throw ParseError(std::string("expected ") + what, start);
  long v = 0;
  while (!sc.eof() && std::isdigit(static_cast<unsigned char>(sc.peek()))) {
    v = v * 10 + (sc.peek() - '0');
    ++sc.pos;
  }
  return neg ? -v : v;
}

}  // namespace

Cyclotomic parse_cyclotomic(const std::string& text, FieldPtr field) {
  Scanner sc{text};
  sc.skip_ws();
  bool negate = false;
  while (!sc.eof() && sc.peek() == '-') {
    negate = !negate;
    ++sc.pos;
    sc.skip_ws();
  }
  Cyclotomic acc = Cyclotomic::one(field);
  bool expect_factor = true;
  while (true) {
    sc.skip_ws();
    if (sc.eof()) {
      if (expect_factor) throw ParseError("expected factor", sc.pos);
      break;
    }
    if (!expect_factor) {
      if (sc.peek() == '*') {
        ++sc.pos;
        expect_factor = true;
        continue;
      }
      throw ParseError("unexpected character '" + std::string(1, sc.peek()) + "'",
                       sc.pos);
    }
    if (sc.peek() == 'z' || sc.peek() == 'Z') {
      ++sc.pos;
      long n = parse_long(sc, "root order after 'z'");
      if (n < 1) throw ParseError("root order must be positive", sc.pos);
      long k = 1;
      if (!sc.eof() && sc.peek() == '^') {
        ++sc.pos;
        k = parse_long(sc, "exponent after '^'");
      }
      acc *= Cyclotomic::root(field, n, k);
    } else if (std::isdigit(static_cast<unsigned char>(sc.peek()))) {
      long v = parse_long(sc, "integer");
      acc *= Cyclotomic::from_integer(field, v);
    } else {
      throw ParseError("expected integer or z<n> literal", sc.pos);
    }
    expect_factor = false;
  }
  if (negate) acc = -acc;
  return acc;
}

std::vector<long> scan_root_orders(const std::string& text) {
  std::vector<long> orders;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != 'z' && text[i] != 'Z') continue;
    std::size_t j = i + 1;
    long n = 0;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
      n = n * 10 + (text[j] - '0');
      ++j;
    }
    if (n > 0) orders.push_back(n);
    i = j - 1;
  }
  return orders;
}

long conductor_for_orders(const std::vector<long>& orders) {
  long L = 2;
  for (long n : orders) L = std::lcm(L, n);
  return L;
}

}  // namespace nichols
