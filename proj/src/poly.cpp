#include "eulerprod/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include <Eigen/Eigenvalues>

#include "eulerprod/error.hpp"
#include "eulerprod/exponent.hpp"

namespace eulerprod {

// ---------------------------------------------------------------- SparsePolynomial

SparsePolynomial::SparsePolynomial(int n, std::vector<Term> terms) : n_(n), terms_(std::move(terms)) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  for (const Term& t : terms_) {
    if (t.exponent.size() != n + 1) {
      throw Error(ErrorKind::InvalidArgument, "exponent vector must have length n+1");
    }
    if ((t.exponent.array() < 0).any()) {
      throw Error(ErrorKind::InvalidArgument, "negative exponent " + format_exponent(t.exponent));
    }
    if (t.coefficient == 0) {
      throw Error(ErrorKind::ZeroCoefficient, "zero coefficient at " + format_exponent(t.exponent));
    }
    if (is_zero(t.exponent)) {
      throw Error(ErrorKind::ZeroExponentVector, "a non-constant term has the zero exponent");
    }
  }
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return grlex_before(a.exponent, b.exponent); });
  for (std::size_t j = 1; j < terms_.size(); ++j) {
    if (terms_[j].exponent == terms_[j - 1].exponent) {
      throw Error(ErrorKind::RepeatedExponent, "repeated exponent " + format_exponent(terms_[j].exponent));
    }
  }
  alpha_n_nonzero_ = std::all_of(terms_.begin(), terms_.end(), [n](const Term& t) {
    return !is_zero(ExponentVector(t.exponent.head(n)));
  });
}

const Term& SparsePolynomial::term(std::size_t j) const {
  if (j >= terms_.size()) {
    throw Error(ErrorKind::InvalidTermIndex,
                "term index " + std::to_string(j) + " out of range (r = " + std::to_string(terms_.size()) + ")");
  }
  return terms_[j];
}

ExponentMatrix SparsePolynomial::alpha() const {
  ExponentMatrix a(n_ + 1, static_cast<Eigen::Index>(terms_.size()));
  for (std::size_t j = 0; j < terms_.size(); ++j) a.col(static_cast<Eigen::Index>(j)) = terms_[j].exponent;
  return a;
}

std::optional<std::size_t> SparsePolynomial::find(const ExponentVector& exponent) const {
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    if (terms_[j].exponent == exponent) return j;
  }
  return std::nullopt;
}

long long SparsePolynomial::max_degree() const {
  long long d = 0;
  for (const Term& t : terms_) d = std::max(d, total_degree(t.exponent));
  return d;
}

std::string SparsePolynomial::to_string() const {
  std::string out = "1";
  for (const Term& t : terms_) {
    out += t.coefficient < 0 ? " - " : " + ";
    const long long mag = t.coefficient < 0 ? -t.coefficient : t.coefficient;
    bool first = true;
    if (mag != 1) {
      out += std::to_string(mag);
      first = false;
    }
    for (Eigen::Index i = 0; i < t.exponent.size(); ++i) {
      if (t.exponent(i) == 0) continue;
      if (!first) out += '*';
      first = false;
      out += "X" + std::to_string(i + 1);
      if (t.exponent(i) != 1) out += "^" + std::to_string(t.exponent(i));
    }
  }
  return out;
}

bool operator==(const SparsePolynomial& a, const SparsePolynomial& b) {
  if (a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t j = 0; j < a.terms_.size(); ++j) {
    if (a.terms_[j].coefficient != b.terms_[j].coefficient) return false;
    if (a.terms_[j].exponent != b.terms_[j].exponent) return false;
  }
  return true;
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, int n) : text_(text), n_(n) {}

  SparsePolynomial parse() {
    std::vector<Term> terms;
    std::optional<long long> constant;
    skip_space();
    bool negative = false;
    if (peek() == '+' || peek() == '-') negative = take() == '-';
    while (true) {
      auto [coefficient, exponent] = parse_term();
      if (negative) coefficient = -coefficient;
      if (exponent.has_value()) {
        if (coefficient == 0) throw fail(ErrorKind::ZeroCoefficient, "term with coefficient 0");
        if (is_zero(*exponent)) throw fail(ErrorKind::ZeroExponentVector, "variable term with all exponents 0");
        for (const Term& t : terms) {
          if (t.exponent == *exponent) {
            throw fail(ErrorKind::RepeatedExponent, "repeated exponent " + format_exponent(*exponent));
          }
        }
        terms.push_back({coefficient, *exponent});
      } else {
        if (constant.has_value()) throw fail(ErrorKind::RepeatedExponent, "more than one constant term");
        constant = coefficient;
      }
      skip_space();
      if (pos_ >= text_.size()) break;
      const char op = take();
      if (op != '+' && op != '-') throw fail(ErrorKind::Syntax, std::string("unexpected '") + op + "'");
      negative = op == '-';
    }
    if (!constant.has_value()) throw Error(ErrorKind::MissingConstantTerm, "polynomial has no constant term");
    if (*constant != 1) {
      throw Error(ErrorKind::ConstantTermNotOne, "constant term is " + std::to_string(*constant) + ", expected 1");
    }
    return SparsePolynomial(n_, std::move(terms));
  }

 private:
  std::pair<long long, std::optional<ExponentVector>> parse_term() {
    long long coefficient = 1;
    ExponentVector exponent = ExponentVector::Zero(n_ + 1);
    bool has_variable = false;
    while (true) {
      skip_space();
      const char ch = peek();
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        coefficient *= parse_integer();
      } else if (ch == 'X' || ch == 'x') {
        ++pos_;
        const long long index = parse_integer();
        if (index < 1 || index > n_ + 1) {
          throw fail(ErrorKind::Syntax, "variable X" + std::to_string(index) + " outside X1..X" + std::to_string(n_ + 1));
        }
        long long power = 1;
        skip_space();
        if (peek() == '^') {
          ++pos_;
          skip_space();
          power = parse_integer();
        }
        exponent(index - 1) += power;
        has_variable = true;
      } else {
        throw fail(ErrorKind::Syntax, ch == '\0' ? "unexpected end of input" : std::string("unexpected '") + ch + "'");
      }
      skip_space();
      if (peek() != '*') break;
      ++pos_;
    }
    if (!has_variable) return {coefficient, std::nullopt};
    return {coefficient, exponent};
  }

  long long parse_integer() {
    skip_space();
    const std::size_t start = pos_;
    long long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (value > (1LL << 40)) throw fail(ErrorKind::Syntax, "integer too large");
      value = value * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) throw fail(ErrorKind::Syntax, "expected an integer");
    return value;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char take() { return text_[pos_++]; }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  Error fail(ErrorKind kind, const std::string& what) const {
    return Error(kind, what + " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace

SparsePolynomial parse_polynomial(std::string_view text, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  return Parser(text, n).parse();
}

// ---------------------------------------------------------------- evaluation and algebra

Complex evaluate(const SparsePolynomial& h, const VectorXc& x) {
  if (x.size() != h.num_vars()) throw Error(ErrorKind::InvalidArgument, "point has the wrong dimension");
  Complex value = 1.0;
  for (const Term& t : h.terms()) {
    Complex monomial = static_cast<double>(t.coefficient);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      for (long long k = 0; k < t.exponent(i); ++k) monomial *= x(i);
    }
    value += monomial;
  }
  return value;
}

SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b) {
  if (a.n() != b.n()) throw Error(ErrorKind::InvalidArgument, "factors have different n");
  std::map<MultiIndex, long long> acc;
  auto add = [&](const ExponentVector& e, long long c) { acc[to_multi_index(e)] += c; };
  for (const Term& t : a.terms()) add(t.exponent, t.coefficient);
  for (const Term& t : b.terms()) add(t.exponent, t.coefficient);
  for (const Term& s : a.terms()) {
    for (const Term& t : b.terms()) add(s.exponent + t.exponent, s.coefficient * t.coefficient);
  }
  std::vector<Term> terms;
  for (const auto& [m, c] : acc) {
    if (c != 0) terms.push_back({c, from_multi_index(m)});
  }
  return SparsePolynomial(a.n(), std::move(terms));
}

std::vector<std::size_t> ray_indices(const SparsePolynomial& h, std::size_t e) {
  const ExponentVector& ray = h.exponent(e);
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < h.size(); ++j) {
    if (collinear(h.exponent(j), ray)) out.push_back(j);
  }
  return out;
}

SparsePolynomial main_part(const SparsePolynomial& h, std::size_t e) {
  std::vector<Term> terms;
  for (std::size_t j : ray_indices(h, e)) terms.push_back(h.term(j));
  return SparsePolynomial(h.n(), std::move(terms));
}

RayReduction ray_reduce(const SparsePolynomial& h_main, const ExponentVector& ray) {
  RayReduction out;
  out.primitive = primitive_vector(ray);
  std::vector<BigInt> coefficients{1};
  for (const Term& t : h_main.terms()) {
    const long long q = multiple_of(t.exponent, out.primitive);
    if (q <= 0) {
      throw Error(ErrorKind::NonCollinearTerm,
                  format_exponent(t.exponent) + " is not on the ray of " + format_exponent(ray));
    }
    if (coefficients.size() <= static_cast<std::size_t>(q)) coefficients.resize(q + 1, 0);
    coefficients[q] += t.coefficient;
  }
  out.polynomial = UnivariatePolynomial(std::move(coefficients));
  return out;
}

RayReduction reduced_main_part(const SparsePolynomial& h, std::size_t e) {
  return ray_reduce(main_part(h, e), h.exponent(e));
}

SparsePolynomial substitute_ray(const UnivariatePolynomial& f, const ExponentVector& primitive, int n) {
  if (f.degree() < 0 || f[0] != 1) throw Error(ErrorKind::ConstantTermNotOne, "f(0) must be 1");
  std::vector<Term> terms;
  for (int k = 1; k <= f.degree(); ++k) {
    if (f[k] == 0) continue;
    terms.push_back({f[k].convert_to<long long>(), primitive * k});
  }
  return SparsePolynomial(n, std::move(terms));
}

SparsePolynomial permute_variables(const SparsePolynomial& h, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != h.n()) throw Error(ErrorKind::InvalidArgument, "permutation length must be n");
  std::vector<Term> terms;
  for (const Term& t : h.terms()) {
    Term moved = t;
    for (int i = 0; i < h.n(); ++i) moved.exponent(perm[i]) = t.exponent(i);
    terms.push_back(moved);
  }
  return SparsePolynomial(h.n(), std::move(terms));
}

SparsePolynomial reorder_terms(const SparsePolynomial& h, const std::vector<std::size_t>& order) {
  std::vector<Term> terms;
  for (std::size_t j : order) terms.push_back(h.term(j));
  return SparsePolynomial(h.n(), std::move(terms));
}

// ---------------------------------------------------------------- univariate

UnivariatePolynomial::UnivariatePolynomial(std::vector<BigInt> c) : coefficients(std::move(c)) { trim(); }

UnivariatePolynomial UnivariatePolynomial::from_ints(std::initializer_list<long long> c) {
  std::vector<BigInt> v;
  for (long long x : c) v.emplace_back(x);
  return UnivariatePolynomial(std::move(v));
}

void UnivariatePolynomial::trim() {
  while (!coefficients.empty() && coefficients.back() == 0) coefficients.pop_back();
}

int UnivariatePolynomial::degree() const { return static_cast<int>(coefficients.size()) - 1; }

BigInt UnivariatePolynomial::operator[](std::size_t i) const {
  return i < coefficients.size() ? coefficients[i] : BigInt(0);
}

std::string UnivariatePolynomial::to_string(char variable) const {
  if (coefficients.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    const BigInt& c = coefficients[k];
    if (c == 0) continue;
    const BigInt mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (k == 0 || mag != 1) out += mag.str();
    if (k > 0) {
      if (mag != 1) out += '*';
      out += variable;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

UnivariatePolynomial operator*(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> c(a.coefficients.size() + b.coefficients.size() - 1, 0);
  for (std::size_t i = 0; i < a.coefficients.size(); ++i) {
    if (a.coefficients[i] == 0) continue;
    for (std::size_t k = 0; k < b.coefficients.size(); ++k) c[i + k] += a.coefficients[i] * b.coefficients[k];
  }
  return UnivariatePolynomial(std::move(c));
}

UnivariatePolynomial derivative(const UnivariatePolynomial& f) {
  std::vector<BigInt> c;
  for (std::size_t k = 1; k < f.coefficients.size(); ++k) c.push_back(f.coefficients[k] * static_cast<long long>(k));
  return UnivariatePolynomial(std::move(c));
}

namespace {

using RationalPoly = std::vector<Rational>;

void trim(RationalPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RationalPoly to_rational(const UnivariatePolynomial& f) {
  return RationalPoly(f.coefficients.begin(), f.coefficients.end());
}

// Remainder of a by b over Q.
RationalPoly remainder(RationalPoly a, const RationalPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational factor = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

UnivariatePolynomial primitive_integer(const RationalPoly& p) {
  BigInt denominator_lcm = 1;
  for (const Rational& c : p) {
    const BigInt d = boost::multiprecision::denominator(c);
    denominator_lcm = denominator_lcm / boost::multiprecision::gcd(denominator_lcm, d) * d;
  }
  std::vector<BigInt> c;
  BigInt content = 0;
  for (const Rational& x : p) {
    c.push_back(boost::multiprecision::numerator(x) * (denominator_lcm / boost::multiprecision::denominator(x)));
    content = boost::multiprecision::gcd(content, c.back());
  }
  if (content == 0) return {};
  if (c.back() < 0) content = -content;
  for (BigInt& x : c) x /= content;
  return UnivariatePolynomial(std::move(c));
}

}  // namespace

UnivariatePolynomial polynomial_gcd(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
  RationalPoly x = to_rational(a);
  RationalPoly y = to_rational(b);
  trim(x);
  trim(y);
  while (!y.empty()) {
    RationalPoly r = remainder(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  if (x.empty()) return {};
  return primitive_integer(x);
}

bool is_squarefree(const UnivariatePolynomial& f) {
  return polynomial_gcd(f, derivative(f)).degree() <= 0;
}

std::optional<UnivariatePolynomial> exact_divide(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
  if (b.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by the zero polynomial");
  if (a.is_zero()) return UnivariatePolynomial{};
  if (a.degree() < b.degree()) return std::nullopt;
  std::vector<BigInt> rem = a.coefficients;
  std::vector<BigInt> quot(a.coefficients.size() - b.coefficients.size() + 1, 0);
  const BigInt& lead = b.coefficients.back();
  for (int k = static_cast<int>(quot.size()) - 1; k >= 0; --k) {
    const BigInt& top = rem[k + b.coefficients.size() - 1];
    if (top % lead != 0) return std::nullopt;
    const BigInt q = top / lead;
    quot[k] = q;
    if (q == 0) continue;
    for (std::size_t i = 0; i < b.coefficients.size(); ++i) rem[k + i] -= q * b.coefficients[i];
  }
  for (const BigInt& r : rem) {
    if (r != 0) return std::nullopt;
  }
  return UnivariatePolynomial(std::move(quot));
}

UnivariatePolynomial squarefree_part(const UnivariatePolynomial& f) {
  const UnivariatePolynomial g = polynomial_gcd(f, derivative(f));
  if (g.degree() <= 0) return f;
  auto q = exact_divide(f, g);
  if (!q) {
    // g is primitive, so f = g * q over Z by Gauss's lemma.
    throw Error(ErrorKind::Internal, "squarefree division was not exact");
  }
  if (!q->is_zero() && q->coefficients.front() < 0) {
    for (BigInt& c : q->coefficients) c = -c;
  }
  return *q;
}

std::vector<Complex> roots(const std::vector<Complex>& coefficients) {
  std::vector<Complex> c = coefficients;
  while (!c.empty() && c.back() == Complex(0.0)) c.pop_back();
  std::size_t zero_roots = 0;
  while (zero_roots < c.size() && c[zero_roots] == Complex(0.0)) ++zero_roots;
  std::vector<Complex> out(zero_roots, Complex(0.0));
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(zero_roots));
  if (c.size() <= 1) return out;
  const Eigen::Index d = static_cast<Eigen::Index>(c.size()) - 1;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < d; ++i) companion(i, d - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  for (Eigen::Index i = 0; i < d; ++i) {
    // A few Newton steps on the original coefficients tighten the eigenvalue.
    Complex z = solver.eigenvalues()(i);
    for (int step = 0; step < 4; ++step) {
      Complex value = 0.0;
      Complex slope = 0.0;
      for (std::size_t k = c.size(); k-- > 0;) {
        slope = slope * z + value;
        value = value * z + c[k];
      }
      if (std::abs(slope) == 0.0) break;
      const Complex next = z - value / slope;
      if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
      if (std::abs(next - z) > 1e-6 * std::max(1.0, std::abs(z))) break;
      z = next;
    }
    out.push_back(z);
  }
  std::sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

std::vector<Complex> roots(const UnivariatePolynomial& f) {
  std::vector<Complex> c;
  for (const BigInt& x : f.coefficients) c.emplace_back(x.convert_to<double>(), 0.0);
  return roots(c);
}

}  // namespace eulerprod
