#include "eulerprod/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "eulerprod/arith.hpp"
#include "eulerprod/continuation.hpp"
#include "eulerprod/cyclotomy.hpp"
#include "eulerprod/error.hpp"
#include "eulerprod/exponent.hpp"
#include "eulerprod/geometry.hpp"
#include "eulerprod/igusa.hpp"
#include "eulerprod/puiseux.hpp"
#include "eulerprod/report.hpp"

namespace eulerprod {

std::string to_string(Command command) {
  switch (command) {
    case Command::Expand: return "expand";
    case Command::Classify: return "classify";
    case Command::Boundary: return "boundary";
    case Command::Evaluate: return "evaluate";
    case Command::Zeros: return "zeros";
    case Command::Igusa: return "igusa";
  }
  return "unknown";
}

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::string body = trim(text);
  if (!body.empty() && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
  std::vector<std::string> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

double parse_real(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::Syntax, "cannot read " + what + " from '" + text + "'");
  }
  return v;
}

Complex parse_complex(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw Error(ErrorKind::Syntax, "empty coordinate");
  if (text.back() != 'i') return parse_real(text, "a coordinate");
  const std::string body = text.substr(0, text.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s, "an imaginary part");
  };
  if (split == std::string::npos) return {0.0, imag_of(body)};
  return {parse_real(body.substr(0, split), "a real part"), imag_of(body.substr(split))};
}

Rational parse_rational(const std::string& raw) {
  std::string text = trim(raw);
  if (text.empty()) throw Error(ErrorKind::Syntax, "empty rational");
  const auto dot = text.find('.');
  try {
    if (dot == std::string::npos) return Rational(text);
    const bool negative = text.front() == '-';
    std::string digits = text.substr(negative || text.front() == '+' ? 1 : 0);
    const auto d = digits.find('.');
    const std::string whole = digits.substr(0, d), frac = digits.substr(d + 1);
    if (frac.find_first_not_of("0123456789") != std::string::npos ||
        whole.find_first_not_of("0123456789") != std::string::npos) {
      throw Error(ErrorKind::Syntax, "cannot read a rational from '" + raw + "'");
    }
    Rational q(BigInt(whole.empty() ? "0" : whole));
    if (!frac.empty()) q += Rational(BigInt(frac), pow(BigInt(10), static_cast<unsigned>(frac.size())));
    return negative ? Rational(-q) : q;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(ErrorKind::Syntax, "cannot read a rational from '" + raw + "'");
  }
}

long long parse_integer(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw Error(ErrorKind::Syntax, "cannot read " + what + " from '" + text + "'");
  return v;
}

void require(bool condition, const std::string& message) {
  if (!condition) throw Error(ErrorKind::InvalidArgument, message);
}

SparsePolynomial load_polynomial(const RunConfig& config) {
  require(config.n >= 1 && config.n <= 20, "--n must lie in [1, 20]");
  require(config.poly.empty() != config.poly_file.empty(), "give exactly one of --poly and --poly-file");
  std::string text = config.poly;
  if (!config.poly_file.empty()) {
    std::ifstream in(config.poly_file);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + config.poly_file);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return parse_polynomial(trim(text), config.n);
}

ZetaZeroTable load_zeros(const RunConfig& config) {
  return config.zeros_file.empty() ? ZetaZeroTable::load_default() : ZetaZeroTable::load(config.zeros_file);
}

std::string fmt(double x, int precision = 15) {
  std::ostringstream os;
  os << std::setprecision(precision) << x;
  return os.str();
}

std::string fmt(Complex z) {
  std::ostringstream os;
  os << std::setprecision(15) << z.real() << (z.imag() < 0 || std::signbit(z.imag()) ? " - " : " + ")
     << std::abs(z.imag()) << "i";
  return os.str();
}

std::string fmt_beta(const MultiIndex& beta) { return format_exponent(from_multi_index(beta)); }

Json common_inputs(const RunConfig& config, const SparsePolynomial& h) {
  return Json{{"polynomial", to_json(h)}, {"n", config.n}, {"c", config.c}};
}

struct Outcome {
  Json inputs, settings, results;
  std::string text;
};

Outcome run_expand(const RunConfig& config) {
  const SparsePolynomial h = load_polynomial(config);
  const int B = config.beta_bound.value_or(6);
  const int D = config.degree_bound.value_or(8);
  require(B >= 1 && B <= 400, "--beta-bound must lie in [1, 400]");
  require(D >= 1 && D <= 64, "--degree-bound must lie in [1, 64]");
  ExpansionOptions eo;
  eo.parallel = config.parallel;
  const ExpansionTable table = expansion_table(h, B, eo);
  const ExpansionCheck check = verify_expansion(h, D);

  // Second route through the coefficients of log h on the low shells.
  std::size_t compared = 0, agreed = 0, ambiguous = 0;
  const int oracle_bound = std::min(B, 6);
  for (int k = 1; k <= oracle_bound; ++k) {
    for (const MultiIndex& beta : compositions(h.size(), k)) {
      try {
        const BigInt g = gamma_log_oracle(h, beta);
        ++compared;
        if (g == table.gamma(beta)) ++agreed;
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::AmbiguousAggregation) throw;
        ++ambiguous;
      }
    }
  }

  Outcome o;
  o.inputs = common_inputs(config, h);
  o.settings = {{"beta_bound", B}, {"degree_bound", D}};
  o.results = {{"expansion", to_json(table)},
               {"verification", to_json(check)},
               {"log_oracle", {{"beta_bound", oracle_bound}, {"compared", compared}, {"agreed", agreed},
                               {"ambiguous", ambiguous}}}};
  std::ostringstream t;
  t << "h = " << h.to_string() << "\n";
  t << "C(h) = " << format_rational(table.distance_constant) << "\n";
  t << "nonzero gamma(beta) for |beta| <= " << B << ": " << table.entries.size() << "\n";
  t << table.to_text();
  t << "verify_expansion D=" << D << ": " << (check.passed ? "passed" : "FAILED") << " (" << check.factors
    << " factors)\n";
  if (check.first_mismatch) {
    t << "  first mismatch at " << fmt_beta(*check.first_mismatch) << ": expected " << check.expected << ", found "
      << check.found << "\n";
  }
  t << "log oracle |beta| <= " << oracle_bound << ": " << agreed << "/" << compared << " agree, " << ambiguous
    << " ambiguous\n";
  o.text = t.str();
  return o;
}

void describe_faces(std::ostringstream& t, const std::vector<FaceReport>& faces) {
  for (const auto& f : faces) {
    t << "  face e=" << f.e << " alpha=" << format_exponent(f.polar) << (f.supporting ? "" : " (not supporting)");
    if (f.witness) {
      t << " witness=(";
      for (std::size_t i = 0; i < f.witness->size(); ++i) t << (i ? "," : "") << format_rational((*f.witness)[i]);
      t << ")";
    }
    t << " ray=" << f.ray_polynomial.to_string() << " nondegenerate=" << f.nondegenerate << " H=" << f.hypothesis_H
      << " coprime=" << f.coprime_condition << "\n";
  }
}

Outcome run_classify(const RunConfig& config) {
  const SparsePolynomial h = load_polynomial(config);
  require(config.c != 0, "--c must be nonzero");
  ClassifyOptions opts;
  opts.allow_flagged = config.allow_flagged;
  opts.cyclotomy_degree_bound = config.degree_bound.value_or(0);
  const BoundaryVerdict verdict = classify_boundary(h, config.c, opts);
  Outcome o;
  o.inputs = common_inputs(config, h);
  o.settings = {{"allow_flagged", config.allow_flagged}, {"cyclotomy_degree_bound", opts.cyclotomy_degree_bound}};
  o.results = {{"verdict", to_json(verdict)}};
  std::ostringstream t;
  t << "h = " << h.to_string() << ", c = " << config.c << "\n";
  t << "verdict: " << to_string(verdict.kind) << "\n";
  if (!verdict.removal.removed.empty()) {
    t << "cyclotomic factors removed:";
    for (const auto& [lambda, k] : verdict.removal.removed) t << " (1 - X^" << fmt_beta(lambda) << ")^" << k;
    t << "\nresidual: " << verdict.removal.residual.to_string() << "\n";
  }
  if (verdict.residual_cyclotomy) t << "residual cyclotomy: " << to_string(verdict.residual_cyclotomy->kind) << "\n";
  t << "rank alpha_(n): " << verdict.rank << "\n";
  describe_faces(t, verdict.faces);
  for (const auto& d : verdict.diagnostics) t << "note: " << d << "\n";
  o.text = t.str();
  return o;
}

std::vector<Complex> parse_point(const std::string& text, int n) {
  std::vector<Complex> out;
  for (const auto& item : split_list(text)) out.push_back(parse_complex(item));
  require(static_cast<int>(out.size()) == n, "--point needs " + std::to_string(n) + " coordinates");
  return out;
}

Outcome run_boundary(const RunConfig& config) {
  const SparsePolynomial h = load_polynomial(config);
  require(config.c != 0, "--c must be nonzero");
  const HalfspaceSystem system = w_system(h, config.c, 0);
  const std::vector<FaceReport> all = faces(h, config.c);
  Outcome o;
  o.inputs = common_inputs(config, h);
  o.settings = {{"delta", config.delta}};
  Json faces_json = Json::array();
  for (const auto& f : all) faces_json.push_back(to_json(f));
  o.results = {{"w_c0", to_json(system)}, {"rank", exponent_rank(h)}, {"faces", faces_json}};
  std::ostringstream t;
  t << "W_c(0) for h = " << h.to_string() << ", c = " << config.c << "\n";
  for (const auto& row : system.rows) {
    t << "  ";
    for (std::size_t i = 0; i < row.normal.size(); ++i) t << (i ? " + " : "") << row.normal[i] << "*sigma" << i + 1;
    t << " + " << format_rational(row.offset) << " > 0\n";
  }
  t << "rank alpha_(n): " << exponent_rank(h) << "\n";
  describe_faces(t, all);
  if (!config.point.empty()) {
    const auto s = parse_point(config.point, h.n());
    VectorXr sigma(h.n());
    for (int i = 0; i < h.n(); ++i) sigma(i) = s[static_cast<std::size_t>(i)].real();
    const bool in0 = membership(h, config.c, 0, sigma);
    const bool in_delta = membership(h, config.c, config.delta, sigma);
    o.results["point"] = {{"sigma", std::vector<double>(sigma.data(), sigma.data() + sigma.size())},
                          {"in_w_c0", in0},
                          {"in_w_c_delta", in_delta}};
    t << "point in W_c(0): " << (in0 ? "yes" : "no") << ", in W_c(" << fmt(config.delta) << "): "
      << (in_delta ? "yes" : "no") << "\n";
  }
  o.text = t.str();
  return o;
}

Outcome run_evaluate(const RunConfig& config) {
  const SparsePolynomial h = load_polynomial(config);
  require(config.c != 0, "--c must be nonzero");
  require(config.delta > 0, "--delta must be positive");
  require(config.tail_tolerance > 0, "--tolerance must be positive");
  require(!config.point.empty(), "--point is required");
  const auto coords = parse_point(config.point, h.n());
  VectorXc s(h.n());
  for (int i = 0; i < h.n(); ++i) s(i) = coords[static_cast<std::size_t>(i)];
  const ZetaZeroTable zeros = load_zeros(config);
  ContinuationContext ctx = make_context(h, config.delta, &zeros);
  ctx.beta_bound = config.beta_bound.value_or(400);
  require(ctx.beta_bound >= 3 && ctx.beta_bound <= 5000, "--beta-bound must lie in [3, 5000]");
  ctx.tail_tolerance = config.tail_tolerance;
  ctx.parallel = config.parallel;
  const ContinuationResult result = continued_value(h, config.c, s, ctx);
  const std::uint64_t P = config.prime_limit.value_or(10000);
  require(P >= 1 && P <= 100'000'000, "--prime-limit must lie in [1, 1e8]");

  Outcome o;
  o.inputs = common_inputs(config, h);
  Json point = Json::array();
  for (const auto& z : coords) point.push_back(to_json(z));
  o.inputs["point"] = point;
  o.settings = {{"delta", config.delta},
                {"beta_cap", ctx.beta_bound},
                {"tail_tolerance", ctx.tail_tolerance},
                {"singular_guard", ctx.singular_guard},
                {"zeta_zero_ordinates", zeros.size()}};
  o.results = {{"continued", to_json(result)}};
  std::ostringstream t;
  t << "Z(s) = " << fmt(result.value) << "\n";
  t << "M_delta = " << result.m_delta << ", certified B = " << result.certified_bound
    << ", tail tolerance = " << fmt(result.tail_tolerance) << "\n";
  if (result.nearest) {
    t << "nearest singular point: beta=" << fmt_beta(result.nearest->beta) << " rho=" << fmt(result.nearest->rho)
      << " distance=" << fmt(result.nearest->distance) << "\n";
  }
  for (const auto& e : result.ledger) {
    t << "  shell " << e.shell << ": " << e.contributing << " factors, |increment| = " << fmt(std::abs(e.increment), 6)
      << "\n";
  }
  double min_pairing = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < h.size(); ++j) {
    double v = static_cast<double>(config.c * h.last(j));
    for (int i = 0; i < h.n(); ++i) v += static_cast<double>(h.exponent(j)(i)) * s(i).real();
    min_pairing = std::min(min_pairing, v);
  }
  if (min_pairing > 1) {
    const DirectProduct direct = direct_euler_product(h, config.c, s, P);
    // |log of the omitted factors| <~ A sum_{p > P} p^{-sigma}, A = sum |a_j|.
    double A = 0;
    for (const auto& term : h.terms()) A += std::abs(static_cast<double>(term.coefficient));
    const double Pd = static_cast<double>(std::max<std::uint64_t>(P, 2));
    const double tail = A * std::pow(Pd, 1 - min_pairing) / ((min_pairing - 1) * std::log(Pd));
    o.results["direct"] = to_json(direct);
    o.results["direct"]["difference"] = std::abs(direct.value - result.value);
    o.results["direct"]["log_tail_estimate"] = tail;
    t << "direct product (p <= " << P << ") = " << fmt(direct.value) << ", difference "
      << fmt(std::abs(direct.value - result.value), 6) << ", log tail estimate " << fmt(tail, 3) << "\n";
  }
  o.text = t.str();
  return o;
}

std::size_t resolve_face(const SparsePolynomial& h, const std::string& face) {
  require(!face.empty(), "--face is required");
  if (face.find(',') != std::string::npos || face.front() == '(') {
    const auto idx = h.find(parse_exponent(face));
    if (!idx) throw Error(ErrorKind::InvalidTermIndex, "no term with exponent " + face);
    return *idx;
  }
  const long long idx = parse_integer(face, "a term index");
  if (idx < 0 || static_cast<std::size_t>(idx) >= h.size()) {
    throw Error(ErrorKind::InvalidTermIndex, "term index " + face + " out of range");
  }
  return static_cast<std::size_t>(idx);
}

Outcome run_zeros(const RunConfig& config) {
  const SparsePolynomial h = load_polynomial(config);
  require(config.c != 0, "--c must be nonzero");
  require(config.u >= 0 && config.eta > 0, "need --u >= 0 and --eta > 0");
  require(!config.nu || *config.nu >= 1, "--nu must be at least 1");
  const std::size_t e = resolve_face(h, config.face);
  FaceAnalysisOptions opts;
  opts.seed = config.seed;
  opts.u = config.u;
  opts.eta = config.eta;
  opts.nu = config.nu;
  opts.prime_limit = config.prime_limit.value_or(10000);
  require(opts.prime_limit >= 2 && opts.prime_limit <= 10'000'000, "--prime-limit must lie in [2, 1e7]");
  opts.candidate_bound = config.beta_bound.value_or(60);
  require(opts.candidate_bound >= 1 && opts.candidate_bound <= 400, "--beta-bound must lie in [1, 400]");
  opts.parallel = config.parallel;
  opts.primes.clear();
  for (const auto& item : split_list(config.primes)) {
    const long long p = parse_integer(item, "a prime");
    require(p >= 2 && p <= 1'000'000'000 && primes_up_to(static_cast<std::uint64_t>(p)).back() == static_cast<std::uint64_t>(p),
            "--primes entries must be primes");
    opts.primes.push_back(static_cast<std::uint64_t>(p));
  }
  const auto range = split_list(config.m_range);
  require(range.size() == 2, "--m-range takes two integers");
  opts.m_lo = static_cast<int>(parse_integer(range[0], "m"));
  opts.m_hi = static_cast<int>(parse_integer(range[1], "m"));
  require(opts.m_lo <= opts.m_hi && opts.m_hi - opts.m_lo <= 10000, "--m-range must be increasing and short");
  if (!config.sigma.empty()) {
    RationalVector sigma;
    for (const auto& item : split_list(config.sigma)) sigma.push_back(parse_rational(item));
    VectorXr tau = VectorXr::Zero(h.n());
    if (!config.tau.empty()) {
      const auto items = split_list(config.tau);
      require(static_cast<int>(items.size()) == h.n(), "--tau needs n entries");
      for (int i = 0; i < h.n(); ++i) tau(i) = parse_real(items[static_cast<std::size_t>(i)], "tau");
    }
    opts.base = make_base_point(h, config.c, e, sigma, tau);
  }
  if (!config.theta.empty()) {
    std::vector<long long> theta;
    for (const auto& item : split_list(config.theta)) theta.push_back(parse_integer(item, "theta"));
    require(static_cast<int>(theta.size()) == h.n(), "--theta needs n entries");
    DirectionConfig dir;
    dir.theta = theta;
    for (std::size_t j = 0; j < h.size(); ++j) {
      long long v = 0;
      for (int i = 0; i < h.n(); ++i) v += theta[static_cast<std::size_t>(i)] * h.exponent(j)(i);
      require(v >= 1, "theta.alpha_(n)j must be at least 1 for every column");
      dir.pairings.push_back(v);
    }
    const ExponentVector hat = primitive_vector(h.exponent(e)).head(h.n());
    for (int i = 0; i < h.n(); ++i) dir.ray_pairing += theta[static_cast<std::size_t>(i)] * hat(i);
    opts.direction = dir;
  }
  const ZetaZeroTable zeros = load_zeros(config);
  const FaceAnalysis analysis = analyze_face(h, config.c, e, opts, &zeros);

  if (!config.plot_file.empty()) {
    std::ofstream plot(config.plot_file);
    if (!plot) throw Error(ErrorKind::InvalidArgument, "cannot write " + config.plot_file);
    plot << "# p m re_t im_t\n" << std::setprecision(17);
    for (const auto& pa : analysis.primes) {
      for (const auto& pt : pa.lattice.points) plot << pa.p << " " << pt.m << " " << pt.t.real() << " " << pt.t.imag() << "\n";
    }
  }

  Outcome o;
  o.inputs = common_inputs(config, h);
  o.inputs["face"] = e;
  o.settings = {{"seed", config.seed},        {"primes", opts.primes},       {"m_range", {opts.m_lo, opts.m_hi}},
                {"u", opts.u},                {"eta", opts.eta},             {"prime_limit", opts.prime_limit},
                {"candidate_beta_bound", opts.candidate_bound},            {"zeta_zero_ordinates", zeros.size()},
                {"newton_residual_bound", 1e-10}, {"interference_threshold", 1e-3}};
  o.results = {{"analysis", to_json(analysis)}};
  std::ostringstream t;
  t << "face e=" << e << " alpha=" << format_exponent(h.exponent(e)) << ", e'=" << analysis.e_prime << "\n";
  t << "sigma0=(";
  for (std::size_t i = 0; i < analysis.base.sigma0.size(); ++i) t << (i ? "," : "") << format_rational(analysis.base.sigma0[i]);
  t << ") tau0=(";
  for (Eigen::Index i = 0; i < analysis.base.tau0.size(); ++i) t << (i ? "," : "") << fmt(analysis.base.tau0(i), 6);
  t << ") theta=(";
  for (std::size_t i = 0; i < analysis.direction.theta.size(); ++i) t << (i ? "," : "") << analysis.direction.theta[i];
  t << ")\n";
  t << "# p m Re(t) Im(t) residual\n";
  for (const auto& pa : analysis.primes) {
    for (std::size_t k = 0; k < pa.checks.size(); ++k) {
      t << pa.p << " " << pa.lattice.points[k].m << " " << fmt(pa.checks[k].t.real()) << " "
        << fmt(pa.checks[k].t.imag()) << " " << fmt(pa.checks[k].residual, 3) << "\n";
    }
  }
  const auto& r = analysis.rectangle;
  t << "rectangle " << fmt(r.re_low, 6) << " < Re t < " << fmt(r.re_high, 6) << ", " << fmt(r.u) << " < Im t < "
    << fmt(r.u + r.eta) << ": " << r.total << " zeros over " << r.ledger.size() << " primes\n";
  const auto& inter = analysis.interference;
  t << "interference: min distance "
    << (std::isfinite(inter.min_distance) ? fmt(inter.min_distance, 6) : std::string("none")) << ", "
    << (inter.flagged ? "FLAGGED" : "no collision") << "\n";
  for (const auto& d : analysis.diagnostics) t << "note: " << d << "\n";
  o.text = t.str();
  return o;
}

Outcome run_igusa(const RunConfig& config) {
  const int n = config.n == 0 ? 2 : config.n;
  require(n >= 2 && n <= 6, "igusa --n must lie in [2, 6]");
  const IgusaInstance inst = igusa_instance(n);
  const BoundaryVerdict verdict = classify_boundary(inst.h, 1);
  const bool consistent = igusa_consistency(n);
  const int D = config.degree_bound.value_or(2 * static_cast<int>(inst.h.max_degree()));
  const CyclotomyVerdict cyclotomy = is_cyclotomic_multivariate(inst.h, D, D);

  std::vector<Complex> coords(static_cast<std::size_t>(n), Complex(4.0));
  if (!config.point.empty()) coords = parse_point(config.point, n);
  VectorXc s(n);
  VectorXr sigma(n);
  for (int i = 0; i < n; ++i) {
    s(i) = coords[static_cast<std::size_t>(i)];
    sigma(i) = s(i).real();
    require(sigma(i) > 2, "the identity check needs Re s_i > 2");
  }
  const std::uint64_t M =
      config.cutoff.value_or(std::min<std::uint64_t>(3000, static_cast<std::uint64_t>(std::pow(1e7, 1.0 / n))));
  const std::uint64_t P = config.prime_limit.value_or(3000);
  require(P >= 1 && P <= 100'000'000, "--prime-limit must lie in [1, 1e8]");
  const Complex partial = igusa_partial_sum(s, M, config.parallel);
  const Complex product = igusa_product_value(s, P);
  const double tail = igusa_partial_sum_tail(sigma, M);

  Json local = Json::array();
  VectorXc sl(n);
  VectorXr sll(n);
  for (int i = 0; i < n; ++i) {
    sl(i) = i % 2 == 0 ? 3.0 : 4.0;
    sll(i) = sl(i).real();
  }
  constexpr int kSeriesDegree = 40;
  for (std::uint64_t p : {2, 3, 5}) {
    const Complex closed = igusa_local_factor(p, sl);
    const Complex series = igusa_local_series(p, sl, kSeriesDegree);
    local.push_back({{"p", p},
                     {"closed_form", to_json(closed)},
                     {"series", to_json(series)},
                     {"residual", std::abs(closed - series)},
                     {"series_tail_bound", igusa_local_series_tail(p, sll, kSeriesDegree)}});
  }

  Outcome o;
  o.inputs = {{"n", n}, {"polynomial", to_json(inst.h)}, {"c", 1}};
  Json point = Json::array();
  for (const auto& z : coords) point.push_back(to_json(z));
  o.inputs["point"] = point;
  o.settings = {{"partial_sum_cutoff", M}, {"prime_cutoff", P}, {"series_degree", kSeriesDegree},
                {"cyclotomy_degree_bound", D}};
  o.results = {{"igusa",
                {{"n", n},
                 {"verdict", to_string(verdict.kind)},
                 {"boundary_rows", to_json(inst.boundary)},
                 {"consistency", consistent},
                 {"cyclotomy", to_json(cyclotomy)},
                 {"identity",
                  {{"partial_sum", to_json(partial)},
                   {"product_value", to_json(product)},
                   {"residual", std::abs(partial - product)},
                   {"partial_sum_tail_bound", tail}}},
                 {"local_factors", local},
                 {"classification", to_json(verdict)}}}};
  std::ostringstream t;
  t << "Igusa n=" << n << ": h = " << inst.h.to_string() << "\n";
  t << "verdict: " << to_string(verdict.kind) << "\n";
  t << "cyclotomy: " << to_string(cyclotomy.kind) << "\n";
  t << "boundary rows (s coordinates):\n";
  for (const auto& row : inst.boundary.rows) {
    t << "  ";
    bool first = true;
    for (std::size_t i = 0; i < row.normal.size(); ++i) {
      if (row.normal[i] == 0) continue;
      t << (first ? "" : " + ") << "sigma" << i + 1;
      first = false;
    }
    t << " > " << format_rational(-row.offset) << "\n";
  }
  t << "consistency with W_1(0) shifted by 1: " << (consistent ? "pass" : "FAIL") << "\n";
  t << "partial sum (M=" << M << ") = " << fmt(partial) << "\n";
  t << "product value (P=" << P << ") = " << fmt(product) << "\n";
  t << "residual " << fmt(std::abs(partial - product), 6) << ", partial-sum tail bound " << fmt(tail, 6) << "\n";
  for (const auto& entry : local) {
    t << "local factor p=" << entry["p"].get<std::uint64_t>() << ": closed form vs series residual "
      << fmt(entry["residual"].get<double>(), 3) << "\n";
  }
  o.text = t.str();
  return o;
}

Outcome dispatch(const RunConfig& config) {
  switch (config.command) {
    case Command::Expand: return run_expand(config);
    case Command::Classify: return run_classify(config);
    case Command::Boundary: return run_boundary(config);
    case Command::Evaluate: return run_evaluate(config);
    case Command::Zeros: return run_zeros(config);
    case Command::Igusa: return run_igusa(config);
  }
  throw Error(ErrorKind::Internal, "unknown command");
}

void emit_error(const RunConfig& config, std::ostream& out, std::ostream& err, const std::string& kind,
                const std::string& message, int code) {
  err << "error: " << message << "\n";
  if (config.format == OutputFormat::Json) {
    out << dump(Json{{"schema", kReportSchema},
                     {"command", to_string(config.command)},
                     {"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}});
  }
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const ZetaSelfTest self = zeta_self_test();
  if (!self.passed) {
    emit_error(config, out, err, "Internal",
               "zeta self-test discrepancy " + fmt(self.max_discrepancy, 3) + " exceeds its threshold", 5);
    return 5;
  }
  try {
    Outcome o = dispatch(config);
    if (config.format == OutputFormat::Json) {
      out << dump(make_document(to_string(config.command), std::move(o.inputs), std::move(o.settings),
                                std::move(o.results)));
    } else {
      out << o.text;
    }
    return 0;
  } catch (const Error& e) {
    const int code = exit_code(e.kind());
    emit_error(config, out, err, std::string(to_string(e.kind())), e.what(), code);
    return code;
  } catch (const std::bad_alloc&) {
    emit_error(config, out, err, "ResourceLimit", "out of memory", 4);
    return 4;
  } catch (const std::exception& e) {
    emit_error(config, out, err, "Internal", e.what(), 5);
    return 5;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Euler products of Igusa type: cyclotomic expansion, natural boundaries, continuation"};
  app.require_subcommand(1);
  RunConfig config;
  std::string format = "text";

  struct Sub {
    Command command;
    CLI::App* app;
  };
  std::vector<Sub> subs;
  auto add = [&](Command command, const std::string& help) {
    CLI::App* sub = app.add_subcommand(to_string(command), help);
    subs.push_back({command, sub});
    sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--zeros-file", config.zeros_file, "zeta zero ordinates, one per line");
    sub->add_flag("--parallel", config.parallel, "use worker threads; results are unchanged");
    return sub;
  };
  auto add_poly = [&](CLI::App* sub) {
    sub->add_option("--poly", config.poly, "polynomial, e.g. \"1 - X1*X3 - X2*X3 + X1*X2*X3\"");
    sub->add_option("--poly-file", config.poly_file, "file holding the polynomial");
    sub->add_option("--n", config.n, "n; the polynomial uses X1..X{n+1}")->required();
  };
  auto add_c = [&](CLI::App* sub) { sub->add_option("--c", config.c, "shift c in p^{-c}"); };

  CLI::App* expand = add(Command::Expand, "cyclotomic expansion exponents gamma(beta)");
  add_poly(expand);
  add_c(expand);
  expand->add_option("--beta-bound", config.beta_bound, "largest |beta| tabulated");
  expand->add_option("--degree-bound", config.degree_bound, "total degree for verify_expansion");

  CLI::App* classify = add(Command::Classify, "natural boundary verdict");
  add_poly(classify);
  add_c(classify);
  classify->add_option("--degree-bound", config.degree_bound, "degree bound for the cyclotomy check");
  classify->add_flag("--allow-flagged", config.allow_flagged, "accept columns with alpha_(n)j = 0");

  CLI::App* boundary = add(Command::Boundary, "W_c(0) polytope, faces and witnesses");
  add_poly(boundary);
  add_c(boundary);
  boundary->add_option("--point", config.point, "sigma to test for membership");
  boundary->add_option("--delta", config.delta, "delta for the W_c(delta) membership test");

  CLI::App* evaluate = add(Command::Evaluate, "continued value in W_c(delta)");
  add_poly(evaluate);
  add_c(evaluate);
  evaluate->add_option("--point", config.point, "s, comma separated, entries like 0.5+14.1i")->required();
  evaluate->add_option("--delta", config.delta, "delta > 0");
  evaluate->add_option("--beta-bound", config.beta_bound, "cap on shells |beta|");
  evaluate->add_option("--prime-limit", config.prime_limit, "cutoff for the direct product comparison");
  evaluate->add_option("--tolerance", config.tail_tolerance, "tail tolerance of the stagnation certificate");

  CLI::App* zeros = add(Command::Zeros, "zero lattice near a boundary face");
  add_poly(zeros);
  add_c(zeros);
  zeros->add_option("--face", config.face, "term index or exponent such as (1,0,1)")->required();
  zeros->add_option("--seed", config.seed, "seed for the base point");
  zeros->add_option("--sigma", config.sigma, "explicit sigma0 (n rationals)");
  zeros->add_option("--tau", config.tau, "explicit tau0 (n reals)");
  zeros->add_option("--theta", config.theta, "explicit direction (n integers)");
  zeros->add_option("--primes", config.primes, "primes for lattices");
  zeros->add_option("--m-range", config.m_range, "lattice indices lo,hi");
  zeros->add_option("--u", config.u, "rectangle lower Im bound");
  zeros->add_option("--eta", config.eta, "rectangle height");
  zeros->add_option("--nu", config.nu, "rectangle 1/(nu+1) < Re t < 1/nu");
  zeros->add_option("--prime-limit", config.prime_limit, "largest prime scanned for the rectangle");
  zeros->add_option("--beta-bound", config.beta_bound, "|beta| bound for singular candidates");
  zeros->add_option("--plot", config.plot_file, "write lattice points as columns p m re im");

  CLI::App* igusa = add(Command::Igusa, "the multivariate Igusa zeta function");
  igusa->add_option("--n", config.n, "number of variables (default 2)");
  igusa->add_option("--point", config.point, "s for the identity check (default 4,...,4)");
  igusa->add_option("--cutoff", config.cutoff, "range M of the partial sum");
  igusa->add_option("--prime-limit", config.prime_limit, "prime cutoff P of the product");
  igusa->add_option("--degree-bound", config.degree_bound, "degree bound for the cyclotomy check");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  for (const auto& sub : subs) {
    if (sub.app->parsed()) {
      config.command = sub.command;
    }
  }
  config.format = format == "json" ? OutputFormat::Json : OutputFormat::Text;
  return run(config, out, err);
}

}  // namespace eulerprod
